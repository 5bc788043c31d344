//! Catalog of every group family in the classification, addressed by a
//! textual name grammar:
//!
//! ```text
//! W(T)  W+(T)  W*(T)  W~(T)      T in {A<k>, BC<k>, D<k>, E6, E7, E8, F4,
//!                                      H3, H4, I2(<m>)} or products T1xT2
//! G(<m>,<p>,<n>)  G*(<km>,<k>,<n>)  G~(<km>,<k>,<n>)
//! D(<n>)  D+(<n>)  H<n>  M<n>  M~<n>  M~D(<n>)  M7p  M8p
//! SO4(<L>/<LK>;<R>/<RK>[:<phi>])   with quaternion tokens C<n>, D<n>, T, O, I, V
//! R5(A5)  R6(PSL27)  Htensor  L  WR1  WR2
//! Delta(<W-name>,<auto>)          auto = id | galois<k> | inline JSON images
//! ```

pub mod coxeter;
pub mod delta;
pub mod exceptional;
pub mod imprimitive;
pub mod monomial;
pub mod so4;

use crate::error::{Error, Result};
use crate::matgroup::MatrixGroup;
use coxeter::{coxeter_group, orientation_subgroup, star_extension, tilde_extension, CoxType};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Coxeter { variant: CoxVariant, types: Vec<CoxType> },
    Gmpn { m: u32, p: u32, n: usize },
    GStar { km: u32, k: u32, n: usize },
    GTilde { km: u32, k: u32, n: usize },
    DFull(usize),
    DPlus(usize),
    HPerm(usize),
    M(usize),
    MTilde(usize),
    MTildeD(usize),
    M7p,
    M8p,
    So4 { l: String, lk: String, r: String, rk: String, phi: so4::PhiSpec },
    R5A5,
    R6Psl27,
    HTensor,
    L,
    WR1,
    WR2,
    Delta { inner: Box<GroupSpec>, auto: DeltaAuto },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoxVariant {
    Full,
    Plus,
    Star,
    Tilde,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeltaAuto {
    Id,
    Galois(i64),
    InlineJson(String),
}

fn parse_cox_type(s: &str) -> Result<CoxType> {
    let err = |m: &str| Error::ParseError(s.into(), m.into());
    if let Some(rest) = s.strip_prefix("BC") {
        let n: usize = rest.parse().map_err(|_| err("bad BC rank"))?;
        if n < 2 {
            return Err(err("BC rank must be >= 2"));
        }
        return Ok(CoxType::BC(n));
    }
    if let Some(rest) = s.strip_prefix("I2(") {
        let inner = rest.strip_suffix(')').ok_or_else(|| err("missing )"))?;
        let m: u32 = inner.parse().map_err(|_| err("bad I2 label"))?;
        if m < 2 {
            return Err(err("I2 label must be >= 2"));
        }
        return Ok(CoxType::I2(m));
    }
    match s {
        "E6" => return Ok(CoxType::E6),
        "E7" => return Ok(CoxType::E7),
        "E8" => return Ok(CoxType::E8),
        "F4" => return Ok(CoxType::F4),
        "H3" => return Ok(CoxType::H3),
        "H4" => return Ok(CoxType::H4),
        _ => {}
    }
    if let Some(rest) = s.strip_prefix('A') {
        let n: usize = rest.parse().map_err(|_| err("bad A rank"))?;
        if n < 1 {
            return Err(err("A rank must be >= 1"));
        }
        return Ok(CoxType::A(n));
    }
    if let Some(rest) = s.strip_prefix('D') {
        let n: usize = rest.parse().map_err(|_| err("bad D rank"))?;
        if n < 3 {
            return Err(err("D rank must be >= 3"));
        }
        return Ok(CoxType::D(n));
    }
    Err(err("unknown Coxeter type"))
}

fn parse_cox_product(s: &str) -> Result<Vec<CoxType>> {
    s.split('x').map(parse_cox_type).collect()
}

fn parse_uints(s: &str, name: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::ParseError(name.into(), format!("bad integer `{t}`")))
        })
        .collect()
}

/// Parse a catalog name.
pub fn parse_spec(name: &str) -> Result<GroupSpec> {
    let s = name.trim();
    let err = |m: &str| Error::ParseError(s.into(), m.into());
    let take_parens = |prefix: &str| -> Option<&str> {
        s.strip_prefix(prefix).and_then(|r| r.strip_suffix(')'))
    };
    match s {
        "M7p" => return Ok(GroupSpec::M7p),
        "M8p" => return Ok(GroupSpec::M8p),
        "R5(A5)" => return Ok(GroupSpec::R5A5),
        "R6(PSL27)" => return Ok(GroupSpec::R6Psl27),
        "Htensor" => return Ok(GroupSpec::HTensor),
        "L" => return Ok(GroupSpec::L),
        "WR1" => return Ok(GroupSpec::WR1),
        "WR2" => return Ok(GroupSpec::WR2),
        _ => {}
    }
    for (prefix, variant) in [
        ("W+(", CoxVariant::Plus),
        ("W*(", CoxVariant::Star),
        ("W~(", CoxVariant::Tilde),
        ("W(", CoxVariant::Full),
    ] {
        if let Some(inner) = take_parens(prefix) {
            return Ok(GroupSpec::Coxeter { variant, types: parse_cox_product(inner)? });
        }
    }
    if let Some(inner) = take_parens("G*(") {
        let v = parse_uints(inner, s)?;
        let [km, k, n] = v[..] else { return Err(err("G* needs three parameters")) };
        return Ok(GroupSpec::GStar { km: km as u32, k: k as u32, n: n as usize });
    }
    if let Some(inner) = take_parens("G~(") {
        let v = parse_uints(inner, s)?;
        let [km, k, n] = v[..] else { return Err(err("G~ needs three parameters")) };
        return Ok(GroupSpec::GTilde { km: km as u32, k: k as u32, n: n as usize });
    }
    if let Some(inner) = take_parens("G(") {
        let v = parse_uints(inner, s)?;
        let [m, p, n] = v[..] else { return Err(err("G needs three parameters")) };
        return Ok(GroupSpec::Gmpn { m: m as u32, p: p as u32, n: n as usize });
    }
    if let Some(inner) = take_parens("D+(") {
        return Ok(GroupSpec::DPlus(inner.parse().map_err(|_| err("bad D+ size"))?));
    }
    if let Some(inner) = take_parens("M~D(") {
        return Ok(GroupSpec::MTildeD(inner.parse().map_err(|_| err("bad M~D size"))?));
    }
    if let Some(inner) = take_parens("D(") {
        return Ok(GroupSpec::DFull(inner.parse().map_err(|_| err("bad D size"))?));
    }
    if let Some(rest) = s.strip_prefix("M~") {
        let n: usize = rest.parse().map_err(|_| err("bad M~ index"))?;
        return Ok(GroupSpec::MTilde(n));
    }
    if let Some(rest) = s.strip_prefix('M') {
        if let Ok(n) = rest.parse::<usize>() {
            return Ok(GroupSpec::M(n));
        }
    }
    if let Some(rest) = s.strip_prefix('H') {
        if let Ok(n) = rest.parse::<usize>() {
            return Ok(GroupSpec::HPerm(n));
        }
    }
    if let Some(inner) = take_parens("SO4(") {
        let (groups, phi) = match inner.rsplit_once(':') {
            Some((g, p)) => (g, Some(p)),
            None => (inner, None),
        };
        let (left, right) = groups.split_once(';').ok_or_else(|| err("SO4 needs `;`"))?;
        let (l, lk) = left.split_once('/').ok_or_else(|| err("SO4 left needs `/`"))?;
        let (r, rk) = right.split_once('/').ok_or_else(|| err("SO4 right needs `/`"))?;
        let phi = match phi {
            None => so4::PhiSpec::Auto,
            Some("id") => so4::PhiSpec::Id,
            Some(p) => {
                if let Some(k) = p.strip_prefix("galois") {
                    so4::PhiSpec::Galois(k.parse().map_err(|_| err("bad galois exponent"))?)
                } else {
                    return Err(err("unknown phi spec"));
                }
            }
        };
        return Ok(GroupSpec::So4 {
            l: l.into(),
            lk: lk.into(),
            r: r.into(),
            rk: rk.into(),
            phi,
        });
    }
    if let Some(inner) = take_parens("Delta(") {
        // split at the last top-level comma
        let mut depth = 0usize;
        let mut split = None;
        for (i, c) in inner.char_indices() {
            match c {
                '(' | '[' => depth += 1,
                ')' | ']' => depth = depth.saturating_sub(1),
                ',' if depth == 0 => split = Some(i),
                _ => {}
            }
        }
        let at = split.ok_or_else(|| err("Delta needs `,`"))?;
        let wname = &inner[..at];
        let auto = inner[at + 1..].trim();
        let auto = if auto == "id" {
            DeltaAuto::Id
        } else if let Some(k) = auto.strip_prefix("galois") {
            DeltaAuto::Galois(k.parse().map_err(|_| err("bad galois exponent"))?)
        } else if auto.starts_with('[') {
            DeltaAuto::InlineJson(auto.to_string())
        } else {
            return Err(err("unknown Delta automorphism"));
        };
        return Ok(GroupSpec::Delta { inner: Box::new(parse_spec(wname)?), auto });
    }
    Err(Error::UnknownGroup(s.into()))
}

/// Build the group a spec names. Expected orders from the tables are
/// attached as metadata for the verification suite.
pub fn build_spec(spec: &GroupSpec) -> Result<MatrixGroup> {
    match spec {
        GroupSpec::Coxeter { variant, types } => {
            let real = coxeter_group(types)?;
            match variant {
                CoxVariant::Full => Ok(real.group),
                CoxVariant::Plus => orientation_subgroup(&real.group),
                CoxVariant::Star => star_extension(&real),
                CoxVariant::Tilde => tilde_extension(&real),
            }
        }
        GroupSpec::Gmpn { m, p, n } => imprimitive::g_mpn(*m, *p, *n),
        GroupSpec::GStar { km, k, n } => {
            if !matches!(k, 1 | 2) {
                return Err(Error::InvalidConstruction("G* needs k in {1, 2}".into()));
            }
            imprimitive::g_star(*km, *k, *n)
        }
        GroupSpec::GTilde { km, k, n } => {
            if !matches!(k, 1 | 2) {
                return Err(Error::InvalidConstruction("G~ needs k in {1, 2}".into()));
            }
            imprimitive::g_tilde(*km, *k, *n)
        }
        GroupSpec::DFull(n) => monomial::d_full(*n),
        GroupSpec::DPlus(n) => monomial::d_plus(*n),
        GroupSpec::HPerm(n) => monomial::h_group(*n),
        GroupSpec::M(n) => monomial::m_group(*n),
        GroupSpec::MTilde(n) => monomial::m_tilde(*n),
        GroupSpec::MTildeD(n) => monomial::m_tilde_d(*n),
        GroupSpec::M7p => monomial::m7p(),
        GroupSpec::M8p => monomial::m8p(),
        GroupSpec::So4 { l, lk, r, rk, phi } => {
            let lg = so4::quat_group_by_token(l)?;
            let lkg = so4::quat_group_by_token(lk)?;
            let rg = so4::quat_group_by_token(r)?;
            let rkg = so4::quat_group_by_token(rk)?;
            so4::so4_group(&lg, &lkg, &rg, &rkg, phi)
        }
        GroupSpec::R5A5 => exceptional::r5_a5(),
        GroupSpec::R6Psl27 => exceptional::r6_psl27(),
        GroupSpec::HTensor => exceptional::h_tensor(),
        GroupSpec::L => exceptional::group_l(),
        GroupSpec::WR1 => exceptional::w_r1(),
        GroupSpec::WR2 => exceptional::w_r2(),
        GroupSpec::Delta { inner, auto } => {
            let w = build_spec(inner)?;
            let phi = match auto {
                DeltaAuto::Id => delta::AutoSpec::Id,
                DeltaAuto::Galois(k) => delta::AutoSpec::Galois(*k),
                DeltaAuto::InlineJson(json) => {
                    let mats = crate::jsonio::matrices_from_json(json, w.conductor)?;
                    delta::AutoSpec::Images(mats)
                }
            };
            delta::delta_twisted(&w, &phi)
        }
    }
}

/// Parse and build in one step.
pub fn catalog_lookup(name: &str) -> Result<MatrixGroup> {
    build_spec(&parse_spec(name)?)
}

/// Names that `catalog-list` advertises, with the table orders where fixed.
pub fn catalog_listing() -> Vec<(&'static str, &'static str)> {
    vec![
        ("W(T)", "reflection group; T in {A<k>, BC<k>, D<k>, E6, E7, E8, F4, H3, H4, I2(<m>)} or products T1xT2"),
        ("W+(T)", "orientation-preserving subgroup of W(T)"),
        ("W*(T)", "extension of W+(T) by a normalizing rotation (T = A4, D4, F4, A5, E6)"),
        ("W~(T)", "extension of W(T) by that rotation"),
        ("G(<m>,<p>,<n>)", "imprimitive unitary reflection group, realified"),
        ("G*(<km>,<k>,<n>)", "rotation extension of G(km,k,n), k in {1,2}"),
        ("G~(<km>,<k>,<n>)", "reflection-rotation extension of G(km,k,n)"),
        ("D(<n>)", "all coordinate sign changes"),
        ("D+(<n>)", "even coordinate sign changes"),
        ("H<n>", "permutation group H_n (n = 5..8)"),
        ("M<n>", "monomial rotation group D+(n) : H_n (n = 5..8)"),
        ("M~<n>", "monomial group D(n) : H_n"),
        ("M~D(<n>)", "monomial group D(n) : Alt_n"),
        ("M7p", "exceptional monomial rotation group of order 1344"),
        ("M8p", "exceptional monomial rotation group of order 21504"),
        ("SO4(<L>/<LK>;<R>/<RK>[:<phi>])", "SO(4) group from quaternion data; tokens C<n>, D<n>, T, O, I, V"),
        ("R5(A5)", "exceptional rotation group in SO(5)"),
        ("R6(PSL27)", "exceptional rotation group in SO(6)"),
        ("Htensor", "tensor cube of the dihedral group of order 8"),
        ("L", "primitive rotation group of order 2580480 in SO(8)"),
        ("WR1", "reflection group of the root system R1"),
        ("WR2", "reflection group of the root system R2"),
        ("Delta(<W>,<auto>)", "twisted diagonal; auto = id | galois<k> | inline images"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        assert!(matches!(
            parse_spec("W+(E8)").unwrap(),
            GroupSpec::Coxeter { variant: CoxVariant::Plus, .. }
        ));
        assert!(matches!(parse_spec("G*(6,1,3)").unwrap(), GroupSpec::GStar { km: 6, k: 1, n: 3 }));
        assert!(matches!(parse_spec("M~8").unwrap(), GroupSpec::MTilde(8)));
        assert!(matches!(parse_spec("M~D(5)").unwrap(), GroupSpec::MTildeD(5)));
        assert!(parse_spec("W(Z9)").is_err());
        assert!(matches!(parse_spec("SO4(T/T;O/O)").unwrap(), GroupSpec::So4 { .. }));
        assert!(matches!(
            parse_spec("Delta(W(H3),galois2)").unwrap(),
            GroupSpec::Delta { auto: DeltaAuto::Galois(2), .. }
        ));
    }

    #[test]
    fn lookup_small_groups() {
        assert_eq!(catalog_lookup("W(I2(3))").unwrap().order().unwrap(), 6);
        assert_eq!(catalog_lookup("W+(A3)").unwrap().order().unwrap(), 12);
        assert_eq!(catalog_lookup("D+(3)").unwrap().order().unwrap(), 4);
        assert_eq!(catalog_lookup("H5").unwrap().order().unwrap(), 10);
    }
}
