//! Real reflection groups: simple-root realizations, orientation-preserving
//! subgroups, and the extensions W*, W~ by a normalizing rotation coming from
//! a diagram automorphism.
//!
//! Realizations follow the usual conventions: A_n by transposition matrices
//! in R^(n+1); BC_n, D_n, F_4, E_8 rational in their rank dimension; E_6 and
//! E_7 inside R^8 via the standard simple roots; H_3, H_4 with conductor-5
//! entries; I_2(m) with cos/sin entries at conductor lcm(4, m).

use crate::cyclo::{cos_sin, golden, Cyclo};
use crate::error::{Error, Result};
use crate::linalg::{CycloMatrix, CycloVector};
use crate::matgroup::MatrixGroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoxType {
    A(usize),
    BC(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    H3,
    H4,
    I2(u32),
}

impl CoxType {
    pub fn rank(&self) -> usize {
        match self {
            CoxType::A(n) => *n,
            CoxType::BC(n) => *n,
            CoxType::D(n) => *n,
            CoxType::E6 => 6,
            CoxType::E7 => 7,
            CoxType::E8 => 8,
            CoxType::F4 => 4,
            CoxType::H3 => 3,
            CoxType::H4 => 4,
            CoxType::I2(_) => 2,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        match self {
            CoxType::A(n) => n + 1,
            CoxType::E6 | CoxType::E7 => 8,
            other => other.rank(),
        }
    }

    pub fn order(&self) -> u128 {
        fn fact(n: usize) -> u128 {
            (1..=n as u128).product()
        }
        match self {
            CoxType::A(n) => fact(n + 1),
            CoxType::BC(n) => fact(*n) << *n,
            CoxType::D(n) => fact(*n) << (*n - 1),
            CoxType::E6 => 51_840,
            CoxType::E7 => 2_903_040,
            CoxType::E8 => 696_729_600,
            CoxType::F4 => 1_152,
            CoxType::H3 => 120,
            CoxType::H4 => 14_400,
            CoxType::I2(m) => 2 * *m as u128,
        }
    }

    pub fn label(&self) -> String {
        match self {
            CoxType::A(n) => format!("A{n}"),
            CoxType::BC(n) => format!("BC{n}"),
            CoxType::D(n) => format!("D{n}"),
            CoxType::E6 => "E6".into(),
            CoxType::E7 => "E7".into(),
            CoxType::E8 => "E8".into(),
            CoxType::F4 => "F4".into(),
            CoxType::H3 => "H3".into(),
            CoxType::H4 => "H4".into(),
            CoxType::I2(m) => format!("I2({m})"),
        }
    }
}

/// A reflection group together with the simple-root data that produced it.
pub struct CoxeterRealization {
    pub types: Vec<CoxType>,
    pub dim: usize,
    pub simple_roots: Vec<CycloVector>,
    pub group: MatrixGroup,
}

fn iv(dim: usize, pairs: &[(usize, i64)]) -> CycloVector {
    let mut v = CycloVector::zero(dim);
    for &(i, c) in pairs {
        v.entries[i] = Cyclo::from_int(c);
    }
    v
}

fn hv(dim: usize, pairs: &[(usize, i64)]) -> CycloVector {
    // half-integer vector: entries c/2
    let mut v = CycloVector::zero(dim);
    for &(i, c) in pairs {
        v.entries[i] = Cyclo::ratio(c, 2);
    }
    v
}

/// Reflection through a root: s(x) = x - 2 (x, a)/(a, a) a.
pub fn reflection_matrix(dim: usize, root: &CycloVector) -> CycloMatrix {
    let rr = root.dot(root);
    CycloMatrix::from_fn(dim, dim, |i, j| {
        let e = if i == j { Cyclo::one() } else { Cyclo::zero() };
        let num = root.entries[i].mul(&root.entries[j]).mul(&Cyclo::from_int(2));
        e.sub(&num.div(&rr).expect("root is nonzero"))
    })
}

fn e8_simple_roots() -> Vec<CycloVector> {
    let mut roots = vec![hv(8, &[(0, 1), (1, -1), (2, -1), (3, -1), (4, -1), (5, -1), (6, -1), (7, 1)])];
    roots.push(iv(8, &[(0, 1), (1, 1)]));
    for i in 0..6 {
        roots.push(iv(8, &[(i, -1), (i + 1, 1)]));
    }
    roots
}

fn simple_roots_of(t: &CoxType) -> Vec<CycloVector> {
    match t {
        CoxType::A(n) => (0..*n).map(|i| iv(n + 1, &[(i, 1), (i + 1, -1)])).collect(),
        CoxType::BC(n) => {
            let mut r: Vec<CycloVector> =
                (0..n - 1).map(|i| iv(*n, &[(i, 1), (i + 1, -1)])).collect();
            r.push(iv(*n, &[(n - 1, 1)]));
            r
        }
        CoxType::D(n) => {
            let mut r: Vec<CycloVector> =
                (0..n - 1).map(|i| iv(*n, &[(i, 1), (i + 1, -1)])).collect();
            r.push(iv(*n, &[(n - 2, 1), (n - 1, 1)]));
            r
        }
        CoxType::E6 => e8_simple_roots()[..6].to_vec(),
        CoxType::E7 => e8_simple_roots()[..7].to_vec(),
        CoxType::E8 => e8_simple_roots(),
        CoxType::F4 => vec![
            iv(4, &[(1, 1), (2, -1)]),
            iv(4, &[(2, 1), (3, -1)]),
            iv(4, &[(3, 1)]),
            hv(4, &[(0, 1), (1, -1), (2, -1), (3, -1)]),
        ],
        CoxType::H3 => h3_simple_roots(),
        CoxType::H4 => h4_simple_roots(),
        CoxType::I2(m) => {
            // roots normal to the mirrors at angles 0 and pi/m; the half
            // angle needs conductor lcm(4, 2m) but only the generator
            // matrices (built separately at lcm(4, m)) enter the group
            let (c, s) = cos_sin(1, 2 * *m);
            vec![
                CycloVector::new(vec![Cyclo::zero(), Cyclo::one()]),
                CycloVector::new(vec![s.neg(), c]),
            ]
        }
    }
}

/// Generator matrices of one irreducible factor, in its own ambient
/// dimension.
fn type_generators(t: &CoxType, roots: &[CycloVector]) -> Vec<CycloMatrix> {
    match t {
        CoxType::I2(m) => {
            let (c, s) = cos_sin(1, *m);
            vec![
                CycloMatrix::from_entries(
                    2,
                    2,
                    vec![Cyclo::one(), Cyclo::zero(), Cyclo::zero(), Cyclo::from_int(-1)],
                ),
                CycloMatrix::from_entries(2, 2, vec![c.clone(), s.clone(), s, c.neg()]),
            ]
        }
        _ => roots.iter().map(|r| reflection_matrix(t.ambient_dim(), r)).collect(),
    }
}

/// The 30 roots of H3: cyclic permutations of (+-2, 0, 0) and
/// (+-1, +-tau, +-1/tau), tau the golden ratio. All entries share
/// conductor 5 so the vectors hash consistently.
pub fn h3_roots() -> Vec<CycloVector> {
    let tau = golden();
    let tinv = tau.inv().unwrap();
    let mut out = Vec::new();
    for c in 0..3 {
        for s in [1i64, -1] {
            let mut v = CycloVector::zero(3);
            v.entries[c] = Cyclo::from_int(2 * s);
            out.push(v);
        }
    }
    let pat = [Cyclo::one(), tau, tinv];
    for shift in 0..3usize {
        for signs in 0..8u32 {
            let mut v = CycloVector::zero(3);
            for j in 0..3 {
                let src = (j + 3 - shift) % 3;
                let mut e = pat[src].clone();
                if signs >> src & 1 == 1 {
                    e = e.neg();
                }
                v.entries[j] = e;
            }
            out.push(v);
        }
    }
    out.into_iter().map(|v| v.promote(5)).collect()
}

/// The 120 roots of H4: the unit icosians.
pub fn h4_roots() -> Vec<CycloVector> {
    crate::catalog::so4::binary_icosahedral_vectors()
}

/// Pick simple roots out of a full root list by matching the Gram matrix of
/// the standard simple system. Deterministic first match.
fn gram_search(roots: &[CycloVector], target: &[Vec<Cyclo>]) -> Option<Vec<CycloVector>> {
    let k = target.len();
    let mut chosen: Vec<usize> = Vec::new();
    fn rec(
        roots: &[CycloVector],
        target: &[Vec<Cyclo>],
        chosen: &mut Vec<usize>,
        k: usize,
    ) -> bool {
        if chosen.len() == k {
            return true;
        }
        let i = chosen.len();
        'cand: for (ci, cand) in roots.iter().enumerate() {
            if cand.dot(cand) != target[i][i] {
                continue;
            }
            for (j, &pj) in chosen.iter().enumerate() {
                if roots[pj].dot(cand) != target[i][j] {
                    continue 'cand;
                }
            }
            chosen.push(ci);
            if rec(roots, target, chosen, k) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    if rec(roots, target, &mut chosen, k) {
        Some(chosen.into_iter().map(|i| roots[i].clone()).collect())
    } else {
        None
    }
}

fn h3_simple_roots() -> Vec<CycloVector> {
    // norm^2 = 4 roots; angles pi/5, pi/3, pi/2:
    // (a1,a2) = -4cos(pi/5) = -(1+sqrt5), (a2,a3) = -2, (a1,a3) = 0
    let four = Cyclo::from_int(4);
    let m12 = crate::cyclo::sqrt5().add(&Cyclo::one()).neg();
    let gram = vec![
        vec![four.clone(), m12.clone(), Cyclo::zero()],
        vec![m12, four.clone(), Cyclo::from_int(-2)],
        vec![Cyclo::zero(), Cyclo::from_int(-2), four],
    ];
    gram_search(&h3_roots(), &gram).expect("H3 simple system exists")
}

fn h4_simple_roots() -> Vec<CycloVector> {
    // unit roots; chain 5-3-3: (a1,a2) = -cos(pi/5) = -tau/2
    let half = Cyclo::ratio(-1, 2);
    let m12 = golden().mul(&half);
    let one = Cyclo::one();
    let z = Cyclo::zero();
    let gram = vec![
        vec![one.clone(), m12.clone(), z.clone(), z.clone()],
        vec![m12, one.clone(), half.clone(), z.clone()],
        vec![z.clone(), half.clone(), one.clone(), half.clone()],
        vec![z.clone(), z.clone(), half, one],
    ];
    gram_search(&h4_roots(), &gram).expect("H4 simple system exists")
}

/// Build the reflection group of one irreducible type, or of a product of
/// types realized block-diagonally.
pub fn coxeter_group(types: &[CoxType]) -> Result<CoxeterRealization> {
    if types.is_empty() {
        return Err(Error::InvalidConstruction("empty Coxeter type".into()));
    }
    let dims: Vec<usize> = types.iter().map(|t| t.ambient_dim()).collect();
    let dim: usize = dims.iter().sum();
    let mut simple_roots = Vec::new();
    let mut gens: Vec<CycloMatrix> = Vec::new();
    let mut offset = 0;
    for (t, d) in types.iter().zip(&dims) {
        let local_roots = simple_roots_of(t);
        for r in &local_roots {
            let mut v = CycloVector::zero(dim);
            for j in 0..*d {
                v.entries[offset + j] = r.entries[j].clone();
            }
            simple_roots.push(v);
        }
        for m in type_generators(t, &local_roots) {
            let mut full = CycloMatrix::identity(dim);
            for i in 0..*d {
                for j in 0..*d {
                    full.set(offset + i, offset + j, m.at(i, j).clone());
                }
            }
            gens.push(full);
        }
        offset += d;
    }
    // every generator is a reflection: fixed space has codimension 1
    for g in &gens {
        debug_assert_eq!(g.fixed_dim(), dim - 1);
    }
    let order: u128 = types.iter().map(|t| t.order()).product();
    let name = format!(
        "W({})",
        types.iter().map(|t| t.label()).collect::<Vec<_>>().join("x")
    );
    let group = MatrixGroup::new(dim, gens, Some(name))?.with_expected_order(order);
    Ok(CoxeterRealization { types: types.to_vec(), dim, simple_roots, group })
}

/// Orientation-preserving subgroup W+ generated by s_1 s_i.
pub fn orientation_subgroup(w: &MatrixGroup) -> Result<MatrixGroup> {
    for g in &w.generators {
        if g.det() != Cyclo::from_int(-1) {
            return Err(Error::InvalidConstruction(
                "orientation_subgroup needs reflection generators of determinant -1".into(),
            ));
        }
    }
    let s1 = &w.generators[0];
    let gens: Vec<CycloMatrix> =
        w.generators[1..].iter().map(|s| s1.mul(s)).collect();
    let name = w
        .name
        .as_deref()
        .map(|n| n.replacen("W(", "W+(", 1))
        .unwrap_or_else(|| "W+".into());
    if gens.is_empty() {
        return Ok(MatrixGroup::trivial(w.dim).with_name(name));
    }
    let mut g = MatrixGroup::new(w.dim, gens, Some(name))?;
    if let Some(o) = w.expected_order {
        g.expected_order = Some(o / 2);
    }
    Ok(g)
}

/// The nontrivial diagram automorphism used for the star/tilde extensions,
/// as a permutation of simple-root indices.
pub fn diagram_automorphism(t: &CoxType) -> Result<Vec<usize>> {
    match t {
        CoxType::A(n) if *n >= 2 => Ok((0..*n).rev().collect()),
        CoxType::D(4) => Ok(vec![2, 1, 3, 0]),
        CoxType::F4 => Ok(vec![3, 2, 1, 0]),
        CoxType::E6 => Ok(vec![5, 1, 4, 3, 2, 0]),
        other => Err(Error::InvalidConstruction(format!(
            "type {} has no diagram automorphism of the required kind",
            other.label()
        ))),
    }
}

/// Square root of a positive rational of the shape s^2 or 2 s^2 (s
/// rational), which covers every length ratio among crystallographic simple
/// roots. sqrt(2) lands in conductor 8.
fn sqrt_of_rational(q: &num_rational::BigRational) -> Result<Cyclo> {
    use num_bigint::BigInt;
    fn split_square(mut n: BigInt) -> (BigInt, BigInt) {
        // n = s^2 * m with m squarefree (trial division; inputs are tiny)
        let mut s = BigInt::from(1);
        let mut p = BigInt::from(2);
        while &p * &p <= n {
            while (&n % (&p * &p)) == BigInt::from(0) {
                n /= &p * &p;
                s *= &p;
            }
            p += 1;
        }
        (s, n)
    }
    let (sn, mn) = split_square(q.numer().clone());
    let (sd, md) = split_square(q.denom().clone());
    // sqrt(q) = (sn/sd) * sqrt(mn/md) = (sn/sd) * sqrt(mn*md) / md
    let rational = num_rational::BigRational::new(sn, sd * &md);
    let m = &mn * &md;
    let root = if m == BigInt::from(1) {
        Cyclo::one()
    } else if m == BigInt::from(2) {
        crate::cyclo::sqrt2()
    } else {
        return Err(Error::InvalidConstruction(format!("unsupported length ratio sqrt({q})")));
    };
    Ok(root.scale(&rational))
}

/// The rotation h extending a diagram automorphism: permutes the normalized
/// simple-root directions (lengths can differ across the orbit, as in F4),
/// fixes the orthogonal complement of their span.
pub fn extension_rotation(real: &CoxeterRealization, auto: &[usize]) -> Result<CycloMatrix> {
    let dim = real.dim;
    let k = real.simple_roots.len();
    if auto.len() != k {
        return Err(Error::InvalidConstruction("automorphism length mismatch".into()));
    }
    let fixed = real.group.fixed_subspace();
    // basis = simple roots followed by a basis of the fixed complement
    let mut basis: Vec<CycloVector> = real.simple_roots.clone();
    basis.extend(fixed.iter().cloned());
    if basis.len() != dim {
        return Err(Error::InvalidConstruction(
            "simple roots plus fixed space do not form a basis".into(),
        ));
    }
    // alpha_i -> alpha_{pi(i)} * |alpha_i| / |alpha_{pi(i)}|
    let norms: Vec<num_rational::BigRational> = real
        .simple_roots
        .iter()
        .map(|r| {
            r.dot(r)
                .as_rational()
                .ok_or_else(|| Error::InvalidConstruction("irrational root norm".into()))
        })
        .collect::<Result<_>>()?;
    let mut images: Vec<CycloVector> = Vec::with_capacity(dim);
    for (i, &j) in auto.iter().enumerate() {
        let ratio = sqrt_of_rational(&(&norms[i] / &norms[j]))?;
        images.push(real.simple_roots[j].scale(&ratio));
    }
    images.extend(fixed.iter().cloned());
    let b = CycloMatrix::from_fn(dim, dim, |i, j| basis[j].entries[i].clone());
    let bp = CycloMatrix::from_fn(dim, dim, |i, j| images[j].entries[i].clone());
    let h = bp.mul(&b.inverse()?);
    if !h.is_orthogonal() {
        return Err(Error::InvalidConstruction(
            "diagram automorphism does not preserve the root inner products".into(),
        ));
    }
    if h.fixed_dim() != dim - 2 {
        return Err(Error::InvalidConstruction(
            "extension element is not a rotation".into(),
        ));
    }
    Ok(h)
}

/// W* = <W+, h> for the unique normalizing rotation h.
pub fn star_extension(real: &CoxeterRealization) -> Result<MatrixGroup> {
    let [t] = &real.types[..] else {
        return Err(Error::InvalidConstruction("star extension needs an irreducible type".into()));
    };
    let auto = diagram_automorphism(t)?;
    let h = extension_rotation(real, &auto)?;
    // h must normalize W
    for g in &real.group.generators {
        let conj = h.mul(g).mul(&h.inverse()?);
        if !real.group.contains(&conj)? {
            return Err(Error::InvalidConstruction("extension does not normalize W".into()));
        }
    }
    let wplus = orientation_subgroup(&real.group)?;
    let mut gens = wplus.generators.clone();
    gens.push(h);
    let order = match t {
        CoxType::D(4) => (t.order() / 2) * 3,
        _ => t.order(),
    };
    Ok(MatrixGroup::new(real.dim, gens, Some(format!("W*({})", t.label())))?
        .with_expected_order(order))
}

/// W~ = <W, h>.
pub fn tilde_extension(real: &CoxeterRealization) -> Result<MatrixGroup> {
    let [t] = &real.types[..] else {
        return Err(Error::InvalidConstruction("tilde extension needs an irreducible type".into()));
    };
    let auto = diagram_automorphism(t)?;
    let h = extension_rotation(real, &auto)?;
    let mut gens = real.group.generators.clone();
    gens.push(h);
    let order = match t {
        CoxType::D(4) => t.order() * 3,
        _ => t.order() * 2,
    };
    Ok(MatrixGroup::new(real.dim, gens, Some(format!("W~({})", t.label())))?
        .with_expected_order(order))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_coxeter_orders() {
        assert_eq!(coxeter_group(&[CoxType::A(2)]).unwrap().group.order().unwrap(), 6);
        assert_eq!(coxeter_group(&[CoxType::BC(3)]).unwrap().group.order().unwrap(), 48);
        assert_eq!(coxeter_group(&[CoxType::D(4)]).unwrap().group.order().unwrap(), 192);
        assert_eq!(coxeter_group(&[CoxType::F4]).unwrap().group.order().unwrap(), 1152);
        assert_eq!(coxeter_group(&[CoxType::I2(7)]).unwrap().group.order().unwrap(), 14);
        assert_eq!(coxeter_group(&[CoxType::H3]).unwrap().group.order().unwrap(), 120);
    }

    #[test]
    fn h3_root_count_and_closure() {
        let roots = h3_roots();
        assert_eq!(roots.len(), 30);
        // closed under negation and under its own reflections
        let keys: std::collections::HashSet<Vec<u8>> =
            roots.iter().map(|r| r.key_bytes()).collect();
        assert_eq!(keys.len(), 30);
        for r in &roots {
            assert!(keys.contains(&r.neg().key_bytes()));
        }
        let s = reflection_matrix(3, &roots[7]);
        for r in roots.iter().take(10) {
            assert!(keys.contains(&s.apply(r).key_bytes()));
        }
    }

    #[test]
    fn product_type_block_realization() {
        let real = coxeter_group(&[CoxType::A(1), CoxType::A(1)]).unwrap();
        assert_eq!(real.group.order().unwrap(), 4);
        assert_eq!(real.dim, 4);
    }

    #[test]
    fn orientation_subgroup_orders() {
        let a3 = coxeter_group(&[CoxType::A(3)]).unwrap();
        let plus = orientation_subgroup(&a3.group).unwrap();
        assert_eq!(plus.order().unwrap(), 12);
        let a1 = coxeter_group(&[CoxType::A(1)]).unwrap();
        assert_eq!(orientation_subgroup(&a1.group).unwrap().order().unwrap(), 1);
    }

    #[test]
    fn star_and_tilde_d4() {
        let d4 = coxeter_group(&[CoxType::D(4)]).unwrap();
        let star = star_extension(&d4).unwrap();
        assert_eq!(star.order().unwrap(), 288);
        let tilde = tilde_extension(&d4).unwrap();
        assert_eq!(tilde.order().unwrap(), 576);
        // the D4 extension rotation has order 3, so h^3 lies in W+
        let auto = diagram_automorphism(&CoxType::D(4)).unwrap();
        let h = extension_rotation(&d4, &auto).unwrap();
        let h3 = h.mul(&h).mul(&h);
        assert!(h3.is_identity());
    }

    #[test]
    fn star_a4() {
        let a4 = coxeter_group(&[CoxType::A(4)]).unwrap();
        let star = star_extension(&a4).unwrap();
        assert_eq!(star.order().unwrap(), 120);
        let tilde = tilde_extension(&a4).unwrap();
        assert_eq!(tilde.order().unwrap(), 240);
    }
}
