//! Finite subgroups of SO(4) from pairs of binary polyhedral groups under
//! the two-to-one covering phi(l, r): q -> l q r^-1.
//!
//! Quaternion groups are hardcoded element lists with closure self-tests, so
//! the constructors are deterministic. A group spec
//! (L/L_K; R/R_K)_phi needs -1 in L and R, normal kernels, and a quotient
//! isomorphism phi, entered as a coset-label map and verified against the
//! multiplication tables.

use crate::cyclo::{cos_sin, golden, Cyclo};
use crate::error::{Error, Result};
use crate::linalg::{CycloMatrix, CycloVector};
use crate::matgroup::MatrixGroup;
use std::collections::HashMap;

/// A quaternion w + x i + y j + z k with exact cyclotomic components.
pub type Quat = [Cyclo; 4];

pub fn quat_mul(a: &Quat, b: &Quat) -> Quat {
    let (w1, x1, y1, z1) = (&a[0], &a[1], &a[2], &a[3]);
    let (w2, x2, y2, z2) = (&b[0], &b[1], &b[2], &b[3]);
    [
        w1.mul(w2).sub(&x1.mul(x2)).sub(&y1.mul(y2)).sub(&z1.mul(z2)),
        w1.mul(x2).add(&x1.mul(w2)).add(&y1.mul(z2)).sub(&z1.mul(y2)),
        w1.mul(y2).sub(&x1.mul(z2)).add(&y1.mul(w2)).add(&z1.mul(x2)),
        w1.mul(z2).add(&x1.mul(y2)).sub(&y1.mul(x2)).add(&z1.mul(w2)),
    ]
}

pub fn quat_conj(a: &Quat) -> Quat {
    [a[0].clone(), a[1].neg(), a[2].neg(), a[3].neg()]
}

pub fn quat_neg(a: &Quat) -> Quat {
    [a[0].neg(), a[1].neg(), a[2].neg(), a[3].neg()]
}

pub fn quat_norm(a: &Quat) -> Cyclo {
    a.iter().fold(Cyclo::zero(), |acc, c| acc.add(&c.mul(c)))
}

fn quat_key(a: &Quat) -> Vec<u8> {
    let mut out = Vec::new();
    for c in a {
        c.key_bytes(&mut out);
    }
    out
}

fn qi(w: i64, x: i64, y: i64, z: i64) -> Quat {
    [Cyclo::from_int(w), Cyclo::from_int(x), Cyclo::from_int(y), Cyclo::from_int(z)]
}

/// A finite group of unit quaternions as an explicit element list.
#[derive(Clone)]
pub struct QuatGroup {
    pub label: String,
    pub elements: Vec<Quat>,
    index: HashMap<Vec<u8>, usize>,
}

impl QuatGroup {
    pub fn new(label: impl Into<String>, elements: Vec<Quat>) -> Result<QuatGroup> {
        let label = label.into();
        // promote all coordinates to a common conductor so keys are canonical
        let conductor = elements.iter().flat_map(|q| q.iter()).fold(1u32, |n, c| {
            num_integer::lcm(n, c.conductor())
        });
        let elements: Vec<Quat> = elements
            .into_iter()
            .map(|q| {
                [
                    q[0].promote(conductor),
                    q[1].promote(conductor),
                    q[2].promote(conductor),
                    q[3].promote(conductor),
                ]
            })
            .collect();
        let mut index = HashMap::new();
        for (i, q) in elements.iter().enumerate() {
            if quat_norm(q) != Cyclo::one() {
                return Err(Error::InvalidConstruction(format!(
                    "{label}: element {i} is not a unit quaternion"
                )));
            }
            if index.insert(quat_key(q), i).is_some() {
                return Err(Error::InvalidConstruction(format!("{label}: duplicate element")));
            }
        }
        let g = QuatGroup { label, elements, index };
        g.check_closure()?;
        Ok(g)
    }

    fn check_closure(&self) -> Result<()> {
        for a in &self.elements {
            for b in &self.elements {
                let p = quat_mul(a, b);
                if !self.index.contains_key(&quat_key(&p)) {
                    return Err(Error::InvalidConstruction(format!(
                        "{}: not closed under multiplication",
                        self.label
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, q: &Quat) -> bool {
        let conductor = self.elements[0][0].conductor();
        let qq: Quat = match q.iter().map(|c| {
            let m = c.minimized();
            if conductor % m.conductor() == 0 {
                Ok(m.promote(conductor))
            } else {
                Err(())
            }
        }).collect::<std::result::Result<Vec<_>, ()>>() {
            Ok(v) => [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()],
            Err(()) => return false,
        };
        self.index.contains_key(&quat_key(&qq))
    }

    pub fn index_of(&self, q: &Quat) -> Option<usize> {
        if !self.contains(q) {
            return None;
        }
        let conductor = self.elements[0][0].conductor();
        let qq: Vec<Cyclo> = q.iter().map(|c| c.minimized().promote(conductor)).collect();
        self.index.get(&quat_key(&[qq[0].clone(), qq[1].clone(), qq[2].clone(), qq[3].clone()])).copied()
    }

    pub fn has_minus_one(&self) -> bool {
        self.contains(&qi(-1, 0, 0, 0))
    }

    /// Is `sub` a normal subgroup (as an element sublist)?
    pub fn is_normal_subgroup(&self, sub: &QuatGroup) -> bool {
        sub.elements.iter().all(|s| self.contains(s))
            && self.elements.iter().all(|g| {
                sub.elements
                    .iter()
                    .all(|s| sub.contains(&quat_mul(&quat_mul(g, s), &quat_conj(g))))
            })
    }

    /// Deterministic small generating set.
    pub fn generating_set(&self) -> Vec<Quat> {
        let mut gens: Vec<Quat> = Vec::new();
        let mut span: Vec<Quat> = vec![qi(1, 0, 0, 0)];
        let mut span_keys: std::collections::HashSet<Vec<u8>> =
            span.iter().map(quat_key).collect();
        for cand in &self.elements {
            if span_keys.contains(&quat_key(cand)) {
                continue;
            }
            gens.push(cand.clone());
            // close the span
            let mut frontier = span.clone();
            while let Some(x) = frontier.pop() {
                for g in &gens {
                    let p = quat_mul(&x, g);
                    let k = quat_key(&p);
                    if !span_keys.contains(&k) {
                        span_keys.insert(k);
                        span.push(p.clone());
                        frontier.push(p);
                    }
                }
            }
            if span.len() == self.elements.len() {
                break;
            }
        }
        gens
    }

    /// Left cosets of a normal subgroup, as (representative index, label) in
    /// deterministic order. Returns the coset label of every element.
    pub fn cosets(&self, kernel: &QuatGroup) -> (Vec<usize>, Vec<usize>) {
        let mut label_of = vec![usize::MAX; self.elements.len()];
        let mut reps = Vec::new();
        for i in 0..self.elements.len() {
            if label_of[i] != usize::MAX {
                continue;
            }
            let lbl = reps.len();
            reps.push(i);
            for s in &kernel.elements {
                let p = quat_mul(&self.elements[i], s);
                let j = self.index_of(&p).expect("kernel inside group");
                label_of[j] = lbl;
            }
        }
        (reps, label_of)
    }
}

/// Binary cyclic group C_n.
pub fn cyclic(n: u32) -> Result<QuatGroup> {
    let mut els = Vec::new();
    for j in 0..n {
        let (c, s) = cos_sin(j as i64, n);
        els.push([c, s, Cyclo::zero(), Cyclo::zero()]);
    }
    QuatGroup::new(format!("C{n}"), els)
}

/// Binary dihedral group D_n of order 4n.
pub fn binary_dihedral(n: u32) -> Result<QuatGroup> {
    let mut els = Vec::new();
    for j in 0..2 * n {
        let (c, s) = cos_sin(j as i64, 2 * n);
        els.push([c.clone(), s.clone(), Cyclo::zero(), Cyclo::zero()]);
        els.push([Cyclo::zero(), Cyclo::zero(), c, s]);
    }
    QuatGroup::new(format!("D{n}"), els)
}

/// Binary tetrahedral group T, order 24.
pub fn binary_tetrahedral() -> Result<QuatGroup> {
    let mut els = Vec::new();
    for i in 0..4 {
        for s in [1i64, -1] {
            let mut q = [0i64; 4];
            q[i] = s;
            els.push(qi(q[0], q[1], q[2], q[3]));
        }
    }
    for m in 0..16u32 {
        let sgn = |b: u32| if m >> b & 1 == 1 { -1i64 } else { 1 };
        els.push([
            Cyclo::ratio(sgn(0), 2),
            Cyclo::ratio(sgn(1), 2),
            Cyclo::ratio(sgn(2), 2),
            Cyclo::ratio(sgn(3), 2),
        ]);
    }
    QuatGroup::new("T", els)
}

/// Binary octahedral group O, order 48.
pub fn binary_octahedral() -> Result<QuatGroup> {
    let t = binary_tetrahedral()?;
    let mut els = t.elements;
    let half_sqrt2 = crate::cyclo::sqrt2().inv().unwrap();
    for a in 0..4 {
        for b in a + 1..4 {
            for sa in [1i64, -1] {
                for sb in [1i64, -1] {
                    let mut q = [Cyclo::zero(), Cyclo::zero(), Cyclo::zero(), Cyclo::zero()];
                    q[a] = Cyclo::from_int(sa).mul(&half_sqrt2);
                    q[b] = Cyclo::from_int(sb).mul(&half_sqrt2);
                    els.push(q);
                }
            }
        }
    }
    QuatGroup::new("O", els)
}

/// Binary icosahedral group I, order 120, conductor-5 coordinates.
pub fn binary_icosahedral() -> Result<QuatGroup> {
    let t = binary_tetrahedral()?;
    let mut els = t.elements;
    let tau = golden();
    let tinv = tau.inv().unwrap();
    let half = Cyclo::ratio(1, 2);
    // even permutations of (0, 1, 1/tau, tau)/2 with free signs
    let pat = [Cyclo::zero(), Cyclo::one(), tinv, tau];
    let even_perms: [[usize; 4]; 12] = [
        [0, 1, 2, 3],
        [0, 2, 3, 1],
        [0, 3, 1, 2],
        [1, 0, 3, 2],
        [1, 2, 0, 3],
        [1, 3, 2, 0],
        [2, 0, 1, 3],
        [2, 1, 3, 0],
        [2, 3, 0, 1],
        [3, 0, 2, 1],
        [3, 1, 0, 2],
        [3, 2, 1, 0],
    ];
    for perm in even_perms {
        for m in 0..8u32 {
            let mut q = [Cyclo::zero(), Cyclo::zero(), Cyclo::zero(), Cyclo::zero()];
            let mut bit = 0;
            for pos in 0..4 {
                let src = perm[pos];
                if src == 0 {
                    continue;
                }
                let mut e = pat[src].mul(&half);
                if m >> bit & 1 == 1 {
                    e = e.neg();
                }
                bit += 1;
                q[pos] = e;
            }
            els.push(q);
        }
    }
    QuatGroup::new("I", els)
}

/// The H4 root system: the 120 unit icosians as 4-vectors.
pub fn binary_icosahedral_vectors() -> Vec<CycloVector> {
    binary_icosahedral()
        .expect("icosian list closes")
        .elements
        .into_iter()
        .map(|q| CycloVector::new(q.to_vec()))
        .collect()
}

pub fn quat_group_by_token(tok: &str) -> Result<QuatGroup> {
    if tok == "T" {
        return binary_tetrahedral();
    }
    if tok == "O" {
        return binary_octahedral();
    }
    if tok == "I" {
        return binary_icosahedral();
    }
    if tok == "V" {
        return binary_dihedral(2);
    }
    if let Some(n) = tok.strip_prefix('C') {
        let n: u32 = n.parse().map_err(|_| Error::UnknownGroup(tok.into()))?;
        return cyclic(n);
    }
    if let Some(n) = tok.strip_prefix('D') {
        let n: u32 = n.parse().map_err(|_| Error::UnknownGroup(tok.into()))?;
        return binary_dihedral(n);
    }
    Err(Error::UnknownGroup(tok.into()))
}

/// How the quotient isomorphism phi is picked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PhiSpec {
    /// identity on coset labels when both sides have matching tables, else a
    /// deterministic search
    Auto,
    Id,
    /// entrywise Galois twist zeta -> zeta^k applied to coset representatives
    Galois(i64),
    /// explicit map: label i of L/L_K goes to labels[i] of R/R_K
    Labels(Vec<usize>),
}

/// The 4x4 matrix of q -> l q r^-1 in the basis (1, i, j, k).
pub fn phi_matrix(l: &Quat, r: &Quat) -> CycloMatrix {
    let rc = quat_conj(r);
    let basis = [qi(1, 0, 0, 0), qi(0, 1, 0, 0), qi(0, 0, 1, 0), qi(0, 0, 0, 1)];
    let cols: Vec<Quat> = basis.iter().map(|e| quat_mul(&quat_mul(l, e), &rc)).collect();
    CycloMatrix::from_fn(4, 4, |i, j| cols[j][i].clone())
}

/// Is phi(l, r) a rotation? Criterion: Re(l) = Re(r), not +-1.
pub fn pair_is_rotation(l: &Quat, r: &Quat) -> bool {
    l[0] == r[0] && l[0] != Cyclo::one() && l[0] != Cyclo::from_int(-1)
}

struct QuotientTable {
    reps: Vec<usize>,
    label_of: Vec<usize>,
    /// multiplication table on labels
    table: Vec<Vec<usize>>,
}

fn quotient_table(g: &QuatGroup, kernel: &QuatGroup) -> QuotientTable {
    let (reps, label_of) = g.cosets(kernel);
    let q = reps.len();
    let mut table = vec![vec![0usize; q]; q];
    for a in 0..q {
        for b in 0..q {
            let p = quat_mul(&g.elements[reps[a]], &g.elements[reps[b]]);
            table[a][b] = label_of[g.index_of(&p).unwrap()];
        }
    }
    QuotientTable { reps, label_of, table }
}

fn is_table_isomorphism(t1: &QuotientTable, t2: &QuotientTable, map: &[usize]) -> bool {
    let q = t1.table.len();
    let mut seen = vec![false; q];
    for &m in map {
        if m >= q || seen[m] {
            return false;
        }
        seen[m] = true;
    }
    for a in 0..q {
        for b in 0..q {
            if map[t1.table[a][b]] != t2.table[map[a]][map[b]] {
                return false;
            }
        }
    }
    true
}

fn search_isomorphism(t1: &QuotientTable, t2: &QuotientTable) -> Option<Vec<usize>> {
    let q = t1.table.len();
    // backtracking on label images; fine for the small quotients in the
    // catalog (order <= 8 in every table family with distinct sides)
    fn rec(t1: &QuotientTable, t2: &QuotientTable, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let q = t1.table.len();
        let a = map.len();
        if a == q {
            return is_table_isomorphism(t1, t2, map);
        }
        for b in 0..q {
            if used[b] {
                continue;
            }
            // partial consistency
            map.push(b);
            used[b] = true;
            let mut ok = true;
            'outer: for x in 0..map.len() {
                for y in 0..map.len() {
                    let prod = t1.table[x][y];
                    if prod < map.len() && map[prod] != t2.table[map[x]][map[y]] {
                        ok = false;
                        break 'outer;
                    }
                }
            }
            if ok && rec(t1, t2, map, used) {
                return true;
            }
            map.pop();
            used[b] = false;
        }
        false
    }
    let mut map = Vec::new();
    let mut used = vec![false; q];
    if rec(t1, t2, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

/// Build the SO(4) subgroup (L/L_K; R/R_K)_phi.
pub fn so4_group(
    l: &QuatGroup,
    lk: &QuatGroup,
    r: &QuatGroup,
    rk: &QuatGroup,
    phi: &PhiSpec,
) -> Result<MatrixGroup> {
    if !l.has_minus_one() || !r.has_minus_one() {
        return Err(Error::InvalidConstruction(
            "-1 must lie in both L and R".into(),
        ));
    }
    if !l.is_normal_subgroup(lk) {
        return Err(Error::InvalidConstruction("L_K is not normal in L".into()));
    }
    if !r.is_normal_subgroup(rk) {
        return Err(Error::InvalidConstruction("R_K is not normal in R".into()));
    }
    let tl = quotient_table(l, lk);
    let tr = quotient_table(r, rk);
    if tl.table.len() != tr.table.len() {
        return Err(Error::InvalidConstruction(
            "quotients have different orders; phi cannot be an isomorphism".into(),
        ));
    }
    let map: Vec<usize> = match phi {
        PhiSpec::Id => (0..tl.table.len()).collect(),
        PhiSpec::Labels(m) => m.clone(),
        PhiSpec::Galois(k) => {
            // entrywise Galois may carry L onto a conjugate copy rather than
            // R itself (the icosian group and its conjugate); correct with a
            // unit quaternion c so that x -> c sigma(x) c^-1 lands in R
            // act on minimal-conductor representations so that rational
            // coordinates stay fixed whatever conductor they were stored at
            let sigma = |q: &Quat| -> Result<Quat> {
                Ok([
                    q[0].minimized().galois(*k)?,
                    q[1].minimized().galois(*k)?,
                    q[2].minimized().galois(*k)?,
                    q[3].minimized().galois(*k)?,
                ])
            };
            let mut conjugator: Option<Quat> = None;
            let plain_works = tl
                .reps
                .iter()
                .all(|&rep| sigma(&l.elements[rep]).map(|q| r.contains(&q)).unwrap_or(false));
            if !plain_works {
                let candidates = binary_octahedral()?;
                'search: for c in &candidates.elements {
                    let ci = quat_conj(c);
                    for &rep in &tl.reps {
                        let img = quat_mul(&quat_mul(c, &sigma(&l.elements[rep])?), &ci);
                        if !r.contains(&img) {
                            continue 'search;
                        }
                    }
                    conjugator = Some(c.clone());
                    break;
                }
                if conjugator.is_none() {
                    return Err(Error::InvalidConstruction(
                        "galois image leaves R and no correcting conjugator found".into(),
                    ));
                }
            }
            let twist = |q: &Quat| -> Result<Quat> {
                let s = sigma(q)?;
                Ok(match &conjugator {
                    None => s,
                    Some(c) => quat_mul(&quat_mul(c, &s), &quat_conj(c)),
                })
            };
            // the twist must carry the kernel into the kernel
            for lk_el in &lk.elements {
                if !rk.contains(&twist(lk_el)?) {
                    return Err(Error::InvalidConstruction(
                        "galois twist does not preserve the kernel".into(),
                    ));
                }
            }
            let mut m = vec![usize::MAX; tl.table.len()];
            for (lbl, &rep) in tl.reps.iter().enumerate() {
                let img = twist(&l.elements[rep])?;
                let idx = r
                    .index_of(&img)
                    .ok_or_else(|| Error::InvalidConstruction("galois image leaves R".into()))?;
                m[lbl] = tr.label_of[idx];
            }
            m
        }
        PhiSpec::Auto => {
            if tl.table.len() == 1 {
                vec![0]
            } else {
                let id: Vec<usize> = (0..tl.table.len()).collect();
                if is_table_isomorphism(&tl, &tr, &id) {
                    id
                } else {
                    search_isomorphism(&tl, &tr).ok_or_else(|| {
                        Error::InvalidConstruction("no quotient isomorphism found".into())
                    })?
                }
            }
        }
    };
    if !is_table_isomorphism(&tl, &tr, &map) {
        return Err(Error::InvalidConstruction(
            "phi is not an isomorphism of the quotients".into(),
        ));
    }
    // generators: generating set of L paired with representatives of the
    // phi-image cosets, plus the kernel 1 x R_K
    let mut gens: Vec<CycloMatrix> = Vec::new();
    for lg in l.generating_set() {
        let lbl = tl.label_of[l.index_of(&lg).unwrap()];
        let rrep = &r.elements[tr.reps[map[lbl]]];
        gens.push(phi_matrix(&lg, rrep));
    }
    let one = qi(1, 0, 0, 0);
    for rg in rk.generating_set() {
        gens.push(phi_matrix(&one, &rg));
    }
    let order = (l.len() as u128) * (rk.len() as u128) / 2;
    let name = format!("SO4({}/{};{}/{})", l.label, lk.label, r.label, rk.label);
    Ok(MatrixGroup::new(4, gens, Some(name))?.with_expected_order(order))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_group_sizes_close() {
        assert_eq!(binary_tetrahedral().unwrap().len(), 24);
        assert_eq!(binary_octahedral().unwrap().len(), 48);
        assert_eq!(binary_icosahedral().unwrap().len(), 120);
        assert_eq!(binary_dihedral(3).unwrap().len(), 12);
        assert_eq!(cyclic(5).unwrap().len(), 5);
    }

    #[test]
    fn phi_matrix_of_i_left_screw() {
        // phi(i, 1): 1 -> i, i -> -1, j -> k, k -> -j
        let m = phi_matrix(&qi(0, 1, 0, 0), &qi(1, 0, 0, 0));
        let expect = CycloMatrix::from_int_rows(&[
            &[0, -1, 0, 0],
            &[1, 0, 0, 0],
            &[0, 0, 0, -1],
            &[0, 0, 1, 0],
        ]);
        assert_eq!(m, expect);
    }

    #[test]
    fn tt_tt_is_w_star_d4_order() {
        let t = binary_tetrahedral().unwrap();
        let g = so4_group(&t, &t, &t, &t, &PhiSpec::Auto).unwrap();
        assert_eq!(g.order().unwrap(), 288);
    }

    #[test]
    fn rotation_criterion_matches_fixed_space() {
        let t = binary_tetrahedral().unwrap();
        for l in t.elements.iter().take(12) {
            for r in t.elements.iter().take(12) {
                let m = phi_matrix(l, r);
                let is_rot = m.fixed_dim() == 2;
                assert_eq!(pair_is_rotation(l, r), is_rot, "pair {l:?} {r:?}");
            }
        }
    }

    #[test]
    fn covering_is_two_to_one() {
        let l = qi(0, 1, 0, 0);
        let r = qi(0, 0, 1, 0);
        assert_eq!(phi_matrix(&l, &r), phi_matrix(&quat_neg(&l), &quat_neg(&r)));
    }
}
