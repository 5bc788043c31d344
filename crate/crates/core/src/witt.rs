//! The F_2 quadratic-form structure on H/{+-1} for the order-128 tensor
//! group H, with singular-subspace enumeration, the weight-space collections
//! K_1, K_2, K_4 and the 420 order-2 rotations attached to K_2.

use crate::error::{Error, Result};
use crate::linalg::{canonical_subspace, projection_onto, CycloMatrix, CycloVector};
use crate::matgroup::MatrixGroup;
use std::collections::{HashMap, HashSet};

pub type F2Vec = u8; // 6 bits

/// Witt space of the tensor group: the 63 nonzero classes of H/{+-1} as
/// F_2^6 vectors with Q(x) = 0 or 1 according to h^2 = +-1.
pub struct WittSpace {
    /// representative matrix for each class, indexed by F2 coordinates
    pub class_rep: HashMap<F2Vec, CycloMatrix>,
    pub q: HashMap<F2Vec, u8>,
    pub dim: usize,
}

fn f2_add(a: F2Vec, b: F2Vec) -> F2Vec {
    a ^ b
}

/// All nonzero vectors of a k-dimensional F2 subspace spanned by `basis`.
fn f2_span(basis: &[F2Vec]) -> Vec<F2Vec> {
    let mut out = Vec::new();
    for m in 1u32..(1 << basis.len()) {
        let mut v = 0;
        for (i, b) in basis.iter().enumerate() {
            if m >> i & 1 == 1 {
                v = f2_add(v, *b);
            }
        }
        out.push(v);
    }
    out.sort_unstable();
    out.dedup();
    out
}

impl WittSpace {
    /// Shape-check the input group and build the Witt space. The group must
    /// have order 128, contain -I, and have every element squaring to +-I.
    pub fn build(h: &MatrixGroup) -> Result<WittSpace> {
        let order = h.order()?;
        if order != 128 || h.dim != 8 {
            return Err(Error::InvalidConstruction(format!(
                "witt space needs the order-128 tensor group in dimension 8, got order {order}"
            )));
        }
        let minus_i = CycloMatrix::identity(8).neg();
        if !h.contains(&minus_i)? {
            return Err(Error::InvalidConstruction("-I missing from H".into()));
        }
        let id = CycloMatrix::identity(8);
        // collect one representative per class {h, -h}
        let mut reps: Vec<CycloMatrix> = Vec::new();
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        for el in h.elements(256)? {
            let k = el.matrix.key_bytes();
            if seen.contains(&k) {
                continue;
            }
            seen.insert(el.matrix.neg().key_bytes());
            seen.insert(k);
            reps.push(el.matrix);
        }
        if reps.len() != 64 {
            return Err(Error::InvalidConstruction("H/{+-1} does not have 64 classes".into()));
        }
        for m in &reps {
            let sq = m.mul(m);
            if sq != id && sq != minus_i {
                return Err(Error::InvalidConstruction("element square is not +-I".into()));
            }
        }
        // greedily pick 6 basis classes (F2-independent) and coordinatize
        let key_class = |m: &CycloMatrix| -> Vec<u8> {
            let a = m.key_bytes();
            let b = m.neg().key_bytes();
            if a < b { a } else { b }
        };
        let mut basis: Vec<CycloMatrix> = Vec::new();
        let mut coords: HashMap<Vec<u8>, F2Vec> = HashMap::new();
        coords.insert(key_class(&id), 0);
        for m in &reps {
            if coords.contains_key(&key_class(m)) {
                continue;
            }
            basis.push(m.clone());
            // rebuild the span table
            coords.clear();
            for mask in 0u32..(1 << basis.len()) {
                let mut p = id.clone();
                for (i, b) in basis.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        p = p.mul(b);
                    }
                }
                coords.insert(key_class(&p), mask as F2Vec);
            }
            if basis.len() == 6 {
                break;
            }
        }
        if basis.len() != 6 || coords.len() != 64 {
            return Err(Error::InvalidConstruction("H/{+-1} is not 6-dimensional over F2".into()));
        }
        let mut class_rep = HashMap::new();
        let mut q = HashMap::new();
        for m in &reps {
            let v = coords[&key_class(m)];
            let sq = m.mul(m);
            q.insert(v, if sq == id { 0u8 } else { 1u8 });
            class_rep.insert(v, m.clone());
        }
        let w = WittSpace { class_rep, q, dim: 6 };
        if !w.bilinear_nondegenerate() {
            return Err(Error::InvalidConstruction("associated bilinear form is degenerate".into()));
        }
        Ok(w)
    }

    pub fn q_of(&self, v: F2Vec) -> u8 {
        self.q[&v]
    }

    /// f(x, y) = Q(x+y) + Q(x) + Q(y).
    pub fn bilinear(&self, x: F2Vec, y: F2Vec) -> u8 {
        (self.q_of(f2_add(x, y)) + self.q_of(x) + self.q_of(y)) % 2
    }

    fn bilinear_nondegenerate(&self) -> bool {
        // radical is trivial: no nonzero x with f(x, y) = 0 for all y
        (1u8..64).all(|x| (1u8..64).any(|y| self.bilinear(x, y) == 1))
    }

    pub fn singular_vectors(&self) -> Vec<F2Vec> {
        (1u8..64).filter(|&v| self.q_of(v) == 0).collect()
    }

    /// All singular subspaces of the given dimension (1, 2 or 3), each as the
    /// sorted list of its nonzero vectors.
    pub fn singular_subspaces(&self, dim: usize) -> Vec<Vec<F2Vec>> {
        let sing: HashSet<F2Vec> = self.singular_vectors().into_iter().collect();
        let mut out: HashSet<Vec<F2Vec>> = HashSet::new();
        match dim {
            1 => {
                for &v in &sing {
                    out.insert(vec![v]);
                }
            }
            2 => {
                for &a in &sing {
                    for &b in &sing {
                        if a >= b {
                            continue;
                        }
                        let c = f2_add(a, b);
                        if sing.contains(&c) {
                            out.insert(f2_span(&[a, b]));
                        }
                    }
                }
            }
            3 => {
                for two in self.singular_subspaces(2) {
                    for &d in &sing {
                        if two.contains(&d) {
                            continue;
                        }
                        let span = f2_span(&[two[0], two[1], d]);
                        if span.len() == 7 && span.iter().all(|v| sing.contains(v)) {
                            out.insert(span);
                        }
                    }
                }
            }
            _ => {}
        }
        let mut v: Vec<Vec<F2Vec>> = out.into_iter().collect();
        v.sort();
        v
    }

    pub fn singular_count(&self, dim: usize) -> usize {
        self.singular_subspaces(dim).len()
    }

    pub fn witt_index(&self) -> usize {
        (1..=3).rev().find(|&d| self.singular_count(d) > 0).unwrap_or(0)
    }

    /// Common eigenspaces of the preimage of a singular subspace: for an
    /// i-dimensional singular subspace these are 2^i weight spaces of
    /// dimension 2^(3-i).
    pub fn weight_spaces_of(&self, subspace: &[F2Vec]) -> Vec<Vec<CycloVector>> {
        // pick an F2-basis of the subspace
        let mut basis: Vec<F2Vec> = Vec::new();
        for &v in subspace {
            if !f2_span(&basis).contains(&v) {
                basis.push(v);
            }
        }
        let mats: Vec<&CycloMatrix> = basis.iter().map(|v| &self.class_rep[v]).collect();
        let id = CycloMatrix::identity(8);
        let mut out = Vec::new();
        for mask in 0u32..(1 << basis.len()) {
            // kernel of stacked (h_i - eps_i I)
            let k = basis.len();
            let stacked = CycloMatrix::from_fn(8 * k, 8, |row, col| {
                let b = row / 8;
                let r = row % 8;
                let sign = if mask >> b & 1 == 1 { -1i64 } else { 1 };
                mats[b].at(r, col).sub(&id.at(r, col).mul(&crate::cyclo::Cyclo::from_int(sign)))
            });
            let ker = stacked.kernel();
            if !ker.is_empty() {
                out.push(canonical_subspace(&ker));
            }
        }
        out
    }

    /// The weight-space collection K_{2^(3-i)} taken over all i-dimensional
    /// singular subspaces.
    pub fn weight_collection(&self, i: usize) -> Vec<Vec<CycloVector>> {
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        let mut out = Vec::new();
        for s in self.singular_subspaces(i) {
            for w in self.weight_spaces_of(&s) {
                let key = crate::linalg::subspace_key(&w);
                if seen.insert(key) {
                    out.push(w);
                }
            }
        }
        out
    }

    /// The order-2 rotations whose (-1)-eigenplanes are the K_2 planes.
    pub fn rotation_set(&self) -> Vec<CycloMatrix> {
        self.weight_collection(2)
            .iter()
            .map(|plane| {
                let p = projection_onto(plane);
                CycloMatrix::identity(8).sub(&p.scale(&crate::cyclo::Cyclo::from_int(2)))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::exceptional::h_tensor;

    #[test]
    fn witt_structure_counts() {
        let h = h_tensor().unwrap();
        let w = WittSpace::build(&h).unwrap();
        assert_eq!(w.singular_count(1), 35);
        assert_eq!(w.singular_count(2), 105);
        assert_eq!(w.singular_count(3), 30);
        assert_eq!(w.witt_index(), 3);
    }

    #[test]
    fn weight_collections() {
        let h = h_tensor().unwrap();
        let w = WittSpace::build(&h).unwrap();
        // 30 maximal singular subspaces x 8 one-dim weight lines, all distinct
        assert_eq!(w.weight_collection(3).len(), 240);
        // 105 x 4 weight planes
        let k2 = w.weight_collection(2);
        assert_eq!(k2.len(), 420);
        let rots = w.rotation_set();
        assert_eq!(rots.len(), 420);
        for r in rots.iter().take(12) {
            assert!(r.is_orthogonal());
            assert!(r.mul(r).is_identity());
            assert_eq!(r.fixed_dim(), 6);
        }
    }

    #[test]
    fn maximal_singular_incidence_and_orbit_split() {
        let h = h_tensor().unwrap();
        let w = WittSpace::build(&h).unwrap();
        let maximal = w.singular_subspaces(3);
        // each maximal singular subspace holds 7 one-dimensional subspaces
        for m in &maximal {
            assert_eq!(m.len(), 7);
        }
        // every 2-dim singular subspace lies in exactly two maximal ones,
        // and their weight-line families are of opposite root types
        use crate::catalog::exceptional::{roots_r1, roots_r2};
        use std::collections::HashSet;
        let r1: HashSet<Vec<u8>> = roots_r1()
            .iter()
            .map(|v| crate::linalg::subspace_key(&[v.clone()]))
            .collect();
        let r2: HashSet<Vec<u8>> = roots_r2()
            .iter()
            .map(|v| crate::linalg::subspace_key(&[v.clone()]))
            .collect();
        let family_of = |m: &Vec<F2Vec>| -> u8 {
            let lines = w.weight_spaces_of(m);
            let mut fam = 0u8;
            for line in &lines {
                let key = crate::linalg::subspace_key(line);
                let in1 = r1.contains(&key);
                let in2 = r2.contains(&key);
                assert!(in1 ^ in2, "weight line is in exactly one root family");
                let f = if in1 { 1 } else { 2 };
                if fam == 0 {
                    fam = f;
                } else {
                    assert_eq!(fam, f, "weight lines of one maximal mix families");
                }
            }
            fam
        };
        let families: Vec<u8> = maximal.iter().map(family_of).collect();
        assert_eq!(families.iter().filter(|&&f| f == 1).count(), 15);
        assert_eq!(families.iter().filter(|&&f| f == 2).count(), 15);
        for two in w.singular_subspaces(2) {
            let containing: Vec<usize> = maximal
                .iter()
                .enumerate()
                .filter(|(_, m)| two.iter().all(|v| m.contains(v)))
                .map(|(i, _)| i)
                .collect();
            assert_eq!(containing.len(), 2);
            assert_ne!(
                families[containing[0]], families[containing[1]],
                "the two parents come from different orbits"
            );
        }
    }

    #[test]
    fn q_value_of_quarter_turn_class() {
        // R(pi/2) x I x I squares to -I, so Q = 1 on its class
        let h = h_tensor().unwrap();
        let w = WittSpace::build(&h).unwrap();
        let g = &h.generators[0]; // r x I x I by construction
        let sq = g.mul(g);
        assert_eq!(sq, CycloMatrix::identity(8).neg());
        // find its class
        let cls = w
            .class_rep
            .iter()
            .find(|(_, m)| *m == g || **m == g.neg())
            .map(|(v, _)| *v)
            .unwrap();
        assert_eq!(w.q_of(cls), 1);
    }
}
