//! Exact dense linear algebra over cyclotomic scalars.
//!
//! Dimensions stay small (at most 16 ambient, matrices up to 8x8 in the
//! catalog), so everything is plain Gaussian elimination with exact field
//! division. No floating point.

use crate::cyclo::Cyclo;
use crate::error::{Error, Result};
use num_integer::Integer;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycloVector {
    pub entries: Vec<Cyclo>,
}

impl CycloVector {
    pub fn new(entries: Vec<Cyclo>) -> CycloVector {
        CycloVector { entries }
    }

    pub fn zero(dim: usize) -> CycloVector {
        CycloVector { entries: vec![Cyclo::zero(); dim] }
    }

    pub fn basis(dim: usize, i: usize) -> CycloVector {
        let mut v = CycloVector::zero(dim);
        v.entries[i] = Cyclo::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn add(&self, other: &CycloVector) -> CycloVector {
        CycloVector::new(
            self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect(),
        )
    }

    pub fn sub(&self, other: &CycloVector) -> CycloVector {
        CycloVector::new(
            self.entries.iter().zip(&other.entries).map(|(a, b)| a.sub(b)).collect(),
        )
    }

    pub fn neg(&self) -> CycloVector {
        CycloVector::new(self.entries.iter().map(|a| a.neg()).collect())
    }

    pub fn scale(&self, s: &Cyclo) -> CycloVector {
        CycloVector::new(self.entries.iter().map(|a| a.mul(s)).collect())
    }

    pub fn dot(&self, other: &CycloVector) -> Cyclo {
        let mut acc = Cyclo::zero();
        for (a, b) in self.entries.iter().zip(&other.entries) {
            acc = acc.add(&a.mul(b));
        }
        acc
    }

    pub fn promote(&self, n: u32) -> CycloVector {
        CycloVector::new(self.entries.iter().map(|e| e.promote(n)).collect())
    }

    pub fn key_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        for e in &self.entries {
            e.key_bytes(&mut out);
        }
        out
    }
}

/// Dense matrix with all entries promoted to one shared conductor.
#[derive(Clone, Debug)]
pub struct CycloMatrix {
    pub rows: usize,
    pub cols: usize,
    pub conductor: u32,
    entries: Vec<Cyclo>, // row-major
}

impl PartialEq for CycloMatrix {
    fn eq(&self, other: &CycloMatrix) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.entries.iter().zip(&other.entries).all(|(a, b)| a == b)
    }
}

impl Eq for CycloMatrix {}

impl CycloMatrix {
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Cyclo>) -> CycloMatrix {
        assert_eq!(entries.len(), rows * cols);
        let conductor = entries
            .iter()
            .fold(1u32, |n, e| n.lcm(&e.conductor()));
        let entries = entries.into_iter().map(|e| e.promote(conductor)).collect();
        CycloMatrix { rows, cols, conductor, entries }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Cyclo) -> CycloMatrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        CycloMatrix::from_entries(rows, cols, entries)
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> CycloMatrix {
        let r = rows.len();
        let c = rows[0].len();
        CycloMatrix::from_fn(r, c, |i, j| Cyclo::from_int(rows[i][j]))
    }

    pub fn identity(n: usize) -> CycloMatrix {
        CycloMatrix::from_fn(n, n, |i, j| if i == j { Cyclo::one() } else { Cyclo::zero() })
    }

    pub fn zero(rows: usize, cols: usize) -> CycloMatrix {
        CycloMatrix::from_fn(rows, cols, |_, _| Cyclo::zero())
    }

    pub fn at(&self, i: usize, j: usize) -> &Cyclo {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Cyclo) {
        let n = self.conductor.lcm(&v.conductor());
        if n != self.conductor {
            self.conductor = n;
            for e in self.entries.iter_mut() {
                *e = e.promote(n);
            }
        }
        self.entries[i * self.cols + j] = v.promote(n);
    }

    pub fn entries(&self) -> &[Cyclo] {
        &self.entries
    }

    pub fn promote(&self, n: u32) -> CycloMatrix {
        if n == self.conductor {
            return self.clone();
        }
        CycloMatrix {
            rows: self.rows,
            cols: self.cols,
            conductor: n,
            entries: self.entries.iter().map(|e| e.promote(n)).collect(),
        }
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &CycloMatrix) -> CycloMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let n = self.conductor.lcm(&other.conductor);
        let a = self.promote(n);
        let b = other.promote(n);
        let mut out = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Cyclo::zero();
                for k in 0..self.cols {
                    let x = a.at(i, k);
                    if x.is_zero() {
                        continue;
                    }
                    acc = acc.add(&x.mul(b.at(k, j)));
                }
                out.push(acc);
            }
        }
        CycloMatrix { rows: self.rows, cols: other.cols, conductor: n, entries: out }
    }

    pub fn apply(&self, v: &CycloVector) -> CycloVector {
        assert_eq!(self.cols, v.dim());
        let n = self.conductor;
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut acc = Cyclo::zero();
            for k in 0..self.cols {
                let x = self.at(i, k);
                if x.is_zero() {
                    continue;
                }
                acc = acc.add(&x.mul(&v.entries[k]));
            }
            out.push(acc.promote(n.lcm(&acc.conductor())));
        }
        CycloVector::new(out)
    }

    pub fn add(&self, other: &CycloMatrix) -> CycloMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CycloMatrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j).add(other.at(i, j)))
    }

    pub fn sub(&self, other: &CycloMatrix) -> CycloMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CycloMatrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j).sub(other.at(i, j)))
    }

    pub fn scale(&self, s: &Cyclo) -> CycloMatrix {
        CycloMatrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j).mul(s))
    }

    pub fn neg(&self) -> CycloMatrix {
        CycloMatrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j).neg())
    }

    pub fn transpose(&self) -> CycloMatrix {
        CycloMatrix {
            rows: self.cols,
            cols: self.rows,
            conductor: self.conductor,
            entries: {
                let mut out = Vec::with_capacity(self.rows * self.cols);
                for j in 0..self.cols {
                    for i in 0..self.rows {
                        out.push(self.at(i, j).clone());
                    }
                }
                out
            },
        }
    }

    /// Kronecker product, used to build tensor-product groups.
    pub fn kron(&self, other: &CycloMatrix) -> CycloMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        CycloMatrix::from_fn(rows, cols, |i, j| {
            let (i1, i2) = (i / other.rows, i % other.rows);
            let (j1, j2) = (j / other.cols, j % other.cols);
            self.at(i1, j1).mul(other.at(i2, j2))
        })
    }

    pub fn block_diag(blocks: &[CycloMatrix]) -> CycloMatrix {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = CycloMatrix::zero(rows, cols);
        let mut ro = 0;
        let mut co = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(ro + i, co + j, b.at(i, j).clone());
                }
            }
            ro += b.rows;
            co += b.cols;
        }
        m
    }

    pub fn column(&self, j: usize) -> CycloVector {
        CycloVector::new((0..self.rows).map(|i| self.at(i, j).clone()).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.at(i, j) == &Cyclo::one()
                    } else {
                        self.at(i, j).is_zero()
                    }
                })
            })
    }

    /// Exactly M^T M = I.
    pub fn is_orthogonal(&self) -> bool {
        self.is_square() && self.transpose().mul(self).is_identity()
    }

    /// Entrywise Galois image; preserves orthogonality because the
    /// automorphism fixes the defining equations of M^T M = I.
    pub fn galois(&self, k: i64) -> Result<CycloMatrix> {
        let mut out = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            out.push(e.galois(k)?);
        }
        Ok(CycloMatrix {
            rows: self.rows,
            cols: self.cols,
            conductor: self.conductor,
            entries: out,
        })
    }

    /// Row-reduced echelon form; returns (rref, pivot columns).
    pub fn rref(&self) -> (CycloMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    let a = m.at(r, j).clone();
                    let b = m.at(p, j).clone();
                    m.set(r, j, b);
                    m.set(p, j, a);
                }
            }
            let inv = m.at(r, c).inv().expect("pivot nonzero");
            for j in 0..m.cols {
                let v = m.at(r, j).mul(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.at(i, c).is_zero() {
                    let f = m.at(i, c).clone();
                    for j in 0..m.cols {
                        let v = m.at(i, j).sub(&f.mul(m.at(r, j)));
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel; vectors satisfy M v = 0 exactly.
    pub fn kernel(&self) -> Vec<CycloVector> {
        let (rref, pivots) = self.rref();
        let mut basis = Vec::new();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = CycloVector::zero(self.cols);
            v.entries[free] = Cyclo::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v.entries[pc] = rref.at(r, free).neg();
            }
            basis.push(v);
        }
        basis
    }

    pub fn det(&self) -> Cyclo {
        assert!(self.is_square(), "determinant of non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Cyclo::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.at(i, c).is_zero()) else {
                return Cyclo::zero();
            };
            if p != c {
                det = det.neg();
                for j in 0..n {
                    let a = m.at(c, j).clone();
                    let b = m.at(p, j).clone();
                    m.set(c, j, b);
                    m.set(p, j, a);
                }
            }
            let piv = m.at(c, c).clone();
            det = det.mul(&piv);
            let inv = piv.inv().unwrap();
            for i in c + 1..n {
                if m.at(i, c).is_zero() {
                    continue;
                }
                let f = m.at(i, c).mul(&inv);
                for j in c..n {
                    let v = m.at(i, j).sub(&f.mul(m.at(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<CycloMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = CycloMatrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.at(i, j).clone()
            } else if j - n == i {
                Cyclo::one()
            } else {
                Cyclo::zero()
            }
        });
        let mut r = 0;
        for c in 0..n {
            let Some(p) = (r..n).find(|&i| !aug.at(i, c).is_zero()) else {
                return Err(Error::SingularMatrix);
            };
            if p != r {
                for j in 0..2 * n {
                    let a = aug.at(r, j).clone();
                    let b = aug.at(p, j).clone();
                    aug.set(r, j, b);
                    aug.set(p, j, a);
                }
            }
            let inv = aug.at(r, c).inv().unwrap();
            for j in 0..2 * n {
                let v = aug.at(r, j).mul(&inv);
                aug.set(r, j, v);
            }
            for i in 0..n {
                if i != r && !aug.at(i, c).is_zero() {
                    let f = aug.at(i, c).clone();
                    for j in 0..2 * n {
                        let v = aug.at(i, j).sub(&f.mul(aug.at(r, j)));
                        aug.set(i, j, v);
                    }
                }
            }
            r += 1;
        }
        Ok(CycloMatrix::from_fn(n, n, |i, j| aug.at(i, j + n).clone()))
    }

    /// Dimension of the fixed subspace ker(M - I).
    pub fn fixed_dim(&self) -> usize {
        assert!(self.is_square());
        self.cols - self.sub(&CycloMatrix::identity(self.rows)).rank()
    }

    pub fn key_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.entries.len() * 8);
        for e in &self.entries {
            e.key_bytes(&mut out);
        }
        out
    }
}

/// Span of a list of vectors as a canonical RREF basis (row space form).
/// Two vector lists span the same subspace iff their canonical bases match.
pub fn canonical_subspace(vectors: &[CycloVector]) -> Vec<CycloVector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let dim = vectors[0].dim();
    let m = CycloMatrix::from_fn(vectors.len(), dim, |i, j| vectors[i].entries[j].clone());
    let (rref, pivots) = m.rref();
    (0..pivots.len())
        .map(|r| CycloVector::new((0..dim).map(|j| rref.at(r, j).clone()).collect()))
        .collect()
}

/// Value-canonical key of a subspace: RREF basis with every entry rewritten
/// at its minimal conductor and then promoted to their common lcm, so equal
/// subspaces key equally no matter how their vectors were represented.
pub fn subspace_key(vectors: &[CycloVector]) -> Vec<u8> {
    let basis = canonical_subspace(vectors);
    let minimized: Vec<Vec<Cyclo>> = basis
        .iter()
        .map(|v| v.entries.iter().map(|e| e.minimized()).collect())
        .collect();
    let lcm = minimized
        .iter()
        .flatten()
        .fold(1u32, |n, e| n.lcm(&e.conductor()));
    let mut out = Vec::new();
    for v in minimized {
        for e in v {
            e.promote(lcm).key_bytes(&mut out);
        }
        out.push(0xFF);
    }
    out
}

/// Orthogonal projection onto the span of `basis` (need not be orthonormal):
/// P = B (B^T B)^-1 B^T, exact over the field.
pub fn projection_onto(basis: &[CycloVector]) -> CycloMatrix {
    let dim = basis[0].dim();
    let b = CycloMatrix::from_fn(dim, basis.len(), |i, j| basis[j].entries[i].clone());
    let bt = b.transpose();
    let gram = bt.mul(&b);
    let ginv = gram.inverse().expect("basis is linearly independent");
    b.mul(&ginv).mul(&bt)
}

/// Does the span of `sub` lie inside the span of `space`?
pub fn subspace_contained(sub: &[CycloVector], space: &[CycloVector]) -> bool {
    if sub.is_empty() {
        return true;
    }
    let dim = sub[0].dim();
    let all: Vec<CycloVector> = space.iter().chain(sub.iter()).cloned().collect();
    let m = CycloMatrix::from_fn(space.len(), dim, |i, j| space[i].entries[j].clone());
    let m2 = CycloMatrix::from_fn(all.len(), dim, |i, j| all[i].entries[j].clone());
    m.rank() == m2.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_kernel_of_identity() {
        let m = CycloMatrix::identity(3);
        assert_eq!(m.rank(), 3);
        assert!(m.kernel().is_empty());
    }

    #[test]
    fn kernel_of_diag_sign_flip() {
        // g = diag(-1,-1,1,1): kernel of g - I is span{e3,e4}
        let g = CycloMatrix::from_int_rows(&[
            &[-1, 0, 0, 0],
            &[0, -1, 0, 0],
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
        ]);
        let d = g.sub(&CycloMatrix::identity(4));
        assert_eq!(d.rank(), 2);
        let ker = d.kernel();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(d.apply(v).is_zero());
        }
        assert_eq!(g.fixed_dim(), 2);
    }

    #[test]
    fn det_of_rotation_is_one() {
        let (c, s) = crate::cyclo::cos_sin(1, 5);
        let rot = CycloMatrix::from_entries(2, 2, vec![c.clone(), s.neg(), s, c]);
        assert_eq!(rot.det(), Cyclo::one());
        assert!(rot.is_orthogonal());
    }

    #[test]
    fn orthogonality_checks() {
        let p = CycloMatrix::from_int_rows(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        assert!(p.is_orthogonal());
        let d = CycloMatrix::from_int_rows(&[&[2, 0], &[0, 1]]);
        assert!(!d.is_orthogonal());
    }

    #[test]
    fn inverse_round_trip() {
        let m = CycloMatrix::from_fn(3, 3, |i, j| {
            Cyclo::from_int([[2, 1, 0], [1, 3, 1], [0, 1, 4]][i][j])
        });
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn singular_inverse_is_an_error() {
        let m = CycloMatrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert!(matches!(m.inverse(), Err(Error::SingularMatrix)));
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn galois_image_of_orthogonal_stays_orthogonal() {
        // reflection with golden-ratio entries (a root of H3)
        let tau = crate::cyclo::golden();
        let root = CycloVector::new(vec![
            Cyclo::from_int(1),
            tau.clone(),
            tau.clone().inv().unwrap(),
        ]);
        let rr = root.dot(&root);
        let m = CycloMatrix::from_fn(3, 3, |i, j| {
            let e = if i == j { Cyclo::one() } else { Cyclo::zero() };
            let num = root.entries[i].mul(&root.entries[j]).mul(&Cyclo::from_int(2));
            e.sub(&num.div(&rr).unwrap())
        });
        assert!(m.is_orthogonal());
        let g = m.galois(2).unwrap();
        assert!(g.is_orthogonal());
    }
}
