//! Exceptional constructions: R_5(A_5), R_6(PSL_2(7)), the order-128 tensor
//! group H, the primitive rotation group L in SO(8), and the two E_8 root
//! systems R_1, R_2 with their reflection groups.

use crate::catalog::coxeter::reflection_matrix;
use crate::catalog::monomial::{h_perm_generators, perm_matrix};
use crate::cyclo::Cyclo;
use crate::error::{Error, Result};
use crate::linalg::{CycloMatrix, CycloVector};
use crate::matgroup::MatrixGroup;
use crate::witt::WittSpace;
use std::collections::HashSet;

/// R_5(A_5): PSL_2(5) acting on the six points of the projective line over
/// F_5, as 6x6 permutation matrices (essential dimension 5).
pub fn r5_a5() -> Result<MatrixGroup> {
    // points ordered 0, 1, 2, 3, 4, infinity
    let shift = perm_matrix(6, &[&[0, 1, 2, 3, 4]]); // z -> z + 1
    let inv = perm_matrix(6, &[&[0, 5], &[1, 4]]); // z -> -1/z
    // the inversion is a double transposition: a rotation (codim 2)
    debug_assert_eq!(inv.fixed_dim(), 4);
    Ok(MatrixGroup::new(6, vec![shift, inv], Some("R5(A5)".into()))?.with_expected_order(60))
}

/// R_6(PSL_2(7)): H_7 as 7x7 permutation matrices (essential dimension 6).
pub fn r6_psl27() -> Result<MatrixGroup> {
    let gens = h_perm_generators(7)?;
    Ok(MatrixGroup::new(7, gens, Some("R6(PSL27)".into()))?.with_expected_order(168))
}

/// The tensor group H = W(I_2(4)) x W(I_2(4)) x W(I_2(4)) in SO(8),
/// order 2^7.
pub fn h_tensor() -> Result<MatrixGroup> {
    let r = CycloMatrix::from_int_rows(&[&[0, -1], &[1, 0]]);
    let s = CycloMatrix::from_int_rows(&[&[1, 0], &[0, -1]]);
    let i = CycloMatrix::identity(2);
    let mut gens = Vec::new();
    for pos in 0..3 {
        for m in [&r, &s] {
            let blocks: Vec<&CycloMatrix> =
                (0..3).map(|p| if p == pos { m } else { &i }).collect();
            gens.push(blocks[0].kron(blocks[1]).kron(blocks[2]));
        }
    }
    Ok(MatrixGroup::new(8, gens, Some("Htensor".into()))?.with_expected_order(128))
}

fn hv8(pairs: &[(usize, i64)]) -> CycloVector {
    let mut v = CycloVector::zero(8);
    for &(i, c) in pairs {
        v.entries[i] = Cyclo::ratio(c, 2);
    }
    v
}

fn iv8(pairs: &[(usize, i64)]) -> CycloVector {
    let mut v = CycloVector::zero(8);
    for &(i, c) in pairs {
        v.entries[i] = Cyclo::from_int(c);
    }
    v
}

/// The root system R_1: +-e_i +- e_j and the half-integer vectors with an
/// even number of plus signs; 240 vectors of square length 2.
pub fn roots_r1() -> Vec<CycloVector> {
    let mut out = Vec::new();
    for i in 0..8 {
        for j in i + 1..8 {
            for si in [1i64, -1] {
                for sj in [1i64, -1] {
                    out.push(iv8(&[(i, si), (j, sj)]));
                }
            }
        }
    }
    for m in 0..256u32 {
        let plus = (0..8).filter(|b| m >> b & 1 == 0).count();
        if plus % 2 == 0 {
            let pairs: Vec<(usize, i64)> =
                (0..8).map(|b| (b, if m >> b & 1 == 1 { -1 } else { 1 })).collect();
            out.push(hv8(&pairs));
        }
    }
    out
}

/// The root system R_2: +-e_i, the vectors (+-e_i +- e_{i+1} +- e_j +-
/// e_{j+1})/2 over the block pairs, and the parity-constrained quadruples;
/// 240 vectors of unit length.
pub fn roots_r2() -> Vec<CycloVector> {
    let mut out = Vec::new();
    for i in 0..8 {
        for s in [1i64, -1] {
            out.push(iv8(&[(i, s)]));
        }
    }
    let blocks = [0usize, 2, 4, 6];
    for (a, &i) in blocks.iter().enumerate() {
        for &j in blocks.iter().skip(a + 1) {
            for m in 0..16u32 {
                let sg = |b: u32| if m >> b & 1 == 1 { -1i64 } else { 1 };
                out.push(hv8(&[(i, sg(0)), (i + 1, sg(1)), (j, sg(2)), (j + 1, sg(3))]));
            }
        }
    }
    for i in 0..2usize {
        for j in 2..4usize {
            for k in 4..6usize {
                for l in 6..8usize {
                    if (i + j + k + l + 4) % 2 != 0 {
                        continue;
                    }
                    for m in 0..16u32 {
                        let sg = |b: u32| if m >> b & 1 == 1 { -1i64 } else { 1 };
                        out.push(hv8(&[(i, sg(0)), (j, sg(1)), (k, sg(2)), (l, sg(3))]));
                    }
                }
            }
        }
    }
    out
}

/// Verify a root list is closed under negation and under the reflection in
/// each of its roots.
pub fn verify_root_system(roots: &[CycloVector]) -> Result<()> {
    let keys: HashSet<Vec<u8>> = roots.iter().map(|r| r.key_bytes()).collect();
    if keys.len() != roots.len() {
        return Err(Error::InvalidConstruction("duplicate roots".into()));
    }
    for r in roots {
        if !keys.contains(&r.neg().key_bytes()) {
            return Err(Error::InvalidConstruction("root system not closed under negation".into()));
        }
    }
    let dim = roots[0].dim();
    for r in roots {
        let s = reflection_matrix(dim, r);
        for v in roots {
            if !keys.contains(&s.apply(v).key_bytes()) {
                return Err(Error::InvalidConstruction(
                    "root system not closed under its reflections".into(),
                ));
            }
        }
    }
    Ok(())
}

/// Extract a simple system from a crystallographic root list: positive roots
/// for a generic functional that are not the sum of two positive roots.
pub fn simple_system(roots: &[CycloVector]) -> Result<Vec<CycloVector>> {
    let dim = roots[0].dim();
    // generic rational functional 1, 1/M, 1/M^2, ...
    let m = 97i64;
    let weights: Vec<Cyclo> = (0..dim)
        .map(|i| Cyclo::ratio(1, m.pow(i as u32)))
        .collect();
    let val = |v: &CycloVector| -> num_rational::BigRational {
        let mut acc = Cyclo::zero();
        for (w, e) in weights.iter().zip(&v.entries) {
            acc = acc.add(&w.mul(e));
        }
        acc.as_rational().expect("rational roots")
    };
    let zero = num_rational::BigRational::new(0.into(), 1.into());
    for r in roots {
        if val(r) == zero {
            return Err(Error::InvalidConstruction("functional not generic".into()));
        }
    }
    let positive: Vec<&CycloVector> = roots.iter().filter(|r| val(r) > zero).collect();
    let pos_keys: HashSet<Vec<u8>> = positive.iter().map(|r| r.key_bytes()).collect();
    let mut simple = Vec::new();
    for r in &positive {
        let mut decomposable = false;
        for a in &positive {
            let diff = r.sub(a);
            if !diff.is_zero() && pos_keys.contains(&diff.key_bytes()) {
                decomposable = true;
                break;
            }
        }
        if !decomposable {
            simple.push((*r).clone());
        }
    }
    Ok(simple)
}

/// Reflection group of a root list, generated by the reflections in a simple
/// system.
pub fn weyl_group(roots: &[CycloVector], name: &str, expected: u128) -> Result<MatrixGroup> {
    let simple = simple_system(roots)?;
    let dim = roots[0].dim();
    let gens: Vec<CycloMatrix> = simple.iter().map(|r| reflection_matrix(dim, r)).collect();
    Ok(MatrixGroup::new(dim, gens, Some(name.into()))?.with_expected_order(expected))
}

pub fn w_r1() -> Result<MatrixGroup> {
    weyl_group(&roots_r1(), "WR1", 696_729_600)
}

pub fn w_r2() -> Result<MatrixGroup> {
    weyl_group(&roots_r2(), "WR2", 696_729_600)
}

/// The primitive rotation group L < SO(8): generated by H together with
/// order-2 rotations from the K_2 weight planes, grown until the order
/// reaches 2^13 * 3^2 * 5 * 7 = 2580480. The constructor fails if the full
/// rotation set cannot reach that order.
pub fn group_l() -> Result<MatrixGroup> {
    let h = h_tensor()?;
    let witt = WittSpace::build(&h)?;
    let rotations = witt.rotation_set();
    let target: u128 = 2_580_480;
    let mut gens = h.generators.clone();
    // seed with the first few rotations, then augment greedily
    let mut current = MatrixGroup::new(8, gens.clone(), Some("L".into()))?;
    let mut order = 128u128;
    for rot in &rotations {
        if order == target {
            break;
        }
        if current.contains(rot)? {
            continue;
        }
        gens.push(rot.clone());
        current = MatrixGroup::new(8, gens.clone(), Some("L".into()))?;
        order = current.order()?;
        if order > target {
            return Err(Error::InvalidConstruction(format!(
                "L construction overshot the target order: {order}"
            )));
        }
    }
    if order != target {
        return Err(Error::InvalidConstruction(format!(
            "L construction fell short: reached order {order}"
        )));
    }
    Ok(current.with_expected_order(target))
}

/// An element of N \ L: the reflection s with s(sqrt2 e1) = e1 + e2 in the
/// middle tensor factor, id x s x id. It normalizes H and swaps the two
/// root systems up to the sqrt2 scale.
pub fn n_minus_l_element() -> CycloMatrix {
    let h = Cyclo::ratio(1, 2).mul(&crate::cyclo::sqrt2());
    let s = CycloMatrix::from_entries(2, 2, vec![h.clone(), h.clone(), h.clone(), h.neg()]);
    let i = CycloMatrix::identity(2);
    i.kron(&s).kron(&i)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r5_order_and_rotations() {
        let g = r5_a5().unwrap();
        assert_eq!(g.order().unwrap(), 60);
        assert_eq!(g.essential_dim(), 5);
    }

    #[test]
    fn r6_order() {
        let g = r6_psl27().unwrap();
        assert_eq!(g.order().unwrap(), 168);
        assert_eq!(g.essential_dim(), 6);
    }

    #[test]
    fn h_tensor_order() {
        let h = h_tensor().unwrap();
        assert_eq!(h.order().unwrap(), 128);
    }

    #[test]
    fn root_system_counts() {
        let r1 = roots_r1();
        let r2 = roots_r2();
        assert_eq!(r1.len(), 240);
        assert_eq!(r2.len(), 240);
        verify_root_system(&r1).unwrap();
        verify_root_system(&r2).unwrap();
    }

    #[test]
    fn simple_systems_have_rank_8() {
        assert_eq!(simple_system(&roots_r1()).unwrap().len(), 8);
        assert_eq!(simple_system(&roots_r2()).unwrap().len(), 8);
    }

    #[test]
    fn n_minus_l_swaps_root_systems() {
        let nu = n_minus_l_element();
        assert!(nu.is_orthogonal());
        let sqrt2 = crate::cyclo::sqrt2();
        let r2_scaled: HashSet<Vec<u8>> = roots_r2()
            .iter()
            .map(|v| v.scale(&sqrt2).key_bytes())
            .collect();
        for v in roots_r1() {
            let img = nu.apply(&v);
            assert!(r2_scaled.contains(&img.key_bytes()));
        }
        // nu normalizes H
        let h = h_tensor().unwrap();
        for g in &h.generators {
            let conj = nu.mul(g).mul(&nu.inverse().unwrap());
            assert!(h.contains(&conj).unwrap());
        }
    }
}
