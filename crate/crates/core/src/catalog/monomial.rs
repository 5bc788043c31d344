//! Monomial groups: the diagonal groups D(n), D+(n), the permutation groups
//! H5..H8 realized by permutation matrices, the semidirect products M_n,
//! M~_n, M~D(n), and the exceptional subgroups M7p, M8p.
//!
//! The transformation written (i, jbar) maps e_i to -e_j and e_j to -e_i.

use crate::cyclo::Cyclo;
use crate::error::{Error, Result};
use crate::linalg::CycloMatrix;
use crate::matgroup::MatrixGroup;

pub fn perm_matrix(n: usize, cycles: &[&[usize]]) -> CycloMatrix {
    let mut img: Vec<usize> = (0..n).collect();
    for c in cycles {
        for w in 0..c.len() {
            img[c[w]] = c[(w + 1) % c.len()];
        }
    }
    CycloMatrix::from_fn(n, n, |i, j| if img[j] == i { Cyclo::one() } else { Cyclo::zero() })
}

pub fn sign_matrix(n: usize, flips: &[usize]) -> CycloMatrix {
    CycloMatrix::from_fn(n, n, |i, j| {
        if i != j {
            Cyclo::zero()
        } else if flips.contains(&i) {
            Cyclo::from_int(-1)
        } else {
            Cyclo::one()
        }
    })
}

/// Product of (i, jbar) factors: e_i -> -e_j, e_j -> -e_i on each pair.
pub fn ibar_matrix(n: usize, pairs: &[(usize, usize)]) -> CycloMatrix {
    let mut m = CycloMatrix::identity(n);
    for &(i, j) in pairs {
        m.set(i, i, Cyclo::zero());
        m.set(j, j, Cyclo::zero());
        m.set(j, i, Cyclo::from_int(-1));
        m.set(i, j, Cyclo::from_int(-1));
    }
    m
}

/// Generators of H_n in S_n for n = 5..8, one-indexed as in the tables:
/// g1 = (1,2)(3,4), g2 = (1,5)(2,6), g3 = (1,3)(5,7), g4 = (1,2)(7,8).
pub fn h_perm_generators(n: usize) -> Result<Vec<CycloMatrix>> {
    let gens: Vec<Vec<Vec<usize>>> = match n {
        5 => vec![vec![vec![0, 1], vec![2, 3]], vec![vec![1, 2], vec![3, 4]]],
        6 => vec![
            vec![vec![0, 1], vec![2, 3]],
            vec![vec![0, 4], vec![1, 2]],
            vec![vec![0, 5], vec![1, 3]],
        ],
        7 => vec![
            vec![vec![0, 1], vec![2, 3]],
            vec![vec![0, 4], vec![1, 5]],
            vec![vec![0, 2], vec![4, 6]],
        ],
        8 => vec![
            vec![vec![0, 1], vec![2, 3]],
            vec![vec![0, 4], vec![1, 5]],
            vec![vec![0, 2], vec![4, 6]],
            vec![vec![0, 1], vec![6, 7]],
        ],
        _ => return Err(Error::InvalidConstruction(format!("H_n is defined for n = 5..8, got {n}"))),
    };
    Ok(gens
        .iter()
        .map(|cycles| {
            let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
            perm_matrix(n, &refs)
        })
        .collect())
}

pub fn h_order(n: usize) -> u128 {
    match n {
        5 => 10,
        6 => 60,
        7 => 168,
        8 => 1344,
        _ => unreachable!(),
    }
}

/// The permutation group H_n itself as n x n matrices.
pub fn h_group(n: usize) -> Result<MatrixGroup> {
    let gens = h_perm_generators(n)?;
    Ok(MatrixGroup::new(n, gens, Some(format!("H{n}")))?.with_expected_order(h_order(n)))
}

/// D(n): all coordinate sign changes, order 2^n.
pub fn d_full(n: usize) -> Result<MatrixGroup> {
    let gens: Vec<CycloMatrix> = (0..n).map(|i| sign_matrix(n, &[i])).collect();
    Ok(MatrixGroup::new(n, gens, Some(format!("D({n})")))?
        .with_expected_order(1u128 << n))
}

/// D+(n): even sign changes, order 2^(n-1).
pub fn d_plus(n: usize) -> Result<MatrixGroup> {
    if n < 2 {
        return Ok(MatrixGroup::trivial(n).with_name("D+(1)"));
    }
    let gens: Vec<CycloMatrix> = (1..n).map(|i| sign_matrix(n, &[0, i])).collect();
    Ok(MatrixGroup::new(n, gens, Some(format!("D+({n})")))?
        .with_expected_order(1u128 << (n - 1)))
}

fn alt_generators(n: usize) -> Vec<CycloMatrix> {
    // 3-cycles (1,2,i) generate Alt_n
    (2..n).map(|i| perm_matrix(n, &[&[0, 1, i]])).collect()
}

/// M_n = D+(n) : H_n for n = 5..8.
pub fn m_group(n: usize) -> Result<MatrixGroup> {
    let mut gens = d_plus(n)?.generators;
    gens.extend(h_perm_generators(n)?);
    let order = (1u128 << (n - 1)) * h_order(n);
    Ok(MatrixGroup::new(n, gens, Some(format!("M{n}")))?.with_expected_order(order))
}

/// M~_n = D(n) : H_n for n = 5..8.
pub fn m_tilde(n: usize) -> Result<MatrixGroup> {
    let mut gens = d_full(n)?.generators;
    gens.extend(h_perm_generators(n)?);
    let order = (1u128 << n) * h_order(n);
    Ok(MatrixGroup::new(n, gens, Some(format!("M~{n}")))?.with_expected_order(order))
}

/// M~(D_n) = D(n) : Alt_n.
pub fn m_tilde_d(n: usize) -> Result<MatrixGroup> {
    if n < 3 {
        return Err(Error::InvalidConstruction("M~D(n) needs n >= 3".into()));
    }
    let mut gens = d_full(n)?.generators;
    gens.extend(alt_generators(n));
    let fact: u128 = (1..=n as u128).product();
    Ok(MatrixGroup::new(n, gens, Some(format!("M~D({n})")))?
        .with_expected_order((1u128 << (n - 1)) * fact))
}

/// M7p = <g1, g2, g3, g5> in SO(7), g5 = (1,2bar)(3,4bar).
pub fn m7p() -> Result<MatrixGroup> {
    let mut gens = h_perm_generators(7)?;
    gens.push(ibar_matrix(7, &[(0, 1), (2, 3)]));
    Ok(MatrixGroup::new(7, gens, Some("M7p".into()))?.with_expected_order(1344))
}

/// M8p = <g1, g2, g3, g4, g5> in SO(8).
pub fn m8p() -> Result<MatrixGroup> {
    let mut gens = h_perm_generators(8)?;
    gens.push(ibar_matrix(8, &[(0, 1), (2, 3)]));
    Ok(MatrixGroup::new(8, gens, Some("M8p".into()))?.with_expected_order(21504))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h_group_orders() {
        for (n, o) in [(5usize, 10u128), (6, 60), (7, 168), (8, 1344)] {
            assert_eq!(h_group(n).unwrap().order().unwrap(), o);
        }
    }

    #[test]
    fn diagonal_group_orders() {
        assert_eq!(d_full(5).unwrap().order().unwrap(), 32);
        assert_eq!(d_plus(5).unwrap().order().unwrap(), 16);
        assert_eq!(d_plus(3).unwrap().order().unwrap(), 4);
    }

    #[test]
    fn m_group_orders() {
        assert_eq!(m_group(5).unwrap().order().unwrap(), 160);
        assert_eq!(m_tilde(5).unwrap().order().unwrap(), 320);
        assert_eq!(m7p().unwrap().order().unwrap(), 1344);
    }

    #[test]
    fn g5_is_an_order_two_rotation() {
        let g5 = ibar_matrix(7, &[(0, 1), (2, 3)]);
        assert!(g5.is_orthogonal());
        assert!(g5.mul(&g5).is_identity());
        assert_eq!(g5.fixed_dim(), 5);
    }

    #[test]
    fn m_tilde_d3_order() {
        assert_eq!(m_tilde_d(3).unwrap().order().unwrap(), 24);
    }
}
