//! Twisted diagonal subgroups Delta_phi(W x W) = {(g, phi(g))} for an
//! automorphism phi of W that maps reflections onto reflections. phi is
//! given as the identity, an entrywise Galois twist, or explicit generator
//! images (validated against the Coxeter relations).

use crate::error::{Error, Result};
use crate::linalg::CycloMatrix;
use crate::matgroup::MatrixGroup;

#[derive(Clone, Debug)]
pub enum AutoSpec {
    Id,
    Galois(i64),
    Images(Vec<CycloMatrix>),
}

fn product_order(a: &CycloMatrix, b: &CycloMatrix, bound: u32) -> Result<u32> {
    let p = a.mul(b);
    let mut acc = p.clone();
    for k in 1..=bound {
        if acc.is_identity() {
            return Ok(k);
        }
        acc = acc.mul(&p);
    }
    Err(Error::InvalidConstruction("element order exceeds bound".into()))
}

/// Delta_phi(W x W) acting block-diagonally on the doubled space.
pub fn delta_twisted(w: &MatrixGroup, phi: &AutoSpec) -> Result<MatrixGroup> {
    let images: Vec<CycloMatrix> = match phi {
        AutoSpec::Id => w.generators.clone(),
        AutoSpec::Galois(k) => {
            let mut out = Vec::new();
            for g in &w.generators {
                out.push(g.galois(*k)?);
            }
            out
        }
        AutoSpec::Images(list) => {
            if list.len() != w.generators.len() {
                return Err(Error::InvalidConstruction(
                    "automorphism needs one image per generator".into(),
                ));
            }
            list.clone()
        }
    };
    // images must be reflections in W satisfying the same Coxeter relations
    for (i, img) in images.iter().enumerate() {
        if !img.is_orthogonal() || img.fixed_dim() != w.dim - 1 {
            return Err(Error::InvalidConstruction(format!(
                "phi image {i} is not a reflection"
            )));
        }
        if !matches!(phi, AutoSpec::Galois(_)) && !w.contains(img)? {
            return Err(Error::InvalidConstruction(format!("phi image {i} is not in W")));
        }
    }
    if let AutoSpec::Galois(_) = phi {
        // a Galois twist conjugates the whole group into the twisted copy;
        // images are automatically reflections, checked above
    }
    for i in 0..images.len() {
        for j in i..images.len() {
            let m1 = product_order(&w.generators[i], &w.generators[j], 10_000)?;
            let m2 = product_order(&images[i], &images[j], 10_000)?;
            if m1 != m2 {
                return Err(Error::InvalidConstruction(format!(
                    "phi breaks the Coxeter relation between generators {i} and {j}"
                )));
            }
        }
    }
    let gens: Vec<CycloMatrix> = w
        .generators
        .iter()
        .zip(&images)
        .map(|(g, h)| CycloMatrix::block_diag(&[g.clone(), h.clone()]))
        .collect();
    let name = match phi {
        AutoSpec::Id => format!("Delta({})", w.name.as_deref().unwrap_or("W")),
        AutoSpec::Galois(k) => {
            format!("Delta_galois{k}({})", w.name.as_deref().unwrap_or("W"))
        }
        AutoSpec::Images(_) => format!("Delta_phi({})", w.name.as_deref().unwrap_or("W")),
    };
    let mut out = MatrixGroup::new(2 * w.dim, gens, Some(name))?;
    out.expected_order = w.expected_order;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::coxeter::{coxeter_group, CoxType};

    #[test]
    fn delta_id_of_a1_is_plus_minus_one() {
        // on the essential line pair this is {I2, -I2}: a rotation group of
        // order 2 (the A1 factors carry one trivial ambient direction each)
        let w = coxeter_group(&[CoxType::A(1)]).unwrap();
        let d = delta_twisted(&w.group, &AutoSpec::Id).unwrap();
        assert_eq!(d.order().unwrap(), 2);
        assert_eq!(d.essential_dim(), 2);
        let els: Vec<_> = d.elements(10).unwrap().collect();
        assert!(els.iter().any(|e| e.matrix.is_identity()));
        let rot = els.iter().find(|e| !e.matrix.is_identity()).unwrap();
        let c = crate::analysis::classify_element(&rot.matrix).unwrap();
        assert_eq!(c.kind, crate::analysis::ElementKind::Rotation);
    }

    #[test]
    fn delta_galois_of_i2_5() {
        let w = coxeter_group(&[CoxType::I2(5)]).unwrap();
        let d = delta_twisted(&w.group, &AutoSpec::Galois(3)).unwrap();
        assert_eq!(d.order().unwrap(), 10);
    }

    #[test]
    fn delta_sigma_h3_order_and_codim() {
        let w = coxeter_group(&[CoxType::H3]).unwrap();
        let d = delta_twisted(&w.group, &AutoSpec::Galois(2)).unwrap();
        assert_eq!(d.order().unwrap(), 120);
        // every non-identity element has fixed codimension >= 2
        for el in d.elements(200).unwrap() {
            if el.matrix.is_identity() {
                continue;
            }
            assert!(el.matrix.fixed_dim() <= 4);
        }
    }
}
