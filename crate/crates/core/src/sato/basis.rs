//! The monomial basis `X̄_i, 2X̄_iX̄_j, 4X̄_iX̄_jX̄_k` of the image of `β` and
//! coordinates with respect to it.

use serde::{Deserialize, Serialize};

use super::{basis_class, cbar, QuadraticForm, Z8Function};
use crate::error::{Error, Result};
use crate::fflinalg::{z8_combine, z8_order_log2, z8_solve_membership, z8_span_order_log2, Z8Vector};
use crate::functors::{subsets, BasisLabel};

/// A product `2^{d-1} X̄_{i_1} ⋯ X̄_{i_d}` of degree `d` in `1..=3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial {
    /// Sorted variable indices, 0-based.
    pub vars: Vec<usize>,
}

impl Monomial {
    /// The scale `2^{d-1}`.
    pub fn scale(&self) -> u8 {
        1 << (self.vars.len() - 1)
    }

    /// Basis label.
    pub fn label(&self) -> BasisLabel {
        BasisLabel::Monomial { scale: self.scale(), vars: self.vars.clone() }
    }

    /// The function as a pointwise product.
    pub fn function(&self, q: &QuadraticForm) -> Result<Z8Function> {
        let mut f = Z8Function::constant(q.genus(), self.scale())?;
        for &v in &self.vars {
            f = f.mul(&cbar(q, basis_class(v))?);
        }
        Ok(f)
    }
}

/// The monomials in degree-then-lexicographic order.
pub fn monomial_basis(g: usize) -> Vec<Monomial> {
    (1..=3).flat_map(|d| subsets(2 * g, d)).map(|vars| Monomial { vars }).collect()
}

/// Classes `X_l`, `X_l + X_k`, `X_a + X_b + X_c` where the proof evaluates.
fn evaluation_points(g: usize) -> Vec<u32> {
    monomial_basis(g).iter().map(|m| m.vars.iter().fold(0, |acc, &i| acc | basis_class(i))).collect()
}

fn restrict(f: &Z8Function, points: &[u32]) -> Z8Vector {
    Z8Vector(points.iter().map(|&x| f.at(x)).collect())
}

/// Outcome of the independence check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatoBasisReport {
    /// True when the only relations are the annihilator ones.
    pub holds: bool,
    /// Numbers of summands of order 8, 4 and 2.
    pub exponents: (usize, usize, usize),
    /// Index of the first candidate found dependent, if any.
    pub first_relation: Option<usize>,
}

/// Checks that a candidate family generates a direct sum of cyclic groups
/// of the candidates' orders, evaluating only on the proof's points.
pub fn verify_sato_candidates(g: usize, q: &QuadraticForm, candidates: &[Monomial]) -> Result<SatoBasisReport> {
    let points = evaluation_points(g);
    let mut restricted = Vec::with_capacity(candidates.len());
    let mut exponents = (0, 0, 0);
    let mut first_relation = None;
    let mut total_log = 0;
    for (j, m) in candidates.iter().enumerate() {
        let full = m.function(q)?;
        let r = restrict(&full, &points);
        let ord = z8_order_log2(&Z8Vector(full.values().to_vec()));
        if z8_order_log2(&r) != ord {
            return Err(Error::Internal("evaluation points miss part of a monomial's order".into()));
        }
        match ord {
            3 => exponents.0 += 1,
            2 => exponents.1 += 1,
            1 => exponents.2 += 1,
            _ => {}
        }
        total_log += ord;
        if first_relation.is_none() {
            let half = Z8Vector(r.0.iter().map(|&x| x.wrapping_mul(1 << (ord.max(1) - 1)) & 7).collect());
            if ord == 0 || z8_solve_membership(&restricted, &half)?.is_some() {
                first_relation = Some(j);
            }
        }
        restricted.push(r);
    }
    let span_log = if restricted.is_empty() { 0 } else { z8_span_order_log2(&restricted)? };
    let holds = first_relation.is_none() && span_log == total_log;
    Ok(SatoBasisReport { holds, exponents, first_relation })
}

/// Runs [`verify_sato_candidates`] on the full monomial basis.
pub fn verify_sato_basis(g: usize, q: &QuadraticForm) -> Result<SatoBasisReport> {
    verify_sato_candidates(g, q, &monomial_basis(g))
}

/// Exact coordinates of `f` in the monomial basis: residues mod 8, 4 and 2
/// by degree. Errors when `f` is not in the span.
pub fn w_coordinates(f: &Z8Function, q: &QuadraticForm) -> Result<Vec<u8>> {
    let g = q.genus();
    if f.genus() != g {
        return Err(Error::Dimension(format!("function of genus {} with form of genus {g}", f.genus())));
    }
    let basis = monomial_basis(g);
    let points = evaluation_points(g);
    let fulls = basis.iter().map(|m| m.function(q).map(|h| Z8Vector(h.values().to_vec()))).collect::<Result<Vec<_>>>()?;
    let restricted: Vec<Z8Vector> = fulls.iter().map(|v| Z8Vector(points.iter().map(|&x| v.0[x as usize]).collect())).collect();
    let coeffs = z8_solve_membership(&restricted, &restrict(f, &points))?
        .ok_or_else(|| Error::NotMember("function is not in the monomial span on the evaluation points".into()))?;
    if z8_combine(&fulls, &coeffs).0 != f.values() {
        return Err(Error::NotMember("function agrees with the monomial span only on the evaluation points".into()));
    }
    Ok(basis.iter().zip(coeffs).map(|(m, c)| c % (8 >> (m.vars.len() - 1))).collect())
}

/// Coordinates of `f ⊗ 1` in `W ⊗ F_2`.
pub fn w_mod2_coordinates(f: &Z8Function, q: &QuadraticForm) -> Result<Vec<u8>> {
    Ok(w_coordinates(f, q)?.into_iter().map(|c| c & 1).collect())
}

/// Debug dump of the monomial basis, one `<label>: <hex values>` per line.
pub fn dump_lines(g: usize, q: &QuadraticForm) -> Result<Vec<String>> {
    monomial_basis(g).iter().map(|m| Ok(format!("{}: {}", m.label(), m.function(q)?.to_hex()))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(monomial_basis(1).len(), 3);
        assert_eq!(monomial_basis(3).len(), 41);
    }

    #[test]
    fn pointwise_value() {
        let q = QuadraticForm::zero(1).unwrap();
        let m = Monomial { vars: vec![0, 1] };
        assert_eq!(m.function(&q).unwrap().at(0b11), 2);
    }

    #[test]
    fn basis_structure() {
        for (g, e) in [(2usize, (4usize, 6usize, 4usize)), (3, (6, 15, 20))] {
            let r = verify_sato_basis(g, &QuadraticForm::zero(g).unwrap()).unwrap();
            assert!(r.holds);
            assert_eq!(r.exponents, e);
        }
        let r = verify_sato_basis(2, &QuadraticForm::new(2, 0b0110).unwrap()).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn duplicate_breaks_independence() {
        let q = QuadraticForm::zero(2).unwrap();
        let mut c = monomial_basis(2);
        c.push(c[5].clone());
        let r = verify_sato_candidates(2, &q, &c).unwrap();
        assert!(!r.holds);
        assert_eq!(r.first_relation, Some(c.len() - 1));
    }

    #[test]
    fn coordinates_of_monomials_are_unit_vectors() {
        let q = QuadraticForm::new(2, 0b1001).unwrap();
        let basis = monomial_basis(2);
        for (i, m) in basis.iter().enumerate() {
            let c = w_coordinates(&m.function(&q).unwrap(), &q).unwrap();
            let mut e = vec![0u8; basis.len()];
            e[i] = 1;
            assert_eq!(c, e);
        }
    }

    #[test]
    fn constant_is_not_a_member() {
        let q = QuadraticForm::zero(2).unwrap();
        assert!(w_coordinates(&Z8Function::constant(2, 1).unwrap(), &q).is_err());
    }

    #[test]
    fn dump_format() {
        let lines = dump_lines(1, &QuadraticForm::zero(1).unwrap()).unwrap();
        assert_eq!(lines[0], "X1: 0011");
        assert_eq!(lines[2], "2X1X2: 0002");
    }
}
