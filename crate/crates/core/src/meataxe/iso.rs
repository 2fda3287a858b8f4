//! Isomorphism testing of irreducible modules by standard bases, and
//! identification of composition factors against reference modules.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::chop::AlgebraElement;
use super::spin::{replay_steps, spin_words};
use crate::error::{Error, Result};
use crate::fflinalg::{factor_squarefree, field, FFMatrix};
use crate::groups::Representation;

const ISO_ROUNDS: usize = 64;
const MAX_CANDIDATES: u64 = 4096;

/// Matrices of every generator in the basis given by the rows of `basis`.
fn in_basis(rep: &Representation, basis: &FFMatrix, inv: &FFMatrix) -> Result<Vec<FFMatrix>> {
    rep.generators().iter().map(|g| basis.mul(&g.matrix)?.mul(inv)).collect()
}

fn compatible(a: &Representation, b: &Representation) -> bool {
    a.p() == b.p() && a.dim() == b.dim() && a.generators().len() == b.generators().len()
}

/// Decides whether two irreducible modules on the same generators are
/// isomorphic. Returns an intertwining matrix (rows: images of the basis
/// of `a`) when they are.
pub fn isomorphism(a: &Representation, b: &Representation, seed: u64) -> Result<Option<FFMatrix>> {
    if !compatible(a, b) {
        return Ok(None);
    }
    let d = a.dim();
    let p = a.p();
    if d == 0 {
        return Ok(Some(FFMatrix::zeros(p, 0, 0)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ISO_ROUNDS {
        let z = AlgebraElement::random(&mut rng, a.generators().len(), p);
        let za = z.matrix(a)?;
        let zb = z.matrix(b)?;
        let cp = za.char_poly()?;
        if cp != zb.char_poly()? {
            return Ok(None);
        }
        for (f, _) in factor_squarefree(&cp, seed)? {
            let deg = f.degree().unwrap_or(0);
            if (p as u64).checked_pow(deg as u32).is_none_or(|s| s > MAX_CANDIDATES) {
                continue;
            }
            let ka = za.eval_poly(&f)?.left_kernel();
            if ka.len() != deg {
                continue;
            }
            let kb = zb.eval_poly(&f)?.left_kernel();
            if kb.len() != deg {
                return Ok(None);
            }
            let spun = spin_words(a, &[ka[0].clone()])?;
            if spun.vectors.rows() != d {
                return Err(Error::InvalidArgument("isomorphism test needs an irreducible module".into()));
            }
            let pa = spun.vectors;
            let pa_inv = pa.inverse().ok_or_else(|| Error::Internal("standard basis is singular".into()))?;
            let target = in_basis(a, &pa, &pa_inv)?;
            for code in 1..(p as u64).pow(deg as u32) {
                let mut u = vec![0u8; d];
                let mut c = code;
                for kv in &kb {
                    let coef = (c % p as u64) as u8;
                    c /= p as u64;
                    for (x, &y) in u.iter_mut().zip(kv) {
                        *x = field::add(*x, field::mul(coef, y, p), p);
                    }
                }
                let pb = replay_steps(b, &u, &spun.steps)?;
                let Some(pb_inv) = pb.inverse() else { continue };
                if in_basis(b, &pb, &pb_inv)? == target {
                    return Ok(Some(pa_inv.mul(&pb)?));
                }
            }
            return Ok(None);
        }
    }
    Err(Error::RoundLimit { limit: ISO_ROUNDS, dim: d, trail: "no element with a small kernel of minimal nullity".into() })
}

/// True when the irreducible modules `a` and `b` are isomorphic.
pub fn is_isomorphic(a: &Representation, b: &Representation, seed: u64) -> Result<bool> {
    Ok(isomorphism(a, b, seed)?.is_some())
}

/// Label of the reference module isomorphic to `factor`, filtered by
/// dimension and confirmed by the isomorphism test; `None` if unmatched.
pub fn identify_factor<'a>(factor: &Representation, catalog: &'a [(String, Representation)], seed: u64) -> Result<Option<&'a str>> {
    for (label, reference) in catalog {
        if reference.dim() == factor.dim() && is_isomorphic(reference, factor, seed)? {
            return Ok(Some(label));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functors::{exterior_power, LabeledModule};
    use crate::groups::{burkhardt_generators, SymplecticSpace};

    fn permuted(rep: &Representation, perm: &[usize]) -> (Representation, FFMatrix) {
        let n = rep.dim();
        let pm = FFMatrix::from_fn(rep.p(), n, n, |i, j| (perm[i] == j) as i64);
        let inv = pm.inverse().unwrap();
        let mats = rep.generators().iter().map(|g| inv.mul(&g.matrix).unwrap().mul(&pm).unwrap()).collect();
        (rep.with_matrices(n, mats), pm)
    }

    #[test]
    fn permuted_copy_is_isomorphic() {
        for (g, p) in [(4usize, 2u8), (2, 5)] {
            let rep = burkhardt_generators(&SymplecticSpace::new(g, p).unwrap()).unwrap();
            let perm: Vec<usize> = (0..2 * g).rev().collect();
            let (b, pm) = permuted(&rep, &perm);
            assert!(rep.intertwines(&b, &pm.inverse().unwrap()));
            let iso = isomorphism(&rep, &b, 1).unwrap().unwrap();
            assert!(rep.intertwines(&b, &iso));
        }
    }

    #[test]
    fn tautological_not_dual_wedge() {
        let v = LabeledModule::special_linear(3, 3).unwrap();
        let w2 = exterior_power(&v, 2).unwrap();
        assert!(!is_isomorphic(&v.rep, &w2.rep, 2).unwrap());
        assert!(is_isomorphic(&v.rep.dual(), &w2.rep, 2).unwrap());
    }

    #[test]
    fn identification() {
        let s = SymplecticSpace::binary(4).unwrap();
        let taut = burkhardt_generators(&s).unwrap();
        let triv = Representation::trivial(2, 1, &taut.names());
        let catalog = vec![("F".to_string(), triv.clone()), ("H1".to_string(), taut.clone())];
        assert_eq!(identify_factor(&taut, &catalog, 0).unwrap(), Some("H1"));
        assert_eq!(identify_factor(&triv, &catalog, 0).unwrap(), Some("F"));
        let other = Representation::trivial(2, 8, &taut.names());
        assert_eq!(identify_factor(&other, &catalog, 0).unwrap(), None);
    }
}
