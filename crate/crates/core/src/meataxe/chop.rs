//! Composition series by random group-algebra elements, with Norton's
//! irreducibility test and replayable certificates.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::spin::spin;
use crate::error::{Error, Result};
use crate::fflinalg::{factor_squarefree, field, FFMatrix, FFPoly};
use crate::functors::{sub_quotient, Submodule};
use crate::groups::Representation;

/// Largest characteristic-polynomial factor degree evaluated at `z`.
const MAX_FACTOR_DEGREE: usize = 24;

/// Largest kernel, counted as `p^k`, searched exhaustively.
const MAX_KERNEL_SIZE: u64 = 4096;

/// Random elements tried before the exhaustive kernel search kicks in.
const ROUNDS_BEFORE_EXHAUSTIVE: usize = 8;

/// A group-algebra element `Σ c_i w_i` with words in the generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraElement {
    /// Coefficient and generator-index word of each term.
    pub terms: Vec<(u8, Vec<usize>)>,
}

impl AlgebraElement {
    /// Draws 3 to 6 words of length at most 4 with nonzero coefficients.
    pub fn random(rng: &mut impl Rng, generators: usize, p: u8) -> Self {
        let n = rng.gen_range(3..=6);
        let terms = (0..n)
            .map(|_| {
                let len = rng.gen_range(1..=4);
                let word = (0..len).map(|_| rng.gen_range(0..generators)).collect();
                (rng.gen_range(1..p), word)
            })
            .collect();
        AlgebraElement { terms }
    }

    /// The matrix of the element in a representation.
    pub fn matrix(&self, rep: &Representation) -> Result<FFMatrix> {
        let d = rep.dim();
        let p = rep.p();
        let mut acc = FFMatrix::zeros(p, d, d);
        for (c, word) in &self.terms {
            let mut m = FFMatrix::identity(p, d);
            for &i in word {
                let g = rep.generators().get(i).ok_or_else(|| Error::InvalidArgument(format!("generator index {i} out of range")))?;
                m = m.mul(&g.matrix)?;
            }
            acc = acc.add(&m.scale(*c))?;
        }
        Ok(acc)
    }
}

/// Why a factor is irreducible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IrreducibilityProof {
    /// One-dimensional modules are simple.
    Dimension1,
    /// Every nonzero vector of a module of dimension 2 spins to the whole.
    Exhaustive,
    /// Norton's criterion: every nonzero vector of `ker f(z)` spins to the
    /// module and `dual_seed ∈ ker f(z)^T` spins to the transposed module.
    Norton {
        /// The element `z`.
        element: AlgebraElement,
        /// The irreducible factor `f`.
        factor: FFPoly,
        /// A nonzero kernel vector; when `exhaustive_kernel` is false the
        /// nullity equals `deg f` and this vector suffices.
        seed: Vec<u8>,
        /// Whether every kernel vector was spun.
        exhaustive_kernel: bool,
        /// A nonzero vector of the transposed kernel.
        dual_seed: Vec<u8>,
    },
}

/// Certificate tree of a composition series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Certificate {
    /// A composition factor.
    Irreducible {
        /// Dimension.
        dim: usize,
        /// Proof.
        proof: IrreducibilityProof,
    },
    /// A proper submodule found by spinning.
    Split {
        /// Dimension of the module split.
        dim: usize,
        /// The element `z`, absent for the small exhaustive search.
        element: Option<AlgebraElement>,
        /// The factor `f` whose kernel held the seed.
        factor: Option<FFPoly>,
        /// Seed vector.
        seed: Vec<u8>,
        /// True when the seed spins in the transposed module and the
        /// submodule is the annihilator of the result.
        dual: bool,
        /// Dimension of the submodule.
        sub_dim: usize,
        /// Certificate of the submodule.
        sub: Box<Certificate>,
        /// Certificate of the quotient.
        quotient: Box<Certificate>,
    },
}

impl Certificate {
    /// Factor dimensions, bottom to top.
    pub fn factor_dims(&self) -> Vec<usize> {
        match self {
            Certificate::Irreducible { dim, .. } => vec![*dim],
            Certificate::Split { sub, quotient, .. } => {
                let mut v = sub.factor_dims();
                v.extend(quotient.factor_dims());
                v
            }
        }
    }

    /// A one-line-per-node text trail.
    pub fn trail(&self) -> String {
        let mut out = String::new();
        self.write_trail(0, &mut out);
        out
    }

    fn write_trail(&self, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth);
        match self {
            Certificate::Irreducible { dim, proof } => {
                let how = match proof {
                    IrreducibilityProof::Dimension1 => "dimension 1".to_string(),
                    IrreducibilityProof::Exhaustive => "exhaustive spin".to_string(),
                    IrreducibilityProof::Norton { factor, exhaustive_kernel, element, .. } => {
                        format!("norton f={factor} words={} exhaustive_kernel={exhaustive_kernel}", element.terms.len())
                    }
                };
                out.push_str(&format!("{pad}irreducible dim={dim} {how}\n"));
            }
            Certificate::Split { dim, factor, dual, sub_dim, sub, quotient, .. } => {
                let f = factor.as_ref().map_or("none".to_string(), |f| f.to_string());
                out.push_str(&format!("{pad}split dim={dim} sub={sub_dim} f={f} dual={dual}\n"));
                sub.write_trail(depth + 1, out);
                quotient.write_trail(depth + 1, out);
            }
        }
    }
}

/// Options for [`chop`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChopOptions {
    /// Random elements tried per module piece before giving up.
    pub round_limit: usize,
}

impl Default for ChopOptions {
    fn default() -> Self {
        ChopOptions { round_limit: 200 }
    }
}

/// A composition series: factors bottom to top with their certificate.
#[derive(Clone, Debug)]
pub struct CompositionSeries {
    /// Dimension of the chopped module.
    pub parent_dim: usize,
    /// Composition factors in order.
    pub factors: Vec<Representation>,
    /// Certificate tree.
    pub certificate: Certificate,
}

impl CompositionSeries {
    /// Sorted factor dimensions.
    pub fn dim_multiset(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.factors.iter().map(|f| f.dim()).collect();
        d.sort_unstable();
        d
    }
}

fn transposed(rep: &Representation) -> Representation {
    rep.with_matrices(rep.dim(), rep.generators().iter().map(|g| g.matrix.transpose()).collect())
}

/// Annihilator `{v : v · u = 0 for u ∈ s}` of a subspace.
fn annihilator(s: &Submodule) -> Result<Submodule> {
    let k = s.basis().kernel_basis();
    Submodule::from_vectors(s.p(), s.ambient_dim(), &k)
}

fn is_proper(s: &Submodule, d: usize) -> bool {
    s.dim() > 0 && s.dim() < d
}

/// Nonzero vectors of the span of `basis`, one per line.
fn projective_points(basis: &[Vec<u8>], p: u8) -> Vec<Vec<u8>> {
    let k = basis.len();
    let n = basis.first().map_or(0, |b| b.len());
    let mut out = Vec::new();
    let total = (p as u64).pow(k as u32);
    for code in 1..total {
        let mut coeffs = Vec::with_capacity(k);
        let mut c = code;
        for _ in 0..k {
            coeffs.push((c % p as u64) as u8);
            c /= p as u64;
        }
        // keep representatives whose last nonzero coefficient is 1
        if coeffs.iter().rev().find(|&&x| x != 0) != Some(&1) {
            continue;
        }
        let mut v = vec![0u8; n];
        for (b, &a) in basis.iter().zip(&coeffs) {
            if a == 0 {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(b) {
                *x = field::add(*x, field::mul(a, y, p), p);
            }
        }
        out.push(v);
    }
    out
}

enum Attempt {
    Split { element: Option<AlgebraElement>, factor: Option<FFPoly>, seed: Vec<u8>, dual: bool, sub: Submodule },
    Irreducible(IrreducibilityProof),
}

fn attempt_small(rep: &Representation) -> Result<Attempt> {
    let d = rep.dim();
    let units: Vec<Vec<u8>> = (0..d)
        .map(|i| {
            let mut v = vec![0u8; d];
            v[i] = 1;
            v
        })
        .collect();
    for v in projective_points(&units, rep.p()) {
        let s = spin(rep, std::slice::from_ref(&v))?;
        if is_proper(&s, d) {
            return Ok(Attempt::Split { element: None, factor: None, seed: v, dual: false, sub: s });
        }
    }
    Ok(Attempt::Irreducible(IrreducibilityProof::Exhaustive))
}

fn attempt(rep: &Representation, rng: &mut ChaCha8Rng, round: usize) -> Result<Option<Attempt>> {
    let d = rep.dim();
    let p = rep.p();
    let element = AlgebraElement::random(rng, rep.generators().len(), p);
    let z = element.matrix(rep)?;
    let cp = z.char_poly()?;
    let factors = factor_squarefree(&cp, rng.gen())?;
    let dual_rep = transposed(rep);
    for (f, _) in factors {
        let deg = f.degree().unwrap_or(0);
        if deg > MAX_FACTOR_DEGREE {
            continue;
        }
        let fz = z.eval_poly(&f)?;
        let kernel = fz.left_kernel();
        let Some(seed) = kernel.first().cloned() else { continue };
        let s = spin(rep, std::slice::from_ref(&seed))?;
        if is_proper(&s, d) {
            return Ok(Some(Attempt::Split { element: Some(element), factor: Some(f), seed, dual: false, sub: s }));
        }
        let exhaustive = kernel.len() > deg;
        if exhaustive {
            let size = (p as u64).checked_pow(kernel.len() as u32).unwrap_or(u64::MAX);
            if round < ROUNDS_BEFORE_EXHAUSTIVE || size > MAX_KERNEL_SIZE {
                continue;
            }
            for v in projective_points(&kernel, p) {
                let s = spin(rep, std::slice::from_ref(&v))?;
                if is_proper(&s, d) {
                    return Ok(Some(Attempt::Split { element: Some(element), factor: Some(f), seed: v, dual: false, sub: s }));
                }
            }
        }
        let dual_seed = fz.kernel_basis().into_iter().next().ok_or_else(|| Error::Internal("transposed kernel is empty".into()))?;
        let t = spin(&dual_rep, std::slice::from_ref(&dual_seed))?;
        if is_proper(&t, d) {
            let sub = annihilator(&t)?;
            return Ok(Some(Attempt::Split { element: Some(element), factor: Some(f), seed: dual_seed, dual: true, sub }));
        }
        return Ok(Some(Attempt::Irreducible(IrreducibilityProof::Norton { element, factor: f, seed, exhaustive_kernel: exhaustive, dual_seed })));
    }
    Ok(None)
}

fn chop_rec(rep: &Representation, rng: &mut ChaCha8Rng, opts: &ChopOptions, factors: &mut Vec<Representation>) -> Result<Certificate> {
    let d = rep.dim();
    let found = if d == 1 {
        Attempt::Irreducible(IrreducibilityProof::Dimension1)
    } else if d == 2 {
        attempt_small(rep)?
    } else {
        let mut found = None;
        for round in 0..opts.round_limit {
            if let Some(a) = attempt(rep, rng, round)? {
                found = Some(a);
                break;
            }
        }
        found.ok_or_else(|| Error::RoundLimit { limit: opts.round_limit, dim: d, trail: format!("no certificate for a module of dimension {d}") })?
    };
    match found {
        Attempt::Irreducible(proof) => {
            factors.push(rep.clone());
            Ok(Certificate::Irreducible { dim: d, proof })
        }
        Attempt::Split { element, factor, seed, dual, sub } => {
            let (sub_rep, quot_rep) = sub_quotient(rep, &sub)?;
            let sub_cert = chop_rec(&sub_rep, rng, opts, factors)?;
            let quot_cert = chop_rec(&quot_rep, rng, opts, factors)?;
            Ok(Certificate::Split { dim: d, element, factor, seed, dual, sub_dim: sub.dim(), sub: Box::new(sub_cert), quotient: Box::new(quot_cert) })
        }
    }
}

/// Chops a module into composition factors, deterministically in `seed`.
pub fn chop(rep: &Representation, seed: u64) -> Result<CompositionSeries> {
    chop_with(rep, seed, &ChopOptions::default())
}

/// [`chop`] with explicit options.
pub fn chop_with(rep: &Representation, seed: u64, opts: &ChopOptions) -> Result<CompositionSeries> {
    if rep.dim() == 0 {
        return Err(Error::InvalidArgument("cannot chop the zero module".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors = Vec::new();
    let certificate = chop_rec(rep, &mut rng, opts, &mut factors)?;
    Ok(CompositionSeries { parent_dim: rep.dim(), factors, certificate })
}

fn cert_err(msg: impl Into<String>) -> Error {
    Error::Certificate(msg.into())
}

fn check_kernel(z: &FFMatrix, f: &FFPoly, v: &[u8], left: bool) -> Result<FFMatrix> {
    let fz = z.eval_poly(f)?;
    let img = if left { fz.vec_mul(v) } else { fz.transpose().vec_mul(v) };
    if v.iter().all(|&x| x == 0) || img.iter().any(|&x| x != 0) {
        return Err(cert_err("seed is not a nonzero kernel vector"));
    }
    Ok(fz)
}

/// Replays a certificate on a module, re-running every recorded spin.
/// Returns the composition factors it determines.
pub fn replay(rep: &Representation, cert: &Certificate) -> Result<Vec<Representation>> {
    let mut out = Vec::new();
    replay_rec(rep, cert, &mut out)?;
    Ok(out)
}

fn replay_rec(rep: &Representation, cert: &Certificate, out: &mut Vec<Representation>) -> Result<()> {
    let d = rep.dim();
    match cert {
        Certificate::Irreducible { dim, proof } => {
            if *dim != d {
                return Err(cert_err(format!("expected dimension {dim}, found {d}")));
            }
            match proof {
                IrreducibilityProof::Dimension1 if d == 1 => {}
                IrreducibilityProof::Dimension1 => return Err(cert_err("dimension-one proof on a larger module")),
                IrreducibilityProof::Exhaustive => {
                    if d > 2 {
                        return Err(cert_err("exhaustive proof above dimension 2"));
                    }
                    if let Attempt::Split { .. } = attempt_small(rep)? {
                        return Err(cert_err("exhaustive proof fails"));
                    }
                }
                IrreducibilityProof::Norton { element, factor, seed, exhaustive_kernel, dual_seed } => {
                    let z = element.matrix(rep)?;
                    let fz = check_kernel(&z, factor, seed, true)?;
                    let kernel = fz.left_kernel();
                    let deg = factor.degree().unwrap_or(0);
                    let vectors = if kernel.len() == deg {
                        vec![seed.clone()]
                    } else if *exhaustive_kernel {
                        projective_points(&kernel, rep.p())
                    } else {
                        return Err(cert_err("nullity exceeds the factor degree"));
                    };
                    for v in vectors {
                        if spin(rep, &[v])?.dim() != d {
                            return Err(cert_err("kernel vector spins to a proper submodule"));
                        }
                    }
                    check_kernel(&z, factor, dual_seed, false)?;
                    if spin(&transposed(rep), std::slice::from_ref(dual_seed))?.dim() != d {
                        return Err(cert_err("dual seed spins to a proper submodule"));
                    }
                }
            }
            out.push(rep.clone());
        }
        Certificate::Split { dim, element, factor, seed, dual, sub_dim, sub, quotient } => {
            if *dim != d {
                return Err(cert_err(format!("expected dimension {dim}, found {d}")));
            }
            if let (Some(e), Some(f)) = (element, factor) {
                check_kernel(&e.matrix(rep)?, f, seed, !dual)?;
            }
            let s = if *dual { annihilator(&spin(&transposed(rep), std::slice::from_ref(seed))?)? } else { spin(rep, std::slice::from_ref(seed))? };
            if s.dim() != *sub_dim || !is_proper(&s, d) {
                return Err(cert_err(format!("seed spins to dimension {} instead of {sub_dim}", s.dim())));
            }
            let (a, b) = sub_quotient(rep, &s)?;
            replay_rec(&a, sub, out)?;
            replay_rec(&b, quotient, out)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functors::{exterior_power, LabeledModule};
    use crate::groups::SymplecticSpace;

    #[test]
    fn trivial_module() {
        let t = Representation::trivial(2, 1, &["a"]);
        let s = chop(&t, 1).unwrap();
        assert_eq!(s.dim_multiset(), vec![1]);
        let t = Representation::trivial(3, 3, &["a", "b"]);
        assert_eq!(chop(&t, 1).unwrap().dim_multiset(), vec![1, 1, 1]);
    }

    #[test]
    fn wedge3_genus3() {
        let v = LabeledModule::symplectic(&SymplecticSpace::binary(3).unwrap()).unwrap();
        let l3 = exterior_power(&v, 3).unwrap();
        let s = chop(&l3.rep, 11).unwrap();
        assert_eq!(s.dim_multiset(), vec![6, 6, 8]);
        let replayed = replay(&l3.rep, &s.certificate).unwrap();
        assert_eq!(replayed, s.factors);
    }

    #[test]
    fn tautological_irreducible_odd_prime() {
        let v = LabeledModule::symplectic(&SymplecticSpace::new(2, 3).unwrap()).unwrap();
        let s = chop(&v.rep, 3).unwrap();
        assert_eq!(s.dim_multiset(), vec![4]);
        assert!(matches!(s.certificate, Certificate::Irreducible { proof: IrreducibilityProof::Norton { .. }, .. }));
    }

    #[test]
    fn certificate_roundtrip_and_tamper() {
        let v = LabeledModule::symplectic(&SymplecticSpace::binary(2).unwrap()).unwrap();
        let l2 = exterior_power(&v, 2).unwrap();
        let s = chop(&l2.rep, 5).unwrap();
        let json = serde_json::to_string(&s.certificate).unwrap();
        let back: Certificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s.certificate);
        assert!(replay(&l2.rep, &back).is_ok());
        let mut bad = back.clone();
        if let Certificate::Split { sub_dim, .. } = &mut bad {
            *sub_dim += 1;
        } else if let Certificate::Irreducible { dim, .. } = &mut bad {
            *dim += 1;
        }
        assert!(replay(&l2.rep, &bad).is_err());
    }

    #[test]
    fn round_limit_error() {
        let v = LabeledModule::symplectic(&SymplecticSpace::binary(3).unwrap()).unwrap();
        let l3 = exterior_power(&v, 3).unwrap();
        let r = chop_with(&l3.rep, 1, &ChopOptions { round_limit: 0 });
        assert!(matches!(r, Err(Error::RoundLimit { .. })));
    }
}
