//! End-to-end computations: build the module for a family, chop it,
//! identify every composition factor against reference sections, attach
//! highest-weight labels and compare with the expected tables.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functors::{
    contraction_matrix, epsilon_matrix, exterior_power, kappa_matrix, omega_vector, section, sl_dual_wedge2, tau_matrix, traceless_module,
    BasisLabel, LabeledModule, Submodule,
};
use crate::groups::{Representation, SymplecticSpace};
use crate::meataxe::{chop, identify_factor, replay, Certificate, CompositionSeries};
use crate::sato::{subgroup_image, w_mod2_representation, QuadraticForm, SubgroupKind, MAX_GENUS};
use crate::torelli::b3_representation;
use crate::weights::{highest_weight_section, DominantLabel};

/// Default seed for every randomized step.
pub const DEFAULT_SEED: u64 = 0x5A70;
/// Largest supported rank for the linear family.
pub const MAX_N: usize = 8;
/// Largest supported prime.
pub const MAX_P: u8 = 7;

/// Label given to a factor that matches no reference module.
pub const UNIDENTIFIED: &str = "unidentified";

/// A family of modules with a theorem table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// First homology of the level-2 mapping class group, `W ⊗ F_2`.
    ModLevel2,
    /// Torelli coinvariants `B^3`.
    Torelli,
    /// First homology of `Sp_2g(Z)[2]`, `W ⊗ F_2 / Z_g`.
    SpLevel2,
    /// The once-punctured surface, isomorphic to the bordered case.
    Punctured,
    /// The closed surface, `W ⊗ F_2` modulo the push image.
    Closed,
    /// First homology of the level-`p` congruence subgroup of `Aut(F_n)`.
    AutCongruence,
}

impl Family {
    /// Every family, in canonical order.
    pub const ALL: [Family; 6] =
        [Family::ModLevel2, Family::Torelli, Family::SpLevel2, Family::Punctured, Family::Closed, Family::AutCongruence];

    /// Command-line name.
    pub fn name(&self) -> &'static str {
        match self {
            Family::ModLevel2 => "mod-level2",
            Family::Torelli => "torelli",
            Family::SpLevel2 => "sp-level2",
            Family::Punctured => "punctured",
            Family::Closed => "closed",
            Family::AutCongruence => "aut-congruence",
        }
    }

    /// True for the families indexed by `(n, p)`.
    pub fn is_linear(&self) -> bool {
        matches!(self, Family::AutCongruence)
    }

    /// Smallest supported genus.
    pub fn min_genus(&self) -> usize {
        match self {
            Family::ModLevel2 => 2,
            _ => 3,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| Error::InvalidArgument(format!("unknown family `{s}`")))
    }
}

/// Parameters of a family member.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Params {
    /// Genus, for the surface families.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<usize>,
    /// Rank, for the linear family.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// Characteristic.
    pub p: u8,
    /// Field of computation.
    pub field: String,
}

impl Params {
    /// Surface-family parameters over `F_2`.
    pub fn genus(g: usize) -> Self {
        Params { g: Some(g), n: None, p: 2, field: "GF(2)".into() }
    }

    /// Linear-family parameters over `F_p`.
    pub fn linear(n: usize, p: u8) -> Self {
        Params { g: None, n: Some(n), p, field: format!("GF({p})") }
    }

    fn require_genus(&self, family: Family) -> Result<usize> {
        let g = self.g.ok_or_else(|| Error::InvalidArgument(format!("{family} needs a genus")))?;
        if g < family.min_genus() || g > MAX_GENUS {
            return Err(Error::InvalidArgument(format!("{family} needs genus in {}..={MAX_GENUS}, got {g}", family.min_genus())));
        }
        Ok(g)
    }

    fn require_linear(&self) -> Result<(usize, u8)> {
        let n = self.n.ok_or_else(|| Error::InvalidArgument("aut-congruence needs n".into()))?;
        if !(3..=MAX_N).contains(&n) {
            return Err(Error::InvalidArgument(format!("n must be in 3..={MAX_N}, got {n}")));
        }
        if !matches!(self.p, 2 | 3 | 5 | 7) {
            return Err(Error::InvalidArgument(format!("p must be a prime at most {MAX_P}, got {}", self.p)));
        }
        Ok((n, self.p))
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.g, self.n) {
            (Some(g), _) => write!(f, "g={g}"),
            (_, Some(n)) => write!(f, "n={n} p={}", self.p),
            _ => write!(f, "p={}", self.p),
        }
    }
}

/// One row of a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorEntry {
    /// Name of the matching reference module.
    pub label: String,
    /// Dimension over the prime field.
    pub dimension: usize,
    /// Number of occurrences.
    pub multiplicity: u32,
    /// Highest-weight label.
    pub weight: String,
}

/// Outcome of the comparison with the expected table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verification {
    /// Factors agree with the expected table.
    Match,
    /// Factors disagree with the expected table.
    Mismatch,
    /// No table covers these parameters.
    NoExpectation,
}

/// Composition factors of a family member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorReport {
    /// Family.
    pub family: Family,
    /// Parameters.
    pub params: Params,
    /// Total dimension of the chopped modules.
    pub source_dimension: usize,
    /// Factors sorted by dimension, then label.
    pub factors: Vec<FactorEntry>,
    /// Comparison with the expected table.
    pub verified: Verification,
    /// Seed used by chop and identification.
    pub seed: u64,
}

impl FactorReport {
    /// `Σ dimension · multiplicity`.
    pub fn total_dimension(&self) -> usize {
        self.factors.iter().map(|f| f.dimension * f.multiplicity as usize).sum()
    }

    /// Multiplicity of each reference label.
    pub fn label_multiplicities(&self) -> BTreeMap<String, u32> {
        let mut m = BTreeMap::new();
        for f in &self.factors {
            *m.entry(f.label.clone()).or_insert(0) += f.multiplicity;
        }
        m
    }

    /// Multiplicity of each weight label.
    pub fn weight_multiplicities(&self) -> BTreeMap<String, u32> {
        let mut m = BTreeMap::new();
        for f in &self.factors {
            *m.entry(f.weight.clone()).or_insert(0) += f.multiplicity;
        }
        m
    }

    /// Multiset of factor dimensions, sorted.
    pub fn dimension_multiset(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.factors.iter().flat_map(|f| std::iter::repeat_n(f.dimension, f.multiplicity as usize)).collect();
        v.sort_unstable();
        v
    }
}

/// Which parameters an expected table covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Case {
    /// Genus at least `min` with the given parity (0 even, 1 odd).
    GenusParity { min: usize, parity: usize },
    /// Exactly this genus.
    Genus(usize),
    /// `n ≡ 1 (mod p)`.
    NOneModP,
    /// `p | n`.
    NZeroModP,
    /// Every other residue of `n` mod `p`.
    NOtherModP,
}

impl Case {
    fn covers(&self, params: &Params) -> bool {
        match (*self, params.g, params.n) {
            (Case::GenusParity { min, parity }, Some(g), _) => g >= min && g % 2 == parity,
            (Case::Genus(k), Some(g), _) => g == k,
            (Case::NOneModP, _, Some(n)) => n % params.p as usize == 1,
            (Case::NZeroModP, _, Some(n)) => n % params.p as usize == 0,
            (Case::NOtherModP, _, Some(n)) => n % params.p as usize > 1,
            _ => false,
        }
    }
}

/// An expected composition-factor table.
#[derive(Clone, Copy, Debug)]
pub struct ExpectedTable {
    /// Families sharing the table.
    pub families: &'static [Family],
    /// Parameters covered.
    pub case: Case,
    /// The statement being checked.
    pub statement: &'static str,
    /// `(weight, multiplicity)`; `{n-1}` stands for `n - 1`.
    pub rows: &'static [(&'static str, u32)],
}

const SURFACE: &[Family] = &[Family::ModLevel2, Family::Punctured];

/// Every expected table.
pub const EXPECTED_TABLES: &[ExpectedTable] = &[
    ExpectedTable {
        families: SURFACE,
        case: Case::Genus(3),
        statement: "H1, ker d3/Im d5, H1, F, ker d2, H1",
        rows: &[("L(w1)", 3), ("L(0)", 1), ("L(w2)", 1), ("L(w3)", 1)],
    },
    ExpectedTable {
        families: SURFACE,
        case: Case::GenusParity { min: 4, parity: 1 },
        statement: "H1, F, ker d2, ker d3/Im eps with multiplicities 3,1,1,1",
        rows: &[("L(w1)", 3), ("L(0)", 1), ("L(w2)", 1), ("L(w3)", 1)],
    },
    ExpectedTable {
        families: SURFACE,
        case: Case::GenusParity { min: 4, parity: 0 },
        statement: "H1, F, ker d2/<omega>, ker d3 with multiplicities 2,2,1,1",
        rows: &[("L(w1)", 2), ("L(0)", 2), ("L(w2)", 1), ("L(w3)", 1)],
    },
    ExpectedTable {
        families: &[Family::Torelli],
        case: Case::GenusParity { min: 3, parity: 0 },
        statement: "F, H1, ker d2/<omega>, ker d3 with multiplicities 3,2,1,1",
        rows: &[("L(0)", 3), ("L(w1)", 2), ("L(w2)", 1), ("L(w3)", 1)],
    },
    ExpectedTable {
        families: &[Family::Torelli],
        case: Case::GenusParity { min: 3, parity: 1 },
        statement: "F, H1, ker d2, ker d3/Im eps with multiplicities 2,2,1,1",
        rows: &[("L(0)", 2), ("L(w1)", 2), ("L(w2)", 1), ("L(w3)", 1)],
    },
    ExpectedTable {
        families: &[Family::SpLevel2],
        case: Case::GenusParity { min: 3, parity: 1 },
        statement: "H1, F, ker d2 with multiplicities 1,1,1",
        rows: &[("L(w1)", 1), ("L(0)", 1), ("L(w2)", 1)],
    },
    ExpectedTable {
        families: &[Family::SpLevel2],
        case: Case::GenusParity { min: 3, parity: 0 },
        statement: "H1, F, ker d2/<omega> with multiplicities 1,2,1",
        rows: &[("L(w1)", 1), ("L(0)", 2), ("L(w2)", 1)],
    },
    ExpectedTable {
        families: &[Family::AutCongruence],
        case: Case::NOneModP,
        statement: "L(w1), L(w2+w{n-1}), L(w1), L(w1+w{n-1})",
        rows: &[("L(w1)", 2), ("L(w2+w{n-1})", 1), ("L(w1+w{n-1})", 1)],
    },
    ExpectedTable {
        families: &[Family::AutCongruence],
        case: Case::NZeroModP,
        statement: "L(w2+w{n-1}), L(w1), L(0), L(w1+w{n-1})",
        rows: &[("L(w2+w{n-1})", 1), ("L(w1)", 1), ("L(0)", 1), ("L(w1+w{n-1})", 1)],
    },
    ExpectedTable {
        families: &[Family::AutCongruence],
        case: Case::NOtherModP,
        statement: "L(w2+w{n-1}), L(w1), L(w1+w{n-1})",
        rows: &[("L(w2+w{n-1})", 1), ("L(w1)", 1), ("L(w1+w{n-1})", 1)],
    },
];

/// The table covering a family member, if any.
pub fn expected_table(family: Family, params: &Params) -> Option<&'static ExpectedTable> {
    EXPECTED_TABLES.iter().find(|t| t.families.contains(&family) && t.case.covers(params))
}

/// The expected weight multiplicities with `{n-1}` substituted.
pub fn expected_weights(family: Family, params: &Params) -> Option<BTreeMap<String, u32>> {
    let table = expected_table(family, params)?;
    let nm1 = params.n.map(|n| (n - 1).to_string()).unwrap_or_default();
    let mut m = BTreeMap::new();
    for &(w, k) in table.rows {
        *m.entry(w.replace("{n-1}", &nm1)).or_insert(0) += k;
    }
    Some(m)
}

/// A reference irreducible module.
#[derive(Clone, Debug)]
pub struct Reference {
    /// Name of the construction.
    pub label: String,
    /// Its highest weight.
    pub weight: DominantLabel,
    /// The module.
    pub rep: Representation,
}

fn reference(label: &str, module: &LabeledModule, upper: &Submodule, lower: &Submodule) -> Result<Option<Reference>> {
    if upper.dim() == lower.dim() {
        return Ok(None);
    }
    let weight = highest_weight_section(module, upper, lower)?;
    let rep = section(&module.rep, upper, lower)?;
    Ok(Some(Reference { label: label.into(), weight, rep }))
}

/// Reference factors for `Sp_2g(F_2)`: `F`, `H1` and the kernels of the
/// contractions on `Λ²` and `Λ³`, taken modulo `ω` or `Im ε` when these
/// lie inside.
pub fn sp_catalog(g: usize) -> Result<Vec<Reference>> {
    let space = SymplecticSpace::binary(g)?;
    let v = LabeledModule::symplectic(&space)?;
    let mut out = Vec::new();
    let triv = v.trivial_like();
    out.push(reference("F", &triv, &Submodule::full(2, 1), &Submodule::zero(2, 1))?);
    out.push(reference("H1", &v, &Submodule::full(2, v.dim()), &Submodule::zero(2, v.dim()))?);

    let l2 = exterior_power(&v, 2)?;
    let k2 = Submodule::left_kernel_of(&contraction_matrix(&space, 2)?);
    let omega = Submodule::from_vectors(2, l2.dim(), &[omega_vector(&space)])?;
    if omega.is_subspace_of(&k2) {
        out.push(reference("ker d2/<omega>", &l2, &k2, &omega)?);
    } else {
        out.push(reference("ker d2", &l2, &k2, &Submodule::zero(2, l2.dim()))?);
    }

    if g >= 2 {
        let l3 = exterior_power(&v, 3)?;
        let k3 = Submodule::left_kernel_of(&contraction_matrix(&space, 3)?);
        let im_eps = Submodule::image_of(&epsilon_matrix(&space));
        if im_eps.is_subspace_of(&k3) {
            out.push(reference("ker d3/Im eps", &l3, &k3, &im_eps)?);
        } else {
            out.push(reference("ker d3", &l3, &k3, &Submodule::zero(2, l3.dim()))?);
        }
    }
    Ok(out.into_iter().flatten().collect())
}

/// Reference factors for `SL_n(F_p)`: `F`, `V`, the kernel of `κ` on
/// `V* ⊗ Λ²V` (modulo `Im τ` when `n ≡ 1`) and the traceless matrices
/// (modulo the identity when `p | n`).
pub fn sl_catalog(n: usize, p: u8) -> Result<Vec<Reference>> {
    let v = LabeledModule::special_linear(n, p)?;
    let mut out = Vec::new();
    let triv = v.trivial_like();
    out.push(reference("F", &triv, &Submodule::full(p, 1), &Submodule::zero(p, 1))?);
    out.push(reference("V", &v, &Submodule::full(p, n), &Submodule::zero(p, n))?);

    let dw = sl_dual_wedge2(n, p)?;
    let kk = Submodule::left_kernel_of(&kappa_matrix(n, p)?);
    let im_tau = Submodule::image_of(&tau_matrix(n, p)?);
    if im_tau.is_subspace_of(&kk) {
        out.push(reference("ker kappa/Im tau", &dw, &kk, &im_tau)?);
    } else {
        out.push(reference("ker kappa", &dw, &kk, &Submodule::zero(p, dw.dim()))?);
    }

    let tl = traceless_module(n, p)?;
    let full = Submodule::full(p, tl.dim());
    if n.is_multiple_of(p as usize) {
        let id: Vec<u8> = tl.labels.iter().map(|l| matches!(l, BasisLabel::DiagonalDifference(..)) as u8).collect();
        let ident = Submodule::from_vectors(p, tl.dim(), &[id])?;
        out.push(reference("ker xi/<Id>", &tl, &full, &ident)?);
    } else {
        out.push(reference("ker xi", &tl, &full, &Submodule::zero(p, tl.dim()))?);
    }
    Ok(out.into_iter().flatten().collect())
}

fn degree3_span(module: &LabeledModule) -> Result<Submodule> {
    let units: Vec<Vec<u8>> = module
        .labels
        .iter()
        .enumerate()
        .filter(|(_, l)| matches!(l, BasisLabel::Monomial { vars, .. } if vars.len() == 3))
        .map(|(i, _)| {
            let mut e = vec![0u8; module.dim()];
            e[i] = 1;
            e
        })
        .collect();
    Submodule::from_vectors(2, module.dim(), &units)
}

fn quotient(rep: &Representation, s: &Submodule) -> Result<Representation> {
    section(rep, &Submodule::full(rep.p(), rep.dim()), s)
}

/// The modules chopped for a family member.
pub fn source_modules(family: Family, params: &Params) -> Result<Vec<Representation>> {
    if family.is_linear() {
        let (n, p) = params.require_linear()?;
        return Ok(vec![sl_dual_wedge2(n, p)?.rep, traceless_module(n, p)?.rep]);
    }
    let g = params.require_genus(family)?;
    match family {
        Family::ModLevel2 | Family::Punctured => Ok(vec![w_mod2_representation(g)?.rep]),
        Family::Torelli => Ok(vec![b3_representation(g)?.rep]),
        Family::SpLevel2 => {
            let w = w_mod2_representation(g)?;
            let z = degree3_span(&w)?;
            let torelli = subgroup_image(g, &QuadraticForm::zero(g)?, SubgroupKind::Torelli)?;
            if torelli != z {
                return Err(Error::Internal(format!("Torelli image (dim {}) differs from the degree-3 span (dim {})", torelli.dim(), z.dim())));
            }
            Ok(vec![quotient(&w.rep, &z)?])
        }
        Family::Closed => {
            let w = w_mod2_representation(g)?;
            let push = subgroup_image(g, &QuadraticForm::zero(g)?, SubgroupKind::Push)?;
            Ok(vec![quotient(&w.rep, &push)?])
        }
        Family::AutCongruence => unreachable!("handled above"),
    }
}

/// Reference catalog for a family member.
pub fn catalog(family: Family, params: &Params) -> Result<Vec<Reference>> {
    if family.is_linear() {
        let (n, p) = params.require_linear()?;
        sl_catalog(n, p)
    } else {
        sp_catalog(params.require_genus(family)?)
    }
}

/// A report together with the chop certificates of its source modules.
#[derive(Clone, Debug)]
pub struct PipelineRun {
    /// The report.
    pub report: FactorReport,
    /// One composition series per source module.
    pub series: Vec<CompositionSeries>,
}

impl PipelineRun {
    /// Certificates in source order.
    pub fn certificates(&self) -> Vec<Certificate> {
        self.series.iter().map(|s| s.certificate.clone()).collect()
    }
}

fn assemble(family: Family, params: &Params, sources: &[Representation], factors: &[Representation], seed: u64) -> Result<FactorReport> {
    let refs = catalog(family, params)?;
    let named: Vec<(String, Representation)> = refs.iter().map(|r| (r.label.clone(), r.rep.clone())).collect();
    let mut counts: BTreeMap<(usize, String), (u32, String)> = BTreeMap::new();
    for f in factors {
        let (label, weight) = match identify_factor(f, &named, seed)? {
            Some(l) => {
                let r = refs.iter().find(|r| r.label == l).expect("label comes from the catalog");
                (l.to_string(), r.weight.to_string())
            }
            None => (UNIDENTIFIED.to_string(), "?".to_string()),
        };
        counts.entry((f.dim(), label)).or_insert((0, weight)).0 += 1;
    }
    let factors: Vec<FactorEntry> = counts
        .into_iter()
        .map(|((dimension, label), (multiplicity, weight))| FactorEntry { label, dimension, multiplicity, weight })
        .collect();
    let mut report = FactorReport {
        family,
        params: params.clone(),
        source_dimension: sources.iter().map(|s| s.dim()).sum(),
        factors,
        verified: Verification::NoExpectation,
        seed,
    };
    if report.total_dimension() != report.source_dimension {
        return Err(Error::Internal(format!("factor dimensions sum to {} for a source of {}", report.total_dimension(), report.source_dimension)));
    }
    report.verified = match expected_weights(family, params) {
        None => Verification::NoExpectation,
        Some(expected) => {
            let identified = report.factors.iter().all(|f| f.label != UNIDENTIFIED);
            if identified && report.weight_multiplicities() == expected {
                Verification::Match
            } else {
                Verification::Mismatch
            }
        }
    };
    Ok(report)
}

/// Chops, identifies and verifies a family member.
pub fn run(family: Family, params: &Params, seed: u64) -> Result<PipelineRun> {
    let sources = source_modules(family, params)?;
    let series = sources.iter().map(|s| chop(s, seed)).collect::<Result<Vec<_>>>()?;
    let factors: Vec<Representation> = series.iter().flat_map(|s| s.factors.iter().cloned()).collect();
    let report = assemble(family, params, &sources, &factors, seed)?;
    Ok(PipelineRun { report, series })
}

/// Rebuilds a report from stored certificates without random search.
pub fn certify(family: Family, params: &Params, certificates: &[Certificate], seed: u64) -> Result<FactorReport> {
    let sources = source_modules(family, params)?;
    if certificates.len() != sources.len() {
        return Err(Error::Certificate(format!("{} certificates for {} source modules", certificates.len(), sources.len())));
    }
    let mut factors = Vec::new();
    for (s, c) in sources.iter().zip(certificates) {
        factors.extend(replay(s, c)?);
    }
    assemble(family, params, &sources, &factors, seed)
}

/// Composition factors of `H_1(Mod_{g,1}[2]; F_2)`.
pub fn factors_mod_level2(g: usize, seed: u64) -> Result<FactorReport> {
    Ok(run(Family::ModLevel2, &Params::genus(g), seed)?.report)
}

/// Composition factors of the Torelli coinvariants `B^3`.
pub fn factors_torelli_coinvariants(g: usize, seed: u64) -> Result<FactorReport> {
    Ok(run(Family::Torelli, &Params::genus(g), seed)?.report)
}

/// Composition factors of `H_1(Sp_2g(Z)[2]; F_2)`.
pub fn factors_sp_level2(g: usize, seed: u64) -> Result<FactorReport> {
    Ok(run(Family::SpLevel2, &Params::genus(g), seed)?.report)
}

/// Surface with a puncture or without boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SurfaceVariant {
    /// One puncture.
    Punctured,
    /// Closed.
    Closed,
}

/// Composition factors for the punctured or closed surface.
pub fn factors_surface_variants(g: usize, variant: SurfaceVariant, seed: u64) -> Result<FactorReport> {
    let family = match variant {
        SurfaceVariant::Punctured => Family::Punctured,
        SurfaceVariant::Closed => Family::Closed,
    };
    Ok(run(family, &Params::genus(g), seed)?.report)
}

/// Composition factors of `H_1(Aut(F_n)[p]; F_p)`, as the union of the
/// factors of `V* ⊗ Λ²V` and of the traceless matrices.
pub fn factors_aut_congruence(n: usize, p: u8, seed: u64) -> Result<FactorReport> {
    Ok(run(Family::AutCongruence, &Params::linear(n, p), seed)?.report)
}

/// Outcome of a periodicity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Periodicity {
    /// Label multiplicities for each parameter set.
    pub maps: Vec<(Params, BTreeMap<String, u32>)>,
    /// True when all maps agree.
    pub constant: bool,
}

/// Checks that the label multiplicities agree across parameters of one
/// class: equal parity of `g`, or equal `n mod p` for a common `p`.
pub fn periodicity_check(family: Family, range: &[Params], seed: u64) -> Result<Periodicity> {
    let class = |q: &Params| -> Result<(usize, u8)> {
        if family.is_linear() {
            let (n, p) = q.require_linear()?;
            Ok((n % p as usize, p))
        } else {
            Ok((q.require_genus(family)? % 2, 2))
        }
    };
    if let Some(first) = range.first() {
        let c = class(first)?;
        for q in range {
            if class(q)? != c {
                return Err(Error::InvalidArgument(format!("{q} is not in the class of {first}")));
            }
        }
    }
    let maps = range.iter().map(|q| Ok((q.clone(), run(family, q, seed)?.report.label_multiplicities()))).collect::<Result<Vec<_>>>()?;
    let constant = maps.windows(2).all(|w| w[0].1 == w[1].1);
    Ok(Periodicity { maps, constant })
}

/// Every family member checked by the full verification, in canonical
/// order: surface families for `g <= max_genus`, then the linear family
/// for `3 <= n <= max_n` and `p ∈ {2, 3, 5, 7}`.
pub fn verification_plan(max_genus: usize, max_n: usize) -> Vec<(Family, Params)> {
    let mut plan = Vec::new();
    for family in Family::ALL {
        if family.is_linear() {
            for n in 3..=max_n.min(MAX_N) {
                for p in [2u8, 3, 5, 7] {
                    plan.push((family, Params::linear(n, p)));
                }
            }
        } else {
            for g in family.min_genus()..=max_genus.min(MAX_GENUS) {
                plan.push((family, Params::genus(g)));
            }
        }
    }
    plan
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
            assert_eq!(serde_json::to_string(&f).unwrap(), format!("\"{}\"", f.name()));
        }
        assert!("level3".parse::<Family>().is_err());
    }

    #[test]
    fn expected_tables_cover_cases() {
        assert!(expected_table(Family::ModLevel2, &Params::genus(2)).is_none());
        assert!(expected_table(Family::Closed, &Params::genus(4)).is_none());
        let e = expected_weights(Family::AutCongruence, &Params::linear(4, 3)).unwrap();
        assert_eq!(e["L(w1)"], 2);
        assert_eq!(e["L(w2+w3)"], 1);
        let e = expected_weights(Family::AutCongruence, &Params::linear(3, 3)).unwrap();
        assert_eq!(e["L(w2+w2)"], 1);
        assert_eq!(e["L(0)"], 1);
        let e = expected_weights(Family::Torelli, &Params::genus(4)).unwrap();
        assert_eq!(e["L(0)"], 3);
    }

    #[test]
    fn sp_catalog_dimensions() {
        let dims = |g| sp_catalog(g).unwrap().iter().map(|r| (r.label.clone(), r.rep.dim(), r.weight.to_string())).collect::<Vec<_>>();
        assert_eq!(
            dims(3),
            vec![
                ("F".into(), 1, "L(0)".into()),
                ("H1".into(), 6, "L(w1)".into()),
                ("ker d2".into(), 14, "L(w2)".into()),
                ("ker d3/Im eps".into(), 8, "L(w3)".into())
            ]
        );
        assert_eq!(
            dims(4),
            vec![
                ("F".into(), 1, "L(0)".into()),
                ("H1".into(), 8, "L(w1)".into()),
                ("ker d2/<omega>".into(), 26, "L(w2)".into()),
                ("ker d3".into(), 48, "L(w3)".into())
            ]
        );
    }

    #[test]
    fn sl_catalog_dimensions() {
        let dims = |n, p| sl_catalog(n, p).unwrap().iter().map(|r| (r.rep.dim(), r.weight.to_string())).collect::<Vec<_>>();
        assert_eq!(dims(4, 3), vec![(1, "L(0)".into()), (4, "L(w1)".into()), (16, "L(w2+w3)".into()), (15, "L(w1+w3)".into())]);
        assert_eq!(dims(3, 3), vec![(1, "L(0)".into()), (3, "L(w1)".into()), (6, "L(w2+w2)".into()), (7, "L(w1+w2)".into())]);
    }

    #[test]
    fn genus_four_mod_level2() {
        let r = factors_mod_level2(4, DEFAULT_SEED).unwrap();
        assert_eq!(r.verified, Verification::Match);
        assert_eq!(r.source_dimension, 92);
        assert_eq!(r.total_dimension(), 92);
        assert_eq!(r.factors.len(), 4);
    }

    #[test]
    fn report_json_round_trip() {
        let r = factors_aut_congruence(4, 3, DEFAULT_SEED).unwrap();
        assert_eq!(r.verified, Verification::Match);
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<FactorReport>(&s).unwrap(), r);
    }

    #[test]
    fn certify_replays_run() {
        let params = Params::genus(3);
        let run = run(Family::SpLevel2, &params, 7).unwrap();
        let again = certify(Family::SpLevel2, &params, &run.certificates(), 7).unwrap();
        assert_eq!(again, run.report);
        assert!(certify(Family::SpLevel2, &params, &[], 7).is_err());
    }

    #[test]
    fn parameter_bounds() {
        assert!(source_modules(Family::Torelli, &Params::genus(2)).is_err());
        assert!(source_modules(Family::ModLevel2, &Params::genus(7)).is_err());
        assert!(source_modules(Family::AutCongruence, &Params::linear(9, 2)).is_err());
        assert!(source_modules(Family::AutCongruence, &Params::linear(4, 4)).is_err());
        assert!(source_modules(Family::AutCongruence, &Params::genus(4)).is_err());
    }

    #[test]
    fn periodicity_rejects_mixed_classes() {
        assert!(periodicity_check(Family::ModLevel2, &[Params::genus(3), Params::genus(4)], 1).is_err());
    }
}
