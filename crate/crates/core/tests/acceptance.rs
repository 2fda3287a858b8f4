//! The twelve acceptance criteria, each reported on one PASS/FAIL line.
//!
//! Lines go straight to stderr so they survive output capture.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use levelmod::fflinalg::{factor_squarefree, FFMatrix, FFPoly};
use levelmod::functors::{
    contraction_matrix, epsilon_matrix, exterior_power, kappa_matrix, section, sl_dual_wedge2, sub_quotient, tau_matrix, traceless_module,
    wedge_index, xi_matrix, BasisLabel, LabeledModule, Submodule,
};
use levelmod::groups::{Representation, SymplecticSpace};
use levelmod::meataxe::{chop, identify_factor, is_isomorphic, spin, Certificate};
use levelmod::pipelines::{
    factors_aut_congruence, factors_mod_level2, factors_sp_level2, factors_torelli_coinvariants, periodicity_check, sl_catalog, sp_catalog,
    FactorReport, Family, Params, Reference, Verification, DEFAULT_SEED,
};
use levelmod::sato::{
    cbar, dot, i_function, subgroup_image, verify_sato_basis, w_mod2_representation, QuadraticForm, SubgroupKind,
};
use levelmod::torelli::{b3_dim, b3_filtration, b3_representation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria whose stated expectation disagrees with the computation.
/// Criterion 7: at odd genus the Torelli coinvariants have H1 with
/// multiplicity 3, forced by `dim B^3`; see `torelli_odd_genus_discrepancy`.
const KNOWN_FAILURES: &[u8] = &[7];

type Criterion = (u8, &'static str, fn() -> Outcome);

struct Outcome {
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn labels_of(factors: &[Representation], catalog: &[Reference]) -> BTreeMap<String, u32> {
    let named: Vec<(String, Representation)> = catalog.iter().map(|r| (r.label.clone(), r.rep.clone())).collect();
    let mut m = BTreeMap::new();
    for f in factors {
        let l = identify_factor(f, &named, DEFAULT_SEED).unwrap().unwrap_or("unidentified").to_string();
        *m.entry(l).or_insert(0) += 1;
    }
    m
}

fn chop_labels(rep: &Representation, catalog: &[Reference]) -> BTreeMap<String, u32> {
    labels_of(&chop(rep, DEFAULT_SEED).unwrap().factors, catalog)
}

fn merge(maps: &[BTreeMap<String, u32>]) -> BTreeMap<String, u32> {
    let mut out = BTreeMap::new();
    for m in maps {
        for (k, v) in m {
            *out.entry(k.clone()).or_insert(0) += v;
        }
    }
    out
}

fn weights(r: &FactorReport) -> Vec<(String, u32)> {
    r.weight_multiplicities().into_iter().collect()
}

fn wm(rows: &[(&str, u32)]) -> Vec<(String, u32)> {
    let mut v: Vec<(String, u32)> = rows.iter().map(|(w, k)| (w.to_string(), *k)).collect();
    v.sort();
    v
}

fn degree_span(w: &LabeledModule, min_degree: usize) -> Submodule {
    let rows: Vec<Vec<u8>> = w
        .labels
        .iter()
        .enumerate()
        .filter(|(_, l)| matches!(l, BasisLabel::Monomial { vars, .. } if vars.len() >= min_degree))
        .map(|(i, _)| {
            let mut e = vec![0u8; w.dim()];
            e[i] = 1;
            e
        })
        .collect();
    Submodule::from_vectors(2, w.dim(), &rows).unwrap()
}

fn vars_of_degree(w: &LabeledModule, d: usize) -> Vec<Vec<usize>> {
    w.labels
        .iter()
        .filter_map(|l| match l {
            BasisLabel::Monomial { vars, .. } if vars.len() == d => Some(vars.clone()),
            _ => None,
        })
        .collect()
}

/// Compares `sub` with `target` generator by generator, matching the
/// monomial `X_{i1}…X_{ik}` with the wedge or vector on the same indices.
fn equal_after_label_matching(sub: &Representation, vars: &[Vec<usize>], target: &LabeledModule) -> bool {
    if sub.dim() != target.dim() || vars.len() != sub.dim() {
        return false;
    }
    let perm: Vec<usize> = vars
        .iter()
        .map(|v| {
            let label = if v.len() == 1 { BasisLabel::Vector(v[0]) } else { BasisLabel::Wedge(v.clone()) };
            target.index_of(&label).expect("label present")
        })
        .collect();
    sub.generators().iter().zip(target.rep.generators()).all(|(a, b)| {
        (0..sub.dim()).all(|i| (0..sub.dim()).all(|k| a.matrix.get(i, k) == b.matrix.get(perm[i], perm[k])))
    })
}

fn criterion_1() -> Outcome {
    let mut o = Outcome::new();
    for g in [2usize, 3, 4] {
        let r = verify_sato_basis(g, &QuadraticForm::zero(g).unwrap()).unwrap();
        let n = 2 * g;
        o.check(r.holds && r.exponents == (n, binom(n, 2), binom(n, 3)), format!("g={g}: {r:?}"));
    }
    o
}

fn relations_hold(q: &QuadraticForm, c1: u32, c2: u32) -> bool {
    let g = q.genus();
    let sign = |b: u32| if b == 1 { -1 } else { 1 };
    let b1 = cbar(q, c1).unwrap();
    let b2 = cbar(q, c2).unwrap();
    let ia = i_function(g, c1).unwrap();
    let ib = i_function(g, c2).unwrap();
    let square = b1.mul(&b1) == b1.scale(sign(q.eval(c1)));
    if c1 == c2 {
        return square;
    }
    let sum_i = ia.add(&ib).sub(&ia.mul(&ib).scale(2)) == i_function(g, c1 ^ c2).unwrap();
    let rhs = b1.scale(sign(q.eval(c2))).add(&b2.scale(sign(q.eval(c1)))).sub(&b1.mul(&b2).scale(2)).scale(sign(dot(c1, c2)));
    square && sum_i && cbar(q, c1 ^ c2).unwrap() == rhs
}

fn criterion_2() -> Outcome {
    let mut o = Outcome::new();
    for g in 1..=2usize {
        for bits in 0..1u32 << (2 * g) {
            let q = QuadraticForm::new(g, bits).unwrap();
            for c1 in 1..1u32 << (2 * g) {
                for c2 in 1..1u32 << (2 * g) {
                    o.check(relations_hold(&q, c1, c2), format!("g={g} q={bits:b} {c1:b} {c2:b}"));
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for g in [3usize, 4] {
        let top = 1u32 << (2 * g);
        for _ in 0..1000 {
            let q = QuadraticForm::new(g, rng.gen_range(0..top)).unwrap();
            let (c1, c2) = (rng.gen_range(1..top), rng.gen_range(1..top));
            o.check(relations_hold(&q, c1, c2), format!("g={g} {c1:b} {c2:b}"));
        }
    }
    o
}

fn criterion_3() -> Outcome {
    let mut o = Outcome::new();
    for g in [2usize, 3, 4] {
        let w = w_mod2_representation(g).unwrap();
        let taut = LabeledModule::symplectic(&SymplecticSpace::binary(g).unwrap()).unwrap();
        let z = degree_span(&w, 3);
        let q = degree_span(&w, 2);
        let (cubic, _) = sub_quotient(&w.rep, &z).unwrap();
        let middle = section(&w.rep, &q, &z).unwrap();
        let (_, top) = sub_quotient(&w.rep, &q).unwrap();
        o.check(equal_after_label_matching(&cubic, &vars_of_degree(&w, 3), &exterior_power(&taut, 3).unwrap()), format!("Z_{g} vs Λ³"));
        o.check(equal_after_label_matching(&middle, &vars_of_degree(&w, 2), &exterior_power(&taut, 2).unwrap()), format!("Q_{g}/Z_{g} vs Λ²"));
        o.check(equal_after_label_matching(&top, &vars_of_degree(&w, 1), &taut), format!("W/Q_{g} vs H1"));
    }
    o
}

fn criterion_4() -> Outcome {
    let mut o = Outcome::new();
    for (g, label) in [(3usize, "ker d2"), (5, "ker d2"), (4, "ker d2/<omega>"), (4, "ker d3"), (5, "ker d3/Im eps")] {
        let cat = sp_catalog(g).unwrap();
        let r = cat.iter().find(|r| r.label == label).expect("catalog entry");
        let s = chop(&r.rep, DEFAULT_SEED).unwrap();
        let irreducible = matches!(s.certificate, Certificate::Irreducible { .. }) && s.factors.len() == 1;
        o.check(irreducible, format!("{label} at g={g} (dim {}) chopped into {:?}", r.rep.dim(), s.dim_multiset()));
    }
    let space = SymplecticSpace::binary(3).unwrap();
    let l2 = exterior_power(&LabeledModule::symplectic(&space).unwrap(), 2).unwrap();
    let mut e = vec![0u8; l2.dim()];
    e[wedge_index(6, 2)[&vec![0, 2]]] = 1;
    let spun = spin(&l2.rep, &[e]).unwrap();
    o.check(spun == Submodule::left_kernel_of(&contraction_matrix(&space, 2).unwrap()), "spin(X1∧X3) = ker d2 at g=3");
    o
}

fn criterion_5() -> Outcome {
    let mut o = Outcome::new();
    for g in [3usize, 4, 5] {
        let space = SymplecticSpace::binary(g).unwrap();
        let k3 = Submodule::left_kernel_of(&contraction_matrix(&space, 3).unwrap());
        let im5 = Submodule::image_of(&contraction_matrix(&space, 5).unwrap());
        if g == 3 {
            o.check(im5.is_subspace_of(&k3) && k3.dim() - im5.dim() == 8, format!("codim {} at g=3", k3.dim() - im5.dim()));
            o.check(im5 == Submodule::image_of(&epsilon_matrix(&space)), "Im d5 = Im eps at g=3");
        } else {
            o.check(k3 == im5, format!("ker d3 (dim {}) vs Im d5 (dim {}) at g={g}", k3.dim(), im5.dim()));
        }
    }
    o
}

fn criterion_6() -> Outcome {
    let mut o = Outcome::new();
    let r5 = factors_mod_level2(5, DEFAULT_SEED).unwrap();
    o.check(r5.verified == Verification::Match, "g=5 verified");
    o.check(weights(&r5) == wm(&[("L(w1)", 3), ("L(0)", 1), ("L(w2)", 1), ("L(w3)", 1)]), format!("g=5 {:?}", weights(&r5)));
    o.check(r5.dimension_multiset() == vec![1, 10, 10, 10, 44, 100], format!("g=5 dims {:?}", r5.dimension_multiset()));
    let r4 = factors_mod_level2(4, DEFAULT_SEED).unwrap();
    o.check(r4.verified == Verification::Match, "g=4 verified");
    o.check(weights(&r4) == wm(&[("L(w1)", 2), ("L(0)", 2), ("L(w2)", 1), ("L(w3)", 1)]), format!("g=4 {:?}", weights(&r4)));
    o.check(r4.dimension_multiset() == vec![1, 1, 8, 8, 26, 48], format!("g=4 dims {:?}", r4.dimension_multiset()));
    let r3 = factors_mod_level2(3, DEFAULT_SEED).unwrap();
    o.check(r3.verified == Verification::Match, "g=3 verified");
    o.check(r3.dimension_multiset() == vec![1, 6, 6, 6, 8, 14], format!("g=3 dims {:?}", r3.dimension_multiset()));
    o
}

fn criterion_7() -> Outcome {
    let mut o = Outcome::new();
    let expect = |g: usize| {
        if g.is_multiple_of(2) {
            wm(&[("L(0)", 3), ("L(w1)", 2), ("L(w2)", 1), ("L(w3)", 1)])
        } else {
            wm(&[("L(0)", 2), ("L(w1)", 2), ("L(w2)", 1), ("L(w3)", 1)])
        }
    };
    for g in [3usize, 4, 5] {
        let r = factors_torelli_coinvariants(g, DEFAULT_SEED).unwrap();
        o.check(weights(&r) == expect(g) && r.verified == Verification::Match, format!("g={g} computed {:?}", weights(&r)));
    }
    o
}

fn criterion_8() -> Outcome {
    let mut o = Outcome::new();
    for g in [3usize, 4] {
        let q = QuadraticForm::zero(g).unwrap();
        let w = w_mod2_representation(g).unwrap();
        let torelli = subgroup_image(g, &q, SubgroupKind::Torelli).unwrap();
        o.check(torelli == degree_span(&w, 3), format!("Torelli image at g={g} has dim {}", torelli.dim()));
        for kind in [SubgroupKind::JohnsonKernel, SubgroupKind::BoundaryTwist] {
            let s = subgroup_image(g, &q, kind).unwrap();
            o.check(s.dim() == 0, format!("{kind:?} image at g={g} has dim {}", s.dim()));
        }
    }
    let g = 4;
    let w = w_mod2_representation(g).unwrap();
    let push = subgroup_image(g, &QuadraticForm::zero(g).unwrap(), SubgroupKind::Push).unwrap();
    o.check(push.dim() == 2 * g, format!("push image dim {}", push.dim()));
    let (sub, _) = sub_quotient(&w.rep, &push).unwrap();
    let taut = LabeledModule::symplectic(&SymplecticSpace::binary(g).unwrap()).unwrap();
    o.check(is_isomorphic(&sub, &taut.rep, DEFAULT_SEED).unwrap(), "push image ≅ H1");
    o
}

fn criterion_9() -> Outcome {
    let mut o = Outcome::new();
    for (g, rows) in [
        (3usize, &[("L(w1)", 1), ("L(0)", 1), ("L(w2)", 1)][..]),
        (5, &[("L(w1)", 1), ("L(0)", 1), ("L(w2)", 1)][..]),
        (4, &[("L(w1)", 1), ("L(0)", 2), ("L(w2)", 1)][..]),
    ] {
        let r = factors_sp_level2(g, DEFAULT_SEED).unwrap();
        o.check(r.verified == Verification::Match && weights(&r) == wm(rows), format!("g={g} {:?}", weights(&r)));
        let quotient_dim = 2 * g + binom(2 * g, 2);
        o.check(r.source_dimension == quotient_dim, format!("g={g} quotient dim {}", r.source_dimension));
    }
    o
}

fn criterion_10() -> Outcome {
    let mut o = Outcome::new();
    for n in 3..=6usize {
        for p in [2u8, 3, 5, 7] {
            let mut trace_elt = vec![0u8; n * n];
            for i in 0..n {
                trace_elt[i * n + i] = 1;
            }
            o.check(xi_matrix(n, p).unwrap().vec_mul(&trace_elt) == vec![(n % p as usize) as u8], format!("xi at n={n} p={p}"));
            let kt = tau_matrix(n, p).unwrap().mul(&kappa_matrix(n, p).unwrap()).unwrap();
            let c = ((p as i64 - (n as i64 - 1) % p as i64) % p as i64) as u8;
            o.check(kt == FFMatrix::identity(p, n).scale(c), format!("kappa∘tau at n={n} p={p}"));
        }
    }
    let nm1 = |n: usize, w: &str| w.replace("{n-1}", &(n - 1).to_string());
    for (n, p) in [(3usize, 2u8), (4, 3), (3, 3), (5, 3)] {
        let cat = sl_catalog(n, p).unwrap();
        let got = chop(&sl_dual_wedge2(n, p).unwrap().rep, DEFAULT_SEED).unwrap();
        let labels = labels_of(&got.factors, &cat);
        let mut ws: Vec<(String, u32)> = labels
            .iter()
            .map(|(l, k)| (cat.iter().find(|r| &r.label == l).map(|r| r.weight.to_string()).unwrap_or_default(), *k))
            .collect();
        ws.sort();
        let expect = if n % p as usize == 1 {
            wm(&[("L(w1)", 2), (&nm1(n, "L(w2+w{n-1})"), 1)])
        } else {
            wm(&[(&nm1(n, "L(w2+w{n-1})"), 1), ("L(w1)", 1)])
        };
        o.check(ws == expect, format!("V*⊗Λ²V at ({n},{p}): {ws:?}"));
    }
    for (n, p) in [(3usize, 3u8), (4, 2), (5, 3)] {
        let cat = sl_catalog(n, p).unwrap();
        let got = chop(&traceless_module(n, p).unwrap().rep, DEFAULT_SEED).unwrap();
        let labels = labels_of(&got.factors, &cat);
        let mut ws: Vec<(String, u32)> =
            labels.iter().map(|(l, k)| (cat.iter().find(|r| &r.label == l).map(|r| r.weight.to_string()).unwrap_or_default(), *k)).collect();
        ws.sort();
        let expect = if n % p as usize == 0 {
            wm(&[("L(0)", 1), (&nm1(n, "L(w1+w{n-1})"), 1)])
        } else {
            wm(&[(&nm1(n, "L(w1+w{n-1})"), 1)])
        };
        o.check(ws == expect, format!("traceless at ({n},{p}): {ws:?}"));
    }
    for (n, p) in [(4usize, 3u8), (3, 3), (4, 2), (5, 3), (5, 2)] {
        let r = factors_aut_congruence(n, p, DEFAULT_SEED).unwrap();
        o.check(r.verified == Verification::Match, format!("aut ({n},{p}): {:?}", weights(&r)));
    }
    o
}

fn criterion_11() -> Outcome {
    let mut o = Outcome::new();
    for family in [Family::ModLevel2, Family::Torelli, Family::SpLevel2] {
        for gs in [[4usize, 6], [3, 5]] {
            let range: Vec<Params> = gs.iter().map(|&g| Params::genus(g)).collect();
            let d = periodicity_check(family, &range, DEFAULT_SEED).unwrap();
            o.check(d.constant, format!("{family} g ∈ {gs:?}: {:?}", d.maps));
        }
    }
    for pairs in [&[(4usize, 3u8), (7, 3)][..], &[(3, 3), (6, 3)], &[(5, 3), (8, 3)], &[(3, 2), (5, 2), (7, 2)], &[(4, 2), (6, 2), (8, 2)]] {
        let range: Vec<Params> = pairs.iter().map(|&(n, p)| Params::linear(n, p)).collect();
        let d = periodicity_check(Family::AutCongruence, &range, DEFAULT_SEED).unwrap();
        o.check(d.constant, format!("aut {pairs:?}: {:?}", d.maps));
    }
    o
}

fn criterion_12() -> Outcome {
    let mut o = Outcome::new();
    for g in 2..=4usize {
        for (name, rep) in [("W", w_mod2_representation(g).unwrap().rep), ("B3", b3_representation(g).unwrap().rep)] {
            let base = chop(&rep, 1).unwrap().dim_multiset();
            for seed in 2..=5u64 {
                let other = chop(&rep, seed).unwrap().dim_multiset();
                o.check(other == base, format!("{name} g={g} seed {seed}: {other:?} vs {base:?}"));
            }
        }
    }

    for g in 3..=5usize {
        let cat = sp_catalog(g).unwrap();
        let w = w_mod2_representation(g).unwrap();
        let z = degree_span(&w, 3);
        let q = degree_span(&w, 2);
        let cubic = chop_labels(&sub_quotient(&w.rep, &z).unwrap().0, &cat);
        let pieces = merge(&[chop_labels(&sub_quotient(&w.rep, &q).unwrap().1, &cat), chop_labels(&section(&w.rep, &q, &z).unwrap(), &cat), cubic.clone()]);
        let level2 = factors_mod_level2(g, DEFAULT_SEED).unwrap().label_multiplicities();
        o.check(pieces == level2, format!("W filtration at g={g}: {pieces:?} vs {level2:?}"));

        let b = b3_representation(g).unwrap();
        let [k, l, qq] = b3_filtration(g).unwrap();
        let full = Submodule::full(2, b.dim());
        let parts = merge(&[
            chop_labels(&sub_quotient(&b.rep, &k).unwrap().0, &cat),
            chop_labels(&section(&b.rep, &l, &k).unwrap(), &cat),
            chop_labels(&section(&b.rep, &qq, &l).unwrap(), &cat),
            chop_labels(&section(&b.rep, &full, &qq).unwrap(), &cat),
        ]);
        let torelli = factors_torelli_coinvariants(g, DEFAULT_SEED).unwrap().label_multiplicities();
        o.check(parts == torelli, format!("B3 filtration at g={g}: {parts:?} vs {torelli:?}"));

        let mut rest = level2.clone();
        for (label, k) in &cubic {
            let slot = rest.get_mut(label).expect("cubic factor occurs in W");
            *slot -= k;
        }
        rest.retain(|_, k| *k > 0);
        let sp = factors_sp_level2(g, DEFAULT_SEED).unwrap().label_multiplicities();
        o.check(rest == sp, format!("five-term arithmetic at g={g}: {rest:?} vs {sp:?}"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for trial in 0..200 {
        let p = [2u8, 3, 5, 7][trial % 4];
        let n = rng.gen_range(1..=24usize);
        let a = FFMatrix::from_fn(p, n, n, |_, _| rng.gen_range(0..p as i64));
        let chi = a.char_poly().unwrap();
        o.check(chi.degree() == Some(n) && a.eval_poly(&chi).unwrap().is_zero(), format!("Cayley-Hamilton trial {trial}"));

        let deg = rng.gen_range(1..=30usize);
        let mut coeffs: Vec<u8> = (0..deg).map(|_| rng.gen_range(0..p)).collect();
        coeffs.push(rng.gen_range(1..p));
        let f = FFPoly::new(p, coeffs);
        let factors = factor_squarefree(&f, trial as u64).unwrap();
        let product = factors.iter().fold(FFPoly::one(p), |acc, (h, k)| (0..*k).fold(acc, |a, _| a.mul(h)));
        let irreducible = factors.iter().all(|(h, _)| h.is_irreducible() && h.monic() == *h);
        o.check(product == f.monic() && irreducible, format!("factorization round trip trial {trial}"));
    }
    o
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 12] = [
        (1, "Z/8 structure of the Sato basis", criterion_1),
        (2, "pointwise relations", criterion_2),
        (3, "filtration isomorphisms", criterion_3),
        (4, "irreducibility of the kernel sections", criterion_4),
        (5, "ker d3 = Im d5 and the genus-3 codimension", criterion_5),
        (6, "level-2 mapping class group table", criterion_6),
        (7, "Torelli coinvariants table", criterion_7),
        (8, "subgroup images", criterion_8),
        (9, "Sp(Z)[2] table", criterion_9),
        (10, "SL_n side", criterion_10),
        (11, "periodicity", criterion_11),
        (12, "engine properties", criterion_12),
    ];
    let mut failed = Vec::new();
    let mut err = std::io::stderr();
    for (id, name, run) in criteria {
        let t = Instant::now();
        let outcome = run();
        let status = if outcome.failures.is_empty() { "PASS" } else { "FAIL" };
        let note = if outcome.failures.is_empty() {
            String::new()
        } else {
            format!(": {}", outcome.failures.join("; "))
        };
        writeln!(err, "criterion {id:>2} {status} {name} ({:.2?}){note}", t.elapsed()).unwrap();
        if !outcome.failures.is_empty() {
            failed.push(id);
        }
    }
    assert_eq!(failed, KNOWN_FAILURES, "criteria failing outside the documented discrepancy");
}

/// At odd genus the stated multiplicities (2,2,1,1) account for
/// `2 + 2·2g + dim ker d2 + dim(ker d3/Im eps)`, which is `2g` short of
/// `dim B^3`; the computed series has one more H1.
#[test]
fn torelli_odd_genus_discrepancy() {
    for g in [3usize, 5] {
        let cat = sp_catalog(g).unwrap();
        let dim = |l: &str| cat.iter().find(|r| r.label == l).unwrap().rep.dim();
        let stated = 2 + 2 * dim("H1") + dim("ker d2") + dim("ker d3/Im eps");
        assert_eq!(b3_dim(g), stated + 2 * g);
        let r = factors_torelli_coinvariants(g, DEFAULT_SEED).unwrap();
        assert_eq!(r.source_dimension, b3_dim(g));
        assert_eq!(weights(&r), wm(&[("L(0)", 2), ("L(w1)", 3), ("L(w2)", 1), ("L(w3)", 1)]));
        assert_eq!(r.verified, Verification::Mismatch);
    }
}
