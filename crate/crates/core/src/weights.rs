//! Torus weights of labeled basis vectors, the positive-root order and
//! highest-weight labels `L(λ)` for types `C_g` and `A_{n-1}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functors::{BasisLabel, LabeledModule, ModuleKind, Submodule};

/// Root system of the acting group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RootType {
    /// `Sp_2g`, weights in the `L_1..L_g` basis.
    C { g: usize },
    /// `SL_n`, weights modulo `L_1 + … + L_n`.
    A { n: usize },
}

impl RootType {
    /// Root system of a module's acting group.
    pub fn of(kind: ModuleKind) -> Self {
        match kind {
            ModuleKind::Symplectic { g } => RootType::C { g },
            ModuleKind::SpecialLinear { n } => RootType::A { n },
        }
    }

    fn len(&self) -> usize {
        match *self {
            RootType::C { g } => g,
            RootType::A { n } => n,
        }
    }

    /// Rank, the number of fundamental weights.
    pub fn rank(&self) -> usize {
        match *self {
            RootType::C { g } => g,
            RootType::A { n } => n - 1,
        }
    }
}

/// A weight; type-A weights are stored with last coordinate 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    /// Root system.
    pub ty: RootType,
    /// Coordinates in the `L_i` basis.
    pub coords: Vec<i64>,
}

impl Weight {
    /// The zero weight.
    pub fn zero(ty: RootType) -> Self {
        Weight { ty, coords: vec![0; ty.len()] }
    }

    /// Builds and canonicalizes.
    pub fn new(ty: RootType, coords: Vec<i64>) -> Result<Self> {
        if coords.len() != ty.len() {
            return Err(Error::Weight(format!("{} coordinates for {ty:?}", coords.len())));
        }
        let mut w = Weight { ty, coords };
        w.canonicalize();
        Ok(w)
    }

    fn canonicalize(&mut self) {
        if let RootType::A { .. } = self.ty {
            let last = *self.coords.last().expect("rank is positive");
            for c in &mut self.coords {
                *c -= last;
            }
        }
    }

    /// Sum of weights.
    pub fn add(&self, o: &Weight) -> Weight {
        let mut w = Weight { ty: self.ty, coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect() };
        w.canonicalize();
        w
    }

    /// Negative weight.
    pub fn neg(&self) -> Weight {
        let mut w = Weight { ty: self.ty, coords: self.coords.iter().map(|a| -a).collect() };
        w.canonicalize();
        w
    }

    /// Coordinates in the simple roots, when integral.
    fn simple_root_coords(&self) -> Option<Vec<i64>> {
        let v = &self.coords;
        match self.ty {
            RootType::C { g } => {
                // α_i = L_i - L_{i+1}, α_g = 2 L_g
                let mut c = Vec::with_capacity(g);
                let mut partial = 0;
                for &x in &v[..g - 1] {
                    partial += x;
                    c.push(partial);
                }
                partial += v[g - 1];
                if partial % 2 != 0 {
                    return None;
                }
                c.push(partial / 2);
                Some(c)
            }
            RootType::A { n } => {
                let total: i64 = v.iter().sum();
                if total % n as i64 != 0 {
                    return None;
                }
                let t = total / n as i64;
                let mut partial = 0;
                Some((0..n - 1).map(|i| {
                    partial += v[i] - t;
                    partial
                }).collect())
            }
        }
    }

    /// `self ≥ other`: the difference is a nonnegative sum of positive roots.
    pub fn dominates(&self, other: &Weight) -> bool {
        self.ty == other.ty && self.add(&other.neg()).simple_root_coords().is_some_and(|c| c.iter().all(|&x| x >= 0))
    }

    /// Coefficients of the fundamental weights.
    pub fn fundamental_coords(&self) -> Vec<i64> {
        let v = &self.coords;
        match self.ty {
            RootType::C { g } => (0..g).map(|i| if i + 1 < g { v[i] - v[i + 1] } else { v[i] }).collect(),
            RootType::A { n } => (0..n - 1).map(|i| v[i] - v[i + 1]).collect(),
        }
    }

    /// The dominant label, if the weight is dominant.
    pub fn to_dominant(&self) -> Result<DominantLabel> {
        let f = self.fundamental_coords();
        if f.iter().any(|&x| x < 0) {
            return Err(Error::Weight(format!("weight {:?} is not dominant", self.coords)));
        }
        Ok(DominantLabel { coeffs: f.into_iter().map(|x| x as u32).collect() })
    }
}

/// Coefficients of the fundamental weights of a dominant weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DominantLabel {
    /// `coeffs[i]` multiplies `ω_{i+1}`.
    pub coeffs: Vec<u32>,
}

impl DominantLabel {
    /// True when every coefficient is below `p`.
    pub fn is_restricted(&self, p: u8) -> bool {
        self.coeffs.iter().all(|&c| c < p as u32)
    }
}

impl fmt::Display for DominantLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.coeffs.iter().enumerate().flat_map(|(i, &c)| std::iter::repeat_n(format!("w{}", i + 1), c as usize)).collect();
        if parts.is_empty() {
            write!(f, "L(0)")
        } else {
            write!(f, "L({})", parts.join("+"))
        }
    }
}

fn unit(ty: RootType, i: usize, sign: i64) -> Weight {
    let mut coords = vec![0; ty.len()];
    coords[i] = sign;
    let mut w = Weight { ty, coords };
    w.canonicalize();
    w
}

fn vector_weight(ty: RootType, i: usize, sign: i64) -> Weight {
    match ty {
        // a_j = X_{2j-1} has weight +L_j, b_j = X_{2j} has weight -L_j
        RootType::C { .. } => unit(ty, i / 2, if i.is_multiple_of(2) { sign } else { -sign }),
        RootType::A { .. } => unit(ty, i, sign),
    }
}

/// Weight of a basis label.
pub fn label_weight(ty: RootType, label: &BasisLabel) -> Result<Weight> {
    Ok(match label {
        BasisLabel::Unit | BasisLabel::DiagonalDifference(..) => Weight::zero(ty),
        BasisLabel::Vector(i) => vector_weight(ty, *i, 1),
        BasisLabel::Covector(i) => vector_weight(ty, *i, -1),
        BasisLabel::Wedge(s) | BasisLabel::Monomial { vars: s, .. } => {
            s.iter().fold(Weight::zero(ty), |acc, &i| acc.add(&vector_weight(ty, i, 1)))
        }
        BasisLabel::Pair(a, b) => label_weight(ty, a)?.add(&label_weight(ty, b)?),
        // E_ij = Ψ(e_j* ⊗ e_i)
        BasisLabel::MatrixUnit(i, j) => vector_weight(ty, *i, 1).add(&vector_weight(ty, *j, -1)),
        BasisLabel::Dual(a) => label_weight(ty, a)?.neg(),
    })
}

/// Weight of the basis vector with the given label in a module.
pub fn basis_weight(module: &LabeledModule, label: &BasisLabel) -> Result<Weight> {
    if module.index_of(label).is_none() {
        return Err(Error::Unlabeled);
    }
    label_weight(RootType::of(module.kind), label)
}

/// Weights of all basis vectors, in basis order.
pub fn weight_multiset(module: &LabeledModule) -> Result<Vec<Weight>> {
    let ty = RootType::of(module.kind);
    module.labels.iter().map(|l| label_weight(ty, l)).collect()
}

/// Weights of a weight-homogeneous subspace, one per basis row.
fn subspace_weights(module: &LabeledModule, s: &Submodule) -> Result<Vec<Weight>> {
    let all = weight_multiset(module)?;
    let mut out = Vec::with_capacity(s.dim());
    for r in 0..s.dim() {
        let row = s.basis().row(r);
        let mut w: Option<&Weight> = None;
        for (i, &x) in row.iter().enumerate() {
            if x == 0 {
                continue;
            }
            match w {
                None => w = Some(&all[i]),
                Some(prev) if *prev != all[i] => {
                    return Err(Error::Weight(format!("basis row {r} mixes weights {:?} and {:?}", prev.coords, all[i].coords)))
                }
                _ => {}
            }
        }
        out.push(w.expect("rref rows are nonzero").clone());
    }
    Ok(out)
}

fn unique_maximum(weights: &[Weight]) -> Result<DominantLabel> {
    let top = weights
        .iter()
        .find(|w| weights.iter().all(|o| w.dominates(o)))
        .ok_or_else(|| Error::Weight("occurring weights have no unique maximum".into()))?;
    top.to_dominant()
}

/// Highest weight of a weight-homogeneous subspace.
pub fn highest_weight(module: &LabeledModule, subspace: &Submodule) -> Result<DominantLabel> {
    unique_maximum(&subspace_weights(module, subspace)?)
}

/// Highest weight of the section `upper / lower`: the maximum of the
/// weight multiset of `upper` minus that of `lower`.
pub fn highest_weight_section(module: &LabeledModule, upper: &Submodule, lower: &Submodule) -> Result<DominantLabel> {
    let mut ws = subspace_weights(module, upper)?;
    for w in subspace_weights(module, lower)? {
        let i = ws.iter().position(|x| *x == w).ok_or_else(|| Error::Weight("lower weights are not contained in upper weights".into()))?;
        ws.swap_remove(i);
    }
    unique_maximum(&ws)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functors::{contraction_matrix, exterior_power, traceless_module};
    use crate::groups::SymplecticSpace;

    fn c(g: usize, v: Vec<i64>) -> Weight {
        Weight::new(RootType::C { g }, v).unwrap()
    }

    #[test]
    fn wedge_weights() {
        let v = LabeledModule::symplectic(&SymplecticSpace::binary(3).unwrap()).unwrap();
        let l2 = exterior_power(&v, 2).unwrap();
        let w = basis_weight(&l2, &BasisLabel::Wedge(vec![0, 2])).unwrap();
        assert_eq!(w.to_dominant().unwrap().to_string(), "L(w2)");
        let l3 = exterior_power(&v, 3).unwrap();
        let w = basis_weight(&l3, &BasisLabel::Wedge(vec![0, 2, 4])).unwrap();
        assert_eq!(w.to_dominant().unwrap().to_string(), "L(w3)");
        assert_eq!(basis_weight(&v, &BasisLabel::Vector(1)).unwrap(), c(3, vec![-1, 0, 0]));
        assert!(basis_weight(&v, &BasisLabel::Vector(9)).is_err());
    }

    #[test]
    fn order_basics() {
        let w1 = c(2, vec![1, 0]);
        let z = c(2, vec![0, 0]);
        assert!(w1.dominates(&w1));
        assert!(!w1.dominates(&z));
        assert!(c(2, vec![1, 1]).dominates(&z));
        assert!(c(2, vec![1, 1]).dominates(&c(2, vec![1, -1])));
    }

    #[test]
    fn wedge2_weight_multiset() {
        for g in 2..=5usize {
            let v = LabeledModule::symplectic(&SymplecticSpace::binary(g).unwrap()).unwrap();
            let mut got = weight_multiset(&exterior_power(&v, 2).unwrap()).unwrap();
            let mut expect = vec![Weight::zero(RootType::C { g }); g];
            for i in 0..g {
                for j in 0..g {
                    if i == j {
                        continue;
                    }
                    for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                        if i < j {
                            let mut x = vec![0; g];
                            x[i] = si;
                            x[j] = sj;
                            expect.push(c(g, x));
                        }
                    }
                }
            }
            got.sort();
            expect.sort();
            assert_eq!(got, expect);
        }
    }

    #[test]
    fn kernel_highest_weights() {
        let s = SymplecticSpace::binary(3).unwrap();
        let v = LabeledModule::symplectic(&s).unwrap();
        let l2 = exterior_power(&v, 2).unwrap();
        let k = Submodule::left_kernel_of(&contraction_matrix(&s, 2).unwrap());
        assert_eq!(highest_weight(&l2, &k).unwrap().to_string(), "L(w2)");
        let s = SymplecticSpace::binary(4).unwrap();
        let v = LabeledModule::symplectic(&s).unwrap();
        let l3 = exterior_power(&v, 3).unwrap();
        let k = Submodule::left_kernel_of(&contraction_matrix(&s, 3).unwrap());
        assert_eq!(highest_weight(&l3, &k).unwrap().to_string(), "L(w3)");
    }

    #[test]
    fn traceless_highest_weight() {
        let m = traceless_module(3, 2).unwrap();
        let full = Submodule::full(2, m.dim());
        assert_eq!(highest_weight(&m, &full).unwrap().to_string(), "L(w1+w2)");
    }

    #[test]
    fn type_a_wedges() {
        for n in 3..=6usize {
            let v = LabeledModule::special_linear(n, 2).unwrap();
            for k in 1..=3usize.min(n - 1) {
                let l = exterior_power(&v, k).unwrap();
                let hw = highest_weight(&l, &Submodule::full(2, l.dim())).unwrap();
                let mut expect = vec![0u32; n - 1];
                expect[k - 1] = 1;
                assert_eq!(hw.coeffs, expect);
            }
        }
    }

    #[test]
    fn label_format() {
        assert_eq!(DominantLabel { coeffs: vec![0, 0] }.to_string(), "L(0)");
        assert_eq!(DominantLabel { coeffs: vec![0, 2] }.to_string(), "L(w2+w2)");
        assert!(!DominantLabel { coeffs: vec![0, 2] }.is_restricted(2));
    }
}
