//! Derived representations with combinatorial basis labels: exterior
//! powers, duals, tensor products, subs and quotients, together with the
//! named equivariant maps between them.
//!
//! Maps are stored like generators: row `i` of a map holds the image of
//! source basis vector `i`, so equivariance reads `G_source * M = M * G_target`.

mod exterior;
mod linear;
mod submodule;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use exterior::{contraction_matrix, epsilon_matrix, exterior_power, omega_vector, subsets, wedge_index};
pub use linear::{
    conjugation_module, kappa_matrix, psi_check, psi_matrix, tau_matrix, traceless_module, xi_matrix, sl_dual_wedge2, sl_dual_tensor,
};
pub use submodule::{section, sub_quotient, Submodule};

use crate::error::{Error, Result};
use crate::groups::{burkhardt_generators, sl_generators, Representation, SymplecticSpace};

/// Combinatorial label of a basis vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BasisLabel {
    /// Spanning vector of a trivial module.
    Unit,
    /// Tautological basis vector `X_{i+1}` or `e_{i+1}`.
    Vector(usize),
    /// Dual basis vector `e_{i+1}^*`.
    Covector(usize),
    /// Wedge monomial on the sorted index set.
    Wedge(Vec<usize>),
    /// Pure tensor of two labels.
    Pair(Box<BasisLabel>, Box<BasisLabel>),
    /// Matrix unit `E_{i+1, j+1}`.
    MatrixUnit(usize, usize),
    /// Traceless diagonal element `E_{ii} - E_{jj}`.
    DiagonalDifference(usize, usize),
    /// Scaled product of the functions `X̄_i` (Sato and Boolean algebras).
    Monomial { scale: u8, vars: Vec<usize> },
    /// Dual of a composite label.
    Dual(Box<BasisLabel>),
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Unit => write!(f, "1"),
            BasisLabel::Vector(i) => write!(f, "X{}", i + 1),
            BasisLabel::Covector(i) => write!(f, "X{}*", i + 1),
            BasisLabel::Wedge(j) if j.is_empty() => write!(f, "1"),
            BasisLabel::Wedge(j) => {
                let parts: Vec<String> = j.iter().map(|i| format!("X{}", i + 1)).collect();
                write!(f, "{}", parts.join("^"))
            }
            BasisLabel::Pair(a, b) => write!(f, "{a}(x){b}"),
            BasisLabel::MatrixUnit(i, j) => write!(f, "E{},{}", i + 1, j + 1),
            BasisLabel::DiagonalDifference(i, j) => write!(f, "E{},{}-E{},{}", i + 1, i + 1, j + 1, j + 1),
            BasisLabel::Monomial { scale, vars } => {
                if vars.is_empty() {
                    return write!(f, "{scale}");
                }
                if *scale != 1 {
                    write!(f, "{scale}")?;
                }
                for v in vars {
                    write!(f, "X{}", v + 1)?;
                }
                Ok(())
            }
            BasisLabel::Dual(a) => write!(f, "({a})*"),
        }
    }
}

/// Which group acts, for weight bookkeeping.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModuleKind {
    /// `Sp_2g` acting through the symplectic basis.
    Symplectic { g: usize },
    /// `SL_n` acting through the standard basis.
    SpecialLinear { n: usize },
}

/// A representation whose basis vectors carry combinatorial labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledModule {
    /// The underlying representation.
    pub rep: Representation,
    /// One label per basis vector.
    pub labels: Vec<BasisLabel>,
    /// Acting group.
    pub kind: ModuleKind,
}

impl LabeledModule {
    /// Pairs a representation with labels; counts must agree.
    pub fn new(rep: Representation, labels: Vec<BasisLabel>, kind: ModuleKind) -> Result<Self> {
        if labels.len() != rep.dim() {
            return Err(Error::Dimension(format!("{} labels for dimension {}", labels.len(), rep.dim())));
        }
        Ok(LabeledModule { rep, labels, kind })
    }

    /// The tautological `Sp_2g(F_p)` module on Burkhardt's generators.
    pub fn symplectic(space: &SymplecticSpace) -> Result<Self> {
        let rep = burkhardt_generators(space)?;
        let labels = (0..rep.dim()).map(BasisLabel::Vector).collect();
        Self::new(rep, labels, ModuleKind::Symplectic { g: space.genus() })
    }

    /// The tautological `SL_n(F_p)` module.
    pub fn special_linear(n: usize, p: u8) -> Result<Self> {
        let rep = sl_generators(n, p)?;
        Self::new(rep, (0..n).map(BasisLabel::Vector).collect(), ModuleKind::SpecialLinear { n })
    }

    /// The one-dimensional trivial module for the same group.
    pub fn trivial_like(&self) -> Self {
        let rep = Representation::trivial(self.rep.p(), 1, &self.rep.names());
        LabeledModule { rep, labels: vec![BasisLabel::Unit], kind: self.kind }
    }

    /// Dimension.
    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    /// Prime.
    pub fn p(&self) -> u8 {
        self.rep.p()
    }

    /// Index of a label, if present.
    pub fn index_of(&self, label: &BasisLabel) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Unit coordinate vector of a labeled basis element.
    pub fn unit_vector(&self, label: &BasisLabel) -> Option<Vec<u8>> {
        let i = self.index_of(label)?;
        let mut v = vec![0u8; self.dim()];
        v[i] = 1;
        Some(v)
    }
}

/// The dual module with inverse-transpose generators.
pub fn dual(m: &LabeledModule) -> LabeledModule {
    let labels = m
        .labels
        .iter()
        .map(|l| match l {
            BasisLabel::Unit => BasisLabel::Unit,
            BasisLabel::Vector(i) => BasisLabel::Covector(*i),
            BasisLabel::Covector(i) => BasisLabel::Vector(*i),
            BasisLabel::Dual(inner) => (**inner).clone(),
            other => BasisLabel::Dual(Box::new(other.clone())),
        })
        .collect();
    LabeledModule { rep: m.rep.dual(), labels, kind: m.kind }
}

/// The tensor product with Kronecker-product generators; label `(i, j)`
/// sits at index `i * dim(b) + j`.
pub fn tensor(a: &LabeledModule, b: &LabeledModule) -> Result<LabeledModule> {
    if a.p() != b.p() {
        return Err(Error::PrimeMismatch(a.p(), b.p()));
    }
    if a.rep.names() != b.rep.names() {
        return Err(Error::InvalidArgument("tensor factors must share generator names".into()));
    }
    let mats = a
        .rep
        .generators()
        .iter()
        .zip(b.rep.generators())
        .map(|(x, y)| x.matrix.kron(&y.matrix))
        .collect::<Result<Vec<_>>>()?;
    let rep = a.rep.with_matrices(a.dim() * b.dim(), mats);
    let mut labels = Vec::with_capacity(a.dim() * b.dim());
    for la in &a.labels {
        for lb in &b.labels {
            labels.push(BasisLabel::Pair(Box::new(la.clone()), Box::new(lb.clone())));
        }
    }
    LabeledModule::new(rep, labels, a.kind)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_dual_is_itself() {
        let v = LabeledModule::special_linear(3, 2).unwrap();
        let t = v.trivial_like();
        assert_eq!(dual(&t), t);
    }

    #[test]
    fn dual_is_involution() {
        let v = LabeledModule::symplectic(&SymplecticSpace::new(2, 3).unwrap()).unwrap();
        assert_eq!(dual(&dual(&v)), v);
    }

    #[test]
    fn tensor_dimensions() {
        let v = LabeledModule::special_linear(4, 3).unwrap();
        assert_eq!(tensor(&dual(&v), &v).unwrap().dim(), 16);
        let t = v.trivial_like();
        let tv = tensor(&t, &v).unwrap();
        assert_eq!(tv.rep, v.rep);
    }

    #[test]
    fn prime_mismatch() {
        let a = LabeledModule::special_linear(2, 2).unwrap();
        let b = LabeledModule::special_linear(2, 3).unwrap();
        assert!(matches!(tensor(&a, &b), Err(Error::PrimeMismatch(2, 3))));
    }

    #[test]
    fn sl3_dual_orbits_match_wedge2() {
        let v = LabeledModule::special_linear(3, 2).unwrap();
        let w2 = exterior_power(&v, 2).unwrap();
        assert_eq!(dual(&v).rep.orbit_size_profile(), w2.rep.orbit_size_profile());
    }

    #[test]
    fn label_rendering() {
        assert_eq!(BasisLabel::Wedge(vec![0, 2]).to_string(), "X1^X3");
        assert_eq!(BasisLabel::Monomial { scale: 4, vars: vec![0, 1, 2] }.to_string(), "4X1X2X3");
        assert_eq!(BasisLabel::Monomial { scale: 1, vars: vec![] }.to_string(), "1");
    }
}
