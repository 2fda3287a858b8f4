//! The Boolean algebra `B³`: multilinear polynomials of degree at most 3 in
//! the functions `X̄_i` over `F_2`, with `(x+y)‾ = x̄ + ȳ + x·y` and
//! `x̄² = x̄`, acted on by substitution.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::fflinalg::FFMatrix;
use crate::functors::{subsets, BasisLabel, LabeledModule, ModuleKind, Submodule};
use crate::groups::{burkhardt_generators, SymplecticSpace};
use crate::sato::{blocks_in, MAX_GENUS};

/// Multilinear polynomial over `F_2`; each monomial is a bit mask of variables.
type Poly = BTreeSet<u32>;

fn toggle(p: &mut Poly, m: u32) {
    if !p.remove(&m) {
        p.insert(m);
    }
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for &x in a {
        for &y in b {
            toggle(&mut out, x | y);
        }
    }
    out
}

/// `x̄` expanded in the variables: `Σ_{i ∈ x} X̄_i + (number of blocks in x)`.
fn class_poly(x: u32) -> Poly {
    let mut p: Poly = (0..32).filter(|&i| x >> i & 1 == 1).map(|i| 1u32 << i).collect();
    if blocks_in(x) & 1 == 1 {
        toggle(&mut p, 0);
    }
    p
}

/// Monomial masks of the basis, degree then lexicographic.
fn basis_masks(g: usize) -> Vec<u32> {
    (0..=3).flat_map(|d| subsets(2 * g, d)).map(|s| s.iter().fold(0u32, |a, &i| a | 1 << i)).collect()
}

fn check_genus(g: usize) -> Result<()> {
    if g == 0 || g > MAX_GENUS {
        return Err(Error::InvalidArgument(format!("genus must be in 1..={MAX_GENUS}, got {g}")));
    }
    Ok(())
}

/// Dimension `1 + 2g + C(2g,2) + C(2g,3)`.
pub fn b3_dim(g: usize) -> usize {
    let n = 2 * g;
    1 + n + n * (n - 1) / 2 + n * (n - 1) * (n - 2) / 6
}

/// An element of `B³` as coefficients in the monomial basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct B3Element {
    g: usize,
    coeffs: Vec<u8>,
}

impl B3Element {
    fn from_poly(g: usize, p: &Poly) -> Result<Self> {
        let index: HashMap<u32, usize> = basis_masks(g).into_iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut coeffs = vec![0u8; index.len()];
        for m in p {
            let i = index.get(m).ok_or_else(|| Error::Internal(format!("monomial of degree {} in B3", m.count_ones())))?;
            coeffs[*i] = 1;
        }
        Ok(B3Element { g, coeffs })
    }

    /// Genus.
    pub fn genus(&self) -> usize {
        self.g
    }

    /// Coefficients in the basis `1, X̄_i, X̄_iX̄_j, X̄_iX̄_jX̄_k`.
    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    /// Sum.
    pub fn add(&self, o: &B3Element) -> B3Element {
        B3Element { g: self.g, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a ^ b).collect() }
    }

    /// Nonzero terms as labels.
    pub fn terms(&self) -> Vec<BasisLabel> {
        let labels = b3_labels(self.g);
        self.coeffs.iter().zip(labels).filter(|(&c, _)| c == 1).map(|(_, l)| l).collect()
    }
}

fn b3_labels(g: usize) -> Vec<BasisLabel> {
    (0..=3).flat_map(|d| subsets(2 * g, d)).map(|vars| BasisLabel::Monomial { scale: 1, vars }).collect()
}

/// Normal form of the product `x̄_1 ⋯ x̄_r` of class functions.
pub fn b3_reduce(g: usize, factors: &[u32]) -> Result<B3Element> {
    check_genus(g)?;
    let top = 1u32 << (2 * g);
    if factors.iter().any(|&x| x >= top) {
        return Err(Error::InvalidArgument(format!("class outside H_1 of genus {g}")));
    }
    let mut p: Poly = [0u32].into_iter().collect();
    for &x in factors {
        p = poly_mul(&p, &class_poly(x));
    }
    B3Element::from_poly(g, &p)
}

/// `B³` as a representation of `Sp_2g(F_2)` on Burkhardt's generators.
pub fn b3_representation(g: usize) -> Result<LabeledModule> {
    check_genus(g)?;
    let taut = burkhardt_generators(&SymplecticSpace::binary(g)?)?;
    let masks = basis_masks(g);
    let n = masks.len();
    let mut mats = Vec::new();
    for gen in taut.generators() {
        let images: Vec<Poly> = (0..2 * g)
            .map(|r| class_poly((0..2 * g).filter(|&c| gen.matrix.get(r, c) == 1).fold(0u32, |a, c| a | 1 << c)))
            .collect();
        let mut m = FFMatrix::zeros(2, n, n);
        for (r, &mask) in masks.iter().enumerate() {
            let mut p: Poly = [0u32].into_iter().collect();
            for (i, img) in images.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    p = poly_mul(&p, img);
                }
            }
            let e = B3Element::from_poly(g, &p)?;
            for (c, &x) in e.coeffs.iter().enumerate() {
                if x != 0 {
                    m.set(r, c, 1);
                }
            }
        }
        mats.push(m);
    }
    LabeledModule::new(taut.with_matrices(n, mats), b3_labels(g), ModuleKind::Symplectic { g })
}

/// The filtration `K ⊂ L ⊂ Q ⊂ B³` by degree: constants, degree at most 1,
/// degree at most 2.
pub fn b3_filtration(g: usize) -> Result<[Submodule; 3]> {
    check_genus(g)?;
    let masks = basis_masks(g);
    let n = masks.len();
    let upto = |d: u32| -> Result<Submodule> {
        let rows: Vec<Vec<u8>> = masks
            .iter()
            .enumerate()
            .filter(|(_, m)| m.count_ones() <= d)
            .map(|(i, _)| {
                let mut v = vec![0u8; n];
                v[i] = 1;
                v
            })
            .collect();
        Submodule::from_vectors(2, n, &rows)
    };
    Ok([upto(0)?, upto(1)?, upto(2)?])
}
