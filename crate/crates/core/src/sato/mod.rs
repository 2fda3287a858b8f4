//! The `Z/8` function algebra on `H_1(Σ_g; F_2)`.
//!
//! Homology classes are bit masks: bit `i` is the coefficient of `X_{i+1}`
//! in the symplectic basis `a1, b1, a2, b2, ...`. A function is stored as
//! its values on all `4^g` classes, indexed by the mask.

mod basis;
mod wmod2;
mod words;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use basis::{
    dump_lines, monomial_basis, verify_sato_basis, verify_sato_candidates, w_coordinates, w_mod2_coordinates, Monomial, SatoBasisReport,
};
pub use wmod2::{subgroup_image, w_index, w_mod2_representation, w_mod2_vector, SubgroupKind};
pub use words::{boundary_twist_word, bounding_pair_word, level_word, push_word, separating_twist_word, TwistWord};

use crate::error::{Error, Result};

/// Largest supported genus for dense function tables.
pub const MAX_GENUS: usize = 6;

const EVEN_BITS: u32 = 0x5555_5555;

/// Intersection number mod 2 of two classes.
pub fn dot(x: u32, y: u32) -> u32 {
    let t = (x & EVEN_BITS) & ((y >> 1) & EVEN_BITS);
    let s = ((x >> 1) & EVEN_BITS) & (y & EVEN_BITS);
    (t.count_ones() + s.count_ones()) & 1
}

/// Number of blocks `{a_i, b_i}` fully contained in the support of `x`.
pub fn blocks_in(x: u32) -> u32 {
    ((x & EVEN_BITS) & ((x >> 1) & EVEN_BITS)).count_ones()
}

/// Class of the single basis vector `X_{i+1}`.
pub fn basis_class(i: usize) -> u32 {
    1 << i
}

fn check_genus(g: usize) -> Result<()> {
    if g == 0 || g > MAX_GENUS {
        return Err(Error::InvalidArgument(format!("genus must be in 1..={MAX_GENUS}, got {g}")));
    }
    Ok(())
}

/// A symplectic quadratic form `q` with `q(x+y) = q(x) + q(y) + x·y`,
/// determined by its values on the basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadraticForm {
    g: usize,
    basis_values: u32,
}

impl QuadraticForm {
    /// The form with the given basis values (bit `i` is `q(X_{i+1})`).
    pub fn new(g: usize, basis_values: u32) -> Result<Self> {
        check_genus(g)?;
        Ok(QuadraticForm { g, basis_values: basis_values & ((1u32 << (2 * g)) - 1) })
    }

    /// The form vanishing on every basis vector.
    pub fn zero(g: usize) -> Result<Self> {
        Self::new(g, 0)
    }

    /// Genus.
    pub fn genus(&self) -> usize {
        self.g
    }

    /// Basis values as a bit mask.
    pub fn basis_values(&self) -> u32 {
        self.basis_values
    }

    /// `q(x)` via the extension rule.
    pub fn eval(&self, x: u32) -> u32 {
        ((x & self.basis_values).count_ones() + blocks_in(x)) & 1
    }

    /// Arf invariant: majority value of `q`.
    pub fn arf(&self) -> u32 {
        let ones = (0..1u32 << (2 * self.g)).filter(|&x| self.eval(x) == 1).count();
        (ones > (1usize << (2 * self.g)) / 2) as u32
    }
}

/// A function `H_1(Σ_g; F_2) -> Z/8`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Z8Function {
    g: usize,
    values: Vec<u8>,
}

impl Z8Function {
    /// The zero function.
    pub fn zero(g: usize) -> Result<Self> {
        check_genus(g)?;
        Ok(Z8Function { g, values: vec![0; 1 << (2 * g)] })
    }

    /// The constant function.
    pub fn constant(g: usize, c: u8) -> Result<Self> {
        check_genus(g)?;
        Ok(Z8Function { g, values: vec![c & 7; 1 << (2 * g)] })
    }

    /// Builds from a value table of length `4^g`.
    pub fn from_values(g: usize, values: Vec<u8>) -> Result<Self> {
        check_genus(g)?;
        if values.len() != 1 << (2 * g) {
            return Err(Error::Dimension(format!("{} values for genus {g}", values.len())));
        }
        Ok(Z8Function { g, values: values.into_iter().map(|v| v & 7).collect() })
    }

    /// Genus.
    pub fn genus(&self) -> usize {
        self.g
    }

    /// Value table.
    pub fn values(&self) -> &[u8] {
        &self.values
    }

    /// Value at a class.
    pub fn at(&self, x: u32) -> u8 {
        self.values[x as usize]
    }

    fn zip(&self, o: &Z8Function, f: impl Fn(u8, u8) -> u8) -> Z8Function {
        assert_eq!(self.g, o.g, "genus mismatch");
        Z8Function { g: self.g, values: self.values.iter().zip(&o.values).map(|(&a, &b)| f(a, b) & 7).collect() }
    }

    /// Pointwise sum.
    pub fn add(&self, o: &Z8Function) -> Z8Function {
        self.zip(o, |a, b| a.wrapping_add(b))
    }

    /// Pointwise difference.
    pub fn sub(&self, o: &Z8Function) -> Z8Function {
        self.zip(o, |a, b| a.wrapping_sub(b))
    }

    /// Pointwise product.
    pub fn mul(&self, o: &Z8Function) -> Z8Function {
        self.zip(o, |a, b| a.wrapping_mul(b))
    }

    /// Scalar multiple by an integer.
    pub fn scale(&self, c: i64) -> Z8Function {
        let c = c.rem_euclid(8) as u8;
        Z8Function { g: self.g, values: self.values.iter().map(|&a| a.wrapping_mul(c) & 7).collect() }
    }

    /// True when all values vanish.
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Precomposition `x ↦ self(x * m)` with a matrix acting on row vectors.
    pub fn precompose(&self, m: &crate::fflinalg::FFMatrix) -> Z8Function {
        let n = 2 * self.g;
        let images: Vec<u32> = (0..n)
            .map(|i| (0..n).filter(|&j| m.get(i, j) == 1).fold(0u32, |acc, j| acc | (1 << j)))
            .collect();
        let values = (0..self.values.len() as u32)
            .map(|x| {
                let y = (0..n).filter(|&i| x >> i & 1 == 1).fold(0u32, |acc, i| acc ^ images[i]);
                self.values[y as usize]
            })
            .collect();
        Z8Function { g: self.g, values }
    }

    /// Values as hexadecimal digits in index order.
    pub fn to_hex(&self) -> String {
        self.values.iter().map(|v| char::from_digit(*v as u32, 16).expect("residue below 8")).collect()
    }
}

impl fmt::Debug for Z8Function {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z8Function(g={}, {})", self.g, self.to_hex())
    }
}

/// `i_z(y) = z·y mod 2`, valued in `{0, 1} ⊂ Z/8`.
pub fn i_function(g: usize, z: u32) -> Result<Z8Function> {
    check_genus(g)?;
    if z == 0 {
        return Err(Error::InvalidArgument("i_z needs a nonzero class".into()));
    }
    let values = (0..1u32 << (2 * g)).map(|y| dot(z, y) as u8).collect();
    Ok(Z8Function { g, values })
}

/// `C̄ = (-1)^{q(C)} i_C`.
pub fn cbar(q: &QuadraticForm, c: u32) -> Result<Z8Function> {
    let f = i_function(q.genus(), c)?;
    Ok(if q.eval(c) == 1 { f.scale(-1) } else { f })
}
