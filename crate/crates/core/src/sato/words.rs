//! Products of even powers of Dehn twists, recorded through the homology
//! classes of their curves, and the factorizations used to compute images
//! of subgroups.

use serde::{Deserialize, Serialize};

use super::{basis_class, cbar, dot, QuadraticForm, Z8Function};
use crate::error::{Error, Result};

/// A formal product `Π t_{C}^{2e}` stored as `(C, e)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistWord {
    /// Classes with their exponents divided by two.
    pub entries: Vec<(u32, i64)>,
}

impl TwistWord {
    /// Builds a word; every class must be nonzero.
    pub fn new(entries: Vec<(u32, i64)>) -> Result<Self> {
        if entries.iter().any(|&(c, _)| c == 0) {
            return Err(Error::InvalidArgument("twist word contains the zero class".into()));
        }
        Ok(TwistWord { entries })
    }

    /// Concatenation.
    pub fn concat(&self, other: &TwistWord) -> TwistWord {
        TwistWord { entries: self.entries.iter().chain(&other.entries).copied().collect() }
    }

    /// `β(w) = Σ e · C̄`, the image under the additive homomorphism.
    pub fn eval(&self, q: &QuadraticForm) -> Result<Z8Function> {
        let mut acc = Z8Function::zero(q.genus())?;
        for &(c, e) in &self.entries {
            acc = acc.add(&cbar(q, c)?.scale(e));
        }
        Ok(acc)
    }
}

/// The genus-one bounding pair `t_{d1} t_{d2}^{-1}` for the chain
/// `c1, c2, c3` with `C3 = C1 + D1`:
/// `C1, C1+C2, C1+C2+C3, C2, C2+C3, C3` squared, then `D1` to the power `-2`.
pub fn bounding_pair_word(c1: u32, c2: u32, d1: u32) -> Result<TwistWord> {
    if dot(c1, c2) != 1 || dot(c1, d1) != 0 || dot(c2, d1) != 0 {
        return Err(Error::InvalidArgument("C1, C2, D1 must extend to a symplectic basis".into()));
    }
    let c3 = c1 ^ d1;
    TwistWord::new(vec![(c1, 1), (c1 ^ c2, 1), (c1 ^ c2 ^ c3, 1), (c2, 1), (c2 ^ c3, 1), (c3, 1), (d1, -1)])
}

/// The separating twist bounding a chain `c1, c2`:
/// `t_{c1}^2 t_{t2(c1)}^2 t_{t2^2(c1)}^2 t_{t2^3(c1)}^2 t_{c2}^4`.
pub fn separating_twist_word(c1: u32, c2: u32) -> Result<TwistWord> {
    if dot(c1, c2) != 1 {
        return Err(Error::InvalidArgument("chain curves must meet once".into()));
    }
    TwistWord::new(vec![(c1, 1), (c1 ^ c2, 1), (c1, 1), (c1 ^ c2, 1), (c2, 2)])
}

/// Transvection `x ↦ x + (x·c) c` on classes.
fn twist(c: u32, x: u32) -> u32 {
    if dot(x, c) == 1 {
        x ^ c
    } else {
        x
    }
}

/// The boundary twist of a genus-`g` surface with one boundary component,
/// from the chain `C1 = a1, C_{2i} = b_i, C_{2i+1} = a_i + a_{i+1}` of
/// length `k = 2g`: the classes `f^j(C1)`, `0 <= j < 2k`, with
/// `f = t_2 ∘ … ∘ t_k`, followed by `D1` to the power 4.
pub fn boundary_twist_word(g: usize) -> Result<TwistWord> {
    if g < 1 {
        return Err(Error::InvalidArgument("genus must be positive".into()));
    }
    let k = 2 * g;
    let chain: Vec<u32> = (1..=k)
        .map(|i| {
            if i == 1 {
                basis_class(0)
            } else if i % 2 == 0 {
                basis_class(i - 1)
            } else {
                basis_class(i - 3) ^ basis_class(i - 1)
            }
        })
        .collect();
    let f = |x: u32| chain[1..].iter().rev().fold(x, |acc, &c| twist(c, acc));
    let mut entries = Vec::new();
    let mut cur = chain[0];
    for _ in 0..2 * k {
        entries.push((cur, 1));
        cur = f(cur);
    }
    let d1 = chain.iter().skip(1).step_by(2).fold(0, |acc, &c| acc ^ c);
    entries.push((d1, 2));
    TwistWord::new(entries)
}

/// The genus `g-1` bounding pair `t_{α1} t_{αg}^{-1}` as the product of the
/// genus-one bounding pairs with `C_i = a_i`, `D_i = b_i`, `A_i = a_g`.
pub fn push_word(g: usize) -> Result<TwistWord> {
    if g < 2 {
        return Err(Error::InvalidArgument("push needs genus >= 2".into()));
    }
    let a_g = basis_class(2 * g - 2);
    let mut w = TwistWord::default();
    for i in 0..g - 1 {
        w = w.concat(&bounding_pair_word(basis_class(2 * i), basis_class(2 * i + 1), a_g)?);
    }
    Ok(w)
}

/// Generators of the level-`2k` subgroup: a genus-one bounding pair and
/// `t_{X1}^{2k}`.
pub fn level_word(k: u32) -> Result<Vec<TwistWord>> {
    if k == 0 {
        return Err(Error::InvalidArgument("level must be positive".into()));
    }
    Ok(vec![bounding_pair_word(basis_class(0), basis_class(1), basis_class(2))?, TwistWord::new(vec![(basis_class(0), k as i64)])?])
}
