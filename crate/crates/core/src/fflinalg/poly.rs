//! Univariate polynomials over `F_p` and their factorization.

use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::field;
use crate::error::{Error, Result};

/// A polynomial over `F_p`, coefficients stored low to high.
///
/// The zero polynomial has no coefficients; otherwise the last
/// coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FFPoly {
    p: u8,
    coeffs: Vec<u8>,
}

impl FFPoly {
    /// Builds a polynomial, reducing coefficients and trimming zeros.
    pub fn new(p: u8, coeffs: Vec<u8>) -> Self {
        assert!(field::is_supported_prime(p), "unsupported modulus {p}");
        let mut f = FFPoly { p, coeffs: coeffs.into_iter().map(|c| c % p).collect() };
        f.trim();
        f
    }

    /// The zero polynomial.
    pub fn zero(p: u8) -> Self {
        Self::new(p, vec![])
    }

    /// The constant 1.
    pub fn one(p: u8) -> Self {
        Self::new(p, vec![1])
    }

    /// The indeterminate `x`.
    pub fn x(p: u8) -> Self {
        Self::new(p, vec![0, 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    /// The modulus.
    pub fn p(&self) -> u8 {
        self.p
    }

    /// Coefficients, low to high.
    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True for the constant 1.
    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    /// Leading coefficient; 0 for the zero polynomial.
    pub fn leading(&self) -> u8 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// Sum.
    pub fn add(&self, o: &FFPoly) -> FFPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = o.coeffs.get(i).copied().unwrap_or(0);
                field::add(a, b, self.p)
            })
            .collect();
        FFPoly::new(self.p, c)
    }

    /// Difference.
    pub fn sub(&self, o: &FFPoly) -> FFPoly {
        self.add(&o.scale(field::neg(1, self.p)))
    }

    /// Scalar multiple.
    pub fn scale(&self, c: u8) -> FFPoly {
        FFPoly::new(self.p, self.coeffs.iter().map(|&a| field::mul(a, c, self.p)).collect())
    }

    /// Product.
    pub fn mul(&self, o: &FFPoly) -> FFPoly {
        if self.is_zero() || o.is_zero() {
            return FFPoly::zero(self.p);
        }
        let p = self.p as u32;
        let mut acc = vec![0u32; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u32 * b as u32) % p;
            }
        }
        FFPoly::new(self.p, acc.into_iter().map(|x| x as u8).collect())
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn divrem(&self, d: &FFPoly) -> Result<(FFPoly, FFPoly)> {
        if d.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let p = self.p;
        let mut r = self.coeffs.clone();
        let dd = d.deg();
        if r.len() <= dd {
            return Ok((FFPoly::zero(p), self.clone()));
        }
        let li = field::inv(d.leading(), p);
        let mut q = vec![0u8; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = field::mul(r[k + dd], li, p);
            q[k] = c;
            if c != 0 {
                for (j, &b) in d.coeffs.iter().enumerate() {
                    r[k + j] = field::sub(r[k + j], field::mul(c, b, p), p);
                }
            }
        }
        r.truncate(dd);
        Ok((FFPoly::new(p, q), FFPoly::new(p, r)))
    }

    /// Remainder by a nonzero divisor.
    pub fn rem(&self, d: &FFPoly) -> FFPoly {
        self.divrem(d).expect("nonzero divisor").1
    }

    /// Exact quotient by a nonzero divisor.
    pub fn div_exact(&self, d: &FFPoly) -> FFPoly {
        self.divrem(d).expect("nonzero divisor").0
    }

    /// Monic associate; zero stays zero.
    pub fn monic(&self) -> FFPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(field::inv(self.leading(), self.p))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &FFPoly) -> FFPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Formal derivative.
    pub fn derivative(&self) -> FFPoly {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| field::mul(a, (i % self.p as usize) as u8, self.p))
            .collect();
        FFPoly::new(self.p, c)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &FFPoly) -> FFPoly {
        let mut base = self.rem(m);
        let mut acc = FFPoly::one(self.p).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Value at a scalar.
    pub fn eval(&self, x: u8) -> u8 {
        self.coeffs.iter().rev().fold(0, |acc, &c| field::add(field::mul(acc, x, self.p), c, self.p))
    }

    /// True when the polynomial is irreducible (Rabin's test).
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else { return false };
        if n == 0 {
            return false;
        }
        let f = self.monic();
        let x = FFPoly::x(self.p);
        let frob = |h: &FFPoly| h.pow_mod(self.p as u64, &f);
        let mut h = x.rem(&f);
        let mut powers = vec![h.clone()];
        for _ in 0..n {
            h = frob(&h);
            powers.push(h.clone());
        }
        if !powers[n].sub(&x).rem(&f).is_zero() {
            return false;
        }
        let primes: Vec<usize> = (2..=n).filter(|q| n % q == 0 && (2..*q).all(|d| q % d != 0)).collect();
        primes.iter().all(|q| f.gcd(&powers[n / q].sub(&x)).is_one())
    }
}

impl fmt::Debug for FFPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FFPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            })
            .collect();
        write!(f, "{} (mod {})", terms.join(" + "), self.p)
    }
}

/// Complete factorization into monic irreducibles with multiplicities.
///
/// Runs squarefree decomposition, distinct-degree splitting and
/// Cantor–Zassenhaus equal-degree splitting (trace based for `p = 2`).
/// Factors are sorted by degree, then coefficients.
pub fn factor_squarefree(f: &FFPoly, seed: u64) -> Result<Vec<(FFPoly, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(FFPoly, usize)> = Vec::new();
    for (g, mult) in squarefree_decomposition(&f.monic()) {
        for (d, h) in distinct_degree(&g) {
            for irr in equal_degree(&h, d, &mut rng) {
                match out.iter_mut().find(|(q, _)| *q == irr) {
                    Some(slot) => slot.1 += mult,
                    None => out.push((irr, mult)),
                }
            }
        }
    }
    out.sort_by(|a, b| a.0.deg().cmp(&b.0.deg()).then_with(|| a.0.coeffs.cmp(&b.0.coeffs)));
    Ok(out)
}

/// Squarefree decomposition of a monic polynomial: `f = prod g_i^{m_i}`.
pub fn squarefree_decomposition(f: &FFPoly) -> Vec<(FFPoly, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_exact(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y);
        if !fac.is_one() {
            out.push((fac.monic(), i));
        }
        w = y;
        c = c.div_exact(&w);
        i += 1;
    }
    if !c.is_one() {
        let root: Vec<u8> = c.coeffs.iter().step_by(p as usize).copied().collect();
        for (g, m) in squarefree_decomposition(&FFPoly::new(p, root).monic()) {
            out.push((g, m * p as usize));
        }
    }
    out
}

/// Splits a squarefree monic polynomial into products of equal-degree factors.
pub fn distinct_degree(f: &FFPoly) -> Vec<(usize, FFPoly)> {
    let p = f.p;
    let x = FFPoly::x(p);
    let mut rest = f.clone();
    let mut out = Vec::new();
    let mut h = x.rem(&rest);
    let mut d = 1;
    while rest.deg() >= 2 * d {
        h = h.pow_mod(p as u64, &rest);
        let g = rest.gcd(&h.sub(&x));
        if !g.is_one() {
            rest = rest.div_exact(&g);
            h = h.rem(&rest);
            out.push((d, g));
        }
        d += 1;
    }
    if rest.deg() > 0 {
        out.push((rest.deg(), rest.monic()));
    }
    out
}

/// Splits a squarefree product of irreducibles of degree `d`.
pub fn equal_degree(f: &FFPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FFPoly> {
    let n = f.deg();
    if n == d {
        return vec![f.monic()];
    }
    let p = f.p;
    loop {
        let a = FFPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.deg() == 0 {
            continue;
        }
        let t = if p == 2 {
            let mut acc = a.rem(f);
            let mut cur = acc.clone();
            for _ in 1..d {
                cur = cur.mul(&cur).rem(f);
                acc = acc.add(&cur);
            }
            acc
        } else {
            let mut b = FFPoly::one(p);
            let mut cur = a.rem(f);
            for _ in 0..d {
                b = b.mul(&cur).rem(f);
                cur = cur.pow_mod(p as u64, f);
            }
            b.pow_mod(((p - 1) / 2) as u64, f).sub(&FFPoly::one(p))
        };
        let g = f.gcd(&t);
        if g.deg() > 0 && g.deg() < n {
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&f.div_exact(&g), d, rng));
            return out;
        }
    }
}
