//! Linear algebra over `Z/8`.
//!
//! Elimination uses row and column operations with pivots of minimal
//! 2-adic valuation, which reduces a matrix to a diagonal of powers of 2.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A vector of residues mod 8.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Z8Vector(pub Vec<u8>);

impl Z8Vector {
    /// Builds a vector, reducing entries mod 8.
    pub fn new(entries: Vec<u8>) -> Self {
        Z8Vector(entries.into_iter().map(|v| v & 7).collect())
    }

    /// Length.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// True when empty.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// 2-adic valuation of a nonzero residue mod 8.
pub fn valuation(a: u8) -> u32 {
    debug_assert!(a & 7 != 0);
    (a & 7).trailing_zeros()
}

fn unit_inverse(u: u8) -> u8 {
    // odd residues are self-inverse mod 8
    u & 7
}

/// Diagonal reduction `L * A * R = D` of a matrix over `Z/8`.
struct Smith {
    /// Valuations of the diagonal entries, one per pivot.
    vals: Vec<u32>,
    /// Left transform, `m x m`.
    left: Vec<Vec<u8>>,
    /// Extra rows carried through the column operations.
    extra: Vec<Vec<u8>>,
}

fn smith(rows: &[Z8Vector], extra: &[Z8Vector], track_left: bool) -> Smith {
    let m = rows.len();
    let n = rows.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<u8>> = rows.iter().map(|r| r.0.clone()).collect();
    let mut ex: Vec<Vec<u8>> = extra.iter().map(|r| r.0.clone()).collect();
    let mut left: Vec<Vec<u8>> = if track_left {
        (0..m).map(|i| (0..m).map(|j| (i == j) as u8).collect()).collect()
    } else {
        Vec::new()
    };
    let mut vals = Vec::new();
    let mut k = 0;
    while k < m && k < n {
        let mut best: Option<(u32, usize, usize)> = None;
        'search: for (i, row) in a.iter().enumerate().skip(k) {
            for (j, &x) in row.iter().enumerate().skip(k) {
                if x != 0 {
                    let v = valuation(x);
                    if best.is_none_or(|b| v < b.0) {
                        best = Some((v, i, j));
                        if v == 0 {
                            break 'search;
                        }
                    }
                }
            }
        }
        let Some((v, pi, pj)) = best else { break };
        a.swap(k, pi);
        if track_left {
            left.swap(k, pi);
        }
        if pj != k {
            for row in a.iter_mut().chain(ex.iter_mut()) {
                row.swap(k, pj);
            }
        }
        let u = unit_inverse(a[k][k] >> v);
        if u != 1 {
            for x in &mut a[k] {
                *x = x.wrapping_mul(u) & 7;
            }
            if track_left {
                for x in &mut left[k] {
                    *x = x.wrapping_mul(u) & 7;
                }
            }
        }
        let pivot_row = a[k].clone();
        let pivot_left = if track_left { left[k].clone() } else { Vec::new() };
        for r in k + 1..m {
            let f = a[r][k] >> v;
            if f == 0 {
                continue;
            }
            for (x, &y) in a[r].iter_mut().zip(&pivot_row) {
                *x = x.wrapping_sub(f.wrapping_mul(y)) & 7;
            }
            if track_left {
                for (x, &y) in left[r].iter_mut().zip(&pivot_left) {
                    *x = x.wrapping_sub(f.wrapping_mul(y)) & 7;
                }
            }
        }
        for c in k + 1..n {
            let f = a[k][c] >> v;
            if f == 0 {
                continue;
            }
            for row in a.iter_mut().skip(k).chain(ex.iter_mut()) {
                let y = row[k];
                row[c] = row[c].wrapping_sub(f.wrapping_mul(y)) & 7;
            }
        }
        vals.push(v);
        k += 1;
    }
    Smith { vals, left, extra: ex }
}

fn check_lengths(span: &[Z8Vector], n: usize) -> Result<()> {
    if let Some(bad) = span.iter().position(|s| s.len() != n) {
        return Err(Error::Dimension(format!("span vector {bad} has length {} but expected {n}", span[bad].len())));
    }
    Ok(())
}

/// Decides whether `v` lies in the `Z/8`-span of `span`.
///
/// Returns witness coefficients `x` with `sum x_i span_i = v` when it does.
pub fn z8_solve_membership(span: &[Z8Vector], v: &Z8Vector) -> Result<Option<Vec<u8>>> {
    let n = v.len();
    check_lengths(span, n)?;
    if span.is_empty() {
        return Ok(v.0.iter().all(|&x| x == 0).then(Vec::new));
    }
    let s = smith(span, std::slice::from_ref(v), true);
    let w = &s.extra[0];
    let m = span.len();
    let mut y = vec![0u8; m];
    for (k, &val) in s.vals.iter().enumerate() {
        let x = w[k];
        if x != 0 && valuation(x) < val {
            return Ok(None);
        }
        y[k] = x >> val;
    }
    if w.iter().skip(s.vals.len()).any(|&x| x != 0) {
        return Ok(None);
    }
    let mut coeffs = vec![0u8; m];
    for (k, &yk) in y.iter().enumerate() {
        if yk == 0 {
            continue;
        }
        for (c, &l) in coeffs.iter_mut().zip(&s.left[k]) {
            *c = c.wrapping_add(yk.wrapping_mul(l)) & 7;
        }
    }
    Ok(Some(coeffs))
}

/// Base-2 logarithm of the order of the subgroup spanned by `span`.
pub fn z8_span_order_log2(span: &[Z8Vector]) -> Result<u32> {
    let n = span.first().map_or(0, |r| r.len());
    check_lengths(span, n)?;
    Ok(smith(span, &[], false).vals.iter().map(|v| 3 - v).sum())
}

/// Base-2 logarithm of the additive order of a single vector.
pub fn z8_order_log2(v: &Z8Vector) -> u32 {
    v.0.iter().filter(|&&x| x != 0).map(|&x| 3 - valuation(x)).max().unwrap_or(0)
}

/// `sum c_i v_i` over `Z/8`.
pub fn z8_combine(span: &[Z8Vector], coeffs: &[u8]) -> Z8Vector {
    let n = span.first().map_or(0, |r| r.len());
    let mut out = vec![0u8; n];
    for (v, &c) in span.iter().zip(coeffs) {
        for (o, &x) in out.iter_mut().zip(&v.0) {
            *o = o.wrapping_add(c.wrapping_mul(x)) & 7;
        }
    }
    Z8Vector(out)
}
