//! Modules and maps for `SL_n(F_p)`: `V* ⊗ V`, `V* ⊗ Λ²V`, the evaluation
//! map `ξ`, the identification `Ψ` with matrices, the contractions `κ`, `τ`
//! and the traceless conjugation module.

use super::exterior::{exterior_power, subsets, wedge_index};
use super::{dual, tensor, BasisLabel, LabeledModule, ModuleKind};
use crate::error::{Error, Result};
use crate::fflinalg::{field, FFMatrix};
use crate::groups::Representation;

fn check_n(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::InvalidArgument(format!("rank must be at least {min}, got {n}")));
    }
    Ok(())
}

/// `V* ⊗ V`; basis `e_i* ⊗ e_j` at index `i * n + j`.
pub fn sl_dual_tensor(n: usize, p: u8) -> Result<LabeledModule> {
    let v = LabeledModule::special_linear(n, p)?;
    tensor(&dual(&v), &v)
}

/// `V* ⊗ Λ²V`; basis `e_i* ⊗ e_j∧e_k` at index `i * C(n,2) + idx(j,k)`.
pub fn sl_dual_wedge2(n: usize, p: u8) -> Result<LabeledModule> {
    let v = LabeledModule::special_linear(n, p)?;
    tensor(&dual(&v), &exterior_power(&v, 2)?)
}

/// `ξ: V* ⊗ V -> F`, `f ⊗ v ↦ f(v)`, as an `n² x 1` matrix.
pub fn xi_matrix(n: usize, p: u8) -> Result<FFMatrix> {
    check_n(n, 2)?;
    Ok(FFMatrix::from_fn(p, n * n, 1, |r, _| (r / n == r % n) as i64))
}

/// The module of all `n x n` matrices under conjugation; `E_ij` at `i * n + j`.
pub fn conjugation_module(n: usize, p: u8) -> Result<LabeledModule> {
    let v = LabeledModule::special_linear(n, p)?;
    let mut mats = Vec::new();
    for g in v.rep.generators() {
        let a = g.matrix.transpose();
        let ainv = a.inverse().expect("generators are invertible");
        let m = FFMatrix::from_fn(p, n * n, n * n, |row, col| {
            let (i, j) = (row / n, row % n);
            let (r, c) = (col / n, col % n);
            (a.get(r, i) as i64) * (ainv.get(j, c) as i64)
        });
        mats.push(m);
    }
    let rep = v.rep.with_matrices(n * n, mats);
    let labels = (0..n * n).map(|k| BasisLabel::MatrixUnit(k / n, k % n)).collect();
    LabeledModule::new(rep, labels, ModuleKind::SpecialLinear { n })
}

/// `Ψ: V* ⊗ V -> M_n`, `e_i* ⊗ e_j ↦ E_ji`.
pub fn psi_matrix(n: usize, p: u8) -> FFMatrix {
    FFMatrix::from_fn(p, n * n, n * n, |row, col| {
        let (i, j) = (row / n, row % n);
        (col == j * n + i) as i64
    })
}

/// Checks that `Ψ` intertwines the tensor and conjugation actions and
/// sends `Σ e_i* ⊗ e_i` to the identity matrix.
pub fn psi_check(n: usize, p: u8) -> Result<bool> {
    check_n(n, 2)?;
    let t = sl_dual_tensor(n, p)?;
    let c = conjugation_module(n, p)?;
    let psi = psi_matrix(n, p);
    let equivariant = t.rep.intertwines(&c.rep, &psi);
    let trace_elt: Vec<u8> = (0..n * n).map(|k| (k / n == k % n) as u8).collect();
    let identity: Vec<u8> = (0..n * n).map(|k| (k / n == k % n) as u8).collect();
    Ok(equivariant && psi.vec_mul(&trace_elt) == identity)
}

/// `κ: V* ⊗ Λ²V -> V`, `f ⊗ v∧w ↦ f(v)w - f(w)v`.
pub fn kappa_matrix(n: usize, p: u8) -> Result<FFMatrix> {
    check_n(n, 3)?;
    let pairs = subsets(n, 2);
    let m = pairs.len();
    let mut k = FFMatrix::zeros(p, n * m, n);
    for i in 0..n {
        for (w, jk) in pairs.iter().enumerate() {
            let (j, l) = (jk[0], jk[1]);
            let r = i * m + w;
            if i == j {
                k.set(r, l, 1);
            }
            if i == l {
                k.set(r, j, field::neg(1, p));
            }
        }
    }
    Ok(k)
}

/// `τ: V -> V* ⊗ Λ²V`, `e_k ↦ Σ_i e_i* ⊗ e_k∧e_i`.
pub fn tau_matrix(n: usize, p: u8) -> Result<FFMatrix> {
    check_n(n, 3)?;
    let idx = wedge_index(n, 2);
    let m = idx.len();
    let mut t = FFMatrix::zeros(p, n, n * m);
    for k in 0..n {
        for i in 0..n {
            if i == k {
                continue;
            }
            let (lo, hi) = (k.min(i), k.max(i));
            let c = if k < i { 1 } else { field::neg(1, p) };
            t.set(k, i * m + idx[&vec![lo, hi]], c);
        }
    }
    Ok(t)
}

/// Traceless `n x n` matrices under conjugation.
///
/// Basis: `E_ij` for `i != j` and `E_ii - E_nn` for `i < n`, in row-major
/// order of the position `(i, j)` with `(n, n)` omitted.
pub fn traceless_module(n: usize, p: u8) -> Result<LabeledModule> {
    check_n(n, 2)?;
    let full = conjugation_module(n, p)?;
    let last = n - 1;
    let positions: Vec<(usize, usize)> = (0..n * n).map(|k| (k / n, k % n)).filter(|&(i, j)| !(i == last && j == last)).collect();
    let elem = |&(i, j): &(usize, usize)| -> Vec<u8> {
        let mut v = vec![0u8; n * n];
        v[i * n + j] = 1;
        if i == j {
            v[last * n + last] = field::neg(1, p);
        }
        v
    };
    let mut mats = Vec::new();
    for g in full.rep.generators() {
        let mut m = FFMatrix::zeros(p, positions.len(), positions.len());
        for (r, pos) in positions.iter().enumerate() {
            let img = g.matrix.vec_mul(&elem(pos));
            for (c, &(i, j)) in positions.iter().enumerate() {
                let x = img[i * n + j];
                if x != 0 {
                    m.set(r, c, x);
                }
            }
        }
        mats.push(m);
    }
    let rep: Representation = full.rep.with_matrices(positions.len(), mats);
    let labels = positions
        .iter()
        .map(|&(i, j)| if i == j { BasisLabel::DiagonalDifference(i, last) } else { BasisLabel::MatrixUnit(i, j) })
        .collect();
    LabeledModule::new(rep, labels, ModuleKind::SpecialLinear { n })
}
