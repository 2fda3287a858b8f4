//! Exterior powers of the tautological module and the symplectic maps
//! `δ_k`, `ω` and `ε`.

use std::collections::HashMap;

use super::{BasisLabel, LabeledModule};
use crate::error::{Error, Result};
use crate::fflinalg::{field, FFMatrix};
use crate::groups::SymplecticSpace;

/// All `k`-subsets of `0..n` as sorted tuples in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Map from sorted subset to its position in [`subsets`].
pub fn wedge_index(n: usize, k: usize) -> HashMap<Vec<usize>, usize> {
    subsets(n, k).into_iter().enumerate().map(|(i, s)| (s, i)).collect()
}

/// Expands `v_1 ∧ ... ∧ v_k` into sorted wedge monomials with signs.
pub(crate) fn wedge_expand(vectors: &[Vec<u8>], p: u8) -> HashMap<Vec<usize>, u8> {
    let mut acc: HashMap<Vec<usize>, u8> = HashMap::from([(Vec::new(), 1u8)]);
    for v in vectors {
        let mut next: HashMap<Vec<usize>, u8> = HashMap::new();
        for (set, c) in &acc {
            for (i, &x) in v.iter().enumerate() {
                let x = x % p;
                if x == 0 || set.binary_search(&i).is_ok() {
                    continue;
                }
                let pos = set.partition_point(|&j| j < i);
                let after = set.len() - pos;
                let mut coef = field::mul(*c, x, p);
                if after % 2 == 1 {
                    coef = field::neg(coef, p);
                }
                let mut s = set.clone();
                s.insert(pos, i);
                let e = next.entry(s).or_insert(0);
                *e = field::add(*e, coef, p);
            }
        }
        next.retain(|_, c| *c != 0);
        acc = next;
    }
    acc
}

/// `Λ^k` of a tautological labeled module, `0 <= k <= min(5, dim)`.
pub fn exterior_power(base: &LabeledModule, k: usize) -> Result<LabeledModule> {
    let n = base.dim();
    if k > n || k > 5 {
        return Err(Error::InvalidArgument(format!("exterior degree {k} out of range for dimension {n}")));
    }
    if base.labels.iter().enumerate().any(|(i, l)| *l != BasisLabel::Vector(i)) {
        return Err(Error::InvalidArgument("exterior powers need a tautological module".into()));
    }
    let p = base.p();
    let sets = subsets(n, k);
    let index = wedge_index(n, k);
    let mut mats = Vec::new();
    for g in base.rep.generators() {
        let rows = g.matrix.to_rows();
        let mut m = FFMatrix::zeros(p, sets.len(), sets.len());
        for (r, set) in sets.iter().enumerate() {
            let vecs: Vec<Vec<u8>> = set.iter().map(|&j| rows[j].clone()).collect();
            for (s, c) in wedge_expand(&vecs, p) {
                m.set(r, index[&s], c);
            }
        }
        mats.push(m);
    }
    let rep = base.rep.with_matrices(sets.len(), mats);
    LabeledModule::new(rep, sets.into_iter().map(BasisLabel::Wedge).collect(), base.kind)
}

/// Matrix of `δ_k: Λ^k -> Λ^{k-2}`,
/// `w_1∧…∧w_k ↦ Σ_{i<j} (-1)^{i+j-1} Q(w_i, w_j) w_1∧…ŵ_i…ŵ_j…∧w_k`.
pub fn contraction_matrix(space: &SymplecticSpace, k: usize) -> Result<FFMatrix> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("contraction needs degree >= 2, got {k}")));
    }
    let n = space.dim();
    let p = space.p();
    let src = subsets(n, k);
    let dst = wedge_index(n, k - 2);
    let mut m = FFMatrix::zeros(p, src.len(), dst.len());
    for (r, set) in src.iter().enumerate() {
        for a in 0..k {
            for b in a + 1..k {
                let q = space.basis_pairing(set[a], set[b]);
                if q == 0 {
                    continue;
                }
                // positions are 1-based in the sign (-1)^{i+j-1}
                let sign_odd = (a + 1 + b + 1 - 1) % 2 == 1;
                let c = if sign_odd { field::neg(q, p) } else { q };
                let rest: Vec<usize> = set.iter().enumerate().filter(|&(i, _)| i != a && i != b).map(|(_, &x)| x).collect();
                let col = dst[&rest];
                m.set(r, col, field::add(m.get(r, col), c, p));
            }
        }
    }
    Ok(m)
}

/// Coordinates of `ω = Σ X_{2i-1} ∧ X_{2i}` in `Λ^2`.
pub fn omega_vector(space: &SymplecticSpace) -> Vec<u8> {
    let idx = wedge_index(space.dim(), 2);
    let mut v = vec![0u8; idx.len()];
    for i in 0..space.genus() {
        v[idx[&vec![2 * i, 2 * i + 1]]] = 1;
    }
    v
}

/// Matrix of `ε: V -> Λ^3`, `v ↦ ω ∧ v`.
pub fn epsilon_matrix(space: &SymplecticSpace) -> FFMatrix {
    let n = space.dim();
    let p = space.p();
    let idx = wedge_index(n, 3);
    let mut m = FFMatrix::zeros(p, n, idx.len());
    for i in 0..n {
        let mut e = vec![0u8; n];
        e[i] = 1;
        for blk in 0..space.genus() {
            let mut a = vec![0u8; n];
            a[2 * blk] = 1;
            let mut b = vec![0u8; n];
            b[2 * blk + 1] = 1;
            for (s, c) in wedge_expand(&[a, b, e.clone()], p) {
                let col = idx[&s];
                m.set(i, col, field::add(m.get(i, col), c, p));
            }
        }
    }
    m
}
