//! Dense matrices over prime fields.
//!
//! Over `F_2` rows are packed into `u64` words; other primes use one byte
//! per entry. Both layouts expose the same observable behaviour, and a
//! packed matrix can be forced into the byte layout for cross-checking.

use std::fmt;

use super::field;
use super::poly::FFPoly;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
enum Storage {
    Packed { stride: usize, words: Vec<u64> },
    Bytes(Vec<u8>),
}

/// A dense `rows x cols` matrix over `F_p`.
#[derive(Clone)]
pub struct FFMatrix {
    p: u8,
    rows: usize,
    cols: usize,
    data: Storage,
}

/// Result of a reduced row echelon computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    /// The reduced matrix, same shape as the input.
    pub matrix: FFMatrix,
    /// Number of nonzero rows.
    pub rank: usize,
    /// Pivot column of each nonzero row, increasing.
    pub pivots: Vec<usize>,
}

fn words_for(cols: usize) -> usize {
    cols.div_ceil(64)
}

impl FFMatrix {
    /// The zero matrix; packed when `p = 2`.
    pub fn zeros(p: u8, rows: usize, cols: usize) -> Self {
        assert!(field::is_supported_prime(p), "unsupported modulus {p}");
        let data = if p == 2 {
            let stride = words_for(cols);
            Storage::Packed { stride, words: vec![0; stride * rows] }
        } else {
            Storage::Bytes(vec![0; rows * cols])
        };
        FFMatrix { p, rows, cols, data }
    }

    /// The zero matrix in the byte layout regardless of `p`.
    pub fn zeros_unpacked(p: u8, rows: usize, cols: usize) -> Self {
        assert!(field::is_supported_prime(p), "unsupported modulus {p}");
        FFMatrix { p, rows, cols, data: Storage::Bytes(vec![0; rows * cols]) }
    }

    /// The `n x n` identity.
    pub fn identity(p: u8, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix entry by entry; values are reduced mod `p`.
    pub fn from_fn(p: u8, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut m = Self::zeros(p, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = field::from_i64(f(i, j), p);
                if v != 0 {
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    /// Builds a matrix from explicit rows of length `cols`.
    pub fn from_rows(p: u8, cols: usize, rows: &[Vec<u8>]) -> Result<Self> {
        let mut m = Self::zeros(p, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension(format!("row {i} has length {} but expected {cols}", r.len())));
            }
            for (j, &v) in r.iter().enumerate() {
                let v = v % p;
                if v != 0 {
                    m.set(i, j, v);
                }
            }
        }
        Ok(m)
    }

    /// The prime modulus.
    pub fn p(&self) -> u8 {
        self.p
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// True when `rows == cols`.
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// True when rows are stored as packed bit words.
    pub fn is_packed(&self) -> bool {
        matches!(self.data, Storage::Packed { .. })
    }

    /// Copy of this matrix in the byte layout.
    pub fn to_unpacked(&self) -> Self {
        let mut m = Self::zeros_unpacked(self.p, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j));
            }
        }
        m
    }

    /// Copy of this matrix in the default layout for its modulus.
    pub fn to_default_layout(&self) -> Self {
        let mut m = Self::zeros(self.p, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j));
            }
        }
        m
    }

    /// Entry `(i, j)`.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        debug_assert!(i < self.rows && j < self.cols);
        match &self.data {
            Storage::Packed { stride, words } => ((words[i * stride + j / 64] >> (j % 64)) & 1) as u8,
            Storage::Bytes(b) => b[i * self.cols + j],
        }
    }

    /// Sets entry `(i, j)` to `v mod p`.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        debug_assert!(i < self.rows && j < self.cols);
        let v = v % self.p;
        match &mut self.data {
            Storage::Packed { stride, words } => {
                let w = &mut words[i * *stride + j / 64];
                if v == 1 {
                    *w |= 1u64 << (j % 64);
                } else {
                    *w &= !(1u64 << (j % 64));
                }
            }
            Storage::Bytes(b) => b[i * self.cols + j] = v,
        }
    }

    /// Row `i` as a vector of residues.
    pub fn row(&self, i: usize) -> Vec<u8> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    /// All rows as vectors.
    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> Vec<u8> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// True when row `i` is zero.
    pub fn row_is_zero(&self, i: usize) -> bool {
        match &self.data {
            Storage::Packed { stride, words } => words[i * stride..(i + 1) * stride].iter().all(|&w| w == 0),
            Storage::Bytes(b) => b[i * self.cols..(i + 1) * self.cols].iter().all(|&v| v == 0),
        }
    }

    /// True when every entry is zero.
    pub fn is_zero(&self) -> bool {
        match &self.data {
            Storage::Packed { words, .. } => words.iter().all(|&w| w == 0),
            Storage::Bytes(b) => b.iter().all(|&v| v == 0),
        }
    }

    /// First nonzero column of row `i` at or after `from`.
    pub fn first_nonzero_in_row(&self, i: usize, from: usize) -> Option<usize> {
        match &self.data {
            Storage::Packed { stride, words } => {
                let row = &words[i * stride..(i + 1) * stride];
                let mut w = from / 64;
                if w >= *stride {
                    return None;
                }
                let mut cur = row[w] & (!0u64 << (from % 64));
                loop {
                    if cur != 0 {
                        let j = w * 64 + cur.trailing_zeros() as usize;
                        return (j < self.cols).then_some(j);
                    }
                    w += 1;
                    if w >= *stride {
                        return None;
                    }
                    cur = row[w];
                }
            }
            Storage::Bytes(b) => (from..self.cols).find(|&j| b[i * self.cols + j] != 0),
        }
    }

    /// Swaps rows `a` and `b`.
    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        match &mut self.data {
            Storage::Packed { stride, words } => {
                for k in 0..*stride {
                    words.swap(a * *stride + k, b * *stride + k);
                }
            }
            Storage::Bytes(v) => {
                for k in 0..self.cols {
                    v.swap(a * self.cols + k, b * self.cols + k);
                }
            }
        }
    }

    /// Multiplies row `i` by `c`.
    pub fn scale_row(&mut self, i: usize, c: u8) {
        let c = c % self.p;
        match &mut self.data {
            Storage::Packed { stride, words } => {
                if c == 0 {
                    words[i * *stride..(i + 1) * *stride].fill(0);
                }
            }
            Storage::Bytes(v) => {
                if c == 1 {
                    return;
                }
                let t = field::mul_table(c, self.p);
                for x in &mut v[i * self.cols..(i + 1) * self.cols] {
                    *x = t[*x as usize];
                }
            }
        }
    }

    /// `row[dst] += c * row[src]`, touching only columns `>= from`.
    pub fn add_scaled_row(&mut self, dst: usize, src: usize, c: u8, from: usize) {
        let c = c % self.p;
        if c == 0 || dst == src {
            if dst == src && c != 0 {
                self.scale_row(dst, field::add(1, c, self.p));
            }
            return;
        }
        let p = self.p;
        let cols = self.cols;
        match &mut self.data {
            Storage::Packed { stride, words } => {
                let s = *stride;
                let w0 = from / 64;
                for k in w0..s {
                    let v = words[src * s + k];
                    words[dst * s + k] ^= v;
                }
            }
            Storage::Bytes(v) => {
                let t = field::mul_table(c, p);
                for k in from..cols {
                    let a = v[src * cols + k];
                    if a != 0 {
                        let x = v[dst * cols + k] + t[a as usize];
                        v[dst * cols + k] = if x >= p { x - p } else { x };
                    }
                }
            }
        }
    }

    /// `row[dst] += c * other.row[src]`.
    pub fn add_scaled_row_from(&mut self, dst: usize, other: &FFMatrix, src: usize, c: u8) {
        assert_eq!(self.cols, other.cols, "column mismatch");
        let c = c % self.p;
        if c == 0 {
            return;
        }
        let p = self.p;
        let cols = self.cols;
        match (&mut self.data, &other.data) {
            (Storage::Packed { stride, words }, Storage::Packed { words: ow, .. }) => {
                let s = *stride;
                for k in 0..s {
                    words[dst * s + k] ^= ow[src * s + k];
                }
            }
            (Storage::Bytes(v), Storage::Bytes(ov)) => {
                let t = field::mul_table(c, p);
                for k in 0..cols {
                    let a = ov[src * cols + k];
                    if a != 0 {
                        let x = v[dst * cols + k] + t[a as usize];
                        v[dst * cols + k] = if x >= p { x - p } else { x };
                    }
                }
            }
            _ => {
                for k in 0..cols {
                    let a = other.get(src, k);
                    if a != 0 {
                        let x = field::add(self.get(dst, k), field::mul(c, a, p), p);
                        self.set(dst, k, x);
                    }
                }
            }
        }
    }

    /// Appends a row; its length must equal `cols`.
    pub fn push_row(&mut self, v: &[u8]) {
        assert_eq!(v.len(), self.cols, "row length mismatch");
        let p = self.p;
        match &mut self.data {
            Storage::Packed { stride, words } => {
                let mut row = vec![0u64; *stride];
                for (j, &x) in v.iter().enumerate() {
                    if x % p == 1 {
                        row[j / 64] |= 1u64 << (j % 64);
                    }
                }
                words.extend_from_slice(&row);
            }
            Storage::Bytes(b) => b.extend(v.iter().map(|&x| x % p)),
        }
        self.rows += 1;
    }

    /// Appends row `src` of `other`.
    pub fn push_row_from(&mut self, other: &FFMatrix, src: usize) {
        assert_eq!(self.cols, other.cols, "column mismatch");
        match (&mut self.data, &other.data) {
            (Storage::Packed { stride, words }, Storage::Packed { words: ow, .. }) => {
                let s = *stride;
                words.extend_from_slice(&ow[src * s..(src + 1) * s]);
                self.rows += 1;
            }
            (Storage::Bytes(b), Storage::Bytes(ob)) => {
                b.extend_from_slice(&ob[src * self.cols..(src + 1) * self.cols]);
                self.rows += 1;
            }
            _ => self.push_row(&other.row(src)),
        }
    }

    /// Removes trailing rows so that `rows == n`.
    pub fn truncate_rows(&mut self, n: usize) {
        if n >= self.rows {
            return;
        }
        match &mut self.data {
            Storage::Packed { stride, words } => words.truncate(n * *stride),
            Storage::Bytes(b) => b.truncate(n * self.cols),
        }
        self.rows = n;
    }

    /// A `1 x cols` matrix holding row `i`.
    pub fn row_matrix(&self, i: usize) -> FFMatrix {
        let mut m = self.empty_like(0, self.cols);
        m.push_row_from(self, i);
        m
    }

    /// An empty matrix with the same modulus and layout.
    pub fn empty_like(&self, rows: usize, cols: usize) -> FFMatrix {
        if self.is_packed() {
            Self::zeros(self.p, rows, cols)
        } else {
            Self::zeros_unpacked(self.p, rows, cols)
        }
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &FFMatrix) -> Result<FFMatrix> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.p;
        match (&self.data, &other.data) {
            (Storage::Packed { stride: sa, words: wa }, Storage::Packed { stride: sb, words: wb }) => {
                let mut out = vec![0u64; self.rows * sb];
                for i in 0..self.rows {
                    let dst = &mut out[i * sb..(i + 1) * sb];
                    for (w, &word) in wa[i * sa..(i + 1) * sa].iter().enumerate() {
                        let mut bits = word;
                        while bits != 0 {
                            let j = w * 64 + bits.trailing_zeros() as usize;
                            bits &= bits - 1;
                            for (d, s) in dst.iter_mut().zip(&wb[j * sb..(j + 1) * sb]) {
                                *d ^= s;
                            }
                        }
                    }
                }
                Ok(FFMatrix { p, rows: self.rows, cols: other.cols, data: Storage::Packed { stride: *sb, words: out } })
            }
            _ => {
                let a = self.bytes_view();
                let b = other.bytes_view();
                let n = other.cols;
                let mut out = vec![0u8; self.rows * n];
                let mut acc = vec![0u32; n];
                for i in 0..self.rows {
                    acc.iter_mut().for_each(|x| *x = 0);
                    for j in 0..self.cols {
                        let aij = a[i * self.cols + j] as u32;
                        if aij == 0 {
                            continue;
                        }
                        for (x, &bjk) in acc.iter_mut().zip(&b[j * n..(j + 1) * n]) {
                            *x += aij * bjk as u32;
                        }
                    }
                    for (o, x) in out[i * n..(i + 1) * n].iter_mut().zip(&acc) {
                        *o = (x % p as u32) as u8;
                    }
                }
                let m = FFMatrix { p, rows: self.rows, cols: n, data: Storage::Bytes(out) };
                Ok(if p == 2 && self.is_packed() && other.is_packed() { m.to_default_layout() } else { m })
            }
        }
    }

    fn bytes_view(&self) -> std::borrow::Cow<'_, [u8]> {
        match &self.data {
            Storage::Bytes(b) => std::borrow::Cow::Borrowed(b),
            Storage::Packed { .. } => {
                let mut v = vec![0u8; self.rows * self.cols];
                for i in 0..self.rows {
                    for j in 0..self.cols {
                        v[i * self.cols + j] = self.get(i, j);
                    }
                }
                std::borrow::Cow::Owned(v)
            }
        }
    }

    /// Row vector times matrix: `v * self`.
    pub fn vec_mul(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(v.len(), self.rows, "vector length mismatch");
        let p = self.p as u32;
        let mut acc = vec![0u32; self.cols];
        for (i, &x) in v.iter().enumerate() {
            let x = (x % self.p) as u32;
            if x == 0 {
                continue;
            }
            for (j, a) in acc.iter_mut().enumerate() {
                *a += x * self.get(i, j) as u32;
            }
        }
        acc.into_iter().map(|a| (a % p) as u8).collect()
    }

    /// Product of row `i` of `m` with `self`, returned as a `1 x cols` matrix.
    pub fn row_times(&self, m: &FFMatrix, i: usize) -> FFMatrix {
        assert_eq!(m.cols, self.rows, "shape mismatch");
        let mut out = self.empty_like(1, self.cols);
        match &m.data {
            Storage::Packed { stride, words } => {
                for (w, &word) in words[i * stride..(i + 1) * stride].iter().enumerate() {
                    let mut bits = word;
                    while bits != 0 {
                        let j = w * 64 + bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        out.add_scaled_row_from(0, self, j, 1);
                    }
                }
            }
            Storage::Bytes(b) => {
                for j in 0..m.cols {
                    let c = b[i * m.cols + j];
                    if c != 0 {
                        out.add_scaled_row_from(0, self, j, c);
                    }
                }
            }
        }
        out
    }

    /// Transpose.
    pub fn transpose(&self) -> FFMatrix {
        let mut t = self.empty_like(self.cols, self.rows);
        for i in 0..self.rows {
            let mut j = 0;
            while let Some(c) = self.first_nonzero_in_row(i, j) {
                t.set(c, i, self.get(i, c));
                j = c + 1;
            }
        }
        t
    }

    /// Entrywise sum.
    pub fn add(&self, other: &FFMatrix) -> Result<FFMatrix> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for i in 0..self.rows {
            out.add_scaled_row_from(i, other, i, 1);
        }
        Ok(out)
    }

    /// Entrywise difference.
    pub fn sub(&self, other: &FFMatrix) -> Result<FFMatrix> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        let c = field::neg(1, self.p);
        for i in 0..self.rows {
            out.add_scaled_row_from(i, other, i, c);
        }
        Ok(out)
    }

    /// Scalar multiple.
    pub fn scale(&self, c: u8) -> FFMatrix {
        let mut out = self.clone();
        for i in 0..self.rows {
            out.scale_row(i, c);
        }
        out
    }

    fn check_same_shape(&self, other: &FFMatrix) -> Result<()> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// Reduces in place to reduced row echelon form; returns the pivots.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(i) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            self.swap_rows(i, r);
            let v = self.get(r, c);
            if v != 1 {
                self.scale_row(r, field::inv(v, self.p));
            }
            for i in 0..self.rows {
                if i != r {
                    let a = self.get(i, c);
                    if a != 0 {
                        self.add_scaled_row(i, r, field::neg(a, self.p), c);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Reduced row echelon form with rank and pivot columns.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        Rref { rank: pivots.len(), matrix: m, pivots }
    }

    /// Rank over `F_p`.
    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right null space `{x : self * x = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<u8>> {
        let Rref { matrix, pivots, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut x = vec![0u8; self.cols];
            x[f] = 1;
            for (r, &c) in pivots.iter().enumerate() {
                x[c] = field::neg(matrix.get(r, f), self.p);
            }
            basis.push(x);
        }
        basis
    }

    /// Basis of the left null space `{x : x * self = 0}`.
    pub fn left_kernel(&self) -> Vec<Vec<u8>> {
        self.transpose().kernel_basis()
    }

    /// Inverse, or `None` when singular.
    pub fn inverse(&self) -> Option<FFMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = self.empty_like(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                let v = self.get(i, j);
                if v != 0 {
                    aug.set(i, j, v);
                }
            }
            aug.set(i, n + i, 1);
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = self.empty_like(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = aug.get(i, n + j);
                if v != 0 {
                    inv.set(i, j, v);
                }
            }
        }
        Some(inv)
    }

    /// Kronecker product: entry `((i,k),(j,l)) = a[i][j] * b[k][l]`.
    pub fn kron(&self, other: &FFMatrix) -> Result<FFMatrix> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        let p = self.p;
        let mut out = Self::zeros(p, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if b != 0 {
                            out.set(i * other.rows + k, j * other.cols + l, field::mul(a, b, p));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Submatrix of the listed rows.
    pub fn select_rows(&self, idx: &[usize]) -> FFMatrix {
        let mut m = self.empty_like(0, self.cols);
        for &i in idx {
            m.push_row_from(self, i);
        }
        m
    }

    /// Submatrix of the listed columns.
    pub fn select_cols(&self, idx: &[usize]) -> FFMatrix {
        let mut m = self.empty_like(self.rows, idx.len());
        for i in 0..self.rows {
            for (k, &j) in idx.iter().enumerate() {
                let v = self.get(i, j);
                if v != 0 {
                    m.set(i, k, v);
                }
            }
        }
        m
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &FFMatrix) -> Result<FFMatrix> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        if self.cols != other.cols {
            return Err(Error::Dimension(format!("vstack of {} and {} columns", self.cols, other.cols)));
        }
        let mut m = self.clone();
        for i in 0..other.rows {
            m.push_row_from(other, i);
        }
        Ok(m)
    }

    /// Characteristic polynomial `det(xI - self)` by Hessenberg reduction.
    pub fn char_poly(&self) -> Result<FFPoly> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let p = self.p;
        let mut h: Vec<u8> = self.bytes_view().into_owned();
        let at = |i: usize, j: usize| i * n + j;
        for j in 0..n.saturating_sub(2) {
            let Some(piv) = (j + 1..n).find(|&i| h[at(i, j)] != 0) else {
                continue;
            };
            if piv != j + 1 {
                for k in 0..n {
                    h.swap(at(piv, k), at(j + 1, k));
                }
                for k in 0..n {
                    h.swap(at(k, piv), at(k, j + 1));
                }
            }
            let pinv = field::inv(h[at(j + 1, j)], p);
            for i in j + 2..n {
                let m = field::mul(h[at(i, j)], pinv, p);
                if m == 0 {
                    continue;
                }
                let nm = field::neg(m, p);
                for k in 0..n {
                    h[at(i, k)] = field::add(h[at(i, k)], field::mul(nm, h[at(j + 1, k)], p), p);
                }
                for k in 0..n {
                    h[at(k, j + 1)] = field::add(h[at(k, j + 1)], field::mul(m, h[at(k, i)], p), p);
                }
            }
        }
        // p_0 = 1, p_m = (x - h_mm) p_{m-1} - sum_{i<m} h_{im} prod_{k=i+1}^{m} h_{k,k-1} p_{i-1}
        let mut polys: Vec<FFPoly> = vec![FFPoly::one(p)];
        for m in 0..n {
            let lin = FFPoly::new(p, vec![field::neg(h[at(m, m)], p), 1]);
            let mut pm = lin.mul(&polys[m]);
            let mut prod = 1u8;
            for i in (0..m).rev() {
                prod = field::mul(prod, h[at(i + 1, i)], p);
                if prod == 0 {
                    break;
                }
                let c = field::mul(prod, h[at(i, m)], p);
                if c != 0 {
                    pm = pm.sub(&polys[i].scale(c));
                }
            }
            polys.push(pm);
        }
        Ok(polys.pop().expect("nonempty"))
    }

    /// Evaluates `f(self)` for a square matrix.
    pub fn eval_poly(&self, f: &FFPoly) -> Result<FFMatrix> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        if f.p() != self.p {
            return Err(Error::PrimeMismatch(self.p, f.p()));
        }
        let n = self.rows;
        let mut acc = self.empty_like(n, n);
        for &c in f.coeffs().iter().rev() {
            acc = acc.mul(self)?;
            if c != 0 {
                let mut cid = self.empty_like(n, n);
                for i in 0..n {
                    cid.set(i, i, c);
                }
                acc = acc.add(&cid)?;
            }
        }
        Ok(acc)
    }

    /// Determinant via elimination.
    pub fn determinant(&self) -> Result<u8> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let p = self.p;
        let mut m = self.clone();
        let mut det = 1u8;
        for c in 0..self.cols {
            let Some(i) = (c..self.rows).find(|&i| m.get(i, c) != 0) else {
                return Ok(0);
            };
            if i != c {
                m.swap_rows(i, c);
                det = field::neg(det, p);
            }
            let v = m.get(c, c);
            det = field::mul(det, v, p);
            let vi = field::inv(v, p);
            for r in c + 1..self.rows {
                let a = m.get(r, c);
                if a != 0 {
                    m.add_scaled_row(r, c, field::neg(field::mul(a, vi, p), p), c);
                }
            }
        }
        Ok(det)
    }
}

impl PartialEq for FFMatrix {
    fn eq(&self, other: &Self) -> bool {
        if self.p != other.p || self.rows != other.rows || self.cols != other.cols {
            return false;
        }
        match (&self.data, &other.data) {
            (Storage::Packed { words: a, .. }, Storage::Packed { words: b, .. }) => a == b,
            (Storage::Bytes(a), Storage::Bytes(b)) => a == b,
            _ => (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == other.get(i, j))),
        }
    }
}

impl Eq for FFMatrix {}

impl fmt::Debug for FFMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FFMatrix(p={}, {}x{})", self.p, self.rows, self.cols)?;
        for i in 0..self.rows.min(32) {
            let row: Vec<String> = (0..self.cols.min(64)).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u8, rows: &[&[u8]]) -> FFMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        FFMatrix::from_rows(p, cols, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn identity_rref() {
        let r = FFMatrix::identity(2, 2).rref();
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 1]);
    }

    #[test]
    fn zero_rref() {
        let r = FFMatrix::zeros(3, 3, 5).rref();
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn kernel_small_cases() {
        assert!(FFMatrix::identity(5, 4).kernel_basis().is_empty());
        assert_eq!(m(2, &[&[1, 1]]).kernel_basis(), vec![vec![1, 1]]);
    }

    #[test]
    fn char_poly_small_cases() {
        let id = FFMatrix::identity(2, 2).char_poly().unwrap();
        assert_eq!(id, FFPoly::new(2, vec![1, 0, 1]));
        let z = FFMatrix::zeros(3, 2, 2).char_poly().unwrap();
        assert_eq!(z, FFPoly::new(3, vec![0, 0, 1]));
        // companion of x^2 + x + 1; 2x2 determinant expanded by hand: x^2 - tr x + det
        let c = m(2, &[&[0, 1], &[1, 1]]);
        let tr = (c.get(0, 0) + c.get(1, 1)) % 2;
        let det = (c.get(0, 0) * c.get(1, 1) + c.get(0, 1) * c.get(1, 0)) % 2;
        assert_eq!(c.char_poly().unwrap(), FFPoly::new(2, vec![det, tr, 1]));
        assert_eq!(c.char_poly().unwrap(), FFPoly::new(2, vec![1, 1, 1]));
    }

    #[test]
    fn inverse_roundtrip_odd_prime() {
        let a = m(7, &[&[2, 3, 0], &[1, 1, 5], &[0, 4, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), FFMatrix::identity(7, 3));
        assert!(m(3, &[&[1, 2], &[2, 1]]).inverse().is_none());
    }

    #[test]
    fn packed_and_bytes_agree() {
        let a = FFMatrix::from_fn(2, 70, 130, |i, j| ((i * 7 + j * 13) % 5 == 0) as i64);
        let b = FFMatrix::from_fn(2, 130, 9, |i, j| ((i + 3 * j) % 3 == 1) as i64);
        assert!(a.is_packed());
        let (ua, ub) = (a.to_unpacked(), b.to_unpacked());
        assert!(!ua.is_packed());
        assert_eq!(a.mul(&b).unwrap(), ua.mul(&ub).unwrap());
        assert_eq!(a.rref().matrix, ua.rref().matrix);
        assert_eq!(a.kernel_basis(), ua.kernel_basis());
        assert_eq!(a.transpose(), ua.transpose());
    }

    #[test]
    fn determinant_and_kron() {
        let a = m(5, &[&[1, 2], &[3, 4]]);
        assert_eq!(a.determinant().unwrap(), field::from_i64(4 - 6, 5));
        let k = a.kron(&FFMatrix::identity(5, 2)).unwrap();
        assert_eq!(k.rows(), 4);
        assert_eq!(k.get(2, 0), 3);
        assert_eq!(k.get(3, 1), 3);
        assert_eq!(k.get(0, 1), 0);
    }

    #[test]
    fn first_nonzero_scans_words() {
        let mut a = FFMatrix::zeros(2, 1, 200);
        a.set(0, 150, 1);
        assert_eq!(a.first_nonzero_in_row(0, 0), Some(150));
        assert_eq!(a.first_nonzero_in_row(0, 151), None);
    }
}
