//! Symplectic spaces, matrix-group representations and standard generating
//! sets of `Sp_2g(F_2)` and `SL_n(F_p)`.
//!
//! Matrices act on row vectors: row `j` of a generator holds the
//! coordinates of the image of basis vector `j`, and `v` maps to `v * G`.
//! The symplectic basis is ordered `X1..X2g = a1, b1, a2, b2, ...`.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::fflinalg::{field, FFMatrix};

/// `F_p^{2g}` with the standard intersection form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymplecticSpace {
    g: usize,
    p: u8,
}

impl SymplecticSpace {
    /// The space of genus `g` over `F_p`.
    pub fn new(g: usize, p: u8) -> Result<Self> {
        if g == 0 {
            return Err(Error::InvalidArgument("genus must be at least 1".into()));
        }
        if !field::is_supported_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not a supported prime")));
        }
        Ok(SymplecticSpace { g, p })
    }

    /// The space of genus `g` over `F_2`.
    pub fn binary(g: usize) -> Result<Self> {
        Self::new(g, 2)
    }

    /// Genus.
    pub fn genus(&self) -> usize {
        self.g
    }

    /// Prime.
    pub fn p(&self) -> u8 {
        self.p
    }

    /// Dimension `2g`.
    pub fn dim(&self) -> usize {
        2 * self.g
    }

    /// Pairing of 0-based basis indices: `Q(X_{2m}, X_{2m+1}) = 1`, antisymmetric.
    pub fn basis_pairing(&self, i: usize, j: usize) -> u8 {
        if i / 2 != j / 2 || i == j {
            0
        } else if i.is_multiple_of(2) {
            1
        } else {
            field::neg(1, self.p)
        }
    }

    /// Gram matrix of the form.
    pub fn gram(&self) -> FFMatrix {
        let d = self.dim();
        FFMatrix::from_fn(self.p, d, d, |i, j| self.basis_pairing(i, j) as i64)
    }

    /// `Q(u, v)` for coordinate vectors.
    pub fn pairing(&self, u: &[u8], v: &[u8]) -> u8 {
        let p = self.p;
        let mut acc = 0u8;
        for m in 0..self.g {
            let (a, b) = (2 * m, 2 * m + 1);
            acc = field::add(acc, field::mul(u[a], v[b], p), p);
            acc = field::sub(acc, field::mul(u[b], v[a], p), p);
        }
        acc
    }

    /// True when `G^T Q G = Q` in the row-vector convention.
    pub fn preserves_form(&self, g: &FFMatrix) -> bool {
        let q = self.gram();
        g.mul(&q).and_then(|m| m.mul(&g.transpose())).map(|m| m == q).unwrap_or(false)
    }
}

/// A named generator matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    /// Unique name.
    pub name: String,
    /// Invertible matrix in the row-vector convention.
    pub matrix: FFMatrix,
}

/// A matrix group given by invertible generators over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    p: u8,
    dim: usize,
    generators: Vec<Generator>,
}

impl Representation {
    /// Validates shapes, invertibility and name uniqueness.
    pub fn new(p: u8, dim: usize, generators: Vec<(String, FFMatrix)>) -> Result<Self> {
        let mut names = HashSet::new();
        for (name, m) in &generators {
            if !names.insert(name.clone()) {
                return Err(Error::InvalidArgument(format!("duplicate generator name `{name}`")));
            }
            if m.p() != p {
                return Err(Error::PrimeMismatch(p, m.p()));
            }
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::Dimension(format!("generator `{name}` is {}x{}, expected {dim}", m.rows(), m.cols())));
            }
            if dim > 0 && m.rank() != dim {
                return Err(Error::Singular(format!("generator `{name}`")));
            }
        }
        Ok(Self::new_unchecked(p, dim, generators))
    }

    /// Builds without validation; callers guarantee the invariants.
    pub(crate) fn new_unchecked(p: u8, dim: usize, generators: Vec<(String, FFMatrix)>) -> Self {
        let generators = generators.into_iter().map(|(name, matrix)| Generator { name, matrix }).collect();
        Representation { p, dim, generators }
    }

    /// Same generator names with new matrices of dimension `dim`.
    pub(crate) fn with_matrices(&self, dim: usize, matrices: Vec<FFMatrix>) -> Self {
        let gens = self.generators.iter().zip(matrices).map(|(g, m)| (g.name.clone(), m)).collect();
        Self::new_unchecked(self.p, dim, gens)
    }

    /// Prime.
    pub fn p(&self) -> u8 {
        self.p
    }

    /// Dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Generators in order.
    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    /// Generator matrices in order.
    pub fn matrices(&self) -> Vec<&FFMatrix> {
        self.generators.iter().map(|g| &g.matrix).collect()
    }

    /// Generator names in order.
    pub fn names(&self) -> Vec<&str> {
        self.generators.iter().map(|g| g.name.as_str()).collect()
    }

    /// The trivial module of dimension `dim` with the given generator names.
    pub fn trivial(p: u8, dim: usize, names: &[&str]) -> Self {
        let gens = names.iter().map(|n| (n.to_string(), FFMatrix::identity(p, dim))).collect();
        Self::new_unchecked(p, dim, gens)
    }

    /// The dual module: generators replaced by inverse transposes.
    pub fn dual(&self) -> Self {
        let mats = self
            .generators
            .iter()
            .map(|g| g.matrix.inverse().expect("generators are invertible").transpose())
            .collect();
        self.with_matrices(self.dim, mats)
    }

    /// True when `map` (rows are images of source basis vectors) satisfies
    /// `G_source * map = map * G_target` for every generator.
    pub fn intertwines(&self, target: &Representation, map: &FFMatrix) -> bool {
        if self.generators.len() != target.generators.len() || map.rows() != self.dim || map.cols() != target.dim {
            return false;
        }
        self.generators.iter().zip(&target.generators).all(|(a, b)| {
            let l = a.matrix.mul(map).expect("shapes checked");
            let r = map.mul(&b.matrix).expect("shapes checked");
            l == r
        })
    }

    /// Size of the orbit of `v` under the generated group.
    pub fn orbit_size(&self, v: &[u8]) -> usize {
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        let mut queue = VecDeque::new();
        let start: Vec<u8> = v.iter().map(|x| x % self.p).collect();
        seen.insert(start.clone());
        queue.push_back(start);
        while let Some(w) = queue.pop_front() {
            for g in &self.generators {
                let img = g.matrix.vec_mul(&w);
                if seen.insert(img.clone()) {
                    queue.push_back(img);
                }
            }
        }
        seen.len()
    }

    /// Multiset of orbit sizes of the nonzero vectors, sorted.
    pub fn orbit_size_profile(&self) -> Vec<usize> {
        let total = (self.p as usize).pow(self.dim as u32);
        let mut seen = vec![false; total];
        let mut out = Vec::new();
        let decode = |mut k: usize| -> Vec<u8> {
            (0..self.dim)
                .map(|_| {
                    let d = (k % self.p as usize) as u8;
                    k /= self.p as usize;
                    d
                })
                .collect()
        };
        let encode = |v: &[u8]| -> usize { v.iter().rev().fold(0, |acc, &d| acc * self.p as usize + d as usize) };
        for k in 1..total {
            if seen[k] {
                continue;
            }
            let mut queue = vec![decode(k)];
            seen[k] = true;
            let mut size = 0;
            while let Some(w) = queue.pop() {
                size += 1;
                for g in &self.generators {
                    let img = g.matrix.vec_mul(&w);
                    let e = encode(&img);
                    if !seen[e] {
                        seen[e] = true;
                        queue.push(img);
                    }
                }
            }
            out.push(size);
        }
        out.sort_unstable();
        out
    }
}

/// The tautological representation of `Sp_2g(F_p)` on Burkhardt's generators.
///
/// Generators: `T` (a1 -> a1 + b1), `R` (a1 -> b1, b1 -> -a1),
/// `M` (a1 -> a1 - b2, a2 -> a2 - b1) and the factor swaps `S1..S{g-1}`.
pub fn burkhardt_generators(space: &SymplecticSpace) -> Result<Representation> {
    let g = space.genus();
    if g < 2 {
        return Err(Error::InvalidArgument(format!("Burkhardt generators need genus >= 2, got {g}")));
    }
    let p = space.p();
    let d = space.dim();
    let minus = field::neg(1, p);
    let mut gens = Vec::new();

    let mut t = FFMatrix::identity(p, d);
    t.set(0, 1, 1);
    gens.push(("T".to_string(), t));

    let mut r = FFMatrix::identity(p, d);
    r.set(0, 0, 0);
    r.set(0, 1, 1);
    r.set(1, 1, 0);
    r.set(1, 0, minus);
    gens.push(("R".to_string(), r));

    let mut m = FFMatrix::identity(p, d);
    m.set(0, 3, minus);
    m.set(2, 1, minus);
    gens.push(("M".to_string(), m));

    for i in 0..g - 1 {
        let mut s = FFMatrix::zeros(p, d, d);
        for j in 0..d {
            let block = j / 2;
            let target = if block == i {
                j + 2
            } else if block == i + 1 {
                j - 2
            } else {
                j
            };
            s.set(j, target, 1);
        }
        gens.push((format!("S{}", i + 1), s));
    }
    Ok(Representation::new_unchecked(p, d, gens))
}

/// Matrix of the transvection `w -> w + Q(w, u) u`.
pub fn transvection(space: &SymplecticSpace, u: &[u8]) -> Result<FFMatrix> {
    let d = space.dim();
    if u.len() != d {
        return Err(Error::Dimension(format!("vector of length {} in dimension {d}", u.len())));
    }
    let p = space.p();
    if u.iter().all(|&x| x % p == 0) {
        return Err(Error::InvalidArgument("transvection by the zero vector".into()));
    }
    let mut m = FFMatrix::identity(p, d);
    for j in 0..d {
        let mut e = vec![0u8; d];
        e[j] = 1;
        let c = space.pairing(&e, u);
        if c != 0 {
            for (k, &uk) in u.iter().enumerate() {
                m.set(j, k, field::add(m.get(j, k), field::mul(c, uk, p), p));
            }
        }
    }
    Ok(m)
}

/// The tautological representation of `SL_n(F_p)` on all elementary
/// transvections `E_ij(1)`, `i != j`, which send `e_j` to `e_j + e_i`.
pub fn sl_generators(n: usize, p: u8) -> Result<Representation> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("SL_n needs n >= 2, got {n}")));
    }
    if !field::is_supported_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not a supported prime")));
    }
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut m = FFMatrix::identity(p, n);
                m.set(j, i, 1);
                gens.push((format!("E{}{}", i + 1, j + 1), m));
            }
        }
    }
    Ok(Representation::new_unchecked(p, n, gens))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(d: usize, i: usize) -> Vec<u8> {
        let mut v = vec![0; d];
        v[i] = 1;
        v
    }

    #[test]
    fn gram_is_alternating_and_nonsingular() {
        for g in 1..=4 {
            let s = SymplecticSpace::binary(g).unwrap();
            let q = s.gram();
            assert!((0..s.dim()).all(|i| q.get(i, i) == 0));
            assert_eq!(q.rank(), 2 * g);
        }
    }

    #[test]
    fn genus_two_generators_are_symplectic() {
        let s = SymplecticSpace::binary(2).unwrap();
        let rep = burkhardt_generators(&s).unwrap();
        assert_eq!(rep.generators().len(), 4);
        for g in rep.matrices() {
            assert!(s.preserves_form(g));
        }
        let r = &rep.generators()[1].matrix;
        assert_eq!(r.vec_mul(&unit(4, 0)), unit(4, 1));
    }

    #[test]
    fn generators_symplectic_over_odd_primes() {
        for p in [3u8, 5] {
            let s = SymplecticSpace::new(3, p).unwrap();
            for g in burkhardt_generators(&s).unwrap().matrices() {
                assert!(s.preserves_form(g));
            }
        }
    }

    #[test]
    fn genus_one_rejected() {
        assert!(burkhardt_generators(&SymplecticSpace::binary(1).unwrap()).is_err());
    }

    #[test]
    fn genus_three_orbit_of_x1() {
        let s = SymplecticSpace::binary(3).unwrap();
        let rep = burkhardt_generators(&s).unwrap();
        assert_eq!(rep.generators().len(), 5);
        assert_eq!(rep.orbit_size(&unit(6, 0)), 63);
    }

    #[test]
    fn sp4_f2_has_order_720() {
        let s = SymplecticSpace::binary(2).unwrap();
        let rep = burkhardt_generators(&s).unwrap();
        let mut seen = HashSet::new();
        let id = FFMatrix::identity(2, 4);
        let mut stack = vec![id.to_rows()];
        seen.insert(id.to_rows());
        while let Some(m) = stack.pop() {
            let m = FFMatrix::from_rows(2, 4, &m).unwrap();
            for g in rep.matrices() {
                let n = m.mul(g).unwrap().to_rows();
                if seen.insert(n.clone()) {
                    stack.push(n);
                }
            }
        }
        assert_eq!(seen.len(), 720);
    }

    #[test]
    fn transvection_by_x1() {
        let s = SymplecticSpace::binary(2).unwrap();
        let t = transvection(&s, &unit(4, 0)).unwrap();
        assert_eq!(t.vec_mul(&unit(4, 0)), unit(4, 0));
        assert_eq!(t.vec_mul(&unit(4, 1)), vec![1, 1, 0, 0]);
        assert_eq!(t.vec_mul(&unit(4, 2)), unit(4, 2));
        assert_eq!(t.vec_mul(&unit(4, 3)), unit(4, 3));
        assert!(transvection(&s, &[0, 0, 0, 0]).is_err());
    }

    #[test]
    fn transvection_is_involution() {
        let s = SymplecticSpace::binary(2).unwrap();
        let t = transvection(&s, &[1, 0, 1, 0]).unwrap();
        assert_eq!(t.mul(&t).unwrap(), FFMatrix::identity(2, 4));
        assert!(s.preserves_form(&t));
    }

    #[test]
    fn sl_generators_small() {
        let rep = sl_generators(2, 3).unwrap();
        assert_eq!(rep.generators().len(), 2);
        for g in rep.matrices() {
            assert_eq!(g.determinant().unwrap(), 1);
        }
        let rep = sl_generators(3, 2).unwrap();
        assert_eq!(rep.generators().len(), 6);
        assert_eq!(rep.orbit_size(&unit(3, 0)), 7);
        let e12 = &rep.generators()[0];
        assert_eq!(e12.name, "E12");
        assert_eq!(e12.matrix.vec_mul(&unit(3, 1)), vec![1, 1, 0]);
        assert!(sl_generators(1, 2).is_err());
    }

    #[test]
    fn duplicate_names_rejected() {
        let id = FFMatrix::identity(2, 2);
        let r = Representation::new(2, 2, vec![("a".into(), id.clone()), ("a".into(), id)]);
        assert!(r.is_err());
    }
}
