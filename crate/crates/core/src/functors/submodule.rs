//! Invariant subspaces stored as canonical reduced row echelon bases.

use crate::error::{Error, Result};
use crate::fflinalg::{field, FFMatrix};
use crate::groups::Representation;

/// A subspace of `F_p^n` held as the nonzero rows of its rref basis.
///
/// Two submodules are equal exactly when their rref bases are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Submodule {
    ambient: usize,
    basis: FFMatrix,
    pivots: Vec<usize>,
}

impl Submodule {
    /// The zero subspace.
    pub fn zero(p: u8, ambient: usize) -> Self {
        Submodule { ambient, basis: FFMatrix::zeros(p, 0, ambient), pivots: Vec::new() }
    }

    /// The whole space.
    pub fn full(p: u8, ambient: usize) -> Self {
        Submodule { ambient, basis: FFMatrix::identity(p, ambient), pivots: (0..ambient).collect() }
    }

    /// Row space of a matrix.
    pub fn row_space(m: &FFMatrix) -> Self {
        let mut b = m.to_default_layout();
        let pivots = b.rref_in_place();
        b.truncate_rows(pivots.len());
        Submodule { ambient: m.cols(), basis: b, pivots }
    }

    /// Span of explicit vectors.
    pub fn from_vectors(p: u8, ambient: usize, vectors: &[Vec<u8>]) -> Result<Self> {
        Ok(Self::row_space(&FFMatrix::from_rows(p, ambient, vectors)?))
    }

    /// `{v : v * map = 0}` for a map given by its image rows.
    pub fn left_kernel_of(map: &FFMatrix) -> Self {
        let k = map.left_kernel();
        Self::from_vectors(map.p(), map.rows(), &k).expect("kernel vectors have ambient length")
    }

    /// Image of a map given by its image rows.
    pub fn image_of(map: &FFMatrix) -> Self {
        Self::row_space(map)
    }

    /// Prime.
    pub fn p(&self) -> u8 {
        self.basis.p()
    }

    /// Dimension of the subspace.
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    /// Dimension of the ambient space.
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// The rref basis, one row per dimension.
    pub fn basis(&self) -> &FFMatrix {
        &self.basis
    }

    /// Pivot columns of the basis rows.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces row `i` of `m` modulo the subspace, in place.
    pub fn reduce_row(&self, m: &mut FFMatrix, i: usize) {
        for (r, &c) in self.pivots.iter().enumerate() {
            let a = m.get(i, c);
            if a != 0 {
                m.add_scaled_row_from(i, &self.basis, r, field::neg(a, self.p()));
            }
        }
    }

    /// True when `v` lies in the subspace.
    pub fn contains(&self, v: &[u8]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Coordinates of `v` in the rref basis, if it lies in the subspace.
    pub fn coordinates(&self, v: &[u8]) -> Option<Vec<u8>> {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let coords: Vec<u8> = self.pivots.iter().map(|&c| v[c] % self.p()).collect();
        let mut m = FFMatrix::from_rows(self.p(), self.ambient, &[v.to_vec()]).expect("length checked");
        self.reduce_row(&mut m, 0);
        m.row_is_zero(0).then_some(coords)
    }

    /// True when every basis row of `self` lies in `other`.
    pub fn is_subspace_of(&self, other: &Submodule) -> bool {
        (0..self.dim()).all(|i| {
            let mut m = self.basis.row_matrix(i);
            other.reduce_row(&mut m, 0);
            m.row_is_zero(0)
        })
    }

    /// Sum of two subspaces.
    pub fn sum(&self, other: &Submodule) -> Result<Submodule> {
        Ok(Self::row_space(&self.basis.vstack(&other.basis)?))
    }

    /// Checks invariance under every generator of `rep`.
    pub fn check_invariant(&self, rep: &Representation) -> Result<()> {
        if rep.dim() != self.ambient {
            return Err(Error::Dimension(format!("submodule of {} in module of {}", self.ambient, rep.dim())));
        }
        for g in rep.generators() {
            let img = self.basis.mul(&g.matrix)?;
            for i in 0..img.rows() {
                let mut m = img.row_matrix(i);
                self.reduce_row(&mut m, 0);
                if !m.row_is_zero(0) {
                    return Err(Error::NotInvariant { generator: g.name.clone(), row: i });
                }
            }
        }
        Ok(())
    }

    /// Expresses `inner` (a subspace of `self`) in the coordinates of `self`.
    pub fn relative(&self, inner: &Submodule) -> Result<Submodule> {
        let mut rows = Vec::with_capacity(inner.dim());
        for i in 0..inner.dim() {
            let v = inner.basis.row(i);
            rows.push(self.coordinates(&v).ok_or_else(|| Error::Dimension("subspace is not contained in the ambient submodule".into()))?);
        }
        Submodule::from_vectors(self.p(), self.dim(), &rows)
    }
}

/// Splits `rep` along the invariant subspace `s`.
///
/// The sub-representation is written in the rref basis of `s`; the quotient
/// uses the unit vectors at the non-pivot coordinates as complement.
pub fn sub_quotient(rep: &Representation, s: &Submodule) -> Result<(Representation, Representation)> {
    if rep.dim() != s.ambient_dim() {
        return Err(Error::Dimension(format!("submodule of {} in module of {}", s.ambient_dim(), rep.dim())));
    }
    if rep.p() != s.p() {
        return Err(Error::PrimeMismatch(rep.p(), s.p()));
    }
    let mut is_pivot = vec![false; rep.dim()];
    for &c in s.pivots() {
        is_pivot[c] = true;
    }
    let complement: Vec<usize> = (0..rep.dim()).filter(|&c| !is_pivot[c]).collect();
    let mut subs = Vec::new();
    let mut quots = Vec::new();
    for g in rep.generators() {
        let img = s.basis().mul(&g.matrix)?;
        let coords = img.select_cols(s.pivots());
        let back = coords.mul(s.basis())?;
        if back != img {
            let row = (0..img.rows()).find(|&i| img.row(i) != back.row(i)).unwrap_or(0);
            return Err(Error::NotInvariant { generator: g.name.clone(), row });
        }
        subs.push(coords);
        let mut q = g.matrix.select_rows(&complement);
        for i in 0..q.rows() {
            s.reduce_row(&mut q, i);
        }
        quots.push(q.select_cols(&complement));
    }
    Ok((rep.with_matrices(s.dim(), subs), rep.with_matrices(complement.len(), quots)))
}

/// The section `upper / lower` of `rep` for invariant `lower ⊆ upper`.
pub fn section(rep: &Representation, upper: &Submodule, lower: &Submodule) -> Result<Representation> {
    let (sub, _) = sub_quotient(rep, upper)?;
    let rel = upper.relative(lower)?;
    Ok(sub_quotient(&sub, &rel)?.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{burkhardt_generators, SymplecticSpace};

    #[test]
    fn full_and_zero() {
        let rep = burkhardt_generators(&SymplecticSpace::binary(2).unwrap()).unwrap();
        let (sub, quot) = sub_quotient(&rep, &Submodule::full(2, 4)).unwrap();
        assert_eq!(sub.dim(), 4);
        assert_eq!(quot.dim(), 0);
        let (sub, quot) = sub_quotient(&rep, &Submodule::zero(2, 4)).unwrap();
        assert_eq!(sub.dim(), 0);
        assert_eq!(quot, rep);
    }

    #[test]
    fn non_invariant_is_reported() {
        let rep = burkhardt_generators(&SymplecticSpace::binary(2).unwrap()).unwrap();
        let s = Submodule::from_vectors(2, 4, &[vec![1, 0, 0, 0]]).unwrap();
        assert!(matches!(sub_quotient(&rep, &s), Err(Error::NotInvariant { .. })));
        assert!(s.check_invariant(&rep).is_err());
    }

    #[test]
    fn coordinates_roundtrip() {
        let s = Submodule::from_vectors(3, 3, &[vec![1, 2, 0], vec![0, 1, 1]]).unwrap();
        let v = vec![2, 0, 2];
        let c = s.coordinates(&v).unwrap();
        let m = FFMatrix::from_rows(3, 2, &[c]).unwrap().mul(s.basis()).unwrap();
        assert_eq!(m.row(0), v);
        assert!(!s.contains(&[0, 0, 1]));
    }
}
