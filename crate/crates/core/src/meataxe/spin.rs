//! Spinning vectors under a representation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fflinalg::{field, FFMatrix};
use crate::functors::Submodule;
use crate::groups::Representation;

/// A growing semi-echelon basis: row `k` has a 1 at `pivots[k]` and zeros at
/// all earlier pivots.
#[derive(Clone, Debug)]
pub struct Echelon {
    basis: FFMatrix,
    pivots: Vec<usize>,
}

impl Echelon {
    /// Empty basis in `F_p^n`.
    pub fn new(p: u8, n: usize) -> Self {
        Echelon { basis: FFMatrix::zeros(p, 0, n), pivots: Vec::new() }
    }

    /// Dimension spanned so far.
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces row `i` of `m` against the basis.
    pub fn reduce(&self, m: &mut FFMatrix, i: usize) {
        let p = self.basis.p();
        for (k, &c) in self.pivots.iter().enumerate() {
            let a = m.get(i, c);
            if a != 0 {
                m.add_scaled_row_from(i, &self.basis, k, field::neg(a, p));
            }
        }
    }

    /// Reduces row `i` of `m` and appends it when nonzero; returns whether
    /// the span grew.
    pub fn insert(&mut self, m: &mut FFMatrix, i: usize) -> bool {
        self.reduce(m, i);
        let Some(c) = m.first_nonzero_in_row(i, 0) else {
            return false;
        };
        let a = m.get(i, c);
        m.scale_row(i, field::inv(a, m.p()));
        self.basis.push_row_from(m, i);
        self.pivots.push(c);
        true
    }

    /// The spanned subspace.
    pub fn to_submodule(&self) -> Submodule {
        Submodule::row_space(&self.basis)
    }
}

/// How a spun vector was produced: either a seed or a generator image.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpinStep {
    /// The seed with this index.
    Seed(usize),
    /// Image of the vector at `parent` under generator `generator`.
    Image { parent: usize, generator: usize },
}

/// Result of spinning: the raw spun vectors, their provenance and the span.
#[derive(Clone, Debug)]
pub struct Spin {
    /// Linearly independent vectors in discovery order, unreduced.
    pub vectors: FFMatrix,
    /// Provenance of each vector.
    pub steps: Vec<SpinStep>,
    /// The invariant subspace spanned.
    pub submodule: Submodule,
}

/// Smallest invariant subspace containing the seeds, with a record of how
/// each basis vector arises from them.
pub fn spin_words(rep: &Representation, seeds: &[Vec<u8>]) -> Result<Spin> {
    let n = rep.dim();
    let p = rep.p();
    let mut ech = Echelon::new(p, n);
    let mut vectors = FFMatrix::zeros(p, 0, n);
    let mut steps = Vec::new();
    for (s, v) in seeds.iter().enumerate() {
        if v.len() != n {
            return Err(Error::Dimension(format!("seed of length {} in module of dimension {n}", v.len())));
        }
        let mut m = FFMatrix::from_rows(p, n, std::slice::from_ref(v))?;
        let raw = m.clone();
        if ech.insert(&mut m, 0) {
            vectors.push_row_from(&raw, 0);
            steps.push(SpinStep::Seed(s));
        }
    }
    let mut next = 0;
    while next < vectors.rows() && ech.dim() < n {
        for (gi, g) in rep.generators().iter().enumerate() {
            let img = g.matrix.row_times(&vectors, next);
            let mut m = img.clone();
            if ech.insert(&mut m, 0) {
                vectors.push_row_from(&img, 0);
                steps.push(SpinStep::Image { parent: next, generator: gi });
            }
        }
        next += 1;
    }
    Ok(Spin { vectors, steps, submodule: ech.to_submodule() })
}

/// Smallest invariant subspace containing the seeds.
pub fn spin(rep: &Representation, seeds: &[Vec<u8>]) -> Result<Submodule> {
    Ok(spin_words(rep, seeds)?.submodule)
}

/// Replays spin provenance on another representation with the same
/// generator names, starting from a single seed.
pub fn replay_steps(rep: &Representation, seed: &[u8], steps: &[SpinStep]) -> Result<FFMatrix> {
    let n = rep.dim();
    let mut out = FFMatrix::zeros(rep.p(), 0, n);
    for step in steps {
        match *step {
            SpinStep::Seed(_) => out.push_row(seed),
            SpinStep::Image { parent, generator } => {
                let g = rep
                    .generators()
                    .get(generator)
                    .ok_or_else(|| Error::InvalidArgument(format!("generator index {generator} out of range")))?;
                if parent >= out.rows() {
                    return Err(Error::InvalidArgument("spin step refers to a later vector".into()));
                }
                let img = g.matrix.row_times(&out, parent);
                out.push_row_from(&img, 0);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{burkhardt_generators, SymplecticSpace};

    #[test]
    fn tautological_is_cyclic() {
        let rep = burkhardt_generators(&SymplecticSpace::binary(3).unwrap()).unwrap();
        let mut v = vec![0u8; 6];
        v[0] = 1;
        assert_eq!(spin(&rep, &[v]).unwrap().dim(), 6);
        assert_eq!(spin(&rep, &[vec![0; 6]]).unwrap().dim(), 0);
    }

    #[test]
    fn replay_reproduces_vectors() {
        let rep = burkhardt_generators(&SymplecticSpace::new(2, 3).unwrap()).unwrap();
        let seed = vec![1, 0, 2, 0];
        let s = spin_words(&rep, std::slice::from_ref(&seed)).unwrap();
        assert_eq!(replay_steps(&rep, &seed, &s.steps).unwrap(), s.vectors);
    }
}
