//! The `Sp_2g(F_2)`-module `W ⊗ F_2` in the monomial basis and the images
//! of subgroups of the level-2 mapping class group in it.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::basis::{monomial_basis, w_mod2_coordinates};
use super::words::{boundary_twist_word, bounding_pair_word, level_word, push_word, separating_twist_word};
use super::{basis_class, QuadraticForm};
use crate::error::{Error, Result};
use crate::fflinalg::FFMatrix;
use crate::functors::{LabeledModule, ModuleKind, Submodule};
use crate::groups::{burkhardt_generators, SymplecticSpace};
use crate::meataxe::spin;

/// Map from sorted variable set to position in the monomial basis.
pub fn w_index(g: usize) -> HashMap<Vec<usize>, usize> {
    monomial_basis(g).into_iter().enumerate().map(|(i, m)| (m.vars, i)).collect()
}

fn support(row: u32) -> Vec<usize> {
    (0..32).filter(|&i| row >> i & 1 == 1).collect()
}

fn toggle(v: &mut [u8], idx: &HashMap<Vec<usize>, usize>, mut set: Vec<usize>) {
    set.sort_unstable();
    let i = idx[&set];
    v[i] ^= 1;
}

/// Image of a monomial under a linear map given by the supports of the
/// images of the basis classes.
fn image_of(vars: &[usize], images: &[Vec<usize>], idx: &HashMap<Vec<usize>, usize>, out: &mut [u8]) {
    match vars {
        // (f X_a)‾ ⊗ 1 = Σ_{T ⊆ supp, 1 ≤ |T| ≤ 3} 2^{|T|-1} X̄_T ⊗ 1
        [a] => {
            let s = &images[*a];
            for (x, &i) in s.iter().enumerate() {
                toggle(out, idx, vec![i]);
                for (y, &j) in s.iter().enumerate().skip(x + 1) {
                    toggle(out, idx, vec![i, j]);
                    for &k in &s[y + 1..] {
                        toggle(out, idx, vec![i, j, k]);
                    }
                }
            }
        }
        // only disjoint T1, T2 with |T1 ∪ T2| ≤ 3 survive mod 2
        [a, b] => {
            let subsets = |s: &[usize]| -> Vec<Vec<usize>> {
                let mut out = Vec::new();
                for (x, &i) in s.iter().enumerate() {
                    out.push(vec![i]);
                    for &j in &s[x + 1..] {
                        out.push(vec![i, j]);
                    }
                }
                out
            };
            let ta = subsets(&images[*a]);
            let tb = subsets(&images[*b]);
            for t1 in &ta {
                for t2 in &tb {
                    if t1.len() + t2.len() > 3 || t1.iter().any(|x| t2.contains(x)) {
                        continue;
                    }
                    toggle(out, idx, t1.iter().chain(t2).copied().collect());
                }
            }
        }
        [a, b, c] => {
            for &i in &images[*a] {
                for &j in &images[*b] {
                    if j == i {
                        continue;
                    }
                    for &k in &images[*c] {
                        if k != i && k != j {
                            toggle(out, idx, vec![i, j, k]);
                        }
                    }
                }
            }
        }
        _ => unreachable!("monomials have degree 1 to 3"),
    }
}

/// `W ⊗ F_2` as a representation of `Sp_2g(F_2)` on Burkhardt's generators.
pub fn w_mod2_representation(g: usize) -> Result<LabeledModule> {
    if !(1..=super::MAX_GENUS).contains(&g) {
        return Err(Error::InvalidArgument(format!("genus must be in 1..={}, got {g}", super::MAX_GENUS)));
    }
    let space = SymplecticSpace::binary(g)?;
    let taut = burkhardt_generators(&space)?;
    let basis = monomial_basis(g);
    let idx = w_index(g);
    let n = basis.len();
    let mut mats = Vec::new();
    for gen in taut.generators() {
        let images: Vec<Vec<usize>> =
            (0..2 * g).map(|r| support((0..2 * g).filter(|&c| gen.matrix.get(r, c) == 1).fold(0u32, |a, c| a | basis_class(c)))).collect();
        let mut m = FFMatrix::zeros(2, n, n);
        for (r, mono) in basis.iter().enumerate() {
            let mut row = vec![0u8; n];
            image_of(&mono.vars, &images, &idx, &mut row);
            for (c, &x) in row.iter().enumerate() {
                if x != 0 {
                    m.set(r, c, 1);
                }
            }
        }
        mats.push(m);
    }
    let rep = taut.with_matrices(n, mats);
    LabeledModule::new(rep, basis.iter().map(|m| m.label()).collect(), ModuleKind::Symplectic { g })
}

/// Coordinates of the word's image `β(w) ⊗ 1`.
pub fn w_mod2_vector(q: &QuadraticForm, w: &super::TwistWord) -> Result<Vec<u8>> {
    w_mod2_coordinates(&w.eval(q)?, q)
}

/// Subgroups of the level-2 mapping class group with known generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SubgroupKind {
    /// The Torelli group, normally generated by a genus-one bounding pair.
    Torelli,
    /// The Johnson kernel, normally generated by separating twists.
    JohnsonKernel,
    /// The twist about the boundary component.
    BoundaryTwist,
    /// The point-pushing subgroup, generated by a genus `g-1` bounding pair.
    Push,
    /// The level-`2k` subgroup; the field is `k`.
    Level(u32),
}

/// The smallest `Sp_2g(F_2)`-submodule of `W ⊗ F_2` containing the images
/// of the subgroup's generators.
pub fn subgroup_image(g: usize, q: &QuadraticForm, which: SubgroupKind) -> Result<Submodule> {
    if g < 3 {
        return Err(Error::InvalidArgument(format!("subgroup images need genus >= 3, got {g}")));
    }
    if q.genus() != g {
        return Err(Error::Dimension(format!("form of genus {} for genus {g}", q.genus())));
    }
    let words = match which {
        SubgroupKind::Torelli => vec![bounding_pair_word(basis_class(0), basis_class(1), basis_class(2))?],
        SubgroupKind::JohnsonKernel => vec![separating_twist_word(basis_class(0), basis_class(1))?],
        SubgroupKind::BoundaryTwist => vec![boundary_twist_word(g)?],
        SubgroupKind::Push => vec![push_word(g)?],
        SubgroupKind::Level(k) => level_word(k)?,
    };
    let seeds = words.iter().map(|w| w_mod2_vector(q, w)).collect::<Result<Vec<_>>>()?;
    let module = w_mod2_representation(g)?;
    spin(&module.rep, &seeds)
}
