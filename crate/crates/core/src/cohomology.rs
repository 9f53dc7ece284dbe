//! Simplicial cohomology with field coefficients: reduced, relative, and the
//! local groups `H^i(|K|, |K| − x)` at interior points of a face.
//!
//! Cochains are indexed by faces in the complex's canonical order; the
//! coboundary of a `k`-face `τ = {v_0 < ... < v_k}` picks up `(−1)^j` from the
//! face obtained by dropping `v_j`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::complex::{ComplexError, Face, SimplicialComplex};
use crate::linalg::{CochainComplex, ExactMatrix, FieldSpec, LinalgError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("local cohomology needs a nonempty face")]
    EmptyFace,
}

/// Dimensions of `H̃^i(K; F)` for `−1 ≤ i ≤ dim K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyProfile {
    pub field: FieldSpec,
    // dims[0] is degree −1
    dims: Vec<usize>,
}

impl CohomologyProfile {
    /// Dimension in degree `i`; zero outside `−1..=dim K`.
    pub fn get(&self, i: isize) -> usize {
        if i < -1 {
            return 0;
        }
        self.dims.get((i + 1) as usize).copied().unwrap_or(0)
    }

    /// `(degree, dim)` pairs starting at degree −1.
    pub fn iter(&self) -> impl Iterator<Item = (isize, usize)> + '_ {
        self.dims
            .iter()
            .enumerate()
            .map(|(k, &d)| (k as isize - 1, d))
    }

    pub fn to_map(&self) -> BTreeMap<i64, usize> {
        self.iter().map(|(i, d)| (i as i64, d)).collect()
    }

    /// `Σ (−1)^i dim H̃^i`.
    pub fn euler_characteristic(&self) -> i64 {
        self.iter()
            .map(|(i, d)| {
                if i.rem_euclid(2) == 0 {
                    d as i64
                } else {
                    -(d as i64)
                }
            })
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// True when `H̃^i = 0` for every `i ≤ bound`.
    pub fn vanishes_through(&self, bound: isize) -> bool {
        self.iter()
            .filter(|(i, _)| *i <= bound)
            .all(|(_, d)| d == 0)
    }
}

/// Cochain complex on the faces of `k` accepted by `keep`, graded by
/// cardinality: term `n` holds the kept faces with `n + first` vertices.
fn cochains_on(k: &SimplicialComplex, first: usize, keep: impl Fn(Face) -> bool) -> CochainComplex {
    let top = k.f_vector().len();
    let bases: Vec<Vec<Face>> = (first..top)
        .map(|s| {
            k.faces_of_size(s)
                .iter()
                .copied()
                .filter(|f| keep(*f))
                .collect()
        })
        .collect();
    let maps = bases
        .windows(2)
        .map(|w| {
            let (lower, upper) = (&w[0], &w[1]);
            let mut d = ExactMatrix::zeros(upper.len(), lower.len());
            for (r, tau) in upper.iter().enumerate() {
                for j in 0..tau.len() {
                    // bases are sorted, so binary search locates the facet
                    if let Ok(c) = lower.binary_search(&tau.remove_nth(j)) {
                        d.set(r, c, if j % 2 == 0 { 1 } else { -1 });
                    }
                }
            }
            d
        })
        .collect();
    let dims = bases.iter().map(Vec::len).collect();
    CochainComplex::new(dims, maps).expect("coboundary shapes are consistent by construction")
}

/// Augmented cochain complex `C̃^{−1} → C̃^0 → ... → C̃^{dim K}`.
pub fn augmented_cochain_complex(k: &SimplicialComplex) -> CochainComplex {
    cochains_on(k, 0, |_| true)
}

/// Relative cochains of `(K, L)`: faces of `K` not in `L`, term `i` in degree `i`.
pub fn relative_cochain_complex(
    k: &SimplicialComplex,
    l: &SimplicialComplex,
) -> Result<CochainComplex, CohomologyError> {
    if let Some(f) = l.facets().iter().find(|f| !k.contains(**f)) {
        return Err(ComplexError::NotASubcomplex(*f).into());
    }
    Ok(cochains_on(k, 1, |f| !l.contains(f)))
}

pub fn reduced_cohomology(
    k: &SimplicialComplex,
    field: FieldSpec,
) -> Result<CohomologyProfile, CohomologyError> {
    let dims = augmented_cochain_complex(k).cohomology(field)?;
    Ok(CohomologyProfile { field, dims })
}

/// `dim H^i(K, L; F)` for `0 ≤ i ≤ dim K`.
pub fn relative_cohomology(
    k: &SimplicialComplex,
    l: &SimplicialComplex,
    field: FieldSpec,
) -> Result<Vec<usize>, CohomologyError> {
    Ok(relative_cochain_complex(k, l)?.cohomology(field)?)
}

/// `dim H^i(|K|, |K| − x; F)` for `x` interior to `σ`, `0 ≤ i ≤ dim K`,
/// through the shift `H^i(|K|, |K| − x) ≅ H̃^{i − ♯σ}(link_K(σ))`.
pub fn local_cohomology(
    k: &SimplicialComplex,
    sigma: Face,
    field: FieldSpec,
) -> Result<Vec<usize>, CohomologyError> {
    if sigma.is_empty() {
        return Err(CohomologyError::EmptyFace);
    }
    let link = reduced_cohomology(&k.link(sigma)?, field)?;
    let shift = sigma.len() as isize;
    Ok((0..=k.dim()).map(|i| link.get(i - shift)).collect())
}

/// The same groups computed directly as `H^i(K, cost_K(σ))`; `|K| − x`
/// deformation retracts onto the contrastar.
pub fn local_cohomology_via_cost(
    k: &SimplicialComplex,
    sigma: Face,
    field: FieldSpec,
) -> Result<Vec<usize>, CohomologyError> {
    if sigma.is_empty() {
        return Err(CohomologyError::EmptyFace);
    }
    relative_cohomology(k, &k.cost(sigma)?, field)
}
