//! The graded face ring `F(K) = F[v_1..v_m] / (v_σ : σ ∉ K)`.
//!
//! Generators sit in degree 2. The ring is only ever handled degreewise: a
//! monomial survives exactly when its support is a face, so each graded piece
//! has the surviving monomials as a basis, independent of the field.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::complex::{ComplexError, Face, SimplicialComplex};
use crate::linalg::ExactMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FaceRingError {
    #[error("degree {0} is odd; the face ring is concentrated in even degrees")]
    OddDegree(u32),
    #[error("{0} is not contained in {1}")]
    NotNested(Face, Face),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

fn half(d: u32) -> Result<u32, FaceRingError> {
    if d % 2 == 1 {
        Err(FaceRingError::OddDegree(d))
    } else {
        Ok(d / 2)
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial coefficient overflow")
}

/// Number of monomials of polynomial degree `k` whose support is exactly a
/// given set of `j` variables.
pub fn support_multiplicity(j: usize, k: u32) -> u64 {
    match (j, k) {
        (0, 0) => 1,
        (0, _) => 0,
        _ if (k as usize) < j => 0,
        _ => binomial(k as u64 - 1, j as u64 - 1),
    }
}

/// `dim F(K)_d` for even `d`.
pub fn graded_dim(k: &SimplicialComplex, d: u32) -> Result<u64, FaceRingError> {
    let h = half(d)?;
    Ok(k.faces()
        .iter()
        .map(|s| support_multiplicity(s.len(), h))
        .sum())
}

/// Graded dimensions of `F(K)` in degrees `0, 2, ..., d_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedDims(pub BTreeMap<u32, u64>);

impl GradedDims {
    pub fn of(k: &SimplicialComplex, d_max: u32) -> GradedDims {
        GradedDims(
            (0..=d_max)
                .step_by(2)
                .map(|d| (d, graded_dim(k, d).unwrap()))
                .collect(),
        )
    }

    pub fn get(&self, d: u32) -> u64 {
        self.0.get(&d).copied().unwrap_or(0)
    }
}

/// Surviving monomials of one degree as exponent vectors indexed by vertex
/// label (`exponents[v - 1]` is the power of `v_v`), lexicographically sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialBasis {
    pub degree: u32,
    pub monomials: Vec<Vec<u32>>,
}

impl MonomialBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn position(&self, exps: &[u32]) -> Option<usize> {
        self.monomials
            .binary_search_by(|m| m.as_slice().cmp(exps))
            .ok()
    }
}

pub fn support(exps: &[u32]) -> Face {
    Face::from_bits(
        exps.iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |acc, (i, _)| acc | 1 << i),
    )
}

/// Pushes every positive composition of `k` spread over the vertices of `s`.
fn compositions(s: &[u32], k: u32, width: usize, out: &mut Vec<Vec<u32>>) {
    fn rec(s: &[u32], k: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        match s {
            [] => {
                if k == 0 {
                    out.push(cur.clone());
                }
            }
            [last] => {
                if k >= 1 {
                    cur[*last as usize - 1] = k;
                    out.push(cur.clone());
                    cur[*last as usize - 1] = 0;
                }
            }
            [first, rest @ ..] => {
                let reserve = rest.len() as u32;
                for e in 1..=k.saturating_sub(reserve) {
                    cur[*first as usize - 1] = e;
                    rec(rest, k - e, cur, out);
                }
                cur[*first as usize - 1] = 0;
            }
        }
    }
    let mut cur = vec![0; width];
    rec(s, k, &mut cur, out);
}

fn basis_with_width(
    k: &SimplicialComplex,
    d: u32,
    width: usize,
) -> Result<MonomialBasis, FaceRingError> {
    let h = half(d)?;
    let mut monomials = Vec::new();
    for s in k.faces() {
        if (s.len() as u32) <= h {
            compositions(&s.to_vec(), h, width, &mut monomials);
        }
    }
    monomials.sort();
    Ok(MonomialBasis {
        degree: d,
        monomials,
    })
}

pub fn monomial_basis(k: &SimplicialComplex, d: u32) -> Result<MonomialBasis, FaceRingError> {
    basis_with_width(k, d, k.max_label() as usize)
}

/// Matrix of the surjection `F(st_K σ)_d → F(st_K τ)_d` for `σ ⊆ τ`: each
/// basis monomial maps to itself when its support is a face of `st_K(τ)` and
/// to zero otherwise. Rows index the target basis, columns the source basis.
pub fn restriction_map(
    k: &SimplicialComplex,
    sigma: Face,
    tau: Face,
    d: u32,
) -> Result<ExactMatrix, FaceRingError> {
    if !sigma.is_subset_of(tau) {
        return Err(FaceRingError::NotNested(sigma, tau));
    }
    let width = k.max_label() as usize;
    let source = basis_with_width(&k.star(sigma)?, d, width)?;
    let target = basis_with_width(&k.star(tau)?, d, width)?;
    let mut m = ExactMatrix::zeros(target.len(), source.len());
    for (c, mono) in source.monomials.iter().enumerate() {
        if let Some(r) = target.position(mono) {
            m.set(r, c, 1);
        }
    }
    Ok(m)
}

/// `N(t) / (1 − t²)^n` with `n = dim K + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertSeries {
    /// `numerator[j]` is the coefficient of `t^j`.
    pub numerator: Vec<i64>,
    pub denominator_exp: usize,
}

impl HilbertSeries {
    /// Coefficient of `t^d` in the power series expansion.
    pub fn coefficient(&self, d: u32) -> i64 {
        let n = self.denominator_exp as u64;
        self.numerator
            .iter()
            .enumerate()
            .filter(|(j, c)| **c != 0 && (*j as u32) <= d && (d - *j as u32).is_multiple_of(2))
            .map(|(j, c)| {
                let q = (d as u64 - j as u64) / 2;
                // coefficient of t^{2q} in (1 − t²)^{−n}
                let series = if n == 0 {
                    u64::from(q == 0)
                } else {
                    binomial(q + n - 1, n - 1)
                };
                c * series as i64
            })
            .sum()
    }
}

/// `Σ_{σ ∈ K} t^{2♯σ} / (1 − t²)^{♯σ}` over the common denominator.
pub fn hilbert_series(k: &SimplicialComplex) -> HilbertSeries {
    let n = k.dim_info().krull;
    let mut numerator = vec![0i64; 2 * n + 1];
    for (size, &count) in k.f_vector().iter().enumerate() {
        // t^{2 size} (1 − t²)^{n − size}
        let e = (n - size) as u64;
        for i in 0..=e {
            let c = binomial(e, i) as i64 * if i % 2 == 0 { 1 } else { -1 };
            numerator[2 * size + 2 * i as usize] += c * count as i64;
        }
    }
    while numerator.len() > 1 && numerator.last() == Some(&0) {
        numerator.pop();
    }
    HilbertSeries {
        numerator,
        denominator_exp: n,
    }
}
