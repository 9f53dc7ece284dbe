//! Higher derived limits of the star functor `Φ_K(σ) = F(st_K σ)` over the
//! poset of nonempty faces.
//!
//! `lim^i` is the cohomology of the normalized cochain complex whose `n`-th
//! term is the product, over strictly increasing flags `σ_0 ⊂ ... ⊂ σ_n`, of
//! `Φ_K(σ_n)`. The differential is `Σ_k (−1)^k δ^k`: for `k ≤ n`, `δ^k` reads
//! the value on the flag with `σ_k` deleted; `δ^{n+1}` restricts the value on
//! `σ_0 ⊂ ... ⊂ σ_n` along `F(st σ_n) → F(st σ_{n+1})`.
//!
//! All structure maps send a monomial to itself or to zero, so in each degree
//! the complex is a direct sum of blocks, one per monomial, and the block of a
//! monomial depends only on its support `s`. [`derived_limit_dims`] computes
//! each support block once and weights it by the number of monomials with that
//! support; [`limits_complex`] assembles a whole degree at once.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::cohomology::{reduced_cohomology, CohomologyError};
use crate::complex::{Face, SimplicialComplex};
use crate::face_ring::{graded_dim, monomial_basis, support_multiplicity, FaceRingError};
use crate::linalg::{rank, CochainComplex, ExactMatrix, FieldSpec, LinalgError};
use crate::report::CheckReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LimitsError {
    #[error(transparent)]
    FaceRing(#[from] FaceRingError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

/// A chain of faces `σ_0 ⊆ σ_1 ⊆ ... ⊆ σ_n`.
pub type Flag = Vec<Face>;

/// Strictly increasing flags of nonempty faces, grouped by length
/// (`levels[n]` holds flags with `n + 1` faces) and sorted lexicographically.
pub fn flags(k: &SimplicialComplex) -> Vec<Vec<Flag>> {
    let mut levels: Vec<Vec<Flag>> = Vec::new();
    let mut current: Vec<Flag> = k.nonempty_faces().iter().map(|f| vec![*f]).collect();
    while !current.is_empty() {
        current.sort();
        let next: Vec<Flag> = current
            .iter()
            .flat_map(|flag| {
                let last = *flag.last().unwrap();
                k.faces()
                    .iter()
                    .filter(move |t| t.len() > last.len() && last.is_subset_of(**t))
                    .map(move |t| {
                        let mut f = flag.clone();
                        f.push(*t);
                        f
                    })
            })
            .collect();
        levels.push(std::mem::replace(&mut current, next));
    }
    levels
}

/// Weakly increasing chains (identities allowed) with at most `max_len`
/// faces, for the unnormalized complex.
pub fn weak_chains(k: &SimplicialComplex, max_len: usize) -> Vec<Vec<Flag>> {
    let mut levels: Vec<Vec<Flag>> = Vec::new();
    let mut current: Vec<Flag> = k.nonempty_faces().iter().map(|f| vec![*f]).collect();
    while !current.is_empty() && levels.len() < max_len {
        current.sort();
        let next: Vec<Flag> = current
            .iter()
            .flat_map(|flag| {
                let last = *flag.last().unwrap();
                k.faces()
                    .iter()
                    .filter(move |t| !t.is_empty() && last.is_subset_of(**t))
                    .map(move |t| {
                        let mut f = flag.clone();
                        f.push(*t);
                        f
                    })
            })
            .collect();
        levels.push(std::mem::replace(&mut current, next));
    }
    levels
}

/// Assembles the chain-indexed cochain complex. `values[σ]` is the sorted
/// basis of the functor's value at `σ`; structure maps match equal keys.
fn assemble<K: Ord>(levels: &[Vec<Flag>], values: &HashMap<Face, Vec<K>>) -> CochainComplex {
    let value = |f: &Flag| &values[f.last().unwrap()];
    let mut offsets: Vec<Vec<usize>> = Vec::with_capacity(levels.len());
    let mut dims = Vec::with_capacity(levels.len());
    for level in levels {
        let mut offs = Vec::with_capacity(level.len());
        let mut total = 0;
        for f in level {
            offs.push(total);
            total += value(f).len();
        }
        offsets.push(offs);
        dims.push(total);
    }
    let index: Vec<HashMap<&[Face], usize>> = levels
        .iter()
        .map(|level| {
            level
                .iter()
                .enumerate()
                .map(|(i, f)| (f.as_slice(), i))
                .collect()
        })
        .collect();

    let mut maps = Vec::with_capacity(levels.len().saturating_sub(1));
    for n in 0..levels.len().saturating_sub(1) {
        let mut d = ExactMatrix::zeros(dims[n + 1], dims[n]);
        for (j, target) in levels[n + 1].iter().enumerate() {
            let tb = value(target);
            if tb.is_empty() {
                continue;
            }
            for k in 0..=n + 1 {
                let mut source = target.clone();
                source.remove(k);
                let si = index[n][source.as_slice()];
                let sb = value(&source);
                let sign = if k % 2 == 0 { 1 } else { -1 };
                for (r, key) in tb.iter().enumerate() {
                    if let Ok(c) = sb.binary_search(key) {
                        d.add_to(offsets[n + 1][j] + r, offsets[n][si] + c, sign);
                    }
                }
            }
        }
        maps.push(d);
    }
    CochainComplex::new(dims, maps).expect("assembled shapes are consistent")
}

fn star_bases(k: &SimplicialComplex, d: u32) -> Result<HashMap<Face, Vec<Vec<u32>>>, LimitsError> {
    let width = k.max_label() as usize;
    let mut values = HashMap::new();
    for &s in k.nonempty_faces() {
        let mut basis = monomial_basis(&k.star(s).expect("face of K"), d)?.monomials;
        for m in basis.iter_mut() {
            m.resize(width, 0);
        }
        values.insert(s, basis);
    }
    Ok(values)
}

/// The normalized cochain complex computing `lim^* Φ_K` in internal degree
/// `d`, with `C^n_d = ⊕_{flags of n+1 faces} F(st σ_n)_d` on monomial bases.
pub fn limits_complex(k: &SimplicialComplex, d: u32) -> Result<CochainComplex, LimitsError> {
    let values = star_bases(k, d)?;
    Ok(assemble(&flags(k), &values))
}

/// The unnormalized complex (chains may repeat faces) truncated after
/// `max_len` terms.
pub fn unnormalized_limits_complex(
    k: &SimplicialComplex,
    d: u32,
    max_len: usize,
) -> Result<CochainComplex, LimitsError> {
    let values = star_bases(k, d)?;
    Ok(assemble(&weak_chains(k, max_len), &values))
}

/// Matrix of `ρ: F(K)_d → C^0_d`, sending a monomial to its restrictions to
/// every star. Columns index the monomial basis of `F(K)_d`.
pub fn rho_matrix(k: &SimplicialComplex, d: u32) -> Result<ExactMatrix, LimitsError> {
    let values = star_bases(k, d)?;
    let mut source = monomial_basis(k, d)?.monomials;
    let width = k.max_label() as usize;
    for m in source.iter_mut() {
        m.resize(width, 0);
    }
    let rows: usize = k.nonempty_faces().iter().map(|s| values[s].len()).sum();
    let mut m = ExactMatrix::zeros(rows, source.len());
    let mut offset = 0;
    for s in k.nonempty_faces() {
        let basis = &values[s];
        for (c, mono) in source.iter().enumerate() {
            if let Ok(r) = basis.binary_search(mono) {
                m.set(offset + r, c, 1);
            }
        }
        offset += basis.len();
    }
    Ok(m)
}

/// Cohomology of one support block together with the rank of `ρ` on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportBlock {
    pub support: Face,
    /// `lim^i` of the block, `0 ≤ i ≤ dim K`.
    pub lim: Vec<usize>,
    pub rho_rank: usize,
}

impl SupportBlock {
    pub fn rho_kernel(&self) -> usize {
        1 - self.rho_rank
    }

    pub fn rho_cokernel(&self) -> usize {
        self.lim.first().copied().unwrap_or(0) - self.rho_rank
    }
}

/// Computes every support block of `lim^* Φ_K`. The block of `s` is the
/// complex on flags inside `{σ ≠ ∅ : σ ∪ s ∈ K}` with one-dimensional values.
pub fn support_blocks(
    k: &SimplicialComplex,
    field: FieldSpec,
) -> Result<Vec<SupportBlock>, LimitsError> {
    let all = flags(k);
    let width = (k.dim() + 1) as usize;
    let mut blocks = Vec::with_capacity(k.num_faces());
    for &s in k.faces() {
        let alive = |f: Face| k.contains(f.union(s));
        let levels: Vec<Vec<Flag>> = all
            .iter()
            .map(|level| {
                level
                    .iter()
                    .filter(|f| alive(*f.last().unwrap()))
                    .cloned()
                    .collect::<Vec<_>>()
            })
            .take_while(|level| !level.is_empty())
            .collect();
        let values: HashMap<Face, Vec<()>> = k
            .nonempty_faces()
            .iter()
            .map(|f| (*f, if alive(*f) { vec![()] } else { vec![] }))
            .collect();
        let complex = assemble(&levels, &values);
        let mut lim = complex.cohomology(field)?;
        lim.resize(width, 0);

        let c0 = complex.dims().first().copied().unwrap_or(0);
        let rho = ExactMatrix::from_rows(&vec![[1i64]; c0]);
        if let Some(d0) = complex.maps().first() {
            if !d0.mul(&rho).is_zero() {
                return Err(LinalgError::NotAComplex { n: 0 }.into());
            }
        }
        let rho_rank = if c0 == 0 { 0 } else { rank(&rho, field) };
        blocks.push(SupportBlock {
            support: s,
            lim,
            rho_rank,
        });
    }
    Ok(blocks)
}

/// `lim^i` dimensions and `ρ` kernel/cokernel in one internal degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeLimits {
    pub lim: Vec<usize>,
    pub rho_kernel: usize,
    pub rho_cokernel: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitsProfile {
    pub field: FieldSpec,
    pub dim: isize,
    pub degrees: BTreeMap<u32, DegreeLimits>,
    pub blocks: Vec<SupportBlock>,
}

impl LimitsProfile {
    /// `dim L^i_d` for `i ≥ −1`: kernel and cokernel of `ρ` for `i = −1, 0`,
    /// `lim^i` for `i ≥ 1`.
    pub fn l_dim(&self, i: isize, d: u32) -> usize {
        let Some(dl) = self.degrees.get(&d) else {
            return 0;
        };
        match i {
            -1 => dl.rho_kernel,
            0 => dl.rho_cokernel,
            _ if i >= 1 => dl.lim.get(i as usize).copied().unwrap_or(0),
            _ => 0,
        }
    }

    /// Total dimension of `L^i` over all degrees, or `None` when it is
    /// infinite. A block of nonempty support `s` contributes in every degree
    /// `2k` with `k ≥ ♯s`, so `L^i` is finite exactly when it lives on the
    /// empty support, i.e. in degree 0.
    pub fn l_total(&self, i: isize) -> Option<usize> {
        let value = |b: &SupportBlock| match i {
            -1 => b.rho_kernel(),
            0 => b.rho_cokernel(),
            _ if i >= 1 => b.lim.get(i as usize).copied().unwrap_or(0),
            _ => 0,
        };
        if self
            .blocks
            .iter()
            .any(|b| !b.support.is_empty() && value(b) != 0)
        {
            return None;
        }
        Some(
            self.blocks
                .iter()
                .find(|b| b.support.is_empty())
                .map_or(0, value),
        )
    }
}

/// `lim^i Φ_K` in every even degree `d ≤ d_max`, together with `L^{−1}` and
/// `L^0` (kernel and cokernel of `ρ: F(K) → lim Φ_K`).
pub fn derived_limit_dims(
    k: &SimplicialComplex,
    field: FieldSpec,
    d_max: u32,
) -> Result<LimitsProfile, LimitsError> {
    if d_max % 2 == 1 {
        return Err(FaceRingError::OddDegree(d_max).into());
    }
    let blocks = support_blocks(k, field)?;
    let width = (k.dim() + 1) as usize;
    let mut degrees = BTreeMap::new();
    for d in (0..=d_max).step_by(2) {
        let mut lim = vec![0usize; width];
        let (mut graded, mut rho_rank) = (0usize, 0usize);
        for b in &blocks {
            let mult = support_multiplicity(b.support.len(), d / 2) as usize;
            if mult == 0 {
                continue;
            }
            for (acc, x) in lim.iter_mut().zip(&b.lim) {
                *acc += mult * x;
            }
            graded += mult;
            rho_rank += mult * b.rho_rank;
        }
        let lim0 = lim.first().copied().unwrap_or(0);
        degrees.insert(
            d,
            DegreeLimits {
                lim,
                rho_kernel: graded - rho_rank,
                rho_cokernel: lim0 - rho_rank,
            },
        );
    }
    Ok(LimitsProfile {
        field,
        dim: k.dim(),
        degrees,
        blocks,
    })
}

/// `(dim L^{−1}_d, dim L^0_d)`.
pub fn rho(k: &SimplicialComplex, field: FieldSpec, d: u32) -> Result<(usize, usize), LimitsError> {
    let p = derived_limit_dims(k, field, d)?;
    let dl = &p.degrees[&d];
    Ok((dl.rho_kernel, dl.rho_cokernel))
}

/// Checks `lim^0_d = F(K)_d ⊕ [d = 0] H̃^0(K)` and `lim^i_d = [d = 0] H^i(K)`
/// for `i ≥ 1` in every degree up to `d_max`, and that every `lim^i`, `i ≥ 1`,
/// is supported in degree 0 (hence has total dimension `dim H^i(K)`).
pub fn verify_srdec(
    k: &SimplicialComplex,
    field: FieldSpec,
    d_max: u32,
) -> Result<(CheckReport, LimitsProfile), LimitsError> {
    let profile = derived_limit_dims(k, field, d_max)?;
    if k.is_trivial() {
        // no nonempty faces: the indexing category is empty
        return Ok((CheckReport::vacuous("srdec"), profile));
    }
    let coh = reduced_cohomology(k, field)?;
    let mut report = CheckReport::new("srdec");
    for (&d, dl) in &profile.degrees {
        let expect0 = graded_dim(k, d)? as usize + if d == 0 { coh.get(0) } else { 0 };
        report.check(dl.lim[0] == expect0, || {
            format!("lim^0 in degree {d} is {}, expected {expect0}", dl.lim[0])
        });
        for (i, &got) in dl.lim.iter().enumerate().skip(1) {
            let expect = if d == 0 { coh.get(i as isize) } else { 0 };
            report.check(got == expect, || {
                format!("lim^{i} in degree {d} is {got}, expected {expect}")
            });
        }
    }
    for i in 1..=k.dim().max(0) {
        let total = profile.l_total(i);
        report.check(total == Some(coh.get(i)), || {
            format!("total lim^{i} is {total:?}, expected {}", coh.get(i))
        });
    }
    Ok((report, profile))
}
