//! Harnesses that check structural statements about `F(K)` on a given complex.

use thiserror::Error;

use crate::cohomology::{local_cohomology, local_cohomology_via_cost, CohomologyError};
use crate::complex::SimplicialComplex;
use crate::depth::{depth, reisner_condition, topological_condition, DepthError};
use crate::limits::{derived_limit_dims, LimitsError, LimitsProfile};
use crate::linalg::FieldSpec;
use crate::report::CheckReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Depth(#[from] DepthError),
    #[error(transparent)]
    Limits(#[from] LimitsError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

/// For every face `σ`: `depth F(link σ) + ♯σ = depth F(st σ) ≥ depth F(K)`.
pub fn verify_star_link(
    k: &SimplicialComplex,
    field: FieldSpec,
) -> Result<CheckReport, VerifyError> {
    let mut report = CheckReport::new("star_link");
    let whole = depth(k, field)?.depth();
    for &s in k.faces() {
        let link = depth(&k.link(s).expect("face of K"), field)?.depth();
        let star = depth(&k.star(s).expect("face of K"), field)?.depth();
        report.check(link + s.len() == star, || {
            format!(
                "at {s}: depth(link) + ♯σ = {link} + {} but depth(star) = {star}",
                s.len()
            )
        });
        report.check(star >= whole, || {
            format!("at {s}: depth(star) = {star} < depth(K) = {whole}")
        });
    }
    Ok(report)
}

/// Local cohomology through the link shift agrees with the relative
/// cohomology of the contrastar at every nonempty face.
pub fn verify_munkres(k: &SimplicialComplex, field: FieldSpec) -> Result<CheckReport, VerifyError> {
    if k.is_trivial() {
        return Ok(CheckReport::vacuous("munkres"));
    }
    let mut report = CheckReport::new("munkres");
    for &s in k.nonempty_faces() {
        let shifted = local_cohomology(k, s, field)?;
        let relative = local_cohomology_via_cost(k, s, field)?;
        report.check(shifted == relative, || {
            format!("at {s}: link shift gives {shifted:?}, contrastar gives {relative:?}")
        });
    }
    Ok(report)
}

/// For every `r ≤ dim K + 1` the link criterion holds iff the topological
/// criterion (with relative local cohomology) holds.
pub fn verify_criteria_equivalent(
    k: &SimplicialComplex,
    field: FieldSpec,
) -> Result<CheckReport, VerifyError> {
    let mut report = CheckReport::new("criteria");
    for r in 0..=k.dim_info().krull {
        let links = reisner_condition(k, field, r)?;
        let top = topological_condition(k, field, r)?;
        report.check(links == top, || {
            format!("at r = {r}: link criterion {links}, topological criterion {top}")
        });
    }
    Ok(report)
}

/// Data gathered by `verify_key_lemma`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyLemmaData {
    /// Total dimension of `L^i` for `i = −1, 0, ..., dim K` (`None`: infinite).
    pub l_totals: Vec<Option<usize>>,
    pub depth: usize,
    /// Minimum depth of `F(st σ)` over nonempty faces.
    pub min_star_depth: usize,
}

/// With `M = F(K)` and `Φ = Φ_K`: every `L^i` is finite (so the sequence is
/// almost trivial), `L^{−1} = 0`, and for `r ≤ min_σ depth F(st σ)`,
/// `depth F(K) ≥ r ⇔ L^i = 0 for −1 ≤ i ≤ r − 2`. When every `L^i`
/// vanishes, also `depth F(K) ≥ min_σ depth F(st σ)`.
pub fn verify_key_lemma(
    k: &SimplicialComplex,
    field: FieldSpec,
) -> Result<(CheckReport, Option<KeyLemmaData>), VerifyError> {
    if k.is_trivial() {
        return Ok((CheckReport::vacuous("key_lemma"), None));
    }
    let top = (k.dim() + 1) as u32;
    let profile: LimitsProfile = derived_limit_dims(k, field, 2 * top)?;
    let l_totals: Vec<Option<usize>> = (-1..=k.dim()).map(|i| profile.l_total(i)).collect();
    let mut report = CheckReport::new("key_lemma");
    for (i, t) in (-1..).zip(&l_totals) {
        report.check(t.is_some(), || format!("L^{i} is infinite-dimensional"));
    }
    report.check(l_totals[0] == Some(0), || {
        format!("L^-1 = {:?}, expected 0", l_totals[0])
    });

    let whole = depth(k, field)?.depth();
    let mut min_star_depth = usize::MAX;
    for &s in k.nonempty_faces() {
        min_star_depth = min_star_depth.min(depth(&k.star(s).expect("face of K"), field)?.depth());
    }
    let vanishes = |i: isize| l_totals[(i + 1) as usize] == Some(0);
    for r in 0..=min_star_depth {
        let lhs = whole >= r;
        let rhs = (-1..=r as isize - 2).all(|i| i > k.dim() || vanishes(i));
        report.check(lhs == rhs, || {
            format!("at r = {r}: depth ≥ r is {lhs} but L^i = 0 for i ≤ r − 2 is {rhs}")
        });
    }
    if (-1..=k.dim()).all(vanishes) {
        report.check(whole >= min_star_depth, || {
            format!("all L^i vanish but depth {whole} < min star depth {min_star_depth}")
        });
    }
    Ok((
        report,
        Some(KeyLemmaData {
            l_totals,
            depth: whole,
            min_star_depth,
        }),
    ))
}
