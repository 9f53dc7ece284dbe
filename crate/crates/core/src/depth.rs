//! Depth of `F(K)` by three independent routes.
//!
//! * link criterion: the largest `r ≤ dim K + 1` with `H̃^i(link_K σ) = 0` for
//!   all faces `σ` (including `∅`) and all `i ≤ r − ♯σ − 2`;
//! * topological criterion: `H̃^i(K) = 0` and `H^i(|K|, |K| − x) = 0` for
//!   `i ≤ r − 2` at every point, the local groups computed as the relative
//!   cohomology of `K` modulo the contrastar of the face carrying `x`;
//! * Auslander–Buchsbaum: `m − pd F(K)` with the projective dimension read off
//!   the Betti table, which comes from Hochster's formula
//!   `β_{i,j} = Σ_{♯W = j} dim H̃^{j−i−1}(K_W)`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::cohomology::{
    local_cohomology_via_cost, reduced_cohomology, CohomologyError, CohomologyProfile,
};
use crate::complex::{Face, SimplicialComplex};
use crate::linalg::FieldSpec;

/// Default vertex bound for the `2^m` induced-subcomplex enumeration.
pub const DEFAULT_BETTI_BOUND: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DepthError {
    #[error("{m} vertices exceeds the Betti enumeration bound {bound}")]
    TooLarge { m: usize, bound: usize },
    #[error("depth engines disagree: {0}")]
    EngineDisagreement(Box<DepthReport>),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

fn largest_r(
    max: usize,
    mut holds: impl FnMut(usize) -> Result<bool, DepthError>,
) -> Result<usize, DepthError> {
    let mut best = 0;
    for r in 1..=max {
        if holds(r)? {
            best = r;
        } else {
            break;
        }
    }
    Ok(best)
}

/// `H̃^*(link_K σ)` for every face `σ`, in face order.
pub fn link_profiles(
    k: &SimplicialComplex,
    field: FieldSpec,
) -> Result<Vec<(Face, CohomologyProfile)>, DepthError> {
    k.faces()
        .iter()
        .map(|&s| {
            Ok((
                s,
                reduced_cohomology(&k.link(s).expect("face of K"), field)?,
            ))
        })
        .collect()
}

/// `H^*(K, cost_K σ)` for every nonempty face `σ`.
pub fn local_profiles(
    k: &SimplicialComplex,
    field: FieldSpec,
) -> Result<Vec<(Face, Vec<usize>)>, DepthError> {
    k.nonempty_faces()
        .iter()
        .map(|&s| Ok((s, local_cohomology_via_cost(k, s, field)?)))
        .collect()
}

fn link_condition(profiles: &[(Face, CohomologyProfile)], r: usize) -> Option<Face> {
    profiles
        .iter()
        .find(|(s, p)| !p.vanishes_through(r as isize - s.len() as isize - 2))
        .map(|(s, _)| *s)
}

fn topological_condition_at(
    global: &CohomologyProfile,
    locals: &[(Face, Vec<usize>)],
    r: usize,
) -> Result<(), Option<Face>> {
    let bound = r as isize - 2;
    if !global.vanishes_through(bound) {
        return Err(None);
    }
    for (s, dims) in locals {
        if dims
            .iter()
            .enumerate()
            .any(|(i, &d)| (i as isize) <= bound && d != 0)
        {
            return Err(Some(*s));
        }
    }
    Ok(())
}

/// Link criterion at a given `r`.
pub fn reisner_condition(
    k: &SimplicialComplex,
    field: FieldSpec,
    r: usize,
) -> Result<bool, DepthError> {
    Ok(link_condition(&link_profiles(k, field)?, r).is_none())
}

/// Topological criterion at a given `r`, with the local groups taken from the
/// relative cohomology of the contrastar.
pub fn topological_condition(
    k: &SimplicialComplex,
    field: FieldSpec,
    r: usize,
) -> Result<bool, DepthError> {
    let global = reduced_cohomology(k, field)?;
    Ok(topological_condition_at(&global, &local_profiles(k, field)?, r).is_ok())
}

pub fn depth_reisner(k: &SimplicialComplex, field: FieldSpec) -> Result<usize, DepthError> {
    let profiles = link_profiles(k, field)?;
    largest_r(k.dim_info().krull, |r| {
        Ok(link_condition(&profiles, r).is_none())
    })
}

pub fn depth_topological(k: &SimplicialComplex, field: FieldSpec) -> Result<usize, DepthError> {
    let global = reduced_cohomology(k, field)?;
    let locals = local_profiles(k, field)?;
    largest_r(k.dim_info().krull, |r| {
        Ok(topological_condition_at(&global, &locals, r).is_ok())
    })
}

/// Graded Betti numbers `β_{i,j}` of `F(K)` over the polynomial ring on the
/// vertices of `K`, `j` the squarefree degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    pub m: usize,
    pub entries: BTreeMap<(usize, usize), usize>,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn projective_dimension(&self) -> usize {
        self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    /// `β_i = Σ_j β_{i,j}`.
    pub fn total(&self, i: usize) -> usize {
        self.entries
            .iter()
            .filter(|((a, _), _)| *a == i)
            .map(|(_, v)| v)
            .sum()
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self
            .entries
            .iter()
            .map(|(&(i, j), &b)| format!("β({i},{j})={b}"))
            .collect();
        f.write_str(&cells.join(" "))?;
        Ok(())
    }
}

/// Betti table via Hochster's formula, refusing more than `bound` vertices.
pub fn betti_table_bounded(
    k: &SimplicialComplex,
    field: FieldSpec,
    bound: usize,
) -> Result<BettiTable, DepthError> {
    let m = k.num_vertices();
    if m > bound {
        return Err(DepthError::TooLarge { m, bound });
    }
    let mut entries = BTreeMap::new();
    for w in k.vertex_set().subsets() {
        let j = w.len();
        let profile = reduced_cohomology(&k.induced(w), field)?;
        for (q, dim) in profile.iter() {
            if dim == 0 {
                continue;
            }
            // q = j − i − 1
            let i = j as isize - q - 1;
            debug_assert!(i >= 0);
            *entries.entry((i as usize, j)).or_insert(0) += dim;
        }
    }
    Ok(BettiTable { m, entries })
}

pub fn betti_table(k: &SimplicialComplex, field: FieldSpec) -> Result<BettiTable, DepthError> {
    betti_table_bounded(k, field, DEFAULT_BETTI_BOUND)
}

pub fn depth_ab(k: &SimplicialComplex, field: FieldSpec) -> Result<usize, DepthError> {
    let table = betti_table(k, field)?;
    Ok(table.m - table.projective_dimension())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepthReport {
    pub field: FieldSpec,
    pub dim: isize,
    pub r_reisner: usize,
    pub r_topological: usize,
    pub r_ab: usize,
    pub cohen_macaulay: bool,
    pub agree: bool,
    pub witness: Option<String>,
}

impl DepthReport {
    /// The common value; meaningful when `agree` holds.
    pub fn depth(&self) -> usize {
        self.r_reisner
    }
}

impl fmt::Display for DepthReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "over {}: link criterion {}, topological {}, Auslander-Buchsbaum {}",
            self.field, self.r_reisner, self.r_topological, self.r_ab
        )?;
        if let Some(w) = &self.witness {
            write!(f, " ({w})")?;
        }
        Ok(())
    }
}

/// Runs all three engines; disagreement is an error.
pub fn depth(k: &SimplicialComplex, field: FieldSpec) -> Result<DepthReport, DepthError> {
    let links = link_profiles(k, field)?;
    let global = reduced_cohomology(k, field)?;
    let locals = local_profiles(k, field)?;
    let krull = k.dim_info().krull;
    let r_reisner = largest_r(krull, |r| Ok(link_condition(&links, r).is_none()))?;
    let r_topological = largest_r(krull, |r| {
        Ok(topological_condition_at(&global, &locals, r).is_ok())
    })?;
    let r_ab = depth_ab(k, field)?;
    let agree = r_reisner == r_topological && r_topological == r_ab;
    let mut report = DepthReport {
        field,
        dim: k.dim(),
        r_reisner,
        r_topological,
        r_ab,
        cohen_macaulay: agree && r_reisner == krull,
        agree,
        witness: None,
    };
    if !agree {
        let r = r_reisner.min(r_topological).min(r_ab) + 1;
        let link_face = link_condition(&links, r);
        let top = topological_condition_at(&global, &locals, r);
        report.witness = Some(format!(
            "at r = {r}: link criterion fails at {}, topological criterion fails at {}; complex facets {:?}",
            link_face.map_or("no face".to_string(), |s| s.to_string()),
            match top {
                Ok(()) => "no face".to_string(),
                Err(None) => "global cohomology".to_string(),
                Err(Some(s)) => s.to_string(),
            },
            k.facet_lists()
        ));
        return Err(DepthError::EngineDisagreement(Box::new(report)));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;

    const Q: FieldSpec = FieldSpec::Rationals;
    const F2: FieldSpec = FieldSpec::Prime(2);
    const F3: FieldSpec = FieldSpec::Prime(3);

    fn all_three(k: &SimplicialComplex, f: FieldSpec) -> [usize; 3] {
        [
            depth_reisner(k, f).unwrap(),
            depth_topological(k, f).unwrap(),
            depth_ab(k, f).unwrap(),
        ]
    }

    #[test]
    fn full_simplex_is_polynomial_ring() {
        for m in 1..=5 {
            let k = simplex(m).unwrap();
            assert_eq!(all_three(&k, F2), [m as usize; 3]);
            let t = betti_table(&k, Q).unwrap();
            assert_eq!(t.entries, BTreeMap::from([((0, 0), 1)]));
        }
    }

    #[test]
    fn two_points() {
        let k = disjoint_points(2).unwrap();
        let t = betti_table(&k, Q).unwrap();
        assert_eq!(t.entries, BTreeMap::from([((0, 0), 1), ((1, 2), 1)]));
        assert_eq!(all_three(&k, Q), [1, 1, 1]);
        let r = depth(&k, F2).unwrap();
        assert!(r.cohen_macaulay);
    }

    #[test]
    fn four_cycle() {
        let k = cycle(4).unwrap();
        let t = betti_table(&k, Q).unwrap();
        // (x1x3, x2x4) is a complete intersection: Koszul resolution
        assert_eq!(
            t.entries,
            BTreeMap::from([((0, 0), 1), ((1, 2), 2), ((2, 4), 1)])
        );
        assert_eq!(t.projective_dimension(), 2);
        for f in [F2, F3, Q] {
            assert_eq!(all_three(&k, f), [2, 2, 2]);
        }
    }

    #[test]
    fn rp2_over_each_field() {
        let k = rp2_minimal();
        assert_eq!(all_three(&k, F2), [2, 2, 2]);
        assert_eq!(all_three(&k, Q), [3, 3, 3]);
        assert_eq!(all_three(&k, F3), [3, 3, 3]);
        assert_eq!(betti_table(&k, F2).unwrap().projective_dimension(), 4);
        assert!(!depth(&k, F2).unwrap().cohen_macaulay);
        assert!(depth(&k, Q).unwrap().cohen_macaulay);
    }

    #[test]
    fn trivial_complex_has_depth_zero() {
        let k = SimplicialComplex::trivial();
        assert_eq!(all_three(&k, Q), [0, 0, 0]);
        let r = depth(&k, Q).unwrap();
        assert!(r.cohen_macaulay);
    }

    #[test]
    fn sphere_and_cone() {
        let s2 = boundary_simplex(3).unwrap();
        for f in [F2, F3, Q] {
            let r = depth(&s2, f).unwrap();
            assert_eq!(r.depth(), 3);
            assert!(r.cohen_macaulay);
        }
        let c = cone(&rp2_minimal()).unwrap();
        let r = depth(&c, F2).unwrap();
        assert_eq!(r.depth(), depth_reisner(&rp2_minimal(), F2).unwrap() + 1);
    }

    #[test]
    fn disjoint_points_are_cohen_macaulay() {
        for k in 2..=4 {
            let r = depth(&disjoint_points(k).unwrap(), F2).unwrap();
            assert_eq!(r.depth(), 1);
            assert!(r.cohen_macaulay);
        }
    }

    #[test]
    fn betti_bound() {
        let k = simplex(5).unwrap();
        assert_eq!(
            betti_table_bounded(&k, Q, 4),
            Err(DepthError::TooLarge { m: 5, bound: 4 })
        );
    }

    #[test]
    fn conditions_are_monotone() {
        let k = rp2_minimal();
        let seq: Vec<bool> = (0..=3)
            .map(|r| reisner_condition(&k, F2, r).unwrap())
            .collect();
        assert_eq!(seq, vec![true, true, true, false]);
        let seq: Vec<bool> = (0..=3)
            .map(|r| topological_condition(&k, F2, r).unwrap())
            .collect();
        assert_eq!(seq, vec![true, true, true, false]);
    }
}
