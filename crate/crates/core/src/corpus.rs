//! Deterministic test corpora: a fixed list of named complexes and a seeded
//! pseudorandom sample.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::generators::*;

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 20240101;

#[derive(Debug, Clone)]
pub struct NamedComplex {
    pub name: String,
    pub complex: SimplicialComplex,
}

fn named(name: impl Into<String>, complex: SimplicialComplex) -> NamedComplex {
    NamedComplex {
        name: name.into(),
        complex,
    }
}

/// Simplices on 2..=5 vertices, boundaries of the 2..=4-simplex, cycles of
/// length 3..=8, 2..=4 points, the minimal `RP²`, and cones, suspensions and
/// joins built from them.
pub fn named_corpus() -> Vec<NamedComplex> {
    let mut out = Vec::new();
    for m in 2..=5 {
        out.push(named(format!("simplex{m}"), simplex(m).unwrap()));
    }
    for d in 2..=4 {
        out.push(named(
            format!("boundary_simplex{d}"),
            boundary_simplex(d).unwrap(),
        ));
    }
    for n in 3..=8 {
        out.push(named(format!("cycle{n}"), cycle(n).unwrap()));
    }
    for k in 2..=4 {
        out.push(named(
            format!("disjoint_points{k}"),
            disjoint_points(k).unwrap(),
        ));
    }
    let rp2 = rp2_minimal();
    out.push(named("rp2", rp2.clone()));
    let pts2 = disjoint_points(2).unwrap();
    let pts3 = disjoint_points(3).unwrap();
    let c3 = cycle(3).unwrap();
    let c4 = cycle(4).unwrap();
    out.push(named("cone_rp2", cone(&rp2).unwrap()));
    out.push(named("cone_cycle4", cone(&c4).unwrap()));
    out.push(named("cone_disjoint_points3", cone(&pts3).unwrap()));
    out.push(named("suspension_rp2", suspension(&rp2).unwrap()));
    out.push(named("suspension_cycle3", suspension(&c3).unwrap()));
    out.push(named(
        "suspension_disjoint_points3",
        suspension(&pts3).unwrap(),
    ));
    out.push(named(
        "join_cycle3_disjoint_points2",
        join(&c3, &pts2).unwrap(),
    ));
    out.push(named(
        "join_disjoint_points2_disjoint_points3",
        join(&pts2, &pts3).unwrap(),
    ));
    out.push(named("join_cycle3_cycle4", join(&c3, &c4).unwrap()));
    out
}

/// Parameters of one random complex; `random_complex(m, d, density, seed)`
/// rebuilds it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomSpec {
    pub name: String,
    pub m: u32,
    pub d: u32,
    pub density: f64,
    pub seed: u64,
}

impl RandomSpec {
    pub fn build(&self) -> SimplicialComplex {
        random_complex(self.m, self.d, self.density, self.seed).expect("parameters drawn in range")
    }
}

/// `count` random complex parameters with `3 ≤ m ≤ max_m` and facet
/// dimension `1 ≤ d ≤ 2`, all derived from `seed`.
pub fn random_specs(count: usize, max_m: u32, seed: u64) -> Vec<RandomSpec> {
    assert!((3..=24).contains(&max_m), "max_m must lie in 3..=24");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let m = rng.gen_range(3..=max_m);
            let d = rng.gen_range(1..=2u32);
            let density = rng.gen_range(15..=60) as f64 / 100.0;
            RandomSpec {
                name: format!("random_{i:03}"),
                m,
                d,
                density,
                seed: rng.gen(),
            }
        })
        .collect()
}

pub fn random_corpus(count: usize, max_m: u32, seed: u64) -> Vec<NamedComplex> {
    random_specs(count, max_m, seed)
        .into_iter()
        .map(|s| named(s.name.clone(), s.build()))
        .collect()
}
