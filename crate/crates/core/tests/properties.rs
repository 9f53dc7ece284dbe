use std::collections::BTreeSet;

use proptest::prelude::*;
use srdepth::cohomology::{augmented_cochain_complex, reduced_cohomology};
use srdepth::complex::{Face, SimplicialComplex};
use srdepth::depth::depth;
use srdepth::face_ring::{graded_dim, hilbert_series, restriction_map};
use srdepth::generators::*;
use srdepth::limits::limits_complex;
use srdepth::linalg::{rank, ExactMatrix, FieldSpec};

const PRIMES: [FieldSpec; 3] = [
    FieldSpec::Prime(2),
    FieldSpec::Prime(3),
    FieldSpec::Prime(5),
];

fn arb_complex(max_m: u32) -> impl Strategy<Value = SimplicialComplex> {
    (3..=max_m, 1..=2u32, 0.15..0.7f64, any::<u64>())
        .prop_map(|(m, d, density, seed)| random_complex(m, d, density, seed).unwrap())
}

fn arb_matrix() -> impl Strategy<Value = ExactMatrix> {
    (1..6usize, 1..6usize).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-4i64..=4, c), r)
            .prop_map(|rows| ExactMatrix::from_rows(&rows))
    })
}

fn face_set(k: &SimplicialComplex) -> BTreeSet<Face> {
    k.faces().iter().copied().collect()
}

fn permute(k: &SimplicialComplex, perm: &[u32]) -> SimplicialComplex {
    let facets: Vec<Vec<i64>> = k
        .facet_lists()
        .iter()
        .map(|f| f.iter().map(|&v| perm[v as usize - 1] as i64).collect())
        .collect();
    SimplicialComplex::new(k.num_vertices() as u32, &facets).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn link_in_star_in_complex(k in arb_complex(7)) {
        for &s in k.faces() {
            let star = k.star(s).unwrap();
            let link = k.link(s).unwrap();
            prop_assert!(link.is_subcomplex_of(&star));
            prop_assert!(star.is_subcomplex_of(&k));
            // st σ = σ̄ * link σ
            let joined: BTreeSet<Face> = link
                .faces()
                .iter()
                .flat_map(|&b| s.subsets().map(move |a| a.union(b)))
                .collect();
            prop_assert_eq!(joined, face_set(&star));
        }
    }

    #[test]
    fn induced_composes(k in arb_complex(7), a in any::<u8>(), b in any::<u8>()) {
        let wa = Face::from_bits(a as u64 & k.vertex_set().bits());
        let wb = Face::from_bits(b as u64 & k.vertex_set().bits());
        let twice = k.induced(wa).induced(wb);
        prop_assert_eq!(face_set(&twice), face_set(&k.induced(wa.intersection(wb))));
    }

    #[test]
    fn rank_of_transpose(a in arb_matrix()) {
        for f in PRIMES.into_iter().chain([FieldSpec::Rationals]) {
            prop_assert_eq!(rank(&a, f), rank(&a.transpose(), f));
        }
    }

    #[test]
    fn rational_rank_dominates(a in arb_matrix()) {
        let q = rank(&a, FieldSpec::Rationals);
        for f in PRIMES {
            prop_assert!(q >= rank(&a, f));
        }
    }

    #[test]
    fn cohomology_ignores_labels(k in arb_complex(7), seed in any::<u64>()) {
        let m = k.num_vertices() as u32;
        let mut perm: Vec<u32> = (1..=m).collect();
        // Fisher-Yates driven by the seed
        let mut state = seed;
        for i in (1..perm.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (state >> 33) as usize % (i + 1));
        }
        let l = permute(&k, &perm);
        for f in [FieldSpec::Prime(2), FieldSpec::Rationals] {
            prop_assert_eq!(reduced_cohomology(&k, f).unwrap(), reduced_cohomology(&l, f).unwrap());
            prop_assert_eq!(depth(&k, f).unwrap().depth(), depth(&l, f).unwrap().depth());
        }
    }

    #[test]
    fn euler_characteristic_matches(k in arb_complex(8)) {
        let reduced_euler = k.euler_characteristic() - 1;
        for f in PRIMES.into_iter().chain([FieldSpec::Rationals]) {
            prop_assert_eq!(reduced_cohomology(&k, f).unwrap().euler_characteristic(), reduced_euler);
        }
    }

    #[test]
    fn coboundaries_square_to_zero(k in arb_complex(6)) {
        prop_assert!(augmented_cochain_complex(&k).check(FieldSpec::Rationals).is_ok());
        for d in [0, 2, 4] {
            prop_assert!(limits_complex(&k, d).unwrap().check(FieldSpec::Rationals).is_ok());
        }
    }

    #[test]
    fn restriction_is_functorial(k in arb_complex(5), pick in any::<usize>(), d in 0..3u32) {
        let d = 2 * d;
        let faces = k.faces();
        let top = faces[pick % faces.len()];
        let sigma = Face::from_bits(top.bits() & pick as u64);
        let tau = sigma.union(Face::from_bits(top.bits() & (pick >> 16) as u64));
        let st = restriction_map(&k, sigma, tau, d).unwrap();
        let tu = restriction_map(&k, tau, top, d).unwrap();
        let su = restriction_map(&k, sigma, top, d).unwrap();
        prop_assert_eq!(tu.mul(&st), su);
        let id = restriction_map(&k, tau, tau, d).unwrap();
        prop_assert_eq!(id.clone(), ExactMatrix::identity(id.rows()));
    }

    #[test]
    fn hilbert_series_expands_to_graded_dims(k in arb_complex(8)) {
        let h = hilbert_series(&k);
        for d in (0..=4 * k.num_vertices() as u32).step_by(2) {
            prop_assert_eq!(h.coefficient(d), graded_dim(&k, d).unwrap() as i64);
        }
    }

    #[test]
    fn rational_depth_dominates(k in arb_complex(7)) {
        let q = depth(&k, FieldSpec::Rationals).unwrap().depth();
        for f in PRIMES {
            prop_assert!(q >= depth(&k, f).unwrap().depth());
        }
    }
}

/// Depth adds under joins. This is folklore rather than something the
/// library relies on, so it only guards against regressions.
#[test]
fn join_depth_regression() {
    let pieces = [
        disjoint_points(2).unwrap(),
        disjoint_points(3).unwrap(),
        cycle(4).unwrap(),
        rp2_minimal(),
        simplex(2).unwrap(),
    ];
    for f in [FieldSpec::Prime(2), FieldSpec::Rationals] {
        for (i, a) in pieces.iter().enumerate() {
            for b in &pieces[i..] {
                if a.num_vertices() + b.num_vertices() > 9 {
                    continue;
                }
                let j = join(a, b).unwrap();
                let lhs = depth(&j, f).unwrap().depth();
                let rhs = depth(a, f).unwrap().depth() + depth(b, f).unwrap().depth();
                assert_eq!(
                    lhs,
                    rhs,
                    "join of {:?} and {:?} over {f}",
                    a.facet_lists(),
                    b.facet_lists()
                );
            }
        }
    }
}

#[test]
fn full_simplex_betti_table() {
    for m in 1..=6 {
        let t = srdepth::depth::betti_table(&simplex(m).unwrap(), FieldSpec::Prime(3)).unwrap();
        assert_eq!(t.entries.into_iter().collect::<Vec<_>>(), vec![((0, 0), 1)]);
    }
}
