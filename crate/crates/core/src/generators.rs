//! Standard constructions used to build test corpora.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{ComplexError, Face, SimplicialComplex, MAX_VERTEX};

fn bad(msg: impl Into<String>) -> ComplexError {
    ComplexError::BadParameter(msg.into())
}

/// Full simplex on the vertices `1..=m`.
pub fn simplex(m: u32) -> Result<SimplicialComplex, ComplexError> {
    if m == 0 || m > MAX_VERTEX {
        return Err(bad(format!(
            "simplex needs 1..={MAX_VERTEX} vertices, got {m}"
        )));
    }
    Ok(SimplicialComplex::from_facets([Face::range(m)]))
}

/// Boundary of the `dim`-simplex: all proper subsets of `{1..dim+1}`.
/// A `(dim - 1)`-sphere.
pub fn boundary_simplex(dim: u32) -> Result<SimplicialComplex, ComplexError> {
    if dim == 0 || dim >= MAX_VERTEX {
        return Err(bad(format!(
            "boundary_simplex needs dim in 1..{MAX_VERTEX}, got {dim}"
        )));
    }
    let full = Face::range(dim + 1);
    Ok(SimplicialComplex::from_facets(
        (0..=dim as usize).map(|k| full.remove_nth(k)),
    ))
}

/// The `n`-gon: edges `{i, i+1}` and `{1, n}`.
pub fn cycle(n: u32) -> Result<SimplicialComplex, ComplexError> {
    if !(3..=MAX_VERTEX).contains(&n) {
        return Err(bad(format!(
            "cycle needs 3..={MAX_VERTEX} vertices, got {n}"
        )));
    }
    let edges = (1..=n).map(|i| {
        let j = if i == n { 1 } else { i + 1 };
        Face::vertex(i).union(Face::vertex(j))
    });
    Ok(SimplicialComplex::from_facets(edges))
}

/// `k` isolated vertices.
pub fn disjoint_points(k: u32) -> Result<SimplicialComplex, ComplexError> {
    if k == 0 || k > MAX_VERTEX {
        return Err(bad(format!(
            "disjoint_points needs 1..={MAX_VERTEX} points, got {k}"
        )));
    }
    Ok(SimplicialComplex::from_facets((1..=k).map(Face::vertex)))
}

/// Join `K * L`. Vertices of `K` are compacted onto `1..=|V(K)|` and those
/// of `L` follow.
pub fn join(
    k: &SimplicialComplex,
    l: &SimplicialComplex,
) -> Result<SimplicialComplex, ComplexError> {
    let k = k.relabeled(0)?;
    let l = l.relabeled(k.num_vertices() as u32)?;
    let mut facets = Vec::with_capacity(k.facets().len() * l.facets().len());
    for a in k.facets() {
        for b in l.facets() {
            facets.push(a.union(*b));
        }
    }
    Ok(SimplicialComplex::from_facets(facets))
}

/// Cone with apex `1`; equal to `join(simplex(1), K)`.
pub fn cone(k: &SimplicialComplex) -> Result<SimplicialComplex, ComplexError> {
    join(&simplex(1)?, k)
}

/// Suspension with poles `1` and `2`; equal to `join(disjoint_points(2), K)`.
pub fn suspension(k: &SimplicialComplex) -> Result<SimplicialComplex, ComplexError> {
    join(&disjoint_points(2)?, k)
}

/// The minimal triangulation of the real projective plane: 6 vertices,
/// 15 edges, 10 triangles.
pub fn rp2_minimal() -> SimplicialComplex {
    const TRIANGLES: [[u32; 3]; 10] = [
        [1, 2, 3],
        [1, 3, 4],
        [1, 4, 5],
        [1, 5, 6],
        [1, 2, 6],
        [2, 3, 5],
        [2, 4, 5],
        [2, 4, 6],
        [3, 4, 6],
        [3, 5, 6],
    ];
    SimplicialComplex::from_facets(
        TRIANGLES
            .iter()
            .map(|t| Face::from_vertices(t.iter().copied()).unwrap()),
    )
}

/// Pseudorandom complex on `1..=m`: each `(d + 1)`-subset is a facet with
/// probability `density`; vertices left uncovered become isolated points.
/// Deterministic in `seed`.
pub fn random_complex(
    m: u32,
    d: u32,
    density: f64,
    seed: u64,
) -> Result<SimplicialComplex, ComplexError> {
    if m == 0 || m > 24 {
        return Err(bad(format!(
            "random_complex needs 1..=24 vertices, got {m}"
        )));
    }
    if d + 1 > m {
        return Err(bad(format!(
            "dimension {d} needs at least {} vertices",
            d + 1
        )));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(bad(format!("density {density} is not in [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut facets: Vec<Face> = Vec::new();
    for bits in 0u64..(1u64 << m) {
        if bits.count_ones() == d + 1 && rng.gen_bool(density) {
            facets.push(Face::from_bits(bits));
        }
    }
    let covered = facets.iter().fold(Face::EMPTY, |acc, f| acc.union(*f));
    facets.extend(
        Face::range(m)
            .difference(covered)
            .vertices()
            .map(Face::vertex),
    );
    Ok(SimplicialComplex::from_facets(facets))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_four() {
        let c = cycle(4).unwrap();
        assert_eq!(c.num_vertices(), 4);
        assert_eq!(c.faces_of_size(2).len(), 4);
        assert_eq!(c.euler_characteristic(), 0);
    }

    #[test]
    fn rp2_f_vector_and_incidences() {
        let k = rp2_minimal();
        assert_eq!(k.f_vector(), vec![1, 6, 15, 10]);
        // every edge lies in exactly two triangles
        let triangles = k.faces_of_size(3);
        let mut incidences = 0;
        for e in k.faces_of_size(2) {
            let n = triangles.iter().filter(|t| e.is_subset_of(**t)).count();
            assert_eq!(n, 2, "edge {e}");
            incidences += n;
        }
        assert_eq!(incidences, 2 * triangles.len() * 3 / 2);
        assert_eq!(k.euler_characteristic(), 1);
    }

    #[test]
    fn cone_is_join_with_point() {
        let k = cycle(5).unwrap();
        assert_eq!(cone(&k).unwrap(), join(&simplex(1).unwrap(), &k).unwrap());
        let c = cone(&k).unwrap();
        assert_eq!(c.num_vertices(), 6);
        assert_eq!(c.dim(), 2);
    }

    #[test]
    fn suspension_of_points_is_cycle() {
        let s = suspension(&disjoint_points(2).unwrap()).unwrap();
        assert_eq!(s.f_vector(), vec![1, 4, 4]);
        assert_eq!(s.euler_characteristic(), 0);
    }

    #[test]
    fn boundary_simplex_shapes() {
        assert_eq!(boundary_simplex(1).unwrap().f_vector(), vec![1, 2]);
        assert_eq!(boundary_simplex(2).unwrap(), cycle(3).unwrap());
        assert_eq!(boundary_simplex(3).unwrap().f_vector(), vec![1, 4, 6, 4]);
    }

    #[test]
    fn random_is_deterministic_and_uses_every_vertex() {
        let a = random_complex(7, 2, 0.5, 42).unwrap();
        let b = random_complex(7, 2, 0.5, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.vertex_set(), Face::range(7));
        assert!(a.dim() <= 2);
        assert!(random_complex(3, 3, 0.5, 1).is_err());
        assert!(random_complex(3, 1, 1.5, 1).is_err());
    }

    #[test]
    fn bad_parameters() {
        assert!(cycle(2).is_err());
        assert!(simplex(0).is_err());
        assert!(disjoint_points(0).is_err());
        assert!(boundary_simplex(0).is_err());
    }
}
