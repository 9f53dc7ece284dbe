//! Finite abstract simplicial complexes with faces stored as vertex bitmasks.
//!
//! Vertices are labelled `1..=64`; vertex `v` occupies bit `v - 1`. A complex
//! keeps its facets (inclusion-maximal faces) together with an eagerly
//! materialized index of every face, ordered by cardinality and then
//! lexicographically on the sorted vertex lists.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

/// Largest vertex label a [`Face`] can hold.
pub const MAX_VERTEX: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("vertex {vertex} is outside the range 1..={m}")]
    VertexOutOfRange { vertex: i64, m: u32 },
    #[error("vertex {0} occurs in no facet")]
    UnusedVertex(u32),
    #[error("no facets given; the complex {{∅}} is declared with m = 0 and the single facet []")]
    EmptyInput,
    #[error("too many vertices: {0} (at most {MAX_VERTEX})")]
    TooManyVertices(u64),
    #[error("face {0} is not in the complex")]
    FaceNotInComplex(Face),
    #[error("not a subcomplex: face {0} is missing from the ambient complex")]
    NotASubcomplex(Face),
    #[error("bad parameter: {0}")]
    BadParameter(String),
}

/// A finite set of vertices, used both for faces and for vertex subsets.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Face(u64);

impl Face {
    pub const EMPTY: Face = Face(0);

    pub const fn from_bits(bits: u64) -> Self {
        Face(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// Builds a face from vertex labels in `1..=64`. Duplicates collapse.
    pub fn from_vertices<I: IntoIterator<Item = u32>>(vertices: I) -> Result<Self, ComplexError> {
        let mut bits = 0u64;
        for v in vertices {
            if v == 0 || v > MAX_VERTEX {
                return Err(ComplexError::VertexOutOfRange {
                    vertex: v as i64,
                    m: MAX_VERTEX,
                });
            }
            bits |= 1 << (v - 1);
        }
        Ok(Face(bits))
    }

    /// The face `{1, ..., n}`.
    pub fn range(n: u32) -> Self {
        assert!(n <= MAX_VERTEX);
        if n == 64 {
            Face(u64::MAX)
        } else {
            Face((1u64 << n) - 1)
        }
    }

    pub fn vertex(v: u32) -> Self {
        assert!((1..=MAX_VERTEX).contains(&v));
        Face(1 << (v - 1))
    }

    /// Cardinality ♯σ.
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Vertex labels in increasing order.
    pub fn vertices(self) -> Vertices {
        Vertices(self.0)
    }

    pub fn to_vec(self) -> Vec<u32> {
        self.vertices().collect()
    }

    pub fn contains_vertex(self, v: u32) -> bool {
        (1..=MAX_VERTEX).contains(&v) && self.0 & (1 << (v - 1)) != 0
    }

    pub fn is_subset_of(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Face) -> Face {
        Face(self.0 | other.0)
    }

    pub fn intersection(self, other: Face) -> Face {
        Face(self.0 & other.0)
    }

    pub fn difference(self, other: Face) -> Face {
        Face(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: Face) -> bool {
        self.0 & other.0 == 0
    }

    /// All subsets of this face, in increasing bit order (∅ first).
    pub fn subsets(self) -> Subsets {
        Subsets {
            set: self.0,
            next: Some(0),
        }
    }

    /// The face with its `k`-th smallest vertex removed.
    pub fn remove_nth(self, k: usize) -> Face {
        let mut bits = self.0;
        for _ in 0..k {
            bits &= bits - 1;
        }
        Face(self.0 & !(bits & bits.wrapping_neg()))
    }
}

impl Ord for Face {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.vertices().cmp(other.vertices()))
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
        f.write_str("{")?;
        for (i, v) in self.vertices().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone)]
pub struct Vertices(u64);

impl Iterator for Vertices {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(v + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Vertices {}

pub struct Subsets {
    set: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = Face;

    fn next(&mut self) -> Option<Face> {
        let cur = self.next?;
        self.next = if cur == self.set {
            None
        } else {
            Some((cur.wrapping_sub(self.set)) & self.set)
        };
        Some(Face(cur))
    }
}

/// Dimension data of a complex: `krull == dim + 1` always.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimInfo {
    pub dim: isize,
    pub krull: usize,
}

/// A nonvoid finite simplicial complex. The minimal complex is `{∅}`.
#[derive(Clone)]
pub struct SimplicialComplex {
    vertex_set: Face,
    facets: Vec<Face>,
    faces: Vec<Face>,
    // offsets[k]..offsets[k + 1] are the faces of cardinality k
    offsets: Vec<usize>,
    index: HashMap<Face, usize>,
}

impl SimplicialComplex {
    /// Validates raw facet lists on the vertex set `{1..m}`.
    ///
    /// Facets are sorted and deduplicated, contained facets are dropped and
    /// every vertex in `1..=m` must occur somewhere.
    pub fn new(m: u32, raw_facets: &[Vec<i64>]) -> Result<Self, ComplexError> {
        if raw_facets.is_empty() {
            return Err(ComplexError::EmptyInput);
        }
        if m as u64 > MAX_VERTEX as u64 {
            return Err(ComplexError::TooManyVertices(m as u64));
        }
        let mut facets = Vec::with_capacity(raw_facets.len());
        for raw in raw_facets {
            let mut bits = 0u64;
            for &v in raw {
                if v < 1 || v > m as i64 {
                    return Err(ComplexError::VertexOutOfRange { vertex: v, m });
                }
                bits |= 1 << (v - 1);
            }
            facets.push(Face(bits));
        }
        let complex = Self::from_facets(facets);
        let declared = Face::range(m);
        if let Some(v) = declared.difference(complex.vertex_set).vertices().next() {
            return Err(ComplexError::UnusedVertex(v));
        }
        Ok(complex)
    }

    /// The complex `{∅}`.
    pub fn trivial() -> Self {
        Self::from_facets([Face::EMPTY])
    }

    /// Downward closure of the given faces. The vertex set is whatever occurs.
    pub fn from_facets<I: IntoIterator<Item = Face>>(generators: I) -> Self {
        let mut gens: Vec<Face> = generators.into_iter().collect();
        gens.sort_by(|a, b| b.cmp(a));
        gens.dedup();
        let mut facets: Vec<Face> = Vec::new();
        for g in gens {
            if !facets.iter().any(|f| g.is_subset_of(*f)) {
                facets.push(g);
            }
        }
        if facets.is_empty() {
            facets.push(Face::EMPTY);
        }
        facets.sort();

        let mut all = BTreeSet::new();
        for f in &facets {
            all.extend(f.subsets());
        }
        let faces: Vec<Face> = all.into_iter().collect();
        let top = faces.last().map_or(0, |f| f.len());
        let mut offsets = vec![0usize; top + 2];
        for f in &faces {
            offsets[f.len() + 1] += 1;
        }
        for k in 1..offsets.len() {
            offsets[k] += offsets[k - 1];
        }
        let index = faces.iter().enumerate().map(|(i, f)| (*f, i)).collect();
        let vertex_set = facets.iter().fold(Face::EMPTY, |acc, f| acc.union(*f));
        SimplicialComplex {
            vertex_set,
            facets,
            faces,
            offsets,
            index,
        }
    }

    /// Downward-closed face family given explicitly (no closure is taken).
    fn from_closed_faces(faces: Vec<Face>) -> Self {
        let maximal: Vec<Face> = faces
            .iter()
            .copied()
            .filter(|f| {
                !faces
                    .iter()
                    .any(|g| g.len() > f.len() && f.is_subset_of(*g))
            })
            .collect();
        Self::from_facets(maximal)
    }

    pub fn vertex_set(&self) -> Face {
        self.vertex_set
    }

    /// Number of vertices actually present.
    pub fn num_vertices(&self) -> usize {
        self.vertex_set.len()
    }

    /// Largest vertex label (0 for `{∅}`).
    pub fn max_label(&self) -> u32 {
        64 - self.vertex_set.bits().leading_zeros()
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    /// Every face, ∅ first, ordered by cardinality then lexicographically.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn nonempty_faces(&self) -> &[Face] {
        &self.faces[1..]
    }

    /// Faces with exactly `k` vertices.
    pub fn faces_of_size(&self, k: usize) -> &[Face] {
        if k + 1 >= self.offsets.len() {
            return &[];
        }
        &self.faces[self.offsets[k]..self.offsets[k + 1]]
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn contains(&self, face: Face) -> bool {
        self.index.contains_key(&face)
    }

    /// Position of `face` in [`faces`](Self::faces).
    pub fn face_index(&self, face: Face) -> Option<usize> {
        self.index.get(&face).copied()
    }

    /// Position of `face` among the faces of its own cardinality.
    pub fn index_in_size(&self, face: Face) -> Option<usize> {
        self.face_index(face).map(|i| i - self.offsets[face.len()])
    }

    pub fn dim(&self) -> isize {
        self.faces.last().map_or(-1, |f| f.len() as isize - 1)
    }

    pub fn dim_info(&self) -> DimInfo {
        let dim = self.dim();
        DimInfo {
            dim,
            krull: (dim + 1) as usize,
        }
    }

    /// `f[k]` is the number of faces with `k` vertices, starting at `f[0] = 1`.
    pub fn f_vector(&self) -> Vec<usize> {
        self.offsets.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Unreduced Euler characteristic.
    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &n)| if k % 2 == 1 { n as i64 } else { -(n as i64) })
            .sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.faces.len() == 1
    }

    fn require(&self, face: Face) -> Result<(), ComplexError> {
        if self.contains(face) {
            Ok(())
        } else {
            Err(ComplexError::FaceNotInComplex(face))
        }
    }

    /// `st_K(σ) = {τ ∈ K : σ ∪ τ ∈ K}`.
    pub fn star(&self, sigma: Face) -> Result<SimplicialComplex, ComplexError> {
        self.require(sigma)?;
        let facets = self
            .facets
            .iter()
            .copied()
            .filter(|f| sigma.is_subset_of(*f));
        Ok(Self::from_facets(facets))
    }

    /// `link_K(σ) = {τ ∈ K : σ ∪ τ ∈ K, σ ∩ τ = ∅}`.
    pub fn link(&self, sigma: Face) -> Result<SimplicialComplex, ComplexError> {
        self.require(sigma)?;
        let facets = self
            .facets
            .iter()
            .filter(|f| sigma.is_subset_of(**f))
            .map(|f| f.difference(sigma));
        Ok(Self::from_facets(facets))
    }

    /// Induced subcomplex `K_W = {σ ∈ K : σ ⊆ W}`.
    pub fn induced(&self, w: Face) -> SimplicialComplex {
        Self::from_facets(self.facets.iter().map(|f| f.intersection(w)))
    }

    /// Contrastar `{τ ∈ K : σ ⊄ τ}`, the faces missing at least one vertex of σ.
    pub fn cost(&self, sigma: Face) -> Result<SimplicialComplex, ComplexError> {
        self.require(sigma)?;
        if sigma.is_empty() {
            return Err(ComplexError::BadParameter(
                "the contrastar of ∅ is void".into(),
            ));
        }
        let faces = self
            .faces
            .iter()
            .copied()
            .filter(|t| !sigma.is_subset_of(*t))
            .collect();
        Ok(Self::from_closed_faces(faces))
    }

    /// True when every face of `self` is a face of `other`.
    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.facets.iter().all(|f| other.contains(*f))
    }

    /// Relabels vertices order-preservingly onto `offset + 1, offset + 2, ...`.
    pub fn relabeled(&self, offset: u32) -> Result<SimplicialComplex, ComplexError> {
        let n = self.num_vertices() as u32;
        if (offset as u64) + (n as u64) > MAX_VERTEX as u64 {
            return Err(ComplexError::TooManyVertices(offset as u64 + n as u64));
        }
        let labels: Vec<u32> = self.vertex_set.vertices().collect();
        let map = |f: Face| {
            let mut bits = 0u64;
            for v in f.vertices() {
                let pos = labels.binary_search(&v).unwrap() as u32;
                bits |= 1 << (offset + pos);
            }
            Face(bits)
        };
        Ok(Self::from_facets(self.facets.iter().map(|f| map(*f))))
    }

    /// The facets as sorted vertex lists.
    pub fn facet_lists(&self) -> Vec<Vec<u32>> {
        self.facets.iter().map(|f| f.to_vec()).collect()
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("vertices", &self.vertex_set)
            .field("facets", &self.facets)
            .finish()
    }
}
