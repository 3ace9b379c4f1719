//! Abstract simplicial complexes and simple-polytope combinatorics.
//!
//! A simple polytope `P` is only ever represented through the boundary complex
//! `K(P)` of its dual: facets of `P` are the vertices of `K(P)` and a set of
//! facets meets in a face of `P` exactly when it spans a simplex of `K(P)`.
//! Beyond purity, the pseudomanifold condition and the Euler characteristic of
//! a sphere, polytopality is taken on trust.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Faces are stored as bitmasks, so vertex labels live in `1..=63`.
pub const MAX_VERTICES: usize = 63;

pub type Face = u64;

/// A finite abstract simplicial complex on the vertex set `{1, ..., m}`.
///
/// Stored by maximal faces. The empty face is always a member. Vertices that
/// lie in no face ("ghost vertices") are allowed.
#[derive(Clone)]
pub struct SimplicialComplex {
    m: usize,
    maximal: Vec<Face>,
    labels: Vec<usize>,
}

impl SimplicialComplex {
    /// Builds a complex from raw 1-based faces, absorbing faces that are
    /// contained in others. Maximal faces keep their order of first appearance.
    pub fn new(m: usize, faces: &[Vec<i64>]) -> Result<Self> {
        if m == 0 && faces.is_empty() {
            return Err(Error::EmptyComplex);
        }
        if m > MAX_VERTICES {
            return Err(Error::TooManyVertices { m });
        }
        let mut masks = Vec::with_capacity(faces.len());
        for face in faces {
            let mut mask = 0u64;
            for &v in face {
                if v < 1 || v as usize > m {
                    return Err(Error::VertexOutOfRange { vertex: v, m });
                }
                mask |= 1 << (v - 1);
            }
            masks.push(mask);
        }
        Ok(Self::from_masks(m, masks))
    }

    /// Normalizes an arbitrary list of faces given as 0-based bitmasks.
    pub fn from_masks(m: usize, faces: impl IntoIterator<Item = Face>) -> Self {
        assert!(m <= MAX_VERTICES);
        let faces: Vec<Face> = faces.into_iter().collect();
        debug_assert!(faces.iter().all(|&f| m == 64 || f >> m == 0));
        let mut maximal: Vec<Face> = Vec::new();
        for (idx, &f) in faces.iter().enumerate() {
            // Strictly contained in another face, or a repeat.
            let dominated = faces
                .iter()
                .enumerate()
                .any(|(j, &g)| (f & g == f) && (f != g || j < idx));
            if !dominated {
                maximal.push(f);
            }
        }
        if maximal.is_empty() {
            maximal.push(0);
        }
        SimplicialComplex {
            m,
            maximal,
            labels: (1..=m).collect(),
        }
    }

    /// Boundary of the `n`-simplex on `n + 1` vertices.
    pub fn simplex_boundary(n: usize) -> Self {
        let m = n + 1;
        let full: Face = (1u64 << m) - 1;
        Self::from_masks(m, (0..m).map(|v| full & !(1 << v)))
    }

    /// The full simplex on `m` vertices.
    pub fn simplex(m: usize) -> Self {
        Self::from_masks(m, [(1u64 << m) - 1])
    }

    /// The boundary of a `k`-gon: edges `{j, j+1}` and `{k, 1}`.
    pub fn cycle(k: usize) -> Self {
        assert!(k >= 3);
        Self::from_masks(k, (0..k).map(|j| (1u64 << j) | (1u64 << ((j + 1) % k))))
    }

    pub fn vertex_count(&self) -> usize {
        self.m
    }

    pub fn maximal_faces(&self) -> &[Face] {
        &self.maximal
    }

    /// Original vertex labels, for complexes obtained by restriction.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Mask of all vertices `1..=m`.
    pub fn vertex_mask(&self) -> Face {
        if self.m == 0 {
            0
        } else {
            u64::MAX >> (64 - self.m)
        }
    }

    /// `-1` for the complex whose only face is empty.
    pub fn dim(&self) -> i64 {
        self.maximal
            .iter()
            .map(|f| f.count_ones() as i64)
            .max()
            .unwrap_or(0)
            - 1
    }

    pub fn is_face(&self, sigma: Face) -> bool {
        self.maximal.iter().any(|&f| sigma & f == sigma)
    }

    pub fn is_pure(&self) -> bool {
        let d = self.maximal[0].count_ones();
        self.maximal.iter().all(|f| f.count_ones() == d)
    }

    /// True when `K` is the full simplex on all of its vertices (no ghosts).
    pub fn is_full_simplex(&self) -> bool {
        self.maximal.len() == 1 && self.maximal[0] == self.vertex_mask()
    }

    /// True when some vertex lies in every maximal face, which makes `|K|` a cone.
    pub fn is_cone(&self) -> bool {
        self.maximal.iter().fold(u64::MAX, |acc, &f| acc & f) != 0
    }

    /// All faces, grouped by cardinality `0..=dim+1`, each group sorted by mask.
    pub fn faces_by_size(&self) -> Vec<Vec<Face>> {
        let top = (self.dim() + 1) as usize;
        let mut seen: Vec<BTreeSet<Face>> = vec![BTreeSet::new(); top + 1];
        for &f in &self.maximal {
            // Enumerate submasks of f, including 0.
            let mut s = f;
            loop {
                seen[s.count_ones() as usize].insert(s);
                if s == 0 {
                    break;
                }
                s = (s - 1) & f;
            }
        }
        seen.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    /// Number of faces with `i` vertices, for `i = 0..=dim+1`.
    pub fn face_counts(&self) -> Vec<u64> {
        self.faces_by_size().iter().map(|g| g.len() as u64).collect()
    }

    /// Restriction to a vertex subset given as a 0-based mask, relabelled onto
    /// `1..=|I|` in increasing order of the original labels.
    pub fn restrict_mask(&self, subset: Face) -> SimplicialComplex {
        let k = subset.count_ones() as usize;
        let positions: Vec<usize> = (0..self.m).filter(|&v| subset >> v & 1 == 1).collect();
        let faces = self.maximal.iter().map(|&f| compress(f & subset, &positions));
        let mut restricted = Self::from_masks(k, faces);
        restricted.labels = positions.iter().map(|&v| self.labels[v]).collect();
        restricted
    }

    /// The full subcomplex `K_I = { σ ∈ K : σ ⊆ I }` on 1-based vertices `I`.
    pub fn full_subcomplex(&self, vertices: &[usize]) -> Result<SimplicialComplex> {
        if vertices.is_empty() {
            return Err(Error::InvalidSubset { m: self.m });
        }
        let mut mask = 0u64;
        for &v in vertices {
            if v < 1 || v > self.m {
                return Err(Error::InvalidSubset { m: self.m });
            }
            mask |= 1 << (v - 1);
        }
        Ok(self.restrict_mask(mask))
    }

    /// The join `K1 * K2`; vertices of `other` are shifted by `m1`.
    pub fn join(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        let m = self.m + other.m;
        if m > MAX_VERTICES {
            return Err(Error::TooManyVertices { m });
        }
        let shift = self.m;
        let faces = self
            .maximal
            .iter()
            .flat_map(|&a| other.maximal.iter().map(move |&b| a | (b << shift)));
        Ok(Self::from_masks(m, faces))
    }

    /// Faces as sorted 1-based vertex lists.
    pub fn facets_1based(&self) -> Vec<Vec<usize>> {
        self.maximal.iter().map(|&f| mask_to_vertices(f)).collect()
    }
}

/// 1-based vertices of a 0-based mask, increasing.
pub fn mask_to_vertices(mask: Face) -> Vec<usize> {
    (0..64).filter(|&v| mask >> v & 1 == 1).map(|v| v + 1).collect()
}

/// 0-based mask of 1-based vertices.
pub fn vertices_to_mask(vertices: &[usize]) -> Face {
    vertices.iter().fold(0, |acc, &v| acc | (1 << (v - 1)))
}

fn compress(mask: Face, positions: &[usize]) -> Face {
    positions
        .iter()
        .enumerate()
        .filter(|&(_, &p)| mask >> p & 1 == 1)
        .fold(0, |acc, (i, _)| acc | (1 << i))
}

impl PartialEq for SimplicialComplex {
    /// Equality of vertex count and face sets; labels and order are ignored.
    fn eq(&self, other: &Self) -> bool {
        let mut a = self.maximal.clone();
        let mut b = other.maximal.clone();
        a.sort_unstable();
        b.sort_unstable();
        self.m == other.m && a == b
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K(m={}, {:?})", self.m, self.facets_1based())
    }
}

#[derive(Serialize, Deserialize)]
struct RawComplex {
    m: usize,
    facets: Vec<Vec<i64>>,
}

impl Serialize for SimplicialComplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawComplex {
            m: self.m,
            facets: self
                .facets_1based()
                .into_iter()
                .map(|f| f.into_iter().map(|v| v as i64).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SimplicialComplex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawComplex::deserialize(d)?;
        SimplicialComplex::new(raw.m, &raw.facets).map_err(serde::de::Error::custom)
    }
}

/// `K(P)` for a simple `n`-polytope `P`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolytopeDual {
    n: usize,
    complex: SimplicialComplex,
}

impl PolytopeDual {
    /// Checks purity, that every vertex is used, the pseudomanifold condition
    /// and that the mod-2 homology is that of `S^{n-1}`.
    pub fn new(n: usize, complex: SimplicialComplex) -> Result<Self> {
        let bad = |reason: String| Error::InvalidPolytope { n, reason };
        if n == 0 {
            return Err(bad("dimension must be positive".into()));
        }
        if let Some(&f) = complex.maximal.iter().find(|f| f.count_ones() as usize != n) {
            return Err(bad(format!(
                "maximal face {:?} does not have {n} vertices",
                mask_to_vertices(f)
            )));
        }
        let used = complex.maximal.iter().fold(0u64, |a, &f| a | f);
        if used != complex.vertex_mask() {
            return Err(bad("every vertex must be a face (one per facet of P)".into()));
        }
        let faces = complex.faces_by_size();
        for &ridge in &faces[n - 1] {
            let cofaces = complex.maximal.iter().filter(|&&f| ridge & f == ridge).count();
            if cofaces != 2 {
                return Err(bad(format!(
                    "ridge {:?} lies in {cofaces} maximal faces, expected 2",
                    mask_to_vertices(ridge)
                )));
            }
        }
        let h = crate::homology::reduced_homology_over::<crate::F2>(&complex);
        let sphere: Vec<(i64, usize)> = vec![(n as i64 - 1, 1)];
        let ranks: Vec<(i64, usize)> = h.iter().map(|(d, g)| (d, g.rank)).filter(|x| x.1 > 0).collect();
        if ranks != sphere {
            return Err(bad(format!(
                "mod-2 homology {ranks:?} (degree, rank) is not that of S^{}",
                n - 1
            )));
        }
        Ok(PolytopeDual { n, complex })
    }

    pub fn simplex(n: usize) -> Self {
        Self::new(n, SimplicialComplex::simplex_boundary(n)).expect("simplex boundary")
    }

    pub fn polygon(k: usize) -> Self {
        Self::new(2, SimplicialComplex::cycle(k)).expect("polygon")
    }

    /// `K(P1 × P2) = K(P1) * K(P2)`.
    pub fn product(&self, other: &PolytopeDual) -> Result<Self> {
        Self::new(self.n + other.n, self.complex.join(&other.complex)?)
    }

    /// The product of simplices `Δ^{n_1} × ... × Δ^{n_l}`.
    pub fn simplex_product(dims: &[usize]) -> Result<Self> {
        let (first, rest) = dims
            .split_first()
            .ok_or_else(|| Error::InvalidParameters("empty list of simplex dimensions".into()))?;
        rest.iter()
            .try_fold(Self::simplex(*first), |acc, &d| acc.product(&Self::simplex(d)))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Number of facets of `P`.
    pub fn facet_count(&self) -> usize {
        self.complex.m
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn f_vector(&self) -> FVector {
        let counts = self.complex.face_counts();
        debug_assert_eq!(counts.len(), self.n + 1);
        FVector { entries: counts }
    }

    pub fn h_vector(&self) -> HVector {
        h_vector(&self.f_vector(), self.n)
    }
}

#[derive(Deserialize)]
struct RawDual {
    n: usize,
    complex: SimplicialComplex,
}

impl<'de> Deserialize<'de> for PolytopeDual {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawDual::deserialize(d)?;
        PolytopeDual::new(raw.n, raw.complex).map_err(serde::de::Error::custom)
    }
}

/// `(f_{-1}, f_0, ..., f_{n-1})` where `f_i` counts the `(n-i-1)`-faces of
/// `P`, equivalently the faces of `K(P)` with `i + 1` vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FVector {
    pub entries: Vec<u64>,
}

impl FVector {
    /// `f_i` for `i >= -1`.
    pub fn f(&self, i: i64) -> u64 {
        self.entries[(i + 1) as usize]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HVector {
    pub entries: Vec<i64>,
}

impl HVector {
    pub fn n(&self) -> usize {
        self.entries.len() - 1
    }
}

/// `h_k = sum_{i=0}^{k} (-1)^{k-i} C(n-i, n-k) f_{i-1}`.
pub fn h_vector(f: &FVector, n: usize) -> HVector {
    assert!(f.entries.len() >= n + 1, "f-vector too short for dimension {n}");
    let entries = (0..=n)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
                    sign * binomial((n - i) as u64, (n - k) as u64) as i64 * f.f(i as i64 - 1) as i64
                })
                .sum()
        })
        .collect();
    HVector { entries }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DehnSommervilleReport {
    pub h: Vec<i64>,
    /// `h_i = h_{n-i}` for all `i`.
    pub symmetric: bool,
    /// `h_1 >= h_2`, when both exist. Equality is forced in dimension 3 and
    /// strict inequality holds for simple polytopes of dimension above 3.
    pub h1_at_least_h2: Option<bool>,
    /// Set when the vector cannot come from a simple polytope.
    pub flagged: bool,
    pub notes: Vec<String>,
}

pub fn dehn_sommerville_report(h: &HVector) -> DehnSommervilleReport {
    let e = &h.entries;
    let n = e.len() - 1;
    let symmetric = (0..=n).all(|i| e[i] == e[n - i]);
    let h1_at_least_h2 = (n >= 2).then(|| e[1] >= e[2]);
    let mut notes = Vec::new();
    if !symmetric {
        notes.push("h-vector is not symmetric; input cannot be a simple polytope".to_string());
    }
    if e.iter().any(|&x| x < 0) {
        notes.push("h-vector has a negative entry".to_string());
    }
    if n > 3 && h1_at_least_h2 == Some(true) && e[1] == e[2] {
        notes.push("h_1 = h_2 in dimension above 3 contradicts the g-theorem".to_string());
    }
    if n >= 2 && h1_at_least_h2 == Some(false) {
        notes.push("h_1 < h_2 contradicts the g-theorem".to_string());
    }
    let flagged = !notes.is_empty() || e.first() != Some(&1);
    DehnSommervilleReport {
        h: e.clone(),
        symmetric,
        h1_at_least_h2,
        flagged,
        notes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(m: usize, faces: &[&[i64]]) -> SimplicialComplex {
        SimplicialComplex::new(m, &faces.iter().map(|f| f.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn normalization() {
        let c = k(4, &[&[1, 2], &[2, 3], &[3, 4], &[4, 1]]);
        assert_eq!(c.dim(), 1);
        assert_eq!(c.maximal_faces().len(), 4);

        let absorbed = k(2, &[&[1, 2], &[2], &[1]]);
        assert_eq!(absorbed.facets_1based(), vec![vec![1, 2]]);
        assert_eq!(absorbed.dim(), 1);

        let dup = k(3, &[&[1, 2], &[2, 1], &[3]]);
        assert_eq!(dup.facets_1based(), vec![vec![1, 2], vec![3]]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            SimplicialComplex::new(4, &[vec![1, 5]]).unwrap_err(),
            Error::VertexOutOfRange { vertex: 5, m: 4 }
        );
        assert_eq!(SimplicialComplex::new(0, &[]).unwrap_err(), Error::EmptyComplex);
        assert!(matches!(
            SimplicialComplex::new(64, &[vec![1]]),
            Err(Error::TooManyVertices { m: 64 })
        ));
        // Empty face list on positive m: only the empty face, all vertices ghosts.
        let void = SimplicialComplex::new(2, &[]).unwrap();
        assert_eq!(void.dim(), -1);
    }

    #[test]
    fn full_subcomplexes() {
        let c4 = k(4, &[&[1, 2], &[2, 3], &[3, 4], &[4, 1]]);
        let two_points = c4.full_subcomplex(&[1, 3]).unwrap();
        assert_eq!(two_points, k(2, &[&[1], &[2]]));
        assert_eq!(two_points.labels(), &[1, 3]);

        let point = c4.full_subcomplex(&[2]).unwrap();
        assert_eq!(point, SimplicialComplex::simplex(1));

        let tri = SimplicialComplex::simplex_boundary(2);
        assert_eq!(tri.full_subcomplex(&[1, 2, 3]).unwrap(), tri);

        assert!(c4.full_subcomplex(&[]).is_err());
        assert!(c4.full_subcomplex(&[5]).is_err());
    }

    #[test]
    fn ghost_vertices_survive_restriction() {
        let c = k(3, &[&[1, 2]]);
        let r = c.full_subcomplex(&[2, 3]).unwrap();
        assert_eq!(r.vertex_count(), 2);
        assert_eq!(r.facets_1based(), vec![vec![1]]);
    }

    #[test]
    fn joins() {
        let s0 = SimplicialComplex::simplex_boundary(1);
        let square = s0.join(&s0).unwrap();
        assert_eq!(square.vertex_count(), 4);
        assert_eq!(square.maximal_faces().len(), 4);
        // 1-3-2-4-1 is a 4-cycle.
        assert_eq!(square, k(4, &[&[1, 3], &[3, 2], &[2, 4], &[4, 1]]));

        let cone = square.join(&SimplicialComplex::simplex(1)).unwrap();
        assert!(cone.is_cone());
        assert_eq!(cone.dim(), 2);

        let s0s1 = s0.join(&SimplicialComplex::simplex_boundary(2)).unwrap();
        assert_eq!(s0s1.vertex_count(), 5);
        assert_eq!(s0s1.maximal_faces().len(), 6);
        assert!(s0s1.is_pure());
        assert_eq!(s0s1.dim(), 2);
    }

    #[test]
    fn f_and_h_vectors() {
        assert_eq!(PolytopeDual::simplex(2).f_vector().entries, vec![1, 3, 3]);
        assert_eq!(PolytopeDual::polygon(4).f_vector().entries, vec![1, 4, 4]);
        let cube = PolytopeDual::simplex_product(&[1, 1, 1]).unwrap();
        assert_eq!(cube.f_vector().entries, vec![1, 6, 12, 8]);

        assert_eq!(PolytopeDual::simplex(3).h_vector().entries, vec![1, 1, 1, 1]);
        assert_eq!(cube.h_vector().entries, vec![1, 3, 3, 1]);
        for n in 3..=8 {
            let h = PolytopeDual::polygon(n).h_vector();
            assert_eq!(h.entries, vec![1, n as i64 - 2, 1]);
        }
    }

    #[test]
    fn polytope_validation() {
        let c4 = SimplicialComplex::cycle(4);
        assert!(PolytopeDual::new(3, c4.clone()).is_err()); // not pure of the right size
        let path = k(3, &[&[1, 2], &[2, 3]]);
        assert!(PolytopeDual::new(2, path).is_err()); // ridge {1} in one edge
        let ghost = k(5, &[&[1, 2], &[2, 3], &[3, 4], &[4, 1]]);
        assert!(PolytopeDual::new(2, ghost).is_err());
        // Two disjoint triangles: a pseudomanifold with the Euler characteristic of S^1.
        let two = k(6, &[&[1, 2], &[2, 3], &[3, 1], &[4, 5], &[5, 6], &[6, 4]]);
        assert!(PolytopeDual::new(2, two).is_err());
    }

    #[test]
    fn dehn_sommerville() {
        let cube = dehn_sommerville_report(&HVector { entries: vec![1, 3, 3, 1] });
        assert!(cube.symmetric);
        assert_eq!(cube.h1_at_least_h2, Some(true));
        assert!(!cube.flagged);
        assert!(dehn_sommerville_report(&HVector { entries: vec![1, 2, 1] }).symmetric);
        let bad = dehn_sommerville_report(&HVector { entries: vec![1, 2, 3] });
        assert!(!bad.symmetric);
        assert!(bad.flagged);
    }

    #[test]
    fn serde_roundtrip() {
        let c = k(4, &[&[1, 2], &[2, 3], &[3, 4], &[4, 1]]);
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(json, r#"{"m":4,"facets":[[1,2],[2,3],[3,4],[1,4]]}"#);
        let back: SimplicialComplex = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
        let bad = serde_json::from_str::<SimplicialComplex>(r#"{"m":2,"facets":[[1,3]]}"#);
        assert!(bad.is_err());
    }
}
