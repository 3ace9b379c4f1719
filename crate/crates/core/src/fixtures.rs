//! Named example inputs. Vertex indices in the JSON forms are 1-based.

use serde::Serialize;

use crate::complex::{PolytopeDual, SimplicialComplex};
use crate::quasitoric::{generalized_bott, polygon_manifold, projective_space, CharacteristicMatrix, Quasitoric};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Fixture {
    Complex(SimplicialComplex),
    Polytope(PolytopeDual),
    Manifold(Quasitoric),
}

impl Fixture {
    pub fn kind(&self) -> &'static str {
        match self {
            Fixture::Complex(_) => "complex",
            Fixture::Polytope(_) => "polytope",
            Fixture::Manifold(_) => "manifold",
        }
    }

    pub fn polytope(&self) -> Option<&PolytopeDual> {
        match self {
            Fixture::Complex(_) => None,
            Fixture::Polytope(p) => Some(p),
            Fixture::Manifold(q) => Some(&q.polytope),
        }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        match self {
            Fixture::Complex(k) => k,
            Fixture::Polytope(p) => p.complex(),
            Fixture::Manifold(q) => q.complex(),
        }
    }
}

/// Six-vertex triangulation of the real projective plane.
pub fn rp2_six_vertex() -> SimplicialComplex {
    let facets = [
        [1, 2, 4],
        [1, 2, 6],
        [1, 3, 5],
        [1, 3, 6],
        [1, 4, 5],
        [2, 3, 4],
        [2, 3, 5],
        [2, 5, 6],
        [3, 4, 6],
        [4, 5, 6],
    ];
    SimplicialComplex::new(6, &facets.map(|f| f.to_vec())).expect("rp2")
}

/// Boundary of the octahedron, the dual of the 3-cube. Antipodal pairs are
/// `{1,2}`, `{3,4}`, `{5,6}`.
pub fn octahedron() -> PolytopeDual {
    PolytopeDual::simplex_product(&[1, 1, 1]).expect("cube")
}

/// `CP^1 × CP^1` over the square `12, 23, 34, 41`.
pub fn cp1_cross_cp1() -> Quasitoric {
    let lambda = CharacteristicMatrix::new(vec![vec![1, 0, 1, 0], vec![0, 1, 0, 1]]).expect("matrix");
    Quasitoric::new(PolytopeDual::polygon(4), lambda).expect("cp1xcp1")
}

/// Hirzebruch surface with twist `t`, as a two-stage Bott manifold.
pub fn hirzebruch(t: i64) -> Quasitoric {
    generalized_bott(&[1, 1], &[vec![], vec![vec![t]]]).expect("hirzebruch")
}

/// A three-stage Bott tower.
pub fn bott3() -> Quasitoric {
    generalized_bott(&[1, 1, 1], &[vec![], vec![vec![1]], vec![vec![1], vec![1]]]).expect("bott3")
}

const SIMPLEX_PRODUCTS: &[&[usize]] = &[&[1, 2], &[2, 2], &[1, 3], &[1, 1, 2]];

fn product_name(dims: &[usize]) -> String {
    dims.iter().map(|d| format!("delta{d}")).collect::<Vec<_>>().join("x")
}

/// Every fixture name, in a fixed order.
pub fn names() -> Vec<String> {
    let mut out = Vec::new();
    out.extend((1..=5).map(|n| format!("simplex-boundary-{n}")));
    out.extend((3..=8).map(|k| format!("polygon-{k}")));
    out.push("square".into());
    out.push("octahedron".into());
    out.extend(SIMPLEX_PRODUCTS.iter().map(|d| product_name(d)));
    out.push("rp2".into());
    out.extend((1..=5).map(|n| format!("cp{n}")));
    out.push("cp1xcp1".into());
    out.push("hirzebruch-1".into());
    out.push("hirzebruch-2".into());
    out.push("bott3".into());
    out.push("cp1-hopf".into());
    out.extend((3..=8).map(|k| format!("polygon-{k}-manifold")));
    out
}

pub fn get(name: &str) -> Option<Fixture> {
    let num = |prefix: &str, suffix: &str| -> Option<usize> {
        name.strip_prefix(prefix)?.strip_suffix(suffix)?.parse().ok()
    };
    if let Some(n) = num("simplex-boundary-", "").filter(|n| (1..=5).contains(n)) {
        return Some(Fixture::Polytope(PolytopeDual::simplex(n)));
    }
    if let Some(k) = num("polygon-", "-manifold").filter(|k| (3..=8).contains(k)) {
        return polygon_manifold(k).ok().map(Fixture::Manifold);
    }
    if let Some(k) = num("polygon-", "").filter(|k| (3..=8).contains(k)) {
        return Some(Fixture::Polytope(PolytopeDual::polygon(k)));
    }
    if let Some(n) = num("cp", "").filter(|n| (1..=5).contains(n)) {
        return Some(Fixture::Manifold(projective_space(n)));
    }
    if let Some(t) = num("hirzebruch-", "").filter(|t| (1..=2).contains(t)) {
        return Some(Fixture::Manifold(hirzebruch(t as i64)));
    }
    if let Some(dims) = SIMPLEX_PRODUCTS.iter().find(|d| product_name(d) == name) {
        return PolytopeDual::simplex_product(dims).ok().map(Fixture::Polytope);
    }
    Some(match name {
        "square" => Fixture::Polytope(PolytopeDual::polygon(4)),
        "octahedron" => Fixture::Polytope(octahedron()),
        "rp2" => Fixture::Complex(rp2_six_vertex()),
        "cp1xcp1" => Fixture::Manifold(cp1_cross_cp1()),
        "bott3" => Fixture::Manifold(bott3()),
        "cp1-hopf" => Fixture::Manifold(projective_space(1)),
        _ => return None,
    })
}

pub fn all() -> Vec<(String, Fixture)> {
    names()
        .into_iter()
        .map(|n| {
            let f = get(&n).expect("every listed fixture exists");
            (n, f)
        })
        .collect()
}

/// All polytope duals, including those underlying manifold fixtures.
pub fn polytopes() -> Vec<(String, PolytopeDual)> {
    all()
        .into_iter()
        .filter_map(|(n, f)| f.polytope().cloned().map(|p| (n, p)))
        .collect()
}

pub fn manifolds() -> Vec<(String, Quasitoric)> {
    all()
        .into_iter()
        .filter_map(|(n, f)| match f {
            Fixture::Manifold(q) => Some((n, q)),
            _ => None,
        })
        .collect()
}
