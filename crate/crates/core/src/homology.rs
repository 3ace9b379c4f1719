//! Simplicial and chain-complex homology over `Z`, `Q` and `F_p`.
//!
//! Integral homology goes through the Smith normal form of each boundary map;
//! over a field only ranks are needed.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Coefficients, Field, Scalar};
use crate::snf::smith_normal_form;
use crate::{with_field, IntegerMatrix};

/// One homology group: free rank plus torsion coefficients `> 1` in
/// divisibility order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Group {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl Group {
    pub fn free(rank: usize) -> Self {
        Group { rank, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Number of torsion coefficients divisible by `p`.
    pub fn p_torsion_count(&self, p: u32) -> usize {
        let p = BigInt::from(p);
        self.torsion.iter().filter(|t| (*t % &p).is_zero()).count()
    }
}

/// Graded homology; degrees not present are zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedHomology {
    pub coefficients: Coefficients,
    groups: BTreeMap<i64, Group>,
}

impl GradedHomology {
    pub fn zero(coefficients: Coefficients) -> Self {
        GradedHomology { coefficients, groups: BTreeMap::new() }
    }

    /// Free homology with the given `(degree, rank)` pairs.
    pub fn free(coefficients: Coefficients, ranks: impl IntoIterator<Item = (i64, usize)>) -> Self {
        let mut h = Self::zero(coefficients);
        for (d, r) in ranks {
            h.add_group(d, &Group::free(r));
        }
        h
    }

    pub fn get(&self, degree: i64) -> Group {
        self.groups.get(&degree).cloned().unwrap_or_default()
    }

    pub fn rank(&self, degree: i64) -> usize {
        self.groups.get(&degree).map_or(0, |g| g.rank)
    }

    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    /// Nonzero groups in increasing degree.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &Group)> {
        self.groups.iter().map(|(&d, g)| (d, g))
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.groups.keys().copied()
    }

    /// Direct sum in one degree. Torsion lists are concatenated and kept sorted;
    /// they are the multiset of cyclic orders, not re-normalized to invariant
    /// factors.
    pub fn add_group(&mut self, degree: i64, g: &Group) {
        if g.is_zero() {
            return;
        }
        let e = self.groups.entry(degree).or_default();
        e.rank += g.rank;
        e.torsion.extend(g.torsion.iter().cloned());
        e.torsion.sort();
    }

    /// Direct sum of `other` shifted up by `shift` degrees.
    pub fn add_shifted(&mut self, other: &GradedHomology, shift: i64) {
        for (d, g) in other.iter() {
            self.add_group(d + shift, g);
        }
    }

    pub fn shifted(&self, shift: i64) -> GradedHomology {
        let mut h = Self::zero(self.coefficients);
        h.add_shifted(self, shift);
        h
    }

    /// Alternating sum of free ranks.
    pub fn euler_characteristic(&self) -> i64 {
        self.iter()
            .map(|(d, g)| if d.rem_euclid(2) == 0 { g.rank as i64 } else { -(g.rank as i64) })
            .sum()
    }

    /// Betti numbers of the tensor product of two graded vector spaces, each
    /// taken unreduced (a copy of the ground field added in degree 0), with the
    /// degree-0 unit removed again. This is the reduced Künneth formula over a
    /// field. Panics on integral input.
    pub fn reduced_kunneth(&self, other: &GradedHomology) -> GradedHomology {
        assert!(self.coefficients.is_field() && self.coefficients == other.coefficients);
        let unit = |h: &GradedHomology| {
            let mut u = h.clone();
            u.add_group(0, &Group::free(1));
            u
        };
        let (a, b) = (unit(self), unit(other));
        let mut out = GradedHomology::zero(self.coefficients);
        for (da, ga) in a.iter() {
            for (db, gb) in b.iter() {
                out.add_group(da + db, &Group::free(ga.rank * gb.rank));
            }
        }
        let mut g0 = out.get(0);
        g0.rank -= 1;
        if g0.is_zero() {
            out.groups.remove(&0);
        } else {
            out.groups.insert(0, g0);
        }
        out
    }
}

/// Serialized as `[{"degree": d, "rank": r, "torsion": [..]}, ...]`.
impl Serialize for GradedHomology {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            degree: i64,
            rank: usize,
            torsion: Vec<TorsionNumber<'a>>,
        }
        let mut seq = s.serialize_seq(Some(self.groups.len()))?;
        for (&degree, g) in &self.groups {
            seq.serialize_element(&Entry {
                degree,
                rank: g.rank,
                torsion: g.torsion.iter().map(TorsionNumber).collect(),
            })?;
        }
        seq.end()
    }
}

/// A torsion coefficient as a JSON number when it fits, else a decimal string.
struct TorsionNumber<'a>(&'a BigInt);

impl Serialize for TorsionNumber<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match u64::try_from(self.0) {
            Ok(v) => s.serialize_u64(v),
            Err(_) => s.serialize_str(&self.0.to_string()),
        }
    }
}

/// A finite chain complex of free abelian groups.
///
/// `boundaries[j]` is the map from degree `lowest_degree + j + 1` to degree
/// `lowest_degree + j`, as a `dim C_{low+j} × dim C_{low+j+1}` matrix.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub lowest_degree: i64,
    pub dims: Vec<usize>,
    pub boundaries: Vec<IntegerMatrix>,
}

impl ChainComplex {
    /// Checks shapes and that consecutive boundaries compose to zero.
    pub fn new(lowest_degree: i64, dims: Vec<usize>, boundaries: Vec<IntegerMatrix>) -> Result<Self> {
        if boundaries.len() + 1 != dims.len() && !(dims.is_empty() && boundaries.is_empty()) {
            return Err(Error::DimensionMismatch(format!(
                "{} chain groups need {} boundary maps, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                boundaries.len()
            )));
        }
        for (j, b) in boundaries.iter().enumerate() {
            if b.rows() != dims[j] || b.cols() != dims[j + 1] {
                return Err(Error::DimensionMismatch(format!(
                    "boundary into degree {} is {}x{}, expected {}x{}",
                    lowest_degree + j as i64,
                    b.rows(),
                    b.cols(),
                    dims[j],
                    dims[j + 1]
                )));
            }
        }
        for j in 1..boundaries.len() {
            if !boundaries[j - 1].mul(&boundaries[j]).is_zero() {
                return Err(Error::MalformedChainComplex { degree: lowest_degree + j as i64 });
            }
        }
        Ok(ChainComplex { lowest_degree, dims, boundaries })
    }

    /// Augmented simplicial chain complex of `K` (the empty face sits in
    /// degree -1), whose homology is the reduced homology of `|K|`.
    pub fn reduced_simplicial(k: &SimplicialComplex) -> Self {
        let faces = k.faces_by_size();
        let dims = faces.iter().map(Vec::len).collect();
        let boundaries = (1..faces.len())
            .map(|s| boundary_matrix::<BigInt>(&faces[s - 1], &faces[s]))
            .collect();
        ChainComplex { lowest_degree: -1, dims, boundaries }
    }

    pub fn homology(&self, coefficients: Coefficients) -> Result<GradedHomology> {
        with_field!(coefficients, F => Ok(self.homology_over::<F>()),
            integers => Ok(self.integral_homology()))
    }

    pub fn integral_homology(&self) -> GradedHomology {
        let snf: Vec<_> = self.boundaries.iter().map(smith_normal_form).collect();
        let mut h = GradedHomology::zero(Coefficients::Integers);
        for (j, &dim) in self.dims.iter().enumerate() {
            let out_rank = if j > 0 { snf[j - 1].rank() } else { 0 };
            let (in_rank, torsion) = match snf.get(j) {
                Some(s) => (
                    s.rank(),
                    s.diagonal.iter().filter(|d| !d.is_one()).map(|d| d.abs()).collect(),
                ),
                None => (0, Vec::new()),
            };
            let g = Group { rank: dim - out_rank - in_rank, torsion };
            h.add_group(self.lowest_degree + j as i64, &g);
        }
        h
    }

    pub fn homology_over<F: Field>(&self) -> GradedHomology {
        let ranks: Vec<usize> = self
            .boundaries
            .iter()
            .map(|b| b.map(|v| reduce_integer::<F>(v)).rank())
            .collect();
        betti_from_ranks(F::coefficients(), self.lowest_degree, &self.dims, &ranks)
    }
}

fn betti_from_ranks(coeff: Coefficients, low: i64, dims: &[usize], ranks: &[usize]) -> GradedHomology {
    let mut h = GradedHomology::zero(coeff);
    for (j, &dim) in dims.iter().enumerate() {
        let out_rank = if j > 0 { ranks[j - 1] } else { 0 };
        let in_rank = ranks.get(j).copied().unwrap_or(0);
        h.add_group(low + j as i64, &Group::free(dim - out_rank - in_rank));
    }
    h
}

/// Image of an integer in a field.
pub fn reduce_integer<F: Scalar>(v: &BigInt) -> F {
    match i64::try_from(v) {
        Ok(small) => F::from_i64(small),
        Err(_) => {
            // Horner in base 2^32.
            let (sign, digits) = v.to_u32_digits();
            let base = F::from_i64(1 << 32);
            let mag = digits
                .iter()
                .rev()
                .fold(F::zero(), |acc, &d| acc * base.clone() + F::from_i64(d as i64));
            if sign == num_bigint::Sign::Minus {
                -mag
            } else {
                mag
            }
        }
    }
}

/// Simplicial boundary from faces of size `s` to faces of size `s - 1`, with
/// the sign `(-1)^j` for removing the `j`-th smallest vertex.
pub fn boundary_matrix<T: Scalar>(lower: &[Face], upper: &[Face]) -> Matrix<T> {
    let mut m = Matrix::zeros(lower.len(), upper.len());
    for (col, &sigma) in upper.iter().enumerate() {
        let mut rest = sigma;
        let mut j = 0;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            rest ^= bit;
            let row = lower
                .binary_search(&(sigma ^ bit))
                .expect("boundary face missing from the complex");
            m[(row, col)] = if j % 2 == 0 { T::one() } else { -T::one() };
            j += 1;
        }
    }
    m
}

/// `H_k = ker ∂_k / im ∂_{k+1}` of an explicit chain complex.
pub fn chain_homology(complex: &ChainComplex, coefficients: Coefficients) -> Result<GradedHomology> {
    complex.homology(coefficients)
}

/// Reduced homology `H̃_*(|K|)` with the given coefficients.
pub fn reduced_homology(k: &SimplicialComplex, coefficients: Coefficients) -> Result<GradedHomology> {
    with_field!(coefficients, F => Ok(reduced_homology_over::<F>(k)),
        integers => Ok(ChainComplex::reduced_simplicial(k).integral_homology()))
}

/// Field fast path: boundary matrices are built directly over `F`.
pub fn reduced_homology_over<F: Field>(k: &SimplicialComplex) -> GradedHomology {
    let faces = k.faces_by_size();
    let dims: Vec<usize> = faces.iter().map(Vec::len).collect();
    let ranks: Vec<usize> = (1..faces.len())
        .map(|s| boundary_matrix::<F>(&faces[s - 1], &faces[s]).rank())
        .collect();
    betti_from_ranks(F::coefficients(), -1, &dims, &ranks)
}

/// Unreduced homology: the reduced groups plus a free summand in degree 0.
pub fn unreduced_homology(k: &SimplicialComplex, coefficients: Coefficients) -> Result<GradedHomology> {
    let mut h = reduced_homology(k, coefficients)?;
    if k.dim() >= 0 {
        h.add_group(0, &Group::free(1));
    } else {
        // |K| empty: H̃_{-1} = Z corresponds to no unreduced homology.
        h.groups.remove(&-1);
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn z(k: &SimplicialComplex) -> GradedHomology {
        reduced_homology(k, Coefficients::Integers).unwrap()
    }

    #[test]
    fn point_chain_complex() {
        let c = ChainComplex::new(0, vec![1], vec![]).unwrap();
        let h = chain_homology(&c, Coefficients::Integers).unwrap();
        assert_eq!(h, GradedHomology::free(Coefficients::Integers, [(0, 1)]));
    }

    #[test]
    fn triangle_boundary_unreduced() {
        let h = unreduced_homology(&SimplicialComplex::simplex_boundary(2), Coefficients::Integers).unwrap();
        assert_eq!(h, GradedHomology::free(Coefficients::Integers, [(0, 1), (1, 1)]));
    }

    #[test]
    fn malformed_chain_complex_rejected() {
        let d1 = Matrix::from_rows(vec![vec![1i64]]).map(|&v| BigInt::from(v));
        let d2 = Matrix::from_rows(vec![vec![1i64]]).map(|&v| BigInt::from(v));
        let err = ChainComplex::new(0, vec![1, 1, 1], vec![d1, d2]).unwrap_err();
        assert_eq!(err, Error::MalformedChainComplex { degree: 1 });
    }

    #[test]
    fn projective_plane() {
        let rp2 = fixtures::rp2_six_vertex();
        let hz = z(&rp2);
        assert_eq!(hz.get(1), Group { rank: 0, torsion: vec![BigInt::from(2)] });
        assert!(hz.get(2).is_zero());
        assert!(hz.get(0).is_zero());
        let h2 = reduced_homology(&rp2, Coefficients::Prime(2)).unwrap();
        assert_eq!(h2, GradedHomology::free(Coefficients::Prime(2), [(1, 1), (2, 1)]));
        let h3 = reduced_homology(&rp2, Coefficients::Prime(3)).unwrap();
        assert!(h3.is_zero());
    }

    #[test]
    fn reduced_homology_examples() {
        let two_points = SimplicialComplex::new(2, &[vec![1], vec![2]]).unwrap();
        assert_eq!(z(&two_points), GradedHomology::free(Coefficients::Integers, [(0, 1)]));

        let ghosts = SimplicialComplex::new(2, &[vec![1]]).unwrap();
        assert!(z(&ghosts).is_zero());

        let c4 = SimplicialComplex::cycle(4);
        assert_eq!(z(&c4), GradedHomology::free(Coefficients::Integers, [(1, 1)]));

        for n in 1..=5 {
            let h = z(&SimplicialComplex::simplex_boundary(n));
            assert_eq!(h, GradedHomology::free(Coefficients::Integers, [(n as i64 - 1, 1)]));
        }

        let void = SimplicialComplex::new(3, &[]).unwrap();
        assert_eq!(z(&void), GradedHomology::free(Coefficients::Integers, [(-1, 1)]));
        assert!(z(&SimplicialComplex::simplex(4)).is_zero());
    }

    #[test]
    fn bigint_reduction_into_fields() {
        let big = BigInt::from(1u64 << 40) * BigInt::from(1u64 << 40) + BigInt::from(5);
        let r: crate::scalar::Zp<7> = reduce_integer(&big);
        let expected = (crate::scalar::pow_mod(2, 80, 7) + 5) % 7;
        assert_eq!(r.value() as u64, expected);
        let neg: crate::scalar::Zp<7> = reduce_integer(&-big);
        assert_eq!((r + neg).value(), 0);
    }

    #[test]
    fn torsion_serializes_as_numbers() {
        let h = z(&fixtures::rp2_six_vertex());
        let s = serde_json_like(&h);
        assert_eq!(s, r#"[{"degree":1,"rank":0,"torsion":[2]}]"#);
    }

    fn serde_json_like(h: &GradedHomology) -> String {
        serde_json::to_string(h).unwrap()
    }
}
