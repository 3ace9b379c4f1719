//! p-local splitting of `ΣX` for spaces with free, even, finitely generated
//! integral homology, at the level of homology.
//!
//! With `u` a primitive root mod `p`, the power map acts on `H̃_{2k+1}(ΣX)` by
//! `u^k`. The products `α_i = Π_{j≠i} (Σφ - u^j)` are eigen-projections, and
//! `ΣX_(p)` splits as `X_1 ∨ ... ∨ X_{p-1}` with `X_i` carrying the degrees
//! `2k+1`, `k ≡ i mod p-1`.

use serde::Serialize;

use crate::complex::HVector;
use crate::error::{Error, Result};
use crate::homology::GradedHomology;
use crate::scalar::{is_prime, pow_mod, Coefficients};

/// Ranks `b_k` of `H_{2k}(X; Z)` for `k = 0..=n_top`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvenBettiData {
    pub n_top: usize,
    pub b: Vec<u64>,
}

impl EvenBettiData {
    pub fn new(b: Vec<u64>) -> Result<Self> {
        if b.is_empty() {
            return Err(Error::InvalidParameters("Betti data needs at least b_0".into()));
        }
        Ok(EvenBettiData { n_top: b.len() - 1, b })
    }

    /// Even Betti numbers of a quasitoric manifold over a polytope with this h-vector.
    pub fn from_h_vector(h: &HVector) -> Self {
        EvenBettiData { n_top: h.n(), b: h.entries.iter().map(|&x| x.max(0) as u64).collect() }
    }

    pub fn get(&self, k: usize) -> u64 {
        self.b.get(k).copied().unwrap_or(0)
    }
}

pub fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    Ok(())
}

fn order_mod(u: u64, p: u64) -> Option<u64> {
    if u % p == 0 {
        return None;
    }
    let mut acc = u % p;
    for ord in 1..p {
        if acc == 1 {
            return Some(ord);
        }
        acc = acc * (u % p) % p;
    }
    None
}

pub fn is_primitive_root(u: i64, p: u64) -> bool {
    order_mod(u.rem_euclid(p as i64) as u64, p) == Some(p - 1)
}

/// Smallest positive integer of multiplicative order `p - 1` mod `p`.
pub fn primitive_root(p: u64) -> Result<u64> {
    check_odd_prime(p)?;
    Ok((2..p).find(|&u| order_mod(u, p) == Some(p - 1)).expect("a primitive root exists mod a prime"))
}

/// `Π_{j=1..p-1, j≠i} (u^k - u^j) mod p`, the action of `α_i` on
/// `H̃_{2k+1}(ΣX; Z/p)`.
pub fn alpha_scalar(p: u64, u: i64, i: u64, k: u64) -> Result<u64> {
    check_odd_prime(p)?;
    if i == 0 || i >= p {
        return Err(Error::OutOfRange(format!("summand index {i} must lie in 1..={}", p - 1)));
    }
    let u = u.rem_euclid(p as i64) as u64;
    let uk = pow_mod(u, k, p);
    Ok((1..p).filter(|&j| j != i).fold(1, |acc, j| {
        let diff = (uk + p - pow_mod(u, j, p)) % p;
        acc * diff % p
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SphereWedgeTerm {
    pub dimension: u64,
    pub multiplicity: u64,
}

/// The wedge summand `X_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitSummand {
    pub index: u64,
    /// Integral reduced homology.
    pub homology: GradedHomology,
    /// Reduced homology with `Z/p` coefficients.
    pub mod_p_homology: GradedHomology,
    /// Present when `X_i` is certified to be `⋁ S^d_(p)`; empty means contractible.
    pub sphere_wedge: Option<Vec<SphereWedgeTerm>>,
}

impl SplitSummand {
    pub fn is_trivial(&self) -> bool {
        self.homology.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitReport {
    pub p: u64,
    pub u: u64,
    pub betti: EvenBettiData,
    pub summands: Vec<SplitSummand>,
}

/// Splits `ΣX_(p)` with the smallest primitive root.
pub fn split(b: &EvenBettiData, p: u64) -> Result<SplitReport> {
    split_with_root(b, p, None)
}

/// Splits `ΣX_(p)`, assigning degree `2k+1` to the unique `i` with
/// `α_i` acting invertibly. The result does not depend on `u`.
pub fn split_with_root(b: &EvenBettiData, p: u64, u: Option<i64>) -> Result<SplitReport> {
    check_odd_prime(p)?;
    let u = match u {
        Some(u) if !is_primitive_root(u, p) => return Err(Error::NotPrimitiveRoot { u, p }),
        Some(u) => u.rem_euclid(p as i64) as u64,
        None => primitive_root(p)?,
    };
    let mut ranks = vec![Vec::<(i64, usize)>::new(); (p - 1) as usize];
    for k in 1..=b.n_top {
        let rank = b.get(k) as usize;
        if rank == 0 {
            continue;
        }
        let live: Vec<u64> = (1..p)
            .filter(|&i| alpha_scalar(p, u as i64, i, k as u64).map(|a| a != 0).unwrap_or(false))
            .collect();
        let expected = (k as u64 - 1) % (p - 1) + 1;
        if live != [expected] {
            return Err(Error::InternalConsistency(format!(
                "eigen-projections for degree {} select {live:?}, expected [{expected}]",
                2 * k + 1
            )));
        }
        ranks[(expected - 1) as usize].push((2 * k as i64 + 1, rank));
    }
    let summands = ranks
        .into_iter()
        .enumerate()
        .map(|(idx, r)| SplitSummand {
            index: idx as u64 + 1,
            homology: GradedHomology::free(Coefficients::Integers, r.iter().copied()),
            mod_p_homology: GradedHomology::free(Coefficients::Prime(p as u32), r.iter().copied()),
            sphere_wedge: None,
        })
        .collect();
    Ok(SplitReport { p, u, betti: b.clone(), summands })
}

/// For `p > n_top`, each `X_i` is a wedge of `b_i` copies of `S^{2i+1}_(p)`.
pub fn sphere_wedge_decomposition(b: &EvenBettiData, p: u64) -> Result<SplitReport> {
    check_odd_prime(p)?;
    if p <= b.n_top as u64 {
        return Err(Error::PrimeTooSmall { p, n: b.n_top });
    }
    let mut report = split(b, p)?;
    for s in &mut report.summands {
        let i = s.index as usize;
        let terms: Vec<SphereWedgeTerm> = (b.get(i) > 0)
            .then(|| SphereWedgeTerm { dimension: 2 * i as u64 + 1, multiplicity: b.get(i) })
            .into_iter()
            .collect();
        let reproduced = GradedHomology::free(
            Coefficients::Integers,
            terms.iter().map(|t| (t.dimension as i64, t.multiplicity as usize)),
        );
        if reproduced != s.homology {
            return Err(Error::InternalConsistency(format!(
                "sphere wedge for X_{i} does not reproduce its homology"
            )));
        }
        s.sphere_wedge = Some(terms);
    }
    Ok(report)
}

/// True when every source degree `d` lies where `π_d(S^{2ℓ+1})_(p)` vanishes:
/// `d < 2ℓ+1` or `2ℓ+1 < d < 2(ℓ+p-1)`.
///
/// Both parities are tested, and `d = 2ℓ+1` is never certified.
pub fn vanishing_range_check(source_degrees: &[u64], target_sphere_dim: u64, p: u64) -> bool {
    let n = target_sphere_dim;
    if n % 2 == 0 {
        return false;
    }
    let l = (n - 1) / 2;
    source_degrees.iter().all(|&d| d < n || (d > n && d < 2 * (l + p - 1)))
}

/// Same test for a target `⋁ S^{d_j}_(p)` of odd spheres.
///
/// A wedge of at least two spheres has the homotopy of every Whitehead product
/// sphere `S^{1 + Σ(d_j - 1)}` among its summands, so each of those that can
/// be hit from the source degrees is checked too. An empty wedge is a point.
pub fn vanishing_range_check_wedge(source_degrees: &[u64], target: &[SphereWedgeTerm], p: u64) -> bool {
    let spheres: Vec<u64> = target.iter().filter(|t| t.multiplicity > 0).map(|t| t.dimension).collect();
    if spheres.is_empty() {
        return true;
    }
    let total: u64 = target.iter().map(|t| t.multiplicity).sum();
    let top = source_degrees.iter().copied().max().unwrap_or(0);
    if total == 1 {
        return vanishing_range_check(source_degrees, spheres[0], p);
    }
    // Sums of (d_j - 1) over nonempty multisets, bounded by the top source degree.
    let mut reachable = std::collections::BTreeSet::new();
    let mut frontier: Vec<u64> = vec![0];
    while let Some(s) = frontier.pop() {
        for &d in &spheres {
            let t = s + d - 1;
            if t < top && reachable.insert(t) {
                frontier.push(t);
            }
        }
    }
    spheres.iter().all(|&d| vanishing_range_check(source_degrees, d, p))
        && reachable.iter().all(|&s| vanishing_range_check(source_degrees, s + 1, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn degrees(s: &SplitSummand) -> Vec<i64> {
        s.homology.degrees().collect()
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(3).unwrap(), 2);
        assert_eq!(primitive_root(5).unwrap(), 2);
        assert_eq!(primitive_root(7).unwrap(), 3);
        assert_eq!(primitive_root(23).unwrap(), 5);
        assert_eq!(primitive_root(2), Err(Error::NotOddPrime(2)));
        assert_eq!(primitive_root(9), Err(Error::NotOddPrime(9)));
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha_scalar(3, 2, 1, 1).unwrap(), 1);
        assert_eq!(alpha_scalar(3, 2, 1, 2).unwrap(), 0);
        assert_eq!(alpha_scalar(5, 2, 2, 2).unwrap(), 1);
        assert!(alpha_scalar(5, 2, 0, 2).is_err());
        assert!(alpha_scalar(5, 2, 5, 2).is_err());
    }

    #[test]
    fn cp3_at_5() {
        let r = split(&EvenBettiData::new(vec![1, 1, 1, 1]).unwrap(), 5).unwrap();
        let d: Vec<Vec<i64>> = r.summands.iter().map(degrees).collect();
        assert_eq!(d, vec![vec![3], vec![5], vec![7], vec![]]);
    }

    #[test]
    fn cp5_at_3() {
        let r = split(&EvenBettiData::new(vec![1; 6]).unwrap(), 3).unwrap();
        assert_eq!(degrees(&r.summands[0]), vec![3, 7, 11]);
        assert_eq!(degrees(&r.summands[1]), vec![5, 9]);
    }

    #[test]
    fn point_is_trivial() {
        for p in [3, 5, 7] {
            let r = split(&EvenBettiData::new(vec![1, 0, 0]).unwrap(), p).unwrap();
            assert!(r.summands.iter().all(SplitSummand::is_trivial));
        }
    }

    #[test]
    fn root_override() {
        let b = EvenBettiData::new(vec![1, 2, 3, 2, 1]).unwrap();
        let a = split(&b, 7).unwrap();
        let c = split_with_root(&b, 7, Some(5)).unwrap();
        assert_eq!(a.summands, c.summands);
        assert_eq!(split_with_root(&b, 7, Some(2)).unwrap_err(), Error::NotPrimitiveRoot { u: 2, p: 7 });
    }

    #[test]
    fn sphere_wedges() {
        let r = sphere_wedge_decomposition(&EvenBettiData::new(vec![1, 4, 1]).unwrap(), 5).unwrap();
        let w: Vec<_> = r.summands.iter().map(|s| s.sphere_wedge.clone().unwrap()).collect();
        assert_eq!(w[0], vec![SphereWedgeTerm { dimension: 3, multiplicity: 4 }]);
        assert_eq!(w[1], vec![SphereWedgeTerm { dimension: 5, multiplicity: 1 }]);
        assert!(w[2].is_empty() && w[3].is_empty());
        assert_eq!(
            sphere_wedge_decomposition(&EvenBettiData::new(vec![1; 4]).unwrap(), 3).unwrap_err(),
            Error::PrimeTooSmall { p: 3, n: 3 }
        );
    }

    #[test]
    fn vanishing_range() {
        assert!(vanishing_range_check(&[4], 5, 3));
        assert!(vanishing_range_check(&[8], 5, 7));
        assert!(!vanishing_range_check(&[20], 5, 3));
        assert!(!vanishing_range_check(&[5], 5, 7));
        assert!(vanishing_range_check(&[7], 5, 3));
        assert!(!vanishing_range_check(&[6], 3, 3));
        assert!(vanishing_range_check(&[], 3, 3));
    }

    #[test]
    fn wedge_range_includes_whitehead_products() {
        let three = [SphereWedgeTerm { dimension: 5, multiplicity: 3 }];
        assert!(vanishing_range_check_wedge(&[10], &three, 5));
        // S^9 is a Whitehead-product summand, so degree 9 is obstructed.
        assert!(!vanishing_range_check_wedge(&[9], &three, 5));
        let one = [SphereWedgeTerm { dimension: 5, multiplicity: 1 }];
        assert!(vanishing_range_check_wedge(&[9], &one, 5));
        assert!(vanishing_range_check_wedge(&[100], &[], 3));
    }
}
