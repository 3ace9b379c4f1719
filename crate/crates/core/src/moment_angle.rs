//! Homology of moment-angle complexes through the stable splitting
//! `Σ Z_K ≃ ⋁_{∅≠I⊆[m]} Σ^{|I|+2} |K_I|`.
//!
//! Each summand is a full subcomplex, so `H̃_d(Z_K) = ⊕_I H̃_{d-|I|-1}(K_I)`.
//! Summands are independent and are computed in parallel.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{mask_to_vertices, Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homology::{reduced_homology, GradedHomology};
use crate::scalar::Coefficients;

/// Largest vertex count enumerated by default over a prime field.
pub const FIELD_CAP: usize = 24;
/// Largest vertex count enumerated by default over `Z` or `Q`.
pub const EXACT_CAP: usize = 16;

#[derive(Clone, Debug, Default)]
pub struct SplittingOptions {
    /// Only subsets with these cardinalities are visited.
    pub size_filter: Option<BTreeSet<usize>>,
    /// Replaces the default cap.
    pub cap: Option<usize>,
}

impl SplittingOptions {
    pub fn default_cap(coefficients: Coefficients) -> usize {
        match coefficients {
            Coefficients::Prime(_) => FIELD_CAP,
            _ => EXACT_CAP,
        }
    }

    fn check(&self, m: usize, coefficients: Coefficients) -> Result<()> {
        let cap = self.cap.unwrap_or_else(|| Self::default_cap(coefficients));
        if m > cap {
            return Err(Error::CapExceeded { m, cap });
        }
        Ok(())
    }

    fn admits(&self, size: usize) -> bool {
        self.size_filter.as_ref().is_none_or(|f| f.contains(&size))
    }
}

/// One wedge summand `Σ^{|I|+2}|K_I|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BbcgSummand {
    /// 1-based vertex subset `I`.
    pub subset: Vec<usize>,
    /// `|I| + 2`.
    pub shift: usize,
    /// Reduced homology of `|K_I|`.
    pub homology: GradedHomology,
    /// `K_I` is certified contractible (a cone; in particular a simplex).
    pub contractible: bool,
    /// `I` is a face, so `K_I` is the full simplex on `I`.
    pub simplex: bool,
}

impl BbcgSummand {
    /// Contribution to the reduced homology of `Σ Z_K`.
    pub fn suspended_homology(&self) -> GradedHomology {
        self.homology.shifted(self.shift as i64)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BbcgSplitting {
    pub coefficients: Coefficients,
    pub vertex_count: usize,
    /// Summands with nonzero homology, ordered by `(|I|, I)`.
    pub summands: Vec<BbcgSummand>,
    pub subsets_visited: u64,
    /// Visited subsets whose full subcomplex is a simplex.
    pub simplex_summands: u64,
    /// Visited subsets with acyclic `K_I`, simplices included.
    pub acyclic_summands: u64,
    /// Reduced homology of `Z_K`.
    pub total: GradedHomology,
}

/// Enumerates all nonempty `I ⊆ [m]` (optionally filtered by size) in Gray
/// code order and assembles `H̃_*(Z_K)`.
pub fn bbcg_splitting(
    k: &SimplicialComplex,
    coefficients: Coefficients,
    options: &SplittingOptions,
) -> Result<BbcgSplitting> {
    coefficients.check_supported()?;
    let m = k.vertex_count();
    options.check(m, coefficients)?;

    let count: u64 = 1u64 << m;
    const CHUNK: u64 = 1 << 10;
    let chunks = count.div_ceil(CHUNK);

    let partials: Vec<Partial> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut part = Partial::default();
            for idx in (c * CHUNK).max(1)..((c + 1) * CHUNK).min(count) {
                let subset = idx ^ (idx >> 1);
                if !options.admits(subset.count_ones() as usize) {
                    continue;
                }
                part.visit(k, subset, coefficients)?;
            }
            Ok(part)
        })
        .collect::<Result<_>>()?;

    let mut acc = Partial::default();
    for p in partials {
        acc.merge(p);
    }
    acc.summands.sort_by_key(|(mask, _)| (mask.count_ones(), mask_to_vertices(*mask)));

    let mut total = GradedHomology::zero(coefficients);
    let summands: Vec<BbcgSummand> = acc.summands.into_iter().map(|(_, s)| s).collect();
    for s in &summands {
        total.add_shifted(&s.homology, s.shift as i64 - 1);
    }
    Ok(BbcgSplitting {
        coefficients,
        vertex_count: m,
        summands,
        subsets_visited: acc.visited,
        simplex_summands: acc.simplices,
        acyclic_summands: acc.acyclic,
        total,
    })
}

/// Reduced homology of `Z_K`.
pub fn zk_homology(k: &SimplicialComplex, coefficients: Coefficients) -> Result<GradedHomology> {
    Ok(bbcg_splitting(k, coefficients, &SplittingOptions::default())?.total)
}

/// Summand data for a single subset; shared with the projection module.
pub fn summand(k: &SimplicialComplex, subset: Face, coefficients: Coefficients) -> Result<BbcgSummand> {
    let size = subset.count_ones() as usize;
    let simplex = k.is_face(subset);
    let restricted = k.restrict_mask(subset);
    let contractible = simplex || restricted.is_cone();
    let homology = if contractible {
        GradedHomology::zero(coefficients)
    } else {
        reduced_homology(&restricted, coefficients)?
    };
    Ok(BbcgSummand {
        subset: mask_to_vertices(subset),
        shift: size + 2,
        homology,
        contractible,
        simplex,
    })
}

#[derive(Default)]
struct Partial {
    summands: Vec<(Face, BbcgSummand)>,
    visited: u64,
    simplices: u64,
    acyclic: u64,
}

impl Partial {
    fn visit(&mut self, k: &SimplicialComplex, subset: Face, coefficients: Coefficients) -> Result<()> {
        self.visited += 1;
        let s = summand(k, subset, coefficients)?;
        if s.simplex {
            self.simplices += 1;
        }
        if s.homology.is_zero() {
            self.acyclic += 1;
        } else {
            self.summands.push((subset, s));
        }
        Ok(())
    }

    fn merge(&mut self, other: Partial) {
        self.summands.extend(other.summands);
        self.visited += other.visited;
        self.simplices += other.simplices;
        self.acyclic += other.acyclic;
    }
}
