//! The projection `π: Z_{K(P)} -> M` after suspension and localization.
//!
//! `Σπ_(p)` splits as a wedge of maps from
//! `Y_i = ⋁_{|I| ≡ i mod p-1} Σ^{|I|+2}|K_I|` to `X_i`. This module groups the
//! summands, attaches a null-homotopy certificate to each, and implements the
//! homological criteria showing that the stabilization `Σ^∞π` is essential.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::GradedAlgebra;
use crate::complex::{binomial, mask_to_vertices, Face, PolytopeDual};
use crate::error::{Error, Result};
use crate::homology::GradedHomology;
use crate::moment_angle::{summand, SplittingOptions};
use crate::quasitoric::{
    cohomology_ring, cube_presentation, reduce_to_cube, CubeParams, QuadraticPresentationF2, Quasitoric,
};
use crate::scalar::Coefficients;
use crate::splitting::{
    check_odd_prime, split, sphere_wedge_decomposition, vanishing_range_check_wedge, EvenBettiData, SphereWedgeTerm,
    SplitSummand,
};
use crate::F2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// `I` is a face, so `K_I` is a simplex and the summand is contractible.
    SimplexContractible,
    /// `|I| = i`, `dim K_I <= |I| - 2`: the summand is a complex of dimension
    /// at most `2|I|` mapping into the `2i`-connected `X_i`.
    DimensionObstruction { dim_k_i: i64, top_cell: u64, target_connectivity: u64 },
    /// Every p-local cell degree of the summand lies in the range where the
    /// homotopy of the target sphere wedge vanishes. `vacuous` marks a
    /// p-locally contractible source or target.
    VanishingRange { source_degrees: Vec<u64>, target: Vec<SphereWedgeTerm>, vacuous: bool },
    Uncertified { reason: String },
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        !matches!(self, Certificate::Uncertified { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SummandEntry {
    pub subset: Vec<usize>,
    /// Reduced integral homology of `K_I`.
    pub homology: GradedHomology,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionGroup {
    pub index: u64,
    pub target: SplitSummand,
    /// Number of subsets `I` with `|I| ≡ index mod p-1`.
    pub subset_count: u64,
    /// Subset counts by cardinality.
    pub sizes: Vec<(usize, u64)>,
    /// One entry per subset, ordered by `(|I|, I)`.
    pub summands: Vec<SummandEntry>,
    pub simplex_count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionReport {
    pub p: u64,
    pub n: usize,
    pub m: usize,
    pub groups: Vec<ProjectionGroup>,
    /// `Some(true)` when every summand is certified; only decided for `p > n`.
    pub null_homotopy_certified: Option<bool>,
    pub notes: Vec<String>,
}

impl ProjectionReport {
    pub fn uncertified(&self) -> impl Iterator<Item = (u64, &SummandEntry)> {
        self.groups
            .iter()
            .flat_map(|g| g.summands.iter().map(move |s| (g.index, s)))
            .filter(|(_, s)| !s.certificate.is_certified())
    }

    pub fn total_subsets(&self) -> u64 {
        self.groups.iter().map(|g| g.subset_count).sum()
    }
}

pub fn group_index(size: usize, p: u64) -> u64 {
    (size as u64 - 1) % (p - 1) + 1
}

/// p-local cell degrees of `Σ^{shift}|K_I|` from its integral homology: each
/// free class gives a cell, each p-torsion class a pair of cells.
fn p_local_degrees(h: &GradedHomology, shift: u64, p: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for (d, g) in h.iter() {
        let d = (d + shift as i64) as u64;
        if g.rank > 0 {
            out.push(d);
        }
        if g.p_torsion_count(p as u32) > 0 {
            out.push(d);
            out.push(d + 1);
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Groups the BBCG summands of `Z_{K(P)}` by `|I| mod p-1` against the targets
/// `X_i` and certifies each map.
pub fn suspension_triviality_check(p_dual: &PolytopeDual, p: u64, options: &SplittingOptions) -> Result<ProjectionReport> {
    check_odd_prime(p)?;
    let k = p_dual.complex();
    let m = k.vertex_count();
    let n = p_dual.dim();
    let cap = options.cap.unwrap_or(SplittingOptions::default_cap(Coefficients::Integers));
    if m > cap {
        return Err(Error::CapExceeded { m, cap });
    }
    let betti = EvenBettiData::from_h_vector(&p_dual.h_vector());
    let wedge = (p > n as u64).then(|| sphere_wedge_decomposition(&betti, p)).transpose()?;
    let targets = match &wedge {
        Some(w) => w.summands.clone(),
        None => split(&betti, p)?.summands,
    };

    let subsets: Vec<Face> = (1..1u64 << m).collect();
    let entries: Vec<(Face, SummandEntry)> = subsets
        .par_iter()
        .map(|&mask| -> Result<_> {
            if k.is_face(mask) {
                let entry = SummandEntry {
                    subset: mask_to_vertices(mask),
                    homology: GradedHomology::zero(Coefficients::Integers),
                    certificate: Certificate::SimplexContractible,
                };
                return Ok((mask, entry));
            }
            let size = mask.count_ones() as usize;
            let i = group_index(size, p);
            let s = summand(k, mask, Coefficients::Integers)?;
            let dim_k_i = k.restrict_mask(mask).dim();
            let target = &targets[(i - 1) as usize];
            let certificate = if size as u64 == i && dim_k_i <= size as i64 - 2 {
                Certificate::DimensionObstruction {
                    dim_k_i,
                    top_cell: (size as i64 + 2 + dim_k_i) as u64,
                    target_connectivity: 2 * i,
                }
            } else {
                let source_degrees = p_local_degrees(&s.homology, s.shift as u64, p);
                match &target.sphere_wedge {
                    _ if source_degrees.is_empty() => Certificate::VanishingRange {
                        source_degrees,
                        target: target.sphere_wedge.clone().unwrap_or_default(),
                        vacuous: true,
                    },
                    Some(w) if vanishing_range_check_wedge(&source_degrees, w, p) => Certificate::VanishingRange {
                        vacuous: w.is_empty(),
                        source_degrees,
                        target: w.clone(),
                    },
                    Some(_) => Certificate::Uncertified {
                        reason: format!(
                            "cell degrees {source_degrees:?} reach the p-local homotopy of the target"
                        ),
                    },
                    None => Certificate::Uncertified {
                        reason: "target is not certified as a sphere wedge (p <= n)".into(),
                    },
                }
            };
            Ok((mask, SummandEntry { subset: s.subset, homology: s.homology, certificate }))
        })
        .collect::<Result<_>>()?;

    let mut groups: Vec<ProjectionGroup> = targets
        .into_iter()
        .map(|t| ProjectionGroup {
            index: t.index,
            subset_count: 0,
            sizes: (1..=m)
                .filter(|&s| group_index(s, p) == t.index)
                .map(|s| (s, binomial(m as u64, s as u64)))
                .collect(),
            target: t,
            summands: Vec::new(),
            simplex_count: 0,
        })
        .collect();
    for (mask, entry) in entries {
        let g = &mut groups[(group_index(mask.count_ones() as usize, p) - 1) as usize];
        g.subset_count += 1;
        if entry.certificate == Certificate::SimplexContractible {
            g.simplex_count += 1;
        }
        g.summands.push(entry);
    }
    for g in &mut groups {
        g.summands.sort_by(|a, b| (a.subset.len(), &a.subset).cmp(&(b.subset.len(), &b.subset)));
    }

    let all_certified = groups.iter().all(|g| g.summands.iter().all(|s| s.certificate.is_certified()));
    let mut notes = vec![
        "summands are Σ^{|I|+2}|K_I|; some accounts of the corollary write the shift as |I|+1".to_string(),
    ];
    if wedge.is_none() {
        notes.push(format!("p = {p} <= n = {n}: no overall verdict, per-summand data only"));
    }
    if groups.iter().any(|g| g.summands.iter().any(|s| s.subset.len() as u64 > g.index)) {
        notes.push("summands with |I| > i are certified through the vanishing range only".into());
    }
    Ok(ProjectionReport {
        p,
        n,
        m,
        groups,
        null_homotopy_certified: wedge.is_some().then_some(all_certified),
        notes,
    })
}

/// [`suspension_triviality_check`] for a validated `(P, Λ)`.
pub fn projection_decomposition(q: &Quasitoric, p: u64, options: &SplittingOptions) -> Result<ProjectionReport> {
    suspension_triviality_check(&q.polytope, p, options)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    #[serde(rename = "Σ^∞π not null")]
    NotNull,
    #[serde(rename = "inconclusive")]
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// A nonzero `x ∈ H^2(M; Z/2)` with `x^2 = 0`, in the standard basis.
    SquaringKernel { coordinates: Vec<u8>, class: String },
    /// `Sq^{2j}(t^r) = t^{r+j}` with `r + j = s`.
    SteenrodHit { s: u64, r: u64, j: u64 },
    /// `Σ^∞` of `S^{2k+1} -> CP^k` is essential.
    ProjectiveSpace { k: usize },
}

impl Witness {
    /// Re-checks the witness from scratch; `algebra` is required for squaring
    /// kernels.
    pub fn revalidate(&self, algebra: Option<&GradedAlgebra<F2>>) -> bool {
        match self {
            Witness::SquaringKernel { coordinates, .. } => {
                let Some(alg) = algebra else { return false };
                if coordinates.len() != alg.dim(1) || coordinates.iter().all(|&c| c == 0) {
                    return false;
                }
                let v: Vec<F2> = coordinates.iter().map(|&c| F2::new(c as i64)).collect();
                alg.multiply(1, &v, 1, &v).is_some_and(|sq| sq.iter().all(|c| c.value() == 0))
            }
            Witness::SteenrodHit { s, r, j } => {
                *j >= 1 && j <= r && r + j == *s && binomial_is_odd(*r, *j)
            }
            Witness::ProjectiveSpace { k } => *k >= 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NontrivialityVerdict {
    pub criterion: String,
    pub applicable: bool,
    pub witnesses: Vec<Witness>,
    pub conclusion: Conclusion,
    pub notes: Vec<String>,
}

impl NontrivialityVerdict {
    fn inconclusive(criterion: &str, applicable: bool, notes: Vec<String>) -> Self {
        NontrivialityVerdict {
            criterion: criterion.into(),
            applicable,
            witnesses: Vec::new(),
            conclusion: Conclusion::Inconclusive,
            notes,
        }
    }

    pub fn is_not_null(&self) -> bool {
        self.conclusion == Conclusion::NotNull
    }
}

/// Looks for `0 ≠ x ∈ H^2(M; Z/2)` with `x^2 = 0`. Squaring is additive in
/// characteristic 2, so this is a kernel computation.
pub fn squaring_kernel(algebra: &GradedAlgebra<F2>, names: &[String]) -> NontrivialityVerdict {
    const NAME: &str = "squaring-kernel";
    let Some(sq) = algebra.squares_matrix() else {
        return NontrivialityVerdict::inconclusive(NAME, false, vec!["H^4 is outside the truncation".into()]);
    };
    let kernel = sq.kernel();
    let Some(v) = kernel.first() else {
        return NontrivialityVerdict::inconclusive(NAME, true, vec!["squaring H^2 -> H^4 is injective".into()]);
    };
    let witness = Witness::SquaringKernel {
        coordinates: v.iter().map(|c| c.value() as u8).collect(),
        class: algebra.format_class(1, v, names),
    };
    debug_assert!(witness.revalidate(Some(algebra)));
    NontrivialityVerdict {
        criterion: NAME.into(),
        applicable: true,
        witnesses: vec![witness],
        conclusion: Conclusion::NotNull,
        notes: vec![format!("kernel dimension {}", kernel.len())],
    }
}

/// [`squaring_kernel`] on `H^*(M; Z/2)` computed from `(P, Λ)`.
pub fn squaring_kernel_for(q: &Quasitoric) -> Result<NontrivialityVerdict> {
    let ring = cohomology_ring::<F2>(q)?;
    Ok(squaring_kernel(&ring.algebra, &ring.names))
}

fn binomial_is_odd(r: u64, j: u64) -> bool {
    r & j == j
}

/// Smallest `j >= 1` with `r = s - j >= j` and `C(r, j)` odd, so that
/// `Sq^{2j}(t^r) = t^s`.
pub fn steenrod_hit_search(s: u64) -> Option<(u64, u64)> {
    (1..=s / 2).map(|j| (s - j, j)).find(|&(r, j)| binomial_is_odd(r, j))
}

fn is_power_of_two(x: u64) -> bool {
    x.is_power_of_two()
}

/// Criterion for `M` over `Δ^k × Δ^{n-k}`.
pub fn prop_two_check(n: usize, k: usize) -> Result<NontrivialityVerdict> {
    const NAME: &str = "two-simplices";
    if k > n || n == 0 {
        return Err(Error::OutOfRange(format!("need 0 <= k <= n and n >= 1, got n={n}, k={k}")));
    }
    if k == 0 || k == n {
        return Ok(NontrivialityVerdict {
            criterion: NAME.into(),
            applicable: true,
            witnesses: vec![Witness::ProjectiveSpace { k: n }],
            conclusion: Conclusion::NotNull,
            notes: vec![format!("M = CP^{n}")],
        });
    }
    let (n64, k64) = (n as u64, k as u64);
    let stated = !is_power_of_two(n64 + 2) && !is_power_of_two(n64 - k64 + 2);
    let exponents = [n64 - k64 + 1, k64 + 1];
    let hits: Vec<Witness> = exponents
        .iter()
        .filter_map(|&s| steenrod_hit_search(s).map(|(r, j)| Witness::SteenrodHit { s, r, j }))
        .collect();
    let all_hit = hits.len() == exponents.len();
    let mut notes = vec![
        format!("n+2 = {} and n-k+2 = {}", n + 2, n - k + 2),
        format!(
            "hit search: s = {} {}, s = {} {}",
            exponents[0],
            if steenrod_hit_search(exponents[0]).is_some() { "hit" } else { "not hit" },
            exponents[1],
            if steenrod_hit_search(exponents[1]).is_some() { "hit" } else { "not hit" },
        ),
    ];
    if stated != all_hit {
        notes.push("flag: the power-of-two condition and the hit data for both exponents disagree".into());
    }
    if !stated {
        return Ok(NontrivialityVerdict {
            witnesses: hits,
            ..NontrivialityVerdict::inconclusive(NAME, false, notes)
        });
    }
    Ok(NontrivialityVerdict {
        criterion: NAME.into(),
        applicable: true,
        witnesses: hits,
        conclusion: Conclusion::NotNull,
        notes,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CubeCensusEntry {
    pub tuple: [u8; 6],
    pub witness: Witness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnrealizableTuple {
    pub tuple: [u8; 6],
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CubeCensus {
    pub tuples: u64,
    /// Tuples with `ac = df = 0` and determinant 1.
    pub stated_conditions: u64,
    /// Those that also have `be = 0`, i.e. can come from a characteristic matrix.
    pub valid: u64,
    /// Tuples failing the stated conditions.
    pub excluded: Vec<[u8; 6]>,
    /// Tuples meeting the stated conditions with `be = 1`; no `Λ` produces
    /// them. Their squaring-kernel status is reported but not required.
    pub unrealizable: Vec<UnrealizableTuple>,
    pub witnessed: Vec<CubeCensusEntry>,
}

/// Runs the squaring criterion on every cube presentation meeting the stated
/// conditions. A valid tuple without a witness is an internal-consistency error.
pub fn cube_enumeration() -> Result<CubeCensus> {
    let names = ["x", "y", "z"].map(String::from);
    let results: Vec<(CubeParams, bool, bool, Option<Witness>)> = (0u8..64)
        .into_par_iter()
        .map(|bits| {
            let params = CubeParams::from_bits(bits);
            let pres = cube_presentation(params);
            let QuadraticPresentationF2::Cube { stated_conditions, valid, .. } = pres else { unreachable!() };
            if !stated_conditions {
                return (params, false, false, None);
            }
            let verdict = squaring_kernel(&pres.algebra(), &names);
            (params, true, valid, verdict.witnesses.into_iter().next())
        })
        .collect();
    let mut census = CubeCensus {
        tuples: 64,
        stated_conditions: 0,
        valid: 0,
        excluded: Vec::new(),
        unrealizable: Vec::new(),
        witnessed: Vec::new(),
    };
    for (params, stated, valid, witness) in results {
        if !stated {
            census.excluded.push(params.as_tuple());
            continue;
        }
        census.stated_conditions += 1;
        if !valid {
            census.unrealizable.push(UnrealizableTuple { tuple: params.as_tuple(), witness });
            continue;
        }
        census.valid += 1;
        let Some(witness) = witness else {
            return Err(Error::InternalConsistency(format!(
                "valid cube tuple {:?} has an injective squaring map",
                params.as_tuple()
            )));
        };
        census.witnessed.push(CubeCensusEntry { tuple: params.as_tuple(), witness });
    }
    Ok(census)
}

/// Cube criterion for a manifold over the 3-cube: reduce `Λ` mod 2 and search
/// the presentation for a square-zero class.
pub fn cube_check(q: &Quasitoric) -> Result<NontrivialityVerdict> {
    let params = reduce_to_cube(q)?;
    let pres = cube_presentation(params);
    let QuadraticPresentationF2::Cube { valid, .. } = pres else { unreachable!() };
    if !valid {
        return Err(Error::InternalConsistency(format!(
            "reduction {:?} violates the cube conditions",
            params.as_tuple()
        )));
    }
    let mut v = squaring_kernel(&pres.algebra(), &["x", "y", "z"].map(String::from));
    v.criterion = "cube".into();
    v.notes.push(format!("(a,b,c,d,e,f) = {:?}", params.as_tuple()));
    Ok(v)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PLocalNote {
    pub statement: String,
    pub reason: String,
    pub hopf: Option<String>,
}

/// The p-localization of `π` is essential for every prime `p`; no computation.
pub fn p_local_nontriviality_note(q: &Quasitoric) -> PLocalNote {
    PLocalNote {
        statement: "π_(p): Z_K -> M is not null homotopic for every prime p".into(),
        reason: "a null π_(p) would make Z_K(p) a retract of the fibre T^{m-n}(p), whose higher \
                 homotopy vanishes, while a finite simply connected complex with nonzero reduced \
                 mod-p homology has infinitely many nonzero p-torsion homotopy groups \
                 (McGibbon–Neisendorfer)"
            .into(),
        hopf: (q.n() == 1 && q.m() == 2).then(|| "M = CP^1 and π: S^3 -> S^2 is the Hopf map".into()),
    }
}

/// Verdict for a generalized Bott manifold over `Δ^k × Δ^{n-k}`.
pub fn bott_verdict(dims: &[usize]) -> Result<Option<NontrivialityVerdict>> {
    match dims {
        [a] => prop_two_check(*a, 0).map(Some),
        [a, b] => prop_two_check(a + b, *a).map(Some),
        _ => Ok(None),
    }
}
