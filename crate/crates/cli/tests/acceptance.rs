//! Acceptance criteria, one PASS/FAIL line each, with per-case detail below.
//!
//! The process exits nonzero on any failure except the single case listed in
//! `KNOWN_UNATTAINABLE`, which is still computed and still reported as FAIL.

#[path = "../../core/tests/oracle/mod.rs"]
mod oracle;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toric_cli::{run, Command, JobSpec};
use toric_core::complex::dehn_sommerville_report;
use toric_core::homology::{reduced_homology, GradedHomology};
use toric_core::moment_angle::zk_homology;
use toric_core::projection::{
    cube_enumeration, squaring_kernel, steenrod_hit_search, suspension_triviality_check, Certificate,
};
use toric_core::quasitoric::{cohomology_ring, polygon_manifold};
use toric_core::snf::smith_normal_form;
use toric_core::splitting::{alpha_scalar, primitive_root, sphere_wedge_decomposition, EvenBettiData, SphereWedgeTerm};
use toric_core::{fixtures, Coefficients, Field, IntegerMatrix, PolytopeDual, Rational, SimplicialComplex, F2, F3, F5};
use toric_core::moment_angle::SplittingOptions;

/// `Σπ_(3)` for `CP^2`: the summand `S^6 -> S^3_(3)` lies in `π_6(S^3)_(3) = Z/3`
/// and is essential, so no certificate can exist.
const KNOWN_UNATTAINABLE: &[(&str, u64)] = &[("simplex-boundary-2", 3)];

struct Outcome {
    failures: Vec<String>,
    known: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { failures: Vec::new(), known: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }
}

fn report(id: u32, name: &str, out: Outcome, hard_failures: &mut u32) {
    let pass = out.failures.is_empty() && out.known.is_empty();
    println!("{} criterion {id}: {name}", if pass { "PASS" } else { "FAIL" });
    for f in &out.failures {
        println!("    failed: {f}");
    }
    for k in &out.known {
        println!("    failed (unattainable, see notes): {k}");
    }
    if !out.failures.is_empty() {
        *hard_failures += 1;
    }
}

fn criterion_1() -> Outcome {
    let mut o = Outcome::new();
    for k in 3..=8 {
        let h = PolytopeDual::polygon(k).h_vector().entries;
        o.check(h == vec![1, k as i64 - 2, 1], format!("h({k}-gon) = {h:?}"));
    }
    for n in 1..=5 {
        let p = PolytopeDual::simplex(n);
        let oracle_h = oracle::h_vector(&oracle::f_vector(p.complex()), n);
        o.check(p.h_vector().entries == vec![1; n + 1], format!("h(Δ^{n})"));
        o.check(p.h_vector().entries == oracle_h, format!("h(Δ^{n}) vs face counting"));
    }
    let cube = fixtures::octahedron();
    let oracle_h = oracle::h_vector(&oracle::f_vector(cube.complex()), 3);
    o.check(cube.h_vector().entries == vec![1, 3, 3, 1], "h(3-cube)");
    o.check(oracle_h == vec![1, 3, 3, 1], "h(3-cube) by face counting");
    for (name, p) in fixtures::polytopes() {
        o.check(dehn_sommerville_report(&p.h_vector()).symmetric, format!("Dehn–Sommerville for {name}"));
        let oracle_h = oracle::h_vector(&oracle::f_vector(p.complex()), p.dim());
        o.check(p.h_vector().entries == oracle_h, format!("h({name}) vs face counting"));
    }
    o
}

fn ranks(h: &GradedHomology) -> BTreeMap<i64, usize> {
    h.iter().filter(|(_, g)| g.rank > 0).map(|(d, g)| (d, g.rank)).collect()
}

fn criterion_2() -> Outcome {
    let mut o = Outcome::new();
    let z = Coefficients::Integers;
    for n in 1..=5 {
        let h = zk_homology(&SimplicialComplex::simplex_boundary(n), z).unwrap();
        o.check(h == GradedHomology::free(z, [(2 * n as i64 + 1, 1)]), format!("Z_K(∂Δ^{n}) = S^{}", 2 * n + 1));
    }
    let k = SimplicialComplex::simplex_boundary(1).join(&SimplicialComplex::simplex_boundary(2)).unwrap();
    o.check(
        zk_homology(&k, z).unwrap() == GradedHomology::free(z, [(3, 1), (5, 1), (8, 1)]),
        "Z_K(∂Δ^1 * ∂Δ^2) = S^3 × S^5",
    );
    let pairs = [
        (SimplicialComplex::cycle(4), SimplicialComplex::simplex_boundary(1)),
        (SimplicialComplex::cycle(5), SimplicialComplex::cycle(4)),
        (fixtures::rp2_six_vertex(), SimplicialComplex::simplex_boundary(1)),
        (SimplicialComplex::new(3, &[vec![1], vec![2, 3]]).unwrap(), SimplicialComplex::cycle(3)),
        (SimplicialComplex::simplex_boundary(3), SimplicialComplex::new(2, &[vec![1]]).unwrap()),
    ];
    for (i, (a, b)) in pairs.iter().enumerate() {
        for c in [Coefficients::Rationals, Coefficients::Prime(2)] {
            let lhs = zk_homology(&a.join(b).unwrap(), c).unwrap();
            let rhs = zk_homology(a, c).unwrap().reduced_kunneth(&zk_homology(b, c).unwrap());
            o.check(lhs == rhs, format!("Künneth for join pair {} over {c}", i + 1));
        }
    }
    for (name, p) in fixtures::polytopes() {
        let h = zk_homology(p.complex(), z).unwrap();
        o.check(h.degrees().all(|d| d >= 3), format!("Z_K({name}) is 2-connected"));
    }
    o
}

fn ring_check<F: Field>(q: &toric_core::quasitoric::Quasitoric) -> Result<(), String> {
    let ring = cohomology_ring::<F>(q).map_err(|e| e.to_string())?;
    let h: Vec<usize> = q.polytope.h_vector().entries.iter().map(|&x| x as usize).collect();
    if ring.dims() != h {
        return Err(format!("dims {:?} vs h {:?}", ring.dims(), h));
    }
    if ring.algebra.dim(q.n() + 1) != 0 {
        return Err("nonzero class above the top degree".into());
    }
    if !ring.generated_in_degree_two() {
        return Err("not generated in degree two".into());
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    let mut o = Outcome::new();
    for (name, q) in fixtures::manifolds() {
        for (c, r) in [
            ("Q", ring_check::<Rational>(&q)),
            ("F2", ring_check::<F2>(&q)),
            ("F3", ring_check::<F3>(&q)),
            ("F5", ring_check::<F5>(&q)),
        ] {
            o.check(r.is_ok(), format!("{name} over {c}: {r:?}"));
        }
        // Odd degrees: the face ring is generated in even degrees, so odd
        // cohomology vanishes when the even dimensions add up to the number of
        // vertices of P (the Euler characteristic of M).
        let h = q.polytope.h_vector().entries;
        let euler: i64 = h.iter().sum();
        let vertices = oracle::f_vector(q.complex())[q.n()] as i64;
        o.check(euler == vertices, format!("{name}: χ(M) = number of vertices of P"));
        for coeff in ["Q", "F2", "F3", "F5"] {
            let job = JobSpec::new(Command::Qtm)
                .with_input_text(serde_json::to_string(&q).unwrap())
                .with_coefficients(coeff.parse().unwrap());
            match run(&job) {
                Ok(_) => {}
                Err(e) => o.check(e.exit_code() != 3, format!("{name} over {coeff}: exit code 3 ({e})")),
            }
        }
    }
    o
}

fn criterion_4() -> Outcome {
    let mut o = Outcome::new();
    for p in [3u64, 5, 7, 11] {
        let u = primitive_root(p).unwrap() as i64;
        for i in 1..p {
            for k in 0..=40 {
                let zero = alpha_scalar(p, u, i, k).unwrap() == 0;
                o.check(zero == (k % (p - 1) != i % (p - 1)), format!("α pattern p={p} i={i} k={k}"));
            }
        }
    }
    let cp3 = sphere_wedge_decomposition(&EvenBettiData::new(vec![1, 1, 1, 1]).unwrap(), 5).unwrap();
    let wedges: Vec<Vec<SphereWedgeTerm>> = cp3.summands.iter().map(|s| s.sphere_wedge.clone().unwrap()).collect();
    let sphere = |d| vec![SphereWedgeTerm { dimension: d, multiplicity: 1 }];
    o.check(wedges == vec![sphere(3), sphere(5), sphere(7), vec![]], "split(CP^3, 5) = S^3 ∨ S^5 ∨ S^7");

    let a = fixtures::cp1_cross_cp1();
    let b = polygon_manifold(4).unwrap();
    o.check(a.lambda != b.lambda && a.polytope == b.polytope, "two distinct Λ over the same square");
    for p in [3u64, 5, 7] {
        let results = |q: &toric_core::quasitoric::Quasitoric| {
            let r = run(&JobSpec::new(Command::Split).with_input_text(serde_json::to_string(q).unwrap()).with_p(p))
                .unwrap();
            serde_json::to_string(&r.results).unwrap()
        };
        o.check(results(&a) == results(&b), format!("split reports over the square agree at p={p}"));
    }
    o
}

fn criterion_5() -> Outcome {
    let mut o = Outcome::new();
    let cases: [(&str, PolytopeDual, &[u64]); 3] = [
        ("simplex-boundary-2", PolytopeDual::simplex(2), &[3, 5]),
        ("4-cycle", PolytopeDual::polygon(4), &[3, 5]),
        ("octahedron", fixtures::octahedron(), &[5, 7]),
    ];
    for (name, poly, primes) in cases {
        for &p in primes {
            let r = suspension_triviality_check(&poly, p, &SplittingOptions::default()).unwrap();
            let m = poly.facet_count();
            let mut seen = vec![0u32; 1 << m];
            for g in &r.groups {
                for s in &g.summands {
                    let mask = s.subset.iter().fold(0usize, |acc, v| acc | 1 << (v - 1));
                    seen[mask] += 1;
                    if (s.subset.len() as u64 - 1) % (p - 1) + 1 != g.index {
                        o.check(false, format!("{name}, p={p}: {:?} in group {}", s.subset, g.index));
                    }
                }
            }
            o.check(seen[1..].iter().all(|&c| c == 1), format!("{name}, p={p}: groups partition all subsets"));
            o.check(r.total_subsets() == (1 << m) - 1, format!("{name}, p={p}: subset count"));
            let bad: Vec<String> = r
                .uncertified()
                .map(|(i, s)| match &s.certificate {
                    Certificate::Uncertified { reason } => format!("I={:?} (group {i}): {reason}", s.subset),
                    _ => unreachable!(),
                })
                .collect();
            let certified = r.null_homotopy_certified == Some(true) && bad.is_empty();
            let case = format!("{name}, p={p}: null homotopy certified");
            if certified {
                continue;
            }
            let detail = format!("{case} [{}]", bad.join("; "));
            if KNOWN_UNATTAINABLE.contains(&(name, p)) {
                o.known.push(detail);
            } else {
                o.check(false, detail);
            }
        }
    }
    o
}

fn criterion_6() -> Outcome {
    let mut o = Outcome::new();
    match cube_enumeration() {
        Ok(c) => {
            o.check(c.witnessed.len() as u64 == c.valid && c.valid > 0, "every valid cube tuple has a witness");
            println!(
                "    cube census: {} tuples meet ac=df=0, det=1; {} also have be=0 and all are witnessed",
                c.stated_conditions, c.valid
            );
        }
        Err(e) => o.check(false, format!("cube census: {e}")),
    }
    for k in 4..=8 {
        let q = polygon_manifold(k).unwrap();
        let ring = cohomology_ring::<F2>(&q).unwrap();
        let v = squaring_kernel(&ring.algebra, &ring.names);
        let ok = v.is_not_null() && v.witnesses.iter().all(|w| w.revalidate(Some(&ring.algebra)));
        o.check(ok, format!("{k}-gon manifold has a square-zero witness"));
    }
    let pascal = oracle::pascal_parity(512);
    for s in 1..=512u64 {
        let ours = steenrod_hit_search(s);
        let brute = oracle::hit_search(s as usize, &pascal).map(|(r, j)| (r as u64, j as u64));
        o.check(ours == brute, format!("hit search s={s}"));
        o.check(ours.is_none() == (s + 1).is_power_of_two(), format!("hit search none iff s+1 = 2^e, s={s}"));
    }
    o
}

fn random_complex(rng: &mut ChaCha8Rng) -> SimplicialComplex {
    let m = rng.gen_range(1..=7);
    let faces: Vec<u64> = (0..rng.gen_range(0..9)).map(|_| rng.gen_range(1..1u64 << m)).collect();
    SimplicialComplex::from_masks(m, faces)
}

fn criterion_7() -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x746f726963);
    for trial in 0..200 {
        let k = random_complex(&mut rng);
        let z = reduced_homology(&k, Coefficients::Integers).unwrap();
        let q = ranks(&reduced_homology(&k, Coefficients::Rationals).unwrap());
        let f2 = ranks(&reduced_homology(&k, Coefficients::Prime(2)).unwrap());
        o.check(q == oracle::reduced_betti(&k, 0), format!("complex {trial}: ranks over Q"));
        o.check(f2 == oracle::reduced_betti(&k, 2), format!("complex {trial}: ranks over F2"));
        let mut uct = BTreeMap::new();
        for (d, g) in z.iter() {
            let t = g.p_torsion_count(2);
            *uct.entry(d).or_insert(0) += g.rank + t;
            *uct.entry(d + 1).or_insert(0) += t;
        }
        uct.retain(|_, r: &mut usize| *r > 0);
        o.check(uct == f2, format!("complex {trial}: universal coefficients"));
        o.check(ranks(&z) == q, format!("complex {trial}: free rank over Z"));
    }
    for trial in 0..500 {
        let rows = rng.gen_range(1..=6);
        let cols = rng.gen_range(1..=6);
        let a: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        let m = IntegerMatrix::from_rows(a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect());
        let d = smith_normal_form(&m).diagonal;
        let chain = d.windows(2).all(|w| w[1].is_multiple_of(&w[0])) && d.iter().all(|x| x > &BigInt::from(0));
        o.check(chain, format!("matrix {trial}: divisibility chain {d:?}"));
        o.check(d.len() == oracle::rank_q(&a), format!("matrix {trial}: rank"));
    }
    o
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut hard = 0;
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("h-vector suite", criterion_1),
        ("moment-angle suite", criterion_2),
        ("quasitoric cohomology suite", criterion_3),
        ("splitting suite", criterion_4),
        ("projection suite", criterion_5),
        ("non-triviality suite", criterion_6),
        ("homology engine property suite", criterion_7),
    ];
    for (i, (name, f)) in criteria.iter().enumerate() {
        report(i as u32 + 1, name, f(), &mut hard);
    }
    println!("acceptance finished in {:.1}s", start.elapsed().as_secs_f64());
    if hard > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
