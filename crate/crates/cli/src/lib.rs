//! Job dispatch and report assembly for the `toric` binary.
//!
//! Inputs are JSON with 1-based vertex indices:
//!
//! - complex: `{"m": 4, "facets": [[1,2],[2,3],[3,4],[4,1]]}`
//! - polytope: `{"n": 2, "complex": <complex>}`
//! - manifold: `{"polytope": <polytope>, "lambda": [[1,0,1,0],[0,1,0,1]]}`
//! - Betti data: `{"b": [1,1,1,1]}`
//! - Bott tower: `{"dims": [1,1], "params": [[], [[2]]]}`

use std::fmt::Write as _;
use std::path::PathBuf;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};
use toric_core::complex::dehn_sommerville_report;
use toric_core::moment_angle::{bbcg_splitting, SplittingOptions};
use toric_core::projection::{
    bott_verdict, cube_check, cube_enumeration, p_local_nontriviality_note, projection_decomposition, prop_two_check,
    squaring_kernel_for, suspension_triviality_check, NontrivialityVerdict,
};
use toric_core::quasitoric::{
    cohomology_presentation, generalized_bott, reduce_to_cube, validate_characteristic, CharacteristicMatrix, Quasitoric,
};
use toric_core::splitting::{sphere_wedge_decomposition, split_with_root, EvenBettiData};
use toric_core::{fixtures, Coefficients, PolytopeDual, SimplicialComplex};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Hvec,
    Zk,
    Qtm,
    Split,
    Projection,
    Nontrivial,
    CubeCensus,
    Bott,
    Fixtures,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Hvec => "hvec",
            Command::Zk => "zk",
            Command::Qtm => "qtm",
            Command::Split => "split",
            Command::Projection => "projection",
            Command::Nontrivial => "nontrivial",
            Command::CubeCensus => "cube-census",
            Command::Bott => "bott",
            Command::Fixtures => "fixtures",
        }
    }
}

#[derive(Clone, Debug)]
pub struct JobSpec {
    pub command: Command,
    pub input: Option<PathBuf>,
    /// Inline input, used instead of reading `input`.
    pub input_text: Option<String>,
    pub coefficients: Option<Coefficients>,
    pub p: Option<u64>,
    pub output: Option<PathBuf>,
    pub text: bool,
    pub sizes: Option<Vec<usize>>,
    pub cap: Option<usize>,
    pub u: Option<i64>,
    pub n: Option<usize>,
    pub k: Option<usize>,
}

impl JobSpec {
    pub fn new(command: Command) -> Self {
        JobSpec {
            command,
            input: None,
            input_text: None,
            coefficients: None,
            p: None,
            output: None,
            text: false,
            sizes: None,
            cap: None,
            u: None,
            n: None,
            k: None,
        }
    }

    pub fn with_input_text(mut self, text: impl Into<String>) -> Self {
        self.input_text = Some(text.into());
        self
    }

    pub fn with_p(mut self, p: u64) -> Self {
        self.p = Some(p);
        self
    }

    pub fn with_coefficients(mut self, c: Coefficients) -> Self {
        self.coefficients = Some(c);
        self
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{context}: {source}")]
    Core { context: &'static str, source: toric_core::Error },
    #[error("i/o error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    /// 2 for input errors, 3 for internal-consistency failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core { source, .. } if source.is_internal() => 3,
            _ => 2,
        }
    }
}

fn core(context: &'static str) -> impl Fn(toric_core::Error) -> CliError {
    move |source| CliError::Core { context, source }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: Command,
    /// SHA-256 of the raw input bytes.
    pub input_digest: Option<String>,
    pub results: Value,
    pub warnings: Vec<String>,
    pub version: String,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command.name());
        if let Some(d) = &self.input_digest {
            let _ = writeln!(out, "input sha256: {d}");
        }
        render_text(&self.results, 0, &mut out);
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        out
    }
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                if is_scalar_like(val) {
                    let _ = writeln!(out, "{pad}{k}: {}", inline(val));
                } else {
                    let _ = writeln!(out, "{pad}{k}:");
                    render_text(val, indent + 1, out);
                }
            }
        }
        Value::Array(items) if !items.iter().all(is_scalar_like) => {
            for item in items {
                let _ = writeln!(out, "{pad}-");
                render_text(item, indent + 1, out);
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", inline(other));
        }
    }
}

fn is_scalar_like(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|i| !i.is_object() && is_scalar_like(i)),
        Value::Object(_) => false,
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

enum Input {
    Complex(SimplicialComplex),
    Polytope(PolytopeDual),
    /// Polytope and matrix, not yet validated against each other.
    Manifold(PolytopeDual, CharacteristicMatrix),
    Betti(EvenBettiData),
    Bott { dims: Vec<usize>, params: Vec<Vec<Vec<i64>>> },
}

fn field<T: serde::de::DeserializeOwned>(v: &Value, name: &str) -> Result<T, CliError> {
    let raw = v.get(name).cloned().ok_or_else(|| CliError::Input(format!("missing field `{name}`")))?;
    serde_json::from_value(raw).map_err(|e| CliError::Input(format!("field `{name}`: {e}")))
}

fn parse_input(text: &str) -> Result<Input, CliError> {
    let v: Value = serde_json::from_str(text).map_err(|e| CliError::Input(format!("invalid JSON: {e}")))?;
    if !v.is_object() {
        return Err(CliError::Input("input must be a JSON object".into()));
    }
    if v.get("lambda").is_some() {
        Ok(Input::Manifold(field(&v, "polytope")?, field(&v, "lambda")?))
    } else if v.get("complex").is_some() {
        Ok(Input::Polytope(serde_json::from_value(v).map_err(|e| CliError::Input(format!("polytope: {e}")))?))
    } else if v.get("facets").is_some() {
        Ok(Input::Complex(serde_json::from_value(v).map_err(|e| CliError::Input(format!("complex: {e}")))?))
    } else if v.get("b").is_some() {
        let b: Vec<u64> = field(&v, "b")?;
        Ok(Input::Betti(EvenBettiData::new(b).map_err(core("Betti data"))?))
    } else if v.get("dims").is_some() {
        Ok(Input::Bott { dims: field(&v, "dims")?, params: field(&v, "params")? })
    } else {
        Err(CliError::Input(
            "unrecognized input: expected a complex, polytope, manifold, Betti data or Bott tower".into(),
        ))
    }
}

impl Input {
    fn kind(&self) -> &'static str {
        match self {
            Input::Complex(_) => "complex",
            Input::Polytope(_) => "polytope",
            Input::Manifold(..) => "manifold",
            Input::Betti(_) => "Betti data",
            Input::Bott { .. } => "Bott tower",
        }
    }

    fn complex(&self) -> Option<&SimplicialComplex> {
        match self {
            Input::Complex(k) => Some(k),
            Input::Polytope(p) | Input::Manifold(p, _) => Some(p.complex()),
            _ => None,
        }
    }

    fn polytope(&self) -> Option<&PolytopeDual> {
        match self {
            Input::Polytope(p) | Input::Manifold(p, _) => Some(p),
            _ => None,
        }
    }

    fn manifold(&self) -> Result<Option<Quasitoric>, CliError> {
        match self {
            Input::Manifold(p, l) => Quasitoric::new(p.clone(), l.clone()).map(Some).map_err(core("characteristic matrix")),
            Input::Bott { dims, params } => generalized_bott(dims, params).map(Some).map_err(core("Bott tower")),
            _ => Ok(None),
        }
    }
}

fn wrong_input(command: Command, input: &Input, wanted: &str) -> CliError {
    CliError::Input(format!("`{}` needs {wanted}, got {}", command.name(), input.kind()))
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("results serialize")
}

fn require_p(job: &JobSpec) -> Result<u64, CliError> {
    job.p.ok_or_else(|| CliError::Input(format!("`{}` needs --p", job.command.name())))
}

fn options(job: &JobSpec) -> SplittingOptions {
    SplittingOptions { size_filter: job.sizes.as_ref().map(|s| s.iter().copied().collect()), cap: job.cap }
}

/// Runs one job and assembles its report. Nothing is written to disk except
/// by the `fixtures` command.
pub fn run(job: &JobSpec) -> Result<Report, CliError> {
    let raw = match (&job.input_text, &job.input) {
        (Some(t), _) => Some(t.clone()),
        (None, Some(path)) => Some(
            std::fs::read_to_string(path)
                .map_err(|source| CliError::Io { path: path.display().to_string(), source })?,
        ),
        (None, None) => None,
    };
    let digest = raw.as_ref().map(|r| hex::encode(Sha256::digest(r.as_bytes())));
    let input = raw.as_deref().map(parse_input).transpose()?;
    let needs_input = !matches!(job.command, Command::CubeCensus | Command::Fixtures);
    let input = match (input, needs_input) {
        (Some(i), _) => Some(i),
        (None, true) if job.command != Command::Nontrivial || job.n.is_none() => {
            return Err(CliError::Input(format!("`{}` needs --input", job.command.name())));
        }
        (None, _) => None,
    };
    let mut warnings = Vec::new();
    let results = match job.command {
        Command::Hvec => {
            let input = input.unwrap();
            let p = input.polytope().ok_or_else(|| wrong_input(job.command, &input, "a polytope"))?;
            let h = p.h_vector();
            let ds = dehn_sommerville_report(&h);
            warnings.extend(ds.notes.iter().cloned());
            serde_json::json!({
                "n": p.dim(),
                "m": p.facet_count(),
                "f": p.f_vector().entries,
                "h": h.entries,
                "dehn_sommerville": ds,
            })
        }
        Command::Zk => {
            let input = input.unwrap();
            let k = input.complex().ok_or_else(|| wrong_input(job.command, &input, "a simplicial complex"))?;
            let c = job.coefficients.unwrap_or(Coefficients::Integers);
            to_value(&bbcg_splitting(k, c, &options(job)).map_err(core("moment-angle homology"))?)
        }
        Command::Qtm => {
            let input = input.unwrap();
            let Input::Manifold(p, l) = &input else {
                return Err(wrong_input(job.command, &input, "a manifold"));
            };
            let validity = validate_characteristic(p, l).map_err(core("characteristic matrix"))?;
            let q = Quasitoric::new(p.clone(), l.clone()).map_err(core("characteristic matrix"))?;
            let c = job.coefficients.unwrap_or(Coefficients::Rationals);
            let pres = cohomology_presentation(&q, c).map_err(core("cohomology ring"))?;
            serde_json::json!({
                "validity": validity,
                "cohomology": to_value(&pres),
                "h": to_value(&q.polytope.h_vector().entries),
            })
        }
        Command::Split => {
            let p = require_p(job)?;
            let input = input.unwrap();
            let betti = match &input {
                Input::Betti(b) => b.clone(),
                other => match other.polytope() {
                    Some(poly) => EvenBettiData::from_h_vector(&poly.h_vector()),
                    None => match other.manifold()? {
                        Some(q) => EvenBettiData::from_h_vector(&q.polytope.h_vector()),
                        None => return Err(wrong_input(job.command, other, "a polytope, manifold or Betti data")),
                    },
                },
            };
            if let Input::Manifold(..) = &input {
                input.manifold()?;
            }
            let report = split_with_root(&betti, p, job.u).map_err(core("splitting"))?;
            let report = if p > betti.n_top as u64 {
                let wedge = sphere_wedge_decomposition(&betti, p).map_err(core("sphere wedge"))?;
                debug_assert_eq!(
                    wedge.summands.iter().map(|s| &s.homology).collect::<Vec<_>>(),
                    report.summands.iter().map(|s| &s.homology).collect::<Vec<_>>()
                );
                toric_core::splitting::SplitReport { u: report.u, ..wedge }
            } else {
                warnings.push(format!(
                    "p = {p} <= n = {}: summands are not certified as sphere wedges",
                    betti.n_top
                ));
                report
            };
            warnings.push(
                "integral and mod-p views are both reported; they agree for free even input".into(),
            );
            to_value(&report)
        }
        Command::Projection => {
            let p = require_p(job)?;
            let input = input.unwrap();
            let report = match input.manifold()? {
                Some(q) => projection_decomposition(&q, p, &options(job)),
                None => {
                    let poly = input.polytope().ok_or_else(|| wrong_input(job.command, &input, "a polytope or manifold"))?;
                    suspension_triviality_check(poly, p, &options(job))
                }
            }
            .map_err(core("projection"))?;
            warnings.extend(report.notes.iter().cloned());
            to_value(&report)
        }
        Command::Nontrivial => {
            let mut verdicts: Vec<NontrivialityVerdict> = Vec::new();
            let mut out = serde_json::Map::new();
            if let (Some(n), Some(k)) = (job.n, job.k) {
                verdicts.push(prop_two_check(n, k).map_err(core("two-simplices criterion"))?);
            }
            if let Some(input) = &input {
                let q = input.manifold()?.ok_or_else(|| wrong_input(job.command, input, "a manifold"))?;
                verdicts.push(squaring_kernel_for(&q).map_err(core("squaring kernel"))?);
                if q.complex() == &SimplicialComplex::simplex_boundary(q.n()) {
                    verdicts.push(prop_two_check(q.n(), 0).map_err(core("projective space"))?);
                }
                if reduce_to_cube(&q).is_ok() {
                    verdicts.push(cube_check(&q).map_err(core("cube criterion"))?);
                }
                if let Input::Bott { dims, .. } = input {
                    if let Some(v) = bott_verdict(dims).map_err(core("Bott criterion"))? {
                        verdicts.push(v);
                    }
                }
                out.insert("p_local".into(), to_value(&p_local_nontriviality_note(&q)));
            }
            for v in &verdicts {
                warnings.extend(v.notes.iter().filter(|n| n.starts_with("flag:")).cloned());
            }
            let any = verdicts.iter().any(NontrivialityVerdict::is_not_null);
            out.insert("verdicts".into(), to_value(&verdicts));
            out.insert(
                "stable_conclusion".into(),
                Value::String(if any { "Σ^∞π not null" } else { "inconclusive" }.into()),
            );
            Value::Object(out)
        }
        Command::CubeCensus => to_value(&cube_enumeration().map_err(core("cube census"))?),
        Command::Bott => {
            let input = input.unwrap();
            let Input::Bott { dims, .. } = &input else {
                return Err(wrong_input(job.command, &input, "a Bott tower"));
            };
            let q = input.manifold()?.expect("bott input");
            let c = job.coefficients.unwrap_or(Coefficients::Prime(2));
            let pres = cohomology_presentation(&q, c).map_err(core("cohomology ring"))?;
            let mut out = serde_json::json!({
                "manifold": q,
                "cohomology": pres,
                "squaring_kernel": squaring_kernel_for(&q).map_err(core("squaring kernel"))?,
            });
            if let Some(v) = bott_verdict(dims).map_err(core("Bott criterion"))? {
                out["two_simplices"] = to_value(&v);
            }
            if let Ok(params) = reduce_to_cube(&q) {
                out["cube_parameters"] = to_value(&params);
            }
            out
        }
        Command::Fixtures => {
            let all = fixtures::all();
            if let Some(dir) = &job.output {
                write_fixtures(dir)?;
            }
            Value::Array(
                all.iter()
                    .map(|(name, f)| serde_json::json!({ "name": name, "kind": f.kind() }))
                    .collect(),
            )
        }
    };
    Ok(Report {
        command: job.command,
        input_digest: digest,
        results,
        warnings,
        version: VERSION.into(),
    })
}

/// Canonical JSON text of a fixture.
pub fn fixture_json(f: &fixtures::Fixture) -> String {
    let mut s = serde_json::to_string(f).expect("fixtures serialize");
    s.push('\n');
    s
}

/// Writes every fixture as `<name>.json` into `dir`.
pub fn write_fixtures(dir: &std::path::Path) -> Result<(), CliError> {
    let io = |path: &std::path::Path| {
        let path = path.display().to_string();
        move |source| CliError::Io { path, source }
    };
    std::fs::create_dir_all(dir).map_err(io(dir))?;
    for (name, f) in fixtures::all() {
        let path = dir.join(format!("{name}.json"));
        std::fs::write(&path, fixture_json(&f)).map_err(io(&path))?;
    }
    Ok(())
}

/// Sizes the global rayon pool from `TORIC_WORKERS` when set.
pub fn configure_workers() -> Result<(), CliError> {
    let Ok(v) = std::env::var("TORIC_WORKERS") else { return Ok(()) };
    let n: usize = v
        .parse()
        .map_err(|_| CliError::Input(format!("TORIC_WORKERS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Input(format!("cannot size worker pool: {e}")))
}
