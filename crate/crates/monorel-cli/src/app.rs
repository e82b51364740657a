//! Argument parsing and command dispatch.
//!
//! Each subcommand reads a spec document (file path or `-` for stdin),
//! builds the relation, runs the requested computation, and returns the
//! report plus an exit code. Exit codes: 0 success, 1 validation or
//! computation error, 2 failed `--assert`, 64 usage error (decided by the
//! argument parser before [`run`] is reached).
//!
//! The rank tolerance is resolved in decreasing precedence: the `--tol`
//! flag, the spec document's `tol` field, the `MONOREL_TOL` environment
//! variable, and finally the library default.

use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use monorel::analysis::{
    brezis_browder_report, irreducible_by_skew_criterion, is_maximal_monotone, is_monotone,
    is_paramonotone, is_skew, is_symmetric, Certificate, Verdict,
};
use monorel::decomposition::{
    bw_decomposable, bw_decompose, quad_conjugate, verify_decomposition, QuadraticOnSubspace,
};
use monorel::gallery::random_maximal_monotone;
use monorel::splitting::{douglas_rachford, proximal_point, resolvent};
use monorel::{tol, LinearRelation};
use nalgebra::DVector;
use serde_json::{Map, Value};

use crate::error::{CliError, Result};
use crate::report::{self, render_text};
use crate::spec::{parse_spec, spec_from_relation, RelationSpec};

/// Command-line front end for the linear-relation calculus.
#[derive(Debug, Parser)]
#[command(
    name = "monorel",
    version = monorel::VERSION,
    about = "Certificates, decompositions, resolvents, and solvers for monotone linear relations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Report output format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Indented `key: value` lines.
    Text,
    /// Pretty-printed JSON.
    Json,
}

/// Iterative solver selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Proximal point iteration on the relation itself.
    Pp,
    /// Douglas–Rachford on the subdifferential + skew decomposition.
    Dr,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every certificate on the relation and report the verdicts.
    Check {
        /// Spec file path, or `-` for stdin.
        spec: PathBuf,
        /// Rank tolerance override (highest precedence).
        #[arg(long)]
        tol: Option<f64>,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Exit with code 2 when any certificate verdict is false.
        #[arg(long)]
        assert: bool,
    },
    /// Emit the adjoint relation as a graph-kind spec document.
    Adjoint {
        /// Spec file path, or `-` for stdin.
        spec: PathBuf,
        /// Rank tolerance override (highest precedence).
        #[arg(long)]
        tol: Option<f64>,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Split the relation into a convex quadratic part and a skew part.
    Decompose {
        /// Spec file path, or `-` for stdin.
        spec: PathBuf,
        /// Rank tolerance override (highest precedence).
        #[arg(long)]
        tol: Option<f64>,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Exit with code 2 when the decomposition fails verification.
        #[arg(long)]
        assert: bool,
    },
    /// Conjugate the quadratic part of the decomposition.
    Conjugate {
        /// Spec file path, or `-` for stdin.
        spec: PathBuf,
        /// Rank tolerance override (highest precedence).
        #[arg(long)]
        tol: Option<f64>,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compute the resolvent matrix (I + λA)⁻¹.
    Resolvent {
        /// Spec file path, or `-` for stdin.
        spec: PathBuf,
        /// Resolvent parameter λ > 0.
        #[arg(long, default_value_t = tol::SOLVER_LAMBDA)]
        lambda: f64,
        /// Rank tolerance override (highest precedence).
        #[arg(long)]
        tol: Option<f64>,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Drive an iterative solver to a zero of the relation.
    Solve {
        /// Spec file path, or `-` for stdin.
        spec: PathBuf,
        /// Solver to run.
        #[arg(long, value_enum)]
        method: Method,
        /// Resolvent parameter λ > 0.
        #[arg(long, default_value_t = tol::SOLVER_LAMBDA)]
        lambda: f64,
        /// Starting point as a JSON array, e.g. --from "[1,0]"; defaults to 0.
        #[arg(long)]
        from: Option<String>,
        /// Residual threshold that counts as converged.
        #[arg(long, default_value_t = tol::SOLVER_TOL)]
        residual_tol: f64,
        /// Iteration cap; exceeding it reports an unconverged trace.
        #[arg(long, default_value_t = tol::SOLVER_MAX_ITER)]
        max_iter: usize,
        /// Rank tolerance override (highest precedence).
        #[arg(long)]
        tol: Option<f64>,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Generate a seeded random maximal monotone relation as a spec file.
    Gen {
        /// Ambient dimension.
        #[arg(long)]
        n: usize,
        /// Domain dimension; defaults to n (full domain).
        #[arg(long)]
        dim_dom: Option<usize>,
        /// Weight of the positive semidefinite part.
        #[arg(long, default_value_t = 1.0)]
        psd_scale: f64,
        /// Weight of the skew part.
        #[arg(long, default_value_t = 1.0)]
        skew_scale: f64,
        /// RNG seed; the same seed reproduces the same relation.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the spec here instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Rank tolerance recorded in the generated spec.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Emit a gallery spec document (volterra, derivative, shift_skew).
    Example {
        /// Gallery operator name.
        name: String,
        /// Grid size.
        #[arg(long)]
        n: usize,
        /// Write the spec here instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Rank tolerance recorded in the generated spec.
        #[arg(long)]
        tol: Option<f64>,
    },
}

/// What a successful command hands back to `main`.
#[derive(Debug)]
pub struct RunOutput {
    /// Report text, already formatted and newline-terminated (may be empty
    /// when the command wrote a file instead).
    pub stdout: String,
    /// 0, or 2 for a failed `--assert`.
    pub exit_code: i32,
}

/// Executes one parsed command.
///
/// # Errors
///
/// Any [`CliError`]; `main` maps them all to exit code 1.
pub fn run(cli: &Cli) -> Result<RunOutput> {
    let env_tol = std::env::var("MONOREL_TOL").ok();
    match &cli.command {
        Command::Check {
            spec,
            tol,
            format,
            assert,
        } => {
            let (a, used) = prepare(spec, *tol, env_tol.as_deref())?;
            cmd_check(&a, used, *format, *assert)
        }
        Command::Adjoint { spec, tol, format } => {
            let (a, used) = prepare(spec, *tol, env_tol.as_deref())?;
            cmd_adjoint(&a, used, *format)
        }
        Command::Decompose {
            spec,
            tol,
            format,
            assert,
        } => {
            let (a, used) = prepare(spec, *tol, env_tol.as_deref())?;
            cmd_decompose(&a, used, *format, *assert)
        }
        Command::Conjugate { spec, tol, format } => {
            let (a, used) = prepare(spec, *tol, env_tol.as_deref())?;
            cmd_conjugate(&a, used, *format)
        }
        Command::Resolvent {
            spec,
            lambda,
            tol,
            format,
        } => {
            let (a, used) = prepare(spec, *tol, env_tol.as_deref())?;
            cmd_resolvent(&a, used, *lambda, *format)
        }
        Command::Solve {
            spec,
            method,
            lambda,
            from,
            residual_tol,
            max_iter,
            tol,
            format,
        } => {
            let (a, used) = prepare(spec, *tol, env_tol.as_deref())?;
            let x0 = match from {
                Some(text) => parse_point(text, a.n())?,
                None => DVector::zeros(a.n()),
            };
            cmd_solve(&a, used, *method, *lambda, &x0, *residual_tol, *max_iter, *format)
        }
        Command::Gen {
            n,
            dim_dom,
            psd_scale,
            skew_scale,
            seed,
            output,
            tol,
        } => {
            let used = resolve_tol(*tol, None, env_tol.as_deref())?;
            cmd_gen(
                *n,
                dim_dom.unwrap_or(*n),
                *psd_scale,
                *skew_scale,
                *seed,
                used,
                output.as_deref(),
            )
        }
        Command::Example {
            name,
            n,
            output,
            tol,
        } => {
            let used = resolve_tol(*tol, None, env_tol.as_deref())?;
            cmd_example(name, *n, used, output.as_deref())
        }
    }
}

/// Resolves the rank tolerance from flag, spec field, and environment, in
/// that order of precedence.
///
/// # Errors
///
/// [`CliError::Validation`] for nonpositive or unparsable values.
pub fn resolve_tol(flag: Option<f64>, spec_tol: Option<f64>, env_tol: Option<&str>) -> Result<f64> {
    let chosen = if let Some(t) = flag {
        t
    } else if let Some(t) = spec_tol {
        t
    } else if let Some(text) = env_tol {
        text.trim().parse::<f64>().map_err(|_| {
            CliError::Validation(format!("MONOREL_TOL must parse as a float, got {text:?}"))
        })?
    } else {
        tol::RANK_REL
    };
    if !(chosen.is_finite() && chosen > 0.0) {
        return Err(CliError::Validation(format!(
            "tolerance must be a positive finite number, got {chosen}"
        )));
    }
    Ok(chosen)
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

/// Loads the spec, resolves the tolerance, builds the relation, and returns
/// it with the rank tolerance it was actually built at.
fn prepare(path: &Path, flag_tol: Option<f64>, env_tol: Option<&str>) -> Result<(LinearRelation, f64)> {
    let spec = parse_spec(&read_input(path)?)?;
    let chosen = resolve_tol(flag_tol, spec.tol(), env_tol)?;
    let a = spec.build(chosen)?;
    let used = a.graph().rank_tol();
    Ok((a, used))
}

fn parse_point(text: &str, n: usize) -> Result<DVector<f64>> {
    let raw: Vec<f64> = serde_json::from_str(text)?;
    if raw.len() != n {
        return Err(CliError::Validation(format!(
            "starting point has {} entries, relation lives in R^{n}",
            raw.len()
        )));
    }
    Ok(DVector::from_vec(raw))
}

fn finish(map: Map<String, Value>, format: Format, exit_code: i32) -> Result<RunOutput> {
    let stdout = match format {
        Format::Text => render_text(&map),
        Format::Json => {
            let mut text = serde_json::to_string_pretty(&Value::Object(map))
                .expect("report maps hold only JSON-safe values");
            text.push('\n');
            text
        }
    };
    Ok(RunOutput { stdout, exit_code })
}

/// One certificate's contribution to a `check` report, with hard
/// `InvalidInput` rejections (for example paramonotonicity of a
/// non-monotone relation) downgraded to inconclusive entries so the other
/// verdicts still print.
fn tolerant(result: monorel::Result<Certificate>) -> Result<(Value, Value)> {
    match result {
        Ok(c) => Ok((report::verdict(c.verdict()), report::certificate(&c))),
        Err(monorel::Error::InvalidInput(msg)) => {
            let mut entry = Map::new();
            entry.insert("verdict".into(), Value::String("inconclusive".into()));
            entry.insert("detail".into(), Value::String(msg));
            Ok((
                Value::String("inconclusive".into()),
                Value::Object(entry),
            ))
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_check(a: &LinearRelation, used: f64, format: Format, assert: bool) -> Result<RunOutput> {
    let mut verdicts = Map::new();
    let mut certificates = Map::new();
    let entries: Vec<(&str, monorel::Result<Certificate>)> = vec![
        ("monotone", Ok(is_monotone(a))),
        ("skew", Ok(is_skew(a))),
        ("symmetric", Ok(is_symmetric(a))),
        ("maximal", is_maximal_monotone(a)),
        ("paramonotone", is_paramonotone(a)),
        ("bw_decomposable", bw_decomposable(a)),
        ("brezis_browder", brezis_browder_report(a)),
        ("irreducible", Ok(irreducible_by_skew_criterion(a))),
    ];
    for (name, result) in entries {
        let (verdict, entry) = tolerant(result)?;
        verdicts.insert(name.into(), verdict);
        certificates.insert(name.into(), entry);
    }
    let failed = verdicts.values().any(|v| *v == Value::Bool(false));

    let mut map = report::header("check", used);
    map.insert("n".into(), Value::from(a.n()));
    map.insert("graph_dim".into(), Value::from(a.graph_dim()));
    map.insert("verdicts".into(), Value::Object(verdicts));
    map.insert("certificates".into(), Value::Object(certificates));
    let exit_code = if assert && failed { 2 } else { 0 };
    finish(map, format, exit_code)
}

fn cmd_adjoint(a: &LinearRelation, used: f64, format: Format) -> Result<RunOutput> {
    let adj = a.adjoint();
    let mut map = report::header("adjoint", used);
    // The body is itself a graph-kind spec document, so JSON output can be
    // fed straight back in as input.
    let doc = serde_json::to_value(spec_from_relation(&adj, used))
        .expect("specs serialize to plain JSON");
    if let Value::Object(fields) = doc {
        map.extend(fields);
    }
    map.insert("graph_dim".into(), Value::from(adj.graph_dim()));
    finish(map, format, 0)
}

fn quadratic_block(f: &QuadraticOnSubspace) -> Value {
    let mut map = Map::new();
    map.insert("domain_dim".into(), Value::from(f.domain().dim()));
    map.insert("domain_basis".into(), columns_as_rows(f.domain()));
    map.insert("matrix".into(), report::matrix(f.matrix()));
    map.insert("offset".into(), report::number(f.offset()));
    map.insert("convex".into(), Value::Bool(f.is_convex()));
    Value::Object(map)
}

fn columns_as_rows(s: &monorel::Subspace) -> Value {
    let basis = s.basis();
    Value::Array(
        (0..basis.ncols())
            .map(|j| report::vector(&basis.column(j).into_owned()))
            .collect(),
    )
}

fn cmd_decompose(a: &LinearRelation, used: f64, format: Format, assert: bool) -> Result<RunOutput> {
    let dec = bw_decompose(a)?;
    let distance = dec.reconstruct()?.graph_distance(a)?;
    let cert = verify_decomposition(a, &dec)?;

    let mut map = report::header("decompose", used);
    map.insert("n".into(), Value::from(a.n()));
    map.insert("f".into(), quadratic_block(dec.f()));
    map.insert("skew".into(), report::matrix(dec.skew()));
    map.insert("reconstruction_distance".into(), report::number(distance));
    map.insert("verified".into(), report::verdict(cert.verdict()));
    map.insert("verify_detail".into(), Value::String(cert.detail().into()));
    let exit_code = if assert && cert.verdict() == Verdict::False {
        2
    } else {
        0
    };
    finish(map, format, exit_code)
}

fn cmd_conjugate(a: &LinearRelation, used: f64, format: Format) -> Result<RunOutput> {
    let dec = bw_decompose(a)?;
    let conj = quad_conjugate(dec.f())?;
    let mut map = report::header("conjugate", used);
    map.insert("n".into(), Value::from(a.n()));
    map.insert("f".into(), quadratic_block(dec.f()));
    map.insert("conjugate".into(), quadratic_block(&conj));
    finish(map, format, 0)
}

fn cmd_resolvent(a: &LinearRelation, used: f64, lambda: f64, format: Format) -> Result<RunOutput> {
    let r = resolvent(a, lambda)?;
    let mut map = report::header("resolvent", used);
    map.insert("n".into(), Value::from(a.n()));
    map.insert("lambda".into(), report::number(lambda));
    map.insert("matrix".into(), report::matrix(&r));
    finish(map, format, 0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_solve(
    a: &LinearRelation,
    used: f64,
    method: Method,
    lambda: f64,
    x0: &DVector<f64>,
    residual_tol: f64,
    max_iter: usize,
    format: Format,
) -> Result<RunOutput> {
    let (name, trace) = match method {
        Method::Pp => ("pp", proximal_point(a, x0, lambda, residual_tol, max_iter)?),
        Method::Dr => {
            let dec = bw_decompose(a)?;
            (
                "dr",
                douglas_rachford(dec.f(), dec.skew(), x0, lambda, residual_tol, max_iter)?,
            )
        }
    };

    let mut map = report::header("solve", used);
    map.insert("n".into(), Value::from(a.n()));
    map.insert("method".into(), Value::String(name.into()));
    map.insert("lambda".into(), report::number(lambda));
    map.insert("residual_tol".into(), report::number(residual_tol));
    map.insert("max_iter".into(), Value::from(max_iter));
    map.insert("start".into(), report::vector(x0));
    map.insert("converged".into(), Value::Bool(trace.converged()));
    map.insert("iterations".into(), Value::from(trace.iterations_used()));
    map.insert(
        "final_residual".into(),
        report::number(trace.final_residual()),
    );
    map.insert("final_iterate".into(), report::vector(trace.final_iterate()));
    map.insert(
        "residuals".into(),
        Value::Array(trace.residuals().iter().map(|&r| report::number(r)).collect()),
    );
    finish(map, format, 0)
}

fn emit_spec(map: Map<String, Value>, output: Option<&Path>) -> Result<RunOutput> {
    let mut text = serde_json::to_string_pretty(&Value::Object(map))
        .expect("spec documents hold only JSON-safe values");
    text.push('\n');
    match output {
        Some(path) => {
            std::fs::write(path, &text)?;
            Ok(RunOutput {
                stdout: String::new(),
                exit_code: 0,
            })
        }
        None => Ok(RunOutput {
            stdout: text,
            exit_code: 0,
        }),
    }
}

fn cmd_gen(
    n: usize,
    dim_dom: usize,
    psd_scale: f64,
    skew_scale: f64,
    seed: u64,
    used: f64,
    output: Option<&Path>,
) -> Result<RunOutput> {
    let a = random_maximal_monotone(n, dim_dom, psd_scale, skew_scale, seed)?;
    let mut map = report::header("gen", used);
    let doc = serde_json::to_value(spec_from_relation(&a, used))
        .expect("specs serialize to plain JSON");
    if let Value::Object(fields) = doc {
        map.extend(fields);
    }
    map.insert("seed".into(), Value::from(seed));
    map.insert("dim_dom".into(), Value::from(dim_dom));
    map.insert("psd_scale".into(), report::number(psd_scale));
    map.insert("skew_scale".into(), report::number(skew_scale));
    emit_spec(map, output)
}

fn cmd_example(name: &str, n: usize, used: f64, output: Option<&Path>) -> Result<RunOutput> {
    let spec = RelationSpec::Gallery {
        name: name.to_owned(),
        n,
        tol: None,
    };
    spec.validate()?;
    let mut map = report::header("example", used);
    let doc = serde_json::to_value(&spec).expect("specs serialize to plain JSON");
    if let Value::Object(fields) = doc {
        map.extend(fields);
    }
    emit_spec(map, output)
}
