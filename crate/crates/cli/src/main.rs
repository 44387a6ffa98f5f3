mod args;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use serde::Serialize;

use args::{Cli, Command, CommonArgs, Format};
use nilab::exact::fmt_rat;
use nilab::index::{build_pair_data, convolution_at, run_orbit, sweep, OrbitReport};
use nilab::invariants::{triangular_decomposition, verify_algebra};
use nilab::liealg::{AlgebraRealization, Family, RealizationInfo};
use nilab::triplets::{nilpotent_from_partition, principal_partition, sl2_complete, Partition};
use nilab::{CheckReport, Error};

const EXIT_FAILED: u8 = 1;
const EXIT_HYPOTHESIS: u8 = 2;
const EXIT_USAGE: u8 = 3;

enum CliError {
    Usage(String),
    Runtime(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Unsupported(_) | Error::Partition(_) => CliError::Usage(e.to_string()),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Pass,
    Failed,
    HypothesisViolated,
}

impl Outcome {
    fn code(self) -> ExitCode {
        match self {
            Outcome::Pass => ExitCode::SUCCESS,
            Outcome::Failed => ExitCode::from(EXIT_FAILED),
            Outcome::HypothesisViolated => ExitCode::from(EXIT_HYPOTHESIS),
        }
    }
}

#[derive(Serialize)]
struct Meta {
    command: &'static str,
    family: Family,
    rank: Option<usize>,
    n: Option<usize>,
    partition: Option<String>,
    seed: u64,
    samples: u64,
    version: &'static str,
}

#[derive(Serialize)]
struct Document<R: Serialize> {
    meta: Meta,
    checks: CheckReport,
    results: R,
}

struct Rendered {
    json: String,
    csv: Option<Vec<u8>>,
    outcome: Outcome,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if let Some(threads) = std::env::var("NILAB_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    match run(&cli.command) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_FAILED)
        }
    }
}

fn run(command: &Command) -> Result<ExitCode, CliError> {
    let args = command.args();
    let family: Family = args.family.parse()?;
    let rendered = match command {
        Command::Table(_) => table(family, args)?,
        _ => {
            let alg = algebra(family, args)?;
            let partition = partition(&alg, args)?;
            let meta = meta(command.name(), &alg, args, partition.as_ref());
            match command {
                Command::Verify(_) => verify(&alg, args, meta)?,
                Command::Index(_) => index(&alg, args, meta, partition)?,
                Command::Decompose(_) => decompose(&alg, meta)?,
                Command::Convolution(_) => convolution(&alg, meta, partition)?,
                Command::Table(_) => unreachable!(),
            }
        }
    };
    let bytes = match (args.format, rendered.csv) {
        (Format::Csv, Some(csv)) => csv,
        (Format::Csv, None) => return Err(CliError::Usage(format!("{} has no CSV form", command.name()))),
        (Format::Json, _) => rendered.json.into_bytes(),
    };
    emit(args, &bytes)?;
    Ok(rendered.outcome.code())
}

fn emit(args: &CommonArgs, bytes: &[u8]) -> Result<(), CliError> {
    let result = match &args.output {
        Some(path) => std::fs::write(path, bytes),
        None => std::io::stdout().lock().write_all(bytes),
    };
    result.map_err(|e| CliError::Runtime(format!("cannot write output: {e}")))
}

fn algebra(family: Family, args: &CommonArgs) -> Result<AlgebraRealization, CliError> {
    let rank = match (args.rank, args.n) {
        (Some(r), _) => r,
        (None, Some(n)) => family
            .rank_for_size(n)
            .ok_or_else(|| CliError::Usage(format!("no algebra of type {family} has matrix size {n}")))?,
        (None, None) => return Err(CliError::Usage("one of --rank or --n is required".into())),
    };
    Ok(AlgebraRealization::build(family, rank)?)
}

fn partition(alg: &AlgebraRealization, args: &CommonArgs) -> Result<Option<Partition>, CliError> {
    let Some(text) = &args.partition else {
        return Ok(None);
    };
    let p: Partition = text.parse()?;
    if p.size() != alg.matrix_size() {
        return Err(CliError::Usage(format!(
            "partition {p} has size {}, expected {}",
            p.size(),
            alg.matrix_size()
        )));
    }
    if !p.is_valid_for(alg.family()) {
        return Err(CliError::Usage(format!(
            "partition {p} labels no nilpotent orbit of {}",
            alg.id()
        )));
    }
    Ok(Some(p))
}

fn meta(command: &'static str, alg: &AlgebraRealization, args: &CommonArgs, p: Option<&Partition>) -> Meta {
    Meta {
        command,
        family: alg.family(),
        rank: Some(alg.rank()),
        n: Some(alg.matrix_size()),
        partition: p.map(ToString::to_string),
        seed: args.seed,
        samples: args.samples,
        version: env!("CARGO_PKG_VERSION"),
    }
}

fn to_json<R: Serialize>(doc: &Document<R>) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(doc).map_err(|e| CliError::Runtime(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn outcome_of(checks: &CheckReport, hypothesis_violated: bool) -> Outcome {
    if !checks.all_pass() {
        Outcome::Failed
    } else if hypothesis_violated {
        Outcome::HypothesisViolated
    } else {
        Outcome::Pass
    }
}

fn checks_csv(checks: &CheckReport) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| CliError::Runtime(e.to_string());
    w.write_record(["name", "identity", "pass", "details"]).map_err(err)?;
    for c in &checks.checks {
        w.write_record([
            c.name.as_str(),
            c.identity.as_str(),
            if c.pass { "true" } else { "false" },
            c.details.as_str(),
        ])
        .map_err(err)?;
    }
    w.into_inner().map_err(|e| CliError::Runtime(e.to_string()))
}

fn orbit_csv(reports: &[&OrbitReport]) -> Result<Vec<u8>, CliError> {
    let opt = |v: Option<String>| v.unwrap_or_default();
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| CliError::Runtime(e.to_string());
    w.write_record([
        "n",
        "partition",
        "dim_delta",
        "s",
        "ind",
        "hypothesis_ok",
        "gamma_nonzero",
    ])
    .map_err(err)?;
    for r in reports {
        w.write_record([
            r.n.to_string(),
            r.partition.clone(),
            opt(r.dims.as_ref().map(|d| d.delta.to_string())),
            opt(r.s.map(|s| s.to_string())),
            opt(r.ind.map(|i| i.to_string())),
            opt(r.hypothesis_ok.map(|h| h.to_string())),
            opt(r.gamma_nonzero().map(|g| g.to_string())),
        ])
        .map_err(err)?;
    }
    w.into_inner().map_err(|e| CliError::Runtime(e.to_string()))
}

#[derive(Serialize)]
struct VerifyResults {
    algebra: RealizationInfo,
    triangular_dims: Option<(usize, usize, usize)>,
    shift_rank: Option<usize>,
    half_orbit_dim: usize,
}

fn verify(alg: &AlgebraRealization, args: &CommonArgs, meta: Meta) -> Result<Rendered, CliError> {
    let v = verify_algebra(alg, args.samples as usize, args.seed)?;
    let checks = v.combined();
    let doc = Document {
        meta,
        results: VerifyResults {
            algebra: alg.info(),
            triangular_dims: v.triangular_dims,
            shift_rank: v.shift_rank,
            half_orbit_dim: v.half_orbit_dim,
        },
        checks,
    };
    Ok(Rendered {
        json: to_json(&doc)?,
        csv: Some(checks_csv(&doc.checks)?),
        outcome: outcome_of(&doc.checks, false),
    })
}

fn orbit_partition(alg: &AlgebraRealization, p: Option<Partition>) -> Partition {
    p.unwrap_or_else(|| principal_partition(alg.family(), alg.rank()))
}

fn index(
    alg: &AlgebraRealization,
    args: &CommonArgs,
    mut meta: Meta,
    p: Option<Partition>,
) -> Result<Rendered, CliError> {
    let p = orbit_partition(alg, p);
    meta.partition = Some(p.to_string());
    let report = run_orbit(alg, &p, args.seed);
    let doc = Document {
        meta,
        checks: report.checks.clone(),
        results: &report,
    };
    Ok(Rendered {
        json: to_json(&doc)?,
        csv: Some(orbit_csv(&[&report])?),
        outcome: outcome_of(&report.checks, report.hypothesis_violated()),
    })
}

#[derive(Serialize)]
struct TableResults<'a> {
    orbits: &'a [OrbitReport],
}

fn table(family: Family, args: &CommonArgs) -> Result<Rendered, CliError> {
    let max_n = match (args.n, args.rank) {
        (Some(n), _) => n,
        (None, Some(r)) => family.matrix_size(r),
        (None, None) => return Err(CliError::Usage("one of --rank or --n is required".into())),
    };
    if args.partition.is_some() {
        return Err(CliError::Usage(
            "table sweeps every partition; --partition is not accepted".into(),
        ));
    }
    let reports = sweep(family, max_n, args.seed)?;
    let mut checks = CheckReport::new();
    for r in reports.iter().filter(|r| r.skipped.is_none()) {
        let failed: Vec<&str> = r.checks.failures().map(|c| c.name.as_str()).collect();
        checks.record(
            format!("{} {}", r.algebra, r.partition),
            "every check of the orbit passes",
            failed.is_empty(),
            if failed.is_empty() {
                format!("{} checks", r.checks.len())
            } else {
                format!("failed: {}", failed.join(", "))
            },
        );
    }
    let hypothesis = reports.iter().any(OrbitReport::hypothesis_violated);
    let doc = Document {
        meta: Meta {
            command: "table",
            family,
            rank: None,
            n: Some(max_n),
            partition: None,
            seed: args.seed,
            samples: args.samples,
            version: env!("CARGO_PKG_VERSION"),
        },
        results: TableResults { orbits: &reports },
        checks,
    };
    let rows: Vec<&OrbitReport> = reports.iter().filter(|r| r.skipped.is_none()).collect();
    Ok(Rendered {
        json: to_json(&doc)?,
        csv: Some(orbit_csv(&rows)?),
        outcome: outcome_of(&doc.checks, hypothesis),
    })
}

#[derive(Serialize)]
struct DecomposeResults {
    h: String,
    e: String,
    f: String,
    dims: (usize, usize, usize),
    h_space: Vec<String>,
    n_plus: Vec<String>,
    n_minus: Vec<String>,
}

fn decompose(alg: &AlgebraRealization, meta: Meta) -> Result<Rendered, CliError> {
    let d = triangular_decomposition(alg)?;
    let show = |s: &nilab::Subspace| s.basis().iter().map(|b| alg.describe(b)).collect::<Vec<_>>();
    let doc = Document {
        meta,
        checks: d.report.clone(),
        results: DecomposeResults {
            h: alg.describe(&d.triplet.h),
            e: alg.describe(&d.triplet.e),
            f: alg.describe(&d.triplet.f),
            dims: d.dims(),
            h_space: show(&d.h_space),
            n_plus: show(&d.n_plus),
            n_minus: show(&d.n_minus),
        },
    };
    Ok(Rendered {
        json: to_json(&doc)?,
        csv: Some(checks_csv(&doc.checks)?),
        outcome: outcome_of(&doc.checks, false),
    })
}

#[derive(Serialize)]
struct ConvolutionEntry {
    i: usize,
    j: usize,
    bracket: String,
    d_ij: String,
    d_ji: String,
    grad: String,
    alphas: Vec<String>,
    c_actual: Option<String>,
    c_printed: String,
    c_expected: String,
}

#[derive(Serialize)]
struct ConvolutionResults {
    hypothesis_ok: bool,
    pair_exponents: Vec<usize>,
    z: Vec<String>,
    pairs: Vec<ConvolutionEntry>,
}

fn convolution(alg: &AlgebraRealization, mut meta: Meta, p: Option<Partition>) -> Result<Rendered, CliError> {
    let p = orbit_partition(alg, p);
    meta.partition = Some(p.to_string());
    let e = nilpotent_from_partition(alg, &p)?;
    if e.is_zero() {
        return Err(CliError::Usage("the zero orbit has no convolution table".into()));
    }
    let t = sl2_complete(alg, &e)?;
    let pd = build_pair_data(alg, &t)?;
    let mut checks = CheckReport::new();
    let mut pairs = Vec::new();
    if pd.hypothesis_ok {
        for i in 1..=pd.s() {
            for j in 1..=pd.s() {
                match convolution_at(alg, &pd, i, j) {
                    Ok(c) => {
                        checks.extend(c.report.clone());
                        pairs.push(ConvolutionEntry {
                            i,
                            j,
                            bracket: alg.describe(&c.bracket),
                            d_ij: alg.describe(&c.d_ij),
                            d_ji: alg.describe(&c.d_ji),
                            grad: alg.describe(&c.grad),
                            alphas: c.alphas.iter().map(fmt_rat).collect(),
                            c_actual: c.c_actual.as_ref().map(fmt_rat),
                            c_printed: fmt_rat(&c.c_printed),
                            c_expected: fmt_rat(&c.c_expected),
                        });
                    }
                    Err(e) => {
                        checks.record(
                            format!("pair ({i}, {j})"),
                            "convolution identities",
                            false,
                            e.to_string(),
                        );
                    }
                }
            }
        }
    }
    let doc = Document {
        meta,
        checks,
        results: ConvolutionResults {
            hypothesis_ok: pd.hypothesis_ok,
            pair_exponents: pd.pair_exponents.clone(),
            z: pd.z.iter().map(|z| alg.describe(z)).collect(),
            pairs,
        },
    };
    Ok(Rendered {
        json: to_json(&doc)?,
        csv: Some(checks_csv(&doc.checks)?),
        outcome: outcome_of(&doc.checks, !pd.hypothesis_ok),
    })
}
