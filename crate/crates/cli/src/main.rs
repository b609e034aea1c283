//! `refbetti`: compute, compare, verify and plot refined Betti configurations.
//!
//! Exit codes: 0 on success, 1 when a verification check fails, 2 on bad
//! input or usage.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use refbetti::complex::critical_grid;
use refbetti::config::bottleneck_distance;
use refbetti::io::{
    emit_diagram, parse_config_document, parse_input, write_config_document, write_input, write_polynomial_document,
    DegreeSection, InputDocument, PlotStyle,
};
use refbetti::linalg::{Field, FieldSpec, PrimeField, Rationals};
use refbetti::persistence::{compute_ortho_delta, hat_delta_from_ftable, refine, PersistenceError};
use refbetti::value::{format_value, parse_value};
use refbetti::verify::{perturb_distinct, perturb_uniform, run_check, trial_rng, Check, PerturbationSpec, Subject};
use refbetti::{Configuration, Exec, Value, VertexFunction};

#[derive(Parser, Debug)]
#[command(name = "refbetti", version, about = "Refined Betti numbers of simplicial complexes with PL functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct FieldArgs {
    /// Coefficient field: `Q` or `GF` (with --p). Defaults to the input's field.
    #[arg(long)]
    field: Option<String>,
    /// Characteristic for `--field GF`; on its own it implies GF(p).
    #[arg(long)]
    p: Option<u64>,
}

#[derive(Args, Debug, Clone)]
struct InputArgs {
    /// Input document.
    input: PathBuf,
    #[command(flatten)]
    field: FieldArgs,
    /// Which `values` line of the input to use (0-based).
    #[arg(long, default_value_t = 0)]
    function: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Multiplicity configuration for every degree, optionally with representatives.
    Compute {
        #[command(flatten)]
        input: InputArgs,
        /// Include quotient representatives (homology coordinates).
        #[arg(long)]
        reps: bool,
        /// Include orthogonal-refinement bases (rationals only).
        #[arg(long)]
        ortho: bool,
        /// Write here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Coefficients of the polynomial whose roots are the configuration points.
    Poly {
        #[command(flatten)]
        input: InputArgs,
        /// Write here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Bottleneck distance between two configuration documents, per degree.
    Distance {
        /// Output of `compute`, or any configuration document.
        left: PathBuf,
        right: PathBuf,
    },
    /// Run named checks; all standard checks when none is given.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        /// mass, critical-support, stability, local-stability, duality, box-laws,
        /// genericity, oracle, direct-sum, orthogonality, polynomial
        #[arg(long = "check")]
        checks: Vec<String>,
        /// Perturbation size; defaults to a quarter of the smallest grid gap.
        #[arg(long)]
        eps: Option<String>,
        /// Random perturbations per stability check.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Seeds the perturbation RNG; equal seeds give equal reports.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// SVG plot and CSV table of all degrees.
    Plot {
        #[command(flatten)]
        input: InputArgs,
        /// SVG destination; stdout when neither file is given.
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        title: Option<String>,
    },
    /// Write the input back with a randomly perturbed function.
    Perturb {
        /// Input document
        input: PathBuf,
        /// Which `values` line to perturb; the output keeps only that function.
        #[arg(long, default_value_t = 0)]
        function: usize,
        /// Largest shift; defaults to a quarter of the smallest grid gap.
        #[arg(long)]
        eps: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Instead of a uniform shift, make all vertex values distinct.
        #[arg(long)]
        distinct: bool,
        /// Write here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

enum Failure {
    /// Bad input or usage; exit 2.
    Input(String),
    /// A check failed; exit 1.
    Check,
}

impl From<PersistenceError> for Failure {
    fn from(e: PersistenceError) -> Self {
        Failure::Input(e.to_string())
    }
}

type CliResult = Result<(), Failure>;

fn input_err(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

/// Runs `$body` with `$f` bound to the concrete field named by `$spec`.
macro_rules! with_field {
    ($spec:expr, |$f:ident| $body:expr) => {
        match $spec {
            FieldSpec::Rationals => {
                let $f = &Rationals;
                $body
            }
            FieldSpec::Prime(p) => {
                let $f = &PrimeField::new(p).map_err(input_err)?;
                $body
            }
        }
    };
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_out(output: Option<&Path>, text: &str) -> CliResult {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(path: &Path) -> Result<InputDocument, Failure> {
    parse_input(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn resolve_field(args: &FieldArgs, doc: &InputDocument) -> Result<FieldSpec, Failure> {
    let spec = match (args.field.as_deref(), args.p) {
        (None, None) => doc.field,
        (Some("Q" | "q"), None) => FieldSpec::Rationals,
        (Some("Q" | "q"), Some(_)) => return Err(Failure::Input("--p only applies to --field GF".into())),
        (Some("GF" | "gf") | None, Some(p)) => FieldSpec::prime(p).map_err(input_err)?,
        (Some("GF" | "gf"), None) => return Err(Failure::Input("--field GF needs --p".into())),
        (Some(other), _) => return Err(Failure::Input(format!("unknown field {other:?}; use Q or GF"))),
    };
    Ok(spec)
}

fn pick_function(doc: &InputDocument, i: usize) -> Result<&VertexFunction, Failure> {
    doc.functions
        .get(i)
        .ok_or_else(|| Failure::Input(format!("--function {i}: the input has {} functions", doc.functions.len())))
}

fn degrees(doc: &InputDocument) -> std::ops::RangeInclusive<usize> {
    0..=doc.complex.dim().unwrap_or(0)
}

fn deltas<F: Field>(field: &F, doc: &InputDocument, f: &VertexFunction) -> Result<Vec<Configuration>, Failure> {
    degrees(doc)
        .map(|r| Ok(refine(field, &doc.complex, f, r, Exec::default())?.delta))
        .collect()
}

/// A quarter of the smallest grid gap, or 1/4 when there is one grid value.
fn default_eps(doc: &InputDocument, f: &VertexFunction) -> Result<Value, Failure> {
    let gap = critical_grid(&doc.complex, f)
        .map_err(input_err)?
        .min_gap()
        .unwrap_or_else(|| Value::from_integer(1.into()));
    Ok(gap / Value::from_integer(4.into()))
}

fn parse_eps(eps: Option<&str>, doc: &InputDocument, f: &VertexFunction) -> Result<Value, Failure> {
    match eps {
        Some(s) => parse_value(s).map_err(|e| Failure::Input(format!("--eps: {e}"))),
        None => default_eps(doc, f),
    }
}

fn compute(input: &InputArgs, reps: bool, ortho: bool, output: Option<&Path>) -> CliResult {
    let doc = load(&input.input)?;
    let spec = resolve_field(&input.field, &doc)?;
    let f = pick_function(&doc, input.function)?;
    if ortho && spec != FieldSpec::Rationals {
        return Err(Failure::Input(format!("--ortho needs --field Q, not {spec}")));
    }
    let mut sections = with_field!(spec, |fld| {
        degrees(&doc)
            .map(|r| {
                let rf = refine(fld, &doc.complex, f, r, Exec::default())?;
                let mut s = DegreeSection::new(r, rf.delta.clone());
                if reps {
                    s = s.with_reps(&hat_delta_from_ftable(fld, &rf.table, &rf.ftable, &rf.delta));
                }
                Ok(s)
            })
            .collect::<Result<Vec<_>, Failure>>()?
    });
    if ortho {
        for s in &mut sections {
            let o = compute_ortho_delta(&doc.complex, f, s.degree)?;
            *s = std::mem::take(s).with_ortho(&o);
        }
    }
    write_out(output, &write_config_document(&spec, &sections))
}

fn poly(input: &InputArgs, output: Option<&Path>) -> CliResult {
    let doc = load(&input.input)?;
    let spec = resolve_field(&input.field, &doc)?;
    let f = pick_function(&doc, input.function)?;
    let ds = with_field!(spec, |fld| deltas(fld, &doc, f)?);
    let sections: Vec<(usize, &Configuration)> = ds.iter().enumerate().collect();
    write_out(output, &write_polynomial_document(&spec, &sections))
}

fn distance(left: &Path, right: &Path) -> CliResult {
    let parse = |p: &Path| -> Result<_, Failure> {
        parse_config_document(&read(p)?).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))
    };
    let (a, b) = (parse(left)?, parse(right)?);
    if a.degrees.keys().ne(b.degrees.keys()) {
        return Err(Failure::Input("the documents list different degrees".into()));
    }
    let mut out = String::new();
    let mut overall = Value::from_integer(0.into());
    for (r, ca) in &a.degrees {
        let m = bottleneck_distance(ca, &b.degrees[r]).map_err(|e| Failure::Input(format!("degree {r}: {e}")))?;
        out.push_str(&format!("degree {r} distance {}\n", format_value(&m.distance)));
        for (p, q) in &m.witness {
            out.push_str(&format!("match {p} {q}\n"));
        }
        overall = overall.max(m.distance);
    }
    out.push_str(&format!("distance {}\n", format_value(&overall)));
    write_out(None, &out)
}

const STANDARD_CHECKS: [Check; 7] = [
    Check::Mass,
    Check::CriticalSupport,
    Check::Stability,
    Check::LocalStability,
    Check::Duality,
    Check::BoxLaws,
    Check::Genericity,
];

fn verify(input: &InputArgs, names: &[String], eps: Option<&str>, trials: usize, seed: u64) -> CliResult {
    let doc = load(&input.input)?;
    let spec = resolve_field(&input.field, &doc)?;
    let f = pick_function(&doc, input.function)?;
    let checks: Vec<Check> = if names.is_empty() {
        STANDARD_CHECKS
            .into_iter()
            .filter(|c| *c != Check::Duality || doc.manifold_dim.is_some())
            .collect()
    } else {
        names.iter().map(|n| n.parse().map_err(input_err)).collect::<Result<_, _>>()?
    };
    let pspec = PerturbationSpec::new(parse_eps(eps, &doc, f)?, trials, seed).map_err(input_err)?;
    let subject = Subject {
        complex: &doc.complex,
        function: f,
        manifold_dim: doc.manifold_dim,
        orientable: doc.orientable,
    };
    let mut failed = false;
    for check in checks {
        let report = with_field!(spec, |fld| run_check(fld, check, &subject, &pspec, Exec::default()))
            .map_err(|e| Failure::Input(format!("{check}: {e}")))?;
        println!("{report}");
        for d in &report.details {
            println!("  {d}");
        }
        eprintln!("{check}: {:.3}s", report.elapsed.as_secs_f64());
        failed |= !report.passed;
    }
    if failed {
        Err(Failure::Check)
    } else {
        Ok(())
    }
}

fn plot(input: &InputArgs, svg: Option<&Path>, csv: Option<&Path>, title: Option<String>) -> CliResult {
    let doc = load(&input.input)?;
    let spec = resolve_field(&input.field, &doc)?;
    let f = pick_function(&doc, input.function)?;
    let ds = with_field!(spec, |fld| deltas(fld, &doc, f)?);
    let layers: Vec<(usize, &Configuration)> = ds.iter().enumerate().collect();
    let style = PlotStyle {
        title,
        ..PlotStyle::default()
    };
    let diagram = emit_diagram(&layers, &style);
    if let Some(p) = csv {
        write_out(Some(p), &diagram.csv)?;
    }
    if svg.is_some() || csv.is_none() {
        write_out(svg, &diagram.svg)?;
    }
    Ok(())
}

fn perturb(
    input: &Path,
    function: usize,
    eps: Option<&str>,
    seed: u64,
    distinct: bool,
    output: Option<&Path>,
) -> CliResult {
    let mut doc = load(input)?;
    let f = pick_function(&doc, function)?.clone();
    let mut rng = trial_rng(seed, 0);
    let g = if distinct {
        perturb_distinct(&f, &mut rng)
    } else {
        let eps = parse_eps(eps, &doc, &f)?;
        if eps < Value::from_integer(0.into()) {
            return Err(Failure::Input("--eps must be nonnegative".into()));
        }
        perturb_uniform(&f, &eps, &mut rng)
    };
    doc.functions = vec![g];
    write_out(output, &write_input(&doc))
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Compute {
            input,
            reps,
            ortho,
            output,
        } => compute(&input, reps, ortho, output.as_deref()),
        Command::Poly { input, output } => poly(&input, output.as_deref()),
        Command::Distance { left, right } => distance(&left, &right),
        Command::Verify {
            input,
            checks,
            eps,
            trials,
            seed,
        } => verify(&input, &checks, eps.as_deref(), trials, seed),
        Command::Plot { input, svg, csv, title } => plot(&input, svg.as_deref(), csv.as_deref(), title),
        Command::Perturb {
            input,
            function,
            eps,
            seed,
            distinct,
            output,
        } => perturb(&input, function, eps.as_deref(), seed, distinct, output.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
