use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use poisson_core::algebra::WitnessSearch;
use poisson_core::pipeline::{analyze, parse_input, AnalysisReport, Options, TraceRequest};
use poisson_core::poisson::PoissonStructure;
use poisson_core::trace::trace_leaf;
use rayon::prelude::*;

/// Analyze polynomial Poisson bivectors: almost-regularity, isotropy, the
/// distribution D, log-f classification and Casimirs.
#[derive(Parser, Debug)]
#[command(name = "poissonkit", version)]
struct Cli {
    /// Structure descriptions (JSON). Several files are analyzed in parallel.
    #[arg(required = true)]
    inputs: Vec<PathBuf>,

    /// Write the JSON report here; a directory when several inputs are given.
    #[arg(long, value_name = "OUT")]
    json: Option<PathBuf>,

    /// Degree bound of the Casimir search.
    #[arg(long, default_value_t = 4)]
    max_degree: u32,

    /// Witness-search budget for real zero sets.
    #[arg(long, default_value_t = 10_000)]
    samples: usize,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Skip the Jacobi identity check; the report records that it was skipped.
    #[arg(long)]
    skip_jacobi: bool,

    /// Trace the leaf through this point, given as comma-separated coordinates.
    #[arg(long, value_name = "X0", value_delimiter = ',', allow_hyphen_values = true)]
    trace: Option<Vec<f64>>,

    #[arg(long, default_value_t = 1000, requires = "trace")]
    steps: usize,

    #[arg(long, default_value_t = 1e-3, requires = "trace")]
    dt: f64,

    /// CSV file for the traced points (`step,x1,...,xn`).
    #[arg(long, value_name = "CSV", requires = "trace")]
    trace_out: Option<PathBuf>,
}

struct Outcome {
    path: PathBuf,
    result: Result<AnalysisReport, String>,
}

fn run_one(path: &Path, opts: &Options, trace_out: Option<&Path>) -> Result<AnalysisReport, String> {
    let src = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let doc = parse_input(&src).map_err(|e| e.to_string())?;
    let report = analyze(&doc, opts).map_err(|e| e.to_string())?;
    if let (Some(out), Some(req)) = (trace_out, &opts.trace) {
        let pi = doc.bivector().map_err(|e| e.to_string())?;
        let pi = PoissonStructure::unchecked(pi).map_err(|e| e.to_string())?;
        let tr = trace_leaf(&pi, &req.x0, &[], req.steps, req.dt).map_err(|e| e.to_string())?;
        write_trace_csv(out, &tr.points).map_err(|e| format!("cannot write {}: {e}", out.display()))?;
    }
    Ok(report)
}

fn write_trace_csv(path: &Path, points: &[Vec<f64>]) -> Result<(), Box<dyn std::error::Error>> {
    let mut w = csv::Writer::from_path(path)?;
    let n = points.first().map_or(0, |p| p.len());
    let header: Vec<String> = std::iter::once("step".to_string())
        .chain((1..=n).map(|i| format!("x{i}")))
        .collect();
    w.write_record(&header)?;
    for (step, p) in points.iter().enumerate() {
        let row: Vec<String> = std::iter::once(step.to_string())
            .chain(p.iter().map(|v| format!("{v:e}")))
            .collect();
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

fn json_target(cli: &Cli, input: &Path) -> Option<PathBuf> {
    let out = cli.json.as_ref()?;
    if cli.inputs.len() == 1 {
        return Some(out.clone());
    }
    let stem = input.file_stem().map_or_else(|| "report".into(), |s| s.to_string_lossy().into_owned());
    Some(out.join(format!("{stem}.json")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options {
        max_degree: cli.max_degree,
        search: WitnessSearch {
            samples: cli.samples,
            seed: cli.seed,
        },
        skip_jacobi: cli.skip_jacobi,
        trace: cli.trace.as_ref().map(|x0| TraceRequest {
            x0: x0.clone(),
            steps: cli.steps,
            dt: cli.dt,
        }),
    };
    if cli.inputs.len() > 1 {
        if cli.trace_out.is_some() {
            eprintln!("error: --trace-out takes a single input");
            return ExitCode::from(1);
        }
        if let Some(dir) = &cli.json {
            if let Err(e) = fs::create_dir_all(dir) {
                eprintln!("error: cannot create {}: {e}", dir.display());
                return ExitCode::from(1);
            }
        }
    }

    let outcomes: Vec<Outcome> = cli
        .inputs
        .par_iter()
        .map(|path| Outcome {
            path: path.clone(),
            result: run_one(path, &opts, cli.trace_out.as_deref()),
        })
        .collect();

    let mut code = 0u8;
    let batch = outcomes.len() > 1;
    for o in &outcomes {
        if batch {
            println!("== {}", o.path.display());
        }
        match &o.result {
            Ok(report) => {
                print!("{}", report.to_text());
                if let Some(target) = json_target(&cli, &o.path) {
                    if let Err(e) = fs::write(&target, report.to_json() + "\n") {
                        eprintln!("error: cannot write {}: {e}", target.display());
                        code = 1;
                        continue;
                    }
                }
                if report.exit_code() == 2 && code == 0 {
                    code = 2;
                }
            }
            Err(e) => {
                eprintln!("error: {}: {e}", o.path.display());
                code = 1;
            }
        }
    }
    ExitCode::from(code)
}
