use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use latticejost::design::{self, alternating_potential};
use latticejost::oracle::compare_with_roots;
use latticejost::spectrum::ledger_for;
use latticejost::{analyze, Complex64, Error, NumericConfig, Potential, Precision};

const EXIT_INPUT: u8 = 2;
const EXIT_VERDICT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "latticejost",
    version,
    about = "Bound states and resonances of compactly supported lattice potentials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full spectral report for one potential (JSON).
    Analyze(AnalyzeArgs),
    /// Bound-state counts along a potential family (CSV).
    Sweep(SweepArgs),
    /// Constructions and small inverse problems (JSON).
    Design {
        #[command(subcommand)]
        command: DesignCommand,
    },
    /// Compare root energies with eigenvalues of a truncated matrix.
    Oracle(OracleArgs),
}

#[derive(Args, Clone)]
struct Tolerances {
    #[arg(long)]
    tol_real: Option<f64>,
    #[arg(long)]
    tol_cluster: Option<f64>,
    #[arg(long)]
    tol_edge: Option<f64>,
    #[arg(long, env = "LATTICEJOST_PRECISION", default_value = "std")]
    precision: Precision,
}

impl Tolerances {
    fn config(&self) -> latticejost::Result<NumericConfig> {
        let base = NumericConfig::for_precision(self.precision);
        NumericConfig::new(
            self.tol_real.unwrap_or(base.tau_real),
            self.tol_cluster.unwrap_or(base.tau_cluster),
            self.tol_edge.unwrap_or(base.tau_edge),
            self.precision,
        )
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Potential file (JSON array or one value per line), or the text itself.
    potential: String,
    #[command(flatten)]
    tol: Tolerances,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Suppress the verdict summary on standard error.
    #[arg(long)]
    quiet: bool,
    /// Leave the timing field out, making reports byte-identical across runs.
    #[arg(long)]
    no_timing: bool,
    /// Also write the zeros as CSV (z-plane and energy).
    #[arg(long)]
    roots_csv: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Alternating,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum, default_value = "alternating")]
    family: Family,
    #[arg(long, default_value_t = 2.0, allow_hyphen_values = true)]
    amplitude: f64,
    #[arg(long, default_value_t = 1)]
    bmin: usize,
    #[arg(long)]
    bmax: usize,
    /// Rows whose bound-state zeros come closer than this to ±1 are redone
    /// in extended precision.
    #[arg(long, default_value_t = 1e-3)]
    edge_floor: f64,
    #[arg(long, env = "LATTICEJOST_PRECISION", default_value = "std")]
    precision: Precision,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum DesignCommand {
    /// Two-site potential from three zeros.
    B2 {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        roots: Vec<String>,
        /// Accepted middle-line residual; the default suits roots given to
        /// about seven digits.
        #[arg(long, default_value_t = 1e-6)]
        max_residual: f64,
    },
    /// Three-site potential and fifth zero from four zeros.
    B3 {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        roots: Vec<String>,
        /// Initial V1,V2,V3,alpha5; derived by elimination when omitted.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        guess: Option<Vec<f64>>,
    },
    /// Scale a potential until it has no bound states.
    Shrink {
        #[arg(long)]
        potential: String,
    },
    /// Constant-magnitude potential with b bound states.
    Amplify {
        /// Signs such as `+,-,+`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        signs: Vec<String>,
    },
    /// Extend the support with a small constant tail.
    Extend {
        #[arg(long)]
        potential: String,
        #[arg(long)]
        b: usize,
        /// Tail value; chosen automatically when omitted.
        #[arg(long, allow_hyphen_values = true)]
        epsilon: Option<f64>,
    },
}

#[derive(Args)]
struct OracleArgs {
    potential: String,
    #[arg(long, default_value_t = 800)]
    size: usize,
    #[arg(long, default_value_t = 1e-6)]
    margin: f64,
    /// Bound states with |alpha| at or above this are left out.
    #[arg(long, default_value_t = 0.95)]
    alpha_max: f64,
    #[command(flatten)]
    tol: Tolerances,
}

fn load_potential(arg: &str) -> latticejost::Result<Potential> {
    let path = Path::new(arg);
    if path.is_file() {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{arg}: {e}")))?;
        Potential::parse(&text)
    } else {
        Potential::parse(arg)
    }
}

fn parse_complex(s: &str) -> latticejost::Result<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("cannot read '{s}' as a complex number"));
    let Some(body) = t.strip_suffix(['i', 'j']) else {
        return t
            .parse::<f64>()
            .map(|x| Complex64::new(x, 0.0))
            .map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        other => other,
    };
    Ok(Complex64::new(
        re.parse().map_err(|_| bad())?,
        im.parse().map_err(|_| bad())?,
    ))
}

fn parse_sign(s: &str) -> latticejost::Result<f64> {
    match s.trim() {
        "+" | "+1" | "1" => Ok(1.0),
        "-" | "-1" => Ok(-1.0),
        other => Err(Error::Parse(format!("sign must be + or -, got '{other}'"))),
    }
}

fn write_output(out: Option<&Path>, text: &str) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

enum Failure {
    Input(String),
    Verdict(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn run_analyze(args: AnalyzeArgs) -> Result<(), Failure> {
    let cfg = args.tol.config()?;
    let v = load_potential(&args.potential)?;
    let mut report = analyze(&v, &cfg)?;
    if args.no_timing {
        report = report.without_timing();
    }
    write_output(args.out.as_deref(), &json(&report))?;
    if let Some(path) = &args.roots_csv {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record([
            "re",
            "im",
            "multiplicity",
            "class",
            "lambda_re",
            "lambda_im",
        ])?;
        for z in &report.zeros {
            let lambda = latticejost::z_to_lambda(Complex64::new(z.re, z.im))?;
            w.write_record([
                z.re.to_string(),
                z.im.to_string(),
                z.multiplicity.to_string(),
                serde_json::to_value(z.class)
                    .expect("serializable")
                    .as_str()
                    .unwrap_or("")
                    .to_string(),
                lambda.re.to_string(),
                lambda.im.to_string(),
            ])?;
        }
        w.flush()?;
    }
    if !args.quiet {
        eprintln!(
            "b={} N={} verdicts {}",
            report.b,
            report.counts.n,
            if report.verdicts.all_hold() {
                "ok"
            } else {
                "FAILED"
            }
        );
    }
    if report.verdicts.all_hold() {
        Ok(())
    } else {
        Err(Failure::Verdict(report.verdicts.diagnostics.join("; ")))
    }
}

struct SweepRow {
    b: usize,
    n: Option<usize>,
    min_edge: Option<f64>,
    precision: Precision,
    ms: f64,
    error: Option<String>,
}

fn sweep_row(b: usize, amplitude: f64, precision: Precision, floor: f64) -> SweepRow {
    let attempt = |precision: Precision| {
        let start = Instant::now();
        let cfg = NumericConfig::for_precision(precision);
        let result = alternating_potential(b, amplitude).and_then(|v| ledger_for(&v, &cfg));
        let ms = start.elapsed().as_secs_f64() * 1e3;
        match result {
            Ok((_, ledger)) => SweepRow {
                b,
                n: Some(ledger.n),
                min_edge: ledger.min_edge_distance(),
                precision,
                ms,
                error: None,
            },
            Err(e) => SweepRow {
                b,
                n: None,
                min_edge: None,
                precision,
                ms,
                error: Some(e.to_string()),
            },
        }
    };
    let row = attempt(precision);
    let too_close = row.min_edge.is_some_and(|d| d < floor);
    if precision == Precision::Standard && (too_close || row.error.is_some() || row.n != Some(b)) {
        attempt(Precision::Extended)
    } else {
        row
    }
}

fn run_sweep(args: SweepArgs) -> Result<(), Failure> {
    if args.bmax < args.bmin.max(1) {
        return Err(Failure::Input("bmax must be at least max(1, bmin)".into()));
    }
    let Family::Alternating = args.family;
    let rows: Vec<SweepRow> = (args.bmin.max(1)..=args.bmax)
        .into_par_iter()
        .map(|b| sweep_row(b, args.amplitude, args.precision, args.edge_floor))
        .collect();
    let sink: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(std::fs::File::create(path)?),
        None => Box::new(std::io::stdout()),
    };
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(["b", "N", "min_edge_distance", "precision", "ms"])?;
    let mut bad = Vec::new();
    for row in &rows {
        w.write_record([
            row.b.to_string(),
            row.n.map_or_else(|| "error".to_string(), |n| n.to_string()),
            row.min_edge.map_or_else(String::new, |d| format!("{d:e}")),
            row.precision.to_string(),
            format!("{:.3}", row.ms),
        ])?;
        if let Some(e) = &row.error {
            bad.push(format!("b={}: {e}", row.b));
        } else if row.n != Some(row.b) {
            bad.push(format!("b={}: N={}", row.b, row.n.unwrap_or(0)));
        }
    }
    w.flush()?;
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verdict(bad.join("; ")))
    }
}

#[derive(Serialize)]
struct B2Record {
    #[serde(flatten)]
    result: design::InverseB2Result,
    consistency_relation: f64,
}

#[derive(Serialize)]
struct ShrinkRecord {
    t: f64,
    potential: Potential,
    n: usize,
    small_coefficient_certificate: Option<bool>,
}

#[derive(Serialize)]
struct AmplifyRecord {
    amplitude: f64,
    potential: Potential,
    rouche_margin: f64,
    n: usize,
}

#[derive(Serialize)]
struct ExtendRecord {
    epsilon: f64,
    potential: Potential,
    n: usize,
    f0_at_plus_one: f64,
    f0_at_minus_one: f64,
}

fn run_design(command: DesignCommand) -> Result<(), Failure> {
    let cfg = NumericConfig::standard();
    let text = match command {
        DesignCommand::B2 {
            roots,
            max_residual,
        } => {
            let r: Vec<Complex64> = roots
                .iter()
                .map(|s| parse_complex(s))
                .collect::<Result<_, _>>()?;
            let roots: [Complex64; 3] = r
                .try_into()
                .map_err(|_| Failure::Input("need three roots".into()))?;
            json(&B2Record {
                result: design::inverse_b2_within(&roots, max_residual)?,
                consistency_relation: design::consistency_relation(&roots),
            })
        }
        DesignCommand::B3 { roots, guess } => {
            let r: Vec<Complex64> = roots
                .iter()
                .map(|s| parse_complex(s))
                .collect::<Result<_, _>>()?;
            let roots: [Complex64; 4] = r
                .try_into()
                .map_err(|_| Failure::Input("need four roots".into()))?;
            let guess = match guess {
                Some(g) => g
                    .try_into()
                    .map_err(|_| Failure::Input("guess needs four values".into()))?,
                None => *design::inverse_b3_guesses(&roots)?
                    .first()
                    .ok_or_else(|| Failure::Input("no real starting point; pass --guess".into()))?,
            };
            json(&design::inverse_b3(&roots, guess)?)
        }
        DesignCommand::Shrink { potential } => {
            let (t, v) = design::shrink_to_no_bound(&load_potential(&potential)?)?;
            let (p, ledger) = ledger_for(&v, &cfg)?;
            json(&ShrinkRecord {
                t,
                n: ledger.n,
                small_coefficient_certificate: latticejost::laws::check_small_coefficient_criterion(
                    &p, &ledger,
                ),
                potential: v,
            })
        }
        DesignCommand::Amplify { signs } => {
            let signs: Vec<f64> = signs
                .iter()
                .map(|s| parse_sign(s))
                .collect::<Result<_, _>>()?;
            let (amplitude, v) = design::amplify_to_full_bound(&signs)?;
            json(&AmplifyRecord {
                amplitude,
                rouche_margin: latticejost::rouche_margin(&v),
                n: ledger_for(&v, &cfg)?.1.n,
                potential: v,
            })
        }
        DesignCommand::Extend {
            potential,
            b,
            epsilon,
        } => {
            let v = load_potential(&potential)?;
            let (epsilon, ext) = match epsilon {
                Some(e) => (e, design::extend_with_epsilon(&v, b, e)?),
                None => design::choose_epsilon(&v, b, &cfg)?,
            };
            let (p, ledger) = ledger_for(&ext, &cfg)?;
            json(&ExtendRecord {
                epsilon,
                n: ledger.n,
                f0_at_plus_one: p.eval_real(1.0),
                f0_at_minus_one: p.eval_real(-1.0),
                potential: ext,
            })
        }
    };
    write_output(None, &text)?;
    Ok(())
}

fn run_oracle(args: OracleArgs) -> Result<(), Failure> {
    let cfg = args.tol.config()?;
    let v = load_potential(&args.potential)?;
    let c = compare_with_roots(&v, args.size, args.margin, args.alpha_max, &cfg)?;
    let mut out = String::from("alpha\tlambda_root\tlambda_oracle\tdelta\n");
    for r in &c.rows {
        out.push_str(&format!(
            "{}\t{}\t{}\t{:e}\n",
            r.alpha, r.lambda_root, r.lambda_oracle, r.delta
        ));
    }
    out.push_str(&format!(
        "# M={} roots={} oracle={} max_delta={:e}\n",
        c.m, c.root_count, c.oracle_count, c.max_delta
    ));
    write_output(None, &out)?;
    if c.counts_agree() {
        Ok(())
    } else {
        Err(Failure::Verdict(format!(
            "count mismatch: {} bound states from zeros, {} from the truncated matrix",
            c.root_count, c.oracle_count
        )))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze(a) => run_analyze(a),
        Command::Sweep(a) => run_sweep(a),
        Command::Design { command } => run_design(command),
        Command::Oracle(a) => run_oracle(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Verdict(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(EXIT_VERDICT)
        }
    }
}
