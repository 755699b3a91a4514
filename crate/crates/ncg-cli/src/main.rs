use clap::{Parser, Subcommand, ValueEnum};
use ncg::models::{run_chern, split_param, AnyModel, BUNDLE_NAMES, DISK_LOCALIZED_PRES, DISK_PRES, M2_PRES, SU2_PRES};
use ncg::ncalg::{caret, check_presentation};
use ncg::report::Report;
use ncg::{GaussRat, Presentation, Scalar};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "ncg", version, about = "Exact checks for algebraic spectral triples and Chern connections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum QMode {
    /// Keep s = q^{1/2} as an indeterminate.
    Symbolic,
    /// Substitute the rational value given by --s0.
    Rational,
}

#[derive(clap::Args)]
struct QArgs {
    /// Work with symbolic q or specialize it to a rational number.
    #[arg(long = "q", value_enum, default_value = "symbolic")]
    q: QMode,
    /// Value of s = q^{1/2} in rational mode, e.g. 2 or 3/2.
    #[arg(long, default_value = "2")]
    s0: String,
}

#[derive(clap::Args)]
struct OutArgs {
    /// Emit the report as JSON.
    #[arg(long)]
    json: bool,
    /// Write the report to a file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check for a model.
    Check {
        model: String,
        #[command(flatten)]
        q: QArgs,
        /// Bound on the word length of generated test elements.
        #[arg(long, default_value_t = 4)]
        cutoff: u32,
        /// Model parameter as name=expression, e.g. beta=q.
        #[arg(long = "param", value_name = "K=V")]
        params: Vec<String>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Print the normal form of an expression in a model's algebra.
    Eval {
        model: String,
        expr: String,
        #[command(flatten)]
        q: QArgs,
    },
    /// Compute a Chern connection and run its checks.
    Chern {
        bundle: String,
        #[command(flatten)]
        q: QArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Check a presentation (built-in model name or .pres file) for local confluence.
    Confluence {
        target: String,
        #[command(flatten)]
        q: QArgs,
        /// Longest overlap word to examine.
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// List built-in models and bundles.
    List,
}

enum Failure {
    Usage(String),
    Checks,
}

impl From<ncg::Error> for Failure {
    fn from(e: ncg::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn parse_s0(q: &QArgs) -> Result<Option<Scalar>, Failure> {
    if let QMode::Symbolic = q.q {
        return Ok(None);
    }
    let bad = || Failure::Usage(format!("--s0 must be a nonzero rational, got `{}`", q.s0));
    let (n, d) = match q.s0.split_once('/') {
        Some((n, d)) => (n.trim().parse::<i64>().map_err(|_| bad())?, d.trim().parse::<i64>().map_err(|_| bad())?),
        None => (q.s0.trim().parse::<i64>().map_err(|_| bad())?, 1),
    };
    if n == 0 || d == 0 {
        return Err(bad());
    }
    Ok(Some(Scalar::constant(GaussRat::from_frac(n, d))))
}

fn emit(report: &Report, out: &OutArgs) -> Result<(), Failure> {
    let text = if out.json {
        serde_json::to_string_pretty(report).map_err(|e| Failure::Usage(e.to_string()))? + "\n"
    } else {
        report.render_text()
    };
    match &out.output {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {}", path.display(), e))),
        None => {
            print!("{}", text);
            Ok(())
        }
    }
}

fn verdict(report: &Report) -> Result<(), Failure> {
    if report.all_ok() {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn presentation_text(target: &str) -> Result<String, Failure> {
    Ok(match target {
        "m2" => M2_PRES.to_string(),
        "qsphere" => SU2_PRES.to_string(),
        "qdisk" => DISK_PRES.to_string(),
        "qdisk-localized" => DISK_LOCALIZED_PRES.to_string(),
        path => std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {}", path, e)))?,
    })
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Check {
            model,
            q,
            cutoff,
            params,
            out,
        } => {
            let s = parse_s0(&q)?;
            let params = params
                .iter()
                .map(|p| split_param(p).ok_or_else(|| Failure::Usage(format!("expected name=value, got `{}`", p))))
                .collect::<Result<Vec<_>, _>>()?;
            if cutoff == 0 {
                return Err(Failure::Usage("--cutoff must be at least 1".into()));
            }
            let m = AnyModel::build(&model, s, &params)?;
            let report = m.check(cutoff);
            emit(&report, &out)?;
            verdict(&report)
        }
        Command::Eval { model, expr, q } => {
            let m = AnyModel::build(&model, parse_s0(&q)?, &[])?;
            match m.eval(&expr) {
                Ok(v) => {
                    println!("{}", v);
                    Ok(())
                }
                Err(ncg::Error::Alg(e)) if e.position().is_some() => {
                    let pos = e.position().unwrap_or(0);
                    Err(Failure::Usage(format!("{}\n{}", e, caret(&expr, pos))))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Chern { bundle, q, out } => {
            let run = run_chern(&bundle, parse_s0(&q)?)?;
            let mut report = run.report;
            report.metadata.extend(run.lines);
            emit(&report, &out)?;
            verdict(&report)
        }
        Command::Confluence { target, q, max_len, out } => {
            let text = presentation_text(&target)?;
            let p = match parse_s0(&q)? {
                None => Presentation::parse(&text),
                Some(s) => Presentation::parse_with(&text, s),
            }
            .map_err(|e| Failure::Usage(e.to_string()))?;
            let mut report = check_presentation(&p, max_len);
            report.model = target;
            emit(&report, &out)?;
            verdict(&report)
        }
        Command::List => {
            println!("models:");
            println!("  m2               2x2 complex matrices, inner calculus, KO-dimension 2");
            println!("  qsphere          standard q-sphere in quantum SU(2), Haar state (params: alpha, beta)");
            println!("  qdisk            quantum disk with w-weighted spinors (params: alpha, beta)");
            println!("  qdisk-localized  quantum disk with w^-1 adjoined, Hopf action and metric");
            println!("bundles:");
            for b in BUNDLE_NAMES {
                println!("  {}", b);
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}
