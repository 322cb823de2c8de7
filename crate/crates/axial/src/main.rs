use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use axial::commands::{self, resolve_field, universal_params, Outcome, ParamStrings, Suite};
use axial::with_field;
use axial::FieldSpec;
use axial_core::universal::build_universal;
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Builds the universal 3-generated axial algebra of Jordan type one half and
/// checks its structure in exact arithmetic. Reports are JSON on stdout.
#[derive(Parser, Debug)]
#[command(name = "axial", version)]
struct Cli {
    /// Also print a one-line summary on stderr.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Params {
    /// Exact value such as `2/3`, or `symbolic`.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    psi: Option<String>,
    /// `q`, `fp:P` for an odd prime P, or `symbolic`.
    #[arg(long, default_value = "q")]
    field: String,
}

impl Params {
    fn strings(&self) -> ParamStrings {
        ParamStrings {
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
            gamma: self.gamma.clone(),
            psi: self.psi.clone(),
        }
    }

    fn field(&self, symbolic_ok: bool) -> anyhow::Result<FieldSpec> {
        resolve_field(self.field.parse()?, &self.strings(), symbolic_ok)
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SuiteArg {
    Fusion,
    Jordan,
    Frobenius,
    Seress,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Fusion => Suite::Fusion,
            SuiteArg::Jordan => Suite::Jordan,
            SuiteArg::Frobenius => Suite::Frobenius,
            SuiteArg::Seress => Suite::Seress,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the multiplication table at the given parameters.
    Build {
        #[command(flatten)]
        params: Params,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-derive the table from the axis, pair and triple products.
    Derive {
        /// `1/2` or `symbolic`.
        #[arg(long, default_value = "1/2")]
        eta: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite, symbolically unless parameters or a file are given.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[arg(long)]
        symbolic: bool,
        /// Algebra JSON written by `build` or `quotient`.
        #[arg(long, conflicts_with = "symbolic")]
        algebra: Option<PathBuf>,
        /// Evaluate the Jordan identity at this many random points instead.
        #[arg(long)]
        sampled: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        params: Params,
    },
    /// Gram matrix of the Frobenius form and its determinant.
    Gram {
        #[command(flatten)]
        params: Params,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Radical of the Frobenius form, located among the degenerate families.
    Radical {
        #[command(flatten)]
        params: Params,
    },
    /// Identity element, or the annihilating element when there is none.
    Identity {
        #[command(flatten)]
        params: Params,
    },
    /// Simplicity via the projection graph and the radical.
    Simple {
        #[command(flatten)]
        params: Params,
    },
    /// Explicit isomorphism onto a matrix Jordan algebra.
    Iso {
        #[command(flatten)]
        params: Params,
    },
    /// Quotient by the radical.
    Quotient {
        #[command(flatten)]
        params: Params,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The eta relations for general Jordan type.
    Relations,
}

fn run(command: &Command) -> anyhow::Result<Outcome> {
    Ok(match command {
        Command::Build { params, .. } => with_field!(params.field(true)?, zero => {
            commands::build(&universal_params(&zero, &params.strings())?)
        }),
        Command::Derive { eta, .. } => commands::derive(eta)?,
        Command::Verify {
            suite,
            symbolic,
            algebra,
            sampled,
            seed,
            params,
        } => {
            let suite = Suite::from(*suite);
            let strings = params.strings();
            if sampled.is_some() && suite != Suite::Jordan {
                bail!("--sampled applies to the jordan suite only");
            }
            if *symbolic && (!strings.is_symbolic() || sampled.is_some()) {
                bail!("--symbolic excludes concrete parameters and --sampled");
            }
            let sampled = sampled.map(|n| (n, *seed));
            if let Some(path) = algebra {
                if !strings.is_symbolic() {
                    bail!("--algebra excludes parameters");
                }
                let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                commands::verify_file(&text, suite, sampled)?
            } else if let (Some((n, seed)), true) = (sampled, strings.is_symbolic()) {
                commands::verify_jordan_universal(n, seed)
            } else {
                with_field!(params.field(true)?, zero => {
                    let p = universal_params(&zero, &strings)?;
                    match build_universal(&p) {
                        Ok(alg) => commands::verify(&alg, Some(&p), suite, sampled),
                        Err(e) => bail!("cannot build the algebra: {e}"),
                    }
                })
            }
        }
        Command::Gram { params, .. } => with_field!(params.field(true)?, zero => {
            commands::gram(&universal_params(&zero, &params.strings())?)
        }),
        Command::Radical { params } => with_field!(params.field(false)?, zero => {
            commands::radical_cmd(&params.strings().parse(&zero)?)
        }),
        Command::Identity { params } => with_field!(params.field(false)?, zero => {
            commands::identity(&params.strings().parse(&zero)?)
        }),
        Command::Simple { params } => with_field!(params.field(false)?, zero => {
            commands::simple(&params.strings().parse(&zero)?)
        }),
        Command::Iso { params } => with_field!(params.field(false)?, zero => {
            commands::iso(&params.strings().parse(&zero)?)
        }),
        Command::Quotient { params, .. } => with_field!(params.field(false)?, zero => {
            commands::quotient(&params.strings().parse(&zero)?)
        }),
        Command::Relations => commands::relations(),
    })
}

fn out_path(command: &Command) -> Option<&PathBuf> {
    match command {
        Command::Build { out, .. } | Command::Derive { out, .. } | Command::Gram { out, .. } => out.as_ref(),
        Command::Quotient { out, .. } => out.as_ref(),
        _ => None,
    }
}

fn init_threads() -> anyhow::Result<()> {
    let Ok(v) = std::env::var("AXIAL_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().with_context(|| format!("AXIAL_THREADS={v:?} is not a count"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let started = Instant::now();
    let outcome = init_threads().and_then(|_| run(&cli.command));
    let outcome = match outcome {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    if let (Some(path), Some(artifact)) = (out_path(&cli.command), &outcome.artifact) {
        let text = serde_json::to_string_pretty(artifact).expect("JSON values serialize");
        if let Err(e) = std::fs::write(path, text + "\n") {
            eprintln!("error: writing {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    let args: Vec<String> = std::env::args().skip(1).collect();
    let report = outcome.report(&args, started);
    // a closed pipe on stdout is not an error worth reporting
    let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(&report).expect("JSON values serialize"));
    if cli.verbose {
        eprintln!(
            "{} in {} ms",
            if outcome.passed { "pass" } else { "FAIL" },
            report["elapsed_ms"]
        );
    }
    ExitCode::from(if outcome.passed { 0 } else { 1 })
}
