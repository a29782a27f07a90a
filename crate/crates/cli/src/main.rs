use std::process::ExitCode;

use beauville_core::dsl::{self, Context, EvalParams, Report, Status, Suite};
use beauville_core::exact::{parse_rational, Rational};
use beauville_core::jacobian::{self, Locus};
use beauville_core::Error;
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "beauville-lab", version, about = "Exact verification of Fourier-conjugate sl2 identities")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Fill in elapsed_ms (reports are then no longer byte-stable).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a verification suite.
    Verify {
        #[command(subcommand)]
        suite: SuiteCmd,
    },
    /// Evaluate an expression.
    Eval {
        #[arg(long, value_enum)]
        context: Ctx,
        #[arg(long, default_value_t = 3)]
        genus: u32,
        /// Mukai model dimension (llv).
        #[arg(long, default_value_t = 6)]
        hdim: usize,
        #[arg(long, default_value = "1", value_parser = rational, allow_hyphen_values = true)]
        t: Rational,
        /// Locus for taut expressions; inferred when omitted.
        #[arg(long, value_enum)]
        locus: Option<LocusArg>,
        /// Push taut results to the base.
        #[arg(long)]
        push: bool,
        expr: String,
    },
}

#[derive(Subcommand)]
enum SuiteCmd {
    /// Verbitsky relations and the sigma / Lambda triples.
    Llv {
        #[arg(long, default_value_t = 6)]
        hdim: usize,
        #[arg(long, default_value = "1", value_parser = rational, allow_hyphen_values = true)]
        t: Rational,
        #[arg(long, default_value_t = 0)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The Fourier-conjugate triple for one genus; all sign pairs unless fixed.
    Triple {
        #[arg(long)]
        genus: u32,
        #[arg(long, allow_hyphen_values = true, value_parser = sign)]
        c0: Option<i64>,
        #[arg(long, allow_hyphen_values = true, value_parser = sign)]
        c1: Option<i64>,
    },
    /// Projectors, motivic sl2, Fourier stability and multiplicativity.
    K3Motive,
    /// Theta divisor obstruction for one genus.
    ThetaObstruction {
        #[arg(long)]
        genus: u32,
        /// Print the axiom ledger before the reports.
        #[arg(long)]
        ledger: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Ctx {
    Llv,
    K3,
    Taut,
}

#[derive(Clone, Copy, ValueEnum)]
enum LocusArg {
    Total,
    Boundary,
    Base,
    BaseBoundary,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn sign(s: &str) -> Result<i64, String> {
    match s {
        "1" | "+1" => Ok(1),
        "-1" => Ok(-1),
        _ => Err(format!("expected 1 or -1, got {s}")),
    }
}

fn usage(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(2)
}

fn emit(reports: &[Report], format: Format) -> ExitCode {
    match format {
        Format::Json => print!("{}", dsl::render_json(reports)),
        Format::Text => print!("{}", dsl::render_text(reports)),
    }
    if reports.iter().all(|r| r.status == Status::Verified) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

const LEDGER: [&str; 11] = [
    jacobian::DELTA_CUBE,
    jacobian::DELTA_SQUARE_INT,
    jacobian::PSI_TO_R,
    jacobian::PSI_SQUARE_NONZERO,
    jacobian::PSI_NONZERO_M22,
    jacobian::H3_M3,
    jacobian::H2_SPAN,
    jacobian::BOUNDARY_IRREDUCIBLE,
    jacobian::SELF_INTERSECTION,
    jacobian::XI_RELATION,
    jacobian::ALPHA_GIVEN,
];

fn verify(suite: SuiteCmd, format: Format, timings: bool) -> ExitCode {
    let selection = match suite {
        SuiteCmd::Llv { hdim, t, trials, seed } => Suite::Llv { hdim, t, trials, seed },
        SuiteCmd::Triple { genus, c0, c1 } => {
            let signs = Suite::ALL_SIGNS
                .into_iter()
                .filter(|(a, b)| c0.is_none_or(|c| c == *a) && c1.is_none_or(|c| c == *b))
                .collect();
            Suite::Triple { genus, signs }
        }
        SuiteCmd::K3Motive => Suite::K3Motive,
        SuiteCmd::ThetaObstruction { genus, ledger } => {
            if ledger {
                match format {
                    Format::Text => LEDGER.iter().for_each(|a| println!("axiom: {a}")),
                    Format::Json => eprintln!("{}", serde_json::json!({ "ledger": LEDGER })),
                }
            }
            Suite::ThetaObstruction { genus }
        }
    };
    match dsl::run_suite(&[selection], timings) {
        Ok(r) => emit(&r, format),
        Err(e) => usage(&e),
    }
}

fn eval_cmd(src: &str, ctx: Ctx, params: EvalParams, format: Format) -> ExitCode {
    let ast = match dsl::parse(src) {
        Ok(a) => a,
        Err(e) => return usage(&e),
    };
    let (context, name) = match ctx {
        Ctx::Llv => (Context::Llv, "llv"),
        Ctx::K3 => (Context::K3, "k3"),
        Ctx::Taut => (Context::Taut, "taut"),
    };
    match dsl::eval(&ast, context, &params) {
        Ok(v) => {
            match format {
                Format::Text => println!("{ast} = {v}"),
                Format::Json => {
                    let doc = serde_json::json!({
                        "schema_version": dsl::SCHEMA_VERSION,
                        "context": name,
                        "expr": ast.to_string(),
                        "value": v.to_string(),
                        "zero": v.is_zero(),
                    });
                    println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
                }
            }
            ExitCode::SUCCESS
        }
        Err(e @ (Error::Unsupported(_) | Error::OutsideModel(_))) => {
            eprintln!("unsupported: {e}");
            ExitCode::from(1)
        }
        Err(e) => usage(&e),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Verify { suite } => verify(suite, cli.format, cli.timings),
        Cmd::Eval { context, genus, hdim, t, locus, push, expr } => {
            let locus = locus.map(|l| match l {
                LocusArg::Total => Locus::Total,
                LocusArg::Boundary => Locus::Boundary,
                LocusArg::Base => Locus::Base,
                LocusArg::BaseBoundary => Locus::BaseBoundary,
            });
            eval_cmd(&expr, context, EvalParams { genus, hdim, t, locus, push }, cli.format)
        }
    }
}
