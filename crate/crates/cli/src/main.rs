use std::io::{ErrorKind, Write};
use std::process::ExitCode;

use airy_stokes::cyclotomic::check_coprime;
use airy_stokes::stokes::fourier_pair_report;
use airy_stokes::{
    airy_stokes, build_airy_quiver, check_chain, dominance_order, galois_group, lambda_coeffs, oracle,
    is_generic, stokes_directions, theta0, Error,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

mod verify;

fn emit(s: &str) {
    if let Err(e) = std::io::stdout().lock().write_all(s.as_bytes()) {
        if e.kind() == ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error[io]: {e}");
        std::process::exit(1);
    }
}

macro_rules! out_raw {
    ($($t:tt)*) => { emit(&format!($($t)*)) };
}

macro_rules! out {
    () => { emit("\n") };
    ($($t:tt)*) => { emit(&(format!($($t)*) + "\n")) };
}

#[derive(Parser)]
#[command(name = "airy-stokes", version, about = "Exact Stokes matrices for the generalised Airy operators ∂ⁿ − yᵐ")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Pair {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    n: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    m: u32,
}

impl Pair {
    fn get(self) -> (usize, usize) {
        (self.n as usize, self.m as usize)
    }
}

#[derive(Clone, Copy, ValueEnum, Default, PartialEq, Eq)]
enum Format {
    Json,
    Latex,
    #[default]
    Pretty,
}

#[derive(Subcommand)]
enum Command {
    /// Stokes multipliers S_b and S_mb for (n, m)
    Compute {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Also print the product S_1⋯S_2(n+m) (diagnostic only)
        #[arg(long)]
        product: bool,
    },
    /// Run the exact invariant suite and the numeric oracle on all coprime pairs with n + m ≤ bound
    Verify {
        #[arg(long, default_value_t = 8)]
        bound: usize,
        #[arg(long)]
        json: bool,
    },
    /// The λ-coefficients of ∏(X − ζ^{−j})
    Lambda {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Descending dominance chain of n·μ_n
    Order {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
    },
    /// Stokes directions as fractions of 2π
    Directions {
        #[command(flatten)]
        pair: Pair,
    },
    /// Differential Galois group
    Galois {
        #[command(flatten)]
        pair: Pair,
    },
    /// Check the operator reduction chain identities
    Chain {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        json: bool,
    },
    /// Numeric monodromy validation
    Oracle {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Quiver data (Ψ, Φ_k, u_k, v_k)
    Quiver {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        json: bool,
    },
    /// Stokes data of (n, m) and (m, n) side by side
    FourierPair {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

fn kind(e: &Error) -> &'static str {
    match e {
        Error::NotCoprime { .. } => "not-coprime",
        Error::InvariantFailure(_) => "invariant-failure",
        Error::ToleranceNotMet { .. } => "tolerance-not-met",
        Error::OutOfScope(_) => "out-of-scope",
        Error::InvalidInput(_) | Error::Parse(_) => "invalid-input",
        _ => "error",
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String, Error> {
    serde_json::to_string_pretty(v).map_err(|e| Error::InvariantFailure(e.to_string()))
}

/// `Failed` means a check failed after its report was printed.
enum Outcome {
    Done,
    Failed,
}

fn run(cmd: Command) -> Result<Outcome, Error> {
    match cmd {
        Command::Compute { pair, format, product } => {
            let (n, m) = pair.get();
            let data = airy_stokes(n, m)?;
            match format {
                Format::Json => out!("{}", to_json(&data)?),
                Format::Latex => out_raw!("{}", data.to_latex()),
                Format::Pretty => {
                    out!("{data}");
                    if product {
                        out!("S_1⋯S_{} (diagnostic, nothing asserted):\n{}", 2 * data.order(), data.sequence_product()?);
                    }
                }
            }
        }
        Command::Verify { bound, json } => {
            let results = verify::run_grid(bound);
            if json {
                out!("{}", to_json(&results)?);
            } else {
                out_raw!("{}", verify::render_table(&results));
            }
            if results.iter().any(|r| !r.passed()) {
                return Ok(Outcome::Failed);
            }
        }
        Command::Lambda { pair, format } => {
            let (n, m) = pair.get();
            let lambda = lambda_coeffs(n, m)?;
            match format {
                Format::Json => out!("{}", to_json(&lambda)?),
                Format::Latex => {
                    for (i, l) in lambda.iter().enumerate() {
                        out!("\\lambda_{{{}}} = {}", i + 1, l.to_latex());
                    }
                }
                Format::Pretty => {
                    for (i, l) in lambda.iter().enumerate() {
                        out!("λ_{} = {l}", i + 1);
                    }
                }
            }
        }
        Command::Order { n } => {
            let order = dominance_order(n as usize);
            out!("{}", order.chain());
        }
        Command::Directions { pair } => {
            let (n, m) = pair.get();
            let dirs = stokes_directions(n, m)?;
            for d in &dirs {
                out!("{:>3}/{:<4} (ζ^{}, ζ^{})", d.angle.num(), d.angle.den(), d.pair.0, d.pair.1);
            }
            let t0 = theta0(n, m);
            let generic = is_generic(t0, n, m)?;
            out!(
                "{} directions; θ_0 = {}/{} is {}",
                dirs.len(),
                t0.num(),
                t0.den(),
                if generic { "generic" } else { "a Stokes direction" }
            );
        }
        Command::Galois { pair } => {
            let (n, m) = pair.get();
            out!("{}", galois_group(n, m)?);
        }
        Command::Chain { pair, json } => {
            let (n, m) = pair.get();
            let report = check_chain(n, m)?;
            if json {
                out!("{}", to_json(&report)?);
            } else {
                for op in &report.operators {
                    out!("{:<4}= {}", op.name, op.form);
                }
                for c in &report.checks {
                    out_raw!("{} {:<4} {}", c.label, if c.passed { "pass" } else { "FAIL" }, c.statement);
                    if let Some(u) = &c.unit {
                        out_raw!("  (u = {u})");
                    }
                    out!();
                    if let Some(d) = &c.first_difference {
                        out!("      first difference: {d}");
                    }
                }
            }
            if !report.all_passed() {
                return Ok(Outcome::Failed);
            }
        }
        Command::Oracle { pair, tol, json } => {
            let (n, m) = pair.get();
            if !(tol > 0.0) {
                return Err(Error::InvalidInput("tolerance must be positive".into()));
            }
            let report = oracle::validate(n, m, tol)?;
            if json {
                out!("{}", to_json(&report)?);
            } else {
                out!("(n, m) = ({n}, {m}), tol = {tol:e}");
                out!("loop error estimates: {:.2e} (around 0), {:.2e} (around 1)", report.loop0_error, report.loop1_error);
                for c in &report.comparisons {
                    out!("{:<4} residual {:.2e}  {}", if c.passed { "pass" } else { "FAIL" }, c.max_residual, c.label);
                }
                for f in report.failures() {
                    out!("  {f}");
                }
            }
            if !report.passed() {
                return Ok(Outcome::Failed);
            }
        }
        Command::Quiver { pair, json } => {
            let (n, m) = pair.get();
            let q = build_airy_quiver(n, m)?;
            if json {
                out!("{}", to_json(&q)?);
            } else {
                out!("Ψ = Q(ζ_{})^{}, gauge {}", q.order, q.psi_dim, q.gauge);
                for node in &q.nodes {
                    out!("node ζ^{} (Φ of dimension {})", node.exponent, node.phi_dim);
                    out!("  u = {}", node.u);
                    out!("  v =\n{}", node.v);
                }
            }
        }
        Command::FourierPair { pair, format } => {
            let (n, m) = pair.get();
            check_coprime(n, m)?;
            let r = fourier_pair_report(n, m)?;
            match format {
                Format::Json => out!("{}", to_json(&r)?),
                Format::Latex => out_raw!("{}{}", r.left.to_latex(), r.right.to_latex()),
                Format::Pretty => out!("both over {}\n\n{}\n\n{}", r.field, r.left, r.right),
            }
        }
    }
    Ok(Outcome::Done)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error[{}]: {e}", kind(&e));
            ExitCode::from(1)
        }
    }
}
