use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use quatfourier::cli::{self, VerifyOptions, EXIT_OK, EXIT_USAGE, EXIT_VERIFY_FAILED};
use quatfourier::cli::qsig::write_atomic;
use quatfourier::group::FiniteAbelianGroup;
use quatfourier::qft::{Mode, Sidedness};
use quatfourier::quat::AxisPair;
use quatfourier::{Error, Result};

#[derive(Parser)]
#[command(name = "quatfourier", version, about = "Quaternion Fourier transforms on finite abelian groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct TransformArgs {
    input: PathBuf,
    output: PathBuf,
    /// rqft, sqft or lqft
    #[arg(long, default_value = "rqft")]
    kind: Sidedness,
    /// fast or direct
    #[arg(long, default_value = "fast")]
    mode: Mode,
    /// Eight comma-separated reals: the components (w, x, y, z) of mu1 then mu2
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    axes: Option<Vec<f64>>,
}

#[derive(Subcommand)]
enum Command {
    /// Forward transform of a primal QSIG file
    Transform(TransformArgs),
    /// Inverse transform of a dual QSIG file
    Inverse(TransformArgs),
    /// Convolve with a kernel of a built-in family
    Smooth {
        input: PathBuf,
        output: PathBuf,
        /// dirichlet, fejer or poisson_geometric
        #[arg(long)]
        family: String,
        #[arg(long)]
        level: u32,
    },
    /// Randomized check of every identity
    Verify {
        /// Axis group such as 8 or 3x4
        #[arg(long)]
        group: FiniteAbelianGroup,
        #[arg(long, default_value_t = 25)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Replace every per-check tolerance
        #[arg(long)]
        tol: Option<f64>,
        /// Also write the report as JSON to this path
        #[arg(long)]
        report: Option<PathBuf>,
        /// Print the report as JSON instead of text
        #[arg(long)]
        json: bool,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Square binary PPM to primal QSIG
    Img2q { ppm: PathBuf, qsig: PathBuf },
    /// Primal QSIG to PPM
    Q2img { qsig: PathBuf, ppm: PathBuf },
    /// Log-magnitude image of a dual QSIG file, zero frequency centered
    Spectrum { qsig: PathBuf, ppm: PathBuf },
    /// Print the bins of a QSIG file as CSV
    Dump { qsig: PathBuf },
    /// Time fast and direct transforms
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "8,16,32,48,64,128,256")]
        sizes: Vec<usize>,
        #[arg(long, default_value = "rqft")]
        kind: Sidedness,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
    },
}

fn axes_from(arg: Option<Vec<f64>>) -> Result<AxisPair> {
    match arg {
        None => Ok(AxisPair::default()),
        Some(v) => {
            let c: [f64; 8] = v
                .try_into()
                .map_err(|v: Vec<f64>| Error::Usage(format!("--axes takes 8 values, got {}", v.len())))?;
            AxisPair::from_components(c)
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Transform(a) => {
            cli::cmd_transform(&a.input, &a.output, a.kind, a.mode, axes_from(a.axes)?)?;
        }
        Command::Inverse(a) => {
            cli::cmd_inverse(&a.input, &a.output, a.kind, a.mode, axes_from(a.axes)?)?;
        }
        Command::Smooth {
            input,
            output,
            family,
            level,
        } => cli::cmd_smooth(&input, &output, &family, level, &mut io::stderr())?,
        Command::Verify {
            group,
            trials,
            seed,
            tol,
            report,
            json,
            inject_fault,
        } => {
            let opts = VerifyOptions {
                group,
                trials,
                seed,
                tol,
                inject_fault,
            };
            let r = cli::cmd_verify(&opts)?;
            if let Some(path) = report {
                write_atomic(&path, r.to_json().as_bytes())?;
            }
            let mut out = io::stdout().lock();
            if json {
                writeln!(out, "{}", r.to_json())?;
            } else {
                writeln!(out, "{r}")?;
            }
            if !r.passed {
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
        Command::Img2q { ppm, qsig } => cli::cmd_img2q(&ppm, &qsig)?,
        Command::Q2img { qsig, ppm } => cli::cmd_q2img(&qsig, &ppm)?,
        Command::Spectrum { qsig, ppm } => cli::cmd_spectrum(&qsig, &ppm)?,
        Command::Dump { qsig } => cli::cmd_dump(&qsig, &mut io::stdout().lock())?,
        Command::Bench { sizes, kind, repeats } => {
            let r = cli::cmd_bench(&sizes, kind, repeats)?;
            println!("{r}");
            if !r.fast_wins() {
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
    }
    Ok(EXIT_OK)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("quatfourier: {e}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
