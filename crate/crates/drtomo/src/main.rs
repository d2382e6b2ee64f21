use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use drtomo::{
    format_assignment, parse_assignment, parse_instance, parse_sat, read_image, write_gray,
    write_image, write_instance, write_layout,
};
use drtomo_core::hardness::{
    board_instance, build_board, embed_assignment, epsilon_warning, extract_assignment,
    lift_instance, OneInThreeInstance,
};
use drtomo_core::oracle::{oracle_count, oracle_solve, SearchBudget};
use drtomo_core::switches::tv_descend;
use drtomo_core::{
    check_unique, degrade, make_exact_instance, perturb_instance, random_phantom, solve_dr,
    verify_solution, BinaryImage, DrError, Instance,
};

const VERIFY_FAILED: u8 = 1;
const INFEASIBLE: u8 = 3;
const UNSUPPORTED: u8 = 4;
const IO: u8 = 5;
const PARSE: u8 = 6;
const DOMAIN: u8 = 7;
const BUDGET: u8 = 8;

/// Double-resolution binary tomography.
///
/// Exit codes: 0 success, 1 verification failed, 2 usage error, 3 infeasible,
/// 4 unsupported by the exact solver, 5 I/O error, 6 parse error,
/// 7 invalid input, 8 search budget exhausted.
#[derive(Parser)]
#[command(name = "drtomo", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reconstruct an image from an exact k = 2 instance.
    Solve {
        instance: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check an image against an instance and report violations.
    Verify { instance: PathBuf, image: PathBuf },
    /// Decide whether an exact k = 2 instance has exactly one solution.
    CheckUnique { instance: PathBuf },
    /// Generate a random binary phantom.
    GenPhantom {
        #[arg(short = 'm', long)]
        width: usize,
        #[arg(short = 'n', long)]
        height: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write the exact instance of the phantom.
        #[arg(long)]
        instance: Option<PathBuf>,
        /// Block size for `--instance`.
        #[arg(short, default_value_t = 2)]
        k: usize,
    },
    /// Downsample an image into k×k block counts (PGM).
    Degrade {
        image: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write the exact instance of the image.
        #[arg(long)]
        instance: Option<PathBuf>,
    },
    /// Turn a fraction of reliable blocks into noisy unreliable ones.
    Perturb {
        instance: PathBuf,
        #[arg(long)]
        eps: u32,
        #[arg(long)]
        fraction: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build the instance encoding a 1-in-3 formula.
    GenSat {
        formula: PathBuf,
        #[arg(long, default_value_t = 1)]
        eps: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write the component layout as JSON.
        #[arg(long)]
        layout: Option<PathBuf>,
    },
    /// Build the image encoding a satisfying assignment.
    Embed {
        formula: PathBuf,
        /// Truth values, e.g. `TTFF`.
        #[arg(long)]
        assign: String,
        #[arg(long, default_value_t = 1)]
        eps: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Read the assignment encoded in a board image.
    Extract { formula: PathBuf, image: PathBuf },
    /// Re-embed a k = 2 instance with a larger block size.
    Lift {
        instance: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exhaustive search for any k and eps.
    Oracle {
        instance: PathBuf,
        /// Print the number of solutions instead of one solution.
        #[arg(long)]
        count: bool,
        /// Stop after this many solutions.
        #[arg(long)]
        limit: Option<u64>,
        /// Stop after this many search nodes.
        #[arg(long)]
        max_nodes: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Lower total variation of a solution by switches; prints the trace.
    TvReduce {
        instance: PathBuf,
        image: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

type Outcome = Result<u8, Failure>;

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(IO, format!("{}: {e}", path.display())))
}

fn write_out(path: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, bytes).map_err(|e| fail(IO, format!("{}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| fail(IO, format!("stdout: {e}"))),
    }
}

fn load_instance(path: &Path) -> Result<Instance, Failure> {
    parse_instance(&read_text(path)?).map_err(|e| fail(PARSE, format!("{}: {e}", path.display())))
}

fn load_image(path: &Path) -> Result<BinaryImage, Failure> {
    let bytes = fs::read(path).map_err(|e| fail(IO, format!("{}: {e}", path.display())))?;
    read_image(&bytes).map_err(|e| fail(PARSE, format!("{}: {e}", path.display())))
}

fn load_formula(path: &Path) -> Result<OneInThreeInstance, Failure> {
    parse_sat(&read_text(path)?).map_err(|e| fail(PARSE, format!("{}: {e}", path.display())))
}

fn dr_failure(e: DrError) -> Failure {
    match e {
        DrError::Unsupported { .. } => fail(
            UNSUPPORTED,
            format!("{e}; use `drtomo oracle` for other block sizes or noise levels"),
        ),
        DrError::Invalid(_) => fail(DOMAIN, e.to_string()),
    }
}

fn domain(e: impl std::fmt::Display) -> Failure {
    fail(DOMAIN, e.to_string())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Solve { instance, output } => {
            let inst = load_instance(&instance)?;
            match solve_dr(&inst).map_err(dr_failure)? {
                Some(img) => write_out(output.as_deref(), &write_image(&img)).map(|_| 0),
                None => {
                    println!("INFEASIBLE");
                    Ok(INFEASIBLE)
                }
            }
        }
        Command::Verify { instance, image } => {
            let inst = load_instance(&instance)?;
            let img = load_image(&image)?;
            let report = verify_solution(&inst, &img).map_err(domain)?;
            print!("{report}");
            Ok(if report.satisfied { 0 } else { VERIFY_FAILED })
        }
        Command::CheckUnique { instance } => {
            let inst = load_instance(&instance)?;
            match check_unique(&inst).map_err(dr_failure)? {
                Some(true) => println!("UNIQUE"),
                Some(false) => println!("NON-UNIQUE"),
                None => {
                    println!("INFEASIBLE");
                    return Ok(INFEASIBLE);
                }
            }
            Ok(0)
        }
        Command::GenPhantom {
            width,
            height,
            density,
            seed,
            output,
            instance,
            k,
        } => {
            if width == 0 || height == 0 {
                return Err(fail(DOMAIN, "image dimensions must be positive"));
            }
            if !(0.0..=1.0).contains(&density) {
                return Err(fail(DOMAIN, "density must lie in [0, 1]"));
            }
            let img = random_phantom(width, height, density, seed);
            if let Some(path) = instance {
                let inst = make_exact_instance(&img, k).map_err(domain)?;
                write_out(Some(&path), write_instance(&inst).as_bytes())?;
            }
            write_out(output.as_deref(), &write_image(&img)).map(|_| 0)
        }
        Command::Degrade {
            image,
            k,
            output,
            instance,
        } => {
            let img = load_image(&image)?;
            let gray = degrade(&img, k).map_err(domain)?;
            if let Some(path) = instance {
                let inst = make_exact_instance(&img, k).map_err(domain)?;
                write_out(Some(&path), write_instance(&inst).as_bytes())?;
            }
            write_out(output.as_deref(), &write_gray(&gray)).map(|_| 0)
        }
        Command::Perturb {
            instance,
            eps,
            fraction,
            seed,
            output,
        } => {
            if !(0.0..=1.0).contains(&fraction) {
                return Err(fail(DOMAIN, "fraction must lie in [0, 1]"));
            }
            let mut inst = load_instance(&instance)?;
            inst.epsilon = eps;
            let out = perturb_instance(&inst, fraction, seed);
            write_out(output.as_deref(), write_instance(&out).as_bytes()).map(|_| 0)
        }
        Command::GenSat {
            formula,
            eps,
            output,
            layout,
        } => {
            let sat = load_formula(&formula)?;
            if let Some(w) = epsilon_warning(eps) {
                eprintln!("warning: {w}");
            }
            let board = build_board(&sat).map_err(domain)?;
            let inst = board_instance(&board, eps).map_err(domain)?;
            if let Some(path) = layout {
                write_out(Some(&path), write_layout(&board).as_bytes())?;
            }
            write_out(output.as_deref(), write_instance(&inst).as_bytes()).map(|_| 0)
        }
        Command::Embed {
            formula,
            assign,
            eps,
            output,
        } => {
            let sat = load_formula(&formula)?;
            let assignment = parse_assignment(&assign)
                .filter(|a| a.len() == sat.vars)
                .ok_or_else(|| {
                    fail(
                        DOMAIN,
                        format!("--assign needs {} letters T or F", sat.vars),
                    )
                })?;
            let board = build_board(&sat).map_err(domain)?;
            let inst = board_instance(&board, eps).map_err(domain)?;
            match embed_assignment(&board, &inst, &assignment).map_err(domain)? {
                Some(img) => write_out(output.as_deref(), &write_image(&img)).map(|_| 0),
                None => {
                    eprintln!("the assignment does not satisfy the formula");
                    Ok(INFEASIBLE)
                }
            }
        }
        Command::Extract { formula, image } => {
            let sat = load_formula(&formula)?;
            let img = load_image(&image)?;
            let board = build_board(&sat).map_err(domain)?;
            let assignment = extract_assignment(&board, &img).map_err(domain)?;
            println!("{}", format_assignment(&assignment));
            Ok(0)
        }
        Command::Lift {
            instance,
            k,
            output,
        } => {
            let inst = load_instance(&instance)?;
            let lifted = lift_instance(&inst, k).map_err(domain)?;
            write_out(output.as_deref(), write_instance(&lifted).as_bytes()).map(|_| 0)
        }
        Command::Oracle {
            instance,
            count,
            limit,
            max_nodes,
            output,
        } => {
            let inst = load_instance(&instance)?;
            let budget = SearchBudget {
                max_solutions: limit.unwrap_or(if count { u64::MAX } else { 1 }),
                max_nodes: max_nodes.unwrap_or(u64::MAX),
            };
            if count {
                let o = oracle_count(&inst, budget);
                let capped = !o.exhausted && o.result >= budget.max_solutions;
                println!("{}{}", if o.exhausted { "" } else { ">=" }, o.result);
                if !o.exhausted && !capped {
                    eprintln!("node budget exhausted after {} nodes", o.nodes);
                    return Ok(BUDGET);
                }
                return Ok(0);
            }
            let o = oracle_solve(&inst, budget);
            match o.result.first() {
                Some(img) => write_out(output.as_deref(), &write_image(img)).map(|_| 0),
                None if o.exhausted => {
                    println!("INFEASIBLE");
                    Ok(INFEASIBLE)
                }
                None => {
                    eprintln!("node budget exhausted after {} nodes", o.nodes);
                    Ok(BUDGET)
                }
            }
        }
        Command::TvReduce {
            instance,
            image,
            output,
        } => {
            let inst = load_instance(&instance)?;
            let img = load_image(&image)?;
            let descent = tv_descend(&inst, &img).map_err(domain)?;
            println!("0\t-\t{}", descent.trace[0]);
            for (i, (mv, value)) in descent.moves.iter().zip(&descent.trace[1..]).enumerate() {
                println!("{}\t{mv}\t{value}", i + 1);
            }
            match output {
                Some(path) => write_out(Some(&path), &write_image(&descent.image)).map(|_| 0),
                None => Ok(0),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("drtomo: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
