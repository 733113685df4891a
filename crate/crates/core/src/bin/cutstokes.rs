use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cutstokes::experiments::{run_convergence, run_coriolis, run_solve, RunConfig};
use cutstokes::postprocess::ErrorReport;

#[derive(Parser)]
#[command(name = "cutstokes", version, about = "Unfitted divergence-free Stokes solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convergence study on the manufactured boundary-driven flow.
    Convergence {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Overrides the output directory of the config.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Uniform boundary flow in a rotating frame for several angular velocities.
    Coriolis {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Comma-separated angular velocities.
        #[arg(long, value_delimiter = ',')]
        omega: Option<Vec<f64>>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Single solve of the manufactured flow.
    Solve {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn load(path: Option<&PathBuf>, output: Option<PathBuf>) -> cutstokes::Result<RunConfig> {
    let mut c = match path {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(o) = output {
        c.output = o;
    }
    Ok(c)
}

fn print_report(r: &ErrorReport) {
    println!(
        "n={:<4} h={:.4e} e_u_L2={:.3e} e_u_H1={:.3e} e_p_int={:.3e} e_p_ext={:.3e} e_lambda={:.3e} div_max={:.1e}",
        r.n, r.h, r.e_u_l2, r.e_u_h1, r.e_p_interior, r.e_p_extended, r.e_lambda, r.div_max
    );
}

fn run(cli: Cli) -> cutstokes::Result<()> {
    match cli.command {
        Command::Convergence { config, output } => {
            let c = load(config.as_ref(), output)?;
            let res = run_convergence(&c, Some(&c.output))?;
            for r in &res.reports {
                print_report(r);
            }
            if let Some(rates) = res.last_rates() {
                for (name, v) in ErrorReport::RATED.iter().zip(rates) {
                    println!("rate {name} = {v:.3}");
                }
            }
            println!("wrote {}", c.output.display());
        }
        Command::Coriolis { config, omega, output } => {
            let mut c = load(config.as_ref(), output)?;
            if let Some(w) = omega {
                c.omegas = w;
            }
            for r in run_coriolis(&c, Some(&c.output))? {
                println!(
                    "omega={:<8} |u_x|={:.6e} |u_y|={:.6e} max|u_y| on boundary={:.3e}",
                    r.omega, r.u_x_l2, r.u_y_l2, r.u_y_boundary_max
                );
            }
            println!("wrote {}", c.output.display());
        }
        Command::Solve { config, n, output } => {
            let c = load(config.as_ref(), output)?;
            let n = n.unwrap_or(c.n);
            let (sol, report) = run_solve(&c, n, Some(&c.output))?;
            print_report(&report);
            println!("relative residual {:.2e}", sol.stats.relative_residual);
            println!("wrote {}", c.output.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
