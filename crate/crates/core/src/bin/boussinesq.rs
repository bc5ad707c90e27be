use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use boussinesq::scenario::{report, run_single, write_outputs, write_run};
use boussinesq::sponge::{damped_wave_exact, DampedWaveProblem};
use boussinesq::stationary::solve_solitary_wave;
use boussinesq::{run_scenario, Grid, NewtonOptions, PhysicalParams, ScenarioConfig, Snapshot};

#[derive(Parser)]
#[command(
    name = "boussinesq",
    version,
    about = "Boussinesq wave solver with sponge layers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Profile {
    Gaussian,
}

#[derive(Subcommand)]
enum Command {
    /// Solve for a stationary solitary wave and write it as a snapshot file.
    Stationary {
        #[arg(long)]
        amplitude: f64,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 1024)]
        n: usize,
        #[arg(long, default_value_t = 0.2)]
        dx: f64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        max_iter: Option<usize>,
        #[arg(long)]
        fd_step: Option<f64>,
    },
    /// Run a single evolution (sponge active when sponge_a1 > 0).
    Evolve {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the paired sponge / no-sponge evolutions and their diagnostics.
    Compare {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the exact damped-wave solution as an `x eta` table.
    Oracle {
        #[arg(long)]
        b: f64,
        #[arg(long)]
        t: f64,
        #[arg(long, value_enum, default_value = "gaussian")]
        profile: Profile,
        #[arg(long, default_value_t = -20.0, allow_hyphen_values = true)]
        x_min: f64,
        #[arg(long, default_value_t = 20.0, allow_hyphen_values = true)]
        x_max: f64,
        #[arg(long, default_value_t = 401)]
        points: usize,
    },
}

fn run(cli: Cli) -> boussinesq::Result<bool> {
    match cli.command {
        Command::Stationary {
            amplitude,
            alpha,
            beta,
            n,
            dx,
            out,
            tol,
            max_iter,
            fd_step,
        } => {
            let params = PhysicalParams::new(alpha, beta, alpha.max(beta), 0.0)?;
            let defaults = NewtonOptions::default();
            let options = NewtonOptions {
                tol: tol.unwrap_or(defaults.tol),
                max_iter: max_iter.unwrap_or(defaults.max_iter),
                fd_step: fd_step.unwrap_or(defaults.fd_step),
            };
            let grid = Arc::new(Grid::new(n, dx)?);
            let sol = solve_solitary_wave(amplitude, &params, grid, &options)?;
            Snapshot::from_stationary(&sol, alpha, beta).write(&out)?;
            println!(
                "froude={:.16e} residual={:e} iterations={}",
                sol.froude, sol.residual, sol.iterations
            );
            Ok(true)
        }
        Command::Evolve { config, out } => {
            let cfg = ScenarioConfig::from_file(&config)?;
            let run = run_single(&cfg, cfg.sponge_a1 > 0.0)?;
            write_run(&run, &out)?;
            std::fs::write(out.join("config.txt"), cfg.to_string())?;
            println!(
                "wrote {} snapshots to {}",
                run.snapshots.len(),
                out.display()
            );
            Ok(true)
        }
        Command::Compare { config, out } => {
            let cfg = ScenarioConfig::from_file(&config)?;
            let result = run_scenario(&cfg)?;
            write_outputs(&result, &out)?;
            print!("{}", report(&result));
            Ok(result.passed())
        }
        Command::Oracle {
            b,
            t,
            profile: Profile::Gaussian,
            x_min,
            x_max,
            points,
        } => {
            let problem = DampedWaveProblem {
                f: |x: f64| (-x * x).exp(),
                g: |_: f64| 0.0,
                b,
            };
            let step = if points > 1 {
                (x_max - x_min) / (points - 1) as f64
            } else {
                0.0
            };
            println!("x eta");
            for i in 0..points {
                let x = x_min + i as f64 * step;
                println!("{x:.16e} {:.16e}", damped_wave_exact(&problem, x, t)?);
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
