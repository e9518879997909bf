use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use eqpot::config::RunConfig;
use eqpot::dynamics::{integrate_hamiltonian, integrate_newtonian, launch_state, StepControl};
use eqpot::kernel::effective_hamiltonian;
use eqpot::transmission::{effective_coefficients, quantum_t_mixture, MixtureEnsemble};
use eqpot::{LowMomentumModel, Result};

/// Effective quantum potential: smoothing, space-dependent mass, trajectories
/// and transmission coefficients.
#[derive(Parser)]
#[command(name = "eqpot", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// JSON file with any of: m, beta, hbar, L, V0, rel_tol, abs_tol, tail_sigmas, potential_csv
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Particle mass [default: 1]
    #[arg(long, global = true)]
    m: Option<f64>,
    /// Inverse temperature [default: 0.125]
    #[arg(long, global = true)]
    beta: Option<f64>,
    /// Reduced Planck constant [default: 3]
    #[arg(long, global = true)]
    hbar: Option<f64>,
    /// Barrier half-width [default: 0.5]
    #[arg(long = "L", global = true)]
    half_width: Option<f64>,
    /// Barrier height [default: 1]
    #[arg(long = "V0", global = true)]
    v0: Option<f64>,
    /// Quadrature relative tolerance [default: 1e-10]
    #[arg(long, global = true)]
    rel_tol: Option<f64>,
    /// Tabulated potential (two CSV columns q,V) in place of the square barrier
    #[arg(long, global = true)]
    potential_csv: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sample the full effective potential on a (q, p) grid
    Veff {
        #[arg(long, default_value_t = -2.0, allow_negative_numbers = true)]
        q_min: f64,
        #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
        q_max: f64,
        #[arg(long, default_value_t = 41)]
        nq: usize,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        p_min: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        p_max: f64,
        #[arg(long, default_value_t = 5)]
        np: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Smoothed potential V, mass M and reduced potential V^Q on a grid
    Model {
        #[arg(long, default_value_t = -4.0, allow_negative_numbers = true)]
        q_min: f64,
        #[arg(long, default_value_t = 4.0, allow_negative_numbers = true)]
        q_max: f64,
        #[arg(long, default_value_t = 801)]
        n: usize,
        /// Energy of the level set used for V^Q
        #[arg(long, default_value_t = 0.25)]
        eps: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integrate one trajectory launched from the left with energy eps
    Trajectory {
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
        #[arg(long, default_value_t = 20.0)]
        t_end: f64,
        #[arg(long, default_value_t = 0.05)]
        dt: f64,
        #[arg(long, value_enum, default_value_t = Form::Hamiltonian)]
        form: Form,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Effective and quantum-mixture transmission coefficients
    Coeff,
    /// Write fig1..fig4 CSV files and gnuplot scripts
    Figures {
        #[arg(long, default_value = "figures")]
        out: PathBuf,
    },
    /// Run the cross-checks and print a pass/fail report
    Validate,
}

#[derive(Clone, Copy, ValueEnum)]
enum Form {
    Hamiltonian,
    Newtonian,
}

fn resolve(c: &Common) -> Result<RunConfig> {
    let file = match &c.config {
        Some(p) => RunConfig::from_path(p)?,
        None => RunConfig::default(),
    };
    Ok(file.overridden_by(RunConfig {
        m: c.m,
        beta: c.beta,
        hbar: c.hbar,
        half_width: c.half_width,
        v0: c.v0,
        rel_tol: c.rel_tol,
        abs_tol: None,
        tail_sigmas: None,
        potential_csv: c.potential_csv.clone(),
    }))
}

fn sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| eqpot::Error::io(p, e))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n <= 1 {
        return vec![lo];
    }
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

fn header(w: &mut dyn Write, cfg: &RunConfig) -> Result<()> {
    for line in cfg.metadata()? {
        writeln!(w, "# {line}").map_err(io_err)?;
    }
    Ok(())
}

fn io_err(e: io::Error) -> eqpot::Error {
    eqpot::Error::io("<output>", e)
}

fn run(cli: Cli) -> Result<bool> {
    let cfg = resolve(&cli.common)?;
    match cli.cmd {
        Cmd::Veff {
            q_min,
            q_max,
            nq,
            p_min,
            p_max,
            np,
            out,
        } => {
            let (params, pot, quad) = (cfg.physical()?, cfg.potential()?, cfg.quadrature()?);
            let mut w = sink(&out)?;
            header(&mut *w, &cfg)?;
            writeln!(w, "q,p,veff,eps_eff").map_err(io_err)?;
            for p in grid(p_min, p_max, np) {
                for q in grid(q_min, q_max, nq) {
                    let s = effective_hamiltonian(&params, &pot, q, p, &quad)?;
                    writeln!(
                        w,
                        "{:.11e},{:.11e},{:.11e},{:.11e}",
                        s.q, s.p, s.veff, s.eps_eff
                    )
                    .map_err(io_err)?;
                }
            }
            w.flush().map_err(io_err)?;
        }
        Cmd::Model {
            q_min,
            q_max,
            n,
            eps,
            out,
        } => {
            let model = LowMomentumModel::with_quadrature(
                cfg.physical()?,
                cfg.potential()?,
                cfg.quadrature()?,
            )?;
            let mut w = sink(&out)?;
            header(&mut *w, &cfg)?;
            writeln!(w, "# eps = {eps}").map_err(io_err)?;
            writeln!(w, "q,V,M,VQ").map_err(io_err)?;
            for q in grid(q_min, q_max, n) {
                let v = model.smoothed_potential(q)?;
                let m = model.mass(q)?;
                let vq = model.vq_potential(q, eps)?;
                writeln!(w, "{q:.11e},{v:.11e},{m:.11e},{vq:.11e}").map_err(io_err)?;
            }
            w.flush().map_err(io_err)?;
        }
        Cmd::Trajectory {
            eps,
            t_end,
            dt,
            form,
            out,
        } => {
            let model = LowMomentumModel::with_quadrature(
                cfg.physical()?,
                cfg.potential()?,
                cfg.quadrature()?,
            )?;
            let (q0, p0) = launch_state(&model, eps)?;
            let ctrl = StepControl::sampled(dt);
            let traj = match form {
                Form::Hamiltonian => integrate_hamiltonian(&model, q0, p0, t_end, &ctrl)?,
                Form::Newtonian => {
                    let v0 = p0 * model.inverse_mass(q0)?;
                    integrate_newtonian(&model, q0, v0, eps, t_end, &ctrl)?
                }
            };
            let mut w = sink(&out)?;
            header(&mut *w, &cfg)?;
            writeln!(
                w,
                "# eps = {eps}, q0 = {q0}, p0 = {p0}, max relative energy drift = {:.3e}",
                traj.max_energy_drift
            )
            .map_err(io_err)?;
            traj.write_csv(&mut w).map_err(io_err)?;
            w.flush().map_err(io_err)?;
        }
        Cmd::Coeff => {
            let params = cfg.physical()?;
            let model =
                LowMomentumModel::with_quadrature(params, cfg.potential()?, cfg.quadrature()?)?;
            let eff = effective_coefficients(&model)?;
            let mut w = io::stdout().lock();
            header(&mut w, &cfg)?;
            writeln!(w, "threshold = {:.11e}", model.tunneling_threshold()?).map_err(io_err)?;
            writeln!(w, "t = {:.11e}", eff.t()).map_err(io_err)?;
            writeln!(w, "r = {:.11e}", eff.r()).map_err(io_err)?;
            if let (Some(b), false) = (model.potential().as_square(), params.is_classical()) {
                let ens = MixtureEnsemble::new(&params, b)?;
                let tq = quantum_t_mixture(ens.mixture_q(b))?;
                writeln!(w, "1/(k0 L) = {:.11e}", ens.mixture_q(b)).map_err(io_err)?;
                writeln!(w, "tQ = {tq:.11e}").map_err(io_err)?;
                writeln!(w, "rQ = {:.11e}", 1.0 - tq).map_err(io_err)?;
            }
        }
        Cmd::Figures { out } => {
            for f in eqpot::figures::emit_all(&out)? {
                println!("{}", f.display());
            }
        }
        Cmd::Validate => {
            let report = eqpot::validate::run_all()?;
            println!("{report}");
            return Ok(report.all_passed());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
