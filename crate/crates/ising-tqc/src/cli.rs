//! Command-line front end. Every option can also be set through an
//! `ANYON_`-prefixed environment variable; flags win over the environment.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::parser::ValueSource;
use clap::{ArgMatches, Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::a4::{a4_dense, a4_threshold, exact_flow_a4, A4Mode};
use crate::a8::{a8_tableau, full_round_flow, monte_carlo, threshold};
use crate::braids::{orbit_size, orbit_size_dense};
use crate::circuit::BraidCircuit;
use crate::cost::cost_model;
use crate::error::Error;
use crate::protocols::{verify, PROTOCOL_NAMES};
use crate::tableau::StabilizerTableau;

/// Minimum branch fidelity for `protocols-verify` to succeed.
pub const FIDELITY_TOLERANCE: f64 = 1e-10;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "ising-tqc", version, about = "Ising-anyon braid computation: simulation, distillation flows, resource estimates")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Seed for every random stream.
    #[arg(long, global = true, env = "ANYON_SEED", default_value_t = 1)]
    pub seed: u64,
    /// Worker threads; 0 uses all cores.
    #[arg(long, global = true, env = "ANYON_THREADS", default_value_t = 0)]
    pub threads: usize,
    /// Write tables here instead of stdout.
    #[arg(long, global = true, env = "ANYON_OUT")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, env = "ANYON_FORMAT", value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Print the effective configuration and where each value came from.
    #[arg(long, global = true)]
    pub show_config: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeArg {
    Postselect,
    Corrected,
}

impl From<ModeArg> for A4Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Postselect => A4Mode::Postselect,
            ModeArg::Corrected => A4Mode::Corrected,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum StateArg {
    A4,
    A8,
    Vacuum,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Full-round purification flow on a grid: eps, eps_out, Z.
    FlowA8 {
        #[arg(long, env = "ANYON_EPS_MIN", default_value_t = 1e-4)]
        eps_min: f64,
        #[arg(long, env = "ANYON_EPS_MAX", default_value_t = 0.38)]
        eps_max: f64,
        #[arg(long, env = "ANYON_STEPS", default_value_t = 50)]
        steps: usize,
        /// Space the grid logarithmically.
        #[arg(long)]
        log: bool,
    },
    /// Purification threshold.
    ThresholdA8,
    /// Monte Carlo success probability of the stochastic inventory.
    McA8 {
        #[arg(long, env = "ANYON_EPS0", default_value_t = 0.1)]
        eps0: f64,
        #[arg(long, env = "ANYON_K", default_value_t = 1)]
        k: usize,
        /// Raw copies; a comma-separated list gives one row each.
        #[arg(long, env = "ANYON_N0", value_delimiter = ',', default_value = "8,16,32,64")]
        n0: Vec<usize>,
        #[arg(long, env = "ANYON_TRIALS", default_value_t = 10_000)]
        trials: usize,
    },
    /// Distillation flow: eps, eps_out, p_s.
    FlowA4 {
        /// Explicit input errors; overrides the grid.
        #[arg(long, value_delimiter = ',')]
        eps: Vec<f64>,
        #[arg(long, env = "ANYON_EPS_MIN", default_value_t = 1e-3)]
        eps_min: f64,
        #[arg(long, env = "ANYON_EPS_MAX", default_value_t = 0.14)]
        eps_max: f64,
        #[arg(long, env = "ANYON_STEPS", default_value_t = 50)]
        steps: usize,
        #[arg(long, env = "ANYON_A4_MODE", value_enum, default_value_t = ModeArg::Postselect)]
        mode: ModeArg,
    },
    /// Distillation threshold.
    ThresholdA4,
    /// Check every protocol reduction against its exact target.
    ProtocolsVerify {
        #[arg(long, env = "ANYON_PROTOCOL", default_value = "all", value_parser = protocol_name)]
        protocol: String,
        /// JSON report path.
        #[arg(long, env = "ANYON_REPORT")]
        report: Option<PathBuf>,
    },
    /// End-to-end cost of the gate set for circuits of `n` gates.
    Cost {
        /// Target gate counts; a comma-separated list gives one row each.
        #[arg(long, env = "ANYON_N", value_delimiter = ',', default_value = "1000")]
        n: Vec<f64>,
        #[arg(long, env = "ANYON_EPS0_A4", default_value_t = 0.05)]
        eps0_a4: f64,
        #[arg(long, env = "ANYON_EPS0_A8", default_value_t = 0.1)]
        eps0_a8: f64,
        #[arg(long, env = "ANYON_A4_MODE", value_enum, default_value_t = ModeArg::Corrected)]
        mode: ModeArg,
    },
    /// Number of distinct states reachable by braiding.
    Orbit {
        #[arg(long, value_enum)]
        state: StateArg,
        /// Mode count for the vacuum.
        #[arg(long, default_value_t = 4)]
        modes: usize,
    },
    /// Run a JSON circuit on the stabilizer engine from the vacuum and print
    /// the outcome log.
    Simulate {
        #[arg(long)]
        circuit: PathBuf,
    },
}

fn protocol_name(s: &str) -> std::result::Result<String, String> {
    if s == "all" || PROTOCOL_NAMES.contains(&s) {
        Ok(s.to_string())
    } else {
        Err(format!("expected all or one of {}", PROTOCOL_NAMES.join(", ")))
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotBracketed { .. } => Failure::Numerical(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult = std::result::Result<(), Failure>;

/// Parses `argv` (program name first), runs the command and returns the
/// process exit code. Normal output goes to `stdout`, diagnostics to `stderr`.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let matches = match Cli::command().try_get_matches_from(argv) {
        Ok(m) => m,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(stderr, "{}", e.render()) } else { write!(stdout, "{}", e.render()) };
            return code;
        }
    };
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return EXIT_USAGE;
        }
    };
    if cli.global.show_config {
        return match show_config(&matches, stdout) {
            Ok(()) => EXIT_OK,
            Err(_) => EXIT_USAGE,
        };
    }
    let Some(command) = cli.command else {
        let _ = write!(stderr, "{}", Cli::command().render_usage());
        let _ = writeln!(stderr, "\nerror: a subcommand is required");
        return EXIT_USAGE;
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.global.threads).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    // output is buffered so the work can run inside the pool
    let mut buf = Vec::new();
    let result = pool.install(|| dispatch(&cli.global, command, &mut buf));
    if stdout.write_all(&buf).is_err() {
        return EXIT_USAGE;
    }
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(stderr, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Numerical(m)) => {
            let _ = writeln!(stderr, "numerical check failed: {m}");
            EXIT_NUMERICAL
        }
    }
}

fn show_config(matches: &ArgMatches, out: &mut dyn Write) -> io::Result<()> {
    let root = Cli::command();
    let mut sections = vec![("global", root.clone(), matches)];
    if let Some((name, sub)) = matches.subcommand() {
        if let Some(cmd) = root.find_subcommand(name) {
            sections.push((name, cmd.clone(), sub));
        }
    }
    for (section, cmd, m) in sections {
        for arg in cmd.get_arguments() {
            let id = arg.get_id().as_str();
            if matches!(id, "help" | "version" | "show_config") || (section != "global" && arg.is_global_set()) {
                continue;
            }
            let value = m
                .get_raw(id)
                .map(|vs| vs.map(|v| v.to_string_lossy().into_owned()).collect::<Vec<_>>().join(","))
                .unwrap_or_else(|| "<unset>".into());
            let source = match m.value_source(id) {
                Some(ValueSource::CommandLine) => "flag",
                Some(ValueSource::EnvVariable) => "env",
                Some(ValueSource::DefaultValue) => "default",
                _ => "unset",
            };
            let env = arg.get_env().map(|e| e.to_string_lossy().into_owned()).unwrap_or_default();
            writeln!(out, "{section}.{id} = {value} ({source}) {env}")?;
        }
    }
    Ok(())
}

/// Writes rows to `--out` or `stdout` in the chosen format.
fn emit<R: Serialize>(g: &GlobalOpts, rows: &[R], stdout: &mut dyn Write) -> CliResult {
    let mut file;
    let sink: &mut dyn Write = match &g.out {
        Some(p) => {
            file = File::create(p)?;
            &mut file
        }
        None => stdout,
    };
    match g.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(sink);
            for r in rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *sink, rows)?;
            writeln!(sink)?;
        }
    }
    Ok(())
}

fn grid(lo: f64, hi: f64, steps: usize, log: bool) -> std::result::Result<Vec<f64>, Failure> {
    if steps < 2 || !(lo < hi) || (log && lo <= 0.0) {
        return Err(Failure::Usage(format!("need steps >= 2 and 0 < min < max, got {steps} points on [{lo}, {hi}]")));
    }
    Ok((0..steps)
        .map(|i| {
            let t = i as f64 / (steps - 1) as f64;
            if log {
                (lo.ln() + t * (hi.ln() - lo.ln())).exp()
            } else {
                lo + t * (hi - lo)
            }
        })
        .collect())
}

#[derive(Serialize)]
struct A8Row {
    eps: f64,
    eps_out: f64,
    #[serde(rename = "Z")]
    z: f64,
}

#[derive(Serialize)]
struct McRow {
    n0: usize,
    k: usize,
    success_prob: f64,
    stderr: f64,
}

#[derive(Serialize)]
struct A4Row {
    eps: f64,
    eps_out: f64,
    p_s: f64,
}

#[derive(Serialize)]
struct VerifyRow<'a> {
    protocol: &'a str,
    fidelity: f64,
    prob_error: f64,
    branches: usize,
    passed: bool,
}

#[derive(Serialize)]
struct CostRow {
    n_gates: f64,
    delta: f64,
    a4_depth: usize,
    a4_n0: f64,
    m_tot: f64,
    m_tot_smooth: f64,
    cz_gate_cost: f64,
    t_gate_cost: f64,
}

#[derive(Serialize)]
struct OutcomeRow {
    index: usize,
    observable: String,
    outcome_bit: u8,
}

fn dispatch(g: &GlobalOpts, command: Command, stdout: &mut Vec<u8>) -> CliResult {
    match command {
        Command::FlowA8 { eps_min, eps_max, steps, log } => {
            let rows: Vec<A8Row> = grid(eps_min, eps_max, steps, log)?
                .into_iter()
                .map(|eps| {
                    let f = full_round_flow(eps);
                    A8Row { eps, eps_out: f.eps_out, z: f.success_prob }
                })
                .collect();
            emit(g, &rows, stdout)
        }
        Command::ThresholdA8 => {
            writeln!(stdout, "{:.6}", threshold()?)?;
            Ok(())
        }
        Command::McA8 { eps0, k, n0, trials } => {
            let mut rows = Vec::new();
            for n in n0 {
                let m = monte_carlo(eps0, k, n, trials, g.seed)?;
                rows.push(McRow { n0: n, k, success_prob: m.success_prob, stderr: m.stderr });
            }
            emit(g, &rows, stdout)
        }
        Command::FlowA4 { eps, eps_min, eps_max, steps, mode } => {
            let xs = if eps.is_empty() { grid(eps_min, eps_max, steps, false)? } else { eps };
            let mut rows = Vec::new();
            for e in xs {
                let r = exact_flow_a4(e, mode.into())?;
                rows.push(A4Row { eps: e, eps_out: r.eps_out, p_s: r.p_s });
            }
            emit(g, &rows, stdout)
        }
        Command::ThresholdA4 => {
            writeln!(stdout, "{:.6}", a4_threshold()?)?;
            Ok(())
        }
        Command::ProtocolsVerify { protocol, report } => {
            let reports = verify(&protocol, g.seed)?;
            if let Some(p) = &report {
                let mut f = File::create(p)?;
                serde_json::to_writer_pretty(&mut f, &reports)?;
                writeln!(f)?;
            }
            let rows: Vec<VerifyRow> = reports
                .iter()
                .map(|r| VerifyRow {
                    protocol: &r.protocol,
                    fidelity: r.fidelity,
                    prob_error: r.prob_error,
                    branches: r.branches.len(),
                    passed: r.fidelity >= 1.0 - FIDELITY_TOLERANCE && r.prob_error <= FIDELITY_TOLERANCE,
                })
                .collect();
            emit(g, &rows, stdout)?;
            let failed: Vec<&str> = rows.iter().filter(|r| !r.passed).map(|r| r.protocol).collect();
            if failed.is_empty() {
                Ok(())
            } else {
                Err(Failure::Numerical(format!("below tolerance: {}", failed.join(", "))))
            }
        }
        Command::Cost { n, eps0_a4, eps0_a8, mode } => {
            let mut reports = Vec::new();
            for gates in n {
                reports.push(cost_model(gates, eps0_a4, eps0_a8, mode.into())?);
            }
            match g.format {
                Format::Json => emit(g, &reports, stdout),
                Format::Csv => {
                    let rows: Vec<CostRow> = reports
                        .iter()
                        .map(|r| CostRow {
                            n_gates: r.n_gates,
                            delta: r.delta,
                            a4_depth: r.a4_depth,
                            a4_n0: r.a4_n0,
                            m_tot: r.m_tot,
                            m_tot_smooth: r.m_tot_smooth,
                            cz_gate_cost: r.cz_gate_cost,
                            t_gate_cost: r.t_gate_cost,
                        })
                        .collect();
                    emit(g, &rows, stdout)
                }
            }
        }
        Command::Orbit { state, modes } => {
            let n = match state {
                StateArg::A4 => orbit_size_dense(&a4_dense()),
                StateArg::A8 => orbit_size(&a8_tableau()),
                StateArg::Vacuum => orbit_size(&StabilizerTableau::new_vacuum(modes)?),
            };
            writeln!(stdout, "{n}")?;
            Ok(())
        }
        Command::Simulate { circuit } => {
            let text = std::fs::read_to_string(&circuit).map_err(|e| Failure::Usage(format!("{}: {e}", circuit.display())))?;
            let c = BraidCircuit::from_json(&text)?;
            let mut state = StabilizerTableau::new_vacuum(c.n_modes())?;
            let run = c.run(&mut state, &mut ChaCha8Rng::seed_from_u64(g.seed))?;
            match g.format {
                // the log has no header: one line per measurement
                Format::Csv => {
                    for r in &run.records {
                        writeln!(stdout, "{r}")?;
                    }
                    Ok(())
                }
                Format::Json => {
                    let rows: Vec<OutcomeRow> = run
                        .records
                        .iter()
                        .map(|r| OutcomeRow { index: r.index, observable: r.observable.clone(), outcome_bit: u8::from(r.bit) })
                        .collect();
                    emit(g, &rows, stdout)
                }
            }
        }
    }
}
