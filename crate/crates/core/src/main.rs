use binpack::experiment::{run_experiment, run_one, write_csv, Algorithm, RunConfig, ORACLE_LIMIT};
use binpack::generate::{generate, Family, GeneratorSpec};
use binpack::materialize::materialize;
use binpack::offline::{approximate_bin_packing_with, PackingTemplate};
use binpack::oracle::{ceil_tol, exact_opt, first_fit_decreasing};
use binpack::sliding::WindowState;
use binpack::streaming::StreamState;
use binpack::{BinSpec, Error, Instance, Result, Rng, ScaledConstants};
use clap::{Args, Parser, Subcommand};
use std::io::{BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "binpack", version, about = "Sublinear-time approximate bin packing")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Constants {
    /// TOML file with scaled constants.
    #[arg(long, value_name = "FILE")]
    scaled_constants: Option<PathBuf>,
    /// Use the built-in small constants.
    #[arg(long, conflicts_with = "scaled_constants")]
    desk: bool,
}

impl Constants {
    fn load(&self) -> Result<ScaledConstants> {
        match (&self.scaled_constants, self.desk) {
            (Some(p), _) => ScaledConstants::read(p),
            (None, true) => Ok(ScaledConstants::desk()),
            (None, false) => Ok(ScaledConstants::default()),
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate an instance file.
    Gen {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an algorithm over seeds and emit CSV.
    Run {
        #[arg(long, required_unless_present = "input")]
        family: Option<String>,
        #[arg(long, required_unless_present = "input")]
        n: Option<usize>,
        #[arg(long, conflicts_with_all = ["family", "n"])]
        input: Option<PathBuf>,
        #[arg(long, default_value = "approx")]
        algorithm: String,
        #[arg(long, default_value_t = 0.5)]
        tau: f64,
        /// Seed range `a..b`, or a single seed.
        #[arg(long, default_value = "0")]
        seeds: String,
        #[arg(long, default_value_t = 0.25)]
        window_delta: f64,
        #[command(flatten)]
        constants: Constants,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact optimum, FFD and the size bound for a small instance.
    Oracle {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = ORACLE_LIMIT)]
        limit: usize,
    },
    /// Streaming scheme over standard input; `?` prints the current answer.
    Stream {
        #[arg(long, default_value_t = 0.5)]
        tau: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        constants: Constants,
    },
    /// Sliding-window scheme over standard input; `?` prints the answer.
    Window {
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 0.5)]
        gamma: f64,
        #[arg(long, default_value_t = 0.25)]
        delta: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        constants: Constants,
    },
    /// Materialize a packing plan over an instance and check it.
    Validate {
        #[arg(long)]
        input: PathBuf,
        /// JSON plan; computed by the approximation scheme when absent.
        #[arg(long)]
        template: Option<PathBuf>,
        /// Write the plan used as JSON.
        #[arg(long)]
        save_template: Option<PathBuf>,
        #[arg(long, default_value_t = 0.5)]
        tau: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        constants: Constants,
    },
}

fn parse_seeds(s: &str) -> Result<std::ops::Range<u64>> {
    let bad = || Error::Parameter(format!("bad seed range {s:?}"));
    match s.split_once("..") {
        Some((a, b)) => {
            let a: u64 = a.parse().map_err(|_| bad())?;
            let b: u64 = b.parse().map_err(|_| bad())?;
            if a >= b {
                return Err(bad());
            }
            Ok(a..b)
        }
        None => {
            let a: u64 = s.parse().map_err(|_| bad())?;
            Ok(a..a + 1)
        }
    }
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(std::fs::File::create(p)?),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn read_stream(mut on_item: impl FnMut(f64) -> Result<()>, mut on_query: impl FnMut() -> Result<()>) -> Result<()> {
    let stdin = std::io::stdin();
    for (i, line) in stdin.lock().lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        if t == "?" {
            on_query()?;
            continue;
        }
        let x: f64 = t.parse().map_err(|_| Error::Parse {
            line: i + 1,
            msg: format!("not a number: {t:?}"),
        })?;
        on_item(x)?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Gen { family, n, seed, out } => {
            let family: Family = family.parse()?;
            let inst = generate(&GeneratorSpec { family, n, seed })?;
            let header = format!("family={family} n={n} seed={seed}");
            output(&out)?.write_all(inst.to_text(Some(&header)).as_bytes())?;
        }
        Cmd::Run {
            family,
            n,
            input,
            algorithm,
            tau,
            seeds,
            window_delta,
            constants,
            out,
        } => {
            let cfg = RunConfig {
                algorithm: algorithm.parse::<Algorithm>()?,
                tau,
                overrides: constants.load()?,
                window_delta,
            };
            let seeds = parse_seeds(&seeds)?;
            let records = match input {
                Some(path) => {
                    let inst = Instance::read(&path)?;
                    let name = path.display().to_string();
                    seeds.map(|s| run_one(&name, &inst, &cfg, s)).collect::<Result<Vec<_>>>()?
                }
                None => {
                    let family: Family = family.unwrap_or_default().parse()?;
                    run_experiment(family, n.unwrap_or_default(), &cfg, seeds)?
                }
            };
            write_csv(output(&out)?, &records)?;
        }
        Cmd::Oracle { input, limit } => {
            let inst = Instance::read(&input)?;
            let (opt, _) = exact_opt(&inst, &BinSpec::classical(), limit)?;
            let ffd = first_fit_decreasing(&inst).bin_count();
            println!("opt={opt} ffd={ffd} lower_bound={}", ceil_tol(inst.sum()));
        }
        Cmd::Stream { tau, seed, constants } => {
            let state = std::cell::RefCell::new(StreamState::new(tau, constants.load()?, seed)?);
            read_stream(
                |x| state.borrow_mut().push(x),
                || {
                    let a = state.borrow().query()?;
                    println!("app={} branch={}", a.app, a.branch.as_str());
                    Ok(())
                },
            )?;
        }
        Cmd::Window {
            size,
            gamma,
            delta,
            seed,
            constants,
        } => {
            let c = constants.load()?;
            let state = std::cell::RefCell::new(WindowState::new(size, gamma, delta, &BinSpec::classical(), &c, seed)?);
            read_stream(
                |x| state.borrow_mut().push(x),
                || {
                    let a = state.borrow().query(&BinSpec::classical())?;
                    println!("app={} warming={}", a.app, a.warming);
                    Ok(())
                },
            )?;
        }
        Cmd::Validate {
            input,
            template,
            save_template,
            tau,
            seed,
            constants,
        } => {
            let inst = Instance::read(&input)?;
            let (app, plan) = match template {
                Some(p) => {
                    let text = std::fs::read_to_string(p)?;
                    let t: PackingTemplate =
                        serde_json::from_str(&text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
                    (None, t)
                }
                None => {
                    let r = approximate_bin_packing_with(tau, &inst, constants.load()?, &mut Rng::new(seed))?;
                    (Some(r.app), r.template)
                }
            };
            if let Some(p) = save_template {
                let text = serde_json::to_string_pretty(&plan).map_err(|e| Error::Io(e.to_string()))?;
                std::fs::write(p, text)?;
            }
            let m = materialize(&inst, &plan);
            let mut line = format!("bins_used={} feasible={} overflow={}", m.bins_used, m.feasible, m.overflow);
            if let Some(app) = app {
                let within = m.bins_used as f64 <= app.ceil();
                line.push_str(&format!(" app={app} ceil_app={} within={within}", app.ceil()));
            }
            println!("{line}");
            if !m.feasible {
                return Err(Error::Infeasible("materialized plan overfills a bin".into()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_precondition() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
