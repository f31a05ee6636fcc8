//! Seeded experiment runs and their CSV records.

use crate::bins::BinSpec;
use crate::error::{Error, Result};
use crate::generate::{generate, Family, GeneratorSpec};
use crate::instance::Instance;
use crate::offline::{approximate_bin_packing_with, linear_time_packing};
use crate::oracle::{ceil_tol, exact_opt, first_fit_decreasing};
use crate::params::ScaledConstants;
use crate::sampling::Rng;
use crate::sliding::WindowState;
use crate::streaming::StreamState;
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

/// Largest `n` the exact oracle is run on.
pub const ORACLE_LIMIT: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Approx,
    Linear,
    Stream,
    Window,
    Ffd,
    Exact,
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "approx" => Algorithm::Approx,
            "linear" => Algorithm::Linear,
            "stream" => Algorithm::Stream,
            "window" => Algorithm::Window,
            "ffd" => Algorithm::Ffd,
            "exact" => Algorithm::Exact,
            _ => return Err(Error::Parameter(format!("unknown algorithm {s:?}"))),
        })
    }
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Approx => "approx",
            Algorithm::Linear => "linear",
            Algorithm::Stream => "stream",
            Algorithm::Window => "window",
            Algorithm::Ffd => "ffd",
            Algorithm::Exact => "exact",
        }
    }
}

/// One CSV row. Column order is fixed by field order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub family: String,
    pub n: usize,
    pub sum: f64,
    pub app: f64,
    pub opt_or_lb: f64,
    pub ratio: f64,
    pub samples_used: u64,
    pub phases: usize,
    pub branch: String,
    pub seed: u64,
    pub wall_ms: f64,
}

pub const CSV_HEADER: &str = "family,n,sum,app,opt_or_lb,ratio,samples_used,phases,branch,seed,wall_ms";

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub algorithm: Algorithm,
    pub tau: f64,
    pub overrides: ScaledConstants,
    /// Window scheme only.
    pub window_delta: f64,
}

impl RunConfig {
    pub fn new(algorithm: Algorithm, tau: f64) -> Self {
        RunConfig {
            algorithm,
            tau,
            overrides: ScaledConstants::default(),
            window_delta: 0.25,
        }
    }
}

/// Exact optimum for `n <= ORACLE_LIMIT`, else `ceil(sum)`.
pub fn opt_or_lb(inst: &Instance) -> Result<f64> {
    if inst.len() <= ORACLE_LIMIT {
        Ok(exact_opt(inst, &BinSpec::classical(), ORACLE_LIMIT)?.0)
    } else {
        Ok(ceil_tol(inst.sum()))
    }
}

/// Run one algorithm on one instance.
pub fn run_one(family: &str, inst: &Instance, cfg: &RunConfig, seed: u64) -> Result<RunRecord> {
    let n = inst.len();
    let start = Instant::now();
    let (app, samples_used, phases, branch) = match cfg.algorithm {
        Algorithm::Approx => {
            let r = approximate_bin_packing_with(cfg.tau, inst, cfg.overrides.clone(), &mut Rng::new(seed))?;
            (r.app, r.samples_used, r.report.phases, r.branch.as_str().to_string())
        }
        Algorithm::Linear => {
            let beta = cfg.tau / 30.0;
            (linear_time_packing(inst, beta)?.0, n as u64, 0, "linear".into())
        }
        Algorithm::Stream => {
            let mut s = StreamState::new(cfg.tau, cfg.overrides.clone(), seed)?;
            for &a in inst.items() {
                s.push(a)?;
            }
            let a = s.query()?;
            (a.app, n as u64, 0, format!("stream_{}", a.branch.as_str()))
        }
        Algorithm::Window => {
            let mut w = WindowState::new(n, cfg.tau, cfg.window_delta, &BinSpec::classical(), &cfg.overrides, seed)?;
            for &a in inst.items() {
                w.push(a)?;
            }
            (w.query(&BinSpec::classical())?.app, n as u64, 0, "window".into())
        }
        Algorithm::Ffd => (first_fit_decreasing(inst).bin_count() as f64, n as u64, 0, "ffd".into()),
        Algorithm::Exact => {
            if n > ORACLE_LIMIT {
                return Err(Error::OracleLimit { n, limit: ORACLE_LIMIT });
            }
            (exact_opt(inst, &BinSpec::classical(), ORACLE_LIMIT)?.0, n as u64, 0, "exact".into())
        }
    };
    let wall_ms = start.elapsed().as_secs_f64() * 1000.0;
    let reference = opt_or_lb(inst)?;
    Ok(RunRecord {
        family: family.to_string(),
        n,
        sum: inst.sum(),
        app,
        opt_or_lb: reference,
        ratio: if reference > 0.0 { app / reference } else { f64::NAN },
        samples_used,
        phases,
        branch,
        seed,
        wall_ms,
    })
}

/// One record per seed; seed `s` drives both the generator and the run.
pub fn run_experiment(family: Family, n: usize, cfg: &RunConfig, seeds: std::ops::Range<u64>) -> Result<Vec<RunRecord>> {
    if cfg.algorithm == Algorithm::Exact && n > ORACLE_LIMIT {
        return Err(Error::OracleLimit { n, limit: ORACLE_LIMIT });
    }
    let name = family.to_string();
    seeds
        .map(|seed| {
            let inst = generate(&GeneratorSpec { family, n, seed })?;
            run_one(&name, &inst, cfg, seed)
        })
        .collect()
}

pub fn write_csv<W: Write>(out: W, records: &[RunRecord]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER.split(','))
        .map_err(|e| Error::Io(e.to_string()))?;
    for r in records {
        w.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv(text: &str) -> Result<Vec<RunRecord>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = r
        .headers()
        .map_err(|e| Error::Parse { line: 1, msg: e.to_string() })?
        .iter()
        .map(String::from)
        .collect();
    if header.join(",") != CSV_HEADER {
        return Err(Error::Parse {
            line: 1,
            msg: format!("unexpected header {}", header.join(",")),
        });
    }
    r.deserialize()
        .enumerate()
        .map(|(i, row)| row.map_err(|e| Error::Parse { line: i + 2, msg: e.to_string() }))
        .collect()
}
