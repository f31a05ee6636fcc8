//! Single-pass streaming scheme: a reservoir of large items, a buffer of
//! the first large arrivals and the running small-item mass.

use crate::bins::BinSpec;
use crate::crucial::{crucial_sample_size, select_crucial_items};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::materialize::materialize;
use crate::offline::{least_bins, linear_time_packing, many_large_from_crucial, many_large_xi, Branch};
use crate::params::{derive_params_with, ParamLedger, ScaledConstants};
use crate::sampling::{Reservoir, Rng};
use serde::Serialize;

pub const STREAM_ALPHA: f64 = 1.0 / 8.0;

#[derive(Debug, Clone)]
pub struct StreamState {
    n: u64,
    n_large: u64,
    s1: f64,
    x: Reservoir,
    y: Vec<f64>,
    v: usize,
    u: usize,
    ledger: ParamLedger,
    rng: Rng,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StreamAnswer {
    pub app: f64,
    pub branch: Branch,
    /// Bins from the large-item packing before the small mass.
    pub large_bins: f64,
    pub fresh_small_bins: u64,
    pub notes: Vec<String>,
}

impl StreamState {
    /// Ratio target `gamma`; `beta = gamma/30`, `eps = 6 beta`,
    /// `delta = eps/4` unless overridden, `theta = 0`.
    pub fn new(gamma: f64, overrides: ScaledConstants, seed: u64) -> Result<Self> {
        let mut ledger = derive_params_with(gamma, &BinSpec::classical(), overrides)?.with_theta(0.0)?;
        ledger.alpha = STREAM_ALPHA;
        let m = ledger.m_sampling();
        let (u_derived, _, _) = crucial_sample_size(m, ledger.alpha, ledger.mu)?;
        let u = ledger.overrides.u.unwrap_or(u_derived);
        let v_real = 2.0 * m as f64 / (ledger.beta * ledger.delta) + m as f64;
        if !v_real.is_finite() || v_real > 1e8 {
            return Err(Error::Capacity(format!(
                "buffer size v = {v_real:.3e} is too large; use scaled constants"
            )));
        }
        let v = v_real.ceil() as usize;
        Ok(StreamState {
            n: 0,
            n_large: 0,
            s1: 0.0,
            x: Reservoir::new(u)?,
            y: Vec::with_capacity(v),
            v,
            u,
            ledger,
            rng: Rng::new(seed),
        })
    }

    pub fn push(&mut self, size: f64) -> Result<()> {
        if !(size > 0.0 && size <= 1.0) {
            return Err(Error::Domain(format!("item size {size} is outside (0,1]")));
        }
        self.n += 1;
        if size < self.ledger.delta {
            self.s1 += size;
            return Ok(());
        }
        self.n_large += 1;
        if self.y.len() < self.v {
            self.y.push(size);
        }
        self.x.push(size, &mut self.rng);
        Ok(())
    }

    /// Current answer. Does not change the state.
    pub fn query(&self) -> Result<StreamAnswer> {
        if self.n == 0 {
            return Err(Error::Empty("no item has been pushed".into()));
        }
        let delta = self.ledger.delta;
        if self.n_large as usize > self.v {
            let m = self.ledger.m_sampling();
            let crucial = select_crucial_items(m, self.ledger.alpha, self.ledger.mu, self.x.slots()?, Some(self.u))?
                .ok_or_else(|| Error::Empty("reservoir not full".into()))?;
            let xi = many_large_xi(&self.ledger);
            let out = many_large_from_crucial(&self.ledger, crucial, self.s1, self.n_large as usize, xi)?;
            return Ok(StreamAnswer {
                app: out.app,
                branch: Branch::ManyLarge,
                large_bins: out.template.types_used.iter().map(|(_, x)| *x as f64).sum(),
                fresh_small_bins: out.template.fresh_small_bins,
                notes: out.notes,
            });
        }
        let (large_bins, loads) = if self.y.is_empty() {
            (0.0, vec![])
        } else {
            let inst = Instance::new(self.y.clone())?;
            let (app, template) = linear_time_packing(&inst, self.ledger.beta)?;
            let placed = materialize(&inst, &template);
            let loads: Vec<f64> = placed
                .assignment
                .bins
                .iter()
                .map(|b| b.items.iter().map(|&i| self.y[i]).sum())
                .collect();
            (app, loads)
        };
        let mut s1 = self.s1;
        for load in loads {
            let room = 1.0 - load;
            if room > delta {
                s1 = (s1 - (room - delta)).max(0.0);
            }
        }
        let k = least_bins(s1, delta);
        Ok(StreamAnswer {
            app: large_bins + k as f64,
            branch: Branch::LinearFallback,
            large_bins,
            fresh_small_bins: k,
            notes: vec![],
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn n_large(&self) -> u64 {
        self.n_large
    }

    pub fn s1(&self) -> f64 {
        self.s1
    }

    pub fn u(&self) -> usize {
        self.u
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn buffered(&self) -> &[f64] {
        &self.y
    }

    pub fn ledger(&self) -> &ParamLedger {
        &self.ledger
    }

    /// Memory slots held: `u + v`, fixed at construction.
    pub fn retained_slots(&self) -> usize {
        self.x.capacity() + self.y.capacity().max(self.v).min(self.v)
    }

    /// Reservoir slot updates so far.
    pub fn ops(&self) -> u64 {
        self.x.ops()
    }
}
