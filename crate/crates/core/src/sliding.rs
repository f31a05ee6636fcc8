//! Sliding-window scheme for inputs whose items are all at least `delta`:
//! `lambda` reservoir sessions started `t = n/lambda` items apart.

use crate::bins::BinSpec;
use crate::configlp::pack_large_items;
use crate::crucial::{crucial_sample_size, select_crucial_items};
use crate::error::{Error, Result};
use crate::offline::packing_conversion;
use crate::params::{m_of, mu_of, ScaledConstants};
use crate::sampling::{Reservoir, Rng};
use serde::Serialize;

pub const WINDOW_ALPHA: f64 = 1.0 / 12.0;

#[derive(Debug, Clone)]
pub struct WindowState {
    window_n: usize,
    lambda: usize,
    t: usize,
    delta: f64,
    eps: f64,
    mu: f64,
    m: usize,
    u: usize,
    sessions: Vec<Reservoir>,
    active: Vec<bool>,
    i: u64,
    rng: Rng,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WindowAnswer {
    pub app: f64,
    pub warming: bool,
    /// Items covered by the session used.
    pub range: u64,
    pub session: usize,
}

impl WindowState {
    /// `window_n` is rounded up to a multiple of `lambda`.
    pub fn new(window_n: usize, gamma: f64, delta: f64, bins: &BinSpec, overrides: &ScaledConstants, seed: u64) -> Result<Self> {
        if window_n == 0 {
            return Err(Error::Parameter("window size must be positive".into()));
        }
        for (name, v) in [("gamma", gamma), ("delta", delta)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::Parameter(format!("{name} must lie in (0,1), got {v}")));
            }
        }
        let eps = gamma / 30.0;
        let eta = bins.eta();
        let mu = mu_of(eps, delta, eta);
        let m = overrides
            .m
            .unwrap_or_else(|| usize::try_from(m_of(eps, delta, eta)).unwrap_or(usize::MAX));
        let (u_derived, _, _) = crucial_sample_size(m, WINDOW_ALPHA, mu)?;
        let u = overrides.u.unwrap_or(u_derived);
        let lambda = overrides.lambda.unwrap_or_else(|| (100.0 / (gamma * delta)).ceil() as usize);
        if (lambda as f64) * (u as f64) > 1e8 {
            return Err(Error::Capacity(format!(
                "{lambda} sessions of {u} slots is too large; use scaled constants"
            )));
        }
        let window_n = window_n.div_ceil(lambda) * lambda;
        let t = window_n / lambda;
        let sessions = (0..lambda).map(|_| Reservoir::new(u)).collect::<Result<Vec<_>>>()?;
        Ok(WindowState {
            window_n,
            lambda,
            t,
            delta,
            eps,
            mu,
            m,
            u,
            sessions,
            active: vec![false; lambda],
            i: 0,
            rng: Rng::new(seed),
        })
    }

    pub fn push(&mut self, size: f64) -> Result<()> {
        if !(size >= self.delta && size <= 1.0) {
            return Err(Error::Domain(format!(
                "item size {size} is outside [{}, 1]",
                self.delta
            )));
        }
        self.i += 1;
        if self.i == 1 {
            self.active[0] = true;
        }
        for (s, &on) in self.sessions.iter_mut().zip(&self.active) {
            if on {
                s.push(size, &mut self.rng);
            }
        }
        let (i, t, n) = (self.i, self.t as u64, self.window_n as u64);
        if i % t == 0 {
            if i < n {
                self.active[(i / t) as usize] = true;
            } else {
                let j = self.largest();
                self.sessions[j].reset();
            }
        }
        Ok(())
    }

    fn largest(&self) -> usize {
        (0..self.lambda)
            .filter(|&j| self.active[j])
            .max_by_key(|&j| (self.sessions[j].seen(), std::cmp::Reverse(j)))
            .unwrap_or(0)
    }

    /// Ranges of the active sessions, by session index.
    pub fn ranges(&self) -> Vec<Option<u64>> {
        (0..self.lambda)
            .map(|j| self.active[j].then(|| self.sessions[j].seen()))
            .collect()
    }

    pub fn query(&self, bins: &BinSpec) -> Result<WindowAnswer> {
        let j = self.largest();
        let range = self.sessions[j].seen();
        if !self.active[j] || range == 0 {
            return Err(Error::Empty("no session has seen an item".into()));
        }
        let h = range as usize / self.m;
        if h == 0 {
            return Err(Error::Precondition(format!("range {range} is below m = {}", self.m)));
        }
        let crucial = select_crucial_items(self.m, WINDOW_ALPHA, self.mu, self.sessions[j].slots()?, Some(self.u))?
            .ok_or_else(|| Error::Empty("session not full".into()))?;
        let packing = pack_large_items(bins, &crucial.values, &vec![h; self.m], self.delta)?;
        let app = packing_conversion(h, self.m, packing.cost, self.eps, self.mu, 0.0);
        Ok(WindowAnswer {
            app,
            warming: range + (self.t as u64) < self.window_n as u64,
            range,
            session: j,
        })
    }

    pub fn window_n(&self) -> usize {
        self.window_n
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn u(&self) -> usize {
        self.u
    }

    pub fn pushed(&self) -> u64 {
        self.i
    }

    pub fn total_slots(&self) -> usize {
        self.sessions.iter().map(Reservoir::capacity).sum()
    }
}
