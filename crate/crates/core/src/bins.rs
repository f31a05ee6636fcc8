use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// One kind of bin: a capacity and the cost of opening it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BinKind {
    pub size: f64,
    pub cost: f64,
}

/// A `(c, eta, k)`-related family of bin kinds: every size lies in
/// `[c, 1]` and every cost in `[eta, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinSpec {
    kinds: Vec<BinKind>,
    c: f64,
    eta: f64,
}

impl BinSpec {
    /// Builds a family with `c` and `eta` taken as the smallest size and cost.
    pub fn new(kinds: Vec<BinKind>) -> Result<Self> {
        if kinds.is_empty() {
            return Err(Error::Parameter("a bin family needs at least one kind".into()));
        }
        let c = kinds.iter().map(|k| k.size).fold(f64::INFINITY, f64::min);
        let eta = kinds.iter().map(|k| k.cost).fold(f64::INFINITY, f64::min);
        Self::with_bounds(kinds, c, eta)
    }

    pub fn with_bounds(kinds: Vec<BinKind>, c: f64, eta: f64) -> Result<Self> {
        if !(c > 0.0 && c <= 1.0) || !(eta > 0.0 && eta <= 1.0) {
            return Err(Error::Parameter(format!("need 0 < c, eta <= 1, got c={c}, eta={eta}")));
        }
        if kinds.is_empty() {
            return Err(Error::Parameter("a bin family needs at least one kind".into()));
        }
        for k in &kinds {
            if !(k.size >= c && k.size <= 1.0) || !(k.cost >= eta && k.cost <= 1.0) {
                return Err(Error::Parameter(format!(
                    "bin kind (size {}, cost {}) outside [c,1]x[eta,1]",
                    k.size, k.cost
                )));
            }
        }
        Ok(Self { kinds, c, eta })
    }

    /// The classical family: a single unit bin of unit cost.
    pub fn classical() -> Self {
        Self {
            kinds: vec![BinKind { size: 1.0, cost: 1.0 }],
            c: 1.0,
            eta: 1.0,
        }
    }

    pub fn kinds(&self) -> &[BinKind] {
        &self.kinds
    }

    pub fn k(&self) -> usize {
        self.kinds.len()
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn is_classical(&self) -> bool {
        self.kinds.len() == 1 && self.kinds[0].size == 1.0 && self.kinds[0].cost == 1.0
    }

    pub fn max_size(&self) -> f64 {
        self.kinds.iter().map(|k| k.size).fold(0.0, f64::max)
    }

    /// Cheapest cost per unit of capacity over all kinds.
    pub fn min_cost_density(&self) -> f64 {
        self.kinds
            .iter()
            .map(|k| k.cost / k.size)
            .fold(f64::INFINITY, f64::min)
    }
}
