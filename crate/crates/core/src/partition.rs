//! Geometric `(phi, delta, gamma)`-partitions of `(0, 1]`.

use crate::error::{Error, Result};

/// Decreasing boundaries `1 = pi_0 > pi_1 = phi > ... > pi_{k-1}` where
/// `pi_i = pi_{i-1} (1 - delta)` and `pi_{k-1}` is the first boundary at or
/// below `gamma / n^2`.
///
/// Intervals are numbered from 1: `I_1 = [pi_1, pi_0]`,
/// `I_j = (pi_j, pi_{j-1}]` for `1 < j < k`, and `I_k = (0, pi_{k-1}]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    pub phi: f64,
    pub delta: f64,
    pub gamma: f64,
    pub n: usize,
    boundaries: Vec<f64>,
}

fn unit_open(name: &str, x: f64) -> Result<()> {
    if x > 0.0 && x < 1.0 {
        Ok(())
    } else {
        Err(Error::Parameter(format!("{name} must lie in (0,1), got {x}")))
    }
}

impl Partition {
    pub fn build(phi: f64, delta: f64, gamma: f64, n: usize) -> Result<Self> {
        unit_open("phi", phi)?;
        unit_open("delta", delta)?;
        unit_open("gamma", gamma)?;
        if n < 2 {
            return Err(Error::Parameter(format!("partition needs n >= 2, got {n}")));
        }
        let floor = gamma / (n as f64 * n as f64);
        let mut boundaries = vec![1.0, phi];
        while *boundaries.last().unwrap() > floor {
            let next = boundaries.last().unwrap() * (1.0 - delta);
            boundaries.push(next);
        }
        Ok(Self {
            phi,
            delta,
            gamma,
            n,
            boundaries,
        })
    }

    /// `pi_0 .. pi_{k-1}`.
    pub fn boundaries(&self) -> &[f64] {
        &self.boundaries
    }

    /// Number of intervals `k`.
    pub fn interval_count(&self) -> usize {
        self.boundaries.len()
    }

    /// Lower end of interval `j` (1-based); `I_k` uses 0.
    pub fn lower(&self, j: usize) -> f64 {
        debug_assert!(j >= 1 && j <= self.interval_count());
        if j < self.interval_count() {
            self.boundaries[j]
        } else {
            0.0
        }
    }

    /// 1-based index of the interval containing `x` in `(0, 1]`.
    pub fn classify(&self, x: f64) -> usize {
        if x >= self.boundaries[1] {
            return 1;
        }
        // boundaries strictly decrease; find the first index j with pi_j < x
        let idx = self.boundaries.partition_point(|&b| b >= x);
        idx.min(self.interval_count())
    }

    /// Upper bound on the interval count from the recurrence length.
    pub fn count_bound(&self) -> usize {
        let n = self.n as f64;
        ((n * n / self.gamma).ln() / -(1.0 - self.delta).ln()).ceil() as usize + 2
    }
}
