//! Parameter derivation for the approximation scheme, plus the optional
//! scaled-constants override block.

use crate::bins::BinSpec;
use crate::chernoff::{g1, neg_ln_g};
use crate::error::{Error, Result};
use crate::partition::Partition;
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Optional overrides for the asymptotic constants. Every field left as
/// `None` keeps its derived value.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScaledConstants {
    /// Crucial-item count used on the sampling paths.
    pub m: Option<usize>,
    /// Crucial-item sample size.
    pub u: Option<usize>,
    /// Per-interval hit threshold and first phase size of the estimator.
    pub z: Option<usize>,
    /// Phase cap for the estimator; hitting it forces an exact scan.
    pub max_phases: Option<usize>,
    /// Stopping constant of the estimator.
    pub c5: Option<f64>,
    /// Replaces the small-sum threshold that routes to the linear path.
    pub s_threshold: Option<f64>,
    /// Sliding-window session count.
    pub lambda: Option<usize>,
    /// Large-item threshold; `phi` and `gamma` follow it.
    pub delta: Option<f64>,
    /// Smallest `n` for which the `xi0` constraint must hold.
    pub n_min: Option<usize>,
}

impl ScaledConstants {
    /// Desk-scale defaults used by the test suite and the CLI examples.
    pub fn desk() -> Self {
        Self {
            m: Some(4),
            u: Some(400),
            z: Some(8),
            max_phases: Some(40),
            c5: Some(0.02),
            s_threshold: Some(50.0),
            lambda: None,
            delta: None,
            n_min: None,
        }
    }

    pub fn is_empty(&self) -> bool {
        *self == Self::default()
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let sc: Self =
            toml::from_str(text).map_err(|e| Error::Parameter(format!("scaled constants: {e}")))?;
        sc.check()?;
        Ok(sc)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    fn check(&self) -> Result<()> {
        let pos = |name: &str, v: Option<usize>, min: usize| match v {
            Some(x) if x < min => Err(Error::Parameter(format!("{name} must be >= {min}, got {x}"))),
            _ => Ok(()),
        };
        pos("m", self.m, 2)?;
        pos("u", self.u, 1)?;
        pos("z", self.z, 1)?;
        pos("max_phases", self.max_phases, 1)?;
        pos("lambda", self.lambda, 1)?;
        pos("n_min", self.n_min, 16)?;
        if let Some(c5) = self.c5 {
            if !(c5 > 0.0 && c5.is_finite()) {
                return Err(Error::Parameter(format!("c5 must be positive, got {c5}")));
            }
        }
        if let Some(s) = self.s_threshold {
            if !(s >= 0.0 && s.is_finite()) {
                return Err(Error::Parameter(format!("s_threshold must be >= 0, got {s}")));
            }
        }
        if let Some(d) = self.delta {
            if !(d > 0.0 && d < 1.0) {
                return Err(Error::Parameter(format!("delta must lie in (0,1), got {d}")));
            }
        }
        Ok(())
    }
}

/// Every derived constant of the scheme for one target ratio `tau`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParamLedger {
    pub tau: f64,
    pub beta: f64,
    pub epsilon: f64,
    pub delta: f64,
    pub theta: f64,
    pub alpha: f64,
    pub phi: f64,
    pub gamma: f64,
    pub eta: f64,
    pub c: f64,
    pub k: usize,
    pub mu: f64,
    pub epsilon1: f64,
    pub m: u64,
    pub xi0: f64,
    pub d1: u64,
    pub c0: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
    pub c5: f64,
    pub n_min: usize,
    pub overrides: ScaledConstants,
}

/// `mu = eps * delta * eta / 15`.
pub fn mu_of(epsilon: f64, delta: f64, eta: f64) -> f64 {
    epsilon * delta * eta / 15.0
}

/// `eps1 = eps / (eps + 2)`.
pub fn epsilon1_of(epsilon: f64) -> f64 {
    epsilon / (epsilon + 2.0)
}

/// `m = 18 / (delta * eta) * ceil(eps1^-2)`.
pub fn m_of(epsilon: f64, delta: f64, eta: f64) -> u64 {
    let e1 = epsilon1_of(epsilon);
    let ceil = (1.0 / (e1 * e1)).ceil();
    (18.0 / (delta * eta) * ceil).round() as u64
}

/// Least positive integer `d1` with `g1(1/2)^(d1 / (1 - delta)) < alpha`.
pub fn d1_of(delta: f64, alpha: f64) -> Result<u64> {
    let base = g1(0.5f64)?;
    let mut d1 = ((1.0 - delta) * alpha.ln() / base.ln()).floor().max(1.0) as u64;
    while base.powf(d1 as f64 / (1.0 - delta)) >= alpha {
        d1 += 1;
    }
    Ok(d1)
}

/// `xi0 = 8 / ln(1/g(theta))`, raised when needed so that
/// `8 (k+1) ln n g(theta)^(z/2) < alpha` holds for every `n >= n_min`.
pub fn xi0_of(theta: f64, alpha: f64, part_k: f64, n_min: usize) -> Result<f64> {
    let l = neg_ln_g(theta)?;
    let base = 8.0 / l;
    let lnn = (n_min as f64).ln();
    let lnlnn = lnn.ln();
    // with z >= xi0 ln ln n the left side is 8 (k+1) (ln n)^(1 - xi0 l / 2)
    let need = 2.0 / l * (1.0 + (8.0 * (part_k + 1.0) / alpha).ln() / lnlnn);
    Ok(base.max(need * (1.0 + 1e-12)))
}

fn open_unit(name: &str, x: f64) -> Result<()> {
    if x > 0.0 && x < 1.0 {
        Ok(())
    } else {
        Err(Error::Parameter(format!("{name} must lie in (0,1), got {x}")))
    }
}

/// Derive the full ledger for ratio `tau` with the derived constants.
pub fn derive_params(tau: f64, bins: &BinSpec) -> Result<ParamLedger> {
    derive_params_with(tau, bins, ScaledConstants::default())
}

pub fn derive_params_with(tau: f64, bins: &BinSpec, overrides: ScaledConstants) -> Result<ParamLedger> {
    open_unit("tau", tau)?;
    overrides.check()?;
    let beta = tau / 30.0;
    let epsilon = 6.0 * beta;
    let delta = epsilon / 4.0;
    let theta = epsilon * delta / 36.0;
    let alpha = 1.0 / 12.0;
    let phi = delta;
    let gamma = delta.powi(3);
    let eta = bins.eta();
    let n_min = overrides.n_min.unwrap_or(16);

    let mu = mu_of(epsilon, delta, eta);
    let epsilon1 = epsilon1_of(epsilon);
    let m = m_of(epsilon, delta, eta);
    let d1 = d1_of(delta, alpha)?;

    let probe = Partition::build(phi, delta, gamma, n_min)?;
    let xi0 = xi0_of(theta, alpha, probe.count_bound() as f64, n_min)?;

    let c0 = 0.01;
    let c2 = 1.0 / (3.0 * (1.0 + delta) * c0);
    let c3 = delta.powi(4) / (2.0 * (1.0 + delta));
    let c4 = 8.0 / ((1.0 - theta) * (1.0 - delta) * phi * c0);
    let c5 = 12.0 * xi0 / ((1.0 - theta) * c2 * c3);

    ParamLedger {
        tau,
        beta,
        epsilon,
        delta,
        theta,
        alpha,
        phi,
        gamma,
        eta,
        c: bins.c(),
        k: bins.k(),
        mu,
        epsilon1,
        m,
        xi0,
        d1,
        c0,
        c2,
        c3,
        c4,
        c5,
        n_min,
        overrides,
    }
    .apply_delta_override()
}

impl ParamLedger {
    fn apply_delta_override(self) -> Result<Self> {
        match self.overrides.delta {
            Some(d) => self.with_delta(d),
            None => Ok(self),
        }
    }

    /// Estimator threshold `z = max(1, ceil(xi0 ln ln n))`, or the override.
    /// For `n <= 3` the double log is not positive and `n` is returned,
    /// which forces the exact scan.
    pub fn z(&self, n: usize) -> usize {
        if let Some(z) = self.overrides.z {
            return z;
        }
        if n <= 3 {
            return n;
        }
        let v = self.xi0 * (n as f64).ln().ln();
        if !v.is_finite() || v >= n as f64 {
            return n;
        }
        (v.ceil() as usize).max(1)
    }

    /// Stopping constant in force.
    pub fn c5_eff(&self) -> f64 {
        self.overrides.c5.unwrap_or(self.c5)
    }

    /// Crucial-item count on the sampling paths.
    pub fn m_sampling(&self) -> usize {
        self.overrides
            .m
            .unwrap_or_else(|| usize::try_from(self.m).unwrap_or(usize::MAX))
    }

    pub fn max_phases(&self) -> usize {
        self.overrides.max_phases.unwrap_or(usize::MAX)
    }

    /// Threshold on the estimated sum below which the linear path runs.
    pub fn s_threshold(&self) -> f64 {
        if let Some(s) = self.overrides.s_threshold {
            return s;
        }
        let (m, th, d, b) = (self.m as f64, self.theta, self.delta, self.beta);
        let a = 4.0 * m / (th * d * d);
        let bb = 4.0 / (d * d) * (1.0 + th) * m / th;
        let cc = 16.0 / (d * d) * (1.0 + th) / (b * d);
        a.max(bb).max(cc)
    }

    pub fn is_scaled(&self) -> bool {
        !self.overrides.is_empty()
    }

    pub fn partition(&self, n: usize) -> Result<Partition> {
        Partition::build(self.phi, self.delta, self.gamma, n.max(2))
    }

    /// The same ledger with `theta` replaced, for paths that know their
    /// large-item count exactly.
    pub fn with_theta(&self, theta: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&theta) {
            return Err(Error::Parameter(format!("theta must lie in [0,1), got {theta}")));
        }
        let mut out = self.clone();
        out.theta = theta;
        if theta == 0.0 {
            out.xi0 = f64::INFINITY;
        } else {
            let probe = Partition::build(self.phi, self.delta, self.gamma, self.n_min)?;
            out.xi0 = xi0_of(theta, self.alpha, probe.count_bound() as f64, self.n_min)?;
        }
        out.c4 = 8.0 / ((1.0 - theta) * (1.0 - self.delta) * self.phi * self.c0);
        out.c5 = 12.0 * out.xi0 / ((1.0 - theta) * self.c2 * self.c3);
        Ok(out)
    }

    /// The same ledger with a different large-item threshold. `phi` follows
    /// `delta`, and `gamma = delta^3`.
    pub fn with_delta(&self, delta: f64) -> Result<Self> {
        open_unit("delta", delta)?;
        let mut out = self.clone();
        out.delta = delta;
        out.phi = delta;
        out.gamma = delta.powi(3);
        out.mu = mu_of(self.epsilon, delta, self.eta);
        out.m = m_of(self.epsilon, delta, self.eta);
        out.d1 = d1_of(delta, self.alpha)?;
        out.c2 = 1.0 / (3.0 * (1.0 + delta) * self.c0);
        out.c3 = delta.powi(4) / (2.0 * (1.0 + delta));
        out.with_theta(self.theta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs().max(1e-300)
    }

    #[test]
    fn tau_point_three() {
        let p = derive_params(0.3, &BinSpec::classical()).unwrap();
        assert!(close(p.beta, 0.01, 1e-12));
        assert!(close(p.epsilon, 0.06, 1e-12));
        assert!(close(p.delta, 0.015, 1e-12));
        assert!(close(p.theta, 0.000025, 1e-12));
        assert!(close(p.phi, 0.015, 1e-12));
        assert!(close(p.gamma, 3.375e-6, 1e-9));
        assert!(close(p.mu, 6e-5, 1e-12));
        assert!((p.epsilon1 - 0.029126).abs() < 1e-6);
        assert_eq!(p.m, 1_414_800);
        assert_eq!(p.d1, 20);
        assert!(close(p.c0, 0.01, 0.0));
    }

    #[test]
    fn c_constants_follow_definitions() {
        let p = derive_params(0.5, &BinSpec::classical()).unwrap();
        let d = p.delta;
        assert!(close(p.c2, 1.0 / (3.0 * (1.0 + d) * 0.01), 1e-12));
        assert!(close(p.c3, d.powi(4) / (2.0 * (1.0 + d)), 1e-12));
        assert!(close(p.c4, 8.0 / ((1.0 - p.theta) * (1.0 - d) * d * 0.01), 1e-12));
        assert!(close(p.c5, 12.0 * p.xi0 / ((1.0 - p.theta) * p.c2 * p.c3), 1e-12));
    }

    #[test]
    fn xi0_constraint_holds_from_n_min() {
        let p = derive_params(0.5, &BinSpec::classical()).unwrap();
        let l = neg_ln_g(p.theta).unwrap();
        assert!(p.xi0 >= 8.0 / l);
        for &n in &[16usize, 100, 10_000, 1 << 30] {
            let part = p.partition(n).unwrap();
            let lnn = (n as f64).ln();
            let z = (p.xi0 * lnn.ln()).ceil();
            // ln of 8 (k+1) ln n g^(z/2)
            let lhs = (8.0 * (part.interval_count() as f64 + 1.0) * lnn).ln() - l * z / 2.0;
            assert!(lhs < p.alpha.ln(), "n={n}");
        }
    }

    #[test]
    fn d1_is_least() {
        for &(delta, alpha) in &[(0.015, 1.0 / 12.0), (0.25, 0.1), (0.5, 0.5)] {
            let d1 = d1_of(delta, alpha).unwrap();
            let g = g1(0.5f64).unwrap();
            assert!(g.powf(d1 as f64 / (1.0 - delta)) < alpha);
            if d1 > 1 {
                assert!(g.powf((d1 - 1) as f64 / (1.0 - delta)) >= alpha);
            }
        }
    }

    #[test]
    fn z_floors() {
        let p = derive_params(0.5, &BinSpec::classical()).unwrap();
        assert_eq!(p.z(3), 3);
        assert_eq!(p.z(1000), 1000);
        let s = derive_params_with(0.5, &BinSpec::classical(), ScaledConstants::desk()).unwrap();
        assert_eq!(s.z(1000), 8);
        assert_eq!(s.m_sampling(), 4);
        assert!(s.is_scaled());
    }

    #[test]
    fn tau_out_of_range() {
        assert!(derive_params(0.0, &BinSpec::classical()).is_err());
        assert!(derive_params(1.0, &BinSpec::classical()).is_err());
    }

    #[test]
    fn pure_function() {
        let b = BinSpec::classical();
        assert_eq!(derive_params(0.37, &b).unwrap(), derive_params(0.37, &b).unwrap());
    }

    #[test]
    fn toml_overrides() {
        let sc = ScaledConstants::from_toml_str("m = 3\nu = 200\nz = 6\nmax_phases = 30\n").unwrap();
        assert_eq!(sc.m, Some(3));
        assert_eq!(sc.c5, None);
        assert!(ScaledConstants::from_toml_str("m = 1").is_err());
        assert!(ScaledConstants::from_toml_str("bogus = 1").is_err());
    }

    #[test]
    fn theta_zero_ledger() {
        let p = derive_params(0.5, &BinSpec::classical()).unwrap().with_theta(0.0).unwrap();
        assert_eq!(p.theta, 0.0);
        assert!(p.xi0.is_infinite());
        assert_eq!(p.z(1 << 20), 1 << 20);
    }
}
