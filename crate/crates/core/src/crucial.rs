//! Approximate order statistics of the large items from a uniform sample.

use crate::error::{Error, Result};
use crate::rank::{rank_sorted, RankInterval};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrucialSet {
    /// `y_1 <= ... <= y_m`.
    pub values: Vec<f64>,
    pub m: usize,
    /// Samples read, the first `u` of the list.
    pub u: usize,
    pub gamma_sel: f64,
    /// Selection constant `u gamma^2 / ln m`.
    pub c0: f64,
    pub p_targets: Vec<f64>,
}

/// Largest sample size we are willing to derive.
pub const MAX_SAMPLE_SIZE: f64 = 1e12;

/// Sample size rule: `gamma = mu / (4m)` and the least `u` with
/// `2m exp(-gamma^2 u / 3) < alpha` and `gamma u >= 3`.
pub fn crucial_sample_size(m: usize, alpha: f64, mu: f64) -> Result<(usize, f64, f64)> {
    check(m, alpha, mu)?;
    let gamma = mu / (4.0 * m as f64);
    let g2 = gamma * gamma;
    let target = 3.0 * (2.0 * m as f64 / alpha).ln() / g2;
    if !(target < MAX_SAMPLE_SIZE) {
        return Err(Error::Capacity(format!(
            "crucial sample size {target:.3e} exceeds {MAX_SAMPLE_SIZE:.0e}"
        )));
    }
    let mut u = (3.0 / gamma).ceil().max(target.floor() + 1.0) as usize;
    while gamma * (u as f64) < 3.0 || 2.0 * m as f64 * (-g2 * u as f64 / 3.0).exp() >= alpha {
        u += 1;
    }
    while u > 1 {
        let v = u - 1;
        if gamma * (v as f64) >= 3.0 && 2.0 * m as f64 * (-g2 * v as f64 / 3.0).exp() < alpha {
            u = v;
        } else {
            break;
        }
    }
    let c0 = u as f64 * g2 / (m as f64).ln();
    Ok((u, gamma, c0))
}

fn check(m: usize, alpha: f64, mu: f64) -> Result<()> {
    if m < 2 {
        return Err(Error::Parameter(format!("crucial selection needs m >= 2, got {m}")));
    }
    for (name, v) in [("alpha", alpha), ("mu", mu)] {
        if !(v > 0.0 && v < 1.0) {
            return Err(Error::Parameter(format!("{name} must lie in (0,1), got {v}")));
        }
    }
    Ok(())
}

/// Pick `y_i` as the `ceil(i u / m)`-th smallest of the first `u` samples.
/// Returns `None` when fewer than `u` samples are available.
///
/// `u_override` replaces the derived sample size.
pub fn select_crucial_items(
    m: usize,
    alpha: f64,
    mu: f64,
    x: &[f64],
    u_override: Option<usize>,
) -> Result<Option<CrucialSet>> {
    let (u_derived, gamma_sel, _) = crucial_sample_size(m, alpha, mu)?;
    let u = u_override.unwrap_or(u_derived);
    if u == 0 {
        return Err(Error::Parameter("sample size u must be positive".into()));
    }
    if x.len() < u {
        return Ok(None);
    }
    let mut head = x[..u].to_vec();
    head.sort_by(f64::total_cmp);
    let values = (1..=m).map(|i| head[(i * u).div_ceil(m) - 1]).collect();
    Ok(Some(CrucialSet {
        values,
        m,
        u,
        gamma_sel,
        c0: u as f64 * gamma_sel * gamma_sel / (m as f64).ln(),
        p_targets: (1..=m).map(|i| i as f64 / m as f64).collect(),
    }))
}

/// Population size needed by the rank guarantee: `3 (m+1)^2 / mu`.
pub fn population_threshold(m: usize, mu: f64) -> f64 {
    3.0 * ((m + 1) as f64).powi(2) / mu
}

/// Report whether a population of `n` large items is big enough.
pub fn check_population(n: usize, m: usize, mu: f64) -> Result<()> {
    let need = population_threshold(m, mu);
    if (n as f64) < need {
        Err(Error::Precondition(format!(
            "rank guarantee needs at least {need:.0} large items, have {n}"
        )))
    } else {
        Ok(())
    }
}

impl CrucialSet {
    /// Rank intervals of every `y_i` in the sorted population.
    pub fn ranks(&self, sorted_population: &[f64]) -> Result<Vec<RankInterval>> {
        self.values.iter().map(|&y| rank_sorted(y, sorted_population)).collect()
    }

    /// Does every `y_i` have a rank within `[ih - mu h, ih + mu h]`?
    pub fn ranks_within(&self, sorted_population: &[f64], mu: f64) -> Result<bool> {
        let h = (sorted_population.len() / self.m) as f64;
        for (i, r) in self.ranks(sorted_population)?.iter().enumerate() {
            let target = (i + 1) as f64 * h;
            if !r.intersects(target - mu * h, target + mu * h) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::Rng;
    use proptest::prelude::*;

    #[test]
    fn hand_trace() {
        let c = select_crucial_items(2, 0.5, 0.5, &[0.2, 0.4, 0.6, 0.8], Some(4))
            .unwrap()
            .unwrap();
        assert_eq!(c.values, vec![0.4, 0.8]);
        assert_eq!(c.p_targets, vec![0.5, 1.0]);
    }

    #[test]
    fn too_few_samples_is_empty() {
        assert_eq!(select_crucial_items(2, 0.5, 0.5, &[0.3, 0.4, 0.5], Some(4)).unwrap(), None);
        assert!(select_crucial_items(1, 0.5, 0.5, &[0.3], None).is_err());
    }

    #[test]
    fn sample_size_is_least() {
        for &(m, alpha, mu) in &[(4usize, 0.1, 0.2), (2, 0.5, 0.5), (10, 1.0 / 12.0, 0.01)] {
            let (u, g, c0) = crucial_sample_size(m, alpha, mu).unwrap();
            let ok = |v: usize| g * v as f64 >= 3.0 && 2.0 * m as f64 * (-g * g * v as f64 / 3.0).exp() < alpha;
            assert!(ok(u));
            assert!(!ok(u - 1));
            assert!((c0 - u as f64 * g * g / (m as f64).ln()).abs() < 1e-12);
        }
    }

    #[test]
    fn huge_sample_size_is_capacity_error() {
        assert!(matches!(crucial_sample_size(100_000, 0.1, 1e-9), Err(Error::Capacity(_))));
    }

    #[test]
    fn population_guard() {
        assert!(check_population(10, 4, 0.2).is_err());
        assert!(check_population(400, 4, 0.2).is_ok());
    }

    #[test]
    fn repeated_population_gives_exact_statistics() {
        let a: Vec<f64> = (1..=12).map(|i| i as f64 / 12.0).collect();
        let x: Vec<f64> = a.iter().cycle().take(12 * 5).copied().collect();
        let c = select_crucial_items(4, 0.1, 0.2, &x, Some(60)).unwrap().unwrap();
        let expect: Vec<f64> = (1..=4).map(|i| a[(i * 12usize).div_ceil(4) - 1]).collect();
        assert_eq!(c.values, expect);
        let mut sorted = a.clone();
        sorted.sort_by(f64::total_cmp);
        assert!(c.ranks_within(&sorted, 0.0).unwrap());
    }

    #[test]
    fn rank_guarantee_on_small_run() {
        let mut rng = Rng::new(2);
        let a: Vec<f64> = (0..1000).map(|i| 0.25 + 0.75 * i as f64 / 1000.0).collect();
        let (u, _, _) = crucial_sample_size(4, 0.1, 0.2).unwrap();
        let mut fails = 0;
        for _ in 0..10 {
            let x: Vec<f64> = (0..u).map(|_| a[rng.index(a.len())]).collect();
            let c = select_crucial_items(4, 0.1, 0.2, &x, None).unwrap().unwrap();
            if !c.ranks_within(&a, 0.2).unwrap() {
                fails += 1;
            }
        }
        assert!(fails <= 1);
    }

    proptest! {
        #[test]
        fn deterministic_sorted_members_and_scale_equivariant(
            x in prop::collection::vec(0.1f64..1.0, 20..60),
            m in 2usize..6,
            scale in 0.1f64..=1.0,
        ) {
            let u = 20;
            let a = select_crucial_items(m, 0.1, 0.2, &x, Some(u)).unwrap().unwrap();
            let b = select_crucial_items(m, 0.1, 0.2, &x, Some(u)).unwrap().unwrap();
            prop_assert_eq!(&a, &b);
            prop_assert!(a.values.windows(2).all(|w| w[0] <= w[1]));
            prop_assert!(a.values.iter().all(|y| x[..u].contains(y)));
            let xs: Vec<f64> = x.iter().map(|v| v * scale).collect();
            let s = select_crucial_items(m, 0.1, 0.2, &xs, Some(u)).unwrap().unwrap();
            let expect: Vec<f64> = a.values.iter().map(|v| v * scale).collect();
            prop_assert_eq!(s.values, expect);
        }
    }
}
