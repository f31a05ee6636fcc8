//! Uniform sampling, the phase-doubling interval estimator, and the
//! per-slot reservoir.

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::params::ParamLedger;
use crate::partition::Partition;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Seeded deterministic generator. Same seed and call sequence, same output.
#[derive(Debug, Clone)]
pub struct Rng {
    seed: u64,
    inner: ChaCha8Rng,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniform in `0..n`. Panics if `n == 0`.
    pub fn index(&mut self, n: usize) -> usize {
        self.inner.gen_range(0..n)
    }

    /// Uniform in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        self.inner.gen::<f64>()
    }

    /// Uniform in `[a, b)`.
    pub fn uniform(&mut self, a: f64, b: f64) -> f64 {
        if a == b {
            a
        } else {
            self.inner.gen_range(a..b)
        }
    }

    /// A child generator whose stream depends only on this one's state.
    pub fn fork(&mut self) -> Self {
        Self::new(self.inner.gen())
    }

    pub(crate) fn inner(&mut self) -> &mut ChaCha8Rng {
        &mut self.inner
    }
}

/// One uniform draw from `inst`: `(zero-based index, size)`.
pub fn uniform_sample(inst: &Instance, rng: &mut Rng) -> Result<(usize, f64)> {
    inst.probe().sample(rng)
}

/// Output of [`approximate_intervals`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimatorReport {
    /// Estimate of the total size.
    pub app_w: f64,
    /// Estimate of the total size of items below `phi`.
    pub app_w_small: f64,
    /// Estimated count of items of size at least `phi`.
    pub c_hat_large: f64,
    /// Per-interval count estimates, `c_hat[j - 1]` for interval `j`.
    pub c_hat: Vec<f64>,
    pub samples_used: u64,
    pub phases: usize,
    pub exact_fallback: bool,
    /// Sample size of the final phase (0 if none ran).
    pub final_m: usize,
    pub z: usize,
}

fn exact_report(
    part: &Partition,
    inst: &Instance,
    reads_before: u64,
    phases: usize,
    final_m: usize,
    z: usize,
) -> EstimatorReport {
    let mut probe = inst.probe();
    let k = part.interval_count();
    let mut counts = vec![0.0; k];
    let mut total = 0.0;
    let mut small = 0.0;
    for x in probe.scan() {
        total += x;
        if x < part.phi {
            small += x;
        }
        counts[part.classify(x) - 1] += 1.0;
    }
    EstimatorReport {
        app_w: total,
        app_w_small: small,
        c_hat_large: counts[0],
        c_hat: counts,
        samples_used: reads_before + probe.reads(),
        phases,
        exact_fallback: true,
        final_m,
        z,
    }
}

/// Phase-doubling estimate of interval counts and size sums.
///
/// Phase `t` draws `m_t = 2^t z` fresh samples and estimates each interval
/// count as `(n / m_t) d_j` if `d_j >= z`, else 0. Phases continue while
/// the size estimate stays below `c5 n ln ln n / (c0 m_t)`. When `m_t`
/// reaches `n`, or the phase cap in force is hit, the answer is computed
/// by one exact scan.
pub fn approximate_intervals(
    ledger: &ParamLedger,
    part: &Partition,
    inst: &Instance,
    rng: &mut Rng,
) -> Result<EstimatorReport> {
    let n = inst.len();
    if n == 0 {
        return Err(Error::Empty("estimator called on an empty instance".into()));
    }
    let z = ledger.z(n);
    if n <= 3 || z >= n {
        return Ok(exact_report(part, inst, 0, 0, 0, z));
    }
    let nf = n as f64;
    let lnln = nf.ln().ln();
    let budget = ledger.c5_eff() * nf * lnln / ledger.c0;
    let k = part.interval_count();
    let cap = ledger.max_phases();

    let mut probe = inst.probe();
    let mut d = vec![0usize; k];
    let mut c_hat = vec![0.0; k];
    let mut m_prev = z;
    let mut phases = 0;
    loop {
        let m_t = m_prev.saturating_mul(2);
        phases += 1;
        if m_t >= n {
            let reads = probe.reads();
            return Ok(exact_report(part, inst, reads, phases, m_t, z));
        }
        d.iter_mut().for_each(|x| *x = 0);
        for _ in 0..m_t {
            let (_, a) = probe.sample(rng)?;
            d[part.classify(a) - 1] += 1;
        }
        let scale = nf / m_t as f64;
        let mut app_w = 0.0;
        let mut app_small = 0.0;
        for j in 1..=k {
            c_hat[j - 1] = if d[j - 1] >= z { scale * d[j - 1] as f64 } else { 0.0 };
            let contrib = c_hat[j - 1] * part.lower(j);
            app_w += contrib;
            if j > 1 {
                app_small += contrib;
            }
        }
        if app_w <= budget / m_t as f64 {
            if phases >= cap {
                let reads = probe.reads();
                return Ok(exact_report(part, inst, reads, phases, m_t, z));
            }
            m_prev = m_t;
            continue;
        }
        return Ok(EstimatorReport {
            app_w,
            app_w_small: app_small,
            c_hat_large: c_hat[0],
            c_hat,
            samples_used: probe.reads(),
            phases,
            exact_fallback: false,
            final_m: m_t,
            z,
        });
    }
}

/// `u` slots, each independently holding a uniform element of the stream
/// seen so far: on the `j`-th arrival every slot is overwritten with
/// probability `1/j`.
#[derive(Debug, Clone)]
pub struct Reservoir {
    slots: Vec<f64>,
    seen: u64,
    ops: u64,
}

impl Reservoir {
    pub fn new(u: usize) -> Result<Self> {
        if u == 0 {
            return Err(Error::Parameter("reservoir needs u >= 1".into()));
        }
        Ok(Self {
            slots: vec![0.0; u],
            seen: 0,
            ops: 0,
        })
    }

    pub fn push(&mut self, x: f64, rng: &mut Rng) {
        self.seen += 1;
        if self.seen == 1 {
            self.slots.iter_mut().for_each(|s| *s = x);
            self.ops += self.slots.len() as u64;
            return;
        }
        let j = self.seen;
        for s in self.slots.iter_mut() {
            if rng.inner().gen_range(0..j) == 0 {
                *s = x;
            }
        }
        self.ops += self.slots.len() as u64;
    }

    /// Restart the session: no element seen, slots keep their storage.
    pub fn reset(&mut self) {
        self.seen = 0;
    }

    pub fn seen(&self) -> u64 {
        self.seen
    }

    pub fn capacity(&self) -> usize {
        self.slots.len()
    }

    /// Slot updates performed so far.
    pub fn ops(&self) -> u64 {
        self.ops
    }

    pub fn slots(&self) -> Result<&[f64]> {
        if self.seen == 0 {
            Err(Error::Empty("reservoir has seen no element".into()))
        } else {
            Ok(&self.slots)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bins::BinSpec;
    use crate::params::{derive_params_with, ScaledConstants};

    fn scaled() -> ParamLedger {
        derive_params_with(0.5, &BinSpec::classical(), ScaledConstants::desk()).unwrap()
    }

    #[test]
    fn rng_is_deterministic() {
        let mut a = Rng::new(7);
        let mut b = Rng::new(7);
        let xs: Vec<usize> = (0..50).map(|_| a.index(1000)).collect();
        let ys: Vec<usize> = (0..50).map(|_| b.index(1000)).collect();
        assert_eq!(xs, ys);
        assert_ne!(xs, (0..50).map(|_| Rng::new(8).index(1000)).collect::<Vec<_>>());
    }

    #[test]
    fn single_item_always_index_zero() {
        let inst = Instance::new(vec![0.3]).unwrap();
        let mut rng = Rng::new(1);
        for _ in 0..20 {
            assert_eq!(uniform_sample(&inst, &mut rng).unwrap(), (0, 0.3));
        }
        assert!(uniform_sample(&Instance::empty(), &mut rng).is_err());
    }

    #[test]
    fn four_way_uniformity() {
        let inst = Instance::new(vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        let mut rng = Rng::new(99);
        let mut counts = [0usize; 4];
        for _ in 0..40_000 {
            counts[uniform_sample(&inst, &mut rng).unwrap().0] += 1;
        }
        for c in counts {
            let f = c as f64 / 40_000.0;
            assert!((0.23..=0.27).contains(&f), "{counts:?}");
        }
        // chi-square with 3 dof, critical value 16.27 at 0.001
        let chi: f64 = counts.iter().map(|&c| (c as f64 - 10_000.0).powi(2) / 10_000.0).sum();
        assert!(chi < 16.27);
    }

    #[test]
    fn example_two_falls_back_to_exact_scan() {
        let n = 10_000;
        let mut items = vec![1.0; 3];
        items.extend(std::iter::repeat(1.0 / (n as f64 * n as f64)).take(n - 3));
        let inst = Instance::new(items).unwrap();
        let led = scaled();
        let part = led.partition(n).unwrap();
        let r = approximate_intervals(&led, &part, &inst, &mut Rng::new(3)).unwrap();
        assert!(r.exact_fallback);
        let truth: f64 = inst.items().iter().sum();
        assert_eq!(r.app_w.to_bits(), truth.to_bits());
    }

    #[test]
    fn unit_items_stop_quickly() {
        let inst = Instance::new(vec![1.0; 1000]).unwrap();
        let led = scaled();
        let part = led.partition(1000).unwrap();
        let r = approximate_intervals(&led, &part, &inst, &mut Rng::new(5)).unwrap();
        assert!(!r.exact_fallback);
        // every item lands in I_1, whose lower end is phi
        assert_eq!(r.app_w, 1000.0 * led.phi);
        assert_eq!(r.c_hat_large, 1000.0);
        assert_eq!(r.app_w_small, 0.0);
        // stop once phi * n > c5 n lnln n / (c0 m_t); the sum over phases is < 2 m_t
        let lnln = 1000f64.ln().ln();
        let bound = 4.0 * led.c5_eff() * lnln / (led.c0 * led.phi);
        assert!((r.samples_used as f64) <= bound, "{} > {bound}", r.samples_used);
        assert!(r.phases <= 6);
    }

    #[test]
    fn accounting_and_doubling() {
        let n = 100_000;
        let mut items = vec![1.0; 3];
        items.extend(std::iter::repeat(0.1).take(n - 3));
        let inst = Instance::new(items).unwrap();
        let led = scaled();
        let part = led.partition(n).unwrap();
        for seed in 0..20 {
            let r = approximate_intervals(&led, &part, &inst, &mut Rng::new(seed)).unwrap();
            assert!(!r.exact_fallback);
            let expect: u64 = (1..=r.phases).map(|t| (led.z(n) << t) as u64).sum();
            assert_eq!(r.samples_used, expect);
            assert!(r.samples_used < 2 * r.final_m as u64);
            assert!(r.phases as f64 <= (n as f64).log2() + 1.0);
            let unit = n as f64 / r.final_m as f64;
            for &c in &r.c_hat {
                assert!(c == 0.0 || c >= r.z as f64 * unit - 1e-9);
            }
        }
    }

    #[test]
    fn tiny_n_is_exact() {
        let inst = Instance::new(vec![0.5, 0.25]).unwrap();
        let led = scaled();
        let part = led.partition(2).unwrap();
        let r = approximate_intervals(&led, &part, &inst, &mut Rng::new(1)).unwrap();
        assert!(r.exact_fallback);
        assert_eq!(r.app_w, 0.75);
        assert_eq!(r.samples_used, 2);
    }

    #[test]
    fn reservoir_first_element_fills_all() {
        let mut r = Reservoir::new(3).unwrap();
        assert!(r.slots().is_err());
        r.push(0.7, &mut Rng::new(0));
        assert_eq!(r.slots().unwrap(), &[0.7, 0.7, 0.7]);
    }

    #[test]
    fn reservoir_law_and_independence() {
        let trials = 50_000;
        let mut rng = Rng::new(11);
        let mut marg = [[0usize; 5]; 2];
        let mut joint = [[0usize; 5]; 5];
        for _ in 0..trials {
            let mut r = Reservoir::new(2).unwrap();
            for v in 0..5 {
                r.push(v as f64, &mut rng);
            }
            let s = r.slots().unwrap();
            let (a, b) = (s[0] as usize, s[1] as usize);
            marg[0][a] += 1;
            marg[1][b] += 1;
            joint[a][b] += 1;
        }
        for slot in marg {
            for c in slot {
                assert!((c as f64 / trials as f64 - 0.2).abs() <= 0.02);
            }
        }
        // chi-square independence, 16 dof, critical value 39.25 at 0.001
        let mut chi = 0.0;
        for a in 0..5 {
            for b in 0..5 {
                let e = marg[0][a] as f64 * marg[1][b] as f64 / trials as f64;
                chi += (joint[a][b] as f64 - e).powi(2) / e;
            }
        }
        assert!(chi < 39.25, "chi={chi}");
    }
}
