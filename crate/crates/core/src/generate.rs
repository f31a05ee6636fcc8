//! Instance families: uniform, no-tiny-items, fixed total size, the two
//! worked examples, the lower-bound lists and a three-partition family.

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::sampling::Rng;
use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Uniform { a: f64, b: f64 },
    SDelta { delta: f64 },
    /// Total size `n^b`.
    SigmaPower { b: f64 },
    Example1,
    Example2,
    /// `f = floor(n^b)`.
    LowerboundList1 { b: f64 },
    LowerboundList2 { b: f64 },
    ThreePartitionLike,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub family: Family,
    pub n: usize,
    pub seed: u64,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Uniform { a, b } => write!(f, "uniform:{a}:{b}"),
            Family::SDelta { delta } => write!(f, "s_delta:{delta}"),
            Family::SigmaPower { b } => write!(f, "sigma_power:{b}"),
            Family::Example1 => write!(f, "example1"),
            Family::Example2 => write!(f, "example2"),
            Family::LowerboundList1 { b } => write!(f, "lowerbound_list1:{b}"),
            Family::LowerboundList2 { b } => write!(f, "lowerbound_list2:{b}"),
            Family::ThreePartitionLike => write!(f, "three_partition_like"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// `name[:p1[:p2]]`, for example `uniform:0.1:0.9` or `sigma_power:0.5`.
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(':');
        let name = parts.next().unwrap_or_default();
        let args: Vec<f64> = parts
            .map(|p| p.parse().map_err(|_| Error::Parameter(format!("bad family parameter {p:?}"))))
            .collect::<Result<_>>()?;
        let want = |k: usize| -> Result<()> {
            if args.len() == k {
                Ok(())
            } else {
                Err(Error::Parameter(format!("family {name} takes {k} parameter(s)")))
            }
        };
        let fam = match name {
            "uniform" => {
                want(2)?;
                Family::Uniform { a: args[0], b: args[1] }
            }
            "s_delta" => {
                want(1)?;
                Family::SDelta { delta: args[0] }
            }
            "sigma_power" => {
                want(1)?;
                Family::SigmaPower { b: args[0] }
            }
            "example1" => {
                want(0)?;
                Family::Example1
            }
            "example2" => {
                want(0)?;
                Family::Example2
            }
            "lowerbound_list1" => {
                want(1)?;
                Family::LowerboundList1 { b: args[0] }
            }
            "lowerbound_list2" => {
                want(1)?;
                Family::LowerboundList2 { b: args[0] }
            }
            "three_partition_like" => {
                want(0)?;
                Family::ThreePartitionLike
            }
            _ => return Err(Error::Parameter(format!("unknown family {name:?}"))),
        };
        Ok(fam)
    }
}

fn unit_exponent(b: f64) -> Result<()> {
    if b > 0.0 && b <= 1.0 {
        Ok(())
    } else {
        Err(Error::Parameter(format!("exponent must lie in (0,1], got {b}")))
    }
}

/// Sizes proportional to `raw` with total `target`, none above 1.
fn water_fill(raw: &[f64], target: f64) -> Vec<f64> {
    let mut out = vec![0.0; raw.len()];
    let mut capped = vec![false; raw.len()];
    loop {
        let fixed = capped.iter().filter(|&&c| c).count() as f64;
        let free: f64 = raw.iter().zip(&capped).filter(|(_, &c)| !c).map(|(r, _)| r).sum();
        if free <= 0.0 {
            return out;
        }
        let scale = (target - fixed) / free;
        let mut changed = false;
        for i in 0..raw.len() {
            if capped[i] {
                out[i] = 1.0;
            } else {
                out[i] = raw[i] * scale;
                if out[i] > 1.0 {
                    capped[i] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            return out;
        }
    }
}

/// Integer `f = floor(n^b)` and the list-1 sizes from the lower-bound
/// construction: `m = 2(f - 2)` items of `1/2 + 1/(2(f-2))` and `n - m`
/// items of `1/(n - m)`.
fn lowerbound_params(n: usize, b: f64) -> Result<(usize, usize, f64)> {
    unit_exponent(b)?;
    let f = (n as f64).powf(b).floor() as usize;
    if f < 3 || 2 * (f - 2) >= n {
        return Err(Error::Parameter(format!("n = {n} too small for f(n) = {f}")));
    }
    let m = 2 * (f - 2);
    Ok((f, m, 1.0 / (n - m) as f64))
}

pub fn generate(spec: &GeneratorSpec) -> Result<Instance> {
    let n = spec.n;
    let mut rng = Rng::new(spec.seed);
    let mut items: Vec<f64> = match spec.family {
        Family::Uniform { a, b } => {
            if !(a > 0.0 && a <= b && b <= 1.0) {
                return Err(Error::Parameter(format!("need 0 < a <= b <= 1, got {a}, {b}")));
            }
            (0..n).map(|_| rng.uniform(a, b)).collect()
        }
        Family::SDelta { delta } => {
            if !(delta > 0.0 && delta <= 1.0) {
                return Err(Error::Parameter(format!("delta must lie in (0,1], got {delta}")));
            }
            (0..n).map(|_| rng.uniform(delta, 1.0)).collect()
        }
        Family::SigmaPower { b } => {
            unit_exponent(b)?;
            let raw: Vec<f64> = (0..n).map(|_| rng.uniform(0.5, 1.5)).collect();
            water_fill(&raw, (n as f64).powf(b))
        }
        Family::Example1 => {
            if n < 3 {
                return Err(Error::Parameter("example1 needs n >= 3".into()));
            }
            let mut v = vec![1.0; 3];
            v.extend(std::iter::repeat(0.1).take(n - 3));
            v
        }
        Family::Example2 => {
            if n < 3 {
                return Err(Error::Parameter("example2 needs n >= 3".into()));
            }
            let tiny = 1.0 / (n as f64 * n as f64);
            let mut v = vec![1.0; 3];
            v.extend(std::iter::repeat(tiny).take(n - 3));
            v
        }
        Family::LowerboundList1 { b } => {
            let (f, m, g) = lowerbound_params(n, b)?;
            let mut v = vec![0.5 + 1.0 / (2.0 * (f - 2) as f64); m];
            v.extend(std::iter::repeat(g).take(n - m));
            v
        }
        Family::LowerboundList2 { b } => {
            let (f, _, g) = lowerbound_params(n, b)?;
            let tau = (n - f) as f64 * g / f as f64;
            let mut v = vec![1.0 - tau; f];
            v.extend(std::iter::repeat(g).take(n - f));
            v
        }
        Family::ThreePartitionLike => {
            if n % 3 != 0 {
                return Err(Error::Parameter(format!("three_partition_like needs n divisible by 3, got {n}")));
            }
            let mut v = Vec::with_capacity(n);
            for _ in 0..n / 3 {
                let a = rng.uniform(0.26, 0.48);
                let lo = (0.26f64).max(1.0 - a - 0.48);
                let hi = (0.48f64).min(1.0 - a - 0.26);
                let b = rng.uniform(lo, hi);
                v.extend([a, b, 1.0 - a - b]);
            }
            v
        }
    };
    items.shuffle(rng.inner());
    let inst = Instance::new(items)?;
    check_family(&spec.family, n, &inst)?;
    Ok(inst)
}

/// Post-generation check of the family's defining constraint.
pub fn check_family(family: &Family, n: usize, inst: &Instance) -> Result<()> {
    let bad = |msg: String| Err(Error::Domain(msg));
    if inst.len() != n {
        return bad(format!("generated {} items, wanted {n}", inst.len()));
    }
    match *family {
        Family::SDelta { delta } if inst.items().iter().any(|&a| a < delta) => {
            bad(format!("an item is below delta {delta}"))
        }
        Family::SigmaPower { b } => {
            let target = (n as f64).powf(b);
            let s: f64 = inst.items().iter().sum();
            if (s - target).abs() > 1e-6 * target {
                bad(format!("total {s} differs from n^b = {target}"))
            } else {
                Ok(())
            }
        }
        _ => Ok(()),
    }
}
