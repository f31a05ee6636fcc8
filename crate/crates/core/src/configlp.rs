//! Bin configurations over a few distinct large sizes and the covering LP
//! that chooses how many bins of each configuration to open.

use crate::bins::BinSpec;
use crate::error::{Error, Result};
use crate::lp::{solve_covering, LpSolution};
use crate::oracle::FIT_TOL;
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};

pub const DEFAULT_Q_CAP: usize = 1_000_000;

/// One configuration: a bin kind and how many copies of each size it holds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinType {
    pub kind_index: usize,
    pub counts: Vec<usize>,
}

impl BinType {
    pub fn load(&self, sizes: &[f64]) -> f64 {
        self.counts.iter().zip(sizes).map(|(&c, &a)| c as f64 * a).sum()
    }

    pub fn items(&self) -> usize {
        self.counts.iter().sum()
    }
}

/// Configurations together with the ascending distinct sizes they index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TypeSet {
    pub sizes: Vec<f64>,
    pub types: Vec<BinType>,
}

impl TypeSet {
    pub fn q(&self) -> usize {
        self.types.len()
    }
}

/// Sort ascending and merge equal sizes, summing demands.
pub fn canonical_classes(sizes: &[f64], demands: &[usize]) -> (Vec<f64>, Vec<usize>) {
    let mut pairs: Vec<(f64, usize)> = sizes.iter().copied().zip(demands.iter().copied()).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut s: Vec<f64> = Vec::new();
    let mut d: Vec<usize> = Vec::new();
    for (a, n) in pairs {
        if s.last() == Some(&a) {
            *d.last_mut().unwrap() += n;
        } else {
            s.push(a);
            d.push(n);
        }
    }
    (s, d)
}

/// Every feasible nonzero configuration over `sizes` for every bin kind.
///
/// Sizes are deduplicated and sorted first, so the result does not depend
/// on input order.
pub fn enumerate_types(sizes: &[f64], bins: &BinSpec, delta: f64) -> Result<TypeSet> {
    let ones = vec![usize::MAX; sizes.len()];
    let (s, _) = canonical_classes(sizes, &vec![0; sizes.len()]);
    enumerate_capped(&s, &ones[..s.len()], bins, delta, DEFAULT_Q_CAP)
}

/// As [`enumerate_types`] over already canonical `sizes`, with each count
/// also bounded by `caps[j]`, and at most `q_cap` types.
pub fn enumerate_capped(
    sizes: &[f64],
    caps: &[usize],
    bins: &BinSpec,
    delta: f64,
    q_cap: usize,
) -> Result<TypeSet> {
    if !(delta > 0.0) {
        return Err(Error::Parameter(format!("delta must be positive, got {delta}")));
    }
    if let Some(&a) = sizes.iter().find(|&&a| a < delta) {
        return Err(Error::Parameter(format!("size {a} is below delta {delta}")));
    }
    let per_bin = (1.0 / delta + FIT_TOL).floor() as usize;
    let mut types = Vec::new();
    let mut counts = vec![0usize; sizes.len()];
    for (k, kind) in bins.kinds().iter().enumerate() {
        dfs(sizes, caps, per_bin, kind.size, 0, &mut counts, k, &mut types, q_cap)?;
    }
    Ok(TypeSet {
        sizes: sizes.to_vec(),
        types,
    })
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    sizes: &[f64],
    caps: &[usize],
    per_bin: usize,
    room: f64,
    j: usize,
    counts: &mut Vec<usize>,
    kind: usize,
    out: &mut Vec<BinType>,
    q_cap: usize,
) -> Result<()> {
    if j == sizes.len() {
        if counts.iter().any(|&c| c > 0) {
            if out.len() >= q_cap {
                return Err(Error::Capacity(format!("more than {q_cap} bin types")));
            }
            out.push(BinType {
                kind_index: kind,
                counts: counts.clone(),
            });
        }
        return Ok(());
    }
    let limit = caps[j].min(per_bin);
    let mut c = 0;
    loop {
        counts[j] = c;
        dfs(sizes, caps, per_bin, room - c as f64 * sizes[j], j + 1, counts, kind, out, q_cap)?;
        c += 1;
        if c > limit || c as f64 * sizes[j] > room + FIT_TOL {
            break;
        }
    }
    counts[j] = 0;
    Ok(())
}

/// LP solution plus componentwise ceiling.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverSolution<S> {
    pub lp: LpSolution<S>,
    pub x_rounded: Vec<u64>,
    pub rounded_cost: f64,
}

impl<S: Scalar> CoverSolution<S> {
    /// Number of types with positive LP value.
    pub fn support(&self) -> usize {
        self.lp.x_star.iter().filter(|x| x.is_positive_tol()).count()
    }

    /// Total cost of the types with positive LP value.
    pub fn support_cost(&self, set: &TypeSet, bins: &BinSpec) -> f64 {
        self.lp
            .x_star
            .iter()
            .zip(&set.types)
            .filter(|(x, _)| x.is_positive_tol())
            .map(|(_, t)| bins.kinds()[t.kind_index].cost)
            .sum()
    }
}

/// Solve `min sum w_i x_i` subject to covering every demand.
pub fn solve_cover_lp<S: Scalar>(set: &TypeSet, demands: &[usize], bins: &BinSpec) -> Result<CoverSolution<S>> {
    let t = set.sizes.len();
    if demands.len() != t {
        return Err(Error::Parameter("one demand per size class required".into()));
    }
    for j in 0..t {
        if demands[j] > 0 && !set.types.iter().any(|ty| ty.counts[j] > 0) {
            return Err(Error::Infeasible(format!("no type packs size {}", set.sizes[j])));
        }
    }
    // rows with zero demand are dropped; they never bind
    let rows: Vec<usize> = (0..t).filter(|&j| demands[j] > 0).collect();
    let a: Vec<Vec<S>> = rows
        .iter()
        .map(|&j| {
            set.types
                .iter()
                .map(|ty| S::from_usize(ty.counts[j]).expect("small count"))
                .collect()
        })
        .collect();
    let b: Vec<S> = rows
        .iter()
        .map(|&j| S::from_usize(demands[j]).expect("small demand"))
        .collect();
    let c: Vec<S> = set
        .types
        .iter()
        .map(|ty| S::from_f64_lossy(bins.kinds()[ty.kind_index].cost))
        .collect();
    let mut lp = solve_covering(&a, &b, &c)?;
    let mut duals = vec![S::zero(); t];
    for (r, &j) in rows.iter().enumerate() {
        duals[j] = lp.duals[r].clone();
    }
    lp.duals = duals;
    let x_rounded: Vec<u64> = lp
        .x_star
        .iter()
        .map(|x| x.ceil_tol().to_f64_lossy().max(0.0) as u64)
        .collect();
    let rounded_cost = x_rounded
        .iter()
        .zip(&set.types)
        .map(|(&x, ty)| x as f64 * bins.kinds()[ty.kind_index].cost)
        .sum();
    Ok(CoverSolution {
        lp,
        x_rounded,
        rounded_cost,
    })
}

/// Result of packing a multiset of large items through the covering LP.
#[derive(Debug, Clone, PartialEq)]
pub struct LargePacking {
    pub cost: f64,
    pub set: TypeSet,
    pub demands: Vec<usize>,
    pub cover: CoverSolution<f64>,
}

impl LargePacking {
    pub fn x_rounded(&self) -> &[u64] {
        &self.cover.x_rounded
    }

    /// `(type, count)` pairs with positive rounded count.
    pub fn types_used(&self) -> Vec<(BinType, u64)> {
        self.set
            .types
            .iter()
            .zip(&self.cover.x_rounded)
            .filter(|(_, &x)| x > 0)
            .map(|(t, &x)| (t.clone(), x))
            .collect()
    }

    pub fn bins_opened(&self) -> u64 {
        self.cover.x_rounded.iter().sum()
    }
}

/// Enumerate types, solve the covering LP, round up.
pub fn pack_large_items(bins: &BinSpec, sizes: &[f64], counts: &[usize], delta: f64) -> Result<LargePacking> {
    pack_large_items_capped(bins, sizes, counts, delta, DEFAULT_Q_CAP)
}

pub fn pack_large_items_capped(
    bins: &BinSpec,
    sizes: &[f64],
    counts: &[usize],
    delta: f64,
    q_cap: usize,
) -> Result<LargePacking> {
    if sizes.len() != counts.len() {
        return Err(Error::Parameter("sizes and counts differ in length".into()));
    }
    let (s, d) = canonical_classes(sizes, counts);
    let max = bins.max_size();
    if let Some(&a) = s.iter().zip(&d).find(|(&a, &n)| n > 0 && a > max + FIT_TOL).map(|(a, _)| a) {
        return Err(Error::Infeasible(format!("item {a} exceeds every bin size")));
    }
    let set = enumerate_capped(&s, &d, bins, delta, q_cap)?;
    if d.iter().all(|&n| n == 0) {
        let q = set.q();
        return Ok(LargePacking {
            cost: 0.0,
            set,
            demands: d,
            cover: CoverSolution {
                lp: LpSolution {
                    x_star: vec![0.0; q],
                    objective: 0.0,
                    duals: vec![],
                    pivots: 0,
                },
                x_rounded: vec![0; q],
                rounded_cost: 0.0,
            },
        });
    }
    let cover = solve_cover_lp::<f64>(&set, &d, bins)?;
    Ok(LargePacking {
        cost: cover.rounded_cost,
        set,
        demands: d,
        cover,
    })
}
