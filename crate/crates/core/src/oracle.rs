//! Exact and greedy reference packers.

use crate::bins::BinSpec;
use crate::error::{Error, Result};
use crate::instance::Instance;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Slack allowed when testing whether a load fits a capacity.
pub const FIT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssignedBin {
    pub kind: usize,
    pub items: Vec<usize>,
}

/// Item-to-bin allocation with its total cost.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PackingAssignment {
    pub bins: Vec<AssignedBin>,
    pub total_cost: f64,
}

impl PackingAssignment {
    pub fn bin_count(&self) -> usize {
        self.bins.len()
    }

    /// Sort items within bins, then bins by content.
    pub fn canonicalize(&mut self) {
        for b in &mut self.bins {
            b.items.sort_unstable();
        }
        self.bins
            .sort_by(|a, b| a.items.cmp(&b.items).then(a.kind.cmp(&b.kind)));
    }

    /// Check every item is placed once, every load fits and the cost adds up.
    pub fn validate(&self, inst: &Instance, bins: &BinSpec) -> Result<()> {
        let mut seen = vec![false; inst.len()];
        let mut cost = 0.0;
        for (bi, b) in self.bins.iter().enumerate() {
            let kind = bins
                .kinds()
                .get(b.kind)
                .ok_or_else(|| Error::Infeasible(format!("bin {bi} has unknown kind {}", b.kind)))?;
            let mut load = 0.0;
            for &i in &b.items {
                if i >= inst.len() || seen[i] {
                    return Err(Error::Infeasible(format!("item {i} missing or placed twice")));
                }
                seen[i] = true;
                load += inst.items()[i];
            }
            if load > kind.size + FIT_TOL {
                return Err(Error::Infeasible(format!(
                    "bin {bi} load {load} exceeds capacity {}",
                    kind.size
                )));
            }
            cost += kind.cost;
        }
        if let Some(i) = seen.iter().position(|&s| !s) {
            return Err(Error::Infeasible(format!("item {i} is not packed")));
        }
        if (cost - self.total_cost).abs() > 1e-9 {
            return Err(Error::Infeasible(format!(
                "reported cost {} differs from {cost}",
                self.total_cost
            )));
        }
        Ok(())
    }
}

/// `ceil(sum)` for classical bins, `eta * sum` otherwise.
pub fn size_lower_bound(inst: &Instance, bins: &BinSpec) -> f64 {
    let s = inst.sum();
    if bins.is_classical() {
        ceil_tol(s)
    } else {
        bins.eta() * s
    }
}

/// Ceiling that ignores float noise just above an integer.
pub fn ceil_tol(x: f64) -> f64 {
    (x - FIT_TOL).ceil().max(0.0)
}

fn classical_only(bins: Option<&BinSpec>) -> Result<()> {
    match bins {
        Some(b) if !b.is_classical() => Err(Error::Parameter("greedy packers need classical bins".into())),
        _ => Ok(()),
    }
}

/// First fit over `order`, returning item index groups.
pub fn first_fit_order(sizes: &[f64], order: impl IntoIterator<Item = usize>) -> Vec<Vec<usize>> {
    let mut loads: Vec<f64> = Vec::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in order {
        let a = sizes[i];
        match loads.iter().position(|&l| l + a <= 1.0 + FIT_TOL) {
            Some(b) => {
                loads[b] += a;
                groups[b].push(i);
            }
            None => {
                loads.push(a);
                groups.push(vec![i]);
            }
        }
    }
    groups
}

fn from_groups(groups: Vec<Vec<usize>>) -> PackingAssignment {
    let total_cost = groups.len() as f64;
    PackingAssignment {
        bins: groups
            .into_iter()
            .map(|items| AssignedBin { kind: 0, items })
            .collect(),
        total_cost,
    }
}

/// Indices sorted by size, largest first; ties by index.
pub fn decreasing_order(sizes: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..sizes.len()).collect();
    idx.sort_by(|&a, &b| sizes[b].total_cmp(&sizes[a]).then(a.cmp(&b)));
    idx
}

pub fn first_fit(inst: &Instance) -> PackingAssignment {
    from_groups(first_fit_order(inst.items(), 0..inst.len()))
}

pub fn first_fit_decreasing(inst: &Instance) -> PackingAssignment {
    from_groups(first_fit_order(inst.items(), decreasing_order(inst.items())))
}

/// First fit with an explicit classical-bins check.
pub fn first_fit_checked(inst: &Instance, bins: &BinSpec) -> Result<PackingAssignment> {
    classical_only(Some(bins))?;
    Ok(first_fit(inst))
}

struct Search<'a> {
    sizes: Vec<f64>,
    order: Vec<usize>,
    suffix_vol: Vec<f64>,
    kinds: &'a BinSpec,
    density: f64,
    classical: bool,
    open: Vec<(usize, f64)>,
    assign: Vec<usize>,
    cost: f64,
    best_cost: f64,
    best: Option<(Vec<(usize, f64)>, Vec<usize>)>,
    nodes: u64,
}

impl Search<'_> {
    fn lower(&self, pos: usize) -> f64 {
        let free: f64 = self.open.iter().map(|&(k, l)| self.kinds.kinds()[k].size - l).sum();
        let extra = (self.suffix_vol[pos] - free).max(0.0);
        if self.classical {
            ceil_tol(extra)
        } else {
            extra * self.density
        }
    }

    fn dfs(&mut self, pos: usize) {
        self.nodes += 1;
        if pos == self.order.len() {
            if self.cost < self.best_cost - 1e-12 {
                self.best_cost = self.cost;
                self.best = Some((self.open.clone(), self.assign.clone()));
            }
            return;
        }
        if self.cost + self.lower(pos) >= self.best_cost - 1e-9 {
            return;
        }
        let item = self.order[pos];
        let a = self.sizes[item];
        // existing bins, skipping ones whose (kind, load) state was already tried
        let mut tried: Vec<(usize, u64)> = Vec::new();
        for b in 0..self.open.len() {
            let (k, load) = self.open[b];
            let cap = self.kinds.kinds()[k].size;
            if load + a > cap + FIT_TOL {
                continue;
            }
            let key = (k, load.to_bits());
            if tried.contains(&key) {
                continue;
            }
            tried.push(key);
            self.open[b].1 += a;
            self.assign[item] = b;
            self.dfs(pos + 1);
            self.open[b].1 = load;
        }
        // a fresh bin of each kind that can hold the item
        for (k, kind) in self.kinds.kinds().iter().enumerate() {
            if a > kind.size + FIT_TOL {
                continue;
            }
            self.open.push((k, a));
            self.cost += kind.cost;
            self.assign[item] = self.open.len() - 1;
            self.dfs(pos + 1);
            self.cost -= kind.cost;
            self.open.pop();
        }
    }
}

/// Minimum-cost packing by branch and bound. Refuses `n > limit`.
pub fn exact_opt(inst: &Instance, bins: &BinSpec, limit: usize) -> Result<(f64, PackingAssignment)> {
    let n = inst.len();
    if n > limit {
        return Err(Error::OracleLimit { n, limit });
    }
    let max = bins.max_size();
    if let Some(&a) = inst.items().iter().find(|&&a| a > max + FIT_TOL) {
        return Err(Error::Infeasible(format!("item {a} exceeds every bin size")));
    }
    if n == 0 {
        return Ok((0.0, PackingAssignment { bins: vec![], total_cost: 0.0 }));
    }
    let sizes = inst.items().to_vec();
    let order = decreasing_order(&sizes);
    let mut suffix_vol = vec![0.0; n + 1];
    for p in (0..n).rev() {
        suffix_vol[p] = suffix_vol[p + 1] + sizes[order[p]];
    }
    let mut s = Search {
        sizes,
        order,
        suffix_vol,
        kinds: bins,
        density: bins.min_cost_density(),
        classical: bins.is_classical(),
        open: Vec::new(),
        assign: vec![usize::MAX; n],
        cost: 0.0,
        best_cost: f64::INFINITY,
        best: None,
        nodes: 0,
    };
    if s.classical {
        let ffd = first_fit_decreasing(inst);
        let mut assign = vec![0; n];
        let mut open = Vec::new();
        for (b, g) in ffd.bins.iter().enumerate() {
            let mut load = 0.0;
            for &i in &g.items {
                assign[i] = b;
                load += s.sizes[i];
            }
            open.push((0, load));
        }
        s.best_cost = ffd.total_cost;
        s.best = Some((open, assign));
    }
    s.dfs(0);
    let (open, assign) = s.best.expect("some packing exists once every item fits a kind");
    let mut groups: Vec<AssignedBin> = open
        .iter()
        .map(|&(kind, _)| AssignedBin { kind, items: vec![] })
        .collect();
    for (i, &b) in assign.iter().enumerate() {
        groups[b].items.push(i);
    }
    let mut out = PackingAssignment {
        bins: groups,
        total_cost: s.best_cost,
    };
    out.canonicalize();
    Ok((s.best_cost, out))
}

/// Exact optimum for a multiset given as distinct sizes with counts, by
/// dynamic programming over remaining-count vectors.
pub fn exact_opt_multiset(sizes: &[f64], counts: &[usize], bins: &BinSpec) -> Result<f64> {
    if sizes.len() != counts.len() {
        return Err(Error::Parameter("sizes and counts differ in length".into()));
    }
    let max = bins.max_size();
    for (&a, &c) in sizes.iter().zip(counts) {
        if c > 0 && (a <= 0.0 || a > max + FIT_TOL) {
            return Err(Error::Infeasible(format!("item {a} exceeds every bin size")));
        }
    }
    let states: usize = counts.iter().map(|&c| c + 1).product();
    if states > 2_000_000 {
        return Err(Error::OracleLimit {
            n: counts.iter().sum(),
            limit: 2_000_000,
        });
    }
    let mut memo: HashMap<Vec<usize>, f64> = HashMap::new();
    Ok(dp(counts.to_vec(), sizes, bins, &mut memo))
}

fn dp(v: Vec<usize>, sizes: &[f64], bins: &BinSpec, memo: &mut HashMap<Vec<usize>, f64>) -> f64 {
    let Some(first) = v.iter().position(|&c| c > 0) else {
        return 0.0;
    };
    if let Some(&c) = memo.get(&v) {
        return c;
    }
    let mut best = f64::INFINITY;
    // the bin holding one copy of the first remaining size
    for kind in bins.kinds() {
        if sizes[first] > kind.size + FIT_TOL {
            continue;
        }
        let mut take = vec![0usize; v.len()];
        take[first] = 1;
        configs(&v, sizes, kind.size - sizes[first], first, &mut take, &mut |t| {
            let rest: Vec<usize> = v.iter().zip(t).map(|(a, b)| a - b).collect();
            let c = kind.cost + dp(rest, sizes, bins, memo);
            if c < best {
                best = c;
            }
        });
    }
    memo.insert(v, best);
    best
}

fn configs(
    v: &[usize],
    sizes: &[f64],
    room: f64,
    j: usize,
    take: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]),
) {
    if j == v.len() {
        f(take);
        return;
    }
    let base = take[j];
    let mut extra = 0;
    loop {
        configs(v, sizes, room - extra as f64 * sizes[j], j + 1, take, f);
        extra += 1;
        if base + extra > v[j] || extra as f64 * sizes[j] > room + FIT_TOL {
            break;
        }
        take[j] = base + extra;
    }
    take[j] = base;
}

/// Distinct sizes with multiplicities, sizes ascending.
pub fn multiset_of(items: &[f64]) -> (Vec<f64>, Vec<usize>) {
    let mut s = items.to_vec();
    s.sort_by(f64::total_cmp);
    let mut sizes: Vec<f64> = Vec::new();
    let mut counts: Vec<usize> = Vec::new();
    for x in s {
        if sizes.last() == Some(&x) {
            *counts.last_mut().unwrap() += 1;
        } else {
            sizes.push(x);
            counts.push(1);
        }
    }
    (sizes, counts)
}
