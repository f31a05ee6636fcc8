//! Turn a [`PackingTemplate`] into a concrete assignment of the true items.

use crate::instance::Instance;
use crate::offline::PackingTemplate;
use crate::oracle::{AssignedBin, PackingAssignment, FIT_TOL};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Materialized {
    pub bins_used: usize,
    pub feasible: bool,
    /// Large items that found no typed slot.
    pub overflow: usize,
    pub assignment: PackingAssignment,
}

struct Bin {
    load: f64,
    items: Vec<usize>,
    /// Free slot sizes, ascending.
    slots: Vec<f64>,
}

/// Assign every item of `inst` following `template`.
///
/// Large items (at least `delta`) go, largest first, into the smallest free
/// slot that is at least as big; leftovers go to fresh bins by first fit.
/// Small items fill non-empty bins until less than `delta` space is left,
/// then open fresh bins.
pub fn materialize(inst: &Instance, template: &PackingTemplate) -> Materialized {
    let delta = template.delta;
    let sizes = inst.items();
    let mut bins: Vec<Bin> = Vec::new();
    for (ty, count) in &template.types_used {
        let mut slots: Vec<f64> = Vec::new();
        for (j, &c) in ty.counts.iter().enumerate() {
            slots.extend(std::iter::repeat(template.class_sizes[j]).take(c));
        }
        slots.sort_by(f64::total_cmp);
        for _ in 0..*count {
            bins.push(Bin {
                load: 0.0,
                items: Vec::new(),
                slots: slots.clone(),
            });
        }
    }

    let mut large: Vec<usize> = (0..sizes.len()).filter(|&i| sizes[i] >= delta).collect();
    large.sort_by(|&a, &b| sizes[b].total_cmp(&sizes[a]).then(a.cmp(&b)));
    let mut small: Vec<usize> = (0..sizes.len()).filter(|&i| sizes[i] < delta).collect();
    small.sort_by(|&a, &b| sizes[b].total_cmp(&sizes[a]).then(a.cmp(&b)));

    let typed = bins.len();
    let mut overflow = 0;
    let fresh_start = typed;
    for i in large {
        let a = sizes[i];
        let mut best: Option<(usize, usize, f64)> = None;
        for (b, bin) in bins[..typed].iter().enumerate() {
            let k = bin.slots.partition_point(|&s| s < a);
            if let Some(&s) = bin.slots.get(k) {
                if best.map_or(true, |(_, _, bs)| s < bs) {
                    best = Some((b, k, s));
                }
            }
        }
        match best {
            Some((b, k, _)) => {
                let bin = &mut bins[b];
                bin.slots.remove(k);
                bin.load += a;
                bin.items.push(i);
            }
            None => {
                overflow += 1;
                let spot = (fresh_start..bins.len()).find(|&b| bins[b].load + a <= 1.0 + FIT_TOL);
                match spot {
                    Some(b) => {
                        bins[b].load += a;
                        bins[b].items.push(i);
                    }
                    None => bins.push(Bin {
                        load: a,
                        items: vec![i],
                        slots: vec![],
                    }),
                }
            }
        }
    }

    let mut cursor = 0;
    for i in small {
        let a = sizes[i];
        loop {
            if cursor >= bins.len() {
                bins.push(Bin {
                    load: 0.0,
                    items: Vec::new(),
                    slots: vec![],
                });
            }
            let bin = &mut bins[cursor];
            let open = !bin.items.is_empty() || cursor >= typed;
            if open && 1.0 - bin.load >= delta && bin.load + a <= 1.0 + FIT_TOL {
                bin.load += a;
                bin.items.push(i);
                break;
            }
            cursor += 1;
        }
    }

    let used: Vec<Bin> = bins.into_iter().filter(|b| !b.items.is_empty()).collect();
    let feasible = used.iter().all(|b| b.load <= 1.0 + FIT_TOL);
    let assignment = PackingAssignment {
        total_cost: used.len() as f64,
        bins: used
            .into_iter()
            .map(|b| AssignedBin {
                kind: 0,
                items: b.items,
            })
            .collect(),
    };
    Materialized {
        bins_used: assignment.bins.len(),
        feasible,
        overflow,
        assignment,
    }
}

/// `(bins_used, feasible)` for the template over the true instance.
pub fn materialize_and_validate(inst: &Instance, template: &PackingTemplate) -> (usize, bool) {
    let m = materialize(inst, template);
    (m.bins_used, m.feasible)
}
