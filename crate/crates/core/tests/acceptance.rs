//! Acceptance criteria 1 to 10. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any fails.

use binpack::bins::BinKind;
use binpack::configlp::pack_large_items;
use binpack::crucial::{crucial_sample_size, select_crucial_items};
use binpack::generate::{generate, Family, GeneratorSpec};
use binpack::materialize::materialize;
use binpack::offline::approximate_bin_packing_with;
use binpack::oracle::{ceil_tol, exact_opt, exact_opt_multiset, first_fit_decreasing, multiset_of};
use binpack::sliding::WindowState;
use binpack::streaming::StreamState;
use binpack::{approximate_intervals, derive_params_with, BinSpec, Instance, Reservoir, Rng, ScaledConstants};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use std::time::{Duration, Instant};

const TAU: f64 = 0.5;
const FIT: f64 = 1e-9;
const C1_RUNS: usize = 300;
const C1_UPPER_GATE: f64 = 0.75;
const C2_SEEDS: u64 = 200;
const C2_N: usize = 100_000;
const C3_SEEDS: u64 = 3;
const C3_SLOPE: (f64, f64) = (0.5, 1.5);
const C4_MULTISETS: usize = 100;
const C5_TRIALS: usize = 200;
const C6_SEEDS: u64 = 100;
const C6_UPPER_GATE: f64 = 0.75;
const C7_SEEDS: u64 = 100;
const C7_UPPER_GATE: f64 = 0.75;
const C8_TRIALS: usize = 50_000;
const C8_REL_TOL: f64 = 0.10;
const C9_INSTANCES: usize = 200;

struct Outcome {
    id: usize,
    name: &'static str,
    pass: bool,
    detail: String,
    elapsed: Duration,
    limit: Duration,
}

fn three_sigma(p: f64, trials: f64) -> f64 {
    3.0 * (p * (1.0 - p) / trials).sqrt()
}

fn c1_family(i: usize, rng: &mut Rng) -> (Family, usize) {
    let n = 1 + rng.index(14);
    match i % 8 {
        0 => {
            let a = rng.uniform(0.01, 0.5);
            (Family::Uniform { a, b: rng.uniform(a, 1.0) }, n)
        }
        1 => (Family::SDelta { delta: 0.25 }, n),
        2 => (Family::ThreePartitionLike, 3 * (1 + rng.index(4))),
        3 => (Family::Example1, 3 + rng.index(12)),
        4 => (Family::Example2, 3 + rng.index(12)),
        5 => (Family::SigmaPower { b: [0.5, 0.7, 0.9][rng.index(3)] }, n),
        6 => (Family::LowerboundList1 { b: 0.5 }, 9 + rng.index(6)),
        _ => (Family::LowerboundList2 { b: 0.5 }, 9 + rng.index(6)),
    }
}

/// Criteria 1 and 10.
fn envelope_and_materialization() -> (Outcome, Outcome) {
    let start = Instant::now();
    let mut rng = Rng::new(1);
    let (mut lower_ok, mut upper_ok, mut mat_ok, mut mat_runs) = (0, 0, 0, 0);
    let mut lower_fail = Vec::new();
    for i in 0..C1_RUNS {
        let (family, n) = c1_family(i, &mut rng);
        let seed = 1000 + i as u64;
        let inst = generate(&GeneratorSpec { family, n, seed }).expect("generator");
        let opt = exact_opt(&inst, &BinSpec::classical(), 14).expect("oracle").0;
        let r = approximate_bin_packing_with(TAU, &inst, ScaledConstants::desk(), &mut Rng::new(seed)).expect("run");
        let low = r.app >= opt - FIT;
        let up = r.app <= (1.0 + TAU) * opt + 1.0 + FIT;
        if low {
            lower_ok += 1;
        } else {
            lower_fail.push(format!("{family} n={n}: app {} < opt {opt}", r.app));
        }
        if up {
            upper_ok += 1;
        }
        if low && up {
            mat_runs += 1;
            let m = materialize(&inst, &r.template);
            let valid = m.assignment.validate(&inst, &BinSpec::classical()).is_ok();
            if m.feasible && valid && m.bins_used as f64 <= r.app.ceil() + FIT {
                mat_ok += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    let gate = C1_UPPER_GATE + three_sigma(C1_UPPER_GATE, C1_RUNS as f64);
    let rate = upper_ok as f64 / C1_RUNS as f64;
    let c1 = Outcome {
        id: 1,
        name: "envelope soundness",
        pass: lower_ok == C1_RUNS && rate >= gate,
        detail: format!(
            "app >= Opt in {lower_ok}/{C1_RUNS}; app <= 1.5 Opt + 1 in {upper_ok}/{C1_RUNS} (gate {gate:.3}){}",
            lower_fail.first().map(|s| format!("; first miss {s}")).unwrap_or_default()
        ),
        elapsed,
        limit: Duration::from_secs(60),
    };
    let c10 = Outcome {
        id: 10,
        name: "end-to-end materialization",
        pass: mat_ok == mat_runs && mat_runs > 0,
        detail: format!("feasible with bins_used <= ceil(app) in {mat_ok}/{mat_runs} passing runs"),
        elapsed,
        limit: Duration::from_secs(60),
    };
    (c1, c10)
}

fn estimator_bounds() -> Outcome {
    let start = Instant::now();
    let inst = generate(&GeneratorSpec {
        family: Family::Example1,
        n: C2_N,
        seed: 0,
    })
    .unwrap();
    let ledger = derive_params_with(TAU, &BinSpec::classical(), ScaledConstants::desk()).unwrap();
    let part = ledger.partition(inst.len()).unwrap();
    let sum: f64 = inst.items().iter().sum();
    let mut true_mass = vec![0.0; part.interval_count()];
    for &a in inst.items() {
        true_mass[part.classify(a) - 1] += a;
    }
    let (th, d, phi, g, n) = (ledger.theta, ledger.delta, ledger.phi, ledger.gamma, C2_N as f64);
    let lo = (1.0 - th) * (1.0 - d) * phi * (sum / 2.0 - 2.0 * g / n);
    let hi = (1.0 + th) * sum;
    let small_cap = d.powi(3) / 2.0 * sum + g / n;
    let (mut env_ok, mut mass_ok) = (0, 0);
    for seed in 0..C2_SEEDS {
        let r = approximate_intervals(&ledger, &part, &inst, &mut Rng::new(seed)).unwrap();
        if r.app_w >= lo && r.app_w <= hi {
            env_ok += 1;
        }
        let missed: f64 = r
            .c_hat
            .iter()
            .zip(&true_mass)
            .filter(|(c, _)| **c == 0.0)
            .map(|(_, m)| m)
            .sum();
        if missed <= small_cap {
            mass_ok += 1;
        }
    }
    let trials = C2_SEEDS as f64;
    let a = ledger.alpha;
    let gate = (1.0 - a) * trials - 3.0 * (a * trials).sqrt();
    Outcome {
        id: 2,
        name: "estimator bounds",
        pass: env_ok as f64 >= gate && mass_ok == C2_SEEDS,
        detail: format!(
            "weighted-sum envelope [{lo:.1}, {hi:.1}] in {env_ok}/{C2_SEEDS} (gate {gate:.1}); small-interval mass bound in {mass_ok}/{C2_SEEDS}"
        ),
        elapsed: start.elapsed(),
        limit: Duration::from_secs(120),
    }
}

fn sample_scaling() -> Outcome {
    let start = Instant::now();
    let ledger = derive_params_with(TAU, &BinSpec::classical(), ScaledConstants::desk()).unwrap();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut fallbacks = Vec::new();
    let mut table = Vec::new();
    for &b in &[0.3, 0.5, 0.7] {
        for &n in &[10_000usize, 100_000, 1_000_000] {
            let part = ledger.partition(n).unwrap();
            let mut total = 0.0;
            for seed in 0..C3_SEEDS {
                let inst = generate(&GeneratorSpec {
                    family: Family::SigmaPower { b },
                    n,
                    seed,
                })
                .unwrap();
                let r = approximate_intervals(&ledger, &part, &inst, &mut Rng::new(seed)).unwrap();
                if r.exact_fallback && n >= 100_000 {
                    fallbacks.push(format!("b={b} n={n}"));
                }
                total += r.samples_used as f64;
            }
            let mean = total / C3_SEEDS as f64;
            xs.push(((n as f64).powf(1.0 - b)).ln());
            ys.push(mean.ln());
            table.push(format!("{b}/{n}:{mean:.0}"));
        }
    }
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    Outcome {
        id: 3,
        name: "sample-complexity scaling",
        pass: slope >= C3_SLOPE.0 && slope <= C3_SLOPE.1 && fallbacks.is_empty(),
        detail: format!(
            "log-log slope {slope:.3} (want [{}, {}]); exact fallbacks {:?}; mean samples {}",
            C3_SLOPE.0,
            C3_SLOPE.1,
            fallbacks,
            table.join(" ")
        ),
        elapsed: start.elapsed(),
        limit: Duration::from_secs(300),
    }
}

fn lp_rounding() -> Outcome {
    let start = Instant::now();
    let related = BinSpec::new(vec![BinKind { size: 1.0, cost: 1.0 }, BinKind { size: 0.5, cost: 0.4 }]).unwrap();
    let mut rng = Rng::new(4);
    let (mut ok, mut total) = (0, 0);
    let mut miss = None;
    for spec in [BinSpec::classical(), related] {
        for _ in 0..C4_MULTISETS {
            let t = 1 + rng.index(4);
            let sizes: Vec<f64> = (0..t).map(|_| 0.25 + rng.index(16) as f64 * 0.05).collect();
            let counts: Vec<usize> = (0..t).map(|_| 1 + rng.index(5)).collect();
            let p = pack_large_items(&spec, &sizes, &counts, 0.25).unwrap();
            let opt = exact_opt_multiset(&p.set.sizes, &p.demands, &spec).unwrap();
            let support = p.cover.support_cost(&p.set, &spec);
            total += 1;
            if p.cost >= opt - FIT && p.cost <= opt + support + FIT {
                ok += 1;
            } else if miss.is_none() {
                miss = Some(format!("{sizes:?} x {counts:?}: cost {} opt {opt} support {support}", p.cost));
            }
        }
    }
    Outcome {
        id: 4,
        name: "LP rounding bound",
        pass: ok == total,
        detail: format!(
            "Opt <= cost <= Opt + support cost in {ok}/{total}{}",
            miss.map(|m| format!("; first miss {m}")).unwrap_or_default()
        ),
        elapsed: start.elapsed(),
        limit: Duration::from_secs(60),
    }
}

fn crucial_ranks() -> Outcome {
    let start = Instant::now();
    let (m, mu, alpha) = (4usize, 0.2, 0.1);
    let mut a: Vec<f64> = (0..1000).map(|i| 0.25 + 0.75 * i as f64 / 999.0).collect();
    a.sort_by(f64::total_cmp);
    let (u, _, _) = crucial_sample_size(m, alpha, mu).unwrap();
    let mut rng = Rng::new(5);
    let mut fails = 0;
    for _ in 0..C5_TRIALS {
        let x: Vec<f64> = (0..u).map(|_| a[rng.index(a.len())]).collect();
        let c = select_crucial_items(m, alpha, mu, &x, None).unwrap().unwrap();
        if !c.ranks_within(&a, mu).unwrap() {
            fails += 1;
        }
    }
    let t = C5_TRIALS as f64;
    let gate = alpha * t + 3.0 * (alpha * t).sqrt();
    Outcome {
        id: 5,
        name: "crucial-item ranks",
        pass: fails as f64 <= gate,
        detail: format!("rank misses {fails}/{C5_TRIALS} with u = {u} (gate {gate:.1})"),
        elapsed: start.elapsed(),
        limit: Duration::from_secs(30),
    }
}

fn stream_constants() -> ScaledConstants {
    ScaledConstants {
        delta: Some(0.25),
        ..ScaledConstants::desk()
    }
}

fn streaming_quality() -> Outcome {
    let start = Instant::now();
    let (mut low, mut up) = (0, 0);
    let mut eps = 0.0;
    for seed in 0..C6_SEEDS {
        let mut s = StreamState::new(TAU, stream_constants(), seed).unwrap();
        eps = s.ledger().epsilon;
        for _ in 0..200 {
            s.push(0.5).unwrap();
        }
        let app = s.query().unwrap().app;
        if app >= 100.0 - FIT {
            low += 1;
        }
        if app <= (1.0 + eps) * 100.0 + 1.0 + FIT {
            up += 1;
        }
    }
    let mut slots = Vec::new();
    for &len in &[1_000usize, 1_000_000] {
        let mut s = StreamState::new(TAU, stream_constants(), 7).unwrap();
        let mut rng = Rng::new(len as u64);
        for _ in 0..len {
            s.push(rng.uniform(0.01, 1.0)).unwrap();
        }
        slots.push((s.retained_slots(), s.u() + s.v()));
    }
    let mem = slots[0] == slots[1] && slots.iter().all(|(a, b)| a == b);
    let rate = up as f64 / C6_SEEDS as f64;
    Outcome {
        id: 6,
        name: "streaming quality and memory",
        pass: low == C6_SEEDS && rate >= C6_UPPER_GATE && mem,
        detail: format!(
            "app >= 100 in {low}/{C6_SEEDS}; app <= (1+{eps:.3})100 + 1 in {up}/{C6_SEEDS}; retained slots (1e3, 1e6) = ({}, {}) vs u+v = {}",
            slots[0].0, slots[1].0, slots[0].1
        ),
        elapsed: start.elapsed(),
        limit: Duration::from_secs(60),
    }
}

fn window_opt(items: &[f64]) -> f64 {
    exact_opt(&Instance::new(items.to_vec()).unwrap(), &BinSpec::classical(), 14).unwrap().0
}

fn sliding_quality() -> Outcome {
    let start = Instant::now();
    let (gamma, delta, window) = (0.5, 0.25, 12usize);
    let c = ScaledConstants {
        m: Some(4),
        u: Some(400),
        lambda: Some(4),
        ..Default::default()
    };
    let (mut low, mut up, mut runs) = (0, 0, 0);
    let mut t_allow = 0.0;
    for seed in 0..C7_SEEDS {
        let mut rng = Rng::new(10_000 + seed);
        let stationary: Vec<f64> = (0..4 * window).map(|_| rng.uniform(delta, 1.0)).collect();
        let mut shifted = vec![0.9; 2 * window];
        shifted.extend(std::iter::repeat(0.5).take(window));
        for stream in [stationary, shifted] {
            let mut w = WindowState::new(window, gamma, delta, &BinSpec::classical(), &c, seed).unwrap();
            for &a in &stream {
                w.push(a).unwrap();
            }
            let t = w.t() as f64;
            t_allow = t;
            let opt = window_opt(&stream[stream.len() - w.window_n()..]);
            let app = w.query(&BinSpec::classical()).unwrap().app;
            runs += 1;
            if app >= opt - t - FIT {
                low += 1;
            }
            if app <= (1.0 + gamma) * opt + t + FIT {
                up += 1;
            }
        }
    }
    let rate = up as f64 / runs as f64;
    Outcome {
        id: 7,
        name: "sliding-window quality",
        pass: low == runs && rate >= C7_UPPER_GATE,
        detail: format!(
            "app >= Opt - t in {low}/{runs}; app <= (1+gamma)Opt + t in {up}/{runs} (window 12, t = {t_allow})"
        ),
        elapsed: start.elapsed(),
        limit: Duration::from_secs(60),
    }
}

fn reservoir_law() -> Outcome {
    let start = Instant::now();
    let (n, u) = (5usize, 3usize);
    let mut counts = vec![vec![0usize; n]; u];
    let mut rng = Rng::new(8);
    for _ in 0..C8_TRIALS {
        let mut r = Reservoir::new(u).unwrap();
        for v in 0..n {
            r.push(v as f64, &mut rng);
        }
        for (slot, &x) in r.slots().unwrap().iter().enumerate() {
            counts[slot][x as usize] += 1;
        }
    }
    let target = 1.0 / n as f64;
    let worst = counts
        .iter()
        .flatten()
        .map(|&c| ((c as f64 / C8_TRIALS as f64) - target).abs() / target)
        .fold(0.0, f64::max);
    Outcome {
        id: 8,
        name: "reservoir law",
        pass: worst <= C8_REL_TOL,
        detail: format!("worst relative deviation from 1/{n} over {u} slots: {:.2}%", worst * 100.0),
        elapsed: start.elapsed(),
        limit: Duration::from_secs(30),
    }
}

fn oracle_consistency() -> Outcome {
    let start = Instant::now();
    let mut rng = Rng::new(9);
    let mut ok = 0;
    let mut shuffler = StdRng::seed_from_u64(9);
    let classical = BinSpec::classical();
    for _ in 0..C9_INSTANCES {
        let n = 1 + rng.index(12);
        let mut items: Vec<f64> = (0..n).map(|_| (rng.uniform(0.05, 1.0) * 100.0).round() / 100.0).collect();
        let inst = Instance::new(items.clone()).unwrap();
        let opt = exact_opt(&inst, &classical, 14).unwrap().0;
        let ffd = first_fit_decreasing(&inst).bin_count() as f64;
        items.shuffle(&mut shuffler);
        let perm = exact_opt(&Instance::new(items.clone()).unwrap(), &classical, 14).unwrap().0;
        let (s, c) = multiset_of(&items);
        let dp = exact_opt_multiset(&s, &c, &classical).unwrap();
        if opt <= ffd + FIT && opt >= ceil_tol(inst.sum()) - FIT && perm == opt && (dp - opt).abs() < FIT {
            ok += 1;
        }
    }
    Outcome {
        id: 9,
        name: "oracle self-consistency",
        pass: ok == C9_INSTANCES,
        detail: format!("Opt <= FFD, Opt >= ceil(sum), permutation and DP agreement in {ok}/{C9_INSTANCES}"),
        elapsed: start.elapsed(),
        limit: Duration::from_secs(30),
    }
}

fn main() {
    let (c1, c10) = envelope_and_materialization();
    let mut all = vec![
        c1,
        estimator_bounds(),
        sample_scaling(),
        lp_rounding(),
        crucial_ranks(),
        streaming_quality(),
        sliding_quality(),
        reservoir_law(),
        oracle_consistency(),
        c10,
    ];
    all.sort_by_key(|o| o.id);
    let mut failed = 0;
    for o in &all {
        let in_time = o.elapsed <= o.limit;
        let pass = o.pass && in_time;
        if !pass {
            failed += 1;
        }
        println!(
            "{} criterion {:>2} {}: {} [{:.1}s / {}s]",
            if pass { "PASS" } else { "FAIL" },
            o.id,
            o.name,
            o.detail,
            o.elapsed.as_secs_f64(),
            o.limit.as_secs()
        );
    }
    println!("{} of {} criteria passed", all.len() - failed, all.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
