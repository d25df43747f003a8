//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use rand::seq::IndexedRandom;
use rand::Rng;
use sparsenav::instances::{
    binary_tree_pointset, binary_tree_reference_graph, gadget_metric, gadget_reference_graph,
    perturbed_path, perturbed_path_reference_graph, planted_set_cover, GadgetLayout,
};
use sparsenav::navbuild::{
    bool_matmul, brute_force_min_degrees, budget_probe, build_nav, coverage_round, greedy_nav,
    slow_diskann, source_rng, verify_nav_batched,
};
use sparsenav::setcover::{
    brute_force_min_cover, brute_force_min_cover_sets, fast_set_cover, find_heavy_set,
    greedy_cover, AliveSet,
};
use sparsenav::{is_navigable, verify_naive, CountingMetric, Metric, NavGraph, SetCoverSpec};

/// Outcome of one criterion: pass flag plus a one-line summary of what was measured.
struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn c1_diskann_gap() -> Outcome {
    let n = 16;
    let m = Metric::from_points(&binary_tree_pointset(n, 1e-4).unwrap()).unwrap();
    let d = slow_diskann(&CountingMetric::new(&m), 1.0).unwrap();
    let bottom_min = (0..n).map(|v| d.out(v).len()).min().unwrap();
    let bottom_sum: usize = (0..n).map(|v| d.out(v).len()).sum();
    let h = binary_tree_reference_graph(n).unwrap();
    let h_ok = is_navigable(&h, &m, 1.0).unwrap()
        && is_navigable(
            &h,
            &Metric::from_points(&binary_tree_pointset(n, 0.0).unwrap()).unwrap(),
            1.0,
        )
        .unwrap();
    let ratio16 = d.max_out_degree() as f64 / h.max_out_degree() as f64;

    let mut ratios = Vec::new();
    for k in [8, 16, 32, 64] {
        let m = Metric::from_points(&binary_tree_pointset(k, 1e-4).unwrap()).unwrap();
        let d = slow_diskann(&CountingMetric::new(&m), 1.0).unwrap();
        ratios.push(
            d.max_out_degree() as f64
                / binary_tree_reference_graph(k).unwrap().max_out_degree() as f64,
        );
    }
    let grows = ratios.windows(2).all(|w| w[1] > w[0]);
    let pass = bottom_min >= n - 2
        && bottom_sum >= n * (n - 2)
        && h_ok
        && h.max_out_degree() == 5
        && ratio16 >= 14.0 / 5.0
        && grows;
    outcome(
        pass,
        format!(
            "bottom min deg {bottom_min}, bottom edges {bottom_sum}, H navigable {h_ok} maxdeg {}, ratios {ratios:.2?}",
            h.max_out_degree()
        ),
    )
}

fn random_spec(r: &mut impl Rng) -> SetCoverSpec {
    let n = r.random_range(1..=12);
    let m = r.random_range(1..=12);
    let mut sets: Vec<Vec<usize>> = (0..m)
        .map(|_| (0..n).filter(|_| r.random_bool(0.3)).collect())
        .collect();
    // Make the instance coverable by dropping each element into some set.
    for x in 0..n {
        if !sets.iter().any(|s| s.contains(&x)) {
            let i = r.random_range(0..m);
            sets[i].push(x);
        }
    }
    SetCoverSpec::new(n, sets).unwrap()
}

fn c2_greedy_approximation() -> Outcome {
    let mut r = rng(2);
    let mut bad = 0;
    let mut worst: f64 = 0.0;
    for i in 0..100 {
        let spec = random_spec(&mut r);
        let g = greedy_cover(&spec).unwrap();
        let opt = brute_force_min_cover(&spec).unwrap();
        let bound = ((spec.n_elements() as f64).ln() + 1.0) * opt as f64;
        worst = worst.max(g.len() as f64 / opt as f64);
        if !spec.is_cover(&g.sets) || g.len() as f64 > bound {
            bad += 1;
            eprintln!("  set cover instance {i}: greedy {} opt {opt}", g.len());
        }
    }
    for i in 0..100u64 {
        let n = r.random_range(2..=10);
        let m = if i % 2 == 0 {
            euclidean(n, 2, i)
        } else {
            random_graph_metric(n, i)
        };
        let alpha = *[1.0, 1.5, 2.0].choose(&mut r).unwrap();
        let g = greedy_nav(&CountingMetric::new(&m), alpha).unwrap();
        let k = brute_force_min_degrees(&m, alpha).unwrap();
        let bound = ((n as f64 - 1.0).ln() + 1.0).max(1.0);
        for (s, &ks) in k.iter().enumerate() {
            worst = worst.max(g.out(s).len() as f64 / ks as f64);
            if g.out(s).len() as f64 > bound * ks as f64 {
                bad += 1;
                eprintln!(
                    "  metric {i} source {s}: greedy {} opt {}",
                    g.out(s).len(),
                    ks
                );
            }
        }
        if !is_navigable(&g, &m, alpha).unwrap() {
            bad += 1;
        }
    }
    outcome(
        bad == 0,
        format!("violations {bad}, worst ratio {worst:.2}"),
    )
}

fn c3_fast_set_cover() -> Outcome {
    let mut r = rng(3);
    let mut invalid = 0;
    let mut outliers = 0;
    for seed in 0..50u64 {
        let spec = random_spec(&mut r);
        let k = brute_force_min_cover(&spec).unwrap();
        let view = spec.view();
        let fc = fast_set_cover(&view, &mut source_rng(seed, 0)).unwrap();
        if !spec.is_cover(&fc.cover.sets) {
            invalid += 1;
        }
        let bound = 16.0 * k as f64 * (spec.n_elements().max(2) as f64).ln() + 1.0;
        if fc.cover.len() as f64 > bound {
            outliers += 1;
        }
    }
    let ks = [2usize, 4, 8, 16];
    let mut queries = Vec::new();
    for &k in &ks {
        let mut total = 0.0;
        for seed in 0..3u64 {
            let spec = planted_set_cover(500, 500, k, 3, 100 + seed).unwrap();
            let view = spec.view();
            let fc = fast_set_cover(&view, &mut source_rng(seed, k)).unwrap();
            if !spec.is_cover(&fc.cover.sets) {
                invalid += 1;
            }
            total += fc.queries as f64;
        }
        queries.push(total / 3.0);
    }
    let x: Vec<f64> = ks.iter().map(|&k| k as f64).collect();
    let r2 = r_squared(&x, &queries);
    let increasing = queries.windows(2).all(|w| w[1] > w[0]);
    outcome(
        invalid == 0 && outliers <= 2 && r2 >= 0.9 && increasing,
        format!(
            "invalid {invalid}, size outliers {outliers}, mean queries {queries:.0?}, R^2 {r2:.3}"
        ),
    )
}

fn c4_find_heavy_set() -> Outcome {
    let spec = planted_set_cover(200, 200, 4, 3, 4).unwrap();
    let view = spec.view();
    let alive = AliveSet::new(200);
    let khat = 8;
    let mut fails = 0;
    let mut heavy = 0;
    let mut returns = 0;
    for seed in 0..200u64 {
        match find_heavy_set(&alive, &view, khat, 200, &mut source_rng(seed, 0)) {
            None => fails += 1,
            Some(set) => {
                returns += 1;
                if view.intersection_size(set, &alive) as f64
                    >= alive.len() as f64 / (8.0 * khat as f64)
                {
                    heavy += 1;
                }
            }
        }
    }
    let fail_rate = fails as f64 / 200.0;
    let heavy_rate = if returns == 0 {
        0.0
    } else {
        heavy as f64 / returns as f64
    };
    outcome(
        fail_rate <= 0.05 && heavy_rate >= 0.95,
        format!("FAIL rate {fail_rate:.3}, heavy fraction {heavy_rate:.3}"),
    )
}

fn c5_batched_equivalence() -> Outcome {
    let mut mismatches = 0;
    let mut configs = 0;
    for i in 0..100u64 {
        let m = if i % 2 == 0 {
            euclidean(64, 3, i)
        } else {
            random_graph_metric(64, i)
        };
        let alpha = [1.0, 1.5, 2.0][(i % 3) as usize];
        let eps = [0.1, 0.5][((i / 3) % 2) as usize];
        let p = [0.02, 0.08, 0.3][((i / 6) % 3) as usize];
        let g = random_graph(64, p, 1000 + i);
        let dm = m.discretize(eps).unwrap();
        let batched = verify_nav_batched(&dm, &g, alpha).unwrap();
        let flat: Vec<(usize, usize)> = batched
            .iter()
            .enumerate()
            .flat_map(|(s, l)| l.iter().map(move |&t| (s, t)))
            .collect();
        let naive: Vec<(usize, usize)> = verify_naive(&g, &dm.rounded_metric(), alpha)
            .unwrap()
            .into_iter()
            .map(|v| (v.s, v.t))
            .collect();
        configs += 1;
        if flat != naive {
            mismatches += 1;
        }
    }
    let mut product_mismatches = 0;
    for i in 0..20u64 {
        let a = random_bits(128, 0.05, 2 * i);
        let b = random_bits(128, 0.05, 2 * i + 1);
        let c = bool_matmul(&a, &b).unwrap();
        let expect = naive_product(&a, &b);
        let same = (0..128).all(|s| (0..128).all(|t| c.get(s, t) == expect[s][t]));
        if !same || !c.padding_is_zero() {
            product_mismatches += 1;
        }
    }
    outcome(
        mismatches == 0 && product_mismatches == 0,
        format!("{mismatches}/{configs} verifier mismatches, {product_mismatches}/20 product mismatches"),
    )
}

fn c6_bicriteria() -> Outcome {
    let eps = 0.1;
    let mut invalid = 0;
    let mut within = 0;
    let mut worst: f64 = 0.0;
    let total = 50;
    for i in 0..total as u64 {
        let n = [16, 32, 64, 96, 128][(i % 5) as usize];
        let alpha = if i % 2 == 0 { 1.0 } else { 1.5 };
        let m = if i % 3 == 2 {
            random_graph_metric(n, i)
        } else {
            euclidean(n, 4, i)
        };
        let out = match build_nav(&m, alpha, eps, i) {
            Ok(out) => out,
            Err(e) => {
                eprintln!("  instance {i}: {e}");
                invalid += 1;
                continue;
            }
        };
        if !is_navigable(&out.graph, &m, alpha).unwrap() {
            invalid += 1;
        }
        let base = greedy_nav(&CountingMetric::new(&m), 2.0 * alpha * (1.0 + eps)).unwrap();
        let ratio = out.graph.edge_count() as f64 / ((n as f64).ln() * base.edge_count() as f64);
        worst = worst.max(ratio);
        if ratio <= 32.0 {
            within += 1;
        }
    }
    let frac = within as f64 / total as f64;
    outcome(
        invalid == 0 && frac >= 0.9,
        format!(
            "invalid {invalid}, within 32 ln n: {frac:.2}, worst edges/(ln n * greedy) {worst:.3}"
        ),
    )
}

fn c7_coverage_reduction() -> Outcome {
    let (alpha, eps) = (1.0, 0.1);
    let m = euclidean(64, 3, 7);
    let dm = m.discretize(eps).unwrap();
    let rounded = dm.rounded_metric();
    let opt_proxy = greedy_nav(&CountingMetric::new(&rounded), 2.0 * alpha * (1.0 + eps)).unwrap();
    let s = 0;
    let khat = opt_proxy.out(s).len().max(1);
    let mut rounds = 0;
    let mut shrinks = 0;
    let mut walks = 0;
    let mut r = source_rng(7, 0);
    while rounds < 1000 {
        // Walk one source from the empty graph until its targets are all served.
        let mut g = NavGraph::empty(64);
        let mut uncovered = verify_nav_batched(&dm, &g, alpha * (1.0 + eps)).unwrap()[s].clone();
        while !uncovered.is_empty() && rounds < 1000 {
            let fresh = coverage_round(&dm, &mut g, alpha, s, &uncovered, khat, &mut r).unwrap();
            rounds += 1;
            if fresh.len() as f64 <= 15.0 / 16.0 * uncovered.len() as f64 {
                shrinks += 1;
            }
            uncovered = fresh;
        }
        walks += 1;
    }
    let freq = shrinks as f64 / rounds as f64;
    outcome(
        freq >= 1.0 / 15.0 - 0.02,
        format!("khat {khat}, shrink frequency {freq:.3} over {rounds} rounds ({walks} walks)"),
    )
}

fn c8_alive_set() -> Outcome {
    // Uniformity.
    let mut a = AliveSet::new(8);
    let mut r = rng(8);
    let draws = 80_000;
    let mut counts = [0usize; 8];
    for _ in 0..draws {
        counts[a.sample(&mut r).unwrap()] += 1;
    }
    let p = 1.0 / 8.0;
    let sigma = (draws as f64 * p * (1.0 - p)).sqrt();
    let max_dev = counts
        .iter()
        .map(|&c| (c as f64 - draws as f64 * p).abs() / sigma)
        .fold(0.0, f64::max);
    let chi2: f64 = counts
        .iter()
        .map(|&c| (c as f64 - draws as f64 * p).powi(2) / (draws as f64 * p))
        .sum();

    // Counter consistency under random deletions, samples and resets.
    let mut broken = 0;
    let mut ops = 0;
    while ops < 100_000 {
        let n = r.random_range(1..=300);
        a = AliveSet::new(n);
        let mut shadow = vec![true; n];
        while !a.is_empty() && ops < 100_000 {
            ops += 1;
            if r.random_bool(0.3) {
                let x = a.sample(&mut r).unwrap();
                if !shadow[x] {
                    broken += 1;
                }
            } else {
                let x = r.random_range(0..n);
                if a.delete(x) != shadow[x] {
                    broken += 1;
                }
                shadow[x] = false;
            }
            if !a.check_invariants() || a.len() != shadow.iter().filter(|&&b| b).count() {
                broken += 1;
            }
        }
    }

    // Harmonic balancing.
    let mut harmonic_bad = 0;
    for _ in 0..10_000 {
        let len = r.random_range(1..=60);
        let mut seq: Vec<f64> = (0..len).map(|_| r.random_range(0.0..10.0)).collect();
        seq.sort_by(|x, y| y.partial_cmp(x).unwrap());
        let lhs = seq
            .iter()
            .enumerate()
            .map(|(i, &x)| (i + 1) as f64 * x)
            .fold(0.0, f64::max);
        let rhs = seq.iter().sum::<f64>() / harmonic(len);
        if lhs < rhs * (1.0 - 1e-12) {
            harmonic_bad += 1;
        }
    }
    outcome(
        max_dev <= 5.0 && broken == 0 && harmonic_bad == 0,
        format!("max bin deviation {max_dev:.2} sigma (chi2 {chi2:.2}, 7 dof), {broken} consistency failures in {ops} ops, {harmonic_bad} harmonic violations"),
    )
}

fn c9_gadget() -> Outcome {
    let spec = SetCoverSpec::new(5, vec![vec![0, 1], vec![1, 2, 3], vec![3, 4]]).unwrap();
    let copies = 9;
    let m = gadget_metric(&spec, copies, 0.1).unwrap();
    let lay = GadgetLayout::new(&spec, copies);
    let cover = brute_force_min_cover_sets(&spec).unwrap();
    let opt = cover.len();
    let h = gadget_reference_graph(&spec, copies, &cover).unwrap();
    let nav = is_navigable(&h, &m, 1.0).unwrap();
    let root_degs: Vec<usize> = (0..copies).map(|l| h.out(lay.root(l)).len()).collect();
    let roots_ok = root_degs.iter().all(|&d| d == copies * opt);

    let g = greedy_nav(&CountingMetric::new(&m), 1.0).unwrap();
    let big_n = m.n() as f64;
    let greedy_ratio =
        (0..copies).map(|l| g.out(lay.root(l)).len()).max().unwrap() as f64 / copies as f64;
    let greedy_min =
        (0..copies).map(|l| g.out(lay.root(l)).len()).min().unwrap() as f64 / copies as f64;
    let greedy_ok = greedy_min >= 2.0 && greedy_ratio <= 2.0 * (big_n.ln() + 1.0) * 2.0;

    let stated_root = root_degs.iter().all(|&d| d == 18);
    let stated_edges = h.edge_count() == 738;
    outcome(
        nav && roots_ok && greedy_ok && stated_root && stated_edges,
        format!(
            "OPT {opt}, reference navigable {nav}, root out-degree {} (L*OPT {}, expected 18), edges {} (expected 738), greedy deg(root)/L in [{greedy_min:.2}, {greedy_ratio:.2}]",
            root_degs[0],
            copies * opt,
            h.edge_count()
        ),
    )
}

fn c10_query_lower_bound() -> Outcome {
    let n = 200;
    let budget = (n as f64).powf(1.5).floor() as u64;
    let seeds = 50;
    let mut misses = 0;
    let mut reference_ok = 0;
    let mut over_budget = 0;
    for seed in 0..seeds {
        let inst = perturbed_path(n, seed).unwrap();
        let out = budget_probe(&inst.metric, budget, seed).unwrap();
        if out.queries > budget {
            over_budget += 1;
        }
        let missed = !out.graph.has_edge(inst.hidden_pair.0, inst.hidden_pair.1);
        let nav = is_navigable(&out.graph, &inst.metric, 1.0).unwrap();
        if missed && !nav {
            misses += 1;
        }
        let h = perturbed_path_reference_graph(&inst).unwrap();
        if is_navigable(&h, &inst.metric, 1.0).unwrap() && h.max_out_degree() <= 3 {
            reference_ok += 1;
        }
    }
    let frac = misses as f64 / seeds as f64;
    let pairs = (n * (n - 1) / 2) as f64;
    outcome(
        frac >= 0.9 && reference_ok == seeds && over_budget == 0,
        format!(
            "budget {budget}, miss fraction {frac:.2} (uniform-probe expectation {:.3}), reference verified {reference_ok}/{seeds}",
            1.0 - budget as f64 / pairs
        ),
    )
}

/// Name, time limit in seconds, check.
type Criterion = (&'static str, u64, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 DiskANN gap", 10, c1_diskann_gap),
        ("2 greedy approximation", 60, c2_greedy_approximation),
        ("3 sampling set cover", 120, c3_fast_set_cover),
        ("4 heavy-set search", 60, c4_find_heavy_set),
        ("5 batched verifier equivalence", 60, c5_batched_equivalence),
        ("6 bicriteria construction", 300, c6_bicriteria),
        ("7 coverage reduction", 120, c7_coverage_reduction),
        ("8 alive-set properties", 30, c8_alive_set),
        ("9 set-cover gadget", 60, c9_gadget),
        ("10 query lower bound", 30, c10_query_lower_bound),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (name, limit, f) in criteria {
        if !filter.is_empty() && !filter.iter().any(|p| name.contains(p.as_str())) {
            continue;
        }
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f));
        let elapsed = start.elapsed();
        let (pass, detail) = match result {
            Ok(o) => (o.pass && elapsed <= Duration::from_secs(limit), o.detail),
            Err(_) => (false, "panicked".to_string()),
        };
        if !pass {
            failed += 1;
        }
        println!(
            "{} criterion {name}: {detail} [{:.2}s / {limit}s]",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
