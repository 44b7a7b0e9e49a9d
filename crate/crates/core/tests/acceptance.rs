//! Acceptance criteria, one test each. Every test prints a single
//! `ACn PASS|FAIL` line with the measured quantities before asserting.

mod common;

use std::time::{Duration, Instant};

use common::{interior, shipped_families};
use copulab::analysis::{
    d_inf, d_p, kernel_derivative_consistency, nondiff_scan, partial_probe, schwarz_check,
    DEFAULT_THRESHOLD,
};
use copulab::constructions::{Checkerboard, RotationCopula, Shuffle};
use copulab::pickands::Density;
use copulab::{
    disintegration_residual, reference, sample, upsilon, validate_copula, Copula, CounterRng,
    PickandsMeasure,
};

fn report(id: &str, what: &str, ok: bool, started: Instant, limit_s: u64, detail: String) {
    let elapsed = started.elapsed();
    let ok = ok && elapsed <= Duration::from_secs(limit_s);
    println!(
        "{id} {} {what}: {detail} ({:.3}s, limit {limit_s}s)",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    assert!(ok, "{id} failed: {detail}");
}

fn grid1001() -> impl Iterator<Item = f64> {
    (0..=1000).map(|k| k as f64 / 1000.0)
}

#[test]
fn ac01_upsilon_of_boundary_measures() {
    let start = Instant::now();
    let am = upsilon(&PickandsMeasure::dirac(0.5).unwrap()).unwrap();
    let api = upsilon(&PickandsMeasure::discrete(&[(0.0, 0.5), (1.0, 0.5)]).unwrap()).unwrap();
    let e_m = grid1001()
        .map(|t| (am.value(t) - (1.0 - t).max(t)).abs())
        .fold(0.0, f64::max);
    let e_pi = grid1001()
        .map(|t| (api.value(t) - 1.0).abs())
        .fold(0.0, f64::max);
    report(
        "AC1",
        "Pickands map of point masses",
        e_m <= 1e-12 && e_pi <= 1e-12,
        start,
        1,
        format!("max err M {e_m:e}, Pi {e_pi:e}"),
    );
}

#[test]
fn ac02_three_atom_pickands_function() {
    let start = Instant::now();
    let a = upsilon(&reference::three_atom_measure()).unwrap();
    let printed = |t: f64| {
        if t < 0.25 {
            1.0 - t
        } else if t < 0.5 {
            -0.6 * t + 0.9
        } else if t < 0.75 {
            0.6 * t + 0.3
        } else {
            t
        }
    };
    let err = grid1001()
        .map(|t| (a.value(t) - printed(t)).abs())
        .fold(0.0, f64::max);
    let (l, r) = a.endpoints();
    report(
        "AC2",
        "three-atom Pickands function",
        err <= 1e-12 && l == 0.25 && r == 0.75,
        start,
        1,
        format!("max piece err {err:e}, (L,R) = ({l}, {r})"),
    );
}

#[test]
fn ac03_mixed_measure_with_corrected_constant() {
    let start = Instant::now();
    let a = upsilon(&reference::mixed_measure()).unwrap();
    let printed_f = |t: f64| {
        if t < 0.5 {
            t
        } else if t < 0.75 {
            0.6
        } else if t < 1.0 {
            16.0 / 35.0 * t + 0.5
        } else {
            1.0
        }
    };
    let printed_a = |t: f64| {
        if t < 0.5 {
            t * t - t + 1.0
        } else {
            0.2 * t + 13.0 / 20.0
        }
    };
    let corrected = |t: f64| 16.0 / 35.0 * t * t + 19.0 / 35.0;

    let mut piece_err = 0.0f64;
    for t in grid1001() {
        let expect = if t < 0.75 { printed_a(t) } else { corrected(t) };
        piece_err = piece_err.max((a.value(t) - expect).abs());
    }

    // independent oracle: A(t) = 1 - t + 2∫₀ᵗ F by midpoint rule on 10⁶ panels,
    // compared at every thousandth panel boundary
    let panels = 1_000_000usize;
    let h = 1.0 / panels as f64;
    let mut integral = 0.0f64;
    let mut quad_err = 0.0f64;
    for i in 0..panels {
        integral += printed_f((i as f64 + 0.5) * h) * h;
        if (i + 1) % 1000 == 0 {
            let t = (i + 1) as f64 * h;
            quad_err = quad_err.max((1.0 - t + 2.0 * integral - a.value(t)).abs());
        }
    }
    let printed_constant_fails = (16.0 / 35.0 + 0.5 - 1.0f64).abs() > 1e-3;
    report(
        "AC3",
        "mixed measure, last piece 16/35 t² + 19/35",
        piece_err <= 1e-12 && quad_err <= 1e-9 && printed_constant_fails,
        start,
        5,
        format!(
            "piece err {piece_err:e}, quadrature err {quad_err:e}, A(1) with constant 1/2 = {}",
            16.0 / 35.0 + 0.5
        ),
    );
}

#[test]
fn ac04_graph_masses_match_sample_frequencies() {
    let start = Instant::now();
    let c = reference::three_atom_evc();
    let evc = c.as_evc().unwrap();
    let atoms = [0.25, 0.5, 0.75];
    let analytic: Vec<f64> = atoms.iter().map(|&t| evc.graph_mass(t).unwrap()).collect();
    let s = sample(&c, 100_000, 426);
    let mut counts = [0usize; 3];
    for &(x, y) in &s.points {
        for (k, &t) in atoms.iter().enumerate() {
            if (y - x.powf(1.0 / t - 1.0)).abs() <= 1e-9 {
                counts[k] += 1;
            }
        }
    }
    let freq: Vec<f64> = counts.iter().map(|&k| k as f64 / s.n() as f64).collect();
    let exact = [0.1, 0.5, 0.1];
    let ok = (0..3)
        .all(|k| (analytic[k] - exact[k]).abs() <= 1e-12 && (freq[k] - exact[k]).abs() <= 0.015);
    report(
        "AC4",
        "graph masses vs sample frequencies",
        ok,
        start,
        30,
        format!("analytic {analytic:?}, empirical {freq:?}"),
    );
}

#[test]
fn ac05_shuffle_one_sided_derivatives() {
    let start = Instant::now();
    let s = Shuffle::new(&[2, 3, 1]).unwrap();
    let c = Copula::Shuffle(s.clone());
    let mut rng = CounterRng::new(5);
    let (mut worst_plus, mut worst_minus, mut n) = (0.0f64, 0.0f64, 0);
    while n < 50 {
        let x = rng.next_uniform();
        if (3.0 * x - (3.0 * x).round()).abs() < 1e-5 {
            continue;
        }
        let p = partial_probe(&c, x, s.map(x)).unwrap();
        worst_plus = worst_plus.max(p.plus.unwrap().abs());
        worst_minus = worst_minus.max((p.minus.unwrap() - 1.0).abs());
        n += 1;
    }
    report(
        "AC5",
        "shuffle derivatives at the graph",
        worst_plus <= 1e-3 && worst_minus <= 1e-3,
        start,
        5,
        format!("max |d+| {worst_plus:e}, max |d- - 1| {worst_minus:e}"),
    );
}

#[test]
fn ac06_rotation_derivative_gaps() {
    let start = Instant::now();
    let rot = RotationCopula::with_terms(6).unwrap();
    let c = Copula::Rotation(rot.clone());
    let x0 = std::f64::consts::FRAC_1_PI;
    let mut worst = 0.0f64;
    for (j, &r) in rot.offsets().iter().enumerate() {
        let y = (x0 + r).fract();
        let gap = partial_probe(&c, x0, y).unwrap().gap().unwrap();
        worst = worst.max((gap - 0.5f64.powi(j as i32 + 1)).abs());
    }
    let scanned = nondiff_scan(&c, x0, 1000, DEFAULT_THRESHOLD).unwrap();
    report(
        "AC6",
        "rotation derivative gaps 2^-j",
        worst <= 1e-3 && scanned.len() == 6,
        start,
        5,
        format!("max |gap - 2^-j| {worst:e}, scan found {}", scanned.len()),
    );
}

#[test]
fn ac07_kernel_is_the_derivative_for_continuous_kernels() {
    let start = Instant::now();
    let g = reference::gumbel(2.0);
    let (mut pi_r, mut g_r) = (0.0f64, 0.0f64);
    for x in interior(21) {
        pi_r = pi_r.max(kernel_derivative_consistency(&Copula::Pi, x, 21));
        g_r = g_r.max(kernel_derivative_consistency(&g, x, 21));
    }
    let schwarz = schwarz_check(&g, 21, 1e-4);
    report(
        "AC7",
        "kernel/derivative consistency and symmetric densities",
        pi_r <= 1e-5 && g_r <= 1e-5 && schwarz <= 1e-3,
        start,
        10,
        format!("Pi {pi_r:e}, gumbel {g_r:e}, density mismatch {schwarz:e}"),
    );
}

#[test]
fn ac08_metric_oracles() {
    let start = Instant::now();
    let d1 = d_p(&Copula::M, &Copula::Pi, 1.0, 1024).value;
    // ∬|1[x<=y] - y| dx dy = ∫ y(1-y) + (1-y)y dy
    let oracle = 1.0 / 3.0;
    let mw = d_inf(&Copula::M, &Copula::W, 512);
    let mp = d_inf(&Copula::M, &Copula::Pi, 512);
    let ok = (d1 - oracle).abs() <= 2e-3
        && mw.value == 0.5
        && mp.value == 0.25
        && mw.argmax == Some((0.5, 0.5))
        && mp.argmax == Some((0.5, 0.5));
    report(
        "AC8",
        "metric oracles",
        ok,
        start,
        30,
        format!(
            "D1(M,Pi) {d1}, d_inf(M,W) {}, d_inf(M,Pi) {}",
            mw.value, mp.value
        ),
    );
}

#[test]
fn ac09_checkerboard_convergence() {
    let start = Instant::now();
    let c = reference::three_atom_evc();
    let ds: Vec<f64> = [4usize, 8, 16, 32]
        .iter()
        .map(|&n| {
            let cb = Copula::Checkerboard(Checkerboard::approximate(&c, n, Copula::Pi).unwrap());
            d_inf(&cb, &c, 512).value
        })
        .collect();
    let bounded = ds
        .iter()
        .zip([4.0, 8.0, 16.0, 32.0])
        .all(|(d, n)| *d <= 2.0 / n);
    let decreasing = ds.windows(2).all(|w| w[1] < w[0]);
    report(
        "AC9",
        "checkerboard approximation in d_inf",
        bounded && decreasing,
        start,
        60,
        format!("d_inf for N=4,8,16,32: {ds:?}"),
    );
}

#[test]
fn ac10_normalization() {
    let start = Instant::now();
    let mut rng = CounterRng::new(10);
    let (mut mean_err, mut mass_err) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let k = 1 + (rng.next_uniform() * 5.0) as usize;
        let mut atoms: Vec<(f64, f64)> = (0..k)
            .map(|_| (rng.next_uniform(), 0.05 + rng.next_uniform()))
            .collect();
        let dens = rng.next_uniform();
        let density = Density {
            breaks: vec![0.0, 0.5, 1.0],
            values: vec![dens, 2.0 * dens * rng.next_uniform()],
        };
        let total =
            atoms.iter().map(|a| a.1).sum::<f64>() + 0.5 * density.values.iter().sum::<f64>();
        atoms.iter_mut().for_each(|a| a.1 /= total);
        atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
        let density = Density {
            values: density.values.iter().map(|v| v / total).collect(),
            breaks: density.breaks,
        };
        let m = PickandsMeasure::new(atoms, Some(density), 0.0).unwrap();
        let n = m.normalize().unwrap();
        mean_err = mean_err.max((n.mean() - 0.5).abs());
        mass_err = mass_err.max((n.total_mass() - 1.0).abs());
    }
    report(
        "AC10",
        "normalization of 100 random measures",
        mean_err <= 1e-12 && mass_err <= 1e-12,
        start,
        1,
        format!("max mean err {mean_err:e}, max mass err {mass_err:e}"),
    );
}

#[test]
fn ac11_validity_sweep() {
    let start = Instant::now();
    let mut worst_axiom = (0.0f64, "");
    let mut worst_dis = (0.0f64, "");
    for (name, c) in shipped_families() {
        let r = validate_copula(&c, 64).worst();
        if r >= worst_axiom.0 {
            worst_axiom = (r, name);
        }
        for x in interior(9) {
            for y in interior(9) {
                let d = disintegration_residual(&c, x, y, 8192);
                if d >= worst_dis.0 {
                    worst_dis = (d, name);
                }
            }
        }
    }
    report(
        "AC11",
        "validity sweep over shipped families",
        worst_axiom.0 <= 1e-9 && worst_dis.0 <= 5e-4,
        start,
        120,
        format!(
            "worst axiom residual {:e} ({}), worst disintegration {:e} ({})",
            worst_axiom.0, worst_axiom.1, worst_dis.0, worst_dis.1
        ),
    );
}
