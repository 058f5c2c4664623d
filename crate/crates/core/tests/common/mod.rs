//! Brute-force oracles and synthetic problems shared by the integration
//! tests. Nothing here calls into the code paths it is used to check.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tsc_core::data::{Case, TimeSeriesDataset};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Minimum over every monotone lattice path from `start` to `(n, n)` using
/// diagonal, down and right steps. `step_cost(kind, i, j)` prices the step
/// that lands on node `(i, j)`; `kind` is 0 = diagonal, 1 = down, 2 = right.
/// Nodes rejected by `allowed` are never entered.
pub fn min_over_paths(
    n: usize,
    start: (usize, usize),
    allowed: &dyn Fn(usize, usize) -> bool,
    step_cost: &dyn Fn(u8, usize, usize) -> f64,
) -> f64 {
    fn rec(
        n: usize,
        i: usize,
        j: usize,
        acc: f64,
        best: &mut f64,
        allowed: &dyn Fn(usize, usize) -> bool,
        step_cost: &dyn Fn(u8, usize, usize) -> f64,
    ) {
        if (i, j) == (n, n) {
            *best = best.min(acc);
            return;
        }
        for (kind, di, dj) in [(0u8, 1, 1), (1, 1, 0), (2, 0, 1)] {
            let (p, q) = (i + di, j + dj);
            if p <= n && q <= n && allowed(p, q) {
                rec(n, p, q, acc + step_cost(kind, p, q), best, allowed, step_cost);
            }
        }
    }
    let mut best = f64::INFINITY;
    rec(n, start.0, start.1, 0.0, &mut best, allowed, step_cost);
    best
}

fn radius(w: f64, n: usize) -> usize {
    // independent of the library: exact rational ceil on hundredths
    let hundredths = (w * 100.0).round() as usize;
    (hundredths * n).div_ceil(100).min(n)
}

/// DTW by enumerating warping paths over 1-based cells `(1,1) -> (n,n)`.
pub fn dtw_oracle(a: &[f64], b: &[f64], w: f64) -> f64 {
    let n = a.len();
    let r = radius(w, n);
    let first = (a[0] - b[0]).powi(2);
    first
        + min_over_paths(
            n,
            (1, 1),
            &|i, j| i.abs_diff(j) <= r,
            &|_, i, j| (a[i - 1] - b[j - 1]).powi(2),
        )
}

/// ERP by enumerating edit scripts over lattice nodes `(0,0) -> (n,n)`.
pub fn erp_oracle(a: &[f64], b: &[f64], g: f64, w: f64) -> f64 {
    let n = a.len();
    let r = radius(w, n);
    min_over_paths(n, (0, 0), &|i, j| i.abs_diff(j) <= r, &|kind, i, j| match kind {
        0 => (a[i - 1] - b[j - 1]).powi(2),
        1 => (a[i - 1] - g).powi(2),
        _ => (b[j - 1] - g).powi(2),
    })
}

fn msm_cost(new: f64, x: f64, y: f64, c: f64) -> f64 {
    if (x <= new && new <= y) || (y <= new && new <= x) {
        c
    } else {
        c + (new - x).abs().min((new - y).abs())
    }
}

/// MSM by enumerating move/split/merge scripts.
pub fn msm_oracle(a: &[f64], b: &[f64], c: f64) -> f64 {
    let n = a.len();
    (a[0] - b[0]).abs()
        + min_over_paths(n, (1, 1), &|_, _| true, &|kind, i, j| {
            let (i, j) = (i - 1, j - 1);
            match kind {
                0 => (a[i] - b[j]).abs(),
                1 => msm_cost(a[i], a[i - 1], b[j], c),
                _ => msm_cost(b[j], a[i], b[j - 1], c),
            }
        })
}

/// TWED by enumerating edit paths; series are padded with 0 at time 0.
pub fn twed_oracle(a: &[f64], b: &[f64], nu: f64, lambda: f64) -> f64 {
    let n = a.len();
    let pa = |i: usize| if i == 0 { 0.0 } else { a[i - 1] };
    let pb = |j: usize| if j == 0 { 0.0 } else { b[j - 1] };
    min_over_paths(n, (0, 0), &|i, j| (i == 0) == (j == 0), &|kind, i, j| match kind {
        0 => {
            (pa(i) - pb(j)).powi(2) + (pa(i - 1) - pb(j - 1)).powi(2) + nu * 2.0 * i.abs_diff(j) as f64
        }
        1 => (pa(i - 1) - pa(i)).powi(2) + nu + lambda,
        _ => (pb(j - 1) - pb(j)).powi(2) + nu + lambda,
    })
}

/// LCSS by checking every pair of equal-size index subsets.
pub fn lcss_oracle(a: &[f64], b: &[f64], epsilon: f64, delta: usize) -> f64 {
    let n = a.len();
    let mut best = 0;
    for ma in 0u32..(1 << n) {
        let ia: Vec<usize> = (0..n).filter(|&i| ma & (1 << i) != 0).collect();
        if ia.len() <= best {
            continue;
        }
        for mb in 0u32..(1 << n) {
            if mb.count_ones() as usize != ia.len() {
                continue;
            }
            let ib: Vec<usize> = (0..n).filter(|&j| mb & (1 << j) != 0).collect();
            if ia
                .iter()
                .zip(&ib)
                .all(|(&i, &j)| (a[i] - b[j]).abs() <= epsilon && i.abs_diff(j) <= delta)
            {
                best = ia.len();
            }
        }
    }
    1.0 - best as f64 / n as f64
}

/// Exact two-sided Wilcoxon signed-rank p-value by enumerating all 2^n
/// sign assignments of the midranked absolute differences.
pub fn wilcoxon_exact_oracle(diffs: &[f64]) -> f64 {
    let d: Vec<f64> = diffs.iter().copied().filter(|&x| x != 0.0).collect();
    let n = d.len();
    // midranks by counting
    let ranks: Vec<f64> = d
        .iter()
        .map(|x| {
            let less = d.iter().filter(|y| y.abs() < x.abs()).count() as f64;
            let eq = d.iter().filter(|y| y.abs() == x.abs()).count() as f64;
            less + (eq + 1.0) / 2.0
        })
        .collect();
    let w_plus: f64 = d.iter().zip(&ranks).filter(|(x, _)| **x > 0.0).map(|(_, r)| r).sum();
    let total: f64 = ranks.iter().sum();
    let mean = total / 2.0;
    let obs = (w_plus - mean).abs();
    let mut extreme = 0u64;
    for mask in 0u64..(1 << n) {
        let s: f64 = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| ranks[i]).sum();
        if (s - mean).abs() >= obs - 1e-9 {
            extreme += 1;
        }
    }
    (extreme as f64 / (1u64 << n) as f64).min(1.0)
}

/// Leave-one-out 1NN accuracy from a full distance matrix.
pub fn loo_accuracy_from_matrix(dist: &[Vec<f64>], labels: &[usize]) -> f64 {
    let n = labels.len();
    let mut correct = 0;
    for i in 0..n {
        let mut best = f64::INFINITY;
        let mut best_j = usize::MAX;
        for j in 0..n {
            if j != i && dist[i][j] < best {
                best = dist[i][j];
                best_j = j;
            }
        }
        if labels[best_j] == labels[i] {
            correct += 1;
        }
    }
    correct as f64 / n as f64
}

pub fn gaussian(rng: &mut impl Rng) -> f64 {
    let u1: f64 = rng.random::<f64>().max(1e-300);
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

fn dataset(name: &str, rows: Vec<(Vec<f64>, &str)>) -> TimeSeriesDataset {
    let cases = rows
        .into_iter()
        .map(|(values, l)| Case {
            values,
            label: l.to_owned(),
        })
        .collect();
    TimeSeriesDataset::new(name, vec!["0".into(), "1".into()], cases, None).unwrap()
}

/// Class 0 sits at level 0, class 1 at level 1, with Gaussian noise.
pub fn constant_level(n_per_class: usize, len: usize, noise: f64, seed: u64) -> TimeSeriesDataset {
    let mut r = rng(seed);
    let mut rows = Vec::new();
    for i in 0..2 * n_per_class {
        let c = i % 2;
        let v = (0..len).map(|_| c as f64 + noise * gaussian(&mut r)).collect();
        rows.push((v, if c == 0 { "0" } else { "1" }));
    }
    dataset("ConstantLevel", rows)
}

/// Sines of period 8 (class 0) and 32 (class 1) with random phase and noise.
pub fn spectral(n_per_class: usize, len: usize, noise: f64, seed: u64) -> TimeSeriesDataset {
    let mut r = rng(seed);
    let mut rows = Vec::new();
    for i in 0..2 * n_per_class {
        let c = i % 2;
        let period = if c == 0 { 8.0 } else { 32.0 };
        let phase = r.random::<f64>() * std::f64::consts::TAU;
        let v = (0..len)
            .map(|t| (std::f64::consts::TAU * t as f64 / period + phase).sin() + noise * gaussian(&mut r))
            .collect();
        rows.push((v, if c == 0 { "0" } else { "1" }));
    }
    dataset("Spectral", rows)
}

/// Gaussian noise; class 1 additionally carries the spike `[0, 10, 0]`
/// at a random position.
pub fn planted_spike(n_per_class: usize, len: usize, noise: f64, seed: u64) -> TimeSeriesDataset {
    let mut r = rng(seed);
    let mut rows = Vec::new();
    for i in 0..2 * n_per_class {
        let c = i % 2;
        let mut v: Vec<f64> = (0..len).map(|_| noise * gaussian(&mut r)).collect();
        if c == 1 {
            let at = r.random_range(0..len - 3);
            v[at + 1] += 10.0;
        }
        rows.push((v, if c == 0 { "0" } else { "1" }));
    }
    dataset("PlantedSpike", rows)
}

/// Random small dataset with `n` cases of length `len` over `k` classes.
pub fn random_dataset(n: usize, len: usize, k: usize, seed: u64) -> TimeSeriesDataset {
    let mut r = rng(seed);
    let labels: Vec<String> = (0..k).map(|c| c.to_string()).collect();
    let cases = (0..n)
        .map(|i| {
            let c = i % k;
            Case {
                values: (0..len).map(|t| (t as f64 * 0.3 * (c + 1) as f64).sin() + gaussian(&mut r) * 0.7).collect(),
                label: labels[c].clone(),
            }
        })
        .collect();
    TimeSeriesDataset::new("Random", labels, cases, None).unwrap()
}

pub fn accuracy(probas: &[Vec<f64>], targets: &[usize]) -> f64 {
    let correct = probas
        .iter()
        .zip(targets)
        .filter(|(p, &t)| {
            let mut best = 0;
            for (i, v) in p.iter().enumerate() {
                if *v > p[best] {
                    best = i;
                }
            }
            best == t
        })
        .count();
    correct as f64 / targets.len() as f64
}
