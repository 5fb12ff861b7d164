#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

use dualfit::{compute_stats, Dataset, SufficientStats};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

pub fn data_file(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

pub fn golden_file(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

pub fn dualfit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dualfit"))
        .args(args)
        .output()
        .expect("binary runs")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

pub fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Noisy linear data with `3 ≤ n ≤ 100` and correlation in `(0.05, 1)`.
pub fn random_dataset(rng: &mut ChaCha8Rng) -> (Dataset, SufficientStats) {
    loop {
        let n = rng.random_range(3..=100);
        let x_mean = rng.random_range(-10.0..10.0);
        let x_sd = rng.random_range(0.5..5.0);
        let slope = rng.random_range(0.2..5.0);
        let offset = rng.random_range(-5.0..5.0);
        let noise_sd = rng.random_range(0.05..3.0) * x_sd * slope;
        let xs = Normal::new(x_mean, x_sd).unwrap();
        let noise = Normal::new(0.0, noise_sd).unwrap();
        let points: Vec<(f64, f64)> = (0..n)
            .map(|_| {
                let x = xs.sample(rng);
                (x, offset + slope * x + noise.sample(rng))
            })
            .collect();
        let data = Dataset::new(points).unwrap();
        let Ok(stats) = compute_stats(&data) else {
            continue;
        };
        if stats.rho > 0.05 && stats.rho < 1.0 {
            return (data, stats);
        }
    }
}

pub fn to_csv(data: &Dataset) -> String {
    let mut s = String::from("x,y\n");
    for (x, y) in data.points() {
        s.push_str(&format!("{x:?},{y:?}\n"));
    }
    s
}

pub fn raw_sse(data: &Dataset, b0: f64, b1: f64, gamma: f64) -> f64 {
    let vertical: f64 = data
        .points()
        .iter()
        .map(|&(x, y)| (y - b0 - b1 * x).powi(2))
        .sum();
    let horizontal: f64 = data
        .points()
        .iter()
        .map(|&(x, y)| (x - y / b1 + b0 / b1).powi(2))
        .sum();
    gamma * vertical + (1.0 - gamma) * horizontal
}

pub fn worked_example() -> Dataset {
    Dataset::new(vec![(0.0, 0.0), (0.0, 0.0), (1.0, 0.0), (1.0, 1.0)]).unwrap()
}
