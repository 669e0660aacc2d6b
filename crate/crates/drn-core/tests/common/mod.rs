//! Shared helpers for the integration suites: fixture loading, small-vector
//! builders, and seeded generators for random networks.

#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;

use drn_core::exactmath::Rational;
use drn_core::model::{Drn, Path, State};
use drn_core::parser::parse_network;
use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn fixture(name: &str) -> Drn {
    let path = fixture_path(name);
    let text = fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("reading {}: {e}", path.display()));
    parse_network(&text).unwrap_or_else(|e| panic!("parsing {}: {e}", path.display()))
}

pub fn parse(text: &str) -> Drn {
    parse_network(text).expect("test network parses")
}

pub fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn bigs(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn state(v: &[i64]) -> State {
    State::new(bigs(v)).expect("nonnegative test state")
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(
    rng: &mut ChaCha8Rng,
    rows: usize,
    cols: usize,
    lo: i64,
    hi: i64,
) -> Vec<Vec<BigInt>> {
    (0..rows)
        .map(|_| (0..cols).map(|_| BigInt::from(rng.random_range(lo..=hi))).collect())
        .collect()
}

/// Random network with `origin ∈ [0, max_entry]^d` per reaction and drifts
/// bounded by `max_entry` in absolute value, never driving a product
/// negative.
pub fn random_drn(rng: &mut ChaCha8Rng, dim: usize, max_reactions: usize, max_entry: i64) -> Drn {
    let n = rng.random_range(1..=max_reactions);
    let species = (0..dim).map(|i| format!("S{i}")).collect();
    let mut drifts = Vec::with_capacity(n);
    let mut origins = Vec::with_capacity(n);
    for _ in 0..n {
        let origin: Vec<i64> = (0..dim).map(|_| rng.random_range(0..=max_entry)).collect();
        let drift: Vec<i64> =
            origin.iter().map(|&o| rng.random_range(-o.min(max_entry)..=max_entry)).collect();
        origins.push(origin.into_iter().map(BigInt::from).collect());
        drifts.push(drift.into_iter().map(BigInt::from).collect());
    }
    Drn::new(species, drifts, origins).expect("generated rows keep products nonnegative")
}

/// Weakly reversible network by construction: one or two directed cycles
/// over random distinct complexes, one reaction per cycle edge.
pub fn random_cycle_drn(rng: &mut ChaCha8Rng) -> Drn {
    let dim = rng.random_range(1..=3usize);
    let species = (0..dim).map(|i| format!("S{i}")).collect();
    let mut drifts: Vec<Vec<BigInt>> = Vec::new();
    let mut origins: Vec<Vec<BigInt>> = Vec::new();
    for _ in 0..rng.random_range(1..=2) {
        let len = rng.random_range(2..=4usize);
        let mut complexes: Vec<Vec<BigInt>> = Vec::new();
        while complexes.len() < len {
            let candidate: Vec<BigInt> =
                (0..dim).map(|_| BigInt::from(rng.random_range(0..=3))).collect();
            if !complexes.contains(&candidate) {
                complexes.push(candidate);
            }
        }
        for i in 0..len {
            let from = &complexes[i];
            let to = &complexes[(i + 1) % len];
            origins.push(from.clone());
            drifts.push(to.iter().zip(from).map(|(t, f)| t - f).collect());
        }
    }
    Drn::new(species, drifts, origins).expect("cycle edges keep products nonnegative")
}

pub fn random_state(rng: &mut ChaCha8Rng, dim: usize, max: i64) -> State {
    State::new((0..dim).map(|_| BigInt::from(rng.random_range(0..=max))).collect())
        .expect("nonnegative populations")
}

/// Random applicable walk of at most `steps` reactions starting at `from`.
pub fn random_trace(
    rng: &mut ChaCha8Rng,
    drn: &Drn,
    from: &State,
    steps: usize,
) -> (Path, State) {
    let mut here = from.clone();
    let mut taken = Vec::new();
    for _ in 0..steps {
        let applicable = drn.applicable(&here).expect("state dimension matches");
        if applicable.is_empty() {
            break;
        }
        let j = applicable[rng.random_range(0..applicable.len())];
        here = drn.apply(&here, j).expect("chosen reaction is applicable");
        taken.push(j);
    }
    (Path::new(taken), here)
}

/// Replays `path` from `from`, checking applicability at every step.
pub fn replay(drn: &Drn, from: &State, path: &Path) -> Result<State, String> {
    let mut here = from.clone();
    for &j in path.steps() {
        here = drn.apply(&here, j).map_err(|e| e.to_string())?;
    }
    Ok(here)
}

/// Largest population component over the whole (unchecked) trace of `path`
/// from `start`, clamped at zero, as a species-cap value.
pub fn trace_peak(drn: &Drn, start: &[BigInt], path: &Path) -> u64 {
    drn_core::model::apply_path_trace(drn, start, path)
        .iter()
        .flatten()
        .map(|v| u64::try_from(v.max(&BigInt::from(0)).clone()).unwrap_or(u64::MAX))
        .max()
        .unwrap_or(0)
}

/// `λ · m` as a row vector of length `d`.
pub fn row_combination(lambda: &[BigInt], m: &[Vec<BigInt>], d: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::from(0); d];
    for (l, row) in lambda.iter().zip(m) {
        for c in 0..d {
            out[c] += l * &row[c];
        }
    }
    out
}

/// First vector in `[lo, hi]^len` (odometer order) satisfying `pred`.
pub fn exists_vector(
    lo: i64,
    hi: i64,
    len: usize,
    pred: impl Fn(&[i64]) -> bool,
) -> Option<Vec<i64>> {
    let span = (hi - lo + 1) as usize;
    let total = span.pow(len as u32);
    for code in 0..total {
        let mut v = Vec::with_capacity(len);
        let mut rest = code;
        for _ in 0..len {
            v.push(lo + (rest % span) as i64);
            rest /= span;
        }
        if pred(&v) {
            return Some(v);
        }
    }
    None
}
