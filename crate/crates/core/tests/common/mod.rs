#![allow(dead_code)]

use gkz::lattice::is_nonresonant;
use gkz::rational::frac;
use gkz::{build_config, LatticeConfig, Parameter, PointConfig, Rat};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Largest volume kept in the corpus; solution counts and coefficient sizes
/// grow with it.
pub const MAX_VOL: u64 = 64;

/// A valid configuration with `n <= 5` points in `Z^d`, `n - 1 <= d <= 4`,
/// entries in `[-4, 4]` and volume at most [`MAX_VOL`].
pub fn random_config(rng: &mut ChaCha8Rng) -> LatticeConfig {
    loop {
        let n = rng.gen_range(2..=5usize);
        let d = rng.gen_range((n - 1).max(1)..=4usize);
        let cols: Vec<Vec<i64>> = (0..n).map(|_| (0..d).map(|_| rng.gen_range(-4..=4)).collect()).collect();
        if let Ok(c) = PointConfig::new(cols).and_then(build_config) {
            if c.vol() <= MAX_VOL {
                return c;
            }
        }
    }
}

pub fn corpus(seed: u64, size: usize) -> Vec<LatticeConfig> {
    let mut r = rng(seed);
    (0..size).map(|_| random_config(&mut r)).collect()
}

/// Rational with small numerator and a denominator from `{2, 3, 5, 7}`.
pub fn random_fraction(rng: &mut ChaCha8Rng) -> Rat {
    let den = [2, 3, 5, 7][rng.gen_range(0..4)];
    frac(rng.gen_range(-12..=12), den)
}

/// `beta = sum w_mu a_mu` for the given weights.
pub fn parameter_from_weights(config: &LatticeConfig, w: &[Rat]) -> Parameter {
    Parameter::new(config, config.combine(w)).expect("in the span by construction")
}

pub fn random_nonresonant(rng: &mut ChaCha8Rng, config: &LatticeConfig) -> Parameter {
    loop {
        let w: Vec<Rat> = (0..config.n()).map(|_| random_fraction(rng)).collect();
        let beta = parameter_from_weights(config, &w);
        if is_nonresonant(config, &beta).nonresonant {
            return beta;
        }
    }
}

/// Integer weights half the time, so resonant parameters are common.
pub fn random_parameter(rng: &mut ChaCha8Rng, config: &LatticeConfig) -> Parameter {
    let w: Vec<Rat> = (0..config.n())
        .map(|_| if rng.gen_bool(0.5) { Rat::from_integer(rng.gen_range(-6..=6).into()) } else { random_fraction(rng) })
        .collect();
    parameter_from_weights(config, &w)
}

/// Nonresonant parameter whose weights are integral on the positive side,
/// so the MUM conditions on `beta` can hold.
pub fn random_mum_candidate(rng: &mut ChaCha8Rng, config: &LatticeConfig) -> Option<Parameter> {
    for _ in 0..50 {
        let w: Vec<Rat> = (0..config.n())
            .map(|mu| {
                if config.is_positive(mu) {
                    Rat::from_integer(rng.gen_range(0..=4).into())
                } else {
                    random_fraction(rng)
                }
            })
            .collect();
        let beta = parameter_from_weights(config, &w);
        if is_nonresonant(config, &beta).nonresonant {
            return Some(beta);
        }
    }
    None
}

pub fn random_lift(rng: &mut ChaCha8Rng, n: usize) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(-3..=3)).collect()
}
