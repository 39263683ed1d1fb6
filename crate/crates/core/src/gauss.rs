//! Closed-form Gauss hypergeometric series, evaluated directly.
//!
//! The configuration has columns `(1,1,-1), (0,0,1), (1,0,0), (0,1,0)` and
//! parameter `beta = (-theta1, -theta2, sigma - 1)`.
//! Nothing here goes through the series machinery; the values are plain
//! Pochhammer quotients, for cross-checking it.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{build_config, LatticeConfig, Parameter, PointConfig};
use crate::rational::{rat, Rat};
use crate::series::LogSeries;

pub const GAUSS_RELATION: [i64; 4] = [1, 1, -1, -1];

pub fn gauss_config() -> LatticeConfig {
    let cols = vec![vec![1, 1, -1], vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]];
    build_config(PointConfig::new(cols).expect("valid points")).expect("codimension one")
}

pub fn gauss_parameter(config: &LatticeConfig, theta1: &Rat, theta2: &Rat, sigma: &Rat) -> Result<Parameter> {
    Parameter::new(config, vec![-theta1.clone(), -theta2.clone(), sigma - Rat::one()])
}

/// Configuration of `pFq` with `p` upper and `q` lower parameters, in `Z^(p+q)`:
/// `a1 = (1,..,1,-1,..,-1)` (`p` ones) followed by the unit vectors `e_d, ..., e_1`.
/// The relation is `a1 + ... + a_(q+1) - (a_(q+2) + ... + a_(p+q+1)) = 0`.
pub fn pfq_config(p: usize, q: usize) -> Result<LatticeConfig> {
    let d = p + q;
    let mut cols = vec![(0..d).map(|i| if i < p { 1 } else { -1 }).collect::<Vec<i64>>()];
    for i in (0..d).rev() {
        let mut e = vec![0; d];
        e[i] = 1;
        cols.push(e);
    }
    build_config(PointConfig::new(cols)?)
}

/// `beta = (-alpha_1, .., -alpha_p, gamma_1 - 1, .., gamma_q - 1)`.
pub fn pfq_parameter(config: &LatticeConfig, alpha: &[Rat], gamma: &[Rat]) -> Result<Parameter> {
    let beta = alpha.iter().map(|a| -a.clone()).chain(gamma.iter().map(|g| g - Rat::one())).collect();
    Parameter::new(config, beta)
}

fn rising(x: &Rat, z: i64) -> Rat {
    (0..z).fold(Rat::one(), |acc, i| acc * (x + rat(i)))
}

fn fact(z: i64) -> Rat {
    (1..=z).fold(Rat::one(), |acc, i| acc * rat(i))
}

/// `(a)_z (b)_z / ((c)_z z!)`.
fn hyper_term(a: &Rat, b: &Rat, c: &Rat, z: i64) -> Rat {
    rising(a, z) * rising(b, z) / (rising(c, z) * fact(z))
}

/// The two logarithm-free solutions for `sigma` not an integer, on `z = 0..=n`:
///
/// ```text
/// x^(0, sigma-1, -theta1, -theta2) * sum (theta1)_z (theta2)_z / ((sigma)_z z!) x0^z
/// x^(1-sigma, 0, sigma-theta1-1, sigma-theta2-1)
///     * sum (theta1-sigma+1)_z (theta2-sigma+1)_z / ((2-sigma)_z z!) x0^z
/// ```
pub fn gauss_oracle(theta1: &Rat, theta2: &Rat, sigma: &Rat, n: i64) -> Result<(LogSeries, LogSeries)> {
    if sigma.is_integer() {
        return Err(Error::SigmaIntegral);
    }
    let one = Rat::one();
    let base1 = vec![rat(0), sigma - &one, -theta1.clone(), -theta2.clone()];
    let base2 = vec![&one - sigma, rat(0), sigma - theta1 - &one, sigma - theta2 - &one];
    let mut first = LogSeries::zeros(base1, GAUSS_RELATION.to_vec(), 0, n, 0);
    let mut second = LogSeries::zeros(base2, GAUSS_RELATION.to_vec(), 0, n, 0);
    let (a2, b2, c2) = (theta1 - sigma + &one, theta2 - sigma + &one, rat(2) - sigma);
    for z in 0..=n {
        first.set(z, 0, hyper_term(theta1, theta2, sigma, z));
        second.set(z, 0, hyper_term(&a2, &b2, &c2, z));
    }
    Ok((first, second))
}

/// The logarithmic solution for integral `sigma >= 1`, on `z = 1-sigma..=n`:
///
/// ```text
/// x^(0, sigma-1, -theta1, -theta2) * (
///     sum_{z>=0} F_z x0^z log x0
///   - sum_{z=1-sigma..-1} (-z-1)! (1-sigma)_{-z} / ((1-theta1)_{-z} (1-theta2)_{-z}) x0^z
///   + sum_{z>=1} F_z sum_{s<z} (1/(theta1+s) + 1/(theta2+s) - 1/(sigma+s) - 1/(1+s)) x0^z )
/// ```
///
/// with `F_z = (theta1)_z (theta2)_z / ((sigma)_z z!)`.
pub fn gauss_log_oracle(theta1: &Rat, theta2: &Rat, sigma: i64, n: i64) -> Result<LogSeries> {
    if sigma < 1 {
        return Err(Error::InvalidConfig(format!("sigma = {sigma}: the logarithmic branch needs sigma >= 1")));
    }
    if theta1.is_integer() || theta2.is_integer() {
        return Err(Error::InvalidConfig("theta1 and theta2 must not be integers".into()));
    }
    let s = rat(sigma);
    let base = vec![rat(0), rat(sigma - 1), -theta1.clone(), -theta2.clone()];
    let lo = 1 - sigma;
    let mut out = LogSeries::zeros(base, GAUSS_RELATION.to_vec(), lo, n.max(lo), 1);
    let one = Rat::one();
    for z in lo..0 {
        let m = -z;
        let num = fact(m - 1) * rising(&(&one - &s), m);
        let den = rising(&(&one - theta1), m) * rising(&(&one - theta2), m);
        out.set(z, 0, -(num / den));
    }
    let mut harmonic = Rat::zero();
    for z in 0..=n {
        let f = hyper_term(theta1, theta2, &s, z);
        if z > 0 {
            let q = rat(z - 1);
            harmonic += (theta1 + &q).recip() + (theta2 + &q).recip() - (&s + &q).recip() - (&one + &q).recip();
        }
        out.set(z, 0, &f * &harmonic);
        out.set(z, 1, f);
    }
    Ok(out)
}
