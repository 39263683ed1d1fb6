//! Symbolic application of the box and Euler operators to a [`LogSeries`].
//!
//! Derivatives act on the `(z, r)` grid directly, using
//! `d/dx_mu (x^w log^r x0) = (w_mu log^r x0 + r l_mu log^(r-1) x0) x^(w - e_mu)`,
//! since `x0 = x^l`. A residual is exact; `passed` means literally zero.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::lattice::LatticeConfig;
use crate::rational::{fmt_rat, rat, Rat};
use crate::series::LogSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operator {
    Box,
    /// Euler operator of row `i` of `A`.
    Euler(usize),
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operator::Box => write!(f, "box"),
            Operator::Euler(i) => write!(f, "euler[{i}]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub z: i64,
    pub r: usize,
    pub residual: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorReport {
    pub operator: Operator,
    pub window: (i64, i64),
    /// `z` range whose residual depends only on coefficients inside the window.
    pub safe_window: Option<(i64, i64)>,
    /// Residual on the safe window, on its own monomial grid.
    pub residual: LogSeries,
    pub passed: bool,
    pub first_failure: Option<Failure>,
}

impl OperatorReport {
    fn from_residual(operator: Operator, window: (i64, i64), residual: LogSeries) -> Self {
        let first_failure = residual.terms().into_iter().next().map(|(z, r, c)| Failure { z, r, residual: c });
        let safe_window = (residual.z_lo <= residual.z_hi).then_some((residual.z_lo, residual.z_hi));
        Self { operator, window, safe_window, residual, passed: first_failure.is_none(), first_failure }
    }

    pub fn to_wire(&self) -> ReportWire {
        ReportWire {
            operator: self.operator.to_string(),
            safe_window: self.safe_window.map(|(a, b)| [a, b]),
            passed: self.passed,
            first_failure: self.first_failure.as_ref().map(|f| FailureWire {
                z: f.z,
                r: f.r,
                residual: fmt_rat(&f.residual),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportWire {
    pub operator: String,
    pub safe_window: Option<[i64; 2]>,
    pub passed: bool,
    pub first_failure: Option<FailureWire>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailureWire {
    pub z: i64,
    pub r: usize,
    pub residual: String,
}

/// Applies `d/dx_mu` `times` times to `x^w * sum_r p[r] log^r x0 / den`,
/// in place. With `w_mu = a/q` every step scales by `q`, so `p` stays integral.
fn differentiate(w: &mut [Rat], p: &mut [BigInt], den: &mut BigInt, mu: usize, times: u64, l_mu: i64) {
    let q = w[mu].denom().clone();
    let mut a = w[mu].numer().clone();
    let lq = &q * l_mu;
    let top = p.len();
    for _ in 0..times {
        for r in 0..top {
            let carry = if r + 1 < top { &lq * (r as i64 + 1) * &p[r + 1] } else { BigInt::zero() };
            p[r] = &a * &p[r] + carry;
        }
        a -= &q;
    }
    *den *= q.pow(times as u32);
    w[mu] -= rat(times as i64);
}

/// Image of the `z` column under `prod_{mu in side} d_mu^|l_mu|`.
fn side_image(series: &LogSeries, z: i64, side: &[usize]) -> Vec<Rat> {
    let column: Vec<Rat> = (0..=series.r_max).map(|r| series.get(z, r)).collect();
    if column.iter().all(Zero::is_zero) {
        return column;
    }
    let mut den = column.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut p: Vec<BigInt> = column.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    let mut w = series.exponent_at(z);
    for &mu in side {
        let l = series.relation[mu];
        differentiate(&mut w, &mut p, &mut den, mu, l.unsigned_abs(), l);
    }
    p.into_iter().map(|x| Rat::new(x, den.clone())).collect()
}

/// `(prod_{l_i > 0} d_i^l_i - prod_{l_j < 0} d_j^-l_j)` applied to the series.
///
/// Both images land on the grid `x^(w0 - l_minus + z l)`: the positive side
/// sends input `z` to `z - 1`, the negative side keeps it. The safe window of
/// an input `[lo, hi]` is therefore `[lo, hi - 1]`.
pub fn apply_box(config: &LatticeConfig, series: &LogSeries) -> OperatorReport {
    let rel = config.relation();
    debug_assert_eq!(series.relation, rel);
    let positive = config.positive_indices();
    let negative = config.negative_indices();
    let base: Vec<Rat> = series
        .base_exponent
        .iter()
        .zip(rel)
        .map(|(w, &l)| if l < 0 { w + rat(l) } else { w.clone() })
        .collect();
    let (lo, hi) = (series.z_lo, series.z_hi - 1);
    let mut residual = LogSeries::zeros(base, rel.to_vec(), lo, hi, series.r_max);
    for z in lo..=hi {
        let plus = side_image(series, z + 1, &positive);
        let minus = side_image(series, z, &negative);
        for (r, (a, b)) in plus.into_iter().zip(minus).enumerate() {
            residual.set(z, r, a - b);
        }
    }
    OperatorReport::from_residual(Operator::Box, (series.z_lo, series.z_hi), residual)
}

/// `sum_j a_ij x_j d_j - parameter_i` for every row `i`. These do not move `z`,
/// so the whole window is safe.
pub fn apply_euler(config: &LatticeConfig, parameter: &[Rat], series: &LogSeries) -> Vec<OperatorReport> {
    let a = config.points().matrix();
    let rel = config.relation();
    (0..config.d())
        .map(|i| {
            let log_shift = rat(a[i].iter().zip(rel).map(|(x, l)| x * l).sum::<i64>());
            let mut residual =
                LogSeries::zeros(series.base_exponent.clone(), rel.to_vec(), series.z_lo, series.z_hi, series.r_max);
            for z in series.z_lo..=series.z_hi {
                let w = series.exponent_at(z);
                let weight: Rat = a[i].iter().zip(&w).map(|(&x, wj)| rat(x) * wj).sum::<Rat>() - &parameter[i];
                for r in 0..=series.r_max {
                    let next = if r < series.r_max {
                        rat((r + 1) as i64) * &log_shift * series.get(z, r + 1)
                    } else {
                        Rat::zero()
                    };
                    residual.set(z, r, &weight * series.get(z, r) + next);
                }
            }
            OperatorReport::from_residual(Operator::Euler(i), (series.z_lo, series.z_hi), residual)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub reports: Vec<OperatorReport>,
    pub passed: bool,
}

impl Certificate {
    pub fn to_wire(&self) -> Vec<ReportWire> {
        self.reports.iter().map(OperatorReport::to_wire).collect()
    }

    pub fn first_failed(&self) -> Option<&OperatorReport> {
        self.reports.iter().find(|r| !r.passed)
    }
}

/// Box operator plus every Euler operator.
pub fn certify(config: &LatticeConfig, parameter: &[Rat], series: &LogSeries) -> Certificate {
    let mut reports = vec![apply_box(config, series)];
    reports.extend(apply_euler(config, parameter, series));
    let passed = reports.iter().all(|r| r.passed);
    Certificate { reports, passed }
}
