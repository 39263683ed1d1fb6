//! Truncated Nilsson series and the logarithmic solutions built from them.
//!
//! Every series here lives on the grid `x^(w0 + z l) log^r x0` where `l` is the
//! signed relation. A window `[z_lo, z_hi]` restricts the infinite series; each
//! stored coefficient is the exact value of the untruncated series at that `z`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::coefficients::coefficient_m;
use crate::error::{Error, Result};
use crate::exponents::{exponent_set_prime, support_verdict, Exponent, SupportVerdict};
use crate::lattice::{is_nonresonant, LatticeConfig, Parameter};
use crate::rational::{binomial, factorial, fmt_rat, parse_rat, rat, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogSeries {
    pub base_exponent: Vec<Rat>,
    pub relation: Vec<i64>,
    pub z_lo: i64,
    pub z_hi: i64,
    pub r_max: usize,
    coeffs: Vec<Vec<Rat>>,
}

impl LogSeries {
    pub fn zeros(base_exponent: Vec<Rat>, relation: Vec<i64>, z_lo: i64, z_hi: i64, r_max: usize) -> Self {
        let len = if z_hi >= z_lo { (z_hi - z_lo + 1) as usize } else { 0 };
        Self {
            base_exponent,
            relation,
            z_lo,
            z_hi,
            r_max,
            coeffs: vec![vec![Rat::zero(); r_max + 1]; len],
        }
    }

    pub fn in_window(&self, z: i64) -> bool {
        z >= self.z_lo && z <= self.z_hi
    }

    /// Coefficient of `x^(w0 + z l) log^r x0`; zero off the stored grid.
    pub fn get(&self, z: i64, r: usize) -> Rat {
        if self.in_window(z) && r <= self.r_max {
            self.coeffs[(z - self.z_lo) as usize][r].clone()
        } else {
            Rat::zero()
        }
    }

    pub fn set(&mut self, z: i64, r: usize, value: Rat) {
        assert!(self.in_window(z) && r <= self.r_max, "({z}, {r}) outside the series grid");
        self.coeffs[(z - self.z_lo) as usize][r] = value;
    }

    pub fn add(&mut self, z: i64, r: usize, value: &Rat) {
        assert!(self.in_window(z) && r <= self.r_max, "({z}, {r}) outside the series grid");
        self.coeffs[(z - self.z_lo) as usize][r] += value;
    }

    /// Smallest `z` in the window with a nonzero coefficient.
    pub fn min_z_nonzero(&self) -> Option<i64> {
        self.terms().first().map(|t| t.0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(Zero::is_zero)
    }

    /// Nonzero terms as `(z, r, coeff)`, ordered by `z` then `r`.
    pub fn terms(&self) -> Vec<(i64, usize, Rat)> {
        let mut out = Vec::new();
        for (off, row) in self.coeffs.iter().enumerate() {
            for (r, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    out.push((self.z_lo + off as i64, r, c.clone()));
                }
            }
        }
        out
    }

    /// Coefficients of `log^r x0` across the window.
    pub fn log_part(&self, r: usize) -> Vec<Rat> {
        (self.z_lo..=self.z_hi).map(|z| self.get(z, r)).collect()
    }

    /// Highest log power with a nonzero coefficient.
    pub fn log_degree(&self) -> Option<usize> {
        (0..=self.r_max).rev().find(|&r| self.log_part(r).iter().any(|c| !c.is_zero()))
    }

    /// Exponent vector `w0 + z l` of the monomial at `z`.
    pub fn exponent_at(&self, z: i64) -> Vec<Rat> {
        self.base_exponent.iter().zip(&self.relation).map(|(w, &l)| w + rat(z * l)).collect()
    }

    /// Same series on the sub-window `[lo, hi]` (clamped).
    pub fn restrict(&self, lo: i64, hi: i64) -> Self {
        let (lo, hi) = (lo.max(self.z_lo), hi.min(self.z_hi));
        let mut out = Self::zeros(self.base_exponent.clone(), self.relation.clone(), lo, hi, self.r_max);
        for z in lo..=hi {
            for r in 0..=self.r_max {
                out.set(z, r, self.get(z, r));
            }
        }
        out
    }

    pub fn scaled(&self, factor: &Rat) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut().flatten() {
            *c *= factor;
        }
        out
    }

    pub fn to_wire(&self) -> LogSeriesWire {
        LogSeriesWire {
            base_exponent: self.base_exponent.iter().map(fmt_rat).collect(),
            relation: self.relation.clone(),
            window: [self.z_lo, self.z_hi],
            r_max: self.r_max,
            terms: self
                .terms()
                .into_iter()
                .map(|(z, r, c)| TermWire { z, r, coeff: fmt_rat(&c) })
                .collect(),
        }
    }

    pub fn from_wire(wire: &LogSeriesWire) -> Result<Self> {
        let base = wire
            .base_exponent
            .iter()
            .map(|s| parse_rat(s).ok_or_else(|| Error::Parse(format!("base_exponent: invalid rational '{s}'"))))
            .collect::<Result<Vec<_>>>()?;
        if base.len() != wire.relation.len() {
            return Err(Error::DimensionMismatch { expected: wire.relation.len(), found: base.len() });
        }
        let [lo, hi] = wire.window;
        let mut out = Self::zeros(base, wire.relation.clone(), lo, hi, wire.r_max);
        for t in &wire.terms {
            let c = parse_rat(&t.coeff).ok_or_else(|| Error::Parse(format!("terms: invalid rational '{}'", t.coeff)))?;
            if !out.in_window(t.z) || t.r > out.r_max {
                return Err(Error::Parse(format!("term ({}, {}) lies outside the declared grid", t.z, t.r)));
            }
            out.add(t.z, t.r, &c);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_wire()).expect("series serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let wire: LogSeriesWire = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_wire(&wire)
    }
}

/// JSON shape of a [`LogSeries`]; rationals are `"p/q"` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogSeriesWire {
    pub base_exponent: Vec<String>,
    pub relation: Vec<i64>,
    pub window: [i64; 2],
    pub r_max: usize,
    pub terms: Vec<TermWire>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermWire {
    pub z: i64,
    pub r: usize,
    pub coeff: String,
}

/// Closed integer window `[lo, hi]` of powers of `x0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Self {
        Self { lo, hi }
    }
}

fn complement_of_support(rho: &[usize]) -> Vec<usize> {
    (0..rho.len()).filter(|&m| rho[m] == 0).collect()
}

/// The log-free series `Phi^Q` for the multiset `Q` given by its counts `rho`.
/// Requires minimal negative support on the complement of `supp(Q)`.
pub fn phi_series(
    config: &LatticeConfig,
    v: &[Rat],
    lift: &[i64],
    rho: &[usize],
    window: Window,
) -> Result<LogSeries> {
    phi_series_with_verdict(config, v, lift, rho, window).map(|(s, _)| s)
}

pub fn phi_series_with_verdict(
    config: &LatticeConfig,
    v: &[Rat],
    lift: &[i64],
    rho: &[usize],
    window: Window,
) -> Result<(LogSeries, SupportVerdict)> {
    let n = config.n();
    for len in [v.len(), lift.len(), rho.len()] {
        if len != n {
            return Err(Error::DimensionMismatch { expected: n, found: len });
        }
    }
    let index_set = complement_of_support(rho);
    let verdict = support_verdict(config, v, &index_set, lift);
    if !verdict.minimal {
        return Err(Error::NotMinimalSupport { index_set, z: verdict.witness.unwrap_or_default() });
    }
    let rel = config.relation();
    let base: Vec<Rat> = v.iter().zip(lift).map(|(x, &l)| x + rat(l)).collect();
    let mut out = LogSeries::zeros(base, rel.to_vec(), window.lo, window.hi, 0);
    for z in verdict.members_in(window.lo, window.hi) {
        let mut c = Rat::one();
        for mu in 0..n {
            c *= coefficient_m(lift[mu] + z * rel[mu], rho[mu], &v[mu])?;
            if c.is_zero() {
                break;
            }
        }
        out.set(z, 0, c);
    }
    Ok((out, verdict))
}

/// All multisets of size `s` on `n` letters, as count vectors.
pub fn multisets(n: usize, s: usize) -> Vec<Vec<usize>> {
    fn go(pos: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for take in (0..=left).rev() {
            cur[pos] = take;
            go(pos + 1, left - take, cur, out);
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if s == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(0, s, &mut vec![0; n], &mut out);
    out
}

/// `s! prod_mu l_mu^rho_mu` for a multiset of size `s`: the `s`-th derivative
/// of `prod_mu M_{., 0}(v_mu + eps l_mu)` in `eps` is `s!` times the sum over
/// multisets of `prod_mu l_mu^rho_mu M_{., rho_mu}(v_mu)`.
fn multiset_weight(rho: &[usize], relation: &[i64]) -> Rat {
    let s: usize = rho.iter().sum();
    let mut signs = BigInt::one();
    for (&c, &l) in rho.iter().zip(relation) {
        signs *= BigInt::from(l).pow(c as u32);
    }
    Rat::from_integer(factorial(s as u64) * signs)
}

/// One `Phi^Q` term of a log solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub rho: Vec<usize>,
    /// Multiplier of `Phi^Q log^(r - |Q|) x0` in the solution.
    pub weight: Rat,
    pub phi: LogSeries,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogSolution {
    pub r: usize,
    pub series: LogSeries,
    pub components: Vec<Component>,
    /// Support verdicts for every index set of size `>= n - r`.
    pub certificates: Vec<SupportVerdict>,
}

impl LogSolution {
    pub fn component(&self, rho: &[usize]) -> Option<&Component> {
        self.components.iter().find(|c| c.rho == rho)
    }
}

fn subsets_of_size_at_least(n: usize, min: usize) -> Vec<Vec<usize>> {
    (0u32..(1u32 << n))
        .filter(|mask| mask.count_ones() as usize >= min)
        .map(|mask| (0..n).filter(|&m| mask & (1 << m) != 0).collect())
        .collect()
}

/// Checks minimal `(I, u)`-negative support for every `I` with `|I| >= n - r`.
pub fn check_hypothesis(
    config: &LatticeConfig,
    v: &[Rat],
    lift: &[i64],
    r: usize,
) -> Result<Vec<SupportVerdict>> {
    let n = config.n();
    let mut out = Vec::new();
    for index_set in subsets_of_size_at_least(n, n.saturating_sub(r)) {
        let verdict = support_verdict(config, v, &index_set, lift);
        if !verdict.minimal {
            return Err(Error::HypothesisViolated { index_set, z: verdict.witness.unwrap_or_default() });
        }
        out.push(verdict);
    }
    Ok(out)
}

/// The solution of log degree `r` attached to `v` with integer lift `lift`:
///
/// ```text
/// sum_{s=0..r} C(r, s) s! sum_{|Q| = s} prod_{p in Q} l_p  Phi^Q log^(r-s) x0
/// ```
pub fn log_solution(
    config: &LatticeConfig,
    v: &Exponent,
    lift: &[i64],
    r: usize,
    window: Window,
) -> Result<LogSolution> {
    let m = v.multiplicity();
    if r >= m {
        return Err(Error::RNotLessThanMultiplicity { r, m });
    }
    let certificates = check_hypothesis(config, &v.v, lift, r)?;
    let n = config.n();
    let rel = config.relation();
    let base: Vec<Rat> = v.v.iter().zip(lift).map(|(x, &l)| x + rat(l)).collect();
    let mut series = LogSeries::zeros(base, rel.to_vec(), window.lo, window.hi, r);
    let mut components = Vec::new();
    for s in 0..=r {
        let choose = Rat::from_integer(binomial(r as u64, s as u64));
        for rho in multisets(n, s) {
            let weight = &choose * multiset_weight(&rho, rel);
            let phi = phi_series(config, &v.v, lift, &rho, window)?;
            for (z, _, c) in phi.terms() {
                series.add(z, r - s, &(&weight * c));
            }
            components.push(Component { rho, weight, phi });
        }
    }
    Ok(LogSolution { r, series, components, certificates })
}

/// Solutions attached to one exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionBundle {
    pub parameter: Vec<Rat>,
    pub exponent: Exponent,
    pub lift: Vec<i64>,
    pub solutions: Vec<LogSolution>,
    /// The log-free series vanishes identically (its support set is empty).
    pub phi_vanishes: bool,
    /// Why the sequence of log degrees stopped before `m_v`, if it did.
    pub stopped_by: Option<Error>,
    /// Supplied by the caller outside `E'`; Nilsson-ring membership checked directly.
    pub alternate: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleReport {
    pub bundles: Vec<SolutionBundle>,
    /// Solutions built from exponents whose log-free series is nonzero.
    pub independent_count: u64,
    pub relation_sum: u64,
    pub complete: bool,
}

/// First component whose support runs to `z = -infinity`, as its index set.
fn unbounded_component(config: &LatticeConfig, v: &[Rat], lift: &[i64], sol: &LogSolution) -> Option<Vec<usize>> {
    sol.components.iter().find_map(|c| {
        let index_set = complement_of_support(&c.rho);
        let verdict = support_verdict(config, v, &index_set, lift);
        (!verdict.is_empty() && verdict.min_member().is_none()).then_some(index_set)
    })
}

fn bundle_for(
    config: &LatticeConfig,
    parameter: &[Rat],
    v: &Exponent,
    lift: &[i64],
    window: Window,
    only_r: Option<usize>,
    alternate: bool,
) -> SolutionBundle {
    let full = (0..config.n()).collect::<Vec<_>>();
    let phi_vanishes = support_verdict(config, &v.v, &full, lift).is_empty();
    let mut solutions = Vec::new();
    let mut stopped_by = None;
    let degrees: Vec<usize> = match only_r {
        Some(r) => vec![r],
        None => (0..v.multiplicity()).collect(),
    };
    for r in degrees {
        match log_solution(config, v, lift, r, window) {
            Ok(sol) => {
                if alternate {
                    if let Some(index_set) = unbounded_component(config, &v.v, lift, &sol) {
                        stopped_by = Some(Error::UnboundedBelow { index_set });
                        break;
                    }
                }
                solutions.push(sol)
            }
            Err(e) => {
                stopped_by = Some(e);
                break;
            }
        }
    }
    SolutionBundle {
        parameter: parameter.to_vec(),
        exponent: v.clone(),
        lift: lift.to_vec(),
        solutions,
        phi_vanishes,
        stopped_by,
        alternate,
    }
}

/// Log solutions for parameter `beta + u` from every exponent in `E'_beta`.
pub fn solution_bundle(config: &LatticeConfig, beta: &Parameter, u: &[i64], window: Window) -> Result<BundleReport> {
    solution_bundle_with(config, beta, u, window, None, &[])
}

/// As [`solution_bundle`], optionally restricted to one log degree and with
/// extra exponents from `E_beta` outside `E'_beta` supplied by the caller.
pub fn solution_bundle_with(
    config: &LatticeConfig,
    beta: &Parameter,
    u: &[i64],
    window: Window,
    only_r: Option<usize>,
    alternates: &[Vec<Rat>],
) -> Result<BundleReport> {
    let set = exponent_set_prime(config, beta)?;
    let lift = config.integer_lift(u)?;
    solution_bundle_from_lift(config, beta, &set.e_prime, &lift, window, only_r, alternates)
}

/// As [`solution_bundle_with`] but with an explicit integer lift of `u`.
pub fn solution_bundle_from_lift(
    config: &LatticeConfig,
    beta: &Parameter,
    e_prime: &[Exponent],
    lift: &[i64],
    window: Window,
    only_r: Option<usize>,
    alternates: &[Vec<Rat>],
) -> Result<BundleReport> {
    if lift.len() != config.n() {
        return Err(Error::DimensionMismatch { expected: config.n(), found: lift.len() });
    }
    let u = config.combine_int(lift);
    let parameter = beta.shifted(&u).beta().to_vec();
    let mut bundles: Vec<SolutionBundle> = e_prime
        .iter()
        .map(|v| bundle_for(config, &parameter, v, lift, window, only_r, false))
        .collect();
    for alt in alternates {
        if config.combine(alt) != beta.beta() {
            return Err(Error::BetaNotInSpan);
        }
        let v = Exponent::new(config, alt.clone(), Vec::new());
        bundles.push(bundle_for(config, &parameter, &v, lift, window, only_r, true));
    }
    let independent_count = bundles
        .iter()
        .filter(|b| !b.phi_vanishes)
        .map(|b| b.solutions.len() as u64)
        .sum();
    let relation_sum = config.positive_sum();
    let complete = only_r.is_none()
        && bundles.iter().filter(|b| !b.alternate).all(|b| !b.phi_vanishes && b.stopped_by.is_none())
        && independent_count >= relation_sum;
    Ok(BundleReport { bundles, independent_count, relation_sum, complete })
}

/// Checks `Phi_{v, beta+u} = c * Phi_{v', beta+u}` with the lift `v' - v` and
/// `c = prod_mu M_{lift_mu, 0}(v_mu)` on the window; returns `c`.
pub fn scalar_relation_check(
    config: &LatticeConfig,
    beta: &Parameter,
    u: &[i64],
    v: &Exponent,
    v_prime: &Exponent,
    window: Window,
) -> Result<Rat> {
    let nr = is_nonresonant(config, beta);
    if let Some(w) = nr.witness {
        return Err(Error::NotNonresonant { i: w.i, j: w.j, value: w.value.to_string() });
    }
    let lift: Vec<i64> = v_prime
        .v
        .iter()
        .zip(&v.v)
        .map(|(a, b)| crate::rational::to_i64(&(a - b)).ok_or(Error::InvalidLift))
        .collect::<Result<_>>()?;
    if config.combine_int(&lift) != u {
        return Err(Error::InvalidLift);
    }
    let n = config.n();
    let mut scalar = Rat::one();
    for mu in 0..n {
        scalar *= coefficient_m(lift[mu], 0, &v.v[mu])?;
    }
    let empty = vec![0; n];
    let lhs = phi_series(config, &v.v, &lift, &empty, window)?;
    let rhs = phi_series(config, &v_prime.v, &vec![0; n], &empty, window)?;
    debug_assert_eq!(lhs.base_exponent, rhs.base_exponent);
    for z in window.lo..=window.hi {
        if lhs.get(z, 0) != &scalar * rhs.get(z, 0) {
            return Err(Error::MismatchDetected { z });
        }
    }
    Ok(scalar)
}

/// Collects `phi` coefficients into a `z -> coeff` map (nonzero only).
pub fn coefficient_map(series: &LogSeries, r: usize) -> BTreeMap<i64, Rat> {
    series
        .terms()
        .into_iter()
        .filter(|(_, rr, _)| *rr == r)
        .map(|(z, _, c)| (z, c))
        .collect()
}
