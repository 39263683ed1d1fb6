//! Singularity type at `x0 = 0` and maximal unipotent monodromy (MUM).
//!
//! MUM is decided combinatorially: `E'_beta` is a singleton. Each verdict is
//! cross-checked against an independent criterion on `beta` and the relation.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exponents::exponent_set_prime;
use crate::lattice::{is_nonresonant, LatticeConfig, Parameter};
use crate::linalg;
use crate::rational::{rat, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularityType {
    Regular,
    Irregular,
}

/// Regular iff the positive side of the relation carries the volume.
pub fn singularity_type(config: &LatticeConfig) -> SingularityType {
    if config.positive_sum() == config.vol() {
        SingularityType::Regular
    } else {
        SingularityType::Irregular
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MumReport {
    pub e_prime_size: usize,
    /// `|E'_beta| = 1`.
    pub mum: bool,
    /// MUM and the unique exponent vanishes on the positive side.
    pub mum_holomorphic: bool,
    /// `beta` in `sum_{l_i > 0} Z a_i + sum_{l_j < 0} C a_j`.
    pub integral_on_positive_side: bool,
    /// Every positive relation entry is 1.
    pub unit_positive_entries: bool,
    /// `beta` in the span of the columns with negative relation entry.
    pub in_negative_span: bool,
}

impl MumReport {
    /// The singleton test agrees with the conditions on `beta` and the relation.
    pub fn consistent(&self) -> bool {
        self.mum == (self.integral_on_positive_side && self.unit_positive_entries)
            && self.mum_holomorphic == (self.in_negative_span && self.unit_positive_entries)
    }
}

/// Some `beta = sum w_mu a_mu` with `w_i` integral wherever `l_i > 0`.
pub fn integral_on_positive_side(config: &LatticeConfig, beta: &Parameter) -> bool {
    let Some(w) = config.particular_solution(beta.beta()) else {
        return false;
    };
    let positive = config.positive_indices();
    let i0 = positive[0];
    let l0 = config.ell(i0);
    // shifts by l modulo Z: t = (m - w_i0) / l_i0, m = 0..l_i0-1
    (0..l0).any(|m| {
        let t = (rat(m) - &w[i0]) / rat(l0);
        positive.iter().all(|&i| (&w[i] + &t * rat(config.relation()[i])).is_integer())
    })
}

pub fn in_negative_span(config: &LatticeConfig, beta: &Parameter) -> bool {
    let negative = config.negative_indices();
    if negative.is_empty() {
        return beta.beta().iter().all(Zero::is_zero);
    }
    let full = config.rat_matrix();
    let sub: Vec<Vec<Rat>> = full.iter().map(|row| negative.iter().map(|&j| row[j].clone()).collect()).collect();
    linalg::solve(&sub, beta.beta()).is_some()
}

fn check_regime(config: &LatticeConfig, beta: &Parameter) -> Result<()> {
    if singularity_type(config) == SingularityType::Irregular {
        return Err(Error::IrregularSingularity);
    }
    if let Some(w) = is_nonresonant(config, beta).witness {
        return Err(Error::NotNonresonant { i: w.i, j: w.j, value: w.value.to_string() });
    }
    Ok(())
}

/// MUM verdicts with their cross-check data. Requires a regular singularity
/// and nonresonant `beta`.
pub fn mum_report(config: &LatticeConfig, beta: &Parameter) -> Result<MumReport> {
    check_regime(config, beta)?;
    let set = exponent_set_prime(config, beta)?;
    let mum = set.e_prime.len() == 1;
    let mum_holomorphic = mum && config.positive_indices().iter().all(|&i| set.e_prime[0].v[i].is_zero());
    Ok(MumReport {
        e_prime_size: set.e_prime.len(),
        mum,
        mum_holomorphic,
        integral_on_positive_side: integral_on_positive_side(config, beta),
        unit_positive_entries: config.positive_indices().iter().all(|&i| config.ell(i) == 1),
        in_negative_span: in_negative_span(config, beta),
    })
}

pub fn is_mum(config: &LatticeConfig, beta: &Parameter) -> Result<bool> {
    mum_report(config, beta).map(|r| r.mum)
}

pub fn is_mum_holomorphic(config: &LatticeConfig, beta: &Parameter) -> Result<bool> {
    mum_report(config, beta).map(|r| r.mum_holomorphic)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MumVerdict {
    Decided(MumReport),
    /// Outside the regular, nonresonant regime; carries the reason.
    NotApplicable(Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub singularity: SingularityType,
    pub nonresonant: bool,
    pub mum: MumVerdict,
}

impl Classification {
    pub fn regular(&self) -> bool {
        self.singularity == SingularityType::Regular
    }
}

pub fn classify(config: &LatticeConfig, beta: &Parameter) -> Result<Classification> {
    let singularity = singularity_type(config);
    let nonresonant = is_nonresonant(config, beta).nonresonant;
    let mum = match mum_report(config, beta) {
        Ok(r) => MumVerdict::Decided(r),
        Err(e @ (Error::IrregularSingularity | Error::NotNonresonant { .. })) => MumVerdict::NotApplicable(e),
        Err(e) => return Err(e),
    };
    Ok(Classification { singularity, nonresonant, mum })
}
