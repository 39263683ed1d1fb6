//! Point configurations with a single integer relation.
//!
//! Columns keep the caller's order throughout. The split into the positive
//! and negative sides of the relation is carried by the sign of each entry of
//! the signed relation vector; [`LatticeConfig::perm`] records the canonical
//! "positive entries first" order for reporting.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix, RatMatrix};
use crate::rational::{gcd_i64, Rat};

/// `n` integer points in `Z^d`, stored column by column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointConfig {
    d: usize,
    columns: Vec<Vec<i64>>,
}

impl PointConfig {
    pub fn new(columns: Vec<Vec<i64>>) -> Result<Self> {
        if columns.len() < 2 {
            return Err(Error::InvalidConfig(format!(
                "need at least two points, got {}",
                columns.len()
            )));
        }
        let d = columns[0].len();
        if d == 0 {
            return Err(Error::InvalidConfig("points must have dimension >= 1".into()));
        }
        if let Some(bad) = columns.iter().position(|c| c.len() != d) {
            return Err(Error::InvalidConfig(format!(
                "point {bad} has dimension {}, expected {d}",
                columns[bad].len()
            )));
        }
        Ok(Self { d, columns })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Vec<i64>] {
        &self.columns
    }

    /// The `d x n` matrix whose columns are the points.
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        (0..self.d).map(|r| self.columns.iter().map(|c| c[r]).collect()).collect()
    }

    fn matrix_without(&self, omit: usize) -> Vec<Vec<i64>> {
        (0..self.d)
            .map(|r| {
                self.columns
                    .iter()
                    .enumerate()
                    .filter(|&(m, _)| m != omit)
                    .map(|(_, c)| c[r])
                    .collect()
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeConfig {
    points: PointConfig,
    relation: Vec<i64>,
    k: usize,
    perm: Vec<usize>,
    vol: u64,
}

impl LatticeConfig {
    pub fn points(&self) -> &PointConfig {
        &self.points
    }

    pub fn n(&self) -> usize {
        self.points.n()
    }

    pub fn d(&self) -> usize {
        self.points.d()
    }

    pub fn column(&self, mu: usize) -> &[i64] {
        &self.points.columns[mu]
    }

    /// Signed relation vector; also the exponent vector of `x0`.
    pub fn relation(&self) -> &[i64] {
        &self.relation
    }

    pub fn x0_exponents(&self) -> &[i64] {
        &self.relation
    }

    /// Number of positive relation entries.
    pub fn k(&self) -> usize {
        self.k
    }

    /// `perm[c]` is the caller's index of the column in canonical position `c`.
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn vol(&self) -> u64 {
        self.vol
    }

    /// Unsigned relation coefficient of column `mu`.
    pub fn ell(&self, mu: usize) -> i64 {
        self.relation[mu].abs()
    }

    pub fn is_positive(&self, mu: usize) -> bool {
        self.relation[mu] > 0
    }

    pub fn positive_indices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&m| self.is_positive(m)).collect()
    }

    pub fn negative_indices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&m| !self.is_positive(m)).collect()
    }

    pub fn positive_sum(&self) -> u64 {
        self.relation.iter().filter(|&&l| l > 0).map(|&l| l as u64).sum()
    }

    pub fn negative_sum(&self) -> u64 {
        self.relation.iter().filter(|&&l| l < 0).map(|&l| (-l) as u64).sum()
    }

    pub fn rat_matrix(&self) -> RatMatrix {
        linalg::to_rat_matrix(&self.points.matrix())
    }

    pub fn int_matrix(&self) -> IntMatrix {
        linalg::to_int_matrix(&self.points.matrix())
    }

    /// `sum_mu w_mu a_mu` for a rational weight vector.
    pub fn combine(&self, w: &[Rat]) -> Vec<Rat> {
        (0..self.d())
            .map(|r| {
                self.points
                    .columns
                    .iter()
                    .zip(w)
                    .map(|(c, x)| x * Rat::from_integer(BigInt::from(c[r])))
                    .sum()
            })
            .collect()
    }

    /// `sum_mu w_mu a_mu` for an integer weight vector.
    pub fn combine_int(&self, w: &[i64]) -> Vec<i64> {
        (0..self.d())
            .map(|r| self.points.columns.iter().zip(w).map(|(c, x)| c[r] * x).sum())
            .collect()
    }

    /// Some rational `w` with `sum w_mu a_mu = target`, or `None` outside the span.
    pub fn particular_solution(&self, target: &[Rat]) -> Option<Vec<Rat>> {
        linalg::solve(&self.rat_matrix(), target)
    }

    /// An integer lift `l` with `sum l_mu a_mu = u`, normalized so that the
    /// last coordinate lies in `[0, ell_n)`.
    pub fn integer_lift(&self, u: &[i64]) -> Result<Vec<i64>> {
        if u.len() != self.d() {
            return Err(Error::DimensionMismatch { expected: self.d(), found: u.len() });
        }
        let b: Vec<BigInt> = u.iter().map(|&x| BigInt::from(x)).collect();
        let x = linalg::solve_integer(&self.int_matrix(), &b).ok_or(Error::NotInLattice)?;
        let mut lift: Vec<i64> = x
            .iter()
            .map(|v| v.to_i64().ok_or_else(|| Error::InvalidConfig("lift overflows i64".into())))
            .collect::<Result<_>>()?;
        let last = self.n() - 1;
        let rel = self.relation[last];
        // lift[last] + z * rel in [0, |rel|)
        let z = -Integer::div_floor(&lift[last], &rel.abs()) * rel.signum();
        for (l, r) in lift.iter_mut().zip(&self.relation) {
            *l += z * r;
        }
        debug_assert!(lift[last] >= 0 && lift[last] < rel.abs());
        Ok(lift)
    }
}

/// Computes the signed primitive relation, the sign split and the volume.
pub fn build_config(points: PointConfig) -> Result<LatticeConfig> {
    let n = points.n();
    let m = linalg::to_rat_matrix(&points.matrix());
    let kernel = linalg::nullspace(&m);
    if kernel.len() != 1 {
        return Err(Error::KernelRankNotOne { nullity: kernel.len() });
    }
    for omit in 0..n {
        let sub = linalg::to_rat_matrix(&points.matrix_without(omit));
        if linalg::rank(&sub) != n - 1 {
            return Err(Error::DependentSubset { omitted: omit });
        }
    }

    let kv = &kernel[0];
    let lcm = kv.iter().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = kv.iter().map(|x| (x * Rat::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let first_sign = ints.iter().find(|x| !x.is_zero()).map(|x| x.signum()).unwrap_or_default();
    let relation: Vec<i64> = ints
        .iter()
        .map(|x| {
            (x / &g * &first_sign)
                .to_i64()
                .ok_or_else(|| Error::InvalidConfig("relation entry overflows i64".into()))
        })
        .collect::<Result<_>>()?;
    if let Some(index) = relation.iter().position(|&l| l == 0) {
        return Err(Error::ZeroRelationEntry { index });
    }

    let mut perm: Vec<usize> = (0..n).filter(|&m| relation[m] > 0).collect();
    let k = perm.len();
    perm.extend((0..n).filter(|&m| relation[m] < 0));

    let pos: u64 = relation.iter().filter(|&&l| l > 0).map(|&l| l as u64).sum();
    let neg: u64 = relation.iter().filter(|&&l| l < 0).map(|&l| (-l) as u64).sum();
    Ok(LatticeConfig { points, relation, k, perm, vol: pos.max(neg) })
}

/// `[ZA : <A \ {a_mu}>]`, computed from Smith normal forms.
pub fn sublattice_index(config: &LatticeConfig, mu: usize) -> BigInt {
    let full = linalg::smith(&config.int_matrix()).torsion_index();
    let sub = linalg::smith(&linalg::to_int_matrix(&config.points.matrix_without(mu))).torsion_index();
    let (q, r) = sub.div_rem(&full);
    assert!(r.is_zero(), "sublattice index is not an integer");
    q
}

/// Volume of the configuration polytope as the sum of sublattice indices over
/// the heavier side of the relation. Independent of the relation coefficients.
pub fn volume_crosscheck(config: &LatticeConfig) -> u64 {
    let side = if config.positive_sum() >= config.negative_sum() {
        config.positive_indices()
    } else {
        config.negative_indices()
    };
    let total: BigInt = side.iter().map(|&mu| sublattice_index(config, mu)).sum();
    total.to_u64().expect("volume overflows u64")
}

/// Primitive integral functional on `ZA` vanishing on every point except `a_i`, `a_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetFunctional {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<Rat>,
    pub values_on_a: Vec<i64>,
}

impl FacetFunctional {
    pub fn eval(&self, x: &[Rat]) -> Rat {
        self.coeffs.iter().zip(x).map(|(c, y)| c * y).sum()
    }
}

/// `i` must lie on the positive side of the relation and `j` on the negative side.
pub fn facet_functional(config: &LatticeConfig, i: usize, j: usize) -> Result<FacetFunctional> {
    let n = config.n();
    if i >= n || j >= n || !config.is_positive(i) || config.is_positive(j) {
        return Err(Error::IndexOutOfRange { i, j });
    }
    let (li, lj) = (config.ell(i), config.ell(j));
    let g = gcd_i64(li, lj);
    let mut values = vec![0i64; n];
    values[i] = lj / g;
    values[j] = li / g;

    // h . a_mu = values[mu] for all mu; consistent because the relation kills the values
    let rows: RatMatrix = (0..n)
        .map(|m| config.column(m).iter().map(|&x| Rat::from_integer(BigInt::from(x))).collect())
        .collect();
    let rhs: Vec<Rat> = values.iter().map(|&x| Rat::from_integer(BigInt::from(x))).collect();
    let coeffs = linalg::solve(&rows, &rhs).expect("facet functional system is consistent");
    Ok(FacetFunctional { i, j, coeffs, values_on_a: values })
}

/// A rational parameter vector known to lie in the span of the configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parameter {
    beta: Vec<Rat>,
}

impl Parameter {
    pub fn new(config: &LatticeConfig, beta: Vec<Rat>) -> Result<Self> {
        if beta.len() != config.d() {
            return Err(Error::DimensionMismatch { expected: config.d(), found: beta.len() });
        }
        if config.particular_solution(&beta).is_none() {
            return Err(Error::BetaNotInSpan);
        }
        Ok(Self { beta })
    }

    pub fn beta(&self) -> &[Rat] {
        &self.beta
    }

    /// `beta + u` for an integer shift `u` (membership in `ZA` is the caller's concern).
    pub fn shifted(&self, u: &[i64]) -> Self {
        let beta = self
            .beta
            .iter()
            .zip(u)
            .map(|(b, &x)| b + Rat::from_integer(BigInt::from(x)))
            .collect();
        Self { beta }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResonanceWitness {
    pub i: usize,
    pub j: usize,
    pub value: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nonresonance {
    pub nonresonant: bool,
    pub witness: Option<ResonanceWitness>,
}

/// Nonresonant iff no facet functional takes an integer value at `beta`.
pub fn is_nonresonant(config: &LatticeConfig, beta: &Parameter) -> Nonresonance {
    for i in config.positive_indices() {
        for j in config.negative_indices() {
            let h = facet_functional(config, i, j).expect("valid facet pair");
            let value = h.eval(beta.beta());
            if value.is_integer() {
                return Nonresonance {
                    nonresonant: false,
                    witness: Some(ResonanceWitness { i, j, value: value.to_integer() }),
                };
            }
        }
    }
    Nonresonance { nonresonant: true, witness: None }
}
