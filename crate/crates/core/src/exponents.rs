//! Fake exponents, their normalization into `E'`, and negative-support bookkeeping.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::lattice::{is_nonresonant, LatticeConfig, Parameter};
use crate::rational::{ceil_i64, floor_i64, is_negative_integer, is_nonnegative_integer, lex_cmp, rat, Rat};

/// A rational exponent vector `v` with `sum v_mu a_mu = beta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exponent {
    pub v: Vec<Rat>,
    /// `(i, b)` pairs that produced this vector as a fake exponent.
    pub labels: Vec<(usize, i64)>,
    /// Positive-side indices whose coordinate is a nonnegative integer.
    pub m_set: Vec<usize>,
}

impl Exponent {
    pub fn new(config: &LatticeConfig, v: Vec<Rat>, labels: Vec<(usize, i64)>) -> Self {
        let m_set = config
            .positive_indices()
            .into_iter()
            .filter(|&i| is_nonnegative_integer(&v[i]))
            .collect();
        Self { v, labels, m_set }
    }

    pub fn multiplicity(&self) -> usize {
        self.m_set.len()
    }

    /// No positive-side coordinate is a negative integer and at least one is a
    /// nonnegative integer.
    pub fn is_in_e_prime(&self, config: &LatticeConfig) -> bool {
        !self.m_set.is_empty()
            && config.positive_indices().iter().all(|&i| !is_negative_integer(&self.v[i]))
    }
}

fn shift(v: &[Rat], relation: &[i64], z: &Rat) -> Vec<Rat> {
    v.iter().zip(relation).map(|(x, &l)| x + z * rat(l)).collect()
}

/// Adds `labels` to an existing equal vector or appends a new entry.
fn merge_into(list: &mut Vec<Exponent>, e: Exponent) {
    match list.iter_mut().find(|x| x.v == e.v) {
        Some(x) => {
            for l in e.labels {
                if !x.labels.contains(&l) {
                    x.labels.push(l);
                }
            }
            x.labels.sort();
        }
        None => list.push(e),
    }
}

/// The fake exponents `v^(i,b)`, one per positive index `i` and `0 <= b < ell_i`,
/// with coinciding vectors merged. Sorted lexicographically.
pub fn fake_exponents(config: &LatticeConfig, beta: &Parameter) -> Result<Vec<Exponent>> {
    let w = config.particular_solution(beta.beta()).ok_or(Error::BetaNotInSpan)?;
    let rel = config.relation();
    let mut out: Vec<Exponent> = Vec::new();
    for i in config.positive_indices() {
        for b in 0..config.ell(i) {
            let t = (rat(b) - &w[i]) / rat(rel[i]);
            let v = shift(&w, rel, &t);
            debug_assert_eq!(v[i], rat(b));
            merge_into(&mut out, Exponent::new(config, v, vec![(i, b)]));
        }
    }
    out.sort_by(|a, b| lex_cmp(&a.v, &b.v));
    Ok(out)
}

/// Least `z` making every integral positive-side coordinate of `v + z l`
/// nonnegative; `None` if `v` has no integral positive-side coordinate.
pub fn normalizing_shift(config: &LatticeConfig, v: &[Rat]) -> Option<i64> {
    config
        .positive_indices()
        .into_iter()
        .filter(|&i| v[i].is_integer())
        .map(|i| ceil_i64(&(-&v[i] / rat(config.ell(i)))))
        .max()
}

/// The unique translate `v + z0 l` lying in `E'`, and `z0`.
pub fn normalize_to_e_prime(config: &LatticeConfig, v: &Exponent) -> Option<(Exponent, i64)> {
    let z0 = normalizing_shift(config, &v.v)?;
    let moved = shift(&v.v, config.relation(), &rat(z0));
    Some((Exponent::new(config, moved, v.labels.clone()), z0))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentSet {
    pub fake: Vec<Exponent>,
    pub e_prime: Vec<Exponent>,
    pub multiplicity_sum: u64,
    pub relation_sum: u64,
}

/// `E'` with multiplicities. The multiplicity tally must equal the positive
/// relation sum; a mismatch is reported as [`Error::CountMismatch`].
pub fn exponent_set_prime(config: &LatticeConfig, beta: &Parameter) -> Result<ExponentSet> {
    let fake = fake_exponents(config, beta)?;
    let mut e_prime: Vec<Exponent> = Vec::new();
    for v in &fake {
        let (nv, _) = normalize_to_e_prime(config, v).expect("fake exponents have an integral coordinate");
        merge_into(&mut e_prime, nv);
    }
    e_prime.sort_by(|a, b| lex_cmp(&a.v, &b.v));
    let multiplicity_sum: u64 = e_prime.iter().map(|e| e.multiplicity() as u64).sum();
    let relation_sum = config.positive_sum();
    if multiplicity_sum != relation_sum {
        return Err(Error::CountMismatch { multiplicities: multiplicity_sum, relation_sum });
    }
    Ok(ExponentSet { fake, e_prime, multiplicity_sum, relation_sum })
}

/// Indices `mu` in `index_set` with `v_mu` a negative integer, sorted.
pub fn negative_support(v: &[Rat], index_set: &[usize]) -> Vec<usize> {
    let set: BTreeSet<usize> = index_set.iter().copied().filter(|&m| is_negative_integer(&v[m])).collect();
    set.into_iter().collect()
}

/// A possibly half-infinite integer interval; `None` bounds are infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZInterval {
    pub lo: Option<i64>,
    pub hi: Option<i64>,
}

impl ZInterval {
    pub fn contains(&self, z: i64) -> bool {
        self.lo.is_none_or(|lo| z >= lo) && self.hi.is_none_or(|hi| z <= hi)
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_some() && self.hi.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportVerdict {
    pub index_set: Vec<usize>,
    pub lift: Vec<i64>,
    pub minimal: bool,
    /// A `z` whose translate strictly shrinks the negative support, when not minimal.
    pub witness: Option<i64>,
    /// The `z` with `I-nsupp(v + lift + z l) = I-nsupp(v)`, as disjoint sorted intervals.
    pub membership: Vec<ZInterval>,
}

impl SupportVerdict {
    pub fn contains(&self, z: i64) -> bool {
        self.membership.iter().any(|iv| iv.contains(z))
    }

    pub fn is_empty(&self) -> bool {
        self.membership.is_empty()
    }

    /// Members inside `[lo, hi]`.
    pub fn members_in(&self, lo: i64, hi: i64) -> Vec<i64> {
        (lo..=hi).filter(|&z| self.contains(z)).collect()
    }

    /// Enumerates the membership set when it is finite.
    pub fn finite_members(&self) -> Option<Vec<i64>> {
        if self.membership.iter().all(ZInterval::is_finite) {
            Some(self.membership.iter().flat_map(|iv| iv.lo.unwrap()..=iv.hi.unwrap()).collect())
        } else {
            None
        }
    }

    pub fn min_member(&self) -> Option<i64> {
        self.membership.first().and_then(|iv| iv.lo)
    }
}

/// Decides minimality of the `(I, u)`-negative support of `v` and describes
/// the set of `z` preserving it. Each coordinate of `v + lift + z l` is a
/// negative integer on a half-line of `z` (or never), so the negative-support
/// pattern is piecewise constant with finitely many breakpoints.
pub fn support_verdict(config: &LatticeConfig, v: &[Rat], index_set: &[usize], lift: &[i64]) -> SupportVerdict {
    let rel = config.relation();
    let w: Vec<Rat> = v.iter().zip(lift).map(|(x, &l)| x + rat(l)).collect();
    let target = negative_support(v, index_set);

    let mut cuts: Vec<i64> = Vec::new();
    for &mu in index_set {
        if !w[mu].is_integer() {
            continue;
        }
        let ell = rat(config.ell(mu));
        if rel[mu] > 0 {
            // negative for z <= ceil(-w/ell) - 1
            cuts.push(ceil_i64(&(-&w[mu] / &ell)));
        } else {
            // negative for z >= floor(w/ell) + 1
            cuts.push(floor_i64(&(&w[mu] / &ell)) + 1);
        }
    }
    cuts.sort_unstable();
    cuts.dedup();

    let pattern = |z: i64| {
        let moved = shift(&w, rel, &rat(z));
        negative_support(&moved, index_set)
    };
    let is_proper_subset = |p: &[usize]| p.len() < target.len() && p.iter().all(|m| target.contains(m));

    let mut pieces: Vec<(ZInterval, i64)> = Vec::new();
    if cuts.is_empty() {
        pieces.push((ZInterval { lo: None, hi: None }, 0));
    } else {
        pieces.push((ZInterval { lo: None, hi: Some(cuts[0] - 1) }, cuts[0] - 1));
        for pair in cuts.windows(2) {
            pieces.push((ZInterval { lo: Some(pair[0]), hi: Some(pair[1] - 1) }, pair[0]));
        }
        let last = *cuts.last().unwrap();
        pieces.push((ZInterval { lo: Some(last), hi: None }, last));
    }

    let mut minimal = true;
    let mut witness = None;
    let mut membership: Vec<ZInterval> = Vec::new();
    for (iv, rep) in pieces {
        let p = pattern(rep);
        if is_proper_subset(&p) && minimal {
            minimal = false;
            witness = Some(rep);
        }
        if p == target {
            match membership.last_mut() {
                Some(prev) if prev.hi.is_some_and(|h| Some(h + 1) == iv.lo) => prev.hi = iv.hi,
                _ => membership.push(iv),
            }
        }
    }
    SupportVerdict { index_set: index_set.to_vec(), lift: lift.to_vec(), minimal, witness, membership }
}

/// For nonresonant `beta` and `u` in `ZA`: the unique `v'` in `E'_{beta+u}`
/// congruent to `v` modulo `Z^n`, together with `v' - v`.
pub fn match_exponent(
    config: &LatticeConfig,
    beta: &Parameter,
    u: &[i64],
    v: &Exponent,
) -> Result<(Exponent, Vec<i64>)> {
    let nr = is_nonresonant(config, beta);
    if let Some(w) = nr.witness {
        return Err(Error::NotNonresonant { i: w.i, j: w.j, value: w.value.to_string() });
    }
    let lift = config.integer_lift(u)?;
    let moved: Vec<Rat> = v.v.iter().zip(&lift).map(|(x, &l)| x + rat(l)).collect();
    let z0 = normalizing_shift(config, &moved).expect("nonresonant exponents have an integral coordinate");
    let candidate = shift(&moved, config.relation(), &rat(z0));

    let gamma = beta.shifted(u);
    let set = exponent_set_prime(config, &gamma)?;
    let matched = set
        .e_prime
        .into_iter()
        .find(|e| e.v == candidate)
        .expect("normalized translate lies in E' of the shifted parameter");
    assert_eq!(matched.m_set, v.m_set, "matching exponents share their integral index set");

    let diff: Vec<i64> = matched
        .v
        .iter()
        .zip(&v.v)
        .map(|(a, b)| {
            let d = a - b;
            assert!(d.is_integer());
            crate::rational::to_i64(&d).expect("lift fits in i64")
        })
        .collect();
    Ok((matched, diff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_config, PointConfig};
    use crate::rational::frac;

    fn cfg(cols: &[&[i64]]) -> LatticeConfig {
        build_config(PointConfig::new(cols.iter().map(|c| c.to_vec()).collect()).unwrap()).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x)).collect()
    }

    fn param(c: &LatticeConfig, b: Vec<Rat>) -> Parameter {
        Parameter::new(c, b).unwrap()
    }

    #[test]
    fn fake_exponents_golden() {
        let c = cfg(&[&[1, 0], &[1, 2], &[1, 1]]);
        let e = fake_exponents(&c, &param(&c, ints(&[10, 8]))).unwrap();
        let vs: Vec<Vec<Rat>> = e.iter().map(|x| x.v.clone()).collect();
        assert_eq!(vs, vec![ints(&[0, -2, 12]), ints(&[2, 0, 8])]);
        assert_eq!(e[0].labels, vec![(0, 0)]);
        assert_eq!(e[1].labels, vec![(1, 0)]);
    }

    #[test]
    fn gauss_fake_exponents() {
        let c = cfg(&[&[1, 1, -1], &[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        let (t1, t2, s) = (frac(1, 2), frac(1, 3), frac(1, 5));
        let b = param(&c, vec![-t1.clone(), -t2.clone(), &s - rat(1)]);
        let e = fake_exponents(&c, &b).unwrap();
        let v10 = vec![rat(0), &s - rat(1), -t1.clone(), -t2.clone()];
        let v20 = vec![rat(1) - &s, rat(0), &s - &t1 - rat(1), &s - &t2 - rat(1)];
        assert_eq!(e.len(), 2);
        assert!(e.iter().any(|x| x.v == v10 && x.labels == vec![(0, 0)]));
        assert!(e.iter().any(|x| x.v == v20 && x.labels == vec![(1, 0)]));

        // sigma = 1: both labels land on one vector
        let b = param(&c, vec![-t1.clone(), -t2.clone(), rat(0)]);
        let e = fake_exponents(&c, &b).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].labels, vec![(0, 0), (1, 0)]);
    }

    #[test]
    fn normalization() {
        let c = cfg(&[&[1, 0], &[1, 2], &[1, 1]]);
        let v = Exponent::new(&c, ints(&[0, -2, 12]), vec![(0, 0)]);
        let (nv, z0) = normalize_to_e_prime(&c, &v).unwrap();
        assert_eq!(nv.v, ints(&[2, 0, 8]));
        assert_eq!(z0, 2);
        let (again, z1) = normalize_to_e_prime(&c, &nv).unwrap();
        assert_eq!(again.v, nv.v);
        assert_eq!(z1, 0);
    }

    #[test]
    fn gauss_integral_sigma_normalizes_to_first_exponent() {
        let c = cfg(&[&[1, 1, -1], &[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        let (t1, t2) = (frac(1, 2), frac(1, 3));
        let b = param(&c, vec![-t1.clone(), -t2.clone(), rat(2)]);
        let e = fake_exponents(&c, &b).unwrap();
        let v20 = e.iter().find(|x| x.labels == vec![(1, 0)]).unwrap();
        assert_eq!(v20.v[0], rat(-2));
        let (nv, z0) = normalize_to_e_prime(&c, v20).unwrap();
        assert_eq!(z0, 2);
        assert_eq!(nv.v, vec![rat(0), rat(2), -t1, -t2]);
        let set = exponent_set_prime(&c, &b).unwrap();
        assert_eq!(set.e_prime.len(), 1);
        assert_eq!(set.e_prime[0].v, nv.v);
        assert_eq!(set.e_prime[0].multiplicity(), 2);
    }

    #[test]
    fn e_prime_examples() {
        let c = cfg(&[&[1, 0], &[1, 2], &[1, 1]]);
        let s = exponent_set_prime(&c, &param(&c, ints(&[10, 8]))).unwrap();
        assert_eq!(s.e_prime.len(), 1);
        assert_eq!(s.e_prime[0].v, ints(&[2, 0, 8]));
        assert_eq!(s.e_prime[0].multiplicity(), 2);
        assert_eq!((s.multiplicity_sum, s.relation_sum), (2, 2));

        let c = cfg(&[&[1, 0], &[0, 1], &[1, 1]]);
        let s = exponent_set_prime(&c, &param(&c, ints(&[0, 0]))).unwrap();
        assert_eq!(s.e_prime.len(), 1);
        assert_eq!(s.e_prime[0].v, ints(&[0, 0, 0]));
        assert_eq!(s.e_prime[0].multiplicity(), 2);

        let s = exponent_set_prime(&c, &param(&c, ints(&[1, -1]))).unwrap();
        assert_eq!(s.e_prime.len(), 1);
        assert_eq!(s.e_prime[0].v, ints(&[2, 0, -1]));
        assert_eq!(s.e_prime[0].multiplicity(), 2);
    }

    #[test]
    fn negative_support_examples() {
        assert_eq!(negative_support(&ints(&[2, 0, -1]), &[0, 2]), vec![2]);
        assert_eq!(negative_support(&ints(&[0, -2, 12]), &[0, 1, 2]), vec![1]);
        let v = vec![rat(0), frac(-4, 5), frac(-1, 2), frac(-1, 3)];
        assert!(negative_support(&v, &[0, 1, 2, 3]).is_empty());
    }

    #[test]
    fn verdicts_golden() {
        let c = cfg(&[&[1, 0], &[1, 2], &[1, 1]]);
        let v = ints(&[2, 0, 8]);
        let full = support_verdict(&c, &v, &[0, 1, 2], &[0, 0, 0]);
        assert!(full.minimal);
        assert_eq!(full.finite_members(), Some(vec![0, 1, 2, 3, 4]));

        let no_second = support_verdict(&c, &v, &[0, 2], &[0, 0, 0]);
        assert_eq!(no_second.finite_members(), Some(vec![-2, -1, 0, 1, 2, 3, 4]));

        let first_two = support_verdict(&c, &v, &[0, 1], &[0, 0, 0]);
        assert_eq!(first_two.membership, vec![ZInterval { lo: Some(0), hi: None }]);
        assert!(first_two.finite_members().is_none());

        let c = cfg(&[&[1, 0], &[0, 1], &[1, 1]]);
        let bad = support_verdict(&c, &ints(&[2, 0, -1]), &[0, 2], &[0, 0, 0]);
        assert!(!bad.minimal);
        assert_eq!(bad.witness, Some(-2));
    }

    #[test]
    fn verdict_on_empty_index_set_is_all_of_z() {
        let c = cfg(&[&[1, 0], &[0, 1], &[1, 1]]);
        let v = support_verdict(&c, &ints(&[0, 0, 0]), &[], &[0, 0, 0]);
        assert!(v.minimal);
        assert_eq!(v.membership, vec![ZInterval { lo: None, hi: None }]);
    }

    #[test]
    fn matching_trivial_and_shifted() {
        let c = cfg(&[&[1, 0], &[0, 1], &[1, 1]]);
        let b = param(&c, vec![frac(1, 2), frac(1, 3)]);
        let set = exponent_set_prime(&c, &b).unwrap();
        for v in &set.e_prime {
            let (same, lift) = match_exponent(&c, &b, &[0, 0], v).unwrap();
            assert_eq!(same.v, v.v);
            assert_eq!(lift, vec![0, 0, 0]);

            let (moved, lift) = match_exponent(&c, &b, &[1, 0], v).unwrap();
            assert_eq!(c.combine_int(&lift), vec![1, 0]);
            assert_eq!(moved.m_set, v.m_set);
            let other = exponent_set_prime(&c, &b.shifted(&[1, 0])).unwrap();
            assert!(other.e_prime.iter().any(|e| e.v == moved.v));
        }
        let resonant = param(&c, ints(&[0, 0]));
        let v = &exponent_set_prime(&c, &resonant).unwrap().e_prime[0];
        assert!(matches!(match_exponent(&c, &resonant, &[1, 0], v), Err(Error::NotNonresonant { .. })));
    }
}
