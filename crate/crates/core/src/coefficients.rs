//! The constants `M_{l,s}(v)`.
//!
//! For `t^v log^r t`, integrating `l > 0` times (constants of integration
//! zero) or differentiating `-l > 0` times gives
//!
//! ```text
//! f_l(t) = t^(v+l) * sum_{s=0..r} M_{l,s}(v) * r(r-1)...(r-s+1) * log^(r-s) t
//! ```
//!
//! except when `v` is a negative integer and `v + l >= 0`, where integration
//! passes through `t^-1` and produces an extra power of `log t`. That case is
//! reported as [`Error::ExcludedCase`] rather than given a value.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{is_negative_integer, rat, Rat};

/// Rising factorial `v (v+1) ... (v+l-1)`.
pub fn pochhammer(v: &Rat, l: u64) -> Rat {
    let (p, q) = (v.numer(), v.denom());
    let mut num = BigInt::one();
    let mut term = p.clone();
    for _ in 0..l {
        num *= &term;
        term += q;
    }
    Rat::new(num, q.pow(l as u32))
}

/// `sum_{m in range} 1/(v + m)` with one reduction at the end.
fn reciprocal_sum(v: &Rat, range: impl Iterator<Item = i64>) -> Rat {
    let (p, q) = (v.numer(), v.denom());
    let (mut num, mut den) = (BigInt::zero(), BigInt::one());
    for m in range {
        // q / (p + m q)
        let d = p + q * m;
        num = num * &d + q * &den;
        den *= d;
    }
    Rat::new(num, den)
}

/// Elementary symmetric polynomial of degree `tau` in `values`.
pub fn elementary_symmetric(tau: usize, values: &[Rat]) -> Result<Rat> {
    if tau > values.len() {
        return Err(Error::DegreeTooLarge { degree: tau, len: values.len() });
    }
    // e[t] over the prefix seen so far
    let mut e = vec![Rat::zero(); tau + 1];
    e[0] = Rat::one();
    for x in values {
        for t in (1..=tau).rev() {
            let add = &e[t - 1] * x;
            e[t] += add;
        }
    }
    Ok(e.swap_remove(tau))
}

/// Complete homogeneous symmetric polynomial of degree `s`.
fn complete_homogeneous(s: usize, values: &[Rat]) -> Rat {
    let mut h = vec![Rat::zero(); s + 1];
    h[0] = Rat::one();
    for x in values {
        for t in 1..=s {
            let add = &h[t - 1] * x;
            h[t] += add;
        }
    }
    h.swap_remove(s)
}

pub fn is_excluded(l: i64, v: &Rat) -> bool {
    l > 0 && is_negative_integer(v) && v + rat(l) >= Rat::zero()
}

fn excluded(l: i64, v: &Rat) -> Error {
    Error::ExcludedCase { l, v: v.to_string() }
}

/// `M_{l,s}(v)`. Uses the closed forms for `s <= 1` and the general sums otherwise.
pub fn coefficient_m(l: i64, s: usize, v: &Rat) -> Result<Rat> {
    if s <= 1 {
        m_closed_form(l, s, v)
    } else {
        m_general(l, s, v)
    }
}

/// The defining sums: a complete homogeneous sum of reciprocals for
/// `l > 0` and an elementary symmetric polynomial of `v, v-1, ..., v+l+1`
/// for `l < 0`.
pub fn m_general(l: i64, s: usize, v: &Rat) -> Result<Rat> {
    if is_excluded(l, v) {
        return Err(excluded(l, v));
    }
    match l {
        0 => Ok(if s == 0 { Rat::one() } else { Rat::zero() }),
        l if l > 0 => {
            let shifted: Vec<Rat> = (1..=l).map(|m| v + rat(m)).collect();
            let denom = shifted.iter().fold(Rat::one(), |acc, x| acc * x);
            let recips: Vec<Rat> = shifted.iter().map(|x| x.recip()).collect();
            let h = complete_homogeneous(s, &recips);
            let sign = if s.is_multiple_of(2) { Rat::one() } else { -Rat::one() };
            Ok(sign * h / denom)
        }
        l => {
            let len = (-l) as usize;
            if s > len {
                return Ok(Rat::zero());
            }
            let falling: Vec<Rat> = (0..len as i64).map(|m| v - rat(m)).collect();
            elementary_symmetric(len - s, &falling)
        }
    }
}

/// Closed forms for `s = 0, 1`. For `l < 0, s = 1` the harmonic form needs
/// `v` outside `{0, ..., -l-1}`; inside that range the symmetric sum is used.
pub fn m_closed_form(l: i64, s: usize, v: &Rat) -> Result<Rat> {
    assert!(s <= 1, "closed forms cover s = 0 and s = 1 only");
    if is_excluded(l, v) {
        return Err(excluded(l, v));
    }
    if l == 0 {
        return Ok(if s == 0 { Rat::one() } else { Rat::zero() });
    }
    if l > 0 {
        let p = pochhammer(&(v + Rat::one()), l as u64);
        if s == 0 {
            return Ok(p.recip());
        }
        let harmonic = reciprocal_sum(v, 1..=l);
        return Ok(-harmonic / p);
    }
    let len = (-l) as u64;
    // (-1)^len (-v)_len = v (v-1) ... (v+l+1)
    let sign = if len.is_multiple_of(2) { Rat::one() } else { -Rat::one() };
    let falling = sign * pochhammer(&(-v), len);
    if s == 0 {
        return Ok(falling);
    }
    let hits_zero = v.is_integer() && !v.is_negative() && v < &rat(len as i64);
    if hits_zero {
        // exactly one factor vanishes: the sum keeps only the term omitting it
        let falling_values: Vec<Rat> = (0..len as i64).map(|m| v - rat(m)).collect();
        elementary_symmetric(len as usize - 1, &falling_values)
    } else {
        let harmonic = reciprocal_sum(v, (0..len as i64).map(|i| -i));
        Ok(falling * harmonic)
    }
}

/// Coefficients of `f_l^{(v,r)}` in the basis `t^(v+l) log^(r-s) t`, indexed by `s`.
pub fn f_coefficients(v: &Rat, r: usize, l: i64) -> Result<Vec<Rat>> {
    let mut out = Vec::with_capacity(r + 1);
    let mut falling = Rat::one();
    for s in 0..=r {
        out.push(coefficient_m(l, s, v)? * &falling);
        falling *= rat((r - s) as i64);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(&frac(1, 2), 3), frac(15, 8));
        assert_eq!(pochhammer(&frac(7, 3), 0), rat(1));
        assert_eq!(pochhammer(&rat(-2), 4), rat(0));
    }

    #[test]
    fn elementary_symmetric_values() {
        assert_eq!(elementary_symmetric(0, &[rat(4), rat(5)]).unwrap(), rat(1));
        assert_eq!(elementary_symmetric(0, &[]).unwrap(), rat(1));
        assert_eq!(elementary_symmetric(2, &[rat(1), rat(2), rat(3)]).unwrap(), rat(11));
        assert_eq!(elementary_symmetric(1, &[frac(2, 7)]).unwrap(), frac(2, 7));
        assert_eq!(
            elementary_symmetric(3, &[rat(1), rat(2)]),
            Err(Error::DegreeTooLarge { degree: 3, len: 2 })
        );
    }

    #[test]
    fn named_values() {
        for v in [rat(0), frac(-1, 3), rat(8)] {
            assert_eq!(coefficient_m(0, 0, &v).unwrap(), rat(1));
            assert_eq!(coefficient_m(0, 1, &v).unwrap(), rat(0));
            assert_eq!(coefficient_m(-3, 3, &v).unwrap(), rat(1));
            assert_eq!(coefficient_m(-1, 1, &v).unwrap(), rat(1));
        }
        assert_eq!(coefficient_m(2, 1, &rat(0)).unwrap(), frac(-3, 4));
        assert_eq!(m_general(2, 1, &rat(0)).unwrap(), frac(-3, 4));
        assert_eq!(coefficient_m(-2, 0, &rat(8)).unwrap(), rat(56));
        assert_eq!(coefficient_m(-2, 3, &rat(8)).unwrap(), rat(0));
    }

    #[test]
    fn excluded_case_is_an_error() {
        assert!(matches!(coefficient_m(3, 0, &rat(-2)), Err(Error::ExcludedCase { l: 3, .. })));
        assert!(matches!(m_general(2, 2, &rat(-1)), Err(Error::ExcludedCase { .. })));
        // v + l < 0 is still fine
        assert_eq!(coefficient_m(1, 0, &rat(-3)).unwrap(), frac(-1, 2));
        // differentiation never hits it
        assert!(coefficient_m(-4, 1, &rat(-2)).is_ok());
    }

    #[test]
    fn f_layout() {
        let v = frac(2, 3);
        assert_eq!(f_coefficients(&v, 0, 4).unwrap(), vec![coefficient_m(4, 0, &v).unwrap()]);
        assert_eq!(f_coefficients(&v, 2, 0).unwrap(), vec![rat(1), rat(0), rat(0)]);
        let h5 = frac(1, 1) + frac(1, 2) + frac(1, 3) + frac(1, 4) + frac(1, 5);
        assert_eq!(
            f_coefficients(&rat(0), 1, 5).unwrap(),
            vec![frac(1, 120), -frac(1, 120) * h5]
        );
    }

    #[test]
    fn vanishing_pattern_of_m_l0() {
        for v in -3..6i64 {
            for l in -8..0i64 {
                let m = coefficient_m(l, 0, &rat(v)).unwrap();
                assert_eq!(m.is_zero(), v >= 0 && v + l < 0, "v={v} l={l}");
            }
        }
    }
}
