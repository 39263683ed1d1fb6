//! Shifting a nonresonant parameter by `u` in `ZA`: each exponent has a
//! partner in `E'_{beta+u}`, and the two log-free series differ by a scalar.

use gkz::exponents::{exponent_set_prime, match_exponent};
use gkz::rational::{fmt_rat, fmt_vec, frac};
use gkz::series::scalar_relation_check;
use gkz::{build_config, Parameter, PointConfig, Window};

fn main() -> gkz::Result<()> {
    let config = build_config(PointConfig::new(vec![vec![1, 0], vec![1, 2], vec![1, 1]])?)?;
    let beta = Parameter::new(&config, vec![frac(1, 2), frac(1, 3)])?;
    let u = [2, 3];
    for v in exponent_set_prime(&config, &beta)?.e_prime {
        let (v_prime, diff) = match_exponent(&config, &beta, &u, &v)?;
        let c = scalar_relation_check(&config, &beta, &u, &v, &v_prime, Window::new(0, 8))?;
        println!("{:?} -> {:?}  (lift {:?}, scalar {})", fmt_vec(&v.v), fmt_vec(&v_prime.v), diff, fmt_rat(&c));
    }
    Ok(())
}
