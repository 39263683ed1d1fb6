//! Fake exponents, `E'` and the multiplicity tally for a few parameters.

use gkz::exponents::{exponent_set_prime, fake_exponents};
use gkz::rational::{fmt_vec, frac, rat};
use gkz::{build_config, Parameter, PointConfig, Rat};

fn main() -> gkz::Result<()> {
    let config = build_config(PointConfig::new(vec![vec![1, 0], vec![0, 1], vec![1, 1]])?)?;
    let betas: [Vec<Rat>; 3] = [vec![rat(-1), rat(-1)], vec![rat(1), rat(-1)], vec![frac(1, 2), frac(1, 3)]];
    for b in betas {
        let beta = Parameter::new(&config, b)?;
        println!("beta = {:?}", fmt_vec(beta.beta()));
        for e in fake_exponents(&config, &beta)? {
            println!("  fake {:?} from {:?}", fmt_vec(&e.v), e.labels);
        }
        let set = exponent_set_prime(&config, &beta)?;
        for e in &set.e_prime {
            println!("  E' {:?}  m = {}", fmt_vec(&e.v), e.multiplicity());
        }
        println!("  sum m = {} = {}", set.multiplicity_sum, set.relation_sum);
    }
    Ok(())
}
