//! Facet functionals and the nonresonance test.

use gkz::lattice::{facet_functional, is_nonresonant};
use gkz::rational::{fmt_vec, frac, rat};
use gkz::{build_config, Parameter, PointConfig};

fn main() -> gkz::Result<()> {
    let config = build_config(PointConfig::new(vec![vec![1, 0], vec![1, 2], vec![1, 1]])?)?;
    for i in config.positive_indices() {
        for j in config.negative_indices() {
            let h = facet_functional(&config, i, j)?;
            println!("h_({i},{j}) = {:?}, on A: {:?}", fmt_vec(&h.coeffs), h.values_on_a);
        }
    }
    for b in [vec![rat(10), rat(8)], vec![frac(1, 2), frac(1, 3)], vec![frac(1, 2), rat(1)]] {
        let beta = Parameter::new(&config, b)?;
        let nr = is_nonresonant(&config, &beta);
        match nr.witness {
            None => println!("{:?}: nonresonant", fmt_vec(beta.beta())),
            Some(w) => println!("{:?}: resonant, h_({},{}) = {}", fmt_vec(beta.beta()), w.i, w.j, w.value),
        }
    }
    Ok(())
}
