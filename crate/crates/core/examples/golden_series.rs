//! The logarithm-free solution for `A = {(1,0),(1,2),(1,1)}`, `beta = (10,8)`.
//!
//! Run with `cargo run --example golden_series`.

use gkz::exponents::exponent_set_prime;
use gkz::rational::{fmt_rat, rat};
use gkz::series::phi_series;
use gkz::{build_config, Parameter, PointConfig, Window};

fn main() -> gkz::Result<()> {
    let config = build_config(PointConfig::new(vec![vec![1, 0], vec![1, 2], vec![1, 1]])?)?;
    let beta = Parameter::new(&config, vec![rat(10), rat(8)])?;
    println!("relation {:?}, vol {}", config.relation(), config.vol());

    let set = exponent_set_prime(&config, &beta)?;
    let v = set.e_prime.iter().find(|e| e.v == vec![rat(2), rat(0), rat(8)]).expect("exponent (2,0,8)");
    let phi = phi_series(&config, &v.v, &[0; 3], &[0; 3], Window::new(-5, 10))?;
    for (z, _, c) in phi.terms() {
        let w: Vec<String> = phi.exponent_at(z).iter().map(fmt_rat).collect();
        println!("  z = {z}: {} * x^({})", fmt_rat(&c), w.join(", "));
    }
    Ok(())
}
