//! The Gauss configuration against the classical hypergeometric series, for
//! generic `sigma` and for `sigma = 2` where a logarithm appears.

use gkz::exponents::exponent_set_prime;
use gkz::gauss::{gauss_config, gauss_log_oracle, gauss_oracle, gauss_parameter};
use gkz::rational::{fmt_rat, frac, rat};
use gkz::series::{log_solution, phi_series};
use gkz::Window;

fn main() -> gkz::Result<()> {
    let config = gauss_config();
    let (t1, t2) = (frac(1, 2), frac(1, 3));

    let (a, b) = gauss_oracle(&t1, &t2, &frac(1, 5), 10)?;
    for oracle in [a, b] {
        let phi = phi_series(&config, &oracle.base_exponent, &[0; 4], &[0; 4], Window::new(0, 10))?;
        println!("generic sigma, leading coefficients {:?}: agree = {}", phi.log_part(0)[..4].iter().map(fmt_rat).collect::<Vec<_>>(), phi == oracle);
    }

    let beta = gauss_parameter(&config, &t1, &t2, &rat(2))?;
    let v = exponent_set_prime(&config, &beta)?.e_prime.into_iter().find(|e| e.multiplicity() == 2).expect("double exponent");
    let sol = log_solution(&config, &v, &[0; 4], 1, Window::new(-1, 8))?;
    println!("sigma = 2, agree with the direct expansion: {}", sol.series == gauss_log_oracle(&t1, &t2, 2, 8)?);
    for (z, r, c) in sol.series.terms().into_iter().take(6) {
        println!("  {} * x0^{z} log^{r} x0", fmt_rat(&c));
    }
    Ok(())
}
