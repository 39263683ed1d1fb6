//! Logarithmic solutions for `A = {(1,0),(0,1),(1,1)}`, `beta = 0`:
//! `1` and `log x0 + sum_{z>=1} (-1)^z / (z z!) x0^z`.

use gkz::rational::{fmt_rat, rat};
use gkz::series::solution_bundle;
use gkz::{build_config, Parameter, PointConfig, Window};

fn main() -> gkz::Result<()> {
    let config = build_config(PointConfig::new(vec![vec![1, 0], vec![0, 1], vec![1, 1]])?)?;
    let beta = Parameter::new(&config, vec![rat(0), rat(0)])?;
    let report = solution_bundle(&config, &beta, &[0, 0], Window::new(-2, 8))?;
    println!("{} solutions, complete = {}", report.independent_count, report.complete);
    for sol in &report.bundles[0].solutions {
        println!("degree {}:", sol.r);
        for (z, r, c) in sol.series.terms() {
            println!("  {} * x0^{z} * log^{r} x0", fmt_rat(&c));
        }
    }
    Ok(())
}
