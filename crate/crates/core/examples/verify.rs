//! Certifying series against the box and Euler operators, including a
//! deliberately corrupted one.

use gkz::rational::rat;
use gkz::series::solution_bundle;
use gkz::verify::certify;
use gkz::{build_config, Parameter, PointConfig, Window};

fn main() -> gkz::Result<()> {
    let config = build_config(PointConfig::new(vec![vec![1, 0], vec![0, 1], vec![-1, -1]])?)?;
    let beta = Parameter::new(&config, vec![rat(0), rat(0)])?;
    let report = solution_bundle(&config, &beta, &[0, 0], Window::new(-4, 10))?;
    for bundle in &report.bundles {
        for sol in &bundle.solutions {
            let cert = certify(&config, &bundle.parameter, &sol.series);
            println!("degree {}: passed = {}", sol.r, cert.passed);
        }
    }

    let mut broken = report.bundles[0].solutions[1].series.clone();
    broken.add(3, 0, &rat(1));
    let cert = certify(&config, beta.beta(), &broken);
    if let Some(f) = cert.first_failed() {
        println!("corrupted series: {} fails at {:?}", f.operator, f.first_failure.as_ref().map(|x| (x.z, x.r)));
    }
    Ok(())
}
