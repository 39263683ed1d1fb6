//! Maximal unipotent monodromy for 3F2 and for `a3 = -a1 - a2`.

use gkz::classify::{classify, mum_report, MumVerdict};
use gkz::gauss::{pfq_config, pfq_parameter};
use gkz::rational::{frac, rat};
use gkz::{build_config, Parameter, PointConfig};

fn main() -> gkz::Result<()> {
    let config = pfq_config(3, 2)?;
    let alpha = [frac(1, 2), frac(1, 3), frac(1, 5)];
    for gamma in [[rat(1), rat(1)], [rat(2), rat(3)], [frac(1, 7), rat(1)]] {
        let beta = pfq_parameter(&config, &alpha, &gamma)?;
        let r = mum_report(&config, &beta)?;
        println!("3F2 gamma = ({}, {}): |E'| = {}, MUM {}, holomorphic {}, cross-check {}", gamma[0], gamma[1], r.e_prime_size, r.mum, r.mum_holomorphic, r.consistent());
    }

    let config = build_config(PointConfig::new(vec![vec![1, 0], vec![0, 1], vec![-1, -1]])?)?;
    for b in [[0, 0], [1, 0], [0, 1], [1, 1]] {
        let beta = Parameter::new(&config, b.iter().map(|&x| rat(x)).collect())?;
        if let MumVerdict::Decided(r) = classify(&config, &beta)?.mum {
            println!("a3 = -a1 - a2, beta = {b:?}: holomorphic MUM {}", r.mum_holomorphic);
        }
    }
    Ok(())
}
