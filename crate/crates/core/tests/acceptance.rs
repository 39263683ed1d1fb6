mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use gkz::classify::{mum_report, singularity_type, SingularityType};
use gkz::exponents::{exponent_set_prime, match_exponent};
use gkz::gauss::{gauss_config, gauss_log_oracle, gauss_oracle, gauss_parameter};
use gkz::lattice::{is_nonresonant, volume_crosscheck};
use gkz::rational::{factorial, frac, rat};
use gkz::series::{log_solution, phi_series, scalar_relation_check, solution_bundle, solution_bundle_with};
use gkz::verify::certify;
use gkz::{build_config, LatticeConfig, Parameter, PointConfig, Rat, Window};
use num_bigint::BigInt;

const CORPUS_SEED: u64 = 0x5eed_0001;
const CORPUS_SIZE: usize = 200;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn cfg(cols: &[&[i64]]) -> LatticeConfig {
    build_config(PointConfig::new(cols.iter().map(|c| c.to_vec()).collect()).unwrap()).unwrap()
}

fn ints(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| rat(x)).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn golden_series() -> Check {
    let start = Instant::now();
    let c = cfg(&[&[1, 0], &[1, 2], &[1, 1]]);
    let beta = Parameter::new(&c, ints(&[10, 8])).unwrap();
    let report = solution_bundle_with(&c, &beta, &[0, 0], Window::new(-10, 20), Some(0), &[]).map_err(|e| e.to_string())?;
    let bundle = report.bundles.iter().find(|b| b.exponent.v == ints(&[2, 0, 8])).ok_or("exponent (2,0,8) missing")?;
    let series = &bundle.solutions[0].series;
    let terms = series.terms();
    let expected = [rat(1), frac(56, 3), rat(70), rat(56), frac(14, 3)];
    ensure(terms.len() == 5, || format!("{} nonzero terms", terms.len()))?;
    for (z, r, coeff) in &terms {
        ensure(*r == 0 && (0..5).contains(z) && *coeff == expected[*z as usize], || format!("term z={z} r={r} c={coeff}"))?;
    }
    ensure(series.exponent_at(4) == ints(&[6, 4, 0]), || "x3 exponent at z=4 is not 0".into())?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("1, 56/3, 70, 56, 14/3 at z=0..4 in {elapsed:?}"))
}

fn initial_monomial() -> Check {
    let c = cfg(&[&[1, 0], &[1, 2], &[1, 1]]);
    let set = exponent_set_prime(&c, &Parameter::new(&c, ints(&[10, 8])).unwrap()).unwrap();
    let v = set.e_prime.iter().find(|e| e.v == ints(&[2, 0, 8])).ok_or("exponent missing")?;
    let sol = log_solution(&c, v, &[0, 0, 0], 1, Window::new(-4, 6)).map_err(|e| e.to_string())?;
    let comp = sol.component(&[0, 1, 0]).ok_or("component missing")?;
    let coeff = comp.phi.get(-2, 0);
    ensure(coeff == frac(-1, 5940), || format!("coefficient {coeff}"))?;
    ensure(comp.phi.exponent_at(-2) == ints(&[0, -2, 12]), || "wrong monomial".into())?;
    Ok("-1/5940 x^(0,-2,12)".into())
}

fn log_example() -> Check {
    let c = cfg(&[&[1, 0], &[0, 1], &[1, 1]]);
    let beta = Parameter::new(&c, ints(&[0, 0])).unwrap();
    let report = solution_bundle(&c, &beta, &[0, 0], Window::new(-3, 12)).map_err(|e| e.to_string())?;
    ensure(report.bundles.len() == 1, || "expected one exponent".into())?;
    let sols = &report.bundles[0].solutions;
    ensure(sols.len() == 2, || format!("{} solutions", sols.len()))?;
    ensure(sols[0].series.terms() == vec![(0, 0, rat(1))], || "log-free solution is not 1".into())?;
    let s = &sols[1].series;
    ensure(s.get(0, 1) == rat(1), || "missing log x0".into())?;
    for z in -3..=12i64 {
        let expected = if z >= 1 {
            let sign = if z % 2 == 0 { 1 } else { -1 };
            Rat::new(BigInt::from(sign), BigInt::from(z) * factorial(z as u64))
        } else {
            rat(0)
        };
        ensure(s.get(z, 0) == expected, || format!("z={z}: {}", s.get(z, 0)))?;
        ensure(z == 0 || s.get(z, 1) == rat(0), || format!("stray log term at z={z}"))?;
    }
    Ok("1 and log x0 + sum (-1)^z/(z z!) x0^z through z=12".into())
}

fn resonant_edges() -> Check {
    let c = cfg(&[&[1, 0], &[0, 1], &[1, 1]]);
    let beta = Parameter::new(&c, ints(&[-1, -1])).unwrap();
    let set = exponent_set_prime(&c, &beta).map_err(|e| e.to_string())?;
    let vs: Vec<_> = set.e_prime.iter().map(|e| e.v.clone()).collect();
    ensure(vs == vec![ints(&[0, 0, -1])], || format!("E' = {vs:?}"))?;
    let report = solution_bundle(&c, &beta, &[0, 0], Window::new(-4, 8)).map_err(|e| e.to_string())?;
    ensure(report.independent_count == 2 && report.complete, || format!("{} solutions", report.independent_count))?;
    for sol in &report.bundles[0].solutions {
        ensure(certify(&c, beta.beta(), &sol.series).passed, || format!("r={} fails certification", sol.r))?;
    }

    let beta = Parameter::new(&c, ints(&[1, -1])).unwrap();
    let report = solution_bundle_with(&c, &beta, &[0, 0], Window::new(-5, 5), None, &[ints(&[0, -2, 1])])
        .map_err(|e| e.to_string())?;
    let alt = report.bundles.iter().find(|b| b.alternate).ok_or("alternate bundle missing")?;
    let phi = &alt.solutions.first().ok_or("no alternate solution")?.series;
    ensure(phi.terms() == vec![(0, 0, rat(1)), (1, 0, rat(-1))], || format!("{:?}", phi.terms()))?;
    ensure(phi.exponent_at(0) == ints(&[0, -2, 1]), || "wrong leading monomial".into())?;
    ensure(certify(&c, beta.beta(), phi).passed, || "alternate fails certification".into())?;
    Ok("E'={(0,0,-1)} with 2 solutions; x^(0,-2,1) (1 - x0)".into())
}

fn gauss_branch() -> Check {
    let c = gauss_config();
    let (t1, t2) = (frac(1, 2), frac(1, 3));
    let (a, b) = gauss_oracle(&t1, &t2, &frac(1, 5), 10).map_err(|e| e.to_string())?;
    for oracle in [a, b] {
        let phi = phi_series(&c, &oracle.base_exponent, &[0; 4], &[0; 4], Window::new(0, 10)).map_err(|e| e.to_string())?;
        ensure(phi == oracle, || "phi differs from the hypergeometric oracle".into())?;
    }
    let beta = gauss_parameter(&c, &t1, &t2, &rat(2)).map_err(|e| e.to_string())?;
    let set = exponent_set_prime(&c, &beta).map_err(|e| e.to_string())?;
    let oracle = gauss_log_oracle(&t1, &t2, 2, 8).map_err(|e| e.to_string())?;
    let v = set.e_prime.iter().find(|e| e.multiplicity() == 2).ok_or("no double exponent")?;
    let sol = log_solution(&c, v, &[0; 4], 1, Window::new(-4, 8)).map_err(|e| e.to_string())?;
    let tail: Vec<i64> = sol.series.terms().iter().filter(|t| t.0 < 0).map(|t| t.0).collect();
    ensure(tail == vec![-1], || format!("negative tail at {tail:?}"))?;
    ensure(sol.series.restrict(-1, 8) == oracle, || "log solution differs from the oracle".into())?;
    Ok("both exponents through z=10; sigma=2 log branch through z=8".into())
}

fn certification() -> Check {
    let start = Instant::now();
    let mut rng = common::rng(CORPUS_SEED);
    let mut solutions = 0usize;
    for (idx, c) in common::corpus(CORPUS_SEED, CORPUS_SIZE).iter().enumerate() {
        let beta = common::random_nonresonant(&mut rng, c);
        let u = c.combine_int(&common::random_lift(&mut rng, c.n()));
        let report = solution_bundle(c, &beta, &u, Window::new(-3, 4)).map_err(|e| format!("config {idx}: {e}"))?;
        for bundle in &report.bundles {
            for sol in &bundle.solutions {
                let cert = certify(c, &bundle.parameter, &sol.series);
                ensure(cert.passed, || {
                    let f = cert.first_failed().unwrap();
                    format!("config {idx} {:?}: {} fails at {:?}", c.points().columns(), f.operator, f.first_failure)
                })?;
                solutions += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{solutions} solutions over {CORPUS_SIZE} configs in {elapsed:?}"))
}

fn counting_law() -> Check {
    let mut rng = common::rng(CORPUS_SEED ^ 7);
    let mut resonant = 0;
    for (idx, c) in common::corpus(CORPUS_SEED, CORPUS_SIZE).iter().enumerate() {
        for _ in 0..3 {
            let beta = common::random_parameter(&mut rng, c);
            if !is_nonresonant(c, &beta).nonresonant {
                resonant += 1;
            }
            let set = exponent_set_prime(c, &beta).map_err(|e| format!("config {idx}: {e}"))?;
            ensure(set.multiplicity_sum == c.positive_sum(), || format!("config {idx}: {} != {}", set.multiplicity_sum, c.positive_sum()))?;
        }
    }
    Ok(format!("{} parameters, {resonant} resonant", 3 * CORPUS_SIZE))
}

fn volume_consistency() -> Check {
    for (idx, c) in common::corpus(CORPUS_SEED, CORPUS_SIZE).iter().enumerate() {
        let (a, b) = (c.vol(), volume_crosscheck(c));
        ensure(a == b, || format!("config {idx}: {a} vs {b}"))?;
    }
    Ok(format!("{CORPUS_SIZE} configs"))
}

fn exponent_matching() -> Check {
    let mut rng = common::rng(CORPUS_SEED ^ 9);
    let mut pairs = 0;
    for (idx, c) in common::corpus(CORPUS_SEED ^ 9, 50).iter().enumerate() {
        let beta = common::random_nonresonant(&mut rng, c);
        let u = c.combine_int(&common::random_lift(&mut rng, c.n()));
        let set = exponent_set_prime(c, &beta).map_err(|e| format!("triple {idx}: {e}"))?;
        for v in &set.e_prime {
            let (v_prime, diff) = match_exponent(c, &beta, &u, v).map_err(|e| format!("triple {idx}: {e}"))?;
            ensure(v_prime.m_set == v.m_set, || format!("triple {idx}: integral index sets differ"))?;
            ensure(c.combine_int(&diff) == u, || format!("triple {idx}: v'-v does not lift u"))?;
            scalar_relation_check(c, &beta, &u, v, &v_prime, Window::new(0, 8)).map_err(|e| format!("triple {idx}: {e}"))?;
            pairs += 1;
        }
    }
    Ok(format!("50 triples, {pairs} exponent pairs"))
}

fn mum_equivalence() -> Check {
    let mut rng = common::rng(CORPUS_SEED ^ 11);
    let (mut checked, mut positive) = (0, 0);
    for (idx, c) in common::corpus(CORPUS_SEED, CORPUS_SIZE).iter().enumerate() {
        if singularity_type(c) != SingularityType::Regular {
            continue;
        }
        let mut betas = vec![common::random_nonresonant(&mut rng, c)];
        betas.extend(common::random_mum_candidate(&mut rng, c));
        for beta in betas {
            let r = mum_report(c, &beta).map_err(|e| format!("config {idx}: {e}"))?;
            ensure(r.consistent(), || format!("config {idx}: {r:?}"))?;
            checked += 1;
            positive += r.mum as usize;
        }
    }
    ensure(positive > 0, || "no MUM instance in the corpus".into())?;

    let c = cfg(&[&[1, 0], &[0, 1], &[-1, -1]]);
    let holo: Vec<bool> = [[0, 0], [1, 0], [0, 1], [1, 1]]
        .iter()
        .map(|b| mum_report(&c, &Parameter::new(&c, ints(b)).unwrap()).map(|r| r.mum_holomorphic))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    ensure(holo == vec![true, false, false, false], || format!("{holo:?}"))?;
    Ok(format!("{checked} regular nonresonant instances, {positive} MUM; beta=0 unique holomorphic"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("golden series", golden_series),
        ("initial monomial coefficient", initial_monomial),
        ("log solution example", log_example),
        ("resonant edge cases", resonant_edges),
        ("Gauss branch", gauss_branch),
        ("operator certification", certification),
        ("counting law", counting_law),
        ("volume consistency", volume_consistency),
        ("exponent matching", exponent_matching),
        ("MUM equivalence", mum_equivalence),
    ];
    let mut failed = 0;
    let only: Option<usize> = std::env::var("GKZ_CRITERION").ok().and_then(|s| s.parse().ok());
    for (n, (name, check)) in criteria.iter().enumerate() {
        if only.is_some_and(|k| k != n + 1) {
            continue;
        }
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail})", n + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name} ({detail})", n + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
