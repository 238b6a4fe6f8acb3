//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any failed.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use esf_core::bounds::{
    exp_dominates_g, f_eval, cubic_margin_check, inverse_threshold, window_lower_exceeds_power, RELATIVE_MARGIN,
};
use esf_core::esf::{closed_form, esf_all, esf_newton_oracle_all, esf_single, OddProgression};
use esf_core::padic::vp_rat;
use esf_core::primes::{build_sieve, panaitopol_lower, panaitopol_upper, prime_count};
use esf_core::verifier::{OutcomeKind, SweepReport};
use esf_core::{Execution, Verifier, VerifierConfig};

type Check = Result<String, String>;
type Sweep = fn(&Verifier) -> esf_core::Result<SweepReport>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn verifier(execution: Execution) -> Verifier {
    Verifier::new(VerifierConfig { execution, ..VerifierConfig::default() }).expect("verifier")
}

fn all_prime_valuation(report: &SweepReport) -> Result<(), String> {
    match report.outcomes.iter().find(|o| o.kind != OutcomeKind::PrimeValuation || !o.ok) {
        Some(o) => Err(format!("n={} k={}: {:?} {:?}", o.n, o.k, o.kind, o.reason)),
        None => Ok(()),
    }
}

fn exact_sweep_400(v: &Verifier) -> Check {
    let r = v.sweep_exact(400).map_err(|e| e.to_string())?;
    ensure(r.pairs == 400 * 401 / 2 - 1, format!("pairs = {}", r.pairs))?;
    ensure(r.outcomes.len() as u64 == r.pairs, "one outcome per pair")?;
    ensure(r.failures.is_empty(), format!("{} integer values", r.failures.len()))?;
    Ok(r.summary_line())
}

fn window_sweep_a(v: &Verifier) -> Check {
    let r = v.sweep_window((2, 11), (400, 22_999)).map_err(|e| e.to_string())?;
    ensure(r.pairs == 10 * (22_999 - 400 + 1), format!("pairs = {}", r.pairs))?;
    ensure(r.failures.is_empty(), format!("failures: {:?}", r.failures.first()))?;
    all_prime_valuation(&r)?;
    Ok(r.summary_line())
}

fn window_sweep_b(v: &Verifier) -> Check {
    let lo12 = inverse_threshold(12.0);
    let lo17 = inverse_threshold(17.0);
    ensure((lo12 - 462.18).abs() < 0.01, format!("k=12 lower bound {lo12}"))?;
    ensure((lo17 - 18_301.78).abs() < 0.01, format!("k=17 lower bound {lo17}"))?;
    let r = v.sweep_window((12, 17), (1, 22_999)).map_err(|e| e.to_string())?;
    let expected: u64 = (12..=17u64)
        .map(|k| (1..=22_999u64).filter(|&n| n >= k && n as f64 > inverse_threshold(k as f64)).count() as u64)
        .sum();
    ensure(r.pairs == expected, format!("pairs = {} expected {expected}", r.pairs))?;
    ensure(r.failures.is_empty(), format!("failures: {:?}", r.failures.first()))?;
    all_prime_valuation(&r)?;
    Ok(format!("{} (n > {lo12:.1} for k=12 .. n > {lo17:.1} for k=17)", r.summary_line()))
}

fn valuation_ground_truth(v: &Verifier) -> Check {
    let r = v.verify_theorem(400).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for o in r.outcomes.iter().filter(|o| o.kind == OutcomeKind::PrimeValuation) {
        let p = o.p.ok_or("prime_valuation outcome without p")?;
        let s = esf_single(&OddProgression::odd(o.n).unwrap(), o.k).unwrap();
        let got = vp_rat(&s, p).unwrap();
        ensure(got == -(o.k as i64), format!("n={} k={} p={p}: v_p = {got}", o.n, o.k))?;
        ensure(o.valuation == Some(got), format!("n={} k={}: stored valuation differs", o.n, o.k))?;
        checked += 1;
    }
    ensure(checked > 0, "no prime_valuation certificates below 400")?;
    Ok(format!("{checked} certificates, 0 mismatches"))
}

fn closed_forms() -> Check {
    for k in 1..=50u64 {
        for n in k + 1..=k + 3 {
            let all = esf_all(&OddProgression::odd(n).unwrap());
            let cf = closed_form(k, n).unwrap();
            ensure(all.get(k) == Some(&cf), format!("k={k} n={n}"))?;
        }
    }
    Ok("150 identities".into())
}

fn oracle_equivalence() -> Check {
    for n in 1..=60u64 {
        let prog = OddProgression::odd(n).unwrap();
        let all = esf_all(&prog);
        let brute = (n <= 20).then(|| common::brute_force_all(n));
        let newton = esf_newton_oracle_all(&prog);
        for k in 1..=n {
            let dp = all.get(k).unwrap();
            ensure(dp == &newton[k as usize - 1], format!("newton n={n} k={k}"))?;
            if let Some(b) = &brute {
                ensure(dp == &b[k as usize], format!("brute force n={n} k={k}"))?;
            }
        }
    }
    Ok("n <= 60 vs Newton, n <= 20 vs subsets".into())
}

fn panaitopol() -> Check {
    let sieve = build_sieve(1_000_000).map_err(|e| e.to_string())?;
    ensure(prime_count(&sieve, 1e6).unwrap() == 78_498, "pi(10^6)")?;
    let mut points = 0u64;
    let grid = 10_000u64;
    let check_both = |x: f64| -> Result<(), String> {
        let pi = prime_count(&sieve, x).unwrap() as f64;
        let lo = panaitopol_lower(x).unwrap();
        let hi = panaitopol_upper(x).unwrap();
        ensure(lo * (1.0 + RELATIVE_MARGIN) < pi && pi < hi * (1.0 - RELATIVE_MARGIN), format!("x = {x}"))
    };
    for i in 0..grid {
        check_both(59.0 + (1e6 - 59.0) * i as f64 / (grid - 1) as f64)?;
        points += 1;
    }
    for x in 59..=1_000_000u64 {
        check_both(x as f64)?;
        points += 1;
    }
    for i in 0..=5_300u64 {
        let x = 6.0 + i as f64 * 0.01;
        if x >= 59.0 {
            break;
        }
        let pi = prime_count(&sieve, x).unwrap() as f64;
        ensure(pi < panaitopol_upper(x).unwrap() * (1.0 - RELATIVE_MARGIN), format!("upper at x = {x}"))?;
        points += 1;
    }
    Ok(format!("{points} points, 0 violations"))
}

fn diagnostics() -> Check {
    ensure(f_eval(23_000.0).unwrap() > 0.0, "f(23000)")?;
    let mut prev = f64::NEG_INFINITY;
    for i in 0..=10_000 {
        let x = 23_000.0 * (1e7f64 / 23_000.0).powf(i as f64 / 10_000.0);
        let f = f_eval(x).unwrap();
        ensure(f > RELATIVE_MARGIN && f > prev, format!("f at {x}"))?;
        prev = f;
    }
    for i in 0..=10_000 {
        let x = 17.3 + (50.0 - 17.3) * i as f64 / 10_000.0;
        ensure(exp_dominates_g(x).unwrap(), format!("g at {x}"))?;
    }
    for i in 0..=10_000 {
        let t = 3.10 + (100.0 - 3.10) * i as f64 / 10_000.0;
        ensure(cubic_margin_check(t), format!("cubic margin at t = {t}"))?;
    }
    ensure(23_000f64.ln().sqrt() >= 3.10, "sqrt(log 23000) >= 3.10")?;
    for i in 0..=1_000u64 {
        let n = 23_000 + i * 10_000;
        ensure(window_lower_exceeds_power(n).unwrap(), format!("n/(k+3) > n^0.7 at {n}"))?;
    }
    Ok("f, g, cubic margin, n^0.7 grids clean".into())
}

fn full_theorem(v: &Verifier) -> Check {
    let r = v.verify_theorem(23_000).map_err(|e| e.to_string())?;
    let expected = 23_000u64 * 23_001 / 2 - 1;
    ensure(r.pairs == expected, format!("pairs = {} expected {expected}", r.pairs))?;
    ensure(r.failures.is_empty(), format!("failures: {:?}", r.failures.first()))?;
    let c = &r.counts;
    Ok(format!(
        "{} (analytic {}, prime valuation {}, exact {})",
        r.summary_line(),
        c.analytic_bound,
        c.prime_valuation,
        c.exact_non_integer
    ))
}

fn determinism(v: &Verifier) -> Check {
    let seq = verifier(Execution::Sequential);
    let runs: [(&str, Sweep); 3] = [
        ("exact", |v| v.sweep_exact(400)),
        ("window A", |v| v.sweep_window((2, 11), (400, 22_999))),
        ("window B", |v| v.sweep_window((12, 17), (1, 22_999))),
    ];
    for (name, run) in runs {
        let a = run(v).map_err(|e| e.to_string())?.body_json();
        let b = run(v).map_err(|e| e.to_string())?.body_json();
        let c = run(&seq).map_err(|e| e.to_string())?.body_json();
        ensure(a == b, format!("{name}: repeated runs differ"))?;
        ensure(a == c, format!("{name}: sequential and parallel differ"))?;
    }
    Ok("criteria 1-3 byte-identical across repeats and execution modes".into())
}

fn main() -> ExitCode {
    let v = verifier(Execution::Parallel);
    let criteria: Vec<Criterion<'_>> = vec![
        ("1 exact sweep n <= 400", Box::new(|| exact_sweep_400(&v))),
        ("2 window sweep k 2..11, n 400..22999", Box::new(|| window_sweep_a(&v))),
        ("3 window sweep k 12..17 above threshold", Box::new(|| window_sweep_b(&v))),
        ("4 valuation ground truth n <= 400", Box::new(|| valuation_ground_truth(&v))),
        ("5 closed forms k <= 50", Box::new(closed_forms)),
        ("6 oracle equivalence", Box::new(oracle_equivalence)),
        ("7 Panaitopol bounds vs sieve", Box::new(panaitopol)),
        ("8 inequality diagnostics", Box::new(diagnostics)),
        ("9 full theorem n <= 23000", Box::new(|| full_theorem(&v))),
        ("10 determinism", Box::new(|| determinism(&v))),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let start = Instant::now();
        let result = run();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS criterion {name}: {detail} [{secs:.2}s]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail} [{secs:.2}s]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
