//! Property suites behind `lctlab check`.
//!
//! Every suite draws its cases from a ChaCha stream seeded by the job, so a
//! rerun with the same seed checks the same instances.

use lctlab_core::asymptotics::{enlarge, enlarge_q};
use lctlab_core::multiplier::{
    arn_ideal_q, arn_of_ideal, asymptotic_system, computing_valuations_q, controlled_growth_check, jumping_numbers, lct_q,
    multiplier_ideal, sandwich_check, verify_jumps,
};
use lctlab_core::newton::{ExponentVector, GradedMonomialSequence, MonomialIdeal, MonomialValuation, Value};
use lctlab_core::ratlp::{ceil, int, rat};
use lctlab_core::valspace2d::{a_invariance_check, build_chain, chi_trace, ChiTarget, Tangent};
use lctlab_core::{Options, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::output::{Cell, Report, Table};
use crate::CliError;

pub const SUITES: &[&str] = &[
    "thresholds",
    "jumps",
    "subadditivity",
    "growth",
    "self-value",
    "skoda",
    "fan",
    "dynamics",
    "sandwich",
    "enlargement",
];

struct Outcome {
    suite: &'static str,
    cases: u32,
    failures: Vec<String>,
}

fn random_ideal(rng: &mut ChaCha8Rng, n: usize, primary: bool) -> MonomialIdeal {
    let count = rng.gen_range(1..=5);
    let mut gens: Vec<ExponentVector> = (0..count)
        .map(|_| ExponentVector::from((0..n).map(|_| rng.gen_range(0..=4)).collect::<Vec<u32>>()))
        .filter(|g| g.degree() > 0)
        .collect();
    if primary || gens.is_empty() {
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = rng.gen_range(1..=5);
            gens.push(ExponentVector::from(e));
        }
    }
    lctlab_core::newton::minimal_generators(n, gens).expect("generators have the right length")
}

fn random_q(rng: &mut ChaCha8Rng, n: usize) -> MonomialIdeal {
    if rng.gen_bool(0.3) {
        MonomialIdeal::unit(n)
    } else {
        let gens = (0..rng.gen_range(1..=2))
            .map(|_| ExponentVector::from((0..n).map(|_| rng.gen_range(0..=2)).collect::<Vec<u32>>()))
            .collect::<Vec<_>>();
        lctlab_core::newton::minimal_generators(n, gens).expect("generators have the right length")
    }
}

fn exact(v: &Value) -> Result<Rational, CliError> {
    v.exact().cloned().ok_or_else(|| CliError::Computation("expected an exact value".into()))
}

fn grid8(rng: &mut ChaCha8Rng) -> Vec<Rational> {
    let mut g: Vec<Rational> = (0..8).map(|_| rat(rng.gen_range(1..=24), 4)).collect();
    g.sort();
    g.dedup();
    g
}

fn thresholds(rng: &mut ChaCha8Rng, opts: &Options) -> Result<Option<String>, CliError> {
    // J(a^λ) is the unit ideal below the lct and proper at it.
    let n = rng.gen_range(2..=3);
    let a = random_ideal(rng, n, false);
    let seq = GradedMonomialSequence::powers_of(a.clone())?;
    let lct = exact(&lct_q(&seq, &MonomialIdeal::unit(n), opts)?.value)?;
    let below = &lct - rat(1, 1000);
    if !multiplier_ideal(&seq, &below, opts)?.value.is_unit() || multiplier_ideal(&seq, &lct, opts)?.value.is_unit() {
        return Ok(Some(format!("lct {lct} of {a} is not where J leaves the unit ideal")));
    }
    Ok(None)
}

fn jumps(rng: &mut ChaCha8Rng, opts: &Options) -> Result<Option<String>, CliError> {
    let a = random_ideal(rng, 2, false);
    let seq = GradedMonomialSequence::powers_of(a.clone())?;
    let max = int(2);
    let report = jumping_numbers(&seq, &max, opts)?;
    Ok(verify_jumps(&seq, &report, &max, opts).err().map(|e| format!("{a}: {e}")))
}

fn subadditivity(rng: &mut ChaCha8Rng, opts: &Options) -> Result<Option<String>, CliError> {
    let n = rng.gen_range(2..=3);
    let a = random_ideal(rng, n, false);
    let sys = asymptotic_system(GradedMonomialSequence::powers_of(a.clone())?);
    let bad = sys.violations(&grid8(rng), opts)?;
    Ok(bad.first().map(|(s, t)| format!("{a}: fails at s = {s}, t = {t}")))
}

fn growth(rng: &mut ChaCha8Rng, opts: &Options) -> Result<Option<String>, CliError> {
    let a = random_ideal(rng, 2, false);
    let sys = asymptotic_system(GradedMonomialSequence::powers_of(a.clone())?);
    let grid: Vec<Rational> = (1..=32).map(|k| rat(k, 4)).collect();
    for alpha in [[1, 1], [1, 2], [2, 3]] {
        let r = controlled_growth_check(&sys, &[int(alpha[0]), int(alpha[1])], &grid, opts)?;
        if let Some(row) = r.rows.iter().find(|r| !r.holds) {
            return Ok(Some(format!("{a}, α = {alpha:?}: fails at t = {}", row.t)));
        }
    }
    Ok(None)
}

fn self_value(rng: &mut ChaCha8Rng, _: &Options) -> Result<Option<String>, CliError> {
    let n = rng.gen_range(1..=3);
    let alpha: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=6)).collect();
    let lcm = alpha.iter().fold(1i64, |l, &a| num_integer::lcm(l, a));
    let seq = GradedMonomialSequence::valuation_ideals(alpha.iter().map(|&a| int(a)).collect())?;
    let v = MonomialValuation::from_integers(&alpha)?;
    let value = v.eval_sequence(&seq, 4 * lcm as u32)?;
    Ok((value.value != Value::Exact(int(1))).then(|| format!("α = {alpha:?}: v(a•(v)) = {}", value.value)))
}

fn skoda(rng: &mut ChaCha8Rng, opts: &Options) -> Result<Option<String>, CliError> {
    let n = rng.gen_range(2..=3);
    let a = random_ideal(rng, n, true);
    let q = random_q(rng, n);
    let lambda = rat(rng.gen_range(1..=16), 4);
    let j = multiplier_ideal(&GradedMonomialSequence::powers_of(a.clone())?, &lambda, opts)?.value;
    let lhs = arn_of_ideal(&j, &q)?;
    let rhs = &lambda * arn_of_ideal(&a, &q)? - int(1);
    Ok((lhs < rhs).then(|| format!("a = {a}, q = {q}, λ = {lambda}: {lhs} < {rhs}")))
}

fn fan(rng: &mut ChaCha8Rng, _: &Options) -> Result<Option<String>, CliError> {
    let (a, b) = loop {
        let (a, b) = (rng.gen_range(1..=40u64), rng.gen_range(1..=40u64));
        if num_integer::gcd(a, b) == 1 {
            break (a, b);
        }
    };
    let other = loop {
        let o = [rng.gen_range(1..=12u64), rng.gen_range(1..=12u64)];
        if num_integer::gcd(o[0], o[1]) == 1 && o != [a, b] {
            break o;
        }
    };
    let r = a_invariance_check(&[int(a as i64), int(b as i64)], other)?;
    Ok((!(r.equal && r.determinants_ok)).then(|| format!("α = ({a}, {b}) via {other:?}: {r:?}")))
}

fn dynamics(rng: &mut ChaCha8Rng, opts: &Options) -> Result<Option<String>, CliError> {
    let depth = rng.gen_range(2..=8);
    let chain = build_chain(&vec![(2, 1); depth])?;
    let seq = GradedMonomialSequence::powers_of(MonomialIdeal::maximal(2))?;
    let trace = chi_trace(&chain, Tangent::Generic, &seq, &ChiTarget::Ideal(MonomialIdeal::unit(2)), depth, opts)?;
    for n in 0..=depth {
        if chain.level(n)?.b != num_bigint::BigInt::from(1u64 << n) {
            return Ok(Some(format!("b_{n} is not 2^{n}")));
        }
    }
    Ok((!trace.strictly_decreasing_from(1)).then(|| format!("χ not strictly decreasing on depth {depth}")))
}

fn sandwich(rng: &mut ChaCha8Rng, opts: &Options) -> Result<Option<String>, CliError> {
    let a = random_ideal(rng, 2, false);
    let seq = GradedMonomialSequence::powers_of(a.clone())?;
    for alpha in [[1, 1], [2, 3]] {
        let v = MonomialValuation::from_integers(&alpha)?;
        if let Some(r) = sandwich_check(&seq, &v, 12, opts)?.iter().find(|r| !r.holds) {
            return Ok(Some(format!("{a}, α = {alpha:?}: fails at m = {}", r.m)));
        }
    }
    Ok(None)
}

fn enlargement(rng: &mut ChaCha8Rng, opts: &Options) -> Result<Option<String>, CliError> {
    let a = random_ideal(rng, 2, true);
    let q = random_q(rng, 2);
    let seq = GradedMonomialSequence::powers_of(a.clone())?;
    let base = exact(&lct_q(&seq, &q, opts)?.value)?;
    // m^p ⊆ a_1 once p reaches the largest pure power.
    let p = a.max_exponent();
    for k in p..=p + 2 {
        let c = exact(&lct_q(&enlarge(seq.clone(), k)?, &q, opts)?.value)?;
        if c != base {
            return Ok(Some(format!("{a}, q = {q}: lct of c•({k}) is {c}, base {base}")));
        }
    }
    let n: u32 = ceil(&(&base * int(p as i64))).try_into().unwrap_or(u32::MAX).max(1);
    let r = enlarge_q(&q, n)?;
    let (x, y) = (arn_ideal_q(&seq, &q, opts)?.value, arn_ideal_q(&seq, &r, opts)?.value);
    if x != y {
        return Ok(Some(format!("{a}: Arn^q = {x} but Arn^(q+m^{n}) = {y}")));
    }
    if computing_valuations_q(&seq, &q, opts)? != computing_valuations_q(&seq, &r, opts)? {
        return Ok(Some(format!("{a}: computing valuations differ after adding m^{n}")));
    }
    Ok(None)
}

type Case = fn(&mut ChaCha8Rng, &Options) -> Result<Option<String>, CliError>;

fn lookup(name: &str) -> Option<(&'static str, Case)> {
    let case: Case = match name {
        "thresholds" => thresholds,
        "jumps" => jumps,
        "subadditivity" => subadditivity,
        "growth" => growth,
        "self-value" => self_value,
        "skoda" => skoda,
        "fan" => fan,
        "dynamics" => dynamics,
        "sandwich" => sandwich,
        "enlargement" => enlargement,
        _ => return None,
    };
    let name = SUITES.iter().find(|s| **s == name).expect("listed");
    Some((name, case))
}

/// Runs a named suite, or all of them for `"all"`.
pub fn run(suite: Option<String>, cases: Option<u32>, seed: Option<u64>, opts: &Options) -> Result<Report, CliError> {
    let suite = suite.unwrap_or_else(|| "all".into());
    let cases = cases.unwrap_or(20);
    let seed = seed.unwrap_or(0);
    let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite.as_str()] };
    let mut outcomes = Vec::new();
    for name in names {
        let (name, case) = lookup(name)
            .ok_or_else(|| CliError::Input(format!("/run/args/suite: unknown suite {name:?} (expected all or one of {})", SUITES.join(", "))))?;
        // Each suite gets its own stream so that suites do not shift each other.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(SUITES.iter().position(|s| *s == name).expect("listed") as u64);
        let mut failures = Vec::new();
        for _ in 0..cases {
            if let Some(f) = case(&mut rng, opts)? {
                failures.push(f);
            }
        }
        outcomes.push(Outcome { suite: name, cases, failures });
    }
    let mut table = Table::new(&["suite", "cases", "failures", "status"]);
    for o in &outcomes {
        let status = if o.failures.is_empty() { "PASS" } else { "FAIL" };
        table.push(vec![o.suite.into(), Cell::Text(o.cases.to_string()), Cell::Text(o.failures.len().to_string()), status.into()]);
    }
    let failed = outcomes.iter().any(|o| !o.failures.is_empty());
    let result = json!({
        "seed": seed,
        "passed": !failed,
        "suites": outcomes.iter().map(|o| json!({
            "suite": o.suite,
            "cases": o.cases,
            "passed": o.failures.is_empty(),
            "failures": o.failures,
        })).collect::<Vec<_>>(),
    });
    let mut report = Report::new(result, table);
    report.failed = failed;
    Ok(report)
}
