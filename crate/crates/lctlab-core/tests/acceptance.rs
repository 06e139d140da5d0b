//! The twelve acceptance criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so that the lines always reach the
//! output; the process fails if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::lp::{bfs_minimum, degenerate_instances, random_lp};
use common::{ideal_contained, ideal_product, lattice_box, min_weight, minimal, random_gens, PointRegion};
use lctlab_core::asymptotics::{enlarge, enlarge_q};
use lctlab_core::multiplier::{
    arn_ideal_q, arn_monomial, arn_of_ideal, asymptotic_system, computing_valuations, computing_valuations_q,
    controlled_growth_check, jumping_numbers, lct_q, multiplier_ideal, sandwich_check, ComputingSet,
};
use lctlab_core::newton::{Example8, ExponentVector, GradedMonomialSequence, MonomialIdeal, MonomialValuation, NewtonRegion, Value};
use lctlab_core::ratlp::{ceil, int, rat, solve_with, to_f64, LinearProgram, LpSolution, PivotRule};
use lctlab_core::valspace2d::{a_invariance_check, build_chain, chi_trace, fan_refine_2d, ChiTarget, Polynomial2, Tangent};
use lctlab_core::{Extended, Options, Rational};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TIME_LIMIT: Duration = Duration::from_secs(1);
const EXAMPLE8_ARN_TOL: f64 = 1e-9;
const EXAMPLE8_SUPPORT_TOL: f64 = 1e-6;
const EXAMPLE8_DIRECTION_TOL: f64 = 1e-6;

type Check = Result<String, String>;

fn rng(criterion: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_0000 + criterion)
}

fn ideal(gens: &[Vec<u32>]) -> MonomialIdeal {
    MonomialIdeal::new(gens[0].len(), gens.iter().map(|g| ExponentVector::from(g.clone())).collect()).unwrap()
}

fn gens_of(a: &MonomialIdeal) -> Vec<Vec<u32>> {
    a.generators().iter().map(|g| g.coords().to_vec()).collect()
}

fn exact(v: &Value) -> Result<Rational, String> {
    v.exact().cloned().ok_or_else(|| format!("expected an exact value, got {v}"))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// A random graded sequence together with its limit region for the oracle:
/// powers of an ideal, or valuation ideals of a positive integer weight.
struct Sample {
    seq: GradedMonomialSequence,
    region: PointRegion,
    /// Generators of `a_m`, by brute force.
    term: Box<dyn Fn(u32) -> Vec<Vec<u32>>>,
    label: String,
}

fn random_sample(rng: &mut ChaCha8Rng, n: usize) -> Sample {
    if rng.gen_bool(0.7) {
        let gens = random_gens(rng, n, 5, false);
        let a = ideal(&gens);
        let g = gens.clone();
        Sample {
            seq: GradedMonomialSequence::powers_of(a.clone()).unwrap(),
            region: PointRegion::from_integers(&gens),
            term: Box::new(move |m| {
                let mut t = vec![vec![0; g[0].len()]];
                for _ in 0..m {
                    t = ideal_product(&t, &g);
                }
                t
            }),
            label: format!("powers of {a}"),
        }
    } else {
        let alpha: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=4)).collect();
        let points = (0..n)
            .map(|i| (0..n).map(|j| if i == j { rat(1, alpha[i]) } else { int(0) }).collect())
            .collect();
        let w = alpha.clone();
        Sample {
            seq: GradedMonomialSequence::valuation_ideals(alpha.iter().map(|&a| int(a)).collect()).unwrap(),
            region: PointRegion::new(points),
            term: Box::new(move |m| {
                minimal(
                    lattice_box(w.len(), m)
                        .into_iter()
                        .filter(|u| u.iter().zip(&w).map(|(&c, &a)| c as i64 * a).sum::<i64>() >= m as i64)
                        .collect(),
                )
            }),
            label: format!("valuation ideals of {alpha:?}"),
        }
    }
}

/// Largest coordinate among the region's points, for Howald boxes.
fn reach(r: &PointRegion) -> Rational {
    r.points.iter().flatten().max().cloned().unwrap_or_else(|| int(1))
}

fn box_bound(r: &PointRegion, lambda: &Rational) -> u32 {
    (ceil(&(lambda * reach(r))) + 1u32).try_into().unwrap()
}

fn c1_cusp() -> Check {
    let start = Instant::now();
    let a = MonomialIdeal::from_exponents(2, &[&[2, 0], &[0, 3]]).unwrap();
    let seq = GradedMonomialSequence::powers_of(a).unwrap();
    let o = Options::default();
    let unit = MonomialIdeal::unit(2);
    let lct = exact(&lct_q(&seq, &unit, &o).map_err(|e| e.to_string())?.value)?;
    let arn = exact(&arn_ideal_q(&seq, &unit, &o).map_err(|e| e.to_string())?.value)?;
    let elapsed = start.elapsed();
    // Facets of conv{(2,0),(0,3)} + R²₊ by hand: x ≥ 0, y ≥ 0, 3x + 2y ≥ 6.
    // The ray t·(1,1) meets 3t + 2t = 6 first.
    let facets = [([3, 2], 6), ([1, 0], 0), ([0, 1], 0)];
    let entry = facets
        .iter()
        .filter(|(_, c)| *c > 0)
        .map(|(n, c)| rat(*c, n[0] + n[1]))
        .max()
        .unwrap();
    ensure(arn == entry && arn == rat(6, 5), || format!("Arn = {arn}, oracle {entry}"))?;
    ensure(lct == rat(5, 6), || format!("lct = {lct}"))?;
    ensure(elapsed < TIME_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!("lct = {lct}, Arn = {arn}, {} ms", elapsed.as_millis()))
}

fn c2_jumps() -> Check {
    let o = Options::default();
    let cases = [
        (MonomialIdeal::from_exponents(2, &[&[1, 1]]).unwrap(), int(3), vec![int(1), int(2), int(3)]),
        (MonomialIdeal::maximal_power(2, 2), int(2), vec![int(1), rat(3, 2), int(2)]),
    ];
    let mut shown = Vec::new();
    for (a, max, want) in cases {
        let seq = GradedMonomialSequence::powers_of(a.clone()).unwrap();
        let r = jumping_numbers(&seq, &max, &o).map_err(|e| e.to_string())?;
        ensure(r.jumps == want, || format!("{a}: jumps {:?}", r.jumps))?;
        let oracle = PointRegion::from_integers(&gens_of(&a));
        let j = |l: &Rational| multiplier_ideal(&seq, l, &o).unwrap().value;
        // J changes at each candidate and nowhere on a fine grid in between.
        let eps = rat(1, 97);
        for c in &want {
            ensure(j(&(c - &eps)) != j(c), || format!("{a}: no jump at {c}"))?;
            ensure(gens_of(&j(c)) == oracle.multiplier_gens(c, box_bound(&oracle, c)), || format!("{a}: J({c}) disagrees with Howald"))?;
        }
        let grid: Vec<Rational> = (0..=max.to_integer().try_into().unwrap_or(0i64) * 96).map(|k| rat(k, 96)).collect();
        for w in grid.windows(2) {
            let inside = want.iter().any(|c| &w[0] < c && c <= &w[1]);
            ensure(inside || j(&w[0]) == j(&w[1]), || format!("{a}: unreported change in ({}, {}]", w[0], w[1]))?;
        }
        shown.push(format!("{a}: {}", want.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")));
    }
    Ok(shown.join("; "))
}

/// `min_{x ≥ 0} a·x + b/(x + 1)` by golden-section search on a convex function.
fn example8_support_oracle(a: f64, b: f64) -> f64 {
    let f = |x: f64| a * x + b / (x + 1.0);
    let (mut lo, mut hi) = (0.0f64, 1e4f64);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let (x1, x2) = (hi - g * (hi - lo), lo + g * (hi - lo));
        if f(x1) <= f(x2) {
            hi = x2;
        } else {
            lo = x1;
        }
    }
    f((lo + hi) / 2.0).min(f(0.0))
}

fn c3_example8() -> Check {
    let o = Options::default();
    let seq = GradedMonomialSequence::region(NewtonRegion::oracle(Example8));
    let golden = (5f64.sqrt() - 1.0) / 2.0;
    let arn = arn_monomial(&seq, &ExponentVector::zero(2), &o).map_err(|e| e.to_string())?.value;
    let arn = arn.to_f64();
    ensure((arn - golden).abs() < EXAMPLE8_ARN_TOL, || format!("Arn = {arn}"))?;

    let mut rng = rng(3);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let s: f64 = rng.gen_range(0.001..0.999);
        let alpha = [Rational::from_float(s).unwrap(), Rational::from_float(1.0 - s).unwrap()];
        let (a, b) = (to_f64(&alpha[0]), to_f64(&alpha[1]));
        let v = MonomialValuation::new(alpha.to_vec()).unwrap();
        let got = v.eval_sequence(&seq, o.window).map_err(|e| e.to_string())?.value.to_f64();
        let oracle = example8_support_oracle(a, b);
        // The closed form holds on b ≥ a; below the diagonal the minimum sits at x = 0.
        let closed = if b >= a { 2.0 * (a * b).sqrt() - a } else { b };
        worst = worst.max((got - oracle).abs()).max((got - closed).abs());
    }
    ensure(worst < EXAMPLE8_SUPPORT_TOL, || format!("support error {worst:e}"))?;

    let dirs = match computing_valuations(&seq, &ExponentVector::zero(2), &o).map_err(|e| e.to_string())? {
        ComputingSet::Approximate { directions, .. } => directions,
        other => return Err(format!("expected approximate directions, got {other:?}")),
    };
    let expected = [(1.0 - golden) / (2.0 - golden), 1.0 / (2.0 - golden)];
    let dir_err = dirs
        .iter()
        .map(|d| (d[0] - expected[0]).abs().max((d[1] - expected[1]).abs()))
        .fold(f64::INFINITY, f64::min);
    ensure(dir_err < EXAMPLE8_DIRECTION_TOL, || format!("direction {dirs:?} vs {expected:?}"))?;

    // Rational directions (i, N − i)/N: the ratio v(a•)/A(v) stays strictly
    // below the supremum, which is attained at the irrational slope.
    let n = 400;
    let best = (1..n)
        .map(|i| {
            let (a, b) = (i as f64 / n as f64, (n - i) as f64 / n as f64);
            example8_support_oracle(a, b) / (a + b)
        })
        .fold(f64::NEG_INFINITY, f64::max);
    let gap = golden - best;
    ensure(gap > 1e-9, || format!("rational grid reaches {best}"))?;
    Ok(format!(
        "Arn = {arn:.12}, support err {worst:.1e}, direction err {dir_err:.1e}, divisorial gap {gap:.2e}"
    ))
}

fn c4_subadditivity() -> Check {
    let mut rng = rng(4);
    let o = Options::default();
    for case in 0..50 {
        let n = rng.gen_range(2..=3);
        let s = random_sample(&mut rng, n);
        let mut grid: Vec<Rational> = Vec::new();
        while grid.len() < 8 {
            let l = rat(rng.gen_range(1..=16), 8);
            if !grid.contains(&l) {
                grid.push(l);
            }
        }
        grid.sort();
        let j = |l: &Rational| gens_of(&multiplier_ideal(&s.seq, l, &o).unwrap().value);
        let js: Vec<Vec<Vec<u32>>> = grid.iter().map(j).collect();
        for (l, got) in grid.iter().zip(&js) {
            let want = s.region.multiplier_gens(l, box_bound(&s.region, l));
            ensure(*got == want, || format!("case {case} ({}): J({l}) = {got:?}, Howald {want:?}", s.label))?;
        }
        for (a, ja) in grid.iter().zip(&js) {
            for (b, jb) in grid.iter().zip(&js) {
                let jab = j(&(a + b));
                ensure(ideal_contained(&jab, &ideal_product(ja, jb)), || {
                    format!("case {case} ({}): J({}) ⊄ J({a})·J({b})", s.label, a + b)
                })?;
                if a > b {
                    ensure(ideal_contained(ja, jb), || format!("case {case} ({}): J({a}) ⊄ J({b})", s.label))?;
                }
            }
        }
    }
    Ok("50 sequences, 8-point grids".into())
}

fn c5_growth() -> Check {
    let mut rng = rng(5);
    let o = Options::default();
    let grid: Vec<Rational> = (1..=32).map(|k| rat(k, 4)).collect();
    let mut min_margin: Option<Rational> = None;
    for case in 0..20 {
        let s = random_sample(&mut rng, 2);
        let sys = asymptotic_system(s.seq.clone());
        for alpha in [[1i64, 1], [1, 2], [2, 3]] {
            let w = [int(alpha[0]), int(alpha[1])];
            let report = controlled_growth_check(&sys, &w, &grid, &o).map_err(|e| e.to_string())?;
            let va = s.region.support(&w);
            let a = &w[0] + &w[1];
            for (t, row) in grid.iter().zip(&report.rows) {
                // v(J(a•^t)) from the Howald oracle.
                let bound = box_bound(&s.region, t);
                let vb = lattice_box(2, bound)
                    .into_iter()
                    .filter(|u| s.region.in_multiplier(u, t))
                    .map(|u| &w[0] * int(u[0] as i64) + &w[1] * int(u[1] as i64))
                    .min()
                    .unwrap();
                let margin = &vb / t - (&va - &a / t);
                ensure(margin.is_positive(), || format!("case {case} ({}), α = {alpha:?}, t = {t}: margin {margin}", s.label))?;
                ensure(row.holds && row.margin == margin, || format!("case {case}: library row {row:?}, oracle margin {margin}"))?;
                if min_margin.as_ref().map_or(true, |m| &margin < m) {
                    min_margin = Some(margin);
                }
            }
        }
    }
    Ok(format!("20 sequences × 3 weights × 32 points, least margin {}", min_margin.unwrap()))
}

fn c6_self_value() -> Check {
    let mut rng = rng(6);
    for _ in 0..20 {
        let n = rng.gen_range(1..=3);
        let alpha: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=6)).collect();
        let lcm = alpha.iter().fold(1i64, |l, &a| num_integer::lcm(l, a)) as u32;
        let window = 4 * lcm;
        let seq = GradedMonomialSequence::valuation_ideals(alpha.iter().map(|&a| int(a)).collect()).unwrap();
        let v = MonomialValuation::from_integers(&alpha).unwrap();
        let got = v.eval_sequence(&seq, window).map_err(|e| e.to_string())?.value;
        ensure(got == Value::Exact(int(1)), || format!("α = {alpha:?}: {got}"))?;
        // Brute force: min_{⟨α,u⟩ ≥ m} ⟨α,u⟩ / m over m ≤ window.
        let best = (1..=window.min(24))
            .map(|m| {
                let vm = lattice_box(n, m)
                    .into_iter()
                    .map(|u| u.iter().zip(&alpha).map(|(&c, &a)| c as i64 * a).sum::<i64>())
                    .filter(|&s| s >= m as i64)
                    .min()
                    .unwrap();
                rat(vm, m as i64)
            })
            .min()
            .unwrap();
        ensure(best == int(1), || format!("α = {alpha:?}: brute force {best}"))?;
    }
    Ok("20 weights, v(a•(v)) = 1".into())
}

fn c7_skoda() -> Check {
    let mut rng = rng(7);
    let o = Options::default();
    let mut tight = 0;
    for case in 0..50 {
        let n = rng.gen_range(2..=3);
        let gens = random_gens(&mut rng, n, 5, false);
        let q = random_gens(&mut rng, n, 2, false);
        let q = if rng.gen_bool(0.3) { vec![vec![0; n]] } else { q };
        let lambda = rat(rng.gen_range(1..=12), 4);
        let a = ideal(&gens);
        let qi = ideal(&q);
        let j = multiplier_ideal(&GradedMonomialSequence::powers_of(a.clone()).unwrap(), &lambda, &o).unwrap().value;
        let lhs = arn_of_ideal(&j, &qi).map_err(|e| e.to_string())?;
        let arn_a = arn_of_ideal(&a, &qi).map_err(|e| e.to_string())?;
        let oracle_j = if j.is_unit() { Rational::zero() } else { PointRegion::from_integers(&gens_of(&j)).arn_q(&q) };
        let oracle_a = PointRegion::from_integers(&gens).arn_q(&q);
        ensure(lhs == oracle_j && arn_a == oracle_a, || format!("case {case}: library ({lhs}, {arn_a}) vs oracle ({oracle_j}, {oracle_a})"))?;
        let rhs = &lambda * &arn_a - int(1);
        ensure(lhs >= rhs, || format!("case {case}: a = {a}, q = {qi}, λ = {lambda}: {lhs} < {rhs}"))?;
        if lhs == rhs {
            tight += 1;
        }
    }
    Ok(format!("50 triples, {tight} with equality"))
}

fn c8_fans() -> Check {
    let mut rng = rng(8);
    let mut rays = 0;
    for _ in 0..100 {
        let (a, b) = loop {
            let (a, b) = (rng.gen_range(1..=200u64), rng.gen_range(1..=200u64));
            if num_integer::gcd(a, b) == 1 {
                break (a, b);
            }
        };
        let other = loop {
            let o = [rng.gen_range(1..=50u64), rng.gen_range(1..=50u64)];
            if num_integer::gcd(o[0], o[1]) == 1 && o != [a, b] {
                break o;
            }
        };
        let alpha = [int(a as i64), int(b as i64)];
        let r = a_invariance_check(&alpha, other).map_err(|e| e.to_string())?;
        let direct = int((a + b) as i64);
        ensure(r.equal && r.own_fan == direct && r.other_path == direct && r.other_cone == direct, || format!("({a}, {b}) via {other:?}: {r:?}"))?;
        let own = fan_refine_2d([a, b]).unwrap();
        let mut via = fan_refine_2d(other).unwrap();
        via.insert([a, b]).unwrap();
        for f in [&own, &via] {
            for w in f.rays().windows(2) {
                let d = w[0][0] as i128 * w[1][1] as i128 - w[0][1] as i128 * w[1][0] as i128;
                ensure(d == 1, || format!("({a}, {b}): determinant {d} between {:?} and {:?}", w[0], w[1]))?;
            }
            for (ray, &ad) in f.rays().iter().zip(f.log_discrepancies()) {
                ensure(ad == ray[0] + ray[1], || format!("A{ray:?} = {ad}"))?;
            }
            rays += f.rays().len();
        }
    }
    Ok(format!("100 directions, {rays} rays checked"))
}

fn c9_dynamics() -> Check {
    let o = Options::default();
    let depth = 8;
    let chain = build_chain(&vec![(2, 1); depth]).map_err(|e| e.to_string())?;
    for n in 0..=depth {
        let b = &chain.level(n).unwrap().b;
        ensure(*b == num_bigint::BigInt::from(1u64 << n), || format!("b_{n} = {b}"))?;
    }
    let seq = GradedMonomialSequence::powers_of(MonomialIdeal::maximal(2)).unwrap();
    let trace = chi_trace(&chain, Tangent::Generic, &seq, &ChiTarget::Ideal(MonomialIdeal::unit(2)), depth, &o)
        .map_err(|e| e.to_string())?;
    for row in &trace.rows {
        // χ(v_n) = v_n(m)/A(v_n) = 1/(3 − 2^{−n}).
        let want = (int(3) - rat(1, 1 << row.n)).recip();
        ensure(row.chi == want, || format!("χ(v_{}) = {}, expected {want}", row.n, row.chi))?;
    }
    ensure(trace.strictly_decreasing_from(1), || "χ is not strictly decreasing from n = 1".into())?;

    let mut rng = rng(9);
    let exponents: Vec<Rational> = std::iter::once(int(1)).chain((1..=depth).map(|n| chain.level(n).unwrap().beta.clone())).collect();
    let ones = vec![int(1); exponents.len()];
    for case in 0..30 {
        let deg = rng.gen_range(1..=6u32);
        let mut terms = Vec::new();
        for _ in 0..rng.gen_range(1..=6) {
            let i = rng.gen_range(0..=deg);
            let j = rng.gen_range(0..=deg - i);
            let c = [-2i64, -1, 1, 2][rng.gen_range(0..4)];
            terms.push((i, j, c));
        }
        let f = Polynomial2::from_terms(&terms);
        let Some(d) = f.degree() else { continue };
        let values: Vec<Extended> = (0..=depth).map(|n| chain.valuation(n, Tangent::Generic).unwrap().eval(&f).unwrap()).collect();
        ensure(values.windows(2).all(|w| w[0] <= w[1]), || format!("case {case}: {f}: {values:?} not monotone"))?;
        let f_terms: Vec<(u32, u32, Rational)> = f.terms().iter().map(|(&(i, j), c)| (i, j, c.clone())).collect();
        for (n, v) in values.iter().enumerate() {
            let oracle = common::puiseux_oracle(&exponents, &ones, n + 1, &f_terms).unwrap();
            ensure(*v == Extended::Finite(oracle.clone()), || format!("case {case}: v_{n}({f}) = {v}, substitution {oracle}"))?;
        }
        let n0 = (0..=depth).find(|&n| (1u64 << n) > d as u64).unwrap();
        ensure(n0 + 2 <= depth, || "chain too short to confirm".into())?;
        ensure(values[n0] == values[n0 + 1] && values[n0] == values[n0 + 2], || format!("case {case}: {f} not stable from n = {n0}: {values:?}"))?;
        ensure(values[n0..].iter().all(|v| *v == values[n0]), || format!("case {case}: {f} moves after n = {n0}"))?;
    }
    Ok("b_n = 2^n, χ = 1/(3 − 2^−n), 30 polynomials stable once b_n > deg f".into())
}

fn c10_lp() -> Check {
    let mut rng = rng(10);
    let mut outcomes = [0usize; 3];
    let check = |lp: &LinearProgram, rule: PivotRule| -> Result<usize, String> {
        let sol = solve_with(lp, rule).solution;
        let oracle = bfs_minimum(lp);
        match (&sol, &oracle) {
            (LpSolution::Optimal { primal, dual, value }, Some(best)) => {
                // Strong duality recomputed here: Ax = b, x ≥ 0, Aᵀy ≤ c, b·y = c·x.
                let a = lp.matrix();
                let primal_ok = primal.iter().all(|x| !x.is_negative())
                    && a.iter().zip(lp.rhs()).all(|(row, b)| row.iter().zip(primal).map(|(p, x)| p * x).sum::<Rational>() == *b);
                let dual_ok = (0..lp.num_vars())
                    .all(|j| a.iter().zip(dual).map(|(row, y)| &row[j] * y).sum::<Rational>() <= lp.objective()[j]);
                let by: Rational = lp.rhs().iter().zip(dual).map(|(b, y)| b * y).sum();
                let cx: Rational = lp.objective().iter().zip(primal).map(|(c, x)| c * x).sum();
                ensure(primal_ok && dual_ok && by == cx && cx == *value && value == best, || {
                    format!("optimal certificate fails: value {value}, enumeration {best}")
                })?;
                Ok(0)
            }
            (LpSolution::Infeasible { farkas }, None) => {
                let a = lp.matrix();
                let ya_ok = (0..lp.num_vars()).all(|j| a.iter().zip(farkas).map(|(row, y)| &row[j] * y).sum::<Rational>() <= Rational::zero());
                let yb: Rational = lp.rhs().iter().zip(farkas).map(|(b, y)| b * y).sum();
                ensure(ya_ok && yb.is_positive(), || "bad Farkas certificate".into())?;
                Ok(1)
            }
            (LpSolution::Unbounded { .. }, Some(_)) => {
                sol.verify(lp)?;
                Ok(2)
            }
            _ => Err(format!("solver {sol:?} vs enumeration {oracle:?}")),
        }
    };
    for k in 0..500 {
        let lp = random_lp(&mut rng);
        for rule in [PivotRule::Bland, PivotRule::LargestCoefficient] {
            outcomes[check(&lp, rule).map_err(|e| format!("program {k}: {e}"))?] += 1;
        }
    }
    let mut fallbacks = 0;
    for (name, lp, expected) in degenerate_instances() {
        for rule in [PivotRule::Bland, PivotRule::LargestCoefficient] {
            check(&lp, rule).map_err(|e| format!("{name}: {e}"))?;
            let report = solve_with(&lp, rule);
            fallbacks += report.fell_back_to_bland as usize;
            if let Some(v) = &expected {
                ensure(report.solution.value() == Some(v), || format!("{name}: {:?}", report.solution.value()))?;
            }
        }
    }
    Ok(format!(
        "500 programs (optimal {}, infeasible {}, unbounded {} over two rules), 5 degenerate instances terminate ({fallbacks} Bland fallbacks)",
        outcomes[0], outcomes[1], outcomes[2]
    ))
}

fn c11_sandwich() -> Check {
    let mut rng = rng(11);
    let o = Options::default();
    for case in 0..20 {
        let s = random_sample(&mut rng, 2);
        let weights = [[1i64, 1], [2, 3]];
        let rows: Vec<_> = weights
            .iter()
            .map(|w| sandwich_check(&s.seq, &MonomialValuation::from_integers(w).unwrap(), 12, &o))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        for m in 1..=12u32 {
            let mr = int(m as i64);
            let bound = box_bound(&s.region, &mr);
            let members: Vec<Vec<u32>> = lattice_box(2, bound).into_iter().filter(|u| s.region.in_multiplier(u, &mr)).collect();
            let am = (s.term)(m);
            for (w, rs) in weights.iter().zip(&rows) {
                let alpha = [int(w[0]), int(w[1])];
                let va = s.region.support(&alpha);
                let lower = &va - (&alpha[0] + &alpha[1]) / &mr;
                let middle = min_weight(&alpha, &members) / &mr;
                let upper = min_weight(&alpha, &am) / &mr;
                ensure(lower < middle && middle <= upper, || {
                    format!("case {case} ({}), α = {w:?}, m = {m}: {lower} < {middle} ≤ {upper} fails", s.label)
                })?;
                let r = &rs[m as usize - 1];
                ensure(r.holds && r.lower == lower && r.middle == middle && r.upper == upper, || {
                    format!("case {case}, α = {w:?}, m = {m}: library {r:?}")
                })?;
            }
        }
    }
    Ok("20 sequences × 2 weights × m ≤ 12".into())
}

fn c12_enlargement() -> Check {
    let mut rng = rng(12);
    let o = Options::default();
    for case in 0..10 {
        let gens = random_gens(&mut rng, 2, 4, true);
        let q = if rng.gen_bool(0.3) { vec![vec![0, 0]] } else { random_gens(&mut rng, 2, 2, false) };
        let (a, qi) = (ideal(&gens), ideal(&q));
        let seq = GradedMonomialSequence::powers_of(a.clone()).unwrap();
        let base = exact(&lct_q(&seq, &qi, &o).map_err(|e| e.to_string())?.value)?;
        let oracle_base = PointRegion::from_integers(&gens).arn_q(&q).recip();
        ensure(base == oracle_base, || format!("case {case}: lct^q = {base}, oracle {oracle_base}"))?;
        // Least p with m^p ⊆ a_1.
        let p0 = (1..)
            .find(|&p: &u32| (0..=p).all(|i| gens.iter().any(|g| g[0] <= i && g[1] <= p - i)))
            .unwrap();
        let mut trace = Vec::new();
        for p in 1..=p0 + 2 {
            let c = exact(&lct_q(&enlarge(seq.clone(), p).unwrap(), &qi, &o).map_err(|e| e.to_string())?.value)?;
            let mut pts = gens.clone();
            pts.push(vec![p, 0]);
            pts.push(vec![0, p]);
            let oracle = PointRegion::from_integers(&pts).arn_q(&q).recip();
            ensure(c == oracle, || format!("case {case}: lct^q(c•({p})) = {c}, oracle {oracle}"))?;
            trace.push(c);
        }
        ensure(trace.windows(2).all(|w| w[0] >= w[1]), || format!("case {case}: trace {trace:?} increases"))?;
        ensure(trace[p0 as usize - 1..].iter().all(|c| *c == base), || format!("case {case}: trace {trace:?} does not settle at {base}"))?;

        let n: u32 = ceil(&(&base * int(p0 as i64))).try_into().unwrap();
        let r = enlarge_q(&qi, n.max(1)).unwrap();
        let (x, y) = (
            exact(&arn_ideal_q(&seq, &qi, &o).unwrap().value)?,
            exact(&arn_ideal_q(&seq, &r, &o).unwrap().value)?,
        );
        let oracle_r = PointRegion::from_integers(&gens).arn_q(&gens_of(&r));
        ensure(x == y && y == oracle_r, || format!("case {case}: Arn^q = {x}, Arn^(q+m^{n}) = {y}, oracle {oracle_r}"))?;
        let (cq, cr) = (computing_valuations_q(&seq, &qi, &o).unwrap(), computing_valuations_q(&seq, &r, &o).unwrap());
        ensure(cq == cr, || format!("case {case}: computing sets {cq:?} vs {cr:?}"))?;
    }
    Ok("10 m-primary sequences".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 12] = [
        ("lct and Arn of (x^2, y^3)", c1_cusp),
        ("jumping numbers of (xy) and m^2", c2_jumps),
        ("golden-ratio oracle region", c3_example8),
        ("subadditivity and monotonicity of J", c4_subadditivity),
        ("controlled growth", c5_growth),
        ("self-value of valuation ideals", c6_self_value),
        ("Skoda-type bound", c7_skoda),
        ("log discrepancy through refinements", c8_fans),
        ("blowup chain dynamics", c9_dynamics),
        ("exact simplex", c10_lp),
        ("sandwich inequalities", c11_sandwich),
        ("enlargement", c12_enlargement),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{ms} ms]", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{ms} ms]", k + 1);
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
