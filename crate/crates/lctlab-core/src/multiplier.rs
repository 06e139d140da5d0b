//! Howald multiplier ideals, thresholds relative to an ideal `q`, jumping
//! numbers, computing valuations and the asymptotic multiplier system.
//!
//! For a sequence with limit region `P`, `x^u ∈ J(a•^λ)` exactly when
//! `u + e` lies in the interior of `λ·P`. The ray `t·(u + e)` enters `P` at
//! `t*_u = Arn^{(x^u)}(a•)`, so `x^u` drops out of the multiplier ideal at
//! `λ_u = 1/t*_u`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{check_dim, Error, Result};
use crate::newton::{
    minimal_generators, oracle_ray_entry, ExponentVector, GradedMonomialSequence, MonomialIdeal,
    MonomialValuation, NewtonRegion, Polyhedron, Precision, RegionOracle, Tagged, Value,
};
use crate::ratlp::{ceil, dot, to_f64, Extended, Rational};

/// Window used for table sequences and tolerance used for oracle regions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Options {
    pub window: u32,
    pub tolerance: f64,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            window: 64,
            tolerance: 1e-12,
        }
    }
}

fn limit(seq: &GradedMonomialSequence, opts: &Options) -> Result<Tagged<NewtonRegion>> {
    seq.limit_region(opts.window)
}

fn exact_limit(seq: &GradedMonomialSequence, opts: &Options) -> Result<Tagged<Polyhedron>> {
    let region = limit(seq, opts)?;
    match region.value {
        NewtonRegion::Polyhedral(p) => Ok(Tagged::new(p, region.precision)),
        NewtonRegion::Oracle(o) => Err(Error::Unsupported(format!(
            "operation needs a polyhedral limit region, got oracle {}",
            o.name()
        ))),
    }
}

/// `J(a•^λ)`: minimal `u` with `u + e ∈ Int(λ·P(a•))`.
pub fn multiplier_ideal(seq: &GradedMonomialSequence, lambda: &Rational, opts: &Options) -> Result<Tagged<MonomialIdeal>> {
    if lambda.is_negative() {
        return Err(Error::invalid("multiplier ideal needs λ ≥ 0"));
    }
    let region = limit(seq, opts)?;
    let ideal = region.value.lattice_points(lambda, true)?;
    Ok(Tagged::new(ideal, region.precision))
}

/// `λ_u = min_k ⟨a_k, u + e⟩`, the threshold at which `x^u` leaves the
/// multiplier ideal; `+∞` for the orthant.
pub fn leaving_threshold(p: &Polyhedron, u: &ExponentVector) -> Extended {
    p.facets()
        .iter()
        .map(|a| dot(a, &u.shifted()))
        .min()
        .map_or(Extended::Infinite, Extended::Finite)
}

/// `Arn^{(x^u)}(a•) = t*_u`, by the ray-entry LP for polyhedral regions and
/// by bisection against the membership oracle otherwise.
pub fn arn_monomial(seq: &GradedMonomialSequence, u: &ExponentVector, opts: &Options) -> Result<Tagged<Value>> {
    check_dim(seq.nvars(), u.dim())?;
    let region = limit(seq, opts)?;
    let w = u.shifted();
    match &region.value {
        NewtonRegion::Polyhedral(p) => {
            let (t, _) = p.ray_entry_lp(&w)?;
            Ok(Tagged::new(Value::Exact(t), region.precision))
        }
        NewtonRegion::Oracle(o) => {
            let (lo, hi) = oracle_ray_entry(o.as_ref(), &w, opts.tolerance)?;
            let value = (to_f64(&lo) + to_f64(&hi)) / 2.0;
            let slack = o.tolerance().max(opts.tolerance);
            Ok(Tagged::new(
                Value::Approx {
                    value,
                    lo: to_f64(&lo) - slack,
                    hi: to_f64(&hi) + slack,
                },
                region.precision.combine(Precision::Approximate { tolerance: opts.tolerance }),
            ))
        }
    }
}

fn value_max(a: Value, b: Value) -> Value {
    match (&a, &b) {
        (Value::Exact(x), Value::Exact(y)) => {
            if x >= y {
                a
            } else {
                b
            }
        }
        (Value::Infinite, _) | (_, Value::Infinite) => Value::Infinite,
        _ => {
            if a.to_f64() >= b.to_f64() {
                a
            } else {
                b
            }
        }
    }
}

/// `Arn^q(a•) = max_{x^u ∈ gens(q)} Arn^{(x^u)}(a•)`.
pub fn arn_ideal_q(seq: &GradedMonomialSequence, q: &MonomialIdeal, opts: &Options) -> Result<Tagged<Value>> {
    check_dim(seq.nvars(), q.nvars())?;
    if q.is_zero() {
        return Err(Error::ZeroIdeal("Arnold multiplicity relative to the zero ideal".into()));
    }
    let mut best: Option<Tagged<Value>> = None;
    for u in q.generators() {
        let a = arn_monomial(seq, u, opts)?;
        best = Some(match best {
            None => a,
            Some(b) => Tagged::new(value_max(b.value, a.value), b.precision.combine(a.precision)),
        });
    }
    Ok(best.expect("nonzero ideal has generators"))
}

/// `lct^q(a•) = 1/Arn^q(a•)`.
pub fn lct_q(seq: &GradedMonomialSequence, q: &MonomialIdeal, opts: &Options) -> Result<Tagged<Value>> {
    Ok(arn_ideal_q(seq, q, opts)?.map(|v| v.recip()))
}

/// `Arn^q(a)` of a single ideal, i.e. of its sequence of powers.
pub fn arn_of_ideal(a: &MonomialIdeal, q: &MonomialIdeal) -> Result<Rational> {
    let seq = GradedMonomialSequence::powers_of(a.clone())?;
    let v = arn_ideal_q(&seq, q, &Options::default())?;
    Ok(v.value.exact().cloned().expect("polyhedral regions give exact values"))
}

/// The monomial ideal generated by the terms of a polynomial.
pub fn monomialize_q(nvars: usize, support: Vec<ExponentVector>) -> Result<MonomialIdeal> {
    if support.is_empty() {
        return Err(Error::invalid("polynomial with empty support"));
    }
    minimal_generators(nvars, support)
}

/// Valuations computing an Arnold multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub enum ComputingSet {
    /// `Arn = 0`: every valuation computes it.
    All,
    /// Primitive integer directions generating the normal cone.
    Exact(Vec<MonomialValuation>),
    /// Numerical directions for oracle regions, normalised to sum 1.
    Approximate { directions: Vec<Vec<f64>>, tolerance: f64 },
}

/// Scales a nonnegative rational vector to a primitive integer vector.
pub fn primitive_direction(a: &[Rational]) -> Vec<Rational> {
    let l = a.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = a.iter().map(|r| (r * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter()
        .map(|x| Rational::from_integer(if g.is_zero() { x } else { x / &g }))
        .collect()
}

/// Outer normals at the point where `t·(u + e)` meets `P(a•)`.
pub fn computing_valuations(seq: &GradedMonomialSequence, u: &ExponentVector, opts: &Options) -> Result<ComputingSet> {
    check_dim(seq.nvars(), u.dim())?;
    let region = limit(seq, opts)?;
    match &region.value {
        NewtonRegion::Polyhedral(p) => {
            let w = u.shifted();
            let t = p.ray_entry(&w)?;
            if t.is_zero() {
                return Ok(ComputingSet::All);
            }
            let x: Vec<Rational> = w.iter().map(|c| c * &t).collect();
            let set: BTreeSet<Vec<Rational>> = p.active_facets(&x).into_iter().map(|a| primitive_direction(a)).collect();
            let vals = set
                .into_iter()
                .map(MonomialValuation::new)
                .collect::<Result<Vec<_>>>()?;
            Ok(ComputingSet::Exact(vals))
        }
        NewtonRegion::Oracle(o) => {
            if o.dim() != 2 {
                return Err(Error::Unsupported("oracle computing valuations are planar only".into()));
            }
            let dir = oracle_computing_direction(o.as_ref(), u);
            Ok(ComputingSet::Approximate {
                directions: vec![dir],
                tolerance: 1e-8,
            })
        }
    }
}

/// Golden-section maximisation of `support(α)/⟨α, u + e⟩` over the segment
/// `α = (s, 1 − s)`. The ratio is quasi-concave, so the search is unimodal.
fn oracle_computing_direction(o: &dyn RegionOracle, u: &ExponentVector) -> Vec<f64> {
    let w: Vec<f64> = u.shifted().iter().map(to_f64).collect();
    let ratio = |s: f64| -> f64 {
        let alpha = [s, 1.0 - s];
        let exact: Vec<Rational> = alpha
            .iter()
            .map(|&c| Rational::from_float(c.max(0.0)).unwrap_or_else(Rational::zero))
            .collect();
        o.support(&exact) / (alpha[0] * w[0] + alpha[1] * w[1])
    };
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (0.0f64, 1.0f64);
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    let (mut fc, mut fd) = (ratio(c), ratio(d));
    while b - a > 1e-13 {
        if fc < fd {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = ratio(d);
        } else {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = ratio(c);
        }
    }
    let s = (a + b) / 2.0;
    vec![s, 1.0 - s]
}

/// Union of the computing sets of the generators of `q` attaining `Arn^q`.
pub fn computing_valuations_q(seq: &GradedMonomialSequence, q: &MonomialIdeal, opts: &Options) -> Result<ComputingSet> {
    let p = exact_limit(seq, opts)?.value;
    if q.is_zero() {
        return Err(Error::ZeroIdeal("computing valuations relative to the zero ideal".into()));
    }
    let entries: Vec<(Rational, &ExponentVector)> = q
        .generators()
        .iter()
        .map(|u| p.ray_entry(&u.shifted()).map(|t| (t, u)))
        .collect::<Result<_>>()?;
    let best = entries.iter().map(|(t, _)| t.clone()).max().expect("generators");
    if best.is_zero() {
        return Ok(ComputingSet::All);
    }
    let mut all = BTreeSet::new();
    for (t, u) in &entries {
        if *t == best {
            if let ComputingSet::Exact(vs) = computing_valuations(seq, u, opts)? {
                all.extend(vs);
            }
        }
    }
    Ok(ComputingSet::Exact(all.into_iter().collect()))
}

/// `χ_q(v) = v(a•)/(A(v) + v(q))`.
pub fn chi_ratio(seq: &GradedMonomialSequence, q: &MonomialIdeal, v: &MonomialValuation, opts: &Options) -> Result<Tagged<Value>> {
    let va = v.eval_sequence(seq, opts.window)?;
    let vq = v.eval_ideal(q)?;
    let denom = match vq {
        Extended::Finite(r) => r + v.log_discrepancy(),
        Extended::Infinite => return Ok(Tagged::new(Value::Exact(Rational::zero()), va.precision)),
    };
    if denom.is_zero() {
        return Err(Error::invalid("χ undefined for the trivial valuation"));
    }
    let value = match va.value {
        Value::Exact(r) => Value::Exact(r / denom),
        Value::Infinite => Value::Infinite,
        Value::Approx { value, lo, hi } => {
            let d = to_f64(&denom);
            Value::Approx {
                value: value / d,
                lo: lo / d,
                hi: hi / d,
            }
        }
    };
    Ok(Tagged::new(value, va.precision))
}

/// Jumping numbers up to `λ_max` and the ideals between them.
#[derive(Clone, Debug, PartialEq)]
pub struct JumpReport {
    pub jumps: Vec<Rational>,
    /// `J(a•^λ)` on `[0, j_1)`, `[j_1, j_2)`, …, `[j_k, ∞)`.
    pub ideals_between: Vec<MonomialIdeal>,
    pub precision: Precision,
}

/// Scans `λ_u` over the box `[0, ⌈λ_max·M_i⌉]`; every threshold not above
/// `λ_max` is attained inside it.
pub fn jumping_numbers(seq: &GradedMonomialSequence, lambda_max: &Rational, opts: &Options) -> Result<JumpReport> {
    if lambda_max.is_negative() {
        return Err(Error::invalid("λ_max must be nonnegative"));
    }
    let region = limit(seq, opts)?;
    let mut jumps: BTreeSet<Rational> = BTreeSet::new();
    let n = seq.nvars();
    let precision;
    match &region.value {
        NewtonRegion::Polyhedral(p) => {
            precision = region.precision;
            let bounds: Vec<u32> = (0..n)
                .map(|i| {
                    let m = p.vertices().iter().map(|v| v[i].clone()).max().expect("vertex");
                    ceil(&(m * lambda_max)).to_u32().expect("box fits")
                })
                .collect();
            for_each_in_box(&bounds, |u| {
                if let Extended::Finite(l) = leaving_threshold(p, &ExponentVector::new(u.to_vec()).expect("nonempty")) {
                    if l <= *lambda_max {
                        jumps.insert(l);
                    }
                }
            });
        }
        NewtonRegion::Oracle(o) => {
            precision = region.precision.combine(Precision::Approximate { tolerance: opts.tolerance });
            let bounds = o
                .enumeration_box(lambda_max)
                .ok_or_else(|| Error::Unsupported(format!("oracle {} gives no enumeration box", o.name())))?;
            let mut failure = None;
            for_each_in_box(&bounds, |u| {
                let w = ExponentVector::new(u.to_vec()).expect("nonempty").shifted();
                match oracle_ray_entry(o.as_ref(), &w, opts.tolerance) {
                    Ok((lo, hi)) => {
                        let mid: Rational = (lo + hi) / Rational::from_integer(2.into());
                        if mid.is_positive() {
                            let l = mid.recip();
                            if l <= *lambda_max {
                                jumps.insert(l);
                            }
                        }
                    }
                    Err(e) => failure = Some(e),
                }
            });
            if let Some(e) = failure {
                return Err(e);
            }
            // Merge values closer than the tolerance.
            let mut merged: Vec<Rational> = Vec::new();
            for j in jumps {
                if merged.last().map_or(true, |last| to_f64(&(&j - last)) > 1e3 * opts.tolerance) {
                    merged.push(j);
                }
            }
            jumps = merged.into_iter().collect();
        }
    }
    let jumps: Vec<Rational> = jumps.into_iter().collect();
    let mut ideals_between = vec![multiplier_ideal(seq, &Rational::zero(), opts)?.value];
    for j in &jumps {
        ideals_between.push(multiplier_ideal(seq, j, opts)?.value);
    }
    Ok(JumpReport {
        jumps,
        ideals_between,
        precision,
    })
}

fn for_each_in_box(bounds: &[u32], mut f: impl FnMut(&[u32])) {
    let n = bounds.len();
    let mut u = vec![0u32; n];
    loop {
        f(&u);
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            if u[i] < bounds[i] {
                u[i] += 1;
                break;
            }
            u[i] = 0;
            i += 1;
        }
    }
}

/// Recomputes multiplier ideals just below, at, and between the reported
/// jumps. Returns a description of the first discrepancy.
pub fn verify_jumps(seq: &GradedMonomialSequence, report: &JumpReport, lambda_max: &Rational, opts: &Options) -> std::result::Result<(), String> {
    let j = |l: &Rational| multiplier_ideal(seq, l, opts).map(|t| t.value).map_err(|e| e.to_string());
    let mut marks = vec![Rational::zero()];
    marks.extend(report.jumps.iter().cloned());
    marks.push(lambda_max + Rational::one());
    let gap = marks
        .windows(2)
        .map(|w| &w[1] - &w[0])
        .filter(Rational::is_positive)
        .min()
        .unwrap_or_else(Rational::one);
    let delta = gap / Rational::from_integer(4.into());
    for (i, jump) in report.jumps.iter().enumerate() {
        let below = j(&(jump - &delta))?;
        let at = j(jump)?;
        let above = j(&(jump + &delta))?;
        if below == at {
            return Err(format!("no change at {jump}"));
        }
        if at != above {
            return Err(format!("ideal changes right after {jump}"));
        }
        if below != report.ideals_between[i] || at != report.ideals_between[i + 1] {
            return Err(format!("reported ideals disagree around {jump}"));
        }
        if !below.contains(&at).map_err(|e| e.to_string())? {
            return Err(format!("ideals not decreasing at {jump}"));
        }
    }
    // No change strictly between consecutive marks.
    for w in marks.windows(2) {
        if w[1] > *lambda_max && w[0] >= *lambda_max {
            break;
        }
        let hi = if w[1] > *lambda_max { lambda_max.clone() } else { w[1].clone() };
        let mid_lo = &w[0] + (&hi - &w[0]) / Rational::from_integer(3.into());
        let mid_hi = &w[0] + (&hi - &w[0]) * Rational::new(2.into(), 3.into());
        if hi > w[0] && j(&mid_lo)? != j(&mid_hi)? {
            return Err(format!("unreported jump in ({}, {hi})", w[0]));
        }
    }
    Ok(())
}

/// A subadditive system `b_{s+t} ⊆ b_s·b_t`.
#[derive(Clone, Debug)]
pub enum SubadditiveSystem {
    /// `b_t = J(a•^t)`.
    AsymptoticMultiplier(GradedMonomialSequence),
    Table(BTreeMap<Rational, MonomialIdeal>),
}

/// The asymptotic multiplier ideals of a sequence.
pub fn asymptotic_system(seq: GradedMonomialSequence) -> SubadditiveSystem {
    SubadditiveSystem::AsymptoticMultiplier(seq)
}

impl SubadditiveSystem {
    pub fn nvars(&self) -> Result<usize> {
        match self {
            SubadditiveSystem::AsymptoticMultiplier(s) => Ok(s.nvars()),
            SubadditiveSystem::Table(t) => t
                .values()
                .next()
                .map(MonomialIdeal::nvars)
                .ok_or_else(|| Error::invalid("empty subadditive table")),
        }
    }

    /// `b_t`; `b_0` is the unit ideal.
    pub fn sample(&self, t: &Rational, opts: &Options) -> Result<MonomialIdeal> {
        if t.is_negative() {
            return Err(Error::invalid("subadditive systems are indexed by t ≥ 0"));
        }
        match self {
            SubadditiveSystem::AsymptoticMultiplier(seq) => Ok(multiplier_ideal(seq, t, opts)?.value),
            SubadditiveSystem::Table(table) => {
                if t.is_zero() {
                    return Ok(MonomialIdeal::unit(self.nvars()?));
                }
                table
                    .get(t)
                    .cloned()
                    .ok_or_else(|| Error::invalid(format!("no sample at t = {t}")))
            }
        }
    }

    /// Pairs `(s, t)` from the grid with `b_{s+t} ⊄ b_s·b_t`, and pairs
    /// `s > t` with `b_s ⊄ b_t`.
    pub fn violations(&self, grid: &[Rational], opts: &Options) -> Result<Vec<(Rational, Rational)>> {
        let mut bad = Vec::new();
        for s in grid {
            for t in grid {
                let bs = self.sample(s, opts)?;
                let bt = self.sample(t, opts)?;
                let st = self.sample(&(s + t), opts)?;
                if !bs.product(&bt)?.contains(&st)? {
                    bad.push((s.clone(), t.clone()));
                }
                if s > t && !bt.contains(&bs)? {
                    bad.push((s.clone(), t.clone()));
                }
            }
        }
        Ok(bad)
    }
}

/// One row of [`controlled_growth_check`].
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthRow {
    pub t: Rational,
    /// `ord_E(b_t)/t`.
    pub lhs: Rational,
    /// `ord_E(b•) − A(ord_E)/t`.
    pub rhs: Rational,
    pub margin: Rational,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthReport {
    pub rows: Vec<GrowthRow>,
    /// `ord_E(b•)`, equal to `ord_E(a•)` for asymptotic systems.
    pub limit: Rational,
    pub log_discrepancy: Rational,
    pub precision: Precision,
}

impl GrowthReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }
}

/// Checks `ord_E(b_t)/t > ord_E(b•) − A(ord_E)/t` on a grid for the
/// divisorial valuation `ord_E = val_α` with integer `α`.
pub fn controlled_growth_check(sys: &SubadditiveSystem, alpha: &[Rational], grid: &[Rational], opts: &Options) -> Result<GrowthReport> {
    if alpha.iter().any(|a| !a.is_integer() || a.is_negative()) || alpha.iter().all(Zero::is_zero) {
        return Err(Error::invalid("controlled growth needs a nonzero nonnegative integer weight vector"));
    }
    let v = MonomialValuation::new(alpha.to_vec())?;
    check_dim(sys.nvars()?, v.dim())?;
    let a = v.log_discrepancy();
    let (limit, precision) = match sys {
        SubadditiveSystem::AsymptoticMultiplier(seq) => {
            let val = v.eval_sequence(seq, opts.window)?;
            let exact = val
                .value
                .exact()
                .cloned()
                .ok_or_else(|| Error::Unsupported("controlled growth needs an exact limit value".into()))?;
            (exact, val.precision)
        }
        SubadditiveSystem::Table(table) => {
            // sup_t v(b_t)/t estimates v(b•) from below.
            let mut best = Rational::zero();
            for (t, b) in table {
                if let (true, Extended::Finite(x)) = (t.is_positive(), v.eval_ideal(b)?) {
                    best = best.max(x / t);
                }
            }
            (best, Precision::InnerApproximation { window: table.len() as u32 })
        }
    };
    let mut rows = Vec::with_capacity(grid.len());
    for t in grid {
        if !t.is_positive() {
            return Err(Error::invalid("controlled growth grid must be positive"));
        }
        let b = sys.sample(t, opts)?;
        let vb = v.eval_ideal(&b)?.finite().cloned().expect("multiplier ideals are nonzero");
        let lhs = vb / t;
        let rhs = &limit - &a / t;
        let margin = &lhs - &rhs;
        rows.push(GrowthRow {
            t: t.clone(),
            holds: margin.is_positive(),
            lhs,
            rhs,
            margin,
        });
    }
    Ok(GrowthReport {
        rows,
        limit,
        log_discrepancy: a,
        precision,
    })
}

/// One `m` of the sandwich `v(a•) − A/m ≤ v(b_m)/m ≤ v(a_m)/m`, where the
/// middle inequality `v(a•) − A/m < v(b_m)/m` is strict for nontrivial `v`.
#[derive(Clone, Debug, PartialEq)]
pub struct SandwichRow {
    pub m: u32,
    pub lower: Rational,
    pub middle: Rational,
    pub upper: Rational,
    pub holds: bool,
}

pub fn sandwich_check(seq: &GradedMonomialSequence, v: &MonomialValuation, window: u32, opts: &Options) -> Result<Vec<SandwichRow>> {
    let val = v.eval_sequence(seq, opts.window)?;
    let va = val
        .value
        .exact()
        .cloned()
        .ok_or_else(|| Error::Unsupported("sandwich check needs an exact sequence value".into()))?;
    let a = v.log_discrepancy();
    let terms = seq.terms(window)?;
    let mut rows = Vec::new();
    for m in 1..=window {
        let mr = Rational::from_integer(m.into());
        let bm = multiplier_ideal(seq, &mr, opts)?.value;
        let middle = v.eval_ideal(&bm)?.finite().cloned().expect("nonzero") / &mr;
        let upper = match v.eval_ideal(&terms[m as usize - 1])? {
            Extended::Finite(x) => x / &mr,
            Extended::Infinite => {
                rows.push(SandwichRow {
                    m,
                    lower: &va - &a / &mr,
                    middle,
                    upper: Rational::zero(),
                    holds: true,
                });
                continue;
            }
        };
        let lower = &va - &a / &mr;
        let strict_ok = v.is_trivial() || lower < middle;
        let holds = lower <= middle && middle <= upper && strict_ok && va <= upper;
        rows.push(SandwichRow {
            m,
            lower,
            middle,
            upper,
            holds,
        });
    }
    Ok(rows)
}
