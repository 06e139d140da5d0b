use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::{PuiseuxData, Polynomial2, Valuation2};
use crate::error::{check_dim, Error, Result};
use crate::multiplier::Options;
use crate::newton::{GradedMonomialSequence, MonomialIdeal, Precision};
use crate::ratlp::{Extended, Rational};

/// Where the first blowup centre sits on `E_0`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Tangent {
    /// A free point away from both axes: `y = x + … + θx^{β_n}`.
    #[default]
    Generic,
    /// On the strict transform of `{y = 0}`: `y = x^{β_1} + … + θx^{β_n}`.
    XAxis,
    /// On the strict transform of `{x = 0}`: `x = y^{β_1} + … + θy^{β_n}`.
    YAxis,
}

/// Log discrepancy `A` and multiplicity `b` (the order of the transverse
/// coordinate) of a prime divisor or germ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivisorRecord {
    pub log_discrepancy: Rational,
    pub multiplicity: Rational,
}

impl DivisorRecord {
    fn new(a: i64, b: i64) -> Self {
        Self {
            log_discrepancy: Rational::from_integer(a.into()),
            multiplicity: Rational::from_integer(b.into()),
        }
    }

    fn sum(&self, other: &Self) -> Self {
        Self {
            log_discrepancy: &self.log_discrepancy + &other.log_discrepancy,
            multiplicity: &self.multiplicity + &other.multiplicity,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlowupKind {
    /// Centre on one exceptional divisor only; the second record is the
    /// transverse germ `(1, 0)`.
    Free,
    /// Centre at the intersection of two divisors.
    Satellite,
}

/// One point blowup on the path realising a step `(r, s)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlowupRecord {
    pub kind: BlowupKind,
    /// Orders of `(z_n, w_n)` along the new divisor.
    pub weight: (u64, u64),
    pub divisor: DivisorRecord,
}

/// The adapted frame `(z_n, w_n)` at level `n` and the valuation `v_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainLevel {
    /// `E_n`, the divisor of `z_n`.
    pub exceptional: DivisorRecord,
    /// The germ `w_n = 0`.
    pub transverse: DivisorRecord,
    /// `b_n = r_0⋯r_{n−1}`.
    pub b: BigInt,
    /// `β_n`, with `β_0 = 1`.
    pub beta: Rational,
    /// `A(v_n) = A(E_n)/b_n = 1 + β_n`.
    pub log_discrepancy: Rational,
    /// Blowups from level `n − 1`; empty at level 0.
    pub blowups: Vec<BlowupRecord>,
}

/// A chain of toroidal blowups over the origin of the plane.
///
/// Level 0 is `E_0`, the exceptional divisor of the blowup of the origin,
/// with `A = 2, b = 1`. Step `(r_n, s_n)` blows up along the weight `(r_n, s_n)`
/// in `(z_n, w_n)`, giving `A(E_{n+1}) = r_n·A(E_n) + s_n` and `b_{n+1} = r_n·b_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkpChain {
    steps: Vec<(u64, u64)>,
    levels: Vec<ChainLevel>,
}

fn det(a: (u64, u64), b: (u64, u64)) -> i128 {
    a.0 as i128 * b.1 as i128 - a.1 as i128 * b.0 as i128
}

/// Stern–Brocot path from `(1, 0), (0, 1)` to `target`, with records
/// propagated by component sums.
fn toroidal_path(target: (u64, u64), lo: DivisorRecord, hi: DivisorRecord) -> Vec<BlowupRecord> {
    let (mut lo, mut hi) = (((1u64, 0u64), lo), ((0u64, 1u64), hi));
    let mut out = Vec::new();
    loop {
        let weight = (lo.0 .0 + hi.0 .0, lo.0 .1 + hi.0 .1);
        let divisor = lo.1.sum(&hi.1);
        let kind = if out.is_empty() { BlowupKind::Free } else { BlowupKind::Satellite };
        out.push(BlowupRecord {
            kind,
            weight,
            divisor: divisor.clone(),
        });
        if weight == target {
            return out;
        }
        if det(weight, target) > 0 {
            lo = (weight, divisor);
        } else {
            hi = (weight, divisor);
        }
    }
}

pub fn build_chain(steps: &[(u64, u64)]) -> Result<SkpChain> {
    for (j, &(r, s)) in steps.iter().enumerate() {
        if r < 2 || s < 1 {
            return Err(Error::invalid(format!("step {j}: need r ≥ 2 and s ≥ 1, got ({r}, {s})")));
        }
        if r.gcd(&s) != 1 {
            return Err(Error::invalid(format!("step {j}: gcd({r}, {s}) ≠ 1")));
        }
    }
    let mut levels = vec![ChainLevel {
        exceptional: DivisorRecord::new(2, 1),
        transverse: DivisorRecord::new(1, 0),
        b: BigInt::one(),
        beta: Rational::one(),
        log_discrepancy: Rational::from_integer(2.into()),
        blowups: Vec::new(),
    }];
    for &(r, s) in steps {
        let prev = levels.last().expect("level 0");
        let blowups = toroidal_path((r, s), prev.exceptional.clone(), prev.transverse.clone());
        let exceptional = blowups.last().expect("nonempty path").divisor.clone();
        let (rq, sq) = (Rational::from_integer(r.into()), Rational::from_integer(s.into()));
        // Linearity of A and b on the cone spanned by E_n and the germ.
        let linear = DivisorRecord {
            log_discrepancy: &rq * &prev.exceptional.log_discrepancy + &sq,
            multiplicity: &rq * &prev.exceptional.multiplicity,
        };
        if exceptional != linear {
            return Err(Error::Computation("blowup records disagree with the linear formula".into()));
        }
        let b = &prev.b * BigInt::from(r);
        let beta = &prev.beta + &sq / Rational::from_integer(b.clone());
        let log_discrepancy = &exceptional.log_discrepancy / Rational::from_integer(b.clone());
        if log_discrepancy != Rational::one() + &beta {
            return Err(Error::Computation("A(v_n) ≠ 1 + β_n".into()));
        }
        levels.push(ChainLevel {
            exceptional,
            transverse: DivisorRecord::new(1, 0),
            b,
            beta,
            log_discrepancy,
            blowups,
        });
    }
    Ok(SkpChain {
        steps: steps.to_vec(),
        levels,
    })
}

impl SkpChain {
    pub fn steps(&self) -> &[(u64, u64)] {
        &self.steps
    }

    pub fn depth(&self) -> usize {
        self.steps.len()
    }

    pub fn levels(&self) -> &[ChainLevel] {
        &self.levels
    }

    pub fn level(&self, n: usize) -> Result<&ChainLevel> {
        self.levels
            .get(n)
            .ok_or_else(|| Error::invalid(format!("level {n} outside 0..={}", self.depth())))
    }

    /// Weights of `v_n` on `(z_{n−1}, w_{n−1})`, namely `(r, s)/b_n`.
    pub fn local_weights(&self, n: usize) -> Result<[Rational; 2]> {
        if n == 0 {
            return Err(Error::invalid("v_0 is the order at the origin; it has no local frame below it"));
        }
        let level = self.level(n)?;
        let (r, s) = self.steps[n - 1];
        let b = Rational::from_integer(level.b.clone());
        Ok([Rational::from_integer(r.into()) / &b, Rational::from_integer(s.into()) / b])
    }

    /// `v_n` as a Puiseux valuation with unit coefficients.
    pub fn valuation(&self, n: usize, tangent: Tangent) -> Result<Valuation2> {
        self.level(n)?;
        let betas = || self.levels[1..].iter().map(|l| l.beta.clone());
        let (exponents, level): (Vec<Rational>, usize) = match tangent {
            Tangent::Generic => (std::iter::once(Rational::one()).chain(betas()).collect(), n + 1),
            _ if n == 0 => (vec![Rational::one()], 1),
            _ => (betas().collect(), n),
        };
        Ok(Valuation2::Puiseux {
            data: PuiseuxData::with_unit_coefficients(exponents)?,
            level,
            swapped: tangent == Tangent::YAxis,
        })
    }
}

/// Coordinates against which local weights are read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Frame {
    /// `(x, y)`, both axes with `A = 1`.
    Plane,
    /// `(z_n, w_n)` with `A(E_n)` and `A = 1`.
    Level(usize),
}

/// `A = a·A(D_1) + b·A(D_2)` for weights `(a, b)` on the frame divisors.
pub fn log_discrepancy(chain: &SkpChain, frame: Frame, alpha: &[Rational]) -> Result<Rational> {
    check_dim(2, alpha.len())?;
    let (a1, a2) = match frame {
        Frame::Plane => (Rational::one(), Rational::one()),
        Frame::Level(n) => {
            let l = chain.level(n)?;
            (l.exceptional.log_discrepancy.clone(), l.transverse.log_discrepancy.clone())
        }
    };
    Ok(&alpha[0] * a1 + &alpha[1] * a2)
}

/// The ideal `q` in `χ(v) = v(a•)/(A(v) + v(q))`.
#[derive(Clone, Debug, PartialEq)]
pub enum ChiTarget {
    Ideal(MonomialIdeal),
    Principal(Polynomial2),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChiRow {
    pub n: usize,
    pub value_on_sequence: Rational,
    pub log_discrepancy: Rational,
    pub value_on_q: Rational,
    pub chi: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChiTrace {
    pub rows: Vec<ChiRow>,
    /// Least `n_0` with `χ(v_n) > χ(v_{n+1})` for `n_0 ≤ n < n_max`.
    pub n0_observed: usize,
    /// Least `n` with `2^n > A(v_0) + v_0(q)`.
    pub n0_bound: usize,
    /// `v_n(q)` nondecreasing in `n`.
    pub q_monotone: bool,
    pub precision: Precision,
}

impl ChiTrace {
    pub fn strictly_decreasing_from(&self, n0: usize) -> bool {
        self.rows.iter().skip(n0).zip(self.rows.iter().skip(n0 + 1)).all(|(a, b)| a.chi > b.chi)
    }
}

/// `χ(v_n)` for `n = 0..=n_max`, exact throughout.
pub fn chi_trace(chain: &SkpChain, tangent: Tangent, seq: &GradedMonomialSequence, q: &ChiTarget, n_max: usize, opts: &Options) -> Result<ChiTrace> {
    check_dim(2, seq.nvars())?;
    if n_max > chain.depth() {
        return Err(Error::invalid(format!("n_max = {n_max} exceeds chain depth {}", chain.depth())));
    }
    let region = seq.limit_region(opts.window)?;
    let poly = region
        .value
        .polyhedron()
        .ok_or_else(|| Error::Unsupported("χ traces need a polyhedral limit region".into()))?;
    match q {
        ChiTarget::Ideal(i) if i.is_zero() => return Err(Error::ZeroIdeal("χ relative to the zero ideal".into())),
        ChiTarget::Ideal(i) => check_dim(2, i.nvars())?,
        ChiTarget::Principal(f) if f.is_zero() => return Err(Error::ZeroIdeal("χ relative to the zero polynomial".into())),
        ChiTarget::Principal(_) => {}
    }
    let mut rows = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let v = chain.valuation(n, tangent)?;
        let w = v.retraction()?;
        let value_on_sequence = poly.support_value(w.alpha())?;
        let value_on_q = match q {
            ChiTarget::Ideal(i) => v.eval_ideal(i)?,
            ChiTarget::Principal(f) => v.eval(f)?,
        };
        let Extended::Finite(value_on_q) = value_on_q else {
            return Err(Error::Computation("finite valuation took value ∞ on a nonzero target".into()));
        };
        let log_discrepancy = chain.levels[n].log_discrepancy.clone();
        let chi = &value_on_sequence / (&log_discrepancy + &value_on_q);
        rows.push(ChiRow {
            n,
            value_on_sequence,
            log_discrepancy,
            value_on_q,
            chi,
        });
    }
    let mut n0_observed = n_max;
    while n0_observed > 0 && rows[n0_observed - 1].chi > rows[n0_observed].chi {
        n0_observed -= 1;
    }
    let bound = &rows[0].log_discrepancy + &rows[0].value_on_q;
    let mut n0_bound = 0;
    while Rational::from_integer(BigInt::one() << n0_bound) <= bound {
        n0_bound += 1;
    }
    let q_monotone = rows.windows(2).all(|w| w[0].value_on_q <= w[1].value_on_q);
    Ok(ChiTrace {
        rows,
        n0_observed,
        n0_bound,
        q_monotone,
        precision: region.precision,
    })
}
