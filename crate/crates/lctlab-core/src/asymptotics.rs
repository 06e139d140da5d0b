//! Fekete-type limits, valuation-ideal sequences and enlargements.
//!
//! Every limit here is a window statistic. The reported value bounds the true
//! limit from one side and comes with the trace that produced it.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::multiplier::{arn_ideal_q, chi_ratio, Options};
use crate::newton::{GradedMonomialSequence, MonomialIdeal, MonomialValuation, Value};
use crate::ratlp::{Extended, Rational};

/// `α_1, …, α_{m_max}` with values in `[0, +∞]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SubadditiveScalarSequence {
    terms: Vec<Extended>,
}

impl SubadditiveScalarSequence {
    pub fn new(terms: Vec<Extended>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::invalid("scalar sequence needs a nonempty window"));
        }
        if terms.iter().any(|t| matches!(t, Extended::Finite(r) if r.is_negative())) {
            return Err(Error::invalid("scalar sequence values must be nonnegative"));
        }
        Ok(Self { terms })
    }

    /// Samples `m ↦ α_m` for `m = 1..=m_max`.
    pub fn from_fn(m_max: u32, mut f: impl FnMut(u32) -> Result<Extended>) -> Result<Self> {
        Self::new((1..=m_max).map(&mut f).collect::<Result<_>>()?)
    }

    /// `m ↦ v(a_m)`.
    pub fn valuation_of(v: &MonomialValuation, seq: &GradedMonomialSequence, m_max: u32) -> Result<Self> {
        let terms = seq.terms(m_max)?;
        Self::new(terms.iter().map(|a| v.eval_ideal(a)).collect::<Result<_>>()?)
    }

    pub fn window(&self) -> u32 {
        self.terms.len() as u32
    }

    pub fn terms(&self) -> &[Extended] {
        &self.terms
    }

    /// First pair `(p, q)` in the window with `α_{p+q} > α_p + α_q`.
    pub fn subadditivity_violation(&self) -> Option<(u32, u32)> {
        let n = self.terms.len();
        for p in 1..=n {
            for q in p..=n - p {
                let lhs = &self.terms[p + q - 1];
                if *lhs > self.terms[p - 1].clone() + self.terms[q - 1].clone() {
                    return Some((p as u32, q as u32));
                }
            }
        }
        None
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FeketeReport {
    /// `min_m α_m/m` over the window, an upper bound for the limit.
    pub inf: Extended,
    pub argmin: Option<u32>,
    /// `α_m/m` for `m = 1..=m_max`.
    pub trace: Vec<Extended>,
    pub window: u32,
}

/// `lim α_m/m = inf α_m/m` for a subadditive sequence, estimated on the
/// window after checking subadditivity on every pair inside it.
pub fn fekete_limit(seq: &SubadditiveScalarSequence) -> Result<FeketeReport> {
    if let Some((p, q)) = seq.subadditivity_violation() {
        return Err(Error::Hypothesis(format!(
            "not subadditive: α_{} = {} > α_{p} + α_{q} = {}",
            p + q,
            seq.terms[(p + q - 1) as usize],
            seq.terms[p as usize - 1].clone() + seq.terms[q as usize - 1].clone()
        )));
    }
    let trace: Vec<Extended> = seq
        .terms
        .iter()
        .enumerate()
        .map(|(i, a)| a.scale(&Rational::from_integer((i as u64 + 1).into()).recip()))
        .collect();
    let mut inf = Extended::Infinite;
    let mut argmin = None;
    for (i, r) in trace.iter().enumerate() {
        if *r < inf {
            inf = r.clone();
            argmin = Some(i as u32 + 1);
        }
    }
    if argmin.is_none() {
        return Err(Error::Hypothesis("α_m = +∞ on the whole window".into()));
    }
    Ok(FeketeReport {
        inf,
        argmin,
        trace,
        window: seq.window(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScaledLimitReport {
    /// `max_t φ(t)/t` over the grid, a lower bound for the limit.
    pub sup: Rational,
    pub argmax: Rational,
    /// `(t, φ(t)/t)` in grid order.
    pub trace: Vec<(Rational, Rational)>,
    /// Whether `φ(t)/t` is nondecreasing along every doubling chain in the grid.
    pub doubling_monotone: bool,
}

/// `lim φ(t)/t = sup φ(t)/t` for increasing `φ` with `φ(mt) ≥ m·φ(t)`, both
/// hypotheses checked on the sampled grid.
pub fn superadditive_scaled_limit(
    mut phi: impl FnMut(&Rational) -> Result<Rational>,
    grid: &[Rational],
) -> Result<ScaledLimitReport> {
    if grid.is_empty() {
        return Err(Error::invalid("empty grid"));
    }
    if grid.iter().any(|t| !t.is_positive()) {
        return Err(Error::invalid("grid points must be positive"));
    }
    let mut ts = grid.to_vec();
    ts.sort();
    ts.dedup();
    let values: Vec<Rational> = ts.iter().map(&mut phi).collect::<Result<_>>()?;
    for i in 1..ts.len() {
        if values[i] < values[i - 1] {
            return Err(Error::Hypothesis(format!(
                "φ not increasing: φ({}) = {} > φ({}) = {}",
                ts[i - 1],
                values[i - 1],
                ts[i],
                values[i]
            )));
        }
    }
    let index = |t: &Rational| ts.binary_search(t).ok();
    let mut doubling_monotone = true;
    for (i, t) in ts.iter().enumerate() {
        for j in i + 1..ts.len() {
            let ratio = &ts[j] / t;
            if !ratio.is_integer() {
                continue;
            }
            if values[j] < &ratio * &values[i] {
                return Err(Error::Hypothesis(format!(
                    "φ({}) = {} < {} · φ({t}) = {}",
                    ts[j],
                    values[j],
                    ratio,
                    &ratio * &values[i]
                )));
            }
        }
        let doubled = t * Rational::from_integer(2.into());
        if let Some(j) = index(&doubled) {
            doubling_monotone &= &values[j] / &doubled >= &values[i] / t;
        }
    }
    let trace: Vec<(Rational, Rational)> = ts.iter().zip(&values).map(|(t, v)| (t.clone(), v / t)).collect();
    let (argmax, sup) = trace
        .iter()
        .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
        .cloned()
        .expect("nonempty grid");
    Ok(ScaledLimitReport {
        sup,
        argmax,
        trace,
        doubling_monotone,
    })
}

/// `a_m(val_α) = (x^u : ⟨α, u⟩ ≥ m)`.
pub fn valuation_ideal_sequence(alpha: Vec<Rational>) -> Result<GradedMonomialSequence> {
    GradedMonomialSequence::valuation_ideals(alpha)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SelfComputeReport {
    /// `α / min α`, so that `val(m) = 1`.
    pub alpha: Vec<Rational>,
    /// `v(a'•)/(A(v) + v(q))` for the normalised valuation.
    pub ratio: Rational,
    /// `Arn^q(a'•)`.
    pub arn: Rational,
    pub computes: bool,
}

/// Whether `val_α` computes `Arn^q` of its own valuation-ideal sequence.
pub fn self_compute_check(alpha: &[Rational], q: &MonomialIdeal) -> Result<SelfComputeReport> {
    let min = alpha
        .iter()
        .min()
        .ok_or_else(|| Error::invalid("empty weight vector"))?
        .clone();
    if !min.is_positive() {
        return Err(Error::invalid("self-compute check needs all weights positive"));
    }
    let normalized: Vec<Rational> = alpha.iter().map(|a| a / &min).collect();
    let seq = valuation_ideal_sequence(normalized.clone())?;
    let v = MonomialValuation::new(normalized.clone())?;
    let opts = Options::default();
    let exact = |x: Value| {
        x.exact()
            .cloned()
            .ok_or_else(|| Error::Computation("valuation-ideal sequences have exact values".into()))
    };
    let ratio = exact(chi_ratio(&seq, q, &v, &opts)?.value)?;
    let arn = exact(arn_ideal_q(&seq, q, &opts)?.value)?;
    Ok(SelfComputeReport {
        computes: ratio == arn,
        alpha: normalized,
        ratio,
        arn,
    })
}

/// The enlarged sequence `c_j = Σ_{i ≤ j} a_i·m^{p(j−i)}`.
pub fn enlarge(seq: GradedMonomialSequence, p: u32) -> Result<GradedMonomialSequence> {
    GradedMonomialSequence::enlarged(seq, p)
}

/// `c_1, …, c_window`.
pub fn enlarged_terms(seq: &GradedMonomialSequence, p: u32, window: u32) -> Result<Vec<MonomialIdeal>> {
    enlarge(seq.clone(), p)?.terms(window)
}

/// `q + m^N`.
pub fn enlarge_q(q: &MonomialIdeal, n: u32) -> Result<MonomialIdeal> {
    if n == 0 {
        return Err(Error::invalid("N must be positive"));
    }
    q.sum(&MonomialIdeal::maximal_power(q.nvars(), n))
}

/// `lct^q(c•(p))` for `p = 1..=p_max`, to observe stabilisation.
pub fn enlargement_lct_trace(seq: &GradedMonomialSequence, q: &MonomialIdeal, p_max: u32, opts: &Options) -> Result<Vec<Value>> {
    (1..=p_max)
        .map(|p| {
            let c = enlarge(seq.clone(), p)?;
            Ok(crate::multiplier::lct_q(&c, q, opts)?.value)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlp::{ceil, int, rat};

    fn fin(k: i64) -> Extended {
        Extended::Finite(int(k))
    }

    #[test]
    fn fekete_examples() {
        let s = SubadditiveScalarSequence::from_fn(20, |m| Ok(fin(m as i64 + 1))).unwrap();
        let r = fekete_limit(&s).unwrap();
        assert_eq!(r.inf, Extended::Finite(rat(21, 20)));
        assert_eq!(r.argmin, Some(20));
        assert!(r.trace.windows(2).all(|w| w[1] < w[0]));

        let pi = Rational::from_float(std::f64::consts::PI).unwrap();
        let s = SubadditiveScalarSequence::from_fn(200, |m| Ok(Extended::Finite(ceil(&(&pi * int(m as i64))).into()))).unwrap();
        let r = fekete_limit(&s).unwrap();
        let gap = crate::ratlp::to_f64(r.inf.finite().unwrap()) - std::f64::consts::PI;
        assert!((0.0..0.01).contains(&gap));

        let bad = SubadditiveScalarSequence::new(vec![fin(1), fin(3)]).unwrap();
        let err = fekete_limit(&bad).unwrap_err().to_string();
        assert!(err.contains("α_1"), "{err}");
    }

    #[test]
    fn fekete_with_infinite_terms() {
        let s = SubadditiveScalarSequence::new(vec![Extended::Infinite, fin(3), Extended::Infinite, fin(6)]).unwrap();
        assert_eq!(fekete_limit(&s).unwrap().inf, Extended::Finite(rat(3, 2)));
        let none = SubadditiveScalarSequence::new(vec![Extended::Infinite; 3]).unwrap();
        assert!(fekete_limit(&none).is_err());
    }

    #[test]
    fn scaled_limit_examples() {
        let grid: Vec<Rational> = (1..=40).map(|k| rat(k, 4)).collect();
        let r = superadditive_scaled_limit(|t| Ok(t.clone()), &grid).unwrap();
        assert_eq!(r.sup, int(1));
        let r = superadditive_scaled_limit(|t| Ok(Rational::from_integer(t.floor().to_integer())), &grid).unwrap();
        assert_eq!(r.sup, int(1));
        assert!(superadditive_scaled_limit(|t| Ok(-t.clone()), &grid).is_err());
    }

    #[test]
    fn valuation_ideals() {
        let s = valuation_ideal_sequence(vec![int(1), int(1)]).unwrap();
        assert_eq!(s.term(2).unwrap(), MonomialIdeal::maximal_power(2, 2));
        assert!(valuation_ideal_sequence(vec![int(1), int(0)]).is_err());
    }

    #[test]
    fn self_compute_examples() {
        let unit = MonomialIdeal::unit(2);
        let r = self_compute_check(&[int(1), int(1)], &unit).unwrap();
        assert_eq!((r.ratio.clone(), r.computes), (rat(1, 2), true));
        let r = self_compute_check(&[int(3), int(2)], &unit).unwrap();
        assert_eq!(r.alpha, vec![rat(3, 2), int(1)]);
        assert_eq!((r.ratio.clone(), r.arn.clone()), (rat(2, 5), rat(2, 5)));
        let x = MonomialIdeal::from_exponents(2, &[&[1, 0]]).unwrap();
        let r = self_compute_check(&[int(1), int(1)], &x).unwrap();
        assert_eq!((r.ratio, r.computes), (rat(1, 3), true));
    }

    #[test]
    fn enlargement_examples() {
        let base = GradedMonomialSequence::powers_of(MonomialIdeal::from_exponents(2, &[&[1, 0]]).unwrap()).unwrap();
        let c = enlarged_terms(&base, 2, 1).unwrap();
        assert_eq!(c[0], MonomialIdeal::from_exponents(2, &[&[1, 0], &[0, 2]]).unwrap());
        let m2 = GradedMonomialSequence::powers_of(MonomialIdeal::maximal_power(2, 2)).unwrap();
        assert_eq!(enlarged_terms(&m2, 3, 5).unwrap(), m2.terms(5).unwrap());
        assert!(enlarge_q(&MonomialIdeal::unit(2), 4).unwrap().is_unit());
        assert!(enlarge_q(&MonomialIdeal::unit(2), 0).is_err());
    }
}
