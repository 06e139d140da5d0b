//! Brute-force oracles shared by the integration tests.
//!
//! Nothing here calls into the polyhedral or valuation code of the library;
//! the regions are described by their generating points and every answer is
//! recomputed from scratch.

#![allow(dead_code)]

pub mod lp;

use std::collections::BTreeMap;

use lctlab_core::ratlp::{int, rat};
use lctlab_core::Rational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// `conv(points) + R^n_{≥0}`.
#[derive(Clone, Debug)]
pub struct PointRegion {
    pub points: Vec<Vec<Rational>>,
    /// `(α, h(α))` for every candidate normal with `h(α) > 0`.
    normals: Vec<(Vec<Rational>, Rational)>,
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn cross(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

impl PointRegion {
    pub fn new(points: Vec<Vec<Rational>>) -> Self {
        let mut r = Self { points, normals: Vec::new() };
        r.normals = r
            .candidate_normals()
            .into_iter()
            .filter_map(|a| {
                let h = r.support(&a);
                h.is_positive().then_some((a, h))
            })
            .collect();
        r
    }

    pub fn from_integers(points: &[Vec<u32>]) -> Self {
        Self::new(points.iter().map(|p| p.iter().map(|&c| int(c as i64)).collect()).collect())
    }

    pub fn dim(&self) -> usize {
        self.points[0].len()
    }

    /// `min_p ⟨α, p⟩`.
    pub fn support(&self, alpha: &[Rational]) -> Rational {
        self.points.iter().map(|p| dot(alpha, p)).min().expect("nonempty")
    }

    /// Nonnegative normals to every hyperplane spanned by point differences
    /// and coordinate directions: a superset of the facet normals.
    pub fn candidate_normals(&self) -> Vec<Vec<Rational>> {
        let n = self.dim();
        let mut dirs: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { int(1) } else { int(0) }).collect())
            .collect();
        for p in &self.points {
            for q in &self.points {
                if p < q {
                    dirs.push(p.iter().zip(q).map(|(a, b)| a - b).collect());
                }
            }
        }
        let mut out: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { int(1) } else { int(0) }).collect())
            .collect();
        let mut push = |mut v: Vec<Rational>| {
            if v.iter().all(Zero::is_zero) {
                return;
            }
            if v.iter().all(|c| !c.is_positive()) {
                v = v.into_iter().map(|c| -c).collect();
            }
            if v.iter().all(|c| !c.is_negative()) {
                out.push(v);
            }
        };
        match n {
            1 => {}
            2 => {
                for d in &dirs {
                    push(vec![d[1].clone(), -d[0].clone()]);
                }
            }
            3 => {
                for (i, a) in dirs.iter().enumerate() {
                    for b in &dirs[i + 1..] {
                        push(cross(a, b));
                    }
                }
            }
            _ => panic!("oracle supports dimension ≤ 3"),
        }
        out
    }

    /// `sup{t : w ∉ Int(t·P)} = min_α ⟨α, w⟩ / h(α)` over normals with `h > 0`;
    /// `None` when the region is the whole orthant.
    pub fn entry(&self, w: &[Rational]) -> Option<Rational> {
        self.normals.iter().map(|(a, h)| dot(a, w) / h).min()
    }

    /// `λ_u`: `x^u ∈ J(a•^λ)` exactly for `λ < λ_u`.
    pub fn lambda(&self, u: &[u32]) -> Option<Rational> {
        let w: Vec<Rational> = u.iter().map(|&c| int(c as i64 + 1)).collect();
        self.entry(&w)
    }

    /// `x^u ∈ J(a•^λ)` by Howald's criterion.
    pub fn in_multiplier(&self, u: &[u32], lambda: &Rational) -> bool {
        self.lambda(u).map_or(true, |l| *lambda < l)
    }

    /// `Arn^q = max_{u ∈ gens(q)} 1/λ_u`, with `1/∞ = 0`.
    pub fn arn_q(&self, q: &[Vec<u32>]) -> Rational {
        q.iter()
            .map(|u| self.lambda(u).map_or(Rational::zero(), |l| l.recip()))
            .max()
            .expect("q is nonzero")
    }

    /// The minimal exponents of `J(a•^λ)` inside `[0, b]^n`.
    pub fn multiplier_gens(&self, lambda: &Rational, bound: u32) -> Vec<Vec<u32>> {
        let members: Vec<Vec<u32>> = lattice_box(self.dim(), bound)
            .into_iter()
            .filter(|u| self.in_multiplier(u, lambda))
            .collect();
        minimal(members)
    }
}

pub fn lattice_box(n: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                (0..=bound).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out
}

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn minimal(mut points: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    points.sort();
    points.dedup();
    let keep: Vec<Vec<u32>> = points
        .iter()
        .filter(|p| !points.iter().any(|q| q != *p && divides(q, p)))
        .cloned()
        .collect();
    keep
}

/// `I ⊆ J` for monomial ideals given by generators.
pub fn ideal_contained(i: &[Vec<u32>], j: &[Vec<u32>]) -> bool {
    i.iter().all(|g| j.iter().any(|h| divides(h, g)))
}

pub fn ideal_product(i: &[Vec<u32>], j: &[Vec<u32>]) -> Vec<Vec<u32>> {
    minimal(
        i.iter()
            .flat_map(|a| j.iter().map(move |b| a.iter().zip(b).map(|(x, y)| x + y).collect()))
            .collect(),
    )
}

pub fn min_weight(alpha: &[Rational], gens: &[Vec<u32>]) -> Rational {
    gens.iter()
        .map(|g| g.iter().zip(alpha).map(|(&c, a)| a * int(c as i64)).sum::<Rational>())
        .min()
        .expect("nonzero ideal")
}

/// Random generators: up to `max_gens` of them, exponents in `0..=4`; with
/// `primary` every pure power is present.
pub fn random_gens(rng: &mut ChaCha8Rng, n: usize, max_gens: usize, primary: bool) -> Vec<Vec<u32>> {
    let mut gens: Vec<Vec<u32>> = Vec::new();
    if primary {
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = rng.gen_range(1..=4);
            gens.push(e);
        }
    }
    while gens.len() < max_gens.max(1) {
        let g: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=4)).collect();
        if g.iter().any(|&c| c > 0) {
            gens.push(g);
        }
        if !gens.is_empty() && rng.gen_bool(0.35) {
            break;
        }
    }
    minimal(gens)
}

/// Polynomials in `θ`, low degree first.
pub type ThetaPoly = Vec<Rational>;

fn theta_trim(p: &mut ThetaPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Series in `t` with `θ`-polynomial coefficients: `t`-exponent ↦ coefficient.
pub type Series = BTreeMap<u64, ThetaPoly>;

fn series_mul(a: &Series, b: &Series, cutoff: u64) -> Series {
    let mut out = Series::new();
    for (i, p) in a {
        for (j, q) in b {
            if i + j > cutoff {
                continue;
            }
            let e = out.entry(i + j).or_default();
            for (k, x) in p.iter().enumerate() {
                for (l, y) in q.iter().enumerate() {
                    if e.len() <= k + l {
                        e.resize(k + l + 1, Rational::zero());
                    }
                    e[k + l] += x * y;
                }
            }
        }
    }
    out.retain(|_, p| {
        theta_trim(p);
        !p.is_empty()
    });
    out
}

/// `ord_x f(x, Σ_{k<L} c_k x^{β_k} + θ x^{β_L})` with `θ` generic, by
/// substituting `x = t^N` for the common denominator `N` of the exponents.
/// Terms in `f` are `(i, j, c)` for `c·x^i·y^j`.
pub fn puiseux_oracle(exponents: &[Rational], coefficients: &[Rational], level: usize, f: &[(u32, u32, Rational)]) -> Option<Rational> {
    let betas = &exponents[..level];
    let n: num_bigint::BigInt = betas.iter().fold(num_bigint::BigInt::one(), |l, b| num_integer::lcm(l, b.denom().clone()));
    let n: u64 = n.try_into().expect("small denominators");
    let scaled: Vec<u64> = betas.iter().map(|b| (b * Rational::from_integer(n.into())).to_integer().try_into().unwrap()).collect();
    let degree = f.iter().map(|t| t.0 + t.1).max()? as u64;
    // Generous: the values seen in the tests stay far below this.
    let cutoff = 2 * degree * (scaled.last().unwrap() + n) + 1;
    let mut y = Series::new();
    for k in 0..level {
        let coeff = if k + 1 == level { vec![Rational::zero(), Rational::one()] } else { vec![coefficients[k].clone()] };
        y.insert(scaled[k], coeff);
    }
    let mut total = Series::new();
    for (i, j, c) in f {
        let mut term = Series::from([(*i as u64 * n, vec![c.clone()])]);
        for _ in 0..*j {
            term = series_mul(&term, &y, cutoff);
        }
        for (e, p) in term {
            let slot = total.entry(e).or_default();
            if slot.len() < p.len() {
                slot.resize(p.len(), Rational::zero());
            }
            for (k, x) in p.into_iter().enumerate() {
                slot[k] += x;
            }
        }
    }
    total.retain(|_, p| {
        theta_trim(p);
        !p.is_empty()
    });
    total.keys().next().map(|&e| rat(e as i64, n as i64))
}
