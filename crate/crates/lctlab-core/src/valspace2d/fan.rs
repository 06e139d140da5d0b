use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{check_dim, Error, Result};
use crate::ratlp::Rational;

/// A regular fan refining the positive quadrant.
///
/// Rays run counterclockwise from `(1, 0)` to `(0, 1)`; each ray carries the
/// log discrepancy of its toric divisor, accumulated by mediant sums from
/// `A(1, 0) = A(0, 1) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fan2D {
    rays: Vec<[u64; 2]>,
    log_discrepancies: Vec<u64>,
}

/// The cone of a fan containing a direction, with its coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Cone {
    /// Index of the first ray; the second is `index + 1`.
    pub index: usize,
    /// `α = c_0·u + c_1·u'`.
    pub coordinates: [Rational; 2],
}

fn det(a: [u64; 2], b: [u64; 2]) -> i128 {
    a[0] as i128 * b[1] as i128 - a[1] as i128 * b[0] as i128
}

fn det_q(a: &[Rational], b: &[Rational]) -> Rational {
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn as_rational(u: [u64; 2]) -> [Rational; 2] {
    [Rational::from_integer(u[0].into()), Rational::from_integer(u[1].into())]
}

impl Fan2D {
    pub fn standard() -> Self {
        Self {
            rays: vec![[1, 0], [0, 1]],
            log_discrepancies: vec![1, 1],
        }
    }

    pub fn rays(&self) -> &[[u64; 2]] {
        &self.rays
    }

    pub fn log_discrepancies(&self) -> &[u64] {
        &self.log_discrepancies
    }

    /// Determinants of consecutive rays.
    pub fn determinants(&self) -> Vec<i128> {
        self.rays.windows(2).map(|w| det(w[0], w[1])).collect()
    }

    pub fn is_regular(&self) -> bool {
        self.determinants().iter().all(|&d| d == 1)
    }

    /// Inserts a primitive direction by repeated mediant subdivision of the
    /// cone containing it.
    pub fn insert(&mut self, alpha: [u64; 2]) -> Result<()> {
        check_primitive(alpha)?;
        loop {
            if self.rays.contains(&alpha) {
                return Ok(());
            }
            let i = self
                .rays
                .windows(2)
                .position(|w| det(w[0], alpha) > 0 && det(alpha, w[1]) > 0)
                .expect("nonnegative direction lies in some cone");
            let (u, v) = (self.rays[i], self.rays[i + 1]);
            let m = [
                u[0].checked_add(v[0]).ok_or_else(overflow)?,
                u[1].checked_add(v[1]).ok_or_else(overflow)?,
            ];
            let a = self.log_discrepancies[i] + self.log_discrepancies[i + 1];
            self.rays.insert(i + 1, m);
            self.log_discrepancies.insert(i + 1, a);
        }
    }

    /// The cone containing `α ≥ 0` and the coordinates of `α` in it.
    pub fn cone_containing(&self, alpha: &[Rational]) -> Result<Cone> {
        check_dim(2, alpha.len())?;
        if alpha.iter().any(Signed::is_negative) || alpha.iter().all(Zero::is_zero) {
            return Err(Error::invalid("direction must be nonzero and nonnegative"));
        }
        for (index, w) in self.rays.windows(2).enumerate() {
            let (u, v) = (as_rational(w[0]), as_rational(w[1]));
            let d = det_q(&u, &v);
            let c0 = det_q(alpha, &v) / &d;
            let c1 = det_q(&u, alpha) / &d;
            if !c0.is_negative() && !c1.is_negative() {
                return Ok(Cone {
                    index,
                    coordinates: [c0, c1],
                });
            }
        }
        Err(Error::Computation("fan does not cover the quadrant".into()))
    }

    /// `A(val_α)` by linearity on the cone containing `α`.
    pub fn log_discrepancy(&self, alpha: &[Rational]) -> Result<Rational> {
        let cone = self.cone_containing(alpha)?;
        let a = |k: usize| Rational::from_integer(self.log_discrepancies[cone.index + k].into());
        Ok(&cone.coordinates[0] * a(0) + &cone.coordinates[1] * a(1))
    }
}

fn overflow() -> Error {
    Error::Computation("ray coordinates overflow".into())
}

fn check_primitive(alpha: [u64; 2]) -> Result<()> {
    if alpha == [0, 0] {
        return Err(Error::invalid("zero direction"));
    }
    if alpha[0].gcd(&alpha[1]) != 1 {
        return Err(Error::invalid(format!("direction ({}, {}) is not primitive", alpha[0], alpha[1])));
    }
    Ok(())
}

/// The Stern–Brocot refinement of the standard fan containing `α`.
pub fn fan_refine_2d(alpha: [u64; 2]) -> Result<Fan2D> {
    let mut fan = Fan2D::standard();
    fan.insert(alpha)?;
    Ok(fan)
}

#[derive(Clone, Debug, PartialEq)]
pub struct AInvarianceReport {
    /// `α_1 + α_2`.
    pub direct: Rational,
    /// Through the refinement containing `α` as a ray.
    pub own_fan: Rational,
    /// Through cone coordinates in the refinement towards `other`.
    pub other_cone: Rational,
    /// Through the refinement towards `other` and then `α`.
    pub other_path: Rational,
    pub determinants_ok: bool,
    pub equal: bool,
}

/// `A(val_α)` computed in the plane and through two regular refinements.
pub fn a_invariance_check(alpha: &[Rational], other: [u64; 2]) -> Result<AInvarianceReport> {
    check_dim(2, alpha.len())?;
    if !alpha.iter().all(Signed::is_positive) {
        return Err(Error::invalid("A-invariance check needs positive weights"));
    }
    let direct = &alpha[0] + &alpha[1];
    let prim = crate::multiplier::primitive_direction(alpha);
    let scale = &alpha[0] / &prim[0];
    let prim_u: [u64; 2] = [to_u64(&prim[0])?, to_u64(&prim[1])?];

    let own = fan_refine_2d(prim_u)?;
    let idx = own.rays().iter().position(|&r| r == prim_u).expect("inserted");
    let own_fan = &scale * Rational::from_integer(own.log_discrepancies()[idx].into());

    let towards = fan_refine_2d(other)?;
    let other_cone = towards.log_discrepancy(alpha)?;

    let mut both = towards.clone();
    both.insert(prim_u)?;
    let idx = both.rays().iter().position(|&r| r == prim_u).expect("inserted");
    let other_path = &scale * Rational::from_integer(both.log_discrepancies()[idx].into());

    let determinants_ok = own.is_regular() && towards.is_regular() && both.is_regular();
    let equal = own_fan == direct && other_cone == direct && other_path == direct;
    Ok(AInvarianceReport {
        direct,
        own_fan,
        other_cone,
        other_path,
        determinants_ok,
        equal,
    })
}

fn to_u64(r: &Rational) -> Result<u64> {
    use num_traits::ToPrimitive;
    r.to_integer().to_u64().ok_or_else(overflow)
}
