use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::ratlp::Rational;

/// A polynomial in `x, y` with rational coefficients; zero coefficients are
/// never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial2 {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl Polynomial2 {
    pub fn new(terms: impl IntoIterator<Item = ((u32, u32), Rational)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Terms `(i, j, c)` for `c·x^i·y^j`.
    pub fn from_terms(terms: &[(u32, u32, i64)]) -> Self {
        Self::new(terms.iter().map(|&(i, j, c)| ((i, j), Rational::from_integer(c.into()))))
    }

    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn x() -> Self {
        Self::from_terms(&[(1, 0, 1)])
    }

    pub fn y() -> Self {
        Self::from_terms(&[(0, 1, 1)])
    }

    fn add_term(&mut self, e: (u32, u32), c: Rational) {
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), Rational> {
        &self.terms
    }

    pub fn exponents(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.terms.keys().copied()
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.exponents().map(|(i, j)| i + j).max()
    }

    /// Order of vanishing at the origin; `None` for zero.
    pub fn ord0(&self) -> Option<u32> {
        self.exponents().map(|(i, j)| i + j).min()
    }

    pub fn degree_in_y(&self) -> Option<u32> {
        self.exponents().map(|(_, j)| j).max()
    }

    /// `f(y, x)`.
    pub fn swapped(&self) -> Self {
        Self::new(self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            for (&(k, l), d) in &other.terms {
                out.add_term((i + k, j + l), c * d);
            }
        }
        out
    }
}

impl fmt::Display for Polynomial2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Highest total degree first.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(&(i, j), _)| (std::cmp::Reverse(i + j), std::cmp::Reverse(j)));
        for (k, (&(i, j), c)) in terms.into_iter().enumerate() {
            let abs = c.abs();
            match (k, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = match (i, j) {
                (0, 0) => String::new(),
                _ => {
                    let part = |v: &str, e: u32| match e {
                        0 => String::new(),
                        1 => v.to_string(),
                        _ => format!("{v}^{e}"),
                    };
                    let (px, py) = (part("x", i), part("y", j));
                    if px.is_empty() || py.is_empty() {
                        format!("{px}{py}")
                    } else {
                        format!("{px}*{py}")
                    }
                }
            };
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}
