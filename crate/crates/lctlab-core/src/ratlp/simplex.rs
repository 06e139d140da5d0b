use std::collections::HashSet;

use num_traits::{One, Signed, Zero};

use super::{dot, Rational};
use crate::error::{check_dim, Error, Result};

/// Standard form program: minimize `c·x` subject to `Ax = b`, `x ≥ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearProgram {
    objective: Vec<Rational>,
    matrix: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
}

impl LinearProgram {
    /// Checks that `matrix` is `rhs.len() × objective.len()`.
    pub fn new(
        objective: Vec<Rational>,
        matrix: Vec<Vec<Rational>>,
        rhs: Vec<Rational>,
    ) -> Result<Self> {
        check_dim(rhs.len(), matrix.len())?;
        for row in &matrix {
            check_dim(objective.len(), row.len())?;
        }
        if objective.is_empty() {
            return Err(Error::invalid("linear program without variables"));
        }
        Ok(Self {
            objective,
            matrix,
            rhs,
        })
    }

    pub fn objective(&self) -> &[Rational] {
        &self.objective
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    pub fn rhs(&self) -> &[Rational] {
        &self.rhs
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rhs.len()
    }

    fn row_dot(&self, i: usize, x: &[Rational]) -> Rational {
        dot(&self.matrix[i], x)
    }

    /// `yᵀA` as a vector indexed by columns.
    fn transpose_dot(&self, y: &[Rational]) -> Vec<Rational> {
        (0..self.num_vars())
            .map(|j| {
                self.matrix
                    .iter()
                    .zip(y)
                    .fold(Rational::zero(), |acc, (row, yi)| acc + &row[j] * yi)
            })
            .collect()
    }
}

/// Outcome of [`solve`], each variant with its certificate.
#[derive(Clone, Debug, PartialEq)]
pub enum LpSolution {
    /// `primal` is optimal and `dual` satisfies `Aᵀy ≤ c` with `b·y = value`.
    Optimal {
        primal: Vec<Rational>,
        dual: Vec<Rational>,
        value: Rational,
    },
    /// Farkas vector: `yᵀA ≤ 0` and `yᵀb > 0`.
    Infeasible { farkas: Vec<Rational> },
    /// A feasible `point` and a `ray` with `A·ray = 0`, `ray ≥ 0`, `c·ray < 0`.
    Unbounded {
        point: Vec<Rational>,
        ray: Vec<Rational>,
    },
}

impl LpSolution {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpSolution::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn is_optimal(&self) -> bool {
        matches!(self, LpSolution::Optimal { .. })
    }

    /// Re-checks the certificate against `lp` with exact arithmetic.
    pub fn verify(&self, lp: &LinearProgram) -> std::result::Result<(), String> {
        let feasible = |x: &[Rational]| -> std::result::Result<(), String> {
            if x.len() != lp.num_vars() {
                return Err("primal length".into());
            }
            if x.iter().any(Signed::is_negative) {
                return Err("primal has a negative entry".into());
            }
            for i in 0..lp.num_rows() {
                if lp.row_dot(i, x) != lp.rhs[i] {
                    return Err(format!("row {i} violated"));
                }
            }
            Ok(())
        };
        match self {
            LpSolution::Optimal {
                primal,
                dual,
                value,
            } => {
                feasible(primal)?;
                if dot(&lp.objective, primal) != *value {
                    return Err("objective value mismatch".into());
                }
                if dual.len() != lp.num_rows() {
                    return Err("dual length".into());
                }
                let aty = lp.transpose_dot(dual);
                if aty.iter().zip(&lp.objective).any(|(a, c)| a > c) {
                    return Err("dual infeasible".into());
                }
                if dot(&lp.rhs, dual) != *value {
                    return Err("duality gap".into());
                }
                Ok(())
            }
            LpSolution::Infeasible { farkas } => {
                if farkas.len() != lp.num_rows() {
                    return Err("farkas length".into());
                }
                if lp.transpose_dot(farkas).iter().any(Signed::is_positive) {
                    return Err("farkas: yᵀA has a positive entry".into());
                }
                if !dot(&lp.rhs, farkas).is_positive() {
                    return Err("farkas: yᵀb not positive".into());
                }
                Ok(())
            }
            LpSolution::Unbounded { point, ray } => {
                feasible(point)?;
                if ray.len() != lp.num_vars() || ray.iter().any(Signed::is_negative) {
                    return Err("ray not in the orthant".into());
                }
                for i in 0..lp.num_rows() {
                    if !lp.row_dot(i, ray).is_zero() {
                        return Err(format!("ray leaves row {i}"));
                    }
                }
                if !dot(&lp.objective, ray).is_negative() {
                    return Err("ray does not decrease the objective".into());
                }
                Ok(())
            }
        }
    }
}

/// Entering-variable selection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PivotRule {
    /// Smallest index; never cycles.
    #[default]
    Bland,
    /// Most negative reduced cost, switching to Bland once a basis repeats.
    LargestCoefficient,
}

/// Solution plus pivot statistics.
#[derive(Clone, Debug, PartialEq)]
pub struct LpReport {
    pub solution: LpSolution,
    pub pivots: usize,
    /// Set when the largest-coefficient rule revisited a basis.
    pub fell_back_to_bland: bool,
}

/// Solves with Bland's rule.
pub fn solve(lp: &LinearProgram) -> LpSolution {
    solve_with(lp, PivotRule::Bland).solution
}

/// Two-phase simplex with explicit artificial variables.
pub fn solve_with(lp: &LinearProgram, rule: PivotRule) -> LpReport {
    let mut t = Tableau::new(lp);
    let mut stats = Stats::default();

    let n = lp.num_vars();
    let m = lp.num_rows();
    let phase1_cost: Vec<Rational> = (0..n + m)
        .map(|j| Rational::from_integer(i32::from(j >= n).into()))
        .collect();
    let all_cols: Vec<usize> = (0..n + m).collect();
    let outcome = t.run(&phase1_cost, &all_cols, rule, &mut stats);
    debug_assert!(outcome.is_none(), "phase one is bounded below by zero");

    let infeasibility = t.objective_value(&phase1_cost);
    if infeasibility.is_positive() {
        let y = t.duals(&phase1_cost);
        return stats.report(LpSolution::Infeasible {
            farkas: t.unflip(y),
        });
    }

    t.drive_out_artificials(n, &mut stats);

    let mut phase2_cost = lp.objective.clone();
    phase2_cost.extend((0..m).map(|_| Rational::zero()));
    let original: Vec<usize> = (0..n).collect();
    if let Some(entering) = t.run(&phase2_cost, &original, rule, &mut stats) {
        let point = t.primal(n);
        let mut ray = vec![Rational::zero(); n];
        ray[entering] = Rational::one();
        for (row, &b) in t.basis.iter().enumerate() {
            if b < n {
                ray[b] = -t.rows[row][entering].clone();
            }
        }
        return stats.report(LpSolution::Unbounded { point, ray });
    }

    let primal = t.primal(n);
    let value = dot(&lp.objective, &primal);
    let dual = t.unflip(t.duals(&phase2_cost));
    stats.report(LpSolution::Optimal {
        primal,
        dual,
        value,
    })
}

#[derive(Default)]
struct Stats {
    pivots: usize,
    fell_back: bool,
}

impl Stats {
    fn report(self, solution: LpSolution) -> LpReport {
        LpReport {
            solution,
            pivots: self.pivots,
            fell_back_to_bland: self.fell_back,
        }
    }
}

/// Dense tableau `M·[A' | I | b']` where `A'`, `b'` have rows negated so
/// that `b' ≥ 0`. The artificial block therefore stores `M` itself.
struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    flipped: Vec<bool>,
    num_orig_rows: usize,
    width: usize,
}

impl Tableau {
    fn new(lp: &LinearProgram) -> Self {
        let n = lp.num_vars();
        let m = lp.num_rows();
        let width = n + m;
        let mut rows = Vec::with_capacity(m);
        let mut flipped = Vec::with_capacity(m);
        for i in 0..m {
            let flip = lp.rhs[i].is_negative();
            let sign = |v: &Rational| if flip { -v.clone() } else { v.clone() };
            let mut row: Vec<Rational> = lp.matrix[i].iter().map(sign).collect();
            row.extend((0..m).map(|k| {
                if k == i {
                    Rational::from_integer(1.into())
                } else {
                    Rational::zero()
                }
            }));
            row.push(sign(&lp.rhs[i]));
            rows.push(row);
            flipped.push(flip);
        }
        Self {
            rows,
            basis: (n..n + m).collect(),
            flipped,
            num_orig_rows: m,
            width,
        }
    }

    fn rhs(&self, row: usize) -> &Rational {
        &self.rows[row][self.width]
    }

    fn objective_value(&self, cost: &[Rational]) -> Rational {
        self.basis
            .iter()
            .enumerate()
            .fold(Rational::zero(), |acc, (r, &b)| acc + &cost[b] * self.rhs(r))
    }

    fn reduced_costs(&self, cost: &[Rational]) -> Vec<Rational> {
        let mut red = cost.to_vec();
        for (r, &b) in self.basis.iter().enumerate() {
            if cost[b].is_zero() {
                continue;
            }
            for (j, entry) in red.iter_mut().enumerate() {
                if !self.rows[r][j].is_zero() {
                    *entry -= &cost[b] * &self.rows[r][j];
                }
            }
        }
        red
    }

    /// `y = c_Bᵀ M` in the flipped row space.
    fn duals(&self, cost: &[Rational]) -> Vec<Rational> {
        let n = self.width - self.num_orig_rows;
        let mut y = vec![Rational::zero(); self.num_orig_rows];
        for (r, &b) in self.basis.iter().enumerate() {
            if cost[b].is_zero() {
                continue;
            }
            for (k, yk) in y.iter_mut().enumerate() {
                if !self.rows[r][n + k].is_zero() {
                    *yk += &cost[b] * &self.rows[r][n + k];
                }
            }
        }
        y
    }

    fn unflip(&self, y: Vec<Rational>) -> Vec<Rational> {
        y.into_iter()
            .zip(&self.flipped)
            .map(|(v, &f)| if f { -v } else { v })
            .collect()
    }

    fn primal(&self, n: usize) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); n];
        for (r, &b) in self.basis.iter().enumerate() {
            if b < n {
                x[b] = self.rhs(r).clone();
            }
        }
        x
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.rows[row][col].recip();
        for entry in self.rows[row].iter_mut() {
            if !entry.is_zero() {
                *entry *= &inv;
            }
        }
        let pivot_row = self.rows[row].clone();
        for (r, other) in self.rows.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let factor = other[col].clone();
            for (entry, p) in other.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *entry -= &factor * p;
                }
            }
        }
        self.basis[row] = col;
    }

    /// Runs primal simplex over `allowed` columns. Returns the entering column
    /// if the objective is unbounded below, `None` at optimality.
    fn run(
        &mut self,
        cost: &[Rational],
        allowed: &[usize],
        rule: PivotRule,
        stats: &mut Stats,
    ) -> Option<usize> {
        let mut rule = rule;
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        loop {
            if rule == PivotRule::LargestCoefficient {
                let mut key = self.basis.clone();
                key.sort_unstable();
                if !seen.insert(key) {
                    rule = PivotRule::Bland;
                    stats.fell_back = true;
                }
            }
            let red = self.reduced_costs(cost);
            let entering = match rule {
                PivotRule::Bland => allowed.iter().copied().find(|&j| red[j].is_negative()),
                PivotRule::LargestCoefficient => {
                    let mut best: Option<usize> = None;
                    for &j in allowed {
                        if red[j].is_negative() && best.map_or(true, |b| red[j] < red[b]) {
                            best = Some(j);
                        }
                    }
                    best
                }
            };
            let entering = entering?;

            // Ratio test; ties broken by the smallest basic index.
            let mut leave: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][entering];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(r) / a;
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => {
                        ratio < *best || (ratio == *best && self.basis[r] < self.basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            let Some((row, _)) = leave else {
                return Some(entering);
            };
            self.pivot(row, entering);
            stats.pivots += 1;
        }
    }

    /// After phase one, pivots basic artificials out on original columns and
    /// drops rows that turn out to be redundant.
    fn drive_out_artificials(&mut self, n: usize, stats: &mut Stats) {
        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] >= n {
                debug_assert!(self.rhs(r).is_zero());
                if let Some(col) = (0..n).find(|&j| !self.rows[r][j].is_zero()) {
                    self.pivot(r, col);
                    stats.pivots += 1;
                } else {
                    self.rows.remove(r);
                    self.basis.remove(r);
                    continue;
                }
            }
            r += 1;
        }
    }
}
