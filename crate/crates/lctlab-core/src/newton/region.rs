use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ideal::{minimal_generators, ExponentVector, MonomialIdeal};
use super::Value;
use crate::error::{check_dim, Error, Result};
use crate::ratlp::{ceil, dot, floor, int, rank, solve, solve_square, to_f64, LinearProgram, LpSolution, Rational};

/// `conv(vertices) + R^n_{≥0}` in both vertex and facet form.
///
/// Facets are stored as normals `a ≥ 0` of the inequalities `⟨a, x⟩ ≥ 1`; the
/// coordinate inequalities `x ≥ 0` are implicit. The region containing the
/// origin (the orthant, from the unit ideal) has no facets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polyhedron {
    dim: usize,
    vertices: Vec<Vec<Rational>>,
    facets: Vec<Vec<Rational>>,
}

impl Polyhedron {
    /// Region spanned by arbitrary nonnegative points.
    pub fn from_points(dim: usize, points: Vec<Vec<Rational>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("region of dimension zero"));
        }
        if points.is_empty() {
            return Err(Error::ZeroIdeal("region without points".into()));
        }
        for p in &points {
            check_dim(dim, p.len())?;
            if p.iter().any(Signed::is_negative) {
                return Err(Error::invalid("points must lie in the nonnegative orthant"));
            }
        }
        let pts = undominated(points);
        if pts.iter().any(|p| p.iter().all(Zero::is_zero)) {
            return Ok(Self::orthant(dim));
        }
        let (vertices, facets) = match dim {
            1 => {
                let v = pts[0][0].clone();
                (vec![vec![v.clone()]], vec![vec![v.recip()]])
            }
            2 => planar_hull(pts),
            _ => incremental_hull(dim, pts),
        };
        Ok(Self {
            dim,
            vertices,
            facets,
        })
    }

    /// `P(a)` for a nonzero monomial ideal.
    pub fn from_ideal(a: &MonomialIdeal) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::ZeroIdeal("Newton polyhedron of the zero ideal".into()));
        }
        Self::from_points(a.nvars(), a.generators().iter().map(ExponentVector::to_rational).collect())
    }

    /// The whole orthant, `P` of the unit ideal.
    pub fn orthant(dim: usize) -> Self {
        Self {
            dim,
            vertices: vec![vec![Rational::zero(); dim]],
            facets: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    /// Normals `a` of the non-coordinate facets `⟨a, x⟩ ≥ 1`.
    pub fn facets(&self) -> &[Vec<Rational>] {
        &self.facets
    }

    pub fn is_orthant(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        x.len() == self.dim
            && !x.iter().any(Signed::is_negative)
            && self.facets.iter().all(|a| dot(a, x) >= Rational::one())
    }

    /// Membership in the topological interior.
    pub fn interior_contains(&self, x: &[Rational]) -> bool {
        x.len() == self.dim
            && x.iter().all(Signed::is_positive)
            && self.facets.iter().all(|a| dot(a, x) > Rational::one())
    }

    /// `min_{v ∈ P} ⟨α, v⟩` for `α ≥ 0`.
    pub fn support_value(&self, alpha: &[Rational]) -> Result<Rational> {
        check_dim(self.dim, alpha.len())?;
        if alpha.iter().any(Signed::is_negative) {
            return Err(Error::invalid("support value needs a nonnegative direction"));
        }
        Ok(self
            .vertices
            .iter()
            .map(|v| dot(v, alpha))
            .min()
            .expect("nonempty vertex set"))
    }

    /// `t* = min{t ≥ 0 : t·w ∈ P}` for `w > 0`, from the facets.
    pub fn ray_entry(&self, w: &[Rational]) -> Result<Rational> {
        check_dim(self.dim, w.len())?;
        if !w.iter().all(Signed::is_positive) {
            return Err(Error::invalid("ray direction must be positive"));
        }
        Ok(self
            .facets
            .iter()
            .map(|a| dot(a, w).recip())
            .max()
            .unwrap_or_else(Rational::zero))
    }

    /// Facets on which `x` lies.
    pub fn active_facets(&self, x: &[Rational]) -> Vec<&Vec<Rational>> {
        self.facets.iter().filter(|a| dot(a, x).is_one()).collect()
    }

    pub fn minkowski_sum(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        let sums = self
            .vertices
            .iter()
            .flat_map(|a| {
                other
                    .vertices
                    .iter()
                    .map(move |b| a.iter().zip(b).map(|(x, y)| x + y).collect())
            })
            .collect();
        Self::from_points(self.dim, sums)
    }

    /// `s·P` for `s > 0`.
    pub fn scale(&self, s: &Rational) -> Result<Self> {
        if !s.is_positive() {
            return Err(Error::invalid("scale factor must be positive"));
        }
        Ok(Self {
            dim: self.dim,
            vertices: self
                .vertices
                .iter()
                .map(|v| v.iter().map(|c| c * s).collect())
                .collect(),
            facets: self
                .facets
                .iter()
                .map(|a| a.iter().map(|c| c / s).collect())
                .collect(),
        })
    }

    /// Convex hull of the union with another region.
    pub fn hull_with(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        let pts = self.vertices.iter().chain(&other.vertices).cloned().collect();
        Self::from_points(self.dim, pts)
    }

    fn max_coords(&self) -> Vec<Rational> {
        (0..self.dim)
            .map(|i| self.vertices.iter().map(|v| v[i].clone()).max().expect("vertex"))
            .collect()
    }

    /// Minimal lattice points `u` with `u ∈ s·P`, or with `u + e` in the
    /// interior of `s·P` when `strict` is set.
    ///
    /// Coordinates `i < n` are scanned up to `⌈s·M_i⌉`, where `M_i` is the
    /// largest vertex coordinate: past that value the coordinate no longer
    /// affects membership, so no minimal point exceeds it. The last coordinate
    /// is solved for directly from the facets.
    pub fn lattice_points(&self, s: &Rational, strict: bool) -> MonomialIdeal {
        let n = self.dim;
        if self.facets.is_empty() || (s.is_zero() && !strict) {
            return MonomialIdeal::unit(n);
        }
        let bounds: Vec<u32> = self
            .max_coords()
            .iter()
            .take(n - 1)
            .map(|m| ceil(&(m * s)).to_u32().expect("enumeration box fits in u32"))
            .collect();
        let shift = if strict { Rational::one() } else { Rational::zero() };
        let mut found = Vec::new();
        let mut prefix = vec![0u32; n - 1];
        loop {
            if let Some(last) = self.last_coordinate(&prefix, s, &shift, strict) {
                let mut coords = prefix.clone();
                coords.push(last);
                found.push(ExponentVector::new(coords).expect("nonempty"));
            }
            // Odometer over the prefix box.
            let mut i = 0;
            loop {
                if i == n - 1 {
                    return minimal_generators(n, found).expect("consistent dimensions");
                }
                if prefix[i] < bounds[i] {
                    prefix[i] += 1;
                    break;
                }
                prefix[i] = 0;
                i += 1;
            }
        }
    }

    fn last_coordinate(&self, prefix: &[u32], s: &Rational, shift: &Rational, strict: bool) -> Option<u32> {
        let n = self.dim;
        let mut need = BigInt::zero();
        for a in &self.facets {
            let partial = prefix
                .iter()
                .zip(a)
                .fold(Rational::zero(), |acc, (&w, ai)| acc + ai * (Rational::from_integer(w.into()) + shift));
            let rest = s - partial;
            let an = &a[n - 1];
            if an.is_zero() {
                let ok = if strict { rest.is_negative() } else { !rest.is_positive() };
                if !ok {
                    return None;
                }
                continue;
            }
            let q = rest / an;
            let lower = if strict { floor(&q) } else { ceil(&q) };
            if lower > need {
                need = lower;
            }
        }
        Some(need.to_u32().expect("lattice coordinate fits in u32"))
    }

    /// `x ∈ P` decided by a feasibility LP over the vertex form.
    pub fn contains_lp(&self, x: &[Rational]) -> Result<bool> {
        check_dim(self.dim, x.len())?;
        let (matrix, rhs, k) = self.combination_rows(x, false);
        let lp = LinearProgram::new(vec![Rational::zero(); k + self.dim], matrix, rhs)?;
        Ok(solve(&lp).is_optimal())
    }

    /// `max{ε ≥ 0 : x − ε·e ∈ P}`, or `None` when `x ∉ P`. Positive exactly
    /// on the interior because the recession cone is the full orthant.
    pub fn interior_margin_lp(&self, x: &[Rational]) -> Result<Option<Rational>> {
        check_dim(self.dim, x.len())?;
        let (matrix, rhs, k) = self.combination_rows(x, true);
        let mut c = vec![Rational::zero(); k + self.dim + 1];
        c[k + self.dim] = -Rational::one();
        let lp = LinearProgram::new(c, matrix, rhs)?;
        match solve(&lp) {
            LpSolution::Optimal { value, .. } => Ok(Some(-value)),
            LpSolution::Infeasible { .. } => Ok(None),
            LpSolution::Unbounded { .. } => Err(Error::Computation("interior margin unbounded".into())),
        }
    }

    /// Rows of `x (− ε e) = Σ λ_g v_g + r`, `Σ λ = 1`.
    fn combination_rows(&self, x: &[Rational], with_eps: bool) -> (Vec<Vec<Rational>>, Vec<Rational>, usize) {
        let k = self.vertices.len();
        let n = self.dim;
        let width = k + n + usize::from(with_eps);
        let mut rows = Vec::with_capacity(n + 1);
        for i in 0..n {
            let mut row = vec![Rational::zero(); width];
            for (g, v) in self.vertices.iter().enumerate() {
                row[g] = v[i].clone();
            }
            row[k + i] = Rational::one();
            if with_eps {
                row[k + n] = Rational::one();
            }
            rows.push(row);
        }
        let mut last = vec![Rational::zero(); width];
        for entry in last.iter_mut().take(k) {
            *entry = Rational::one();
        }
        rows.push(last);
        let mut rhs = x.to_vec();
        rhs.push(Rational::one());
        (rows, rhs, k)
    }

    /// The ray-entry LP: minimize `t` with `t·w = Σ λ_g v_g + r`, `Σ λ = 1`.
    /// Returns `t*` and the dual normal, which supports `P` at `t*·w`.
    pub fn ray_entry_lp(&self, w: &[Rational]) -> Result<(Rational, Vec<Rational>)> {
        check_dim(self.dim, w.len())?;
        let k = self.vertices.len();
        let n = self.dim;
        let width = 1 + k + n;
        let mut rows = Vec::with_capacity(n + 1);
        for i in 0..n {
            let mut row = vec![Rational::zero(); width];
            row[0] = w[i].clone();
            for (g, v) in self.vertices.iter().enumerate() {
                row[1 + g] = -v[i].clone();
            }
            row[1 + k + i] = -Rational::one();
            rows.push(row);
        }
        let mut last = vec![Rational::zero(); width];
        for entry in last.iter_mut().skip(1).take(k) {
            *entry = Rational::one();
        }
        rows.push(last);
        let mut rhs = vec![Rational::zero(); n];
        rhs.push(Rational::one());
        let mut c = vec![Rational::zero(); width];
        c[0] = Rational::one();
        let lp = LinearProgram::new(c, rows, rhs)?;
        match solve(&lp) {
            LpSolution::Optimal { value, dual, .. } => Ok((value, dual[..n].to_vec())),
            other => Err(Error::Computation(format!("ray-entry program not optimal: {other:?}"))),
        }
    }
}

/// Removes duplicates and points lying above another point.
fn undominated(points: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let mut pts: Vec<Vec<Rational>> = points.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
    pts.sort();
    let mut kept: Vec<Vec<Rational>> = Vec::new();
    for p in pts {
        if !kept.iter().any(|q| q.iter().zip(&p).all(|(a, b)| a <= b)) {
            kept.push(p);
        }
    }
    kept
}

fn cross(o: &[Rational], a: &[Rational], b: &[Rational]) -> Rational {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Lower convex chain of an antichain in the plane.
fn planar_hull(pts: Vec<Vec<Rational>>) -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>) {
    // Antichain sorted by x is sorted by decreasing y.
    let mut chain: Vec<Vec<Rational>> = Vec::new();
    for p in pts {
        while chain.len() >= 2 && !cross(&chain[chain.len() - 2], &chain[chain.len() - 1], &p).is_positive() {
            chain.pop();
        }
        chain.push(p);
    }
    let mut facets = Vec::new();
    let first = &chain[0];
    if first[0].is_positive() {
        facets.push(vec![first[0].recip(), Rational::zero()]);
    }
    for w in chain.windows(2) {
        let (p, q) = (&w[0], &w[1]);
        let normal = [&p[1] - &q[1], &q[0] - &p[0]];
        let c = &normal[0] * &p[0] + &normal[1] * &p[1];
        facets.push(vec![&normal[0] / &c, &normal[1] / &c]);
    }
    let last = &chain[chain.len() - 1];
    if last[1].is_positive() {
        facets.push(vec![Rational::zero(), last[1].recip()]);
    }
    facets.sort();
    (chain, facets)
}

/// Facet normals as the vertices of `{a ≥ 0 : ⟨a, v⟩ ≥ 1 ∀v}`.
fn facets_of(dim: usize, pts: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let k = pts.len();
    let total = k + dim;
    let row = |idx: usize| -> (Vec<Rational>, Rational) {
        if idx < k {
            (pts[idx].clone(), Rational::one())
        } else {
            let mut e = vec![Rational::zero(); dim];
            e[idx - k] = Rational::one();
            (e, Rational::zero())
        }
    };
    let mut out = BTreeSet::new();
    let mut idx: Vec<usize> = (0..dim).collect();
    loop {
        if idx[0] < k {
            let (a, b): (Vec<_>, Vec<_>) = idx.iter().map(|&i| row(i)).unzip();
            if let Some(sol) = solve_square(&a, &b) {
                let feasible = !sol.iter().any(Signed::is_negative)
                    && pts.iter().all(|v| dot(&sol, v) >= Rational::one());
                if feasible {
                    out.insert(sol);
                }
            }
        }
        // Next combination in lexicographic order.
        let mut i = dim;
        loop {
            if i == 0 {
                return out.into_iter().collect();
            }
            i -= 1;
            if idx[i] < total - (dim - i) {
                idx[i] += 1;
                for j in i + 1..dim {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Points whose active constraints have full rank.
fn vertices_of(dim: usize, pts: &[Vec<Rational>], facets: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut out: Vec<Vec<Rational>> = pts
        .iter()
        .filter(|v| {
            let mut tight: Vec<Vec<Rational>> = facets.iter().filter(|a| dot(a, v).is_one()).cloned().collect();
            for j in 0..dim {
                if v[j].is_zero() {
                    let mut e = vec![Rational::zero(); dim];
                    e[j] = Rational::one();
                    tight.push(e);
                }
            }
            rank(&tight) == dim
        })
        .cloned()
        .collect();
    out.sort();
    out
}

fn incremental_hull(dim: usize, mut pts: Vec<Vec<Rational>>) -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>) {
    // Low points first: they are the likely vertices.
    pts.sort_by_cached_key(|p| p.iter().fold(Rational::zero(), |a, b| a + b));
    let mut verts: Vec<Vec<Rational>> = Vec::new();
    let mut facets: Vec<Vec<Rational>> = Vec::new();
    for p in pts {
        if !verts.is_empty() && facets.iter().all(|a| dot(a, &p) >= Rational::one()) {
            continue;
        }
        verts.push(p);
        facets = facets_of(dim, &verts);
        verts = vertices_of(dim, &verts, &facets);
    }
    (verts, facets)
}

/// A convex, closed, upward-closed region known through callbacks.
pub trait RegionOracle: Send + Sync {
    fn name(&self) -> &str;
    fn dim(&self) -> usize;
    /// Exact closed membership.
    fn contains(&self, x: &[Rational]) -> bool;
    /// Exact interior membership, when the oracle can decide it.
    fn interior_contains(&self, _x: &[Rational]) -> Option<bool> {
        None
    }
    /// `inf_{x ∈ P} ⟨α, x⟩` for `α ≥ 0`.
    fn support(&self, alpha: &[Rational]) -> f64;
    /// Accuracy of `support` and of derived bisections.
    fn tolerance(&self) -> f64 {
        1e-12
    }
    /// Per-coordinate bounds containing every minimal lattice point of `s·P`.
    fn enumeration_box(&self, _s: &Rational) -> Option<Vec<u32>> {
        None
    }
}

/// The region `{(x, y) ≥ 0 : (x + 1)·y ≥ 1}`.
///
/// Its support function is `2√(ab) − a` for `b ≥ a` and `b` for `b < a`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Example8;

impl RegionOracle for Example8 {
    fn name(&self) -> &str {
        "example8"
    }

    fn dim(&self) -> usize {
        2
    }

    fn contains(&self, x: &[Rational]) -> bool {
        x.len() == 2
            && !x[0].is_negative()
            && !x[1].is_negative()
            && (&x[0] + Rational::one()) * &x[1] >= Rational::one()
    }

    fn interior_contains(&self, x: &[Rational]) -> Option<bool> {
        Some(
            x.len() == 2
                && x[0].is_positive()
                && x[1].is_positive()
                && (&x[0] + Rational::one()) * &x[1] > Rational::one(),
        )
    }

    fn support(&self, alpha: &[Rational]) -> f64 {
        let (a, b) = (to_f64(&alpha[0]), to_f64(&alpha[1]));
        if b >= a {
            2.0 * (a * b).sqrt() - a
        } else {
            b
        }
    }

    fn enumeration_box(&self, s: &Rational) -> Option<Vec<u32>> {
        // Minimal points of s·P satisfy (u1 + s)·u2 ≥ s² with u2 ≤ ⌈s⌉.
        let bx = ceil(&(s * s)).to_u32()? + 2;
        let by = ceil(s).to_u32()? + 1;
        Some(vec![bx, by])
    }
}

/// A Newton region: exact polyhedral or oracle-defined.
#[derive(Clone)]
pub enum NewtonRegion {
    Polyhedral(Polyhedron),
    Oracle(Arc<dyn RegionOracle>),
}

impl fmt::Debug for NewtonRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NewtonRegion::Polyhedral(p) => f.debug_tuple("Polyhedral").field(p).finish(),
            NewtonRegion::Oracle(o) => f.debug_tuple("Oracle").field(&o.name()).finish(),
        }
    }
}

impl NewtonRegion {
    /// The Newton polyhedron of a nonzero monomial ideal.
    pub fn of_ideal(a: &MonomialIdeal) -> Result<Self> {
        Ok(NewtonRegion::Polyhedral(Polyhedron::from_ideal(a)?))
    }

    pub fn oracle(o: impl RegionOracle + 'static) -> Self {
        NewtonRegion::Oracle(Arc::new(o))
    }

    pub fn dim(&self) -> usize {
        match self {
            NewtonRegion::Polyhedral(p) => p.dim(),
            NewtonRegion::Oracle(o) => o.dim(),
        }
    }

    pub fn polyhedron(&self) -> Option<&Polyhedron> {
        match self {
            NewtonRegion::Polyhedral(p) => Some(p),
            NewtonRegion::Oracle(_) => None,
        }
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        match self {
            NewtonRegion::Polyhedral(p) => p.contains(x),
            NewtonRegion::Oracle(o) => o.contains(x),
        }
    }

    /// Support value: exact for polyhedra, the oracle's estimate otherwise.
    pub fn support_value(&self, alpha: &[Rational]) -> Result<Value> {
        check_dim(self.dim(), alpha.len())?;
        if alpha.iter().any(Signed::is_negative) {
            return Err(Error::invalid("support value needs a nonnegative direction"));
        }
        match self {
            NewtonRegion::Polyhedral(p) => Ok(Value::Exact(p.support_value(alpha)?)),
            NewtonRegion::Oracle(o) => {
                let v = o.support(alpha);
                let tol = o.tolerance();
                Ok(Value::approx(v, tol))
            }
        }
    }

    pub fn minkowski_sum(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (NewtonRegion::Polyhedral(a), NewtonRegion::Polyhedral(b)) => {
                Ok(NewtonRegion::Polyhedral(a.minkowski_sum(b)?))
            }
            _ => Err(Error::Unsupported("Minkowski sum of oracle regions".into())),
        }
    }

    /// Minimal lattice points of `s·P` (closed) or with `u + e ∈ Int(s·P)`.
    pub fn lattice_points(&self, s: &Rational, strict: bool) -> Result<MonomialIdeal> {
        match self {
            NewtonRegion::Polyhedral(p) => Ok(p.lattice_points(s, strict)),
            NewtonRegion::Oracle(o) => oracle_lattice_points(o.as_ref(), s, strict),
        }
    }
}

fn oracle_lattice_points(o: &dyn RegionOracle, s: &Rational, strict: bool) -> Result<MonomialIdeal> {
    let n = o.dim();
    if s.is_zero() {
        return Ok(MonomialIdeal::unit(n));
    }
    let bounds = o
        .enumeration_box(s)
        .ok_or_else(|| Error::Unsupported(format!("oracle {} gives no enumeration box", o.name())))?;
    check_dim(n, bounds.len())?;
    let mut found = Vec::new();
    let mut u = vec![0u32; n];
    loop {
        let x: Vec<Rational> = u
            .iter()
            .map(|&c| (Rational::from_integer(c.into()) + if strict { Rational::one() } else { Rational::zero() }) / s)
            .collect();
        let inside = if strict {
            o.interior_contains(&x)
                .ok_or_else(|| Error::Unsupported(format!("oracle {} cannot decide interiors", o.name())))?
        } else {
            o.contains(&x)
        };
        if inside {
            found.push(ExponentVector::new(u.clone())?);
        }
        let mut i = 0;
        loop {
            if i == n {
                return minimal_generators(n, found);
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

/// Bisection for `min{t : t·w ∈ P}` against closed membership; returns a
/// bracketing interval `[lo, hi]` of width below `tol`.
pub fn oracle_ray_entry(o: &dyn RegionOracle, w: &[Rational], tol: f64) -> Result<(Rational, Rational)> {
    check_dim(o.dim(), w.len())?;
    let at = |t: &Rational| -> Vec<Rational> { w.iter().map(|c| c * t).collect() };
    if o.contains(&vec![Rational::zero(); w.len()]) {
        return Ok((Rational::zero(), Rational::zero()));
    }
    let mut hi = Rational::one();
    let mut doublings = 0;
    while !o.contains(&at(&hi)) {
        hi *= int(2);
        doublings += 1;
        if doublings > 256 {
            return Err(Error::Computation(format!("ray never enters oracle region {}", o.name())));
        }
    }
    let mut lo = Rational::zero();
    let half = Rational::new(1.into(), 2.into());
    while to_f64(&(&hi - &lo)) >= tol {
        let mid = (&lo + &hi) * &half;
        if o.contains(&at(&mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok((lo, hi))
}
