//! Random and degenerate linear programs with a vertex-enumeration oracle.

use lctlab_core::ratlp::{dot, int, rank, rat, solve_square, LinearProgram};
use lctlab_core::Rational;
use num_traits::Signed;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Minimum of the objective over all basic feasible solutions, for a matrix
/// of full row rank. `None` when there are none.
pub fn bfs_minimum(lp: &LinearProgram) -> Option<Rational> {
    let m = lp.num_rows();
    let n = lp.num_vars();
    let mut best: Option<Rational> = None;
    for cols in combinations(n, m) {
        let sq: Vec<Vec<Rational>> = (0..m)
            .map(|i| cols.iter().map(|&j| lp.matrix()[i][j].clone()).collect())
            .collect();
        let Some(xb) = solve_square(&sq, lp.rhs()) else {
            continue;
        };
        if xb.iter().any(Signed::is_negative) {
            continue;
        }
        let mut x = vec![int(0); n];
        for (k, &j) in cols.iter().enumerate() {
            x[j] = xb[k].clone();
        }
        let v = dot(lp.objective(), &x);
        if best.as_ref().map_or(true, |b| v < *b) {
            best = Some(v);
        }
    }
    best
}

pub fn random_lp(rng: &mut ChaCha8Rng) -> LinearProgram {
    loop {
        let n = rng.gen_range(1..=6);
        let m = rng.gen_range(1..=n);
        let a: Vec<Vec<Rational>> = (0..m)
            .map(|_| (0..n).map(|_| int(rng.gen_range(-3..=3))).collect())
            .collect();
        if rank(&a) < m {
            continue;
        }
        let b = (0..m).map(|_| int(rng.gen_range(-4..=4))).collect();
        let c = (0..n).map(|_| int(rng.gen_range(-3..=5))).collect();
        return LinearProgram::new(c, a, b).unwrap();
    }
}

pub fn from_rows(c: Vec<Rational>, rows: Vec<Vec<Rational>>, b: Vec<Rational>) -> LinearProgram {
    LinearProgram::new(c, rows, b).unwrap()
}

/// Beale's cycling example, already in equality form with slacks x1..x3.
pub fn beale() -> LinearProgram {
    from_rows(
        vec![int(0), int(0), int(0), rat(-3, 4), int(20), rat(-1, 2), int(6)],
        vec![
            vec![int(1), int(0), int(0), rat(1, 4), int(-8), int(-1), int(9)],
            vec![int(0), int(1), int(0), rat(1, 2), int(-12), rat(-1, 2), int(3)],
            vec![int(0), int(0), int(1), int(0), int(0), int(1), int(0)],
        ],
        vec![int(0), int(0), int(1)],
    )
}

/// Kuhn's example with slacks appended.
pub fn kuhn() -> LinearProgram {
    from_rows(
        vec![int(-2), int(-3), int(1), int(12), int(0), int(0), int(0)],
        vec![
            vec![int(-2), int(-9), int(1), int(9), int(1), int(0), int(0)],
            vec![rat(1, 3), int(1), rat(-1, 3), int(-2), int(0), int(1), int(0)],
            vec![int(2), int(3), int(-1), int(-12), int(0), int(0), int(1)],
        ],
        vec![int(0), int(0), int(2)],
    )
}

/// 3×3 assignment polytope (one row dropped to keep full rank).
pub fn assignment() -> LinearProgram {
    let cost = [[4, 1, 3], [2, 0, 5], [3, 2, 2]];
    let mut rows = Vec::new();
    for i in 0..3 {
        rows.push((0..9).map(|k| int((k / 3 == i) as i64)).collect());
    }
    for j in 0..2 {
        rows.push((0..9).map(|k| int((k % 3 == j) as i64)).collect());
    }
    let c = (0..9).map(|k| int(cost[k / 3][k % 3])).collect();
    from_rows(c, rows, vec![int(1); 5])
}

/// Every constraint passes through the optimal vertex.
pub fn fan_of_tight_rows() -> LinearProgram {
    from_rows(
        vec![int(-1), int(-1), int(0), int(0), int(0), int(0)],
        vec![
            vec![int(1), int(-1), int(1), int(0), int(0), int(0)],
            vec![int(-1), int(1), int(0), int(1), int(0), int(0)],
            vec![int(1), int(-2), int(0), int(0), int(1), int(0)],
            vec![int(1), int(1), int(0), int(0), int(0), int(1)],
        ],
        vec![int(0), int(0), int(0), int(2)],
    )
}

/// Degenerate start with zero right-hand sides and a large objective push.
pub fn zero_rhs_cone() -> LinearProgram {
    from_rows(
        vec![int(-10), int(57), int(9), int(24), int(0), int(0), int(0)],
        vec![
            vec![rat(1, 2), rat(-11, 2), rat(-5, 2), int(9), int(1), int(0), int(0)],
            vec![rat(1, 2), rat(-3, 2), rat(-1, 2), int(1), int(0), int(1), int(0)],
            vec![int(1), int(0), int(0), int(0), int(0), int(0), int(1)],
        ],
        vec![int(0), int(0), int(1)],
    )
}

/// Hand-built degenerate programs, with the optimum where it is known.
pub fn degenerate_instances() -> Vec<(&'static str, LinearProgram, Option<Rational>)> {
    vec![
        ("beale", beale(), Some(rat(-5, 4))),
        ("kuhn", kuhn(), None),
        ("assignment", assignment(), Some(int(5))),
        ("tight rows", fan_of_tight_rows(), None),
        ("zero rhs", zero_rhs_cone(), None),
    ]
}
