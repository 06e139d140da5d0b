use num_traits::{One, Zero};

use super::Rational;

/// Solves a square system `a·x = b` exactly; `None` when `a` is singular.
pub fn solve_square(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    debug_assert!(a.iter().all(|row| row.len() == n) && b.len() == n);
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for entry in m[col].iter_mut().skip(col) {
            *entry *= &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=n {
                    let delta = &factor * &m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
    }
    Some(m.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

/// Rank of a rational matrix given by rows.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].recip();
        for entry in m[r].iter_mut() {
            *entry *= &inv;
        }
        debug_assert!(m[r][col].is_one());
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let factor = m[i][col].clone();
                for c in col..cols {
                    let delta = &factor * &m[r][c];
                    m[i][c] -= delta;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlp::{int, rat};

    #[test]
    fn solves_and_detects_singular() {
        let a = vec![vec![int(2), int(1)], vec![int(1), int(3)]];
        let x = solve_square(&a, &[int(3), int(4)]).unwrap();
        assert_eq!(x, vec![int(1), int(1)]);
        let s = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert!(solve_square(&s, &[int(1), int(1)]).is_none());
        assert_eq!(rank(&s), 1);
        assert_eq!(rank(&a), 2);
        let c = vec![vec![rat(1, 2), int(0), int(1)]];
        assert_eq!(rank(&c), 1);
    }
}
