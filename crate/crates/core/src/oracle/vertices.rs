use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::rational::Rational;

/// Largest dimension accepted; the subset scan is `C(2d+1, d)` solves.
pub const MAX_DIM: usize = 6;

/// Solves the square system `a·x = b` by Gauss-Jordan elimination;
/// `None` if singular.
fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = Rational::one() / &a[col][col];
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        b[col] *= &inv;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..n {
                    let delta = &f * &a[col][c];
                    a[r][c] -= delta;
                }
                let delta = &f * &b[col];
                b[r] -= delta;
            }
        }
    }
    Some(b)
}

/// Vertices of `{x | lo ≤ x ≤ hi, Σx = 1}` as the feasible unique
/// solutions of every choice of `d` tight constraints among the `2d + 1`
/// describing it. Sorted and deduplicated.
pub fn brute_force_vertices(lo: &[Rational], hi: &[Rational]) -> Result<Vec<Point>> {
    let d = lo.len();
    if hi.len() != d {
        return Err(Error::Dimension {
            expected: d,
            got: hi.len(),
        });
    }
    if d > MAX_DIM {
        return Err(Error::OracleCap {
            states: d,
            cap: MAX_DIM,
        });
    }
    // constraint k < d: x_k = lo_k; d ≤ k < 2d: x_{k-d} = hi_{k-d}; 2d: Σx = 1
    let constraint = |k: usize| -> (Vec<Rational>, Rational) {
        let mut row = vec![Rational::zero(); d];
        if k < 2 * d {
            row[k % d] = Rational::one();
            let rhs = if k < d {
                lo[k].clone()
            } else {
                hi[k - d].clone()
            };
            (row, rhs)
        } else {
            (vec![Rational::one(); d], Rational::one())
        }
    };
    let feasible = |x: &[Rational]| {
        x.iter().zip(lo).zip(hi).all(|((v, l), h)| v >= l && v <= h)
            && x.iter().sum::<Rational>().is_one()
            && x.iter().all(|v| !v.is_negative())
    };
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = (0..d).collect();
    loop {
        let (a, b): (Vec<_>, Vec<_>) = chosen.iter().map(|&k| constraint(k)).unzip();
        if let Some(x) = solve(a, b) {
            if feasible(&x) {
                out.push(x);
            }
        }
        // next d-subset of 0..=2d in lexicographic order
        let m = 2 * d + 1;
        let mut i = d;
        loop {
            if i == 0 {
                out.sort();
                out.dedup();
                return Ok(out);
            }
            i -= 1;
            if chosen[i] < m - d + i {
                break;
            }
        }
        chosen[i] += 1;
        for j in i + 1..d {
            chosen[j] = chosen[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{parse, ratio};

    fn v(xs: &[&str]) -> Vec<Rational> {
        xs.iter().map(|s| parse(s).unwrap()).collect()
    }

    #[test]
    fn two_successor_row() {
        let got = brute_force_vertices(&v(&["0.1", "0.8"]), &v(&["0.3", "1"])).unwrap();
        assert_eq!(got, vec![v(&["0.1", "0.9"]), v(&["0.2", "0.8"])]);
    }

    #[test]
    fn full_box_gives_diracs() {
        let got = brute_force_vertices(&v(&["0", "0", "0"]), &v(&["1", "1", "1"])).unwrap();
        assert_eq!(got.len(), 3);
        assert!(got
            .iter()
            .all(|p| p.iter().filter(|x| x.is_one()).count() == 1));
    }

    #[test]
    fn empty_and_point() {
        assert!(brute_force_vertices(&v(&["0.6", "0.6"]), &v(&["1", "1"]))
            .unwrap()
            .is_empty());
        let one_d = brute_force_vertices(&[ratio(0, 1)], &[ratio(1, 1)]).unwrap();
        assert_eq!(one_d, vec![vec![ratio(1, 1)]]);
    }
}
