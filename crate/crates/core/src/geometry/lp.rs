//! Exact phase-1 simplex for `A x = b, x ≥ 0`.
//!
//! Dense tableau over rationals, Bland's rule for entering and leaving
//! variables so degenerate pivots cannot cycle. Infeasibility is reported
//! with a Farkas ray `y` such that `Aᵀy ≥ 0` and `bᵀy < 0`.

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    /// A non-negative solution of `A x = b`.
    Feasible(Vec<Rational>),
    /// Farkas ray `y`: `Aᵀy ≥ 0` componentwise and `bᵀy < 0`.
    Infeasible(Vec<Rational>),
}

/// Decides feasibility of `A x = b, x ≥ 0` where `a` is given row-wise.
pub fn feasibility(a: &[Vec<Rational>], b: &[Rational]) -> Feasibility {
    let m = a.len();
    assert_eq!(m, b.len(), "row count mismatch");
    let n = a.first().map_or(0, Vec::len);
    assert!(a.iter().all(|r| r.len() == n), "ragged constraint matrix");

    // Row sign flips so the right-hand side is non-negative.
    let sign: Vec<bool> = b.iter().map(|x| x.is_negative()).collect();
    let width = n + m + 1;
    let rhs = n + m;
    let mut tab: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let mut row = vec![Rational::zero(); width];
            for j in 0..n {
                row[j] = if sign[i] { -&a[i][j] } else { a[i][j].clone() };
            }
            row[n + i] = Rational::one();
            row[rhs] = if sign[i] { -&b[i] } else { b[i].clone() };
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Reduced costs of the phase-1 objective Σ artificials; the rhs cell
    // holds minus the objective value.
    let mut cost = vec![Rational::zero(); width];
    for row in &tab {
        for j in 0..n {
            cost[j] -= &row[j];
        }
        cost[rhs] -= &row[rhs];
    }

    while let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for (i, row) in tab.iter().enumerate() {
            if !row[enter].is_positive() {
                continue;
            }
            let ratio = &row[rhs] / &row[enter];
            let better = match &leave {
                None => true,
                Some((k, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*k]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // The phase-1 objective is bounded below by zero, so some row
        // always limits the step.
        let (r, _) = leave.expect("phase-1 objective is bounded");
        pivot(&mut tab, &mut cost, r, enter);
        basis[r] = enter;
    }

    if cost[rhs].is_zero() {
        let mut x = vec![Rational::zero(); n];
        for (i, &v) in basis.iter().enumerate() {
            if v < n {
                x[v] = tab[i][rhs].clone();
            }
        }
        Feasibility::Feasible(x)
    } else {
        // Reduced cost of artificial i is 1 - y_i for the phase-1 duals y,
        // which satisfy yᵀA' ≤ 0 and yᵀb' > 0 on the sign-adjusted system.
        let y = (0..m)
            .map(|i| {
                let dual = Rational::one() - &cost[n + i];
                if sign[i] {
                    dual
                } else {
                    -dual
                }
            })
            .collect();
        Feasibility::Infeasible(y)
    }
}

fn pivot(tab: &mut [Vec<Rational>], cost: &mut [Rational], r: usize, c: usize) {
    let p = tab[r][c].clone();
    if !p.is_one() {
        for x in tab[r].iter_mut() {
            if !x.is_zero() {
                *x /= &p;
            }
        }
    }
    let pivot_row = tab[r].clone();
    let nz: Vec<usize> = (0..pivot_row.len())
        .filter(|&j| !pivot_row[j].is_zero())
        .collect();
    let eliminate = |row: &mut Vec<Rational>| {
        let f = row[c].clone();
        if f.is_zero() {
            return;
        }
        for &j in &nz {
            row[j] -= &f * &pivot_row[j];
        }
    };
    for (i, row) in tab.iter_mut().enumerate() {
        if i != r {
            eliminate(row);
        }
    }
    let mut cost_row = cost.to_vec();
    eliminate(&mut cost_row);
    cost.clone_from_slice(&cost_row);
}

/// Checks a Farkas ray against the system without any pivoting.
pub fn is_farkas_ray(a: &[Vec<Rational>], b: &[Rational], y: &[Rational]) -> bool {
    if y.len() != a.len() {
        return false;
    }
    let n = a.first().map_or(0, Vec::len);
    let column_ok = (0..n).all(|j| {
        let s: Rational = a.iter().zip(y).map(|(row, yi)| &row[j] * yi).sum();
        !s.is_negative()
    });
    let by: Rational = b.iter().zip(y).map(|(bi, yi)| bi * yi).sum();
    column_ok && by.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn rows(v: &[&[i64]]) -> Vec<Vec<Rational>> {
        v.iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect()
    }

    fn check(a: &[Vec<Rational>], b: &[Rational]) -> bool {
        match feasibility(a, b) {
            Feasibility::Feasible(x) => {
                assert!(x.iter().all(|v| !v.is_negative()));
                for (row, bi) in a.iter().zip(b) {
                    let lhs: Rational = row.iter().zip(&x).map(|(p, q)| p * q).sum();
                    assert_eq!(&lhs, bi);
                }
                true
            }
            Feasibility::Infeasible(y) => {
                assert!(is_farkas_ray(a, b, &y));
                false
            }
        }
    }

    #[test]
    fn simple_feasible() {
        let a = rows(&[&[1, 1, 0], &[0, 1, 1]]);
        assert!(check(&a, &[int(1), int(1)]));
    }

    #[test]
    fn simple_infeasible() {
        // x + y = 1 and x + y = 2
        let a = rows(&[&[1, 1], &[1, 1]]);
        assert!(!check(&a, &[int(1), int(2)]));
        // x = -1
        assert!(!check(&rows(&[&[1]]), &[int(-1)]));
    }

    #[test]
    fn negative_rhs_rows() {
        // -x - y = -1, x - y = 0 → x = y = 1/2
        let a = rows(&[&[-1, -1], &[1, -1]]);
        match feasibility(&a, &[int(-1), int(0)]) {
            Feasibility::Feasible(x) => assert_eq!(x, vec![ratio(1, 2), ratio(1, 2)]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's classic cycling instance turned into a feasibility problem
        // by fixing the objective at its optimum.
        let a = vec![
            vec![
                ratio(1, 4),
                int(-60),
                ratio(-1, 25),
                int(9),
                int(1),
                int(0),
                int(0),
            ],
            vec![
                ratio(1, 2),
                int(-90),
                ratio(-1, 50),
                int(3),
                int(0),
                int(1),
                int(0),
            ],
            vec![int(0), int(0), int(1), int(0), int(0), int(0), int(1)],
            vec![
                ratio(3, 4),
                int(-150),
                ratio(1, 50),
                int(-6),
                int(0),
                int(0),
                int(0),
            ],
        ];
        let b = vec![int(0), int(0), int(1), ratio(1, 20)];
        assert!(check(&a, &b));
        let b_bad = vec![int(0), int(0), int(1), ratio(1, 10)];
        assert!(!check(&a, &b_bad));
    }

    #[test]
    fn empty_system() {
        assert_eq!(feasibility(&[], &[]), Feasibility::Feasible(vec![]));
    }
}
