use num_traits::One;

use crate::error::{Error, Result};
use crate::geometry::{contains, contains_union, IntervalPolytope, Point, VPolytope};
use crate::model::{AnyModel, Imdp, Model, Pa, Partition, StateId};
use crate::rational::{self, Rational};

/// Environment variable overriding the oracle's state cap.
pub const MAX_STATES_VAR: &str = "IMDP_ORACLE_MAX_STATES";
const DEFAULT_MAX_STATES: usize = 6;

pub fn oracle_cap() -> usize {
    std::env::var(MAX_STATES_VAR)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_STATES)
}

fn check_cap(n: usize) -> Result<()> {
    let cap = oracle_cap();
    if n > cap {
        Err(Error::OracleCap { states: n, cap })
    } else {
        Ok(())
    }
}

/// Classes of an equivalence relation given as a full boolean matrix.
fn classes(rel: &[Vec<bool>]) -> Partition {
    Partition::from_keys(rel.len(), |s| (0..rel.len()).find(|&t| rel[s][t]).unwrap())
}

/// Greatest fixpoint: start from "same label" and repeatedly drop every
/// pair `(s, t)` where one side has a step the other cannot match.
fn fixpoint<M: Model>(
    m: &M,
    simulates: impl Fn(StateId, StateId, &Partition) -> Result<bool>,
) -> Result<Partition> {
    let n = m.num_states();
    check_cap(n)?;
    let mut rel: Vec<Vec<bool>> = (0..n)
        .map(|s| (0..n).map(|t| m.label(s) == m.label(t)).collect())
        .collect();
    loop {
        let p = classes(&rel);
        let mut next = rel.clone();
        for s in 0..n {
            for t in 0..n {
                if rel[s][t] && s != t {
                    next[s][t] = simulates(s, t, &p)? && simulates(t, s, &p)?;
                }
            }
        }
        if next == rel {
            return Ok(p);
        }
        rel = next;
    }
}

fn block_point(p: &Partition, mass: impl IntoIterator<Item = (StateId, Rational)>) -> Point {
    let mut x = vec![rational::zero(); p.num_blocks()];
    for (s, w) in mass {
        x[p.block_of(s)] += w;
    }
    x
}

fn pa_block_hull(a: &Pa, t: StateId, p: &Partition) -> Result<Option<VPolytope>> {
    let gens: Vec<Point> = a
        .transitions(t)
        .iter()
        .map(|d| block_point(p, d.iter().map(|(&s, w)| (s, w.clone()))))
        .collect();
    if gens.is_empty() {
        return Ok(None);
    }
    Ok(Some(VPolytope::new(p.num_blocks(), gens)?))
}

/// Every transition of `s` is matched by a combined transition of `t`.
fn pa_step(a: &Pa, s: StateId, t: StateId, p: &Partition) -> Result<bool> {
    let hull = pa_block_hull(a, t, p)?;
    for d in a.transitions(s) {
        let x = block_point(p, d.iter().map(|(&s, w)| (s, w.clone())));
        match &hull {
            None => return Ok(false),
            Some(h) if !contains(h, &x)?.is_inside() => return Ok(false),
            Some(_) => {}
        }
    }
    Ok(true)
}

/// Block-sum polytope of one row, built here rather than borrowed from the
/// decider.
fn row_block_polytope(m: &Imdp, t: StateId, a: usize, p: &Partition) -> Result<IntervalPolytope> {
    let k = p.num_blocks();
    let mut lo = vec![rational::zero(); k];
    let mut hi = vec![rational::zero(); k];
    for (&u, iv) in m.row(t, a).into_iter().flatten() {
        lo[p.block_of(u)] += iv.lo();
        hi[p.block_of(u)] += iv.hi();
    }
    let hi = hi.into_iter().map(|h| h.min(Rational::one())).collect();
    IntervalPolytope::new(lo, hi)
}

/// Every extreme successor distribution of `s`, seen over blocks, lies in
/// the hull of `t`'s cooperative transitions.
fn imdp_step(m: &Imdp, s: StateId, t: StateId, p: &Partition) -> Result<bool> {
    let targets = m
        .enabled(t)
        .into_iter()
        .map(|b| row_block_polytope(m, t, b, p))
        .collect::<Result<Vec<_>>>()?;
    for a in m.enabled(s) {
        let (dims, poly) = m.uncertainty_set(s, a)?;
        for v in poly.vertices() {
            let x = block_point(p, dims.iter().copied().zip(v));
            if targets.is_empty() || !contains_union(&targets, &x)?.is_inside() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn naive_bisim_pa(a: &Pa) -> Result<Partition> {
    fixpoint(a, |s, t, p| pa_step(a, s, t, p))
}

pub fn naive_bisim_imdp(m: &Imdp) -> Result<Partition> {
    m.ensure_valid()?;
    fixpoint(m, |s, t, p| imdp_step(m, s, t, p))
}

pub fn naive_bisim(model: &AnyModel) -> Result<Partition> {
    match model {
        AnyModel::Imdp(m) => naive_bisim_imdp(m),
        AnyModel::Pa(a) => naive_bisim_pa(a),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::disjoint_union_imdp;

    fn two_successor() -> Imdp {
        Imdp::builder()
            .state("t", ["t"])
            .state("u", ["u"])
            .state("v", ["v"])
            .interval("t", "a", "u", "0.1", "0.3")
            .interval("t", "a", "v", "0.8", "1")
            .interval("u", "a", "u", "1", "1")
            .interval("v", "a", "v", "1", "1")
            .build()
            .unwrap()
    }

    #[test]
    fn distinct_labels_give_identity() {
        assert_eq!(
            naive_bisim_imdp(&two_successor()).unwrap(),
            Partition::identity(3)
        );
    }

    #[test]
    fn union_with_copy_pairs_states() {
        let u = disjoint_union_imdp(&two_successor(), &two_successor()).unwrap();
        let p = naive_bisim_imdp(&u.model).unwrap();
        assert_eq!(p.num_blocks(), 3);
        for s in 0..3 {
            assert!(p.same_block(u.left[s], u.right[s]));
        }
    }

    #[test]
    fn pa_sink_vs_loop() {
        let a = Pa::builder()
            .state("dead", ["p"])
            .state("loop", ["p"])
            .transition("loop", &[("loop", "1")])
            .build()
            .unwrap();
        assert_eq!(naive_bisim_pa(&a).unwrap(), Partition::identity(2));
    }

    #[test]
    fn cap_is_enforced() {
        let mut b = Pa::builder();
        let names: Vec<String> = (0..=DEFAULT_MAX_STATES).map(|i| format!("s{i}")).collect();
        for n in &names {
            b = b.state(n, ["p"]);
        }
        let a = b.build().unwrap();
        if std::env::var(MAX_STATES_VAR).is_err() {
            assert!(matches!(naive_bisim_pa(&a), Err(Error::OracleCap { .. })));
        }
    }
}
