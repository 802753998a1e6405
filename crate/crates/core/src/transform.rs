//! Unfolding IMDPs into PAs and folding PAs back into IMDPs.
//!
//! Unfolding replaces every uncertainty set by its extreme points, one PA
//! transition each. Folding replaces the hull of a state's transitions by
//! its coordinate projections, which over-approximates the hull; see
//! [`demonstrate_incompleteness`].

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::geometry::{contains, IntervalPolytope, MembershipCertificate, VPolytope};
use crate::model::{Distribution, Imdp, Interval, Model, Pa, Row, StateId, FOLD_ACTION};
use crate::rational::Rational;

/// Transitions of the unfolded PA at `s`: the vertices of every `U(s, a)`.
pub fn unfold_state(m: &Imdp, s: StateId) -> Result<BTreeSet<Distribution>> {
    let mut out = BTreeSet::new();
    for a in m.enabled(s) {
        let (dims, poly) = m.uncertainty_set(s, a)?;
        for v in poly.vertices() {
            out.insert(Distribution::from_dense(&dims, &v)?);
        }
    }
    Ok(out)
}

pub fn unfold(m: &Imdp) -> Result<Pa> {
    m.ensure_valid()?;
    let trans = (0..m.num_states())
        .map(|s| unfold_state(m, s))
        .collect::<Result<Vec<_>>>()?;
    Pa::from_parts(m.space().clone(), trans)
}

/// Per-successor `[min, max]` over a non-empty set of distributions.
pub fn fold_row<'a>(dists: impl IntoIterator<Item = &'a Distribution>) -> Result<Row> {
    let dists: Vec<&Distribution> = dists.into_iter().collect();
    if dists.is_empty() {
        return Err(Error::NoGenerators);
    }
    let targets: BTreeSet<StateId> = dists.iter().flat_map(|d| d.support().copied()).collect();
    let mut row = Row::new();
    for t in targets {
        let masses: Vec<Rational> = dists.iter().map(|d| d.get(&t)).collect();
        let lo = masses.iter().min().unwrap().clone();
        let hi = masses.iter().max().unwrap().clone();
        row.insert(t, Interval::new(lo, hi)?);
    }
    Ok(row)
}

/// Single-action IMDP whose intervals project each state's transition hull.
pub fn fold(a: &Pa) -> Result<Imdp> {
    a.ensure_valid()?;
    let mut rows = BTreeMap::new();
    for s in 0..a.num_states() {
        let ts = a.transitions(s);
        if ts.is_empty() {
            return Err(Error::NoTransitions(a.state_name(s).to_string()));
        }
        rows.insert((s, 0), fold_row(ts)?);
    }
    Imdp::from_parts(a.space().clone(), vec![FOLD_ACTION.to_string()], rows)
}

/// A distribution allowed by the folded IMDP at `state` that no combined
/// transition of the original PA reaches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncompletenessWitness {
    pub state: StateId,
    pub distribution: Distribution,
    /// Separates `distribution` from the hull of the state's transitions,
    /// over the coordinates `dims`.
    pub dims: Vec<StateId>,
    pub certificate: MembershipCertificate,
}

/// Searches the vertices of every folded uncertainty set for a point
/// outside the original transition hull. States without transitions are
/// skipped.
pub fn demonstrate_incompleteness(a: &Pa) -> Result<Option<IncompletenessWitness>> {
    a.ensure_valid()?;
    for s in 0..a.num_states() {
        let ts = a.transitions(s);
        if ts.len() < 2 {
            continue;
        }
        let row = fold_row(ts)?;
        let dims: Vec<StateId> = row.keys().copied().collect();
        let bounds: Vec<Interval> = row.values().cloned().collect();
        let folded = IntervalPolytope::from_intervals(&bounds)?;
        let hull = VPolytope::new(dims.len(), ts.iter().map(|d| d.to_dense(&dims)).collect())?;
        for v in folded.vertices() {
            let cert = contains(&hull, &v)?;
            if !cert.is_inside() {
                return Ok(Some(IncompletenessWitness {
                    state: s,
                    distribution: Distribution::from_dense(&dims, &v)?,
                    dims,
                    certificate: cert,
                }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{parse, ratio};

    fn dist(pairs: &[(StateId, &str)]) -> Distribution {
        Distribution::new(pairs.iter().map(|&(s, p)| (s, parse(p).unwrap()))).unwrap()
    }

    fn loops(b: crate::model::PaBuilder, names: &[&str]) -> crate::model::PaBuilder {
        names.iter().fold(b, |b, n| b.transition(n, &[(n, "1")]))
    }

    #[test]
    fn point_intervals_unfold_to_single_transitions() {
        let m = Imdp::builder()
            .state("s", ["p"])
            .state("t", ["q"])
            .interval("s", "a", "s", "1/4", "1/4")
            .interval("s", "a", "t", "3/4", "3/4")
            .interval("s", "b", "t", "1", "1")
            .interval("t", "a", "t", "1", "1")
            .build()
            .unwrap();
        let pa = unfold(&m).unwrap();
        let expect: BTreeSet<_> = [dist(&[(0, "1/4"), (1, "3/4")]), dist(&[(1, "1")])].into();
        assert_eq!(pa.transitions(0), &expect);
        assert_eq!(pa.transitions(1).len(), 1);
    }

    #[test]
    fn full_simplex_row_unfolds_to_diracs() {
        let mut b = Imdp::builder()
            .state("s", ["p"])
            .state("x", ["x"])
            .state("y", ["y"]);
        for t in ["s", "x", "y"] {
            b = b.interval("s", "a", t, "0", "1");
        }
        let m = b
            .interval("x", "a", "x", "1", "1")
            .interval("y", "a", "y", "1", "1")
            .build()
            .unwrap();
        let pa = unfold(&m).unwrap();
        let expect: BTreeSet<_> = (0..3).map(Distribution::dirac).collect();
        assert_eq!(pa.transitions(0), &expect);
    }

    #[test]
    fn unfold_rejects_invalid() {
        let m = Imdp::builder()
            .state("s", ["p"])
            .interval("s", "a", "s", "0.2", "0.3")
            .build()
            .unwrap();
        assert!(matches!(unfold(&m), Err(Error::Invalid(_))));
    }

    #[test]
    fn fold_single_transition_gives_points() {
        let pa = loops(
            Pa::builder()
                .state("s", ["p"])
                .state("t", ["q"])
                .transition("s", &[("s", "1/3"), ("t", "2/3")]),
            &["t"],
        )
        .build()
        .unwrap();
        let m = fold(&pa).unwrap();
        assert_eq!(m.actions(), &["f".to_string()]);
        assert_eq!(m.interval(0, 0, 0), Interval::point(ratio(1, 3)).unwrap());
        assert_eq!(m.interval(0, 0, 1), Interval::point(ratio(2, 3)).unwrap());
    }

    #[test]
    fn fold_two_diracs() {
        let pa = loops(
            Pa::builder()
                .state("s", ["p"])
                .state("t", ["q"])
                .transition("s", &[("s", "1")])
                .transition("s", &[("t", "1")]),
            &["t"],
        )
        .build()
        .unwrap();
        let m = fold(&pa).unwrap();
        let full = Interval::new(ratio(0, 1), ratio(1, 1)).unwrap();
        assert_eq!(m.interval(0, 0, 0), full);
        assert_eq!(m.interval(0, 0, 1), full);
        assert!(demonstrate_incompleteness(&pa).unwrap().is_none());
    }

    #[test]
    fn fold_needs_transitions() {
        let pa = Pa::builder().state("s", ["p"]).build().unwrap();
        assert_eq!(fold(&pa), Err(Error::NoTransitions("s".into())));
    }

    #[test]
    fn single_transition_is_lossless() {
        let pa = loops(Pa::builder().state("s", ["p"]), &["s"])
            .build()
            .unwrap();
        assert!(demonstrate_incompleteness(&pa).unwrap().is_none());
    }
}
