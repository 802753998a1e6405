use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use super::space::{header_violations, Model, StateSpace, Violation};
use super::{Interval, StateId};
use crate::error::{Error, Result};
use crate::geometry::IntervalPolytope;
use crate::rational::{self, Rational};

pub type ActionId = usize;

/// Successor intervals of one `(state, action)` pair. Absent successors
/// carry `[0, 0]`.
pub type Row = BTreeMap<StateId, Interval>;

/// Interval Markov decision process.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Imdp {
    space: StateSpace,
    actions: Vec<String>,
    rows: BTreeMap<(StateId, ActionId), Row>,
}

impl Imdp {
    /// Assembles an IMDP from already-resolved ids. Zero intervals and
    /// empty rows are dropped. Ids must be in range.
    pub fn from_parts(
        space: StateSpace,
        actions: Vec<String>,
        rows: BTreeMap<(StateId, ActionId), Row>,
    ) -> Result<Self> {
        let n = space.len();
        let mut clean = BTreeMap::new();
        for ((s, a), row) in rows {
            if s >= n {
                return Err(Error::UnknownState(format!("#{s}")));
            }
            if a >= actions.len() {
                return Err(Error::Format(format!("unknown action #{a}")));
            }
            let row: Row = row.into_iter().filter(|(_, iv)| !iv.is_zero()).collect();
            if let Some(&t) = row.keys().find(|&&t| t >= n) {
                return Err(Error::UnknownState(format!("#{t}")));
            }
            if !row.is_empty() {
                clean.insert((s, a), row);
            }
        }
        let mut seen = BTreeSet::new();
        for a in &actions {
            if !seen.insert(a) {
                return Err(Error::Format(format!("duplicate action `{a}`")));
            }
        }
        Ok(Self {
            space,
            actions,
            rows: clean,
        })
    }

    pub fn builder() -> ImdpBuilder {
        ImdpBuilder::default()
    }

    pub fn actions(&self) -> &[String] {
        &self.actions
    }

    pub fn action_name(&self, a: ActionId) -> &str {
        &self.actions[a]
    }

    pub fn action_id(&self, name: &str) -> Option<ActionId> {
        self.actions.iter().position(|a| a == name)
    }

    /// Actions with at least one non-zero interval out of `s`.
    pub fn enabled(&self, s: StateId) -> Vec<ActionId> {
        self.rows
            .range((s, 0)..(s + 1, 0))
            .map(|(&(_, a), _)| a)
            .collect()
    }

    pub fn row(&self, s: StateId, a: ActionId) -> Option<&Row> {
        self.rows.get(&(s, a))
    }

    pub fn rows(&self) -> impl Iterator<Item = ((StateId, ActionId), &Row)> {
        self.rows.iter().map(|(&k, r)| (k, r))
    }

    pub fn rows_of(&self, s: StateId) -> impl Iterator<Item = (ActionId, &Row)> {
        self.rows
            .range((s, 0)..(s + 1, 0))
            .map(|(&(_, a), r)| (a, r))
    }

    pub fn interval(&self, s: StateId, a: ActionId, t: StateId) -> Interval {
        self.row(s, a)
            .and_then(|r| r.get(&t))
            .cloned()
            .unwrap_or_else(Interval::zero)
    }

    /// The uncertainty set `U(s, a)` as a polytope over the row's support,
    /// returned together with the support (the polytope's coordinates).
    pub fn uncertainty_set(
        &self,
        s: StateId,
        a: ActionId,
    ) -> Result<(Vec<StateId>, IntervalPolytope)> {
        let row = self.row(s, a).ok_or_else(|| {
            Error::EmptyPolytope(format!(
                "action {} not enabled at {}",
                self.action_name(a),
                self.state_name(s)
            ))
        })?;
        let dims: Vec<StateId> = row.keys().copied().collect();
        let lo = row.values().map(|iv| iv.lo().clone()).collect();
        let hi = row.values().map(|iv| iv.hi().clone()).collect();
        Ok((dims, IntervalPolytope::new(lo, hi)?))
    }
}

impl Model for Imdp {
    fn space(&self) -> &StateSpace {
        &self.space
    }

    fn validate(&self) -> Vec<Violation> {
        let mut out = header_violations(&self.space);
        for s in 0..self.num_states() {
            if self.enabled(s).is_empty() {
                out.push(Violation::NoEnabledAction {
                    state: self.state_name(s).to_string(),
                });
            }
        }
        for ((s, a), row) in &self.rows {
            let (sum_lo, sum_hi) = row_sums(row);
            if sum_lo > Rational::one() || sum_hi < Rational::one() {
                out.push(Violation::EmptyUncertainty {
                    state: self.state_name(*s).to_string(),
                    action: self.action_name(*a).to_string(),
                    sum_lo: rational::format(&sum_lo),
                    sum_hi: rational::format(&sum_hi),
                });
            }
        }
        out
    }
}

/// Name-based construction of an [`Imdp`].
///
/// States appear in declaration order; actions in order of first use.
/// Propositions used in labels are added to the proposition set.
#[derive(Debug, Default, Clone)]
pub struct ImdpBuilder {
    states: Vec<(String, BTreeSet<String>)>,
    initial: Option<String>,
    props: BTreeSet<String>,
    actions: Vec<String>,
    entries: Vec<(String, String, String, Interval)>,
}

impl ImdpBuilder {
    pub fn state<I, P>(mut self, name: &str, labels: I) -> Self
    where
        I: IntoIterator<Item = P>,
        P: Into<String>,
    {
        let labels: BTreeSet<String> = labels.into_iter().map(Into::into).collect();
        self.props.extend(labels.iter().cloned());
        self.states.push((name.to_string(), labels));
        self
    }

    pub fn initial(mut self, name: &str) -> Self {
        self.initial = Some(name.to_string());
        self
    }

    pub fn prop(mut self, p: &str) -> Self {
        self.props.insert(p.to_string());
        self
    }

    pub fn action(mut self, a: &str) -> Self {
        if !self.actions.iter().any(|x| x == a) {
            self.actions.push(a.to_string());
        }
        self
    }

    pub fn transition(mut self, from: &str, action: &str, to: &str, interval: Interval) -> Self {
        self = self.action(action);
        self.entries.push((
            from.to_string(),
            action.to_string(),
            to.to_string(),
            interval,
        ));
        self
    }

    /// Shorthand for [`transition`](Self::transition) with decimal or
    /// fraction bounds. Panics on malformed input; meant for fixtures.
    pub fn interval(self, from: &str, action: &str, to: &str, lo: &str, hi: &str) -> Self {
        let iv = Interval::new(rational::parse(lo).unwrap(), rational::parse(hi).unwrap()).unwrap();
        self.transition(from, action, to, iv)
    }

    pub fn build(self) -> Result<Imdp> {
        let names: Vec<String> = self.states.iter().map(|(n, _)| n.clone()).collect();
        let labels = self.states.into_iter().map(|(_, l)| l).collect();
        let initial_name = self
            .initial
            .or_else(|| names.first().cloned())
            .ok_or_else(|| Error::Format("no states".into()))?;
        let find = |n: &str| {
            names
                .iter()
                .position(|x| x == n)
                .ok_or_else(|| Error::UnknownState(n.to_string()))
        };
        let initial = find(&initial_name)?;
        let mut rows: BTreeMap<(StateId, ActionId), Row> = BTreeMap::new();
        for (from, action, to, iv) in &self.entries {
            let a = self.actions.iter().position(|x| x == action).unwrap();
            rows.entry((find(from)?, a))
                .or_default()
                .insert(find(to)?, iv.clone());
        }
        let space = StateSpace::new(names, initial, self.props, labels)?;
        Imdp::from_parts(space, self.actions, rows)
    }
}

/// `(Σ lo, Σ hi)` over a row.
pub(crate) fn row_sums(row: &Row) -> (Rational, Rational) {
    let mut lo = Rational::zero();
    let mut hi = Rational::zero();
    for iv in row.values() {
        lo += iv.lo();
        hi += iv.hi();
    }
    (lo, hi)
}
