use std::collections::BTreeSet;

use super::space::{header_violations, Model, StateSpace, Violation};
use super::{Distribution, StateId};
use crate::error::{Error, Result};
use crate::rational;

/// Action-agnostic probabilistic automaton: `T ⊆ S × Disc(S)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pa {
    space: StateSpace,
    trans: Vec<BTreeSet<Distribution>>,
}

impl Pa {
    pub fn from_parts(space: StateSpace, trans: Vec<BTreeSet<Distribution>>) -> Result<Self> {
        if trans.len() != space.len() {
            return Err(Error::Dimension {
                expected: space.len(),
                got: trans.len(),
            });
        }
        Ok(Self { space, trans })
    }

    pub fn builder() -> PaBuilder {
        PaBuilder::default()
    }

    /// Target distributions of the transitions leaving `s`, in canonical order.
    pub fn transitions(&self, s: StateId) -> &BTreeSet<Distribution> {
        &self.trans[s]
    }

    pub fn num_transitions(&self) -> usize {
        self.trans.iter().map(BTreeSet::len).sum()
    }
}

impl Model for Pa {
    fn space(&self) -> &StateSpace {
        &self.space
    }

    fn validate(&self) -> Vec<Violation> {
        let mut out = header_violations(&self.space);
        let n = self.num_states();
        for (s, ts) in self.trans.iter().enumerate() {
            if ts.iter().any(|d| d.support().any(|&t| t >= n)) {
                out.push(Violation::TargetOutOfRange {
                    state: self.state_name(s).to_string(),
                });
            }
        }
        out
    }
}

/// Name-based construction of a [`Pa`].
#[derive(Debug, Default, Clone)]
pub struct PaBuilder {
    states: Vec<(String, BTreeSet<String>)>,
    initial: Option<String>,
    props: BTreeSet<String>,
    trans: Vec<(String, Vec<(String, String)>)>,
}

impl PaBuilder {
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

    /// Adds `from → dist`; masses are decimal or `p/q` strings.
    pub fn transition(mut self, from: &str, dist: &[(&str, &str)]) -> Self {
        self.trans.push((
            from.to_string(),
            dist.iter()
                .map(|(t, p)| (t.to_string(), p.to_string()))
                .collect(),
        ));
        self
    }

    pub fn build(self) -> Result<Pa> {
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
        let mut trans = vec![BTreeSet::new(); names.len()];
        for (from, entries) in &self.trans {
            let entries = entries
                .iter()
                .map(|(t, p)| Ok((find(t)?, rational::parse(p)?)))
                .collect::<Result<Vec<_>>>()?;
            trans[find(from)?].insert(Distribution::new(entries)?);
        }
        let space = StateSpace::new(names, initial, self.props, labels)?;
        Pa::from_parts(space, trans)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_transitions_collapse() {
        let pa = Pa::builder()
            .state("s", ["p"])
            .state("t", ["q"])
            .transition("s", &[("t", "1/2"), ("s", "0.5")])
            .transition("s", &[("s", "1/2"), ("t", "1/2")])
            .transition("t", &[("t", "1")])
            .build()
            .unwrap();
        assert_eq!(pa.transitions(0).len(), 1);
        assert_eq!(pa.num_transitions(), 2);
        assert!(pa.validate().is_empty());
    }

    #[test]
    fn bad_distribution_is_rejected() {
        let r = Pa::builder()
            .state("s", ["p"])
            .transition("s", &[("s", "0.9")])
            .build();
        assert!(matches!(r, Err(Error::Distribution(_))));
    }

    #[test]
    fn labels_must_be_props() {
        let space = StateSpace::new(
            vec!["s".into()],
            0,
            BTreeSet::new(),
            vec![BTreeSet::from(["zzz".to_string()])],
        )
        .unwrap();
        let pa = Pa::from_parts(space, vec![BTreeSet::new()]).unwrap();
        assert_eq!(pa.validate().len(), 1);
    }
}
