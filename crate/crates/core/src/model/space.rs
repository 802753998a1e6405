use std::collections::{BTreeSet, HashMap};
use std::fmt;

use super::StateId;
use crate::error::{Error, Result};

/// State names, initial state, propositions and labelling shared by both
/// model kinds. Names are opaque strings; internally states are dense ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateSpace {
    names: Vec<String>,
    index: HashMap<String, StateId>,
    initial: StateId,
    atomic_props: BTreeSet<String>,
    labels: Vec<BTreeSet<String>>,
}

impl StateSpace {
    pub fn new(
        names: Vec<String>,
        initial: StateId,
        atomic_props: BTreeSet<String>,
        labels: Vec<BTreeSet<String>>,
    ) -> Result<Self> {
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::DuplicateState(n.clone()));
            }
        }
        if labels.len() != names.len() {
            return Err(Error::Dimension {
                expected: names.len(),
                got: labels.len(),
            });
        }
        Ok(Self {
            names,
            index,
            initial,
            atomic_props,
            labels,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// Read access common to [`Imdp`](super::Imdp) and [`Pa`](super::Pa).
pub trait Model {
    fn space(&self) -> &StateSpace;

    fn num_states(&self) -> usize {
        self.space().names.len()
    }

    fn initial(&self) -> StateId {
        self.space().initial
    }

    fn state_name(&self, s: StateId) -> &str {
        &self.space().names[s]
    }

    fn state_names(&self) -> &[String] {
        &self.space().names
    }

    fn state_id(&self, name: &str) -> Result<StateId> {
        self.space()
            .index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    fn label(&self, s: StateId) -> &BTreeSet<String> {
        &self.space().labels[s]
    }

    fn atomic_props(&self) -> &BTreeSet<String> {
        &self.space().atomic_props
    }

    fn validate(&self) -> Vec<Violation>;

    fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Invalid(v))
        }
    }
}

/// One broken model invariant, naming the state/action/interval at fault.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NoStates,
    InitialOutOfRange,
    LabelNotInAp {
        state: String,
        prop: String,
    },
    NoEnabledAction {
        state: String,
    },
    EmptyUncertainty {
        state: String,
        action: String,
        sum_lo: String,
        sum_hi: String,
    },
    TargetOutOfRange {
        state: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoStates => write!(f, "model has no states"),
            Violation::InitialOutOfRange => write!(f, "initial state is not a state"),
            Violation::LabelNotInAp { state, prop } => {
                write!(f, "label `{prop}` of {state} is not an atomic proposition")
            }
            Violation::NoEnabledAction { state } => write!(f, "no enabled action at {state}"),
            Violation::EmptyUncertainty {
                state,
                action,
                sum_lo,
                sum_hi,
            } => write!(
                f,
                "U({state},{action}) empty: sum of lower bounds {sum_lo}, sum of upper bounds {sum_hi}"
            ),
            Violation::TargetOutOfRange { state } => {
                write!(f, "transition from {state} targets an unknown state")
            }
        }
    }
}

pub(crate) fn header_violations(space: &StateSpace) -> Vec<Violation> {
    let mut out = Vec::new();
    if space.names.is_empty() {
        out.push(Violation::NoStates);
    }
    if space.initial >= space.names.len() {
        out.push(Violation::InitialOutOfRange);
    }
    for (s, label) in space.labels.iter().enumerate() {
        for prop in label {
            if !space.atomic_props.contains(prop) {
                out.push(Violation::LabelNotInAp {
                    state: space.names[s].clone(),
                    prop: prop.clone(),
                });
            }
        }
    }
    out
}
