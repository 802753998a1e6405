use std::collections::{BTreeMap, BTreeSet};

use super::space::{Model, StateSpace};
use super::{Imdp, Pa, StateId};
use crate::error::Result;

/// Disjoint union of two models of the same kind.
///
/// Left states keep ids `0..n1`, right states are shifted by `n1`. Names
/// are prefixed `1:` and `2:`. `initials` records both original initial
/// states; the union's own initial state is the left one.
#[derive(Debug, Clone)]
pub struct Union<M> {
    pub model: M,
    pub left: Vec<StateId>,
    pub right: Vec<StateId>,
    pub initials: (StateId, StateId),
}

fn union_space(a: &impl Model, b: &impl Model) -> Result<StateSpace> {
    let names = a
        .state_names()
        .iter()
        .map(|n| format!("1:{n}"))
        .chain(b.state_names().iter().map(|n| format!("2:{n}")))
        .collect();
    let labels = (0..a.num_states())
        .map(|s| a.label(s).clone())
        .chain((0..b.num_states()).map(|s| b.label(s).clone()))
        .collect();
    let props: BTreeSet<String> = a.atomic_props().union(b.atomic_props()).cloned().collect();
    StateSpace::new(names, a.initial(), props, labels)
}

fn maps(n1: usize, n2: usize) -> (Vec<StateId>, Vec<StateId>) {
    ((0..n1).collect(), (n1..n1 + n2).collect())
}

pub fn disjoint_union_pa(a: &Pa, b: &Pa) -> Result<Union<Pa>> {
    let n1 = a.num_states();
    let trans = (0..n1)
        .map(|s| a.transitions(s).clone())
        .chain((0..b.num_states()).map(|s| {
            b.transitions(s)
                .iter()
                .map(|d| d.map(|&t| t + n1))
                .collect()
        }))
        .collect();
    let model = Pa::from_parts(union_space(a, b)?, trans)?;
    let (left, right) = maps(n1, b.num_states());
    Ok(Union {
        model,
        initials: (a.initial(), b.initial() + n1),
        left,
        right,
    })
}

/// Actions are merged by name.
pub fn disjoint_union_imdp(a: &Imdp, b: &Imdp) -> Result<Union<Imdp>> {
    let n1 = a.num_states();
    let mut actions: Vec<String> = a.actions().to_vec();
    for act in b.actions() {
        if !actions.contains(act) {
            actions.push(act.clone());
        }
    }
    let b_action: Vec<usize> = b
        .actions()
        .iter()
        .map(|x| actions.iter().position(|y| y == x).unwrap())
        .collect();
    let mut rows = BTreeMap::new();
    for (key, row) in a.rows() {
        rows.insert(key, row.clone());
    }
    for ((s, act), row) in b.rows() {
        let row = row.iter().map(|(&t, iv)| (t + n1, iv.clone())).collect();
        rows.insert((s + n1, b_action[act]), row);
    }
    let model = Imdp::from_parts(union_space(a, b)?, actions, rows)?;
    let (left, right) = maps(n1, b.num_states());
    Ok(Union {
        model,
        initials: (a.initial(), b.initial() + n1),
        left,
        right,
    })
}
