//! Synchronous and interleaved composition.
//!
//! Products are restricted to the states reachable from the joint initial
//! state. Product states are named `(s1,s2)`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::model::{
    product_dist, ActionId, Distribution, Imdp, Model, Pa, Row, StateId, StateSpace,
};
use crate::transform::{fold, unfold};

/// Suffixes tagging which component moves in an interleaved product.
pub const LEFT_TAG: &str = "·L";
pub const RIGHT_TAG: &str = "·R";

pub fn pair_name(left: &str, right: &str) -> String {
    format!("({left},{right})")
}

/// Breadth-first exploration of pairs; ids follow discovery order.
struct Explorer {
    ids: HashMap<(StateId, StateId), StateId>,
    order: Vec<(StateId, StateId)>,
    queue: VecDeque<(StateId, StateId)>,
}

impl Explorer {
    fn new(start: (StateId, StateId)) -> Self {
        let mut e = Self {
            ids: HashMap::new(),
            order: Vec::new(),
            queue: VecDeque::new(),
        };
        e.visit(start);
        e
    }

    fn visit(&mut self, pair: (StateId, StateId)) -> StateId {
        if let Some(&id) = self.ids.get(&pair) {
            return id;
        }
        let id = self.order.len();
        self.ids.insert(pair, id);
        self.order.push(pair);
        self.queue.push_back(pair);
        id
    }

    fn next(&mut self) -> Option<(StateId, (StateId, StateId))> {
        let pair = self.queue.pop_front()?;
        Some((self.ids[&pair], pair))
    }
}

fn product_space(
    m1: &impl Model,
    m2: &impl Model,
    order: &[(StateId, StateId)],
) -> Result<StateSpace> {
    let names: Vec<String> = order
        .iter()
        .map(|&(a, b)| pair_name(m1.state_name(a), m2.state_name(b)))
        .collect();
    let labels = order
        .iter()
        .map(|&(a, b)| m1.label(a).union(m2.label(b)).cloned().collect())
        .collect();
    let props: BTreeSet<String> = m1
        .atomic_props()
        .union(m2.atomic_props())
        .cloned()
        .collect();
    StateSpace::new(names, 0, props, labels).map_err(|e| match e {
        Error::DuplicateState(n) => Error::NameClash(n),
        other => other,
    })
}

/// Every pair of transitions synchronizes: `(s1,s2) → δ1 × δ2`.
pub fn pa_sync_product(a1: &Pa, a2: &Pa) -> Result<Pa> {
    let mut ex = Explorer::new((a1.initial(), a2.initial()));
    let mut trans: Vec<BTreeSet<Distribution>> = Vec::new();
    while let Some((id, (s1, s2))) = ex.next() {
        let mut out = BTreeSet::new();
        for d1 in a1.transitions(s1) {
            for d2 in a2.transitions(s2) {
                let joint = product_dist(d1, d2);
                out.insert(joint.map(|&pair| ex.visit(pair)));
            }
        }
        debug_assert_eq!(trans.len(), id);
        trans.push(out);
    }
    Pa::from_parts(product_space(a1, a2, &ex.order)?, trans)
}

/// `F(UF(m1) ⊗ UF(m2))`.
pub fn imdp_sync_product(m1: &Imdp, m2: &Imdp) -> Result<Imdp> {
    fold(&pa_sync_product(&unfold(m1)?, &unfold(m2)?)?)
}

/// Interleaving: action `a·L` moves the left component by `I_l(s_l, a, ·)`
/// with the right one frozen, and symmetrically for `·R`.
pub fn imdp_interleaved_product(ml: &Imdp, mr: &Imdp) -> Result<Imdp> {
    let nl = ml.actions().len();
    let actions: Vec<String> = ml
        .actions()
        .iter()
        .map(|a| format!("{a}{LEFT_TAG}"))
        .chain(mr.actions().iter().map(|a| format!("{a}{RIGHT_TAG}")))
        .collect();
    let mut ex = Explorer::new((ml.initial(), mr.initial()));
    let mut rows: BTreeMap<(StateId, ActionId), Row> = BTreeMap::new();
    while let Some((id, (sl, sr))) = ex.next() {
        for (a, row) in ml.rows_of(sl) {
            let joint = row
                .iter()
                .map(|(&tl, iv)| (ex.visit((tl, sr)), iv.clone()))
                .collect();
            rows.insert((id, a), joint);
        }
        for (b, row) in mr.rows_of(sr) {
            let joint = row
                .iter()
                .map(|(&tr, iv)| (ex.visit((sl, tr)), iv.clone()))
                .collect();
            rows.insert((id, nl + b), joint);
        }
        if rows.range((id, 0)..(id + 1, 0)).next().is_none() {
            return Err(Error::NoTransitions(pair_name(
                ml.state_name(sl),
                mr.state_name(sr),
            )));
        }
    }
    Imdp::from_parts(product_space(ml, mr, &ex.order)?, actions, rows)
}
