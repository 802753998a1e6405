//! Probabilistic bisimulation for PAs and (cooperative) bisimulation for
//! IMDPs.
//!
//! Both are decided the same way: two states with equal labels are
//! equivalent under a partition iff the convex sets of successor
//! distributions over blocks they can reach coincide. For a PA state that
//! set is the hull of its class-projected transitions; for an IMDP state it
//! is the hull of the union of its per-action class polytopes. Refinement
//! splits blocks by that test until nothing changes.

mod quotient;
mod refine;

pub use quotient::{quotient_imdp, quotient_pa};
pub use refine::{
    bisim_imdp, bisim_pa, check_imdp, check_pa, label_partition, refine, BisimReport, BisimWitness,
};

use num_traits::One;

use crate::error::{Error, Result};
use crate::geometry::{
    hull_equal, hull_separation, vpoly_equal, vpoly_separation, IntervalPolytope, Separation,
    VPolytope,
};
use crate::model::{Imdp, Model, Pa, Partition, StateId};
use crate::rational::{self, Rational};

/// Successor polytope of one state, expressed over the blocks of a
/// partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassPolytopeFamily {
    /// Hull of the class-projected transitions of a PA state.
    Pa(VPolytope),
    /// One class polytope per enabled action of an IMDP state.
    Imdp(Vec<IntervalPolytope>),
}

impl ClassPolytopeFamily {
    pub fn equal(&self, other: &Self) -> Result<bool> {
        match (self, other) {
            (Self::Pa(a), Self::Pa(b)) => vpoly_equal(a, b),
            (Self::Imdp(a), Self::Imdp(b)) => hull_equal(a, b),
            _ => Err(Error::Format("mixed model kinds".into())),
        }
    }

    /// A vertex of one side outside the other, if the hulls differ.
    pub fn separation(&self, other: &Self) -> Result<Option<Separation>> {
        match (self, other) {
            (Self::Pa(a), Self::Pa(b)) => vpoly_separation(a, b),
            (Self::Imdp(a), Self::Imdp(b)) => hull_separation(a, b),
            _ => Err(Error::Format("mixed model kinds".into())),
        }
    }
}

/// Models whose states can be compared through class polytopes.
pub trait Bisimulable: Model {
    fn class_family(&self, s: StateId, p: &Partition) -> Result<ClassPolytopeFamily>;
}

impl Bisimulable for Pa {
    fn class_family(&self, s: StateId, p: &Partition) -> Result<ClassPolytopeFamily> {
        Ok(ClassPolytopeFamily::Pa(pa_class_polytope(self, s, p)?))
    }
}

impl Bisimulable for Imdp {
    fn class_family(&self, s: StateId, p: &Partition) -> Result<ClassPolytopeFamily> {
        Ok(ClassPolytopeFamily::Imdp(imdp_class_polytopes(self, s, p)?))
    }
}

/// `H_R(s) = CH({[δ]_R | (s, δ) ∈ T})`, with coordinates indexed by block.
/// Empty when `s` has no transitions.
pub fn pa_class_polytope(a: &Pa, s: StateId, p: &Partition) -> Result<VPolytope> {
    let blocks: Vec<usize> = (0..p.num_blocks()).collect();
    let gens = a
        .transitions(s)
        .iter()
        .map(|d| d.project(p).to_dense(&blocks))
        .collect();
    VPolytope::new(p.num_blocks(), gens)
}

/// `P^R(s, a)` for each enabled `a`: block bounds
/// `[Σ_{s'∈C} lo(s,a,s'), min(1, Σ_{s'∈C} hi(s,a,s'))]`.
pub fn imdp_class_polytopes(m: &Imdp, s: StateId, p: &Partition) -> Result<Vec<IntervalPolytope>> {
    let enabled = m.enabled(s);
    if enabled.is_empty() {
        return Err(Error::Invalid(vec![
            crate::model::Violation::NoEnabledAction {
                state: m.state_name(s).to_string(),
            },
        ]));
    }
    let k = p.num_blocks();
    enabled
        .into_iter()
        .map(|a| {
            let mut lo = vec![rational::zero(); k];
            let mut hi = lo.clone();
            for (t, iv) in m.row(s, a).into_iter().flatten() {
                let b = p.block_of(*t);
                lo[b] += iv.lo();
                hi[b] += iv.hi();
            }
            for h in &mut hi {
                if *h > Rational::one() {
                    *h = Rational::one();
                }
            }
            IntervalPolytope::new(lo, hi)
        })
        .collect()
}

pub fn pa_states_equivalent(a: &Pa, s: StateId, t: StateId, p: &Partition) -> Result<bool> {
    states_equivalent(a, s, t, p)
}

pub fn imdp_states_equivalent(m: &Imdp, s: StateId, t: StateId, p: &Partition) -> Result<bool> {
    states_equivalent(m, s, t, p)
}

fn states_equivalent<M: Bisimulable>(m: &M, s: StateId, t: StateId, p: &Partition) -> Result<bool> {
    if s == t {
        return Ok(true);
    }
    if m.label(s) != m.label(t) {
        return Ok(false);
    }
    m.class_family(s, p)?.equal(&m.class_family(t, p)?)
}
