use std::collections::BTreeSet;

use super::{Bisimulable, ClassPolytopeFamily};
use crate::error::Result;
use crate::geometry::Separation;
use crate::model::{
    disjoint_union_imdp, disjoint_union_pa, Imdp, Model, Pa, Partition, StateId, Union,
};

pub fn label_partition<M: Model>(m: &M) -> Partition {
    Partition::from_keys(m.num_states(), |s| m.label(s).clone())
}

/// Coarsest bisimulation refining both `initial` and the label partition.
///
/// Each pass computes every state's class polytope family under the current
/// partition and splits each block into groups of equal families. Equality
/// of hulls is an equivalence, so a state only needs comparing against one
/// representative per group.
pub fn refine<M: Bisimulable>(m: &M, initial: &Partition) -> Result<Partition> {
    let mut current = label_partition(m).meet(initial);
    loop {
        let families = (0..m.num_states())
            .map(|s| m.class_family(s, &current))
            .collect::<Result<Vec<_>>>()?;
        let mut blocks: Vec<Vec<StateId>> = Vec::with_capacity(current.num_blocks());
        for block in current.blocks() {
            let mut groups: Vec<Vec<StateId>> = Vec::new();
            for &s in block {
                let mut placed = false;
                for g in groups.iter_mut() {
                    if families[g[0]].equal(&families[s])? {
                        g.push(s);
                        placed = true;
                        break;
                    }
                }
                if !placed {
                    groups.push(vec![s]);
                }
            }
            blocks.extend(groups);
        }
        if blocks.len() == current.num_blocks() {
            return Ok(current);
        }
        current = Partition::from_blocks(m.num_states(), blocks)?;
    }
}

/// Why two initial states ended up in different blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BisimWitness {
    Labels {
        left: BTreeSet<String>,
        right: BTreeSet<String>,
    },
    /// A successor distribution over the final blocks that one initial
    /// state reaches and the other cannot.
    Hulls(Separation),
}

/// Result of comparing two models on their disjoint union.
#[derive(Debug, Clone)]
pub struct BisimReport {
    pub bisimilar: bool,
    /// Coarsest bisimulation on the disjoint union.
    pub partition: Partition,
    /// State names of the union (`1:` / `2:` prefixed).
    pub state_names: Vec<String>,
    pub initials: (StateId, StateId),
    pub witness: Option<BisimWitness>,
}

fn report<M: Bisimulable>(u: Union<M>) -> Result<BisimReport> {
    let partition = refine(&u.model, &Partition::trivial(u.model.num_states()))?;
    let (i1, i2) = u.initials;
    let bisimilar = partition.same_block(i1, i2);
    let witness = if bisimilar {
        None
    } else if u.model.label(i1) != u.model.label(i2) {
        Some(BisimWitness::Labels {
            left: u.model.label(i1).clone(),
            right: u.model.label(i2).clone(),
        })
    } else {
        let f1: ClassPolytopeFamily = u.model.class_family(i1, &partition)?;
        let f2 = u.model.class_family(i2, &partition)?;
        f1.separation(&f2)?.map(BisimWitness::Hulls)
    };
    Ok(BisimReport {
        bisimilar,
        partition,
        state_names: u.model.state_names().to_vec(),
        initials: u.initials,
        witness,
    })
}

pub fn check_pa(a1: &Pa, a2: &Pa) -> Result<BisimReport> {
    a1.ensure_valid()?;
    a2.ensure_valid()?;
    report(disjoint_union_pa(a1, a2)?)
}

pub fn check_imdp(m1: &Imdp, m2: &Imdp) -> Result<BisimReport> {
    m1.ensure_valid()?;
    m2.ensure_valid()?;
    report(disjoint_union_imdp(m1, m2)?)
}

pub fn bisim_pa(a1: &Pa, a2: &Pa) -> Result<bool> {
    Ok(check_pa(a1, a2)?.bisimilar)
}

pub fn bisim_imdp(m1: &Imdp, m2: &Imdp) -> Result<bool> {
    Ok(check_imdp(m1, m2)?.bisimilar)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::disjoint_union_pa;

    fn traffic_light() -> Pa {
        Pa::builder()
            .state("s", ["s"])
            .state("r", ["r"])
            .state("y", ["y"])
            .state("g", ["g"])
            .state("R", ["R"])
            .state("Y", ["Y"])
            .state("G", ["G"])
            .transition("s", &[("r", "0.3"), ("y", "0.1"), ("g", "0.6")])
            .transition("r", &[("R", "1")])
            .transition("r", &[("s", "1")])
            .transition("y", &[("Y", "1")])
            .transition("g", &[("G", "1")])
            .transition("g", &[("s", "1")])
            .build()
            .unwrap()
    }

    fn two_successor(u_hi: &str, v_lo: &str) -> Imdp {
        Imdp::builder()
            .state("t", ["t"])
            .state("u", ["u"])
            .state("v", ["v"])
            .interval("t", "a", "u", "0.1", u_hi)
            .interval("t", "a", "v", v_lo, "1")
            .interval("u", "a", "u", "1", "1")
            .interval("v", "a", "v", "1", "1")
            .build()
            .unwrap()
    }

    #[test]
    fn distinct_labels_give_identity() {
        let a = traffic_light();
        let p = refine(&a, &Partition::trivial(a.num_states())).unwrap();
        assert_eq!(p, Partition::identity(7));
        let r = a.state_id("r").unwrap();
        let y = a.state_id("y").unwrap();
        assert!(!super::super::pa_states_equivalent(&a, r, y, &p).unwrap());
    }

    #[test]
    fn union_with_copy_pairs_states() {
        let a = traffic_light();
        let u = disjoint_union_pa(&a, &a).unwrap();
        let p = refine(&u.model, &Partition::trivial(14)).unwrap();
        assert_eq!(p.num_blocks(), 7);
        for s in 0..7 {
            assert!(p.same_block(u.left[s], u.right[s]));
        }
    }

    #[test]
    fn model_is_bisimilar_to_itself() {
        assert!(bisim_pa(&traffic_light(), &traffic_light()).unwrap());
        assert!(bisim_imdp(&two_successor("0.3", "0.8"), &two_successor("0.3", "0.8")).unwrap());
    }

    #[test]
    fn union_of_two_successor_with_itself_relates_t() {
        let m = two_successor("0.3", "0.8");
        let u = disjoint_union_imdp(&m, &m).unwrap();
        let p = refine(&u.model, &Partition::trivial(6)).unwrap();
        assert!(p.same_block(u.left[0], u.right[0]));
    }

    #[test]
    fn widened_interval_is_not_bisimilar() {
        // u's upper bound alone is inert: v ≥ 0.8 caps u at 0.2
        assert!(bisim_imdp(&two_successor("0.3", "0.8"), &two_successor("0.4", "0.8")).unwrap());
        let r = check_imdp(&two_successor("0.3", "0.8"), &two_successor("0.4", "0.6")).unwrap();
        assert!(!r.bisimilar);
        match r.witness {
            Some(BisimWitness::Hulls(sep)) => {
                assert!(!sep.certificate.is_inside());
                assert_eq!(sep.side, crate::geometry::Side::Right);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn label_mismatch_witness() {
        let a = traffic_light();
        let b = Pa::builder()
            .state("q", ["other"])
            .transition("q", &[("q", "1")])
            .build()
            .unwrap();
        let r = check_pa(&a, &b).unwrap();
        assert!(!r.bisimilar);
        assert!(matches!(r.witness, Some(BisimWitness::Labels { .. })));
    }

    #[test]
    fn refinement_respects_initial_partition() {
        let a = traffic_light();
        let u = disjoint_union_pa(&a, &a).unwrap();
        let sides = Partition::from_keys(14, |s| s < 7);
        let p = refine(&u.model, &sides).unwrap();
        assert_eq!(p, Partition::identity(14));
        assert!(p.refines(&label_partition(&u.model)));
    }
}
