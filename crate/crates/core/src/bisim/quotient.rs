use std::collections::{BTreeMap, BTreeSet};

use num_traits::One;

use super::{states_equivalent, Bisimulable};
use crate::error::{Error, Result};
use crate::model::{Imdp, Interval, Model, Pa, Partition, Row, StateSpace};
use crate::rational::{self, Rational};

fn check_bisimulation<M: Bisimulable>(m: &M, p: &Partition) -> Result<()> {
    if p.num_states() != m.num_states() {
        return Err(Error::BadPartition);
    }
    for block in p.blocks() {
        let rep = block[0];
        for &s in &block[1..] {
            if !states_equivalent(m, rep, s, p)? {
                return Err(Error::NotBisimulation(
                    m.state_name(rep).to_string(),
                    m.state_name(s).to_string(),
                ));
            }
        }
    }
    Ok(())
}

/// One state per block, named and labelled after the block's smallest member.
fn block_space(m: &impl Model, p: &Partition) -> Result<StateSpace> {
    let names = p
        .blocks()
        .iter()
        .map(|b| m.state_name(b[0]).to_string())
        .collect();
    let labels = p.blocks().iter().map(|b| m.label(b[0]).clone()).collect();
    StateSpace::new(
        names,
        p.block_of(m.initial()),
        m.atomic_props().clone(),
        labels,
    )
}

/// Block-level PA: `([s], [δ])` for every `(s, δ) ∈ T`.
pub fn quotient_pa(a: &Pa, p: &Partition) -> Result<Pa> {
    check_bisimulation(a, p)?;
    let trans = p
        .blocks()
        .iter()
        .map(|block| {
            block
                .iter()
                .flat_map(|&s| a.transitions(s).iter().map(|d| d.project(p)))
                .collect::<BTreeSet<_>>()
        })
        .collect();
    Pa::from_parts(block_space(a, p)?, trans)
}

/// Block-level IMDP whose uncertainty sets are the class polytopes of each
/// block's smallest member: `I([s], a, C) = [Σ_C lo, min(1, Σ_C hi)]`.
pub fn quotient_imdp(m: &Imdp, p: &Partition) -> Result<Imdp> {
    check_bisimulation(m, p)?;
    let mut rows = BTreeMap::new();
    for (b, block) in p.blocks().iter().enumerate() {
        for (a, row) in m.rows_of(block[0]) {
            let mut sums: BTreeMap<usize, (Rational, Rational)> = BTreeMap::new();
            for (&t, iv) in row {
                let e = sums
                    .entry(p.block_of(t))
                    .or_insert_with(|| (rational::zero(), rational::zero()));
                e.0 += iv.lo();
                e.1 += iv.hi();
            }
            let block_row = sums
                .into_iter()
                .map(|(c, (lo, hi))| Ok((c, Interval::new(lo, hi.min(Rational::one()))?)))
                .collect::<Result<Row>>()?;
            rows.insert((b, a), block_row);
        }
    }
    Imdp::from_parts(block_space(m, p)?, m.actions().to_vec(), rows)
}
