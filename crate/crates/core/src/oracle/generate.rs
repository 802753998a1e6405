use std::collections::{BTreeMap, BTreeSet};

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bisim::imdp_class_polytopes;
use crate::geometry::{hull_equal, IntervalPolytope};
use crate::model::{
    convex_combine, Distribution, Imdp, Interval, Model, Pa, Partition, Row, StateId, StateSpace,
};
use crate::rational::{ratio, Rational};

/// Common denominator of every generated probability.
const DENOM: i64 = 20;
const PROPS: [&str; 2] = ["p", "q"];

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_space(rng: &mut impl Rng, n: usize) -> StateSpace {
    let names = (0..n).map(|i| format!("s{i}")).collect();
    let labels = (0..n)
        .map(|_| BTreeSet::from([PROPS[rng.gen_range(0..PROPS.len())].to_string()]))
        .collect();
    let props = PROPS.iter().map(|p| p.to_string()).collect();
    StateSpace::new(names, 0, props, labels).expect("generated names are distinct")
}

/// Numerators (over [`DENOM`]) of a random distribution on `k` slots;
/// zeros allowed.
fn random_masses(rng: &mut impl Rng, k: usize) -> Vec<i64> {
    let mut cuts: Vec<i64> = (0..k - 1).map(|_| rng.gen_range(0..=DENOM)).collect();
    cuts.push(0);
    cuts.push(DENOM);
    cuts.sort_unstable();
    cuts.windows(2).map(|w| w[1] - w[0]).collect()
}

fn random_support(rng: &mut impl Rng, n: usize) -> Vec<StateId> {
    let k = rng.gen_range(1..=n);
    let mut s = index::sample(rng, n, k).into_vec();
    s.sort_unstable();
    s
}

/// A feasible point first, then each bound widened around it, so the
/// uncertainty set is never empty.
fn random_row(rng: &mut impl Rng, n: usize) -> Row {
    let support = random_support(rng, n);
    let masses = random_masses(rng, support.len());
    let mut row = Row::new();
    for (t, p) in support.into_iter().zip(masses) {
        let (down, up) = if rng.gen_bool(0.3) {
            (0, 0)
        } else {
            (rng.gen_range(0..=4), rng.gen_range(0..=4))
        };
        let lo = (p - down).max(0);
        let hi = (p + up).min(DENOM);
        if hi > 0 {
            row.insert(
                t,
                Interval::new(ratio(lo, DENOM), ratio(hi, DENOM)).unwrap(),
            );
        }
    }
    row
}

/// Random valid IMDP with `1..=max_states` states over actions
/// `a0..a{max_actions-1}`, each state enabling a non-empty subset of them.
/// Labels are drawn from two propositions.
pub fn gen_random_imdp(seed: u64, max_states: usize, max_actions: usize) -> Imdp {
    assert!(max_states >= 1 && max_actions >= 1);
    let mut rng = rng_for(seed);
    let n = rng.gen_range(1..=max_states);
    let space = random_space(&mut rng, n);
    let actions: Vec<String> = (0..max_actions).map(|a| format!("a{a}")).collect();
    let mut rows = BTreeMap::new();
    for s in 0..n {
        for a in random_support(&mut rng, max_actions) {
            let mut row = random_row(&mut rng, n);
            while row.is_empty() {
                row = random_row(&mut rng, n);
            }
            rows.insert((s, a), row);
        }
    }
    Imdp::from_parts(space, actions, rows).expect("generated ids are in range")
}

/// Random PA with `1..=max_states` states, each with
/// `1..=max_transitions` distinct transitions.
pub fn gen_random_pa(seed: u64, max_states: usize, max_transitions: usize) -> Pa {
    assert!(max_states >= 1 && max_transitions >= 1);
    let mut rng = rng_for(seed);
    let n = rng.gen_range(1..=max_states);
    let space = random_space(&mut rng, n);
    let trans = (0..n)
        .map(|_| {
            let k = rng.gen_range(1..=max_transitions);
            (0..k)
                .map(|_| {
                    let support = random_support(&mut rng, n);
                    let masses = random_masses(&mut rng, support.len());
                    Distribution::new(
                        support
                            .into_iter()
                            .zip(masses)
                            .map(|(t, p)| (t, ratio(p, DENOM))),
                    )
                    .unwrap()
                })
                .collect()
        })
        .collect();
    Pa::from_parts(space, trans).expect("generated ids are in range")
}

/// Random non-empty interval polytope of dimension `1..=max_dim` with
/// bounds over [`DENOM`].
pub fn random_interval_polytope(seed: u64, max_dim: usize) -> IntervalPolytope {
    let mut rng = rng_for(seed);
    let d = rng.gen_range(1..=max_dim);
    let masses = random_masses(&mut rng, d);
    let (lo, hi) = masses
        .iter()
        .map(|&p| {
            let lo = (p - rng.gen_range(0..=8)).max(0);
            let hi = (p + rng.gen_range(0..=8)).min(DENOM);
            (ratio(lo, DENOM), ratio(hi, DENOM))
        })
        .unzip();
    IntervalPolytope::new(lo, hi).expect("contains the sampled point")
}

fn permuted_space(m: &impl Model, perm: &[StateId]) -> StateSpace {
    let n = perm.len();
    let mut names = vec![String::new(); n];
    let mut labels = vec![BTreeSet::new(); n];
    for s in 0..n {
        names[perm[s]] = format!("m{}", perm[s]);
        labels[perm[s]] = m.label(s).clone();
    }
    StateSpace::new(names, perm[m.initial()], m.atomic_props().clone(), labels).unwrap()
}

fn random_perm(rng: &mut impl Rng, n: usize) -> Vec<StateId> {
    let mut perm: Vec<StateId> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

/// Reorders states randomly and renames them `m0, m1, …`.
pub fn rename_imdp(m: &Imdp, rng: &mut impl Rng) -> Imdp {
    let perm = random_perm(rng, m.num_states());
    let rows = m
        .rows()
        .map(|((s, a), row)| {
            let row = row.iter().map(|(&t, iv)| (perm[t], iv.clone())).collect();
            ((perm[s], a), row)
        })
        .collect();
    Imdp::from_parts(permuted_space(m, &perm), m.actions().to_vec(), rows).unwrap()
}

pub fn rename_pa(a: &Pa, rng: &mut impl Rng) -> Pa {
    let perm = random_perm(rng, a.num_states());
    let mut trans = vec![BTreeSet::new(); perm.len()];
    for s in 0..perm.len() {
        trans[perm[s]] = a
            .transitions(s)
            .iter()
            .map(|d| d.map(|&t| perm[t]))
            .collect();
    }
    Pa::from_parts(permuted_space(a, &perm), trans).unwrap()
}

fn fresh_name(taken: &[String], base: &str) -> String {
    let mut name = format!("{base}'");
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

/// State space with a copy of `u` appended.
fn space_with_copy(m: &impl Model, u: StateId) -> StateSpace {
    let mut names = m.state_names().to_vec();
    names.push(fresh_name(&names, m.state_name(u)));
    let mut labels: Vec<BTreeSet<String>> =
        (0..m.num_states()).map(|s| m.label(s).clone()).collect();
    labels.push(m.label(u).clone());
    StateSpace::new(names, m.initial(), m.atomic_props().clone(), labels).unwrap()
}

/// For every source state (the copy included), whether its edges into
/// `u` are redirected to the copy instead.
fn redirect_choices(rng: &mut impl Rng, n: usize) -> Vec<bool> {
    (0..=n).map(|_| rng.gen_bool(0.5)).collect()
}

/// Adds a copy `d` of state `u` with `u`'s label and rows. Each source
/// state sends all of its edges into `u` either to `u` or to `d`, chosen at
/// random per source; block sums over `{u, d}` are unchanged, so the result
/// is bisimilar to `m`. Keeping each source on one side (rather than
/// splitting mass between `u` and `d`) also keeps folding exact on the
/// block level.
pub fn duplicate_state_imdp(m: &Imdp, u: StateId, rng: &mut impl Rng) -> Imdp {
    let d = m.num_states();
    let to_copy = redirect_choices(rng, d);
    let redirect = |s: StateId, row: &Row| -> Row {
        row.iter()
            .map(|(&t, iv)| (if t == u && to_copy[s] { d } else { t }, iv.clone()))
            .collect()
    };
    let mut rows: BTreeMap<(StateId, usize), Row> = m
        .rows()
        .map(|((s, a), row)| ((s, a), redirect(s, row)))
        .collect();
    for (a, row) in m.rows_of(u) {
        rows.insert((d, a), redirect(d, row));
    }
    Imdp::from_parts(space_with_copy(m, u), m.actions().to_vec(), rows).unwrap()
}

/// PA analogue of [`duplicate_state_imdp`].
pub fn duplicate_state_pa(a: &Pa, u: StateId, rng: &mut impl Rng) -> Pa {
    let d = a.num_states();
    let to_copy = redirect_choices(rng, d);
    let redirect =
        |s: StateId, dist: &Distribution| dist.map(|&t| if t == u && to_copy[s] { d } else { t });
    let mut trans: Vec<BTreeSet<Distribution>> = (0..d)
        .map(|s| a.transitions(s).iter().map(|x| redirect(s, x)).collect())
        .collect();
    trans.push(a.transitions(u).iter().map(|x| redirect(d, x)).collect());
    Pa::from_parts(space_with_copy(a, u), trans).unwrap()
}

/// Cuts one uncertainty set in two along a successor's reachable range:
/// action `a` keeps the lower half, a fresh action the upper half. The
/// union of the halves is the original set, which is checked through the
/// class polytopes before returning. `None` when no row has a successor
/// with a non-degenerate range.
pub fn split_action(m: &Imdp, rng: &mut impl Rng) -> Option<Imdp> {
    let mut candidates: Vec<(StateId, usize, usize, Rational)> = Vec::new();
    for ((s, a), _) in m.rows() {
        let (dims, poly) = m.uncertainty_set(s, a).ok()?;
        let (lo, hi) = poly.tightened();
        for (i, &t) in dims.iter().enumerate() {
            if lo[i] < hi[i] {
                candidates.push((s, a, t, (&lo[i] + &hi[i]) * ratio(1, 2)));
            }
        }
    }
    let (s, a, t, mid) = candidates.choose(rng)?.clone();
    let row = m.row(s, a)?;
    let iv = &row[&t];
    let mut lower = row.clone();
    lower.insert(t, Interval::new(iv.lo().clone(), mid.clone()).ok()?);
    let mut upper = row.clone();
    upper.insert(t, Interval::new(mid, iv.hi().clone()).ok()?);

    let mut actions = m.actions().to_vec();
    let fresh = fresh_name(&actions, &actions[a]);
    actions.push(fresh);
    let mut rows: BTreeMap<_, _> = m.rows().map(|(k, r)| (k, r.clone())).collect();
    rows.insert((s, a), lower);
    rows.insert((s, actions.len() - 1), upper);
    let out = Imdp::from_parts(m.space().clone(), actions, rows).ok()?;

    let id = Partition::identity(m.num_states());
    let before = imdp_class_polytopes(m, s, &id).ok()?;
    let after = imdp_class_polytopes(&out, s, &id).ok()?;
    hull_equal(&before, &after).ok()?.then_some(out)
}

/// Adds the midpoint of two transitions of some state as a third one; it
/// lies in their hull, so the state's behaviour is unchanged.
pub fn add_redundant_transition(a: &Pa, rng: &mut impl Rng) -> Option<Pa> {
    let states: Vec<StateId> = (0..a.num_states())
        .filter(|&s| a.transitions(s).len() >= 2)
        .collect();
    let &s = states.choose(rng)?;
    let ts: Vec<Distribution> = a.transitions(s).iter().cloned().collect();
    let picked: Vec<Distribution> = ts.choose_multiple(rng, 2).cloned().collect();
    let half = ratio(1, 2);
    let mid = convex_combine(&[half.clone(), half], &picked).ok()?;
    let mut trans: Vec<BTreeSet<Distribution>> = (0..a.num_states())
        .map(|s| a.transitions(s).clone())
        .collect();
    trans[s].insert(mid);
    Pa::from_parts(a.space().clone(), trans).ok()
}

/// `(base, variant)` with the variant bisimilar to `base` by construction:
/// optionally a duplicated state, optionally a split action, then a random
/// renaming.
pub fn gen_bisimilar_pair(seed: u64, base: &Imdp) -> (Imdp, Imdp) {
    let mut rng = rng_for(seed);
    let mut m = base.clone();
    if rng.gen_bool(0.5) {
        let u = rng.gen_range(0..m.num_states());
        m = duplicate_state_imdp(&m, u, &mut rng);
    }
    if rng.gen_bool(0.5) {
        if let Some(split) = split_action(&m, &mut rng) {
            m = split;
        }
    }
    (base.clone(), rename_imdp(&m, &mut rng))
}

/// PA analogue of [`gen_bisimilar_pair`], with a redundant convex
/// combination in place of the action split.
pub fn gen_bisimilar_pa_pair(seed: u64, base: &Pa) -> (Pa, Pa) {
    let mut rng = rng_for(seed);
    let mut a = base.clone();
    if rng.gen_bool(0.5) {
        let u = rng.gen_range(0..a.num_states());
        a = duplicate_state_pa(&a, u, &mut rng);
    }
    if rng.gen_bool(0.5) {
        if let Some(more) = add_redundant_transition(&a, &mut rng) {
            a = more;
        }
    }
    (base.clone(), rename_pa(&a, &mut rng))
}
