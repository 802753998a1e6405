use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::partition::{BlockId, Partition};
use super::StateId;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Finitely supported probability distribution with exact masses.
///
/// Canonical: zero masses are dropped and entries are ordered by key, so
/// structural equality is distribution equality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Distribution<K: Ord = StateId> {
    mass: BTreeMap<K, Rational>,
}

impl<K: Ord + Clone> Distribution<K> {
    /// Builds a distribution, summing repeated keys. Masses must be
    /// non-negative and sum to exactly one.
    pub fn new(entries: impl IntoIterator<Item = (K, Rational)>) -> Result<Self> {
        let mut mass: BTreeMap<K, Rational> = BTreeMap::new();
        for (k, p) in entries {
            if p.is_negative() {
                return Err(Error::Distribution(format!(
                    "negative mass {}",
                    rational::format(&p)
                )));
            }
            *mass.entry(k).or_insert_with(Rational::zero) += p;
        }
        mass.retain(|_, p| !p.is_zero());
        let total: Rational = mass.values().sum();
        if !total.is_one() {
            return Err(Error::Distribution(format!(
                "masses sum to {}",
                rational::format(&total)
            )));
        }
        Ok(Self { mass })
    }

    pub fn dirac(x: K) -> Self {
        Self {
            mass: BTreeMap::from([(x, Rational::one())]),
        }
    }

    pub fn get(&self, k: &K) -> Rational {
        self.mass.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Rational)> {
        self.mass.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &K> {
        self.mass.keys()
    }

    pub fn len(&self) -> usize {
        self.mass.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mass.is_empty()
    }

    /// Pushes the distribution forward along `f`; colliding keys add up.
    pub fn map<J: Ord + Clone>(&self, mut f: impl FnMut(&K) -> J) -> Distribution<J> {
        let mut mass: BTreeMap<J, Rational> = BTreeMap::new();
        for (k, p) in &self.mass {
            *mass.entry(f(k)).or_insert_with(Rational::zero) += p;
        }
        Distribution { mass }
    }

    /// Dense coordinates over `dims`. Mass outside `dims` is dropped.
    pub fn to_dense(&self, dims: &[K]) -> Vec<Rational> {
        dims.iter().map(|k| self.get(k)).collect()
    }

    pub fn from_dense(dims: &[K], values: &[Rational]) -> Result<Self> {
        if dims.len() != values.len() {
            return Err(Error::Dimension {
                expected: dims.len(),
                got: values.len(),
            });
        }
        Self::new(dims.iter().cloned().zip(values.iter().cloned()))
    }
}

impl Distribution<StateId> {
    /// Block masses `[d](C) = Σ_{s∈C} d(s)`.
    pub fn project(&self, p: &Partition) -> Distribution<BlockId> {
        self.map(|&s| p.block_of(s))
    }
}

/// `(d1 × d2)(x, y) = d1(x) · d2(y)`.
pub fn product_dist<A, B>(d1: &Distribution<A>, d2: &Distribution<B>) -> Distribution<(A, B)>
where
    A: Ord + Clone,
    B: Ord + Clone,
{
    let mut mass = BTreeMap::new();
    for (a, p) in &d1.mass {
        for (b, q) in &d2.mass {
            mass.insert((a.clone(), b.clone()), p * q);
        }
    }
    Distribution { mass }
}

/// `Σ_i w_i · d_i`; weights must be non-negative and sum to one.
pub fn convex_combine<K: Ord + Clone>(
    weights: &[Rational],
    dists: &[Distribution<K>],
) -> Result<Distribution<K>> {
    if weights.len() != dists.len() {
        return Err(Error::Dimension {
            expected: dists.len(),
            got: weights.len(),
        });
    }
    if weights.iter().any(|w| w.is_negative()) {
        return Err(Error::Distribution("negative weight".into()));
    }
    let total: Rational = weights.iter().sum();
    if !total.is_one() {
        return Err(Error::Distribution(format!(
            "weights sum to {}",
            rational::format(&total)
        )));
    }
    let entries = weights
        .iter()
        .zip(dists)
        .flat_map(|(w, d)| d.mass.iter().map(move |(k, p)| (k.clone(), w * p)));
    Distribution::new(entries)
}

pub fn class_project(d: &Distribution, p: &Partition) -> Distribution<BlockId> {
    d.project(p)
}

/// Lifting of a partition to distributions: equal mass on every block.
pub fn lift_equiv(d1: &Distribution, d2: &Distribution, p: &Partition) -> bool {
    d1.project(p) == d2.project(p)
}

impl<K: Ord + fmt::Debug> fmt::Display for Distribution<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (k, p)) in self.mass.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{k:?}: {}", rational::format(p))?;
        }
        write!(f, "}}")
    }
}
