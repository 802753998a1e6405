use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::model::Interval;
use crate::rational::{self, Rational};

/// A point of `R^d` with exact coordinates.
pub type Point = Vec<Rational>;

/// `{x | lo ≤ x ≤ hi, Σx = 1}`, non-empty by construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntervalPolytope {
    lo: Vec<Rational>,
    hi: Vec<Rational>,
}

impl IntervalPolytope {
    pub fn new(lo: Vec<Rational>, hi: Vec<Rational>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::Dimension {
                expected: lo.len(),
                got: hi.len(),
            });
        }
        for (l, h) in lo.iter().zip(&hi) {
            Interval::new(l.clone(), h.clone())?;
        }
        let sum_lo: Rational = lo.iter().sum();
        let sum_hi: Rational = hi.iter().sum();
        if sum_lo > Rational::one() || sum_hi < Rational::one() {
            return Err(Error::EmptyPolytope(format!(
                "bounds sum to [{}, {}]",
                rational::format(&sum_lo),
                rational::format(&sum_hi)
            )));
        }
        Ok(Self { lo, hi })
    }

    pub fn from_intervals(bounds: &[Interval]) -> Result<Self> {
        Self::new(
            bounds.iter().map(|iv| iv.lo().clone()).collect(),
            bounds.iter().map(|iv| iv.hi().clone()).collect(),
        )
    }

    /// The single point `d`.
    pub fn point(d: &[Rational]) -> Result<Self> {
        Self::new(d.to_vec(), d.to_vec())
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[Rational] {
        &self.lo
    }

    pub fn hi(&self) -> &[Rational] {
        &self.hi
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        x.len() == self.dim()
            && x.iter()
                .zip(self.lo.iter().zip(&self.hi))
                .all(|(v, (l, h))| l <= v && v <= h)
            && x.iter().sum::<Rational>().is_one()
    }

    /// Bounds tightened against the simplex constraint:
    /// `lo'_i = max(lo_i, 1 - Σ_{j≠i} hi_j)`, `hi'_i = min(hi_i, 1 - Σ_{j≠i} lo_j)`.
    /// These are exactly the coordinate projections of the polytope.
    pub fn tightened(&self) -> (Vec<Rational>, Vec<Rational>) {
        let sum_lo: Rational = self.lo.iter().sum();
        let sum_hi: Rational = self.hi.iter().sum();
        let one = Rational::one();
        let lo = (0..self.dim())
            .map(|i| {
                let rest = &one - (&sum_hi - &self.hi[i]);
                rest.max(self.lo[i].clone())
            })
            .collect();
        let hi = (0..self.dim())
            .map(|i| {
                let rest = &one - (&sum_lo - &self.lo[i]);
                rest.min(self.hi[i].clone())
            })
            .collect();
        (lo, hi)
    }

    /// Extreme points, sorted and deduplicated.
    ///
    /// A vertex has at most one coordinate strictly between its bounds, so
    /// for each free index `i` the other coordinates range over bound
    /// choices and `x_i` absorbs the remaining mass. The scan prunes a
    /// branch once the remaining mass can no longer land in `[lo_i, hi_i]`.
    pub fn vertices(&self) -> Vec<Point> {
        let n = self.dim();
        let mut out = Vec::new();
        // suffix sums of lo and hi over the fixed coordinates
        let mut suffix_lo = vec![Rational::zero(); n + 1];
        let mut suffix_hi = vec![Rational::zero(); n + 1];
        for j in (0..n).rev() {
            suffix_lo[j] = &suffix_lo[j + 1] + &self.lo[j];
            suffix_hi[j] = &suffix_hi[j + 1] + &self.hi[j];
        }
        for free in 0..n {
            let ctx = Scan {
                p: self,
                free,
                rest_lo: suffix_lo
                    .iter()
                    .enumerate()
                    .map(|(j, s)| {
                        if free >= j {
                            s - &self.lo[free]
                        } else {
                            s.clone()
                        }
                    })
                    .collect(),
                rest_hi: suffix_hi
                    .iter()
                    .enumerate()
                    .map(|(j, s)| {
                        if free >= j {
                            s - &self.hi[free]
                        } else {
                            s.clone()
                        }
                    })
                    .collect(),
            };
            let mut x = vec![Rational::zero(); n];
            ctx.descend(0, Rational::zero(), &mut x, &mut out);
        }
        out.sort();
        out.dedup();
        out
    }

    /// `max { c·x | x ∈ P }`: start at `lo`, hand the spare mass to the
    /// largest coefficients first.
    pub fn max_linear(&self, c: &[Rational]) -> Rational {
        let mut order: Vec<usize> = (0..self.dim()).collect();
        order.sort_by(|&i, &j| c[j].cmp(&c[i]));
        let mut x = self.lo.clone();
        let mut left = Rational::one() - self.lo.iter().sum::<Rational>();
        for i in order {
            if left.is_zero() {
                break;
            }
            let room = &self.hi[i] - &self.lo[i];
            let take = if room < left { room } else { left.clone() };
            left -= &take;
            x[i] += take;
        }
        x.iter().zip(c).map(|(a, b)| a * b).sum()
    }
}

struct Scan<'a> {
    p: &'a IntervalPolytope,
    free: usize,
    // sums of lo/hi over fixed coordinates with index ≥ j
    rest_lo: Vec<Rational>,
    rest_hi: Vec<Rational>,
}

impl Scan<'_> {
    fn descend(&self, j: usize, acc: Rational, x: &mut Point, out: &mut Vec<Point>) {
        let p = self.p;
        // remaining mass for the free coordinate must fit its bounds
        let one = Rational::one();
        let min_left = &one - &acc - &self.rest_hi[j];
        let max_left = &one - &acc - &self.rest_lo[j];
        if max_left < p.lo[self.free] || min_left > p.hi[self.free] {
            return;
        }
        if j == x.len() {
            let v = &one - &acc;
            x[self.free] = v;
            out.push(x.clone());
            return;
        }
        if j == self.free {
            return self.descend(j + 1, acc, x, out);
        }
        x[j] = p.lo[j].clone();
        self.descend(j + 1, &acc + &p.lo[j], x, out);
        if p.hi[j] != p.lo[j] {
            x[j] = p.hi[j].clone();
            self.descend(j + 1, &acc + &p.hi[j], x, out);
        }
    }
}

/// Convex hull of finitely many points, kept as a sorted deduplicated
/// generator list. May be empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VPolytope {
    dim: usize,
    generators: Vec<Point>,
}

impl VPolytope {
    pub fn new(dim: usize, mut generators: Vec<Point>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.len() != dim) {
            return Err(Error::Dimension {
                expected: dim,
                got: g.len(),
            });
        }
        generators.sort();
        generators.dedup();
        Ok(Self { dim, generators })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Point] {
        &self.generators
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Coordinate projection `[min_i, max_i]`, attained at generators.
    pub fn project(&self, i: usize) -> Result<Interval> {
        if i >= self.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                got: i,
            });
        }
        let lo = self.generators.iter().map(|g| &g[i]).min();
        let hi = self.generators.iter().map(|g| &g[i]).max();
        match (lo, hi) {
            (Some(lo), Some(hi)) => Interval::new(lo.clone(), hi.clone()),
            _ => Err(Error::NoGenerators),
        }
    }
}
