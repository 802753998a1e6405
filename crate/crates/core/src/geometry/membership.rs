use num_traits::{One, Signed, Zero};

use super::lp::{feasibility, Feasibility};
use super::polytope::{IntervalPolytope, Point, VPolytope};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// One term `weight · point` of a convex-combination witness. `source`
/// indexes the generator (or member polytope) the point comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HullTerm {
    pub source: usize,
    pub weight: Rational,
    pub point: Point,
}

/// Outcome of a hull-membership query, carrying a witness either way.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MembershipCertificate {
    /// The query equals `Σ weight · point` with non-negative weights
    /// summing to one.
    Inside { terms: Vec<HullTerm> },
    /// `normal · y ≤ offset` for every `y` in the hull while
    /// `normal · query > offset`.
    Outside {
        normal: Vec<Rational>,
        offset: Rational,
    },
}

impl MembershipCertificate {
    pub fn is_inside(&self) -> bool {
        matches!(self, MembershipCertificate::Inside { .. })
    }
}

fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::Dimension { expected, got })
    }
}

/// Hyperplane from a Farkas ray whose first `d` entries belong to the
/// `= x` rows and entry `d` to the `Σλ = 1` row.
fn separating(y: &[Rational], d: usize) -> MembershipCertificate {
    MembershipCertificate::Outside {
        normal: y[..d].iter().map(|w| -w).collect(),
        offset: y[d].clone(),
    }
}

/// `x ∈ CH(generators)`, decided by the LP `Σλ_i g_i = x, Σλ_i = 1, λ ≥ 0`.
pub fn contains(v: &VPolytope, x: &[Rational]) -> Result<MembershipCertificate> {
    if v.is_empty() {
        return Err(Error::NoGenerators);
    }
    let d = v.dim();
    check_dim(d, x.len())?;
    let gens = v.generators();
    // Shortcut for the common "x is a generator" case.
    if let Some(i) = gens.iter().position(|g| g.as_slice() == x) {
        return Ok(MembershipCertificate::Inside {
            terms: vec![HullTerm {
                source: i,
                weight: Rational::one(),
                point: gens[i].clone(),
            }],
        });
    }
    let mut a: Vec<Vec<Rational>> = (0..d)
        .map(|j| gens.iter().map(|g| g[j].clone()).collect())
        .collect();
    a.push(vec![Rational::one(); gens.len()]);
    let mut b = x.to_vec();
    b.push(Rational::one());
    Ok(match feasibility(&a, &b) {
        Feasibility::Feasible(lambda) => MembershipCertificate::Inside {
            terms: lambda
                .into_iter()
                .enumerate()
                .filter(|(_, w)| w.is_positive())
                .map(|(i, weight)| HullTerm {
                    source: i,
                    weight,
                    point: gens[i].clone(),
                })
                .collect(),
        },
        Feasibility::Infeasible(y) => separating(&y, d),
    })
}

/// `x ∈ CH(∪ ps)`.
///
/// Lifted LP: per member `a` a weight `λ_a` and a scaled point
/// `z_a = λ_a·lo_a + u_a` with `0 ≤ u_a ≤ λ_a(hi_a - lo_a)` (slack `v_a`)
/// and `Σ u_a = λ_a(1 - Σlo_a)`; then `Σλ_a = 1` and `Σ z_a = x`.
pub fn contains_union(ps: &[IntervalPolytope], x: &[Rational]) -> Result<MembershipCertificate> {
    let first = ps.first().ok_or(Error::NoGenerators)?;
    let d = first.dim();
    for p in ps {
        check_dim(d, p.dim())?;
    }
    check_dim(d, x.len())?;
    if let Some(i) = ps.iter().position(|p| p.contains(x)) {
        return Ok(MembershipCertificate::Inside {
            terms: vec![HullTerm {
                source: i,
                weight: Rational::one(),
                point: x.to_vec(),
            }],
        });
    }

    let k = ps.len();
    // column layout per member: [λ, u_0..u_d, v_0..v_d]
    let stride = 2 * d + 1;
    let cols = k * stride;
    let lam = |a: usize| a * stride;
    let u = |a: usize, j: usize| a * stride + 1 + j;
    let v = |a: usize, j: usize| a * stride + 1 + d + j;

    // rows: d point rows, the Σλ row, then per member d box rows and a mass row
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(d + 1 + k * (d + 1));
    let mut rhs: Vec<Rational> = Vec::with_capacity(rows.capacity());
    for j in 0..d {
        let mut r = vec![Rational::zero(); cols];
        for (a, p) in ps.iter().enumerate() {
            r[lam(a)] = p.lo()[j].clone();
            r[u(a, j)] = Rational::one();
        }
        rows.push(r);
        rhs.push(x[j].clone());
    }
    let mut r = vec![Rational::zero(); cols];
    for a in 0..k {
        r[lam(a)] = Rational::one();
    }
    rows.push(r);
    rhs.push(Rational::one());
    for (a, p) in ps.iter().enumerate() {
        for j in 0..d {
            let mut r = vec![Rational::zero(); cols];
            r[u(a, j)] = Rational::one();
            r[v(a, j)] = Rational::one();
            r[lam(a)] = -(&p.hi()[j] - &p.lo()[j]);
            rows.push(r);
            rhs.push(Rational::zero());
        }
        let mut r = vec![Rational::zero(); cols];
        for j in 0..d {
            r[u(a, j)] = Rational::one();
        }
        r[lam(a)] = -(Rational::one() - p.lo().iter().sum::<Rational>());
        rows.push(r);
        rhs.push(Rational::zero());
    }

    Ok(match feasibility(&rows, &rhs) {
        Feasibility::Feasible(sol) => {
            let terms = ps
                .iter()
                .enumerate()
                .filter(|&(a, _)| sol[lam(a)].is_positive())
                .map(|(a, p)| {
                    let weight = sol[lam(a)].clone();
                    let point = (0..d)
                        .map(|j| (&weight * &p.lo()[j] + &sol[u(a, j)]) / &weight)
                        .collect();
                    HullTerm {
                        source: a,
                        weight,
                        point,
                    }
                })
                .collect();
            MembershipCertificate::Inside { terms }
        }
        Feasibility::Infeasible(y) => separating(&y, d),
    })
}

/// Which side of a hull comparison a distinguishing point came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A vertex of one hull lying outside the other, with the separating
/// certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separation {
    pub side: Side,
    pub point: Point,
    pub certificate: MembershipCertificate,
}

/// `CH(∪A) = CH(∪B)`.
///
/// Two single interval polytopes are compared through their tightened
/// bounds, which are their coordinate projections. Otherwise every vertex
/// of every member on one side is tested against the other side's hull.
pub fn hull_equal(a: &[IntervalPolytope], b: &[IntervalPolytope]) -> Result<bool> {
    if let ([p], [q]) = (a, b) {
        check_dim(p.dim(), q.dim())?;
        return Ok(p.tightened() == q.tightened());
    }
    Ok(hull_separation(a, b)?.is_none())
}

/// First vertex of either side outside the other side's hull, if any.
pub fn hull_separation(
    a: &[IntervalPolytope],
    b: &[IntervalPolytope],
) -> Result<Option<Separation>> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::NoGenerators);
    }
    for (side, from, into) in [(Side::Left, a, b), (Side::Right, b, a)] {
        for p in from {
            for vertex in p.vertices() {
                let cert = contains_union(into, &vertex)?;
                if !cert.is_inside() {
                    return Ok(Some(Separation {
                        side,
                        point: vertex,
                        certificate: cert,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// `CH(gen1) = CH(gen2)` by mutual generator membership. Two empty
/// generator sets are equal.
pub fn vpoly_equal(v1: &VPolytope, v2: &VPolytope) -> Result<bool> {
    Ok(vpoly_separation(v1, v2)?.is_none())
}

pub fn vpoly_separation(v1: &VPolytope, v2: &VPolytope) -> Result<Option<Separation>> {
    check_dim(v1.dim(), v2.dim())?;
    match (v1.is_empty(), v2.is_empty()) {
        (true, true) => return Ok(None),
        (false, true) => {
            return Ok(Some(Separation {
                side: Side::Left,
                point: v1.generators()[0].clone(),
                certificate: empty_hull_certificate(v1.dim()),
            }))
        }
        (true, false) => {
            return Ok(Some(Separation {
                side: Side::Right,
                point: v2.generators()[0].clone(),
                certificate: empty_hull_certificate(v2.dim()),
            }))
        }
        (false, false) => {}
    }
    if v1 == v2 {
        return Ok(None);
    }
    for (side, from, into) in [(Side::Left, v1, v2), (Side::Right, v2, v1)] {
        for g in from.generators() {
            let cert = contains(into, g)?;
            if !cert.is_inside() {
                return Ok(Some(Separation {
                    side,
                    point: g.clone(),
                    certificate: cert,
                }));
            }
        }
    }
    Ok(None)
}

/// Every point lies strictly above `0·y ≤ -1`, which no point satisfies:
/// the trivial separation from an empty hull.
fn empty_hull_certificate(d: usize) -> MembershipCertificate {
    MembershipCertificate::Outside {
        normal: vec![Rational::zero(); d],
        offset: -Rational::one(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, parse, ratio};

    fn pt(v: &[&str]) -> Point {
        v.iter().map(|s| parse(s).unwrap()).collect()
    }

    fn three_target_hull() -> VPolytope {
        VPolytope::new(
            3,
            vec![
                pt(&["7/10", "1/5", "1/10"]),
                pt(&["1/2", "2/5", "1/10"]),
                pt(&["0", "3/5", "2/5"]),
            ],
        )
        .unwrap()
    }

    fn dot(a: &[Rational], b: &[Rational]) -> Rational {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    #[test]
    fn spurious_point_is_separated() {
        let hull = three_target_hull();
        let x = pt(&["2/5", "1/5", "2/5"]);
        match contains(&hull, &x).unwrap() {
            MembershipCertificate::Outside { normal, offset } => {
                for g in hull.generators() {
                    assert!(dot(&normal, g) <= offset);
                }
                assert!(dot(&normal, &x) > offset);
            }
            other => panic!("expected outside, got {other:?}"),
        }
    }

    #[test]
    fn generator_and_midpoint_are_inside() {
        let hull = three_target_hull();
        let g = hull.generators()[1].clone();
        match contains(&hull, &g).unwrap() {
            MembershipCertificate::Inside { terms } => {
                assert_eq!(terms.len(), 1);
                assert_eq!(terms[0].weight, int(1));
            }
            other => panic!("{other:?}"),
        }
        let a = &hull.generators()[0];
        let b = &hull.generators()[2];
        let mid: Point = a.iter().zip(b).map(|(x, y)| (x + y) / int(2)).collect();
        match contains(&hull, &mid).unwrap() {
            MembershipCertificate::Inside { terms } => {
                let mut acc = vec![int(0); 3];
                for t in &terms {
                    for j in 0..3 {
                        acc[j] += &t.weight * &t.point[j];
                    }
                }
                assert_eq!(acc, mid);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn empty_generator_set_is_an_error() {
        let v = VPolytope::new(2, vec![]).unwrap();
        assert_eq!(contains(&v, &pt(&["1", "0"])), Err(Error::NoGenerators));
        assert_eq!(
            contains_union(&[], &pt(&["1", "0"])),
            Err(Error::NoGenerators)
        );
    }

    #[test]
    fn union_of_points_contains_midpoint() {
        let p1 = IntervalPolytope::point(&pt(&["1", "0"])).unwrap();
        let p2 = IntervalPolytope::point(&pt(&["0", "1"])).unwrap();
        let cert = contains_union(&[p1.clone(), p2.clone()], &pt(&["1/2", "1/2"])).unwrap();
        match cert {
            MembershipCertificate::Inside { terms } => {
                assert_eq!(terms.len(), 2);
                assert!(terms.iter().all(|t| t.weight == ratio(1, 2)));
            }
            other => panic!("{other:?}"),
        }
        let cert = contains_union(&[p1], &pt(&["1/2", "1/2"])).unwrap();
        assert!(!cert.is_inside());
    }

    #[test]
    fn union_separation_is_valid() {
        let p1 = IntervalPolytope::new(pt(&["0.5", "0", "0"]), pt(&["1", "0.5", "0.5"])).unwrap();
        let p2 = IntervalPolytope::new(pt(&["0", "0.5", "0"]), pt(&["0.5", "1", "0.2"])).unwrap();
        let x = pt(&["0", "0.2", "0.8"]);
        match contains_union(&[p1.clone(), p2.clone()], &x).unwrap() {
            MembershipCertificate::Outside { normal, offset } => {
                assert!(p1.max_linear(&normal) <= offset);
                assert!(p2.max_linear(&normal) <= offset);
                assert!(dot(&normal, &x) > offset);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn simplex_equals_its_corners() {
        let simplex = IntervalPolytope::new(vec![int(0); 3], vec![int(1); 3]).unwrap();
        let corners: Vec<IntervalPolytope> = (0..3)
            .map(|i| {
                let mut e = vec![int(0); 3];
                e[i] = int(1);
                IntervalPolytope::point(&e).unwrap()
            })
            .collect();
        assert!(hull_equal(&[simplex.clone()], &corners).unwrap());
        assert!(hull_equal(&corners, &[simplex.clone()]).unwrap());
        assert!(!hull_equal(&corners[..2], &[simplex]).unwrap());
    }

    #[test]
    fn three_target_hull_differs_from_folded_box() {
        let folded =
            IntervalPolytope::new(pt(&["0", "1/5", "1/10"]), pt(&["7/10", "3/5", "2/5"])).unwrap();
        let gens: Vec<IntervalPolytope> = three_target_hull()
            .generators()
            .iter()
            .map(|g| IntervalPolytope::point(g).unwrap())
            .collect();
        assert!(!hull_equal(&gens, &[folded.clone()]).unwrap());
        let sep = hull_separation(&gens, &[folded]).unwrap().unwrap();
        assert_eq!(sep.side, Side::Right);

        let vertices = VPolytope::new(
            3,
            IntervalPolytope::new(pt(&["0", "1/5", "1/10"]), pt(&["7/10", "3/5", "2/5"]))
                .unwrap()
                .vertices(),
        )
        .unwrap();
        assert!(!vpoly_equal(&three_target_hull(), &vertices).unwrap());
    }

    #[test]
    fn redundant_generator_does_not_matter() {
        let d1 = pt(&["1/4", "3/4"]);
        let d2 = pt(&["3/4", "1/4"]);
        let mid = pt(&["1/2", "1/2"]);
        let a = VPolytope::new(2, vec![d1.clone(), d2.clone(), mid]).unwrap();
        let b = VPolytope::new(2, vec![d1, d2]).unwrap();
        assert!(vpoly_equal(&a, &b).unwrap());
        assert!(vpoly_equal(&a, &a).unwrap());
        let empty = VPolytope::new(2, vec![]).unwrap();
        assert!(vpoly_equal(&empty, &empty).unwrap());
        assert!(!vpoly_equal(&a, &empty).unwrap());
    }

    #[test]
    fn single_polytope_fast_path_agrees_with_vertex_route() {
        let p = IntervalPolytope::new(pt(&["0.1", "0.8"]), pt(&["0.3", "1"])).unwrap();
        // same set, looser raw bounds on the second coordinate
        let q = IntervalPolytope::new(pt(&["0.1", "0.7"]), pt(&["0.2", "1"])).unwrap();
        assert!(hull_equal(&[p.clone()], &[q.clone()]).unwrap());
        assert!(hull_separation(&[p.clone()], &[q]).unwrap().is_none());
        let r = IntervalPolytope::new(pt(&["0.1", "0.6"]), pt(&["0.4", "1"])).unwrap();
        assert!(!hull_equal(&[p.clone()], &[r.clone()]).unwrap());
        assert!(hull_separation(&[p], &[r]).unwrap().is_some());
    }
}
