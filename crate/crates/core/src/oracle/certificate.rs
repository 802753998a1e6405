use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::{IntervalPolytope, MembershipCertificate, Point};
use crate::rational::Rational;

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::Certificate(format!(
            "length {got}, expected {expected}"
        )))
    }
}

/// Checks the convex-combination part shared by both certificate kinds:
/// weights non-negative, summing to one, recombining to `query`.
fn combination_matches(terms: &[crate::geometry::HullTerm], query: &[Rational]) -> Result<bool> {
    let d = query.len();
    let mut sum = vec![Rational::zero(); d];
    let mut total = Rational::zero();
    for t in terms {
        check_len(d, t.point.len())?;
        if t.weight.is_negative() {
            return Ok(false);
        }
        total += &t.weight;
        for (s, x) in sum.iter_mut().zip(&t.point) {
            *s += &t.weight * x;
        }
    }
    Ok(total.is_one() && sum == query)
}

/// Re-checks a membership certificate against the generators of a hull.
pub fn verify_certificate(
    cert: &MembershipCertificate,
    query: &[Rational],
    generators: &[Point],
) -> Result<bool> {
    let d = query.len();
    for g in generators {
        check_len(d, g.len())?;
    }
    match cert {
        MembershipCertificate::Inside { terms } => {
            for t in terms {
                let g = generators
                    .get(t.source)
                    .ok_or_else(|| Error::Certificate(format!("no generator #{}", t.source)))?;
                if *g != t.point {
                    return Ok(false);
                }
            }
            combination_matches(terms, query)
        }
        MembershipCertificate::Outside { normal, offset } => {
            check_len(d, normal.len())?;
            Ok(
                dot(normal, query) > *offset
                    && generators.iter().all(|g| dot(normal, g) <= *offset),
            )
        }
    }
}

/// `max normal·y` over `{lo ≤ y ≤ hi, Σy = 1}`, or `None` if that set is
/// empty. Coordinates are raised from `lo` in order of decreasing weight.
fn box_simplex_max(p: &IntervalPolytope, normal: &[Rational]) -> Option<Rational> {
    let mut spare = Rational::one() - p.lo().iter().sum::<Rational>();
    if spare.is_negative() {
        return None;
    }
    let mut order: Vec<usize> = (0..p.dim()).collect();
    order.sort_by(|&i, &j| normal[j].cmp(&normal[i]));
    let mut value = dot(normal, p.lo());
    for i in order {
        if spare.is_zero() {
            break;
        }
        let room = &p.hi()[i] - &p.lo()[i];
        let step = if room < spare { room } else { spare.clone() };
        value += &normal[i] * &step;
        spare -= step;
    }
    spare.is_zero().then_some(value)
}

/// Re-checks a membership certificate against the hull of a union of
/// interval polytopes.
pub fn verify_union_certificate(
    cert: &MembershipCertificate,
    query: &[Rational],
    polytopes: &[IntervalPolytope],
) -> Result<bool> {
    let d = query.len();
    for p in polytopes {
        check_len(d, p.dim())?;
    }
    match cert {
        MembershipCertificate::Inside { terms } => {
            for t in terms {
                let p = polytopes
                    .get(t.source)
                    .ok_or_else(|| Error::Certificate(format!("no polytope #{}", t.source)))?;
                check_len(d, t.point.len())?;
                let in_box = t
                    .point
                    .iter()
                    .zip(p.lo().iter().zip(p.hi()))
                    .all(|(x, (l, h))| x >= l && x <= h);
                if !in_box || !t.point.iter().sum::<Rational>().is_one() {
                    return Ok(false);
                }
            }
            combination_matches(terms, query)
        }
        MembershipCertificate::Outside { normal, offset } => {
            check_len(d, normal.len())?;
            if dot(normal, query) <= *offset {
                return Ok(false);
            }
            Ok(polytopes
                .iter()
                .filter_map(|p| box_simplex_max(p, normal))
                .all(|m| m <= *offset))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{contains, contains_union, VPolytope};
    use crate::rational::parse;

    fn pt(v: &[&str]) -> Point {
        v.iter().map(|s| parse(s).unwrap()).collect()
    }

    fn three_target_gens() -> Vec<Point> {
        vec![
            pt(&["7/10", "1/5", "1/10"]),
            pt(&["1/2", "2/5", "1/10"]),
            pt(&["0", "3/5", "2/5"]),
        ]
    }

    #[test]
    fn contains_examples_reverify() {
        // certificates index the hull's own (sorted) generator list
        let hull = VPolytope::new(3, three_target_gens()).unwrap();
        let gens = hull.generators();
        for q in [
            pt(&["2/5", "1/5", "2/5"]),
            pt(&["1/2", "2/5", "1/10"]),
            pt(&["6/10", "3/10", "1/10"]),
        ] {
            let cert = contains(&hull, &q).unwrap();
            assert!(verify_certificate(&cert, &q, gens).unwrap());
        }
    }

    #[test]
    fn forged_certificates_fail() {
        let gens = three_target_gens();
        let q = pt(&["2/5", "1/5", "2/5"]);
        let fake = MembershipCertificate::Outside {
            normal: pt(&["1", "0", "0"]),
            offset: parse("0").unwrap(),
        };
        assert!(!verify_certificate(&fake, &q, &gens).unwrap());
        let bad = MembershipCertificate::Inside {
            terms: vec![crate::geometry::HullTerm {
                source: 7,
                weight: parse("1").unwrap(),
                point: q.clone(),
            }],
        };
        assert!(matches!(
            verify_certificate(&bad, &q, &gens),
            Err(Error::Certificate(_))
        ));
    }

    #[test]
    fn union_certificates_reverify() {
        let a = IntervalPolytope::new(pt(&["0.1", "0.8"]), pt(&["0.15", "1"])).unwrap();
        let b = IntervalPolytope::new(pt(&["0.15", "0.8"]), pt(&["0.3", "1"])).unwrap();
        let ps = vec![a, b];
        for q in [
            pt(&["0.12", "0.88"]),
            pt(&["0.3", "0.7"]),
            pt(&["0.05", "0.95"]),
        ] {
            let cert = contains_union(&ps, &q).unwrap();
            assert!(verify_union_certificate(&cert, &q, &ps).unwrap());
        }
    }
}
