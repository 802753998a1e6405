use proptest::prelude::*;

use imdp_core::geometry::{
    contains, contains_union, hull_equal, hull_separation, IntervalPolytope, Point, VPolytope,
};
use imdp_core::oracle::{brute_force_vertices, verify_certificate, verify_union_certificate};
use imdp_core::rational::ratio;
use imdp_core::Rational;

/// Non-empty interval polytopes over twentieths: a sampled point with
/// each coordinate widened independently.
fn interval_polytope(max_dim: usize) -> impl Strategy<Value = IntervalPolytope> {
    (1..=max_dim)
        .prop_flat_map(|d| {
            (
                prop::collection::vec(0u32..=20, d),
                prop::collection::vec((0i64..=8, 0i64..=8), d),
            )
        })
        .prop_map(|(weights, widen)| {
            let total: u32 = weights.iter().sum();
            let masses: Vec<i64> = if total == 0 {
                let mut m = vec![0; weights.len()];
                m[0] = 20;
                m
            } else {
                // largest-remainder rounding to twentieths
                let mut m: Vec<i64> = weights.iter().map(|&w| (w * 20 / total) as i64).collect();
                let short = 20 - m.iter().sum::<i64>();
                for x in m.iter_mut().take(short as usize) {
                    *x += 1;
                }
                m
            };
            let (lo, hi) = masses
                .iter()
                .zip(&widen)
                .map(|(&p, &(down, up))| {
                    (ratio((p - down).max(0), 20), ratio((p + up).min(20), 20))
                })
                .unzip();
            IntervalPolytope::new(lo, hi).unwrap()
        })
}

fn simplex_point(d: usize) -> impl Strategy<Value = Point> {
    prop::collection::vec(0i64..=20, d).prop_map(move |w| {
        let total: i64 = w.iter().sum();
        if total == 0 {
            let mut p = vec![ratio(0, 1); d];
            p[0] = ratio(1, 1);
            p
        } else {
            w.into_iter().map(|x| ratio(x, total)).collect()
        }
    })
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn vertices_lie_in_the_polytope(p in interval_polytope(5)) {
        let vs = p.vertices();
        prop_assert!(!vs.is_empty());
        for v in &vs {
            prop_assert!(p.contains(v));
        }
    }

    #[test]
    fn vertices_match_brute_force(p in interval_polytope(5)) {
        prop_assert_eq!(p.vertices(), brute_force_vertices(p.lo(), p.hi()).unwrap());
    }

    #[test]
    fn no_vertex_is_a_combination_of_the_others(p in interval_polytope(4)) {
        let vs = p.vertices();
        prop_assume!(vs.len() >= 2);
        for i in 0..vs.len() {
            let others: Vec<Point> = vs.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, v)| v.clone()).collect();
            let hull = VPolytope::new(p.dim(), others).unwrap();
            let cert = contains(&hull, &vs[i]).unwrap();
            prop_assert!(!cert.is_inside());
            prop_assert!(verify_certificate(&cert, &vs[i], hull.generators()).unwrap());
        }
    }

    #[test]
    fn max_linear_is_attained_at_a_vertex(
        p in interval_polytope(5),
        c in prop::collection::vec(-10i64..=10, 5),
    ) {
        let c: Vec<Rational> = c.into_iter().take(p.dim()).map(|x| ratio(x, 1)).collect();
        let best = p.vertices().iter().map(|v| dot(&c, v)).max().unwrap();
        prop_assert_eq!(p.max_linear(&c), best);
    }

    #[test]
    fn tightening_is_idempotent(p in interval_polytope(5)) {
        let (lo, hi) = p.tightened();
        let q = IntervalPolytope::new(lo.clone(), hi.clone()).unwrap();
        prop_assert_eq!(q.tightened(), (lo, hi));
        prop_assert_eq!(q.vertices(), p.vertices());
    }

    #[test]
    fn membership_certificates_verify(p in interval_polytope(4), q in interval_polytope(4), x in simplex_point(4)) {
        prop_assume!(p.dim() == q.dim());
        let x: Point = x.into_iter().take(p.dim()).collect();
        let total: Rational = x.iter().sum();
        prop_assume!(total > ratio(0, 1));
        let x: Point = x.iter().map(|v| v / &total).collect();
        let members = vec![p.clone(), q];
        let cert = contains_union(&members, &x).unwrap();
        prop_assert!(verify_union_certificate(&cert, &x, &members).unwrap());
        let hull = VPolytope::new(p.dim(), p.vertices()).unwrap();
        let cert = contains(&hull, &x).unwrap();
        prop_assert!(verify_certificate(&cert, &x, hull.generators()).unwrap());
        prop_assert_eq!(cert.is_inside(), p.contains(&x));
    }

    #[test]
    fn hull_equality_is_an_equivalence(p in interval_polytope(3), q in interval_polytope(3)) {
        prop_assume!(p.dim() == q.dim());
        prop_assert!(hull_equal(&[p.clone()], &[p.clone()]).unwrap());
        prop_assert_eq!(
            hull_equal(&[p.clone()], &[q.clone()]).unwrap(),
            hull_equal(&[q.clone()], &[p.clone()]).unwrap()
        );
        // the single-polytope fast path agrees with the general test
        prop_assert_eq!(
            hull_equal(&[p.clone()], &[q.clone()]).unwrap(),
            hull_separation(&[p.clone()], &[q.clone()]).unwrap().is_none()
        );
    }

    #[test]
    fn adding_a_contained_member_keeps_the_hull(p in interval_polytope(4), pick in 0usize..64) {
        let vs = p.vertices();
        let v = &vs[pick % vs.len()];
        let point = IntervalPolytope::point(v).unwrap();
        prop_assert!(hull_equal(&[p.clone()], &[p.clone(), point.clone()]).unwrap());
        prop_assert!(hull_equal(&[p.clone(), point], &[p]).unwrap());
    }

    #[test]
    fn splitting_a_polytope_keeps_the_hull(p in interval_polytope(4)) {
        let (lo, hi) = p.tightened();
        prop_assume!(lo[0] < hi[0]);
        let mid = (&lo[0] + &hi[0]) * ratio(1, 2);
        let mut hi_low = p.hi().to_vec();
        hi_low[0] = mid.clone();
        let mut lo_high = p.lo().to_vec();
        lo_high[0] = mid;
        let low = IntervalPolytope::new(p.lo().to_vec(), hi_low).unwrap();
        let high = IntervalPolytope::new(lo_high, p.hi().to_vec()).unwrap();
        prop_assert!(hull_equal(&[p.clone()], &[low.clone(), high.clone()]).unwrap());
        // either half alone is strictly smaller
        prop_assert!(!hull_equal(&[p.clone()], &[low]).unwrap());
        prop_assert!(!hull_equal(&[p], &[high]).unwrap());
    }

    #[test]
    fn projection_equals_tightened_bounds(p in interval_polytope(5)) {
        let hull = VPolytope::new(p.dim(), p.vertices()).unwrap();
        let (lo, hi) = p.tightened();
        for i in 0..p.dim() {
            let iv = hull.project(i).unwrap();
            prop_assert_eq!(iv.lo(), &lo[i]);
            prop_assert_eq!(iv.hi(), &hi[i]);
        }
    }
}
