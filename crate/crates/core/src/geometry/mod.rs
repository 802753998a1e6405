//! Exact polytope kernel: interval polytopes on the simplex, convex hulls
//! of finite point sets, hull membership with certificates, and hull
//! equality.

pub mod lp;
mod membership;
mod polytope;

pub use membership::{
    contains, contains_union, hull_equal, hull_separation, vpoly_equal, vpoly_separation, HullTerm,
    MembershipCertificate, Separation, Side,
};
pub use polytope::{IntervalPolytope, Point, VPolytope};
