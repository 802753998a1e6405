//! Core data model: intervals, distributions, IMDPs, PAs and partitions.

mod distribution;
mod imdp;
mod interval;
mod pa;
mod partition;
mod space;
mod union;

pub use distribution::{class_project, convex_combine, lift_equiv, product_dist, Distribution};
pub use imdp::{ActionId, Imdp, ImdpBuilder, Row};
pub use interval::Interval;
pub use pa::{Pa, PaBuilder};
pub use partition::{BlockId, Partition};
pub use space::{Model, StateSpace, Violation};
pub use union::{disjoint_union_imdp, disjoint_union_pa, Union};

pub type StateId = usize;

/// Name of the single action carried by folded models.
pub const FOLD_ACTION: &str = "f";

/// Either model kind, as read from a file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyModel {
    Imdp(Imdp),
    Pa(Pa),
}

impl AnyModel {
    pub fn kind(&self) -> &'static str {
        match self {
            AnyModel::Imdp(_) => "imdp",
            AnyModel::Pa(_) => "pa",
        }
    }

    pub fn as_model(&self) -> &dyn Model {
        match self {
            AnyModel::Imdp(m) => m,
            AnyModel::Pa(a) => a,
        }
    }
}

impl From<Imdp> for AnyModel {
    fn from(m: Imdp) -> Self {
        AnyModel::Imdp(m)
    }
}

impl From<Pa> for AnyModel {
    fn from(a: Pa) -> Self {
        AnyModel::Pa(a)
    }
}
