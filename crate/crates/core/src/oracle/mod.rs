//! Brute-force references and random model generators.
//!
//! Everything here is deliberately simple and slow, and shares as little
//! code as possible with the algorithms it checks. Oracles refuse inputs
//! above a size cap instead of silently taking forever.

mod certificate;
mod generate;
mod naive;
mod vertices;

pub use certificate::{verify_certificate, verify_union_certificate};
pub use generate::{
    add_redundant_transition, duplicate_state_imdp, duplicate_state_pa, gen_bisimilar_pa_pair,
    gen_bisimilar_pair, gen_random_imdp, gen_random_pa, random_interval_polytope, rename_imdp,
    rename_pa, split_action,
};
pub use naive::{naive_bisim, naive_bisim_imdp, naive_bisim_pa, oracle_cap, MAX_STATES_VAR};
pub use vertices::brute_force_vertices;
