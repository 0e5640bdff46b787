//! Dyck paths, their statistics, the zeta map, quarter-plane walks and nested-pair counts.

mod dyck;
mod nested;
mod stats;
mod walks;
mod zeta;

pub use dyck::{DyckPath, Step};
pub use nested::{
    bounce_paths, count_above_determinant, count_between, enumerate_nested_pairs, naive_witness,
    steep_paths, verify_steep_bounce, NaiveWitness, NestedConstraint, SteepBounceRow,
};
pub use stats::PathStats;
pub use walks::{count_walks, count_walks_by_k, count_walks_by_up_steps, ColoredDyckPath, Walk, WalkStep};
