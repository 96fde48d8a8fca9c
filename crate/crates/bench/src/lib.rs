//! Shared inputs for the criterion benchmarks.

use naads_core::SpaceKind;

/// Evenly spaced starting points for flow benchmarks.
pub fn starting_points(space: SpaceKind, count: usize) -> Vec<f64> {
    space.grid(count)
}
