//! Shared fixtures for the benchmarks.

use prym_core::CoverSpec;

/// A `Z/12` cover of a genus 3 curve with six branch points of mixed orders.
pub fn z12_spec() -> CoverSpec {
    CoverSpec::from_coords(&[12], 3, &[&[1], &[2], &[3], &[4], &[5], &[9]]).expect("fixture is well formed")
}
