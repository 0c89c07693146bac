//! Shared inputs for the benchmarks.

use eulerprod_core::precision::pi_times;
use eulerprod_core::Real;

/// The sample points used across the series benchmarks: `1/10`, `1/3`,
/// `pi/4` and `1`.
pub fn sample_points(bits: u32) -> Vec<(&'static str, Real)> {
    vec![
        ("1/10", Real::ratio(1, 10, bits)),
        ("1/3", Real::ratio(1, 3, bits)),
        ("pi/4", pi_times(1, 4, bits)),
        ("1", Real::one(bits)),
    ]
}

/// Precisions the scaling benchmarks sweep.
pub const PRECISIONS: [u32; 3] = [128, 256, 1024];
