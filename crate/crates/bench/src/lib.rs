//! Shared fixtures for the criterion benches.

/// Spaces the benches sweep over, smallest first.
pub const BENCH_SPACES: &[&str] = &["Gr(2,5)", "Gr(3,6)", "LG(4)", "OG(6)", "Q(10)", "E6", "E7"];
