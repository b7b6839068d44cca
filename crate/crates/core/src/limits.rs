//! Resource limits, overridable through the environment.

pub const DEFAULT_BIT_BUDGET: u64 = 1_000_000;
pub const DEFAULT_DEGREE_CAP: usize = 64;

pub const BIT_BUDGET_VAR: &str = "WANDER_BIT_BUDGET";
pub const DEGREE_CAP_VAR: &str = "WANDER_DEGREE_CAP";

/// Largest bit length an orbit height may reach before a walk gives up.
pub fn bit_budget() -> u64 {
    read_var(BIT_BUDGET_VAR).unwrap_or(DEFAULT_BIT_BUDGET)
}

/// Largest degree `iterate` will build.
pub fn degree_cap() -> usize {
    read_var(DEGREE_CAP_VAR).unwrap_or(DEFAULT_DEGREE_CAP)
}

fn read_var<T: std::str::FromStr>(name: &str) -> Option<T> {
    std::env::var(name).ok()?.trim().parse().ok()
}
