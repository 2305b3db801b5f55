//! Sweeps joining the exact and asymptotic sides, exponent fits, identity
//! checks and CSV/JSON output. Everything here works in `f64`.

mod compare;
mod config;
mod emit;
mod fit;
mod identities;

pub use compare::{
    fit_table, run_asympt, run_compare, run_exact, AsymptRow, CompareRow, CompareTable, ExactRow, FitEntry,
    TableMetadata, Tolerances,
};
pub use config::{Format, SweepConfig};
pub use emit::{emit, rows_to_csv, table_from_json, table_to_csv, table_to_json};
pub use fit::{dominant_period, fit_exponent, fit_exponent_with, oscillation_periods, FitOptions, FitReport, Verdict};
pub use identities::{run_identities, IdentityCheck, IdentityReport};
