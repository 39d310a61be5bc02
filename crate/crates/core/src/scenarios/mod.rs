//! Diagonal hypersurface scenarios, closure route dispatch and the
//! end-to-end verification suites.

mod dispatch;
mod predict;
mod report;
mod scenario;
mod suite;
mod verify;

pub use dispatch::{applicable_routes, closure_by_route, tight_closure_powers};
pub use predict::{predicted_h_vector, predicted_lengths, predicted_polynomial, predicted_shift};
pub use report::{Assertion, LengthRow, VerificationReport};
pub use scenario::{build_scenario, Scenario};
pub use suite::{default_roster, paper_suite, shifted_report, RosterEntry, SuiteConfig, SHIFTED_GRID_PRIME};
pub use verify::{
    closure_report, default_n_max, hilbert_report, just_outside_monomial, verify_scenario, verify_scenario_with,
    VerifyOptions,
};
