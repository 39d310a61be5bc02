use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::report::VerificationReport;
use super::verify::{verify_scenario_with, VerifyOptions};
use super::Scenario;
use crate::groebner::Budget;
use crate::hilbert::binomial_coefficients_check;

/// Characteristic used for the shifted-filtration grid, where only `r, t, d`
/// matter.
pub const SHIFTED_GRID_PRIME: u32 = 101;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RosterEntry {
    Scenario { p: u32, r: u32, v: usize },
    Shifted { r: u32, t: u32, d: usize },
}

impl RosterEntry {
    pub fn label(&self) -> String {
        match self {
            RosterEntry::Scenario { p, r, v } => format!("scenario {p},{r},{v}"),
            RosterEntry::Shifted { r, t, d } => format!("shifted r={r} t={t} d={d}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub roster: Vec<RosterEntry>,
    pub verify: VerifyOptions,
    pub budget: Budget,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            roster: default_roster(),
            verify: VerifyOptions::default(),
            budget: Budget::default(),
        }
    }
}

/// The quartic across characteristics, the three-variable quartic, the
/// strong-vanishing grid at the smallest admissible prime per degree, the
/// shifted-filtration grid, and the two-dimensional cubics and quartics.
pub fn default_roster() -> Vec<RosterEntry> {
    let mut roster = Vec::new();
    let mut push = |e: RosterEntry| {
        if !roster.contains(&e) {
            roster.push(e);
        }
    };
    for p in [2, 3, 5, 7, 13] {
        push(RosterEntry::Scenario { p, r: 4, v: 4 });
    }
    push(RosterEntry::Scenario { p: 3, r: 4, v: 3 });
    for (p, r, v) in [(2, 3, 3), (7, 4, 4), (13, 5, 5)] {
        push(RosterEntry::Scenario { p, r, v });
    }
    for r in 2..=8 {
        for t in 0..=r - 2 {
            for d in 0..=3 {
                push(RosterEntry::Shifted { r, t, d });
            }
        }
    }
    for (p, r) in [(5, 3), (7, 3), (5, 4), (7, 4)] {
        push(RosterEntry::Scenario { p, r, v: 3 });
    }
    roster
}

fn show<T: ToString>(x: Option<T>) -> String {
    x.map_or("none".into(), |v| v.to_string())
}

/// Shifted-filtration analytics as a report.
pub fn shifted_report(p: u32, r: u32, t: u32, d: usize, vv_max: u32) -> VerificationReport {
    let start = Instant::now();
    let mut rep = VerificationReport::new(
        format!("shifted filtration r={r} t={t} d={d}"),
        vec![p, r, t, d as u32],
        vv_max,
    );
    match binomial_coefficients_check(p, r, t, d, vv_max) {
        Ok(sr) => {
            rep.fitted = Some(sr.fitted.coeffs().to_vec());
            rep.predicted = Some(sr.expected.coeffs().to_vec());
            for (name, ok) in &sr.assertions {
                let detail = match name.as_str() {
                    "coefficients" => format!("fitted {}, expected {}", sr.fitted, sr.expected),
                    "postulation number" => {
                        format!(
                            "observed {}, expected {}",
                            show(sr.postulation),
                            sr.expected_postulation
                        )
                    }
                    "reduction number" => {
                        format!("observed {}, expected {}", show(sr.reduction), sr.expected_reduction)
                    }
                    "valabrega-valla" => sr.valabrega_valla.summary(),
                    _ => sr
                        .series
                        .as_ref()
                        .map_or("no series".into(), |s| format!("h = {:?}", s.numerator)),
                };
                rep.assert(name.clone(), *ok, detail);
            }
        }
        Err(e) => rep.record_error("shifted filtration", &e),
    }
    rep.elapsed_ms = start.elapsed().as_millis() as u64;
    rep
}

fn run_entry(entry: &RosterEntry, config: &SuiteConfig) -> VerificationReport {
    match *entry {
        RosterEntry::Scenario { p, r, v } => match Scenario::new(p, r, v) {
            Ok(s) => verify_scenario_with(&s.with_budget(config.budget), &config.verify),
            Err(e) => {
                let mut rep = VerificationReport::new(entry.label(), vec![p, r, v as u32], 0);
                rep.record_error("scenario", &e);
                rep
            }
        },
        RosterEntry::Shifted { r, t, d } => {
            shifted_report(SHIFTED_GRID_PRIME, r, t, d, config.verify.n_max.unwrap_or(5))
        }
    }
}

/// Runs every roster entry in parallel; reports come back in roster order.
pub fn paper_suite(config: &SuiteConfig) -> Vec<VerificationReport> {
    config.roster.par_iter().map(|e| run_entry(e, config)).collect()
}
