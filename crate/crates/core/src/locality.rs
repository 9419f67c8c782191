//! Runtime ledger of max-mode growth for every operator application.
//!
//! Each operator declares how far it may raise the largest mode index of its
//! input; applications record the observed growth and any excess is counted
//! as a violation.

use std::collections::BTreeMap;
use std::sync::Mutex;

use serde::Serialize;

use crate::ring::LaurentPoly;
use crate::tensor::TensorPoly;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LedgerEntry {
    pub margin: i32,
    pub applications: u64,
    pub worst_growth: i32,
    pub violations: u64,
}

static LEDGER: Mutex<BTreeMap<&'static str, LedgerEntry>> = Mutex::new(BTreeMap::new());

/// Largest mode index `max_j m_j` over the support, with `z^{-m}` for mode `m`.
pub fn max_mode_poly(f: &LaurentPoly) -> Option<i32> {
    f.terms().filter_map(|(e, _)| e.iter().map(|x| -x).max()).max()
}

pub fn max_mode(x: &TensorPoly) -> Option<i32> {
    x.components().filter_map(|(_, f)| max_mode_poly(f)).max()
}

/// Records one application of `op` mapping support with max mode `before` to `after`.
pub fn record(op: &'static str, margin: i32, before: Option<i32>, after: Option<i32>) {
    let growth = match (before, after) {
        (Some(b), Some(a)) => a - b,
        _ => i32::MIN,
    };
    let mut l = LEDGER.lock().unwrap_or_else(|e| e.into_inner());
    let e = l.entry(op).or_insert(LedgerEntry { margin, worst_growth: i32::MIN, ..Default::default() });
    e.applications += 1;
    e.worst_growth = e.worst_growth.max(growth);
    if growth > margin {
        e.violations += 1;
    }
}

pub fn record_poly(op: &'static str, margin: i32, before: &LaurentPoly, after: &LaurentPoly) {
    record(op, margin, max_mode_poly(before), max_mode_poly(after));
}

pub fn snapshot() -> BTreeMap<String, LedgerEntry> {
    LEDGER.lock().unwrap_or_else(|e| e.into_inner()).iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

pub fn total_violations() -> u64 {
    LEDGER.lock().unwrap_or_else(|e| e.into_inner()).values().map(|e| e.violations).sum()
}
