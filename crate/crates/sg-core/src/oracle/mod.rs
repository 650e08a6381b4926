//! Independent verification engines: exhaustive subset enumeration,
//! determinant-based counting with degree interpolation, and a seeded
//! uniform-spanning-tree sampler.
//!
//! Nothing here shares code with the transfer-matrix pipeline; agreement
//! between the two is the main correctness argument for both.

mod exhaustive;
mod mtt;
mod wilson;

pub use exhaustive::{exhaustive_profiles, ExhaustiveResult};
pub use mtt::{mtt_count, mtt_degree_profile, mtt_forest_counts, mtt_full_profiles};
pub use wilson::{wilson_sample, SampleStats};

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::gasket::Coord;

/// Exact degree census of one vertex over an ensemble of spanning trees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub vertex: Coord,
    /// Trees with exactly 1, 2, 3, 4 bonds at the vertex.
    pub counts: [BigInt; 4],
    /// Ensemble size; always the sum of `counts`.
    pub total: BigInt,
}

impl DegreeProfile {
    pub fn new(vertex: Coord, counts: [BigInt; 4]) -> Self {
        let total = counts.iter().sum();
        DegreeProfile { vertex, counts, total }
    }
}

/// Oracle report in the exported JSON schema:
/// `{"n":.., "engine":.., "f":.., "g":.., "h":.., "profiles":[..]}`.
pub fn report_json(
    n: u32,
    engine: &str,
    fgh: Option<(&BigInt, &BigInt, &BigInt)>,
    profiles: &[DegreeProfile],
    extra: Value,
) -> Value {
    let mut v = json!({
        "n": n,
        "engine": engine,
        "f": fgh.map(|t| t.0.to_string()),
        "g": fgh.map(|t| t.1.to_string()),
        "h": fgh.map(|t| t.2.to_string()),
        "profiles": profiles.iter().map(|p| json!({
            "p": p.vertex.p,
            "q": p.vertex.q,
            "counts": p.counts.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "total": p.total.to_string(),
        })).collect::<Vec<_>>(),
    });
    if let (Value::Object(base), Value::Object(ext)) = (&mut v, extra) {
        base.extend(ext);
    }
    v
}
