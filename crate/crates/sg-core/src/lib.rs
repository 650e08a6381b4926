//! Exact spanning-tree degree statistics on the two-dimensional Sierpinski
//! gasket `SG(n)`.
//!
//! For every vertex `x` of `SG(n)` this crate computes, in exact rational
//! arithmetic, the probability `F_j(n,x)` that `x` has degree `j` in a
//! uniformly random spanning tree, the per-stage averages `phi_j(n)`, and the
//! exact limiting distribution as `n -> infinity`. Everything is carried by
//! arbitrary-precision integers and rationals; floating point appears only at
//! the display boundary.
//!
//! The crate is organised around three independent routes to the same
//! numbers, which cross-validate each other:
//!
//! * transfer-matrix recursions over exact rational matrices ([`vertexdist`],
//!   [`cornerdist`], [`aggregate`]),
//! * determinant-based counting (Matrix-Tree and all-minors theorems) with
//!   degree recovery by integer Lagrange interpolation ([`oracle`]),
//! * brute-force subset enumeration and a seeded Wilson sampler ([`oracle`]).

pub mod aggregate;
pub mod cornerdist;
pub mod counts;
pub mod gasket;
pub mod oracle;
pub mod ratmat;
pub mod vertexdist;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: String, right: String },
    #[error("matrix is singular (zero pivot in column {column})")]
    SingularMatrix { column: usize },
    #[error("stage {n} exceeds configured bound {max} (set SG_MAX_STAGE to raise it)")]
    StageBound { n: u32, max: u32 },
    #[error("address parse error: {0}")]
    AddressParse(String),
    #[error("address not valid for SG({stage}): {reason}")]
    AddressInvalid { stage: u32, reason: String },
    #[error("{0:?} is not a vertex of this gasket")]
    NotAVertex(gasket::Coord),
    #[error("series diverges: |ratio * base| >= 1 for base {base}")]
    DivergentSeries { base: String },
    #[error("oracle bound exceeded: {reason}")]
    OracleBound { reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

/// Stage bound for graph construction and counting (default 12).
///
/// `SG_MAX_STAGE` overrides both this and [`max_table_stage`].
pub fn max_stage() -> u32 {
    env_stage().unwrap_or(12)
}

/// Stage bound for whole-table sweeps (default 6).
pub fn max_table_stage() -> u32 {
    env_stage().unwrap_or(6)
}

fn env_stage() -> Option<u32> {
    std::env::var("SG_MAX_STAGE").ok().and_then(|s| s.parse().ok())
}

pub(crate) fn check_stage(n: u32, max: u32) -> Result<()> {
    if n > max {
        Err(Error::StageBound { n, max })
    } else {
        Ok(())
    }
}
