//! Planar tangles as combinatorial objects: disks, a planar string matching and the
//! chessboard-shaded regions it cuts out.

mod build;
mod expr;
mod free;
mod tangle;

pub use build::{
    concat_tangle, cup_cap_tangle, fatten, identity_tangle, left_trace, mult_tangle, one_tangle, right_trace,
    rotation_tangle, s_tangle, t_pi, u_tangle, unit_tangle,
};
pub use expr::{parse, parse_syntax, Signature, TangleExpr};
pub use free::{
    free_compose, interleave, interleaving_form, irreducible_factorization, is_free_pair, recompose, reduced_pair,
    DiskColor, InterleavingForm,
};
pub use tangle::{Arc, Point, Region, Tangle};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TangleError {
    #[error("partition {0} is not even")]
    NotEven(String),
    #[error("partition {0} is not non-crossing")]
    NotNonCrossing(String),
    #[error("tangle is not connected")]
    NotConnected,
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("not a free pair: {0}")]
    NotFree(String),
    #[error("not a reduced free pair (π = {0})")]
    NotReduced(String),
    #[error("partition {0} does not dominate π₀")]
    PrecedenceViolation(String),
    #[error("no inner disk {0}")]
    NoSuchDisk(usize),
    #[error("unsupported tangle shape: {0}")]
    UnsupportedTangleShape(String),
    #[error("syntax error at line {line}, column {col}: expected {expected}")]
    Syntax { line: usize, col: usize, expected: String },
    #[error("invalid tangle: {0}")]
    Invalid(String),
}
