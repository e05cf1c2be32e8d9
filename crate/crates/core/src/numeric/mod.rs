//! Exact scalars: big rationals and sums of rational multiples of square roots.

mod field;
mod linalg;
mod surd;

pub use field::SurdField;
pub use linalg::{is_positive_semidefinite, leading_minors, nullspace, rank, Matrix, SparseEchelon};
pub use surd::{squarefree_decompose, Surd};

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

/// Arbitrary precision rational, always stored in lowest terms.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error("division by zero")]
    ZeroDivision,
    #[error("radicand {0} is not generated by the declared field")]
    RadicandOutsideField(u64),
    #[error("cannot parse `{0}` as an exact scalar")]
    Parse(String),
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p` or `p/q`, tolerating surrounding whitespace.
pub fn parse_rational(s: &str) -> Result<Rational, NumericError> {
    let t = s.trim();
    let bad = || NumericError::Parse(s.to_string());
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q == BigInt::from(0) {
                return Err(NumericError::ZeroDivision);
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}
