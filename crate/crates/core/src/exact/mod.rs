//! Exact rational scalars and dense matrices.
//!
//! Every quantity in the crate is a [`Scalar`], an arbitrary-precision rational
//! kept in canonical form by `num-rational`. Matrices come in two flavours:
//! [`ExactMatrix`] for rational entries and [`BinaryMatrix`] for bit-packed 0/1
//! adjacency data.

mod binary;
mod matrix;

pub use binary::{BinaryMatrix, CountMatrix};
pub use matrix::{commutator, hadamard, mat_mul, solve_system, ExactMatrix};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational number, always in lowest terms with a positive
/// denominator.
pub type Scalar = BigRational;

/// Integer as a scalar.
pub fn int(value: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(value))
}

/// `num / den` as a scalar. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Integer power with a non-negative exponent.
pub fn pow(base: &Scalar, exp: u32) -> Scalar {
    num_traits::pow(base.clone(), exp as usize)
}

/// Canonical textual form: `"n"` for integers, `"n/d"` otherwise.
pub fn to_string(value: &Scalar) -> String {
    value.to_string()
}

/// Parses `"n"` or `"n/d"`.
pub fn parse(text: &str) -> Option<Scalar> {
    let text = text.trim();
    match text.split_once('/') {
        None => text.parse::<BigInt>().ok().map(Scalar::from_integer),
        Some((n, d)) => {
            let n = n.trim().parse::<BigInt>().ok()?;
            let d = d.trim().parse::<BigInt>().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Scalar::new(n, d))
            }
        }
    }
}

/// Number of bits needed for the magnitude of `value`.
pub(crate) fn bit_len(value: &BigInt) -> u64 {
    value.abs().bits()
}
