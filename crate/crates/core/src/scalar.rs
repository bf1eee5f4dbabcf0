//! Integer scalar abstraction shared by the exact modules.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Exact signed integer type usable as the coefficient ring.
///
/// Blanket-implemented for `i32`, `i64`, `i128` and arbitrary precision
/// integers such as `num_bigint::BigInt`.
pub trait Int:
    Integer + Signed + Clone + Hash + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

impl<T> Int for T where
    T: Integer + Signed + Clone + Hash + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

/// Lift a small machine constant into `T`.
pub(crate) fn int<T: Int>(v: i64) -> T {
    T::from_i64(v).expect("scalar type cannot represent a small constant")
}

/// Parse a decimal integer (leading sign allowed).
pub(crate) fn parse_int<T: Int>(s: &str) -> Option<T> {
    let s = s.trim();
    let s = s.strip_prefix('+').unwrap_or(s);
    let body = s.strip_prefix('-').unwrap_or(s);
    if body.is_empty() || !body.bytes().all(|c| c.is_ascii_digit()) {
        return None;
    }
    T::from_str_radix(s, 10).ok()
}
