//! Exact rational scalars.
//!
//! Every coefficient in the engine is a `Rat`; there is no floating point
//! anywhere. `Rat` is always kept in canonical form (reduced, positive
//! denominator) by construction.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rat = num_rational::BigRational;

/// `n/d` as a canonical rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Division that reports a zero divisor instead of panicking.
pub fn checked_div(a: &Rat, b: &Rat) -> Result<Rat, DivisionByZero> {
    if b.is_zero() {
        Err(DivisionByZero)
    } else {
        Ok(a / b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("division by zero")]
pub struct DivisionByZero;

/// Renders a rational as `p/q` (or just `p` for integers), the form used in
/// structured reports.
pub fn rat_str(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// True if the canonical-form invariant holds (used by property tests).
pub fn is_canonical(x: &Rat) -> bool {
    use num_integer::Integer;
    x.denom().is_positive() && x.numer().gcd(x.denom()).is_one()
        || (x.numer().is_zero() && x.denom().is_one())
}
