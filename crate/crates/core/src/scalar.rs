//! Integer scalars for the exact linear algebra kernels.
//!
//! Every kernel in [`crate::linalg`] is generic over [`IntRing`]. Arithmetic is
//! always checked: fixed-width scalars report [`Overflow`] instead of wrapping,
//! and callers retry the same computation over [`BigInt`], which never
//! overflows. [`with_fallback`] packages that retry.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

/// A fixed-width computation left the representable range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("integer overflow in fixed-width arithmetic")]
pub struct Overflow;

/// Euclidean ring of integers with checked arithmetic.
pub trait IntRing:
    Clone
    + Debug
    + Display
    + Eq
    + Ord
    + Hash
    + Zero
    + One
    + Signed
    + Integer
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + Send
    + Sync
    + 'static
{
    /// Narrow an arbitrary-precision integer, if it fits.
    fn from_int(v: &BigInt) -> Option<Self>;

    fn to_int(&self) -> BigInt;

    /// Values that are representable but cannot be negated (`i64::MIN`).
    fn at_edge(&self) -> bool {
        false
    }

    fn from_i64(v: i64) -> Self {
        Self::from_int(&BigInt::from(v)).expect("small constant fits every scalar")
    }

    fn add_c(&self, other: &Self) -> Result<Self, Overflow> {
        self.checked_add(other).filter(|v| !v.at_edge()).ok_or(Overflow)
    }

    fn sub_c(&self, other: &Self) -> Result<Self, Overflow> {
        self.checked_sub(other).filter(|v| !v.at_edge()).ok_or(Overflow)
    }

    fn mul_c(&self, other: &Self) -> Result<Self, Overflow> {
        self.checked_mul(other).filter(|v| !v.at_edge()).ok_or(Overflow)
    }

    fn neg_c(&self) -> Result<Self, Overflow> {
        Self::zero().sub_c(self)
    }

    /// `self + a * b`
    fn mul_add_c(&self, a: &Self, b: &Self) -> Result<Self, Overflow> {
        self.add_c(&a.mul_c(b)?)
    }

    /// Representative of `self` in `[0, m)` when `m > 0`; `self` unchanged when `m == 0`.
    fn reduce(&self, m: &Self) -> Self {
        if m.is_zero() {
            self.clone()
        } else {
            self.mod_floor(m)
        }
    }
}

macro_rules! impl_fixed {
    ($t:ty, $conv:ident) => {
        impl IntRing for $t {
            fn from_int(v: &BigInt) -> Option<Self> {
                v.$conv().filter(|x| *x != <$t>::MIN)
            }

            fn to_int(&self) -> BigInt {
                BigInt::from(*self)
            }

            fn at_edge(&self) -> bool {
                *self == <$t>::MIN
            }

            fn from_i64(v: i64) -> Self {
                v as $t
            }
        }
    };
}

impl_fixed!(i64, to_i64);
impl_fixed!(i128, to_i128);

impl IntRing for BigInt {
    fn from_int(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }

    fn to_int(&self) -> BigInt {
        self.clone()
    }

    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

/// Extended gcd: `(g, x, y)` with `g = x*a + y*b` and `g >= 0`.
pub fn ext_gcd<T: IntRing>(a: &T, b: &T) -> Result<(T, T, T), Overflow> {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (T::one(), T::zero());
    let (mut t0, mut t1) = (T::zero(), T::one());
    while !r1.is_zero() {
        let q = r0.div_floor(&r1);
        let r2 = r0.sub_c(&q.mul_c(&r1)?)?;
        let s2 = s0.sub_c(&q.mul_c(&s1)?)?;
        let t2 = t0.sub_c(&q.mul_c(&t1)?)?;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_negative() {
        Ok((r0.neg_c()?, s0.neg_c()?, t0.neg_c()?))
    } else {
        Ok((r0, s0, t0))
    }
}

/// Narrow a slice of big integers into `T`, or `None` if any entry does not fit.
pub fn narrow<T: IntRing>(values: &[BigInt]) -> Option<Vec<T>> {
    values.iter().map(T::from_int).collect()
}

pub fn widen<T: IntRing>(values: &[T]) -> Vec<BigInt> {
    values.iter().map(IntRing::to_int).collect()
}

/// Run `fast` on a fixed-width scalar; rerun `slow` over [`BigInt`] if it
/// reports overflow (or could not even be set up, signalled by `None`).
pub fn with_fallback<R>(
    fast: impl FnOnce() -> Option<Result<R, Overflow>>,
    slow: impl FnOnce() -> Result<R, Overflow>,
) -> R {
    match fast() {
        Some(Ok(r)) => r,
        _ => slow().expect("arbitrary-precision arithmetic cannot overflow"),
    }
}
