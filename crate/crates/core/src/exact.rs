//! Overflow-checked integer arithmetic for closed-form coefficients.
//!
//! [`Ck`] carries an `i128` that turns into "overflowed" on the first
//! operation that leaves range, so long formulas read naturally and the
//! overflow surfaces once, at [`Ck::get`].

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ck(Option<i128>);

impl Ck {
    pub fn new(v: i128) -> Self {
        Ck(Some(v))
    }

    pub fn pow(self, e: u32) -> Self {
        Ck(self.0.and_then(|v| v.checked_pow(e)))
    }

    /// The value as `i64`, or an overflow error naming `what`.
    pub fn get(self, what: &'static str) -> Result<i64> {
        self.0.and_then(|v| i64::try_from(v).ok()).ok_or(Error::Overflow(what))
    }

    pub fn get_i128(self, what: &'static str) -> Result<i128> {
        self.0.ok_or(Error::Overflow(what))
    }
}

impl From<i64> for Ck {
    fn from(v: i64) -> Self {
        Ck(Some(v as i128))
    }
}

impl From<usize> for Ck {
    fn from(v: usize) -> Self {
        Ck(i128::try_from(v).ok())
    }
}

macro_rules! ck_binop {
    ($tr:ident, $f:ident, $checked:ident) => {
        impl $tr for Ck {
            type Output = Ck;
            fn $f(self, rhs: Ck) -> Ck {
                Ck(match (self.0, rhs.0) {
                    (Some(a), Some(b)) => a.$checked(b),
                    _ => None,
                })
            }
        }
        impl $tr<i128> for Ck {
            type Output = Ck;
            fn $f(self, rhs: i128) -> Ck {
                self.$f(Ck::new(rhs))
            }
        }
        impl $tr<Ck> for i128 {
            type Output = Ck;
            fn $f(self, rhs: Ck) -> Ck {
                Ck::new(self).$f(rhs)
            }
        }
    };
}

ck_binop!(Add, add, checked_add);
ck_binop!(Sub, sub, checked_sub);
ck_binop!(Mul, mul, checked_mul);

impl Neg for Ck {
    type Output = Ck;
    fn neg(self) -> Ck {
        Ck(self.0.and_then(|v| v.checked_neg()))
    }
}
