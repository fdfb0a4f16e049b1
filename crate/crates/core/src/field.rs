//! Exact scalar fields used by the linear algebra and the simplex solver.
//!
//! Every operation is checked: [`SmallRational`] reports overflow by returning
//! `None`, and callers retry in [`BigRational`], which never overflows. On the
//! {-1,0,1} matrices this crate produces, the small path almost always
//! suffices.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

pub type SmallRational = Ratio<i128>;

pub trait ExactField: Clone + PartialEq + PartialOrd + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_big(v: &BigRational) -> Option<Self>;
    fn to_big(&self) -> BigRational;
    fn eq_zero(&self) -> bool;
    fn gt_zero(&self) -> bool;
    fn lt_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Option<Self>;
    fn sub(&self, rhs: &Self) -> Option<Self>;
    fn mul(&self, rhs: &Self) -> Option<Self>;
    fn div(&self, rhs: &Self) -> Option<Self>;
    fn neg(&self) -> Self;
}

impl ExactField for SmallRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v as i128)
    }
    fn from_big(v: &BigRational) -> Option<Self> {
        Some(Ratio::new_raw(v.numer().to_i128()?, v.denom().to_i128()?))
    }
    fn to_big(&self) -> BigRational {
        BigRational::new_raw(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
    fn eq_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn gt_zero(&self) -> bool {
        Signed::is_positive(self)
    }
    fn lt_zero(&self) -> bool {
        Signed::is_negative(self)
    }
    fn add(&self, rhs: &Self) -> Option<Self> {
        self.checked_add(rhs)
    }
    fn sub(&self, rhs: &Self) -> Option<Self> {
        self.checked_sub(rhs)
    }
    fn mul(&self, rhs: &Self) -> Option<Self> {
        self.checked_mul(rhs)
    }
    fn div(&self, rhs: &Self) -> Option<Self> {
        self.checked_div(rhs)
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl ExactField for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(v.into())
    }
    fn from_big(v: &BigRational) -> Option<Self> {
        Some(v.clone())
    }
    fn to_big(&self) -> BigRational {
        self.clone()
    }
    fn eq_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn gt_zero(&self) -> bool {
        Signed::is_positive(self)
    }
    fn lt_zero(&self) -> bool {
        Signed::is_negative(self)
    }
    fn add(&self, rhs: &Self) -> Option<Self> {
        Some(self + rhs)
    }
    fn sub(&self, rhs: &Self) -> Option<Self> {
        Some(self - rhs)
    }
    fn mul(&self, rhs: &Self) -> Option<Self> {
        Some(self * rhs)
    }
    fn div(&self, rhs: &Self) -> Option<Self> {
        if Zero::is_zero(rhs) {
            None
        } else {
            Some(self / rhs)
        }
    }
    fn neg(&self) -> Self {
        -self
    }
}
