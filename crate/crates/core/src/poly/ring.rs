use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Polynomial, RationalFunction, Scalar};

/// Commutative integral-domain element with exact division.
///
/// The zero and one constructors take `&self` because polynomial rings need
/// the ambient variable count, which lives on the element.
pub trait RingElem:
    Clone + PartialEq + Debug + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    /// `self / divisor` if the quotient exists in the ring.
    fn div_exact(&self, divisor: &Self) -> Option<Self>;
}

impl RingElem for Scalar {
    fn zero_like(&self) -> Self {
        Scalar::zero()
    }
    fn one_like(&self) -> Self {
        Scalar::one()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn div_exact(&self, divisor: &Self) -> Option<Self> {
        (!Zero::is_zero(divisor)).then(|| self / divisor)
    }
}

impl RingElem for Polynomial {
    fn zero_like(&self) -> Self {
        Polynomial::zero(self.nvars())
    }
    fn one_like(&self) -> Self {
        Polynomial::one(self.nvars())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn div_exact(&self, divisor: &Self) -> Option<Self> {
        Polynomial::div_exact(self, divisor)
    }
}

impl RingElem for RationalFunction {
    fn zero_like(&self) -> Self {
        RationalFunction::zero(self.nvars())
    }
    fn one_like(&self) -> Self {
        RationalFunction::one(self.nvars())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn div_exact(&self, divisor: &Self) -> Option<Self> {
        self.checked_div(divisor).ok()
    }
}
