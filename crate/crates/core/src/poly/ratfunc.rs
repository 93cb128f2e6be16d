use std::ops::{Add, Mul, Neg, Sub};

use super::{forward_owned_binop, poly_gcd, Polynomial, Scalar};
use crate::error::{AlgebraError, Result};

/// Element of the fraction field `Q(z1, ..., zn)` in canonical form:
/// numerator and denominator coprime, denominator monic under graded-lex,
/// zero stored as `0/1`. Structural equality is therefore field equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        if num.nvars() != den.nvars() {
            return Err(AlgebraError::AmbientMismatch {
                left: num.nvars(),
                right: den.nvars(),
            });
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Polynomial, den: Polynomial) -> Self {
        let n = num.nvars();
        if num.is_zero() {
            return RationalFunction {
                num,
                den: Polynomial::one(n),
            };
        }
        let g = poly_gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_coefficient().recip();
        RationalFunction {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        let n = p.nvars();
        RationalFunction {
            num: p,
            den: Polynomial::one(n),
        }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(Polynomial::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(Polynomial::one(nvars))
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        Self::from_poly(Polynomial::constant(nvars, c))
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the denominator is a unit, i.e. the value lies in `R`.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn to_polynomial(&self) -> Option<Polynomial> {
        self.is_polynomial().then(|| self.num.clone())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::reduce(self.num.scale(c), self.den.clone())
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inverse()?)
    }

    /// Equality by cross-multiplication, independent of normal form.
    pub fn cross_equal(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    /// Apply a ring map to numerator and denominator. The caller guarantees
    /// the denominator image is nonzero (true for injective maps).
    pub fn map_parts(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Self {
        Self::reduce(f(&self.num), f(&self.den))
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::reduce(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::reduce(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

forward_owned_binop!(RationalFunction, Add, add);
forward_owned_binop!(RationalFunction, Sub, sub);
forward_owned_binop!(RationalFunction, Mul, mul);
