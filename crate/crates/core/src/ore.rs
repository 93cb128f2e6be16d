//! Ore extensions `R[x; sigma, delta]` and `R_q[x; sigma_q, delta_q]`.
//!
//! Elements are always stored in left normal form `sum f_i x^i`; products
//! are normalized with `x f = sigma(f) x + delta(f)`. The ring itself is an
//! object ([`OreRing`]) that owns the twisting data, and elements
//! ([`SkewPoly`]) are plain coefficient vectors.

use std::sync::Arc;

use crate::endo::Automorphism;
use crate::error::{AlgebraError, Result};
use crate::poly::{Polynomial, RationalFunction, RingElem, Scalar};
use crate::skew::SkewDerivation;

/// Coefficient ring of an Ore extension together with its twist.
pub trait SkewCoefficients {
    type Elem: RingElem;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn sigma(&self, c: &Self::Elem) -> Self::Elem;
    fn delta(&self, c: &Self::Elem) -> Self::Elem;
}

/// Left-normal skew polynomial: `coeffs[i]` is the left coefficient of `x^i`.
/// Trailing zeros are trimmed, so the zero element has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewPoly<C> {
    coeffs: Vec<C>,
}

impl<C: RingElem> SkewPoly<C> {
    pub fn from_coeffs(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(RingElem::is_zero_elem) {
            coeffs.pop();
        }
        SkewPoly { coeffs }
    }

    pub fn zero() -> Self {
        SkewPoly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Option<&C> {
        self.coeffs.get(i)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `x`; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn map_coeffs<D: RingElem>(&self, f: impl Fn(&C) -> D) -> SkewPoly<D> {
        SkewPoly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a.clone() + b.clone(),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Self {
        SkewPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Left multiplication by a coefficient: `c * sum f_i x^i = sum (c f_i) x^i`.
    pub fn left_mul(&self, c: &C) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|f| c.clone() * f.clone()).collect())
    }
}

pub type OrePoly = SkewPoly<Polynomial>;
pub type OrePolyQ = SkewPoly<RationalFunction>;

/// Coefficients in `R`, twisted by a validated sigma-derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyCoefficients {
    delta: SkewDerivation,
}

impl SkewCoefficients for PolyCoefficients {
    type Elem = Polynomial;
    fn zero(&self) -> Polynomial {
        Polynomial::zero(self.delta.nvars())
    }
    fn one(&self) -> Polynomial {
        Polynomial::one(self.delta.nvars())
    }
    fn sigma(&self, c: &Polynomial) -> Polynomial {
        self.delta.sigma().apply(c)
    }
    fn delta(&self, c: &Polynomial) -> Polynomial {
        self.delta.apply(c)
    }
}

/// Coefficients in `R_q` with `delta_q(c) = kappa (sigma_q(c) - c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionCoefficients {
    sigma: Arc<Automorphism>,
    kappa: RationalFunction,
}

impl SkewCoefficients for FractionCoefficients {
    type Elem = RationalFunction;
    fn zero(&self) -> RationalFunction {
        RationalFunction::zero(self.sigma.nvars())
    }
    fn one(&self) -> RationalFunction {
        RationalFunction::one(self.sigma.nvars())
    }
    fn sigma(&self, c: &RationalFunction) -> RationalFunction {
        self.sigma.apply_to_ratfunc(c)
    }
    fn delta(&self, c: &RationalFunction) -> RationalFunction {
        &self.kappa * &(&self.sigma(c) - c)
    }
}

/// An Ore extension over the coefficient ring `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OreRing<S> {
    coefficients: S,
}

/// `E = R[x; sigma, delta]`.
pub type OreExtension = OreRing<PolyCoefficients>;
/// `E_q = R_q[x; sigma_q, delta_q]`.
pub type QuotientExtension = OreRing<FractionCoefficients>;

impl<S: SkewCoefficients> OreRing<S> {
    pub fn coefficients(&self) -> &S {
        &self.coefficients
    }

    pub fn one(&self) -> SkewPoly<S::Elem> {
        SkewPoly::from_coeffs(vec![self.coefficients.one()])
    }

    pub fn x(&self) -> SkewPoly<S::Elem> {
        SkewPoly::from_coeffs(vec![self.coefficients.zero(), self.coefficients.one()])
    }

    pub fn constant(&self, c: S::Elem) -> SkewPoly<S::Elem> {
        SkewPoly::from_coeffs(vec![c])
    }

    /// `c x^i`.
    pub fn term(&self, c: S::Elem, i: usize) -> SkewPoly<S::Elem> {
        let mut coeffs = vec![self.coefficients.zero(); i];
        coeffs.push(c);
        SkewPoly::from_coeffs(coeffs)
    }

    /// `x * a`.
    pub fn x_mul(&self, a: &SkewPoly<S::Elem>) -> SkewPoly<S::Elem> {
        let mut out = vec![self.coefficients.zero(); a.coeffs.len() + 1];
        for (k, c) in a.coeffs.iter().enumerate() {
            out[k + 1] = out[k + 1].clone() + self.coefficients.sigma(c);
            let d = self.coefficients.delta(c);
            if !d.is_zero_elem() {
                out[k] = out[k].clone() + d;
            }
        }
        SkewPoly::from_coeffs(out)
    }

    pub fn mul(&self, a: &SkewPoly<S::Elem>, b: &SkewPoly<S::Elem>) -> SkewPoly<S::Elem> {
        let mut acc = SkewPoly::zero();
        let mut shifted = b.clone();
        for (i, ai) in a.coeffs.iter().enumerate() {
            if i > 0 {
                shifted = self.x_mul(&shifted);
            }
            if !ai.is_zero_elem() {
                acc = acc.add(&shifted.left_mul(ai));
            }
        }
        acc
    }

    pub fn pow(&self, a: &SkewPoly<S::Elem>, r: u32) -> SkewPoly<S::Elem> {
        let mut acc = self.one();
        for _ in 0..r {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// `x f - sigma(f) x - delta(f)`; zero for a correct implementation.
    pub fn relation_defect(&self, f: &S::Elem) -> SkewPoly<S::Elem> {
        let c = &self.coefficients;
        let lhs = self.mul(&self.x(), &self.constant(f.clone()));
        let rhs = self.term(c.sigma(f), 1).add(&self.constant(c.delta(f)));
        lhs.sub(&rhs)
    }
}

impl OreExtension {
    pub fn new(delta: SkewDerivation) -> Self {
        OreRing {
            coefficients: PolyCoefficients { delta },
        }
    }

    pub fn nvars(&self) -> usize {
        self.coefficients.delta.nvars()
    }

    pub fn delta(&self) -> &SkewDerivation {
        &self.coefficients.delta
    }

    pub fn sigma(&self) -> &Arc<Automorphism> {
        self.coefficients.delta.sigma()
    }

    /// The generator `z_{i+1}` as an element of `E`.
    pub fn z(&self, i: usize) -> OrePoly {
        self.constant(Polynomial::var(self.nvars(), i))
    }

    /// Embed `E` into `E_q`.
    pub fn to_quotient(a: &OrePoly) -> OrePolyQ {
        a.map_coeffs(|c| RationalFunction::from_poly(c.clone()))
    }

    /// The quotient extension `E_q`; only defined when `sigma != id`.
    pub fn quotient(&self) -> Result<QuotientExtension> {
        let kappa = self.delta().kappa()?;
        Ok(QuotientExtension::new(self.sigma().clone(), kappa))
    }
}

impl QuotientExtension {
    pub fn new(sigma: Arc<Automorphism>, kappa: RationalFunction) -> Self {
        OreRing {
            coefficients: FractionCoefficients { sigma, kappa },
        }
    }

    /// Build `E_q` directly, rejecting the differential case.
    pub fn try_new(sigma: Arc<Automorphism>, kappa: RationalFunction) -> Result<Self> {
        if sigma.is_identity() {
            return Err(AlgebraError::DifferentialCase);
        }
        Ok(Self::new(sigma, kappa))
    }

    pub fn kappa(&self) -> &RationalFunction {
        &self.coefficients.kappa
    }

    pub fn sigma(&self) -> &Arc<Automorphism> {
        &self.coefficients.sigma
    }

    /// `(kappa, sigma_q(kappa), ..., sigma_q^{r-1}(kappa))`.
    pub fn kappa_orbit(&self, r: usize) -> Vec<RationalFunction> {
        let mut out = Vec::with_capacity(r);
        let mut cur = self.kappa().clone();
        for _ in 0..r {
            let next = self.coefficients.sigma(&cur);
            out.push(cur);
            cur = next;
        }
        out
    }

    /// `(x + kappa)^r` by the elementary symmetric coefficient formula.
    pub fn shifted_power(&self, r: usize) -> OrePolyQ {
        let one = self.coefficients.one();
        let orbit = self.kappa_orbit(r);
        let coeffs = (0..=r)
            .map(|i| elementary_symmetric(r - i, &orbit, &one).expect("k <= r"))
            .collect();
        SkewPoly::from_coeffs(coeffs)
    }

    /// Unique `g_i` with `a = sum g_i (x + kappa)^i`, by back-substitution
    /// against the unitriangular change of basis.
    pub fn to_shifted_basis(&self, a: &OrePolyQ) -> Vec<RationalFunction> {
        let Some(m) = a.degree() else {
            return Vec::new();
        };
        let mut g = vec![self.coefficients.zero(); m + 1];
        let mut rest = a.clone();
        for i in (0..=m).rev() {
            let gi = rest.coeff(i).cloned().unwrap_or_else(|| self.coefficients.zero());
            if gi.is_zero() {
                continue;
            }
            rest = rest.sub(&self.shifted_power(i).left_mul(&gi));
            g[i] = gi;
        }
        debug_assert!(rest.is_zero());
        g
    }

    pub fn from_shifted_basis(&self, g: &[RationalFunction]) -> OrePolyQ {
        g.iter()
            .enumerate()
            .filter(|(_, gi)| !gi.is_zero())
            .fold(SkewPoly::zero(), |acc, (i, gi)| acc.add(&self.shifted_power(i).left_mul(gi)))
    }
}

/// Elementary symmetric polynomial `e_k(values)`; `e_0 = 1`. The `one`
/// argument supplies the ring's unit when `values` is empty.
pub fn elementary_symmetric<T: RingElem>(k: usize, values: &[T], one: &T) -> Result<T> {
    let r = values.len();
    if k > r {
        return Err(AlgebraError::SymmetricRange { k, r });
    }
    let mut e: Vec<T> = vec![one.zero_like(); k + 1];
    e[0] = one.clone();
    for v in values {
        for j in (1..=k).rev() {
            e[j] = e[j].clone() + e[j - 1].clone() * v.clone();
        }
    }
    Ok(e.swap_remove(k))
}

/// Scalar-multiple helper used by callers building elements term by term.
pub fn scale_poly(a: &OrePoly, c: &Scalar) -> OrePoly {
    a.map_coeffs(|f| f.scale(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endo::PolyEndo;
    use crate::poly::int;

    fn z(i: usize) -> Polynomial {
        Polynomial::var(2, i)
    }

    fn c(v: i64) -> Polynomial {
        Polynomial::constant(2, int(v))
    }

    fn ext(sigma: Vec<Polynomial>, delta: Vec<Polynomial>) -> OreExtension {
        let s = Arc::new(Automorphism::new(PolyEndo::new(sigma).unwrap()).unwrap());
        OreExtension::new(SkewDerivation::new(s, delta).unwrap())
    }

    fn rf(num: Polynomial, den: Polynomial) -> RationalFunction {
        RationalFunction::new(num, den).unwrap()
    }

    #[test]
    fn ore_relation_example_a() {
        let e = ext(vec![z(0).scale(&int(2)), z(1)], vec![c(1), c(0)]);
        let prod = e.mul(&e.x(), &e.z(0));
        assert_eq!(prod, OrePoly::from_coeffs(vec![c(1), z(0).scale(&int(2))]));
        let a = e.z(0);
        assert_eq!(e.mul(&a, &e.one()), a);
        let zx = e.term(z(0), 1);
        let prod2 = e.mul(&e.x(), &zx);
        assert_eq!(prod2, OrePoly::from_coeffs(vec![c(0), c(1), z(0).scale(&int(2))]));
    }

    #[test]
    fn powers() {
        let e = ext(vec![z(0).scale(&int(2)), z(1)], vec![c(1), c(0)]);
        assert_eq!(e.pow(&e.x(), 0), e.one());
        let weyl_sigma = Arc::new(Automorphism::identity(1));
        let weyl = OreExtension::new(
            SkewDerivation::new(weyl_sigma, vec![Polynomial::one(1)]).unwrap(),
        );
        let x2 = weyl.pow(&weyl.x(), 2);
        assert_eq!(x2, weyl.term(Polynomial::one(1), 2));
    }

    #[test]
    fn shifted_square_with_sign_twist() {
        let e = ext(vec![-&z(0), z(1)], vec![c(-2), c(0)]);
        let q = e.quotient().unwrap();
        let kappa = rf(c(1), z(0));
        assert_eq!(q.kappa(), &kappa);
        let x_plus_k = OreExtension::to_quotient(&e.x()).add(&q.constant(kappa.clone()));
        let expected = OrePolyQ::from_coeffs(vec![
            rf(c(-1), z(0).pow(2)),
            RationalFunction::zero(2),
            RationalFunction::one(2),
        ]);
        assert_eq!(q.pow(&x_plus_k, 2), expected);
        assert_eq!(q.shifted_power(2), expected);
        assert_eq!(q.shifted_power(0), q.one());
    }

    #[test]
    fn shifted_square_example_two() {
        let e = ext(vec![&z(0) + &z(1), z(1)], vec![z(0), c(0)]);
        let q = e.quotient().unwrap();
        let expected = OrePolyQ::from_coeffs(vec![
            rf(&z(0) * &(&z(0) + &z(1)), z(1).pow(2)),
            rf(&z(0).scale(&int(2)) + &z(1), z(1)),
            RationalFunction::one(2),
        ]);
        assert_eq!(q.shifted_power(2), expected);
    }

    #[test]
    fn elementary_symmetric_examples() {
        let (a, b, cc) = (z(0), z(1), c(3));
        let one = c(1);
        assert_eq!(elementary_symmetric(0, &[a.clone(), b.clone()], &one).unwrap(), one);
        assert_eq!(elementary_symmetric(1, &[a.clone(), b.clone()], &one).unwrap(), &a + &b);
        let e2 = elementary_symmetric(2, &[a.clone(), b.clone(), cc.clone()], &one).unwrap();
        assert_eq!(e2, &(&(&a * &b) + &(&a * &cc)) + &(&b * &cc));
        assert!(elementary_symmetric(3, &[a, b], &one).is_err());
    }

    #[test]
    fn shifted_basis_examples() {
        let e = ext(vec![-&z(0), z(1)], vec![c(-2), c(0)]);
        let q = e.quotient().unwrap();
        let kappa = q.kappa().clone();
        let x_plus_k = OreExtension::to_quotient(&e.x()).add(&q.constant(kappa));
        assert_eq!(q.to_shifted_basis(&x_plus_k), vec![RationalFunction::zero(2), RationalFunction::one(2)]);
        let x2 = OreExtension::to_quotient(&e.pow(&e.x(), 2));
        let g = q.to_shifted_basis(&x2);
        assert_eq!(g, vec![rf(c(1), z(0).pow(2)), RationalFunction::zero(2), RationalFunction::one(2)]);
        assert_eq!(q.from_shifted_basis(&g), x2);
        let f = rf(z(1), &z(0) + &c(1));
        assert_eq!(q.to_shifted_basis(&q.constant(f.clone())), vec![f]);
    }

    #[test]
    fn quotient_rejected_in_differential_case() {
        let s = Arc::new(Automorphism::identity(2));
        let e = OreExtension::new(SkewDerivation::new(s.clone(), vec![z(0), c(0)]).unwrap());
        assert_eq!(e.quotient(), Err(AlgebraError::DifferentialCase));
        assert!(QuotientExtension::try_new(s, RationalFunction::zero(2)).is_err());
    }
}
