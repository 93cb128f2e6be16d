//! Endomorphisms and automorphisms of `R = Q[z1, ..., zn]`.

use std::fmt;

use num_traits::Zero;

use crate::error::{AlgebraError, Result};
use crate::linalg::{det_over_ring, solve_affine, AffineSolution, ScalarMatrix};
use crate::poly::{Monomial, Polynomial, RationalFunction, Scalar};

pub const DEFAULT_ORDER_BOUND: u32 = 64;

/// Algebra endomorphism determined by the images `sigma(z_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyEndo {
    images: Vec<Polynomial>,
}

impl PolyEndo {
    pub fn new(images: Vec<Polynomial>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(AlgebraError::NoVariables);
        }
        if let Some(p) = images.iter().find(|p| p.nvars() != n) {
            return Err(AlgebraError::AmbientMismatch {
                left: n,
                right: p.nvars(),
            });
        }
        Ok(PolyEndo { images })
    }

    pub fn identity(nvars: usize) -> Self {
        PolyEndo {
            images: (0..nvars).map(|i| Polynomial::var(nvars, i)).collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &Polynomial {
        &self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, p)| *p == Polynomial::var(self.nvars(), i))
    }

    pub fn max_degree(&self) -> u32 {
        self.images.iter().filter_map(Polynomial::total_degree).max().unwrap_or(0)
    }

    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        f.substitute(&self.images)
    }

    /// `(self ∘ other)(f) = self(other(f))`.
    pub fn compose(&self, other: &PolyEndo) -> Result<PolyEndo> {
        if self.nvars() != other.nvars() {
            return Err(AlgebraError::AmbientMismatch {
                left: self.nvars(),
                right: other.nvars(),
            });
        }
        let images = other
            .images
            .iter()
            .map(|p| self.apply(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyEndo { images })
    }

    pub fn pow(&self, r: u32) -> PolyEndo {
        let mut acc = PolyEndo::identity(self.nvars());
        for _ in 0..r {
            acc = self.compose(&acc).expect("same ambient");
        }
        acc
    }

    /// Matrix `(∂sigma_i/∂z_j)`.
    pub fn jacobian_matrix(&self) -> Vec<Vec<Polynomial>> {
        self.images
            .iter()
            .map(|p| (0..self.nvars()).map(|j| p.partial_derivative(j).expect("index in range")).collect())
            .collect()
    }

    /// Jacobian determinant, required to be a nonzero constant.
    pub fn jacobian_det(&self) -> Result<Scalar> {
        let det = det_over_ring(&self.jacobian_matrix());
        match det.constant_value() {
            Some(c) if !c.is_zero() => Ok(c),
            _ => Err(AlgebraError::NonConstantJacobian(format!("{det:?}"))),
        }
    }

    /// Least `r <= max_iter` with `sigma^r = id`.
    pub fn order(&self, max_iter: u32) -> Order {
        let mut power = self.clone();
        for r in 1..=max_iter {
            if power.is_identity() {
                return Order::Finite(r);
            }
            power = self.compose(&power).expect("same ambient");
        }
        Order::Unknown
    }

    /// Inverse by linear ansatz: every `tau_i` is sought among polynomials of
    /// total degree at most `degree_bound`, and `tau_i(sigma_1, ..., sigma_n) = z_i`
    /// is linear in the unknown coefficients.
    pub fn invert(&self, degree_bound: u32) -> Result<PolyEndo> {
        let n = self.nvars();
        let basis = Monomial::up_to_degree(n, degree_bound);
        let columns: Vec<Polynomial> = basis
            .iter()
            .map(|m| self.apply(&Polynomial::monomial(n, m.clone(), Scalar::from_integer(1.into()))))
            .collect::<Result<_>>()?;
        let mut row_index: Vec<Monomial> = columns
            .iter()
            .flat_map(|p| p.terms().map(|(m, _)| m.clone()))
            .chain((0..n).map(|i| Monomial::var(n, i)))
            .collect();
        row_index.sort();
        row_index.dedup();
        let mut a = ScalarMatrix::zeros(row_index.len(), basis.len());
        for (c, p) in columns.iter().enumerate() {
            for (m, coeff) in p.terms() {
                let r = row_index.binary_search(m).unwrap();
                a.set(r, c, coeff.clone());
            }
        }
        let mut images = Vec::with_capacity(n);
        for i in 0..n {
            let target = Monomial::var(n, i);
            let rhs: Vec<Scalar> = row_index
                .iter()
                .map(|m| Scalar::from_integer(i64::from(*m == target).into()))
                .collect();
            match solve_affine(&a, &rhs) {
                AffineSolution::Solved { particular, .. } => {
                    images.push(Polynomial::from_terms(n, basis.iter().cloned().zip(particular)));
                }
                AffineSolution::NoSolution => {
                    return Err(AlgebraError::InverseNotFound { degree_bound });
                }
            }
        }
        let inverse = PolyEndo { images };
        let id = PolyEndo::identity(n);
        if inverse.compose(self)? != id || self.compose(&inverse)? != id {
            return Err(AlgebraError::InverseNotFound { degree_bound });
        }
        Ok(inverse)
    }

    /// Degree bound `(max deg sigma_i)^(n-1)`, at least one.
    pub fn default_inverse_bound(&self) -> u32 {
        self.max_degree().max(1).pow(self.nvars() as u32 - 1).max(1)
    }
}

/// Order of an automorphism, as far as a bounded search can tell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(u32),
    Unknown,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(r) => write!(f, "{r}"),
            Order::Unknown => write!(f, "unknown"),
        }
    }
}

/// An automorphism with a verified two-sided inverse and its constant Jacobian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    forward: PolyEndo,
    inverse: PolyEndo,
    jacobian: Scalar,
}

impl Automorphism {
    /// Find the inverse by ansatz with the default degree bound.
    pub fn new(forward: PolyEndo) -> Result<Self> {
        let bound = forward.default_inverse_bound();
        Self::with_bound(forward, bound)
    }

    pub fn with_bound(forward: PolyEndo, degree_bound: u32) -> Result<Self> {
        let jacobian = forward.jacobian_det()?;
        let inverse = forward.invert(degree_bound)?;
        Ok(Automorphism {
            forward,
            inverse,
            jacobian,
        })
    }

    /// Use a caller-supplied inverse after checking both compositions.
    pub fn with_inverse(forward: PolyEndo, inverse: PolyEndo) -> Result<Self> {
        if forward.nvars() != inverse.nvars() {
            return Err(AlgebraError::AmbientMismatch {
                left: forward.nvars(),
                right: inverse.nvars(),
            });
        }
        let jacobian = forward.jacobian_det()?;
        let id = PolyEndo::identity(forward.nvars());
        if forward.compose(&inverse)? != id || inverse.compose(&forward)? != id {
            return Err(AlgebraError::InverseMismatch);
        }
        Ok(Automorphism {
            forward,
            inverse,
            jacobian,
        })
    }

    pub fn identity(nvars: usize) -> Self {
        let id = PolyEndo::identity(nvars);
        Automorphism {
            forward: id.clone(),
            inverse: id,
            jacobian: Scalar::from_integer(1.into()),
        }
    }

    pub fn nvars(&self) -> usize {
        self.forward.nvars()
    }

    pub fn forward(&self) -> &PolyEndo {
        &self.forward
    }

    pub fn inverse(&self) -> &PolyEndo {
        &self.inverse
    }

    pub fn jacobian(&self) -> &Scalar {
        &self.jacobian
    }

    pub fn is_identity(&self) -> bool {
        self.forward.is_identity()
    }

    pub fn image(&self, i: usize) -> &Polynomial {
        self.forward.image(i)
    }

    pub fn inverted(&self) -> Automorphism {
        Automorphism {
            forward: self.inverse.clone(),
            inverse: self.forward.clone(),
            jacobian: self.jacobian.recip(),
        }
    }

    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism> {
        Ok(Automorphism {
            forward: self.forward.compose(&other.forward)?,
            inverse: other.inverse.compose(&self.inverse)?,
            jacobian: &self.jacobian * &other.jacobian,
        })
    }

    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        self.forward.apply(f).expect("ambient checked at construction")
    }

    pub fn apply_inverse(&self, f: &Polynomial) -> Polynomial {
        self.inverse.apply(f).expect("ambient checked at construction")
    }

    /// `sigma^r` for any integer `r`, negative powers through the inverse.
    pub fn apply_power(&self, f: &Polynomial, r: i32) -> Polynomial {
        let mut out = f.clone();
        for _ in 0..r.unsigned_abs() {
            out = if r > 0 { self.apply(&out) } else { self.apply_inverse(&out) };
        }
        out
    }

    /// Natural extension `sigma_q` to the fraction field.
    pub fn apply_to_ratfunc(&self, c: &RationalFunction) -> RationalFunction {
        c.map_parts(|p| self.apply(p))
    }

    pub fn apply_inverse_to_ratfunc(&self, c: &RationalFunction) -> RationalFunction {
        c.map_parts(|p| self.apply_inverse(p))
    }

    pub fn ratfunc_power(&self, c: &RationalFunction, r: i32) -> RationalFunction {
        c.map_parts(|p| self.apply_power(p, r))
    }

    pub fn order(&self, max_iter: u32) -> Order {
        self.forward.order(max_iter)
    }
}
