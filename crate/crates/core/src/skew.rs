//! Sigma-derivations of `R`: `delta(fg) = delta(f) g + sigma(f) delta(g)`.

use std::sync::Arc;

use crate::endo::Automorphism;
use crate::error::{AlgebraError, Result};
use crate::poly::{Polynomial, RationalFunction};

/// A validated sigma-derivation, determined by `delta(z_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewDerivation {
    images: Vec<Polynomial>,
    sigma: Arc<Automorphism>,
}

impl SkewDerivation {
    /// Check the pairwise condition `d_i (s_j - z_j) = d_j (s_i - z_i)`,
    /// which is necessary and sufficient on a commutative polynomial ring.
    pub fn new(sigma: Arc<Automorphism>, images: Vec<Polynomial>) -> Result<Self> {
        let n = sigma.nvars();
        if images.len() != n {
            return Err(AlgebraError::LengthMismatch {
                expected: n,
                found: images.len(),
            });
        }
        if let Some(p) = images.iter().find(|p| p.nvars() != n) {
            return Err(AlgebraError::AmbientMismatch {
                left: n,
                right: p.nvars(),
            });
        }
        let shifts: Vec<Polynomial> = (0..n).map(|i| sigma.image(i) - &Polynomial::var(n, i)).collect();
        for i in 0..n {
            for j in i + 1..n {
                if &images[i] * &shifts[j] != &images[j] * &shifts[i] {
                    return Err(AlgebraError::InconsistentDerivation { i: i + 1, j: j + 1 });
                }
            }
        }
        Ok(SkewDerivation { images, sigma })
    }

    pub fn zero(sigma: Arc<Automorphism>) -> Self {
        let n = sigma.nvars();
        SkewDerivation {
            images: vec![Polynomial::zero(n); n],
            sigma,
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

    pub fn sigma(&self) -> &Arc<Automorphism> {
        &self.sigma
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Polynomial::is_zero)
    }

    /// Extend to all of `R` by linearity and, per monomial, the recursion
    /// `delta(P z_i) = delta(P) z_i + sigma(P) delta_i`.
    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        let n = self.nvars();
        let mut out = Polynomial::zero(n);
        for (m, c) in f.terms() {
            let mut sigma_prefix = Polynomial::one(n);
            let mut acc = Polynomial::zero(n);
            for (i, &e) in m.exponents().iter().enumerate() {
                let zi = Polynomial::var(n, i);
                for _ in 0..e {
                    acc = &(&acc * &zi) + &(&sigma_prefix * &self.images[i]);
                    sigma_prefix = &sigma_prefix * self.sigma.image(i);
                }
            }
            out += &acc.scale(c);
        }
        out
    }

    /// The unique `kappa` in the fraction field with `delta(h) = kappa (sigma(h) - h)`.
    pub fn kappa(&self) -> Result<RationalFunction> {
        let n = self.nvars();
        if self.sigma.is_identity() {
            return Err(AlgebraError::DifferentialCase);
        }
        if self.is_zero() {
            return Ok(RationalFunction::zero(n));
        }
        let i = (0..n)
            .find(|&i| *self.sigma.image(i) != Polynomial::var(n, i))
            .expect("sigma is not the identity");
        let shift = self.sigma.image(i) - &Polynomial::var(n, i);
        let kappa = RationalFunction::new(self.images[i].clone(), shift)?;
        for j in 0..n {
            let shift_j = RationalFunction::from_poly(self.sigma.image(j) - &Polynomial::var(n, j));
            if &kappa * &shift_j != RationalFunction::from_poly(self.images[j].clone()) {
                return Err(AlgebraError::Internal(format!("kappa fails on generator z{}", j + 1)));
            }
        }
        Ok(kappa)
    }
}
