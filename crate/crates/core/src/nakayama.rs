//! Nakayama automorphism of `E = R[x; sigma, delta]`.
//!
//! `nu` restricts to `sigma^{-1}` on `R` and sends `x` to `lambda x + b`:
//!
//! * `sigma = id`: `lambda = 1`, `b = div(delta)` (the divergence of the
//!   vector field `(delta_1, ..., delta_n)`);
//! * `sigma != id`, `delta = 0`: `lambda = J`, `b = 0`;
//! * otherwise: `lambda = J`, `b = J kappa - sigma_q^{-1}(kappa)`, which is
//!   always a polynomial even when `kappa` is not.

use std::fmt;

use num_traits::One;

use crate::endo::{Automorphism, Order};
use crate::error::{AlgebraError, Result};
use crate::expr::format_poly_default;
use crate::ore::{OreExtension, OrePoly};
use crate::poly::{Polynomial, RationalFunction, Scalar};
use crate::skew::SkewDerivation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseTag {
    Trimmed,
    Differential,
    General,
}

impl CaseTag {
    pub fn of(delta: &SkewDerivation) -> CaseTag {
        if delta.sigma().is_identity() {
            CaseTag::Differential
        } else if delta.is_zero() {
            CaseTag::Trimmed
        } else {
            CaseTag::General
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CaseTag::Trimmed => "trimmed",
            CaseTag::Differential => "differential",
            CaseTag::General => "general",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NakayamaData {
    on_r: Automorphism,
    lambda: Scalar,
    b: Polynomial,
    case: CaseTag,
}

impl NakayamaData {
    pub fn on_r(&self) -> &Automorphism {
        &self.on_r
    }

    pub fn lambda(&self) -> &Scalar {
        &self.lambda
    }

    pub fn b(&self) -> &Polynomial {
        &self.b
    }

    pub fn case(&self) -> CaseTag {
        self.case
    }

    /// Same map on `R`, with `nu(x) = lambda x + b'`.
    pub fn with_translation(&self, b: Polynomial) -> NakayamaData {
        NakayamaData { b, ..self.clone() }
    }

    /// `nu(x)` as an element of `E`.
    pub fn image_of_x(&self) -> OrePoly {
        OrePoly::from_coeffs(vec![self.b.clone(), Polynomial::constant(self.b.nvars(), self.lambda.clone())])
    }

    pub fn is_identity(&self) -> bool {
        self.on_r.is_identity() && self.lambda.is_one() && self.b.is_zero()
    }

    /// Apply `nu` to `sum f_i x^i`, giving `sum nu(f_i) nu(x)^i` in normal form.
    pub fn apply(&self, ext: &OreExtension, a: &OrePoly) -> OrePoly {
        let nu_x = self.image_of_x();
        let mut acc = OrePoly::zero();
        for f in a.coeffs().iter().rev() {
            acc = ext.mul(&acc, &nu_x).add(&ext.constant(self.on_r.apply(f)));
        }
        acc
    }
}

/// Divergence `sum_u ∂delta_u/∂z_u` of a derivation (`sigma = id`).
pub fn divergence(delta: &SkewDerivation) -> Result<Polynomial> {
    if !delta.sigma().is_identity() {
        return Err(AlgebraError::NotDifferential);
    }
    let n = delta.nvars();
    Ok((0..n).fold(Polynomial::zero(n), |acc, u| {
        &acc + &delta.image(u).partial_derivative(u).expect("index in range")
    }))
}

/// Closed-form Nakayama automorphism with case dispatch.
pub fn compute_nakayama(delta: &SkewDerivation) -> Result<NakayamaData> {
    let sigma = delta.sigma();
    let n = delta.nvars();
    let case = CaseTag::of(delta);
    match case {
        CaseTag::Differential => Ok(NakayamaData {
            on_r: Automorphism::identity(n),
            lambda: Scalar::one(),
            b: divergence(delta)?,
            case,
        }),
        CaseTag::Trimmed => Ok(NakayamaData {
            on_r: sigma.inverted(),
            lambda: sigma.jacobian().clone(),
            b: Polynomial::zero(n),
            case,
        }),
        CaseTag::General => {
            let kappa = delta.kappa()?;
            let b = general_translation(sigma, &kappa);
            let b = b.to_polynomial().ok_or_else(|| {
                AlgebraError::Internal(format!("nu(x) translation {b:?} is not a polynomial"))
            })?;
            Ok(NakayamaData {
                on_r: sigma.inverted(),
                lambda: sigma.jacobian().clone(),
                b,
                case,
            })
        }
    }
}

/// `J kappa - sigma_q^{-1}(kappa)` in the fraction field.
pub fn general_translation(sigma: &Automorphism, kappa: &RationalFunction) -> RationalFunction {
    &kappa.scale(sigma.jacobian()) - &sigma.apply_inverse_to_ratfunc(kappa)
}

/// Translation `b` obtained by applying `nu` to the relation `x f = sigma(f) x + delta(f)`
/// for one `f` with `sigma(f) != f`:
/// `b = (J delta(sigma^{-1} f) - sigma^{-1}(delta f)) / (f - sigma^{-1} f)`.
pub fn translation_from_relation(delta: &SkewDerivation, f: &Polynomial) -> Result<RationalFunction> {
    let sigma = delta.sigma();
    let f_pulled = sigma.apply_inverse(f);
    let den = f - &f_pulled;
    if den.is_zero() {
        return Err(AlgebraError::Internal("f is fixed by sigma".into()));
    }
    let num = &delta.apply(&f_pulled).scale(sigma.jacobian()) - &sigma.apply_inverse(&delta.apply(f));
    RationalFunction::new(num, den)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CyFailure {
    SigmaNotIdentity,
    NonzeroDivergence(Polynomial),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CalabiYauVerdict {
    pub failure: Option<CyFailure>,
}

impl CalabiYauVerdict {
    pub fn is_calabi_yau(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for CalabiYauVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "Calabi–Yau: yes"),
            Some(CyFailure::SigmaNotIdentity) => write!(f, "Calabi–Yau: no (σ ≠ id)"),
            Some(CyFailure::NonzeroDivergence(d)) => {
                write!(f, "Calabi–Yau: no (∇·X_δ = {} ≠ 0)", format_poly_default(d))
            }
        }
    }
}

/// `E` is Calabi–Yau exactly when `sigma = id` and the divergence vanishes.
pub fn is_calabi_yau(delta: &SkewDerivation) -> CalabiYauVerdict {
    if !delta.sigma().is_identity() {
        return CalabiYauVerdict {
            failure: Some(CyFailure::SigmaNotIdentity),
        };
    }
    let div = divergence(delta).expect("differential case");
    CalabiYauVerdict {
        failure: (!div.is_zero()).then_some(CyFailure::NonzeroDivergence(div)),
    }
}

/// One relation check `nu(x) nu(z_i) - nu(sigma_i) nu(x) - nu(delta_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    /// One-based generator index.
    pub generator: usize,
    pub residual: OrePoly,
}

impl RelationCheck {
    pub fn passed(&self) -> bool {
        self.residual.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismReport {
    pub checks: Vec<RelationCheck>,
}

impl AutomorphismReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(RelationCheck::passed)
    }

    pub fn first_failure(&self) -> Option<usize> {
        self.checks.iter().find(|c| !c.passed()).map(|c| c.generator)
    }
}

/// Check that `nu` respects every defining relation of `E`.
pub fn verify_automorphism(nu: &NakayamaData, ext: &OreExtension) -> AutomorphismReport {
    let n = ext.nvars();
    let nu_x = nu.image_of_x();
    let checks = (0..n)
        .map(|i| {
            let zi = Polynomial::var(n, i);
            let nu_z = ext.constant(nu.on_r.apply(&zi));
            let nu_sigma = ext.constant(nu.on_r.apply(ext.sigma().image(i)));
            let nu_delta = ext.constant(nu.on_r.apply(ext.delta().image(i)));
            let residual = ext
                .mul(&nu_x, &nu_z)
                .sub(&ext.mul(&nu_sigma, &nu_x))
                .sub(&nu_delta);
            RelationCheck {
                generator: i + 1,
                residual,
            }
        })
        .collect();
    AutomorphismReport { checks }
}

/// Order of `nu`, found by iterating `nu` symbolically on the generators.
pub fn nakayama_order(nu: &NakayamaData, ext: &OreExtension, max_iter: u32) -> Order {
    let n = ext.nvars();
    let gens: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(n, i)).collect();
    let x = ext.x();
    let mut z_images = gens.clone();
    let mut x_image = x.clone();
    for r in 1..=max_iter {
        z_images = z_images.iter().map(|p| nu.on_r.apply(p)).collect();
        x_image = nu.apply(ext, &x_image);
        if z_images == gens && x_image == x {
            return Order::Finite(r);
        }
    }
    Order::Unknown
}

/// Outcome of `sigma_q^r(kappa) - J^{-r} kappa`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KappaDrift {
    Polynomial(Polynomial),
    Violation(RationalFunction),
}

/// `sigma_q^r(kappa) - J^{-r} kappa`, expected to lie in `R` for every integer `r`.
pub fn kappa_drift(sigma: &Automorphism, kappa: &RationalFunction, r: i32) -> Result<KappaDrift> {
    if sigma.is_identity() {
        return Err(AlgebraError::DifferentialCase);
    }
    let j = sigma.jacobian();
    let j_pow = if r >= 0 {
        num_traits::pow(j.recip(), r as usize)
    } else {
        num_traits::pow(j.clone(), r.unsigned_abs() as usize)
    };
    let drift = &sigma.ratfunc_power(kappa, r) - &kappa.scale(&j_pow);
    Ok(match drift.to_polynomial() {
        Some(p) => KappaDrift::Polynomial(p),
        None => KappaDrift::Violation(drift),
    })
}

impl KappaDrift {
    pub fn is_polynomial(&self) -> bool {
        matches!(self, KappaDrift::Polynomial(_))
    }
}
