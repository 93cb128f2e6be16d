//! Invariants `E^G = {a : ν(a) = a}` at a degree truncation, their
//! `(x + κ)`-expansions, and the leading map into the Zhang twist of the
//! eigenspace algebra `⊕_i Λ_{J^i}`.
//!
//! Every result is exact but only complete up to the stated bounds.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::endo::Automorphism;
use crate::error::{AlgebraError, Result};
use crate::linalg::{echelon_from_top, kernel, reduce_modulo, solve_affine, AffineSolution, ScalarMatrix};
use crate::nakayama::NakayamaData;
use crate::ore::{OreExtension, OrePoly, QuotientExtension};
use crate::poly::{Monomial, Polynomial, RationalFunction, Scalar};

type Sparse<K> = BTreeMap<K, Scalar>;

/// Matrix whose column `k` is the sparse vector `cols[k]`; rows are the union of keys.
fn assemble<K: Ord + Clone>(cols: &[Sparse<K>], extra: Option<&Sparse<K>>) -> (ScalarMatrix, Vec<Scalar>) {
    let mut keys: BTreeMap<K, usize> = BTreeMap::new();
    for col in cols.iter().chain(extra) {
        for k in col.keys() {
            let next = keys.len();
            keys.entry(k.clone()).or_insert(next);
        }
    }
    let mut a = ScalarMatrix::zeros(keys.len(), cols.len());
    for (j, col) in cols.iter().enumerate() {
        for (k, v) in col {
            a.set(keys[k], j, v.clone());
        }
    }
    let mut b = vec![Scalar::zero(); keys.len()];
    if let Some(extra) = extra {
        for (k, v) in extra {
            b[keys[k]] = v.clone();
        }
    }
    (a, b)
}

fn poly_sparse(f: &Polynomial) -> Sparse<Monomial> {
    f.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

fn ore_sparse(a: &OrePoly) -> Sparse<(usize, Monomial)> {
    let mut out = BTreeMap::new();
    for (i, c) in a.coeffs().iter().enumerate() {
        for (m, v) in c.terms() {
            out.insert((i, m.clone()), v.clone());
        }
    }
    out
}

/// Basis of `{f : σ(f) = λ f, deg f <= max_degree}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenBasis {
    pub eigenvalue: Scalar,
    pub max_degree: u32,
    /// Echelon form: each element is monic in its leading monomial, and no
    /// leading monomial occurs in another element. Sorted by leading monomial.
    pub basis: Vec<Polynomial>,
}

/// Solve `σ(f) - λ f = 0` over all monomials of degree `<= max_degree`.
/// Monomials of `σ(f)` above the bound enter as extra equations.
pub fn eigenspace(sigma: &Automorphism, lambda: &Scalar, max_degree: u32) -> EigenBasis {
    let n = sigma.nvars();
    let monos = Monomial::up_to_degree(n, max_degree);
    let cols: Vec<Sparse<Monomial>> = monos
        .iter()
        .map(|m| {
            let f = Polynomial::monomial(n, m.clone(), Scalar::one());
            poly_sparse(&(&sigma.apply(&f) - &f.scale(lambda)))
        })
        .collect();
    let (a, _) = assemble(&cols, None);
    let basis = echelon_from_top(&kernel(&a))
        .into_iter()
        .map(|(_, v)| Polynomial::from_terms(n, monos.iter().cloned().zip(v)))
        .collect();
    EigenBasis {
        eigenvalue: lambda.clone(),
        max_degree,
        basis,
    }
}

/// Twist data `(σ, J)` for `tw(R̂, σ̂)`, whose degree-`i` piece is `Λ_{J^i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedAlgebra {
    sigma: Arc<Automorphism>,
}

/// Homogeneous element `g` of degree `i` in the twisted algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedElement {
    pub degree: u32,
    pub coeff: Polynomial,
}

impl TwistedAlgebra {
    pub fn new(sigma: Arc<Automorphism>) -> Self {
        TwistedAlgebra { sigma }
    }

    pub fn sigma(&self) -> &Arc<Automorphism> {
        &self.sigma
    }

    /// `J^i`.
    pub fn eigenvalue(&self, degree: u32) -> Scalar {
        num_traits::pow(self.sigma.jacobian().clone(), degree as usize)
    }

    pub fn contains(&self, e: &TwistedElement) -> bool {
        self.sigma.apply(&e.coeff) == e.coeff.scale(&self.eigenvalue(e.degree))
    }

    /// Checked constructor.
    pub fn element(&self, degree: u32, coeff: Polynomial) -> Result<TwistedElement> {
        let e = TwistedElement { degree, coeff };
        if !self.contains(&e) {
            return Err(AlgebraError::NotInEigenspace(format!("{:?} in degree {degree}", e.coeff)));
        }
        Ok(e)
    }

    /// Zhang twist `a ∗ b = a σ^{deg a}(b)`.
    pub fn mul(&self, a: &TwistedElement, b: &TwistedElement) -> Result<TwistedElement> {
        for e in [a, b] {
            if !self.contains(e) {
                return Err(AlgebraError::NotInEigenspace(format!("{:?} in degree {}", e.coeff, e.degree)));
            }
        }
        let coeff = &a.coeff * &self.sigma.apply_power(&b.coeff, a.degree as i32);
        self.element(a.degree + b.degree, coeff)
    }
}

/// A ν-fixed element of `E` with its filtration data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantElement {
    pub element: OrePoly,
    /// `g_i` with `element = sum g_i (x + κ)^i`; absent when `σ = id`.
    pub shifted: Option<Vec<RationalFunction>>,
    /// Filtration level, the `x`-degree.
    pub level: usize,
}

impl InvariantElement {
    pub fn new(element: OrePoly, quotient: Option<&QuotientExtension>) -> Self {
        let level = element.degree().unwrap_or(0);
        let shifted = quotient.map(|q| q.to_shifted_basis(&OreExtension::to_quotient(&element)));
        InvariantElement {
            element,
            shifted,
            level,
        }
    }

    /// Whether every shifted coefficient is a polynomial.
    pub fn has_polynomial_expansion(&self) -> bool {
        self.shifted
            .as_ref()
            .is_some_and(|g| g.iter().all(RationalFunction::is_polynomial))
    }
}

/// `E_q` for `σ != id`, `None` in the differential case.
pub fn quotient_of(ext: &OreExtension) -> Option<QuotientExtension> {
    if ext.sigma().is_identity() {
        None
    } else {
        Some(ext.quotient().expect("sigma is not the identity"))
    }
}

/// `(ν - id)(z^m x^i)` for every truncation monomial, with `ν(x)^i` cached.
struct FixedSystem<'a> {
    ext: &'a OreExtension,
    nu: &'a NakayamaData,
    nu_x_pows: Vec<OrePoly>,
}

impl<'a> FixedSystem<'a> {
    fn new(ext: &'a OreExtension, nu: &'a NakayamaData, max_xdeg: usize) -> Self {
        let nu_x = nu.image_of_x();
        let mut nu_x_pows = vec![ext.one()];
        for i in 1..=max_xdeg {
            let next = ext.mul(&nu_x_pows[i - 1], &nu_x);
            nu_x_pows.push(next);
        }
        FixedSystem { ext, nu, nu_x_pows }
    }

    fn defect(&self, m: &Monomial, i: usize) -> Sparse<(usize, Monomial)> {
        let n = self.ext.nvars();
        let f = Polynomial::monomial(n, m.clone(), Scalar::one());
        let image = self.nu_x_pows[i].left_mul(&self.nu.on_r().apply(&f));
        ore_sparse(&image.sub(&self.ext.term(f, i)))
    }
}

fn ore_from_coords(n: usize, unknowns: &[(usize, Monomial)], v: &[Scalar]) -> OrePoly {
    let top = unknowns.iter().map(|(i, _)| *i).max().unwrap_or(0);
    let mut coeffs = vec![Polynomial::zero(n); top + 1];
    for ((i, m), c) in unknowns.iter().zip(v) {
        coeffs[*i].add_term(m.clone(), c.clone());
    }
    OrePoly::from_coeffs(coeffs)
}

fn truncation(n: usize, max_xdeg: usize, max_coeff_deg: u32) -> Vec<(usize, Monomial)> {
    let monos = Monomial::up_to_degree(n, max_coeff_deg);
    (0..=max_xdeg)
        .flat_map(|i| monos.iter().map(move |m| (i, m.clone())))
        .collect()
}

/// Basis of the ν-fixed elements of `span{z^a x^i : |a| <= max_coeff_deg, i <= max_xdeg}`,
/// in echelon form with respect to `(x-degree, graded lex)`.
pub fn find_invariants(
    ext: &OreExtension,
    nu: &NakayamaData,
    max_xdeg: usize,
    max_coeff_deg: u32,
) -> Vec<InvariantElement> {
    let n = ext.nvars();
    let system = FixedSystem::new(ext, nu, max_xdeg);
    let unknowns = truncation(n, max_xdeg, max_coeff_deg);
    let cols: Vec<_> = unknowns.iter().map(|(i, m)| system.defect(m, *i)).collect();
    let (a, _) = assemble(&cols, None);
    let quotient = quotient_of(ext);
    echelon_from_top(&kernel(&a))
        .into_iter()
        .map(|(_, v)| InvariantElement::new(ore_from_coords(n, &unknowns, &v), quotient.as_ref()))
        .collect()
}

/// Leading data `(m, g_m)` of an invariant, checked to lie in `Λ_{J^m}(R)`.
pub fn leading_map_j(e: &InvariantElement, twist: &TwistedAlgebra) -> Result<TwistedElement> {
    if twist.sigma().is_identity() {
        return Err(AlgebraError::DifferentialCase);
    }
    let shifted = e
        .shifted
        .as_ref()
        .ok_or_else(|| AlgebraError::Internal("invariant has no shifted expansion".into()))?;
    let top = shifted
        .last()
        .ok_or_else(|| AlgebraError::Internal("zero invariant has no leading term".into()))?;
    let g = top
        .to_polynomial()
        .ok_or_else(|| AlgebraError::NotInEigenspace(format!("{top:?} is not a polynomial")))?;
    twist.element(e.level as u32, g)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TargetOutcome {
    /// A ν-fixed element with leading term `g x^i`.
    Witness(OrePoly),
    /// No such element exists with lower coefficients in the searched range.
    NoSolution,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetCheck {
    pub target: Polynomial,
    pub outcome: TargetOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurjectivityReport {
    pub level: usize,
    pub max_degree: u32,
    /// Degree bound used for the coefficients below the top.
    pub lower_degree_bound: u32,
    pub targets: Vec<TargetCheck>,
}

impl SurjectivityReport {
    pub fn all_witnessed(&self) -> bool {
        self.targets
            .iter()
            .all(|t| matches!(t.outcome, TargetOutcome::Witness(_)))
    }

    pub fn outcome_for(&self, target: &Polynomial) -> Option<&TargetOutcome> {
        self.targets.iter().find(|t| &t.target == target).map(|t| &t.outcome)
    }
}

/// For each basis vector `g` of `Λ_{J^i}` up to `max_degree`, look for a
/// ν-fixed `g x^i + (lower terms)`. Lower coefficients range over degree
/// `<= max_degree + level`. Witnesses are reduced modulo the lower fixed
/// space, so they are canonical.
pub fn check_j_surjectivity(
    ext: &OreExtension,
    nu: &NakayamaData,
    level: usize,
    max_degree: u32,
) -> Result<SurjectivityReport> {
    if ext.sigma().is_identity() {
        return Err(AlgebraError::DifferentialCase);
    }
    let n = ext.nvars();
    let twist = TwistedAlgebra::new(ext.sigma().clone());
    let targets = eigenspace(ext.sigma(), &twist.eigenvalue(level as u32), max_degree).basis;
    let lower_degree_bound = max_degree + level as u32;
    let system = FixedSystem::new(ext, nu, level);
    let unknowns: Vec<(usize, Monomial)> = if level == 0 {
        Vec::new()
    } else {
        truncation(n, level - 1, lower_degree_bound)
    };
    let cols: Vec<_> = unknowns.iter().map(|(i, m)| system.defect(m, *i)).collect();
    let (a_hom, _) = assemble(&cols, None);
    let lower_fixed = echelon_from_top(&kernel(&a_hom));

    let mut checks = Vec::new();
    for g in targets {
        let mut rhs: Sparse<(usize, Monomial)> = BTreeMap::new();
        for (m, c) in g.terms() {
            for (k, v) in system.defect(m, level) {
                let e = rhs.entry(k).or_insert_with(Scalar::zero);
                *e -= v * c;
            }
        }
        rhs.retain(|_, v| !v.is_zero());
        let (a, b) = assemble(&cols, Some(&rhs));
        let outcome = match solve_affine(&a, &b) {
            AffineSolution::NoSolution => TargetOutcome::NoSolution,
            AffineSolution::Solved { particular, .. } => {
                let lower = reduce_modulo(&particular, &lower_fixed);
                let lower = if unknowns.is_empty() {
                    OrePoly::zero()
                } else {
                    ore_from_coords(n, &unknowns, &lower)
                };
                let w = lower.add(&ext.term(g.clone(), level));
                if nu.apply(ext, &w) != w {
                    return Err(AlgebraError::Internal("witness is not fixed by nu".into()));
                }
                TargetOutcome::Witness(w)
            }
        };
        checks.push(TargetCheck { target: g, outcome });
    }
    Ok(SurjectivityReport {
        level,
        max_degree,
        lower_degree_bound,
        targets: checks,
    })
}
