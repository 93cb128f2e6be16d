//! Koszul complexes `K`, `K'` over `E^e`, the liftings `ρ`, and the chain-map verifier.
//!
//! Index tuples are zero-based and strictly increasing. All maps are left
//! `E^e`-linear: `f(c 𝔢_I) = c f(𝔢_I)`.

use std::collections::BTreeMap;
use std::fmt;

use super::env::{EnvElem, Envelope};
use super::tensor::{delta_p, nc_jacobian, nc_jacobian_minor, nc_one_form, twisted_one_form};
use crate::error::{AlgebraError, Result};
use crate::ore::OreExtension;
use crate::poly::Polynomial;

/// Element of a Koszul module of degree `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainElem {
    degree: usize,
    coeffs: BTreeMap<Vec<usize>, EnvElem>,
}

impl ChainElem {
    pub fn zero(degree: usize) -> Self {
        ChainElem {
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// `c 𝔢_I`; the tuple must be strictly increasing.
    pub fn basis_term(tuple: Vec<usize>, c: EnvElem) -> Self {
        assert!(tuple.windows(2).all(|w| w[0] < w[1]), "tuple must be strictly increasing");
        let mut out = ChainElem::zero(tuple.len());
        out.add_term(tuple, c);
        out
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&Vec<usize>, &EnvElem)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, tuple: &[usize]) -> EnvElem {
        self.coeffs.get(tuple).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, tuple: Vec<usize>, c: EnvElem) {
        debug_assert_eq!(tuple.len(), self.degree);
        if c.is_zero() {
            return;
        }
        let sum = match self.coeffs.remove(&tuple) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !sum.is_zero() {
            self.coeffs.insert(tuple, sum);
        }
    }

    pub fn add(&self, other: &ChainElem) -> ChainElem {
        let mut out = self.clone();
        for (t, c) in &other.coeffs {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> ChainElem {
        ChainElem {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(t, c)| (t.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &ChainElem) -> ChainElem {
        self.add(&other.neg())
    }
}

/// Strictly increasing `p`-subsets of `0..n`.
pub fn basis_tuples(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, p, &mut Vec::new(), &mut out);
    out
}

/// Put `s` in front of the increasing tuple `rest` and sort: the sign of the
/// permutation, or `None` when `s` already occurs.
pub fn insert_sorted(s: usize, rest: &[usize]) -> Option<(i32, Vec<usize>)> {
    if rest.contains(&s) {
        return None;
    }
    let k = rest.iter().filter(|&&j| j < s).count();
    let mut t = rest.to_vec();
    t.insert(k, s);
    Some((if k % 2 == 0 { 1 } else { -1 }, t))
}

fn without(tuple: &[usize], v: usize) -> Vec<usize> {
    let mut t = tuple.to_vec();
    t.remove(v);
    t
}

/// The lifting to verify.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LiftCase {
    Trimmed,
    Differential,
}

impl LiftCase {
    pub fn name(self) -> &'static str {
        match self {
            LiftCase::Trimmed => "trimmed",
            LiftCase::Differential => "differential",
        }
    }
}

/// Koszul data for a fixed `E`: the complexes `K`, `K'` and the lifting `ρ`.
pub struct KoszulComplex {
    env: Envelope,
    case: LiftCase,
}

impl KoszulComplex {
    /// Fails with `WrongCase` unless `δ = 0` (trimmed) or `σ = id` (differential).
    pub fn new(ext: OreExtension, case: LiftCase) -> Result<Self> {
        let ok = match case {
            LiftCase::Trimmed => ext.delta().is_zero(),
            LiftCase::Differential => ext.sigma().is_identity(),
        };
        if !ok {
            return Err(AlgebraError::WrongCase {
                requested: case.name(),
                requirement: match case {
                    LiftCase::Trimmed => "delta = 0",
                    LiftCase::Differential => "sigma = id",
                },
            });
        }
        Ok(KoszulComplex {
            env: Envelope::new(ext),
            case,
        })
    }

    pub fn envelope(&self) -> &Envelope {
        &self.env
    }

    pub fn case(&self) -> LiftCase {
        self.case
    }

    pub fn nvars(&self) -> usize {
        self.env.nvars()
    }

    /// `dz_i` or, for the twisted complex, `^σdz_i`.
    pub fn one_form(&self, i: usize, twisted: bool) -> EnvElem {
        let ext = self.env.ext();
        let t = if twisted {
            twisted_one_form(ext.sigma().forward(), i)
        } else {
            nc_one_form(&Polynomial::var(self.nvars(), i))
        };
        EnvElem::from_tensor(&t)
    }

    /// Extend a map given on basis tuples `E^e`-linearly.
    pub fn extend(&self, elem: &ChainElem, target: usize, f: impl Fn(&[usize]) -> ChainElem) -> ChainElem {
        let mut out = ChainElem::zero(target);
        for (t, c) in &elem.coeffs {
            for (u, cu) in f(t).coeffs {
                out.add_term(u, self.env.mul(c, &cu));
            }
        }
        out
    }

    fn d_basis(&self, tuple: &[usize], twisted: bool) -> ChainElem {
        let p = tuple.len();
        let mut out = ChainElem::zero(p - 1);
        for v in 0..p {
            let form = self.one_form(tuple[v], twisted);
            // (-1)^v with v one-based
            let c = if v % 2 == 0 { form.neg() } else { form };
            out.add_term(without(tuple, v), c);
        }
        out
    }

    /// `d_p` on `K` (or `d'_p` on `K'` when `twisted`).
    pub fn koszul_d(&self, elem: &ChainElem, twisted: bool) -> Result<ChainElem> {
        if elem.degree == 0 {
            return Err(AlgebraError::DegreeMismatch {
                expected: 1,
                found: 0,
            });
        }
        Ok(self.extend(elem, elem.degree - 1, |t| self.d_basis(t, twisted)))
    }

    /// `ρ_p(𝔢'_I)`.
    pub fn rho_basis(&self, tuple: &[usize]) -> ChainElem {
        let env = &self.env;
        let ext = env.ext();
        let n = self.nvars();
        let p = tuple.len();
        match self.case {
            LiftCase::Trimmed => {
                let mut out = ChainElem::basis_term(tuple.to_vec(), env.x_left());
                let sigma = ext.sigma().forward();
                for cols in basis_tuples(n, p) {
                    let minor = nc_jacobian_minor(sigma, tuple, &cols).expect("valid indices");
                    if minor.is_zero() {
                        continue;
                    }
                    let c = env.mul(&env.x_right(), &EnvElem::from_tensor(&minor));
                    out.add_term(cols, c.neg());
                }
                out
            }
            LiftCase::Differential => {
                let mut out = ChainElem::basis_term(tuple.to_vec(), env.x_left().sub(&env.x_right()));
                for s in 0..n {
                    for u in 0..p {
                        let Some((sign, t)) = insert_sorted(s, &without(tuple, u)) else {
                            continue;
                        };
                        let ds = delta_p(ext.delta().image(tuple[u]), s).expect("index in range");
                        let c = EnvElem::from_tensor(&ds);
                        // (-1)^u with u one-based, times the reordering sign
                        let c = if (u % 2 == 0) == (sign == 1) { c.neg() } else { c };
                        out.add_term(t, c);
                    }
                }
                out
            }
        }
    }

    /// `ρ_p` applied to an element of `K'_p`.
    pub fn lift_rho(&self, elem: &ChainElem) -> ChainElem {
        self.extend(elem, elem.degree, |t| self.rho_basis(t))
    }

    /// Stated first entry of the boundary matrix `M`:
    /// `x⊗1 - (1⊗x)𝐉` (trimmed) or `x⊗1 - 1⊗x - sum_u Δ_u(δ_u)` (differential).
    pub fn boundary_head(&self) -> EnvElem {
        let env = &self.env;
        let ext = env.ext();
        match self.case {
            LiftCase::Trimmed => {
                let j = EnvElem::from_tensor(&nc_jacobian(ext.sigma().forward()));
                env.x_left().sub(&env.mul(&env.x_right(), &j))
            }
            LiftCase::Differential => {
                let n = self.nvars();
                let mut acc = env.x_left().sub(&env.x_right());
                for u in 0..n {
                    let du = delta_p(ext.delta().image(u), u).expect("index in range");
                    acc = acc.sub(&EnvElem::from_tensor(&du));
                }
                acc
            }
        }
    }

    pub fn verify(&self) -> ChainMapReport {
        self.verify_with(|t| self.rho_basis(t))
    }

    /// Run every check with a caller-supplied `ρ` on basis tuples.
    pub fn verify_with(&self, rho: impl Fn(&[usize]) -> ChainElem) -> ChainMapReport {
        let n = self.nvars();
        let mut checks = Vec::new();
        let d = |e: &ChainElem, tw: bool| -> ChainElem {
            if e.degree == 0 {
                ChainElem::zero(0)
            } else {
                self.koszul_d(e, tw).expect("positive degree")
            }
        };
        let unit = || self.env.one();

        for p in 1..n {
            for (identity, tw) in [(Identity::DSquared, false), (Identity::DPrimeSquared, true)] {
                let failures = basis_tuples(n, p + 1)
                    .into_iter()
                    .filter(|t| {
                        let e = ChainElem::basis_term(t.clone(), unit());
                        !d(&d(&e, tw), tw).is_zero()
                    })
                    .collect();
                checks.push(Check { identity, degree: p, failures });
            }
        }

        let rho_ext = |e: &ChainElem| self.extend(e, e.degree, &rho);
        for p in 1..=n {
            let failures = basis_tuples(n, p)
                .into_iter()
                .filter(|t| {
                    let e = ChainElem::basis_term(t.clone(), unit());
                    rho_ext(&d(&e, true)) != d(&rho(t), false)
                })
                .collect();
            checks.push(Check {
                identity: Identity::ChainMap,
                degree: p,
                failures,
            });
        }

        // cone_p = K_p ⊕ K'_{p-1}, d(a, b) = (d a + ρ b, -d' b)
        let cone_d = |a: &ChainElem, b: &ChainElem| -> (ChainElem, ChainElem) {
            let top = d(a, false).add(&rho_ext(b));
            let bottom = d(b, true).neg();
            (top, bottom)
        };
        for p in 2..=n + 1 {
            let mut failures = Vec::new();
            if p <= n {
                for t in basis_tuples(n, p) {
                    let a = ChainElem::basis_term(t.clone(), unit());
                    let (x, y) = cone_d(&a, &ChainElem::zero(p - 1));
                    let (x2, y2) = cone_d(&x, &y);
                    if !(x2.is_zero() && y2.is_zero()) {
                        failures.push(t);
                    }
                }
            }
            for t in basis_tuples(n, p - 1) {
                let b = ChainElem::basis_term(t.clone(), unit());
                let (x, y) = cone_d(&ChainElem::zero(p), &b);
                let (x2, y2) = cone_d(&x, &y);
                if !(x2.is_zero() && y2.is_zero()) {
                    failures.push(t);
                }
            }
            checks.push(Check {
                identity: Identity::ConeSquared,
                degree: p,
                failures,
            });
        }

        let top: Vec<usize> = (0..n).collect();
        let mut failures = Vec::new();
        let head = rho(&top);
        let expected_head = ChainElem::basis_term(top.clone(), self.boundary_head());
        if head != expected_head {
            failures.push(top.clone());
        }
        let tail = d(&ChainElem::basis_term(top.clone(), unit()), true);
        for i in 0..n {
            let form = self.one_form(i, true);
            let entry = if i % 2 == 0 { form.neg() } else { form };
            if tail.coeff(&without(&top, i)) != entry {
                failures.push(without(&top, i));
            }
        }
        checks.push(Check {
            identity: Identity::BoundaryMatrix,
            degree: n + 1,
            failures,
        });

        ChainMapReport { checks }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Identity {
    /// `d_p d_{p+1} = 0`
    DSquared,
    /// `d'_p d'_{p+1} = 0`
    DPrimeSquared,
    /// `ρ_{p-1} d'_p = d_p ρ_p`
    ChainMap,
    /// `d^ρ_{p-1} d^ρ_p = 0` on the mapping cone
    ConeSquared,
    /// top cone differential matches the matrix `M`
    BoundaryMatrix,
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Identity::DSquared => "d∘d = 0",
            Identity::DPrimeSquared => "d'∘d' = 0",
            Identity::ChainMap => "ρ∘d' = d∘ρ",
            Identity::ConeSquared => "cone d∘d = 0",
            Identity::BoundaryMatrix => "boundary matrix M",
        })
    }
}

/// Outcome of one identity at one homological degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub identity: Identity,
    pub degree: usize,
    /// Zero-based basis tuples on which the identity fails.
    pub failures: Vec<Vec<usize>>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMapReport {
    pub checks: Vec<Check>,
}

impl ChainMapReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    /// First failing `(identity, degree)`.
    pub fn first_failure(&self) -> Option<(Identity, usize)> {
        self.checks.iter().find(|c| !c.passed()).map(|c| (c.identity, c.degree))
    }

    pub fn failing(&self, identity: Identity) -> Vec<usize> {
        self.checks
            .iter()
            .filter(|c| c.identity == identity && !c.passed())
            .map(|c| c.degree)
            .collect()
    }
}

/// Convenience wrapper: build the complex and run all checks.
pub fn verify_chain_map(ext: OreExtension, case: LiftCase) -> Result<ChainMapReport> {
    Ok(KoszulComplex::new(ext, case)?.verify())
}
