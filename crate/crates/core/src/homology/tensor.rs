//! `R ⊗ R` realised as `Q[z1..zn, z1'..zn']`, left factor unprimed.

use std::ops::{Add, Mul, Neg, Sub};

use crate::endo::PolyEndo;
use crate::error::{AlgebraError, Result};
use crate::linalg::det_over_ring;
use crate::poly::{forward_owned_binop, Monomial, Polynomial, RingElem};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorRR {
    n: usize,
    poly: Polynomial,
}

impl TensorRR {
    /// Wrap a polynomial in `2n` variables.
    pub fn new(n: usize, poly: Polynomial) -> Result<Self> {
        if poly.nvars() != 2 * n {
            return Err(AlgebraError::AmbientMismatch {
                left: 2 * n,
                right: poly.nvars(),
            });
        }
        Ok(TensorRR { n, poly })
    }

    pub fn zero(n: usize) -> Self {
        TensorRR {
            n,
            poly: Polynomial::zero(2 * n),
        }
    }

    pub fn one(n: usize) -> Self {
        TensorRR {
            n,
            poly: Polynomial::one(2 * n),
        }
    }

    /// `a ⊗ b`.
    pub fn pure(a: &Polynomial, b: &Polynomial) -> Self {
        let n = a.nvars();
        assert_eq!(n, b.nvars(), "tensor factors live in different rings");
        TensorRR {
            n,
            poly: &a.embed(2 * n, 0) * &b.embed(2 * n, n),
        }
    }

    /// `a ⊗ 1`.
    pub fn left(a: &Polynomial) -> Self {
        Self::pure(a, &Polynomial::one(a.nvars()))
    }

    /// `1 ⊗ b`.
    pub fn right(b: &Polynomial) -> Self {
        Self::pure(&Polynomial::one(b.nvars()), b)
    }

    /// Variable count of `R`.
    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn as_poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Split each term `z^a z'^b` into the pair of `R`-monomials `(z^a, z^b)`.
    pub fn pure_terms(&self) -> impl Iterator<Item = (Monomial, Monomial, &crate::poly::Scalar)> + '_ {
        let n = self.n;
        self.poly.terms().map(move |(m, c)| {
            let e = m.exponents();
            (
                Monomial::from_exponents(e[..n].to_vec()),
                Monomial::from_exponents(e[n..].to_vec()),
                c,
            )
        })
    }
}

impl Add for &TensorRR {
    type Output = TensorRR;
    fn add(self, rhs: &TensorRR) -> TensorRR {
        TensorRR {
            n: self.n,
            poly: &self.poly + &rhs.poly,
        }
    }
}

impl Sub for &TensorRR {
    type Output = TensorRR;
    fn sub(self, rhs: &TensorRR) -> TensorRR {
        TensorRR {
            n: self.n,
            poly: &self.poly - &rhs.poly,
        }
    }
}

impl Mul for &TensorRR {
    type Output = TensorRR;
    fn mul(self, rhs: &TensorRR) -> TensorRR {
        TensorRR {
            n: self.n,
            poly: &self.poly * &rhs.poly,
        }
    }
}

impl Neg for &TensorRR {
    type Output = TensorRR;
    fn neg(self) -> TensorRR {
        TensorRR {
            n: self.n,
            poly: -&self.poly,
        }
    }
}

impl Neg for TensorRR {
    type Output = TensorRR;
    fn neg(self) -> TensorRR {
        -&self
    }
}

forward_owned_binop!(TensorRR, Add, add);
forward_owned_binop!(TensorRR, Sub, sub);
forward_owned_binop!(TensorRR, Mul, mul);

impl RingElem for TensorRR {
    fn zero_like(&self) -> Self {
        TensorRR::zero(self.n)
    }
    fn one_like(&self) -> Self {
        TensorRR::one(self.n)
    }
    fn is_zero_elem(&self) -> bool {
        self.poly.is_zero()
    }
    fn div_exact(&self, divisor: &Self) -> Option<Self> {
        self.poly.div_exact(&divisor.poly).map(|poly| TensorRR { n: self.n, poly })
    }
}

/// Noncommutative partial derivative `Δ_p`, with `p` zero-based:
/// `Δ_p(z^a) = sum_{s=1}^{a_p} z_p^{a_p-s} z_{p+1}^{a_{p+1}}..z_n^{a_n} ⊗ z_1^{a_1}..z_{p-1}^{a_{p-1}} z_p^{s-1}`.
pub fn delta_p(f: &Polynomial, p: usize) -> Result<TensorRR> {
    let n = f.nvars();
    if p >= n {
        return Err(AlgebraError::IndexOutOfRange { index: p, nvars: n });
    }
    let mut out = Polynomial::zero(2 * n);
    for (m, c) in f.terms() {
        let a = m.exponents();
        for s in 1..=a[p] {
            let mut e = vec![0u32; 2 * n];
            e[p] = a[p] - s;
            e[p + 1..n].copy_from_slice(&a[p + 1..]);
            e[n..n + p].copy_from_slice(&a[..p]);
            e[n + p] = s - 1;
            out.add_term(Monomial::from_exponents(e), c.clone());
        }
    }
    Ok(TensorRR { n, poly: out })
}

/// Multiplication map `μ(a ⊗ b) = ab`.
pub fn mu(t: &TensorRR) -> Polynomial {
    let n = t.n;
    let images: Vec<Polynomial> = (0..2 * n).map(|i| Polynomial::var(n, i % n)).collect();
    t.poly.substitute(&images).expect("2n images")
}

/// `dφ = 1 ⊗ φ - φ ⊗ 1`.
pub fn nc_one_form(f: &Polynomial) -> TensorRR {
    &TensorRR::right(f) - &TensorRR::left(f)
}

/// `1 ⊗ z_i - σ_i ⊗ 1`.
pub fn twisted_one_form(sigma: &PolyEndo, i: usize) -> TensorRR {
    let n = sigma.nvars();
    &TensorRR::right(&Polynomial::var(n, i)) - &TensorRR::left(sigma.image(i))
}

/// Minor of the noncommutative Jacobian: determinant with `(u, v)` entry
/// `Δ_{cols[v]}(σ_{rows[u]})`. Indices are zero-based; the empty minor is 1.
pub fn nc_jacobian_minor(sigma: &PolyEndo, rows: &[usize], cols: &[usize]) -> Result<TensorRR> {
    let n = sigma.nvars();
    if rows.len() != cols.len() {
        return Err(AlgebraError::LengthMismatch {
            expected: rows.len(),
            found: cols.len(),
        });
    }
    if let Some(&bad) = rows.iter().chain(cols).find(|&&i| i >= n) {
        return Err(AlgebraError::IndexOutOfRange { index: bad, nvars: n });
    }
    if rows.is_empty() {
        return Ok(TensorRR::one(n));
    }
    let m: Vec<Vec<TensorRR>> = rows
        .iter()
        .map(|&i| cols.iter().map(|&j| delta_p(sigma.image(i), j)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    Ok(det_over_ring(&m))
}

/// The full noncommutative Jacobian `𝐉`.
pub fn nc_jacobian(sigma: &PolyEndo) -> TensorRR {
    let all: Vec<usize> = (0..sigma.nvars()).collect();
    nc_jacobian_minor(sigma, &all, &all).expect("valid indices")
}
