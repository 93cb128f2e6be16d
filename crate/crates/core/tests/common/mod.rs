//! Seeded random instances shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ore_nakayama::endo::{Automorphism, PolyEndo};
use ore_nakayama::ore::{OreExtension, OrePoly};
use ore_nakayama::poly::{int, poly_gcd, ratio, Monomial, Polynomial, Scalar};
use ore_nakayama::skew::SkewDerivation;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_scalar(rng: &mut impl Rng) -> Scalar {
    match rng.gen_range(0..6) {
        0 => ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3)),
        _ => int(rng.gen_range(-3..=3)),
    }
}

pub fn nonzero_scalar(rng: &mut impl Rng) -> Scalar {
    [int(1), int(-1), int(2), int(-2), ratio(1, 2), int(3)].choose(rng).unwrap().clone()
}

/// Random polynomial with up to `max_terms` terms of degree `<= max_deg`.
pub fn random_poly(rng: &mut impl Rng, n: usize, max_deg: u32, max_terms: usize) -> Polynomial {
    let monos = Monomial::up_to_degree(n, max_deg);
    let k = rng.gen_range(0..=max_terms);
    let terms: Vec<_> = (0..k)
        .map(|_| (monos.choose(rng).unwrap().clone(), small_scalar(rng)))
        .collect();
    Polynomial::from_terms(n, terms)
}

/// Random polynomial in the variables `z_{from+1}, ..., z_n` only.
fn random_poly_in_tail(rng: &mut impl Rng, n: usize, from: usize, max_deg: u32) -> Polynomial {
    if from >= n {
        return Polynomial::zero(n);
    }
    random_poly(rng, n - from, max_deg, 2).embed(n, from)
}

fn permutation(rng: &mut impl Rng, n: usize) -> (PolyEndo, PolyEndo) {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let fwd = perm.iter().map(|&j| Polynomial::var(n, j)).collect();
    let mut inv = vec![Polynomial::zero(n); n];
    for (i, &j) in perm.iter().enumerate() {
        inv[j] = Polynomial::var(n, i);
    }
    (PolyEndo::new(fwd).unwrap(), PolyEndo::new(inv).unwrap())
}

/// `z_i -> a_i z_i + p_i(z_{i+1}, ..., z_n)` and its inverse.
fn triangular(rng: &mut impl Rng, n: usize, max_deg: u32) -> (PolyEndo, PolyEndo) {
    let mut fwd = Vec::with_capacity(n);
    let mut shifts = Vec::with_capacity(n);
    let mut scales = Vec::with_capacity(n);
    for i in 0..n {
        let a = nonzero_scalar(rng);
        let p = random_poly_in_tail(rng, n, i + 1, max_deg);
        fwd.push(&Polynomial::var(n, i).scale(&a) + &p);
        scales.push(a);
        shifts.push(p);
    }
    // Invert from the last variable up: z_i = (w_i - p_i(z_{i+1..})) / a_i.
    let mut inv: Vec<Polynomial> = vec![Polynomial::zero(n); n];
    for i in (0..n).rev() {
        let mut images: Vec<Polynomial> = (0..n).map(|j| Polynomial::var(n, j)).collect();
        images[i + 1..].clone_from_slice(&inv[i + 1..]);
        let p = shifts[i].substitute(&images).unwrap();
        inv[i] = (&Polynomial::var(n, i) - &p).scale(&scales[i].recip());
    }
    (PolyEndo::new(fwd).unwrap(), PolyEndo::new(inv).unwrap())
}

/// Random automorphism with a known inverse, coefficient degree `<= 2`.
/// Either affine (permutation after a linear triangular map) or a
/// nonlinear triangular map, so iterates keep bounded degree.
pub fn random_automorphism(rng: &mut impl Rng, n: usize) -> Automorphism {
    let (fwd, inv) = if rng.gen_bool(0.5) {
        let (p, pi) = permutation(rng, n);
        let (t, ti) = triangular(rng, n, 1);
        (p.compose(&t).unwrap(), ti.compose(&pi).unwrap())
    } else {
        triangular(rng, n, 2)
    };
    Automorphism::with_inverse(fwd, inv).unwrap()
}

/// As [`random_automorphism`] but never the identity.
pub fn random_nontrivial_automorphism(rng: &mut impl Rng, n: usize) -> Automorphism {
    loop {
        let s = random_automorphism(rng, n);
        if !s.is_identity() {
            return s;
        }
    }
}

/// Signed permutation: finite order, Jacobian `±1`.
pub fn random_finite_order(rng: &mut impl Rng, n: usize) -> Automorphism {
    let (p, pi) = permutation(rng, n);
    let signs: Vec<Scalar> = (0..n).map(|_| if rng.gen_bool(0.5) { int(1) } else { int(-1) }).collect();
    let d = PolyEndo::new((0..n).map(|i| Polynomial::var(n, i).scale(&signs[i])).collect()).unwrap();
    let fwd = p.compose(&d).unwrap();
    let inv = d.compose(&pi).unwrap();
    Automorphism::with_inverse(fwd, inv).unwrap()
}

/// Random σ-derivation `δ_j = P (σ_j - z_j) / g`, `g` the gcd of the shifts;
/// an arbitrary derivation when `σ = id`.
pub fn random_derivation(rng: &mut impl Rng, sigma: Arc<Automorphism>, max_deg: u32) -> SkewDerivation {
    let n = sigma.nvars();
    if sigma.is_identity() {
        let images = (0..n).map(|_| random_poly(rng, n, max_deg, 3)).collect();
        return SkewDerivation::new(sigma, images).unwrap();
    }
    let shifts: Vec<Polynomial> = (0..n).map(|j| sigma.image(j) - &Polynomial::var(n, j)).collect();
    let g = shifts
        .iter()
        .filter(|s| !s.is_zero())
        .fold(Polynomial::zero(n), |acc, s| if acc.is_zero() { s.monic() } else { poly_gcd(&acc, s) });
    let p = random_poly(rng, n, 1, 2);
    let images = shifts
        .iter()
        .map(|s| &p * &s.div_exact(&g).expect("g divides every shift"))
        .collect();
    SkewDerivation::new(sigma, images).unwrap()
}

/// Random context of the requested kind.
#[derive(Clone, Copy, Debug)]
pub enum Kind {
    Trimmed,
    Differential,
    General,
}

pub fn random_extension(rng: &mut impl Rng, n: usize, kind: Kind) -> OreExtension {
    let delta = match kind {
        Kind::Differential => random_derivation(rng, Arc::new(Automorphism::identity(n)), 2),
        Kind::Trimmed => SkewDerivation::zero(Arc::new(random_nontrivial_automorphism(rng, n))),
        Kind::General => loop {
            let sigma = Arc::new(random_nontrivial_automorphism(rng, n));
            let d = random_derivation(rng, sigma, 2);
            if !d.is_zero() {
                break d;
            }
        },
    };
    OreExtension::new(delta)
}

pub fn random_ore(rng: &mut impl Rng, n: usize, max_xdeg: usize, max_deg: u32) -> OrePoly {
    let k = rng.gen_range(0..=max_xdeg);
    OrePoly::from_coeffs((0..=k).map(|_| random_poly(rng, n, max_deg, 2)).collect())
}

pub fn z(n: usize, i: usize) -> Polynomial {
    Polynomial::var(n, i)
}

pub fn c(n: usize, v: i64) -> Polynomial {
    Polynomial::constant(n, int(v))
}

/// Extension from explicit images of `σ` and `δ`; the inverse of `σ` is computed.
pub fn extension(sigma: Vec<Polynomial>, delta: Vec<Polynomial>) -> OreExtension {
    let n = sigma.len();
    let endo = PolyEndo::new(sigma).unwrap();
    let auto = if endo.is_identity() {
        Automorphism::identity(n)
    } else {
        Automorphism::new(endo).unwrap()
    };
    OreExtension::new(SkewDerivation::new(Arc::new(auto), delta).unwrap())
}
