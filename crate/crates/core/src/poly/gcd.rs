//! Multivariate GCD over Q by content/primitive-part recursion, using the
//! subresultant remainder sequence in the leading variable.

use num_traits::One;

use super::{Polynomial, Scalar};

/// Greatest common divisor, normalized monic under graded-lex.
/// `gcd(0, 0) = 0`.
pub fn poly_gcd(f: &Polynomial, g: &Polynomial) -> Polynomial {
    assert_eq!(f.nvars(), g.nvars(), "ambient mismatch");
    gcd_rec(f, g).monic()
}

fn gcd_rec(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let n = f.nvars();
    if f.is_zero() {
        return g.clone();
    }
    if g.is_zero() {
        return f.clone();
    }
    if f.is_constant() || g.is_constant() {
        return Polynomial::one(n);
    }
    let var = (0..n)
        .find(|&i| f.uses_var(i) || g.uses_var(i))
        .expect("non-constant polynomial uses some variable");
    match (f.uses_var(var), g.uses_var(var)) {
        (true, false) => return gcd_rec(&content_in(f, var), g),
        (false, true) => return gcd_rec(f, &content_in(g, var)),
        _ => {}
    }
    let cf = content_in(f, var);
    let cg = content_in(g, var);
    let pf = f.div_exact(&cf).expect("content divides");
    let pg = g.div_exact(&cg).expect("content divides");
    let c = gcd_rec(&cf, &cg);
    let p = subresultant_gcd(&pf, &pg, var);
    &c * &p
}

/// GCD of the coefficients of `f` viewed as a polynomial in `z_{var+1}`.
pub fn content_in(f: &Polynomial, var: usize) -> Polynomial {
    let mut acc = Polynomial::zero(f.nvars());
    for c in f.coefficients_in(var) {
        if c.is_zero() {
            continue;
        }
        acc = gcd_rec(&acc, &c).monic();
        if acc.is_constant() {
            break;
        }
    }
    acc
}

fn primitive_part(f: &Polynomial, var: usize) -> Polynomial {
    if f.is_zero() {
        return f.clone();
    }
    let c = content_in(f, var);
    f.div_exact(&c).expect("content divides")
}

fn lead_in(f: &Polynomial, var: usize) -> Polynomial {
    f.coefficients_in(var).pop().unwrap_or_else(|| Polynomial::zero(f.nvars()))
}

/// `lc(b)^(deg a - deg b + 1) * a mod b` in `A[z_var]`, where `A` is the
/// polynomial ring in the other variables.
fn pseudo_remainder(a: &Polynomial, b: &Polynomial, var: usize) -> Polynomial {
    let db = b.degree_in(var).expect("nonzero divisor");
    let lb = lead_in(b, var);
    let mut r = a.clone();
    let mut steps = a.degree_in(var).unwrap_or(0) as i64 - db as i64 + 1;
    while let Some(dr) = r.degree_in(var) {
        if dr < db || r.is_zero() {
            break;
        }
        let lr = lead_in(&r, var);
        let mut exps = vec![0; a.nvars()];
        exps[var] = dr - db;
        let shift = super::Monomial::from_exponents(exps);
        r = &(&lb * &r) - &(&lr * &b.mul_monomial(&shift, &Scalar::one()));
        steps -= 1;
    }
    if steps > 0 {
        r = &r * &lb.pow(steps as u32);
    }
    r
}

/// GCD of two polynomials primitive in `z_var`, both of positive degree there.
fn subresultant_gcd(f: &Polynomial, g: &Polynomial, var: usize) -> Polynomial {
    let n = f.nvars();
    let (mut a, mut b) = if f.degree_in(var) >= g.degree_in(var) {
        (f.clone(), g.clone())
    } else {
        (g.clone(), f.clone())
    };
    let mut g_coef = Polynomial::one(n);
    let mut h = Polynomial::one(n);
    loop {
        let d = a.degree_in(var).unwrap() - b.degree_in(var).unwrap();
        let r = pseudo_remainder(&a, &b, var);
        if r.is_zero() {
            break;
        }
        if r.degree_in(var) == Some(0) {
            return Polynomial::one(n);
        }
        a = b;
        let divisor = &g_coef * &h.pow(d);
        b = r.div_exact(&divisor).expect("subresultant division is exact");
        g_coef = lead_in(&a, var);
        h = if d == 0 {
            h
        } else {
            g_coef
                .pow(d)
                .div_exact(&h.pow(d - 1))
                .expect("subresultant division is exact")
        };
    }
    primitive_part(&b, var)
}
