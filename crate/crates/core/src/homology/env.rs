//! The enveloping algebra `E^e = E ⊗ E^op` as formal sums of monomial pairs.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_traits::Zero;

use super::tensor::TensorRR;
use crate::expr::default_names;
use crate::ore::{OreExtension, OrePoly};
use crate::poly::{Monomial, Polynomial, Scalar};

/// The left-normal monomial `z^a x^i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OreMono {
    pub z: Monomial,
    pub x: u32,
}

impl OreMono {
    pub fn one(n: usize) -> Self {
        OreMono {
            z: Monomial::one(n),
            x: 0,
        }
    }
}

/// Element of `E ⊗ E^op`; the key `(a, b)` stands for `a ⊗ b`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct EnvElem {
    terms: BTreeMap<(OreMono, OreMono), Scalar>,
}

fn ore_terms(a: &OrePoly) -> Vec<(OreMono, Scalar)> {
    let mut out = Vec::new();
    for (i, c) in a.coeffs().iter().enumerate() {
        for (m, coef) in c.terms() {
            out.push((
                OreMono {
                    z: m.clone(),
                    x: i as u32,
                },
                coef.clone(),
            ));
        }
    }
    out
}

impl EnvElem {
    pub fn zero() -> Self {
        EnvElem::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OreMono, &OreMono, &Scalar)> {
        self.terms.iter().map(|((a, b), c)| (a, b, c))
    }

    pub fn add_term(&mut self, a: OreMono, b: OreMono, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (a, b);
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    /// `a ⊗ b` for Ore elements.
    pub fn pure(a: &OrePoly, b: &OrePoly) -> Self {
        let mut out = EnvElem::zero();
        let right = ore_terms(b);
        for (ma, ca) in ore_terms(a) {
            for (mb, cb) in &right {
                out.add_term(ma.clone(), mb.clone(), &ca * cb);
            }
        }
        out
    }

    /// Image of `R ⊗ R` in `E ⊗ E^op`.
    pub fn from_tensor(t: &TensorRR) -> Self {
        let mut out = EnvElem::zero();
        for (a, b, c) in t.pure_terms() {
            out.add_term(OreMono { z: a, x: 0 }, OreMono { z: b, x: 0 }, c.clone());
        }
        out
    }

    pub fn add(&self, other: &EnvElem) -> EnvElem {
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(a.clone(), b.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> EnvElem {
        if c.is_zero() {
            return EnvElem::zero();
        }
        EnvElem {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn neg(&self) -> EnvElem {
        self.scale(&-Scalar::from_integer(1.into()))
    }

    pub fn sub(&self, other: &EnvElem) -> EnvElem {
        self.add(&other.neg())
    }

    /// Human-readable form such as `x⊗z1 - z1*x⊗1`.
    pub fn display(&self, n: usize) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let names = default_names(n);
        let mono = |m: &OreMono| -> String {
            let mut c = vec![Polynomial::zero(n); m.x as usize + 1];
            c[m.x as usize] = Polynomial::monomial(n, m.z.clone(), Scalar::from_integer(1.into()));
            crate::expr::format_ore(&OrePoly::from_coeffs(c), &names, "x")
        };
        let mut s = String::new();
        for (k, ((a, b), c)) in self.terms.iter().enumerate() {
            let neg = c < &Scalar::zero();
            let mag = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if mag != Scalar::from_integer(1.into()) {
                s.push_str(&format!("{mag}*"));
            }
            s.push_str(&format!("{}⊗{}", mono(a), mono(b)));
        }
        s
    }
}

/// Normal form of `x^i z^b` as Ore monomials with coefficients.
type MonoExpansion = Vec<(OreMono, Scalar)>;

/// `E^e` for a fixed `E`, with a product cache for `x^i z^b`.
pub struct Envelope {
    ext: OreExtension,
    cache: Mutex<HashMap<(u32, Monomial), MonoExpansion>>,
}

impl Envelope {
    pub fn new(ext: OreExtension) -> Self {
        Envelope {
            ext,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn ext(&self) -> &OreExtension {
        &self.ext
    }

    pub fn nvars(&self) -> usize {
        self.ext.nvars()
    }

    pub fn one(&self) -> EnvElem {
        let n = self.nvars();
        let mut out = EnvElem::zero();
        out.add_term(OreMono::one(n), OreMono::one(n), Scalar::from_integer(1.into()));
        out
    }

    /// `x ⊗ 1`.
    pub fn x_left(&self) -> EnvElem {
        EnvElem::pure(&self.ext.x(), &self.ext.one())
    }

    /// `1 ⊗ x`.
    pub fn x_right(&self) -> EnvElem {
        EnvElem::pure(&self.ext.one(), &self.ext.x())
    }

    fn x_pow_times(&self, i: u32, z: &Monomial) -> Vec<(OreMono, Scalar)> {
        let key = (i, z.clone());
        if let Some(v) = self.cache.lock().expect("cache lock").get(&key) {
            return v.clone();
        }
        let n = self.nvars();
        let xi = self.ext.term(Polynomial::one(n), i as usize);
        let f = self
            .ext
            .constant(Polynomial::monomial(n, z.clone(), Scalar::from_integer(1.into())));
        let v = ore_terms(&self.ext.mul(&xi, &f));
        self.cache.lock().expect("cache lock").insert(key, v.clone());
        v
    }

    /// Product of Ore monomials `(z^a x^i)(z^b x^j) = z^a (x^i z^b) x^j`.
    fn mono_mul(&self, a: &OreMono, b: &OreMono) -> Vec<(OreMono, Scalar)> {
        if a.x == 0 {
            return vec![(
                OreMono {
                    z: a.z.mul(&b.z),
                    x: b.x,
                },
                Scalar::from_integer(1.into()),
            )];
        }
        self.x_pow_times(a.x, &b.z)
            .into_iter()
            .map(|(m, c)| {
                (
                    OreMono {
                        z: a.z.mul(&m.z),
                        x: m.x + b.x,
                    },
                    c,
                )
            })
            .collect()
    }

    /// `(a ⊗ b)(c ⊗ d) = ac ⊗ db`, extended bilinearly.
    pub fn mul(&self, u: &EnvElem, v: &EnvElem) -> EnvElem {
        let mut out = EnvElem::zero();
        for ((a, b), c1) in &u.terms {
            for ((c, d), c2) in &v.terms {
                let coef = c1 * c2;
                let left = self.mono_mul(a, c);
                let right = self.mono_mul(d, b);
                for (l, lc) in &left {
                    for (r, rc) in &right {
                        out.add_term(l.clone(), r.clone(), &coef * &(lc * rc));
                    }
                }
            }
        }
        out
    }
}
