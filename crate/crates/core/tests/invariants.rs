mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use common::{c, extension, z};
use ore_nakayama::endo::{Automorphism, PolyEndo};
use ore_nakayama::invariants::{
    check_j_surjectivity, eigenspace, find_invariants, leading_map_j, InvariantElement, TwistedAlgebra,
    TwistedElement,
};
use ore_nakayama::linalg::{rank, ScalarMatrix};
use ore_nakayama::nakayama::compute_nakayama;
use ore_nakayama::ore::{OreExtension, OrePoly};
use ore_nakayama::poly::{int, Monomial, Polynomial, Scalar};
use num_traits::Zero;
use rand::Rng;

fn coords(a: &OrePoly) -> BTreeMap<(usize, Monomial), Scalar> {
    let mut out = BTreeMap::new();
    for (i, f) in a.coeffs().iter().enumerate() {
        for (m, v) in f.terms() {
            out.insert((i, m.clone()), v.clone());
        }
    }
    out
}

fn in_span(basis: &[OrePoly], a: &OrePoly) -> bool {
    let vs: Vec<_> = basis.iter().map(coords).collect();
    let va = coords(a);
    let keys: Vec<_> = vs.iter().chain(std::iter::once(&va)).flat_map(|v| v.keys().cloned()).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    let row = |v: &BTreeMap<(usize, Monomial), Scalar>| keys.iter().map(|k| v.get(k).cloned().unwrap_or_else(Scalar::zero)).collect::<Vec<_>>();
    let mut rows: Vec<Vec<Scalar>> = vs.iter().map(row).collect();
    if keys.is_empty() {
        return true;
    }
    let r0 = if rows.is_empty() { 0 } else { rank(&ScalarMatrix::from_rows(rows.clone())) };
    rows.push(row(&va));
    rank(&ScalarMatrix::from_rows(rows)) == r0
}

fn within(a: &OrePoly, max_xdeg: usize, max_deg: u32) -> bool {
    a.degree().unwrap_or(0) <= max_xdeg && a.coeffs().iter().all(|f| f.total_degree().unwrap_or(0) <= max_deg)
}

fn finite_order_contexts(seed: u64, count: usize) -> Vec<OreExtension> {
    let mut rng = common::rng(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(1..=2);
        let s = Arc::new(common::random_finite_order(&mut rng, n));
        if s.is_identity() {
            continue;
        }
        out.push(OreExtension::new(common::random_derivation(&mut rng, s, 1)));
    }
    out
}

#[test]
fn invariants_are_fixed_and_closed() {
    let mut contexts = finite_order_contexts(301, 6);
    contexts.push(extension(vec![-&z(2, 0), z(2, 1)], vec![c(2, -2), c(2, 0)]));
    contexts.push(extension(vec![z(2, 0).scale(&int(2)), z(2, 1)], vec![z(2, 0), c(2, 0)]));
    for e in contexts {
        let nu = compute_nakayama(e.delta()).unwrap();
        let (xd, cd) = (2, 2);
        let inv = find_invariants(&e, &nu, xd, cd);
        let basis: Vec<OrePoly> = inv.iter().map(|i| i.element.clone()).collect();
        for a in &basis {
            assert_eq!(&nu.apply(&e, a), a);
        }
        for a in &basis {
            for b in &basis {
                let p = e.mul(a, b);
                if within(&p, xd, cd) {
                    assert!(in_span(&basis, &p), "product leaves the invariant span");
                }
            }
        }
    }
}

#[test]
fn shifted_coefficients_are_eigenvectors() {
    let mut contexts = finite_order_contexts(302, 6);
    contexts.push(extension(vec![&z(2, 0) + &z(2, 1), z(2, 1)], vec![z(2, 0), c(2, 0)]));
    for e in contexts {
        let nu = compute_nakayama(e.delta()).unwrap();
        let j = e.sigma().jacobian().clone();
        for inv in find_invariants(&e, &nu, 2, 2) {
            for (i, g) in inv.shifted.as_ref().unwrap().iter().enumerate() {
                let lambda = num_traits::pow(j.clone(), i);
                assert_eq!(e.sigma().apply_to_ratfunc(g), g.scale(&lambda));
            }
        }
    }
}

#[test]
fn eigenspace_bases_are_exact() {
    let mut rng = common::rng(303);
    for k in 0..10 {
        let s = common::random_finite_order(&mut rng, 1 + k % 3);
        for lambda in [int(1), int(-1)] {
            let b = eigenspace(&s, &lambda, 3);
            for f in &b.basis {
                assert_eq!(s.apply(f), f.scale(&lambda));
            }
            // Averaging over the group projects every monomial onto the eigenspace.
            let ore_nakayama::endo::Order::Finite(o) = s.order(64) else { panic!() };
            if lambda == int(-1) && o % 2 == 1 {
                assert!(b.basis.is_empty());
                continue;
            }
            for m in Monomial::up_to_degree(s.nvars(), 3) {
                let f = Polynomial::monomial(s.nvars(), m, Scalar::from_integer(1.into()));
                let mut avg = Polynomial::zero(s.nvars());
                let mut weight = Scalar::from_integer(1.into());
                for r in 0..o as i32 {
                    avg = &avg + &s.apply_power(&f, r).scale(&weight);
                    weight /= &lambda;
                }
                let basis: Vec<OrePoly> = b.basis.iter().map(|g| OrePoly::from_coeffs(vec![g.clone()])).collect();
                assert!(in_span(&basis, &OrePoly::from_coeffs(vec![avg])));
            }
        }
    }
}

fn random_eigen_element(rng: &mut impl Rng, tw: &TwistedAlgebra, degree: u32, max_deg: u32) -> TwistedElement {
    let basis = eigenspace(tw.sigma(), &tw.eigenvalue(degree), max_deg).basis;
    let n = tw.sigma().nvars();
    let coeff = basis
        .iter()
        .fold(Polynomial::zero(n), |acc, g| &acc + &g.scale(&common::small_scalar(rng)));
    tw.element(degree, coeff).unwrap()
}

#[test]
fn zhang_twist_is_associative() {
    let mut rng = common::rng(304);
    let scalings = [
        vec![z(2, 0).scale(&int(2)), z(2, 1)],
        vec![z(2, 0).scale(&int(2)), z(2, 1).scale(&ore_nakayama::poly::ratio(1, 2))],
        vec![-&z(2, 1), z(2, 0)],
        vec![&z(2, 0) + &z(2, 1), z(2, 1)],
    ];
    for images in scalings {
        let tw = TwistedAlgebra::new(Arc::new(Automorphism::new(PolyEndo::new(images).unwrap()).unwrap()));
        for _ in 0..10 {
            let [a, b, cc] = [0; 3].map(|_| {
                let d = rng.gen_range(0..=2);
                random_eigen_element(&mut rng, &tw, d, 3)
            });
            let left = tw.mul(&tw.mul(&a, &b).unwrap(), &cc).unwrap();
            let right = tw.mul(&a, &tw.mul(&b, &cc).unwrap()).unwrap();
            assert_eq!(left, right);
        }
    }
}

#[test]
fn leading_data_multiplies_through_the_twist() {
    let contexts = vec![
        extension(vec![-&z(2, 0), z(2, 1)], vec![c(2, -2), c(2, 0)]),
        extension(vec![z(2, 0).scale(&int(2)), z(2, 1)], vec![z(2, 0), c(2, 0)]),
        extension(vec![&z(2, 0) + &z(2, 1), z(2, 1)], vec![z(2, 0), c(2, 0)]),
    ];
    for e in contexts {
        let nu = compute_nakayama(e.delta()).unwrap();
        let q = e.quotient().unwrap();
        let tw = TwistedAlgebra::new(e.sigma().clone());
        let inv = find_invariants(&e, &nu, 1, 2);
        let leads: Vec<(InvariantElement, TwistedElement)> = inv
            .into_iter()
            .filter_map(|i| leading_map_j(&i, &tw).ok().map(|l| (i, l)))
            .collect();
        assert!(!leads.is_empty());
        for (a, ja) in &leads {
            for (b, jb) in &leads {
                let prod = InvariantElement::new(e.mul(&a.element, &b.element), Some(&q));
                assert_eq!(leading_map_j(&prod, &tw).unwrap(), tw.mul(ja, jb).unwrap());
                let single = |i: &InvariantElement| i.shifted.as_ref().unwrap().iter().filter(|g| !g.is_zero()).count() == 1;
                if single(a) && single(b) {
                    assert!(single(&prod));
                }
            }
        }
    }
}

#[test]
fn finite_order_levels_are_witnessed() {
    for e in finite_order_contexts(305, 5) {
        let nu = compute_nakayama(e.delta()).unwrap();
        for level in 1..=2 {
            let rep = check_j_surjectivity(&e, &nu, level, 1).unwrap();
            assert!(rep.all_witnessed(), "{rep:?}");
            for t in &rep.targets {
                if let ore_nakayama::invariants::TargetOutcome::Witness(w) = &t.outcome {
                    assert_eq!(&nu.apply(&e, w), w);
                    assert_eq!(w.degree(), Some(level));
                    assert_eq!(w.leading_coeff(), Some(&t.target));
                }
            }
        }
    }
}

#[test]
fn differential_case_has_no_leading_map() {
    let e = extension(vec![z(1, 0)], vec![c(1, 1)]);
    let nu = compute_nakayama(e.delta()).unwrap();
    assert!(check_j_surjectivity(&e, &nu, 1, 1).is_err());
    let inv = find_invariants(&e, &nu, 2, 2);
    assert_eq!(inv.len(), 6 * 3 / 2);
    assert!(inv.iter().all(|i| i.shifted.is_none()));
}
