use num_traits::Zero;
use proptest::prelude::*;

use ore_nakayama::expr::{default_names, format_poly, parse_poly};
use ore_nakayama::linalg::{det_cofactor, det_over_ring, solve_affine, AffineSolution, ScalarMatrix};
use ore_nakayama::poly::{ratio, Monomial, Polynomial, RationalFunction, Scalar};

fn scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| ratio(p, q))
}

/// Polynomial in `n` variables of total degree `<= max_deg`.
fn poly(n: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, n), scalar()), 0..=max_terms).prop_map(move |terms| {
        let terms = terms.into_iter().map(|(mut e, c)| {
            // Trim exponents from the right until the total degree fits.
            let mut i = e.len();
            while e.iter().sum::<u32>() > max_deg {
                i = if i == 0 { e.len() - 1 } else { i - 1 };
                e[i] = e[i].saturating_sub(1);
            }
            (Monomial::from_exponents(e), c)
        });
        Polynomial::from_terms(n, terms)
    })
}

fn polys3(max_deg: u32) -> impl Strategy<Value = (Polynomial, Polynomial, Polynomial)> {
    (1usize..=3).prop_flat_map(move |n| (poly(n, max_deg, 5), poly(n, max_deg, 5), poly(n, max_deg, 5)))
}

fn nonzero(p: impl Strategy<Value = Polynomial>) -> impl Strategy<Value = Polynomial> {
    p.prop_filter("nonzero", |f| !f.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms((f, g, h) in polys3(6)) {
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert!((&f - &f).is_zero());
        prop_assert_eq!(&f * &Polynomial::one(f.nvars()), f.clone());
    }

    #[test]
    fn degrees_add_under_products((f, g, _h) in polys3(3)) {
        let p = &f * &g;
        if !f.is_zero() && !g.is_zero() {
            prop_assert_eq!(p.total_degree(), Some(f.total_degree().unwrap() + g.total_degree().unwrap()));
            prop_assert_eq!(p.div_exact(&g), Some(f.clone()));
        }
    }

    #[test]
    fn reduction_cancels_common_factors(
        (a, b, c) in (1usize..=2).prop_flat_map(|n| (poly(n, 2, 3), nonzero(poly(n, 2, 3)), nonzero(poly(n, 1, 2))))
    ) {
        let base = RationalFunction::new(a.clone(), b.clone()).unwrap();
        let scaled = RationalFunction::new(&a * &c, &b * &c).unwrap();
        prop_assert_eq!(&scaled, &base);
        let lc = base.denominator().leading_coefficient();
        prop_assert_eq!(lc, Scalar::from_integer(1.into()));
    }

    #[test]
    fn cross_equality_agrees_with_canonical_equality(
        (a, b, c, d) in (1usize..=2).prop_flat_map(|n| (poly(n, 2, 3), nonzero(poly(n, 1, 2)), poly(n, 2, 3), nonzero(poly(n, 1, 2))))
    ) {
        let x = RationalFunction::new(a, b).unwrap();
        let y = RationalFunction::new(c, d).unwrap();
        prop_assert_eq!(x.cross_equal(&y), x == y);
        let y2 = RationalFunction::new(x.numerator().scale(&ratio(3, 2)), x.denominator().scale(&ratio(3, 2))).unwrap();
        prop_assert!(x.cross_equal(&y2));
        prop_assert_eq!(x, y2);
    }

    #[test]
    fn substitution_is_multiplicative(
        (f, g, images) in (1usize..=3).prop_flat_map(|n| (poly(n, 3, 4), poly(n, 3, 4), prop::collection::vec(poly(n, 2, 3), n)))
    ) {
        let lhs = (&f * &g).substitute(&images).unwrap();
        let rhs = &f.substitute(&images).unwrap() * &g.substitute(&images).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn parse_inverts_format(f in (1usize..=3).prop_flat_map(|n| poly(n, 6, 6))) {
        let names = default_names(f.nvars());
        let text = format_poly(&f, &names);
        prop_assert_eq!(parse_poly(&text, &names).unwrap(), f);
    }

    #[test]
    fn parse_inverts_format_with_custom_names(f in poly(2, 4, 5)) {
        let names = ["u", "v_2"];
        prop_assert_eq!(parse_poly(&format_poly(&f, &names), &names).unwrap(), f);
    }

    #[test]
    fn affine_solutions_satisfy_the_system(
        (rows, cols) in (1usize..=5, 1usize..=5),
        seed in prop::collection::vec(scalar(), 50),
        sparsity in prop::collection::vec(any::<bool>(), 50),
    ) {
        let mut k = 0;
        let entries: Vec<Vec<Scalar>> = (0..rows).map(|_| (0..cols).map(|_| {
            k += 1;
            if sparsity[k] { Scalar::zero() } else { seed[k].clone() }
        }).collect()).collect();
        let a = ScalarMatrix::from_rows(entries);
        let b: Vec<Scalar> = (0..rows).map(|r| seed[40 + r].clone()).collect();
        match solve_affine(&a, &b) {
            AffineSolution::Solved { particular, kernel } => {
                prop_assert_eq!(a.mul_vec(&particular), b);
                for v in kernel {
                    prop_assert!(a.mul_vec(&v).iter().all(Zero::is_zero));
                }
            }
            AffineSolution::NoSolution => {
                // Then b is not in the column space: appending it raises the rank.
                let mut aug = a.to_rows();
                for (r, row) in aug.iter_mut().enumerate() {
                    row.push(b[r].clone());
                }
                prop_assert!(ore_nakayama::linalg::rank(&ScalarMatrix::from_rows(aug)) > ore_nakayama::linalg::rank(&a));
            }
        }
    }

    #[test]
    fn bareiss_matches_cofactor_expansion(
        m in (1usize..=4).prop_flat_map(|size| (1usize..=2).prop_flat_map(move |n| prop::collection::vec(prop::collection::vec(poly(n, 1, 2), size), size)))
    ) {
        prop_assert_eq!(det_over_ring(&m), det_cofactor(&m));
    }

    #[test]
    fn determinants_multiply(a in prop::collection::vec(prop::collection::vec(scalar(), 3), 3), b in prop::collection::vec(prop::collection::vec(scalar(), 3), 3)) {
        let (ma, mb) = (ScalarMatrix::from_rows(a.clone()), ScalarMatrix::from_rows(b.clone()));
        let prod = ma.mul(&mb).to_rows();
        prop_assert_eq!(det_over_ring(&prod), det_over_ring(&a) * det_over_ring(&b));
    }
}
