//! Randomized algebraic laws: ring axioms, homomorphism properties, and
//! structural invariants that must hold for arbitrary inputs, not just the
//! worked examples.

use composites::{
    in_saturated_system, CompositeSpec, Domain, MPoly, MonoidSpec, Poly, Scalar,
    SystemVariant,
};
use num_rational::BigRational;
use proptest::prelude::*;

/// Builds a polynomial over ℤ/4 from (exponent, residue) pairs.
fn z4_poly(terms: &[(u64, u8)]) -> Poly {
    let z4: Domain = "Z/4".parse().unwrap();
    let mut f = Poly::zero(&z4);
    for &(e, c) in terms {
        let term = Poly::monomial(
            BigRational::from_integer(e.into()),
            Scalar::from_integer(&z4, i64::from(c)),
        )
        .unwrap();
        f = f.add(&term).unwrap();
    }
    f
}

/// Builds a polynomial over ℚ from (exponent, numerator, denominator).
fn q_poly(terms: &[(u64, i64, u64)]) -> Poly {
    let q = Domain::rationals();
    let mut f = Poly::zero(&q);
    for &(e, n, d) in terms {
        let c = BigRational::new(n.into(), i64::try_from(d).unwrap().into());
        let term = Poly::monomial(
            BigRational::from_integer(e.into()),
            Scalar::from_rational(&q, &c).unwrap(),
        )
        .unwrap();
        f = f.add(&term).unwrap();
    }
    f
}

fn z4_terms() -> impl Strategy<Value = Vec<(u64, u8)>> {
    proptest::collection::vec((0u64..5, 0u8..4), 0..5)
}

fn q_terms() -> impl Strategy<Value = Vec<(u64, i64, u64)>> {
    proptest::collection::vec((0u64..5, -9i64..10, 1u64..5), 0..5)
}

proptest! {
    #[test]
    fn ring_axioms_over_a_residue_ring(
        a in z4_terms(), b in z4_terms(), c in z4_terms()
    ) {
        let (f, g, h) = (z4_poly(&a), z4_poly(&b), z4_poly(&c));
        prop_assert_eq!(
            f.add(&g).unwrap().add(&h).unwrap(),
            f.add(&g.add(&h).unwrap()).unwrap()
        );
        prop_assert_eq!(f.add(&g).unwrap(), g.add(&f).unwrap());
        prop_assert_eq!(
            f.mul(&g).unwrap().mul(&h).unwrap(),
            f.mul(&g.mul(&h).unwrap()).unwrap()
        );
        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
        prop_assert_eq!(
            f.mul(&g.add(&h).unwrap()).unwrap(),
            f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap()
        );
        prop_assert!(f.add(&f.neg()).unwrap().is_zero());
    }

    #[test]
    fn ring_axioms_over_the_rationals(
        a in q_terms(), b in q_terms(), c in q_terms()
    ) {
        let (f, g, h) = (q_poly(&a), q_poly(&b), q_poly(&c));
        prop_assert_eq!(
            f.mul(&g).unwrap().mul(&h).unwrap(),
            f.mul(&g.mul(&h).unwrap()).unwrap()
        );
        prop_assert_eq!(
            f.mul(&g.add(&h).unwrap()).unwrap(),
            f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap()
        );
    }

    #[test]
    fn coercion_is_a_ring_homomorphism(a in q_terms(), b in q_terms()) {
        let ext: Domain = "Q(sqrt2)".parse().unwrap();
        let (f, g) = (q_poly(&a), q_poly(&b));
        prop_assert_eq!(
            f.add(&g).unwrap().coerce(&ext).unwrap(),
            f.coerce(&ext).unwrap().add(&g.coerce(&ext).unwrap()).unwrap()
        );
        prop_assert_eq!(
            f.mul(&g).unwrap().coerce(&ext).unwrap(),
            f.coerce(&ext).unwrap().mul(&g.coerce(&ext).unwrap()).unwrap()
        );
    }

    #[test]
    fn division_reconstructs_the_dividend(
        a in proptest::collection::vec((0u64..6, 0u8..5), 0..6),
        b in proptest::collection::vec((0u64..4, 0u8..5), 1..4),
    ) {
        let gf5: Domain = "GF(5)".parse().unwrap();
        let build = |terms: &[(u64, u8)]| {
            let mut f = Poly::zero(&gf5);
            for &(e, c) in terms {
                let term = Poly::monomial(
                    BigRational::from_integer(e.into()),
                    Scalar::from_integer(&gf5, i64::from(c)),
                )
                .unwrap();
                f = f.add(&term).unwrap();
            }
            f
        };
        let f = build(&a);
        let d = build(&b);
        prop_assume!(!d.is_zero());
        let (q, r) = f.div_rem(&d).unwrap();
        prop_assert_eq!(q.mul(&d).unwrap().add(&r).unwrap(), f);
        if !r.is_zero() {
            prop_assert!(r.degree().unwrap() < d.degree().unwrap());
        }
    }

    #[test]
    fn evaluation_is_multiplicative(a in q_terms(), b in q_terms(), at in -6i64..7) {
        let q = Domain::rationals();
        let (f, g) = (q_poly(&a), q_poly(&b));
        let point = Scalar::from_integer(&q, at);
        prop_assert_eq!(
            f.mul(&g).unwrap().eval(&point).unwrap(),
            f.eval(&point).unwrap().mul(&g.eval(&point).unwrap()).unwrap()
        );
    }

    #[test]
    fn derivative_satisfies_the_product_rule(a in q_terms(), b in q_terms()) {
        let (f, g) = (q_poly(&a), q_poly(&b));
        let lhs = f.mul(&g).unwrap().derivative().unwrap();
        let rhs = f
            .derivative()
            .unwrap()
            .mul(&g)
            .unwrap()
            .add(&f.mul(&g.derivative().unwrap()).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn composite_members_are_closed_under_product(
        a in z4_terms(), b in z4_terms()
    ) {
        // In T(ℤ/4, ℤ/4) every polynomial is a member, so products of
        // members must be members: the subring property at full scale.
        let spec: CompositeSpec = "T(A=Z/4; B=Z/4)".parse().unwrap();
        let (f, g) = (z4_poly(&a), z4_poly(&b));
        prop_assert!(spec.is_member(&f).unwrap());
        let report = spec.mul_with_closure(&f, &g).unwrap();
        prop_assert!(report.in_spec);
    }

    #[test]
    fn saturated_system_is_multiplicatively_closed(
        a in q_terms(), b in q_terms()
    ) {
        let spec: CompositeSpec = "T(A=Q; B=Q)".parse().unwrap();
        let (f, g) = (q_poly(&a), q_poly(&b));
        let variant = SystemVariant::NonzeroConstant;
        let fs = in_saturated_system(&f, &spec, variant).unwrap();
        let gs = in_saturated_system(&g, &spec, variant).unwrap();
        if fs && gs {
            let product = f.mul(&g).unwrap();
            prop_assert!(in_saturated_system(&product, &spec, variant).unwrap());
        }
    }

    #[test]
    fn beta_is_additive_for_rational_exponents(
        a in proptest::collection::vec((0u64..20, -5i64..6), 1..4),
        b in proptest::collection::vec((0u64..20, -5i64..6), 1..4),
    ) {
        // Supports drawn from ⟨1/2, 1/3⟩ via its scaled model (scale 6).
        let m: MonoidSpec = "M<1/2,1/3>".parse().unwrap();
        let z = Domain::integers();
        let build = |terms: &[(u64, i64)]| {
            let mut f = Poly::zero(&z);
            for &(v, c) in terms {
                let e = BigRational::new(v.into(), 6.into());
                if m.contains(&e).unwrap() {
                    let term =
                        Poly::monomial(e, Scalar::from_integer(&z, c)).unwrap();
                    f = f.add(&term).unwrap();
                }
            }
            f
        };
        let f = build(&a);
        let g = build(&b);
        prop_assume!(!f.is_zero() && !g.is_zero());
        let fm = MPoly::new(f, &m).unwrap();
        let gm = MPoly::new(g, &m).unwrap();
        prop_assert_eq!(
            fm.mul(&gm).unwrap().beta().unwrap(),
            fm.beta().unwrap() + gm.beta().unwrap()
        );
    }
}
