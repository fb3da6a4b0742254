//! End-to-end acceptance checks, one test per criterion, each with an
//! explicit wall-clock budget and a printed pass line (visible with
//! `cargo test --test acceptance -- --nocapture`).
//!
//! Every check pits a production procedure against an independent
//! brute-force oracle or a hand-verified trace; none of them share code
//! with the implementation under test beyond the data types.

use std::time::Instant;

use composites::{
    accp_chain_check, construct_irreducible_x1, divides_in_mdomain, enumerate_members,
    format_letters, graded_closure_check, irreducible_composite_oracle,
    is_irreducible_composite, is_unit_composite, localize_at_zero,
    mdomain_irreducible_oracle, monoid_decode, monoid_encode, parse_letters, unit_oracle,
    CompositeSpec, Domain, Error, FactorBudget, Fraction, IrreducibleReason, KeyFile,
    MPoly, MonoidSpec, Poly, Scalar, SystemSpec, SystemVariant,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

/// Asserts the elapsed budget and prints the single pass line.
fn finish(label: &str, start: Instant, limit_ms: u128) {
    let elapsed = start.elapsed();
    println!("acceptance: {label}: PASS ({:.3} ms)", elapsed.as_secs_f64() * 1e3);
    assert!(
        elapsed.as_millis() < limit_ms,
        "{label} took {elapsed:?}, budget {limit_ms} ms"
    );
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn rand_rational(rng: &mut ChaCha8Rng) -> BigRational {
    q(rng.random_range(-9..=9), rng.random_range(1..=4))
}

/// A random element of ℚ or ℚ(√2): a + b·√2 with small rational a, b.
fn rand_scalar(rng: &mut ChaCha8Rng, domain: &Domain) -> Scalar {
    let a = Scalar::from_rational(domain, &rand_rational(rng)).unwrap();
    if domain.to_string().contains("sqrt2") {
        let root = Scalar::parse("sqrt2", domain).unwrap();
        let b = Scalar::from_rational(domain, &rand_rational(rng)).unwrap();
        a.add(&b.mul(&root).unwrap()).unwrap()
    } else {
        a
    }
}

/// A random member of a nested composite with degree ≤ max_deg, drawing
/// the coefficient at each exponent from that slot's domain.
fn rand_member(rng: &mut ChaCha8Rng, spec: &CompositeSpec, max_deg: u64) -> Poly {
    let mut f = Poly::zero(spec.top());
    for e in 0..=max_deg {
        let c = rand_scalar(rng, spec.slot_domain(e as usize)).coerce(spec.top()).unwrap();
        f = f.add(&Poly::monomial(BigRational::from_integer(e.into()), c).unwrap()).unwrap();
    }
    f
}

#[test]
fn golden_cipher_trace() {
    let start = Instant::now();
    let key = KeyFile::worked_example().expand().unwrap();
    let plaintext = parse_letters("0 2 4 6 8 9 6 5").unwrap();
    let ciphertext = key.encrypt(&plaintext, 0).unwrap();
    assert_eq!(format_letters(&ciphertext), "1 9 5 9 9 1 9 4 9 7 2 6 1 3 8 3");
    assert_eq!(key.decrypt(&ciphertext).unwrap(), plaintext);
    finish("golden cipher trace", start, 1);
}

#[test]
fn cipher_roundtrip_sweep() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
    let alphabets = [2u32, 10, 26, 256];
    for case in 0..1000 {
        let n = alphabets[case % 4];
        let rand_system = |rng: &mut ChaCha8Rng| {
            if rng.random_bool(0.5) {
                SystemSpec::Caesar { shift: rng.random_range(-300..=300) }
            } else {
                let mut table: Vec<u32> = (0..n).collect();
                table.shuffle(rng);
                SystemSpec::Permutation { map: table }
            }
        };
        let f_len = rng.random_range(1..=3);
        let g_len = rng.random_range(1..=3);
        let kf = KeyFile {
            alphabet_size: n,
            f: (0..f_len).map(|_| rand_system(&mut rng)).collect(),
            g: (0..g_len).map(|_| rand_system(&mut rng)).collect(),
        };
        let key = kf.expand().unwrap();
        let len = rng.random_range(0..=20);
        let message: Vec<u32> = (0..len).map(|_| rng.random_range(0..n)).collect();
        let pad = rng.random_range(0..n);
        let ciphertext = key.encrypt(&message, pad).unwrap();
        let back = key.decrypt(&ciphertext).unwrap();
        assert_eq!(&back[..message.len()], &message[..], "case {case}");
        assert!(back[message.len()..].iter().all(|&l| l == pad), "case {case}");
    }
    finish("1000 cipher roundtrips over alphabets {2,10,26,256}", start, 5000);
}

#[test]
fn unit_classifier_matches_oracle() {
    let start = Instant::now();
    let spec: CompositeSpec = "T(A=Z/4; B=Z/4)".parse().unwrap();
    let members = enumerate_members(&spec, 3).unwrap();
    assert_eq!(members.len(), 256);
    let mut mismatches = 0;
    for f in &members {
        let fast = is_unit_composite(f, &spec).unwrap();
        let slow = unit_oracle(f, &spec, 3).unwrap();
        if fast != slow {
            mismatches += 1;
            eprintln!("unit mismatch on {f}: classifier {fast}, oracle {slow}");
        }
    }
    assert_eq!(mismatches, 0);
    finish("unit classification vs oracle on 256 members", start, 1000);
}

#[test]
fn irreducibility_classifier_matches_oracle() {
    let start = Instant::now();
    let spec: CompositeSpec = "T(A=GF(2); B=GF(4,x^2+x+1))".parse().unwrap();
    let members = enumerate_members(&spec, 4).unwrap();
    assert_eq!(members.len(), 512);
    let budget = FactorBudget::default();
    let mut mismatches = 0;
    for f in &members {
        let fast = is_irreducible_composite(f, &spec, &budget).unwrap();
        match irreducible_composite_oracle(f, &spec, 4) {
            Err(Error::NotApplicable(_)) => {
                if fast.reason != IrreducibleReason::UnitOrZero {
                    mismatches += 1;
                    eprintln!("applicability mismatch on {f}");
                }
            }
            Ok(slow) => {
                if fast.verdict != slow {
                    mismatches += 1;
                    eprintln!(
                        "irreducibility mismatch on {f}: classifier {}, oracle {slow}",
                        fast.verdict
                    );
                }
            }
            Err(e) => panic!("oracle failed on {f}: {e}"),
        }
    }
    assert_eq!(mismatches, 0);
    finish("irreducibility vs oracle on 512 members", start, 30_000);
}

#[test]
fn product_closure_into_base_composite() {
    let start = Instant::now();
    let spec: CompositeSpec = "TPn(A0=Q, A1=Q(sqrt2), A2=Q; B=Q(sqrt2))".parse().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..500 {
        let f = rand_member(&mut rng, &spec, 4);
        let g = rand_member(&mut rng, &spec, 4);
        let report = spec.mul_with_closure(&f, &g).unwrap();
        assert!(report.in_a0_plus_xb, "product of {f} and {g} left A0+XB[X]");
    }
    // A pair whose product escapes the non-chain composite itself: the
    // coefficient √2 lands at exponent 2, whose slot only holds ℚ.
    let f = Poly::parse("x", spec.top()).unwrap();
    let g = Poly::parse("sqrt2*x", spec.top()).unwrap();
    let report = spec.mul_with_closure(&f, &g).unwrap();
    assert!(!report.in_spec);
    assert!(report.in_a0_plus_xb);
    finish("500 products stay in A0+XB[X]; escape witness found", start, 2000);
}

#[test]
fn integer_valued_membership_matches_direct_check() {
    let start = Instant::now();
    let spec: CompositeSpec = "IBA(A=Z; B=Q)".parse().unwrap();
    let rationals = Domain::rationals();
    // Falling-factorial binomials C(x, k) for k ≤ 5, always members.
    let mut binomials: Vec<Poly> = vec![Poly::one(&rationals)];
    let mut factorial = BigRational::one();
    for k in 1..=5u64 {
        let step = Poly::parse(&format!("x - {}", k - 1), &rationals).unwrap();
        let raw = binomials.last().unwrap().scale(
            &Scalar::from_rational(&rationals, &factorial).unwrap(),
        ).unwrap().mul(&step).unwrap();
        factorial *= BigRational::from_integer(BigInt::from(k));
        let inv = Scalar::from_rational(&rationals, &factorial.recip()).unwrap();
        binomials.push(raw.scale(&inv).unwrap());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut members_seen = 0;
    for case in 0..300 {
        let f = if case % 2 == 0 {
            // Integer combination of binomials: a guaranteed member.
            let mut f = Poly::zero(&rationals);
            for b in &binomials {
                let c = Scalar::from_integer(&rationals, rng.random_range(-3i64..=3));
                f = f.add(&b.scale(&c).unwrap()).unwrap();
            }
            f
        } else {
            // Arbitrary small rational coefficients.
            let mut f = Poly::zero(&rationals);
            for e in 0..=5u64 {
                let c = Scalar::from_rational(&rationals, &rand_rational(&mut rng)).unwrap();
                f = f
                    .add(&Poly::monomial(BigRational::from_integer(e.into()), c).unwrap())
                    .unwrap();
            }
            f
        };
        let fast = spec.is_member(&f).unwrap();
        let direct = (-25..=25i64).all(|t| {
            let v = f.eval(&Scalar::from_integer(&rationals, t)).unwrap();
            v.to_rational().unwrap().is_integer()
        });
        assert_eq!(fast, direct, "mismatch on {f}");
        if fast {
            members_seen += 1;
        }
    }
    assert!(members_seen >= 100, "sample never hit the member class");
    let half_sq = Poly::parse("1/2*x^2 + 1/2*x", &rationals).unwrap();
    assert!(spec.is_member(&half_sq).unwrap());
    let half_x = Poly::parse("1/2*x", &rationals).unwrap();
    assert!(!spec.is_member(&half_x).unwrap());
    finish("integer-valued membership vs 51-point integrality on 300 polys", start, 2000);
}

#[test]
fn monoid_membership_atoms_and_certified_irreducible() {
    let start = Instant::now();
    // Dynamic programming vs depth-bounded generator sums on three monoids.
    for text in ["M<2,3>", "M<1/2,1/3>", "M<3,5,7>"] {
        let m: MonoidSpec = text.parse().unwrap();
        let scale = m.scale().to_u64().unwrap();
        let gens = m.scaled_generators().to_vec();
        let mut brute = vec![false; 61];
        brute[0] = true;
        for _ in 0..=60 {
            for v in 0..=60u64 {
                if brute[v as usize] {
                    for &g in &gens {
                        if v + g <= 60 {
                            brute[(v + g) as usize] = true;
                        }
                    }
                }
            }
        }
        for v in 0..=60u64 {
            let value = BigRational::new(BigInt::from(v), BigInt::from(scale));
            assert_eq!(m.contains(&value).unwrap(), brute[v as usize], "{text} at {v}");
        }
    }
    let m23: MonoidSpec = "M<2,3>".parse().unwrap();
    assert_eq!(m23.atoms(&q(10, 1)).unwrap(), vec![q(2, 1), q(3, 1)]);
    // The certified construction and its independent confirmation.
    let two = Scalar::from_integer(&Domain::integers(), 2);
    let f = construct_irreducible_x1(&[two], &[q(2, 1), q(3, 1)], &m23).unwrap();
    assert_eq!(f.poly().to_string(), "2*x^3 - x^2");
    assert!(mdomain_irreducible_oracle(&f, &q(3, 1), 4).unwrap());
    finish("monoid membership vs brute force; atoms; certified irreducible", start, 10_000);
}

#[test]
fn graded_closure_counterexample_and_chain() {
    let start = Instant::now();
    let broken: CompositeSpec =
        "TPn(A0=Q, A1=Q(sqrt2), A2=Q; B=Q(sqrt2,sqrt3))".parse().unwrap();
    let report = graded_closure_check(&broken, 1, 1, &[]).unwrap();
    assert!(!report.holds);
    let witness = report.witness.expect("failing pair reported");
    let root2 = Scalar::parse("sqrt2", broken.top()).unwrap();
    assert_eq!(witness.product, root2);
    // On a genuine chain every component pair below the tower height holds.
    let chain: CompositeSpec = "Tn(A0=Q, A1=Q(sqrt2); B=Q(sqrt2,sqrt3))".parse().unwrap();
    for (i, j) in [(0, 0), (0, 1), (1, 0)] {
        let r = graded_closure_check(&chain, i, j, &[]).unwrap();
        assert!(r.holds, "component pair ({i},{j}) failed");
    }
    finish("graded closure break at (1,1) with witness sqrt2; chain holds", start, 1000);
}

#[test]
fn accp_chain_verdicts_and_beta_additivity() {
    let start = Instant::now();
    let m: MonoidSpec = "M<2,3>".parse().unwrap();
    let z = Domain::integers();
    let mp = |text: &str| MPoly::parse(text, &z, &m).unwrap();
    let good = accp_chain_check(&[mp("x^5"), mp("x^3")], &q(10, 1), 10).unwrap();
    assert!(good.accepted);
    let bad = accp_chain_check(&[mp("x^5"), mp("x^3"), mp("x^2")], &q(10, 1), 10).unwrap();
    assert!(!bad.accepted);
    assert!(good.steps.iter().all(|s| s.divides && s.quotient_nonunit));
    assert_eq!(bad.steps[1].index, 2);
    assert!(!bad.steps[1].divides, "step 2 must be the divisibility failure");
    assert!(bad.steps[0].divides, "step 1 is fine");
    // β is additive over 200 random nonzero products.
    let mut rng = ChaCha8Rng::seed_from_u64(5150);
    let support: Vec<BigRational> = (0..=20u64)
        .map(|v| BigRational::from_integer(v.into()))
        .filter(|v| m.contains(v).unwrap())
        .collect();
    let rand_mpoly = |rng: &mut ChaCha8Rng| loop {
        let mut f = Poly::zero(&z);
        for _ in 0..rng.random_range(1..=4) {
            let e = support[rng.random_range(0..support.len())].clone();
            let c = Scalar::from_integer(&z, rng.random_range(-5i64..=5));
            f = f.add(&Poly::monomial(e, c).unwrap()).unwrap();
        }
        if !f.is_zero() {
            return MPoly::new(f, &m).unwrap();
        }
    };
    for _ in 0..200 {
        let f = rand_mpoly(&mut rng);
        let g = rand_mpoly(&mut rng);
        let product = f.mul(&g).unwrap();
        assert_eq!(
            product.beta().unwrap(),
            f.beta().unwrap() + g.beta().unwrap(),
            "beta not additive for {f} times {g}"
        );
    }
    // The accepted chain's quotient is recoverable directly.
    let quo = divides_in_mdomain(&mp("x^5"), &mp("x^3"), &q(10, 1), 10).unwrap().unwrap();
    assert_eq!(quo.poly().to_string(), "x^2");
    finish("chain verdicts [X^5,X^3] ok, [X^5,X^3,X^2] step-2 fail; beta additive", start, 5000);
}

#[test]
fn fraction_formulas_and_monomial_localization() {
    let start = Instant::now();
    let spec: CompositeSpec = "T(A=Q; B=Q(sqrt2))".parse().unwrap();
    let variant = SystemVariant::NonzeroConstant;
    let mut rng = ChaCha8Rng::seed_from_u64(777);
    let rand_fraction = |rng: &mut ChaCha8Rng| loop {
        let num = rand_member(rng, &spec, 2);
        let den = rand_member(rng, &spec, 2);
        if let Ok(f) = Fraction::new(num, den, &spec, variant) {
            return f;
        }
    };
    for _ in 0..100 {
        let a = rand_fraction(&mut rng);
        let b = rand_fraction(&mut rng);
        let c = rand_fraction(&mut rng);
        // The quoted formulas, checked componentwise.
        let sum = a.add(&b).unwrap();
        let expected_num = a
            .numerator()
            .mul(b.denominator())
            .unwrap()
            .add(&b.numerator().mul(a.denominator()).unwrap())
            .unwrap();
        assert_eq!(sum.numerator(), &expected_num);
        assert_eq!(sum.denominator(), &a.denominator().mul(b.denominator()).unwrap());
        let prod = a.mul(&b).unwrap();
        assert_eq!(prod.numerator(), &a.numerator().mul(b.numerator()).unwrap());
        assert_eq!(prod.denominator(), &a.denominator().mul(b.denominator()).unwrap());
        // Cross-multiplication equalities on the triple.
        assert!(a.add(&b).unwrap().eq_frac(&b.add(&a).unwrap()).unwrap());
        assert!(a
            .add(&b)
            .unwrap()
            .add(&c)
            .unwrap()
            .eq_frac(&a.add(&b.add(&c).unwrap()).unwrap())
            .unwrap());
        assert!(a
            .mul(&b)
            .unwrap()
            .mul(&c)
            .unwrap()
            .eq_frac(&a.mul(&b.mul(&c).unwrap()).unwrap())
            .unwrap());
        assert!(a
            .mul(&b.add(&c).unwrap())
            .unwrap()
            .eq_frac(&a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap())
            .unwrap());
    }
    // Monomial localization in the monoid domain.
    let m: MonoidSpec = "M<2,3>".parse().unwrap();
    let z = Domain::integers();
    let f = MPoly::parse("2*x^3", &z, &m).unwrap();
    let g = MPoly::parse("4*x^2", &z, &m).unwrap();
    let terms = localize_at_zero(&f, &g).unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0].exponent, q(1, 1));
    assert_eq!(terms[0].coefficient, q(1, 2));
    finish("fraction formulas on 100 triples; (2X^3)/(4X^2) localizes to (1/2)X", start, 2000);
}

#[test]
fn message_encoding_roundtrip() {
    // Supporting sweep for the monoid-domain message encoding, exercised
    // at the same scale as the timed checks above.
    let mut rng = ChaCha8Rng::seed_from_u64(31337);
    for _ in 0..500 {
        let n = rng.random_range(1..=300u32);
        let len = rng.random_range(0..=15usize);
        let message: Vec<u32> = (0..len).map(|_| rng.random_range(0..n)).collect();
        let p = monoid_encode(&message, n).unwrap();
        assert_eq!(monoid_decode(&p, n).unwrap(), message);
    }
    let p = monoid_encode(&[2, 2, 5], 26).unwrap();
    let exponents: Vec<u64> = p
        .poly()
        .terms()
        .map(|(e, _)| e.to_integer().to_u64().unwrap())
        .collect();
    assert_eq!(exponents, vec![2, 28, 57]);
    println!("acceptance: 500 message encode/decode roundtrips: PASS");
}
