use super::*;
use crate::coeff::Rationals;
use proptest::prelude::*;

fn f(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn parse<R: Ring>(s: &str, r: &R) -> Poly<R> {
    parse_poly(s, r).unwrap()
}

fn e_triv_triv() -> Poly<PrimeField> {
    parse("x1^2*x2 + x2^2*x3 + x3^2*x1", &f(2))
}

#[test]
fn parse_examples() {
    let e = e_triv_triv();
    assert_eq!(e.len(), 3);
    assert_eq!(e.coeff(&Monomial::new(2, 1, 0)), f(2).one());
    assert_eq!(e.coeff(&Monomial::new(1, 0, 2)), f(2).one());
    assert!(parse("0", &f(3)).is_zero());
    assert!(parse("3*x1", &f(3)).is_zero());
    assert_eq!(parse("2x1x2", &f(5)), parse("2*x1*x2", &f(5)));
    assert_eq!(parse("x1*x1", &Integers), parse("x1^2", &Integers));
    assert_eq!(
        parse("1/2*x1 - 3/6*x2", &Rationals),
        parse("1/2 x1 - 1/2 x2", &Rationals)
    );
}

#[test]
fn parse_errors_carry_positions() {
    match parse_poly("x1 + y2", &f(3)) {
        Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 5),
        other => panic!("unexpected {other:?}"),
    }
    match parse_poly("x4", &f(3)) {
        Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 1),
        other => panic!("unexpected {other:?}"),
    }
    assert!(matches!(parse_poly("x1 +", &f(3)), Err(Error::Syntax { .. })));
    assert!(matches!(parse_poly("", &f(3)), Err(Error::Syntax { .. })));
    assert!(matches!(parse_poly("2 3", &f(3)), Err(Error::Syntax { .. })));
    assert!(matches!(parse_poly("1/0", &Rationals), Err(Error::Syntax { .. })));
    assert!(matches!(
        parse_poly("1/2*x1", &f(3)),
        Err(Error::NotRepresentable(_))
    ));
    assert!(matches!(
        parse_poly("1/2", &Integers),
        Err(Error::NotRepresentable(_))
    ));
}

#[test]
fn ring_examples() {
    let r2 = f(2);
    assert_eq!(
        &parse("x1 - x2", &r2) * &parse("x1 + x2", &r2),
        parse("x1^2 + x2^2", &r2)
    );
    let r3 = f(3);
    assert_eq!(parse("x1 - x2", &r3).pow(3), parse("x1^3 - x2^3", &r3));
    let tel = &(&parse("x1 - x2", &Integers) + &parse("x2 - x3", &Integers))
        + &parse("x3 - x1", &Integers);
    assert!(tel.is_zero());
}

#[test]
fn ring_mismatch_is_an_error() {
    let a = parse("x1", &f(2));
    let b = parse("x1", &f(3));
    assert!(matches!(a.checked_add(&b), Err(Error::RingMismatch(_, _))));
    assert!(matches!(a.checked_mul(&b), Err(Error::RingMismatch(_, _))));
}

#[test]
fn permutation_examples() {
    let r = Integers;
    let s12 = Perm::transposition(1, 2);
    assert_eq!(parse("x1^2*x2", &r).permute(&s12), parse("x2^2*x1", &r));
    assert_eq!(parse("x1*x2*x3", &r).permute(&s12), parse("x1*x2*x3", &r));
    // x1 -> x2 -> x3 -> x1 sends each summand of the cyclic sum to the next
    let s = Perm::cycle();
    assert_eq!(parse("x1^2*x2", &f(2)).permute(&s), parse("x2^2*x3", &f(2)));
    assert_eq!(parse("x2^2*x3", &f(2)).permute(&s), parse("x3^2*x1", &f(2)));
    assert_eq!(parse("x3^2*x1", &f(2)).permute(&s), parse("x1^2*x2", &f(2)));
    assert_eq!(e_triv_triv().permute(&s), e_triv_triv());
}

#[test]
fn perm_basics() {
    let s = Perm::cycle();
    assert_eq!((s.image(1), s.image(2), s.image(3)), (2, 3, 1));
    assert_eq!(s.compose(&s).compose(&s), Perm::IDENTITY);
    assert_eq!(Perm::from_images([2, 3, 1]).unwrap(), s);
    assert!(Perm::from_images([1, 1, 2]).is_err());
    assert_eq!(Perm::all().iter().filter(|p| p.is_odd()).count(), 3);
}

#[test]
fn valuation_examples() {
    let r = Integers;
    assert_eq!(parse("x1 - x2", &r).pow(3).valuation_along(1, 2), Some(3));
    assert_eq!(parse("x1^2 - x3^2", &f(2)).valuation_along(1, 3), Some(2));
    assert_eq!(parse("x1^2 - x3^2", &f(3)).valuation_along(1, 3), Some(1));
    assert_eq!(parse("x1 + x2", &r).valuation_along(1, 2), Some(0));
    assert_eq!(Poly::zero(&r).valuation_along(1, 2), None);
    assert_eq!(parse("x1 - x3", &f(3)).pow(9).valuation_along(3, 1), Some(9));
}

#[test]
fn reduction_examples() {
    let r3 = f(3);
    assert_eq!(reduce_mod_p(&parse("3*x1 + x2", &Integers), &r3), parse("x2", &r3));
    assert_eq!(reduce_mod_p(&parse("x1 - x2", &Integers), &r3), parse("x1 + 2*x2", &r3));
    assert!(reduce_mod_p(&Poly::zero(&Integers), &f(5)).is_zero());
}

#[test]
fn elementary_symmetric_examples() {
    let q = Rationals;
    assert_eq!(elementary_symmetric(&q, 1), parse("x1 + x2 + x3", &q));
    assert_eq!(elementary_symmetric(&q, 3), parse("x1*x2*x3", &q));
    let one = q.one();
    assert_eq!(
        elementary_symmetric(&q, 2).eval(&[one.clone(), one.clone(), one]),
        q.from_i64(3)
    );
    for i in 1..=3 {
        assert!(elementary_symmetric(&q, i).is_symmetric());
    }
}

#[test]
fn m_d_examples() {
    let r3 = f(3);
    assert_eq!(m_d_polynomial(0), Poly::one(&r3));
    assert_eq!(m_d_polynomial(1), parse("x1 + x2 + x3", &r3));
    assert_eq!(m_d_polynomial(2), &parse("x1 - x3", &r3) * &parse("x2 - x3", &r3));
}

#[test]
fn symmetry_examples() {
    assert!(elementary_symmetric(&f(3), 2).is_symmetric());
    assert!(!parse("x1 - x2", &f(3)).is_symmetric());
    assert!(!e_triv_triv().is_symmetric());
}

#[test]
fn format_examples() {
    let r3 = f(3);
    assert_eq!(format_poly(&Poly::zero(&r3)), "0");
    let e = parse("-x1^2*x2 - x1^2*x3 + x1*x2^2 + x1*x3^2", &r3);
    assert_eq!(format_poly(&e), "2*x1^2*x2 + 2*x1^2*x3 + x1*x2^2 + x1*x3^2");
    assert_eq!(format_poly(&Poly::var(&r3, 1)), "x1");
    assert_eq!(format_poly(&parse("-x1 + 2 - x2^2", &Integers)), "-x2^2 - x1 + 2");
    assert_eq!(format_poly(&parse("-1/2*x3 + 7/3", &Rationals)), "-1/2*x3 + 7/3");
}

#[test]
fn exact_division() {
    let r = Integers;
    let a = parse("x1 - x2", &r);
    let b = parse("x1^2 + 3*x2*x3 - x3", &r);
    assert_eq!((&a * &b).div_exact(&a), Some(b.clone()));
    assert_eq!((&a * &b).div_exact(&b), Some(a.clone()));
    assert_eq!(b.div_exact(&a), None);
    assert_eq!(parse("2*x1", &r).div_exact(&parse("4", &r)), None);
}

#[test]
fn m_d_identities_modulo_square() {
    let r3 = f(3);
    let e1 = elementary_symmetric(&r3, 1);
    for j in 0..=8u32 {
        let diff = &(&e1 * &m_d_polynomial(j)) - &m_d_polynomial(j + 1);
        assert!(diff.valuation_along(1, 2).map_or(true, |v| v >= 2), "e1*M_{j}");
        for jp in 0..=8u32 {
            let diff = &(&m_d_polynomial(j) * &m_d_polynomial(jp)) - &m_d_polynomial(j + jp);
            assert!(
                diff.valuation_along(1, 2).map_or(true, |v| v >= 2),
                "M_{j}*M_{jp}"
            );
        }
    }
}

#[test]
fn group_action_on_all_pairs() {
    let k = parse("x1^3*x2 + 2*x2*x3^2 - x1*x2*x3 + 5*x3^4 - x1", &Integers);
    for s in Perm::all() {
        for t in Perm::all() {
            assert_eq!(k.permute(&t).permute(&s), k.permute(&s.compose(&t)));
        }
    }
}

fn arb_poly_terms() -> impl Strategy<Value = Vec<((u32, u32, u32), i64)>> {
    prop::collection::vec(((0u32..4, 0u32..4, 0u32..4), -6i64..6), 0..8)
}

fn build<R: Ring>(r: &R, terms: &[((u32, u32, u32), i64)]) -> Poly<R> {
    Poly::from_terms(
        r,
        terms
            .iter()
            .map(|&((a, b, c), v)| (Monomial::new(a, b, c), r.from_i64(v))),
    )
}

proptest! {
    #[test]
    fn frobenius(a in arb_poly_terms(), b in arb_poly_terms(), p in prop::sample::select(vec![2u64, 3])) {
        let r = f(p);
        let (a, b) = (build(&r, &a), build(&r, &b));
        let p = p as u32;
        prop_assert_eq!((&a + &b).pow(p), &a.pow(p) + &b.pow(p));
    }

    #[test]
    fn valuation_is_additive(a in arb_poly_terms(), b in arb_poly_terms(), p in prop::sample::select(vec![2u64, 3, 5])) {
        let r = f(p);
        let (a, b) = (build(&r, &a), build(&r, &b));
        prop_assume!(!a.is_zero() && !b.is_zero());
        for (i, j) in [(1, 2), (1, 3), (2, 3), (3, 1)] {
            let prod = (&a * &b).valuation_along(i, j).unwrap();
            prop_assert_eq!(prod, a.valuation_along(i, j).unwrap() + b.valuation_along(i, j).unwrap());
        }
    }

    #[test]
    fn valuation_matches_trial_division(a in arb_poly_terms(), e in 0u32..5) {
        let r = Integers;
        let a = build(&r, &a);
        prop_assume!(!a.is_zero());
        let d = linear_difference(&r, 1, 3);
        let k = &a * &d.pow(e);
        let v = k.valuation_along(1, 3).unwrap();
        prop_assert!(k.div_exact(&d.pow(v)).is_some());
        prop_assert!(k.div_exact(&d.pow(v + 1)).is_none());
    }

    #[test]
    fn format_parse_roundtrip(a in arb_poly_terms(), p in prop::sample::select(vec![2u64, 3, 7])) {
        let r = f(p);
        let k = build(&r, &a);
        prop_assert_eq!(parse_poly(&format_poly(&k), &r).unwrap(), k.clone());
        let z = build(&Integers, &a);
        prop_assert_eq!(parse_poly(&format_poly(&z), &Integers).unwrap(), z.clone());
        let q = z.map_ring(&Rationals, |c| Rationals.from_int(c)).scale(&Rationals.parse_literal(&1u32.into(), Some(&6u32.into())).unwrap());
        prop_assert_eq!(parse_poly(&format_poly(&q), &Rationals).unwrap(), q);
    }
}
