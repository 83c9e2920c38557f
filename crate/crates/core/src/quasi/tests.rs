use super::*;
use crate::poly::{elementary_symmetric, linear_difference, parse_poly};
use proptest::prelude::*;

fn f(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn q(p: u64, twice_m: u32) -> QuasiOrder {
    QuasiOrder::new(p, twice_m).unwrap()
}

fn parse(s: &str, p: u64) -> Poly<PrimeField> {
    parse_poly(s, &f(p)).unwrap()
}

/// dim of the span of some polynomials of degree d.
fn span_dim(p: u64, d: u32, ps: &[Poly<PrimeField>]) -> usize {
    let mut e = Echelon::new(p, dense::monomial_count(d));
    for k in ps {
        e.insert(Form::from_poly(k, d).unwrap().coeffs);
    }
    e.rank()
}

/// The whole constraint system in one matrix, solved in one pass.
fn dim_single_pass(p: u64, twice_m: u32, d: u32) -> usize {
    let field = f(p);
    let mons = Monomial::of_degree(d);
    let mut rows = Vec::new();
    for (i, j) in [(1usize, 2usize), (1, 3), (2, 3)] {
        let k = 6 - i - j;
        for t in 1..=twice_m {
            for ek in 0..=d {
                let row: Vec<u64> = mons
                    .iter()
                    .map(|m| {
                        let (ei, ej) = (m.0[i - 1], m.0[j - 1]);
                        if m.0[k - 1] != ek {
                            return 0;
                        }
                        (field.binomial_mod(ej, t) + p - field.binomial_mod(ei, t)) % p
                    })
                    .collect();
                rows.push(row);
            }
        }
    }
    crate::linalg::kernel_mod_p(p, mons.len(), rows).len()
}

/// Counts every polynomial of degree d over F_p passing the definition.
fn dim_by_enumeration(p: u64, twice_m: u32, d: u32) -> usize {
    let field = f(p);
    let m = q(p, twice_m);
    let mons = Monomial::of_degree(d);
    let total = (p as usize).pow(mons.len() as u32);
    let mut count = 0usize;
    for code in 0..total {
        let mut c = code;
        let mut terms = Vec::new();
        for mon in &mons {
            terms.push((*mon, field.elem((c % p as usize) as u64)));
            c /= p as usize;
        }
        if is_m_quasi_invariant(&Poly::from_terms(&field, terms), &m).unwrap() {
            count += 1;
        }
    }
    let mut dim = 0;
    let mut pw = 1;
    while pw < count {
        pw *= p as usize;
        dim += 1;
    }
    assert_eq!(pw, count, "solution set is a subspace");
    dim
}

#[test]
fn order_construction() {
    assert!(QuasiOrder::new(3, 1).is_err());
    assert!(QuasiOrder::new(0, 3).is_err());
    assert!(QuasiOrder::new(2, 1).is_ok());
    assert!(QuasiOrder::new(4, 2).is_err());
    assert_eq!(q(2, 5).to_string(), "5/2");
    assert_eq!(q(3, 4).to_string(), "2");
    assert_eq!(q(3, 4).top_degree(), 15);
}

#[test]
fn quasi_order_examples() {
    assert_eq!(quasi_order(&parse("x1^2 + x2^2", 2)).unwrap(), Some(2));
    assert_eq!(quasi_order(&parse("x1 - x2", 3).pow(9)).unwrap(), Some(9));
    assert_eq!(quasi_order(&elementary_symmetric(&f(3), 2)).unwrap(), None);
    assert!(matches!(quasi_order(&Poly::zero(&f(3))), Err(Error::UndefinedOrder)));
}

#[test]
fn quasi_invariance_examples() {
    let k = parse("x1 - x2", 3).pow(9);
    assert!(is_m_quasi_invariant(&k, &q(3, 8)).unwrap());
    assert!(!is_m_quasi_invariant(&k, &q(3, 10)).unwrap());
    for m in 0..6 {
        for i in 1..=3 {
            let s = elementary_symmetric(&f(3), i).pow(3);
            assert!(is_m_quasi_invariant(&s, &q(3, 2 * m)).unwrap());
        }
    }
    assert!(is_m_quasi_invariant(&k, &q(2, 1)).is_err());
}

#[test]
fn dim_examples() {
    assert_eq!(dim_component(&q(3, 0), 3).unwrap(), 10);
    for (p, tm) in [(2, 0), (2, 3), (3, 2), (3, 10), (5, 4)] {
        assert_eq!(dim_component(&q(p, tm), 0).unwrap(), 1);
    }
    assert_eq!(dim_component(&q(3, 2), 3).unwrap(), 5);
    assert_eq!(dim_by_enumeration(3, 2, 3), 5);
}

#[test]
fn dim_agrees_with_enumeration() {
    for (p, tm, d) in [(2, 1, 2), (2, 1, 3), (2, 2, 3), (2, 2, 4), (2, 3, 4), (3, 2, 2), (3, 0, 2)] {
        assert_eq!(
            dim_component(&q(p, tm), d).unwrap(),
            dim_by_enumeration(p, tm, d),
            "p={p} 2m={tm} d={d}"
        );
    }
}

#[test]
fn dim_agrees_with_single_pass_solve() {
    for p in [2u64, 3, 5] {
        for tm in 0..=6u32 {
            if p != 2 && tm % 2 == 1 {
                continue;
            }
            for d in 0..=16 {
                assert_eq!(
                    dim_component(&q(p, tm), d).unwrap(),
                    dim_single_pass(p, tm, d),
                    "p={p} 2m={tm} d={d}"
                );
            }
        }
    }
}

#[test]
fn basis_examples() {
    let b = component_basis(&q(2, 0), 1).unwrap();
    assert_eq!(b.basis, vec![parse("x1", 2), parse("x2", 2), parse("x3", 2)]);

    let b = component_basis(&q(3, 2), 3).unwrap();
    let cube = parse("x1 - x2", 3).pow(3);
    assert_eq!(quasi_order(&cube).unwrap(), Some(3));
    let mut with = b.basis.clone();
    with.push(cube);
    assert_eq!(span_dim(3, 3, &with), b.dim());

    let b = component_basis(&q(3, 4), 2).unwrap();
    let sym = [elementary_symmetric(&f(3), 1).pow(2), elementary_symmetric(&f(3), 2)];
    assert_eq!(b.dim(), 2);
    let mut with = b.basis.clone();
    with.extend(sym);
    assert_eq!(span_dim(3, 2, &with), 2);
}

#[test]
fn basis_is_reduced_echelon() {
    let b = component_basis(&q(3, 2), 6).unwrap();
    let leads: Vec<Monomial> = b.basis.iter().map(|k| *k.leading_term().unwrap().0).collect();
    assert!(leads.windows(2).all(|w| w[0] > w[1]));
    for (i, k) in b.basis.iter().enumerate() {
        assert_eq!(*k.leading_term().unwrap().1, f(3).one());
        for (j, other) in b.basis.iter().enumerate() {
            if i != j {
                assert!(other.coeff(&leads[i]).is_zero());
            }
        }
    }
}

#[test]
fn eigen_examples() {
    let e = eigen_component(&q(3, 0), 1, (1, 2), -1).unwrap();
    assert_eq!(e.basis, vec![parse("x1 - x2", 3)]);
    let e = eigen_component(&q(3, 0), 1, (1, 2), 1).unwrap();
    assert_eq!(e.dim(), 2);
    let mut with = e.basis.clone();
    with.extend([parse("x3", 3), parse("x1 + x2", 3)]);
    assert_eq!(span_dim(3, 1, &with), 2);
    let e = eigen_component(&q(3, 2), 3, (1, 2), -1).unwrap();
    assert_eq!(e.basis, vec![parse("x1 - x2", 3).pow(3)]);
    assert!(matches!(
        eigen_component(&q(2, 0), 1, (1, 2), -1),
        Err(Error::Unsupported(_))
    ));
}

#[test]
fn module_span_examples() {
    let d12 = parse("x1 - x2", 3);
    assert_eq!(in_module_span(&Poly::one(&f(3)), &[d12.clone()]).unwrap(), None);
    let e1 = elementary_symmetric(&f(3), 1);
    let w = in_module_span(&(&e1 * &d12), &[d12.clone()]).unwrap().unwrap();
    assert_eq!(w, vec![e1]);
    assert!(matches!(
        in_module_span(&parse("x1 + x2^2", 3), &[d12]),
        Err(Error::NotHomogeneous)
    ));
}

#[test]
fn witnesses_reconstruct_the_target() {
    let field = f(3);
    let gens = vec![parse("x1 - x2", 3), parse("x1*x2 - x3^2", 3)];
    let target = &(&elementary_symmetric(&field, 2) * &gens[0])
        + &(&elementary_symmetric(&field, 1) * &gens[1]).scale(&field.elem(2));
    let w = in_module_span(&target, &gens).unwrap().unwrap();
    let rebuilt = &(&w[0] * &gens[0]) + &(&w[1] * &gens[1]);
    assert_eq!(rebuilt, target);
    assert!(w.iter().all(|p| p.is_symmetric()));
}

#[test]
fn relation_examples() {
    let field = f(3);
    let d12 = parse("x1 - x2", 3);
    let e1 = elementary_symmetric(&field, 1);
    let rel = find_relation(&[d12.clone(), &e1 * &d12], 3, 4).unwrap().unwrap();
    assert_eq!(rel.degree, 2);
    assert_eq!(rel.coefficients, vec![e1, Poly::one(&field).neg()]);

    let f_poly = &(&d12 * &parse("x1", 3)) * &parse("x2", 3);
    let q0 = vec![
        Poly::one(&field),
        d12.clone(),
        &d12 * &parse("x3", 3),
        parse("x1", 3),
        parse("x1*x2 + x1*x3", 3),
        f_poly,
    ];
    assert_eq!(find_relation(&q0, 3, 10).unwrap(), None);
    assert_eq!(find_relation(&[Poly::one(&field)], 3, 12).unwrap(), None);
}

#[test]
fn monotone_in_m_and_bounded_below() {
    for p in [2u64, 3] {
        let step = if p == 2 { 1 } else { 2 };
        for d in 0..=14 {
            let mut prev = usize::MAX;
            for tm in (0..=8).step_by(step) {
                let dim = dim_component(&q(p, tm), d).unwrap();
                assert!(dim <= prev);
                assert!(dim >= symmetric_dimension(d));
                prev = dim;
            }
        }
    }
}

#[test]
fn antiinvariant_elements_have_cyclic_sum_zero() {
    let s = Perm::cycle();
    for tm in [0u32, 2, 4, 6] {
        let m = q(3, tm);
        // the cyclic sum is anti-invariant, hence a multiple of Δ^(2m+1)
        for d in 0..m.top_degree() {
            for k in eigen_component(&m, d, (1, 2), -1).unwrap().basis {
                let sum = &(&k + &k.permute(&s)) + &k.permute(&s.compose(&s));
                assert!(sum.is_zero(), "2m={tm} d={d}");
                assert_cyclic_sum_is_sign_multiple_above(&k, &m);
                let v = k.valuation_along(1, 2).unwrap();
                assert!(v >= m.r());
                let quotient = k.div_exact(&linear_difference(&f(3), 1, 2).pow(m.r())).unwrap();
                assert_eq!(quotient.permute(&Perm::transposition(1, 2)), quotient);
            }
        }
    }
}

fn assert_cyclic_sum_is_sign_multiple_above(k: &Poly<PrimeField>, m: &QuasiOrder) {
    let s = Perm::cycle();
    let sum = &(&*k + &k.permute(&s)) + &k.permute(&s.compose(&s));
    assert!(sum.is_zero() || k.degree().unwrap() >= m.top_degree());
}

#[test]
fn cyclic_sum_above_top_degree_is_vandermonde_multiple() {
    let m = q(3, 0);
    let vdm = crate::poly::vandermonde(&f(3));
    let s = Perm::cycle();
    let mut nonzero = 0;
    for k in eigen_component(&m, 3, (1, 2), -1).unwrap().basis {
        let sum = &(&k + &k.permute(&s)) + &k.permute(&s.compose(&s));
        if !sum.is_zero() {
            nonzero += 1;
            assert!(sum.div_exact(&vdm).is_some());
        }
    }
    assert!(nonzero > 0);
}

#[test]
fn basis_elements_are_quasi_invariant() {
    for (p, tm) in [(2u64, 3u32), (3, 4), (5, 2)] {
        let m = q(p, tm);
        for d in 0..=12 {
            for k in component_basis(&m, d).unwrap().basis {
                assert_eq!(k.homogeneous_degree(), Some(d));
                assert!(is_m_quasi_invariant(&k, &m).unwrap());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn products_stay_quasi_invariant(
        p in prop::sample::select(vec![2u64, 3]),
        half in 0u32..4,
        d1 in 0u32..9,
        d2 in 0u32..9,
        c1 in prop::collection::vec(0u64..3, 40),
        c2 in prop::collection::vec(0u64..3, 40),
    ) {
        let tm = 2 * half;
        let m = q(p, tm);
        let field = f(p);
        let combo = |d: u32, cs: &[u64]| {
            component_basis(&m, d).unwrap().basis.iter().zip(cs)
                .fold(Poly::zero(&field), |acc, (b, &c)| &acc + &b.scale(&field.elem(c)))
        };
        let (k, l) = (combo(d1, &c1), combo(d2, &c2));
        prop_assume!(!k.is_zero() && !l.is_zero());
        let kl = &k * &l;
        let ord = |x: &Poly<PrimeField>| quasi_order(x).unwrap().unwrap_or(u32::MAX);
        prop_assert!(ord(&kl) >= ord(&k).min(ord(&l)));
        prop_assert!(is_m_quasi_invariant(&kl, &m).unwrap());
    }
}
