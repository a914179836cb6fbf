//! Property tests for the algebraic invariants of the library.

use birat::constructions::{decompose_two_planes, random_through_coordinate_planes, sphere_stereographic};
use birat::geom::{point_on, tangent_hyperplane, Chart, Hypersurface, Point};
use birat::invariants::{
    affine_volume_chart, classify_type, evaluate_volume_form, not_rational_by_degree, segre_criterion_i64,
    volume_form_dim, TypeClass,
};
use birat::poly::{gcd, parse_polynomial};
use birat::ratmap::{compose, evaluate, verify_birational, Evaluation, RationalFunction, RationalMap};
use birat::{Error, FieldSpec, Polynomial, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn f101() -> FieldSpec {
    FieldSpec::prime(101).unwrap()
}

fn field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![Just(FieldSpec::Q), Just(f101()), Just(FieldSpec::prime(5).unwrap())]
}

fn scalar(field: FieldSpec) -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=5).prop_map(move |(u, v)| match field {
        FieldSpec::Q => Scalar::Rational(BigRational::new(BigInt::from(u), BigInt::from(v))),
        _ => field.from_i64(u * 7 + v),
    })
}

fn poly(field: FieldSpec, nvars: usize, max_terms: usize, max_exp: u32) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, nvars), scalar(field)), 0..=max_terms)
        .prop_map(move |terms| Polynomial::from_terms(field, nvars, terms).unwrap())
}

fn nonzero_poly(field: FieldSpec, nvars: usize, max_terms: usize, max_exp: u32) -> impl Strategy<Value = Polynomial> {
    poly(field, nvars, max_terms, max_exp).prop_filter("nonzero", |p| !p.is_zero())
}

fn triple(max_terms: usize) -> impl Strategy<Value = (Polynomial, Polynomial, Polynomial)> {
    (field(), 1usize..=6).prop_flat_map(move |(f, n)| {
        (poly(f, n, max_terms, 3), poly(f, n, max_terms, 3), poly(f, n, max_terms, 3))
    })
}

fn pair(max_terms: usize) -> impl Strategy<Value = (Polynomial, Polynomial)> {
    (field(), 1usize..=4).prop_flat_map(move |(f, n)| (poly(f, n, max_terms, 3), nonzero_poly(f, n, max_terms, 3)))
}

fn homogeneous(f: &Polynomial) -> Polynomial {
    f.homogeneous_component(f.degree().unwrap_or(0))
}

proptest! {
    #[test]
    fn addition_is_a_group((a, b, c) in triple(20)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a + &Polynomial::zero(a.field(), a.nvars()), a.clone());
    }

    #[test]
    fn multiplication_is_associative_and_distributive((a, b, c) in triple(20)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &Polynomial::one(a.field(), a.nvars()), a.clone());
    }

    #[test]
    fn euler_identity(f in (field(), 1usize..=5).prop_flat_map(|(k, n)| poly(k, n, 12, 4))) {
        let g = homogeneous(&f);
        let field = g.field();
        let lhs = (0..g.nvars()).fold(Polynomial::zero(field, g.nvars()), |acc, i| {
            &acc + &(&Polynomial::var(field, g.nvars(), i) * &g.partial_derivative(i).unwrap())
        });
        let d = g.degree().unwrap_or(0) as i64;
        prop_assert_eq!(lhs, g.scale(&field.from_i64(d)));
    }

    #[test]
    fn division_reconstructs((f, h) in pair(10)) {
        let (q, r) = f.divide(&h).unwrap();
        prop_assert_eq!(&(&q * &h) + &r, f);
        let (lead, _) = h.leading_term().unwrap();
        for (m, _) in r.terms() {
            prop_assert!(!lead.divides(m));
        }
    }

    #[test]
    fn products_are_divisible((f, h) in pair(8)) {
        let fh = &f * &h;
        prop_assert!(fh.is_divisible_by(&h).unwrap());
        prop_assert_eq!(fh.exact_div(&h).unwrap(), Some(f));
    }

    #[test]
    fn homogenize_then_dehomogenize(
        (f, slot) in (field(), 1usize..=5).prop_flat_map(|(k, n)| (poly(k, n, 12, 3), 0..=n))
    ) {
        let h = f.homogenize(slot).unwrap();
        prop_assert!(h.is_homogeneous());
        prop_assert_eq!(h.dehomogenize(slot).unwrap(), f);
    }

    #[test]
    fn gcd_divides_both(
        (f, g, h) in (field(), 1usize..=3).prop_flat_map(|(k, n)| {
            (poly(k, n, 4, 2), poly(k, n, 4, 2), nonzero_poly(k, n, 3, 2))
        })
    ) {
        let a = &f * &h;
        let b = &g * &h;
        prop_assume!(!a.is_zero() || !b.is_zero());
        let d = gcd(&a, &b).unwrap();
        if !d.is_zero() {
            prop_assert!(a.is_divisible_by(&d).unwrap());
            prop_assert!(b.is_divisible_by(&d).unwrap());
            prop_assert!(d.is_divisible_by(&h).unwrap());
        }
    }

    #[test]
    fn segre_verdict_is_permutation_invariant(
        (a, shuffled) in prop::array::uniform4(prop_oneof![-30i64..=-1, 1i64..=30])
            .prop_flat_map(|a| (Just(a), Just(a.to_vec()).prop_shuffle()))
    ) {
        let b = [shuffled[0], shuffled[1], shuffled[2], shuffled[3]];
        prop_assert_eq!(segre_criterion_i64(a).unwrap(), segre_criterion_i64(b).unwrap());
    }

    #[test]
    fn type_classes_partition(d in 1u32..60, n in 1u32..60) {
        let class = classify_type(d, n);
        let expected = match d.cmp(&(n + 2)) {
            std::cmp::Ordering::Less => TypeClass::Fano,
            std::cmp::Ordering::Equal => TypeClass::CalabiYau,
            std::cmp::Ordering::Greater => TypeClass::GeneralType,
        };
        prop_assert_eq!(class, expected);
        prop_assert_eq!(volume_form_dim(d, n).is_zero(), class == TypeClass::Fano);
        prop_assert_eq!(not_rational_by_degree(d, n), class != TypeClass::Fano);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn parse_inverts_display(f in (field(), 1usize..=6).prop_flat_map(|(k, n)| poly(k, n, 20, 4))) {
        let text = f.to_string();
        prop_assert_eq!(parse_polynomial(&text, f.nvars(), f.field()).unwrap(), f);
    }
}

/// A random projective form over `F_101` forced to vanish at `p`.
fn form_through(seed: u64, nvars: usize, d: u32, p: &[Scalar]) -> Option<Polynomial> {
    let k = f101();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = Polynomial::random_homogeneous(k, nvars, d, &mut rng);
    let i = p.iter().position(|c| !k.is_zero(c))?;
    let c = k.div(&g.eval(p).unwrap(), &k.pow(&p[i], d as u64)).unwrap();
    let f = &g - &Polynomial::var(k, nvars, i).pow(d).scale(&c);
    (!f.is_zero()).then_some(f)
}

fn f101_vec(len: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec((0i64..101).prop_map(|v| f101().from_i64(v)), len)
}

proptest! {
    #[test]
    fn membership_ignores_scaling(
        seed in any::<u64>(),
        (p, lambda, d) in (2usize..=5).prop_flat_map(|n| (f101_vec(n), 1i64..101, 1u32..=4)),
    ) {
        let k = f101();
        prop_assume!(p.iter().any(|c| !k.is_zero(c)));
        let f = form_through(seed, p.len(), d, &p).unwrap();
        let x = Hypersurface::projective(f).unwrap();
        let lam = k.from_i64(lambda);
        let scaled: Vec<Scalar> = p.iter().map(|c| k.mul(c, &lam)).collect();
        let pt = Point::projective(k, p.clone()).unwrap();
        prop_assert!(point_on(&x, &pt).unwrap());
        prop_assert!(point_on(&x, &Point::projective(k, scaled).unwrap()).unwrap());

        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let g = Hypersurface::projective(Polynomial::random_homogeneous(k, p.len(), d, &mut rng)).unwrap();
        let scaled: Vec<Scalar> = p.iter().map(|c| k.mul(c, &lam)).collect();
        prop_assert_eq!(
            point_on(&g, &pt).unwrap(),
            point_on(&g, &Point::projective(k, scaled).unwrap()).unwrap()
        );
    }

    #[test]
    fn tangent_hyperplane_contains_its_point(
        seed in any::<u64>(),
        (p, d) in (2usize..=5).prop_flat_map(|n| (f101_vec(n), 1u32..=4)),
    ) {
        let k = f101();
        prop_assume!(p.iter().any(|c| !k.is_zero(c)));
        let x = Hypersurface::projective(form_through(seed, p.len(), d, &p).unwrap()).unwrap();
        let pt = Point::projective(k, p.clone()).unwrap();
        match tangent_hyperplane(&x, &pt) {
            Ok(t) => prop_assert!(k.is_zero(&t.eval(&p).unwrap())),
            Err(Error::SingularPoint) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn canonical_form_is_idempotent_and_scale_free(
        seed in any::<u64>(),
        n in 2usize..=4,
        d in 1u32..=3,
        e in 0u32..=2,
        lambda in 1i64..101,
    ) {
        let k = f101();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let polys: Vec<Polynomial> = (0..n).map(|_| Polynomial::random_homogeneous(k, n, d, &mut rng)).collect();
        prop_assume!(polys.iter().any(|p| !p.is_zero()));
        let psi = Polynomial::random_homogeneous(k, n, e, &mut rng).scale(&k.from_i64(lambda));
        prop_assume!(!psi.is_zero());
        let m = RationalMap::from_polynomials(Chart::Projective, Chart::Projective, polys.clone()).unwrap();
        let again = RationalMap::new(Chart::Projective, Chart::Projective, m.coords().to_vec()).unwrap();
        prop_assert_eq!(&again, &m);
        let scaled: Vec<Polynomial> = polys.iter().map(|p| p * &psi).collect();
        let ms = RationalMap::from_polynomials(Chart::Projective, Chart::Projective, scaled).unwrap();
        prop_assert_eq!(ms, m);
    }

    #[test]
    fn affine_maps_normalize_to_the_same_quotients(seed in any::<u64>(), lambda in 1i64..101) {
        let k = f101();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let den = Polynomial::random_homogeneous(k, 3, 2, &mut rng).dehomogenize(0).unwrap();
        prop_assume!(!den.is_zero());
        let nums: Vec<Polynomial> = (0..2)
            .map(|_| Polynomial::random_homogeneous(k, 3, 2, &mut rng).dehomogenize(0).unwrap())
            .collect();
        let c = k.from_i64(lambda);
        let plain: Vec<RationalFunction> =
            nums.iter().map(|n| RationalFunction::new(n.clone(), den.clone()).unwrap()).collect();
        let scaled: Vec<RationalFunction> = nums
            .iter()
            .map(|n| RationalFunction::new(n.scale(&c), den.scale(&c)).unwrap())
            .collect();
        let a = RationalMap::new(Chart::Affine, Chart::Affine, plain).unwrap();
        let b = RationalMap::new(Chart::Affine, Chart::Affine, scaled).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(RationalMap::new(Chart::Affine, Chart::Affine, a.coords().to_vec()).unwrap(), a);
    }

    #[test]
    fn composition_is_associative(seed in any::<u64>(), d in 1u32..=2) {
        let k = f101();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut random_map = || {
            let polys = (0..3).map(|_| Polynomial::random_homogeneous(k, 3, d, &mut rng)).collect();
            RationalMap::from_polynomials(Chart::Projective, Chart::Projective, polys)
        };
        let (a, b, c) = (random_map(), random_map(), random_map());
        let (Ok(a), Ok(b), Ok(c)) = (a, b, c) else { return Ok(()) };
        let left = compose(&a, &b).and_then(|ab| compose(&ab, &c));
        let right = compose(&b, &c).and_then(|bc| compose(&a, &bc));
        match (left, right) {
            (Ok(l), Ok(r)) => prop_assert_eq!(l, r),
            (l, r) => prop_assert_eq!(l.is_err(), r.is_err()),
        }
    }

    #[test]
    fn verification_is_symmetric(
        (a, b) in (1usize..=3).prop_flat_map(|n| {
            let w = prop::collection::vec(prop_oneof![-5i64..=-1, 1i64..=5], n);
            (w.clone(), w, any::<bool>()).prop_map(|(a, b, same)| if same { (a.clone(), a) } else { (a, b) })
        })
    ) {
        let q = FieldSpec::Q;
        let to_q = |v: &[i64]| -> Vec<Scalar> { v.iter().map(|&c| q.from_i64(c)).collect() };
        let s = sphere_stereographic(a.len(), &to_q(&a), q).unwrap();
        let t = sphere_stereographic(b.len(), &to_q(&b), q).unwrap();
        let fwd = verify_birational(&s.forward, &t.inverse, &s.source, &s.target).unwrap();
        let back = verify_birational(&t.inverse, &s.forward, &s.target, &s.source).unwrap();
        prop_assert_eq!(fwd.certified(), back.certified());
        prop_assert_eq!(fwd.certified(), a == b);
    }

    #[test]
    fn evaluation_lands_on_the_quadric(
        (w, y) in (1usize..=3).prop_flat_map(|n| (prop::collection::vec(1i64..101, n), f101_vec(n)))
    ) {
        let k = f101();
        let a: Vec<Scalar> = w.iter().map(|&c| k.from_i64(c)).collect();
        let s = sphere_stereographic(a.len(), &a, k).unwrap();
        if let Evaluation::Defined(p) = evaluate(&s.inverse, &Point::affine(k, y).unwrap()).unwrap() {
            prop_assert!(point_on(&s.source, &p).unwrap());
            if let Evaluation::Defined(back) = evaluate(&s.forward, &p).unwrap() {
                prop_assert!(point_on(&s.target, &back).unwrap());
            }
        }
    }

    #[test]
    fn two_plane_decomposition_reconstructs(seed in any::<u64>(), n in 1usize..=3, d in 2u32..=4) {
        let k = f101();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_through_coordinate_planes(k, 2 * n + 2, d, &mut rng).unwrap();
        let table = decompose_two_planes(&f, n).unwrap();
        prop_assert_eq!(table.reconstruct(k), f);
        for (&(i, j), l) in &table.entries {
            prop_assert!(i <= n && j > n);
            prop_assert_eq!(l.degree(), Some(d - 2));
        }
    }

    #[test]
    fn volume_form_alternates_and_agrees_across_charts(
        seed in any::<u64>(),
        (p, d) in (3usize..=5).prop_flat_map(|m| (f101_vec(m), 1u32..=3)),
    ) {
        let k = f101();
        let m = p.len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = Polynomial::random_homogeneous(k, m + 1, d, &mut rng).dehomogenize(0).unwrap();
        let h = &g - &Polynomial::constant(k, m, g.eval(&p).unwrap());
        let grad: Vec<Scalar> = h.gradient().iter().map(|q| q.eval(&p).unwrap()).collect();
        let charts: Vec<usize> = (0..m).filter(|&i| !k.is_zero(&grad[i])).collect();
        prop_assume!(charts.len() >= 2);
        let i = charts[0];
        let frame: Vec<Vec<Scalar>> = (0..m - 1)
            .map(|_| {
                let mut v: Vec<Scalar> = (0..m).map(|_| k.random(&mut rng)).collect();
                let rest = (0..m).filter(|&j| j != i).fold(k.zero(), |acc, j| k.add(&acc, &k.mul(&grad[j], &v[j])));
                v[i] = k.neg(&k.div(&rest, &grad[i]).unwrap());
                v
            })
            .collect();
        let pt = Point::affine(k, p.clone()).unwrap();
        let chart = affine_volume_chart(&h, i).unwrap();
        let value = match evaluate_volume_form(&h, &chart, &pt, &frame) {
            Ok(v) => v,
            Err(Error::InvalidFrame(_)) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        let mut swapped = frame.clone();
        swapped.swap(0, 1);
        prop_assert_eq!(evaluate_volume_form(&h, &chart, &pt, &swapped).unwrap(), k.neg(&value));
        let other = affine_volume_chart(&h, charts[1]).unwrap();
        prop_assert_eq!(evaluate_volume_form(&h, &other, &pt, &frame).unwrap(), value);
    }
}
