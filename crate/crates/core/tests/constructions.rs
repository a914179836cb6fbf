//! Pointwise checks of the constructions against independent evaluation.

use std::collections::HashSet;

use birat::constructions::{
    chord_third_point, fermat_lines, quadric_projection, quartic_two_planes_involution,
    random_through_coordinate_planes, sphere_stereographic,
};
use birat::geom::{point_on, random_point_on, Hypersurface, LinearSubspace, Point};
use birat::ratmap::{evaluate, Evaluation};
use birat::{FieldSpec, Polynomial, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn defined(e: Evaluation) -> Option<Point> {
    e.point().cloned()
}

#[test]
fn projecting_the_closed_sphere_from_its_pole_is_stereographic() {
    let q = FieldSpec::Q;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 1..=3 {
        let a: Vec<Scalar> = (0..n).map(|_| q.from_i64(rng.gen_range(1..6))).collect();
        let s = sphere_stereographic(n, &a, q).unwrap();
        let closure = s.source.projective_closure().unwrap();
        let pole = Point::affine(q, {
            let mut c = vec![q.zero(); n + 1];
            c[n] = q.from_i64(-1);
            c
        })
        .unwrap();
        let pole = Point::projective(q, pole.homogeneous_coords()).unwrap();
        // the plane x_n = 0, parametrized by (h, x_0, ..., x_(n-1))
        let plane = LinearSubspace::coordinate(q, n + 2, &(0..=n).collect::<Vec<_>>()).unwrap();
        let proj = quadric_projection(&closure, &pole, &plane).unwrap();
        assert!(proj.report.certified());

        let mut checked = 0;
        while checked < 30 {
            let y: Vec<Scalar> = (0..n)
                .map(|_| {
                    Scalar::Rational(BigRational::new(
                        BigInt::from(rng.gen_range(-20..=20)),
                        BigInt::from(rng.gen_range(1..=9)),
                    ))
                })
                .collect();
            let Some(x) = defined(evaluate(&s.inverse, &Point::affine(q, y.clone()).unwrap()).unwrap()) else {
                continue;
            };
            let xh = Point::projective(q, x.homogeneous_coords()).unwrap();
            assert!(point_on(&closure, &xh).unwrap());
            let image = defined(evaluate(&proj.forward, &xh).unwrap()).unwrap();
            let c = image.coords();
            let affine: Vec<Scalar> = c[1..].iter().map(|v| q.div(v, &c[0]).unwrap()).collect();
            assert_eq!(affine, y);
            checked += 1;
        }
    }
}

#[test]
fn quartic_map_is_an_involution_at_points() {
    let k = FieldSpec::prime(101).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let f = random_through_coordinate_planes(k, 4, 4, &mut rng).unwrap();
    let x = Hypersurface::projective(f).unwrap();
    let phi = quartic_two_planes_involution(&x).unwrap().map;
    let mut checked = 0;
    let mut attempts = 0;
    while checked < 100 {
        attempts += 1;
        assert!(attempts < 10_000);
        let p = random_point_on(&x, &mut rng, 50).unwrap().unwrap();
        let Some(q) = defined(evaluate(&phi, &p).unwrap()) else { continue };
        assert!(point_on(&x, &q).unwrap());
        let Some(back) = defined(evaluate(&phi, &q).unwrap()) else { continue };
        assert_eq!(back, p);
        checked += 1;
    }
}

#[test]
fn chord_map_is_an_involution_at_points() {
    let k = FieldSpec::prime(101).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let x = Hypersurface::projective(Polynomial::random_homogeneous(k, 3, 3, &mut rng)).unwrap();
    let p0 = random_point_on(&x, &mut rng, 100).unwrap().unwrap();
    let mut checked = 0;
    while checked < 50 {
        let p = random_point_on(&x, &mut rng, 100).unwrap().unwrap();
        if p == p0 {
            continue;
        }
        let Ok(r) = chord_third_point(&x, &p0, &p) else { continue };
        assert!(point_on(&x, &r).unwrap());
        if r == p0 {
            continue;
        }
        assert_eq!(chord_third_point(&x, &p0, &r).unwrap(), p);
        checked += 1;
    }
}

/// All points of a plane given by column generators, by enumeration.
fn plane_points(l: &LinearSubspace, field: FieldSpec) -> HashSet<Point> {
    let dim = l.dim() + 1;
    let values: Vec<Scalar> = field.elements().unwrap().collect();
    let mut out = HashSet::new();
    let mut idx = vec![0usize; dim];
    loop {
        let params: Vec<Scalar> = idx.iter().map(|&i| values[i].clone()).collect();
        if params.iter().any(|c| !field.is_zero(c)) {
            out.insert(l.point(&params).unwrap());
        }
        let mut j = 0;
        loop {
            if j == dim {
                return out;
            }
            idx[j] += 1;
            if idx[j] < values.len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

#[test]
fn fermat_lines_with_distinct_roots_are_disjoint() {
    let k = FieldSpec::prime(7).unwrap();
    let family = fermat_lines(3, 1, k).unwrap();
    assert!(!family.partial);
    let points: Vec<HashSet<Point>> = family.lines.iter().map(|l| plane_points(&l.subspace, k)).collect();
    let mut pairs = 0;
    for (i, a) in family.lines.iter().enumerate() {
        for (j, b) in family.lines.iter().enumerate().skip(i + 1) {
            if a.pairs != b.pairs || a.eps.iter().zip(&b.eps).any(|(x, y)| x == y) {
                continue;
            }
            pairs += 1;
            assert!(points[i].is_disjoint(&points[j]), "{:?} {:?}", a.eps, b.eps);
        }
    }
    // per pairing: 9 root choices, each with 4 componentwise distinct partners
    assert_eq!(pairs, 3 * 9 * 4 / 2);
}
