mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use jetcrys::derham::complexes::{graded_derham_level, linearized_derham_level};
use jetcrys::derham::forms::{wedge_basis, Form};
use jetcrys::diffop::{invert, DiffOperator};
use jetcrys::exact::complex::ChainComplex;
use jetcrys::exact::field::Field;
use jetcrys::exact::matrix::Matrix;
use jetcrys::exact::multi::{Multi, MultiBasis};
use jetcrys::exact::parse::parse_poly;
use jetcrys::exact::poly::Poly;
use jetcrys::exact::polymatrix::PolyMatrix;
use jetcrys::io::Document;
use jetcrys::jet::{JetAlgebra, JetElement, JetMode, JetTensor};
use jetcrys::strat::{extract_connection, taylor_stratification, verify_stratification, Connection};

use common::{q, random_operator, random_poly_matrix, random_section};

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::Prime(2)), Just(Field::Prime(3)), Just(Field::Prime(5))]
}

fn mode() -> impl Strategy<Value = JetMode> {
    prop_oneof![Just(JetMode::Plain), Just(JetMode::Divided)]
}

fn poly(f: Field, d: usize, deg: u32) -> impl Strategy<Value = Poly> {
    let basis = MultiBasis::up_to(d, deg);
    prop::collection::vec(-4i64..=4, basis.len())
        .prop_map(move |cs| Poly::from_terms(f, d, basis.iter().cloned().zip(cs.into_iter().map(|c| f.from_i64(c)))))
}

fn multi(d: usize, max: u32) -> impl Strategy<Value = Multi> {
    prop::collection::vec(0..=max, d).prop_map(Multi)
}

/// A field, a dimension and two polynomials over it.
fn poly_pair() -> impl Strategy<Value = (Field, usize, Poly, Poly)> {
    (field(), 1usize..=3).prop_flat_map(|(f, d)| (Just(f), Just(d), poly(f, d, 3), poly(f, d, 3)))
}

fn jet(alg: JetAlgebra, f: Field, d: usize) -> impl Strategy<Value = JetElement> {
    let basis = alg.basis();
    prop::collection::vec(poly(f, d, 2), basis.len()).prop_map(move |cs| {
        let mut v = alg.zero();
        for (a, c) in basis.iter().zip(cs) {
            v.add_term(a.clone(), c);
        }
        v
    })
}

/// A lower times an upper unitriangular matrix.
fn random_invertible(rng: &mut ChaCha8Rng, field: Field, n: usize) -> Matrix {
    let mut l = Matrix::identity(field, n);
    let mut u = Matrix::identity(field, n);
    for i in 0..n {
        for j in 0..i {
            l.set(i, j, field.from_i64(rng.gen_range(-2..=2)));
            u.set(j, i, field.from_i64(rng.gen_range(-2..=2)));
        }
    }
    &l * &u
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hasse_composition((f, d) in (field(), 1usize..=3), seed in any::<u64>(), a in multi(3, 2), b in multi(3, 2)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = common::random_poly(&mut rng, f, d, 5);
        let (a, b) = (Multi(a.0[..d].to_vec()), Multi(b.0[..d].to_vec()));
        let lhs = p.hasse(&b).unwrap().hasse(&a).unwrap();
        let ab = a.add(&b);
        prop_assert_eq!(lhs, p.hasse(&ab).unwrap().scale(&ab.binomial(&a, f)));
    }

    #[test]
    fn hasse_leibniz((f, d, p, g) in poly_pair(), a in multi(3, 2)) {
        let a = Multi(a.0[..d].to_vec());
        let mut rhs = Poly::zero(f, d);
        for b in a.divisors() {
            let c = a.checked_sub(&b).unwrap();
            rhs = &rhs + &(&p.hasse(&b).unwrap() * &g.hasse(&c).unwrap());
        }
        prop_assert_eq!((&p * &g).hasse(&a).unwrap(), rhs);
    }

    #[test]
    fn taylor_is_multiplicative((f, d, p, g) in poly_pair(), m in 0u32..=3, mode in mode()) {
        let alg = JetAlgebra::new(d, m, f, mode);
        let lhs = alg.taylor(&(&p * &g));
        prop_assert_eq!(lhs, alg.taylor(&p).mul(&alg.taylor(&g)).unwrap());
        prop_assert_eq!(alg.taylor(&p).counit(), p);
    }

    #[test]
    fn basis_convert_is_a_ring_map((d, p, g) in (1usize..=2).prop_flat_map(|d| (Just(d), poly(q(), d, 3), poly(q(), d, 3))), m in 0u32..=4) {
        let plain = JetAlgebra::new(d, m, q(), JetMode::Plain);
        let div = JetAlgebra::new(d, m, q(), JetMode::Divided);
        let (a, b) = (plain.taylor(&p), plain.taylor(&g));
        prop_assert_eq!(a.basis_convert(JetMode::Divided).unwrap(), div.taylor(&p));
        let prod = a.mul(&b).unwrap().basis_convert(JetMode::Divided).unwrap();
        let conv = a.basis_convert(JetMode::Divided).unwrap().mul(&b.basis_convert(JetMode::Divided).unwrap()).unwrap();
        prop_assert_eq!(&prod, &conv);
        prop_assert_eq!(prod.basis_convert(JetMode::Plain).unwrap(), a.mul(&b).unwrap());
    }

    #[test]
    fn comultiplication_coassociative_and_counital(
        (f, d, v, p, r) in (field(), 1usize..=2, mode(), 2u32..=4).prop_flat_map(|(f, d, mode, m)| {
            let alg = JetAlgebra::new(d, m, f, mode);
            (Just(f), Just(d), jet(alg, f, d), 0..=m, 0..=m)
        })
    ) {
        let m = v.algebra().basis().iter().map(Multi::degree).max().unwrap();
        let (p, r) = (p.min(m), r.min(m - p.min(m)));
        // (delta (x) 1) delta = (1 (x) delta) delta as maps P^m -> P^{m-p-r} (x) P^p (x) P^r
        let left = v.comult(r).unwrap().comult_factor(0, p).unwrap();
        let right = v.comult(p + r).unwrap().comult_factor(1, r).unwrap();
        prop_assert_eq!(left, right);
        // counit on either side recovers v
        let split = v.comult(p).unwrap();
        let back = JetTensor::from_jet(&v.truncate(m - p).unwrap());
        prop_assert_eq!(split.counit_factor(1), back);
        let _ = (f, d);
    }

    #[test]
    fn wedge_graded_commutative_and_leibniz(seed in any::<u64>(), d in 1usize..=4, p in 0usize..=2, r in 0usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let form = |rng: &mut ChaCha8Rng, deg: usize| {
            let mut w = Form::zero(q(), d, deg);
            for idx in wedge_basis(d, deg) {
                w = w.add(&Form::monomial(common::random_poly(rng, q(), d, 2), &idx)).unwrap();
            }
            w
        };
        let (a, b) = (form(&mut rng, p.min(d)), form(&mut rng, r.min(d)));
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        let sign = (a.degree() * b.degree()) % 2 == 1;
        prop_assert_eq!(&ab, &if sign { ba.neg() } else { ba });
        prop_assert!(a.exterior_derivative().exterior_derivative().is_zero());
        let db = b.exterior_derivative();
        let second = a.wedge(&db).unwrap();
        let second = if a.degree() % 2 == 1 { second.neg() } else { second };
        let rhs = a.exterior_derivative().wedge(&b).unwrap().add(&second).unwrap();
        prop_assert_eq!(ab.exterior_derivative(), rhs);
    }

    #[test]
    fn homology_is_basis_invariant(seed in any::<u64>(), d in 1usize..=2, n in 0u32..=3, f in field(), mode in mode()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = linearized_derham_level(n, d, f, mode).unwrap();
        let ps: Vec<Matrix> = c.ranks().iter().map(|&r| random_invertible(&mut rng, f, r)).collect();
        let diffs = c
            .differentials()
            .iter()
            .enumerate()
            .map(|(i, m)| &(&ps[i + 1] * m) * &invert(&ps[i]).unwrap())
            .collect();
        let conj = ChainComplex::new(f, c.ranks().to_vec(), diffs).unwrap();
        prop_assert_eq!(conj.homology_ranks().unwrap(), c.homology_ranks().unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn compose_agrees_with_application(seed in any::<u64>(), d in 1usize..=2, o1 in 0u32..=2, o2 in 0u32..=2, mode in mode()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d1 = random_operator(&mut rng, q(), mode, d, 2, 1, o1);
        let d2 = random_operator(&mut rng, q(), mode, d, 1, 2, o2);
        let comp = d2.compose(&d1).unwrap();
        prop_assert!(comp.order() <= o1 + o2);
        let s = random_section(&mut rng, q(), d, 2);
        prop_assert_eq!(comp.apply(&s).unwrap(), d2.apply(&d1.apply(&s).unwrap()).unwrap());
    }

    #[test]
    fn linearization_is_functorial(seed in any::<u64>(), d in 1usize..=2, o1 in 0u32..=2, o2 in 0u32..=1, n in 0u32..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d1 = random_operator(&mut rng, q(), JetMode::Plain, d, 1, 2, o1);
        let d2 = random_operator(&mut rng, q(), JetMode::Plain, d, 2, 1, o2);
        let comp = d2.compose(&d1).unwrap().with_order(o1 + o2).unwrap();
        let lhs = comp.linearize(n);
        prop_assert_eq!(lhs, d2.linearize(n).checked_mul(&d1.linearize(n + o2)).unwrap());
    }

    #[test]
    fn linear_change_is_an_action(seed in any::<u64>(), d in 1usize..=2, order in 0u32..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let op = random_operator(&mut rng, q(), JetMode::Plain, d, 1, 1, order);
        let other = random_operator(&mut rng, q(), JetMode::Plain, d, 1, 1, 1);
        let a = random_invertible(&mut rng, q(), d);
        let b = random_invertible(&mut rng, q(), d);
        let there = op.linear_change(&a).unwrap();
        prop_assert_eq!(there.linear_change(&invert(&a).unwrap()).unwrap().with_order(order).unwrap(), op.clone());
        // in y = B A x, first change by A then by B
        let twice = there.linear_change(&b).unwrap();
        prop_assert_eq!(twice, op.linear_change(&(&b * &a)).unwrap());
        // changing coordinates commutes with composition
        let lhs = other.compose(&op).unwrap().linear_change(&a).unwrap();
        let rhs = other.linear_change(&a).unwrap().compose(&there).unwrap();
        let order = lhs.order();
        prop_assert_eq!(lhs, rhs.with_order(order).unwrap());
    }

    #[test]
    fn one_dimensional_connections_stratify(seed in any::<u64>(), mode in mode(), top in 1u32..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = Connection::new(q(), 1, 2, vec![random_poly_matrix(&mut rng, q(), 1, 2, 2, 1)]).unwrap();
        let m = taylor_stratification(&c, top, mode).unwrap();
        prop_assert!(verify_stratification(&m).unwrap().pass);
        prop_assert_eq!(extract_connection(&m).unwrap(), c);
        let back = jetcrys::strat::StratModule::from_json(&m.to_json()).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn documents_round_trip(seed in any::<u64>(), mode in mode(), f in field(), d in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let op = random_operator(&mut rng, f, mode, d, 2, 1, 2);
        prop_assert_eq!(DiffOperator::from_json(&op.to_json()).unwrap(), op.clone());
        let lin = op.linearize(1);
        prop_assert_eq!(PolyMatrix::from_json(&lin.to_json()).unwrap(), lin);
        let c = linearized_derham_level(2, d, f, mode).unwrap();
        prop_assert_eq!(ChainComplex::from_json(&c.to_json()).unwrap(), c);
        let alg = JetAlgebra::new(d, 2, f, mode);
        let v = alg.taylor(&common::random_poly(&mut rng, f, d, 3));
        prop_assert_eq!(JetElement::from_json(&v.to_json()).unwrap(), v);
    }

    #[test]
    fn print_then_parse((f, d, p, _g) in poly_pair()) {
        prop_assert_eq!(parse_poly(&p.to_string(), f, d).unwrap(), p);
    }
}

#[test]
fn exterior_derivative_of_a_product() {
    let f = parse_poly("x1*x2", q(), 2).unwrap();
    let df = Form::function(f).exterior_derivative();
    let expected = Form::monomial(parse_poly("x2", q(), 2).unwrap(), &[0])
        .add(&Form::monomial(parse_poly("x1", q(), 2).unwrap(), &[1]))
        .unwrap();
    assert_eq!(df, expected);
}

#[test]
fn graded_homotopy_value() {
    // s(xi_1 (x) dx_2) = 1/2 xi_1 xi_2 at weight 2 over the plane
    let g = graded_derham_level(2, 2, q(), JetMode::Plain).unwrap();
    let s = &g.complex.homotopy().unwrap()[1];
    let src = jetcrys::jet::GradedJetPiece::new(2, 1, 1);
    let dst = jetcrys::jet::GradedJetPiece::new(2, 2, 0);
    let col = src.index(&Multi(vec![1, 0]), &[1]).unwrap();
    let row = dst.index(&Multi(vec![1, 1]), &[]).unwrap();
    for i in 0..dst.rank() {
        let expected = if i == row { q().parse_scalar("1/2").unwrap() } else { q().zero() };
        assert_eq!(s.get(i, col), &expected);
    }
}

#[test]
fn taylor_of_x_squared_in_characteristic_two() {
    // plain Taylor coefficients are Hasse derivatives, so x^2 keeps its xi^2 term
    let f = Field::Prime(2);
    let alg = JetAlgebra::new(1, 2, f, JetMode::Plain);
    let v = alg.taylor(&parse_poly("x1^2", f, 1).unwrap());
    assert_eq!(v.coeff(&Multi(vec![2])), Poly::one(f, 1));
    assert_eq!(v.coeff(&Multi(vec![1])), Poly::zero(f, 1));
}

#[test]
fn comparison_maps_are_natural_for_a_gauge_transform() {
    use jetcrys::crystal::verify_naturality;
    use jetcrys::fixtures::{section_triples, skew, thickenings};
    let target = Connection::new(
        q(),
        1,
        2,
        vec![PolyMatrix::from_rows(
            q(),
            1,
            vec![
                vec![parse_poly("x1", q(), 1).unwrap(), parse_poly("-x1^2", q(), 1).unwrap()],
                vec![Poly::zero(q(), 1), Poly::zero(q(), 1)],
            ],
        )
        .unwrap()],
    )
    .unwrap();
    let f = PolyMatrix::from_rows(
        q(),
        1,
        vec![
            vec![Poly::one(q(), 1), parse_poly("x1", q(), 1).unwrap()],
            vec![Poly::zero(q(), 1), Poly::one(q(), 1)],
        ],
    )
    .unwrap();
    for t in thickenings(q()) {
        let s = taylor_stratification(&skew(q()), t.nu(), JetMode::Plain).unwrap();
        let m = taylor_stratification(&target, t.nu(), JetMode::Plain).unwrap();
        for [h0, h1, _] in section_triples(&t, 1).unwrap() {
            assert!(verify_naturality(&f, &s, &m, &t, &h0, &h1).unwrap());
            assert_eq!(verify_naturality(&PolyMatrix::identity(q(), 1, 2), &s, &m, &t, &h0, &h1).unwrap(), h0 == h1);
        }
    }
}
