use proptest::prelude::*;

use cvxfun::caps::Caps;
use cvxfun::cones::{dual_cone, ConvexBody};
use cvxfun::functors::{sym_point, tensor_point};
use cvxfun::io::{cone_doc, parse_cone, Document};
use cvxfun::linearizer::{linearize_sym, linearize_tensor};
use cvxfun::moments::{assemble_pencil, qk_membership, Measure, PolyMap};
use cvxfun::qlinalg::{format_rational, parse_rational, psd_decide_exact, q, PsdVerdict, QMatrix, QVector, Rational};
use cvxfun::random::{random_body, random_cone, random_objective, rng};

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn point(d: usize) -> impl Strategy<Value = QVector> {
    prop::collection::vec(rational(), d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rationals_round_trip(x in rational()) {
        prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
    }

    #[test]
    fn bilinear_linearization_agrees_pointwise(seed in 0u64..1000, p in point(2), r in point(1)) {
        let a = ConvexBody::cube(2);
        let b = ConvexBody::cube(1);
        let t = random_objective(&mut rng(seed), &[3, 2], false).unwrap();
        let (f, _) = linearize_tensor(&t, &a, &b, &Caps::default()).unwrap();
        prop_assert_eq!(f.eval(&tensor_point(&p, &r)), t.eval(&[&p, &r]).unwrap());
    }

    #[test]
    fn symmetric_linearization_agrees_on_the_diagonal(seed in 0u64..1000, p in point(2), n in 2usize..=3) {
        let t = random_objective(&mut rng(seed), &vec![3; n], true).unwrap();
        let (f, _) = linearize_sym(&t, &ConvexBody::cube(2), &Caps::default()).unwrap();
        let ps = vec![p.as_slice(); n];
        prop_assert_eq!(f.eval(&sym_point(&ps, 2)), t.eval(&ps).unwrap());
    }

    #[test]
    fn gram_matrices_are_psd(rows in prop::collection::vec(point(3), 1..4), shift in 1i64..5) {
        let b = QMatrix::from_rows(&rows).unwrap();
        let g = b.transpose().mul(&b).unwrap();
        prop_assert!(psd_decide_exact(&g).unwrap().is_psd());
        let shifted = g.add(&QMatrix::identity(3).scaled(&q(-shift))).unwrap();
        if let PsdVerdict::NotPsd { witness } = psd_decide_exact(&shifted).unwrap() {
            prop_assert!(shifted.quad_form(&witness).unwrap() < q(0));
        }
    }

    #[test]
    fn cone_duality_is_an_involution(seed in 0u64..500, dim in 2usize..=4) {
        let c = random_cone(&mut rng(seed), dim, 6).unwrap();
        let back = dual_cone(&dual_cone(&c));
        prop_assert_eq!(back.rays(), c.rays());
    }

    #[test]
    fn polarity_is_an_involution(seed in 0u64..500, dim in 1usize..=3) {
        let p = random_body(&mut rng(seed), dim, 6).unwrap();
        let back = p.polar().unwrap().polar().unwrap();
        prop_assert_eq!(back.vertices(), p.vertices());
    }

    #[test]
    fn cone_documents_round_trip(seed in 0u64..500) {
        let c = random_cone(&mut rng(seed), 3, 5).unwrap();
        let s = cone_doc(&c).to_canonical_string();
        let back = parse_cone(&Document::parse(&s).unwrap()).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(cone_doc(&back).to_canonical_string(), s);
    }

    #[test]
    fn polar_vertices_lie_in_every_level(xs in prop::collection::btree_set(-6i64..=6, 2..5)) {
        let pts: Vec<QVector> = xs.iter().map(|&x| vec![q(x)]).collect();
        let (centred, _) = cvxfun::moments::recenter(&pts).unwrap();
        let p = ConvexBody::hull_of(1, &centred).unwrap();
        let m = Measure::counting(centred).unwrap();
        for k in 1..=2 {
            let pencil = assemble_pencil(&m, &PolyMap::identity(1), k, &Caps::default()).unwrap();
            for v in p.polar().unwrap().vertices() {
                prop_assert!(qk_membership(&pencil, v).unwrap());
            }
            prop_assert!(qk_membership(&pencil, &[q(0)]).unwrap());
        }
    }
}
