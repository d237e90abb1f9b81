mod common;

use common::*;
use eichler_core::funcfield::{rr_dim, Divisor, Place};
use eichler_core::lattices::{
    distance_divisor, global_sections, splitting_type, splitting_type_birkhoff, tree_neighbors,
    Lattice2, SplitType,
};
use eichler_core::linalg::KMat;
use proptest::prelude::*;

#[test]
fn h0_and_column_reduction_agree_on_random_lattices() {
    let mut mismatches = 0;
    for i in 0..200u64 {
        let q = if i % 2 == 0 { 2 } else { 3 };
        let mut r = rng(1000 + i);
        let l = random_lattice(&mut r, q, 4);
        let a = splitting_type(&l);
        let b = splitting_type_birkhoff(&l);
        if a != b {
            mismatches += 1;
            eprintln!("mismatch on {l:?}: {a:?} vs {b:?}");
        }
        assert_eq!(a.a + a.b, l.det_degree());
    }
    assert_eq!(mismatches, 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn twisting_shifts_split_type(seed in any::<u64>(), n in -3i64..=3) {
        let q = 2 + (seed % 2) as u8;
        let mut r = rng(seed);
        let l = random_lattice(&mut r, q, 3);
        let s = splitting_type(&l);
        let t = splitting_type(&l.twist(&Divisor::infinity(q, n)));
        prop_assert_eq!(t, SplitType { a: s.a + n, b: s.b + n });
    }

    #[test]
    fn canonical_form_ignores_basis_choice(seed in any::<u64>()) {
        let q = 3;
        let mut r = rng(seed);
        let l = random_lattice(&mut r, q, 3);
        // unimodular over F_q[t] and over O_inf
        let u = KMat::from_rows(vec![
            vec![poly_entry(&mut r, q, 2), eichler_core::RatFn::one(q)],
            vec![eichler_core::RatFn::one(q), eichler_core::RatFn::zero(q)],
        ]);
        let c = eichler_core::RatFn::new(
            random_poly(&mut r, q, 2),
            eichler_core::Poly::t(q).pow(3),
        );
        let g = KMat::from_rows(vec![
            vec![eichler_core::RatFn::one(q), c],
            vec![eichler_core::RatFn::zero(q), eichler_core::RatFn::one(q)],
        ]);
        let m = Lattice2::new(l.fin().mul(&u), l.inf().mul(&g)).unwrap();
        prop_assert_eq!(&m, &l);
        prop_assert_eq!(splitting_type(&m), splitting_type(&l));
    }

    #[test]
    fn sections_of_split_bundles(seed in any::<u64>()) {
        let q = 2 + (seed % 2) as u8;
        let mut r = rng(seed);
        let b = random_divisor(&mut r, q, 2);
        let c = random_divisor(&mut r, q, 2);
        let l = Lattice2::from_divisor_pair(&b, &c);
        prop_assert_eq!(global_sections(&l, &Divisor::zero(q)).dim(), rr_dim(&b) + rr_dim(&c));
        prop_assert_eq!(splitting_type(&l), SplitType::new(b.degree(), c.degree()));
    }

    #[test]
    fn distance_is_a_tree_metric(seed in any::<u64>()) {
        let q = 2;
        let mut r = rng(seed);
        let ls: Vec<Lattice2> = (0..3).map(|_| random_lattice(&mut r, q, 2)).collect();
        let d01 = distance_divisor(&ls[0], &ls[1]);
        prop_assert_eq!(&d01, &distance_divisor(&ls[1], &ls[0]));
        let d12 = distance_divisor(&ls[1], &ls[2]);
        let d02 = distance_divisor(&ls[0], &ls[2]);
        prop_assert!(d02.pointwise_le(&(&d01 + &d12)));
        prop_assert!(d01.is_effective());
    }

    #[test]
    fn neighbors_of_random_lattices(seed in any::<u64>(), which in 0usize..3) {
        let q = 2 + (seed % 2) as u8;
        let mut r = rng(seed);
        let l = random_lattice(&mut r, q, 2);
        let place = [Place::Infinity, Place::of_degree(q, 1)[1].clone(), Place::of_degree(q, 2)[0].clone()][which].clone();
        let nb = tree_neighbors(&l, &place);
        let k = (q as usize).pow(place.degree() as u32) + 1;
        prop_assert_eq!(nb.len(), k);
        let qd = Divisor::place(q, place.clone());
        for (i, m) in nb.iter().enumerate() {
            prop_assert_eq!(distance_divisor(&l, m), qd.clone());
            for o in &nb[..i] {
                prop_assert_ne!(o.class_normalized(), m.class_normalized());
            }
        }
        // a neighbor of a neighbor along a different line sits at distance 2Q
        let far = tree_neighbors(&nb[0], &place);
        let back: Vec<_> = far.iter().filter(|x| x.class_normalized() == l.class_normalized()).collect();
        prop_assert_eq!(back.len(), 1);
        for x in far.iter().filter(|x| x.class_normalized() != l.class_normalized()) {
            prop_assert_eq!(distance_divisor(&l, x), qd.scale(2));
        }
    }
}
