use num_integer::gcd;
use proptest::prelude::*;
use xdeg::degrees::{
    commutativity_degree, commutativity_degree_by_pairs, degree_report, exterior_degree,
};
use xdeg::perm::{group_from_permutations, Perm};
use xdeg::{direct_product, FiniteGroup, Rational};

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..50, 1i64..50).prop_map(|(a, b)| Rational::new(a, b))
}

fn perm(degree: usize) -> impl Strategy<Value = Perm> {
    Just((0..degree as u32).collect::<Vec<_>>()).prop_shuffle()
}

/// Subgroups of `S_5` generated by two random permutations, capped at order 24.
fn small_group() -> impl Strategy<Value = FiniteGroup> {
    (perm(5), perm(5))
        .prop_map(|(a, b)| group_from_permutations(5, &[a, b], 120).unwrap())
        .prop_filter("order at most 24", |g| g.order() <= 24)
}

proptest! {
    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a.clone());
        prop_assert_eq!(a < b, a.to_f64() < b.to_f64());
    }

    #[test]
    fn rational_decimal_is_close(a in rational()) {
        let x: f64 = a.to_decimal(12).parse().unwrap();
        prop_assert!((x - a.to_f64()).abs() < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn class_count_equals_pair_count(g in small_group()) {
        prop_assert_eq!(commutativity_degree(&g), commutativity_degree_by_pairs(&g));
    }

    #[test]
    fn degree_records_hold(g in small_group()) {
        prop_assume!(g.order() > 1);
        let r = degree_report(&g).unwrap();
        prop_assert!(r.d_wedge <= r.d);
        prop_assert!(r.d_wedge > Rational::zero());
        prop_assert_eq!(r.exterior_order, r.derived_order * r.multiplier.order() as usize);
        prop_assert!(r.z_wedge_order <= r.z_order);
        let bad: Vec<_> = r.violations().map(|v| v.name.clone()).collect();
        prop_assert!(bad.is_empty(), "{}: {:?}", g.label(), bad);
    }

    #[test]
    fn commutativity_degree_is_multiplicative(g in small_group(), h in small_group()) {
        prop_assume!(g.order() * h.order() <= 96);
        let gh = direct_product(&g, &h, 96).unwrap();
        prop_assert_eq!(commutativity_degree(&gh), &commutativity_degree(&g) * &commutativity_degree(&h));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn exterior_degree_is_multiplicative_for_coprime_orders(n in 2usize..8, g in small_group()) {
        let h = xdeg::family::group_from_family(&format!("cyclic:{n}")).unwrap();
        prop_assume!(gcd(g.order(), n) == 1 && g.order() * n <= 96);
        let gh = direct_product(&g, &h, 96).unwrap();
        prop_assert_eq!(exterior_degree(&gh).unwrap(), exterior_degree(&g).unwrap());
    }
}
