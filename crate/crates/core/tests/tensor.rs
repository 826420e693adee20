use omega_core::algebra::{find_isomorphism, product, ElementMap};
use omega_core::tensor::{check_tensor_laws, tensor_abelian, verify_universal};
use omega_core::zoo::{cyclic_group, small_abelian_groups, symmetric_group_s3};
use omega_core::{Error, FiniteAlgebra, OperatorDomain};
use omega_testkit::{cyclic_tensor_invariants, gcd, smith_diagonal};
use proptest::prelude::*;

fn z(n: usize) -> FiniteAlgebra {
    cyclic_group(n).unwrap()
}

fn direct_sum(ns: &[usize]) -> FiniteAlgebra {
    let factors: Vec<_> = ns.iter().map(|&n| z(n)).collect();
    product(&factors).unwrap().0
}

#[test]
fn oracle_smith_diagonal_on_known_matrices() {
    // Z^2 / <(2, 4), (6, 8)>: determinant -8, gcd of entries 2.
    assert_eq!(smith_diagonal(&[vec![2, 4], vec![6, 8]], 2), vec![2, 4]);
    assert_eq!(smith_diagonal(&[vec![4, 0], vec![0, 6]], 2), vec![2, 12]);
    assert_eq!(smith_diagonal(&[vec![0, 0]], 2), Vec::<i128>::new());
}

#[test]
fn oracle_cyclic_tensor_matches_gcd() {
    for m in 2..=6 {
        for n in 2..=6 {
            let g = gcd(m, n) as i128;
            let expected: Vec<i128> = if g == 1 { vec![] } else { vec![g] };
            assert_eq!(cyclic_tensor_invariants(&[m, n]), expected, "Z{m} ⊗ Z{n}");
        }
    }
}

#[test]
fn two_by_three_is_trivial() {
    let t = tensor_abelian(&[z(2), z(3)], "+").unwrap();
    assert_eq!(t.order(), 1);
    assert!(t.invariant_factors.is_empty());
}

#[test]
fn four_by_six_is_z2() {
    let t = tensor_abelian(&[z(4), z(6)], "+").unwrap();
    assert_eq!(t.invariant_factors, vec![2]);
    assert!(find_isomorphism(&t.group, &z(2)).unwrap().is_some());
}

#[test]
fn two_by_two_canonical_generator() {
    let t = tensor_abelian(&[z(2), z(2)], "+").unwrap();
    assert_eq!(t.invariant_factors, vec![2]);
    assert_eq!(t.tensor(&[1, 1]), 1);
    // (1 + 1) ⊗ 1 = 0 ⊗ 1 = 0.
    assert_eq!(t.tensor(&[0, 1]), 0);
}

#[test]
fn cyclic_products_match_oracle() {
    for m in 2..=10 {
        for n in 2..=10 {
            let t = tensor_abelian(&[z(m), z(n)], "+").unwrap();
            let oracle: Vec<u64> = cyclic_tensor_invariants(&[m, n]).into_iter().map(|d| d as u64).collect();
            assert_eq!(t.invariant_factors, oracle, "Z{m} ⊗ Z{n}");
        }
    }
}

#[test]
fn three_factor_products_match_oracle() {
    for (m, n, k) in [(2, 4, 6), (4, 6, 8), (3, 6, 9), (2, 3, 5), (4, 4, 2)] {
        let t = tensor_abelian(&[z(m), z(n), z(k)], "+").unwrap();
        let oracle: Vec<u64> = cyclic_tensor_invariants(&[m, n, k]).into_iter().map(|d| d as u64).collect();
        assert_eq!(t.invariant_factors, oracle, "Z{m} ⊗ Z{n} ⊗ Z{k}");
    }
}

#[test]
fn non_cyclic_factors() {
    // (Z2 ⊕ Z4) ⊗ Z4 ≅ Z2 ⊕ Z4.
    let t = tensor_abelian(&[direct_sum(&[2, 4]), z(4)], "+").unwrap();
    assert_eq!(t.invariant_factors, vec![2, 4]);
    // (Z2 ⊕ Z2) ⊗ (Z2 ⊕ Z2) ≅ Z2^4.
    let t = tensor_abelian(&[direct_sum(&[2, 2]), direct_sum(&[2, 2])], "+").unwrap();
    assert_eq!(t.invariant_factors, vec![2, 2, 2, 2]);
}

#[test]
fn trivial_factor_gives_trivial_product() {
    let t = tensor_abelian(&[z(1), z(4)], "+").unwrap();
    assert_eq!(t.order(), 1);
    let laws = check_tensor_laws(&t, 1_000_000).unwrap();
    assert!(laws.all_hold());
}

#[test]
fn rejects_non_abelian_factor() {
    let s3 = symmetric_group_s3().unwrap();
    let s3 = FiniteAlgebra::new(OperatorDomain::new([("+", 2)]).unwrap(), 6, s3.tables().to_vec()).unwrap();
    assert!(matches!(tensor_abelian(&[s3, z(2)], "+"), Err(Error::Structure(_))));
}

#[test]
fn rejects_single_factor() {
    assert!(matches!(tensor_abelian(&[z(2)], "+"), Err(Error::Precondition(_))));
}

#[test]
fn laws_hold_and_nesting_agrees() {
    let t = tensor_abelian(&[z(4), z(6), z(3)], "+").unwrap();
    let laws = check_tensor_laws(&t, 10_000_000).unwrap();
    assert!(laws.additivity && laws.balancing);
    assert_eq!(laws.associativity, Some(true));
    assert_eq!(t.order(), 1);
}

#[test]
fn law_check_respects_budget() {
    let t = tensor_abelian(&[z(6), z(6)], "+").unwrap();
    assert!(matches!(check_tensor_laws(&t, 10), Err(Error::Budget(_))));
}

#[test]
fn universal_property_for_canonical_map() {
    let t = tensor_abelian(&[z(4), z(6)], "+").unwrap();
    let h = verify_universal(&t, t.canonical.image(), &t.group).unwrap();
    assert_eq!(h, ElementMap::identity(t.order()));
}

#[test]
fn universal_property_for_multiplication() {
    let t = tensor_abelian(&[z(2), z(2)], "+").unwrap();
    let mult: Vec<usize> = (0..4).map(|p| (p / 2) * (p % 2)).collect();
    let h = verify_universal(&t, &mult, &z(2)).unwrap();
    assert!(h.is_bijective());
    assert_eq!(h.apply(t.tensor(&[1, 1])), 1);
}

#[test]
fn universal_property_for_zero_map() {
    let t = tensor_abelian(&[z(6), z(4)], "+").unwrap();
    let zero = vec![0; 24];
    let h = verify_universal(&t, &zero, &z(6)).unwrap();
    assert!(h.image().iter().all(|&v| v == 0));
}

#[test]
fn universal_property_rejects_non_polymorphism() {
    let t = tensor_abelian(&[z(2), z(2)], "+").unwrap();
    let not_bilinear = vec![0, 1, 1, 1];
    assert!(verify_universal(&t, &not_bilinear, &z(2)).is_err());
}

#[test]
fn symmetric_in_its_factors() {
    let groups = small_abelian_groups(8).unwrap();
    for (na, a) in &groups {
        for (nb, b) in &groups {
            if a.size() * b.size() > 64 {
                continue;
            }
            let ab = tensor_abelian(&[a.clone(), b.clone()], "+").unwrap();
            let ba = tensor_abelian(&[b.clone(), a.clone()], "+").unwrap();
            assert_eq!(ab.invariant_factors, ba.invariant_factors, "{na} ⊗ {nb}");
            assert!(find_isomorphism(&ab.group, &ba.group).unwrap().is_some());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn canonical_map_is_multilinear(m in 2usize..8, n in 2usize..8) {
        let t = tensor_abelian(&[z(m), z(n)], "+").unwrap();
        let laws = check_tensor_laws(&t, 10_000_000).unwrap();
        prop_assert!(laws.all_hold());
        prop_assert_eq!(t.order() as u64, gcd(m, n) as u64);
    }

    #[test]
    fn invariant_factors_divide(ms in proptest::collection::vec(2usize..7, 2..4)) {
        let factors: Vec<_> = ms.iter().map(|&m| z(m)).collect();
        let t = tensor_abelian(&factors, "+").unwrap();
        for w in t.invariant_factors.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
        let oracle: Vec<u64> = cyclic_tensor_invariants(&ms).into_iter().map(|d| d as u64).collect();
        prop_assert_eq!(&t.invariant_factors, &oracle);
    }
}
