use omega_core::algebra::{ElementMap, ElementSet, Odometer};
use omega_core::representation::{automorphism_group, morphism_check, MorphismKind};
use omega_core::words::{
    basis_orbit, closure, closure_members, eval_word, extend_map, is_generating,
    is_minimal_generating, quasibasis, regular_on, substitute,
};
use omega_core::zoo::{cyclic_group, cyclic_group_full, z_action};
use omega_core::{Error, FiniteAlgebra, OmegaWord, Representation};
use omega_testkit::{bare, naive_closure, random_representation};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn zmod(n: usize) -> Representation {
    z_action(&cyclic_group(n).unwrap()).unwrap()
}

fn set(xs: &[usize]) -> ElementSet {
    xs.iter().copied().collect()
}

fn gen(i: usize) -> OmegaWord {
    OmegaWord::Gen(i)
}

/// Smallest word size per element by relaxation to a fixpoint.
fn min_word_sizes(rep: &Representation, x: &ElementSet) -> Vec<Option<usize>> {
    let space = rep.space();
    let n = space.size();
    let mut size: Vec<Option<usize>> = vec![None; n];
    for &g in x {
        size[g] = Some(1);
    }
    loop {
        let mut changed = false;
        let mut improve = |v: usize, s: usize, size: &mut Vec<Option<usize>>| {
            if size[v].is_none_or(|old| s < old) {
                size[v] = Some(s);
                changed = true;
            }
        };
        for op in 0..space.domain().len() {
            let k = space.domain().arity(op);
            let mut odo = Odometer::new(n, k);
            while let Some(args) = odo.next() {
                let sizes: Option<Vec<usize>> = args.iter().map(|&a| size[a]).collect();
                if let Some(sizes) = sizes {
                    let v = space.apply(op, args);
                    improve(v, 1 + sizes.iter().sum::<usize>(), &mut size);
                }
            }
        }
        for a in 0..rep.actor().size() {
            for c in 0..n {
                if let Some(s) = size[c] {
                    improve(rep.act(a, c), s + 1, &mut size);
                }
            }
        }
        if !changed {
            return size;
        }
    }
}

fn random_word<R: Rng>(rng: &mut R, rep: &Representation, gens: usize, budget: usize) -> OmegaWord {
    let space = rep.space();
    let ops: Vec<usize> = (0..space.domain().len())
        .filter(|&op| space.domain().arity(op) < budget)
        .collect();
    let choice = rng.gen_range(0..3);
    if budget <= 1 || choice == 0 || (choice == 1 && ops.is_empty()) {
        if gens == 0 || (rng.gen_bool(0.3) && ops.iter().any(|&op| space.domain().arity(op) == 0)) {
            let c = ops.iter().find(|&&op| space.domain().arity(op) == 0);
            if let Some(&op) = c {
                return OmegaWord::op(space.domain().symbol(op), Vec::new());
            }
        }
        return gen(rng.gen_range(0..gens.max(1)));
    }
    if choice == 1 {
        let op = ops[rng.gen_range(0..ops.len())];
        let k = space.domain().arity(op);
        let share = (budget - 1) / k.max(1);
        let children = (0..k).map(|_| random_word(rng, rep, gens, share)).collect();
        return OmegaWord::op(space.domain().symbol(op), children);
    }
    let a = rng.gen_range(0..rep.actor().size());
    OmegaWord::act(a, random_word(rng, rep, gens, budget - 1))
}

#[test]
fn evaluates_small_words() {
    let z6 = zmod(6);
    assert_eq!(eval_word(&z6, &[3], &gen(0)).unwrap(), 3);
    assert_eq!(eval_word(&z6, &[3], &OmegaWord::op("+", vec![gen(0), gen(0)])).unwrap(), 0);
    assert_eq!(eval_word(&zmod(5), &[1], &OmegaWord::act(2, gen(0))).unwrap(), 2);
}

#[test]
fn malformed_words_are_shape_errors() {
    let z6 = zmod(6);
    assert!(matches!(eval_word(&z6, &[3], &gen(1)), Err(Error::Shape(_))));
    assert!(matches!(eval_word(&z6, &[3], &OmegaWord::op("+", vec![gen(0)])), Err(Error::Shape(_))));
    assert!(matches!(eval_word(&z6, &[3], &OmegaWord::op("-", vec![])), Err(Error::Shape(_))));
    assert!(matches!(eval_word(&z6, &[3], &OmegaWord::act(6, gen(0))), Err(Error::Shape(_))));
}

#[test]
fn closure_of_two_in_z6() {
    let z6 = zmod(6);
    let c = closure(&z6, &set(&[2])).unwrap();
    assert_eq!(c.members, set(&[0, 2, 4]));
    for (&m, w) in &c.witness {
        assert_eq!(eval_word(&z6, &c.gens, w).unwrap(), m);
    }
    assert_eq!(c.witness[&2], gen(0));
    assert!(!is_generating(&z6, &set(&[2])).unwrap());
}

#[test]
fn closure_of_one_in_z6_is_everything() {
    let z6 = zmod(6);
    assert_eq!(closure_members(&z6, &set(&[1])).unwrap().len(), 6);
    assert!(is_generating(&z6, &set(&[1])).unwrap());
}

#[test]
fn full_carrier_has_leaf_witnesses() {
    let z6 = zmod(6);
    let all = set(&[0, 1, 2, 3, 4, 5]);
    let c = closure(&z6, &all).unwrap();
    assert!(c.witness.values().all(|w| matches!(w, OmegaWord::Gen(_))));
    assert!(is_generating(&z6, &all).unwrap());
}

#[test]
fn closure_rejects_foreign_elements() {
    assert!(matches!(closure(&zmod(3), &set(&[3])), Err(Error::Index(_))));
}

#[test]
fn closure_matches_naive_oracle_on_random_representations() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    while checked < 200 {
        let Some(rep) = random_representation(&mut rng, 6, 24) else { continue };
        let n = rep.space().size();
        let x: ElementSet = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
        let c = closure(&rep, &x).unwrap();
        assert_eq!(c.members, naive_closure(&rep, &x));
        let sizes = min_word_sizes(&rep, &x);
        for (&m, w) in &c.witness {
            assert_eq!(eval_word(&rep, &c.gens, w).unwrap(), m);
            assert_eq!(Some(w.size()), sizes[m], "witness for {m} is not smallest");
        }
        checked += 1;
    }
}

#[test]
fn c6_group_quasibases() {
    let c6 = bare(&cyclic_group_full(6).unwrap());
    let all: ElementSet = (0..6).collect();
    assert_eq!(quasibasis(&c6, &all).unwrap(), set(&[1]));
    // The pair {a^2, a^3} is already minimal and has a different size.
    assert_eq!(quasibasis(&c6, &set(&[2, 3])).unwrap(), set(&[2, 3]));
    assert!(is_minimal_generating(&c6, &set(&[2, 3])).unwrap());
}

#[test]
fn z6_module_quasibasis() {
    let z6 = zmod(6);
    assert_eq!(quasibasis(&z6, &set(&[1, 2])).unwrap(), set(&[1]));
    assert_eq!(quasibasis(&z6, &set(&[1])).unwrap(), set(&[1]));
    assert!(matches!(quasibasis(&z6, &set(&[2])), Err(Error::Precondition(_))));
}

#[test]
fn substitution_examples() {
    let z6 = zmod(6);
    let w = OmegaWord::act(2, gen(0));
    assert_eq!(substitute(&w, &[gen(0)]).unwrap(), w);
    let sub = substitute(&w, &[OmegaWord::op("+", vec![gen(0), gen(0)])]).unwrap();
    assert_eq!(eval_word(&z6, &[3], &sub).unwrap(), 0);
    assert!(matches!(substitute(&gen(1), &[gen(0)]), Err(Error::Index(_))));
}

#[test]
fn extension_of_doubling_on_z5() {
    let z5 = zmod(5);
    let r = extend_map(&z5, &z5, &set(&[1]), &[2]).unwrap();
    assert_eq!(r.image(), &[0, 2, 4, 1, 3]);
    assert!(morphism_check(MorphismKind::Reduced, &z5, &z5, None, &r).unwrap());
}

#[test]
fn extension_detects_violated_relation() {
    let z4 = zmod(4);
    match extend_map(&z4, &z4, &set(&[1, 2]), &[1, 3]) {
        Err(Error::Relation { left, right, lhs, rhs }) => {
            assert_eq!(left, "Act(2,Gen(0))");
            assert_eq!(right, "Gen(1)");
            assert_eq!((lhs, rhs), (2, 3));
        }
        other => panic!("expected a relation error, got {other:?}"),
    }
}

#[test]
fn inclusion_extends_to_identity() {
    let z6 = zmod(6);
    let x = set(&[1, 4]);
    let r = extend_map(&z6, &z6, &x, &[1, 4]).unwrap();
    assert_eq!(r, ElementMap::identity(6));
}

#[test]
fn extensions_match_endomorphism_count() {
    let z5 = zmod(5);
    let mut ok = 0;
    let mut bijective = 0;
    for v in 0..5 {
        if let Ok(r) = extend_map(&z5, &z5, &set(&[1]), &[v]) {
            ok += 1;
            bijective += r.is_bijective() as usize;
        }
    }
    assert_eq!((ok, bijective), (5, 4));
}

#[test]
fn regularity() {
    let z5 = zmod(5);
    let x = set(&[1]);
    assert!(regular_on(&z5, &x, &ElementMap::identity(5)).unwrap());
    assert!(!regular_on(&z5, &x, &ElementMap::new(5, vec![0; 5]).unwrap()).unwrap());
    for r in automorphism_group(&z5, u64::MAX).unwrap() {
        assert!(regular_on(&z5, &x, &r).unwrap());
    }
    let swap = ElementMap::new(5, vec![0, 2, 1, 3, 4]).unwrap();
    assert!(regular_on(&z5, &x, &swap).is_err());
}

#[test]
fn basis_orbits() {
    assert_eq!(
        basis_orbit(&zmod(5), &set(&[1]), u64::MAX).unwrap(),
        vec![set(&[1]), set(&[2]), set(&[3]), set(&[4])]
    );
    let one = bare(&FiniteAlgebra::set(1).unwrap());
    assert_eq!(basis_orbit(&one, &set(&[0]), u64::MAX).unwrap(), vec![set(&[0])]);
    let c6 = bare(&cyclic_group_full(6).unwrap());
    assert_eq!(basis_orbit(&c6, &set(&[1]), u64::MAX).unwrap(), vec![set(&[1]), set(&[5])]);
    assert!(basis_orbit(&c6, &set(&[1, 2]), u64::MAX).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn substitution_commutes_with_evaluation(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let Some(rep) = random_representation(&mut rng, 6, 16) else { return Ok(()) };
        let n = rep.space().size();
        let xs: Vec<usize> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(0..n)).collect();
        let ys: Vec<usize> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(0..n)).collect();
        let w = random_word(&mut rng, &rep, xs.len(), 6);
        let sigma: Vec<OmegaWord> = (0..xs.len()).map(|_| random_word(&mut rng, &rep, ys.len(), 4)).collect();
        let sigma_values: Vec<usize> = sigma.iter().map(|s| eval_word(&rep, &ys, s).unwrap()).collect();
        let lhs = eval_word(&rep, &ys, &substitute(&w, &sigma).unwrap()).unwrap();
        prop_assert_eq!(lhs, eval_word(&rep, &sigma_values, &w).unwrap());
        // Nested substitution equals substitution by the composite.
        let tau: Vec<OmegaWord> = (0..ys.len()).map(|_| random_word(&mut rng, &rep, 2, 3)).collect();
        let nested = substitute(&substitute(&w, &sigma).unwrap(), &tau).unwrap();
        let composite: Vec<OmegaWord> = sigma.iter().map(|s| substitute(s, &tau).unwrap()).collect();
        prop_assert_eq!(nested, substitute(&w, &composite).unwrap());
    }

    #[test]
    fn quasibasis_is_a_minimal_fixed_point(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let Some(rep) = random_representation(&mut rng, 6, 16) else { return Ok(()) };
        let all: ElementSet = (0..rep.space().size()).collect();
        let q = quasibasis(&rep, &all).unwrap();
        prop_assert!(is_minimal_generating(&rep, &q).unwrap());
        prop_assert_eq!(quasibasis(&rep, &q).unwrap(), q);
    }

    #[test]
    fn automorphic_images_of_quasibases_are_minimal(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let Some(rep) = random_representation(&mut rng, 5, 12) else { return Ok(()) };
        let all: ElementSet = (0..rep.space().size()).collect();
        let q = quasibasis(&rep, &all).unwrap();
        for r in automorphism_group(&rep, u64::MAX).unwrap() {
            let image: ElementSet = q.iter().map(|&e| r.apply(e)).collect();
            prop_assert!(is_minimal_generating(&rep, &image).unwrap());
        }
        prop_assert!(!basis_orbit(&rep, &q, u64::MAX).unwrap().is_empty());
    }

    #[test]
    fn extension_success_means_reduced_morphism(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let Some(rep) = random_representation(&mut rng, 5, 12) else { return Ok(()) };
        let n = rep.space().size();
        let all: ElementSet = (0..n).collect();
        let q = quasibasis(&rep, &all).unwrap();
        let images: Vec<usize> = q.iter().map(|_| rng.gen_range(0..n)).collect();
        match extend_map(&rep, &rep, &q, &images) {
            Ok(r) => {
                prop_assert!(morphism_check(MorphismKind::Reduced, &rep, &rep, None, &r).unwrap());
                for (&x, &v) in q.iter().zip(&images) {
                    prop_assert_eq!(r.apply(x), v);
                }
            }
            Err(Error::Relation { lhs, rhs, .. }) => prop_assert_ne!(lhs, rhs),
            Err(e) => return Err(TestCaseError::fail(format!("unexpected error {e}"))),
        }
    }
}
