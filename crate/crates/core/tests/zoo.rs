use omega_core::algebra::{find_isomorphism, product};
use omega_core::diagram::{is_commutative, validate_diagram};
use omega_core::zoo::{
    affine_space, build, check_laws, cross_algebra, cyclic_group, d_algebra, left_module, module, quaternion,
    quaternion_unit, right_module, unital_extension, vector_group, z_action, zn_ring, ZooKind, ZooObject,
};
use omega_core::Error;

fn report(kind: ZooKind) -> omega_core::zoo::LawReport {
    let item = build(kind).unwrap();
    check_laws(&item).unwrap()
}

fn assert_all_hold(kind: ZooKind) {
    let r = report(kind);
    for c in &r.checks {
        assert!(c.failure.is_none(), "{kind}: {c}");
        assert!(c.cases > 0, "{kind}: {} has no cases", c.law);
    }
}

#[test]
fn every_kind_passes_its_laws_at_defaults() {
    for name in ZooKind::NAMES {
        let kind = ZooKind::parse(name, &[]).unwrap();
        assert_all_hold(kind);
    }
}

#[test]
fn parameter_variants_pass_their_laws() {
    let kinds = [
        ZooKind::ZAction { n: 6, dim: 2 },
        ZooKind::ZAction { n: 2, dim: 3 },
        ZooKind::Module { n: 4, dim: 2 },
        ZooKind::Module { n: 5, dim: 1 },
        ZooKind::UnitalExtension { n: 6, d: 3 },
        ZooKind::UnitalExtension { n: 5, d: 1 },
        ZooKind::DAlgebra { p: 2 },
        ZooKind::LeftModule { p: 2, cross: false },
        ZooKind::LeftModule { p: 3, cross: true },
        ZooKind::RightModule { p: 2, cross: true },
        ZooKind::Quaternion { p: 5 },
        ZooKind::LieCross { p: 2 },
        ZooKind::GroupOnSet { n: 3, copies: 3 },
        ZooKind::AffineSpace { p: 3, dim: 2 },
    ];
    for kind in kinds {
        assert_all_hold(kind);
    }
}

#[test]
fn module_over_z6_checks_every_module_law_exhaustively() {
    let r = report(ZooKind::Module { n: 6, dim: 1 });
    for law in [
        "associative law (pq)v = p(qv)",
        "distributive law p(v + w) = pv + pw",
        "distributive law (p + q)v = pv + qv",
        "unitarity law 1v = v",
        "commutativity of representations",
    ] {
        let c = r.check(law).unwrap_or_else(|| panic!("missing {law}"));
        assert!(c.failure.is_none(), "{c}");
    }
    assert_eq!(r.check("associative law (pq)v = p(qv)").unwrap().cases, 6 * 6 * 6);
}

#[test]
fn z_action_on_z2_times_z4_goes_through_z4() {
    let (g, _) = product(&[cyclic_group(2).unwrap(), cyclic_group(4).unwrap()]).unwrap();
    let rep = z_action(&g).unwrap();
    assert_eq!(rep.actor().size(), 4);
    assert_eq!(rep.space().size(), 8);
    assert!(rep.is_valid());
    // n g computed by repeated addition
    let plus = g.op("+").unwrap();
    for n in 0..4 {
        for x in 0..8 {
            let mut sum = 0;
            for _ in 0..n {
                sum = g.binary(plus, sum, x);
            }
            assert_eq!(rep.act(n, x), sum, "n = {n}, x = {x}");
        }
    }
}

#[test]
fn z_action_build_records_the_reduction() {
    let item = build(ZooKind::ZAction { n: 6, dim: 1 }).unwrap();
    assert_eq!(item.notes, vec!["integers act through Z_6 (the group exponent)".to_string()]);
}

#[test]
fn unital_extension_of_2z4_is_z4() {
    let ext = unital_extension(4, 2).unwrap();
    let images: Vec<Vec<usize>> = ext.maps.iter().map(|m| m.image().to_vec()).collect();
    let expected: Vec<Vec<usize>> = {
        let mut v: Vec<Vec<usize>> = (0..4).map(|c| (0..4).map(|x| c * x % 4).collect()).collect();
        v.sort();
        v
    };
    assert_eq!(images, expected);
    let iso = find_isomorphism(&ext.ring, &zn_ring(4).unwrap()).unwrap();
    assert!(iso.is_some());
    assert_eq!(ext.image_of_d.len(), 2);
}

#[test]
fn unital_extension_of_a_unital_ring_is_its_image() {
    for (n, d) in [(4, 1), (5, 2), (6, 5), (7, 3)] {
        let ext = unital_extension(n, d).unwrap();
        assert_eq!(ext.image_of_d.len(), ext.maps.len(), "n = {n}, d = {d}");
        assert!(find_isomorphism(&ext.ring, &zn_ring(n).unwrap()).unwrap().is_some());
    }
}

#[test]
fn quaternion_units_multiply_as_expected() {
    let q = quaternion(3).unwrap();
    assert_eq!(q.size(), 81);
    let m = q.op("*").unwrap();
    let e = |i| quaternion_unit(3, i);
    assert_eq!(q.binary(m, e(1), e(2)), e(3));
    assert_eq!(q.binary(m, e(1), e(1)), 2 * e(0));
    assert_eq!(q.binary(m, e(2), e(1)), 2 * e(3));
    assert_eq!(q.binary(m, e(3), e(3)), 2 * e(0));
}

#[test]
fn quaternion_report_names_the_unit_relations() {
    let r = report(ZooKind::Quaternion { p: 3 });
    for law in ["e1 e2 = e3", "e1 e1 = -e0", "e0 is a unit", "associative law", "distributive law"] {
        assert!(r.check(law).is_some_and(|c| c.failure.is_none()), "{law}");
    }
}

#[test]
fn affine_space_over_z5_passes_triangle_and_parallelogram() {
    let r = report(ZooKind::AffineSpace { p: 5, dim: 1 });
    let tri = r.check("triangle law AB + BC = AC").unwrap();
    assert_eq!((tri.cases, tri.failure.as_deref()), (125, None));
    let par = r.check("parallelogram: AB = CD implies AC = BD").unwrap();
    assert_eq!((par.cases, par.failure.as_deref()), (125, None));
    for law in [
        "AA is the zero vector",
        "vectors form an abelian group",
        "point representation is single transitive",
        "scalar representation is effective",
        "commutativity of representations",
    ] {
        assert!(r.check(law).is_some_and(|c| c.failure.is_none()), "{law}");
    }
}

#[test]
fn affine_point_representation_is_single_transitive() {
    let d = affine_space(5, 1).unwrap();
    let translate = &d.edges()[1].representation;
    assert!(translate.properties().unwrap().single_transitive);
    assert_eq!(validate_diagram(&d).unwrap().len(), 3);
}

#[test]
fn lie_cross_shift_identity_covers_all_pairs() {
    let r = report(ZooKind::LieCross { p: 3 });
    let c = r.check("[L(c), L(b)] a = L([c, b]) a").unwrap();
    assert_eq!(c.cases, 729);
    assert!(c.failure.is_none());
    assert!(r.check("Jacobi identity").is_some_and(|c| c.failure.is_none()));
    assert!(r.check("[a, b] = -[b, a]").is_some_and(|c| c.failure.is_none()));
}

#[test]
fn module_builders_give_commutative_diagrams() {
    for (n, dim) in [(2, 1), (3, 2), (6, 1), (12, 1)] {
        assert_eq!(is_commutative(&module(n, dim).unwrap()).unwrap(), None, "module {n} {dim}");
    }
    for p in [2, 3] {
        let q = quaternion(p).unwrap();
        let c = cross_algebra(p).unwrap();
        for m in [
            left_module(&q, "*", p).unwrap(),
            right_module(&q, "*", p).unwrap(),
            left_module(&c, "br", p).unwrap(),
            right_module(&c, "br", p).unwrap(),
        ] {
            assert_eq!(is_commutative(&m.diagram).unwrap(), None);
        }
    }
}

#[test]
fn associativity_decides_the_module_shape() {
    let q = left_module(&quaternion(3).unwrap(), "*", 3).unwrap();
    assert!(!q.nonstandard);
    assert_eq!(q.diagram.vertex_count(), 4);
    assert_eq!(q.diagram.algebras().len(), 4);
    let c = left_module(&cross_algebra(3).unwrap(), "br", 3).unwrap();
    assert!(c.nonstandard);
    assert_eq!(c.diagram.vertex_count(), 4);
    assert_eq!(c.diagram.algebras().len(), 3);
}

#[test]
fn nonassociative_module_is_reported_as_nonstandard() {
    let item = build(ZooKind::RightModule { p: 3, cross: true }).unwrap();
    assert!(item.notes.iter().any(|n| n.starts_with("nonstandard")));
    let r = check_laws(&item).unwrap();
    assert!(r.check("product is bilinear").is_some_and(|c| c.failure.is_none()));
    assert!(r.check("action respects the product").is_none());
    let std = report(ZooKind::RightModule { p: 3, cross: false });
    assert!(std.notes.is_empty());
    assert!(std.check("action respects the product").is_some_and(|c| c.failure.is_none()));
}

#[test]
fn d_algebra_layers_follow_longest_paths() {
    let d = d_algebra(2).unwrap();
    let layers: Vec<Vec<usize>> = validate_diagram(&d).unwrap().into_iter().map(|l| l.into_iter().collect()).collect();
    assert_eq!(layers, vec![vec![0], vec![1], vec![2]]);
}

#[test]
fn parse_fills_defaults_and_round_trips_through_display() {
    let expected = [
        "z_action 4 1",
        "module 6 1",
        "unital_extension 4 2",
        "d_algebra 3",
        "left_module 3 0",
        "right_module 3 0",
        "quaternion 3",
        "lie_cross 3",
        "group_on_set 4 1",
        "affine_space 5 1",
    ];
    for (name, shown) in ZooKind::NAMES.iter().zip(expected) {
        let kind = ZooKind::parse(name, &[]).unwrap();
        assert_eq!(kind.to_string(), shown);
        let mut words = shown.split(' ');
        let head = words.next().unwrap();
        let params: Vec<usize> = words.map(|w| w.parse().unwrap()).collect();
        assert_eq!(ZooKind::parse(head, &params).unwrap(), kind);
    }
    assert_eq!(ZooKind::parse("module", &[5]).unwrap(), ZooKind::Module { n: 5, dim: 1 });
}

#[test]
fn parse_rejects_unknown_names_and_extra_parameters() {
    assert!(matches!(ZooKind::parse("torus", &[]), Err(Error::Construction(_))));
    assert!(matches!(ZooKind::parse("quaternion", &[3, 1]), Err(Error::Construction(_))));
    assert!(matches!(ZooKind::parse("module", &[2, 1, 1]), Err(Error::Construction(_))));
}

#[test]
fn oversized_parameters_are_budget_errors() {
    let kinds = [
        ZooKind::Module { n: 13, dim: 1 },
        ZooKind::Module { n: 12, dim: 3 },
        ZooKind::ZAction { n: 4, dim: 4 },
        ZooKind::DAlgebra { p: 5 },
        ZooKind::Quaternion { p: 7 },
        ZooKind::LeftModule { p: 5, cross: false },
        ZooKind::AffineSpace { p: 4, dim: 1 },
        ZooKind::GroupOnSet { n: 3, copies: 13 },
    ];
    for kind in kinds {
        let err = build(kind).unwrap_err();
        assert!(err.is_resource(), "{kind}: {err}");
    }
    assert!(vector_group(0, 1).is_err());
}

#[test]
fn laws_reject_mismatched_objects() {
    let mut item = build(ZooKind::Quaternion { p: 2 }).unwrap();
    item.kind = ZooKind::LieCross { p: 2 };
    assert!(matches!(check_laws(&item), Err(Error::Precondition(_))));
    assert!(matches!(item.object, ZooObject::Algebra(_)));
}
