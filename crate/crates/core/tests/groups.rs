use proptest::prelude::*;
use workbench::perm::{
    conjugacy_classes, conjugation_morphisms, dihedral_group, elementary_abelian_subgroups, induced_map,
    nu2_factorial, parse_group_spec, quaternion_group, sylow_alternating, sylow_symmetric, symmetric_group,
    wreath_with_z2, ElementaryAbelianSubgroup, FiniteGroup, GeneratorFile, Permutation, DEFAULT_MAX_ORDER,
};
use workbench::Error;

const SPECS: [&str; 10] = [
    "sylow-sym:4",
    "sylow-sym:6",
    "sylow-alt:8",
    "dihedral:8",
    "dihedral:12",
    "q8",
    "cyclic:8",
    "elem:3",
    "h4-sylow",
    "sym:4",
];

fn group(spec: &str) -> FiniteGroup {
    parse_group_spec(spec, DEFAULT_MAX_ORDER).unwrap()
}

#[test]
fn sylow_orders_follow_legendre() {
    for n in 1..=12 {
        let (nu, _) = nu2_factorial(n as u64);
        let s = sylow_symmetric(n, DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(s.elements().len() as u128, 1 << nu, "S_{n}");
        assert_eq!(s.degree(), n);
        if n >= 2 {
            let a = sylow_alternating(n, DEFAULT_MAX_ORDER).unwrap();
            assert_eq!(a.elements().len() as u128, 1 << (nu - 1), "A_{n}");
            assert!(a.elements().iter().all(|p| s.contains(p) && !p.is_odd()));
        }
    }
}

#[test]
fn sylow_subgroup_of_s4_is_a_subgroup() {
    let s4 = symmetric_group(4, DEFAULT_MAX_ORDER).unwrap();
    let p = sylow_symmetric(4, DEFAULT_MAX_ORDER).unwrap();
    assert!(p.elements().iter().all(|x| s4.contains(x)));
    assert!(!p.is_abelian());
    assert_eq!(p.center().len(), 2);
}

#[test]
fn wreath_doubles_degree_and_squares_order() {
    let d8 = dihedral_group(8, DEFAULT_MAX_ORDER).unwrap();
    let w = wreath_with_z2(&d8, DEFAULT_MAX_ORDER).unwrap();
    assert_eq!(w.degree(), 8);
    assert_eq!(w.elements().len(), 128);
}

#[test]
fn dihedral_examples() {
    for two_n in [2, 4, 6, 8, 16] {
        assert_eq!(dihedral_group(two_n, DEFAULT_MAX_ORDER).unwrap().elements().len(), two_n);
    }
    let d4 = dihedral_group(4, DEFAULT_MAX_ORDER).unwrap();
    assert!(d4.is_abelian());
    assert!(matches!(dihedral_group(5, DEFAULT_MAX_ORDER), Err(Error::Unsupported(_))));
}

#[test]
fn quaternion_has_one_involution() {
    let q = quaternion_group(DEFAULT_MAX_ORDER).unwrap();
    assert_eq!(q.involutions().len(), 1);
    let subs = elementary_abelian_subgroups(&q, 6, 100).unwrap();
    assert_eq!(subs.iter().map(ElementaryAbelianSubgroup::rank).collect::<Vec<_>>(), vec![0, 1]);
}

#[test]
fn elementary_abelian_counts() {
    let e3 = group("elem:3");
    let subs = elementary_abelian_subgroups(&e3, 6, 100).unwrap();
    let mut by_rank = [0; 4];
    for s in &subs {
        by_rank[s.rank()] += 1;
    }
    assert_eq!(by_rank, [1, 7, 7, 1]);
    assert!(matches!(elementary_abelian_subgroups(&e3, 6, 5), Err(Error::ResourceCap { .. })));
}

#[test]
fn class_sizes_partition_the_subgroups() {
    for spec in SPECS {
        let g = group(spec);
        let subs = elementary_abelian_subgroups(&g, 6, 5000).unwrap();
        let classes = conjugacy_classes(&g, &subs);
        assert_eq!(classes.iter().map(|c| c.size).sum::<usize>(), subs.len(), "{spec}");
        for c in &classes {
            assert!(g.order().is_multiple_of(c.size as u128), "{spec}: class size divides the order");
        }
    }
}

#[test]
fn generator_file_round_trip() {
    let file = GeneratorFile {
        degree: 4,
        generators: vec![vec![2, 1, 3, 4], vec![3, 4, 1, 2]],
    };
    let path = std::env::temp_dir().join(format!("workbench-gens-{}.json", std::process::id()));
    std::fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();
    let g = parse_group_spec(&format!("gens:{}", path.display()), DEFAULT_MAX_ORDER).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(g.order(), 8);
}

#[test]
fn bad_generator_files() {
    let dir = std::env::temp_dir().join(format!("workbench-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let wrong_len = dir.join("len.json");
    std::fs::write(&wrong_len, r#"{"degree": 3, "generators": [[2, 1]]}"#).unwrap();
    assert!(matches!(
        parse_group_spec(&format!("gens:{}", wrong_len.display()), DEFAULT_MAX_ORDER),
        Err(Error::Parse(_))
    ));
    let not_json = dir.join("x.json");
    std::fs::write(&not_json, "[").unwrap();
    assert!(parse_group_spec(&format!("gens:{}", not_json.display()), DEFAULT_MAX_ORDER).is_err());
    assert!(matches!(
        parse_group_spec("gens:/nonexistent/file.json", DEFAULT_MAX_ORDER),
        Err(Error::Io(_))
    ));
    std::fs::remove_dir_all(dir).unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn subgroups_are_elementary_abelian(spec_index in 0..SPECS.len()) {
        let g = group(SPECS[spec_index]);
        for s in elementary_abelian_subgroups(&g, 6, 5000).unwrap() {
            prop_assert!(s.is_valid_in(&g));
            prop_assert_eq!(s.members().len(), 1 << s.rank());
            let rebuilt = ElementaryAbelianSubgroup::generated_by(&g, s.basis()).unwrap();
            prop_assert_eq!(rebuilt.members(), s.members());
        }
    }

    #[test]
    fn witnesses_realize_their_maps(spec_index in 0..SPECS.len(), a in 0usize..1000, b in 0usize..1000) {
        let g = group(SPECS[spec_index]);
        let subs = elementary_abelian_subgroups(&g, 6, 5000).unwrap();
        let (e, e2) = (&subs[a % subs.len()], &subs[b % subs.len()]);
        let maps = conjugation_morphisms(&g, e, e2);
        for m in &maps {
            prop_assert_eq!(induced_map(&g, m.witness, e, e2), Some(m.matrix.clone()));
            prop_assert_eq!(m.matrix.rank(), e.rank());
        }
        let distinct: std::collections::HashSet<_> = maps.iter().map(|m| &m.matrix).collect();
        prop_assert_eq!(distinct.len(), maps.len());
    }

    #[test]
    fn permutation_group_laws(images in Just((0..9usize).collect::<Vec<_>>()).prop_shuffle(),
                              other in Just((0..9usize).collect::<Vec<_>>()).prop_shuffle()) {
        let p = Permutation::from_images(&images).unwrap();
        let q = Permutation::from_images(&other).unwrap();
        prop_assert!(p.compose(&p.inverse()).is_identity());
        prop_assert_eq!(p.compose(&q).is_odd(), p.is_odd() != q.is_odd());
        prop_assert_eq!(p.compose(&q).apply(3), p.apply(q.apply(3)));
        let disjoint = p.cycles();
        let cycles: Vec<Vec<usize>> = disjoint.iter().map(|c| c.iter().map(|x| x + 1).collect()).collect();
        let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
        prop_assert_eq!(Permutation::from_cycles(9, &refs).unwrap(), p);
    }
}
