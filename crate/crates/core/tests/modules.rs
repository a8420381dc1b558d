use proptest::prelude::*;
use workbench::f2::F2Matrix;
use workbench::series::{
    series_gysin, series_quadratic, series_sym_invariants, series_tau_quadratic, sylow_symmetric_series, PowerSeries,
};
use workbench::unstable::{
    cohomology_elementary_abelian, gysin_dims, phi, polynomial_p, quadratic, quadratic_p_decorated, r1,
    sylow_power_of_two_module, sylow_symmetric_module, sym2_invariants, tau, tau_dims, tensor, trivial_module,
    UnstableModule,
};

fn series(m: &UnstableModule) -> PowerSeries {
    PowerSeries::from_coeffs(&m.dims().iter().map(|&d| d as u64).collect::<Vec<_>>(), m.max_degree())
}

fn dims_of(s: &PowerSeries) -> Vec<usize> {
    s.to_u64s().unwrap().into_iter().map(|c| c as usize).collect()
}

/// Test modules through degree `n`, each with `u`.
fn decorated(n: usize) -> Vec<(&'static str, UnstableModule)> {
    vec![
        ("F2", trivial_module(n).unwrap()),
        ("P", polynomial_p(n).unwrap()),
        ("S4", sylow_power_of_two_module(2, n).unwrap()),
        ("P x P", tensor(&polynomial_p(n).unwrap(), &polynomial_p(n).unwrap()).unwrap()),
        ("S6", sylow_symmetric_module(6, n).unwrap()),
    ]
}

fn plain(n: usize) -> Vec<(&'static str, UnstableModule)> {
    let mut out: Vec<_> = decorated(n).into_iter().map(|(k, m)| (k, m.without_u())).collect();
    out.push(("H*(Z/2)^2", cohomology_elementary_abelian(2, n).unwrap()));
    out.push(("F2 + P", {
        let mut dims = polynomial_p(n).unwrap().dims().to_vec();
        dims[0] += 1;
        let p = polynomial_p(n).unwrap();
        let d = dims.clone();
        UnstableModule::from_fn(n, dims, |i, k| {
            if k == 0 {
                Ok(F2Matrix::zeros(d[i], 2))
            } else {
                Ok(p.sq(i, k).clone())
            }
        })
        .unwrap()
    }));
    out
}

#[test]
fn quadratic_matches_series_oracle() {
    for (name, m) in plain(8) {
        let q = quadratic(&m).unwrap();
        assert_eq!(series(&q.module), series_quadratic(&series(&m)).unwrap(), "{name}");
        assert_eq!(series(&q.sym.module), series_sym_invariants(&series(&m)).unwrap(), "{name}");
        for d in 0..=8 {
            assert_eq!(q.module.dim(d) + q.phi.dim(d), q.sym.module.dim(d) + q.r1.module.dim(d), "{name} degree {d}");
        }
        assert!(q.module.check_all().is_empty(), "{name}");
        assert!(q.nu.check_commutes(&q.sym.module, &q.phi).is_empty(), "{name}: ν");
        assert!(q.rho.check_commutes(&q.r1.module.clone().without_u(), &q.phi).is_empty(), "{name}: ρ");
        assert!(q.to_sym.check_commutes(&q.module, &q.sym.module).is_empty(), "{name}: projection");
        assert!(q.to_r1.check_commutes(&q.module, &q.r1.module.clone().without_u()).is_empty(), "{name}: projection");
    }
}

#[test]
fn phi_and_r1_shapes() {
    for (name, m) in plain(9) {
        let f = phi(&m).unwrap();
        let r = r1(&m).unwrap();
        for d in 0..=9 {
            let want_phi = if d % 2 == 0 { m.dim(d / 2) } else { 0 };
            assert_eq!(f.dim(d), want_phi, "{name}: Φ degree {d}");
            let want_r1: usize = (0..=d / 2).map(|k| m.dim(k)).sum();
            assert_eq!(r.module.dim(d), want_r1, "{name}: R1 degree {d}");
        }
        assert!(f.check_all().is_empty(), "{name}: Φ");
        assert!(r.module.check_all().is_empty(), "{name}: R1");
    }
    let p = polynomial_p(6).unwrap();
    let f = phi(&p).unwrap();
    assert_eq!(f.dims(), &[1, 0, 1, 0, 1, 0, 1]);
    assert!(f.sq(2, 2).get(0, 0));
    assert_eq!(r1(&trivial_module(5).unwrap()).unwrap().module.dims(), &[1; 6]);
    assert_eq!(r1(&p).unwrap().module.dims(), &[1, 1, 2, 2, 3, 3, 4]);
}

#[test]
fn decorated_quadratic_u_lies_in_kernel_of_nu() {
    for (name, m) in decorated(8) {
        let q = quadratic_p_decorated(&m).unwrap();
        let sym = &q.sym.module;
        for n in 0..8 {
            let u_sym = sym.u(n).unwrap();
            assert!(q.nu.degree(n + 1).mul(u_sym).is_zero(), "{name}: ν(e·z) ≠ 0 in degree {n}");
            assert!(q.to_r1.degree(n + 1).mul(q.module.u(n).unwrap()).is_zero(), "{name}: u on R1 component");
        }
        assert!(q.module.check_all().is_empty(), "{name}");
        assert_eq!(q.module.dims(), quadratic(&m).unwrap().module.dims(), "{name}");
    }
}

#[test]
fn tau_and_gysin_match_series_oracle() {
    let n = 9;
    for (name, m) in decorated(n) {
        let reduced = m.reduced_through();
        let tm = tau(&m).unwrap();
        let gysin = gysin_dims(&m).unwrap();
        let s = series(&m).truncate(n - 1);
        let st = series(&tm);
        assert_eq!(gysin, dims_of(&series_gysin(&s, &st).unwrap()), "{name}: Gysin");
        let q = quadratic_p_decorated(&m).unwrap();
        let tq = tau(&q.module).unwrap();
        let want = series_tau_quadratic(&s, &st).unwrap();
        assert!(2 * reduced >= n - 1, "{name}: reduced only through {reduced}");
        assert_eq!(series(&tq), want, "{name}: τ of the quadratic construction");
        assert_eq!(tau_dims(&m).unwrap().last(), Some(&None));
    }
}

#[test]
fn tau_examples() {
    let p = polynomial_p(8).unwrap();
    assert!(tau(&p).unwrap().dims().iter().all(|&d| d == 0));
    let f = trivial_module(5).unwrap();
    assert_eq!(tau(&f).unwrap().dims(), &f.dims()[..5]);
    let q = quadratic_p_decorated(&p).unwrap();
    assert_eq!(tau(&q.module).unwrap().dims(), &[0, 1, 1, 2, 2, 3, 3, 4]);
}

#[test]
fn tensor_examples() {
    let p = polynomial_p(7).unwrap();
    let one = trivial_module(7).unwrap();
    let pf = tensor(&p, &one).unwrap();
    assert_eq!(pf.to_dump().sq, p.to_dump().sq);

    let pp = tensor(&p, &p).unwrap();
    let e2 = cohomology_elementary_abelian(2, 7).unwrap();
    assert_eq!(pp.dims(), e2.dims());
    for i in 1..=7 {
        for n in 0..=7 - i {
            let flip = |k: usize| F2Matrix::from_fn(k, k, |a, b| a + b + 1 == k);
            let conj = flip(e2.dim(n + i)).mul(e2.sq(i, n)).mul(&flip(e2.dim(n)));
            assert_eq!(pp.sq(i, n), &conj, "Sq^{i} on degree {n}");
        }
    }

    let s6 = tensor(&sylow_symmetric_module(4, 8).unwrap(), &sylow_symmetric_module(2, 8).unwrap()).unwrap();
    assert_eq!(series(&s6), sylow_symmetric_series(6, 8).unwrap());
    assert_eq!(s6.dims(), sylow_symmetric_module(6, 8).unwrap().dims());
}

#[test]
fn s8_model_is_valid_and_reduced() {
    let m = sylow_symmetric_module(8, 10).unwrap();
    assert!(m.check_all().is_empty());
    assert!(m.check_reduced(5).unwrap());
    assert!(m.check_reduced(6).is_err());
    assert_eq!(series(&m), sylow_symmetric_series(8, 10).unwrap());
}

#[test]
fn reducedness_detects_a_killed_square() {
    let mut dump = polynomial_p(4).unwrap().to_dump();
    for e in &mut dump.sq {
        if e.i == 1 && e.n == 1 {
            e.matrix = vec!["0".into()];
        }
    }
    let broken = UnstableModule::from_dump(&dump).unwrap();
    assert!(!broken.check_reduced(1).unwrap());
    assert!(!broken.check_u_compatibility().is_empty());
}

#[test]
fn dump_round_trip() {
    for (name, m) in decorated(6) {
        let json = serde_json::to_string(&m.to_dump()).unwrap();
        let back = UnstableModule::from_dump(&serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back.to_dump(), m.to_dump(), "{name}");
    }
}

fn block(k: u8, n: usize) -> UnstableModule {
    match k {
        0 => trivial_module(n).unwrap(),
        1 => polynomial_p(n).unwrap(),
        2 => cohomology_elementary_abelian(1, n).unwrap().with_zero_u(),
        _ => sylow_power_of_two_module(2, n).unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn functors_agree_with_series(a in 0u8..4, b in 0u8..4, n in 3usize..8) {
        let m = tensor(&block(a, n), &block(b, n)).unwrap();
        prop_assert!(m.check_all().is_empty());
        let q = quadratic(&m).unwrap();
        prop_assert_eq!(series(&q.module), series_quadratic(&series(&m)).unwrap());
        let s = sym2_invariants(&m).unwrap();
        prop_assert_eq!(series(&s.module), series_sym_invariants(&series(&m)).unwrap());
        prop_assert!(s.module.check_all().is_empty());
        let t = tau(&m).unwrap();
        prop_assert_eq!(
            gysin_dims(&m).unwrap(),
            dims_of(&series_gysin(&series(&m).truncate(n - 1), &series(&t)).unwrap())
        );
    }
}
