//! The end-to-end acceptance suite. Each criterion pins its degree range and time budget;
//! a criterion passes only if every check holds and it finishes within budget.

use std::time::{Duration, Instant};

use num_bigint::BigInt;

use crate::error::Result;
use crate::perm::{
    alpha_iso_check, dihedral_group, elementary_abelian_group, h4_isomorphism_check, h4_model_image, h4_sylow,
    nu2_factorial, parse_group_spec, sylow_alternating, sylow_symmetric, wreath_index_valuation, FiniteGroup,
    DEFAULT_MAX_ORDER,
};
use crate::quillen::{
    build_quillen_diagram, dihedral_closed_form, limit_dims, limit_with_basis, skeleton_vs_full_check,
    steenrod_stability_check, DiagramCaps, DiagramMode,
};
use crate::series::{series_a4x, series_sylow_alt_pipeline, PowerSeries};
use crate::unstable::{gysin_dims, sylow_power_of_two_module, sylow_symmetric_module, tau};

/// Identifier, title and time budget of one criterion.
#[derive(Clone, Copy, Debug)]
pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub budget: Duration,
}

pub const CRITERIA: [Criterion; 9] = [
    Criterion {
        id: 1,
        title: "Legendre identity nu2(n!) = n - alpha(n), n <= 200",
        budget: Duration::from_secs(1),
    },
    Criterion {
        id: 2,
        title: "Sylow subgroup orders",
        budget: Duration::from_secs(30),
    },
    Criterion {
        id: 3,
        title: "pipeline and A4X series values",
        budget: Duration::from_secs(1),
    },
    Criterion {
        id: 4,
        title: "module dimensions agree with the series recursion",
        budget: Duration::from_secs(120),
    },
    Criterion {
        id: 5,
        title: "Steenrod identities on the S8-Sylow model",
        budget: Duration::from_secs(120),
    },
    Criterion {
        id: 6,
        title: "Quillen limit cross-validation",
        budget: Duration::from_secs(600),
    },
    Criterion {
        id: 7,
        title: "dihedral limits, closed form and series agree",
        budget: Duration::from_secs(60),
    },
    Criterion {
        id: 8,
        title: "alpha isomorphisms and the H4 Sylow subgroup",
        budget: Duration::from_secs(60),
    },
    Criterion {
        id: 9,
        title: "limits are stable under Steenrod squares",
        budget: Duration::from_secs(120),
    },
];

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub criterion: Criterion,
    pub passed: bool,
    /// Failed checks, or a short summary when everything held.
    pub detail: String,
    pub elapsed: Duration,
}

impl CriterionResult {
    /// `PASS [3] title (0.01 s) detail`.
    #[must_use]
    pub fn line(&self) -> String {
        format!(
            "{} [{}] {} ({:.2} s / {} s) {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.criterion.id,
            self.criterion.title,
            self.elapsed.as_secs_f64(),
            self.criterion.budget.as_secs(),
            self.detail
        )
    }
}

/// Collects failed checks.
#[derive(Default)]
struct Checks {
    failures: Vec<String>,
    count: usize,
}

impl Checks {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.count += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, got: T, want: T, what: &str) {
        self.count += 1;
        if got != want {
            self.failures.push(format!("{what}: got {got:?}, want {want:?}"));
        }
    }

    fn result(&mut self, r: Result<bool>, what: &str) {
        match r {
            Ok(ok) => self.check(ok, || what.to_string()),
            Err(e) => {
                self.count += 1;
                self.failures.push(format!("{what}: {e}"));
            }
        }
    }
}

/// Optional cap on the degree ranges of the criteria, for quick runs.
#[derive(Clone, Copy, Debug, Default)]
pub struct AcceptanceConfig {
    pub max_degree: Option<usize>,
}

impl AcceptanceConfig {
    fn degree(&self, pinned: usize) -> usize {
        self.max_degree.map_or(pinned, |m| m.min(pinned))
    }
}

fn ints(s: &PowerSeries, upto: usize) -> Vec<usize> {
    (0..=upto)
        .map(|n| usize::try_from(s.coeff(n)).expect("series coefficient fits usize"))
        .collect()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn criterion_1(c: &mut Checks, _: AcceptanceConfig) -> Result<()> {
    for n in 1..=200u64 {
        let direct: u64 = (1..=n).map(|k| u64::from(k.trailing_zeros())).sum();
        let alpha = u64::from(n.count_ones());
        let (nu, a) = nu2_factorial(n);
        c.check(nu == direct && a == alpha && direct == n - alpha, || {
            format!("n={n}: direct {direct}, alpha {alpha}, library ({nu}, {a})")
        });
    }
    Ok(())
}

fn criterion_2(c: &mut Checks, _: AcceptanceConfig) -> Result<()> {
    for m in 0..=4u32 {
        let g = sylow_symmetric(1 << m, DEFAULT_MAX_ORDER)?;
        let want = 1u128 << ((1u32 << m) - 1);
        c.eq(g.order(), want, &format!("|S_{}| structural", 1 << m));
        c.eq(g.elements().len() as u128, want, &format!("|S_{}| enumerated", 1 << m));
    }
    for n in [4usize, 6, 8] {
        let s = sylow_symmetric(n, DEFAULT_MAX_ORDER)?;
        let a = sylow_alternating(n, DEFAULT_MAX_ORDER)?;
        c.eq(a.elements().len() as u128 * 2, s.order(), &format!("|A_{n}| enumerated"));
        c.check(a.elements().iter().all(|p| !p.is_odd()), || format!("A_{n} contains odd elements"));
    }
    let s16 = sylow_symmetric(16, DEFAULT_MAX_ORDER)?;
    let a16 = sylow_alternating(16, DEFAULT_MAX_ORDER)?;
    c.eq(a16.order() * 2, s16.order(), "|A_16| structural");
    c.check(a16.generators().iter().all(|p| !p.is_odd()), || "A_16 has an odd generator".into());
    Ok(())
}

fn criterion_3(c: &mut Checks, _: AcceptanceConfig) -> Result<()> {
    for m in 2..=6u32 {
        let p = series_sylow_alt_pipeline(m, 20)?;
        c.eq(p.a.coeff(1), BigInt::from(m), &format!("A_{m}[1]"));
        if m >= 3 {
            let m3 = i64::from(m).pow(3);
            c.eq(p.a.coeff(2), BigInt::from((m3 - i64::from(m) + 18) / 6), &format!("A_{m}[2]"));
        }
    }
    let a3 = series_sylow_alt_pipeline(3, 20)?.a;
    c.eq(ints(&a3, 2), vec![1, 3, 7], "A_3 through degree 2");
    c.eq(series_sylow_alt_pipeline(4, 20)?.a.coeff(2), BigInt::from(13), "A_4[2]");
    let p2 = PowerSeries::inverse_one_minus_t_pow(2, 20);
    c.eq(series_a4x(&p2)?.coeff(2), BigInt::from(15), "A4X(1/(1-t)^2)[2]");
    let p1 = PowerSeries::inverse_one_minus_t_pow(1, 20);
    c.eq(series_a4x(&p1)?, a3, "A4X(1/(1-t)) = A_3 through degree 20");
    Ok(())
}

fn criterion_4(c: &mut Checks, cfg: AcceptanceConfig) -> Result<()> {
    let top = cfg.degree(10);
    for m in 1..=3u32 {
        let module = sylow_power_of_two_module(m, top + 1)?;
        let p = series_sylow_alt_pipeline(m, top)?;
        c.eq(module.dims()[..=top].to_vec(), ints(&p.s, top), &format!("dims S_{m}"));
        c.eq(tau(&module)?.dims().to_vec(), ints(&p.t, top), &format!("tau dims T_{m}"));
        c.eq(gysin_dims(&module)?, ints(&p.a, top), &format!("gysin dims A_{m}"));
    }
    Ok(())
}

fn criterion_5(c: &mut Checks, cfg: AcceptanceConfig) -> Result<()> {
    let top = cfg.degree(10);
    let m = sylow_symmetric_module(8, top)?;
    for (name, violations) in [
        ("instability", m.check_instability()),
        ("Adem", m.check_adem()),
        ("Sq/u compatibility", m.check_u_compatibility()),
    ] {
        c.check(violations.is_empty(), || format!("{name}: {}", violations.join("; ")));
    }
    c.result(m.check_reduced(top / 2), "Sq_0 injective through half the top degree");
    Ok(())
}

fn criterion_6_groups() -> Result<Vec<FiniteGroup>> {
    ["sylow-sym:4", "elem:1", "elem:2", "elem:3", "sylow-sym:8", "sylow-alt:8"]
        .iter()
        .map(|s| parse_group_spec(s, DEFAULT_MAX_ORDER))
        .collect()
}

fn skeleton_dims(g: &FiniteGroup, top: usize) -> Result<Vec<usize>> {
    Ok(limit_dims(&build_quillen_diagram(g, DiagramMode::Skeleton, DiagramCaps::default())?, top).dims)
}

fn criterion_6(c: &mut Checks, cfg: AcceptanceConfig) -> Result<()> {
    let top8 = cfg.degree(8);
    let top6 = cfg.degree(6);
    let s4 = sylow_symmetric(4, DEFAULT_MAX_ORDER)?;
    c.eq(skeleton_dims(&s4, top8)?, (1..=top8 + 1).collect(), "L(S_4)");
    for k in 1..=3 {
        let e = elementary_abelian_group(k, DEFAULT_MAX_ORDER)?;
        let want: Vec<usize> = (0..=top8).map(|d| binomial(d + k - 1, k - 1)).collect();
        c.eq(skeleton_dims(&e, top8)?, want, &format!("L((Z/2)^{k})"));
    }
    let s8 = sylow_symmetric(8, DEFAULT_MAX_ORDER)?;
    let model = sylow_symmetric_module(8, top6)?;
    c.eq(skeleton_dims(&s8, top6)?, model.dims().to_vec(), "L(S_8) vs quadratic module");
    let a8 = sylow_alternating(8, DEFAULT_MAX_ORDER)?;
    let a3 = series_sylow_alt_pipeline(3, top6)?.a;
    c.eq(skeleton_dims(&a8, top6)?, ints(&a3, top6), "L(A_8) vs A_3");
    for spec in [
        "sylow-sym:4",
        "sylow-sym:6",
        "elem:1",
        "elem:2",
        "elem:3",
        "cyclic:4",
        "q8",
        "dihedral:8",
        "dihedral:16",
        "sylow-alt:8",
        "h4-sylow",
    ] {
        let g = parse_group_spec(spec, DEFAULT_MAX_ORDER)?;
        c.result(
            skeleton_vs_full_check(&g, top6, 64, DiagramCaps::default()),
            &format!("skeleton = full on {spec}"),
        );
    }
    Ok(())
}

fn criterion_7(c: &mut Checks, cfg: AcceptanceConfig) -> Result<()> {
    let top = cfg.degree(10);
    let klein = PowerSeries::inverse_one_minus_t_pow(2, top);
    for (n, want) in [
        (4usize, ints(&klein, top)),
        (8, ints(&klein, top)),
        (3, vec![1; top + 1]),
        (6, ints(&klein, top)),
    ] {
        let g = dihedral_group(2 * n, DEFAULT_MAX_ORDER)?;
        c.eq(skeleton_dims(&g, top)?, want.clone(), &format!("L(D_{})", 2 * n));
        c.eq(dihedral_closed_form(n, top)?.dims, want, &format!("closed form D_{}", 2 * n));
    }
    Ok(())
}

fn criterion_8(c: &mut Checks, _: AcceptanceConfig) -> Result<()> {
    c.result(alpha_iso_check(2), "alpha_2");
    c.result(alpha_iso_check(3), "alpha_3");
    let h = h4_sylow();
    c.eq(h.order(), 64, "|H4 Sylow|");
    c.eq(h.elements().len(), 64, "|H4 Sylow| enumerated");
    let klein = sylow_alternating(4, DEFAULT_MAX_ORDER)?;
    c.check(h.elements().iter().all(|x| klein.contains(&h4_model_image(x).top)), || {
        "projection of H4 Sylow leaves A_4".into()
    });
    c.result(h4_isomorphism_check(), "H4 Sylow isomorphic to A_8 Sylow");
    for n in 1..=64 {
        c.eq(wreath_index_valuation(n), 0, &format!("wreath index valuation n={n}"));
    }
    Ok(())
}

fn criterion_9(c: &mut Checks, cfg: AcceptanceConfig) -> Result<()> {
    let top = cfg.degree(6);
    for g in criterion_6_groups()? {
        let d = build_quillen_diagram(&g, DiagramMode::Skeleton, DiagramCaps::default())?;
        let t = limit_with_basis(&d, top);
        let v = steenrod_stability_check(&t, &d, top)?;
        c.check(v.is_empty(), || format!("{}: {}", g.label(), v.join("; ")));
    }
    Ok(())
}

/// Runs one criterion by id (1 to 9).
#[must_use]
pub fn run_criterion(id: u8, config: AcceptanceConfig) -> Option<CriterionResult> {
    let criterion = *CRITERIA.iter().find(|c| c.id == id)?;
    let run: fn(&mut Checks, AcceptanceConfig) -> Result<()> = match id {
        1 => criterion_1,
        2 => criterion_2,
        3 => criterion_3,
        4 => criterion_4,
        5 => criterion_5,
        6 => criterion_6,
        7 => criterion_7,
        8 => criterion_8,
        9 => criterion_9,
        _ => return None,
    };
    let start = Instant::now();
    let mut checks = Checks::default();
    if let Err(e) = run(&mut checks, config) {
        checks.failures.push(format!("error: {e}"));
    }
    let elapsed = start.elapsed();
    if elapsed > criterion.budget {
        checks.failures.push(format!("over budget: {:.2} s", elapsed.as_secs_f64()));
    }
    let passed = checks.failures.is_empty();
    let detail = if passed {
        format!("{} checks", checks.count)
    } else {
        checks.failures.join(" | ")
    };
    Some(CriterionResult {
        criterion,
        passed,
        detail,
        elapsed,
    })
}

#[must_use]
pub fn run_all(config: AcceptanceConfig) -> Vec<CriterionResult> {
    CRITERIA
        .iter()
        .filter_map(|c| run_criterion(c.id, config))
        .collect()
}
