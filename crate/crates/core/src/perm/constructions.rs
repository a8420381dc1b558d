use super::{FiniteGroup, Permutation};
use crate::error::{Error, Result};

fn cycles(degree: usize, cs: &[&[usize]]) -> Permutation {
    Permutation::from_cycles(degree, cs).expect("hard-coded cycles are valid")
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// The group with one element acting on `degree` points.
pub fn trivial_group(degree: usize) -> FiniteGroup {
    FiniteGroup::with_known_order(format!("trivial:{degree}"), degree, Vec::new(), 1, 1)
        .expect("trivial group fits any cap")
}

/// `(ν₂(n!), α(n))` where `α(n)` is the number of ones in the binary expansion of `n`.
#[must_use]
pub fn nu2_factorial(n: u64) -> (u64, u64) {
    let alpha = u64::from(n.count_ones());
    (n - alpha, alpha)
}

/// `ν₂` of the index of the hyperoctahedral group `𝔖_n ⋉ (𝔖₂)ⁿ` in `𝔖_{2n}`.
#[must_use]
pub fn wreath_index_valuation(n: u64) -> i64 {
    let (top, _) = nu2_factorial(2 * n);
    let (bottom, _) = nu2_factorial(n);
    top as i64 - n as i64 - bottom as i64
}

/// The full symmetric group on `n` points.
pub fn symmetric_group(n: usize, cap: u128) -> Result<FiniteGroup> {
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(cycles(n, &[&[1, 2]]));
        let long: Vec<usize> = (1..=n).collect();
        gens.push(cycles(n, &[&long]));
    }
    FiniteGroup::with_known_order(format!("sym:{n}"), n, gens, factorial(n), cap)
}

/// The alternating group on `n` points, generated by the 3-cycles `(1 2 k)`.
pub fn alternating_group(n: usize, cap: u128) -> Result<FiniteGroup> {
    let gens = (3..=n).map(|k| cycles(n, &[&[1, 2, k]])).collect();
    let order = if n >= 2 { factorial(n) / 2 } else { 1 };
    FiniteGroup::with_known_order(format!("alt:{n}"), n, gens, order, cap)
}

/// The cyclic group of order `n` acting regularly on `n` points.
pub fn cyclic_group(n: usize, cap: u128) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::Unsupported("cyclic group of order 0".into()));
    }
    let long: Vec<usize> = (1..=n).collect();
    let gens = if n >= 2 { vec![cycles(n, &[&long])] } else { Vec::new() };
    FiniteGroup::with_known_order(format!("cyclic:{n}"), n, gens, n as u128, cap)
}

/// `(ℤ/2)^k` acting on `2k` points by the transpositions `(2i−1 2i)`.
pub fn elementary_abelian_group(k: usize, cap: u128) -> Result<FiniteGroup> {
    let degree = 2 * k;
    let gens = (0..k).map(|i| cycles(degree, &[&[2 * i + 1, 2 * i + 2]])).collect();
    FiniteGroup::with_known_order(format!("elem:{k}"), degree, gens, 1u128 << k, cap)
}

/// Disjoint union of permutation actions: factor `i` acts on its own block of points,
/// blocks placed left to right.
pub fn direct_product(label: impl Into<String>, factors: &[FiniteGroup], cap: u128) -> Result<FiniteGroup> {
    let degree: usize = factors.iter().map(FiniteGroup::degree).sum();
    if degree > super::MAX_DEGREE {
        return Err(Error::Unsupported(format!("degree {degree} exceeds {}", super::MAX_DEGREE)));
    }
    let mut gens = Vec::new();
    let mut offset = 0;
    let mut order: u128 = 1;
    for f in factors {
        gens.extend(f.generators().iter().map(|g| g.embed(degree, offset)));
        offset += f.degree();
        order = order
            .checked_mul(f.order())
            .ok_or_else(|| Error::cap("direct product order", u128::MAX))?;
    }
    FiniteGroup::with_known_order(label, degree, gens, order, cap)
}

/// `𝔖₂ ⋉ (G × G)` acting on two copies of the points of `g`: copy `i ∈ {1, 2}` of
/// point `k` is numbered `k + (i−1)·deg(g)`.
pub fn wreath_with_z2(g: &FiniteGroup, cap: u128) -> Result<FiniteGroup> {
    let k = g.degree();
    let degree = 2 * k;
    if degree > super::MAX_DEGREE {
        return Err(Error::Unsupported(format!("degree {degree} exceeds {}", super::MAX_DEGREE)));
    }
    let mut gens: Vec<Permutation> = g.generators().iter().map(|s| s.embed(degree, 0)).collect();
    let swap: Vec<usize> = (0..degree).map(|i| (i + k) % degree).collect();
    gens.push(Permutation::from_images(&swap)?);
    let order = g
        .order()
        .checked_mul(g.order())
        .and_then(|o| o.checked_mul(2))
        .ok_or_else(|| Error::cap("wreath product order", u128::MAX))?;
    FiniteGroup::with_known_order(format!("S2 wr {}", g.label()), degree, gens, order, cap)
}

/// The Sylow 2-subgroup `S_n` of `𝔖_n`: for `n = 2^m` the iterated wreath product
/// `𝔖₂ ≀ S_{2^{m−1}}`, and in general the product over the binary digits of `n`,
/// largest block first.
pub fn sylow_symmetric(n: usize, cap: u128) -> Result<FiniteGroup> {
    let (nu2, _) = nu2_factorial(n as u64);
    let order = 1u128
        .checked_shl(nu2 as u32)
        .filter(|_| nu2 < 127)
        .ok_or_else(|| Error::cap(format!("order of sylow-sym:{n}"), cap))?;
    if order > cap {
        return Err(Error::cap(format!("order 2^{nu2} of sylow-sym:{n}"), cap));
    }
    let mut factors = Vec::new();
    for m in (0..usize::BITS).rev() {
        if n >> m & 1 == 1 {
            let mut block = trivial_group(1);
            for _ in 0..m {
                block = wreath_with_z2(&block, u128::MAX)?;
            }
            factors.push(block);
        }
    }
    let mut g = direct_product(format!("sylow-sym:{n}"), &factors, cap)?;
    debug_assert_eq!(g.order(), order);
    g.set_label(format!("sylow-sym:{n}"));
    Ok(g)
}

/// The Sylow 2-subgroup `A_n` of `𝔄_n`: the even elements of [`sylow_symmetric`].
/// Generators come from Schreier's lemma for the transversal `{1, t}` with `t` an odd
/// generator.
pub fn sylow_alternating(n: usize, cap: u128) -> Result<FiniteGroup> {
    let s = sylow_symmetric(n, cap.saturating_mul(2))?;
    let label = format!("sylow-alt:{n}");
    let Some(t) = s.generators().iter().find(|g| g.is_odd()).cloned() else {
        return FiniteGroup::with_known_order(label, n, s.generators().to_vec(), s.order(), cap);
    };
    let t_inv = t.inverse();
    let mut gens = Vec::new();
    for g in s.generators() {
        if g.is_odd() {
            gens.push(g.compose(&t_inv));
            gens.push(t.compose(g));
        } else {
            gens.push(g.clone());
            gens.push(t.compose(g).compose(&t_inv));
        }
    }
    FiniteGroup::with_known_order(label, n, gens, s.order() / 2, cap)
}

/// The dihedral group of order `2n`. For `n ≥ 3` it acts on the vertices of an `n`-gon;
/// for `n ∈ {1, 2}`, where that action is not faithful, it acts regularly on `2n` points.
pub fn dihedral_group(two_n: usize, cap: u128) -> Result<FiniteGroup> {
    if two_n < 2 || two_n % 2 == 1 {
        return Err(Error::Unsupported(format!("dihedral order {two_n} must be even and positive")));
    }
    let n = two_n / 2;
    let label = format!("dihedral:{two_n}");
    let (degree, gens) = match n {
        1 => (2, vec![cycles(2, &[&[1, 2]])]),
        2 => (4, vec![cycles(4, &[&[1, 2], &[3, 4]]), cycles(4, &[&[1, 3], &[2, 4]])]),
        _ => {
            let rotation: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
            let reflection: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
            (
                n,
                vec![Permutation::from_images(&rotation)?, Permutation::from_images(&reflection)?],
            )
        }
    };
    FiniteGroup::with_known_order(label, degree, gens, two_n as u128, cap)
}

/// Signed permutation of the quaternion basis `(1, i, j, k)` given as
/// `e_a ↦ sign_a · e_{target_a}`, realized on 8 points: point `a` stands for `+e_a`
/// and point `a + 4` for `−e_a`.
fn signed_permutation(targets: [usize; 4], negative: [bool; 4]) -> Permutation {
    let mut images = [0usize; 8];
    for a in 0..4 {
        let plus = targets[a] + if negative[a] { 4 } else { 0 };
        images[a] = plus;
        images[a + 4] = (plus + 4) % 8;
    }
    Permutation::from_images(&images).expect("signed permutation is a bijection")
}

/// Left multiplication by `i` and by `j` on `ℍ` with basis `(1, i, j, k)`.
fn quaternion_left_multiplications() -> [Permutation; 2] {
    [
        // i·1 = i, i·i = −1, i·j = k, i·k = −j
        signed_permutation([1, 0, 3, 2], [false, true, false, true]),
        // j·1 = j, j·i = −k, j·j = −1, j·k = i
        signed_permutation([2, 3, 0, 1], [false, true, true, false]),
    ]
}

/// The quaternion group `Q₈` acting regularly on `{±1, ±i, ±j, ±k}`.
pub fn quaternion_group(cap: u128) -> Result<FiniteGroup> {
    FiniteGroup::with_known_order("q8", 8, quaternion_left_multiplications().to_vec(), 8, cap)
}

/// A Sylow 2-subgroup of the Coxeter group `W(H₄)`: the image of
/// `(𝔖₂ ⋉ (Q₈ × Q₈))/⟨(−1, −1)⟩` in `O₄(ℤ)` under `x ↦ q₁ x q̄₂` and `x ↦ x̄`,
/// acting on the 8 points `±e_a` of the signed coordinate axes of `ℍ`.
pub fn h4_sylow() -> FiniteGroup {
    let [left_i, left_j] = quaternion_left_multiplications();
    let gens = vec![
        left_i,
        left_j,
        // x ↦ x·ī: 1 ↦ −i, i ↦ 1, j ↦ k, k ↦ −j
        signed_permutation([1, 0, 3, 2], [true, false, false, true]),
        // x ↦ x·j̄: 1 ↦ −j, i ↦ −k, j ↦ 1, k ↦ i
        signed_permutation([2, 3, 0, 1], [true, true, false, false]),
        // x ↦ x̄
        signed_permutation([0, 1, 2, 3], [false, true, true, true]),
    ];
    FiniteGroup::with_known_order("h4-sylow", 8, gens, 64, 64).expect("order 64 fits")
}
