//! Explicit semidirect-product decompositions `S_{2^m} ≅ S_{2^{m−1}} ⋉ (ℤ/2)^{2^{m−1}}`
//! and the comparison of the `W(H₄)` Sylow subgroup with the Sylow subgroup of `𝔄₈`.

use std::collections::{HashMap, HashSet};

use super::{sylow_alternating, sylow_symmetric, FiniteGroup, Permutation};
use crate::error::{Error, Result};

/// An element `(π, w)` of `P ⋉ 𝔽₂^k` where `P` permutes the `k` coordinates.
/// The product is `(π₁, w₁)(π₂, w₂) = (π₁π₂, w₁ + π₁·w₂)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SemidirectElement {
    pub top: Permutation,
    pub vector: u64,
}

fn act(p: &Permutation, w: u64) -> u64 {
    (0..p.degree())
        .filter(|&b| w >> b & 1 == 1)
        .fold(0, |acc, b| acc | 1 << p.apply(b))
}

impl SemidirectElement {
    #[must_use]
    pub fn mul(&self, other: &SemidirectElement) -> SemidirectElement {
        SemidirectElement {
            top: self.top.compose(&other.top),
            vector: self.vector ^ act(&self.top, other.vector),
        }
    }
}

fn cycles(degree: usize, cs: &[&[usize]]) -> Permutation {
    Permutation::from_cycles(degree, cs).expect("hard-coded cycles are valid")
}

/// `true` when `image` is an injective homomorphism on the enumerated group.
fn is_injective_hom(g: &FiniteGroup, image: &[SemidirectElement]) -> bool {
    let distinct: HashSet<&SemidirectElement> = image.iter().collect();
    if distinct.len() != image.len() {
        return false;
    }
    (0..image.len()).all(|x| {
        (0..image.len()).all(|y| image[g.product(x, y)] == image[x].mul(&image[y]))
    })
}

struct AlphaMap {
    source: FiniteGroup,
    image: Vec<SemidirectElement>,
}

/// Builds `α_m`. The normal subgroup is spanned, in each block of four points, by
/// `(1 3)(2 4)` and `(1 4)(2 3)`; the complement is generated by the transposition
/// `(1 2)` in each block together with the block permutations of `S_{2^{m−2}}`.
fn alpha_map(m: u32) -> Result<AlphaMap> {
    let n = 1usize << m;
    let k = n / 2;
    let blocks = n / 4;
    let source = sylow_symmetric(n, u128::MAX)?;

    let mut basis = Vec::with_capacity(k);
    for i in 0..blocks {
        let p = 4 * i;
        basis.push(cycles(n, &[&[p + 1, p + 3], &[p + 2, p + 4]]));
        basis.push(cycles(n, &[&[p + 1, p + 4], &[p + 2, p + 3]]));
    }
    let mut normal: HashMap<Permutation, u64> = HashMap::from([(Permutation::identity(n), 0)]);
    for (b, x) in basis.iter().enumerate() {
        let old: Vec<(Permutation, u64)> = normal.iter().map(|(p, &w)| (p.clone(), w)).collect();
        for (p, w) in old {
            normal.insert(p.compose(x), w | 1 << b);
        }
    }
    if normal.len() != 1 << k {
        return Err(Error::Invariant("block Klein subgroups are not independent".into()));
    }

    let mut complement_gens: Vec<Permutation> =
        (0..blocks).map(|i| cycles(n, &[&[4 * i + 1, 4 * i + 2]])).collect();
    let top = sylow_symmetric(blocks, u128::MAX)?;
    for s in top.generators() {
        let images: Vec<usize> = (0..n).map(|x| 4 * s.apply(x / 4) + x % 4).collect();
        complement_gens.push(Permutation::from_images(&images)?);
    }
    let complement = FiniteGroup::generated("complement", n, complement_gens, u128::MAX)?;
    if complement.order() * (1u128 << k) != source.order() {
        return Err(Error::Invariant("complement has the wrong order".into()));
    }

    let index_of_basis: HashMap<&Permutation, usize> = basis.iter().enumerate().map(|(b, p)| (p, b)).collect();
    let mut top_of = HashMap::new();
    for c in complement.elements() {
        let mut images = vec![0usize; k];
        for (b, x) in basis.iter().enumerate() {
            let y = x.conjugate_by(c);
            images[b] = *index_of_basis
                .get(&y)
                .ok_or_else(|| Error::Invariant("complement does not permute the basis".into()))?;
        }
        top_of.insert(c.clone(), Permutation::from_images(&images)?);
    }

    let mut image = Vec::with_capacity(source.elements().len());
    for g in source.elements() {
        let mut found = None;
        for c in complement.elements() {
            if let Some(&w) = normal.get(&g.compose(&c.inverse())) {
                if found.is_some() {
                    return Err(Error::Invariant("decomposition g = w·c is not unique".into()));
                }
                found = Some(SemidirectElement {
                    top: top_of[c].clone(),
                    vector: w,
                });
            }
        }
        image.push(found.ok_or_else(|| Error::Invariant(format!("{g} has no decomposition")))?);
    }
    Ok(AlphaMap { source, image })
}

/// Verifies the isomorphism `α_m: S_{2^m} → S_{2^{m−1}} ⋉ (ℤ/2)^{2^{m−1}}` for `m ∈ {2, 3}`:
/// the image of the complement is exactly `S_{2^{m−1}}` on its standard points, the map is
/// a bijective homomorphism, signatures agree through the projection, and even elements
/// go bijectively onto `A_{2^{m−1}} ⋉ (ℤ/2)^{2^{m−1}}`.
pub fn alpha_iso_check(m: u32) -> Result<bool> {
    if !(2..=3).contains(&m) {
        return Err(Error::Unsupported(format!("alpha_iso_check is implemented for m in {{2, 3}}, got {m}")));
    }
    let AlphaMap { source, image } = alpha_map(m)?;
    let k = 1usize << (m - 1);
    let target_top = sylow_symmetric(k, u128::MAX)?;
    let tops: HashSet<&Permutation> = image.iter().map(|e| &e.top).collect();
    let expected_tops: HashSet<&Permutation> = target_top.elements().iter().collect();
    if tops != expected_tops {
        return Ok(false);
    }
    let target_order = target_top.order() << k;
    if source.order() != target_order || !is_injective_hom(&source, &image) {
        return Ok(false);
    }
    if source
        .elements()
        .iter()
        .zip(&image)
        .any(|(g, e)| g.is_odd() != e.top.is_odd())
    {
        return Ok(false);
    }
    let alt_top = sylow_alternating(k, u128::MAX)?;
    let even_images: HashSet<&SemidirectElement> = source
        .elements()
        .iter()
        .zip(&image)
        .filter(|(g, _)| !g.is_odd())
        .map(|(_, e)| e)
        .collect();
    let alt_order = alt_top.order() << k;
    Ok(even_images.len() as u128 == alt_order && even_images.iter().all(|e| alt_top.contains(&e.top)))
}

/// Sends a signed permutation of the four quaternion axes (realized on 8 points as in
/// [`super::h4_sylow`]) to `(π, w)` with `π` the induced permutation of the axes and
/// `w` marking the axes whose image carries a minus sign.
#[must_use]
pub fn h4_model_image(h: &Permutation) -> SemidirectElement {
    assert_eq!(h.degree(), 8, "signed permutations of four axes act on 8 points");
    let targets: Vec<usize> = (0..4).map(|a| h.apply(a) % 4).collect();
    let vector = (0..4)
        .filter(|&a| h.apply(a) >= 4)
        .fold(0u64, |acc, a| acc | 1 << targets[a]);
    SemidirectElement {
        top: Permutation::from_images(&targets).expect("axis permutation"),
        vector,
    }
}

/// Verifies that the `W(H₄)` Sylow subgroup and the Sylow subgroup of `𝔄₈` both map
/// bijectively and homomorphically onto the model `A₄ ⋉ {±1}⁴`, and that the composite
/// bijection between the two permutation groups is a homomorphism.
pub fn h4_isomorphism_check() -> Result<bool> {
    let h4 = super::h4_sylow();
    let klein = sylow_alternating(4, u128::MAX)?;
    let h4_image: Vec<SemidirectElement> = h4.elements().iter().map(h4_model_image).collect();
    if !is_injective_hom(&h4, &h4_image) || h4_image.iter().any(|e| !klein.contains(&e.top)) {
        return Ok(false);
    }
    if h4.order() != klein.order() << 4 {
        return Ok(false);
    }

    let AlphaMap { source, image } = alpha_map(3)?;
    let alt8 = sylow_alternating(8, u128::MAX)?;
    let by_model: HashMap<&SemidirectElement, &Permutation> = source
        .elements()
        .iter()
        .zip(&image)
        .filter(|(g, _)| alt8.contains(g))
        .map(|(g, e)| (e, g))
        .collect();
    if by_model.len() as u128 != alt8.order() {
        return Ok(false);
    }
    let mut psi = Vec::with_capacity(h4_image.len());
    for e in &h4_image {
        match by_model.get(e) {
            Some(&g) => psi.push(alt8.index_of(g).expect("even element of S_8")),
            None => return Ok(false),
        }
    }
    let distinct: HashSet<usize> = psi.iter().copied().collect();
    if distinct.len() != psi.len() {
        return Ok(false);
    }
    Ok((0..psi.len()).all(|x| (0..psi.len()).all(|y| psi[h4.product(x, y)] == alt8.product(psi[x], psi[y]))))
}
