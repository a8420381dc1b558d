//! Permutation groups small enough to enumerate, the Sylow 2-subgroups of symmetric and
//! alternating groups, and their elementary abelian 2-subgroups.
//!
//! Points are `1..=k` in the public interface (cycle notation, generator files) and
//! `0..k` internally.

mod alpha;
mod constructions;
mod spec;
mod subgroups;

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub use alpha::{alpha_iso_check, h4_isomorphism_check, h4_model_image, SemidirectElement};
pub use constructions::{
    alternating_group, cyclic_group, dihedral_group, direct_product, elementary_abelian_group,
    h4_sylow, nu2_factorial, quaternion_group, sylow_alternating, sylow_symmetric,
    symmetric_group, trivial_group, wreath_index_valuation, wreath_with_z2,
};
pub use spec::{parse_group_spec, GeneratorFile};
pub use subgroups::{
    conjugacy_classes, conjugate_subgroup, conjugation_morphisms, elementary_abelian_subgroups, induced_map,
    ConjugationMorphism, ElementaryAbelianSubgroup, SubgroupClass,
};

/// Default cap on the order of groups that may be built.
pub const DEFAULT_MAX_ORDER: u128 = 1 << 15;

/// Largest supported number of points.
pub const MAX_DEGREE: usize = 255;

/// A bijection of `{0, …, k−1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    #[must_use]
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= MAX_DEGREE, "degree {degree} exceeds {MAX_DEGREE}");
        Self {
            images: (0..degree).map(|i| i as u8).collect(),
        }
    }

    /// Builds a permutation from 0-based images.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let k = images.len();
        if k > MAX_DEGREE {
            return Err(Error::Unsupported(format!("degree {k} exceeds {MAX_DEGREE}")));
        }
        let mut seen = vec![false; k];
        for &x in images {
            if x >= k || seen[x] {
                return Err(Error::Parse(format!("{images:?} is not a bijection of 0..{k}")));
            }
            seen[x] = true;
        }
        Ok(Self {
            images: images.iter().map(|&x| x as u8).collect(),
        })
    }

    /// Builds a permutation from 1-based images, as written in generator files.
    pub fn from_images_one_based(images: &[usize]) -> Result<Self> {
        let shifted = images
            .iter()
            .map(|&x| {
                x.checked_sub(1)
                    .ok_or_else(|| Error::Parse("point 0 in a 1-based image list".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_images(&shifted)
    }

    /// Builds a permutation of `degree` points from disjoint 1-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (pos, &p) in cycle.iter().enumerate() {
                if p == 0 || p > degree || touched[p - 1] {
                    return Err(Error::Parse(format!("bad cycle {cycle:?} on {degree} points")));
                }
                touched[p - 1] = true;
                images[p - 1] = cycle[(pos + 1) % cycle.len()] - 1;
            }
        }
        Self::from_images(&images)
    }

    #[must_use]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 0-based point `i`.
    #[must_use]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    #[must_use]
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    #[must_use]
    pub fn images_one_based(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    /// The composite `self ∘ other`: apply `other` first.
    #[must_use]
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in product");
        Permutation {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    #[must_use]
    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    /// `g ∘ self ∘ g⁻¹`.
    #[must_use]
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.compose(self).compose(&g.inverse())
    }

    #[must_use]
    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Disjoint cycles of length at least two, 0-based, each starting at its least point.
    #[must_use]
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// `true` for odd permutations.
    #[must_use]
    pub fn is_odd(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 1
    }

    #[must_use]
    pub fn order(&self) -> usize {
        fn gcd(a: usize, b: usize) -> usize {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        self.cycles().iter().fold(1, |acc, c| acc / gcd(acc, c.len()) * c.len())
    }

    /// Moves the permutation onto points `offset..offset + degree` of a larger set.
    #[must_use]
    pub fn embed(&self, total: usize, offset: usize) -> Permutation {
        assert!(offset + self.degree() <= total, "embedding out of range");
        let mut images: Vec<u8> = (0..total).map(|i| i as u8).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[offset + i] = (offset + x as usize) as u8;
        }
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Debug)]
struct Enumeration {
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

/// A permutation group given by generators, with its order known up front and its
/// elements enumerated on first use in sorted order (the identity is always index 0).
#[derive(Debug)]
pub struct FiniteGroup {
    label: String,
    degree: usize,
    generators: Vec<Permutation>,
    order: u128,
    enumeration: OnceLock<Enumeration>,
}

impl Clone for FiniteGroup {
    fn clone(&self) -> Self {
        let enumeration = OnceLock::new();
        if let Some(e) = self.enumeration.get() {
            let _ = enumeration.set(Enumeration {
                elements: e.elements.clone(),
                index: e.index.clone(),
            });
        }
        Self {
            label: self.label.clone(),
            degree: self.degree,
            generators: self.generators.clone(),
            order: self.order,
            enumeration,
        }
    }
}

impl FiniteGroup {
    /// A group whose order is known from its construction. Fails if the order exceeds `cap`.
    pub(crate) fn with_known_order(
        label: impl Into<String>,
        degree: usize,
        generators: Vec<Permutation>,
        order: u128,
        cap: u128,
    ) -> Result<Self> {
        let label = label.into();
        if order > cap {
            return Err(Error::cap(format!("order {order} of {label}"), cap));
        }
        Ok(Self {
            label,
            degree,
            generators: Self::clean_generators(degree, generators),
            order,
            enumeration: OnceLock::new(),
        })
    }

    /// The group generated by `generators`, enumerated immediately.
    pub fn generated(
        label: impl Into<String>,
        degree: usize,
        generators: Vec<Permutation>,
        cap: u128,
    ) -> Result<Self> {
        let label = label.into();
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DimensionMismatch(format!(
                "generator of degree {} in a group on {degree} points",
                g.degree()
            )));
        }
        let generators = Self::clean_generators(degree, generators);
        let enumeration = enumerate(degree, &generators, cap)
            .map_err(|_| Error::cap(format!("order of {label}"), cap))?;
        let order = enumeration.elements.len() as u128;
        let cell = OnceLock::new();
        let _ = cell.set(enumeration);
        Ok(Self {
            label,
            degree,
            generators,
            order,
            enumeration: cell,
        })
    }

    fn clean_generators(degree: usize, generators: Vec<Permutation>) -> Vec<Permutation> {
        let mut seen = HashSet::new();
        let cleaned: Vec<Permutation> = generators
            .into_iter()
            .filter(|g| !g.is_identity() && seen.insert(g.clone()))
            .collect();
        debug_assert!(cleaned.iter().all(|g| g.degree() == degree));
        cleaned
    }

    #[must_use]
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn set_label(&mut self, label: impl Into<String>) {
        self.label = label.into();
    }

    #[must_use]
    pub fn degree(&self) -> usize {
        self.degree
    }

    #[must_use]
    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    #[must_use]
    pub fn order(&self) -> u128 {
        self.order
    }

    fn enumeration(&self) -> &Enumeration {
        self.enumeration.get_or_init(|| {
            let e = enumerate(self.degree, &self.generators, self.order)
                .expect("constructed order matches the generated subgroup");
            assert_eq!(
                e.elements.len() as u128,
                self.order,
                "{}: structural order disagrees with enumeration",
                self.label
            );
            e
        })
    }

    /// All elements in sorted order.
    #[must_use]
    pub fn elements(&self) -> &[Permutation] {
        &self.enumeration().elements
    }

    #[must_use]
    pub fn element(&self, i: usize) -> &Permutation {
        &self.enumeration().elements[i]
    }

    /// Position of `p` in [`FiniteGroup::elements`], if it belongs to the group.
    #[must_use]
    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.enumeration().index.get(p).copied()
    }

    #[must_use]
    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.degree && self.index_of(p).is_some()
    }

    /// Index of the product `elements[a] ∘ elements[b]`.
    #[must_use]
    pub fn product(&self, a: usize, b: usize) -> usize {
        let p = self.element(a).compose(self.element(b));
        self.index_of(&p).expect("group is closed under products")
    }

    /// Index of `g x g⁻¹` for element indices `g`, `x`.
    #[must_use]
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        let p = self.element(x).conjugate_by(self.element(g));
        self.index_of(&p).expect("group is closed under conjugation")
    }

    /// Indices of elements of order two.
    #[must_use]
    pub fn involutions(&self) -> Vec<usize> {
        self.elements()
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_identity() && p.compose(p).is_identity())
            .map(|(i, _)| i)
            .collect()
    }

    #[must_use]
    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|a| self.generators.iter().all(|b| a.compose(b) == b.compose(a)))
    }

    /// Indices of central elements.
    #[must_use]
    pub fn center(&self) -> Vec<usize> {
        self.elements()
            .iter()
            .enumerate()
            .filter(|(_, z)| self.generators.iter().all(|g| g.compose(z) == z.compose(g)))
            .map(|(i, _)| i)
            .collect()
    }
}

fn enumerate(degree: usize, generators: &[Permutation], cap: u128) -> std::result::Result<Enumeration, ()> {
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for s in generators {
            let y = x.compose(s);
            if seen.insert(y.clone()) {
                if seen.len() as u128 > cap {
                    return Err(());
                }
                queue.push_back(y);
            }
        }
    }
    let mut elements: Vec<Permutation> = seen.into_iter().collect();
    elements.sort();
    let index = elements.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    Ok(Enumeration { elements, index })
}
