use std::collections::{HashMap, HashSet, VecDeque};

use super::FiniteGroup;
use crate::error::{Error, Result};
use crate::f2::{F2Matrix, F2Vector};

/// An elementary abelian 2-subgroup, described by indices into the parent group's
/// sorted element list.
///
/// The canonical form is the sorted member list. The basis is canonical too: scan the
/// members in order and keep each one not already in the span of those kept.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElementaryAbelianSubgroup {
    rank: usize,
    basis: Vec<usize>,
    members: Vec<usize>,
    masks: Vec<u64>,
}

impl ElementaryAbelianSubgroup {
    /// Builds the subgroup generated by commuting involutions, or fails if they do not
    /// generate an elementary abelian group.
    pub fn generated_by(g: &FiniteGroup, generators: &[usize]) -> Result<Self> {
        let mut members = vec![0usize];
        for &x in generators {
            if members.contains(&x) {
                continue;
            }
            let p = g.element(x);
            if p.is_identity() || !p.compose(p).is_identity() {
                return Err(Error::Invariant(format!("{p} is not an involution")));
            }
            let extra: Vec<usize> = members.iter().map(|&m| g.product(m, x)).collect();
            for &m in &members {
                if g.product(m, x) != g.product(x, m) {
                    return Err(Error::Invariant(format!("{p} does not commute with the subgroup")));
                }
            }
            members.extend(extra);
        }
        members.sort_unstable();
        members.dedup();
        Self::from_members(g, members)
    }

    fn from_members(g: &FiniteGroup, members: Vec<usize>) -> Result<Self> {
        let size = members.len();
        if !size.is_power_of_two() || members.first() != Some(&0) {
            return Err(Error::Invariant("member list is not an elementary abelian subgroup".into()));
        }
        let rank = size.trailing_zeros() as usize;
        let mut basis = Vec::new();
        let mut span: HashMap<usize, u64> = HashMap::from([(0, 0)]);
        for &x in &members {
            if span.contains_key(&x) {
                continue;
            }
            let bit = 1u64 << basis.len();
            basis.push(x);
            let old: Vec<(usize, u64)> = span.iter().map(|(&k, &v)| (k, v)).collect();
            for (y, mask) in old {
                span.insert(g.product(y, x), mask | bit);
            }
        }
        if basis.len() != rank || span.len() != size {
            return Err(Error::Invariant("member list is not closed under products".into()));
        }
        let masks = members.iter().map(|m| span[m]).collect();
        Ok(Self {
            rank,
            basis,
            members,
            masks,
        })
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Basis elements as indices into the parent group.
    #[must_use]
    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    /// Canonical form: sorted member indices, identity first.
    #[must_use]
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    #[must_use]
    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    /// Coordinates of a member in the basis, as a bit mask.
    #[must_use]
    pub fn coordinates(&self, x: usize) -> Option<u64> {
        self.members.binary_search(&x).ok().map(|i| self.masks[i])
    }

    /// Checks the defining properties against the parent group.
    #[must_use]
    pub fn is_valid_in(&self, g: &FiniteGroup) -> bool {
        self.members.len() == 1 << self.rank
            && self.members.iter().all(|&x| g.product(x, x) == 0)
            && self
                .members
                .iter()
                .all(|&x| self.members.iter().all(|&y| g.product(x, y) == g.product(y, x)))
    }
}

/// All elementary abelian 2-subgroups of rank at most `max_rank`, including the trivial
/// one, sorted by rank and then canonical form.
pub fn elementary_abelian_subgroups(
    g: &FiniteGroup,
    max_rank: usize,
    max_count: usize,
) -> Result<Vec<ElementaryAbelianSubgroup>> {
    let involutions = g.involutions();
    let position: HashMap<usize, usize> = involutions.iter().enumerate().map(|(k, &x)| (x, k)).collect();
    let commutes: Vec<F2Vector> = involutions
        .iter()
        .map(|&a| {
            F2Vector::from_bits(
                &involutions
                    .iter()
                    .map(|&b| g.product(a, b) == g.product(b, a))
                    .collect::<Vec<_>>(),
            )
        })
        .collect();

    let trivial = ElementaryAbelianSubgroup::from_members(g, vec![0])?;
    let mut all = vec![trivial.clone()];
    let mut layer = vec![trivial];
    for _ in 0..max_rank {
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut next = Vec::new();
        for e in &layer {
            let mut centralizing = F2Vector::from_bits(&vec![true; involutions.len()]);
            for b in e.basis() {
                centralizing = centralizing.and(&commutes[position[b]]);
            }
            for k in centralizing.ones() {
                let t = involutions[k];
                if e.contains(t) {
                    continue;
                }
                let mut members = e.members().to_vec();
                members.extend(e.members().iter().map(|&m| g.product(m, t)));
                members.sort_unstable();
                if seen.insert(members.clone()) {
                    if all.len() + seen.len() > max_count {
                        return Err(Error::cap("number of elementary abelian subgroups", max_count as u128));
                    }
                    next.push(members);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort();
        layer = next
            .into_iter()
            .map(|m| ElementaryAbelianSubgroup::from_members(g, m))
            .collect::<Result<_>>()?;
        all.extend(layer.iter().cloned());
    }
    Ok(all)
}

/// The subgroup `x E x⁻¹` for the group element with index `x`.
pub fn conjugate_subgroup(g: &FiniteGroup, x: usize, e: &ElementaryAbelianSubgroup) -> ElementaryAbelianSubgroup {
    let mut members: Vec<usize> = e.members().iter().map(|&m| g.conjugate(x, m)).collect();
    members.sort_unstable();
    ElementaryAbelianSubgroup::from_members(g, members).expect("conjugate of an elementary abelian subgroup")
}

/// A linear map `E → E′` induced by conjugation, with one element realizing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugationMorphism {
    /// `rank(E′) × rank(E)`; column `i` holds the coordinates of `g b_i g⁻¹` in `E′`.
    pub matrix: F2Matrix,
    /// Index of a group element `g` with `g E g⁻¹ ⊆ E′` inducing the map.
    pub witness: usize,
}

/// The matrix of `x ↦ g x g⁻¹` from `e` to `e2`, if `g e g⁻¹ ⊆ e2`.
#[must_use]
pub fn induced_map(
    g: &FiniteGroup,
    witness: usize,
    e: &ElementaryAbelianSubgroup,
    e2: &ElementaryAbelianSubgroup,
) -> Option<F2Matrix> {
    let mut m = F2Matrix::zeros(e2.rank(), e.rank());
    for (i, &b) in e.basis().iter().enumerate() {
        let mask = e2.coordinates(g.conjugate(witness, b))?;
        for j in 0..e2.rank() {
            if mask >> j & 1 == 1 {
                m.set(j, i, true);
            }
        }
    }
    Some(m)
}

/// All distinct linear maps `e → e2` of the form `x ↦ g x g⁻¹` with `g e g⁻¹ ⊆ e2`,
/// each with the least witness, sorted by witness.
#[must_use]
pub fn conjugation_morphisms(
    g: &FiniteGroup,
    e: &ElementaryAbelianSubgroup,
    e2: &ElementaryAbelianSubgroup,
) -> Vec<ConjugationMorphism> {
    if e.rank() > e2.rank() {
        return Vec::new();
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for x in 0..g.elements().len() {
        if let Some(matrix) = induced_map(g, x, e, e2) {
            if seen.insert(matrix.clone()) {
                out.push(ConjugationMorphism { matrix, witness: x });
            }
        }
    }
    out
}

/// A conjugacy class of subgroups with its lexicographically least member.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub representative: ElementaryAbelianSubgroup,
    pub size: usize,
}

/// Groups the subgroups into conjugacy classes. Classes are sorted by rank and then by
/// the canonical form of their representative.
#[must_use]
pub fn conjugacy_classes(g: &FiniteGroup, subgroups: &[ElementaryAbelianSubgroup]) -> Vec<SubgroupClass> {
    let lookup: HashMap<&[usize], usize> = subgroups
        .iter()
        .enumerate()
        .map(|(i, s)| (s.members(), i))
        .collect();
    let gens: Vec<usize> = g
        .generators()
        .iter()
        .map(|p| g.index_of(p).expect("generator belongs to its group"))
        .collect();
    let mut class_of = vec![usize::MAX; subgroups.len()];
    let mut classes = Vec::new();
    for start in 0..subgroups.len() {
        if class_of[start] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut orbit = vec![start];
        class_of[start] = id;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for &s in &gens {
                let c = conjugate_subgroup(g, s, &subgroups[i]);
                let j = lookup.get(c.members()).copied().unwrap_or_else(|| {
                    panic!("conjugate of a listed subgroup is missing from the list")
                });
                if class_of[j] == usize::MAX {
                    class_of[j] = id;
                    orbit.push(j);
                    queue.push_back(j);
                }
            }
        }
        let rep = orbit
            .iter()
            .copied()
            .min_by(|&a, &b| subgroups[a].members().cmp(subgroups[b].members()))
            .expect("orbit is nonempty");
        classes.push(SubgroupClass {
            representative: subgroups[rep].clone(),
            size: orbit.len(),
        });
    }
    classes.sort_by(|a, b| {
        (a.representative.rank(), a.representative.members())
            .cmp(&(b.representative.rank(), b.representative.members()))
    });
    classes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{cyclic_group, dihedral_group, DEFAULT_MAX_ORDER};

    #[test]
    fn cyclic_four_has_two() {
        let c4 = cyclic_group(4, DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(elementary_abelian_subgroups(&c4, 6, 5000).unwrap().len(), 2);
    }

    #[test]
    fn klein_has_five() {
        let k = dihedral_group(4, DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(elementary_abelian_subgroups(&k, 6, 5000).unwrap().len(), 5);
    }

    #[test]
    fn d8_rank_two_classes() {
        let d8 = dihedral_group(8, DEFAULT_MAX_ORDER).unwrap();
        let subs = elementary_abelian_subgroups(&d8, 6, 5000).unwrap();
        let ranks: HashSet<usize> = subs.iter().map(|s| s.rank()).collect();
        assert_eq!(ranks, HashSet::from([0, 1, 2]));
        let classes = conjugacy_classes(&d8, &subs);
        assert_eq!(classes.iter().filter(|c| c.representative.rank() == 2).count(), 2);
        assert_eq!(classes.iter().map(|c| c.size).sum::<usize>(), subs.len());
    }

    #[test]
    fn center_into_rank_two_is_unique() {
        let d8 = dihedral_group(8, DEFAULT_MAX_ORDER).unwrap();
        let z = d8.center();
        let center = ElementaryAbelianSubgroup::generated_by(&d8, &z[1..]).unwrap();
        let subs = elementary_abelian_subgroups(&d8, 6, 5000).unwrap();
        for e2 in subs.iter().filter(|s| s.rank() == 2) {
            assert_eq!(conjugation_morphisms(&d8, &center, e2).len(), 1);
        }
    }

    #[test]
    fn trivial_to_trivial_is_one_empty_map() {
        let d8 = dihedral_group(8, DEFAULT_MAX_ORDER).unwrap();
        let t = ElementaryAbelianSubgroup::generated_by(&d8, &[]).unwrap();
        let maps = conjugation_morphisms(&d8, &t, &t);
        assert_eq!(maps.len(), 1);
        assert_eq!((maps[0].matrix.rows(), maps[0].matrix.cols()), (0, 0));
    }

    #[test]
    fn subgroup_cap() {
        let d8 = dihedral_group(8, DEFAULT_MAX_ORDER).unwrap();
        assert!(matches!(
            elementary_abelian_subgroups(&d8, 6, 3),
            Err(Error::ResourceCap { .. })
        ));
    }
}
