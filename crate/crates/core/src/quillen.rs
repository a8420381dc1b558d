//! The Quillen category of elementary abelian 2-subgroups and the inverse limit
//! `L(G) = lim H*(E)` over it, computed degree by degree.
//!
//! A limit element is a tuple `(x_E)` with `x_E = f*(x_{E′})` for every morphism
//! `f: E → E′`. Objects with a morphism into an object of larger rank are solved for in
//! terms of that target, so the linear systems only carry variables for the remaining
//! objects.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2::{F2Matrix, F2Vector, RowSpace};
use crate::perm::{
    conjugacy_classes, conjugate_subgroup, conjugation_morphisms, elementary_abelian_subgroups, induced_map,
    ElementaryAbelianSubgroup, FiniteGroup,
};
use crate::unstable::{cohomology_elementary_abelian, restriction_with, ModuleMap, Monomials, UnstableModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiagramMode {
    /// One object per conjugacy class, with every induced map between representatives.
    Skeleton,
    /// Every elementary abelian subgroup, with covering inclusions and conjugation by
    /// the group generators.
    Full,
    /// A diagram written down directly rather than read off a group.
    Abstract,
}

impl DiagramMode {
    #[must_use]
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Skeleton => "skeleton",
            Self::Full => "full",
            Self::Abstract => "abstract",
        }
    }
}

impl std::str::FromStr for DiagramMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "skeleton" => Ok(Self::Skeleton),
            "full" => Ok(Self::Full),
            _ => Err(Error::Parse(format!("unknown diagram mode {s:?}"))),
        }
    }
}

/// Size limits for diagram construction; exceeding any of them is an error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiagramCaps {
    pub max_rank: usize,
    pub max_objects: usize,
    pub max_morphisms: usize,
}

impl Default for DiagramCaps {
    fn default() -> Self {
        Self {
            max_rank: 6,
            max_objects: 5000,
            max_morphisms: 100_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct DiagramObject {
    pub rank: usize,
    /// Number of subgroups this object stands for (the class size in skeleton mode).
    pub class_size: usize,
    pub subgroup: Option<ElementaryAbelianSubgroup>,
}

/// A morphism `E_source → E_target`; `matrix` is `rank(target) × rank(source)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramMorphism {
    pub source: usize,
    pub target: usize,
    pub matrix: F2Matrix,
    /// Index of a group element inducing the map, when the diagram comes from a group.
    pub witness: Option<usize>,
}

impl DiagramMorphism {
    fn is_identity(&self) -> bool {
        self.source == self.target && self.matrix.is_identity()
    }
}

#[derive(Clone, Debug)]
pub struct QuillenDiagram {
    pub label: String,
    pub mode: DiagramMode,
    pub objects: Vec<DiagramObject>,
    pub morphisms: Vec<DiagramMorphism>,
}

impl QuillenDiagram {
    /// A diagram given by object ranks and morphisms; identities are added for every object.
    pub fn from_parts(label: impl Into<String>, ranks: &[usize], morphisms: Vec<(usize, usize, F2Matrix)>) -> Result<Self> {
        let objects: Vec<DiagramObject> = ranks
            .iter()
            .map(|&rank| DiagramObject {
                rank,
                class_size: 1,
                subgroup: None,
            })
            .collect();
        let mut all: Vec<DiagramMorphism> = (0..objects.len())
            .map(|i| DiagramMorphism {
                source: i,
                target: i,
                matrix: F2Matrix::identity(ranks[i]),
                witness: None,
            })
            .collect();
        for (source, target, matrix) in morphisms {
            if source >= ranks.len() || target >= ranks.len() {
                return Err(Error::DimensionMismatch(format!("morphism {source} → {target} out of range")));
            }
            if (matrix.rows(), matrix.cols()) != (ranks[target], ranks[source]) || matrix.rank() != ranks[source] {
                return Err(Error::DimensionMismatch(format!(
                    "morphism {source} → {target} is not an injective {}×{} matrix",
                    ranks[target], ranks[source]
                )));
            }
            let m = DiagramMorphism {
                source,
                target,
                matrix,
                witness: None,
            };
            if !all.contains(&m) {
                all.push(m);
            }
        }
        Ok(Self {
            label: label.into(),
            mode: DiagramMode::Abstract,
            objects,
            morphisms: all,
        })
    }

    #[must_use]
    pub fn max_rank(&self) -> usize {
        self.objects.iter().map(|o| o.rank).max().unwrap_or(0)
    }

    /// Checks the structural invariants: identities present, morphisms injective and of the
    /// right shape, and in group-derived diagrams every witness realizes its matrix.
    #[must_use]
    pub fn validate(&self, g: Option<&FiniteGroup>) -> Vec<String> {
        let mut out = Vec::new();
        for (i, o) in self.objects.iter().enumerate() {
            if !self.morphisms.iter().any(|m| m.source == i && m.is_identity()) {
                out.push(format!("object {i} has no identity"));
            }
            if let (Some(g), Some(s)) = (g, &o.subgroup) {
                if !s.is_valid_in(g) {
                    out.push(format!("object {i} is not an elementary abelian subgroup"));
                }
            }
        }
        for (k, m) in self.morphisms.iter().enumerate() {
            let (rs, rt) = (self.objects[m.source].rank, self.objects[m.target].rank);
            if (m.matrix.rows(), m.matrix.cols()) != (rt, rs) || m.matrix.rank() != rs {
                out.push(format!("morphism {k} is not injective of shape {rt}×{rs}"));
                continue;
            }
            let subgroups = (&self.objects[m.source].subgroup, &self.objects[m.target].subgroup);
            if let (Some(g), Some(w), (Some(s), Some(t))) = (g, m.witness, subgroups) {
                if induced_map(g, w, s, t).as_ref() != Some(&m.matrix) {
                    out.push(format!("morphism {k} is not induced by its witness"));
                }
            }
        }
        out
    }
}

/// Members of each index-2 subgroup of `e`, in sorted order.
fn hyperplanes(e: &ElementaryAbelianSubgroup) -> Vec<Vec<usize>> {
    (1u64..1 << e.rank())
        .map(|functional| {
            e.members()
                .iter()
                .copied()
                .filter(|&x| {
                    let c = e.coordinates(x).expect("member has coordinates");
                    (c & functional).count_ones().is_multiple_of(2)
                })
                .collect()
        })
        .collect()
}

fn inclusion_matrix(small: &ElementaryAbelianSubgroup, big: &ElementaryAbelianSubgroup) -> F2Matrix {
    let cols: Vec<F2Vector> = small
        .basis()
        .iter()
        .map(|&b| {
            let c = big.coordinates(b).expect("inclusion of subgroups");
            F2Vector::from_ones(big.rank(), (0..big.rank()).filter(|j| c >> j & 1 == 1))
        })
        .collect();
    F2Matrix::from_columns(big.rank(), &cols).expect("inclusion shape")
}

/// The Quillen category of `g`, either in full or up to conjugacy.
pub fn build_quillen_diagram(g: &FiniteGroup, mode: DiagramMode, caps: DiagramCaps) -> Result<QuillenDiagram> {
    let subgroups = elementary_abelian_subgroups(g, caps.max_rank + 1, caps.max_objects)?;
    if subgroups.iter().any(|s| s.rank() > caps.max_rank) {
        return Err(Error::cap("elementary abelian rank", caps.max_rank as u128));
    }
    let check_morphisms = |n: usize| {
        if n > caps.max_morphisms {
            Err(Error::cap("number of morphisms", caps.max_morphisms as u128))
        } else {
            Ok(())
        }
    };
    match mode {
        DiagramMode::Skeleton => {
            let classes = conjugacy_classes(g, &subgroups);
            let mut morphisms = Vec::new();
            for (i, ci) in classes.iter().enumerate() {
                for (j, cj) in classes.iter().enumerate() {
                    for m in conjugation_morphisms(g, &ci.representative, &cj.representative) {
                        morphisms.push(DiagramMorphism {
                            source: i,
                            target: j,
                            matrix: m.matrix,
                            witness: Some(m.witness),
                        });
                    }
                    check_morphisms(morphisms.len())?;
                }
            }
            let objects = classes
                .into_iter()
                .map(|c| DiagramObject {
                    rank: c.representative.rank(),
                    class_size: c.size,
                    subgroup: Some(c.representative),
                })
                .collect();
            Ok(QuillenDiagram {
                label: g.label().to_string(),
                mode,
                objects,
                morphisms,
            })
        }
        DiagramMode::Full => {
            let lookup: HashMap<&[usize], usize> =
                subgroups.iter().enumerate().map(|(i, s)| (s.members(), i)).collect();
            let mut morphisms: Vec<DiagramMorphism> = (0..subgroups.len())
                .map(|i| DiagramMorphism {
                    source: i,
                    target: i,
                    matrix: F2Matrix::identity(subgroups[i].rank()),
                    witness: Some(0),
                })
                .collect();
            for (j, big) in subgroups.iter().enumerate() {
                for members in hyperplanes(big) {
                    let i = lookup[members.as_slice()];
                    morphisms.push(DiagramMorphism {
                        source: i,
                        target: j,
                        matrix: inclusion_matrix(&subgroups[i], big),
                        witness: Some(0),
                    });
                }
                check_morphisms(morphisms.len())?;
            }
            let generators: Vec<usize> = g
                .generators()
                .iter()
                .map(|p| g.index_of(p).expect("generator belongs to its group"))
                .collect();
            let mut seen: HashSet<(usize, usize, F2Matrix)> = HashSet::new();
            for (i, e) in subgroups.iter().enumerate() {
                for &s in &generators {
                    let c = conjugate_subgroup(g, s, e);
                    let j = lookup[c.members()];
                    let matrix = induced_map(g, s, e, &subgroups[j]).expect("conjugate lands in its image");
                    if (i == j && matrix.is_identity()) || !seen.insert((i, j, matrix.clone())) {
                        continue;
                    }
                    morphisms.push(DiagramMorphism {
                        source: i,
                        target: j,
                        matrix,
                        witness: Some(s),
                    });
                }
                check_morphisms(morphisms.len())?;
            }
            let objects = subgroups
                .into_iter()
                .map(|s| DiagramObject {
                    rank: s.rank(),
                    class_size: 1,
                    subgroup: Some(s),
                })
                .collect();
            Ok(QuillenDiagram {
                label: g.label().to_string(),
                mode,
                objects,
                morphisms,
            })
        }
        DiagramMode::Abstract => Err(Error::Unsupported("abstract diagrams are built with from_parts".into())),
    }
}

/// One element of `L^n`: a polynomial of degree `n` on each object.
pub type LimitTuple = Vec<F2Vector>;

#[derive(Clone, Debug)]
pub struct LimitTable {
    pub label: String,
    pub mode: DiagramMode,
    pub dims: Vec<usize>,
    pub objects: Vec<(usize, usize)>,
    pub morphism_count: usize,
    pub basis: Option<Vec<Vec<LimitTuple>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitObjectJson {
    pub rank: usize,
    pub class_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitJson {
    pub group: String,
    pub mode: String,
    pub degrees: Vec<usize>,
    pub dims: Vec<usize>,
    pub objects: Vec<LimitObjectJson>,
    pub morphism_count: usize,
}

impl LimitTable {
    #[must_use]
    pub fn max_degree(&self) -> usize {
        self.dims.len() - 1
    }

    #[must_use]
    pub fn to_json(&self) -> LimitJson {
        LimitJson {
            group: self.label.clone(),
            mode: self.mode.as_str().into(),
            degrees: (0..self.dims.len()).collect(),
            dims: self.dims.clone(),
            objects: self
                .objects
                .iter()
                .map(|&(rank, class_size)| LimitObjectJson { rank, class_size })
                .collect(),
            morphism_count: self.morphism_count,
        }
    }

    #[must_use]
    pub fn to_csv(&self) -> String {
        let mut out = String::from("degree,dim\n");
        for (d, n) in self.dims.iter().enumerate() {
            let _ = writeln!(out, "{d},{n}");
        }
        out
    }

    #[must_use]
    pub fn to_ascii(&self) -> String {
        let mut out = format!(
            "L({}) [{}; {} objects, {} morphisms]\n",
            self.label,
            self.mode.as_str(),
            self.objects.len(),
            self.morphism_count
        );
        let _ = writeln!(out, "{:>6}  {:>8}", "degree", "dim");
        for (d, n) in self.dims.iter().enumerate() {
            let _ = writeln!(out, "{d:>6}  {n:>8}");
        }
        out
    }

    /// Renders a basis tuple as one polynomial per object.
    #[must_use]
    pub fn render_tuple(&self, degree: usize, tuple: &LimitTuple) -> Vec<String> {
        tuple
            .iter()
            .zip(&self.objects)
            .map(|(v, &(rank, _))| {
                let mono = Monomials::new(rank, degree);
                let terms: Vec<String> = v.ones().map(|k| Monomials::label(&mono.basis(degree)[k])).collect();
                if terms.is_empty() {
                    "0".into()
                } else {
                    terms.join(" + ")
                }
            })
            .collect()
    }
}

struct Solver<'a> {
    diagram: &'a QuillenDiagram,
    restriction_of: Vec<usize>,
    restrictions: Vec<ModuleMap>,
    parent: Vec<Option<usize>>,
    order: Vec<usize>,
    monomials: Vec<Monomials>,
}

impl<'a> Solver<'a> {
    fn new(diagram: &'a QuillenDiagram, max_degree: usize) -> Self {
        let monomials: Vec<Monomials> = (0..=diagram.max_rank()).map(|r| Monomials::new(r, max_degree)).collect();
        let mut distinct: HashMap<&F2Matrix, usize> = HashMap::new();
        let mut matrices: Vec<&F2Matrix> = Vec::new();
        let restriction_of = diagram
            .morphisms
            .iter()
            .map(|m| {
                *distinct.entry(&m.matrix).or_insert_with(|| {
                    matrices.push(&m.matrix);
                    matrices.len() - 1
                })
            })
            .collect();
        let restrictions = matrices
            .par_iter()
            .map(|f| restriction_with(f, &monomials[f.rows()], &monomials[f.cols()]))
            .collect();
        let parent = (0..diagram.objects.len())
            .map(|i| {
                diagram
                    .morphisms
                    .iter()
                    .position(|m| m.source == i && diagram.objects[m.target].rank > diagram.objects[i].rank)
            })
            .collect();
        let mut order: Vec<usize> = (0..diagram.objects.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(diagram.objects[i].rank));
        Self {
            diagram,
            restriction_of,
            restrictions,
            parent,
            order,
            monomials,
        }
    }

    fn dim(&self, object: usize, n: usize) -> usize {
        self.monomials[self.diagram.objects[object].rank].dim(n)
    }

    fn pullback(&self, morphism: usize, n: usize) -> &F2Matrix {
        self.restrictions[self.restriction_of[morphism]].degree(n)
    }

    /// Returns `dim L^n` and, if asked, a basis of tuples.
    fn solve(&self, n: usize, with_basis: bool) -> (usize, Option<Vec<LimitTuple>>) {
        let objects = &self.diagram.objects;
        let mut width = 0;
        let mut free_offset = vec![None; objects.len()];
        for (i, offset) in free_offset.iter_mut().enumerate() {
            if self.parent[i].is_none() {
                *offset = Some(width);
                width += self.dim(i, n);
            }
        }
        let mut param: Vec<Option<F2Matrix>> = vec![None; objects.len()];
        for &i in &self.order {
            let p = match (free_offset[i], self.parent[i]) {
                (Some(off), _) => F2Matrix::from_fn(self.dim(i, n), width, |r, c| c == off + r),
                (None, Some(k)) => {
                    let target = param[self.diagram.morphisms[k].target]
                        .as_ref()
                        .expect("targets of parent morphisms have larger rank");
                    self.pullback(k, n).mul(target)
                }
                (None, None) => unreachable!("every object is free or has a parent"),
            };
            param[i] = Some(p);
        }
        let param: Vec<F2Matrix> = param.into_iter().map(|p| p.expect("all objects solved")).collect();

        let mut constraints = RowSpace::new(width);
        for (k, m) in self.diagram.morphisms.iter().enumerate() {
            if m.is_identity() || self.parent[m.source] == Some(k) {
                continue;
            }
            let relation = param[m.source].add(&self.pullback(k, n).mul(&param[m.target]));
            for row in relation.row_vectors() {
                constraints.insert(row.clone());
            }
        }
        let kernel = constraints.annihilator();
        let basis = with_basis.then(|| {
            kernel
                .iter()
                .map(|v| param.iter().map(|p| p.mul_vec(v)).collect())
                .collect()
        });
        (kernel.len(), basis)
    }
}

fn limit(diagram: &QuillenDiagram, max_degree: usize, with_basis: bool) -> LimitTable {
    let solver = Solver::new(diagram, max_degree);
    let solved: Vec<(usize, Option<Vec<LimitTuple>>)> =
        (0..=max_degree).into_par_iter().map(|n| solver.solve(n, with_basis)).collect();
    let dims = solved.iter().map(|(d, _)| *d).collect();
    let basis = with_basis.then(|| solved.into_iter().map(|(_, b)| b.expect("basis requested")).collect());
    LimitTable {
        label: diagram.label.clone(),
        mode: diagram.mode,
        dims,
        objects: diagram.objects.iter().map(|o| (o.rank, o.class_size)).collect(),
        morphism_count: diagram.morphisms.len(),
        basis,
    }
}

/// `dim L^n` for `n = 0..=N`.
#[must_use]
pub fn limit_dims(diagram: &QuillenDiagram, max_degree: usize) -> LimitTable {
    limit(diagram, max_degree, false)
}

/// As [`limit_dims`], also recording a basis of `L^n` as tuples of polynomials.
#[must_use]
pub fn limit_with_basis(diagram: &QuillenDiagram, max_degree: usize) -> LimitTable {
    limit(diagram, max_degree, true)
}

/// Checks a tuple against every morphism of the diagram; returns the first failing one.
#[must_use]
pub fn first_violated_morphism(diagram: &QuillenDiagram, degree: usize, tuple: &LimitTuple) -> Option<usize> {
    let mono: Vec<Monomials> = (0..=diagram.max_rank()).map(|r| Monomials::new(r, degree)).collect();
    diagram.morphisms.iter().position(|m| {
        let pull = restriction_with(&m.matrix, &mono[m.matrix.rows()], &mono[m.matrix.cols()]);
        pull.degree(degree).mul_vec(&tuple[m.target]) != tuple[m.source]
    })
}

/// Applies every `Sq^i` componentwise to every basis tuple of the table and checks that the
/// result again satisfies all restriction constraints. Returns the violations.
pub fn steenrod_stability_check(table: &LimitTable, diagram: &QuillenDiagram, max_degree: usize) -> Result<Vec<String>> {
    let basis = table
        .basis
        .as_ref()
        .ok_or_else(|| Error::Unsupported("Steenrod stability needs a table with a basis".into()))?;
    let top = max_degree.min(table.max_degree());
    let modules: Vec<UnstableModule> = (0..=diagram.max_rank())
        .map(|r| cohomology_elementary_abelian(r, top))
        .collect::<Result<_>>()?;
    let solver = Solver::new(diagram, top);
    let violations: Vec<String> = (0..=top)
        .into_par_iter()
        .flat_map_iter(|n| {
            let mut out = Vec::new();
            for (b, tuple) in basis[n].iter().enumerate() {
                for i in 1..=top - n {
                    let image: LimitTuple = tuple
                        .iter()
                        .zip(&diagram.objects)
                        .map(|(x, o)| modules[o.rank].apply_sq(i, n, x))
                        .collect();
                    for (k, m) in diagram.morphisms.iter().enumerate() {
                        if solver.pullback(k, n + i).mul_vec(&image[m.target]) != image[m.source] {
                            out.push(format!("Sq^{i} of basis element {b} in degree {n} violates morphism {k}"));
                            break;
                        }
                    }
                }
            }
            out
        })
        .collect();
    Ok(violations)
}

/// Compares the skeleton and full computations of `L(g)` through degree `N`.
pub fn skeleton_vs_full_check(g: &FiniteGroup, max_degree: usize, max_order: u128, caps: DiagramCaps) -> Result<bool> {
    if g.order() > max_order {
        return Err(Error::cap(format!("order {} for the full diagram", g.order()), max_order));
    }
    let skeleton = limit_dims(&build_quillen_diagram(g, DiagramMode::Skeleton, caps)?, max_degree);
    let full = limit_dims(&build_quillen_diagram(g, DiagramMode::Full, caps)?, max_degree);
    Ok(skeleton.dims == full.dims)
}

/// The diagram computing `L(D_{2n})`: one object of rank 1 for `n` odd, one of rank 2 for
/// `n ≡ 2 mod 4`, and for `n ≡ 0 mod 4` the two non-conjugate Klein subgroups `E₁`, `E₂`
/// with their swap automorphisms, glued along the diagonal inclusion of the center.
pub fn dihedral_closed_form_diagram(n: usize) -> Result<QuillenDiagram> {
    if n == 0 {
        return Err(Error::Unsupported("dihedral closed form needs n ≥ 1".into()));
    }
    let label = format!("dihedral-closed-form:{}", 2 * n);
    if n % 2 == 1 {
        return QuillenDiagram::from_parts(label, &[1], vec![]);
    }
    if n % 4 == 2 {
        return QuillenDiagram::from_parts(label, &[2], vec![]);
    }
    let diagonal = F2Matrix::from_u8_rows(&[&[1], &[1]])?;
    let swap = F2Matrix::from_u8_rows(&[&[0, 1], &[1, 0]])?;
    QuillenDiagram::from_parts(
        label,
        &[1, 2, 2],
        vec![
            (0, 1, diagonal.clone()),
            (0, 2, diagonal),
            (1, 1, swap.clone()),
            (2, 2, swap),
        ],
    )
}

/// `dim L^d(D_{2n})` for `d ≤ N` from [`dihedral_closed_form_diagram`].
pub fn dihedral_closed_form(n: usize, max_degree: usize) -> Result<LimitTable> {
    Ok(limit_dims(&dihedral_closed_form_diagram(n)?, max_degree))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{cyclic_group, dihedral_group, elementary_abelian_group, DEFAULT_MAX_ORDER};

    fn dims(g: &FiniteGroup, mode: DiagramMode, n: usize) -> Vec<usize> {
        limit_dims(&build_quillen_diagram(g, mode, DiagramCaps::default()).unwrap(), n).dims
    }

    #[test]
    fn klein_skeleton_shape() {
        let g = elementary_abelian_group(2, DEFAULT_MAX_ORDER).unwrap();
        let d = build_quillen_diagram(&g, DiagramMode::Skeleton, DiagramCaps::default()).unwrap();
        let ranks: Vec<usize> = d.objects.iter().map(|o| o.rank).collect();
        assert_eq!(ranks, vec![0, 1, 1, 1, 2]);
        assert!(d.validate(Some(&g)).is_empty());
        assert_eq!(dims(&g, DiagramMode::Skeleton, 6), vec![1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn cyclic_four_is_one_everywhere() {
        let g = cyclic_group(4, DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(dims(&g, DiagramMode::Skeleton, 5), vec![1; 6]);
        assert_eq!(dims(&g, DiagramMode::Full, 5), vec![1; 6]);
    }

    #[test]
    fn d8_matches_closed_form() {
        let g = dihedral_group(8, DEFAULT_MAX_ORDER).unwrap();
        let expect: Vec<usize> = (1..=9).collect();
        assert_eq!(dims(&g, DiagramMode::Skeleton, 8), expect);
        assert_eq!(dims(&g, DiagramMode::Full, 8), expect);
        assert_eq!(dihedral_closed_form(4, 8).unwrap().dims, expect);
    }

    #[test]
    fn closed_form_small_cases() {
        assert_eq!(dihedral_closed_form(3, 4).unwrap().dims, vec![1; 5]);
        assert_eq!(dihedral_closed_form(2, 4).unwrap().dims, vec![1, 2, 3, 4, 5]);
        assert!(dihedral_closed_form(0, 4).is_err());
    }

    #[test]
    fn rank_cap_is_loud() {
        let g = elementary_abelian_group(3, DEFAULT_MAX_ORDER).unwrap();
        let caps = DiagramCaps {
            max_rank: 2,
            ..DiagramCaps::default()
        };
        assert!(matches!(
            build_quillen_diagram(&g, DiagramMode::Full, caps),
            Err(Error::ResourceCap { .. })
        ));
    }

    #[test]
    fn klein_degree_one_square() {
        let g = elementary_abelian_group(2, DEFAULT_MAX_ORDER).unwrap();
        let d = build_quillen_diagram(&g, DiagramMode::Skeleton, DiagramCaps::default()).unwrap();
        let t = limit_with_basis(&d, 4);
        assert!(steenrod_stability_check(&t, &d, 4).unwrap().is_empty());
        for (n, b) in t.basis.as_ref().unwrap().iter().enumerate() {
            for tuple in b {
                assert_eq!(first_violated_morphism(&d, n, tuple), None);
            }
        }
    }
}
