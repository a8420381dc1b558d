use std::collections::HashMap;

use super::module::{binomial_mod2, ModuleMap, UnstableModule};
use crate::error::Result;
use crate::f2::{F2Matrix, F2Vector};

/// Monomial bases of `F2[u_1, …, u_d]` through degree `N`, each degree listed in
/// lexicographically decreasing order of exponent vectors (`u_1^n` first).
#[derive(Clone, Debug)]
pub struct Monomials {
    vars: usize,
    by_degree: Vec<Vec<Vec<u16>>>,
    index: Vec<HashMap<Vec<u16>, usize>>,
    /// `times[n][j][k]`: index in degree `n + 1` of `u_{j+1}` times monomial `k` of degree `n`.
    times: Vec<Vec<Vec<usize>>>,
}

fn compositions(n: usize, parts: usize, prefix: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
    if parts == 0 {
        if n == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    if parts == 1 {
        prefix.push(n as u16);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for first in (0..=n).rev() {
        prefix.push(first as u16);
        compositions(n - first, parts - 1, prefix, out);
        prefix.pop();
    }
}

impl Monomials {
    #[must_use]
    pub fn new(vars: usize, max_degree: usize) -> Self {
        let by_degree: Vec<Vec<Vec<u16>>> = (0..=max_degree)
            .map(|n| {
                let mut out = Vec::new();
                compositions(n, vars, &mut Vec::new(), &mut out);
                out
            })
            .collect();
        let index: Vec<HashMap<Vec<u16>, usize>> = by_degree
            .iter()
            .map(|b| b.iter().enumerate().map(|(k, e)| (e.clone(), k)).collect())
            .collect();
        let times = (0..max_degree)
            .map(|n| {
                (0..vars)
                    .map(|j| {
                        by_degree[n]
                            .iter()
                            .map(|e| {
                                let mut f = e.clone();
                                f[j] += 1;
                                index[n + 1][&f]
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Self {
            vars,
            by_degree,
            index,
            times,
        }
    }

    #[must_use]
    pub fn vars(&self) -> usize {
        self.vars
    }

    #[must_use]
    pub fn max_degree(&self) -> usize {
        self.by_degree.len() - 1
    }

    #[must_use]
    pub fn dim(&self, n: usize) -> usize {
        self.by_degree[n].len()
    }

    #[must_use]
    pub fn basis(&self, n: usize) -> &[Vec<u16>] {
        &self.by_degree[n]
    }

    #[must_use]
    pub fn index_of(&self, exponents: &[u16]) -> Option<usize> {
        let n: usize = exponents.iter().map(|&e| e as usize).sum();
        self.index.get(n)?.get(exponents).copied()
    }

    /// Multiplies a degree-`n` polynomial by the linear form with coefficient vector `form`.
    #[must_use]
    pub fn times_linear(&self, n: usize, poly: &F2Vector, form: &[bool]) -> F2Vector {
        let mut out = F2Vector::zeros(self.dim(n + 1));
        for k in poly.ones() {
            for (j, &c) in form.iter().enumerate() {
                if c {
                    out.flip(self.times[n][j][k]);
                }
            }
        }
        out
    }

    #[must_use]
    pub fn label(exponents: &[u16]) -> String {
        let parts: Vec<String> = exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(j, &e)| if e == 1 { format!("u{}", j + 1) } else { format!("u{}^{e}", j + 1) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }
}

fn sq_monomial(m: &Monomials, exponents: &[u16], i: usize) -> F2Vector {
    let n: usize = exponents.iter().map(|&e| e as usize).sum();
    let mut out = F2Vector::zeros(m.dim(n + i));
    let mut raised = exponents.to_vec();
    fn walk(m: &Monomials, exps: &[u16], j: usize, left: usize, raised: &mut Vec<u16>, out: &mut F2Vector) {
        if j == exps.len() {
            if left == 0 {
                out.flip(m.index_of(raised).expect("monomial within truncation"));
            }
            return;
        }
        let a = exps[j] as usize;
        for t in 0..=left.min(a) {
            if binomial_mod2(a, t) {
                raised[j] = (a + t) as u16;
                walk(m, exps, j + 1, left - t, raised, out);
            }
        }
        raised[j] = exps[j];
    }
    walk(m, exponents, 0, i, &mut raised, &mut out);
    out
}

/// `H*((ℤ/2)^d) = F2[u_1, …, u_d]` through degree `N`, with `Sq` from the Cartan formula
/// and `Sq^i u^n = C(n, i) u^{n+i}`.
pub fn cohomology_elementary_abelian(d: usize, max_degree: usize) -> Result<UnstableModule> {
    let m = Monomials::new(d, max_degree);
    let dims: Vec<usize> = (0..=max_degree).map(|n| m.dim(n)).collect();
    let labels = (0..=max_degree)
        .map(|n| m.basis(n).iter().map(|e| Monomials::label(e)).collect())
        .collect();
    UnstableModule::from_fn(max_degree, dims.clone(), |i, n| {
        let cols: Vec<F2Vector> = m.basis(n).iter().map(|e| sq_monomial(&m, e, i)).collect();
        F2Matrix::from_columns(dims[n + i], &cols)
    })?
    .with_labels(labels)
}

/// The polynomial algebra `P = H*(ℤ/2) = F2[u]` with `u` acting by multiplication.
pub fn polynomial_p(max_degree: usize) -> Result<UnstableModule> {
    let p = cohomology_elementary_abelian(1, max_degree)?;
    let u = (0..max_degree).map(|_| F2Matrix::identity(1)).collect();
    p.with_u_mult(u)
}

/// The trivial module `F2` concentrated in degree 0, with `u = 0`.
pub fn trivial_module(max_degree: usize) -> Result<UnstableModule> {
    let mut dims = vec![0; max_degree + 1];
    dims[0] = 1;
    let d = dims.clone();
    Ok(UnstableModule::from_fn(max_degree, dims, |i, n| Ok(F2Matrix::zeros(d[n + i], d[n])))?.with_zero_u())
}

/// The map `f*: H*(E′) → H*(E)` induced by a linear map `f: E → E′`, where `f` is a
/// `rank(E′) × rank(E)` matrix whose column `i` is the image of the `i`-th basis vector.
/// On generators, `f*(u′_j) = Σ_i f[j][i] u_i`.
pub fn restriction_map(f: &F2Matrix, max_degree: usize) -> Result<ModuleMap> {
    let target = Monomials::new(f.cols(), max_degree);
    let source = Monomials::new(f.rows(), max_degree);
    Ok(restriction_with(f, &source, &target))
}

/// As [`restriction_map`], reusing monomial tables for `H*(E′)` (`source`) and `H*(E)`
/// (`target`).
#[must_use]
pub fn restriction_with(f: &F2Matrix, source: &Monomials, target: &Monomials) -> ModuleMap {
    assert_eq!((f.rows(), f.cols()), (source.vars(), target.vars()), "restriction shape");
    let top = source.max_degree().min(target.max_degree());
    let forms: Vec<Vec<bool>> = (0..f.rows()).map(|j| f.row(j).to_bits()).collect();
    let mut images: Vec<Vec<F2Vector>> = vec![vec![F2Vector::unit(1, 0)]];
    for n in 1..=top {
        let layer: Vec<F2Vector> = source
            .basis(n)
            .iter()
            .map(|e| {
                let j = e.iter().position(|&x| x > 0).expect("positive degree monomial");
                let mut smaller = e.clone();
                smaller[j] -= 1;
                let k = source.index_of(&smaller).expect("monomial of lower degree");
                target.times_linear(n - 1, &images[n - 1][k], &forms[j])
            })
            .collect();
        images.push(layer);
    }
    let maps = images
        .iter()
        .enumerate()
        .map(|(n, cols)| F2Matrix::from_columns(target.dim(n), cols).expect("restriction column lengths"))
        .collect();
    let dims = |m: &Monomials| (0..=top).map(|n| m.dim(n)).collect::<Vec<_>>();
    ModuleMap::new(dims(source), dims(target), maps).expect("restriction shapes")
}
