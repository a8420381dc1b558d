use std::collections::HashMap;

use super::module::{binomial_mod2, ModuleMap, UnstableModule};
use crate::error::{Error, Result};
use crate::f2::{Coordinates, F2Matrix, F2Vector, RowSpace};

/// `cols[i][n][r] = Sq^i x_r` for the `r`-th basis vector of degree `n`, including `i = 0`.
struct SqColumns {
    cols: Vec<Vec<Vec<F2Vector>>>,
}

impl SqColumns {
    fn new(m: &UnstableModule) -> Self {
        let top = m.max_degree();
        let cols = (0..=top)
            .map(|i| {
                (0..=top - i)
                    .map(|n| {
                        if i == 0 {
                            (0..m.dim(n)).map(|r| F2Vector::unit(m.dim(n), r)).collect()
                        } else {
                            let t = m.sq(i, n).transpose();
                            t.row_vectors().to_vec()
                        }
                    })
                    .collect()
            })
            .collect();
        Self { cols }
    }

    fn get(&self, i: usize, n: usize, r: usize) -> &F2Vector {
        &self.cols[i][n][r]
    }
}

/// Columns of the `u` maps: `cols[n][r] = u x_r`.
fn u_columns(m: &UnstableModule) -> Option<Vec<Vec<F2Vector>>> {
    m.u_maps()
        .map(|u| u.iter().map(|mat| mat.transpose().row_vectors().to_vec()).collect())
}

/// Basis of `(A ⊗ B)^n`: blocks `A^p ⊗ B^{n−p}` for `p = 0..=n`, each block ordered
/// `x`-major.
struct TensorLayout {
    dims_b: Vec<usize>,
    offsets: Vec<Vec<usize>>,
    dims: Vec<usize>,
    decode: Vec<Vec<(usize, usize, usize)>>,
}

impl TensorLayout {
    fn new(dims_a: &[usize], dims_b: &[usize], top: usize) -> Self {
        let mut offsets = Vec::with_capacity(top + 1);
        let mut dims = Vec::with_capacity(top + 1);
        let mut decode = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let mut off = Vec::with_capacity(n + 1);
            let mut total = 0;
            let mut dec = Vec::new();
            for p in 0..=n {
                off.push(total);
                for r in 0..dims_a[p] {
                    for s in 0..dims_b[n - p] {
                        dec.push((p, r, s));
                    }
                }
                total += dims_a[p] * dims_b[n - p];
            }
            offsets.push(off);
            dims.push(total);
            decode.push(dec);
        }
        Self {
            dims_b: dims_b[..=top].to_vec(),
            offsets,
            dims,
            decode,
        }
    }

    fn index(&self, p: usize, q: usize, r: usize, s: usize) -> usize {
        self.offsets[p + q][p] + r * self.dims_b[q] + s
    }
}

/// Adds `x ⊗ y` (given as vectors in `A^p` and `B^q`) into `out`.
fn add_outer(layout: &TensorLayout, p: usize, x: &F2Vector, q: usize, y: &F2Vector, out: &mut F2Vector) {
    if x.is_zero() || y.is_zero() {
        return;
    }
    let ys: Vec<usize> = y.ones().collect();
    for r in x.ones() {
        for &s in &ys {
            out.flip(layout.index(p, q, r, s));
        }
    }
}

struct Tensor<'a> {
    layout: TensorLayout,
    sq_a: SqColumns,
    sq_b: SqColumns,
    u_a: Option<Vec<Vec<F2Vector>>>,
    u_b: Option<Vec<Vec<F2Vector>>>,
    a: &'a UnstableModule,
    b: &'a UnstableModule,
}

impl<'a> Tensor<'a> {
    fn new(a: &'a UnstableModule, b: &'a UnstableModule) -> Self {
        let top = a.max_degree().min(b.max_degree());
        Self {
            layout: TensorLayout::new(a.dims(), b.dims(), top),
            sq_a: SqColumns::new(a),
            sq_b: SqColumns::new(b),
            u_a: u_columns(a),
            u_b: u_columns(b),
            a,
            b,
        }
    }

    fn top(&self) -> usize {
        self.layout.dims.len() - 1
    }

    /// Cartan formula on `v ∈ (A ⊗ B)^n`.
    fn apply_sq(&self, i: usize, n: usize, v: &F2Vector) -> F2Vector {
        let mut out = F2Vector::zeros(self.layout.dims[n + i]);
        for k in v.ones() {
            let (p, r, s) = self.layout.decode[n][k];
            let q = n - p;
            for ia in 0..=i {
                let ib = i - ia;
                add_outer(&self.layout, p + ia, self.sq_a.get(ia, p, r), q + ib, self.sq_b.get(ib, q, s), &mut out);
            }
        }
        out
    }

    /// `(e ⊗ 1 + 1 ⊗ e) v`, when both factors carry `u`.
    fn apply_u(&self, n: usize, v: &F2Vector) -> Option<F2Vector> {
        let (ua, ub) = (self.u_a.as_ref()?, self.u_b.as_ref()?);
        let mut out = F2Vector::zeros(self.layout.dims[n + 1]);
        for k in v.ones() {
            let (p, r, s) = self.layout.decode[n][k];
            let q = n - p;
            add_outer(&self.layout, p + 1, &ua[p][r], q, &F2Vector::unit(self.b.dim(q), s), &mut out);
            add_outer(&self.layout, p, &F2Vector::unit(self.a.dim(p), r), q + 1, &ub[q][s], &mut out);
        }
        Some(out)
    }
}

fn module_from_columns(
    top: usize,
    dims: Vec<usize>,
    mut column: impl FnMut(usize, usize, usize) -> Result<F2Vector>,
) -> Result<UnstableModule> {
    let d = dims.clone();
    UnstableModule::from_fn(top, dims, |i, n| {
        let cols = (0..d[n]).map(|k| column(i, n, k)).collect::<Result<Vec<_>>>()?;
        F2Matrix::from_columns(d[n + i], &cols)
    })
}

fn u_from_columns(
    dims: &[usize],
    mut column: impl FnMut(usize, usize) -> Result<F2Vector>,
) -> Result<Vec<F2Matrix>> {
    (0..dims.len() - 1)
        .map(|n| {
            let cols = (0..dims[n]).map(|k| column(n, k)).collect::<Result<Vec<_>>>()?;
            F2Matrix::from_columns(dims[n + 1], &cols)
        })
        .collect()
}

/// `A ⊗ B` through degree `min(N_A, N_B)` with the Cartan formula; when both factors
/// carry `u`, the product carries `u ⊗ 1 + 1 ⊗ u`.
pub fn tensor(a: &UnstableModule, b: &UnstableModule) -> Result<UnstableModule> {
    let t = Tensor::new(a, b);
    let top = t.top();
    let dims = t.layout.dims.clone();
    let m = module_from_columns(top, dims.clone(), |i, n, k| Ok(t.apply_sq(i, n, &F2Vector::unit(dims[n], k))))?;
    if a.has_u() && b.has_u() {
        let u = u_from_columns(&dims, |n, k| Ok(t.apply_u(n, &F2Vector::unit(dims[n], k)).expect("both carry u")))?;
        m.with_u_mult(u)
    } else {
        Ok(m)
    }
}

/// Element of the basis of `(M ⊗ M)^{𝔖₂}`; `(p, r)` names the `r`-th basis vector of `M^p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymElement {
    /// `x ⊗ y + y ⊗ x` for `x < y` in the order (degree, index).
    Pair((usize, usize), (usize, usize)),
    /// `x ⊗ x`.
    Diagonal((usize, usize)),
}

/// `(M ⊗ M)^{𝔖₂}` with its basis description.
#[derive(Clone, Debug)]
pub struct Sym2 {
    pub module: UnstableModule,
    pub basis: Vec<Vec<SymElement>>,
}

/// The symmetric invariants `(M ⊗ M)^{𝔖₂}`. Each degree lists the pairs `x < y` first,
/// then the diagonal classes `x ⊗ x`. When `M` carries `u`, so does the result, acting by
/// `u ⊗ 1 + 1 ⊗ u`.
pub fn sym2_invariants(m: &UnstableModule) -> Result<Sym2> {
    let t = Tensor::new(m, m);
    let top = t.top();
    let mut basis: Vec<Vec<SymElement>> = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let mut elems = Vec::new();
        for p in 0..=n / 2 {
            let q = n - p;
            for r in 0..m.dim(p) {
                let first_s = if p == q { r + 1 } else { 0 };
                for s in first_s..m.dim(q) {
                    elems.push(SymElement::Pair((p, r), (q, s)));
                }
            }
        }
        if n % 2 == 0 {
            for r in 0..m.dim(n / 2) {
                elems.push(SymElement::Diagonal((n / 2, r)));
            }
        }
        basis.push(elems);
    }
    let dims: Vec<usize> = basis.iter().map(Vec::len).collect();

    let embed = |n: usize, e: &SymElement| -> F2Vector {
        let mut v = F2Vector::zeros(t.layout.dims[n]);
        match *e {
            SymElement::Pair((p, r), (q, s)) => {
                v.flip(t.layout.index(p, q, r, s));
                v.flip(t.layout.index(q, p, s, r));
            }
            SymElement::Diagonal((p, r)) => v.flip(t.layout.index(p, p, r, r)),
        }
        v
    };
    let position: Vec<HashMap<usize, usize>> = basis
        .iter()
        .map(|elems| {
            elems
                .iter()
                .enumerate()
                .map(|(k, e)| {
                    let lead = match *e {
                        SymElement::Pair((p, r), (q, s)) => t.layout.index(p, q, r, s),
                        SymElement::Diagonal((p, r)) => t.layout.index(p, p, r, r),
                    };
                    (lead, k)
                })
                .collect()
        })
        .collect();
    let project = |n: usize, v: &F2Vector| -> Result<F2Vector> {
        let mut out = F2Vector::zeros(dims[n]);
        let mut check = F2Vector::zeros(t.layout.dims[n]);
        for (&lead, &k) in &position[n] {
            if v.get(lead) {
                out.set(k, true);
                check.add_assign(&embed(n, &basis[n][k]));
            }
        }
        if &check != v {
            return Err(Error::Invariant(format!("non-symmetric tensor in degree {n}")));
        }
        Ok(out)
    };

    let module = module_from_columns(top, dims.clone(), |i, n, k| {
        project(n + i, &t.apply_sq(i, n, &embed(n, &basis[n][k])))
    })?;
    let module = if m.has_u() {
        let u = u_from_columns(&dims, |n, k| {
            project(n + 1, &t.apply_u(n, &embed(n, &basis[n][k])).expect("module carries u"))
        })?;
        module.with_u_mult(u)?
    } else {
        module
    };
    Ok(Sym2 { module, basis })
}

/// The Frobenius double `ΦM`: `(ΦM)^{2n} = M^n`, zero in odd degrees,
/// `Sq^{2i} Φx = Φ Sq^i x` and odd squares zero. Truncated at the degree of `M`.
pub fn phi(m: &UnstableModule) -> Result<UnstableModule> {
    let top = m.max_degree();
    let dims: Vec<usize> = (0..=top).map(|n| if n % 2 == 0 { m.dim(n / 2) } else { 0 }).collect();
    let d = dims.clone();
    UnstableModule::from_fn(top, dims, |i, n| {
        if n % 2 == 0 && i % 2 == 0 {
            Ok(m.sq(i / 2, n / 2).clone())
        } else {
            Ok(F2Matrix::zeros(d[n + i], d[n]))
        }
    })
}

/// `R₁M ⊂ F2[u] ⊗ M` with its basis description: degree `n` has the classes
/// `u^{n−2|x|} St₁x`, one per basis vector `x = (k, r)` of `M^k` with `2k ≤ n`.
#[derive(Clone, Debug)]
pub struct R1 {
    pub module: UnstableModule,
    pub basis: Vec<Vec<(usize, usize)>>,
}

/// Ambient `F2[u] ⊗ M` in degree `n`: blocks `u^{n−k} ⊗ M^k` for `k = 0..=n`.
struct PolyTensor<'a> {
    m: &'a UnstableModule,
    sq: SqColumns,
    offsets: Vec<Vec<usize>>,
    dims: Vec<usize>,
    decode: Vec<Vec<(usize, usize)>>,
}

impl<'a> PolyTensor<'a> {
    fn new(m: &'a UnstableModule) -> Self {
        let top = m.max_degree();
        let mut offsets = Vec::new();
        let mut dims = Vec::new();
        let mut decode = Vec::new();
        for n in 0..=top {
            let mut off = Vec::new();
            let mut dec = Vec::new();
            let mut total = 0;
            for k in 0..=n {
                off.push(total);
                dec.extend((0..m.dim(k)).map(|r| (k, r)));
                total += m.dim(k);
            }
            offsets.push(off);
            dims.push(total);
            decode.push(dec);
        }
        Self {
            m,
            sq: SqColumns::new(m),
            offsets,
            dims,
            decode,
        }
    }

    /// `u^j St₁x = Σ_{i ≤ |x|} u^{j+|x|−i} ⊗ Sq^i x` with `j = n − 2|x|`.
    fn st1(&self, n: usize, k: usize, r: usize) -> F2Vector {
        let mut v = F2Vector::zeros(self.dims[n]);
        for i in 0..=k {
            v.add_at(self.offsets[n][k + i], self.sq.get(i, k, r));
        }
        v
    }

    /// `Sq^s(u^a ⊗ y) = Σ_b C(a, b) u^{a+b} ⊗ Sq^{s−b} y`.
    fn apply_sq(&self, s: usize, n: usize, v: &F2Vector) -> F2Vector {
        let mut out = F2Vector::zeros(self.dims[n + s]);
        for idx in v.ones() {
            let (k, r) = self.decode[n][idx];
            let a = n - k;
            for b in 0..=s {
                if binomial_mod2(a, b) {
                    let c = s - b;
                    out.add_at(self.offsets[n + s][k + c], self.sq.get(c, k, r));
                }
            }
        }
        out
    }

    /// Coordinates in the `St₁` basis, solving the triangular system block by block.
    fn st1_coordinates(&self, n: usize, basis: &[(usize, usize)], v: &F2Vector) -> Result<F2Vector> {
        let position: HashMap<(usize, usize), usize> = basis.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut rest = v.clone();
        let mut out = F2Vector::zeros(basis.len());
        for k in 0..=n {
            let block = rest.slice(self.offsets[n][k], self.m.dim(k));
            for r in block.ones() {
                let &pos = position
                    .get(&(k, r))
                    .ok_or_else(|| Error::Invariant(format!("vector outside R1 in degree {n}")))?;
                out.flip(pos);
                rest.add_assign(&self.st1(n, k, r));
            }
        }
        debug_assert!(rest.is_zero());
        Ok(out)
    }
}

/// The sub-`A`-module `R₁M` of `F2[u] ⊗ M` generated over `F2[u]` by the classes
/// `St₁x = Σ_i u^{|x|−i} ⊗ Sq^i x`. It carries `u` acting freely.
pub fn r1(m: &UnstableModule) -> Result<R1> {
    let top = m.max_degree();
    let pt = PolyTensor::new(m);
    let basis: Vec<Vec<(usize, usize)>> = (0..=top)
        .map(|n| (0..=n / 2).flat_map(|k| (0..m.dim(k)).map(move |r| (k, r))).collect())
        .collect();
    let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
    let module = module_from_columns(top, dims.clone(), |i, n, idx| {
        let (k, r) = basis[n][idx];
        pt.st1_coordinates(n + i, &basis[n + i], &pt.apply_sq(i, n, &pt.st1(n, k, r)))
    })?;
    let u = (0..top)
        .map(|n| F2Matrix::from_fn(dims[n + 1], dims[n], |a, b| a == b))
        .collect();
    Ok(R1 {
        module: module.with_u_mult(u)?,
        basis,
    })
}

/// `ν: (M ⊗ M)^{𝔖₂} → ΦM`, sending `x ⊗ x` to `Φx` and the pairs to zero.
#[must_use]
pub fn nu_map(sym: &Sym2, phi_m: &UnstableModule) -> ModuleMap {
    let maps = sym
        .basis
        .iter()
        .enumerate()
        .map(|(n, elems)| {
            let mut mat = F2Matrix::zeros(phi_m.dim(n), elems.len());
            for (k, e) in elems.iter().enumerate() {
                if let SymElement::Diagonal((_, r)) = e {
                    mat.set(*r, k, true);
                }
            }
            mat
        })
        .collect();
    ModuleMap::new(sym.module.dims().to_vec(), phi_m.dims().to_vec(), maps).expect("ν shapes")
}

/// `ρ: R₁M → ΦM`, sending `St₁x` to `Φx` and `u^j St₁x` to zero for `j > 0`.
#[must_use]
pub fn rho_map(r: &R1, phi_m: &UnstableModule) -> ModuleMap {
    let maps = r
        .basis
        .iter()
        .enumerate()
        .map(|(n, elems)| {
            let mut mat = F2Matrix::zeros(phi_m.dim(n), elems.len());
            for (k, &(deg, idx)) in elems.iter().enumerate() {
                if 2 * deg == n {
                    mat.set(idx, k, true);
                }
            }
            mat
        })
        .collect();
    ModuleMap::new(r.module.dims().to_vec(), phi_m.dims().to_vec(), maps).expect("ρ shapes")
}

/// The fiber product `A ×_C B` with its two projections.
#[derive(Clone, Debug)]
pub struct FiberProduct {
    pub module: UnstableModule,
    pub to_a: ModuleMap,
    pub to_b: ModuleMap,
}

/// The pullback of `f: A → C` and `g: B → C`, degreewise the kernel of `[f | g]`.
/// `u` is inherited componentwise when both `A` and `B` carry it; an `u` that leaves the
/// pullback is reported as an invariant violation.
pub fn fiber_product(a: &UnstableModule, f: &ModuleMap, b: &UnstableModule, g: &ModuleMap) -> Result<FiberProduct> {
    let top = a.max_degree().min(b.max_degree()).min(f.max_degree()).min(g.max_degree());
    if f.target_dims()[..=top] != g.target_dims()[..=top] {
        return Err(Error::DimensionMismatch("fiber product maps have different targets".into()));
    }
    let mut bases = Vec::with_capacity(top + 1);
    let mut coords = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let stacked = f.degree(n).hstack(g.degree(n))?;
        let mut space = RowSpace::new(stacked.cols());
        for row in stacked.row_vectors() {
            space.insert(row.clone());
        }
        let basis = space.annihilator();
        coords.push(Coordinates::new(stacked.cols(), &basis)?);
        bases.push(basis);
    }
    let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
    let split = |n: usize, v: &F2Vector| (v.slice(0, a.dim(n)), v.slice(a.dim(n), b.dim(n)));
    let module = module_from_columns(top, dims.clone(), |i, n, k| {
        let (x, y) = split(n, &bases[n][k]);
        let image = a.apply_sq(i, n, &x).concat(&b.apply_sq(i, n, &y));
        coords[n + i]
            .coords(&image)
            .ok_or_else(|| Error::Invariant(format!("fiber product not closed under Sq^{i} in degree {n}")))
    })?;
    let module = match (a.u_maps(), b.u_maps()) {
        (Some(ua), Some(ub)) => {
            let u = u_from_columns(&dims, |n, k| {
                let (x, y) = split(n, &bases[n][k]);
                let image = ua[n].mul_vec(&x).concat(&ub[n].mul_vec(&y));
                coords[n + 1]
                    .coords(&image)
                    .ok_or_else(|| Error::Invariant(format!("fiber product not closed under u in degree {n}")))
            })?;
            module.with_u_mult(u)?
        }
        _ => module,
    };
    let projection = |first: bool| -> Result<ModuleMap> {
        let maps = (0..=top)
            .map(|n| {
                let cols: Vec<F2Vector> = bases[n]
                    .iter()
                    .map(|v| {
                        let (x, y) = split(n, v);
                        if first {
                            x
                        } else {
                            y
                        }
                    })
                    .collect();
                F2Matrix::from_columns(if first { a.dim(n) } else { b.dim(n) }, &cols)
            })
            .collect::<Result<Vec<_>>>()?;
        let target = if first { a.dims() } else { b.dims() };
        ModuleMap::new(dims.clone(), target[..=top].to_vec(), maps)
    };
    Ok(FiberProduct {
        to_a: projection(true)?,
        to_b: projection(false)?,
        module,
    })
}

/// The quadratic construction `𝔖₂M = (M⊗M)^{𝔖₂} ×_{ΦM} R₁M` with all its pieces.
#[derive(Clone, Debug)]
pub struct Quadratic {
    pub module: UnstableModule,
    pub sym: Sym2,
    pub r1: R1,
    pub phi: UnstableModule,
    pub nu: ModuleMap,
    pub rho: ModuleMap,
    pub to_sym: ModuleMap,
    pub to_r1: ModuleMap,
}

fn quadratic_impl(m: &UnstableModule, decorated: bool) -> Result<Quadratic> {
    let source = if decorated {
        if !m.has_u() {
            return Err(Error::Unsupported("the P-decorated construction needs a module with u".into()));
        }
        m.clone()
    } else {
        m.clone().without_u()
    };
    let sym = sym2_invariants(&source)?;
    let r = r1(&source)?;
    let phi_m = phi(&source)?;
    let nu = nu_map(&sym, &phi_m);
    let rho = rho_map(&r, &phi_m);
    let r_component = if decorated {
        r.module.clone().with_zero_u()
    } else {
        r.module.clone().without_u()
    };
    let fp = fiber_product(&sym.module, &nu, &r_component, &rho)?;
    Ok(Quadratic {
        module: fp.module,
        sym,
        r1: r,
        phi: phi_m,
        nu,
        rho,
        to_sym: fp.to_a,
        to_r1: fp.to_b,
    })
}

/// `𝔖₂M`, the model of `H*(𝔖₂ ≀ X)` when `M = H*X`.
pub fn quadratic(m: &UnstableModule) -> Result<Quadratic> {
    quadratic_impl(m, false)
}

/// `𝔖₂M` in the category of P-modules: `u` acts by `(u ⊗ 1 + 1 ⊗ u, 0)`.
pub fn quadratic_p_decorated(m: &UnstableModule) -> Result<Quadratic> {
    quadratic_impl(m, true)
}

/// The P-trivial part `τM = ker u` in degrees `≤ N − 1`; degree `N` is unknown since
/// `u` on it is not available. The result carries `u = 0`.
pub fn tau(m: &UnstableModule) -> Result<UnstableModule> {
    let u = m
        .u_maps()
        .ok_or_else(|| Error::Unsupported("τ needs a module with u".into()))?;
    let top = m
        .max_degree()
        .checked_sub(1)
        .ok_or_else(|| Error::Unsupported("τ needs max degree ≥ 1".into()))?;
    let bases: Vec<Vec<F2Vector>> = (0..=top).map(|n| u[n].kernel_basis()).collect();
    let coords = bases
        .iter()
        .enumerate()
        .map(|(n, b)| Coordinates::new(m.dim(n), b))
        .collect::<Result<Vec<_>>>()?;
    let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
    Ok(module_from_columns(top, dims, |i, n, k| {
        coords[n + i]
            .coords(&m.apply_sq(i, n, &bases[n][k]))
            .ok_or_else(|| Error::Invariant(format!("ker u not stable under Sq^{i} in degree {n}")))
    })?
    .with_zero_u())
}

/// `dim (τM)^n` for `n ≤ N`, with `None` in degree `N` where `u` leaves the truncation.
pub fn tau_dims(m: &UnstableModule) -> Result<Vec<Option<usize>>> {
    let mut dims: Vec<Option<usize>> = tau(m)?.dims().iter().copied().map(Some).collect();
    dims.push(None);
    Ok(dims)
}

/// `dim coker(u)^n + dim ker(u)^n` for `n ≤ N − 1`: the Poincaré series of the double
/// cover classified by `e`, read off the Gysin sequence.
pub fn gysin_dims(m: &UnstableModule) -> Result<Vec<usize>> {
    let u = m
        .u_maps()
        .ok_or_else(|| Error::Unsupported("the Gysin sequence needs a module with u".into()))?;
    let top = m
        .max_degree()
        .checked_sub(1)
        .ok_or_else(|| Error::Unsupported("the Gysin sequence needs max degree ≥ 1".into()))?;
    Ok((0..=top)
        .map(|n| {
            let image = if n == 0 { 0 } else { u[n - 1].rank() };
            let kernel = m.dim(n) - u[n].rank();
            m.dim(n) - image + kernel
        })
        .collect())
}
