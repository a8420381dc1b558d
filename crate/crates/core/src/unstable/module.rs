use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2::{F2Matrix, F2Vector};

/// `C(a, b) mod 2` by Lucas' theorem; zero when `b > a`.
#[must_use]
pub fn binomial_mod2(a: usize, b: usize) -> bool {
    b <= a && (b & !a) == 0
}

/// `C(a, b) mod 2` for possibly negative arguments, zero outside `0 ≤ b ≤ a`.
#[must_use]
pub fn binomial_mod2_signed(a: i64, b: i64) -> bool {
    a >= 0 && b >= 0 && binomial_mod2(a as usize, b as usize)
}

/// A graded F2 vector space through degree `N` with Steenrod squares, optionally
/// decorated by a degree-one self-map `u` (multiplication by a class `e` of degree 1).
///
/// `sq(i, n)` is the matrix of `Sq^i: M^n → M^{n+i}` for `1 ≤ i`, `n + i ≤ N`; `Sq^0` is
/// the identity and is not stored. `u(n)` maps `M^n → M^{n+1}` for `n < N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnstableModule {
    max_degree: usize,
    dims: Vec<usize>,
    sq: Vec<Vec<F2Matrix>>,
    u_mult: Option<Vec<F2Matrix>>,
    labels: Option<Vec<Vec<String>>>,
}

impl UnstableModule {
    /// Builds a module from dimensions and a function giving `Sq^i` on degree `n`.
    /// Matrix shapes are validated.
    pub fn from_fn(
        max_degree: usize,
        dims: Vec<usize>,
        mut sq: impl FnMut(usize, usize) -> Result<F2Matrix>,
    ) -> Result<Self> {
        if dims.len() != max_degree + 1 {
            return Err(Error::DimensionMismatch(format!(
                "{} dimensions for max degree {max_degree}",
                dims.len()
            )));
        }
        let mut table = Vec::with_capacity(max_degree);
        for i in 1..=max_degree {
            let mut row = Vec::with_capacity(max_degree + 1 - i);
            for n in 0..=max_degree - i {
                let m = sq(i, n)?;
                if (m.rows(), m.cols()) != (dims[n + i], dims[n]) {
                    return Err(Error::DimensionMismatch(format!(
                        "Sq^{i} on degree {n} is {}x{}, expected {}x{}",
                        m.rows(),
                        m.cols(),
                        dims[n + i],
                        dims[n]
                    )));
                }
                row.push(m);
            }
            table.push(row);
        }
        Ok(Self {
            max_degree,
            dims,
            sq: table,
            u_mult: None,
            labels: None,
        })
    }

    /// Attaches the `u` action; `u[n]` maps degree `n` to `n + 1` for `n < N`.
    pub fn with_u_mult(mut self, u: Vec<F2Matrix>) -> Result<Self> {
        if u.len() != self.max_degree {
            return Err(Error::DimensionMismatch(format!(
                "{} u-maps for max degree {}",
                u.len(),
                self.max_degree
            )));
        }
        for (n, m) in u.iter().enumerate() {
            if (m.rows(), m.cols()) != (self.dims[n + 1], self.dims[n]) {
                return Err(Error::DimensionMismatch(format!("u on degree {n} has the wrong shape")));
            }
        }
        self.u_mult = Some(u);
        Ok(self)
    }

    /// Sets `u = 0`, making the module P-trivial.
    #[must_use]
    pub fn with_zero_u(mut self) -> Self {
        self.u_mult = Some(
            (0..self.max_degree)
                .map(|n| F2Matrix::zeros(self.dims[n + 1], self.dims[n]))
                .collect(),
        );
        self
    }

    #[must_use]
    pub fn without_u(mut self) -> Self {
        self.u_mult = None;
        self
    }

    pub fn with_labels(mut self, labels: Vec<Vec<String>>) -> Result<Self> {
        if labels.len() != self.dims.len() || labels.iter().zip(&self.dims).any(|(l, &d)| l.len() != d) {
            return Err(Error::DimensionMismatch("labels do not match dimensions".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    #[must_use]
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    #[must_use]
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    #[must_use]
    pub fn dim(&self, n: usize) -> usize {
        self.dims[n]
    }

    #[must_use]
    pub fn labels(&self) -> Option<&[Vec<String>]> {
        self.labels.as_deref()
    }

    /// Stored matrix of `Sq^i` on degree `n`, for `i ≥ 1`.
    #[must_use]
    pub fn sq(&self, i: usize, n: usize) -> &F2Matrix {
        assert!(i >= 1 && n + i <= self.max_degree, "Sq^{i} on degree {n} is outside the truncation");
        &self.sq[i - 1][n]
    }

    /// Matrix of `Sq^i` on degree `n`, including `Sq^0 = id`.
    #[must_use]
    pub fn sq_matrix(&self, i: usize, n: usize) -> F2Matrix {
        if i == 0 {
            F2Matrix::identity(self.dims[n])
        } else {
            self.sq(i, n).clone()
        }
    }

    /// `Sq^i v` for `v` in degree `n`.
    #[must_use]
    pub fn apply_sq(&self, i: usize, n: usize, v: &F2Vector) -> F2Vector {
        if i == 0 {
            v.clone()
        } else {
            self.sq(i, n).mul_vec(v)
        }
    }

    #[must_use]
    pub fn has_u(&self) -> bool {
        self.u_mult.is_some()
    }

    /// `u: M^n → M^{n+1}` if the module carries it.
    #[must_use]
    pub fn u(&self, n: usize) -> Option<&F2Matrix> {
        self.u_mult.as_ref().map(|u| &u[n])
    }

    #[must_use]
    pub fn u_maps(&self) -> Option<&[F2Matrix]> {
        self.u_mult.as_deref()
    }

    /// Restriction to degrees `≤ max_degree`.
    pub fn truncate(&self, max_degree: usize) -> Result<Self> {
        if max_degree > self.max_degree {
            return Err(Error::Unsupported(format!(
                "cannot extend a module known through degree {} to {max_degree}",
                self.max_degree
            )));
        }
        let mut out = Self::from_fn(max_degree, self.dims[..=max_degree].to_vec(), |i, n| {
            Ok(self.sq(i, n).clone())
        })?;
        if let Some(u) = &self.u_mult {
            out = out.with_u_mult(u[..max_degree].to_vec())?;
        }
        if let Some(l) = &self.labels {
            out = out.with_labels(l[..=max_degree].to_vec())?;
        }
        Ok(out)
    }

    /// Instability: `Sq^i x = 0` whenever `i > |x|`. Returns the violations found.
    #[must_use]
    pub fn check_instability(&self) -> Vec<String> {
        let mut bad = Vec::new();
        for i in 1..=self.max_degree {
            for n in 0..=self.max_degree - i {
                if i > n && !self.sq(i, n).is_zero() {
                    bad.push(format!("Sq^{i} nonzero on degree {n}"));
                }
            }
        }
        bad
    }

    /// Adem relations `Sq^a Sq^b = Σ_j C(b−1−j, a−2j) Sq^{a+b−j} Sq^j` for `0 < a < 2b`,
    /// on every degree where both sides are defined.
    #[must_use]
    pub fn check_adem(&self) -> Vec<String> {
        let top = self.max_degree;
        let mut bad = Vec::new();
        for b in 1..=top {
            for a in 1..(2 * b).min(top + 1) {
                if a + b > top {
                    break;
                }
                for n in 0..=top - a - b {
                    let lhs = self.sq(a, n + b).mul(self.sq(b, n));
                    let mut rhs = F2Matrix::zeros(self.dims[n + a + b], self.dims[n]);
                    for j in 0..=a / 2 {
                        if binomial_mod2_signed(b as i64 - 1 - j as i64, a as i64 - 2 * j as i64) {
                            let term = self.sq_matrix(a + b - j, n + j).mul(&self.sq_matrix(j, n));
                            rhs = rhs.add(&term);
                        }
                    }
                    if lhs != rhs {
                        bad.push(format!("Adem relation Sq^{a}Sq^{b} fails on degree {n}"));
                    }
                }
            }
        }
        bad
    }

    /// `Sq^i(u x) = u Sq^i x + u² Sq^{i−1} x` on every degree where both sides are defined.
    /// Empty when the module carries no `u`.
    #[must_use]
    pub fn check_u_compatibility(&self) -> Vec<String> {
        let Some(u) = &self.u_mult else {
            return Vec::new();
        };
        let top = self.max_degree;
        let mut bad = Vec::new();
        for i in 1..top {
            for n in 0..top - i {
                let lhs = self.sq(i, n + 1).mul(&u[n]);
                let mut rhs = u[n + i].mul(&self.sq_matrix(i, n));
                if n + i >= 1 {
                    let twice = u[n + i].mul(&u[n + i - 1]);
                    rhs = rhs.add(&twice.mul(&self.sq_matrix(i - 1, n)));
                }
                if lhs != rhs {
                    bad.push(format!("Sq^{i}(u x) formula fails on degree {n}"));
                }
            }
        }
        bad
    }

    /// Whether `Sq₀ x = Sq^{|x|} x` is injective on degrees `1..=through`. Needs
    /// `2·through ≤ N`.
    pub fn check_reduced(&self, through: usize) -> Result<bool> {
        if 2 * through > self.max_degree {
            return Err(Error::Unsupported(format!(
                "reducedness through degree {through} needs max degree ≥ {}",
                2 * through
            )));
        }
        Ok((1..=through).all(|n| self.sq(n, n).rank() == self.dims[n]))
    }

    /// Largest `D` with `2D ≤ N` such that `Sq₀` is injective through degree `D`.
    #[must_use]
    pub fn reduced_through(&self) -> usize {
        let mut d = 0;
        while 2 * (d + 1) <= self.max_degree && self.sq(d + 1, d + 1).rank() == self.dims[d + 1] {
            d += 1;
        }
        d
    }

    /// All structural checks at once; empty means every check passed.
    #[must_use]
    pub fn check_all(&self) -> Vec<String> {
        let mut bad = self.check_instability();
        bad.extend(self.check_adem());
        bad.extend(self.check_u_compatibility());
        bad
    }

    /// Serializable form with matrices as rows of `0`/`1` strings.
    #[must_use]
    pub fn to_dump(&self) -> ModuleDump {
        let mut sq = Vec::new();
        for i in 1..=self.max_degree {
            for n in 0..=self.max_degree - i {
                sq.push(SqEntry {
                    i,
                    n,
                    matrix: self.sq(i, n).to_bitstrings(),
                });
            }
        }
        ModuleDump {
            max_degree: self.max_degree,
            dims: self.dims.clone(),
            sq,
            u_mult: self
                .u_mult
                .as_ref()
                .map(|u| u.iter().map(F2Matrix::to_bitstrings).collect()),
        }
    }

    /// Rebuilds a module from its dump, validating every shape.
    pub fn from_dump(dump: &ModuleDump) -> Result<Self> {
        let parse = |rows: &[String], r: usize, c: usize| -> Result<F2Matrix> {
            let vecs = rows.iter().map(|s| F2Vector::from_bitstring(s)).collect::<Result<Vec<_>>>()?;
            let m = F2Matrix::from_rows(c, vecs)?;
            if m.rows() != r {
                return Err(Error::DimensionMismatch(format!("expected {r} rows, found {}", m.rows())));
            }
            Ok(m)
        };
        let m = Self::from_fn(dump.max_degree, dump.dims.clone(), |i, n| {
            let entry = dump
                .sq
                .iter()
                .find(|e| e.i == i && e.n == n)
                .ok_or_else(|| Error::Parse(format!("dump lacks Sq^{i} on degree {n}")))?;
            parse(&entry.matrix, dump.dims[n + i], dump.dims[n])
        })?;
        match &dump.u_mult {
            None => Ok(m),
            Some(u) => {
                let maps = u
                    .iter()
                    .enumerate()
                    .map(|(n, rows)| parse(rows, dump.dims.get(n + 1).copied().unwrap_or(0), dump.dims[n]))
                    .collect::<Result<Vec<_>>>()?;
                m.with_u_mult(maps)
            }
        }
    }
}

/// JSON form of a module: `{max_degree, dims, sq: [{i, n, matrix}], u_mult?}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleDump {
    pub max_degree: usize,
    pub dims: Vec<usize>,
    pub sq: Vec<SqEntry>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub u_mult: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SqEntry {
    pub i: usize,
    pub n: usize,
    pub matrix: Vec<String>,
}

/// A degree-preserving linear map between truncated modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    source_dims: Vec<usize>,
    target_dims: Vec<usize>,
    maps: Vec<F2Matrix>,
}

impl ModuleMap {
    /// `maps[n]` is `dim target^n × dim source^n`.
    pub fn new(source_dims: Vec<usize>, target_dims: Vec<usize>, maps: Vec<F2Matrix>) -> Result<Self> {
        if source_dims.len() != target_dims.len() || maps.len() != source_dims.len() {
            return Err(Error::DimensionMismatch("module map degree ranges differ".into()));
        }
        for (n, m) in maps.iter().enumerate() {
            if (m.rows(), m.cols()) != (target_dims[n], source_dims[n]) {
                return Err(Error::DimensionMismatch(format!("module map on degree {n} has the wrong shape")));
            }
        }
        Ok(Self {
            source_dims,
            target_dims,
            maps,
        })
    }

    #[must_use]
    pub fn identity(dims: &[usize]) -> Self {
        Self {
            source_dims: dims.to_vec(),
            target_dims: dims.to_vec(),
            maps: dims.iter().map(|&d| F2Matrix::identity(d)).collect(),
        }
    }

    #[must_use]
    pub fn max_degree(&self) -> usize {
        self.maps.len() - 1
    }

    #[must_use]
    pub fn degree(&self, n: usize) -> &F2Matrix {
        &self.maps[n]
    }

    #[must_use]
    pub fn source_dims(&self) -> &[usize] {
        &self.source_dims
    }

    #[must_use]
    pub fn target_dims(&self) -> &[usize] {
        &self.target_dims
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ModuleMap) -> Result<ModuleMap> {
        if first.target_dims != self.source_dims {
            return Err(Error::DimensionMismatch("composable maps must share a middle module".into()));
        }
        ModuleMap::new(
            first.source_dims.clone(),
            self.target_dims.clone(),
            self.maps.iter().zip(&first.maps).map(|(a, b)| a.mul(b)).collect(),
        )
    }

    /// Violations of `f Sq^i = Sq^i f` (and `f u = u f` when both carry `u`).
    #[must_use]
    pub fn check_commutes(&self, source: &UnstableModule, target: &UnstableModule) -> Vec<String> {
        let top = self.max_degree().min(source.max_degree()).min(target.max_degree());
        let mut bad = Vec::new();
        for i in 1..=top {
            for n in 0..=top - i {
                if self.maps[n + i].mul(source.sq(i, n)) != target.sq(i, n).mul(&self.maps[n]) {
                    bad.push(format!("map does not commute with Sq^{i} on degree {n}"));
                }
            }
        }
        if let (Some(us), Some(ut)) = (source.u_maps(), target.u_maps()) {
            for n in 0..top {
                if self.maps[n + 1].mul(&us[n]) != ut[n].mul(&self.maps[n]) {
                    bad.push(format!("map does not commute with u on degree {n}"));
                }
            }
        }
        bad
    }
}
