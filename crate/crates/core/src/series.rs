//! Truncated power series with exact integer coefficients, and the recursions for the
//! Poincaré series of the cohomology of Sylow subgroups of symmetric and alternating groups.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::unstable::sylow_alternating_dims;

/// `c_0 + c_1 t + … + c_N t^N`, with all arithmetic truncated at `t^N`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PowerSeries {
    coeffs: Vec<BigInt>,
}

impl PowerSeries {
    #[must_use]
    pub fn zero(truncation: usize) -> Self {
        Self {
            coeffs: vec![BigInt::zero(); truncation + 1],
        }
    }

    #[must_use]
    pub fn constant(c: i64, truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        s.coeffs[0] = BigInt::from(c);
        s
    }

    #[must_use]
    pub fn one(truncation: usize) -> Self {
        Self::constant(1, truncation)
    }

    /// `c t^k`.
    #[must_use]
    pub fn monomial(c: i64, k: usize, truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        if k <= truncation {
            s.coeffs[k] = BigInt::from(c);
        }
        s
    }

    /// Pads or truncates the given coefficients to `c_0..c_N`.
    #[must_use]
    pub fn from_coeffs<T: Into<BigInt> + Clone>(coeffs: &[T], truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        for (k, c) in coeffs.iter().take(truncation + 1).enumerate() {
            s.coeffs[k] = c.clone().into();
        }
        s
    }

    /// `1/(1−t)^k`, with coefficients `C(n+k−1, k−1)`.
    #[must_use]
    pub fn inverse_one_minus_t_pow(k: usize, truncation: usize) -> Self {
        let mut s = Self::one(truncation);
        for _ in 0..k {
            s = s.over_one_minus_t();
        }
        s
    }

    #[must_use]
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `t^n`; zero beyond the truncation.
    #[must_use]
    pub fn coeff(&self, n: usize) -> BigInt {
        self.coeffs.get(n).cloned().unwrap_or_default()
    }

    #[must_use]
    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficients as `u64`, if all fit.
    #[must_use]
    pub fn to_u64s(&self) -> Option<Vec<u64>> {
        self.coeffs.iter().map(ToPrimitive::to_u64).collect()
    }

    /// Restricts to `c_0..c_M` for `M ≤ N`.
    #[must_use]
    pub fn truncate(&self, truncation: usize) -> Self {
        Self {
            coeffs: self.coeffs[..=truncation.min(self.truncation())].to_vec(),
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.truncation() == other.truncation() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "series truncated at {} and {}",
                self.truncation(),
                other.truncation()
            )))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let n = self.truncation();
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                out.coeffs[i + j] += a * b;
            }
        }
        Ok(out)
    }

    #[must_use]
    pub fn scale(&self, c: i64) -> Self {
        let c = BigInt::from(c);
        Self {
            coeffs: self.coeffs.iter().map(|a| a * &c).collect(),
        }
    }

    /// Divides every coefficient by `d`, failing unless all are divisible.
    pub fn div_exact(&self, d: i64) -> Result<Self> {
        let d = BigInt::from(d);
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| {
                if (a % &d).is_zero() {
                    Ok(a / &d)
                } else {
                    Err(Error::Arithmetic(format!("coefficient {a} of t^{k} is not divisible by {d}")))
                }
            })
            .collect::<Result<_>>()?;
        Ok(Self { coeffs })
    }

    /// `s(t^k)`.
    #[must_use]
    pub fn substitute_power(&self, k: usize) -> Self {
        assert!(k > 0, "substitution t ↦ t^0");
        let mut out = Self::zero(self.truncation());
        for (i, a) in self.coeffs.iter().enumerate() {
            if i * k > self.truncation() {
                break;
            }
            out.coeffs[i * k] = a.clone();
        }
        out
    }

    /// `t^k · s`.
    #[must_use]
    pub fn shift(&self, k: usize) -> Self {
        let n = self.truncation();
        let mut out = Self::zero(n);
        for i in k..=n {
            out.coeffs[i] = self.coeffs[i - k].clone();
        }
        out
    }

    /// `s / (1 − t)`: partial sums.
    #[must_use]
    pub fn over_one_minus_t(&self) -> Self {
        let mut acc = BigInt::zero();
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|a| {
                    acc += a;
                    acc.clone()
                })
                .collect(),
        }
    }

    /// `(1 + εt) · s` for `ε = ±1`.
    fn times_one_plus(&self, sign: i64) -> Self {
        let mut out = self.clone();
        for i in 1..self.coeffs.len() {
            out.coeffs[i] += &self.coeffs[i - 1] * sign;
        }
        out
    }

    #[must_use]
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    fn require_nonnegative(self, what: &str) -> Result<Self> {
        match self.coeffs.iter().position(Signed::is_negative) {
            None => Ok(self),
            Some(k) => Err(Error::Arithmetic(format!(
                "{what}: negative coefficient {} at t^{k}",
                self.coeffs[k]
            ))),
        }
    }

    /// Parses `"1,2,3"` (whitespace tolerated) into a series truncated at `N`.
    pub fn parse(text: &str, truncation: usize) -> Result<Self> {
        let coeffs = text
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad coefficient {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_coeffs(&coeffs, truncation))
    }

    #[must_use]
    pub fn to_json(&self, label: impl Into<String>) -> SeriesJson {
        SeriesJson {
            label: label.into(),
            truncation: self.truncation(),
            coefficients: self
                .coeffs
                .iter()
                .map(|c| match c.to_i64() {
                    Some(v) => serde_json::Value::from(v),
                    None => serde_json::Value::from(c.to_string()),
                })
                .collect(),
        }
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}; N={}]", self.truncation())
    }
}

/// `{"label", "truncation", "coefficients"}`; coefficients beyond the `i64` range are
/// written as decimal strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub label: String,
    pub truncation: usize,
    pub coefficients: Vec<serde_json::Value>,
}

/// `(S(t)² + S(t²))/2`, the series of `(M ⊗ M)^{𝔖₂}`.
pub fn series_sym_invariants(s: &PowerSeries) -> Result<PowerSeries> {
    s.mul(s)?.add(&s.substitute_power(2))?.div_exact(2)
}

/// `(S(t)² + S(t²))/2 + t/(1−t) · S(t²)`, the series of the quadratic construction.
pub fn series_quadratic(s: &PowerSeries) -> Result<PowerSeries> {
    series_sym_invariants(s)?.add(&s.substitute_power(2).shift(1).over_one_minus_t())
}

/// `(1−t) S_X + (1+t) S_ker`, the series of a double cover from the Gysin sequence.
pub fn series_gysin(s_x: &PowerSeries, s_ker: &PowerSeries) -> Result<PowerSeries> {
    s_x.times_one_plus(-1)
        .add(&s_ker.times_one_plus(1))?
        .require_nonnegative("Gysin series")
}

/// The series of `τ𝔖₂M` from those of a reduced `M` and of `τM`.
pub fn series_tau_quadratic(s_m: &PowerSeries, s_tau: &PowerSeries) -> Result<PowerSeries> {
    let correction = series_sym_invariants(s_m)?.sub(&series_sym_invariants(s_tau)?)?;
    series_quadratic(s_m)?
        .sub(&correction)?
        .require_nonnegative("τ of the quadratic construction")
}

/// `S_m`, `T_m`, `A_m`: the series of `H*S_{2^m}`, of its `P`-trivial part and of `H*A_{2^m}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pipeline {
    pub s: PowerSeries,
    pub t: PowerSeries,
    pub a: PowerSeries,
}

/// Runs the recursion from `S₁ = 1/(1−t)`, `T₁ = 0` up to `m`.
pub fn series_sylow_alt_pipeline(m: u32, truncation: usize) -> Result<Pipeline> {
    if m == 0 {
        return Err(Error::Unsupported("the pipeline starts at m = 1".into()));
    }
    let mut s = PowerSeries::inverse_one_minus_t_pow(1, truncation);
    let mut t = PowerSeries::zero(truncation);
    for _ in 1..m {
        let next_t = series_tau_quadratic(&s, &t)?;
        s = series_quadratic(&s)?;
        t = next_t;
    }
    let a = series_gysin(&s, &t)?;
    Ok(Pipeline { s, t, a })
}

/// The series of `H*(A₄ ⋉ X⁴)` in terms of `S = S(H*X)`:
/// `S(t⁴)/(1−t)² + 3(S(t²)² − S(t⁴))/(2(1−t)) + (S⁴ − 3S(t²)² + 2S(t⁴))/4`.
pub fn series_a4x(s: &PowerSeries) -> Result<PowerSeries> {
    let n = s.truncation();
    let s2 = s.substitute_power(2);
    let s4 = s.substitute_power(4);
    let s2_sq = s2.mul(&s2)?;
    let first = s4.mul(&PowerSeries::inverse_one_minus_t_pow(2, n))?;
    let second = s2_sq.sub(&s4)?.div_exact(2)?.scale(3).over_one_minus_t();
    let s_sq = s.mul(s)?;
    let third = s_sq
        .mul(&s_sq)?
        .sub(&s2_sq.scale(3))?
        .add(&s4.scale(2))?
        .div_exact(4)?;
    first.add(&second)?.add(&third)?.require_nonnegative("A₄X series")
}

/// The series of `H*S_n` as the product over the binary digits `2^m` of `n` of `S_m`.
pub fn sylow_symmetric_series(n: usize, truncation: usize) -> Result<PowerSeries> {
    let mut out = PowerSeries::one(truncation);
    let mut bits = n;
    let mut m = 0;
    while bits > 0 {
        if bits & 1 == 1 && m > 0 {
            out = out.mul(&series_sylow_alt_pipeline(m, truncation)?.s)?;
        }
        bits >>= 1;
        m += 1;
    }
    Ok(out)
}

/// The series of `H*A_n`: the recursion when `n` is a power of two, otherwise the Gysin
/// sequence evaluated on the module model of `H*S_n`.
pub fn sylow_alternating_series(n: usize, truncation: usize) -> Result<PowerSeries> {
    if n <= 1 {
        return Ok(PowerSeries::one(truncation));
    }
    if n.is_power_of_two() {
        return Ok(series_sylow_alt_pipeline(n.trailing_zeros(), truncation)?.a);
    }
    let dims = sylow_alternating_dims(n, truncation + 1)?;
    Ok(PowerSeries::from_coeffs(
        &dims.iter().map(|&d| BigInt::from(d)).collect::<Vec<_>>(),
        truncation,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &PowerSeries) -> Vec<i64> {
        s.coefficients().iter().map(|c| c.to_i64().unwrap()).collect()
    }

    #[test]
    fn quadratic_examples() {
        assert_eq!(ints(&series_quadratic(&PowerSeries::one(6)).unwrap()), vec![1; 7]);
        let p = PowerSeries::inverse_one_minus_t_pow(1, 6);
        assert_eq!(ints(&series_quadratic(&p).unwrap()), vec![1, 2, 3, 4, 5, 6, 7]);
        assert_eq!(series_quadratic(&PowerSeries::constant(2, 3)).unwrap().coeff(0), BigInt::from(3));
    }

    #[test]
    fn sym_examples() {
        assert_eq!(ints(&series_sym_invariants(&PowerSeries::one(4)).unwrap()), vec![1, 0, 0, 0, 0]);
        let p = PowerSeries::inverse_one_minus_t_pow(1, 6);
        assert_eq!(ints(&series_sym_invariants(&p).unwrap()), vec![1, 1, 2, 2, 3, 3, 4]);
        let s = PowerSeries::from_coeffs(&[1, 1], 4);
        assert_eq!(ints(&series_sym_invariants(&s).unwrap()), vec![1, 1, 1, 0, 0]);
    }

    #[test]
    fn inexact_division_is_an_error() {
        let s = PowerSeries::from_coeffs(&[2, 3], 2);
        assert!(matches!(s.div_exact(2), Err(Error::Arithmetic(_))));
        assert_eq!(ints(&s.scale(2).div_exact(2).unwrap()), vec![2, 3, 0]);
    }

    #[test]
    fn gysin_examples() {
        let p = PowerSeries::inverse_one_minus_t_pow(1, 8);
        assert_eq!(ints(&series_gysin(&p, &PowerSeries::zero(8)).unwrap()), vec![1, 0, 0, 0, 0, 0, 0, 0, 0]);
        assert!(series_gysin(&PowerSeries::one(3), &PowerSeries::zero(3)).is_err());
    }

    #[test]
    fn tau_quadratic_examples() {
        let p = PowerSeries::inverse_one_minus_t_pow(1, 7);
        let t = series_tau_quadratic(&p, &PowerSeries::zero(7)).unwrap();
        assert_eq!(ints(&t), vec![0, 1, 1, 2, 2, 3, 3, 4]);
        let f = series_tau_quadratic(&PowerSeries::one(5), &PowerSeries::one(5)).unwrap();
        assert_eq!(ints(&f), vec![1; 6]);
    }

    #[test]
    fn pipeline_values() {
        let p3 = series_sylow_alt_pipeline(3, 7).unwrap();
        assert_eq!(ints(&p3.s), vec![1, 3, 7, 13, 22, 34, 50, 70]);
        assert_eq!(ints(&p3.t), vec![0, 1, 2, 4, 6, 10, 14, 20]);
        assert_eq!(ints(&p3.a), vec![1, 3, 7, 12, 19, 28, 40, 54]);
        assert_eq!(series_sylow_alt_pipeline(4, 2).unwrap().a.coeff(2), BigInt::from(13));
    }

    #[test]
    fn a4x_values() {
        assert_eq!(ints(&series_a4x(&PowerSeries::one(6)).unwrap()), vec![1, 2, 3, 4, 5, 6, 7]);
        let p2 = PowerSeries::inverse_one_minus_t_pow(2, 4);
        assert_eq!(series_a4x(&p2).unwrap().coeff(2), BigInt::from(15));
    }

    #[test]
    fn json_shape() {
        let j = PowerSeries::from_coeffs(&[1, 2], 2).to_json("x");
        assert_eq!(serde_json::to_string(&j).unwrap(), r#"{"label":"x","truncation":2,"coefficients":[1,2,0]}"#);
    }
}
