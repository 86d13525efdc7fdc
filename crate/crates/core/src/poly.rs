//! Exact coefficient arithmetic: domination polynomials, univariate integer
//! polynomials and truncated bivariate series.

use std::fmt;
use std::ops::{AddAssign, Mul};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Which way a domination polynomial is written down.
///
/// `D` puts `γ_k` on `t^k`; `Gamma` puts it on `t^(n-k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Convention {
    D,
    Gamma,
}

impl Convention {
    pub fn name(self) -> &'static str {
        match self {
            Convention::D => "D",
            Convention::Gamma => "gamma",
        }
    }
}

impl FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "D" | "d" => Ok(Convention::D),
            "gamma" => Ok(Convention::Gamma),
            other => Err(Error::domain(format!("unknown convention `{other}` (expected D or gamma)"))),
        }
    }
}

/// Plain convolution of two coefficient vectors.
pub fn poly_mul<T>(a: &[T], b: &[T]) -> Vec<T>
where
    T: Zero + Clone + AddAssign,
    for<'x> &'x T: Mul<&'x T, Output = T>,
{
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Counts `γ_0..γ_n` of dominating k-sets, tied to a vertex count `n`.
///
/// Stored in the D-convention: `coeffs[k] = γ_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DomPolynomial {
    n: usize,
    coeffs: Vec<BigUint>,
}

impl DomPolynomial {
    pub fn new(n: usize, coeffs: Vec<BigUint>) -> Result<Self> {
        if coeffs.len() != n + 1 {
            return Err(Error::domain(format!(
                "context n = {n} needs {} coefficients, got {}",
                n + 1,
                coeffs.len()
            )));
        }
        Ok(DomPolynomial { n, coeffs })
    }

    pub fn from_u64s(n: usize, coeffs: &[u64]) -> Result<Self> {
        Self::new(n, coeffs.iter().map(|&c| BigUint::from(c)).collect())
    }

    /// The zero polynomial with context `n`.
    pub fn zero(n: usize) -> Self {
        DomPolynomial { n, coeffs: vec![BigUint::zero(); n + 1] }
    }

    /// `(1+t)^n`, i.e. every subset counts.
    pub fn all_subsets(n: usize) -> Self {
        let mut coeffs = Vec::with_capacity(n + 1);
        let mut c = BigUint::one();
        for k in 0..=n {
            coeffs.push(c.clone());
            c = c * (n - k) / (k + 1);
        }
        DomPolynomial { n, coeffs }
    }

    /// Reads a γ-convention polynomial (coefficient of `t^j` is `γ_{n-j}`).
    pub fn from_gamma(n: usize, series: &UnivariateSeries) -> Result<Self> {
        let series = series.trimmed();
        if series.0.len() > n + 1 {
            return Err(Error::domain(format!(
                "degree {} exceeds context n = {n}",
                series.0.len() - 1
            )));
        }
        let coeffs = (0..=n)
            .map(|k| {
                let c = series.coeff(n - k);
                c.to_biguint()
                    .ok_or_else(|| Error::domain(format!("negative coefficient {c} for k = {k}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DomPolynomial { n, coeffs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `γ_0..γ_n`.
    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    /// `γ_k`, zero for `k > n`.
    pub fn coeff(&self, k: usize) -> BigUint {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `D(G,t)` as a plain polynomial in `t`.
    pub fn to_d(&self) -> UnivariateSeries {
        UnivariateSeries(self.coeffs.iter().map(|c| BigInt::from(c.clone())).collect())
    }

    /// `γ(G,t) = t^n D(G,1/t)`.
    pub fn to_gamma(&self) -> UnivariateSeries {
        UnivariateSeries(self.coeffs.iter().rev().map(|c| BigInt::from(c.clone())).collect())
    }

    pub fn in_convention(&self, convention: Convention) -> UnivariateSeries {
        match convention {
            Convention::D => self.to_d(),
            Convention::Gamma => self.to_gamma(),
        }
    }

    /// Product of domination polynomials; the contexts add.
    pub fn mul(&self, other: &DomPolynomial) -> DomPolynomial {
        DomPolynomial { n: self.n + other.n, coeffs: poly_mul(&self.coeffs, &other.coeffs) }
    }

    /// `D(G, t)` by Horner's rule.
    pub fn evaluate(&self, t: i64) -> BigInt {
        let t = BigInt::from(t);
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * &t + BigInt::from(c.clone()))
    }

    /// Smallest `k` with `γ_k > 0`.
    pub fn domination_number(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Ascending powers of `t`, e.g. `1 + 3t + t^2`.
    pub fn render_plain(&self, convention: Convention) -> String {
        self.in_convention(convention).to_string()
    }

    /// Comma-separated coefficients in ascending powers of `t`.
    pub fn render_csv(&self, convention: Convention) -> String {
        let series = self.in_convention(convention);
        series.0.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
    }

    /// `{"coeffs": [...], "convention": "D"|"gamma", "n": n}` with
    /// coefficients as decimal strings, ascending powers of `t`.
    pub fn to_json(&self, convention: Convention) -> Value {
        let series = self.in_convention(convention);
        json!({
            "n": self.n,
            "convention": convention.name(),
            "coeffs": series.0.iter().map(ToString::to_string).collect::<Vec<_>>(),
        })
    }
}

/// A polynomial with big-integer coefficients; index `i` holds `x^i`.
///
/// Trailing zeros are allowed; equality compares the trimmed forms.
#[derive(Clone, Debug, Default, Eq)]
pub struct UnivariateSeries(pub Vec<BigInt>);

impl PartialEq for UnivariateSeries {
    fn eq(&self, other: &Self) -> bool {
        self.trimmed().0 == other.trimmed().0
    }
}

impl UnivariateSeries {
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        UnivariateSeries(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        UnivariateSeries(vec![BigInt::one()])
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        UnivariateSeries(coeffs)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.0.get(i).cloned().unwrap_or_default()
    }

    pub fn trimmed(&self) -> UnivariateSeries {
        let len = self.0.iter().rposition(|c| !c.is_zero()).map_or(0, |i| i + 1);
        UnivariateSeries(self.0[..len].to_vec())
    }

    /// Degree of the trimmed form; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.iter().rposition(|c| !c.is_zero())
    }

    pub fn nonzero_terms(&self) -> usize {
        self.0.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn mul(&self, other: &UnivariateSeries) -> UnivariateSeries {
        UnivariateSeries(poly_mul(&self.0, &other.0))
    }

    pub fn pow(&self, e: u32) -> UnivariateSeries {
        (0..e).fold(UnivariateSeries::one(), |acc, _| acc.mul(self))
    }

    pub fn add(&self, other: &UnivariateSeries) -> UnivariateSeries {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &UnivariateSeries) -> UnivariateSeries {
        self.zip_with(other, |a, b| a - b)
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> UnivariateSeries {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.0.iter().cloned());
        UnivariateSeries(coeffs)
    }

    fn zip_with(&self, other: &UnivariateSeries, f: impl Fn(BigInt, BigInt) -> BigInt) -> Self {
        let len = self.0.len().max(other.0.len());
        UnivariateSeries((0..len).map(|i| f(self.coeff(i), other.coeff(i))).collect())
    }
}

impl fmt::Display for UnivariateSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (power, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = (c.is_negative(), c.abs());
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            if power == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match power {
                0 => {}
                1 => f.write_str("t")?,
                p => write!(f, "t^{p}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Coefficients `c[n][k]` of `x^n y^k` for `n <= max_n`, `k <= max_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedBivariateSeries {
    max_n: usize,
    max_k: usize,
    c: Vec<Vec<BigInt>>,
}

impl TruncatedBivariateSeries {
    pub fn zeros(max_n: usize, max_k: usize) -> Self {
        TruncatedBivariateSeries { max_n, max_k, c: vec![vec![BigInt::zero(); max_k + 1]; max_n + 1] }
    }

    /// Sums the given terms, silently dropping any beyond the bounds.
    pub fn from_terms(
        max_n: usize,
        max_k: usize,
        terms: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> Self {
        let mut s = Self::zeros(max_n, max_k);
        for (n, k, v) in terms {
            if n <= max_n && k <= max_k {
                s.c[n][k] += v;
            }
        }
        s
    }

    pub fn bounds(&self) -> (usize, usize) {
        (self.max_n, self.max_k)
    }

    pub fn get(&self, n: usize, k: usize) -> BigInt {
        self.c.get(n).and_then(|row| row.get(k)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, n: usize, k: usize, v: BigInt) {
        self.c[n][k] = v;
    }

    /// `(n, k, c)` for every nonzero coefficient, in `(n, k)` order.
    pub fn nonzero_terms(&self) -> Vec<(usize, usize, BigInt)> {
        let mut out = Vec::new();
        for (n, row) in self.c.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    out.push((n, k, v.clone()));
                }
            }
        }
        out
    }

    fn check_bounds(&self, other: &Self) -> Result<()> {
        if self.bounds() != other.bounds() {
            return Err(Error::BoundMismatch(self.max_n, self.max_k, other.max_n, other.max_k));
        }
        Ok(())
    }

    /// Product truncated to the common bounds.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_bounds(other)?;
        let mut out = Self::zeros(self.max_n, self.max_k);
        for (n1, k1, a) in self.nonzero_terms() {
            for (n2, k2, b) in other.nonzero_terms() {
                let (n, k) = (n1 + n2, k1 + k2);
                if n <= self.max_n && k <= self.max_k {
                    out.c[n][k] += &a * &b;
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_bounds(other)?;
        let mut out = self.clone();
        for (n, k, v) in other.nonzero_terms() {
            out.c[n][k] -= v;
        }
        Ok(out)
    }

    /// Re-truncates to new bounds; growing fills with zeros.
    pub fn truncate(&self, max_n: usize, max_k: usize) -> Self {
        let mut out = Self::zeros(max_n, max_k);
        for (n, k, v) in self.nonzero_terms() {
            if n <= max_n && k <= max_k {
                out.c[n][k] = v;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d(n: usize, coeffs: &[u64]) -> DomPolynomial {
        DomPolynomial::from_u64s(n, coeffs).unwrap()
    }

    #[test]
    fn products() {
        let p1 = d(1, &[0, 1]);
        assert_eq!(p1.mul(&p1), d(2, &[0, 0, 1]));
        let p2 = d(2, &[0, 2, 1]);
        assert_eq!(p2.mul(&p2), d(4, &[0, 0, 4, 4, 1]));
        assert_eq!(p2.mul(&d(0, &[1])), p2);
    }

    #[test]
    fn convention_conversions() {
        let p3 = d(3, &[0, 1, 3, 1]);
        assert_eq!(p3.to_gamma(), UnivariateSeries::from_i64s(&[1, 3, 1]));
        assert_eq!(p3.render_plain(Convention::Gamma), "1 + 3t + t^2");
        assert_eq!(p3.render_plain(Convention::D), "t + 3t^2 + t^3");
        assert_eq!(DomPolynomial::from_gamma(3, &p3.to_gamma()).unwrap(), p3);

        let p1 = d(1, &[0, 1]);
        assert_eq!(p1.render_plain(Convention::Gamma), "1");
        assert_eq!(p1.render_plain(Convention::D), "t");

        let empty = DomPolynomial::zero(0);
        assert_eq!(empty.render_plain(Convention::Gamma), "0");
        assert_eq!(DomPolynomial::from_gamma(0, &UnivariateSeries::default()).unwrap(), empty);
    }

    #[test]
    fn from_gamma_rejects_bad_input() {
        assert!(DomPolynomial::from_gamma(1, &UnivariateSeries::from_i64s(&[1, 1, 1])).is_err());
        assert!(DomPolynomial::from_gamma(2, &UnivariateSeries::from_i64s(&[1, -1])).is_err());
        assert!(DomPolynomial::new(2, vec![BigUint::one()]).is_err());
    }

    #[test]
    fn evaluation() {
        let k3 = d(3, &[0, 3, 3, 1]);
        assert_eq!(k3.evaluate(1), BigInt::from(7));
        assert_eq!(d(3, &[0, 1, 3, 1]).evaluate(0), BigInt::zero());
        assert_eq!(d(2, &[0, 2, 1]).evaluate(1), BigInt::from(3));
        assert_eq!(d(2, &[0, 2, 1]).evaluate(-1), BigInt::from(-1));
    }

    #[test]
    fn equality_and_rendering() {
        let c3 = d(3, &[0, 3, 3, 1]);
        let p3 = d(3, &[0, 1, 3, 1]);
        assert_eq!(c3, c3.clone());
        assert_ne!(c3, p3);
        assert_ne!(d(1, &[0, 1]), d(2, &[0, 1, 0]));
        assert_eq!(
            p3.to_json(Convention::Gamma),
            json!({"n": 3, "convention": "gamma", "coeffs": ["1", "3", "1", "0"]})
        );
        assert_eq!(p3.render_csv(Convention::D), "0,1,3,1");
        assert_eq!(UnivariateSeries::from_i64s(&[0, -1, 2]).to_string(), "-t + 2t^2");
        assert_eq!(UnivariateSeries::from_i64s(&[3, -1]).to_string(), "3 - t");
    }

    #[test]
    fn all_subsets_is_binomial_row() {
        assert_eq!(DomPolynomial::all_subsets(4), d(4, &[1, 4, 6, 4, 1]));
        assert_eq!(DomPolynomial::all_subsets(0), d(0, &[1]));
    }

    #[test]
    fn series_trim_equality() {
        let a = UnivariateSeries::from_i64s(&[1, 2, 0, 0]);
        assert_eq!(a, UnivariateSeries::from_i64s(&[1, 2]));
        assert_eq!(a.degree(), Some(1));
        assert_eq!(UnivariateSeries::from_i64s(&[0, 0]).degree(), None);
        assert_eq!(UnivariateSeries::from_i64s(&[1, 1]).pow(3), UnivariateSeries::from_i64s(&[1, 3, 3, 1]));
        assert_eq!(UnivariateSeries::one().shift(2), UnivariateSeries::monomial(2));
    }

    #[test]
    fn bivariate_arithmetic() {
        let one = TruncatedBivariateSeries::from_terms(5, 3, [(0, 0, 1)]);
        let s = TruncatedBivariateSeries::from_terms(5, 3, [(1, 1, 2), (4, 2, -3), (6, 0, 9)]);
        assert_eq!(s.get(6, 0), BigInt::zero());
        assert_eq!(one.mul(&s).unwrap(), s);
        let sq = s.mul(&s).unwrap();
        // (2xy − 3x⁴y²)² = 4x²y² − 12x⁵y³ + 9x⁸y⁴
        assert_eq!(sq.nonzero_terms(), vec![(2, 2, BigInt::from(4)), (5, 3, BigInt::from(-12))]);
        assert_eq!(s.sub(&s).unwrap(), TruncatedBivariateSeries::zeros(5, 3));
        assert_eq!(s.truncate(3, 3).nonzero_terms().len(), 1);
        assert!(s.mul(&TruncatedBivariateSeries::zeros(4, 3)).is_err());
        assert!(s.sub(&TruncatedBivariateSeries::zeros(5, 4)).is_err());
    }

    fn vec_strategy() -> impl Strategy<Value = Vec<u64>> {
        prop::collection::vec(0u64..1000, 1..8)
    }

    proptest! {
        #[test]
        fn mul_commutes_and_associates(a in vec_strategy(), b in vec_strategy(), c in vec_strategy()) {
            let big = |v: &[u64]| v.iter().map(|&x| BigUint::from(x)).collect::<Vec<_>>();
            let (a, b, c) = (big(&a), big(&b), big(&c));
            prop_assert_eq!(poly_mul(&a, &b), poly_mul(&b, &a));
            prop_assert_eq!(poly_mul(&poly_mul(&a, &b), &c), poly_mul(&a, &poly_mul(&b, &c)));
        }

        #[test]
        fn gamma_round_trip(coeffs in vec_strategy()) {
            let n = coeffs.len() - 1;
            let p = DomPolynomial::from_u64s(n, &coeffs).unwrap();
            prop_assert_eq!(DomPolynomial::from_gamma(n, &p.to_gamma()).unwrap(), p);
        }
    }
}
