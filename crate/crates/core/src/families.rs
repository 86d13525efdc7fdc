//! Closed forms and recurrences for complete graphs, unions, joins, paths,
//! cycles and wheels, plus the k-set generating polynomials and Tribonacci
//! numbers.
//!
//! Binomials follow `C(a, b) = 0` whenever `b < 0` or `b > a`.

use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::Family;
use crate::poly::{DomPolynomial, TruncatedBivariateSeries, UnivariateSeries};
use crate::triangle::KSetTriangle;

/// `C(a, b)`, zero outside `0 <= b <= a`.
pub fn binomial(a: i64, b: i64) -> BigUint {
    if b < 0 || a < 0 || b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b) as u64;
    let a = a as u64;
    (0..b).fold(BigUint::one(), |acc, i| acc * (a - i) / (i + 1))
}

/// `γ(K_n,t) = (1+t)^n − t^n`.
pub fn complete_poly(n: usize) -> Result<DomPolynomial> {
    if n == 0 {
        return Err(Error::domain("complete graph needs n >= 1"));
    }
    let mut coeffs = DomPolynomial::all_subsets(n).coeffs().to_vec();
    coeffs[0] = BigUint::zero();
    DomPolynomial::new(n, coeffs)
}

/// Disjoint union: the product of the parts.
pub fn union_poly(parts: &[DomPolynomial]) -> DomPolynomial {
    parts
        .iter()
        .fold(DomPolynomial::all_subsets(0), |acc, p| acc.mul(p))
}

/// Join `G + H` from the polynomials of its parts:
///
/// ```text
/// γ(G+H) = γ(K_{n+m}) − t^m [γ(K_n) − γ(G)] − t^n [γ(K_m) − γ(H)]
/// ```
pub fn join_poly(g: &DomPolynomial, h: &DomPolynomial) -> Result<DomPolynomial> {
    let (n, m) = (g.n(), h.n());
    if n == 0 || m == 0 {
        return Err(Error::domain("join needs two nonempty graphs"));
    }
    let whole = complete_poly(n + m)?.to_gamma();
    let left_gap = complete_poly(n)?.to_gamma().sub(&g.to_gamma()).shift(m);
    let right_gap = complete_poly(m)?.to_gamma().sub(&h.to_gamma()).shift(n);
    DomPolynomial::from_gamma(n + m, &whole.sub(&left_gap).sub(&right_gap))
}

/// Initial γ-convention polynomials for `n = 1, 2, 3`.
fn seeds(family: Family) -> [&'static [i64]; 3] {
    match family {
        Family::Cycle => [&[1], &[1, 2], &[1, 3, 3]],
        _ => [&[1], &[1, 2], &[1, 3, 1]],
    }
}

/// `γ(F_1), ..., γ(F_max_n)` from
/// `γ(F_n) = γ(F_{n−1}) + t γ(F_{n−2}) + t² γ(F_{n−3})`.
fn tribonacci_polys(family: Family, max_n: usize) -> Vec<DomPolynomial> {
    let mut gammas: Vec<UnivariateSeries> = Vec::with_capacity(max_n);
    for n in 1..=max_n {
        let next = if n <= 3 {
            UnivariateSeries::from_i64s(seeds(family)[n - 1])
        } else {
            gammas[n - 2]
                .add(&gammas[n - 3].shift(1))
                .add(&gammas[n - 4].shift(2))
        };
        gammas.push(next);
    }
    gammas
        .iter()
        .enumerate()
        .map(|(i, s)| DomPolynomial::from_gamma(i + 1, s).expect("degree below n"))
        .collect()
}

/// `γ(P_1), ..., γ(P_max_n)`.
pub fn path_polys(max_n: usize) -> Vec<DomPolynomial> {
    tribonacci_polys(Family::Path, max_n)
}

/// `γ(C_1), ..., γ(C_max_n)`, with `C_1 = K_1` and `C_2` the dicycle.
pub fn cycle_polys(max_n: usize) -> Vec<DomPolynomial> {
    tribonacci_polys(Family::Cycle, max_n)
}

pub fn path_poly(n: usize) -> Result<DomPolynomial> {
    if n == 0 {
        return Err(Error::domain("path needs n >= 1"));
    }
    Ok(path_polys(n).pop().expect("n >= 1"))
}

pub fn cycle_poly(n: usize) -> Result<DomPolynomial> {
    if n == 0 {
        return Err(Error::domain("cycle needs n >= 1"));
    }
    Ok(cycle_polys(n).pop().expect("n >= 1"))
}

/// `γ(W_n,t) = (1+t)^{n−1} + t γ(C_{n−1},t)`.
pub fn wheel_poly(n: usize) -> Result<DomPolynomial> {
    if n < 4 {
        return Err(Error::domain(format!("wheel needs n >= 4, got {n}")));
    }
    let rim = cycle_poly(n - 1)?.to_gamma();
    let spokes = UnivariateSeries::from_i64s(&[1, 1]).pow((n - 1) as u32);
    DomPolynomial::from_gamma(n, &spokes.add(&rim.shift(1)))
}

/// Formula route for any named family member.
pub fn family_poly(family: Family, n: usize) -> Result<DomPolynomial> {
    match family {
        Family::Path => path_poly(n),
        Family::Cycle => cycle_poly(n),
        Family::Wheel => wheel_poly(n),
        Family::Complete => complete_poly(n),
    }
}

/// `γ_k(F_n)` rows from the formula route, `n` from the family's smallest
/// member to `max_n`.
pub fn formula_triangle(family: Family, max_n: usize) -> Result<KSetTriangle> {
    let first = family.min_n();
    let polys = match family {
        Family::Path => path_polys(max_n),
        Family::Cycle => cycle_polys(max_n),
        _ => (first..=max_n).map(|n| family_poly(family, n)).collect::<Result<_>>()?,
    };
    Ok(KSetTriangle::from_polys(family, first, &polys))
}

fn band(k: u64, t: u64) -> (i64, i64) {
    (k as i64, t as i64)
}

/// `γ_k(P_{k+t}) = Σ_{m=0}^{⌊t/2⌋+1} C(k−1, t−m) C(t−m+2, m)`.
///
/// Zero for `k = 0` and for `t > 2k`, where no `k`-set can dominate.
pub fn gamma_k_path(k: u64, t: u64) -> BigUint {
    if k == 0 || t > 2 * k {
        return BigUint::zero();
    }
    let (k, t) = band(k, t);
    (0..=t / 2 + 1)
        .map(|m| binomial(k - 1, t - m) * binomial(t - m + 2, m))
        .sum()
}

/// `γ_k(C_{k+t}) = Σ_{m=0}^{⌊t/2⌋+1} C(k−1, t−m) [C(t−m+2, m) + 2 C(t−m, m−2)]`.
pub fn gamma_k_cycle(k: u64, t: u64) -> BigUint {
    if k == 0 || t > 2 * k {
        return BigUint::zero();
    }
    let (k, t) = band(k, t);
    (0..=t / 2 + 1)
        .map(|m| binomial(k - 1, t - m) * (binomial(t - m + 2, m) + 2u8 * binomial(t - m, m - 2)))
        .sum()
}

/// The cycle sum with the bracket written as the product
/// `C(t−m+2, m+2) C(t−m, m−2)`. This form does not count dominating sets
/// (it gives 0 for `γ_2(C_4) = 6`); it is kept so the verifier can show
/// that it is rejected.
pub fn gamma_k_cycle_product_variant(k: u64, t: u64) -> BigUint {
    if k == 0 {
        return BigUint::zero();
    }
    let (k, t) = band(k, t);
    (0..=t / 2 + 1)
        .map(|m| binomial(k - 1, t - m) * binomial(t - m + 2, m + 2) * binomial(t - m, m - 2))
        .sum()
}

/// `γ_k(W_{k+t}) = C(k+t−1, t) + γ_k(C_{k+t−1})`, for `k + t >= 4`.
pub fn gamma_k_wheel(k: u64, t: u64) -> Result<BigUint> {
    if k + t < 4 {
        return Err(Error::domain(format!("wheel needs k + t >= 4, got {}", k + t)));
    }
    let hub = binomial((k + t - 1) as i64, t as i64);
    // the rim has k + (t − 1) vertices; with t = 0 it is too small for k
    let rim = if t == 0 { BigUint::zero() } else { gamma_k_cycle(k, t - 1) };
    Ok(hub + rim)
}

/// Coefficient of `x^n` is `γ_k(P_n)`: `x^k (1+x)² (1+x+x²)^{k−1}`.
pub fn gk_poly(k: u32) -> Result<UnivariateSeries> {
    k_set_poly(k, &[1, 2, 1])
}

/// Coefficient of `x^n` is `γ_k(C_n)`: `x^k (1+2x+3x²) (1+x+x²)^{k−1}`.
pub fn hk_poly(k: u32) -> Result<UnivariateSeries> {
    k_set_poly(k, &[1, 2, 3])
}

fn k_set_poly(k: u32, head: &[i64]) -> Result<UnivariateSeries> {
    if k == 0 {
        return Err(Error::domain("k must be positive"));
    }
    let body = UnivariateSeries::from_i64s(&[1, 1, 1]).pow(k - 1);
    Ok(UnivariateSeries::from_i64s(head).mul(&body).shift(k as usize))
}

/// Which bivariate generating function to tabulate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GfFamily {
    Path,
    Cycle,
}

impl GfFamily {
    /// Numerator `x(1+x)²y` or `x(1+2x+3x²)y` as `(n, k, coefficient)`.
    pub fn numerator(self) -> [(usize, usize, i64); 3] {
        match self {
            GfFamily::Path => [(1, 1, 1), (2, 1, 2), (3, 1, 1)],
            GfFamily::Cycle => [(1, 1, 1), (2, 1, 2), (3, 1, 3)],
        }
    }
}

/// `c_{n,k} = γ_k(F_n)` for `n <= max_n`, `k <= max_k`, read off the
/// `g_k` / `h_k` polynomials.
pub fn gf_table(family: GfFamily, max_n: usize, max_k: usize) -> Result<TruncatedBivariateSeries> {
    if max_n == 0 || max_k == 0 {
        return Err(Error::domain("truncation bounds must be positive"));
    }
    let mut table = TruncatedBivariateSeries::zeros(max_n, max_k);
    for k in 1..=max_k {
        let row = match family {
            GfFamily::Path => gk_poly(k as u32)?,
            GfFamily::Cycle => hk_poly(k as u32)?,
        };
        for n in 1..=max_n {
            table.set(n, k, row.coeff(n));
        }
    }
    Ok(table)
}

/// `1 − (x + x² + x³) y`, truncated.
pub fn gf_denominator(max_n: usize, max_k: usize) -> TruncatedBivariateSeries {
    TruncatedBivariateSeries::from_terms(max_n, max_k, [(0, 0, 1), (1, 1, -1), (2, 1, -1), (3, 1, -1)])
}

/// `[1 − (x+x²+x³) y] · F(x, y)` on the truncated table.
pub fn gf_residual(family: GfFamily, max_n: usize, max_k: usize) -> Result<TruncatedBivariateSeries> {
    gf_denominator(max_n, max_k).mul(&gf_table(family, max_n, max_k)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TribonacciMode {
    Recurrence,
    /// Double binomial sum
    /// `Σ_{m=0}^{⌊n/2⌋} Σ_{r=0}^{⌊n/3⌋} C(n−m−2r, m+r) C(m+r, r)`.
    Shannon,
}

impl FromStr for TribonacciMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "recurrence" => Ok(TribonacciMode::Recurrence),
            "shannon" => Ok(TribonacciMode::Shannon),
            other => Err(Error::domain(format!("unknown mode `{other}`"))),
        }
    }
}

/// `T_n` with `T_0 = T_1 = 1`, `T_2 = 2`.
pub fn tribonacci(n: u64, mode: TribonacciMode) -> BigUint {
    match mode {
        TribonacciMode::Recurrence => {
            let (mut a, mut b, mut c) = (BigUint::one(), BigUint::one(), BigUint::from(2u8));
            for _ in 0..n {
                let next = &a + &b + &c;
                a = std::mem::replace(&mut b, std::mem::replace(&mut c, next));
            }
            a
        }
        TribonacciMode::Shannon => {
            let n = n as i64;
            let mut total = BigUint::zero();
            for m in 0..=n / 2 {
                for r in 0..=n / 3 {
                    total += binomial(n - m - 2 * r, m + r) * binomial(m + r, r);
                }
            }
            total
        }
    }
}

/// Number of dominating sets of size `⌈n/3⌉` for a path (`n >= 1`) or a
/// cycle (`n >= 3`), from the three residue classes of `n` mod 3.
pub fn min_dominating_count(family: Family, n: usize) -> Result<BigUint> {
    let (q, r) = ((n / 3) as i64, n % 3);
    match family {
        Family::Path if n >= 1 => Ok(match r {
            0 => BigUint::one(),
            1 => binomial(q + 2, 2) + q as u64,
            _ => BigUint::from((q + 2) as u64),
        }),
        Family::Cycle if n >= 3 => Ok(match r {
            0 => BigUint::from(3u8),
            1 => binomial(q + 2, 2) + 2u8 * binomial(q, 2) + (3 * q) as u64,
            _ => BigUint::from((3 * q + 2) as u64),
        }),
        Family::Path | Family::Cycle => {
            Err(Error::domain(format!("{family} with n = {n} is out of range")))
        }
        _ => Err(Error::domain(format!("no minimum-cardinality formula for {family}"))),
    }
}

/// Smallest size of a dominating set, read from a polynomial.
pub fn domination_number(p: &DomPolynomial) -> Result<usize> {
    p.domination_number()
        .ok_or_else(|| Error::domain("polynomial has no dominating sets"))
}
