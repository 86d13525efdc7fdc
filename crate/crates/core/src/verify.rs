//! Cross-verification matrix: oracle vs engine vs closed forms, generating
//! function residuals, symmetry, Tribonacci and the minimum-cardinality
//! counts. Every check reports the first counterexample it finds.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::engine::graph_poly;
use crate::error::{Error, Result};
use crate::families::{
    self, binomial, gamma_k_cycle, gamma_k_cycle_product_variant, gamma_k_path, gamma_k_wheel,
    GfFamily, TribonacciMode,
};
use crate::graph::{build_family, disjoint_union, join, Family, SimpleGraph};
use crate::oracle::{brute_force_poly, DEFAULT_CAP};
use crate::poly::{DomPolynomial, TruncatedBivariateSeries};

/// Closed form for `γ_k(P_{k+t})`; swappable so the harness can be shown to
/// catch a wrong formula.
pub type PathFormula = fn(u64, u64) -> BigUint;

pub const CHECK_NAMES: [&str; 12] = [
    "algebra",
    "cycle-closed-form",
    "cycle-product-variant",
    "gf",
    "min-cardinality",
    "oracle-engine",
    "path-closed-form",
    "recurrence-pascal",
    "spot-values",
    "symmetry",
    "tribonacci",
    "wheel",
];

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    pub cap: usize,
    /// Largest path/cycle checked against the oracle.
    pub path_cycle_max: usize,
    /// Largest wheel and complete graph checked against the oracle.
    pub wheel_max: usize,
    /// Random `G(n, 1/2)` samples for each `n` in `random_n`.
    pub random_n: (usize, usize),
    pub random_per_n: usize,
    /// Recurrence-vs-closed-form range for paths and cycles (no oracle).
    pub formula_max_n: usize,
    pub gf_bounds: (usize, usize),
    pub symmetry_max_k: u32,
    pub tribonacci_max: u64,
    /// Names from [`CHECK_NAMES`]; `None` runs all of them.
    pub checks: Option<BTreeSet<String>>,
    pub path_formula: PathFormula,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            cap: DEFAULT_CAP,
            path_cycle_max: 14,
            wheel_max: 12,
            random_n: (5, 10),
            random_per_n: 20,
            formula_max_n: 60,
            gf_bounds: (30, 15),
            symmetry_max_k: 15,
            tribonacci_max: 40,
            checks: None,
            path_formula: gamma_k_path,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub case: String,
    pub n: usize,
    pub k: usize,
    pub expected: String,
    pub got: String,
}

impl Counterexample {
    pub fn new(case: impl Into<String>, n: usize, k: usize, expected: impl ToString, got: impl ToString) -> Self {
        Counterexample { case: case.into(), n, k, expected: expected.to_string(), got: got.to_string() }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "case": self.case,
            "n": self.n,
            "k": self.k,
            "expected": self.expected,
            "got": self.got,
        })
    }
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub name: String,
    pub range: String,
    pub counterexample: Option<Counterexample>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "range": self.range,
            "status": if self.passed() { "pass" } else { "fail" },
            "counterexample": self.counterexample.as_ref().map(Counterexample::to_json),
        })
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    /// Sorted by name.
    pub checks: Vec<CheckReport>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckReport::passed)
    }

    pub fn first_failure(&self) -> Option<&CheckReport> {
        self.checks.iter().find(|c| !c.passed())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "version": 1,
            "checks": self.checks.iter().map(CheckReport::to_json).collect::<Vec<_>>(),
        })
    }
}

/// `G(n, 1/2)`.
pub fn random_graph<R: Rng>(n: usize, rng: &mut R) -> SimpleGraph {
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if rng.gen_bool(0.5) {
                edges.push((i, j));
            }
        }
    }
    SimpleGraph::new(n, edges).expect("sampled edges are valid")
}

/// `per_n` seeded samples for each `n` in `lo..=hi`.
pub fn random_graphs(seed: u64, lo: usize, hi: usize, per_n: usize) -> Vec<SimpleGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (lo..=hi)
        .flat_map(|n| std::iter::repeat_n(n, per_n))
        .map(|n| random_graph(n, &mut rng))
        .collect()
}

/// First coefficient where `got` differs from `expected`.
pub fn compare(case: impl Into<String>, expected: &DomPolynomial, got: &DomPolynomial) -> Option<Counterexample> {
    if expected == got {
        return None;
    }
    let n = expected.n().max(got.n());
    let k = (0..=n).find(|&k| expected.coeff(k) != got.coeff(k)).unwrap_or(0);
    let what = if expected.n() != got.n() {
        format!("{} (context {} vs {})", case.into(), expected.n(), got.n())
    } else {
        case.into()
    };
    Some(Counterexample::new(what, expected.n(), k, expected.coeff(k), got.coeff(k)))
}

fn compare_count(case: &str, n: usize, k: usize, expected: &BigUint, got: &BigUint) -> Option<Counterexample> {
    (expected != got).then(|| Counterexample::new(case, n, k, expected, got))
}

type Outcome = Result<Option<Counterexample>>;

/// Runs the selected checks (in parallel) and returns them sorted by name.
pub fn run(config: &VerifyConfig) -> Result<Report> {
    let names: Vec<&str> = match &config.checks {
        None => CHECK_NAMES.to_vec(),
        Some(selected) => {
            if let Some(bad) = selected.iter().find(|s| !CHECK_NAMES.contains(&s.as_str())) {
                return Err(Error::domain(format!("unknown check `{bad}`")));
            }
            CHECK_NAMES.iter().copied().filter(|n| selected.contains(*n)).collect()
        }
    };
    let mut checks = names
        .par_iter()
        .map(|&name| {
            let counterexample = run_check(name, config)?;
            Ok(CheckReport { name: name.to_string(), range: range_of(name, config), counterexample })
        })
        .collect::<Result<Vec<_>>>()?;
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(Report { checks })
}

fn run_check(name: &str, c: &VerifyConfig) -> Outcome {
    match name {
        "algebra" => check_algebra(c),
        "cycle-closed-form" => check_cycle_closed_form(c),
        "cycle-product-variant" => check_cycle_product_variant(c),
        "gf" => check_gf(c),
        "min-cardinality" => check_min_cardinality(c),
        "oracle-engine" => check_oracle_engine(c),
        "path-closed-form" => check_path_closed_form(c),
        "recurrence-pascal" => check_recurrence_pascal(c),
        "spot-values" => check_spot_values(c),
        "symmetry" => check_symmetry(c),
        "tribonacci" => check_tribonacci(c),
        "wheel" => check_wheel(c),
        other => Err(Error::domain(format!("unknown check `{other}`"))),
    }
}

/// Human-readable description of what a check covers under `c`.
fn range_of(name: &str, c: &VerifyConfig) -> String {
    let (lo, hi) = c.random_n;
    match name {
        "algebra" => format!(
            "complete n<={}, 20 unions, 20 joins n+m<={}, wheels n<=20",
            c.path_cycle_max,
            c.path_cycle_max.max(2)
        ),
        "cycle-closed-form" | "path-closed-form" => {
            format!("oracle n<={}, recurrence n<={}", c.path_cycle_max, c.formula_max_n)
        }
        "cycle-product-variant" => "(k,t)=(2,2)".into(),
        "gf" => format!("maxN={}, maxK={}", c.gf_bounds.0, c.gf_bounds.1),
        "min-cardinality" | "spot-values" => format!("n<={}", c.path_cycle_max),
        "oracle-engine" => format!(
            "path/cycle n<={}, wheel/complete n<={}, {} random graphs n in {lo}..={hi} (seed {})",
            c.path_cycle_max,
            c.wheel_max,
            (hi + 1 - lo) * c.random_per_n,
            c.seed
        ),
        "recurrence-pascal" => format!("4<=n<={}", c.path_cycle_max),
        "symmetry" => format!("k<={}", c.symmetry_max_k),
        "tribonacci" => format!("n<={}", c.tribonacci_max),
        "wheel" => format!("4<=n<={}", c.wheel_max),
        _ => String::new(),
    }
}

fn oracle(c: &VerifyConfig, family: Family, n: usize) -> Result<DomPolynomial> {
    brute_force_poly(&build_family(family, n)?, c.cap)
}

fn check_oracle_engine(c: &VerifyConfig) -> Outcome {
    let mut families = vec![(Family::Path, c.path_cycle_max), (Family::Cycle, c.path_cycle_max)];
    families.push((Family::Wheel, c.wheel_max));
    families.push((Family::Complete, c.wheel_max));
    for (family, max) in families {
        for n in family.min_n()..=max {
            let g = build_family(family, n)?;
            if let Some(ce) = compare(format!("{family} {n}"), &brute_force_poly(&g, c.cap)?, &graph_poly(&g)) {
                return Ok(Some(ce));
            }
        }
    }
    let (lo, hi) = c.random_n;
    for (i, g) in random_graphs(c.seed, lo, hi, c.random_per_n).iter().enumerate() {
        if let Some(ce) = compare(format!("random graph #{i}"), &brute_force_poly(g, c.cap)?, &graph_poly(g)) {
            return Ok(Some(ce));
        }
    }
    Ok(None)
}

fn check_path_closed_form(c: &VerifyConfig) -> Outcome {
    let formula = c.path_formula;
    for n in 1..=c.path_cycle_max {
        let p = oracle(c, Family::Path, n)?;
        for k in 1..=n {
            let got = formula(k as u64, (n - k) as u64);
            if let Some(ce) = compare_count("path closed form vs oracle", n, k, &p.coeff(k), &got) {
                return Ok(Some(ce));
            }
        }
    }
    for (i, p) in families::path_polys(c.formula_max_n).iter().enumerate() {
        let n = i + 1;
        for k in 0..=n {
            let got = if k == 0 { BigUint::default() } else { formula(k as u64, (n - k) as u64) };
            if let Some(ce) = compare_count("path closed form vs recurrence", n, k, &p.coeff(k), &got) {
                return Ok(Some(ce));
            }
        }
    }
    Ok(None)
}

fn check_cycle_closed_form(c: &VerifyConfig) -> Outcome {
    for n in 1..=c.path_cycle_max {
        let p = oracle(c, Family::Cycle, n)?;
        for k in 1..=n {
            let got = gamma_k_cycle(k as u64, (n - k) as u64);
            if let Some(ce) = compare_count("cycle closed form vs oracle", n, k, &p.coeff(k), &got) {
                return Ok(Some(ce));
            }
        }
    }
    for (i, p) in families::cycle_polys(c.formula_max_n).iter().enumerate() {
        let n = i + 1;
        for k in 1..=n {
            let got = gamma_k_cycle(k as u64, (n - k) as u64);
            if let Some(ce) = compare_count("cycle closed form vs recurrence", n, k, &p.coeff(k), &got) {
                return Ok(Some(ce));
            }
        }
    }
    Ok(None)
}

/// Passes when the product-form cycle sum is caught disagreeing with the
/// oracle at `(k, t) = (2, 2)`.
fn check_cycle_product_variant(c: &VerifyConfig) -> Outcome {
    let truth = oracle(c, Family::Cycle, 4)?.coeff(2);
    let variant = gamma_k_cycle_product_variant(2, 2);
    let ce = (variant == truth).then(|| {
        Counterexample::new("product form was not rejected", 4, 2, format!("!= {truth}"), &variant)
    });
    Ok(ce)
}

fn check_wheel(c: &VerifyConfig) -> Outcome {
    for n in 4..=c.wheel_max {
        let truth = oracle(c, Family::Wheel, n)?;
        if let Some(ce) = compare(format!("wheel_poly {n}"), &truth, &families::wheel_poly(n)?) {
            return Ok(Some(ce));
        }
        let rim = families::cycle_poly(n - 1)?;
        for k in 1..=n {
            let identity = binomial(n as i64 - 1, (n - k) as i64) + rim.coeff(k);
            if let Some(ce) = compare_count("C(n-1,n-k) + γ_k(C_{n-1})", n, k, &truth.coeff(k), &identity) {
                return Ok(Some(ce));
            }
            let closed = gamma_k_wheel(k as u64, (n - k) as u64)?;
            if let Some(ce) = compare_count("wheel k-set closed form", n, k, &truth.coeff(k), &closed) {
                return Ok(Some(ce));
            }
        }
    }
    Ok(None)
}

fn check_spot_values(c: &VerifyConfig) -> Outcome {
    let gamma_of = |p: &DomPolynomial| p.to_gamma();
    let expect = [
        ("γ(P_3,t)", gamma_of(&oracle(c, Family::Path, 3)?), vec![1, 3, 1]),
        ("γ(C_3,t)", gamma_of(&oracle(c, Family::Cycle, 3)?), vec![1, 3, 3]),
        ("γ(P_2,t)", gamma_of(&oracle(c, Family::Path, 2)?), vec![1, 2]),
    ];
    for (case, got, want) in expect {
        let want = crate::poly::UnivariateSeries::from_i64s(&want);
        if got != want {
            return Ok(Some(Counterexample::new(case, 0, 0, want, got)));
        }
    }
    let c3 = oracle(c, Family::Cycle, 3)?;
    if let Some(ce) = compare_count("γ_1(C_3)", 3, 1, &BigUint::from(3u8), &c3.coeff(1)) {
        return Ok(Some(ce));
    }
    for n in 2..=c.path_cycle_max {
        for family in [Family::Path, Family::Cycle] {
            if family == Family::Cycle && n < 3 {
                continue;
            }
            let p = oracle(c, family, n)?;
            if let Some(ce) = compare_count(&format!("γ_(n-1)({family})"), n, n - 1, &BigUint::from(n), &p.coeff(n - 1)) {
                return Ok(Some(ce));
            }
        }
    }
    for k in 1..=c.path_cycle_max / 3 {
        let n = 3 * k;
        let p = oracle(c, Family::Path, n)?.coeff(k);
        if let Some(ce) = compare_count("γ_k(P_3k)", n, k, &BigUint::from(1u8), &p) {
            return Ok(Some(ce));
        }
        let q = oracle(c, Family::Cycle, n)?.coeff(k);
        if let Some(ce) = compare_count("γ_k(C_3k)", n, k, &BigUint::from(3u8), &q) {
            return Ok(Some(ce));
        }
    }
    Ok(None)
}

fn check_gf(c: &VerifyConfig) -> Outcome {
    let (max_n, max_k) = c.gf_bounds;
    for family in [GfFamily::Path, GfFamily::Cycle] {
        let residual = families::gf_residual(family, max_n, max_k)?;
        let target = TruncatedBivariateSeries::from_terms(max_n, max_k, family.numerator());
        let diff = residual.sub(&target)?;
        if let Some((n, k, _)) = diff.nonzero_terms().into_iter().next() {
            let ce = Counterexample::new(format!("{family:?} residual"), n, k, target.get(n, k), residual.get(n, k));
            return Ok(Some(ce));
        }
        // the tabulated coefficients are the k-set counts themselves
        let table = families::gf_table(family, max_n, max_k)?;
        let polys = match family {
            GfFamily::Path => families::path_polys(max_n),
            GfFamily::Cycle => families::cycle_polys(max_n),
        };
        for (i, p) in polys.iter().enumerate() {
            for k in 1..=max_k {
                let expected = BigInt::from(p.coeff(k));
                if table.get(i + 1, k) != expected {
                    let ce = Counterexample::new(format!("{family:?} table"), i + 1, k, expected, table.get(i + 1, k));
                    return Ok(Some(ce));
                }
            }
        }
    }
    Ok(None)
}

fn check_symmetry(c: &VerifyConfig) -> Outcome {
    for k in 1..=c.symmetry_max_k {
        let g = families::gk_poly(k)?;
        let k = k as usize;
        for n in k..=3 * k {
            if g.coeff(n) != g.coeff(4 * k - n) {
                let ce = Counterexample::new("γ_k(P_n) = γ_k(P_{4k-n})", n, k, g.coeff(4 * k - n), g.coeff(n));
                return Ok(Some(ce));
            }
        }
    }
    let h2 = families::hk_poly(2)?;
    if (2..=6).all(|n| h2.coeff(n) == h2.coeff(8 - n)) {
        let ce = Counterexample::new("h_2 expected asymmetric", 2, 2, "asymmetric", "symmetric");
        return Ok(Some(ce));
    }
    Ok(None)
}

fn check_min_cardinality(c: &VerifyConfig) -> Outcome {
    for family in [Family::Path, Family::Cycle] {
        let start = if family == Family::Cycle { 3 } else { 1 };
        for n in start..=c.path_cycle_max {
            let p = oracle(c, family, n)?;
            let k = families::domination_number(&p)?;
            if k != n.div_ceil(3) {
                let ce = Counterexample::new(format!("domination number of {family}"), n, k, n.div_ceil(3), k);
                return Ok(Some(ce));
            }
            let formula = families::min_dominating_count(family, n)?;
            if let Some(ce) = compare_count(&format!("{family} minimum count"), n, k, &p.coeff(k), &formula) {
                return Ok(Some(ce));
            }
        }
    }
    Ok(None)
}

fn check_tribonacci(c: &VerifyConfig) -> Outcome {
    let head: Vec<BigUint> = (0..6).map(|n| families::tribonacci(n, TribonacciMode::Recurrence)).collect();
    for (n, (got, want)) in head.iter().zip([1u8, 1, 2, 4, 7, 13]).enumerate() {
        if let Some(ce) = compare_count("T_n initial terms", n, 0, &BigUint::from(want), got) {
            return Ok(Some(ce));
        }
    }
    for n in 0..=c.tribonacci_max {
        let a = families::tribonacci(n, TribonacciMode::Recurrence);
        let b = families::tribonacci(n, TribonacciMode::Shannon);
        if let Some(ce) = compare_count("Shannon sum vs recurrence", n as usize, 0, &a, &b) {
            return Ok(Some(ce));
        }
    }
    Ok(None)
}

fn check_recurrence_pascal(c: &VerifyConfig) -> Outcome {
    for family in [Family::Path, Family::Cycle] {
        let polys: Vec<DomPolynomial> = (1..=c.path_cycle_max)
            .map(|n| oracle(c, family, n))
            .collect::<Result<_>>()?;
        let at = |n: usize, k: usize| polys[n - 1].coeff(k);
        for n in 4..=c.path_cycle_max {
            for k in 2..=n - 2 {
                let sum = at(n - 1, k - 1) + at(n - 2, k - 1) + at(n - 3, k - 1);
                if let Some(ce) = compare_count(&format!("{family} k-set recurrence"), n, k, &at(n, k), &sum) {
                    return Ok(Some(ce));
                }
            }
        }
    }
    Ok(None)
}

fn check_algebra(c: &VerifyConfig) -> Outcome {
    for n in 1..=c.path_cycle_max {
        if let Some(ce) = compare(format!("complete {n}"), &oracle(c, Family::Complete, n)?, &families::complete_poly(n)?) {
            return Ok(Some(ce));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed.wrapping_add(1));
    let budget = c.path_cycle_max.max(2);
    for i in 0..20 {
        let a = random_graph(rng.gen_range(1..budget), &mut rng);
        let b = random_graph(rng.gen_range(1..=budget - a.n()), &mut rng);
        let (pa, pb) = (graph_poly(&a), graph_poly(&b));
        let union = brute_force_poly(&disjoint_union(&a, &b), c.cap)?;
        if let Some(ce) = compare(format!("union #{i}"), &union, &families::union_poly(&[pa.clone(), pb.clone()])) {
            return Ok(Some(ce));
        }
        let joined = brute_force_poly(&join(&a, &b), c.cap)?;
        if let Some(ce) = compare(format!("join #{i}"), &joined, &families::join_poly(&pa, &pb)?) {
            return Ok(Some(ce));
        }
    }
    let k1 = families::complete_poly(1)?;
    for n in 4..=20 {
        let via_join = families::join_poly(&k1, &families::cycle_poly(n - 1)?)?;
        if let Some(ce) = compare(format!("wheel {n} via join"), &families::wheel_poly(n)?, &via_join) {
            return Ok(Some(ce));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> VerifyConfig {
        VerifyConfig {
            path_cycle_max: 9,
            wheel_max: 8,
            random_per_n: 3,
            formula_max_n: 30,
            gf_bounds: (18, 6),
            symmetry_max_k: 6,
            ..VerifyConfig::default()
        }
    }

    #[test]
    fn everything_passes_on_small_ranges() {
        let report = run(&quick()).unwrap();
        assert_eq!(report.checks.len(), CHECK_NAMES.len());
        for check in &report.checks {
            assert!(check.passed(), "{}: {:?}", check.name, check.counterexample);
        }
        let names: Vec<_> = report.checks.iter().map(|c| c.name.as_str()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
    }

    fn off_by_one(k: u64, t: u64) -> BigUint {
        let v = gamma_k_path(k, t);
        if k == 2 && t == 3 {
            v + 1u8
        } else {
            v
        }
    }

    #[test]
    fn corrupted_formula_is_caught() {
        let config = VerifyConfig {
            checks: Some(["path-closed-form".to_string()].into()),
            path_formula: off_by_one,
            ..quick()
        };
        let report = run(&config).unwrap();
        let failure = report.first_failure().expect("must fail");
        let ce = failure.counterexample.as_ref().unwrap();
        assert_eq!((ce.n, ce.k), (5, 2));
        assert_eq!(ce.expected, "3");
        assert_eq!(ce.got, "4");
        assert_eq!(report.to_json()["checks"][0]["status"], "fail");
    }

    #[test]
    fn unknown_check_is_rejected() {
        let config = VerifyConfig { checks: Some(["nope".to_string()].into()), ..quick() };
        assert!(run(&config).is_err());
    }

    #[test]
    fn cap_errors_surface() {
        let config = VerifyConfig { cap: 6, checks: Some(["wheel".to_string()].into()), ..quick() };
        assert!(matches!(run(&config), Err(Error::Resource { .. })));
    }

    #[test]
    fn sampling_is_seeded() {
        assert_eq!(random_graphs(7, 5, 8, 4), random_graphs(7, 5, 8, 4));
        assert_ne!(random_graphs(7, 5, 8, 4), random_graphs(8, 5, 8, 4));
    }
}
