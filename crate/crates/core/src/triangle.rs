use std::str::FromStr;

use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::Family;
use crate::poly::DomPolynomial;

/// How a triangle is flattened into a sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReadOrder {
    /// `n` ascending, then `k = 1..=n`.
    Rows,
    /// Anti-diagonals `n + k = s` for `s = 2, 3, ...`, each with `k`
    /// ascending; only cells with `k <= n <= max_n` are read.
    Antidiagonals,
}

impl FromStr for ReadOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rows" => Ok(ReadOrder::Rows),
            "antidiagonals" => Ok(ReadOrder::Antidiagonals),
            other => Err(Error::domain(format!(
                "unknown read order `{other}` (expected rows or antidiagonals)"
            ))),
        }
    }
}

/// `γ_k(F_n)` for a family `F`, one row per `n`, columns `k = 1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KSetTriangle {
    family: Family,
    first_n: usize,
    rows: Vec<Vec<BigUint>>,
}

impl KSetTriangle {
    /// `polys[i]` is the polynomial of the member with `first_n + i`
    /// vertices.
    pub fn from_polys(family: Family, first_n: usize, polys: &[DomPolynomial]) -> Self {
        let rows = polys
            .iter()
            .enumerate()
            .map(|(i, p)| {
                debug_assert_eq!(p.n(), first_n + i);
                p.coeffs()[1..].to_vec()
            })
            .collect();
        KSetTriangle { family, first_n, rows }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn first_n(&self) -> usize {
        self.first_n
    }

    /// Largest `n` present, or `first_n - 1` when empty.
    pub fn max_n(&self) -> usize {
        self.first_n + self.rows.len() - 1
    }

    pub fn rows(&self) -> &[Vec<BigUint>] {
        &self.rows
    }

    /// Row for `n` vertices, if present.
    pub fn row(&self, n: usize) -> Option<&[BigUint]> {
        n.checked_sub(self.first_n).and_then(|i| self.rows.get(i)).map(Vec::as_slice)
    }

    /// `γ_k(F_n)`, zero outside the stored cells.
    pub fn get(&self, n: usize, k: usize) -> BigUint {
        self.row(n)
            .and_then(|r| k.checked_sub(1).and_then(|i| r.get(i)))
            .cloned()
            .unwrap_or_default()
    }

    pub fn read(&self, order: ReadOrder) -> Vec<BigUint> {
        match order {
            ReadOrder::Rows => self.rows.iter().flatten().cloned().collect(),
            ReadOrder::Antidiagonals => {
                let max_n = self.max_n();
                let mut out = Vec::new();
                for s in 2..=2 * max_n {
                    for k in 1..s {
                        let n = s - k;
                        if k <= n && n <= max_n && n >= self.first_n {
                            out.push(self.get(n, k));
                        }
                    }
                }
                out
            }
        }
    }

    pub fn render_csv(&self) -> String {
        self.rows
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn to_json(&self) -> Value {
        json!({
            "family": self.family.name(),
            "first_n": self.first_n,
            "rows": self
                .rows
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}
