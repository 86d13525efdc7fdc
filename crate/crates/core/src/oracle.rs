//! Exhaustive subset enumeration: the ground truth every other route is
//! checked against.

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{build_family, BipartiteDigraph, Family, Left, SimpleGraph};
use crate::poly::DomPolynomial;
use crate::triangle::KSetTriangle;

/// Vertex cap used when the caller does not pick one.
pub const DEFAULT_CAP: usize = 24;

/// Beyond this the subset counter no longer fits the mask arithmetic.
const HARD_CAP: usize = 62;

/// Subsets per parallel work unit.
const CHUNK: u64 = 1 << 16;

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap.min(HARD_CAP) {
        Err(Error::Resource { n, cap: cap.min(HARD_CAP) })
    } else {
        Ok(())
    }
}

/// Counts, by size, the subsets in `lo..hi` that meet every mask in
/// `targets`. `hist` must have room for index `popcount`.
fn histogram_range(targets: &[u64], lo: u64, hi: u64, hist: &mut [u64]) {
    'subsets: for subset in lo..hi {
        for &t in targets {
            if t & subset == 0 {
                continue 'subsets;
            }
        }
        hist[subset.count_ones() as usize] += 1;
    }
}

/// Splits `0..2^bits` into `chunks` contiguous ranges, counts each one
/// independently and merges the histograms.
fn histogram(targets: &[u64], bits: usize, chunks: u64) -> Vec<u64> {
    let total = 1u64 << bits;
    let chunks = chunks.clamp(1, total);
    let step = total.div_ceil(chunks);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut hist = vec![0u64; bits + 1];
            let lo = c * step;
            let hi = ((c + 1) * step).min(total);
            if lo < hi {
                histogram_range(targets, lo, hi, &mut hist);
            }
            hist
        })
        .reduce(
            || vec![0u64; bits + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
}

fn to_poly(n: usize, hist: Vec<u64>) -> DomPolynomial {
    DomPolynomial::new(n, hist.into_iter().map(BigUint::from).collect())
        .expect("histogram has n + 1 bins")
}

/// `γ_k(G)` for every `k` by checking all `2^n` subsets.
pub fn brute_force_poly(g: &SimpleGraph, cap: usize) -> Result<DomPolynomial> {
    let chunks = (1u64 << g.n().min(HARD_CAP)).div_ceil(CHUNK);
    brute_force_poly_chunked(g, cap, chunks)
}

/// As [`brute_force_poly`] with an explicit number of work chunks. The
/// result does not depend on `chunks`.
pub fn brute_force_poly_chunked(g: &SimpleGraph, cap: usize, chunks: u64) -> Result<DomPolynomial> {
    let n = g.n();
    check_cap(n, cap)?;
    if n == 0 {
        return Ok(DomPolynomial::zero(0));
    }
    // D dominates iff it meets every closed neighbourhood.
    let closed = g.closed_neighborhood_masks().expect("n within a word");
    Ok(to_poly(n, histogram(&closed, n, chunks)))
}

/// Counts `D ⊆ U1` of each size such that every vertex of `U2` has an
/// in-neighbour in `D`. The context of the result is `|U1|`.
pub fn brute_force_digraph_poly(gamma: &BipartiteDigraph, cap: usize) -> Result<DomPolynomial> {
    let m = gamma.u1().len();
    check_cap(m, cap)?;
    let index = |i: Left| gamma.u1().iter().position(|&l| l == i).expect("arc source in U1");
    let mut in_masks = Vec::with_capacity(gamma.u2().len());
    for &j in gamma.u2() {
        in_masks.push(gamma.in_neighbors(j).fold(0u64, |acc, i| acc | 1 << index(i)));
    }
    let chunks = (1u64 << m).div_ceil(CHUNK);
    Ok(to_poly(m, histogram(&in_masks, m, chunks)))
}

/// Brute-force `γ_k(F_n)` rows for `n` from the family's smallest member up
/// to `max_n`.
pub fn kset_triangle(family: Family, max_n: usize, cap: usize) -> Result<KSetTriangle> {
    check_cap(max_n, cap)?;
    let first = family.min_n();
    let rows = (first..=max_n)
        .map(|n| brute_force_poly(&build_family(family, n)?, cap))
        .collect::<Result<Vec<_>>>()?;
    Ok(KSetTriangle::from_polys(family, first, &rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{disjoint_union, lift, Right};

    fn counts(p: &DomPolynomial) -> Vec<u64> {
        p.coeffs().iter().map(|c| u64::try_from(c).unwrap()).collect()
    }

    fn family(f: Family, n: usize) -> SimpleGraph {
        build_family(f, n).unwrap()
    }

    #[test]
    fn small_graphs() {
        let k3 = brute_force_poly(&family(Family::Complete, 3), DEFAULT_CAP).unwrap();
        assert_eq!(counts(&k3), vec![0, 3, 3, 1]);
        let p4 = brute_force_poly(&family(Family::Path, 4), DEFAULT_CAP).unwrap();
        assert_eq!(counts(&p4), vec![0, 0, 4, 4, 1]);
        let p1 = brute_force_poly(&family(Family::Path, 1), DEFAULT_CAP).unwrap();
        assert_eq!(counts(&p1), vec![0, 1]);
        assert_eq!(brute_force_poly(&SimpleGraph::empty(), DEFAULT_CAP).unwrap(), DomPolynomial::zero(0));
    }

    #[test]
    fn cap_is_enforced() {
        let p = family(Family::Path, 13);
        assert_eq!(brute_force_poly(&p, 12), Err(Error::Resource { n: 13, cap: 12 }));
        assert!(brute_force_poly(&p, 13).is_ok());
        let big = lift(&family(Family::Path, 13));
        assert!(brute_force_digraph_poly(&big, 12).is_err());
    }

    #[test]
    fn chunking_does_not_change_counts() {
        let g = family(Family::Wheel, 11);
        let reference = brute_force_poly_chunked(&g, DEFAULT_CAP, 1).unwrap();
        for chunks in [2, 3, 7, 64, 2048, 1 << 20] {
            assert_eq!(brute_force_poly_chunked(&g, DEFAULT_CAP, chunks).unwrap(), reference);
        }
    }

    #[test]
    fn lifted_graphs_match() {
        for f in [Family::Path, Family::Cycle, Family::Complete] {
            for n in 1..=9 {
                let g = family(f, n);
                assert_eq!(
                    brute_force_digraph_poly(&lift(&g), DEFAULT_CAP).unwrap(),
                    brute_force_poly(&g, DEFAULT_CAP).unwrap()
                );
            }
        }
    }

    #[test]
    fn digraph_boundary_cases() {
        let no_right = BipartiteDigraph::new((1..=4).map(Left), [], []).unwrap();
        assert_eq!(
            counts(&brute_force_digraph_poly(&no_right, DEFAULT_CAP).unwrap()),
            vec![1, 4, 6, 4, 1]
        );
        let no_left = BipartiteDigraph::new([], [Right(1)], []).unwrap();
        assert!(brute_force_digraph_poly(&no_left, DEFAULT_CAP).unwrap().is_zero());
    }

    #[test]
    fn unions_multiply() {
        let a = family(Family::Path, 3);
        let b = family(Family::Cycle, 4);
        let whole = brute_force_poly(&disjoint_union(&a, &b), DEFAULT_CAP).unwrap();
        let parts = brute_force_poly(&a, DEFAULT_CAP)
            .unwrap()
            .mul(&brute_force_poly(&b, DEFAULT_CAP).unwrap());
        assert_eq!(whole, parts);
    }

    #[test]
    fn triangles() {
        let rows = |t: KSetTriangle| -> Vec<Vec<u64>> {
            t.rows().iter().map(|r| r.iter().map(|c| u64::try_from(c).unwrap()).collect()).collect()
        };
        assert_eq!(
            rows(kset_triangle(Family::Path, 3, DEFAULT_CAP).unwrap()),
            vec![vec![1], vec![2, 1], vec![1, 3, 1]]
        );
        assert_eq!(rows(kset_triangle(Family::Cycle, 3, DEFAULT_CAP).unwrap())[2], vec![3, 3, 1]);
        assert_eq!(rows(kset_triangle(Family::Path, 1, DEFAULT_CAP).unwrap()), vec![vec![1]]);
        let w = kset_triangle(Family::Wheel, 4, DEFAULT_CAP).unwrap();
        assert_eq!(w.first_n(), 4);
        assert_eq!(rows(w), vec![vec![4, 6, 4, 1]]);
    }

    #[test]
    fn near_full_sets() {
        for n in 3..=14 {
            for f in [Family::Path, Family::Cycle] {
                let p = brute_force_poly(&family(f, n), DEFAULT_CAP).unwrap();
                assert_eq!(p.coeff(n - 1), BigUint::from(n));
                assert_eq!(p.coeff(n), BigUint::from(1u8));
                assert_eq!(p.domination_number(), Some(n.div_ceil(3)));
            }
        }
    }
}
