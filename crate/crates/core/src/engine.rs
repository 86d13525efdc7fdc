//! Domination polynomials through the vertex recurrence on bipartite
//! one-way digraphs:
//!
//! ```text
//! γ(Γ,t) = t·γ(Γ − i, t) + γ(Γ − N⁺[i], t)
//! ```
//!
//! together with the base cases `γ = (1+t)^|U1|` when `U2` is empty and
//! `γ = 0` when some vertex of `U2` has no in-neighbour, and the product
//! rule over weakly connected components.
//!
//! Residual digraphs keep their labels, so a subproblem is identified by the
//! pair of surviving vertex subsets and memoized on it.

use std::collections::HashMap;
use std::hash::Hash;

use num_bigint::BigUint;

use crate::graph::{lift, BipartiteDigraph, SimpleGraph};
use crate::poly::DomPolynomial;

/// Which left vertex the recurrence branches on.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Selection {
    /// Largest out-degree into the surviving right side, smallest label on
    /// ties.
    #[default]
    MaxOutDegree,
    MinOutDegree,
    MinLabel,
    MaxLabel,
}

/// Result of one top-level evaluation.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub poly: DomPolynomial,
    /// Distinct residual digraphs stored in the memo table.
    pub subproblems: usize,
}

/// `γ(Γ,t)` with context `|U1|`, using the default branching rule.
pub fn recurrence_poly(gamma: &BipartiteDigraph) -> DomPolynomial {
    evaluate(gamma, Selection::default()).poly
}

pub fn recurrence_poly_with(gamma: &BipartiteDigraph, selection: Selection) -> DomPolynomial {
    evaluate(gamma, selection).poly
}

/// `γ(G,t)` computed on the lift `Γ_G`. The empty graph gives the zero
/// polynomial.
pub fn graph_poly(g: &SimpleGraph) -> DomPolynomial {
    graph_poly_with(g, Selection::default())
}

pub fn graph_poly_with(g: &SimpleGraph, selection: Selection) -> DomPolynomial {
    if g.n() == 0 {
        return DomPolynomial::zero(0);
    }
    recurrence_poly_with(&lift(g), selection)
}

pub fn evaluate(gamma: &BipartiteDigraph, selection: Selection) -> Evaluation {
    let width = gamma.u1().len().max(gamma.u2().len());
    if width <= 64 {
        Solver::<u64>::new(gamma, selection).run()
    } else {
        Solver::<Wide>::new(gamma, selection).run()
    }
}

/// Fixed-width set of small indices.
trait Mask: Clone + Eq + Hash {
    fn empty(width: usize) -> Self;
    fn insert(&mut self, i: usize);
    fn remove(&mut self, i: usize);
    fn and(&self, other: &Self) -> Self;
    fn and_not(&self, other: &Self) -> Self;
    fn or(&self, other: &Self) -> Self;
    fn is_empty(&self) -> bool;
    fn len(&self) -> usize;
    fn ones(&self) -> Vec<usize>;

    fn intersects(&self, other: &Self) -> bool {
        !self.and(other).is_empty()
    }

    fn lowest(&self) -> Option<usize> {
        self.ones().first().copied()
    }
}

impl Mask for u64 {
    fn empty(_: usize) -> Self {
        0
    }
    fn insert(&mut self, i: usize) {
        *self |= 1 << i;
    }
    fn remove(&mut self, i: usize) {
        *self &= !(1 << i);
    }
    fn and(&self, other: &Self) -> Self {
        self & other
    }
    fn and_not(&self, other: &Self) -> Self {
        self & !other
    }
    fn or(&self, other: &Self) -> Self {
        self | other
    }
    fn is_empty(&self) -> bool {
        *self == 0
    }
    fn len(&self) -> usize {
        self.count_ones() as usize
    }
    fn ones(&self) -> Vec<usize> {
        let mut m = *self;
        let mut out = Vec::with_capacity(m.count_ones() as usize);
        while m != 0 {
            out.push(m.trailing_zeros() as usize);
            m &= m - 1;
        }
        out
    }
    fn lowest(&self) -> Option<usize> {
        (*self != 0).then(|| self.trailing_zeros() as usize)
    }
    fn intersects(&self, other: &Self) -> bool {
        self & other != 0
    }
}

/// Multi-word fallback for digraphs wider than 64 vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
struct Wide(Vec<u64>);

impl Wide {
    fn zip(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        Wide(self.0.iter().zip(&other.0).map(|(&a, &b)| f(a, b)).collect())
    }
}

impl Mask for Wide {
    fn empty(width: usize) -> Self {
        Wide(vec![0; width.div_ceil(64)])
    }
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn remove(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }
    fn and(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & b)
    }
    fn and_not(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & !b)
    }
    fn or(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a | b)
    }
    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }
    fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn ones(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(wi, &w)| w.ones().into_iter().map(move |b| wi * 64 + b))
            .collect()
    }
}

struct Solver<M: Mask> {
    // left index -> right indices it points to
    out: Vec<M>,
    // right index -> left indices pointing to it
    inn: Vec<M>,
    all_left: M,
    all_right: M,
    selection: Selection,
    memo: HashMap<(M, M), DomPolynomial>,
}

impl<M: Mask> Solver<M> {
    fn new(gamma: &BipartiteDigraph, selection: Selection) -> Self {
        let width = gamma.u1().len().max(gamma.u2().len());
        let left: Vec<_> = gamma.u1().iter().copied().collect();
        let right: Vec<_> = gamma.u2().iter().copied().collect();
        let mut out = vec![M::empty(width); left.len()];
        let mut inn = vec![M::empty(width); right.len()];
        for &(i, j) in gamma.arcs() {
            let li = left.binary_search(&i).expect("arc source in U1");
            let rj = right.binary_search(&j).expect("arc target in U2");
            out[li].insert(rj);
            inn[rj].insert(li);
        }
        let mut all_left = M::empty(width);
        (0..left.len()).for_each(|i| all_left.insert(i));
        let mut all_right = M::empty(width);
        (0..right.len()).for_each(|j| all_right.insert(j));
        Solver { out, inn, all_left, all_right, selection, memo: HashMap::new() }
    }

    fn run(mut self) -> Evaluation {
        let (left, right) = (self.all_left.clone(), self.all_right.clone());
        let poly = self.solve(&left, &right);
        Evaluation { poly, subproblems: self.memo.len() }
    }

    fn solve(&mut self, left: &M, right: &M) -> DomPolynomial {
        let m = left.len();
        if right.is_empty() {
            return DomPolynomial::all_subsets(m);
        }
        if left.is_empty() {
            return DomPolynomial::zero(0);
        }
        if right.ones().into_iter().any(|j| !self.inn[j].intersects(left)) {
            return DomPolynomial::zero(m);
        }
        let key = (left.clone(), right.clone());
        if let Some(p) = self.memo.get(&key) {
            return p.clone();
        }

        let (cl, cr) = self.component_of_lowest(left, right);
        let result = if cl != *left {
            let first = self.solve(&cl, &cr);
            let rest = self.solve(&left.and_not(&cl), &right.and_not(&cr));
            first.mul(&rest)
        } else {
            let i = self.pick(left, right);
            let mut rest = left.clone();
            rest.remove(i);
            let without = self.solve(&rest, right);
            let with = self.solve(&rest, &right.and_not(&self.out[i]));
            // sets avoiding i keep their size; sets containing i gain one
            let coeffs = (0..=m)
                .map(|k| {
                    let mut c = without.coeff(k);
                    if k > 0 {
                        c += with.coeff(k - 1);
                    }
                    c
                })
                .collect::<Vec<BigUint>>();
            DomPolynomial::new(m, coeffs).expect("m + 1 coefficients")
        };
        self.memo.insert(key, result.clone());
        result
    }

    /// Weak component containing the lowest surviving left vertex.
    fn component_of_lowest(&self, left: &M, right: &M) -> (M, M) {
        let start = left.lowest().expect("left side nonempty");
        let mut cl = single(left, start);
        let mut cr = self.out[start].and(right);
        loop {
            let grown_left = cr
                .ones()
                .into_iter()
                .fold(cl.clone(), |acc, j| acc.or(&self.inn[j].and(left)));
            let grown_right = grown_left
                .ones()
                .into_iter()
                .fold(cr.clone(), |acc, i| acc.or(&self.out[i].and(right)));
            if grown_left == cl && grown_right == cr {
                return (cl, cr);
            }
            cl = grown_left;
            cr = grown_right;
        }
    }

    fn pick(&self, left: &M, right: &M) -> usize {
        let ones = left.ones();
        let degree = |i: usize| self.out[i].and(right).len();
        match self.selection {
            Selection::MinLabel => ones[0],
            Selection::MaxLabel => *ones.last().expect("nonempty"),
            // max_by_key keeps the last maximum, so scan in reverse
            Selection::MaxOutDegree => ones.into_iter().rev().max_by_key(|&i| degree(i)).expect("nonempty"),
            Selection::MinOutDegree => ones.into_iter().min_by_key(|&i| degree(i)).expect("nonempty"),
        }
    }
}

/// `{i}` with the same width as `like`.
fn single<M: Mask>(like: &M, i: usize) -> M {
    let mut m = like.and_not(like);
    m.insert(i);
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, disjoint_union, Family, Left, Right};
    use crate::oracle::{brute_force_digraph_poly, brute_force_poly, DEFAULT_CAP};

    const SELECTIONS: [Selection; 4] =
        [Selection::MaxOutDegree, Selection::MinOutDegree, Selection::MinLabel, Selection::MaxLabel];

    fn gamma_form(p: &DomPolynomial) -> Vec<i64> {
        p.to_gamma().0.iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    /// Left `1..=m+1`, right `1'..=m'`, lifted path arcs on `1..=m` plus
    /// `(m+1, m')`.
    fn i_shape(m: usize) -> BipartiteDigraph {
        let mut arcs: Vec<_> = lift(&build_family(Family::Path, m).unwrap()).arcs().iter().copied().collect();
        arcs.push((Left(m + 1), Right(m)));
        BipartiteDigraph::new((1..=m + 1).map(Left), (1..=m).map(Right), arcs).unwrap()
    }

    #[test]
    fn base_cases() {
        let i10 = BipartiteDigraph::new([Left(1)], [], []).unwrap();
        assert_eq!(gamma_form(&recurrence_poly(&i10)), vec![1, 1]);
        let j01 = BipartiteDigraph::new([], [Right(1)], []).unwrap();
        assert!(recurrence_poly(&j01).is_zero());
        assert_eq!(graph_poly(&SimpleGraph::empty()), DomPolynomial::zero(0));
    }

    #[test]
    fn small_named_graphs() {
        let p2 = graph_poly(&build_family(Family::Path, 2).unwrap());
        assert_eq!(gamma_form(&p2), vec![1, 2, 0]);
        let k4 = graph_poly(&build_family(Family::Complete, 4).unwrap());
        assert_eq!(gamma_form(&k4), vec![1, 4, 6, 4, 0]);
    }

    #[test]
    fn i_shapes_follow_their_recurrence() {
        assert_eq!(gamma_form(&recurrence_poly(&i_shape(1))), vec![1, 2, 0]);
        assert_eq!(gamma_form(&recurrence_poly(&i_shape(2))), vec![1, 3, 2, 0]);
        // γ(I_{n,n-1}) = t·γ(Γ_{P_{n-1}}) + γ(I_{n-1,n-2})
        for m in 2..10 {
            let lhs = recurrence_poly(&i_shape(m)).to_gamma();
            let path = graph_poly(&build_family(Family::Path, m).unwrap()).to_gamma();
            let rhs = path.shift(1).add(&recurrence_poly(&i_shape(m - 1)).to_gamma());
            assert_eq!(lhs, rhs, "m = {m}");
        }
    }

    #[test]
    fn extraction_on_i_shape_leaves_smaller_i_shape() {
        let i43 = i_shape(3);
        // N⁺(4) = {3'}, leaving exactly I_{3,2}
        assert_eq!(i43.extract(Left(4)).unwrap(), i_shape(2));
        // deleting 4 leaves the lifted path
        assert_eq!(i43.delete(Left(4)).unwrap(), lift(&build_family(Family::Path, 3).unwrap()));
    }

    #[test]
    fn agrees_with_oracle_under_every_selection() {
        for f in Family::ALL {
            for n in f.min_n()..=10 {
                let g = build_family(f, n).unwrap();
                let expected = brute_force_poly(&g, DEFAULT_CAP).unwrap();
                for s in SELECTIONS {
                    assert_eq!(graph_poly_with(&g, s), expected, "{f} {n} {s:?}");
                }
            }
        }
    }

    #[test]
    fn arbitrary_digraphs_match_oracle() {
        // a few hand-made digraphs, including uncovered right vertices
        let d = BipartiteDigraph::new(
            (1..=4).map(Left),
            (1..=3).map(Right),
            [(1, 1), (2, 1), (2, 2), (3, 3), (4, 2)].map(|(i, j)| (Left(i), Right(j))),
        )
        .unwrap();
        for s in SELECTIONS {
            assert_eq!(recurrence_poly_with(&d, s), brute_force_digraph_poly(&d, DEFAULT_CAP).unwrap());
        }
        let stranded = BipartiteDigraph::new([Left(1)], [Right(1), Right(2)], [(Left(1), Right(1))]).unwrap();
        assert!(recurrence_poly(&stranded).is_zero());
        assert_eq!(recurrence_poly(&stranded).n(), 1);
    }

    #[test]
    fn components_multiply() {
        let a = build_family(Family::Cycle, 5).unwrap();
        let b = build_family(Family::Path, 4).unwrap();
        let whole = graph_poly(&disjoint_union(&a, &b));
        assert_eq!(whole, graph_poly(&a).mul(&graph_poly(&b)));
    }

    #[test]
    fn path_recursion_stays_small() {
        let ev = evaluate(&lift(&build_family(Family::Path, 60).unwrap()), Selection::MinLabel);
        assert!(ev.subproblems < 60 * 8, "{} subproblems", ev.subproblems);
        assert_eq!(ev.poly.n(), 60);
    }

    #[test]
    fn wide_digraphs() {
        // 70-vertex path exercises the multi-word masks
        let p = graph_poly(&build_family(Family::Path, 70).unwrap());
        assert_eq!(p.coeff(70), BigUint::from(1u8));
        assert_eq!(p.coeff(69), BigUint::from(70u8));
        assert_eq!(p.domination_number(), Some(24));
        let c = graph_poly(&build_family(Family::Cycle, 66).unwrap());
        assert_eq!(c.coeff(22), BigUint::from(3u8));
    }
}
