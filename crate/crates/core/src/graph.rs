//! Simple graphs, vertex sets, bipartite one-way digraphs and the lift
//! between them.
//!
//! Vertices are labeled `1..=n` throughout the public API.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Named graph families with known closed forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Path,
    Cycle,
    Wheel,
    Complete,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Path, Family::Cycle, Family::Wheel, Family::Complete];

    /// Smallest vertex count the family is defined for.
    pub fn min_n(self) -> usize {
        match self {
            Family::Wheel => 4,
            _ => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Wheel => "wheel",
            Family::Complete => "complete",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "path" => Ok(Family::Path),
            "cycle" => Ok(Family::Cycle),
            "wheel" => Ok(Family::Wheel),
            "complete" => Ok(Family::Complete),
            other => Err(Error::domain(format!(
                "unknown family `{other}` (expected path, cycle, wheel or complete)"
            ))),
        }
    }
}

/// An undirected graph without loops or parallel edges on vertices `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    // 0-based adjacency
    adj: Vec<BTreeSet<usize>>,
}

impl SimpleGraph {
    /// The graph with no vertices.
    pub fn empty() -> Self {
        SimpleGraph { n: 0, adj: Vec::new() }
    }

    /// `n` isolated vertices.
    pub fn edgeless(n: usize) -> Self {
        SimpleGraph { n, adj: vec![BTreeSet::new(); n] }
    }

    /// Builds a graph from 1-based edge pairs, rejecting loops, out-of-range
    /// endpoints and repeated edges.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::edgeless(n);
        for (i, j) in edges {
            if i == j {
                return Err(Error::domain(format!("self-loop at vertex {i}")));
            }
            for v in [i, j] {
                if v == 0 || v > n {
                    return Err(Error::domain(format!("vertex {v} outside 1..={n}")));
                }
            }
            if !g.insert_edge(i, j) {
                return Err(Error::domain(format!("duplicate edge {{{i},{j}}}")));
            }
        }
        Ok(g)
    }

    /// Returns false if the edge was already present.
    fn insert_edge(&mut self, i: usize, j: usize) -> bool {
        let fresh = self.adj[i - 1].insert(j - 1);
        self.adj[j - 1].insert(i - 1);
        fresh
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    /// Edges as 1-based pairs `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (i, nbrs) in self.adj.iter().enumerate() {
            for &j in nbrs.range(i + 1..) {
                out.push((i + 1, j + 1));
            }
        }
        out
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i >= 1 && i <= self.n && j >= 1 && self.adj[i - 1].contains(&(j - 1))
    }

    /// Open neighbourhood of vertex `v` (1-based labels).
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v - 1].iter().map(|&u| u + 1)
    }

    /// Closed neighbourhoods as bitmasks (bit `v-1` stands for vertex `v`),
    /// or `None` when the graph does not fit in a machine word.
    pub fn closed_neighborhood_masks(&self) -> Option<Vec<u64>> {
        if self.n > 64 {
            return None;
        }
        Some(
            self.adj
                .iter()
                .enumerate()
                .map(|(v, nbrs)| nbrs.iter().fold(1u64 << v, |m, &u| m | (1u64 << u)))
                .collect(),
        )
    }
}

/// Builds the `n`-vertex member of a family.
///
/// `cycle(1)` is a single vertex and `cycle(2)` is a single edge; the latter
/// stands in for the two-vertex dicycle, whose domination polynomial is the
/// same as that of `K_2`.
pub fn build_family(family: Family, n: usize) -> Result<SimpleGraph> {
    if n == 0 {
        return Err(Error::domain(format!("{family} needs at least one vertex")));
    }
    match family {
        Family::Path => Ok(path_graph(n)),
        Family::Cycle => {
            let mut g = path_graph(n);
            if n >= 3 {
                g.insert_edge(n, 1);
            }
            Ok(g)
        }
        Family::Complete => Ok(complete_graph(n)),
        Family::Wheel => {
            if n < 4 {
                return Err(Error::domain(format!("wheel needs n >= 4, got {n}")));
            }
            Ok(join(&complete_graph(1), &build_family(Family::Cycle, n - 1)?))
        }
    }
}

fn path_graph(n: usize) -> SimpleGraph {
    let mut g = SimpleGraph::edgeless(n);
    for i in 1..n {
        g.insert_edge(i, i + 1);
    }
    g
}

fn complete_graph(n: usize) -> SimpleGraph {
    let mut g = SimpleGraph::edgeless(n);
    for i in 1..=n {
        for j in i + 1..=n {
            g.insert_edge(i, j);
        }
    }
    g
}

/// Disjoint union; the vertices of `h` are shifted by `g.n()`.
pub fn disjoint_union(g: &SimpleGraph, h: &SimpleGraph) -> SimpleGraph {
    let mut out = SimpleGraph::edgeless(g.n + h.n);
    for (i, j) in g.edges() {
        out.insert_edge(i, j);
    }
    for (i, j) in h.edges() {
        out.insert_edge(i + g.n, j + g.n);
    }
    out
}

/// Join (sum) of two graphs: their disjoint union plus every edge between
/// the two parts.
pub fn join(g: &SimpleGraph, h: &SimpleGraph) -> SimpleGraph {
    let mut out = disjoint_union(g, h);
    for i in 1..=g.n {
        for j in 1..=h.n {
            out.insert_edge(i, g.n + j);
        }
    }
    out
}

/// A set of vertex labels.
///
/// Sets over at most 64 vertices are stored as a bitmask (bit `v-1` for
/// vertex `v`); larger ones fall back to a dense boolean vector indexed by
/// `v-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum VertexSet {
    Mask(u64),
    Dense(Vec<bool>),
}

impl VertexSet {
    /// Collects 1-based labels for a graph on `n` vertices.
    pub fn from_labels(n: usize, labels: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut set = if n <= 64 {
            VertexSet::Mask(0)
        } else {
            VertexSet::Dense(vec![false; n])
        };
        for v in labels {
            if v == 0 || v > n {
                return Err(Error::domain(format!("vertex {v} outside 1..={n}")));
            }
            match &mut set {
                VertexSet::Mask(m) => *m |= 1 << (v - 1),
                VertexSet::Dense(bits) => bits[v - 1] = true,
            }
        }
        Ok(set)
    }

    pub fn contains(&self, v: usize) -> bool {
        if v == 0 {
            return false;
        }
        match self {
            VertexSet::Mask(m) => v <= 64 && m >> (v - 1) & 1 == 1,
            VertexSet::Dense(bits) => bits.get(v - 1).copied().unwrap_or(false),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            VertexSet::Mask(m) => m.count_ones() as usize,
            VertexSet::Dense(bits) => bits.iter().filter(|&&b| b).count(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Members in ascending order.
    pub fn iter(&self) -> Box<dyn Iterator<Item = usize> + '_> {
        match self {
            VertexSet::Mask(m) => {
                let m = *m;
                Box::new((0..64).filter(move |b| m >> b & 1 == 1).map(|b| b + 1))
            }
            VertexSet::Dense(bits) => {
                Box::new(bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i + 1))
            }
        }
    }

    pub fn max_label(&self) -> Option<usize> {
        match self {
            VertexSet::Mask(0) => None,
            VertexSet::Mask(m) => Some(64 - m.leading_zeros() as usize),
            VertexSet::Dense(bits) => bits.iter().rposition(|&b| b).map(|i| i + 1),
        }
    }
}

/// True iff every vertex outside `d` has a neighbour in `d`.
pub fn is_dominating(g: &SimpleGraph, d: &VertexSet) -> Result<bool> {
    if let Some(max) = d.max_label() {
        if max > g.n {
            return Err(Error::domain(format!("vertex {max} outside 1..={}", g.n)));
        }
    }
    Ok((1..=g.n).all(|y| d.contains(y) || g.neighbors(y).any(|x| d.contains(x))))
}

/// A vertex of the left partite set `U1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Left(pub usize);

/// A vertex of the right partite set `U2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Right(pub usize);

impl fmt::Display for Left {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Right {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}'", self.0)
    }
}

/// Bipartite digraph whose arcs all run from `U1` to `U2`.
///
/// Left and right labels are separate types, so the two partite sets can
/// never share a vertex. Removing vertices keeps the remaining labels
/// unchanged.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BipartiteDigraph {
    u1: BTreeSet<Left>,
    u2: BTreeSet<Right>,
    arcs: BTreeSet<(Left, Right)>,
}

impl BipartiteDigraph {
    pub fn new(
        u1: impl IntoIterator<Item = Left>,
        u2: impl IntoIterator<Item = Right>,
        arcs: impl IntoIterator<Item = (Left, Right)>,
    ) -> Result<Self> {
        let u1: BTreeSet<Left> = u1.into_iter().collect();
        let u2: BTreeSet<Right> = u2.into_iter().collect();
        let mut set = BTreeSet::new();
        for (i, j) in arcs {
            if !u1.contains(&i) {
                return Err(Error::domain(format!("arc source {i} not in U1")));
            }
            if !u2.contains(&j) {
                return Err(Error::domain(format!("arc target {j} not in U2")));
            }
            if !set.insert((i, j)) {
                return Err(Error::domain(format!("duplicate arc ({i},{j})")));
            }
        }
        Ok(BipartiteDigraph { u1, u2, arcs: set })
    }

    pub fn u1(&self) -> &BTreeSet<Left> {
        &self.u1
    }

    pub fn u2(&self) -> &BTreeSet<Right> {
        &self.u2
    }

    pub fn arcs(&self) -> &BTreeSet<(Left, Right)> {
        &self.arcs
    }

    /// Out-neighbourhood `N⁺(i)`.
    pub fn out_neighbors(&self, i: Left) -> impl Iterator<Item = Right> + '_ {
        self.arcs
            .range((i, Right(0))..=(i, Right(usize::MAX)))
            .map(|&(_, j)| j)
    }

    /// In-neighbourhood `N⁻(j)`.
    pub fn in_neighbors(&self, j: Right) -> impl Iterator<Item = Left> + '_ {
        self.arcs.iter().filter(move |&&(_, r)| r == j).map(|&(i, _)| i)
    }

    fn require_left(&self, i: Left) -> Result<()> {
        if self.u1.contains(&i) {
            Ok(())
        } else {
            Err(Error::domain(format!("{i} is not a left vertex")))
        }
    }

    /// `Γ − i`: drops `i` and its arcs, leaving `U2` alone.
    pub fn delete(&self, i: Left) -> Result<Self> {
        self.require_left(i)?;
        let mut out = self.clone();
        out.u1.remove(&i);
        out.arcs.retain(|&(src, _)| src != i);
        Ok(out)
    }

    /// `Γ − N⁺[i]`: drops `i`, every out-neighbour of `i`, and all arcs
    /// touching them.
    pub fn extract(&self, i: Left) -> Result<Self> {
        self.require_left(i)?;
        let gone: BTreeSet<Right> = self.out_neighbors(i).collect();
        let mut out = self.clone();
        out.u1.remove(&i);
        out.u2.retain(|j| !gone.contains(j));
        out.arcs.retain(|&(src, dst)| src != i && !gone.contains(&dst));
        Ok(out)
    }
}

impl fmt::Display for BipartiteDigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join_all = |items: Vec<String>| items.join(",");
        write!(
            f,
            "U1={{{}}} U2={{{}}} A={{{}}}",
            join_all(self.u1.iter().map(ToString::to_string).collect()),
            join_all(self.u2.iter().map(ToString::to_string).collect()),
            join_all(self.arcs.iter().map(|(i, j)| format!("({i},{j})")).collect()),
        )
    }
}

/// The lift `Γ_G`: two copies of `V`, an arc `(i, i')` for every vertex and
/// arcs `(i, j')`, `(j, i')` for every edge `{i, j}`.
pub fn lift(g: &SimpleGraph) -> BipartiteDigraph {
    let vertices = 1..=g.n;
    let mut arcs: BTreeSet<(Left, Right)> = vertices.clone().map(|v| (Left(v), Right(v))).collect();
    for (i, j) in g.edges() {
        arcs.insert((Left(i), Right(j)));
        arcs.insert((Left(j), Right(i)));
    }
    BipartiteDigraph {
        u1: vertices.clone().map(Left).collect(),
        u2: vertices.map(Right).collect(),
        arcs,
    }
}

/// Parses the edge-list text format: a first line holding `n`, then one
/// whitespace-separated 1-based pair `i j` per line. Blank lines are skipped.
pub fn parse_edge_list(text: &str) -> Result<SimpleGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (first, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing vertex count".into(),
    })?;
    let n: usize = header.parse().map_err(|_| Error::Parse {
        line: first,
        msg: format!("expected vertex count, found `{header}`"),
    })?;
    let mut g = SimpleGraph::edgeless(n);
    for (line, l) in lines {
        let err = |msg: String| Error::Parse { line, msg };
        let fields: Vec<&str> = l.split_whitespace().collect();
        let [a, b] = fields[..] else {
            return Err(err(format!("expected `i j`, found `{l}`")));
        };
        let parse = |s: &str| s.parse::<usize>().map_err(|_| err(format!("bad vertex `{s}`")));
        let (i, j) = (parse(a)?, parse(b)?);
        if i == j {
            return Err(err(format!("self-loop at vertex {i}")));
        }
        if i == 0 || j == 0 || i > n || j > n {
            return Err(err(format!("edge {{{i},{j}}} outside 1..={n}")));
        }
        if !g.insert_edge(i, j) {
            return Err(err(format!("duplicate edge {{{i},{j}}}")));
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, labels: &[usize]) -> VertexSet {
        VertexSet::from_labels(n, labels.iter().copied()).unwrap()
    }

    #[test]
    fn family_shapes() {
        let p3 = build_family(Family::Path, 3).unwrap();
        assert_eq!(p3.edges(), vec![(1, 2), (2, 3)]);
        let c3 = build_family(Family::Cycle, 3).unwrap();
        assert_eq!(c3.edges(), vec![(1, 2), (1, 3), (2, 3)]);
        assert_eq!(build_family(Family::Cycle, 1).unwrap().edge_count(), 0);
        assert_eq!(build_family(Family::Cycle, 2).unwrap().edges(), vec![(1, 2)]);
        let w4 = build_family(Family::Wheel, 4).unwrap();
        assert_eq!(w4, build_family(Family::Complete, 4).unwrap());
        assert_eq!(build_family(Family::Wheel, 6).unwrap().edge_count(), 10);
    }

    #[test]
    fn family_domain_errors() {
        assert!(build_family(Family::Wheel, 3).is_err());
        for f in Family::ALL {
            assert!(build_family(f, 0).is_err());
        }
    }

    #[test]
    fn unions_and_joins() {
        let p1 = build_family(Family::Path, 1).unwrap();
        let p2 = build_family(Family::Path, 2).unwrap();
        let p3 = build_family(Family::Path, 3).unwrap();
        let c3 = build_family(Family::Cycle, 3).unwrap();

        let u = disjoint_union(&p1, &p1);
        assert_eq!((u.n(), u.edge_count()), (2, 0));
        assert_eq!(disjoint_union(&p2, &p2).edges(), vec![(1, 2), (3, 4)]);
        let u = disjoint_union(&p3, &c3);
        assert_eq!((u.n(), u.edge_count()), (6, 5));

        assert_eq!(join(&p1, &c3), build_family(Family::Complete, 4).unwrap());
        let fan = join(&p1, &p3);
        assert_eq!((fan.n(), fan.edge_count()), (4, 5));
        assert_eq!(join(&SimpleGraph::empty(), &p3), p3);
    }

    #[test]
    fn domination_predicate() {
        let p4 = build_family(Family::Path, 4).unwrap();
        assert!(is_dominating(&p4, &set(4, &[1, 3])).unwrap());
        assert!(!is_dominating(&p4, &set(4, &[3, 4])).unwrap());
        let p3 = build_family(Family::Path, 3).unwrap();
        assert!(!is_dominating(&p3, &set(3, &[])).unwrap());
        assert!(is_dominating(&SimpleGraph::empty(), &set(0, &[])).unwrap());
        assert!(is_dominating(&p3, &set(5, &[4])).is_err());
    }

    #[test]
    fn dense_vertex_sets_beyond_a_word() {
        let p70 = build_family(Family::Path, 70).unwrap();
        let d = VertexSet::from_labels(70, (1..=70).filter(|v| v % 3 == 2)).unwrap();
        assert!(matches!(d, VertexSet::Dense(_)));
        assert!(!is_dominating(&p70, &d).unwrap());
        let d = VertexSet::from_labels(70, (1..=70).filter(|v| v % 3 == 2).chain([70])).unwrap();
        assert!(is_dominating(&p70, &d).unwrap());
        assert_eq!(d.max_label(), Some(70));
        assert_eq!(d.iter().next(), Some(2));
    }

    #[test]
    fn lift_arcs() {
        let p1 = lift(&build_family(Family::Path, 1).unwrap());
        assert_eq!(p1.arcs().iter().copied().collect::<Vec<_>>(), vec![(Left(1), Right(1))]);
        let p2 = lift(&build_family(Family::Path, 2).unwrap());
        let expected: BTreeSet<_> = [(1, 1), (2, 2), (1, 2), (2, 1)]
            .into_iter()
            .map(|(i, j)| (Left(i), Right(j)))
            .collect();
        assert_eq!(p2.arcs(), &expected);
        assert_eq!(lift(&build_family(Family::Path, 3).unwrap()).arcs().len(), 7);
    }

    #[test]
    fn delete_and_extract() {
        let p2 = lift(&build_family(Family::Path, 2).unwrap());
        let j12 = p2.delete(Left(2)).unwrap();
        assert_eq!(j12.to_string(), "U1={1} U2={1',2'} A={(1,1'),(1,2')}");

        let p1 = lift(&build_family(Family::Path, 1).unwrap());
        assert_eq!(p1.delete(Left(1)).unwrap().to_string(), "U1={} U2={1'} A={}");
        assert_eq!(p1.extract(Left(1)).unwrap().to_string(), "U1={} U2={} A={}");

        let p3 = lift(&build_family(Family::Path, 3).unwrap());
        let x = p3.extract(Left(3)).unwrap();
        assert_eq!(x.to_string(), "U1={1,2} U2={1'} A={(1,1'),(2,1')}");
        let j23 = p3.delete(Left(3)).unwrap();
        assert_eq!(j23.u1().len(), 2);
        assert_eq!(j23.u2().len(), 3);
        assert_eq!(j23.arcs().len(), 5);

        assert!(p3.delete(Left(9)).is_err());
        assert!(x.extract(Left(3)).is_err());
    }

    #[test]
    fn digraph_validation() {
        assert!(BipartiteDigraph::new([Left(1)], [Right(1)], [(Left(2), Right(1))]).is_err());
        assert!(BipartiteDigraph::new([Left(1)], [Right(1)], [(Left(1), Right(2))]).is_err());
        assert!(BipartiteDigraph::new(
            [Left(1)],
            [Right(1)],
            [(Left(1), Right(1)), (Left(1), Right(1))]
        )
        .is_err());
    }

    #[test]
    fn edge_list_parsing() {
        let g = parse_edge_list("4\n1 2\n2 3\n\n3 4\n").unwrap();
        assert_eq!(g, build_family(Family::Path, 4).unwrap());
        assert_eq!(parse_edge_list("1\n").unwrap().n(), 1);
        assert!(matches!(parse_edge_list("3\n1 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(parse_edge_list("3\n1 2\n2 1\n").is_err());
        assert!(parse_edge_list("3\n1 4\n").is_err());
        assert!(parse_edge_list("x\n").is_err());
        assert!(parse_edge_list("").is_err());
        assert!(parse_edge_list("3\n1 2 3\n").is_err());
    }
}
