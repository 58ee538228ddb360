//! Tournaments and oriented graphs over dense node indices `0..n`.

use std::fmt;

use serde::Serialize;

use crate::bits::{self, BitMatrix};
use crate::error::{Error, Result};

/// A tournament: exactly one arc between every pair of distinct nodes.
///
/// Immutable once built. Row `u` of the adjacency matrix is the out-neighbour
/// set `N+(u)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tournament {
    adj: BitMatrix,
}

/// An oriented graph: at most one arc between any pair, no loops.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrientedGraph {
    adj: BitMatrix,
}

/// Sorted in- and out-degree multisets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DegreeProfile {
    pub out_degrees: Vec<usize>,
    pub in_degrees: Vec<usize>,
}

impl DegreeProfile {
    pub fn arc_count(&self) -> usize {
        self.out_degrees.iter().sum()
    }
}

/// Checks the oriented-graph constraints on an arc list and returns its matrix.
fn matrix_from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<BitMatrix> {
    let mut adj = BitMatrix::new(n);
    for &(u, v) in arcs {
        if u >= n || v >= n {
            return Err(Error::OutOfRange { u, v, n });
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if adj.get(u, v) {
            return Err(Error::DuplicateArc(u, v));
        }
        if adj.get(v, u) {
            return Err(Error::AntiparallelArc(u, v));
        }
        adj.set(u, v);
    }
    Ok(adj)
}

fn check_subset(n: usize, nodes: &[usize]) -> Result<()> {
    if nodes.is_empty() {
        return Err(Error::EmptySubset);
    }
    let mut seen = vec![false; n];
    for &x in nodes {
        if x >= n {
            return Err(Error::NodeOutOfRange { node: x, n });
        }
        if std::mem::replace(&mut seen[x], true) {
            return Err(Error::DuplicateNode(x));
        }
    }
    Ok(())
}

fn induced_matrix(adj: &BitMatrix, nodes: &[usize]) -> BitMatrix {
    let mut out = BitMatrix::new(nodes.len());
    for (a, &x) in nodes.iter().enumerate() {
        for (b, &y) in nodes.iter().enumerate() {
            if adj.get(x, y) {
                out.set(a, b);
            }
        }
    }
    out
}

fn arc_list(adj: &BitMatrix) -> Vec<(usize, usize)> {
    (0..adj.n())
        .flat_map(|u| bits::ones(adj.row(u)).map(move |v| (u, v)))
        .collect()
}

impl Tournament {
    /// Builds a tournament from an explicit arc list.
    pub fn build(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let adj = matrix_from_arcs(n, arcs)?;
        for u in 0..n {
            for v in u + 1..n {
                if !adj.get(u, v) && !adj.get(v, u) {
                    return Err(Error::MissingPair(u, v));
                }
            }
        }
        Ok(Tournament { adj })
    }

    /// Builds from a predicate: for `i < j`, `forward(i, j)` true means `i → j`.
    pub fn from_fn(n: usize, mut forward: impl FnMut(usize, usize) -> bool) -> Self {
        let mut adj = BitMatrix::new(n);
        for i in 0..n {
            for j in i + 1..n {
                if forward(i, j) {
                    adj.set(i, j);
                } else {
                    adj.set(j, i);
                }
            }
        }
        Tournament { adj }
    }

    /// Each pair oriented by a fair coin.
    pub fn random<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        Self::from_fn(n, |_, _| rng.gen())
    }

    /// Linear order `0 → 1 → … → n-1` with all forward arcs.
    pub fn transitive(n: usize) -> Self {
        Self::from_fn(n, |_, _| true)
    }

    /// Wraps a matrix the caller guarantees is a tournament.
    pub(crate) fn from_matrix(adj: BitMatrix) -> Self {
        let t = Tournament { adj };
        debug_assert!(t.adj.padding_clean());
        debug_assert!(t.is_complete());
        t
    }

    fn is_complete(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| !self.adj.get(i, i))
            && (0..n).all(|i| (i + 1..n).all(|j| self.adj.get(i, j) ^ self.adj.get(j, i)))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.n()
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.adj.get(u, v)
    }

    #[inline]
    pub fn out_row(&self, u: usize) -> &[u64] {
        self.adj.row(u)
    }

    /// `N-(u)` as a bit row, derived from completeness.
    pub fn in_row(&self, u: usize) -> Vec<u64> {
        let mut row = bits::full_row(self.n());
        row.resize(self.adj.stride(), 0);
        for (w, o) in row.iter_mut().zip(self.out_row(u)) {
            *w &= !o;
        }
        bits::clear(&mut row, u);
        row
    }

    pub fn out_neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        bits::ones(self.out_row(u))
    }

    pub fn in_neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n()).filter(move |&v| v != u && self.has_arc(v, u))
    }

    #[inline]
    pub fn out_degree(&self, u: usize) -> usize {
        self.adj.row_count(u)
    }

    #[inline]
    pub fn in_degree(&self, u: usize) -> usize {
        self.n() - 1 - self.out_degree(u)
    }

    pub fn arc_count(&self) -> usize {
        let n = self.n();
        n * n.saturating_sub(1) / 2
    }

    /// All arcs, sorted by tail then head.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        arc_list(&self.adj)
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.adj
    }

    pub fn reverse(&self) -> Tournament {
        Tournament {
            adj: self.adj.transpose(),
        }
    }

    /// Subtournament on `nodes`; position `k` of the output is `nodes[k]`.
    pub fn induced(&self, nodes: &[usize]) -> Result<Tournament> {
        check_subset(self.n(), nodes)?;
        Ok(Tournament {
            adj: induced_matrix(&self.adj, nodes),
        })
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let mut out_degrees: Vec<usize> = (0..self.n()).map(|u| self.out_degree(u)).collect();
        let mut in_degrees: Vec<usize> = (0..self.n()).map(|u| self.in_degree(u)).collect();
        out_degrees.sort_unstable();
        in_degrees.sort_unstable();
        DegreeProfile {
            out_degrees,
            in_degrees,
        }
    }

    /// `(sources, sinks)`; each has at most one element in a tournament.
    pub fn sources_and_sinks(&self) -> (Vec<usize>, Vec<usize>) {
        let n = self.n();
        let sources = (0..n).filter(|&u| self.in_degree(u) == 0).collect();
        let sinks = (0..n).filter(|&u| self.out_degree(u) == 0).collect();
        (sources, sinks)
    }

    pub fn source(&self) -> Option<usize> {
        (0..self.n()).find(|&u| self.in_degree(u) == 0)
    }

    pub fn sink(&self) -> Option<usize> {
        (0..self.n()).find(|&u| self.out_degree(u) == 0)
    }

    /// Relabels by `perm`: node `i` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Tournament> {
        if perm.len() != self.n() {
            return Err(Error::Precondition(format!(
                "permutation of length {} for {} nodes",
                perm.len(),
                self.n()
            )));
        }
        if self.n() > 0 {
            check_subset(self.n(), perm)?;
        }
        let mut adj = BitMatrix::new(self.n());
        for (u, v) in self.arcs() {
            adj.set(perm[u], perm[v]);
        }
        Ok(Tournament { adj })
    }
}

impl fmt::Debug for Tournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tournament(n={}, arcs={:?})", self.n(), self.arcs())
    }
}

impl OrientedGraph {
    pub fn build(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        Ok(OrientedGraph {
            adj: matrix_from_arcs(n, arcs)?,
        })
    }

    pub(crate) fn from_matrix(adj: BitMatrix) -> Self {
        debug_assert!(adj.padding_clean());
        OrientedGraph { adj }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.n()
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.adj.get(u, v)
    }

    #[inline]
    pub fn out_row(&self, u: usize) -> &[u64] {
        self.adj.row(u)
    }

    pub fn out_neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        bits::ones(self.out_row(u))
    }

    pub fn arc_count(&self) -> usize {
        (0..self.n()).map(|u| self.adj.row_count(u)).sum()
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        arc_list(&self.adj)
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.adj
    }

    pub fn induced(&self, nodes: &[usize]) -> Result<OrientedGraph> {
        check_subset(self.n(), nodes)?;
        Ok(OrientedGraph {
            adj: induced_matrix(&self.adj, nodes),
        })
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let t = self.adj.transpose();
        let mut out_degrees: Vec<usize> = (0..self.n()).map(|u| self.adj.row_count(u)).collect();
        let mut in_degrees: Vec<usize> = (0..self.n()).map(|u| t.row_count(u)).collect();
        out_degrees.sort_unstable();
        in_degrees.sort_unstable();
        DegreeProfile {
            out_degrees,
            in_degrees,
        }
    }

    /// Returns the tournament when every pair carries an arc.
    pub fn to_tournament(&self) -> Result<Tournament> {
        Tournament::build(self.n(), &self.arcs())
    }
}

impl From<&Tournament> for OrientedGraph {
    fn from(t: &Tournament) -> Self {
        OrientedGraph { adj: t.adj.clone() }
    }
}

impl fmt::Debug for OrientedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrientedGraph(n={}, arcs={:?})", self.n(), self.arcs())
    }
}
