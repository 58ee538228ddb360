//! The ILMT step, iterated generation, and the sparse oriented-graph variant.
//!
//! A step from `n` nodes adds a clone `x' = x + n` for every node `x`:
//!
//! * every arc `(u, v)` yields `(u, v')` and `(u', v)`;
//! * every node yields `(x', x)`;
//! * among clones, `(u', v')` on a 1-step or `(v', u')` on a 0-step.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::bits::{self, BitMatrix};
use crate::error::{Error, Result};
use crate::tournament::{OrientedGraph, Tournament};

/// Default node cap: the bit matrix at 2^17 nodes is about 2 GiB.
pub const DEFAULT_MAX_NODES: usize = 1 << 17;

/// Environment variable that overrides [`DEFAULT_MAX_NODES`].
pub const MAX_NODES_ENV: &str = "ILMT_MAX_NODES";

/// Which way the clone block is wired.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepKind {
    /// Clone block is the reverse of the previous tournament.
    Zero,
    /// Clone block is a copy of the previous tournament.
    One,
}

impl StepKind {
    pub fn from_bit(bit: bool) -> Self {
        if bit {
            StepKind::One
        } else {
            StepKind::Zero
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            StepKind::Zero => 0,
            StepKind::One => 1,
        }
    }
}

/// A finite prefix `s(1), s(2), …` of a generating sequence.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GeneratingSequence {
    bits: Vec<bool>,
}

impl GeneratingSequence {
    pub fn new(bits: Vec<bool>) -> Self {
        GeneratingSequence { bits }
    }

    /// From integer entries, rejecting anything other than 0 or 1.
    pub fn from_digits(digits: &[u8]) -> Result<Self> {
        digits
            .iter()
            .map(|&d| match d {
                0 => Ok(false),
                1 => Ok(true),
                other => Err(Error::BadSequence(format!("entry {other} is not 0 or 1"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn zeros(len: usize) -> Self {
        Self::new(vec![false; len])
    }

    pub fn ones(len: usize) -> Self {
        Self::new(vec![true; len])
    }

    /// `0101…` when `first` is false, `1010…` otherwise.
    pub fn alternating(len: usize, first: bool) -> Self {
        Self::new((0..len).map(|i| (i % 2 == 1) != first).collect())
    }

    /// Cycles the literal `k` times.
    pub fn repeat(&self, k: usize) -> Self {
        Self::new(self.bits.repeat(k))
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Entry `s(t)`, 1-based.
    pub fn kind(&self, t: usize) -> StepKind {
        StepKind::from_bit(self.bits[t - 1])
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn prefix(&self, t: usize) -> Self {
        Self::new(self.bits[..t.min(self.len())].to_vec())
    }

    /// 1-based positions holding a 0.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&t| !self.bits[t - 1]).collect()
    }

    pub fn zeros_in_prefix(&self, t: usize) -> usize {
        self.bits[..t.min(self.len())].iter().filter(|b| !**b).count()
    }

    /// Smallest `r` with exactly `k` zeros among `s(1..=r)`; `Some(0)` for `k = 0`.
    pub fn nth_zero(&self, k: usize) -> Option<usize> {
        if k == 0 {
            return Some(0);
        }
        self.support().get(k - 1).copied()
    }

    /// Every 0/1 string of length `len`, in binary counting order.
    pub fn all_of_length(len: usize) -> Vec<Self> {
        (0u64..1 << len)
            .map(|m| Self::new((0..len).map(|i| (m >> (len - 1 - i)) & 1 == 1).collect()))
            .collect()
    }
}

impl FromStr for GeneratingSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::BadSequence(format!(
                    "`{other}` in `{s}`; expected only 0 and 1"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }
}

impl fmt::Display for GeneratingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl Serialize for GeneratingSequence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Parent/clone bookkeeping for one step: clone of `x` is `x + parents`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CloneMap {
    pub t: usize,
    pub parents: usize,
}

impl CloneMap {
    #[inline]
    pub fn clone_of(&self, parent: usize) -> usize {
        debug_assert!(parent < self.parents);
        parent + self.parents
    }

    /// `None` for a node that is itself a parent.
    #[inline]
    pub fn parent_of(&self, node: usize) -> Option<usize> {
        (node >= self.parents && node < 2 * self.parents).then(|| node - self.parents)
    }

    #[inline]
    pub fn is_clone(&self, node: usize) -> bool {
        node >= self.parents
    }

    /// Parent of a clone, or the node itself.
    #[inline]
    pub fn origin(&self, node: usize) -> usize {
        self.parent_of(node).unwrap_or(node)
    }
}

/// Step construction with a node cap.
#[derive(Clone, Copy, Debug)]
pub struct Generator {
    max_nodes: usize,
}

impl Default for Generator {
    fn default() -> Self {
        Generator {
            max_nodes: DEFAULT_MAX_NODES,
        }
    }
}

impl Generator {
    pub fn with_max_nodes(max_nodes: usize) -> Self {
        Generator { max_nodes }
    }

    /// Cap from `ILMT_MAX_NODES` when set and valid, else the default.
    pub fn from_env() -> Self {
        std::env::var(MAX_NODES_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .filter(|&v: &usize| v > 0)
            .map(Self::with_max_nodes)
            .unwrap_or_default()
    }

    pub fn max_nodes(&self) -> usize {
        self.max_nodes
    }

    fn doubled(&self, n: usize) -> Result<usize> {
        if n == 0 {
            return Err(Error::Precondition("cannot step an empty graph".into()));
        }
        match n.checked_mul(2) {
            Some(m) if m <= self.max_nodes => Ok(m),
            _ => Err(Error::SizeCap {
                what: "generated node count",
                requested: n.saturating_mul(2),
                cap: self.max_nodes,
            }),
        }
    }

    pub fn step(&self, g: &Tournament, kind: StepKind) -> Result<(Tournament, CloneMap)> {
        let n = g.n();
        let m = self.doubled(n)?;
        let mut adj = BitMatrix::new(m);
        let (words, stride) = adj.raw_rows_mut();
        words
            .par_chunks_mut(stride)
            .enumerate()
            .for_each(|(row, dst)| {
                let (x, is_clone) = if row < n { (row, false) } else { (row - n, true) };
                let out = g.out_row(x);
                bits::or_shifted(dst, out, 0, n);
                if !is_clone {
                    bits::or_shifted(dst, out, n, n);
                } else {
                    bits::set(dst, x);
                    match kind {
                        StepKind::One => bits::or_shifted(dst, out, n, n),
                        StepKind::Zero => bits::or_shifted(dst, &g.in_row(x), n, n),
                    }
                }
            });
        let map = CloneMap { t: 0, parents: n };
        Ok((Tournament::from_matrix(adj), map))
    }

    /// Applies `s(1..=steps)` to `g0`. Clone maps carry their step index.
    pub fn generate(
        &self,
        g0: &Tournament,
        s: &GeneratingSequence,
        steps: usize,
    ) -> Result<(Tournament, Vec<CloneMap>)> {
        if steps > s.len() {
            return Err(Error::SequenceTooShort {
                requested: steps,
                available: s.len(),
            });
        }
        let mut need = g0.n();
        for _ in 0..steps {
            need = self.doubled(need)?;
        }
        let mut g = g0.clone();
        let mut maps = Vec::with_capacity(steps);
        for t in 1..=steps {
            let (next, mut map) = self.step(&g, s.kind(t))?;
            map.t = t;
            maps.push(map);
            g = next;
        }
        Ok((g, maps))
    }

    pub fn oriented_step(
        &self,
        g: &OrientedGraph,
        kind: StepKind,
    ) -> Result<(OrientedGraph, CloneMap)> {
        let n = g.n();
        let m = self.doubled(n)?;
        let ins = match kind {
            StepKind::Zero => Some(g.matrix().transpose()),
            StepKind::One => None,
        };
        let mut adj = BitMatrix::new(m);
        let (words, stride) = adj.raw_rows_mut();
        words
            .par_chunks_mut(stride)
            .enumerate()
            .for_each(|(row, dst)| {
                if row < n {
                    bits::or_shifted(dst, g.out_row(row), 0, n);
                } else {
                    let x = row - n;
                    bits::set(dst, x);
                    let nbrs = match &ins {
                        Some(t) => t.row(x),
                        None => g.out_row(x),
                    };
                    bits::or_shifted(dst, nbrs, 0, n);
                }
            });
        Ok((OrientedGraph::from_matrix(adj), CloneMap { t: 0, parents: n }))
    }

    pub fn generate_oriented(
        &self,
        g0: &OrientedGraph,
        s: &GeneratingSequence,
        steps: usize,
    ) -> Result<(OrientedGraph, Vec<CloneMap>)> {
        if steps > s.len() {
            return Err(Error::SequenceTooShort {
                requested: steps,
                available: s.len(),
            });
        }
        let mut g = g0.clone();
        let mut maps = Vec::with_capacity(steps);
        for t in 1..=steps {
            let (next, mut map) = self.oriented_step(&g, s.kind(t))?;
            map.t = t;
            maps.push(map);
            g = next;
        }
        Ok((g, maps))
    }
}

pub fn ilmt_step(g: &Tournament, kind: StepKind) -> Result<(Tournament, CloneMap)> {
    Generator::default().step(g, kind)
}

pub fn generate(
    g0: &Tournament,
    s: &GeneratingSequence,
    steps: usize,
) -> Result<(Tournament, Vec<CloneMap>)> {
    Generator::default().generate(g0, s, steps)
}

pub fn oriented_step(g: &OrientedGraph, kind: StepKind) -> Result<(OrientedGraph, CloneMap)> {
    Generator::default().oriented_step(g, kind)
}

pub fn generate_oriented(
    g0: &OrientedGraph,
    s: &GeneratingSequence,
    steps: usize,
) -> Result<(OrientedGraph, Vec<CloneMap>)> {
    Generator::default().generate_oriented(g0, s, steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::iso::is_isomorphic;

    fn seq(s: &str) -> GeneratingSequence {
        s.parse().unwrap()
    }

    #[test]
    fn sequence_literals() {
        let s = seq("10");
        assert_eq!(s.repeat(3).to_string(), "101010");
        assert_eq!(s.support(), vec![2]);
        assert_eq!(s.kind(1), StepKind::One);
        assert!("102".parse::<GeneratingSequence>().is_err());
        assert!(GeneratingSequence::from_digits(&[0, 1, 2]).is_err());
        assert_eq!(seq("1101").nth_zero(1), Some(3));
        assert_eq!(seq("1101").nth_zero(2), None);
        assert_eq!(GeneratingSequence::alternating(4, false).to_string(), "0101");
        assert_eq!(GeneratingSequence::all_of_length(2).len(), 4);
    }

    #[test]
    fn figure1_steps() {
        let (g1, map) = ilmt_step(&fixtures::edge(), StepKind::One).unwrap();
        assert_eq!(g1, fixtures::figure1_g1());
        assert_eq!(map.clone_of(0), 2);
        assert_eq!(map.parent_of(3), Some(1));
        let (g2, _) = ilmt_step(&g1, StepKind::Zero).unwrap();
        assert_eq!(g2, fixtures::figure1_g2());
        let (g, maps) = generate(&fixtures::edge(), &seq("10"), 2).unwrap();
        assert_eq!(g, fixtures::figure1_g2());
        assert_eq!(maps.iter().map(|m| m.t).collect::<Vec<_>>(), vec![1, 2]);
    }

    #[test]
    fn single_node_zero_step() {
        let (g, _) = ilmt_step(&fixtures::single(), StepKind::Zero).unwrap();
        assert_eq!(g.arcs(), vec![(1, 0)]);
    }

    #[test]
    fn zero_steps_is_identity() {
        let (g, maps) = generate(&fixtures::d3(), &GeneratingSequence::default(), 0).unwrap();
        assert_eq!(g, fixtures::d3());
        assert!(maps.is_empty());
    }

    #[test]
    fn clone_block_of_d3() {
        let (g, _) = generate(&fixtures::d3(), &seq("1"), 1).unwrap();
        assert_eq!(g.n(), 6);
        let clones = g.induced(&[3, 4, 5]).unwrap();
        assert!(is_isomorphic(&clones, &fixtures::d3()).unwrap().is_some());
    }

    #[test]
    fn generate_errors() {
        assert_eq!(
            generate(&fixtures::d3(), &seq("1"), 2).unwrap_err(),
            Error::SequenceTooShort {
                requested: 2,
                available: 1
            }
        );
        let small = Generator::with_max_nodes(8);
        assert!(matches!(
            small.generate(&fixtures::d3(), &seq("000"), 2),
            Err(Error::SizeCap { requested: 12, .. })
        ));
        assert!(small.step(&fixtures::t4(), StepKind::One).is_ok());
        assert!(small.step(&fixtures::figure1_g2(), StepKind::One).is_err());
    }

    #[test]
    fn oriented_figure3() {
        let (g1, _) = oriented_step(&(&fixtures::edge()).into(), StepKind::One).unwrap();
        assert_eq!(g1, fixtures::figure3_g1());
        let (g2, _) = oriented_step(&g1, StepKind::Zero).unwrap();
        assert_eq!(g2, fixtures::figure3_g2());
        // b'' (index 5) points at b's in-neighbours a, a', b' and at b
        let b2: Vec<usize> = g2.out_neighbors(5).collect();
        assert_eq!(b2, vec![0, 1, 2, 3]);
        for x in [0usize, 1] {
            let (g, _) = oriented_step(
                &(&fixtures::single()).into(),
                StepKind::from_bit(x == 1),
            )
            .unwrap();
            assert_eq!(g.arcs(), vec![(1, 0)]);
        }
    }

    #[test]
    fn step_across_word_boundary() {
        // 40 -> 80 -> 160 nodes crosses several word edges
        let base = Tournament::from_fn(40, |i, j| (i * 7 + j * 3) % 5 < 2);
        let (g, _) = generate(&base, &seq("01"), 2).unwrap();
        assert_eq!(g.n(), 160);
        assert!(g.matrix().padding_clean());
        for u in 0..160 {
            for v in u + 1..160 {
                assert!(g.has_arc(u, v) ^ g.has_arc(v, u));
            }
        }
    }
}
