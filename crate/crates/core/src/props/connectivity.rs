use std::collections::VecDeque;

use serde::Serialize;

use super::diameter::is_strong;
use crate::bits;
use crate::error::{Error, Result};
use crate::tournament::Tournament;

/// Vertex connectivity with a minimum separating set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Connectivity {
    pub kappa: usize,
    pub cut: Vec<usize>,
}

pub const MAX_ENUM_CONNECTIVITY_NODES: usize = 12;

/// Nodes of `t` outside `removed`.
pub fn remaining(n: usize, removed: &[usize]) -> Vec<usize> {
    let mut keep = vec![true; n];
    for &x in removed {
        keep[x] = false;
    }
    (0..n).filter(|&x| keep[x]).collect()
}

/// True when deleting `cut` leaves a subtournament that is not strong.
pub fn separates(t: &Tournament, cut: &[usize]) -> Result<bool> {
    let rest = remaining(t.n(), cut);
    if rest.is_empty() {
        return Ok(false);
    }
    Ok(!is_strong(&t.induced(&rest)?))
}

/// Flow on the split graph: node `x` becomes `x_in → x_out` with capacity 1,
/// arc `x → y` becomes `x_out → y_in` with unbounded capacity. Node
/// capacities keep every arc flow at 0 or 1.
struct SplitFlow<'a> {
    t: &'a Tournament,
    /// `arc_flow[x]` has bit `y` when `x_out → y_in` carries flow.
    arc_flow: Vec<Vec<u64>>,
    /// Transpose of `arc_flow`.
    arc_flow_in: Vec<Vec<u64>>,
    node_flow: Vec<bool>,
    source: usize,
    sink: usize,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    In,
    Out,
}

type Parents = Vec<Option<(usize, Side)>>;

impl<'a> SplitFlow<'a> {
    fn new(t: &'a Tournament, source: usize, sink: usize) -> Self {
        let n = t.n();
        let stride = t.matrix().stride();
        SplitFlow {
            t,
            arc_flow: vec![vec![0; stride]; n],
            arc_flow_in: vec![vec![0; stride]; n],
            node_flow: vec![false; n],
            source,
            sink,
        }
    }

    /// Residual search from `source_out`. Returns the parent links of the
    /// visited split nodes, and whether `sink_in` was reached.
    fn search(&self) -> (Parents, Parents, bool) {
        let n = self.t.n();
        let stride = self.t.matrix().stride();
        // parents for x_in and x_out
        let mut par_in: Vec<Option<(usize, Side)>> = vec![None; n];
        let mut par_out: Vec<Option<(usize, Side)>> = vec![None; n];
        let mut seen_in = vec![0u64; stride];
        let mut seen_out = vec![false; n];
        let mut queue = VecDeque::new();
        seen_out[self.source] = true;
        queue.push_back((self.source, Side::Out));
        while let Some((x, side)) = queue.pop_front() {
            match side {
                Side::Out => {
                    let row = self.t.out_row(x);
                    let cand: Vec<u64> = (0..stride).map(|k| row[k] & !seen_in[k]).collect();
                    for y in bits::ones(&cand) {
                        bits::set(&mut seen_in, y);
                        par_in[y] = Some((x, Side::Out));
                        if y == self.sink {
                            return (par_in, par_out, true);
                        }
                        queue.push_back((y, Side::In));
                    }
                    // undo the split edge
                    if x != self.source && self.node_flow[x] && !bits::get(&seen_in, x) {
                        bits::set(&mut seen_in, x);
                        par_in[x] = Some((x, Side::Out));
                        queue.push_back((x, Side::In));
                    }
                }
                Side::In => {
                    if !self.node_flow[x] && !seen_out[x] {
                        seen_out[x] = true;
                        par_out[x] = Some((x, Side::In));
                        queue.push_back((x, Side::Out));
                    }
                    // undo an arc carrying flow into x
                    for y in bits::ones(&self.arc_flow_in[x]) {
                        if !seen_out[y] {
                            seen_out[y] = true;
                            par_out[y] = Some((x, Side::In));
                            queue.push_back((y, Side::Out));
                        }
                    }
                }
            }
        }
        (par_in, par_out, false)
    }

    fn augment(&mut self, par_in: &[Option<(usize, Side)>], par_out: &[Option<(usize, Side)>]) {
        let (mut x, mut side) = (self.sink, Side::In);
        loop {
            if (x, side) == (self.source, Side::Out) {
                break;
            }
            let (p, pside) = match side {
                Side::In => par_in[x],
                Side::Out => par_out[x],
            }
            .expect("path back to the source");
            match (pside, side) {
                (Side::Out, Side::In) if p == x => self.node_flow[x] = false,
                (Side::Out, Side::In) => {
                    debug_assert!(!bits::get(&self.arc_flow[p], x));
                    bits::set(&mut self.arc_flow[p], x);
                    bits::set(&mut self.arc_flow_in[x], p);
                }
                (Side::In, Side::Out) if p == x => self.node_flow[x] = true,
                (Side::In, Side::Out) => {
                    bits::clear(&mut self.arc_flow[x], p);
                    bits::clear(&mut self.arc_flow_in[p], x);
                }
                _ => unreachable!("residual edges alternate sides"),
            }
            (x, side) = (p, pside);
        }
    }

    /// Flow value, stopping once it reaches `limit`.
    fn run(&mut self, limit: usize) -> usize {
        let mut value = 0;
        while value < limit {
            let (par_in, par_out, found) = self.search();
            if !found {
                break;
            }
            self.augment(&par_in, &par_out);
            value += 1;
        }
        value
    }

    /// After a maximum flow: split nodes whose `in` side is reachable in the
    /// residual graph but whose `out` side is not.
    fn min_cut(&self) -> Vec<usize> {
        let (par_in, par_out, found) = self.search();
        debug_assert!(!found);
        let n = self.t.n();
        let reach_in = |x: usize| par_in[x].is_some();
        let reach_out = |x: usize| x == self.source || par_out[x].is_some();
        (0..n)
            .filter(|&x| x != self.source && x != self.sink && reach_in(x) && !reach_out(x))
            .collect()
    }
}

/// Minimum number of internally disjoint `u → v` paths, capped at `limit`,
/// with a separating set when the value is below the cap. Requires no arc
/// `u → v`.
fn local_connectivity(
    t: &Tournament,
    u: usize,
    v: usize,
    limit: usize,
) -> (usize, Option<Vec<usize>>) {
    debug_assert!(!t.has_arc(u, v));
    let mut flow = SplitFlow::new(t, u, v);
    let value = flow.run(limit);
    if value < limit {
        (value, Some(flow.min_cut()))
    } else {
        (value, None)
    }
}

/// `κ(T)` by local connectivities over ordered pairs without an arc `u → v`.
///
/// Only pairs with `u` among the first `κ + 1` nodes need checking: some node
/// among them survives any minimum cut. A tournament that is not strong has
/// `κ = 0` with the empty cut.
pub fn connectivity(t: &Tournament) -> Result<Connectivity> {
    let n = t.n();
    if n < 2 {
        return Err(Error::Precondition(format!(
            "connectivity needs at least 2 nodes, got {n}"
        )));
    }
    if !is_strong(t) {
        return Ok(Connectivity {
            kappa: 0,
            cut: Vec::new(),
        });
    }
    // removing all but the two ends of an arc always works
    let (a, b) = t.arcs()[0];
    let mut best = Connectivity {
        kappa: n - 2,
        cut: (0..n).filter(|&x| x != a && x != b).collect(),
    };
    let mut i = 0;
    while i < n && i <= best.kappa {
        for j in 0..n {
            if j == i {
                continue;
            }
            let (u, v) = if t.has_arc(i, j) { (j, i) } else { (i, j) };
            let (value, cut) = local_connectivity(t, u, v, best.kappa);
            if let Some(cut) = cut {
                debug_assert_eq!(cut.len(), value);
                best = Connectivity { kappa: value, cut };
            }
        }
        i += 1;
    }
    if !separates(t, &best.cut)? {
        return Err(Error::Internal(format!(
            "cut {:?} does not separate",
            best.cut
        )));
    }
    Ok(best)
}

/// Smallest separating set by subset enumeration; the reference for
/// [`connectivity`].
pub fn connectivity_by_enumeration(t: &Tournament) -> Result<Connectivity> {
    let n = t.n();
    if n > MAX_ENUM_CONNECTIVITY_NODES {
        return Err(Error::SizeCap {
            what: "connectivity enumeration order",
            requested: n,
            cap: MAX_ENUM_CONNECTIVITY_NODES,
        });
    }
    if n < 2 {
        return Err(Error::Precondition(format!(
            "connectivity needs at least 2 nodes, got {n}"
        )));
    }
    let mut masks: Vec<u32> = (0..1u32 << n).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    for mask in masks {
        let cut: Vec<usize> = (0..n).filter(|&x| mask >> x & 1 == 1).collect();
        if separates(t, &cut)? {
            return Ok(Connectivity {
                kappa: cut.len(),
                cut,
            });
        }
    }
    Err(Error::Internal("no separating set".into()))
}
