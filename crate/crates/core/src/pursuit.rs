//! Cops and Robbers on tournaments with directed moves.
//!
//! A round-zero placement by the cops is followed by the robber's placement,
//! then cops and robber alternate moves, the cops first. Every cop either
//! passes or follows one out-arc; the robber does the same. The robber is
//! caught as soon as it shares a node with a cop, checked after every phase.
//! The robber must place even when every node is occupied.
//!
//! Cops are anonymous, so a cop configuration is a sorted multiset. Winning
//! states are found by the usual attractor iteration: round `r` marks the
//! cop-to-move states with a move into a state marked earlier, and the
//! robber-to-move states all of whose moves lead to states marked earlier.
//! The round a state is marked in is its rank, so a strategy that plays the
//! move recorded at marking time strictly lowers the rank every round.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::generator::{ilmt_step, StepKind};
use crate::tournament::Tournament;

pub const DEFAULT_STATE_BUDGET: u128 = 100_000_000;

const UNMARKED: u32 = u32::MAX;

/// Ranks sorted cop multisets of size `k` over `n` nodes.
#[derive(Clone, Debug)]
pub struct ConfigSpace {
    n: usize,
    k: usize,
    /// `binom[a][b] = C(a, b)`
    binom: Vec<Vec<u64>>,
    len: usize,
}

impl ConfigSpace {
    pub fn new(n: usize, k: usize) -> Self {
        let top = n + k;
        let mut binom = vec![vec![0u64; k + 2]; top + 1];
        for a in 0..=top {
            binom[a][0] = 1;
            for b in 1..=(k + 1).min(a) {
                binom[a][b] = binom[a - 1][b - 1].saturating_add(binom[a - 1][b]);
            }
        }
        let len = if n == 0 { 0 } else { binom[n + k - 1][k] as usize };
        ConfigSpace { n, k, binom, len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Colex rank of the strictly increasing `c_i + i`.
    pub fn rank(&self, cops: &[usize]) -> usize {
        debug_assert!(cops.windows(2).all(|w| w[0] <= w[1]));
        cops.iter()
            .enumerate()
            .map(|(i, &c)| self.binom[c + i][i + 1] as usize)
            .sum()
    }

    pub fn unrank(&self, mut r: usize) -> Vec<usize> {
        let mut out = vec![0; self.k];
        for i in (0..self.k).rev() {
            // largest d with C(d, i+1) <= r
            let mut d = i;
            while d < self.n + self.k - 1 && self.binom[d + 1][i + 1] as usize <= r {
                d += 1;
            }
            r -= self.binom[d][i + 1] as usize;
            out[i] = d - i;
        }
        out
    }
}

/// Number of game states per phase, `C(n+k-1, k) · n`.
pub fn state_count(n: usize, k: usize) -> u128 {
    let mut c: u128 = 1;
    for i in 0..k as u128 {
        c = c * (n as u128 + k as u128 - 1 - i) / (i + 1);
    }
    c * n as u128
}

fn successors(t: &Tournament, cops: &[usize]) -> Vec<Vec<usize>> {
    let mut out = HashSet::new();
    let mut cur = Vec::with_capacity(cops.len());
    fn rec(t: &Tournament, cops: &[usize], i: usize, cur: &mut Vec<usize>, out: &mut HashSet<Vec<usize>>) {
        if i == cops.len() {
            let mut m = cur.clone();
            m.sort_unstable();
            out.insert(m);
            return;
        }
        let c = cops[i];
        for next in std::iter::once(c).chain(t.out_neighbors(c)) {
            cur.push(next);
            rec(t, cops, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(t, cops, 0, &mut cur, &mut out);
    let mut v: Vec<Vec<usize>> = out.into_iter().collect();
    v.sort();
    v
}

/// Ranks of winning states for `k` cops; `UNMARKED` where the robber escapes.
#[derive(Clone, Debug, Serialize)]
pub struct ValueTable {
    pub n: usize,
    pub k: usize,
    /// Indexed by `config * n + robber`, cops to move.
    pub cop_to_move: Vec<u32>,
    /// Indexed by `config * n + robber`, robber to move.
    pub robber_to_move: Vec<u32>,
    /// Recorded move for winning cop-to-move states: the target configuration.
    pub strategy: Vec<Option<u32>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CopsWin {
    pub k: usize,
    pub win: bool,
    /// A winning round-zero placement, if any.
    pub placement: Option<Vec<usize>>,
    #[serde(skip)]
    pub table: ValueTable,
    #[serde(skip)]
    space: ConfigSpace,
}

impl CopsWin {
    pub fn space(&self) -> &ConfigSpace {
        &self.space
    }

    pub fn is_cop_win(&self, cops: &[usize], robber: usize) -> bool {
        let mut c = cops.to_vec();
        c.sort_unstable();
        self.table.cop_to_move[self.space.rank(&c) * self.table.n + robber] != UNMARKED
    }
}

fn check_budget(n: usize, k: usize, budget: u128) -> Result<()> {
    let states = state_count(n, k);
    if states > budget {
        return Err(Error::StateBudget {
            cops: k,
            states,
            budget,
        });
    }
    Ok(())
}

pub fn cops_win(t: &Tournament, k: usize) -> Result<CopsWin> {
    cops_win_with_budget(t, k, DEFAULT_STATE_BUDGET)
}

pub fn cops_win_with_budget(t: &Tournament, k: usize, budget: u128) -> Result<CopsWin> {
    let n = t.n();
    if n == 0 || k == 0 {
        return Err(Error::Precondition(format!(
            "need at least one node and one cop (n = {n}, k = {k})"
        )));
    }
    check_budget(n, k, budget)?;
    let space = ConfigSpace::new(n, k);
    let configs: Vec<Vec<usize>> = (0..space.len()).map(|r| space.unrank(r)).collect();
    let occupied: Vec<Vec<bool>> = configs
        .iter()
        .map(|c| {
            let mut o = vec![false; n];
            for &x in c {
                o[x] = true;
            }
            o
        })
        .collect();
    let moves: Vec<Vec<u32>> = configs
        .par_iter()
        .map(|c| {
            successors(t, c)
                .iter()
                .map(|m| space.rank(m) as u32)
                .collect()
        })
        .collect();
    let robber_moves: Vec<Vec<usize>> = (0..n)
        .map(|p| std::iter::once(p).chain(t.out_neighbors(p)).collect())
        .collect();

    let size = space.len() * n;
    let mut cop = vec![UNMARKED; size];
    let mut rob = vec![UNMARKED; size];
    let mut strategy: Vec<Option<u32>> = vec![None; size];
    // rank 0: capture
    for (c, occ) in occupied.iter().enumerate() {
        for p in 0..n {
            if occ[p] {
                cop[c * n + p] = 0;
                rob[c * n + p] = 0;
            }
        }
    }
    let mut round: u32 = 0;
    loop {
        round += 1;
        let prev_cop = &cop;
        let prev_rob = &rob;
        // cop-to-move states marked this round, with their move
        let new_cop: Vec<(usize, u32)> = (0..size)
            .into_par_iter()
            .filter(|&s| prev_cop[s] == UNMARKED)
            .filter_map(|s| {
                let (c, p) = (s / n, s % n);
                moves[c]
                    .iter()
                    .find(|&&m| prev_rob[m as usize * n + p] != UNMARKED)
                    .map(|&m| (s, m))
            })
            .collect();
        let new_rob: Vec<usize> = (0..size)
            .into_par_iter()
            .filter(|&s| prev_rob[s] == UNMARKED)
            .filter(|&s| {
                let (c, p) = (s / n, s % n);
                robber_moves[p]
                    .iter()
                    .all(|&q| prev_cop[c * n + q] != UNMARKED)
            })
            .collect();
        if new_cop.is_empty() && new_rob.is_empty() {
            break;
        }
        for (s, m) in new_cop {
            cop[s] = round;
            strategy[s] = Some(m);
        }
        for s in new_rob {
            rob[s] = round;
        }
    }

    // round zero: a placement every robber placement loses against
    let placement = (0..space.len())
        .filter_map(|c| {
            let worst = (0..n)
                .map(|p| cop[c * n + p])
                .max()
                .expect("n > 0");
            (worst != UNMARKED).then_some((worst, c))
        })
        .min()
        .map(|(_, c)| configs[c].clone());
    Ok(CopsWin {
        k,
        win: placement.is_some(),
        placement,
        table: ValueTable {
            n,
            k,
            cop_to_move: cop,
            robber_to_move: rob,
            strategy,
        },
        space,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveResult {
    pub cop_number: usize,
    pub certificate: CopsWin,
    /// Cop counts that were shown insufficient.
    pub losing_counts: Vec<usize>,
}

pub fn cop_number(t: &Tournament) -> Result<SolveResult> {
    cop_number_with_budget(t, DEFAULT_STATE_BUDGET)
}

/// Smallest winning `k`, trying `k = 1, 2, …`. `n` cops always win.
pub fn cop_number_with_budget(t: &Tournament, budget: u128) -> Result<SolveResult> {
    let mut losing_counts = Vec::new();
    for k in 1..=t.n().max(1) {
        let res = cops_win_with_budget(t, k, budget)?;
        if res.win {
            return Ok(SolveResult {
                cop_number: k,
                certificate: res,
                losing_counts,
            });
        }
        losing_counts.push(k);
    }
    Err(Error::Internal("no winning cop count up to n".into()))
}

/// One entry of an exported strategy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrategyEntry {
    pub cops: Vec<usize>,
    pub robber: usize,
    pub move_to: Vec<usize>,
    pub rank: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrategyExport {
    pub k: usize,
    pub placement: Vec<usize>,
    pub moves: Vec<StrategyEntry>,
}

impl SolveResult {
    pub fn export_strategy(&self) -> StrategyExport {
        let w = &self.certificate;
        let n = w.table.n;
        let moves = w
            .table
            .strategy
            .iter()
            .enumerate()
            .filter_map(|(s, m)| {
                m.map(|m| StrategyEntry {
                    cops: w.space.unrank(s / n),
                    robber: s % n,
                    move_to: w.space.unrank(m as usize),
                    rank: w.table.cop_to_move[s],
                })
            })
            .collect();
        StrategyExport {
            k: w.k,
            placement: w.placement.clone().unwrap_or_default(),
            moves,
        }
    }
}

/// Replays the recorded strategy against every robber placement and every
/// robber reply. True when each line of play ends in capture, never revisits
/// a state, and uses only legal cop moves.
pub fn verify_strategy(t: &Tournament, w: &CopsWin) -> bool {
    let Some(placement) = &w.placement else {
        return false;
    };
    let n = t.n();
    let space = &w.space;
    let bound = space.len() * n;
    let legal = |from: &[usize], to: &[usize]| successors(t, from).iter().any(|m| m == to);
    // (config, robber) cop-to-move states still to expand
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();
    let start = space.rank(placement);
    for p in 0..n {
        if !placement.contains(&p) {
            stack.push((start, p, 0));
        }
    }
    let mut done = vec![false; bound];
    while let Some((c, p, depth)) = stack.pop() {
        if depth > bound {
            return false;
        }
        let s = c * n + p;
        if done[s] {
            continue;
        }
        done[s] = true;
        let Some(m) = w.table.strategy[s] else {
            return false;
        };
        let (from, to) = (space.unrank(c), space.unrank(m as usize));
        if !legal(&from, &to) {
            return false;
        }
        if to.contains(&p) {
            continue;
        }
        let rank = w.table.cop_to_move[s];
        for q in std::iter::once(p).chain(t.out_neighbors(p)) {
            if to.contains(&q) {
                continue;
            }
            let next = m as usize * n + q;
            // ranks strictly fall, so no line of play can cycle
            if w.table.cop_to_move[next] >= rank {
                return false;
            }
            stack.push((m as usize, q, depth + 1));
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CopStepReport {
    pub c0: usize,
    pub c_one_step: usize,
    pub c_zero_step: usize,
    pub one_step_preserved: bool,
    /// `None` for a single-node base.
    pub zero_step_in_band: Option<bool>,
    /// `c = 1` implies a source, on all three tournaments.
    pub one_cop_needs_source: bool,
}

impl CopStepReport {
    pub fn holds(&self) -> bool {
        self.one_step_preserved && self.zero_step_in_band != Some(false) && self.one_cop_needs_source
    }
}

pub fn verify_cop_step_theorems(g0: &Tournament) -> Result<CopStepReport> {
    let (g1, _) = ilmt_step(g0, StepKind::One)?;
    let (h1, _) = ilmt_step(g0, StepKind::Zero)?;
    let mut one_cop_needs_source = true;
    let mut c = |g: &Tournament| -> Result<usize> {
        let r = cop_number(g)?.cop_number;
        if r == 1 && g.source().is_none() {
            one_cop_needs_source = false;
        }
        Ok(r)
    };
    let (c0, c1, cz) = (c(g0)?, c(&g1)?, c(&h1)?);
    Ok(CopStepReport {
        c0,
        c_one_step: c1,
        c_zero_step: cz,
        one_step_preserved: c0 == c1,
        zero_step_in_band: (g0.n() >= 2).then_some((2..=3).contains(&cz)),
        one_cop_needs_source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::iso;

    #[test]
    fn config_ranks_round_trip() {
        let space = ConfigSpace::new(5, 3);
        assert_eq!(space.len(), 35);
        for r in 0..space.len() {
            let c = space.unrank(r);
            assert!(c.windows(2).all(|w| w[0] <= w[1]));
            assert_eq!(space.rank(&c), r);
        }
    }

    #[test]
    fn small_games() {
        assert!(cops_win(&fixtures::edge(), 1).unwrap().win);
        assert!(!cops_win(&fixtures::d3(), 1).unwrap().win);
        assert!(cops_win(&fixtures::d3(), 2).unwrap().win);
        assert_eq!(cop_number(&fixtures::single()).unwrap().cop_number, 1);
        assert_eq!(cop_number(&fixtures::d3()).unwrap().cop_number, 2);
        assert_eq!(cop_number(&fixtures::t3()).unwrap().cop_number, 1);
    }

    #[test]
    fn strategies_verify() {
        for t in iso::tournaments_up_to_iso(5).unwrap() {
            let r = cop_number(&t).unwrap();
            assert!(verify_strategy(&t, &r.certificate), "{t:?}");
            if r.cop_number == 1 {
                assert!(t.source().is_some());
            }
        }
    }

    #[test]
    fn monotone_in_k() {
        for t in iso::tournaments_up_to_iso(4).unwrap() {
            let wins: Vec<bool> = (1..=3).map(|k| cops_win(&t, k).unwrap().win).collect();
            assert!(wins.windows(2).all(|w| !w[0] || w[1]));
        }
    }

    #[test]
    fn step_report() {
        let r = verify_cop_step_theorems(&fixtures::t3()).unwrap();
        assert_eq!((r.c0, r.c_one_step), (1, 1));
        assert!(r.holds());
        let r = verify_cop_step_theorems(&fixtures::d3()).unwrap();
        assert!((2..=3).contains(&r.c_zero_step));
    }

    #[test]
    fn budget() {
        let t = Tournament::transitive(30);
        assert!(matches!(
            cops_win_with_budget(&t, 3, 1000),
            Err(Error::StateBudget { .. })
        ));
    }

    #[test]
    fn export_shape() {
        let r = cop_number(&fixtures::d3()).unwrap();
        let e = r.export_strategy();
        assert_eq!(e.k, 2);
        assert_eq!(e.placement.len(), 2);
        assert!(e.moves.iter().all(|m| m.move_to.len() == 2));
    }
}
