use serde::Serialize;

use crate::error::{Error, Result};
use crate::generator::{generate, ilmt_step, GeneratingSequence, StepKind};
use crate::tournament::Tournament;

pub const MAX_EXACT_CHI_NODES: usize = 24;
pub const MAX_HERO_INDEX: u32 = 12;

/// A partition into acyclic classes. `classes[v]` is the class of `v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coloring {
    pub chi: usize,
    pub classes: Vec<usize>,
    /// True when `chi` is proven minimal.
    pub exact: bool,
}

/// `S_1` is one node; `S_i` is two copies of `S_{i-1}` on `0..m` and
/// `m..2m` with all arcs from the first to the second, and a node `2m` beaten
/// by the second copy and beating the first.
pub fn hero(i: u32) -> Result<Tournament> {
    if i == 0 || i > MAX_HERO_INDEX {
        return Err(Error::SizeCap {
            what: "hero index",
            requested: i as usize,
            cap: MAX_HERO_INDEX as usize,
        });
    }
    let mut s = Tournament::transitive(1);
    for _ in 1..i {
        let m = s.n();
        let prev = s;
        s = Tournament::from_fn(2 * m + 1, |a, b| {
            // a < b
            match (a < m, b < m, b == 2 * m) {
                (true, true, _) => prev.has_arc(a, b),
                (false, false, false) => prev.has_arc(a - m, b - m),
                (true, false, false) => true,
                (true, false, true) => false,
                (false, false, true) => true,
                (false, true, _) => unreachable!(),
            }
        });
    }
    Ok(s)
}

/// Would `v` close a 3-cycle inside the class `members`?
fn closes_cycle(out_mask: &[u32], v: usize, members: u32) -> bool {
    let outs = out_mask[v] & members;
    let ins = members & !out_mask[v] & !(1 << v);
    let mut rest = outs;
    while rest != 0 {
        let u = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if out_mask[u] & ins != 0 {
            return true;
        }
    }
    false
}

pub fn is_acyclic_class(t: &Tournament, nodes: &[usize]) -> bool {
    // a tournament is acyclic iff it has no 3-cycle
    for (i, &a) in nodes.iter().enumerate() {
        for (j, &b) in nodes.iter().enumerate().skip(i + 1) {
            for &c in &nodes[j + 1..] {
                let cyc = (t.has_arc(a, b) && t.has_arc(b, c) && t.has_arc(c, a))
                    || (t.has_arc(b, a) && t.has_arc(c, b) && t.has_arc(a, c));
                if cyc {
                    return false;
                }
            }
        }
    }
    true
}

/// Every class induces an acyclic subtournament.
pub fn is_proper_coloring(t: &Tournament, classes: &[usize]) -> bool {
    if classes.len() != t.n() {
        return false;
    }
    let k = classes.iter().copied().max().map_or(0, |m| m + 1);
    (0..k).all(|c| {
        let nodes: Vec<usize> = (0..t.n()).filter(|&v| classes[v] == c).collect();
        is_acyclic_class(t, &nodes)
    })
}

/// First-fit over nodes by descending out-degree. Not minimal in general.
pub fn greedy_coloring(t: &Tournament) -> Coloring {
    let n = t.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(t.out_degree(v)), v));
    let mut members: Vec<Vec<usize>> = Vec::new();
    let mut classes = vec![0; n];
    for v in order {
        let fits = |m: &Vec<usize>| {
            m.iter().all(|&u| {
                let (x, y) = if t.has_arc(v, u) { (v, u) } else { (u, v) };
                // no w in the class with y → w → x
                !m.iter().any(|&w| w != u && t.has_arc(y, w) && t.has_arc(w, x))
            })
        };
        let c = match members.iter().position(fits) {
            Some(c) => c,
            None => {
                members.push(Vec::new());
                members.len() - 1
            }
        };
        members[c].push(v);
        classes[v] = c;
    }
    Coloring {
        chi: members.len(),
        classes,
        exact: false,
    }
}

struct Search<'a> {
    out_mask: &'a [u32],
    n: usize,
    k: usize,
    class_of: Vec<Option<usize>>,
    members: Vec<u32>,
}

impl Search<'_> {
    fn feasible_classes(&self, v: usize) -> Vec<usize> {
        let used = self.members.iter().filter(|&&m| m != 0).count();
        let mut out: Vec<usize> = (0..used)
            .filter(|&c| !closes_cycle(self.out_mask, v, self.members[c]))
            .collect();
        if used < self.k {
            out.push(used);
        }
        out
    }

    fn solve(&mut self, colored: usize) -> bool {
        if colored == self.n {
            return true;
        }
        // most constrained node first
        let mut pick: Option<(usize, Vec<usize>)> = None;
        for v in 0..self.n {
            if self.class_of[v].is_some() {
                continue;
            }
            let f = self.feasible_classes(v);
            if f.is_empty() {
                return false;
            }
            if pick.as_ref().is_none_or(|(_, g)| f.len() < g.len()) {
                pick = Some((v, f));
            }
        }
        let (v, options) = pick.expect("an uncolored node");
        for c in options {
            self.class_of[v] = Some(c);
            self.members[c] |= 1 << v;
            if self.solve(colored + 1) {
                return true;
            }
            self.members[c] &= !(1 << v);
            self.class_of[v] = None;
        }
        false
    }
}

fn color_with(t: &Tournament, out_mask: &[u32], k: usize) -> Option<Vec<usize>> {
    let n = t.n();
    let mut s = Search {
        out_mask,
        n,
        k,
        class_of: vec![None; n],
        members: vec![0; k],
    };
    s.solve(0)
        .then(|| s.class_of.into_iter().map(|c| c.expect("colored")).collect())
}

/// Exact chromatic number by branch and bound, for up to 24 nodes.
pub fn chromatic_number(t: &Tournament) -> Result<Coloring> {
    let n = t.n();
    if n > MAX_EXACT_CHI_NODES {
        return Err(Error::SizeCap {
            what: "exact chromatic number order",
            requested: n,
            cap: MAX_EXACT_CHI_NODES,
        });
    }
    if n == 0 {
        return Ok(Coloring {
            chi: 0,
            classes: Vec::new(),
            exact: true,
        });
    }
    let out_mask: Vec<u32> = (0..n)
        .map(|v| t.out_neighbors(v).fold(0u32, |m, u| m | 1 << u))
        .collect();
    let upper = greedy_coloring(t);
    let all: Vec<usize> = (0..n).collect();
    let lower = if is_acyclic_class(t, &all) { 1 } else { 2 };
    for k in lower..upper.chi {
        if let Some(classes) = color_with(t, &out_mask, k) {
            debug_assert!(is_proper_coloring(t, &classes));
            return Ok(Coloring {
                chi: k,
                classes,
                exact: true,
            });
        }
    }
    Ok(Coloring {
        exact: true,
        ..upper
    })
}

/// Exact when within the cap, otherwise the greedy upper bound.
pub fn chromatic_upper_bound(t: &Tournament) -> Coloring {
    chromatic_number(t).unwrap_or_else(|_| greedy_coloring(t))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChiMode {
    OneStep,
    ZeroPairs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Holds,
    Violated,
    /// Only an upper bound was available and it exceeds the claimed bound.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChiCheck {
    /// Number of steps taken from `G0`.
    pub steps: usize,
    pub order: usize,
    pub chi: usize,
    pub exact: bool,
    /// The claimed value (one-step) or upper bound (zero-pairs).
    pub bound: usize,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChiStepReport {
    pub mode: ChiMode,
    pub chi0: usize,
    pub checks: Vec<ChiCheck>,
}

impl ChiStepReport {
    pub fn violated(&self) -> bool {
        self.checks.iter().any(|c| c.outcome == Outcome::Violated)
    }
}

/// One-step mode: `χ` is unchanged by a 1-step. Zero-pairs mode:
/// `χ(G_{2t}) ≤ (2^{t+1} − 1) χ(G_0)` after `2t` 0-steps, for `t = 1, 2`;
/// beyond the exact cap only a greedy coloring is compared.
pub fn verify_chi_step_theorems(g0: &Tournament, mode: ChiMode) -> Result<ChiStepReport> {
    let chi0 = chromatic_number(g0)?.chi;
    let mut checks = Vec::new();
    match mode {
        ChiMode::OneStep => {
            let (g1, _) = ilmt_step(g0, StepKind::One)?;
            let c = chromatic_number(&g1)?;
            checks.push(ChiCheck {
                steps: 1,
                order: g1.n(),
                chi: c.chi,
                exact: true,
                bound: chi0,
                outcome: if c.chi == chi0 {
                    Outcome::Holds
                } else {
                    Outcome::Violated
                },
            });
        }
        ChiMode::ZeroPairs => {
            for t in 1..=2usize {
                let steps = 2 * t;
                let (g, _) = generate(g0, &GeneratingSequence::zeros(steps), steps)?;
                let bound = ((1usize << (t + 1)) - 1) * chi0;
                let c = chromatic_upper_bound(&g);
                let outcome = match (c.chi <= bound, c.exact) {
                    (true, _) => Outcome::Holds,
                    (false, true) => Outcome::Violated,
                    (false, false) => Outcome::Inconclusive,
                };
                checks.push(ChiCheck {
                    steps,
                    order: g.n(),
                    chi: c.chi,
                    exact: c.exact,
                    bound,
                    outcome,
                });
            }
        }
    }
    Ok(ChiStepReport { mode, chi0, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::iso;

    fn brute_chi(t: &Tournament) -> usize {
        let n = t.n();
        for k in 1..=n {
            let mut classes = vec![0usize; n];
            loop {
                if is_proper_coloring(t, &classes) {
                    return k;
                }
                // next assignment in base k
                let mut i = 0;
                while i < n && classes[i] == k - 1 {
                    classes[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
                classes[i] += 1;
            }
        }
        n
    }

    #[test]
    fn heroes() {
        assert_eq!(hero(1).unwrap().n(), 1);
        assert!(iso::is_isomorphic(&hero(2).unwrap(), &fixtures::d3())
            .unwrap()
            .is_some());
        assert_eq!(hero(4).unwrap().n(), 15);
        assert!(hero(0).is_err());
        assert!(hero(MAX_HERO_INDEX + 1).is_err());
    }

    #[test]
    fn small_chi() {
        assert_eq!(chromatic_number(&fixtures::d3()).unwrap().chi, 2);
        assert_eq!(chromatic_number(&fixtures::t4()).unwrap().chi, 1);
        for g in [fixtures::figure2_g(), fixtures::figure2_h(), fixtures::figure2_t()] {
            let c = chromatic_number(&g).unwrap();
            assert_eq!(c.chi, 2);
            assert!(is_proper_coloring(&g, &c.classes));
        }
        assert_eq!(chromatic_number(&hero(3).unwrap()).unwrap().chi, 3);
        assert!(chromatic_number(&Tournament::transitive(25)).is_err());
    }

    #[test]
    fn hero_four_needs_four() {
        assert!(chromatic_number(&hero(4).unwrap()).unwrap().chi >= 4);
    }

    #[test]
    fn matches_brute_force() {
        for t in iso::tournaments_up_to_iso(6).unwrap() {
            let c = chromatic_number(&t).unwrap();
            assert_eq!(c.chi, brute_chi(&t));
            assert!(is_proper_coloring(&t, &c.classes));
        }
    }

    #[test]
    fn figure_two_increments() {
        let after = |g: Tournament| {
            let (g1, _) = ilmt_step(&g, StepKind::Zero).unwrap();
            chromatic_number(&g1).unwrap().chi
        };
        assert_eq!(after(fixtures::figure2_g()), 2);
        assert_eq!(after(fixtures::figure2_h()), 3);
        assert_eq!(after(fixtures::figure2_t()), 4);
    }

    #[test]
    fn step_theorems_on_d3() {
        let r = verify_chi_step_theorems(&fixtures::d3(), ChiMode::OneStep).unwrap();
        assert_eq!(r.checks[0].chi, 2);
        assert!(!r.violated());
        let r = verify_chi_step_theorems(&fixtures::d3(), ChiMode::ZeroPairs).unwrap();
        assert!(r.checks[0].exact);
        assert!(!r.violated());
    }

    #[test]
    fn greedy_is_proper() {
        let g = hero(5).unwrap();
        let c = greedy_coloring(&g);
        assert!(is_proper_coloring(&g, &c.classes));
        assert!(!c.exact);
    }
}
