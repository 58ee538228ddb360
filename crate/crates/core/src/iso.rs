//! Brute-force isomorphism for small tournaments.
//!
//! Backtracking over node bijections, pruned by out-degree and by arc
//! consistency with the nodes already mapped. Only meant for `n <= 10`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::tournament::Tournament;

pub const MAX_ISO_NODES: usize = 10;

/// Largest order for which [`all_tournaments`] enumerates every labelling.
pub const MAX_ENUM_NODES: usize = 6;

fn check_cap(n: usize) -> Result<()> {
    if n > MAX_ISO_NODES {
        return Err(Error::SizeCap {
            what: "isomorphism search order",
            requested: n,
            cap: MAX_ISO_NODES,
        });
    }
    Ok(())
}

struct Matcher<'a> {
    a: &'a Tournament,
    b: &'a Tournament,
    map: Vec<usize>,
    used: Vec<bool>,
}

impl Matcher<'_> {
    /// Visits every isomorphism; `f` returns false to stop.
    fn search(&mut self, i: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let n = self.a.n();
        if i == n {
            return f(&self.map);
        }
        for cand in 0..n {
            if self.used[cand] {
                continue;
            }
            if !self.consistent_at(i, cand) {
                continue;
            }
            self.used[cand] = true;
            self.map[i] = cand;
            let go_on = self.search(i + 1, f);
            self.used[cand] = false;
            if !go_on {
                return false;
            }
        }
        true
    }

    fn consistent_at(&self, i: usize, cand: usize) -> bool {
        if self.a.out_degree(i) != self.b.out_degree(cand) {
            return false;
        }
        (0..i).all(|j| self.a.has_arc(i, j) == self.b.has_arc(cand, self.map[j]))
    }
}

fn matcher<'a>(a: &'a Tournament, b: &'a Tournament) -> Matcher<'a> {
    let n = a.n();
    Matcher {
        a,
        b,
        map: vec![usize::MAX; n],
        used: vec![false; n],
    }
}

/// Returns a witness `perm` with `a(i,j) ⇔ b(perm[i], perm[j])`, if any.
pub fn is_isomorphic(a: &Tournament, b: &Tournament) -> Result<Option<Vec<usize>>> {
    check_cap(a.n().max(b.n()))?;
    if a.n() != b.n() || a.degree_profile() != b.degree_profile() {
        return Ok(None);
    }
    let mut found = None;
    let mut m = matcher(a, b);
    m.search(0, &mut |p| {
        found = Some(p.to_vec());
        false
    });
    Ok(found)
}

pub fn automorphism_count(t: &Tournament) -> Result<u64> {
    check_cap(t.n())?;
    let mut count = 0u64;
    matcher(t, t).search(0, &mut |_| {
        count += 1;
        true
    });
    Ok(count)
}

/// Pair code of `t` under the ordering `order` (position → node).
fn code_under(t: &Tournament, order: &[usize]) -> u64 {
    let mut code = 0u64;
    let mut bit = 0;
    for k in 0..order.len() {
        for l in k + 1..order.len() {
            if t.has_arc(order[k], order[l]) {
                code |= 1 << bit;
            }
            bit += 1;
        }
    }
    code
}

/// An isomorphism invariant that separates non-isomorphic tournaments.
///
/// The minimum pair code over all orderings that list nodes by ascending
/// out-degree. Equal codes (at equal order) mean isomorphic.
pub fn canonical_code(t: &Tournament) -> Result<u64> {
    check_cap(t.n())?;
    let n = t.n();
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for u in 0..n {
        groups.entry(t.out_degree(u)).or_default().push(u);
    }
    let groups: Vec<Vec<usize>> = groups.into_values().collect();
    let mut order = Vec::with_capacity(n);
    let mut best = u64::MAX;
    fn rec(
        t: &Tournament,
        groups: &[Vec<usize>],
        gi: usize,
        remaining: &mut Vec<usize>,
        order: &mut Vec<usize>,
        best: &mut u64,
    ) {
        if remaining.is_empty() {
            if gi + 1 >= groups.len() {
                *best = (*best).min(code_under(t, order));
                return;
            }
            let mut next = groups[gi + 1].clone();
            rec(t, groups, gi + 1, &mut next, order, best);
            return;
        }
        for k in 0..remaining.len() {
            let u = remaining.remove(k);
            order.push(u);
            rec(t, groups, gi, remaining, order, best);
            order.pop();
            remaining.insert(k, u);
        }
    }
    if n == 0 {
        return Ok(0);
    }
    let mut first = groups[0].clone();
    rec(t, &groups, 0, &mut first, &mut order, &mut best);
    Ok(best)
}

/// Every labelled tournament on `n` nodes (`2^C(n,2)` of them).
pub fn all_tournaments(n: usize) -> Result<Vec<Tournament>> {
    if n > MAX_ENUM_NODES {
        return Err(Error::SizeCap {
            what: "labelled tournament enumeration order",
            requested: n,
            cap: MAX_ENUM_NODES,
        });
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    Ok((0u64..1 << pairs.len())
        .map(|mask| {
            Tournament::from_fn(n, |i, j| {
                let k = pairs.iter().position(|&p| p == (i, j)).unwrap();
                mask >> k & 1 == 1
            })
        })
        .collect())
}

/// One representative per isomorphism class, ordered by canonical code.
pub fn tournaments_up_to_iso(n: usize) -> Result<Vec<Tournament>> {
    let mut classes: BTreeMap<u64, Tournament> = BTreeMap::new();
    for t in all_tournaments(n)? {
        let code = canonical_code(&t)?;
        classes.entry(code).or_insert(t);
    }
    Ok(classes.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn all_perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = vec![];
        for p in all_perms(n - 1) {
            for k in 0..=p.len() {
                let mut q = p.clone();
                q.insert(k, n - 1);
                out.push(q);
            }
        }
        out
    }

    fn aut_by_enumeration(t: &Tournament) -> u64 {
        all_perms(t.n())
            .into_iter()
            .filter(|p| t.arcs().iter().all(|&(u, v)| t.has_arc(p[u], p[v])))
            .count() as u64
    }

    #[test]
    fn d3_is_self_reverse() {
        let d3 = fixtures::d3();
        let w = is_isomorphic(&d3, &d3.reverse()).unwrap().unwrap();
        let r = d3.reverse();
        for (u, v) in d3.arcs() {
            assert!(r.has_arc(w[u], w[v]));
        }
        assert!(is_isomorphic(&d3, &fixtures::t3()).unwrap().is_none());
        let id = is_isomorphic(&fixtures::t3(), &fixtures::t3()).unwrap().unwrap();
        assert_eq!(id, vec![0, 1, 2]);
    }

    #[test]
    fn automorphism_counts_match_enumeration() {
        assert_eq!(automorphism_count(&fixtures::t3()).unwrap(), 1);
        assert_eq!(automorphism_count(&fixtures::d3()).unwrap(), 3);
        assert_eq!(automorphism_count(&fixtures::winner4()).unwrap(), 3);
        for t in all_tournaments(4).unwrap() {
            assert_eq!(automorphism_count(&t).unwrap(), aut_by_enumeration(&t));
        }
    }

    #[test]
    fn labelled_four_node_counts_sum_to_64() {
        // 4!/|Aut| labelled copies per type
        let total: u64 = [
            fixtures::t4(),
            fixtures::winner4(),
            fixtures::loser4(),
            fixtures::mixed4(),
        ]
        .iter()
        .map(|t| 24 / automorphism_count(t).unwrap())
        .sum();
        assert_eq!(total, 64);
    }

    #[test]
    fn class_counts() {
        let counts: Vec<usize> = (1..=6)
            .map(|n| tournaments_up_to_iso(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 12, 56]);
    }

    #[test]
    fn size_cap() {
        let big = Tournament::transitive(11);
        assert!(matches!(
            automorphism_count(&big),
            Err(Error::SizeCap { .. })
        ));
        assert!(all_tournaments(7).is_err());
    }
}
