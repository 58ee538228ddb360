use rayon::prelude::*;

use crate::bits::{self, BitMatrix};
use crate::tournament::Tournament;

/// Breadth-first layers over bit rows. Returns the eccentricity of `start`,
/// or `None` if some node is unreachable.
fn eccentricity(adj: &BitMatrix, start: usize) -> Option<usize> {
    let n = adj.n();
    let stride = adj.stride();
    let mut seen = vec![0u64; stride];
    let mut frontier = vec![0u64; stride];
    bits::set(&mut seen, start);
    bits::set(&mut frontier, start);
    let mut reached = 1;
    let mut depth = 0;
    while reached < n {
        let mut next = vec![0u64; stride];
        for u in bits::ones(&frontier) {
            for (w, r) in next.iter_mut().zip(adj.row(u)) {
                *w |= r;
            }
        }
        for (w, s) in next.iter_mut().zip(&seen) {
            *w &= !s;
        }
        let added = bits::count(&next);
        if added == 0 {
            return None;
        }
        for (s, w) in seen.iter_mut().zip(&next) {
            *s |= w;
        }
        reached += added;
        frontier = next;
        depth += 1;
    }
    Some(depth)
}

fn covers_all(adj: &BitMatrix, start: usize) -> bool {
    eccentricity(adj, start).is_some()
}

/// One forward and one backward sweep from node 0.
pub fn is_strong(t: &Tournament) -> bool {
    if t.n() == 0 {
        return false;
    }
    covers_all(t.matrix(), 0) && covers_all(&t.matrix().transpose(), 0)
}

/// Largest directed distance, or `None` when the tournament is not strong.
pub fn diameter(t: &Tournament) -> Option<usize> {
    let n = t.n();
    if n == 0 {
        return None;
    }
    (0..n)
        .into_par_iter()
        .map(|u| eccentricity(t.matrix(), u))
        .try_reduce(|| 0, |a, b| Some(a.max(b)))
}
