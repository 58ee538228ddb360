//! Builtin tournaments: small named shapes and the worked figures.
//!
//! Letters map to indices in alphabetical order (`a = 0`, `b = 1`, …). For
//! the generated figures, clones follow the generator's numbering: at a step
//! from `n` nodes the clone of `x` is `x + n`.

use crate::error::{Error, Result};
use crate::props::hero;
use crate::tournament::{OrientedGraph, Tournament};

fn t(n: usize, arcs: &[(usize, usize)]) -> Tournament {
    Tournament::build(n, arcs).expect("fixture is a tournament")
}

pub fn single() -> Tournament {
    Tournament::transitive(1)
}

/// The directed edge `a → b`.
pub fn edge() -> Tournament {
    t(2, &[(0, 1)])
}

/// Directed 3-cycle `0 → 1 → 2 → 0`.
pub fn d3() -> Tournament {
    t(3, &[(0, 1), (1, 2), (2, 0)])
}

/// Linear order on three nodes with source 0 and sink 2.
pub fn t3() -> Tournament {
    Tournament::transitive(3)
}

pub fn t4() -> Tournament {
    Tournament::transitive(4)
}

/// Node 0 beats a directed 3-cycle on 1, 2, 3.
pub fn winner4() -> Tournament {
    t(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)])
}

/// A directed 3-cycle on 0, 1, 2 all beating node 3.
pub fn loser4() -> Tournament {
    t(4, &[(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)])
}

/// The 4-node tournament with score sequence (1,1,2,2): a Hamiltonian cycle
/// `0 → 1 → 2 → 3 → 0` plus chords `0 → 2`, `1 → 3`.
pub fn mixed4() -> Tournament {
    t(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)])
}

/// First iterate from `a → b` after a 1-step. Nodes `a, b, a', b'`.
pub fn figure1_g1() -> Tournament {
    t(4, &[(0, 1), (0, 3), (2, 1), (2, 0), (3, 1), (2, 3)])
}

/// Second iterate after a further 0-step. Nodes
/// `a, b, a', b', a'', b'', (a')', (b')'`.
pub fn figure1_g2() -> Tournament {
    t(
        8,
        &[
            (0, 1),
            (0, 3),
            (2, 1),
            (2, 0),
            (3, 1),
            (2, 3),
            // clone block
            (5, 4),
            (7, 4),
            (5, 6),
            (4, 6),
            (5, 7),
            (7, 6),
            // clone to parent
            (4, 0),
            (5, 1),
            (6, 2),
            (7, 3),
            // parent/clone cross arcs
            (0, 5),
            (4, 1),
            (0, 7),
            (4, 3),
            (2, 5),
            (6, 1),
            (2, 4),
            (6, 0),
            (3, 5),
            (7, 1),
            (2, 7),
            (6, 3),
        ],
    )
}

/// Oriented variant after a 1-step from `a → b`.
pub fn figure3_g1() -> OrientedGraph {
    OrientedGraph::build(4, &[(0, 1), (2, 0), (3, 1), (2, 1)]).expect("fixture")
}

/// Oriented variant after a further 0-step.
pub fn figure3_g2() -> OrientedGraph {
    OrientedGraph::build(
        8,
        &[
            (0, 1),
            (2, 0),
            (2, 1),
            (3, 1),
            (4, 2),
            (4, 0),
            (5, 2),
            (5, 0),
            (5, 1),
            (5, 3),
            (6, 2),
            (7, 3),
        ],
    )
    .expect("fixture")
}

/// Chromatic-number fixture whose 0-step keeps chi at 2 (a 3-cycle).
pub fn figure2_g() -> Tournament {
    t(3, &[(0, 2), (1, 0), (2, 1)])
}

/// Chromatic-number fixture whose 0-step raises chi by one.
pub fn figure2_h() -> Tournament {
    t(4, &[(2, 0), (0, 1), (3, 1), (3, 2), (2, 1), (0, 3)])
}

/// Chromatic-number fixture whose 0-step raises chi by two.
pub fn figure2_t() -> Tournament {
    const ARCS: [&str; 28] = [
        "ab", "ca", "da", "ea", "af", "ga", "ha", "bc", "db", "eb", "fb", "bg", "hb", "dc", "ce",
        "fc", "gc", "hc", "df", "de", "dg", "hd", "fe", "eg", "eh", "fh", "gf", "gh",
    ];
    let idx = |c: u8| (c - b'a') as usize;
    let arcs: Vec<(usize, usize)> = ARCS
        .iter()
        .map(|s| {
            let b = s.as_bytes();
            (idx(b[0]), idx(b[1]))
        })
        .collect();
    t(8, &arcs)
}

/// Resolves a builtin name: `single`, `edge`, `d3`, `t3`, `t4`, `winner`,
/// `loser`, `mixed`, `linear:k`, `hero:i`, `fig2:G|H|T`.
pub fn named(name: &str) -> Result<Tournament> {
    let unknown = || Error::UnknownFixture(name.to_string());
    let lower = name.to_ascii_lowercase();
    if let Some(rest) = lower.strip_prefix("hero:") {
        let i: u32 = rest.parse().map_err(|_| unknown())?;
        return hero(i);
    }
    if let Some(rest) = lower.strip_prefix("linear:") {
        let k: usize = rest.parse().map_err(|_| unknown())?;
        if k == 0 {
            return Err(unknown());
        }
        return Ok(Tournament::transitive(k));
    }
    Ok(match lower.as_str() {
        "single" => single(),
        "edge" => edge(),
        "d3" => d3(),
        "t3" => t3(),
        "t4" => t4(),
        "winner" => winner4(),
        "loser" => loser4(),
        "mixed" => mixed4(),
        "fig2:g" => figure2_g(),
        "fig2:h" => figure2_h(),
        "fig2:t" => figure2_t(),
        _ => return Err(unknown()),
    })
}
