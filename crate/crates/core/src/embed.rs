//! Embedding an arbitrary tournament into an iterate after enough 0-steps.
//!
//! The image starts on nodes `0..n` of the base under the identity. Target
//! nodes are processed in ascending order, one per 0-step. When `u` is
//! processed, `A` is the set of unprocessed `v` whose pair with `u` is
//! oriented differently in the host than in the target. The images of `A`
//! and `u` move to their clones. A 0-step reverses exactly the pairs inside
//! the cloned set and keeps every other pair, so all pairs at `u` are right
//! afterwards and no processed pair is touched again. 1-steps keep parents
//! unchanged, so the image is carried over as is.

use rayon::prelude::*;
use serde::Serialize;

use crate::edgelist::{serialize_tournament, GraphJson};
use crate::error::{Error, Result};
use crate::generator::{GeneratingSequence, Generator, StepKind};
use crate::iso;
use crate::tournament::Tournament;

/// One 0-step of the construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbedStep {
    /// Position in the generating sequence (1-based).
    pub t: usize,
    /// Target node processed at this step.
    pub node: usize,
    /// Target nodes whose image was replaced by its clone, besides `node`.
    pub flipped: Vec<usize>,
    /// Image of every target node after the step.
    pub image: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EmbeddingMap {
    #[serde(serialize_with = "serialize_tournament")]
    pub target: Tournament,
    #[serde(skip)]
    pub host: Tournament,
    pub host_order: usize,
    /// Steps taken to reach the host.
    pub steps: usize,
    pub zeros_used: usize,
    pub image: Vec<usize>,
    pub trace: Vec<EmbedStep>,
}

fn check_sizes(g0: &Tournament, h: &Tournament) -> Result<()> {
    if h.n() == 0 {
        return Err(Error::Precondition("empty target".into()));
    }
    if h.n() > g0.n() {
        return Err(Error::Precondition(format!(
            "target has {} nodes but the base only {}",
            h.n(),
            g0.n()
        )));
    }
    Ok(())
}

/// Identity map when the target already sits on `0..n` of the base;
/// otherwise the full construction.
pub fn embed(g0: &Tournament, s: &GeneratingSequence, h: &Tournament) -> Result<EmbeddingMap> {
    check_sizes(g0, h)?;
    let n = h.n();
    let identity: Vec<usize> = (0..n).collect();
    if maps_arcs(g0, h, &identity) {
        return Ok(EmbeddingMap {
            target: h.clone(),
            host: g0.clone(),
            host_order: g0.n(),
            steps: 0,
            zeros_used: 0,
            image: identity,
            trace: Vec::new(),
        });
    }
    embed_full(g0, s, h)
}

/// The construction, always consuming exactly `|V(H)|` zeros.
pub fn embed_full(g0: &Tournament, s: &GeneratingSequence, h: &Tournament) -> Result<EmbeddingMap> {
    embed_with(g0, s, h, &Generator::from_env())
}

pub fn embed_with(
    g0: &Tournament,
    s: &GeneratingSequence,
    h: &Tournament,
    generator: &Generator,
) -> Result<EmbeddingMap> {
    check_sizes(g0, h)?;
    let n = h.n();
    let r = s.nth_zero(n).ok_or_else(|| {
        Error::Precondition(format!(
            "sequence `{s}` has {} zeros, {n} needed",
            s.support().len()
        ))
    })?;
    // fail on the cap before doing any work
    let mut order = g0.n();
    for _ in 0..r {
        order = order
            .checked_mul(2)
            .filter(|&m| m <= generator.max_nodes())
            .ok_or(Error::SizeCap {
                what: "generated node count",
                requested: order.saturating_mul(2),
                cap: generator.max_nodes(),
            })?;
    }

    let mut g = g0.clone();
    let mut image: Vec<usize> = (0..n).collect();
    let mut trace = Vec::with_capacity(n);
    let mut next = 0;
    for t in 1..=r {
        let kind = s.kind(t);
        if kind == StepKind::Zero {
            let u = next;
            let flipped: Vec<usize> = (u + 1..n)
                .filter(|&v| g.has_arc(image[u], image[v]) != h.has_arc(u, v))
                .collect();
            let (g_next, map) = generator.step(&g, kind)?;
            for &x in flipped.iter().chain(std::iter::once(&u)) {
                image[x] = map.clone_of(image[x]);
            }
            g = g_next;
            next += 1;
            trace.push(EmbedStep {
                t,
                node: u,
                flipped,
                image: image.clone(),
            });
        } else {
            g = generator.step(&g, kind)?.0;
        }
    }
    let e = EmbeddingMap {
        target: h.clone(),
        host_order: g.n(),
        host: g,
        steps: r,
        zeros_used: n,
        image,
        trace,
    };
    if !verify_embedding(&e) {
        return Err(Error::Internal(format!(
            "embedding of {:?} failed verification",
            GraphJson::from(h)
        )));
    }
    Ok(e)
}

fn maps_arcs(host: &Tournament, target: &Tournament, image: &[usize]) -> bool {
    if image.len() != target.n() || image.iter().any(|&x| x >= host.n()) {
        return false;
    }
    let mut seen = vec![false; host.n()];
    for &x in image {
        if std::mem::replace(&mut seen[x], true) {
            return false;
        }
    }
    target
        .arcs()
        .iter()
        .all(|&(x, y)| host.has_arc(image[x], image[y]))
}

/// Injective, and every target arc lands on a host arc.
pub fn verify_embedding(e: &EmbeddingMap) -> bool {
    maps_arcs(&e.host, &e.target, &e.image)
}

/// Checks an arbitrary map, outside any construction.
pub fn verify_map(host: &Tournament, target: &Tournament, image: &[usize]) -> bool {
    maps_arcs(host, target, image)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepEntry {
    pub target: GraphJson,
    pub steps: usize,
    pub zeros_used: usize,
    pub host_order: usize,
    pub image: Vec<usize>,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub order: usize,
    pub base_order: usize,
    pub entries: Vec<SweepEntry>,
}

impl SweepReport {
    pub fn all_verified(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.verified && e.zeros_used == self.order)
    }
}

pub const MAX_SWEEP_ORDER: usize = 4;

/// Embeds one representative of every isomorphism class on `n` nodes, using
/// the all-zeros sequence.
pub fn universality_sweep(g0: &Tournament, n: usize) -> Result<SweepReport> {
    if n == 0 || n > MAX_SWEEP_ORDER {
        return Err(Error::Precondition(format!(
            "sweep order must be in 1..={MAX_SWEEP_ORDER}, got {n}"
        )));
    }
    if n > g0.n() {
        return Err(Error::Precondition(format!(
            "sweep order {n} exceeds base order {}",
            g0.n()
        )));
    }
    let s = GeneratingSequence::zeros(n);
    let entries = iso::tournaments_up_to_iso(n)?
        .par_iter()
        .map(|h| {
            let e = embed_full(g0, &s, h)?;
            Ok(SweepEntry {
                target: GraphJson::from(h),
                steps: e.steps,
                zeros_used: e.zeros_used,
                host_order: e.host_order,
                verified: verify_embedding(&e),
                image: e.image,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepReport {
        order: n,
        base_order: g0.n(),
        entries,
    })
}
