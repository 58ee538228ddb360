//! Exact 3- and 4-node motif counts, the 3-cycle recurrence, and densities.

mod markov;
mod trace;

pub use markov::{markov_model, MarkovModel, PRINTED_TRANSITION};
pub use trace::{
    distinguish_sequences, distinguish_sequences_exact, quasirandom_trace, quasirandom_trace_with,
    Divergence, DivergenceWitness, QuasirandomTrace, TraceRow,
};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::bits;
use crate::error::{Error, Result};
use crate::generator::{GeneratingSequence, StepKind};
use crate::iso;
use crate::rational::{self, Ratio};
use crate::tournament::Tournament;

/// Default order cap for [`census4`].
pub const CENSUS4_MAX_NODES: usize = 1500;

/// Order cap for [`census4_enumerate`] and the 5/6-node density path.
pub const ENUMERATION_MAX_NODES: usize = 64;

pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc.try_into().expect("binomial fits in u64")
}

pub fn binom_big(n: &BigUint, k: u32) -> BigUint {
    if *n < BigUint::from(k) {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - BigUint::from(i);
    }
    let mut fact = BigUint::one();
    for i in 1..=k {
        fact *= BigUint::from(i);
    }
    acc / fact
}

/// Counts of 3-cycles (`a`) and transitive triples (`b`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Census3 {
    pub a: u64,
    pub b: u64,
    pub n: u64,
}

impl Census3 {
    fn from_cycles(n: usize, a: u64) -> Self {
        let total = binom(n as u64, 3);
        Census3 {
            a,
            b: total - a,
            n: n as u64,
        }
    }

    pub fn d3_proportion(&self) -> Option<Ratio> {
        let total = self.a + self.b;
        (total > 0).then(|| rational::ratio(self.a, total))
    }
}

/// 3-cycle count as one third of `Σ_{(u,v)} |N+(v) ∩ N-(u)|`.
pub fn census3(t: &Tournament) -> Census3 {
    let n = t.n();
    let closing: u64 = (0..n)
        .into_par_iter()
        .map(|u| {
            let into_u = t.in_row(u);
            t.out_neighbors(u)
                .map(|v| bits::and_count(t.out_row(v), &into_u) as u64)
                .sum::<u64>()
        })
        .sum();
    debug_assert_eq!(closing % 3, 0);
    Census3::from_cycles(n, closing / 3)
}

pub use self::census3 as census3_bruteforce;

/// Triple-by-triple enumeration; the reference for [`census3`].
pub fn census3_naive(t: &Tournament) -> Census3 {
    let n = t.n();
    let mut a = 0;
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                let forward = t.has_arc(x, y) && t.has_arc(y, z) && t.has_arc(z, x);
                let backward = t.has_arc(y, x) && t.has_arc(z, y) && t.has_arc(x, z);
                if forward || backward {
                    a += 1;
                }
            }
        }
    }
    Census3::from_cycles(n, a)
}

/// One row of the exact 3-cycle recurrence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census3Exact {
    pub t: usize,
    #[serde(serialize_with = "rational::serialize_biguint")]
    pub n: BigUint,
    #[serde(serialize_with = "rational::serialize_biguint")]
    pub a: BigUint,
    #[serde(serialize_with = "rational::serialize_biguint")]
    pub b: BigUint,
}

impl Census3Exact {
    pub fn d3_proportion(&self) -> Ratio {
        rational::ratio_u(&self.a, &(&self.a + &self.b))
    }
}

/// Rows `t = 0..=steps` of `a_t = 2^{s(t)+2} a_{t-1} + (1 - s(t)) C(n_{t-1} + 1, 3)`
/// with `b_t = C(n_t, 3) - a_t`.
pub fn census3_recurrence(
    n0: u64,
    a0: u64,
    s: &GeneratingSequence,
    steps: usize,
) -> Result<Vec<Census3Exact>> {
    if steps > s.len() {
        return Err(Error::SequenceTooShort {
            requested: steps,
            available: s.len(),
        });
    }
    if a0 > binom(n0, 3) {
        return Err(Error::Precondition(format!(
            "{a0} 3-cycles exceed C({n0},3)"
        )));
    }
    let mut n = BigUint::from(n0);
    let mut a = BigUint::from(a0);
    let mut rows = Vec::with_capacity(steps + 1);
    let row = |t, n: &BigUint, a: &BigUint| Census3Exact {
        t,
        n: n.clone(),
        a: a.clone(),
        b: binom_big(n, 3) - a,
    };
    rows.push(row(0, &n, &a));
    for t in 1..=steps {
        a = match s.kind(t) {
            StepKind::One => a << 3,
            StepKind::Zero => (a << 2) + binom_big(&(&n + 1u32), 3),
        };
        n <<= 1;
        rows.push(row(t, &n, &a));
    }
    Ok(rows)
}

/// Regimes for the limiting proportion of 3-cycles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LimitRegime {
    AllOnes,
    InfiniteSupport,
}

/// Limit of `a_t / C(n_t, 3)` as `t → ∞`.
pub fn d3_proportion_limit(n0: u64, a0: u64, regime: LimitRegime) -> Result<Ratio> {
    if n0 < 3 {
        return Err(Error::Precondition(format!("n0 = {n0} < 3")));
    }
    Ok(match regime {
        LimitRegime::InfiniteSupport => rational::ratio(1, 4),
        LimitRegime::AllOnes => {
            let mu = rational::ratio(a0, binom(n0, 3));
            rational::ratio(n0 * (n0 - 1) * (n0 - 2), n0 * n0 * n0) * mu
        }
    })
}

/// The four tournaments on four nodes, in the order used for proportion vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FourType {
    /// Linear order, scores (0,1,2,3).
    Transitive,
    /// A node beating a 3-cycle, scores (1,1,1,3).
    Winner,
    /// A 3-cycle beating a node, scores (0,2,2,2).
    Loser,
    /// Scores (1,1,2,2).
    Mixed,
}

impl FourType {
    pub const ALL: [FourType; 4] = [
        FourType::Transitive,
        FourType::Winner,
        FourType::Loser,
        FourType::Mixed,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            FourType::Transitive => "T4",
            FourType::Winner => "Winner",
            FourType::Loser => "Loser",
            FourType::Mixed => "Mixed",
        }
    }

    /// Classifies by the sorted score sequence.
    pub fn from_scores(mut scores: [u8; 4]) -> FourType {
        scores.sort_unstable();
        match scores {
            [0, 1, 2, 3] => FourType::Transitive,
            [1, 1, 1, 3] => FourType::Winner,
            [0, 2, 2, 2] => FourType::Loser,
            [1, 1, 2, 2] => FourType::Mixed,
            other => panic!("{other:?} is not a 4-node score sequence"),
        }
    }

    pub fn of_subset(t: &Tournament, nodes: [usize; 4]) -> FourType {
        let mut scores = [0u8; 4];
        for i in 0..4 {
            for j in 0..4 {
                if i != j && t.has_arc(nodes[i], nodes[j]) {
                    scores[i] += 1;
                }
            }
        }
        Self::from_scores(scores)
    }

    pub fn of(t: &Tournament) -> Option<FourType> {
        (t.n() == 4).then(|| Self::of_subset(t, [0, 1, 2, 3]))
    }
}

/// Counts of the four 4-node types, indexed by [`FourType::index`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Census4 {
    pub counts: [u64; 4],
    pub n: u64,
}

impl Census4 {
    pub fn get(&self, ty: FourType) -> u64 {
        self.counts[ty.index()]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Proportion vector `(p, w, l, m)`; `None` below four nodes.
    pub fn proportions(&self) -> Option<Vec<Ratio>> {
        let total = binom(self.n, 4);
        (total > 0).then(|| {
            self.counts
                .iter()
                .map(|&c| rational::ratio(c, total))
                .collect()
        })
    }
}

fn check_order(what: &'static str, n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::SizeCap {
            what,
            requested: n,
            cap,
        });
    }
    Ok(())
}

pub fn census4(t: &Tournament) -> Result<Census4> {
    census4_with_cap(t, CENSUS4_MAX_NODES)
}

/// 4-node census from neighbourhood counts.
///
/// A 4-set has a node of score 3 exactly when it is `T4` or `Winner`; the
/// transitive ones are counted through common out-neighbourhoods, so
///
/// * `T4 = Σ_v Σ_{u ∈ N+(v)} C(|N+(u) ∩ N+(v)|, 2)`
/// * `Winner = Σ_v C(d+(v), 3) − T4`, `Loser = Σ_v C(d−(v), 3) − T4`
/// * `Mixed` is the remainder.
///
/// `T4` is also recounted through in-neighbourhoods as a consistency check.
pub fn census4_with_cap(t: &Tournament, cap: usize) -> Result<Census4> {
    let n = t.n();
    check_order("census4 order", n, cap)?;
    let (by_source, by_sink, top, bottom) = (0..n)
        .into_par_iter()
        .map(|v| {
            let out_v = t.out_row(v);
            let in_v = t.in_row(v);
            let by_source: u64 = bits::ones(out_v)
                .map(|u| binom(bits::and_count(t.out_row(u), out_v) as u64, 2))
                .sum();
            // transitive triples inside N-(v): each has one source among its own
            let by_sink: u64 = bits::ones(&in_v)
                .map(|u| binom(bits::and_count(t.out_row(u), &in_v) as u64, 2))
                .sum();
            (
                by_source,
                by_sink,
                binom(t.out_degree(v) as u64, 3),
                binom(t.in_degree(v) as u64, 3),
            )
        })
        .reduce(
            || (0, 0, 0, 0),
            |x, y| (x.0 + y.0, x.1 + y.1, x.2 + y.2, x.3 + y.3),
        );
    if by_source != by_sink {
        return Err(Error::Internal(format!(
            "transitive 4-sets counted {by_source} by source but {by_sink} by sink"
        )));
    }
    let transitive = by_source;
    let winner = top - transitive;
    let loser = bottom - transitive;
    let mixed = binom(n as u64, 4) - transitive - winner - loser;
    Ok(Census4 {
        counts: [transitive, winner, loser, mixed],
        n: n as u64,
    })
}

/// Classifies every 4-subset directly; the reference for [`census4`].
pub fn census4_enumerate(t: &Tournament) -> Result<Census4> {
    let n = t.n();
    check_order("census4 enumeration order", n, ENUMERATION_MAX_NODES)?;
    let counts = (0..n)
        .into_par_iter()
        .map(|a| {
            let mut c = [0u64; 4];
            for b in a + 1..n {
                for x in b + 1..n {
                    for y in x + 1..n {
                        c[FourType::of_subset(t, [a, b, x, y]).index()] += 1;
                    }
                }
            }
            c
        })
        .reduce(
            || [0; 4],
            |mut acc, c| {
                for i in 0..4 {
                    acc[i] += c[i];
                }
                acc
            },
        );
    Ok(Census4 {
        counts,
        n: n as u64,
    })
}

/// Automorphism-corrected density of a motif.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityReport {
    pub motif: String,
    #[serde(serialize_with = "rational::serialize")]
    pub d_star: Ratio,
    pub automorphisms: u64,
    pub copies: u64,
    pub motif_order: usize,
    pub host_order: usize,
}

pub const MAX_DENSITY_MOTIF: usize = 6;

fn motif_name(h: &Tournament) -> String {
    match h.n() {
        3 => if census3_naive(h).a == 1 { "D3" } else { "T3" }.to_string(),
        4 => FourType::of(h).map(|ty| ty.name()).unwrap_or("?").to_string(),
        k => format!("order-{k}"),
    }
}

/// Subsets of `g` inducing a copy of `h`, by direct classification.
fn count_copies_enumerated(g: &Tournament, h: &Tournament) -> Result<u64> {
    let k = h.n();
    check_order("density host order", g.n(), ENUMERATION_MAX_NODES)?;
    let target_code = iso::canonical_code(h)?;
    let target_profile = h.degree_profile();
    let n = g.n();
    let mut count = 0u64;
    let mut subset: Vec<usize> = (0..k).collect();
    if k > n {
        return Ok(0);
    }
    loop {
        let sub = g.induced(&subset)?;
        if sub.degree_profile() == target_profile && iso::canonical_code(&sub)? == target_code {
            count += 1;
        }
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(count);
            }
            i -= 1;
            if subset[i] < n - k + i {
                subset[i] += 1;
                for j in i + 1..k {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// `d*_G(H) = |Aut(H)| n(H,G) / (|V(H)|! C(|V(G)|, |V(H)|))`.
pub fn density(g: &Tournament, h: &Tournament) -> Result<DensityReport> {
    let k = h.n();
    if k == 0 || k > MAX_DENSITY_MOTIF {
        return Err(Error::SizeCap {
            what: "density motif order",
            requested: k,
            cap: MAX_DENSITY_MOTIF,
        });
    }
    let n = g.n();
    if n < k {
        return Err(Error::Precondition(format!(
            "host has {n} nodes, motif has {k}"
        )));
    }
    let copies = match k {
        1 => n as u64,
        2 => binom(n as u64, 2),
        3 => {
            let c = census3(g);
            if census3_naive(h).a == 1 {
                c.a
            } else {
                c.b
            }
        }
        4 => census4(g)?.get(FourType::of(h).expect("order 4")),
        _ => count_copies_enumerated(g, h)?,
    };
    let aut = iso::automorphism_count(h)?;
    let factorial: u64 = (1..=k as u64).product();
    let d_star = rational::ratio(
        BigUint::from(aut) * BigUint::from(copies),
        BigUint::from(factorial) * BigUint::from(binom(n as u64, k as u64)),
    );
    debug_assert!(d_star <= rational::one());
    Ok(DensityReport {
        motif: motif_name(h),
        d_star,
        automorphisms: aut,
        copies,
        motif_order: k,
        host_order: n,
    })
}

/// `d*(T4)` from a census: `p / 24` with `p` the transitive proportion.
pub fn transitive4_density(c: &Census4) -> Option<Ratio> {
    let total = binom(c.n, 4);
    (total > 0).then(|| rational::ratio(c.counts[0], total * 24))
}

pub fn ratio_to_f64(r: &Ratio) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::generator::generate;

    fn seq(s: &str) -> GeneratingSequence {
        s.parse().unwrap()
    }

    #[test]
    fn census3_small() {
        assert_eq!(census3(&fixtures::d3()), Census3 { a: 1, b: 0, n: 3 });
        assert_eq!(census3(&fixtures::t3()), Census3 { a: 0, b: 1, n: 3 });
        let g2 = fixtures::figure1_g2();
        let c = census3(&g2);
        assert_eq!(c.a + c.b, 56);
        assert_eq!(c, census3_naive(&g2));
    }

    #[test]
    fn recurrence_examples() {
        let one_step = census3_recurrence(3, 1, &seq("1"), 1).unwrap();
        assert_eq!(one_step[1].a, BigUint::from(8u32));
        let zero_step = census3_recurrence(3, 1, &seq("0"), 1).unwrap();
        assert_eq!(zero_step[1].a, BigUint::from(8u32));
        assert_eq!(zero_step[1].b, BigUint::from(12u32));
        // same value through the case split 5a + b + C(n, 2)
        let (a, b) = (1, 0);
        assert_eq!(5 * a + b + binom(3, 2), 8);
        let (g1, _) = generate(&fixtures::d3(), &seq("0"), 1).unwrap();
        assert_eq!(census3(&g1), Census3 { a: 8, b: 12, n: 6 });
        let none = census3_recurrence(5, 2, &seq(""), 0).unwrap();
        assert_eq!(none.len(), 1);
        assert_eq!(none[0].b, BigUint::from(8u32));
        assert!(census3_recurrence(3, 2, &seq("0"), 1).is_err());
        assert!(census3_recurrence(3, 1, &seq("0"), 2).is_err());
    }

    #[test]
    fn limits() {
        use LimitRegime::*;
        assert_eq!(d3_proportion_limit(3, 1, AllOnes).unwrap(), rational::ratio(2, 9));
        assert_eq!(d3_proportion_limit(3, 0, AllOnes).unwrap(), rational::zero());
        assert_eq!(
            d3_proportion_limit(7, 3, InfiniteSupport).unwrap(),
            rational::ratio(1, 4)
        );
        assert!(d3_proportion_limit(2, 0, AllOnes).is_err());
    }

    #[test]
    fn census4_small() {
        assert_eq!(census4(&fixtures::t4()).unwrap().counts, [1, 0, 0, 0]);
        assert_eq!(census4(&fixtures::winner4()).unwrap().counts, [0, 1, 0, 0]);
        assert_eq!(census4(&fixtures::loser4()).unwrap().counts, [0, 0, 1, 0]);
        assert_eq!(census4(&fixtures::mixed4()).unwrap().counts, [0, 0, 0, 1]);
        assert_eq!(
            census4(&Tournament::transitive(5)).unwrap().counts,
            [5, 0, 0, 0]
        );
        assert_eq!(census4(&fixtures::d3()).unwrap().total(), 0);
        assert!(census4_with_cap(&Tournament::transitive(10), 9).is_err());
    }

    #[test]
    fn classifier_covers_all_64_labellings() {
        let mut per_type = [0u32; 4];
        for t in iso::all_tournaments(4).unwrap() {
            let ty = FourType::of(&t).unwrap();
            let reps = [
                fixtures::t4(),
                fixtures::winner4(),
                fixtures::loser4(),
                fixtures::mixed4(),
            ];
            assert!(iso::is_isomorphic(&t, &reps[ty.index()]).unwrap().is_some());
            per_type[ty.index()] += 1;
        }
        assert_eq!(per_type, [24, 8, 8, 24]);
    }

    #[test]
    fn densities() {
        let t4 = fixtures::t4();
        assert_eq!(density(&t4, &t4).unwrap().d_star, rational::ratio(1, 24));
        let d3 = fixtures::d3();
        assert_eq!(density(&d3, &d3).unwrap().d_star, rational::ratio(1, 2));
        assert_eq!(density(&d3, &fixtures::t3()).unwrap().d_star, rational::zero());
        let big = Tournament::transitive(7);
        assert!(matches!(density(&big, &big), Err(Error::SizeCap { .. })));
        assert!(density(&d3, &t4).is_err());
    }

    #[test]
    fn density_five_node_path() {
        // every 5-subset of a linear order is a linear order; |Aut| = 1
        let t5 = Tournament::transitive(5);
        let host = Tournament::transitive(8);
        let r = density(&host, &t5).unwrap();
        assert_eq!(r.copies, binom(8, 5));
        assert_eq!(r.d_star, rational::ratio(1, 120));
    }
}
