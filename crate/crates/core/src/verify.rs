//! Property batteries run by `ilmt verify`.
//!
//! Every check records what was claimed, on which instance, the expected and
//! observed values, and whether the relation held. Equalities are exact;
//! tolerances are stated in the check itself.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::census::{self, FourType, LimitRegime};
use crate::embed;
use crate::error::{Error, Result};
use crate::fixtures;
use crate::generator::{generate, ilmt_step, GeneratingSequence, Generator, StepKind};
use crate::iso;
use crate::props::{self, ChiMode, Direction};
use crate::pursuit;
use crate::rational::{self, Ratio};
use crate::tournament::Tournament;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Motifs,
    Quasirandom,
    Diameter,
    Connectivity,
    Domination,
    Cops,
    Coloring,
    Universality,
    Distinguish,
    All,
}

impl Suite {
    pub const EACH: [Suite; 9] = [
        Suite::Motifs,
        Suite::Quasirandom,
        Suite::Diameter,
        Suite::Connectivity,
        Suite::Domination,
        Suite::Cops,
        Suite::Coloring,
        Suite::Universality,
        Suite::Distinguish,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Motifs => "motifs",
            Suite::Quasirandom => "quasirandom",
            Suite::Diameter => "diameter",
            Suite::Connectivity => "connectivity",
            Suite::Domination => "domination",
            Suite::Cops => "cops",
            Suite::Coloring => "coloring",
            Suite::Universality => "universality",
            Suite::Distinguish => "distinguish",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .iter()
            .chain(std::iter::once(&Suite::All))
            .copied()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub claim: String,
    /// Short statement of the property being checked.
    pub anchor: String,
    pub instance: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
    pub elapsed_ms: u64,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

struct Outcome {
    expected: String,
    observed: String,
    pass: bool,
}

fn outcome(expected: impl fmt::Display, observed: impl fmt::Display, pass: bool) -> Outcome {
    Outcome {
        expected: expected.to_string(),
        observed: observed.to_string(),
        pass,
    }
}

fn equal<T: PartialEq + fmt::Debug>(expected: T, observed: T) -> Outcome {
    let pass = expected == observed;
    outcome(format!("{expected:?}"), format!("{observed:?}"), pass)
}

#[derive(Default)]
struct Battery {
    checks: Vec<Check>,
}

impl Battery {
    fn run(
        &mut self,
        claim: &str,
        anchor: &str,
        instance: impl Into<String>,
        f: impl FnOnce() -> Result<Outcome>,
    ) {
        let start = Instant::now();
        let o = f().unwrap_or_else(|e| outcome("no error", format!("error: {e}"), false));
        self.checks.push(Check {
            claim: claim.to_string(),
            anchor: anchor.to_string(),
            instance: instance.into(),
            expected: o.expected,
            observed: o.observed,
            pass: o.pass,
            elapsed_ms: start.elapsed().as_millis() as u64,
        });
    }
}

pub fn run_suite(suite: Suite) -> VerifyReport {
    let start = Instant::now();
    let mut b = Battery::default();
    let suites: Vec<Suite> = match suite {
        Suite::All => Suite::EACH.to_vec(),
        s => vec![s],
    };
    for s in suites {
        match s {
            Suite::Motifs => motifs(&mut b),
            Suite::Quasirandom => quasirandom(&mut b),
            Suite::Diameter => diameter(&mut b),
            Suite::Connectivity => connectivity(&mut b),
            Suite::Domination => domination(&mut b),
            Suite::Cops => cops(&mut b),
            Suite::Coloring => coloring(&mut b),
            Suite::Universality => universality(&mut b),
            Suite::Distinguish => distinguish(&mut b),
            Suite::All => unreachable!(),
        }
    }
    let passed = b.checks.iter().filter(|c| c.pass).count();
    VerifyReport {
        suite: suite.name().to_string(),
        failed: b.checks.len() - passed,
        passed,
        checks: b.checks,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

fn classes(n: usize) -> Vec<Tournament> {
    iso::tournaments_up_to_iso(n).expect("small order")
}

fn steps_of(s: &GeneratingSequence) -> impl Iterator<Item = StepKind> + '_ {
    (1..=s.len()).map(move |t| s.kind(t))
}

/// `G_0, G_1, …, G_len(s)`.
fn iterates(g0: &Tournament, s: &GeneratingSequence) -> Result<Vec<Tournament>> {
    let mut out = vec![g0.clone()];
    for kind in steps_of(s) {
        let next = ilmt_step(out.last().expect("nonempty"), kind)?.0;
        out.push(next);
    }
    Ok(out)
}

fn relative_error(x: &Ratio, target: &Ratio) -> f64 {
    rational::to_f64(&((x - target) / target)).abs()
}

fn motifs(b: &mut Battery) {
    let anchor = "a_t = 2^(s(t)+2) a_(t-1) + (1 - s(t)) C(n_(t-1) + 1, 3)";
    for n0 in 3..=5 {
        let reps = classes(n0);
        let count = reps.len();
        for (i, g0) in reps.into_iter().enumerate() {
            b.run(
                "3-cycle recurrence matches direct counts",
                anchor,
                format!("n0={n0} class {}/{count}, all 16 prefixes of length 4", i + 1),
                || {
                    let a0 = census::census3(&g0).a;
                    let mut mismatches = 0;
                    for s in GeneratingSequence::all_of_length(4) {
                        let rows = census::census3_recurrence(n0 as u64, a0, &s, 4)?;
                        for (t, g) in iterates(&g0, &s)?.iter().enumerate() {
                            let c = census::census3(g);
                            if rows[t].a != BigUint::from(c.a) || rows[t].b != BigUint::from(c.b) {
                                mismatches += 1;
                            }
                        }
                    }
                    Ok(equal(0, mismatches))
                },
            );
        }
    }

    b.run(
        "bit-parallel 3-census matches triple enumeration",
        "a counted through arc-closing in-neighbours",
        "200 random tournaments, n <= 64, seed 7",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            let mut bad = 0;
            for k in 0..200 {
                let t = Tournament::random(3 + k % 62, &mut rng);
                if census::census3(&t) != census::census3_naive(&t) {
                    bad += 1;
                }
            }
            Ok(equal(0, bad))
        },
    );

    b.run(
        "neighbourhood 4-census matches subset enumeration",
        "four types by score sequence",
        "60 random tournaments n <= 40 and iterates of D3 up to 48 nodes",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            let mut graphs: Vec<Tournament> =
                (0..60).map(|k| Tournament::random(4 + k % 37, &mut rng)).collect();
            graphs.extend(iterates(&fixtures::d3(), &"0101".parse()?)?);
            let mut bad = 0;
            for g in &graphs {
                let fast = census::census4(g)?;
                if fast != census::census4_enumerate(g)?
                    || fast.total() != census::binom(g.n() as u64, 4)
                {
                    bad += 1;
                }
            }
            Ok(equal(0, bad))
        },
    );

    b.run(
        "classifier agrees with isomorphism on all labelled 4-tournaments",
        "four tournaments on four nodes",
        "64 labelled tournaments",
        || {
            let reps = [fixtures::t4(), fixtures::winner4(), fixtures::loser4(), fixtures::mixed4()];
            let mut bad = 0;
            for t in iso::all_tournaments(4)? {
                let ty = FourType::of(&t).expect("order 4");
                if iso::is_isomorphic(&t, &reps[ty.index()])?.is_none() {
                    bad += 1;
                }
            }
            Ok(equal(0, bad))
        },
    );

    let m = census::markov_model();
    b.run(
        "transition matrix is stochastic",
        "columns of T sum to 1",
        "printed matrix",
        || Ok(equal(vec![rational::one(); 4], m.column_sums())),
    );
    b.run(
        "stationary vector is fixed",
        "T pi = pi with pi = (3/8, 1/8, 1/8, 3/8)",
        "exact rationals",
        || Ok(equal(m.stationary.to_vec(), m.apply(&m.stationary))),
    );
    b.run(
        "transition matches clone enumeration",
        "T column j = types of the 16 one-of-each-pair 4-sets after a 0-step",
        "four 4-node types",
        || {
            let reps = [fixtures::t4(), fixtures::winner4(), fixtures::loser4(), fixtures::mixed4()];
            let mut bad = 0;
            for (j, h) in reps.iter().enumerate() {
                let (g, map) = ilmt_step(h, StepKind::Zero)?;
                let mut counts = [0i64; 4];
                for mask in 0..16u32 {
                    let nodes: [usize; 4] =
                        std::array::from_fn(|x| if mask >> x & 1 == 1 { map.clone_of(x) } else { x });
                    counts[FourType::of_subset(&g, nodes).index()] += 1;
                }
                for (i, &c) in counts.iter().enumerate() {
                    if m.transition[i][j] != rational::ratio(c, 16) {
                        bad += 1;
                    }
                }
            }
            Ok(equal(0, bad))
        },
    );
    for start in 0..4 {
        b.run(
            "power iteration reaches pi",
            "within 1e-9 in at most 80 iterations",
            format!("start at vertex {start}"),
            || {
                let mut x = [0.0; 4];
                x[start] = 1.0;
                Ok(match m.iterate_to_stationary(x, 1e-9, 80) {
                    Some((_, k)) => outcome("<= 80 iterations", format!("{k} iterations"), true),
                    None => outcome("<= 80 iterations", "no convergence", false),
                })
            },
        );
    }

    b.run(
        "all-ones proportion near its limit",
        "a_t / C(n_t, 3) -> n0(n0-1)(n0-2) mu / n0^3, within 1% relative",
        "G0 = D3, s = 1^12, t = 12",
        || {
            let rows = census::census3_recurrence(3, 1, &GeneratingSequence::ones(12), 12)?;
            let limit = census::d3_proportion_limit(3, 1, LimitRegime::AllOnes)?;
            let err = relative_error(&rows[12].d3_proportion(), &limit);
            Ok(outcome("relative error <= 0.01", format!("{err:.5}"), err <= 0.01))
        },
    );
    b.run(
        "alternating proportion near 1/4",
        "a_t / C(n_t, 3) -> 1/4 for infinite support, within 1% relative",
        "G0 = D3, s = (01)^7, t = 14",
        || {
            let s = GeneratingSequence::alternating(14, false);
            let rows = census::census3_recurrence(3, 1, &s, 14)?;
            let limit = census::d3_proportion_limit(3, 1, LimitRegime::InfiniteSupport)?;
            let err = relative_error(&rows[14].d3_proportion(), &limit);
            Ok(outcome("relative error <= 0.01", format!("{err:.5}"), err <= 0.01))
        },
    );
    b.run(
        "1-steps keep a_t / 8^t constant",
        "pure 1-steps multiply a by 8",
        "n0 = 5, a0 = 3, t <= 30",
        || {
            let rows = census::census3_recurrence(5, 3, &GeneratingSequence::ones(30), 30)?;
            let bad = rows
                .iter()
                .filter(|r| r.a != BigUint::from(3u32) << (3 * r.t))
                .count();
            Ok(equal(0, bad))
        },
    );
    b.run(
        "T4 density from the census equals the automorphism formula",
        "d* = |Aut H| n(H, G) / (|V(H)|! C(|V(G)|, |V(H)|))",
        "G0 = D3 after 0, 0, 1, 0",
        || {
            let (g, _) = generate(&fixtures::d3(), &"0010".parse()?, 4)?;
            let c = census::census4(&g)?;
            let d = census::density(&g, &fixtures::t4())?;
            Ok(equal(census::transitive4_density(&c), Some(d.d_star)))
        },
    );
}

fn quasirandom(b: &mut Battery) {
    let pi: Vec<Ratio> = census::markov_model().stationary.to_vec();
    let trace = census::quasirandom_trace_with(
        &fixtures::d3(),
        &GeneratingSequence::zeros(12),
        12,
        census::CENSUS4_MAX_NODES,
        &Generator::default(),
    );
    let trace = match trace {
        Ok(t) => t,
        Err(e) => {
            b.run("trace", "", "G0 = D3, all zeros", || Err(e));
            return;
        }
    };
    let last = trace.last().expect("rows").clone();
    let band = 8.0 / last.n as f64;
    let instance = format!("G0 = D3, all zeros, t = {}, n_t = {}", last.t, last.n);
    b.run(
        "4-type proportions near the stationary vector",
        "|sigma_t - pi| <= 8 / n_t per coordinate",
        instance.clone(),
        || {
            let sigma = last.sigma.clone().ok_or(Error::Internal("no sigma".into()))?;
            let dev = sigma
                .iter()
                .zip(&pi)
                .map(|(x, y)| rational::to_f64(&(x - y)).abs())
                .fold(0.0, f64::max);
            Ok(outcome(format!("<= {band:.6}"), format!("{dev:.6}"), dev <= band))
        },
    );
    b.run(
        "T4 density near 1/64",
        "|d*(T4) - 1/64| <= 8 / n_t",
        instance.clone(),
        || {
            let d = last.d_star_t4.clone().ok_or(Error::Internal("no density".into()))?;
            let dev = rational::to_f64(&(d - rational::ratio(1, 64))).abs();
            Ok(outcome(format!("<= {band:.6}"), format!("{dev:.6}"), dev <= band))
        },
    );
    b.run(
        "measured proportions track the model",
        "|sigma_t - T^t sigma_1| <= 8 / n_t per coordinate",
        instance,
        || {
            let dev = last.max_deviation().ok_or(Error::Internal("no sigma".into()))?;
            Ok(outcome(format!("<= {band:.6}"), format!("{dev:.6}"), dev <= band))
        },
    );
    b.run(
        "trace stops at the census cap",
        "sizes within the 4-census cap",
        format!("cap {}", census::CENSUS4_MAX_NODES),
        || Ok(equal(Some(last.t + 1), trace.truncated_at)),
    );
}

fn sink_free(t: &Tournament) -> bool {
    t.sink().is_none()
}

fn diameter(b: &mut Battery) {
    b.run("diameter of D3", "directed 3-cycle", "D3", || {
        Ok(equal(Some(2), props::diameter(&fixtures::d3())))
    });
    b.run("T3 is not strong", "sink cannot reach", "T3", || {
        Ok(equal(None, props::diameter(&fixtures::t3())))
    });
    for n0 in 3..=5 {
        b.run(
            "diameter at most 3 from the first 0-step",
            "sink-free base, diameter <= 3 once a 0-step has happened",
            format!("all sink-free n0={n0} classes, all length-3 prefixes with a zero"),
            || {
                let mut worst = 0;
                let mut bad = 0;
                for g0 in classes(n0).into_iter().filter(sink_free) {
                    for s in GeneratingSequence::all_of_length(3) {
                        let Some(first) = s.nth_zero(1) else { continue };
                        for (t, g) in iterates(&g0, &s)?.iter().enumerate().skip(first) {
                            match props::diameter(g) {
                                Some(d) if d <= 3 => worst = worst.max(d),
                                _ => {
                                    bad += 1;
                                    let _ = t;
                                }
                            }
                        }
                    }
                }
                Ok(outcome("0 violations", format!("{bad} violations, max diameter {worst}"), bad == 0))
            },
        );
    }
}

fn connectivity(b: &mut Battery) {
    b.run(
        "flow connectivity matches cut enumeration",
        "kappa via vertex-split max flow",
        "all classes n0 <= 6 and their one-step iterates for n0 <= 5",
        || {
            let mut graphs = Vec::new();
            for n0 in 2..=6 {
                for g in classes(n0) {
                    if n0 <= 5 {
                        graphs.push(ilmt_step(&g, StepKind::Zero)?.0);
                        graphs.push(ilmt_step(&g, StepKind::One)?.0);
                    }
                    graphs.push(g);
                }
            }
            let mut bad = 0;
            for g in &graphs {
                let fast = props::connectivity(g)?;
                let slow = props::connectivity_by_enumeration(g)?;
                if fast.kappa != slow.kappa || !props::separates(g, &fast.cut)? && fast.kappa > 0 {
                    bad += 1;
                }
            }
            Ok(outcome("0 mismatches", format!("{bad} mismatches over {} graphs", graphs.len()), bad == 0))
        },
    );
    for kind in [StepKind::Zero, StepKind::One] {
        b.run(
            "one step at least doubles connectivity",
            "kappa(G1) >= 2 kappa(G0) for strong G0",
            format!("all strong classes 3 <= n0 <= 6, {}-step", kind.bit()),
            || {
                let mut bad = 0;
                let mut total = 0;
                for n0 in 3..=6 {
                    for g0 in classes(n0).into_iter().filter(props::is_strong) {
                        let k0 = props::connectivity(&g0)?.kappa;
                        let k1 = props::connectivity(&ilmt_step(&g0, kind)?.0)?.kappa;
                        total += 1;
                        if k1 < 2 * k0 {
                            bad += 1;
                        }
                    }
                }
                Ok(outcome("0 violations", format!("{bad} violations over {total} bases"), bad == 0))
            },
        );
    }
}

fn domination(b: &mut Battery) {
    b.run(
        "out-domination is invariant",
        "gamma+(G_t) = gamma+(G_0)",
        "all classes n0 <= 5, all length-3 prefixes",
        || {
            let mut bad = 0;
            for n0 in 1..=5 {
                for g0 in classes(n0) {
                    let want = props::domination(&g0, Direction::Out)?.gamma;
                    for s in GeneratingSequence::all_of_length(3) {
                        for g in iterates(&g0, &s)?.iter().skip(1) {
                            if props::domination(g, Direction::Out)?.gamma != want {
                                bad += 1;
                            }
                        }
                    }
                }
            }
            Ok(equal(0, bad))
        },
    );
    b.run(
        "in-domination is invariant without a source",
        "gamma-(G_t) = gamma-(G_0) for sourceless G_0",
        "all sourceless classes n0 <= 5, all length-3 prefixes",
        || {
            let mut bad = 0;
            for n0 in 1..=5 {
                for g0 in classes(n0).into_iter().filter(|g| g.source().is_none()) {
                    let want = props::domination(&g0, Direction::In)?.gamma;
                    for s in GeneratingSequence::all_of_length(3) {
                        for g in iterates(&g0, &s)?.iter().skip(1) {
                            if props::domination(g, Direction::In)?.gamma != want {
                                bad += 1;
                            }
                        }
                    }
                }
            }
            Ok(equal(0, bad))
        },
    );
    b.run(
        "1-steps keep in-domination",
        "gamma-(G1) = gamma-(G0) after a 1-step",
        "all classes n0 <= 5",
        || {
            let mut bad = 0;
            for n0 in 1..=5 {
                for g0 in classes(n0) {
                    let want = props::domination(&g0, Direction::In)?.gamma;
                    let (g1, _) = ilmt_step(&g0, StepKind::One)?;
                    if props::domination(&g1, Direction::In)?.gamma != want {
                        bad += 1;
                    }
                }
            }
            Ok(equal(0, bad))
        },
    );
    b.run(
        "a 0-step on a base with a source gives in-domination 2",
        "gamma-(G_t) = 2 at the first 0-step when G_(t-1) has a source",
        "all classes 2 <= n0 <= 5 with a source, all length-3 prefixes",
        || {
            let mut bad = 0;
            for n0 in 2..=5 {
                for g0 in classes(n0).into_iter().filter(|g| g.source().is_some()) {
                    for s in GeneratingSequence::all_of_length(3) {
                        let Some(first) = s.nth_zero(1) else { continue };
                        let g = &iterates(&g0, &s)?[first];
                        if props::domination(g, Direction::In)?.gamma != 2 {
                            bad += 1;
                        }
                    }
                }
            }
            Ok(equal(0, bad))
        },
    );
    b.run(
        "in-domination stays 2 after the first 0-step with a source",
        "gamma-(G_t) = 2 for every t from the first 0-step on, when G_0 has a source",
        "all classes 2 <= n0 <= 5 with a source, all length-3 prefixes",
        || {
            let mut bad = 0;
            let mut seen = std::collections::BTreeSet::new();
            for n0 in 2..=5 {
                for g0 in classes(n0).into_iter().filter(|g| g.source().is_some()) {
                    for s in GeneratingSequence::all_of_length(3) {
                        let Some(first) = s.nth_zero(1) else { continue };
                        for g in iterates(&g0, &s)?.iter().skip(first) {
                            let gamma = props::domination(g, Direction::In)?.gamma;
                            seen.insert(gamma);
                            if gamma != 2 {
                                bad += 1;
                            }
                        }
                    }
                }
            }
            Ok(outcome(
                "always 2",
                format!("values {seen:?}, {bad} iterates differ"),
                bad == 0,
            ))
        },
    );
    b.run(
        "clone set in-dominates exactly when the set in- and out-dominates",
        "S' in-dominating in G1 iff S in- and out-dominating in G0",
        "all classes n0 <= 5, every nonempty subset",
        || {
            let mut bad = 0;
            for n0 in 1..=5 {
                for g0 in classes(n0) {
                    for mask in 1u32..1 << n0 {
                        let s: Vec<usize> = (0..n0).filter(|&x| mask >> x & 1 == 1).collect();
                        let (i, o, lifted) = props::check_minimal_indominating_clone_lift(&g0, &s)?;
                        if lifted != (i && o) {
                            bad += 1;
                        }
                    }
                }
            }
            Ok(equal(0, bad))
        },
    );
    b.run(
        "minimal in-dominating sets lift to minimal ones",
        "for |S| > 1, S minimal in G0 iff S' minimal in G1",
        "all classes n0 <= 5, every subset with |S| > 1",
        || {
            let mut bad = 0;
            for n0 in 2..=5 {
                for g0 in classes(n0) {
                    bad += minimal_lift_violations(&g0)?;
                }
            }
            Ok(equal(0, bad))
        },
    );
}

/// Subsets with `|S| > 1` where minimality in `G0` and of the clone set in
/// the 0-step differ.
pub fn minimal_lift_violations(g0: &Tournament) -> Result<usize> {
    let n0 = g0.n();
    let (g1, map) = ilmt_step(g0, StepKind::Zero)?;
    let mut bad = 0;
    for mask in 1u32..1 << n0 {
        if mask.count_ones() < 2 {
            continue;
        }
        let s: Vec<usize> = (0..n0).filter(|&x| mask >> x & 1 == 1).collect();
        let lifted: Vec<usize> = s.iter().map(|&x| map.clone_of(x)).collect();
        let a = props::is_minimal_dominating(g0, &s, Direction::In)?;
        let b = props::is_minimal_dominating(&g1, &lifted, Direction::In)?;
        if a != b {
            bad += 1;
        }
    }
    Ok(bad)
}

fn cops(b: &mut Battery) {
    b.run("cop numbers of small bases", "c(edge) = 1, c(D3) = 2", "edge, D3", || {
        Ok(equal(
            (1, 2),
            (
                pursuit::cop_number(&fixtures::edge())?.cop_number,
                pursuit::cop_number(&fixtures::d3())?.cop_number,
            ),
        ))
    });
    b.run(
        "1-steps keep the cop number",
        "c(G1) = c(G0) after a 1-step",
        "all classes n0 <= 4",
        || {
            let mut bad = 0;
            for n0 in 1..=4 {
                for g0 in classes(n0) {
                    let r = pursuit::verify_cop_step_theorems(&g0)?;
                    if !r.one_step_preserved {
                        bad += 1;
                    }
                }
            }
            Ok(equal(0, bad))
        },
    );
    b.run(
        "0-steps give cop number 2 or 3",
        "2 <= c(G1) <= 3 after a 0-step",
        "all classes 2 <= n0 <= 4",
        || {
            let mut seen = std::collections::BTreeSet::new();
            let mut bad = 0;
            for n0 in 2..=4 {
                for g0 in classes(n0) {
                    let c = pursuit::cop_number(&ilmt_step(&g0, StepKind::Zero)?.0)?.cop_number;
                    seen.insert(c);
                    if !(2..=3).contains(&c) {
                        bad += 1;
                    }
                }
            }
            Ok(outcome("all in {2, 3}", format!("values {seen:?}, {bad} outside"), bad == 0))
        },
    );
    b.run(
        "one cop needs a source",
        "c(G) = 1 implies G has a source",
        "all classes n <= 5, strategies replayed",
        || {
            let mut bad = 0;
            for n in 1..=5 {
                for g in classes(n) {
                    let r = pursuit::cop_number(&g)?;
                    if (r.cop_number == 1 && g.source().is_none())
                        || !pursuit::verify_strategy(&g, &r.certificate)
                    {
                        bad += 1;
                    }
                }
            }
            Ok(equal(0, bad))
        },
    );
}

fn coloring(b: &mut Battery) {
    b.run(
        "1-steps keep the chromatic number",
        "chi(G1) = chi(G0) after a 1-step",
        "all classes n0 <= 5",
        || {
            let mut bad = 0;
            for n0 in 1..=5 {
                for g0 in classes(n0) {
                    if props::verify_chi_step_theorems(&g0, ChiMode::OneStep)?.violated() {
                        bad += 1;
                    }
                }
            }
            Ok(equal(0, bad))
        },
    );
    for (name, g, delta) in [
        ("G", fixtures::figure2_g(), 0),
        ("H", fixtures::figure2_h(), 1),
        ("T", fixtures::figure2_t(), 2),
    ] {
        b.run(
            "chromatic number change under a 0-step",
            "chi rises by 0, 1 and 2 on the three fixtures",
            format!("fixture {name}"),
            || {
                let before = props::chromatic_number(&g)?.chi;
                let after = props::chromatic_number(&ilmt_step(&g, StepKind::Zero)?.0)?.chi;
                Ok(equal((2, 2 + delta), (before, after)))
            },
        );
    }
    for i in 1..=4u32 {
        b.run(
            "heroes need many colours",
            "chi(S_i) >= i",
            format!("S_{i}, {} nodes", (1usize << i) - 1),
            || {
                let c = props::chromatic_number(&props::hero(i)?)?;
                Ok(outcome(format!(">= {i}"), c.chi, c.chi >= i as usize && c.exact))
            },
        );
    }
    b.run(
        "two 0-steps at most triple the chromatic number",
        "chi(G2) <= 3 chi(G0) after two 0-steps",
        "all classes n0 <= 5, exact",
        || {
            let mut bad = 0;
            for n0 in 1..=5 {
                for g0 in classes(n0) {
                    let chi0 = props::chromatic_number(&g0)?.chi;
                    let (g2, _) = generate(&g0, &GeneratingSequence::zeros(2), 2)?;
                    if props::chromatic_number(&g2)?.chi > 3 * chi0 {
                        bad += 1;
                    }
                }
            }
            Ok(equal(0, bad))
        },
    );
    b.run(
        "chromatic number grows with 0-steps",
        "log2(t + 1) <= chi(G_t) after t 0-steps",
        "G0 = D3, t <= 3",
        || {
            let mut bad = 0;
            for t in 0..=3usize {
                let (g, _) = generate(&fixtures::d3(), &GeneratingSequence::zeros(t), t)?;
                let chi = props::chromatic_number(&g)?.chi;
                if ((t + 1) as f64).log2() > chi as f64 {
                    bad += 1;
                }
            }
            Ok(equal(0, bad))
        },
    );
}

fn universality(b: &mut Battery) {
    let mut sweep = |base_name: &str, g0: Tournament, n: usize| {
        b.run(
            "every small tournament embeds",
            "each n-node tournament is an induced subtournament after n 0-steps",
            format!("base {base_name}, order {n}"),
            || {
                let r = embed::universality_sweep(&g0, n)?;
                let bad = r
                    .entries
                    .iter()
                    .filter(|e| {
                        !e.verified
                            || e.zeros_used != n
                            || e.host_order != g0.n() << e.steps
                    })
                    .count();
                Ok(outcome(
                    "all verified with n zeros",
                    format!("{} types, {bad} failed", r.entries.len()),
                    bad == 0,
                ))
            },
        );
    };
    sweep("T3", fixtures::t3(), 3);
    sweep("T4", fixtures::t4(), 4);
    sweep("Winner", fixtures::winner4(), 4);
    sweep("Loser", fixtures::loser4(), 4);
    sweep("Mixed", fixtures::mixed4(), 4);
    sweep("D3", fixtures::d3(), 1);
}

fn distinguish(b: &mut Battery) {
    for (name, g0) in [("D3", fixtures::d3()), ("edge", fixtures::edge())] {
        b.run(
            "distinct prefixes give distinct degree multisets",
            "different sequences give non-isomorphic iterates",
            format!("G0 = {name}, all pairs of distinct prefixes of equal length <= 3"),
            || {
                let mut missed = Vec::new();
                let mut total = 0;
                for len in 1..=3 {
                    let all = GeneratingSequence::all_of_length(len);
                    for (i, s) in all.iter().enumerate() {
                        for s2 in &all[i + 1..] {
                            total += 1;
                            if census::distinguish_sequences(&g0, s, s2, len)?.is_none() {
                                missed.push(format!("{s}/{s2}"));
                            }
                        }
                    }
                }
                Ok(outcome(
                    format!("all {total} pairs diverge"),
                    if missed.is_empty() {
                        "all diverge".to_string()
                    } else {
                        format!("no divergence for {}", missed.join(", "))
                    },
                    missed.is_empty(),
                ))
            },
        );
        b.run(
            "distinct prefixes give non-isomorphic iterates",
            "degree multisets, then isomorphism up to 10 nodes",
            format!("G0 = {name}, all pairs of distinct prefixes of equal length <= 3"),
            || {
                let mut missed = 0;
                for len in 1..=3 {
                    let all = GeneratingSequence::all_of_length(len);
                    for (i, s) in all.iter().enumerate() {
                        for s2 in &all[i + 1..] {
                            if census::distinguish_sequences_exact(&g0, s, s2, len)?.is_none() {
                                missed += 1;
                            }
                        }
                    }
                }
                Ok(equal(0, missed))
            },
        );
    }
}
