//! Step-by-step 4-type proportions against the Markov prediction, and
//! divergence between two generating sequences.

use serde::Serialize;

use super::{census3, census4_with_cap, markov_model, transitive4_density, CENSUS4_MAX_NODES};
use crate::error::{Error, Result};
use crate::generator::{GeneratingSequence, Generator};
use crate::iso;
use crate::rational::{self, Ratio};
use crate::tournament::Tournament;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceRow {
    pub t: usize,
    pub n: usize,
    pub a: u64,
    pub b: u64,
    pub counts4: [u64; 4],
    #[serde(serialize_with = "rational::serialize_opt_vec")]
    pub sigma: Option<Vec<Ratio>>,
    #[serde(rename = "d_star_T4", serialize_with = "rational::serialize_opt")]
    pub d_star_t4: Option<Ratio>,
    #[serde(serialize_with = "rational::serialize_opt_vec")]
    pub predicted_sigma: Option<Vec<Ratio>>,
}

impl TraceRow {
    /// Largest coordinate gap between measured and predicted proportions.
    pub fn max_deviation(&self) -> Option<f64> {
        let (m, p) = (self.sigma.as_ref()?, self.predicted_sigma.as_ref()?);
        Some(
            m.iter()
                .zip(p)
                .map(|(x, y)| rational::to_f64(&(x - y)).abs())
                .fold(0.0, f64::max),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuasirandomTrace {
    pub sequence: GeneratingSequence,
    pub requested_steps: usize,
    pub rows: Vec<TraceRow>,
    /// First step that was not computed because its order exceeds `cap`.
    pub truncated_at: Option<usize>,
    pub cap: usize,
}

impl QuasirandomTrace {
    pub fn last(&self) -> Option<&TraceRow> {
        self.rows.last()
    }
}

pub fn quasirandom_trace(
    g0: &Tournament,
    s: &GeneratingSequence,
    t_max: usize,
) -> Result<QuasirandomTrace> {
    quasirandom_trace_with(g0, s, t_max, CENSUS4_MAX_NODES, &Generator::from_env())
}

/// The predicted vector starts from the first measured one (the first step
/// with at least four nodes) and then follows the model step by step.
pub fn quasirandom_trace_with(
    g0: &Tournament,
    s: &GeneratingSequence,
    t_max: usize,
    cap: usize,
    generator: &Generator,
) -> Result<QuasirandomTrace> {
    if t_max > s.len() {
        return Err(Error::SequenceTooShort {
            requested: t_max,
            available: s.len(),
        });
    }
    let cap = cap.min(generator.max_nodes());
    let model = markov_model();
    let mut trace = QuasirandomTrace {
        sequence: s.prefix(t_max),
        requested_steps: t_max,
        rows: Vec::new(),
        truncated_at: None,
        cap,
    };
    let mut g = g0.clone();
    let mut predicted: Option<Vec<Ratio>> = None;
    for t in 0..=t_max {
        if t > 0 {
            if g.n() * 2 > cap {
                trace.truncated_at = Some(t);
                break;
            }
            let kind = s.kind(t);
            g = generator.step(&g, kind)?.0;
            predicted = predicted.map(|p| model.step(kind, &p));
        } else if g.n() > cap {
            trace.truncated_at = Some(0);
            break;
        }
        let c3 = census3(&g);
        let c4 = census4_with_cap(&g, cap)?;
        let sigma = c4.proportions();
        if predicted.is_none() {
            predicted = sigma.clone();
        }
        trace.rows.push(TraceRow {
            t,
            n: g.n(),
            a: c3.a,
            b: c3.b,
            counts4: c4.counts,
            sigma,
            d_star_t4: transitive4_density(&c4),
            predicted_sigma: predicted.clone(),
        });
    }
    Ok(trace)
}

/// What separated two generated tournaments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DivergenceWitness {
    DegreeProfile,
    NonIsomorphic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Divergence {
    pub t: usize,
    pub witness: DivergenceWitness,
}

fn walk(
    g0: &Tournament,
    s: &GeneratingSequence,
    s2: &GeneratingSequence,
    t_max: usize,
    mut differ: impl FnMut(&Tournament, &Tournament) -> Result<Option<DivergenceWitness>>,
) -> Result<Option<Divergence>> {
    for seq in [s, s2] {
        if seq.len() < t_max {
            return Err(Error::SequenceTooShort {
                requested: t_max,
                available: seq.len(),
            });
        }
    }
    let generator = Generator::from_env();
    let (mut g, mut h) = (g0.clone(), g0.clone());
    for t in 1..=t_max {
        g = generator.step(&g, s.kind(t))?.0;
        h = generator.step(&h, s2.kind(t))?.0;
        if let Some(witness) = differ(&g, &h)? {
            return Ok(Some(Divergence { t, witness }));
        }
    }
    Ok(None)
}

/// First step at which the out- or in-degree multisets of the two generated
/// tournaments differ.
pub fn distinguish_sequences(
    g0: &Tournament,
    s: &GeneratingSequence,
    s2: &GeneratingSequence,
    t_max: usize,
) -> Result<Option<usize>> {
    Ok(walk(g0, s, s2, t_max, |g, h| {
        Ok((g.degree_profile() != h.degree_profile()).then_some(DivergenceWitness::DegreeProfile))
    })?
    .map(|d| d.t))
}

/// Like [`distinguish_sequences`], but when the degree multisets agree and
/// the order is small enough, falls back to an isomorphism test.
pub fn distinguish_sequences_exact(
    g0: &Tournament,
    s: &GeneratingSequence,
    s2: &GeneratingSequence,
    t_max: usize,
) -> Result<Option<Divergence>> {
    walk(g0, s, s2, t_max, |g, h| {
        if g.degree_profile() != h.degree_profile() {
            return Ok(Some(DivergenceWitness::DegreeProfile));
        }
        if g.n() <= iso::MAX_ISO_NODES && iso::is_isomorphic(g, h)?.is_none() {
            return Ok(Some(DivergenceWitness::NonIsomorphic));
        }
        Ok(None)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::census4;
    use crate::fixtures;

    fn seq(s: &str) -> GeneratingSequence {
        s.parse().unwrap()
    }

    #[test]
    fn first_row_is_the_base_census() {
        let g0 = fixtures::mixed4();
        let tr = quasirandom_trace(&g0, &seq("000"), 3).unwrap();
        assert_eq!(tr.rows.len(), 4);
        assert_eq!(tr.rows[0].sigma, census4(&g0).unwrap().proportions());
        assert_eq!(tr.rows[0].predicted_sigma, tr.rows[0].sigma);
        assert!(tr.truncated_at.is_none());
    }

    #[test]
    fn trace_truncates_at_cap() {
        let tr = quasirandom_trace_with(
            &fixtures::d3(),
            &GeneratingSequence::zeros(10),
            10,
            100,
            &Generator::default(),
        )
        .unwrap();
        assert_eq!(tr.truncated_at, Some(6));
        assert_eq!(tr.last().unwrap().n, 96);
    }

    #[test]
    fn small_graphs_have_no_sigma() {
        let tr = quasirandom_trace(&fixtures::d3(), &seq("0"), 1).unwrap();
        assert!(tr.rows[0].sigma.is_none());
        assert!(tr.rows[0].predicted_sigma.is_none());
        assert!(tr.rows[1].sigma.is_some());
        let v = serde_json::to_value(&tr.rows[1]).unwrap();
        assert!(v.get("d_star_T4").is_some());
    }

    #[test]
    fn divergence_examples() {
        let e = fixtures::edge();
        assert_eq!(
            distinguish_sequences(&e, &seq("10"), &seq("11"), 2).unwrap(),
            Some(2)
        );
        assert_eq!(
            distinguish_sequences(&e, &seq("0110"), &seq("0110"), 4).unwrap(),
            None
        );
        assert!(distinguish_sequences(&e, &seq("1"), &seq("10"), 2).is_err());
    }

    #[test]
    fn first_bit_on_a_three_cycle_is_invisible_to_degrees() {
        // the 1-step and 0-step from D3 share their degree multisets but are
        // not isomorphic
        let d3 = fixtures::d3();
        assert_eq!(distinguish_sequences(&d3, &seq("1"), &seq("0"), 1).unwrap(), None);
        assert_eq!(
            distinguish_sequences_exact(&d3, &seq("1"), &seq("0"), 1).unwrap(),
            Some(Divergence {
                t: 1,
                witness: DivergenceWitness::NonIsomorphic
            })
        );
    }
}
