//! The 4-type transition under a 0-step.

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::generator::StepKind;
use crate::rational::{self, Ratio};

/// The matrix as printed, in sixteenths. Row `i` is the distribution of the
/// types that a 4-set of type `i` turns into.
pub const PRINTED_TRANSITION: [[i64; 4]; 4] = [
    [11, 1, 1, 3],
    [3, 9, 1, 3],
    [3, 1, 9, 3],
    [3, 1, 1, 11],
];

/// Column-stochastic transition `T` with `σ_t = T σ_{t-1}` on a 0-step.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MarkovModel {
    #[serde(serialize_with = "serialize_matrix")]
    pub transition: [[Ratio; 4]; 4],
    #[serde(serialize_with = "serialize_row")]
    pub stationary: [Ratio; 4],
}

fn serialize_row<S: Serializer>(row: &[Ratio; 4], s: S) -> Result<S::Ok, S::Error> {
    rational::serialize_vec(row, s)
}

fn serialize_matrix<S: Serializer>(m: &[[Ratio; 4]; 4], s: S) -> Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Row<'a>(#[serde(serialize_with = "serialize_row")] &'a [Ratio; 4]);
    let mut seq = s.serialize_seq(Some(4))?;
    for row in m {
        seq.serialize_element(&Row(row))?;
    }
    seq.end()
}

pub fn markov_model() -> MarkovModel {
    let transition: [[Ratio; 4]; 4] =
        std::array::from_fn(|i| std::array::from_fn(|j| rational::ratio(PRINTED_TRANSITION[j][i], 16)));
    let stationary = [
        rational::ratio(3, 8),
        rational::ratio(1, 8),
        rational::ratio(1, 8),
        rational::ratio(3, 8),
    ];
    let model = MarkovModel {
        transition,
        stationary,
    };
    assert!(model.is_stationary(&model.stationary));
    model
}

impl MarkovModel {
    pub fn apply(&self, sigma: &[Ratio]) -> Vec<Ratio> {
        assert_eq!(sigma.len(), 4);
        self.transition
            .iter()
            .map(|row| row.iter().zip(sigma).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// One generator step: `T` on a 0-step, identity on a 1-step.
    pub fn step(&self, kind: StepKind, sigma: &[Ratio]) -> Vec<Ratio> {
        match kind {
            StepKind::Zero => self.apply(sigma),
            StepKind::One => sigma.to_vec(),
        }
    }

    pub fn column_sums(&self) -> Vec<Ratio> {
        (0..4)
            .map(|j| self.transition.iter().map(|row| &row[j]).sum())
            .collect()
    }

    pub fn is_stationary(&self, pi: &[Ratio]) -> bool {
        self.apply(pi) == pi
    }

    /// Floating-point power iteration from `start` until every coordinate is
    /// within `tol` of the stationary vector. Returns the iterate and the
    /// number of steps, or `None` if `max_iter` is reached first.
    pub fn iterate_to_stationary(
        &self,
        start: [f64; 4],
        tol: f64,
        max_iter: usize,
    ) -> Option<([f64; 4], usize)> {
        let t: [[f64; 4]; 4] =
            std::array::from_fn(|i| std::array::from_fn(|j| rational::to_f64(&self.transition[i][j])));
        let pi: [f64; 4] = std::array::from_fn(|i| rational::to_f64(&self.stationary[i]));
        let close = |x: &[f64; 4]| x.iter().zip(&pi).all(|(a, b)| (a - b).abs() <= tol);
        let mut x = start;
        for k in 0..=max_iter {
            if close(&x) {
                return Some((x, k));
            }
            x = std::array::from_fn(|i| (0..4).map(|j| t[i][j] * x[j]).sum());
        }
        None
    }
}
