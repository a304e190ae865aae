use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::majorize::MajorizeError;
use crate::scalar::serde_rational;
use crate::Rational;

/// Step function on `(0, 1)`: `values[i]` on `(breakpoints[i], breakpoints[i+1])`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawStepFunction")]
pub struct StepFunction {
    #[serde(with = "serde_rational::vec")]
    breakpoints: Vec<Rational>,
    #[serde(with = "serde_rational::vec")]
    values: Vec<Rational>,
}

#[derive(Deserialize)]
struct RawStepFunction {
    #[serde(with = "serde_rational::vec")]
    breakpoints: Vec<Rational>,
    #[serde(with = "serde_rational::vec")]
    values: Vec<Rational>,
}

impl TryFrom<RawStepFunction> for StepFunction {
    type Error = MajorizeError;

    fn try_from(raw: RawStepFunction) -> Result<Self, Self::Error> {
        Self::new(raw.breakpoints, raw.values)
    }
}

impl StepFunction {
    pub fn new(breakpoints: Vec<Rational>, values: Vec<Rational>) -> Result<Self, MajorizeError> {
        let f = Self { breakpoints, values };
        f.validate()?;
        Ok(f)
    }

    /// Blocks of the given lengths, which must sum to 1.
    pub fn from_blocks(blocks: &[(Rational, Rational)]) -> Result<Self, MajorizeError> {
        let mut breakpoints = vec![Rational::zero()];
        let mut values = Vec::new();
        for (len, v) in blocks {
            let last = breakpoints.last().expect("nonempty").clone();
            breakpoints.push(last + len);
            values.push(v.clone());
        }
        Self::new(breakpoints, values)
    }

    pub fn constant(v: Rational) -> Self {
        Self { breakpoints: vec![Rational::zero(), Rational::one()], values: vec![v] }
    }

    fn validate(&self) -> Result<(), MajorizeError> {
        let b = &self.breakpoints;
        if b.len() != self.values.len() + 1 || self.values.is_empty() {
            return Err(MajorizeError::BadStepFunction("need one value per interval".into()));
        }
        if !b[0].is_zero() || !b[b.len() - 1].is_one() {
            return Err(MajorizeError::BadStepFunction("domain must be (0, 1)".into()));
        }
        if b.windows(2).any(|w| w[0] >= w[1]) {
            return Err(MajorizeError::BadStepFunction("breakpoints must increase".into()));
        }
        Ok(())
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// `(length, value)` per interval.
    pub fn blocks(&self) -> Vec<(Rational, Rational)> {
        self.breakpoints
            .windows(2)
            .zip(&self.values)
            .map(|(w, v)| (&w[1] - &w[0], v.clone()))
            .collect()
    }

    pub fn integral(&self) -> Rational {
        self.blocks().into_iter().map(|(l, v)| l * v).sum()
    }

    /// `∫_0^s f`.
    pub fn cumulative(&self, s: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (w, v) in self.breakpoints.windows(2).zip(&self.values) {
            if *s <= w[0] {
                break;
            }
            let end = if *s < w[1] { s.clone() } else { w[1].clone() };
            acc += (end - &w[0]) * v;
        }
        acc
    }

    /// Merges adjacent intervals carrying the same value.
    fn merged(self) -> Self {
        let mut breakpoints = vec![self.breakpoints[0].clone()];
        let mut values: Vec<Rational> = Vec::new();
        for (i, v) in self.values.iter().enumerate() {
            if values.last() == Some(v) {
                *breakpoints.last_mut().expect("nonempty") = self.breakpoints[i + 1].clone();
            } else {
                values.push(v.clone());
                breakpoints.push(self.breakpoints[i + 1].clone());
            }
        }
        Self { breakpoints, values }
    }
}

/// Decreasing rearrangement `f*`, with equal values merged.
pub fn ryff_rearrangement(f: &StepFunction) -> StepFunction {
    let mut blocks = f.blocks();
    blocks.sort_by(|a, b| b.1.cmp(&a.1));
    StepFunction::from_blocks(&blocks).expect("lengths still sum to 1").merged()
}

/// `∫_0^s g* <= ∫_0^s f*` for all `s` and `∫g = ∫f`.
///
/// Both cumulatives are concave and piecewise linear, so checking the merged
/// breakpoints is enough.
pub fn ryff_majorized(g: &StepFunction, f: &StepFunction) -> bool {
    let (gs, fs) = (ryff_rearrangement(g), ryff_rearrangement(f));
    if gs.integral() != fs.integral() {
        return false;
    }
    let mut points: Vec<Rational> = gs.breakpoints.iter().chain(&fs.breakpoints).cloned().collect();
    points.sort();
    points.dedup();
    points.iter().all(|s| gs.cumulative(s) <= fs.cumulative(s))
}

pub fn equimeasurable(f: &StepFunction, g: &StepFunction) -> bool {
    ryff_rearrangement(f) == ryff_rearrangement(g)
}
