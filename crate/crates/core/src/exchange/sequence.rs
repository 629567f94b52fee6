use serde::{Deserialize, Serialize};

use super::{apply_exchange, BasisPair, ExchangeStep};
use crate::element_set::ElementSet;
use crate::error::Result;
use crate::matroid::Matroid;

/// A replay-validated run of symmetric exchanges from a start pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeSequence {
    start: (ElementSet, ElementSet),
    steps: Vec<ExchangeStep>,
    end: (ElementSet, ElementSet),
}

impl ExchangeSequence {
    /// Replays `steps` from `start`, failing at the first invalid step.
    pub fn replay(start: &BasisPair<'_>, steps: Vec<ExchangeStep>) -> Result<Self> {
        let mut cur = start.clone();
        for &step in &steps {
            cur = apply_exchange(&cur, step)?;
        }
        Ok(ExchangeSequence {
            start: (start.a(), start.b()),
            steps,
            end: (cur.a(), cur.b()),
        })
    }

    /// Replays against `matroid` from the stored start pair.
    pub fn validate(&self, matroid: &Matroid) -> Result<()> {
        let start = BasisPair::new(matroid, self.start.0, self.start.1)?;
        let replayed = Self::replay(&start, self.steps.clone())?;
        debug_assert_eq!(replayed.end, self.end);
        Ok(())
    }

    pub fn start(&self) -> (ElementSet, ElementSet) {
        self.start
    }

    pub fn end(&self) -> (ElementSet, ElementSet) {
        self.end
    }

    pub fn steps(&self) -> &[ExchangeStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The end pair is the start pair with its bases swapped.
    pub fn is_full(&self) -> bool {
        self.end.0 == self.start.1 && self.end.1 == self.start.0
    }

    pub fn record(&self, matroid_name: &str) -> SequenceRecord {
        SequenceRecord {
            matroid: matroid_name.to_string(),
            a: self.start.0,
            b: self.start.1,
            steps: self.steps.clone(),
            full: self.is_full(),
            length: self.steps.len(),
        }
    }
}

/// JSON form of an [`ExchangeSequence`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceRecord {
    pub matroid: String,
    #[serde(rename = "A")]
    pub a: ElementSet,
    #[serde(rename = "B")]
    pub b: ElementSet,
    pub steps: Vec<ExchangeStep>,
    pub full: bool,
    pub length: usize,
}

impl SequenceRecord {
    /// Rebuilds and validates the sequence against `matroid`.
    pub fn to_sequence(&self, matroid: &Matroid) -> Result<ExchangeSequence> {
        let start = BasisPair::new(matroid, self.a, self.b)?;
        ExchangeSequence::replay(&start, self.steps.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exchange::tests::uniform;

    #[test]
    fn replay_and_json() {
        let u = uniform(2, 4);
        let p = BasisPair::new(&u, ElementSet::from([0, 1]), ElementSet::from([2, 3])).unwrap();
        let seq =
            ExchangeSequence::replay(&p, vec![ExchangeStep::new(0, 2), ExchangeStep::new(1, 3)])
                .unwrap();
        assert!(seq.is_full());
        let json = serde_json::to_string(&seq.record("U24")).unwrap();
        assert_eq!(
            json,
            r#"{"matroid":"U24","A":[0,1],"B":[2,3],"steps":[{"a":0,"b":2},{"a":1,"b":3}],"full":true,"length":2}"#
        );
        let back: SequenceRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_sequence(&u).unwrap(), seq);
    }

    #[test]
    fn replay_rejects_bad_step() {
        let u = uniform(2, 4);
        let p = BasisPair::new(&u, ElementSet::from([0, 1]), ElementSet::from([2, 3])).unwrap();
        // second step tries to move 0 again, but 0 now sits in B
        assert!(ExchangeSequence::replay(
            &p,
            vec![ExchangeStep::new(0, 2), ExchangeStep::new(0, 3)]
        )
        .is_err());
    }
}
