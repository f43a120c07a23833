//! Serialization helpers shared by report types.

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

pub fn bigint_as_string<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Outcome of a computational lemma check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inapplicable,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inapplicable => "inapplicable",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
}

/// Serialized as `{lemma, instance, hypotheses, verdict, witness?}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationRecord {
    pub lemma: String,
    pub instance: String,
    pub hypotheses: Vec<Hypothesis>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

impl VerificationRecord {
    pub fn new(lemma: &str, instance: &str) -> Self {
        VerificationRecord {
            lemma: lemma.into(),
            instance: instance.into(),
            hypotheses: Vec::new(),
            verdict: Verdict::Inconclusive,
            witness: None,
        }
    }

    /// Records a hypothesis and returns whether it holds.
    pub fn hypothesis(&mut self, name: &str, holds: bool) -> bool {
        self.hypotheses.push(Hypothesis { name: name.into(), holds });
        holds
    }

    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|h| h.holds)
    }

    pub fn with_witness(mut self, witness: serde_json::Value) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn conclude(mut self, verdict: Verdict) -> Self {
        self.verdict = verdict;
        self
    }

    /// `Pass` if `ok`, otherwise `Fail`.
    pub fn check(self, ok: bool) -> Self {
        self.conclude(if ok { Verdict::Pass } else { Verdict::Fail })
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}
