//! Machine-readable verdicts for a single verification pass.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::exact::Scalar;
use crate::scheme::SchemeParams;

/// Witnesses retained per certificate; further failures are only counted.
pub const MAX_WITNESSES: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

/// One failure record: where it happened and what was expected there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub context: String,
    pub index: Vec<i64>,
    pub expected: String,
    pub actual: String,
}

impl Witness {
    pub fn new(
        context: impl Into<String>,
        index: Vec<i64>,
        expected: impl ToString,
        actual: impl ToString,
    ) -> Self {
        Witness {
            context: context.into(),
            index,
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }

    pub fn scalars(
        context: impl Into<String>,
        index: Vec<i64>,
        expected: &Scalar,
        actual: &Scalar,
    ) -> Self {
        Self::new(context, index, expected, actual)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub check: String,
    pub instance: SchemeParams,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    /// Total number of failures observed, including those not kept as witnesses.
    pub failures: usize,
    /// Informational remarks (resolved singularities, skipped sub-checks).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }

    pub fn skipped(
        check: impl Into<String>,
        instance: SchemeParams,
        reason: impl Into<String>,
    ) -> Self {
        Certificate {
            check: check.into(),
            instance,
            verdict: Verdict::Skipped,
            witnesses: Vec::new(),
            failures: 0,
            notes: vec![reason.into()],
            wall_time_ms: Some(0),
        }
    }

    /// Folds several certificates into one under a new name. Fails if any
    /// part failed; skipped parts are noted.
    pub fn merge(check: impl Into<String>, instance: SchemeParams, parts: &[Certificate]) -> Self {
        let mut builder = CertificateBuilder::new(check, instance);
        for part in parts {
            match part.verdict {
                Verdict::Skipped => builder.note(format!("{} skipped", part.check)),
                Verdict::Pass => {}
                Verdict::Fail => {
                    for w in &part.witnesses {
                        let mut w = w.clone();
                        w.context = format!("{}: {}", part.check, w.context);
                        builder.fail(w);
                    }
                    builder.failures += part.failures.saturating_sub(part.witnesses.len());
                }
            }
            builder
                .notes
                .extend(part.notes.iter().map(|n| format!("{}: {n}", part.check)));
        }
        builder.finish()
    }
}

/// Accumulates witnesses and notes while a check runs.
#[derive(Debug)]
pub struct CertificateBuilder {
    check: String,
    instance: SchemeParams,
    witnesses: Vec<Witness>,
    failures: usize,
    notes: Vec<String>,
    started: Instant,
}

impl CertificateBuilder {
    pub fn new(check: impl Into<String>, instance: SchemeParams) -> Self {
        CertificateBuilder {
            check: check.into(),
            instance,
            witnesses: Vec::new(),
            failures: 0,
            notes: Vec::new(),
            started: Instant::now(),
        }
    }

    pub fn fail(&mut self, witness: Witness) {
        self.failures += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(witness);
        }
    }

    /// Records a failure unless `expected == actual`.
    pub fn expect_eq(
        &mut self,
        context: impl FnOnce() -> (String, Vec<i64>),
        expected: &Scalar,
        actual: &Scalar,
    ) {
        if expected != actual {
            let (ctx, index) = context();
            self.fail(Witness::scalars(ctx, index, expected, actual));
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn has_failures(&self) -> bool {
        self.failures > 0
    }

    pub fn finish(self) -> Certificate {
        let verdict = if self.failures == 0 {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        Certificate {
            check: self.check,
            instance: self.instance,
            verdict,
            witnesses: self.witnesses,
            failures: self.failures,
            notes: self.notes,
            wall_time_ms: Some(self.started.elapsed().as_millis() as u64),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> SchemeParams {
        SchemeParams::new(3, 2, 3).unwrap()
    }

    #[test]
    fn verdict_follows_witnesses() {
        let b = CertificateBuilder::new("empty", params());
        let c = b.finish();
        assert!(c.passed() && c.witnesses.is_empty());

        let mut b = CertificateBuilder::new("one", params());
        b.fail(Witness::new("x", vec![1], "a", "b"));
        let c = b.finish();
        assert!(c.failed() && c.witnesses.len() == 1 && c.failures == 1);
    }

    #[test]
    fn witnesses_are_capped_but_counted() {
        let mut b = CertificateBuilder::new("many", params());
        for t in 0..100 {
            b.fail(Witness::new("x", vec![t], "0", "1"));
        }
        let c = b.finish();
        assert_eq!(c.witnesses.len(), MAX_WITNESSES);
        assert_eq!(c.failures, 100);
    }

    #[test]
    fn merge_propagates_failure() {
        let ok = CertificateBuilder::new("ok", params()).finish();
        let mut b = CertificateBuilder::new("bad", params());
        b.fail(Witness::new("w", vec![], "1", "2"));
        let merged = Certificate::merge("all", params(), &[ok, b.finish()]);
        assert!(merged.failed());
        assert_eq!(merged.witnesses[0].context, "bad: w");
    }
}
