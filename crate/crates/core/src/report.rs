use std::fmt;

use serde::{Deserialize, Serialize};

/// How an identity was checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckMode {
    /// Both sides expanded and compared exactly.
    Symbolic,
    /// Both sides evaluated at seeded random points.
    Pit,
}

impl fmt::Display for CheckMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckMode::Symbolic => "symbolic",
            CheckMode::Pit => "pit",
        })
    }
}

impl std::str::FromStr for CheckMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "symbolic" => Ok(CheckMode::Symbolic),
            "pit" => Ok(CheckMode::Pit),
            _ => Err(format!("unknown mode {s:?} (expected symbolic or pit)")),
        }
    }
}

/// Outcome of one identity check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub lemma: String,
    pub group: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<String>,
    pub mode: CheckMode,
    pub n_points: usize,
    pub tolerance: f64,
    /// Largest relative residual; `0` for an exact match.
    pub residual: f64,
    /// Per-point relative residuals, in evaluation order.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub residuals: Vec<f64>,
    pub passed: bool,
    /// First failing entry or point, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Seed of the evaluation points.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Seed of the irreducible representations used, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub irrep_seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub(crate) fn exact(lemma: &str, group: String, subgroup: Option<String>) -> Self {
        Self {
            lemma: lemma.to_string(),
            group,
            subgroup,
            mode: CheckMode::Symbolic,
            n_points: 0,
            tolerance: 0.0,
            residual: 0.0,
            residuals: Vec::new(),
            passed: true,
            witness: None,
            seed: None,
            irrep_seed: None,
            elapsed_ms: None,
            notes: Vec::new(),
        }
    }

    pub(crate) fn pit(
        lemma: &str,
        group: String,
        subgroup: Option<String>,
        tolerance: f64,
        seed: u64,
    ) -> Self {
        Self {
            mode: CheckMode::Pit,
            tolerance,
            seed: Some(seed),
            ..Self::exact(lemma, group, subgroup)
        }
    }

    /// Records per-point residuals; fails at the first one above tolerance.
    pub(crate) fn record_residuals(&mut self, residuals: Vec<f64>) {
        self.n_points = residuals.len();
        self.residual = residuals.iter().copied().fold(0.0, f64::max);
        if let Some(i) = residuals.iter().position(|r| r.is_nan() || *r > self.tolerance) {
            self.fail(format!("point {i}: residual {:.3e}", residuals[i]));
        }
        self.residuals = residuals;
    }

    /// Records a failure with its witness; the first witness wins.
    pub(crate) fn fail(&mut self, witness: String) {
        self.passed = false;
        if self.witness.is_none() {
            self.witness = Some(witness);
        }
    }

    pub(crate) fn timed(mut self, start: std::time::Instant) -> Self {
        self.elapsed_ms = Some(start.elapsed().as_millis() as u64);
        self
    }

    /// Drops wall-clock data so reports of identical runs compare equal.
    pub fn without_timing(mut self) -> Self {
        self.elapsed_ms = None;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} on {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.lemma,
            self.group
        )?;
        if let Some(sub) = &self.subgroup {
            write!(f, " over {sub}")?;
        }
        write!(f, " [{}", self.mode)?;
        if self.mode == CheckMode::Pit {
            write!(f, ", {} points, residual {:.2e}", self.n_points, self.residual)?;
        }
        f.write_str("]")?;
        if let Some(w) = &self.witness {
            write!(f, " witness: {w}")?;
        }
        for note in &self.notes {
            write!(f, "\n  note: {note}")?;
        }
        Ok(())
    }
}
