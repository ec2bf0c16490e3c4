use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::RatMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "Yes",
            Answer::No => "No",
            Answer::Unknown => "Unknown",
        })
    }
}

/// What backs a verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// A matrix `T` with `T·G_A = G_B` (checked through the truncation depth).
    Matrix(RatMatrix),
    /// A prime and depth where the truncations differ.
    Truncation { p: BigInt, j: u32 },
    /// A complete criterion that settles the question on its own.
    Criterion(String),
    /// The bounds that were exhausted without an answer.
    Exhausted { search_bound: u32, depth: u32 },
    /// A hypothesis of the available criteria that does not hold.
    Hypothesis(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub answer: Answer,
    pub witness: Option<Witness>,
    pub method: String,
    /// Truncation depth the answer depends on, if any.
    pub level: Option<u32>,
}

impl Verdict {
    pub fn yes(witness: Witness, method: &str) -> Self {
        Verdict { answer: Answer::Yes, witness: Some(witness), method: method.into(), level: None }
    }

    pub fn no(witness: Witness, method: &str) -> Self {
        Verdict { answer: Answer::No, witness: Some(witness), method: method.into(), level: None }
    }

    pub fn unknown(witness: Witness, method: &str) -> Self {
        Verdict { answer: Answer::Unknown, witness: Some(witness), method: method.into(), level: None }
    }

    pub fn at_level(mut self, j: u32) -> Self {
        self.level = Some(j);
        self
    }

    pub fn is_yes(&self) -> bool {
        self.answer == Answer::Yes
    }

    pub fn is_no(&self) -> bool {
        self.answer == Answer::No
    }

    /// Yes and No must carry a witness or criterion; Unknown must name the
    /// exhausted bound or the unmet hypothesis.
    pub fn is_well_formed(&self) -> bool {
        match (&self.answer, &self.witness) {
            (_, None) => false,
            (Answer::Unknown, Some(Witness::Exhausted { .. } | Witness::Hypothesis(_))) => true,
            (Answer::Unknown, _) => false,
            (_, Some(Witness::Exhausted { .. } | Witness::Hypothesis(_))) => false,
            _ => true,
        }
    }
}

/// Tuning knobs for the decision procedures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    /// Truncation depth `J`; `None` picks the default from the determinants.
    pub depth: Option<u32>,
    /// Height bound for witness searches.
    pub search_bound: u32,
    /// Wall-clock budget for the searches; exhausting it gives Unknown.
    pub time_budget_ms: u64,
    /// Only use complete criteria; everything else is Unknown.
    pub fast_path_only: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config { depth: None, search_bound: 2, time_budget_ms: 20_000, fast_path_only: false }
    }
}

/// The four equivalences between the odometers of `A` and `B`, plus
/// density of each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub config: Config,
    /// The truncation depth actually used.
    pub depth: u32,
    pub dense_a: Verdict,
    pub dense_b: Verdict,
    pub orbit_equivalent: Verdict,
    pub conjugate: Verdict,
    pub isomorphic: Verdict,
    pub cont_orbit_equivalent: Verdict,
    pub warnings: Vec<String>,
}

impl ClassificationReport {
    /// Verdicts from strongest to weakest relation.
    pub fn chain(&self) -> [(&'static str, &Verdict); 4] {
        [
            ("conjugate", &self.conjugate),
            ("isomorphic", &self.isomorphic),
            ("cont_orbit_equivalent", &self.cont_orbit_equivalent),
            ("orbit_equivalent", &self.orbit_equivalent),
        ]
    }

    /// Checks well-formedness of every verdict and that Yes propagates down
    /// and No propagates up the chain conjugate ⇒ isomorphic ⇒ COE ⇒ OE.
    pub fn validate(&self) -> Result<()> {
        let all = [
            ("dense_A", &self.dense_a),
            ("dense_B", &self.dense_b),
            ("orbit_equivalent", &self.orbit_equivalent),
            ("conjugate", &self.conjugate),
            ("isomorphic", &self.isomorphic),
            ("cont_orbit_equivalent", &self.cont_orbit_equivalent),
        ];
        for (name, v) in all {
            if !v.is_well_formed() {
                return Err(Error::InconsistentReport(format!("{name} verdict lacks a proper witness")));
            }
        }
        let chain = self.chain();
        for (i, (strong, vs)) in chain.iter().enumerate() {
            for (weak, vw) in &chain[i + 1..] {
                if vs.is_yes() && !vw.is_yes() {
                    return Err(Error::InconsistentReport(format!("{strong} is Yes but {weak} is {}", vw.answer)));
                }
                if vw.is_no() && !vs.is_no() {
                    return Err(Error::InconsistentReport(format!("{weak} is No but {strong} is {}", vs.answer)));
                }
            }
        }
        Ok(())
    }
}
