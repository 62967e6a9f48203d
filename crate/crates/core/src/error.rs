//! Crate-wide error type and the process exit-code policy.
//!
//! The CLI maps every error to one of three exit codes, and tests probe the
//! mapping, so the policy lives next to the type:
//!
//! - **1 — falsification.** A mathematical guarantee the construction is
//!   supposed to maintain was observed broken at runtime. On valid input these
//!   variants are unreachable; if one fires, that is evidence of a bug in the
//!   implementation (or the underlying argument), never of a malformed input.
//!   Fault-injection tests exercise these paths deliberately.
//! - **2 — input rejected.** Parse errors, validation failures, and violated
//!   hypotheses (density, minimum degree, planarity against the given cycle).
//! - **3 — resource limit.** The run was stopped before an answer was reached.

use thiserror::Error;

/// What went wrong while reading one line of an input file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseKind {
    /// The line doesn't scan (wrong token count, not a number, bad marker…).
    Malformed(String),
    /// An edge u–u.
    SelfLoop,
    /// The same edge (or chord) listed twice.
    DuplicateEdge,
    /// A vertex id outside 0..n.
    IdOutOfRange { id: usize, n: usize },
}

impl std::fmt::Display for ParseKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParseKind::Malformed(msg) => write!(f, "malformed line: {msg}"),
            ParseKind::SelfLoop => write!(f, "self-loop"),
            ParseKind::DuplicateEdge => write!(f, "duplicate edge"),
            ParseKind::IdOutOfRange { id, n } => {
                write!(f, "vertex id {id} out of range (n = {n})")
            }
        }
    }
}

/// Everything that can go wrong across the library.
#[derive(Debug, Error)]
pub enum Error {
    // --- falsification events (exit 1) ------------------------------------

    /// A dominating set came out larger than the size the construction
    /// guarantees at that stage.
    #[error("size bound violated in {context}: |D| = {size} > {bound} (n = {n})")]
    BoundViolated {
        context: &'static str,
        n: usize,
        size: usize,
        bound: usize,
    },

    /// An exact outerplanar optimum broke the 4|D| ≤ n + t degree-two bound.
    #[error("outerplanar bound violated: {detail}")]
    TheoremViolated { detail: String },

    /// A lift-table lookup missed for a dominating set of the reduced graph.
    /// Tables are built exhaustively over feasible cases, so this cannot
    /// happen unless the frame or table was corrupted.
    #[error("case table miss in rule {rule}: mask {mask:#b}, side {side}")]
    CaseTableMiss { rule: String, mask: u32, side: char },

    /// Re-verification of an intermediate or final dominating set failed.
    #[error("certification failed at {stage}: {detail}")]
    CertificationFailed { stage: String, detail: String },

    /// Cycle normalization did not terminate within its proven step budget.
    #[error("cycle normalization stalled after {limit} rewirings")]
    NormalizationStalled { limit: usize },

    /// The reduction loop did not terminate within its proven step budget.
    #[error("reduction loop stalled after {limit} steps")]
    ReductionStalled { limit: usize },

    /// An internal invariant that the construction proves unreachable was
    /// reached anyway.
    #[error("internal invariant broken: {detail}")]
    Internal { detail: String },

    // --- input rejection (exit 2) ------------------------------------------

    #[error("line {line}: {kind}")]
    Parse { line: usize, kind: ParseKind },

    /// Miscellaneous structural rejection of otherwise well-formed input.
    #[error("invalid input: {detail}")]
    Invalid { detail: String },

    /// One or more validation checks failed; names are the report's.
    #[error("validation failed: {}", failed.join(", "))]
    ValidationFailed { failed: Vec<String> },

    /// The chords cannot be split to the two sides of the given cycle
    /// without a crossing, i.e. the graph is not planar with this cycle
    /// on the outer face.
    #[error("chords cannot be 2-colored against this cycle: {detail}")]
    NotPlanarWithThisCycle { detail: String },

    /// Exhaustive search proved there is no Hamilton cycle.
    #[error("no Hamilton cycle exists in this graph")]
    NoHamiltonCycle,

    /// A rewrite rule was applied at a position whose segments don't match
    /// the rule's pattern.
    #[error("rule {rule} does not match at position {position}")]
    PatternMismatch { rule: String, position: usize },

    /// A hat run of length ≥ 3; such inputs are outside the machinery's
    /// domain (normalization removes them before extraction).
    #[error("hat run of length ≥ 3 starting at position {position}")]
    RunTooLong { position: usize },

    /// Fewer hats than the ⌈(n+1)/2⌉ the reduction argument requires.
    #[error("hat density too low: {hats} hats on {n} vertices, need ≥ {need}")]
    DensityTooLow { n: usize, hats: usize, need: usize },

    /// A generator was asked for an object that provably does not exist.
    #[error("infeasible request: {detail}")]
    Infeasible { detail: String },

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    // --- resource limits (exit 3) ------------------------------------------

    /// Exact search refused: instance above its hard size cap.
    #[error("instance too large for exact search: n = {n} > {max}")]
    TooLarge { n: usize, max: usize },

    /// A bounded search ran out of its node budget.
    #[error("search budget of {budget} nodes exhausted")]
    BudgetExhausted { budget: u64 },

    /// Rejection sampling gave up.
    #[error("generator found no feasible instance in {attempts} attempts")]
    FeasibilityTimeout { attempts: u64 },
}

impl Error {
    /// The CLI exit code for this error. 1 is reserved for falsification
    /// events only; see the module docs.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BoundViolated { .. }
            | Error::TheoremViolated { .. }
            | Error::CaseTableMiss { .. }
            | Error::CertificationFailed { .. }
            | Error::NormalizationStalled { .. }
            | Error::ReductionStalled { .. }
            | Error::Internal { .. } => 1,

            Error::Parse { .. }
            | Error::Invalid { .. }
            | Error::ValidationFailed { .. }
            | Error::NotPlanarWithThisCycle { .. }
            | Error::NoHamiltonCycle
            | Error::PatternMismatch { .. }
            | Error::RunTooLong { .. }
            | Error::DensityTooLow { .. }
            | Error::Infeasible { .. }
            | Error::Io(_) => 2,

            Error::TooLarge { .. }
            | Error::BudgetExhausted { .. }
            | Error::FeasibilityTimeout { .. } => 3,
        }
    }

    /// True if this error is a falsification event (exit code 1).
    pub fn is_falsification(&self) -> bool {
        self.exit_code() == 1
    }
}

pub type Result<T> = std::result::Result<T, Error>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_partition_the_variants() {
        let one = Error::CaseTableMiss {
            rule: "MergeAa".into(),
            mask: 0b1,
            side: 'L',
        };
        let two = Error::Parse {
            line: 3,
            kind: ParseKind::SelfLoop,
        };
        let three = Error::TooLarge { n: 31, max: 30 };
        assert_eq!(one.exit_code(), 1, "table miss must be a falsification");
        assert_eq!(two.exit_code(), 2, "parse errors are input rejection");
        assert_eq!(three.exit_code(), 3, "size caps are resource limits");
        assert!(one.is_falsification());
        assert!(!two.is_falsification());
    }

    #[test]
    fn parse_errors_carry_the_line_number() {
        let err = Error::Parse {
            line: 17,
            kind: ParseKind::IdOutOfRange { id: 9, n: 6 },
        };
        let msg = err.to_string();
        assert!(msg.contains("17"), "message should name the line: {msg}");
        assert!(msg.contains("9"), "message should name the id: {msg}");
    }
}
