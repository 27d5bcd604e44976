//! Single error type shared by every module in the crate.

use alloc::string::String;
use core::fmt;

/// Everything that can go wrong in this crate.
///
/// Contract violations that indicate a caller bug (querying the mean of an
/// arm with zero pulls, say) panic instead of returning one of these; the
/// variants below are reachable through ordinary inputs.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A policy or selector was given an empty arm list.
    EmptyArms,
    /// A halving plan cannot fit one pull per surviving arm per phase.
    BudgetTooSmall { minimum: u64, got: u64 },
    /// Arm index outside `0..k`.
    ArmOutOfRange { arm: usize, k: usize },
    /// `update` called when no pull was pending, or for the wrong arm.
    UpdateMismatch { expected: Option<usize>, got: usize },
    /// A recommendation was requested while some arm had zero pulls.
    UnpulledArm { arm: usize },
    /// Regret checkpoints must satisfy `K <= c_1 < c_2 <= budget`.
    BadCheckpoints(String),
    /// Curves being aggregated disagree on their checkpoint grid.
    MismatchedCheckpoints,
    /// A time-to-iterations lookup fell outside the mapping table.
    TimeOutOfRange { ms: f64, lo: f64, hi: f64 },
    /// An unknown game id was requested.
    BadGameId(String),
    /// A move was applied that is not legal in the given position.
    IllegalMove(String),
    /// The exact solver visited more nodes than its configured limit.
    NodeLimitExceeded { limit: u64 },
    /// Search was asked to start from a finished game.
    TerminalRoot,
    /// A fixed-budget halving root was given a wall-clock budget.
    NotAnytime,
    /// Catch-all for malformed run configuration.
    BadConfig(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyArms => write!(f, "at least one arm is required"),
            Error::BudgetTooSmall { minimum, got } => write!(
                f,
                "budget too small: need at least {minimum} pulls, got {got}"
            ),
            Error::ArmOutOfRange { arm, k } => {
                write!(f, "arm {arm} out of range for {k} arms")
            }
            Error::UpdateMismatch { expected, got } => match expected {
                Some(e) => write!(f, "update for arm {got} but arm {e} was selected"),
                None => write!(f, "update for arm {got} without a preceding select"),
            },
            Error::UnpulledArm { arm } => {
                write!(f, "cannot recommend: arm {arm} was never pulled")
            }
            Error::BadCheckpoints(msg) => write!(f, "bad checkpoints: {msg}"),
            Error::MismatchedCheckpoints => {
                write!(f, "regret curves do not share a checkpoint grid")
            }
            Error::TimeOutOfRange { ms, lo, hi } => {
                write!(f, "{ms} ms outside the budget map range [{lo}, {hi}]")
            }
            Error::BadGameId(id) => write!(f, "unknown game id '{id}'"),
            Error::IllegalMove(m) => write!(f, "illegal move {m}"),
            Error::NodeLimitExceeded { limit } => {
                write!(f, "node limit exceeded ({limit} nodes)")
            }
            Error::TerminalRoot => write!(f, "search root is a terminal position"),
            Error::NotAnytime => write!(
                f,
                "not anytime: a fixed-budget halving schedule needs its iteration \
                 budget up front and cannot run against a wall-clock limit"
            ),
            Error::BadConfig(msg) => write!(f, "bad configuration: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
