use thiserror::Error;

use crate::types::Violation;

/// Errors raised by the library. The `module()` name is what the CLI prints
/// in front of a domain error.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid geometric type: {}", join_violations(.0))]
    InvalidType(Vec<Violation>),
    #[error("label ({i},{j}) out of range")]
    LabelOutOfRange { i: usize, j: usize },
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),

    #[error("incidence matrix is not binary")]
    NonBinary,
    #[error("symbol {symbol} out of range 1..={n}")]
    SymbolOutOfRange { symbol: usize, n: usize },
    #[error("empty code word")]
    EmptyWord,
    #[error("code {0} is not primitive (it is a proper power)")]
    NotPrimitive(String),
    #[error("inadmissible code {code}: transition {from}->{to} not allowed")]
    Inadmissible {
        code: String,
        from: usize,
        to: usize,
    },

    #[error("s-boundary code {0} cannot be used as a cut")]
    SBoundaryCode(String),
    #[error("u-boundary code {0} cannot be used as a cut")]
    UBoundaryCode(String),
    #[error("duplicate orbit {0} in code family")]
    DuplicateOrbit(String),
    #[error("intervals ({0}) and ({1}) are shift-equal")]
    ShiftEqual(String, String),
    #[error("intervals have different hosts {0} and {1}")]
    HostMismatch(usize, usize),
    #[error("type does not have the corner property")]
    NotCorner,
    #[error("P below P_B(T)={required} (got {given})")]
    PeriodBelowBoundary { given: usize, required: usize },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("branch composition along {0} is not a contraction")]
    NonContracting(String),
    #[error("exact tie between cut lines of {0} and {1}")]
    CutTie(String, String),
}

impl Error {
    /// Name of the module owning this error.
    pub fn module(&self) -> &'static str {
        use Error::*;
        match self {
            InvalidType(_) | LabelOutOfRange { .. } | IndexOutOfRange(_) => "geotype-core",
            NonBinary
            | SymbolOutOfRange { .. }
            | EmptyWord
            | NotPrimitive(_)
            | Inadmissible { .. } => "shift-space",
            SBoundaryCode(_)
            | UBoundaryCode(_)
            | DuplicateOrbit(_)
            | ShiftEqual(..)
            | HostMismatch(..)
            | NotCorner
            | PeriodBelowBoundary { .. }
            | Inconsistent(_) => "refine",
            NonContracting(_) | CutTie(..) => "affine-oracle",
        }
    }
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
