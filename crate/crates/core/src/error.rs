use thiserror::Error;

/// Errors surfaced by the library.
///
/// The `*Violation` / `*Mismatch` variants signal a failed verification: a
/// computed structure contradicts an identity it is required to satisfy.
/// Callers (notably the CLI) treat those as verification failures rather than
/// usage errors.
#[derive(Debug, Error)]
pub enum Error {
    #[error("m = {m} is not a legal rank parameter for type {family}")]
    IllegalRank { family: char, m: u32 },

    #[error("invalid vertex {vertex} for {diagram}")]
    InvalidVertex { vertex: String, diagram: String },

    #[error("knitting identity failed for {vertex} at step {index}: {detail}")]
    IdentityViolation {
        vertex: String,
        index: u32,
        detail: String,
    },

    #[error("closed-form hull disagrees with the knitting oracle at {vertex}: {detail}")]
    OracleMismatch { vertex: String, detail: String },

    #[error("conflict relation is asymmetric between {left} and {right}")]
    AsymmetryDetected { left: String, right: String },

    #[error("maximal conflict-free subset fails the covering equation: {detail}")]
    CoveringViolation { detail: String },

    #[error("transport between quiver subsets and dissections failed: {detail}")]
    BijectionFailure { detail: String },

    #[error("crossing/Hom duality failed: {detail}")]
    DualityViolation { detail: String },

    #[error("b-sequence recursion disagrees with the closed form at index {index}: {recursion} vs {closed}")]
    RecursionMismatch {
        index: u32,
        recursion: String,
        closed: String,
    },

    #[error("power-series coefficient mismatch at order {order}: {lhs} vs {rhs}")]
    CoefficientMismatch {
        order: u32,
        lhs: String,
        rhs: String,
    },

    #[error("chord {p}-{q} of the {l}-gon is an edge or degenerate")]
    DegenerateChord { l: u32, p: u32, q: u32 },

    #[error("malformed results file: {0}")]
    SchemaViolation(String),

    #[error("window [{lo}, {hi}] does not contain marked vertex {vertex}")]
    WindowTooSmall { lo: i64, hi: i64, vertex: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
