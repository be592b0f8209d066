//! Combinatorics of stable translation quivers of classical Dynkin type.
//!
//! The crate builds the quiver `ZΔ` for `Δ = A_m, B_m, C_m, D_{m+1}` in the
//! standard `(i, j)` coordinates, computes Hom-support hulls `H⁻(x)` / `H⁺(x)`
//! both by mesh knitting and by closed-form regions, enumerates maximal
//! n-orthogonal vertex subsets of the periodic quotient, and transports the
//! `n = 1` results onto diagonal dissections of the regular `l`-gon, where the
//! counts are Catalan-like closed forms.
//!
//! Module map:
//!
//! * [`quiver`] — diagram data, vertices, arrows, the automorphisms `τ`, `σ`,
//!   `ω`, `τ_n`, and translation quotients.
//! * [`knitting`] — the `θ` recursion on formal sums and the hulls it spans.
//! * [`orthogonal`] — conflict graphs and enumeration of maximal orthogonal
//!   subsets, with covering certification and orbit breakdowns.
//! * [`polygon`] — chords of the regular polygon, dissection conditions, the
//!   vertex-to-chord map `α`, and fiber bookkeeping.
//! * [`counting`] — exact count oracles (binomials, Catalan numbers, the
//!   half-integer `b`-sequence and its generating-function identity).
//! * [`render`] — deterministic ASCII and SVG pictures.
//! * [`results`] — the JSON persistence schema.
//!
//! Everything is pure and deterministic; no operation consumes randomness.

pub mod counting;
mod error;
pub mod knitting;
pub mod orthogonal;
pub mod polygon;
pub mod quiver;
pub mod render;
pub mod results;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
