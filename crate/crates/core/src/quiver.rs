//! The stable translation quiver `ZΔ` for classical Dynkin types.
//!
//! Vertices carry the coordinates `(i, j)` with `2 ≤ j − i ≤ m + 1`; for type
//! `D` the top value `j − i = m + 1` is a doubled fork row whose vertices carry
//! a `±` tag. Arrows run `(i, j−1) → (i, j)` and `(i−1, j) → (i, j)`, with the
//! type-`D` fork attached to row `m` and the two non-simply-laced arrow layers
//! of `B_m`/`C_m` carrying the valuations `(1,2)` / `(2,1)`.
//!
//! The automorphisms are the translation `τ(i,j) = (i−1, j−1)` (fork tags kept),
//! the fork swap `σ`, and `ω`, given on type `A` by `ω(i,j) = (j−m−2, i+1)` and
//! on the other types by `σ(τσ)^m`. Composites are handled through a normal
//! form `τ^t ω^w σ^s` with `w ∈ {0,1}`, using `ω² = τ^{m+1}` (type `A`) or
//! `ω² = τ^{2m}` (other types).

use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// The four classical families. The rank subscript is `m` for `A/B/C` and
/// `m + 1` for `D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::A, Family::B, Family::C, Family::D];

    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            other => Err(Error::SchemaViolation(format!(
                "unknown family {other:?} (expected A, B, C or D)"
            ))),
        }
    }
}

/// Tag distinguishing the two fork vertices of a type-`D` column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn suffix(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// A vertex of `ZΔ`, stored as `(i, j − i, sign)` so row-range checks are O(1).
/// The plane coordinates are recovered through [`Vertex::i`] and [`Vertex::j`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    i: i64,
    row: u32,
    sign: Option<Sign>,
}

impl Vertex {
    /// Vertex `(i, j)` without a fork tag. Panics if `j ≤ i`; validity against
    /// a concrete diagram is checked by [`DiagramSpec::check`].
    pub fn trunk(i: i64, j: i64) -> Vertex {
        assert!(j > i, "vertex ({i},{j}) has nonpositive row");
        Vertex {
            i,
            row: (j - i) as u32,
            sign: None,
        }
    }

    /// Fork vertex `(i, j)_sign`.
    pub fn fork(i: i64, j: i64, sign: Sign) -> Vertex {
        assert!(j > i, "vertex ({i},{j}) has nonpositive row");
        Vertex {
            i,
            row: (j - i) as u32,
            sign: Some(sign),
        }
    }

    pub(crate) fn from_parts(i: i64, row: u32, sign: Option<Sign>) -> Vertex {
        Vertex { i, row, sign }
    }

    pub fn i(&self) -> i64 {
        self.i
    }

    pub fn j(&self) -> i64 {
        self.i + self.row as i64
    }

    /// The row `j − i`.
    pub fn row(&self) -> u32 {
        self.row
    }

    pub fn sign(&self) -> Option<Sign> {
        self.sign
    }

    /// Column shift by `k`, i.e. `τ^{-k}`.
    pub(crate) fn shift(&self, k: i64) -> Vertex {
        Vertex {
            i: self.i + k,
            ..*self
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j())?;
        if let Some(s) = self.sign {
            write!(f, "{}", s.suffix())?;
        }
        Ok(())
    }
}

impl FromStr for Vertex {
    type Err = Error;

    /// Parses the canonical serialization `(i,j)`, `(i,j)+` or `(i,j)-`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::SchemaViolation(format!("cannot parse vertex {s:?}"));
        let t = s.trim();
        let (t, sign) = match t.as_bytes().last() {
            Some(b'+') => (&t[..t.len() - 1], Some(Sign::Plus)),
            Some(b'-') => (&t[..t.len() - 1], Some(Sign::Minus)),
            _ => (t, None),
        };
        let t = t.strip_prefix('(').ok_or_else(bad)?;
        let t = t.strip_suffix(')').ok_or_else(bad)?;
        let (a, b) = t.split_once(',').ok_or_else(bad)?;
        let i: i64 = a.trim().parse().map_err(|_| bad())?;
        let j: i64 = b.trim().parse().map_err(|_| bad())?;
        if j <= i {
            return Err(bad());
        }
        Ok(Vertex {
            i,
            row: (j - i) as u32,
            sign,
        })
    }
}

/// A valued arrow of `ZΔ`. The first valuation component is the multiplicity
/// the source contributes to a mesh ending at the target.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub source: Vertex,
    pub target: Vertex,
    pub valuation: (u32, u32),
}

/// A classical diagram together with its derived constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DiagramSpec {
    family: Family,
    m: u32,
    l: u32,
    row_max: u32,
}

impl DiagramSpec {
    /// Builds the diagram data for `A_m`, `B_m`, `C_m` or `D_{m+1}`.
    ///
    /// Legal ranges: `m ≥ 1` for `A/B/C`, `m ≥ 2` for `D` (so the smallest
    /// type-`D` diagram is `D_3`).
    pub fn new(family: Family, m: u32) -> Result<DiagramSpec> {
        let min = if family == Family::D { 2 } else { 1 };
        if m < min {
            return Err(Error::IllegalRank {
                family: family.letter(),
                m,
            });
        }
        let l = match family {
            Family::A => m + 3,
            _ => 2 * m + 2,
        };
        Ok(DiagramSpec {
            family,
            m,
            l,
            row_max: m + 1,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// The quotient period `l`: `m + 3` for `A`, `2m + 2` otherwise.
    pub fn l(&self) -> u32 {
        self.l
    }

    /// Largest row value `j − i`; for `D` this is the fork row.
    pub fn row_max(&self) -> u32 {
        self.row_max
    }

    /// Rank subscript of the diagram name (`m`, or `m + 1` for `D`).
    pub fn rank(&self) -> u32 {
        match self.family {
            Family::D => self.m + 1,
            _ => self.m,
        }
    }

    /// Diagram name such as `A3` or `D4`.
    pub fn name(&self) -> String {
        format!("{}{}", self.family, self.rank())
    }

    /// Largest untagged row: `m + 1` for `A/B/C`, `m` for `D`.
    pub fn trunk_row_max(&self) -> u32 {
        match self.family {
            Family::D => self.m,
            _ => self.m + 1,
        }
    }

    /// Number of vertices in each column of `ZΔ`.
    pub fn slots_per_column(&self) -> u32 {
        match self.family {
            Family::D => self.m + 1,
            _ => self.m,
        }
    }

    /// `k` with `ω² = τ^k`.
    pub fn omega_sq_tau_power(&self) -> u32 {
        match self.family {
            Family::A => self.m + 1,
            _ => 2 * self.m,
        }
    }

    pub fn is_valid(&self, v: Vertex) -> bool {
        match (self.family, v.sign) {
            (Family::D, Some(_)) => v.row == self.m + 1,
            (Family::D, None) => 2 <= v.row && v.row <= self.m,
            (_, Some(_)) => false,
            (_, None) => 2 <= v.row && v.row <= self.m + 1,
        }
    }

    pub fn check(&self, v: Vertex) -> Result<()> {
        if self.is_valid(v) {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: v.to_string(),
                diagram: self.name(),
            })
        }
    }

    /// Validated vertex `(i, j)` (no fork tag).
    pub fn vertex(&self, i: i64, j: i64) -> Result<Vertex> {
        if j <= i {
            return Err(Error::InvalidVertex {
                vertex: format!("({i},{j})"),
                diagram: self.name(),
            });
        }
        let v = Vertex::trunk(i, j);
        self.check(v)?;
        Ok(v)
    }

    /// Validated fork vertex `(i, i+m+1)_sign`; type `D` only.
    pub fn fork_vertex(&self, i: i64, sign: Sign) -> Result<Vertex> {
        let v = Vertex::from_parts(i, self.m + 1, Some(sign));
        self.check(v)?;
        Ok(v)
    }

    /// Parses and validates the string form of a vertex.
    pub fn parse_vertex(&self, s: &str) -> Result<Vertex> {
        let v: Vertex = s.parse()?;
        self.check(v)?;
        Ok(v)
    }

    /// All vertices in column `i`, in canonical order.
    pub fn column_vertices(&self, i: i64) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.slots_per_column() as usize);
        for row in 2..=self.trunk_row_max() {
            out.push(Vertex::from_parts(i, row, None));
        }
        if self.family == Family::D {
            out.push(Vertex::from_parts(i, self.m + 1, Some(Sign::Plus)));
            out.push(Vertex::from_parts(i, self.m + 1, Some(Sign::Minus)));
        }
        out
    }

    /// All vertices with column in `lo..=hi`.
    pub fn window_vertices(&self, lo: i64, hi: i64) -> Vec<Vertex> {
        let mut out = Vec::new();
        for i in lo..=hi {
            out.extend(self.column_vertices(i));
        }
        out
    }

    /// Default verification window: width `3l`, centered at column 0.
    pub fn default_window(&self) -> (i64, i64) {
        let w = 3 * self.l as i64;
        let lo = -w / 2;
        (lo, lo + w - 1)
    }

    /// Valuation of the arrow from `from_row` to `to_row`. Only the two layers
    /// between rows `m` and `m + 1` of `B_m`/`C_m` differ from `(1,1)`; the
    /// orientation is pinned by the knitting identities (`B` carries `(1,2)`
    /// upward and `(2,1)` downward, `C` the transpose).
    fn valuation(&self, from_row: u32, to_row: u32) -> (u32, u32) {
        let m = self.m;
        match self.family {
            Family::B if from_row == m && to_row == m + 1 => (1, 2),
            Family::B if from_row == m + 1 && to_row == m => (2, 1),
            Family::C if from_row == m && to_row == m + 1 => (2, 1),
            Family::C if from_row == m + 1 && to_row == m => (1, 2),
            _ => (1, 1),
        }
    }

    pub(crate) fn preds(&self, v: Vertex) -> Vec<(Vertex, u32)> {
        debug_assert!(self.is_valid(v));
        let mut out = Vec::with_capacity(3);
        if v.sign.is_some() {
            // Fork vertices have the row-m vertex of the same column as their
            // unique predecessor.
            out.push((Vertex::from_parts(v.i, self.m, None), 1));
            return out;
        }
        let r = v.row;
        if r > 2 {
            let a = self.valuation(r - 1, r).0;
            out.push((Vertex::from_parts(v.i, r - 1, None), a));
        }
        if r < self.trunk_row_max() {
            let a = self.valuation(r + 1, r).0;
            out.push((Vertex::from_parts(v.i - 1, r + 1, None), a));
        }
        if self.family == Family::D && r == self.m {
            out.push((Vertex::from_parts(v.i - 1, self.m + 1, Some(Sign::Plus)), 1));
            out.push((
                Vertex::from_parts(v.i - 1, self.m + 1, Some(Sign::Minus)),
                1,
            ));
        }
        out
    }

    pub(crate) fn succs(&self, v: Vertex) -> Vec<(Vertex, u32)> {
        debug_assert!(self.is_valid(v));
        let mut out = Vec::with_capacity(3);
        if v.sign.is_some() {
            out.push((Vertex::from_parts(v.i + 1, self.m, None), 1));
            return out;
        }
        let r = v.row;
        if r < self.trunk_row_max() {
            let a = self.valuation(r, r + 1).0;
            out.push((Vertex::from_parts(v.i, r + 1, None), a));
        }
        if r > 2 {
            let a = self.valuation(r, r - 1).0;
            out.push((Vertex::from_parts(v.i + 1, r - 1, None), a));
        }
        if self.family == Family::D && r == self.m {
            out.push((Vertex::from_parts(v.i, self.m + 1, Some(Sign::Plus)), 1));
            out.push((Vertex::from_parts(v.i, self.m + 1, Some(Sign::Minus)), 1));
        }
        out
    }

    /// Arrow sources into `v` with the multiplicity they contribute to a mesh
    /// ending at `v`.
    pub fn predecessors(&self, v: Vertex) -> Result<Vec<(Vertex, u32)>> {
        self.check(v)?;
        Ok(self.preds(v))
    }

    /// Arrow targets out of `v` with the multiplicity `v` contributes there.
    pub fn successors(&self, v: Vertex) -> Result<Vec<(Vertex, u32)>> {
        self.check(v)?;
        Ok(self.succs(v))
    }

    /// Full valued arrows ending at `v`.
    pub fn arrows_into(&self, v: Vertex) -> Result<Vec<Arrow>> {
        self.check(v)?;
        Ok(self
            .preds(v)
            .into_iter()
            .map(|(source, _)| Arrow {
                source,
                target: v,
                valuation: self.valuation(source.row, v.row),
            })
            .collect())
    }

    /// Full valued arrows starting at `v`.
    pub fn arrows_out_of(&self, v: Vertex) -> Result<Vec<Arrow>> {
        self.check(v)?;
        Ok(self
            .succs(v)
            .into_iter()
            .map(|(target, _)| Arrow {
                source: v,
                target,
                valuation: self.valuation(v.row, target.row),
            })
            .collect())
    }

    /// The translation `τ`: one column to the left, fork tags kept.
    pub fn tau(&self, v: Vertex) -> Vertex {
        v.shift(-1)
    }

    pub fn tau_inv(&self, v: Vertex) -> Vertex {
        v.shift(1)
    }

    /// The fork swap; the identity on every untagged vertex (hence the
    /// identity for `A/B/C`).
    pub fn sigma(&self, v: Vertex) -> Vertex {
        Vertex {
            sign: v.sign.map(Sign::flip),
            ..v
        }
    }

    /// `ω`: the coordinate swap `(i,j) ↦ (j−m−2, i+1)` for type `A`, and
    /// `σ(τσ)^m` otherwise (so `τ^m` on untagged vertices, with the fork tag
    /// flipped exactly when `m` is even).
    pub fn omega(&self, v: Vertex) -> Vertex {
        let m = self.m as i64;
        match self.family {
            Family::A => {
                let i = v.i + v.row as i64 - (m + 2);
                let row = self.m + 3 - v.row;
                Vertex::from_parts(i, row, None)
            }
            Family::B | Family::C => v.shift(-m),
            Family::D => {
                let sign = if self.m.is_multiple_of(2) {
                    v.sign.map(Sign::flip)
                } else {
                    v.sign
                };
                Vertex {
                    i: v.i - m,
                    row: v.row,
                    sign,
                }
            }
        }
    }

    pub fn omega_inv(&self, v: Vertex) -> Vertex {
        let m = self.m as i64;
        match self.family {
            Family::A => {
                let i = v.i + v.row as i64 - 1;
                let row = self.m + 3 - v.row;
                Vertex::from_parts(i, row, None)
            }
            Family::B | Family::C => v.shift(m),
            Family::D => {
                let sign = if self.m.is_multiple_of(2) {
                    v.sign.map(Sign::flip)
                } else {
                    v.sign
                };
                Vertex {
                    i: v.i + m,
                    row: v.row,
                    sign,
                }
            }
        }
    }

    /// `τ_n = τ ω^{n-1}` for `n ≥ 1`; `τ_1 = τ`.
    pub fn tau_n(&self, v: Vertex, n: u32) -> Vertex {
        Automorphism::tau_n(self, n).apply(self, v)
    }
}

/// An automorphism of `ZΔ` in the normal form `τ^t ω^w σ^s` with `w ∈ {0,1}`,
/// reduced through `ω² = τ^k` and `σ² = 1`. The three generators commute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Automorphism {
    tau_pow: i64,
    omega: bool,
    sigma: bool,
}

impl Automorphism {
    pub fn identity() -> Automorphism {
        Automorphism {
            tau_pow: 0,
            omega: false,
            sigma: false,
        }
    }

    pub fn tau(k: i64) -> Automorphism {
        Automorphism {
            tau_pow: k,
            omega: false,
            sigma: false,
        }
    }

    pub fn omega() -> Automorphism {
        Automorphism {
            tau_pow: 0,
            omega: true,
            sigma: false,
        }
    }

    pub fn sigma() -> Automorphism {
        Automorphism {
            tau_pow: 0,
            omega: false,
            sigma: true,
        }
    }

    /// `τ_n = τ ω^{n-1}`, normalized.
    pub fn tau_n(spec: &DiagramSpec, n: u32) -> Automorphism {
        assert!(n >= 1, "tau_n is defined for n >= 1");
        let k = spec.omega_sq_tau_power() as i64;
        Automorphism {
            tau_pow: 1 + k * ((n as i64 - 1) / 2),
            omega: (n - 1) % 2 == 1,
            sigma: false,
        }
    }

    /// `Some(t)` when the automorphism is the pure translation `τ^t`.
    pub fn translation_part(&self) -> Option<i64> {
        (!self.omega && !self.sigma).then_some(self.tau_pow)
    }

    /// Composition `self ∘ other` (all generators commute, so the order only
    /// matters for reading).
    pub fn compose(self, other: Automorphism, spec: &DiagramSpec) -> Automorphism {
        let k = spec.omega_sq_tau_power() as i64;
        let w = u8::from(self.omega) + u8::from(other.omega);
        let sigma = match spec.family() {
            Family::D => self.sigma ^ other.sigma,
            _ => false,
        };
        Automorphism {
            tau_pow: self.tau_pow + other.tau_pow + k * (w / 2) as i64,
            omega: w % 2 == 1,
            sigma,
        }
    }

    pub fn inverse(self, spec: &DiagramSpec) -> Automorphism {
        let k = spec.omega_sq_tau_power() as i64;
        let tau_pow = if self.omega {
            -self.tau_pow - k
        } else {
            -self.tau_pow
        };
        Automorphism {
            tau_pow,
            omega: self.omega,
            sigma: self.sigma,
        }
    }

    pub fn apply(self, spec: &DiagramSpec, v: Vertex) -> Vertex {
        let mut v = v;
        if self.sigma {
            v = spec.sigma(v);
        }
        if self.omega {
            v = spec.omega(v);
        }
        // τ^t moves t columns to the left
        v.shift(-self.tau_pow)
    }
}

/// A quotient of `ZΔ` by the translation subgroup `⟨τ^p⟩`, together with the
/// residual automorphism the quotient inherits (for level `n`, the induced
/// `τ_{n+1}`-action, which is an involution since `τ_{n+1}² = τ^p`).
#[derive(Clone, Copy, Debug)]
pub struct QuotientSpec {
    base: DiagramSpec,
    period: u32,
    residual: Option<Automorphism>,
}

impl QuotientSpec {
    /// Plain quotient by `τ^p` with no residual action.
    pub fn by_translation(base: DiagramSpec, period: u32) -> QuotientSpec {
        assert!(period >= 1);
        QuotientSpec {
            base,
            period,
            residual: None,
        }
    }

    /// The quotient used when enumerating maximal `n`-orthogonal subsets:
    /// period `p` with `τ_{n+1}² = τ^p`, residual `τ_{n+1}`. For `n = 1` the
    /// period is `l` for every family.
    pub fn for_level(base: DiagramSpec, n: u32) -> QuotientSpec {
        assert!(n >= 1);
        let residual = Automorphism::tau_n(&base, n + 1);
        let square = residual.compose(residual, &base);
        let period = square
            .translation_part()
            .expect("tau_{n+1} squared is a pure translation");
        assert!(period > 0);
        let q = QuotientSpec {
            base,
            period: period as u32,
            residual: Some(residual),
        };
        // Residual action must square to the identity downstairs.
        debug_assert_eq!(period % q.period as i64, 0);
        q
    }

    pub fn base(&self) -> &DiagramSpec {
        &self.base
    }

    pub fn period(&self) -> u32 {
        self.period
    }

    pub fn residual(&self) -> Option<Automorphism> {
        self.residual
    }

    /// Canonical representative with `0 ≤ i < period`.
    pub fn project(&self, v: Vertex) -> Vertex {
        Vertex {
            i: v.i.rem_euclid(self.period as i64),
            ..v
        }
    }

    /// All canonical vertices of the quotient.
    pub fn vertices(&self) -> Vec<Vertex> {
        self.base.window_vertices(0, self.period as i64 - 1)
    }

    /// The residual automorphism applied downstairs.
    pub fn residual_apply(&self, v: Vertex) -> Vertex {
        match self.residual {
            Some(a) => self.project(a.apply(&self.base, v)),
            None => self.project(v),
        }
    }

    /// Orbit of a canonical vertex under the residual involution (size 1 or 2).
    pub fn orbit(&self, v: Vertex) -> Vec<Vertex> {
        let v = self.project(v);
        let w = self.residual_apply(v);
        if w == v {
            vec![v]
        } else if w < v {
            vec![w, v]
        } else {
            vec![v, w]
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(f: Family, m: u32) -> DiagramSpec {
        DiagramSpec::new(f, m).unwrap()
    }

    #[test]
    fn derived_constants() {
        assert_eq!(spec(Family::A, 2).l(), 5);
        assert_eq!(spec(Family::B, 2).l(), 6);
        assert_eq!(spec(Family::C, 3).l(), 8);
        assert_eq!(spec(Family::D, 3).l(), 8);
        assert_eq!(spec(Family::D, 3).name(), "D4");
        assert!(matches!(
            DiagramSpec::new(Family::D, 1),
            Err(Error::IllegalRank { family: 'D', m: 1 })
        ));
    }

    #[test]
    fn vertex_validity_and_slots() {
        let a2 = spec(Family::A, 2);
        assert!(a2.vertex(0, 2).is_ok());
        assert!(a2.vertex(0, 3).is_ok());
        assert!(a2.vertex(0, 4).is_err());
        assert!(a2.vertex(0, 1).is_err());
        let d4 = spec(Family::D, 3);
        assert!(d4.vertex(0, 3).is_ok());
        assert!(d4.vertex(0, 4).is_err()); // fork row needs a tag
        assert!(d4.fork_vertex(0, Sign::Plus).is_ok());
        assert_eq!(d4.slots_per_column(), 4);
        assert_eq!(d4.column_vertices(0).len(), 4);
        assert_eq!(a2.slots_per_column(), 2);
    }

    #[test]
    fn vertex_string_round_trip() {
        let v = Vertex::fork(-3, 1, Sign::Minus);
        assert_eq!(v.to_string(), "(-3,1)-");
        assert_eq!(v.to_string().parse::<Vertex>().unwrap(), v);
        let w = Vertex::trunk(0, 2);
        assert_eq!(w.to_string(), "(0,2)");
        assert_eq!("(0,2)".parse::<Vertex>().unwrap(), w);
        assert!("(2,0)".parse::<Vertex>().is_err());
        assert!("0,2".parse::<Vertex>().is_err());
    }

    #[test]
    fn predecessor_rules() {
        // Boundary row vertices of type A have a single predecessor.
        let a2 = spec(Family::A, 2);
        let v = a2.vertex(0, 3).unwrap();
        assert_eq!(a2.predecessors(v).unwrap(), vec![(Vertex::trunk(0, 2), 1)]);
        let a3 = spec(Family::A, 3);
        let v = a3.vertex(1, 3).unwrap();
        assert_eq!(a3.predecessors(v).unwrap(), vec![(Vertex::trunk(0, 3), 1)]);

        // Type D fork vertices have a unique neighbor in row m.
        let d4 = spec(Family::D, 3);
        let f = d4.fork_vertex(0, Sign::Plus).unwrap();
        assert_eq!(d4.predecessors(f).unwrap(), vec![(Vertex::trunk(0, 3), 1)]);
        // Row-m vertices pick up both fork vertices of the previous column.
        let v = d4.vertex(1, 4).unwrap();
        assert_eq!(
            d4.predecessors(v).unwrap(),
            vec![
                (Vertex::trunk(1, 3), 1),
                (Vertex::fork(0, 4, Sign::Plus), 1),
                (Vertex::fork(0, 4, Sign::Minus), 1),
            ]
        );
    }

    #[test]
    fn thick_arrow_valuations() {
        let b2 = spec(Family::B, 2);
        // Into the top row: coefficient 1 for B.
        let top = b2.vertex(0, 3).unwrap();
        assert_eq!(
            b2.predecessors(top).unwrap(),
            vec![(Vertex::trunk(0, 2), 1)]
        );
        // Into row m from the top row: coefficient 2 for B.
        let bot = b2.vertex(0, 2).unwrap();
        assert_eq!(
            b2.predecessors(bot).unwrap(),
            vec![(Vertex::trunk(-1, 2), 2)]
        );
        // C is the transpose.
        let c2 = spec(Family::C, 2);
        assert_eq!(
            c2.predecessors(top).unwrap(),
            vec![(Vertex::trunk(0, 2), 2)]
        );
        assert_eq!(
            c2.predecessors(bot).unwrap(),
            vec![(Vertex::trunk(-1, 2), 1)]
        );
    }

    #[test]
    fn pred_succ_consistency() {
        for (f, m) in [
            (Family::A, 3),
            (Family::B, 3),
            (Family::C, 2),
            (Family::D, 3),
            (Family::D, 4),
        ] {
            let s = spec(f, m);
            for v in s.window_vertices(-4, 4) {
                let preds = s.preds(v);
                assert!((1..=3).contains(&preds.len()), "{v} of {}", s.name());
                if v.sign().is_some() {
                    assert_eq!(preds.len(), 1);
                }
                for (p, a) in preds {
                    assert!(s.is_valid(p));
                    assert!(
                        s.succs(p).contains(&(v, a)),
                        "succ/pred mismatch at {p} -> {v}"
                    );
                }
                // Valuations transpose along the mesh: y -> x vs τx -> y.
                for arr in s.arrows_into(v).unwrap() {
                    let back = s.arrows_out_of(s.tau(v)).unwrap();
                    let rev = back.iter().find(|a| a.target == arr.source).unwrap();
                    assert_eq!(rev.valuation, (arr.valuation.1, arr.valuation.0));
                }
            }
        }
    }

    #[test]
    fn translation_and_sigma() {
        let a2 = spec(Family::A, 2);
        assert_eq!(a2.tau(Vertex::trunk(0, 3)), Vertex::trunk(-1, 2));
        let d4 = spec(Family::D, 3);
        let f = Vertex::fork(0, 4, Sign::Minus);
        assert_eq!(d4.tau(f), Vertex::fork(-1, 3, Sign::Minus));
        assert_eq!(d4.tau_inv(d4.tau(f)), f);
        assert_eq!(d4.sigma(f), Vertex::fork(0, 4, Sign::Plus));
        assert_eq!(d4.sigma(Vertex::trunk(0, 3)), Vertex::trunk(0, 3));
        assert_eq!(a2.sigma(Vertex::trunk(0, 2)), Vertex::trunk(0, 2));
    }

    #[test]
    fn omega_values() {
        let a2 = spec(Family::A, 2);
        assert_eq!(a2.omega(Vertex::trunk(0, 3)), Vertex::trunk(-1, 1));
        let b3 = spec(Family::B, 3);
        assert_eq!(b3.omega(Vertex::trunk(0, 2)), Vertex::trunk(-3, -1));
        // τ_2(0,3) in A_2 composes the two formulas.
        assert_eq!(a2.tau_n(Vertex::trunk(0, 3), 2), Vertex::trunk(-2, 0));
        assert_eq!(
            a2.tau_n(Vertex::trunk(0, 3), 1),
            a2.tau(Vertex::trunk(0, 3))
        );
    }

    #[test]
    fn omega_relations_exhaustive() {
        for (f, m) in [
            (Family::A, 1),
            (Family::A, 4),
            (Family::B, 2),
            (Family::C, 3),
            (Family::D, 2),
            (Family::D, 3),
            (Family::D, 4),
        ] {
            let s = spec(f, m);
            let k = s.omega_sq_tau_power() as i64;
            for v in s.window_vertices(-(3 * s.l() as i64) / 2, (3 * s.l() as i64) / 2) {
                assert!(s.is_valid(s.omega(v)));
                assert_eq!(s.omega_inv(s.omega(v)), v);
                // ω² = τ^{m+1} (A) or τ^{2m} (B/C/D)
                assert_eq!(s.omega(s.omega(v)), v.shift(-k));
                // pairwise commutation
                assert_eq!(s.omega(s.tau(v)), s.tau(s.omega(v)));
                assert_eq!(s.sigma(s.tau(v)), s.tau(s.sigma(v)));
                assert_eq!(s.sigma(s.omega(v)), s.omega(s.sigma(v)));
                // τ_2² = τ^l for every family
                let t2 = s.tau_n(s.tau_n(v, 2), 2);
                assert_eq!(t2, v.shift(-(s.l() as i64)));
            }
        }
    }

    #[test]
    fn automorphism_algebra() {
        let d4 = spec(Family::D, 3);
        let w = Automorphism::omega();
        let t = Automorphism::tau(5);
        let s = Automorphism::sigma();
        let e = w.compose(t, &d4).compose(s, &d4);
        let v = Vertex::fork(2, 6, Sign::Plus);
        assert_eq!(e.apply(&d4, v), d4.omega(d4.sigma(v)).shift(-5));
        assert_eq!(e.compose(e.inverse(&d4), &d4), Automorphism::identity());
        // τ_3 = τω²  = τ^{1+k}
        let t3 = Automorphism::tau_n(&d4, 3);
        assert_eq!(t3.translation_part(), Some(1 + 6));
    }

    #[test]
    fn quotient_projection() {
        let a1 = spec(Family::A, 1);
        let q = QuotientSpec::by_translation(a1, 4);
        assert_eq!(q.project(Vertex::trunk(5, 7)), Vertex::trunk(1, 3));
        let a2 = spec(Family::A, 2);
        let q = QuotientSpec::by_translation(a2, 5);
        assert_eq!(q.project(Vertex::trunk(-5, -3)), Vertex::trunk(0, 2));
        let d4 = spec(Family::D, 3);
        let q = QuotientSpec::by_translation(d4, 8);
        assert_eq!(
            q.project(Vertex::fork(9, 13, Sign::Plus)),
            Vertex::fork(1, 5, Sign::Plus)
        );
    }

    #[test]
    fn quotient_for_level_periods() {
        // n = 1 gives period l for every family.
        for (f, m) in [
            (Family::A, 2),
            (Family::B, 3),
            (Family::C, 2),
            (Family::D, 3),
        ] {
            let s = spec(f, m);
            let q = QuotientSpec::for_level(s, 1);
            assert_eq!(q.period(), s.l());
            // residual is an involution downstairs
            for v in q.vertices() {
                assert_eq!(q.residual_apply(q.residual_apply(v)), v);
            }
        }
        // n = 2: 2 + 2m(A: m+1)·2
        let a2 = spec(Family::A, 2);
        assert_eq!(QuotientSpec::for_level(a2, 2).period(), 2 + 2 * 3);
        let d4 = spec(Family::D, 3);
        assert_eq!(QuotientSpec::for_level(d4, 2).period(), 2 + 2 * 6);
    }

    #[test]
    fn projection_commutes_with_sigma_and_omega() {
        let d4 = spec(Family::D, 3);
        let q = QuotientSpec::for_level(d4, 1);
        for v in d4.window_vertices(-10, 10) {
            assert_eq!(q.project(d4.sigma(v)), d4.sigma(q.project(v)));
            assert_eq!(q.project(d4.omega(v)), q.project(d4.omega(q.project(v))));
        }
    }
}
