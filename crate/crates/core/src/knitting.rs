//! Mesh knitting and Hom-support hulls.
//!
//! For a vertex `x`, the layer sums are `θ₀x = x`, `θ₁x = θx` (predecessors
//! weighted by the first valuation component) and
//! `θᵢx = (θθᵢ₋₁x − τθᵢ₋₂x)₊` for `i ≥ 2`, where `(·)₊` clamps negative
//! coefficients to zero. The sequence dies at index `l − 3`, its last nonzero
//! term is the single vertex `τ⁻¹ωx`, and the union of supports is `H⁻(x)`.
//! The knitting recursion is the authoritative oracle; the closed-form region
//! predicates below are the fast path and must agree with it.
//!
//! Closed form of `H⁻((i,j))`, writing `m` for the diagram parameter:
//!
//! * type `A`: the rectangle `j−m−1 ≤ a ≤ i`, `i+2 ≤ b ≤ j`;
//! * types `B/C` (and the untagged part for `D`): the notched hexagon
//!   `i−m+1 ≤ a ≤ i`, `j−m+1 ≤ b ≤ j`, excluding the corner notch, i.e.
//!   requiring `a ≤ j−m−1` or `b ≥ i+2`;
//! * type `D`, untagged origin: additionally both fork vertices
//!   `(p, p+m+1)_±` for `i−m+1 ≤ p ≤ j−m−1`;
//! * type `D`, fork origin `(i, i+m+1)_ε`: the box `i−m+1 ≤ a ≤ i`,
//!   `i+2 ≤ b ≤ i+m+1` on untagged rows, plus the alternating fork chain
//!   `(τσ)^p x` for `0 ≤ p < m`.
//!
//! `H⁺` is obtained from the adjunction `y ∈ H⁺(x) ⟺ x ∈ H⁻(y)` and the shift
//! law `H⁺(ωz) = H⁻(τz)`.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::quiver::{DiagramSpec, Family, Vertex};
use crate::{Error, Result};

/// A finite formal sum of vertices with nonnegative integer coefficients.
/// Zero coefficients are never stored, so the support is exactly the key set.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalSum {
    terms: BTreeMap<Vertex, u32>,
}

impl FormalSum {
    pub fn zero() -> FormalSum {
        FormalSum::default()
    }

    pub fn from_vertex(v: Vertex) -> FormalSum {
        let mut s = FormalSum::default();
        s.add_term(v, 1);
        s
    }

    pub fn add_term(&mut self, v: Vertex, c: u32) {
        if c == 0 {
            return;
        }
        *self.terms.entry(v).or_insert(0) += c;
    }

    pub fn add(&mut self, other: &FormalSum) {
        for (&v, &c) in &other.terms {
            self.add_term(v, c);
        }
    }

    pub fn coeff(&self, v: &Vertex) -> u32 {
        self.terms.get(v).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vertex, &u32)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Vertex> {
        self.terms.keys()
    }

    pub fn max_coeff(&self) -> u32 {
        self.terms.values().copied().max().unwrap_or(0)
    }

    /// Applies a vertex map to every term (used for τ, σ, ω images).
    pub fn map<F: Fn(Vertex) -> Vertex>(&self, f: F) -> FormalSum {
        let mut out = FormalSum::default();
        for (&v, &c) in &self.terms {
            out.add_term(f(v), c);
        }
        out
    }

    /// Pointwise `(self − other)₊` together with the clipped part
    /// `(other − self)₊`, i.e. the decomposition of the difference into
    /// positive and negative parts.
    pub fn saturating_sub(&self, other: &FormalSum) -> (FormalSum, FormalSum) {
        let mut pos = self.clone();
        let mut neg = FormalSum::default();
        for (&v, &c) in &other.terms {
            match pos.terms.entry(v) {
                Entry::Occupied(mut e) => {
                    let have = *e.get();
                    if have > c {
                        *e.get_mut() = have - c;
                    } else {
                        e.remove();
                        if c > have {
                            neg.add_term(v, c - have);
                        }
                    }
                }
                Entry::Vacant(_) => neg.add_term(v, c),
            }
        }
        (pos, neg)
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (v, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            if *c != 1 {
                write!(f, "{c}*")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// One application of `θ`: replaces every vertex by its weighted predecessors,
/// extended linearly over the monoid of formal sums.
pub fn theta_step(spec: &DiagramSpec, s: &FormalSum) -> FormalSum {
    let mut out = FormalSum::default();
    for (&v, &c) in s.iter() {
        for (p, a) in spec.preds(v) {
            out.add_term(p, c * a);
        }
    }
    out
}

/// The sequence `θ₀x, …, θ_{l−3}x` (the last entry is always zero).
pub fn theta_sequence(spec: &DiagramSpec, x: Vertex) -> Vec<FormalSum> {
    assert!(spec.is_valid(x), "seed {x} invalid for {}", spec.name());
    theta_sequence_of_sum(spec, &FormalSum::from_vertex(x))
}

/// The knitting recursion seeded with an arbitrary formal sum; `θᵢ` is a
/// monoid morphism, so this equals the termwise combination of the
/// single-vertex sequences.
pub fn theta_sequence_of_sum(spec: &DiagramSpec, s: &FormalSum) -> Vec<FormalSum> {
    let last = spec.l() as usize - 3;
    let mut seq = Vec::with_capacity(last + 1);
    seq.push(s.clone());
    if last >= 1 {
        seq.push(theta_step(spec, s));
    }
    for i in 2..=last {
        let stepped = theta_step(spec, &seq[i - 1]);
        let shifted = seq[i - 2].map(|v| spec.tau(v));
        let (next, _) = stepped.saturating_sub(&shifted);
        seq.push(next);
    }
    seq
}

/// Which side of the Hom pairing a hull describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HullSide {
    Minus,
    Plus,
}

/// A finite support hull around an origin vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hull {
    pub origin: Vertex,
    pub side: HullSide,
    pub members: BTreeSet<Vertex>,
}

impl Hull {
    fn assert_invariants(&self, spec: &DiagramSpec) {
        assert!(
            self.members.contains(&self.origin),
            "hull of {} misses its own origin",
            self.origin
        );
        let m = spec.m() as i64;
        let i = self.origin.i();
        for v in &self.members {
            match self.side {
                HullSide::Minus => assert!(
                    i - m <= v.i() && v.i() <= i,
                    "H-({}) member {v} outside column band",
                    self.origin
                ),
                HullSide::Plus => assert!(
                    i <= v.i() && v.i() <= i + 2 * m + 1,
                    "H+({}) member {v} outside column band",
                    self.origin
                ),
            }
        }
    }
}

/// `H⁻(x)` as the union of knitting supports; the authoritative oracle.
pub fn hull_minus_knit(spec: &DiagramSpec, x: Vertex) -> Hull {
    assert!(
        spec.is_valid(x),
        "hull origin {x} invalid for {}",
        spec.name()
    );
    let mut members = BTreeSet::new();
    for s in theta_sequence(spec, x) {
        members.extend(s.support().copied());
    }
    let hull = Hull {
        origin: x,
        side: HullSide::Minus,
        members,
    };
    hull.assert_invariants(spec);
    hull
}

/// Closed-form membership test `y ∈ H⁻(x)`.
// The bounds are kept in corner form to mirror the documented regions.
#[allow(clippy::int_plus_one)]
pub fn hull_minus_member(spec: &DiagramSpec, x: Vertex, y: Vertex) -> bool {
    debug_assert!(spec.is_valid(x) && spec.is_valid(y));
    let m = spec.m() as i64;
    let (i, j) = (x.i(), x.j());
    let (a, b) = (y.i(), y.j());
    match spec.family() {
        Family::A => j - m - 1 <= a && a <= i && i + 2 <= b && b <= j,
        Family::B | Family::C => hex_member(m, i, j, a, b),
        Family::D => match (x.sign(), y.sign()) {
            (None, None) => hex_member(m, i, j, a, b),
            (None, Some(_)) => i - m + 1 <= a && a <= j - m - 1,
            (Some(_), None) => i - m + 1 <= a && a <= i && i + 2 <= b && b <= j,
            (Some(sx), Some(sy)) => {
                let p = i - a;
                if !(0..m).contains(&p) {
                    return false;
                }
                let expect = if p % 2 == 0 { sx } else { sx.flip() };
                sy == expect
            }
        },
    }
}

/// The notched hexagon shared by `B/C` hulls and the untagged part of `D`
/// hulls: a column/row box minus the corner where both inner bounds fail.
#[allow(clippy::int_plus_one)]
fn hex_member(m: i64, i: i64, j: i64, a: i64, b: i64) -> bool {
    i - m + 1 <= a && a <= i && j - m + 1 <= b && b <= j && (a <= j - m - 1 || b >= i + 2)
}

/// `H⁻(x)` from the closed-form predicate.
pub fn hull_minus_closed(spec: &DiagramSpec, x: Vertex) -> Hull {
    assert!(
        spec.is_valid(x),
        "hull origin {x} invalid for {}",
        spec.name()
    );
    let m = spec.m() as i64;
    let mut members = BTreeSet::new();
    for v in spec.window_vertices(x.i() - m, x.i()) {
        if hull_minus_member(spec, x, v) {
            members.insert(v);
        }
    }
    let hull = Hull {
        origin: x,
        side: HullSide::Minus,
        members,
    };
    hull.assert_invariants(spec);
    hull
}

/// Closed-form hull, verified against the knitting oracle.
pub fn hull_minus_checked(spec: &DiagramSpec, x: Vertex) -> Result<Hull> {
    let knit = hull_minus_knit(spec, x);
    let closed = hull_minus_closed(spec, x);
    if knit.members != closed.members {
        let missing: Vec<String> = knit
            .members
            .difference(&closed.members)
            .map(|v| v.to_string())
            .collect();
        let extra: Vec<String> = closed
            .members
            .difference(&knit.members)
            .map(|v| v.to_string())
            .collect();
        return Err(Error::OracleMismatch {
            vertex: x.to_string(),
            detail: format!(
                "closed form misses [{}], adds [{}]",
                missing.join(", "),
                extra.join(", ")
            ),
        });
    }
    Ok(closed)
}

/// Membership test `y ∈ H⁺(x)`, through the shift law `H⁺(x) = H⁻(τω⁻¹x)`.
pub fn hull_plus_member(spec: &DiagramSpec, x: Vertex, y: Vertex) -> bool {
    hull_minus_member(spec, spec.tau(spec.omega_inv(x)), y)
}

/// `H⁺(x)`, computed by adjunction as `{y : x ∈ H⁻(y)}` over a sufficient
/// column window and cross-checked against the shift law.
pub fn hull_plus(spec: &DiagramSpec, x: Vertex) -> Hull {
    assert!(
        spec.is_valid(x),
        "hull origin {x} invalid for {}",
        spec.name()
    );
    let m = spec.m() as i64;
    let mut members = BTreeSet::new();
    for y in spec.window_vertices(x.i(), x.i() + 2 * m + 2) {
        if hull_minus_member(spec, y, x) {
            assert!(
                y.i() < x.i() + 2 * m + 2,
                "H+({x}) member {y} touches the scan boundary"
            );
            members.insert(y);
        }
    }
    let via_shift = hull_minus_knit(spec, spec.tau(spec.omega_inv(x))).members;
    assert_eq!(
        members,
        via_shift,
        "H+({x}) disagrees with H-(τω⁻¹x) for {}",
        spec.name()
    );
    let hull = Hull {
        origin: x,
        side: HullSide::Plus,
        members,
    };
    hull.assert_invariants(spec);
    hull
}

/// Summary of a knitting-identity sweep.
#[derive(Clone, Copy, Debug, Default)]
pub struct KnitReport {
    pub vertices_checked: usize,
    pub max_coefficient: u32,
}

/// Checks, for every vertex with column in `window`, that `θ_{l−3}x = 0`,
/// that `θ_{l−4}x` is the single vertex `τ⁻¹ωx` with coefficient 1, that the
/// clamp in the recursion only ever fires at step `l − 2` (where it clips
/// exactly `ωx`), and that all layer coefficients stay in `{0, 1, 2}`.
///
/// This sweep is the tripwire for the `B`/`C` valuation orientation and for
/// the type-`D` fork conventions.
pub fn verify_knit_identities(spec: &DiagramSpec, window: (i64, i64)) -> Result<KnitReport> {
    let l = spec.l();
    let mut report = KnitReport::default();
    for x in spec.window_vertices(window.0, window.1) {
        report.vertices_checked += 1;
        let mut seq = vec![FormalSum::from_vertex(x)];
        if l >= 4 {
            seq.push(theta_step(spec, &seq[0]));
        }
        for i in 2..=(l - 2) {
            let stepped = theta_step(spec, &seq[i as usize - 1]);
            let shifted = seq[i as usize - 2].map(|v| spec.tau(v));
            let (next, clipped) = stepped.saturating_sub(&shifted);
            if i <= l - 3 && !clipped.is_zero() {
                return Err(Error::IdentityViolation {
                    vertex: x.to_string(),
                    index: i,
                    detail: format!("clamp fired before step l-2, clipping {clipped}"),
                });
            }
            if i == l - 2 {
                let omega_x = FormalSum::from_vertex(spec.omega(x));
                if !next.is_zero() || clipped != omega_x {
                    return Err(Error::IdentityViolation {
                        vertex: x.to_string(),
                        index: i,
                        detail: format!(
                            "step l-2 produced {next} with clip {clipped}, expected 0 with clip {omega_x}"
                        ),
                    });
                }
            }
            seq.push(next);
        }
        for (i, s) in seq.iter().enumerate() {
            let c = s.max_coeff();
            report.max_coefficient = report.max_coefficient.max(c);
            if c > 2 {
                return Err(Error::IdentityViolation {
                    vertex: x.to_string(),
                    index: i as u32,
                    detail: format!("coefficient {c} exceeds 2 in {s}"),
                });
            }
        }
        let last = (l - 3) as usize;
        if !seq[last].is_zero() {
            return Err(Error::IdentityViolation {
                vertex: x.to_string(),
                index: l - 3,
                detail: format!("θ_(l-3) = {} is nonzero", seq[last]),
            });
        }
        let socle = FormalSum::from_vertex(spec.tau_inv(spec.omega(x)));
        if seq[last - 1] != socle {
            return Err(Error::IdentityViolation {
                vertex: x.to_string(),
                index: l - 4,
                detail: format!("θ_(l-4) = {}, expected {socle}", seq[last - 1]),
            });
        }
    }
    Ok(report)
}
