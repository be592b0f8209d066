//! Diagonals of the regular `l`-gon and the dissections matching maximal
//! 1-orthogonal subsets.
//!
//! Chord sets are tested against the type-dependent conditions: no interior
//! crossings (with the center allowed as an extra meeting point for type `D`),
//! dissection into triangles, and central symmetry for `B/C/D`. The
//! triangle condition is decided by Euler counting on the planar subdivision,
//! inserting the center as a vertex when at least two main diagonals are
//! present. The map `α` sends a quotient vertex `(i,j)` (tagged or not) to the
//! chord `{i mod l, j mod l}`; fork vertices land on main diagonals.

use std::collections::{BTreeMap, BTreeSet};

use crate::counting::binomial;
use crate::orthogonal::{build_conflict_graph, enumerate_maximal_orthogonal, OrthogonalSubset};
use crate::quiver::{DiagramSpec, Family, QuotientSpec, Vertex};
use crate::{Error, Result};

/// A diagonal of the regular `l`-gon, endpoints in `0..l`, never an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Chord {
    a: u32,
    b: u32,
}

impl Chord {
    /// Canonicalizes endpoints mod `l` and rejects edges and degenerate pairs.
    pub fn new(l: u32, p: u32, q: u32) -> Result<Chord> {
        assert!(l >= 4, "polygon needs at least 4 vertices");
        let a = p % l;
        let b = q % l;
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        let gap = b - a;
        if gap == 0 || gap == 1 || gap == l - 1 {
            return Err(Error::DegenerateChord { l, p, q });
        }
        Ok(Chord { a, b })
    }

    pub fn endpoints(&self) -> (u32, u32) {
        (self.a, self.b)
    }

    /// Main diagonals join antipodal vertices (even `l` only).
    pub fn is_main(&self, l: u32) -> bool {
        2 * (self.b - self.a) == l
    }

    pub fn rotate(&self, l: u32, k: u32) -> Chord {
        Chord::new(l, self.a + k, self.b + k).expect("rotation preserves chords")
    }

    /// Antipode under the half-turn.
    pub fn antipode(&self, l: u32) -> Chord {
        self.rotate(l, l / 2)
    }
}

impl std::fmt::Display for Chord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}-{}", self.a, self.b)
    }
}

/// How two chords of the same polygon meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Crossing {
    Disjoint,
    SharedEndpoint,
    CrossAtCenter,
    CrossInterior,
}

/// Cyclic-order interleaving test. Two distinct main diagonals always meet
/// exactly at the center; no other chord passes through it.
pub fn crossing(l: u32, c1: Chord, c2: Chord) -> Crossing {
    if c1 == c2 || c1.a == c2.a || c1.a == c2.b || c1.b == c2.a || c1.b == c2.b {
        return Crossing::SharedEndpoint;
    }
    let inside = |x: u32| c1.a < x && x < c1.b;
    if inside(c2.a) != inside(c2.b) {
        if c1.is_main(l) && c2.is_main(l) {
            Crossing::CrossAtCenter
        } else {
            Crossing::CrossInterior
        }
    } else {
        Crossing::Disjoint
    }
}

/// A chord set accepted by [`is_maximal_orthogonal_dissection`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Dissection {
    pub family: Family,
    pub l: u32,
    /// Sorted chord list.
    pub chords: Vec<Chord>,
}

fn condition_crossing(l: u32, chords: &[Chord], allow_center: bool) -> bool {
    for (k, &c1) in chords.iter().enumerate() {
        for &c2 in &chords[k + 1..] {
            match crossing(l, c1, c2) {
                Crossing::CrossInterior => return false,
                Crossing::CrossAtCenter if !allow_center => return false,
                _ => {}
            }
        }
    }
    true
}

fn condition_symmetric(l: u32, chords: &BTreeSet<Chord>) -> bool {
    chords.iter().all(|c| chords.contains(&c.antipode(l)))
}

/// Triangle condition via Euler counting. The planar subdivision has the `l`
/// polygon vertices (plus the center when `center_vertex`), the `l` sides,
/// the chords (main diagonals split in two at the center), and is connected,
/// so all bounded faces are triangles exactly when `2E − l = 3(E − V + 1)`.
fn condition_triangulated(l: u32, chords: &[Chord], center_vertex: bool) -> bool {
    let mains = chords.iter().filter(|c| c.is_main(l)).count() as i64;
    let v = l as i64 + i64::from(center_vertex);
    let e = l as i64 + chords.len() as i64 + if center_vertex { mains } else { 0 };
    2 * e - l as i64 == 3 * (e - v + 1)
}

/// Evaluates the family's condition set on a chord subset: no illegal
/// crossings, triangle dissection, and (for `B/C/D`) central symmetry. Type
/// `D` admits crossings at the center, which then becomes a subdivision
/// vertex once at least two main diagonals are present.
pub fn is_maximal_orthogonal_dissection(spec: &DiagramSpec, chords: &BTreeSet<Chord>) -> bool {
    let l = spec.l();
    let list: Vec<Chord> = chords.iter().copied().collect();
    let allow_center = spec.family() == Family::D;
    if !condition_crossing(l, &list, allow_center) {
        return false;
    }
    match spec.family() {
        Family::A => condition_triangulated(l, &list, false),
        Family::B | Family::C => {
            condition_symmetric(l, chords) && condition_triangulated(l, &list, false)
        }
        Family::D => {
            let mains = list.iter().filter(|c| c.is_main(l)).count();
            condition_symmetric(l, chords) && condition_triangulated(l, &list, mains >= 2)
        }
    }
}

/// All triangulations of the `l`-gon as chord sets, by apex recursion on the
/// base edge `(lo, hi)`. The outermost apex choice runs in parallel; results
/// are collected in apex order, so the output is deterministic.
fn triangulations(l: u32) -> Vec<BTreeSet<Chord>> {
    fn split(l: u32, lo: u32, hi: u32, k: u32) -> Vec<BTreeSet<Chord>> {
        let left = go(l, lo, k);
        let right = go(l, k, hi);
        let mut out = Vec::with_capacity(left.len() * right.len());
        for lt in &left {
            for rt in &right {
                let mut s: BTreeSet<Chord> = lt.union(rt).copied().collect();
                if k - lo >= 2 {
                    s.insert(Chord::new(l, lo, k).unwrap());
                }
                if hi - k >= 2 {
                    s.insert(Chord::new(l, k, hi).unwrap());
                }
                out.push(s);
            }
        }
        out
    }
    fn go(l: u32, lo: u32, hi: u32) -> Vec<BTreeSet<Chord>> {
        if hi - lo <= 2 {
            return vec![BTreeSet::new()];
        }
        (lo + 1..hi).flat_map(|k| split(l, lo, hi, k)).collect()
    }
    use rayon::prelude::*;
    if l <= 4 {
        return go(l, 0, l - 1);
    }
    (1..l - 1)
        .into_par_iter()
        .flat_map_iter(|k| split(l, 0, l - 1, k))
        .collect()
}

/// Symmetric atoms for the type-`D` search: single main diagonals and
/// antipodal pairs of non-main chords.
fn symmetric_atoms(l: u32) -> Vec<Vec<Chord>> {
    let mut atoms = Vec::new();
    for p in 0..l / 2 {
        atoms.push(vec![Chord::new(l, p, p + l / 2).unwrap()]);
    }
    let mut seen = BTreeSet::new();
    for a in 0..l {
        for b in a + 2..l {
            let Ok(c) = Chord::new(l, a, b) else { continue };
            if c.is_main(l) || seen.contains(&c) {
                continue;
            }
            let anti = c.antipode(l);
            seen.insert(c);
            seen.insert(anti);
            atoms.push(if c <= anti {
                vec![c, anti]
            } else {
                vec![anti, c]
            });
        }
    }
    atoms.sort();
    atoms
}

/// Exhaustive enumeration of the family's maximal 1-orthogonal chord subsets.
///
/// Type `A` enumerates triangulations by apex recursion. The symmetric
/// families backtrack over antipodal atoms (mains and chord pairs) with
/// crossing pruning, testing the triangle condition at every node — for `D`
/// because center-split dissections are not maximal in the compatibility
/// order, and for `B/C` because it skips the non-symmetric bulk of the
/// Catalan-many triangulations.
pub fn enumerate_dissections(spec: &DiagramSpec) -> Vec<Dissection> {
    let l = spec.l();
    let mut sets: Vec<BTreeSet<Chord>> = match spec.family() {
        Family::A => triangulations(l),
        Family::B | Family::C | Family::D => {
            let atoms = symmetric_atoms(l);
            let mut out = Vec::new();
            let mut current: Vec<Chord> = Vec::new();
            backtrack_atoms(spec, &atoms, 0, &mut current, &mut out);
            out
        }
    };
    sets.retain(|s| {
        let ok = is_maximal_orthogonal_dissection(spec, s);
        debug_assert!(ok || spec.family() != Family::A, "generator emitted junk");
        ok
    });
    let mut dissections: Vec<Dissection> = sets
        .into_iter()
        .map(|s| Dissection {
            family: spec.family(),
            l,
            chords: s.into_iter().collect(),
        })
        .collect();
    dissections.sort();
    dissections
}

fn backtrack_atoms(
    spec: &DiagramSpec,
    atoms: &[Vec<Chord>],
    from: usize,
    current: &mut Vec<Chord>,
    out: &mut Vec<BTreeSet<Chord>>,
) {
    let l = spec.l();
    let allow_center = spec.family() == Family::D;
    if !current.is_empty() {
        let set: BTreeSet<Chord> = current.iter().copied().collect();
        if is_maximal_orthogonal_dissection(spec, &set) {
            out.push(set);
        }
    }
    for idx in from..atoms.len() {
        let atom = &atoms[idx];
        let compatible = atom.iter().all(|&c| {
            current.iter().all(|&d| match crossing(l, c, d) {
                Crossing::CrossInterior => false,
                Crossing::CrossAtCenter => allow_center,
                _ => true,
            })
        });
        if !compatible {
            continue;
        }
        let len = current.len();
        current.extend(atom.iter().copied());
        backtrack_atoms(spec, atoms, idx + 1, current, out);
        current.truncate(len);
    }
}

/// The vertex-to-chord map `α` on the period-`l` quotient.
pub fn alpha(spec: &DiagramSpec, v: Vertex) -> Result<Chord> {
    spec.check(v)?;
    let l = spec.l();
    let p = v.i().rem_euclid(l as i64) as u32;
    let q = v.j().rem_euclid(l as i64) as u32;
    // Valid rows satisfy 2 ≤ j−i ≤ m+1 ≤ l−2, so the image is never an edge.
    Chord::new(l, p, q)
}

/// Chord image of a whole subset.
pub fn alpha_image(spec: &DiagramSpec, members: &[Vertex]) -> Result<Vec<Chord>> {
    let mut chords = BTreeSet::new();
    for &v in members {
        chords.insert(alpha(spec, v)?);
    }
    Ok(chords.into_iter().collect())
}

/// Outcome of transporting quiver-side subsets onto polygon dissections.
#[derive(Clone, Debug)]
pub struct TransportReport {
    pub quiver_count: usize,
    pub dissection_count: usize,
    /// Preimage count per dissection, aligned with `enumerate_dissections`.
    pub fibers: Vec<u32>,
    pub fiber_one: usize,
    pub fiber_two: usize,
    pub bijective: bool,
}

/// Verifies the transport theorem at level 1: a bijection for `A/B/C`, and
/// for `D` a surjection whose fiber over a dissection has size 1 exactly when
/// the dissection contains a single main diagonal, with fiber-1 count
/// `C(2m, m)` and the reconciliation
/// `quiver = fiber1 + 2·(dissections − fiber1)`.
pub fn transport_and_fibers(spec: &DiagramSpec) -> Result<TransportReport> {
    let subsets = enumerate_maximal_orthogonal(spec, 1)?;
    let dissections = enumerate_dissections(spec);
    transport_with(spec, &subsets, &dissections)
}

/// Same as [`transport_and_fibers`] but reusing already-enumerated sides.
pub fn transport_with(
    spec: &DiagramSpec,
    subsets: &[OrthogonalSubset],
    dissections: &[Dissection],
) -> Result<TransportReport> {
    let l = spec.l();
    let index: BTreeMap<&[Chord], usize> = dissections
        .iter()
        .enumerate()
        .map(|(k, d)| (d.chords.as_slice(), k))
        .collect();
    let mut fibers = vec![0u32; dissections.len()];
    for s in subsets {
        let image = alpha_image(spec, &s.members)?;
        let Some(&k) = index.get(image.as_slice()) else {
            return Err(Error::BijectionFailure {
                detail: format!(
                    "image [{}] of a maximal subset is not an enumerated dissection",
                    image
                        .iter()
                        .map(|c| c.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
            });
        };
        fibers[k] += 1;
    }
    if let Some(k) = fibers.iter().position(|&f| f == 0) {
        return Err(Error::BijectionFailure {
            detail: format!("dissection #{k} has no preimage"),
        });
    }
    match spec.family() {
        Family::A | Family::B | Family::C => {
            if subsets.len() != dissections.len() || fibers.iter().any(|&f| f != 1) {
                return Err(Error::BijectionFailure {
                    detail: format!(
                        "{}: expected a bijection, got {} subsets over {} dissections",
                        spec.name(),
                        subsets.len(),
                        dissections.len()
                    ),
                });
            }
        }
        Family::D => {
            for (k, d) in dissections.iter().enumerate() {
                let mains = d.chords.iter().filter(|c| c.is_main(l)).count();
                let want = if mains == 1 { 1 } else { 2 };
                if fibers[k] != want {
                    return Err(Error::BijectionFailure {
                        detail: format!(
                            "dissection #{k} has {mains} main diagonal(s) but fiber {}",
                            fibers[k]
                        ),
                    });
                }
            }
            let m = spec.m() as u64;
            let fiber_one = fibers.iter().filter(|&&f| f == 1).count();
            if fiber_one as u128 != binomial(2 * m, m) {
                return Err(Error::BijectionFailure {
                    detail: format!(
                        "fiber-1 count {} differs from C(2m,m) = {}",
                        fiber_one,
                        binomial(2 * m, m)
                    ),
                });
            }
            let reconciled = fiber_one + 2 * (dissections.len() - fiber_one);
            if reconciled != subsets.len() {
                return Err(Error::BijectionFailure {
                    detail: format!(
                        "reconciliation {} ≠ quiver count {}",
                        reconciled,
                        subsets.len()
                    ),
                });
            }
        }
    }
    let fiber_one = fibers.iter().filter(|&&f| f == 1).count();
    let fiber_two = fibers.iter().filter(|&&f| f == 2).count();
    Ok(TransportReport {
        quiver_count: subsets.len(),
        dissection_count: dissections.len(),
        fibers,
        fiber_one,
        fiber_two,
        bijective: spec.family() != Family::D,
    })
}

/// Exhaustive crossing/Hom duality check on `τ₂`-orbit pairs of the period-`l`
/// quotient: an orbit pair conflicts exactly when some pair of image chords
/// crosses away from the endpoints (the center counts as a crossing except
/// for type `D`, whose dissections admit it). For type `D` only mixed
/// trunk/fork pairs are comparable — same-kind pairs carry Hom data the chord
/// picture cannot see. Returns the number of pairs checked.
pub fn verify_crossing_duality(spec: &DiagramSpec) -> Result<usize> {
    let g = build_conflict_graph(spec, 1)?;
    let is_fork = |orbit: &[Vertex]| orbit[0].sign().is_some();
    let mut checked = 0;
    for a in 0..g.node_count() {
        for b in a + 1..g.node_count() {
            if spec.family() == Family::D && is_fork(&g.nodes[a]) == is_fork(&g.nodes[b]) {
                continue;
            }
            checked += 1;
            let conflict = g.edge(a, b);
            let chords_a = alpha_image(spec, &g.nodes[a])?;
            let chords_b = alpha_image(spec, &g.nodes[b])?;
            let crossing_found = chords_a.iter().any(|&c| {
                chords_b.iter().any(|&d| match crossing(spec.l(), c, d) {
                    Crossing::CrossInterior => true,
                    Crossing::CrossAtCenter => spec.family() != Family::D,
                    _ => false,
                })
            });
            if conflict != crossing_found {
                return Err(Error::DualityViolation {
                    detail: format!(
                        "orbits {:?} / {:?}: conflict={conflict}, chord crossing={crossing_found}",
                        g.nodes[a].iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                        g.nodes[b].iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                    ),
                });
            }
        }
    }
    Ok(checked)
}

/// `α` intertwines the residual `τ₂`-action with the polygon half-turn
/// (the identity for type `A`). Checked exhaustively over the quotient.
pub fn verify_alpha_equivariance(spec: &DiagramSpec) -> Result<()> {
    let q = QuotientSpec::for_level(*spec, 1);
    for v in q.vertices() {
        let lhs = alpha(spec, q.residual_apply(v))?;
        let rhs = match spec.family() {
            Family::A => alpha(spec, v)?,
            _ => alpha(spec, v)?.antipode(spec.l()),
        };
        if lhs != rhs {
            return Err(Error::BijectionFailure {
                detail: format!("α does not intertwine τ₂ at {v}: {lhs} vs {rhs}"),
            });
        }
    }
    // Injectivity on ⟨τ₂, σ⟩-orbits: the ⟨τ₂⟩-class of α(v) determines the
    // orbit. For type A the induced action on chords is the identity.
    let mut by_chord_orbit: BTreeMap<Vec<Chord>, BTreeSet<Vertex>> = BTreeMap::new();
    for v in q.vertices() {
        let c = alpha(spec, v)?;
        let mut key = match spec.family() {
            Family::A => vec![c],
            _ => vec![c, c.antipode(spec.l())],
        };
        key.sort();
        key.dedup();
        by_chord_orbit.entry(key).or_default().insert(v);
    }
    for (key, verts) in by_chord_orbit {
        // Close the vertex set under τ₂ and σ; it must be a single orbit.
        let mut orbit = BTreeSet::new();
        let start = *verts.iter().next().unwrap();
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            if orbit.insert(v) {
                stack.push(q.residual_apply(v));
                stack.push(q.project(spec.sigma(v)));
            }
        }
        if orbit != verts {
            return Err(Error::BijectionFailure {
                detail: format!(
                    "α not injective on ⟨τ₂,σ⟩-orbits at chord class {}",
                    key.iter()
                        .map(|c| c.to_string())
                        .collect::<Vec<_>>()
                        .join("/")
                ),
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::catalan_a;
    use crate::quiver::Sign;

    fn spec(f: Family, m: u32) -> DiagramSpec {
        DiagramSpec::new(f, m).unwrap()
    }

    fn chord(l: u32, a: u32, b: u32) -> Chord {
        Chord::new(l, a, b).unwrap()
    }

    #[test]
    fn chord_validity() {
        assert!(Chord::new(4, 0, 2).is_ok());
        assert!(matches!(
            Chord::new(4, 0, 1),
            Err(Error::DegenerateChord { .. })
        ));
        assert!(Chord::new(6, 5, 0).is_err()); // wrap-around edge
        assert!(Chord::new(6, 3, 3).is_err());
        assert!(chord(8, 0, 4).is_main(8));
        assert!(!chord(8, 0, 3).is_main(8));
        assert_eq!(chord(5, 3, 0), chord(5, 8, 5));
    }

    #[test]
    fn crossing_cases() {
        assert_eq!(
            crossing(4, chord(4, 0, 2), chord(4, 1, 3)),
            Crossing::CrossAtCenter
        );
        assert_eq!(
            crossing(6, chord(6, 0, 2), chord(6, 2, 4)),
            Crossing::SharedEndpoint
        );
        assert_eq!(
            crossing(6, chord(6, 0, 2), chord(6, 3, 5)),
            Crossing::Disjoint
        );
        assert_eq!(
            crossing(6, chord(6, 0, 3), chord(6, 2, 5)),
            Crossing::CrossAtCenter
        );
        assert_eq!(
            crossing(6, chord(6, 0, 3), chord(6, 2, 4)),
            Crossing::CrossInterior
        );
        // symmetric
        assert_eq!(
            crossing(6, chord(6, 2, 4), chord(6, 0, 3)),
            Crossing::CrossInterior
        );
    }

    #[test]
    fn dissection_predicate() {
        let a1 = spec(Family::A, 1);
        let single = BTreeSet::from([chord(4, 0, 2)]);
        assert!(is_maximal_orthogonal_dissection(&a1, &single));
        let crossing_pair = BTreeSet::from([chord(4, 0, 2), chord(4, 1, 3)]);
        assert!(!is_maximal_orthogonal_dissection(&a1, &crossing_pair));

        // All four main diagonals of the octagon satisfy the D conditions.
        let d4 = spec(Family::D, 3);
        let mains: BTreeSet<Chord> = (0..4).map(|p| chord(8, p, p + 4)).collect();
        assert!(is_maximal_orthogonal_dissection(&d4, &mains));
        // ...but they fail for B (center crossings) even though symmetric.
        let b3 = spec(Family::B, 3);
        assert!(!is_maximal_orthogonal_dissection(&b3, &mains));
        // Empty set never dissects into triangles.
        assert!(!is_maximal_orthogonal_dissection(&a1, &BTreeSet::new()));
    }

    #[test]
    fn triangulation_counts_match_catalan() {
        for l in 4..=9 {
            assert_eq!(triangulations(l).len() as u64, catalan_a(l), "l = {l}");
        }
    }

    #[test]
    fn dissection_counts() {
        for (f, m, want) in [
            (Family::A, 2, 5u64),
            (Family::A, 3, 14),
            (Family::B, 2, 6),
            (Family::C, 3, 20),
            (Family::D, 2, 10),
            (Family::D, 3, 35),
        ] {
            let s = spec(f, m);
            assert_eq!(enumerate_dissections(&s).len() as u64, want, "{}", s.name());
        }
    }

    #[test]
    fn dissections_closed_under_rotation() {
        for (f, m) in [(Family::A, 2), (Family::B, 2), (Family::D, 2)] {
            let s = spec(f, m);
            let all: BTreeSet<Vec<Chord>> = enumerate_dissections(&s)
                .into_iter()
                .map(|d| d.chords)
                .collect();
            for d in &all {
                for k in 1..s.l() {
                    let mut rot: Vec<Chord> = d.iter().map(|c| c.rotate(s.l(), k)).collect();
                    rot.sort();
                    assert!(all.contains(&rot));
                }
            }
        }
    }

    /// Multiset of orbit sizes of the dissection set under the `l` rotations.
    fn rotation_orbit_sizes(s: &DiagramSpec) -> Vec<usize> {
        let l = s.l();
        let all: BTreeSet<Vec<Chord>> = enumerate_dissections(s)
            .into_iter()
            .map(|d| d.chords)
            .collect();
        let mut seen: BTreeSet<Vec<Chord>> = BTreeSet::new();
        let mut sizes = Vec::new();
        for d in &all {
            if seen.contains(d) {
                continue;
            }
            let mut orbit = BTreeSet::new();
            for k in 0..l {
                let mut rot: Vec<Chord> = d.iter().map(|c| c.rotate(l, k)).collect();
                rot.sort();
                orbit.insert(rot);
            }
            sizes.push(orbit.len());
            seen.extend(orbit);
        }
        sizes.sort();
        sizes
    }

    #[test]
    fn rotation_orbit_breakdowns() {
        assert_eq!(rotation_orbit_sizes(&spec(Family::A, 2)), vec![5]);
        assert_eq!(rotation_orbit_sizes(&spec(Family::A, 3)), vec![2, 3, 3, 6]);
        assert_eq!(rotation_orbit_sizes(&spec(Family::B, 2)), vec![3, 3]);
        assert_eq!(
            rotation_orbit_sizes(&spec(Family::B, 3)),
            vec![4, 4, 4, 4, 4]
        );
        // D₃ splits as 6+3+1 (the 6 lumping two orbits of 3), D₄ as
        // 20+2+4+4+4+1 (the 20 lumping five orbits of 4).
        assert_eq!(rotation_orbit_sizes(&spec(Family::D, 2)), vec![1, 3, 3, 3]);
        assert_eq!(
            rotation_orbit_sizes(&spec(Family::D, 3)),
            vec![1, 2, 4, 4, 4, 4, 4, 4, 4, 4]
        );
    }

    #[test]
    fn main_diagonal_counts_in_dissections() {
        // B/C dissections contain exactly one main diagonal; D at least one.
        let b3 = spec(Family::B, 3);
        for d in enumerate_dissections(&b3) {
            assert_eq!(d.chords.iter().filter(|c| c.is_main(8)).count(), 1);
        }
        let d4 = spec(Family::D, 3);
        for d in enumerate_dissections(&d4) {
            assert!(d.chords.iter().filter(|c| c.is_main(8)).count() >= 1);
        }
    }

    #[test]
    fn alpha_values() {
        let a1 = spec(Family::A, 1);
        assert_eq!(alpha(&a1, Vertex::trunk(0, 2)).unwrap(), chord(4, 0, 2));
        let d4 = spec(Family::D, 3);
        let f = Vertex::fork(0, 4, Sign::Plus);
        let c = alpha(&d4, f).unwrap();
        assert_eq!(c, chord(8, 0, 4));
        assert!(c.is_main(8));
        let a2 = spec(Family::A, 2);
        assert_eq!(alpha(&a2, Vertex::trunk(3, 5)).unwrap(), chord(5, 3, 0));
    }

    #[test]
    fn transport_small() {
        for (f, m) in [(Family::A, 3), (Family::B, 2), (Family::C, 2)] {
            let s = spec(f, m);
            let r = transport_and_fibers(&s).unwrap();
            assert!(r.bijective);
            assert_eq!(r.quiver_count, r.dissection_count);
        }
        let d4 = spec(Family::D, 3);
        let r = transport_and_fibers(&d4).unwrap();
        assert_eq!(r.quiver_count, 50);
        assert_eq!(r.dissection_count, 35);
        assert_eq!(r.fiber_one, 20);
        assert_eq!(r.fiber_two, 15);
    }

    #[test]
    fn duality_and_equivariance_small() {
        for (f, m) in [
            (Family::A, 1),
            (Family::A, 3),
            (Family::B, 2),
            (Family::C, 2),
            (Family::D, 2),
            (Family::D, 3),
        ] {
            let s = spec(f, m);
            verify_crossing_duality(&s).unwrap();
            verify_alpha_equivariance(&s).unwrap();
        }
    }
}
