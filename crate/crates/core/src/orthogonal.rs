//! Maximal `n`-orthogonal subsets of the periodic quotient of `ZΔ`.
//!
//! A subset `S` is maximal `n`-orthogonal when its complement is exactly
//! `⋃_{x∈S, 0<i≤n} H⁻(τᵢx)`. Every such `S` is `τ_{n+1}`-invariant, so the
//! enumeration works over `τ_{n+1}`-orbits of the quotient by the translation
//! power `p` with `τ_{n+1}² = τ^p`: orbits conflict when one meets the
//! projected hull of the other, maximal conflict-free orbit unions are
//! enumerated Bron–Kerbosch style, and every result is then certified against
//! the covering equation (and its `H⁺` dual). Certification failure is an
//! error, not a filter — maximal conflict-free and maximal orthogonal coincide.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::counting;
use crate::knitting::hull_minus_knit;
use crate::quiver::{Automorphism, DiagramSpec, Family, QuotientSpec, Vertex};
use crate::{Error, Result};

/// Conflict structure on `τ_{n+1}`-orbits of quotient vertices.
#[derive(Clone, Debug)]
pub struct ConflictGraph {
    quotient: QuotientSpec,
    n: u32,
    /// Sorted orbits (size 1 or 2), sorted by first member.
    pub nodes: Vec<Vec<Vertex>>,
    /// Per node, the union of projected hulls `H⁻(τᵢx)` over its members and
    /// `0 < i ≤ n`; a node's conflict targets.
    hull_sets: Vec<BTreeSet<Vertex>>,
    adj: Vec<Vec<bool>>,
    pub self_conflicts: BTreeSet<usize>,
}

impl ConflictGraph {
    pub fn quotient(&self) -> &QuotientSpec {
        &self.quotient
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn edge(&self, a: usize, b: usize) -> bool {
        self.adj[a][b]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn hull_set(&self, a: usize) -> &BTreeSet<Vertex> {
        &self.hull_sets[a]
    }
}

/// Union over `0 < i ≤ n` of the projected hulls `H⁻(τᵢ x̃)` for a canonical
/// lift `x̃` of `x`.
fn projected_hull_union(q: &QuotientSpec, x: Vertex, n: u32) -> BTreeSet<Vertex> {
    let spec = q.base();
    let mut out = BTreeSet::new();
    for i in 1..=n {
        let shifted = spec.tau_n(x, i);
        for v in hull_minus_knit(spec, shifted).members {
            out.insert(q.project(v));
        }
    }
    out
}

/// Dual union `⋃ H⁺(τᵢ⁻¹ x̃)` projected, used for the dual covering law.
fn projected_dual_hull_union(q: &QuotientSpec, x: Vertex, n: u32) -> BTreeSet<Vertex> {
    let spec = q.base();
    let mut out = BTreeSet::new();
    for i in 1..=n {
        let z = Automorphism::tau_n(spec, i).inverse(spec).apply(spec, x);
        // H⁺(z) = H⁻(τω⁻¹z)
        let w = spec.tau(spec.omega_inv(z));
        for v in hull_minus_knit(spec, w).members {
            out.insert(q.project(v));
        }
    }
    out
}

/// Vertex-level conflict test: does `y` lie in some projected `H⁻(τᵢx)`,
/// `0 < i ≤ n`? Both vertices are taken in the level-`n` quotient.
pub fn conflict(spec: &DiagramSpec, n: u32, x: Vertex, y: Vertex) -> bool {
    let q = QuotientSpec::for_level(*spec, n);
    let x = q.project(x);
    let y = q.project(y);
    projected_hull_union(&q, x, n).contains(&y)
}

/// Builds the conflict graph over `τ_{n+1}`-orbits, asserting the exchange
/// symmetry of the relation.
pub fn build_conflict_graph(spec: &DiagramSpec, n: u32) -> Result<ConflictGraph> {
    assert!(n >= 1);
    let q = QuotientSpec::for_level(*spec, n);
    let mut seen = BTreeSet::new();
    let mut nodes = Vec::new();
    for v in q.vertices() {
        if seen.contains(&v) {
            continue;
        }
        let orbit = q.orbit(v);
        seen.extend(orbit.iter().copied());
        nodes.push(orbit);
    }
    nodes.sort();

    let hull_sets: Vec<BTreeSet<Vertex>> = nodes
        .par_iter()
        .map(|orbit| {
            let mut set = BTreeSet::new();
            for &x in orbit {
                set.extend(projected_hull_union(&q, x, n));
            }
            set
        })
        .collect();

    let hits = |a: usize, b: usize| nodes[b].iter().any(|v| hull_sets[a].contains(v));
    let k = nodes.len();
    let adj: Vec<Vec<bool>> = (0..k)
        .into_par_iter()
        .map(|a| (0..k).map(|b| hits(a, b)).collect())
        .collect();
    let mut self_conflicts = BTreeSet::new();
    for a in 0..k {
        for b in a..k {
            if adj[a][b] != adj[b][a] {
                return Err(Error::AsymmetryDetected {
                    left: format!(
                        "{:?}",
                        nodes[a].iter().map(|v| v.to_string()).collect::<Vec<_>>()
                    ),
                    right: format!(
                        "{:?}",
                        nodes[b].iter().map(|v| v.to_string()).collect::<Vec<_>>()
                    ),
                });
            }
        }
        if adj[a][a] {
            self_conflicts.insert(a);
        }
    }

    Ok(ConflictGraph {
        quotient: q,
        n,
        nodes,
        hull_sets,
        adj,
        self_conflicts,
    })
}

/// A certified maximal `n`-orthogonal subset of the quotient.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct OrthogonalSubset {
    /// Sorted member vertices (canonical quotient representatives).
    pub members: Vec<Vertex>,
    pub conflict_free: bool,
    pub covering: bool,
    pub tau_invariant: bool,
}

/// Fixed-width bitset over node indices.
#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Bits {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn count_and(&self, other: &Bits) -> u32 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a & b).count_ones())
            .sum()
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64).filter_map(move |b| (bits >> b & 1 == 1).then_some(w * 64 + b))
        })
    }
}

/// Pivoted Bron–Kerbosch over the complement graph: emits every maximal
/// independent set of the conflict graph (restricted to nodes without
/// self-conflicts).
fn maximal_independent_sets(g: &ConflictGraph) -> Vec<Vec<usize>> {
    let k = g.node_count();
    let mut comp: Vec<Bits> = Vec::with_capacity(k);
    for a in 0..k {
        let mut row = Bits::empty(k);
        if !g.self_conflicts.contains(&a) {
            for b in 0..k {
                if b != a && !g.edge(a, b) && !g.self_conflicts.contains(&b) {
                    row.set(b);
                }
            }
        }
        comp.push(row);
    }
    let mut p = Bits::empty(k);
    for a in 0..k {
        if !g.self_conflicts.contains(&a) {
            p.set(a);
        }
    }
    let x = Bits::empty(k);

    // Root branches are independent once the earlier candidates are moved
    // from P to X, so they can run in parallel and be collected in order.
    let roots = branch_order(&comp, &p, &x);
    let branches: Vec<(usize, Bits, Bits)> = {
        let mut out = Vec::new();
        let mut p = p.clone();
        let mut x = x.clone();
        for v in roots {
            out.push((v, p.and(&comp[v]), x.and(&comp[v])));
            p.clear(v);
            x.set(v);
        }
        out
    };
    let mut results: Vec<Vec<Vec<usize>>> = branches
        .into_par_iter()
        .map(|(v, p, mut x)| {
            let mut out = Vec::new();
            let mut r = vec![v];
            bron_kerbosch(&comp, &mut r, p, &mut x, &mut out);
            out
        })
        .collect();
    let mut flat: Vec<Vec<usize>> = results.drain(..).flatten().collect();
    if flat.is_empty() && !p.is_empty() {
        unreachable!("nonempty candidate set must yield a maximal set");
    }
    flat.sort();
    flat
}

/// Candidates to branch on: `P \ N(pivot)` with the pivot maximizing coverage.
fn branch_order(comp: &[Bits], p: &Bits, x: &Bits) -> Vec<usize> {
    let pivot = p
        .ones()
        .chain(x.ones())
        .max_by_key(|&u| (comp[u].count_and(p), std::cmp::Reverse(u)));
    match pivot {
        None => Vec::new(),
        Some(u) => p.ones().filter(|&v| !comp[u].get(v)).collect(),
    }
}

fn bron_kerbosch(
    comp: &[Bits],
    r: &mut Vec<usize>,
    p: Bits,
    x: &mut Bits,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() && x.is_empty() {
        out.push(r.clone());
        return;
    }
    let mut p = p;
    for v in branch_order(comp, &p, x) {
        r.push(v);
        let mut x_next = x.and(&comp[v]);
        bron_kerbosch(comp, r, p.and(&comp[v]), &mut x_next, out);
        r.pop();
        p.clear(v);
        x.set(v);
    }
}

/// Enumerates all maximal `n`-orthogonal subsets of the level-`n` quotient,
/// certified against the covering equation and its `H⁺` dual, sorted by
/// member list.
pub fn enumerate_maximal_orthogonal(spec: &DiagramSpec, n: u32) -> Result<Vec<OrthogonalSubset>> {
    let g = build_conflict_graph(spec, n)?;
    let q = g.quotient;
    let universe: BTreeSet<Vertex> = q.vertices().into_iter().collect();
    let sets = maximal_independent_sets(&g);

    let dual_sets: Vec<BTreeSet<Vertex>> = g
        .nodes
        .par_iter()
        .map(|orbit| {
            let mut set = BTreeSet::new();
            for &x in orbit {
                set.extend(projected_dual_hull_union(&q, x, n));
            }
            set
        })
        .collect();

    let mut subsets = Vec::with_capacity(sets.len());
    for node_ids in sets {
        let mut members = BTreeSet::new();
        let mut covered = BTreeSet::new();
        let mut dual_covered = BTreeSet::new();
        for &a in &node_ids {
            members.extend(g.nodes[a].iter().copied());
            covered.extend(g.hull_sets[a].iter().copied());
            dual_covered.extend(dual_sets[a].iter().copied());
        }
        let complement: BTreeSet<Vertex> = universe.difference(&members).copied().collect();
        if covered != complement {
            return Err(Error::CoveringViolation {
                detail: format!(
                    "subset {{{}}} covers {} of {} complement vertices",
                    members
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(", "),
                    covered.intersection(&complement).count(),
                    complement.len()
                ),
            });
        }
        if dual_covered != complement {
            return Err(Error::CoveringViolation {
                detail: format!(
                    "subset of size {} fails the dual (H+) covering law",
                    members.len()
                ),
            });
        }
        let tau_invariant = members
            .iter()
            .all(|&v| members.contains(&q.residual_apply(v)));
        assert!(tau_invariant, "orbit unions are residual-invariant");
        subsets.push(OrthogonalSubset {
            members: members.into_iter().collect(),
            conflict_free: true,
            covering: true,
            tau_invariant,
        });
    }
    subsets.sort();
    Ok(subsets)
}

/// An orbit class of results under the `⟨τ, σ⟩`-action on the quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitClass {
    /// Lexicographically smallest member subset of the class.
    pub representative: Vec<Vertex>,
    pub size: usize,
}

/// Partitions enumerated subsets under the induced `⟨τ, σ⟩`-action. The sum
/// of class sizes equals the total count.
pub fn orbit_classes(spec: &DiagramSpec, results: &[OrthogonalSubset]) -> Vec<OrbitClass> {
    let n_level = 1; // orbit breakdowns are only used for level-1 results
    let q = QuotientSpec::for_level(*spec, n_level);
    let p = q.period() as i64;
    let index: BTreeMap<&[Vertex], usize> = results
        .iter()
        .enumerate()
        .map(|(k, s)| (s.members.as_slice(), k))
        .collect();

    let transforms: Vec<(i64, bool)> = {
        let sigmas: &[bool] = if spec.family() == Family::D {
            &[false, true]
        } else {
            &[false]
        };
        (0..p)
            .flat_map(|shift| sigmas.iter().map(move |&s| (shift, s)))
            .collect()
    };

    let mut seen = vec![false; results.len()];
    let mut classes = Vec::new();
    for (k, subset) in results.iter().enumerate() {
        if seen[k] {
            continue;
        }
        let mut class_members = BTreeSet::new();
        for &(shift, flip) in &transforms {
            let image: Vec<Vertex> = subset
                .members
                .iter()
                .map(|&w| {
                    let w = if flip { spec.sigma(w) } else { w };
                    q.project(w.shift(-shift)) // τ^shift
                })
                .collect::<BTreeSet<Vertex>>()
                .into_iter()
                .collect();
            let idx = *index
                .get(image.as_slice())
                .expect("the automorphism action permutes the result set");
            class_members.insert(idx);
        }
        let representative = class_members
            .iter()
            .map(|&idx| results[idx].members.clone())
            .min()
            .unwrap();
        for &idx in &class_members {
            seen[idx] = true;
        }
        classes.push(OrbitClass {
            representative,
            size: class_members.len(),
        });
    }
    classes.sort_by(|a, b| a.representative.cmp(&b.representative));
    assert_eq!(
        classes.iter().map(|c| c.size).sum::<usize>(),
        results.len(),
        "orbit sizes must add up to the total count"
    );
    classes
}

/// Closed-form count of maximal 1-orthogonal subsets (the quiver side).
pub fn expected_count(spec: &DiagramSpec) -> u64 {
    counting::expected_counts(spec).quiver
}
