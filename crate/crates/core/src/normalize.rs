//! Hamiltonian cycle normalization: eliminate triples of consecutive
//! 2-vertices.
//!
//! A 2-vertex (with respect to the current cycle) is a vertex whose degree on
//! one side is exactly 2 — equivalently, a vertex covered by a hat chord.
//! The downstream reduction machinery requires that no three consecutive
//! cycle vertices are all 2-vertices, and for δ ≥ 4 a different Hamiltonian
//! cycle of the *same* graph can always be chosen to guarantee that. This
//! module performs that exchange constructively.
//!
//! Each round locates the first maximal run of ≥ 3 consecutive 2-vertices
//! and rewires a short window of the cycle:
//!
//! - [`StepKind::PairSwap`] — a run of ≥ 4 starts w x y z; replace the path
//!   a w x y z b by a w y x z b. The hat chords over x and y become cycle
//!   edges and the edges (w,x), (y,z) become chords, so the graph is
//!   unchanged while w and z stop being 2-vertices.
//! - [`StepKind::TripleRotate`] — a run of exactly 3, x y z with successor b,
//!   where b keeps degree ≥ 4 on the side τ of z's hat chord (y,b): replace
//!   a x y z b by a x z y b.
//! - [`StepKind::FanDetour`] — same run, but b has exactly three τ-neighbours
//!   (y, z and its cycle successor). Then y's τ-chords fan consecutively over
//!   b = b₀, b₁, …; with f maximal such that y ~ b_f, replace
//!   a x y z b₀ … b_f by a x z b₀ … b_{f−1} y b_f.
//!
//! Every round strictly decreases the number of 2-vertices, which bounds the
//! loop by n rounds; the structure is rebuilt from the rewired cycle by
//! re-running the side split, and a composed relabeling maps results back to
//! the caller's vertex ids.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{ChordedCycle, Side};
use crate::hamilton::split_chords;

/// Which rewiring a normalization round applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StepKind {
    /// Swap the middle pair of a run of ≥ 4.
    PairSwap,
    /// Rotate a run of exactly 3 past a chord-rich successor.
    TripleRotate,
    /// Route the middle of a run of 3 around its successor's chord fan.
    FanDetour,
}

/// One normalization round, in the labels current at the time of the step.
#[derive(Debug, Clone, Serialize)]
pub struct NormalizeStep {
    pub kind: StepKind,
    /// First position of the violating run.
    pub start: usize,
    /// Length of the violating run (n when every vertex is a 2-vertex).
    pub run: usize,
    /// Fan length (f) for `FanDetour`, otherwise 0.
    pub fan: usize,
}

/// Result of normalization: the rewired structure plus the relabeling back
/// to the input. `labels[p]` is the input vertex sitting at position p of
/// the new cycle.
#[derive(Debug, Clone)]
pub struct Normalized {
    pub cycle: ChordedCycle,
    pub labels: Vec<usize>,
    pub steps: Vec<NormalizeStep>,
}

/// Positions whose vertex is a 2-vertex on some side.
fn two_vertex_flags(cc: &ChordedCycle) -> Vec<bool> {
    (0..cc.n())
        .map(|v| cc.is_two_vertex(v, Side::Inner) || cc.is_two_vertex(v, Side::Outer))
        .collect()
}

/// First maximal cyclic run of ≥ 3 consecutive 2-vertices, as (start, len).
fn find_violation(flags: &[bool]) -> Option<(usize, usize)> {
    let n = flags.len();
    if flags.iter().all(|&f| f) {
        return Some((0, n));
    }
    let mut best: Option<(usize, usize)> = None;
    for start in 0..n {
        if flags[start] && !flags[(start + n - 1) % n] {
            let mut len = 1;
            while flags[(start + len) % n] {
                len += 1;
            }
            if len >= 3 && best.is_none_or(|(s, _)| start < s) {
                best = Some((start, len));
            }
        }
    }
    best
}

/// Replace the given cycle (sequence of current positions) and re-split the
/// chords of the underlying graph around it.
fn rewire(cc: &ChordedCycle, new_cycle: &[usize]) -> Result<ChordedCycle> {
    split_chords(&cc.to_raw(), new_cycle).map_err(|e| Error::Internal {
        detail: format!("rewired cycle no longer splits: {e}"),
    })
}

/// Choose a Hamiltonian cycle of the same graph without three consecutive
/// 2-vertices. Requires a valid structure with δ ≥ 4 and no universal vertex
/// (a universal vertex dominates alone and needs no normalization).
pub fn normalize(input: &ChordedCycle) -> Result<Normalized> {
    let n = input.n();
    if input.universal_vertex().is_some() {
        return Err(Error::Invalid {
            detail: "normalization expects γ ≥ 2 (universal vertex present)".into(),
        });
    }
    let mut cc = input.clone();
    let mut labels: Vec<usize> = (0..n).collect();
    let mut steps = Vec::new();
    let cap = n * n;
    for _round in 0..cap {
        let flags = two_vertex_flags(&cc);
        let Some((start, run)) = find_violation(&flags) else {
            return Ok(Normalized { cycle: cc, labels, steps });
        };
        let before = flags.iter().filter(|&&f| f).count();
        let (kind, fan, new_cycle) = if run >= 4 {
            (StepKind::PairSwap, 0, pair_swap_cycle(&cc, start)?)
        } else {
            three_run_cycle(&cc, start)?
        };
        debug_assert_eq!(new_cycle.len(), n);
        cc = rewire(&cc, &new_cycle)?;
        labels = new_cycle.iter().map(|&p| labels[p]).collect();
        steps.push(NormalizeStep { kind, start, run, fan });
        let after = two_vertex_flags(&cc).iter().filter(|&&f| f).count();
        if after >= before {
            return Err(Error::Internal {
                detail: format!(
                    "2-vertex count did not drop in a normalization round ({before} -> {after})"
                ),
            });
        }
    }
    Err(Error::NormalizationStalled { limit: cap })
}

/// New cycle for a run of ≥ 4 starting at w: a w y x z b …
fn pair_swap_cycle(cc: &ChordedCycle, w: usize) -> Result<Vec<usize>> {
    let n = cc.n();
    let (x, y, z) = ((w + 1) % n, (w + 2) % n, (w + 3) % n);
    for (u, v) in [(w, y), (x, z)] {
        if !cc.has_edge(u, v) {
            return Err(Error::Internal {
                detail: format!("missing hat chord ({u}, {v}) under a 4-run"),
            });
        }
    }
    let mut cycle = vec![w, y, x, z];
    cycle.extend((4..n).map(|i| (w + i) % n));
    Ok(cycle)
}

/// New cycle for a run of exactly 3 starting at x, rotating or detouring
/// around the successor b depending on its τ-side richness.
fn three_run_cycle(cc: &ChordedCycle, x: usize) -> Result<(StepKind, usize, Vec<usize>)> {
    let n = cc.n();
    let (y, z) = ((x + 1) % n, (x + 2) % n);
    let a = (x + n - 1) % n;
    let b = (x + 3) % n;
    // z is a 2-vertex, so its hat chord (y, b) sits on exactly one side τ.
    let tau = [Side::Inner, Side::Outer]
        .into_iter()
        .find(|&s| cc.has_chord(s, y, b))
        .ok_or_else(|| Error::Internal {
            detail: format!("missing hat chord ({y}, {b}) over 2-vertex {z}"),
        })?;
    if !cc.has_edge(x, z) {
        return Err(Error::Internal {
            detail: format!("missing hat chord ({x}, {z}) over 2-vertex {y}"),
        });
    }
    if cc.side_degree(b, tau) >= 4 {
        // Rich: b keeps τ-degree ≥ 3 after losing the chord to y.
        let mut cycle = vec![x, z, y];
        cycle.extend((3..n).map(|i| (x + i) % n));
        return Ok((StepKind::TripleRotate, 0, cycle));
    }
    // Poor: b's τ-neighbourhood is exactly {z, y, b+1}, and the τ-face fan of
    // y marches along b = b₀, b₁, …; find the maximal prefix adjacent to y.
    let mut f = 0;
    loop {
        let next = (b + f + 1) % n;
        if next == a {
            // The fan consumed the whole remaining cycle; only a universal
            // vertex could do that, and that was excluded upfront.
            return Err(Error::Internal {
                detail: "chord fan wrapped around the cycle during a detour".into(),
            });
        }
        if cc.has_chord(tau, y, next) {
            f += 1;
        } else {
            break;
        }
    }
    if f == 0 {
        return Err(Error::Internal {
            detail: format!("vertex {b} is chord-poor but ({y}, {}) is missing", (b + 1) % n),
        });
    }
    // a x z b₀ … b_{f−1} y b_f …
    let mut cycle = vec![x, z];
    cycle.extend((0..f).map(|i| (b + i) % n));
    cycle.push(y);
    cycle.extend((3 + f..n).map(|i| (x + i) % n));
    Ok((StepKind::FanDetour, f, cycle))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::normalize_chord;
    use crate::testkit::{self, octahedron};
    use std::collections::BTreeSet;

    /// Edge set of `cc` mapped through `labels` back to input vertex ids.
    fn relabeled_edges(cc: &ChordedCycle, labels: &[usize]) -> BTreeSet<(usize, usize)> {
        cc.to_raw()
            .edges()
            .into_iter()
            .map(|(a, b)| normalize_chord(labels[a], labels[b]))
            .collect()
    }

    #[test]
    fn octahedron_is_already_normal() {
        let cc = octahedron();
        let norm = normalize(&cc).unwrap();
        assert!(norm.steps.is_empty());
        assert_eq!(norm.labels, (0..6).collect::<Vec<_>>());
        assert_eq!(norm.cycle, cc);
    }

    #[test]
    fn alternating_hexagon_needs_one_pair_swap() {
        // Rings of span-2 chords make every vertex a 2-vertex.
        let cc = ChordedCycle::new(6, &[(0, 2), (2, 4), (0, 4)], &[(1, 3), (3, 5), (1, 5)])
            .unwrap();
        let original = relabeled_edges(&cc, &(0..6).collect::<Vec<_>>());
        let norm = normalize(&cc).unwrap();
        assert_eq!(norm.steps.len(), 1);
        assert_eq!(norm.steps[0].kind, StepKind::PairSwap);
        assert_eq!(norm.steps[0].run, 6, "every vertex starts as a 2-vertex");
        assert!(find_violation(&two_vertex_flags(&norm.cycle)).is_none());
        assert_eq!(relabeled_edges(&norm.cycle, &norm.labels), original);
    }

    #[test]
    fn random_instances_normalize_and_preserve_the_graph() {
        for n in 6..=16 {
            for seed in 0..8 {
                let cc = testkit::gen::triangulation(n, seed, true).unwrap();
                if cc.universal_vertex().is_some() {
                    continue;
                }
                let original = relabeled_edges(&cc, &(0..n).collect::<Vec<_>>());
                let norm = normalize(&cc).unwrap_or_else(|e| {
                    panic!("n = {n}, seed = {seed}: normalization failed: {e}")
                });
                assert!(
                    find_violation(&two_vertex_flags(&norm.cycle)).is_none(),
                    "n = {n}, seed = {seed}: a 3-run survived"
                );
                assert!(
                    norm.cycle.validate(true).overall,
                    "n = {n}, seed = {seed}: invalid output structure"
                );
                assert_eq!(
                    relabeled_edges(&norm.cycle, &norm.labels),
                    original,
                    "n = {n}, seed = {seed}: the rewiring changed the graph"
                );
            }
        }
    }

    #[test]
    fn every_rewiring_kind_has_a_witness_instance() {
        let expect = [
            (9, 7, StepKind::TripleRotate),
            (9, 19, StepKind::FanDetour),
            (11, 4, StepKind::FanDetour),
        ];
        for (n, seed, kind) in expect {
            let cc = testkit::gen::triangulation(n, seed, true).unwrap();
            let norm = normalize(&cc).unwrap();
            assert!(
                norm.steps.iter().any(|s| s.kind == kind),
                "n = {n}, seed = {seed}: expected a {kind:?} round, got {:?}",
                norm.steps
            );
        }
        // The longer fan: two consecutive chords of the fan walked over.
        let cc = testkit::gen::triangulation(11, 4, true).unwrap();
        let norm = normalize(&cc).unwrap();
        assert!(norm.steps.iter().any(|s| s.kind == StepKind::FanDetour && s.fan == 2));
    }

    #[test]
    fn gamma_is_invariant_under_normalization() {
        for (n, seed) in [(8, 1), (10, 3), (12, 5), (14, 7)] {
            let cc = testkit::gen::triangulation(n, seed, true).unwrap();
            if cc.universal_vertex().is_some() {
                continue;
            }
            let norm = normalize(&cc).unwrap();
            let dense_before: testkit::DenseGraph = (&cc).into();
            let dense_after: testkit::DenseGraph = (&norm.cycle).into();
            let (before, _) = testkit::exact_gamma(&dense_before, None).unwrap();
            let (after, _) = testkit::exact_gamma(&dense_after, None).unwrap();
            assert_eq!(before, after, "n = {n}, seed = {seed}");
        }
    }
}

