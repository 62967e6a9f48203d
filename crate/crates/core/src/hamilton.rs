//! Hamiltonian cycle search and chord side assignment.
//!
//! The solver works on a cycle-with-chords structure, but inputs often arrive
//! as bare edge lists. This module bridges the gap: find a Hamiltonian cycle
//! by budgeted backtracking, then decide for every remaining edge which side
//! of that cycle it can live on. Two chords whose endpoints interleave around
//! the cycle must sit on opposite sides, so side assignment is exactly
//! 2-colouring the chord crossing graph; an odd conflict cycle proves the
//! graph has no plane embedding with this Hamiltonian cycle on the boundary.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{chords_cross, normalize_chord, Chord, ChordedCycle, RawGraph, Side};

/// Find a Hamiltonian cycle by depth-first backtracking, trying neighbours in
/// ascending order. `budget` caps the number of path extensions; exceeding it
/// reports `BudgetExhausted`, while exhausting the search space proves there
/// is no Hamiltonian cycle.
pub fn find_cycle(g: &RawGraph, budget: u64) -> Result<Vec<usize>> {
    let n = g.n();
    if n < 3 || (0..n).any(|v| g.degree(v) < 2) || !is_connected(g) {
        return Err(Error::NoHamiltonCycle);
    }
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    // Every Hamiltonian cycle passes through vertex 0, so root the search there.
    let mut path = vec![0usize];
    let mut cursor = vec![0usize];
    let mut visited = vec![false; n];
    visited[0] = true;
    let mut extensions: u64 = 0;
    while let Some(&v) = path.last() {
        if path.len() == n && g.has_edge(v, 0) {
            return Ok(path);
        }
        let next = {
            let i = cursor.last_mut().expect("cursor tracks path");
            let mut found = None;
            if path.len() < n {
                while *i < adj[v].len() {
                    let u = adj[v][*i];
                    *i += 1;
                    if !visited[u] {
                        found = Some(u);
                        break;
                    }
                }
            }
            found
        };
        match next {
            Some(u) => {
                extensions += 1;
                if extensions > budget {
                    return Err(Error::BudgetExhausted { budget });
                }
                visited[u] = true;
                path.push(u);
                cursor.push(0);
            }
            None => {
                path.pop();
                cursor.pop();
                visited[v] = false;
            }
        }
    }
    Err(Error::NoHamiltonCycle)
}

fn is_connected(g: &RawGraph) -> bool {
    let n = g.n();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = queue.pop_front() {
        for u in g.neighbors(v) {
            if !seen[u] {
                seen[u] = true;
                count += 1;
                queue.push_back(u);
            }
        }
    }
    count == n
}

/// Relabel `g` along `cycle` and assign every non-cycle edge to a side.
///
/// Crossing chords are forced onto opposite sides, so the assignment
/// 2-colours the crossing graph component by component (the lexicographically
/// smallest chord of each component goes inside, which makes the output
/// deterministic). An odd conflict cycle means no plane embedding has this
/// cycle as its boundary, reported as `NotPlanarWithThisCycle`. Runs in
/// O(m²) over the m chords.
pub fn split_chords(g: &RawGraph, cycle: &[usize]) -> Result<ChordedCycle> {
    let n = g.n();
    if cycle.len() != n {
        return Err(Error::Invalid {
            detail: format!("cycle lists {} vertices, graph has {n}", cycle.len()),
        });
    }
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in cycle.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return Err(Error::Invalid {
                detail: format!("cycle is not a permutation at entry {i} (vertex {v})"),
            });
        }
        pos[v] = i;
    }
    for i in 0..n {
        if !g.has_edge(cycle[i], cycle[(i + 1) % n]) {
            return Err(Error::Invalid {
                detail: format!("claimed cycle edge ({}, {}) is absent", cycle[i], cycle[(i + 1) % n]),
            });
        }
    }

    let mut chords: Vec<Chord> = g
        .edges()
        .into_iter()
        .filter_map(|(u, v)| {
            let (a, b) = (pos[u], pos[v]);
            let adjacent = (a + 1) % n == b || (b + 1) % n == a;
            (!adjacent).then(|| normalize_chord(a, b))
        })
        .collect();
    chords.sort_unstable();

    let m = chords.len();
    let mut conflicts = vec![Vec::new(); m];
    for i in 0..m {
        for j in i + 1..m {
            if chords_cross(chords[i], chords[j], n) {
                conflicts[i].push(j);
                conflicts[j].push(i);
            }
        }
    }

    let mut color: Vec<Option<Side>> = vec![None; m];
    for root in 0..m {
        if color[root].is_some() {
            continue;
        }
        color[root] = Some(Side::Inner);
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            let side = color[i].expect("queued chords are coloured");
            for &j in &conflicts[i] {
                match color[j] {
                    None => {
                        color[j] = Some(side.opposite());
                        queue.push_back(j);
                    }
                    Some(s) if s == side => {
                        return Err(Error::NotPlanarWithThisCycle {
                            detail: format!(
                                "chords {:?} and {:?} cross an odd chain of crossings",
                                chords[i], chords[j]
                            ),
                        });
                    }
                    Some(_) => {}
                }
            }
        }
    }

    let mut inner = Vec::new();
    let mut outer = Vec::new();
    for (chord, side) in chords.iter().zip(&color) {
        match side.expect("all chords coloured") {
            Side::Inner => inner.push(*chord),
            Side::Outer => outer.push(*chord),
        }
    }
    ChordedCycle::new(n, &inner, &outer).map_err(|e| Error::Internal {
        detail: format!("side split produced an invalid structure: {e}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testkit::octahedron;

    fn petersen() -> RawGraph {
        let mut g = RawGraph::new(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5).unwrap();
            g.add_edge(5 + i, 5 + (i + 2) % 5).unwrap();
            g.add_edge(i, 5 + i).unwrap();
        }
        g
    }

    #[test]
    fn octahedron_cycle_found_and_split() {
        let raw = octahedron().to_raw();
        let cycle = find_cycle(&raw, 1_000_000).unwrap();
        assert_eq!(cycle.len(), 6);
        let cc = split_chords(&raw, &cycle).unwrap();
        let report = cc.validate(true);
        assert!(report.overall, "{:?}", report.failed());
        // Same abstract graph after the round trip.
        let back = cc.to_raw();
        let relabeled: std::collections::BTreeSet<_> = back
            .edges()
            .into_iter()
            .map(|(a, b)| normalize_chord(cycle[a], cycle[b]))
            .collect();
        let original: std::collections::BTreeSet<_> = raw.edges().into_iter().collect();
        assert_eq!(relabeled, original);
    }

    #[test]
    fn petersen_has_no_hamilton_cycle() {
        assert!(matches!(find_cycle(&petersen(), 1_000_000), Err(Error::NoHamiltonCycle)));
    }

    #[test]
    fn cut_vertex_blocks_the_search_early() {
        // Two triangles sharing vertex 0.
        let mut g = RawGraph::new(5);
        for (u, v) in [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)] {
            g.add_edge(u, v).unwrap();
        }
        assert!(matches!(find_cycle(&g, 1_000_000), Err(Error::NoHamiltonCycle)));
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let raw = octahedron().to_raw();
        assert!(matches!(find_cycle(&raw, 2), Err(Error::BudgetExhausted { budget: 2 })));
    }

    #[test]
    fn k5_is_not_planar_with_any_cycle() {
        let mut g = RawGraph::new(5);
        for u in 0..5 {
            for v in u + 1..5 {
                g.add_edge(u, v).unwrap();
            }
        }
        let err = split_chords(&g, &[0, 1, 2, 3, 4]).unwrap_err();
        assert!(matches!(err, Error::NotPlanarWithThisCycle { .. }), "{err}");
    }

    #[test]
    fn bogus_cycles_are_rejected() {
        let raw = octahedron().to_raw();
        assert!(split_chords(&raw, &[0, 1, 2]).is_err(), "wrong length");
        assert!(split_chords(&raw, &[0, 0, 1, 2, 3, 4]).is_err(), "repeat");
        assert!(split_chords(&raw, &[0, 2, 4, 1, 3, 5]).is_err(), "non-edges");
    }
}
