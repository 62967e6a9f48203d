//! Graph types: a plain adjacency graph and a cycle-with-chords view.
//!
//! `ChordedCycle` is the central representation: vertices are positions
//! 0..n−1 around a (Hamilton) cycle, and every non-cycle edge is a chord
//! assigned to one of two sides, `Inner` or `Outer`. A triangulation of the
//! disc on each side shows up as exactly n−3 pairwise non-crossing chords per
//! side.
//!
//! Construction (`new`) only enforces *shape*: ids in range, cyclic span ≥ 2,
//! no duplicate chord within a side. Everything semantic — non-crossing,
//! side-disjointness, triangulatedness, minimum degree — is reported by
//! `validate`, so that defective inputs can be constructed, checked, and
//! rejected with a named check rather than a construction panic.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, ParseKind, Result};

/// Which side of the cycle a chord lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Side {
    Inner,
    Outer,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Inner => Side::Outer,
            Side::Outer => Side::Inner,
        }
    }
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Inner => write!(f, "inner"),
            Side::Outer => write!(f, "outer"),
        }
    }
}

/// A chord, stored with endpoints normalized to a < b.
pub type Chord = (usize, usize);

/// Order a chord's endpoints ascending.
pub fn normalize_chord(u: usize, v: usize) -> Chord {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Cyclic distance between two positions on an n-cycle.
fn cyclic_span(a: usize, b: usize, n: usize) -> usize {
    let d = if a < b { b - a } else { a - b };
    d.min(n - d)
}

/// Do chords (a,b) and (c,d) cross when drawn on the same side?
/// Shared endpoints never count as a crossing.
pub fn chords_cross(x: Chord, y: Chord, _n: usize) -> bool {
    let (a, b) = x;
    let (c, d) = y;
    if a == c || a == d || b == c || b == d {
        return false;
    }
    let inside = |p: usize| a < p && p < b;
    inside(c) != inside(d)
}

/// One validation check: (name, passed, detail).
pub type Check = (String, bool, String);

/// Result of validating a `ChordedCycle`.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
    pub overall: bool,
}

impl ValidationReport {
    fn from_checks(checks: Vec<Check>) -> Self {
        let overall = checks.iter().all(|(_, ok, _)| *ok);
        ValidationReport { checks, overall }
    }

    /// Names of the checks that failed.
    pub fn failed(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|(_, ok, _)| !ok)
            .map(|(name, _, _)| name.clone())
            .collect()
    }

    /// Turn a failing report into an error (no-op if all checks passed).
    pub fn into_result(self) -> Result<ValidationReport> {
        if self.overall {
            Ok(self)
        } else {
            Err(Error::ValidationFailed {
                failed: self.failed(),
            })
        }
    }
}

/// An n-cycle with chords assigned to two sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChordedCycle {
    n: usize,
    inner: BTreeSet<Chord>,
    outer: BTreeSet<Chord>,
}

impl ChordedCycle {
    /// Build from chord lists. Enforces shape only (see module docs):
    /// n ≥ 3, endpoints in range, cyclic span ≥ 2, no duplicates per side.
    pub fn new(n: usize, inner: &[(usize, usize)], outer: &[(usize, usize)]) -> Result<Self> {
        if n < 3 {
            return Err(Error::Invalid {
                detail: format!("cycle needs at least 3 vertices, got {n}"),
            });
        }
        let mut sides = [BTreeSet::new(), BTreeSet::new()];
        for (list, set) in [inner, outer].into_iter().zip(sides.iter_mut()) {
            for &(u, v) in list {
                if u >= n || v >= n {
                    return Err(Error::Invalid {
                        detail: format!("chord ({u},{v}) out of range for n = {n}"),
                    });
                }
                if cyclic_span(u, v, n) < 2 {
                    return Err(Error::Invalid {
                        detail: format!("({u},{v}) is not a chord (cyclic span < 2)"),
                    });
                }
                if !set.insert(normalize_chord(u, v)) {
                    return Err(Error::Invalid {
                        detail: format!("duplicate chord ({u},{v}) on one side"),
                    });
                }
            }
        }
        let [inner, outer] = sides;
        Ok(ChordedCycle { n, inner, outer })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn chords(&self, side: Side) -> &BTreeSet<Chord> {
        match side {
            Side::Inner => &self.inner,
            Side::Outer => &self.outer,
        }
    }

    /// (inner chord count, outer chord count).
    pub fn chord_counts(&self) -> (usize, usize) {
        (self.inner.len(), self.outer.len())
    }

    pub fn has_chord(&self, side: Side, u: usize, v: usize) -> bool {
        self.chords(side).contains(&normalize_chord(u, v))
    }

    /// Cycle edge or chord on either side.
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u == v || u >= self.n || v >= self.n {
            return false;
        }
        cyclic_span(u, v, self.n) == 1
            || self.has_chord(Side::Inner, u, v)
            || self.has_chord(Side::Outer, u, v)
    }

    /// Position after v around the cycle.
    pub fn next(&self, v: usize) -> usize {
        (v + 1) % self.n
    }

    /// Position before v around the cycle.
    pub fn prev(&self, v: usize) -> usize {
        (v + self.n - 1) % self.n
    }

    /// Degree of v restricted to one side: the two cycle edges plus that
    /// side's chords at v.
    pub fn side_degree(&self, v: usize, side: Side) -> usize {
        2 + self.chords(side).iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Total degree: cycle edges plus chords on both sides.
    pub fn degree(&self, v: usize) -> usize {
        self.side_degree(v, Side::Inner) + self.side_degree(v, Side::Outer) - 2
    }

    /// Is v a 2-vertex on the given side (no chords there at all)?
    pub fn is_two_vertex(&self, v: usize, side: Side) -> bool {
        self.side_degree(v, side) == 2
    }

    /// All (vertex, side) pairs where the vertex is a 2-vertex, in vertex
    /// order (Inner listed before Outer for the same vertex).
    pub fn two_vertices(&self) -> Vec<(usize, Side)> {
        let mut out = Vec::new();
        for v in 0..self.n {
            for side in [Side::Inner, Side::Outer] {
                if self.is_two_vertex(v, side) {
                    out.push((v, side));
                }
            }
        }
        out
    }

    /// (inner 2-vertex count, outer 2-vertex count).
    pub fn two_vertex_counts(&self) -> (usize, usize) {
        let mut counts = (0, 0);
        for (_, side) in self.two_vertices() {
            match side {
                Side::Inner => counts.0 += 1,
                Side::Outer => counts.1 += 1,
            }
        }
        counts
    }

    /// A vertex adjacent to every other vertex, if one exists.
    pub fn universal_vertex(&self) -> Option<usize> {
        (0..self.n).find(|&v| self.degree(v) == self.n - 1)
    }

    /// Run all structural checks. `require_min_degree` adds the δ ≥ 4 check
    /// used by the construction pipeline.
    pub fn validate(&self, require_min_degree: bool) -> ValidationReport {
        let mut checks = Vec::new();

        // Shape is enforced at construction; report it for completeness.
        checks.push((
            "chord_form".to_string(),
            true,
            format!(
                "{} inner / {} outer chords, all with cyclic span ≥ 2",
                self.inner.len(),
                self.outer.len()
            ),
        ));

        for (name, side) in [
            ("inner_non_crossing", Side::Inner),
            ("outer_non_crossing", Side::Outer),
        ] {
            let witness = self.first_crossing(side);
            checks.push((
                name.to_string(),
                witness.is_none(),
                match witness {
                    None => "no crossing pair".to_string(),
                    Some((x, y)) => format!("chords {x:?} and {y:?} cross"),
                },
            ));
        }

        let shared: Vec<&Chord> = self.inner.intersection(&self.outer).collect();
        checks.push((
            "side_disjoint".to_string(),
            shared.is_empty(),
            if shared.is_empty() {
                "no chord appears on both sides".to_string()
            } else {
                format!("chords on both sides: {shared:?}")
            },
        ));

        let want = self.n - 3;
        let counts_ok = self.inner.len() == want && self.outer.len() == want;
        // Together with non-crossing, n−3 chords per side is exactly a
        // triangulation of each closed disc.
        checks.push((
            "triangulated".to_string(),
            counts_ok,
            format!(
                "need {want} chords per side, have {} inner / {} outer",
                self.inner.len(),
                self.outer.len()
            ),
        ));

        if require_min_degree {
            let low: Vec<usize> = (0..self.n).filter(|&v| self.degree(v) < 4).collect();
            checks.push((
                "min_degree_4".to_string(),
                low.is_empty(),
                if low.is_empty() {
                    "all degrees ≥ 4".to_string()
                } else {
                    format!("vertices with degree < 4: {low:?}")
                },
            ));
        }

        ValidationReport::from_checks(checks)
    }

    fn first_crossing(&self, side: Side) -> Option<(Chord, Chord)> {
        let list: Vec<Chord> = self.chords(side).iter().copied().collect();
        for (i, &x) in list.iter().enumerate() {
            for &y in &list[i + 1..] {
                if chords_cross(x, y, self.n) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// Flatten to a plain graph: cycle edges plus all chords.
    pub fn to_raw(&self) -> RawGraph {
        let mut g = RawGraph::new(self.n);
        for v in 0..self.n {
            g.add_edge(v, self.next(v)).expect("cycle edges are simple");
        }
        for &(u, v) in self.inner.iter().chain(self.outer.iter()) {
            // A chord duplicated across sides still denotes one edge.
            let _ = g.add_edge(u, v);
        }
        g
    }
}

/// A plain simple undirected graph on vertices 0..n−1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawGraph {
    n: usize,
    adj: Vec<BTreeSet<usize>>,
    edge_count: usize,
}

impl RawGraph {
    pub fn new(n: usize) -> Self {
        RawGraph {
            n,
            adj: vec![BTreeSet::new(); n],
            edge_count: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Insert an edge; rejects self-loops, duplicates, and out-of-range ids
    /// with the same kinds the file parsers report.
    pub fn add_edge(&mut self, u: usize, v: usize) -> std::result::Result<(), ParseKind> {
        if u >= self.n {
            return Err(ParseKind::IdOutOfRange { id: u, n: self.n });
        }
        if v >= self.n {
            return Err(ParseKind::IdOutOfRange { id: v, n: self.n });
        }
        if u == v {
            return Err(ParseKind::SelfLoop);
        }
        if self.adj[u].contains(&v) {
            return Err(ParseKind::DuplicateEdge);
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        self.edge_count += 1;
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(&v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// All edges with u < v, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Vertices not dominated by `set` (not in it and with no neighbor in it).
    pub fn undominated(&self, set: &[usize]) -> Vec<usize> {
        let mut covered = vec![false; self.n];
        for &d in set {
            if d >= self.n {
                continue;
            }
            covered[d] = true;
            for u in self.neighbors(d) {
                covered[u] = true;
            }
        }
        (0..self.n).filter(|&v| !covered[v]).collect()
    }

    /// Does `set` dominate every vertex?
    pub fn is_dominating(&self, set: &[usize]) -> bool {
        self.undominated(set).is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testkit::octahedron;

    #[test]
    fn octahedron_fixture_structure() {
        let cc = octahedron();
        assert_eq!(cc.n(), 6);
        assert_eq!(cc.chord_counts(), (3, 3));
        for v in 0..6 {
            assert_eq!(cc.degree(v), 4, "octahedron is 4-regular (vertex {v})");
        }
        assert_eq!(
            cc.two_vertices(),
            vec![
                (0, Side::Outer),
                (1, Side::Inner),
                (3, Side::Outer),
                (4, Side::Inner)
            ],
            "2-vertices and their sides"
        );
        assert_eq!(cc.two_vertex_counts(), (2, 2));
        let report = cc.validate(true);
        assert!(report.overall, "octahedron validates: {:?}", report.checks);
    }

    #[test]
    fn crossing_predicate() {
        // (0,2) and (1,3) interleave; sharing an endpoint never crosses.
        assert!(chords_cross((0, 2), (1, 3), 6));
        assert!(!chords_cross((0, 2), (0, 3), 6));
        assert!(!chords_cross((0, 2), (3, 5), 6));
        assert!(!chords_cross((0, 3), (3, 5), 6));
        assert!(!chords_cross((2, 4), (1, 5), 6));
    }

    #[test]
    fn construction_rejects_bad_shape() {
        assert!(ChordedCycle::new(2, &[], &[]).is_err(), "n < 3");
        assert!(
            ChordedCycle::new(6, &[(0, 1)], &[]).is_err(),
            "span-1 is a cycle edge, not a chord"
        );
        assert!(
            ChordedCycle::new(6, &[(0, 5)], &[]).is_err(),
            "wrap-around span 1"
        );
        assert!(
            ChordedCycle::new(6, &[(0, 7)], &[]).is_err(),
            "id out of range"
        );
        assert!(
            ChordedCycle::new(6, &[(0, 2), (2, 0)], &[]).is_err(),
            "duplicate within a side"
        );
    }

    #[test]
    fn invalid_but_constructible_is_reported_not_panicked() {
        // Crossing pair on one side: constructible, fails validation.
        let cc = ChordedCycle::new(6, &[(0, 2), (1, 3)], &[]).expect("shape-valid");
        let report = cc.validate(false);
        assert!(!report.overall);
        let failed = report.failed();
        assert!(
            failed.contains(&"inner_non_crossing".to_string()),
            "expected the crossing to be named: {failed:?}"
        );
        assert!(
            failed.contains(&"triangulated".to_string()),
            "chord counts are off too: {failed:?}"
        );
    }

    #[test]
    fn side_disjoint_check_fires() {
        let cc = ChordedCycle::new(6, &[(0, 2)], &[(0, 2)]).expect("shape-valid");
        let report = cc.validate(false);
        assert!(report.failed().contains(&"side_disjoint".to_string()));
    }

    #[test]
    fn raw_graph_edge_hygiene() {
        let mut g = RawGraph::new(4);
        g.add_edge(0, 1).unwrap();
        assert_eq!(g.add_edge(1, 0), Err(ParseKind::DuplicateEdge));
        assert_eq!(g.add_edge(2, 2), Err(ParseKind::SelfLoop));
        assert_eq!(g.add_edge(0, 4), Err(ParseKind::IdOutOfRange { id: 4, n: 4 }));
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn domination_on_the_octahedron() {
        let g = octahedron().to_raw();
        assert_eq!(g.edge_count(), 12);
        assert!(g.is_dominating(&[2, 5]), "{{2,5}} dominates");
        assert!(!g.is_dominating(&[0]), "no single vertex dominates");
        // 0 reaches 1,2,3,5; only the antipodal 4 is left out.
        assert_eq!(g.undominated(&[0]), vec![4]);
    }
}
