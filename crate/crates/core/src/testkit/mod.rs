//! Exact oracles and fixtures for desk-scale cross-checking.
//!
//! Everything here is deliberately independent of the construction code: the
//! oracles work on closed-neighborhood bitmasks of a plain graph, so a bug in
//! the pipeline cannot leak into its own verification.
//!
//! `exact_gamma` is a branch-and-bound over undominated vertices with a
//! disjoint-neighborhood packing lower bound — comfortably exact up to n = 30
//! on these graph families. `exhaustive_gamma` is the oracle for the oracle:
//! plain subset enumeration, used to certify the branch-and-bound on tiny
//! instances.

pub mod gen;

use crate::error::{Error, Result};
use crate::graph::{ChordedCycle, RawGraph};
use crate::hats::HatCycle;

/// Hard cap for `exact_gamma`.
pub const EXACT_GAMMA_MAX_N: usize = 30;

/// Hard cap for `exhaustive_gamma`.
pub const EXHAUSTIVE_MAX_N: usize = 16;

/// A graph as closed-neighborhood bitmasks (n ≤ 64).
#[derive(Debug, Clone)]
pub struct DenseGraph {
    n: usize,
    closed: Vec<u64>,
}

impl DenseGraph {
    pub fn new(n: usize) -> Self {
        assert!(n <= 64, "DenseGraph is a bitmask type (n ≤ 64)");
        DenseGraph {
            n,
            closed: (0..n).map(|v| 1u64 << v).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.closed[u] |= 1 << v;
        self.closed[v] |= 1 << u;
    }

    /// Closed neighborhood N[v] as a bitmask.
    pub fn closed_neighborhood(&self, v: usize) -> u64 {
        self.closed[v]
    }

    fn all_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    pub fn is_dominating(&self, set: &[usize]) -> bool {
        let mut covered = 0u64;
        for &v in set {
            covered |= self.closed[v];
        }
        covered == self.all_mask()
    }
}

impl From<&RawGraph> for DenseGraph {
    fn from(g: &RawGraph) -> Self {
        let mut d = DenseGraph::new(g.n());
        for (u, v) in g.edges() {
            d.add_edge(u, v);
        }
        d
    }
}

impl From<&ChordedCycle> for DenseGraph {
    fn from(cc: &ChordedCycle) -> Self {
        (&cc.to_raw()).into()
    }
}

impl From<&HatCycle> for DenseGraph {
    fn from(h: &HatCycle) -> Self {
        (&h.to_raw()).into()
    }
}

/// Exact domination number with a witness, by branch and bound.
///
/// Deterministic: candidates are explored in ascending vertex order and only
/// strict improvements replace the incumbent, so the witness is reproducible.
/// `budget` caps the number of search nodes (None = unbounded).
pub fn exact_gamma(g: &DenseGraph, budget: Option<u64>) -> Result<(usize, Vec<usize>)> {
    if g.n() > EXACT_GAMMA_MAX_N {
        return Err(Error::TooLarge {
            n: g.n(),
            max: EXACT_GAMMA_MAX_N,
        });
    }
    if g.n() == 0 {
        return Ok((0, Vec::new()));
    }
    let all = g.all_mask();

    // Greedy incumbent: max new coverage, tie → smallest vertex.
    let mut incumbent: Vec<usize> = Vec::new();
    let mut covered = 0u64;
    while covered != all {
        let v = (0..g.n())
            .max_by_key(|&v| ((g.closed[v] & !covered).count_ones(), std::cmp::Reverse(v)))
            .expect("n > 0");
        incumbent.push(v);
        covered |= g.closed[v];
    }
    incumbent.sort_unstable();

    struct Search<'a> {
        g: &'a DenseGraph,
        all: u64,
        best_size: usize,
        best: Vec<usize>,
        nodes: u64,
        budget: u64,
    }

    impl Search<'_> {
        /// Disjoint-N[v] packing among uncovered vertices: any dominating
        /// set needs at least one distinct vertex per packed neighborhood.
        fn lower_bound(&self, covered: u64) -> usize {
            let mut used = 0u64;
            let mut count = 0;
            for v in 0..self.g.n() {
                let bit = 1u64 << v;
                if covered & bit == 0 && self.g.closed[v] & used == 0 {
                    used |= self.g.closed[v];
                    count += 1;
                }
            }
            count
        }

        fn run(&mut self, covered: u64, chosen: &mut Vec<usize>) -> Result<()> {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExhausted {
                    budget: self.budget,
                });
            }
            if covered == self.all {
                if chosen.len() < self.best_size {
                    self.best_size = chosen.len();
                    self.best = chosen.clone();
                }
                return Ok(());
            }
            if chosen.len() + self.lower_bound(covered) >= self.best_size {
                return Ok(());
            }
            // Branch on the undominated vertex with the fewest dominators.
            let v = (0..self.g.n())
                .filter(|&v| covered & (1 << v) == 0)
                .min_by_key(|&v| (self.g.closed[v].count_ones(), v))
                .expect("some vertex is uncovered");
            let mut cands = self.g.closed[v];
            while cands != 0 {
                let u = cands.trailing_zeros() as usize;
                cands &= cands - 1;
                chosen.push(u);
                self.run(covered | self.g.closed[u], chosen)?;
                chosen.pop();
            }
            Ok(())
        }
    }

    let mut search = Search {
        g,
        all,
        best_size: incumbent.len(),
        best: incumbent,
        nodes: 0,
        budget: budget.unwrap_or(u64::MAX),
    };
    search.run(0, &mut Vec::new())?;
    let mut witness = search.best;
    witness.sort_unstable();
    debug_assert!(g.is_dominating(&witness));
    Ok((search.best_size, witness))
}

/// Exact domination number by subset enumeration (first witness in
/// size-then-lexicographic order).
pub fn exhaustive_gamma(g: &DenseGraph) -> Result<(usize, Vec<usize>)> {
    if g.n() > EXHAUSTIVE_MAX_N {
        return Err(Error::TooLarge {
            n: g.n(),
            max: EXHAUSTIVE_MAX_N,
        });
    }
    let n = g.n();
    for size in 0..=n {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            if g.is_dominating(&combo) {
                return Ok((size, combo));
            }
            if !next_combination(&mut combo, n) {
                break;
            }
        }
    }
    unreachable!("the full vertex set always dominates")
}

/// Advance a k-subset of 0..n in lexicographic order; false when done.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// The 4-regular 6-vertex fixture: a Hamilton cycle with both sides
/// triangulated, every degree exactly 4.
pub fn octahedron() -> ChordedCycle {
    ChordedCycle::new(6, &[(0, 2), (0, 3), (3, 5)], &[(1, 4), (2, 4), (1, 5)])
        .expect("fixture is shape-valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn octahedron_gamma_is_two_by_both_oracles() {
        let d: DenseGraph = (&octahedron()).into();
        let (g1, w1) = exact_gamma(&d, None).unwrap();
        let (g2, w2) = exhaustive_gamma(&d).unwrap();
        assert_eq!(g1, 2);
        assert_eq!(g2, 2);
        assert!(d.is_dominating(&w1));
        assert!(d.is_dominating(&w2));
    }

    #[test]
    fn triangle_and_paths() {
        // K3: γ = 1.
        let mut k3 = RawGraph::new(3);
        k3.add_edge(0, 1).unwrap();
        k3.add_edge(1, 2).unwrap();
        k3.add_edge(0, 2).unwrap();
        let (g, w) = exact_gamma(&(&k3).into(), None).unwrap();
        assert_eq!((g, w), (1, vec![0]));

        // P6 (path): γ = 2.
        let mut p6 = RawGraph::new(6);
        for v in 0..5 {
            p6.add_edge(v, v + 1).unwrap();
        }
        let (g, _) = exact_gamma(&(&p6).into(), None).unwrap();
        assert_eq!(g, 2);

        // Edgeless on 4 vertices: γ = 4.
        let e4 = RawGraph::new(4);
        let (g, w) = exact_gamma(&(&e4).into(), None).unwrap();
        assert_eq!((g, w), (4, vec![0, 1, 2, 3]));
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let d: DenseGraph = (&octahedron()).into();
        match exact_gamma(&d, Some(1)) {
            Err(Error::BudgetExhausted { budget: 1 }) => {}
            other => panic!("expected BudgetExhausted, got {other:?}"),
        }
    }

    #[test]
    fn size_cap_is_reported() {
        let d = DenseGraph::new(31);
        match exact_gamma(&d, None) {
            Err(Error::TooLarge { n: 31, max: 30 }) => {}
            other => panic!("expected TooLarge, got {other:?}"),
        }
    }

    #[test]
    fn oracles_agree_on_small_hat_cycles() {
        // Every hat subset of C7 with runs ≤ 2 — both oracles, same value.
        let n = 7;
        for mask in 0u32..(1 << n) {
            let hats: Vec<usize> = (0..n).filter(|&p| mask & (1 << p) != 0).collect();
            let Ok(h) = HatCycle::new(n, &hats) else {
                continue;
            };
            let d: DenseGraph = (&h).into();
            let (a, _) = exact_gamma(&d, None).unwrap();
            let (b, _) = exhaustive_gamma(&d).unwrap();
            assert_eq!(a, b, "hats {hats:?}");
        }
    }
}
