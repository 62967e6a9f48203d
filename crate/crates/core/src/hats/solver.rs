//! Descent/ascent driver over the rewrite rules.
//!
//! `solve` takes a dense hat cycle and produces a dominating set of its
//! skeleton of size ≤ ⌈2n/7⌉, fully certified. The descent repeatedly picks
//! the highest-priority rewrite whose segment pattern occurs, applies it,
//! and keeps the lift frame; when no rule matches (or the instance is small
//! enough to sweep directly) it solves the terminal instance exactly and
//! lifts the answer back up through the recorded frames, re-verifying at
//! every level.
//!
//! Rule priority mirrors the structure the rewrites are designed to remove,
//! from cheapest to most specific:
//!
//! 1. a B segment touching an O — merge (`MergeOb`/`MergeBo`);
//! 2. two adjacent As — merge (`MergeAa`);
//! 3. an ABA substring — fold (`FoldAba`);
//! 4. an O run of length ≥ 3 — jump the A at its right end across the last
//!    three Os; the run migrates toward the next B, where case 1 takes over;
//! 5. a double O with an isolated A flanking it (`MergeOaooa`/`MergeAooao`);
//! 6. a double O between two string-attached As (`FoldBaooab`);
//! 7. two isolated As against a mixed string head (`MergeAoaoabb`);
//! 8. a triple-B run, sound only with ≥ 6 Bs in total (`MergeBbba`).
//!
//! Density (t ≥ ⌈(n+1)/2⌉, equivalently #B ≥ #O + 1) is what makes the
//! cascade total: whenever Os exist some string holds a B, so the jump in
//! step 4 always has somewhere to migrate to. Every rewrite preserves
//! density; the loop re-checks it anyway and reports `Internal` if the
//! invariant ever breaks mid-descent.
//!
//! The jump spans the whole run for a reason: with the hat chord clear of
//! the run's interior on both sides of the rewrite, every dominating set of
//! the jumped cycle exchanges into one of the original at equal size. Moving
//! the hat a single step instead is *not* sound — it can raise the skeleton's
//! domination number — so no one-step variant appears here.

use std::collections::BTreeSet;

use serde::Serialize;

use super::rules::{self, LiftFrame, RuleKind};
use super::{HatCycle, SegmentChain, SegmentKind};
use crate::bounds;
use crate::error::{Error, Result};

/// Largest n handled by the direct sweep instead of the rewrite descent.
/// The sweep's 1 + ⌈(n−5)/3⌉ stays within ⌈2n/7⌉ exactly up to here.
const SWEEP_MAX_N: usize = 20;

/// One rewrite applied during descent.
#[derive(Debug, Clone, Serialize)]
pub struct ReductionStep {
    pub rule: &'static str,
    pub window_start: usize,
    pub n_before: usize,
    pub n_after: usize,
}

/// How the descent bottomed out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TerminalKind {
    /// Small instance closed by the distance-2 hat pair sweep.
    Sweep,
    /// Rule-free chain closed by the exact band solver.
    BandDp,
}

/// A certified dominating set plus the descent that produced it.
#[derive(Debug, Clone)]
pub struct Solution {
    pub set: BTreeSet<usize>,
    pub steps: Vec<ReductionStep>,
    pub terminal: TerminalKind,
    /// Size of the instance the terminal solver actually ran on.
    pub terminal_n: usize,
}

/// First chain index (scanning cyclically from index 0) where one of the
/// given kind tuples occurs; patterns longer than the chain never match.
fn first_of(
    chain: &SegmentChain,
    pats: &[(&[SegmentKind], RuleKind)],
) -> Option<(RuleKind, usize)> {
    let m = chain.len();
    for i in 0..m {
        for (pat, kind) in pats {
            if pat.len() <= m && (0..pat.len()).all(|j| chain.at(i + j).kind == pat[j]) {
                return Some((*kind, i));
            }
        }
    }
    None
}

/// The highest-priority applicable rewrite and its window start, or `None`
/// when the chain is terminal.
fn select_rule(chain: &SegmentChain) -> Option<(RuleKind, usize)> {
    use SegmentKind::{A, B, O};
    let n = chain.n;
    let start = |i: usize| chain.at(i).start;

    // 1. Strings must start and end with an A; a B against an O merges away.
    if let Some((k, i)) = first_of(
        chain,
        &[(&[O, B], RuleKind::MergeOb), (&[B, O], RuleKind::MergeBo)],
    ) {
        return Some((k, start(i)));
    }
    // 2. Two adjacent As merge.
    if let Some((k, i)) = first_of(chain, &[(&[A, A], RuleKind::MergeAa)]) {
        return Some((k, start(i)));
    }
    // 3. An A wedged between two other As through a single B folds.
    if let Some((k, i)) = first_of(chain, &[(&[A, B, A], RuleKind::FoldAba)]) {
        return Some((k, start(i)));
    }
    // 4. A long O run: jump the A at its right end across the last three
    //    Os. The run walks toward the next B (one exists: #B > #O under
    //    density) and case 1 fires when they meet. [O,O,O,A] self-aligns
    //    to the run end; the window starts three vertices before the A.
    if let Some((_, i)) = first_of(chain, &[(&[O, O, O, A], RuleKind::SlideLeft)]) {
        let a = chain.at(i + 3).start;
        return Some((RuleKind::SlideLeft, (a + n - 3) % n));
    }
    // 5. A double O flanked by an isolated A on one side.
    if let Some((k, i)) = first_of(
        chain,
        &[
            (&[O, A, O, O, A], RuleKind::MergeOaooa),
            (&[A, O, O, A, O], RuleKind::MergeAooao),
        ],
    ) {
        return Some((k, start(i)));
    }
    // 6. A double O whose flanking As both sit in strings.
    if let Some((k, i)) = first_of(chain, &[(&[B, A, O, O, A, B], RuleKind::FoldBaooab)]) {
        return Some((k, start(i)));
    }
    // 7. Isolated As queueing before a mixed string head.
    if let Some((k, i)) = first_of(chain, &[(&[A, O, A, O, A, B, B], RuleKind::MergeAoaoabb)]) {
        return Some((k, start(i)));
    }
    // 8. A triple-B run; the merged graph keeps density only with ≥ 6 Bs.
    if chain.x2 >= 6 {
        if let Some((k, i)) = first_of(chain, &[(&[B, B, B, A], RuleKind::MergeBbba)]) {
            return Some((k, start(i)));
        }
    }
    None
}

/// Close a small dense instance directly. Density plus the run invariant
/// force two hats at distance exactly 2 somewhere; the vertex between them
/// reaches five consecutive positions through the two hat chords, and a
/// plain 3-step sweep covers the remaining arc along cycle edges. Size
/// 1 + ⌈(n−5)/3⌉.
fn hat_pair_sweep(h: &HatCycle) -> Result<BTreeSet<usize>> {
    let n = h.n();
    let p = (0..n)
        .find(|&p| h.has_hat(p) && h.has_hat((p + 2) % n))
        .ok_or_else(|| Error::Internal {
            detail: format!("dense hat cycle on {n} vertices without a distance-2 hat pair"),
        })?;
    let v = (p + 1) % n;
    let mut set = BTreeSet::from([v]);
    let m = n.saturating_sub(5);
    let mut i = 0;
    while i < m {
        let pick = (i + 1).min(m - 1);
        set.insert((v + 3 + pick) % n);
        i += 3;
    }
    Ok(set)
}

/// Exact minimum dominating set of the skeleton (cycle plus hat chords).
///
/// Every closed neighborhood lies within {v−2, …, v+2}, so a frontier of
/// two membership bits and two pending-coverage bits is enough; the wrap is
/// closed by guessing the first two memberships and carrying two "vertex
/// 0/1 still needs the wrap" bits. O(64·n) per guess, exact.
fn band_minimum(h: &HatCycle) -> BTreeSet<usize> {
    let n = h.n();
    debug_assert!(n >= 5, "band solver needs the wrap windows disjoint");
    let hat = |v: usize| h.has_hat(v % n);
    const INF: u32 = u32::MAX;
    let enc = |mp: bool, mc: bool, dp_: bool, dc: bool, w0: bool, w1: bool| -> usize {
        usize::from(mp)
            | usize::from(mc) << 1
            | usize::from(dp_) << 2
            | usize::from(dc) << 3
            | usize::from(w0) << 4
            | usize::from(w1) << 5
    };
    let mut best: Option<(u32, Vec<usize>)> = None;
    for guess in 0..4u8 {
        let m0 = guess & 1 != 0;
        let m1 = guess & 2 != 0;
        let mut cost = vec![INF; 64];
        cost[enc(m0, m1, m0 || m1, m0 || m1, false, false)] = u32::from(m0) + u32::from(m1);
        // parent[k][s] = (state before deciding vertex k, membership of k)
        let mut parent: Vec<Vec<(u8, bool)>> = vec![vec![(0, false); 64]; n];
        for k in 2..n {
            let mut next = vec![INF; 64];
            for (s, &c) in cost.iter().enumerate() {
                if c == INF {
                    continue;
                }
                let mp = s & 1 != 0;
                let mc = s & 2 != 0;
                let dp_ = s & 4 != 0;
                let dc = s & 8 != 0;
                let w0 = s & 16 != 0;
                let w1 = s & 32 != 0;
                for b in [false, true] {
                    // Vertex k−2 leaves the frontier: its last local source
                    // is m_k through the hat chord at k−1. Vertices 0 and 1
                    // may still be covered across the wrap, so they record a
                    // pending bit instead of pruning.
                    let covered = dp_ || (b && hat(k - 1));
                    let (nw0, nw1) = match k {
                        2 => (!covered, w1),
                        3 => (w0, !covered),
                        _ => {
                            if !covered {
                                continue;
                            }
                            (w0, w1)
                        }
                    };
                    let t = enc(
                        mc,
                        b,
                        dc || b,
                        (mp && hat(k - 1)) || mc || b,
                        nw0,
                        nw1,
                    );
                    let nc = c + u32::from(b);
                    if nc < next[t] {
                        next[t] = nc;
                        parent[k][t] = (s as u8, b);
                    }
                }
            }
            cost = next;
        }
        // Close the wrap with the frontier at (n−2, n−1).
        for (s, &c) in cost.iter().enumerate() {
            if c == INF {
                continue;
            }
            let mp = s & 1 != 0;
            let mc = s & 2 != 0;
            let dp_ = s & 4 != 0;
            let dc = s & 8 != 0;
            let w0 = s & 16 != 0;
            let w1 = s & 32 != 0;
            let ok_n2 = dp_ || (m0 && hat(n - 1));
            let ok_n1 = dc || m0 || (m1 && hat(0));
            let ok_0 = !w0 || mc || (mp && hat(n - 1));
            let ok_1 = !w1 || (mc && hat(0));
            if !(ok_n2 && ok_n1 && ok_0 && ok_1) {
                continue;
            }
            if best.as_ref().is_none_or(|(bc, _)| c < *bc) {
                let mut picks = Vec::new();
                if m0 {
                    picks.push(0);
                }
                if m1 {
                    picks.push(1);
                }
                let mut st = s;
                for k in (2..n).rev() {
                    let (ps, b) = parent[k][st];
                    if b {
                        picks.push(k);
                    }
                    st = ps as usize;
                }
                best = Some((c, picks));
            }
        }
    }
    let (_, picks) = best.expect("the full vertex set always dominates");
    picks.into_iter().collect()
}

/// x = number of BBA units and y = number of strings, when every string is
/// A(BBA)^k with a single O between consecutive strings — the shape the
/// cascade drives dense instances into. `None` when anything deviates.
fn abb_form(chain: &SegmentChain) -> Option<(usize, usize)> {
    let strings = chain.strings();
    if strings.is_empty() || chain.o_count != strings.len() {
        return None;
    }
    let mut x = 0;
    for s in &strings {
        if s.len() < 4 || s.len() % 3 != 1 {
            return None;
        }
        for (j, &idx) in s.iter().enumerate() {
            let want = if j % 3 == 0 {
                SegmentKind::A
            } else {
                SegmentKind::B
            };
            if chain.at(idx).kind != want {
                return None;
            }
        }
        x += (s.len() - 1) / 3;
    }
    Some((x, strings.len()))
}

/// Terminal chains: exact solve plus the structural size checks the
/// cascade's end states must satisfy.
fn band_terminal(h: &HatCycle, chain: &SegmentChain) -> Result<BTreeSet<usize>> {
    let set = band_minimum(h);
    let n = h.n();
    let bound = bounds::bound_two_sevenths(n);
    if set.len() > bound {
        return Err(Error::BoundViolated {
            context: "terminal exact solve",
            n,
            size: set.len(),
            bound,
        });
    }
    if let Some((x, y)) = abb_form(chain) {
        let unit_bound = 2 * x + y;
        if set.len() > unit_bound {
            return Err(Error::BoundViolated {
                context: "terminal two-per-unit form",
                n,
                size: set.len(),
                bound: unit_bound,
            });
        }
    }
    Ok(set)
}

/// Construct a dominating set of the skeleton of size ≤ ⌈2n/7⌉.
///
/// Errors: `DensityTooLow` when the input misses the hat density the
/// machinery requires; falsification errors (`BoundViolated`,
/// `CertificationFailed`, `CaseTableMiss`, `ReductionStalled`, `Internal`)
/// when any internal guarantee fails to hold at runtime.
pub fn solve(h: &HatCycle) -> Result<Solution> {
    let n0 = h.n();
    if !h.meets_density() {
        return Err(Error::DensityTooLow {
            n: n0,
            hats: h.t(),
            need: HatCycle::density_threshold(n0),
        });
    }
    let cap = n0 * n0 + 50;
    let mut cur = h.clone();
    let mut steps: Vec<ReductionStep> = Vec::new();
    let mut frames: Vec<(LiftFrame, HatCycle)> = Vec::new();

    let (mut set, terminal, terminal_n) = loop {
        if !cur.meets_density() {
            return Err(Error::Internal {
                detail: format!(
                    "density lost mid-descent: {} hats on {} vertices",
                    cur.t(),
                    cur.n()
                ),
            });
        }
        if cur.n() <= SWEEP_MAX_N {
            break (hat_pair_sweep(&cur)?, TerminalKind::Sweep, cur.n());
        }
        let chain = cur.segments();
        match select_rule(&chain) {
            None => break (band_terminal(&cur, &chain)?, TerminalKind::BandDp, cur.n()),
            Some((kind, window_start)) => {
                if steps.len() >= cap {
                    return Err(Error::ReductionStalled { limit: cap });
                }
                let app = rules::apply(&cur, kind, window_start)?;
                steps.push(ReductionStep {
                    rule: kind.name(),
                    window_start,
                    n_before: cur.n(),
                    n_after: app.after.n(),
                });
                frames.push((app.frame, app.after.clone()));
                cur = app.after;
            }
        }
    };

    // Ascend: each lift re-verifies domination and the per-rule growth
    // bound on its own level.
    for (frame, after) in frames.iter().rev() {
        set = frame.lift(after, &set)?;
    }

    // Independent final checks on the original skeleton.
    let witness: Vec<usize> = set.iter().copied().collect();
    if !h.to_raw().is_dominating(&witness) {
        return Err(Error::CertificationFailed {
            stage: "reduction result".into(),
            detail: format!("lifted set of size {} does not dominate the skeleton", set.len()),
        });
    }
    let bound = bounds::bound_two_sevenths(n0);
    if set.len() > bound {
        return Err(Error::BoundViolated {
            context: "hat-cycle reduction",
            n: n0,
            size: set.len(),
            bound,
        });
    }
    Ok(Solution {
        set,
        steps,
        terminal,
        terminal_n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testkit::{self, gen, DenseGraph};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn dominates(h: &HatCycle, set: &BTreeSet<usize>) -> bool {
        let v: Vec<usize> = set.iter().copied().collect();
        DenseGraph::from(h).is_dominating(&v)
    }

    #[test]
    fn band_solver_matches_the_exhaustive_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for n in 5..=14 {
            for _ in 0..6 {
                let hats: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
                let h = HatCycle::new_relaxed(n, &hats).unwrap();
                let set = band_minimum(&h);
                assert!(dominates(&h, &set), "n = {n}, hats {hats:?}: {set:?}");
                let (gamma, _) = testkit::exact_gamma(&DenseGraph::from(&h), None).unwrap();
                assert_eq!(
                    set.len(),
                    gamma,
                    "band solver must be exact (n = {n}, hats {hats:?})"
                );
            }
        }
    }

    #[test]
    fn sweep_closes_every_dense_small_cycle() {
        for n in 5..=20 {
            for seed in 0..8 {
                let h = gen::hat_dense(n, seed).unwrap();
                let set = hat_pair_sweep(&h).unwrap();
                assert!(dominates(&h, &set), "n = {n} seed = {seed}");
                assert!(
                    set.len() <= bounds::bound_two_sevenths(n),
                    "n = {n} seed = {seed}: sweep gave {} > ⌈2n/7⌉",
                    set.len()
                );
            }
        }
    }

    #[test]
    fn solve_certifies_random_dense_cycles_within_the_bound() {
        for n in [21, 24, 27, 30, 33, 37, 41, 46, 52, 60] {
            for seed in 0..6 {
                let h = gen::hat_dense(n, seed).unwrap();
                let sol = solve(&h).unwrap_or_else(|e| panic!("n = {n} seed = {seed}: {e}"));
                assert!(dominates(&h, &sol.set), "n = {n} seed = {seed}");
                assert!(
                    sol.set.len() <= bounds::bound_two_sevenths(n),
                    "n = {n} seed = {seed}: |D| = {} > ⌈2n/7⌉ = {}",
                    sol.set.len(),
                    bounds::bound_two_sevenths(n)
                );
            }
        }
    }

    #[test]
    fn terminal_patterns_close_within_two_per_unit() {
        for (x, y) in [(2usize, 2usize), (3, 2), (4, 3), (5, 1), (6, 4)] {
            for seed in 0..3 {
                let h = gen::terminal_pattern(x, y, seed).unwrap();
                let n = 8 * x + 3 * y;
                assert_eq!(h.n(), n);
                let sol = solve(&h).unwrap();
                assert!(
                    sol.steps.is_empty(),
                    "A(BBA)^k chains are rule-free, got {:?}",
                    sol.steps
                );
                assert_eq!(sol.terminal, TerminalKind::BandDp);
                assert_eq!(sol.terminal_n, n);
                assert!(dominates(&h, &sol.set));
                assert!(
                    sol.set.len() <= 2 * x + y,
                    "(x, y) = ({x}, {y}): |D| = {} > 2x + y = {}",
                    sol.set.len(),
                    2 * x + y
                );
            }
        }
    }

    #[test]
    fn a_long_o_run_migrates_left_then_merges() {
        // Word AOOOABBABBAOABBAOABBAO: a triple O whose right-end A must
        // slide left (nothing else matches), after which the O run reaches
        // the B string and the boundary merge takes over.
        let hats = [
            1usize, 6, 8, 9, 11, 12, 14, 16, 17, 19, 20, 22, 25, 27, 28, 30, 31, 33, 36, 38, 39,
            41, 42, 44,
        ];
        let h = HatCycle::new(46, &hats).unwrap();
        assert!(h.meets_density());
        assert_eq!(h.segments().word(), "AOOOABBABBAOABBAOABBAO");
        let sol = solve(&h).unwrap();
        assert_eq!(sol.steps[0].rule, "slide-left", "steps: {:?}", sol.steps);
        assert!(
            sol.steps.iter().any(|s| s.rule == "merge-ob"),
            "the migrated run must end in a boundary merge: {:?}",
            sol.steps
        );
        assert!(dominates(&h, &sol.set));
        assert!(sol.set.len() <= bounds::bound_two_sevenths(46));
    }

    #[test]
    fn isolated_as_before_a_mixed_string_merge_first() {
        // Word AOAOABBAOABBABBAO: two isolated As queue before the ABBABBA
        // string; nothing higher-priority matches.
        let hats = [
            1usize, 4, 7, 9, 10, 12, 13, 15, 18, 20, 21, 23, 24, 26, 28, 29, 31, 32, 34,
        ];
        let h = HatCycle::new(36, &hats).unwrap();
        assert!(h.meets_density());
        assert_eq!(h.segments().word(), "AOAOABBAOABBABBAO");
        let sol = solve(&h).unwrap();
        assert_eq!(sol.steps[0].rule, "merge-aoaoabb", "steps: {:?}", sol.steps);
        assert!(dominates(&h, &sol.set));
        assert!(sol.set.len() <= bounds::bound_two_sevenths(36));
    }

    #[test]
    fn a_triple_b_run_contracts_when_bs_abound() {
        // Word ABBBAOABBAOABBBAO: eight Bs in total, so the triple-B
        // contraction is sound and nothing higher-priority matches.
        let hats = [
            1usize, 3, 4, 6, 7, 9, 10, 12, 15, 17, 18, 20, 21, 23, 26, 28, 29, 31, 32, 34, 35, 37,
        ];
        let h = HatCycle::new(39, &hats).unwrap();
        assert!(h.meets_density());
        assert_eq!(h.segments().word(), "ABBBAOABBAOABBBAO");
        let sol = solve(&h).unwrap();
        assert_eq!(sol.steps[0].rule, "merge-bbba", "steps: {:?}", sol.steps);
        assert!(dominates(&h, &sol.set));
        assert!(sol.set.len() <= bounds::bound_two_sevenths(39));
    }

    #[test]
    fn sparse_input_is_rejected_up_front() {
        let h = HatCycle::new(20, &[0, 4, 8, 12, 16]).unwrap();
        let err = solve(&h).unwrap_err();
        assert_eq!(err.exit_code(), 2, "{err}");
        assert!(
            matches!(err, Error::DensityTooLow { n: 20, hats: 5, .. }),
            "{err}"
        );
    }

    #[test]
    fn deep_descents_with_many_jumps_stay_certified() {
        // Regression fixtures: both instances once drove the ascent into a
        // window state that a one-step hat move could not repay at equal
        // size (the shorter one directly, the longer one several frames up).
        // The full-run jump must close both with no growth anywhere.
        let fixed = [
            0usize, 1, 4, 7, 9, 11, 13, 14, 16, 17, 19, 20, 22, 23, 26, 27, 29, 30, 33, 34, 36,
            37, 39, 40, 42, 43, 45, 46, 49, 51, 52, 57,
        ];
        let cases = [
            HatCycle::new(59, &fixed).unwrap(),
            gen::hat_dense(84, 4).unwrap(),
        ];
        for h in cases {
            let n = h.n();
            let sol = solve(&h).unwrap_or_else(|e| panic!("n = {n}: {e}"));
            let witness: Vec<usize> = sol.set.iter().copied().collect();
            assert!(h.to_raw().is_dominating(&witness), "n = {n}");
            assert!(sol.set.len() <= bounds::bound_two_sevenths(n), "n = {n}");
        }
    }

    #[test]
    #[ignore = "broad randomized sweep, run on demand"]
    fn broad_randomized_sweep_stays_certified() {
        for n in 21..=120 {
            for seed in 0..20 {
                let h = gen::hat_dense(n, seed).unwrap();
                let sol = solve(&h).unwrap_or_else(|e| panic!("n = {n}, seed = {seed}: {e}"));
                let witness: Vec<usize> = sol.set.iter().copied().collect();
                assert!(
                    h.to_raw().is_dominating(&witness),
                    "n = {n}, seed = {seed}"
                );
                assert!(
                    sol.set.len() <= bounds::bound_two_sevenths(n),
                    "n = {n}, seed = {seed}: |D| = {}",
                    sol.set.len()
                );
            }
        }
    }

    #[test]
    fn reduction_traces_record_sizes_consistently() {
        for n in [25, 31, 44] {
            for seed in 0..4 {
                let h = gen::hat_dense(n, seed).unwrap();
                let sol = solve(&h).unwrap();
                let mut expect = n;
                for step in &sol.steps {
                    assert_eq!(step.n_before, expect, "chained sizes must agree");
                    assert!(step.n_after <= step.n_before);
                    expect = step.n_after;
                }
                assert_eq!(expect, sol.terminal_n);
            }
        }
    }
}
