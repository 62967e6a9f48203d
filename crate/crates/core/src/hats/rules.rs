//! Window rewrites on hat cycles, with certified lifting of dominating sets.
//!
//! Every rewrite replaces a short window of the cycle — described by the
//! segment tuple it matches, like `[A,B,A]` or `[O,B]` — with a smaller
//! configuration, producing a new hat cycle. Solving the smaller cycle and
//! *lifting* the solution back is the engine of the whole construction, so
//! each [`apply`] returns a [`LiftFrame`] that knows how to pull a dominating
//! set of the rewritten cycle back through the rewrite, growing it by at most
//! the rule's declared bound.
//!
//! # The lifting model
//!
//! Label the window vertices `0..W-1`. After the rewrite the window becomes
//! either a single merged vertex, a short fresh path, or (for the two slide
//! rules) the same six vertices with the hat chord moved across the run. The
//! *anchors* are the replacement's vertices; given a dominating set `D'` of
//! the rewritten cycle, only `π = D' ∩ anchors` matters for the lift —
//! everything outside the window keeps its role. A case table maps each
//! feasible `π` to the set `S` of window labels to add, precomputed so that:
//!
//! * every window label is covered by `S`, by a kept anchor, or by an
//!   *escape* — a proof that some vertex outside the window already
//!   dominates it, valid only when `π` avoids that label's *blockers*
//!   (the in-replacement vertices that could have been its dominator);
//! * a merged vertex that dominated vertices *outside* the window imposes a
//!   *duty*: labels that must re-cover those outside vertices.
//!
//! Escapes at the two ends of a merged window point in opposite directions,
//! so lifting a merged rule with `π = ∅` needs to know which side of the
//! window `D'` dominates the merged vertex from; the table keys carry that
//! as a [`SideKey`].
//!
//! Tables are built once, eagerly, from a small registry of audited seed
//! entries plus a derivation pass that fills every remaining feasible case
//! with the smallest (then lexicographically first) valid `S`. Every feasible
//! case has a valid lift within the rule's bound — a seed or derivation gap
//! is a programming error and panics at build — so a runtime
//! [`Error::CaseTableMiss`] can only mean the frame was fed a set that does
//! not dominate the rewritten cycle.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hats::HatCycle;

/// The rewrite rules, named by the segment tuple they consume.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum RuleKind {
    /// Jump a hat rightward across a run of three `O` edges.
    SlideRight,
    /// Jump a hat leftward across a run of three `O` edges.
    SlideLeft,
    /// Replace `[A,B,A]` by a single `B`.
    FoldAba,
    /// Contract `[A,A]` to one vertex.
    MergeAa,
    /// Contract `[O,B]` to one vertex.
    MergeOb,
    /// Contract `[B,O]` to one vertex.
    MergeBo,
    /// Contract `[O,A,O,O,A]` to one vertex.
    MergeOaooa,
    /// Contract `[A,O,O,A,O]` to one vertex.
    MergeAooao,
    /// Replace `[B,A,O,O,A,B]` by a short path carrying one `B`.
    FoldBaooab,
    /// Contract `[A,O,A,O,A,B,B]` to one vertex.
    MergeAoaoabb,
    /// Contract `[B,B,B,A]` to one vertex.
    MergeBbba,
}

impl RuleKind {
    pub const ALL: [RuleKind; 11] = [
        RuleKind::SlideRight,
        RuleKind::SlideLeft,
        RuleKind::FoldAba,
        RuleKind::MergeAa,
        RuleKind::MergeOb,
        RuleKind::MergeBo,
        RuleKind::MergeOaooa,
        RuleKind::MergeAooao,
        RuleKind::FoldBaooab,
        RuleKind::MergeAoaoabb,
        RuleKind::MergeBbba,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleKind::SlideRight => "slide-right",
            RuleKind::SlideLeft => "slide-left",
            RuleKind::FoldAba => "fold-aba",
            RuleKind::MergeAa => "merge-aa",
            RuleKind::MergeOb => "merge-ob",
            RuleKind::MergeBo => "merge-bo",
            RuleKind::MergeOaooa => "merge-oaooa",
            RuleKind::MergeAooao => "merge-aooao",
            RuleKind::FoldBaooab => "fold-baooab",
            RuleKind::MergeAoaoabb => "merge-aoaoabb",
            RuleKind::MergeBbba => "merge-bbba",
        }
    }

    pub fn geometry(self) -> &'static RuleGeometry {
        &GEOMETRIES[self as usize]
    }
}

impl std::fmt::Display for RuleKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// What the window turns into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Replacement {
    /// The whole window collapses to one fresh vertex (never a hat).
    Merged,
    /// The window is replaced by a fresh path; `hats` are path-relative.
    Path {
        len: usize,
        hats: &'static [usize],
    },
    /// The window keeps its vertices; only the hat set changes.
    Rewire { hats: &'static [usize] },
}

/// Static description of one rule: its window, the hats that must sit in it,
/// the replacement, and the growth bound for lifted dominating sets.
#[derive(Debug)]
pub struct RuleGeometry {
    pub kind: RuleKind,
    /// Window width W; labels run 0..W-1 along the cycle.
    pub window: usize,
    /// Hat positions inside the window, as labels.
    pub hats_before: &'static [usize],
    pub replacement: Replacement,
    /// Lifting adds at most this many vertices.
    pub bound: usize,
    /// Smallest cycle the rule may be applied to.
    pub min_n: usize,
    /// Change of (n, t) when the rule fires.
    pub delta: (i64, i64),
}

static GEOMETRIES: [RuleGeometry; 11] = [
    RuleGeometry {
        kind: RuleKind::SlideRight,
        window: 6,
        hats_before: &[1],
        replacement: Replacement::Rewire { hats: &[4] },
        bound: 0,
        min_n: 8,
        delta: (0, 0),
    },
    RuleGeometry {
        kind: RuleKind::SlideLeft,
        window: 6,
        hats_before: &[4],
        replacement: Replacement::Rewire { hats: &[1] },
        bound: 0,
        min_n: 8,
        delta: (0, 0),
    },
    RuleGeometry {
        kind: RuleKind::FoldAba,
        window: 8,
        hats_before: &[1, 3, 4, 6],
        replacement: Replacement::Path {
            len: 4,
            hats: &[1, 2],
        },
        bound: 1,
        min_n: 11,
        delta: (-4, -2),
    },
    RuleGeometry {
        kind: RuleKind::MergeAa,
        window: 5,
        hats_before: &[1, 3],
        replacement: Replacement::Merged,
        bound: 1,
        min_n: 11,
        delta: (-4, -2),
    },
    RuleGeometry {
        kind: RuleKind::MergeOb,
        window: 5,
        hats_before: &[2, 3],
        replacement: Replacement::Merged,
        bound: 1,
        min_n: 11,
        delta: (-4, -2),
    },
    RuleGeometry {
        kind: RuleKind::MergeBo,
        window: 5,
        hats_before: &[1, 2],
        replacement: Replacement::Merged,
        bound: 1,
        min_n: 11,
        delta: (-4, -2),
    },
    RuleGeometry {
        kind: RuleKind::MergeOaooa,
        window: 8,
        hats_before: &[2, 6],
        replacement: Replacement::Merged,
        bound: 2,
        min_n: 14,
        delta: (-7, -2),
    },
    RuleGeometry {
        kind: RuleKind::MergeAooao,
        window: 8,
        hats_before: &[1, 5],
        replacement: Replacement::Merged,
        bound: 2,
        min_n: 14,
        delta: (-7, -2),
    },
    RuleGeometry {
        kind: RuleKind::FoldBaooab,
        window: 13,
        hats_before: &[1, 2, 4, 8, 10, 11],
        replacement: Replacement::Path {
            len: 5,
            hats: &[2, 3],
        },
        bound: 2,
        min_n: 15,
        delta: (-8, -4),
    },
    RuleGeometry {
        kind: RuleKind::MergeAoaoabb,
        window: 15,
        hats_before: &[1, 4, 7, 9, 10, 12, 13],
        replacement: Replacement::Merged,
        bound: 4,
        min_n: 21,
        delta: (-14, -7),
    },
    RuleGeometry {
        kind: RuleKind::MergeBbba,
        window: 12,
        hats_before: &[1, 2, 4, 5, 7, 8, 10],
        replacement: Replacement::Merged,
        bound: 3,
        min_n: 21,
        delta: (-11, -7),
    },
];

/// Which side of a merged window the reduced solution dominates the merged
/// vertex from; `Any` entries hold regardless.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum SideKey {
    Any,
    Left,
    Right,
}

impl SideKey {
    fn as_char(self) -> char {
        match self {
            SideKey::Any => '*',
            SideKey::Left => 'l',
            SideKey::Right => 'r',
        }
    }
}

/// Case table of one rule: anchor mask (and side, where it matters) to the
/// window labels the lift must add.
pub type CaseTable = BTreeMap<(u32, SideKey), Vec<usize>>;

type TableStore = BTreeMap<RuleKind, CaseTable>;

/// All case tables. Built once on first use; panics if an audited seed entry
/// fails validation or if any feasible case has no valid lift, since either
/// would mean the registry and the window model disagree.
pub fn tables() -> &'static TableStore {
    static STORE: OnceLock<TableStore> = OnceLock::new();
    STORE.get_or_init(|| {
        RuleKind::ALL
            .iter()
            .map(|&kind| (kind, build_table(kind)))
            .collect()
    })
}

/// The case table of one rule.
pub fn canonical_table(kind: RuleKind) -> &'static CaseTable {
    &tables()[&kind]
}

/// Re-verify every stored case against the window model: the lift must
/// dominate the whole pre-image window (worst-case outside coverage) and
/// stay within `dropped + bound` additions. Returns (tables, cases) counts;
/// a bad entry is a falsification, not an input problem.
pub fn audit_tables() -> Result<(usize, usize)> {
    let store = tables();
    let mut cases = 0usize;
    for (&kind, table) in store {
        let geo = kind.geometry();
        let model = window_model(kind);
        for (&(pi, side), s) in table {
            let budget = (pi & model.droppable).count_ones() as usize + geo.bound;
            if s.len() > budget {
                return Err(Error::Internal {
                    detail: format!(
                        "{} case {pi:#b}/{side:?} lifts {} vertices, budget {budget}",
                        kind.name(),
                        s.len()
                    ),
                });
            }
            if !model.check_case(pi, side, s) {
                return Err(Error::Internal {
                    detail: format!(
                        "{} case {pi:#b}/{side:?} leaves the window undominated",
                        kind.name()
                    ),
                });
            }
            cases += 1;
        }
    }
    Ok((store.len(), cases))
}

// ---------------------------------------------------------------------------
// Window model: everything the table builder needs, computed from geometry.
// ---------------------------------------------------------------------------

struct WindowModel {
    w: usize,
    tokens: usize,
    /// Closed neighborhoods of the window labels, inside the window, before
    /// the rewrite (cycle path plus the `hats_before` chords).
    k_closed: Vec<u64>,
    /// Per token: the window label a kept anchor re-occupies, if identified.
    kept: Vec<Option<usize>>,
    droppable: u32,
    /// Per token: closed neighborhood within the replacement, as token mask.
    tok_closed: Vec<u32>,
    /// Per token: whether it has any neighbor outside the window afterwards.
    outside: Vec<bool>,
    /// Per token: label mask the lifted set must intersect when the token is
    /// in the reduced solution (outside vertices it used to dominate).
    duties: Vec<u64>,
    /// Per window label: (side gate, blocker token mask) if the label can be
    /// dominated from outside.
    escapes: Vec<Option<(SideKey, u32)>>,
}

fn window_model(kind: RuleKind) -> WindowModel {
    let geo = kind.geometry();
    let w = geo.window;

    let mut k_closed = vec![0u64; w];
    for v in 0..w {
        k_closed[v] |= 1 << v;
        if v > 0 {
            k_closed[v] |= 1 << (v - 1);
        }
        if v + 1 < w {
            k_closed[v] |= 1 << (v + 1);
        }
    }
    for &h in geo.hats_before {
        debug_assert!(h >= 1 && h + 1 < w, "in-window hats keep chords inside");
        k_closed[h - 1] |= 1 << (h + 1);
        k_closed[h + 1] |= 1 << (h - 1);
    }

    let (tokens, kept, outside, repl_hats): (usize, Vec<_>, Vec<_>, &[usize]) =
        match geo.replacement {
            Replacement::Merged => (1, vec![Some(0)], vec![true], &[]),
            Replacement::Path { len, hats } => {
                let mut kept = vec![None; len];
                kept[0] = Some(0);
                kept[len - 1] = Some(w - 1);
                let mut outside = vec![false; len];
                outside[0] = true;
                outside[len - 1] = true;
                (len, kept, outside, hats)
            }
            Replacement::Rewire { hats } => {
                // The window endpoints never carry hats (their first edges
                // belong to the matched run or hat unit), so only they touch
                // anything outside the window.
                let mut kept = vec![None; w];
                kept[0] = Some(0);
                kept[w - 1] = Some(w - 1);
                let outside = (0..w).map(|t| t == 0 || t == w - 1).collect();
                (w, kept, outside, hats)
            }
        };

    let mut tok_closed = vec![0u32; tokens];
    for t in 0..tokens {
        tok_closed[t] |= 1 << t;
    }
    if tokens > 1 {
        for t in 0..tokens - 1 {
            tok_closed[t] |= 1 << (t + 1);
            tok_closed[t + 1] |= 1 << t;
        }
        for &h in repl_hats {
            debug_assert!(h >= 1 && h + 1 < tokens);
            tok_closed[h - 1] |= 1 << (h + 1);
            tok_closed[h + 1] |= 1 << (h - 1);
        }
    }

    let mut droppable = 0u32;
    let mut duties = vec![0u64; tokens];
    for t in 0..tokens {
        if kept[t].is_none() {
            droppable |= 1 << t;
        }
    }
    let mut escapes: Vec<Option<(SideKey, u32)>> = vec![None; w];
    match geo.replacement {
        Replacement::Merged => {
            // The merged vertex took over both window boundaries: keeping
            // label 0 restores its leftward coverage, a duty on the last
            // label restores the rightward one.
            duties[0] = 1 << (w - 1);
            escapes[0] = Some((SideKey::Left, tok_closed[0]));
            escapes[w - 1] = Some((SideKey::Right, tok_closed[0]));
        }
        Replacement::Path { len, .. } => {
            escapes[0] = Some((SideKey::Any, tok_closed[0]));
            escapes[w - 1] = Some((SideKey::Any, tok_closed[len - 1]));
        }
        Replacement::Rewire { .. } => {
            // Dropped tokens are window-interior on both sides of the
            // rewrite, so rewires carry no duties; the kept endpoints keep
            // their outside coverage verbatim.
            for t in 0..tokens {
                if outside[t] {
                    escapes[t] = Some((SideKey::Any, tok_closed[t]));
                }
            }
        }
    }

    WindowModel {
        w,
        tokens,
        k_closed,
        kept,
        droppable,
        tok_closed,
        outside,
        duties,
        escapes,
    }
}

impl WindowModel {
    /// A `π` is feasible iff every replacement vertex can be dominated at
    /// all: by `π` itself or from outside the window.
    fn feasible(&self, pi: u32) -> bool {
        (0..self.tokens).all(|t| pi & self.tok_closed[t] != 0 || self.outside[t])
    }

    /// Does `S` (plus kept anchors, plus escapes `π` leaves open) dominate
    /// the whole window and discharge every duty?
    fn check_case(&self, pi: u32, side: SideKey, s: &[usize]) -> bool {
        let mut local = 0u64;
        for &label in s {
            if label >= self.w {
                return false;
            }
            local |= 1 << label;
        }
        for t in 0..self.tokens {
            if pi & (1 << t) != 0 {
                if let Some(label) = self.kept[t] {
                    local |= 1 << label;
                }
            }
        }
        for t in 0..self.tokens {
            if pi & (1 << t) != 0 && self.duties[t] != 0 && local & self.duties[t] == 0 {
                return false;
            }
        }
        for v in 0..self.w {
            if self.k_closed[v] & local != 0 {
                continue;
            }
            match self.escapes[v] {
                Some((gate, blockers)) if pi & blockers == 0 => {
                    let gate_open = match gate {
                        SideKey::Any => true,
                        SideKey::Left => side == SideKey::Left,
                        SideKey::Right => side == SideKey::Right,
                    };
                    if !gate_open {
                        return false;
                    }
                }
                _ => return false,
            }
        }
        true
    }

    /// Smallest valid `S` within `budget`, lexicographically first among the
    /// smallest.
    fn derive(&self, pi: u32, side: SideKey, budget: usize) -> Option<Vec<usize>> {
        for size in 0..=budget {
            let mut combo: Vec<usize> = (0..size).collect();
            loop {
                if self.check_case(pi, side, &combo) {
                    return Some(combo);
                }
                if !next_combination(&mut combo, self.w) {
                    break;
                }
            }
        }
        None
    }
}

/// Advance `combo` to the next k-subset of `0..limit` in lex order.
fn next_combination(combo: &mut [usize], limit: usize) -> bool {
    let k = combo.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] + 1 <= limit - (k - i) {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

// ---------------------------------------------------------------------------
// Seed registry: audited table entries that take precedence over derivation.
// ---------------------------------------------------------------------------

fn mask(tokens: &[usize]) -> u32 {
    tokens.iter().fold(0, |m, &t| m | 1 << t)
}

fn seed_registry(kind: RuleKind) -> Vec<(u32, SideKey, Vec<usize>)> {
    use RuleKind::*;
    use SideKey::*;
    match kind {
        // The slide tables derive completely: whichever of the two window
        // endpoints the reduced solution holds, an equal-size exchange of
        // the interior members re-covers the pre-jump window.
        SlideRight => Vec::new(),
        SlideLeft => Vec::new(),
        FoldAba => {
            let mut v = vec![
                (mask(&[0, 3]), Any, vec![3]),
                (mask(&[0]), Any, vec![5]),
                (mask(&[3]), Any, vec![2]),
            ];
            // Whenever a fresh mid-path hat is in the reduced solution, one
            // vertex per original hat pair re-covers the window.
            for pi in 1u32..16 {
                if pi & mask(&[1, 2]) != 0 {
                    v.push((pi, Any, vec![2, 5]));
                }
            }
            v
        }
        MergeAa => vec![(1, Any, vec![4]), (0, Any, vec![2])],
        MergeOb => vec![(1, Any, vec![4]), (0, Left, vec![2]), (0, Right, vec![1])],
        MergeBo => Vec::new(),
        MergeOaooa => vec![
            (1, Any, vec![3, 7]),
            (0, Left, vec![3, 7]),
            (0, Right, vec![1, 5]),
        ],
        MergeAooao => Vec::new(),
        FoldBaooab => vec![
            (mask(&[0, 4]), Any, vec![5, 7]),
            (mask(&[0, 1]), Any, vec![5, 9]),
        ],
        MergeAoaoabb => vec![(0, Any, vec![2, 5, 8, 12])],
        MergeBbba => vec![(1, Any, vec![4, 6, 11]), (0, Any, vec![1, 4, 9])],
    }
}

fn build_table(kind: RuleKind) -> CaseTable {
    let geo = kind.geometry();
    let model = window_model(kind);
    let seeds = seed_registry(kind);
    let is_merged = matches!(geo.replacement, Replacement::Merged);

    let seed_for = |pi: u32, side: SideKey| -> Option<&Vec<usize>> {
        seeds
            .iter()
            .find(|(m, sk, _)| *m == pi && *sk == side)
            .map(|(_, _, s)| s)
    };

    let mut table = CaseTable::new();
    for pi in 0..(1u32 << model.tokens) {
        if !model.feasible(pi) {
            continue;
        }
        let budget = (pi & model.droppable).count_ones() as usize + geo.bound;

        if let Some(s) = seed_for(pi, SideKey::Any) {
            if s.len() <= budget && model.check_case(pi, SideKey::Any, s) {
                table.insert((pi, SideKey::Any), s.clone());
                continue;
            }
            panic!(
                "seed entry for {} mask {:#b} (any side) fails validation",
                kind.name(),
                pi
            );
        }

        let sides: &[SideKey] = if is_merged && pi == 0 {
            &[SideKey::Left, SideKey::Right]
        } else {
            &[SideKey::Any]
        };
        for &side in sides {
            if let Some(s) = seed_for(pi, side) {
                if s.len() <= budget && model.check_case(pi, side, s) {
                    table.insert((pi, side), s.clone());
                    continue;
                }
                panic!(
                    "seed entry for {} mask {:#b} side {:?} fails validation",
                    kind.name(),
                    pi,
                    side
                );
            }
            let s = model.derive(pi, side, budget).unwrap_or_else(|| {
                panic!(
                    "no valid lift for {} mask {:#b} side {:?} within budget {}",
                    kind.name(),
                    pi,
                    side,
                    budget
                )
            });
            table.insert((pi, side), s);
        }
    }
    table
}

// ---------------------------------------------------------------------------
// Applying a rule and lifting through it.
// ---------------------------------------------------------------------------

/// Deliberate corruption knobs for exercising the failure paths in tests.
#[doc(hidden)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiftFault {
    DropTableEntry,
    OmitOneVertex,
}

/// A successful rewrite: the new cycle plus the frame that lifts dominating
/// sets back through it.
#[derive(Debug, Clone)]
pub struct Application {
    pub after: HatCycle,
    pub frame: LiftFrame,
}

/// Everything needed to pull a dominating set of the rewritten cycle back to
/// the original one. The lift re-certifies its own output.
#[derive(Debug, Clone)]
pub struct LiftFrame {
    kind: RuleKind,
    before: HatCycle,
    after_digest: u64,
    /// Window positions in the original cycle, label order.
    window: Vec<usize>,
    /// Positions of the anchor tokens in the rewritten cycle.
    anchor_positions: Vec<usize>,
    /// Rewritten position to original position; `None` for fresh vertices.
    new_to_old: Vec<Option<usize>>,
    /// Positions whose membership in the reduced solution proves the merged
    /// vertex is dominated from the left / right.
    left_probes: Vec<usize>,
    right_probes: Vec<usize>,
    fault: Option<LiftFault>,
}

/// Apply `kind` with window label 0 at position `start`.
///
/// The hats inside the window must match the rule's pattern exactly.
pub fn apply(h: &HatCycle, kind: RuleKind, start: usize) -> Result<Application> {
    let geo = kind.geometry();
    let n = h.n();
    let w = geo.window;
    let mismatch = || Error::PatternMismatch {
        rule: kind.name().to_string(),
        position: start,
    };
    if n < geo.min_n || start >= n {
        return Err(mismatch());
    }
    let window: Vec<usize> = (0..w).map(|i| (start + i) % n).collect();
    for (label, &pos) in window.iter().enumerate() {
        let expected = geo.hats_before.contains(&label);
        if h.has_hat(pos) != expected {
            return Err(mismatch());
        }
    }

    let internal = |detail: String| Error::Internal { detail };
    let (after, anchor_positions, new_to_old) = match geo.replacement {
        Replacement::Rewire { hats } => {
            let mut new_hats = h.hats().clone();
            for &label in geo.hats_before {
                new_hats.remove(&window[label]);
            }
            for &label in hats {
                new_hats.insert(window[label]);
            }
            let flat: Vec<usize> = new_hats.into_iter().collect();
            let after = HatCycle::new(n, &flat)
                .map_err(|e| internal(format!("rewired cycle is malformed: {e}")))?;
            let new_to_old: Vec<Option<usize>> = (0..n)
                .map(|p| (!window.contains(&p)).then_some(p))
                .collect();
            (after, window.clone(), new_to_old)
        }
        Replacement::Merged | Replacement::Path { .. } => {
            let (chunk_len, chunk_hats): (usize, &[usize]) = match geo.replacement {
                Replacement::Merged => (1, &[]),
                Replacement::Path { len, hats } => (len, hats),
                Replacement::Rewire { .. } => unreachable!(),
            };
            let outside = n - w;
            let n_after = outside + chunk_len;
            let mut new_to_old: Vec<Option<usize>> = Vec::with_capacity(n_after);
            let mut new_hats: Vec<usize> = Vec::new();
            for r in 0..outside {
                let old = (start + w + r) % n;
                new_to_old.push(Some(old));
                if h.has_hat(old) {
                    new_hats.push(r);
                }
            }
            for i in 0..chunk_len {
                new_to_old.push(None);
                if chunk_hats.contains(&i) {
                    new_hats.push(outside + i);
                }
            }
            new_hats.sort_unstable();
            let after = HatCycle::new(n_after, &new_hats)
                .map_err(|e| internal(format!("rewritten cycle is malformed: {e}")))?;
            let anchors: Vec<usize> = (0..chunk_len).map(|i| outside + i).collect();
            (after, anchors, new_to_old)
        }
    };

    let (mut left_probes, mut right_probes) = (Vec::new(), Vec::new());
    if matches!(geo.replacement, Replacement::Merged) {
        let n_after = after.n();
        let left = n_after - 2;
        left_probes.push(left);
        if after.has_hat(left) {
            left_probes.push(n_after - 3);
        }
        right_probes.push(0);
        if after.has_hat(0) {
            right_probes.push(1);
        }
    }

    let frame = LiftFrame {
        kind,
        before: h.clone(),
        after_digest: after.digest(),
        window,
        anchor_positions,
        new_to_old,
        left_probes,
        right_probes,
        fault: None,
    };
    Ok(Application { after, frame })
}

impl LiftFrame {
    pub fn rule(&self) -> RuleKind {
        self.kind
    }

    pub fn n_before(&self) -> usize {
        self.before.n()
    }

    pub fn window_start(&self) -> usize {
        self.window[0]
    }

    /// Force a specific failure inside [`LiftFrame::lift`]; test-only.
    #[doc(hidden)]
    pub fn inject_fault(&mut self, fault: LiftFault) {
        self.fault = Some(fault);
    }

    /// Pull a dominating set of the rewritten cycle back to the original.
    ///
    /// `after` must be the cycle this frame produced (checked by digest).
    /// The result is certified against the original cycle and against the
    /// rule's growth bound before it is returned.
    pub fn lift(&self, after: &HatCycle, reduced: &BTreeSet<usize>) -> Result<BTreeSet<usize>> {
        if after.digest() != self.after_digest {
            return Err(Error::Internal {
                detail: format!(
                    "lift frame for {} applied to a cycle it did not produce",
                    self.kind
                ),
            });
        }
        let geo = self.kind.geometry();
        let mut pi = 0u32;
        for (t, &p) in self.anchor_positions.iter().enumerate() {
            if reduced.contains(&p) {
                pi |= 1 << t;
            }
        }
        let side = if matches!(geo.replacement, Replacement::Merged) && pi == 0 {
            if self.left_probes.iter().any(|p| reduced.contains(p)) {
                SideKey::Left
            } else if self.right_probes.iter().any(|p| reduced.contains(p)) {
                SideKey::Right
            } else {
                return Err(Error::CertificationFailed {
                    stage: format!("{} lift", self.kind),
                    detail: "reduced solution dominates the merged vertex from neither side"
                        .to_string(),
                });
            }
        } else {
            SideKey::Any
        };

        let mut outside: BTreeSet<usize> = BTreeSet::new();
        for &p in reduced {
            if self.anchor_positions.contains(&p) {
                continue;
            }
            match self.new_to_old.get(p).copied().flatten() {
                Some(old) => {
                    outside.insert(old);
                }
                None => {
                    return Err(Error::Internal {
                        detail: format!("reduced solution holds unmapped position {p}"),
                    })
                }
            }
        }

        let table = &tables()[&self.kind];
        let entry = if self.fault == Some(LiftFault::DropTableEntry) {
            None
        } else {
            table
                .get(&(pi, side))
                .or_else(|| table.get(&(pi, SideKey::Any)))
        };

        let mut lifted = outside.clone();
        match entry {
            Some(s) => {
                let model = window_model(self.kind);
                for t in 0..model.tokens {
                    if pi & (1 << t) != 0 {
                        if let Some(label) = model.kept[t] {
                            lifted.insert(self.window[label]);
                        }
                    }
                }
                for &label in s {
                    lifted.insert(self.window[label]);
                }
            }
            None => {
                // Tables cover every feasible case, so a miss means `reduced`
                // leaves some replacement vertex undominated — falsification,
                // not repair material.
                return Err(Error::CaseTableMiss {
                    rule: self.kind.name().to_string(),
                    mask: pi,
                    side: side.as_char(),
                });
            }
        }
        if self.fault == Some(LiftFault::OmitOneVertex) {
            lifted.pop_last();
        }

        let allowed = reduced.len() + geo.bound;
        if lifted.len() > allowed {
            return Err(Error::BoundViolated {
                context: self.kind.name(),
                n: self.before.n(),
                size: lifted.len(),
                bound: allowed,
            });
        }
        let witness: Vec<usize> = lifted.iter().copied().collect();
        if !self.before.to_raw().is_dominating(&witness) {
            let missed = self.before.to_raw().undominated(&witness);
            return Err(Error::CertificationFailed {
                stage: format!("{} lift", self.kind),
                detail: format!("lifted set leaves {missed:?} undominated"),
            });
        }
        Ok(lifted)
    }
}
