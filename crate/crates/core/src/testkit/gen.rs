//! Seeded instance generators.
//!
//! All generators are deterministic in their seed (ChaCha8), so failing
//! cases can be replayed from the reported seed alone.
//!
//! - `triangulation`: random non-crossing triangulations of both sides of a
//!   cycle. Without the degree constraint, both sides are sampled
//!   independently by recursive arc splitting. With δ ≥ 4 the sample is a
//!   seeded diagonal-flip walk from a closed-form valid base, accepting only
//!   flips that keep both sides disjoint and every degree ≥ 4 — rejection
//!   sampling alone almost never hits δ ≥ 4 beyond n ≈ 14.
//! - `hat_dense`: random hat cycles above the ⌈(n+1)/2⌉ density line, by
//!   tiling the cycle with weighted (run, gap) blocks.
//! - `terminal_pattern`: hat cycles on which no rewrite rule fires — strings
//!   A(BBA)^k with single-edge gaps — exercising the terminal solver
//!   directly. x = total BB pairs, y = number of strings, n = 8x + 3y.

use std::collections::BTreeSet;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{normalize_chord, Chord, ChordedCycle};
use crate::hats::HatCycle;

/// Attempt cap for rejection sampling.
const MAX_ATTEMPTS: u64 = 100_000;

/// Random triangulation of an n-cycle (both sides). With `min_degree_4`
/// every vertex of the result has degree ≥ 4 (needs n ≥ 6).
pub fn triangulation(n: usize, seed: u64, min_degree_4: bool) -> Result<ChordedCycle> {
    if n < 4 {
        return Err(Error::Infeasible {
            detail: format!("triangulating both sides needs n ≥ 4, got {n}"),
        });
    }
    if min_degree_4 && n < 6 {
        return Err(Error::Infeasible {
            detail: format!("δ ≥ 4 forces n ≥ 6, got {n}"),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (inner, outer) = if min_degree_4 {
        let (mut inner, mut outer) = base_pair(n);
        flip_walk(n, &mut inner, &mut outer, &mut rng);
        relabel_pair(n, &mut inner, &mut outer, &mut rng);
        (inner, outer)
    } else {
        sample_disjoint_sides(n, &mut rng)?
    };
    let inner: Vec<Chord> = inner.into_iter().collect();
    let outer: Vec<Chord> = outer.into_iter().collect();
    let cc = ChordedCycle::new(n, &inner, &outer)
        .expect("generators only emit distinct span-≥2 chords");
    debug_assert!(cc.validate(min_degree_4).overall);
    Ok(cc)
}

/// Independent triangulations of the two sides, redrawn until they share no
/// chord (a shared chord would be a multi-edge in the plane graph).
fn sample_disjoint_sides(
    n: usize,
    rng: &mut impl Rng,
) -> Result<(BTreeSet<Chord>, BTreeSet<Chord>)> {
    for _attempt in 0..MAX_ATTEMPTS {
        let inner: BTreeSet<Chord> = triangulate_polygon(n, rng).into_iter().collect();
        let outer: BTreeSet<Chord> = triangulate_polygon(n, rng).into_iter().collect();
        if inner.is_disjoint(&outer) {
            return Ok((inner, outer));
        }
    }
    Err(Error::FeasibilityTimeout {
        attempts: MAX_ATTEMPTS,
    })
}

/// A closed-form side pair with disjoint sides and every degree ≥ 4.
///
/// Even n: span-2 chords over the even vertices ring the inner side and a fan
/// from 0 fills the even polygon; the outer side mirrors this on the odd
/// vertices. Every vertex picks up two ring chords.
///
/// Odd n: a serpentine triangulation (1,n−1), (1,n−2), (2,n−2), … inside, and
/// the same serpentine shifted by −2 outside. The serpentine's chord-free
/// vertices (0 and the middle) land on doubly-covered positions of the shift,
/// so all degrees reach 4, and the chord families stay disjoint because their
/// endpoint sums differ mod n.
fn base_pair(n: usize) -> (BTreeSet<Chord>, BTreeSet<Chord>) {
    debug_assert!(n >= 6);
    let mut inner = BTreeSet::new();
    let mut outer = BTreeSet::new();
    if n % 2 == 0 {
        for i in (0..n).step_by(2) {
            inner.insert(normalize_chord(i, (i + 2) % n));
            outer.insert(normalize_chord(i + 1, (i + 3) % n));
        }
        for j in (4..=n - 4).step_by(2) {
            inner.insert(normalize_chord(0, j));
            if j + 1 <= n - 3 {
                outer.insert(normalize_chord(1, j + 1));
            }
        }
    } else {
        let serpentine = serpentine_chords(n);
        inner.extend(serpentine.iter().copied());
        outer.extend(
            serpentine
                .iter()
                .map(|&(a, b)| normalize_chord((a + n - 2) % n, (b + n - 2) % n)),
        );
    }
    debug_assert_eq!(inner.len(), n - 3);
    debug_assert_eq!(outer.len(), n - 3);
    debug_assert!(inner.is_disjoint(&outer));
    (inner, outer)
}

/// The zigzag triangulation (1,n−1), (1,n−2), (2,n−2), (2,n−3), …
fn serpentine_chords(n: usize) -> Vec<Chord> {
    let mut chords = vec![(1, n - 1)];
    let (mut lo, mut hi) = (1, n - 1);
    while chords.len() < n - 3 {
        if chords.len() % 2 == 1 {
            hi -= 1;
        } else {
            lo += 1;
        }
        chords.push((lo, hi));
    }
    chords
}

/// Seeded random walk over valid configurations: repeatedly pick a chord and
/// try to flip it to the cross diagonal of its two triangles, skipping flips
/// that would drop a degree below 4, collide with an existing chord, or turn
/// the diagonal into a cycle edge.
fn flip_walk(
    n: usize,
    inner: &mut BTreeSet<Chord>,
    outer: &mut BTreeSet<Chord>,
    rng: &mut impl Rng,
) {
    let mut counts = vec![0usize; n];
    for &(a, b) in inner.iter().chain(outer.iter()) {
        counts[a] += 1;
        counts[b] += 1;
    }
    for _ in 0..12 * n {
        let use_inner = rng.gen_bool(0.5);
        let idx = rng.gen_range(0..n - 3);
        let flip = {
            let side: &BTreeSet<Chord> = if use_inner { inner } else { outer };
            let &(a, b) = side.iter().nth(idx).expect("sides hold n − 3 chords");
            if counts[a] < 3 || counts[b] < 3 {
                continue; // an endpoint would fall to degree 3
            }
            let p = arc_apex(n, side, a, b);
            let q = arc_apex(n, side, b, a);
            if (p + 1) % n == q || (q + 1) % n == p {
                continue; // diagonal would coincide with a cycle edge
            }
            let diagonal = normalize_chord(p, q);
            if inner.contains(&diagonal) || outer.contains(&diagonal) {
                continue;
            }
            ((a, b), p, q, diagonal)
        };
        let ((a, b), p, q, diagonal) = flip;
        let side = if use_inner { &mut *inner } else { &mut *outer };
        side.remove(&(a, b));
        side.insert(diagonal);
        counts[a] -= 1;
        counts[b] -= 1;
        counts[p] += 1;
        counts[q] += 1;
    }
}

/// Apex of the triangle that chord (a, b) bounds on the arc a+1, …, b−1
/// (cyclically): the unique common neighbour of a and b strictly inside that
/// arc. Uniqueness follows from the side being non-crossing.
fn arc_apex(n: usize, side: &BTreeSet<Chord>, a: usize, b: usize) -> usize {
    let edge = |x: usize, y: usize| {
        (x + 1) % n == y || (y + 1) % n == x || side.contains(&normalize_chord(x, y))
    };
    let mut x = (a + 1) % n;
    while x != b {
        if edge(a, x) && edge(b, x) {
            return x;
        }
        x = (x + 1) % n;
    }
    unreachable!("a chord of a triangulated side always borders two triangles")
}

/// Random rotation/reflection of the vertex labels plus a possible side swap;
/// all three preserve validity and spread the walk's bias over labelings.
fn relabel_pair(
    n: usize,
    inner: &mut BTreeSet<Chord>,
    outer: &mut BTreeSet<Chord>,
    rng: &mut impl Rng,
) {
    let shift = rng.gen_range(0..n);
    let reflect = rng.gen_bool(0.5);
    let map = |v: usize| {
        if reflect {
            (n - v + shift) % n
        } else {
            (v + shift) % n
        }
    };
    for side in [&mut *inner, &mut *outer] {
        *side = side
            .iter()
            .map(|&(a, b)| normalize_chord(map(a), map(b)))
            .collect();
    }
    if rng.gen_bool(0.5) {
        std::mem::swap(inner, outer);
    }
}

/// Non-crossing triangulation of the polygon 0..n−1 by recursive arc
/// splitting over the base edge (n−1, 0).
fn triangulate_polygon(n: usize, rng: &mut impl Rng) -> Vec<(usize, usize)> {
    let mut chords = Vec::with_capacity(n.saturating_sub(3));
    let mut stack = vec![(0usize, n - 1)];
    while let Some((a, b)) = stack.pop() {
        if b - a < 2 {
            continue;
        }
        // Triangle (a, c, b); middle-biased apex.
        let weights: Vec<usize> = (a + 1..b).map(|c| (c - a).min(b - c)).collect();
        let total: usize = weights.iter().sum();
        let mut pick = rng.gen_range(0..total);
        let mut c = a + 1;
        for (i, w) in weights.iter().enumerate() {
            if pick < *w {
                c = a + 1 + i;
                break;
            }
            pick -= w;
        }
        if c - a >= 2 {
            chords.push((a, c));
        }
        if b - c >= 2 {
            chords.push((c, b));
        }
        stack.push((a, c));
        stack.push((c, b));
    }
    chords
}

/// Random hat cycle meeting the density requirement, n ≥ 5.
pub fn hat_dense(n: usize, seed: u64) -> Result<HatCycle> {
    if n < 5 {
        // n = 4 admits at most 2 hats under the run invariant but needs 3.
        return Err(Error::Infeasible {
            detail: format!("no hat cycle on {n} vertices meets density"),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _attempt in 0..MAX_ATTEMPTS {
        let mut hats = Vec::new();
        let mut cursor = 0usize;
        while cursor < n {
            let rem = n - cursor;
            // Blocks: (hats placed, positions consumed, weight); every block
            // ends with a gap so runs stay ≤ 2 even across the wrap.
            let block = match rem {
                1 => 0, // lone gap
                2 => {
                    if rng.gen_bool(0.6) {
                        1
                    } else {
                        0
                    }
                }
                _ => {
                    let roll = rng.gen_range(0..10);
                    if roll < 5 {
                        2
                    } else if roll < 8 {
                        1
                    } else {
                        0
                    }
                }
            };
            match block {
                2 => {
                    hats.push(cursor);
                    hats.push(cursor + 1);
                    cursor += 3;
                }
                1 => {
                    hats.push(cursor);
                    cursor += 2;
                }
                _ => cursor += 1,
            }
        }
        let h = HatCycle::new(n, &hats).expect("block tiling keeps runs ≤ 2");
        if h.meets_density() {
            return Ok(h);
        }
    }
    Err(Error::FeasibilityTimeout {
        attempts: MAX_ATTEMPTS,
    })
}

/// A hat cycle in terminal normal form: y strings A(BBA)^kᵢ with single-edge
/// gaps, Σkᵢ = x. Requires x ≥ y ≥ 1. n = 8x + 3y, t = 5x + y.
pub fn terminal_pattern(x: usize, y: usize, seed: u64) -> Result<HatCycle> {
    if y == 0 || x < y {
        return Err(Error::Invalid {
            detail: format!("terminal pattern needs x ≥ y ≥ 1, got x = {x}, y = {y}"),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Random composition of x into y parts ≥ 1.
    let mut parts = vec![1usize; y];
    for _ in 0..(x - y) {
        let i = rng.gen_range(0..y);
        parts[i] += 1;
    }
    let n = 8 * x + 3 * y;
    let mut hats = Vec::new();
    let mut s = 0usize; // cover start of the current string
    for &k in &parts {
        hats.push(s + 1); // leading A
        for j in 0..k {
            let b = s + 2 + 8 * j; // BBA block: B@b, B@b+3, A@b+6
            hats.extend_from_slice(&[b + 1, b + 2, b + 4, b + 5, b + 7]);
        }
        // Advance over the cover; the single O gap edge sits between this
        // cover's last vertex and the next cover's first, adding no vertices.
        s += 3 + 8 * k;
    }
    debug_assert_eq!(s, n, "strings and gaps tile the cycle exactly");
    let h = HatCycle::new(n, &hats)?;
    debug_assert_eq!(h.t(), 5 * x + y);
    debug_assert!(h.meets_density());
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hats::SegmentKind;

    #[test]
    fn triangulation_is_valid_and_seed_deterministic() {
        for n in [4, 5, 6, 9, 14, 24] {
            let cc = triangulation(n, 42, false).unwrap();
            assert!(cc.validate(false).overall, "n = {n}");
            let again = triangulation(n, 42, false).unwrap();
            assert_eq!(cc, again, "same seed, same instance (n = {n})");
        }
    }

    #[test]
    fn min_degree_instances_across_the_range() {
        for n in 6..=40 {
            for seed in 0..5 {
                let cc = triangulation(n, seed, true).unwrap();
                let report = cc.validate(true);
                assert!(report.overall, "n = {n} seed = {seed}: {:?}", report.failed());
            }
        }
    }

    #[test]
    fn min_degree_instances_vary_with_the_seed() {
        let distinct: BTreeSet<_> = (0..20)
            .map(|seed| triangulation(20, seed, true).unwrap())
            .map(|cc| cc.chords(crate::graph::Side::Inner).clone())
            .collect();
        assert!(
            distinct.len() >= 15,
            "flip walk should spread over configurations, got {} distinct of 20",
            distinct.len()
        );
    }

    #[test]
    fn hat_dense_meets_density_and_runs() {
        for n in 5..=40 {
            let h = hat_dense(n, 7 * n as u64 + 1).unwrap();
            assert!(h.meets_density(), "n = {n}");
            assert_eq!(h, hat_dense(n, 7 * n as u64 + 1).unwrap());
        }
        assert!(matches!(hat_dense(4, 0), Err(Error::Infeasible { .. })));
    }

    #[test]
    fn terminal_pattern_shape() {
        let h = terminal_pattern(1, 1, 0).unwrap();
        assert_eq!(h.n(), 11);
        assert_eq!(h.t(), 6);
        assert_eq!(h.segments().word(), "ABBAO");

        let h = terminal_pattern(3, 2, 5).unwrap();
        assert_eq!(h.n(), 30);
        assert_eq!(h.t(), 17);
        let chain = h.segments();
        assert_eq!(chain.o_count, 2, "one single-edge gap per string");
        assert_eq!(chain.x2, 6, "2x B segments");
        assert_eq!(chain.x1, 2 + 3, "y + x A segments");
        // No BBB anywhere and every string starts/ends with A.
        for s in chain.strings() {
            assert_eq!(chain.at(s[0]).kind, SegmentKind::A);
            assert_eq!(chain.at(*s.last().unwrap()).kind, SegmentKind::A);
        }

        assert!(terminal_pattern(1, 2, 0).is_err(), "x < y rejected");
    }
}
