//! The end-to-end construction: validate, normalize, branch, solve, certify.
//!
//! `dominate` is the one entry point the CLI and the bindings call. It takes
//! a chorded Hamiltonian cycle, decides which construction applies, runs it,
//! and re-verifies the result against the *original* graph before handing
//! back a [`Certificate`]. Nothing escapes this module unchecked: a bug in
//! any stage surfaces as a hard error (exit code 1), never as a silently
//! wrong set.
//!
//! The branch decision follows the 2-vertex counts (t_I, t_O) of the
//! normalized cycle:
//!
//! * some vertex is universal → it alone dominates (unreachable for valid
//!   δ ≥ 4 inputs, kept for totality);
//! * 4·min(t_I, t_O) ≤ n → the side with fewer 2-vertices is solved exactly
//!   by the outerplanar program, and ⌊5n/16⌋ ≥ the exact minimum there
//!   (cross-checked by the 4|D| ≤ n + t count);
//! * otherwise both counts exceed n/4, so the 2-vertices are dense enough
//!   (t ≥ ⌈(n+1)/2⌉) for the hat-cycle reduction, which lands within ⌈2n/7⌉.
//!
//! Either way the final set is checked against max{⌈2n/7⌉, ⌊5n/16⌋} and
//! against adjacency in the input graph, and the certificate records which
//! branch ran and how long its rewrite trace was.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::bounds::domination_bound;
use crate::error::{Error, Result};
use crate::graph::{ChordedCycle, Side};
use crate::hats::solver::{self, TerminalKind};
use crate::hats::HatCycle;
use crate::normalize;
use crate::outerplanar;

/// Which construction produced the set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    Universal,
    OuterplanarInner,
    OuterplanarOuter,
    Reduction,
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Branch::Universal => "universal",
            Branch::OuterplanarInner => "outerplanar-inner",
            Branch::OuterplanarOuter => "outerplanar-outer",
            Branch::Reduction => "reduction",
        };
        write!(f, "{s}")
    }
}

/// The checked result: a dominating set, the bound it beat, and how.
#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub n: usize,
    pub branch: Branch,
    /// Vertex ids of the input graph, sorted.
    pub set: Vec<usize>,
    /// max{⌈2n/7⌉, ⌊5n/16⌋} at this n; `set.len() <= bound` always holds.
    pub bound: usize,
    /// Re-verified against the input adjacency just before return.
    pub valid: bool,
    /// Number of rewrite steps taken (0 outside the reduction branch).
    pub trace_length: usize,
}

/// One step of the run, for `--trace` output and debugging.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "event", rename_all = "kebab-case")]
pub enum TraceEvent {
    Validated {
        n: usize,
    },
    UniversalVertex {
        vertex: usize,
    },
    Normalized {
        rewirings: usize,
    },
    BranchChosen {
        inner_two_vertices: usize,
        outer_two_vertices: usize,
        branch: Branch,
    },
    Rewrite {
        rule: &'static str,
        window_start: usize,
        n_before: usize,
        n_after: usize,
    },
    Terminal {
        kind: TerminalKind,
        n: usize,
    },
    Certified {
        size: usize,
        bound: usize,
    },
}

/// A certificate plus the trace that led to it.
#[derive(Debug, Clone, Serialize)]
pub struct Outcome {
    pub certificate: Certificate,
    pub trace: Vec<TraceEvent>,
}

/// Check `set` against the graph of `cc`. Errors only on malformed input
/// (out-of-range ids); a non-dominating set is `Ok(false)`.
pub fn verify_dominating(cc: &ChordedCycle, set: &[usize]) -> Result<bool> {
    let n = cc.n();
    if let Some(&v) = set.iter().find(|&&v| v >= n) {
        return Err(Error::Invalid {
            detail: format!("set contains vertex {v}, but the graph has n = {n}"),
        });
    }
    Ok(cc.to_raw().is_dominating(set))
}

/// Run the full construction on a validated input and certify the result.
pub fn dominate(cc: &ChordedCycle) -> Result<Outcome> {
    let n = cc.n();
    cc.validate(true).into_result()?;
    let mut trace = vec![TraceEvent::Validated { n }];

    // Totality case first: a universal vertex dominates by itself. Valid
    // δ ≥ 4 inputs never get here (an apex over one side forces a degree-3
    // vertex, which validation rejects), but the construction stays total.
    if let Some(v) = cc.universal_vertex() {
        trace.push(TraceEvent::UniversalVertex { vertex: v });
        return finish(cc, Branch::Universal, vec![v].into_iter().collect(), 0, trace);
    }

    let normalized = normalize::normalize(cc)?;
    trace.push(TraceEvent::Normalized {
        rewirings: normalized.steps.len(),
    });
    let work = &normalized.cycle;

    let (t_inner, t_outer) = work.two_vertex_counts();
    let (branch, side) = if 4 * t_inner.min(t_outer) <= n {
        if t_inner <= t_outer {
            (Branch::OuterplanarInner, Some(Side::Inner))
        } else {
            (Branch::OuterplanarOuter, Some(Side::Outer))
        }
    } else {
        (Branch::Reduction, None)
    };
    trace.push(TraceEvent::BranchChosen {
        inner_two_vertices: t_inner,
        outer_two_vertices: t_outer,
        branch,
    });

    let (set, trace_length) = match side {
        Some(side) => {
            // The chosen side has few 2-vertices, so its exact minimum is
            // small: 4|D| ≤ n + t ≤ n + n/4 gives |D| ≤ ⌊5n/16⌋.
            let set = outerplanar::min_dominating_side(work, side)?;
            outerplanar::degree_two_bound_check(work, side, &set)?;
            (set, 0)
        }
        None => {
            // Both sides have more than n/4 2-vertices, so together they
            // pass the density threshold ⌈(n+1)/2⌉ the reduction needs.
            let hats: Vec<usize> = work.two_vertices().iter().map(|&(v, _)| v).collect();
            let hat_cycle = HatCycle::new(n, &hats).map_err(|e| Error::Internal {
                detail: format!("normalized cycle fails the hat run invariant: {e}"),
            })?;
            let solution = solver::solve(&hat_cycle)?;
            for step in &solution.steps {
                trace.push(TraceEvent::Rewrite {
                    rule: step.rule,
                    window_start: step.window_start,
                    n_before: step.n_before,
                    n_after: step.n_after,
                });
            }
            trace.push(TraceEvent::Terminal {
                kind: solution.terminal,
                n: solution.terminal_n,
            });
            (solution.set, solution.steps.len())
        }
    };

    // Positions name vertices of the normalized cycle; translate back to
    // the input labelling before certifying.
    let set: BTreeSet<usize> = set.into_iter().map(|p| normalized.labels[p]).collect();
    finish(cc, branch, set, trace_length, trace)
}

/// Re-verify against the original graph, check the bound, and assemble the
/// certificate. Every branch funnels through here.
fn finish(
    cc: &ChordedCycle,
    branch: Branch,
    set: BTreeSet<usize>,
    trace_length: usize,
    mut trace: Vec<TraceEvent>,
) -> Result<Outcome> {
    let n = cc.n();
    let set: Vec<usize> = set.into_iter().collect();

    let raw = cc.to_raw();
    let undominated = raw.undominated(&set);
    if !undominated.is_empty() {
        return Err(Error::CertificationFailed {
            stage: "final certificate".into(),
            detail: format!(
                "vertices {undominated:?} are not dominated by {set:?} (branch {branch})"
            ),
        });
    }

    let bound = domination_bound(n);
    if set.len() > bound {
        return Err(Error::BoundViolated {
            context: match branch {
                Branch::Universal => "universal branch",
                Branch::OuterplanarInner => "outerplanar branch (inner side)",
                Branch::OuterplanarOuter => "outerplanar branch (outer side)",
                Branch::Reduction => "reduction branch",
            },
            n,
            size: set.len(),
            bound,
        });
    }

    trace.push(TraceEvent::Certified {
        size: set.len(),
        bound,
    });
    Ok(Outcome {
        certificate: Certificate {
            n,
            branch,
            set,
            bound,
            valid: true,
            trace_length,
        },
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testkit::gen;
    use crate::testkit::{exact_gamma, octahedron, DenseGraph};

    #[test]
    fn the_octahedron_goes_through_the_reduction_branch() {
        let cc = octahedron();
        let outcome = dominate(&cc).expect("octahedron must solve");
        let cert = &outcome.certificate;
        assert_eq!(cert.n, 6);
        assert_eq!(cert.branch, Branch::Reduction, "t_I = t_O = 2, 4·2 > 6");
        assert_eq!(cert.set.len(), 2, "γ(octahedron) = 2");
        assert_eq!(cert.bound, 2, "⌈12/7⌉ = 2 ≥ ⌊30/16⌋ = 1");
        assert!(cert.valid);
        assert!(verify_dominating(&cc, &cert.set).unwrap());
    }

    #[test]
    fn generated_triangulations_certify_and_match_the_oracle() {
        let mut checked = 0;
        for n in 6..=14 {
            for seed in 0..6 {
                let cc = gen::triangulation(n, seed, true).expect("generator must produce an instance");
                let outcome = dominate(&cc).unwrap_or_else(|e| {
                    panic!("n = {n}, seed = {seed} must solve, got {e}")
                });
                let cert = outcome.certificate;
                assert!(cert.valid);
                assert!(
                    cert.set.len() <= cert.bound,
                    "n = {n}: |D| = {} exceeds {}",
                    cert.set.len(),
                    cert.bound
                );
                let (gamma, _) = exact_gamma(&DenseGraph::from(&cc), None).unwrap();
                assert!(
                    cert.set.len() >= gamma,
                    "n = {n}, seed = {seed}: certificate of size {} beats γ = {gamma}?",
                    cert.set.len()
                );
                checked += 1;
            }
        }
        assert!(checked >= 50, "only {checked} instances checked");
    }

    #[test]
    fn low_degree_inputs_are_rejected_before_any_work() {
        // A wheel-like split: vertex 1 keeps degree 3.
        let cc = ChordedCycle::new(6, &[(0, 2), (0, 3), (0, 4)], &[(1, 3), (3, 5)]).unwrap();
        match dominate(&cc) {
            Err(e @ Error::ValidationFailed { .. }) => assert_eq!(e.exit_code(), 2),
            other => panic!("expected ValidationFailed, got {other:?}"),
        }
    }

    #[test]
    fn certificates_are_deterministic() {
        let cc = gen::triangulation(13, 42, true).unwrap();
        let a = dominate(&cc).unwrap();
        let b = dominate(&cc).unwrap();
        assert_eq!(a.certificate.set, b.certificate.set);
        assert_eq!(a.certificate.branch, b.certificate.branch);
        assert_eq!(a.trace.len(), b.trace.len());
    }

    #[test]
    fn certificate_json_exposes_the_agreed_keys() {
        let outcome = dominate(&octahedron()).unwrap();
        let value = serde_json::to_value(&outcome.certificate).unwrap();
        let map = value.as_object().unwrap();
        let mut keys: Vec<&str> = map.keys().map(|k| k.as_str()).collect();
        keys.sort_unstable();
        assert_eq!(
            keys,
            ["bound", "branch", "n", "set", "trace_length", "valid"],
            "certificate JSON layout is part of the CLI contract"
        );
        assert_eq!(map["branch"], "reduction");
    }

    #[test]
    fn verify_rejects_out_of_range_ids() {
        let cc = octahedron();
        match verify_dominating(&cc, &[0, 9]) {
            Err(e @ Error::Invalid { .. }) => assert_eq!(e.exit_code(), 2),
            other => panic!("expected Invalid, got {other:?}"),
        }
    }

    #[test]
    fn mapped_sets_dominate_the_original_labelling() {
        // Normalization may rewire; the certificate must still name input
        // vertices. Check on sizes where rewiring actually happens.
        for n in [10, 12, 16, 20] {
            for seed in 0..4 {
                let cc = gen::triangulation(n, seed, true).unwrap();
                let outcome = dominate(&cc).unwrap();
                assert!(
                    verify_dominating(&cc, &outcome.certificate.set).unwrap(),
                    "n = {n}, seed = {seed}: set does not dominate the input graph"
                );
            }
        }
    }
}
