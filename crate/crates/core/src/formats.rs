//! Text formats for instances, with auto-detection and multi-record files.
//!
//! Three formats share one framing: `#` starts a comment (whole line or
//! trailing), blank lines are ignored, and every record begins with a line
//! holding the single integer n. That makes record boundaries unambiguous —
//! no other line in any format consists of one integer — so generator output
//! (many records in one file) can be piped straight back into the other
//! subcommands.
//!
//! - **edge list**: `n`, then one `u v` pair per line.
//! - **chorded cycle**: `n`, then lines `I i j [i j …]` / `O i j [i j …]`
//!   listing inner/outer chord endpoint pairs (repeatable, accumulated).
//! - **hat cycle**: `n`, then lines `H p [p …]` listing hat positions.
//!
//! Auto-detection looks at the first significant line after n: `I`/`O`
//! markers mean chorded, `H` means hats, anything else is an edge list
//! (including a bare n, which is an edgeless graph).

use crate::error::{Error, ParseKind, Result};
use crate::graph::{ChordedCycle, RawGraph};
use crate::hats::HatCycle;

/// Which on-disk format an instance uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormatKind {
    EdgeList,
    Chorded,
    HatCycle,
}

impl std::fmt::Display for FormatKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FormatKind::EdgeList => write!(f, "edges"),
            FormatKind::Chorded => write!(f, "chorded"),
            FormatKind::HatCycle => write!(f, "hats"),
        }
    }
}

impl std::str::FromStr for FormatKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edges" | "edge-list" | "edgelist" => Ok(FormatKind::EdgeList),
            "chorded" | "cycle" => Ok(FormatKind::Chorded),
            "hats" | "hat-cycle" | "hatcycle" => Ok(FormatKind::HatCycle),
            other => Err(Error::Invalid {
                detail: format!("unknown format '{other}' (edges | chorded | hats)"),
            }),
        }
    }
}

/// One parsed instance, whatever its format was.
#[derive(Debug, Clone)]
pub enum Instance {
    Edges(RawGraph),
    Chorded(ChordedCycle),
    Hats(HatCycle),
}

impl Instance {
    pub fn n(&self) -> usize {
        match self {
            Instance::Edges(g) => g.n(),
            Instance::Chorded(cc) => cc.n(),
            Instance::Hats(h) => h.n(),
        }
    }

    pub fn format(&self) -> FormatKind {
        match self {
            Instance::Edges(_) => FormatKind::EdgeList,
            Instance::Chorded(_) => FormatKind::Chorded,
            Instance::Hats(_) => FormatKind::HatCycle,
        }
    }
}

/// A significant line: 1-based line number and comment-stripped content.
struct Line<'a> {
    number: usize,
    text: &'a str,
}

fn significant_lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let no_comment = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let trimmed = no_comment.trim();
            if trimmed.is_empty() {
                None
            } else {
                Some(Line {
                    number: i + 1,
                    text: trimmed,
                })
            }
        })
        .collect()
}

fn malformed(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        kind: ParseKind::Malformed(msg.into()),
    }
}

fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| malformed(line, format!("expected a non-negative integer, got '{tok}'")))
}

/// Is this line a record header (exactly one integer token)?
fn header_value(line: &Line) -> Option<usize> {
    let mut toks = line.text.split_whitespace();
    match (toks.next(), toks.next()) {
        (Some(t), None) => t.parse::<usize>().ok(),
        _ => None,
    }
}

/// Parse every record in the text. `forced` pins the format; otherwise each
/// record is detected independently.
pub fn parse_instances(text: &str, forced: Option<FormatKind>) -> Result<Vec<Instance>> {
    let lines = significant_lines(text);
    if lines.is_empty() {
        return Err(malformed(1, "empty input (no significant lines)"));
    }
    if header_value(&lines[0]).is_none() {
        return Err(malformed(
            lines[0].number,
            format!("expected a record header (single integer n), got '{}'", lines[0].text),
        ));
    }
    let mut records: Vec<&[Line]> = Vec::new();
    let mut start = 0;
    for i in 1..lines.len() {
        if header_value(&lines[i]).is_some() {
            records.push(&lines[start..i]);
            start = i;
        }
    }
    records.push(&lines[start..]);
    records
        .iter()
        .map(|rec| parse_record(rec, forced))
        .collect()
}

/// Parse a text expected to hold exactly one instance.
pub fn parse_instance(text: &str, forced: Option<FormatKind>) -> Result<Instance> {
    let mut all = parse_instances(text, forced)?;
    if all.len() != 1 {
        return Err(Error::Invalid {
            detail: format!("expected exactly one instance, found {}", all.len()),
        });
    }
    Ok(all.pop().expect("length checked"))
}

fn detect(record: &[Line]) -> FormatKind {
    match record.get(1).and_then(|l| l.text.split_whitespace().next()) {
        Some("I") | Some("O") => FormatKind::Chorded,
        Some("H") => FormatKind::HatCycle,
        _ => FormatKind::EdgeList,
    }
}

fn parse_record(record: &[Line], forced: Option<FormatKind>) -> Result<Instance> {
    let n = header_value(&record[0]).expect("caller checked the header");
    let kind = forced.unwrap_or_else(|| detect(record));
    match kind {
        FormatKind::EdgeList => parse_edges(n, &record[1..]).map(Instance::Edges),
        FormatKind::Chorded => parse_chorded(n, &record[1..]).map(Instance::Chorded),
        FormatKind::HatCycle => parse_hats(n, &record[1..]).map(Instance::Hats),
    }
}

fn parse_edges(n: usize, body: &[Line]) -> Result<RawGraph> {
    let mut g = RawGraph::new(n);
    for line in body {
        let toks: Vec<&str> = line.text.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(malformed(
                line.number,
                format!("expected 'u v', got {} tokens", toks.len()),
            ));
        }
        let u = parse_usize(toks[0], line.number)?;
        let v = parse_usize(toks[1], line.number)?;
        g.add_edge(u, v).map_err(|kind| Error::Parse {
            line: line.number,
            kind,
        })?;
    }
    Ok(g)
}

fn parse_chorded(n: usize, body: &[Line]) -> Result<ChordedCycle> {
    let mut inner: Vec<(usize, usize)> = Vec::new();
    let mut outer: Vec<(usize, usize)> = Vec::new();
    for line in body {
        let mut toks = line.text.split_whitespace();
        let marker = toks.next().expect("significant lines are non-empty");
        let dest = match marker {
            "I" => &mut inner,
            "O" => &mut outer,
            other => {
                return Err(malformed(
                    line.number,
                    format!("expected chord line marker 'I' or 'O', got '{other}'"),
                ))
            }
        };
        let nums: Vec<usize> = toks
            .map(|t| parse_usize(t, line.number))
            .collect::<Result<_>>()?;
        if nums.len() % 2 != 0 {
            return Err(malformed(
                line.number,
                format!("chord line needs an even number of endpoints, got {}", nums.len()),
            ));
        }
        for pair in nums.chunks(2) {
            dest.push((pair[0], pair[1]));
        }
    }
    // Construction errors (range / span / duplicates) lose the line info;
    // ChordedCycle::new reports the offending chord instead.
    ChordedCycle::new(n, &inner, &outer)
}

fn parse_hats(n: usize, body: &[Line]) -> Result<HatCycle> {
    let mut hats: Vec<usize> = Vec::new();
    for line in body {
        let mut toks = line.text.split_whitespace();
        match toks.next() {
            Some("H") => {}
            Some(other) => {
                return Err(malformed(
                    line.number,
                    format!("expected hat line marker 'H', got '{other}'"),
                ))
            }
            None => unreachable!("significant lines are non-empty"),
        }
        for t in toks {
            hats.push(parse_usize(t, line.number)?);
        }
    }
    HatCycle::new(n, &hats)
}

/// Render an edge-list record.
pub fn write_edges(g: &RawGraph) -> String {
    let mut out = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Render a chorded-cycle record.
pub fn write_chorded(cc: &ChordedCycle) -> String {
    let mut out = format!("{}\n", cc.n());
    for (marker, side) in [("I", crate::graph::Side::Inner), ("O", crate::graph::Side::Outer)] {
        let chords = cc.chords(side);
        if chords.is_empty() {
            continue;
        }
        out.push_str(marker);
        for &(a, b) in chords {
            out.push_str(&format!(" {a} {b}"));
        }
        out.push('\n');
    }
    out
}

/// Render a hat-cycle record.
pub fn write_hats(h: &HatCycle) -> String {
    let mut out = format!("{}\n", h.n());
    if !h.hats().is_empty() {
        out.push('H');
        for &p in h.hats() {
            out.push_str(&format!(" {p}"));
        }
        out.push('\n');
    }
    out
}

/// Render any instance in its own format.
pub fn write_instance(inst: &Instance) -> String {
    match inst {
        Instance::Edges(g) => write_edges(g),
        Instance::Chorded(cc) => write_chorded(cc),
        Instance::Hats(h) => write_hats(h),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn detects_all_three_formats() {
        let edges = "4\n0 1\n1 2\n2 3\n3 0\n";
        let chorded = "6\nI 0 2 0 3 3 5\nO 1 4 2 4 1 5\n";
        let hats = "6\nH 0 1 3 4\n";
        assert!(matches!(
            parse_instance(edges, None).unwrap(),
            Instance::Edges(_)
        ));
        assert!(matches!(
            parse_instance(chorded, None).unwrap(),
            Instance::Chorded(_)
        ));
        assert!(matches!(
            parse_instance(hats, None).unwrap(),
            Instance::Hats(_)
        ));
    }

    #[test]
    fn comments_and_blanks_everywhere() {
        let text = "\n# a triangulation\n6   # n\n\nI 0 2 0 3   # two inner chords\nI 3 5\nO 1 4 2 4\n# trailing comment\nO 1 5\n\n";
        let inst = parse_instance(text, None).unwrap();
        match inst {
            Instance::Chorded(cc) => {
                assert_eq!(cc.chord_counts(), (3, 3));
                assert!(cc.validate(true).overall);
            }
            other => panic!("expected chorded, got {other:?}"),
        }
    }

    #[test]
    fn parse_errors_name_the_line() {
        let text = "4\n0 1\n1 1\n";
        match parse_instance(text, None).unwrap_err() {
            Error::Parse { line, kind } => {
                assert_eq!(line, 3);
                assert_eq!(kind, ParseKind::SelfLoop);
            }
            other => panic!("expected Parse, got {other:?}"),
        }
        let text = "4\n0 1\n0 1\n";
        match parse_instance(text, None).unwrap_err() {
            Error::Parse { line, kind } => {
                assert_eq!(line, 3);
                assert_eq!(kind, ParseKind::DuplicateEdge);
            }
            other => panic!("expected Parse, got {other:?}"),
        }
        let text = "4\n0 9\n";
        match parse_instance(text, None).unwrap_err() {
            Error::Parse { line, kind } => {
                assert_eq!(line, 2);
                assert_eq!(kind, ParseKind::IdOutOfRange { id: 9, n: 4 });
            }
            other => panic!("expected Parse, got {other:?}"),
        }
        let text = "4\n0 1 2\n";
        assert!(matches!(
            parse_instance(text, None).unwrap_err(),
            Error::Parse { line: 2, .. }
        ));
    }

    #[test]
    fn multi_record_files_split_on_headers() {
        let text = "# instance 0 seed 7\n6\nH 0 1 3 4\n\n# instance 1 seed 8\n8\nH 1 3 5 7\n";
        let all = parse_instances(text, None).unwrap();
        assert_eq!(all.len(), 2);
        assert_eq!(all[0].n(), 6);
        assert_eq!(all[1].n(), 8);
    }

    #[test]
    fn forced_format_overrides_detection() {
        // A bare n auto-detects as an (edgeless) edge list…
        let inst = parse_instance("3\n", None).unwrap();
        assert!(matches!(inst, Instance::Edges(_)));
        // …but can be forced to a chordless cycle.
        let inst = parse_instance("3\n", Some(FormatKind::Chorded)).unwrap();
        assert!(matches!(inst, Instance::Chorded(_)));
    }

    #[test]
    fn round_trips() {
        let cc = crate::graph::ChordedCycle::new(
            6,
            &[(0, 2), (0, 3), (3, 5)],
            &[(1, 4), (2, 4), (1, 5)],
        )
        .unwrap();
        let text = write_chorded(&cc);
        match parse_instance(&text, None).unwrap() {
            Instance::Chorded(back) => assert_eq!(back, cc),
            other => panic!("expected chorded, got {other:?}"),
        }

        let h = HatCycle::new(11, &[1, 4, 5, 9]).unwrap();
        let text = write_hats(&h);
        match parse_instance(&text, None).unwrap() {
            Instance::Hats(back) => assert_eq!(back, h),
            other => panic!("expected hats, got {other:?}"),
        }

        let g = cc.to_raw();
        let text = write_edges(&g);
        match parse_instance(&text, None).unwrap() {
            Instance::Edges(back) => assert_eq!(back, g),
            other => panic!("expected edges, got {other:?}"),
        }
    }
}
