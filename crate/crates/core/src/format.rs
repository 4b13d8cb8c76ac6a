//! Line-oriented `plane4 v1` text format.
//!
//! ```text
//! plane4 v1
//! vertices 4
//! edge 0 0 1
//! rot 0 0 3
//! external 0 right
//! ```

use crate::error::{Error, Result};
use crate::graph::{PlaneGraph, Side};

pub fn serialize(g: &PlaneGraph) -> String {
    let mut out = String::from("plane4 v1\n");
    out.push_str(&format!("vertices {}\n", g.vertex_count()));
    for (e, [u, v]) in g.edges().iter().enumerate() {
        out.push_str(&format!("edge {e} {u} {v}\n"));
    }
    for v in 0..g.vertex_count() {
        out.push_str(&format!("rot {v}"));
        for e in g.rotation(v) {
            out.push_str(&format!(" {e}"));
        }
        out.push('\n');
    }
    if let Some((e, side)) = g.external_side() {
        out.push_str(&format!("external {e} {side}\n"));
    }
    out
}

fn parse_num(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| Error::Parse { line, message: format!("missing {what}") })?;
    tok.parse()
        .map_err(|_| Error::Parse { line, message: format!("{what}: expected a non-negative integer, got `{tok}`") })
}

pub fn parse(text: &str) -> Result<PlaneGraph> {
    let mut header = false;
    let mut n: Option<usize> = None;
    let mut edges: Vec<Option<[usize; 2]>> = Vec::new();
    let mut rotation: Vec<Option<Vec<usize>>> = Vec::new();
    let mut external = None;
    let mut rot_lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let mut toks = content.split_whitespace();
        let keyword = toks.next().unwrap();
        if !header {
            if keyword == "plane4" && toks.next() == Some("v1") && toks.next().is_none() {
                header = true;
                continue;
            }
            return Err(Error::Parse { line, message: "expected header `plane4 v1`".into() });
        }
        match keyword {
            "vertices" => {
                if n.is_some() {
                    return Err(Error::Parse { line, message: "duplicate `vertices` line".into() });
                }
                let count = parse_num(toks.next(), line, "vertex count")?;
                n = Some(count);
                rotation = vec![None; count];
            }
            "edge" => {
                let id = parse_num(toks.next(), line, "edge id")?;
                let u = parse_num(toks.next(), line, "edge endpoint")?;
                let v = parse_num(toks.next(), line, "edge endpoint")?;
                if edges.len() <= id {
                    edges.resize(id + 1, None);
                }
                if edges[id].is_some() {
                    return Err(Error::Parse { line, message: format!("edge {id} defined twice") });
                }
                edges[id] = Some([u, v]);
            }
            "rot" => {
                let count = n.ok_or(Error::Parse { line, message: "`rot` before `vertices`".into() })?;
                let v = parse_num(toks.next(), line, "vertex id")?;
                if v >= count {
                    return Err(Error::Parse { line, message: format!("vertex {v} out of range") });
                }
                let list = toks
                    .by_ref()
                    .map(|t| parse_num(Some(t), line, "edge id"))
                    .collect::<Result<Vec<_>>>()?;
                if rotation[v].is_some() {
                    return Err(Error::Parse { line, message: format!("rotation of vertex {v} given twice") });
                }
                rot_lines.push((v, line));
                rotation[v] = Some(list);
            }
            "external" => {
                let e = parse_num(toks.next(), line, "edge id")?;
                let side = match toks.next() {
                    Some("left") => Side::Left,
                    Some("right") => Side::Right,
                    other => {
                        return Err(Error::Parse {
                            line,
                            message: format!("expected `left` or `right`, got {:?}", other.unwrap_or("")),
                        })
                    }
                };
                external = Some((e, side));
            }
            other => return Err(Error::Parse { line, message: format!("unknown keyword `{other}`") }),
        }
        if keyword != "rot" && toks.next().is_some() {
            return Err(Error::Parse { line, message: "trailing tokens".into() });
        }
    }
    if !header {
        return Err(Error::Parse { line: 1, message: "empty document".into() });
    }
    let n = n.ok_or(Error::Parse { line: 1, message: "missing `vertices` line".into() })?;
    let edges = edges
        .into_iter()
        .enumerate()
        .map(|(i, e)| e.ok_or(Error::Parse { line: 1, message: format!("edge {i} missing") }))
        .collect::<Result<Vec<_>>>()?;
    let rotation: Vec<Vec<usize>> = rotation.into_iter().map(Option::unwrap_or_default).collect();
    PlaneGraph::new(n, edges, rotation.clone(), external).map_err(|err| match err {
        Error::InconsistentRotation(msg) => {
            // point at the offending rotation line when the message names a vertex
            let line = msg
                .split("vertex ")
                .nth(1)
                .and_then(|s| s.split(|c: char| !c.is_ascii_digit()).next())
                .and_then(|s| s.parse::<usize>().ok())
                .and_then(|v| rot_lines.iter().find(|(w, _)| *w == v).map(|&(_, l)| l));
            match line {
                Some(line) => Error::Parse { line, message: format!("inconsistent rotation: {msg}") },
                None => Error::InconsistentRotation(msg),
            }
        }
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const C4: &str = "plane4 v1\n# a square\nvertices 4\nedge 0 0 1\nedge 1 1 2\nedge 2 2 3\nedge 3 3 0\nrot 0 0 3\nrot 1 1 0\nrot 2 2 1\nrot 3 3 2\nexternal 0 right\n";

    #[test]
    fn c4_round_trip() {
        let g = parse(C4).unwrap();
        let text = serialize(&g);
        let strip = |s: &str| {
            s.lines()
                .map(|l| l.split('#').next().unwrap().split_whitespace().collect::<Vec<_>>().join(" "))
                .filter(|l| !l.is_empty())
                .collect::<Vec<_>>()
        };
        assert_eq!(strip(&text), strip(C4));
        assert_eq!(parse(&text).unwrap(), g);
    }

    #[test]
    fn missing_edge_end_is_inconsistent() {
        let bad = C4.replace("rot 0 0 3", "rot 0 0");
        match parse(&bad).unwrap_err() {
            Error::Parse { line, message } => {
                assert_eq!(line, 8);
                assert!(message.contains("inconsistent rotation"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn degree_five_is_rejected() {
        let mut doc = String::from("plane4 v1\nvertices 6\n");
        for e in 0..5 {
            doc.push_str(&format!("edge {e} 0 {}\n", e + 1));
        }
        doc.push_str("rot 0 0 1 2 3 4\n");
        for e in 0..5 {
            doc.push_str(&format!("rot {} {e}\n", e + 1));
        }
        assert!(matches!(parse(&doc).unwrap_err(), Error::DegreeExceeded { vertex: 0, degree: 5 }));
    }

    #[test]
    fn malformed_field_reports_line() {
        let bad = C4.replace("edge 2 2 3", "edge 2 two 3");
        assert!(matches!(parse(&bad).unwrap_err(), Error::Parse { line: 6, .. }));
    }
}
