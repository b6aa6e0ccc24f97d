//! Line-based text format for stratifold graphs, plus DOT export.
//!
//! ```text
//! # stratifold-graph v1
//! white <id> [genus=<int>]
//! black <id>
//! edge <white-id> <black-id> label=<int≥1> [sign=<+1|-1>]
//! ```
//!
//! Ids are nonempty ASCII-alphanumeric tokens, unique per colour class.
//! `#` starts a comment. Serialization is canonical: sorted ids, explicit
//! genus and sign fields, comments dropped; parse ∘ serialize is the
//! identity on the emitted bytes.

use thiserror::Error;

use crate::graph::{GraphBuilder, GraphError, LabelledGraph, Sign};

pub const FORMAT_HEADER: &str = "# stratifold-graph v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("graph is invalid: {}", format_errors(.0))]
    Invalid(Vec<GraphError>),
}

fn format_errors(errors: &[GraphError]) -> String {
    errors.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; ")
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, message: message.into() }
}

fn valid_id(token: &str) -> bool {
    !token.is_empty() && token.chars().all(|c| c.is_ascii_alphanumeric())
}

/// Parse the text format into a validated graph.
pub fn parse(text: &str) -> Result<LabelledGraph, ParseError> {
    let mut builder = GraphBuilder::new();
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        match tokens[0] {
            "white" => {
                if tokens.len() < 2 || tokens.len() > 3 {
                    return Err(syntax(line_no, "expected `white <id> [genus=<int>]`"));
                }
                if !valid_id(tokens[1]) {
                    return Err(syntax(line_no, format!("bad id `{}`", tokens[1])));
                }
                let genus = match tokens.get(2) {
                    None => 0,
                    Some(t) => {
                        let value = t
                            .strip_prefix("genus=")
                            .ok_or_else(|| syntax(line_no, format!("unknown field `{t}`")))?;
                        value
                            .parse::<i64>()
                            .map_err(|_| syntax(line_no, format!("bad genus `{value}`")))?
                    }
                };
                builder.white(tokens[1], genus);
            }
            "black" => {
                if tokens.len() != 2 {
                    return Err(syntax(line_no, "expected `black <id>`"));
                }
                if !valid_id(tokens[1]) {
                    return Err(syntax(line_no, format!("bad id `{}`", tokens[1])));
                }
                builder.black(tokens[1]);
            }
            "edge" => {
                if tokens.len() < 4 || tokens.len() > 5 {
                    return Err(syntax(
                        line_no,
                        "expected `edge <white-id> <black-id> label=<int> [sign=<+1|-1>]`",
                    ));
                }
                if !valid_id(tokens[1]) || !valid_id(tokens[2]) {
                    return Err(syntax(line_no, "bad endpoint id"));
                }
                let label_str = tokens[3]
                    .strip_prefix("label=")
                    .ok_or_else(|| syntax(line_no, format!("expected label=, got `{}`", tokens[3])))?;
                let label: u32 = label_str
                    .parse()
                    .map_err(|_| syntax(line_no, format!("bad label `{label_str}`")))?;
                if label == 0 {
                    return Err(syntax(line_no, "label must be >= 1"));
                }
                let sign = match tokens.get(4) {
                    None => Sign::Plus,
                    Some(t) => {
                        let v = t
                            .strip_prefix("sign=")
                            .ok_or_else(|| syntax(line_no, format!("unknown field `{t}`")))?;
                        match v {
                            "+1" => Sign::Plus,
                            "-1" => Sign::Minus,
                            _ => return Err(syntax(line_no, format!("bad sign `{v}`"))),
                        }
                    }
                };
                builder.edge_signed(tokens[1], tokens[2], label, sign);
            }
            other => return Err(syntax(line_no, format!("unknown directive `{other}`"))),
        }
    }
    builder.build().map_err(ParseError::Invalid)
}

/// Canonical serialization: header comment, whites, blacks, edges, all in
/// canonical order with explicit fields.
pub fn serialize(g: &LabelledGraph) -> String {
    let mut out = String::new();
    out.push_str(FORMAT_HEADER);
    out.push('\n');
    for w in g.whites() {
        out.push_str(&format!("white {} genus={}\n", g.white_name(w), g.genus(w)));
    }
    for b in g.blacks() {
        out.push_str(&format!("black {}\n", g.black_name(b)));
    }
    for e in g.edge_ids() {
        let edge = g.edge(e);
        out.push_str(&format!(
            "edge {} {} label={} sign={}\n",
            g.white_name(edge.white),
            g.black_name(edge.black),
            edge.label,
            edge.sign
        ));
    }
    out
}

/// Deterministic DOT export: whites as circles (annotated with nonzero
/// genus), blacks as filled dots, edges labelled with their label and a
/// `, -` suffix on negative signs.
pub fn export_dot(g: &LabelledGraph) -> String {
    let mut out = String::new();
    out.push_str("graph stratifold {\n");
    for w in g.whites() {
        let name = g.white_name(w);
        let label = if g.genus(w) != 0 {
            format!("{name} (g={})", g.genus(w))
        } else {
            name.to_string()
        };
        out.push_str(&format!("  w_{name} [shape=circle, label=\"{label}\"];\n"));
    }
    for b in g.blacks() {
        let name = g.black_name(b);
        out.push_str(&format!(
            "  b_{name} [shape=circle, style=filled, fillcolor=black, width=0.15, label=\"\", xlabel=\"{name}\"];\n"
        ));
    }
    for e in g.edge_ids() {
        let edge = g.edge(e);
        let mut label = edge.label.to_string();
        if edge.sign == Sign::Minus {
            label.push_str(", -");
        }
        out.push_str(&format!(
            "  w_{} -- b_{} [label=\"{}\"];\n",
            g.white_name(edge.white),
            g.black_name(edge.black),
            label
        ));
    }
    out.push_str("}\n");
    out
}

/// A canonical, isomorphism-insensitive key for graphs of first Betti number
/// ≤ 1: trees are encoded by rooted canonical forms from their centroidal
/// representatives, unicyclic graphs by the minimal rotation/reflection of
/// the cycle decorated with hanging-tree encodings. Graphs with higher Betti
/// number fall back to the id-sensitive serialization.
pub fn canonical_key(g: &LabelledGraph) -> String {
    match g.betti1() {
        0 => tree_key(g),
        1 => unicyclic_key(g),
        _ => serialize(g),
    }
}

use crate::graph::{EdgeId, VertexRef};

fn vertex_payload(g: &LabelledGraph, v: VertexRef) -> String {
    match v {
        VertexRef::White(w) => format!("W{}", g.genus(w)),
        VertexRef::Black(_) => "B".to_string(),
    }
}

/// Rooted canonical encoding of the tree hanging at `v` away from `parent`.
fn encode_rooted(g: &LabelledGraph, v: VertexRef, parent_edge: Option<EdgeId>) -> String {
    let mut children: Vec<String> = g
        .incident_edges(v)
        .iter()
        .filter(|e| Some(**e) != parent_edge)
        .map(|&e| {
            let u = g.other_endpoint(e, v);
            let edge = g.edge(e);
            format!("{}{}{}", edge.label, edge.sign, encode_rooted(g, u, Some(e)))
        })
        .collect();
    children.sort();
    format!("{}({})", vertex_payload(g, v), children.join(","))
}

fn tree_key(g: &LabelledGraph) -> String {
    // Try every vertex as root and take the minimum encoding. Graphs in the
    // enumeration censuses are small, so the quadratic cost is fine.
    g.all_vertices()
        .map(|v| encode_rooted(g, v, None))
        .min()
        .unwrap_or_default()
}

fn unicyclic_key(g: &LabelledGraph) -> String {
    let cycle = g.cycle().expect("betti1 = 1");
    let n = cycle.len();
    let holonomy = cycle.holonomy(g);
    let mut best: Option<String> = None;
    for start in 0..n {
        for dir in [false, true] {
            let mut parts = Vec::with_capacity(n);
            for k in 0..n {
                // Forward: vertex start+k with edge start+k; backward:
                // vertex start-k with the edge entering it.
                let (vi, ei) = if !dir {
                    ((start + k) % n, (start + k) % n)
                } else {
                    ((start + n - k) % n, (start + n - k + n - 1) % n)
                };
                let v = cycle.vertices[vi];
                let e = cycle.edges[ei];
                let cycle_edges_at_v: Vec<EdgeId> = cycle
                    .edges
                    .iter()
                    .copied()
                    .filter(|ce| {
                        let (a, b) = g.endpoints(*ce);
                        a == v || b == v
                    })
                    .collect();
                let mut hanging: Vec<String> = g
                    .incident_edges(v)
                    .iter()
                    .filter(|x| !cycle_edges_at_v.contains(x))
                    .map(|&x| {
                        let u = g.other_endpoint(x, v);
                        let edge = g.edge(x);
                        format!("{}{}", edge.label, encode_rooted(g, u, Some(x)))
                    })
                    .collect();
                hanging.sort();
                parts.push(format!(
                    "{}[{}]{}",
                    vertex_payload(g, v),
                    hanging.join(","),
                    g.edge(e).label
                ));
            }
            let key = format!("{}|{}", holonomy, parts.join(";"));
            if best.as_ref().map_or(true, |b| key < *b) {
                best = Some(key);
            }
        }
    }
    best.unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{build_echinus, EchinusParams, EchinusTriple};
    use crate::graph::GraphBuilder;

    #[test]
    fn parse_simple_tree() {
        let text = "white w1\nwhite w2\nblack b\nedge w1 b label=2\nedge w2 b label=3\n";
        let g = parse(text).unwrap();
        assert_eq!(g.white_count(), 2);
        assert_eq!(g.black_count(), 1);
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn parse_rejects_white_as_black_endpoint() {
        let text = "white w1\nwhite w2\nblack b\nedge w1 b label=3\nedge w1 w2 label=1\n";
        match parse(text).unwrap_err() {
            ParseError::Invalid(errs) => {
                assert!(errs.iter().any(|e| matches!(e, GraphError::NonBipartite { .. })));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parse_rejects_unknown_vertex() {
        let text = "white w1\nblack b\nedge w1 b label=3\nedge w9 b label=1\n";
        match parse(text).unwrap_err() {
            ParseError::Invalid(errs) => {
                assert!(errs.iter().any(|e| matches!(e, GraphError::UnknownVertex { .. })));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parse_rejects_bad_label() {
        let text = "white w1\nblack b\nedge w1 b label=0\n";
        assert!(matches!(parse(text), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn parse_rejects_unknown_directive() {
        assert!(matches!(parse("vertex v1\n"), Err(ParseError::Syntax { line: 1, .. })));
    }

    #[test]
    fn roundtrip_is_bit_exact() {
        let params = EchinusParams::new(vec![EchinusTriple { p: 1, q: 0, r: 1 }], crate::graph::Sign::Plus);
        let g = build_echinus(&params);
        let text = serialize(&g);
        let g2 = parse(&text).unwrap();
        assert_eq!(serialize(&g2), text);
        assert_eq!(g, g2);
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let text = "# a comment\n\nwhite w1 genus=0 # trailing\nblack b\nedge w1 b label=3\n";
        assert!(parse(text).is_ok());
    }

    #[test]
    fn dot_export_mentions_genus_and_sign() {
        let mut b = GraphBuilder::new();
        b.white("w0", -1).black("b0");
        b.edge_signed("w0", "b0", 1, crate::graph::Sign::Minus);
        b.edge("w0", "b0", 2);
        let g = b.build().unwrap();
        let dot = export_dot(&g);
        assert!(dot.contains("g=-1"));
        assert!(dot.contains(", -"));
        assert!(dot.contains("graph stratifold"));
    }

    #[test]
    fn canonical_key_is_relabelling_invariant() {
        let mut a = GraphBuilder::new();
        a.white("w0", 0).white("w1", 0).black("b0");
        a.edge("w0", "b0", 2).edge("w1", "b0", 3);
        let mut b = GraphBuilder::new();
        b.white("x9", 0).white("q", 0).black("zz");
        b.edge("x9", "zz", 3).edge("q", "zz", 2);
        assert_eq!(canonical_key(&a.build().unwrap()), canonical_key(&b.build().unwrap()));
    }

    #[test]
    fn canonical_key_distinguishes_labels() {
        let mut a = GraphBuilder::new();
        a.white("w0", 0).white("w1", 0).black("b0");
        a.edge("w0", "b0", 2).edge("w1", "b0", 3);
        let mut b = GraphBuilder::new();
        b.white("w0", 0).white("w1", 0).black("b0");
        b.edge("w0", "b0", 2).edge("w1", "b0", 4);
        assert_ne!(canonical_key(&a.build().unwrap()), canonical_key(&b.build().unwrap()));
    }
}
