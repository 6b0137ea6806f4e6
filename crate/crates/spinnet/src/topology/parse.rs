//! Line-oriented text format for graphs.
//!
//! ```text
//! # comments run to end of line
//! name theta
//! vertex u
//! vertex v
//! edge e1 u v
//! edge e2 u v
//! edge e3 u v
//! ```
//!
//! `vertex` lines are optional; when at least one is present the declared set
//! is authoritative and edges may only reference declared vertices. An edge
//! end may be the keyword `OPEN` instead of a vertex id. When the parsed
//! graph is closed (no `OPEN` ends) every vertex must be trivalent.

use std::collections::BTreeSet;

use super::{End, Graph, TopologyError, VertexId};

const OPEN_KEYWORD: &str = "OPEN";

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> TopologyError {
    TopologyError::Parse { line, column, message: message.into() }
}

/// Tokens of one line with their 1-based start columns, comments stripped.
fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let body = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut out = Vec::new();
    let mut col = 0;
    for piece in body.split_inclusive(char::is_whitespace) {
        let trimmed = piece.trim_end_matches(char::is_whitespace);
        if !trimmed.is_empty() {
            out.push((col + 1, trimmed));
        }
        col += piece.chars().count();
    }
    out
}

pub fn parse_graph(text: &str) -> Result<Graph, TopologyError> {
    let mut name: Option<String> = None;
    let mut declared: BTreeSet<VertexId> = BTreeSet::new();
    let mut edges: Vec<(usize, String, [End; 2])> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let tokens = tokenize(raw);
        let Some(&(kcol, keyword)) = tokens.first() else {
            continue;
        };
        match keyword {
            "name" => {
                if tokens.len() != 2 {
                    return Err(parse_err(lineno, kcol, "expected `name <string>`"));
                }
                if name.is_some() {
                    return Err(parse_err(lineno, kcol, "duplicate `name` line"));
                }
                name = Some(tokens[1].1.to_owned());
            }
            "vertex" => {
                if tokens.len() != 2 {
                    return Err(parse_err(lineno, kcol, "expected `vertex <id>`"));
                }
                let (vcol, id) = tokens[1];
                if id == OPEN_KEYWORD {
                    return Err(parse_err(lineno, vcol, "`OPEN` is reserved"));
                }
                if !declared.insert(VertexId::new(id)) {
                    return Err(parse_err(lineno, vcol, format!("duplicate vertex `{id}`")));
                }
            }
            "edge" => {
                if tokens.len() != 4 {
                    return Err(parse_err(lineno, kcol, "expected `edge <id> <v|OPEN> <v|OPEN>`"));
                }
                let (icol, id) = tokens[1];
                if id == OPEN_KEYWORD {
                    return Err(parse_err(lineno, icol, "`OPEN` is reserved"));
                }
                if edges.iter().any(|(_, e, _)| e == id) {
                    return Err(parse_err(lineno, icol, format!("duplicate edge `{id}`")));
                }
                let mut ends = Vec::with_capacity(2);
                for &(_, tok) in &tokens[2..4] {
                    if tok == OPEN_KEYWORD {
                        ends.push(End::Open);
                    } else {
                        ends.push(End::Vertex(VertexId::new(tok)));
                    }
                }
                let ends: [End; 2] = [ends.remove(0), ends.remove(0)];
                edges.push((lineno, id.to_owned(), ends));
            }
            other => {
                return Err(parse_err(lineno, kcol, format!("unknown keyword `{other}`")));
            }
        }
    }

    if !declared.is_empty() {
        for (lineno, _, ends) in &edges {
            for end in ends {
                if let End::Vertex(v) = end {
                    if !declared.contains(v) {
                        return Err(TopologyError::DanglingVertex { line: *lineno, vertex: v.clone() });
                    }
                }
            }
        }
    }

    let mut builder = Graph::build();
    if let Some(n) = name {
        builder = builder.name(n);
    }
    for v in declared {
        builder = builder.vertex(v);
    }
    for (_, id, ends) in edges {
        builder = builder.edge_ends(id, ends);
    }
    let graph = builder.finish()?;

    if graph.is_closed() {
        for v in graph.vertices() {
            let valence = graph.valence(v);
            if valence != 3 {
                return Err(TopologyError::NonTrivalent { vertex: v.clone(), valence });
            }
        }
    }
    Ok(graph)
}

/// Emits the canonical text form: `name`, then vertices sorted, then edges
/// sorted by id. `parse_graph(serialize_graph(g)) == g`.
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = String::new();
    if let Some(name) = g.name() {
        out.push_str("name ");
        out.push_str(name);
        out.push('\n');
    }
    for v in g.vertices() {
        out.push_str("vertex ");
        out.push_str(v.as_str());
        out.push('\n');
    }
    for (id, ends) in g.edges() {
        out.push_str("edge ");
        out.push_str(id.as_str());
        for end in ends {
            out.push(' ');
            match end {
                End::Vertex(v) => out.push_str(v.as_str()),
                End::Open => out.push_str(OPEN_KEYWORD),
            }
        }
        out.push('\n');
    }
    out
}
