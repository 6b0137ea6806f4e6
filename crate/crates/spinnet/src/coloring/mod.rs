//! Edge colorings, Clebsch-Gordan admissibility, level-k enumeration, the
//! Verlinde count, and colored surgeries.
//!
//! Colors are nonnegative integers, twice the spin of the attached
//! irreducible representation; all arithmetic here is exact. A coloring is
//! *admissible* when at every vertex the three incident colors (a loop's
//! color listed twice) have even sum and satisfy the triangle inequalities.
//! It has *level k* when every color is at most `k` and every vertex color
//! sum is at most `2k`; with that fusion bound the number of level-k
//! colorings of a genus-g graph is the Verlinde number
//! `((k+2)/2)^(g-1) * sum_{n=1}^{k+1} sin(n pi / (k+2))^-(2g-2)`.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;

use thiserror::Error;

use crate::topology::{
    self, connected_sum, excise_vertices, ConnectedSum, EdgeId, Graph, TopologyError, VertexId,
};

#[derive(Debug, Error, PartialEq)]
pub enum ColoringError {
    #[error("coloring line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("coloring missing edge `{0}`")]
    MissingEdge(EdgeId),
    #[error("coloring names edge `{0}` not present in the graph")]
    ExtraEdge(EdgeId),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(VertexId),
    #[error("coloring is not admissible at vertex `{0}`")]
    NotAdmissible(VertexId),
    #[error("coloring exceeds level {0}")]
    NotLevelK(u32),
    #[error("bridge color {jp} is inadmissible against edge colors {c1} and {c2}")]
    InadmissibleBridge { jp: u32, c1: u32, c2: u32 },
    #[error("verlinde number needs genus >= 2, got {0}")]
    BadGenus(usize),
    #[error("verlinde value {value} is {distance} away from the nearest integer")]
    NonIntegerVerlinde { value: f64, distance: f64 },
    #[error("graph `{name}` has genus {actual}, expected {expected}")]
    GenusMismatch { name: String, actual: usize, expected: usize },
    #[error(transparent)]
    Topology(#[from] TopologyError),
}

/// A total map from edges to colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    colors: BTreeMap<EdgeId, u32>,
}

impl Coloring {
    pub fn from_pairs<I, E>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (E, u32)>,
        E: Into<EdgeId>,
    {
        Coloring { colors: pairs.into_iter().map(|(e, c)| (e.into(), c)).collect() }
    }

    pub fn get(&self, e: &EdgeId) -> Option<u32> {
        self.colors.get(e).copied()
    }

    pub fn color(&self, e: &EdgeId) -> Result<u32, ColoringError> {
        self.get(e).ok_or_else(|| ColoringError::MissingEdge(e.clone()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&EdgeId, u32)> {
        self.colors.iter().map(|(e, &c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn max_color(&self) -> u32 {
        self.colors.values().copied().max().unwrap_or(0)
    }

    /// Checks the domain is exactly the edge set of `g`.
    pub fn validate_total(&self, g: &Graph) -> Result<(), ColoringError> {
        for e in g.edge_ids() {
            if !self.colors.contains_key(e) {
                return Err(ColoringError::MissingEdge(e.clone()));
            }
        }
        for e in self.colors.keys() {
            if !g.contains_edge(e) {
                return Err(ColoringError::ExtraEdge(e.clone()));
            }
        }
        Ok(())
    }
}

/// Parses lines of the form `<edge-id> = <integer>`; `#` starts a comment.
pub fn parse_coloring(text: &str) -> Result<Coloring, ColoringError> {
    let mut colors = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let Some((lhs, rhs)) = body.split_once('=') else {
            return Err(ColoringError::Parse { line, message: "expected `<edge-id> = <integer>`".into() });
        };
        let edge = EdgeId::new(lhs.trim());
        let value: u32 = rhs.trim().parse().map_err(|e| ColoringError::Parse {
            line,
            message: format!("bad color value: {e}"),
        })?;
        if colors.insert(edge.clone(), value).is_some() {
            return Err(ColoringError::Parse { line, message: format!("duplicate edge `{edge}`") });
        }
    }
    Ok(Coloring { colors })
}

pub fn serialize_coloring(c: &Coloring) -> String {
    let mut out = String::new();
    for (e, v) in c.iter() {
        out.push_str(&format!("{e} = {v}\n"));
    }
    out
}

/// The three colors incident to a vertex, a loop's color listed twice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexTriple(pub [u32; 3]);

impl VertexTriple {
    pub fn sorted(&self) -> [u32; 3] {
        let mut s = self.0;
        s.sort_unstable();
        s
    }

    /// Clebsch-Gordan conditions in color units: even sum plus the triangle
    /// inequalities for every ordering.
    pub fn is_admissible(&self) -> bool {
        let [a, b, c] = self.0;
        let sum = a + b + c;
        sum % 2 == 0 && 2 * a.max(b).max(c) <= sum
    }

    /// Level-k fusion bound: every color at most `k` and the color sum at
    /// most `2k`.
    pub fn level_ok(&self, k: u32) -> bool {
        let [a, b, c] = self.0;
        a.max(b).max(c) <= k && a + b + c <= 2 * k
    }
}

/// The colors on the three half-edges at `v`, in canonical (edge id, side)
/// order; a loop contributes its color twice.
pub fn vertex_triple(g: &Graph, c: &Coloring, v: &VertexId) -> Result<VertexTriple, ColoringError> {
    if !g.contains_vertex(v) {
        return Err(ColoringError::UnknownVertex(v.clone()));
    }
    let slots = g.incident_half_edges(v);
    if slots.len() != 3 {
        return Err(ColoringError::Topology(TopologyError::NonTrivalent {
            vertex: v.clone(),
            valence: slots.len(),
        }));
    }
    let mut colors = [0u32; 3];
    for (i, h) in slots.iter().enumerate() {
        colors[i] = c.color(&h.edge)?;
    }
    Ok(VertexTriple(colors))
}

/// True when the Clebsch-Gordan conditions hold at every vertex.
pub fn is_admissible(g: &Graph, c: &Coloring) -> Result<bool, ColoringError> {
    c.validate_total(g)?;
    for v in g.vertices() {
        if !vertex_triple(g, c, v)?.is_admissible() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True when every color is at most `k` and every vertex color sum is at
/// most `2k`. Callers pair this with [`is_admissible`].
pub fn is_level_k(g: &Graph, c: &Coloring, k: u32) -> Result<bool, ColoringError> {
    c.validate_total(g)?;
    if c.iter().any(|(_, v)| v > k) {
        return Ok(false);
    }
    for v in g.vertices() {
        if !vertex_triple(g, c, v)?.level_ok(k) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An admissible coloring paired with its graph, optionally tagged with a
/// level bound that it satisfies.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinNetwork {
    graph: Graph,
    coloring: Coloring,
    level: Option<u32>,
}

impl SpinNetwork {
    pub fn new(graph: Graph, coloring: Coloring, level: Option<u32>) -> Result<Self, ColoringError> {
        coloring.validate_total(&graph)?;
        for v in graph.vertices() {
            if !vertex_triple(&graph, &coloring, v)?.is_admissible() {
                return Err(ColoringError::NotAdmissible(v.clone()));
            }
        }
        if let Some(k) = level {
            if !is_level_k(&graph, &coloring, k)? {
                return Err(ColoringError::NotLevelK(k));
            }
        }
        Ok(SpinNetwork { graph, coloring, level })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn coloring(&self) -> &Coloring {
        &self.coloring
    }

    pub fn level(&self) -> Option<u32> {
        self.level
    }

    /// Color of an edge; the coloring is total by construction.
    pub fn color(&self, e: &EdgeId) -> u32 {
        self.coloring.get(e).expect("coloring is total")
    }
}

/// Lazy enumeration of all admissible level-k colorings of a closed
/// trivalent graph, in lexicographic order over edges sorted by id with
/// colors ascending. Prunes as soon as any fully colored vertex fails.
pub struct LevelKEnumerator<'g> {
    graph: &'g Graph,
    k: u32,
    edges: Vec<EdgeId>,
    edge_index: BTreeMap<EdgeId, usize>,
    /// Vertices whose incident edges are all assigned once edge `i` is set.
    complete_at: Vec<Vec<VertexId>>,
    stack: Vec<u32>,
    yielded_full: bool,
    done: bool,
}

pub fn enumerate_level_k(g: &Graph, k: u32) -> Result<LevelKEnumerator<'_>, ColoringError> {
    g.require_closed_trivalent()?;
    let edges: Vec<EdgeId> = g.edge_ids().cloned().collect();
    let edge_index: BTreeMap<EdgeId, usize> =
        edges.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
    let mut complete_at = vec![Vec::new(); edges.len()];
    for v in g.vertices() {
        let last = g
            .incident_half_edges(v)
            .iter()
            .map(|h| edge_index[&h.edge])
            .max()
            .expect("trivalent vertex has incident edges");
        complete_at[last].push(v.clone());
    }
    Ok(LevelKEnumerator {
        graph: g,
        k,
        edges,
        edge_index,
        complete_at,
        stack: Vec::new(),
        yielded_full: false,
        done: false,
    })
}

impl LevelKEnumerator<'_> {
    fn current(&self) -> Coloring {
        Coloring {
            colors: self
                .edges
                .iter()
                .zip(&self.stack)
                .map(|(e, &c)| (e.clone(), c))
                .collect(),
        }
    }

    /// Do the vertices completed at the top of the stack pass?
    fn viable(&self) -> bool {
        let idx = self.stack.len() - 1;
        self.complete_at[idx].iter().all(|v| {
            let mut colors = [0u32; 3];
            for (i, h) in self.graph.incident_half_edges(v).iter().enumerate() {
                colors[i] = self.stack[self.edge_index[&h.edge]];
            }
            let t = VertexTriple(colors);
            t.is_admissible() && t.level_ok(self.k)
        })
    }

    /// Finds the next viable color at the top of the stack, backtracking as
    /// needed. False when the search space is exhausted.
    fn fixup(&mut self) -> bool {
        loop {
            let idx = self.stack.len() - 1;
            if self.stack[idx] > self.k {
                self.stack.pop();
                if self.stack.is_empty() {
                    return false;
                }
                let j = self.stack.len() - 1;
                self.stack[j] += 1;
                continue;
            }
            if self.viable() {
                return true;
            }
            self.stack[idx] += 1;
        }
    }
}

impl Iterator for LevelKEnumerator<'_> {
    type Item = Coloring;

    fn next(&mut self) -> Option<Coloring> {
        if self.done {
            return None;
        }
        if self.edges.is_empty() {
            self.done = true;
            return Some(Coloring { colors: BTreeMap::new() });
        }
        if self.yielded_full {
            let idx = self.stack.len() - 1;
            self.stack[idx] += 1;
            if !self.fixup() {
                self.done = true;
                return None;
            }
        }
        loop {
            if self.stack.len() == self.edges.len() {
                self.yielded_full = true;
                return Some(self.current());
            }
            self.stack.push(0);
            if !self.fixup() {
                self.done = true;
                return None;
            }
        }
    }
}

/// Number of admissible level-k colorings `N^k`.
pub fn count_level_k(g: &Graph, k: u32) -> Result<usize, ColoringError> {
    Ok(enumerate_level_k(g, k)?.count())
}

/// All level-k spin networks on `g`, pairing each coloring with the graph.
pub fn level_k_networks(g: &Graph, k: u32) -> Result<Vec<SpinNetwork>, ColoringError> {
    enumerate_level_k(g, k)?
        .map(|c| SpinNetwork::new(g.clone(), c, Some(k)))
        .collect()
}

/// The Verlinde number as a float together with its rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerlindeNumber {
    pub value: f64,
    pub integer: i64,
}

pub const VERLINDE_INTEGER_TOLERANCE: f64 = 1e-6;

/// `((k+2)/2)^(g-1) * sum_{n=1}^{k+1} sin(n pi/(k+2))^-(2g-2)` for genus
/// `g >= 2`. The result must land within `1e-6` of an integer.
pub fn verlinde_number(genus: usize, k: u32) -> Result<VerlindeNumber, ColoringError> {
    if genus < 2 {
        return Err(ColoringError::BadGenus(genus));
    }
    let exponent = 2 * genus as i32 - 2;
    let modulus = k as f64 + 2.0;
    let mut sum = 0.0;
    for n in 1..=(k + 1) {
        let s = (n as f64 * PI / modulus).sin();
        sum += s.powi(-exponent);
    }
    let value = (modulus / 2.0).powi(genus as i32 - 1) * sum;
    let integer = value.round();
    let distance = (value - integer).abs();
    if distance > VERLINDE_INTEGER_TOLERANCE {
        return Err(ColoringError::NonIntegerVerlinde { value, distance });
    }
    Ok(VerlindeNumber { value, integer: integer as i64 })
}

/// Per-graph level-k counts over a corpus of genus-`genus` graphs. The
/// entries must come out equal (graph-independence); callers assert that.
pub fn count_all_genus(
    corpus: &[Graph],
    genus: usize,
    k: u32,
) -> Result<Vec<(String, usize)>, ColoringError> {
    let mut table = Vec::with_capacity(corpus.len());
    for (i, g) in corpus.iter().enumerate() {
        let name = g.name().map_or_else(|| format!("graph{i}"), str::to_owned);
        let actual = g.genus()?;
        if actual != genus {
            return Err(ColoringError::GenusMismatch { name, actual, expected: genus });
        }
        table.push((name, count_level_k(g, k)?));
    }
    Ok(table)
}

/// Connected sum of two spin networks along `e1` and `e2`, the new bridge
/// edge colored `jp`. The split halves inherit their parents' colors; `jp`
/// must keep both new vertices admissible, i.e. be even and at most
/// `2 min(c(e1), c(e2))`.
pub fn colored_connected_sum(
    n1: &SpinNetwork,
    e1: &EdgeId,
    n2: &SpinNetwork,
    e2: &EdgeId,
    jp: u32,
) -> Result<SpinNetwork, ColoringError> {
    let c1 = n1.coloring.color(e1)?;
    let c2 = n2.coloring.color(e2)?;
    if !jp.is_multiple_of(2) || jp > 2 * c1.min(c2) {
        return Err(ColoringError::InadmissibleBridge { jp, c1, c2 });
    }

    let ConnectedSum { graph, bridge, halves, renamed_edges, .. } =
        connected_sum(n1.graph(), e1, n2.graph(), e2)?;

    let mut colors = BTreeMap::new();
    for (e, c) in n1.coloring.iter() {
        if e != e1 {
            colors.insert(e.clone(), c);
        }
    }
    for (e, c) in n2.coloring.iter() {
        if e != e2 {
            let id = renamed_edges.get(e).unwrap_or(e).clone();
            colors.insert(id, c);
        }
    }
    colors.insert(halves[0].clone(), c1);
    colors.insert(halves[1].clone(), c1);
    colors.insert(halves[2].clone(), c2);
    colors.insert(halves[3].clone(), c2);
    colors.insert(bridge, jp);

    SpinNetwork::new(graph, Coloring { colors }, None)
}

/// Excises every vertex violating admissibility, then doubles each open
/// component with mirrored colors. Every returned network is admissible; an
/// already admissible input comes back unchanged as a single network.
pub fn excise_and_double(g: &Graph, c: &Coloring) -> Result<Vec<SpinNetwork>, ColoringError> {
    c.validate_total(g)?;
    let bad: BTreeSet<VertexId> = g
        .vertices()
        .filter(|v| {
            !vertex_triple(g, c, v)
                .map(|t| t.is_admissible())
                .unwrap_or(false)
        })
        .cloned()
        .collect();
    if bad.is_empty() {
        return Ok(vec![SpinNetwork::new(g.clone(), c.clone(), None)?]);
    }

    let mut out = Vec::new();
    for part in excise_vertices(g, &bad) {
        let restriction =
            Coloring::from_pairs(part.edge_ids().map(|e| (e.clone(), c.get(e).expect("total"))));
        if part.is_closed() {
            out.push(SpinNetwork::new(part, restriction, None)?);
            continue;
        }
        let doubled = topology::double_detailed(&part)?;
        let mut colors: BTreeMap<EdgeId, u32> = restriction.colors.clone();
        for (orig, mirror) in &doubled.mirror_edges {
            colors.insert(mirror.clone(), restriction.get(orig).expect("total"));
        }
        out.push(SpinNetwork::new(doubled.graph, Coloring { colors }, None)?);
    }
    Ok(out)
}
