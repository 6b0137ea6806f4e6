//! Trivalent multigraphs with loops and open ends.
//!
//! A [`Graph`] stores a set of vertex identifiers and a map from edge
//! identifiers to two *end slots*. Each slot is either attached to a vertex
//! or [`End::Open`]. A loop attaches both slots to the same vertex and
//! therefore contributes two slots but only one incidence *flag*
//! (edge, vertex) pair; [`Graph::flag_count`] counts flags the latter way so
//! the identity `2|E| - |L| = |F| = 3|V| - |L|` is directly testable.
//!
//! Graphs are immutable after construction. Every surgery in [`surgery`]
//! returns a fresh value, so all operations are safe to call concurrently.

mod parse;
mod surgery;

pub use parse::{parse_graph, serialize_graph};
pub use surgery::{
    connected_sum, double, double_detailed, excise_vertices, reduce_multivalent, ConnectedSum,
    Doubled, Reduction, TreeShape,
};

use std::borrow::Borrow;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Identifier of a vertex. Stable strings supplied by input files;
/// machine-generated ids carry a `_gen` prefix.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct VertexId(String);

/// Identifier of an edge.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EdgeId(String);

macro_rules! id_impls {
    ($ty:ident) => {
        impl $ty {
            pub fn new(id: impl Into<String>) -> Self {
                Self(id.into())
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $ty {
            fn from(s: &str) -> Self {
                Self(s.to_owned())
            }
        }

        impl From<String> for $ty {
            fn from(s: String) -> Self {
                Self(s)
            }
        }

        impl Borrow<str> for $ty {
            fn borrow(&self) -> &str {
                &self.0
            }
        }
    };
}

id_impls!(VertexId);
id_impls!(EdgeId);

/// One end slot of an edge.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum End {
    Vertex(VertexId),
    Open,
}

impl End {
    pub fn vertex(&self) -> Option<&VertexId> {
        match self {
            End::Vertex(v) => Some(v),
            End::Open => None,
        }
    }

    pub fn is_open(&self) -> bool {
        matches!(self, End::Open)
    }
}

/// One of the two slots of an edge, addressed by edge id and side index.
///
/// A loop at `v` yields two distinct half-edges at `v` (sides 0 and 1);
/// these are the contraction slots used by the representation-theoretic
/// layer, as opposed to flags which count incidences.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfEdge {
    pub edge: EdgeId,
    pub side: usize,
}

impl HalfEdge {
    pub fn new(edge: impl Into<EdgeId>, side: usize) -> Self {
        HalfEdge { edge: edge.into(), side }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum TopologyError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("line {line}: edge references undeclared vertex `{vertex}`")]
    DanglingVertex { line: usize, vertex: VertexId },
    #[error("vertex `{vertex}` has valence {valence}, expected 3")]
    NonTrivalent { vertex: VertexId, valence: usize },
    #[error("graph has open ends")]
    OpenEnds,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("unknown edge `{0}`")]
    UnknownEdge(EdgeId),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(VertexId),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(EdgeId),
    #[error("graph has no open ends to glue")]
    NoOpenEnds,
    #[error("invalid surgery: {0}")]
    InvalidSurgery(String),
    #[error("vertex `{vertex}` has valence {valence}, below the minimum of 3")]
    LowValence { vertex: VertexId, valence: usize },
    #[error("tree shape for vertex `{vertex}` has {leaves} leaves, expected {expected}")]
    LeafCountMismatch { vertex: VertexId, leaves: usize, expected: usize },
    #[error("no valid orientation found (input is not closed trivalent?)")]
    NoOrientation,
    #[error("marking does not match graph: {0}")]
    MarkingMismatch(String),
}

/// A finite multigraph with loops and open ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    name: Option<String>,
    vertices: BTreeSet<VertexId>,
    edges: BTreeMap<EdgeId, [End; 2]>,
}

/// Incremental construction of a [`Graph`]. Vertices referenced by edges are
/// declared implicitly.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    name: Option<String>,
    vertices: BTreeSet<VertexId>,
    edges: Vec<(EdgeId, [End; 2])>,
}

impl GraphBuilder {
    pub fn name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn vertex(mut self, v: impl Into<VertexId>) -> Self {
        self.vertices.insert(v.into());
        self
    }

    /// Edge with both ends attached (a loop when `a == b`).
    pub fn edge(mut self, id: impl Into<EdgeId>, a: impl Into<VertexId>, b: impl Into<VertexId>) -> Self {
        self.edges
            .push((id.into(), [End::Vertex(a.into()), End::Vertex(b.into())]));
        self
    }

    /// Edge attached to `v` on side 0 with an open side 1.
    pub fn half_open_edge(mut self, id: impl Into<EdgeId>, v: impl Into<VertexId>) -> Self {
        self.edges.push((id.into(), [End::Vertex(v.into()), End::Open]));
        self
    }

    pub fn edge_ends(mut self, id: impl Into<EdgeId>, ends: [End; 2]) -> Self {
        self.edges.push((id.into(), ends));
        self
    }

    pub fn finish(self) -> Result<Graph, TopologyError> {
        let mut vertices = self.vertices;
        let mut edges = BTreeMap::new();
        for (id, ends) in self.edges {
            for end in &ends {
                if let End::Vertex(v) = end {
                    vertices.insert(v.clone());
                }
            }
            if edges.insert(id.clone(), ends).is_some() {
                return Err(TopologyError::DuplicateEdge(id));
            }
        }
        Ok(Graph { name: self.name, vertices, edges })
    }
}

impl Graph {
    pub fn build() -> GraphBuilder {
        GraphBuilder::default()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = &VertexId> {
        self.vertices.iter()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&EdgeId, &[End; 2])> {
        self.edges.iter()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = &EdgeId> {
        self.edges.keys()
    }

    pub fn contains_vertex(&self, v: &VertexId) -> bool {
        self.vertices.contains(v)
    }

    pub fn contains_edge(&self, e: &EdgeId) -> bool {
        self.edges.contains_key(e)
    }

    pub fn ends(&self, e: &EdgeId) -> Result<&[End; 2], TopologyError> {
        self.edges.get(e).ok_or_else(|| TopologyError::UnknownEdge(e.clone()))
    }

    /// The vertex an edge side is attached to, if any.
    pub fn end_vertex(&self, e: &EdgeId, side: usize) -> Result<Option<&VertexId>, TopologyError> {
        Ok(self.ends(e)?[side].vertex())
    }

    pub fn is_loop(&self, e: &EdgeId) -> bool {
        match self.edges.get(e) {
            Some([End::Vertex(a), End::Vertex(b)]) => a == b,
            _ => false,
        }
    }

    pub fn loop_count(&self) -> usize {
        self.edges.keys().filter(|e| self.is_loop(e)).count()
    }

    /// Number of (edge, vertex) incidence pairs; a loop contributes one.
    pub fn flag_count(&self) -> usize {
        self.edges
            .values()
            .map(|ends| match ends {
                [End::Vertex(a), End::Vertex(b)] if a == b => 1,
                _ => ends.iter().filter(|e| !e.is_open()).count(),
            })
            .sum()
    }

    pub fn open_end_count(&self) -> usize {
        self.edges
            .values()
            .map(|ends| ends.iter().filter(|e| e.is_open()).count())
            .sum()
    }

    pub fn is_closed(&self) -> bool {
        self.open_end_count() == 0
    }

    /// Number of end slots attached to `v`; a loop counts twice.
    pub fn valence(&self, v: &VertexId) -> usize {
        self.edges
            .values()
            .flat_map(|ends| ends.iter())
            .filter(|end| end.vertex() == Some(v))
            .count()
    }

    /// Half-edges attached to `v` in canonical (edge id, side) order.
    pub fn incident_half_edges(&self, v: &VertexId) -> Vec<HalfEdge> {
        let mut out = Vec::new();
        for (id, ends) in &self.edges {
            for (side, end) in ends.iter().enumerate() {
                if end.vertex() == Some(v) {
                    out.push(HalfEdge { edge: id.clone(), side });
                }
            }
        }
        out
    }

    pub fn is_trivalent(&self) -> bool {
        self.vertices.iter().all(|v| self.valence(v) == 3)
    }

    pub fn require_closed_trivalent(&self) -> Result<(), TopologyError> {
        if !self.is_closed() {
            return Err(TopologyError::OpenEnds);
        }
        for v in &self.vertices {
            let valence = self.valence(v);
            if valence != 3 {
                return Err(TopologyError::NonTrivalent { vertex: v.clone(), valence });
            }
        }
        Ok(())
    }

    pub fn require_connected(&self) -> Result<(), TopologyError> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(TopologyError::Disconnected)
        }
    }

    /// Genus `g = |E| - |V| + 1` of a closed trivalent connected graph,
    /// consistent with `|V| = 2g - 2` and `|E| = 3g - 3`.
    pub fn genus(&self) -> Result<usize, TopologyError> {
        self.require_closed_trivalent()?;
        self.require_connected()?;
        Ok(self.edge_count() - self.vertex_count() + 1)
    }

    /// Per-component genera of a closed trivalent graph, in component order,
    /// together with their sum.
    pub fn component_genera(&self) -> Result<(Vec<usize>, usize), TopologyError> {
        self.require_closed_trivalent()?;
        let genera = self
            .components()
            .iter()
            .map(|c| c.genus())
            .collect::<Result<Vec<_>, _>>()?;
        let total = genera.iter().sum();
        Ok((genera, total))
    }

    /// Connected components, each as its own graph. Component order is by
    /// smallest contained vertex id; a fully open edge forms its own
    /// vertex-less component.
    pub fn components(&self) -> Vec<Graph> {
        type Component = (BTreeSet<VertexId>, BTreeMap<EdgeId, [End; 2]>);
        let mut assigned: BTreeMap<&VertexId, usize> = BTreeMap::new();
        let mut comps: Vec<Component> = Vec::new();

        // adjacency over attached ends
        let mut adj: BTreeMap<&VertexId, Vec<&VertexId>> = BTreeMap::new();
        for ends in self.edges.values() {
            if let [End::Vertex(a), End::Vertex(b)] = ends {
                adj.entry(a).or_default().push(b);
                adj.entry(b).or_default().push(a);
            }
        }

        for start in &self.vertices {
            if assigned.contains_key(start) {
                continue;
            }
            let idx = comps.len();
            comps.push((BTreeSet::new(), BTreeMap::new()));
            let mut queue = VecDeque::from([start]);
            assigned.insert(start, idx);
            while let Some(v) = queue.pop_front() {
                comps[idx].0.insert(v.clone());
                for w in adj.get(v).into_iter().flatten() {
                    if !assigned.contains_key(*w) {
                        assigned.insert(w, idx);
                        queue.push_back(w);
                    }
                }
            }
        }

        for (id, ends) in &self.edges {
            let home = ends.iter().find_map(|end| end.vertex());
            match home {
                Some(v) => {
                    let idx = assigned[&v];
                    comps[idx].1.insert(id.clone(), ends.clone());
                }
                None => comps.push((BTreeSet::new(), BTreeMap::from([(id.clone(), ends.clone())]))),
            }
        }

        comps
            .into_iter()
            .map(|(vertices, edges)| Graph { name: None, vertices, edges })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Multiset of edges under a vertex relabeling, as sorted end-key pairs.
    fn edge_multiset(&self, map: &BTreeMap<&VertexId, &VertexId>) -> Vec<(String, String)> {
        let mut keys: Vec<(String, String)> = self
            .edges
            .values()
            .map(|ends| {
                let mut pair: Vec<String> = ends
                    .iter()
                    .map(|end| match end {
                        End::Vertex(v) => map.get(v).map_or_else(|| v.to_string(), |w| w.to_string()),
                        End::Open => "\u{0}OPEN".to_owned(),
                    })
                    .collect();
                pair.sort();
                (pair.remove(0), pair.remove(0))
            })
            .collect();
        keys.sort();
        keys
    }

    /// Degree, loop count, and open-edge count at a vertex; isomorphisms
    /// must preserve this signature.
    fn vertex_signature(&self, v: &VertexId) -> (usize, usize, usize) {
        let loops = self
            .edges
            .values()
            .filter(|ends| matches!(ends, [End::Vertex(a), End::Vertex(b)] if a == b && a == v))
            .count();
        let opens = self
            .edges
            .values()
            .filter(|ends| ends.iter().any(End::is_open) && ends.iter().any(|e| e.vertex() == Some(v)))
            .count();
        (self.valence(v), loops, opens)
    }

    /// Tests multigraph isomorphism (vertex relabeling preserving the edge
    /// multiset, loops, and open attachments). Exhaustive over signature-
    /// compatible vertex bijections; intended for the small graphs this
    /// library works with.
    pub fn is_isomorphic_to(&self, other: &Graph) -> bool {
        if self.vertex_count() != other.vertex_count()
            || self.edge_count() != other.edge_count()
            || self.loop_count() != other.loop_count()
            || self.open_end_count() != other.open_end_count()
        {
            return false;
        }

        let mine: Vec<&VertexId> = self.vertices.iter().collect();
        let theirs: Vec<&VertexId> = other.vertices.iter().collect();
        let target = other.edge_multiset(&BTreeMap::new());

        let mut used = vec![false; theirs.len()];
        let mut map: BTreeMap<&VertexId, &VertexId> = BTreeMap::new();
        self.search_isomorphism(&mine, &theirs, other, &target, &mut used, &mut map, 0)
    }

    #[allow(clippy::too_many_arguments)]
    fn search_isomorphism<'a>(
        &self,
        mine: &[&'a VertexId],
        theirs: &[&'a VertexId],
        other: &Graph,
        target: &[(String, String)],
        used: &mut [bool],
        map: &mut BTreeMap<&'a VertexId, &'a VertexId>,
        pos: usize,
    ) -> bool {
        if pos == mine.len() {
            return self.edge_multiset(map) == target;
        }
        let v = mine[pos];
        for (i, w) in theirs.iter().enumerate() {
            if used[i] || self.vertex_signature(v) != other.vertex_signature(w) {
                continue;
            }
            used[i] = true;
            map.insert(v, w);
            if self.search_isomorphism(mine, theirs, other, target, used, map, pos + 1) {
                return true;
            }
            map.remove(v);
            used[i] = false;
        }
        false
    }

    /// Finds an orientation in which every vertex has at least one incoming
    /// and one outgoing half-edge. Greedy with local repair, falling back to
    /// exhaustive search; such an orientation always exists for closed
    /// trivalent graphs.
    pub fn find_orientation(&self) -> Result<Orientation, TopologyError> {
        self.require_closed_trivalent()?;

        let mut orientation = Orientation {
            tail_side: self.edges.keys().map(|e| (e.clone(), 0usize)).collect(),
        };
        if orientation.is_valid_for(self) {
            return Ok(orientation);
        }

        let non_loops: Vec<EdgeId> = self
            .edges
            .keys()
            .filter(|e| !self.is_loop(e))
            .cloned()
            .collect();

        // Local repair: flip a non-loop edge at a violating vertex,
        // preferring flips that strictly reduce the number of violations.
        let cap = 10 * self.edge_count().max(1);
        for round in 0..cap {
            if self.first_violating_vertex(&orientation).is_none() {
                return Ok(orientation);
            }
            let before = self.violation_count(&orientation);
            let bad = self.first_violating_vertex(&orientation).expect("counted above");
            let candidates: Vec<EdgeId> = self
                .incident_half_edges(&bad)
                .into_iter()
                .filter(|h| !self.is_loop(&h.edge))
                .map(|h| h.edge)
                .collect();
            if candidates.is_empty() {
                break;
            }
            let mut flipped = false;
            for e in &candidates {
                orientation.flip(e);
                if self.violation_count(&orientation) < before {
                    flipped = true;
                    break;
                }
                orientation.flip(e);
            }
            if !flipped {
                // No strictly improving flip; perturb and keep going.
                orientation.flip(&candidates[round % candidates.len()]);
            }
        }
        if orientation.is_valid_for(self) {
            return Ok(orientation);
        }

        // Exhaustive fallback over non-loop edge directions.
        if non_loops.len() <= 24 {
            for mask in 0u64..(1u64 << non_loops.len()) {
                let mut tail_side: BTreeMap<EdgeId, usize> =
                    self.edges.keys().map(|e| (e.clone(), 0usize)).collect();
                for (i, e) in non_loops.iter().enumerate() {
                    tail_side.insert(e.clone(), ((mask >> i) & 1) as usize);
                }
                let cand = Orientation { tail_side };
                if cand.is_valid_for(self) {
                    return Ok(cand);
                }
            }
        }
        Err(TopologyError::NoOrientation)
    }

    fn first_violating_vertex(&self, o: &Orientation) -> Option<VertexId> {
        self.vertices
            .iter()
            .find(|v| !o.vertex_has_in_and_out(self, v))
            .cloned()
    }

    fn violation_count(&self, o: &Orientation) -> usize {
        self.vertices
            .iter()
            .filter(|v| !o.vertex_has_in_and_out(self, v))
            .count()
    }

    /// Deterministic spanning-tree marking: breadth-first from the smallest
    /// vertex id, scanning edges in id order. The complement lists the `g`
    /// non-tree edges in id order.
    pub fn spanning_tree(&self) -> Result<Marking, TopologyError> {
        self.require_closed_trivalent()?;
        self.require_connected()?;

        let mut tree = BTreeSet::new();
        let mut seen = BTreeSet::new();
        let Some(root) = self.vertices.iter().next() else {
            return Err(TopologyError::Disconnected);
        };
        seen.insert(root.clone());
        let mut queue = VecDeque::from([root.clone()]);
        while let Some(v) = queue.pop_front() {
            for h in self.incident_half_edges(&v) {
                let ends = &self.edges[&h.edge];
                if let End::Vertex(w) = &ends[1 - h.side] {
                    if !seen.contains(w) {
                        seen.insert(w.clone());
                        tree.insert(h.edge.clone());
                        queue.push_back(w.clone());
                    }
                }
            }
        }

        let complement: Vec<EdgeId> = self
            .edges
            .keys()
            .filter(|e| !tree.contains(*e))
            .cloned()
            .collect();
        Ok(Marking { tree, complement })
    }
}

/// An edge orientation in which every vertex has edges both in and out.
///
/// Each edge is directed from its tail slot to its head slot; a directed
/// loop supplies one incoming and one outgoing half-edge at its vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    tail_side: BTreeMap<EdgeId, usize>,
}

impl Orientation {
    /// Builds an orientation from explicit tail sides. Missing edges default
    /// to tail on side 0 when validated against a graph.
    pub fn from_tail_sides(tail_side: BTreeMap<EdgeId, usize>) -> Self {
        Orientation { tail_side }
    }

    pub fn tail_side(&self, e: &EdgeId) -> usize {
        self.tail_side.get(e).copied().unwrap_or(0)
    }

    pub fn head_side(&self, e: &EdgeId) -> usize {
        1 - self.tail_side(e)
    }

    pub fn tail(&self, e: &EdgeId) -> HalfEdge {
        HalfEdge { edge: e.clone(), side: self.tail_side(e) }
    }

    pub fn head(&self, e: &EdgeId) -> HalfEdge {
        HalfEdge { edge: e.clone(), side: self.head_side(e) }
    }

    pub fn tail_vertex<'g>(&self, g: &'g Graph, e: &EdgeId) -> Result<&'g VertexId, TopologyError> {
        g.ends(e)?[self.tail_side(e)]
            .vertex()
            .ok_or(TopologyError::OpenEnds)
    }

    pub fn head_vertex<'g>(&self, g: &'g Graph, e: &EdgeId) -> Result<&'g VertexId, TopologyError> {
        g.ends(e)?[self.head_side(e)]
            .vertex()
            .ok_or(TopologyError::OpenEnds)
    }

    fn flip(&mut self, e: &EdgeId) {
        let side = self.tail_side(e);
        self.tail_side.insert(e.clone(), 1 - side);
    }

    fn vertex_has_in_and_out(&self, g: &Graph, v: &VertexId) -> bool {
        let mut has_in = false;
        let mut has_out = false;
        for h in g.incident_half_edges(v) {
            if h.side == self.tail_side(&h.edge) {
                has_out = true;
            }
            if h.side == self.head_side(&h.edge) {
                has_in = true;
            }
        }
        has_in && has_out
    }

    /// True when every vertex of `g` sees at least one incoming and one
    /// outgoing half-edge.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        g.vertices.iter().all(|v| self.vertex_has_in_and_out(g, v))
    }
}

/// A spanning tree of a connected closed trivalent graph together with the
/// ordered list of the `g` complement edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Marking {
    tree: BTreeSet<EdgeId>,
    complement: Vec<EdgeId>,
}

impl Marking {
    pub fn tree(&self) -> &BTreeSet<EdgeId> {
        &self.tree
    }

    pub fn complement(&self) -> &[EdgeId] {
        &self.complement
    }

    pub fn in_tree(&self, e: &EdgeId) -> bool {
        self.tree.contains(e)
    }

    /// Checks `|tree| = 2g - 3`, `|complement| = g`, and that the tree is
    /// spanning and acyclic on `g`.
    pub fn validate(&self, g: &Graph) -> Result<(), TopologyError> {
        let genus = g.genus()?;
        if self.tree.len() != 2 * genus - 3 {
            return Err(TopologyError::MarkingMismatch(format!(
                "tree has {} edges, expected {}",
                self.tree.len(),
                2 * genus - 3
            )));
        }
        if self.complement.len() != genus {
            return Err(TopologyError::MarkingMismatch(format!(
                "complement has {} edges, expected {}",
                self.complement.len(),
                genus
            )));
        }
        for e in self.tree.iter().chain(self.complement.iter()) {
            if !g.contains_edge(e) {
                return Err(TopologyError::MarkingMismatch(format!("edge `{e}` not in graph")));
            }
        }
        // acyclic + spanning: union-find over tree edges
        let verts: Vec<&VertexId> = g.vertices().collect();
        let index: BTreeMap<&VertexId, usize> = verts.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut parent: Vec<usize> = (0..verts.len()).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for e in &self.tree {
            let ends = g.ends(e).expect("checked above");
            let (Some(a), Some(b)) = (ends[0].vertex(), ends[1].vertex()) else {
                return Err(TopologyError::MarkingMismatch(format!("tree edge `{e}` has open end")));
            };
            let (ra, rb) = (find(&mut parent, index[a]), find(&mut parent, index[b]));
            if ra == rb {
                return Err(TopologyError::MarkingMismatch(format!("tree edge `{e}` closes a cycle")));
            }
            parent[ra] = rb;
        }
        let root = find(&mut parent, 0);
        if (0..verts.len()).any(|i| find(&mut parent, i) != root) {
            return Err(TopologyError::MarkingMismatch("tree is not spanning".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests;
