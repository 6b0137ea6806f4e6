//! Graph surgeries: doubling, connected sum, multivalent reduction, and
//! vertex excision.
//!
//! All surgeries are pure; identifiers coming from the inputs are preserved
//! wherever possible and machine-generated identifiers are prefixed with
//! `_gen`, bumped with a numeric suffix on collision.

use std::collections::{BTreeMap, BTreeSet};

use super::{EdgeId, End, Graph, TopologyError, VertexId};

fn fresh(base: String, used: &mut BTreeSet<String>) -> String {
    let id = if used.contains(&base) {
        (2..)
            .map(|n| format!("{base}.{n}"))
            .find(|c| !used.contains(c))
            .expect("unbounded counter")
    } else {
        base
    };
    used.insert(id.clone());
    id
}

/// Result of [`double_detailed`]: the closed graph plus the id maps from
/// originals to their mirror copies. Edges that had an open end fuse with
/// their mirror partner and keep their original id, so they do not appear in
/// `mirror_edges`.
#[derive(Debug, Clone)]
pub struct Doubled {
    pub graph: Graph,
    pub mirror_vertices: BTreeMap<VertexId, VertexId>,
    pub mirror_edges: BTreeMap<EdgeId, EdgeId>,
}

/// Glues a graph with open ends to its mirror copy along those ends,
/// producing a closed trivalent graph. Each open end of `g` fuses with its
/// mirror partner into a single edge; closed edges and vertices are
/// duplicated with `_gen.`-prefixed mirror ids.
pub fn double(g: &Graph) -> Result<Graph, TopologyError> {
    double_detailed(g).map(|d| d.graph)
}

/// [`double`] with the original-to-mirror id maps exposed.
pub fn double_detailed(g: &Graph) -> Result<Doubled, TopologyError> {
    if g.open_end_count() == 0 {
        return Err(TopologyError::NoOpenEnds);
    }
    for v in g.vertices() {
        let valence = g.valence(v);
        if valence != 3 {
            return Err(TopologyError::NonTrivalent { vertex: v.clone(), valence });
        }
    }
    for (id, ends) in g.edges() {
        if ends.iter().all(End::is_open) {
            return Err(TopologyError::InvalidSurgery(format!(
                "edge `{id}` has both ends open; nothing to mirror it against"
            )));
        }
    }
    if g.vertex_count() == 0 {
        return Err(TopologyError::InvalidSurgery("graph has no vertices".into()));
    }

    let mut used_vertices: BTreeSet<String> = g.vertices().map(|v| v.as_str().to_owned()).collect();
    let mirror_vertex: BTreeMap<&VertexId, VertexId> = g
        .vertices()
        .map(|v| (v, VertexId::new(fresh(format!("_gen.{v}"), &mut used_vertices))))
        .collect();

    let mut used_edges: BTreeSet<String> = g.edge_ids().map(|e| e.as_str().to_owned()).collect();
    let mut mirror_edges = BTreeMap::new();
    let mut builder = Graph::build();
    for v in g.vertices() {
        builder = builder.vertex(v.clone()).vertex(mirror_vertex[v].clone());
    }
    for (id, ends) in g.edges() {
        if ends.iter().any(End::is_open) {
            // fuse with the mirror partner into one edge
            let side = ends.iter().position(|e| !e.is_open()).expect("both-open rejected");
            let v = ends[side].vertex().expect("attached");
            let mut fused = [End::Open, End::Open];
            fused[side] = End::Vertex(v.clone());
            fused[1 - side] = End::Vertex(mirror_vertex[v].clone());
            builder = builder.edge_ends(id.clone(), fused);
        } else {
            let mirror_id = EdgeId::new(fresh(format!("_gen.{id}"), &mut used_edges));
            mirror_edges.insert(id.clone(), mirror_id.clone());
            let mirrored: Vec<End> = ends
                .iter()
                .map(|e| End::Vertex(mirror_vertex[e.vertex().expect("closed edge")].clone()))
                .collect();
            builder = builder
                .edge_ends(id.clone(), ends.clone())
                .edge_ends(mirror_id, [mirrored[0].clone(), mirrored[1].clone()]);
        }
    }
    Ok(Doubled {
        graph: builder.finish()?,
        mirror_vertices: mirror_vertex
            .into_iter()
            .map(|(k, v)| (k.clone(), v))
            .collect(),
        mirror_edges,
    })
}

/// Result of [`connected_sum`]: the joined graph, the id of the new bridge
/// edge, and the ids of the four half edges the two split edges became.
#[derive(Debug, Clone)]
pub struct ConnectedSum {
    pub graph: Graph,
    pub bridge: EdgeId,
    /// `[e1', e1'', e2', e2'']` in input order.
    pub halves: [EdgeId; 4],
    /// The two new midpoint vertices `(m', m'')`.
    pub midpoints: (VertexId, VertexId),
    /// Relabeling applied to `g2` ids that collided with `g1` ids.
    pub renamed_edges: BTreeMap<EdgeId, EdgeId>,
    pub renamed_vertices: BTreeMap<VertexId, VertexId>,
}

/// Joins two closed trivalent graphs by splitting `e1` and `e2` at new
/// midpoint vertices and bridging the midpoints with a new edge. Genus is
/// additive under this operation.
pub fn connected_sum(
    g1: &Graph,
    e1: &EdgeId,
    g2: &Graph,
    e2: &EdgeId,
) -> Result<ConnectedSum, TopologyError> {
    g1.require_closed_trivalent()?;
    g2.require_closed_trivalent()?;
    g1.ends(e1)?;
    g2.ends(e2)?;

    let mut used_vertices: BTreeSet<String> = g1.vertices().map(|v| v.as_str().to_owned()).collect();
    let mut used_edges: BTreeSet<String> = g1.edge_ids().map(|e| e.as_str().to_owned()).collect();

    let mut renamed_vertices = BTreeMap::new();
    let mut renamed_edges = BTreeMap::new();
    let map_vertex = |v: &VertexId,
                      used: &mut BTreeSet<String>,
                      renamed: &mut BTreeMap<VertexId, VertexId>| {
        if let Some(w) = renamed.get(v) {
            return w.clone();
        }
        let id = if used.contains(v.as_str()) {
            let w = VertexId::new(fresh(format!("_gen.{v}"), used));
            renamed.insert(v.clone(), w.clone());
            w
        } else {
            used.insert(v.as_str().to_owned());
            v.clone()
        };
        id
    };

    let mut builder = Graph::build();
    for v in g1.vertices() {
        builder = builder.vertex(v.clone());
    }
    let mut g2_vertex: BTreeMap<&VertexId, VertexId> = BTreeMap::new();
    for v in g2.vertices() {
        let w = map_vertex(v, &mut used_vertices, &mut renamed_vertices);
        g2_vertex.insert(v, w.clone());
        builder = builder.vertex(w);
    }

    // carry over unsplit edges
    for (id, ends) in g1.edges() {
        if id != e1 {
            builder = builder.edge_ends(id.clone(), ends.clone());
        }
    }
    let mut g2_edge_id = |id: &EdgeId, used: &mut BTreeSet<String>| -> EdgeId {
        if used.contains(id.as_str()) {
            let n = EdgeId::new(fresh(format!("_gen.{id}"), used));
            renamed_edges.insert(id.clone(), n.clone());
            n
        } else {
            used.insert(id.as_str().to_owned());
            id.clone()
        }
    };
    for (id, ends) in g2.edges() {
        if id != e2 {
            let nid = g2_edge_id(id, &mut used_edges);
            let mapped: Vec<End> = ends
                .iter()
                .map(|e| End::Vertex(g2_vertex[e.vertex().expect("closed")].clone()))
                .collect();
            builder = builder.edge_ends(nid, [mapped[0].clone(), mapped[1].clone()]);
        }
    }

    let m1 = VertexId::new(fresh("_gen.m1".into(), &mut used_vertices));
    let m2 = VertexId::new(fresh("_gen.m2".into(), &mut used_vertices));

    let split = |e: &EdgeId,
                 ends: &[End; 2],
                 mid: &VertexId,
                 vmap: Option<&BTreeMap<&VertexId, VertexId>>,
                 used: &mut BTreeSet<String>|
     -> ((EdgeId, [End; 2]), (EdgeId, [End; 2])) {
        let resolve = |end: &End| {
            let v = end.vertex().expect("closed");
            match vmap {
                Some(m) => m[v].clone(),
                None => v.clone(),
            }
        };
        let a = EdgeId::new(fresh(format!("_gen.{e}.1"), used));
        let b = EdgeId::new(fresh(format!("_gen.{e}.2"), used));
        (
            (a, [End::Vertex(resolve(&ends[0])), End::Vertex(mid.clone())]),
            (b, [End::Vertex(mid.clone()), End::Vertex(resolve(&ends[1]))]),
        )
    };

    let (h1a, h1b) = split(e1, g1.ends(e1)?, &m1, None, &mut used_edges);
    let (h2a, h2b) = split(e2, g2.ends(e2)?, &m2, Some(&g2_vertex), &mut used_edges);
    let bridge = EdgeId::new(fresh("_gen.p".into(), &mut used_edges));

    builder = builder
        .vertex(m1.clone())
        .vertex(m2.clone())
        .edge_ends(h1a.0.clone(), h1a.1)
        .edge_ends(h1b.0.clone(), h1b.1)
        .edge_ends(h2a.0.clone(), h2a.1)
        .edge_ends(h2b.0.clone(), h2b.1)
        .edge_ends(bridge.clone(), [End::Vertex(m1.clone()), End::Vertex(m2.clone())]);

    Ok(ConnectedSum {
        graph: builder.finish()?,
        bridge,
        halves: [h1a.0, h1b.0, h2a.0, h2b.0],
        midpoints: (m1, m2),
        renamed_edges,
        renamed_vertices,
    })
}

/// Deletes the given vertices; surviving sides of their incident edges become
/// open ends. Edges losing both ends are dropped, as are edges left with no
/// attached end at all. Returns the connected components of what remains.
pub fn excise_vertices(g: &Graph, bad: &BTreeSet<VertexId>) -> Vec<Graph> {
    let mut builder = Graph::build();
    for v in g.vertices() {
        if !bad.contains(v) {
            builder = builder.vertex(v.clone());
        }
    }
    for (id, ends) in g.edges() {
        let opened: Vec<End> = ends
            .iter()
            .map(|end| match end {
                End::Vertex(v) if bad.contains(v) => End::Open,
                other => other.clone(),
            })
            .collect();
        if opened.iter().any(|e| !e.is_open()) {
            builder = builder.edge_ends(id.clone(), [opened[0].clone(), opened[1].clone()]);
        }
    }
    let remainder = builder.finish().expect("ids unchanged");
    if remainder.vertex_count() == 0 && remainder.edge_count() == 0 {
        return Vec::new();
    }
    remainder.components()
}

/// Shape of the trivalent tree replacing a multivalent vertex: a full binary
/// tree whose leaves, left to right, take the vertex's incident half-edges in
/// canonical order. The root is contracted away, so a shape with `n` leaves
/// yields `n - 2` trivalent vertices and `n - 3` internal edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeShape {
    Leaf,
    Node(Box<TreeShape>, Box<TreeShape>),
}

impl TreeShape {
    pub fn node(left: TreeShape, right: TreeShape) -> TreeShape {
        TreeShape::Node(Box::new(left), Box::new(right))
    }

    pub fn leaves(&self) -> usize {
        match self {
            TreeShape::Leaf => 1,
            TreeShape::Node(l, r) => l.leaves() + r.leaves(),
        }
    }

    /// The left-comb tree `((..(1 2) 3) .. n)`, the default reduction shape.
    pub fn caterpillar(n: usize) -> TreeShape {
        assert!(n >= 1);
        let mut shape = TreeShape::Leaf;
        for _ in 1..n {
            shape = TreeShape::node(shape, TreeShape::Leaf);
        }
        shape
    }
}

/// Result of [`reduce_multivalent`]: the trivalent graph and, per reduced
/// vertex, the internal edges its tree introduced.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub graph: Graph,
    pub internal_edges: BTreeMap<VertexId, Vec<EdgeId>>,
}

enum Attach {
    /// A leaf: the original half-edge at this position.
    Slot(usize),
    /// An internal tree vertex with one free port.
    Vertex(VertexId),
}

/// State threaded through the realization of one vertex's tree shape.
struct TreeCtx<'a> {
    vertex: &'a VertexId,
    slots: &'a [super::HalfEdge],
    leaf_counter: usize,
    vertex_counter: usize,
    edge_counter: usize,
    used_vertices: &'a mut BTreeSet<String>,
    used_edges: &'a mut BTreeSet<String>,
    routing: &'a mut BTreeMap<(EdgeId, usize), VertexId>,
    new_vertices: &'a mut Vec<VertexId>,
    new_edges: &'a mut Vec<(EdgeId, [End; 2])>,
    introduced: Vec<EdgeId>,
}

impl TreeCtx<'_> {
    fn route(&mut self, leaf: usize, to: &VertexId) {
        let h = &self.slots[leaf];
        self.routing.insert((h.edge.clone(), h.side), to.clone());
    }

    fn internal_edge(&mut self, u: VertexId, w: VertexId) {
        let id = EdgeId::new(fresh(
            format!("_gen.{}.e{}", self.vertex, self.edge_counter),
            self.used_edges,
        ));
        self.edge_counter += 1;
        self.introduced.push(id.clone());
        self.new_edges.push((id, [End::Vertex(u), End::Vertex(w)]));
    }

    fn realize(&mut self, shape: &TreeShape) -> Attach {
        match shape {
            TreeShape::Leaf => {
                let i = self.leaf_counter;
                self.leaf_counter += 1;
                Attach::Slot(i)
            }
            TreeShape::Node(l, r) => {
                let w = VertexId::new(fresh(
                    format!("_gen.{}.w{}", self.vertex, self.vertex_counter),
                    self.used_vertices,
                ));
                self.vertex_counter += 1;
                self.new_vertices.push(w.clone());
                for child in [l, r] {
                    match self.realize(child) {
                        Attach::Slot(i) => self.route(i, &w),
                        Attach::Vertex(u) => self.internal_edge(u, w.clone()),
                    }
                }
                Attach::Vertex(w)
            }
        }
    }
}

/// Replaces every vertex of valence `n > 3` by an `n`-leaved trivalent tree
/// (caterpillar unless `choices` names a shape), introducing `n - 3` internal
/// edges per reduced vertex. Trivalent vertices are untouched. Preserves the
/// first Betti number.
pub fn reduce_multivalent(
    g: &Graph,
    choices: &BTreeMap<VertexId, TreeShape>,
) -> Result<Reduction, TopologyError> {
    for v in g.vertices() {
        let valence = g.valence(v);
        if valence < 3 {
            return Err(TopologyError::LowValence { vertex: v.clone(), valence });
        }
        if let Some(shape) = choices.get(v) {
            if shape.leaves() != valence {
                return Err(TopologyError::LeafCountMismatch {
                    vertex: v.clone(),
                    leaves: shape.leaves(),
                    expected: valence,
                });
            }
        }
    }

    let mut used_vertices: BTreeSet<String> = g.vertices().map(|v| v.as_str().to_owned()).collect();
    let mut used_edges: BTreeSet<String> = g.edge_ids().map(|e| e.as_str().to_owned()).collect();

    // Where each original half-edge ends up attached.
    let mut routing: BTreeMap<(EdgeId, usize), VertexId> = BTreeMap::new();
    let mut internal_edges: BTreeMap<VertexId, Vec<EdgeId>> = BTreeMap::new();
    let mut new_vertices: Vec<VertexId> = Vec::new();
    let mut new_edges: Vec<(EdgeId, [End; 2])> = Vec::new();

    for v in g.vertices() {
        let slots = g.incident_half_edges(v);
        let n = slots.len();
        if n == 3 {
            continue;
        }
        let default_shape;
        let shape = match choices.get(v) {
            Some(s) => s,
            None => {
                default_shape = TreeShape::caterpillar(n);
                &default_shape
            }
        };

        let mut ctx = TreeCtx {
            vertex: v,
            slots: &slots,
            leaf_counter: 0,
            vertex_counter: 0,
            edge_counter: 0,
            used_vertices: &mut used_vertices,
            used_edges: &mut used_edges,
            routing: &mut routing,
            new_vertices: &mut new_vertices,
            new_edges: &mut new_edges,
            introduced: Vec::new(),
        };

        // Contract the root: realize its two subtrees and join them directly.
        let TreeShape::Node(left, right) = shape else {
            unreachable!("n >= 4 shapes are nodes");
        };
        let a = ctx.realize(left);
        let b = ctx.realize(right);
        match (a, b) {
            (Attach::Vertex(u), Attach::Vertex(w)) => {
                ctx.internal_edge(u, w);
            }
            (Attach::Slot(i), Attach::Vertex(w)) | (Attach::Vertex(w), Attach::Slot(i)) => {
                ctx.route(i, &w);
            }
            (Attach::Slot(_), Attach::Slot(_)) => {
                unreachable!("a shape with >= 4 leaves has an internal node on one side")
            }
        }
        internal_edges.insert(v.clone(), ctx.introduced);
    }

    let mut builder = Graph::build();
    if let Some(name) = g.name() {
        builder = builder.name(name);
    }
    for v in g.vertices() {
        if !internal_edges.contains_key(v) {
            builder = builder.vertex(v.clone());
        }
    }
    for w in new_vertices {
        builder = builder.vertex(w);
    }
    for (id, ends) in g.edges() {
        let rerouted: Vec<End> = ends
            .iter()
            .enumerate()
            .map(|(side, end)| match routing.get(&(id.clone(), side)) {
                Some(w) => End::Vertex(w.clone()),
                None => end.clone(),
            })
            .collect();
        builder = builder.edge_ends(id.clone(), [rerouted[0].clone(), rerouted[1].clone()]);
    }
    for (id, ends) in new_edges {
        builder = builder.edge_ends(id, ends);
    }

    Ok(Reduction { graph: builder.finish()?, internal_edges })
}
