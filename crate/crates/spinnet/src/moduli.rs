//! The geometric face: moment-map coordinates, the moment polytope,
//! Bohr-Sommerfeld points, fiber classification, and the unitary Schottky
//! chart.
//!
//! The moment coordinate of a holonomy is `arccos(Tr/2) / pi`, valued in
//! `[0, 1]` and invariant under conjugation. The moment polytope of a
//! trivalent graph is cut out by the per-vertex triangle inequalities
//! together with `c1 + c2 + c3 <= 2`; the level-k Bohr-Sommerfeld points
//! are exactly the scaled admissible colorings `j / k`, so their count is
//! the Verlinde number. Over the all-zeros point sits the unitary Schottky
//! space `SU(2)^g / Ad`, reached by the spanning-tree chart
//! [`schottky_embed`]: tree edges carry the identity and the i-th
//! complement edge carries `b_i`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::coloring::{enumerate_level_k, Coloring, ColoringError, SpinNetwork};
use crate::su2rep::{evaluate, gauge_act, EdgeAssignment, GaugeAssignment, GroupElement, Su2Error};
use crate::topology::{EdgeId, Graph, Marking, TopologyError, VertexId};

/// Slack used when testing polytope membership and classifying boundary
/// strata; scaled colorings land exactly on facets.
pub const BOUNDARY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum ModuliError {
    #[error("point lies outside the moment polytope")]
    OutsidePolytope,
    #[error("point missing edge `{0}`")]
    MissingEdge(EdgeId),
    #[error("schottky point has {got} components, marking needs {expected}")]
    TupleLength { expected: usize, got: usize },
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Su2(#[from] Su2Error),
}

/// A point of the moment coordinate cube `[0,1]^E`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentPoint {
    coords: BTreeMap<EdgeId, f64>,
}

impl MomentPoint {
    pub fn from_pairs<I, E>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (E, f64)>,
        E: Into<EdgeId>,
    {
        MomentPoint { coords: pairs.into_iter().map(|(e, c)| (e.into(), c)).collect() }
    }

    /// The all-zeros point, the base of the Schottky fiber.
    pub fn zeros(g: &Graph) -> Self {
        MomentPoint { coords: g.edge_ids().map(|e| (e.clone(), 0.0)).collect() }
    }

    /// Scaled coloring `j / k`.
    pub fn from_coloring(c: &Coloring, k: u32) -> Self {
        MomentPoint {
            coords: c.iter().map(|(e, v)| (e.clone(), v as f64 / k as f64)).collect(),
        }
    }

    /// Pointwise moment coordinates of an edge assignment.
    pub fn from_assignment(t: &EdgeAssignment) -> Self {
        MomentPoint {
            coords: t.iter().map(|(e, q)| (e.clone(), moment_coordinate(&q))).collect(),
        }
    }

    pub fn get(&self, e: &EdgeId) -> Result<f64, ModuliError> {
        self.coords.get(e).copied().ok_or_else(|| ModuliError::MissingEdge(e.clone()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&EdgeId, f64)> {
        self.coords.iter().map(|(e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coords.values().all(|&c| c.abs() <= BOUNDARY_TOLERANCE)
    }

    fn vertex_coords(&self, g: &Graph, v: &VertexId) -> Result<[f64; 3], ModuliError> {
        let slots = g.incident_half_edges(v);
        let mut out = [0.0; 3];
        for (i, h) in slots.iter().enumerate().take(3) {
            out[i] = self.get(&h.edge)?;
        }
        Ok(out)
    }
}

/// `(1/pi) arccos(Tr/2)`, clamped against rounding; a class function valued
/// in `[0, 1]` with `identity -> 0`, `-identity -> 1`, traceless `-> 1/2`.
pub fn moment_coordinate(u: &GroupElement) -> f64 {
    let half_trace = (u.trace() / 2.0).clamp(-1.0, 1.0);
    half_trace.acos() / std::f64::consts::PI
}

/// Membership in the moment polytope: at every vertex the triangle
/// inequalities `|c1 - c2| <= c3 <= c1 + c2` (all orderings) plus
/// `c1 + c2 + c3 <= 2`, with [`BOUNDARY_TOLERANCE`] slack.
pub fn polytope_contains(g: &Graph, p: &MomentPoint) -> Result<bool, ModuliError> {
    let tol = BOUNDARY_TOLERANCE;
    for (_, c) in p.iter() {
        if !(-tol..=1.0 + tol).contains(&c) {
            return Ok(false);
        }
    }
    for v in g.vertices() {
        let [a, b, c] = p.vertex_coords(g, v)?;
        let sum = a + b + c;
        let max = a.max(b).max(c);
        if sum > 2.0 + tol || 2.0 * max > sum + tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The level-k Bohr-Sommerfeld points `j / k`, one per admissible level-k
/// coloring; their number is the Verlinde number of the genus.
pub fn bs_points(g: &Graph, k: u32) -> Result<Vec<MomentPoint>, ModuliError> {
    assert!(k >= 1);
    Ok(enumerate_level_k(g, k)?
        .map(|c| MomentPoint::from_coloring(&c, k))
        .collect())
}

/// Stabilizer of a fiber circle over one edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EdgeStabilizer {
    U1,
    SU2,
}

/// Stabilizer at one vertex (trinion).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VertexStabilizer {
    Z2,
    SU2,
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FiberType {
    GenericTorus,
    Schottky,
    Mixed,
}

/// Fiber dimension, exact when every stabilizer is resolved; otherwise an
/// interval with each unresolved vertex contributing `[0, 3]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DimensionBound {
    Exact(i64),
    Range(i64, i64),
}

/// Stabilizer classification of the fiber over a moment point.
#[derive(Debug, Clone, Serialize)]
pub struct FiberDescriptor {
    pub point: MomentPoint,
    pub edge_stabilizers: BTreeMap<EdgeId, EdgeStabilizer>,
    pub vertex_stabilizers: BTreeMap<VertexId, VertexStabilizer>,
    pub dimension: DimensionBound,
    pub fiber_type: FiberType,
}

/// Classifies the fiber over `p`: edge stabilizer `U1` strictly inside
/// `(0, 1)` and `SU2` on the boundary; vertex stabilizer `Z2` at
/// nondegenerate interior triples, `SU2` at the all-zeros triple, `Other`
/// elsewhere (dimension then reported as an interval). The generic interior
/// fiber is a `(3g-3)`-torus; the all-zeros fiber is the Schottky space,
/// also of dimension `3g-3`.
pub fn classify_fiber(g: &Graph, p: &MomentPoint) -> Result<FiberDescriptor, ModuliError> {
    if !polytope_contains(g, p)? {
        return Err(ModuliError::OutsidePolytope);
    }
    let tol = BOUNDARY_TOLERANCE;

    let mut edge_stabilizers = BTreeMap::new();
    for e in g.edge_ids() {
        let c = p.get(e)?;
        let tag = if c > tol && c < 1.0 - tol { EdgeStabilizer::U1 } else { EdgeStabilizer::SU2 };
        edge_stabilizers.insert(e.clone(), tag);
    }

    let mut vertex_stabilizers = BTreeMap::new();
    for v in g.vertices() {
        let [a, b, c] = p.vertex_coords(g, v)?;
        let tag = if a <= tol && b <= tol && c <= tol {
            VertexStabilizer::SU2
        } else {
            let interior = [a, b, c].iter().all(|&x| x > tol && x < 1.0 - tol);
            let sum = a + b + c;
            let max = a.max(b).max(c);
            let strict_triangle = 2.0 * max < sum - tol && sum < 2.0 - tol;
            if interior && strict_triangle {
                VertexStabilizer::Z2
            } else {
                VertexStabilizer::Other
            }
        };
        vertex_stabilizers.insert(v.clone(), tag);
    }

    let edge_dim: i64 = edge_stabilizers
        .values()
        .map(|t| match t {
            EdgeStabilizer::U1 => 1,
            EdgeStabilizer::SU2 => 3,
        })
        .sum();
    let mut vertex_dim: i64 = 0;
    let mut unresolved: i64 = 0;
    for t in vertex_stabilizers.values() {
        match t {
            VertexStabilizer::Z2 => {}
            VertexStabilizer::SU2 => vertex_dim += 3,
            VertexStabilizer::Other => unresolved += 1,
        }
    }
    let dimension = if unresolved == 0 {
        DimensionBound::Exact(edge_dim - vertex_dim)
    } else {
        let upper = edge_dim - vertex_dim;
        let lower = (upper - 3 * unresolved).max(0);
        DimensionBound::Range(lower, upper)
    };

    let fiber_type = if p.is_zero() {
        FiberType::Schottky
    } else if edge_stabilizers.values().all(|t| *t == EdgeStabilizer::U1) {
        FiberType::GenericTorus
    } else {
        FiberType::Mixed
    };

    Ok(FiberDescriptor { point: p.clone(), edge_stabilizers, vertex_stabilizers, dimension, fiber_type })
}

/// A point of the unitary Schottky space `SU(2)^g / Ad`: one group element
/// per complement edge of a marking.
#[derive(Debug, Clone, PartialEq)]
pub struct SchottkyPoint {
    elements: Vec<GroupElement>,
}

impl SchottkyPoint {
    pub fn new(elements: Vec<GroupElement>) -> Self {
        SchottkyPoint { elements }
    }

    pub fn identity(genus: usize) -> Self {
        SchottkyPoint { elements: vec![GroupElement::IDENTITY; genus] }
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Simultaneous conjugation of every component.
    pub fn conjugate(&self, h: &GroupElement) -> SchottkyPoint {
        SchottkyPoint {
            elements: self.elements.iter().map(|b| *h * *b * h.inverse()).collect(),
        }
    }
}

/// Spanning-tree gauge fixing of the Schottky chart: tree edges carry the
/// identity and the i-th complement edge carries `b_i`. The residual gauge
/// freedom is exactly simultaneous conjugation.
pub fn schottky_embed(
    g: &Graph,
    m: &Marking,
    s: &SchottkyPoint,
) -> Result<EdgeAssignment, ModuliError> {
    m.validate(g)?;
    if s.len() != m.complement().len() {
        return Err(ModuliError::TupleLength { expected: m.complement().len(), got: s.len() });
    }
    let mut pairs: Vec<(EdgeId, GroupElement)> = m
        .tree()
        .iter()
        .map(|e| (e.clone(), GroupElement::IDENTITY))
        .collect();
    for (e, b) in m.complement().iter().zip(s.elements()) {
        pairs.push((e.clone(), *b));
    }
    Ok(EdgeAssignment::from_pairs(pairs))
}

/// Evaluates the state of `n` on the Schottky chart. Invariant under
/// simultaneous conjugation of the `b_i`, since a constant gauge
/// transformation fixes tree edges and conjugates complement edges.
pub fn evaluate_schottky(
    n: &SpinNetwork,
    m: &Marking,
    s: &SchottkyPoint,
) -> Result<Complex64, ModuliError> {
    let g = n.graph();
    let o = g.find_orientation()?;
    let t = schottky_embed(g, m, s)?;
    Ok(evaluate(n, &o, &t)?)
}

/// The constant gauge transformation by `h` maps the chart of `s` to the
/// chart of `s` conjugated by `h`; exposed for tests and the CLI.
pub fn schottky_gauge_check(
    g: &Graph,
    m: &Marking,
    s: &SchottkyPoint,
    h: &GroupElement,
) -> Result<(EdgeAssignment, EdgeAssignment), ModuliError> {
    let o = g.find_orientation()?;
    let embedded = schottky_embed(g, m, s)?;
    let gauged = gauge_act(g, &o, &GaugeAssignment::constant(g, *h), &embedded)?;
    let conjugated = schottky_embed(g, m, &s.conjugate(h))?;
    Ok((gauged, conjugated))
}
