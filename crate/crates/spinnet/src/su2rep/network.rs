//! The network tensor `B` and state evaluation by tensor contraction.
//!
//! Every vertex carries the intertwiner of its three incident colors, slots
//! in canonical (edge id, side) order. An oriented edge of color `c`
//! evaluated at `t` contributes the kernel `K = rho_c(t)^T eps_c` between
//! its tail slot and its head slot; transforming the tail slot of the tail
//! vertex's intertwiner by `K` reduces evaluation to a plain
//! delta-contraction of matching half-edge slots. Invariance of the
//! intertwiners and of `eps` makes the resulting state exactly invariant
//! under the vertex gauge action `t_e -> g_head t_e g_tail^-1`.

use std::collections::BTreeMap;

use ndarray::{Array2, Array3, ArrayD, IxDyn};
use num_complex::Complex64;

use super::irrep::{epsilon_tensor, irrep_matrix};
use super::wigner::intertwiner;
use super::{EdgeAssignment, GaugeAssignment, Su2Error};
use crate::coloring::SpinNetwork;
use crate::topology::{EdgeId, Graph, HalfEdge, Orientation, VertexId};

/// Contraction endpoints of one edge: the (vertex, slot) positions of its
/// tail and head half-edges. The duality form `eps` is applied at the head.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgePairing {
    pub edge: EdgeId,
    pub color: u32,
    pub tail: (VertexId, usize),
    pub head: (VertexId, usize),
}

/// The tensor `B` of a spin network: one intertwiner per vertex plus the
/// pairing data that tells which slots each edge contracts.
#[derive(Debug, Clone)]
pub struct NetworkTensor {
    network: SpinNetwork,
    orientation: Orientation,
    intertwiners: BTreeMap<VertexId, Array3<Complex64>>,
    pairings: Vec<EdgePairing>,
}

impl NetworkTensor {
    pub fn network(&self) -> &SpinNetwork {
        &self.network
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    pub fn intertwiner_at(&self, v: &VertexId) -> Option<&Array3<Complex64>> {
        self.intertwiners.get(v)
    }

    pub fn pairings(&self) -> &[EdgePairing] {
        &self.pairings
    }
}

/// Position of a half-edge in its vertex's canonical slot list.
fn slot_index(g: &Graph, v: &VertexId, h: &HalfEdge) -> Result<usize, Su2Error> {
    g.incident_half_edges(v)
        .iter()
        .position(|s| s == h)
        .ok_or_else(|| Su2Error::Dimension(format!("half-edge {h:?} not at vertex {v}")))
}

/// Builds the network tensor of an admissible spin network under an
/// orientation in which every vertex has edges in and out.
pub fn network_tensor(n: &SpinNetwork, o: &Orientation) -> Result<NetworkTensor, Su2Error> {
    let g = n.graph();
    g.require_closed_trivalent()?;

    let mut intertwiners = BTreeMap::new();
    for v in g.vertices() {
        let slots = g.incident_half_edges(v);
        let colors: Vec<u32> = slots.iter().map(|h| n.color(&h.edge)).collect();
        intertwiners.insert(v.clone(), intertwiner(colors[0], colors[1], colors[2]));
    }

    let mut pairings = Vec::new();
    for e in g.edge_ids() {
        let tail_half = o.tail(e);
        let head_half = o.head(e);
        let tail_vertex = o.tail_vertex(g, e)?.clone();
        let head_vertex = o.head_vertex(g, e)?.clone();
        pairings.push(EdgePairing {
            edge: e.clone(),
            color: n.color(e),
            tail: (tail_vertex.clone(), slot_index(g, &tail_vertex, &tail_half)?),
            head: (head_vertex.clone(), slot_index(g, &head_vertex, &head_half)?),
        });
    }

    Ok(NetworkTensor {
        network: n.clone(),
        orientation: o.clone(),
        intertwiners,
        pairings,
    })
}

/// `out[.., i, ..] = sum_a m[a, i] * t[.., a, ..]` along the given slot.
fn transform_slot(t: &Array3<Complex64>, m: &Array2<Complex64>, slot: usize) -> Array3<Complex64> {
    let dims = t.dim();
    let mut out = Array3::zeros(dims);
    let d = [dims.0, dims.1, dims.2][slot];
    for i0 in 0..dims.0 {
        for i1 in 0..dims.1 {
            for i2 in 0..dims.2 {
                let mut idx = [i0, i1, i2];
                let target = idx[slot];
                let mut sum = Complex64::ZERO;
                for a in 0..d {
                    idx[slot] = a;
                    sum += m[(a, target)] * t[(idx[0], idx[1], idx[2])];
                }
                out[(i0, i1, i2)] = sum;
            }
        }
    }
    out
}

/// A dense tensor with one axis per still-open half-edge slot.
struct Frontier {
    data: ArrayD<Complex64>,
    labels: Vec<HalfEdge>,
}

impl Frontier {
    fn scalar() -> Frontier {
        Frontier {
            data: ArrayD::from_elem(IxDyn(&[]), Complex64::ONE),
            labels: Vec::new(),
        }
    }

    /// Outer product with a vertex tensor labeled by its three half-edges.
    fn absorb(&mut self, t: &Array3<Complex64>, slots: Vec<HalfEdge>) {
        let mut shape: Vec<usize> = self.data.shape().to_vec();
        let tdims = t.dim();
        shape.extend([tdims.0, tdims.1, tdims.2]);
        let values: Vec<Complex64> = self
            .data
            .iter()
            .flat_map(|&a| t.iter().map(move |&b| a * b))
            .collect();
        self.data = ArrayD::from_shape_vec(IxDyn(&shape), values).expect("outer product shape");
        self.labels.extend(slots);
    }

    /// Sums the diagonal over the two axes carrying the given labels.
    fn contract_pair(&mut self, a: &HalfEdge, b: &HalfEdge) -> Result<(), Su2Error> {
        let ia = self
            .labels
            .iter()
            .position(|l| l == a)
            .ok_or_else(|| Su2Error::Dimension(format!("missing slot {a:?}")))?;
        let ib = self
            .labels
            .iter()
            .position(|l| l == b)
            .ok_or_else(|| Su2Error::Dimension(format!("missing slot {b:?}")))?;
        let shape = self.data.shape().to_vec();
        if shape[ia] != shape[ib] {
            return Err(Su2Error::Dimension(format!(
                "slot dimensions differ: {} vs {}",
                shape[ia], shape[ib]
            )));
        }

        // move the two axes to the back, then sum the diagonal
        let rank = shape.len();
        let mut order: Vec<usize> = (0..rank).filter(|&i| i != ia && i != ib).collect();
        order.extend([ia, ib]);
        let moved = self.data.clone().permuted_axes(IxDyn(&order));
        let moved = moved.as_standard_layout().to_owned();

        let d = shape[ia];
        let rest: usize = moved.shape()[..rank - 2].iter().product();
        let flat = moved.into_shape_with_order(IxDyn(&[rest, d, d])).expect("flatten");
        let mut out = Vec::with_capacity(rest);
        for r in 0..rest {
            let mut sum = Complex64::ZERO;
            for i in 0..d {
                sum += flat[[r, i, i]];
            }
            out.push(sum);
        }
        let new_shape: Vec<usize> = (0..rank).filter(|&i| i != ia && i != ib).map(|i| shape[i]).collect();
        self.data = ArrayD::from_shape_vec(IxDyn(&new_shape), out).expect("contracted shape");
        let (lo, hi) = (ia.min(ib), ia.max(ib));
        self.labels.remove(hi);
        self.labels.remove(lo);
        Ok(())
    }

    fn value(&self) -> Result<Complex64, Su2Error> {
        if !self.labels.is_empty() {
            return Err(Su2Error::Dimension(format!(
                "{} slots left uncontracted",
                self.labels.len()
            )));
        }
        Ok(self.data[IxDyn(&[])])
    }
}

/// Evaluates the spin-network state `f(t)`: the full contraction of the
/// vertex intertwiners against the edge kernels `rho(t_e)^T eps`.
pub fn evaluate(n: &SpinNetwork, o: &Orientation, t: &EdgeAssignment) -> Result<Complex64, Su2Error> {
    let nt = network_tensor(n, o)?;
    evaluate_tensor(&nt, t)
}

/// [`evaluate`] against a prebuilt [`NetworkTensor`].
pub fn evaluate_tensor(nt: &NetworkTensor, t: &EdgeAssignment) -> Result<Complex64, Su2Error> {
    let g = nt.network.graph();
    t.validate_total(g)?;

    // absorb each edge kernel into the tail slot of its tail vertex
    let mut tensors: BTreeMap<&VertexId, Array3<Complex64>> = nt
        .intertwiners
        .iter()
        .map(|(v, t)| (v, t.clone()))
        .collect();
    for p in &nt.pairings {
        let u = t.get(&p.edge)?;
        let kernel = irrep_matrix(p.color, &u).t().dot(&epsilon_tensor(p.color));
        let (ref tail_vertex, tail_slot) = p.tail;
        let tv = tensors
            .get_mut(&tail_vertex)
            .ok_or_else(|| Su2Error::Dimension(format!("no tensor at {tail_vertex}")))?;
        *tv = transform_slot(tv, &kernel, tail_slot);
    }

    // contract vertices greedily, preferring those that close open slots
    let mut frontier = Frontier::scalar();
    let mut remaining: Vec<&VertexId> = tensors.keys().copied().collect();
    while !remaining.is_empty() {
        let open_edges: Vec<&EdgeId> = frontier.labels.iter().map(|h| &h.edge).collect();
        let (pick, _) = remaining
            .iter()
            .enumerate()
            .max_by_key(|(i, v)| {
                let shared = g
                    .incident_half_edges(v)
                    .iter()
                    .filter(|h| open_edges.contains(&&h.edge))
                    .count();
                // tie-break toward the front of the sorted list
                (shared, usize::MAX - i)
            })
            .expect("nonempty");
        let v = remaining.remove(pick);

        let slots = g.incident_half_edges(v);
        frontier.absorb(&tensors[v], slots);

        // close every edge whose two slots are now both open
        loop {
            let mut closed = None;
            for (i, a) in frontier.labels.iter().enumerate() {
                if let Some(b) = frontier.labels[i + 1..]
                    .iter()
                    .find(|b| b.edge == a.edge)
                {
                    closed = Some((a.clone(), b.clone()));
                    break;
                }
            }
            match closed {
                Some((a, b)) => frontier.contract_pair(&a, &b)?,
                None => break,
            }
        }
    }
    frontier.value()
}

/// Transports an edge assignment from one orientation to another by
/// inverting the holonomy of every edge whose direction differs. Under this
/// transport the state is orientation-independent up to sign: reversing an
/// edge of color `c` multiplies `f` by `(-1)^c`.
pub fn reorient_assignment(t: &EdgeAssignment, from: &Orientation, to: &Orientation) -> EdgeAssignment {
    EdgeAssignment::from_pairs(t.iter().map(|(e, u)| {
        let q = if from.tail_side(e) == to.tail_side(e) { u } else { u.inverse() };
        (e.clone(), q)
    }))
}

/// The vertex gauge action on edge assignments:
/// `t_e -> g(head) * t_e * g(tail)^-1`; a loop uses the same vertex element
/// on both sides. Acting by a pointwise product of gauges composes.
pub fn gauge_act(
    g: &Graph,
    o: &Orientation,
    gauge: &GaugeAssignment,
    t: &EdgeAssignment,
) -> Result<EdgeAssignment, Su2Error> {
    let mut out = Vec::new();
    for (e, u) in t.iter() {
        let head = gauge.get(o.head_vertex(g, e)?)?;
        let tail = gauge.get(o.tail_vertex(g, e)?)?;
        out.push((e.clone(), head * u * tail.inverse()));
    }
    Ok(EdgeAssignment::from_pairs(out))
}

/// Materializes `B` as an endomorphism of the edge-representation space:
/// rows indexed by the tail slots (edge order), columns by the
/// eps-transformed head slots, so that `f(t) = Tr[B rho(t)]` with
/// `rho(t)[col, row] = prod_e rho_c(t_e)[m_e, a_e]`. Dense in
/// `prod_e (c_e + 1)^2`; intended for small networks.
pub fn network_endomorphism(nt: &NetworkTensor) -> Result<Array2<Complex64>, Su2Error> {
    let g = nt.network.graph();

    // transform every head slot by eps
    let mut tensors: BTreeMap<&VertexId, Array3<Complex64>> = nt
        .intertwiners
        .iter()
        .map(|(v, t)| (v, t.clone()))
        .collect();
    for p in &nt.pairings {
        let eps = epsilon_tensor(p.color);
        let (ref head_vertex, head_slot) = p.head;
        let tv = tensors
            .get_mut(&head_vertex)
            .ok_or_else(|| Su2Error::Dimension(format!("no tensor at {head_vertex}")))?;
        // out[m] = sum_b eps[m, b] t[b]: left-multiplication needs eps^T here
        *tv = transform_slot(tv, &eps.t().to_owned(), head_slot);
    }

    // outer product of all vertex tensors, tracking labels
    let mut frontier = Frontier::scalar();
    for (v, t) in &tensors {
        frontier.absorb(t, g.incident_half_edges(v));
    }

    // permute axes to (tails in edge order, heads in edge order)
    let mut order = Vec::new();
    let mut dim = 1usize;
    for p in &nt.pairings {
        let tail = nt.orientation.tail(&p.edge);
        order.push(
            frontier
                .labels
                .iter()
                .position(|l| *l == tail)
                .ok_or_else(|| Su2Error::Dimension("missing tail label".into()))?,
        );
        dim *= (p.color + 1) as usize;
    }
    for p in &nt.pairings {
        let head = nt.orientation.head(&p.edge);
        order.push(
            frontier
                .labels
                .iter()
                .position(|l| *l == head)
                .ok_or_else(|| Su2Error::Dimension("missing head label".into()))?,
        );
    }
    let arranged = frontier
        .data
        .permuted_axes(IxDyn(&order))
        .as_standard_layout()
        .to_owned();
    let matrix = arranged
        .into_shape_with_order(IxDyn(&[dim, dim]))
        .map_err(|e| Su2Error::Dimension(e.to_string()))?;
    matrix
        .into_dimensionality()
        .map_err(|e| Su2Error::Dimension(e.to_string()))
}

/// Kronecker product over edges (in id order) of the per-edge irrep
/// matrices at `t`; the representation `rho(t)` matching
/// [`network_endomorphism`].
pub fn edge_representation(
    n: &SpinNetwork,
    t: &EdgeAssignment,
    invert: bool,
) -> Result<Array2<Complex64>, Su2Error> {
    let mut out = Array2::eye(1);
    for e in n.graph().edge_ids() {
        let mut u = t.get(e)?;
        if invert {
            u = u.inverse();
        }
        out = kron(&out, &irrep_matrix(n.color(e), &u));
    }
    Ok(out)
}

pub(crate) fn kron(a: &Array2<Complex64>, b: &Array2<Complex64>) -> Array2<Complex64> {
    let (ra, ca) = a.dim();
    let (rb, cb) = b.dim();
    let mut out = Array2::zeros((ra * rb, ca * cb));
    for i in 0..ra {
        for j in 0..ca {
            for k in 0..rb {
                for l in 0..cb {
                    out[(i * rb + k, j * cb + l)] = a[(i, j)] * b[(k, l)];
                }
            }
        }
    }
    out
}

/// The trace pairing `Tr[B rho]` in the index convention of
/// [`network_endomorphism`]: `sum_{a, m} B[a, m] rho[m, a]`.
pub fn trace_pairing(b: &Array2<Complex64>, rho: &Array2<Complex64>) -> Complex64 {
    let mut sum = Complex64::ZERO;
    for a in 0..b.nrows() {
        for m in 0..b.ncols() {
            sum += b[(a, m)] * rho[(m, a)];
        }
    }
    sum
}
