//! Numerical SU(2) representation theory: group elements as unit
//! quaternions, Haar sampling, irreducible representation matrices,
//! intertwiner tensors, the network tensor, state evaluation, the vertex
//! gauge action, and Monte Carlo Peter-Weyl checks.
//!
//! Conventions, fixed once and verified by the test suite:
//!
//! * A quaternion `w + xi + yj + zk` maps to the SU(2) matrix
//!   `[[w + iz, y - ix], [-y - ix, w - iz]]`, so the `(w, z)` circle maps to
//!   `diag(e^{i t}, e^{-i t})`.
//! * Irrep matrices act on degree-c homogeneous polynomials in the
//!   normalized monomial basis, ordered by descending weight; the color-c
//!   matrix of a `(w, z)`-circle element is `diag(e^{ict}, ..., e^{-ict})`.
//! * Intertwiners are Wigner 3j tensors (Condon-Shortley phases), rescaled
//!   to unit Frobenius norm with the first nonzero entry in lexicographic
//!   slot order real positive.
//! * Each oriented edge contributes the kernel `rho(t)^T eps` between the
//!   tail slot and the head slot, i.e. the self-duality form is applied at
//!   the head. With these choices the state is exactly gauge invariant.
//! * Changing the orientation of an edge of color `c` while transporting
//!   its holonomy (`t -> t^-1`, see [`reorient_assignment`]) multiplies the
//!   state by `(-1)^c`; its magnitude is orientation-independent.

mod fourier;
mod irrep;
mod network;
mod wigner;

pub use fourier::{peter_weyl_coefficient, state_inner_product, InnerProductEstimate, PeterWeylEstimate};
pub use irrep::{epsilon_tensor, irrep_matrix, su2_matrix};
pub use network::{
    edge_representation, evaluate, evaluate_tensor, gauge_act, network_endomorphism,
    network_tensor, reorient_assignment, trace_pairing, EdgePairing, NetworkTensor,
};
pub use wigner::{intertwiner, wigner_3j};

use std::collections::BTreeMap;
use std::ops::Mul;

use rand::Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

use crate::coloring::ColoringError;
use crate::topology::{EdgeId, Graph, TopologyError, VertexId};

#[derive(Debug, Error)]
pub enum Su2Error {
    #[error("assignment missing edge `{0}`")]
    MissingEdge(EdgeId),
    #[error("assignment missing vertex `{0}`")]
    MissingVertex(VertexId),
    #[error("assignment line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("quaternion has near-zero norm, cannot normalize")]
    ZeroQuaternion,
    #[error("networks live on different graphs")]
    GraphMismatch,
    #[error("internal dimension mismatch: {0}")]
    Dimension(String),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Topology(#[from] TopologyError),
}

/// An element of SU(2) as a unit quaternion `w + xi + yj + zk`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement { w: 1.0, x: 0.0, y: 0.0, z: 0.0 };
    pub const MINUS_IDENTITY: GroupElement = GroupElement { w: -1.0, x: 0.0, y: 0.0, z: 0.0 };

    /// Normalizes the components onto the unit sphere.
    pub fn new(w: f64, x: f64, y: f64, z: f64) -> Result<Self, Su2Error> {
        let norm = (w * w + x * x + y * y + z * z).sqrt();
        if norm < 1e-12 {
            return Err(Su2Error::ZeroQuaternion);
        }
        Ok(GroupElement { w: w / norm, x: x / norm, y: y / norm, z: z / norm })
    }

    pub fn norm(&self) -> f64 {
        (self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    /// Group inverse; the conjugate quaternion.
    pub fn inverse(&self) -> GroupElement {
        GroupElement { w: self.w, x: -self.x, y: -self.y, z: -self.z }
    }

    /// Trace of the corresponding SU(2) matrix, `2w`.
    pub fn trace(&self) -> f64 {
        2.0 * self.w
    }

    pub fn approx_eq(&self, other: &GroupElement, tol: f64) -> bool {
        (self.w - other.w).abs() <= tol
            && (self.x - other.x).abs() <= tol
            && (self.y - other.y).abs() <= tol
            && (self.z - other.z).abs() <= tol
    }
}

impl Mul for GroupElement {
    type Output = GroupElement;

    /// Hamilton product.
    fn mul(self, q: GroupElement) -> GroupElement {
        GroupElement {
            w: self.w * q.w - self.x * q.x - self.y * q.y - self.z * q.z,
            x: self.w * q.x + self.x * q.w + self.y * q.z - self.z * q.y,
            y: self.w * q.y - self.x * q.z + self.y * q.w + self.z * q.x,
            z: self.w * q.z + self.x * q.y - self.y * q.x + self.z * q.w,
        }
    }
}

/// Draws a Haar-uniform element: four independent standard normals,
/// normalized. Resamples in the (measure-zero) degenerate case.
pub fn haar_sample<R: Rng + ?Sized>(rng: &mut R) -> GroupElement {
    loop {
        let w: f64 = rng.sample(StandardNormal);
        let x: f64 = rng.sample(StandardNormal);
        let y: f64 = rng.sample(StandardNormal);
        let z: f64 = rng.sample(StandardNormal);
        if let Ok(q) = GroupElement::new(w, x, y, z) {
            return q;
        }
    }
}

/// A point of `SU(2)^E`: one group element per edge.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeAssignment {
    map: BTreeMap<EdgeId, GroupElement>,
}

impl EdgeAssignment {
    pub fn from_pairs<I, E>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (E, GroupElement)>,
        E: Into<EdgeId>,
    {
        EdgeAssignment { map: pairs.into_iter().map(|(e, q)| (e.into(), q)).collect() }
    }

    pub fn identity(g: &Graph) -> Self {
        EdgeAssignment {
            map: g.edge_ids().map(|e| (e.clone(), GroupElement::IDENTITY)).collect(),
        }
    }

    pub fn random<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Self {
        EdgeAssignment {
            map: g.edge_ids().map(|e| (e.clone(), haar_sample(rng))).collect(),
        }
    }

    pub fn get(&self, e: &EdgeId) -> Result<GroupElement, Su2Error> {
        self.map.get(e).copied().ok_or_else(|| Su2Error::MissingEdge(e.clone()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&EdgeId, GroupElement)> {
        self.map.iter().map(|(e, &q)| (e, q))
    }

    pub fn validate_total(&self, g: &Graph) -> Result<(), Su2Error> {
        for e in g.edge_ids() {
            if !self.map.contains_key(e) {
                return Err(Su2Error::MissingEdge(e.clone()));
            }
        }
        Ok(())
    }
}

/// A point of `SU(2)^V`: one group element per vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugeAssignment {
    map: BTreeMap<VertexId, GroupElement>,
}

impl GaugeAssignment {
    pub fn from_pairs<I, V>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (V, GroupElement)>,
        V: Into<VertexId>,
    {
        GaugeAssignment { map: pairs.into_iter().map(|(v, q)| (v.into(), q)).collect() }
    }

    pub fn identity(g: &Graph) -> Self {
        GaugeAssignment {
            map: g.vertices().map(|v| (v.clone(), GroupElement::IDENTITY)).collect(),
        }
    }

    /// The same element at every vertex.
    pub fn constant(g: &Graph, q: GroupElement) -> Self {
        GaugeAssignment { map: g.vertices().map(|v| (v.clone(), q)).collect() }
    }

    pub fn random<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Self {
        GaugeAssignment {
            map: g.vertices().map(|v| (v.clone(), haar_sample(rng))).collect(),
        }
    }

    pub fn get(&self, v: &VertexId) -> Result<GroupElement, Su2Error> {
        self.map.get(v).copied().ok_or_else(|| Su2Error::MissingVertex(v.clone()))
    }

    /// Pointwise product, `(self * other)(v) = self(v) * other(v)`.
    pub fn compose(&self, other: &GaugeAssignment) -> GaugeAssignment {
        GaugeAssignment {
            map: self
                .map
                .iter()
                .filter_map(|(v, &a)| other.map.get(v).map(|&b| (v.clone(), a * b)))
                .collect(),
        }
    }
}

/// Parses lines `<edge-id> = w x y z`; each quadruple is normalized.
pub fn parse_edge_assignment(text: &str) -> Result<EdgeAssignment, Su2Error> {
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let Some((lhs, rhs)) = body.split_once('=') else {
            return Err(Su2Error::Parse { line, message: "expected `<edge-id> = w x y z`".into() });
        };
        let comps: Vec<f64> = rhs
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|e| Su2Error::Parse { line, message: format!("bad component: {e}") })?;
        if comps.len() != 4 {
            return Err(Su2Error::Parse {
                line,
                message: format!("expected 4 components, got {}", comps.len()),
            });
        }
        let q = GroupElement::new(comps[0], comps[1], comps[2], comps[3])
            .map_err(|_| Su2Error::Parse { line, message: "zero quaternion".into() })?;
        map.insert(EdgeId::new(lhs.trim()), q);
    }
    Ok(EdgeAssignment { map })
}

#[cfg(test)]
mod tests;
