//! The U(1) analogue: Z_k flow colorings with signed conservation at every
//! vertex, the `k^g` count, the quotient-torus dimension, and character
//! states on `U(1)^E`.
//!
//! Labels live in `[0, k-1]` and conservation is orientation-signed modulo
//! k (outgoing counts positive, incoming negative; a loop cancels itself),
//! so admissible colorings form the Z_k cycle space of the graph and number
//! exactly `k^g`. Character evaluation lifts a coloring to an exact integer
//! cycle through the spanning-tree chart, which makes the state genuinely
//! invariant under the vertex gauge action on phases.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;
use thiserror::Error;

use crate::topology::{EdgeId, Graph, Marking, Orientation, TopologyError, VertexId};

#[derive(Debug, Error, PartialEq)]
pub enum AbelianError {
    #[error("coloring missing edge `{0}`")]
    MissingEdge(EdgeId),
    #[error("label {value} at edge `{edge}` exceeds level {k}")]
    LabelOutOfRange { edge: EdgeId, value: u32, k: u32 },
    #[error("coloring violates conservation at vertex `{0}`")]
    NotConserved(VertexId),
    #[error("coordinate tuple has {got} entries, marking needs {expected}")]
    TupleLength { expected: usize, got: usize },
    #[error("level must be positive")]
    ZeroLevel,
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("incidence rank {rank} does not match |V| - 1 = {expected}")]
    RankMismatch { rank: usize, expected: usize },
    #[error(transparent)]
    Topology(#[from] TopologyError),
}

/// A level-k U(1) coloring: one label in `[0, k-1]` per edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianColoring {
    values: BTreeMap<EdgeId, u32>,
    level: u32,
}

impl AbelianColoring {
    pub fn new<I, E>(level: u32, pairs: I) -> Result<Self, AbelianError>
    where
        I: IntoIterator<Item = (E, u32)>,
        E: Into<EdgeId>,
    {
        if level == 0 {
            return Err(AbelianError::ZeroLevel);
        }
        let values: BTreeMap<EdgeId, u32> = pairs.into_iter().map(|(e, v)| (e.into(), v)).collect();
        for (e, &v) in &values {
            if v >= level {
                return Err(AbelianError::LabelOutOfRange { edge: e.clone(), value: v, k: level });
            }
        }
        Ok(AbelianColoring { values, level })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn get(&self, e: &EdgeId) -> Result<u32, AbelianError> {
        self.values.get(e).copied().ok_or_else(|| AbelianError::MissingEdge(e.clone()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&EdgeId, u32)> {
        self.values.iter().map(|(e, &v)| (e, v))
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(|&v| v == 0)
    }

    pub fn validate_total(&self, g: &Graph) -> Result<(), AbelianError> {
        for e in g.edge_ids() {
            if !self.values.contains_key(e) {
                return Err(AbelianError::MissingEdge(e.clone()));
            }
        }
        Ok(())
    }
}

/// Signed sum of labels at `v` (outgoing positive, incoming negative), over
/// the integers. Loops cancel automatically.
fn signed_sum(
    g: &Graph,
    o: &Orientation,
    values: &BTreeMap<EdgeId, i64>,
    v: &VertexId,
) -> i64 {
    let mut sum = 0;
    for h in g.incident_half_edges(v) {
        let label = values[&h.edge];
        if h.side == o.tail_side(&h.edge) {
            sum += label;
        } else {
            sum -= label;
        }
    }
    sum
}

/// True when the orientation-signed label sum vanishes mod k at every
/// vertex.
pub fn abelian_is_admissible(
    g: &Graph,
    o: &Orientation,
    c: &AbelianColoring,
) -> Result<bool, AbelianError> {
    c.validate_total(g)?;
    let k = c.level() as i64;
    let values: BTreeMap<EdgeId, i64> = c.iter().map(|(e, v)| (e.clone(), v as i64)).collect();
    Ok(g.vertices().all(|v| signed_sum(g, o, &values, v).rem_euclid(k) == 0))
}

/// The exact integer lift of an admissible coloring determined by the
/// marking: complement edges keep their labels, tree edges solve signed
/// conservation over the integers (leaf elimination). The lift is the
/// unique integer cycle agreeing with the coloring on the complement.
pub fn exact_lift(
    g: &Graph,
    o: &Orientation,
    m: &Marking,
    c: &AbelianColoring,
) -> Result<BTreeMap<EdgeId, i64>, AbelianError> {
    c.validate_total(g)?;
    let mut values: BTreeMap<EdgeId, i64> = m
        .complement()
        .iter()
        .map(|e| Ok((e.clone(), c.get(e)? as i64)))
        .collect::<Result<_, AbelianError>>()?;

    let mut unsolved: Vec<EdgeId> = m.tree().iter().cloned().collect();
    while !unsolved.is_empty() {
        let mut progressed = false;
        for v in g.vertices() {
            let open: Vec<&EdgeId> = unsolved
                .iter()
                .filter(|e| {
                    g.incident_half_edges(v).iter().any(|h| &h.edge == *e)
                })
                .collect();
            if open.len() != 1 {
                continue;
            }
            let edge = open[0].clone();
            // conservation at v: sum of known signed labels + sign * x = 0
            let mut known = 0i64;
            let mut sign = 0i64;
            for h in g.incident_half_edges(v) {
                let s = if h.side == o.tail_side(&h.edge) { 1 } else { -1 };
                if h.edge == edge {
                    sign += s;
                } else {
                    known += s * values[&h.edge];
                }
            }
            debug_assert!(sign == 1 || sign == -1, "tree edge is not a loop");
            values.insert(edge.clone(), -known * sign);
            unsolved.retain(|e| *e != edge);
            progressed = true;
        }
        debug_assert!(progressed, "tree leaf elimination always progresses");
        if !progressed {
            break;
        }
    }
    Ok(values)
}

/// Reconstructs the unique admissible coloring whose complement-edge labels
/// are the given tuple: tree labels are the exact lift reduced into
/// `[0, k-1]`.
pub fn reconstruct_from_complement(
    g: &Graph,
    o: &Orientation,
    m: &Marking,
    k: u32,
    tuple: &[u32],
) -> Result<AbelianColoring, AbelianError> {
    if k == 0 {
        return Err(AbelianError::ZeroLevel);
    }
    if tuple.len() != m.complement().len() {
        return Err(AbelianError::TupleLength { expected: m.complement().len(), got: tuple.len() });
    }
    let mut values: BTreeMap<EdgeId, u32> = BTreeMap::new();
    for (e, &v) in m.complement().iter().zip(tuple) {
        if v >= k {
            return Err(AbelianError::LabelOutOfRange { edge: e.clone(), value: v, k });
        }
        values.insert(e.clone(), v);
    }
    for e in m.tree() {
        values.insert(e.clone(), 0);
    }
    let seed = AbelianColoring { values, level: k };
    let lift = exact_lift(g, o, m, &seed)?;
    let values = lift
        .into_iter()
        .map(|(e, v)| (e, v.rem_euclid(k as i64) as u32))
        .collect();
    Ok(AbelianColoring { values, level: k })
}

/// The labels of `c` on the `g` complement edges of the marking: a point of
/// `(Z_k)^g`, in bijection with admissible colorings.
pub fn order_k_coordinates(
    g: &Graph,
    o: &Orientation,
    m: &Marking,
    c: &AbelianColoring,
) -> Result<Vec<u32>, AbelianError> {
    if !abelian_is_admissible(g, o, c)? {
        let bad = g
            .vertices()
            .find(|v| {
                let values: BTreeMap<EdgeId, i64> =
                    c.iter().map(|(e, x)| (e.clone(), x as i64)).collect();
                signed_sum(g, o, &values, v).rem_euclid(c.level() as i64) != 0
            })
            .expect("some vertex fails");
        return Err(AbelianError::NotConserved(bad.clone()));
    }
    m.complement().iter().map(|e| c.get(e)).collect()
}

/// Enumerates all admissible level-k colorings by running over complement
/// tuples in lexicographic order; there are exactly `k^g` of them.
pub fn abelian_enumerate(
    g: &Graph,
    o: &Orientation,
    k: u32,
) -> Result<Vec<AbelianColoring>, AbelianError> {
    if k == 0 {
        return Err(AbelianError::ZeroLevel);
    }
    g.require_closed_trivalent()?;
    g.require_connected()?;
    let m = g.spanning_tree()?;
    let genus = m.complement().len();

    let mut out = Vec::with_capacity((k as usize).pow(genus as u32));
    let mut tuple = vec![0u32; genus];
    loop {
        out.push(reconstruct_from_complement(g, o, &m, k, &tuple)?);
        // odometer increment, last coordinate fastest
        let mut pos = genus;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] < k {
                break;
            }
            tuple[pos] = 0;
        }
    }
}

pub fn abelian_count(g: &Graph, o: &Orientation, k: u32) -> Result<usize, AbelianError> {
    Ok(abelian_enumerate(g, o, k)?.len())
}

/// `|E| - rank(signed incidence matrix over the integers)`, asserted equal
/// to `|V| - 1` in rank so the result is the genus. Loops contribute zero
/// columns.
pub fn quotient_torus_dimension(g: &Graph) -> Result<usize, AbelianError> {
    g.require_closed_trivalent()?;
    g.require_connected()?;

    let mut matrix: Vec<Vec<i64>> = Vec::new();
    for v in g.vertices() {
        let mut row = Vec::new();
        for (_, ends) in g.edges() {
            let mut entry = 0i64;
            if let (Some(a), Some(b)) = (ends[0].vertex(), ends[1].vertex()) {
                // side 0 outgoing, side 1 incoming; a loop cancels to zero
                if a == v {
                    entry += 1;
                }
                if b == v {
                    entry -= 1;
                }
            }
            row.push(entry);
        }
        matrix.push(row);
    }

    let rank = integer_rank(matrix);
    let expected = g.vertex_count() - 1;
    if rank != expected {
        return Err(AbelianError::RankMismatch { rank, expected });
    }
    Ok(g.edge_count() - rank)
}

/// Rank by fraction-free Gaussian elimination over i128.
fn integer_rank(mut m: Vec<Vec<i64>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut work: Vec<Vec<i128>> = m
        .drain(..)
        .map(|r| r.into_iter().map(i128::from).collect())
        .collect();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        let Some(pivot) = (row..rows).find(|&r| work[r][col] != 0) else {
            continue;
        };
        work.swap(row, pivot);
        let pivot_row = work[row].clone();
        for other in work.iter_mut().skip(row + 1) {
            if other[col] != 0 {
                let (a, b) = (pivot_row[col], other[col]);
                for (x, p) in other.iter_mut().zip(&pivot_row) {
                    *x = *x * a - p * b;
                }
                let g = row_gcd(other);
                if g > 1 {
                    other.iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        rank += 1;
        row += 1;
        if row == rows {
            break;
        }
    }
    rank
}

fn row_gcd(row: &[i128]) -> i128 {
    row.iter().fold(0i128, |acc, &x| gcd(acc, x.abs()))
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A point of `U(1)^E`: one angle per edge.
#[derive(Debug, Clone, PartialEq)]
pub struct PhasePoint {
    angles: BTreeMap<EdgeId, f64>,
}

impl PhasePoint {
    pub fn from_pairs<I, E>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (E, f64)>,
        E: Into<EdgeId>,
    {
        PhasePoint { angles: pairs.into_iter().map(|(e, a)| (e.into(), a)).collect() }
    }

    pub fn zeros(g: &Graph) -> Self {
        PhasePoint { angles: g.edge_ids().map(|e| (e.clone(), 0.0)).collect() }
    }

    pub fn random<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Self {
        PhasePoint {
            angles: g
                .edge_ids()
                .map(|e| (e.clone(), rng.random::<f64>() * TAU))
                .collect(),
        }
    }

    pub fn get(&self, e: &EdgeId) -> Result<f64, AbelianError> {
        self.angles.get(e).copied().ok_or_else(|| AbelianError::MissingEdge(e.clone()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&EdgeId, f64)> {
        self.angles.iter().map(|(e, &a)| (e, a))
    }

    /// The vertex gauge action on phases: `theta_e += phi(head) - phi(tail)`.
    pub fn gauge_shift(
        &self,
        g: &Graph,
        o: &Orientation,
        phi: &BTreeMap<VertexId, f64>,
    ) -> Result<PhasePoint, AbelianError> {
        let mut angles = BTreeMap::new();
        for (e, theta) in self.iter() {
            let head = o.head_vertex(g, e)?;
            let tail = o.tail_vertex(g, e)?;
            let shift = phi.get(head).copied().unwrap_or(0.0) - phi.get(tail).copied().unwrap_or(0.0);
            angles.insert(e.clone(), theta + shift);
        }
        Ok(PhasePoint { angles })
    }
}

/// Parses lines `<edge-id> = <radians>`.
pub fn parse_phase_point(text: &str) -> Result<PhasePoint, AbelianError> {
    let mut angles = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let Some((lhs, rhs)) = body.split_once('=') else {
            return Err(AbelianError::Parse { line, message: "expected `<edge-id> = <radians>`".into() });
        };
        let angle: f64 = rhs
            .trim()
            .parse()
            .map_err(|e| AbelianError::Parse { line, message: format!("bad angle: {e}") })?;
        angles.insert(EdgeId::new(lhs.trim()), angle);
    }
    Ok(PhasePoint { angles })
}

/// Evaluates the character state `prod_e exp(i n_e theta_e)`, where `n` is
/// the exact integer lift of `c` through the spanning-tree chart. Because
/// the lift conserves exactly, the value is invariant under the vertex
/// gauge action on phases.
pub fn abelian_evaluate(
    g: &Graph,
    o: &Orientation,
    c: &AbelianColoring,
    p: &PhasePoint,
) -> Result<Complex64, AbelianError> {
    let m = g.spanning_tree()?;
    let lift = exact_lift(g, o, &m, c)?;
    let mut phase = 0.0;
    for (e, n) in &lift {
        phase += *n as f64 * p.get(e)?;
    }
    Ok(Complex64::from_polar(1.0, phase))
}
