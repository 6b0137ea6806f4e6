//! Monte Carlo Peter-Weyl: Fourier coefficients of spin-network states and
//! inner products of states on `SU(2)^E`.
//!
//! With the trace convention of [`super::network`], Schur orthogonality
//! pins the normalizations exactly:
//!
//! * `(1/dim) * E[f(x) rho_probe(x^-1)]` converges to `B / dim^2` when the
//!   probe equals the network's own coloring, and to 0 otherwise; that
//!   `1/dim^2` is the audited constant [`PETER_WEYL_SELF_NORMALIZATION`].
//! * `E[f1(x) conj(f2(x))]` converges to `||B||_F^2 / dim` for equal
//!   colorings and to 0 for distinct ones.

use ndarray::Array2;
use num_complex::Complex64;
use rand::Rng;

use super::network::{evaluate_tensor, network_tensor};
use super::{EdgeAssignment, Su2Error};
use crate::coloring::{Coloring, SpinNetwork};

/// Monte Carlo estimate of a Fourier coefficient of `f`.
#[derive(Debug, Clone)]
pub struct PeterWeylEstimate {
    /// Estimate of `(1/dim) Integral f(x) rho_probe(x)^-1 dx`.
    pub matrix: Array2<Complex64>,
    /// Dimension of the probe representation space.
    pub dim: usize,
    pub samples: usize,
    /// Frobenius norm of the entrywise standard errors.
    pub std_error: f64,
}

/// Estimates `(1/dim) Integral f(x) rho_probe(x)^-1 dx` by Haar sampling,
/// for `f` the state of `n`. For `probe` equal to the network's coloring
/// the limit is `B / dim^2`; for any other probe it is zero.
pub fn peter_weyl_coefficient<R: Rng + ?Sized>(
    n: &SpinNetwork,
    probe: &Coloring,
    samples: usize,
    rng: &mut R,
) -> Result<PeterWeylEstimate, Su2Error> {
    assert!(samples >= 1);
    let g = n.graph();
    probe.validate_total(g)?;
    let orientation = g.find_orientation()?;
    let nt = network_tensor(n, &orientation)?;

    let probe_dim: usize = probe.iter().map(|(_, c)| (c + 1) as usize).product();
    let mut mean: Array2<Complex64> = Array2::zeros((probe_dim, probe_dim));
    let mut sumsq: Array2<f64> = Array2::zeros((probe_dim, probe_dim));

    for _ in 0..samples {
        let x = EdgeAssignment::random(g, rng);
        let f = evaluate_tensor(&nt, &x)?;
        let rho_inv = probe_representation(g, probe, &x)?;
        for ((i, j), v) in rho_inv.indexed_iter() {
            let term = f * v;
            mean[(i, j)] += term;
            sumsq[(i, j)] += term.norm_sqr();
        }
    }

    let nf = samples as f64;
    mean.mapv_inplace(|z| z / nf);
    let mut var_sum = 0.0;
    for ((i, j), &s) in sumsq.indexed_iter() {
        let var = (s / nf - mean[(i, j)].norm_sqr()).max(0.0);
        var_sum += var / nf;
    }
    mean.mapv_inplace(|z| z / probe_dim as f64);
    Ok(PeterWeylEstimate {
        matrix: mean,
        dim: probe_dim,
        samples,
        std_error: var_sum.sqrt() / probe_dim as f64,
    })
}

fn probe_representation(
    g: &crate::topology::Graph,
    probe: &Coloring,
    x: &EdgeAssignment,
) -> Result<Array2<Complex64>, Su2Error> {
    use super::irrep::irrep_matrix;
    use super::network::kron;
    let mut out = Array2::eye(1);
    for e in g.edge_ids() {
        let c = probe.get(e).ok_or_else(|| Su2Error::MissingEdge(e.clone()))?;
        out = kron(&out, &irrep_matrix(c, &x.get(e)?.inverse()));
    }
    Ok(out)
}

/// Monte Carlo estimate of an `L^2` inner product of two states.
#[derive(Debug, Clone, Copy)]
pub struct InnerProductEstimate {
    pub value: Complex64,
    pub samples: usize,
    /// Standard error of the estimate.
    pub std_error: f64,
}

/// Estimates `Integral f1(x) conj(f2(x)) dx` over `SU(2)^E` by Haar
/// sampling. Distinct colorings are orthogonal; equal ones give
/// `||B||_F^2 / dim`.
pub fn state_inner_product<R: Rng + ?Sized>(
    n1: &SpinNetwork,
    n2: &SpinNetwork,
    samples: usize,
    rng: &mut R,
) -> Result<InnerProductEstimate, Su2Error> {
    assert!(samples >= 1);
    if n1.graph() != n2.graph() {
        return Err(Su2Error::GraphMismatch);
    }
    let g = n1.graph();
    let orientation = g.find_orientation()?;
    let nt1 = network_tensor(n1, &orientation)?;
    let nt2 = network_tensor(n2, &orientation)?;

    let mut sum = Complex64::ZERO;
    let mut sumsq = 0.0;
    for _ in 0..samples {
        let x = EdgeAssignment::random(g, rng);
        let term = evaluate_tensor(&nt1, &x)? * evaluate_tensor(&nt2, &x)?.conj();
        sum += term;
        sumsq += term.norm_sqr();
    }
    let nf = samples as f64;
    let value = sum / nf;
    let var = (sumsq / nf - value.norm_sqr()).max(0.0);
    Ok(InnerProductEstimate { value, samples, std_error: (var / nf).sqrt() })
}
