//! Irreducible representation matrices and the self-duality form.

use ndarray::Array2;
use num_complex::Complex64;

use super::GroupElement;

/// `n!` as a float; exact for the small arguments used here.
pub(crate) fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

pub(crate) fn binomial(n: u32, k: u32) -> f64 {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// The defining 2x2 matrix `[[w + iz, y - ix], [-y - ix, w - iz]]`.
pub fn su2_matrix(u: &GroupElement) -> Array2<Complex64> {
    let GroupElement { w, x, y, z } = *u;
    Array2::from_shape_vec(
        (2, 2),
        vec![
            Complex64::new(w, z),
            Complex64::new(y, -x),
            Complex64::new(-y, -x),
            Complex64::new(w, -z),
        ],
    )
    .expect("2x2 shape")
}

/// The color-c irrep matrix, acting on degree-c homogeneous polynomials in
/// the normalized monomial basis ordered by descending weight. Color 0 is
/// the 1x1 identity and color 1 the defining matrix of `u`.
pub fn irrep_matrix(c: u32, u: &GroupElement) -> Array2<Complex64> {
    if c == 0 {
        return Array2::eye(1);
    }
    let m2 = su2_matrix(u);
    if c == 1 {
        return m2;
    }
    let (a, b) = (m2[(0, 0)], m2[(0, 1)]);
    let (cc, d) = (m2[(1, 0)], m2[(1, 1)]);
    let n = c;
    let dim = (n + 1) as usize;
    let mut out = Array2::zeros((dim, dim));
    // basis index i corresponds to X-power p = n - i
    for i in 0..dim {
        let p = n - i as u32;
        for i_new in 0..dim {
            let p_new = n - i_new as u32;
            let scale = (factorial(p_new) * factorial(n - p_new)).sqrt()
                / (factorial(p) * factorial(n - p)).sqrt();
            let mut sum = Complex64::ZERO;
            // (aX + cY)^p (bX + dY)^(n-p), coefficient of X^p_new Y^(n-p_new)
            let r_min = p_new.saturating_sub(n - p);
            let r_max = p.min(p_new);
            for r in r_min..=r_max {
                let s = p_new - r;
                sum += binomial(p, r)
                    * binomial(n - p, s)
                    * a.powu(r)
                    * cc.powu(p - r)
                    * b.powu(s)
                    * d.powu(n - p - s);
            }
            out[(i_new, i)] = scale * sum;
        }
    }
    out
}

/// The invariant bilinear form on the color-c space: antidiagonal entries
/// `(-1)^i` in the descending-weight basis. Satisfies
/// `rho(g)^T eps rho(g) = eps` and `eps^2 = (-1)^c I`.
pub fn epsilon_tensor(c: u32) -> Array2<Complex64> {
    let dim = (c + 1) as usize;
    let mut out = Array2::zeros((dim, dim));
    for i in 0..dim {
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        out[(i, dim - 1 - i)] = Complex64::new(sign, 0.0);
    }
    out
}
