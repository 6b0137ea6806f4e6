//! Wigner 3j symbols and the intertwiner tensor.

use ndarray::Array3;
use num_complex::Complex64;

use super::irrep::factorial;
use crate::coloring::VertexTriple;

/// Wigner 3j symbol by the Racah sum formula, with all angular momenta
/// doubled so the arguments stay integral: `c = 2j`, `tm = 2m`.
/// Returns 0 whenever a selection rule fails.
pub fn wigner_3j(c1: u32, c2: u32, c3: u32, tm1: i64, tm2: i64, tm3: i64) -> f64 {
    let (c1, c2, c3) = (c1 as i64, c2 as i64, c3 as i64);
    if tm1 + tm2 + tm3 != 0
        || tm1.abs() > c1
        || tm2.abs() > c2
        || tm3.abs() > c3
        || (c1 + tm1) % 2 != 0
        || (c2 + tm2) % 2 != 0
        || (c3 + tm3) % 2 != 0
    {
        return 0.0;
    }
    if !VertexTriple([c1 as u32, c2 as u32, c3 as u32]).is_admissible() {
        return 0.0;
    }

    // doubled factorial arguments are all even and nonnegative here
    let f = |twice: i64| -> f64 {
        debug_assert!(twice >= 0 && twice % 2 == 0);
        factorial((twice / 2) as u32)
    };

    let delta = f(c1 + c2 - c3) * f(c1 - c2 + c3) * f(-c1 + c2 + c3)
        / f(c1 + c2 + c3 + 2);

    let prefactor = (delta
        * f(c1 + tm1)
        * f(c1 - tm1)
        * f(c2 + tm2)
        * f(c2 - tm2)
        * f(c3 + tm3)
        * f(c3 - tm3))
    .sqrt();

    let k_min = 0i64
        .max((c2 - c3 - tm1) / 2)
        .max((c1 - c3 + tm2) / 2);
    let k_max = ((c1 + c2 - c3) / 2)
        .min((c1 - tm1) / 2)
        .min((c2 + tm2) / 2);

    let mut sum = 0.0;
    for k in k_min..=k_max {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let denom = factorial(k as u32)
            * f(c1 + c2 - c3 - 2 * k)
            * f(c1 - tm1 - 2 * k)
            * f(c2 + tm2 - 2 * k)
            * f(c3 - c2 + tm1 + 2 * k)
            * f(c3 - c1 - tm2 + 2 * k);
        sum += sign / denom;
    }

    let exponent = (c1 - c2 - tm3) / 2;
    let sign = if exponent.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    sign * prefactor * sum
}

/// The unique (up to phase) invariant unit tensor in the triple product of
/// the color-`(c1, c2, c3)` irreps: the Wigner 3j tensor in the
/// descending-weight basis, phase-fixed so the first nonzero entry in
/// lexicographic slot order is real positive. The zero tensor when the
/// Clebsch-Gordan conditions fail.
pub fn intertwiner(c1: u32, c2: u32, c3: u32) -> Array3<Complex64> {
    let shape = ((c1 + 1) as usize, (c2 + 1) as usize, (c3 + 1) as usize);
    let mut out = Array3::zeros(shape);
    if !VertexTriple([c1, c2, c3]).is_admissible() {
        return out;
    }
    for i1 in 0..shape.0 {
        let tm1 = c1 as i64 - 2 * i1 as i64;
        for i2 in 0..shape.1 {
            let tm2 = c2 as i64 - 2 * i2 as i64;
            for i3 in 0..shape.2 {
                let tm3 = c3 as i64 - 2 * i3 as i64;
                let value = wigner_3j(c1, c2, c3, tm1, tm2, tm3);
                out[(i1, i2, i3)] = Complex64::new(value, 0.0);
            }
        }
    }

    // unit norm, first nonzero entry real positive
    let norm = out.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    debug_assert!(norm > 0.0, "admissible triple yields a nonzero 3j tensor");
    let first = out
        .iter()
        .find(|z| z.norm() > 1e-14)
        .copied()
        .unwrap_or(Complex64::ONE);
    let phase = first / first.norm();
    out.mapv_into(|z| z / (phase * norm))
}
