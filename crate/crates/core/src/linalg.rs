//! Small dense linear-algebra helpers not covered by `nalgebra` in `no_std`.

use nalgebra::{DMatrix, RealField};
use num_complex::Complex64;

pub fn hermiticity_deviation(m: &DMatrix<Complex64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// True when every eigenvalue of the Hermitian matrix `m` exceeds `floor`.
///
/// Decided by a Cholesky factorization of `m - floor·I`, which costs a sixth
/// of a dense eigensolve. The factorization is done here because the
/// complex `nalgebra` Cholesky takes complex square roots of negative pivots
/// instead of failing.
pub fn is_positive_above(m: &DMatrix<Complex64>, floor: f64) -> bool {
    let n = m.nrows();
    let mut l = m.clone();
    for j in 0..n {
        let mut pivot = l[(j, j)].re - floor;
        for k in 0..j {
            pivot -= l[(j, k)].norm_sqr();
        }
        if !(pivot > 0.0) {
            return false;
        }
        let pivot = libm::sqrt(pivot);
        l[(j, j)] = Complex64::new(pivot, 0.0);
        for i in (j + 1)..n {
            let mut s = l[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = s / pivot;
        }
    }
    true
}

pub fn hermitian_eigenvalues(m: &DMatrix<Complex64>) -> alloc::vec::Vec<f64> {
    let mut ev: alloc::vec::Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

pub fn min_hermitian_eigenvalue(m: &DMatrix<Complex64>) -> f64 {
    m.clone().symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min)
}

/// Gershgorin bound on the spread `λ_max - λ_min` of a Hermitian matrix.
pub fn gershgorin_spread(m: &DMatrix<Complex64>) -> f64 {
    let n = m.nrows();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let radius: f64 = (0..n).filter(|&j| j != i).map(|j| m[(i, j)].norm()).sum();
        let center = m[(i, i)].re;
        lo = lo.min(center - radius);
        hi = hi.max(center + radius);
    }
    if n == 0 { 0.0 } else { hi - lo }
}

/// Matrix exponential of a small real matrix by scaling and squaring with a
/// Taylor series truncated at machine precision.
pub fn expm<T: RealField + Copy>(a: &DMatrix<T>) -> DMatrix<T> {
    let n = a.nrows();
    let norm = a.iter().fold(T::zero(), |acc, x| acc + x.abs());
    let half = nalgebra::convert::<f64, T>(0.5);
    let mut squarings = 0u32;
    let mut scale = T::one();
    let mut scaled_norm = norm;
    while scaled_norm > half {
        scaled_norm *= half;
        scale *= half;
        squarings += 1;
    }
    let scaled = a * scale;
    let mut term = DMatrix::<T>::identity(n, n);
    let mut sum = term.clone();
    let eps = nalgebra::convert::<f64, T>(1e-18);
    for k in 1..40 {
        term = &term * &scaled / nalgebra::convert::<f64, T>(k as f64);
        sum += &term;
        let size = term.iter().fold(T::zero(), |acc, x| acc + x.abs());
        if size < eps {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}
