//! Compressed-row kernels for the integrators.
//!
//! Every operator entering a run (Hamiltonian components, collapse
//! operators, observables) is mostly zeros, so the right-hand sides are
//! evaluated on a compressed-row copy. A [`Family`] shares one sparsity
//! pattern across several matrices so a time-dependent linear combination
//! can be reassembled without reallocating.

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone)]
pub(crate) struct Csr {
    dim: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<Complex64>,
}

impl Csr {
    pub(crate) fn from_dense(m: &DMatrix<Complex64>) -> Self {
        Family::new(&[m]).member(0)
    }

    /// `out = A x` for a vector `x`.
    pub(crate) fn mul_vec(&self, x: &[Complex64], out: &mut [Complex64]) {
        for (o, span) in out.iter_mut().zip(self.row_ptr.windows(2)) {
            *o = (span[0]..span[1]).map(|idx| self.vals[idx] * x[self.cols[idx]]).sum();
        }
    }

    /// `out = A X` for a square column-major `X`.
    pub(crate) fn mul_dense(&self, x: &[Complex64], out: &mut [Complex64]) {
        let d = self.dim;
        for j in 0..d {
            let col = &x[j * d..(j + 1) * d];
            self.mul_vec(col, &mut out[j * d..(j + 1) * d]);
        }
    }

    /// `out += A Xᴴ` for a square column-major `X`.
    pub(crate) fn add_mul_adjoint(&self, x: &[Complex64], out: &mut [Complex64]) {
        let d = self.dim;
        for j in 0..d {
            for r in 0..d {
                let mut acc = ZERO;
                for idx in self.row_ptr[r]..self.row_ptr[r + 1] {
                    // (Xᴴ)[k, j] = conj(X[j, k])
                    acc += self.vals[idx] * x[j + self.cols[idx] * d].conj();
                }
                out[r + j * d] += acc;
            }
        }
    }

    /// `⟨x|A|x⟩`.
    pub(crate) fn quadratic_form(&self, x: &[Complex64]) -> Complex64 {
        let mut acc = ZERO;
        for r in 0..self.dim {
            let mut row = ZERO;
            for idx in self.row_ptr[r]..self.row_ptr[r + 1] {
                row += self.vals[idx] * x[self.cols[idx]];
            }
            acc += x[r].conj() * row;
        }
        acc
    }

    /// `Tr(A X)` for a square column-major `X`.
    pub(crate) fn trace_product(&self, x: &[Complex64]) -> Complex64 {
        let d = self.dim;
        let mut acc = ZERO;
        for r in 0..d {
            for idx in self.row_ptr[r]..self.row_ptr[r + 1] {
                acc += self.vals[idx] * x[self.cols[idx] + r * d];
            }
        }
        acc
    }

    /// Largest absolute row sum, a bound on the spectral radius.
    pub(crate) fn row_sum_bound(&self) -> f64 {
        (0..self.dim)
            .map(|r| (self.row_ptr[r]..self.row_ptr[r + 1]).map(|i| self.vals[i].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

/// Several matrices stored on the union of their sparsity patterns.
#[derive(Debug, Clone)]
pub(crate) struct Family {
    skeleton: Csr,
    members: Vec<Vec<Complex64>>,
}

impl Family {
    pub(crate) fn new(mats: &[&DMatrix<Complex64>]) -> Self {
        let dim = mats.first().map_or(0, |m| m.nrows());
        let mut row_ptr = Vec::with_capacity(dim + 1);
        let mut cols = Vec::new();
        let mut members: Vec<Vec<Complex64>> = vec![Vec::new(); mats.len()];
        row_ptr.push(0);
        for r in 0..dim {
            for c in 0..dim {
                if mats.iter().any(|m| m[(r, c)] != ZERO) {
                    cols.push(c);
                    for (vals, m) in members.iter_mut().zip(mats) {
                        vals.push(m[(r, c)]);
                    }
                }
            }
            row_ptr.push(cols.len());
        }
        let vals = vec![ZERO; cols.len()];
        Self { skeleton: Csr { dim, row_ptr, cols, vals }, members }
    }

    pub(crate) fn member(&self, k: usize) -> Csr {
        Csr { vals: self.members[k].clone(), ..self.skeleton.clone() }
    }

    /// A matrix on the shared pattern, ready for [`Family::assemble`].
    pub(crate) fn workspace(&self) -> Csr {
        self.skeleton.clone()
    }

    /// `target = Σ_k coeffs[k] · member_k`.
    pub(crate) fn assemble(&self, coeffs: &[Complex64], target: &mut Csr) {
        for v in target.vals.iter_mut() {
            *v = ZERO;
        }
        for (vals, &c) in self.members.iter().zip(coeffs) {
            if c == ZERO {
                continue;
            }
            for (t, v) in target.vals.iter_mut().zip(vals) {
                *t += c * v;
            }
        }
    }

    /// Row-sum bound of `Σ_k |coeffs[k]| · |member_k|`.
    pub(crate) fn magnitude_bound(&self, coeffs: &[f64]) -> f64 {
        let s = &self.skeleton;
        (0..s.dim)
            .map(|r| {
                (s.row_ptr[r]..s.row_ptr[r + 1])
                    .map(|i| self.members.iter().zip(coeffs).map(|(v, c)| c.abs() * v[i].norm()).sum::<f64>())
                    .sum::<f64>()
            })
            .fold(0.0, f64::max)
    }
    /// Gershgorin bound on `λ_max - λ_min` over all Hermitian combinations
    /// `member_0 + Σ_{k≥1} f_k member_k` with `|f_k| ≤ peaks[k]`.
    pub(crate) fn spread_bound(&self, peaks: &[f64]) -> f64 {
        let s = &self.skeleton;
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for r in 0..s.dim {
            let mut center = 0.0;
            let mut reach = 0.0;
            for i in s.row_ptr[r]..s.row_ptr[r + 1] {
                for (k, (v, peak)) in self.members.iter().zip(peaks).enumerate() {
                    if s.cols[i] == r && k == 0 {
                        center += v[i].re;
                    } else {
                        reach += peak.abs() * v[i].norm();
                    }
                }
            }
            lo = lo.min(center - reach);
            hi = hi.max(center + reach);
        }
        if s.dim == 0 { 0.0 } else { hi - lo }
    }
}
