//! Sparse and dense linear algebra kernels.

pub mod band;
pub mod csr;
pub mod expm;

pub use band::BandedLu;
pub use csr::{CsrBuilder, CsrMatrix};
pub use expm::expm;

/// Euclidean norm.
pub fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Sup norm.
pub fn norm_inf(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, &x| m.max(x.abs()))
}

/// Dot product.
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// v / ||v||_2, in place; returns the norm.
pub fn normalize(v: &mut [f64]) -> f64 {
    let n = norm2(v);
    if n > 0.0 {
        for x in v.iter_mut() {
            *x /= n;
        }
    }
    n
}

/// Dominant eigenvalue of a dense nonnegative matrix by power iteration
/// (Perron root). Converges for irreducible nonnegative matrices where the
/// Perron root strictly dominates.
pub fn perron_root(m: &nalgebra::DMatrix<f64>, tol: f64, max_iter: usize) -> f64 {
    let n = m.nrows();
    let mut v = nalgebra::DVector::from_element(n, 1.0 / (n as f64).sqrt());
    let mut lambda = 0.0;
    for _ in 0..max_iter {
        let w = m * &v;
        let norm = w.norm();
        if norm == 0.0 {
            return 0.0;
        }
        let next = w / norm;
        let new_lambda = next.dot(&(m * &next));
        let done = (new_lambda - lambda).abs() <= tol * (1.0 + new_lambda.abs());
        v = next;
        lambda = new_lambda;
        if done {
            break;
        }
    }
    lambda
}
