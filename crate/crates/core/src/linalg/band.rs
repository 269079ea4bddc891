//! Banded LU factorization with partial pivoting.
//!
//! Interior cells indexed row-major keep the five-point stencil inside a band
//! of half-width <= nx, so a band factorization is the workhorse behind every
//! resolvent solve in the crate. Partial pivoting widens the upper band from
//! `b` to `2b`; storage is the usual LAPACK-style band layout.

use crate::error::{CoreError, Result};
use crate::linalg::csr::CsrMatrix;

/// LU factors of a banded matrix, reusable across many right-hand sides.
pub struct BandedLu {
    n: usize,
    /// lower half-bandwidth of the original matrix
    kl: usize,
    /// upper half-bandwidth of the original matrix
    ku: usize,
    /// band storage with kl extra superdiagonals for pivot fill-in:
    /// ab[row_in_band][j] where row_in_band = kl + ku + i - j, 0 <= j < n
    ab: Vec<f64>,
    ldab: usize,
    pivots: Vec<usize>,
}

impl BandedLu {
    /// Factorizes a CSR matrix. Fails if a pivot column is exactly zero
    /// (singular to working precision).
    pub fn factor(a: &CsrMatrix) -> Result<BandedLu> {
        let n = a.n();
        let b = a.bandwidth();
        let (kl, ku) = (b, b);
        let ldab = 2 * kl + ku + 1;
        let mut ab = vec![0.0; ldab * n];
        // Column-major band storage: entry (i, j) lives at ab[j * ldab + (kl + ku + i - j)].
        for i in 0..n {
            let (cols, vals) = a.row(i);
            for (&j, &v) in cols.iter().zip(vals) {
                ab[j * ldab + (kl + ku + i - j)] = v;
            }
        }
        let mut pivots = vec![0usize; n];

        for k in 0..n {
            // Rows k..=k+kl are candidates for the pivot of column k.
            let m = (kl).min(n - 1 - k);
            let mut p = 0usize;
            let mut pmax = 0.0f64;
            for r in 0..=m {
                let v = ab[k * ldab + (kl + ku + r)].abs();
                if v > pmax {
                    pmax = v;
                    p = r;
                }
            }
            if pmax == 0.0 {
                return Err(CoreError::Solver(format!(
                    "banded LU pivot breakdown at column {k} (matrix singular)"
                )));
            }
            pivots[k] = k + p;
            // Swap rows k and k+p across the active band columns.
            if p != 0 {
                let jmax = (k + ku + kl).min(n - 1);
                for j in k..=jmax {
                    let idx_a = j * ldab + (kl + ku + k - j);
                    let idx_b = j * ldab + (kl + ku + k + p - j);
                    ab.swap(idx_a, idx_b);
                }
            }
            let pivot = ab[k * ldab + (kl + ku)];
            for r in 1..=m {
                let idx = k * ldab + (kl + ku + r);
                let l = ab[idx] / pivot;
                ab[idx] = l;
                if l != 0.0 {
                    let jmax = (k + ku + kl).min(n - 1);
                    for j in (k + 1)..=jmax {
                        let u_kj = ab[j * ldab + (kl + ku + k - j)];
                        if u_kj != 0.0 {
                            ab[j * ldab + (kl + ku + k + r - j)] -= l * u_kj;
                        }
                    }
                }
            }
        }

        Ok(BandedLu {
            n,
            kl,
            ku,
            ab,
            ldab,
            pivots,
        })
    }

    /// Solves A x = rhs using the stored factors.
    pub fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        assert_eq!(rhs.len(), self.n);
        let mut x = rhs.to_vec();
        let (n, kl, ku, ldab) = (self.n, self.kl, self.ku, self.ldab);
        // Forward: apply P and L.
        for k in 0..n {
            let p = self.pivots[k];
            if p != k {
                x.swap(k, p);
            }
            let m = kl.min(n - 1 - k);
            let xk = x[k];
            if xk != 0.0 {
                for r in 1..=m {
                    x[k + r] -= self.ab[k * ldab + (kl + ku + r)] * xk;
                }
            }
        }
        // Backward: solve U x = y.
        for k in (0..n).rev() {
            let jmax = (k + ku + kl).min(n - 1);
            let mut acc = x[k];
            for j in (k + 1)..=jmax {
                acc -= self.ab[j * ldab + (kl + ku + k - j)] * x[j];
            }
            x[k] = acc / self.ab[k * ldab + (kl + ku)];
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::csr::CsrBuilder;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn random_banded(n: usize, band: usize, rng: &mut ChaCha8Rng) -> CsrMatrix {
        let mut b = CsrBuilder::new(n);
        for i in 0..n {
            b.add(i, i, 4.0 + rng.gen::<f64>());
            for off in 1..=band {
                if i + off < n {
                    b.add(i, i + off, rng.gen::<f64>() - 0.5);
                    b.add(i + off, i, rng.gen::<f64>() - 0.5);
                }
            }
        }
        b.build()
    }

    #[test]
    fn solves_match_dense_lu() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &(n, band) in &[(5usize, 1usize), (40, 3), (60, 7)] {
            let a = random_banded(n, band, &mut rng);
            let lu = BandedLu::factor(&a).unwrap();
            let rhs: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() - 0.5).collect();
            let x = lu.solve(&rhs);
            let dense = a.to_dense();
            let xd = dense
                .lu()
                .solve(&nalgebra::DVector::from_column_slice(&rhs))
                .unwrap();
            for i in 0..n {
                assert!(
                    (x[i] - xd[i]).abs() < 1e-9 * (1.0 + xd[i].abs()),
                    "mismatch at {i}: {} vs {}",
                    x[i],
                    xd[i]
                );
            }
        }
    }

    #[test]
    fn residual_is_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = random_banded(200, 14, &mut rng);
        let lu = BandedLu::factor(&a).unwrap();
        let rhs: Vec<f64> = (0..200).map(|_| rng.gen::<f64>()).collect();
        let x = lu.solve(&rhs);
        let r = a.matvec(&x);
        let err: f64 = r
            .iter()
            .zip(&rhs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(err < 1e-10, "residual {err}");
    }

    #[test]
    fn singular_matrix_is_reported() {
        let mut b = CsrBuilder::new(3);
        b.add(0, 0, 1.0);
        b.add(1, 1, 1.0);
        // row/col 2 entirely zero
        let a = b.build();
        assert!(BandedLu::factor(&a).is_err());
    }
}
