//! Dense matrix exponential by scaling and squaring with Pade approximants.
//!
//! Coefficients and theta thresholds follow Higham, "The Scaling and Squaring
//! Method for the Matrix Exponential Revisited".

use nalgebra::DMatrix;

const THETA_3: f64 = 1.495585217958292e-2;
const THETA_5: f64 = 2.539398330063230e-1;
const THETA_7: f64 = 9.504178996162932e-1;
const THETA_9: f64 = 2.097847961257068e0;
const THETA_13: f64 = 5.371920351148152e0;

fn one_norm(a: &DMatrix<f64>) -> f64 {
    let mut best = 0.0f64;
    for j in 0..a.ncols() {
        let s: f64 = a.column(j).iter().map(|v| v.abs()).sum();
        best = best.max(s);
    }
    best
}

fn pade_uv(a: &DMatrix<f64>, coeffs: &[f64]) -> (DMatrix<f64>, DMatrix<f64>) {
    let n = a.nrows();
    let id = DMatrix::identity(n, n);
    let a2 = a * a;
    match coeffs.len() {
        4 => {
            let u = a * (&a2 * coeffs[3] + &id * coeffs[1]);
            let v = &a2 * coeffs[2] + &id * coeffs[0];
            (u, v)
        }
        6 => {
            let a4 = &a2 * &a2;
            let u = a * (&a4 * coeffs[5] + &a2 * coeffs[3] + &id * coeffs[1]);
            let v = &a4 * coeffs[4] + &a2 * coeffs[2] + &id * coeffs[0];
            (u, v)
        }
        8 => {
            let a4 = &a2 * &a2;
            let a6 = &a4 * &a2;
            let u = a * (&a6 * coeffs[7] + &a4 * coeffs[5] + &a2 * coeffs[3] + &id * coeffs[1]);
            let v = &a6 * coeffs[6] + &a4 * coeffs[4] + &a2 * coeffs[2] + &id * coeffs[0];
            (u, v)
        }
        10 => {
            let a4 = &a2 * &a2;
            let a6 = &a4 * &a2;
            let a8 = &a6 * &a2;
            let u = a * (&a8 * coeffs[9]
                + &a6 * coeffs[7]
                + &a4 * coeffs[5]
                + &a2 * coeffs[3]
                + &id * coeffs[1]);
            let v = &a8 * coeffs[8]
                + &a6 * coeffs[6]
                + &a4 * coeffs[4]
                + &a2 * coeffs[2]
                + &id * coeffs[0];
            (u, v)
        }
        14 => {
            let a4 = &a2 * &a2;
            let a6 = &a4 * &a2;
            let w = &a6 * coeffs[13] + &a4 * coeffs[11] + &a2 * coeffs[9];
            let u = a * (&a6 * w + &a6 * coeffs[7] + &a4 * coeffs[5] + &a2 * coeffs[3] + &id * coeffs[1]);
            let w2 = &a6 * coeffs[12] + &a4 * coeffs[10] + &a2 * coeffs[8];
            let v = &a6 * w2 + &a6 * coeffs[6] + &a4 * coeffs[4] + &a2 * coeffs[2] + &id * coeffs[0];
            (u, v)
        }
        _ => unreachable!("unsupported Pade order"),
    }
}

/// e^A for a square dense matrix.
pub fn expm(a: &DMatrix<f64>) -> DMatrix<f64> {
    const B3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
    const B5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
    const B7: [f64; 8] = [
        17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0,
    ];
    const B9: [f64; 10] = [
        17643225600.0,
        8821612800.0,
        2075673600.0,
        302702400.0,
        30270240.0,
        2162160.0,
        110880.0,
        3960.0,
        90.0,
        1.0,
    ];
    const B13: [f64; 14] = [
        64764752532480000.0,
        32382376266240000.0,
        7771770303897600.0,
        1187353796428800.0,
        129060195264000.0,
        10559470521600.0,
        670442572800.0,
        33522128640.0,
        1323241920.0,
        40840800.0,
        960960.0,
        16380.0,
        182.0,
        1.0,
    ];

    let norm = one_norm(a);
    let (u, v, squarings) = if norm <= THETA_3 {
        let (u, v) = pade_uv(a, &B3);
        (u, v, 0u32)
    } else if norm <= THETA_5 {
        let (u, v) = pade_uv(a, &B5);
        (u, v, 0)
    } else if norm <= THETA_7 {
        let (u, v) = pade_uv(a, &B7);
        (u, v, 0)
    } else if norm <= THETA_9 {
        let (u, v) = pade_uv(a, &B9);
        (u, v, 0)
    } else {
        let s = ((norm / THETA_13).log2().ceil()).max(0.0) as u32;
        let scaled = a * 2f64.powi(-(s as i32));
        let (u, v) = pade_uv(&scaled, &B13);
        (u, v, s)
    };

    // Pade approximant is (V - U)^{-1} (V + U).
    let num = &v + &u;
    let den = &v - &u;
    let mut r = den
        .lu()
        .solve(&num)
        .expect("Pade denominator must be invertible");
    for _ in 0..squarings {
        r = &r * &r;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_of_zero_is_identity() {
        let a = DMatrix::zeros(4, 4);
        let e = expm(&a);
        assert!((e - DMatrix::<f64>::identity(4, 4)).norm() < 1e-14);
    }

    #[test]
    fn exp_of_diagonal() {
        let a = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![-1.0, 0.5, -30.0]));
        let e = expm(&a);
        for (i, &d) in [-1.0f64, 0.5, -30.0].iter().enumerate() {
            assert!((e[(i, i)] - d.exp()).abs() < 1e-12 * d.exp().max(1.0));
        }
        assert!(e[(0, 1)].abs() < 1e-16);
    }

    #[test]
    fn exp_matches_series_for_small_matrix() {
        let a = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]);
        // exp of a rotation generator: [[cos 1, sin 1], [-sin 1, cos 1]]
        let e = expm(&a);
        assert!((e[(0, 0)] - 1f64.cos()).abs() < 1e-14);
        assert!((e[(0, 1)] - 1f64.sin()).abs() < 1e-14);
        assert!((e[(1, 0)] + 1f64.sin()).abs() < 1e-14);
    }

    #[test]
    fn semigroup_property() {
        let a = DMatrix::from_row_slice(3, 3, &[-2.0, 1.0, 0.0, 1.0, -3.0, 1.0, 0.0, 1.0, -2.5]);
        let e1 = expm(&(&a * 0.3));
        let e2 = expm(&(&a * 0.7));
        let e3 = expm(&a);
        assert!(((&e1 * &e2) - e3).norm() < 1e-12);
    }
}
