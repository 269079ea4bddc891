//! Compressed sparse row matrices sized for desk-scale elliptic operators.

use nalgebra::DMatrix;

/// Square sparse matrix in CSR layout. Rows are kept sorted by column index;
/// construction goes through [`CsrBuilder`] which deduplicates and sorts.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    n: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<f64>,
}

impl CsrMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row(&self, i: usize) -> (&[usize], &[f64]) {
        let lo = self.row_ptr[i];
        let hi = self.row_ptr[i + 1];
        (&self.col_idx[lo..hi], &self.values[lo..hi])
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n)
            .map(|i| {
                let (cols, vals) = self.row(i);
                cols.iter()
                    .zip(vals)
                    .find(|(&c, _)| c == i)
                    .map(|(_, &v)| v)
                    .unwrap_or(0.0)
            })
            .collect()
    }

    /// y = A x
    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n);
        let mut y = vec![0.0; self.n];
        for i in 0..self.n {
            let (cols, vals) = self.row(i);
            let mut acc = 0.0;
            for (&c, &v) in cols.iter().zip(vals) {
                acc += v * x[c];
            }
            y[i] = acc;
        }
        y
    }

    /// Largest |A_ij - A_ji| over all entries; 0.0 for exactly symmetric matrices.
    pub fn symmetry_defect(&self) -> f64 {
        let mut defect: f64 = 0.0;
        for i in 0..self.n {
            let (cols, vals) = self.row(i);
            for (&j, &v) in cols.iter().zip(vals) {
                let vt = self.get(j, i);
                defect = defect.max((v - vt).abs());
            }
        }
        defect
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (cols, vals) = self.row(i);
        match cols.binary_search(&j) {
            Ok(k) => vals[k],
            Err(_) => 0.0,
        }
    }

    /// True iff every stored off-diagonal entry is <= 0 (checked exactly).
    pub fn is_z_matrix(&self) -> bool {
        for i in 0..self.n {
            let (cols, vals) = self.row(i);
            for (&c, &v) in cols.iter().zip(vals) {
                if c != i && v > 0.0 {
                    return false;
                }
            }
        }
        true
    }

    /// Row sums, used for conservation checks on Neumann operators.
    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.row(i).1.iter().sum())
            .collect()
    }

    /// Gershgorin lower bound: min_i (A_ii - sum_{j != i} |A_ij|).
    pub fn gershgorin_lower_bound(&self) -> f64 {
        let mut glb = f64::INFINITY;
        for i in 0..self.n {
            let (cols, vals) = self.row(i);
            let mut diag = 0.0;
            let mut off = 0.0;
            for (&c, &v) in cols.iter().zip(vals) {
                if c == i {
                    diag = v;
                } else {
                    off += v.abs();
                }
            }
            glb = glb.min(diag - off);
        }
        glb
    }

    /// Returns a copy with `shift` added to the diagonal.
    pub fn shifted(&self, shift: f64) -> CsrMatrix {
        let mut out = self.clone();
        out.add_to_diagonal_uniform(shift);
        out
    }

    fn add_to_diagonal_uniform(&mut self, shift: f64) {
        for i in 0..self.n {
            let lo = self.row_ptr[i];
            let hi = self.row_ptr[i + 1];
            let cols = &self.col_idx[lo..hi];
            match cols.binary_search(&i) {
                Ok(k) => self.values[lo + k] += shift,
                Err(k) => {
                    // Diagonal entry was structurally absent; insert it.
                    self.col_idx.insert(lo + k, i);
                    self.values.insert(lo + k, shift);
                    for p in self.row_ptr.iter_mut().skip(i + 1) {
                        *p += 1;
                    }
                }
            }
        }
    }

    /// Returns a copy with the vector `d` added to the diagonal.
    pub fn plus_diagonal(&self, d: &[f64]) -> CsrMatrix {
        assert_eq!(d.len(), self.n);
        let mut out = self.clone();
        for i in 0..self.n {
            let lo = out.row_ptr[i];
            let hi = out.row_ptr[i + 1];
            let cols = &out.col_idx[lo..hi];
            match cols.binary_search(&i) {
                Ok(k) => out.values[lo + k] += d[i],
                Err(k) => {
                    out.col_idx.insert(lo + k, i);
                    out.values.insert(lo + k, d[i]);
                    for p in out.row_ptr.iter_mut().skip(i + 1) {
                        *p += 1;
                    }
                }
            }
        }
        out
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.n, self.n);
        for i in 0..self.n {
            let (cols, vals) = self.row(i);
            for (&c, &v) in cols.iter().zip(vals) {
                m[(i, c)] = v;
            }
        }
        m
    }

    /// Half bandwidth: max |i - j| over stored entries.
    pub fn bandwidth(&self) -> usize {
        let mut b = 0usize;
        for i in 0..self.n {
            let (cols, _) = self.row(i);
            for &c in cols {
                b = b.max(i.abs_diff(c));
            }
        }
        b
    }

    /// MatrixMarket coordinate format (1-based indices).
    pub fn to_matrix_market(&self) -> String {
        let mut s = String::new();
        s.push_str("%%MatrixMarket matrix coordinate real general\n");
        s.push_str(&format!("{} {} {}\n", self.n, self.n, self.nnz()));
        for i in 0..self.n {
            let (cols, vals) = self.row(i);
            for (&c, &v) in cols.iter().zip(vals) {
                s.push_str(&format!("{} {} {:.17e}\n", i + 1, c + 1, v));
            }
        }
        s
    }
}

/// Accumulating triplet builder; duplicate (i, j) entries are summed.
pub struct CsrBuilder {
    n: usize,
    triplets: Vec<(usize, usize, f64)>,
}

impl CsrBuilder {
    pub fn new(n: usize) -> Self {
        CsrBuilder {
            n,
            triplets: Vec::new(),
        }
    }

    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        debug_assert!(i < self.n && j < self.n);
        self.triplets.push((i, j, v));
    }

    pub fn build(mut self) -> CsrMatrix {
        self.triplets
            .sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        let mut col_idx: Vec<usize> = Vec::with_capacity(self.triplets.len());
        let mut values: Vec<f64> = Vec::with_capacity(self.triplets.len());
        let mut rows: Vec<usize> = Vec::with_capacity(self.triplets.len());
        for &(i, j, v) in &self.triplets {
            if rows.last() == Some(&i) && col_idx.last() == Some(&j) {
                *values.last_mut().unwrap() += v;
            } else {
                rows.push(i);
                col_idx.push(j);
                values.push(v);
            }
        }
        let mut row_ptr = vec![0usize; self.n + 1];
        for &i in &rows {
            row_ptr[i + 1] += 1;
        }
        for i in 0..self.n {
            row_ptr[i + 1] += row_ptr[i];
        }
        CsrMatrix {
            n: self.n,
            row_ptr,
            col_idx,
            values,
        }
    }
}
