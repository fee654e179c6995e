//! Dense linear algebra for the small matrices this crate works with (d <= 10).
//!
//! Determinants come from LU with partial pivoting and eigendecompositions from
//! cyclic Jacobi sweeps, so the two never share code paths and can cross-check
//! each other. Integer determinants use fraction-free (Bareiss) elimination.

use crate::error::{Error, Result};
use crate::tolerances::JACOBI_OFF_EPS;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.concat() }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows).map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }

    /// ||self - c*I||_F; callers use it for tightness deviations.
    pub fn distance_from_scaled_identity(&self, c: f64) -> f64 {
        assert_eq!(self.rows, self.cols);
        let mut acc = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let target = if i == j { c } else { 0.0 };
                let d = self[(i, j)] - target;
                acc += d * d;
            }
        }
        acc.sqrt()
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Determinant via LU with partial pivoting. Returns 0 for structurally
/// singular input; no tolerance games, the raw pivot product.
pub fn lu_det(m: &Matrix) -> f64 {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return 1.0;
    }
    let mut a = m.clone();
    let mut det = 1.0;
    for k in 0..n {
        // partial pivot: largest |entry| in column k at or below the diagonal
        let mut p = k;
        for i in k + 1..n {
            if a[(i, k)].abs() > a[(p, k)].abs() {
                p = i;
            }
        }
        if a[(p, k)] == 0.0 {
            return 0.0;
        }
        if p != k {
            for j in 0..n {
                let t = a[(k, j)];
                a[(k, j)] = a[(p, j)];
                a[(p, j)] = t;
            }
            det = -det;
        }
        det *= a[(k, k)];
        for i in k + 1..n {
            let f = a[(i, k)] / a[(k, k)];
            for j in k + 1..n {
                a[(i, j)] -= f * a[(k, j)];
            }
        }
    }
    det
}

/// Solves A x = b by LU with partial pivoting.
pub fn solve(m: &Matrix, b: &[f64]) -> Result<Vec<f64>> {
    assert_eq!(m.rows, m.cols);
    assert_eq!(b.len(), m.rows);
    let n = m.rows;
    let mut a = m.clone();
    let mut x = b.to_vec();
    for k in 0..n {
        let mut p = k;
        for i in k + 1..n {
            if a[(i, k)].abs() > a[(p, k)].abs() {
                p = i;
            }
        }
        if a[(p, k)].abs() < 1e-300 {
            return Err(Error::Degenerate("singular system".into()));
        }
        if p != k {
            for j in 0..n {
                let t = a[(k, j)];
                a[(k, j)] = a[(p, j)];
                a[(p, j)] = t;
            }
            x.swap(k, p);
        }
        for i in k + 1..n {
            let f = a[(i, k)] / a[(k, k)];
            for j in k + 1..n {
                a[(i, j)] -= f * a[(k, j)];
            }
            x[i] -= f * x[k];
        }
    }
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|j| a[(i, j)] * x[j]).sum();
        x[i] = (x[i] - s) / a[(i, i)];
    }
    Ok(x)
}

/// Eigendecomposition of a symmetric matrix.
pub struct Eigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Column j is the eigenvector for `values[j]`.
    pub vectors: Matrix,
}

fn off_diagonal_frobenius(a: &Matrix) -> f64 {
    let n = a.nrows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)] * a[(i, j)];
            }
        }
    }
    acc.sqrt()
}

/// Cyclic Jacobi for symmetric matrices: fixed (p, q) sweep order, rotations
/// until the off-diagonal Frobenius norm is <= 1e-13. Deterministic.
pub fn jacobi_eigen(m: &Matrix) -> Result<Eigen> {
    if m.rows != m.cols {
        return Err(Error::Dimension("eigendecomposition of a non-square matrix".into()));
    }
    let n = m.rows;
    let sym_tol = 1e-10 * m.frobenius().max(1.0);
    for i in 0..n {
        for j in i + 1..n {
            if (m[(i, j)] - m[(j, i)]).abs() > sym_tol {
                return Err(Error::Parameter("matrix is not symmetric".into()));
            }
        }
    }
    let mut a = m.clone();
    let mut v = Matrix::identity(n);
    // cyclic Jacobi converges; 60 sweeps is far beyond what n <= 10 needs
    for _sweep in 0..60 {
        if off_diagonal_frobenius(&a) <= JACOBI_OFF_EPS {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    -1.0 / (-theta + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // A <- J^T A J on rows/columns p and q
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].partial_cmp(&a[(j, j)]).unwrap().then(i.cmp(&j)));
    let values: Vec<f64> = order.iter().map(|&i| a[(i, i)]).collect();
    let mut vectors = Matrix::zeros(n, n);
    for (new, &old) in order.iter().enumerate() {
        for k in 0..n {
            vectors[(k, new)] = v[(k, old)];
        }
    }
    Ok(Eigen { values, vectors })
}

/// Exact integer determinant by fraction-free (Bareiss) elimination.
/// Every intermediate division is exact; i128 leaves huge headroom for the
/// Laplacian cofactors this crate feeds it (n <= 10).
pub fn bareiss_det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    assert!(m.iter().all(|row| row.len() == n), "non-square integer matrix");
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}
