//! Small dense linear algebra over real and complex scalars.
//!
//! Everything here works on tiny matrices (dimension at most six), so plain
//! Gaussian elimination with partial pivoting and a Jacobi eigensolver are
//! both adequate and easy to audit.

use num_complex::Complex64;

/// Row-major complex matrix.
#[derive(Debug, Clone)]
pub struct CMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![Complex64::ZERO; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = CMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            m.data[i * c..(i + 1) * c].copy_from_slice(row);
        }
        m
    }

    pub fn at(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.cols + c] = v;
    }
}

/// Basis of the (right) nullspace of `m`, via column-pivoted elimination.
/// `tol` is relative to the largest entry.
pub fn nullspace(m: &CMatrix, tol: f64) -> Vec<Vec<Complex64>> {
    let mut a = m.clone();
    let scale = a
        .data
        .iter()
        .map(|z| z.norm())
        .fold(0.0f64, f64::max)
        .max(1e-300);
    let thresh = tol * scale;

    let mut pivot_cols = Vec::new();
    let mut row = 0usize;
    for col in 0..a.cols {
        if row >= a.rows {
            break;
        }
        // find pivot in this column at or below `row`
        let (mut best_r, mut best_n) = (row, a.at(row, col).norm());
        for r in row + 1..a.rows {
            let n = a.at(r, col).norm();
            if n > best_n {
                best_n = n;
                best_r = r;
            }
        }
        if best_n <= thresh {
            continue;
        }
        // swap rows
        if best_r != row {
            for c in 0..a.cols {
                let t = a.at(row, c);
                a.set(row, c, a.at(best_r, c));
                a.set(best_r, c, t);
            }
        }
        // eliminate
        let p = a.at(row, col);
        for r in 0..a.rows {
            if r == row {
                continue;
            }
            let f = a.at(r, col) / p;
            if f.norm() == 0.0 {
                continue;
            }
            for c in 0..a.cols {
                let v = a.at(r, c) - f * a.at(row, c);
                a.set(r, c, v);
            }
            a.set(r, col, Complex64::ZERO);
        }
        pivot_cols.push((row, col));
        row += 1;
    }

    let pivot_set: Vec<usize> = pivot_cols.iter().map(|&(_, c)| c).collect();
    let free: Vec<usize> = (0..a.cols).filter(|c| !pivot_set.contains(c)).collect();
    let mut basis = Vec::new();
    for &fc in &free {
        let mut v = vec![Complex64::ZERO; a.cols];
        v[fc] = Complex64::ONE;
        for &(pr, pc) in pivot_cols.iter().rev() {
            // row pr: a[pr][pc]·v[pc] + sum over later cols = 0
            let mut s = Complex64::ZERO;
            for c in 0..a.cols {
                if c != pc {
                    s += a.at(pr, c) * v[c];
                }
            }
            v[pc] = -s / a.at(pr, pc);
        }
        // normalize
        let n: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in v.iter_mut() {
            *z /= n;
        }
        basis.push(v);
    }
    basis
}

/// Rank with relative tolerance, from the same elimination.
pub fn rank(m: &CMatrix, tol: f64) -> usize {
    m.cols - nullspace(m, tol).len()
}

/// Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.
/// Returns `(eigenvalues, eigenvectors)` with eigenvectors as columns,
/// eigenvalues ascending.
pub fn hermitian_eigen(h: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = h.rows;
    assert_eq!(n, h.cols);
    let mut a = h.clone();
    let mut v = CMatrix::zeros(n, n);
    for i in 0..n {
        v.set(i, i, Complex64::ONE);
    }

    let scale = h.data.iter().map(|z| z.norm()).fold(1e-300, f64::max);
    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                off += a.at(p, q).norm_sqr();
            }
        }
        if off.sqrt() < 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let b = a.at(p, q);
                if b.norm() < 1e-300 {
                    continue;
                }
                let app = a.at(p, p).re;
                let aqq = a.at(q, q).re;
                // unitary U = [[c, -σ e^{iφ}],[σ e^{-iφ}, c]] zeroing the
                // off-diagonal of [[app, b],[b̄, aqq]], with b = |b| e^{iφ}
                let phase = b / b.norm();
                let theta = 0.5 * (2.0 * b.norm()).atan2(app - aqq);
                let (c, sigma) = (theta.cos(), theta.sin());
                let s = phase.conj() * sigma; // σ e^{-iφ}

                // A <- A·U (columns p, q)
                for r in 0..n {
                    let arp = a.at(r, p);
                    let arq = a.at(r, q);
                    a.set(r, p, arp * c + arq * s);
                    a.set(r, q, arq * c - arp * s.conj());
                    let vrp = v.at(r, p);
                    let vrq = v.at(r, q);
                    v.set(r, p, vrp * c + vrq * s);
                    v.set(r, q, vrq * c - vrp * s.conj());
                }
                // A <- U*·A (rows p, q)
                for cidx in 0..n {
                    let apc = a.at(p, cidx);
                    let aqc = a.at(q, cidx);
                    a.set(p, cidx, apc * c + aqc * s.conj());
                    a.set(q, cidx, aqc * c - apc * s);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let evals: Vec<f64> = (0..n).map(|i| a.at(i, i).re).collect();
    order.sort_by(|&i, &j| evals[i].partial_cmp(&evals[j]).unwrap());
    let sorted_vals: Vec<f64> = order.iter().map(|&i| evals[i]).collect();
    let mut sorted_vecs = CMatrix::zeros(n, n);
    for (newc, &oldc) in order.iter().enumerate() {
        for r in 0..n {
            sorted_vecs.set(r, newc, v.at(r, oldc));
        }
    }
    (sorted_vals, sorted_vecs)
}

/// Row-major real matrix helpers for 5x5 work.
pub fn real_solve(a: &[Vec<f64>], b: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    // solves A·X = B by Gauss-Jordan; returns X (dims: a is n x n, b is n x m)
    let n = a.len();
    let m = b[0].len();
    let mut aug: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut row = a[i].clone();
            row.extend_from_slice(&b[i]);
            row
        })
        .collect();
    for col in 0..n {
        let (mut best, mut best_n) = (col, aug[col][col].abs());
        for r in col + 1..n {
            if aug[r][col].abs() > best_n {
                best_n = aug[r][col].abs();
                best = r;
            }
        }
        if best_n < 1e-12 {
            return None;
        }
        aug.swap(col, best);
        let p = aug[col][col];
        for v in aug[col].iter_mut() {
            *v /= p;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = aug[r][col];
            if f == 0.0 {
                continue;
            }
            for c in 0..n + m {
                aug[r][c] -= f * aug[col][c];
            }
        }
    }
    Some((0..n).map(|i| aug[i][n..].to_vec()).collect())
}

/// Real nullspace with relative tolerance (wraps the complex routine).
pub fn real_nullspace(m: &[Vec<f64>], tol: f64) -> Vec<Vec<f64>> {
    let cm = CMatrix::from_rows(
        &m.iter()
            .map(|row| row.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect::<Vec<_>>(),
    );
    nullspace(&cm, tol)
        .into_iter()
        .map(|v| {
            // basis vectors of a real system can be chosen real; rotate the
            // phase of the largest entry onto the real axis first
            let pivot = v
                .iter()
                .cloned()
                .max_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap())
                .unwrap();
            let phase = pivot / pivot.norm();
            v.iter().map(|z| (z / phase).re).collect()
        })
        .collect()
}

/// Determinant of a small real matrix by LU elimination.
pub fn real_det(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let mut det = 1.0f64;
    for col in 0..n {
        let (mut best, mut best_n) = (col, a[col][col].abs());
        for r in col + 1..n {
            if a[r][col].abs() > best_n {
                best_n = a[r][col].abs();
                best = r;
            }
        }
        if best_n < 1e-300 {
            return 0.0;
        }
        if best != col {
            a.swap(col, best);
            det = -det;
        }
        det *= a[col][col];
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for c in col..n {
                a[r][c] -= f * a[col][c];
            }
        }
    }
    det
}
