//! Dense linear algebra helpers shared by the border basis engine, the
//! moment module and the SDP solver.

use alloc::vec::Vec;
use nalgebra::{DMatrix, DVector};

/// Reduced row echelon form in place, processing columns left to right.
///
/// Entries below `tol` never become pivots. Returns the pivot column of
/// each pivot row; after the call, row `k` of `mat` is the `k`-th pivot
/// row, normalized to 1 at its pivot, with the pivot column eliminated
/// from every other row. Non-pivot rows (all remaining entries below
/// `tol`) end up zeroed at the bottom.
pub fn rref(mat: &mut DMatrix<f64>, tol: f64) -> Vec<usize> {
    let (nrows, ncols) = mat.shape();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        // Partial pivoting: largest magnitude in the column among free rows.
        let (best_row, best_val) = (row..nrows)
            .map(|r| (r, mat[(r, col)].abs()))
            .fold((row, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best_val <= tol {
            for r in row..nrows {
                mat[(r, col)] = 0.0;
            }
            continue;
        }
        mat.swap_rows(row, best_row);
        let inv = 1.0 / mat[(row, col)];
        for c in col..ncols {
            mat[(row, c)] *= inv;
        }
        mat[(row, col)] = 1.0;
        for r in 0..nrows {
            if r == row {
                continue;
            }
            let factor = mat[(r, col)];
            if factor != 0.0 {
                for c in col..ncols {
                    let v = mat[(row, c)];
                    mat[(r, c)] -= factor * v;
                }
                mat[(r, col)] = 0.0;
            }
        }
        pivots.push(col);
        row += 1;
    }
    // Scrub sub-tolerance residue left by eliminations.
    for r in 0..nrows {
        for c in 0..ncols {
            if mat[(r, c)].abs() <= tol {
                mat[(r, c)] = 0.0;
            }
        }
    }
    pivots
}

/// Largest entry magnitude of a matrix, 0 for empty.
pub fn max_abs(mat: &DMatrix<f64>) -> f64 {
    mat.iter().fold(0.0, |acc: f64, v| acc.max(v.abs()))
}

/// Solution of the linear system `C x = b` in the least squares sense,
/// together with an orthonormal basis of the numerical null space of `C`.
///
/// Ranks are decided by singular values relative to the largest one.
pub struct AffineSolution {
    /// Minimum-norm least squares solution.
    pub particular: DVector<f64>,
    /// Columns span the null space of `C`.
    pub nullspace: DMatrix<f64>,
    /// Residual norm of the least squares fit.
    pub residual: f64,
    /// Numerical rank of `C`.
    pub rank: usize,
}

/// Solve `C x = b` by SVD and extract the null space of `C`.
///
/// `C` may have any shape; it is padded with zero rows so the full right
/// singular basis is available.
pub fn affine_solve(c: &DMatrix<f64>, b: &DVector<f64>, rank_tol: f64) -> AffineSolution {
    let (k, m) = c.shape();
    let rows = k.max(m);
    let mut padded = DMatrix::zeros(rows, m);
    padded.view_mut((0, 0), (k, m)).copy_from(c);
    let mut b_pad = DVector::zeros(rows);
    b_pad.rows_mut(0, k).copy_from(b);

    let svd = padded.svd(true, true);
    let u = svd.u.as_ref().expect("svd with u");
    let v_t = svd.v_t.as_ref().expect("svd with v_t");
    let sigma_max = svd.singular_values.iter().fold(0.0_f64, |a, &s| a.max(s));
    let cut = rank_tol * sigma_max.max(1e-300);

    let mut x = DVector::zeros(m);
    let mut rank = 0;
    let ut_b = u.transpose() * &b_pad;
    let mut null_cols = Vec::new();
    for (i, &s) in svd.singular_values.iter().enumerate() {
        if s > cut {
            rank += 1;
            let vi = v_t.row(i).transpose();
            x += vi * (ut_b[i] / s);
        } else {
            null_cols.push(i);
        }
    }
    let mut nullspace = DMatrix::zeros(m, null_cols.len());
    for (j, &i) in null_cols.iter().enumerate() {
        nullspace.set_column(j, &v_t.row(i).transpose());
    }
    let residual = (c * &x - b).norm();
    AffineSolution {
        particular: x,
        nullspace,
        residual,
        rank,
    }
}

/// Numerical rank of a matrix by singular value thresholding relative to
/// the largest singular value.
pub fn numerical_rank(mat: &DMatrix<f64>, rel_tol: f64) -> usize {
    if mat.nrows() == 0 || mat.ncols() == 0 {
        return 0;
    }
    let svd = mat.clone().svd(false, false);
    let sigma_max = svd.singular_values.iter().fold(0.0_f64, |a, &s| a.max(s));
    if sigma_max == 0.0 {
        return 0;
    }
    svd.singular_values
        .iter()
        .filter(|&&s| s > rel_tol * sigma_max)
        .count()
}

/// Dimension of `svec` coordinates for symmetric `m x m` matrices.
pub fn svec_len(m: usize) -> usize {
    m * (m + 1) / 2
}

/// Pack a symmetric matrix into svec coordinates (off-diagonal scaled by
/// sqrt(2) so that dot products of svecs equal Frobenius inner products).
pub fn svec(mat: &DMatrix<f64>) -> DVector<f64> {
    let m = mat.nrows();
    let mut out = DVector::zeros(svec_len(m));
    let s = core::f64::consts::SQRT_2;
    let mut k = 0;
    for i in 0..m {
        for j in i..m {
            out[k] = if i == j { mat[(i, j)] } else { s * mat[(i, j)] };
            k += 1;
        }
    }
    out
}

/// Inverse of [`svec`].
pub fn smat(v: &DVector<f64>, m: usize) -> DMatrix<f64> {
    let mut out = DMatrix::zeros(m, m);
    let s = core::f64::consts::FRAC_1_SQRT_2;
    let mut k = 0;
    for i in 0..m {
        for j in i..m {
            if i == j {
                out[(i, j)] = v[k];
            } else {
                out[(i, j)] = s * v[k];
                out[(j, i)] = s * v[k];
            }
            k += 1;
        }
    }
    out
}

/// Eigendecomposition of a symmetric matrix with eigenvalues sorted in
/// descending order (vectors reordered to match).
pub fn sym_eigen_sorted(mat: &DMatrix<f64>) -> (DVector<f64>, DMatrix<f64>) {
    let m = mat.nrows();
    let eig = nalgebra::SymmetricEigen::new(mat.clone());
    let mut idx: Vec<usize> = (0..m).collect();
    idx.sort_by(|&a, &b| {
        eig.eigenvalues[b]
            .partial_cmp(&eig.eigenvalues[a])
            .unwrap_or(core::cmp::Ordering::Equal)
    });
    let mut vals = DVector::zeros(m);
    let mut vecs = DMatrix::zeros(m, m);
    for (k, &i) in idx.iter().enumerate() {
        vals[k] = eig.eigenvalues[i];
        vecs.set_column(k, &eig.eigenvectors.column(i));
    }
    (vals, vecs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn rref_identifies_pivots_and_reduces() {
        let mut m = DMatrix::from_row_slice(3, 4, &[
            0.0, 2.0, 4.0, 2.0, //
            0.0, 1.0, 2.0, 1.0, //
            0.0, 1.0, 3.0, 0.0,
        ]);
        let pivots = rref(&mut m, 1e-12);
        assert_eq!(pivots, vec![1, 2]);
        // Row 0: pivot at col 1 with col 2 eliminated.
        assert_relative_eq!(m[(0, 1)], 1.0);
        assert_relative_eq!(m[(0, 2)], 0.0);
        // Dependent third row zeroed.
        assert!(m.row(2).iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn affine_solve_recovers_nullspace() {
        // x + y + z = 1 in R^3: nullspace has dim 2.
        let c = DMatrix::from_row_slice(1, 3, &[1.0, 1.0, 1.0]);
        let b = DVector::from_row_slice(&[1.0]);
        let sol = affine_solve(&c, &b, 1e-12);
        assert_eq!(sol.rank, 1);
        assert_eq!(sol.nullspace.ncols(), 2);
        assert!(sol.residual < 1e-12);
        for j in 0..2 {
            let col = sol.nullspace.column(j);
            assert_relative_eq!(col.sum(), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn affine_solve_flags_inconsistent_system() {
        let c = DMatrix::from_row_slice(2, 1, &[1.0, 1.0]);
        let b = DVector::from_row_slice(&[0.0, 1.0]);
        let sol = affine_solve(&c, &b, 1e-12);
        assert!(sol.residual > 0.1);
    }

    #[test]
    fn svec_smat_round_trip_preserves_inner_product() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, -3.0]);
        let b = DMatrix::from_row_slice(2, 2, &[0.5, -1.0, -1.0, 4.0]);
        let ip = (a.clone() * b.clone()).trace();
        assert_relative_eq!(svec(&a).dot(&svec(&b)), ip, epsilon = 1e-12);
        assert_relative_eq!(smat(&svec(&a), 2), a, epsilon = 1e-12);
    }

    #[test]
    fn sym_eigen_sorted_descends() {
        let a = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        let (vals, vecs) = sym_eigen_sorted(&a);
        assert_relative_eq!(vals[0], 1.0, epsilon = 1e-12);
        assert_relative_eq!(vals[1], -1.0, epsilon = 1e-12);
        let recon = &vecs * DMatrix::from_diagonal(&vals) * vecs.transpose();
        assert_relative_eq!(recon, a, epsilon = 1e-12);
    }
}
