//! Small fixed-size linear algebra (2×2 and 4×4 symmetric matrices).
//!
//! The covariance pipeline only ever touches 2×2 and 4×4 real symmetric
//! matrices, so hand-rolled routines with partial pivoting are simpler and
//! faster than pulling in a matrix library.

use crate::error::{CoreError, Result};

pub type Mat2 = [[f64; 2]; 2];
pub type Mat4 = [[f64; 4]; 4];

/// Determinant of a 2×2 matrix.
pub fn det2(m: &Mat2) -> f64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// Inverse of a 2×2 matrix.
pub fn inv2(m: &Mat2) -> Result<Mat2> {
    let d = det2(m);
    if d == 0.0 || !d.is_finite() {
        return Err(CoreError::Linalg(format!("singular 2x2 matrix, det = {d}")));
    }
    Ok([[m[1][1] / d, -m[0][1] / d], [-m[1][0] / d, m[0][0] / d]])
}

/// Determinant of a 4×4 matrix via LU with partial pivoting.
pub fn det4(m: &Mat4) -> f64 {
    let mut a = *m;
    let mut det = 1.0;
    for col in 0..4 {
        let (mut piv, mut pval) = (col, a[col][col].abs());
        for row in col + 1..4 {
            if a[row][col].abs() > pval {
                piv = row;
                pval = a[row][col].abs();
            }
        }
        if pval == 0.0 {
            return 0.0;
        }
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        det *= a[col][col];
        for row in col + 1..4 {
            let f = a[row][col] / a[col][col];
            for k in col..4 {
                a[row][k] -= f * a[col][k];
            }
        }
    }
    det
}

/// Inverse of a 4×4 matrix via Gauss–Jordan with partial pivoting.
pub fn inv4(m: &Mat4) -> Result<Mat4> {
    let mut a = *m;
    let mut inv: Mat4 = [[0.0; 4]; 4];
    for (i, row) in inv.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for col in 0..4 {
        let (mut piv, mut pval) = (col, a[col][col].abs());
        for row in col + 1..4 {
            if a[row][col].abs() > pval {
                piv = row;
                pval = a[row][col].abs();
            }
        }
        if pval == 0.0 {
            return Err(CoreError::Linalg("singular 4x4 matrix".into()));
        }
        a.swap(piv, col);
        inv.swap(piv, col);
        let scale = a[col][col];
        for k in 0..4 {
            a[col][k] /= scale;
            inv[col][k] /= scale;
        }
        for row in 0..4 {
            if row != col {
                let f = a[row][col];
                for k in 0..4 {
                    a[row][k] -= f * a[col][k];
                    inv[row][k] -= f * inv[col][k];
                }
            }
        }
    }
    Ok(inv)
}

/// Cholesky factor L (lower triangular, γ = L·Lᵀ) of a symmetric
/// positive-definite 4×4 matrix.
pub fn cholesky4(m: &Mat4) -> Result<Mat4> {
    let mut l: Mat4 = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..=i {
            let mut s = m[i][j];
            for k in 0..j {
                s -= l[i][k] * l[j][k];
            }
            if i == j {
                if s <= 0.0 {
                    return Err(CoreError::Linalg(format!(
                        "matrix not positive definite (pivot {s} at {i})"
                    )));
                }
                l[i][j] = s.sqrt();
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    Ok(l)
}

/// y = M·x for a 4×4 matrix.
pub fn mat4_vec(m: &Mat4, x: &[f64; 4]) -> [f64; 4] {
    let mut y = [0.0; 4];
    for i in 0..4 {
        for k in 0..4 {
            y[i] += m[i][k] * x[k];
        }
    }
    y
}

/// xᵀ·M·x for a 4×4 matrix.
pub fn quad_form4(m: &Mat4, x: &[f64; 4]) -> f64 {
    let mx = mat4_vec(m, x);
    x.iter().zip(mx).map(|(a, b)| a * b).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const M: Mat4 = [
        [4.0, 1.0, 0.5, 0.2],
        [1.0, 3.0, 0.1, 0.4],
        [0.5, 0.1, 2.0, 0.3],
        [0.2, 0.4, 0.3, 5.0],
    ];

    #[test]
    fn inverse_times_matrix_is_identity() {
        let inv = inv4(&M).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let mut s = 0.0;
                for k in 0..4 {
                    s += inv[i][k] * M[k][j];
                }
                let want = if i == j { 1.0 } else { 0.0 };
                assert_relative_eq!(s, want, epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn cholesky_reconstructs_matrix_and_determinant() {
        let l = cholesky4(&M).unwrap();
        let mut det_l2 = 1.0;
        for i in 0..4 {
            det_l2 *= l[i][i] * l[i][i];
        }
        assert_relative_eq!(det_l2, det4(&M), max_relative = 1e-13);
        for i in 0..4 {
            for j in 0..4 {
                let mut s = 0.0;
                for k in 0..4 {
                    s += l[i][k] * l[j][k];
                }
                assert_relative_eq!(s, M[i][j], epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let mut s = M;
        s[3] = s[0];
        assert!(inv4(&s).is_err());
        assert_eq!(det4(&s), 0.0);
        assert!(cholesky4(&s).is_err());
    }
}
