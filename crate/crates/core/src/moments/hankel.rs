use serde::Serialize;

use super::table::MomentTable;
use crate::error::{domain, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DetSign {
    Positive,
    Negative,
    /// `|det|` below `1e-12` times the Hadamard bound of the matrix.
    Indeterminate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HankelEntry {
    /// The matrix is `[m̃_{i+j}]_{0 <= i,j <= k}`.
    pub k: usize,
    pub sign: DetSign,
    /// Determinant of the scaled matrix.
    pub det: f64,
    /// `|det|` over the Hadamard bound `Π_i ||row_i||`.
    pub relative_magnitude: f64,
}

/// Relative size below which a determinant sign is not trusted.
const INDETERMINATE: f64 = 1e-12;

/// Determinant by LU with partial pivoting.
fn det_lu(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut det = 1.0;
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap_or(col);
        if m[piv][col] == 0.0 {
            return 0.0;
        }
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col];
        det *= p;
        for r in col + 1..n {
            let f = m[r][col] / p;
            if f != 0.0 {
                for c in col..n {
                    m[r][c] -= f * m[col][c];
                }
            }
        }
    }
    det
}

/// Signs of the Hankel determinants `det [m_{i+j}]_{0<=i,j<=k}` for `k = 0..=k_max`.
///
/// The scaled sequence gives `D H D` with `D = diag(ρ^{-i})`, which has the same sign.
pub fn hankel_test(table: &MomentTable, k_max: usize) -> Result<Vec<HankelEntry>> {
    if 2 * k_max > table.n_max() {
        return Err(domain(
            "hankel_test",
            format!("k_max = {k_max} needs moments up to {}, table has {}", 2 * k_max, table.n_max()),
        ));
    }
    let s = table.scaled();
    let out = (0..=k_max)
        .map(|k| {
            let mat: Vec<Vec<f64>> = (0..=k).map(|i| (0..=k).map(|j| s[i + j]).collect()).collect();
            let hadamard: f64 = mat.iter().map(|r| r.iter().map(|v| v * v).sum::<f64>().sqrt()).product();
            let det = det_lu(mat);
            let rel = det.abs() / hadamard;
            let sign = if rel < INDETERMINATE {
                DetSign::Indeterminate
            } else if det > 0.0 {
                DetSign::Positive
            } else {
                DetSign::Negative
            };
            HankelEntry {
                k,
                sign,
                det,
                relative_magnitude: rel,
            }
        })
        .collect();
    Ok(out)
}
