//! Singular values of real 4x4 matrices.
//!
//! The spectrum is obtained from cyclic Jacobi rotations that diagonalize
//! `MᵀM`. The rotations are applied to the columns of `M` directly
//! (one-sided Jacobi), so `MᵀM` is never formed and small singular values
//! keep full relative accuracy instead of losing half their digits to the
//! squaring. Singular vectors are not accumulated.

/// Row-major 4x4 matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Matrix4(pub [f64; 16]);

impl Matrix4 {
    pub fn zero() -> Self {
        Self([0.0; 16])
    }

    pub fn from_diagonal(d: [f64; 4]) -> Self {
        let mut m = [0.0; 16];
        for (i, v) in d.into_iter().enumerate() {
            m[i * 5] = v;
        }
        Self(m)
    }

    pub fn from_pixels(pixels: &[u8; 16]) -> Self {
        Self(pixels.map(f64::from))
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.0[row * 4 + col]
    }

    pub fn transpose(&self) -> Self {
        let mut t = [0.0; 16];
        for r in 0..4 {
            for c in 0..4 {
                t[c * 4 + r] = self.0[r * 4 + c];
            }
        }
        Self(t)
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.0.iter().map(|v| v * v).sum()
    }
}

/// Singular values in non-increasing order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SingularSpectrum(pub [f64; 4]);

impl SingularSpectrum {
    pub fn sigma(&self) -> &[f64; 4] {
        &self.0
    }

    /// Sum of the singular values (nuclear norm).
    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }
}

const MAX_SWEEPS: usize = 50;
const ORTHOGONALITY_TOL: f64 = 1e-15;

pub fn singular_values(m: &Matrix4) -> SingularSpectrum {
    // cols[j] is column j of M
    let mut cols = [[0.0f64; 4]; 4];
    for (r, row) in m.0.chunks_exact(4).enumerate() {
        for (c, &v) in row.iter().enumerate() {
            cols[c][r] = v;
        }
    }

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..3 {
            for q in p + 1..4 {
                let alpha = dot(&cols[p], &cols[p]);
                let beta = dot(&cols[q], &cols[q]);
                let gamma = dot(&cols[p], &cols[q]);
                // (MᵀM)[p][q] relative to its diagonal neighbours
                if gamma == 0.0 || gamma.abs() <= ORTHOGONALITY_TOL * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..4 {
                    let xp = cols[p][i];
                    let xq = cols[q][i];
                    cols[p][i] = c * xp - s * xq;
                    cols[q][i] = s * xp + c * xq;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut sigma = cols.map(|col| dot(&col, &col).sqrt());
    sigma.sort_by(|a, b| b.total_cmp(a));
    SingularSpectrum(sigma)
}

/// Sum of singular values, the trace of `S` in `M = U S Vᵀ`.
pub fn sv_trace(m: &Matrix4) -> f64 {
    singular_values(m).sum()
}

#[inline]
fn dot(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
}
