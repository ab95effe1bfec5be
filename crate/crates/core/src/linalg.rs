//! Small dense matrix kernels: real 4×4 matrices, complex 2×2 and 4×4
//! matrices, a Jacobi eigensolver for symmetric matrices, and the matrix
//! exponential.
//!
//! Everything here is sized for two-mode phase space (dimension 4), so the
//! implementations favour accuracy and transparency over asymptotics.

use num_complex::Complex64;

use crate::error::Error;

/// Real 4-vector in quadrature order (q1, q2, p1, p2).
pub type Vec4 = [f64; 4];

pub fn dot4(a: &Vec4, b: &Vec4) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross3(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn norm3(a: &[f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}

/// Real 4×4 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat4(pub [[f64; 4]; 4]);

impl Mat4 {
    pub fn zero() -> Self {
        Mat4([[0.0; 4]; 4])
    }

    pub fn identity() -> Self {
        Mat4::from_diag([1.0, 1.0, 1.0, 1.0])
    }

    pub fn from_diag(d: [f64; 4]) -> Self {
        let mut m = Mat4::zero();
        for i in 0..4 {
            m.0[i][i] = d[i];
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut t = Mat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                t.0[i][j] = self.0[j][i];
            }
        }
        t
    }

    pub fn trace(&self) -> f64 {
        (0..4).map(|i| self.0[i][i]).sum()
    }

    pub fn mul_vec(&self, v: &Vec4) -> Vec4 {
        let mut out = [0.0; 4];
        for i in 0..4 {
            out[i] = dot4(&self.0[i], v);
        }
        out
    }

    /// Largest absolute entry (max norm).
    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .fold(0.0_f64, |acc, x| acc.max(x.abs()))
    }

    /// Maximum absolute column sum (operator 1-norm).
    pub fn one_norm(&self) -> f64 {
        (0..4)
            .map(|j| (0..4).map(|i| self.0[i][j].abs()).sum::<f64>())
            .fold(0.0_f64, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Mat4) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_finite())
    }

    pub fn symmetry_residual(&self) -> f64 {
        self.max_abs_diff(&self.transpose())
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self) -> f64 {
        let m = &self.0;
        let minor = |r: [usize; 3], c: [usize; 3]| -> f64 {
            m[r[0]][c[0]] * (m[r[1]][c[1]] * m[r[2]][c[2]] - m[r[1]][c[2]] * m[r[2]][c[1]])
                - m[r[0]][c[1]] * (m[r[1]][c[0]] * m[r[2]][c[2]] - m[r[1]][c[2]] * m[r[2]][c[0]])
                + m[r[0]][c[2]] * (m[r[1]][c[0]] * m[r[2]][c[1]] - m[r[1]][c[1]] * m[r[2]][c[0]])
        };
        m[0][0] * minor([1, 2, 3], [1, 2, 3]) - m[0][1] * minor([1, 2, 3], [0, 2, 3])
            + m[0][2] * minor([1, 2, 3], [0, 1, 3])
            - m[0][3] * minor([1, 2, 3], [0, 1, 2])
    }
}

impl std::ops::Index<(usize, usize)> for Mat4 {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.0[i][j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat4 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.0[i][j]
    }
}

impl std::ops::Add for Mat4 {
    type Output = Mat4;
    fn add(self, rhs: Mat4) -> Mat4 {
        let mut out = Mat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] = self.0[i][j] + rhs.0[i][j];
            }
        }
        out
    }
}

impl std::ops::Sub for Mat4 {
    type Output = Mat4;
    fn sub(self, rhs: Mat4) -> Mat4 {
        let mut out = Mat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] = self.0[i][j] - rhs.0[i][j];
            }
        }
        out
    }
}

impl std::ops::Neg for Mat4 {
    type Output = Mat4;
    fn neg(self) -> Mat4 {
        self * -1.0
    }
}

impl std::ops::Mul for Mat4 {
    type Output = Mat4;
    fn mul(self, rhs: Mat4) -> Mat4 {
        let mut out = Mat4::zero();
        for i in 0..4 {
            for k in 0..4 {
                let a = self.0[i][k];
                if a == 0.0 {
                    continue;
                }
                for j in 0..4 {
                    out.0[i][j] += a * rhs.0[k][j];
                }
            }
        }
        out
    }
}

impl std::ops::Mul<f64> for Mat4 {
    type Output = Mat4;
    fn mul(self, s: f64) -> Mat4 {
        let mut out = self;
        for row in out.0.iter_mut() {
            for x in row.iter_mut() {
                *x *= s;
            }
        }
        out
    }
}

/// Eigendecomposition of a symmetric 4×4 matrix.
///
/// Returns eigenvalues in ascending order and the matrix whose columns are
/// the matching orthonormal eigenvectors.
pub fn sym_eigen(m: &Mat4) -> ([f64; 4], Mat4) {
    let a: Vec<f64> = m.0.iter().flatten().copied().collect();
    let (vals, vecs) = jacobi_eigh(a, 4);
    let mut evals = [0.0; 4];
    evals.copy_from_slice(&vals);
    let mut v = Mat4::zero();
    for i in 0..4 {
        for j in 0..4 {
            v.0[i][j] = vecs[i * 4 + j];
        }
    }
    (evals, v)
}

/// Cyclic Jacobi eigensolver for a symmetric n×n matrix in row-major order.
///
/// Returns (eigenvalues ascending, eigenvectors row-major with columns
/// matching the eigenvalues). Jacobi is preferred here because it computes
/// small eigenvalues of positive definite matrices to high relative
/// accuracy, which the polar decomposition relies on.
pub(crate) fn jacobi_eigh(mut a: Vec<f64>, n: usize) -> (Vec<f64>, Vec<f64>) {
    debug_assert_eq!(a.len(), n * n);
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let scale = a
        .iter()
        .fold(0.0_f64, |acc, x| acc.max(x.abs()))
        .max(1e-300);

    for _sweep in 0..64 {
        let off: f64 = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j] * a[i * n + j])
            .sum();
        if off.sqrt() <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() <= 1e-18 * scale {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let tau = (aqq - app) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].partial_cmp(&a[j * n + j]).unwrap());
    let vals: Vec<f64> = order.iter().map(|&i| a[i * n + i]).collect();
    let mut vecs = vec![0.0; n * n];
    for (newcol, &oldcol) in order.iter().enumerate() {
        for r in 0..n {
            vecs[r * n + newcol] = v[r * n + oldcol];
        }
    }
    (vals, vecs)
}

/// Matrix exponential.
///
/// Symmetric inputs go through the eigendecomposition; everything else uses
/// Padé(13) with scaling and squaring. Accurate to better than 1e-12
/// relative error for inputs of norm up to ~10.
pub fn expm(m: &Mat4) -> Result<Mat4, Error> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let result = if m.symmetry_residual() <= 1e-14 * m.max_abs().max(1.0) {
        expm_symmetric(m)
    } else {
        expm_pade(m)?
    };
    if !result.is_finite() {
        return Err(Error::Overflow { norm: m.one_norm() });
    }
    Ok(result)
}

fn expm_symmetric(m: &Mat4) -> Mat4 {
    let (vals, vecs) = sym_eigen(m);
    let exps = vals.map(f64::exp);
    sym_recompose(&exps, &vecs)
}

/// Builds sum_k f_k v_k v_k^T from eigenpairs, mirroring the upper triangle
/// so the result is symmetric to the bit.
pub(crate) fn sym_recompose(factors: &[f64; 4], vecs: &Mat4) -> Mat4 {
    let mut out = Mat4::zero();
    for i in 0..4 {
        for j in i..4 {
            let mut acc = 0.0;
            for k in 0..4 {
                acc += vecs.0[i][k] * factors[k] * vecs.0[j][k];
            }
            out.0[i][j] = acc;
            out.0[j][i] = acc;
        }
    }
    out
}

// Padé(13) numerator/denominator coefficients (Higham 2005).
const PADE13: [f64; 14] = [
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
const THETA13: f64 = 5.371920351148152;

fn expm_pade(m: &Mat4) -> Result<Mat4, Error> {
    let norm = m.one_norm();
    let s = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as i32
    } else {
        0
    };
    let a = *m * 0.5_f64.powi(s);
    let b = &PADE13;
    let id = Mat4::identity();
    let a2 = a * a;
    let a4 = a2 * a2;
    let a6 = a2 * a4;

    let u_inner =
        a6 * (a6 * b[13] + a4 * b[11] + a2 * b[9]) + a6 * b[7] + a4 * b[5] + a2 * b[3] + id * b[1];
    let u = a * u_inner;
    let v =
        a6 * (a6 * b[12] + a4 * b[10] + a2 * b[8]) + a6 * b[6] + a4 * b[4] + a2 * b[2] + id * b[0];

    // r = (V - U)^{-1} (V + U), then square s times.
    let mut r = solve(v - u, v + u)?;
    for _ in 0..s {
        r = r * r;
    }
    Ok(r)
}

/// Solves A X = B by Gaussian elimination with partial pivoting.
pub(crate) fn solve(a: Mat4, b: Mat4) -> Result<Mat4, Error> {
    let mut a = a.0;
    let mut x = b.0;
    for col in 0..4 {
        let pivot = (col..4)
            .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())
            .unwrap();
        if a[pivot][col].abs() < 1e-300 {
            return Err(Error::Singular);
        }
        a.swap(col, pivot);
        x.swap(col, pivot);
        let inv = 1.0 / a[col][col];
        for row in 0..4 {
            if row == col {
                continue;
            }
            let factor = a[row][col] * inv;
            if factor == 0.0 {
                continue;
            }
            for k in 0..4 {
                a[row][k] -= factor * a[col][k];
                x[row][k] -= factor * x[col][k];
            }
        }
    }
    for row in 0..4 {
        let inv = 1.0 / a[row][row];
        for k in 0..4 {
            x[row][k] *= inv;
        }
    }
    Ok(Mat4(x))
}

/// Complex 2×2 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct C2(pub [[Complex64; 2]; 2]);

impl C2 {
    pub fn zero() -> Self {
        C2([[Complex64::new(0.0, 0.0); 2]; 2])
    }

    pub fn identity() -> Self {
        let mut m = C2::zero();
        m.0[0][0] = Complex64::new(1.0, 0.0);
        m.0[1][1] = Complex64::new(1.0, 0.0);
        m
    }

    pub fn from_re_im(re: [[f64; 2]; 2], im: [[f64; 2]; 2]) -> Self {
        let mut m = C2::zero();
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = Complex64::new(re[i][j], im[i][j]);
            }
        }
        m
    }

    pub fn re(&self) -> [[f64; 2]; 2] {
        [
            [self.0[0][0].re, self.0[0][1].re],
            [self.0[1][0].re, self.0[1][1].re],
        ]
    }

    pub fn im(&self) -> [[f64; 2]; 2] {
        [
            [self.0[0][0].im, self.0[0][1].im],
            [self.0[1][0].im, self.0[1][1].im],
        ]
    }

    pub fn adjoint(&self) -> Self {
        let mut m = C2::zero();
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    pub fn det(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut m = *self;
        for row in m.0.iter_mut() {
            for x in row.iter_mut() {
                *x *= s;
            }
        }
        m
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .fold(0.0_f64, |acc, x| acc.max(x.norm()))
    }

    pub fn max_abs_diff(&self, other: &C2) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn fro_norm(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|x| x.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.0
            .iter()
            .flatten()
            .all(|x| x.re.is_finite() && x.im.is_finite())
    }
}

impl std::ops::Mul for C2 {
    type Output = C2;
    fn mul(self, rhs: C2) -> C2 {
        let mut out = C2::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self.0[i][0] * rhs.0[0][j] + self.0[i][1] * rhs.0[1][j];
            }
        }
        out
    }
}

impl std::ops::Sub for C2 {
    type Output = C2;
    fn sub(self, rhs: C2) -> C2 {
        let mut out = C2::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self.0[i][j] - rhs.0[i][j];
            }
        }
        out
    }
}

/// Complex 4×4 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct C4(pub [[Complex64; 4]; 4]);

impl C4 {
    pub fn zero() -> Self {
        C4([[Complex64::new(0.0, 0.0); 4]; 4])
    }

    pub fn identity() -> Self {
        let mut m = C4::zero();
        for i in 0..4 {
            m.0[i][i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_real(m: &Mat4) -> Self {
        let mut out = C4::zero();
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] = Complex64::new(m.0[i][j], 0.0);
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let mut m = C4::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = C4::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = self.0[j][i];
            }
        }
        m
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .fold(0.0_f64, |acc, x| acc.max(x.norm()))
    }

    pub fn max_abs_diff(&self, other: &C4) -> f64 {
        (*self - *other).max_abs()
    }
}

impl std::ops::Mul for C4 {
    type Output = C4;
    fn mul(self, rhs: C4) -> C4 {
        let mut out = C4::zero();
        for i in 0..4 {
            for k in 0..4 {
                let a = self.0[i][k];
                for j in 0..4 {
                    out.0[i][j] += a * rhs.0[k][j];
                }
            }
        }
        out
    }
}

impl std::ops::Sub for C4 {
    type Output = C4;
    fn sub(self, rhs: C4) -> C4 {
        let mut out = C4::zero();
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] = self.0[i][j] - rhs.0[i][j];
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expm_zero_is_identity() {
        let e = expm(&Mat4::zero()).unwrap();
        assert!(e.max_abs_diff(&Mat4::identity()) < 1e-15);
    }

    #[test]
    fn expm_diagonal() {
        let (x, y) = (0.7, -1.3);
        let e = expm(&Mat4::from_diag([x, y, -x, -y])).unwrap();
        let want = Mat4::from_diag([x.exp(), y.exp(), (-x).exp(), (-y).exp()]);
        assert!(e.max_abs_diff(&want) < 1e-14);
    }

    #[test]
    fn expm_rotation_blocks() {
        // Antisymmetric block generator: rotates each (q_j, p_j) plane by theta.
        let theta = 1.1_f64;
        let mut g = Mat4::zero();
        g.0[0][2] = -1.0;
        g.0[1][3] = -1.0;
        g.0[2][0] = 1.0;
        g.0[3][1] = 1.0;
        let e = expm(&(g * theta)).unwrap();
        let (c, s) = (theta.cos(), theta.sin());
        let want = Mat4([
            [c, 0.0, -s, 0.0],
            [0.0, c, 0.0, -s],
            [s, 0.0, c, 0.0],
            [0.0, s, 0.0, c],
        ]);
        assert!(e.max_abs_diff(&want) < 1e-14);
    }

    #[test]
    fn expm_inverse_consistency() {
        let m = Mat4([
            [0.3, -1.2, 0.4, 0.9],
            [0.8, 0.1, -0.5, 0.2],
            [-0.7, 0.6, 0.0, -1.1],
            [0.2, -0.3, 1.4, 0.5],
        ]);
        let e = expm(&m).unwrap();
        let einv = expm(&(-m)).unwrap();
        assert!((e * einv).max_abs_diff(&Mat4::identity()) < 1e-13);
        // Squaring consistency: exp(m) = exp(m/2)^2.
        let h = expm(&(m * 0.5)).unwrap();
        assert!((h * h).max_abs_diff(&e) < 1e-12);
    }

    #[test]
    fn expm_rejects_non_finite() {
        let mut m = Mat4::zero();
        m.0[0][0] = f64::NAN;
        assert!(matches!(expm(&m), Err(Error::NonFinite)));
    }

    #[test]
    fn expm_overflows_extreme_norm() {
        let m = Mat4::from_diag([800.0, 0.0, -800.0, 0.0]);
        assert!(matches!(expm(&m), Err(Error::Overflow { .. })));
    }

    #[test]
    fn sym_eigen_recomposes() {
        let m = Mat4([
            [2.0, 0.5, -0.3, 0.1],
            [0.5, 1.0, 0.2, -0.4],
            [-0.3, 0.2, 3.0, 0.6],
            [0.1, -0.4, 0.6, 0.5],
        ]);
        let (vals, vecs) = sym_eigen(&m);
        assert!(vals.windows(2).all(|w| w[0] <= w[1]));
        let mut recomposed = Mat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    recomposed.0[i][j] += vecs.0[i][k] * vals[k] * vecs.0[j][k];
                }
            }
        }
        assert!(recomposed.max_abs_diff(&m) < 1e-13);
        assert!((vecs * vecs.transpose()).max_abs_diff(&Mat4::identity()) < 1e-13);
    }

    #[test]
    fn solve_recovers_inverse() {
        let a = Mat4([
            [4.0, 1.0, 0.0, 2.0],
            [1.0, 3.0, -1.0, 0.0],
            [0.0, -1.0, 2.0, 1.0],
            [2.0, 0.0, 1.0, 5.0],
        ]);
        let inv = solve(a, Mat4::identity()).unwrap();
        assert!((a * inv).max_abs_diff(&Mat4::identity()) < 1e-13);
    }

    #[test]
    fn det_of_known_matrix() {
        assert!((Mat4::from_diag([2.0, 3.0, 0.5, 1.0 / 3.0]).det() - 1.0).abs() < 1e-15);
        assert!((Mat4::identity().det() - 1.0).abs() < 1e-15);
    }
}
