//! Passive-equivalence classification of squeezing transformations.
//!
//! A squeezing transformation is a single exponential of the noncompact
//! generators, parameterized by two real 3-vectors (k, l). Conjugation by
//! the passive subgroup U(2) acts on (k, l) by a joint plane rotation and a
//! common SO(3) rotation, leaving exactly two invariants: det and trace of
//! the Gram matrix of the pair. Each orbit is labelled by (a, b) with
//! a >= b >= 0 and has the diagonal representative
//! diag(e^{(a-b)/2}, e^{(a+b)/2}, e^{-(a-b)/2}, e^{-(a+b)/2}).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::linalg::{cross3, dot3, expm, norm3, sym_eigen, Mat4};
use crate::symplectic::{
    extract_u2, generator_matrix, polar_decompose, Generator, Sp4Matrix, U2Element,
};

/// Threshold below which a label or invariant pair counts as "no squeeze".
const NO_SQUEEZE_EPS: f64 = 1e-12;

/// Coefficient pair (k, l) of a squeezing transformation
/// exp(k.g_K + l.g_L).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SqueezeVectors {
    pub k: [f64; 3],
    pub l: [f64; 3],
}

impl SqueezeVectors {
    pub fn new(k: [f64; 3], l: [f64; 3]) -> Self {
        SqueezeVectors { k, l }
    }

    pub fn is_zero(&self) -> bool {
        norm3(&self.k) == 0.0 && norm3(&self.l) == 0.0
    }
}

/// Gram matrix of scalar products of the squeeze vectors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GramMatrix {
    pub kk: f64,
    pub kl: f64,
    pub ll: f64,
}

impl GramMatrix {
    pub fn as_matrix(&self) -> [[f64; 2]; 2] {
        [[self.kk, self.kl], [self.kl, self.ll]]
    }

    pub fn det(&self) -> f64 {
        self.kk * self.ll - self.kl * self.kl
    }

    pub fn trace(&self) -> f64 {
        self.kk + self.ll
    }
}

/// The two conjugation invariants: i1 = det M = |k x l|^2 and
/// i2 = tr M = |k|^2 + |l|^2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InvariantPair {
    pub i1: f64,
    pub i2: f64,
}

/// Orbit label (a, b) with a >= b >= 0.
///
/// The origin (0, 0) is representable but flagged: it corresponds to no
/// squeezing at all, and callers must branch on [`ClassLabel::no_squeeze`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassLabel {
    a: f64,
    b: f64,
    no_squeeze: bool,
}

impl ClassLabel {
    pub fn new(a: f64, b: f64) -> Result<Self, Error> {
        if !(a.is_finite() && b.is_finite() && a >= b && b >= 0.0) {
            return Err(Error::InvalidClassLabel { a, b });
        }
        Ok(ClassLabel {
            a,
            b,
            no_squeeze: a <= NO_SQUEEZE_EPS,
        })
    }

    /// The flagged identity class.
    pub fn no_squeeze_label() -> Self {
        ClassLabel {
            a: 0.0,
            b: 0.0,
            no_squeeze: true,
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn no_squeeze(&self) -> bool {
        self.no_squeeze
    }
}

/// Scalar products of the pair (k, l).
pub fn gram_matrix(v: &SqueezeVectors) -> GramMatrix {
    GramMatrix {
        kk: dot3(&v.k, &v.k),
        kl: dot3(&v.k, &v.l),
        ll: dot3(&v.l, &v.l),
    }
}

/// The two passive-conjugation invariants of a squeeze-vector pair.
pub fn invariants(v: &SqueezeVectors) -> InvariantPair {
    let cross = cross3(&v.k, &v.l);
    InvariantPair {
        i1: dot3(&cross, &cross),
        i2: dot3(&v.k, &v.k) + dot3(&v.l, &v.l),
    }
}

/// Solves i1 = a^2 b^2, i2 = a^2 + b^2 for the label: a^2 and b^2 are the
/// roots of x^2 - i2 x + i1 = 0 with a >= b >= 0.
///
/// i2 = 0 signals the identity class and yields the flagged label. Near the
/// degenerate line a = b the explicit discriminant loses half the digits to
/// cancellation; when the vectors themselves are available prefer
/// [`class_of_vectors`].
pub fn class_from_invariants(p: &InvariantPair) -> ClassLabel {
    if p.i2 <= NO_SQUEEZE_EPS {
        return ClassLabel::no_squeeze_label();
    }
    let disc = (p.i2 * p.i2 - 4.0 * p.i1).max(0.0).sqrt();
    let a = ((p.i2 + disc) / 2.0).max(0.0).sqrt();
    let b = ((p.i2 - disc) / 2.0).max(0.0).sqrt();
    ClassLabel {
        a,
        b,
        no_squeeze: false,
    }
}

/// Label of a squeeze-vector pair through the orthogonalizing rotation.
///
/// Same invariants as [`class_from_invariants`], but a and b are read off
/// as the norms of the rotated vectors (one-sided Jacobi style) instead of
/// through the quadratic discriminant, so the degenerate families b = 0 and
/// a = b resolve to full precision instead of sqrt(epsilon).
pub fn class_of_vectors(v: &SqueezeVectors) -> ClassLabel {
    if v.is_zero() {
        return ClassLabel::no_squeeze_label();
    }
    let theta = orthogonalizing_angle(&gram_matrix(v));
    let (k1, l1) = rotate_pair(v, theta);
    let (hi, lo) = (norm3(&k1).max(norm3(&l1)), norm3(&k1).min(norm3(&l1)));
    if hi <= NO_SQUEEZE_EPS {
        return ClassLabel::no_squeeze_label();
    }
    ClassLabel {
        a: hi,
        b: lo,
        no_squeeze: false,
    }
}

/// Plane-rotation angle that diagonalizes the Gram matrix with the larger
/// eigenvalue in the k slot; 0 when the matrix is already so or degenerate.
fn orthogonalizing_angle(m: &GramMatrix) -> f64 {
    if m.kl.abs() < 1e-300 && m.kk >= m.ll {
        0.0
    } else {
        0.5 * (-2.0 * m.kl).atan2(m.kk - m.ll)
    }
}

fn rotate_pair(v: &SqueezeVectors, theta: f64) -> ([f64; 3], [f64; 3]) {
    let (c, s) = (theta.cos(), theta.sin());
    let mut k1 = [0.0; 3];
    let mut l1 = [0.0; 3];
    for i in 0..3 {
        k1[i] = c * v.k[i] - s * v.l[i];
        l1[i] = s * v.k[i] + c * v.l[i];
    }
    (k1, l1)
}

/// The transforms that bring a squeeze-vector pair to canonical position
/// k = (0, a, 0), l = (b, 0, 0).
#[derive(Debug, Clone, Copy)]
pub struct Canonicalization {
    /// Plane-rotation angle applied jointly to (k, l) first.
    pub theta: f64,
    /// SO(3) rotation applied to both vectors second, acting as r * v.
    pub rotation: [[f64; 3]; 3],
    pub label: ClassLabel,
}

impl Canonicalization {
    /// Applies theta then the rotation to a pair, for round-trip checks.
    pub fn apply(&self, v: &SqueezeVectors) -> SqueezeVectors {
        let (c, s) = (self.theta.cos(), self.theta.sin());
        let mut k1 = [0.0; 3];
        let mut l1 = [0.0; 3];
        for i in 0..3 {
            k1[i] = c * v.k[i] - s * v.l[i];
            l1[i] = s * v.k[i] + c * v.l[i];
        }
        SqueezeVectors {
            k: rot3_apply(&self.rotation, &k1),
            l: rot3_apply(&self.rotation, &l1),
        }
    }
}

fn rot3_apply(r: &[[f64; 3]; 3], v: &[f64; 3]) -> [f64; 3] {
    [dot3(&r[0], v), dot3(&r[1], v), dot3(&r[2], v)]
}

/// Minimal-angle rotation carrying unit vector `from` to unit vector `to`.
fn rotation_between(from: &[f64; 3], to: &[f64; 3]) -> [[f64; 3]; 3] {
    let cos = dot3(from, to).clamp(-1.0, 1.0);
    let axis = cross3(from, to);
    let sin = norm3(&axis);
    if sin < 1e-14 {
        if cos > 0.0 {
            return [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        }
        // Antipodal: rotate by pi about the coordinate axis most orthogonal
        // to `from` (projected and normalized).
        let pick = if from[0].abs() <= from[1].abs() && from[0].abs() <= from[2].abs() {
            [1.0, 0.0, 0.0]
        } else if from[1].abs() <= from[2].abs() {
            [0.0, 1.0, 0.0]
        } else {
            [0.0, 0.0, 1.0]
        };
        let proj = dot3(&pick, from);
        let mut axis = [
            pick[0] - proj * from[0],
            pick[1] - proj * from[1],
            pick[2] - proj * from[2],
        ];
        let n = norm3(&axis);
        for x in axis.iter_mut() {
            *x /= n;
        }
        return rodrigues(&axis, std::f64::consts::PI);
    }
    let axis_unit = [axis[0] / sin, axis[1] / sin, axis[2] / sin];
    rodrigues(&axis_unit, sin.atan2(cos))
}

/// Rodrigues rotation matrix about a unit axis.
fn rodrigues(axis: &[f64; 3], angle: f64) -> [[f64; 3]; 3] {
    let (c, s) = (angle.cos(), angle.sin());
    let omc = 1.0 - c;
    let (x, y, z) = (axis[0], axis[1], axis[2]);
    [
        [c + x * x * omc, x * y * omc - z * s, x * z * omc + y * s],
        [y * x * omc + z * s, c + y * y * omc, y * z * omc - x * s],
        [z * x * omc - y * s, z * y * omc + x * s, c + z * z * omc],
    ]
}

/// Finds the plane rotation and SO(3) rotation mapping a nonzero pair to
/// the canonical position k = (0, a, 0), l = (b, 0, 0).
///
/// The angle is chosen so the rotated Gram matrix is diagonal with its
/// larger eigenvalue first; ties (a = b) pick theta = 0, and if one vector
/// vanishes the SO(3) factor is the minimal-angle rotation of the other
/// into its slot.
pub fn canonicalize(v: &SqueezeVectors) -> Result<Canonicalization, Error> {
    if v.is_zero() {
        return Err(Error::ZeroSqueezeVectors);
    }
    let theta = orthogonalizing_angle(&gram_matrix(v));
    let (k1, l1) = rotate_pair(v, theta);
    let a = norm3(&k1);
    let b = norm3(&l1);

    let rotation = if b <= a * 1e-13 {
        let khat = [k1[0] / a, k1[1] / a, k1[2] / a];
        rotation_between(&khat, &[0.0, 1.0, 0.0])
    } else {
        // Orthonormal frame rows: l-direction to e1, k-direction to e2.
        let u2 = [k1[0] / a, k1[1] / a, k1[2] / a];
        let u1 = [l1[0] / b, l1[1] / b, l1[2] / b];
        let u3 = cross3(&u1, &u2);
        [u1, u2, u3]
    };

    // The label comes from the Gram eigenvalues (a = sqrt of the larger).
    let label = ClassLabel::new(a, if b <= a * 1e-13 { 0.0 } else { b })?;
    Ok(Canonicalization {
        theta,
        rotation,
        label,
    })
}

/// The squeezing transformation exp(k.g_K + l.g_L); always a symmetric
/// positive definite symplectic matrix.
pub fn squeeze_symplectic(v: &SqueezeVectors) -> Result<Sp4Matrix, Error> {
    let mut m = Mat4::zero();
    let ks = [Generator::K1, Generator::K2, Generator::K3];
    let ls = [Generator::L1, Generator::L2, Generator::L3];
    for r in 0..3 {
        m = m + generator_matrix(ks[r]) * v.k[r] + generator_matrix(ls[r]) * v.l[r];
    }
    Ok(Sp4Matrix::new_unchecked(expm(&m)?))
}

/// Diagonal representative of the class (a, b):
/// diag(e^{(a-b)/2}, e^{(a+b)/2}, e^{-(a-b)/2}, e^{-(a+b)/2}).
pub fn representative_symplectic(label: &ClassLabel) -> Result<Sp4Matrix, Error> {
    let (a, b) = (label.a(), label.b());
    let d = Mat4::from_diag([
        ((a - b) / 2.0).exp(),
        ((a + b) / 2.0).exp(),
        (-(a - b) / 2.0).exp(),
        (-(a + b) / 2.0).exp(),
    ]);
    if !d.is_finite() {
        return Err(Error::Overflow { norm: a + b });
    }
    Ok(Sp4Matrix::new_unchecked(d))
}

/// Reads the class of a symmetric positive definite symplectic matrix from
/// its eigenvalues {e^{±(a-b)/2}, e^{±(a+b)/2}}.
///
/// Eigenvalues are symmetrized in reciprocal pairs before taking logs, so
/// a >= b >= 0 holds exactly even under rounding.
pub fn class_of_positive(p: &Sp4Matrix) -> Result<ClassLabel, Error> {
    let m = p.matrix();
    let sym_residual = m.symmetry_residual();
    if sym_residual > 1e-9 * m.max_abs().max(1.0) {
        return Err(Error::NotSymmetric {
            residual: sym_residual,
        });
    }
    let sym = (*m + m.transpose()) * 0.5;
    let (vals, _) = sym_eigen(&sym);
    if vals[0] <= 0.0 {
        return Err(Error::NotPositiveDefinite {
            min_eigenvalue: vals[0],
        });
    }
    // Sorted ascending, the reciprocal pairs are (v0, v3) and (v1, v2).
    let mu1 = (vals[3] / vals[0]).sqrt(); // e^{(a+b)/2}
    let mu2 = (vals[2] / vals[1]).sqrt(); // e^{(a-b)/2}
    let a = (mu1 * mu2).ln();
    let b = (mu1 / mu2).ln().max(0.0);
    if a <= NO_SQUEEZE_EPS {
        return Ok(ClassLabel::no_squeeze_label());
    }
    ClassLabel::new(a, b)
}

/// Polar-decomposes S and classifies the positive factor. The label is
/// invariant under passive conjugation of S; the returned unitary is the
/// passive factor of S itself.
pub fn classify_symplectic(s: &Sp4Matrix) -> Result<(ClassLabel, U2Element), Error> {
    let polar = polar_decompose(s)?;
    let label = class_of_positive(&polar.positive)?;
    let passive = extract_u2(&polar.passive, 1e-8)?;
    Ok((label, passive))
}

/// Squeeze vectors of the two-mode squeeze exp(z a1* a2* - conj(z) a1 a2):
/// k = -2(0, 0, Im z), l = 2(0, 0, Re z). Class (2|z|, 0).
pub fn caves_schumaker_vectors(z: Complex64) -> SqueezeVectors {
    SqueezeVectors {
        k: [0.0, 0.0, -2.0 * z.im],
        l: [0.0, 0.0, 2.0 * z.re],
    }
}

/// Squeeze vectors of a single dressed-mode squeeze that masquerades as a
/// two-mode transformation: the squeeze of alpha a1 + beta a2 by z.
///
/// k + il = 2z(-i(a*^2 - b*^2), a*^2 + b*^2, 2i a* b*); class (2|z|, 2|z|).
pub fn single_mode_vectors(
    z: Complex64,
    alpha: Complex64,
    beta: Complex64,
) -> Result<SqueezeVectors, Error> {
    let norm_sq = alpha.norm_sqr() + beta.norm_sqr();
    if (norm_sq - 1.0).abs() > 1e-10 {
        return Err(Error::UnnormalizedModeWeights { norm_sq });
    }
    let ac2 = alpha.conj() * alpha.conj();
    let bc2 = beta.conj() * beta.conj();
    let i = Complex64::new(0.0, 1.0);
    let combo = [
        2.0 * z * (-i * (ac2 - bc2)),
        2.0 * z * (ac2 + bc2),
        2.0 * z * (2.0 * i * alpha.conj() * beta.conj()),
    ];
    Ok(SqueezeVectors {
        k: [combo[0].re, combo[1].re, combo[2].re],
        l: [combo[0].im, combo[1].im, combo[2].im],
    })
}

/// Class of the positive polar factor of the product P1 P2 of two squeezes.
///
/// The result depends on the actual elements, not only on their classes;
/// the two cosh trace identities are verified before returning.
pub fn product_class(p1: &Sp4Matrix, p2: &Sp4Matrix) -> Result<ClassLabel, Error> {
    for p in [p1, p2] {
        let residual = p.matrix().symmetry_residual();
        if residual > 1e-9 * p.matrix().max_abs().max(1.0) {
            return Err(Error::NotSymmetric { residual });
        }
    }
    let product = *p1 * *p2;
    let polar = polar_decompose(&product)?;
    let label = class_of_positive(&polar.positive)?;

    let t = *product.matrix() * product.matrix().transpose();
    let (a, b) = (label.a(), label.b());
    let lhs1 = 2.0 * ((a - b).cosh() + (a + b).cosh());
    let lhs2 = 2.0 * ((2.0 * (a - b)).cosh() + (2.0 * (a + b)).cosh());
    let r1 = (lhs1 - t.trace()).abs();
    let r2 = (lhs2 - (t * t).trace()).abs();
    let scale = t.trace().abs().max(1.0);
    if r1 > 1e-8 * scale || r2 > 1e-8 * scale * scale {
        return Err(Error::NotPositiveDefinite {
            min_eigenvalue: f64::NAN,
        });
    }
    Ok(label)
}

/// The measure 1 - b/a of how essentially two-mode a class is: 1 on the
/// b = 0 boundary, 0 on the single-mode line a = b.
pub fn two_mode_character(label: &ClassLabel) -> Result<f64, Error> {
    if label.no_squeeze() || label.a() == 0.0 {
        return Err(Error::IdentityClass);
    }
    Ok(1.0 - label.b() / label.a())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::C2;
    use crate::symplectic::embed_u2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gram_examples() {
        let g = gram_matrix(&SqueezeVectors::new([0.0, 2.0, 0.0], [1.0, 0.0, 0.0]));
        assert_eq!(g.as_matrix(), [[4.0, 0.0], [0.0, 1.0]]);
        let g = gram_matrix(&SqueezeVectors::new([1.0, 0.0, 0.0], [1.0, 0.0, 0.0]));
        assert_eq!(g.as_matrix(), [[1.0, 1.0], [1.0, 1.0]]);
        let g = gram_matrix(&caves_schumaker_vectors(c(0.5, 0.0)));
        assert_eq!(g.as_matrix(), [[0.0, 0.0], [0.0, 1.0]]);
    }

    #[test]
    fn invariant_examples() {
        let p = invariants(&SqueezeVectors::new([0.0, 2.0, 0.0], [1.0, 0.0, 0.0]));
        assert_eq!((p.i1, p.i2), (4.0, 5.0));
        // Masquerade vectors for z = 0.5 give (16|z|^4, 8|z|^2) = (1, 2).
        let v = single_mode_vectors(c(0.5, 0.0), c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        let p = invariants(&v);
        assert!((p.i1 - 1.0).abs() < 1e-14);
        assert!((p.i2 - 2.0).abs() < 1e-14);
        let p = invariants(&SqueezeVectors::new([0.0; 3], [0.0; 3]));
        assert_eq!((p.i1, p.i2), (0.0, 0.0));
    }

    #[test]
    fn labels_from_invariants() {
        let l = class_from_invariants(&InvariantPair { i1: 4.0, i2: 5.0 });
        assert!((l.a() - 2.0).abs() < 1e-14 && (l.b() - 1.0).abs() < 1e-14);
        let l = class_from_invariants(&InvariantPair { i1: 1.0, i2: 2.0 });
        assert!((l.a() - 1.0).abs() < 1e-14 && (l.b() - 1.0).abs() < 1e-14);
        let l = class_from_invariants(&InvariantPair { i1: 0.0, i2: 4.0 });
        assert!((l.a() - 2.0).abs() < 1e-14 && l.b() == 0.0);
        assert!(class_from_invariants(&InvariantPair { i1: 0.0, i2: 0.0 }).no_squeeze());
    }

    #[test]
    fn label_validation() {
        assert!(ClassLabel::new(1.0, 2.0).is_err());
        assert!(ClassLabel::new(1.0, -0.1).is_err());
        assert!(ClassLabel::new(f64::NAN, 0.0).is_err());
        assert!(ClassLabel::new(0.0, 0.0).unwrap().no_squeeze());
        assert!(!ClassLabel::new(1.0, 0.5).unwrap().no_squeeze());
    }

    #[test]
    fn canonicalize_fixed_point() {
        let v = SqueezeVectors::new([0.0, 1.4, 0.0], [0.6, 0.0, 0.0]);
        let canon = canonicalize(&v).unwrap();
        assert_eq!(canon.theta, 0.0);
        assert_eq!(
            canon.rotation,
            [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
        );
        let out = canon.apply(&v);
        assert!((out.k[1] - 1.4).abs() < 1e-14 && (out.l[0] - 0.6).abs() < 1e-14);
    }

    #[test]
    fn canonicalize_caves_schumaker() {
        let v = caves_schumaker_vectors(c(0.5, 0.0));
        let canon = canonicalize(&v).unwrap();
        assert!((canon.label.a() - 1.0).abs() < 1e-14);
        assert_eq!(canon.label.b(), 0.0);
        let out = canon.apply(&v);
        assert!((out.k[0]).abs() < 1e-13 && (out.k[1] - 1.0).abs() < 1e-13);
        assert!(norm3(&out.l) < 1e-13);
    }

    #[test]
    fn canonicalize_rejects_zero() {
        assert!(matches!(
            canonicalize(&SqueezeVectors::new([0.0; 3], [0.0; 3])),
            Err(Error::ZeroSqueezeVectors)
        ));
    }

    #[test]
    fn squeeze_of_canonical_pair_is_diagonal() {
        let s = squeeze_symplectic(&SqueezeVectors::new([0.0; 3], [0.0; 3])).unwrap();
        assert_eq!(s.matrix(), &Mat4::identity());
        let (a, b) = (1.1, 0.3);
        let s = squeeze_symplectic(&SqueezeVectors::new([0.0, a, 0.0], [b, 0.0, 0.0])).unwrap();
        let want = representative_symplectic(&ClassLabel::new(a, b).unwrap()).unwrap();
        assert!(s.matrix().max_abs_diff(want.matrix()) < 1e-13);
    }

    #[test]
    fn squeeze_is_symmetric_positive() {
        let s =
            squeeze_symplectic(&SqueezeVectors::new([0.4, -0.8, 0.2], [0.9, 0.1, -0.5])).unwrap();
        assert_eq!(s.matrix().symmetry_residual(), 0.0);
        let (vals, _) = sym_eigen(s.matrix());
        assert!(vals[0] > 0.0);
    }

    #[test]
    fn representative_examples() {
        let r = representative_symplectic(&ClassLabel::no_squeeze_label()).unwrap();
        assert_eq!(r.matrix(), &Mat4::identity());
        let r = representative_symplectic(&ClassLabel::new(6.0_f64.ln(), 1.5_f64.ln()).unwrap())
            .unwrap();
        assert!(
            r.matrix()
                .max_abs_diff(&Mat4::from_diag([2.0, 3.0, 0.5, 1.0 / 3.0]))
                < 1e-15
        );
        let r = representative_symplectic(&ClassLabel::new(1.0, 0.0).unwrap()).unwrap();
        let e = 0.5_f64.exp();
        assert!(
            r.matrix()
                .max_abs_diff(&Mat4::from_diag([e, e, 1.0 / e, 1.0 / e]))
                < 1e-15
        );
    }

    #[test]
    fn class_of_positive_examples() {
        let p = Sp4Matrix::try_new(Mat4::from_diag([2.0, 3.0, 0.5, 1.0 / 3.0]), 1e-12).unwrap();
        let label = class_of_positive(&p).unwrap();
        assert!((label.a() - 6.0_f64.ln()).abs() < 1e-12);
        assert!((label.b() - 1.5_f64.ln()).abs() < 1e-12);
        // Cross-check against the trace identity: Tr P = 35/6.
        assert!((p.matrix().trace() - 35.0 / 6.0).abs() < 1e-12);

        assert!(class_of_positive(&Sp4Matrix::identity())
            .unwrap()
            .no_squeeze());

        let cs = squeeze_symplectic(&caves_schumaker_vectors(c(0.5, 0.0))).unwrap();
        let label = class_of_positive(&cs).unwrap();
        assert!((label.a() - 1.0).abs() < 1e-10);
        assert!(label.b().abs() < 1e-10);
    }

    #[test]
    fn class_of_positive_rejects_asymmetric() {
        let theta = 0.5_f64;
        let rot = expm(&(generator_matrix(Generator::Q) * theta)).unwrap();
        let s = Sp4Matrix::try_new(rot, 1e-10).unwrap();
        assert!(matches!(
            class_of_positive(&s),
            Err(Error::NotSymmetric { .. })
        ));
    }

    #[test]
    fn classify_passive_is_no_squeeze() {
        let u = U2Element::try_new(
            C2::from_re_im([[0.6, -0.8], [0.8, 0.6]], [[0.0, 0.0], [0.0, 0.0]]),
            1e-12,
        )
        .unwrap();
        let (label, passive) = classify_symplectic(&embed_u2(&u)).unwrap();
        assert!(label.no_squeeze());
        assert!(passive.matrix().max_abs_diff(u.matrix()) < 1e-10);
    }

    #[test]
    fn classify_recovers_constructed_product() {
        // S = S0(1, 0) * embed(U_H(2.0))
        let rep = representative_symplectic(&ClassLabel::new(1.0, 0.0).unwrap()).unwrap();
        let psi = 2.0_f64;
        let (cc, ss) = ((psi / 2.0).cos(), (psi / 2.0).sin());
        let sq = std::f64::consts::FRAC_1_SQRT_2;
        let uh = U2Element::try_new(
            C2::from_re_im(
                [[sq * cc, sq * cc], [-sq * cc, sq * cc]],
                [[-sq * ss, -sq * ss], [-sq * ss, sq * ss]],
            ),
            1e-12,
        )
        .unwrap();
        let s = rep * embed_u2(&uh);
        let (label, passive) = classify_symplectic(&s).unwrap();
        assert!((label.a() - 1.0).abs() < 1e-10);
        assert!(label.b().abs() < 1e-10);
        assert!(passive.matrix().max_abs_diff(uh.matrix()) < 1e-10);
    }

    #[test]
    fn caves_schumaker_examples() {
        let v = caves_schumaker_vectors(c(0.5, 0.0));
        assert_eq!(v.k, [0.0, 0.0, 0.0]);
        assert_eq!(v.l, [0.0, 0.0, 1.0]);
        let label = class_from_invariants(&invariants(&v));
        assert!((label.a() - 1.0).abs() < 1e-14 && label.b() == 0.0);

        assert!(caves_schumaker_vectors(c(0.0, 0.0)).is_zero());

        let v = caves_schumaker_vectors(c(0.0, 0.5));
        assert_eq!(v.k, [0.0, 0.0, -1.0]);
        assert_eq!(v.l, [0.0, 0.0, 0.0]);
        let label = class_from_invariants(&invariants(&v));
        assert!((label.a() - 1.0).abs() < 1e-14 && label.b() == 0.0);
    }

    #[test]
    fn single_mode_examples() {
        let v = single_mode_vectors(c(0.5, 0.0), c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        // k + il = (-i, 1, 0)
        assert!(norm3(&[v.k[0], v.k[1] - 1.0, v.k[2]]) < 1e-14);
        assert!(norm3(&[v.l[0] + 1.0, v.l[1], v.l[2]]) < 1e-14);
        let label = class_from_invariants(&invariants(&v));
        assert!((label.a() - 1.0).abs() < 1e-14 && (label.b() - 1.0).abs() < 1e-14);

        assert!(single_mode_vectors(c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0))
            .unwrap()
            .is_zero());

        let w = std::f64::consts::FRAC_1_SQRT_2;
        let v = single_mode_vectors(c(0.5, 0.0), c(w, 0.0), c(w, 0.0)).unwrap();
        // k + il = (0, 1, i)
        assert!(norm3(&[v.k[0], v.k[1] - 1.0, v.k[2]]) < 1e-14);
        assert!(norm3(&[v.l[0], v.l[1], v.l[2] - 1.0]) < 1e-14);
        let label = class_from_invariants(&invariants(&v));
        assert!((label.a() - 1.0).abs() < 1e-14 && (label.b() - 1.0).abs() < 1e-14);

        assert!(matches!(
            single_mode_vectors(c(0.5, 0.0), c(1.0, 0.0), c(0.5, 0.0)),
            Err(Error::UnnormalizedModeWeights { .. })
        ));
    }

    #[test]
    fn product_class_examples() {
        let p1 =
            squeeze_symplectic(&SqueezeVectors::new([0.3, -0.2, 0.5], [0.1, 0.4, 0.0])).unwrap();
        let base = class_of_positive(&p1).unwrap();
        let with_identity = product_class(&p1, &Sp4Matrix::identity()).unwrap();
        assert!((with_identity.a() - base.a()).abs() < 1e-10);
        assert!((with_identity.b() - base.b()).abs() < 1e-10);

        let (a, b) = (0.8, 0.3);
        let rep = representative_symplectic(&ClassLabel::new(a, b).unwrap()).unwrap();
        let doubled = product_class(&rep, &rep).unwrap();
        assert!((doubled.a() - 2.0 * a).abs() < 1e-10);
        assert!((doubled.b() - 2.0 * b).abs() < 1e-10);
    }

    #[test]
    fn product_class_rejects_non_symmetric() {
        let rot = expm(&(generator_matrix(Generator::Q) * 0.4)).unwrap();
        let s = Sp4Matrix::try_new(rot, 1e-10).unwrap();
        assert!(product_class(&s, &Sp4Matrix::identity()).is_err());
    }

    #[test]
    fn squeeze_set_is_not_closed_under_products() {
        // The product of two squeezes generally carries a passive factor.
        let p1 = squeeze_symplectic(&SqueezeVectors::new([1.0, 0.0, 0.0], [0.0; 3])).unwrap();
        let p2 = squeeze_symplectic(&SqueezeVectors::new([0.0, 1.0, 0.0], [0.0; 3])).unwrap();
        let polar = polar_decompose(&(*&p1 * *&p2)).unwrap();
        assert!(
            polar.passive.matrix().max_abs_diff(&Mat4::identity()) > 1e-3,
            "passive factor should be far from the identity"
        );
    }

    #[test]
    fn two_mode_character_values() {
        let one = two_mode_character(&ClassLabel::new(1.0, 0.0).unwrap()).unwrap();
        assert_eq!(one, 1.0);
        let zero = two_mode_character(&ClassLabel::new(1.0, 1.0).unwrap()).unwrap();
        assert_eq!(zero, 0.0);
        let mixed =
            two_mode_character(&ClassLabel::new(6.0_f64.ln(), 1.5_f64.ln()).unwrap()).unwrap();
        assert!((mixed - (1.0 - 1.5_f64.ln() / 6.0_f64.ln())).abs() < 1e-15);
        assert!((mixed - 0.7737).abs() < 1e-4);
        assert!(two_mode_character(&ClassLabel::no_squeeze_label()).is_err());
    }
}
