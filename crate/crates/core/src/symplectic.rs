//! Representation-level linear algebra for two-mode phase space: the
//! symplectic form, the map between hermitian and complex mode coordinates,
//! the passive U(2) embedding, the ten algebra generators, and the polar
//! decomposition into squeeze and passive factors.
//!
//! Quadrature ordering is (q1, q2, p1, p2) throughout.

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::linalg::{sym_eigen, Mat4, C2, C4};

/// Default tolerance for structural identities (symplectic condition,
/// unitarity, block form).
pub const DEFAULT_TOL: f64 = 1e-10;

/// The fixed antisymmetric form matrix with blocks [[0, I2], [-I2, 0]].
///
/// Encodes the canonical commutation relations in the (q1, q2, p1, p2)
/// ordering. Satisfies beta = -beta^{-1} = -beta^T exactly and is itself
/// symplectic.
pub fn beta_form() -> Mat4 {
    Mat4([
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, -1.0, 0.0, 0.0],
    ])
}

/// The unitary map from hermitian quadratures (q1, q2, p1, p2) to complex
/// mode coordinates (a1, a2, a1*, a2*), with the 1/sqrt(2) normalization.
pub fn omega_map() -> C4 {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let re = |x: f64| Complex64::new(x, 0.0);
    let im = |x: f64| Complex64::new(0.0, x);
    C4([
        [re(s), re(0.0), im(s), re(0.0)],
        [re(0.0), re(s), re(0.0), im(s)],
        [re(s), re(0.0), im(-s), re(0.0)],
        [re(0.0), re(s), re(0.0), im(-s)],
    ])
}

/// Max-norm residual of the symplectic condition S beta S^T = beta.
pub fn symplectic_residual(m: &Mat4) -> f64 {
    let beta = beta_form();
    (*m * beta * m.transpose()).max_abs_diff(&beta)
}

/// Tests S beta S^T = beta within `tol` (max norm).
pub fn is_symplectic(m: &Mat4, tol: f64) -> bool {
    m.is_finite() && symplectic_residual(m) <= tol
}

/// Element of Sp(4, R) acting on the quadrature vector (q1, q2, p1, p2).
///
/// Values are only constructed through paths that preserve the symplectic
/// condition (validated input, group operations, exponentials of algebra
/// elements), so holding an `Sp4Matrix` certifies S beta S^T = beta and
/// det S = 1 up to roundoff.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sp4Matrix(Mat4);

impl Sp4Matrix {
    /// Validates the symplectic condition before wrapping.
    pub fn try_new(m: Mat4, tol: f64) -> Result<Self, Error> {
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        let residual = symplectic_residual(&m);
        if residual > tol {
            return Err(Error::NotSymplectic { residual });
        }
        Ok(Sp4Matrix(m))
    }

    pub(crate) fn new_unchecked(m: Mat4) -> Self {
        Sp4Matrix(m)
    }

    pub fn identity() -> Self {
        Sp4Matrix(Mat4::identity())
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.0
    }

    pub fn transpose(&self) -> Self {
        Sp4Matrix(self.0.transpose())
    }

    /// Group inverse via the closed form S^{-1} = beta S^T beta^T.
    pub fn inverse(&self) -> Self {
        let beta = beta_form();
        Sp4Matrix(beta * self.0.transpose() * beta.transpose())
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.0.symmetry_residual() <= tol
    }
}

impl std::ops::Mul for Sp4Matrix {
    type Output = Sp4Matrix;
    fn mul(self, rhs: Sp4Matrix) -> Sp4Matrix {
        Sp4Matrix(self.0 * rhs.0)
    }
}

impl Serialize for Sp4Matrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0 .0.serialize(serializer)
    }
}

/// Element of U(2), the passive (photon-number conserving) subgroup.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct U2Element(C2);

impl U2Element {
    /// Validates u^dagger u = I within `tol` before wrapping.
    pub fn try_new(m: C2, tol: f64) -> Result<Self, Error> {
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        let residual = (m.adjoint() * m).max_abs_diff(&C2::identity());
        if residual > tol {
            return Err(Error::NotUnitary { residual });
        }
        Ok(U2Element(m))
    }

    pub(crate) fn new_unchecked(m: C2) -> Self {
        U2Element(m)
    }

    pub fn identity() -> Self {
        U2Element(C2::identity())
    }

    pub fn matrix(&self) -> &C2 {
        &self.0
    }

    pub fn adjoint(&self) -> Self {
        U2Element(self.0.adjoint())
    }

    pub fn det(&self) -> Complex64 {
        self.0.det()
    }
}

impl std::ops::Mul for U2Element {
    type Output = U2Element;
    fn mul(self, rhs: U2Element) -> U2Element {
        U2Element(self.0 * rhs.0)
    }
}

impl Serialize for U2Element {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("U2Element", 2)?;
        st.serialize_field("re", &self.0.re())?;
        st.serialize_field("im", &self.0.im())?;
        st.end()
    }
}

/// Embeds u = X - iY in U(2) as the real block matrix [[X, Y], [-Y, X]].
///
/// The result is both symplectic and orthogonal.
pub fn embed_u2(u: &U2Element) -> Sp4Matrix {
    let x = u.matrix().re();
    let yneg = u.matrix().im(); // u = X - iY, so Im(u) = -Y
    let y = [[-yneg[0][0], -yneg[0][1]], [-yneg[1][0], -yneg[1][1]]];
    let mut m = Mat4::zero();
    for i in 0..2 {
        for j in 0..2 {
            m.0[i][j] = x[i][j];
            m.0[i][j + 2] = y[i][j];
            m.0[i + 2][j] = -y[i][j];
            m.0[i + 2][j + 2] = x[i][j];
        }
    }
    Sp4Matrix(m)
}

/// Recovers u = X - iY from a matrix in the passive block form
/// [[X, Y], [-Y, X]]. Rejects matrices outside that form.
pub fn extract_u2(s: &Sp4Matrix, tol: f64) -> Result<U2Element, Error> {
    let m = s.matrix();
    let mut residual = 0.0_f64;
    for i in 0..2 {
        for j in 0..2 {
            residual = residual.max((m.0[i][j] - m.0[i + 2][j + 2]).abs());
            residual = residual.max((m.0[i][j + 2] + m.0[i + 2][j]).abs());
        }
    }
    if residual > tol {
        return Err(Error::NotPassiveBlockForm { residual });
    }
    let mut c = C2::zero();
    for i in 0..2 {
        for j in 0..2 {
            // u = X - iY with X the top-left and Y the top-right block.
            c.0[i][j] = Complex64::new(m.0[i][j], -m.0[i][j + 2]);
        }
    }
    U2Element::try_new(c, tol.max(DEFAULT_TOL))
}

/// Conjugates S into the complex mode coordinates: S^(c) = Omega S Omega^dagger.
///
/// For a passive block matrix the result is block-diagonal diag(u, conj(u)).
pub fn complex_form(s: &Sp4Matrix) -> C4 {
    let omega = omega_map();
    omega * C4::from_real(s.matrix()) * omega.adjoint()
}

/// The ten generators of the quadrature representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Generator {
    Q,
    J1,
    J2,
    J3,
    K1,
    K2,
    K3,
    L1,
    L2,
    L3,
}

impl Generator {
    pub const ALL: [Generator; 10] = [
        Generator::Q,
        Generator::J1,
        Generator::J2,
        Generator::J3,
        Generator::K1,
        Generator::K2,
        Generator::K3,
        Generator::L1,
        Generator::L2,
        Generator::L3,
    ];

    /// True for the photon-number conserving (compact) generators Q, J.
    pub fn is_compact(&self) -> bool {
        matches!(
            self,
            Generator::Q | Generator::J1 | Generator::J2 | Generator::J3
        )
    }
}

impl std::str::FromStr for Generator {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Q" | "q" => Ok(Generator::Q),
            "J1" | "j1" => Ok(Generator::J1),
            "J2" | "j2" => Ok(Generator::J2),
            "J3" | "j3" => Ok(Generator::J3),
            "K1" | "k1" => Ok(Generator::K1),
            "K2" | "k2" => Ok(Generator::K2),
            "K3" | "k3" => Ok(Generator::K3),
            "L1" | "l1" => Ok(Generator::L1),
            "L2" | "l2" => Ok(Generator::L2),
            "L3" | "l3" => Ok(Generator::L3),
            other => Err(format!("unknown generator name: {other}")),
        }
    }
}

impl std::fmt::Display for Generator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Generator::Q => "Q",
            Generator::J1 => "J1",
            Generator::J2 => "J2",
            Generator::J3 => "J3",
            Generator::K1 => "K1",
            Generator::K2 => "K2",
            Generator::K3 => "K3",
            Generator::L1 => "L1",
            Generator::L2 => "L2",
            Generator::L3 => "L3",
        };
        f.write_str(name)
    }
}

/// Symmetric matrix G_X of the quadratic form X = (1/2) xi^T G_X xi, for
/// each generator X written in the quadrature variables.
pub fn quadratic_form(g: Generator) -> Mat4 {
    let h = 0.5;
    let mut m = Mat4::zero();
    match g {
        // Q = (1/4)(q1^2 + q2^2 + p1^2 + p2^2)
        Generator::Q => m = Mat4::from_diag([h, h, h, h]),
        // J1 = (1/2)(q1 q2 + p1 p2)
        Generator::J1 => {
            m.0[0][1] = h;
            m.0[1][0] = h;
            m.0[2][3] = h;
            m.0[3][2] = h;
        }
        // J2 = (1/2)(q1 p2 - q2 p1)
        Generator::J2 => {
            m.0[0][3] = h;
            m.0[3][0] = h;
            m.0[1][2] = -h;
            m.0[2][1] = -h;
        }
        // J3 = (1/4)(q1^2 + p1^2 - q2^2 - p2^2)
        Generator::J3 => m = Mat4::from_diag([h, -h, h, -h]),
        // K1 = (1/4)(q1^2 - p1^2 - q2^2 + p2^2)
        Generator::K1 => m = Mat4::from_diag([h, -h, -h, h]),
        // K2 = -(1/4)({q1, p1} + {q2, p2})
        Generator::K2 => {
            m.0[0][2] = -h;
            m.0[2][0] = -h;
            m.0[1][3] = -h;
            m.0[3][1] = -h;
        }
        // K3 = -(1/2)(q1 q2 - p1 p2)
        Generator::K3 => {
            m.0[0][1] = -h;
            m.0[1][0] = -h;
            m.0[2][3] = h;
            m.0[3][2] = h;
        }
        // L1 = (1/4)({q1, p1} - {q2, p2})
        Generator::L1 => {
            m.0[0][2] = h;
            m.0[2][0] = h;
            m.0[1][3] = -h;
            m.0[3][1] = -h;
        }
        // L2 = (1/4)(q1^2 - p1^2 + q2^2 - p2^2)
        Generator::L2 => m = Mat4::from_diag([h, h, -h, -h]),
        // L3 = -(1/2)(q1 p2 + q2 p1)
        Generator::L3 => {
            m.0[0][3] = -h;
            m.0[3][0] = -h;
            m.0[1][2] = -h;
            m.0[2][1] = -h;
        }
    }
    m
}

/// Matrix generator g_X = -beta G_X of the quadrature representation:
/// exp(t g_X) is the symplectic matrix implementing exp(i t X).
///
/// The sign is pinned by two anchors: exp(a g_K2 + b g_L1) must be the
/// diagonal matrix of reciprocal scalings, and exp(theta g_Q) must rotate
/// each (q_j, p_j) plane by theta/2.
pub fn generator_matrix(g: Generator) -> Mat4 {
    -(beta_form() * quadratic_form(g))
}

/// The ten named generator matrices.
#[derive(Debug, Clone, Copy)]
pub struct GeneratorBasis {
    pub q: Mat4,
    pub j: [Mat4; 3],
    pub k: [Mat4; 3],
    pub l: [Mat4; 3],
}

impl GeneratorBasis {
    pub fn new() -> Self {
        GeneratorBasis {
            q: generator_matrix(Generator::Q),
            j: [
                generator_matrix(Generator::J1),
                generator_matrix(Generator::J2),
                generator_matrix(Generator::J3),
            ],
            k: [
                generator_matrix(Generator::K1),
                generator_matrix(Generator::K2),
                generator_matrix(Generator::K3),
            ],
            l: [
                generator_matrix(Generator::L1),
                generator_matrix(Generator::L2),
                generator_matrix(Generator::L3),
            ],
        }
    }

    pub fn get(&self, g: Generator) -> Mat4 {
        match g {
            Generator::Q => self.q,
            Generator::J1 => self.j[0],
            Generator::J2 => self.j[1],
            Generator::J3 => self.j[2],
            Generator::K1 => self.k[0],
            Generator::K2 => self.k[1],
            Generator::K3 => self.k[2],
            Generator::L1 => self.l[0],
            Generator::L2 => self.l[1],
            Generator::L3 => self.l[2],
        }
    }
}

impl Default for GeneratorBasis {
    fn default() -> Self {
        GeneratorBasis::new()
    }
}

/// Real linear combination qc*g_Q + j.g_J + k.g_K + l.g_L of the algebra.
pub fn algebra_element(qc: f64, j: [f64; 3], k: [f64; 3], l: [f64; 3]) -> Mat4 {
    let basis = GeneratorBasis::new();
    let mut m = basis.q * qc;
    for r in 0..3 {
        m = m + basis.j[r] * j[r] + basis.k[r] * k[r] + basis.l[r] * l[r];
    }
    m
}

/// Result of the polar decomposition S = P K.
#[derive(Debug, Clone, Copy)]
pub struct PolarDecomposition {
    /// Symmetric positive definite symplectic factor (the squeeze part).
    pub positive: Sp4Matrix,
    /// Orthogonal symplectic factor in the passive block form.
    pub passive: Sp4Matrix,
}

/// Decomposes S uniquely as P K with P = (S S^T)^{1/2} symmetric positive
/// definite symplectic and K = P^{-1} S orthogonal symplectic.
///
/// Both factor properties are theorems for symplectic input; they are
/// asserted here rather than assumed, so a numerically degenerate input
/// surfaces as an error instead of a silently wrong factorization.
pub fn polar_decompose(s: &Sp4Matrix) -> Result<PolarDecomposition, Error> {
    let m = s.matrix();
    let gram = *m * m.transpose();
    let (vals, vecs) = sym_eigen(&gram);
    if vals[0] <= 0.0 {
        return Err(Error::NotPositiveDefinite {
            min_eigenvalue: vals[0],
        });
    }
    let roots = vals.map(f64::sqrt);
    let p = crate::linalg::sym_recompose(&roots, &vecs);
    let p_inv = crate::linalg::sym_recompose(&roots.map(|r| 1.0 / r), &vecs);
    let k = p_inv * *m;

    let p_residual = symplectic_residual(&p);
    if p_residual > 1e-8 {
        return Err(Error::NotSymplectic {
            residual: p_residual,
        });
    }
    let positive = Sp4Matrix(p);
    let passive = Sp4Matrix(k);
    // Confirm K is in the passive block form; extract_u2 re-checks unitarity.
    extract_u2(&passive, 1e-8)?;
    Ok(PolarDecomposition { positive, passive })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{dot4, expm};

    fn embed_heterodyne_zero() -> U2Element {
        // (1/sqrt 2) [[1, 1], [-1, 1]]
        let s = std::f64::consts::FRAC_1_SQRT_2;
        U2Element::try_new(C2::from_re_im([[s, s], [-s, s]], [[0.0; 2]; 2]), 1e-12).unwrap()
    }

    #[test]
    fn beta_blocks_and_inverse() {
        let beta = beta_form();
        assert_eq!(beta.0[0][2], 1.0);
        assert_eq!(beta.0[1][3], 1.0);
        assert_eq!(beta.0[2][0], -1.0);
        assert_eq!(beta.0[3][1], -1.0);
        // beta * beta = -I exactly
        assert_eq!(beta * beta, Mat4::identity() * -1.0);
        // beta is antisymmetric and itself symplectic
        assert_eq!(beta.transpose(), beta * -1.0);
        assert!(is_symplectic(&beta, 0.0));
    }

    #[test]
    fn omega_is_unitary() {
        let omega = omega_map();
        assert!((omega * omega.adjoint()).max_abs_diff(&C4::identity()) < 1e-15);
    }

    #[test]
    fn symplectic_checks() {
        assert!(is_symplectic(&Mat4::identity(), 1e-15));
        assert!(is_symplectic(
            &Mat4::from_diag([2.0, 3.0, 0.5, 1.0 / 3.0]),
            1e-15
        ));
        assert!(!is_symplectic(&Mat4::from_diag([2.0, 1.0, 1.0, 1.0]), 1e-6));
        assert!(Sp4Matrix::try_new(Mat4::from_diag([2.0, 1.0, 1.0, 1.0]), 1e-10).is_err());
    }

    #[test]
    fn det_is_one() {
        let s = Sp4Matrix::try_new(Mat4::from_diag([2.0, 3.0, 0.5, 1.0 / 3.0]), 1e-12).unwrap();
        assert!((s.matrix().det() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn embed_identity_and_phase() {
        assert_eq!(embed_u2(&U2Element::identity()).matrix(), &Mat4::identity());
        // u = i I2 embeds to -beta (X = 0, Y = -I2).
        let i2 = C2::identity().scale(Complex64::new(0.0, 1.0));
        let s = embed_u2(&U2Element::try_new(i2, 1e-12).unwrap());
        assert!(s.matrix().max_abs_diff(&(beta_form() * -1.0)) < 1e-15);
    }

    #[test]
    fn embed_heterodyne_is_orthogonal_symplectic() {
        let s = embed_u2(&embed_heterodyne_zero());
        let m = s.matrix();
        assert!((*m * m.transpose()).max_abs_diff(&Mat4::identity()) < 1e-15);
        assert!(is_symplectic(m, 1e-15));
    }

    #[test]
    fn extract_inverts_embed() {
        let i2 = C2::identity().scale(Complex64::new(0.0, 1.0));
        let u = U2Element::try_new(i2, 1e-12).unwrap();
        let back = extract_u2(&embed_u2(&u), 1e-12).unwrap();
        assert!(back.matrix().max_abs_diff(u.matrix()) < 1e-15);
        assert_eq!(
            extract_u2(&Sp4Matrix::identity(), 1e-12).unwrap().matrix(),
            &C2::identity()
        );
    }

    #[test]
    fn extract_rejects_squeeze() {
        let s = Sp4Matrix::try_new(Mat4::from_diag([2.0, 3.0, 0.5, 1.0 / 3.0]), 1e-12).unwrap();
        assert!(matches!(
            extract_u2(&s, 1e-8),
            Err(Error::NotPassiveBlockForm { .. })
        ));
    }

    #[test]
    fn phase_rotation_extracts_to_half_angle_phase() {
        // exp(theta g_Q) embeds the scalar unitary e^{i theta/2} I2.
        let theta = 0.7_f64;
        let s = Sp4Matrix::try_new(
            expm(&(generator_matrix(Generator::Q) * theta)).unwrap(),
            1e-12,
        )
        .unwrap();
        let u = extract_u2(&s, 1e-10).unwrap();
        let want = C2::identity().scale(Complex64::from_polar(1.0, theta / 2.0));
        assert!(u.matrix().max_abs_diff(&want) < 1e-12);
    }

    #[test]
    fn complex_form_of_passive_is_block_diagonal() {
        assert!(
            complex_form(&Sp4Matrix::identity())
                .max_abs_diff(&C4::identity())
                .abs()
                < 1e-15
        );

        let u = embed_heterodyne_zero();
        let sc = complex_form(&embed_u2(&u));
        let mut want = C4::zero();
        for i in 0..2 {
            for j in 0..2 {
                want.0[i][j] = u.matrix().0[i][j];
                want.0[i + 2][j + 2] = u.matrix().0[i][j].conj();
            }
        }
        assert!(sc.max_abs_diff(&want) < 1e-14);
    }

    #[test]
    fn complex_form_of_squeeze_satisfies_complex_conditions() {
        let s = Sp4Matrix::try_new(Mat4::from_diag([2.0, 3.0, 0.5, 1.0 / 3.0]), 1e-12).unwrap();
        let sc = complex_form(&s);
        // Same beta in complex coordinates: S^(c) beta S^(c)T = beta.
        let beta_c = C4::from_real(&beta_form());
        assert!((sc * beta_c * sc.transpose()).max_abs_diff(&beta_c) < 1e-13);
        // And S^(c) Sigma3 S^(c)dagger = Sigma3.
        let sigma3 = C4::from_real(&Mat4::from_diag([1.0, 1.0, -1.0, -1.0]));
        assert!((sc * sigma3 * sc.adjoint()).max_abs_diff(&sigma3) < 1e-13);
    }

    #[test]
    fn quadratic_forms_match_named_couplings() {
        assert_eq!(quadratic_form(Generator::Q), Mat4::identity() * 0.5);
        let k2 = quadratic_form(Generator::K2);
        assert_eq!(k2.0[0][2], -0.5);
        assert_eq!(k2.0[1][3], -0.5);
        let l1 = quadratic_form(Generator::L1);
        assert_eq!(l1.0[0][2], 0.5);
        assert_eq!(l1.0[1][3], -0.5);
        for g in Generator::ALL {
            assert_eq!(quadratic_form(g).symmetry_residual(), 0.0);
        }
    }

    #[test]
    fn generators_satisfy_infinitesimal_symplectic_condition() {
        let beta = beta_form();
        for g in Generator::ALL {
            let m = generator_matrix(g);
            assert!((m * beta + beta * m.transpose()).max_abs() == 0.0, "{g}");
            // Compact generators are antisymmetric, noncompact symmetric.
            if g.is_compact() {
                assert_eq!(m.transpose(), m * -1.0, "{g}");
            } else {
                assert_eq!(m.transpose(), m, "{g}");
            }
        }
    }

    #[test]
    fn q_generator_rotates_planes_by_half_angle() {
        assert_eq!(generator_matrix(Generator::Q), beta_form() * -0.5);
        let theta = 1.3_f64;
        let s = expm(&(generator_matrix(Generator::Q) * theta)).unwrap();
        let (c, v) = ((theta / 2.0).cos(), (theta / 2.0).sin());
        let want = Mat4([
            [c, 0.0, -v, 0.0],
            [0.0, c, 0.0, -v],
            [v, 0.0, c, 0.0],
            [0.0, v, 0.0, c],
        ]);
        assert!(s.max_abs_diff(&want) < 1e-14);
    }

    #[test]
    fn squeeze_combination_exponentiates_to_reciprocal_scalings() {
        let (a, b) = (1.7, 0.4);
        let m = generator_matrix(Generator::K2) * a + generator_matrix(Generator::L1) * b;
        let s = expm(&m).unwrap();
        let want = Mat4::from_diag([
            ((a - b) / 2.0).exp(),
            ((a + b) / 2.0).exp(),
            (-(a - b) / 2.0).exp(),
            (-(a + b) / 2.0).exp(),
        ]);
        assert!(s.max_abs_diff(&want) < 1e-13);
    }

    #[test]
    fn k1_l1_commutator_closes_on_q() {
        let k1 = generator_matrix(Generator::K1);
        let l1 = generator_matrix(Generator::L1);
        let comm = k1 * l1 - l1 * k1;
        assert!(comm.max_abs_diff(&(generator_matrix(Generator::Q) * -1.0)) == 0.0);
    }

    #[test]
    fn algebra_element_combinations() {
        assert_eq!(
            algebra_element(0.0, [0.0; 3], [0.0; 3], [0.0; 3]),
            Mat4::zero()
        );
        let sym = algebra_element(0.0, [0.0; 3], [0.0, 1.2, 0.0], [0.7, 0.0, 0.0]);
        assert_eq!(sym.symmetry_residual(), 0.0);
        let theta = 0.9;
        assert_eq!(
            algebra_element(theta, [0.0; 3], [0.0; 3], [0.0; 3]),
            beta_form() * (-theta / 2.0)
        );
    }

    #[test]
    fn polar_of_pure_factors_is_trivial() {
        let p = Sp4Matrix::try_new(Mat4::from_diag([2.0, 3.0, 0.5, 1.0 / 3.0]), 1e-12).unwrap();
        let d = polar_decompose(&p).unwrap();
        assert!(d.positive.matrix().max_abs_diff(p.matrix()) < 1e-12);
        assert!(d.passive.matrix().max_abs_diff(&Mat4::identity()) < 1e-12);

        let k = embed_u2(&embed_heterodyne_zero());
        let d = polar_decompose(&k).unwrap();
        assert!(d.positive.matrix().max_abs_diff(&Mat4::identity()) < 1e-12);
        assert!(d.passive.matrix().max_abs_diff(k.matrix()) < 1e-12);
    }

    #[test]
    fn polar_recovers_constructed_factors() {
        // S = S0(ln 6, ln 1.5) * embed(U_H(1.0))
        let p = Mat4::from_diag([2.0, 3.0, 0.5, 1.0 / 3.0]);
        let psi = 1.0_f64;
        let (c, s2) = ((psi / 2.0).cos(), (psi / 2.0).sin());
        let sq = std::f64::consts::FRAC_1_SQRT_2;
        let uh = C2::from_re_im(
            [[sq * c, sq * c], [-sq * c, sq * c]],
            [[-sq * s2, -sq * s2], [-sq * s2, sq * s2]],
        );
        let k = embed_u2(&U2Element::try_new(uh, 1e-12).unwrap());
        let s = Sp4Matrix::try_new(p, 1e-12).unwrap() * k;
        let d = polar_decompose(&s).unwrap();
        assert!(d.positive.matrix().max_abs_diff(&p) < 1e-10);
        assert!(d.passive.matrix().max_abs_diff(k.matrix()) < 1e-10);
        let recomposed = d.positive * d.passive;
        assert!(recomposed.matrix().max_abs_diff(s.matrix()) < 1e-10);
    }

    #[test]
    fn inverse_is_group_inverse() {
        let m = expm(&algebra_element(
            0.3,
            [0.1, -0.4, 0.2],
            [0.5, 0.0, -0.3],
            [0.2, 0.6, 0.0],
        ))
        .unwrap();
        let s = Sp4Matrix::try_new(m, 1e-10).unwrap();
        assert!((s * s.inverse()).matrix().max_abs_diff(&Mat4::identity()) < 1e-12);
    }

    #[test]
    fn quadrature_action_matches_mean_transport() {
        // Sanity: S acts on the quadrature 4-vector by plain multiplication.
        let s = Sp4Matrix::try_new(Mat4::from_diag([2.0, 3.0, 0.5, 1.0 / 3.0]), 1e-12).unwrap();
        let v = [1.0, -2.0, 0.5, 4.0];
        let out = s.matrix().mul_vec(&v);
        assert_eq!(out, [2.0, -6.0, 0.25, 4.0 / 3.0]);
        assert!((dot4(&out, &out) - (4.0 + 36.0 + 0.0625 + 16.0 / 9.0)).abs() < 1e-12);
    }
}
