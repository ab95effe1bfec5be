//! Heterodyne detection model: the one-parameter family of mode mixings it
//! realizes, the quadrature it measures, and a variance scan over the
//! adjustable phase.
//!
//! The family U_H(psi) is not a subgroup of SU(2) — it does not even contain
//! the identity — so a scan over psi probes only a one-parameter slice of
//! the passive group and can miss squeezing that the invariant least-
//! eigenvalue criterion detects.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::Error;
use crate::linalg::{dot4, Vec4, C2};
use crate::states::VarianceMatrix;
use crate::symplectic::U2Element;

const PSI_PERIOD: f64 = 4.0 * std::f64::consts::PI;

/// Heterodyne phase, the single experimentally adjustable parameter.
/// Normalized into [0, 4 pi).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HeterodyneSetting {
    psi: f64,
}

impl HeterodyneSetting {
    pub fn new(psi: f64) -> Self {
        let mut r = psi.rem_euclid(PSI_PERIOD);
        if r >= PSI_PERIOD {
            r = 0.0;
        }
        HeterodyneSetting { psi: r }
    }

    pub fn psi(&self) -> f64 {
        self.psi
    }
}

/// The SU(2) element realized at phase psi:
/// (1/sqrt 2) [[e^{-i psi/2}, e^{-i psi/2}], [-e^{i psi/2}, e^{i psi/2}]].
pub fn heterodyne_unitary(s: &HeterodyneSetting) -> U2Element {
    let sq = std::f64::consts::FRAC_1_SQRT_2;
    let minus = Complex64::from_polar(sq, -s.psi / 2.0);
    let plus = Complex64::from_polar(sq, s.psi / 2.0);
    U2Element::new_unchecked(C2([[minus, minus], [-plus, plus]]))
}

/// Unit 4-vector w of the measured quadrature:
/// q(psi) = (q1 + q2) cos(psi/2)/sqrt2 + (p1 + p2) sin(psi/2)/sqrt2.
pub fn heterodyne_quadrature_vector(s: &HeterodyneSetting) -> Vec4 {
    let sq = std::f64::consts::FRAC_1_SQRT_2;
    let c = (s.psi / 2.0).cos();
    let n = (s.psi / 2.0).sin();
    [sq * c, sq * c, sq * n, sq * n]
}

/// Variance of the linear form w.xi in a state with variance matrix V:
/// w^T V w.
pub fn quadrature_variance(v: &VarianceMatrix, w: &Vec4) -> f64 {
    dot4(w, &v.matrix().mul_vec(w))
}

/// Result of scanning the heterodyne variance over psi.
#[derive(Debug, Clone, Serialize)]
pub struct HeterodyneScan {
    /// Phase of the variance minimum, in [0, 4 pi).
    pub psi_min: f64,
    pub var_min: f64,
    /// True when the scan sees a variance strictly below 1/2.
    pub detects: bool,
    /// Grid samples (psi, variance), for tabulation.
    pub samples: Vec<(f64, f64)>,
}

/// Scans the heterodyne variance over [0, 4 pi).
///
/// In psi the variance is the two-term sinusoid
/// (A+B)/4 + (A-B)/4 cos(psi) + C/2 sin(psi) with A, B, C quadratic forms
/// of V, so the minimum is taken in closed form; the grid of `samples`
/// points only cross-checks and reports the shape.
pub fn heterodyne_scan(v: &VarianceMatrix, samples: usize) -> Result<HeterodyneScan, Error> {
    if samples < 8 {
        return Err(Error::TooFewSamples {
            got: samples,
            min: 8,
        });
    }
    let m = v.matrix();
    let x = [1.0, 1.0, 0.0, 0.0];
    let y = [0.0, 0.0, 1.0, 1.0];
    let a = dot4(&x, &m.mul_vec(&x));
    let b = dot4(&y, &m.mul_vec(&y));
    let c = dot4(&x, &m.mul_vec(&y));

    let offset = (a + b) / 4.0;
    let cos_amp = (a - b) / 4.0;
    let sin_amp = c / 2.0;
    let amp = (cos_amp * cos_amp + sin_amp * sin_amp).sqrt();
    let var_min = offset - amp;
    let psi_min = if amp < 1e-15 {
        0.0
    } else {
        // cos and sin aligned opposite to their coefficients at the minimum.
        (-sin_amp)
            .atan2(-cos_amp)
            .rem_euclid(2.0 * std::f64::consts::PI)
    };

    let mut grid = Vec::with_capacity(samples);
    let mut grid_min = f64::INFINITY;
    for i in 0..samples {
        let psi = PSI_PERIOD * i as f64 / samples as f64;
        let var = quadrature_variance(
            v,
            &heterodyne_quadrature_vector(&HeterodyneSetting::new(psi)),
        );
        grid_min = grid_min.min(var);
        grid.push((psi, var));
    }
    debug_assert!(grid_min >= var_min - 1e-9 * offset.abs().max(1.0));

    Ok(HeterodyneScan {
        psi_min,
        var_min,
        detects: var_min < 0.5,
        samples: grid,
    })
}
