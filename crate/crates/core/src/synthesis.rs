//! Synthesis of passive optics: Mach-Zehnder interferometer settings for an
//! arbitrary U(2) element, and quarter-half-quarter wave-plate triples for
//! an arbitrary SU(2) element (U(2) up to a free-propagation phase).

use num_complex::Complex64;
use serde::Serialize;

use crate::error::Error;
use crate::linalg::C2;
use crate::symplectic::U2Element;

/// Phase-shifter and beam-splitter angles of the Mach-Zehnder realization.
///
/// After synthesis `theta` lies in [0, pi/2]; phases lie in (-pi, pi].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MachZehnderParams {
    pub phi: f64,
    pub theta: f64,
    pub psi1: f64,
    pub psi2: f64,
}

/// Slow-axis angles of the quarter-half-quarter wave-plate triple,
/// reduced modulo pi (a wave plate rotated by pi is the same plate).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WaveplateParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

/// Wave-plate triple plus the free-propagation phase that lifts the SU(2)
/// gadget output to the requested U(2) element.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WaveplateSynthesis {
    pub params: WaveplateParams,
    pub global_phase: f64,
}

/// Transfer matrix of the interferometer:
/// [[e^{i(phi+psi1)} cos t, -i e^{-i(phi-psi1)} sin t],
///  [-i e^{i(phi+psi2)} sin t, e^{-i(phi-psi2)} cos t]].
///
/// This covers all of U(2); the determinant is e^{i(psi1+psi2)}, so
/// psi2 = -psi1 restricts to SU(2).
pub fn mz_forward(p: &MachZehnderParams) -> U2Element {
    let (c, s) = (p.theta.cos(), p.theta.sin());
    let mi = Complex64::new(0.0, -1.0);
    let m = C2([
        [
            Complex64::from_polar(c, p.phi + p.psi1),
            mi * Complex64::from_polar(s, -(p.phi - p.psi1)),
        ],
        [
            mi * Complex64::from_polar(s, p.phi + p.psi2),
            Complex64::from_polar(c, -(p.phi - p.psi2)),
        ],
    ]);
    U2Element::new_unchecked(m)
}

fn wrap_angle(x: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut r = x.rem_euclid(two_pi);
    if r > std::f64::consts::PI {
        r -= two_pi;
    }
    r
}

/// Solves the interferometer angles reproducing `u` exactly.
///
/// theta = arccos|u11|; the phases come from entry arguments. At theta = 0
/// or pi/2 the phases are underdetermined and the tie-break phi = 0 is
/// used.
pub fn mz_synthesize(u: &U2Element) -> MachZehnderParams {
    let m = u.matrix();
    let cos_t = m.0[0][0].norm().clamp(0.0, 1.0);
    let sin_t = m.0[0][1].norm();
    let theta = cos_t.acos();

    if sin_t < 1e-12 {
        // Diagonal: u = diag(e^{i psi1}, e^{i psi2}).
        return MachZehnderParams {
            phi: 0.0,
            theta: 0.0,
            psi1: wrap_angle(m.0[0][0].arg()),
            psi2: wrap_angle(m.0[1][1].arg()),
        };
    }
    if cos_t < 1e-12 {
        // Anti-diagonal: arguments of the off-diagonal entries fix psi.
        return MachZehnderParams {
            phi: 0.0,
            theta: std::f64::consts::FRAC_PI_2,
            psi1: wrap_angle(m.0[0][1].arg() + std::f64::consts::FRAC_PI_2),
            psi2: wrap_angle(m.0[1][0].arg() + std::f64::consts::FRAC_PI_2),
        };
    }

    // arg u11 = phi + psi1, arg u12 = -pi/2 - phi + psi1, arg u22 = psi2 - phi.
    // The half-angle branch ambiguity in phi cancels in the forward map.
    let phi = wrap_angle((m.0[0][0].arg() - m.0[0][1].arg() - std::f64::consts::FRAC_PI_2) / 2.0);
    MachZehnderParams {
        phi,
        theta,
        psi1: wrap_angle(m.0[0][0].arg() - phi),
        psi2: wrap_angle(m.0[1][1].arg() + phi),
    }
}

/// Jones matrix of a retarder with retardance delta and slow axis at chi:
/// R(chi) diag(e^{-i delta/2}, e^{i delta/2}) R(-chi).
fn retarder(delta: f64, chi: f64) -> C2 {
    let (c, s) = (chi.cos(), chi.sin());
    let rot = C2::from_re_im([[c, -s], [s, c]], [[0.0; 2]; 2]);
    let rot_back = C2::from_re_im([[c, s], [-s, c]], [[0.0; 2]; 2]);
    let core = C2([
        [
            Complex64::from_polar(1.0, -delta / 2.0),
            Complex64::new(0.0, 0.0),
        ],
        [
            Complex64::new(0.0, 0.0),
            Complex64::from_polar(1.0, delta / 2.0),
        ],
    ]);
    rot * core * rot_back
}

/// Jones matrix of the quarter-half-quarter triple
/// W(pi/2, gamma) W(pi, beta) W(pi/2, alpha); always in SU(2).
pub fn waveplate_forward(p: &WaveplateParams) -> U2Element {
    let m = retarder(std::f64::consts::FRAC_PI_2, p.gamma)
        * retarder(std::f64::consts::PI, p.beta)
        * retarder(std::f64::consts::FRAC_PI_2, p.alpha);
    U2Element::new_unchecked(m)
}

/// Quaternion components (q0, q1, q2, q3) of an SU(2) matrix under
/// u = q0 I - i(q1 sx + q2 sy + q3 sz).
fn su2_quaternion(m: &C2) -> [f64; 4] {
    [
        (m.0[0][0].re + m.0[1][1].re) / 2.0,
        -(m.0[0][1].im + m.0[1][0].im) / 2.0,
        (m.0[1][0].re - m.0[0][1].re) / 2.0,
        (m.0[1][1].im - m.0[0][0].im) / 2.0,
    ]
}

fn reduce_mod_pi(x: f64) -> f64 {
    x.rem_euclid(std::f64::consts::PI)
}

/// Finds wave-plate angles realizing `u` up to a global phase.
///
/// With nu = alpha - gamma, rho = alpha + gamma, mu = alpha + gamma - 2 beta,
/// the gadget's quaternion is
///   q0 = -cos(nu) cos(mu),  q2 = sin(nu) cos(mu),
///   q1 = -cos(rho) sin(mu), q3 = sin(rho) sin(mu),
/// which inverts in closed form for every target. `global_phase` carries
/// the U(1) factor (free propagation) making the product match `u` exactly;
/// when `det_one` is set the input must already have determinant 1.
pub fn waveplate_synthesize(u: &U2Element, det_one: bool) -> Result<WaveplateSynthesis, Error> {
    let det = u.det();
    if det_one && (det - Complex64::new(1.0, 0.0)).norm() > 1e-9 {
        return Err(Error::NotSpecialUnitary {
            det_re: det.re,
            det_im: det.im,
        });
    }
    let global_phase = det.arg() / 2.0;
    let su2 = u.matrix().scale(Complex64::from_polar(1.0, -global_phase));

    let mut q = su2_quaternion(&su2);
    let norm = (q.iter().map(|x| x * x).sum::<f64>()).sqrt();
    for x in q.iter_mut() {
        *x /= norm;
    }

    let cos_mu = (q[0] * q[0] + q[2] * q[2]).sqrt();
    let sin_mu = (q[1] * q[1] + q[3] * q[3]).sqrt();
    let mu = sin_mu.atan2(cos_mu);
    let nu = if cos_mu > 1e-15 {
        q[2].atan2(-q[0])
    } else {
        0.0
    };
    let rho = if sin_mu > 1e-15 {
        q[3].atan2(-q[1])
    } else {
        0.0
    };

    let params = WaveplateParams {
        alpha: reduce_mod_pi((rho + nu) / 2.0),
        beta: reduce_mod_pi((rho - mu) / 2.0),
        gamma: reduce_mod_pi((rho - nu) / 2.0),
    };
    Ok(WaveplateSynthesis {
        params,
        global_phase,
    })
}
