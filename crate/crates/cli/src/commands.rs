//! Subcommand implementations. Each one parses its payload, validates,
//! computes, and renders the complete output string; nothing is written
//! until the command has fully succeeded.

use num_complex::Complex64;
use serde::Serialize;

use twomode::classification::{
    class_of_vectors, classify_symplectic, invariants, ClassLabel, SqueezeVectors,
};
use twomode::detection::heterodyne_scan;
use twomode::linalg::{Mat4, C2};
use twomode::states::{
    squeezed_coherent, squeezed_thermal, squeezing_verdict, thermal_squeeze_threshold,
    GaussianState, SqueezingVerdict, VarianceMatrix,
};
use twomode::symplectic::{symplectic_residual, Sp4Matrix, U2Element};
use twomode::synthesis::{mz_forward, mz_synthesize, waveplate_forward, waveplate_synthesize};

use crate::schema::*;
use crate::{CmdError, Format};

/// Largest forward-verification residual a synthesis result may carry.
const SYNTH_RESIDUAL_LIMIT: f64 = 1e-7;

type CmdResult = Result<String, CmdError>;

fn schema_err(msg: impl std::fmt::Display) -> CmdError {
    CmdError::Schema(msg.to_string())
}

fn validation_err(msg: impl std::fmt::Display) -> CmdError {
    CmdError::Validation(msg.to_string())
}

/// Maps library errors onto exit-code buckets: parameter-level problems are
/// schema errors (2), numerical failures are validation errors (3).
fn lift(err: twomode::Error) -> CmdError {
    use twomode::Error::*;
    match err {
        InvalidClassLabel { .. }
        | NonPositiveBeta { .. }
        | UnnormalizedModeWeights { .. }
        | ZeroSqueezeVectors
        | TooFewSamples { .. }
        | NonFinite
        | IdentityClass => schema_err(err),
        _ => validation_err(err),
    }
}

fn parse<T: serde::de::DeserializeOwned>(payload: &str) -> Result<T, CmdError> {
    serde_json::from_str(payload).map_err(schema_err)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("serializable output");
    out.push('\n');
    out
}

/// Formats with 12 significant digits, '.' decimal, locale-independent.
pub fn fmt12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-4..=15).contains(&mag) {
        format!("{x:.11e}")
    } else {
        format!("{:.*}", (11 - mag).max(0) as usize, x)
    }
}

#[derive(Serialize)]
struct InvariantsOut {
    i1: f64,
    i2: f64,
}

#[derive(Serialize)]
struct ClassifyOutput {
    a: f64,
    b: f64,
    no_squeeze: bool,
    two_mode_character: Option<f64>,
    invariants: InvariantsOut,
    passive_factor: U2Element,
}

pub fn classify(payload: &str, format: Format, tol: f64) -> CmdResult {
    let input: ClassifyInput = parse(payload)?;
    let (label, inv, passive) = match (input.matrix, input.vectors) {
        (Some(rows), None) => {
            let m = Mat4(rows);
            let residual = symplectic_residual(&m);
            if residual > tol {
                return Err(validation_err(format!(
                    "matrix is not symplectic: residual norm {residual:.6e} exceeds tolerance {tol:.1e}"
                )));
            }
            let s = Sp4Matrix::try_new(m, tol).map_err(lift)?;
            let (label, passive) = classify_symplectic(&s).map_err(lift)?;
            let inv = InvariantsOut {
                i1: (label.a() * label.b()).powi(2),
                i2: label.a() * label.a() + label.b() * label.b(),
            };
            (label, inv, passive)
        }
        (None, Some(v)) => {
            let vectors = SqueezeVectors::new(v.k, v.l);
            let p = invariants(&vectors);
            let label = class_of_vectors(&vectors);
            (
                label,
                InvariantsOut { i1: p.i1, i2: p.i2 },
                U2Element::identity(),
            )
        }
        _ => {
            return Err(schema_err(
                "classify expects exactly one of \"matrix\" or \"vectors\"",
            ))
        }
    };

    let character = if label.no_squeeze() {
        None
    } else {
        Some(1.0 - label.b() / label.a())
    };
    let out = ClassifyOutput {
        a: label.a(),
        b: label.b(),
        no_squeeze: label.no_squeeze(),
        two_mode_character: character,
        invariants: inv,
        passive_factor: passive,
    };
    match format {
        Format::Json => Ok(to_json(&out)),
        Format::Csv => {
            let mut s = String::from("a,b,no_squeeze,two_mode_character,i1,i2\n");
            s.push_str(&format!(
                "{},{},{},{},{},{}\n",
                fmt12(out.a),
                fmt12(out.b),
                out.no_squeeze,
                out.two_mode_character.map(fmt12).unwrap_or_default(),
                fmt12(out.invariants.i1),
                fmt12(out.invariants.i2),
            ));
            Ok(s)
        }
    }
}

#[derive(Serialize)]
struct StateOutput {
    state: GaussianState,
    verdict: SqueezingVerdict,
}

pub fn state(payload: &str, format: Format) -> CmdResult {
    if format == Format::Csv {
        return Err(schema_err("state output is not tabular; use --format json"));
    }
    let input: StateInput = parse(payload)?;
    let state = match input {
        StateInput::Coherent {
            alpha1,
            alpha2,
            label,
        } => {
            let label = ClassLabel::new(label.a, label.b).map_err(lift)?;
            squeezed_coherent(
                Complex64::new(alpha1.re, alpha1.im),
                Complex64::new(alpha2.re, alpha2.im),
                &label,
            )
            .map_err(lift)?
        }
        StateInput::Thermal { beta, label } => {
            let label = ClassLabel::new(label.a, label.b).map_err(lift)?;
            squeezed_thermal(beta, &label).map_err(lift)?
        }
    };
    let verdict = squeezing_verdict(&state.variance);
    Ok(to_json(&StateOutput { state, verdict }))
}

pub fn scan_heterodyne(payload: &str, format: Format, tol: f64) -> CmdResult {
    // Accept either a bare state object or the wrapped output of `state`.
    let value: serde_json::Value = parse(payload)?;
    let (state_value, samples_field) = match value.get("state") {
        Some(inner) => (inner.clone(), value.get("samples").cloned()),
        None => (value.clone(), value.get("samples").cloned()),
    };
    let mut state: GaussianStateInput = serde_json::from_value(state_value).map_err(schema_err)?;
    if let Some(samples) = samples_field {
        state.samples = Some(serde_json::from_value(samples).map_err(schema_err)?);
    }
    let samples = state.samples.unwrap_or(256);
    if samples < 8 {
        return Err(schema_err(format!(
            "need at least 8 scan samples (got {samples})"
        )));
    }
    let variance = VarianceMatrix::try_new(Mat4(state.variance), tol).map_err(lift)?;
    let scan = heterodyne_scan(&variance, samples).map_err(lift)?;
    match format {
        Format::Json => Ok(to_json(&scan)),
        Format::Csv => {
            let mut s = String::from("psi,variance\n");
            for (psi, var) in &scan.samples {
                s.push_str(&format!("{},{}\n", fmt12(*psi), fmt12(*var)));
            }
            s.push_str(&format!(
                "# psi_min={},var_min={},detects={}\n",
                fmt12(scan.psi_min),
                fmt12(scan.var_min),
                scan.detects
            ));
            Ok(s)
        }
    }
}

#[derive(Serialize)]
#[serde(tag = "target", rename_all = "lowercase")]
enum SynthOutput {
    Mz {
        phi: f64,
        theta: f64,
        psi1: f64,
        psi2: f64,
        residual: f64,
    },
    Waveplates {
        alpha: f64,
        beta: f64,
        gamma: f64,
        global_phase: f64,
        residual: f64,
    },
}

pub fn synth(payload: &str, format: Format, tol: f64) -> CmdResult {
    if format == Format::Csv {
        return Err(schema_err("synth output is not tabular; use --format json"));
    }
    let input: SynthInput = parse(payload)?;
    let u = U2Element::try_new(C2::from_re_im(input.unitary.re, input.unitary.im), tol)
        .map_err(lift)?;
    let out = match input.target {
        SynthTarget::Mz => {
            let params = mz_synthesize(&u);
            let residual = mz_forward(&params).matrix().max_abs_diff(u.matrix());
            SynthOutput::Mz {
                phi: params.phi,
                theta: params.theta,
                psi1: params.psi1,
                psi2: params.psi2,
                residual,
            }
        }
        SynthTarget::Waveplates => {
            let synthesis = waveplate_synthesize(&u, false).map_err(lift)?;
            let rebuilt = waveplate_forward(&synthesis.params)
                .matrix()
                .scale(Complex64::from_polar(1.0, synthesis.global_phase));
            let residual = rebuilt.max_abs_diff(u.matrix());
            SynthOutput::Waveplates {
                alpha: synthesis.params.alpha,
                beta: synthesis.params.beta,
                gamma: synthesis.params.gamma,
                global_phase: synthesis.global_phase,
                residual,
            }
        }
    };
    let residual = match &out {
        SynthOutput::Mz { residual, .. } | SynthOutput::Waveplates { residual, .. } => *residual,
    };
    if residual > SYNTH_RESIDUAL_LIMIT {
        return Err(validation_err(format!(
            "forward verification residual {residual:.3e} exceeds {SYNTH_RESIDUAL_LIMIT:.1e}"
        )));
    }
    Ok(to_json(&out))
}

#[derive(Serialize)]
struct OctantRow {
    a: f64,
    b: f64,
    two_mode_character: Option<f64>,
    squeezed_thermal: Option<bool>,
}

pub fn octant(payload: &str, format: Format) -> CmdResult {
    let input: OctantInput = parse(payload)?;
    if !(input.a_max > 0.0 && input.a_max.is_finite()) {
        return Err(schema_err(format!(
            "a_max must be positive (got {})",
            input.a_max
        )));
    }
    if input.steps < 2 {
        return Err(schema_err(format!(
            "steps must be at least 2 (got {})",
            input.steps
        )));
    }
    let threshold = match input.beta {
        Some(beta) => Some(thermal_squeeze_threshold(beta).map_err(lift)?),
        None => None,
    };

    let mut rows = Vec::new();
    for i in 0..input.steps {
        let a = input.a_max * i as f64 / (input.steps - 1) as f64;
        for j in 0..=i {
            let b = input.a_max * j as f64 / (input.steps - 1) as f64;
            rows.push(OctantRow {
                a,
                b,
                two_mode_character: if a > 0.0 { Some(1.0 - b / a) } else { None },
                squeezed_thermal: threshold.map(|t| a + b > t),
            });
        }
    }
    match format {
        Format::Json => Ok(to_json(&rows)),
        Format::Csv => {
            let mut s = String::from("a,b,two_mode_character,squeezed_thermal\n");
            for row in rows {
                s.push_str(&format!(
                    "{},{},{},{}\n",
                    fmt12(row.a),
                    fmt12(row.b),
                    row.two_mode_character.map(fmt12).unwrap_or_default(),
                    row.squeezed_thermal
                        .map(|f| f.to_string())
                        .unwrap_or_default(),
                ));
            }
            Ok(s)
        }
    }
}
