//! Input payload schemas. Every subcommand validates its payload against
//! these structures (unknown fields rejected) before any computation runs.

use serde::Deserialize;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifyInput {
    /// Row-major 4x4 symplectic matrix, quadrature order (q1, q2, p1, p2).
    pub matrix: Option<[[f64; 4]; 4]>,
    /// Squeeze-vector pair.
    pub vectors: Option<VectorsInput>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorsInput {
    pub k: [f64; 3],
    pub l: [f64; 3],
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexInput {
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelInput {
    pub a: f64,
    pub b: f64,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum StateInput {
    Coherent {
        alpha1: ComplexInput,
        alpha2: ComplexInput,
        label: LabelInput,
    },
    Thermal {
        beta: f64,
        label: LabelInput,
    },
}

/// Bare Gaussian state, as emitted inside the `state` field of `state`
/// output. `scan-heterodyne` accepts either this shape or the full wrapped
/// output object.
#[derive(Debug, Deserialize)]
pub struct GaussianStateInput {
    #[allow(dead_code)]
    pub mean: [f64; 4],
    pub variance: [[f64; 4]; 4],
    #[serde(default)]
    pub samples: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitaryInput {
    pub re: [[f64; 2]; 2],
    pub im: [[f64; 2]; 2],
}

#[derive(Debug, Deserialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum SynthTarget {
    Mz,
    Waveplates,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SynthInput {
    pub unitary: UnitaryInput,
    pub target: SynthTarget,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OctantInput {
    /// Upper bound of the a axis; the grid spans the octant a >= b >= 0.
    pub a_max: f64,
    /// Number of grid points along each axis (>= 2).
    pub steps: usize,
    /// Optional inverse temperature for the thermal squeezing flag.
    #[serde(default)]
    pub beta: Option<f64>,
}
