//! Two-mode Gaussian optics on Sp(4, R).
//!
//! The crate models linear canonical transformations of a two-mode quantum
//! system: construction and classification of squeezing transformations into
//! passive-equivalence classes (a, b), evolution and squeezing detection of
//! Gaussian variance matrices, and synthesis of passive optics (Mach-Zehnder
//! settings, wave-plate triples) and heterodyne detection models.
//!
//! Conventions, used everywhere and worth stating once:
//!
//! * Quadratures are ordered (q1, q2, p1, p2).
//! * The vacuum variance matrix is (1/2) I; a state is squeezed exactly when
//!   the least eigenvalue of its variance matrix is below 1/2. Other texts
//!   normalize the vacuum to 1 — multiply by 2 when comparing.
//! * All angles are radians.
//!
//! Every type is an immutable value and every operation is a pure function,
//! so the whole API is safe to use from concurrent contexts.

pub mod classification;
pub mod detection;
pub mod error;
pub mod linalg;
pub mod states;
pub mod symplectic;
pub mod synthesis;

pub use classification::{
    canonicalize, caves_schumaker_vectors, class_from_invariants, class_of_positive,
    classify_symplectic, gram_matrix, invariants, product_class, representative_symplectic,
    single_mode_vectors, squeeze_symplectic, two_mode_character, Canonicalization, ClassLabel,
    GramMatrix, InvariantPair, SqueezeVectors,
};
pub use detection::{
    heterodyne_quadrature_vector, heterodyne_scan, heterodyne_unitary, quadrature_variance,
    HeterodyneScan, HeterodyneSetting,
};
pub use error::Error;
pub use linalg::{expm, sym_eigen, Mat4, Vec4, C2, C4};
pub use states::{
    apply_symplectic, coherent_state, least_eigenvalue, squeezed_coherent, squeezed_thermal,
    squeezing_verdict, thermal_squeeze_threshold, thermal_state, wavefunction, GaussianState,
    SqueezingVerdict, VarianceMatrix,
};
pub use symplectic::{
    algebra_element, beta_form, complex_form, embed_u2, extract_u2, generator_matrix,
    is_symplectic, omega_map, polar_decompose, quadratic_form, symplectic_residual, Generator,
    GeneratorBasis, PolarDecomposition, Sp4Matrix, U2Element, DEFAULT_TOL,
};
pub use synthesis::{
    mz_forward, mz_synthesize, waveplate_forward, waveplate_synthesize, MachZehnderParams,
    WaveplateParams, WaveplateSynthesis,
};
