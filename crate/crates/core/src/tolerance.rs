//! Comparison tolerances shared by the verifiers.
//!
//! Residuals are measured entrywise. Where an entry involves values much
//! larger than one (real `q > 1` grows geometrically), the residual is also
//! reported relative to the largest term magnitude at that entry, see
//! [`scaled`].

/// Identity checks at double precision (bracket relations, CLI default).
pub const IDENTITY: f64 = 1e-10;

/// Matrix relations, realizations and spectra built from the same formulas.
pub const MATRIX: f64 = 1e-12;

/// Float evaluation agreeing with the exact vanishing predicate.
pub const ZERO_DETECTION: f64 = 1e-9;

/// `|residual| / max(1, magnitude)`.
pub fn scaled(residual: f64, magnitude: f64) -> f64 {
    residual / magnitude.max(1.0)
}
