//! Deformed ladder operators as rescaled undeformed ones:
//!
//! ```text
//! a- = a U-(N - 1),   a+ = U+(N) a^dag,   U+(n) = U-(n - 1) = sqrt({n}_q / n)
//! ```
//!
//! so that `F(n) = U+(n) U-(n - 1) n = {n}_q` solves `F(n + 1) - q F(n) = 1`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{build_ladder, principal_sqrt, FockMatrix};
use crate::roots::DeformParam;
use crate::tolerance;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScalingKind {
    UPlus,
    UMinus,
}

/// Diagonal scaling factors indexed by the Fock state they multiply.
///
/// For `UPlus`, `values[n] = U+(q, n)`; for `UMinus`, `values[n] = U-(q, n - 1)`.
/// Both equal `sqrt({n}_q / n)`. The singular point `n = 0` stores `1`: it is
/// only ever multiplied by a vanishing ladder entry, and `1` is the `q -> 1`
/// limit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingFunction {
    pub param: DeformParam,
    pub kind: ScalingKind,
    pub values: Vec<Complex64>,
}

fn scale_factor(param: &DeformParam, n: u64) -> Complex64 {
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    principal_sqrt(param.q_number(n) / n as f64)
}

pub fn scaling_function(param: &DeformParam, kind: ScalingKind, dim: usize) -> ScalingFunction {
    ScalingFunction {
        param: *param,
        kind,
        values: (0..dim as u64).map(|n| scale_factor(param, n)).collect(),
    }
}

/// Undeformed `(a, a^dag)` on `dim` states.
pub fn undeformed_ladder(dim: usize) -> (FockMatrix, FockMatrix) {
    let mut a = FockMatrix::zeros("a", dim);
    let mut entries = a.entries().clone();
    for n in 1..dim {
        entries[(n - 1, n)] = Complex64::new((n as f64).sqrt(), 0.0);
    }
    a = FockMatrix::new("a", entries);
    let a_dag = a.adjoint("a^dag");
    (a, a_dag)
}

/// `(a-, a+)` built from the undeformed pair and the diagonal scalings.
pub fn realize_deformed(param: &DeformParam, dim: usize) -> Result<(FockMatrix, FockMatrix)> {
    if dim < 2 {
        return Err(Error::DimensionTooSmall { dim, min: 2 });
    }
    let (a, a_dag) = undeformed_ladder(dim);
    let u_minus = scaling_function(param, ScalingKind::UMinus, dim);
    let u_plus = scaling_function(param, ScalingKind::UPlus, dim);
    let d_minus = FockMatrix::from_diagonal("U-(N-1)", &u_minus.values);
    let d_plus = FockMatrix::from_diagonal("U+(N)", &u_plus.values);
    let a_minus = FockMatrix::new("a-", (a.product(&d_minus)).entries().clone());
    let a_plus = FockMatrix::new("a+", (d_plus.product(&a_dag)).entries().clone());
    Ok((a_minus, a_plus))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealizationComparison {
    /// Largest entrywise difference, relative to `max(1, |entry|)`.
    pub max_entry_diff: f64,
    /// Largest difference of entry moduli.
    pub max_modulus_diff: f64,
}

/// Compares [`realize_deformed`] with the direct ladder construction.
///
/// For real `q` the entries agree; at roots only the moduli are expected to,
/// since `sqrt(ab)` and `sqrt(a) sqrt(b)` can differ by a sign.
pub fn compare_with_ladder(param: &DeformParam, dim: usize) -> Result<RealizationComparison> {
    let (rm, rp) = realize_deformed(param, dim)?;
    let (lp, lm) = build_ladder(param, dim)?;
    let all = 0..dim;
    let mut modulus = 0.0f64;
    for (x, y) in [(&rm, &lm), (&rp, &lp)] {
        for r in all.clone() {
            for c in all.clone() {
                modulus = modulus.max((x.get(r, c).norm() - y.get(r, c).norm()).abs());
            }
        }
    }
    Ok(RealizationComparison {
        max_entry_diff: rm.max_scaled_diff(&lm, all.clone()).max(rp.max_scaled_diff(&lp, all)),
        max_modulus_diff: modulus,
    })
}

/// `F(q, n) = U+(n) U-(n - 1) n` for `n = 0..=n_max`.
pub fn f_values(param: &DeformParam, n_max: usize) -> Vec<Complex64> {
    let u_plus = scaling_function(param, ScalingKind::UPlus, n_max + 1);
    let u_minus = scaling_function(param, ScalingKind::UMinus, n_max + 1);
    (0..=n_max)
        .map(|n| u_plus.values[n] * u_minus.values[n] * n as f64)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FRecurrenceReport {
    pub n_max: usize,
    /// Largest `|F(n+1) - q F(n) - 1|` for `n < n_max`, relative to
    /// `max(1, |F(n+1)|, |q F(n)|)`.
    pub recurrence_residual: f64,
    /// Largest `|F(n) - {n}_q|`, relative to `max(1, |{n}_q|)`.
    pub q_number_residual: f64,
}

impl FRecurrenceReport {
    pub fn passes(&self, tolerance: f64) -> bool {
        self.recurrence_residual < tolerance && self.q_number_residual < tolerance
    }
}

pub fn verify_f_recurrence(param: &DeformParam, n_max: usize) -> FRecurrenceReport {
    let f = f_values(param, n_max);
    let q = param.q();
    let one = Complex64::new(1.0, 0.0);
    let recurrence_residual = (0..n_max)
        .map(|n| {
            let lhs = f[n + 1] - q * f[n];
            tolerance::scaled((lhs - one).norm(), f[n + 1].norm().max((q * f[n]).norm()))
        })
        .fold(0.0, f64::max);
    let q_number_residual = (0..=n_max)
        .map(|n| {
            let want = param.q_number(n as u64);
            tolerance::scaled((f[n] - want).norm(), want.norm())
        })
        .fold(0.0, f64::max);
    FRecurrenceReport {
        n_max,
        recurrence_residual,
        q_number_residual,
    }
}

/// `a+ = a-^dag` entrywise within [`tolerance::MATRIX`] (relative to the
/// entry size).
pub fn unitarity_check(param: &DeformParam, dim: usize) -> Result<bool> {
    let (a_minus, a_plus) = realize_deformed(param, dim)?;
    let a_minus_dag = a_minus.adjoint("a-^dag");
    Ok(a_plus.max_scaled_diff(&a_minus_dag, 0..dim) <= tolerance::MATRIX)
}
