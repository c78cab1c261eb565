//! The deformed oscillator Hamiltonian
//!
//! ```text
//! H = 1/2 (a- a-^dag + a-^dag a-) = 1/2 (a+ a+^dag + a+^dag a+)
//!   = 1/2 (|{N+1}_q| + |{N}_q|)
//! ```
//!
//! Energies are in units of `hbar omega`, i.e. `hbar omega = 1`.

use nalgebra::SymmetricEigen;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fock::{build_adjoint_ladder, build_ladder, safe_subspace, FockMatrix};
use crate::reducibility::{decompose, IrrepDecomposition};
use crate::roots::{DeformParam, RootOfUnity};
use crate::tolerance;

pub const ENERGY_UNIT: &str = "hbar_omega";

/// Diagonal `1/2 (|{n+1}_q| + |{n}_q|)`, `n = 0..dim`.
pub fn build_hamiltonian(param: &DeformParam, dim: usize) -> FockMatrix {
    let diag: Vec<Complex64> = (0..dim as u64)
        .map(|n| Complex64::new(0.5 * (param.abs_q_number(n + 1) + param.abs_q_number(n)), 0.0))
        .collect();
    FockMatrix::from_diagonal("H", &diag)
}

/// Builds `H` from the `a-` products, from the `a+` products and from the
/// moduli directly, and returns the largest pairwise entry discrepancy on the
/// truncation-safe subspace.
pub fn hamiltonian_equivalence_check(param: &DeformParam, dim: usize) -> Result<f64> {
    let (a_plus, a_minus) = build_ladder(param, dim)?;
    let (a_plus_dag, a_minus_dag) = build_adjoint_ladder(param, dim)?;
    let half = Complex64::new(0.5, 0.0);
    let from_minus = FockMatrix::new(
        "H-",
        (a_minus.product(&a_minus_dag).entries() + a_minus_dag.product(&a_minus).entries()) * half,
    );
    let from_plus = FockMatrix::new(
        "H+",
        (a_plus.product(&a_plus_dag).entries() + a_plus_dag.product(&a_plus).entries()) * half,
    );
    let direct = build_hamiltonian(param, dim);
    let safe = safe_subspace(param, dim);
    Ok([
        from_minus.max_abs_diff(&from_plus, safe.clone()),
        from_minus.max_abs_diff(&direct, safe.clone()),
        from_plus.max_abs_diff(&direct, safe),
    ]
    .into_iter()
    .fold(0.0, f64::max))
}

/// Eigenvalues of a Hermitian matrix in ascending order, by a general dense
/// solver. Used to cross-check the diagonal reading of the spectrum.
pub fn hermitian_eigenvalues(h: &FockMatrix) -> Vec<f64> {
    let eig = SymmetricEigen::new(h.entries().clone());
    let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values
}

/// Largest difference between the sorted diagonal and the sorted eigenvalues.
pub fn eigen_crosscheck(param: &DeformParam, dim: usize) -> f64 {
    let h = build_hamiltonian(param, dim);
    let mut diag: Vec<f64> = h.diagonal().iter().map(|z| z.re).collect();
    diag.sort_by(f64::total_cmp);
    hermitian_eigenvalues(&h)
        .iter()
        .zip(&diag)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub param: DeformParam,
    pub dim: usize,
    pub energy_unit: String,
    pub diagonal: Vec<f64>,
    /// Present for every root of unity at its natural dimension; a primitive
    /// root has a single block.
    pub blocks: Option<IrrepDecomposition>,
    /// The diagonal is the first block's `l` values repeated `r` times.
    /// Vacuously true when there are no blocks.
    pub block_pattern_verified: bool,
}

pub fn spectrum_report(param: &DeformParam, dim: usize) -> SpectrumReport {
    let diagonal: Vec<f64> = build_hamiltonian(param, dim)
        .diagonal()
        .iter()
        .map(|z| z.re)
        .collect();
    let blocks = param
        .as_root()
        .filter(|r| r.order() as usize == dim)
        .map(decompose);
    let block_pattern_verified = blocks
        .as_ref()
        .is_none_or(|dec| block_pattern_holds(&diagonal, dec, tolerance::MATRIX));
    SpectrumReport {
        param: *param,
        dim,
        energy_unit: ENERGY_UNIT.to_string(),
        diagonal,
        blocks,
        block_pattern_verified,
    }
}

/// Every block of `diagonal` repeats block 0 within `tol`.
pub fn block_pattern_holds(diagonal: &[f64], dec: &IrrepDecomposition, tol: f64) -> bool {
    let l = dec.block_dim;
    diagonal.len() == dec.ambient_dim
        && diagonal
            .chunks(l)
            .all(|chunk| chunk.iter().zip(&diagonal[..l]).all(|(a, b)| (a - b).abs() <= tol))
}

/// `H` at `q_j` and at the inverse root `q_{m-j}` agree entrywise.
pub fn inverse_root_check(root: &RootOfUnity) -> bool {
    let m = root.order() as usize;
    let h = build_hamiltonian(&DeformParam::Root(*root), m);
    let h_inv = build_hamiltonian(&DeformParam::Root(root.inverse()), m);
    h.max_abs_diff(&h_inv, 0..m) <= tolerance::MATRIX
}
