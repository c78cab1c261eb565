//! Dense matrix realizations of the deformed ladder operators on a (possibly
//! truncated) Fock space, and residual checks of the relations they satisfy.
//!
//! Basis state `|n>` is column `n`. A raising operator has its nonzeros on the
//! subdiagonal `(n + 1, n)`, a lowering operator on the superdiagonal
//! `(n - 1, n)`.

use std::ops::Range;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::{q_number_is_zero, DeformParam};
use crate::tolerance;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Square complex matrix tagged with the operator it represents.
#[derive(Clone, Debug, PartialEq)]
pub struct FockMatrix {
    label: String,
    entries: DMatrix<Complex64>,
}

impl FockMatrix {
    pub fn new(label: impl Into<String>, entries: DMatrix<Complex64>) -> Self {
        assert!(entries.is_square(), "Fock operators are square");
        FockMatrix {
            label: label.into(),
            entries,
        }
    }

    pub fn zeros(label: impl Into<String>, dim: usize) -> Self {
        FockMatrix::new(label, DMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        FockMatrix::new("I", DMatrix::identity(dim, dim))
    }

    pub fn from_diagonal(label: impl Into<String>, diag: &[Complex64]) -> Self {
        let n = diag.len();
        FockMatrix::new(label, DMatrix::from_fn(n, n, |r, c| if r == c { diag[r] } else { ZERO }))
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[(row, col)]
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        self.entries.diagonal().iter().copied().collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self, label: impl Into<String>) -> FockMatrix {
        FockMatrix::new(label, self.entries.adjoint())
    }

    pub fn product(&self, rhs: &FockMatrix) -> FockMatrix {
        FockMatrix::new(
            format!("{}{}", self.label, rhs.label),
            &self.entries * &rhs.entries,
        )
    }

    /// Image of basis state `|n>`.
    pub fn apply_to_basis(&self, n: usize) -> Vec<Complex64> {
        self.entries.column(n).iter().copied().collect()
    }

    pub fn is_diagonal(&self) -> bool {
        let d = self.dim();
        (0..d).all(|r| (0..d).all(|c| r == c || self.entries[(r, c)] == ZERO))
    }

    /// Largest `|self_ij - other_ij|` over `i, j` in `range`.
    pub fn max_abs_diff(&self, other: &FockMatrix, range: Range<usize>) -> f64 {
        let mut worst = 0.0f64;
        for r in range.clone() {
            for c in range.clone() {
                worst = worst.max((self.entries[(r, c)] - other.entries[(r, c)]).norm());
            }
        }
        worst
    }

    /// Largest entrywise difference relative to `max(1, |self_ij|, |other_ij|)`.
    pub fn max_scaled_diff(&self, other: &FockMatrix, range: Range<usize>) -> f64 {
        let mut worst = 0.0f64;
        for r in range.clone() {
            for c in range.clone() {
                let (a, b) = (self.entries[(r, c)], other.entries[(r, c)]);
                worst = worst.max(tolerance::scaled((a - b).norm(), a.norm().max(b.norm())));
            }
        }
        worst
    }
}

/// Principal square root: nonnegative real part, and the positive imaginary
/// axis for negative reals (including a signed-zero imaginary part).
pub fn principal_sqrt(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        if z.re >= 0.0 {
            Complex64::new(z.re.sqrt(), 0.0)
        } else {
            Complex64::new(0.0, (-z.re).sqrt())
        }
    } else {
        z.sqrt()
    }
}

fn check_dim(dim: usize, min: usize) -> Result<()> {
    if dim < min {
        Err(Error::DimensionTooSmall { dim, min })
    } else {
        Ok(())
    }
}

/// `(a+, a-)` with `a+|n> = sqrt({n+1}_q)|n+1>` and `a-|n> = sqrt({n}_q)|n-1>`.
///
/// At roots of unity the entries with `{n}_q = 0` are exactly zero.
pub fn build_ladder(param: &DeformParam, dim: usize) -> Result<(FockMatrix, FockMatrix)> {
    check_dim(dim, 1)?;
    let roots: Vec<Complex64> = (0..dim as u64).map(|n| principal_sqrt(param.q_number(n))).collect();
    let mut a_plus = FockMatrix::zeros("a+", dim);
    let mut a_minus = FockMatrix::zeros("a-", dim);
    for (n, &r) in roots.iter().enumerate().skip(1) {
        a_plus.entries[(n, n - 1)] = r;
        a_minus.entries[(n - 1, n)] = r;
    }
    Ok((a_plus, a_minus))
}

/// `(a+^dag, a-^dag)`, the conjugate transposes of [`build_ladder`].
pub fn build_adjoint_ladder(param: &DeformParam, dim: usize) -> Result<(FockMatrix, FockMatrix)> {
    let (a_plus, a_minus) = build_ladder(param, dim)?;
    Ok((a_plus.adjoint("a+^dag"), a_minus.adjoint("a-^dag")))
}

/// `N = diag(0, 1, ..., dim - 1)`.
pub fn number_operator(dim: usize) -> FockMatrix {
    let diag: Vec<Complex64> = (0..dim).map(|n| Complex64::new(n as f64, 0.0)).collect();
    FockMatrix::from_diagonal("N", &diag)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Shift {
    /// `|{N}_q|`
    Zero,
    /// `|{N + 1}_q|`
    One,
}

/// `diag(|{n + shift}_q|)` for `n = 0..dim`.
pub fn abs_qnumber_diag(param: &DeformParam, dim: usize, shift: Shift) -> FockMatrix {
    let s = match shift {
        Shift::Zero => 0,
        Shift::One => 1,
    };
    let diag: Vec<Complex64> = (0..dim as u64)
        .map(|n| Complex64::new(param.abs_q_number(n + s), 0.0))
        .collect();
    let label = match shift {
        Shift::Zero => "|{N}|",
        Shift::One => "|{N+1}|",
    };
    FockMatrix::from_diagonal(label, &diag)
}

/// States on which the truncated matrices represent the algebra faithfully.
///
/// The truncation loses the transition out of the top state `dim - 1` unless
/// `{dim}_q` vanishes, which happens at roots of unity when `m | j dim`
/// (in particular at `dim = m`).
pub fn safe_subspace(param: &DeformParam, dim: usize) -> Range<usize> {
    match param.as_root() {
        Some(r) if q_number_is_zero(dim as u64, r) => 0..dim,
        _ => 0..dim.saturating_sub(1),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RelationId {
    /// `a- a+ - q a+ a- = 1`
    Aq,
    /// `a+^dag a-^dag - q* a-^dag a+^dag = 1`
    AqBar,
    /// `a+^dag a+ = |{N+1}|`
    Bob1,
    /// `a+ a+^dag = |{N}|`
    Bob2,
    /// `a- a-^dag - q a-^dag a- = 1`, real q
    Bob3,
    /// `a+^dag a+ - q a+ a+^dag = 1`, real q
    Bob3plus,
    /// `a- a-^dag - q^{1/2} a-^dag a- = q^{-N/2}`, fundamental root
    Bob5,
    /// `a+^dag a+ - q^{1/2} a+ a+^dag = q^{-N/2}`, fundamental root
    Bob5b,
    /// `[N, a+] = a+`
    NCommPlus,
    /// `[N, a-] = -a-`
    NCommMinus,
}

impl RelationId {
    pub fn name(&self) -> &'static str {
        match self {
            RelationId::Aq => "Aq",
            RelationId::AqBar => "AqBar",
            RelationId::Bob1 => "Bob1",
            RelationId::Bob2 => "Bob2",
            RelationId::Bob3 => "Bob3",
            RelationId::Bob3plus => "Bob3plus",
            RelationId::Bob5 => "Bob5",
            RelationId::Bob5b => "Bob5b",
            RelationId::NCommPlus => "NCommPlus",
            RelationId::NCommMinus => "NCommMinus",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationResidual {
    pub relation: RelationId,
    /// Largest `|lhs - rhs|` entry on the checked subspace.
    pub max_abs_residual: f64,
    /// Same, each entry divided by `max(1, largest term magnitude)` there.
    /// Equals `max_abs_residual` whenever the terms are of order one.
    pub scaled_residual: f64,
    pub checked_subspace: Range<usize>,
}

impl RelationResidual {
    pub fn passes(&self, tolerance: f64) -> bool {
        self.scaled_residual < tolerance
    }
}

/// `sum_k c_k T_k - rhs` over `range x range`.
fn residual(
    relation: RelationId,
    terms: &[(Complex64, &FockMatrix)],
    rhs: &FockMatrix,
    range: Range<usize>,
) -> RelationResidual {
    let mut abs = 0.0f64;
    let mut scaled = 0.0f64;
    for r in range.clone() {
        for c in range.clone() {
            let mut value = -rhs.get(r, c);
            let mut magnitude = rhs.get(r, c).norm();
            for (coef, t) in terms {
                let term = coef * t.get(r, c);
                value += term;
                magnitude = magnitude.max(term.norm());
            }
            abs = abs.max(value.norm());
            scaled = scaled.max(tolerance::scaled(value.norm(), magnitude));
        }
    }
    RelationResidual {
        relation,
        max_abs_residual: abs,
        scaled_residual: scaled,
        checked_subspace: range,
    }
}

/// Residuals of the oscillator relations that hold for `param`.
///
/// Always checked: `Aq`, `AqBar`, `Bob1`, `Bob2` and both number-operator
/// commutators. Real `q` adds the `Bob3` pair, the fundamental root the
/// `Bob5` pair. Commutators hold on the whole truncated space; the rest on
/// [`safe_subspace`].
pub fn verify_relations(param: &DeformParam, dim: usize) -> Result<Vec<RelationResidual>> {
    check_dim(dim, 2)?;
    let (a_plus, a_minus) = build_ladder(param, dim)?;
    let a_plus_dag = a_plus.adjoint("a+^dag");
    let a_minus_dag = a_minus.adjoint("a-^dag");
    let n_op = number_operator(dim);
    let id = FockMatrix::identity(dim);
    let q = param.q();
    let safe = safe_subspace(param, dim);
    let full = 0..dim;

    let am_ap = a_minus.product(&a_plus);
    let ap_am = a_plus.product(&a_minus);
    let apd_amd = a_plus_dag.product(&a_minus_dag);
    let amd_apd = a_minus_dag.product(&a_plus_dag);
    let apd_ap = a_plus_dag.product(&a_plus);
    let ap_apd = a_plus.product(&a_plus_dag);
    let am_amd = a_minus.product(&a_minus_dag);
    let amd_am = a_minus_dag.product(&a_minus);
    let abs_n = abs_qnumber_diag(param, dim, Shift::Zero);
    let abs_n1 = abs_qnumber_diag(param, dim, Shift::One);

    let mut out = vec![
        residual(RelationId::Aq, &[(ONE, &am_ap), (-q, &ap_am)], &id, safe.clone()),
        residual(
            RelationId::AqBar,
            &[(ONE, &apd_amd), (-q.conj(), &amd_apd)],
            &id,
            safe.clone(),
        ),
        residual(RelationId::Bob1, &[(ONE, &apd_ap)], &abs_n1, safe.clone()),
        residual(RelationId::Bob2, &[(ONE, &ap_apd)], &abs_n, safe.clone()),
    ];

    match param {
        DeformParam::Real(_) => {
            out.push(residual(
                RelationId::Bob3,
                &[(ONE, &am_amd), (-q, &amd_am)],
                &id,
                safe.clone(),
            ));
            out.push(residual(
                RelationId::Bob3plus,
                &[(ONE, &apd_ap), (-q, &ap_apd)],
                &id,
                safe.clone(),
            ));
        }
        DeformParam::Root(root) if root.is_fundamental() => {
            let half = root.half_root();
            let sqrt_q = half.value();
            let diag: Vec<Complex64> = (0..dim as i128)
                .map(|n| half.angle().scale(-n).to_complex())
                .collect();
            let rhs = FockMatrix::from_diagonal("q^{-N/2}", &diag);
            out.push(residual(
                RelationId::Bob5,
                &[(ONE, &am_amd), (-sqrt_q, &amd_am)],
                &rhs,
                safe.clone(),
            ));
            out.push(residual(
                RelationId::Bob5b,
                &[(ONE, &apd_ap), (-sqrt_q, &ap_apd)],
                &rhs,
                safe.clone(),
            ));
        }
        DeformParam::Root(_) => {}
    }

    let n_ap = n_op.product(&a_plus);
    let ap_n = a_plus.product(&n_op);
    let n_am = n_op.product(&a_minus);
    let am_n = a_minus.product(&n_op);
    out.push(residual(
        RelationId::NCommPlus,
        &[(ONE, &n_ap), (-ONE, &ap_n)],
        &a_plus,
        full.clone(),
    ));
    let neg_a_minus = FockMatrix::new("-a-", -a_minus.entries.clone());
    out.push(residual(
        RelationId::NCommMinus,
        &[(ONE, &n_am), (-ONE, &am_n)],
        &neg_a_minus,
        full,
    ));
    Ok(out)
}
