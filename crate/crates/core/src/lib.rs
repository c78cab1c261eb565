//! Gauss polynomials (Q-numbers) and the q-deformed harmonic oscillator
//! algebra built on them.
//!
//! The crate is layered bottom-up:
//!
//! * [`poly`] and [`gauss`]: exact integer polynomials in `q`, Gauss
//!   binomials, Q-numbers and a brute-force restricted-partition counter.
//! * [`roots`]: roots of unity with exact angle bookkeeping, the integer
//!   vanishing predicate for Q-numbers and the q-bracket.
//! * [`fock`]: dense ladder-operator matrices on (truncated) Fock spaces and
//!   residual checks of the oscillator relations.
//! * [`reducibility`]: classification of the Fock module and its block
//!   decomposition at non-primitive roots.
//! * [`hamiltonian`]: the deformed oscillator Hamiltonian and its spectrum.
//! * [`polychronakos`]: the realization of the deformed ladder operators as
//!   rescaled undeformed ones.

pub mod error;
pub mod fock;
pub mod gauss;
pub mod hamiltonian;
pub mod poly;
pub mod polychronakos;
pub mod reducibility;
pub mod roots;
pub mod tolerance;

pub use error::{Error, Result};
pub use fock::{FockMatrix, RelationId, RelationResidual};
pub use gauss::{gauss_binomial, gauss_generating, partition_count, q_number, PartitionSpec};
pub use hamiltonian::SpectrumReport;
pub use poly::QPoly;
pub use reducibility::{IrrepDecomposition, RepClass};
pub use roots::{DeformParam, HalfRoot, PiAngle, RootOfUnity};

pub use num_bigint::BigInt;
pub use num_complex::Complex64;
