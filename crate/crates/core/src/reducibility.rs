//! Reducibility of the Fock representation.
//!
//! * real `q > 0`: no Q-number vanishes, the module is irreducible and infinite;
//! * primitive `m`-th root: `{m}_q = 0` closes an irreducible block of dim `m`;
//! * non-primitive root `q_j`: with `r = gcd(j, m)` and `l = m / r`, already
//!   `{l}_q = 0`, and the `m` states split into `r` blocks of dimension `l`.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::fock::build_ladder;
use crate::roots::{q_number_is_zero, DeformParam, RootOfUnity};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrrepDecomposition {
    pub ambient_dim: usize,
    pub block_count: usize,
    pub block_dim: usize,
    /// `[k l, (k + 1) l)` for `k = 0..r`, ascending.
    pub blocks: Vec<Range<usize>>,
}

impl IrrepDecomposition {
    /// Block containing state `n`.
    pub fn block_of(&self, n: usize) -> Option<usize> {
        (n < self.ambient_dim).then(|| n / self.block_dim)
    }

    pub fn top_states(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.end - 1).collect()
    }

    pub fn bottom_states(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.start).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RepClass {
    IrreducibleInfinite,
    IrreducibleFinite { dim: usize },
    Reducible { decomposition: IrrepDecomposition },
}

pub fn classify(param: &DeformParam) -> RepClass {
    match param {
        DeformParam::Real(_) => RepClass::IrreducibleInfinite,
        DeformParam::Root(root) if root.is_primitive() => RepClass::IrreducibleFinite {
            dim: root.order() as usize,
        },
        DeformParam::Root(root) => RepClass::Reducible {
            decomposition: decompose(root),
        },
    }
}

/// Splits the `m` states into `gcd(j, m)` consecutive blocks of `m / gcd(j, m)`.
/// A primitive root gives a single block.
pub fn decompose(root: &RootOfUnity) -> IrrepDecomposition {
    let m = root.order() as usize;
    let r = root.gcd() as usize;
    let l = m / r;
    IrrepDecomposition {
        ambient_dim: m,
        block_count: r,
        block_dim: l,
        blocks: (0..r).map(|k| k * l..(k + 1) * l).collect(),
    }
}

/// Smallest `n > 0` with `{n}_q = 0`, found by scanning the exact predicate.
pub fn smallest_vanishing_index(root: &RootOfUnity) -> u64 {
    (1..=root.order())
        .find(|&n| q_number_is_zero(n, root))
        .expect("{m}_q vanishes at every m-th root")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundaryViolation {
    /// `a+` kills a state that is not a block top, or misses a block top.
    Raising { state: usize, annihilated: bool },
    /// `a-` kills a state that is not a block bottom, or misses a block bottom.
    Lowering { state: usize, annihilated: bool },
    /// The exact predicate disagrees with the inspected matrix entry.
    Predicate { n: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantSubspaceReport {
    pub root: RootOfUnity,
    /// States `n` with `a+|n> = 0` on the `m`-dimensional space.
    pub raising_kernel: Vec<usize>,
    /// States `n` with `a-|n> = 0`.
    pub lowering_kernel: Vec<usize>,
    pub violations: Vec<BoundaryViolation>,
}

impl InvariantSubspaceReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that the ladder matrices at `dim = m` decouple exactly along the
/// blocks of `decomposition`: `a+` kills precisely the block tops and `a-`
/// precisely the block bottoms, so each block is invariant under
/// `{a-, a+, N, I}` and no smaller consecutive range is.
///
/// Entries are compared with exact zero, which is sound because
/// [`build_ladder`] writes zero exactly where the integer predicate vanishes.
pub fn verify_invariant_subspaces(
    root: &RootOfUnity,
    decomposition: &IrrepDecomposition,
) -> InvariantSubspaceReport {
    let m = root.order() as usize;
    let (a_plus, a_minus) =
        build_ladder(&DeformParam::Root(*root), m).expect("root order is at least 2");
    let zero = num_complex::Complex64::new(0.0, 0.0);

    let mut violations = Vec::new();
    for n in 1..=m as u64 {
        // Entry carrying sqrt({n}) is (n, n-1) in a+ and (n-1, n) in a-.
        let predicate = q_number_is_zero(n, root);
        if (n as usize) < m {
            let inspected = a_plus.get(n as usize, n as usize - 1) == zero;
            let inspected_minus = a_minus.get(n as usize - 1, n as usize) == zero;
            if predicate != inspected || predicate != inspected_minus {
                violations.push(BoundaryViolation::Predicate { n });
            }
        } else if !predicate {
            violations.push(BoundaryViolation::Predicate { n });
        }
    }

    // The image of the top state m-1 leaves the space; its fate is {m} = 0.
    let raising_kernel: Vec<usize> = (0..m)
        .filter(|&n| {
            if n + 1 < m {
                a_plus.apply_to_basis(n).iter().all(|z| *z == zero)
            } else {
                q_number_is_zero(m as u64, root)
            }
        })
        .collect();
    let lowering_kernel: Vec<usize> = (0..m)
        .filter(|&n| a_minus.apply_to_basis(n).iter().all(|z| *z == zero))
        .collect();

    let tops = decomposition.top_states();
    let bottoms = decomposition.bottom_states();
    for n in 0..m {
        let killed = raising_kernel.contains(&n);
        if killed != tops.contains(&n) {
            violations.push(BoundaryViolation::Raising {
                state: n,
                annihilated: killed,
            });
        }
        let killed = lowering_kernel.contains(&n);
        if killed != bottoms.contains(&n) {
            violations.push(BoundaryViolation::Lowering {
                state: n,
                annihilated: killed,
            });
        }
    }

    InvariantSubspaceReport {
        root: *root,
        raising_kernel,
        lowering_kernel,
        violations,
    }
}

/// Largest difference of entry moduli between each block of the `m`-dim
/// ladder pair and the `l`-dim ladder pair at the reduced root.
///
/// Only moduli are compared; the phases of `sqrt({n}_q)` may differ between
/// equivalent blocks.
pub fn block_modulus_discrepancy(root: &RootOfUnity) -> f64 {
    let dec = decompose(root);
    let m = dec.ambient_dim;
    let l = dec.block_dim;
    let (ap, am) = build_ladder(&DeformParam::Root(*root), m).expect("m >= 2");
    let (bp, bm) = build_ladder(&DeformParam::Root(root.reduced()), l).expect("l >= 2");
    let mut worst = 0.0f64;
    for block in &dec.blocks {
        let o = block.start;
        for r in 0..l {
            for c in 0..l {
                worst = worst.max((ap.get(o + r, o + c).norm() - bp.get(r, c).norm()).abs());
                worst = worst.max((am.get(o + r, o + c).norm() - bm.get(r, c).norm()).abs());
            }
        }
    }
    worst
}
