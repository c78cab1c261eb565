//! Gauss generating function, Gauss binomials and Q-numbers.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::poly::QPoly;

/// Generating function of partitions into at most `m` parts, each at most `n`:
///
/// ```text
/// G(n, m; q) = prod_{k=1..n} (1 - q^{m+k}) / prod_{k=1..n} (1 - q^k)
/// ```
///
/// Built one factor pair at a time; every partial ratio is itself `G(k, m)`,
/// so each division is exact and the intermediate degrees stay small. The
/// result is a genuine polynomial, so `q = 1` needs no special treatment.
pub fn gauss_generating(n: usize, m: usize) -> QPoly {
    (1..=n).fold(QPoly::one(), |acc, k| {
        let num = &acc * &QPoly::one_minus_q_pow(m + k);
        num.divide_exact(&QPoly::one_minus_q_pow(k))
            .expect("G(k, m) is a polynomial for every k")
    })
}

/// Gauss polynomial `[n over m] = G(n - m, m; q)` for `0 <= m <= n`, zero otherwise.
pub fn gauss_binomial(n: usize, m: i64) -> QPoly {
    match usize::try_from(m) {
        Ok(m) if m <= n => gauss_generating(n - m, m),
        _ => QPoly::zero(),
    }
}

/// Q-number `{n}_q = 1 + q + ... + q^{n-1}`; the zero polynomial for `n = 0`.
pub fn q_number(n: usize) -> QPoly {
    QPoly::from_coeffs(vec![BigInt::one(); n])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartitionSpec {
    pub target: u64,
    pub max_parts: u64,
    pub max_part_size: u64,
}

impl PartitionSpec {
    pub fn new(target: u64, max_parts: u64, max_part_size: u64) -> Self {
        PartitionSpec {
            target,
            max_parts,
            max_part_size,
        }
    }
}

/// Number of partitions of `spec.target` into at most `spec.max_parts` parts,
/// each at most `spec.max_part_size`, by exhaustive enumeration.
///
/// Parts are generated in non-increasing order so every partition is visited
/// once. Exponential in the target; meant as an oracle for small inputs.
pub fn partition_count(spec: PartitionSpec) -> u64 {
    fn count(remaining: u64, parts_left: u64, largest: u64) -> u64 {
        if remaining == 0 {
            return 1;
        }
        if parts_left == 0 || largest == 0 {
            return 0;
        }
        // Prune: even the largest allowed parts cannot reach the target.
        if parts_left.saturating_mul(largest) < remaining {
            return 0;
        }
        (1..=largest.min(remaining))
            .rev()
            .map(|part| count(remaining - part, parts_left - 1, part))
            .sum()
    }
    count(spec.target, spec.max_parts, spec.max_part_size)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> QPoly {
        QPoly::from_i64s(c)
    }

    #[test]
    fn generating_examples() {
        assert_eq!(gauss_generating(2, 2), p(&[1, 1, 2, 1, 1]));
        assert_eq!(gauss_generating(7, 0), QPoly::one());
        assert_eq!(gauss_generating(0, 7), QPoly::one());
        assert_eq!(gauss_generating(0, 0), QPoly::one());
    }

    #[test]
    fn generating_matches_partitions_for_small_case() {
        let counts: Vec<u64> = (0..=4)
            .map(|n| partition_count(PartitionSpec::new(n, 2, 2)))
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 1, 1]);
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(gauss_binomial(4, 2), p(&[1, 1, 2, 1, 1]));
        for n in 0..8 {
            assert_eq!(gauss_binomial(n, 0), QPoly::one());
            assert_eq!(gauss_binomial(n, n as i64), QPoly::one());
        }
        assert_eq!(gauss_binomial(3, 5), QPoly::zero());
        assert_eq!(gauss_binomial(3, -1), QPoly::zero());
    }

    #[test]
    fn q_number_examples() {
        assert_eq!(q_number(3), p(&[1, 1, 1]));
        assert_eq!(q_number(0), QPoly::zero());
        assert_eq!(q_number(5).value_at_one(), BigInt::from(5));
        assert_eq!(q_number(6), gauss_binomial(6, 1));
    }

    #[test]
    fn partition_examples() {
        assert_eq!(partition_count(PartitionSpec::new(2, 2, 2)), 2);
        assert_eq!(partition_count(PartitionSpec::new(0, 3, 4)), 1);
        assert_eq!(partition_count(PartitionSpec::new(0, 0, 0)), 1);
        assert_eq!(partition_count(PartitionSpec::new(5, 2, 2)), 0);
        // Unrestricted partitions of 10.
        assert_eq!(partition_count(PartitionSpec::new(10, 10, 10)), 42);
    }
}
