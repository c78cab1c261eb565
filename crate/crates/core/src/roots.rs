//! Roots of unity, half-roots and the q-bracket.
//!
//! Angles are carried as exact rational multiples of `pi` and only turned into
//! floats at the final `sin`/`cos`. Vanishing of Q-numbers at a root is decided
//! by integer divisibility, never by comparing a float against zero.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauss::q_number;
use crate::poly::QPoly;

/// The angle `pi * num / den`, reduced modulo `2 pi` and to lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PiAngle {
    num: u64,
    den: u64,
}

impl PiAngle {
    pub fn new(num: i128, den: u64) -> Self {
        assert!(den > 0, "angle denominator must be positive");
        let num = num.rem_euclid(2 * den as i128) as u64;
        let g = num.gcd(&den);
        PiAngle {
            num: num / g,
            den: den / g,
        }
    }

    pub fn zero() -> Self {
        PiAngle { num: 0, den: 1 }
    }

    /// `(num, den)` with `0 <= num < 2 den`.
    pub fn parts(&self) -> (u64, u64) {
        (self.num, self.den)
    }

    pub fn scale(&self, k: i128) -> Self {
        PiAngle::new(self.num as i128 * k, self.den)
    }

    pub fn add(&self, other: &PiAngle) -> Self {
        let den = self.den.lcm(&other.den);
        let a = self.num as i128 * (den / self.den) as i128;
        let b = other.num as i128 * (den / other.den) as i128;
        PiAngle::new(a + b, den)
    }

    pub fn neg(&self) -> Self {
        PiAngle::new(-(self.num as i128), self.den)
    }

    pub fn sin(&self) -> f64 {
        sin_pi(self.num as i128, self.den)
    }

    pub fn cos(&self) -> f64 {
        sin_pi(2 * self.num as i128 + self.den as i128, 2 * self.den)
    }

    /// `exp(i * angle)`.
    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.cos(), self.sin())
    }
}

/// `sin(pi * num / den)`, folded into `[0, pi/2]` before the float call.
///
/// Angles that agree up to the symmetries of `sin` map to the same float
/// argument, so equal magnitudes come out bitwise equal. Multiples of `pi/2`
/// are exact.
fn sin_pi(num: i128, den: u64) -> f64 {
    let den = den as i128;
    let a = num.rem_euclid(2 * den);
    let (sign, a) = if a >= den { (-1.0, a - den) } else { (1.0, a) };
    let a = a.min(den - a);
    if a == 0 {
        return 0.0;
    }
    if 2 * a == den {
        return sign;
    }
    let g = a.gcd(&den);
    sign * (std::f64::consts::PI * (a / g) as f64 / (den / g) as f64).sin()
}

/// `q_j = exp(2 pi i j / m)` with `m >= 2` and `1 <= j <= m - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawRoot", into = "RawRoot")]
pub struct RootOfUnity {
    order: u64,
    index: u64,
}

#[derive(Serialize, Deserialize)]
struct RawRoot {
    order: u64,
    index: u64,
}

impl TryFrom<RawRoot> for RootOfUnity {
    type Error = Error;

    fn try_from(raw: RawRoot) -> Result<Self> {
        RootOfUnity::new(raw.order, raw.index)
    }
}

impl From<RootOfUnity> for RawRoot {
    fn from(root: RootOfUnity) -> Self {
        RawRoot {
            order: root.order,
            index: root.index,
        }
    }
}

impl RootOfUnity {
    pub fn new(order: u64, index: u64) -> Result<Self> {
        if order < 2 || index == 0 || index >= order {
            return Err(Error::InvalidRoot { order, index });
        }
        Ok(RootOfUnity { order, index })
    }

    /// `exp(2 pi i / m)`.
    pub fn fundamental(order: u64) -> Result<Self> {
        RootOfUnity::new(order, 1)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    /// `r = gcd(j, m)`, the number of irreducible blocks.
    pub fn gcd(&self) -> u64 {
        self.index.gcd(&self.order)
    }

    /// `(l, s) = (m / r, j / r)`: the same root written as `exp(2 pi i s / l)`
    /// with `s / l` in lowest terms.
    pub fn canonical_reduce(&self) -> (u64, u64) {
        let r = self.gcd();
        (self.order / r, self.index / r)
    }

    /// The root in canonical form. Always valid since `l >= 2`.
    pub fn reduced(&self) -> RootOfUnity {
        let (l, s) = self.canonical_reduce();
        RootOfUnity { order: l, index: s }
    }

    pub fn is_primitive(&self) -> bool {
        self.gcd() == 1
    }

    pub fn is_fundamental(&self) -> bool {
        self.index == 1
    }

    /// `q_j^{-1} = q_{m - j}`.
    pub fn inverse(&self) -> RootOfUnity {
        RootOfUnity {
            order: self.order,
            index: self.order - self.index,
        }
    }

    pub fn angle(&self) -> PiAngle {
        PiAngle::new(2 * self.index as i128, self.order)
    }

    pub fn value(&self) -> Complex64 {
        self.angle().to_complex()
    }

    /// `q^n` as an exact angle.
    pub fn power_angle(&self, n: i128) -> PiAngle {
        self.angle().scale(n)
    }

    /// The fixed branch `q_j^{1/2} = exp(i pi j / m)`.
    pub fn half_root(&self) -> HalfRoot {
        HalfRoot {
            order: self.order,
            index: self.index as i64,
        }
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.order, self.index)
    }
}

impl FromStr for RootOfUnity {
    type Err = String;

    /// Parses `m:j`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (m, j) = s
            .split_once(':')
            .ok_or_else(|| format!("expected m:j, got {s:?}"))?;
        let m: u64 = m.trim().parse().map_err(|e| format!("bad order {m:?}: {e}"))?;
        let j: u64 = j.trim().parse().map_err(|e| format!("bad index {j:?}: {e}"))?;
        RootOfUnity::new(m, j).map_err(|e| e.to_string())
    }
}

/// `exp(i pi index / order)`.
///
/// [`RootOfUnity::half_root`] is the only branch used for brackets of a
/// root; the general constructor exists for callers that need other angles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HalfRoot {
    order: u64,
    index: i64,
}

impl HalfRoot {
    pub fn new(order: u64, index: i64) -> Result<Self> {
        if order == 0 {
            return Err(Error::DegenerateRoot { order, index });
        }
        Ok(HalfRoot { order, index })
    }

    pub fn angle(&self) -> PiAngle {
        PiAngle::new(self.index as i128, self.order)
    }

    /// The angle of the square, `2 pi index / order`.
    pub fn square(&self) -> PiAngle {
        self.angle().scale(2)
    }

    pub fn value(&self) -> Complex64 {
        self.angle().to_complex()
    }
}

/// `[x]_h = (h^x - h^-x) / (h - h^-1)`, which on the unit circle is
/// `sin(pi j x / m) / sin(pi j / m)`. May be negative.
pub fn q_bracket(x: u64, h: &HalfRoot) -> Result<f64> {
    let den = h.order;
    let j = h.index as i128;
    if j.rem_euclid(den as i128) == 0 {
        return Err(Error::DegenerateRoot {
            order: h.order,
            index: h.index,
        });
    }
    Ok(sin_pi(j * x as i128, den) / sin_pi(j, den))
}

/// `{n}_{q_j} = 0` exactly when `n > 0` and `m | j n`.
pub fn q_number_is_zero(n: u64, root: &RootOfUnity) -> bool {
    n > 0 && (root.index as u128 * n as u128).is_multiple_of(root.order as u128)
}

/// `|{n}_{q_j}| = |[n]_{q_j^{1/2}}|`, evaluated at the canonical form of the
/// root so that equivalent states give bitwise-equal moduli.
pub fn abs_q_number(n: u64, root: &RootOfUnity) -> f64 {
    if q_number_is_zero(n, root) {
        return 0.0;
    }
    let (l, s) = root.canonical_reduce();
    let x = (s as u128 * n as u128 % l as u128) as i128;
    (sin_pi(x, l) / sin_pi(s as i128, l)).abs()
}

/// Value of `p` at `q_j`.
///
/// Coefficients are first summed into `m` residue buckets by exponent, then
/// combined with the `m` powers of the root in one dot product.
pub fn eval_at_root(p: &QPoly, root: &RootOfUnity) -> Complex64 {
    let m = root.order as usize;
    let mut buckets = vec![BigInt::zero(); m];
    for (k, c) in p.coeffs().iter().enumerate() {
        buckets[k % m] += c;
    }
    buckets
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(r, c)| root.power_angle(r as i128).to_complex() * c.to_f64().unwrap_or(f64::NAN))
        .sum()
}

/// Worst violation of one bracket identity over a sweep.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct IdentityResidual {
    pub max_residual: f64,
    pub cases: usize,
    /// `(m, j, k)` at which the maximum was attained.
    pub worst: Option<(u64, u64, u64)>,
}

impl IdentityResidual {
    fn record(&mut self, residual: f64, at: (u64, u64, u64)) {
        self.cases += 1;
        if self.worst.is_none() || residual > self.max_residual {
            self.max_residual = residual;
            self.worst = Some(at);
        }
    }
}

/// Residuals of the complementarity and inversion relations between
/// q-brackets at roots of unity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BracketReport {
    pub m_max: u64,
    /// `[m-k] = (-1)^{j-1} [k]`.
    pub complement: IdentityResidual,
    /// `[m-k] = [k]` at `j = 1`.
    pub complement_fundamental: IdentityResidual,
    /// `[k]` at the inverse root `= (-1)^{k-1} [k]`.
    pub inverse: IdentityResidual,
    /// `[m-k]` at the inverse root `= (-1)^{m-k-1} [m-k]`.
    pub inverse_complement: IdentityResidual,
}

impl BracketReport {
    pub fn identities(&self) -> [(&'static str, &IdentityResidual); 4] {
        [
            ("complement", &self.complement),
            ("complement_fundamental", &self.complement_fundamental),
            ("inverse", &self.inverse),
            ("inverse_complement", &self.inverse_complement),
        ]
    }

    pub fn max_residual(&self) -> f64 {
        self.identities()
            .iter()
            .map(|(_, r)| r.max_residual)
            .fold(0.0, f64::max)
    }

    pub fn passes(&self, tolerance: f64) -> bool {
        self.max_residual() < tolerance
    }
}

fn parity(e: i64) -> f64 {
    if e.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Checks the bracket relations for every `2 <= m <= m_max`, `1 <= j < m`,
/// `0 <= k <= m`. The inverse root is `q_{m-j}` with its own fixed half-root
/// branch `exp(i pi (m - j) / m)`.
pub fn verify_bracket_relations(m_max: u64) -> BracketReport {
    let mut report = BracketReport {
        m_max,
        complement: IdentityResidual::default(),
        complement_fundamental: IdentityResidual::default(),
        inverse: IdentityResidual::default(),
        inverse_complement: IdentityResidual::default(),
    };
    let bracket = |x: u64, h: &HalfRoot| q_bracket(x, h).expect("valid roots have nondegenerate half-roots");
    for m in 2..=m_max {
        for j in 1..m {
            let root = RootOfUnity { order: m, index: j };
            let h = root.half_root();
            let h_inv = root.inverse().half_root();
            for k in 0..=m {
                let at = (m, j, k);
                let bk = bracket(k, &h);
                let bmk = bracket(m - k, &h);

                let sign = parity(j as i64 - 1);
                report.complement.record((bmk - sign * bk).abs(), at);
                if j == 1 {
                    report.complement_fundamental.record((bmk - bk).abs(), at);
                }

                let sign = parity(k as i64 - 1);
                report.inverse.record((bracket(k, &h_inv) - sign * bk).abs(), at);

                let sign = parity(m as i64 - k as i64 - 1);
                report
                    .inverse_complement
                    .record((bracket(m - k, &h_inv) - sign * bmk).abs(), at);
            }
        }
    }
    report
}

/// `q > 0`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct PositiveReal(f64);

impl PositiveReal {
    pub fn new(q: f64) -> Result<Self> {
        if q.is_finite() && q > 0.0 {
            Ok(PositiveReal(q))
        } else {
            Err(Error::InvalidReal(q))
        }
    }

    pub fn get(&self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for PositiveReal {
    type Error = Error;

    fn try_from(q: f64) -> Result<Self> {
        PositiveReal::new(q)
    }
}

impl From<PositiveReal> for f64 {
    fn from(q: PositiveReal) -> f64 {
        q.0
    }
}

/// The deformation parameter: a positive real or a root of unity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeformParam {
    Real(PositiveReal),
    Root(RootOfUnity),
}

impl DeformParam {
    pub fn real(q: f64) -> Result<Self> {
        PositiveReal::new(q).map(DeformParam::Real)
    }

    pub fn root(order: u64, index: u64) -> Result<Self> {
        RootOfUnity::new(order, index).map(DeformParam::Root)
    }

    pub fn as_root(&self) -> Option<&RootOfUnity> {
        match self {
            DeformParam::Root(r) => Some(r),
            DeformParam::Real(_) => None,
        }
    }

    pub fn is_fundamental_root(&self) -> bool {
        self.as_root().is_some_and(RootOfUnity::is_fundamental)
    }

    /// `m` for a root; a real parameter has an infinite Fock space.
    pub fn natural_dim(&self) -> Option<usize> {
        self.as_root().map(|r| r.order as usize)
    }

    pub fn q(&self) -> Complex64 {
        match self {
            DeformParam::Real(q) => Complex64::new(q.get(), 0.0),
            DeformParam::Root(r) => r.value(),
        }
    }

    /// `{n}_q`. At roots this is exactly zero whenever the integer predicate
    /// says so.
    pub fn q_number(&self, n: u64) -> Complex64 {
        match self {
            DeformParam::Real(q) => {
                let q = q.get();
                Complex64::new((0..n).fold(0.0, |acc, _| acc * q + 1.0), 0.0)
            }
            DeformParam::Root(r) => {
                if n == 0 || q_number_is_zero(n, r) {
                    Complex64::new(0.0, 0.0)
                } else {
                    eval_at_root(&q_number(n as usize), r)
                }
            }
        }
    }

    /// `|{n}_q|`; for roots computed as the modulus of the q-bracket.
    pub fn abs_q_number(&self, n: u64) -> f64 {
        match self {
            DeformParam::Real(_) => self.q_number(n).re.abs(),
            DeformParam::Root(r) => abs_q_number(n, r),
        }
    }
}

impl fmt::Display for DeformParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeformParam::Real(q) => write!(f, "real {}", q.get()),
            DeformParam::Root(r) => write!(f, "root {r}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn root(m: u64, j: u64) -> RootOfUnity {
        RootOfUnity::new(m, j).unwrap()
    }

    #[test]
    fn rejects_invalid_roots() {
        assert!(RootOfUnity::new(6, 0).is_err());
        assert!(RootOfUnity::new(6, 6).is_err());
        assert!(RootOfUnity::new(1, 0).is_err());
        assert!(RootOfUnity::new(0, 0).is_err());
        assert!("6:0".parse::<RootOfUnity>().is_err());
        assert!("6-1".parse::<RootOfUnity>().is_err());
        assert_eq!("6:2".parse::<RootOfUnity>().unwrap(), root(6, 2));
    }

    #[test]
    fn canonical_reduce_examples() {
        assert_eq!(root(6, 2).canonical_reduce(), (3, 1));
        assert_eq!(root(5, 2).canonical_reduce(), (5, 2));
        assert_eq!(root(6, 3).canonical_reduce(), (2, 1));
        assert_eq!(root(6, 4).canonical_reduce(), (3, 2));
        let r = root(12, 8).reduced();
        assert_eq!(r.reduced(), r);
        assert_eq!(root(6, 2).angle(), root(3, 1).angle());
    }

    #[test]
    fn primitivity_examples() {
        assert!(root(6, 1).is_primitive());
        assert!(!root(6, 4).is_primitive());
        assert!(root(7, 3).is_primitive());
    }

    #[test]
    fn half_root_squares_to_base() {
        for m in 2..20 {
            for j in 1..m {
                let r = root(m, j);
                assert_eq!(r.half_root().square(), r.angle());
            }
        }
    }

    #[test]
    fn angles_are_exact_at_quarter_turns() {
        assert_eq!(PiAngle::new(1, 2).to_complex(), Complex64::new(0.0, 1.0));
        assert_eq!(PiAngle::new(1, 1).to_complex(), Complex64::new(-1.0, 0.0));
        assert_eq!(PiAngle::new(-1, 2), PiAngle::new(3, 2));
        assert_eq!(PiAngle::new(1, 3).add(&PiAngle::new(2, 3)), PiAngle::new(1, 1));
        assert_eq!(PiAngle::new(1, 3).neg(), PiAngle::new(5, 3));
        assert_eq!(PiAngle::zero().to_complex(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn eval_examples() {
        for m in 2..12u64 {
            for j in 1..m {
                let r = root(m, j);
                let z = eval_at_root(&q_number(m as usize), &r);
                assert!(z.norm() < 1e-12, "m={m} j={j}: {z}");
                assert!(q_number_is_zero(m, &r));
                assert_eq!(eval_at_root(&QPoly::one(), &r), Complex64::new(1.0, 0.0));
            }
        }
        assert!(eval_at_root(&q_number(3), &root(3, 1)).norm() < 1e-12);
    }

    #[test]
    fn eval_matches_horner() {
        let p = QPoly::from_i64s(&[3, -1, 4, 1, -5, 9, 2, 6]);
        for (m, j) in [(5, 2), (7, 3), (6, 1), (4, 3)] {
            let r = root(m, j);
            let direct = p.eval_complex(r.value());
            assert!((eval_at_root(&p, &r) - direct).norm() < 1e-12);
        }
    }

    #[test]
    fn zero_predicate_examples() {
        assert!(q_number_is_zero(3, &root(6, 2)));
        assert!(!q_number_is_zero(1, &root(6, 2)));
        assert!(!q_number_is_zero(1, &root(2, 1)));
        assert!(q_number_is_zero(6, &root(6, 1)));
        assert!(!q_number_is_zero(0, &root(6, 1)));
    }

    #[test]
    fn bracket_examples() {
        let h = root(6, 1).half_root();
        assert!((q_bracket(2, &h).unwrap() - 3f64.sqrt()).abs() < 1e-15);
        for (m, j) in [(2, 1), (6, 5), (13, 4)] {
            assert_eq!(q_bracket(1, &root(m, j).half_root()).unwrap(), 1.0);
        }
        assert_eq!(q_bracket(3, &root(6, 2).half_root()).unwrap(), 0.0);
        assert_eq!(q_bracket(5, &root(6, 2).half_root()).unwrap(), -1.0);
    }

    #[test]
    fn degenerate_half_root() {
        let h = HalfRoot::new(6, 6).unwrap();
        assert_eq!(
            q_bracket(2, &h),
            Err(Error::DegenerateRoot { order: 6, index: 6 })
        );
        assert!(q_bracket(2, &HalfRoot::new(5, 0).unwrap()).is_err());
        assert!(HalfRoot::new(0, 1).is_err());
    }

    #[test]
    fn bracket_relations_small_sweep() {
        let report = verify_bracket_relations(6);
        assert!(report.max_residual() < 1e-12, "{report:?}");
        assert!(report.complement_fundamental.cases > 0);
        // (m, j) pairs times k = 0..=m.
        let expected: usize = (2..=6u64).map(|m| ((m - 1) * (m + 1)) as usize).sum();
        assert_eq!(report.complement.cases, expected);
    }

    #[test]
    fn abs_q_number_matches_bracket() {
        for m in 2..30u64 {
            for j in 1..m {
                let r = root(m, j);
                let h = r.half_root();
                for n in 0..=m {
                    let a = abs_q_number(n, &r);
                    let b = q_bracket(n, &h).unwrap().abs();
                    let c = eval_at_root(&q_number(n as usize), &r).norm();
                    assert!((a - b).abs() < 1e-12);
                    assert!((a - c).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn deform_param_validation() {
        assert!(DeformParam::real(0.0).is_err());
        assert!(DeformParam::real(-0.5).is_err());
        assert!(DeformParam::real(f64::NAN).is_err());
        assert!(DeformParam::real(f64::INFINITY).is_err());
        assert!(DeformParam::real(1.0).is_ok());
        assert!(DeformParam::root(6, 0).is_err());
    }

    #[test]
    fn deform_param_q_numbers() {
        let q = DeformParam::real(0.5).unwrap();
        assert_eq!(q.q_number(2), Complex64::new(1.5, 0.0));
        assert_eq!(q.q_number(0), Complex64::new(0.0, 0.0));
        let one = DeformParam::real(1.0).unwrap();
        for n in 0..60 {
            assert_eq!(one.q_number(n).re, n as f64);
        }
        let r = DeformParam::root(6, 2).unwrap();
        assert_eq!(r.q_number(3), Complex64::new(0.0, 0.0));
        assert_eq!(r.abs_q_number(3), 0.0);
        assert_eq!(r.natural_dim(), Some(6));
        assert_eq!(q.natural_dim(), None);
    }
}
