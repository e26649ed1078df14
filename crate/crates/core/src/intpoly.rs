//! Dense integer polynomials with exact evaluation, a truncated square
//! root for monic even-degree inputs, and integer positivity thresholds.
//!
//! Coefficients are stored constant term first with no trailing zeros, so
//! equality of the coefficient vectors is equality of polynomials.

use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Scans for [`IntPolynomial::positivity_threshold`] refuse to walk further
/// than this; anything larger is outside the sizes this crate is for.
pub const THRESHOLD_SCAN_CAP: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyError {
    OddDegree,
    NotMonic,
    NonPositiveLeading,
    /// The root bound, and hence the candidate threshold, exceeds
    /// [`THRESHOLD_SCAN_CAP`].
    ThresholdOutOfReach,
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::OddDegree => write!(f, "polynomial degree must be even"),
            PolyError::NotMonic => write!(f, "polynomial must be monic"),
            PolyError::NonPositiveLeading => {
                write!(f, "leading coefficient must be positive")
            }
            PolyError::ThresholdOutOfReach => {
                write!(f, "positivity threshold exceeds the scan cap")
            }
        }
    }
}

impl core::error::Error for PolyError {}

/// `F = root^2 + remainder` with `deg remainder < deg root`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareDecomposition {
    pub root: IntPolynomial,
    pub remainder: IntPolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial {
            coeffs: vec![BigInt::one()],
        }
    }

    /// Builds from constant-first coefficients, dropping trailing zeros.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPolynomial { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn monomial(coeff: BigInt, degree: usize) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = coeff;
        IntPolynomial { coeffs }
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    /// Constant-first coefficients; empty exactly for the zero polynomial.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Exact evaluation by Horner's rule.
    pub fn evaluate(&self, t: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn pow(&self, e: u32) -> IntPolynomial {
        let mut acc = IntPolynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// For monic `F` of even degree `2n`, the unique monic `G` of degree
    /// `n` with `deg(F - G^2) < n`, provided `G` has integer coefficients.
    ///
    /// `G` is found by matching coefficients of `t^{2n-1}, ..., t^n` in
    /// descending order; each step determines one coefficient as an exact
    /// rational, and integrality is judged at the end. Returns `Ok(None)`
    /// when some coefficient is a proper fraction.
    pub fn truncated_square_root(&self) -> Result<Option<SquareDecomposition>, PolyError> {
        let deg = self.degree().ok_or(PolyError::NotMonic)?;
        if deg % 2 != 0 {
            return Err(PolyError::OddDegree);
        }
        if !self.leading().unwrap().is_one() {
            return Err(PolyError::NotMonic);
        }
        let n = deg / 2;
        let mut g = vec![BigRational::zero(); n + 1];
        g[n] = BigRational::one();
        for j in 1..=n {
            let i = 2 * n - j;
            // coefficient of t^i in G^2, over the already determined part
            let mut known = BigRational::zero();
            for p in i.saturating_sub(n)..=n {
                let q = i - p;
                if q > n || p == n - j || q == n - j {
                    continue;
                }
                known += &g[p] * &g[q];
            }
            let target = BigRational::from_integer(self.coeffs[i].clone());
            g[n - j] = (target - known) / BigRational::from_integer(BigInt::from(2));
        }
        if !g.iter().all(BigRational::is_integer) {
            return Ok(None);
        }
        let root = IntPolynomial::from_coeffs(g.into_iter().map(|c| c.to_integer()).collect());
        let remainder = self - &(&root * &root);
        debug_assert!(remainder.is_zero() || remainder.degree().unwrap() < n);
        Ok(Some(SquareDecomposition { root, remainder }))
    }

    /// Least m >= 1 with `P(t) >= 1` for every integer t >= m; requires a
    /// positive leading coefficient.
    ///
    /// All real roots lie below `1 + max |a_i| / a_lead` (Cauchy), and an
    /// integer point where `P > 0` has `P >= 1`, so scanning down from just
    /// above that bound for the largest integer with `P(t) <= 0` settles m
    /// exactly.
    pub fn positivity_threshold(&self) -> Result<BigUint, PolyError> {
        let lead = self.leading().ok_or(PolyError::NonPositiveLeading)?;
        if !lead.is_positive() {
            return Err(PolyError::NonPositiveLeading);
        }
        let max_abs = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(BigInt::zero);
        let start = (max_abs / lead + BigInt::from(2)).to_biguint().unwrap();
        if start > BigUint::from(THRESHOLD_SCAN_CAP) {
            return Err(PolyError::ThresholdOutOfReach);
        }
        let start = u64::try_from(&start).unwrap();
        match self.last_nonpositive_at_most(start) {
            Some(t) => Ok(BigUint::from(t + 1)),
            None => Ok(BigUint::one()),
        }
    }

    /// Largest integer t in [1, start] with `P(t) <= 0`, scanning downward.
    fn last_nonpositive_at_most(&self, start: u64) -> Option<u64> {
        if let Some(coeffs) = self.i128_coeffs_bounded(start) {
            for t in (1..=start).rev() {
                let mut acc: i128 = 0;
                for &c in coeffs.iter().rev() {
                    acc = acc * t as i128 + c;
                }
                if acc <= 0 {
                    return Some(t);
                }
            }
            return None;
        }
        for t in (1..=start).rev() {
            if !self.evaluate(&BigInt::from(t)).is_positive() {
                return Some(t);
            }
        }
        None
    }

    /// Coefficients as i128 when every Horner intermediate over [0, start]
    /// provably fits, judged by the exact bound `sum |a_i| start^i`.
    fn i128_coeffs_bounded(&self, start: u64) -> Option<Vec<i128>> {
        let start = BigUint::from(start);
        let mut bound = BigUint::zero();
        for c in self.coeffs.iter().rev() {
            bound = bound * &start + c.magnitude();
        }
        if bound.bits() > 126 {
            return None;
        }
        self.coeffs.iter().map(|c| i128::try_from(c).ok()).collect()
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (i, c) in short.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Mul<&BigInt> for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &BigInt) -> IntPolynomial {
        IntPolynomial::from_coeffs(self.coeffs.iter().map(|c| c * rhs).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsePolyError(String);

impl fmt::Display for ParsePolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid polynomial: {}", self.0)
    }
}

impl core::error::Error for ParsePolyError {}

impl FromStr for IntPolynomial {
    type Err = ParsePolyError;

    /// Comma-separated coefficients, constant term first:
    /// `"1,-6,12,-8,1"` is `t^4 - 8t^3 + 12t^2 - 6t + 1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().is_empty() {
            return Err(ParsePolyError(String::from("empty coefficient list")));
        }
        let coeffs = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<BigInt>()
                    .map_err(|_| ParsePolyError(format!("bad coefficient {:?}", part.trim())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IntPolynomial::from_coeffs(coeffs))
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.magnitude();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if i == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
