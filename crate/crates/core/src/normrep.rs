//! Fundamental solutions of `X^2 - D Y^2 = K^Z1`.
//!
//! Every solution with X, Y >= 1 is a unit multiple of one whose height
//! `(X + Y sqrt(D))^2` lies in the window `(|K|^Z1, |K|^Z1 (U1 + V1 sqrt(D)))`
//! cut out by the least Pell solution. The window is finite, so the
//! fundamental set is enumerable by a bounded scan; all window comparisons
//! are exact.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::bigarith::{isqrt, perfect_square_root};
use crate::pell::{PellFundamental, QuadInt};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormRepError {
    /// K must be odd here; even K would share a factor with 4D downstream.
    EvenK { k: BigInt },
    /// |K| <= 1 degenerates to the plain Pell equation.
    UnitK { k: BigInt },
    SharedFactor { gcd: BigUint },
    SquareD { d: BigUint },
    /// Z1 = 0 would put the window floor at 1 with nothing to represent.
    ZeroExponent,
    /// The Pell data was computed for a different D.
    MismatchedRadicand { d: BigUint, pell_d: BigUint },
}

impl fmt::Display for NormRepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormRepError::EvenK { k } => write!(f, "k = {k} must be odd"),
            NormRepError::UnitK { k } => write!(f, "|k| must exceed 1, got {k}"),
            NormRepError::SharedFactor { gcd } => {
                write!(f, "d and k share the factor {gcd}")
            }
            NormRepError::SquareD { d } => write!(f, "{d} is a perfect square"),
            NormRepError::ZeroExponent => write!(f, "exponent must be at least 1"),
            NormRepError::MismatchedRadicand { d, pell_d } => {
                write!(f, "pell data for {pell_d} used with d = {d}")
            }
        }
    }
}

impl core::error::Error for NormRepError {}

/// One member of the fundamental set: `x1^2 - d y1^2 = k^z1` with
/// coprime positive components inside the height window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalRep {
    pub x1: BigUint,
    pub y1: BigUint,
    pub z1: u32,
    pub d: BigUint,
    pub k: BigInt,
}

impl FundamentalRep {
    /// Element `x1 + y1 sqrt(d)`.
    pub fn element(&self) -> QuadInt {
        QuadInt::new(
            BigInt::from(self.x1.clone()),
            BigInt::from(self.y1.clone()),
            self.d.clone(),
        )
        .unwrap()
    }

    /// Recheck every defining property against the Pell data. Exact; used
    /// by certificate replay as well as tests.
    pub fn verify(&self, pell: &PellFundamental) -> bool {
        if self.d != pell.d || self.x1.is_zero() || self.y1.is_zero() {
            return false;
        }
        let x = BigInt::from(self.x1.clone());
        let y = BigInt::from(self.y1.clone());
        let equation =
            &x * &x - BigInt::from(self.d.clone()) * &y * &y == self.k.pow(self.z1);
        let coprime = self.x1.gcd(&self.y1).is_one();
        let bound = match height_bound(&self.d, &self.k, self.z1, pell) {
            Ok(b) => b,
            Err(_) => return false,
        };
        let kz_abs = self.k.magnitude().pow(self.z1);
        equation && coprime && in_window(&self.element(), &kz_abs, &bound.beta)
    }
}

/// The window's upper end `beta = |K|^Z1 (U1 + V1 sqrt(D))` and the least
/// integer whose square exceeds it: every fundamental `X1 + Y1 sqrt(D)`
/// is strictly below `ceiling`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightBound {
    pub beta: QuadInt,
    pub ceiling: BigUint,
}

fn validate(
    d: &BigUint,
    k: &BigInt,
    z1: u32,
    pell: &PellFundamental,
) -> Result<(), NormRepError> {
    if z1 == 0 {
        return Err(NormRepError::ZeroExponent);
    }
    if perfect_square_root(d).is_some() {
        return Err(NormRepError::SquareD { d: d.clone() });
    }
    if pell.d != *d {
        return Err(NormRepError::MismatchedRadicand {
            d: d.clone(),
            pell_d: pell.d.clone(),
        });
    }
    if k.magnitude() <= &BigUint::one() {
        return Err(NormRepError::UnitK { k: k.clone() });
    }
    if k.is_even() {
        return Err(NormRepError::EvenK { k: k.clone() });
    }
    let shared = d.gcd(k.magnitude());
    if !shared.is_one() {
        return Err(NormRepError::SharedFactor { gcd: shared });
    }
    Ok(())
}

/// Exact height bound for the fundamental window.
pub fn height_bound(
    d: &BigUint,
    k: &BigInt,
    z1: u32,
    pell: &PellFundamental,
) -> Result<HeightBound, NormRepError> {
    validate(d, k, z1, pell)?;
    let kz_abs = BigInt::from(k.magnitude().pow(z1));
    let beta = QuadInt::new(
        &kz_abs * BigInt::from(pell.u1.clone()),
        &kz_abs * BigInt::from(pell.v1.clone()),
        d.clone(),
    )
    .unwrap();
    // binary search the least c with c^2 > beta; beta is irrational, so
    // ties cannot occur
    let overshoot = beta.a.magnitude() + beta.b.magnitude() * (isqrt(d) + BigUint::one());
    let mut lo = BigUint::zero();
    let mut hi = isqrt(&overshoot) + BigUint::from(2u32);
    debug_assert_eq!(beta.cmp_int(&BigInt::from(&hi * &hi)), Ordering::Less);
    while &lo + BigUint::one() < hi {
        let mid: BigUint = (&lo + &hi) >> 1;
        if beta.cmp_int(&BigInt::from(&mid * &mid)) == Ordering::Less {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(HeightBound { beta, ceiling: hi })
}

fn in_window(w: &QuadInt, kz_abs: &BigUint, beta: &QuadInt) -> bool {
    let square = w.mul(w).unwrap();
    square.cmp_int(&BigInt::from(kz_abs.clone())) == Ordering::Greater
        && square.cmp_value(beta).unwrap() == Ordering::Less
}

/// The complete fundamental set for `X^2 - D Y^2 = K^Z1`, ordered by Y1.
///
/// Scans Y1 up to `ceiling / isqrt(D) + 1` (any window member satisfies
/// `Y1 sqrt(D) < ceiling`), keeps Y1 with `D Y1^2 + K^Z1` a positive
/// perfect square, and filters by coprimality and the exact window.
pub fn enumerate_fundamental(
    d: &BigUint,
    k: &BigInt,
    z1: u32,
    pell: &PellFundamental,
) -> Result<Vec<FundamentalRep>, NormRepError> {
    let bound = height_bound(d, k, z1, pell)?;
    let kz = k.pow(z1);
    let kz_abs = k.magnitude().pow(z1);
    let cap = &bound.ceiling / isqrt(d) + BigUint::one();
    let mut reps = Vec::new();
    let d_int = BigInt::from(d.clone());
    let mut y1 = BigUint::one();
    while y1 <= cap {
        let y_int = BigInt::from(y1.clone());
        let t = &d_int * &y_int * &y_int + &kz;
        if t.is_positive() {
            if let Some(x1) = perfect_square_root(t.magnitude()) {
                if !x1.is_zero() && x1.gcd(&y1).is_one() {
                    let rep = FundamentalRep {
                        x1,
                        y1: y1.clone(),
                        z1,
                        d: d.clone(),
                        k: k.clone(),
                    };
                    if in_window(&rep.element(), &kz_abs, &bound.beta) {
                        reps.push(rep);
                    }
                }
            }
        }
        y1 += BigUint::one();
    }
    Ok(reps)
}
