//! Continued fractions of `sqrt(D)`, the least solution of
//! `U^2 - D V^2 = 1`, and exact arithmetic in `Z[sqrt(D)]`.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::bigarith::{isqrt, perfect_square_root};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PellError {
    /// D is a perfect square (0 and 1 included), so sqrt(D) is rational.
    PerfectSquare { d: BigUint },
    /// Arithmetic attempted between elements of different rings.
    MixedRadicand { left: BigUint, right: BigUint },
}

impl fmt::Display for PellError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PellError::PerfectSquare { d } => write!(f, "{d} is a perfect square"),
            PellError::MixedRadicand { left, right } => {
                write!(f, "mixed radicands {left} and {right}")
            }
        }
    }
}

impl core::error::Error for PellError {}

fn require_nonsquare(d: &BigUint) -> Result<(), PellError> {
    if perfect_square_root(d).is_some() {
        Err(PellError::PerfectSquare { d: d.clone() })
    } else {
        Ok(())
    }
}

/// Simple continued fraction of `sqrt(D)`: the integer part `a0` and the
/// full period of partial quotients.
///
/// Runs the exact recurrence m' = d*a - m, d' = (D - m'^2)/d,
/// a' = (a0 + m')/d' from (m, d, a) = (0, 1, a0); the period closes at the
/// first partial quotient equal to 2*a0.
pub fn sqrt_continued_fraction(d: &BigUint) -> Result<(BigUint, Vec<BigUint>), PellError> {
    require_nonsquare(d)?;
    let a0 = isqrt(d);
    let stop = &a0 << 1;
    let mut m = BigUint::zero();
    let mut den = BigUint::one();
    let mut a = a0.clone();
    let mut period = Vec::new();
    loop {
        m = &den * &a - m;
        den = (d - &m * &m) / den;
        a = (&a0 + &m) / &den;
        period.push(a.clone());
        if a == stop {
            return Ok((a0, period));
        }
    }
}

/// The least solution of `U^2 - D V^2 = 1` together with the continued
/// fraction that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellFundamental {
    pub u1: BigUint,
    pub v1: BigUint,
    pub d: BigUint,
    pub cf_period: Vec<BigUint>,
}

impl PellFundamental {
    /// The solution as an element of `Z[sqrt(D)]`.
    pub fn unit(&self) -> QuadInt {
        QuadInt::new(
            BigInt::from(self.u1.clone()),
            BigInt::from(self.v1.clone()),
            self.d.clone(),
        )
        .unwrap()
    }
}

/// Least positive solution of `U^2 - D V^2 = 1`.
///
/// The convergent just before the period's end has norm (-1)^len; when the
/// period length is odd that norm is -1 and squaring the convergent gives
/// the least norm +1 solution.
pub fn least_solution(d: &BigUint) -> Result<PellFundamental, PellError> {
    let (a0, period) = sqrt_continued_fraction(d)?;
    let mut p_prev = BigUint::one();
    let mut p = a0;
    let mut q_prev = BigUint::zero();
    let mut q = BigUint::one();
    for t in &period[..period.len() - 1] {
        let p_next = t * &p + &p_prev;
        p_prev = core::mem::replace(&mut p, p_next);
        let q_next = t * &q + &q_prev;
        q_prev = core::mem::replace(&mut q, q_next);
    }
    let (u1, v1) = if period.len() % 2 == 0 {
        (p, q)
    } else {
        (&p * &p + d * &q * &q, (&p * &q) << 1)
    };
    debug_assert_eq!(&u1 * &u1, d * &v1 * &v1 + BigUint::one());
    Ok(PellFundamental {
        u1,
        v1,
        d: d.clone(),
        cf_period: period,
    })
}

/// An element `a + b*sqrt(D)` of `Z[sqrt(D)]`, with D carried explicitly
/// so values from different rings cannot be mixed silently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadInt {
    pub a: BigInt,
    pub b: BigInt,
    pub d: BigUint,
}

impl QuadInt {
    pub fn new(a: BigInt, b: BigInt, d: BigUint) -> Result<Self, PellError> {
        require_nonsquare(&d)?;
        Ok(QuadInt { a, b, d })
    }

    pub fn from_int(a: BigInt, d: BigUint) -> Result<Self, PellError> {
        Self::new(a, BigInt::zero(), d)
    }

    /// `a^2 - D b^2`, multiplicative across products.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - BigInt::from(self.d.clone()) * &self.b * &self.b
    }

    pub fn conjugate(&self) -> QuadInt {
        QuadInt {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d.clone(),
        }
    }

    pub fn mul(&self, other: &QuadInt) -> Result<QuadInt, PellError> {
        if self.d != other.d {
            return Err(PellError::MixedRadicand {
                left: self.d.clone(),
                right: other.d.clone(),
            });
        }
        let d = BigInt::from(self.d.clone());
        Ok(QuadInt {
            a: &self.a * &other.a + &d * &self.b * &other.b,
            b: &self.a * &other.b + &self.b * &other.a,
            d: self.d.clone(),
        })
    }

    pub fn pow(&self, n: u64) -> QuadInt {
        let mut result = QuadInt {
            a: BigInt::one(),
            b: BigInt::zero(),
            d: self.d.clone(),
        };
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base).unwrap();
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base).unwrap();
            }
        }
        result
    }

    /// Sign of the real value `a + b*sqrt(D)`, decided without any rounding:
    /// mixed-sign components reduce to comparing a^2 against D b^2.
    pub fn sign(&self) -> Ordering {
        let (sa, sb) = (self.a.sign(), self.b.sign());
        use num_bigint::Sign::*;
        match (sa, sb) {
            (NoSign, NoSign) => Ordering::Equal,
            (Plus, Plus) | (Plus, NoSign) | (NoSign, Plus) => Ordering::Greater,
            (Minus, Minus) | (Minus, NoSign) | (NoSign, Minus) => Ordering::Less,
            (Plus, Minus) => self.squares_cmp(),
            (Minus, Plus) => self.squares_cmp().reverse(),
        }
    }

    fn squares_cmp(&self) -> Ordering {
        let lhs = &self.a * &self.a;
        let rhs = BigInt::from(self.d.clone()) * &self.b * &self.b;
        lhs.cmp(&rhs)
    }

    /// Exact comparison of real values within the same ring.
    pub fn cmp_value(&self, other: &QuadInt) -> Result<Ordering, PellError> {
        if self.d != other.d {
            return Err(PellError::MixedRadicand {
                left: self.d.clone(),
                right: other.d.clone(),
            });
        }
        let diff = QuadInt {
            a: &self.a - &other.a,
            b: &self.b - &other.b,
            d: self.d.clone(),
        };
        Ok(diff.sign())
    }

    /// Exact comparison of the real value against a plain integer.
    pub fn cmp_int(&self, n: &BigInt) -> Ordering {
        let diff = QuadInt {
            a: &self.a - n,
            b: self.b.clone(),
            d: self.d.clone(),
        };
        diff.sign()
    }
}
