//! Exact big-integer helpers: integer square roots, perfect-square tests,
//! Jacobi symbols, deterministic primality, and budgeted factorization.
//!
//! All routines are deterministic. Nothing here touches floating point.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Floor of the square root, by Newton iteration started above the root.
///
/// The iterate `x -> (x + n/x) / 2` decreases monotonically to
/// `floor(sqrt(n))` once started at any value >= sqrt(n); the final
/// correction loop pins the floor even if the iteration stops one high.
pub fn isqrt(n: &BigUint) -> BigUint {
    if n.is_zero() {
        return BigUint::zero();
    }
    let mut x = BigUint::one() << ((n.bits() + 1) / 2);
    loop {
        let y = (&x + n / &x) >> 1;
        if y >= x {
            break;
        }
        x = y;
    }
    while &x * &x > *n {
        x -= 1u32;
    }
    debug_assert!(&x * &x <= *n && (&x + 1u32) * (&x + 1u32) > *n);
    x
}

/// The exact square root, if `n` is a perfect square.
///
/// Squares land in {0, 1, 4, 9} mod 16, which rejects three quarters of
/// the inputs before any root is taken.
pub fn perfect_square_root(n: &BigUint) -> Option<BigUint> {
    let low = (n % 16u32).to_u32().unwrap();
    if !matches!(low, 0 | 1 | 4 | 9) {
        return None;
    }
    let r = isqrt(n);
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

pub fn is_perfect_square(n: &BigUint) -> bool {
    perfect_square_root(n).is_some()
}

/// Rejections raised by [`jacobi`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JacobiError {
    ZeroModulus,
    EvenModulus,
}

impl fmt::Display for JacobiError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JacobiError::ZeroModulus => write!(f, "jacobi modulus must be positive"),
            JacobiError::EvenModulus => write!(f, "jacobi modulus must be odd"),
        }
    }
}

impl core::error::Error for JacobiError {}

/// Jacobi symbol (a/n) for odd n >= 1, by reciprocity; (a/1) = 1.
pub fn jacobi(a: &BigInt, n: &BigUint) -> Result<i8, JacobiError> {
    if n.is_zero() {
        return Err(JacobiError::ZeroModulus);
    }
    if n.is_even() {
        return Err(JacobiError::EvenModulus);
    }
    let mut n = n.clone();
    if n.is_one() {
        return Ok(1);
    }
    // Reduce once into [0, n); periodicity absorbs negative a.
    let mut a = a.mod_floor(&BigInt::from(n.clone())).magnitude().clone();
    let mut sign = 1i8;
    loop {
        a %= &n;
        if a.is_zero() {
            return Ok(0);
        }
        // (2/n) = -1 exactly when n is 3 or 5 mod 8.
        let twos = a.trailing_zeros().unwrap_or(0);
        if twos % 2 == 1 && matches!((&n % 8u32).to_u32().unwrap(), 3 | 5) {
            sign = -sign;
        }
        a >>= twos;
        if a.is_one() {
            return Ok(sign);
        }
        if (&a % 4u32).to_u32().unwrap() == 3 && (&n % 4u32).to_u32().unwrap() == 3 {
            sign = -sign;
        }
        core::mem::swap(&mut a, &mut n);
    }
}

/// Witness bases making Miller-Rabin a proof for every n below 3.3e24,
/// far past anything this crate feeds it.
const MR_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Deterministic Miller-Rabin over the fixed base set.
pub fn is_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for b in MR_BASES {
        let b = BigUint::from(b);
        if *n == b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap();
    let d = &n_minus_1 >> s;
    'bases: for b in MR_BASES {
        let mut x = BigUint::from(b).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Caps for [`factorize`]: trial division up to `trial_limit`, then at most
/// `rho_rounds` Pollard-Brent attempts per surviving cofactor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorBudget {
    pub trial_limit: u64,
    pub rho_rounds: u32,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            trial_limit: 1_000_000,
            rho_rounds: 64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorError {
    Zero,
    /// A composite cofactor survived the whole budget.
    BudgetExceeded { cofactor: BigUint },
}

impl fmt::Display for FactorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorError::Zero => write!(f, "cannot factor zero"),
            FactorError::BudgetExceeded { cofactor } => {
                write!(f, "factoring budget exceeded; unsplit cofactor {cofactor}")
            }
        }
    }
}

impl core::error::Error for FactorError {}

/// Prime factorization as ascending `(prime, multiplicity)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pairs: Vec<(BigUint, u32)>,
}

impl Factorization {
    pub fn pairs(&self) -> &[(BigUint, u32)] {
        &self.pairs
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.pairs.iter().map(|(p, _)| p)
    }

    pub fn product(&self) -> BigUint {
        let mut acc = BigUint::one();
        for (p, e) in &self.pairs {
            acc *= p.pow(*e);
        }
        acc
    }
}

/// Complete factorization of n >= 1 within the given budget.
///
/// Trial division first, then Pollard-Brent with deterministic polynomial
/// offsets, splitting recursively until every piece passes [`is_prime`].
pub fn factorize(n: &BigUint, budget: &FactorBudget) -> Result<Factorization, FactorError> {
    if n.is_zero() {
        return Err(FactorError::Zero);
    }
    let mut counts: BTreeMap<BigUint, u32> = BTreeMap::new();
    let mut remaining = n.clone();

    if let Some(small) = remaining.to_u128() {
        remaining = trial_divide_u128(small, budget.trial_limit, &mut counts);
    } else {
        remaining = trial_divide_big(remaining, budget.trial_limit, &mut counts);
    }

    let mut stack: Vec<BigUint> = Vec::new();
    if !remaining.is_one() {
        stack.push(remaining);
    }
    while let Some(m) = stack.pop() {
        if is_prime(&m) {
            *counts.entry(m).or_insert(0) += 1;
            continue;
        }
        let mut split = None;
        for round in 0..budget.rho_rounds {
            if let Some(d) = pollard_brent(&m, u64::from(round) + 1, 1 << 17) {
                split = Some(d);
                break;
            }
        }
        match split {
            Some(d) => {
                stack.push(&m / &d);
                stack.push(d);
            }
            None => return Err(FactorError::BudgetExceeded { cofactor: m }),
        }
    }

    let fact = Factorization {
        pairs: counts.into_iter().collect(),
    };
    debug_assert_eq!(fact.product(), *n);
    fact.pairs.iter().for_each(|(p, _)| debug_assert!(is_prime(p)));
    Ok(fact)
}

fn trial_divide_u128(mut n: u128, limit: u64, counts: &mut BTreeMap<BigUint, u32>) -> BigUint {
    let mut record = |p: u128, e: u32| {
        if e > 0 {
            *counts.entry(BigUint::from(p)).or_insert(0) += e;
        }
    };
    let mut p: u128 = 2;
    while p <= u128::from(limit) && p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        record(p, e);
        p = if p == 2 { 3 } else { p + 2 };
    }
    if n > 1 && p * p > n {
        // below the square of the last candidate, the survivor is prime
        record(n, 1);
        n = 1;
    }
    BigUint::from(n)
}

fn trial_divide_big(mut n: BigUint, limit: u64, counts: &mut BTreeMap<BigUint, u32>) -> BigUint {
    let mut p: u64 = 2;
    while p <= limit {
        if n.to_u128().is_some() {
            // shrunk into primitive range; finish there
            let small = n.to_u128().unwrap();
            return trial_divide_u128(small, limit, counts);
        }
        let pb = BigUint::from(p);
        while (&n % &pb).is_zero() {
            n /= &pb;
            *counts.entry(pb.clone()).or_insert(0) += 1;
        }
        p = if p == 2 { 3 } else { p + 2 };
    }
    n
}

fn abs_diff(x: &BigUint, y: &BigUint) -> BigUint {
    if x >= y {
        x - y
    } else {
        y - x
    }
}

/// One Pollard-Brent attempt on odd composite n with offset c; returns a
/// nontrivial divisor or gives up after roughly `max_steps` squarings.
fn pollard_brent(n: &BigUint, c: u64, max_steps: u64) -> Option<BigUint> {
    let c = BigUint::from(c);
    let step = |y: &BigUint| (y * y + &c) % n;
    let mut y = BigUint::from(2u32);
    let mut g = BigUint::one();
    let mut q = BigUint::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut r: u64 = 1;
    let batch: u64 = 128;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = step(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..batch.min(r - k) {
                y = step(&y);
                q = &q * abs_diff(&x, &y) % n;
            }
            g = q.gcd(n);
            k += batch;
        }
        r <<= 1;
        if r > max_steps {
            return None;
        }
    }
    if g == *n {
        // the batch overshot; replay one step at a time
        loop {
            ys = step(&ys);
            g = abs_diff(&x, &ys).gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    if g == *n {
        None
    } else {
        Some(g)
    }
}
