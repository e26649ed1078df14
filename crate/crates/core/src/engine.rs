//! The decision pipeline for `x^2 + (2k-1)^y = k^z` with y in {3, 5}.
//!
//! Four criteria run cheapest-first: a Jacobi-symbol divisor test on 2k-1,
//! the square-k reduction, the norm-form structure constraints (class
//! number, least Pell solution, fundamental sets), and a congruence
//! elimination on the fundamental sets. Every "no solutions" verdict
//! carries a certificate whose steps replay bit-exactly against the
//! underlying modules; anything the criteria cannot settle is reported as
//! inconclusive, never guessed.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::format;
use alloc::vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::bigarith::{
    factorize, is_prime, jacobi, perfect_square_root, FactorBudget, FactorError,
};
use crate::intpoly::IntPolynomial;
use crate::normrep::{enumerate_fundamental, height_bound, FundamentalRep, NormRepError};
use crate::pell::{least_solution, PellError, PellFundamental, QuadInt};
use crate::qforms::{class_number, DiscriminantError, MAX_DISCRIMINANT};
use crate::sandwich::{builtin_cases, decide_no_solutions, certify_builtin_cases, CaseVerdict};

/// The two exponents of 2k-1 the pipeline decides.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OddExponent {
    Three,
    Five,
}

impl OddExponent {
    pub const ALL: [OddExponent; 2] = [OddExponent::Three, OddExponent::Five];

    pub fn value(self) -> u32 {
        match self {
            OddExponent::Three => 3,
            OddExponent::Five => 5,
        }
    }
}

impl TryFrom<u32> for OddExponent {
    type Error = u32;

    fn try_from(y: u32) -> Result<Self, u32> {
        match y {
            3 => Ok(OddExponent::Three),
            5 => Ok(OddExponent::Five),
            other => Err(other),
        }
    }
}

impl fmt::Display for OddExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EngineError {
    Factor(FactorError),
    Discriminant(DiscriminantError),
    Pell(PellError),
    NormRep(NormRepError),
    /// 4k exceeds the discriminant range of the form machinery.
    KTooLarge { k: BigUint },
    /// The fundamental-set scan bound is beyond the configured cap.
    ScanTooLarge { z1: u32, cap: BigUint },
}

impl fmt::Display for EngineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EngineError::Factor(e) => write!(f, "factoring: {e}"),
            EngineError::Discriminant(e) => write!(f, "class number: {e}"),
            EngineError::Pell(e) => write!(f, "pell: {e}"),
            EngineError::NormRep(e) => write!(f, "fundamental set: {e}"),
            EngineError::KTooLarge { k } => {
                write!(f, "k = {k} puts 4k beyond the {MAX_DISCRIMINANT} discriminant cap")
            }
            EngineError::ScanTooLarge { z1, cap } => {
                write!(f, "fundamental scan for z1 = {z1} needs {cap} steps")
            }
        }
    }
}

impl core::error::Error for EngineError {}

impl From<FactorError> for EngineError {
    fn from(e: FactorError) -> Self {
        EngineError::Factor(e)
    }
}

impl From<DiscriminantError> for EngineError {
    fn from(e: DiscriminantError) -> Self {
        EngineError::Discriminant(e)
    }
}

impl From<PellError> for EngineError {
    fn from(e: PellError) -> Self {
        EngineError::Pell(e)
    }
}

impl From<NormRepError> for EngineError {
    fn from(e: NormRepError) -> Self {
        EngineError::NormRep(e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    NoSolutions,
    Inconclusive,
    SolutionsFound,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::NoSolutions => "no-solutions",
            Status::Inconclusive => "inconclusive",
            Status::SolutionsFound => "solutions-found",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A built-in equation cited by a step, pinned by its scan threshold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CitedCase {
    pub label: String,
    pub threshold: BigUint,
}

/// One fundamental set, as recorded in a certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalSetRecord {
    pub z1: u32,
    /// Least integer whose square exceeds the window top.
    pub ceiling: BigUint,
    pub pairs: Vec<(BigUint, BigUint)>,
}

/// One congruence check: the sqrt(k)-component g of
/// `(x1 + lambda y1 sqrt(k))^t` and its residue |g| mod p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElimRecord {
    pub z1: u32,
    pub x1: BigUint,
    pub y1: BigUint,
    pub lambda: i8,
    pub t: u32,
    pub g_abs: BigUint,
    pub residue: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertStep {
    /// Any solution has odd z: the even-z cases reduce to the cited
    /// built-in equations, each certified solution-free.
    EvenZExcluded { y: u32, cited: Vec<CitedCase> },
    /// 2k-1 has the prime divisor p with (2|p) = -1, which contradicts
    /// the square residue forced by odd z.
    JacobiDivisor { p: BigUint, jacobi_2_p: i8 },
    /// k = root^2 reduces the equation to the cited built-in equations in
    /// the variable root, each certified solution-free.
    SquareK { root: BigUint, cited: Vec<CitedCase> },
    ClassNumber { disc: u64, h: u64 },
    PellLeast { d: BigUint, u1: BigUint, v1: BigUint },
    /// Complete fundamental sets for X^2 - k Y^2 = (-(2k-1))^z1 over the
    /// admissible z1; all empty certifies no solutions outright.
    FundamentalSet {
        k_const: BigInt,
        sets: Vec<FundamentalSetRecord>,
    },
    /// Every solution forces p | g for some recorded g, but no recorded
    /// residue vanishes.
    CongruenceElim { p: BigUint, entries: Vec<ElimRecord> },
    /// Honest terminal: structure computed, no criterion applied.
    StructureOnly { admissible_z1: Vec<u32> },
}

impl CertStep {
    pub fn rule_name(&self) -> &'static str {
        match self {
            CertStep::EvenZExcluded { .. } => "EvenZExcluded",
            CertStep::JacobiDivisor { .. } => "JacobiDivisor",
            CertStep::SquareK { .. } => "SquareK",
            CertStep::ClassNumber { .. } => "ClassNumber",
            CertStep::PellLeast { .. } => "PellLeast",
            CertStep::FundamentalSet { .. } => "FundamentalSet",
            CertStep::CongruenceElim { .. } => "CongruenceElim",
            CertStep::StructureOnly { .. } => "StructureOnly",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Certificate {
    pub steps: Vec<CertStep>,
}

impl Certificate {
    /// Rule of the step that settled the verdict.
    pub fn deciding_rule(&self) -> Option<&'static str> {
        self.steps.last().map(CertStep::rule_name)
    }
}

/// One fundamental set with the scan bound that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Z1Fundamentals {
    pub z1: u32,
    pub ceiling: BigUint,
    pub reps: Vec<FundamentalRep>,
}

/// Everything the structure constraints computed for nonsquare k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub k: BigUint,
    pub y: u32,
    pub h4k: u64,
    pub pell: PellFundamental,
    /// Divisors of y that also divide h(4k); y prime makes this a subset
    /// of {1, y}.
    pub admissible_z1: Vec<u32>,
    pub fundamentals: Vec<Z1Fundamentals>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Solution {
    pub z: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub k: BigUint,
    pub y: OddExponent,
    pub status: Status,
    pub certificate: Certificate,
    /// (x, z) witnesses; the pipeline never claims any, so this is only
    /// filled by oracle-backed callers.
    pub solutions: Vec<(BigUint, u32)>,
    pub structure: Option<StructureReport>,
    /// Budget or range failures that limited the pipeline.
    pub diagnostics: Vec<String>,
}

/// Exact density-sweep counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityReport {
    pub n: u64,
    /// k in [1, n] where 2k-1 has a prime factor = +-3 mod 8.
    pub qualifying: u64,
    /// k where factoring ran out of budget before the question settled.
    pub unknown: u64,
    pub ratio: Ratio<BigUint>,
    /// 1 - prod(1 - 1/p) over qualifying primes up to the cutoff.
    pub heuristic: Ratio<BigUint>,
    pub prime_cutoff: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineConfig {
    pub factor_budget: FactorBudget,
    /// Prime cutoff for the density heuristic product.
    pub density_prime_cutoff: u64,
    /// Upper bound on fundamental-set scan length before giving up.
    pub fundamental_scan_cap: u64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            factor_budget: FactorBudget::default(),
            density_prime_cutoff: 1000,
            fundamental_scan_cap: 100_000_000,
        }
    }
}

pub struct Engine {
    config: EngineConfig,
    suite: Vec<CaseVerdict>,
}

impl Engine {
    /// Certifies the eight built-in equations once; every later citation
    /// reuses these verdicts.
    pub fn new(config: EngineConfig) -> Engine {
        Engine {
            config,
            suite: certify_builtin_cases(),
        }
    }

    pub fn with_defaults() -> Engine {
        Engine::new(EngineConfig::default())
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    pub fn suite(&self) -> &[CaseVerdict] {
        &self.suite
    }

    fn cite(&self, labels: &[&str]) -> Vec<CitedCase> {
        labels
            .iter()
            .map(|label| {
                let case = self
                    .suite
                    .iter()
                    .find(|c| c.case.label() == *label)
                    .expect("built-in suite covers every citable label");
                CitedCase {
                    label: (*label).to_string(),
                    threshold: case.verdict.criterion.threshold.clone(),
                }
            })
            .collect()
    }

    fn even_z_labels(y: OddExponent) -> &'static [&'static str] {
        match y {
            OddExponent::Three => &["y3z4", "y3z6"],
            OddExponent::Five => &["y5z6", "y5z8", "y5z10"],
        }
    }

    fn square_k_labels(y: OddExponent) -> &'static [&'static str] {
        match y {
            OddExponent::Three => &["y3z5-square"],
            OddExponent::Five => &["y5z7-square", "y5z9-square"],
        }
    }

    /// Step certifying that solutions need odd z. Constant over k.
    pub fn even_z_exclusion(&self, y: OddExponent) -> CertStep {
        CertStep::EvenZExcluded {
            y: y.value(),
            cited: self.cite(Self::even_z_labels(y)),
        }
    }

    /// Divisor criterion: a prime p of 2k-1 with p = +-3 mod 8 settles
    /// both exponents at once. The smallest qualifying prime is recorded.
    pub fn criterion_divisor(&self, k: &BigUint) -> Result<Option<CertStep>, EngineError> {
        let m = (k << 1) - BigUint::one();
        let factorization = factorize(&m, &self.config.factor_budget)?;
        for p in factorization.primes() {
            let residue = u32::try_from(p % 8u32).unwrap();
            if residue == 3 || residue == 5 {
                let sym = jacobi(&BigInt::from(2), p).expect("odd prime modulus");
                debug_assert_eq!(sym, -1);
                return Ok(Some(CertStep::JacobiDivisor {
                    p: p.clone(),
                    jacobi_2_p: sym,
                }));
            }
        }
        Ok(None)
    }

    /// Square criterion: k = root^2 reduces to built-in equations in root.
    pub fn criterion_square(&self, k: &BigUint, y: OddExponent) -> Option<CertStep> {
        let root = perfect_square_root(k)?;
        Some(CertStep::SquareK {
            root,
            cited: self.cite(Self::square_k_labels(y)),
        })
    }

    /// Class number, least Pell solution, and the complete fundamental
    /// sets for every admissible z1, for nonsquare k.
    pub fn structure_constraints(
        &self,
        k: &BigUint,
        y: OddExponent,
    ) -> Result<StructureReport, EngineError> {
        let disc = u64::try_from(k << 2).map_err(|_| EngineError::KTooLarge { k: k.clone() })?;
        if disc > MAX_DISCRIMINANT {
            return Err(EngineError::KTooLarge { k: k.clone() });
        }
        let h4k = class_number(disc)?.h;
        let pell = least_solution(k)?;
        let mut admissible_z1 = vec![1u32];
        if h4k % u64::from(y.value()) == 0 {
            admissible_z1.push(y.value());
        }
        let k_const = -BigInt::from((k << 1) - BigUint::one());
        let sqrt_k = crate::bigarith::isqrt(k);
        let mut fundamentals = Vec::new();
        for &z1 in &admissible_z1 {
            let bound = height_bound(k, &k_const, z1, &pell)?;
            let cap = &bound.ceiling / &sqrt_k + BigUint::one();
            if cap > BigUint::from(self.config.fundamental_scan_cap) {
                return Err(EngineError::ScanTooLarge { z1, cap });
            }
            let reps = enumerate_fundamental(k, &k_const, z1, &pell)?;
            fundamentals.push(Z1Fundamentals {
                z1,
                ceiling: bound.ceiling,
                reps,
            });
        }
        Ok(StructureReport {
            k: k.clone(),
            y: y.value(),
            h4k,
            pell,
            admissible_z1,
            fundamentals,
        })
    }

    /// Congruence elimination over primes dividing gcd(k, V1).
    ///
    /// Any solution with odd z >= 3 forces k^((z-1)/2) = f V + lambda g U
    /// with p | k and p | V but p coprime to U, so p | g; if every
    /// fundamental pair and both signs give g nonzero mod p, no solution
    /// survives.
    pub fn congruence_elimination(&self, report: &StructureReport) -> Option<CertStep> {
        let v1 = &report.pell.v1;
        let shared = report.k.gcd(v1);
        if shared.is_one() {
            return None;
        }
        let factorization = factorize(&shared, &self.config.factor_budget).ok()?;
        for p in factorization.primes() {
            let mut entries = Vec::new();
            let mut all_nonzero = true;
            for set in &report.fundamentals {
                let t = report.y / set.z1;
                for rep in &set.reps {
                    for lambda in [1i8, -1] {
                        let base = QuadInt::new(
                            BigInt::from(rep.x1.clone()),
                            BigInt::from(lambda) * BigInt::from(rep.y1.clone()),
                            report.k.clone(),
                        )
                        .expect("k validated nonsquare upstream");
                        let g_abs = base.pow(u64::from(t)).b.magnitude().clone();
                        let residue = &g_abs % p;
                        if residue.is_zero() {
                            all_nonzero = false;
                        }
                        entries.push(ElimRecord {
                            z1: set.z1,
                            x1: rep.x1.clone(),
                            y1: rep.y1.clone(),
                            lambda,
                            t,
                            g_abs,
                            residue,
                        });
                    }
                }
            }
            if all_nonzero {
                return Some(CertStep::CongruenceElim {
                    p: p.clone(),
                    entries,
                });
            }
        }
        None
    }

    /// Full pipeline: divisor, square, structure shortcut, congruence
    /// elimination, in that order; inconclusive otherwise.
    pub fn analyze(&self, k: &BigUint, y: OddExponent) -> Verdict {
        assert!(*k >= BigUint::from(2u32), "k must exceed 1");
        let mut steps = vec![self.even_z_exclusion(y)];
        let mut diagnostics = Vec::new();
        let verdict = |status, steps: Vec<CertStep>, structure, diagnostics| Verdict {
            k: k.clone(),
            y,
            status,
            certificate: Certificate { steps },
            solutions: Vec::new(),
            structure,
            diagnostics,
        };

        match self.criterion_divisor(k) {
            Ok(Some(step)) => {
                steps.push(step);
                return verdict(Status::NoSolutions, steps, None, diagnostics);
            }
            Ok(None) => {}
            Err(e) => diagnostics.push(e.to_string()),
        }

        if let Some(step) = self.criterion_square(k, y) {
            steps.push(step);
            return verdict(Status::NoSolutions, steps, None, diagnostics);
        }

        let report = match self.structure_constraints(k, y) {
            Ok(report) => report,
            Err(e) => {
                diagnostics.push(e.to_string());
                steps.push(CertStep::StructureOnly {
                    admissible_z1: Vec::new(),
                });
                return verdict(Status::Inconclusive, steps, None, diagnostics);
            }
        };
        steps.push(CertStep::ClassNumber {
            disc: u64::try_from(k << 2).unwrap(),
            h: report.h4k,
        });
        steps.push(CertStep::PellLeast {
            d: report.pell.d.clone(),
            u1: report.pell.u1.clone(),
            v1: report.pell.v1.clone(),
        });
        steps.push(CertStep::FundamentalSet {
            k_const: -BigInt::from((k << 1) - BigUint::one()),
            sets: report
                .fundamentals
                .iter()
                .map(|set| FundamentalSetRecord {
                    z1: set.z1,
                    ceiling: set.ceiling.clone(),
                    pairs: set
                        .reps
                        .iter()
                        .map(|r| (r.x1.clone(), r.y1.clone()))
                        .collect(),
                })
                .collect(),
        });
        if report.fundamentals.iter().all(|set| set.reps.is_empty()) {
            return verdict(Status::NoSolutions, steps, Some(report), diagnostics);
        }
        if let Some(step) = self.congruence_elimination(&report) {
            steps.push(step);
            return verdict(Status::NoSolutions, steps, Some(report), diagnostics);
        }
        steps.push(CertStep::StructureOnly {
            admissible_z1: report.admissible_z1.clone(),
        });
        verdict(Status::Inconclusive, steps, Some(report), diagnostics)
    }

    /// Oracle: all (x, z) with z <= z_max solving the equation exactly.
    /// Accepts any y >= 1, unlike the pipeline.
    pub fn brute_force(&self, k: &BigUint, y: u32, z_max: u32) -> Vec<(BigUint, u32)> {
        let odd: BigUint = (k << 1) - BigUint::one();
        let m = BigInt::from(odd.pow(y));
        let mut found = Vec::new();
        for z in 1..=z_max {
            let value = BigInt::from(k.pow(z)) - &m;
            if value.is_positive() {
                if let Some(x) = perfect_square_root(value.magnitude()) {
                    found.push((x, z));
                }
            }
        }
        found
    }

    /// Counts k in [1, n] whose 2k-1 has a prime factor = +-3 mod 8, with
    /// the exact ratio and the heuristic prime product for comparison.
    pub fn density_sweep(&self, n: u64) -> DensityReport {
        let mut qualifying = 0u64;
        let mut unknown = 0u64;
        for k in 2..=n {
            let m = BigUint::from(2 * k - 1);
            match factorize(&m, &self.config.factor_budget) {
                Ok(factorization) => {
                    let hit = factorization.primes().any(|p| {
                        let residue = u32::try_from(p % 8u32).unwrap();
                        residue == 3 || residue == 5
                    });
                    if hit {
                        qualifying += 1;
                    }
                }
                Err(_) => unknown += 1,
            }
        }
        let one = || Ratio::from_integer(BigUint::one());
        let mut product = one();
        let mut p = 3u64;
        while p <= self.config.density_prime_cutoff {
            if (p % 8 == 3 || p % 8 == 5) && is_prime(&BigUint::from(p)) {
                product *= one() - Ratio::new(BigUint::one(), BigUint::from(p));
            }
            p += 2;
        }
        DensityReport {
            n,
            qualifying,
            unknown,
            ratio: Ratio::new(BigUint::from(qualifying), BigUint::from(n)),
            heuristic: one() - product,
            prime_cutoff: self.config.density_prime_cutoff,
        }
    }

    /// Recomputes every constant in the certificate from its inputs and
    /// the verdict's (k, y); any mismatch is an error naming the step.
    pub fn replay(&self, verdict: &Verdict) -> Result<(), String> {
        let k = &verdict.k;
        let y = verdict.y;
        let mut fundamental_sets: Option<&[FundamentalSetRecord]> = None;
        for (index, step) in verdict.certificate.steps.iter().enumerate() {
            let fail = |message: String| Err(format!("step {index} {}: {message}", step.rule_name()));
            match step {
                CertStep::EvenZExcluded { y: step_y, cited } => {
                    if *step_y != y.value() {
                        return fail(format!("cites y = {step_y}, verdict has y = {y}"));
                    }
                    replay_citations(Self::even_z_labels(y), cited)
                        .map_err(|m| format!("step {index} EvenZExcluded: {m}"))?;
                }
                CertStep::JacobiDivisor { p, jacobi_2_p } => {
                    let m: BigUint = (k << 1) - BigUint::one();
                    if !(m % p).is_zero() {
                        return fail(format!("{p} does not divide 2k-1"));
                    }
                    if !is_prime(p) {
                        return fail(format!("{p} is not prime"));
                    }
                    let residue = u32::try_from(p % 8u32).unwrap();
                    if residue != 3 && residue != 5 {
                        return fail(format!("{p} is +-1 mod 8"));
                    }
                    let sym = jacobi(&BigInt::from(2), p).map_err(|e| e.to_string())?;
                    if sym != *jacobi_2_p || sym != -1 {
                        return fail(format!("jacobi(2, {p}) = {sym}"));
                    }
                }
                CertStep::SquareK { root, cited } => {
                    if &(root * root) != k {
                        return fail(format!("{root}^2 is not k"));
                    }
                    replay_citations(Self::square_k_labels(y), cited)
                        .map_err(|m| format!("step {index} SquareK: {m}"))?;
                }
                CertStep::ClassNumber { disc, h } => {
                    if BigUint::from(*disc) != k << 2 {
                        return fail(format!("disc {disc} is not 4k"));
                    }
                    let recomputed = class_number(*disc).map_err(|e| e.to_string())?.h;
                    if recomputed != *h {
                        return fail(format!("h = {recomputed}, recorded {h}"));
                    }
                }
                CertStep::PellLeast { d, u1, v1 } => {
                    if d != k {
                        return fail(format!("d = {d} is not k"));
                    }
                    let sol = least_solution(d).map_err(|e| e.to_string())?;
                    if sol.u1 != *u1 || sol.v1 != *v1 {
                        return fail(format!("least solution is ({}, {})", sol.u1, sol.v1));
                    }
                }
                CertStep::FundamentalSet { k_const, sets } => {
                    let expected = -BigInt::from((k << 1) - BigUint::one());
                    if *k_const != expected {
                        return fail(format!("constant {k_const}, expected {expected}"));
                    }
                    let pell = least_solution(k).map_err(|e| e.to_string())?;
                    for record in sets {
                        let bound = height_bound(k, k_const, record.z1, &pell)
                            .map_err(|e| e.to_string())?;
                        if bound.ceiling != record.ceiling {
                            return fail(format!(
                                "z1 = {}: ceiling {}, recorded {}",
                                record.z1, bound.ceiling, record.ceiling
                            ));
                        }
                        let reps = enumerate_fundamental(k, k_const, record.z1, &pell)
                            .map_err(|e| e.to_string())?;
                        let pairs: Vec<_> =
                            reps.iter().map(|r| (r.x1.clone(), r.y1.clone())).collect();
                        if pairs != record.pairs {
                            return fail(format!("z1 = {}: sets differ", record.z1));
                        }
                    }
                    fundamental_sets = Some(sets);
                }
                CertStep::CongruenceElim { p, entries } => {
                    if !is_prime(p) {
                        return fail(format!("{p} is not prime"));
                    }
                    let pell = least_solution(k).map_err(|e| e.to_string())?;
                    let shared = k.gcd(&pell.v1);
                    if !(shared % p).is_zero() {
                        return fail(format!("{p} does not divide gcd(k, V1)"));
                    }
                    let sets = fundamental_sets
                        .ok_or_else(|| format!("step {index}: no fundamental sets recorded"))?;
                    let mut expected = Vec::new();
                    for record in sets {
                        let t = y.value() / record.z1;
                        for (x1, y1) in &record.pairs {
                            for lambda in [1i8, -1] {
                                let base = QuadInt::new(
                                    BigInt::from(x1.clone()),
                                    BigInt::from(lambda) * BigInt::from(y1.clone()),
                                    k.clone(),
                                )
                                .map_err(|e| e.to_string())?;
                                let g_abs = base.pow(u64::from(t)).b.magnitude().clone();
                                let residue = &g_abs % p;
                                expected.push(ElimRecord {
                                    z1: record.z1,
                                    x1: x1.clone(),
                                    y1: y1.clone(),
                                    lambda,
                                    t,
                                    g_abs,
                                    residue,
                                });
                            }
                        }
                    }
                    if entries != &expected {
                        return fail("recorded entries differ from recomputation".to_string());
                    }
                    if entries.iter().any(|e| e.residue.is_zero()) {
                        return fail("a residue vanishes; step proves nothing".to_string());
                    }
                    if entries.is_empty() {
                        return fail("no entries; nothing eliminated".to_string());
                    }
                }
                CertStep::StructureOnly { .. } => {
                    if verdict.status != Status::Inconclusive {
                        return fail("terminal structure step on a decided verdict".to_string());
                    }
                }
            }
        }
        Ok(())
    }
}

fn replay_citations(expected_labels: &[&str], cited: &[CitedCase]) -> Result<(), String> {
    let labels: Vec<_> = cited.iter().map(|c| c.label.as_str()).collect();
    if labels != expected_labels {
        return Err(format!("cites {labels:?}, expected {expected_labels:?}"));
    }
    for cite in cited {
        let case = builtin_cases()
            .into_iter()
            .find(|c| c.label() == cite.label)
            .ok_or_else(|| format!("unknown case {}", cite.label))?;
        let verdict = decide_no_solutions(&case.polynomial()).map_err(|e| e.to_string())?;
        if !verdict.certified() {
            return Err(format!("case {} no longer certifies", cite.label));
        }
        if verdict.criterion.threshold != cite.threshold {
            return Err(format!(
                "case {}: threshold {}, recorded {}",
                cite.label, verdict.criterion.threshold, cite.threshold
            ));
        }
    }
    Ok(())
}

/// Polynomial form of the k-side for quick cross-checks: t^z - (2t - 1)^y.
pub fn equation_polynomial(y: u32, z: u32) -> IntPolynomial {
    let base = &IntPolynomial::monomial(BigInt::from(2), 1) - &IntPolynomial::one();
    &IntPolynomial::monomial(BigInt::one(), z as usize) - &base.pow(y)
}
