//! Class numbers of primitive indefinite binary quadratic forms via
//! reduced-form cycle enumeration.
//!
//! A form (a, b, c) of positive nonsquare discriminant is reduced when
//! |sqrt(D) - 2|a|| < b < sqrt(D). The neighbor step rho walks each proper
//! equivalence class around its finite cycle of reduced forms. The count
//! reported is the ideal class number of the corresponding quadratic
//! order, which is the order the engine's divisibility constraint lives
//! in; see [`class_number`].

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

/// Discriminants above this are rejected rather than enumerated.
pub const MAX_DISCRIMINANT: u64 = 1 << 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiscriminantError {
    /// Not congruent to 0 or 1 mod 4, so no integral form has it.
    WrongResidue { disc: u64 },
    /// Perfect squares (0 included) fall outside the indefinite theory.
    PerfectSquare { disc: u64 },
    TooLarge { disc: u64 },
}

impl fmt::Display for DiscriminantError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiscriminantError::WrongResidue { disc } => {
                write!(f, "discriminant {disc} is 2 or 3 mod 4")
            }
            DiscriminantError::PerfectSquare { disc } => {
                write!(f, "discriminant {disc} is a perfect square")
            }
            DiscriminantError::TooLarge { disc } => {
                write!(f, "discriminant {disc} exceeds {MAX_DISCRIMINANT}")
            }
        }
    }
}

impl core::error::Error for DiscriminantError {}

/// `a x^2 + b xy + c y^2` with discriminant `b^2 - 4ac`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadForm {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        QuadForm { a, b, c }
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c) == 1
    }

    pub fn evaluate(&self, x: i64, y: i64) -> i64 {
        self.a * x * x + self.b * x * y + self.c * y * y
    }

    /// Reducedness test by exact squared comparisons: with s = isqrt(D),
    /// the window |sqrt(D) - 2|a|| < b < sqrt(D) is exactly
    /// s - b < 2|a| <= s + b and b <= s (strictness from D nonsquare).
    pub fn is_reduced(&self) -> bool {
        let disc = self.discriminant();
        if disc <= 0 || self.b <= 0 {
            return false;
        }
        let s = (disc as u64).isqrt() as i64;
        if s * s == disc || self.b > s {
            return false;
        }
        let u = 2 * self.a.abs();
        s - self.b < u && u <= s + self.b
    }

    /// Right neighbor: (a, b, c) -> (c, r, (r^2 - D)/(4c)) with r the
    /// largest integer at most isqrt(D) congruent to -b mod 2|c|. Maps
    /// reduced forms to reduced forms within the same proper class.
    pub fn rho(&self) -> QuadForm {
        let disc = self.discriminant();
        debug_assert!(disc > 0);
        let s = (disc as u64).isqrt() as i64;
        let modulus = 2 * self.c.abs();
        let r = s - (s + self.b).rem_euclid(modulus);
        QuadForm::new(self.c, r, (r * r - disc) / (4 * self.c))
    }

    /// The negative of the opposite form, -(a, -b, c) = (-a, b, -c),
    /// reduced whenever this form is. Its class is this form's class
    /// composed with the class of the negative principal form, so pairing
    /// cycles along this map quotients the class group by that class.
    pub fn negated_opposite(&self) -> QuadForm {
        QuadForm::new(-self.a, self.b, -self.c)
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

fn validate(disc: u64) -> Result<(), DiscriminantError> {
    if disc > MAX_DISCRIMINANT {
        return Err(DiscriminantError::TooLarge { disc });
    }
    if disc % 4 == 2 || disc % 4 == 3 {
        return Err(DiscriminantError::WrongResidue { disc });
    }
    let s = disc.isqrt();
    if s * s == disc {
        return Err(DiscriminantError::PerfectSquare { disc });
    }
    Ok(())
}

/// All primitive reduced forms of the given discriminant, in lexicographic
/// (a, b, c) order.
pub fn reduced_forms(disc: u64) -> Result<Vec<QuadForm>, DiscriminantError> {
    validate(disc)?;
    let s = disc.isqrt() as i64;
    let d = disc as i64;
    let mut forms = Vec::new();
    let first_b = if disc % 2 == 0 { 2 } else { 1 };
    for b in (first_b..=s).step_by(2) {
        // ac = (b^2 - D)/4 < 0; enumerate |a| dividing (D - b^2)/4 inside
        // the window, then both sign patterns
        let m = (d - b * b) / 4;
        let lo = (s - b) / 2 + 1;
        let hi = (s + b) / 2;
        for a_abs in lo..=hi {
            if m % a_abs != 0 {
                continue;
            }
            let c_abs = m / a_abs;
            for form in [
                QuadForm::new(a_abs, b, -c_abs),
                QuadForm::new(-a_abs, b, c_abs),
            ] {
                if form.is_primitive() {
                    debug_assert!(form.is_reduced());
                    debug_assert_eq!(form.discriminant(), d);
                    forms.push(form);
                }
            }
        }
    }
    forms.sort_unstable();
    Ok(forms)
}

/// Class count plus the partition of reduced forms behind it. Each entry
/// of `cycles` is closed under [`QuadForm::rho`]: one rho-cycle, or the
/// union of the two cycles a negation pairing identifies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormClassData {
    pub discriminant: u64,
    pub h: u64,
    pub cycles: Vec<Vec<QuadForm>>,
}

/// Class number of the discriminant: the ideal class number of the
/// quadratic order, computed as rho-cycles of reduced forms (the proper
/// classes) merged along the [`QuadForm::negated_opposite`] pairing.
///
/// The merge identifies a class with its twist by the negative principal
/// class, which is exactly the freedom the norm-form machinery downstream
/// has in the sign of lambda; when the twist is trivial (a unit of norm -1
/// exists) every cycle self-pairs and nothing merges.
pub fn class_number(disc: u64) -> Result<FormClassData, DiscriminantError> {
    let forms = reduced_forms(disc)?;
    let mut cycle_of: BTreeMap<QuadForm, usize> = BTreeMap::new();
    let mut cycles: Vec<Vec<QuadForm>> = Vec::new();
    for &start in &forms {
        if cycle_of.contains_key(&start) {
            continue;
        }
        let index = cycles.len();
        let mut cycle = Vec::new();
        let mut form = start;
        loop {
            cycle_of.insert(form, index);
            cycle.push(form);
            form = form.rho();
            debug_assert!(form.is_reduced());
            if form == start {
                break;
            }
        }
        cycles.push(cycle);
    }
    // union cycles along the twist pairing; the pairing is a perfect
    // matching with fixed points, so a two-level resolution suffices
    let mut target: Vec<usize> = (0..cycles.len()).collect();
    for (form, &index) in &cycle_of {
        let other = cycle_of[&form.negated_opposite()];
        let (low, high) = if index <= other {
            (index, other)
        } else {
            (other, index)
        };
        let root = target[low];
        target[high] = root;
        target[index] = root;
    }
    let mut merged: BTreeMap<usize, Vec<QuadForm>> = BTreeMap::new();
    for (index, cycle) in cycles.into_iter().enumerate() {
        let mut root = index;
        while target[root] != root {
            root = target[root];
        }
        merged.entry(root).or_default().extend(cycle);
    }
    let cycles: Vec<Vec<QuadForm>> = merged.into_values().collect();
    Ok(FormClassData {
        discriminant: disc,
        h: cycles.len() as u64,
        cycles,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;
    use alloc::vec;

    fn form(a: i64, b: i64, c: i64) -> QuadForm {
        QuadForm::new(a, b, c)
    }

    #[test]
    fn reduced_forms_of_small_discriminants() {
        assert_eq!(
            reduced_forms(8).unwrap(),
            vec![form(-1, 2, 1), form(1, 2, -1)]
        );
        assert_eq!(
            reduced_forms(5).unwrap(),
            vec![form(-1, 1, 1), form(1, 1, -1)]
        );
        assert_eq!(
            reduced_forms(12).unwrap(),
            vec![
                form(-2, 2, 1),
                form(-1, 2, 2),
                form(1, 2, -2),
                form(2, 2, -1)
            ]
        );
    }

    #[test]
    fn invalid_discriminants_rejected() {
        assert_eq!(
            reduced_forms(7),
            Err(DiscriminantError::WrongResidue { disc: 7 })
        );
        assert_eq!(
            reduced_forms(2),
            Err(DiscriminantError::WrongResidue { disc: 2 })
        );
        for square in [0u64, 4, 16, 36] {
            assert_eq!(
                reduced_forms(square),
                Err(DiscriminantError::PerfectSquare { disc: square })
            );
        }
        let big = MAX_DISCRIMINANT + 4;
        assert_eq!(
            reduced_forms(big),
            Err(DiscriminantError::TooLarge { disc: big })
        );
    }

    #[test]
    fn rho_walks_the_discriminant_12_cycle() {
        let f = form(1, 2, -2);
        let g = f.rho();
        assert_eq!(g, form(-2, 2, 1));
        assert_eq!(g.rho(), f);
    }

    #[test]
    fn rho_preserves_discriminant_and_primitivity() {
        for disc in (5u64..=300).filter(|d| validate(*d).is_ok()) {
            for f in reduced_forms(disc).unwrap() {
                let g = f.rho();
                assert_eq!(g.discriminant() as u64, disc);
                assert!(g.is_primitive());
                assert!(g.is_reduced());
            }
        }
    }

    /// 229 and 316 are the first discriminants with class number 3 (odd
    /// and bigger than 1), where mixing in class inversion would miscount;
    /// 145 has class number 4 with a norm -1 unit, so nothing merges.
    #[test]
    fn class_numbers_of_known_discriminants() {
        let known = [
            (5u64, 1u64),
            (8, 1),
            (12, 1),
            (13, 1),
            (40, 2),
            (60, 2),
            (145, 4),
            (229, 3),
            (316, 3),
        ];
        for (disc, h) in known {
            assert_eq!(class_number(disc).unwrap().h, h, "disc {disc}");
        }
    }

    #[test]
    fn anchor_class_number_2944() {
        let data = class_number(2944).unwrap();
        assert_eq!(data.h, 4);
    }

    #[test]
    fn classes_partition_reduced_forms() {
        for disc in (5u64..=200).filter(|d| validate(*d).is_ok()) {
            let forms = reduced_forms(disc).unwrap();
            let data = class_number(disc).unwrap();
            let mut seen = BTreeSet::new();
            for class in &data.cycles {
                let members: BTreeSet<_> = class.iter().copied().collect();
                for f in class {
                    assert!(seen.insert(*f), "duplicate {f} in disc {disc}");
                    assert!(members.contains(&f.rho()), "rho exits class, disc {disc}");
                    assert!(
                        members.contains(&f.negated_opposite()),
                        "twist exits class, disc {disc}"
                    );
                }
            }
            let all: BTreeSet<_> = forms.iter().copied().collect();
            assert_eq!(seen, all, "partition misses forms, disc {disc}");
            assert_eq!(data.h as usize, data.cycles.len());
        }
    }

    /// Independent count: close the reduced forms under the two modular
    /// substitutions (x,y) -> (y,-x) and (x,y) -> (x+y,y) plus the
    /// negated-opposite twist, inside a coefficient box, and count the
    /// resulting orbits.
    #[test]
    fn orbit_search_oracle_up_to_250() {
        fn orbit_count(disc: u64) -> usize {
            let reduced = reduced_forms(disc).unwrap();
            let bound = 4 * disc as i64 + 50;
            let mut assigned: BTreeMap<QuadForm, usize> = BTreeMap::new();
            let mut orbits = 0;
            for &start in &reduced {
                if assigned.contains_key(&start) {
                    continue;
                }
                let mut frontier = vec![start];
                let mut visited = BTreeSet::new();
                visited.insert(start);
                while let Some(f) = frontier.pop() {
                    let neighbors = [
                        form(f.c, -f.b, f.a),
                        form(f.a, f.b + 2 * f.a, f.a + f.b + f.c),
                        form(f.a, f.b - 2 * f.a, f.a - f.b + f.c),
                        form(-f.a, f.b, -f.c),
                    ];
                    for g in neighbors {
                        if g.a.abs() <= bound
                            && g.b.abs() <= bound
                            && g.c.abs() <= bound
                            && visited.insert(g)
                        {
                            frontier.push(g);
                        }
                    }
                }
                for f in &reduced {
                    if visited.contains(f) {
                        assigned.insert(*f, orbits);
                    }
                }
                orbits += 1;
            }
            orbits
        }
        for disc in (5u64..=250).filter(|d| validate(*d).is_ok()) {
            assert_eq!(
                orbit_count(disc),
                class_number(disc).unwrap().h as usize,
                "disc {disc}"
            );
        }
    }

    #[test]
    fn deterministic_output() {
        assert_eq!(class_number(2944).unwrap(), class_number(2944).unwrap());
        assert_eq!(reduced_forms(60).unwrap(), reduced_forms(60).unwrap());
    }
}
