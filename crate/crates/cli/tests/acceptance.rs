//! Acceptance suite: end-to-end checks of the shipped binary and the
//! library against independent oracles, each with a runtime budget.

use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use serde_json::Value;

use rnagell_core::engine::{Engine, OddExponent, Status};
use rnagell_core::intpoly::IntPolynomial;
use rnagell_core::normrep::{enumerate_fundamental, height_bound};
use rnagell_core::pell::{least_solution, QuadInt};
use rnagell_core::qforms::{class_number, reduced_forms, QuadForm};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rnagell"))
}

fn nat(n: u64) -> BigUint {
    BigUint::from(n)
}

fn budget(name: &str, started: Instant, limit: Duration) {
    let elapsed = started.elapsed();
    assert!(
        elapsed <= limit,
        "{name} took {elapsed:?}, budget {limit:?}"
    );
    eprintln!("{name}: PASS in {elapsed:?} (budget {limit:?})");
}

fn analyze_736(y: &str) -> Value {
    let out = bin()
        .args(["analyze", "--k", "736", "--y", y, "--json"])
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "exit: {:?}", out.status.code());
    let rows: Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    rows.as_array().expect("array of verdicts")[0].clone()
}

fn steps_by_rule<'v>(verdict: &'v Value, rule: &str) -> Vec<&'v Value> {
    verdict["certificate"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|s| s["rule"] == rule)
        .collect()
}

#[test]
fn flagship_736_y3() {
    let started = Instant::now();
    let verdict = analyze_736("3");
    assert_eq!(verdict["status"], "no-solutions");

    let class = steps_by_rule(&verdict, "ClassNumber");
    assert_eq!(class.len(), 1);
    assert_eq!(class[0]["disc"], "2944");
    assert_eq!(class[0]["h"], "4");

    let pell = steps_by_rule(&verdict, "PellLeast");
    assert_eq!(pell[0]["u1"], "24335");
    assert_eq!(pell[0]["v1"], "897");

    let sets = steps_by_rule(&verdict, "FundamentalSet");
    assert_eq!(sets[0]["constant"], "-1471");
    let set = &sets[0]["sets"].as_array().unwrap()[0];
    assert_eq!(set["z1"], "1");
    assert_eq!(set["ceiling"], "8462");
    assert_eq!(set["pairs"], serde_json::json!([["2577", "95"]]));

    let elim = steps_by_rule(&verdict, "CongruenceElim");
    assert_eq!(elim[0]["p"], "23");
    let entries = elim[0]["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 2);
    for entry in entries {
        assert_eq!(entry["g"], "2523692765");
        assert_eq!(entry["residue"], "9");
    }
    budget("flagship 736 y=3", started, Duration::from_secs(5));
}

#[test]
fn flagship_736_y5() {
    let started = Instant::now();
    let verdict = analyze_736("5");
    assert_eq!(verdict["status"], "no-solutions");
    let elim = steps_by_rule(&verdict, "CongruenceElim");
    assert_eq!(elim[0]["p"], "23");
    let entries = elim[0]["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 2);
    let lambdas: Vec<&Value> = entries.iter().map(|e| &e["lambda"]).collect();
    assert_eq!(lambdas, [&Value::from("1"), &Value::from("-1")]);
    for entry in entries {
        assert_eq!(entry["residue"], "15");
    }
    budget("flagship 736 y=5", started, Duration::from_secs(5));
}

#[test]
fn builtin_suite_certifies_all_eight() {
    let started = Instant::now();
    let engine = Engine::with_defaults();
    let suite = engine.suite();
    let thresholds: Vec<(String, u64)> = suite
        .iter()
        .map(|cv| {
            assert!(cv.verdict.certified(), "{}", cv.case.label());
            (
                cv.case.label(),
                u64::try_from(&cv.verdict.criterion.threshold).unwrap(),
            )
        })
        .collect();
    let expected: Vec<(String, u64)> = [
        ("y3z4", 16),
        ("y3z6", 6),
        ("y5z6", 27041),
        ("y5z8", 43),
        ("y5z10", 39),
        ("y3z5-square", 6),
        ("y5z7-square", 168),
        ("y5z9-square", 40),
    ]
    .iter()
    .map(|(l, t)| (l.to_string(), *t))
    .collect();
    assert_eq!(thresholds, expected);

    let deep_scan = &suite[2];
    assert_eq!(
        deep_scan.verdict.criterion.root,
        IntPolynomial::from_i64s(&[-1448, -88, -16, 1])
    );
    assert_eq!(
        deep_scan.verdict.criterion.remainder,
        IntPolynomial::from_i64s(&[-2096703, -254858, -54040])
    );
    let quartic = &suite[3];
    assert_eq!(
        quartic.verdict.criterion.root,
        IntPolynomial::from_i64s(&[40, -16, 0, 0, 1])
    );
    assert_eq!(
        quartic.verdict.criterion.remainder,
        IntPolynomial::from_i64s(&[-1599, 1270, -216, -80])
    );
    budget("built-in suite", started, Duration::from_secs(60));
}

#[test]
fn pell_oracle_to_500() {
    let started = Instant::now();
    for d in 2u64..=500 {
        let root = d.isqrt();
        if root * root == d {
            continue;
        }
        let pell = least_solution(&nat(d)).unwrap();
        let (u, v) = (&pell.u1, &pell.v1);
        assert_eq!(u * u, &(v * v) * &nat(d) + nat(1), "d = {d}");
        let v1_cap = u64::try_from(v).unwrap_or(u64::MAX);
        for smaller in 1..v1_cap.min(100_001) {
            let t = d * smaller * smaller + 1;
            let r = t.isqrt();
            assert!(r * r != t, "d = {d}: V = {smaller} beats V1 = {v}");
        }
    }
    let pell = least_solution(&nat(736)).unwrap();
    assert_eq!((pell.u1, pell.v1), (nat(24335), nat(897)));
    budget("Pell oracle to 500", started, Duration::from_secs(30));
}

fn orbit_count(disc: u64) -> u64 {
    use std::collections::BTreeSet;
    let reduced = reduced_forms(disc).unwrap();
    let bound = 4 * disc as i64 + 50;
    let mut assigned: BTreeSet<QuadForm> = BTreeSet::new();
    let mut orbits = 0;
    for &start in &reduced {
        if assigned.contains(&start) {
            continue;
        }
        let mut frontier = vec![start];
        let mut visited = BTreeSet::new();
        visited.insert(start);
        while let Some(f) = frontier.pop() {
            let neighbors = [
                QuadForm::new(f.c, -f.b, f.a),
                QuadForm::new(f.a, f.b + 2 * f.a, f.a + f.b + f.c),
                QuadForm::new(f.a, f.b - 2 * f.a, f.a - f.b + f.c),
                QuadForm::new(-f.a, f.b, -f.c),
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
                assigned.insert(*f);
            }
        }
        orbits += 1;
    }
    orbits
}

#[test]
fn class_number_agrees_with_orbit_closure_to_200() {
    let started = Instant::now();
    for disc in 5u64..=200 {
        if reduced_forms(disc).is_err() {
            continue;
        }
        assert_eq!(
            class_number(disc).unwrap().h,
            orbit_count(disc),
            "disc {disc}"
        );
    }
    assert_eq!(class_number(2944).unwrap().h, 4);
    budget("class-number oracle to 200", started, Duration::from_secs(60));
}

#[test]
fn fundamental_sets_are_complete_on_the_grid() {
    use core::cmp::Ordering;
    use num_integer::Integer;
    let started = Instant::now();
    for d in [2u64, 3, 5, 7, 10] {
        let pell = least_solution(&nat(d)).unwrap();
        let inverse_unit = pell.unit().conjugate();
        for k_abs in [3i64, 5, 7, 11] {
            for k in [k_abs, -k_abs] {
                if (d as i64).gcd(&k) != 1 {
                    continue;
                }
                let kb = BigInt::from(k);
                let reps = enumerate_fundamental(&nat(d), &kb, 1, &pell).unwrap();
                let pairs: Vec<(u64, u64)> = reps
                    .iter()
                    .map(|r| {
                        (
                            u64::try_from(&r.x1).unwrap(),
                            u64::try_from(&r.y1).unwrap(),
                        )
                    })
                    .collect();
                let beta = height_bound(&nat(d), &kb, 1, &pell).unwrap().beta;
                for y in 1u64..=10_000 {
                    let t = d as i64 * (y * y) as i64 + k;
                    if t <= 0 {
                        continue;
                    }
                    let x = (t as u64).isqrt();
                    if x * x != t as u64 || x == 0 || x.gcd(&y) != 1 {
                        continue;
                    }
                    let mut w =
                        QuadInt::new(BigInt::from(x), BigInt::from(y), nat(d)).unwrap();
                    while {
                        let square = w.mul(&w).unwrap();
                        square.cmp_value(&beta).unwrap() != Ordering::Less
                    } {
                        w = w.mul(&inverse_unit).unwrap();
                    }
                    let landed = (
                        u64::try_from(w.a.magnitude()).unwrap(),
                        u64::try_from(w.b.magnitude()).unwrap(),
                    );
                    assert!(
                        pairs.contains(&landed),
                        "d = {d}, k = {k}: ({x}, {y}) reduced to {landed:?}"
                    );
                }
            }
        }
    }
    budget("fundamental completeness grid", started, Duration::from_secs(60));
}

#[test]
fn conjecture_sweep_to_100() {
    let started = Instant::now();
    let engine = Engine::with_defaults();
    for k in 2u64..=100 {
        let kb = nat(k);
        for y in OddExponent::ALL {
            assert!(
                engine.brute_force(&kb, y.value(), 30).is_empty(),
                "k = {k}, y = {y}"
            );
            let verdict = engine.analyze(&kb, y);
            assert_ne!(verdict.status, Status::SolutionsFound, "k = {k}, y = {y}");
        }
    }
    for k in 2u64..=21 {
        let witnesses = engine.brute_force(&nat(k), 1, 5);
        assert_eq!(witnesses, [(nat(k - 1), 2)], "k = {k}");
    }
    budget("conjecture sweep to 100", started, Duration::from_secs(120));
}

#[test]
fn no_certified_k_has_a_witness() {
    let started = Instant::now();
    let engine = Engine::with_defaults();
    let mut certified = Vec::new();
    let mut witnessed = Vec::new();
    for k in 2u64..=100 {
        let kb = nat(k);
        for y in OddExponent::ALL {
            if engine.analyze(&kb, y).status == Status::NoSolutions {
                certified.push((k, y.value()));
            }
            if !engine.brute_force(&kb, y.value(), 30).is_empty() {
                witnessed.push((k, y.value()));
            }
        }
    }
    let overlap: Vec<_> = certified
        .iter()
        .filter(|pair| witnessed.contains(pair))
        .collect();
    assert!(overlap.is_empty(), "soundness breach: {overlap:?}");
    budget("certified-witness intersection", started, Duration::from_secs(120));
}

#[test]
fn density_sweep_ten_thousand() {
    let started = Instant::now();
    let engine = Engine::with_defaults();
    let reports: Vec<_> = [100u64, 1000, 10_000]
        .iter()
        .map(|&n| engine.density_sweep(n))
        .collect();
    for report in &reports {
        assert_eq!(report.unknown, 0, "N = {}", report.n);
    }
    assert_eq!(reports[0].qualifying, 76);
    assert_eq!(reports[1].qualifying, 797);
    assert_eq!(reports[2].qualifying, 8201);
    assert!(reports[0].ratio < reports[1].ratio);
    assert!(reports[1].ratio < reports[2].ratio);
    let last = &reports[2].ratio;
    let frac = |num: u64, den: u64| {
        num_rational::Ratio::new(BigUint::from(num), BigUint::from(den))
    };
    assert!(*last > frac(3, 5) && *last < frac(1, 1));
    budget("density sweep to 10^4", started, Duration::from_secs(60));
}
