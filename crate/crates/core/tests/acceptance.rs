//! Acceptance criteria. Each criterion prints one `PASS`/`FAIL` line with its
//! runtime against the allowed limit; the process fails if any criterion does.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use wucalc::arith::{digit_sum_2, nu2_int, rat, Rational};
use wucalc::bordism::{
    bounding_verdict, check_almost_flat_consistency, integral_wu_numbers, spinc_index,
    wu_parity_check, Conclusion, ManifoldRecord,
};
use wucalc::char_class::{spinc_wu_classes, spinc_wu_classes_definitional, GradedPoly, Monomial};
use wucalc::group::{
    cohomology_by_cochains, homology, named_group, parse_group_spec, AbelianInvariants, Budget,
    FiniteGroup,
};
use wucalc::series::{
    spin_normal_series, spin_tangential_series, spinc_coefficient_series, sqrt_by_recursion,
    wu_tangential_series,
};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_series_goldens() -> Outcome {
    let g = spin_normal_series(10);
    let big_g = spin_tangential_series(10);
    let g_expected = [
        rat(-1, 2),
        rat(-9, 8),
        rat(-17, 16),
        rat(-277, 128),
        rat(-839, 256),
    ];
    let big_expected = [
        rat(1, 2),
        rat(11, 8),
        rat(5, 16),
        rat(51, 128),
        rat(95, 256),
    ];
    for (i, k) in (2..=10).step_by(2).enumerate() {
        ensure(g.coeff(k) == g_expected[i], || {
            format!("g at x^{k} is {}", g.coeff(k))
        })?;
        ensure(big_g.coeff(k) == big_expected[i], || {
            format!("G at x^{k} is {}", big_g.coeff(k))
        })?;
    }
    Ok(())
}

fn row(degree: u32, terms: &[(&str, i64, i64)]) -> GradedPoly {
    GradedPoly::from_terms(
        degree,
        terms
            .iter()
            .map(|&(m, n, d)| (Monomial::parse(m).unwrap(), rat(n, d))),
    )
    .unwrap()
}

fn criterion_table() -> Outcome {
    let expected = [
        row(2, &[("c", -1, 1)]),
        row(4, &[("c^2", 1, 2), ("p1", 1, 2)]),
        row(6, &[("c^3", 1, 2), ("c p1", -1, 2)]),
        row(
            8,
            &[
                ("c^4", -5, 8),
                ("c^2 p1", 1, 4),
                ("p1^2", 11, 8),
                ("p2", -5, 2),
            ],
        ),
        row(
            10,
            &[
                ("c^5", 9, 8),
                ("c^3 p1", 1, 4),
                ("c p1^2", -11, 8),
                ("c p2", 5, 2),
            ],
        ),
        row(
            12,
            &[
                ("c^6", -11, 16),
                ("c^4 p1", -5, 16),
                ("c^2 p1^2", 11, 16),
                ("p1^3", 5, 16),
                ("c^2 p2", -5, 4),
                ("p1 p2", -1, 4),
                ("p3", -1, 1),
            ],
        ),
        row(
            14,
            &[
                ("c^7", -15, 16),
                ("c^5 p1", 9, 16),
                ("c^3 p1^2", 11, 16),
                ("c p1^3", -5, 16),
                ("c^3 p2", -5, 4),
                ("c p1 p2", 1, 4),
                ("c p3", 1, 1),
            ],
        ),
        row(
            16,
            &[
                ("c^8", 211, 128),
                ("c^6 p1", -11, 32),
                ("c^4 p1^2", -55, 64),
                ("c^2 p1^3", 5, 32),
                ("p1^4", 51, 128),
                ("c^4 p2", 25, 16),
                ("c^2 p1 p2", -1, 8),
                ("p1^2 p2", -23, 16),
                ("p2^2", 19, 8),
                ("c^2 p3", -1, 2),
                ("p1 p3", -2, 1),
                ("p4", 3, 2),
            ],
        ),
    ];
    let got = spinc_wu_classes(16).map_err(|e| e.to_string())?;
    ensure(got.len() == 9, || format!("{} rows", got.len()))?;
    for (i, want) in expected.iter().enumerate() {
        let n = i + 1;
        ensure(&got[n] == want, || {
            format!("mu_{} = {} but expected {}", 2 * n, got[n], want)
        })?;
    }
    Ok(())
}

fn criterion_denominators() -> Outcome {
    let (a, b) = spinc_coefficient_series(128);
    for n in 1..=128usize {
        let v = nu2_int(a.coeff(n).denom()).map_err(|e| e.to_string())?;
        let bound = n as u64 - u64::from(digit_sum_2(n as u64));
        ensure(v <= bound, || {
            format!("n = {n}: valuation {v} exceeds {bound}")
        })?;
        ensure(n > 8 || v == bound, || {
            format!("n = {n}: valuation {v} below {bound}")
        })?;
        let bn = b.coeff(n);
        ensure(bn.is_integer() && bn.numer().is_even(), || {
            format!("b_{n} = {bn} is not even")
        })?;
    }
    Ok(())
}

fn criterion_oracles() -> Outcome {
    let (a, b) = spinc_coefficient_series(128);
    let rec = sqrt_by_recursion(&b).map_err(|e| e.to_string())?;
    ensure(rec == a, || "square root and recursion disagree".into())?;
    let closed = spinc_wu_classes(16).map_err(|e| e.to_string())?;
    let definitional = spinc_wu_classes_definitional(16).map_err(|e| e.to_string())?;
    ensure(closed == definitional, || {
        "closed-form and definitional classes disagree".into()
    })?;
    let h = wu_tangential_series(128);
    let big_g = spin_tangential_series(128);
    let lhs = big_g.mul(&big_g).map_err(|e| e.to_string())?;
    let rhs = h.mul(&h.substitute_neg()).map_err(|e| e.to_string())?;
    ensure(lhs == rhs, || "G^2 differs from h(x) h(-x)".into())
}

fn group(spec: &str) -> Result<FiniteGroup, String> {
    named_group(&parse_group_spec(spec).map_err(|e| e.to_string())?).map_err(|e| e.to_string())
}

fn criterion_group_homology() -> Outcome {
    for spec in [
        "cyclic:2",
        "cyclic:4",
        "cyclic:8",
        "quaternion:8",
        "quaternion:16",
    ] {
        let h2 = homology(&group(spec)?, 2).map_err(|e| e.to_string())?;
        ensure(h2.is_trivial(), || format!("H_2({spec}) = {h2}"))?;
    }
    let klein = homology(&group("product:cyclic:2,cyclic:2")?, 2).map_err(|e| e.to_string())?;
    ensure(klein == AbelianInvariants::torsion(vec![2]), || {
        format!("H_2(Z/2 x Z/2) = {klein}")
    })?;

    let budget = Budget::default();
    let order_le_8 = [
        "cyclic:1",
        "cyclic:2",
        "cyclic:3",
        "cyclic:4",
        "product:cyclic:2,cyclic:2",
        "cyclic:5",
        "cyclic:6",
        "symmetric:3",
        "cyclic:7",
        "cyclic:8",
        "product:cyclic:2,cyclic:4",
        "product:cyclic:2,cyclic:2,cyclic:2",
        "dihedral:4",
        "quaternion:8",
    ];
    for spec in order_le_8 {
        let g = group(spec)?;
        let h3 = cohomology_by_cochains(&g, 3, &budget).map_err(|e| e.to_string())?;
        let h2 = homology(&g, 2).map_err(|e| e.to_string())?;
        ensure(h3 == h2, || format!("{spec}: H^3 = {h3}, H_2 = {h2}"))?;
    }

    for m in 1..=16u64 {
        let g = group(&format!("cyclic:{m}"))?;
        for n in 1..=3 {
            let got = homology(&g, n).map_err(|e| e.to_string())?;
            let want = if n % 2 == 1 && m > 1 {
                AbelianInvariants::torsion(vec![m])
            } else {
                AbelianInvariants::trivial()
            };
            ensure(got == want, || {
                format!("H_{n}(Z/{m}) = {got}, expected {want}")
            })?;
        }
    }
    Ok(())
}

fn criterion_verdicts() -> Outcome {
    let r = ManifoldRecord::from_json(
        r#"{"dim":8,"almost_flat":true,"char_numbers":{"c^4":384,"c^2 p1":0,"p1^2":0,"p2":0}}"#,
    )
    .map_err(|e| e.to_string())?;
    let index = spinc_index(&r).map_err(|e| e.to_string())?;
    ensure(
        index.integral && index.value == Rational::from_integer(1.into()),
        || format!("index {}", index.value),
    )?;
    ensure(
        check_almost_flat_consistency(&r).conclusion == Conclusion::Consistent,
        || "consistency".into(),
    )?;
    let mut values: Vec<Rational> = integral_wu_numbers(&r)
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|(_, v)| v)
        .collect();
    values.sort();
    let mut expected: Vec<Rational> = [96, -240, -192, 192, 384]
        .iter()
        .map(|&v| rat(v, 1))
        .collect();
    expected.sort();
    ensure(values == expected, || format!("wu numbers {values:?}"))?;
    let parity = wu_parity_check(&r).map_err(|e| e.to_string())?;
    ensure(parity.checks.len() == 5 && parity.all_passed(), || {
        parity.to_string()
    })?;
    let verdict = bounding_verdict(&r);
    ensure(
        verdict.conclusion == Conclusion::BoundsOrientablyNotSpincWithStructure,
        || verdict.to_string(),
    )?;
    ensure(
        verdict.conclusion.to_string() == "bounds orientably, not spin^c with this structure",
        || verdict.conclusion.to_string(),
    )?;

    for dim in (1..=41).step_by(2) {
        let odd =
            ManifoldRecord::from_json(&format!("{{\"dim\":{dim}}}")).map_err(|e| e.to_string())?;
        let v = bounding_verdict(&odd);
        ensure(v.conclusion == Conclusion::BoundsSpinc, || {
            format!("dim {dim}: {v}")
        })?;
    }

    // deterministic pseudo-random multiples of 2^m m! for dim 2m <= 32
    let mut state: u64 = 0x9E37_79B9_7F4A_7C15;
    for _ in 0..200 {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        let m = (state % 16 + 1) as u32;
        let k = (state >> 8) as i64 % 2001 - 1000;
        let value = wucalc::arith::two_pow_factorial(m) * BigInt::from(k);
        let rec = ManifoldRecord::almost_flat_with_top_c(2 * m, value.clone())
            .map_err(|e| e.to_string())?;
        let report = wu_parity_check(&rec).map_err(|e| e.to_string())?;
        ensure(report.all_passed(), || {
            format!("dim {} with <c^{m}> = {value}: {report}", 2 * m)
        })?;
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 6] = [
        (
            "1 series golden values",
            criterion_series_goldens,
            Duration::from_secs(1),
        ),
        (
            "2 spin^c Wu class table",
            criterion_table,
            Duration::from_secs(10),
        ),
        (
            "3 denominator bound",
            criterion_denominators,
            Duration::from_secs(5),
        ),
        (
            "4 oracle equivalences",
            criterion_oracles,
            Duration::from_secs(60),
        ),
        (
            "5 group homology",
            criterion_group_homology,
            Duration::from_secs(60),
        ),
        (
            "6 verdict suite",
            criterion_verdicts,
            Duration::from_secs(30),
        ),
    ];
    let mut failures = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(elapsed <= limit, || {
                format!(
                    "took {:.2}s, limit {}s",
                    elapsed.as_secs_f64(),
                    limit.as_secs()
                )
            })
        });
        match outcome {
            Ok(()) => println!(
                "PASS  {name} ({:.2}s, limit {}s)",
                elapsed.as_secs_f64(),
                limit.as_secs()
            ),
            Err(why) => {
                failures += 1;
                println!(
                    "FAIL  {name} ({:.2}s, limit {}s): {why}",
                    elapsed.as_secs_f64(),
                    limit.as_secs()
                );
            }
        }
    }
    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
