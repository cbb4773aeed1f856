use std::collections::BTreeMap;

use num_bigint::BigInt;
use proptest::prelude::*;
use serde_json::Value;
use wucalc::arith::{two_pow_factorial, Rational};
use wucalc::bordism::{
    bounding_verdict, check_almost_flat_consistency, integral_wu_numbers, wu_parity_check,
    Conclusion, ManifoldRecord,
};
use wucalc::char_class::{partitions, Monomial};

/// Every monomial `c^a p_I` of degree `2m`.
fn monomials(m: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for a in 0..=m {
        let rest = m - a;
        if rest % 2 == 1 {
            continue;
        }
        if rest == 0 {
            out.push(Monomial::c_pow(a));
            continue;
        }
        for part in partitions(rest / 2) {
            let mut exps = vec![0u32; part.parts()[0] as usize];
            for &j in part.parts() {
                exps[j as usize - 1] += 1;
            }
            out.push(Monomial::new(a, exps));
        }
    }
    out
}

fn full_record(m: u32, values: &[i64]) -> ManifoldRecord {
    let monos = monomials(m);
    ManifoldRecord::new(
        2 * m,
        monos
            .into_iter()
            .zip(values.iter().cycle())
            .map(|(mo, &v)| (mo, BigInt::from(v))),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn wu_numbers_scale_linearly(m in 1u32..=5, values in prop::collection::vec(-50i64..50, 1..8), t in -7i64..7) {
        let r = full_record(m, &values);
        let t_big = BigInt::from(t);
        let base = integral_wu_numbers(&r).unwrap();
        let scaled = integral_wu_numbers(&r.scaled(&t_big)).unwrap();
        prop_assert_eq!(base.len(), scaled.len());
        for ((p1, v1), (p2, v2)) in base.iter().zip(&scaled) {
            prop_assert_eq!(p1, p2);
            prop_assert_eq!(v1 * Rational::from_integer(t_big.clone()), v2.clone());
        }
    }

    #[test]
    fn admissible_top_numbers_pass_parity(m in 1u32..=16, k in -1000i64..1000) {
        let value = two_pow_factorial(m) * BigInt::from(k);
        let r = ManifoldRecord::almost_flat_with_top_c(2 * m, value).unwrap();
        prop_assert_eq!(check_almost_flat_consistency(&r).conclusion, Conclusion::Consistent);
        let report = wu_parity_check(&r).unwrap();
        prop_assert!(report.all_passed(), "{}", report);
        let expected = if k == 0 { Conclusion::BoundsSpinc } else { Conclusion::BoundsOrientablyNotSpincWithStructure };
        prop_assert_eq!(bounding_verdict(&r).conclusion, expected);
    }

    #[test]
    fn odd_dimensions_bound_as_spinc(half in 0u32..20) {
        let r = ManifoldRecord::from_json(&format!("{{\"dim\": {}}}", 2 * half + 1)).unwrap();
        prop_assert_eq!(bounding_verdict(&r).conclusion, Conclusion::BoundsSpinc);
        prop_assert!(integral_wu_numbers(&r).unwrap().is_empty());
    }

    #[test]
    fn verdict_ignores_key_order(m in 1u32..=4, values in prop::collection::vec(-3i64..3, 1..6), rot in 0usize..8) {
        let monos = monomials(m);
        let entries: Vec<(String, i64)> =
            monos.iter().zip(values.iter().cycle()).map(|(mo, &v)| (mo.to_string(), v)).collect();
        let render = |order: &[(String, i64)]| {
            let body: Vec<String> = order.iter().map(|(k, v)| format!("{k:?}: {v}")).collect();
            format!("{{\"char_numbers\": {{{}}}, \"dim\": {}}}", body.join(", "), 2 * m)
        };
        let mut rotated = entries.clone();
        let len = rotated.len();
        rotated.rotate_left(rot % len);
        rotated.reverse();
        let a = ManifoldRecord::from_json(&render(&entries)).unwrap();
        let b = ManifoldRecord::from_json(&render(&rotated)).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(bounding_verdict(&a), bounding_verdict(&b));
    }
}

#[test]
fn reordered_factors_in_keys_are_the_same_monomial() {
    let a = ManifoldRecord::from_json(
        r#"{"dim":8,"char_numbers":{"c^2 p1":3,"c^4":384,"p1^2":0,"p2":0}}"#,
    )
    .unwrap();
    let b = ManifoldRecord::from_json(
        r#"{"dim":8,"char_numbers":{"p1 c^2":3,"c^4":384,"p1 p1":0,"p2":0}}"#,
    )
    .unwrap();
    assert_eq!(a, b);
}

#[test]
fn record_json_round_trip() {
    let text = r#"{"dim":8,"almost_flat":true,"char_numbers":{"c^4":384,"c^2 p1":0,"p1^2":0,"p2":0},"sw_numbers":{"w2^4":0},"label":"example"}"#;
    let r = ManifoldRecord::from_json(text).unwrap();
    let v: Value = r.to_value();
    let keys: Vec<&String> = v["char_numbers"].as_object().unwrap().keys().collect();
    assert_eq!(keys.len(), 4);
    assert_eq!(ManifoldRecord::from_value(&v).unwrap(), r);
    let map: BTreeMap<String, i64> = serde_json::from_value(v["char_numbers"].clone()).unwrap();
    assert_eq!(map["c^4"], 384);
}

#[test]
fn dimension_eight_example() {
    let r = ManifoldRecord::from_json(
        r#"{"dim":8,"almost_flat":true,"char_numbers":{"c^4":384,"c^2 p1":0,"p1^2":0,"p2":0}}"#,
    )
    .unwrap();
    let values: Vec<String> = integral_wu_numbers(&r)
        .unwrap()
        .iter()
        .map(|(_, v)| v.to_string())
        .collect();
    assert_eq!(values, ["-240", "-192", "96", "192", "384"]);
}
