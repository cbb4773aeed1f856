//! Decision procedures on characteristic-number records of closed spin^c
//! manifolds: almost-flat consistency, the index divisibility, integral Wu
//! numbers with their 2-adic parities, and bounding verdicts.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::arith::{format_rational, nu2, two_pow_factorial, Rational};
use crate::char_class::{cached_spinc_table, partitions, GradedPoly, Monomial, Partition};
use crate::error::{Error, Result};

/// Characteristic numbers `⟨c^a p_I, [M]⟩` of a closed `dim`-manifold with a
/// spin^c class `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifoldRecord {
    pub dim: u32,
    /// When set, absent `p`-involving numbers read as zero.
    pub almost_flat: bool,
    pub char_numbers: BTreeMap<Monomial, BigInt>,
    pub sw_numbers: Option<BTreeMap<String, u8>>,
    pub label: String,
}

fn field_err(field: &str, msg: impl fmt::Display) -> Error {
    Error::Parse(format!("{field}: {msg}"))
}

fn parse_integer(v: &Value, field: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(i.into())
            } else if let Some(u) = n.as_u64() {
                Ok(u.into())
            } else {
                Err(field_err(field, format!("{n} is not an integer")))
            }
        }
        Value::String(s) => s
            .trim()
            .parse::<BigInt>()
            .map_err(|_| field_err(field, format!("{s:?} is not an integer"))),
        other => Err(field_err(
            field,
            format!("expected an integer, found {other}"),
        )),
    }
}

impl ManifoldRecord {
    pub fn new(
        dim: u32,
        char_numbers: impl IntoIterator<Item = (Monomial, BigInt)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (m, v) in char_numbers {
            if m.degree() != dim {
                return Err(Error::DegreeMismatch {
                    monomial: m.to_string(),
                    expected: dim,
                    found: m.degree(),
                });
            }
            if map.insert(m.clone(), v).is_some() {
                return Err(Error::InvalidArgument(format!("monomial {m} given twice")));
            }
        }
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        Ok(ManifoldRecord {
            dim,
            almost_flat: false,
            char_numbers: map,
            sw_numbers: None,
            label: String::new(),
        })
    }

    /// Record with only `⟨c^{dim/2}⟩` given and all `p`-numbers zero by the
    /// almost-flat default.
    pub fn almost_flat_with_top_c(dim: u32, value: BigInt) -> Result<Self> {
        let entries = if dim.is_multiple_of(2) {
            vec![(Monomial::c_pow(dim / 2), value)]
        } else {
            vec![]
        };
        let mut r = ManifoldRecord::new(dim, entries)?;
        r.almost_flat = true;
        Ok(r)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
        Self::from_value(&v)
    }

    pub fn from_value(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| field_err("record", "expected a JSON object"))?;
        for key in obj.keys() {
            if !["dim", "almost_flat", "char_numbers", "sw_numbers", "label"]
                .contains(&key.as_str())
            {
                return Err(field_err(key, "unknown field"));
            }
        }
        let dim =
            obj.get("dim")
                .ok_or_else(|| field_err("dim", "missing"))?
                .as_u64()
                .filter(|&d| d > 0 && d <= u32::MAX as u64)
                .ok_or_else(|| field_err("dim", "expected a positive integer"))? as u32;
        let almost_flat = match obj.get("almost_flat") {
            None => false,
            Some(Value::Bool(b)) => *b,
            Some(other) => {
                return Err(field_err(
                    "almost_flat",
                    format!("expected a boolean, found {other}"),
                ))
            }
        };
        let label = match obj.get("label") {
            None => String::new(),
            Some(Value::String(s)) => s.clone(),
            Some(other) => {
                return Err(field_err(
                    "label",
                    format!("expected a string, found {other}"),
                ))
            }
        };
        let raw = match obj.get("char_numbers") {
            None => serde_json::Map::new(),
            Some(Value::Object(m)) => m.clone(),
            Some(other) => {
                return Err(field_err(
                    "char_numbers",
                    format!("expected an object, found {other}"),
                ))
            }
        };
        let mut char_numbers = BTreeMap::new();
        for (key, value) in &raw {
            let field = format!("char_numbers.{key:?}");
            let m = Monomial::parse(key).map_err(|e| field_err(&field, e))?;
            if m.degree() != dim {
                return Err(field_err(
                    &field,
                    format!("degree {} differs from dim {dim}", m.degree()),
                ));
            }
            let n = parse_integer(value, &field)?;
            if char_numbers.insert(m.clone(), n).is_some() {
                return Err(field_err(&field, format!("duplicates monomial {m}")));
            }
        }
        let sw_numbers = match obj.get("sw_numbers") {
            None | Some(Value::Null) => None,
            Some(Value::Object(m)) => {
                let mut out = BTreeMap::new();
                for (key, value) in m {
                    let field = format!("sw_numbers.{key:?}");
                    let bit = match value.as_u64() {
                        Some(b @ (0 | 1)) => b as u8,
                        _ => {
                            return Err(field_err(
                                &field,
                                format!("expected 0 or 1, found {value}"),
                            ))
                        }
                    };
                    out.insert(key.clone(), bit);
                }
                Some(out)
            }
            Some(other) => {
                return Err(field_err(
                    "sw_numbers",
                    format!("expected an object, found {other}"),
                ))
            }
        };
        Ok(ManifoldRecord {
            dim,
            almost_flat,
            char_numbers,
            sw_numbers,
            label,
        })
    }

    pub fn to_value(&self) -> Value {
        let mut obj = serde_json::Map::new();
        obj.insert("dim".into(), self.dim.into());
        obj.insert("almost_flat".into(), self.almost_flat.into());
        let nums: serde_json::Map<String, Value> = self
            .char_numbers
            .iter()
            .map(|(m, v)| (m.to_string(), integer_value(v)))
            .collect();
        obj.insert("char_numbers".into(), Value::Object(nums));
        if let Some(sw) = &self.sw_numbers {
            let bits = sw
                .iter()
                .map(|(k, &b)| (k.clone(), Value::from(b)))
                .collect();
            obj.insert("sw_numbers".into(), Value::Object(bits));
        }
        if !self.label.is_empty() {
            obj.insert("label".into(), self.label.clone().into());
        }
        Value::Object(obj)
    }

    /// `⟨m, [M]⟩`, reading absent `p`-involving numbers as zero for almost-flat records.
    pub fn char_number(&self, m: &Monomial) -> Result<BigInt> {
        if let Some(v) = self.char_numbers.get(m) {
            return Ok(v.clone());
        }
        if self.almost_flat && m.involves_p() {
            return Ok(BigInt::zero());
        }
        Err(Error::MissingMonomial(m.to_string()))
    }

    /// True when every `p`-involving number is zero (given or defaulted).
    pub fn p_numbers_vanish(&self) -> bool {
        self.char_numbers
            .iter()
            .all(|(m, v)| !m.involves_p() || v.is_zero())
    }

    /// Half the dimension for even-dimensional records.
    pub fn half_dim(&self) -> Option<u32> {
        self.dim.is_multiple_of(2).then_some(self.dim / 2)
    }

    /// A copy with every characteristic number multiplied by `t`.
    pub fn scaled(&self, t: &BigInt) -> ManifoldRecord {
        let mut r = self.clone();
        r.char_numbers.values_mut().for_each(|v| *v *= t);
        r
    }
}

fn integer_value(v: &BigInt) -> Value {
    match i64::try_from(v) {
        Ok(i) => Value::from(i),
        Err(_) => Value::String(v.to_string()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub witness: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, witness: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            witness: witness.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    Consistent,
    Inconsistent,
    ParityHolds,
    ParityFails,
    HypothesesNotMet,
    /// Bounds an orientable manifold and, with the given structure, a spin^c manifold.
    BoundsSpinc,
    /// Bounds an orientable manifold; `⟨c^n⟩ ≠ 0` obstructs a spin^c
    /// null-bordism for this particular spin^c structure.
    BoundsOrientablyNotSpincWithStructure,
    SwNumbersVanish,
    SwNumbersVanishImplied,
    SwContradiction,
    SwNonzero,
    SwUndetermined,
}

impl Conclusion {
    pub fn describe(self) -> &'static str {
        match self {
            Conclusion::Consistent => "consistent with the almost-flat hypotheses",
            Conclusion::Inconsistent => "inconsistent with the almost-flat hypotheses",
            Conclusion::ParityHolds => "every integral Wu number is divisible by 2^m",
            Conclusion::ParityFails => "some integral Wu number is not divisible by 2^m",
            Conclusion::HypothesesNotMet => "hypotheses not met; no verdict",
            Conclusion::BoundsSpinc => "bounds orientably and bounds as spin^c",
            Conclusion::BoundsOrientablyNotSpincWithStructure => {
                "bounds orientably, not spin^c with this structure"
            }
            Conclusion::SwNumbersVanish => "Stiefel-Whitney numbers vanish",
            Conclusion::SwNumbersVanishImplied => "Stiefel-Whitney numbers vanish (implied)",
            Conclusion::SwContradiction => {
                "supplied Stiefel-Whitney numbers contradict the Wu parities"
            }
            Conclusion::SwNonzero => "some supplied Stiefel-Whitney number is nonzero",
            Conclusion::SwUndetermined => "Stiefel-Whitney numbers undetermined",
        }
    }

    /// Conclusions that report a failed hypothesis or inconsistent input.
    pub fn is_failure(self) -> bool {
        matches!(
            self,
            Conclusion::Inconsistent
                | Conclusion::ParityFails
                | Conclusion::HypothesesNotMet
                | Conclusion::SwContradiction
        )
    }
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.describe())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub checks: Vec<Check>,
    pub conclusion: Conclusion,
    pub notes: Vec<String>,
}

impl VerdictReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerdictReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "[{}] {}: {}",
                if c.passed { "pass" } else { "FAIL" },
                c.name,
                c.witness
            )?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        write!(f, "conclusion: {}", self.conclusion)
    }
}

fn nu2_text(v: &Rational) -> String {
    match nu2(v) {
        Ok(k) => k.to_string(),
        Err(_) => "inf".into(),
    }
}

/// Vanishing of `p`-numbers and, in even dimension `2n`, `2^n n! | ⟨c^n⟩`.
pub fn check_almost_flat_consistency(r: &ManifoldRecord) -> VerdictReport {
    let mut checks = Vec::new();
    let offending: Vec<String> = r
        .char_numbers
        .iter()
        .filter(|(m, v)| m.involves_p() && !v.is_zero())
        .map(|(m, v)| format!("<{m}> = {v}"))
        .collect();
    checks.push(Check::new(
        "pontryagin numbers vanish",
        offending.is_empty(),
        if offending.is_empty() {
            "all zero".to_string()
        } else {
            offending.join(", ")
        },
    ));
    if let Some(n) = r.half_dim() {
        let top = Monomial::c_pow(n);
        let d = two_pow_factorial(n);
        let name = format!("2^{n} {n}! divides <{top}>");
        match r.char_number(&top) {
            Ok(v) => {
                let passed = v.is_multiple_of(&d);
                checks.push(Check::new(
                    name,
                    passed,
                    format!("<{top}> = {v}, 2^{n} {n}! = {d}"),
                ));
            }
            Err(_) => checks.push(Check::new(name, false, format!("<{top}> missing"))),
        }
    }
    let conclusion = if checks.iter().all(|c| c.passed) {
        Conclusion::Consistent
    } else {
        Conclusion::Inconsistent
    };
    let mut notes = Vec::new();
    if r.dim % 2 == 1 {
        notes.push("odd dimension: no monomial in c and p_i has this degree".into());
    }
    VerdictReport {
        checks,
        conclusion,
        notes,
    }
}

/// Index of the spin^c Dirac operator, `⟨c^n⟩ / (2^n n!)`, valid when all
/// `p`-numbers vanish.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpincIndex {
    pub value: Rational,
    pub integral: bool,
}

pub fn spinc_index(r: &ManifoldRecord) -> Result<SpincIndex> {
    let n = r
        .half_dim()
        .ok_or_else(|| Error::Precondition(format!("dimension {} is odd", r.dim)))?;
    if !r.p_numbers_vanish() {
        return Err(Error::Precondition(
            "some Pontryagin number is nonzero".into(),
        ));
    }
    let top = r.char_number(&Monomial::c_pow(n))?;
    let value = Rational::new(top, two_pow_factorial(n));
    let integral = value.is_integer();
    Ok(SpincIndex { value, integral })
}

/// `⟨μ_{2I}, [M]⟩` for every partition `I` of `m = dim/2`, in the order of
/// [`partitions`]. Odd dimensions give an empty list.
pub fn integral_wu_numbers(r: &ManifoldRecord) -> Result<Vec<(Partition, Rational)>> {
    let Some(m) = r.half_dim() else {
        return Ok(Vec::new());
    };
    let table = cached_spinc_table(r.dim)?;
    // With all p-numbers zero only the pure c^m coefficient survives, and the
    // p-free part of a product is the product of the p-free parts.
    let factors: Vec<GradedPoly> = if all_p_numbers_zero(r) {
        table.iter().map(GradedPoly::without_p).collect()
    } else {
        table.to_vec()
    };
    partitions(m)
        .into_iter()
        .map(|part| {
            let poly = part
                .parts()
                .iter()
                .fold(GradedPoly::one(), |acc, &j| acc.mul(&factors[j as usize]));
            let value = poly.evaluate(|mono| r.char_number(mono).map(Rational::from_integer))?;
            Ok((part, value))
        })
        .collect()
}

/// True when every `p`-involving number of degree `dim` is known to be zero.
fn all_p_numbers_zero(r: &ManifoldRecord) -> bool {
    if !r.p_numbers_vanish() {
        return false;
    }
    if r.almost_flat {
        return true;
    }
    let Some(m) = r.half_dim() else { return true };
    monomials_of_degree(m)
        .iter()
        .filter(|mono| mono.involves_p())
        .all(|mono| r.char_numbers.contains_key(mono))
}

/// All monomials `c^a p_I` of degree `2m`.
fn monomials_of_degree(m: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::c_pow(m)];
    for a in (0..m).rev() {
        let rest = m - a;
        if rest % 2 == 1 {
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

/// Each integral Wu number must be an integer divisible by `2^m`, `m = dim/2`.
pub fn wu_parity_check(r: &ManifoldRecord) -> Result<VerdictReport> {
    let values = integral_wu_numbers(r)?;
    let mut notes = Vec::new();
    let checks: Vec<Check> = match r.half_dim() {
        None => {
            notes.push("odd dimension: there are no integral Wu numbers".into());
            Vec::new()
        }
        Some(m) => {
            let modulus = BigInt::one() << m;
            values
                .iter()
                .map(|(part, v)| {
                    let passed = v.is_integer() && v.numer().is_multiple_of(&modulus);
                    let mut witness = format!("{} (nu2 = {})", format_rational(v), nu2_text(v));
                    if !v.is_integer() {
                        witness.push_str(", not an integer");
                    }
                    Check::new(format!("2^{m} divides wu{part}"), passed, witness)
                })
                .collect()
        }
    };
    let conclusion = if checks.iter().all(|c| c.passed) {
        Conclusion::ParityHolds
    } else {
        Conclusion::ParityFails
    };
    Ok(VerdictReport {
        checks,
        conclusion,
        notes,
    })
}

/// Bounding verdict for a record satisfying the almost-flat hypotheses.
pub fn bounding_verdict(r: &ManifoldRecord) -> VerdictReport {
    let consistency = check_almost_flat_consistency(r);
    let mut checks = consistency.checks;
    let mut notes = consistency.notes;

    let nonzero_sw: Vec<&String> = r
        .sw_numbers
        .iter()
        .flatten()
        .filter(|(_, &b)| b != 0)
        .map(|(k, _)| k)
        .collect();
    if r.sw_numbers.is_some() {
        let witness = if nonzero_sw.is_empty() {
            "all zero".to_string()
        } else {
            nonzero_sw
                .iter()
                .map(|k| format!("{k} = 1"))
                .collect::<Vec<_>>()
                .join(", ")
        };
        checks.push(Check::new(
            "supplied Stiefel-Whitney numbers vanish",
            nonzero_sw.is_empty(),
            witness,
        ));
    }

    let Some(n) = r.half_dim() else {
        notes.push("odd dimension: <c^{floor(n/2)}> vanishes for degree reasons".into());
        let conclusion = if checks.iter().all(|c| c.passed) {
            Conclusion::BoundsSpinc
        } else {
            Conclusion::HypothesesNotMet
        };
        return VerdictReport {
            checks,
            conclusion,
            notes,
        };
    };

    match wu_parity_check(r) {
        Ok(parity) => {
            let failed: Vec<String> = parity
                .checks
                .iter()
                .filter(|c| !c.passed)
                .map(|c| c.name.clone())
                .collect();
            checks.push(Check::new(
                format!("integral Wu numbers divisible by 2^{n}"),
                failed.is_empty(),
                if failed.is_empty() {
                    "all partitions".to_string()
                } else {
                    failed.join(", ")
                },
            ));
        }
        Err(e) => checks.push(Check::new(
            format!("integral Wu numbers divisible by 2^{n}"),
            false,
            e.to_string(),
        )),
    }

    if !checks.iter().all(|c| c.passed) {
        return VerdictReport {
            checks,
            conclusion: Conclusion::HypothesesNotMet,
            notes,
        };
    }

    let top = Monomial::c_pow(n);
    let value = r.char_number(&top).unwrap_or_default();
    let index = Rational::new(value.clone(), two_pow_factorial(n));
    let witness = format!("<{top}> = {value}, index {}", format_rational(&index));
    let zero = value.is_zero();
    checks.push(Check::new(format!("<{top}> vanishes"), zero, witness));
    let conclusion = if zero {
        Conclusion::BoundsSpinc
    } else {
        notes.push(format!(
            "<{top}> = {value} is a spin^c bordism invariant; other spin^c structures are not examined"
        ));
        Conclusion::BoundsOrientablyNotSpincWithStructure
    };
    notes.push("all Stiefel-Whitney and Pontryagin numbers vanish, so M bounds orientably".into());
    VerdictReport {
        checks,
        conclusion,
        notes,
    }
}

/// Compares supplied Stiefel-Whitney numbers with what the Wu parities imply.
pub fn sw_vanishing_report(r: &ManifoldRecord) -> VerdictReport {
    let parity = wu_parity_check(r);
    let parity_holds = matches!(&parity, Ok(p) if p.conclusion == Conclusion::ParityHolds);
    let mut checks = Vec::new();
    let mut notes = Vec::new();
    match &parity {
        Ok(p) => checks.push(Check::new(
            "wu parity",
            parity_holds,
            p.conclusion.describe(),
        )),
        Err(e) => {
            checks.push(Check::new("wu parity", false, e.to_string()));
            notes.push("integral Wu numbers unavailable".into());
        }
    }
    let conclusion = match &r.sw_numbers {
        Some(sw) => {
            let nonzero: Vec<&String> =
                sw.iter().filter(|(_, &b)| b != 0).map(|(k, _)| k).collect();
            let witness = if nonzero.is_empty() {
                format!("{} supplied, all zero", sw.len())
            } else {
                nonzero
                    .iter()
                    .map(|k| format!("{k} = 1"))
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            checks.push(Check::new(
                "supplied Stiefel-Whitney numbers vanish",
                nonzero.is_empty(),
                witness,
            ));
            match (nonzero.is_empty(), parity_holds) {
                (true, _) => Conclusion::SwNumbersVanish,
                (false, true) => {
                    notes.push(
                        "divisible integral Wu numbers force all Stiefel-Whitney numbers to vanish"
                            .into(),
                    );
                    Conclusion::SwContradiction
                }
                (false, false) => Conclusion::SwNonzero,
            }
        }
        None if parity_holds => Conclusion::SwNumbersVanishImplied,
        None => Conclusion::SwUndetermined,
    };
    VerdictReport {
        checks,
        conclusion,
        notes,
    }
}
