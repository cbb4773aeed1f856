use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

/// `c^c · p1^p[0] · p2^p[1] · ...` with `deg c = 2`, `deg pi = 4i`.
///
/// Canonical order puts higher powers of `c` first, then larger
/// Pontryagin exponent vectors (lexicographically) first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    c: u32,
    p: Vec<u32>,
}

impl Monomial {
    pub fn new(c: u32, mut p: Vec<u32>) -> Self {
        while p.last() == Some(&0) {
            p.pop();
        }
        Monomial { c, p }
    }

    pub fn one() -> Self {
        Monomial {
            c: 0,
            p: Vec::new(),
        }
    }

    pub fn c_pow(a: u32) -> Self {
        Monomial {
            c: a,
            p: Vec::new(),
        }
    }

    /// `p_i` (1-based).
    pub fn p(i: usize) -> Self {
        let mut p = vec![0; i];
        p[i - 1] = 1;
        Monomial { c: 0, p }
    }

    pub fn c_exp(&self) -> u32 {
        self.c
    }

    /// Exponent of `p_i` (1-based).
    pub fn p_exp(&self, i: usize) -> u32 {
        self.p.get(i - 1).copied().unwrap_or(0)
    }

    pub fn p_exps(&self) -> &[u32] {
        &self.p
    }

    pub fn degree(&self) -> u32 {
        2 * self.c
            + self
                .p
                .iter()
                .enumerate()
                .map(|(i, e)| 4 * (i as u32 + 1) * e)
                .sum::<u32>()
    }

    pub fn involves_p(&self) -> bool {
        !self.p.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let len = self.p.len().max(other.p.len());
        let p = (0..len)
            .map(|i| self.p.get(i).unwrap_or(&0) + other.p.get(i).unwrap_or(&0))
            .collect();
        Monomial {
            c: self.c + other.c,
            p,
        }
    }

    /// Parses `c^a` and `p<i>^e` factors separated by spaces (`^1` optional),
    /// or `1` for the empty monomial. Repeated factors multiply.
    pub fn parse(s: &str) -> Result<Monomial> {
        let s = s.trim();
        if s == "1" {
            return Ok(Monomial::one());
        }
        if s.is_empty() {
            return Err(Error::Parse("empty monomial".into()));
        }
        let mut m = Monomial::one();
        for factor in s.split_whitespace() {
            let bad = || Error::Parse(format!("bad factor {factor:?} in monomial {s:?}"));
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => (b, e.parse::<u32>().map_err(|_| bad())?),
                None => (factor, 1),
            };
            let single = if base == "c" {
                Monomial::c_pow(1)
            } else if let Some(i) = base.strip_prefix('p') {
                let i: usize = i.parse().map_err(|_| bad())?;
                if i == 0 {
                    return Err(bad());
                }
                Monomial::p(i)
            } else {
                return Err(bad());
            };
            for _ in 0..exp {
                m = m.mul(&single);
            }
        }
        Ok(Monomial::new(m.c, m.p))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.c.cmp(&self.c).then_with(|| other.p.cmp(&self.p))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::new();
        match self.c {
            0 => {}
            1 => factors.push("c".to_string()),
            a => factors.push(format!("c^{a}")),
        }
        for (i, &e) in self.p.iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(format!("p{}", i + 1)),
                e => factors.push(format!("p{}^{e}", i + 1)),
            }
        }
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join(" "))
        }
    }
}

/// Homogeneous polynomial in `c` and the Pontryagin classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPoly {
    degree: u32,
    terms: BTreeMap<Monomial, Rational>,
}

impl GradedPoly {
    pub fn zero(degree: u32) -> Self {
        GradedPoly {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(Monomial::one(), Rational::one())
    }

    pub fn monomial(m: Monomial, coeff: Rational) -> Self {
        let mut p = Self::zero(m.degree());
        if !coeff.is_zero() {
            p.terms.insert(m, coeff);
        }
        p
    }

    pub fn from_terms(
        degree: u32,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Result<Self> {
        let mut p = Self::zero(degree);
        for (m, c) in terms {
            p.add_term(m, c)?;
        }
        Ok(p)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical monomial order; no zero coefficients.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    fn check_degree(&self, m: &Monomial) -> Result<()> {
        if m.degree() == self.degree {
            Ok(())
        } else {
            Err(Error::DegreeMismatch {
                monomial: m.to_string(),
                expected: self.degree,
                found: m.degree(),
            })
        }
    }

    pub fn add_term(&mut self, m: Monomial, coeff: Rational) -> Result<()> {
        self.check_degree(&m)?;
        if coeff.is_zero() {
            return Ok(());
        }
        let slot = self.terms.entry(m).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
        Ok(())
    }

    pub fn coefficient_of(&self, m: &Monomial) -> Result<Rational> {
        self.check_degree(m)?;
        Ok(self.terms.get(m).cloned().unwrap_or_else(Rational::zero))
    }

    pub fn add(&self, other: &GradedPoly) -> Result<GradedPoly> {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &GradedPoly) -> GradedPoly {
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                *terms.entry(m1.mul(m2)).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        terms.retain(|_, v| !v.is_zero());
        GradedPoly {
            degree: self.degree + other.degree,
            terms,
        }
    }

    pub fn scale(&self, k: &Rational) -> GradedPoly {
        if k.is_zero() {
            return Self::zero(self.degree);
        }
        GradedPoly {
            degree: self.degree,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    /// Sets `c = 0`.
    pub fn without_c(&self) -> GradedPoly {
        GradedPoly {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.c == 0)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Sets every `p_i = 0`.
    pub fn without_p(&self) -> GradedPoly {
        GradedPoly {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| !m.involves_p())
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Linear evaluation `Σ coeff · value(monomial)`.
    pub fn evaluate<F>(&self, mut value: F) -> Result<Rational>
    where
        F: FnMut(&Monomial) -> Result<Rational>,
    {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            acc += c * value(m)?;
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PolyJson::from(self)).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<GradedPoly> {
        let raw: PolyJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let terms = raw
            .terms
            .iter()
            .map(|t| Ok((Monomial::parse(&t.monomial)?, parse_rational(&t.coeff)?)))
            .collect::<Result<Vec<_>>>()?;
        GradedPoly::from_terms(raw.degree, terms)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    monomial: String,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    degree: u32,
    terms: Vec<TermJson>,
}

impl From<&GradedPoly> for PolyJson {
    fn from(p: &GradedPoly) -> Self {
        PolyJson {
            degree: p.degree,
            terms: p
                .terms
                .iter()
                .map(|(m, c)| TermJson {
                    monomial: m.to_string(),
                    coeff: format_rational(c),
                })
                .collect(),
        }
    }
}

/// Writes `Σ coeff · name(monomial)` with signs pulled out and unit
/// coefficients dropped, e.g. `-5/8 c^4 + 1/4 c^2 p1 - 5/2 p2`.
pub(crate) fn write_terms<'a, M: fmt::Display + 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a M, &'a Rational)>,
) -> fmt::Result {
    let mut first = true;
    for (m, c) in terms {
        let mag = c.abs();
        let sign = if c.is_negative() { "-" } else { "+" };
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        first = false;
        let name = m.to_string();
        if name == "1" {
            write!(f, "{}", format_rational(&mag))?;
        } else if mag.is_one() {
            write!(f, "{name}")?;
        } else {
            write!(f, "{} {name}", format_rational(&mag))?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter())
    }
}

/// Monomial in Chern classes `c1^e[0] c2^e[1] ...`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChernMonomial(pub Vec<u32>);

impl fmt::Display for ChernMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    format!("c{}", i + 1)
                } else {
                    format!("c{}^{e}", i + 1)
                }
            })
            .collect();
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join(" "))
        }
    }
}

/// Homogeneous polynomial in Chern classes, `deg ci = 2i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernPoly {
    pub degree: u32,
    pub terms: BTreeMap<ChernMonomial, Rational>,
}

impl ChernPoly {
    pub fn coefficient_of(&self, exps: &[u32]) -> Rational {
        let mut key = exps.to_vec();
        while key.last() == Some(&0) {
            key.pop();
        }
        self.terms
            .get(&ChernMonomial(key))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| TermJson {
                monomial: m.to_string(),
                coeff: format_rational(c),
            })
            .collect();
        serde_json::to_value(PolyJson {
            degree: self.degree,
            terms,
        })
        .expect("serializable")
    }
}

impl fmt::Display for ChernPoly {
    /// Terms with higher powers of `c1` first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter().rev())
    }
}
