//! Truncated power series in one variable with exact rational coefficients,
//! and the characteristic series of the Wu classes.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

/// `c_0 + c_1 x + ... + c_N x^N`, with terms beyond `x^N` discarded.
///
/// Orders never mix: every binary operation requires equal orders.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    coeffs: Vec<Rational>,
}

impl TruncSeries {
    pub fn zero(order: usize) -> Self {
        TruncSeries {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rational::one();
        s
    }

    /// Pads with zeros or truncates `coeffs` to length `order + 1`.
    pub fn from_coeffs(order: usize, mut coeffs: Vec<Rational>) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        TruncSeries { coeffs }
    }

    pub fn from_ints(order: usize, coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            order,
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^k`; zero past the order.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    fn same_order(&self, other: &TruncSeries) -> Result<()> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(Error::OrderMismatch(self.order(), other.order()))
        }
    }

    pub fn add(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.same_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(TruncSeries { coeffs })
    }

    pub fn sub(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.same_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(TruncSeries { coeffs })
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.same_order(other)?;
        let n = self.order();
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &Rational) -> TruncSeries {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// `q` with `q * other = self` up to the order.
    pub fn div(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.same_order(other)?;
        let lead = &other.coeffs[0];
        if lead.is_zero() {
            return Err(Error::NotInvertible);
        }
        let n = self.order();
        let mut q: Vec<Rational> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                let t = &other.coeffs[j];
                if !t.is_zero() {
                    acc -= t * &q[k - j];
                }
            }
            q.push(acc / lead);
        }
        Ok(TruncSeries { coeffs: q })
    }

    /// Square root with constant term 1.
    pub fn sqrt(&self) -> Result<TruncSeries> {
        if !self.coeffs[0].is_one() {
            return Err(Error::BadConstantTerm(format_rational(&self.coeffs[0])));
        }
        // Newton iteration r <- (r + s/r)/2 doubles the number of correct terms.
        let n = self.order();
        let half = Rational::new(1.into(), 2.into());
        let mut r = TruncSeries::one(0);
        let mut known = 1;
        while known <= n {
            known = (2 * known).min(n + 1);
            let s = TruncSeries::from_coeffs(known - 1, self.coeffs[..known].to_vec());
            let prev = TruncSeries::from_coeffs(known - 1, r.coeffs);
            r = prev.add(&s.div(&prev)?)?.scale(&half);
        }
        Ok(r)
    }

    /// `x ↦ -x`.
    pub fn substitute_neg(&self) -> TruncSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
            .collect();
        TruncSeries { coeffs }
    }

    /// Logarithm of a series with constant term 1, from `log(s)' = s'/s`:
    /// `k l_k = k s_k - Σ_{j=1}^{k-1} j l_j s_{k-j}`.
    pub fn log(&self) -> Result<TruncSeries> {
        if !self.coeffs[0].is_one() {
            return Err(Error::BadConstantTerm(format_rational(&self.coeffs[0])));
        }
        let n = self.order();
        let mut l = vec![Rational::zero(); n + 1];
        for k in 1..=n {
            let mut acc = Rational::from_integer(k.into()) * &self.coeffs[k];
            for j in 1..k {
                if !l[j].is_zero() {
                    acc -= Rational::from_integer(j.into()) * &l[j] * &self.coeffs[k - j];
                }
            }
            l[k] = acc / Rational::from_integer(k.into());
        }
        Ok(TruncSeries { coeffs: l })
    }

    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(Zero::is_zero)
    }

    /// Exact coefficient strings, `"n"` or `"n/d"`.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }

    pub fn from_strings<S: AsRef<str>>(coeffs: &[S]) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Parse(
                "a series needs at least one coefficient".into(),
            ));
        }
        let coeffs = coeffs
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<_>>()?;
        Ok(TruncSeries { coeffs })
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncSeries[{}]", self.to_strings().join(", "))
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                write!(f, "{}", if neg { "-" } else { "" })?;
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let body = format_rational(&mag);
            match k {
                0 => write!(f, "{body}")?,
                _ if mag.is_one() => write!(f, "x^{k}")?,
                _ => write!(f, "{body} x^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

impl Serialize for TruncSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for TruncSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        TruncSeries::from_strings(&raw).map_err(serde::de::Error::custom)
    }
}

/// `f(x) = Σ_{n≥0} x^(2^n - 1) = 1 + x + x^3 + x^7 + ...`, the normal Wu series.
pub fn wu_normal_series(order: usize) -> TruncSeries {
    let mut s = TruncSeries::zero(order);
    let mut e = 1usize;
    while e - 1 <= order {
        s.coeffs[e - 1] = Rational::one();
        e *= 2;
    }
    s
}

/// `h(x) = 1 + Σ_{n≥0} x^(2^n) = 1 + x + x^2 + x^4 + ...`, the tangential Wu series.
pub fn wu_tangential_series(order: usize) -> TruncSeries {
    let mut s = TruncSeries::zero(order);
    s.coeffs[0] = Rational::one();
    let mut e = 1usize;
    while e <= order {
        s.coeffs[e] = Rational::one();
        e *= 2;
    }
    s
}

/// `g(x) = sqrt(f(x) f(-x))`, the integral spin normal Wu series.
pub fn spin_normal_series(order: usize) -> TruncSeries {
    let f = wu_normal_series(order);
    f.mul(&f.substitute_neg())
        .and_then(|p| p.sqrt())
        .expect("f(0) = 1")
}

/// `G(x) = sqrt(h(x) h(-x))`, the integral spin tangential Wu series.
pub fn spin_tangential_series(order: usize) -> TruncSeries {
    let h = wu_tangential_series(order);
    h.mul(&h.substitute_neg())
        .and_then(|p| p.sqrt())
        .expect("h(0) = 1")
}

/// `(A, B)` with `B = h(-x)/h(x)` and `A = sqrt(B)`; `A` holds the
/// coefficients `a_n` of `c^n` in the universal spin^c Wu classes.
pub fn spinc_coefficient_series(order: usize) -> (TruncSeries, TruncSeries) {
    let h = wu_tangential_series(order);
    let b = h.substitute_neg().div(&h).expect("h(0) = 1");
    let a = b.sqrt().expect("b_0 = 1");
    (a, b)
}

/// Coefficients `a_0..=a_N` of the square root of `b` from the recursion
/// `2 a_n = b_n - Σ_{k=1}^{n-1} a_k a_{n-k}`, independent of [`TruncSeries::sqrt`].
pub fn sqrt_by_recursion(b: &TruncSeries) -> Result<TruncSeries> {
    if !b.coeff(0).is_one() {
        return Err(Error::BadConstantTerm(crate::arith::format_rational(
            &b.coeff(0),
        )));
    }
    let mut a = vec![Rational::one()];
    let half = Rational::new(1.into(), 2.into());
    for n in 1..=b.order() {
        let mut rest = b.coeff(n);
        for k in 1..n {
            rest -= &a[k] * &a[n - k];
        }
        a.push(rest * &half);
    }
    Ok(TruncSeries::from_coeffs(b.order(), a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};
    use proptest::prelude::*;

    fn ints(s: &TruncSeries) -> Vec<Rational> {
        s.coeffs().to_vec()
    }

    fn r(v: &[(i64, i64)]) -> Vec<Rational> {
        v.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    #[test]
    fn products() {
        let a = TruncSeries::from_ints(4, &[1, 1]);
        let b = TruncSeries::from_ints(4, &[1, -1]);
        assert_eq!(a.mul(&b).unwrap(), TruncSeries::from_ints(4, &[1, 0, -1]));
        let h = wu_tangential_series(4);
        assert_eq!(
            h.mul(&h).unwrap(),
            TruncSeries::from_ints(4, &[1, 2, 3, 2, 3])
        );
        assert_eq!(h.add(&TruncSeries::zero(4)).unwrap(), h);
        assert_eq!(
            a.mul(&TruncSeries::zero(3)),
            Err(Error::OrderMismatch(4, 3))
        );
        assert_eq!(
            a.add(&TruncSeries::zero(5)),
            Err(Error::OrderMismatch(4, 5))
        );
    }

    #[test]
    fn division() {
        let h = wu_tangential_series(3);
        assert_eq!(
            TruncSeries::one(3).div(&h).unwrap(),
            TruncSeries::from_ints(3, &[1, -1, 0, 1])
        );
        assert_eq!(h.div(&h).unwrap(), TruncSeries::one(3));
        let h2 = wu_tangential_series(2);
        let q = h2.substitute_neg().div(&h2).unwrap();
        assert_eq!(q, TruncSeries::from_ints(2, &[1, -2, 2]));
        assert_eq!(q.mul(&h2).unwrap(), h2.substitute_neg());
        let x = TruncSeries::from_ints(2, &[0, 1]);
        assert_eq!(h2.div(&x), Err(Error::NotInvertible));
    }

    #[test]
    fn square_roots() {
        assert_eq!(TruncSeries::one(5).sqrt().unwrap(), TruncSeries::one(5));
        // binomial series (1 + 2x)^(1/2) = Σ C(1/2, k) 2^k x^k
        let mut expected = Vec::new();
        let mut binom = rat_int(1);
        for k in 0..4i64 {
            expected.push(binom.clone() * rat_int(1 << k));
            binom = binom * (rat(1, 2) - rat_int(k)) / rat_int(k + 1);
        }
        let s = TruncSeries::from_ints(3, &[1, 2]).sqrt().unwrap();
        assert_eq!(ints(&s), expected);
        assert_eq!(ints(&s), r(&[(1, 1), (1, 1), (-1, 2), (1, 2)]));
        let sq = TruncSeries::from_ints(6, &[1, 2, 1]);
        assert_eq!(sq.sqrt().unwrap(), TruncSeries::from_ints(6, &[1, 1]));
        assert!(matches!(
            TruncSeries::from_ints(2, &[4, 1]).sqrt(),
            Err(Error::BadConstantTerm(_))
        ));
    }

    #[test]
    fn negation() {
        let h = wu_tangential_series(4);
        assert_eq!(
            h.substitute_neg(),
            TruncSeries::from_ints(4, &[1, -1, 1, 0, 1])
        );
        assert_eq!(h.substitute_neg().substitute_neg(), h);
        let g = spin_tangential_series(10);
        assert_eq!(g.substitute_neg(), g);
    }

    #[test]
    fn wu_series_shapes() {
        let f = wu_normal_series(8);
        let set: Vec<usize> = (0..=8).filter(|&k| !f.coeff(k).is_zero()).collect();
        assert_eq!(set, vec![0, 1, 3, 7]);
        assert_eq!(wu_normal_series(1), TruncSeries::from_ints(1, &[1, 1]));
        let h = wu_tangential_series(8);
        let set: Vec<usize> = (0..=8).filter(|&k| !h.coeff(k).is_zero()).collect();
        assert_eq!(set, vec![0, 1, 2, 4, 8]);
        assert_eq!(wu_tangential_series(1), TruncSeries::from_ints(1, &[1, 1]));
    }

    #[test]
    fn spin_series_golden() {
        let g = spin_normal_series(10);
        assert!(g.is_even());
        let even: Vec<Rational> = (1..=5).map(|k| g.coeff(2 * k)).collect();
        assert_eq!(
            even,
            r(&[(-1, 2), (-9, 8), (-17, 16), (-277, 128), (-839, 256)])
        );
        let big_g = spin_tangential_series(10);
        assert!(big_g.is_even());
        let even: Vec<Rational> = (1..=5).map(|k| big_g.coeff(2 * k)).collect();
        assert_eq!(even, r(&[(1, 2), (11, 8), (5, 16), (51, 128), (95, 256)]));
    }

    #[test]
    fn spinc_series_start() {
        let (a, b) = spinc_coefficient_series(8);
        assert_eq!(a.coeff(0), rat_int(1));
        assert_eq!(a.coeff(1), rat_int(-1));
        assert_eq!(a.coeff(8), rat(211, 128));
        assert_eq!(b.coeff(1), rat_int(-2));
        assert_eq!(a.mul(&a).unwrap(), b);
    }

    #[test]
    fn log_inverts_known_series() {
        // log(1/(1-x)) = Σ x^k / k
        let geo = TruncSeries::one(6)
            .div(&TruncSeries::from_ints(6, &[1, -1]))
            .unwrap();
        let l = geo.log().unwrap();
        for k in 1..=6 {
            assert_eq!(l.coeff(k), rat(1, k as i64));
        }
        assert_eq!(l.coeff(0), rat_int(0));
    }

    #[test]
    fn json_strings() {
        let g = spin_tangential_series(4);
        let text = serde_json::to_string(&g).unwrap();
        assert_eq!(text, r#"["1","0","1/2","0","11/8"]"#);
        let back: TruncSeries = serde_json::from_str(&text).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<TruncSeries>(r#"["1","x"]"#).is_err());
    }

    fn unit_series() -> impl Strategy<Value = TruncSeries> {
        (1usize..=64).prop_flat_map(|n| {
            proptest::collection::vec((-20i64..=20, 1i64..=16), n).prop_map(move |v| {
                let mut coeffs = vec![rat_int(1)];
                coeffs.extend(v.into_iter().map(|(a, b)| rat(a, b)));
                TruncSeries::from_coeffs(n, coeffs)
            })
        })
    }

    #[test]
    fn newton_sqrt_matches_recursion() {
        let (a, b) = spinc_coefficient_series(40);
        assert_eq!(sqrt_by_recursion(&b).unwrap(), a);
        assert!(sqrt_by_recursion(&TruncSeries::from_ints(3, &[4, 1])).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn sqrt_of_square(s in unit_series()) {
            prop_assert_eq!(s.mul(&s).unwrap().sqrt().unwrap(), s);
        }

        #[test]
        fn div_then_mul(s in unit_series(), t in unit_series()) {
            let n = s.order().min(t.order());
            let s = TruncSeries::from_coeffs(n, s.coeffs().to_vec());
            let t = TruncSeries::from_coeffs(n, t.coeffs().to_vec());
            prop_assert_eq!(s.div(&t).unwrap().mul(&t).unwrap(), s);
        }
    }
}
