//! Multiplicative sequences and the universal integral Wu classes.
//!
//! A characteristic series `Q(x) = Σ q_k x^k` with `Q(0) = 1` determines the
//! total class `∏ Q(x_i)` over formal roots. Writing it as a polynomial in
//! the elementary symmetric functions goes through logarithms:
//! `log ∏ Q(x_i) = Σ_k l_k P_k` with `P_k` the power sums, which Newton's
//! identities express in the elementary symmetric functions; the
//! exponential is then rebuilt weight by weight from
//! `n E_n = Σ_k k L_k E_{n-k}`.

mod partition;
mod poly;

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

pub use partition::{partitions, Partition};
pub use poly::{ChernMonomial, ChernPoly, GradedPoly, Monomial};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::series::{
    spin_normal_series, spin_tangential_series, spinc_coefficient_series, wu_tangential_series,
    TruncSeries,
};

/// Polynomial in elementary symmetric functions `e_1, e_2, ...`, keyed by
/// trimmed exponent vectors.
type SymPoly = BTreeMap<Vec<u32>, Rational>;

fn sym_mul(a: &SymPoly, b: &SymPoly) -> SymPoly {
    let mut out = SymPoly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let len = ma.len().max(mb.len());
            let key: Vec<u32> = (0..len)
                .map(|i| ma.get(i).unwrap_or(&0) + mb.get(i).unwrap_or(&0))
                .collect();
            *out.entry(key).or_insert_with(Rational::zero) += ca * cb;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn sym_add_scaled(acc: &mut SymPoly, p: &SymPoly, k: &Rational) {
    for (m, c) in p {
        *acc.entry(m.clone()).or_insert_with(Rational::zero) += c * k;
    }
    acc.retain(|_, v| !v.is_zero());
}

fn elementary(j: usize) -> SymPoly {
    let mut key = vec![0; j];
    key[j - 1] = 1;
    SymPoly::from([(key, Rational::one())])
}

/// Weight components `E_0..=E_max_weight` of `∏_{i=1}^{roots} q(y_i)` as
/// polynomials in `e_j(y)`; `e_j` for `j > roots` is identically zero.
fn multiplicative_sequence(
    q: &TruncSeries,
    max_weight: usize,
    roots: usize,
) -> Result<Vec<SymPoly>> {
    if !q.coeff(0).is_one() {
        return Err(Error::BadConstantTerm(crate::arith::format_rational(
            &q.coeff(0),
        )));
    }
    if q.order() < max_weight {
        return Err(Error::InvalidArgument(format!(
            "series known to order {} but weight {max_weight} requested",
            q.order()
        )));
    }
    let q = TruncSeries::from_coeffs(max_weight, q.coeffs().to_vec());
    let log = q.log()?;

    // Newton: P_k = Σ_{i=1}^{k-1} (-1)^(i-1) e_i P_{k-i} + (-1)^(k-1) k e_k
    let mut power_sums: Vec<SymPoly> = vec![SymPoly::new()];
    for k in 1..=max_weight {
        let mut pk = SymPoly::new();
        for i in 1..k {
            if i > roots {
                break;
            }
            let sign = if i % 2 == 1 {
                Rational::one()
            } else {
                -Rational::one()
            };
            sym_add_scaled(&mut pk, &sym_mul(&elementary(i), &power_sums[k - i]), &sign);
        }
        if k <= roots {
            let sign = if k % 2 == 1 { 1i64 } else { -1 };
            sym_add_scaled(
                &mut pk,
                &elementary(k),
                &Rational::from_integer((sign * k as i64).into()),
            );
        }
        power_sums.push(pk);
    }

    // n E_n = Σ_{k=1}^{n} k l_k P_k E_{n-k}
    let mut components: Vec<SymPoly> = vec![SymPoly::from([(Vec::new(), Rational::one())])];
    for n in 1..=max_weight {
        let mut en = SymPoly::new();
        for k in 1..=n {
            let lk = log.coeff(k);
            if lk.is_zero() {
                continue;
            }
            let weight = lk * Rational::from_integer(k.into());
            sym_add_scaled(
                &mut en,
                &sym_mul(&power_sums[k], &components[n - k]),
                &weight,
            );
        }
        let inv_n = Rational::new(1.into(), n.into());
        en.values_mut().for_each(|c| *c *= &inv_n);
        components.push(en);
    }
    Ok(components)
}

/// Degree-`4k` components `K_k(p_1, ..., p_k)` of `∏ Q(x_i)` for an even
/// series `Q`, where `p_j` is the `j`-th elementary symmetric function of the
/// `x_i^2`. Returns `k = 0..=top_degree/4`.
pub fn multiplicative_class_pontryagin(
    q: &TruncSeries,
    top_degree: u32,
) -> Result<Vec<GradedPoly>> {
    if !top_degree.is_multiple_of(4) {
        return Err(Error::InvalidArgument(format!(
            "top degree {top_degree} is not a multiple of 4"
        )));
    }
    let k_max = (top_degree / 4) as usize;
    multiplicative_class_pontryagin_with_roots(q, top_degree, k_max)
}

/// As [`multiplicative_class_pontryagin`] with an explicit number of formal roots.
pub fn multiplicative_class_pontryagin_with_roots(
    q: &TruncSeries,
    top_degree: u32,
    roots: usize,
) -> Result<Vec<GradedPoly>> {
    if let Some(k) = (1..=q.order()).step_by(2).find(|&k| !q.coeff(k).is_zero()) {
        return Err(Error::NotEven(k));
    }
    if !q.coeff(0).is_one() {
        return Err(Error::BadConstantTerm(crate::arith::format_rational(
            &q.coeff(0),
        )));
    }
    let k_max = (top_degree / 4) as usize;
    if q.order() < 2 * k_max {
        return Err(Error::InvalidArgument(format!(
            "series known to order {} but degree {top_degree} requested",
            q.order()
        )));
    }
    let in_squares = TruncSeries::from_coeffs(k_max, (0..=k_max).map(|k| q.coeff(2 * k)).collect());
    let comps = multiplicative_sequence(&in_squares, k_max, roots)?;
    comps
        .into_iter()
        .enumerate()
        .map(|(k, sym)| {
            GradedPoly::from_terms(
                4 * k as u32,
                sym.into_iter().map(|(e, c)| (Monomial::new(0, e), c)),
            )
        })
        .collect()
}

/// Degree-`2k` components of `∏ Q(x_i)` in the Chern classes, `k = 0..=top_degree/2`.
pub fn multiplicative_class_chern(q: &TruncSeries, top_degree: u32) -> Result<Vec<ChernPoly>> {
    let k_max = (top_degree / 2) as usize;
    let comps = multiplicative_sequence(q, k_max, k_max)?;
    Ok(comps
        .into_iter()
        .enumerate()
        .map(|(k, sym)| ChernPoly {
            degree: 2 * k as u32,
            terms: sym
                .into_iter()
                .map(|(e, c)| (ChernMonomial(e), c))
                .collect(),
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinVariant {
    /// Characteristic series `G(x) = sqrt(h(x) h(-x))`.
    Tangential,
    /// Characteristic series `g(x) = sqrt(f(x) f(-x))`.
    Normal,
}

/// Integral spin Wu classes `μ_{4k}` (tangential) or `ν_{4k}` (normal), `k = 0..=top_degree/4`.
pub fn spin_wu_classes(top_degree: u32, variant: SpinVariant) -> Result<Vec<GradedPoly>> {
    if !top_degree.is_multiple_of(4) {
        return Err(Error::InvalidArgument(format!(
            "top degree {top_degree} is not a multiple of 4"
        )));
    }
    let order = ((top_degree / 2) as usize).max(2);
    let series = match variant {
        SpinVariant::Tangential => spin_tangential_series(order),
        SpinVariant::Normal => spin_normal_series(order),
    };
    multiplicative_class_pontryagin(&series, top_degree)
}

/// Universal integral spin^c Wu classes `μ_{2n}`, `n = 0..=top_degree/2`.
///
/// Dividing `μ^Spin(V ⊕ ξ) = K_G(V) · G(c)` by `h(c)` leaves
/// `μ^{Spin^c} = K_G(V) · A(c)` with `A = G/h = sqrt(h(-c)/h(c))`, so
/// `μ_{2n} = Σ_k a_{n-2k} c^{n-2k} K_k`.
pub fn spinc_wu_classes(top_degree: u32) -> Result<Vec<GradedPoly>> {
    let table = cached_spinc_table(top_degree)?;
    Ok(table[..=(top_degree / 2) as usize].to_vec())
}

fn compute_spinc_closed_form(top_degree: u32) -> Result<Vec<GradedPoly>> {
    let n_max = (top_degree / 2) as usize;
    let spin = spin_wu_classes(4 * (top_degree / 4), SpinVariant::Tangential)?;
    let (a, _) = spinc_coefficient_series(n_max.max(1));
    (0..=n_max)
        .map(|n| {
            let mut mu = GradedPoly::zero(2 * n as u32);
            for (k, kk) in spin.iter().enumerate().take(n / 2 + 1) {
                let c_part =
                    GradedPoly::monomial(Monomial::c_pow((n - 2 * k) as u32), a.coeff(n - 2 * k));
                mu = mu.add(&c_part.mul(kk))?;
            }
            Ok(mu)
        })
        .collect()
}

/// The same classes computed straight from the definition
/// `μ^{Spin^c}(V) = μ^Spin(V ⊕ ξ) / h(c)`: the line bundle contributes the
/// extra root `c`, so `p_j(V ⊕ ξ) = p_j + c^2 p_{j-1}`, and the quotient by
/// `h(c)` is a series division.
pub fn spinc_wu_classes_definitional(top_degree: u32) -> Result<Vec<GradedPoly>> {
    let n_max = (top_degree / 2) as usize;
    let spin = spin_wu_classes(4 * (top_degree / 4), SpinVariant::Tangential)?;
    let total: Vec<GradedPoly> = spin
        .iter()
        .map(with_line_bundle_root)
        .collect::<Result<_>>()?;
    let order = n_max.max(1);
    let inv_h = TruncSeries::one(order).div(&wu_tangential_series(order))?;
    (0..=n_max)
        .map(|n| {
            let mut mu = GradedPoly::zero(2 * n as u32);
            for (k, part) in total.iter().enumerate().take(n / 2 + 1) {
                let c_part = GradedPoly::monomial(
                    Monomial::c_pow((n - 2 * k) as u32),
                    inv_h.coeff(n - 2 * k),
                );
                mu = mu.add(&c_part.mul(part))?;
            }
            Ok(mu)
        })
        .collect()
}

/// Substitutes `p_j ↦ p_j + c^2 p_{j-1}` (with `p_0 = 1`).
fn with_line_bundle_root(poly: &GradedPoly) -> Result<GradedPoly> {
    let mut out = GradedPoly::zero(poly.degree());
    for (m, coeff) in poly.terms() {
        let mut term = GradedPoly::monomial(Monomial::c_pow(m.c_exp()), coeff.clone());
        for (i, &e) in m.p_exps().iter().enumerate() {
            let j = i + 1;
            let lower = if j == 1 {
                Monomial::c_pow(2)
            } else {
                Monomial::c_pow(2).mul(&Monomial::p(j - 1))
            };
            let shifted = GradedPoly::from_terms(
                4 * j as u32,
                [(Monomial::p(j), Rational::one()), (lower, Rational::one())],
            )?;
            for _ in 0..e {
                term = term.mul(&shifted);
            }
        }
        out = out.add(&term)?;
    }
    Ok(out)
}

static SPINC_CACHE: Mutex<Option<Arc<Vec<GradedPoly>>>> = Mutex::new(None);

/// Universal classes up to at least `top_degree`, shared between callers.
pub(crate) fn cached_spinc_table(top_degree: u32) -> Result<Arc<Vec<GradedPoly>>> {
    let needed = (top_degree / 2) as usize + 1;
    let mut slot = SPINC_CACHE.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(table) = slot.as_ref() {
        if table.len() >= needed {
            return Ok(Arc::clone(table));
        }
    }
    let table = Arc::new(compute_spinc_closed_form(top_degree)?);
    *slot = Some(Arc::clone(&table));
    Ok(table)
}

/// `μ_{2 j_1} ⋯ μ_{2 j_r}` for the partition `I = {j_1, ..., j_r}`.
pub fn wu_monomial(partition: &Partition, top_degree: u32) -> Result<GradedPoly> {
    let weight = partition.weight();
    if 2 * weight > top_degree {
        return Err(Error::InvalidArgument(format!(
            "partition {partition} has degree {} > {top_degree}",
            2 * weight
        )));
    }
    let table = cached_spinc_table(2 * weight)?;
    Ok(partition
        .parts()
        .iter()
        .fold(GradedPoly::one(), |acc, &j| acc.mul(&table[j as usize])))
}

pub fn coefficient_of(poly: &GradedPoly, monomial: &Monomial) -> Result<Rational> {
    poly.coefficient_of(monomial)
}
