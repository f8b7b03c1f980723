//! Truncated Laurent series in q with precision tracking.
//!
//! A [`QSeries`] stores a contiguous run of coefficients from its valuation up
//! to its order `N`. Everything with exponent ≤ `N` is exact; nothing is
//! claimed beyond. Each operation states how the order of its result follows
//! from the orders and valuations of its inputs, so a computed series never
//! claims more than its inputs can justify.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::Field;

/// A monomial `c·q^e` with nonzero `c`.
#[derive(Clone, Debug, PartialEq)]
pub struct Monomial<C> {
    coeff: C,
    exp: i64,
}

impl<C: Field> Monomial<C> {
    pub fn new(coeff: C, exp: i64) -> Result<Self> {
        if coeff.is_zero() {
            return Err(Error::ZeroMonomial);
        }
        Ok(Monomial { coeff, exp })
    }

    /// A pure constant `c·q⁰`.
    pub fn scalar(coeff: C) -> Result<Self> {
        Self::new(coeff, 0)
    }

    /// `q^e`.
    pub fn q_pow(exp: i64) -> Self {
        Monomial {
            coeff: C::one(),
            exp,
        }
    }

    pub fn coeff(&self) -> &C {
        &self.coeff
    }

    pub fn exp(&self) -> i64 {
        self.exp
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial {
            coeff: self.coeff.mul_ref(&other.coeff),
            exp: self.exp + other.exp,
        }
    }

    pub fn scale(&self, c: &C) -> Result<Self> {
        Self::new(self.coeff.mul_ref(c), self.exp)
    }

    pub fn shift(&self, e: i64) -> Self {
        Monomial {
            coeff: self.coeff.clone(),
            exp: self.exp + e,
        }
    }

    pub fn neg(&self) -> Self {
        Monomial {
            coeff: self.coeff.neg_ref(),
            exp: self.exp,
        }
    }

    pub fn inv(&self) -> Self {
        Monomial {
            coeff: self.coeff.try_inv().expect("monomial coefficient is nonzero"),
            exp: -self.exp,
        }
    }

    pub fn pow(&self, n: i64) -> Self {
        Monomial {
            coeff: self.coeff.pow_i(n).expect("monomial coefficient is nonzero"),
            exp: self.exp * n,
        }
    }

    /// The monomial after substituting q ↦ c·q.
    pub fn twist(&self, c: &C) -> Self {
        let f = c.pow_i(self.exp).expect("twist by a nonzero unit");
        Monomial {
            coeff: self.coeff.mul_ref(&f),
            exp: self.exp,
        }
    }

    /// The monomial after substituting q ↦ q^k.
    pub fn subst_q_power(&self, k: i64) -> Self {
        Monomial {
            coeff: self.coeff.clone(),
            exp: self.exp * k,
        }
    }

    pub fn to_series(&self, order: i64) -> QSeries<C> {
        QSeries::monomial(self.coeff.clone(), self.exp, order)
    }
}

impl<C: Field + fmt::Display> fmt::Display for Monomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coeff.to_string();
        match self.exp {
            0 => write!(f, "{c}"),
            e => {
                let q = if e == 1 { "q".to_string() } else { format!("q^{e}") };
                if self.coeff.is_one() {
                    write!(f, "{q}")
                } else if c.contains(' ') {
                    write!(f, "({c})·{q}")
                } else {
                    write!(f, "{c}·{q}")
                }
            }
        }
    }
}

/// A Laurent series Σ aₙqⁿ known exactly for n ≤ `order`.
#[derive(Clone, Debug)]
pub struct QSeries<C> {
    /// Exponent of `coeffs[0]`; equals `order + 1` for the zero run.
    start: i64,
    /// Coefficients for exponents `start..=order`; the first one is nonzero.
    coeffs: Vec<C>,
    order: i64,
}

impl<C: Field> QSeries<C> {
    pub fn zero(order: i64) -> Self {
        QSeries {
            start: order + 1,
            coeffs: Vec::new(),
            order,
        }
    }

    pub fn one(order: i64) -> Self {
        Self::monomial(C::one(), 0, order)
    }

    pub fn constant(c: C, order: i64) -> Self {
        Self::monomial(c, 0, order)
    }

    pub fn monomial(c: C, exp: i64, order: i64) -> Self {
        if c.is_zero() || exp > order {
            return Self::zero(order);
        }
        let mut coeffs = vec![C::zero(); (order - exp + 1) as usize];
        coeffs[0] = c;
        QSeries {
            start: exp,
            coeffs,
            order,
        }
    }

    /// Builds a series from a dense run starting at `start`; entries beyond
    /// `order` are dropped and missing ones are zero.
    pub fn from_coeffs(start: i64, coeffs: Vec<C>, order: i64) -> Self {
        let mut coeffs = coeffs;
        if start > order {
            return Self::zero(order);
        }
        coeffs.resize((order - start + 1) as usize, C::zero());
        QSeries {
            start,
            coeffs,
            order,
        }
        .normalized()
    }

    /// Sums `(exponent, coefficient)` pairs; exponents beyond `order` are ignored.
    pub fn from_terms<I: IntoIterator<Item = (i64, C)>>(terms: I, order: i64) -> Self {
        let terms: Vec<(i64, C)> = terms.into_iter().filter(|(e, _)| *e <= order).collect();
        let Some(lo) = terms.iter().map(|(e, _)| *e).min() else {
            return Self::zero(order);
        };
        let mut coeffs = vec![C::zero(); (order - lo + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - lo) as usize].add_assign_ref(&c);
        }
        Self::from_coeffs(lo, coeffs, order)
    }

    fn normalized(mut self) -> Self {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            return Self::zero(self.order);
        }
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.start += lead as i64;
        }
        self
    }

    /// Exponent of the lowest nonzero term (`order + 1` for the zero run).
    pub fn valuation(&self) -> i64 {
        self.start
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    /// True when every coefficient up to the order vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of qⁿ, or `None` when n lies beyond the order.
    pub fn get(&self, n: i64) -> Option<C> {
        if n > self.order {
            None
        } else if n < self.start {
            Some(C::zero())
        } else {
            Some(self.coeffs[(n - self.start) as usize].clone())
        }
    }

    /// Coefficient of qⁿ. Panics when n exceeds the order.
    pub fn coeff(&self, n: i64) -> C {
        self.get(n)
            .unwrap_or_else(|| panic!("coefficient q^{n} requested beyond order {}", self.order))
    }

    fn at(&self, n: i64) -> Option<&C> {
        if n < self.start || n > self.order {
            None
        } else {
            Some(&self.coeffs[(n - self.start) as usize])
        }
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.start + i as i64, c))
    }

    /// Dense coefficients from the valuation to the order.
    pub fn dense(&self) -> &[C] {
        &self.coeffs
    }

    /// Forgets everything beyond `order` (no-op when already lower).
    pub fn truncate(&self, order: i64) -> Self {
        if order >= self.order {
            return self.clone();
        }
        if order < self.start {
            return Self::zero(order);
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate((order - self.start + 1) as usize);
        QSeries {
            start: self.start,
            coeffs,
            order,
        }
        .normalized()
    }

    /// Replaces the coefficient of qⁿ (n ≤ order).
    pub fn with_coeff(&self, n: i64, c: C) -> Self {
        assert!(n <= self.order, "cannot set q^{n} beyond order {}", self.order);
        let mut terms: Vec<(i64, C)> = self
            .terms()
            .filter(|(e, _)| *e != n)
            .map(|(e, c)| (e, c.clone()))
            .collect();
        terms.push((n, c));
        Self::from_terms(terms, self.order)
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let order = self.order.min(other.order);
        let lo = self.start.min(other.start);
        if lo > order {
            return Self::zero(order);
        }
        let mut coeffs = vec![C::zero(); (order - lo + 1) as usize];
        for (e, c) in self.terms().take_while(|(e, _)| *e <= order) {
            coeffs[(e - lo) as usize] = c.clone();
        }
        for (e, c) in other.terms().take_while(|(e, _)| *e <= order) {
            let slot = &mut coeffs[(e - lo) as usize];
            if negate {
                slot.sub_assign_ref(c);
            } else {
                slot.add_assign_ref(c);
            }
        }
        Self::from_coeffs(lo, coeffs, order)
    }

    /// Sum; order is the smaller of the two orders.
    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    pub fn neg(&self) -> Self {
        QSeries {
            start: self.start,
            coeffs: self.coeffs.iter().map(Field::neg_ref).collect(),
            order: self.order,
        }
    }

    /// Multiplication by a constant; the order is unchanged.
    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.order);
        }
        if c.is_one() {
            return self.clone();
        }
        QSeries {
            start: self.start,
            coeffs: self.coeffs.iter().map(|a| a.mul_ref(c)).collect(),
            order: self.order,
        }
    }

    /// Multiplication by `c·q^e`; the order moves by `e`.
    pub fn mul_monomial(&self, c: &C, e: i64) -> Self {
        if c.is_zero() {
            return Self::zero(self.order + e);
        }
        let mut out = self.scale(c);
        out.start += e;
        out.order += e;
        out
    }

    pub fn mul_mono(&self, m: &Monomial<C>) -> Self {
        self.mul_monomial(m.coeff(), m.exp())
    }

    /// Cauchy product. The order is `min(N_f + v_g, N_g + v_f)`.
    pub fn mul(&self, other: &Self) -> Self {
        let order = (self.order + other.start).min(other.order + self.start);
        if self.is_zero() || other.is_zero() {
            return Self::zero(order);
        }
        let start = self.start + other.start;
        if start > order {
            return Self::zero(order);
        }
        let len = (order - start + 1) as usize;
        let mut coeffs = vec![C::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j].mul_add_assign(a, b);
            }
        }
        Self::from_coeffs(start, coeffs, order)
    }

    /// Multiplication by the binomial `1 − c·q^e`.
    pub fn mul_binomial(&self, c: &C, e: i64) -> Self {
        if e == 0 {
            return self.scale(&C::one().sub_ref(c));
        }
        if e < 0 || c.is_zero() || self.is_zero() {
            return self.sub(&self.mul_monomial(c, e));
        }
        let mut out = self.clone();
        let e = e as usize;
        for k in (e..out.coeffs.len()).rev() {
            if out.coeffs[k - e].is_zero() {
                continue;
            }
            let t = out.coeffs[k - e].mul_ref(c);
            out.coeffs[k].sub_assign_ref(&t);
        }
        out
    }

    /// Division by the binomial `1 − c·q^e`.
    ///
    /// For `e > 0` the order is unchanged; for `e < 0` the factor is rewritten
    /// as `−c⁻¹q^{−e}(1 − c⁻¹q^{−e})` and the order grows by `|e|`.
    pub fn div_binomial(&self, c: &C, e: i64) -> Result<Self> {
        if c.is_zero() {
            return Ok(self.clone());
        }
        match e.signum() {
            0 => {
                let d = C::one().sub_ref(c);
                let inv = d
                    .try_inv()
                    .ok_or_else(|| Error::PoleAtFactor("factor (1 - q^0) vanishes".into()))?;
                Ok(self.scale(&inv))
            }
            1 => {
                let mut coeffs = self.coeffs.clone();
                let step = e as usize;
                for idx in step..coeffs.len() {
                    let (lo, hi) = coeffs.split_at_mut(idx);
                    hi[0].mul_add_assign(c, &lo[idx - step]);
                }
                Ok(QSeries {
                    start: self.start,
                    coeffs,
                    order: self.order,
                })
            }
            _ => {
                let ci = c.try_inv().expect("nonzero");
                Ok(self.div_binomial(&ci, -e)?.mul_monomial(&ci.neg_ref(), -e))
            }
        }
    }

    /// Division by `1 + a·q^k + q^{2k}` for `k ≥ 1`; the order is unchanged.
    pub fn div_trinomial(&self, a: &C, k: i64) -> Self {
        assert!(k >= 1, "trinomial step must be positive");
        let k = k as usize;
        let mut coeffs = self.coeffs.clone();
        for idx in k..coeffs.len() {
            let (lo, hi) = coeffs.split_at_mut(idx);
            let mut v = hi[0].clone();
            if !a.is_zero() {
                v.sub_assign_ref(&a.mul_ref(&lo[idx - k]));
            }
            if idx >= 2 * k {
                v.sub_assign_ref(&lo[idx - 2 * k]);
            }
            hi[0] = v;
        }
        QSeries {
            start: self.start,
            coeffs,
            order: self.order,
        }
    }

    /// Multiplicative inverse; valuation `−v` and order `N − 2v`.
    pub fn invert(&self) -> Result<Self> {
        Self::one(self.order - self.start).div(self).inspect(|s| {
            // 1 is exact, so only the divisor limits the order
            debug_assert_eq!(s.order, self.order - 2 * self.start);
        })
    }

    /// Quotient; the order is `min(N_f − v_g, N_g − 2v_g + v_f)`.
    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::NonInvertible { order: other.order });
        }
        let vg = other.start;
        let order = (self.order - vg).min(other.order - 2 * vg + self.start);
        if self.is_zero() {
            return Ok(Self::zero(order));
        }
        let start = self.start - vg;
        if start > order {
            return Ok(Self::zero(order));
        }
        let len = (order - start + 1) as usize;
        let g0_inv = other.coeffs[0].try_inv().expect("leading coefficient is nonzero");
        let mut out: Vec<C> = Vec::with_capacity(len);
        for n in 0..len {
            let mut acc = self.coeffs[n].clone();
            for k in 1..=n.min(other.coeffs.len() - 1) {
                let g = &other.coeffs[k];
                if g.is_zero() || out[n - k].is_zero() {
                    continue;
                }
                acc.sub_assign_ref(&g.mul_ref(&out[n - k]));
            }
            out.push(acc.mul_ref(&g0_inv));
        }
        Ok(Self::from_coeffs(start, out, order))
    }

    /// Integer power; negative powers go through [`invert`](Self::invert).
    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.invert()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc: Option<Self> = None;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => sq.clone(),
                    Some(a) => a.mul(&sq),
                });
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc.unwrap_or_else(|| Self::one(self.order)))
    }

    /// Substitution q ↦ q^k (k ≥ 1); the order becomes `k·N + k − 1`.
    pub fn subst_q_power(&self, k: i64) -> Self {
        assert!(k >= 1, "substitution power must be positive");
        let order = k * self.order + (k - 1);
        if self.is_zero() {
            return Self::zero(order);
        }
        let step = k as usize;
        let mut coeffs = vec![C::zero(); (order - k * self.start + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * step] = c.clone();
        }
        QSeries {
            start: k * self.start,
            coeffs,
            order,
        }
    }

    /// Substitution q ↦ c·q: aₙ ↦ cⁿaₙ. The order is unchanged.
    pub fn twist(&self, c: &C) -> Self {
        if c.is_one() || self.is_zero() {
            return self.clone();
        }
        let mut p = c.pow_i(self.start).expect("twist by a nonzero unit");
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            coeffs.push(if a.is_zero() { C::zero() } else { a.mul_ref(&p) });
            p = p.mul_ref(c);
        }
        QSeries {
            start: self.start,
            coeffs,
            order: self.order,
        }
    }

    /// First exponent ≤ `upto` (and within both orders) where the series differ.
    pub fn first_mismatch(&self, other: &Self, upto: i64) -> Option<(i64, C, C)> {
        let hi = upto.min(self.order).min(other.order);
        let lo = self.start.min(other.start);
        let zero = C::zero();
        (lo..=hi).find_map(|n| {
            let a = self.at(n).unwrap_or(&zero);
            let b = other.at(n).unwrap_or(&zero);
            (a != b).then(|| (n, a.clone(), b.clone()))
        })
    }
}

/// Equality on the common range: both series agree up to the smaller order.
impl<C: Field> PartialEq for QSeries<C> {
    fn eq(&self, other: &Self) -> bool {
        self.first_mismatch(other, i64::MAX).is_none()
    }
}

/// `(1 − c·q^e)⁻¹` as a series known to order `n`.
pub fn geom_factor_inverse<C: Field>(m: &Monomial<C>, n: i64) -> Result<QSeries<C>> {
    if m.exp() == 0 && m.coeff().is_one() {
        return Err(Error::PoleAtFactor("factor (1 - q^0) vanishes".into()));
    }
    let base = if m.exp() < 0 { n + m.exp() } else { n };
    QSeries::one(base).div_binomial(m.coeff(), m.exp())
}

/// `(a; q^step)_∞ = ∏_{k≥0} (1 − a·q^{k·step})` to order `n`.
pub fn pochhammer_inf<C: Field>(a: &Monomial<C>, step: i64, n: i64) -> Result<QSeries<C>> {
    pochhammer_inf_based(a, &Monomial::q_pow(step), n)
}

/// `(a; Q)_∞` where the base `Q = b·q^m` carries a unit `b` (m ≥ 1).
///
/// A factor that vanishes identically (exponent 0, coefficient 1) yields the
/// zero series.
pub fn pochhammer_inf_based<C: Field>(
    a: &Monomial<C>,
    base: &Monomial<C>,
    n: i64,
) -> Result<QSeries<C>> {
    if a.exp() < 0 {
        return Err(Error::NegativeExponent(a.exp()));
    }
    assert!(base.exp() >= 1, "Pochhammer base must carry a positive q-power");
    let mut acc = QSeries::one(n);
    let mut factor = a.clone();
    while factor.exp() <= n {
        if factor.exp() == 0 && factor.coeff().is_one() {
            return Ok(QSeries::zero(n));
        }
        acc = acc.mul_binomial(factor.coeff(), factor.exp());
        factor = factor.mul(base);
    }
    Ok(acc)
}

/// Finite product `(a; Q)_k = ∏_{j<k} (1 − a·Q^j)`, exponents of any sign.
pub fn pochhammer_finite<C: Field>(
    a: &Monomial<C>,
    base: &Monomial<C>,
    k: usize,
    n: i64,
) -> QSeries<C> {
    let low: i64 = (0..k as i64).map(|j| (a.exp() + j * base.exp()).min(0)).sum();
    let mut acc = QSeries::one(n - low);
    let mut factor = a.clone();
    for _ in 0..k {
        acc = acc.mul_binomial(factor.coeff(), factor.exp());
        factor = factor.mul(base);
    }
    acc
}

/// Re-evaluates `build` at increasing working orders until its result is
/// known to `target`, then truncates to exactly `target`.
pub fn to_order<C, F>(target: i64, mut build: F) -> Result<QSeries<C>>
where
    C: Field,
    F: FnMut(i64) -> Result<QSeries<C>>,
{
    let mut working = target;
    for _ in 0..8 {
        let s = build(working)?;
        if s.order() >= target {
            return Ok(s.truncate(target));
        }
        working += (target - s.order()).max(1);
    }
    let reached = build(working)?.order();
    Err(Error::Precision { target, reached })
}

impl<C: Field + fmt::Display> fmt::Display for QSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let s = c.to_string();
            let compound = s.contains(' ');
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) if !compound => (true, rest.to_string()),
                _ => (false, s),
            };
            let q = match e {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{e}"),
            };
            let term = match (body.as_str(), q.is_empty()) {
                (b, true) if compound => format!("({b})"),
                (b, true) => b.to_string(),
                ("1", false) => q,
                (b, false) if compound => format!("({b})·{q}"),
                (b, false) => format!("{b}·{q}"),
            };
            match (first, neg) {
                (true, true) => write!(f, "-{term}")?,
                (true, false) => write!(f, "{term}")?,
                (false, true) => write!(f, " - {term}")?,
                (false, false) => write!(f, " + {term}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        let big_o = self.order + 1;
        match big_o {
            0 => write!(f, " + O(1)"),
            1 => write!(f, " + O(q)"),
            _ => write!(f, " + O(q^{big_o})"),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson<C> {
    valuation: i64,
    order: i64,
    coeffs: Vec<C>,
}

impl<C: Field + Serialize> Serialize for QSeries<C> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson {
            valuation: self.start,
            order: self.order,
            coeffs: self.coeffs.clone(),
        }
        .serialize(ser)
    }
}

impl<'de, C: Field + Deserialize<'de>> Deserialize<'de> for QSeries<C> {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let j = SeriesJson::<C>::deserialize(de)?;
        if j.order < j.valuation - 1 {
            return Err(serde::de::Error::custom("order below valuation - 1"));
        }
        Ok(QSeries::from_coeffs(j.valuation, j.coeffs, j.order))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Constant, Cyc, Series};

    fn int(n: i64) -> Cyc {
        Cyc::from_int(n)
    }

    fn poly(cs: &[i64], order: i64) -> Series {
        Series::from_coeffs(0, cs.iter().map(|&c| int(c)).collect(), order)
    }

    #[test]
    fn geometric_series() {
        let one_minus_q = poly(&[1, -1], 30);
        let geo = geom_factor_inverse(&Monomial::q_pow(1), 30).unwrap();
        assert!(geo.terms().all(|(_, c)| *c == int(1)));
        assert_eq!(geo.dense().len(), 31);
        let p = one_minus_q.mul(&geo);
        assert_eq!(p, Series::one(30));
        assert_eq!(p.order(), 30);
        assert_eq!(one_minus_q.invert().unwrap(), geo);
    }

    #[test]
    fn small_products() {
        let f = poly(&[1, 1], 10);
        let g = poly(&[1, 1, 1], 10);
        assert_eq!(f.mul(&g), poly(&[1, 2, 2, 1], 10));
        assert!(f.scale(&int(0)).is_zero());
        assert_eq!(f.scale(&int(0)).order(), 10);
    }

    #[test]
    fn mul_order_rule() {
        let f = Series::from_coeffs(-2, vec![int(1), int(3)], 5);
        let g = Series::from_coeffs(3, vec![int(2)], 7);
        let p = f.mul(&g);
        assert_eq!(p.order(), 5);
        assert_eq!(p.valuation(), 1);
        let z = Series::zero(4);
        assert_eq!(z.mul(&g).order(), 7);
    }

    #[test]
    fn laurent_inverse() {
        let f = Series::from_coeffs(1, vec![int(1), int(1)], 20);
        let inv = f.invert().unwrap();
        assert_eq!(inv.valuation(), -1);
        assert_eq!(inv.order(), 20 - 2);
        for n in -1..=18 {
            let expect = if (n + 1) % 2 == 0 { 1 } else { -1 };
            assert_eq!(inv.coeff(n), int(expect));
        }
        assert_eq!(
            Series::zero(5).invert(),
            Err(Error::NonInvertible { order: 5 })
        );
    }

    #[test]
    fn theta_phi_inverse_by_long_division() {
        // 1 + 2q + 2q^4 + 2q^9 + 2q^16 to order 20
        let mut phi = vec![0i64; 21];
        for n in 0..5i64 {
            phi[(n * n) as usize] = if n == 0 { 1 } else { 2 };
        }
        let phi = poly(&phi, 20);
        let inv = phi.invert().unwrap();
        for (n, want) in [1, -2, 4, -8, 14].iter().enumerate() {
            assert_eq!(inv.coeff(n as i64), int(*want));
        }
        assert_eq!(phi.mul(&inv), Series::one(20));
    }

    #[test]
    fn substitution_and_twist() {
        let f = poly(&[1, 1], 5);
        let s = f.subst_q_power(4);
        assert_eq!(s.order(), 23);
        assert_eq!(s, Series::from_terms([(0, int(1)), (4, int(1))], 23));
        assert!(Series::zero(3).subst_q_power(2).is_zero());
        let tw = f.twist(&int(1));
        assert_eq!(tw, f);
        let i = Cyc::embed(Constant::I);
        let g = poly(&[1, 2, 3, 4, 5], 8);
        assert_eq!(g.twist(&i).twist(&i), g.twist(&int(-1)));
    }

    #[test]
    fn geom_factor_variants() {
        let c = geom_factor_inverse(&Monomial::scalar(int(2)).unwrap(), 6).unwrap();
        assert_eq!(c, Series::constant(int(-1), 6));
        let neg = geom_factor_inverse(&Monomial::<Cyc>::q_pow(-1), 6).unwrap();
        assert_eq!(neg.order(), 6);
        assert_eq!(neg.valuation(), 1);
        assert!(neg.terms().all(|(_, c)| *c == int(-1)));
        assert!(matches!(
            geom_factor_inverse(&Monomial::<Cyc>::q_pow(0), 6),
            Err(Error::PoleAtFactor(_))
        ));
    }

    #[test]
    fn euler_product() {
        let e = pochhammer_inf(&Monomial::q_pow(1), 1, 12).unwrap();
        let want = Series::from_terms(
            [(0, 1), (1, -1), (2, -1), (5, 1), (7, 1), (12, -1)].map(|(e, c)| (e, int(c))),
            12,
        );
        assert_eq!(e, want);
        let late = pochhammer_inf(&Monomial::q_pow(20), 1, 12).unwrap();
        assert_eq!(late, Series::one(12));
        let two = pochhammer_inf(&Monomial::<Cyc>::q_pow(2), 2, 40).unwrap();
        let sub = pochhammer_inf(&Monomial::q_pow(1), 1, 20).unwrap().subst_q_power(2);
        assert_eq!(two.truncate(41), sub.truncate(40));
        assert_eq!(
            pochhammer_inf(&Monomial::<Cyc>::q_pow(-1), 1, 5),
            Err(Error::NegativeExponent(-1))
        );
        assert!(pochhammer_inf(&Monomial::<Cyc>::q_pow(0), 1, 5).unwrap().is_zero());
    }

    #[test]
    fn trinomial_division() {
        let a = Cyc::embed(Constant::Sqrt2);
        let f = Series::one(25).div_trinomial(&a, 3);
        let back = f
            .mul(&Series::from_terms([(0, int(1)), (3, a.clone()), (6, int(1))], 25));
        assert_eq!(back, Series::one(25));
    }

    #[test]
    fn text_and_json_forms() {
        let f = Series::from_terms([(0, int(1)), (1, int(-2)), (3, Cyc::embed(Constant::I))], 4);
        assert_eq!(f.to_string(), "1 - 2·q + i·q^3 + O(q^5)");
        let j = serde_json::to_string(&f).unwrap();
        let back: Series = serde_json::from_str(&j).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.order(), 4);
        assert_eq!(Series::zero(3).to_string(), "0 + O(q^4)");
    }

    #[test]
    fn to_order_recovers_lost_precision() {
        // dividing by q^3(1+q) loses 6 orders
        let s = to_order(10, |w| {
            let d = Series::from_coeffs(3, vec![int(1), int(1)], w);
            Series::one(w).div(&d)
        })
        .unwrap();
        assert_eq!(s.order(), 10);
        assert_eq!(s.valuation(), -3);
    }
}
