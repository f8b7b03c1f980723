//! Integer partitions and Dyson's rank, counted directly.
//!
//! This module does not use the series engine: the rank generating function
//! is expanded over plain integers so it can serve as an independent check on
//! G(x, q).

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::series::QSeries;

/// Largest n accepted by [`enumerate`], [`rank_counts`] and [`rank_gf`].
pub const MAX_N: i64 = 40;

fn check_bound(n: i64) -> Result<()> {
    if (0..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(Error::OutOfRange { what: "partition size", value: n, min: 0, max: MAX_N })
    }
}

/// A partition stored as weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Sorts the parts; zero parts are dropped.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Largest part minus number of parts; 0 for the empty partition.
    pub fn rank(&self) -> i64 {
        self.largest() as i64 - self.len() as i64
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "()");
        }
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join("+"))
    }
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn enumerate(n: i64) -> Result<Vec<Partition>> {
    check_bound(n)?;
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill(n as u32, n as u32, &mut cur, &mut out);
    Ok(out)
}

fn fill(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition { parts: cur.clone() });
        return;
    }
    for p in (1..=max.min(rest)).rev() {
        cur.push(p);
        fill(rest - p, p, cur, out);
        cur.pop();
    }
}

pub fn rank(p: &Partition) -> i64 {
    p.rank()
}

/// N(m, n) for every m with a nonzero count.
pub fn rank_counts(n: i64) -> Result<BTreeMap<i64, u64>> {
    let mut counts = BTreeMap::new();
    for p in enumerate(n)? {
        *counts.entry(p.rank()).or_insert(0) += 1;
    }
    Ok(counts)
}

/// A Laurent polynomial in x with nonnegative integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RankPolynomial {
    coeffs: BTreeMap<i64, u64>,
}

impl RankPolynomial {
    pub fn from_map(mut coeffs: BTreeMap<i64, u64>) -> Self {
        coeffs.retain(|_, c| *c != 0);
        RankPolynomial { coeffs }
    }

    pub fn coeff(&self, m: i64) -> u64 {
        self.coeffs.get(&m).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.coeffs.iter().map(|(&m, &c)| (m, c))
    }

    pub fn as_map(&self) -> &BTreeMap<i64, u64> {
        &self.coeffs
    }

    /// Value at x = 1.
    pub fn total(&self) -> u64 {
        self.coeffs.values().sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.terms().all(|(m, c)| self.coeff(-m) == c)
    }

    /// Value at x = c; needs c invertible when negative powers occur.
    pub fn eval<C: Field>(&self, c: &C) -> Option<C> {
        let mut acc = C::zero();
        for (m, k) in self.terms() {
            let t = c.pow_i(m)?.mul_ref(&C::from_i64(k as i64));
            acc.add_assign_ref(&t);
        }
        Some(acc)
    }
}

impl fmt::Display for RankPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.coeffs.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (*m, *c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (m, 1) => write!(f, "x^{m}")?,
                (1, c) => write!(f, "{c}·x")?,
                (m, c) => write!(f, "{c}·x^{m}")?,
            }
        }
        Ok(())
    }
}

/// Coefficients of q⁰..q^N in Σ q^{n²}/((xq;q)_n(q/x;q)_n), with x formal.
pub fn rank_gf(n_max: i64) -> Result<Vec<RankPolynomial>> {
    check_bound(n_max)?;
    let n = n_max as usize;
    let off = n as i64;
    let width = 2 * n + 1;
    let idx = |m: i64| (m + off) as usize;

    let mut term = vec![vec![0u64; width]; n + 1];
    term[0][idx(0)] = 1;
    let mut total = term.clone();
    let mut k = 1usize;
    while k * k <= n {
        let shift = 2 * k - 1;
        let mut next = vec![vec![0u64; width]; n + 1];
        next[shift..=n].clone_from_slice(&term[..=n - shift]);
        // 1/(1 - x q^k) then 1/(1 - x⁻¹ q^k)
        for e in k..=n {
            for m in 1..width {
                next[e][m] += next[e - k][m - 1];
            }
        }
        for e in k..=n {
            for m in (0..width - 1).rev() {
                next[e][m] += next[e - k][m + 1];
            }
        }
        for (t, s) in total.iter_mut().zip(&next) {
            for (a, b) in t.iter_mut().zip(s) {
                *a += b;
            }
        }
        term = next;
        k += 1;
    }
    Ok(total
        .into_iter()
        .map(|row| {
            RankPolynomial::from_map(
                row.into_iter()
                    .enumerate()
                    .map(|(i, c)| (i as i64 - off, c))
                    .collect(),
            )
        })
        .collect())
}

/// Substitutes x := c into the output of [`rank_gf`].
pub fn specialize<C: Field>(gf: &[RankPolynomial], c: &C) -> Result<QSeries<C>> {
    let order = gf.len() as i64 - 1;
    let mut coeffs = Vec::with_capacity(gf.len());
    for p in gf {
        coeffs.push(p.eval(c).ok_or(Error::ZeroInverse)?);
    }
    Ok(QSeries::from_coeffs(0, coeffs, order))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate(0).unwrap(), vec![Partition::new(vec![])]);
        assert_eq!(enumerate(4).unwrap().len(), 5);
        assert_eq!(enumerate(10).unwrap().len(), 42);
        assert!(matches!(enumerate(41), Err(Error::OutOfRange { .. })));
        assert!(enumerate(-1).is_err());
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&Partition::new(vec![4])), 3);
        assert_eq!(rank(&Partition::new(vec![2, 2])), 0);
        assert_eq!(rank(&Partition::new(vec![1, 2, 1])), -1);
        assert_eq!(Partition::new(vec![1, 2, 1]).to_string(), "2+1+1");
    }

    #[test]
    fn counts_at_four() {
        let c = rank_counts(4).unwrap();
        let want: BTreeMap<i64, u64> = [(3, 1), (1, 1), (0, 1), (-1, 1), (-3, 1)].into();
        assert_eq!(c, want);
        assert_eq!(rank_counts(5).unwrap().values().sum::<u64>(), 7);
    }

    #[test]
    fn generating_function_low_terms() {
        let gf = rank_gf(12).unwrap();
        assert_eq!(gf[0].to_string(), "1");
        assert_eq!(gf[4].to_string(), "x^3 + x + 1 + x^-1 + x^-3");
        for (n, p) in gf.iter().enumerate() {
            assert_eq!(p.as_map(), &rank_counts(n as i64).unwrap());
        }
    }
}
