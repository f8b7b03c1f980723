//! Arithmetic in the cyclotomic field Q(ζ₂₄).
//!
//! Elements are stored in the power basis ζ⁰…ζ⁷, reduced modulo the 24th
//! cyclotomic polynomial Φ₂₄(x) = x⁸ − x⁴ + 1, so two elements are equal iff
//! their coordinates are. Every scalar that shows up in the mock theta
//! identities (i, ω, e^{iπ/4}, √2, √3, 2cos(kπ/12), …) lives here.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// Degree of Q(ζ₂₄) over Q.
pub const DEGREE: usize = 8;

/// Exponents k with gcd(k, 24) = 1; ζ ↦ ζᵏ are the Galois automorphisms.
pub const UNITS_MOD_24: [i64; 8] = [1, 5, 7, 11, 13, 17, 19, 23];

/// An element c₀ + c₁ζ + … + c₇ζ⁷ of Q(ζ₂₄), ζ = e^{2πi/24}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycNum<T> {
    coords: [T; DEGREE],
}

/// Integer coordinates of ζᵏ for k = 0..24.
fn zeta_table() -> &'static [[i64; DEGREE]; 24] {
    static TABLE: OnceLock<[[i64; DEGREE]; 24]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = [[0i64; DEGREE]; 24];
        let mut cur = [0i64; DEGREE];
        cur[0] = 1;
        for row in table.iter_mut() {
            *row = cur;
            // multiply by ζ, folding ζ⁸ = ζ⁴ − 1
            let top = cur[7];
            for i in (1..DEGREE).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = -top;
            cur[4] += top;
        }
        table
    })
}

impl<T: Scalar> CycNum<T> {
    pub fn from_coords(coords: [T; DEGREE]) -> Self {
        CycNum { coords }
    }

    pub fn coords(&self) -> &[T; DEGREE] {
        &self.coords
    }

    pub fn zero() -> Self {
        CycNum {
            coords: std::array::from_fn(|_| T::zero()),
        }
    }

    pub fn one() -> Self {
        Self::from_scalar(T::one())
    }

    pub fn from_scalar(s: T) -> Self {
        let mut z = Self::zero();
        z.coords[0] = s;
        z
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_scalar(T::from_i64(n))
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    /// True when the element lies in Q.
    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(Scalar::is_zero)
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<&T> {
        self.is_rational().then_some(&self.coords[0])
    }

    /// ζᵏ for any integer k.
    pub fn zeta_pow(k: i64) -> Self {
        let row = &zeta_table()[k.rem_euclid(24) as usize];
        CycNum {
            coords: std::array::from_fn(|i| T::from_i64(row[i])),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        CycNum {
            coords: std::array::from_fn(|i| self.coords[i].add_ref(&other.coords[i])),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        CycNum {
            coords: std::array::from_fn(|i| self.coords[i].sub_ref(&other.coords[i])),
        }
    }

    pub fn neg(&self) -> Self {
        CycNum {
            coords: std::array::from_fn(|i| self.coords[i].neg_ref()),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        CycNum {
            coords: std::array::from_fn(|i| self.coords[i].mul_ref(s)),
        }
    }

    /// `Some((j, r))` when `self = r·ζʲ` with `j < 8`.
    fn single(&self) -> Option<(usize, &T)> {
        let mut it = self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero());
        let first = it.next()?;
        if it.next().is_some() {
            return None;
        }
        Some(first)
    }

    fn mul_single(&self, j: usize, r: &T) -> Self {
        let shifted = self.mul_zeta_pow(j as i64);
        if *r == T::one() {
            shifted
        } else if *r == T::one().neg_ref() {
            shifted.neg()
        } else {
            shifted.scale(r)
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if let Some((j, r)) = other.single() {
            return self.mul_single(j, r);
        }
        if let Some((j, r)) = self.single() {
            return other.mul_single(j, r);
        }
        let mut acc: [T; 2 * DEGREE - 1] = std::array::from_fn(|_| T::zero());
        Self::mul_into(&mut acc, self, other);
        Self::reduce(acc)
    }

    fn mul_into(acc: &mut [T; 2 * DEGREE - 1], a: &Self, b: &Self) {
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                acc[i + j].add_assign_ref(&x.mul_ref(y));
            }
        }
    }

    fn reduce(mut acc: [T; 2 * DEGREE - 1]) -> Self {
        for k in (DEGREE..2 * DEGREE - 1).rev() {
            let v = std::mem::replace(&mut acc[k], T::zero());
            if v.is_zero() {
                continue;
            }
            acc[k - 4].add_assign_ref(&v);
            acc[k - 8].sub_assign_ref(&v);
        }
        let mut it = acc.into_iter();
        CycNum {
            coords: std::array::from_fn(|_| it.next().unwrap()),
        }
    }

    /// `self += a * b` without an intermediate allocation of the product.
    pub fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        if a.single().is_some() || b.single().is_some() {
            let p = a.mul(b);
            for (x, y) in self.coords.iter_mut().zip(p.coords.iter()) {
                x.add_assign_ref(y);
            }
            return;
        }
        let mut acc: [T; 2 * DEGREE - 1] = std::array::from_fn(|i| {
            if i < DEGREE {
                std::mem::replace(&mut self.coords[i], T::zero())
            } else {
                T::zero()
            }
        });
        Self::mul_into(&mut acc, a, b);
        *self = Self::reduce(acc);
    }

    /// Multiplication by ζᵏ, done by basis shifts only.
    pub fn mul_zeta_pow(&self, k: i64) -> Self {
        let mut cur = self.coords.clone();
        for _ in 0..k.rem_euclid(24) {
            let top = std::mem::replace(&mut cur[7], T::zero());
            for i in (1..DEGREE).rev() {
                cur.swap(i, i - 1);
            }
            cur[0] = top.neg_ref();
            cur[4].add_assign_ref(&top);
        }
        CycNum { coords: cur }
    }

    /// The Galois automorphism ζ ↦ ζᵏ; `k` must be coprime to 24.
    pub fn conjugate(&self, k: i64) -> Self {
        debug_assert!(num_integer::gcd(k.rem_euclid(24), 24) == 1);
        let table = zeta_table();
        let mut out = Self::zero();
        for (j, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &table[(j as i64 * k).rem_euclid(24) as usize];
            for (i, &r) in row.iter().enumerate() {
                match r {
                    0 => {}
                    1 => out.coords[i].add_assign_ref(c),
                    -1 => out.coords[i].sub_assign_ref(c),
                    _ => out.coords[i].add_assign_ref(&c.mul_ref(&T::from_i64(r))),
                }
            }
        }
        out
    }

    /// Complex conjugation, i.e. ζ ↦ ζ⁻¹.
    pub fn complex_conjugate(&self) -> Self {
        self.conjugate(23)
    }

    /// Field norm to Q: the product of all eight conjugates.
    pub fn norm(&self) -> T {
        let (_, norm) = self.norm_cofactor();
        norm
    }

    /// Returns (∏_{k≠1} σ_k(a), N(a)), so that a · cofactor = N(a).
    fn norm_cofactor(&self) -> (Self, T) {
        let mut cof = Self::one();
        for &k in &UNITS_MOD_24[1..] {
            cof = cof.mul(&self.conjugate(k));
        }
        let n = self.mul(&cof);
        (cof, n.coords[0].clone())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        if self.is_rational() {
            return Ok(Self::from_scalar(T::one().div_ref(&self.coords[0])));
        }
        let (cof, n) = self.norm_cofactor();
        Ok(cof.scale(&T::one().div_ref(&n)))
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        Field::pow_i(self, n).ok_or(Error::ZeroInverse)
    }

    pub fn embed(c: Constant) -> Self {
        match c {
            Constant::I => Self::zeta_pow(6),
            Constant::Omega => Self::zeta_pow(8),
            Constant::Alpha => Self::zeta_pow(3),
            Constant::Sqrt2 => Self::zeta_pow(3).add(&Self::zeta_pow(-3)),
            Constant::Sqrt3 => Self::zeta_pow(2).add(&Self::zeta_pow(-2)),
            Constant::Zeta(k) => Self::zeta_pow(k),
        }
    }

    /// Looks up a constant by name (`i`, `omega`, `alpha`, `sqrt2`, `sqrt3`,
    /// `zeta^k`, or their Unicode spellings).
    pub fn embed_named(name: &str) -> Result<Self> {
        name.parse::<Constant>().map(Self::embed)
    }

    /// Image under the embedding ζ ↦ e^{2πi/24}.
    pub fn to_complex(&self) -> Complex64
    where
        T: ToPrimitive,
    {
        self.coords
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let angle = 2.0 * std::f64::consts::PI * j as f64 / 24.0;
                Complex64::from_polar(1.0, angle) * c.to_f64().unwrap_or(f64::NAN)
            })
            .sum()
    }
}

impl<T: Scalar> Field for CycNum<T> {
    fn zero() -> Self {
        CycNum::zero()
    }
    fn one() -> Self {
        CycNum::one()
    }
    fn is_zero(&self) -> bool {
        CycNum::is_zero(self)
    }
    fn is_one(&self) -> bool {
        self.is_rational() && self.coords[0] == T::one()
    }
    fn from_i64(n: i64) -> Self {
        CycNum::from_int(n)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn add_assign_ref(&mut self, other: &Self) {
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            if !b.is_zero() {
                a.add_assign_ref(b);
            }
        }
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            if !b.is_zero() {
                a.sub_assign_ref(b);
            }
        }
    }
    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        CycNum::mul_add_assign(self, a, b);
    }
    fn try_inv(&self) -> Option<Self> {
        self.inv().ok()
    }
}

/// Named constants of Q(ζ₂₄).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Constant {
    /// i = ζ⁶
    I,
    /// ω = e^{2πi/3} = ζ⁸
    Omega,
    /// α = e^{iπ/4} = ζ³
    Alpha,
    /// √2 = ζ³ + ζ⁻³
    Sqrt2,
    /// √3 = ζ² + ζ⁻²
    Sqrt3,
    /// ζᵏ = e^{ikπ/12}
    Zeta(i64),
}

impl FromStr for Constant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let c = match s {
            "i" => Constant::I,
            "omega" | "w" | "ω" => Constant::Omega,
            "alpha" | "α" => Constant::Alpha,
            "sqrt2" | "√2" => Constant::Sqrt2,
            "sqrt3" | "√3" => Constant::Sqrt3,
            "zeta" | "ζ" => Constant::Zeta(1),
            _ => {
                let rest = s
                    .strip_prefix("zeta^")
                    .or_else(|| s.strip_prefix("ζ^"))
                    .ok_or_else(|| Error::UnknownConstant(s.to_string()))?;
                let rest = rest.trim_start_matches('(').trim_end_matches(')');
                let k = rest
                    .parse::<i64>()
                    .map_err(|_| Error::UnknownConstant(s.to_string()))?;
                Constant::Zeta(k)
            }
        };
        Ok(c)
    }
}

impl fmt::Display for Constant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constant::I => write!(f, "i"),
            Constant::Omega => write!(f, "ω"),
            Constant::Alpha => write!(f, "α"),
            Constant::Sqrt2 => write!(f, "√2"),
            Constant::Sqrt3 => write!(f, "√3"),
            Constant::Zeta(k) => write!(f, "ζ^{k}"),
        }
    }
}

/// Symbols tried, in order, when rendering an element as `r·s` or `r₀ + r₁·s`.
fn display_symbols<T: Scalar>() -> Vec<(String, CycNum<T>)> {
    let mut out = vec![
        ("i".to_string(), CycNum::embed(Constant::I)),
        ("√2".to_string(), CycNum::embed(Constant::Sqrt2)),
        ("√3".to_string(), CycNum::embed(Constant::Sqrt3)),
        ("ω".to_string(), CycNum::embed(Constant::Omega)),
        ("ω²".to_string(), CycNum::zeta_pow(16)),
        ("α".to_string(), CycNum::embed(Constant::Alpha)),
        ("√2·i".to_string(), CycNum::embed(Constant::Sqrt2).mul(&CycNum::zeta_pow(6))),
        ("√3·i".to_string(), CycNum::embed(Constant::Sqrt3).mul(&CycNum::zeta_pow(6))),
    ];
    for k in 1..24 {
        if matches!(k, 3 | 6 | 8 | 16) {
            continue;
        }
        out.push((format!("ζ^{k}"), CycNum::zeta_pow(k)));
    }
    out
}

fn fmt_scalar<T: Scalar + fmt::Display>(s: &T) -> String {
    s.to_string()
}

fn is_negative<T: Scalar>(s: &T) -> bool {
    s.abs_ref() != *s
}

impl<T: Scalar + fmt::Display> CycNum<T> {
    /// Splits `self = r₀ + r₁·s` over a known symbol `s`, if possible.
    fn split_over(&self, s: &Self) -> Option<(T, T)> {
        let j = (1..DEGREE).find(|&j| !s.coords[j].is_zero())?;
        let r1 = self.coords[j].div_ref(&s.coords[j]);
        let rest = self.sub(&s.scale(&r1));
        rest.is_rational().then(|| (rest.coords[0].clone(), r1))
    }

    fn symbolic(&self) -> String {
        if let Some(r) = self.as_rational() {
            return fmt_scalar(r);
        }
        let symbols = display_symbols::<T>();
        let splits = symbols
            .iter()
            .filter_map(|(name, s)| self.split_over(s).map(|parts| (name, parts)));
        let pure = splits.clone().find(|(_, (r0, _))| r0.is_zero());
        if let Some((name, (r0, r1))) = pure.or_else(|| splits.clone().next()) {
            {
                let term = if r1 == T::one() {
                    name.to_string()
                } else if r1 == T::one().neg_ref() {
                    format!("-{name}")
                } else {
                    format!("{}·{name}", fmt_scalar(&r1))
                };
                if r0.is_zero() {
                    return term;
                }
                let (sign, body) = match term.strip_prefix('-') {
                    Some(b) => ("-", b.to_string()),
                    None => ("+", term),
                };
                return format!("{} {sign} {body}", fmt_scalar(&r0));
            }
        }
        let mut parts = Vec::new();
        for (j, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = is_negative(c);
            let mag = c.abs_ref();
            let body = match (j, mag == T::one()) {
                (0, _) => fmt_scalar(&mag),
                (1, true) => "ζ".to_string(),
                (_, true) => format!("ζ^{j}"),
                (1, false) => format!("{}·ζ", fmt_scalar(&mag)),
                (_, false) => format!("{}·ζ^{j}", fmt_scalar(&mag)),
            };
            parts.push((neg, body));
        }
        let mut out = String::new();
        for (idx, (neg, body)) in parts.into_iter().enumerate() {
            match (idx, neg) {
                (0, true) => out.push_str(&format!("-{body}")),
                (0, false) => out.push_str(&body),
                (_, true) => out.push_str(&format!(" - {body}")),
                (_, false) => out.push_str(&format!(" + {body}")),
            }
        }
        out
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for CycNum<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.symbolic())
    }
}

fn rational_to_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn rational_from_str(s: &str) -> std::result::Result<BigRational, String> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| format!("bad numerator in `{s}`"))?;
    let d: BigInt = d.parse().map_err(|_| format!("bad denominator in `{s}`"))?;
    if num_traits::Zero::is_zero(&d) {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(BigRational::new(n, d))
}

impl Serialize for CycNum<BigRational> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<String> = self.coords.iter().map(rational_to_string).collect();
        strs.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for CycNum<BigRational> {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let strs = Vec::<String>::deserialize(de)?;
        if strs.len() != DEGREE {
            return Err(D::Error::invalid_length(strs.len(), &"8 rational strings"));
        }
        let mut coords = Vec::with_capacity(DEGREE);
        for s in &strs {
            coords.push(rational_from_str(s).map_err(D::Error::custom)?);
        }
        let mut it = coords.into_iter();
        Ok(CycNum {
            coords: std::array::from_fn(|_| it.next().unwrap()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Cyc;

    fn z(k: i64) -> Cyc {
        Cyc::zeta_pow(k)
    }

    fn int(n: i64) -> Cyc {
        Cyc::from_int(n)
    }

    #[test]
    fn zeta_powers_reduce() {
        assert_eq!(z(0), int(1));
        assert_eq!(z(24), int(1));
        assert_eq!(z(-24), int(1));
        assert_eq!(z(8), z(4).sub(&int(1)));
        assert_eq!(z(12), int(-1));
        for a in -30..30 {
            for b in -3..27 {
                assert_eq!(z(a).mul(&z(b)), z(a + b));
            }
        }
    }

    #[test]
    fn named_constants() {
        let i = Cyc::embed(Constant::I);
        assert_eq!(i.mul(&i), int(-1));
        let r2 = Cyc::embed(Constant::Sqrt2);
        assert_eq!(r2.mul(&r2), int(2));
        let r3 = Cyc::embed(Constant::Sqrt3);
        assert_eq!(r3.mul(&r3), int(3));
        let a = Cyc::embed(Constant::Alpha);
        assert_eq!(a.mul(&a), i);
        let w = Cyc::embed(Constant::Omega);
        assert_eq!(w.pow(3).unwrap(), int(1));
        assert_eq!(int(1).add(&w).add(&w.mul(&w)), int(0));
        assert_eq!(z(3).add(&z(21)), r2);
    }

    #[test]
    fn sqrt3_matches_float_value() {
        let r3 = Cyc::embed(Constant::Sqrt3).to_complex();
        assert!((r3.re - 2.0 * (std::f64::consts::PI / 6.0).cos()).abs() < 1e-15);
        assert!(r3.im.abs() < 1e-15);
    }

    #[test]
    fn unknown_names_are_rejected() {
        assert_eq!(
            Cyc::embed_named("pi"),
            Err(Error::UnknownConstant("pi".into()))
        );
        assert_eq!(Cyc::embed_named("zeta^5").unwrap(), z(5));
        assert_eq!(Cyc::embed_named("ζ^-2").unwrap(), z(-2));
    }

    #[test]
    fn inverses() {
        let i = Cyc::embed(Constant::I);
        let one_plus_i = int(1).add(&i);
        let half = Cyc::from_scalar(BigRational::new(1.into(), 2.into()));
        assert_eq!(one_plus_i.inv().unwrap(), int(1).sub(&i).mul(&half));
        for k in -5..30 {
            assert_eq!(z(k).inv().unwrap(), z(-k));
        }
        assert_eq!(Cyc::zero().inv(), Err(Error::ZeroInverse));
    }

    #[test]
    fn conjugation_is_a_homomorphism() {
        let a = z(1).add(&int(3)).sub(&z(5).scale(&BigRational::new(2.into(), 7.into())));
        let b = z(2).add(&z(7));
        for &k in &UNITS_MOD_24 {
            assert_eq!(a.mul(&b).conjugate(k), a.conjugate(k).mul(&b.conjugate(k)));
        }
        assert!(Cyc::from_coords(std::array::from_fn(|_| BigRational::from_integer(0.into()))).is_zero());
    }

    #[test]
    fn display_uses_symbols() {
        assert_eq!(Cyc::embed(Constant::I).to_string(), "i");
        assert_eq!(int(1).sub(&Cyc::embed(Constant::I)).to_string(), "1 - i");
        assert_eq!(Cyc::embed(Constant::Sqrt3).scale(&BigRational::new(2.into(), 3.into())).to_string(), "2/3·√3");
        assert_eq!(int(-5).to_string(), "-5");
        assert_eq!(z(16).to_string(), "ω²");
        assert_eq!(int(1).add(&Cyc::embed(Constant::Alpha)).to_string(), "1 + α");
    }

    #[test]
    fn json_form() {
        let x = int(1).sub(&z(5).scale(&BigRational::new(3.into(), (-6).into())));
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"["1/1","0/1","0/1","0/1","0/1","1/2","0/1","0/1"]"#);
        let back: Cyc = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<Cyc>(r#"["1/0","0","0","0","0","0","0","0"]"#).is_err());
        assert!(serde_json::from_str::<Cyc>(r#"["1"]"#).is_err());
    }

    #[test]
    fn float_coordinates_work_too() {
        let a = crate::CycF64::zeta_pow(5).add(&crate::CycF64::from_int(2));
        let p = a.mul(&a.inv().unwrap());
        assert!((p.coords()[0] - 1.0).abs() < 1e-12);
        for c in &p.coords()[1..] {
            assert!(c.abs() < 1e-12);
        }
    }
}
