//! Theta functions j(x; Q) = (x;Q)_∞(Q/x;Q)_∞(Q;Q)_∞ at monomial arguments.
//!
//! Every theta can be built two independent ways: as the triple product
//! ([`theta_j_product`]) and as the bilateral sum Σ(−1)ᵏQ^{k(k−1)/2}xᵏ
//! ([`theta_j_sum`]). The named specializations (J_{a,m}, J̄_{a,m}, J_m, φ, ψ)
//! sit on top of those.

use crate::error::Result;
use crate::field::Field;
use crate::series::{pochhammer_inf, Monomial, QSeries};

/// The theta j(x; Q) with `x = arg` and base `Q = base_unit·q^modulus`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaSpec<C> {
    pub arg: Monomial<C>,
    pub modulus: i64,
    pub base_unit: C,
}

impl<C: Field> ThetaSpec<C> {
    /// j(x; q^m).
    pub fn new(arg: Monomial<C>, modulus: i64) -> Self {
        assert!(modulus >= 1, "theta modulus must be positive");
        ThetaSpec {
            arg,
            modulus,
            base_unit: C::one(),
        }
    }

    /// j(x; b·q^m) for a nonzero unit `b`, e.g. j(x; −q).
    pub fn with_base_unit(arg: Monomial<C>, modulus: i64, base_unit: C) -> Self {
        assert!(modulus >= 1, "theta modulus must be positive");
        assert!(!base_unit.is_zero(), "theta base unit must be nonzero");
        ThetaSpec {
            arg,
            modulus,
            base_unit,
        }
    }

    fn base(&self) -> Monomial<C> {
        Monomial::new(self.base_unit.clone(), self.modulus).expect("nonzero base unit")
    }
}

fn sign<C: Field>(k: i64) -> C {
    if k.rem_euclid(2) == 0 {
        C::one()
    } else {
        C::one().neg_ref()
    }
}

/// Accumulates ∏ (1 − a·Q^k) over every factor with exponent ≤ `n`.
fn multiply_pochhammer<C: Field>(
    acc: QSeries<C>,
    a: &Monomial<C>,
    base: &Monomial<C>,
    n: i64,
) -> QSeries<C> {
    let mut acc = acc;
    let mut factor = a.clone();
    while factor.exp() <= n {
        if factor.exp() == 0 && factor.coeff().is_one() {
            return QSeries::zero(n);
        }
        acc = acc.mul_binomial(factor.coeff(), factor.exp());
        factor = factor.mul(base);
    }
    acc
}

/// j(x; Q) from the triple product, to order `n`.
///
/// The argument is first brought to `x = Q^s·y` with the q-exponent of `y` in
/// `[0, m)`, using j(Q·y; Q) = −y⁻¹ j(y; Q) repeatedly; the prefactor
/// (−1)^s y^{−s} Q^{−s(s−1)/2} is tracked exactly. A vanishing theta (y = 1)
/// returns the zero series.
pub fn theta_j_product<C: Field>(spec: &ThetaSpec<C>, n: i64) -> QSeries<C> {
    let m = spec.modulus;
    let base = spec.base();
    let e = spec.arg.exp();
    let s = e.div_euclid(m);
    let y = spec.arg.mul(&base.pow(-s));
    let prefactor = y.pow(-s).mul(&base.pow(-(s * (s - 1) / 2))).scale(&sign::<C>(s)).expect("unit");
    let inner = n - prefactor.exp();

    let acc = QSeries::one(inner);
    let acc = multiply_pochhammer(acc, &y, &base, inner);
    let acc = multiply_pochhammer(acc, &base.mul(&y.inv()), &base, inner);
    let acc = multiply_pochhammer(acc, &base, &base, inner);
    acc.mul_mono(&prefactor)
}

/// j(x; Q) from the bilateral sum, to order `n`.
///
/// The exponent m·k(k−1)/2 + e·k is convex in k, so the walk in each
/// direction stops once it exceeds `n` and is still increasing.
pub fn theta_j_sum<C: Field>(spec: &ThetaSpec<C>, n: i64) -> QSeries<C> {
    let m = spec.modulus;
    let e = spec.arg.exp();
    let exponent = |k: i64| m * k * (k - 1) / 2 + e * k;
    let term = |k: i64| -> (i64, C) {
        let tri = k * (k - 1) / 2;
        let c = sign::<C>(k)
            .mul_ref(&spec.base_unit.pow_i(tri).expect("unit"))
            .mul_ref(&spec.arg.coeff().pow_i(k).expect("nonzero"));
        (exponent(k), c)
    };
    let mut terms = Vec::new();
    for dir in [1i64, -1] {
        let mut k = if dir == 1 { 0 } else { -1 };
        loop {
            let ex = exponent(k);
            if ex > n && exponent(k + dir) > ex {
                break;
            }
            if ex <= n {
                terms.push(term(k));
            }
            k += dir;
        }
    }
    QSeries::from_terms(terms, n)
}

/// j(x; Q). Uses the bilateral sum, which needs only O(√n) terms; the
/// product form agrees with it by the triple product identity.
pub fn theta_j<C: Field>(spec: &ThetaSpec<C>, n: i64) -> QSeries<C> {
    theta_j_sum(spec, n)
}

/// j(c·q^e; q^m).
pub fn jtheta<C: Field>(c: C, e: i64, m: i64, n: i64) -> QSeries<C> {
    theta_j(&ThetaSpec::new(Monomial::new(c, e).expect("nonzero theta argument"), m), n)
}

/// J_{a,m} = j(q^a; q^m).
pub fn j_am<C: Field>(a: i64, m: i64, n: i64) -> QSeries<C> {
    jtheta(C::one(), a, m, n)
}

/// J̄_{a,m} = j(−q^a; q^m).
pub fn jbar_am<C: Field>(a: i64, m: i64, n: i64) -> QSeries<C> {
    jtheta(C::one().neg_ref(), a, m, n)
}

/// J_m = ∏_{k≥1}(1 − q^{mk}).
pub fn euler_jm<C: Field>(m: i64, n: i64) -> QSeries<C> {
    pochhammer_inf(&Monomial::q_pow(m), m, n).expect("positive exponent")
}

/// φ(q) = Σ_{n∈ℤ} q^{n²}.
pub fn phi<C: Field>(n: i64) -> QSeries<C> {
    let two = C::from_i64(2);
    let terms = (0..)
        .map(|k: i64| k * k)
        .take_while(|&sq| sq <= n)
        .map(|sq| (sq, if sq == 0 { C::one() } else { two.clone() }));
    QSeries::from_terms(terms, n)
}

/// ψ(q) = Σ_{n≥0} q^{n(n+1)/2}.
pub fn psi<C: Field>(n: i64) -> QSeries<C> {
    let terms = (0..)
        .map(|k: i64| k * (k + 1) / 2)
        .take_while(|&t| t <= n)
        .map(|t| (t, C::one()));
    QSeries::from_terms(terms, n)
}

/// φ(q) as the eta quotient J₂⁵/(J₁²J₄²).
pub fn phi_product<C: Field>(n: i64) -> Result<QSeries<C>> {
    let j1 = euler_jm::<C>(1, n);
    let j2 = euler_jm::<C>(2, n);
    let j4 = euler_jm::<C>(4, n);
    j2.pow(5)?.div(&j1.pow(2)?.mul(&j4.pow(2)?))
}

/// ψ(q) as the eta quotient J₂²/J₁.
pub fn psi_product<C: Field>(n: i64) -> Result<QSeries<C>> {
    let j1 = euler_jm::<C>(1, n);
    let j2 = euler_jm::<C>(2, n);
    j2.pow(2)?.div(&j1)
}
