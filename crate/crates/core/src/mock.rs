//! Mock theta layer: the universal mock theta function g(x; q), the rank
//! generating function G(x, q), Ramanujan's f_a(q) and φ̃(q), Appell–Lerch
//! sums m(x, q, z), and the right-hand sides of the transformation formulas
//! for g.
//!
//! Arguments are monomials `c·q^e`. Every sum is cut where the guaranteed
//! valuation of the omitted terms exceeds the requested order, and every
//! factor that would vanish identically is reported as
//! [`Error::PoleAtFactor`].

use crate::error::{Error, Result};
use crate::field::Field;
use crate::series::{to_order, Monomial, QSeries};
use crate::thetas::{euler_jm, j_am, theta_j, ThetaSpec};

/// Parameters of an Appell–Lerch sum m(x, q^modulus, z).
#[derive(Clone, Debug, PartialEq)]
pub struct AppellSpec<C> {
    pub x: Monomial<C>,
    pub z: Monomial<C>,
    pub modulus: i64,
}

impl<C: Field> AppellSpec<C> {
    pub fn new(x: Monomial<C>, z: Monomial<C>) -> Self {
        AppellSpec { x, z, modulus: 1 }
    }

    pub fn with_modulus(x: Monomial<C>, z: Monomial<C>, modulus: i64) -> Self {
        assert!(modulus >= 1, "Appell–Lerch base modulus must be positive");
        AppellSpec { x, z, modulus }
    }
}

fn theta<C: Field>(x: &Monomial<C>, m: i64, n: i64) -> QSeries<C> {
    theta_j(&ThetaSpec::new(x.clone(), m), n)
}

fn inv_coeff<C: Field>(x: &Monomial<C>) -> C {
    x.coeff().try_inv().expect("monomial coefficient is nonzero")
}

/// g(x; q) = x⁻¹(−1 + Σ_{n≥0} q^{n²}/((x;q)_{n+1}(q/x;q)_n)).
pub fn g_mock<C: Field>(x: &Monomial<C>, n: i64) -> Result<QSeries<C>> {
    g_mock_base(x, 1, n)
}

/// g(x; q^m) for a monomial `x = c·q^e`.
///
/// A Pochhammer factor vanishes exactly when `c = 1` and `m | e`.
pub fn g_mock_base<C: Field>(x: &Monomial<C>, m: i64, n: i64) -> Result<QSeries<C>> {
    assert!(m >= 1);
    let (c, e) = (x.coeff(), x.exp());
    if c.is_one() && e.rem_euclid(m) == 0 {
        let k = if e <= 0 { -e / m } else { e / m - 1 };
        let which = if e <= 0 { "(x; q^m)_{n+1}" } else { "(q^m/x; q^m)_n" };
        return Err(Error::PoleAtFactor(format!(
            "g(x; q^{m}) at x = q^{e}: factor k = {k} of {which} vanishes"
        )));
    }
    let ci = inv_coeff(x);
    let w = n + e;
    let mut term = QSeries::one(w).div_binomial(c, e)?.truncate(w);
    let mut sum = term.clone();
    let mut k = 1i64;
    while m * k * k <= w {
        term = term
            .mul_monomial(&C::one(), m * (2 * k - 1))
            .truncate(w)
            .div_binomial(c, e + m * k)?
            .div_binomial(&ci, m * k - e)?
            .truncate(w);
        sum = sum.add(&term);
        k += 1;
    }
    Ok(sum.sub(&QSeries::one(w)).mul_monomial(&ci, -e))
}

/// Dyson's rank generating function G(x, q) = Σ q^{n²}/((xq;q)_n(q/x;q)_n).
pub fn g_rank<C: Field>(x: &Monomial<C>, n: i64) -> Result<QSeries<C>> {
    g_rank_base(x, 1, n)
}

/// G(x, q^m) for a monomial `x = c·q^e`.
pub fn g_rank_base<C: Field>(x: &Monomial<C>, m: i64, n: i64) -> Result<QSeries<C>> {
    assert!(m >= 1);
    let (c, e) = (x.coeff(), x.exp());
    if c.is_one() && e != 0 && e.rem_euclid(m) == 0 {
        return Err(Error::PoleAtFactor(format!(
            "G(x, q^{m}) at x = q^{e}: factor k = {} vanishes",
            e.abs() / m
        )));
    }
    let ci = inv_coeff(x);
    let mut term = QSeries::one(n);
    let mut sum = term.clone();
    let mut k = 1i64;
    while m * k * k <= n {
        term = term
            .mul_monomial(&C::one(), m * (2 * k - 1))
            .truncate(n)
            .div_binomial(c, e + m * k)?
            .div_binomial(&ci, m * k - e)?
            .truncate(n);
        sum = sum.add(&term);
        k += 1;
    }
    Ok(sum)
}

/// f_a(q) = Σ q^{n²}/∏_{k=1}^{n}(1 + a·q^k + q^{2k}).
pub fn f_a<C: Field>(a: &C, n: i64) -> QSeries<C> {
    let mut term = QSeries::one(n);
    let mut sum = term.clone();
    let mut k = 1i64;
    while k * k <= n {
        term = term
            .mul_monomial(&C::one(), 2 * k - 1)
            .truncate(n)
            .div_trinomial(a, k);
        sum = sum.add(&term);
        k += 1;
    }
    sum
}

/// The third order mock theta function φ̃(q) = Σ q^{n²}/(−q²;q²)_n.
pub fn phi_tilde<C: Field>(n: i64) -> QSeries<C> {
    let minus_one = C::one().neg_ref();
    let mut term = QSeries::one(n);
    let mut sum = term.clone();
    let mut k = 1i64;
    while k * k <= n {
        term = term
            .mul_monomial(&C::one(), 2 * k - 1)
            .truncate(n)
            .div_binomial(&minus_one, 2 * k)
            .expect("positive exponent");
        sum = sum.add(&term);
        k += 1;
    }
    sum
}

/// The bilateral numerator Σ_r (−1)^r Q^{r(r−1)/2} z^r / (1 − Q^{r−1}xz) to
/// order `w`, walking `extra` further steps past the cutoff in each
/// direction.
fn appell_numerator<C: Field>(spec: &AppellSpec<C>, w: i64, extra: usize) -> Result<QSeries<C>> {
    let m = spec.modulus;
    let (cz, ez) = (spec.z.coeff(), spec.z.exp());
    let xz = spec.x.mul(&spec.z);
    let (cxz, exz) = (xz.coeff().clone(), xz.exp());
    if cxz.is_one() && exz.rem_euclid(m) == 0 {
        let r = 1 - exz / m;
        return Err(Error::PoleAtFactor(format!(
            "Appell–Lerch denominator 1 - q^{{{m}(r-1)}}xz vanishes at r = {r}"
        )));
    }
    let denom_exp = |r: i64| m * (r - 1) + exz;
    let num_exp = |r: i64| m * r * (r - 1) / 2 + ez * r;
    let val = |r: i64| num_exp(r) + (-denom_exp(r)).max(0);
    let cxz_inv = cxz.try_inv().expect("nonzero");

    let mut terms: Vec<(i64, C)> = Vec::new();
    let mut push_term = |r: i64| {
        let sign = if r.rem_euclid(2) == 0 { C::one() } else { C::one().neg_ref() };
        let s = sign.mul_ref(&cz.pow_i(r).expect("nonzero"));
        let a = num_exp(r);
        let d = denom_exp(r);
        match d.signum() {
            1 => {
                let mut p = s;
                let mut ex = a;
                while ex <= w {
                    terms.push((ex, p.clone()));
                    p = p.mul_ref(&cxz);
                    ex += d;
                }
            }
            -1 => {
                let mut p = s.neg_ref().mul_ref(&cxz_inv);
                let mut ex = a - d;
                while ex <= w {
                    terms.push((ex, p.clone()));
                    p = p.mul_ref(&cxz_inv);
                    ex -= d;
                }
            }
            _ => {
                if a <= w {
                    let geom = C::one().sub_ref(&cxz).try_inv().expect("pole excluded above");
                    terms.push((a, s.mul_ref(&geom)));
                }
            }
        }
    };
    for dir in [1i64, -1] {
        let mut r = if dir == 1 { 0 } else { -1 };
        let mut past = None;
        loop {
            if past.is_none() && val(r) > w && val(r + dir) >= val(r) {
                past = Some(0usize);
            }
            if let Some(p) = past.as_mut() {
                if *p >= extra {
                    break;
                }
                *p += 1;
            }
            push_term(r);
            r += dir;
        }
    }
    Ok(QSeries::from_terms(terms, w))
}

/// The Appell–Lerch sum m(x, q^M, z) = j(z; q^M)⁻¹ Σ_r (−1)^r q^{M r(r−1)/2} z^r / (1 − q^{M(r−1)}xz).
pub fn appell_m<C: Field>(spec: &AppellSpec<C>, n: i64) -> Result<QSeries<C>> {
    appell_m_windowed(spec, n, 0)
}

/// [`appell_m`] with the summation window widened by `extra` terms on each
/// side; the result must not depend on `extra`.
pub fn appell_m_windowed<C: Field>(spec: &AppellSpec<C>, n: i64, extra: usize) -> Result<QSeries<C>> {
    to_order(n, |w| {
        let num = appell_numerator(spec, w, extra)?;
        let norm = theta(&spec.z, spec.modulus, w);
        num.div(&norm)
    })
}

/// The right side of Ramanujan's quartic transformation of g:
/// −x⁻¹ + q x⁻³ g(−q x⁻²; q⁴) − q g(−q x²; q⁴) + J₂J²_{2,4}/(x j(x;q) j(−q x²; q²)).
pub fn quartic_transform_rhs<C: Field>(x: &Monomial<C>, n: i64) -> Result<QSeries<C>> {
    let minus_q = Monomial::new(C::one().neg_ref(), 1).expect("nonzero");
    to_order(n, |w| {
        let xi = x.inv();
        let t1 = xi.neg().to_series(w);
        let t2 = g_mock_base(&minus_q.mul(&xi.pow(2)), 4, w)?.mul_mono(&Monomial::q_pow(1).mul(&xi.pow(3)));
        let t3 = g_mock_base(&minus_q.mul(&x.pow(2)), 4, w)?.mul_mono(&minus_q);
        let j2 = euler_jm::<C>(2, w);
        let j24 = j_am::<C>(2, 4, w);
        let den = theta(x, 1, w).mul(&theta(&minus_q.mul(&x.pow(2)), 2, w)).mul_mono(x);
        let t4 = j2.mul(&j24.mul(&j24)).div(&den)?;
        Ok(t1.add(&t2).add(&t3).add(&t4))
    })
}

/// The two Appell–Lerch terms −x⁻² m(q x⁻³, q³, w) − x⁻¹ m(q² x⁻³, q³, w).
fn appell_pair<C: Field>(x: &Monomial<C>, w_arg: &Monomial<C>, n: i64) -> Result<QSeries<C>> {
    let x3i = x.pow(-3);
    let m1 = appell_m(&AppellSpec::with_modulus(x3i.shift(1), w_arg.clone(), 3), n)?;
    let m2 = appell_m(&AppellSpec::with_modulus(x3i.shift(2), w_arg.clone(), 3), n)?;
    Ok(m1.mul_mono(&x.pow(-2)).add(&m2.mul_mono(&x.inv())).neg())
}

/// Right side of the Appell–Lerch representation of g:
/// −x⁻²m(qx⁻³,q³,x³z) − x⁻¹m(q²x⁻³,q³,x³z) + J₁² j(xz;q) j(z;q³)/(j(x;q) j(z;q) j(x³z;q³)).
pub fn appell_lerch_rhs<C: Field>(x: &Monomial<C>, z: &Monomial<C>, n: i64) -> Result<QSeries<C>> {
    let x3z = x.pow(3).mul(z);
    to_order(n, |w| {
        let pair = appell_pair(x, &x3z, w)?;
        let j1 = euler_jm::<C>(1, w);
        let num = j1.mul(&j1).mul(&theta(&x.mul(z), 1, w)).mul(&theta(z, 3, w));
        let den = theta(x, 1, w).mul(&theta(z, 1, w)).mul(&theta(&x3z, 3, w));
        Ok(pair.add(&num.div(&den)?))
    })
}

/// The z = 1 case: −x⁻²m(qx⁻³,q³,x³) − x⁻¹m(q²x⁻³,q³,x³) + J₃³/(J₁ j(x³;q³)).
pub fn appell_lerch_rhs_z1<C: Field>(x: &Monomial<C>, n: i64) -> Result<QSeries<C>> {
    let x3 = x.pow(3);
    to_order(n, |w| {
        let pair = appell_pair(x, &x3, w)?;
        let j3 = euler_jm::<C>(3, w);
        let den = euler_jm::<C>(1, w).mul(&theta(&x3, 3, w));
        Ok(pair.add(&j3.pow(3)?.div(&den)?))
    })
}

/// Both sides of the Appell–Lerch representation: (g(x; q), right side).
pub fn appell_lerch_expr<C: Field>(
    x: &Monomial<C>,
    z: &Monomial<C>,
    n: i64,
) -> Result<(QSeries<C>, QSeries<C>)> {
    Ok((g_mock(x, n)?, appell_lerch_rhs(x, z, n)?))
}

/// (1 − x)(x·g(x;q) + 1), which equals G(x, q).
pub fn rank_from_g<C: Field>(x: &Monomial<C>, n: i64) -> Result<QSeries<C>> {
    to_order(n, |w| {
        let one = QSeries::one(w);
        let g = g_mock(x, w)?;
        Ok(one.sub(&x.to_series(w)).mul(&g.mul_mono(x).add(&one)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Constant, Cyc, Mono, Series};
    use num_rational::BigRational;

    fn int(n: i64) -> Cyc {
        Cyc::from_int(n)
    }

    fn sc(c: Cyc) -> Mono {
        Monomial::scalar(c).unwrap()
    }

    #[test]
    fn g_at_minus_one_constant_term() {
        let g = g_mock(&sc(int(-1)), 10).unwrap();
        let half = Cyc::from_scalar(BigRational::new(1.into(), 2.into()));
        assert_eq!(g.coeff(0), half);
        assert_eq!(g.order(), 10);
    }

    #[test]
    fn g_rank_at_one_counts_partitions() {
        let g = g_rank(&sc(int(1)), 6).unwrap();
        for (n, p) in [1, 1, 2, 3, 5, 7, 11].iter().enumerate() {
            assert_eq!(g.coeff(n as i64), int(*p));
        }
    }

    #[test]
    fn constant_terms_are_one() {
        for k in [1, 2, 5, 9, 13] {
            let x = sc(Cyc::zeta_pow(k));
            assert_eq!(g_rank(&x, 8).unwrap().coeff(0), int(1));
            assert_eq!(f_a(&Cyc::zeta_pow(k), 8).coeff(0), int(1));
        }
    }

    #[test]
    fn phi_tilde_is_f0_and_g_at_i() {
        let n = 50;
        let pt = phi_tilde::<Cyc>(n);
        assert_eq!(f_a(&int(0), n), pt);
        assert_eq!(g_rank(&sc(Cyc::embed(Constant::I)), n).unwrap(), pt);
    }

    #[test]
    fn poles_are_reported() {
        assert!(matches!(g_mock(&sc(int(1)), 10), Err(Error::PoleAtFactor(_))));
        assert!(matches!(
            g_mock(&Monomial::<Cyc>::q_pow(2), 10),
            Err(Error::PoleAtFactor(_))
        ));
        assert!(matches!(
            g_rank(&Monomial::<Cyc>::q_pow(-1), 10),
            Err(Error::PoleAtFactor(_))
        ));
        assert!(g_rank(&Monomial::<Cyc>::q_pow(0), 10).is_ok());
        let spec = AppellSpec::new(Monomial::q_pow(1), Monomial::scalar(int(1)).unwrap());
        assert!(matches!(appell_m(&spec, 10), Err(Error::PoleAtFactor(_))));
        // j(z; q) = 0 at z = q
        let spec = AppellSpec::new(sc(Cyc::zeta_pow(1)), Monomial::q_pow(1));
        assert!(matches!(appell_m(&spec, 10), Err(Error::NonInvertible { .. })));
    }

    #[test]
    fn rank_relation() {
        for k in [1, 2, 3, 6, 15, 14] {
            let x = sc(Cyc::zeta_pow(k));
            assert_eq!(rank_from_g(&x, 30).unwrap(), g_rank(&x, 30).unwrap(), "k = {k}");
        }
    }

    #[test]
    fn appell_window_is_stable() {
        let spec = AppellSpec::with_modulus(
            Monomial::new(Cyc::zeta_pow(-6), 1).unwrap(),
            sc(Cyc::zeta_pow(6)),
            3,
        );
        let a = appell_m_windowed(&spec, 30, 0).unwrap();
        let b = appell_m_windowed(&spec, 30, 6).unwrap();
        assert_eq!(a.order(), 30);
        assert_eq!(a, b);
    }

    #[test]
    fn quartic_transform_at_alpha() {
        let x = sc(Cyc::embed(Constant::Alpha));
        let lhs = g_mock(&x, 20).unwrap();
        let rhs = quartic_transform_rhs(&x, 20).unwrap();
        assert_eq!(lhs.first_mismatch(&rhs, 20), None);
    }

    #[test]
    fn appell_lerch_small() {
        let x = sc(Cyc::zeta_pow(2));
        let z = sc(Cyc::zeta_pow(1));
        let (l, r) = appell_lerch_expr(&x, &z, 15).unwrap();
        assert_eq!(l.first_mismatch(&r, 15), None);
        let r1 = appell_lerch_rhs_z1(&x, 15).unwrap();
        assert_eq!(l.first_mismatch(&r1, 15), None);
        let _: Series = r1;
    }
}
