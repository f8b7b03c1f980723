//! The identity catalogue and the engine that checks it.
//!
//! An [`IdentityCheck`] pairs two series builders. [`run_check`] evaluates
//! both to the requested order and compares them coefficient by coefficient;
//! it never panics and never returns an error, turning every failure into a
//! [`CheckReport`].

use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::mock::{
    appell_lerch_rhs, appell_lerch_rhs_z1, f_a, g_mock, g_mock_base, g_rank, phi_tilde,
    quartic_transform_rhs, rank_from_g,
};
use crate::series::{pochhammer_inf, to_order, Monomial};
use crate::thetas::{
    euler_jm, j_am, jbar_am, phi, phi_product, psi, psi_product, theta_j, theta_j_product,
    theta_j_sum, ThetaSpec,
};
use crate::{Constant, Cyc, Mono, Series};

pub type Builder = Arc<dyn Fn(i64) -> Result<Series> + Send + Sync>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Group {
    Prelim,
    Props,
    Entry(u8),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    All,
    Prelim,
    Props,
    Entries,
    Entry(u8),
}

impl Suite {
    pub fn contains(self, g: Group) -> bool {
        match (self, g) {
            (Suite::All, _) => true,
            (Suite::Prelim, Group::Prelim) | (Suite::Props, Group::Props) => true,
            (Suite::Entries, Group::Entry(_)) => true,
            (Suite::Entry(a), Group::Entry(b)) => a == b,
            _ => false,
        }
    }

    pub const NAMES: [&'static str; 8] =
        ["all", "prelim", "props", "entries", "entry1", "entry2", "entry3", "entry4"];
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "all" => Suite::All,
            "prelim" => Suite::Prelim,
            "props" => Suite::Props,
            "entries" => Suite::Entries,
            "entry1" => Suite::Entry(1),
            "entry2" => Suite::Entry(2),
            "entry3" => Suite::Entry(3),
            "entry4" => Suite::Entry(4),
            _ => {
                return Err(format!(
                    "unknown suite '{s}' (expected one of {})",
                    Suite::NAMES.join(", ")
                ))
            }
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Suite::All => f.write_str("all"),
            Suite::Prelim => f.write_str("prelim"),
            Suite::Props => f.write_str("props"),
            Suite::Entries => f.write_str("entries"),
            Suite::Entry(k) => write!(f, "entry{k}"),
        }
    }
}

/// One identity lhs = rhs at fixed parameters.
#[derive(Clone)]
pub struct IdentityCheck {
    pub id: String,
    pub group: Group,
    pub order: i64,
    pub expected: Status,
    lhs: Builder,
    rhs: Builder,
}

impl fmt::Debug for IdentityCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentityCheck")
            .field("id", &self.id)
            .field("group", &self.group)
            .field("order", &self.order)
            .field("expected", &self.expected)
            .finish_non_exhaustive()
    }
}

impl IdentityCheck {
    pub fn new<L, R>(id: impl Into<String>, group: Group, order: i64, lhs: L, rhs: R) -> Self
    where
        L: Fn(i64) -> Result<Series> + Send + Sync + 'static,
        R: Fn(i64) -> Result<Series> + Send + Sync + 'static,
    {
        IdentityCheck {
            id: id.into(),
            group,
            order,
            expected: Status::Pass,
            lhs: Arc::new(lhs),
            rhs: Arc::new(rhs),
        }
    }

    pub fn expecting(mut self, s: Status) -> Self {
        self.expected = s;
        self
    }

    pub fn with_order(mut self, order: i64) -> Self {
        self.order = order;
        self
    }

    pub fn lhs(&self, n: i64) -> Result<Series> {
        to_order(n, |w| (self.lhs)(w))
    }

    pub fn rhs(&self, n: i64) -> Result<Series> {
        to_order(n, |w| (self.rhs)(w))
    }

    /// The same check with 1 added to the rhs coefficient of q^exponent.
    pub fn corrupted(&self, exponent: i64) -> Self {
        let rhs = self.rhs.clone();
        IdentityCheck {
            id: format!("{}.corrupted[q^{exponent}]", self.id),
            group: self.group,
            order: self.order,
            expected: Status::Fail,
            lhs: self.lhs.clone(),
            rhs: Arc::new(move |n| {
                let s = rhs(n)?;
                let c = s.coeff(exponent).add(&Cyc::one());
                Ok(s.with_coeff(exponent, c))
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mismatch {
    pub exponent: i64,
    pub lhs: Cyc,
    pub rhs: Cyc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: String,
    pub order: i64,
    pub status: Status,
    pub mismatch: Option<Mismatch>,
    pub elapsed_ms: u64,
    pub expected: Status,
    pub error: Option<String>,
}

impl CheckReport {
    pub fn as_expected(&self) -> bool {
        self.status == self.expected
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match (self.status, self.as_expected()) {
            (Status::Pass, _) => "PASS",
            (Status::Fail, true) => "FAIL (expected)",
            (Status::Error, true) => "ERROR (expected)",
            (Status::Fail, false) => "FAIL",
            (Status::Error, false) => "ERROR",
        };
        write!(f, "{tag:<17} {} order={} {}ms", self.id, self.order, self.elapsed_ms)?;
        if let Some(m) = &self.mismatch {
            write!(f, " first mismatch at q^{}: lhs {} vs rhs {}", m.exponent, m.lhs, m.rhs)?;
        }
        if let Some(e) = &self.error {
            write!(f, " {e}")?;
        }
        Ok(())
    }
}

fn panic_message(p: Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = p.downcast_ref::<&str>() {
        s.to_string()
    } else if let Some(s) = p.downcast_ref::<String>() {
        s.clone()
    } else {
        "panic".into()
    }
}

pub fn run_check(check: &IdentityCheck) -> CheckReport {
    run_check_at(check, check.order)
}

/// Runs `check` at an explicit order.
pub fn run_check_at(check: &IdentityCheck, order: i64) -> CheckReport {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(|| -> Result<_> {
        let l = check.lhs(order)?;
        let r = check.rhs(order)?;
        Ok(l.first_mismatch(&r, order))
    }));
    let (status, mismatch, error) = match outcome {
        Ok(Ok(None)) => (Status::Pass, None, None),
        Ok(Ok(Some((exponent, lhs, rhs)))) => {
            (Status::Fail, Some(Mismatch { exponent, lhs, rhs }), None)
        }
        Ok(Err(e)) => (Status::Error, None, Some(e.to_string())),
        Err(p) => (Status::Error, None, Some(format!("internal error: {}", panic_message(p)))),
    };
    CheckReport {
        id: check.id.clone(),
        order,
        status,
        mismatch,
        elapsed_ms: start.elapsed().as_millis() as u64,
        expected: check.expected,
        error,
    }
}

/// Runs checks in parallel; reports come back sorted by id.
pub fn run_checks(checks: &[IdentityCheck], order: Option<i64>) -> Vec<CheckReport> {
    let mut out: Vec<CheckReport> = checks
        .par_iter()
        .map(|c| run_check_at(c, order.unwrap_or(c.order)))
        .collect();
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}

pub fn run_suite(suite: Suite, order: Option<i64>) -> Vec<CheckReport> {
    run_checks(&select(suite, &Samples::default()), order)
}

/// Folds several layer reports into one; the worst status wins.
pub fn aggregate(id: impl Into<String>, reports: &[CheckReport]) -> CheckReport {
    let worst = reports.iter().map(|r| r.status).max().unwrap_or(Status::Pass);
    let expected = reports.iter().map(|r| r.expected).max().unwrap_or(Status::Pass);
    CheckReport {
        id: id.into(),
        order: reports.iter().map(|r| r.order).min().unwrap_or(0),
        status: worst,
        mismatch: reports.iter().find_map(|r| r.mismatch.clone()),
        elapsed_ms: reports.iter().map(|r| r.elapsed_ms).sum(),
        expected,
        error: reports.iter().find_map(|r| r.error.clone().map(|e| format!("{}: {e}", r.id))),
    }
}

// ---------------------------------------------------------------------------
// sample points

/// A named parameter value.
#[derive(Clone, Debug, PartialEq)]
pub struct Sample {
    pub name: String,
    pub value: Mono,
}

impl Sample {
    pub fn new(name: impl Into<String>, value: Mono) -> Self {
        Sample { name: name.into(), value }
    }

    pub fn zeta(k: i64) -> Self {
        let name = if k == 1 { "zeta".to_string() } else { format!("zeta^{k}") };
        Sample::new(name, cst(z(k)))
    }

    fn with_name(c: Cyc, name: &str) -> Self {
        Sample::new(name, cst(c))
    }
}

/// Entry parameter lists; each point carries the status it should produce.
#[derive(Clone, Debug)]
pub struct Samples {
    pub entry1: Vec<(Sample, Status)>,
    pub entry2: Vec<(Sample, Status)>,
}

impl Default for Samples {
    fn default() -> Self {
        let zq = Sample::new("zeta*q", mono(z(1), 1));
        let mut entry1: Vec<(Sample, Status)> = [1, 2, 5, 7]
            .iter()
            .map(|&k| (Sample::zeta(k), Status::Pass))
            .collect();
        entry1.push((Sample::with_name(z(3), "alpha"), Status::Pass));
        entry1.push((zq.clone(), Status::Pass));
        for (c, name) in [(int(1), "1"), (int(-1), "-1"), (z(6), "i"), (z(18), "-i")] {
            entry1.push((Sample::with_name(c, name), Status::Error));
        }
        let mut entry2: Vec<(Sample, Status)> = [1, 2, 5]
            .iter()
            .map(|&k| (Sample::zeta(k), Status::Pass))
            .collect();
        entry2.push((Sample::with_name(z(3), "alpha"), Status::Pass));
        entry2.push((zq, Status::Pass));
        for (c, name) in [(int(1), "1"), (z(8), "omega"), (z(16), "omega^2")] {
            entry2.push((Sample::with_name(c, name), Status::Error));
        }
        Samples { entry1, entry2 }
    }
}

// ---------------------------------------------------------------------------
// building blocks

fn z(k: i64) -> Cyc {
    Cyc::zeta_pow(k)
}

fn int(n: i64) -> Cyc {
    Cyc::from_int(n)
}

fn i_unit() -> Cyc {
    Cyc::embed(Constant::I)
}

fn inv(c: &Cyc) -> Cyc {
    c.inv().expect("nonzero constant")
}

fn mono(c: Cyc, e: i64) -> Mono {
    Monomial::new(c, e).expect("nonzero coefficient")
}

fn cst(c: Cyc) -> Mono {
    mono(c, 0)
}

fn qp(e: i64) -> Mono {
    Monomial::q_pow(e)
}

fn sc(m: &Mono, c: &Cyc) -> Mono {
    m.scale(c).expect("nonzero scale")
}

fn konst(c: Cyc, n: i64) -> Series {
    Series::constant(c, n)
}

/// j(x; q^m)
fn th(x: &Mono, m: i64, n: i64) -> Series {
    theta_j(&ThetaSpec::new(x.clone(), m), n)
}

/// j(x; u·q^m)
fn th_u(x: &Mono, m: i64, u: Cyc, n: i64) -> Series {
    theta_j(&ThetaSpec::with_base_unit(x.clone(), m, u), n)
}

fn jj(m: i64, n: i64) -> Series {
    euler_jm(m, n)
}

fn recip(s: &Series) -> Result<Series> {
    Series::one(s.order()).div(s)
}

/// a + b·t
fn lin(a: Cyc, b: Cyc, t: &Mono, n: i64) -> Series {
    konst(a, n).add(&t.to_series(n).scale(&b))
}

/// G(x, u·q) with x held fixed.
fn rank_at(x: &Mono, u: &Cyc, n: i64) -> Result<Series> {
    Ok(g_rank(&x.twist(&inv(u)), n)?.twist(u))
}

/// g(x; u·q) with x held fixed.
fn g_at(x: &Mono, u: &Cyc, n: i64) -> Result<Series> {
    Ok(g_mock(&x.twist(&inv(u)), n)?.twist(u))
}

/// ∏_{k=1}^{n} (1 + a·q^{step·k} + q^{2·step·k})
fn prod_tri(a: &Cyc, step: i64, n: i64) -> Series {
    let mut acc = Series::one(n);
    let mut k = step;
    while k <= n {
        acc = acc.add(&acc.mul_monomial(a, k)).add(&acc.mul_monomial(&Cyc::one(), 2 * k));
        k += step;
    }
    acc
}

/// ∏_{k=1}^{n} 1/(1 + a·q^{step·k} + q^{2·step·k})
fn prod_tri_inv(a: &Cyc, step: i64, n: i64) -> Series {
    let mut acc = Series::one(n);
    let mut k = step;
    while k <= n {
        acc = acc.div_trinomial(a, k);
        k += step;
    }
    acc
}

/// ∏_{k≥1} (1 + u·q^{step·k})^{sign}
fn prod_bin(u: &Cyc, step: i64, sign: i64, n: i64) -> Result<Series> {
    let mut acc = Series::one(n);
    let mut k = step;
    let c = u.neg();
    while k <= n {
        acc = if sign > 0 { acc.mul_binomial(&c, k) } else { acc.div_binomial(&c, k)? };
        k += step;
    }
    Ok(acc)
}

fn build<F>(f: F) -> impl Fn(i64) -> Result<Series> + Send + Sync + 'static
where
    F: Fn(i64) -> Result<Series> + Send + Sync + 'static,
{
    f
}

fn zero_rhs() -> impl Fn(i64) -> Result<Series> + Send + Sync + 'static {
    |n| Ok(Series::zero(n))
}

// ---------------------------------------------------------------------------
// preliminaries

const PRELIM_ORDER: i64 = 60;
const PROPS_ORDER: i64 = 30;
const MORTENSON_ORDER: i64 = 60;
const RELATION_ORDER: i64 = 50;
const ENTRY_ORDER: i64 = 40;
const CORE_ORDER: i64 = 60;

fn toolbox_samples() -> Vec<Sample> {
    vec![
        Sample::new("1", cst(int(1))),
        Sample::new("-1", cst(int(-1))),
        Sample::zeta(1),
        Sample::zeta(2),
        Sample::new("alpha", cst(z(3))),
        Sample::zeta(5),
        Sample::zeta(7),
        Sample::new("zeta*q", mono(z(1), 1)),
        Sample::new("zeta^2*q^-1", mono(z(2), -1)),
        Sample::new("-zeta^5*q^3", mono(z(5).neg(), 3)),
    ]
}

fn prelim_checks() -> Vec<IdentityCheck> {
    let p = Group::Prelim;
    let n0 = PRELIM_ORDER;
    let mut out = vec![
        IdentityCheck::new(
            "products.jbar12",
            p,
            n0,
            |n| Ok(jbar_am(1, 2, n)),
            |n| jj(2, n).pow(5)?.div(&jj(1, n).pow(2)?.mul(&jj(4, n).pow(2)?)),
        ),
        IdentityCheck::new("products.j12", p, n0, |n| Ok(j_am(1, 2, n)), |n| {
            jj(1, n).pow(2)?.div(&jj(2, n))
        }),
        IdentityCheck::new("products.j14", p, n0, |n| Ok(j_am(1, 4, n)), |n| {
            jj(1, n).mul(&jj(4, n)).div(&jj(2, n))
        }),
        IdentityCheck::new("products.phi", p, n0, |n| Ok(phi(n)), phi_product),
        IdentityCheck::new("products.psi", p, n0, |n| Ok(psi(n)), psi_product),
    ];
    for (k, e, m) in [(1, 0, 1), (0, 1, 3), (5, -2, 2), (7, 3, 4), (11, -6, 6), (3, 6, 5)] {
        let x = mono(z(k), e);
        let id = format!("theta.triple_product[x=zeta^{k}*q^{e},m={m}]");
        let (a, b) = (x.clone(), x);
        out.push(IdentityCheck::new(
            id,
            p,
            n0,
            move |n| Ok(theta_j_product(&ThetaSpec::new(a.clone(), m), n)),
            move |n| Ok(theta_j_sum(&ThetaSpec::new(b.clone(), m), n)),
        ));
    }
    for s in toolbox_samples() {
        let name = &s.name;
        let x = s.value.clone();
        let xs = x.clone();
        out.push(IdentityCheck::new(
            format!("theta.shift[x={name}]"),
            p,
            n0,
            build(move |n| Ok(th(&xs.shift(1), 1, n))),
            build({
                let x = x.clone();
                move |n| Ok(th(&x, 1, n).mul_mono(&x.inv().neg()))
            }),
        ));
        let xs = x.clone();
        out.push(IdentityCheck::new(
            format!("theta.reflect[x={name}]"),
            p,
            n0,
            build(move |n| Ok(th(&xs, 1, n))),
            build({
                let x = x.clone();
                move |n| Ok(th(&x.inv().shift(1), 1, n))
            }),
        ));
        let xs = x.clone();
        out.push(IdentityCheck::new(
            format!("theta.square[x={name}]"),
            p,
            n0,
            build(move |n| Ok(th(&xs.pow(2), 2, n))),
            build({
                let x = x.clone();
                move |n| th(&x, 1, n).mul(&th(&x.neg(), 1, n)).div(&j_am(1, 2, n))
            }),
        ));
        let xs = x.clone();
        out.push(IdentityCheck::new(
            format!("theta.split[x={name}]"),
            p,
            n0,
            build(move |n| Ok(th(&xs, 1, n))),
            build({
                let x = x.clone();
                move |n| {
                    jj(1, n)
                        .mul(&th(&x, 2, n))
                        .mul(&th(&x.shift(1), 2, n))
                        .div(&jj(2, n).pow(2)?)
                }
            }),
        ));
    }
    let dissect_samples: Vec<Sample> = toolbox_samples().into_iter().skip(2).take(6).collect();
    for m in [2i64, 3, 5] {
        for s in dissect_samples.iter().filter(|s| s.name != "zeta^7") {
            let x = s.value.clone();
            let xs = x.clone();
            out.push(IdentityCheck::new(
                format!("theta.dissect.m{m}[x={}]", s.name),
                p,
                n0,
                build(move |n| Ok(th(&xs, 1, n))),
                build(move |n| Ok(dissection(&x, m, n))),
            ));
        }
    }
    out
}

/// Σ_{k<m} (−1)^k q^{k(k−1)/2} x^k j((−1)^{m+1} q^{m(m−1)/2 + mk} x^m; q^{m²})
pub fn dissection(x: &Mono, m: i64, n: i64) -> Series {
    let sign_m = if m % 2 == 1 { int(1) } else { int(-1) };
    let mut acc = Series::zero(n);
    for k in 0..m {
        let pre = sc(&x.pow(k).shift(k * (k - 1) / 2), &if k % 2 == 0 { int(1) } else { int(-1) });
        let arg = sc(&x.pow(m).shift(m * (m - 1) / 2 + m * k), &sign_m);
        acc = acc.add(&th(&arg, m * m, n).mul_mono(&pre));
    }
    acc
}

// ---------------------------------------------------------------------------
// propositions and relations

/// The two three-term theta relations in bases q⁴ and q⁸.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mortenson {
    /// j(q²x;q⁴)j(q⁵x;q⁸) + (q/x)j(x;q⁴)j(qx;q⁸) − (J₁/J₄)j(−q³x;q⁴)j(q³x;q⁸) = 0
    A,
    /// j(−x;q⁴)j(−q⁵x;q⁸) − j(−q²x;q⁴)j(−qx;q⁸) − x(J₁/J₄)j(q³x;q⁴)j(−q⁷x;q⁸) = 0
    B,
}

impl Mortenson {
    fn tag(self) -> &'static str {
        match self {
            Mortenson::A => "theta.mortenson_a",
            Mortenson::B => "theta.mortenson_b",
        }
    }
}

/// Left side of [`Mortenson`] with the relation's q read as q^scale.
pub fn mortenson_lhs(which: Mortenson, x: &Mono, scale: i64, n: i64) -> Result<Series> {
    let s = scale;
    let t = |c: i64, e: i64, m: i64| th(&sc(&x.shift(e * s), &int(c)), m * s, n);
    let ratio = jj(s, n).div(&jj(4 * s, n))?;
    Ok(match which {
        Mortenson::A => t(1, 2, 4)
            .mul(&t(1, 5, 8))
            .add(&t(1, 0, 4).mul(&t(1, 1, 8)).mul_mono(&x.inv().shift(s)))
            .sub(&ratio.mul(&t(-1, 3, 4)).mul(&t(1, 3, 8))),
        Mortenson::B => t(-1, 0, 4)
            .mul(&t(-1, 5, 8))
            .sub(&t(-1, 2, 4).mul(&t(-1, 1, 8)))
            .sub(&ratio.mul(&t(1, 3, 4)).mul(&t(-1, 7, 8)).mul_mono(x)),
    })
}

pub fn mortenson_identity(which: Mortenson, x: &Sample, scale: i64) -> IdentityCheck {
    let v = x.value.clone();
    IdentityCheck::new(
        format!("{}[x={},q^{scale}]", which.tag(), x.name),
        Group::Props,
        MORTENSON_ORDER,
        move |n| mortenson_lhs(which, &v, scale, n),
        zero_rhs(),
    )
}

pub fn mortenson_check(which: Mortenson, x: &Sample, scale: i64, n: i64) -> CheckReport {
    run_check_at(&mortenson_identity(which, x, scale), n)
}

fn quartic_check(x: Sample) -> IdentityCheck {
    let (a, b) = (x.value.clone(), x.value);
    IdentityCheck::new(
        format!("g.quartic[x={}]", x.name),
        Group::Props,
        PROPS_ORDER,
        move |n| g_mock(&a, n),
        move |n| quartic_transform_rhs(&b, n),
    )
}

fn appell_check(x: Sample, zs: Sample) -> IdentityCheck {
    let (a, b, zv) = (x.value.clone(), x.value, zs.value);
    IdentityCheck::new(
        format!("g.appell[x={},z={}]", x.name, zs.name),
        Group::Props,
        PROPS_ORDER,
        move |n| g_mock(&a, n),
        move |n| appell_lerch_rhs(&b, &zv, n),
    )
}

fn appell_z1_check(x: Sample) -> IdentityCheck {
    let (a, b) = (x.value.clone(), x.value);
    IdentityCheck::new(
        format!("g.appell_z1[x={}]", x.name),
        Group::Props,
        PROPS_ORDER,
        move |n| g_mock(&a, n),
        move |n| appell_lerch_rhs_z1(&b, n),
    )
}

fn props_checks() -> Vec<IdentityCheck> {
    let alpha = || Sample::with_name(z(3), "alpha");
    let i = || Sample::with_name(i_unit(), "i");
    let zq = || Sample::new("zeta*q", mono(z(1), 1));
    let mut out = Vec::new();
    for x in [alpha(), Sample::zeta(1), Sample::zeta(2), i(), Sample::zeta(5), zq()] {
        out.push(quartic_check(x));
    }
    for (x, zz) in [
        (Sample::zeta(2), Sample::zeta(1)),
        (alpha(), Sample::with_name(int(-1), "-1")),
        (alpha(), Sample::zeta(1)),
        (Sample::zeta(1), Sample::zeta(5)),
        (zq(), Sample::zeta(2)),
    ] {
        out.push(appell_check(x, zz));
    }
    for x in [Sample::zeta(2), alpha(), Sample::zeta(1), Sample::zeta(5)] {
        out.push(appell_z1_check(x));
    }
    let extra = || {
        vec![
            Sample::new("zeta*q", mono(z(1), 1)),
            alpha(),
            Sample::new("zeta^2*q^-1", mono(z(2), -1)),
        ]
    };
    out.push(mortenson_identity(Mortenson::A, &Sample::with_name(int(-1), "-1"), 2));
    out.push(mortenson_identity(Mortenson::B, &Sample::new("q^4", qp(4)), 2));
    for x in extra() {
        out.push(mortenson_identity(Mortenson::A, &x, 1));
        out.push(mortenson_identity(Mortenson::B, &x, 1));
    }
    for x in [
        i(),
        alpha(),
        Sample::with_name(z(3).neg(), "-alpha"),
        Sample::zeta(1),
        Sample::zeta(2),
        Sample::with_name(z(2).neg(), "-zeta^2"),
    ] {
        let (a, b) = (x.value.clone(), x.value);
        out.push(IdentityCheck::new(
            format!("rank.g_relation[x={}]", x.name),
            Group::Props,
            RELATION_ORDER,
            move |n| g_rank(&a, n),
            move |n| rank_from_g(&b, n),
        ));
    }
    let fa = [
        ("sqrt2", Cyc::embed(Constant::Sqrt2), z(3).neg(), "-alpha"),
        ("sqrt3", Cyc::embed(Constant::Sqrt3), z(2).neg(), "-zeta^2"),
        ("1", int(1), z(8), "omega"),
        ("-1", int(-1), z(4), "zeta^4"),
        ("0", int(0), i_unit(), "i"),
    ];
    for (aname, a, x, xname) in fa {
        let xv = cst(x);
        out.push(IdentityCheck::new(
            format!("rank.f_a[a={aname},x={xname}]"),
            Group::Props,
            RELATION_ORDER,
            move |n| Ok(f_a(&a, n)),
            move |n| g_rank(&xv, n),
        ));
    }
    out.push(IdentityCheck::new(
        "rank.phi_tilde[a=0]",
        Group::Props,
        RELATION_ORDER,
        |n| Ok(phi_tilde(n)),
        |n| Ok(f_a(&int(0), n)),
    ));
    out
}

// ---------------------------------------------------------------------------
// first entry: a² + b² = 4, a = t + 1/t, b = −i(t − 1/t)

/// (1/(1+t))G(−t,−q) − (i/(1−t))G(t,−q) + ((i−1)/(1−it))G(it,q)
fn entry1_reduced_lhs(t: &Mono, n: i64) -> Result<Series> {
    let i = i_unit();
    let m1 = int(-1);
    let a = rank_at(&t.neg(), &m1, n)?.div(&lin(int(1), int(1), t, n))?;
    let b = rank_at(t, &m1, n)?.div(&lin(int(1), int(-1), t, n))?.scale(&i);
    let c = g_rank(&sc(t, &i), n)?
        .div(&lin(int(1), i.neg(), t, n))?
        .scale(&i.sub(&int(1)));
    Ok(a.sub(&b).add(&c))
}

/// −2(1+i)t·J₄³·j(−it;q)/(J₂²·j(t⁴;q⁴))
fn entry1_reduced_rhs(t: &Mono, n: i64) -> Result<Series> {
    let i = i_unit();
    let num = jj(4, n).pow(3)?.mul(&th(&sc(t, &i.neg()), 1, n));
    let den = jj(2, n).pow(2)?.mul(&th(&t.pow(4), 4, n));
    let k = int(-2).mul(&int(1).add(&i));
    Ok(num.div(&den)?.mul_mono(&sc(t, &k)))
}

/// (b−a+2)/4·f_a(−q) + (b+a+2)/4·f_{−a}(−q) − (b/2)·f_b(q)
fn entry1_original_lhs(a: &Cyc, b: &Cyc, n: i64) -> Series {
    let quarter = inv(&int(4));
    let ca = b.sub(a).add(&int(2)).mul(&quarter);
    let cb = b.add(a).add(&int(2)).mul(&quarter);
    let m1 = int(-1);
    f_a(a, n)
        .twist(&m1)
        .scale(&ca)
        .add(&f_a(&a.neg(), n).twist(&m1).scale(&cb))
        .sub(&f_a(b, n).scale(&b.mul(&inv(&int(2)))))
}

/// (q⁴;q⁴)_∞/(−q;q²)_∞ · ∏(1 − bqⁿ + q²ⁿ)/(1 + (a²b² − 2)q⁴ⁿ + q⁸ⁿ)
fn entry1_original_rhs(a: &Cyc, b: &Cyc, n: i64) -> Result<Series> {
    let ab = a.mul(b);
    let mid = ab.mul(&ab).sub(&int(2));
    let head = jj(4, n).div(&pochhammer_inf(&mono(int(-1), 1), 2, n)?)?;
    Ok(head.mul(&prod_tri(&b.neg(), 1, n)).mul(&prod_tri_inv(&mid, 4, n)))
}

fn entry1_ab(t: &Cyc) -> (Cyc, Cyc) {
    let ti = inv(t);
    (t.add(&ti), i_unit().neg().mul(&t.sub(&ti)))
}

/// Every layer of the first entry at one parameter value.
pub fn entry1_checks(t: &Sample, expected: Status) -> Vec<IdentityCheck> {
    let g = Group::Entry(1);
    let n0 = ENTRY_ORDER;
    let tag = |s: &str| format!("entry1.{s}[t={}]", t.name);
    let tv = t.value.clone();
    let mut out = Vec::new();
    let (l, r) = (tv.clone(), tv.clone());
    out.push(
        IdentityCheck::new(
            tag("reduced"),
            g,
            n0,
            move |n| entry1_reduced_lhs(&l, n),
            move |n| entry1_reduced_rhs(&r, n),
        )
        .expecting(expected),
    );
    if expected == Status::Error {
        return out;
    }
    if tv.exp() == 0 {
        let (a, b) = entry1_ab(tv.coeff());
        let (a2, b2) = (a.clone(), b.clone());
        out.push(IdentityCheck::new(
            tag("original"),
            g,
            n0,
            move |n| Ok(entry1_original_lhs(&a, &b, n)),
            move |n| entry1_original_rhs(&a2, &b2, n),
        ));
    }
    let l = tv.clone();
    out.push(IdentityCheck::new(
        tag("g_form"),
        g,
        n0,
        move |n| entry1_reduced_lhs(&l, n),
        build({
            let t = tv.clone();
            move |n| {
                let i = i_unit();
                let m1 = int(-1);
                let a = g_at(&t.neg(), &m1, n)?.mul_mono(&t.neg());
                let b = g_at(&t, &m1, n)?.mul_mono(&sc(&t, &i.neg()));
                let c = g_mock(&sc(&t, &i), n)?.mul_mono(&sc(&t, &int(-1).sub(&i)));
                Ok(a.add(&b).add(&c))
            }
        }),
    ));
    // the three split forms of j(±t; −q), j(it; q)
    let i = i_unit();
    for (name, u, unit, sign) in [
        ("split_minus", int(-1), int(-1), int(1)),
        ("split_plus", int(1), int(-1), int(-1)),
        ("split_i", i.clone(), int(1), i.neg()),
    ] {
        let (l, r) = (tv.clone(), tv.clone());
        out.push(IdentityCheck::new(
            tag(name),
            g,
            n0,
            move |n| Ok(th_u(&sc(&l, &u), 1, unit.clone(), n)),
            move |n| {
                let t2 = r.pow(2);
                Ok(th(&t2.shift(1), 4, n).add(&th(&t2.shift(3), 4, n).mul_mono(&sc(&r, &sign))))
            },
        ));
    }
    let (l, r) = (tv.clone(), tv.clone());
    out.push(IdentityCheck::new(
        tag("theta_core"),
        g,
        n0,
        move |n| {
            let i = i_unit();
            let jm = th_u(&l.neg(), 1, int(-1), n);
            let jp = th_u(&l, 1, int(-1), n);
            let ji = th(&sc(&l, &i), 1, n);
            Ok(jp
                .mul(&ji)
                .sub(&jm.mul(&ji).scale(&i))
                .sub(&jm.mul(&jp).scale(&int(1).sub(&i))))
        },
        move |n| {
            let t2 = r.pow(2);
            let k = int(-2).mul(&int(1).add(&i_unit()));
            Ok(th(&t2.shift(1), 4, n).mul(&th(&t2.shift(3), 4, n)).mul_mono(&sc(&r, &k)))
        },
    ));
    let (l, r) = (tv.clone(), tv);
    out.push(IdentityCheck::new(
        tag("theta_quotient"),
        g,
        n0,
        move |n| {
            let i = i_unit();
            let a = recip(&th_u(&l.neg(), 1, int(-1), n))?
                .sub(&recip(&th_u(&l, 1, int(-1), n))?.scale(&i))
                .sub(&recip(&th(&sc(&l, &i), 1, n))?.scale(&int(1).sub(&i)));
            let j24 = j_am(2, 4, n);
            jj(2, n).mul(&j24).mul(&j24).mul(&a).div(&th(&l.pow(2).shift(1), 2, n))
        },
        move |n| entry1_reduced_rhs(&r, n),
    ));
    out
}

pub fn entry1_check(t: &Sample, n: i64) -> CheckReport {
    let reports: Vec<CheckReport> =
        entry1_checks(t, Status::Pass).iter().map(|c| run_check_at(c, n)).collect();
    aggregate(format!("entry1[t={}]", t.name), &reports)
}

// ---------------------------------------------------------------------------
// second entry: a² + ab + b² = 3, a = ωt + 1/(ωt), b = t + 1/t

fn omegas() -> [Cyc; 3] {
    [int(1), z(8), z(16)]
}

fn entry2_reduced_lhs(t: &Mono, n: i64) -> Result<Series> {
    let mut acc = Series::zero(n);
    for u in omegas() {
        let x = sc(t, &u);
        let den = x.to_series(n).sub(&x.pow(2).to_series(n));
        acc = acc.add(&g_rank(&x, n)?.div(&den)?);
    }
    Ok(acc)
}

/// 3J₃³/(J₁·j(t³;q³))
fn entry2_reduced_rhs(t: &Mono, n: i64) -> Result<Series> {
    jj(3, n).pow(3)?.scale(&int(3)).div(&jj(1, n).mul(&th(&t.pow(3), 3, n)))
}

pub fn entry2_checks(t: &Sample, expected: Status) -> Vec<IdentityCheck> {
    let g = Group::Entry(2);
    let n0 = ENTRY_ORDER;
    let tag = |s: &str| format!("entry2.{s}[t={}]", t.name);
    let tv = t.value.clone();
    let mut out = Vec::new();
    let (l, r) = (tv.clone(), tv.clone());
    out.push(
        IdentityCheck::new(
            tag("reduced"),
            g,
            n0,
            move |n| entry2_reduced_lhs(&l, n),
            move |n| entry2_reduced_rhs(&r, n),
        )
        .expecting(expected),
    );
    if expected == Status::Error {
        return out;
    }
    if tv.exp() == 0 {
        let c = tv.coeff().clone();
        let wt = c.mul(&z(8));
        let a = wt.add(&inv(&wt));
        let b = c.add(&inv(&c));
        let (a2, b2) = (a.clone(), b.clone());
        out.push(IdentityCheck::new(
            tag("original"),
            g,
            n0,
            move |n| {
                let one = int(1);
                let ab = a.add(&b);
                Ok(f_a(&a.neg(), n)
                    .scale(&a.add(&one))
                    .add(&f_a(&b.neg(), n).scale(&b.add(&one)))
                    .sub(&f_a(&ab, n).scale(&ab.sub(&one))))
            },
            move |n| {
                let k = a2.mul(&b2).mul(&a2.add(&b2));
                Ok(jj(3, n).pow(2)?.scale(&int(3)).div(&jj(1, n))?.mul(&prod_tri_inv(&k, 3, n)))
            },
        ));
        let c2 = c.clone();
        out.push(IdentityCheck::new(
            tag("rhs_product"),
            g,
            n0,
            move |n| {
                let t3 = c.pow(3).expect("nonzero");
                let k = t3.add(&inv(&t3)).neg();
                Ok(jj(3, n).pow(2)?.scale(&int(3)).div(&jj(1, n))?.mul(&prod_tri_inv(&k, 3, n)))
            },
            move |n| {
                let t3 = c2.pow(3).expect("nonzero");
                let t = cst(c2.clone());
                Ok(entry2_reduced_rhs(&t, n)?.scale(&int(1).sub(&t3)))
            },
        ));
    }
    let (l, r) = (tv.clone(), tv.clone());
    out.push(IdentityCheck::new(
        tag("g_sum"),
        g,
        n0,
        move |n| entry2_reduced_lhs(&l, n),
        move |n| {
            let mut acc = Series::zero(n);
            for u in omegas() {
                acc = acc.add(&g_mock(&sc(&r, &u), n)?);
            }
            Ok(acc)
        },
    ));
    let (l, r) = (tv.clone(), tv);
    out.push(IdentityCheck::new(
        tag("appell_sum"),
        g,
        n0,
        move |n| {
            let mut acc = Series::zero(n);
            for u in omegas() {
                acc = acc.add(&appell_lerch_rhs_z1(&sc(&l, &u), n)?);
            }
            Ok(acc)
        },
        move |n| entry2_reduced_rhs(&r, n),
    ));
    out
}

pub fn entry2_check(t: &Sample, n: i64) -> CheckReport {
    let reports: Vec<CheckReport> =
        entry2_checks(t, Status::Pass).iter().map(|c| run_check_at(c, n)).collect();
    aggregate(format!("entry2[t={}]", t.name), &reports)
}

// ---------------------------------------------------------------------------
// third entry

fn sqrt3() -> Cyc {
    Cyc::embed(Constant::Sqrt3)
}

fn sqrt2() -> Cyc {
    Cyc::embed(Constant::Sqrt2)
}

fn frac(a: Cyc, d: i64) -> Cyc {
    a.mul(&inv(&int(d)))
}

/// (3+√3)/6·f₁(−q) + (1+√3)/2·f₋₁(−q) − f_√3(q)
fn entry3_lhs(n: i64) -> Series {
    let s3 = sqrt3();
    let m1 = int(-1);
    f_a(&int(1), n)
        .twist(&m1)
        .scale(&frac(int(3).add(&s3), 6))
        .add(&f_a(&int(-1), n).twist(&m1).scale(&frac(int(1).add(&s3), 2)))
        .sub(&f_a(&s3, n))
}

fn entry3_checks() -> Vec<IdentityCheck> {
    let g = Group::Entry(3);
    let n0 = ENTRY_ORDER;
    let mut out = Vec::new();
    let t = Sample::zeta(4);
    let mut inst = entry1_checks(&t, Status::Pass)
        .into_iter()
        .find(|c| c.id.starts_with("entry1.original"))
        .expect("scalar sample has an original layer");
    inst.id = "entry3.from_entry1[t=zeta^4]".into();
    inst.group = g;
    out.push(inst);
    out.push(IdentityCheck::new(
        "entry3.entry1_form",
        g,
        n0,
        |n| {
            let s3 = sqrt3();
            let m1 = int(-1);
            Ok(f_a(&int(1), n)
                .twist(&m1)
                .scale(&frac(int(1).add(&s3), 4))
                .add(&f_a(&int(-1), n).twist(&m1).scale(&frac(int(3).add(&s3), 4)))
                .sub(&f_a(&s3, n).scale(&frac(s3.clone(), 2))))
        },
        |n| {
            let head = jj(1, n).mul(&jj(4, n).pow(2)?).div(&jj(2, n).pow(2)?)?;
            Ok(head.mul(&prod_tri(&sqrt3().neg(), 1, n)).mul(&prod_tri_inv(&int(1), 4, n)))
        },
    ));
    let rescaled_rhs = |n: i64| -> Result<Series> {
        let head = jj(1, n).mul(&jj(4, n).pow(2)?).div(&jj(2, n).pow(2)?)?;
        let k = int(2).mul(&inv(&sqrt3()));
        Ok(head
            .mul(&prod_tri(&sqrt3().neg(), 1, n))
            .mul(&prod_tri_inv(&int(1), 4, n))
            .scale(&k))
    };
    out.push(IdentityCheck::new("entry3.rescaled", g, n0, |n| Ok(entry3_lhs(n)), rescaled_rhs));
    out.push(IdentityCheck::new(
        "entry3.product_middle",
        g,
        n0,
        |n| Ok(prod_tri(&int(-1), 2, n).mul(&prod_tri_inv(&int(1), 4, n))),
        |n| {
            let num = prod_bin(&int(1), 6, 1, n)?.mul(&jj(4, n));
            num.div(&prod_bin(&int(1), 2, 1, n)?.mul(&jj(12, n)))
        },
    ));
    out.push(IdentityCheck::new(
        "entry3.product_chain",
        g,
        n0,
        |n| Ok(prod_tri(&int(-1), 2, n).mul(&prod_tri_inv(&int(1), 4, n))),
        |n| jj(2, n).div(&jj(6, n)),
    ));
    out.push(IdentityCheck::new(
        "entry3.psi_minus",
        g,
        n0,
        |n| Ok(psi(n).twist(&int(-1))),
        |n| jj(1, n).mul(&jj(4, n)).div(&jj(2, n)),
    ));
    out.push(IdentityCheck::new(
        "entry3.statement",
        g,
        n0,
        |n| {
            let s3 = sqrt3();
            let m1 = int(-1);
            Ok(f_a(&int(-1), n)
                .twist(&m1)
                .scale(&frac(int(1).add(&s3), 2))
                .add(&f_a(&int(1), n).twist(&m1).scale(&frac(int(3).add(&s3), 6)))
                .sub(&f_a(&s3, n)))
        },
        |n| {
            let k = int(2).mul(&inv(&sqrt3()));
            Ok(psi(n)
                .twist(&int(-1))
                .mul(&jj(4, n))
                .div(&jj(6, n))?
                .mul(&prod_tri_inv(&sqrt3(), 1, n))
                .scale(&k))
        },
    ));
    out
}

pub fn entry3_check(n: i64) -> CheckReport {
    let reports: Vec<CheckReport> = entry3_checks().iter().map(|c| run_check_at(c, n)).collect();
    aggregate("entry3", &reports)
}

// ---------------------------------------------------------------------------
// fourth entry, α = e^{πi/4}

fn alpha() -> Cyc {
    z(3)
}

/// J₂·J²_{2,4}
fn j2_j24sq(n: i64) -> Series {
    let j24 = j_am(2, 4, n);
    jj(2, n).mul(&j24).mul(&j24)
}

/// 2/(1+α)
fn two_over_1_alpha() -> Cyc {
    int(2).mul(&inv(&int(1).add(&alpha())))
}

/// G(i,−q) + α⁻¹G(i,q) − (2/(1+α))G(−α,iq)
fn entry4_rotated_lhs(n: i64) -> Result<Series> {
    let i = i_unit();
    let xi = cst(i.clone());
    Ok(rank_at(&xi, &int(-1), n)?
        .add(&g_rank(&xi, n)?.scale(&inv(&alpha())))
        .sub(&rank_at(&cst(alpha().neg()), &i, n)?.scale(&two_over_1_alpha())))
}

/// φ(iq)·j(α;iq)
fn phi_iq_j_alpha_iq(n: i64) -> Series {
    let i = i_unit();
    phi(n).twist(&i).mul(&th(&cst(alpha()), 1, n).twist(&i))
}

/// 2φ(iq)j(α;iq)/((1−i)J₄)
fn entry4_phi_term(n: i64) -> Result<Series> {
    let k = int(2).mul(&inv(&int(1).sub(&i_unit())));
    Ok(phi_iq_j_alpha_iq(n).div(&jj(4, n))?.scale(&k))
}

/// (1−i)(j(q;q⁴)j(q;q²) + α⁻¹j(−q;q⁴)j(−q;q²)) − 2φ(iq)j(α;iq)
fn entry4_core_lhs(n: i64) -> Series {
    let q1 = qp(1);
    let mq = mono(int(-1), 1);
    let a = th(&q1, 4, n).mul(&th(&q1, 2, n));
    let b = th(&mq, 4, n).mul(&th(&mq, 2, n)).scale(&inv(&alpha()));
    a.add(&b)
        .scale(&int(1).sub(&i_unit()))
        .sub(&phi_iq_j_alpha_iq(n).scale(&int(2)))
}

/// j(−c·q^e; q^m) shorthand for the dissection pieces.
fn jneg(e: i64, m: i64, n: i64) -> Series {
    th(&mono(int(-1), e), m, n)
}

fn entry4_checks() -> Vec<IdentityCheck> {
    let g = Group::Entry(4);
    let n0 = ENTRY_ORDER;
    let mut out = Vec::new();
    out.push(IdentityCheck::new(
        "entry4.statement",
        g,
        n0,
        |n| {
            let i = i_unit();
            let a = alpha();
            let half = inv(&int(2));
            let pt = phi_tilde::<Cyc>(n);
            Ok(pt
                .twist(&i)
                .scale(&int(1).add(&a).mul(&half))
                .add(&pt.twist(&i.neg()).scale(&int(1).add(&inv(&a)).mul(&half)))
                .sub(&f_a(&sqrt2(), n)))
        },
        |n| {
            let head = psi(n).twist(&int(-1)).mul(&prod_bin(&int(1), 2, 1, n)?);
            let odd = Series::one(n).div(&prod_bin(&int(1), 4, 1, n)?)?;
            // (−q²;q⁴)_∞ = ∏(1+q^{4k−2}) = ∏(1+q^{2k})/∏(1+q^{4k})
            Ok(head.mul(&odd).mul(&prod_tri_inv(&sqrt2(), 1, n)).scale(&inv(&sqrt2())))
        },
    ));
    out.push(IdentityCheck::new(
        "entry4.restated",
        g,
        n0,
        |n| {
            let i = i_unit();
            let a = alpha();
            let half = inv(&int(2));
            let xi = cst(i.clone());
            Ok(rank_at(&xi, &i, n)?
                .scale(&int(1).add(&a).mul(&half))
                .add(&rank_at(&xi, &i.neg(), n)?.scale(&int(1).add(&inv(&a)).mul(&half)))
                .sub(&g_rank(&cst(a.neg()), n)?))
        },
        |n| {
            let a = alpha();
            let num = psi(n).twist(&int(-1)).mul(&pochhammer_inf(&mono(int(-1), 2), 4, n)?);
            let den = pochhammer_inf(&mono(a.neg(), 1), 1, n)?
                .mul(&pochhammer_inf(&mono(inv(&a).neg(), 1), 1, n)?);
            Ok(num.div(&den)?.scale(&inv(&sqrt2())))
        },
    ));
    out.push(IdentityCheck::new(
        "entry4.divided",
        g,
        n0,
        |n| {
            let i = i_unit();
            let xi = cst(i.clone());
            Ok(rank_at(&xi, &i, n)?
                .add(&rank_at(&xi, &i.neg(), n)?.scale(&inv(&alpha())))
                .sub(&g_rank(&cst(alpha().neg()), n)?.scale(&two_over_1_alpha())))
        },
        |n| {
            let num = psi(n)
                .twist(&int(-1))
                .mul(&pochhammer_inf(&mono(int(-1), 2), 4, n)?)
                .mul(&jj(1, n));
            Ok(num.div(&th(&cst(alpha().neg()), 1, n))?.scale(&sqrt2()))
        },
    ));
    let rotated_rhs = |n: i64| -> Result<Series> {
        let i = i_unit();
        let num = psi(n)
            .twist(&i.neg())
            .mul(&pochhammer_inf(&qp(2), 4, n)?)
            .mul(&jj(1, n).twist(&i));
        Ok(num.div(&th(&cst(alpha().neg()), 1, n).twist(&i))?.scale(&sqrt2()))
    };
    out.push(IdentityCheck::new("entry4.rotated", g, n0, entry4_rotated_lhs, rotated_rhs));
    out.push(IdentityCheck::new(
        "entry4.g_rank_i",
        g,
        n0,
        |n| g_rank(&cst(i_unit()), n),
        |n| {
            let i = i_unit();
            Ok(g_mock(&cst(i.clone()), n)?
                .scale(&i.add(&int(1)))
                .add(&konst(int(1).sub(&i), n)))
        },
    ));
    out.push(IdentityCheck::new(
        "entry4.g_expansion_i",
        g,
        n0,
        |n| g_rank(&cst(i_unit()), n),
        |n| {
            let i = i_unit();
            let t = j2_j24sq(n).div(&th(&cst(i.clone()), 1, n).mul(&th(&qp(1), 2, n)))?;
            Ok(g_mock_base(&qp(1), 4, n)?
                .mul_mono(&mono(int(-2), 1))
                .add(&t.scale(&int(1).sub(&i))))
        },
    ));
    out.push(IdentityCheck::new(
        "entry4.g_expansion_i_neg",
        g,
        n0,
        |n| rank_at(&cst(i_unit()), &int(-1), n),
        |n| {
            let i = i_unit();
            let den = th_u(&cst(i.clone()), 1, int(-1), n).mul(&th(&mono(int(-1), 1), 2, n));
            let t = j2_j24sq(n).div(&den)?;
            Ok(g_mock_base(&mono(int(-1), 1), 4, n)?
                .mul_mono(&mono(int(2), 1))
                .add(&t.scale(&int(1).sub(&i))))
        },
    ));
    out.push(IdentityCheck::new(
        "entry4.g_expansion_alpha",
        g,
        n0,
        |n| Ok(g_rank(&cst(alpha().neg()), n)?.scale(&two_over_1_alpha().neg())),
        |n| {
            let i = i_unit();
            let a = alpha();
            let t1 = g_mock_base(&mono(i.clone(), 1), 4, n)?.mul_mono(&mono(int(2).mul(&i), 1));
            let t2 = g_mock_base(&mono(i.neg(), 1), 4, n)?.mul_mono(&mono(int(-2).mul(&a), 1));
            let den = th(&cst(a.neg()), 1, n).mul(&th(&mono(i.neg(), 1), 2, n));
            let t3 = j2_j24sq(n).div(&den)?.scale(&int(-2));
            Ok(t1.add(&t2).add(&t3))
        },
    ));
    out.push(IdentityCheck::new(
        "entry4.theta_alpha_pair",
        g,
        n0,
        |n| Ok(th(&cst(alpha()), 1, n).mul(&th(&cst(alpha().neg()), 1, n))),
        |n| Ok(j_am(1, 2, n).mul(&th(&cst(i_unit()), 2, n))),
    ));
    out.push(IdentityCheck::new(
        "entry4.theta_alpha_product",
        g,
        n0,
        |n| Ok(th(&cst(alpha()), 1, n).mul(&th(&cst(alpha().neg()), 1, n))),
        |n| {
            let r = jj(1, n).pow(2)?.mul(&jj(8, n)).div(&jj(4, n))?;
            Ok(r.scale(&int(1).sub(&i_unit())))
        },
    ));
    out.push(IdentityCheck::new(
        "entry4.theta_minus_iq",
        g,
        n0,
        |n| Ok(th(&mono(i_unit().neg(), 1), 2, n)),
        |n| jj(4, n).pow(2)?.div(&jj(8, n)),
    ));
    out.push(IdentityCheck::new(
        "entry4.phi_quotient",
        g,
        n0,
        |n| {
            let den = th(&cst(alpha().neg()), 1, n).mul(&th(&mono(i_unit().neg(), 1), 2, n));
            j2_j24sq(n).div(&den)
        },
        |n| {
            let k = inv(&int(1).sub(&i_unit()));
            Ok(phi(n).mul(&th(&cst(alpha()), 1, n)).div(&jj(4, n))?.scale(&k))
        },
    ));
    out.push(IdentityCheck::new(
        "entry4.alpha_rotated",
        g,
        n0,
        |n| Ok(rank_at(&cst(alpha().neg()), &i_unit(), n)?.scale(&two_over_1_alpha().neg())),
        |n| {
            let t1 = g_mock_base(&mono(int(-1), 1), 4, n)?.mul_mono(&mono(int(-2), 1));
            let t2 = g_mock_base(&qp(1), 4, n)?.mul_mono(&mono(int(2).mul(&inv(&alpha())), 1));
            Ok(t1.add(&t2).sub(&entry4_phi_term(n)?))
        },
    ));
    out.push(IdentityCheck::new("entry4.combined", g, n0, entry4_rotated_lhs, |n| {
        let i = i_unit();
        let jiq = th(&cst(i.clone()), 1, n);
        let jimq = th_u(&cst(i.clone()), 1, int(-1), n);
        let jq2 = th(&qp(1), 2, n);
        let jmq2 = th(&mono(int(-1), 1), 2, n);
        let num = jiq.mul(&jq2).add(&jimq.mul(&jmq2).scale(&inv(&alpha())));
        let den = jimq.mul(&jmq2).mul(&jiq).mul(&jq2);
        let first = j2_j24sq(n).mul(&num).div(&den)?.scale(&int(1).sub(&i));
        Ok(first.sub(&entry4_phi_term(n)?))
    }));
    out.push(IdentityCheck::new(
        "entry4.theta_i",
        g,
        n0,
        |n| Ok(th(&cst(i_unit()), 1, n)),
        |n| Ok(th(&qp(1), 4, n).scale(&int(1).sub(&i_unit()))),
    ));
    out.push(IdentityCheck::new("entry4.simplified", g, n0, entry4_rotated_lhs, |n| {
        let q1 = qp(1);
        let mq = mono(int(-1), 1);
        let num = th(&q1, 4, n)
            .mul(&th(&q1, 2, n))
            .add(&th(&mq, 4, n).mul(&th(&mq, 2, n)).scale(&inv(&alpha())));
        Ok(num.div(&jj(4, n))?.sub(&entry4_phi_term(n)?))
    }));
    out.push(IdentityCheck::new("entry4.rhs_rewrite", g, n0, rotated_rhs, |n| {
        let k = sqrt2().mul(&inv(&int(1).sub(&i_unit())));
        let t = j_am(2, 4, n).mul(&th(&cst(alpha()), 1, n).twist(&i_unit()));
        Ok(t.div(&jj(4, n))?.scale(&k))
    }));
    out.push(IdentityCheck::new(
        "entry4.core",
        g,
        CORE_ORDER,
        |n| Ok(entry4_core_lhs(n)),
        |n| {
            let t = j_am(2, 4, n).mul(&th(&cst(alpha()), 1, n).twist(&i_unit()));
            Ok(t.scale(&sqrt2()))
        },
    ));
    out.push(IdentityCheck::new(
        "entry4.dissect_q_q4",
        g,
        CORE_ORDER,
        |n| Ok(th(&qp(1), 4, n)),
        |n| Ok(jneg(6, 16, n).sub(&jneg(14, 16, n).mul_mono(&qp(1)))),
    ));
    out.push(IdentityCheck::new(
        "entry4.dissect_q_q2",
        g,
        CORE_ORDER,
        |n| Ok(th(&qp(1), 2, n)),
        |n| Ok(jneg(4, 8, n).sub(&jneg(8, 8, n).mul_mono(&qp(1)))),
    ));
    out.push(IdentityCheck::new(
        "entry4.phi_iq_theta",
        g,
        CORE_ORDER,
        |n| Ok(phi(n).twist(&i_unit())),
        |n| Ok(th_u(&mono(i_unit().neg(), 1), 2, int(-1), n)),
    ));
    out.push(IdentityCheck::new(
        "entry4.dissect_phi_iq",
        g,
        CORE_ORDER,
        |n| Ok(phi(n).twist(&i_unit())),
        |n| Ok(jneg(4, 8, n).add(&jneg(8, 8, n).mul_mono(&mono(i_unit(), 1)))),
    ));
    out.push(IdentityCheck::new(
        "entry4.alpha_iq_split",
        g,
        CORE_ORDER,
        |n| Ok(th(&cst(alpha()), 1, n).twist(&i_unit())),
        |n| Ok(th(&qp(1), 4, n).sub(&th(&mono(int(-1), 1), 4, n).scale(&alpha()))),
    ));
    out.push(IdentityCheck::new(
        "entry4.dissect_alpha_iq",
        g,
        CORE_ORDER,
        |n| Ok(th(&cst(alpha()), 1, n).twist(&i_unit())),
        |n| {
            let a = alpha();
            Ok(jneg(6, 16, n)
                .scale(&int(1).sub(&a))
                .sub(&jneg(14, 16, n).mul_mono(&mono(int(1).add(&a), 1))))
        },
    ));
    out.push(IdentityCheck::new(
        "entry4.expanded",
        g,
        CORE_ORDER,
        |n| Ok(entry4_core_lhs(n)),
        |n| {
            let i = i_unit();
            let s2 = sqrt2();
            let a = jneg(4, 8, n)
                .mul(&jneg(6, 16, n))
                .sub(&jneg(8, 8, n).mul(&jneg(14, 16, n)).mul_mono(&qp(2)));
            let b = jneg(4, 8, n)
                .mul(&jneg(14, 16, n))
                .sub(&jneg(8, 8, n).mul(&jneg(6, 16, n)));
            let ka = int(-1).add(&s2).sub(&i);
            let kb = int(1).add(&s2).add(&i);
            Ok(a.scale(&ka).add(&b.mul_mono(&mono(kb, 1))))
        },
    ));
    out.push(IdentityCheck::new(
        "entry4.mortenson_a_instance",
        g,
        CORE_ORDER,
        |n| {
            Ok(jneg(4, 8, n)
                .mul(&jneg(6, 16, n))
                .sub(&jneg(8, 8, n).mul(&jneg(14, 16, n)).mul_mono(&qp(2))))
        },
        |n| Ok(j_am(2, 4, n).mul(&jneg(6, 16, n))),
    ));
    out.push(IdentityCheck::new(
        "entry4.mortenson_b_instance",
        g,
        CORE_ORDER,
        |n| Ok(jneg(4, 8, n).mul(&jneg(14, 16, n)).sub(&jneg(8, 8, n).mul(&jneg(6, 16, n)))),
        |n| Ok(j_am(2, 4, n).mul(&jneg(14, 16, n)).neg()),
    ));
    out
}

pub fn entry4_check(n: i64) -> CheckReport {
    let reports: Vec<CheckReport> = entry4_checks()
        .iter()
        .map(|c| run_check_at(c, n.max(c.order)))
        .collect();
    aggregate("entry4", &reports)
}

// ---------------------------------------------------------------------------
// catalogue

/// Every check, with entry parameters taken from `samples`.
pub fn catalogue(samples: &Samples) -> Vec<IdentityCheck> {
    let mut out = prelim_checks();
    out.extend(props_checks());
    for (t, s) in &samples.entry1 {
        out.extend(entry1_checks(t, *s));
    }
    for (t, s) in &samples.entry2 {
        out.extend(entry2_checks(t, *s));
    }
    out.extend(entry3_checks());
    out.extend(entry4_checks());
    out
}

pub fn select(suite: Suite, samples: &Samples) -> Vec<IdentityCheck> {
    catalogue(samples)
        .into_iter()
        .filter(|c| suite.contains(c.group))
        .collect()
}

/// A passing check with one rhs coefficient flipped; it must fail exactly
/// at `exponent`.
pub fn self_test(exponent: i64) -> CheckReport {
    let base = IdentityCheck::new(
        "selftest.jbar12",
        Group::Prelim,
        PRELIM_ORDER,
        |n| Ok(jbar_am(1, 2, n)),
        |n| jj(2, n).pow(5)?.div(&jj(1, n).pow(2)?.mul(&jj(4, n).pow(2)?)),
    );
    run_check(&base.corrupted(exponent))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn ids_are_unique() {
        let cat = catalogue(&Samples::default());
        let ids: HashSet<&str> = cat.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids.len(), cat.len());
        assert!(cat.iter().all(|c| c.order >= 10));
    }

    #[test]
    fn vanishing_theta_shift_passes() {
        let s = Sample::new("1", cst(int(1)));
        let x = s.value.clone();
        let check = IdentityCheck::new(
            "shift",
            Group::Prelim,
            20,
            move |n| Ok(th(&x.shift(1), 1, n)),
            |n| Ok(Series::zero(n)),
        );
        assert_eq!(run_check(&check).status, Status::Pass);
    }

    #[test]
    fn corrupted_check_fails_at_exponent() {
        let r = self_test(17);
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.mismatch.as_ref().unwrap().exponent, 17);
        assert!(r.as_expected());
    }

    #[test]
    fn suite_names_parse() {
        for name in Suite::NAMES {
            let s: Suite = name.parse().unwrap();
            assert_eq!(s.to_string(), name);
        }
        assert!("entry5".parse::<Suite>().is_err());
    }

    #[test]
    fn degenerate_entry1_errors() {
        let r = entry1_check(&Sample::new("1", cst(int(1))), 12);
        assert_eq!(r.status, Status::Error);
    }
}
