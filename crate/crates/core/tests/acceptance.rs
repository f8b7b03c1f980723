//! Acceptance gate: one line per criterion, nonzero exit if any fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use mock_theta::mock::g_rank;
use mock_theta::partitions::{enumerate, rank_counts, rank_gf, specialize};
use mock_theta::thetas::{theta_j_product, theta_j_sum, ThetaSpec};
use mock_theta::verify::{
    catalogue, run_checks, run_suite, select, self_test, CheckReport, Samples, Status, Suite,
};
use mock_theta::{Cyc, Monomial};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const SEED: u64 = 0x5eed_2024;

struct Outcome {
    ok: bool,
    detail: String,
}

fn criterion(k: usize, name: &str, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let t = Instant::now();
    let out = f();
    let dt = t.elapsed();
    let in_time = dt <= limit;
    let ok = out.ok && in_time;
    println!(
        "{} {k}. {name}: {} [{:.2}s, limit {}s{}]",
        if ok { "PASS" } else { "FAIL" },
        out.detail,
        dt.as_secs_f64(),
        limit.as_secs(),
        if in_time { "" } else { ", over time" },
    );
    ok
}

fn failures(reports: &[CheckReport]) -> Vec<String> {
    reports.iter().filter(|r| !r.as_expected()).map(|r| r.to_string()).collect()
}

fn verdict(reports: &[CheckReport], what: &str) -> Outcome {
    let bad = failures(reports);
    Outcome {
        ok: bad.is_empty() && !reports.is_empty(),
        detail: if bad.is_empty() {
            format!("{} {what} exact", reports.len())
        } else {
            format!("{} of {} unexpected: {}", bad.len(), reports.len(), bad.join("; "))
        },
    }
}

fn with_prefix<'a>(reports: &'a [CheckReport], prefix: &str) -> Vec<&'a CheckReport> {
    reports.iter().filter(|r| r.id.starts_with(prefix)).collect()
}

fn passing(reports: &[&CheckReport]) -> usize {
    reports.iter().filter(|r| r.status == Status::Pass).count()
}

fn triple_product() -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut bad = Vec::new();
    for _ in 0..20 {
        let k = rng.gen_range(0..24);
        let e = rng.gen_range(-6..=6);
        let m = rng.gen_range(1..=6);
        let x = Monomial::new(Cyc::zeta_pow(k), e).unwrap();
        let spec = ThetaSpec::new(x, m);
        let (s, p) = (theta_j_sum(&spec, 100), theta_j_product(&spec, 100));
        if s.order() < 100 || p.order() < 100 || s.first_mismatch(&p, 100).is_some() {
            bad.push(format!("zeta^{k}*q^{e} mod q^{m}"));
        }
    }
    Outcome {
        ok: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("20 seeded specs (seed {SEED:#x}) sum = product to q^100, tolerance 0")
        } else {
            format!("mismatch at {}", bad.join(", "))
        },
    }
}

fn props() -> Outcome {
    let reports = run_checks(&select(Suite::Props, &Samples::default()), Some(30));
    let quartic = with_prefix(&reports, "g.quartic[");
    let appell: Vec<_> = reports
        .iter()
        .filter(|r| r.id.starts_with("g.appell[") || r.id.starts_with("g.appell_z1["))
        .collect();
    let generic = |rs: &[&CheckReport]| {
        rs.iter().filter(|r| r.status == Status::Pass && !r.id.contains("*q")).count()
    };
    let (nq, na) = (generic(&quartic), generic(&appell));
    let all: Vec<CheckReport> = quartic.iter().chain(&appell).map(|r| (*r).clone()).collect();
    let bad = failures(&all);
    Outcome {
        ok: bad.is_empty() && nq >= 4 && na >= 4,
        detail: format!(
            "quartic {}/{} pass ({nq} at constant x, need 4), Appell-Lerch {}/{} pass ({na} at constant points, need 4), order 30{}",
            passing(&quartic),
            quartic.len(),
            passing(&appell),
            appell.len(),
            if bad.is_empty() { String::new() } else { format!("; {}", bad.join("; ")) }
        ),
    }
}

fn mortenson() -> Outcome {
    let reports = run_checks(&select(Suite::Props, &Samples::default()), Some(60));
    let m: Vec<CheckReport> = reports
        .into_iter()
        .filter(|r| r.id.starts_with("theta.mortenson_"))
        .collect();
    let instances = m
        .iter()
        .filter(|r| r.id.contains("[x=-1,q^2]") || r.id.contains("[x=q^4,q^2]"))
        .filter(|r| r.status == Status::Pass)
        .count();
    let extra: BTreeSet<&str> = m
        .iter()
        .filter(|r| r.status == Status::Pass && r.id.ends_with(",q^1]"))
        .map(|r| r.id.split("[x=").nth(1).unwrap_or(""))
        .collect();
    let bad = failures(&m);
    Outcome {
        ok: bad.is_empty() && instances == 2 && extra.len() >= 3,
        detail: format!(
            "both proof instances {}, {} extra points, {} checks at order 60{}",
            if instances == 2 { "pass" } else { "do not pass" },
            extra.len(),
            m.len(),
            if bad.is_empty() { String::new() } else { format!("; {}", bad.join("; ")) }
        ),
    }
}

fn entries_one_two() -> Outcome {
    let samples = Samples::default();
    let mut ok = true;
    let mut parts = Vec::new();
    for (k, list) in [(1u8, &samples.entry1), (2, &samples.entry2)] {
        let reports = run_checks(&select(Suite::Entry(k), &samples), Some(40));
        ok &= failures(&reports).is_empty();
        let status = |layer: &str, name: &str| {
            reports
                .iter()
                .find(|r| r.id == format!("entry{k}.{layer}[t={name}]"))
                .map(|r| r.status)
        };
        let generic = list
            .iter()
            .filter(|(s, st)| *st == Status::Pass && s.value.exp() == 0)
            .filter(|(s, _)| {
                status("reduced", &s.name) == Some(Status::Pass)
                    && status("original", &s.name) == Some(Status::Pass)
            })
            .count();
        let degenerate: Vec<_> = reports.iter().filter(|r| r.expected == Status::Error).collect();
        let degenerate_ok = degenerate.iter().all(|r| r.status == Status::Error);
        ok &= generic >= 3 && degenerate_ok && !degenerate.is_empty();
        parts.push(format!(
            "entry{k}: reduced+original exact at {generic} cyclotomic t (need 3), {} degenerate t {}",
            degenerate.len(),
            if degenerate_ok { "all error" } else { "NOT all error" }
        ));
    }
    Outcome { ok, detail: format!("{}, order 40", parts.join("; ")) }
}

fn entries_three_four() -> Outcome {
    let samples = Samples::default();
    let mut reports = run_checks(&select(Suite::Entry(3), &samples), None);
    reports.extend(run_checks(&select(Suite::Entry(4), &samples), None));
    let below = reports.iter().filter(|r| r.order < 40).count();
    let core = reports.iter().filter(|r| r.order >= 60).count();
    let mut v = verdict(&reports, "layers");
    v.ok &= below == 0 && core > 0;
    v.detail = format!("{} at order 40, theta-only core ({core} checks) at 60", v.detail);
    v
}

fn oracle() -> Outcome {
    let gf = rank_gf(25).unwrap();
    let mut bad = Vec::new();
    for n in 0..=25i64 {
        let counts = rank_counts(n).unwrap();
        let p = &gf[n as usize];
        if p.as_map() != &counts {
            bad.push(format!("coefficients differ at n={n}"));
        }
        if !p.is_symmetric() {
            bad.push(format!("asymmetric at n={n}"));
        }
        if p.total() != enumerate(n).unwrap().len() as u64 {
            bad.push(format!("row sum differs from p({n})"));
        }
    }
    let (p5, p10) = (enumerate(5).unwrap().len(), enumerate(10).unwrap().len());
    if p5 != 7 || p10 != 42 {
        bad.push(format!("p(5)={p5}, p(10)={p10}"));
    }
    Outcome {
        ok: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("rank_gf == N(m,n) for n<=25, symmetric, p(5)={p5}, p(10)={p10}")
        } else {
            bad.join("; ")
        },
    }
}

fn relations() -> Outcome {
    let reports: Vec<CheckReport> = run_checks(&select(Suite::Props, &Samples::default()), Some(50))
        .into_iter()
        .filter(|r| r.id.starts_with("rank."))
        .collect();
    let need = ["rank.f_a[a=sqrt2", "rank.f_a[a=sqrt3", "rank.f_a[a=0", "rank.phi_tilde", "rank.g_relation"];
    let missing: Vec<_> = need
        .iter()
        .filter(|p| !reports.iter().any(|r| r.id.starts_with(**p) && r.status == Status::Pass))
        .collect();
    let mut v = verdict(&reports, "relations at order 50");
    v.ok &= missing.is_empty();
    let gf = rank_gf(40).unwrap();
    let points = [(Cyc::one(), "1"), (Cyc::from_int(-1), "-1"), (Cyc::zeta_pow(6), "i"), (Cyc::zeta_pow(15), "-alpha")];
    for (c, name) in points {
        let oracle = specialize(&gf, &c).unwrap();
        let g = g_rank(&Monomial::new(c, 0).unwrap(), 40).unwrap();
        if oracle.first_mismatch(&g, 40).is_some() {
            v.ok = false;
            v.detail = format!("{}; counted ranks disagree with G at x={name}", v.detail);
        }
    }
    v.detail = format!("{}, counted ranks match G at x=1,-1,i,-alpha to q^40", v.detail);
    if !missing.is_empty() {
        v.detail = format!("{}; missing {missing:?}", v.detail);
    }
    v
}

fn robustness() -> Outcome {
    let doubled: Vec<_> = catalogue(&Samples::default())
        .into_iter()
        .map(|c| {
            let n = c.order;
            c.with_order(2 * n)
        })
        .collect();
    let reports = run_checks(&doubled, None);
    let passed = reports.iter().filter(|r| r.expected == Status::Pass).count();
    let bad = failures(&reports);
    let mut self_bad = Vec::new();
    let exps = [0, 1, 17, 42, 60];
    for k in exps {
        let r = self_test(k);
        let at = r.mismatch.as_ref().map(|m| m.exponent);
        if r.status != Status::Fail || at != Some(k) {
            self_bad.push(format!("corrupt q^{k}: status {:?}, mismatch at {at:?}", r.status));
        }
    }
    let baseline = run_suite(Suite::Prelim, None)
        .iter()
        .any(|r| r.id == "products.jbar12" && r.status == Status::Pass);
    Outcome {
        ok: bad.is_empty() && self_bad.is_empty() && baseline,
        detail: format!(
            "{passed} passing checks rerun at double order: {} unexpected; self-test flags exponents {exps:?} exactly{}",
            bad.len(),
            if bad.is_empty() && self_bad.is_empty() {
                String::new()
            } else {
                format!("; {}", bad.iter().chain(&self_bad).cloned().collect::<Vec<_>>().join("; "))
            }
        ),
    }
}

fn main() {
    let s = Duration::from_secs;
    let results = [
        criterion(1, "Jacobi triple product", s(5), triple_product),
        criterion(2, "theta and product toolbox", s(10), || {
            let r = run_suite(Suite::Prelim, Some(60));
            let r: Vec<_> = r.into_iter().filter(|r| r.expected == Status::Pass).collect();
            verdict(&r, "checks at order 60")
        }),
        criterion(3, "quartic transform and Appell-Lerch form of g", s(60), props),
        criterion(4, "Mortenson relations", s(10), mortenson),
        criterion(5, "first and second entries", s(120), entries_one_two),
        criterion(6, "third and fourth entries", s(60), entries_three_four),
        criterion(7, "rank oracle equivalence", s(30), oracle),
        criterion(8, "rank relations", s(30), relations),
        criterion(9, "truncation soundness and self-test", s(600), robustness),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("{} of {} criteria pass", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
