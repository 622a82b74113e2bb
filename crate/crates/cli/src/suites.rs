//! Named verification suites behind `verify`: each runs one identity sweep
//! and reports per-case residuals. Case keys are stable and sorted, so a
//! fixed seed gives byte-identical reports.

use motive_selberg::numerics::{multiple_sine, AccuracyRequest};
use motive_selberg::spaces::{make_space, Family, Parity, Space};
use motive_selberg::zeta::plancherel_surface_check;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// One suite case: an exact check (`residual: None`) or a measured residual.
pub struct Case {
    pub key: String,
    pub residual: Option<f64>,
    pub pass: bool,
}

pub struct SuiteReport {
    pub suite: &'static str,
    pub tolerance: Option<f64>,
    pub cases: Vec<Case>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    pub fn max_residual(&self) -> Option<f64> {
        self.cases
            .iter()
            .filter_map(|c| c.residual)
            .fold(None, |m, r| Some(m.map_or(r, |m: f64| m.max(r))))
    }
}

pub const SUITES: [&str; 6] = [
    "ladder",
    "s1",
    "reflection",
    "gamma-relation",
    "plancherel",
    "parity",
];

pub struct SuiteConfig {
    pub seed: u64,
    pub tol: Option<f64>,
    pub acc: AccuracyRequest,
    pub rmax: u32,
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport, String> {
    let mut report = match name {
        "ladder" => ladder(cfg),
        "s1" => s1(cfg),
        "reflection" => reflection(cfg),
        "gamma-relation" => gamma_relation(cfg),
        "plancherel" => plancherel(cfg),
        "parity" => parity(),
        other => {
            return Err(format!(
                "unknown suite `{other}`; available: {}",
                SUITES.join(", ")
            ))
        }
    };
    report.cases.sort_by(|a, b| a.key.cmp(&b.key));
    Ok(report)
}

fn measured(key: String, residual: f64, tol: f64) -> Case {
    Case {
        key,
        residual: Some(residual),
        pass: residual <= tol,
    }
}

/// `S_r(w) / S_r(w+1) = S_{r-1}(w)` at seeded in-strip points.
fn ladder(cfg: &SuiteConfig) -> SuiteReport {
    let tol = cfg.tol.unwrap_or(1e-8);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut cases = Vec::new();
    for r in 2..=cfg.rmax.max(2) {
        for i in 0..20 {
            let w = Complex64::new(
                rng.gen_range(0.05..r as f64 - 1.05),
                rng.gen_range(-1.5..1.5),
            );
            let top = multiple_sine(r, w, &cfg.acc).unwrap().value;
            let shifted = multiple_sine(r, w + 1.0, &cfg.acc).unwrap().value;
            let low = multiple_sine(r - 1, w, &cfg.acc).unwrap().value;
            let residual = (top / shifted - low).norm() / low.norm();
            cases.push(measured(format!("r={r:02} point {i:02}"), residual, tol));
        }
    }
    SuiteReport {
        suite: "ladder",
        tolerance: Some(tol),
        cases,
    }
}

/// `S_1(w)` against its closed form `2 sin(pi w)` at seeded strip points.
fn s1(cfg: &SuiteConfig) -> SuiteReport {
    let tol = cfg.tol.unwrap_or(1e-10);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut cases = Vec::new();
    for i in 0..50 {
        let w = Complex64::new(rng.gen_range(0.05..0.95), rng.gen_range(-2.0..2.0));
        let v = multiple_sine(1, w, &cfg.acc).unwrap().value;
        let want = 2.0 * (std::f64::consts::PI * w).sin();
        let residual = (v - want).norm() / want.norm();
        cases.push(measured(format!("point {i:02}"), residual, tol));
    }
    SuiteReport {
        suite: "s1",
        tolerance: Some(tol),
        cases,
    }
}

/// Even-level reflection `S_r(w) S_r(r - w) = 1`.
fn reflection(cfg: &SuiteConfig) -> SuiteReport {
    let tol = cfg.tol.unwrap_or(1e-8);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut cases = Vec::new();
    for r in [2u32, 4, 6] {
        for i in 0..10 {
            let w = Complex64::new(
                rng.gen_range(0.05..r as f64 - 0.05),
                rng.gen_range(-1.0..1.0),
            );
            let a = multiple_sine(r, w, &cfg.acc).unwrap().value;
            let b = multiple_sine(r, Complex64::new(r as f64, 0.0) - w, &cfg.acc)
                .unwrap()
                .value;
            let residual = (a * b - 1.0).norm();
            cases.push(measured(format!("r={r} point {i:02}"), residual, tol));
        }
    }
    SuiteReport {
        suite: "reflection",
        tolerance: Some(tol),
        cases,
    }
}

fn catalog(n_max: u32) -> Vec<Space> {
    let mut spaces = Vec::new();
    for n in 1..=n_max {
        for family in [Family::So, Family::Su, Family::Sp] {
            spaces.push(make_space(family, Some(n), 1).unwrap());
        }
    }
    spaces.push(make_space(Family::So, Some(1), 2).unwrap());
    spaces.push(make_space(Family::F4, None, 1).unwrap());
    spaces
}

/// The reflection formula between the sine factor and the gamma-function
/// product, per space at 5 deterministic points.
fn gamma_relation(cfg: &SuiteConfig) -> SuiteReport {
    let tol = cfg.tol.unwrap_or(1e-8);
    let mut cases = Vec::new();
    for space in catalog(3) {
        let rho2 = space.rho2() as f64;
        for (i, frac) in [0.3, 0.45, 0.6, 0.75, 0.52].into_iter().enumerate() {
            let s = Complex64::new(rho2 * frac, 0.1 * i as f64);
            let residual = space.check_gamma_relation(s, &cfg.acc).unwrap();
            cases.push(measured(
                format!("{space} vol={} point {i}", space.vol()),
                residual,
                tol,
            ));
        }
    }
    SuiteReport {
        suite: "gamma-relation",
        tolerance: Some(tol),
        cases,
    }
}

/// Surface Plancherel integral versus the sine factor.
fn plancherel(cfg: &SuiteConfig) -> SuiteReport {
    let tol = cfg.tol.unwrap_or(1e-8);
    let mut cases = Vec::new();
    for genus in [2u32, 3, 4] {
        for s in [0.6, 0.75, 0.9] {
            let residual = plancherel_surface_check(genus, s, &cfg.acc).unwrap();
            cases.push(measured(format!("g={genus} s={s:.2}"), residual, tol));
        }
    }
    SuiteReport {
        suite: "plancherel",
        tolerance: Some(tol),
        cases,
    }
}

/// Exact structural checks: palindromic tables, positive entries, even
/// total parity, and the known table rows.
fn parity() -> SuiteReport {
    let mut cases = Vec::new();
    let mut exact = |key: String, ok: bool| {
        cases.push(Case {
            key,
            residual: None,
            pass: ok,
        });
    };
    for n in 1..=8 {
        for family in [Family::So, Family::Su, Family::Sp] {
            let space = make_space(family, Some(n), 1).unwrap();
            let t = space.sine_exponents();
            exact(format!("{space} symmetric"), t.is_symmetric());
            exact(
                format!("{space} parity"),
                space.exponent_parity() == Parity::Even,
            );
        }
    }
    let f4 = make_space(Family::F4, None, 1).unwrap();
    exact("F4 symmetric".into(), f4.sine_exponents().is_symmetric());
    exact("F4 parity".into(), f4.exponent_parity() == Parity::Even);

    let row = |space: &Space| -> Vec<i64> {
        space
            .sine_exponents()
            .entries
            .iter()
            .map(|e| num_traits::ToPrimitive::to_i64(e).unwrap())
            .collect()
    };
    exact(
        "SU(1,2) row".into(),
        row(&make_space(Family::Su, Some(2), 1).unwrap()) == [1, 4, 1],
    );
    exact(
        "Sp(1,2) row".into(),
        row(&make_space(Family::Sp, Some(2), 1).unwrap()) == [1, 6, 6, 1],
    );
    exact("F4 row".into(), row(&f4) == [1, 10, 28, 28, 10, 1]);
    SuiteReport {
        suite: "parity",
        tolerance: None,
        cases,
    }
}
