//! Check registry and suite runner.
//!
//! [`run_suite`] executes every registered identity check over a parameter
//! grid. Checks fan out to a rayon worker pool; the result ordering is made
//! deterministic afterwards by sorting on (name, parameters), so two runs
//! with the same configuration serialize identically.
//!
//! Checks outside an identity's validity window (degenerate q-powers,
//! wrap-around hamiltonian nestings with 2k−1 > 2D−1, adjoint conventions
//! the construction does not pin down) are measured and placed in the
//! `recorded` list instead of being counted as pass/fail.

use crate::fock::{self, Sector};
use crate::lattice::{
    self, enumerate_partitions, CommOutcome, LatticeContext,
};
use crate::params;
use crate::pauli::OperatorSum;
use crate::qnum::QParam;
use crate::report::{CheckReport, RecordedResidual, SuiteResult};
use num_complex::Complex64;
use rayon::prelude::*;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("suite must be one of lattice, fock, all (got {0})")]
    UnknownSuite(String),
    #[error("lattice sizes must lie in 2..=10 (got {0})")]
    SizeOutOfRange(i64),
    #[error("level cap must lie in 4..=10 (got {0})")]
    CapOutOfRange(i64),
    #[error("tolerances must be positive")]
    NonPositiveTolerance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteKind {
    Lattice,
    Fock,
    All,
}

impl std::str::FromStr for SuiteKind {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s {
            "lattice" => Ok(SuiteKind::Lattice),
            "fock" => Ok(SuiteKind::Fock),
            "all" => Ok(SuiteKind::All),
            other => Err(ConfigError::UnknownSuite(other.to_string())),
        }
    }
}

/// Grid and tolerances for one suite run.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub suite: SuiteKind,
    pub d_list: Vec<i64>,
    pub level_cap: i64,
    pub tol_operator: f64,
    pub tol_spectrum: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suite: SuiteKind::All,
            d_list: vec![2, 3, 4, 5, 6],
            level_cap: 6,
            tol_operator: 1e-10,
            tol_spectrum: 1e-9,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        for &d in &self.d_list {
            if !(2..=10).contains(&d) {
                return Err(ConfigError::SizeOutOfRange(d));
            }
        }
        if !(4..=10).contains(&self.level_cap) {
            return Err(ConfigError::CapOutOfRange(self.level_cap));
        }
        if self.tol_operator <= 0.0 || self.tol_spectrum <= 0.0 {
            return Err(ConfigError::NonPositiveTolerance);
        }
        Ok(())
    }

    fn params(&self) -> BTreeMap<String, String> {
        params! {
            "suite" => format!("{:?}", self.suite).to_lowercase(),
            "D" => format!("{:?}", self.d_list),
            "cap" => self.level_cap,
            "tol_operator" => format!("{:e}", self.tol_operator),
            "tol_spectrum" => format!("{:e}", self.tol_spectrum),
        }
    }
}

enum Outcome {
    Check(CheckReport),
    Recorded(RecordedResidual),
}

/// Default tolerances of the three check classes; the configured overrides
/// are applied by matching a report's baked-in class default.
const TOL_OPERATOR_DEFAULT: f64 = 1e-10;
const TOL_SPECTRUM_DEFAULT: f64 = 1e-9;

fn retolerance(report: CheckReport, cfg: &SuiteConfig) -> CheckReport {
    let tol = if report.tol == TOL_OPERATOR_DEFAULT {
        cfg.tol_operator
    } else if report.tol == TOL_SPECTRUM_DEFAULT {
        cfg.tol_spectrum
    } else {
        report.tol
    };
    CheckReport::new(&report.name, report.params, report.residual, tol)
}

type Job = Box<dyn Fn() -> Vec<Outcome> + Send + Sync>;

fn check(r: CheckReport) -> Outcome {
    Outcome::Check(r)
}

fn max_residual(acc: f64, r: f64) -> f64 {
    if r > acc { r } else { acc }
}

// ---------------------------------------------------------------- lattice

fn clifford_job(d: i64) -> Vec<Outcome> {
    let ctx = LatticeContext::new(d).expect("valid size");
    let id = OperatorSum::identity(ctx.sites());
    let zero = OperatorSum::zero(ctx.sites());
    let mut worst = 0.0;
    for i in 1..=2 * d {
        for j in i..=2 * d {
            let anti = ctx.gamma(i).anticommutator(ctx.gamma(j)).unwrap();
            let expect = if i == j { &id } else { &zero };
            worst = max_residual(worst, anti.residual(expect).unwrap());
        }
        worst = max_residual(worst, ctx.gamma(i).residual(&ctx.gamma(i).adjoint()).unwrap());
    }
    vec![check(CheckReport::new(
        "lattice_clifford",
        params! {"D" => d},
        worst,
        1e-12,
    ))]
}

fn tl_job(d: i64) -> Vec<Outcome> {
    let ctx = LatticeContext::new(d).expect("valid size");
    let sqrt2 = Complex64::new(2f64.sqrt(), 0.0);
    let mut worst = 0.0;
    for i in 1..=2 * d {
        let e = ctx.tl(i);
        worst = max_residual(worst, e.multiply(e).unwrap().residual(&e.scale(sqrt2)).unwrap());
        for pm in [i - 1, i + 1] {
            let braid = e.multiply(ctx.tl(pm)).unwrap().multiply(e).unwrap();
            worst = max_residual(worst, braid.residual(e).unwrap());
        }
        for j in 1..=2 * d {
            let dist = (i - j).rem_euclid(2 * d).min((j - i).rem_euclid(2 * d));
            if dist >= 2 {
                worst = max_residual(worst, e.commutator(ctx.tl(j)).unwrap().frobenius_norm());
            }
        }
        worst = max_residual(worst, e.residual(&e.adjoint()).unwrap());
    }
    vec![check(CheckReport::new(
        "lattice_temperley_lieb",
        params! {"D" => d},
        worst,
        1e-12,
    ))]
}

fn fermi_job(d: i64) -> Vec<Outcome> {
    let ctx = LatticeContext::new(d).expect("valid size");
    let id = OperatorSum::identity(ctx.sites());
    let zero = OperatorSum::zero(ctx.sites());
    let mut worst = 0.0;
    for n in 1..=2 * d {
        for m in 1..=2 * d {
            let anti = ctx.psi(n).anticommutator(ctx.psi(m)).unwrap();
            let expect = if (n + m).rem_euclid(2 * d) == 0 { &id } else { &zero };
            worst = max_residual(worst, anti.residual(expect).unwrap());
        }
        worst = max_residual(worst, ctx.psi(n).adjoint().residual(ctx.psi(-n)).unwrap());
        worst = max_residual(worst, ctx.psi(n).residual(ctx.psi(n + 2 * d)).unwrap());
    }
    vec![check(CheckReport::new(
        "lattice_fermi_modes",
        params! {"D" => d},
        worst,
        1e-12,
    ))]
}

fn lattice_dva_job(d: i64) -> Vec<Outcome> {
    let ctx = LatticeContext::new(d).expect("valid size");
    let mut out = Vec::new();
    for (alpha, beta) in [(1, 1), (1, 2), (2, 1), (1, 3)] {
        for n in -2..=2 {
            for m in -2..=2 {
                match lattice::comm_check_general(&ctx, n, m, alpha, beta).unwrap() {
                    CommOutcome::Asserted(r) => out.push(check(r)),
                    CommOutcome::Recorded(rec) => out.push(Outcome::Recorded(rec)),
                }
            }
        }
    }
    for n in -2..=2 {
        for m in -2..=2 {
            out.push(check(lattice::dpsi_check(&ctx, n, m).unwrap()));
        }
    }
    out
}

fn tower_job(d: i64) -> Vec<Outcome> {
    let ctx = LatticeContext::new(d).expect("valid size");
    let k_max = 4;
    let tower = ctx.build_a_tower(k_max).unwrap();
    let mut out = Vec::new();
    for n in 1..=k_max {
        let a = &tower[(n - 1) as usize];
        let via_modes = ctx.a_via_modes(n).unwrap();
        let via_d0 = ctx.a_via_d0(n).unwrap();
        let r_modes = a.residual(&via_modes).unwrap();
        let r_d0 = via_d0.residual(&via_modes).unwrap();
        if ctx.tower_in_window(n) {
            out.push(check(CheckReport::new(
                "lattice_tower_triple_equality",
                params! {"D" => d, "n" => n},
                r_modes.max(r_d0),
                1e-9,
            )));
        } else {
            // nested commutator wraps the ring: the H-route is not defined,
            // but the sine formula and the D₀ decomposition still agree
            out.push(Outcome::Recorded(RecordedResidual {
                name: "lattice_tower_triple_equality".into(),
                params: params! {"D" => d, "n" => n},
                residual: r_modes,
                note: format!("2n−1 = {} exceeds the ring span 2D−1 = {}; H-recursion undefined", 2 * n - 1, 2 * d - 1),
            }));
            out.push(check(CheckReport::new(
                "lattice_tower_modes_vs_d0",
                params! {"D" => d, "n" => n},
                r_d0,
                1e-9,
            )));
        }
        // measured, not asserted: overall adjoint convention of the nesting
        out.push(Outcome::Recorded(RecordedResidual {
            name: "lattice_tower_adjoint".into(),
            params: params! {"D" => d, "n" => n},
            residual: a.residual(&a.adjoint()).unwrap(),
            note: "hermiticity of the nested-commutator hamiltonian; measured by convention".into(),
        }));
    }
    for i in 0..tower.len() {
        for j in i + 1..tower.len() {
            let comm = tower[i].commutator(&tower[j]).unwrap();
            let denom = tower[i]
                .frobenius_norm()
                .max(tower[j].frobenius_norm())
                .max(1.0);
            out.push(check(CheckReport::new(
                "lattice_tower_commutativity",
                params! {"D" => d, "i" => 2 * i + 1, "j" => 2 * j + 1},
                comm.frobenius_norm() / denom,
                1e-9,
            )));
        }
    }
    out
}

fn spectrum_job(d: i64) -> Vec<Outcome> {
    let ctx = LatticeContext::new(d).expect("valid size");
    let mut out = Vec::new();
    for n in 1..=3 {
        let via_modes = ctx.a_via_modes(n).unwrap();
        let modes_check = lattice::spectrum_check(&ctx, n, &via_modes).unwrap();
        out.push(check(CheckReport::new(
            "lattice_spectrum_modes",
            modes_check.params,
            modes_check.residual,
            modes_check.tol,
        )));
        let recursion = ctx.build_a(n).unwrap();
        let rec_check = lattice::spectrum_check(&ctx, n, &recursion).unwrap();
        if ctx.tower_in_window(n) {
            out.push(check(rec_check));
        } else {
            out.push(Outcome::Recorded(RecordedResidual {
                name: "lattice_spectrum".into(),
                params: rec_check.params,
                residual: rec_check.residual,
                note: format!("H-recursion undefined at 2n−1 = {} > 2D−1 = {}", 2 * n - 1, 2 * d - 1),
            }));
        }
    }
    out
}

fn sigma_job(d: i64) -> Vec<Outcome> {
    let ctx = LatticeContext::new(d).expect("valid size");
    let (plus, minus) = match ctx.sigma_states() {
        Ok(p) => p,
        Err(e) => {
            return vec![check(CheckReport::new(
                "lattice_sigma_doublet",
                params! {"D" => d, "error" => e},
                f64::INFINITY,
                1e-10,
            ))]
        }
    };
    let mut worst = (plus.norm() - 1.0).abs().max((minus.norm() - 1.0).abs());
    worst = max_residual(worst, plus.dotc(&minus).norm());
    for n in 1..d {
        worst = max_residual(worst, ctx.psi(n).apply(&plus).norm());
        worst = max_residual(worst, ctx.psi(n).apply(&minus).norm());
    }
    worst = max_residual(worst, (ctx.psi(0).apply(&plus).scale(2f64.sqrt()) - minus.clone()).norm());
    worst = max_residual(worst, (ctx.psi(0).apply(&minus).scale(2f64.sqrt()) - plus.clone()).norm());
    let mut out = vec![check(CheckReport::new(
        "lattice_sigma_doublet",
        params! {"D" => d},
        worst,
        1e-10,
    ))];

    // eigenstate property over the full restricted-partition enumeration
    let tower = ctx.build_a_tower(3.min(d)).unwrap();
    let mut worst_eig = 0.0;
    for p in enumerate_partitions(d) {
        let state = ctx.partition_state_from(&p, &plus, &minus).unwrap();
        for (idx, a) in tower.iter().enumerate() {
            let n = idx as i64 + 1;
            let ev = ctx.eigvalue_formula(n, &p);
            let diff = (a.apply(&state) - state.scale(ev)).norm();
            worst_eig = max_residual(worst_eig, diff);
        }
    }
    out.push(check(CheckReport::new(
        "lattice_eigenstate_property",
        params! {"D" => d, "n_max" => 3.min(d)},
        worst_eig,
        1e-9,
    )));
    out
}

fn null_job(d: i64) -> Vec<Outcome> {
    let ctx = LatticeContext::new(d).expect("valid size");
    let (null, control) = lattice::null_state_check(&ctx).unwrap();
    vec![check(null), check(control)]
}

// ------------------------------------------------------------------ fock

fn fock_virasoro_job(cap: i64) -> Vec<Outcome> {
    let mut out = Vec::new();
    for sector in [Sector::NeveuSchwarz, Sector::Ramond] {
        for n in -3..=3 {
            for m in -3..=3 {
                out.push(check(fock::virasoro_comm_check(n, m, cap, sector).unwrap()));
            }
        }
    }
    // the (2,−2) vacuum expectation value is c/2 = 1/4
    let vac = fock::FockVector::highest_weight(Sector::NeveuSchwarz, 2 * cap);
    let l2l = fock::apply_l(&fock::apply_l(&vac, -2).unwrap(), 2).unwrap();
    let vev = l2l.coeff(&fock::FockState::vacuum(Sector::NeveuSchwarz));
    out.push(check(CheckReport::new(
        "fock_virasoro_vacuum_22",
        params! {"cap" => cap},
        (vev - 0.25).norm(),
        1e-12,
    )));
    out
}

fn fock_dva_job(cap: i64) -> Vec<Outcome> {
    let q = QParam::exact(1, 10);
    let mut out = Vec::new();
    for sector in [Sector::NeveuSchwarz, Sector::Ramond] {
        for (alpha, beta) in [(1, 1), (1, 2), (2, 1), (1, 3)] {
            for n in -3..=3 {
                for m in -3..=3 {
                    out.push(check(
                        fock::dva_comm_check(n, m, alpha, beta, &q, cap, sector).unwrap(),
                    ));
                }
            }
        }
        let start = -3 + (1 - sector.parity());
        for n in -2..=2i64 {
            for m2 in (start..=3).step_by(2) {
                out.push(check(fock::dpsi_comm_check(n, m2, &q, cap, sector).unwrap()));
            }
        }
    }
    out
}

fn fock_engine_job(cap: i64) -> Vec<Outcome> {
    // anticommutators, gradedness, zero mode: the raw engine identities
    let mut worst_anti = 0.0;
    let mut grading_ok = true;
    let q = QParam::exact(1, 8);
    for sector in [Sector::NeveuSchwarz, Sector::Ramond] {
        let start = -5 + (1 - sector.parity());
        for state in fock::enumerate_basis(sector, cap) {
            let lvl = state.level2();
            let v = fock::FockVector::from_state(state, 4 * cap);
            for n2 in (start..=5).step_by(2) {
                for m2 in (start..=5).step_by(2) {
                    let ab = fock::apply_psi(&fock::apply_psi(&v, m2).unwrap(), n2).unwrap();
                    let ba = fock::apply_psi(&fock::apply_psi(&v, n2).unwrap(), m2).unwrap();
                    let mut lhs = ab.add(&ba).unwrap();
                    if n2 + m2 == 0 {
                        lhs = lhs.sub(&v).unwrap();
                    }
                    worst_anti = max_residual(worst_anti, lhs.norm());
                }
            }
            for n in -2..=2i64 {
                for (s, _) in fock::apply_l(&v, n).unwrap().terms() {
                    grading_ok &= s.level2() == lvl - 2 * n;
                }
                for (s, _) in fock::apply_d(&v, n, &q).unwrap().terms() {
                    grading_ok &= s.level2() == lvl - 2 * n;
                }
            }
        }
    }
    vec![
        check(CheckReport::new(
            "fock_anticommutator",
            params! {"cap" => cap},
            worst_anti,
            1e-12,
        )),
        check(CheckReport::new(
            "fock_gradedness",
            params! {"cap" => cap},
            if grading_ok { 0.0 } else { 1.0 },
            1e-12,
        )),
    ]
}

fn fock_iom_job(cap: i64) -> Vec<Outcome> {
    let mut out = Vec::new();
    let mut worst_diag = 0.0;
    let mut worst_even = 0.0;
    for sector in [Sector::NeveuSchwarz, Sector::Ramond] {
        for state in fock::enumerate_basis(sector, 2 * cap) {
            let v = fock::FockVector::from_state(state.clone(), 4 * cap);
            for k in 1..=4 {
                let ev = fock::iom_eigenvalue(&state, k);
                let diff = fock::apply_i(&v, k).unwrap().sub(&v.scale(Complex64::new(ev, 0.0))).unwrap();
                worst_diag = max_residual(worst_diag, diff.norm());
            }
            for k in 1..=3 {
                worst_even = max_residual(worst_even, fock::apply_i_even_naive(&v, k).unwrap().norm());
            }
        }
    }
    out.push(check(CheckReport::new(
        "fock_iom_eigenvalues",
        params! {"levels" => 2 * cap / 2, "k_max" => 4},
        worst_diag,
        1e-12,
    )));
    out.push(check(CheckReport::new(
        "fock_iom_even_vanishes",
        params! {"levels" => 2 * cap / 2, "k_max" => 3},
        worst_even,
        1e-12,
    )));
    for r in fock::iom_virasoro_identity_check(cap.max(6)).unwrap() {
        out.push(check(r));
    }
    out
}

fn fock_null_job() -> Vec<Outcome> {
    let mut out = Vec::new();
    for q in [QParam::exact(1, 8), QParam::exact(1, 10), QParam::from_angle(0.3)] {
        let (null, control) = fock::null_level2_check(&q).unwrap();
        out.push(check(null));
        out.push(check(control));
    }
    out
}

fn fock_limits_job(cap: i64) -> Vec<Outcome> {
    let mut out = Vec::new();
    for sector in [Sector::NeveuSchwarz, Sector::Ramond] {
        for n in [-2, -1, 0, 1, 2] {
            out.push(check(
                fock::classical_limit_check(n, &[1e-2, 1e-3], cap, sector).unwrap(),
            ));
        }
        out.push(check(
            fock::d0_expansion_check(&QParam::exact(1, 20), 6, 4, sector).unwrap(),
        ));
        out.push(check(
            fock::d0_expansion_check(&QParam::exact(1, 40), 6, cap.min(6), sector).unwrap(),
        ));
    }
    out
}

// ---------------------------------------------------------------- runner

/// Run the configured suite and aggregate the outcome.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteResult, ConfigError> {
    cfg.validate()?;
    let start = std::time::Instant::now();
    let mut jobs: Vec<Job> = Vec::new();

    if cfg.suite != SuiteKind::Fock {
        for &d in &cfg.d_list {
            jobs.push(Box::new(move || clifford_job(d)));
            jobs.push(Box::new(move || tl_job(d)));
            jobs.push(Box::new(move || fermi_job(d)));
            jobs.push(Box::new(move || tower_job(d)));
            jobs.push(Box::new(move || sigma_job(d)));
            if d >= 4 {
                jobs.push(Box::new(move || lattice_dva_job(d)));
            }
            if d >= 3 {
                jobs.push(Box::new(move || null_job(d)));
            }
            if d <= 5 {
                jobs.push(Box::new(move || spectrum_job(d)));
            }
        }
    }
    if cfg.suite != SuiteKind::Lattice {
        let cap = cfg.level_cap;
        jobs.push(Box::new(move || fock_virasoro_job(cap)));
        jobs.push(Box::new(move || fock_dva_job(cap)));
        jobs.push(Box::new(move || fock_engine_job(cap.min(6))));
        jobs.push(Box::new(move || fock_iom_job(cap)));
        jobs.push(Box::new(fock_null_job));
        jobs.push(Box::new(move || fock_limits_job(cap)));
    }

    let outcomes: Vec<Outcome> = jobs.par_iter().flat_map(|job| job()).collect();
    let mut checks = Vec::new();
    let mut recorded = Vec::new();
    for o in outcomes {
        match o {
            Outcome::Check(r) => checks.push(retolerance(r, cfg)),
            Outcome::Recorded(r) => recorded.push(r),
        }
    }
    let suite_name = format!("{:?}", cfg.suite).to_lowercase();
    Ok(SuiteResult::new(
        &suite_name,
        cfg.params(),
        checks,
        recorded,
        start.elapsed().as_secs_f64(),
    ))
}

/// Spectrum export row: one restricted partition with its two doublet
/// states, the closed-form eigenvalue, and the matched dense eigenvalue.
#[derive(Debug, Clone, serde::Serialize)]
pub struct SpectrumRow {
    pub eigenvalue: f64,
    pub multiplicity: usize,
    pub formula_value: f64,
    pub partition: String,
    pub spin: String,
}

/// Dense spectrum of A_{2n−1} (mode representation, valid at every size)
/// against the partition formula; rows sorted ascending.
pub fn spectrum_rows(d: i64, n: i64) -> Result<Vec<SpectrumRow>, lattice::LatticeError> {
    let ctx = LatticeContext::new(d)?;
    let op = ctx.a_via_modes(n)?;
    let dense = crate::pauli::eig_hermitian(&op.to_dense()?)?;
    // one row per partition; the two doublet states are degenerate
    let mut partitions = enumerate_partitions(d);
    partitions.retain(|p| p.spin == lattice::LatticeSpin::Plus);
    let mut rows: Vec<(f64, Vec<i64>)> = partitions
        .into_iter()
        .map(|p| (ctx.eigvalue_formula(n, &p), p.elements))
        .collect();
    rows.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
    let mut out = Vec::new();
    for (i, (formula, elements)) in rows.into_iter().enumerate() {
        let matched = (dense[2 * i] + dense[2 * i + 1]) / 2.0;
        let partition = if elements.is_empty() {
            "∅".to_string()
        } else {
            format!("{{{}}}", elements.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(","))
        };
        out.push(SpectrumRow {
            eigenvalue: matched,
            multiplicity: 2,
            formula_value: formula,
            partition,
            spin: "±".to_string(),
        });
    }
    Ok(out)
}

/// Named operators constructible from the command line.
pub fn build_named_operator(
    ctx: &LatticeContext,
    name: &str,
    power: i64,
) -> Result<OperatorSum, String> {
    let (kind, index) = name.split_at(
        name.find(|c: char| c.is_ascii_digit() || c == '-')
            .ok_or_else(|| format!("malformed operator spec {name}"))?,
    );
    let idx: i64 = index.parse().map_err(|_| format!("bad index in {name}"))?;
    match kind {
        "D" => ctx.lattice_d(idx, power).map_err(|e| e.to_string()),
        "e" => Ok(ctx.tl(idx).clone()),
        "psi" => Ok(ctx.psi(idx).clone()),
        "Gamma" => Ok(ctx.gamma(idx).clone()),
        "H" => {
            if idx % 2 == 1 && (1..=11).contains(&idx) {
                ctx.build_h((idx + 1) / 2).map_err(|e| e.to_string())
            } else {
                Err(format!("H index must be odd in 1..=11, got {idx}"))
            }
        }
        "A" => {
            if idx % 2 == 1 && (1..=11).contains(&idx) {
                ctx.build_a((idx + 1) / 2).map_err(|e| e.to_string())
            } else {
                Err(format!("A index must be odd in 1..=11, got {idx}"))
            }
        }
        other => Err(format!("unknown operator kind {other}")),
    }
}
