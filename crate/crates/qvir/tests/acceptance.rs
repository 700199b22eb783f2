//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Every tolerance is pinned here, in code. Criteria 4 and 5 contain one
//! grid corner each — (n = 4, D = 3) and (n = 3, D = 2) — where the nested
//! commutator defining H_{2n−1} spans more generators than the periodic ring
//! holds (2n−1 > 2D−1), the telescoping collapses (H₇ ≡ 0 at D = 3), and the
//! H-recursion genuinely stops representing the hamiltonian. Those corners
//! are measured and asserted to be *detected and recorded*, never silently
//! asserted green: the mode-formula route, which is defined at every size,
//! is asserted in their place.

use num_complex::Complex64;
use qvir::fock::{self, FockState, FockVector, Sector};
use qvir::lattice::{
    comm_check_general, null_state_check, spectrum_check, CommOutcome,
    LatticeContext,
};
use qvir::pauli::{eig_hermitian, OperatorSum};
use qvir::qnum::{q_int, QParam};
use qvir::suite::{run_suite, SuiteConfig, SuiteKind};
use std::time::Instant;

fn pass(criterion: u32, what: &str) {
    println!("[criterion {criterion:2}] PASS — {what}");
}

/// Criterion 1: Clifford and Temperley-Lieb relations for D = 2..6 at 1e-12,
/// in at most 10 seconds.
#[test]
fn criterion_01_clifford_and_temperley_lieb() {
    let start = Instant::now();
    for d in 2..=6 {
        let ctx = LatticeContext::new(d).unwrap();
        let id = OperatorSum::identity(ctx.sites());
        let zero = OperatorSum::zero(ctx.sites());
        let sqrt2 = Complex64::new(2f64.sqrt(), 0.0);
        for i in 1..=2 * d {
            for j in i..=2 * d {
                let anti = ctx.gamma(i).anticommutator(ctx.gamma(j)).unwrap();
                let expect = if i == j { &id } else { &zero };
                assert!(anti.residual(expect).unwrap() <= 1e-12, "Clifford D={d} ({i},{j})");
            }
            let e = ctx.tl(i);
            assert!(e.multiply(e).unwrap().residual(&e.scale(sqrt2)).unwrap() <= 1e-12);
            for pm in [i - 1, i + 1] {
                let braid = e.multiply(ctx.tl(pm)).unwrap().multiply(e).unwrap();
                assert!(braid.residual(e).unwrap() <= 1e-12, "braid D={d} i={i}");
            }
            for j in 1..=2 * d {
                let dist = (i - j).rem_euclid(2 * d).min((j - i).rem_euclid(2 * d));
                if dist >= 2 {
                    assert!(e.commutator(ctx.tl(j)).unwrap().frobenius_norm() <= 1e-12);
                }
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed <= 10.0, "Clifford/TL suite took {elapsed:.1}s > 10s");
    pass(1, &format!("Clifford + TL relations, D = 2..6, ≤ 1e-12 ({elapsed:.2}s)"));
}

/// Criterion 2: lattice mode anticommutators mod 2D and adjoint symmetry
/// for all window indices, D = 2..6, at 1e-12.
#[test]
fn criterion_02_lattice_modes() {
    for d in 2..=6 {
        let ctx = LatticeContext::new(d).unwrap();
        let id = OperatorSum::identity(ctx.sites());
        let zero = OperatorSum::zero(ctx.sites());
        for n in 1..=2 * d {
            for m in 1..=2 * d {
                let anti = ctx.psi(n).anticommutator(ctx.psi(m)).unwrap();
                let expect = if (n + m).rem_euclid(2 * d) == 0 { &id } else { &zero };
                assert!(anti.residual(expect).unwrap() <= 1e-12, "D={d} ({n},{m})");
            }
            assert!(ctx.psi(n).adjoint().residual(ctx.psi(-n)).unwrap() <= 1e-12);
            assert!(ctx.psi(n).residual(ctx.psi(n + 2 * d)).unwrap() <= 1e-12);
        }
    }
    pass(2, "lattice fermi modes: {ψ_n, ψ_m} = δ_{n+m mod 2D} and ψ_n† = ψ_{−n}, D = 2..6, ≤ 1e-12");
}

/// Criterion 3: equal-q and mixed-power deformed commutators on the lattice
/// for D = 4..6, |n|,|m| ≤ 2, (α,β) ∈ {(1,1),(1,2),(2,1),(1,3)} at 1e-10;
/// out-of-window cases are recorded, not asserted.
#[test]
fn criterion_03_lattice_dva_commutators() {
    for d in 4..=6 {
        let ctx = LatticeContext::new(d).unwrap();
        for (alpha, beta) in [(1, 1), (1, 2), (2, 1), (1, 3)] {
            for n in -2..=2 {
                for m in -2..=2 {
                    match comm_check_general(&ctx, n, m, alpha, beta).unwrap() {
                        CommOutcome::Asserted(r) => assert!(
                            r.residual <= 1e-10,
                            "D={d} n={n} m={m} α={alpha} β={beta}: {}",
                            r.residual
                        ),
                        CommOutcome::Recorded(rec) => {
                            panic!("in-window case recorded unexpectedly: {:?}", rec.params)
                        }
                    }
                }
            }
        }
    }
    // q^{α+β} = q^{2D} = −1 at D = 2 is outside the window: recorded, not asserted
    let small = LatticeContext::new(2).unwrap();
    match comm_check_general(&small, 1, -1, 1, 3).unwrap() {
        CommOutcome::Recorded(_) => {}
        CommOutcome::Asserted(_) => panic!("degenerate q-power should be recorded, not asserted"),
    }
    pass(3, "lattice DVA commutators, D = 4..6, |n|,|m| ≤ 2, four (α,β) pairs, ≤ 1e-10; out-of-window recorded");
}

/// Criterion 4: triple equality of the hamiltonian tower — H-recursion,
/// sine formula, D₀ decomposition — for n = 1..4, D = 3..6 at 1e-9 wherever
/// the H-nesting fits the ring (2n−1 ≤ 2D−1), plus mutual commutativity at
/// 1e-9. The single corner (n, D) = (4, 3) is a wrap-around collapse: it is
/// asserted to be detected (H₇ ≡ 0, recursion ≠ modes) and the surviving
/// two-route equality is asserted instead.
#[test]
fn criterion_04_hamiltonian_triple_equality() {
    let mut corner_note = String::new();
    for d in 3..=6 {
        let ctx = LatticeContext::new(d).unwrap();
        let tower = ctx.build_a_tower(4).unwrap();
        for n in 1..=4i64 {
            let a = &tower[(n - 1) as usize];
            let modes = ctx.a_via_modes(n).unwrap();
            let d0 = ctx.a_via_d0(n).unwrap();
            let r_modes = a.residual(&modes).unwrap();
            let r_d0 = d0.residual(&modes).unwrap();
            if ctx.tower_in_window(n) {
                assert!(r_modes <= 1e-9, "D={d} n={n}: recursion vs modes {r_modes}");
                assert!(r_d0 <= 1e-9, "D={d} n={n}: D0 vs modes {r_d0}");
            } else {
                // the wrap-around corner: detect, measure, record
                assert_eq!((d, n), (3, 4), "only (4,3) may be out of window on this grid");
                let h = ctx.build_h(n).unwrap();
                assert!(h.frobenius_norm() <= 1e-12, "H₇ should collapse to zero at D=3");
                assert!(r_modes > 1e-3, "recursion should visibly disagree at the corner");
                assert!(r_d0 <= 1e-9, "sine formula and D₀ route agree at every size");
                corner_note = format!(
                    "corner (n=4, D=3) out of window: H₇ ≡ 0 (‖H₇‖ = {:.1e}), recursion-vs-modes residual {:.3e} recorded, modes-vs-D₀ ≤ 1e-9 asserted",
                    h.frobenius_norm(),
                    r_modes
                );
            }
        }
        for i in 0..tower.len() {
            for j in i + 1..tower.len() {
                let comm = tower[i].commutator(&tower[j]).unwrap();
                let denom = tower[i].frobenius_norm().max(tower[j].frobenius_norm()).max(1.0);
                assert!(comm.frobenius_norm() / denom <= 1e-9, "[A,A] D={d} ({i},{j})");
            }
        }
    }
    pass(4, &format!("tower triple equality n = 1..4, D = 3..6 (window 2n−1 ≤ 2D−1), commutativity ≤ 1e-9; {corner_note}"));
}

/// Criterion 5: dense spectra equal the partition-formula multiset (2^D
/// values) for n = 1..3, D = 2..5 at 1e-9, including the anchors
/// {−2,−2,2,2} for A₁ and {−16,−16,16,16} for A₃ at D = 2. The corner
/// (n, D) = (3, 2) is out of the H-window; the mode-route spectrum is
/// asserted there and the recursion mismatch is measured.
#[test]
fn criterion_05_spectrum_reproduction() {
    let mut corner_note = String::new();
    for d in 2..=5 {
        let ctx = LatticeContext::new(d).unwrap();
        for n in 1..=3i64 {
            let modes_check = spectrum_check(&ctx, n, &ctx.a_via_modes(n).unwrap()).unwrap();
            assert!(modes_check.residual <= 1e-9, "mode spectrum D={d} n={n}: {}", modes_check.residual);
            let rec_check = spectrum_check(&ctx, n, &ctx.build_a(n).unwrap()).unwrap();
            if ctx.tower_in_window(n) {
                assert!(rec_check.residual <= 1e-9, "recursion spectrum D={d} n={n}: {}", rec_check.residual);
            } else {
                assert_eq!((d, n), (2, 3), "only (3,2) may be out of window on this grid");
                assert!(rec_check.residual > 1e-3);
                corner_note = format!(
                    "corner (n=3, D=2) out of window: recursion-spectrum mismatch {:.3e} recorded, mode spectrum asserted",
                    rec_check.residual
                );
            }
        }
    }
    // concrete anchors at D = 2
    let ctx = LatticeContext::new(2).unwrap();
    let a1 = eig_hermitian(&ctx.build_a(1).unwrap().to_dense().unwrap()).unwrap();
    for (v, e) in a1.iter().zip([-2.0, -2.0, 2.0, 2.0]) {
        assert!((v - e).abs() <= 1e-9, "A₁ spectrum at D=2");
    }
    let a3 = eig_hermitian(&ctx.build_a(2).unwrap().to_dense().unwrap()).unwrap();
    for (v, e) in a3.iter().zip([-16.0, -16.0, 16.0, 16.0]) {
        assert!((v - e).abs() <= 1e-9, "A₃ spectrum at D=2");
    }
    pass(5, &format!("spectra = partition formula (2^D values), n = 1..3, D = 2..5, ≤ 1e-9; anchors ±2, ±16 at D=2; {corner_note}"));
}

/// Criterion 6: lattice null state ‖(2(q⁻¹−q)[3]_q D₋₂ + [2]_q D₋₁²)σ_±‖ ≤
/// 1e-10 for D = 3..6 with the sign-flipped control ≥ 0.1. (The D₋₂
/// coefficient is doubled relative to the continuum combination because the
/// lattice window sum double-covers mode pairs.)
#[test]
fn criterion_06_lattice_null_state() {
    for d in 3..=6 {
        let ctx = LatticeContext::new(d).unwrap();
        let (null, control) = null_state_check(&ctx).unwrap();
        assert!(null.residual <= 1e-10, "D={d} null: {}", null.residual);
        assert!(control.pass, "D={d} control weaker than 0.1");
        // the undoubled continuum coefficient is *not* null on the lattice
        let q = ctx.q();
        let c_a = (q.power_value(-1) - q.power_value(1)) * q_int(3, q).unwrap();
        let c_b = q_int(2, q).unwrap();
        let d2 = ctx.lattice_d(-2, 1).unwrap();
        let d1 = ctx.lattice_d(-1, 1).unwrap();
        let undoubled = d2.scale(c_a).add(&d1.multiply(&d1).unwrap().scale(c_b)).unwrap();
        let (plus, _) = ctx.sigma_states().unwrap();
        assert!(undoubled.apply(&plus).norm() > 0.1);
    }
    pass(6, "lattice null state ≤ 1e-10 for D = 3..6, controls ≥ 0.1");
}

/// Criterion 7: [L_n, L_m] with c = 1/2 for |n|,|m| ≤ 3, caps 6 and 8, both
/// sectors, at 1e-12; the (2,−2) vacuum expectation equals 1/4.
#[test]
fn criterion_07_fock_virasoro() {
    for cap in [6, 8] {
        for sector in [Sector::NeveuSchwarz, Sector::Ramond] {
            for n in -3..=3 {
                for m in -3..=3 {
                    let r = fock::virasoro_comm_check(n, m, cap, sector).unwrap();
                    assert!(r.residual <= 1e-12, "cap={cap} {sector:?} ({n},{m}): {}", r.residual);
                }
            }
        }
    }
    let vac = FockVector::highest_weight(Sector::NeveuSchwarz, 16);
    let vev = fock::apply_l(&fock::apply_l(&vac, -2).unwrap(), 2)
        .unwrap()
        .coeff(&FockState::vacuum(Sector::NeveuSchwarz));
    assert!((vev - 0.25).norm() <= 1e-12, "⟨0|[L₂,L₋₂]|0⟩ = {vev}");
    pass(7, "Virasoro algebra at c = 1/2, |n|,|m| ≤ 3, caps 6–8, both sectors, ≤ 1e-12; ⟨0|L₂L₋₂|0⟩ = 1/4");
}

/// Criterion 8: mixed-power deformed commutators and [D_n, ψ_m] on the same
/// grid at 1e-10, and the continuum level-2 null state at 1e-12 for three
/// distinct q values.
#[test]
fn criterion_08_fock_dva() {
    let q = QParam::exact(1, 10);
    for cap in [6, 8] {
        for sector in [Sector::NeveuSchwarz, Sector::Ramond] {
            for (alpha, beta) in [(1, 1), (1, 2), (2, 1), (1, 3)] {
                for n in -3..=3 {
                    for m in -3..=3 {
                        let r = fock::dva_comm_check(n, m, alpha, beta, &q, cap, sector).unwrap();
                        assert!(
                            r.residual <= 1e-10,
                            "cap={cap} {sector:?} ({n},{m}) α={alpha} β={beta}: {}",
                            r.residual
                        );
                    }
                }
            }
            let start = -3 + (1 - sector.parity());
            for n in -3..=3i64 {
                for m2 in (start..=3).step_by(2) {
                    let r = fock::dpsi_comm_check(n, m2, &q, cap, sector).unwrap();
                    assert!(r.residual <= 1e-10, "cap={cap} {sector:?} [D_{n}, ψ_{m2}/2]: {}", r.residual);
                }
            }
        }
    }
    for q in [QParam::exact(1, 8), QParam::exact(1, 10), QParam::from_angle(0.3)] {
        let (null, control) = fock::null_level2_check(&q).unwrap();
        assert!(null.residual <= 1e-12, "null at q={:?}: {}", q.value(), null.residual);
        assert!(control.pass);
    }
    pass(8, "deformed commutators + [D_n, ψ_m] ≤ 1e-10 (caps 6–8, both sectors); level-2 null ≤ 1e-12 at three q");
}

/// Criterion 9: I_{2k−1} diagonal with eigenvalues 2Σ(n−δ/2)^{2k−1} exactly
/// (1e-12, k ≤ 4, levels ≤ 8), and the three level-6 Virasoro identities
/// with right-hand coefficients 112, 16, 56 at 1e-12.
#[test]
fn criterion_09_integrals_of_motion() {
    for sector in [Sector::NeveuSchwarz, Sector::Ramond] {
        for state in fock::enumerate_basis(sector, 16) {
            let v = FockVector::from_state(state.clone(), 32);
            for k in 1..=4 {
                let ev = fock::iom_eigenvalue(&state, k);
                let diff = fock::apply_i(&v, k)
                    .unwrap()
                    .sub(&v.scale(Complex64::new(ev, 0.0)))
                    .unwrap();
                assert!(diff.norm() <= 1e-12, "{sector:?} k={k} {:?}", state.partition);
            }
        }
    }
    let reports = fock::iom_virasoro_identity_check(8).unwrap();
    assert_eq!(reports.len(), 3);
    for r in &reports {
        assert!(r.residual <= 1e-12, "{:?}", r.params);
    }
    let coeffs: Vec<&str> = reports.iter().map(|r| r.params["rhs_coeff"].as_str()).collect();
    assert!(coeffs.contains(&"112") && coeffs.contains(&"16") && coeffs.contains(&"56"));
    pass(9, "I_{2k−1} eigenvalues exact ≤ 1e-12 (k ≤ 4, levels ≤ 8); level-6 identities with coefficients 112, 16, 56");
}

/// Criterion 10: classical-limit slope ≥ 1.8 for n ∈ {0, ±1, ±2} and the
/// D₀ expansion in the odd charges within 1e-8 at k_max = 6 for small angles.
#[test]
fn criterion_10_limits() {
    for sector in [Sector::NeveuSchwarz, Sector::Ramond] {
        for n in [-2, -1, 0, 1, 2] {
            let r = fock::classical_limit_check(n, &[1e-2, 1e-3], 6, sector).unwrap();
            assert!(r.pass, "{sector:?} n={n}: slope {:?}", r.params.get("slope"));
        }
        for (q, cap) in [(QParam::exact(1, 20), 4), (QParam::exact(1, 40), 6)] {
            let r = fock::d0_expansion_check(&q, 6, cap, sector).unwrap();
            assert!(r.residual <= 1e-8, "{sector:?}: {}", r.residual);
        }
    }
    pass(10, "classical limit slope ≥ 1.8 for n ∈ {0,±1,±2}; D₀ expansion ≤ 1e-8 at k_max = 6");
}

/// Criterion 11: `verify --suite all` over the default grid completes well
/// inside five minutes with exit code 0 and byte-deterministic JSON
/// (wall time excluded).
#[test]
fn criterion_11_end_to_end() {
    let start = Instant::now();
    let cfg = SuiteConfig::default();
    let first = run_suite(&cfg).unwrap();
    let second = run_suite(&cfg).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    assert!(first.all_passed(), "default suite has {} failures", first.summary.failed);
    assert!(elapsed <= 300.0, "two suite runs took {elapsed:.0}s");
    let strip = |r: &qvir::report::SuiteResult| {
        let mut v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        v.as_object_mut().unwrap().remove("wall_time_s");
        serde_json::to_string(&v).unwrap()
    };
    assert_eq!(strip(&first), strip(&second), "suite output must be deterministic");
    // the same run through the binary: exit code 0 and parseable JSON
    let out = tempdir_path("acceptance_report.json");
    let status = std::process::Command::new(env!("CARGO_BIN_EXE_qvir"))
        .args(["verify", "--suite", "all", "--out"])
        .arg(&out)
        .status()
        .expect("binary runs");
    assert!(status.success(), "verify --suite all must exit 0");
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["summary"]["failed"], 0);
    assert_eq!(
        run_suite(&SuiteKind::All.into_config()).unwrap().summary.total as u64,
        report["summary"]["total"].as_u64().unwrap()
    );
    pass(11, &format!(
        "verify --suite all: {} checks green, deterministic JSON, {elapsed:.1}s ≪ 300s",
        first.summary.total
    ));
}

fn tempdir_path(name: &str) -> std::path::PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("qvir_{}_{name}", std::process::id()));
    p
}

trait IntoConfig {
    fn into_config(self) -> SuiteConfig;
}

impl IntoConfig for SuiteKind {
    fn into_config(self) -> SuiteConfig {
        SuiteConfig { suite: self, ..SuiteConfig::default() }
    }
}
