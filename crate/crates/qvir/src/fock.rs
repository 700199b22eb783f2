//! Truncated fermionic Fock space: exact application of the fermi modes ψ_n,
//! the Virasoro modes L_n at c = 1/2, the deformed modes D_n(q), and the odd
//! integrals of motion I_{2k−1} to graded states.
//!
//! Two sectors, distinguished by the mode grading δ:
//!
//! - [`Sector::NeveuSchwarz`] (δ = 1): half-integer modes, highest weight
//!   state |0⟩ of weight h = 0;
//! - [`Sector::Ramond`] (δ = 0): integer modes with a zero mode ψ₀ obeying
//!   ψ₀² = 1/2, acting on the doublet |1/16⟩_± as ψ₀|1/16⟩_± = |1/16⟩_∓/√2.
//!
//! Mode indices are stored doubled (`n₂ = 2n`) so both gradings live in
//! `i64`: odd values are Neveu-Schwarz modes, even values Ramond modes.
//!
//! All four simplified bilinear mode sums collapse to one normal-ordered
//! form, which is what this module implements:
//!
//! ```text
//! L_n      =            Σ_{2b>n} (b − n/2)  ψ_{n−b} ψ_b
//! D_n(q)   = (q − q⁻¹) Σ_{2b>n} [2b − n]_q ψ_{n−b} ψ_b
//! I_{2k−1} = 2 Σ_{b>0} b^{2k−1} ψ_{−b} ψ_b
//! ```
//!
//! where b runs over the sector's mode lattice. Applied to a state of finite
//! level each sum has finitely many nonvanishing terms, so every operator
//! application below is exact; the level cap only drops terms pushed above
//! the cap and flags the vector as lossy when it does.
//!
//! The operators are kept in this pure normal-ordered form with no anomalous
//! constants; in particular L₀ and D₀ measure pure level in both sectors.
//! The Ramond zero mode then shows up in the algebra as an extra central
//! contribution on top of the Neveu-Schwarz one, and the commutator checks
//! carry it explicitly: see [`virasoro_central`] and [`dva_sector_extra`].

use crate::params;
use crate::qnum::{q_int, QParam};
use crate::report::CheckReport;
use num_complex::Complex64;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum FockError {
    #[error("mode index {0}/2 has the wrong grading for the {1:?} sector")]
    SectorIndexMismatch(i64, Sector),
    #[error("degenerate deformation parameter (q = ±1)")]
    DegenerateQ,
    #[error("vectors live in different sectors")]
    SectorMismatch,
    #[error("empty check window (cap too small for |n|+|m|)")]
    EmptyWindow,
}

/// Fermion boundary condition: δ = 1 half-integer modes, δ = 0 integer modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sector {
    NeveuSchwarz,
    Ramond,
}

impl Sector {
    /// Doubled mode indices in this sector have this parity (1 = odd, 0 = even).
    pub fn parity(self) -> i64 {
        match self {
            Sector::NeveuSchwarz => 1,
            Sector::Ramond => 0,
        }
    }

    pub fn accepts(self, n2: i64) -> bool {
        n2.rem_euclid(2) == self.parity()
    }
}

/// Ramond doublet label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Spin {
    Plus,
    Minus,
}

impl Spin {
    fn flip(self) -> Spin {
        match self {
            Spin::Plus => Spin::Minus,
            Spin::Minus => Spin::Plus,
        }
    }
}

/// A fermionic partition state: strictly decreasing positive mode depths
/// (doubled), applied to the sector highest weight state in descending order
/// (the deepest mode is the leftmost factor, the shallowest acts first).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FockState {
    pub sector: Sector,
    /// Doubled depths, strictly decreasing, all positive.
    pub partition: Vec<i64>,
    /// Doublet label; `None` exactly in the Neveu-Schwarz sector.
    pub spin: Option<Spin>,
}

impl FockState {
    pub fn vacuum(sector: Sector) -> FockState {
        let spin = match sector {
            Sector::NeveuSchwarz => None,
            Sector::Ramond => Some(Spin::Plus),
        };
        FockState { sector, partition: vec![], spin }
    }

    pub fn ramond(spin: Spin) -> FockState {
        FockState { sector: Sector::Ramond, partition: vec![], spin: Some(spin) }
    }

    /// Doubled level: twice the sum of the mode depths.
    pub fn level2(&self) -> i64 {
        self.partition.iter().sum()
    }
}

/// A finite complex-weighted sum of Fock states of one sector, graded by
/// level and truncated at `cap2` (doubled level cap).
#[derive(Debug, Clone)]
pub struct FockVector {
    pub sector: Sector,
    pub cap2: i64,
    terms: BTreeMap<FockState, Complex64>,
    /// Set when a creation pushed some term above the cap and it was dropped.
    pub lossy: bool,
}

impl FockVector {
    pub fn zero(sector: Sector, cap2: i64) -> FockVector {
        FockVector { sector, cap2, terms: BTreeMap::new(), lossy: false }
    }

    pub fn from_state(state: FockState, cap2: i64) -> FockVector {
        let mut v = FockVector::zero(state.sector, cap2);
        v.push(state, Complex64::new(1.0, 0.0));
        v
    }

    /// The sector vacuum / highest weight state as a vector.
    pub fn highest_weight(sector: Sector, cap2: i64) -> FockVector {
        FockVector::from_state(FockState::vacuum(sector), cap2)
    }

    fn push(&mut self, state: FockState, coeff: Complex64) {
        if state.level2() > self.cap2 {
            self.lossy = true;
            return;
        }
        *self.terms.entry(state).or_insert(Complex64::new(0.0, 0.0)) += coeff;
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| c.norm() > 1e-14);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FockState, &Complex64)> {
        self.terms.iter()
    }

    pub fn coeff(&self, state: &FockState) -> Complex64 {
        self.terms.get(state).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm_sqr()).sum::<f64>().max(0.0).sqrt()
    }

    pub fn scale(&self, c: Complex64) -> FockVector {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out.prune();
        out
    }

    pub fn add(&self, other: &FockVector) -> Result<FockVector, FockError> {
        if self.sector != other.sector {
            return Err(FockError::SectorMismatch);
        }
        let mut out = self.clone();
        out.lossy |= other.lossy;
        for (s, c) in &other.terms {
            out.push(s.clone(), *c);
        }
        out.prune();
        Ok(out)
    }

    pub fn sub(&self, other: &FockVector) -> Result<FockVector, FockError> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Maximum doubled depth present in any term (0 for pure highest weight).
    fn max_depth2(&self) -> i64 {
        self.terms
            .keys()
            .filter_map(|s| s.partition.first().copied())
            .max()
            .unwrap_or(0)
    }
}

/// Apply the fermi mode ψ_{n₂/2}. Creation for n₂ < 0, annihilation for
/// n₂ > 0, and the Ramond zero-mode spin flip (with the sign (−1)^k from
/// anticommuting past the k creation factors) for n₂ = 0.
pub fn apply_psi(v: &FockVector, n2: i64) -> Result<FockVector, FockError> {
    if !v.sector.accepts(n2) {
        return Err(FockError::SectorIndexMismatch(n2, v.sector));
    }
    let mut out = FockVector::zero(v.sector, v.cap2);
    out.lossy = v.lossy;
    for (state, coeff) in &v.terms {
        if n2 < 0 {
            let depth = -n2;
            if state.partition.contains(&depth) {
                continue; // Pauli exclusion
            }
            let pos = state.partition.iter().filter(|&&d| d > depth).count();
            let sign = if pos % 2 == 0 { 1.0 } else { -1.0 };
            let mut p = state.partition.clone();
            p.insert(pos, depth);
            out.push(
                FockState { sector: state.sector, partition: p, spin: state.spin },
                coeff * sign,
            );
        } else if n2 > 0 {
            match state.partition.iter().position(|&d| d == n2) {
                // anticommute past the annihilated mode's predecessors,
                // contract, and drop the pass-through term (ψ_{n>0} kills
                // the highest weight state)
                Some(pos) => {
                    let sign = if pos % 2 == 0 { 1.0 } else { -1.0 };
                    let mut p = state.partition.clone();
                    p.remove(pos);
                    out.push(
                        FockState { sector: state.sector, partition: p, spin: state.spin },
                        coeff * sign,
                    );
                }
                None => continue,
            }
        } else {
            // zero mode: through k creation factors, then the doublet flip
            let k = state.partition.len();
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let spin = state.spin.expect("zero mode only exists in the Ramond sector");
            out.push(
                FockState {
                    sector: state.sector,
                    partition: state.partition.clone(),
                    spin: Some(spin.flip()),
                },
                coeff * sign * std::f64::consts::FRAC_1_SQRT_2,
            );
        }
    }
    out.prune();
    Ok(out)
}

/// ψ_{a₂/2} ψ_{b₂/2} applied right to left.
fn apply_pair(v: &FockVector, a2: i64, b2: i64) -> Result<FockVector, FockError> {
    apply_psi(&apply_psi(v, b2)?, a2)
}

/// The doubled b-indices of the normal-ordered bilinear Σ_{2b>n} w(b) ψ_{n−b}ψ_b
/// that can act nontrivially on `v`: parity-correct, 2b > n, and bounded by
/// the deepest mode present (pure-creation pairs have b₂ ≤ 0).
fn bilinear_range(v: &FockVector, n: i64) -> impl Iterator<Item = i64> {
    let parity = v.sector.parity();
    // smallest b2 with b2 > n and b2 ≡ parity (mod 2)
    let mut start = n + 1;
    if start.rem_euclid(2) != parity {
        start += 1;
    }
    let end = v.max_depth2().max(0);
    (start..=end).step_by(2)
}

/// Virasoro mode L_n = Σ_{2b>n} (b − n/2) ψ_{n−b} ψ_b.
pub fn apply_l(v: &FockVector, n: i64) -> Result<FockVector, FockError> {
    let mut out = FockVector::zero(v.sector, v.cap2);
    out.lossy = v.lossy;
    for b2 in bilinear_range(v, n) {
        let w = (b2 - n) as f64 / 2.0;
        let term = apply_pair(v, 2 * n - b2, b2)?;
        out = out.add(&term.scale(Complex64::new(w, 0.0)))?;
    }
    Ok(out)
}

/// Deformed mode D_n(q) = (q − q⁻¹) Σ_{2b>n} [2b − n]_q ψ_{n−b} ψ_b.
pub fn apply_d(v: &FockVector, n: i64, q: &QParam) -> Result<FockVector, FockError> {
    if q.is_degenerate() {
        return Err(FockError::DegenerateQ);
    }
    let prefactor = q.power_value(1) - q.power_value(-1);
    let mut out = FockVector::zero(v.sector, v.cap2);
    out.lossy = v.lossy;
    for b2 in bilinear_range(v, n) {
        let w = q_int(b2 - n, q).map_err(|_| FockError::DegenerateQ)?;
        let term = apply_pair(v, 2 * n - b2, b2)?;
        out = out.add(&term.scale(prefactor * w))?;
    }
    Ok(out)
}

/// Integral of motion I_{2k−1} = 2 Σ_{b>0} b^{2k−1} ψ_{−b} ψ_b, diagonal on
/// partition states.
pub fn apply_i(v: &FockVector, k: i64) -> Result<FockVector, FockError> {
    assert!(k >= 1, "I index must be a positive odd charge label");
    let mut out = FockVector::zero(v.sector, v.cap2);
    out.lossy = v.lossy;
    for b2 in bilinear_range(v, 0) {
        if b2 <= 0 {
            continue;
        }
        let w = 2.0 * (b2 as f64 / 2.0).powi(2 * k as i32 - 1);
        let term = apply_pair(v, -b2, b2)?;
        out = out.add(&term.scale(Complex64::new(w, 0.0)))?;
    }
    Ok(out)
}

/// Closed-form I_{2k−1} eigenvalue 2 Σ_{d∈P} d^{2k−1} of a partition state.
pub fn iom_eigenvalue(state: &FockState, k: i64) -> f64 {
    state
        .partition
        .iter()
        .map(|&d2| 2.0 * (d2 as f64 / 2.0).powi(2 * k as i32 - 1))
        .sum()
}

/// The naive even normal-ordered sum Σ_{b>0} b^{2k} (ψ_{−b}ψ_b + ψ_bψ_{−b} − 1),
/// identically zero by the anticommutator; implemented as a check of the
/// engine rather than as an operator.
pub fn apply_i_even_naive(v: &FockVector, k: i64) -> Result<FockVector, FockError> {
    let mut out = FockVector::zero(v.sector, v.cap2);
    for b2 in bilinear_range(v, 0) {
        if b2 <= 0 {
            continue;
        }
        let w = Complex64::new((b2 as f64 / 2.0).powi(2 * k as i32), 0.0);
        let t1 = apply_pair(v, -b2, b2)?;
        let t2 = apply_pair(v, b2, -b2)?;
        let sum = t1.add(&t2)?.sub(v)?;
        out = out.add(&sum.scale(w))?;
    }
    Ok(out)
}

/// All partition states of the sector with doubled level ≤ `max2`
/// (both doublet labels in the Ramond sector), in deterministic order.
pub fn enumerate_basis(sector: Sector, max2: i64) -> Vec<FockState> {
    if max2 < 0 {
        return Vec::new();
    }
    fn partitions(parity: i64, max_part: i64, budget: i64, acc: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        out.push(acc.clone());
        let mut d = max_part;
        if d.rem_euclid(2) != parity {
            d -= 1;
        }
        while d >= 1 {
            if d <= budget {
                acc.push(d);
                partitions(parity, d - 2, budget - d, acc, out);
                acc.pop();
            }
            d -= 2;
        }
    }
    let mut parts = Vec::new();
    partitions(sector.parity(), max2, max2, &mut Vec::new(), &mut parts);
    let mut states = Vec::new();
    for p in parts {
        match sector {
            Sector::NeveuSchwarz => states.push(FockState { sector, partition: p, spin: None }),
            Sector::Ramond => {
                states.push(FockState { sector, partition: p.clone(), spin: Some(Spin::Plus) });
                states.push(FockState { sector, partition: p, spin: Some(Spin::Minus) });
            }
        }
    }
    states.sort();
    states
}

/// Relative Frobenius distance between two operators given by their action,
/// over the basis of states with doubled level ≤ `window2`.
fn windowed_residual<F, G>(
    sector: Sector,
    window2: i64,
    cap2: i64,
    lhs: F,
    rhs: G,
) -> Result<f64, FockError>
where
    F: Fn(&FockVector) -> Result<FockVector, FockError>,
    G: Fn(&FockVector) -> Result<FockVector, FockError>,
{
    let basis = enumerate_basis(sector, window2);
    if basis.is_empty() {
        return Err(FockError::EmptyWindow);
    }
    let (mut diff2, mut l2, mut r2) = (0.0, 0.0, 0.0);
    for state in basis {
        let v = FockVector::from_state(state, cap2);
        let lv = lhs(&v)?;
        let rv = rhs(&v)?;
        assert!(!lv.lossy && !rv.lossy, "window too large for the level cap");
        diff2 += lv.sub(&rv)?.norm().powi(2);
        l2 += lv.norm().powi(2);
        r2 += rv.norm().powi(2);
    }
    Ok(diff2.sqrt() / 1f64.max(l2.sqrt()).max(r2.sqrt()))
}

/// Virasoro central term of [L_n, L_{−n}] at c = 1/2 with pure-level L₀:
/// n(n²−1)/24 in the Neveu-Schwarz sector, plus n/8 in the Ramond sector
/// (the h = 1/16 weight of the doublet, folded into the central term because
/// L₀ carries no constant).
pub fn virasoro_central(n: i64, sector: Sector) -> f64 {
    let nf = n as f64;
    let ns = nf * (nf * nf - 1.0) / 24.0;
    match sector {
        Sector::NeveuSchwarz => ns,
        Sector::Ramond => ns + nf / 8.0,
    }
}

/// Ramond-sector extra central term of the deformed algebra,
/// g_n(x) = (x − 1)(xⁿ − x⁻ⁿ) / (2(x + 1)), from the zero mode.
pub fn dva_sector_extra(n: i64, x: &QParam) -> Complex64 {
    let xv = x.power_value(1);
    (xv - 1.0) * (x.power_value(n) - x.power_value(-n)) / ((xv + 1.0) * 2.0)
}

/// [L_n, L_m] = (n−m) L_{n+m} + central·δ_{n+m,0} over the exactness window.
pub fn virasoro_comm_check(n: i64, m: i64, level_cap: i64, sector: Sector) -> Result<CheckReport, FockError> {
    let window2 = 2 * (level_cap - n.abs() - m.abs());
    let cap2 = 2 * (level_cap + n.abs() + m.abs());
    let residual = windowed_residual(
        sector,
        window2,
        cap2,
        |v| apply_l(&apply_l(v, m)?, n)?.sub(&apply_l(&apply_l(v, n)?, m)?),
        |v| {
            let mut rhs = apply_l(v, n + m)?.scale(Complex64::new((n - m) as f64, 0.0));
            if n + m == 0 {
                rhs = rhs.add(&v.scale(Complex64::new(virasoro_central(n, sector), 0.0)))?;
            }
            Ok(rhs)
        },
    )?;
    Ok(CheckReport::new(
        "fock_virasoro_comm",
        params! {"n" => n, "m" => m, "cap" => level_cap, "sector" => format!("{sector:?}")},
        residual,
        1e-12,
    ))
}

/// Deformed commutator check. Equal powers (α = β) verify
///
/// ```text
/// [D_n(Q), D_m(Q)] = (Q−Q⁻¹)[n−m]_Q D_{n+m}(Q²) + ([n]_{Q²} − n)δ_{n+m,0}
/// ```
///
/// with Q = q^α; mixed powers verify
///
/// ```text
/// [D_n(q^α), D_m(q^β)] = (q−q⁻¹)[βn−αm]_q D_{n+m}(q^{α+β})
///                      + (q−q⁻¹)[αm+βn]_q D_{n+m}(q^{α−β})
///                      + ([n]_{q^{α+β}} − [n]_{q^{α−β}})δ_{n+m,0}
/// ```
///
/// each with the Ramond extra central `g_n(q^{α+β}) − g_n(q^{α−β})` (equal
/// powers: `g_n(Q²)`) when the sector has the zero mode.
pub fn dva_comm_check(
    n: i64,
    m: i64,
    alpha: i64,
    beta: i64,
    q: &QParam,
    level_cap: i64,
    sector: Sector,
) -> Result<CheckReport, FockError> {
    let window2 = 2 * (level_cap - n.abs() - m.abs());
    let cap2 = 2 * (level_cap + n.abs() + m.abs());
    let qa = q.power(alpha);
    let qb = q.power(beta);
    if qa.is_degenerate() || qb.is_degenerate() {
        return Err(FockError::DegenerateQ);
    }
    let lhs = |v: &FockVector| apply_d(&apply_d(v, m, &qb)?, n, &qa)?.sub(&apply_d(&apply_d(v, n, &qa)?, m, &qb)?);

    let base = q.power_value(1) - q.power_value(-1);
    let residual = if alpha == beta {
        let q2 = qa.power(2);
        if q2.is_degenerate() {
            return Err(FockError::DegenerateQ);
        }
        let coeff = (qa.power_value(1) - qa.power_value(-1)) * q_int(n - m, &qa).map_err(|_| FockError::DegenerateQ)?;
        let mut central = Complex64::new(0.0, 0.0);
        if n + m == 0 {
            central = q_int(n, &q2).map_err(|_| FockError::DegenerateQ)? - n as f64;
            if sector == Sector::Ramond {
                central += dva_sector_extra(n, &q2);
            }
        }
        windowed_residual(sector, window2, cap2, lhs, |v| {
            let mut rhs = apply_d(v, n + m, &q2)?.scale(coeff);
            if n + m == 0 {
                rhs = rhs.add(&v.scale(central))?;
            }
            Ok(rhs)
        })?
    } else {
        let x = q.power(alpha + beta);
        let y = q.power(alpha - beta);
        if x.is_degenerate() || y.is_degenerate() {
            return Err(FockError::DegenerateQ);
        }
        let c1 = base * q_int(beta * n - alpha * m, q).map_err(|_| FockError::DegenerateQ)?;
        let c2 = base * q_int(alpha * m + beta * n, q).map_err(|_| FockError::DegenerateQ)?;
        let mut central = Complex64::new(0.0, 0.0);
        if n + m == 0 {
            central = q_int(n, &x).map_err(|_| FockError::DegenerateQ)?
                - q_int(n, &y).map_err(|_| FockError::DegenerateQ)?;
            if sector == Sector::Ramond {
                central += dva_sector_extra(n, &x) - dva_sector_extra(n, &y);
            }
        }
        windowed_residual(sector, window2, cap2, lhs, |v| {
            let mut rhs = apply_d(v, n + m, &x)?.scale(c1);
            rhs = rhs.add(&apply_d(v, n + m, &y)?.scale(c2))?;
            if n + m == 0 {
                rhs = rhs.add(&v.scale(central))?;
            }
            Ok(rhs)
        })?
    };
    Ok(CheckReport::new(
        "fock_dva_comm",
        params! {"n" => n, "m" => m, "alpha" => alpha, "beta" => beta,
                 "q" => format!("{:.6}", q.value()), "cap" => level_cap, "sector" => format!("{sector:?}")},
        residual,
        1e-10,
    ))
}

/// [D_n(q), ψ_m] = (q⁻¹ − q)[n + 2m]_q ψ_{n+m} over the window.
/// `m2` is the doubled fermion index.
pub fn dpsi_comm_check(n: i64, m2: i64, q: &QParam, level_cap: i64, sector: Sector) -> Result<CheckReport, FockError> {
    let window2 = 2 * level_cap - 2 * n.abs() - m2.abs() - 1;
    let cap2 = 2 * level_cap + 2 * n.abs() + m2.abs() + 2;
    // [n + 2m]_q with m = m2/2 is the ordinary integer n + m2
    let coeff =
        (q.power_value(-1) - q.power_value(1)) * q_int(n + m2, q).map_err(|_| FockError::DegenerateQ)?;
    let residual = windowed_residual(
        sector,
        window2,
        cap2,
        |v| apply_d(&apply_psi(v, m2)?, n, q)?.sub(&apply_psi(&apply_d(v, n, q)?, m2)?),
        |v| Ok(apply_psi(v, 2 * n + m2)?.scale(coeff)),
    )?;
    Ok(CheckReport::new(
        "fock_dpsi_comm",
        params! {"n" => n, "m2" => m2, "q" => format!("{:.6}", q.value()),
                 "cap" => level_cap, "sector" => format!("{sector:?}")},
        residual,
        1e-10,
    ))
}

/// Level-2 null vector in the Ramond sector:
/// ((q⁻¹−q)[3]_q D_{−2} + [2]_q D_{−1}²)|1/16⟩_± = 0, any q ≠ ±1,
/// with the sign-flipped combination as a power control.
pub fn null_level2_check(q: &QParam) -> Result<(CheckReport, CheckReport), FockError> {
    let cap2 = 16;
    let pre = q.power_value(-1) - q.power_value(1);
    let c_a = pre * q_int(3, q).map_err(|_| FockError::DegenerateQ)?;
    let c_b = q_int(2, q).map_err(|_| FockError::DegenerateQ)?;
    let mut worst_null: f64 = 0.0;
    let mut worst_control = f64::INFINITY;
    for spin in [Spin::Plus, Spin::Minus] {
        let v = FockVector::from_state(FockState::ramond(spin), cap2);
        let d2 = apply_d(&v, -2, q)?;
        let d11 = apply_d(&apply_d(&v, -1, q)?, -1, q)?;
        let null = d2.scale(c_a).add(&d11.scale(c_b))?;
        let control = d2.scale(c_a).sub(&d11.scale(c_b))?;
        worst_null = worst_null.max(null.norm());
        worst_control = worst_control.min(control.norm());
    }
    let null_report = CheckReport::new(
        "fock_null_level2",
        params! {"q" => format!("{:.6}", q.value())},
        worst_null,
        1e-12,
    );
    // control passes when the flipped combination is far from null
    let control_report = CheckReport::new(
        "fock_null_level2_control",
        params! {"q" => format!("{:.6}", q.value()), "norm" => format!("{worst_control:.6}")},
        (0.1 - worst_control).max(0.0),
        0.0,
    );
    Ok((null_report, control_report))
}

/// Slope of log‖D_n(e^{iε})/(2 log q²) − L_n‖ against log ε; the q-integer
/// expansion makes the residual O(ε²), so the fitted slope should be ≈ 2.
pub fn classical_limit_check(n: i64, eps_grid: &[f64], level_cap: i64, sector: Sector) -> Result<CheckReport, FockError> {
    let window2 = 2 * (level_cap - n.abs());
    let cap2 = 2 * (level_cap + n.abs());
    let mut pts = Vec::new();
    for &eps in eps_grid {
        let q = QParam::from_angle(eps);
        // 2 log q² = 4iε on the principal branch
        let scale = Complex64::new(0.0, 4.0 * eps);
        let r = windowed_residual(
            sector,
            window2,
            cap2,
            |v| Ok(apply_d(v, n, &q)?.scale(1.0 / scale)),
            |v| apply_l(v, n),
        )?;
        pts.push((eps.ln(), r.ln()));
    }
    // least-squares slope
    let len = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / len;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / len;
    let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>()
        / pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum::<f64>();
    // pass when the decay order is at least 1.8
    let residual = (1.8 - slope).max(0.0);
    Ok(CheckReport::new(
        "fock_classical_limit",
        params! {"n" => n, "slope" => format!("{slope:.4}"), "cap" => level_cap, "sector" => format!("{sector:?}")},
        residual,
        0.0,
    ))
}

/// D₀(q) = Σ_{k≥1} log^{2k−1}(q²)/(2k−1)! · I_{2k−1}, compared on the level
/// window after truncating the sum at `k_max`.
pub fn d0_expansion_check(q: &QParam, k_max: i64, level_cap: i64, sector: Sector) -> Result<CheckReport, FockError> {
    let window2 = 2 * level_cap;
    let cap2 = 2 * level_cap;
    let log_q2 = Complex64::new(0.0, 2.0 * q.angle());
    let residual = windowed_residual(
        sector,
        window2,
        cap2,
        |v| apply_d(v, 0, q),
        |v| {
            let mut rhs = FockVector::zero(v.sector, v.cap2);
            let mut factorial = 1.0;
            for k in 1..=k_max {
                factorial *= if k == 1 { 1.0 } else { ((2 * k - 2) * (2 * k - 1)) as f64 };
                let coeff = log_q2.powi(2 * k as i32 - 1) / factorial;
                rhs = rhs.add(&apply_i(v, k)?.scale(coeff))?;
            }
            Ok(rhs)
        },
    )?;
    Ok(CheckReport::new(
        "fock_d0_expansion",
        params! {"q" => format!("{:.6}", q.value()), "k_max" => k_max, "cap" => level_cap, "sector" => format!("{sector:?}")},
        residual,
        1e-8,
    ))
}

/// The three level-6 Virasoro identities in the vacuum sector, e.g.
/// 20 L₋₆|0⟩ + 24 L₋₄L₋₂|0⟩ + 5 L₋₃²|0⟩ = 112 ψ₋₁₁/₂ ψ₋₁/₂ |0⟩,
/// plus the diagonality of each right-hand state under I₁ and I₃.
pub fn iom_virasoro_identity_check(level_cap: i64) -> Result<Vec<CheckReport>, FockError> {
    assert!(level_cap >= 6);
    let cap2 = 2 * level_cap;
    let vac = FockVector::highest_weight(Sector::NeveuSchwarz, cap2);
    let state = |hi: i64, lo: i64| {
        FockVector::from_state(
            FockState { sector: Sector::NeveuSchwarz, partition: vec![hi, lo], spin: None },
            cap2,
        )
    };
    let l = |n: i64, v: &FockVector| apply_l(v, n);
    let l6 = l(-6, &vac)?;
    let l4l2 = l(-4, &l(-2, &vac)?)?;
    let l3l3 = l(-3, &l(-3, &vac)?)?;
    let combos: [(f64, f64, f64, i64, i64, f64); 3] = [
        (20.0, 24.0, 5.0, 11, 1, 112.0),
        (4.0, -8.0, 1.0, 9, 3, 16.0),
        (20.0, 24.0, -23.0, 7, 5, 56.0),
    ];
    let mut reports = Vec::new();
    for (a, b, c, hi, lo, rhs_coeff) in combos {
        let lhs = l6
            .scale(Complex64::new(a, 0.0))
            .add(&l4l2.scale(Complex64::new(b, 0.0)))?
            .add(&l3l3.scale(Complex64::new(c, 0.0)))?;
        let rhs = state(hi, lo).scale(Complex64::new(rhs_coeff, 0.0));
        let residual = lhs.sub(&rhs)?.norm() / rhs.norm();
        // the right-hand fermion state must be an eigenstate of the odd charges
        let mut diag = 0.0f64;
        for k in [1, 2] {
            let s = state(hi, lo);
            let ev = iom_eigenvalue(s.terms().next().unwrap().0, k);
            diag = diag.max(apply_i(&s, k)?.sub(&s.scale(Complex64::new(ev, 0.0)))?.norm());
        }
        reports.push(CheckReport::new(
            "fock_iom_level6_identity",
            params! {"rhs_coeff" => rhs_coeff, "state" => format!("({hi}/2,{lo}/2)"),
                     "iom_diag" => format!("{diag:.2e}")},
            residual.max(diag),
            1e-12,
        ));
    }
    Ok(reports)
}
