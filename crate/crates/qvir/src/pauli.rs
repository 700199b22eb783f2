//! Sparse operator algebra on D two-level sites.
//!
//! Operators live in the Pauli-word basis: a word is stored as two D-bit
//! masks, one for the sites carrying an X factor and one for the sites
//! carrying a Z factor. The stored word means the literal tensor product
//! `⊗_t X^{x_t} Z^{z_t}` (site t is bit t−1), so a product of two words is a
//! single word times a sign; a site carrying both masks is Y up to the factor
//! i, which lives in the coefficient. With this convention all phase
//! bookkeeping is exact and closed over {±1, ±i} — the word product itself
//! only ever produces ±1.
//!
//! A [`DenseOperator`] oracle (capped at 12 sites) backs equality checks and
//! spectra; the sparse path has no size cap.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use std::collections::BTreeMap;
use thiserror::Error;

/// Coefficients with modulus at or below this are pruned after every
/// add/scale/multiply, well below all check tolerances (≥ 1e-10).
pub const PRUNE_TOL: f64 = 1e-14;

/// Dense-oracle memory guard: 2^12 = 4096-dimensional matrices at most.
pub const MAX_DENSE_SITES: usize = 12;

#[derive(Debug, Error, PartialEq)]
pub enum PauliError {
    #[error("operator site counts differ: {0} vs {1}")]
    SiteCountMismatch(usize, usize),
    #[error("dense oracle refuses {0} sites (cap {MAX_DENSE_SITES})")]
    SizeGuard(usize),
    #[error("matrix is not Hermitian (deviation {0:.3e})")]
    NotHermitian(f64),
}

/// A signed-phase-free Pauli word `⊗_t X^{x_t} Z^{z_t}` on up to 64 sites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliString {
    pub x_mask: u64,
    pub z_mask: u64,
}

impl PauliString {
    pub const IDENTITY: PauliString = PauliString { x_mask: 0, z_mask: 0 };

    /// Word product: a single word and a sign, never anything else.
    /// `(X^{x1}Z^{z1})(X^{x2}Z^{z2}) = (−1)^{|z1∧x2|} X^{x1⊕x2} Z^{z1⊕z2}`.
    pub fn mul(self, other: PauliString) -> (PauliString, f64) {
        let sign = if (self.z_mask & other.x_mask).count_ones() % 2 == 0 {
            1.0
        } else {
            -1.0
        };
        (
            PauliString {
                x_mask: self.x_mask ^ other.x_mask,
                z_mask: self.z_mask ^ other.z_mask,
            },
            sign,
        )
    }

    /// `(X^x Z^z)† = (−1)^{|x∧z|} X^x Z^z`.
    pub fn adjoint_sign(self) -> f64 {
        if (self.x_mask & self.z_mask).count_ones() % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

/// A finite complex-weighted sum of Pauli words on a fixed number of sites.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorSum {
    sites: usize,
    terms: BTreeMap<PauliString, Complex64>,
}

impl OperatorSum {
    pub fn zero(sites: usize) -> Self {
        OperatorSum {
            sites,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(sites: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(PauliString::IDENTITY, Complex64::new(1.0, 0.0));
        OperatorSum { sites, terms }
    }

    /// c · word on one site (1-based), word ∈ {X, Y, Z}; Y is i·XZ.
    pub fn single(sites: usize, site: usize, which: char, coeff: Complex64) -> Self {
        assert!(site >= 1 && site <= sites, "site {site} out of 1..={sites}");
        let bit = 1u64 << (site - 1);
        let (word, c) = match which {
            'X' => (PauliString { x_mask: bit, z_mask: 0 }, coeff),
            'Z' => (PauliString { x_mask: 0, z_mask: bit }, coeff),
            'Y' => (
                PauliString { x_mask: bit, z_mask: bit },
                coeff * Complex64::new(0.0, 1.0),
            ),
            _ => panic!("unknown Pauli letter {which}"),
        };
        let mut terms = BTreeMap::new();
        terms.insert(word, c);
        let mut op = OperatorSum { sites, terms };
        op.prune();
        op
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PauliString, &Complex64)> {
        self.terms.iter()
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| c.norm() > PRUNE_TOL);
    }

    fn check_sites(&self, other: &OperatorSum) -> Result<(), PauliError> {
        if self.sites != other.sites {
            return Err(PauliError::SiteCountMismatch(self.sites, other.sites));
        }
        Ok(())
    }

    pub fn add(&self, other: &OperatorSum) -> Result<OperatorSum, PauliError> {
        self.check_sites(other)?;
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            *terms.entry(*w).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        let mut out = OperatorSum { sites: self.sites, terms };
        out.prune();
        Ok(out)
    }

    pub fn sub(&self, other: &OperatorSum) -> Result<OperatorSum, PauliError> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> OperatorSum {
        let mut out = OperatorSum {
            sites: self.sites,
            terms: self.terms.iter().map(|(w, v)| (*w, v * c)).collect(),
        };
        out.prune();
        out
    }

    /// Term-by-term product with exact sign bookkeeping.
    pub fn multiply(&self, other: &OperatorSum) -> Result<OperatorSum, PauliError> {
        self.check_sites(other)?;
        let mut terms: BTreeMap<PauliString, Complex64> = BTreeMap::new();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let (w, sign) = wa.mul(*wb);
                *terms.entry(w).or_insert(Complex64::new(0.0, 0.0)) += ca * cb * sign;
            }
        }
        let mut out = OperatorSum { sites: self.sites, terms };
        out.prune();
        Ok(out)
    }

    /// ab − ba.
    pub fn commutator(&self, other: &OperatorSum) -> Result<OperatorSum, PauliError> {
        self.multiply(other)?.sub(&other.multiply(self)?)
    }

    /// ab + ba.
    pub fn anticommutator(&self, other: &OperatorSum) -> Result<OperatorSum, PauliError> {
        self.multiply(other)?.add(&other.multiply(self)?)
    }

    /// Hermitian conjugate: conjugate coefficients, words self-adjoint up to sign.
    pub fn adjoint(&self) -> OperatorSum {
        let mut out = OperatorSum {
            sites: self.sites,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (*w, c.conj() * w.adjoint_sign()))
                .collect(),
        };
        out.prune();
        out
    }

    /// Frobenius norm, exact from Pauli-word orthogonality:
    /// ‖Σ c_w w‖_F = 2^{D/2} · √(Σ |c_w|²).
    pub fn frobenius_norm(&self) -> f64 {
        // the empty sum is -0.0, which would leak into residual displays
        let s: f64 = self.terms.values().map(|c| c.norm_sqr()).sum::<f64>().max(0.0);
        (((1u64 << self.sites) as f64) * s).sqrt()
    }

    /// Relative operator distance ‖a−b‖_F / max(1, ‖a‖_F, ‖b‖_F).
    pub fn residual(&self, other: &OperatorSum) -> Result<f64, PauliError> {
        let diff = self.sub(other)?;
        let denom = 1f64.max(self.frobenius_norm()).max(other.frobenius_norm());
        Ok(diff.frobenius_norm() / denom)
    }

    /// Dense matrix representation. Basis state b has site t in |1⟩ iff bit
    /// t−1 of b is set; `X^x Z^z |b⟩ = (−1)^{|b∧z|} |b⊕x⟩`.
    pub fn to_dense(&self) -> Result<DenseOperator, PauliError> {
        if self.sites > MAX_DENSE_SITES {
            return Err(PauliError::SizeGuard(self.sites));
        }
        let dim = 1usize << self.sites;
        let mut m = DMatrix::<Complex64>::zeros(dim, dim);
        for (w, c) in &self.terms {
            for b in 0..dim as u64 {
                let sign = if (b & w.z_mask).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                m[((b ^ w.x_mask) as usize, b as usize)] += c * sign;
            }
        }
        Ok(DenseOperator { dim, entries: m })
    }

    /// Apply to a state vector without materializing the matrix.
    pub fn apply(&self, v: &DVector<Complex64>) -> DVector<Complex64> {
        let dim = 1usize << self.sites;
        assert_eq!(v.len(), dim, "state dimension mismatch");
        let mut out = DVector::<Complex64>::zeros(dim);
        for (w, c) in &self.terms {
            for b in 0..dim as u64 {
                let sign = if (b & w.z_mask).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                out[(b ^ w.x_mask) as usize] += c * sign * v[b as usize];
            }
        }
        out
    }
}

/// Dense 2^D × 2^D oracle for equality checks and spectra.
#[derive(Debug, Clone)]
pub struct DenseOperator {
    pub dim: usize,
    pub entries: DMatrix<Complex64>,
}

impl DenseOperator {
    pub fn residual(&self, other: &DenseOperator) -> f64 {
        let na = self.entries.norm();
        let nb = other.entries.norm();
        (&self.entries - &other.entries).norm() / 1f64.max(na).max(nb)
    }
}

/// Full real spectrum of a Hermitian matrix, ascending, with multiplicity.
pub fn eig_hermitian(m: &DenseOperator) -> Result<Vec<f64>, PauliError> {
    let dev = (&m.entries - m.entries.adjoint()).norm() / 1f64.max(m.entries.norm());
    if dev > 1e-10 {
        return Err(PauliError::NotHermitian(dev));
    }
    // symmetrize away rounding before factorization
    let h = (&m.entries + m.entries.adjoint()).scale(0.5);
    let eig = nalgebra::SymmetricEigen::new(h);
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(vals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn x1() -> OperatorSum {
        OperatorSum::single(1, 1, 'X', c(1.0, 0.0))
    }

    #[test]
    fn single_site_algebra() {
        // X·Y = iZ on one site
        let x = x1();
        let y = OperatorSum::single(1, 1, 'Y', c(1.0, 0.0));
        let z = OperatorSum::single(1, 1, 'Z', c(1.0, 0.0));
        let xy = x.multiply(&y).unwrap();
        assert!(xy.residual(&z.scale(c(0.0, 1.0))).unwrap() < 1e-15);
    }

    #[test]
    fn identity_is_neutral() {
        let a = OperatorSum::single(3, 2, 'Y', c(0.3, -0.7));
        let id = OperatorSum::identity(3);
        assert!(id.multiply(&a).unwrap().residual(&a).unwrap() < 1e-15);
        assert!(a.add(&OperatorSum::zero(3)).unwrap().residual(&a).unwrap() < 1e-15);
    }

    #[test]
    fn scale_and_add() {
        let x = x1();
        let two_x = x.add(&x).unwrap();
        assert!(two_x.residual(&x.scale(c(2.0, 0.0))).unwrap() < 1e-15);
        assert_eq!(x.scale(c(0.0, 0.0)).term_count(), 0);
    }

    #[test]
    fn commutator_disjoint_support_vanishes() {
        let a = OperatorSum::single(2, 1, 'X', c(1.0, 0.0));
        let b = OperatorSum::single(2, 2, 'Z', c(1.0, 0.0));
        assert_eq!(a.commutator(&b).unwrap().term_count(), 0);
        let self_comm = a.commutator(&a).unwrap();
        assert_eq!(self_comm.term_count(), 0);
    }

    #[test]
    fn site_count_mismatch_is_error() {
        let a = OperatorSum::identity(2);
        let b = OperatorSum::identity(3);
        assert_eq!(a.multiply(&b), Err(PauliError::SiteCountMismatch(2, 3)));
    }

    #[test]
    fn adjoint_involution_and_phase() {
        let a = OperatorSum::single(2, 1, 'Y', c(0.5, 0.25));
        assert!(a.adjoint().adjoint().residual(&a).unwrap() < 1e-15);
        let iz = OperatorSum::single(1, 1, 'Z', c(0.0, 1.0));
        let miz = OperatorSum::single(1, 1, 'Z', c(0.0, -1.0));
        assert!(iz.adjoint().residual(&miz).unwrap() < 1e-15);
    }

    #[test]
    fn dense_oracle_basics() {
        let id = OperatorSum::identity(2);
        let m = id.to_dense().unwrap();
        assert_eq!(m.dim, 4);
        assert!((m.entries.clone() - DMatrix::identity(4, 4)).norm() < 1e-15);

        // apply X on site 1 flips the lowest bit of |00⟩
        let x = OperatorSum::single(2, 1, 'X', c(1.0, 0.0));
        let mut v = DVector::zeros(4);
        v[0] = c(1.0, 0.0);
        let w = x.apply(&v);
        assert!((w[1] - 1.0).norm() < 1e-15);

        let too_big = OperatorSum::identity(13);
        assert!(matches!(too_big.to_dense(), Err(PauliError::SizeGuard(13))));
    }

    #[test]
    fn frobenius_and_residual_anchors() {
        for d in 1..=5 {
            let id = OperatorSum::identity(d);
            assert!((id.frobenius_norm() - 2f64.powf(d as f64 / 2.0)).abs() < 1e-12);
        }
        let x = x1();
        let z = OperatorSum::single(1, 1, 'Z', c(1.0, 0.0));
        assert!((x.residual(&z).unwrap() - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(x.residual(&x).unwrap(), 0.0);
    }

    #[test]
    fn frobenius_matches_dense() {
        let a = OperatorSum::single(3, 1, 'X', c(0.3, 0.1))
            .add(&OperatorSum::single(3, 2, 'Y', c(-0.2, 0.9)))
            .unwrap();
        let dense_norm = a.to_dense().unwrap().entries.norm();
        assert!((a.frobenius_norm() - dense_norm).abs() < 1e-12);
    }

    #[test]
    fn eig_anchors() {
        let z = OperatorSum::single(1, 1, 'Z', c(1.0, 0.0));
        let vals = eig_hermitian(&z.to_dense().unwrap()).unwrap();
        assert!((vals[0] + 1.0).abs() < 1e-12 && (vals[1] - 1.0).abs() < 1e-12);

        let id = OperatorSum::identity(2);
        let vals = eig_hermitian(&id.to_dense().unwrap()).unwrap();
        assert!(vals.iter().all(|v| (v - 1.0).abs() < 1e-12));

        let not_herm = OperatorSum::single(1, 1, 'Z', c(0.0, 1.0));
        assert!(eig_hermitian(&not_herm.to_dense().unwrap()).is_err());
    }

    // random small operator sums for the algebraic property tests
    fn arb_op(sites: usize) -> impl Strategy<Value = OperatorSum> {
        prop::collection::vec(
            (0..1u64 << sites, 0..1u64 << sites, -1.0..1.0f64, -1.0..1.0f64),
            1..8,
        )
        .prop_map(move |entries| {
            let mut terms = BTreeMap::new();
            for (x, z, re, im) in entries {
                *terms
                    .entry(PauliString { x_mask: x, z_mask: z })
                    .or_insert(Complex64::new(0.0, 0.0)) += Complex64::new(re, im);
            }
            let mut op = OperatorSum { sites, terms };
            op.prune();
            op
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn multiply_associative(a in arb_op(3), b in arb_op(3), cc in arb_op(3)) {
            let left = a.multiply(&b).unwrap().multiply(&cc).unwrap();
            let right = a.multiply(&b.multiply(&cc).unwrap()).unwrap();
            prop_assert!(left.residual(&right).unwrap() < 1e-12);
        }

        #[test]
        fn multiply_bilinear(a in arb_op(3), b in arb_op(3), cc in arb_op(3)) {
            let left = a.add(&b).unwrap().multiply(&cc).unwrap();
            let right = a.multiply(&cc).unwrap().add(&b.multiply(&cc).unwrap()).unwrap();
            prop_assert!(left.residual(&right).unwrap() < 1e-12);
        }

        #[test]
        fn jacobi_identity(a in arb_op(3), b in arb_op(3), cc in arb_op(3)) {
            let t1 = a.commutator(&b.commutator(&cc).unwrap()).unwrap();
            let t2 = b.commutator(&cc.commutator(&a).unwrap()).unwrap();
            let t3 = cc.commutator(&a.commutator(&b).unwrap()).unwrap();
            let total = t1.add(&t2).unwrap().add(&t3).unwrap();
            prop_assert!(total.residual(&OperatorSum::zero(3)).unwrap() < 1e-10);
        }

        #[test]
        fn sparse_dense_agree(a in arb_op(3), b in arb_op(3)) {
            let sparse = a.multiply(&b).unwrap().to_dense().unwrap();
            let dense = DenseOperator {
                dim: 8,
                entries: &a.to_dense().unwrap().entries * &b.to_dense().unwrap().entries,
            };
            prop_assert!(sparse.residual(&dense) < 1e-12);
        }

        #[test]
        fn adjoint_antihomomorphism(a in arb_op(3), b in arb_op(3)) {
            let left = a.multiply(&b).unwrap().adjoint();
            let right = b.adjoint().multiply(&a.adjoint()).unwrap();
            prop_assert!(left.residual(&right).unwrap() < 1e-12);
        }

        #[test]
        fn apply_matches_dense(a in arb_op(3)) {
            let m = a.to_dense().unwrap();
            let v = DVector::from_fn(8, |i, _| Complex64::new(i as f64 * 0.1 + 0.3, -(i as f64) * 0.05));
            let via_apply = a.apply(&v);
            let via_dense = &m.entries * &v;
            prop_assert!((via_apply - via_dense).norm() < 1e-12);
        }
    }
}
