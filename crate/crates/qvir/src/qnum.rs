//! Deformation parameters and q-integers.
//!
//! The deformation parameter `q` lives on the unit circle. Root-of-unity
//! parameters are stored as a reduced rational multiple of π so that repeated
//! powers (`q^α` arguments of the deformed generators) stay exactly on the
//! circle instead of drifting through floating-point multiplication.
//!
//! The q-integer is
//!
//! ```text
//! [n]_q = (q⁻ⁿ − qⁿ) / (q⁻¹ − q)
//! ```
//!
//! which for q = e^{iθ} equals sin(nθ)/sin(θ), and for q → 1 expands as
//! n + n(n²−1)/6 · log²(q) + O(log⁴ q).

use num_complex::Complex64;
use num_rational::Ratio;
use std::f64::consts::PI;
use thiserror::Error;

/// Tolerance for the unit-modulus and degeneracy guards.
pub const UNIT_TOL: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum QnumError {
    /// q = ±1 cannot be used where the formulas divide by q⁻¹ − q.
    #[error("degenerate deformation parameter q = {0} (q-integers undefined at q = ±1)")]
    DegenerateParameter(Complex64),
    /// The lattice root of unity e^{iπ/2D} needs D ≥ 2.
    #[error("lattice size D = {0} is too small (need D ≥ 2)")]
    LatticeTooSmall(i64),
    /// A complex number handed in as a deformation parameter must have |q| = 1.
    #[error("deformation parameter must have unit modulus, got |q| = {0}")]
    NotUnitModulus(f64),
}

/// How the parameter is represented.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QKind {
    /// q = exp(iπ·num/den) with `num/den` reduced and `den > 0`.
    ExactRootOfUnity { num: i64, den: i64 },
    /// Any other point on the unit circle.
    Generic,
}

/// A deformation parameter on the unit circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QParam {
    kind: QKind,
    value: Complex64,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl QParam {
    /// Exact root of unity q = exp(iπ·num/den).
    ///
    /// The fraction is reduced and the angle folded into [0, 2π).
    pub fn exact(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator in root-of-unity angle");
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        let g = gcd(num, den).max(1);
        num /= g;
        den /= g;
        // fold the angle into one period of e^{iπ·}
        num = num.rem_euclid(2 * den);
        let value = Complex64::from_polar(1.0, PI * num as f64 / den as f64);
        QParam {
            kind: QKind::ExactRootOfUnity { num, den },
            value,
        }
    }

    /// Generic unit-modulus parameter.
    pub fn generic(value: Complex64) -> Result<Self, QnumError> {
        let r = value.norm();
        if (r - 1.0).abs() > UNIT_TOL {
            return Err(QnumError::NotUnitModulus(r));
        }
        Ok(QParam {
            kind: QKind::Generic,
            value: value / r,
        })
    }

    /// q = e^{iθ} from the angle θ.
    pub fn from_angle(theta: f64) -> Self {
        QParam {
            kind: QKind::Generic,
            value: Complex64::from_polar(1.0, theta),
        }
    }

    pub fn kind(&self) -> QKind {
        self.kind
    }

    pub fn value(&self) -> Complex64 {
        self.value
    }

    /// The angle θ with q = e^{iθ}, in (−π, π] for generic parameters and
    /// π·num/den for exact ones.
    pub fn angle(&self) -> f64 {
        match self.kind {
            QKind::ExactRootOfUnity { num, den } => PI * num as f64 / den as f64,
            QKind::Generic => self.value.arg(),
        }
    }

    /// qᵃ, staying exact for exact parameters.
    pub fn power(&self, a: i64) -> QParam {
        match self.kind {
            QKind::ExactRootOfUnity { num, den } => QParam::exact(num * a, den),
            QKind::Generic => QParam {
                kind: QKind::Generic,
                value: Complex64::from_polar(1.0, self.value.arg() * a as f64),
            },
        }
    }

    /// qⁿ as a complex number, computed from the angle so large |n| does not drift.
    pub fn power_value(&self, n: i64) -> Complex64 {
        match self.kind {
            QKind::ExactRootOfUnity { num, den } => {
                // reduce n·num mod 2·den before touching floats
                let m = (num as i128 * n as i128).rem_euclid(2 * den as i128) as i64;
                Complex64::from_polar(1.0, PI * m as f64 / den as f64)
            }
            QKind::Generic => Complex64::from_polar(1.0, self.value.arg() * n as f64),
        }
    }

    /// True when q = ±1, i.e. the q-integer denominator vanishes.
    pub fn is_degenerate(&self) -> bool {
        match self.kind {
            QKind::ExactRootOfUnity { num, den } => num % den == 0,
            QKind::Generic => {
                (self.value - 1.0).norm() <= UNIT_TOL || (self.value + 1.0).norm() <= UNIT_TOL
            }
        }
    }
}

/// The lattice deformation parameter q = e^{iπ/2D}.
pub fn lattice_q(d: i64) -> Result<QParam, QnumError> {
    if d < 2 {
        return Err(QnumError::LatticeTooSmall(d));
    }
    Ok(QParam::exact(1, 2 * d))
}

/// The q-integer [n]_q = (q⁻ⁿ − qⁿ)/(q⁻¹ − q).
///
/// For unit-modulus q = e^{iθ} the result equals sin(nθ)/sin(θ) and is real
/// up to rounding; it is still returned as a complex number so generic and
/// exact parameters share one code path.
pub fn q_int(n: i64, q: &QParam) -> Result<Complex64, QnumError> {
    if q.is_degenerate() {
        return Err(QnumError::DegenerateParameter(q.value()));
    }
    let numerator = q.power_value(-n) - q.power_value(n);
    let denominator = q.power_value(-1) - q.power_value(1);
    Ok(numerator / denominator)
}

/// Coefficients of the q → 1 expansion [n]_q ≈ n + n(n²−1)/6 · log²(q).
///
/// Returns the leading integer n and the log²(q) coefficient n(n²−1)/6.
pub fn q_int_expansion(n: i64) -> (i64, Ratio<i64>) {
    (n, Ratio::new(n * (n * n - 1), 6))
}
