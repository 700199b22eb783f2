//! The q → 1 limit: D_n(q) = 2 log(q²) L_n + O(log³ q), and the expansion of
//! D₀ in the odd charges, D₀ = Σ_k log^{2k−1}(q²)/(2k−1)! · I_{2k−1}.
//!
//! ```bash
//! cargo run --example classical_limit
//! ```

use qvir::fock::{classical_limit_check, d0_expansion_check, Sector};
use qvir::qnum::QParam;

fn main() {
    println!("residual ‖D_n(e^{{iε}})/(2 log q²) − L_n‖ decays like ε² (slope ≈ 2):");
    for n in [-2, -1, 0, 1, 2] {
        for sector in [Sector::NeveuSchwarz, Sector::Ramond] {
            let r = classical_limit_check(n, &[1e-2, 1e-3], 6, sector).unwrap();
            println!("  n = {n:2}, {sector:?}: fitted slope {}", r.params["slope"]);
        }
    }

    println!("\nD₀ against the truncated charge expansion:");
    for (label, q, cap) in [
        ("q = e^{iπ/20}", QParam::exact(1, 20), 4),
        ("q = e^{iπ/40}", QParam::exact(1, 40), 6),
    ] {
        for k_max in [1, 3, 6] {
            let r = d0_expansion_check(&q, k_max, cap, Sector::NeveuSchwarz).unwrap();
            println!("  {label}, k_max = {k_max}: residual {:.2e}", r.residual);
        }
    }
}
