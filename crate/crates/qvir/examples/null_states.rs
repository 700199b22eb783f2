//! Level-2 null vectors, continuum and lattice.
//!
//! In the Ramond sector, ((q⁻¹−q)[3]_q D₋₂ + [2]_q D₋₁²)|1/16⟩_± vanishes
//! for every q. On the lattice the same combination needs its D₋₂
//! coefficient doubled — the window sums behind the lattice D_n cover each
//! mode pair twice — and then annihilates the doublet σ_± exactly. Both
//! checks come with a sign-flipped control combination that is far from
//! null, so a passing check is meaningful.
//!
//! ```bash
//! cargo run --example null_states
//! ```

use qvir::fock::null_level2_check;
use qvir::lattice::{null_state_check, LatticeContext};
use qvir::qnum::QParam;

fn main() {
    println!("continuum (Ramond doublet):");
    for (label, q) in [
        ("q = e^{iπ/8} ", QParam::exact(1, 8)),
        ("q = e^{iπ/10}", QParam::exact(1, 10)),
        ("q = e^{0.3i} ", QParam::from_angle(0.3)),
    ] {
        let (null, control) = null_level2_check(&q).unwrap();
        let control_norm = &control.params["norm"];
        println!("  {label}: ‖null combo‖ = {:.2e},  control norm = {control_norm}", null.residual);
    }

    println!("\nlattice (σ_± doublet at q = e^{{iπ/2D}}):");
    for d in 3..=6 {
        let ctx = LatticeContext::new(d).unwrap();
        let (null, control) = null_state_check(&ctx).unwrap();
        let control_norm = &control.params["norm"];
        println!("  D = {d}: ‖null combo σ_±‖ = {:.2e},  control norm = {control_norm}", null.residual);
    }
}
