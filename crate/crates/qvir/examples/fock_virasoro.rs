//! Virasoro algebra at c = 1/2 from free-fermion bilinears, both sectors.
//!
//! L_n is kept pure (no additive constants), so the Ramond doublet's weight
//! h = 1/16 appears as an extra n/8 in the central term of [L_n, L_{−n}] —
//! measured here rather than assumed.
//!
//! ```bash
//! cargo run --example fock_virasoro
//! ```

use qvir::fock::{apply_l, virasoro_comm_check, FockState, FockVector, Sector};

fn main() {
    for sector in [Sector::NeveuSchwarz, Sector::Ramond] {
        let mut worst = 0.0f64;
        for n in -3..=3 {
            for m in -3..=3 {
                let r = virasoro_comm_check(n, m, 7, sector).unwrap();
                worst = worst.max(r.residual);
            }
        }
        println!("{sector:?}: worst [L_n, L_m] residual over |n|,|m| ≤ 3 at cap 7: {worst:.2e}");
    }

    // the central term on the vacuum: ⟨0|[L₂, L₋₂]|0⟩ = c/2 = 1/4
    let vac = FockVector::highest_weight(Sector::NeveuSchwarz, 16);
    let vev = apply_l(&apply_l(&vac, -2).unwrap(), 2)
        .unwrap()
        .coeff(&FockState::vacuum(Sector::NeveuSchwarz));
    println!("⟨0|L₂ L₋₂|0⟩ = {} (c/2 with c = 1/2)", vev.re);

    // the Ramond doublet weight read off the same commutator:
    // ⟨±|[L₂, L₋₂]|±⟩ = 4h + c/2 with h = 1/16
    let hw = FockVector::highest_weight(Sector::Ramond, 16);
    let lhs = apply_l(&apply_l(&hw, -2).unwrap(), 2).unwrap();
    let vev = lhs.coeff(&FockState::vacuum(Sector::Ramond));
    println!("⟨1/16|[L₂, L₋₂]|1/16⟩ = {} = 4·(1/16) + 1/4", vev.re);
}
