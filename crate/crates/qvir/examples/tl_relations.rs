//! Clifford generators and the Temperley-Lieb representation they carry.
//!
//! ```bash
//! cargo run --example tl_relations
//! ```

use num_complex::Complex64;
use qvir::lattice::LatticeContext;
use qvir::pauli::OperatorSum;

fn main() {
    for d in [2, 3, 4] {
        let ctx = LatticeContext::new(d).unwrap();
        let id = OperatorSum::identity(ctx.sites());
        let zero = OperatorSum::zero(ctx.sites());

        let mut clifford = 0.0f64;
        for i in 1..=2 * d {
            for j in i..=2 * d {
                let anti = ctx.gamma(i).anticommutator(ctx.gamma(j)).unwrap();
                let expect = if i == j { &id } else { &zero };
                clifford = clifford.max(anti.residual(expect).unwrap());
            }
        }

        let sqrt2 = Complex64::new(2f64.sqrt(), 0.0);
        let mut idempotent = 0.0f64;
        let mut braid = 0.0f64;
        let mut distant = 0.0f64;
        for i in 1..=2 * d {
            let e = ctx.tl(i);
            idempotent = idempotent.max(e.multiply(e).unwrap().residual(&e.scale(sqrt2)).unwrap());
            for pm in [i - 1, i + 1] {
                let eee = e.multiply(ctx.tl(pm)).unwrap().multiply(e).unwrap();
                braid = braid.max(eee.residual(e).unwrap());
            }
            for j in 1..=2 * d {
                let dist = (i - j).rem_euclid(2 * d).min((j - i).rem_euclid(2 * d));
                if dist >= 2 {
                    distant = distant.max(e.commutator(ctx.tl(j)).unwrap().frobenius_norm());
                }
            }
        }

        println!("D = {d}  (2D = {} generators on {} qubits)", 2 * d, d);
        println!("  {{Γ_i, Γ_j}} − δ_ij          : {clifford:.2e}");
        println!("  e_i² − √2 e_i              : {idempotent:.2e}");
        println!("  e_i e_{{i±1}} e_i − e_i      : {braid:.2e}");
        println!("  [e_i, e_j], |i−j| ≥ 2      : {distant:.2e}");
    }
}
