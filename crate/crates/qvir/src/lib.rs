//! Exact desk-scale workbench for a q-deformed Virasoro algebra built from
//! undeformed free fermions, in two realizations:
//!
//! - [`fock`] — a truncated fermionic Fock space (Neveu-Schwarz vacuum sector
//!   and Ramond doublet sector) carrying the Virasoro modes L_n at c = 1/2,
//!   the deformed modes D_n(q), and the odd integrals of motion I_{2k−1};
//! - [`lattice`] — a finite Clifford/Temperley-Lieb chain on D qubits where
//!   the same algebra closes exactly at the root of unity q = e^{iπ/2D},
//!   together with the tower of commuting Temperley-Lieb hamiltonians
//!   A_1, A_3, …, their spectra, and the lattice null states.
//!
//! Every identity the construction rests on — commutation relations,
//! hamiltonian decompositions, spectra, null vectors — is machine-checked at
//! double precision by [`suite`], and each check is reported as a
//! [`report::CheckReport`] with an explicit residual and tolerance.
//!
//! # Examples
//!
//! One runnable example per capability lives in `examples/`:
//!
//! ```bash
//! cargo run --example tl_relations        # Clifford + Temperley-Lieb algebra
//! cargo run --example lattice_modes      # lattice fermi modes and D_n(q^α) commutators
//! cargo run --example hamiltonian_tower  # H/A tower, triple equality, commutativity
//! cargo run --example spectra            # dense spectra vs the partition formula
//! cargo run --example null_states        # lattice and continuum null vectors
//! cargo run --example fock_virasoro      # [L_n, L_m] at c = 1/2, both sectors
//! cargo run --example iom_identities     # I_{2k−1} eigenvalues and level-6 identities
//! cargo run --example classical_limit    # D_n → 2 log(q²) L_n as q → 1
//! ```
//!
//! The thin `qvir` binary drives the same machinery from the command line:
//!
//! ```bash
//! qvir verify --suite all --out report.json
//! qvir spectrum --op A3 --d 4 --format csv --out a3_d4.csv
//! qvir dump --op D0 --power 3 --d 3 --out d0.csv
//! ```

pub mod fock;
pub mod lattice;
pub mod pauli;
pub mod qnum;
pub mod report;
pub mod suite;

pub use num_complex::Complex64;
