//! Idempotent pairs and the PRINC property.
//!
//! A pair `(a, b)` is idempotent when `a(1−a) ∈ bR` or `b(1−b) ∈ aR`; a ring is
//! PRINC when every ideal generated by such a pair is principal. This module
//! detects and constructs pairs, decides principality by norm enumeration,
//! and classifies the orders `Z[√−d]`.

mod pairs;
mod sweep;
mod theorems;

pub use pairs::{
    comaximal_principal_partner, is_idempotent_pair, is_irreducible, is_principal, pair_for_ideal,
    pair_for_regular_prime, pair_product_identity, search_generating_pair,
    search_square_generation, split_comaximal, PairWitness, Side, DEFAULT_SEARCH_CAP,
};
pub use sweep::{
    classify, princ_sweep, PrincVerdict, Route, SearchBounds, Status, SweepStats, VerdictWitness,
};
pub use theorems::{
    nonprincipal_witness, odd_prime_divisor, odd_prime_principality_scan, prime_witness,
    unit_normalize, working_units, PrimeWitness, ScanEntry, ScanReport,
};
