//! Fixtures shared by the benchmarks.

use qfam_core::{validate_associativity, CayleyTable, SemigroupRecord};

/// `ℤ/n` under addition.
pub fn cyclic(n: usize) -> SemigroupRecord {
    let table = CayleyTable::from_fn(n, |r, s| (r + s) % n).expect("order in range");
    validate_associativity(&table).expect("cyclic groups are associative")
}

/// The left-zero semigroup `r·s = r`.
pub fn left_zero(n: usize) -> SemigroupRecord {
    let table = CayleyTable::from_fn(n, |r, _| r).expect("order in range");
    validate_associativity(&table).expect("left-zero is associative")
}
