//! Symbolic construction of the quantum family of all maps from a finite
//! point set into a finite semigroup, together with the comultiplication it
//! inherits from the semigroup and mechanical checks of the identities that
//! make it a compact quantum semigroup.
//!
//! Layout:
//! - [`finsemigroup`]: Cayley tables, associativity, identities, enumeration.
//! - [`starpoly`]: exact *-polynomials in the generators `c[x,k]`.
//! - [`tensorspace`]: multi-leg tensors and the flip / multiplication maps.
//! - [`qfam`]: `Φ`, `Δ`, `Γ` and the verification checks.
//! - [`numrep`]: floating-point projection representations used as an oracle.
//! - [`io`]: table and report file formats.

pub mod finsemigroup;
pub mod io;
pub mod numrep;
pub mod qfam;
pub mod starpoly;
pub mod tensorspace;

pub use finsemigroup::{
    enumerate_tables, find_identity, validate_associativity, CayleyTable, NonAssociative,
    SemigroupRecord, TableError, TableFilter,
};
pub use io::{emit_report, parse_table, ReportFile, TableFile};
pub use numrep::NumericRep;
pub use qfam::{
    build_gamma, verify_all, CheckRecord, CheckVerdict, GammaPresentation, QFamConfig,
    VerificationReport,
};
pub use starpoly::{
    eq_mod, normal_form, EqVerdict, GaussianRational, Generator, NCWord, RelationPreset, StarPoly,
    Universe,
};
pub use tensorspace::{eq_tensor, Factor, LegHom, LegKind, LegOp, Presentation, TensorElem};
