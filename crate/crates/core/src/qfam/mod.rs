//! The quantum family of all maps from an `m`-point space into a finite
//! semigroup `S = {0, …, n-1}`, and the comultiplication it inherits.
//!
//! With `A = ℂ^n` and `B = ℂ^m`:
//! - `Φ(e_k) = Σ_x e_x ⊗ c[x,k]` is the universal family `A → B ⊗ C`;
//! - `Δ(e_k) = Σ_{ξ(r,s) = k} e_r ⊗ e_s` is the comultiplication of `A`;
//! - `Γ(c[x,k]) = Σ_{ξ(r,s) = k} c[x,r] ⊗ c[x,s]` is the induced
//!   comultiplication of `C`.

mod checks;
mod counit;
mod numeric;

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::finsemigroup::{CayleyTable, SemigroupRecord};
use crate::starpoly::{EqVerdict, Generator, RelationPreset};
use crate::tensorspace::{LegHom, LegKind, Presentation, TensorElem, TensorError};

pub use checks::{
    check_coassoc_delta, check_coassoc_gamma, check_diagram_d1, check_e1, check_e2,
    check_gamma_well_defined, default_probe_words, verify_all, E2_LEFT, E2_RIGHT,
};
pub use counit::{
    antipode_candidates, check_antipode_candidate, is_counit, search_counit, AntipodeCandidate,
    CounitCandidate, DEFAULT_SEARCH_CAP,
};
pub use numeric::{numeric_residuals, two_projection_residuals, NumericResiduals};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QFamError {
    #[error("number of points must be at least 1")]
    NoPoints,
    #[error("{candidates} candidates exceed the search cap of {cap}")]
    SearchCap { candidates: u128, cap: u128 },
    #[error("precondition unmet: {0}")]
    Precondition(String),
    #[error("invalid candidate: {0}")]
    BadCandidate(String),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Numeric(#[from] crate::numrep::NumRepError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QFamConfig {
    m: usize,
    table: CayleyTable,
    associative: bool,
    preset: RelationPreset,
}

impl QFamConfig {
    pub fn new(m: usize, rec: &SemigroupRecord, preset: RelationPreset) -> Result<Self, QFamError> {
        if m == 0 {
            return Err(QFamError::NoPoints);
        }
        Ok(QFamConfig {
            m,
            table: rec.table().clone(),
            associative: true,
            preset,
        })
    }

    /// Skips associativity validation (for running checks on magmas).
    pub fn bypass_validation(
        m: usize,
        table: CayleyTable,
        preset: RelationPreset,
    ) -> Result<Self, QFamError> {
        if m == 0 {
            return Err(QFamError::NoPoints);
        }
        let associative = crate::finsemigroup::validate_associativity(&table).is_ok();
        Ok(QFamConfig {
            m,
            table,
            associative,
            preset,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.table.order()
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    pub fn is_associative(&self) -> bool {
        self.associative
    }

    pub fn preset(&self) -> RelationPreset {
        self.preset
    }

    pub fn presentation(&self) -> Presentation {
        Presentation::new(self.m, self.n(), self.preset)
    }

    /// Pairs `(r, s)` with `ξ(r, s) = k`, lexicographically.
    pub fn preimage(&self, k: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n();
        (0..n)
            .flat_map(move |r| (0..n).map(move |s| (r, s)))
            .filter(move |&(r, s)| self.table.mul(r, s) == k)
    }
}

/// `Φ(e_k) = Σ_x e_x ⊗ c[x,k]` over `[Point(m), Alg]`.
pub fn build_phi(config: &QFamConfig) -> Vec<TensorElem> {
    let pres = config.presentation();
    (0..config.n())
        .map(|k| {
            let terms: Vec<TensorElem> = (0..config.m)
                .map(|x| {
                    TensorElem::point(pres, config.m, x)
                        .and_then(|e| e.concat(&TensorElem::generator(pres, Generator::new(x, k))))
                        .expect("indices in range")
                })
                .collect();
            TensorElem::sum(&terms).expect("m ≥ 1")
        })
        .collect()
}

/// `Δ(e_k) = Σ_{ξ(r,s)=k} e_r ⊗ e_s` over `[Point(n), Point(n)]`.
pub fn build_delta(config: &QFamConfig) -> Vec<TensorElem> {
    let pres = config.presentation();
    let n = config.n();
    let sig = vec![LegKind::Point(n), LegKind::Point(n)];
    (0..n)
        .map(|k| {
            let mut acc = TensorElem::zero(pres, sig.clone());
            for (r, s) in config.preimage(k) {
                let term = TensorElem::point(pres, n, r)
                    .and_then(|a| a.concat(&TensorElem::point(pres, n, s)?))
                    .expect("indices in range");
                acc = acc.add(&term).expect("same space");
            }
            acc
        })
        .collect()
}

/// `Γ` on generators. Images may be replaced to build corrupted variants.
#[derive(Debug, Clone)]
pub struct GammaPresentation {
    config: QFamConfig,
    images: BTreeMap<Generator, TensorElem>,
}

/// `Γ(c[x,k]) = Σ_{ξ(r,s)=k} c[x,r] ⊗ c[x,s]`.
pub fn build_gamma(config: &QFamConfig) -> GammaPresentation {
    let pres = config.presentation();
    let sig = vec![LegKind::Alg, LegKind::Alg];
    let mut images = BTreeMap::new();
    for g in pres.universe.generators() {
        let mut acc = TensorElem::zero(pres, sig.clone());
        for (r, s) in config.preimage(g.col) {
            let term = TensorElem::generator(pres, Generator::new(g.row, r))
                .concat(&TensorElem::generator(pres, Generator::new(g.row, s)))
                .expect("same presentation");
            acc = acc.add(&term).expect("same space");
        }
        images.insert(g, acc);
    }
    GammaPresentation {
        config: config.clone(),
        images,
    }
}

impl GammaPresentation {
    pub fn config(&self) -> &QFamConfig {
        &self.config
    }

    pub fn image(&self, g: Generator) -> &TensorElem {
        &self.images[&g]
    }

    pub fn images(&self) -> impl Iterator<Item = (Generator, &TensorElem)> {
        self.images.iter().map(|(g, e)| (*g, e))
    }

    /// Overwrites one image (used for mutation testing).
    pub fn replace_image(&mut self, g: Generator, image: TensorElem) -> Result<(), QFamError> {
        let pres = self.config.presentation();
        if !pres.universe.contains(g) {
            return Err(QFamError::BadCandidate(format!("{g} outside the universe")));
        }
        if image.presentation() != pres || image.signature() != [LegKind::Alg, LegKind::Alg] {
            return Err(QFamError::BadCandidate(format!(
                "replacement image for {g} must live in C ⊗ C"
            )));
        }
        self.images.insert(g, image);
        Ok(())
    }

    /// `Γ` as a substitution into an algebra leg.
    pub fn hom(&self) -> LegHom {
        LegHom::algebra(
            self.config.presentation(),
            vec![LegKind::Alg, LegKind::Alg],
            self.images.clone(),
            false,
        )
        .expect("images cover every generator")
    }

    /// `Γ(c[0,0]) = …` lines in generator order.
    pub fn equations(&self) -> Vec<String> {
        self.images
            .iter()
            .map(|(g, e)| format!("Γ({g}) = {e}"))
            .collect()
    }
}

pub fn phi_hom(config: &QFamConfig) -> LegHom {
    LegHom::linear(build_phi(config)).expect("n ≥ 1")
}

pub fn delta_hom(config: &QFamConfig) -> LegHom {
    LegHom::linear(build_delta(config)).expect("n ≥ 1")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckVerdict {
    Pass,
    Fail(String),
    Inconclusive(String),
}

impl CheckVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            CheckVerdict::Pass => "pass",
            CheckVerdict::Fail(_) => "fail",
            CheckVerdict::Inconclusive(_) => "inconclusive",
        }
    }

    pub fn witness(&self) -> Option<&str> {
        match self {
            CheckVerdict::Pass => None,
            CheckVerdict::Fail(w) | CheckVerdict::Inconclusive(w) => Some(w),
        }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, CheckVerdict::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, CheckVerdict::Fail(_))
    }
}

impl fmt::Display for CheckVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.witness() {
            None => f.write_str(self.label()),
            Some(w) => write!(f, "{}: {w}", self.label()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckRecord {
    pub name: String,
    pub verdict: CheckVerdict,
    pub elapsed: Duration,
    pub residuals: Vec<f64>,
}

impl CheckRecord {
    pub fn new(name: &str, verdict: CheckVerdict) -> CheckRecord {
        CheckRecord {
            name: name.to_string(),
            verdict,
            elapsed: Duration::ZERO,
            residuals: Vec::new(),
        }
    }

    pub(crate) fn timed(name: &str, f: impl FnOnce() -> CheckVerdict) -> CheckRecord {
        let start = Instant::now();
        let verdict = f();
        CheckRecord {
            name: name.to_string(),
            verdict,
            elapsed: start.elapsed(),
            residuals: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct VerificationReport {
    pub records: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn push(&mut self, record: CheckRecord) {
        self.records.push(record);
    }

    pub fn extend(&mut self, records: impl IntoIterator<Item = CheckRecord>) {
        self.records.extend(records);
    }

    pub fn get(&self, name: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.name == name)
    }

    pub fn any_fail(&self) -> bool {
        self.records.iter().any(|r| r.verdict.is_fail())
    }

    pub fn any_inconclusive(&self) -> bool {
        self.records
            .iter()
            .any(|r| matches!(r.verdict, CheckVerdict::Inconclusive(_)))
    }

    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.verdict.is_pass())
    }

    /// 0 when everything passed, 1 on any Fail, 2 when only Inconclusive
    /// records stand in the way.
    pub fn exit_code(&self) -> i32 {
        if self.any_fail() {
            1
        } else if self.any_inconclusive() {
            2
        } else {
            0
        }
    }
}

/// Folds per-item comparisons into one verdict; every failing item is listed.
pub(crate) struct Tally {
    failures: Vec<String>,
    unsure: Vec<String>,
}

impl Tally {
    pub(crate) fn new() -> Self {
        Tally {
            failures: Vec::new(),
            unsure: Vec::new(),
        }
    }

    pub(crate) fn record(&mut self, verdict: EqVerdict, witness: impl FnOnce() -> String) {
        match verdict {
            EqVerdict::Equal => {}
            EqVerdict::NotEqual => self.failures.push(witness()),
            EqVerdict::Inconclusive => self.unsure.push(witness()),
        }
    }

    pub(crate) fn fail(&mut self, witness: String) {
        self.failures.push(witness);
    }

    pub(crate) fn verdict(self) -> CheckVerdict {
        if !self.failures.is_empty() {
            CheckVerdict::Fail(self.failures.join("; "))
        } else if !self.unsure.is_empty() {
            CheckVerdict::Inconclusive(self.unsure.join("; "))
        } else {
            CheckVerdict::Pass
        }
    }
}
