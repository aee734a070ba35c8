//! Counit and antipode experiments.
//!
//! A character of `C` sends every `c[x,k]` to `0` or `1` with exactly one `1`
//! per row, i.e. it is a classical map `f: {0..m} → S` with
//! `ε(c[x,k]) = δ_{k,f(x)}`. Enumerating all `n^m` of them therefore decides
//! whether `(C, Γ)` has a counit. The antipode probe only covers maps
//! `S(c[x,k]) = c[x,σ_x(k)]` for row-wise permutations `σ_x`, so a negative
//! outcome does not rule out an antipode.

use std::fmt;

use num_traits::{One, Zero};

use crate::starpoly::{EqVerdict, GaussianRational, Generator, NCWord, RelationPreset};
use crate::tensorspace::{eq_tensor, LegHom, LegKind, TensorElem};

use super::{CheckRecord, CheckVerdict, GammaPresentation, QFamError, Tally};

/// Refuse searches over more candidates than this unless asked otherwise.
pub const DEFAULT_SEARCH_CAP: u128 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CounitCandidate {
    /// `f[x]` is the element point `x` is sent to.
    pub f: Vec<usize>,
}

impl CounitCandidate {
    pub fn constant(m: usize, e: usize) -> Self {
        CounitCandidate { f: vec![e; m] }
    }

    pub fn value(&self, g: Generator) -> bool {
        self.f[g.row] == g.col
    }

    /// Whether `ε` respects the relations of the preset (under `MagicSquare`
    /// the column sums force `f` to be a bijection).
    pub fn is_character(&self, n: usize, preset: RelationPreset) -> bool {
        if self.f.iter().any(|&k| k >= n) {
            return false;
        }
        match preset {
            RelationPreset::AllMaps => true,
            RelationPreset::MagicSquare => {
                let mut hit = vec![0usize; n];
                self.f.iter().for_each(|&k| hit[k] += 1);
                hit.iter().all(|&h| h == 1)
            }
        }
    }

    fn hom(&self, g: &GammaPresentation) -> LegHom {
        let pres = g.config().presentation();
        let images = pres
            .universe
            .generators()
            .map(|c| {
                let v = if self.value(c) {
                    GaussianRational::one()
                } else {
                    GaussianRational::zero()
                };
                (c, TensorElem::scalar(pres, v))
            })
            .collect();
        LegHom::algebra(pres, Vec::new(), images, false).expect("all generators mapped")
    }
}

impl fmt::Display for CounitCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.f.iter().map(|k| k.to_string()).collect();
        write!(f, "f=[{}]", parts.join(","))
    }
}

fn candidate_count(n: usize, m: usize) -> u128 {
    (n as u128).checked_pow(m as u32).unwrap_or(u128::MAX)
}

/// `(ε⊗I)Γ = I = (I⊗ε)Γ` on every generator, decided exactly.
pub fn is_counit(g: &GammaPresentation, eps: &CounitCandidate) -> bool {
    let cfg = g.config();
    if eps.f.len() != cfg.m() || !eps.is_character(cfg.n(), cfg.preset()) {
        return false;
    }
    let h = eps.hom(g);
    let pres = cfg.presentation();
    g.images().all(|(c, img)| {
        let target = TensorElem::generator(pres, c);
        [0, 1].iter().all(|&leg| {
            let reduced = img.substitute_hom(leg, &h).expect("alg leg");
            eq_tensor(&reduced, &target) == Ok(EqVerdict::Equal)
        })
    })
}

/// All counits of `(C, Γ)`, in lexicographic order of `f`.
pub fn search_counit(g: &GammaPresentation, cap: u128) -> Result<Vec<CounitCandidate>, QFamError> {
    let (m, n) = (g.config().m(), g.config().n());
    let candidates = candidate_count(n, m);
    if candidates > cap {
        return Err(QFamError::SearchCap { candidates, cap });
    }
    let mut found = Vec::new();
    let mut f = vec![0usize; m];
    loop {
        let eps = CounitCandidate { f: f.clone() };
        if is_counit(g, &eps) {
            found.push(eps);
        }
        // odometer, last point fastest
        let mut i = m;
        loop {
            if i == 0 {
                return Ok(found);
            }
            i -= 1;
            f[i] += 1;
            if f[i] < n {
                break;
            }
            f[i] = 0;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AntipodeCandidate {
    /// `perms[x][k] = σ_x(k)`.
    pub perms: Vec<Vec<usize>>,
}

impl AntipodeCandidate {
    pub fn new(perms: Vec<Vec<usize>>, n: usize) -> Result<Self, QFamError> {
        for (x, p) in perms.iter().enumerate() {
            let mut seen = vec![false; n];
            if p.len() != n {
                return Err(QFamError::BadCandidate(format!("σ_{x} has length {}", p.len())));
            }
            for &k in p {
                if k >= n || std::mem::replace(&mut seen[k], true) {
                    return Err(QFamError::BadCandidate(format!("σ_{x} is not a bijection")));
                }
            }
        }
        Ok(AntipodeCandidate { perms })
    }

    pub fn identity(m: usize, n: usize) -> Self {
        AntipodeCandidate {
            perms: vec![(0..n).collect(); m],
        }
    }

    fn hom(&self, g: &GammaPresentation) -> LegHom {
        let pres = g.config().presentation();
        let images = pres
            .universe
            .generators()
            .map(|c| {
                let target = Generator::new(c.row, self.perms[c.row][c.col]);
                (c, TensorElem::generator(pres, target))
            })
            .collect();
        LegHom::algebra(pres, vec![LegKind::Alg], images, true).expect("all generators mapped")
    }
}

impl fmt::Display for AntipodeCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .perms
            .iter()
            .map(|p| {
                let parts: Vec<String> = p.iter().map(|k| k.to_string()).collect();
                format!("[{}]", parts.join(","))
            })
            .collect();
        write!(f, "σ=[{}]", rows.join(","))
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Every per-row permutation family, lexicographically.
pub fn antipode_candidates(
    m: usize,
    n: usize,
    cap: u128,
) -> Result<Vec<AntipodeCandidate>, QFamError> {
    let per_row = permutations(n);
    let candidates = (per_row.len() as u128)
        .checked_pow(m as u32)
        .unwrap_or(u128::MAX);
    if candidates > cap {
        return Err(QFamError::SearchCap { candidates, cap });
    }
    let mut families: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for _ in 0..m {
        families = families
            .into_iter()
            .flat_map(|fam| {
                per_row.iter().map(move |p| {
                    let mut next = fam.clone();
                    next.push(p.clone());
                    next
                })
            })
            .collect();
    }
    Ok(families
        .into_iter()
        .map(|perms| AntipodeCandidate { perms })
        .collect())
}

/// `m_C(S⊗I)Γ(c) = ε(c)·1 = m_C(I⊗S)Γ(c)` on every generator.
///
/// Refuses to run unless `eps` is a counit.
pub fn check_antipode_candidate(
    g: &GammaPresentation,
    s: &AntipodeCandidate,
    eps: &CounitCandidate,
) -> Result<CheckRecord, QFamError> {
    let cfg = g.config();
    if s.perms.len() != cfg.m() {
        return Err(QFamError::BadCandidate(format!(
            "{} row permutations for {} points",
            s.perms.len(),
            cfg.m()
        )));
    }
    AntipodeCandidate::new(s.perms.clone(), cfg.n())?;
    if !is_counit(g, eps) {
        return Err(QFamError::Precondition(format!("{eps} is not a counit")));
    }
    let pres = cfg.presentation();
    let antipode = s.hom(g);
    let mut record = CheckRecord::timed("antipode", || {
        let mut tally = Tally::new();
        for (c, img) in g.images() {
            let scalar = if eps.value(c) { 1 } else { 0 };
            let expected = TensorElem::alg_word(pres, NCWord::unit()).scale(&GaussianRational::from_int(scalar));
            for (leg, label) in [(0, "(S⊗I)"), (1, "(I⊗S)")] {
                let got = img
                    .substitute_hom(leg, &antipode)
                    .and_then(|t| t.apply_alg_mult(0))
                    .expect("alg legs");
                let verdict = eq_tensor(&got, &expected).expect("same space");
                tally.record(verdict, || format!("{c} {label}: {got} vs {expected}"));
            }
        }
        tally.verdict()
    });
    if let CheckVerdict::Fail(w) = &record.verdict {
        record.verdict = CheckVerdict::Fail(format!("{s}: {w}"));
    }
    Ok(record)
}
