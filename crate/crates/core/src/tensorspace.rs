//! Elements of mixed tensor products `ℂ^{d₁} ⊗ C ⊗ ℂ^{d₂} ⊗ …` and the leg
//! maps used to state the comultiplication identities: flips, multiplication
//! of point legs, multiplication of algebra legs and substitution of a
//! homomorphism into a single leg.
//!
//! An element is a flat sum of elementary tensors. Point-leg factors are basis
//! indices; algebra-leg factors are words kept in normal form. Relations act
//! within a leg only.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::starpoly::{
    expand_word, render_sum, EqVerdict, GaussianRational, Generator, NCWord, RelationPreset,
    StarPoly, Universe,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("leg {pos} out of range for a {legs}-leg element")]
    LegOutOfRange { pos: usize, legs: usize },
    #[error("leg {pos} is {found}, expected {expected}")]
    KindMismatch {
        pos: usize,
        expected: String,
        found: String,
    },
    #[error("signatures differ: [{0}] vs [{1}]")]
    SignatureMismatch(String, String),
    #[error("elements live over different presentations")]
    PresentationMismatch,
    #[error("factor {factor} does not fit leg {pos} ({kind})")]
    BadFactor {
        pos: usize,
        factor: String,
        kind: String,
    },
    #[error("homomorphism is malformed: {0}")]
    BadHom(String),
}

/// The generator set together with the relations in force.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Presentation {
    pub universe: Universe,
    pub preset: RelationPreset,
}

impl Presentation {
    pub fn new(m: usize, n: usize, preset: RelationPreset) -> Self {
        Presentation {
            universe: Universe::new(m, n),
            preset,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LegKind {
    /// Commutative `ℂ^d` with orthogonal idempotent basis `e[0..d]`.
    Point(usize),
    /// The presented algebra `C`.
    Alg,
}

impl fmt::Display for LegKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LegKind::Point(d) => write!(f, "Point({d})"),
            LegKind::Alg => f.write_str("Alg"),
        }
    }
}

fn render_signature(sig: &[LegKind]) -> String {
    sig.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(", ")
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Factor {
    Point(usize),
    Alg(NCWord),
}

impl Factor {
    fn point(&self) -> Option<usize> {
        match self {
            Factor::Point(x) => Some(*x),
            Factor::Alg(_) => None,
        }
    }

    fn word(&self) -> Option<&NCWord> {
        match self {
            Factor::Alg(w) => Some(w),
            Factor::Point(_) => None,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Point(x) => write!(f, "e[{x}]"),
            Factor::Alg(w) => write!(f, "{w}"),
        }
    }
}

/// Factors of one elementary tensor, ordered by point indices and then by
/// words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct TermKey(Vec<Factor>);

impl Ord for TermKey {
    fn cmp(&self, other: &Self) -> Ordering {
        let points = |k: &TermKey| k.0.iter().filter_map(Factor::point).collect::<Vec<_>>();
        points(self).cmp(&points(other)).then_with(|| {
            self.0
                .iter()
                .filter_map(Factor::word)
                .cmp(other.0.iter().filter_map(Factor::word))
        })
    }
}

impl PartialOrd for TermKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct TensorElem {
    pres: Presentation,
    signature: Vec<LegKind>,
    terms: BTreeMap<TermKey, GaussianRational>,
}

impl TensorElem {
    pub fn zero(pres: Presentation, signature: Vec<LegKind>) -> Self {
        TensorElem {
            pres,
            signature,
            terms: BTreeMap::new(),
        }
    }

    /// The scalar `c` (empty signature).
    pub fn scalar(pres: Presentation, c: GaussianRational) -> Self {
        let mut out = Self::zero(pres, Vec::new());
        out.add_term(TermKey(Vec::new()), c);
        out
    }

    /// `1 ⊗ 1 ⊗ …`, where the unit of `ℂ^d` is `Σ_x e[x]`.
    pub fn unit(pres: Presentation, signature: &[LegKind]) -> Self {
        let mut out = Self::scalar(pres, GaussianRational::one());
        for &kind in signature {
            let leg = match kind {
                LegKind::Alg => Self::alg_word(pres, NCWord::unit()),
                LegKind::Point(d) => {
                    let mut e = Self::zero(pres, vec![kind]);
                    for x in 0..d {
                        e.add_term(TermKey(vec![Factor::Point(x)]), GaussianRational::one());
                    }
                    e
                }
            };
            out = out.concat(&leg).expect("same presentation");
        }
        out
    }

    /// A single elementary tensor. Algebra factors are normalized.
    pub fn monomial(
        pres: Presentation,
        signature: Vec<LegKind>,
        factors: Vec<Factor>,
        coeff: GaussianRational,
    ) -> Result<Self, TensorError> {
        if factors.len() != signature.len() {
            return Err(TensorError::SignatureMismatch(
                render_signature(&signature),
                format!("{} factors", factors.len()),
            ));
        }
        let mut normalized = Vec::with_capacity(factors.len());
        for (pos, (factor, kind)) in factors.into_iter().zip(&signature).enumerate() {
            let bad = |factor: &Factor| TensorError::BadFactor {
                pos,
                factor: factor.to_string(),
                kind: kind.to_string(),
            };
            match (&factor, kind) {
                (Factor::Point(x), LegKind::Point(d)) if x < d => normalized.push(factor),
                (Factor::Alg(w), LegKind::Alg)
                    if w.letters().iter().all(|&g| pres.universe.contains(g)) =>
                {
                    match w.normal_form(pres.preset) {
                        Some(nf) => normalized.push(Factor::Alg(nf)),
                        None => return Ok(Self::zero(pres, signature)),
                    }
                }
                _ => return Err(bad(&factor)),
            }
        }
        let mut out = Self::zero(pres, signature);
        out.add_term(TermKey(normalized), coeff);
        Ok(out)
    }

    /// `e[x]` in `ℂ^d`.
    pub fn point(pres: Presentation, d: usize, x: usize) -> Result<Self, TensorError> {
        Self::monomial(pres, vec![LegKind::Point(d)], vec![Factor::Point(x)], GaussianRational::one())
    }

    /// A word as a one-leg element, normalized.
    pub fn alg_word(pres: Presentation, w: NCWord) -> Self {
        let mut out = Self::zero(pres, vec![LegKind::Alg]);
        if let Some(nf) = w.normal_form(pres.preset) {
            out.add_term(TermKey(vec![Factor::Alg(nf)]), GaussianRational::one());
        }
        out
    }

    pub fn generator(pres: Presentation, g: Generator) -> Self {
        Self::alg_word(pres, NCWord::single(g))
    }

    /// A polynomial as a one-leg element, normalized.
    pub fn from_poly(pres: Presentation, p: &StarPoly) -> Result<Self, TensorError> {
        if p.universe() != pres.universe {
            return Err(TensorError::PresentationMismatch);
        }
        let mut out = Self::zero(pres, vec![LegKind::Alg]);
        for (w, c) in p.terms() {
            if let Some(nf) = w.normal_form(pres.preset) {
                out.add_term(TermKey(vec![Factor::Alg(nf)]), c.clone());
            }
        }
        Ok(out)
    }

    pub fn presentation(&self) -> Presentation {
        self.pres
    }

    pub fn signature(&self) -> &[LegKind] {
        &self.signature
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&[Factor], &GaussianRational)> {
        self.terms.iter().map(|(k, c)| (k.0.as_slice(), c))
    }

    fn add_term(&mut self, key: TermKey, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn same_space(&self, other: &TensorElem) -> Result<(), TensorError> {
        if self.pres != other.pres {
            return Err(TensorError::PresentationMismatch);
        }
        if self.signature != other.signature {
            return Err(TensorError::SignatureMismatch(
                render_signature(&self.signature),
                render_signature(&other.signature),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &TensorElem) -> Result<TensorElem, TensorError> {
        self.same_space(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TensorElem) -> Result<TensorElem, TensorError> {
        self.add(&other.scale(&-GaussianRational::one()))
    }

    pub fn scale(&self, c: &GaussianRational) -> TensorElem {
        let mut out = Self::zero(self.pres, self.signature.clone());
        for (k, d) in &self.terms {
            out.add_term(k.clone(), c * d);
        }
        out
    }

    /// Sum of a nonempty family living in one space.
    pub fn sum<'a>(items: impl IntoIterator<Item = &'a TensorElem>) -> Result<TensorElem, TensorError> {
        let mut iter = items.into_iter();
        let first = iter
            .next()
            .ok_or_else(|| TensorError::BadHom("empty sum".into()))?
            .clone();
        iter.try_fold(first, |acc, x| acc.add(x))
    }

    /// `u ⊗ v`.
    pub fn concat(&self, other: &TensorElem) -> Result<TensorElem, TensorError> {
        if self.pres != other.pres {
            return Err(TensorError::PresentationMismatch);
        }
        let mut signature = self.signature.clone();
        signature.extend_from_slice(&other.signature);
        let mut out = Self::zero(self.pres, signature);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut factors = a.0.clone();
                factors.extend(b.0.iter().cloned());
                out.add_term(TermKey(factors), ca * cb);
            }
        }
        Ok(out)
    }

    /// Product in the tensor product algebra, computed leg by leg.
    pub fn mul(&self, other: &TensorElem) -> Result<TensorElem, TensorError> {
        self.same_space(other)?;
        let preset = self.pres.preset;
        let mut out = Self::zero(self.pres, self.signature.clone());
        for (a, ca) in &self.terms {
            'pairs: for (b, cb) in &other.terms {
                let mut factors = Vec::with_capacity(a.0.len());
                for (fa, fb) in a.0.iter().zip(&b.0) {
                    match (fa, fb) {
                        (Factor::Point(x), Factor::Point(y)) if x == y => factors.push(fa.clone()),
                        (Factor::Alg(u), Factor::Alg(v)) => {
                            let mut w = u.clone();
                            for &g in v.letters() {
                                if !w.push_normal(g, preset) {
                                    continue 'pairs;
                                }
                            }
                            factors.push(Factor::Alg(w));
                        }
                        _ => continue 'pairs,
                    }
                }
                out.add_term(TermKey(factors), ca * cb);
            }
        }
        Ok(out)
    }

    /// Leg-wise involution.
    pub fn adjoint(&self) -> TensorElem {
        let mut out = Self::zero(self.pres, self.signature.clone());
        for (k, c) in &self.terms {
            let factors = k
                .0
                .iter()
                .map(|f| match f {
                    Factor::Point(_) => f.clone(),
                    Factor::Alg(w) => Factor::Alg(
                        w.reversed()
                            .normal_form(self.pres.preset)
                            .expect("reversal of a normal word is normal"),
                    ),
                })
                .collect();
            out.add_term(TermKey(factors), c.conj());
        }
        out
    }

    fn check_leg(&self, pos: usize) -> Result<LegKind, TensorError> {
        self.signature
            .get(pos)
            .copied()
            .ok_or(TensorError::LegOutOfRange {
                pos,
                legs: self.signature.len(),
            })
    }

    fn kind_mismatch(pos: usize, expected: &str, found: LegKind) -> TensorError {
        TensorError::KindMismatch {
            pos,
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }

    /// Swaps legs `pos` and `pos + 1`.
    pub fn apply_flip(&self, pos: usize) -> Result<TensorElem, TensorError> {
        self.check_leg(pos)?;
        self.check_leg(pos + 1)?;
        let mut signature = self.signature.clone();
        signature.swap(pos, pos + 1);
        let mut out = Self::zero(self.pres, signature);
        for (k, c) in &self.terms {
            let mut factors = k.0.clone();
            factors.swap(pos, pos + 1);
            out.add_term(TermKey(factors), c.clone());
        }
        Ok(out)
    }

    /// Multiplies the point legs `pos` and `pos + 1`: `e[x]·e[y] = δ_xy e[x]`.
    pub fn apply_mult(&self, pos: usize) -> Result<TensorElem, TensorError> {
        let (a, b) = (self.check_leg(pos)?, self.check_leg(pos + 1)?);
        let d = match (a, b) {
            (LegKind::Point(d), LegKind::Point(e)) if d == e => d,
            (LegKind::Point(d), other) => {
                return Err(Self::kind_mismatch(pos + 1, &LegKind::Point(d).to_string(), other))
            }
            (other, _) => return Err(Self::kind_mismatch(pos, "Point", other)),
        };
        let mut signature = self.signature.clone();
        signature.remove(pos + 1);
        signature[pos] = LegKind::Point(d);
        let mut out = Self::zero(self.pres, signature);
        for (k, c) in &self.terms {
            if k.0[pos] == k.0[pos + 1] {
                let mut factors = k.0.clone();
                factors.remove(pos + 1);
                out.add_term(TermKey(factors), c.clone());
            }
        }
        Ok(out)
    }

    /// Multiplies the algebra legs `pos` and `pos + 1` and renormalizes.
    pub fn apply_alg_mult(&self, pos: usize) -> Result<TensorElem, TensorError> {
        for p in [pos, pos + 1] {
            let kind = self.check_leg(p)?;
            if kind != LegKind::Alg {
                return Err(Self::kind_mismatch(p, "Alg", kind));
            }
        }
        let mut signature = self.signature.clone();
        signature.remove(pos + 1);
        let mut out = Self::zero(self.pres, signature);
        for (k, c) in &self.terms {
            let (Factor::Alg(u), Factor::Alg(v)) = (&k.0[pos], &k.0[pos + 1]) else {
                unreachable!("signature checked");
            };
            if let Some(w) = u.concat(v).normal_form(self.pres.preset) {
                let mut factors = k.0.clone();
                factors.remove(pos + 1);
                factors[pos] = Factor::Alg(w);
                out.add_term(TermKey(factors), c.clone());
            }
        }
        Ok(out)
    }

    /// Replaces leg `pos` by the image of its factor under `h`.
    pub fn substitute_hom(&self, pos: usize, h: &LegHom) -> Result<TensorElem, TensorError> {
        let kind = self.check_leg(pos)?;
        if let LegHom::Identity = h {
            return Ok(self.clone());
        }
        if h.presentation() != Some(self.pres) {
            return Err(TensorError::PresentationMismatch);
        }
        match (h, kind) {
            (LegHom::Linear { images, .. }, LegKind::Point(d)) if images.len() == d => {}
            (LegHom::Algebra { .. }, LegKind::Alg) => {}
            _ => return Err(Self::kind_mismatch(pos, &h.domain_name(), kind)),
        }
        let codomain = h.codomain();
        let mut signature = self.signature[..pos].to_vec();
        signature.extend_from_slice(codomain);
        signature.extend_from_slice(&self.signature[pos + 1..]);
        let mut out = Self::zero(self.pres, signature);
        let mut cache: HashMap<&Factor, TensorElem> = HashMap::new();
        for (k, c) in &self.terms {
            let factor = &k.0[pos];
            if !cache.contains_key(factor) {
                cache.insert(factor, h.image(factor));
            }
            let image = &cache[factor];
            for (ik, ic) in &image.terms {
                let mut factors = k.0[..pos].to_vec();
                factors.extend(ik.0.iter().cloned());
                factors.extend(k.0[pos + 1..].iter().cloned());
                out.add_term(TermKey(factors), c * ic);
            }
        }
        Ok(out)
    }

    /// Rewrites every algebra leg over the eliminated basis (see
    /// [`crate::starpoly::basis_expansion`]). Two elements are equal in the
    /// tensor product iff these expansions coincide (under `AllMaps`).
    pub fn basis_expansion(&self) -> TensorElem {
        let mut out = Self::zero(self.pres, self.signature.clone());
        let mut word_cache: HashMap<&NCWord, StarPoly> = HashMap::new();
        for (k, c) in &self.terms {
            let mut partial: Vec<(Vec<Factor>, GaussianRational)> = vec![(Vec::new(), c.clone())];
            for f in &k.0 {
                match f {
                    Factor::Point(_) => partial.iter_mut().for_each(|(fs, _)| fs.push(f.clone())),
                    Factor::Alg(w) => {
                        let exp = word_cache
                            .entry(w)
                            .or_insert_with(|| expand_word(w, self.pres.universe, self.pres.preset));
                        let mut next = Vec::with_capacity(partial.len() * exp.len());
                        for (fs, pc) in &partial {
                            for (ew, ec) in exp.terms() {
                                let mut fs = fs.clone();
                                fs.push(Factor::Alg(ew.clone()));
                                next.push((fs, pc * ec));
                            }
                        }
                        partial = next;
                    }
                }
            }
            for (fs, pc) in partial {
                out.add_term(TermKey(fs), pc);
            }
        }
        out
    }
}

/// Compares `u` and `v` modulo the relations, leg by leg.
pub fn eq_tensor(u: &TensorElem, v: &TensorElem) -> Result<EqVerdict, TensorError> {
    let diff = u.sub(v)?;
    let zero = diff.basis_expansion().is_zero();
    Ok(crate::starpoly::zero_verdict(zero, u.pres.preset))
}

pub fn tensor_concat(u: &TensorElem, v: &TensorElem) -> Result<TensorElem, TensorError> {
    u.concat(v)
}

/// Canonical text form, e.g. `e[0]⊗c[0,0] + 2·e[1]⊗c[1,0]·c[0,1]`.
impl fmt::Display for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let scalar = self.signature.is_empty();
        f.write_str(&render_sum(self.terms.iter().map(|(k, c)| {
            let body = k.0.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("⊗");
            (c, body, scalar)
        })))
    }
}

impl fmt::Debug for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorElem[{}]({self})", render_signature(&self.signature))
    }
}

/// A unital map substituted into a single leg.
#[derive(Debug, Clone)]
pub enum LegHom {
    Identity,
    /// Linear on `ℂ^d`: `e[k] ↦ images[k]`.
    Linear {
        codomain: Vec<LegKind>,
        images: Vec<TensorElem>,
    },
    /// Unital (anti-)multiplicative on `C`, fixed by generator images.
    Algebra {
        codomain: Vec<LegKind>,
        images: BTreeMap<Generator, TensorElem>,
        anti: bool,
    },
}

impl LegHom {
    pub fn linear(images: Vec<TensorElem>) -> Result<LegHom, TensorError> {
        let first = images
            .first()
            .ok_or_else(|| TensorError::BadHom("no basis images".into()))?;
        let codomain = first.signature.clone();
        if images
            .iter()
            .any(|e| e.signature != codomain || e.pres != first.pres)
        {
            return Err(TensorError::BadHom("basis images live in different spaces".into()));
        }
        Ok(LegHom::Linear { codomain, images })
    }

    pub fn algebra(
        pres: Presentation,
        codomain: Vec<LegKind>,
        images: BTreeMap<Generator, TensorElem>,
        anti: bool,
    ) -> Result<LegHom, TensorError> {
        for g in pres.universe.generators() {
            match images.get(&g) {
                None => return Err(TensorError::BadHom(format!("no image for {g}"))),
                Some(e) if e.signature != codomain || e.pres != pres => {
                    return Err(TensorError::BadHom(format!("image of {g} has the wrong signature")))
                }
                Some(_) => {}
            }
        }
        if images.len() != pres.universe.m * pres.universe.n {
            return Err(TensorError::BadHom("images for generators outside the universe".into()));
        }
        Ok(LegHom::Algebra {
            codomain,
            images,
            anti,
        })
    }

    fn presentation(&self) -> Option<Presentation> {
        match self {
            LegHom::Identity => None,
            LegHom::Linear { images, .. } => images.first().map(|e| e.pres),
            LegHom::Algebra { images, .. } => images.values().next().map(|e| e.pres),
        }
    }

    fn codomain(&self) -> &[LegKind] {
        match self {
            LegHom::Identity => &[],
            LegHom::Linear { codomain, .. } | LegHom::Algebra { codomain, .. } => codomain,
        }
    }

    fn domain_name(&self) -> String {
        match self {
            LegHom::Identity => "any".into(),
            LegHom::Linear { images, .. } => LegKind::Point(images.len()).to_string(),
            LegHom::Algebra { .. } => LegKind::Alg.to_string(),
        }
    }

    /// Image of a single factor. The factor's kind must match the domain.
    fn image(&self, factor: &Factor) -> TensorElem {
        match (self, factor) {
            (LegHom::Linear { images, .. }, Factor::Point(x)) => images[*x].clone(),
            (
                LegHom::Algebra {
                    codomain,
                    images,
                    anti,
                },
                Factor::Alg(w),
            ) => {
                let pres = images.values().next().expect("nonempty").pres;
                let mut acc = TensorElem::unit(pres, codomain);
                let letters: Box<dyn Iterator<Item = &Generator>> = if *anti {
                    Box::new(w.letters().iter().rev())
                } else {
                    Box::new(w.letters().iter())
                };
                for g in letters {
                    acc = acc.mul(&images[g]).expect("codomain checked");
                }
                acc
            }
            _ => unreachable!("domain checked before substitution"),
        }
    }
}

/// One structural map acting on a tensor leg.
#[derive(Debug, Clone, Copy)]
pub enum LegOp<'a> {
    Flip(usize),
    Mult(usize),
    AlgMult(usize),
    Subst(usize, &'a LegHom),
}

/// Applies `ops` left to right (the rightmost factor of a composite first).
pub fn apply_ops(u: &TensorElem, ops: &[LegOp<'_>]) -> Result<TensorElem, TensorError> {
    let mut cur = u.clone();
    for op in ops {
        cur = match *op {
            LegOp::Flip(p) => cur.apply_flip(p)?,
            LegOp::Mult(p) => cur.apply_mult(p)?,
            LegOp::AlgMult(p) => cur.apply_alg_mult(p)?,
            LegOp::Subst(p, h) => cur.substitute_hom(p, h)?,
        };
    }
    Ok(cur)
}
