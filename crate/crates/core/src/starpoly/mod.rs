//! Exact noncommutative *-polynomials in the generators `c[x,k]`.

mod coeff;
mod rewrite;
mod word;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

pub use coeff::GaussianRational;
pub use rewrite::{basis_expansion, eq_mod, expand_word, normal_form, EqVerdict};
pub(crate) use rewrite::zero_verdict;
pub use word::{pair_rule, Generator, NCWord, PairRule, RelationPreset, Universe};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StarPolyError {
    #[error("generator universes differ: {0:?} vs {1:?}")]
    UniverseMismatch(Universe, Universe),
    #[error("generator {0} outside universe m={1}, n={2}")]
    GeneratorOutOfRange(Generator, usize, usize),
}

/// A finite linear combination of words with Gaussian-rational coefficients.
///
/// Terms are kept in word order with zero coefficients removed. Products are
/// free (no relations applied) until [`normal_form`] is called.
#[derive(Clone, PartialEq, Eq)]
pub struct StarPoly {
    universe: Universe,
    terms: BTreeMap<NCWord, GaussianRational>,
}

impl StarPoly {
    pub fn zero(universe: Universe) -> Self {
        StarPoly {
            universe,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(universe: Universe) -> Self {
        Self::monomial(universe, NCWord::unit(), GaussianRational::one())
    }

    pub fn generator(universe: Universe, g: Generator) -> Result<Self, StarPolyError> {
        Self::word(universe, NCWord::single(g))
    }

    pub fn word(universe: Universe, w: NCWord) -> Result<Self, StarPolyError> {
        if let Some(&g) = w.letters().iter().find(|&&g| !universe.contains(g)) {
            return Err(StarPolyError::GeneratorOutOfRange(g, universe.m, universe.n));
        }
        Ok(Self::monomial(universe, w, GaussianRational::one()))
    }

    pub(crate) fn monomial(universe: Universe, w: NCWord, c: GaussianRational) -> Self {
        let mut p = Self::zero(universe);
        p.add_term(w, c);
        p
    }

    pub fn from_terms(
        universe: Universe,
        terms: impl IntoIterator<Item = (NCWord, GaussianRational)>,
    ) -> Result<Self, StarPolyError> {
        let mut p = Self::zero(universe);
        for (w, c) in terms {
            if let Some(&g) = w.letters().iter().find(|&&g| !universe.contains(g)) {
                return Err(StarPolyError::GeneratorOutOfRange(g, universe.m, universe.n));
            }
            p.add_term(w, c);
        }
        Ok(p)
    }

    pub fn universe(&self) -> Universe {
        self.universe
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

    pub fn terms(&self) -> impl Iterator<Item = (&NCWord, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &NCWord) -> GaussianRational {
        self.terms.get(w).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub(crate) fn add_term(&mut self, w: NCWord, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_universe(&self, other: &StarPoly) -> Result<(), StarPolyError> {
        if self.universe != other.universe {
            return Err(StarPolyError::UniverseMismatch(self.universe, other.universe));
        }
        Ok(())
    }

    pub fn add(&self, other: &StarPoly) -> Result<StarPoly, StarPolyError> {
        self.check_universe(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &StarPoly) -> Result<StarPoly, StarPolyError> {
        self.add(&other.scale(&-GaussianRational::one()))
    }

    pub fn scale(&self, c: &GaussianRational) -> StarPoly {
        let mut out = StarPoly::zero(self.universe);
        for (w, d) in &self.terms {
            out.add_term(w.clone(), c * d);
        }
        out
    }

    /// Bilinear extension of word concatenation. No relations are applied.
    pub fn mul(&self, other: &StarPoly) -> Result<StarPoly, StarPolyError> {
        self.check_universe(other)?;
        let mut out = StarPoly::zero(self.universe);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), a * b);
            }
        }
        Ok(out)
    }

    /// The involution: words reversed, coefficients conjugated, generators
    /// self-adjoint.
    pub fn adjoint(&self) -> StarPoly {
        let mut out = StarPoly::zero(self.universe);
        for (w, c) in &self.terms {
            out.add_term(w.reversed(), c.conj());
        }
        out
    }
}

/// Free product `a·b`.
pub fn poly_mul(a: &StarPoly, b: &StarPoly) -> Result<StarPoly, StarPolyError> {
    a.mul(b)
}

pub fn poly_adjoint(a: &StarPoly) -> StarPoly {
    a.adjoint()
}

/// Renders a signed sum: terms joined by ` + ` / ` - `, unit coefficients
/// omitted, a bare coefficient for the unit monomial, `0` when empty.
pub(crate) fn render_sum<'a>(
    terms: impl Iterator<Item = (&'a GaussianRational, String, bool)>,
) -> String {
    let mut out = String::new();
    for (i, (c, body, is_unit)) in terms.enumerate() {
        let negative = c.leads_negative();
        let magnitude = if negative { -c.clone() } else { c.clone() };
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if is_unit {
            out.push_str(&magnitude.to_string());
        } else if magnitude.is_one() {
            out.push_str(&body);
        } else {
            out.push_str(&format!("{magnitude}·{body}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Canonical text form, e.g. `c[0,0]·c[0,1] - 2·c[1,0] + (1-i)`.
impl fmt::Display for StarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_sum(
            self.terms.iter().map(|(w, c)| (c, w.to_string(), w.is_unit())),
        ))
    }
}

impl fmt::Debug for StarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StarPoly({self})")
    }
}
