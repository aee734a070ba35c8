//! Normal forms and equality modulo the relation ideal.
//!
//! The rule set is `a·a → a` and `a·b → 0` for distinct `a, b` in the same
//! row (and, for [`RelationPreset::MagicSquare`], the same column). Every
//! rule shortens a word, so rewriting terminates; the only critical pairs are
//! `a·a·a` and `a·a·b`, which both resolve, so normal forms are unique.
//!
//! The sum relations are not rules. Instead the last column of every row is
//! eliminated through `c[x,n-1] = 1 - Σ_{k<n-1} c[x,k]`. After elimination
//! the normal words are exactly the words with no two adjacent letters from
//! the same row, which form a basis of the free product of the row algebras
//! `ℂ^n`. Under `AllMaps` this makes equality decidable.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{GaussianRational, Generator, NCWord, RelationPreset, StarPoly, StarPolyError, Universe};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EqVerdict {
    Equal,
    NotEqual,
    Inconclusive,
}

/// Applies the rewrite rules to every word.
pub fn normal_form(a: &StarPoly, preset: RelationPreset) -> StarPoly {
    let mut out = StarPoly::zero(a.universe());
    for (w, c) in a.terms() {
        if let Some(nf) = w.normal_form(preset) {
            out.add_term(nf, c.clone());
        }
    }
    out
}

/// Expands `c·w` in the eliminated basis, accumulating into `acc`.
pub(crate) fn expand_word_into(
    w: &NCWord,
    coeff: &GaussianRational,
    universe: Universe,
    preset: RelationPreset,
    acc: &mut BTreeMap<NCWord, GaussianRational>,
) {
    let last = universe.n - 1;
    let minus_one = -GaussianRational::one();
    let mut partial: BTreeMap<NCWord, GaussianRational> = BTreeMap::new();
    partial.insert(NCWord::unit(), coeff.clone());
    for &g in w.letters() {
        if g.col != last {
            let mut next = BTreeMap::new();
            for (mut word, c) in partial {
                if word.push_normal(g, preset) {
                    accumulate(&mut next, word, c);
                }
            }
            partial = next;
            continue;
        }
        // c[x,n-1] = 1 - Σ_{k<n-1} c[x,k]
        let mut next = BTreeMap::new();
        for (word, c) in partial {
            for k in 0..last {
                let mut extended = word.clone();
                if extended.push_normal(Generator::new(g.row, k), preset) {
                    accumulate(&mut next, extended, &c * &minus_one);
                }
            }
            accumulate(&mut next, word, c);
        }
        partial = next;
    }
    for (word, c) in partial {
        accumulate(acc, word, c);
    }
}

fn accumulate(map: &mut BTreeMap<NCWord, GaussianRational>, w: NCWord, c: GaussianRational) {
    use std::collections::btree_map::Entry;
    if c.is_zero() {
        return;
    }
    match map.entry(w) {
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

/// A single word written in the eliminated basis.
pub fn expand_word(w: &NCWord, universe: Universe, preset: RelationPreset) -> StarPoly {
    let mut acc = BTreeMap::new();
    expand_word_into(w, &GaussianRational::one(), universe, preset, &mut acc);
    StarPoly {
        universe,
        terms: acc,
    }
}

/// `a` rewritten over the basis of words avoiding the last column with no
/// adjacent same-row letters. Under `AllMaps` this representative is unique.
pub fn basis_expansion(a: &StarPoly, preset: RelationPreset) -> StarPoly {
    let universe = a.universe();
    let mut acc = BTreeMap::new();
    for (w, c) in a.terms() {
        if let Some(nf) = w.normal_form(preset) {
            expand_word_into(&nf, c, universe, preset, &mut acc);
        }
    }
    StarPoly {
        universe,
        terms: acc,
    }
}

/// Decides `a = b` in the presented algebra.
///
/// Under `MagicSquare` a nonzero remainder only means the rules could not
/// show equality, so the verdict is `Inconclusive` rather than `NotEqual`.
pub fn eq_mod(a: &StarPoly, b: &StarPoly, preset: RelationPreset) -> Result<EqVerdict, StarPolyError> {
    let diff = a.sub(b)?;
    Ok(zero_verdict(basis_expansion(&diff, preset).is_zero(), preset))
}

pub(crate) fn zero_verdict(is_zero: bool, preset: RelationPreset) -> EqVerdict {
    match (is_zero, preset) {
        (true, _) => EqVerdict::Equal,
        (false, RelationPreset::AllMaps) => EqVerdict::NotEqual,
        (false, RelationPreset::MagicSquare) => EqVerdict::Inconclusive,
    }
}
