use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Shape of the generator set `{c[x,k] : x < m, k < n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Universe {
    /// Points of the domain space (rows).
    pub m: usize,
    /// Order of the target semigroup (columns).
    pub n: usize,
}

impl Universe {
    pub fn new(m: usize, n: usize) -> Self {
        Universe { m, n }
    }

    pub fn contains(&self, g: Generator) -> bool {
        g.row < self.m && g.col < self.n
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        (0..self.m).flat_map(move |x| (0..self.n).map(move |k| Generator::new(x, k)))
    }
}

/// The projection `c[x,k]`: point `x` of the domain is sent to element `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Generator {
    pub row: usize,
    pub col: usize,
}

impl Generator {
    pub const fn new(row: usize, col: usize) -> Self {
        Generator { row, col }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c[{},{}]", self.row, self.col)
    }
}

/// Which relations hold among the generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationPreset {
    /// Each row `c[x,·]` is a partition of unity by orthogonal projections.
    AllMaps,
    /// [`RelationPreset::AllMaps`] plus the same for every column.
    MagicSquare,
}

impl RelationPreset {
    pub fn name(&self) -> &'static str {
        match self {
            RelationPreset::AllMaps => "allmaps",
            RelationPreset::MagicSquare => "magicsquare",
        }
    }
}

impl fmt::Display for RelationPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for RelationPreset {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "allmaps" => Ok(RelationPreset::AllMaps),
            "magicsquare" => Ok(RelationPreset::MagicSquare),
            other => Err(format!("unknown preset `{other}` (expected allmaps or magicsquare)")),
        }
    }
}

/// Outcome of rewriting an adjacent pair `a·b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairRule {
    /// `a·a → a`
    Idempotent,
    /// `a·b → 0`
    Orthogonal,
}

/// The rule (if any) whose left side is `a·b`.
#[inline]
pub fn pair_rule(a: Generator, b: Generator, preset: RelationPreset) -> Option<PairRule> {
    if a == b {
        Some(PairRule::Idempotent)
    } else if a.row == b.row || (preset == RelationPreset::MagicSquare && a.col == b.col) {
        Some(PairRule::Orthogonal)
    } else {
        None
    }
}

/// A monomial in the generators; the empty word is the unit.
///
/// Ordered by length, then lexicographically by `(row, col)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct NCWord(Vec<Generator>);

impl NCWord {
    pub fn unit() -> Self {
        NCWord(Vec::new())
    }

    pub fn from_generators(gens: impl IntoIterator<Item = Generator>) -> Self {
        NCWord(gens.into_iter().collect())
    }

    pub fn single(g: Generator) -> Self {
        NCWord(vec![g])
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &NCWord) -> NCWord {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        NCWord(letters)
    }

    pub fn reversed(&self) -> NCWord {
        NCWord(self.0.iter().rev().copied().collect())
    }

    /// Positions `i` where the pair `(w[i], w[i+1])` is a redex.
    pub fn redexes(&self, preset: RelationPreset) -> Vec<(usize, PairRule)> {
        self.0
            .windows(2)
            .enumerate()
            .filter_map(|(i, w)| pair_rule(w[0], w[1], preset).map(|r| (i, r)))
            .collect()
    }

    /// Rewrites the redex at `pos`; `None` means the word became zero.
    ///
    /// Panics if `pos` is not a redex.
    pub fn rewrite_at(&self, pos: usize, preset: RelationPreset) -> Option<NCWord> {
        let rule = pair_rule(self.0[pos], self.0[pos + 1], preset)
            .unwrap_or_else(|| panic!("no rule applies at position {pos} of {self}"));
        match rule {
            PairRule::Orthogonal => None,
            PairRule::Idempotent => {
                let mut letters = self.0.clone();
                letters.remove(pos + 1);
                Some(NCWord(letters))
            }
        }
    }

    /// Appends `g` to a word already in normal form, keeping it normal.
    /// Returns `false` when the product vanishes.
    #[inline]
    pub(crate) fn push_normal(&mut self, g: Generator, preset: RelationPreset) -> bool {
        match self.0.last().and_then(|&last| pair_rule(last, g, preset)) {
            None => {
                self.0.push(g);
                true
            }
            Some(PairRule::Idempotent) => true,
            Some(PairRule::Orthogonal) => false,
        }
    }

    /// Single left-to-right pass; every redex is between the top of the
    /// reduced prefix and the next letter.
    pub fn normal_form(&self, preset: RelationPreset) -> Option<NCWord> {
        let mut out = NCWord(Vec::with_capacity(self.len()));
        for &g in &self.0 {
            if !out.push_normal(g, preset) {
                return None;
            }
        }
        Some(out)
    }

    pub fn is_normal(&self, preset: RelationPreset) -> bool {
        self.0.windows(2).all(|w| pair_rule(w[0], w[1], preset).is_none())
    }
}

impl Ord for NCWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for NCWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for NCWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("·")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for NCWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<Generator> for NCWord {
    fn from(g: Generator) -> Self {
        NCWord::single(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const A: Generator = Generator::new(0, 0);
    const B: Generator = Generator::new(0, 1);
    const C: Generator = Generator::new(1, 0);

    #[test]
    fn word_order_is_length_then_lex() {
        let short = NCWord::from_generators([C]);
        let long = NCWord::from_generators([A, A]);
        assert!(short < long);
        assert!(NCWord::single(A) < NCWord::single(B));
        assert!(NCWord::unit() < NCWord::single(A));
    }

    #[test]
    fn stack_normal_form() {
        let p = RelationPreset::AllMaps;
        assert_eq!(
            NCWord::from_generators([A, A, C, C, A]).normal_form(p),
            Some(NCWord::from_generators([A, C, A]))
        );
        assert_eq!(NCWord::from_generators([A, A, B]).normal_form(p), None);
        assert_eq!(
            NCWord::from_generators([A, C]).normal_form(p),
            Some(NCWord::from_generators([A, C]))
        );
        assert_eq!(
            NCWord::from_generators([A, C]).normal_form(RelationPreset::MagicSquare),
            None
        );
    }

    #[test]
    fn redex_positions() {
        let w = NCWord::from_generators([A, A, C, B]);
        assert_eq!(
            w.redexes(RelationPreset::AllMaps),
            vec![(0, PairRule::Idempotent)]
        );
        assert_eq!(
            w.redexes(RelationPreset::MagicSquare),
            vec![(0, PairRule::Idempotent), (1, PairRule::Orthogonal)]
        );
        assert_eq!(w.rewrite_at(0, RelationPreset::AllMaps), Some(NCWord::from_generators([A, C, B])));
    }

    #[test]
    fn rendering() {
        assert_eq!(NCWord::unit().to_string(), "1");
        assert_eq!(NCWord::from_generators([A, C]).to_string(), "c[0,0]·c[1,0]");
        assert_eq!("MagicSquare".parse::<RelationPreset>(), Ok(RelationPreset::MagicSquare));
    }
}
