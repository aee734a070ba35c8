#![allow(dead_code)]

use qfam_core::qfam::QFamConfig;
use qfam_core::{
    enumerate_tables, validate_associativity, CayleyTable, GaussianRational, Generator, NCWord,
    RelationPreset, SemigroupRecord, StarPoly, TableFilter, Universe,
};
use rand::Rng;

pub fn table(rows: &[&[usize]]) -> CayleyTable {
    let rows: Vec<Vec<usize>> = rows.iter().map(|r| r.to_vec()).collect();
    CayleyTable::new(rows.len(), &rows).unwrap()
}

pub fn semigroups(n: usize) -> Vec<SemigroupRecord> {
    enumerate_tables(n, TableFilter::AssociativeOnly)
        .unwrap()
        .map(|t| validate_associativity(&t).unwrap())
        .collect()
}

pub fn config(rec: &SemigroupRecord, preset: RelationPreset) -> QFamConfig {
    QFamConfig::new(rec.order(), rec, preset).unwrap()
}

pub fn random_word(u: Universe, max_len: usize, rng: &mut impl Rng) -> NCWord {
    let len = rng.random_range(0..=max_len);
    NCWord::from_generators(
        (0..len).map(|_| Generator::new(rng.random_range(0..u.m), rng.random_range(0..u.n))),
    )
}

pub fn random_coeff(rng: &mut impl Rng) -> GaussianRational {
    loop {
        let c = GaussianRational::from_ints(rng.random_range(-3..=3), rng.random_range(-2..=2));
        if c != GaussianRational::from_int(0) {
            return c;
        }
    }
}

pub fn random_poly(u: Universe, max_terms: usize, max_len: usize, rng: &mut impl Rng) -> StarPoly {
    let terms = rng.random_range(1..=max_terms);
    StarPoly::from_terms(
        u,
        (0..terms).map(|_| (random_word(u, max_len, rng), random_coeff(rng))),
    )
    .unwrap()
}

/// Generators of the relation ideal that `eq_mod` decides. Row sums are left
/// out under `MagicSquare`, where equality is only semi-decided.
pub fn relations(u: Universe, preset: RelationPreset) -> Vec<StarPoly> {
    let gen = |x: usize, k: usize| StarPoly::generator(u, Generator::new(x, k)).unwrap();
    let mut out = Vec::new();
    for x in 0..u.m {
        if preset == RelationPreset::AllMaps {
            let sum = (0..u.n).fold(StarPoly::zero(u), |acc, k| acc.add(&gen(x, k)).unwrap());
            out.push(sum.sub(&StarPoly::one(u)).unwrap());
        }
        for k in 0..u.n {
            let c = gen(x, k);
            out.push(c.mul(&c).unwrap().sub(&c).unwrap());
            out.push(c.adjoint().sub(&c).unwrap());
            for l in (0..u.n).filter(|&l| l != k) {
                out.push(c.mul(&gen(x, l)).unwrap());
            }
            if preset == RelationPreset::MagicSquare {
                for y in (0..u.m).filter(|&y| y != x) {
                    out.push(c.mul(&gen(y, k)).unwrap());
                }
            }
        }
    }
    out
}

pub mod strategies {
    use proptest::prelude::*;
    use qfam_core::{
        Factor, GaussianRational, Generator, LegKind, NCWord, Presentation, RelationPreset,
        StarPoly, TensorElem, Universe,
    };

    pub fn universe() -> impl Strategy<Value = Universe> {
        (1..=3usize, 1..=3usize).prop_map(|(m, n)| Universe::new(m, n))
    }

    pub fn preset() -> impl Strategy<Value = RelationPreset> {
        prop_oneof![Just(RelationPreset::AllMaps), Just(RelationPreset::MagicSquare)]
    }

    pub fn word(u: Universe, max_len: usize) -> impl Strategy<Value = NCWord> {
        prop::collection::vec((0..u.m, 0..u.n), 0..=max_len)
            .prop_map(|v| NCWord::from_generators(v.into_iter().map(|(x, k)| Generator::new(x, k))))
    }

    pub fn coeff() -> impl Strategy<Value = GaussianRational> {
        (-3i64..=3, -2i64..=2).prop_map(|(re, im)| GaussianRational::from_ints(re, im))
    }

    pub fn poly(u: Universe, max_terms: usize, max_len: usize) -> impl Strategy<Value = StarPoly> {
        prop::collection::vec((word(u, max_len), coeff()), 1..=max_terms)
            .prop_map(move |terms| StarPoly::from_terms(u, terms).unwrap())
    }

    pub fn poly_with_universe() -> impl Strategy<Value = StarPoly> {
        universe().prop_flat_map(|u| poly(u, 4, 5))
    }

    /// Random tensor over `sig`: a sum of up to four elementary tensors.
    pub fn tensor(pres: Presentation, sig: Vec<LegKind>) -> impl Strategy<Value = TensorElem> {
        let u = pres.universe;
        let factor = move |kind: LegKind| -> BoxedStrategy<Factor> {
            match kind {
                LegKind::Point(d) => (0..d).prop_map(Factor::Point).boxed(),
                LegKind::Alg => word(u, 3).prop_map(Factor::Alg).boxed(),
            }
        };
        let term = (sig.iter().map(|&k| factor(k)).collect::<Vec<_>>(), coeff());
        prop::collection::vec(term, 1..=4).prop_map(move |terms| {
            let parts: Vec<TensorElem> = terms
                .into_iter()
                .map(|(f, c)| TensorElem::monomial(pres, sig.clone(), f, c).unwrap())
                .collect();
            TensorElem::sum(&parts).unwrap()
        })
    }
}
