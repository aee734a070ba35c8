mod common;

use proptest::prelude::*;
use qfam_core::numrep::{sample_rep, IDENTITY_TOL};
use qfam_core::qfam::{
    build_delta, check_coassoc_gamma, check_diagram_d1, check_e1, check_gamma_well_defined,
    numeric_residuals, phi_hom, search_counit, CounitCandidate, QFamConfig,
};
use qfam_core::tensorspace::apply_ops;
use qfam_core::{
    build_gamma, verify_all, Factor, GaussianRational, Generator, LegKind, LegOp, NCWord,
    RelationPreset, SemigroupRecord, TensorElem,
};

fn all_semigroups() -> Vec<SemigroupRecord> {
    (1..=3).flat_map(common::semigroups).collect()
}

fn alg(x: usize, k: usize) -> Factor {
    Factor::Alg(NCWord::single(Generator::new(x, k)))
}

#[test]
fn coproduct_identities_hold_for_every_point_count() {
    for rec in all_semigroups() {
        for m in 1..=3 {
            let cfg = QFamConfig::new(m, &rec, RelationPreset::AllMaps).unwrap();
            let g = build_gamma(&cfg);
            let mut records = check_gamma_well_defined(&g);
            records.extend([check_diagram_d1(&g), check_e1(&g), check_coassoc_gamma(&g)]);
            for r in records {
                assert!(r.verdict.is_pass(), "m={m} {} {}: {}", rec.table(), r.name, r.verdict);
            }
        }
    }
}

/// `(Φ⊗Φ)Δ(e_k) = Σ Δ_k^{rs} e_j⊗c_jr⊗e_i⊗c_is`, then the flip gives
/// `e_j⊗e_i⊗c_jr⊗c_is` and multiplying the points gives `Σ e_l⊗c_lr⊗c_ls`.
#[test]
fn pushforward_of_delta_intermediate_forms() {
    let one = GaussianRational::from_int(1);
    for rec in all_semigroups() {
        let cfg = common::config(&rec, RelationPreset::AllMaps);
        let (n, t, pres) = (cfg.n(), cfg.table(), cfg.presentation());
        let pt = LegKind::Point(n);
        let phi = phi_hom(&cfg);
        for (k, delta_k) in build_delta(&cfg).iter().enumerate() {
            let mut stage1 = TensorElem::zero(pres, vec![pt, LegKind::Alg, pt, LegKind::Alg]);
            let mut stage2 = TensorElem::zero(pres, vec![pt, pt, LegKind::Alg, LegKind::Alg]);
            let mut stage3 = TensorElem::zero(pres, vec![pt, LegKind::Alg, LegKind::Alg]);
            for (r, s) in (0..n).flat_map(|r| (0..n).map(move |s| (r, s))).filter(|&(r, s)| t.mul(r, s) == k) {
                for j in 0..n {
                    for i in 0..n {
                        let f = vec![Factor::Point(j), alg(j, r), Factor::Point(i), alg(i, s)];
                        stage1 = stage1.add(&TensorElem::monomial(pres, stage1.signature().to_vec(), f, one.clone()).unwrap()).unwrap();
                        let f = vec![Factor::Point(j), Factor::Point(i), alg(j, r), alg(i, s)];
                        stage2 = stage2.add(&TensorElem::monomial(pres, stage2.signature().to_vec(), f, one.clone()).unwrap()).unwrap();
                    }
                }
                for l in 0..n {
                    let f = vec![Factor::Point(l), alg(l, r), alg(l, s)];
                    stage3 = stage3.add(&TensorElem::monomial(pres, stage3.signature().to_vec(), f, one.clone()).unwrap()).unwrap();
                }
            }
            let got1 = apply_ops(delta_k, &[LegOp::Subst(0, &phi), LegOp::Subst(2, &phi)]).unwrap();
            assert_eq!(got1, stage1);
            let got2 = got1.apply_flip(1).unwrap();
            assert_eq!(got2, stage2);
            assert_eq!(got2.apply_mult(0).unwrap(), stage3);
        }
    }
}

#[test]
fn counits_under_magic_square_are_bijective() {
    for rec in all_semigroups() {
        let cfg = common::config(&rec, RelationPreset::MagicSquare);
        let g = build_gamma(&cfg);
        for eps in search_counit(&g, 1 << 20).unwrap() {
            assert!(eps.is_character(cfg.n(), RelationPreset::MagicSquare));
        }
    }
}

#[test]
fn counit_with_more_points_is_still_the_identity() {
    for rec in common::semigroups(2) {
        let cfg = QFamConfig::new(3, &rec, RelationPreset::AllMaps).unwrap();
        let found = search_counit(&build_gamma(&cfg), 1 << 20).unwrap();
        let expected: Vec<CounitCandidate> =
            rec.identity().map(|e| CounitCandidate::constant(3, e)).into_iter().collect();
        assert_eq!(found, expected, "{}", rec.table());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dropping_a_term_breaks_d1_or_coassociativity(idx in 0usize..122, gen in 0usize..9, term in 0usize..27) {
        let recs = all_semigroups();
        let rec = &recs[idx % recs.len()];
        let mut g = build_gamma(&common::config(rec, RelationPreset::AllMaps));
        let gens: Vec<Generator> = g.config().presentation().universe.generators().collect();
        let c = gens[gen % gens.len()];
        let img = g.image(c).clone();
        prop_assume!(!img.is_empty());
        let (factors, coeff) = img.terms().nth(term % img.len()).map(|(f, k)| (f.to_vec(), k.clone())).unwrap();
        let dropped = TensorElem::monomial(img.presentation(), img.signature().to_vec(), factors, coeff).unwrap();
        g.replace_image(c, img.sub(&dropped).unwrap()).unwrap();
        prop_assert!(check_diagram_d1(&g).verdict.is_fail() || check_coassoc_gamma(&g).verdict.is_fail());
        prop_assert!(verify_all(&g).any_fail());
    }

    #[test]
    fn symbolic_passes_hold_numerically(idx in 0usize..122, m in 1usize..=3, d in 1usize..=4, seed in 0u64..1000) {
        let recs = all_semigroups();
        let rec = &recs[idx % recs.len()];
        let cfg = QFamConfig::new(m, rec, RelationPreset::AllMaps).unwrap();
        let g = build_gamma(&cfg);
        let rep = sample_rep(m, cfg.n(), d, seed).unwrap();
        for (name, r) in numeric_residuals(&g, &rep, seed).unwrap() {
            prop_assert!(r <= IDENTITY_TOL, "{}: {}", name, r);
        }
    }
}
