use crate::starpoly::{EqVerdict, GaussianRational, Generator, NCWord, RelationPreset};
use crate::tensorspace::{apply_ops, eq_tensor, Factor, LegKind, LegOp, Presentation, TensorElem};

use super::{
    build_delta, build_phi, delta_hom, phi_hom, CheckRecord, GammaPresentation,
    QFamConfig, Tally, VerificationReport,
};

/// `(m⊗I)(I⊗F⊗I⊗I)(I⊗I⊗m⊗I⊗I)(I⊗I⊗I⊗F⊗I)` on `B⊗C⊗B⊗C⊗B⊗C`, rightmost
/// factor first.
pub const E2_LEFT: [LegOp<'static>; 4] = [
    LegOp::Flip(3),
    LegOp::Mult(2),
    LegOp::Flip(1),
    LegOp::Mult(0),
];

/// `(m⊗I)·W·(m⊗I)(I⊗F⊗I⊗I⊗I)` on `B⊗C⊗B⊗C⊗B⊗C`, where
/// `W = (I⊗F⊗I⊗I)(I⊗I⊗F⊗I)`.
pub const E2_RIGHT: [LegOp<'static>; 5] = [
    LegOp::Flip(1),
    LegOp::Mult(0),
    LegOp::Flip(2),
    LegOp::Flip(1),
    LegOp::Mult(0),
];

fn compare(u: &TensorElem, v: &TensorElem) -> EqVerdict {
    eq_tensor(u, v).expect("both sides built in the same space")
}

fn diff(u: &TensorElem, v: &TensorElem) -> String {
    u.sub(v).expect("same space").to_string()
}

fn unit2(pres: Presentation) -> TensorElem {
    TensorElem::unit(pres, &[LegKind::Alg, LegKind::Alg])
}

/// Checks that `Γ` respects every defining relation of `C`.
pub fn check_gamma_well_defined(g: &GammaPresentation) -> Vec<CheckRecord> {
    let cfg = g.config();
    let pres = cfg.presentation();
    let (m, n) = (cfg.m(), cfg.n());
    let mut records = vec![
        CheckRecord::timed("gamma_self_adjoint", || {
            let mut tally = Tally::new();
            for (c, img) in g.images() {
                let adj = img.adjoint();
                tally.record(compare(&adj, img), || format!("{c}: {}", diff(&adj, img)));
            }
            tally.verdict()
        }),
        CheckRecord::timed("gamma_idempotent", || {
            let mut tally = Tally::new();
            for (c, img) in g.images() {
                let sq = img.mul(img).expect("same space");
                tally.record(compare(&sq, img), || format!("{c}: {}", diff(&sq, img)));
            }
            tally.verdict()
        }),
        CheckRecord::timed("gamma_row_orthogonal", || {
            let mut tally = Tally::new();
            for x in 0..m {
                for k in 0..n {
                    for l in (0..n).filter(|&l| l != k) {
                        let prod = g
                            .image(Generator::new(x, k))
                            .mul(g.image(Generator::new(x, l)))
                            .expect("same space");
                        let zero = TensorElem::zero(pres, prod.signature().to_vec());
                        tally.record(compare(&prod, &zero), || {
                            format!("Γ(c[{x},{k}])·Γ(c[{x},{l}]) = {prod}")
                        });
                    }
                }
            }
            tally.verdict()
        }),
        CheckRecord::timed("gamma_row_sum", || {
            let mut tally = Tally::new();
            for x in 0..m {
                let row: Vec<_> = (0..n).map(|k| g.image(Generator::new(x, k)).clone()).collect();
                let sum = TensorElem::sum(&row).expect("n ≥ 1");
                let one = unit2(pres);
                tally.record(compare(&sum, &one), || format!("row {x}: {}", diff(&sum, &one)));
            }
            tally.verdict()
        }),
    ];
    if cfg.preset() == RelationPreset::MagicSquare {
        records.push(CheckRecord::timed("gamma_column_orthogonal", || {
            let mut tally = Tally::new();
            for k in 0..n {
                for x in 0..m {
                    for y in (0..m).filter(|&y| y != x) {
                        let prod = g
                            .image(Generator::new(x, k))
                            .mul(g.image(Generator::new(y, k)))
                            .expect("same space");
                        let zero = TensorElem::zero(pres, prod.signature().to_vec());
                        tally.record(compare(&prod, &zero), || {
                            format!("Γ(c[{x},{k}])·Γ(c[{y},{k}]) = {prod}")
                        });
                    }
                }
            }
            tally.verdict()
        }));
        records.push(CheckRecord::timed("gamma_column_sum", || {
            let mut tally = Tally::new();
            for k in 0..n {
                let col: Vec<_> = (0..m).map(|x| g.image(Generator::new(x, k)).clone()).collect();
                let sum = TensorElem::sum(&col).expect("m ≥ 1");
                let one = unit2(pres);
                tally.record(compare(&sum, &one), || format!("column {k}: {}", diff(&sum, &one)));
            }
            tally.verdict()
        }));
    }
    records
}

/// `Σ_x e_x ⊗ Σ_{ξ(r,s)=k} c[x,r] ⊗ c[x,s]`, written down from the table.
fn d1_closed_form(cfg: &QFamConfig, k: usize) -> TensorElem {
    let pres = cfg.presentation();
    let mut acc = TensorElem::zero(pres, vec![LegKind::Point(cfg.m()), LegKind::Alg, LegKind::Alg]);
    for x in 0..cfg.m() {
        for (r, s) in cfg.preimage(k) {
            let term = TensorElem::monomial(
                pres,
                vec![LegKind::Point(cfg.m()), LegKind::Alg, LegKind::Alg],
                vec![
                    Factor::Point(x),
                    Factor::Alg(Generator::new(x, r).into()),
                    Factor::Alg(Generator::new(x, s).into()),
                ],
                num_traits::One::one(),
            )
            .expect("indices in range");
            acc = acc.add(&term).expect("same space");
        }
    }
    acc
}

/// `(I_B⊗Γ)Φ = (m⊗I_{C⊗C})(I_B⊗F⊗I_C)(Φ⊗Φ)Δ` on every basis vector `e_k`.
///
/// The right side is also compared with the closed form
/// `Σ_x e_x ⊗ Σ_{r,s} Δ_k^{rs} c[x,r] ⊗ c[x,s]`.
pub fn check_diagram_d1(g: &GammaPresentation) -> CheckRecord {
    CheckRecord::timed("diagram_d1", || {
        let cfg = g.config();
        let (phi, delta, gamma) = (build_phi(cfg), build_delta(cfg), g.hom());
        let phi_h = phi_hom(cfg);
        let mut tally = Tally::new();
        for k in 0..cfg.n() {
            let left = phi[k].substitute_hom(1, &gamma).expect("leg 1 is C");
            let right = apply_ops(
                &delta[k],
                &[
                    LegOp::Subst(0, &phi_h),
                    LegOp::Subst(2, &phi_h),
                    LegOp::Flip(1),
                    LegOp::Mult(0),
                ],
            )
            .expect("pipeline is well-typed");
            tally.record(compare(&left, &right), || format!("k={k}: {}", diff(&left, &right)));
            let closed = d1_closed_form(cfg, k);
            tally.record(compare(&right, &closed), || {
                format!("k={k} (closed form): {}", diff(&right, &closed))
            });
        }
        tally.verdict()
    })
}

/// `(Δ⊗I)Δ = (I⊗Δ)Δ` on `A = ℂ^n`. Passes exactly when the table is
/// associative; no validation is assumed.
pub fn check_coassoc_delta(cfg: &QFamConfig) -> CheckRecord {
    CheckRecord::timed("coassoc_delta", || {
        let delta = build_delta(cfg);
        let h = delta_hom(cfg);
        let mut tally = Tally::new();
        for (k, dk) in delta.iter().enumerate() {
            let left = dk.substitute_hom(0, &h).expect("point leg");
            let right = dk.substitute_hom(1, &h).expect("point leg");
            tally.record(compare(&left, &right), || format!("k={k}: {}", diff(&left, &right)));
        }
        tally.verdict()
    })
}

/// `(Γ⊗I)Γ = (I⊗Γ)Γ` on every generator.
pub fn check_coassoc_gamma(g: &GammaPresentation) -> CheckRecord {
    CheckRecord::timed("coassoc_gamma", || {
        let gamma = g.hom();
        let mut tally = Tally::new();
        for (c, img) in g.images() {
            let left = img.substitute_hom(0, &gamma).expect("alg leg");
            let right = img.substitute_hom(1, &gamma).expect("alg leg");
            tally.record(compare(&left, &right), || format!("{c}: {}", diff(&left, &right)));
        }
        tally.verdict()
    })
}

/// `(I_B⊗I_C⊗Γ)(I_B⊗Γ)Φ = (I_B⊗Γ⊗I_C)(I_B⊗Γ)Φ` on every `e_k`.
///
/// Each side is also recomputed without `Γ`, by pushing `(Φ⊗Φ⊗Φ)` applied to
/// `(I⊗Δ)Δ` (resp. `(Δ⊗I)Δ`) through the leg maps of [`E2_LEFT`]
/// (resp. [`E2_RIGHT`]), and the two routes must agree.
pub fn check_e1(g: &GammaPresentation) -> CheckRecord {
    CheckRecord::timed("e1", || {
        let cfg = g.config();
        let (phi, delta, gamma) = (build_phi(cfg), build_delta(cfg), g.hom());
        let (phi_h, delta_h) = (phi_hom(cfg), delta_hom(cfg));
        let triple_phi = [
            LegOp::Subst(0, &phi_h),
            LegOp::Subst(2, &phi_h),
            LegOp::Subst(4, &phi_h),
        ];
        let mut tally = Tally::new();
        for k in 0..cfg.n() {
            let inner = phi[k].substitute_hom(1, &gamma).expect("alg leg");
            let left = inner.substitute_hom(2, &gamma).expect("alg leg");
            let right = inner.substitute_hom(1, &gamma).expect("alg leg");
            tally.record(compare(&left, &right), || format!("k={k}: {}", diff(&left, &right)));

            let left_route = delta[k]
                .substitute_hom(1, &delta_h)
                .and_then(|t| apply_ops(&t, &triple_phi))
                .and_then(|t| apply_ops(&t, &E2_LEFT))
                .expect("pipeline is well-typed");
            let right_route = delta[k]
                .substitute_hom(0, &delta_h)
                .and_then(|t| apply_ops(&t, &triple_phi))
                .and_then(|t| apply_ops(&t, &E2_RIGHT))
                .expect("pipeline is well-typed");
            tally.record(compare(&left, &left_route), || {
                format!("k={k} (left side via Δ): {}", diff(&left, &left_route))
            });
            tally.record(compare(&right, &right_route), || {
                format!("k={k} (right side via Δ): {}", diff(&right, &right_route))
            });
        }
        tally.verdict()
    })
}

/// Probe words `c[i mod m, i mod n]` for `i = 0, 1, 2`.
pub fn default_probe_words(pres: Presentation) -> [NCWord; 3] {
    let (m, n) = (pres.universe.m, pres.universe.n);
    [0, 1, 2].map(|i| Generator::new(i % m, i % n).into())
}

/// Both sides of the leg identity behind the `Γ` coassociativity proof agree on every spanning
/// tensor `e_{x1}⊗w1⊗e_{x2}⊗w2⊗e_{x3}⊗w3`, and equal
/// `δ_{x1x2} δ_{x2x3} e_{x1}⊗w1⊗w2⊗w3`. Comparison is exact.
pub fn check_e2(pres: Presentation, probe_words: &[NCWord; 3]) -> CheckRecord {
    CheckRecord::timed("e2", || {
        let m = pres.universe.m;
        let point = LegKind::Point(m);
        let sig6 = vec![point, LegKind::Alg, point, LegKind::Alg, point, LegKind::Alg];
        let sig4 = vec![point, LegKind::Alg, LegKind::Alg, LegKind::Alg];
        let one: GaussianRational = num_traits::One::one();
        let mut tally = Tally::new();
        for x1 in 0..m {
            for x2 in 0..m {
                for x3 in 0..m {
                    let [w1, w2, w3] = probe_words.clone().map(Factor::Alg);
                    let spanning = TensorElem::monomial(
                        pres,
                        sig6.clone(),
                        vec![Factor::Point(x1), w1.clone(), Factor::Point(x2), w2.clone(), Factor::Point(x3), w3.clone()],
                        num_traits::One::one(),
                    );
                    let spanning = match spanning {
                        Ok(t) => t,
                        Err(e) => {
                            tally.fail(format!("bad probe: {e}"));
                            return tally.verdict();
                        }
                    };
                    let expected = if x1 == x2 && x2 == x3 {
                        TensorElem::monomial(pres, sig4.clone(), vec![Factor::Point(x1), w1, w2, w3], one.clone())
                            .expect("validated above")
                    } else {
                        TensorElem::zero(pres, sig4.clone())
                    };
                    let left = apply_ops(&spanning, &E2_LEFT).expect("well-typed");
                    let right = apply_ops(&spanning, &E2_RIGHT).expect("well-typed");
                    for (side, got) in [("left", &left), ("right", &right)] {
                        if got != &expected {
                            tally.fail(format!("({x1},{x2},{x3}) {side}: {got} ≠ {expected}"));
                        }
                    }
                }
            }
        }
        tally.verdict()
    })
}

/// Every check for one presentation: well-definedness of `Γ`, the
/// `Φ`/`Γ` compatibility square, both leg identities and both
/// coassociativity checks.
pub fn verify_all(g: &GammaPresentation) -> VerificationReport {
    let cfg = g.config();
    let pres = cfg.presentation();
    let mut report = VerificationReport::default();
    report.extend(check_gamma_well_defined(g));
    report.push(check_diagram_d1(g));
    report.push(check_e1(g));
    report.push(check_e2(pres, &default_probe_words(pres)));
    report.push(check_coassoc_delta(cfg));
    report.push(check_coassoc_gamma(g));
    report
}
