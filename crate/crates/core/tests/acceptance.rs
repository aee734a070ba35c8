//! Acceptance suite. Prints one line per criterion and exits non-zero if any
//! criterion fails.

mod common;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6};
use std::time::{Duration, Instant};

use qfam_core::numrep::{sample_rep, CONSTRUCTION_TOL, IDENTITY_TOL};
use qfam_core::qfam::{
    check_coassoc_delta, check_coassoc_gamma, check_diagram_d1, check_e1,
    check_gamma_well_defined, numeric_residuals, search_counit, two_projection_residuals,
    CounitCandidate, QFamConfig, E2_LEFT, E2_RIGHT,
};
use qfam_core::tensorspace::apply_ops;
use qfam_core::{
    build_gamma, enumerate_tables, eq_mod, normal_form, verify_all, CayleyTable, EqVerdict,
    Factor, GammaPresentation, GaussianRational, Generator, LegKind, NCWord, Presentation,
    RelationPreset, SemigroupRecord, StarPoly, TableFilter, TensorElem, Universe,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn naive_associative(t: &CayleyTable) -> bool {
    let n = t.order();
    (0..n).all(|r| (0..n).all(|s| (0..n).all(|u| t.mul(t.mul(r, s), u) == t.mul(r, t.mul(s, u)))))
}

fn naive_identity(t: &CayleyTable) -> Option<usize> {
    let n = t.order();
    (0..n).find(|&e| (0..n).all(|s| t.mul(e, s) == s && t.mul(s, e) == s))
}

/// Every table of order `n`, by odometer over `n^(n²)` cell assignments.
fn all_tables(n: usize) -> Vec<CayleyTable> {
    let cells = n * n;
    let total = n.pow(cells as u32);
    (0..total)
        .map(|mut code| {
            let mut entries = vec![0usize; cells];
            for e in entries.iter_mut().rev() {
                *e = code % n;
                code /= n;
            }
            CayleyTable::from_fn(n, |r, s| entries[r * n + s]).unwrap()
        })
        .collect()
}

fn semigroups_up_to_three() -> Vec<SemigroupRecord> {
    (1..=3).flat_map(common::semigroups).collect()
}

fn coproduct_sweep() -> Outcome {
    let start = Instant::now();
    let mut counts = Vec::new();
    let mut failures = Vec::new();
    for n in 1..=3 {
        let recs = common::semigroups(n);
        let brute = all_tables(n).iter().filter(|t| naive_associative(t)).count();
        counts.push((recs.len(), brute));
        let bad: Vec<String> = recs
            .par_iter()
            .flat_map_iter(|rec| {
                let g = build_gamma(&common::config(rec, RelationPreset::AllMaps));
                let mut records = check_gamma_well_defined(&g);
                records.push(check_diagram_d1(&g));
                records.push(check_e1(&g));
                records.push(check_coassoc_gamma(&g));
                let table = rec.table().to_string();
                records
                    .into_iter()
                    .filter(|r| !r.verdict.is_pass())
                    .map(move |r| format!("{table} {}: {}", r.name, r.verdict))
            })
            .collect();
        failures.extend(bad);
    }
    let elapsed = start.elapsed();
    let expected = [(1, 1), (8, 8), (113, 113)];
    let ok = counts == expected && failures.is_empty() && elapsed < Duration::from_secs(120);
    let detail = format!(
        "coproduct sweep: counts {:?} (expected 1/8/113), {} failing checks, {:.1}s",
        counts.iter().map(|c| c.0).collect::<Vec<_>>(),
        failures.len(),
        elapsed.as_secs_f64()
    );
    if !failures.is_empty() {
        eprintln!("{}", failures.join("\n"));
    }
    outcome(ok, detail)
}

fn coassociativity_iff_associativity() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    let mut ok = true;
    for (n, expected) in [(2, 8usize), (3, 113)] {
        let magmas: Vec<CayleyTable> =
            enumerate_tables(n, TableFilter::AllMagmas).unwrap().collect();
        let results: Vec<(bool, bool)> = magmas
            .par_iter()
            .map(|t| {
                let cfg = QFamConfig::bypass_validation(n, t.clone(), RelationPreset::AllMaps).unwrap();
                (check_coassoc_delta(&cfg).verdict.is_pass(), naive_associative(t))
            })
            .collect();
        let passing = results.iter().filter(|r| r.0).count();
        let agree = results.iter().all(|(p, a)| p == a);
        ok &= agree && passing == expected && magmas.len() == n.pow((n * n) as u32);
        parts.push(format!("n={n}: {} magmas, {passing} pass, agree={agree}", magmas.len()));
    }
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(600);
    outcome(ok, format!("coassoc ⟺ assoc: {}, {:.1}s", parts.join("; "), elapsed.as_secs_f64()))
}

fn e2_identity() -> Outcome {
    let one = GaussianRational::from_int(1);
    let mut compared = 0usize;
    let mut failures = Vec::new();
    for m in 1..=3 {
        for n in 1..=3 {
            let pres = Presentation::new(m, n, RelationPreset::AllMaps);
            let gens: Vec<Generator> = pres.universe.generators().collect();
            let point = LegKind::Point(m);
            let sig6 = vec![point, LegKind::Alg, point, LegKind::Alg, point, LegKind::Alg];
            let sig4 = vec![point, LegKind::Alg, LegKind::Alg, LegKind::Alg];
            for &a in &gens {
                for &b in &gens {
                    for &c in &gens {
                        let w = [a, b, c].map(|g| Factor::Alg(NCWord::single(g)));
                        for x1 in 0..m {
                            for x2 in 0..m {
                                for x3 in 0..m {
                                    let factors = vec![
                                        Factor::Point(x1),
                                        w[0].clone(),
                                        Factor::Point(x2),
                                        w[1].clone(),
                                        Factor::Point(x3),
                                        w[2].clone(),
                                    ];
                                    let span = TensorElem::monomial(pres, sig6.clone(), factors, one.clone()).unwrap();
                                    let expected = if x1 == x2 && x2 == x3 {
                                        let f = vec![Factor::Point(x1), w[0].clone(), w[1].clone(), w[2].clone()];
                                        TensorElem::monomial(pres, sig4.clone(), f, one.clone()).unwrap()
                                    } else {
                                        TensorElem::zero(pres, sig4.clone())
                                    };
                                    let left = apply_ops(&span, &E2_LEFT).unwrap();
                                    let right = apply_ops(&span, &E2_RIGHT).unwrap();
                                    compared += 1;
                                    if left != expected || right != expected {
                                        failures.push(format!("m={m} n={n} ({x1},{x2},{x3}) {a} {b} {c}"));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    if !failures.is_empty() {
        eprintln!("{}", failures.iter().take(20).cloned().collect::<Vec<_>>().join("\n"));
    }
    outcome(
        failures.is_empty(),
        format!("e2 exact: {compared} spanning tensors (m ≤ 3), {} mismatches", failures.len()),
    )
}

fn counit_identity_correspondence() -> Outcome {
    let mut with_identity = 0;
    let mut failures = Vec::new();
    for rec in semigroups_up_to_three() {
        let g = build_gamma(&common::config(&rec, RelationPreset::AllMaps));
        let found = search_counit(&g, 1 << 20).unwrap();
        let expected: Vec<CounitCandidate> = naive_identity(rec.table())
            .map(|e| CounitCandidate::constant(rec.order(), e))
            .into_iter()
            .collect();
        with_identity += expected.len();
        if found != expected {
            failures.push(format!("{}: found {:?}", rec.table(), found));
        }
    }
    if !failures.is_empty() {
        eprintln!("{}", failures.join("\n"));
    }
    outcome(
        failures.is_empty(),
        format!(
            "counit ⟺ identity: 122 semigroups, {with_identity} with identity, {} mismatches",
            failures.len()
        ),
    )
}

fn numeric_agreement() -> Outcome {
    let recs = semigroups_up_to_three();
    let dims = [2usize, 4, 8];
    let worst: Vec<(f64, f64)> = recs
        .par_iter()
        .enumerate()
        .map(|(i, rec)| {
            let g = build_gamma(&common::config(rec, RelationPreset::AllMaps));
            let mut worst = (0.0f64, 0.0f64);
            for (j, &d) in dims.iter().enumerate() {
                let seed = 1000 + 10 * i as u64 + j as u64;
                let rep = sample_rep(rec.order(), rec.order(), d, seed).unwrap();
                worst.0 = worst.0.max(rep.relation_residual());
                let res = numeric_residuals(&g, &rep, seed).unwrap();
                worst.1 = res.values().copied().fold(worst.1, f64::max);
            }
            worst
        })
        .collect();
    let rel = worst.iter().map(|w| w.0).fold(0.0, f64::max);
    let ident = worst.iter().map(|w| w.1).fold(0.0, f64::max);

    let mut path = 0.0f64;
    for rec in common::semigroups(2) {
        let g = build_gamma(&common::config(&rec, RelationPreset::AllMaps));
        for t in [0.0, FRAC_PI_6, FRAC_PI_4, FRAC_PI_3, FRAC_PI_2] {
            let res = two_projection_residuals(&g, t, 42).unwrap();
            path = res.values().copied().fold(path, f64::max);
        }
    }
    let ok = rel <= CONSTRUCTION_TOL && ident <= IDENTITY_TOL && path <= 1e-10;
    outcome(
        ok,
        format!(
            "numeric oracle: {} tables × d∈{{2,4,8}}, max relation residual {rel:.1e}, max identity residual {ident:.1e}; two-projection path max {path:.1e}",
            recs.len()
        ),
    )
}

/// Rewrites each word at randomly chosen redexes until none remain.
fn random_order_normal_form(p: &StarPoly, preset: RelationPreset, rng: &mut impl Rng) -> StarPoly {
    let terms = p.terms().filter_map(|(w, c)| {
        let mut w = w.clone();
        loop {
            let redexes = w.redexes(preset);
            if redexes.is_empty() {
                return Some((w, c.clone()));
            }
            let (pos, _) = redexes[rng.random_range(0..redexes.len())];
            w = w.rewrite_at(pos, preset)?;
        }
    });
    StarPoly::from_terms(p.universe(), terms.collect::<Vec<_>>()).unwrap()
}

fn rewriting_robustness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20240611);
    let mut mismatches = 0;
    for _ in 0..10_000 {
        let u = Universe::new(rng.random_range(1..=3), rng.random_range(1..=3));
        let preset = if rng.random_bool(0.5) { RelationPreset::AllMaps } else { RelationPreset::MagicSquare };
        let p = common::random_poly(u, 4, 5, &mut rng);
        let reference = normal_form(&p, preset);
        for _ in 0..3 {
            if random_order_normal_form(&p, preset, &mut rng) != reference {
                mismatches += 1;
            }
        }
    }
    let mut not_equal = 0;
    for _ in 0..1_000 {
        let u = Universe::new(rng.random_range(1..=3), rng.random_range(1..=3));
        let rels = common::relations(u, RelationPreset::AllMaps);
        let mut elem = StarPoly::zero(u);
        for _ in 0..rng.random_range(1..=3) {
            let r = &rels[rng.random_range(0..rels.len())];
            let left = common::random_poly(u, 2, 3, &mut rng);
            let right = common::random_poly(u, 2, 3, &mut rng);
            elem = elem.add(&left.mul(r).unwrap().mul(&right).unwrap()).unwrap();
        }
        let base = common::random_poly(u, 3, 4, &mut rng);
        let shifted = base.add(&elem).unwrap();
        if eq_mod(&shifted, &base, RelationPreset::AllMaps).unwrap() != EqVerdict::Equal {
            not_equal += 1;
        }
    }
    outcome(
        mismatches == 0 && not_equal == 0,
        format!(
            "rewriting: 10000 polys × 3 random orders, {mismatches} mismatches; 1000 ideal elements, {not_equal} not Equal"
        ),
    )
}

/// Changes exactly one term of one image of `Γ`.
fn corrupt(g: &GammaPresentation, rng: &mut impl Rng) -> (GammaPresentation, String) {
    let pres = g.config().presentation();
    let gens: Vec<Generator> = pres.universe.generators().collect();
    let sig = vec![LegKind::Alg, LegKind::Alg];
    let mono = |f: Vec<Factor>, c: GaussianRational| TensorElem::monomial(pres, sig.clone(), f, c).unwrap();
    let random_gen = |rng: &mut dyn rand::RngCore| gens[rng.random_range(0..gens.len())];
    loop {
        let c = gens[rng.random_range(0..gens.len())];
        let img = g.image(c).clone();
        let terms: Vec<(Vec<Factor>, GaussianRational)> =
            img.terms().map(|(f, k)| (f.to_vec(), k.clone())).collect();
        // an empty image (element outside the range of ξ) can only gain a term
        let kind = if terms.is_empty() { 3 } else { rng.random_range(0..4) };
        let (factors, coeff) = match terms.is_empty() {
            true => (Vec::new(), GaussianRational::from_int(0)),
            false => terms[rng.random_range(0..terms.len())].clone(),
        };
        let term = || mono(factors.clone(), coeff.clone());
        let (new, how) = match kind {
            0 => (img.sub(&term()).unwrap(), "drop"),
            1 => (img.add(&term()).unwrap(), "double"),
            2 => {
                let leg = rng.random_range(0..2);
                let mut f = factors.clone();
                f[leg] = Factor::Alg(NCWord::single(random_gen(rng)));
                (img.sub(&term()).unwrap().add(&mono(f, coeff.clone())).unwrap(), "retarget")
            }
            _ => {
                let f = vec![
                    Factor::Alg(NCWord::single(random_gen(rng))),
                    Factor::Alg(NCWord::single(random_gen(rng))),
                ];
                (img.add(&mono(f, common::random_coeff(rng))).unwrap(), "add")
            }
        };
        if new != img {
            let mut out = g.clone();
            out.replace_image(c, new).unwrap();
            return (out, format!("{how} in Γ({c})"));
        }
    }
}

fn mutation_sensitivity() -> Outcome {
    let recs = semigroups_up_to_three();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut missed = Vec::new();
    for _ in 0..100 {
        let rec = &recs[rng.random_range(0..recs.len())];
        let g = build_gamma(&common::config(rec, RelationPreset::AllMaps));
        let (bad, how) = corrupt(&g, &mut rng);
        if !verify_all(&bad).any_fail() {
            missed.push(format!("{} {how}", rec.table()));
        }
    }
    if !missed.is_empty() {
        eprintln!("{}", missed.join("\n"));
    }
    outcome(missed.is_empty(), format!("mutation: 100 single-term corruptions, {} undetected", missed.len()))
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 7] = [
        ("1", coproduct_sweep),
        ("2", coassociativity_iff_associativity),
        ("3", e2_identity),
        ("4", counit_identity_correspondence),
        ("5", numeric_agreement),
        ("6", rewriting_robustness),
        ("7", mutation_sensitivity),
    ];
    let mut failed = 0;
    for (id, f) in criteria {
        let start = Instant::now();
        let o = f();
        let secs = start.elapsed().as_secs_f64();
        println!("{} criterion {id}: {} [{secs:.1}s]", if o.ok { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.ok);
    }
    println!("acceptance: {} of 7 criteria passed", 7 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
