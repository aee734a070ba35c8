//! Numerical cross-checks of the symbolic verdicts.
//!
//! Each symbolic side is evaluated in a [`NumericRep`] and compared against a
//! reference value assembled directly from the Cayley table and the
//! representing matrices, without going through `Φ`, `Δ`, `Γ` or the
//! rewriting engine.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::numrep::{
    add_kron, evaluate_tensor, random_vector, rep_two_projection_path, residual, CMatrix, CVector, NumericRep,
};
use crate::starpoly::Generator;
use crate::tensorspace::TensorElem;

use super::{build_phi, GammaPresentation, QFamError};

/// Largest residual per check name.
pub type NumericResiduals = BTreeMap<&'static str, f64>;

fn eval(u: &TensorElem, rep: &NumericRep, vectors: &[CVector]) -> Result<CMatrix, QFamError> {
    Ok(evaluate_tensor(u, rep, vectors)?)
}

/// `Σ_x v_x Σ_{ξ(r,s)=k} P[x][r] ⊗ P[x][s]`.
fn reference_pair(g: &GammaPresentation, rep: &NumericRep, v: &CVector, k: usize) -> CMatrix {
    let cfg = g.config();
    let t = cfg.table();
    let n = cfg.n();
    let mut acc = CMatrix::zeros(rep.d * rep.d, rep.d * rep.d);
    for x in (0..cfg.m()).filter(|&x| v[x] != Complex64::new(0.0, 0.0)) {
        for r in 0..n {
            for s in 0..n {
                if t.mul(r, s) == k {
                    add_kron(&mut acc, v[x], &[&rep.mats[x][r], &rep.mats[x][s]]);
                }
            }
        }
    }
    acc
}

/// `Σ_x v_x Σ_{ξ(r,ξ(s,t))=k} P[x][r] ⊗ P[x][s] ⊗ P[x][t]`.
fn reference_triple(g: &GammaPresentation, rep: &NumericRep, v: &CVector, k: usize) -> CMatrix {
    let cfg = g.config();
    let table = cfg.table();
    let n = cfg.n();
    let dim = rep.d.pow(3);
    let mut acc = CMatrix::zeros(dim, dim);
    for x in (0..cfg.m()).filter(|&x| v[x] != Complex64::new(0.0, 0.0)) {
        for r in 0..n {
            for s in 0..n {
                for t in 0..n {
                    if table.mul(r, table.mul(s, t)) == k {
                        let p = &rep.mats[x];
                        add_kron(&mut acc, v[x], &[&p[r], &p[s], &p[t]]);
                    }
                }
            }
        }
    }
    acc
}

/// Residuals of every algebra-valued check of `g` in `rep`.
///
/// Point legs are paired with a Gaussian vector drawn from `seed`; for a
/// single generator the "vector" is the indicator of its row.
pub fn numeric_residuals(
    g: &GammaPresentation,
    rep: &NumericRep,
    seed: u64,
) -> Result<NumericResiduals, QFamError> {
    let cfg = g.config();
    let (m, n) = (cfg.m(), cfg.n());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = random_vector(m, &mut rng);
    let gamma = g.hom();
    let phi = build_phi(cfg);
    let id2 = CMatrix::identity(rep.d * rep.d, rep.d * rep.d);
    let mut out = NumericResiduals::new();
    let mut bump = |name: &'static str, r: f64| {
        let e = out.entry(name).or_insert(0.0);
        *e = e.max(r);
    };

    let images: BTreeMap<Generator, CMatrix> = g
        .images()
        .map(|(c, img)| Ok((c, eval(img, rep, &[])?)))
        .collect::<Result<_, QFamError>>()?;
    for (c, gm) in &images {
        bump("gamma_self_adjoint", residual(&gm.adjoint(), gm));
        bump("gamma_idempotent", residual(&(gm * gm), gm));
        for l in (0..n).filter(|&l| l != c.col) {
            let other = &images[&Generator::new(c.row, l)];
            bump("gamma_row_orthogonal", (gm * other).norm());
        }
    }
    for x in 0..m {
        let sum = (0..n).fold(CMatrix::zeros(id2.nrows(), id2.ncols()), |acc, k| {
            acc + &images[&Generator::new(x, k)]
        });
        bump("gamma_row_sum", residual(&sum, &id2));
    }

    for (k, phi_k) in phi.iter().enumerate() {
        let inner = phi_k.substitute_hom(1, &gamma)?;
        let reference = reference_pair(g, rep, &v, k);
        bump("diagram_d1", residual(&eval(&inner, rep, std::slice::from_ref(&v))?, &reference));

        let left = eval(&inner.substitute_hom(2, &gamma)?, rep, std::slice::from_ref(&v))?;
        let right = eval(&inner.substitute_hom(1, &gamma)?, rep, std::slice::from_ref(&v))?;
        let reference = reference_triple(g, rep, &v, k);
        bump("e1", residual(&left, &reference).max(residual(&right, &reference)));
    }

    for (c, img) in g.images() {
        let mut indicator = CVector::zeros(m);
        indicator[c.row] = Complex64::new(1.0, 0.0);
        let reference = reference_triple(g, rep, &indicator, c.col);
        let left = eval(&img.substitute_hom(0, &gamma)?, rep, &[])?;
        let right = eval(&img.substitute_hom(1, &gamma)?, rep, &[])?;
        bump("coassoc_gamma", residual(&left, &reference).max(residual(&right, &reference)));
    }
    Ok(out)
}

/// [`numeric_residuals`] along the two-projection path at angle `t`
/// (requires `m = n = 2`).
pub fn two_projection_residuals(
    g: &GammaPresentation,
    t: f64,
    seed: u64,
) -> Result<NumericResiduals, QFamError> {
    let rep = rep_two_projection_path(t)?;
    numeric_residuals(g, &rep, seed)
}
