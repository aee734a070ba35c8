//! Concrete matrix models of the generator relations.
//!
//! Every row `x` of generators is sent to a resolution of the identity by
//! orthogonal projections `P[x][0] + … + P[x][n-1] = I`, chosen independently
//! per row. These models satisfy the `AllMaps` relations, so any identity the
//! symbolic engine proves must hold in them numerically.

use std::f64::consts::FRAC_PI_2;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

use crate::starpoly::{NCWord, StarPoly, Universe};
use crate::tensorspace::{Factor, LegKind, TensorElem};

/// Residual bound met by the constructions themselves.
pub const CONSTRUCTION_TOL: f64 = 1e-12;
/// Residual bound for an identity the symbolic engine reports as equal.
pub const IDENTITY_TOL: f64 = 1e-9;
/// Residual above which two elements count as numerically separated.
pub const SEPARATION_THRESHOLD: f64 = 1e-4;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumRepError {
    #[error("invalid dimensions m={m}, n={n}, d={d}")]
    InvalidDimensions { m: usize, n: usize, d: usize },
    #[error("angle {0} outside [0, π/2]")]
    AngleOutOfRange(f64),
    #[error("representation is for m={rep_m}, n={rep_n} but the element uses m={m}, n={n}")]
    UniverseMismatch {
        rep_m: usize,
        rep_n: usize,
        m: usize,
        n: usize,
    },
    #[error("expected {expected} point-leg vectors, got {found}")]
    VectorCount { expected: usize, found: usize },
    #[error("point leg {leg} has dimension {expected} but its vector has length {found}")]
    VectorLength {
        leg: usize,
        expected: usize,
        found: usize,
    },
}

#[derive(Debug, Clone)]
pub struct NumericRep {
    pub m: usize,
    pub n: usize,
    pub d: usize,
    /// `mats[x][k]` represents `c[x,k]`.
    pub mats: Vec<Vec<CMatrix>>,
    pub tol: f64,
    /// `None` for deterministic constructions.
    pub seed: Option<u64>,
}

fn cmat_identity(d: usize) -> CMatrix {
    CMatrix::identity(d, d)
}

/// `acc += s·(m_1 ⊗ … ⊗ m_r)`; the last factor is expanded in place.
pub(crate) fn add_kron(acc: &mut CMatrix, s: Complex64, mats: &[&CMatrix]) {
    let Some((last, init)) = mats.split_last() else {
        acc[(0, 0)] += s;
        return;
    };
    let head = init
        .iter()
        .fold(CMatrix::from_element(1, 1, s), |h, m| h.kronecker(*m));
    let (lr, lc) = last.shape();
    let rows = acc.nrows();
    let out = acc.as_mut_slice();
    for hj in 0..head.ncols() {
        for hi in 0..head.nrows() {
            let h = head[(hi, hj)];
            if h == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..lc {
                let col = (hj * lc + j) * rows + hi * lr;
                let src = last.column(j);
                for (o, l) in out[col..col + lr].iter_mut().zip(src.iter()) {
                    *o += h * l;
                }
            }
        }
    }
}

/// Frobenius norm of `a - b`.
pub fn residual(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).norm()
}

fn random_unitary(d: usize, rng: &mut impl Rng) -> CMatrix {
    let g = CMatrix::from_fn(d, d, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    g.qr().q()
}

/// Uniform composition `d = d_0 + … + d_{n-1}` with `d_k ≥ 0` (stars and bars).
fn random_composition(d: usize, n: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut bars: Vec<usize> = sample(rng, d + n - 1, n - 1).into_vec();
    bars.sort_unstable();
    let mut sizes = Vec::with_capacity(n);
    let mut prev = 0;
    for (i, &b) in bars.iter().enumerate() {
        // slot b holds bar number i, so b - i stars precede it
        sizes.push(b - i - prev);
        prev = b - i;
    }
    sizes.push(d - prev);
    sizes
}

/// Random representation of the `AllMaps` relations in dimension `d`.
///
/// Each row gets its own Haar-ish unitary `U_x` and block sizes; generator
/// `c[x,k]` is the projection onto the `k`-th block of columns of `U_x`.
/// Blocks may be empty. With `d < n` some generator of every row is zero.
pub fn sample_rep(m: usize, n: usize, d: usize, seed: u64) -> Result<NumericRep, NumRepError> {
    if m == 0 || n == 0 || d == 0 {
        return Err(NumRepError::InvalidDimensions { m, n, d });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mats = Vec::with_capacity(m);
    for _ in 0..m {
        let u = random_unitary(d, &mut rng);
        let sizes = random_composition(d, n, &mut rng);
        let mut start = 0;
        let mut row = Vec::with_capacity(n);
        for &size in &sizes {
            let p = if size == d {
                cmat_identity(d)
            } else if size == 0 {
                CMatrix::zeros(d, d)
            } else {
                let block = u.columns(start, size);
                block * block.adjoint()
            };
            row.push(p);
            start += size;
        }
        mats.push(row);
    }
    Ok(NumericRep {
        m,
        n,
        d,
        mats,
        tol: CONSTRUCTION_TOL,
        seed: Some(seed),
    })
}

/// The pair of projections `p = diag(1,0)` and `q(t) = R(t)·diag(1,0)·R(t)*`
/// on `ℂ²`, with rows `(p, 1-p)` and `(q, 1-q)`.
pub fn rep_two_projection_path(t: f64) -> Result<NumericRep, NumRepError> {
    if !(0.0..=FRAC_PI_2).contains(&t) {
        return Err(NumRepError::AngleOutOfRange(t));
    }
    let re = |v: f64| Complex64::new(v, 0.0);
    let p = CMatrix::from_row_slice(2, 2, &[re(1.0), re(0.0), re(0.0), re(0.0)]);
    let (c, s) = (t.cos(), t.sin());
    let q = CMatrix::from_row_slice(2, 2, &[re(c * c), re(c * s), re(c * s), re(s * s)]);
    let id = cmat_identity(2);
    let mats = vec![vec![p.clone(), &id - &p], vec![q.clone(), &id - &q]];
    Ok(NumericRep {
        m: 2,
        n: 2,
        d: 2,
        mats,
        tol: CONSTRUCTION_TOL,
        seed: None,
    })
}

impl NumericRep {
    pub fn universe(&self) -> Universe {
        Universe::new(self.m, self.n)
    }

    /// Largest violation of idempotency, self-adjointness and row sums.
    pub fn relation_residual(&self) -> f64 {
        let id = cmat_identity(self.d);
        let mut worst: f64 = 0.0;
        for row in &self.mats {
            let mut sum = CMatrix::zeros(self.d, self.d);
            for p in row {
                worst = worst.max(residual(&(p * p), p));
                worst = worst.max(residual(&p.adjoint(), p));
                sum += p;
            }
            worst = worst.max(residual(&sum, &id));
        }
        worst
    }

    pub fn word_matrix(&self, w: &NCWord) -> CMatrix {
        let mut acc = cmat_identity(self.d);
        for g in w.letters() {
            acc *= &self.mats[g.row][g.col];
        }
        acc
    }

    fn check_universe(&self, u: Universe) -> Result<(), NumRepError> {
        if u != self.universe() {
            return Err(NumRepError::UniverseMismatch {
                rep_m: self.m,
                rep_n: self.n,
                m: u.m,
                n: u.n,
            });
        }
        Ok(())
    }
}

/// Image of `p` in the representation.
pub fn evaluate_poly(p: &StarPoly, rep: &NumericRep) -> Result<CMatrix, NumRepError> {
    rep.check_universe(p.universe())?;
    let mut acc = CMatrix::zeros(rep.d, rep.d);
    for (w, c) in p.terms() {
        acc += rep.word_matrix(w) * c.to_complex64();
    }
    Ok(acc)
}

/// Multilinear evaluation: point legs are paired with `point_vectors` (one
/// per point leg, in order), algebra legs are represented and combined by
/// Kronecker product. The result is `d^a × d^a` for `a` algebra legs.
pub fn evaluate_tensor(
    u: &TensorElem,
    rep: &NumericRep,
    point_vectors: &[CVector],
) -> Result<CMatrix, NumRepError> {
    rep.check_universe(u.presentation().universe)?;
    let point_dims: Vec<usize> = u
        .signature()
        .iter()
        .filter_map(|k| match k {
            LegKind::Point(d) => Some(*d),
            LegKind::Alg => None,
        })
        .collect();
    if point_dims.len() != point_vectors.len() {
        return Err(NumRepError::VectorCount {
            expected: point_dims.len(),
            found: point_vectors.len(),
        });
    }
    for (leg, (&d, v)) in point_dims.iter().zip(point_vectors).enumerate() {
        if v.len() != d {
            return Err(NumRepError::VectorLength {
                leg,
                expected: d,
                found: v.len(),
            });
        }
    }
    let alg_legs = u.signature().len() - point_dims.len();
    let dim = rep.d.pow(alg_legs as u32);
    let mut acc = CMatrix::zeros(dim, dim);
    let mut cache: std::collections::HashMap<&NCWord, CMatrix> = Default::default();
    for (factors, c) in u.terms() {
        let mut scalar = c.to_complex64();
        let mut point_leg = 0;
        for f in factors {
            if let Factor::Point(x) = f {
                scalar *= point_vectors[point_leg][*x];
                point_leg += 1;
            }
        }
        if scalar == Complex64::new(0.0, 0.0) {
            continue;
        }
        for f in factors {
            if let Factor::Alg(w) = f {
                cache.entry(w).or_insert_with(|| rep.word_matrix(w));
            }
        }
        let mats: Vec<&CMatrix> = factors
            .iter()
            .filter_map(|f| match f {
                Factor::Alg(w) => Some(&cache[w]),
                Factor::Point(_) => None,
            })
            .collect();
        add_kron(&mut acc, scalar, &mats);
    }
    Ok(acc)
}

/// A random complex Gaussian vector, for pairing against point legs.
pub fn random_vector(len: usize, rng: &mut impl Rng) -> CVector {
    CVector::from_fn(len, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}
