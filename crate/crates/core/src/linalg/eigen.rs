//! Eigen-decomposition of normal 4×4 operators.
//!
//! A normal `M` splits as `H1 + i·H2` with commuting Hermitian parts, so every
//! eigenbasis of the Hermitian pencil `H1 + c·H2` (for generic real `c`) also
//! diagonalizes `M`. The pencil is diagonalized with cyclic complex Jacobi
//! rotations; eigenvalues are then read back as Rayleigh quotients `v†·M·v`.

use std::cmp::Ordering;

use num_complex::Complex;
use num_traits::{One, Zero};

use super::matrix::{cmp_real, Operator4};
use crate::error::{Error, Result};
use crate::scalar::{default_eigen_tol, Real};

/// Pencil mixing coefficients; tried in order until one separates the spectrum.
const PENCIL_MIX: [f64; 4] =
    [0.618_033_988_749_894_8, 1.324_717_957_244_746, 0.414_213_562_373_095, 2.236_067_977_499_79];

const MAX_SWEEPS: usize = 64;

/// Four eigenpairs of a normal operator.
///
/// Pairs are in canonical order: ascending argument in `(−π, π]`, then
/// ascending magnitude. Eigenvectors are unit-norm columns of `eigenvectors`,
/// phase-fixed so their largest component is real and positive.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenSystem<T> {
    pub eigenvalues: [Complex<T>; 4],
    pub eigenvectors: Operator4<T>,
}

impl<T: Real> EigenSystem<T> {
    pub fn vector(&self, k: usize) -> [Complex<T>; 4] {
        self.eigenvectors.column(k)
    }

    /// `max_k ‖M·v_k − λ_k·v_k‖₂`.
    pub fn residual(&self, m: &Operator4<T>) -> T {
        (0..4)
            .map(|k| {
                let v = self.vector(k);
                let mv = m.apply(&v);
                let lam = self.eigenvalues[k];
                vec_norm(&std::array::from_fn::<_, 4, _>(|i| mv[i] - lam * v[i]))
            })
            .fold(T::zero(), T::max)
    }

    /// `V·diag(λ)·V†`.
    pub fn reconstruct(&self) -> Operator4<T> {
        let v = self.eigenvectors;
        v * Operator4::diagonal(self.eigenvalues) * v.adjoint()
    }
}

pub(crate) fn vec_norm<T: Real>(v: &[Complex<T>; 4]) -> T {
    v.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt()
}

/// Threshold on `‖M·M† − M†·M‖max`, scaled by the size of `m`.
pub fn normality_tolerance<T: Real>(m: &Operator4<T>) -> T {
    let s = m.max_abs().max(T::one());
    default_eigen_tol::<T>() * s * s
}

pub fn eigen_decompose<T: Real>(m: &Operator4<T>) -> Result<EigenSystem<T>> {
    let deviation = m.normality_deviation();
    if deviation.is_nan() || deviation > normality_tolerance(m) {
        return Err(Error::NotNormal { deviation: deviation.as_f64() });
    }

    let adj = m.adjoint();
    let half = Complex::new(T::lit(0.5), T::zero());
    let h1 = (*m + adj).scale(half);
    // (M − M†)/(2i)
    let h2 = (*m - adj).scale(Complex::new(T::zero(), T::lit(-0.5)));

    let target = default_eigen_tol::<T>() * m.max_abs().max(T::one());
    let mut best: Option<(T, EigenSystem<T>)> = None;
    for c in PENCIL_MIX {
        let pencil = h1 + h2.scale(Complex::new(T::lit(c), T::zero()));
        let vecs = hermitian_jacobi(&pencil);
        let sys = finish(m, vecs);
        let r = sys.residual(m);
        if r <= target {
            return Ok(sys);
        }
        if best.as_ref().is_none_or(|(br, _)| r < *br) {
            best = Some((r, sys));
        }
    }
    Ok(best.expect("at least one pencil evaluated").1)
}

fn finish<T: Real>(m: &Operator4<T>, vecs: Operator4<T>) -> EigenSystem<T> {
    let mut pairs: Vec<(Complex<T>, [Complex<T>; 4])> = (0..4)
        .map(|k| {
            let v = fix_phase(vecs.column(k));
            let mv = m.apply(&v);
            let lam = v.iter().zip(mv.iter()).fold(Complex::zero(), |acc, (a, b)| acc + a.conj() * b);
            (lam, v)
        })
        .collect();
    pairs.sort_by(|a, b| canonical_order(a.0, b.0));
    EigenSystem {
        eigenvalues: std::array::from_fn(|k| pairs[k].0),
        eigenvectors: Operator4::from_columns(std::array::from_fn(|k| pairs[k].1)),
    }
}

/// Argument mapped into `(−π, π]`, treating values within the eigen
/// tolerance of `−π` as `π` so that `−1` sorts consistently.
pub fn canonical_arg<T: Real>(z: Complex<T>) -> T {
    if z.norm() <= default_eigen_tol::<T>() {
        return T::zero();
    }
    let a = z.im.atan2(z.re);
    if a <= -T::PI() + default_eigen_tol::<T>() {
        T::PI()
    } else {
        a
    }
}

pub fn canonical_order<T: Real>(a: Complex<T>, b: Complex<T>) -> Ordering {
    cmp_real(canonical_arg(a), canonical_arg(b)).then_with(|| cmp_real(a.norm(), b.norm()))
}

fn fix_phase<T: Real>(v: [Complex<T>; 4]) -> [Complex<T>; 4] {
    // first component within a relative slack of the max, so ties resolve by index
    let max = v.iter().fold(T::zero(), |m, z| m.max(z.norm()));
    let slack = max * T::lit(1e-6);
    let lead = v.iter().find(|z| z.norm() >= max - slack).copied().unwrap_or(Complex::one());
    let n = lead.norm();
    if n.is_zero() {
        return v;
    }
    let rot = lead.conj() / n;
    v.map(|z| z * rot)
}

/// Diagonalizes a Hermitian operator; returns the unitary whose columns are eigenvectors.
pub(crate) fn hermitian_jacobi<T: Real>(h: &Operator4<T>) -> Operator4<T> {
    let mut a = *h;
    let mut v = Operator4::<T>::identity();
    let scale = a.max_abs().max(T::min_positive_value());
    let eps = T::epsilon();
    for _ in 0..MAX_SWEEPS {
        let off = off_diagonal_norm(&a);
        if off <= eps * eps * scale * scale {
            break;
        }
        for p in 0..3 {
            for q in p + 1..4 {
                let b = a.entry(p, q);
                let bn = b.norm();
                if bn <= eps * scale * T::lit(1e-3) {
                    continue;
                }
                // phase rotation makes the (p,q) element real, then a real Jacobi rotation
                let w = b.conj() / bn;
                let app = a.entry(p, p).re;
                let aqq = a.entry(q, q).re;
                let tau = (aqq - app) / (T::lit(2.0) * bn);
                let t =
                    if tau.is_zero() { T::one() } else { tau.signum() / (tau.abs() + (T::one() + tau * tau).sqrt()) };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = t * c;
                let g = rotation(p, q, c, s, w);
                a = g.adjoint() * a * g;
                v = v * g;
            }
        }
    }
    v
}

fn rotation<T: Real>(p: usize, q: usize, c: T, s: T, w: Complex<T>) -> Operator4<T> {
    let cc = Complex::new(c, T::zero());
    let sc = Complex::new(s, T::zero());
    Operator4::from_fn(|i, j| match (i, j) {
        _ if i == p && j == p => cc,
        _ if i == p && j == q => sc,
        _ if i == q && j == p => -sc * w,
        _ if i == q && j == q => cc * w,
        _ if i == j => Complex::one(),
        _ => Complex::zero(),
    })
}

fn off_diagonal_norm<T: Real>(a: &Operator4<T>) -> T {
    let mut s = T::zero();
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                s = s + a.entry(i, j).norm_sqr();
            }
        }
    }
    s
}

/// Greedy minimal-distance pairing of two eigenvalue multisets.
///
/// Returns `perm` with `lhs[k] ↔ rhs[perm[k]]` and the largest paired distance.
pub fn match_spectra<T: Real>(lhs: &[Complex<T>; 4], rhs: &[Complex<T>; 4]) -> ([usize; 4], T) {
    let mut cand: Vec<(T, usize, usize)> = Vec::with_capacity(16);
    for (i, a) in lhs.iter().enumerate() {
        for (j, b) in rhs.iter().enumerate() {
            cand.push(((*a - *b).norm(), i, j));
        }
    }
    cand.sort_by(|x, y| cmp_real(x.0, y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
    let mut perm = [usize::MAX; 4];
    let mut used = [false; 4];
    let mut worst = T::zero();
    for (d, i, j) in cand {
        if perm[i] == usize::MAX && !used[j] {
            perm[i] = j;
            used[j] = true;
            worst = worst.max(d);
        }
    }
    (perm, worst)
}
