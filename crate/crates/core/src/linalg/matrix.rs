use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use approx::AbsDiffEq;
use num_complex::Complex;
use num_traits::{One, Zero};

use crate::scalar::{default_eq_tol, Real};

/// A 2×2 complex matrix acting on a single spin, basis order |↑⟩, |↓⟩.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2<T> {
    rows: [[Complex<T>; 2]; 2],
}

impl<T: Real> Mat2<T> {
    pub fn from_rows(rows: [[Complex<T>; 2]; 2]) -> Self {
        Self { rows }
    }

    pub fn identity() -> Self {
        let (o, z) = (Complex::one(), Complex::zero());
        Self::from_rows([[o, z], [z, o]])
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex<T> {
        self.rows[i][j]
    }

    pub fn rows(&self) -> &[[Complex<T>; 2]; 2] {
        &self.rows
    }

    pub fn adjoint(&self) -> Self {
        let r = &self.rows;
        Self::from_rows([[r[0][0].conj(), r[1][0].conj()], [r[0][1].conj(), r[1][1].conj()]])
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut m = T::zero();
        for i in 0..2 {
            for j in 0..2 {
                m = m.max((self.rows[i][j] - other.rows[i][j]).norm());
            }
        }
        m
    }
}

impl<T: Real> Mul for Mat2<T> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let mut out = [[Complex::zero(); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.rows[i][0] * rhs.rows[0][j] + self.rows[i][1] * rhs.rows[1][j];
            }
        }
        Self::from_rows(out)
    }
}

/// A 4×4 complex operator on two spins.
///
/// Basis order is fixed crate-wide as |↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩; spin 1 is the
/// slow (left) index, so basis index `k = 2·s1 + s2` with `0 = ↑`, `1 = ↓`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Operator4<T> {
    rows: [[Complex<T>; 4]; 4],
}

impl<T: Real> Operator4<T> {
    pub fn from_rows(rows: [[Complex<T>; 4]; 4]) -> Self {
        Self { rows }
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut rows = [[Complex::zero(); 4]; 4];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = f(i, j);
            }
        }
        Self { rows }
    }

    /// Builds an operator from real entries.
    pub fn from_real_rows(rows: [[f64; 4]; 4]) -> Self {
        Self::from_fn(|i, j| Complex::new(T::lit(rows[i][j]), T::zero()))
    }

    /// Builds an operator whose columns are the given vectors.
    pub fn from_columns(cols: [[Complex<T>; 4]; 4]) -> Self {
        Self::from_fn(|i, j| cols[j][i])
    }

    pub fn zero() -> Self {
        Self::from_fn(|_, _| Complex::zero())
    }

    pub fn identity() -> Self {
        Self::diagonal([Complex::one(); 4])
    }

    pub fn diagonal(d: [Complex<T>; 4]) -> Self {
        Self::from_fn(|i, j| if i == j { d[i] } else { Complex::zero() })
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex<T> {
        self.rows[i][j]
    }

    pub fn rows(&self) -> &[[Complex<T>; 4]; 4] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> [Complex<T>; 4] {
        [self.rows[0][j], self.rows[1][j], self.rows[2][j], self.rows[3][j]]
    }

    pub fn diag(&self) -> [Complex<T>; 4] {
        [self.rows[0][0], self.rows[1][1], self.rows[2][2], self.rows[3][3]]
    }

    pub fn is_finite(&self) -> bool {
        self.rows.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(|i, j| self.rows[j][i].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.rows[j][i])
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        Self::from_fn(|i, j| self.rows[i][j] * c)
    }

    pub fn trace(&self) -> Complex<T> {
        self.diag().iter().fold(Complex::zero(), |acc, z| acc + z)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex<T>; 4]) -> [Complex<T>; 4] {
        let mut out = [Complex::zero(); 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..4).fold(Complex::zero(), |acc, j| acc + self.rows[i][j] * v[j]);
        }
        out
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> T {
        self.rows.iter().flatten().fold(T::zero(), |m, z| m.max(z.norm()))
    }

    /// `‖self − other‖max`, the elementwise deviation used for every matrix comparison.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        (*self - *other).max_abs()
    }

    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        self.max_abs_diff(other) <= tol
    }

    /// `‖U†U − I‖max`.
    pub fn unitarity_deviation(&self) -> T {
        (self.adjoint() * *self).max_abs_diff(&Self::identity())
    }

    pub fn is_unitary(&self, tol: T) -> bool {
        self.unitarity_deviation() <= tol
    }

    /// `‖M·M† − M†·M‖max`.
    pub fn normality_deviation(&self) -> T {
        let adj = self.adjoint();
        (*self * adj).max_abs_diff(&(adj * *self))
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn determinant(&self) -> Complex<T> {
        let mut a = self.rows;
        let mut det = Complex::<T>::one();
        for col in 0..4 {
            let pivot = (col..4).max_by(|&x, &y| cmp_real(a[x][col].norm(), a[y][col].norm())).unwrap_or(col);
            if a[pivot][col].is_zero() {
                return Complex::zero();
            }
            if pivot != col {
                a.swap(pivot, col);
                det = -det;
            }
            let p = a[col][col];
            det = det * p;
            for r in col + 1..4 {
                let f = a[r][col] / p;
                let pivot_row = a[col];
                for (x, y) in a[r].iter_mut().zip(pivot_row).skip(col) {
                    *x = *x - f * y;
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan elimination; `None` when a pivot vanishes.
    pub fn inverse(&self) -> Option<Self> {
        let mut a = self.rows;
        let mut inv = Self::identity().rows;
        let scale = self.max_abs();
        if scale.is_zero() {
            return None;
        }
        let tiny = scale * T::epsilon() * T::lit(4.0);
        for col in 0..4 {
            let pivot = (col..4).max_by(|&x, &y| cmp_real(a[x][col].norm(), a[y][col].norm())).unwrap_or(col);
            if a[pivot][col].norm() <= tiny {
                return None;
            }
            a.swap(pivot, col);
            inv.swap(pivot, col);
            let p = a[col][col];
            for c in 0..4 {
                a[col][c] = a[col][c] / p;
                inv[col][c] = inv[col][c] / p;
            }
            for r in 0..4 {
                if r == col {
                    continue;
                }
                let f = a[r][col];
                if f.is_zero() {
                    continue;
                }
                for c in 0..4 {
                    let (da, di) = (f * a[col][c], f * inv[col][c]);
                    a[r][c] = a[r][c] - da;
                    inv[r][c] = inv[r][c] - di;
                }
            }
        }
        Some(Self::from_rows(inv))
    }

    /// Lossy conversion between scalar types.
    pub fn cast<U: Real>(&self) -> Operator4<U> {
        Operator4::from_fn(|i, j| {
            let z = self.rows[i][j];
            Complex::new(U::lit(z.re.as_f64()), U::lit(z.im.as_f64()))
        })
    }
}

pub(crate) fn cmp_real<T: Real>(a: T, b: T) -> std::cmp::Ordering {
    a.partial_cmp(&b).unwrap_or(std::cmp::Ordering::Equal)
}

impl<T: Real> Default for Operator4<T> {
    fn default() -> Self {
        Self::identity()
    }
}

impl<T: Real> Mul for Operator4<T> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| (0..4).fold(Complex::zero(), |acc, k| acc + self.rows[i][k] * rhs.rows[k][j]))
    }
}

impl<T: Real> Add for Operator4<T> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.rows[i][j] + rhs.rows[i][j])
    }
}

impl<T: Real> Sub for Operator4<T> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.rows[i][j] - rhs.rows[i][j])
    }
}

impl<T: Real> Neg for Operator4<T> {
    type Output = Self;

    fn neg(self) -> Self {
        Self::from_fn(|i, j| -self.rows[i][j])
    }
}

impl<T: Real> AbsDiffEq for Operator4<T> {
    type Epsilon = T;

    fn default_epsilon() -> T {
        default_eq_tol()
    }

    fn abs_diff_eq(&self, other: &Self, epsilon: T) -> bool {
        self.approx_eq(other, epsilon)
    }
}

impl<T: Real> fmt::Display for Operator4<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prec = f.precision().unwrap_or(4);
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|z| format_complex(*z, prec)).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Renders a complex number compactly, dropping parts that round to zero.
pub fn format_complex<T: Real>(z: Complex<T>, prec: usize) -> String {
    let snap = |x: f64| {
        let r = format!("{x:.prec$}");
        if r.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
            None
        } else {
            Some(r)
        }
    };
    match (snap(z.re.as_f64()), snap(z.im.as_f64())) {
        (None, None) => "0".to_string(),
        (Some(re), None) => re,
        (None, Some(im)) => format!("{im}i"),
        (Some(re), Some(im)) => {
            if im.starts_with('-') {
                format!("{re}{im}i")
            } else {
                format!("{re}+{im}i")
            }
        }
    }
}

/// `a ⊗ b`; entry `(2i+k, 2j+l) = a(i,j)·b(k,l)`, spin 1 as the slow index.
pub fn tensor_product<T: Real>(a: &Mat2<T>, b: &Mat2<T>) -> Operator4<T> {
    Operator4::from_fn(|r, c| a.entry(r / 2, c / 2) * b.entry(r % 2, c % 2))
}

/// Returns the unit-modulus `c` with `a = c·b` elementwise within `tol`, if one exists.
pub fn equal_up_to_global_phase<T: Real>(a: &Operator4<T>, b: &Operator4<T>, tol: T) -> Option<Complex<T>> {
    let (mut bi, mut bj, mut best) = (0, 0, T::zero());
    for i in 0..4 {
        for j in 0..4 {
            let m = b.entry(i, j).norm();
            if m > best {
                (bi, bj, best) = (i, j, m);
            }
        }
    }
    if best.is_zero() {
        return (a.max_abs() <= tol).then(Complex::one);
    }
    let ratio = a.entry(bi, bj) / b.entry(bi, bj);
    let modulus = ratio.norm();
    if modulus.is_zero() || (modulus - T::one()).abs() > tol {
        return None;
    }
    let phase = ratio / modulus;
    a.approx_eq(&b.scale(phase), tol).then_some(phase)
}
