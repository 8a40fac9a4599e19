use std::fmt;

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::{tensor_product, Mat2, Operator4};
use crate::scalar::Real;

/// Single-spin factor of a Pauli string.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PauliAxis {
    #[serde(rename = "e")]
    Identity,
    X,
    Y,
    Z,
}

impl PauliAxis {
    pub const ALL: [PauliAxis; 4] = [PauliAxis::Identity, PauliAxis::X, PauliAxis::Y, PauliAxis::Z];

    /// σz = diag(1,−1), σx = (0,1;1,0), σy = (0,−i;i,0).
    pub fn matrix<T: Real>(self) -> Mat2<T> {
        let o = Complex::<T>::one();
        let z = Complex::<T>::zero();
        let i = Complex::<T>::i();
        match self {
            PauliAxis::Identity => Mat2::identity(),
            PauliAxis::X => Mat2::from_rows([[z, o], [o, z]]),
            PauliAxis::Y => Mat2::from_rows([[z, -i], [i, z]]),
            PauliAxis::Z => Mat2::from_rows([[o, z], [z, -o]]),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            PauliAxis::Identity => "e",
            PauliAxis::X => "x",
            PauliAxis::Y => "y",
            PauliAxis::Z => "z",
        }
    }
}

/// Two-factor tensor word `spin1 ⊗ spin2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PauliString {
    pub spin1: PauliAxis,
    pub spin2: PauliAxis,
}

impl PauliString {
    pub const IDENTITY: PauliString = PauliString::new(PauliAxis::Identity, PauliAxis::Identity);
    pub const ZZ: PauliString = PauliString::new(PauliAxis::Z, PauliAxis::Z);

    pub const fn new(spin1: PauliAxis, spin2: PauliAxis) -> Self {
        Self { spin1, spin2 }
    }

    /// `axis` on spin 1, identity on spin 2.
    pub const fn on_spin1(axis: PauliAxis) -> Self {
        Self::new(axis, PauliAxis::Identity)
    }

    /// Identity on spin 1, `axis` on spin 2.
    pub const fn on_spin2(axis: PauliAxis) -> Self {
        Self::new(PauliAxis::Identity, axis)
    }

    /// All 16 strings in lexicographic order.
    pub fn all() -> impl Iterator<Item = PauliString> {
        PauliAxis::ALL.into_iter().flat_map(|a| PauliAxis::ALL.into_iter().map(move |b| PauliString::new(a, b)))
    }

    pub fn matrix<T: Real>(self) -> Operator4<T> {
        pauli_string_matrix(self)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}⊗{}", self.spin1.symbol(), self.spin2.symbol())
    }
}

pub fn pauli_string_matrix<T: Real>(p: PauliString) -> Operator4<T> {
    tensor_product(&p.spin1.matrix(), &p.spin2.matrix())
}

/// `exp(i·θ·P) = cos θ·I + i·sin θ·P`, exact because `P² = I`.
pub fn exp_i_theta_pauli<T: Real>(theta: T, p: PauliString) -> Operator4<T> {
    let (s, c) = theta.sin_cos();
    let gen = pauli_string_matrix::<T>(p);
    Operator4::identity().scale(Complex::new(c, T::zero())) + gen.scale(Complex::new(T::zero(), s))
}
