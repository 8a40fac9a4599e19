//! Two-spin state vectors, operator action, and free evolution under the
//! diagonal lab-frame Hamiltonian `H/ħ = ω1·σz⊗e + ω2·e⊗σz + ω12·σz⊗σz`
//! (ħ = 1, angular frequencies, Pauli-matrix normalization).

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{complex_pair, exp_i_theta_pauli, vec_norm, Operator4, PauliAxis, PauliString};
use crate::pulse::{Angle, Pulse, PulseSequence, RotationAxis, Spin};
use crate::scalar::Real;

/// Amplitudes `(a, b, c, d)` on `|↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StateVector<T> {
    pub amplitudes: [Complex<T>; 4],
}

impl<T: Real> StateVector<T> {
    pub fn new(amplitudes: [Complex<T>; 4]) -> Self {
        StateVector { amplitudes }
    }

    /// The computational basis state with index `k = 2·s1 + s2`.
    pub fn basis(k: usize) -> Self {
        StateVector::new(std::array::from_fn(
            |i| if i == k { Complex::new(T::one(), T::zero()) } else { Complex::zero() },
        ))
    }

    pub fn norm(&self) -> T {
        vec_norm(&self.amplitudes)
    }

    pub fn is_normalized(&self, tol: T) -> bool {
        (self.norm() - T::one()).abs() <= tol
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() || !n.is_finite() {
            return Err(Error::StateFormat("cannot normalize a zero or non-finite state".into()));
        }
        Ok(StateVector::new(self.amplitudes.map(|z| z / n)))
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.amplitudes.iter().zip(&other.amplitudes).fold(T::zero(), |m, (a, b)| m.max((*a - *b).norm()))
    }

    /// `[[re, im] × 4]`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.amplitudes.map(complex_pair)).expect("state serializes")
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let pairs: Vec<[f64; 2]> = serde_json::from_str(text).map_err(|e| Error::StateFormat(e.to_string()))?;
        if pairs.len() != 4 {
            return Err(Error::StateFormat(format!("expected 4 amplitudes, found {}", pairs.len())));
        }
        if pairs.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::StateFormat("non-finite amplitude".into()));
        }
        Ok(StateVector::new(std::array::from_fn(|k| Complex::new(T::lit(pairs[k][0]), T::lit(pairs[k][1])))))
    }
}

pub fn apply_operator<T: Real>(m: &Operator4<T>, psi: &StateVector<T>) -> StateVector<T> {
    StateVector::new(m.apply(&psi.amplitudes))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HamiltonianParams<T> {
    pub omega1: T,
    pub omega2: T,
    /// Scalar coupling; zero makes coupling pulses unrealizable by free evolution.
    pub omega12: T,
}

impl<T: Real> HamiltonianParams<T> {
    pub fn new(omega1: T, omega2: T, omega12: T) -> Result<Self> {
        if [omega1, omega2, omega12].iter().any(|w| !w.is_finite()) {
            return Err(Error::InvalidParameter("frequencies must be finite".into()));
        }
        Ok(HamiltonianParams { omega1, omega2, omega12 })
    }

    /// Diagonal of `H/ħ` in basis order.
    pub fn energies(&self) -> [T; 4] {
        std::array::from_fn(|k| {
            let s1 = if k >> 1 == 0 { T::one() } else { -T::one() };
            let s2 = if k & 1 == 0 { T::one() } else { -T::one() };
            s1 * self.omega1 + s2 * self.omega2 + s1 * s2 * self.omega12
        })
    }

    /// `H/ħ` as a matrix built from its Pauli-string terms.
    pub fn matrix(&self) -> Operator4<T> {
        let term = |w: T, p: PauliString| p.matrix::<T>().scale(Complex::new(w, T::zero()));
        term(self.omega1, PauliString::on_spin1(PauliAxis::Z))
            + term(self.omega2, PauliString::on_spin2(PauliAxis::Z))
            + term(self.omega12, PauliString::ZZ)
    }
}

/// `exp(−i·(H/ħ)·t)`, the diagonal of phases `exp(−i·t·E_k)`.
pub fn hamiltonian_unitary<T: Real>(p: &HamiltonianParams<T>, t: T) -> Operator4<T> {
    Operator4::diagonal(p.energies().map(|e| Complex::from_polar(T::one(), -e * t)))
}

/// Free-evolution time realizing a coupling rotation, with the single-spin z
/// rotations that accumulate alongside it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CouplingDelay<T> {
    pub duration: T,
    /// Angle of the accumulated `R_z1` rotation, `−ω1·t`.
    pub residual_z1: T,
    /// Angle of the accumulated `R_z2` rotation, `−ω2·t`.
    pub residual_z2: T,
}

impl<T: Real> CouplingDelay<T> {
    /// z pulses undoing the residual rotations (they commute with the evolution).
    pub fn compensation(&self) -> PulseSequence {
        PulseSequence::new(vec![
            Pulse::single(RotationAxis::Z, Spin::One, Angle::Radians(-self.residual_z1.as_f64())),
            Pulse::single(RotationAxis::Z, Spin::Two, Angle::Radians(-self.residual_z2.as_f64())),
        ])
    }

    /// `R_z1(−r1)·R_z2(−r2)·exp(−iHt)`, evaluated in `T`.
    pub fn compensated_unitary(&self, p: &HamiltonianParams<T>) -> Operator4<T> {
        exp_i_theta_pauli(-self.residual_z1, PauliString::on_spin1(PauliAxis::Z))
            * exp_i_theta_pauli(-self.residual_z2, PauliString::on_spin2(PauliAxis::Z))
            * hamiltonian_unitary(p, self.duration)
    }
}

/// `t = −θ/ω12`, so that pure coupling evolution for `t` equals `R_zz(θ)`.
pub fn coupling_delay<T: Real>(p: &HamiltonianParams<T>, theta: T) -> Result<CouplingDelay<T>> {
    if p.omega12.is_zero() {
        return Err(Error::ZeroCoupling);
    }
    let duration = if theta.is_zero() { T::zero() } else { -theta / p.omega12 };
    Ok(CouplingDelay { duration, residual_z1: -p.omega1 * duration, residual_z2: -p.omega2 * duration })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, PI};

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn c_c1_c2_state_action() {
        let (a, b, cc, d) = (c(0.1, 0.2), c(-0.3, 0.4), c(0.5, -0.6), c(0.7, 0.8));
        let psi = StateVector::new([a, b, cc, d]);
        let out1 = apply_operator(&lookup("C_c1").unwrap().matrix(), &psi);
        assert_eq!(out1.amplitudes, [a, b, d, -cc]);
        let out2 = apply_operator(&lookup("C_c2").unwrap().matrix(), &psi);
        assert_eq!(out2.amplitudes, [a, d, cc, -b]);
        assert_eq!(apply_operator(&Operator4::identity(), &psi), psi);
    }

    #[test]
    fn evolution_at_zero_time_is_identity() {
        let p = HamiltonianParams::new(1.3, -0.4, 0.2).unwrap();
        assert_eq!(hamiltonian_unitary(&p, 0.0), Operator4::identity());
    }

    #[test]
    fn pure_coupling_evolution_is_coupling_pulse() {
        let p = HamiltonianParams::new(0.0, 0.0, 1.0).unwrap();
        // ω12·t = −π/4
        let u = hamiltonian_unitary(&p, -FRAC_PI_4);
        let e = c(FRAC_1_SQRT_2, FRAC_1_SQRT_2);
        assert!(u.approx_eq(&Operator4::diagonal([e, e.conj(), e.conj(), e]), 1e-15));
    }

    #[test]
    fn spin1_precession_half_period() {
        let p = HamiltonianParams::new(1.0, 0.0, 0.0).unwrap();
        let u = hamiltonian_unitary(&p, PI);
        let m = Complex::from_polar(1.0, -PI);
        let pp = Complex::from_polar(1.0, PI);
        assert!(u.approx_eq(&Operator4::diagonal([m, m, pp, pp]), 1e-15));
    }

    #[test]
    fn delay_examples() {
        let p = HamiltonianParams::new(0.0, 0.0, 1.0).unwrap();
        let d = coupling_delay(&p, -FRAC_PI_4).unwrap();
        assert!((d.duration - FRAC_PI_4).abs() < 1e-15);
        assert_eq!((d.residual_z1, d.residual_z2), (0.0, 0.0));
        assert_eq!(coupling_delay(&p, 0.0).unwrap().duration, 0.0);
        let zero = HamiltonianParams::new(1.0, 1.0, 0.0).unwrap();
        assert_eq!(coupling_delay(&zero, FRAC_PI_4), Err(Error::ZeroCoupling));
    }

    #[test]
    fn compensation_sequence_reproduces_coupling_pulse() {
        let p = HamiltonianParams::new(0.7, -1.9, 0.35).unwrap();
        let d = coupling_delay(&p, FRAC_PI_4).unwrap();
        let u = d.compensation().evaluate::<f64>() * hamiltonian_unitary(&p, d.duration);
        let target = exp_i_theta_pauli(FRAC_PI_4, PauliString::ZZ);
        assert!(u.approx_eq(&target, 1e-12));
    }

    #[test]
    fn state_json() {
        let psi = StateVector::new([c(1.0, 0.0), c(0.0, -0.5), c(0.25, 0.0), c(0.0, 0.0)]);
        let back = StateVector::<f64>::from_json_str(&psi.to_json().to_string()).unwrap();
        assert_eq!(back, psi);
        assert!(StateVector::<f64>::from_json_str("[[1,0],[0,0],[0,0]]").is_err());
        assert!(StateVector::<f64>::from_json_str("[[1,0],[0,0],[0,0],[0]]").is_err());
    }

    #[test]
    fn normalization() {
        let psi = StateVector::new([c(3.0, 0.0), c(0.0, 4.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(!psi.is_normalized(1e-12));
        assert!(psi.normalized().unwrap().is_normalized(1e-12));
        assert!(StateVector::<f64>::new([c(0.0, 0.0); 4]).normalized().is_err());
        assert!(StateVector::<f64>::basis(2).is_normalized(0.0));
    }

    #[test]
    fn rejects_non_finite_parameters() {
        assert!(HamiltonianParams::new(f64::NAN, 0.0, 1.0).is_err());
    }
}
