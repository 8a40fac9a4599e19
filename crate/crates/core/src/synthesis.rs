//! The sixteen-member CNOT family generated by the four-pulse sandwich
//! `R_{a,s}(−π/4) · R_zz(ε·π/4) · R_{z,s}(δ·π/4) · R_{a,s}(π/4)`,
//! classification of controlled-flip operators, and selection of family
//! members an apparatus with restricted pulse axes can realize.

use std::collections::BTreeSet;
use std::fmt;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{complex_pair, equal_up_to_global_phase, Operator4};
use crate::pulse::{Angle, Pulse, PulseSequence, RotationAxis, Spin};
use crate::scalar::Real;

/// Axis of the outer pair of rotations in a template.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SandwichAxis {
    X,
    Y,
}

impl SandwichAxis {
    pub fn rotation_axis(self) -> RotationAxis {
        match self {
            SandwichAxis::X => RotationAxis::X,
            SandwichAxis::Y => RotationAxis::Y,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Minus => -1,
            Sign::Plus => 1,
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i8(self.value() as i8)
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match i8::deserialize(d)? {
            -1 => Ok(Sign::Minus),
            1 => Ok(Sign::Plus),
            v => Err(serde::de::Error::custom(format!("sign must be -1 or 1, got {v}"))),
        }
    }
}

/// One member of the sandwich family. Field order is the canonical sort order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SequenceTemplate {
    pub sandwich_axis: SandwichAxis,
    pub spin: Spin,
    pub coupling_sign: Sign,
    pub z_sign: Sign,
}

impl SequenceTemplate {
    /// All sixteen templates in canonical order.
    pub fn all() -> Vec<SequenceTemplate> {
        let mut out = Vec::with_capacity(16);
        for sandwich_axis in [SandwichAxis::X, SandwichAxis::Y] {
            for spin in Spin::BOTH {
                for coupling_sign in [Sign::Minus, Sign::Plus] {
                    for z_sign in [Sign::Minus, Sign::Plus] {
                        out.push(SequenceTemplate { sandwich_axis, spin, coupling_sign, z_sign });
                    }
                }
            }
        }
        out
    }

    pub fn to_sequence(&self) -> PulseSequence {
        let axis = self.sandwich_axis.rotation_axis();
        PulseSequence::from_operator_order(vec![
            Pulse::single(axis, self.spin, Angle::pi_frac(-1, 4)),
            Pulse::coupling(Angle::pi_frac(self.coupling_sign.value(), 4)),
            Pulse::single(RotationAxis::Z, self.spin, Angle::pi_frac(self.z_sign.value(), 4)),
            Pulse::single(axis, self.spin, Angle::pi_frac(1, 4)),
        ])
    }

    pub fn evaluate<T: Real>(&self) -> Operator4<T> {
        self.to_sequence().evaluate()
    }
}

impl fmt::Display for SequenceTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = |s: Sign| if s == Sign::Plus { '+' } else { '-' };
        write!(
            f,
            "({}, {}, {}, {})",
            self.sandwich_axis.rotation_axis().symbol(),
            self.spin,
            sign(self.coupling_sign),
            sign(self.z_sign)
        )
    }
}

/// Every template paired with its compiled unitary, in canonical order.
pub fn enumerate_family<T: Real>() -> Vec<(SequenceTemplate, Operator4<T>)> {
    SequenceTemplate::all().into_iter().map(|t| (t, t.evaluate())).collect()
}

/// Groups family indices whose matrices differ only by a global phase.
pub fn phase_classes<T: Real>(family: &[(SequenceTemplate, Operator4<T>)], tol: T) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, (_, m)) in family.iter().enumerate() {
        match classes.iter_mut().find(|c| equal_up_to_global_phase(m, &family[c[0]].1, tol).is_some()) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    classes
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Up,
    Down,
}

/// Controlled-flip structure of a phased permutation operator.
#[derive(Clone, Debug, PartialEq)]
pub struct GateClassification<T> {
    pub control_spin: Spin,
    /// Control value that triggers the flip.
    pub control_polarity: Polarity,
    pub target_spin: Spin,
    /// `basis_phases[k]` multiplies the amplitude routed into basis state `k`.
    pub basis_phases: [Complex<T>; 4],
    /// Basis state `j` is mapped to `permutation[j]`.
    pub permutation: [usize; 4],
}

impl<T: Real> GateClassification<T> {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "control_spin": self.control_spin,
            "control_polarity": self.control_polarity,
            "target_spin": self.target_spin,
            "basis_phases": self.basis_phases.map(complex_pair),
            "permutation": self.permutation,
        })
    }
}

fn spin_bit(state: usize, spin: Spin) -> usize {
    match spin {
        Spin::One => state >> 1,
        Spin::Two => state & 1,
    }
}

pub fn classify_cnot_like<T: Real>(m: &Operator4<T>, tol: T) -> Result<GateClassification<T>> {
    let mut permutation = [0usize; 4];
    for (j, slot) in permutation.iter_mut().enumerate() {
        let col = m.column(j);
        let hits: Vec<usize> = (0..4).filter(|&i| col[i].norm() > tol).collect();
        match hits.as_slice() {
            [i] if (col[*i].norm() - T::one()).abs() <= tol => *slot = *i,
            _ => return Err(Error::NotCnotLike(format!("column {j} is not a unit-phase multiple of a basis state"))),
        }
    }
    let mut seen = [false; 4];
    for &i in &permutation {
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::NotCnotLike("two basis states map onto the same image".into()));
        }
    }

    let moved: Vec<usize> = (0..4).filter(|&j| permutation[j] != j).collect();
    let [x, y] = moved.as_slice() else {
        return Err(Error::NotCnotLike(if moved.is_empty() {
            "no basis state is flipped".into()
        } else {
            format!("{} basis states move; a controlled flip swaps exactly two", moved.len())
        }));
    };
    let (x, y) = (*x, *y);
    if permutation[x] != y {
        return Err(Error::NotCnotLike("moved states do not form a swap".into()));
    }
    let target_spin = match x ^ y {
        0b10 => Spin::One,
        0b01 => Spin::Two,
        _ => return Err(Error::NotCnotLike("swapped states differ on both spins".into())),
    };
    let control_spin = target_spin.other();
    let control_polarity = if spin_bit(x, control_spin) == 0 { Polarity::Up } else { Polarity::Down };

    let mut inverse = [0usize; 4];
    for (j, &i) in permutation.iter().enumerate() {
        inverse[i] = j;
    }
    let basis_phases = std::array::from_fn(|k| m.entry(k, inverse[k]));
    Ok(GateClassification { control_spin, control_polarity, target_spin, basis_phases, permutation })
}

/// Pulse axes an apparatus can drive on each spin.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxisConstraint {
    pub spin1: BTreeSet<RotationAxis>,
    pub spin2: BTreeSet<RotationAxis>,
    pub coupling_available: bool,
}

impl AxisConstraint {
    pub fn unrestricted() -> Self {
        let all: BTreeSet<_> = RotationAxis::ALL.into_iter().collect();
        AxisConstraint { spin1: all.clone(), spin2: all, coupling_available: true }
    }

    pub fn axes(&self, spin: Spin) -> &BTreeSet<RotationAxis> {
        match spin {
            Spin::One => &self.spin1,
            Spin::Two => &self.spin2,
        }
    }

    /// Parses a comma-separated axis list such as `x,z`; `none` or an empty string is the empty set.
    pub fn parse_axes(list: &str) -> std::result::Result<BTreeSet<RotationAxis>, String> {
        let list = list.trim();
        if list.is_empty() || list.eq_ignore_ascii_case("none") {
            return Ok(BTreeSet::new());
        }
        list.split(',').map(str::parse).collect()
    }

    /// Why `t` cannot be realized, or `None` when it can.
    pub fn rejection(&self, t: &SequenceTemplate) -> Option<String> {
        let allowed = self.axes(t.spin);
        let mut missing: Vec<char> = [t.sandwich_axis.rotation_axis(), RotationAxis::Z]
            .into_iter()
            .filter(|a| !allowed.contains(a))
            .map(RotationAxis::symbol)
            .collect();
        missing.dedup();
        let mut reasons = Vec::new();
        if !missing.is_empty() {
            let list: Vec<String> = missing.iter().map(char::to_string).collect();
            reasons.push(format!("spin {} lacks axis {}", t.spin, list.join(",")));
        }
        if !self.coupling_available {
            reasons.push("coupling unavailable".to_string());
        }
        (!reasons.is_empty()).then(|| reasons.join("; "))
    }

    pub fn allows(&self, t: &SequenceTemplate) -> bool {
        self.rejection(t).is_none()
    }
}

/// The templates realizable under `constraints`, in canonical order.
pub fn select_realizable(constraints: &AxisConstraint) -> Vec<SequenceTemplate> {
    SequenceTemplate::all().into_iter().filter(|t| constraints.allows(t)).collect()
}
