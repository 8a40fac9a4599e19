//! Rotation and coupling pulses, the `R<axis><spin>(<angle>)` text notation,
//! and compilation of sequences into two-spin unitaries.
//!
//! Text is written in operator order (leftmost factor acts last). A
//! [`PulseSequence`] always stores pulses in application order, first element
//! acting first on the state.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{exp_i_theta_pauli, Operator4, PauliAxis, PauliString};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RotationAxis {
    X,
    Y,
    Z,
}

impl RotationAxis {
    pub const ALL: [RotationAxis; 3] = [RotationAxis::X, RotationAxis::Y, RotationAxis::Z];

    pub fn pauli(self) -> PauliAxis {
        match self {
            RotationAxis::X => PauliAxis::X,
            RotationAxis::Y => PauliAxis::Y,
            RotationAxis::Z => PauliAxis::Z,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            RotationAxis::X => 'x',
            RotationAxis::Y => 'y',
            RotationAxis::Z => 'z',
        }
    }
}

impl FromStr for RotationAxis {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim() {
            "x" | "X" => Ok(RotationAxis::X),
            "y" | "Y" => Ok(RotationAxis::Y),
            "z" | "Z" => Ok(RotationAxis::Z),
            other => Err(format!("unknown axis {other:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Spin {
    One,
    Two,
}

impl Spin {
    pub const BOTH: [Spin; 2] = [Spin::One, Spin::Two];

    pub fn index(self) -> u8 {
        match self {
            Spin::One => 1,
            Spin::Two => 2,
        }
    }

    pub fn from_index(i: u8) -> Option<Spin> {
        match i {
            1 => Some(Spin::One),
            2 => Some(Spin::Two),
            _ => None,
        }
    }

    pub fn other(self) -> Spin {
        match self {
            Spin::One => Spin::Two,
            Spin::Two => Spin::One,
        }
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

impl Serialize for Spin {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u8(self.index())
    }
}

impl<'de> Deserialize<'de> for Spin {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let i = u8::deserialize(d)?;
        Spin::from_index(i).ok_or_else(|| serde::de::Error::custom(format!("spin must be 1 or 2, got {i}")))
    }
}

/// Pulse angle: an exact rational multiple of π, or an arbitrary radian value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Angle {
    PiMultiple(Rational64),
    Radians(f64),
}

impl Angle {
    pub fn pi_frac(num: i64, den: i64) -> Self {
        Angle::PiMultiple(Rational64::new(num, den))
    }

    pub fn radians<T: Real>(&self) -> T {
        match *self {
            Angle::PiMultiple(r) => T::PI() * T::lit(*r.numer() as f64) / T::lit(*r.denom() as f64),
            Angle::Radians(x) => T::lit(x),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Angle::PiMultiple(r) => r.is_zero(),
            Angle::Radians(x) => *x == 0.0,
        }
    }

    pub fn neg(&self) -> Angle {
        match *self {
            Angle::PiMultiple(r) => Angle::PiMultiple(-r),
            Angle::Radians(x) => Angle::Radians(-x),
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Angle::Radians(x) => write!(f, "{x}"),
            Angle::PiMultiple(r) => {
                if r.is_zero() {
                    return f.write_str("0");
                }
                let sign = if r.is_negative() { "-" } else { "" };
                let num = r.numer().abs();
                let den = *r.denom();
                let coeff = if num == 1 { String::new() } else { num.to_string() };
                if den == 1 {
                    write!(f, "{sign}{coeff}pi")
                } else {
                    write!(f, "{sign}{coeff}pi/{den}")
                }
            }
        }
    }
}

impl FromStr for Angle {
    type Err = String;

    /// Accepts `0`, `pi`, `-pi/4`, `3pi/4`, `3*pi/4`, or a plain radian literal.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        if let Some(idx) = s.find("pi") {
            let (head, tail) = (&s[..idx], &s[idx + 2..]);
            let (neg, head) = match head.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, head.strip_prefix('+').unwrap_or(head)),
            };
            let head = head.strip_suffix('*').unwrap_or(head);
            let num: i64 = if head.is_empty() {
                1
            } else {
                head.parse().map_err(|_| format!("bad coefficient {head:?} in angle {s:?}"))?
            };
            let den: i64 = if tail.is_empty() {
                1
            } else {
                let d = tail.strip_prefix('/').ok_or_else(|| format!("expected '/' after pi in {s:?}"))?;
                d.parse().map_err(|_| format!("bad denominator {d:?} in angle {s:?}"))?
            };
            if den <= 0 {
                return Err(format!("denominator must be positive in {s:?}"));
            }
            let r = Rational64::new(if neg { -num } else { num }, den);
            Ok(Angle::PiMultiple(r))
        } else {
            let x: f64 = s.parse().map_err(|_| format!("bad angle {s:?}"))?;
            if !x.is_finite() {
                return Err(format!("angle {s:?} is not finite"));
            }
            if x == 0.0 {
                Ok(Angle::PiMultiple(Rational64::zero()))
            } else {
                Ok(Angle::Radians(x))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PulseKind {
    /// Rotation of one spin about `axis`.
    Single { axis: RotationAxis, spin: Spin },
    /// Scalar-coupling evolution generated by σz ⊗ σz.
    Coupling,
}

impl PulseKind {
    pub fn generator(self) -> PauliString {
        match self {
            PulseKind::Single { axis, spin: Spin::One } => PauliString::on_spin1(axis.pauli()),
            PulseKind::Single { axis, spin: Spin::Two } => PauliString::on_spin2(axis.pauli()),
            PulseKind::Coupling => PauliString::ZZ,
        }
    }
}

/// `R(θ) = exp(i·θ·G)` for the pulse generator `G`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pulse {
    pub kind: PulseKind,
    pub angle: Angle,
}

impl Pulse {
    pub fn single(axis: RotationAxis, spin: Spin, angle: Angle) -> Self {
        Pulse { kind: PulseKind::Single { axis, spin }, angle }
    }

    pub fn coupling(angle: Angle) -> Self {
        Pulse { kind: PulseKind::Coupling, angle }
    }

    pub fn generator(&self) -> PauliString {
        self.kind.generator()
    }

    pub fn inverse(&self) -> Pulse {
        Pulse { kind: self.kind, angle: self.angle.neg() }
    }
}

impl fmt::Display for Pulse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            PulseKind::Single { axis, spin } => write!(f, "R{}{}({})", axis.symbol(), spin, self.angle),
            PulseKind::Coupling => write!(f, "Rzz({})", self.angle),
        }
    }
}

impl FromStr for Pulse {
    type Err = String;

    fn from_str(tok: &str) -> std::result::Result<Self, String> {
        let body = tok.strip_prefix('R').ok_or("pulse must start with 'R'")?;
        let open = body.find('(').ok_or("missing '('")?;
        let inner = body[open + 1..].strip_suffix(')').ok_or("missing closing ')'")?;
        let head = &body[..open];
        let angle: Angle = inner.parse()?;
        match head {
            "zz" | "z12" => Ok(Pulse::coupling(angle)),
            _ => {
                let mut chars = head.chars();
                let (Some(a), Some(s), None) = (chars.next(), chars.next(), chars.next()) else {
                    return Err(format!("unknown pulse head {head:?}"));
                };
                let axis: RotationAxis = a.to_string().parse()?;
                let spin = s
                    .to_digit(10)
                    .and_then(|d| Spin::from_index(d as u8))
                    .ok_or_else(|| format!("spin must be 1 or 2, got {s:?}"))?;
                Ok(Pulse::single(axis, spin, angle))
            }
        }
    }
}

/// Ordered pulses in application order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PulseSequence {
    pulses: Vec<Pulse>,
}

impl PulseSequence {
    pub fn new(application_order: Vec<Pulse>) -> Self {
        PulseSequence { pulses: application_order }
    }

    /// Builds a sequence from operator order, leftmost acting last.
    pub fn from_operator_order(mut pulses: Vec<Pulse>) -> Self {
        pulses.reverse();
        PulseSequence { pulses }
    }

    pub fn pulses(&self) -> &[Pulse] {
        &self.pulses
    }

    pub fn operator_order(&self) -> impl Iterator<Item = &Pulse> {
        self.pulses.iter().rev()
    }

    pub fn len(&self) -> usize {
        self.pulses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pulses.is_empty()
    }

    /// Reversed order with every angle negated.
    pub fn inverse(&self) -> PulseSequence {
        PulseSequence { pulses: self.pulses.iter().rev().map(Pulse::inverse).collect() }
    }

    /// `self` applied first, then `next`.
    pub fn then(&self, next: &PulseSequence) -> PulseSequence {
        let mut pulses = self.pulses.clone();
        pulses.extend_from_slice(&next.pulses);
        PulseSequence { pulses }
    }

    pub fn evaluate<T: Real>(&self) -> Operator4<T> {
        evaluate_sequence(self)
    }

    /// Text notation in operator order.
    pub fn to_notation(&self) -> String {
        self.operator_order().map(ToString::to_string).collect::<Vec<_>>().join(" ")
    }
}

impl fmt::Display for PulseSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_notation())
    }
}

impl FromStr for PulseSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_sequence(s)
    }
}

pub fn pulse_unitary<T: Real>(p: &Pulse) -> Operator4<T> {
    exp_i_theta_pauli(p.angle.radians::<T>(), p.generator())
}

/// Parses whitespace-separated pulses written in operator order.
pub fn parse_sequence(text: &str) -> Result<PulseSequence> {
    let pulses = text
        .split_whitespace()
        .enumerate()
        .map(|(i, tok)| {
            tok.parse::<Pulse>().map_err(|message| Error::Parse { position: i + 1, token: tok.to_string(), message })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PulseSequence::from_operator_order(pulses))
}

/// Ordered product of pulse unitaries, last-applied leftmost.
pub fn evaluate_sequence<T: Real>(s: &PulseSequence) -> Operator4<T> {
    s.pulses().iter().fold(Operator4::identity(), |acc, p| pulse_unitary::<T>(p) * acc)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum AngleDoc {
    Text(String),
    Radians(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PulseDoc {
    axis: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    spin: Option<u8>,
    angle: AngleDoc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum OrderDoc {
    Application,
    /// Operator order as written in the text notation.
    Operator,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SequenceDoc {
    pulses: Vec<PulseDoc>,
    order: OrderDoc,
}

impl PulseSequence {
    /// `{"pulses":[{"axis":"x","spin":2,"angle":"-pi/4"},...], "order":"application"}`.
    pub fn to_json(&self) -> serde_json::Value {
        let pulses = self
            .pulses
            .iter()
            .map(|p| {
                let angle = match p.angle {
                    Angle::Radians(x) => AngleDoc::Radians(x),
                    a @ Angle::PiMultiple(_) => AngleDoc::Text(a.to_string()),
                };
                match p.kind {
                    PulseKind::Single { axis, spin } => {
                        PulseDoc { axis: axis.symbol().to_string(), spin: Some(spin.index()), angle }
                    }
                    PulseKind::Coupling => PulseDoc { axis: "zz".into(), spin: None, angle },
                }
            })
            .collect();
        serde_json::to_value(SequenceDoc { pulses, order: OrderDoc::Application }).expect("sequence serializes")
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let doc: SequenceDoc = serde_json::from_str(text).map_err(|e| Error::SequenceFormat(e.to_string()))?;
        let mut pulses = Vec::with_capacity(doc.pulses.len());
        for (i, p) in doc.pulses.into_iter().enumerate() {
            let angle = match p.angle {
                AngleDoc::Text(t) => t.parse().map_err(|e| Error::SequenceFormat(format!("pulse {i}: {e}")))?,
                AngleDoc::Radians(x) => Angle::Radians(x),
            };
            let pulse = match (p.axis.as_str(), p.spin) {
                ("zz", None) => Pulse::coupling(angle),
                ("zz", Some(_)) => {
                    return Err(Error::SequenceFormat(format!("pulse {i}: coupling pulse takes no spin")))
                }
                (axis, Some(s)) => {
                    let axis: RotationAxis =
                        axis.parse().map_err(|e| Error::SequenceFormat(format!("pulse {i}: {e}")))?;
                    let spin = Spin::from_index(s)
                        .ok_or_else(|| Error::SequenceFormat(format!("pulse {i}: spin must be 1 or 2")))?;
                    Pulse::single(axis, spin, angle)
                }
                (_, None) => return Err(Error::SequenceFormat(format!("pulse {i}: missing spin"))),
            };
            pulses.push(pulse);
        }
        Ok(match doc.order {
            OrderDoc::Application => PulseSequence::new(pulses),
            OrderDoc::Operator => PulseSequence::from_operator_order(pulses),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Complex;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn parses_operator_notation_into_application_order() {
        let s = parse_sequence("Rx2(-pi/4) Rz2(-pi/4) Rzz(pi/4) Rx2(pi/4)").unwrap();
        let expected = vec![
            Pulse::single(RotationAxis::X, Spin::Two, Angle::pi_frac(1, 4)),
            Pulse::coupling(Angle::pi_frac(1, 4)),
            Pulse::single(RotationAxis::Z, Spin::Two, Angle::pi_frac(-1, 4)),
            Pulse::single(RotationAxis::X, Spin::Two, Angle::pi_frac(-1, 4)),
        ];
        assert_eq!(s.pulses(), expected.as_slice());
    }

    #[test]
    fn empty_text_is_empty_sequence() {
        let s = parse_sequence("").unwrap();
        assert!(s.is_empty());
        assert_eq!(s.evaluate::<f64>(), Operator4::identity());
        assert!(parse_sequence("   \n ").unwrap().is_empty());
    }

    #[test]
    fn parse_errors_carry_token_position() {
        match parse_sequence("Rq3(pi)") {
            Err(Error::Parse { position, token, .. }) => {
                assert_eq!(position, 1);
                assert_eq!(token, "Rq3(pi)");
            }
            other => panic!("unexpected {other:?}"),
        }
        for (text, pos) in [
            ("Rx1(pi/4) Rx3(pi/4)", 2),
            ("Rx1(pi/4) Ry2(pi/4 Rz1(0)", 2),
            ("Rx1(pi/0)", 1),
            ("Rx1(pi/4) Rzz(pi/4) Qx1(pi)", 3),
            ("Rx1(tau)", 1),
            ("Rx(pi)", 1),
        ] {
            match parse_sequence(text) {
                Err(Error::Parse { position, .. }) => assert_eq!(position, pos, "{text}"),
                other => panic!("{text}: unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn angle_text_forms() {
        assert_eq!("pi".parse::<Angle>().unwrap(), Angle::pi_frac(1, 1));
        assert_eq!("-pi".parse::<Angle>().unwrap(), Angle::pi_frac(-1, 1));
        assert_eq!("3*pi/4".parse::<Angle>().unwrap(), Angle::pi_frac(3, 4));
        assert_eq!("3pi/4".parse::<Angle>().unwrap(), Angle::pi_frac(3, 4));
        assert_eq!("2pi/8".parse::<Angle>().unwrap().to_string(), "pi/4");
        assert_eq!("0".parse::<Angle>().unwrap().to_string(), "0");
        assert_eq!("0.25".parse::<Angle>().unwrap(), Angle::Radians(0.25));
        assert!("pi/-4".parse::<Angle>().is_err());
    }

    #[test]
    fn coupling_aliases() {
        let a = parse_sequence("Rz12(pi/4)").unwrap();
        let b = parse_sequence("Rzz(pi/4)").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_notation(), "Rzz(pi/4)");
    }

    #[test]
    fn z2_minus_quarter_frozen() {
        let u: Operator4<f64> = pulse_unitary(&Pulse::single(RotationAxis::Z, Spin::Two, Angle::pi_frac(-1, 4)));
        let m = Complex::new(FRAC_1_SQRT_2, -FRAC_1_SQRT_2);
        let p = m.conj();
        assert!(u.approx_eq(&Operator4::diagonal([m, p, m, p]), 1e-15));
    }

    #[test]
    fn coupling_quarter_frozen() {
        let u: Operator4<f64> = pulse_unitary(&Pulse::coupling(Angle::pi_frac(1, 4)));
        let p = Complex::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2);
        let m = p.conj();
        assert!(u.approx_eq(&Operator4::diagonal([p, m, m, p]), 1e-15));
    }

    #[test]
    fn zero_angle_pulses_are_identity() {
        for axis in RotationAxis::ALL {
            for spin in Spin::BOTH {
                let u: Operator4<f64> = pulse_unitary(&Pulse::single(axis, spin, Angle::pi_frac(0, 1)));
                assert_eq!(u, Operator4::identity());
            }
        }
        assert_eq!(pulse_unitary::<f64>(&Pulse::coupling(Angle::Radians(0.0))), Operator4::identity());
    }

    #[test]
    fn c_c1_c2_sequences_reproduce_declared_matrices() {
        let c1 = parse_sequence("Rx2(-pi/4) Rz2(-pi/4) Rzz(pi/4) Rx2(pi/4)").unwrap().evaluate::<f64>();
        let expected1 =
            Operator4::from_real_rows([[1., 0., 0., 0.], [0., 1., 0., 0.], [0., 0., 0., 1.], [0., 0., -1., 0.]]);
        assert!(c1.approx_eq(&expected1, 1e-12), "{c1}");
        let c2 = parse_sequence("Rx1(-pi/4) Rz1(-pi/4) Rzz(pi/4) Rx1(pi/4)").unwrap().evaluate::<f64>();
        let expected2 =
            Operator4::from_real_rows([[1., 0., 0., 0.], [0., 0., 0., 1.], [0., 0., 1., 0.], [0., -1., 0., 0.]]);
        assert!(c2.approx_eq(&expected2, 1e-12), "{c2}");
    }

    #[test]
    fn pulse_then_negated_twin_is_identity() {
        let s = parse_sequence("Ry1(-pi/3) Ry1(pi/3)").unwrap();
        assert!(s.evaluate::<f64>().approx_eq(&Operator4::identity(), 1e-15));
    }

    #[test]
    fn json_form() {
        let s = parse_sequence("Rx2(-pi/4) Rzz(pi/4) Ry1(0.3)").unwrap();
        let v = s.to_json();
        assert_eq!(v["order"], "application");
        assert_eq!(v["pulses"][0], serde_json::json!({"axis": "y", "spin": 1, "angle": 0.3}));
        assert_eq!(v["pulses"][1], serde_json::json!({"axis": "zz", "angle": "pi/4"}));
        assert_eq!(v["pulses"][2], serde_json::json!({"axis": "x", "spin": 2, "angle": "-pi/4"}));
        let back = PulseSequence::from_json_str(&v.to_string()).unwrap();
        assert_eq!(back, s);

        let operator_doc = r#"{"pulses":[{"axis":"x","spin":2,"angle":"-pi/4"},{"axis":"x","spin":2,"angle":"pi/4"}],"order":"operator"}"#;
        let p = PulseSequence::from_json_str(operator_doc).unwrap();
        assert_eq!(p.pulses()[0].angle, Angle::pi_frac(1, 4));

        for bad in [
            r#"{"pulses":[{"axis":"zz","spin":1,"angle":"pi"}],"order":"application"}"#,
            r#"{"pulses":[{"axis":"x","angle":"pi"}],"order":"application"}"#,
            r#"{"pulses":[{"axis":"w","spin":1,"angle":"pi"}],"order":"application"}"#,
            r#"{"pulses":[],"order":"sideways"}"#,
        ] {
            assert!(matches!(PulseSequence::from_json_str(bad), Err(Error::SequenceFormat(_))), "{bad}");
        }
    }
}
