//! Built-in catalog of the seventeen CNOT-class matrices, each with the
//! matrix as printed and its two printed pulse-sequence forms (rotation
//! notation and exponential notation), plus an audit that evaluates both forms.
//!
//! When the forms disagree the rotation-notation line is canonical; the audit
//! records discrepancies and never repairs them.

use std::fmt::Write as _;
use std::sync::OnceLock;

use num_complex::Complex;
use num_rational::Rational64;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{MatrixDoc, Operator4};
use crate::pulse::{parse_sequence, Angle, PulseSequence};
use crate::scalar::Real;

/// Exact matrix: a global phase `e^{iπ·phase}` times entries in `{0, ±1, ±i}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeclaredMatrix {
    pub phase: Rational64,
    /// `(re, im)` integer pairs.
    pub entries: [[(i8, i8); 4]; 4],
}

impl DeclaredMatrix {
    pub fn to_operator<T: Real>(&self) -> Operator4<T> {
        let theta = Angle::PiMultiple(self.phase).radians::<T>();
        let phase =
            if self.phase.is_zero() { Complex::new(T::one(), T::zero()) } else { Complex::from_polar(T::one(), theta) };
        Operator4::from_fn(|i, j| {
            let (re, im) = self.entries[i][j];
            Complex::new(T::lit(f64::from(re)), T::lit(f64::from(im))) * phase
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogEntry {
    pub id: &'static str,
    /// Equation labels under which the matrix and its sequences were published.
    pub equations: &'static [u8],
    pub declared: DeclaredMatrix,
    /// Sequence from the rotation-notation line.
    pub r_form: PulseSequence,
    /// Sequence from the exponential line, transcribed into rotation notation.
    pub exp_form: PulseSequence,
    pub r_text: &'static str,
    pub exp_text: &'static str,
}

impl CatalogEntry {
    pub fn matrix<T: Real>(&self) -> Operator4<T> {
        self.declared.to_operator()
    }
}

struct Raw {
    id: &'static str,
    equations: &'static [u8],
    phase: (i64, i64),
    entries: [[(i8, i8); 4]; 4],
    r_text: &'static str,
    exp_text: &'static str,
}

const O: (i8, i8) = (0, 0);
const P1: (i8, i8) = (1, 0);
const M1: (i8, i8) = (-1, 0);
const PI: (i8, i8) = (0, 1);
const MI: (i8, i8) = (0, -1);

#[rustfmt::skip]
const RAW: [Raw; 17] = [
    Raw { id: "C_g", equations: &[2, 3], phase: (-1, 4),
        entries: [[P1, O, O, O], [O, P1, O, O], [O, O, O, P1], [O, O, P1, O]],
        r_text: "Ry2(-pi/4) Rz1(-pi/4) Rz2(-pi/4) Rzz(pi/4) Ry2(pi/4)",
        exp_text: "Ry2(-pi/4) Rz1(-pi/4) Rz2(-pi/4) Rzz(pi/4) Rz2(pi/4)" },
    Raw { id: "C_c1", equations: &[4, 6], phase: (0, 1),
        entries: [[P1, O, O, O], [O, P1, O, O], [O, O, O, P1], [O, O, M1, O]],
        r_text: "Rx2(-pi/4) Rz2(-pi/4) Rzz(pi/4) Rx2(pi/4)",
        exp_text: "Rx2(-pi/4) Rz2(-pi/4) Rzz(pi/4) Rx2(pi/4)" },
    Raw { id: "C_c2", equations: &[5, 7], phase: (0, 1),
        entries: [[P1, O, O, O], [O, O, O, P1], [O, O, P1, O], [O, M1, O, O]],
        r_text: "Rx1(-pi/4) Rz1(-pi/4) Rzz(pi/4) Rx1(pi/4)",
        exp_text: "Rx1(-pi/4) Rz1(-pi/4) Rzz(pi/4) Rx1(pi/4)" },
    Raw { id: "C_c11", equations: &[10], phase: (0, 1),
        entries: [[P1, O, O, O], [O, P1, O, O], [O, O, O, MI], [O, O, MI, O]],
        r_text: "Ry2(-pi/4) Rzz(pi/4) Rz2(-pi/4) Ry2(pi/4)",
        exp_text: "Ry2(-pi/4) Rzz(pi/4) Rz2(-pi/4) Ry2(pi/4)" },
    Raw { id: "C_c22", equations: &[11], phase: (0, 1),
        entries: [[P1, O, O, O], [O, O, O, MI], [O, O, P1, O], [O, MI, O, O]],
        r_text: "Ry1(-pi/4) Rzz(pi/4) Rz1(-pi/4) Ry1(pi/4)",
        exp_text: "Ry1(-pi/4) Rzz(pi/4) Rz1(-pi/4) Ry1(pi/4)" },
    Raw { id: "C_c31", equations: &[12], phase: (0, 1),
        entries: [[O, O, MI, O], [O, P1, O, O], [MI, O, O, O], [O, O, O, P1]],
        r_text: "Ry1(-pi/4) Rzz(-pi/4) Rz1(-pi/4) Ry1(pi/4)",
        exp_text: "Ry1(-pi/4) Rzz(-pi/4) Rz1(-pi/4) Ry1(pi/4)" },
    Raw { id: "C_c32", equations: &[13], phase: (0, 1),
        entries: [[O, MI, O, O], [MI, O, O, O], [O, O, P1, O], [O, O, O, P1]],
        r_text: "Ry2(-pi/4) Rzz(-pi/4) Rz2(-pi/4) Ry2(pi/4)",
        exp_text: "Ry2(-pi/4) Rzz(-pi/4) Rz2(-pi/4) Ry2(pi/4)" },
    Raw { id: "C_c41", equations: &[14], phase: (0, 1),
        entries: [[O, O, P1, O], [O, P1, O, O], [M1, O, O, O], [O, O, O, P1]],
        r_text: "Rx1(-pi/4) Rzz(-pi/4) Rz1(-pi/4) Rx1(pi/4)",
        exp_text: "Rx1(-pi/4) Rzz(-pi/4) Rz1(-pi/4) Rx1(pi/4)" },
    Raw { id: "C_c42", equations: &[15], phase: (0, 1),
        entries: [[O, P1, O, O], [M1, O, O, O], [O, O, P1, O], [O, O, O, P1]],
        r_text: "Rx2(-pi/4) Rzz(-pi/4) Rz2(-pi/4) Rx2(pi/4)",
        exp_text: "Rx2(-pi/4) Rzz(-pi/4) Rz2(-pi/4) Rx2(pi/4)" },
    Raw { id: "C_c51", equations: &[16], phase: (0, 1),
        entries: [[P1, O, O, O], [O, O, O, PI], [O, O, P1, O], [O, PI, O, O]],
        r_text: "Ry1(-pi/4) Rzz(-pi/4) Rz1(pi/4) Ry1(pi/4)",
        exp_text: "Ry1(-pi/4) Rzz(-pi/4) Rz1(-pi/4) Ry1(pi/4)" },
    Raw { id: "C_c52", equations: &[17], phase: (0, 1),
        entries: [[P1, O, O, O], [O, P1, O, O], [O, O, O, PI], [O, O, PI, O]],
        r_text: "Ry2(-pi/4) Rzz(-pi/4) Rz2(pi/4) Ry2(pi/4)",
        exp_text: "Ry2(-pi/4) Rzz(-pi/4) Rz2(pi/4) Ry2(pi/4)" },
    Raw { id: "C_c61", equations: &[18], phase: (0, 1),
        entries: [[P1, O, O, O], [O, O, O, M1], [O, O, P1, O], [O, P1, O, O]],
        r_text: "Rx1(-pi/4) Rzz(-pi/4) Rz1(pi/4) Rx1(pi/4)",
        exp_text: "Rx1(-pi/4) Rzz(-pi/4) Rz1(pi/4) Rx1(pi/4)" },
    Raw { id: "C_c62", equations: &[19], phase: (0, 1),
        entries: [[P1, O, O, O], [O, P1, O, O], [O, O, O, M1], [O, O, P1, O]],
        r_text: "Rx2(-pi/4) Rzz(-pi/4) Rz2(pi/4) Rx2(pi/4)",
        exp_text: "Rx2(-pi/4) Rzz(-pi/4) Rz2(pi/4) Rx2(pi/4)" },
    Raw { id: "C_c71", equations: &[20], phase: (0, 1),
        entries: [[O, M1, O, O], [P1, O, O, O], [O, O, P1, O], [O, O, O, P1]],
        r_text: "Rx2(-pi/4) Rzz(pi/4) Rz2(pi/4) Rx2(pi/4)",
        exp_text: "Rx2(-pi/4) Rzz(pi/4) Rz2(pi/4) Rx2(pi/4)" },
    Raw { id: "C_c72", equations: &[21], phase: (0, 1),
        entries: [[O, O, M1, O], [O, P1, O, O], [P1, O, O, O], [O, O, O, P1]],
        r_text: "Rx1(-pi/4) Rzz(pi/4) Rz1(pi/4) Rx1(pi/4)",
        exp_text: "Rx1(-pi/4) Rzz(pi/4) Rz1(pi/4) Rx1(pi/4)" },
    Raw { id: "C_c81", equations: &[22], phase: (0, 1),
        entries: [[O, PI, O, O], [PI, O, O, O], [O, O, P1, O], [O, O, O, P1]],
        r_text: "Ry2(-pi/4) Rzz(pi/4) Rz2(pi/4) Ry2(pi/4)",
        exp_text: "Ry2(-pi/4) Rzz(pi/4) Rz2(pi/4) Ry2(pi/4)" },
    Raw { id: "C_c82", equations: &[23], phase: (0, 1),
        entries: [[O, O, PI, O], [O, P1, O, O], [PI, O, O, O], [O, O, O, P1]],
        r_text: "Ry1(-pi/4) Rzz(pi/4) Rz1(pi/4) Ry1(pi/4)",
        exp_text: "Ry1(-pi/4) Rzz(pi/4) Rz1(pi/4) Ry1(pi/4)" },
];

/// The seventeen built-in entries, in publication order.
pub fn builtin_catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        RAW.iter()
            .map(|raw| CatalogEntry {
                id: raw.id,
                equations: raw.equations,
                declared: DeclaredMatrix { phase: Rational64::new(raw.phase.0, raw.phase.1), entries: raw.entries },
                r_form: parse_sequence(raw.r_text).expect("built-in rotation line parses"),
                exp_form: parse_sequence(raw.exp_text).expect("built-in exponential line parses"),
                r_text: raw.r_text,
                exp_text: raw.exp_text,
            })
            .collect()
    })
}

/// Finds an entry by id; matching ignores case and underscores (`C_c1`, `cc1`).
pub fn lookup(id: &str) -> Result<&'static CatalogEntry> {
    let key = normalize_id(id);
    builtin_catalog().iter().find(|e| normalize_id(e.id) == key).ok_or_else(|| Error::NotFound(id.to_string()))
}

fn normalize_id(id: &str) -> String {
    id.chars().filter(|c| *c != '_').flat_map(char::to_lowercase).collect()
}

/// The sixteen CNOT-family entries (everything except `C_g`).
pub fn cnot_family_entries() -> impl Iterator<Item = &'static CatalogEntry> {
    builtin_catalog().iter().filter(|e| e.id != "C_g")
}

#[derive(Clone, Debug, PartialEq)]
pub struct AuditRecord<T> {
    pub id: &'static str,
    pub equations: &'static [u8],
    pub r_product: Operator4<T>,
    pub exp_product: Operator4<T>,
    pub r_matches_declared: bool,
    pub exp_matches_declared: bool,
    pub forms_agree: bool,
    pub r_deviation: T,
    pub exp_deviation: T,
    pub forms_deviation: T,
}

impl<T: Real> AuditRecord<T> {
    pub fn any_form_matches(&self) -> bool {
        self.r_matches_declared || self.exp_matches_declared
    }
}

#[derive(Serialize)]
struct AuditDoc<'a> {
    id: &'a str,
    equations: &'a [u8],
    r_product: MatrixDoc,
    exp_product: MatrixDoc,
    r_matches_declared: bool,
    exp_matches_declared: bool,
    forms_agree: bool,
    r_deviation: f64,
    exp_deviation: f64,
    forms_deviation: f64,
}

impl<T: Real> Serialize for AuditRecord<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AuditDoc {
            id: self.id,
            equations: self.equations,
            r_product: MatrixDoc::from(&self.r_product),
            exp_product: MatrixDoc::from(&self.exp_product),
            r_matches_declared: self.r_matches_declared,
            exp_matches_declared: self.exp_matches_declared,
            forms_agree: self.forms_agree,
            r_deviation: self.r_deviation.as_f64(),
            exp_deviation: self.exp_deviation.as_f64(),
            forms_deviation: self.forms_deviation.as_f64(),
        }
        .serialize(s)
    }
}

pub fn audit_entry<T: Real>(e: &CatalogEntry, tol: T) -> AuditRecord<T> {
    let declared = e.matrix::<T>();
    let r_product = e.r_form.evaluate::<T>();
    let exp_product = e.exp_form.evaluate::<T>();
    let r_deviation = r_product.max_abs_diff(&declared);
    let exp_deviation = exp_product.max_abs_diff(&declared);
    let forms_deviation = r_product.max_abs_diff(&exp_product);
    AuditRecord {
        id: e.id,
        equations: e.equations,
        r_product,
        exp_product,
        r_matches_declared: r_deviation <= tol,
        exp_matches_declared: exp_deviation <= tol,
        forms_agree: forms_deviation <= tol,
        r_deviation,
        exp_deviation,
        forms_deviation,
    }
}

/// Audits every entry in catalog order.
pub fn audit_catalog<T: Real>(entries: &[CatalogEntry], tol: T) -> Vec<AuditRecord<T>> {
    entries.iter().map(|e| audit_entry(e, tol)).collect()
}

/// Fails when any entry matches neither of its printed forms, which points
/// at a mis-typed catalog rather than a typo in one printed line.
pub fn check_transcription<T: Real>(records: &[AuditRecord<T>]) -> Result<()> {
    let bad: Vec<&str> = records.iter().filter(|r| !r.any_form_matches()).map(|r| r.id).collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Error::Transcription(format!("no printed form reproduces the declared matrix of {}", bad.join(", "))))
    }
}

/// Fixed-width discrepancy table, one line per record.
pub fn render_audit_table<T: Real>(records: &[AuditRecord<T>]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<6} {:<6} {:<5} {:>9} {:<5} {:>9} {:<5} {:>9}",
        "id", "eq", "R=M", "dev", "exp=M", "dev", "agree", "dev"
    );
    let yn = |b: bool| if b { "yes" } else { "NO" };
    for r in records {
        let eq: Vec<String> = r.equations.iter().map(u8::to_string).collect();
        let _ = writeln!(
            out,
            "{:<6} {:<6} {:<5} {:>9.2e} {:<5} {:>9.2e} {:<5} {:>9.2e}",
            r.id,
            eq.join(","),
            yn(r.r_matches_declared),
            r.r_deviation.as_f64(),
            yn(r.exp_matches_declared),
            r.exp_deviation.as_f64(),
            yn(r.forms_agree),
            r.forms_deviation.as_f64(),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_unitary_entries() {
        let cat = builtin_catalog();
        assert_eq!(cat.len(), 17);
        for e in cat {
            assert!(e.matrix::<f64>().is_unitary(1e-12), "{} not unitary", e.id);
        }
        assert_eq!(cnot_family_entries().count(), 16);
    }

    #[test]
    fn lookup_by_id() {
        let c1 = lookup("C_c1").unwrap();
        let expected =
            Operator4::<f64>::from_real_rows([[1., 0., 0., 0.], [0., 1., 0., 0.], [0., 0., 0., 1.], [0., 0., -1., 0.]]);
        assert_eq!(c1.matrix::<f64>(), expected);
        assert_eq!(lookup("cc1").unwrap().id, "C_c1");
        assert_eq!(lookup("C_c99"), Err(Error::NotFound("C_c99".into())));
    }

    #[test]
    fn c_g_carries_principal_root_phase() {
        let g = lookup("C_g").unwrap().matrix::<f64>();
        let w = Complex::from_polar(1.0, -std::f64::consts::FRAC_PI_4);
        assert!((g.entry(0, 0) - w).norm() < 1e-15);
        assert!((g.entry(2, 3) - w).norm() < 1e-15);
        assert!((w * w - Complex::new(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn audit_of_consistent_entry() {
        let r = audit_entry(lookup("C_c1").unwrap(), 1e-12);
        assert!(r.r_matches_declared && r.exp_matches_declared && r.forms_agree);
    }

    #[test]
    fn audit_flags_printed_slips() {
        let g = audit_entry(lookup("C_g").unwrap(), 1e-12);
        assert!(g.r_matches_declared);
        assert!(!g.exp_matches_declared);
        assert!(!g.forms_agree);
        let c51 = audit_entry(lookup("C_c51").unwrap(), 1e-12);
        assert!(c51.r_matches_declared);
        assert!(!c51.forms_agree);
    }

    #[test]
    fn transcription_check_catches_total_mismatch() {
        let mut records = audit_catalog(builtin_catalog(), 1e-12);
        assert!(check_transcription(&records).is_ok());
        records[3].r_matches_declared = false;
        records[3].exp_matches_declared = false;
        let err = check_transcription(&records).unwrap_err();
        assert!(matches!(err, Error::Transcription(msg) if msg.contains("C_c11")));
    }

    #[test]
    fn table_has_one_line_per_record() {
        let records = audit_catalog(builtin_catalog(), 1e-12);
        let table = render_audit_table(&records);
        assert_eq!(table.lines().count(), 18);
        assert!(table.lines().any(|l| l.starts_with("C_c51") && l.contains("NO")));
    }
}
