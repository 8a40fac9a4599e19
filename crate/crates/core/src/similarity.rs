//! Six-property similarity audit for pairs of normal 4×4 operators.
//!
//! Normal operators are diagonalizable, so similarity reduces to equality of
//! eigenvalue multisets; the decision is made constructively by building
//! `P = V_a·V_b⁻¹` from aligned eigenbases and verifying `A = P·B·P⁻¹`.

use std::fmt;

use num_complex::Complex;
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{complex_pair, eigen_decompose, match_spectra, vec_norm, EigenSystem, MatrixDoc, Operator4};
use crate::scalar::Real;

pub const INVERSE_CHECK_NOTE: &str =
    "implication evaluated as a similarity test on A^-1 and B^-1; it fails whenever the traces of the inverses differ";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Similar,
    NotSimilar,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Similar => "similar",
            Verdict::NotSimilar => "not-similar",
        })
    }
}

/// A quantity recorded for one side of a property check.
#[derive(Clone, Debug, PartialEq)]
pub enum Measured<T> {
    Scalar(Complex<T>),
    Spectrum([Complex<T>; 4]),
    Absent,
}

impl<T: Real> Serialize for Measured<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Measured::Scalar(z) => complex_pair(*z).serialize(s),
            Measured::Spectrum(zs) => {
                let mut seq = s.serialize_seq(Some(4))?;
                for z in zs {
                    seq.serialize_element(&complex_pair(*z))?;
                }
                seq.end()
            }
            Measured::Absent => s.serialize_none(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PropertyCheck<T> {
    /// 1-based property number.
    pub property: u8,
    pub pass: bool,
    pub lhs: Measured<T>,
    pub rhs: Measured<T>,
    pub residual: T,
    pub note: Option<&'static str>,
}

impl<T: Real> Serialize for PropertyCheck<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("property", &self.property)?;
        m.serialize_entry("name", property_name(self.property))?;
        m.serialize_entry("pass", &self.pass)?;
        m.serialize_entry("lhs", &self.lhs)?;
        m.serialize_entry("rhs", &self.rhs)?;
        m.serialize_entry("residual", &self.residual.as_f64())?;
        if let Some(note) = self.note {
            m.serialize_entry("note", note)?;
        }
        m.end()
    }
}

pub fn property_name(k: u8) -> &'static str {
    match k {
        1 => "determinant",
        2 => "trace",
        3 => "inverses-similar",
        4 => "conjugator",
        5 => "spectrum",
        6 => "eigenvector-map",
        _ => "unknown",
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimilarityReport<T> {
    pub properties: [PropertyCheck<T>; 6],
    /// `P` with `‖A − P·B·P⁻¹‖max ≤ tol`, when one was found.
    pub conjugator: Option<Operator4<T>>,
    pub verdict: Verdict,
    pub tol: T,
}

impl<T: Real> SimilarityReport<T> {
    pub fn property(&self, k: u8) -> &PropertyCheck<T> {
        &self.properties[usize::from(k) - 1]
    }

    /// Numbers of the properties that failed, ascending.
    pub fn failed(&self) -> Vec<u8> {
        self.properties.iter().filter(|p| !p.pass).map(|p| p.property).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "verdict": self.verdict,
            "tol": self.tol.as_f64(),
            "properties": self.properties,
            "conjugator": self.conjugator.as_ref().map(MatrixDoc::from),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SimilarityOptions<T> {
    pub tol: T,
    /// Evaluate property 3; requires both inputs to be nonsingular.
    pub check_inverses: bool,
}

impl<T: Real> SimilarityOptions<T> {
    pub fn new(tol: T) -> Self {
        SimilarityOptions { tol, check_inverses: true }
    }
}

/// Eigenbasis alignment between two operators.
struct Alignment<T> {
    a: EigenSystem<T>,
    /// B's eigenvalues permuted so index k pairs with A's k-th eigenvalue.
    b_values: [Complex<T>; 4],
    /// B's eigenvectors, columns permuted the same way.
    b_vectors: Operator4<T>,
    spectral_gap: T,
}

impl<T: Real> Alignment<T> {
    fn new(a: &Operator4<T>, b: &Operator4<T>) -> Result<Self> {
        let ea = eigen_decompose(a)?;
        let eb = eigen_decompose(b)?;
        let (perm, spectral_gap) = match_spectra(&ea.eigenvalues, &eb.eigenvalues);
        let b_values = std::array::from_fn(|k| eb.eigenvalues[perm[k]]);
        let b_vectors = Operator4::from_columns(std::array::from_fn(|k| eb.vector(perm[k])));
        Ok(Alignment { a: ea, b_values, b_vectors, spectral_gap })
    }

    /// `P = V_a·V_b⁻¹`, so `P·v_b,k = v_a,k`.
    fn candidate(&self) -> Option<(Operator4<T>, Operator4<T>)> {
        let vb_inv = self.b_vectors.inverse()?;
        let p = self.a.eigenvectors * vb_inv;
        let p_inv = p.inverse()?;
        Some((p, p_inv))
    }
}

fn conjugation_residual<T: Real>(a: &Operator4<T>, b: &Operator4<T>, p: &Operator4<T>, p_inv: &Operator4<T>) -> T {
    a.max_abs_diff(&(*p * *b * *p_inv))
}

/// Constructs `P` with `A = P·B·P⁻¹`, verified by substitution.
///
/// Returns `Ok(None)` when the spectra differ by more than `tol` or the
/// substitution residual exceeds `tol`.
pub fn find_conjugator<T: Real>(a: &Operator4<T>, b: &Operator4<T>, tol: T) -> Result<Option<Operator4<T>>> {
    let al = Alignment::new(a, b)?;
    Ok(verified_conjugator(a, b, &al, tol).map(|(p, _)| p))
}

fn verified_conjugator<T: Real>(
    a: &Operator4<T>,
    b: &Operator4<T>,
    al: &Alignment<T>,
    tol: T,
) -> Option<(Operator4<T>, T)> {
    if al.spectral_gap.is_nan() || al.spectral_gap > tol {
        return None;
    }
    let (p, p_inv) = al.candidate()?;
    let r = conjugation_residual(a, b, &p, &p_inv);
    (r <= tol).then_some((p, r))
}

pub fn check_similarity<T: Real>(a: &Operator4<T>, b: &Operator4<T>, tol: T) -> Result<SimilarityReport<T>> {
    check_similarity_with(a, b, SimilarityOptions::new(tol))
}

pub fn check_similarity_with<T: Real>(
    a: &Operator4<T>,
    b: &Operator4<T>,
    opts: SimilarityOptions<T>,
) -> Result<SimilarityReport<T>> {
    let tol = opts.tol;
    let al = Alignment::new(a, b)?;

    let (det_a, det_b) = (a.determinant(), b.determinant());
    let p1 = scalar_check(1, det_a, det_b, tol);
    let p2 = scalar_check(2, a.trace(), b.trace(), tol);

    let p3 = if opts.check_inverses {
        inverse_check(a, b, det_a, det_b, tol)?
    } else {
        PropertyCheck {
            property: 3,
            pass: true,
            lhs: Measured::Absent,
            rhs: Measured::Absent,
            residual: T::zero(),
            note: Some("skipped"),
        }
    };

    let found = verified_conjugator(a, b, &al, tol);
    let candidate = al.candidate();
    let p4_residual = match (&found, &candidate) {
        (Some((_, r)), _) => *r,
        (None, Some((p, p_inv))) => conjugation_residual(a, b, p, p_inv),
        (None, None) => T::infinity(),
    };
    let p4 = PropertyCheck {
        property: 4,
        pass: found.is_some(),
        lhs: Measured::Absent,
        rhs: Measured::Absent,
        residual: p4_residual,
        note: None,
    };

    let p5 = PropertyCheck {
        property: 5,
        pass: al.spectral_gap <= tol,
        lhs: Measured::Spectrum(al.a.eigenvalues),
        rhs: Measured::Spectrum(al.b_values),
        residual: al.spectral_gap,
        note: None,
    };

    // P maps each eigenvector of B onto an eigenvector of A for the same eigenvalue
    let p6_residual = match &candidate {
        Some((p, _)) => (0..4)
            .map(|k| {
                let w = p.apply(&al.b_vectors.column(k));
                let aw = a.apply(&w);
                let lam = al.b_values[k];
                vec_norm(&std::array::from_fn(|i| aw[i] - lam * w[i]))
            })
            .fold(T::zero(), T::max),
        None => T::infinity(),
    };
    let p6 = PropertyCheck {
        property: 6,
        pass: p6_residual <= tol,
        lhs: Measured::Absent,
        rhs: Measured::Absent,
        residual: p6_residual,
        note: None,
    };

    let conjugator = found.map(|(p, _)| p);
    let verdict = if conjugator.is_some() { Verdict::Similar } else { Verdict::NotSimilar };
    Ok(SimilarityReport { properties: [p1, p2, p3, p4, p5, p6], conjugator, verdict, tol })
}

fn scalar_check<T: Real>(property: u8, lhs: Complex<T>, rhs: Complex<T>, tol: T) -> PropertyCheck<T> {
    let residual = (lhs - rhs).norm();
    PropertyCheck {
        property,
        pass: residual <= tol,
        lhs: Measured::Scalar(lhs),
        rhs: Measured::Scalar(rhs),
        residual,
        note: None,
    }
}

fn inverse_check<T: Real>(
    a: &Operator4<T>,
    b: &Operator4<T>,
    det_a: Complex<T>,
    det_b: Complex<T>,
    tol: T,
) -> Result<PropertyCheck<T>> {
    for det in [det_a, det_b] {
        if det.norm() <= tol {
            return Err(Error::SingularInput { det_abs: det.norm().as_f64() });
        }
    }
    let singular = |d: Complex<T>| Error::SingularInput { det_abs: d.norm().as_f64() };
    let a_inv = a.inverse().ok_or_else(|| singular(det_a))?;
    let b_inv = b.inverse().ok_or_else(|| singular(det_b))?;
    let al = Alignment::new(&a_inv, &b_inv)?;
    let found = verified_conjugator(&a_inv, &b_inv, &al, tol);
    let residual = match (&found, al.candidate()) {
        (Some((_, r)), _) => *r,
        (None, Some((p, p_inv))) => conjugation_residual(&a_inv, &b_inv, &p, &p_inv),
        (None, None) => T::infinity(),
    };
    Ok(PropertyCheck {
        property: 3,
        pass: found.is_some(),
        lhs: Measured::Spectrum(al.a.eigenvalues),
        rhs: Measured::Spectrum(al.b_values),
        residual,
        note: Some(INVERSE_CHECK_NOTE),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    fn c_c1() -> Operator4<f64> {
        Operator4::from_real_rows([[1., 0., 0., 0.], [0., 1., 0., 0.], [0., 0., 0., 1.], [0., 0., -1., 0.]])
    }

    fn c_c2() -> Operator4<f64> {
        Operator4::from_real_rows([[1., 0., 0., 0.], [0., 0., 0., 1.], [0., 0., 1., 0.], [0., -1., 0., 0.]])
    }

    fn c_g() -> Operator4<f64> {
        Operator4::<f64>::from_real_rows([[1., 0., 0., 0.], [0., 1., 0., 0.], [0., 0., 0., 1.], [0., 0., 1., 0.]])
            .scale(Complex::from_polar(1.0, -FRAC_PI_4))
    }

    #[test]
    fn c_c1_c2_similar_on_all_six() {
        let r = check_similarity(&c_c1(), &c_c2(), 1e-9).unwrap();
        assert_eq!(r.verdict, Verdict::Similar);
        assert!(r.failed().is_empty(), "failed {:?}", r.failed());
        let p = r.conjugator.unwrap();
        let back = p * c_c2() * p.inverse().unwrap();
        assert!(back.approx_eq(&c_c1(), 1e-9));
    }

    #[test]
    fn phased_cnot_vs_c_c1_is_not_similar() {
        let r = check_similarity(&c_g(), &c_c1(), 1e-9).unwrap();
        assert_eq!(r.verdict, Verdict::NotSimilar);
        assert!(r.conjugator.is_none());
        // determinant agrees (both 1); the inverse check fails alongside 2, 4, 5, 6
        assert_eq!(r.failed(), vec![2, 3, 4, 5, 6]);
        assert!(r.property(1).pass);
        assert_eq!(r.property(3).note, Some(INVERSE_CHECK_NOTE));
        let Measured::Scalar(tr) = r.property(2).lhs else { panic!() };
        assert!((tr - Complex::from_polar(2.0, -FRAC_PI_4)).norm() < 1e-12);
    }

    #[test]
    fn self_similarity_accepts_identity_like_conjugator() {
        let a = c_c1();
        let r = check_similarity(&a, &a, 1e-9).unwrap();
        assert_eq!(r.verdict, Verdict::Similar);
        let p = r.conjugator.unwrap();
        // any P commuting with A is admissible
        assert!((p * a).approx_eq(&(a * p), 1e-9));
    }

    #[test]
    fn singular_input_rejected_for_inverse_check() {
        let z = Complex::new(0.0, 0.0);
        let o = Complex::new(1.0, 0.0);
        let proj = Operator4::<f64>::diagonal([o, o, z, z]);
        let err = check_similarity(&proj, &proj, 1e-9).unwrap_err();
        assert!(matches!(err, Error::SingularInput { .. }));
        let opts = SimilarityOptions { tol: 1e-9, check_inverses: false };
        let r = check_similarity_with(&proj, &proj, opts).unwrap();
        assert_eq!(r.verdict, Verdict::Similar);
        assert_eq!(r.property(3).note, Some("skipped"));
    }

    #[test]
    fn non_normal_rejected() {
        let mut m = Operator4::<f64>::identity();
        m = m + Operator4::from_fn(
            |i, j| if (i, j) == (0, 3) { Complex::new(1.0, 0.0) } else { Complex::new(0.0, 0.0) },
        );
        assert!(matches!(check_similarity(&m, &m, 1e-9), Err(Error::NotNormal { .. })));
        assert!(matches!(find_conjugator(&m, &c_c1(), 1e-9), Err(Error::NotNormal { .. })));
    }

    #[test]
    fn conjugator_absent_for_different_spectra() {
        assert_eq!(find_conjugator(&c_g(), &c_c1(), 1e-9).unwrap(), None);
    }

    #[test]
    fn report_json_shape() {
        let r = check_similarity(&c_c1(), &c_c2(), 1e-9).unwrap();
        let v = r.to_json();
        assert_eq!(v["verdict"], "similar");
        let props = v["properties"].as_array().unwrap();
        assert_eq!(props.len(), 6);
        for (k, p) in props.iter().enumerate() {
            assert_eq!(p["property"], k as u64 + 1);
            assert_eq!(p["pass"], true);
            assert!(p["residual"].as_f64().unwrap() <= 1e-9);
            assert!(p.get("lhs").is_some() && p.get("rhs").is_some());
        }
        assert_eq!(props[0]["lhs"], serde_json::json!([1.0, 0.0]));
        assert_eq!(props[4]["lhs"].as_array().unwrap().len(), 4);
        assert!(v["conjugator"]["rows"].is_array());
    }
}
