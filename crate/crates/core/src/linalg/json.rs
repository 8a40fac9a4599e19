//! Matrix interchange document: `{"rows": [[[re, im] × 4] × 4]}` in the fixed basis order.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::matrix::Operator4;
use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub rows: Vec<Vec<[f64; 2]>>,
}

impl<T: Real> From<&Operator4<T>> for MatrixDoc {
    fn from(m: &Operator4<T>) -> Self {
        MatrixDoc {
            rows: m.rows().iter().map(|row| row.iter().map(|z| [z.re.as_f64(), z.im.as_f64()]).collect()).collect(),
        }
    }
}

impl MatrixDoc {
    pub fn to_operator<T: Real>(&self) -> Result<Operator4<T>> {
        if self.rows.len() != 4 {
            return Err(Error::MatrixFormat(format!("expected 4 rows, found {}", self.rows.len())));
        }
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() != 4 {
                return Err(Error::MatrixFormat(format!("row {i} has {} entries, expected 4", row.len())));
            }
            if row.iter().flatten().any(|x| !x.is_finite()) {
                return Err(Error::MatrixFormat(format!("row {i} has a non-finite entry")));
            }
        }
        Ok(Operator4::from_fn(|i, j| {
            let [re, im] = self.rows[i][j];
            Complex::new(T::lit(re), T::lit(im))
        }))
    }
}

impl<T: Real> Operator4<T> {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(MatrixDoc::from(self)).expect("matrix document serializes")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&MatrixDoc::from(self)).expect("matrix document serializes")
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let doc: MatrixDoc = serde_json::from_str(text).map_err(|e| Error::MatrixFormat(e.to_string()))?;
        doc.to_operator()
    }
}

pub(crate) fn complex_pair<T: Real>(z: Complex<T>) -> [f64; 2] {
    [z.re.as_f64(), z.im.as_f64()]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_preserves_entries() {
        let m = Operator4::<f64>::from_fn(|i, j| Complex::new(i as f64 - 0.25 * j as f64, (i * j) as f64 / 7.0));
        let back = Operator4::<f64>::from_json_str(&m.to_json_string()).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn rejects_wrong_shapes() {
        let three_rows = r#"{"rows": [[[1,0],[0,0],[0,0],[0,0]],[[0,0],[1,0],[0,0],[0,0]],[[0,0],[0,0],[1,0],[0,0]]]}"#;
        assert!(matches!(Operator4::<f64>::from_json_str(three_rows), Err(Error::MatrixFormat(_))));
        let short_row = r#"{"rows": [[[1,0],[0,0],[0,0]],[[0,0],[1,0],[0,0],[0,0]],[[0,0],[0,0],[1,0],[0,0]],[[0,0],[0,0],[0,0],[1,0]]]}"#;
        assert!(Operator4::<f64>::from_json_str(short_row).is_err());
        let bad_pair = r#"{"rows": [[[1],[0,0],[0,0],[0,0]]]}"#;
        assert!(Operator4::<f64>::from_json_str(bad_pair).is_err());
        assert!(Operator4::<f64>::from_json_str(r#"{"cols": []}"#).is_err());
    }
}
