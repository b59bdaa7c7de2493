//! Operator pools: named Hermitian Pauli sums, their Clifford conjugates, and
//! the symmetry filter applied at each stage.

use serde_json::{Map, Value};

use crate::pauli::{parse_terms, terms_to_value, Location, ParseError, PauliString, PauliSum};
use crate::symmetry::{conjugate_sum, CliffordFactor, SymmetryError};

#[derive(Debug, Clone, PartialEq)]
pub struct PoolElement {
    pub label: String,
    pub operator: PauliSum,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Pool {
    n: usize,
    elements: Vec<PoolElement>,
}

impl Pool {
    pub fn new(n: usize, elements: Vec<PoolElement>) -> Self {
        assert!(elements.iter().all(|e| e.operator.n() == n), "pool element size mismatch");
        Self { n, elements }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[PoolElement] {
        &self.elements
    }

    /// `C† O_k C` for every element.
    pub fn conjugate(&self, factors: &[CliffordFactor]) -> Result<Pool, SymmetryError> {
        let elements = self
            .elements
            .iter()
            .map(|e| {
                Ok(PoolElement {
                    label: e.label.clone(),
                    operator: conjugate_sum(&e.operator, factors)?,
                })
            })
            .collect::<Result<_, SymmetryError>>()?;
        Ok(Pool { n: self.n, elements })
    }

    pub fn to_json_value(&self) -> Value {
        let elements = self
            .elements
            .iter()
            .map(|e| {
                let mut m = Map::new();
                m.insert("label".into(), Value::String(e.label.clone()));
                m.insert("terms".into(), terms_to_value(&e.operator));
                Value::Object(m)
            })
            .collect();
        let mut doc = Map::new();
        doc.insert("n_qubits".into(), Value::from(self.n));
        doc.insert("elements".into(), Value::Array(elements));
        Value::Object(doc)
    }
}

/// Parses `{"n_qubits", "elements": [{"label", "terms": [{"pauli", "coeff"}]}]}`.
/// Errors inside an element report the element index as the location.
pub fn parse_pool(text: &str) -> Result<Pool, ParseError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| ParseError::from_json(&e))?;
    let header = |m: &str| ParseError {
        location: Location::Header,
        message: m.to_string(),
    };
    let n = doc
        .get("n_qubits")
        .and_then(Value::as_u64)
        .ok_or_else(|| header("missing or invalid \"n_qubits\""))? as usize;
    let raw = doc
        .get("elements")
        .and_then(Value::as_array)
        .ok_or_else(|| header("missing or invalid \"elements\" array"))?;
    let mut elements = Vec::with_capacity(raw.len());
    for (i, e) in raw.iter().enumerate() {
        let at = |m: String| ParseError {
            location: Location::Term(i),
            message: m,
        };
        let label = e.get("label").and_then(Value::as_str).unwrap_or_default().to_string();
        let terms = e
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| at("element needs a \"terms\" array".into()))?;
        let operator = parse_terms(n, terms).map_err(|err| at(format!("element {label:?}: {err}")))?;
        elements.push(PoolElement { label, operator });
    }
    Ok(Pool { n, elements })
}

/// Indices of the elements whose every term commutes with `X_q` for each listed qubit.
pub fn filter_pool(pool: &Pool, symmetry_qubits: &[usize]) -> Vec<usize> {
    let sigmas: Vec<PauliString> = symmetry_qubits
        .iter()
        .map(|&q| PauliString::x_on(pool.n, &[q]))
        .collect();
    pool.elements
        .iter()
        .enumerate()
        .filter(|(_, e)| {
            e.operator
                .iter()
                .all(|(p, _)| sigmas.iter().all(|s| p.commutes_unchecked(s)))
        })
        .map(|(k, _)| k)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const DOC: &str = r#"{"n_qubits": 3, "elements": [
        {"label": "a", "terms": [{"pauli": "XYI", "coeff": 0.5}, {"pauli": "YXI", "coeff": -0.5}]},
        {"label": "b", "terms": [{"pauli": "IZY", "coeff": 1.0}]},
        {"label": "c", "terms": [{"pauli": "YII", "coeff": 1.0}]}
    ]}"#;

    #[test]
    fn round_trip() {
        let p = parse_pool(DOC).unwrap();
        assert_eq!((p.n(), p.len()), (3, 3));
        let again = parse_pool(&p.to_json_value().to_string()).unwrap();
        assert_eq!(p, again);
    }

    #[test]
    fn filter_by_symmetry_qubits() {
        let p = parse_pool(DOC).unwrap();
        assert_eq!(filter_pool(&p, &[]), vec![0, 1, 2]);
        // XY and YX on qubits 0,1 both anticommute with X_1; IZY anticommutes with X_2
        assert_eq!(filter_pool(&p, &[1]), vec![2]);
        assert_eq!(filter_pool(&p, &[2]), vec![0, 2]);
        assert_eq!(filter_pool(&p, &[0]), vec![1]);
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "{}",
            r#"{"n_qubits": 2}"#,
            r#"{"n_qubits": 2, "elements": [{"label": "x"}]}"#,
            r#"{"n_qubits": 2, "elements": [{"terms": [{"pauli": "XYZ", "coeff": 1.0}]}]}"#,
        ] {
            assert!(parse_pool(bad).is_err(), "{bad}");
        }
        let e = parse_pool(r#"{"n_qubits": 2, "elements": [{"terms": []}, {"terms": [{"pauli": "Q", "coeff": 1}]}]}"#)
            .unwrap_err();
        assert_eq!(e.location, Location::Term(1));
    }
}
