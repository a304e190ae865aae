//! JSON form of exact reflection data.

use serde::{Deserialize, Serialize};

use crate::coxeter::{CoxeterError, ReflectionData};
use crate::linalg::Vector;
use crate::scalar::serde_rational;
use crate::Rational;

#[derive(Serialize, Deserialize)]
struct ReflectionDataJson {
    dim: usize,
    #[serde(with = "serde_rational::vecvec")]
    alphas: Vec<Vec<Rational>>,
    #[serde(with = "serde_rational::vecvec")]
    coroots: Vec<Vec<Rational>>,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

pub fn to_json(data: &ReflectionData<Rational>) -> String {
    let doc = ReflectionDataJson {
        dim: data.dim,
        alphas: data.alphas.iter().map(|v| v.0.clone()).collect(),
        coroots: data.coroots.iter().map(|v| v.0.clone()).collect(),
        labels: Some(data.labels.clone()),
    };
    serde_json::to_string_pretty(&doc).expect("plain data serializes")
}

pub fn from_json(s: &str) -> Result<ReflectionData<Rational>, CoxeterError> {
    let doc: ReflectionDataJson =
        serde_json::from_str(s).map_err(|e| CoxeterError::Json(e.to_string()))?;
    if let Some(l) = &doc.labels {
        if l.len() != doc.alphas.len() {
            return Err(CoxeterError::Json("labels and alphas differ in length".into()));
        }
    }
    ReflectionData::new(
        doc.dim,
        doc.alphas.into_iter().map(Vector).collect(),
        doc.coroots.into_iter().map(Vector).collect(),
        doc.labels,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::builtin;

    #[test]
    fn builtin_data_round_trips() {
        let g2 = builtin::<Rational>("G2").unwrap();
        let text = to_json(&g2.data);
        assert!(text.contains("-2/3"));
        assert_eq!(from_json(&text).unwrap(), g2.data);
    }

    #[test]
    fn bad_pairing_is_rejected() {
        let text = r#"{"dim": 2, "alphas": [["1", "0"]], "coroots": [["1", "0"]]}"#;
        assert_eq!(from_json(text).unwrap_err(), CoxeterError::BadPairing(0));
    }
}
