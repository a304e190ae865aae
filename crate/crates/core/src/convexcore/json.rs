//! JSON form of exact polyhedral sets; rationals are `"p/q"` strings.

use serde::{Deserialize, Serialize};

use crate::convexcore::{ConvexError, HalfSpace, PolyhedralSet, Representation};
use crate::linalg::Vector;
use crate::scalar::serde_rational;
use crate::Rational;

#[derive(Serialize, Deserialize)]
struct HalfSpaceJson {
    #[serde(with = "serde_rational::vec")]
    normal: Vec<Rational>,
    #[serde(with = "serde_rational")]
    offset: Rational,
    #[serde(default)]
    strict: bool,
}

#[derive(Serialize, Deserialize)]
struct VRepJson {
    #[serde(with = "serde_rational::vecvec")]
    points: Vec<Vec<Rational>>,
    #[serde(with = "serde_rational::vecvec", default)]
    rays: Vec<Vec<Rational>>,
}

#[derive(Serialize, Deserialize)]
struct PolyhedralSetJson {
    dim: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    hrep: Option<Vec<HalfSpaceJson>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    vrep: Option<VRepJson>,
}

/// Serializes the representation the set was built from.
pub fn to_json(set: &PolyhedralSet<Rational>) -> String {
    let doc = match set.origin() {
        Representation::H => PolyhedralSetJson {
            dim: set.dim(),
            hrep: Some(
                set.hrep()
                    .iter()
                    .map(|h| HalfSpaceJson {
                        normal: h.normal.0.clone(),
                        offset: h.offset.clone(),
                        strict: h.strict,
                    })
                    .collect(),
            ),
            vrep: None,
        },
        Representation::V => PolyhedralSetJson {
            dim: set.dim(),
            hrep: None,
            vrep: Some(VRepJson {
                points: set.vrep().points.iter().map(|p| p.0.clone()).collect(),
                rays: set.vrep().rays.iter().map(|p| p.0.clone()).collect(),
            }),
        },
    };
    serde_json::to_string_pretty(&doc).expect("plain data serializes")
}

/// Parses a set; when both representations are present the H-representation wins.
pub fn from_json(s: &str) -> Result<PolyhedralSet<Rational>, ConvexError> {
    let doc: PolyhedralSetJson =
        serde_json::from_str(s).map_err(|e| ConvexError::Json(e.to_string()))?;
    match (doc.hrep, doc.vrep) {
        (Some(h), _) => PolyhedralSet::from_hrep(
            doc.dim,
            h.into_iter()
                .map(|h| HalfSpace { normal: Vector(h.normal), offset: h.offset, strict: h.strict })
                .collect(),
        ),
        (None, Some(v)) => PolyhedralSet::from_vrep(
            doc.dim,
            v.points.into_iter().map(Vector).collect(),
            v.rays.into_iter().map(Vector).collect(),
        ),
        (None, None) => Err(ConvexError::Json("neither hrep nor vrep given".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_both_representations() {
        let text = r#"{"dim": 2, "vrep": {"points": [["0", "1/2"]], "rays": [[1, 0]]}}"#;
        let s = from_json(text).unwrap();
        let back = from_json(&to_json(&s)).unwrap();
        assert!(s.set_eq(&back));
        let text = r#"{"dim": 1, "hrep": [{"normal": ["1"], "offset": "-3/4", "strict": true}]}"#;
        let s = from_json(text).unwrap();
        assert!(s.has_strict());
        assert!(to_json(&s).contains("-3/4"));
    }

    #[test]
    fn schema_errors_are_reported() {
        assert!(matches!(from_json(r#"{"dim": 2}"#), Err(ConvexError::Json(_))));
        assert!(matches!(
            from_json(r#"{"dim": 2, "vrep": {"points": [["x", "1"]]}}"#),
            Err(ConvexError::Json(_))
        ));
        assert!(matches!(
            from_json(r#"{"dim": 2, "vrep": {"points": [["1"]]}}"#),
            Err(ConvexError::DimensionMismatch { .. })
        ));
    }
}
