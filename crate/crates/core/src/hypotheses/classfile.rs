//! JSON class files:
//!
//! ```json
//! { "domain": [0, 1, 2],
//!   "hypotheses": [ { "name": "h0", "values": "010" } ] }
//! ```
//!
//! Points missing from `domain` are 0 for every hypothesis.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Hypothesis, HypothesisClass, HypothesisError, Point};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HypothesisRecord {
    pub name: String,
    pub values: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassDocument {
    pub domain: Vec<u64>,
    pub hypotheses: Vec<HypothesisRecord>,
}

impl ClassDocument {
    pub fn from_class(class: &HypothesisClass) -> Self {
        ClassDocument {
            domain: class.domain().iter().map(|p| p.0).collect(),
            hypotheses: class
                .hypotheses()
                .iter()
                .map(|h| HypothesisRecord {
                    name: h.id().to_string(),
                    values: h.bit_string(class.domain()),
                })
                .collect(),
        }
    }

    pub fn into_class(self) -> Result<HypothesisClass, HypothesisError> {
        let domain: Vec<Point> = self.domain.iter().copied().map(Point).collect();
        let mut hypotheses = Vec::with_capacity(self.hypotheses.len());
        for rec in self.hypotheses {
            let values = rec
                .values
                .chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    other => Err(HypothesisError::InvalidValue {
                        id: rec.name.clone(),
                        found: other,
                    }),
                })
                .collect::<Result<Vec<_>, _>>()?;
            hypotheses.push(Hypothesis::new(rec.name, domain.clone(), values)?);
        }
        HypothesisClass::new(domain, hypotheses)
    }
}

pub fn parse_class(text: &str) -> Result<HypothesisClass, HypothesisError> {
    let doc: ClassDocument =
        serde_json::from_str(text).map_err(|e| HypothesisError::Parse(e.to_string()))?;
    doc.into_class()
}

pub fn read_class_file(path: impl AsRef<Path>) -> Result<HypothesisClass, HypothesisError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| HypothesisError::Parse(format!("{}: {e}", path.display())))?;
    parse_class(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_round_trips() {
        let text = r#"{"domain":[3,7],"hypotheses":[{"name":"a","values":"10"},{"name":"b","values":"01"}]}"#;
        let c = parse_class(text).unwrap();
        assert_eq!(c.len(), 2);
        assert!(c.hypotheses()[0].evaluate(Point(3)));
        assert!(c.hypotheses()[1].evaluate(Point(7)));
        assert!(!c.hypotheses()[1].evaluate(Point(0)));
        let again = ClassDocument::from_class(&c).into_class().unwrap();
        assert_eq!(again, c);
    }

    #[test]
    fn length_mismatch_names_hypothesis() {
        let text = r#"{"domain":[0,1],"hypotheses":[{"name":"ok","values":"10"},{"name":"short","values":"1"}]}"#;
        let err = parse_class(text).unwrap_err();
        assert!(err.to_string().contains("short"), "{err}");
    }

    #[test]
    fn rejects_bad_characters_and_empty_classes() {
        let bad = r#"{"domain":[0],"hypotheses":[{"name":"x","values":"2"}]}"#;
        assert!(matches!(parse_class(bad), Err(HypothesisError::InvalidValue { .. })));
        let empty = r#"{"domain":[0],"hypotheses":[]}"#;
        assert_eq!(parse_class(empty), Err(HypothesisError::EmptyClass));
        assert!(matches!(parse_class("{"), Err(HypothesisError::Parse(_))));
    }
}
