use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

/// Outcome of checking a claimed property, serializable as a JSON report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub claim: String,
    pub parameters: Map<String, Value>,
    /// Integer, or exact rational rendered as `"p/q"`.
    pub value: Value,
    pub verified: bool,
    pub counterexample: Option<Value>,
}

impl Certificate {
    pub fn new(claim: impl Into<String>) -> Self {
        Certificate {
            claim: claim.into(),
            parameters: Map::new(),
            value: Value::Null,
            verified: true,
            counterexample: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.parameters
            .insert(key.to_string(), serde_json::to_value(value).expect("parameter serializes"));
        self
    }

    pub fn with_value(mut self, value: impl Serialize) -> Self {
        self.value = serde_json::to_value(value).expect("value serializes");
        self
    }

    /// Marks the certificate failed with the given witness.
    pub fn fail(mut self, counterexample: impl Serialize) -> Self {
        self.verified = false;
        self.counterexample = Some(serde_json::to_value(counterexample).expect("witness serializes"));
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let c = Certificate::new("tau").param("n", 6).with_value(7);
        assert_eq!(
            c.to_json(),
            r#"{"claim":"tau","parameters":{"n":6},"value":7,"verified":true,"counterexample":null}"#
        );
        let failed = c.fail(vec![1, 2, 3, 4]);
        let back: Certificate = serde_json::from_str(&failed.to_json()).unwrap();
        assert_eq!(back, failed);
        assert!(!back.verified);
    }
}
