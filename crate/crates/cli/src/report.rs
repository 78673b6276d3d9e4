use serde_json::{Map, Value};

/// Ordered verb report. Text and JSON renderings carry the same fields.
pub struct Report {
    fields: Map<String, Value>,
}

impl Report {
    pub fn new(verb: &str) -> Self {
        let mut fields = Map::new();
        fields.insert("verb".into(), Value::from(verb));
        Report { fields }
    }

    pub fn field(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.fields.insert(key.into(), value.into());
        self
    }

    /// Close the report with the fuel it consumed.
    pub fn fuel_used(self, fuel: usize) -> Self {
        self.field("fuelUsed", fuel)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.fields).expect("report values serialize")
    }

    /// One `key: value` line per field; nested values as compact JSON.
    pub fn to_text(&self) -> String {
        self.fields
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}: {s}"),
                _ => format!("{k}: {v}"),
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}
