//! Reports and their two renderings.

use fiberideals::{Codim, Field, Ideal};
use serde_json::{json, Map, Value};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub field: String,
    pub order: String,
    pub results: Map<String, Value>,
    pub codimensions: Map<String, Value>,
    pub flags: Map<String, Value>,
    pub timing_ms: Option<u128>,
}

/// Reduced Gröbner basis as strings; the unit ideal is `{"unit": true}`.
pub fn ideal_value<F: Field>(ideal: &Ideal<F>) -> Value {
    if ideal.is_unit() {
        json!({ "unit": true })
    } else {
        Value::from(ideal.to_strings())
    }
}

pub fn codim_value(c: Codim) -> Value {
    match c {
        Codim::Unit => Value::from("unit"),
        Codim::Height(h) => Value::from(h),
    }
}

impl Report {
    pub fn result(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.results.insert(key.to_string(), value.into());
        self
    }

    pub fn codim(&mut self, key: &str, c: Codim) -> &mut Self {
        self.codimensions.insert(key.to_string(), codim_value(c));
        self
    }

    pub fn flag(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.flags.insert(key.to_string(), value.into());
        self
    }

    pub fn to_value(&self) -> Value {
        let mut top = Map::new();
        top.insert("command".into(), self.command.clone().into());
        top.insert("seed".into(), self.seed.into());
        top.insert("field".into(), self.field.clone().into());
        top.insert("order".into(), self.order.clone().into());
        top.insert("results".into(), Value::Object(self.results.clone()));
        top.insert(
            "codimensions".into(),
            Value::Object(self.codimensions.clone()),
        );
        top.insert("flags".into(), Value::Object(self.flags.clone()));
        if let Some(ms) = self.timing_ms {
            top.insert("timing_ms".into(), Value::from(ms as u64));
        }
        Value::Object(top)
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{}  [{}, {}, seed {}]\n",
            self.command, self.field, self.order, self.seed
        );
        for (k, v) in &self.results {
            match self.codimensions.get(k) {
                Some(c) => out.push_str(&format!("{k}: {}  (codim {})\n", human(v), human(c))),
                None => out.push_str(&format!("{k}: {}\n", human(v))),
            }
        }
        for (k, v) in &self.codimensions {
            if !self.results.contains_key(k) {
                out.push_str(&format!("codim {k}: {}\n", human(v)));
            }
        }
        for (k, v) in &self.flags {
            out.push_str(&format!("{k}: {}\n", human(v)));
        }
        if let Some(ms) = self.timing_ms {
            out.push_str(&format!("time: {ms} ms\n"));
        }
        out
    }
}

fn human(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        Value::Array(items) if items.iter().all(Value::is_string) => {
            let parts: Vec<_> = items.iter().map(human).collect();
            format!("({})", parts.join(", "))
        }
        Value::Array(items) => {
            let parts: Vec<_> = items.iter().map(human).collect();
            format!("[{}]", parts.join("; "))
        }
        Value::Object(m) if m.get("unit") == Some(&Value::Bool(true)) && m.len() == 1 => {
            "(1)".into()
        }
        Value::Object(m) => {
            let parts: Vec<_> = m.iter().map(|(k, v)| format!("{k}={}", human(v))).collect();
            format!("{{{}}}", parts.join(", "))
        }
        other => other.to_string(),
    }
}
