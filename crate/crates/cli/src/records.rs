//! Serializable records and their csv/table renderings.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use goss_zeta::{Composition, Numeral};

use crate::args::Format;

/// One composition: decimal parts, weight, and the parts in base `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionRecord {
    pub parts: Vec<u128>,
    pub weight: u128,
    pub base_p: Vec<String>,
}

impl CompositionRecord {
    pub fn new(c: &Composition) -> goss_zeta::Result<Self> {
        Ok(CompositionRecord {
            parts: c.to_u128_vec()?,
            weight: c.weight()?,
            base_p: c.parts().iter().map(Numeral::to_base_string).collect(),
        })
    }

    pub const CSV_HEADER: &'static str = "parts,weight,base_p";

    pub fn csv_row(&self) -> String {
        format!("{},{},{}", join(&self.parts), self.weight, self.base_p.join(" "))
    }

    /// `(32 (1012_3), 99 (10200_3))  weight 230`
    pub fn table_line(&self) -> String {
        let parts: Vec<String> = self
            .parts
            .iter()
            .zip(&self.base_p)
            .map(|(v, b)| format!("{v} ({b})"))
            .collect();
        format!("({})  weight {}", parts.join(", "), self.weight)
    }
}

pub fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("records serialize")
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(xs) => xs.iter().map(scalar).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

/// Renders a flat record: one JSON line, a header and row of CSV, or
/// aligned `key: value` lines.
pub fn render_flat<T: Serialize>(record: &T, format: Format) -> String {
    let value = serde_json::to_value(record).expect("records serialize");
    let Value::Object(map) = &value else {
        return to_json(record) + "\n";
    };
    match format {
        Format::Json => to_json(record) + "\n",
        Format::Csv => {
            let keys: Vec<&str> = map.keys().map(String::as_str).collect();
            let vals: Vec<String> = map.values().map(scalar).collect();
            format!("{}\n{}\n", keys.join(","), vals.join(","))
        }
        Format::Table => {
            let width = map.keys().map(|k| k.chars().count()).max().unwrap_or(0);
            map.iter()
                .map(|(k, v)| {
                    let shown = match v {
                        Value::Null => "-".to_string(),
                        Value::Array(xs) if xs.is_empty() => "-".to_string(),
                        other => scalar(other),
                    };
                    format!("{k:<width$}  {shown}\n")
                })
                .collect()
        }
    }
}
