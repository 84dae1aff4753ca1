use std::fmt::Write;

use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};
use symsq::local_algebra::{Polynomial, TermOrder};

use crate::{CliError, Format};

pub struct Outcome {
    pub text: String,
    pub doc: Value,
    /// The computation succeeded but the answer is "no".
    pub negative: bool,
}

impl Outcome {
    pub fn new(text: String, doc: Value) -> Self {
        Outcome {
            text,
            doc,
            negative: false,
        }
    }

    pub fn negative_if(mut self, negative: bool) -> Self {
        self.negative = negative;
        self
    }

    pub fn print(&self, format: Format) {
        match format {
            Format::Text => {
                print!("{}", self.text);
                if !self.text.ends_with('\n') {
                    println!();
                }
            }
            Format::Structured => {
                let text =
                    serde_json::to_string_pretty(&self.doc).expect("documents are JSON values");
                println!("{text}");
            }
        }
    }
}

/// Serializes through `Value`, whose maps keep keys sorted.
pub fn doc<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("library types serialize")
}

pub fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

/// Left-aligned columns separated by two spaces.
pub fn table(rows: &[Vec<String>]) -> String {
    let width = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..width)
        .map(|i| {
            rows.iter()
                .filter_map(|r| r.get(i))
                .map(|c| c.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i + 1 == row.len() {
                line.push_str(cell);
            } else {
                let _ = write!(line, "{cell:<w$}  ", w = widths[i]);
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn integer(n: &num_bigint::BigInt) -> Value {
    match i64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

pub fn rational(q: &BigRational) -> Value {
    json!([integer(q.numer()), integer(q.denom())])
}

pub fn polynomial(p: &Polynomial, order: TermOrder) -> Value {
    let mut terms: Vec<_> = p.terms().collect();
    terms.sort_by(|a, b| order.compare(b.0, a.0));
    json!({
        "text": p.display_in(order).to_string(),
        "terms": terms
            .into_iter()
            .map(|(e, c)| json!({ "coefficient": rational(c), "exponents": e }))
            .collect::<Vec<_>>(),
    })
}
