use std::io::Write;

use anyhow::{bail, Result};
use permstat::sampling::HistogramBin;
use permstat::{ExactRatio, Permutation, ProductValue};
use serde_json::{json, Map, Value};

use crate::cli::Format;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Failed,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Failed => "failed",
        }
    }
}

#[derive(Debug)]
pub struct Report {
    pub command: &'static str,
    pub n: usize,
    pub inputs: Map<String, Value>,
    pub results: Map<String, Value>,
    pub status: Status,
    pub histogram: Option<Vec<HistogramBin>>,
}

impl Report {
    pub fn new(command: &'static str, n: usize) -> Self {
        Report {
            command,
            n,
            inputs: Map::new(),
            results: Map::new(),
            status: Status::Ok,
            histogram: None,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn result(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.results.insert(key.to_string(), value.into());
        self
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "n": self.n,
            "inputs": self.inputs,
            "results": self.results,
            "status": self.status.as_str(),
        })
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.to_json())?;
                writeln!(out)?;
            }
            Format::Csv => {
                let Some(bins) = &self.histogram else {
                    bail!("csv output is only available for `sample`");
                };
                let mut w = csv::Writer::from_writer(out);
                w.write_record(["bin_lo", "bin_hi", "count"])?;
                for b in bins {
                    w.write_record([b.lo.to_string(), b.hi.to_string(), b.count.to_string()])?;
                }
                w.flush()?;
            }
            Format::Text => {
                let mut lines = vec![
                    format!("command: {}", self.command),
                    format!("n: {}", self.n),
                ];
                section(&mut lines, "inputs", &self.inputs);
                section(&mut lines, "results", &self.results);
                lines.push(format!("status: {}", self.status.as_str()));
                for line in lines {
                    writeln!(out, "{line}")?;
                }
            }
        }
        Ok(())
    }
}

pub fn ratio(r: &ExactRatio) -> Value {
    Value::String(r.to_string())
}

pub fn product(p: &ProductValue) -> Value {
    json!({ "product": p.product_string(), "root": p.root() })
}

pub fn perm(p: &Permutation) -> Value {
    json!(p.image())
}

fn section(lines: &mut Vec<String>, name: &str, map: &Map<String, Value>) {
    if map.is_empty() {
        return;
    }
    lines.push(format!("{name}:"));
    for (k, v) in map {
        render(lines, 2, &format!("{k}:"), v);
    }
}

fn render(lines: &mut Vec<String>, indent: usize, label: &str, v: &Value) {
    let pad = " ".repeat(indent);
    if let Some(s) = inline(v, label == "-") {
        lines.push(format!("{pad}{label} {s}"));
        return;
    }
    lines.push(format!("{pad}{label}"));
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                render(lines, indent + 2, &format!("{k}:"), v);
            }
        }
        Value::Array(items) => {
            for item in items {
                render(lines, indent + 2, "-", item);
            }
        }
        _ => unreachable!("scalars are inline"),
    }
}

/// One-line rendering for scalars, integer arrays and products. Inside a
/// list, flat objects are also written on one line.
fn inline(v: &Value, in_list: bool) -> Option<String> {
    match v {
        Value::Null => Some("undefined".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(x) => Some(x.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(Value::is_u64) => Some(
            items
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" "),
        ),
        Value::Object(map)
            if map.len() == 2 && map.contains_key("product") && map.contains_key("root") =>
        {
            Some(format!(
                "({})^(1/{})",
                map["product"].as_str()?,
                map["root"]
            ))
        }
        Value::Object(map) if in_list => map
            .iter()
            .map(|(k, v)| match v {
                Value::Array(_) | Value::Object(_) if !is_compact(v) => None,
                _ => inline(v, false).map(|s| format!("{k}: {s}")),
            })
            .collect::<Option<Vec<_>>>()
            .map(|parts| parts.join(", ")),
        _ => None,
    }
}

fn is_compact(v: &Value) -> bool {
    inline(v, false).is_some()
}
