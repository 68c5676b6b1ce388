use std::process::ExitCode;

use serde_json::Value;
use smith_core::error::Error;

use crate::{Format, Global};

/// A command's report in each format. `text` is printed when no format is
/// requested.
pub struct Output {
    pub json: Value,
    pub tsv: String,
    pub text: String,
    /// Set when a checked property failed; the value is the counterexample.
    pub violation: Option<String>,
    /// Format used when none is requested, if not plain text.
    pub default: Option<Format>,
}

impl Output {
    pub fn json(json: Value) -> Self {
        let text = serde_json::to_string_pretty(&json).expect("serializable");
        Self { tsv: tsv_of(&json), json, text, violation: None, default: None }
    }

    pub fn with_text(mut self, text: impl Into<String>) -> Self {
        self.text = text.into();
        self
    }

    pub fn with_tsv(mut self, tsv: String) -> Self {
        self.tsv = tsv;
        self
    }

    pub fn tsv_by_default(mut self) -> Self {
        self.default = Some(Format::Tsv);
        self
    }

    /// Marks the report as a failed check unless `ok`.
    pub fn check(mut self, ok: bool, counterexample: impl FnOnce() -> String) -> Self {
        if !ok {
            self.violation = Some(counterexample());
        }
        self
    }
}

/// Flat `key<TAB>value` lines for an object, one value per line otherwise.
fn tsv_of(v: &Value) -> String {
    match v {
        Value::Object(map) => map.iter().map(|(k, x)| format!("{k}\t{}\n", scalar_text(x))).collect(),
        Value::Array(items) => items.iter().map(|x| format!("{}\n", scalar_text(x))).collect(),
        other => format!("{}\n", scalar_text(other)),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Either malformed input (exit 2) or a violated property (exit 1).
pub enum Failure {
    Input(String),
    Violation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) => Failure::Violation(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

pub fn finish(result: Result<Output, Failure>, g: &Global) -> ExitCode {
    match result {
        Ok(out) => {
            let format = g.format.or(out.default);
            let mut body = match format {
                Some(Format::Json) => serde_json::to_string_pretty(&out.json).expect("serializable"),
                Some(Format::Tsv) => out.tsv.clone(),
                None => out.text.clone(),
            };
            if !body.ends_with('\n') {
                body.push('\n');
            }
            let written = match &g.out {
                Some(path) => std::fs::write(path, &body).map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => {
                    print!("{body}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            match out.violation {
                Some(cx) => {
                    eprintln!("property violated; counterexample:\n{cx}");
                    ExitCode::from(1)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Violation(msg)) => {
            eprintln!("property violated: {msg}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn global() -> Global {
        Global { ring: None, seed: 0, out: None, format: None }
    }

    #[test]
    fn exit_codes() {
        let ok = Output::json(serde_json::json!({ "x": 1 }));
        assert_eq!(finish(Ok(ok), &global()), ExitCode::SUCCESS);
        let bad = Output::json(serde_json::json!({})).check(false, || "cx".into());
        assert_eq!(finish(Ok(bad), &global()), ExitCode::from(1));
        assert_eq!(finish(Err(Failure::Input("x".into())), &global()), ExitCode::from(2));
        assert_eq!(finish(Err(Error::Internal("x".into()).into()), &global()), ExitCode::from(1));
    }

    #[test]
    fn flat_tsv() {
        assert_eq!(tsv_of(&serde_json::json!({ "a": 1, "b": "x" })), "a\t1\nb\tx\n");
    }
}
