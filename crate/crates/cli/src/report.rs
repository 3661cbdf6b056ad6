use std::fmt::Write as _;

use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    /// A computation with no pass/fail meaning.
    Ok,
    Pass,
    Fail,
    Undetermined,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Undetermined => "undetermined",
            Status::Error => "error",
        }
    }

    pub fn check(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    /// Fail dominates undetermined, which dominates pass.
    pub fn combine(self, other: Status) -> Status {
        use Status::*;
        match (self, other) {
            (Error, _) | (_, Error) => Error,
            (Fail, _) | (_, Fail) => Fail,
            (Undetermined, _) | (_, Undetermined) => Undetermined,
            (Pass, _) | (_, Pass) => Pass,
            _ => Ok,
        }
    }
}

#[derive(Clone, Debug)]
pub struct TaskReport {
    pub name: String,
    pub op: String,
    pub status: Status,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Structured payload; always contains at least what the table shows.
    pub result: Value,
}

impl TaskReport {
    pub fn new(name: &str, op: &str, header: &[&str]) -> Self {
        TaskReport {
            name: name.to_string(),
            op: op.to_string(),
            status: Status::Ok,
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
            result: json!({}),
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    pub fn set(&mut self, key: &str, v: Value) {
        if let Value::Object(m) = &mut self.result {
            m.insert(key.to_string(), v);
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "task": self.name,
            "op": self.op,
            "status": self.status.as_str(),
            "table": { "header": self.header, "rows": self.rows },
            "result": self.result,
        })
    }

    fn human(&self, out: &mut String) {
        let _ = writeln!(
            out,
            "== {} [{}]: {}",
            self.name,
            self.op,
            self.status.as_str()
        );
        if self.header.is_empty() {
            return;
        }
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        for r in &self.rows {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |cells: &[String]| {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        };
        let _ = writeln!(out, "  {}", line(&self.header));
        for r in &self.rows {
            let _ = writeln!(out, "  {}", line(r));
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Human,
    Machine,
}

fn summary(reports: &[TaskReport]) -> (usize, [usize; 5]) {
    let mut counts = [0; 5];
    for r in reports {
        let k = match r.status {
            Status::Ok => 0,
            Status::Pass => 1,
            Status::Fail => 2,
            Status::Undetermined => 3,
            Status::Error => 4,
        };
        counts[k] += 1;
    }
    (reports.len(), counts)
}

/// Renders all reports followed by a summary line.
pub fn render(reports: &[TaskReport], format: Format, exit_code: i32) -> String {
    let (n, [ok, pass, fail, und, err]) = summary(reports);
    let mut out = String::new();
    match format {
        Format::Human => {
            for r in reports {
                r.human(&mut out);
            }
            let _ = writeln!(
                out,
                "{n} tasks: {ok} ok, {pass} pass, {fail} fail, {und} undetermined, {err} error; exit {exit_code}"
            );
        }
        Format::Machine => {
            for r in reports {
                let _ = writeln!(out, "{}", r.to_json());
            }
            let s = json!({
                "summary": { "tasks": n, "ok": ok, "pass": pass, "fail": fail, "undetermined": und, "error": err },
                "exit": exit_code,
            });
            let _ = writeln!(out, "{s}");
        }
    }
    out
}
