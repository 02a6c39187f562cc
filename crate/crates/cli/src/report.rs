//! Reports and their text and json-lines encodings.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryKind {
    /// A form or field that must vanish.
    Residual,
    /// A yes/no condition.
    Check,
    /// A computed value for display.
    Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub label: String,
    pub kind: EntryKind,
    pub ok: bool,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaskReport {
    /// The task line as written, in canonical form.
    pub task: String,
    pub line: usize,
    pub status: Status,
    /// The sign conventions the task ran under.
    pub conventions: String,
    pub entries: Vec<Entry>,
    pub error: Option<String>,
}

impl TaskReport {
    pub fn first_failure(&self) -> Option<&Entry> {
        self.entries.iter().find(|e| !e.ok)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub seed: Option<u64>,
    pub convention_mode: String,
    pub tasks: Vec<TaskReport>,
}

impl Report {
    pub fn count(&self, s: Status) -> usize {
        self.tasks.iter().filter(|t| t.status == s).count()
    }

    pub fn passed(&self) -> bool {
        self.tasks.iter().all(|t| t.status == Status::Pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    JsonLines,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json-lines" => Ok(Format::JsonLines),
            _ => Err(format!("unknown format `{s}`; expected text or json-lines")),
        }
    }
}

#[derive(Serialize)]
#[serde(tag = "record", rename_all = "lowercase")]
enum Record<'a> {
    Entry {
        task: usize,
        label: &'a str,
        kind: EntryKind,
        ok: bool,
        value: &'a str,
    },
    Task {
        task: usize,
        name: &'a str,
        line: usize,
        status: Status,
        conventions: &'a str,
        entries: usize,
        failures: usize,
        error: Option<&'a str>,
    },
    Summary {
        status: Status,
        tasks: usize,
        passed: usize,
        failed: usize,
        errors: usize,
        seed: Option<u64>,
        convention: &'a str,
    },
}

/// Encode a report. Both encodings are deterministic functions of the report.
pub fn emit(report: &Report, format: Format) -> Vec<u8> {
    match format {
        Format::Text => emit_text(report).into_bytes(),
        Format::JsonLines => emit_json_lines(report).into_bytes(),
    }
}

fn summary_status(report: &Report) -> Status {
    if report.passed() {
        Status::Pass
    } else {
        Status::Fail
    }
}

pub fn emit_json_lines(report: &Report) -> String {
    let mut out = String::new();
    let mut push = |r: &Record| {
        out.push_str(&serde_json::to_string(r).expect("records serialize"));
        out.push('\n');
    };
    for (i, t) in report.tasks.iter().enumerate() {
        let task = i + 1;
        for e in &t.entries {
            push(&Record::Entry {
                task,
                label: &e.label,
                kind: e.kind,
                ok: e.ok,
                value: &e.value,
            });
        }
        push(&Record::Task {
            task,
            name: &t.task,
            line: t.line,
            status: t.status,
            conventions: &t.conventions,
            entries: t.entries.len(),
            failures: t.entries.iter().filter(|e| !e.ok).count(),
            error: t.error.as_deref(),
        });
    }
    push(&Record::Summary {
        status: summary_status(report),
        tasks: report.tasks.len(),
        passed: report.count(Status::Pass),
        failed: report.count(Status::Fail),
        errors: report.count(Status::Error),
        seed: report.seed,
        convention: &report.convention_mode,
    });
    out
}

pub fn emit_text(report: &Report) -> String {
    let mut out = String::new();
    for (i, t) in report.tasks.iter().enumerate() {
        let _ = writeln!(out, "task {}: {} (line {})", i + 1, t.task, t.line);
        let _ = writeln!(out, "  conventions: {}", t.conventions);
        for e in &t.entries {
            let mark = if e.ok { "ok  " } else { "FAIL" };
            let _ = writeln!(out, "  {mark} {}: {}", e.label, e.value);
        }
        if let Some(err) = &t.error {
            let _ = writeln!(out, "  error: {err}");
        }
        if let Some(f) = t.first_failure() {
            let _ = writeln!(out, "  first failure: {} = {}", f.label, f.value);
        }
        let _ = writeln!(out, "  status: {}", t.status.name().to_uppercase());
        out.push('\n');
    }
    let status = summary_status(report).name().to_uppercase();
    let _ = writeln!(
        out,
        "{status}: {} tasks, {} passed, {} failed, {} errors",
        report.tasks.len(),
        report.count(Status::Pass),
        report.count(Status::Fail),
        report.count(Status::Error)
    );
    let seed = report.seed.map_or("none".to_string(), |s| s.to_string());
    let _ = writeln!(out, "convention mode: {}; seed: {seed}", report.convention_mode);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(ok: bool) -> Report {
        Report {
            seed: Some(3),
            convention_mode: "paper".into(),
            tasks: vec![TaskReport {
                task: "closure-defect f".into(),
                line: 9,
                status: if ok { Status::Pass } else { Status::Fail },
                conventions: "hamiltonian minus, comomentum minus".into(),
                entries: vec![
                    Entry {
                        label: "a".into(),
                        kind: EntryKind::Residual,
                        ok: true,
                        value: "0".into(),
                    },
                    Entry {
                        label: "b".into(),
                        kind: EntryKind::Residual,
                        ok,
                        value: if ok { "0".into() } else { "x*d(y)".into() },
                    },
                ],
                error: None,
            }],
        }
    }

    #[test]
    fn text_summary() {
        let text = emit_text(&sample(true));
        assert!(text.contains("\nPASS: 1 tasks, 1 passed"));
        let text = emit_text(&sample(false));
        assert!(text.contains("first failure: b = x*d(y)"));
        assert!(text.contains("\nFAIL: 1 tasks, 0 passed, 1 failed"));
    }

    #[test]
    fn json_lines_has_one_record_per_residual() {
        let out = emit_json_lines(&sample(false));
        let lines: Vec<_> = out.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], r#"{"record":"entry","task":1,"label":"a","kind":"residual","ok":true,"value":"0"}"#);
        assert!(lines[2].starts_with(r#"{"record":"task","task":1,"name":"closure-defect f","line":9,"status":"fail""#));
        assert!(lines[3].starts_with(r#"{"record":"summary","status":"fail""#));
    }

    #[test]
    fn empty_report_passes() {
        let r = Report {
            seed: None,
            convention_mode: "paper".into(),
            tasks: vec![],
        };
        assert_eq!(r.exit_code(), 0);
        assert_eq!(
            emit_json_lines(&r),
            "{\"record\":\"summary\",\"status\":\"pass\",\"tasks\":0,\"passed\":0,\"failed\":0,\"errors\":0,\"seed\":null,\"convention\":\"paper\"}\n"
        );
    }
}
