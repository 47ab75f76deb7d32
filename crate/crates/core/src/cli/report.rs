use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictLine {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table {
    pub title: String,
    pub rows: Vec<String>,
    pub columns: Vec<String>,
    pub cells: Vec<Vec<String>>,
}

/// Output of one command. `timing_ms` is the only field that varies between identical runs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub verdicts: Vec<VerdictLine>,
    pub tables: Vec<Table>,
    pub provenance: Vec<String>,
    pub notes: Vec<String>,
    pub timing_ms: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Md,
}

/// `{0:1, 2:3}`; the zero space is `{}`.
pub fn graded_dims(d: &BTreeMap<i64, usize>) -> String {
    let parts: Vec<String> = d.iter().filter(|(_, v)| **v > 0).map(|(k, v)| format!("{k}:{v}")).collect();
    format!("{{{}}}", parts.join(", "))
}

impl Report {
    pub fn new(command: Vec<String>) -> Report {
        Report { command, ..Report::default() }
    }

    pub fn verdict(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.verdicts.push(VerdictLine { name: name.into(), pass, detail: detail.into() });
    }

    pub fn note(&mut self, n: impl Into<String>) {
        self.notes.push(n.into());
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                let v = serde_json::to_value(self).expect("reports serialize");
                let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
                s.push('\n');
                s
            }
            OutputFormat::Md => self.markdown(),
        }
    }

    fn markdown(&self) -> String {
        let mut s = String::new();
        writeln!(s, "# dgcat {}\n", self.command.join(" ")).unwrap();
        if !self.verdicts.is_empty() {
            writeln!(s, "## Verdicts\n").unwrap();
            for v in &self.verdicts {
                let mark = if v.pass { "pass" } else { "fail" };
                if v.detail.is_empty() {
                    writeln!(s, "- {mark}: {}", v.name).unwrap();
                } else {
                    writeln!(s, "- {mark}: {} ({})", v.name, v.detail).unwrap();
                }
            }
            writeln!(s).unwrap();
        }
        for t in &self.tables {
            writeln!(s, "## {}\n", t.title).unwrap();
            writeln!(s, "| | {} |", t.columns.join(" | ")).unwrap();
            writeln!(s, "|---|{}", "---|".repeat(t.columns.len())).unwrap();
            for (r, row) in t.rows.iter().zip(&t.cells) {
                writeln!(s, "| {r} | {} |", row.join(" | ")).unwrap();
            }
            writeln!(s).unwrap();
        }
        if !self.provenance.is_empty() {
            writeln!(s, "## Provenance\n").unwrap();
            for p in &self.provenance {
                writeln!(s, "- {p}").unwrap();
            }
            writeln!(s).unwrap();
        }
        if !self.notes.is_empty() {
            writeln!(s, "## Notes\n").unwrap();
            for n in &self.notes {
                writeln!(s, "- {n}").unwrap();
            }
            writeln!(s).unwrap();
        }
        writeln!(s, "timing: {} ms", self.timing_ms).unwrap();
        s
    }
}
