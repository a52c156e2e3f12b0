//! Output collected by a command, printed either for people or as key=value lines.

use clap::ValueEnum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Fail,
}

#[derive(Debug)]
pub struct Report {
    format: Format,
    human: Vec<String>,
    fields: Vec<(String, String)>,
    pub outcome: Outcome,
}

impl Report {
    pub fn new(format: Format, command: &str) -> Report {
        let mut r = Report { format, human: Vec::new(), fields: Vec::new(), outcome: Outcome::Success };
        r.kv("command", command);
        r
    }

    /// A line for the human form only.
    pub fn line(&mut self, s: impl Into<String>) {
        self.human.push(s.into());
    }

    /// A field for the structured form only.
    pub fn kv(&mut self, k: impl Into<String>, v: impl ToString) {
        self.fields.push((k.into(), v.to_string()));
    }

    /// Both forms at once: `label: value` and `key=value`.
    pub fn both(&mut self, key: &str, label: &str, v: impl ToString) {
        let v = v.to_string();
        self.human.push(format!("{label}: {v}"));
        self.fields.push((key.to_string(), v));
    }

    pub fn fail(&mut self) {
        self.outcome = Outcome::Fail;
    }

    pub fn render(&mut self) -> String {
        let status = if self.outcome == Outcome::Success { "ok" } else { "fail" };
        self.fields.push(("status".into(), status.into()));
        let mut out = String::new();
        match self.format {
            Format::Human => {
                for l in &self.human {
                    out.push_str(l);
                    out.push('\n');
                }
            }
            Format::Structured => {
                for (k, v) in &self.fields {
                    out.push_str(k);
                    out.push('=');
                    out.push_str(v);
                    out.push('\n');
                }
            }
        }
        out
    }
}
