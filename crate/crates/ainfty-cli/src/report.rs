use serde_json::{json, Map, Value};

/// Outcome of one command. Everything except `timing_ms` depends only on the
/// inputs and flags.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub input_digest: Option<String>,
    pub passed: bool,
    pub verdict: String,
    pub lines: Vec<String>,
    pub witnesses: Vec<String>,
    pub details: Map<String, Value>,
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.into(),
            input_digest: None,
            passed: true,
            verdict: "pass".into(),
            lines: Vec::new(),
            witnesses: Vec::new(),
            details: Map::new(),
            timing_ms: None,
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn witness(&mut self, s: impl Into<String>) {
        self.witnesses.push(s.into());
    }

    pub fn detail(&mut self, key: &str, v: Value) {
        self.details.insert(key.into(), v);
    }

    /// Marks a failed check without overriding a more specific verdict.
    pub fn fail(&mut self) {
        self.passed = false;
        if self.verdict == "pass" {
            self.verdict = "fail".into();
        }
    }

    pub fn text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        if let Some(d) = &self.input_digest {
            out += &format!("input: {d}\n");
        }
        for l in &self.lines {
            out += l;
            out.push('\n');
        }
        for w in &self.witnesses {
            out += &format!("witness: {w}\n");
        }
        if let Some(t) = self.timing_ms {
            out += &format!("time: {t} ms\n");
        }
        out += &format!("verdict: {}\n", self.verdict);
        out
    }

    pub fn json(&self) -> String {
        let mut v = json!({
            "command": self.command,
            "input_digest": self.input_digest,
            "passed": self.passed,
            "verdict": self.verdict,
            "witnesses": self.witnesses,
            "details": self.details,
        });
        if let Some(t) = self.timing_ms {
            v["timing_ms"] = json!(t);
        }
        let mut s = serde_json::to_string_pretty(&v).expect("report serializes");
        s.push('\n');
        s
    }
}
