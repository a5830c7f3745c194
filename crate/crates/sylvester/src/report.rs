//! Line-oriented key=value reports, the machine-readable output format of
//! the command-line interface. Exact values are serialized in the
//! coordinate grammar; numeric approximations carry an `approx.` key
//! prefix. Reports are byte-deterministic for fixed inputs and seeds.

use std::fmt;

/// An ordered list of key=value pairs plus a command name.
#[derive(Debug, Clone, Default)]
pub struct Report {
    entries: Vec<(String, String)>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Report { entries: Vec::new() };
        r.push("command", command);
        r
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl fmt::Display) {
        self.entries.push((key.into(), value.to_string()));
    }

    pub fn push_bool(&mut self, key: impl Into<String>, value: bool) {
        self.push(key, if value { "true" } else { "false" });
    }

    /// Numeric approximations are marked by key prefix so exact and
    /// floating values can never be confused downstream.
    pub fn push_approx(&mut self, key: &str, value: f64) {
        self.push(format!("approx.{key}"), format!("{value:.12e}"));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.entries {
            writeln!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_layout() {
        let mut r = Report::new("demo");
        r.push("points", 9);
        r.push_bool("sg", true);
        r.push_approx("integral", -0.5);
        let text = r.to_string();
        assert_eq!(
            text,
            "command=demo\npoints=9\nsg=true\napprox.integral=-5.000000000000e-1\n"
        );
        assert_eq!(r.get("sg"), Some("true"));
    }
}
