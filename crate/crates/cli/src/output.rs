use std::io::Write;

use clap::ValueEnum;
use radiuskit::{Error, Rational};
use serde_json::Value;

pub const EXIT_DOMAIN: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Human,
    /// One JSON object per line.
    Json,
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }

    /// Wraps a library error, naming the flag or file it came from.
    pub fn from_lib(context: &str, err: Error) -> Self {
        let code = match err {
            Error::InvalidParameter(_) | Error::Parse { .. } => EXIT_USAGE,
            Error::Budget(_) => EXIT_BUDGET,
            Error::InvalidInput(_) | Error::Structure { .. } | Error::Precondition(_) | Error::Witness(_) => EXIT_DOMAIN,
        };
        Self { code, message: format!("{context}: {err}") }
    }
}

/// Closure for `map_err` that tags a library error with its origin.
pub fn ctx(context: &str) -> impl Fn(Error) -> CliError + '_ {
    move |e| CliError::from_lib(context, e)
}

/// Everything a command prints, in both formats.
#[derive(Debug, Default)]
pub struct Report {
    pub human: Vec<String>,
    pub records: Vec<Value>,
    pub code: u8,
}

impl Report {
    pub fn line(&mut self, s: impl Into<String>) {
        self.human.push(s.into());
    }

    pub fn record(&mut self, v: Value) {
        self.records.push(v);
    }

    /// Prints the report; a closed stdout (e.g. a pipe into `head`) is not an error.
    pub fn emit(self, format: Format) -> u8 {
        let mut out = std::io::stdout().lock();
        let lines: Vec<String> = match format {
            Format::Human => self.human,
            Format::Json => self.records.iter().map(Value::to_string).collect(),
        };
        for l in lines {
            if writeln!(out, "{l}").is_err() {
                break;
            }
        }
        let _ = out.flush();
        self.code
    }
}

pub fn rat(r: Rational) -> String {
    r.to_string()
}

/// Decimal rendering with 12 significant digits.
pub fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(sig12(0.898979485566356), "0.898979485566");
        assert_eq!(sig12(-1.0), "-1.00000000000");
        assert_eq!(sig12(4.248076809271922), "4.24807680927");
        assert_eq!(sig12(0.0), "0");
    }
}
