//! Minimal CSV writer: one header row, comma separator, LF endings, numbers
//! formatted independently of locale.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

/// Formats `x` with `digits` significant digits. At 17 digits the shortest
/// representation that parses back to the same `f64` is used.
pub fn fmt_num(x: f64, digits: u8) -> String {
    if digits >= 17 || !x.is_finite() {
        return format!("{x}");
    }
    let rounded: f64 = format!("{:.*e}", usize::from(digits) - 1, x).parse().expect("valid float text");
    format!("{rounded}")
}

pub struct Table {
    digits: u8,
    buf: String,
}

impl Table {
    pub fn new(header: &[&str], digits: u8) -> Self {
        let mut buf = header.join(",");
        buf.push('\n');
        Self { digits, buf }
    }

    pub fn num(&self, x: f64) -> String {
        fmt_num(x, self.digits)
    }

    /// Appends a row of already formatted fields.
    pub fn row<S: AsRef<str>>(&mut self, fields: &[S]) {
        for (i, f) in fields.iter().enumerate() {
            if i > 0 {
                self.buf.push(',');
            }
            self.buf.push_str(f.as_ref());
        }
        self.buf.push('\n');
    }

    /// Appends a row of numbers.
    pub fn nums(&mut self, values: &[f64]) {
        for (i, &v) in values.iter().enumerate() {
            if i > 0 {
                self.buf.push(',');
            }
            let _ = write!(self.buf, "{}", fmt_num(v, self.digits));
        }
        self.buf.push('\n');
    }

    pub fn write_to(&self, path: Option<&Path>) -> std::io::Result<()> {
        match path {
            Some(p) => std::fs::write(p, self.buf.as_bytes()),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(self.buf.as_bytes())?;
                out.flush()
            }
        }
    }
}
