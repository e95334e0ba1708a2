//! Output plumbing shared by every subcommand.
//!
//! JSON output wraps the command payload in a fixed envelope; CSV output is
//! a bare header line plus rows; pretty output is a human table. All exact
//! values serialize as decimal strings -- rationals canonically as
//! "num/den" (reduced, denominator positive), never as floats -- so that
//! identical inputs give byte-identical stdout. The envelope's `wall_ms` is
//! null unless `--timing` was passed, for the same reason.

use num_traits::One;
use serde_json::{json, Value};

use krq_core::{Certainty, Rational};

use crate::{CliError, Ctx, Format};

/// Canonical exact form, always "num/den".
pub fn rat_str(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Human form: integers drop the "/1".
pub fn rat_disp(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Accepts "2", "-3", "5/7"; rejects zero denominators. The zero check is
/// left to callers that actually require q != 0.
pub fn parse_rational(s: &str) -> Result<Rational, CliError> {
    let bad = || CliError::Usage(format!("not a rational: {s:?} (expected forms: 2, -3, 5/7)"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num = num.trim().parse().map_err(|_| bad())?;
    let den: num_bigint::BigInt = den.trim().parse().map_err(|_| bad())?;
    if den == num_bigint::BigInt::from(0) {
        return Err(CliError::Usage(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

pub fn require_nonzero(q: &Rational, what: &str) -> Result<(), CliError> {
    use num_traits::Zero;
    if q.is_zero() {
        Err(CliError::Usage(format!("{what} must be nonzero")))
    } else {
        Ok(())
    }
}

/// Tally of how many rows rest on proved vs probable primality.
#[derive(Debug, Clone, Copy, Default)]
pub struct CertaintyTally {
    pub proved: u64,
    pub probable: u64,
}

impl CertaintyTally {
    pub fn add(&mut self, c: Certainty) {
        match c {
            Certainty::Proved => self.proved += 1,
            Certainty::Probable => self.probable += 1,
        }
    }
}

/// Renders one command's result in the requested format. The payload and
/// the format-specific texts are built lazily so a big scan only pays for
/// the format it was asked for.
pub fn emit(
    ctx: &Ctx,
    command: &str,
    params: Value,
    certainty: CertaintyTally,
    payload: impl FnOnce() -> Value,
    csv: impl FnOnce() -> String,
    pretty: impl FnOnce() -> String,
) {
    match ctx.format {
        Format::Json => {
            let envelope = json!({
                "tool": "krq",
                "version": env!("CARGO_PKG_VERSION"),
                "command": command,
                "params": params,
                "certainty": { "proved": certainty.proved, "probable": certainty.probable },
                "wall_ms": ctx.wall_ms(),
                "payload": payload(),
            });
            let mut text = serde_json::to_string_pretty(&envelope).expect("static schema");
            text.push('\n');
            write_stdout(&text);
        }
        Format::Csv => write_stdout(&csv()),
        Format::Pretty => write_stdout(&format!("{}\n", pretty().trim_end())),
    }
}

/// Writes the payload, treating a broken pipe as a normal early exit (the
/// reader has seen all it wanted) rather than a panic.
fn write_stdout(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write to stdout: {e}");
        std::process::exit(2);
    }
}

/// One CSV line; the writers only ever emit digits, signs, '/', letters and
/// '@', so no quoting is needed.
pub fn csv_line(fields: &[String]) -> String {
    let mut line = fields.join(",");
    line.push('\n');
    line
}

/// Left-aligned fixed-width text table with a two-space gutter.
pub fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    let render = |out: &mut String, cells: &[String]| {
        for (i, cell) in cells.iter().enumerate() {
            if i > 0 {
                out.push_str("  ");
            }
            out.push_str(cell);
            if i + 1 < cells.len() {
                for _ in cell.len()..widths[i] {
                    out.push(' ');
                }
            }
        }
        out.push('\n');
    };
    let header_cells: Vec<String> = headers.iter().map(|h| h.to_string()).collect();
    render(&mut out, &header_cells);
    for row in rows {
        render(&mut out, row);
    }
    out
}
