//! Plain-text code files.
//!
//! A linear code is a header line `n k` followed by `k` generator rows written
//! as `0`/`1` strings. A CSS code file holds two such blocks, `C1` first and
//! then `C2`. Blank lines and lines starting with `#` are ignored.

use super::binary::{format_bits, parse_bits, BinaryMatrix};
use super::{validate_css, CssCode, LinearCode};
use crate::{Error, Result};

/// The Steane pair in file form.
pub const STEANE_TEXT: &str = "\
# Steane [[7,1]]: C1 = [7,4] Hamming, C2 = its [7,3] dual
7 4
1110000
1001100
0101010
1101001
7 3
1010101
0110011
0001111
";

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Self { inner: text.lines().enumerate() }
    }

    fn next_content(&mut self) -> Option<(usize, &'a str)> {
        self.inner.by_ref().map(|(i, l)| (i + 1, l.trim())).find(|(_, l)| !l.is_empty() && !l.starts_with('#'))
    }
}

fn parse_block(lines: &mut Lines<'_>) -> Result<Option<LinearCode>> {
    let Some((line, header)) = lines.next_content() else {
        return Ok(None);
    };
    let nums: Vec<usize> = header
        .split_whitespace()
        .map(str::parse)
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Parse { line, msg: format!("expected \"n k\", found {header:?}") })?;
    let [n, k] = nums[..] else {
        return Err(Error::Parse { line, msg: format!("expected \"n k\", found {header:?}") });
    };
    if k > n {
        return Err(Error::Parse { line, msg: format!("k = {k} exceeds n = {n}") });
    }
    let mut rows = Vec::with_capacity(k);
    for _ in 0..k {
        let (line, text) = lines.next_content().ok_or(Error::Parse { line, msg: "missing generator rows".into() })?;
        let bits = parse_bits(text).ok_or_else(|| Error::Parse { line, msg: format!("not a bit string: {text:?}") })?;
        if bits.len() != n {
            return Err(Error::Parse { line, msg: format!("row has {} bits, expected {n}", bits.len()) });
        }
        rows.push(bits);
    }
    let generator = BinaryMatrix::from_rows(&rows, n)?;
    LinearCode::from_generator(generator).map(Some).map_err(|e| Error::Parse { line, msg: e.to_string() })
}

/// Parses a single linear code block.
pub fn parse_linear_code(text: &str) -> Result<LinearCode> {
    let mut lines = Lines::new(text);
    let code = parse_block(&mut lines)?.ok_or(Error::Parse { line: 1, msg: "empty code file".into() })?;
    if let Some((line, _)) = lines.next_content() {
        return Err(Error::Parse { line, msg: "trailing content after code block".into() });
    }
    Ok(code)
}

/// Parses a `C1` block followed by a `C2` block and validates the pair.
pub fn parse_css(text: &str) -> Result<CssCode> {
    let mut lines = Lines::new(text);
    let c1 = parse_block(&mut lines)?.ok_or(Error::Parse { line: 1, msg: "missing C1 block".into() })?;
    let c2 = parse_block(&mut lines)?.ok_or(Error::Parse { line: 1, msg: "missing C2 block".into() })?;
    if let Some((line, _)) = lines.next_content() {
        return Err(Error::Parse { line, msg: "trailing content after C2 block".into() });
    }
    validate_css(c1, c2)
}

/// Writes the generator blocks of `code` in the file format.
pub fn format_css(code: &CssCode) -> String {
    let mut out = String::new();
    for c in [code.c1(), code.c2()] {
        out.push_str(&format!("{} {}\n", c.n(), c.k()));
        for row in c.generator().row_iter() {
            out.push_str(&format_bits(row));
            out.push('\n');
        }
    }
    out
}
