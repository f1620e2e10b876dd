//! Line-oriented text format for keys, ciphertexts and messages.
//!
//! ```text
//! TRS-MCELIECE v1 <public|private|ciphertext>
//! q0=<int> n=<int> k=<int> l=<int>
//! <rows, one per line, fixed-width lowercase hex separated by single spaces>
//! ```
//!
//! Private keys list `S` (k rows), then `alpha`, then `eta`. Only strictly
//! valid parameter tuples can be written, since `t` and `h` are rederived
//! from `(q0, n, k, l)` on reading.

use thiserror::Error;

use super::{Ciphertext, CryptoError, PrivateKey, PublicKey};
use crate::field::{FieldElement, FieldTower};
use crate::linalg::Matrix;
use crate::rs::Locators;
use crate::trs::{TrsKey, TrsParams, Violation};

const MAGIC: &str = "TRS-MCELIECE v1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WireError {
    #[error("line 1: expected {expected:?}, got {got:?}")]
    Header { expected: String, got: String },
    #[error("line {0}: missing")]
    MissingLine(usize),
    #[error("line {0}: unexpected trailing data")]
    TrailingData(usize),
    #[error("line 2: malformed parameter line {0:?}")]
    ParamLine(String),
    #[error("line 2: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Params(Vec<Violation>),
    #[error("line {line}: malformed element {token:?}")]
    BadElement { line: usize, token: String },
    #[error("line {line}: expected {expected} elements, got {got}")]
    ElementCount { line: usize, expected: usize, got: usize },
    #[error("inconsistent contents: {0}")]
    Invalid(String),
}

impl From<CryptoError> for WireError {
    fn from(e: CryptoError) -> Self {
        WireError::Invalid(e.to_string())
    }
}

fn width_of(params: &TrsParams) -> (u32, usize) {
    let m = params.base_degree << params.l;
    (m, m.div_ceil(4) as usize)
}

/// One line of fixed-width hex elements, without a newline.
pub fn write_elements(v: &[FieldElement], width: usize) -> String {
    v.iter()
        .map(|x| format!("{:0width$x}", x.bits()))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Parses exactly `count` elements of a degree-`m` field from one line;
/// `line_no` is only used in errors.
pub fn parse_elements(line: &str, count: usize, m: u32, line_no: usize) -> Result<Vec<FieldElement>, WireError> {
    let width = m.div_ceil(4) as usize;
    let toks: Vec<&str> = if line.is_empty() { Vec::new() } else { line.split(' ').collect() };
    if toks.len() != count {
        return Err(WireError::ElementCount {
            line: line_no,
            expected: count,
            got: toks.len(),
        });
    }
    toks.into_iter()
        .map(|t| {
            let bad = || WireError::BadElement {
                line: line_no,
                token: t.to_string(),
            };
            if t.len() != width || !t.bytes().all(|b| matches!(b, b'0'..=b'9' | b'a'..=b'f')) {
                return Err(bad());
            }
            let v = u128::from_str_radix(t, 16).map_err(|_| bad())?;
            if m < 128 && v >> m != 0 {
                return Err(bad());
            }
            Ok(FieldElement(v))
        })
        .collect()
}

fn write_params(p: &TrsParams) -> String {
    format!("q0={} n={} k={} l={}", p.q0, p.n, p.k, p.l)
}

fn parse_params(line: &str) -> Result<TrsParams, WireError> {
    let bad = || WireError::ParamLine(line.to_string());
    let f: Vec<&str> = line.split(' ').collect();
    if f.len() != 4 {
        return Err(bad());
    }
    let field = |i: usize, key: &str| -> Result<&str, WireError> {
        let v = f[i].strip_prefix(key).and_then(|r| r.strip_prefix('=')).ok_or_else(bad)?;
        if v.is_empty() || !v.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        Ok(v)
    };
    let q0: u128 = field(0, "q0")?.parse().map_err(|_| bad())?;
    let n: usize = field(1, "n")?.parse().map_err(|_| bad())?;
    let k: usize = field(2, "k")?.parse().map_err(|_| bad())?;
    let l: usize = field(3, "l")?.parse().map_err(|_| bad())?;
    // canonical form only: no leading zeros
    if format!("q0={q0} n={n} k={k} l={l}") != line {
        return Err(bad());
    }
    TrsParams::validate(q0, n, k, l).map_err(WireError::Params)
}

struct Reader<'a> {
    lines: Vec<&'a str>,
    pos: usize,
}

impl<'a> Reader<'a> {
    fn new(text: &'a str) -> Self {
        let body = text.strip_suffix('\n').unwrap_or(text);
        Self {
            lines: body.split('\n').collect(),
            pos: 0,
        }
    }

    /// 1-based number of the line `next` returns.
    fn line_no(&self) -> usize {
        self.pos + 1
    }

    fn next(&mut self) -> Result<&'a str, WireError> {
        let l = self.lines.get(self.pos).copied().ok_or(WireError::MissingLine(self.pos + 1))?;
        self.pos += 1;
        Ok(l)
    }

    fn elements(&mut self, count: usize, m: u32) -> Result<Vec<FieldElement>, WireError> {
        let no = self.line_no();
        let line = self.next()?;
        parse_elements(line, count, m, no)
    }

    fn finish(self) -> Result<(), WireError> {
        if self.pos < self.lines.len() {
            return Err(WireError::TrailingData(self.pos + 1));
        }
        Ok(())
    }

    fn header(&mut self, kind: &str) -> Result<(TrsParams, FieldTower), WireError> {
        let expected = format!("{MAGIC} {kind}");
        let got = self.next()?;
        if got != expected {
            return Err(WireError::Header {
                expected,
                got: got.to_string(),
            });
        }
        let params = parse_params(self.next()?)?;
        let tower = params.tower().map_err(|e| WireError::Invalid(e.to_string()))?;
        Ok((params, tower))
    }

    fn matrix(&mut self, rows: usize, cols: usize, m: u32, level: u32) -> Result<Matrix, WireError> {
        let rows = (0..rows).map(|_| self.elements(cols, m)).collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::from_rows(rows, cols, level))
    }
}

fn header(kind: &str, p: &TrsParams) -> String {
    format!("{MAGIC} {kind}\n{}\n", write_params(p))
}

fn push_matrix(out: &mut String, g: &Matrix, width: usize) {
    for row in g.row_iter() {
        out.push_str(&write_elements(row, width));
        out.push('\n');
    }
}

impl PublicKey {
    pub fn to_text(&self) -> String {
        let (_, w) = width_of(&self.params);
        let mut out = header("public", &self.params);
        push_matrix(&mut out, &self.g_pub, w);
        out
    }

    pub fn from_text(text: &str) -> Result<Self, WireError> {
        let mut r = Reader::new(text);
        let (params, tower) = r.header("public")?;
        let (m, _) = width_of(&params);
        let g = r.matrix(params.k, params.n, m, tower.levels())?;
        r.finish()?;
        Ok(PublicKey::new(&tower, params, g)?)
    }
}

impl PrivateKey {
    pub fn to_text(&self) -> String {
        let p = &self.key.params;
        let (_, w) = width_of(p);
        let mut out = header("private", p);
        push_matrix(&mut out, &self.s, w);
        for line in [self.key.alpha.as_slice(), &self.key.eta] {
            out.push_str(&write_elements(line, w));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, WireError> {
        let mut r = Reader::new(text);
        let (params, tower) = r.header("private")?;
        let (m, _) = width_of(&params);
        let s = r.matrix(params.k, params.k, m, tower.levels())?;
        let alpha = r.elements(params.n, m)?;
        let eta = r.elements(params.l, m)?;
        r.finish()?;
        let alpha = Locators::new(&tower, alpha).map_err(|e| WireError::Invalid(e.to_string()))?;
        let key = TrsKey::new(&tower, params, alpha, eta).map_err(|e| WireError::Invalid(e.to_string()))?;
        Ok(PrivateKey::new(&tower, s, key)?)
    }
}

impl Ciphertext {
    pub fn to_text(&self, params: &TrsParams) -> String {
        let (_, w) = width_of(params);
        let mut out = header("ciphertext", params);
        out.push_str(&write_elements(&self.y, w));
        out.push('\n');
        out
    }

    pub fn from_text(text: &str) -> Result<(TrsParams, Self), WireError> {
        let mut r = Reader::new(text);
        let (params, _) = r.header("ciphertext")?;
        let (m, _) = width_of(&params);
        let y = r.elements(params.n, m)?;
        r.finish()?;
        Ok((params, Ciphertext { y }))
    }
}
