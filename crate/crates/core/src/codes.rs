//! Built-in code constructions and code file I/O.
//!
//! Three constructions are built in:
//!
//! - `steane`: the [[7,1,3]] code, both CSS halves the (7,4) Hamming PCM;
//! - `shor9`: the [[9,1,3]] code, Z checks pairing qubits within each block
//!   of three and X checks comparing neighbouring blocks;
//! - `bicycle`: a sparse CSS construction `hx = hz = [C | C^T]` from a
//!   random circulant `C` of row weight `w/2`, with dependent trailing rows
//!   deleted.
//!
//! Quantum codes serialize to a JSON document; classical PCMs additionally
//! read and write the alist format. A `.alist` file loads as the self-dual
//! CSS pair `hx = hz = H`, which is how the Steane code is usually shipped.

use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::gf2::{BitMatrix, BitVector};
use crate::stabilizer::{CssCode, StabilizerCode};
use crate::{Error, Result};

/// The [[7,1,3]] Steane code: both halves are the (7,4) Hamming PCM.
#[must_use]
pub fn steane() -> CssCode {
    let h = BitMatrix::from_bit_rows(&[
        [1, 0, 1, 0, 1, 0, 1],
        [0, 1, 1, 0, 0, 1, 1],
        [0, 0, 0, 1, 1, 1, 1],
    ]);
    CssCode::new(h.clone(), h).expect("halves share width")
}

/// The [[9,1,3]] Shor code.
#[must_use]
pub fn shor9() -> CssCode {
    let hx = BitMatrix::from_bit_rows(&[
        [1, 1, 1, 1, 1, 1, 0, 0, 0],
        [0, 0, 0, 1, 1, 1, 1, 1, 1],
    ]);
    let hz = BitMatrix::from_bit_rows(&[
        [1, 1, 0, 0, 0, 0, 0, 0, 0],
        [0, 1, 1, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 1, 1, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 1, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 1, 1, 0],
        [0, 0, 0, 0, 0, 0, 0, 1, 1],
    ]);
    CssCode::new(hx, hz).expect("halves share width")
}

/// A bicycle code on `N = 2 n_c` qubits: `hx = hz = [C | C^T]` where `C` is
/// a random `n_c x n_c` circulant with `w/2` ones per row, drawn from a
/// ChaCha stream seeded with `seed`. Dependent rows are deleted greedily in
/// row order (the lowest-index independent rows are kept), so both halves
/// have full row rank. Equal parameters always produce the identical code.
///
/// Fails unless `w` is even, `2 <= w <= n_c`.
pub fn bicycle(n_c: usize, w: usize, seed: u64) -> Result<CssCode> {
    if w % 2 != 0 || w < 2 || w > n_c {
        return Err(Error::BadCodeParameters(format!(
            "bicycle needs even w with 2 <= w <= n_c, got n_c = {n_c}, w = {w}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let support = rand::seq::index::sample(&mut rng, n_c, w / 2);
    let mut first = BitVector::zeros(n_c);
    for i in support {
        first.set(i, true);
    }

    // Row i of the circulant is the first row shifted right by i, so
    // C[i][j] = first[(j - i) mod n_c]; [C | C^T] then has C^T[i][j] =
    // first[(i - j) mod n_c].
    let mut h = BitMatrix::zeros(n_c, 2 * n_c);
    for i in 0..n_c {
        for j in 0..n_c {
            if first.get((j + n_c - i) % n_c) {
                h.set(i, j, true);
            }
            if first.get((i + n_c - j) % n_c) {
                h.set(i, n_c + j, true);
            }
        }
    }

    // Keep the first maximal independent subset of rows.
    let mut kept: Vec<BitVector> = Vec::new();
    let mut echelon: Vec<BitVector> = Vec::new();
    for i in 0..n_c {
        let mut reduced = h.row(i).clone();
        for b in &echelon {
            let pivot = b.iter_ones().next().expect("echelon rows are nonzero");
            if reduced.get(pivot) {
                reduced.xor_assign(b);
            }
        }
        if !reduced.is_zero() {
            kept.push(h.row(i).clone());
            echelon.push(reduced);
            echelon.sort_by_key(|b| b.iter_ones().next().expect("nonzero"));
        }
    }
    let half = BitMatrix::from_rows(kept, 2 * n_c);
    CssCode::new(half.clone(), half)
}

/// How a code file spells out its parity checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CodeFormat {
    /// A single symplectic PCM with 2N columns.
    Stabilizer,
    /// Two classical halves `hx`, `hz`.
    Css,
}

/// The JSON code document: `{name, n, k, format, pcm | hx/hz}` with rows of
/// 0/1 entries.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CodeFile {
    pub name: String,
    pub n: usize,
    pub k: usize,
    pub format: CodeFormat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pcm: Option<Vec<Vec<u8>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hx: Option<Vec<Vec<u8>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hz: Option<Vec<Vec<u8>>>,
}

/// A code ready for use: always usable as a plain stabilizer code, and as a
/// CSS pair when the source had one.
#[derive(Clone, Debug)]
pub struct LoadedCode {
    pub name: String,
    pub stabilizer: StabilizerCode,
    pub css: Option<CssCode>,
}

impl LoadedCode {
    fn from_css(name: String, css: CssCode, checked: bool) -> Result<Self> {
        let stabilizer = if checked {
            css.to_stabilizer()?
        } else {
            css.to_stabilizer_unchecked()?
        };
        Ok(Self {
            name,
            stabilizer,
            css: Some(css),
        })
    }
}

fn bit_matrix_from_json(field: &str, rows: &[Vec<u8>]) -> Result<BitMatrix> {
    let cols = rows.first().map_or(0, Vec::len);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != cols {
            return Err(Error::Parse(format!(
                "{field} row {i} has {} entries, expected {cols}",
                row.len()
            )));
        }
        for (j, &b) in row.iter().enumerate() {
            if b > 1 {
                return Err(Error::Parse(format!(
                    "{field}[{i}][{j}] is {b}, expected 0 or 1"
                )));
            }
        }
    }
    Ok(BitMatrix::from_bit_rows(rows))
}

/// Builds and fully validates the code a [`CodeFile`] describes.
pub fn code_from_file(file: &CodeFile) -> Result<LoadedCode> {
    code_from_file_inner(file, true)
}

fn code_from_file_inner(file: &CodeFile, checked: bool) -> Result<LoadedCode> {
    let loaded = match file.format {
        CodeFormat::Css => {
            let hx = file
                .hx
                .as_ref()
                .ok_or_else(|| Error::Parse("css format needs an hx field".into()))?;
            let hz = file
                .hz
                .as_ref()
                .ok_or_else(|| Error::Parse("css format needs an hz field".into()))?;
            let css = CssCode::new(
                bit_matrix_from_json("hx", hx)?,
                bit_matrix_from_json("hz", hz)?,
            )?;
            LoadedCode::from_css(file.name.clone(), css, checked)?
        }
        CodeFormat::Stabilizer => {
            let pcm = file
                .pcm
                .as_ref()
                .ok_or_else(|| Error::Parse("stabilizer format needs a pcm field".into()))?;
            let code = StabilizerCode::new(bit_matrix_from_json("pcm", pcm)?)?;
            if checked {
                if let Some(v) = code.validate().first() {
                    return Err(Error::InvalidCode(v.to_string()));
                }
            }
            LoadedCode {
                name: file.name.clone(),
                stabilizer: code,
                css: None,
            }
        }
    };
    if loaded.stabilizer.n_qubits() != file.n {
        return Err(Error::Parse(format!(
            "declared n = {} but the checks act on {} qubits",
            file.n,
            loaded.stabilizer.n_qubits()
        )));
    }
    if loaded.stabilizer.k() != file.k {
        return Err(Error::Parse(format!(
            "declared k = {} but the checks leave k = {}",
            file.k,
            loaded.stabilizer.k()
        )));
    }
    Ok(loaded)
}

fn matrix_to_json_rows(m: &BitMatrix) -> Vec<Vec<u8>> {
    m.row_slice().iter().map(BitVector::to_bits).collect()
}

/// Serializes a CSS code as a JSON document.
#[must_use]
pub fn css_code_file(name: &str, css: &CssCode) -> CodeFile {
    CodeFile {
        name: name.to_string(),
        n: css.n_qubits(),
        k: css.k(),
        format: CodeFormat::Css,
        pcm: None,
        hx: Some(matrix_to_json_rows(css.hx())),
        hz: Some(matrix_to_json_rows(css.hz())),
    }
}

/// Serializes a plain stabilizer code as a JSON document.
#[must_use]
pub fn stabilizer_code_file(name: &str, code: &StabilizerCode) -> CodeFile {
    CodeFile {
        name: name.to_string(),
        n: code.n_qubits(),
        k: code.k(),
        format: CodeFormat::Stabilizer,
        pcm: Some(matrix_to_json_rows(code.pcm())),
        hx: None,
        hz: None,
    }
}

/// Parses a JSON code document from a string.
pub fn load_code_str(json: &str) -> Result<LoadedCode> {
    let file: CodeFile = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    code_from_file(&file)
}

/// Loads a code file. `.alist` files are read as a classical PCM `H` and
/// wrapped as the self-dual CSS pair `hx = hz = H`; anything else is parsed
/// as the JSON document.
pub fn load_code_file(path: &Path) -> Result<LoadedCode> {
    load_code_file_inner(path, true)
}

fn load_code_file_inner(path: &Path, checked: bool) -> Result<LoadedCode> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    if path.extension().is_some_and(|e| e == "alist") {
        let h = read_alist_str(&text)?;
        let name = path
            .file_stem()
            .map_or_else(|| "alist".to_string(), |s| s.to_string_lossy().into_owned());
        LoadedCode::from_css(name, CssCode::new(h.clone(), h)?, checked)
    } else {
        let file: CodeFile =
            serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
        code_from_file_inner(&file, checked)
    }
}

/// Selects a code: a built-in construction or a file on disk.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CodeSpec {
    Steane,
    Shor9,
    Bicycle { n_c: usize, w: usize, seed: u64 },
    File { path: String },
}

impl CodeSpec {
    /// Parses the command-line builtin syntax: `steane`, `shor9`, or
    /// `bicycle:n_c,w,seed`.
    pub fn parse_builtin(s: &str) -> Result<Self> {
        match s {
            "steane" => Ok(Self::Steane),
            "shor9" => Ok(Self::Shor9),
            _ => {
                let args = s.strip_prefix("bicycle:").ok_or_else(|| {
                    Error::Parse(format!(
                        "unknown builtin {s:?}; expected steane, shor9, or bicycle:n_c,w,seed"
                    ))
                })?;
                let parts: Vec<&str> = args.split(',').collect();
                if parts.len() != 3 {
                    return Err(Error::Parse(
                        "bicycle takes three comma-separated values: n_c,w,seed".into(),
                    ));
                }
                let parse = |what: &str, v: &str| -> Result<u64> {
                    v.trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad bicycle {what}: {v:?}")))
                };
                Ok(Self::Bicycle {
                    n_c: parse("n_c", parts[0])? as usize,
                    w: parse("w", parts[1])? as usize,
                    seed: parse("seed", parts[2])?,
                })
            }
        }
    }

    /// Builds or reads the code, fully validated.
    pub fn load(&self) -> Result<LoadedCode> {
        self.load_inner(true)
    }

    /// Builds or reads the code checking structure only, leaving
    /// commutation, orthogonality, and rank violations in place for
    /// [`StabilizerCode::validate`] to list.
    pub fn load_unvalidated(&self) -> Result<LoadedCode> {
        self.load_inner(false)
    }

    fn load_inner(&self, checked: bool) -> Result<LoadedCode> {
        match self {
            Self::Steane => LoadedCode::from_css("steane".into(), steane(), checked),
            Self::Shor9 => LoadedCode::from_css("shor9".into(), shor9(), checked),
            Self::Bicycle { n_c, w, seed } => {
                LoadedCode::from_css(self.to_string(), bicycle(*n_c, *w, *seed)?, checked)
            }
            Self::File { path } => load_code_file_inner(Path::new(path), checked),
        }
    }
}

impl std::fmt::Display for CodeSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Steane => f.write_str("steane"),
            Self::Shor9 => f.write_str("shor9"),
            Self::Bicycle { n_c, w, seed } => write!(f, "bicycle:{n_c},{w},{seed}"),
            Self::File { path } => write!(f, "file:{path}"),
        }
    }
}

/// Parses a classical PCM from alist text: `cols rows`, the maximum column
/// and row weights, per-column and per-row weight lists, then 1-indexed
/// position lists. Both the padded layout (lists filled to the maximum
/// weight with zeros) and the unpadded one are accepted.
pub fn read_alist_str(text: &str) -> Result<BitMatrix> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let mut pos = 0;
    let mut next_int = |what: &str| -> Result<usize> {
        let tok = tokens
            .get(pos)
            .ok_or_else(|| Error::Parse(format!("alist ended early, expected {what}")))?;
        pos += 1;
        tok.parse()
            .map_err(|_| Error::Parse(format!("bad alist {what}: {tok:?}")))
    };

    let cols = next_int("column count")?;
    let rows = next_int("row count")?;
    let max_col_w = next_int("max column weight")?;
    let max_row_w = next_int("max row weight")?;
    let col_weights: Vec<usize> = (0..cols)
        .map(|i| next_int(&format!("weight of column {i}")))
        .collect::<Result<_>>()?;
    let row_weights: Vec<usize> = (0..rows)
        .map(|i| next_int(&format!("weight of row {i}")))
        .collect::<Result<_>>()?;
    for (i, &w) in col_weights.iter().enumerate() {
        if w > max_col_w {
            return Err(Error::Parse(format!(
                "column {i} declares weight {w} above the maximum {max_col_w}"
            )));
        }
    }
    for (i, &w) in row_weights.iter().enumerate() {
        if w > max_row_w {
            return Err(Error::Parse(format!(
                "row {i} declares weight {w} above the maximum {max_row_w}"
            )));
        }
    }

    // Padded files list max_col_w entries per column (zeros as filler);
    // unpadded ones list exactly the declared weight. Token counts tell the
    // layouts apart.
    let header = 4 + cols + rows;
    let padded_total = header + cols * max_col_w + rows * max_row_w;
    let exact_total =
        header + col_weights.iter().sum::<usize>() + row_weights.iter().sum::<usize>();
    let padded = if tokens.len() == padded_total {
        true
    } else if tokens.len() == exact_total {
        false
    } else {
        return Err(Error::Parse(format!(
            "alist has {} tokens, expected {padded_total} (padded) or {exact_total} (unpadded)",
            tokens.len()
        )));
    };

    let mut m = BitMatrix::zeros(rows, cols);
    for (col, &w) in col_weights.iter().enumerate() {
        let slots = if padded { max_col_w } else { w };
        let mut seen = 0;
        for slot in 0..slots {
            let entry = next_int(&format!("entry {slot} of column {col}"))?;
            if entry == 0 {
                continue;
            }
            if entry > rows {
                return Err(Error::Parse(format!(
                    "column {col} entry {slot} is {entry}, above the row count {rows}"
                )));
            }
            m.set(entry - 1, col, true);
            seen += 1;
        }
        if seen != w {
            return Err(Error::Parse(format!(
                "column {col} declared weight {w} but listed {seen} entries"
            )));
        }
    }

    // The row lists restate the same positions; read and cross-check them.
    for (row, &w) in row_weights.iter().enumerate() {
        let slots = if padded { max_row_w } else { w };
        let mut seen = 0;
        for slot in 0..slots {
            let entry = next_int(&format!("entry {slot} of row {row}"))?;
            if entry == 0 {
                continue;
            }
            if entry > cols {
                return Err(Error::Parse(format!(
                    "row {row} entry {slot} is {entry}, above the column count {cols}"
                )));
            }
            if !m.get(row, entry - 1) {
                return Err(Error::Parse(format!(
                    "row {row} lists column {entry} but the column lists disagree"
                )));
            }
            seen += 1;
        }
        if seen != w {
            return Err(Error::Parse(format!(
                "row {row} declared weight {w} but listed {seen} entries"
            )));
        }
    }
    Ok(m)
}

/// Reads an alist file from disk.
pub fn read_alist(path: &Path) -> Result<BitMatrix> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    read_alist_str(&text)
}

/// Renders a classical PCM in alist format, padding irregular position
/// lists with zeros.
#[must_use]
pub fn write_alist_str(m: &BitMatrix) -> String {
    let rows = m.nrows();
    let cols = m.ncols();
    let col_positions: Vec<Vec<usize>> = (0..cols)
        .map(|c| (0..rows).filter(|&r| m.get(r, c)).collect())
        .collect();
    let row_positions: Vec<Vec<usize>> = (0..rows)
        .map(|r| m.row(r).iter_ones().collect())
        .collect();
    let max_col_w = col_positions.iter().map(Vec::len).max().unwrap_or(0);
    let max_row_w = row_positions.iter().map(Vec::len).max().unwrap_or(0);

    let mut out = String::new();
    out.push_str(&format!("{cols} {rows}\n{max_col_w} {max_row_w}\n"));
    let weights = |ps: &[Vec<usize>]| {
        ps.iter()
            .map(|p| p.len().to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    out.push_str(&weights(&col_positions));
    out.push('\n');
    out.push_str(&weights(&row_positions));
    out.push('\n');
    let padded_line = |positions: &[usize], width: usize| {
        let mut entries: Vec<String> = positions.iter().map(|p| (p + 1).to_string()).collect();
        entries.resize(width, "0".to_string());
        entries.join(" ")
    };
    for p in &col_positions {
        out.push_str(&padded_line(p, max_col_w));
        out.push('\n');
    }
    for p in &row_positions {
        out.push_str(&padded_line(p, max_row_w));
        out.push('\n');
    }
    out
}

/// Writes a classical PCM to an alist file.
pub fn write_alist(path: &Path, m: &BitMatrix) -> Result<()> {
    std::fs::write(path, write_alist_str(m)).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}
