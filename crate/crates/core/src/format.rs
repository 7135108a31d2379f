//! Plain-text matrix blocks.
//!
//! ```text
//! tau 1          <- optional, only for semilinear maps
//! 2 2 2^2/1,1,1  <- rows cols fieldspec
//! 2 1
//! 0 3
//! ```
//!
//! Entries are element codes. Blank lines and lines starting with `#` are
//! ignored between blocks. Vector families (bases, tuples, flag members) are
//! written one vector per column.

use crate::error::{Error, Result};
use crate::gf::FieldCtx;
use crate::linalg::Matrix;
use crate::semilinear::SemilinearMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub field: FieldCtx,
    pub tau: Option<u32>,
    pub matrix: Matrix,
}

impl Block {
    pub fn into_map(self) -> Result<SemilinearMap> {
        let tau = self.field.automorphism(self.tau.unwrap_or(0))?;
        SemilinearMap::new(self.matrix, tau)
    }
}

fn parse_err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("line {line}: {msg}"))
}

pub fn parse_blocks(input: &str) -> Result<Vec<Block>> {
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .peekable();
    let mut blocks = Vec::new();
    while let Some((n, line)) = lines.next() {
        let mut tau = None;
        let mut header = (n, line);
        if let Some(rest) = line.strip_prefix("tau") {
            let exponent = rest.trim().parse::<u32>().map_err(|_| parse_err(n, "expected `tau <exponent>`"))?;
            tau = Some(exponent);
            header = lines.next().ok_or_else(|| parse_err(n, "`tau` line without a matrix"))?;
        }
        let (hn, hline) = header;
        let parts: Vec<&str> = hline.split_whitespace().collect();
        let [rows, cols, spec] = parts[..] else {
            return Err(parse_err(hn, "expected header `rows cols fieldspec`"));
        };
        let rows: usize = rows.parse().map_err(|_| parse_err(hn, "bad row count"))?;
        let cols: usize = cols.parse().map_err(|_| parse_err(hn, "bad column count"))?;
        if rows == 0 || cols == 0 {
            return Err(parse_err(hn, "matrix dimensions must be positive"));
        }
        let field: FieldCtx = spec.parse().map_err(|e| parse_err(hn, e))?;
        let mut codes = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let (rn, rline) = lines.next().ok_or_else(|| parse_err(hn, format!("expected {rows} rows")))?;
            let row = rline
                .split_whitespace()
                .map(|c| c.parse::<u32>().map_err(|_| parse_err(rn, format!("bad entry {c:?}"))))
                .collect::<Result<Vec<_>>>()?;
            if row.len() != cols {
                return Err(parse_err(rn, format!("expected {cols} entries, found {}", row.len())));
            }
            codes.extend(row);
        }
        let matrix = Matrix::from_codes(&field, rows, cols, &codes).map_err(|e| parse_err(hn, e))?;
        if let Some(t) = tau {
            field.automorphism(t).map_err(|e| parse_err(n, e))?;
        }
        blocks.push(Block { field, tau, matrix });
    }
    Ok(blocks)
}

pub fn write_matrix(ctx: &FieldCtx, m: &Matrix) -> String {
    let mut out = format!("{} {} {}\n", m.rows(), m.cols(), ctx.spec());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).codes().iter().map(u32::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_map(ctx: &FieldCtx, map: &SemilinearMap) -> String {
    format!("tau {}\n{}", map.tau().exponent(), write_matrix(ctx, map.matrix()))
}
