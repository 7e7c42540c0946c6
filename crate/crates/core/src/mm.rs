//! Matrix Market coordinate format for integer matrices.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};

pub const HEADER: &str = "%%MatrixMarket matrix coordinate integer general";

/// Writes `(row, column, value)` triples (0-based in, 1-based out).
pub fn write_coordinate<W: Write>(
    mut out: W,
    rows: usize,
    cols: usize,
    entries: impl IntoIterator<Item = (usize, usize, i64)>,
) -> Result<()> {
    let entries: Vec<_> = entries.into_iter().filter(|e| e.2 != 0).collect();
    writeln!(out, "{HEADER}")?;
    writeln!(out, "{rows} {cols} {}", entries.len())?;
    for (i, j, v) in entries {
        writeln!(out, "{} {} {v}", i + 1, j + 1)?;
    }
    Ok(())
}

/// Parsed coordinate matrix with 0-based indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordinateMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, i64)>,
}

pub fn read_coordinate<R: BufRead>(input: R) -> Result<CoordinateMatrix> {
    let mut lines = input.lines().enumerate();
    let (_, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "empty input".into(),
    })?;
    let header = header?;
    let lower = header.to_ascii_lowercase();
    if !lower.starts_with("%%matrixmarket matrix coordinate") || !lower.contains("general") {
        return Err(Error::Parse {
            line: 1,
            msg: format!("unsupported header {header:?}"),
        });
    }
    let mut size: Option<(usize, usize, usize)> = None;
    let mut entries = Vec::new();
    for (lineno, line) in lines {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        let err = |msg: &str| Error::Parse {
            line: lineno + 1,
            msg: msg.to_string(),
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        match size {
            None => {
                let nums: Vec<usize> = fields
                    .iter()
                    .map(|f| f.parse().map_err(|_| err("bad size line")))
                    .collect::<Result<_>>()?;
                if nums.len() != 3 {
                    return Err(err("size line needs three fields"));
                }
                size = Some((nums[0], nums[1], nums[2]));
            }
            Some((r, c, _)) => {
                if fields.len() != 3 {
                    return Err(err("entry line needs three fields"));
                }
                let i: usize = fields[0].parse().map_err(|_| err("bad row"))?;
                let j: usize = fields[1].parse().map_err(|_| err("bad column"))?;
                let v: i64 = fields[2].parse().map_err(|_| err("bad value"))?;
                if i == 0 || j == 0 || i > r || j > c {
                    return Err(err("index out of range"));
                }
                entries.push((i - 1, j - 1, v));
            }
        }
    }
    let (rows, cols, nnz) = size.ok_or(Error::Parse {
        line: 0,
        msg: "missing size line".into(),
    })?;
    if entries.len() != nnz {
        return Err(Error::Parse {
            line: 0,
            msg: format!("expected {nnz} entries, found {}", entries.len()),
        });
    }
    Ok(CoordinateMatrix { rows, cols, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let entries = vec![(0, 0, 2), (0, 1, 1), (1, 0, 1), (1, 1, 1), (2, 2, -3)];
        let mut buf = Vec::new();
        write_coordinate(&mut buf, 3, 3, entries.clone()).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with(HEADER));
        assert!(text.contains("\n3 3 5\n"));
        let m = read_coordinate(&buf[..]).unwrap();
        assert_eq!(m.entries, entries);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(read_coordinate(&b"%%MatrixMarket matrix array real general\n"[..]).is_err());
        let short = format!("{HEADER}\n2 2 2\n1 1 1\n");
        assert!(read_coordinate(short.as_bytes()).is_err());
        let out_of_range = format!("{HEADER}\n2 2 1\n3 1 1\n");
        assert!(read_coordinate(out_of_range.as_bytes()).is_err());
    }
}
