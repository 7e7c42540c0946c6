//! LP-format export of coset models, its parser, and matrix export.

use std::fmt::Write as _;
use std::io::Write;

use num_bigint::BigUint;
use serde::Serialize;

use super::model::IlpModel;
use crate::error::{Error, Result};
use crate::mm;
use crate::young::{ActionMatrix, NumberPartition};

/// Terms per line when wrapping long expressions.
const TERMS_PER_LINE: usize = 10;

/// Largest dimension written in the dense JSON format.
pub const DENSE_JSON_LIMIT: usize = 200;

/// Renders the model in CPLEX LP format. The first line is a comment
/// recording `n` and the shape so that [`parse_lp`] can rebuild the model.
pub fn lp_string(model: &IlpModel) -> String {
    let m = model.matrix();
    let dim = m.dim();
    let mut s = String::new();
    let _ = writeln!(s, "\\ coset ILP n={} shape={}", m.n, m.shape);
    s.push_str("Maximize\n obj:");
    for j in 0..dim {
        if j > 0 && j % TERMS_PER_LINE == 0 {
            s.push_str("\n     ");
        }
        let _ = write!(s, "{} x{}", if j == 0 { "" } else { " +" }, j + 1);
    }
    s.push_str("\nSubject To\n");
    for i in 0..dim {
        let _ = write!(s, " c{}:", i + 1);
        for (t, (j, v)) in m.row(i).enumerate() {
            if t > 0 && t % TERMS_PER_LINE == 0 {
                s.push_str("\n     ");
            }
            let sign = if t == 0 { "" } else { " +" };
            if v == 1 {
                let _ = write!(s, "{sign} x{}", j + 1);
            } else {
                let _ = write!(s, "{sign} {v} x{}", j + 1);
            }
        }
        let _ = writeln!(s, " <= {}", model.rhs());
    }
    s.push_str("Bounds\n");
    for j in 0..dim {
        let _ = writeln!(s, " x{} >= 0", j + 1);
    }
    s.push_str("General\n");
    for j in 0..dim {
        s.push(' ');
        let _ = write!(s, "x{}", j + 1);
        if j % TERMS_PER_LINE == TERMS_PER_LINE - 1 || j + 1 == dim {
            s.push('\n');
        }
    }
    s.push_str("End\n");
    s
}

pub fn export_lp<W: Write>(model: &IlpModel, mut out: W) -> Result<()> {
    out.write_all(lp_string(model).as_bytes())?;
    Ok(())
}

/// Contents of an LP file in the subset written by [`export_lp`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpFile {
    pub n: Option<usize>,
    pub shape: Option<NumberPartition>,
    pub variables: usize,
    /// Sparse rows `(variable index, coefficient)`, 0-based.
    pub rows: Vec<Vec<(usize, u32)>>,
    pub rhs: Vec<BigUint>,
}

impl LpFile {
    /// Rebuilds the coset model; requires the header comment and a common
    /// right-hand side.
    pub fn to_model(&self) -> Result<IlpModel> {
        let (Some(n), Some(shape)) = (self.n, self.shape.clone()) else {
            return Err(Error::InvalidInput("LP file lacks the n/shape header comment".into()));
        };
        let rhs = self
            .rhs
            .first()
            .cloned()
            .ok_or_else(|| Error::InvalidInput("no constraints".into()))?;
        if self.rhs.iter().any(|r| *r != rhs) {
            return Err(Error::InvalidInput("right-hand sides differ".into()));
        }
        if self.rows.len() != self.variables {
            return Err(Error::InvalidInput("constraint matrix is not square".into()));
        }
        IlpModel::new(ActionMatrix::from_rows(n, shape, self.rows.clone()), rhs)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Start,
    Objective,
    Constraints,
    Bounds,
    General,
    End,
}

fn parse_var(tok: &str, line: usize) -> Result<usize> {
    tok.strip_prefix('x')
        .and_then(|d| d.parse::<usize>().ok())
        .filter(|&k| k >= 1)
        .map(|k| k - 1)
        .ok_or_else(|| Error::Parse {
            line,
            msg: format!("expected variable, found `{tok}`"),
        })
}

/// Parses terms `[coef] xK + ...`, returning `(index, coefficient)` pairs.
fn parse_terms(tokens: &[&str], line: usize) -> Result<Vec<(usize, u32)>> {
    let mut out = Vec::new();
    let mut coef: Option<u32> = None;
    for &tok in tokens {
        if tok == "+" {
            continue;
        }
        if let Ok(c) = tok.parse::<u32>() {
            coef = Some(c);
            continue;
        }
        out.push((parse_var(tok, line)?, coef.take().unwrap_or(1)));
    }
    if coef.is_some() {
        return Err(Error::Parse {
            line,
            msg: "dangling coefficient".into(),
        });
    }
    Ok(out)
}

/// Parses the LP subset written by [`export_lp`].
pub fn parse_lp(text: &str) -> Result<LpFile> {
    let mut section = Section::Start;
    let mut file = LpFile {
        n: None,
        shape: None,
        variables: 0,
        rows: Vec::new(),
        rhs: Vec::new(),
    };
    let mut objective_vars = 0usize;
    let mut pending: Vec<String> = Vec::new();
    let mut pending_line = 0usize;
    let mut general = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if let Some(comment) = trimmed.strip_prefix('\\') {
            for part in comment.split_whitespace() {
                if let Some(v) = part.strip_prefix("n=") {
                    file.n = v.parse().ok();
                } else if let Some(v) = part.strip_prefix("shape=") {
                    file.shape = v.parse().ok();
                }
            }
            continue;
        }
        if trimmed.is_empty() {
            continue;
        }
        let keyword = trimmed.to_ascii_lowercase();
        let next = match keyword.as_str() {
            "maximize" | "maximise" | "max" => Some(Section::Objective),
            "subject to" | "st" | "s.t." => Some(Section::Constraints),
            "bounds" => Some(Section::Bounds),
            "general" | "generals" | "integers" => Some(Section::General),
            "end" => Some(Section::End),
            _ => None,
        };
        if let Some(next) = next {
            section = next;
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        match section {
            Section::Start | Section::End => {
                return Err(Error::Parse {
                    line,
                    msg: format!("unexpected `{trimmed}`"),
                })
            }
            Section::Objective => {
                let body = if tokens.first().is_some_and(|t| t.ends_with(':')) {
                    &tokens[1..]
                } else {
                    &tokens[..]
                };
                for (j, c) in parse_terms(body, line)? {
                    if c != 1 || j != objective_vars {
                        return Err(Error::Parse {
                            line,
                            msg: "objective must be x1 + x2 + ... in order".into(),
                        });
                    }
                    objective_vars += 1;
                }
            }
            Section::Constraints => {
                if pending.is_empty() {
                    pending_line = line;
                }
                pending.extend(tokens.iter().map(|t| t.to_string()));
                if let Some(pos) = pending.iter().position(|t| t == "<=") {
                    let name_skip = usize::from(pending.first().is_some_and(|t| t.ends_with(':')));
                    let lhs: Vec<&str> = pending[name_skip..pos].iter().map(String::as_str).collect();
                    let row = parse_terms(&lhs, pending_line)?;
                    let rhs = pending
                        .get(pos + 1)
                        .and_then(|t| t.parse::<BigUint>().ok())
                        .ok_or_else(|| Error::Parse {
                            line,
                            msg: "expected nonnegative integer right-hand side".into(),
                        })?;
                    if pending.len() != pos + 2 {
                        return Err(Error::Parse {
                            line,
                            msg: "trailing tokens after right-hand side".into(),
                        });
                    }
                    file.rows.push(row);
                    file.rhs.push(rhs);
                    pending.clear();
                }
            }
            Section::Bounds => {
                if tokens.len() != 3 || tokens[1] != ">=" || tokens[2] != "0" {
                    return Err(Error::Parse {
                        line,
                        msg: "only `x >= 0` bounds are supported".into(),
                    });
                }
                parse_var(tokens[0], line)?;
            }
            Section::General => {
                for tok in tokens {
                    let j = parse_var(tok, line)?;
                    if j != general {
                        return Err(Error::Parse {
                            line,
                            msg: "integer variables must be listed in order".into(),
                        });
                    }
                    general += 1;
                }
            }
        }
    }
    if section != Section::End {
        return Err(Error::Parse {
            line: text.lines().count(),
            msg: "missing End".into(),
        });
    }
    if !pending.is_empty() {
        return Err(Error::Parse {
            line: pending_line,
            msg: "unterminated constraint".into(),
        });
    }
    if general != objective_vars {
        return Err(Error::Parse {
            line: 0,
            msg: "integer section does not cover every variable".into(),
        });
    }
    if file.rows.iter().flatten().any(|&(j, _)| j >= objective_vars) {
        return Err(Error::Parse {
            line: 0,
            msg: "constraint uses an undeclared variable".into(),
        });
    }
    file.variables = objective_vars;
    Ok(file)
}

/// Output formats for [`export_matrix`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixFormat {
    MatrixMarket,
    DenseJson,
}

#[derive(Serialize)]
struct DenseMatrix<'a> {
    n: usize,
    shape: String,
    dim: usize,
    rows: &'a [Vec<u32>],
}

/// Writes the action matrix as Matrix Market coordinates or, for
/// dimension at most [`DENSE_JSON_LIMIT`], as dense JSON.
pub fn export_matrix<W: Write>(matrix: &ActionMatrix, format: MatrixFormat, mut out: W) -> Result<()> {
    match format {
        MatrixFormat::MatrixMarket => {
            let entries = (0..matrix.dim()).flat_map(|i| matrix.row(i).map(move |(j, v)| (i, j, v as i64)));
            mm::write_coordinate(out, matrix.dim(), matrix.dim(), entries)
        }
        MatrixFormat::DenseJson => {
            if matrix.dim() > DENSE_JSON_LIMIT {
                return Err(Error::limit("dense matrix dimension", matrix.dim(), DENSE_JSON_LIMIT));
            }
            let dense = matrix.to_dense();
            let view = DenseMatrix {
                n: matrix.n,
                shape: matrix.shape.to_string(),
                dim: matrix.dim(),
                rows: &dense,
            };
            serde_json::to_writer(&mut out, &view)?;
            writeln!(out)?;
            Ok(())
        }
    }
}
