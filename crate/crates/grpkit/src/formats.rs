//! Text formats for groups (`.grp`), matrices and modules.
//!
//! ```text
//! # A4
//! degree 4
//! gen (1 2 3)
//! gen (1 2)(3 4)
//! ```
//!
//! A matrix is a `matrix p rows cols` header followed by one line of
//! residues per row. A module is the `.grp` text of its group, a
//! `module p dim ngens` header, and one matrix per generator.

use std::fmt::Write as _;

use grpkit_core::gf::check_modulus;
use grpkit_core::{FpModule, GFMatrix, PermGroup, Permutation};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Core(#[from] grpkit_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        msg: msg.into(),
    }
}

/// Non-blank lines with comments stripped, numbered from 1.
struct Lines<'a> {
    items: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let items = text
            .lines()
            .enumerate()
            .filter_map(|(i, l)| {
                let l = l.split('#').next().unwrap_or("").trim();
                (!l.is_empty()).then_some((i + 1, l))
            })
            .collect();
        Lines { items, pos: 0 }
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.items.get(self.pos).copied()
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        let x = self.peek();
        self.pos += 1;
        x
    }

    fn last_line(&self) -> usize {
        self.items.last().map_or(0, |x| x.0)
    }

    fn expect(&mut self, what: &str) -> Result<(usize, &'a str), FormatError> {
        let line = self.last_line();
        self.next().ok_or_else(|| syntax(line, format!("expected {what}, found end of input")))
    }
}

fn header(line: usize, text: &str, keyword: &str, count: usize) -> Result<Vec<usize>, FormatError> {
    let mut toks = text.split_whitespace();
    if toks.next() != Some(keyword) {
        return Err(syntax(line, format!("expected `{keyword}` header")));
    }
    let nums: Vec<usize> = toks
        .map(|t| t.parse().map_err(|_| syntax(line, format!("bad number {t:?}"))))
        .collect::<Result<_, _>>()?;
    if nums.len() != count {
        return Err(syntax(line, format!("`{keyword}` takes {count} numbers")));
    }
    Ok(nums)
}

fn read_grp(lines: &mut Lines<'_>) -> Result<PermGroup, FormatError> {
    let (line, text) = lines.expect("`degree N`")?;
    let degree = header(line, text, "degree", 1)?[0];
    let mut gens = Vec::new();
    while let Some((line, text)) = lines.peek() {
        let Some(rest) = text.strip_prefix("gen") else { break };
        lines.next();
        let p = Permutation::parse_cycles(degree, rest)
            .map_err(|e| syntax(line, e.to_string()))?;
        gens.push(p);
    }
    Ok(PermGroup::new(degree, gens)?)
}

pub fn parse_grp(text: &str) -> Result<PermGroup, FormatError> {
    let mut lines = Lines::new(text);
    let g = read_grp(&mut lines)?;
    if let Some((line, _)) = lines.next() {
        return Err(syntax(line, "unexpected trailing content"));
    }
    Ok(g)
}

pub fn write_grp(g: &PermGroup) -> String {
    let mut s = format!("degree {}\n", g.degree());
    for x in g.generators() {
        let _ = writeln!(s, "gen {}", x.to_cycle_string());
    }
    s
}

fn read_matrix(lines: &mut Lines<'_>) -> Result<GFMatrix, FormatError> {
    let (line, text) = lines.expect("`matrix p rows cols`")?;
    let h = header(line, text, "matrix", 3)?;
    let (p, rows, cols) = (h[0] as u32, h[1], h[2]);
    check_modulus(p).map_err(|e| syntax(line, e.to_string()))?;
    let mut data: Vec<Vec<i64>> = Vec::with_capacity(rows);
    for _ in 0..rows {
        let (line, text) = lines.expect("a matrix row")?;
        let row: Vec<i64> = text
            .split_whitespace()
            .map(|t| match t.parse::<i64>() {
                Ok(x) if (0..p as i64).contains(&x) => Ok(x),
                _ => Err(syntax(line, format!("{t:?} is not a residue mod {p}"))),
            })
            .collect::<Result<_, _>>()?;
        if row.len() != cols {
            return Err(syntax(line, format!("expected {cols} entries")));
        }
        data.push(row);
    }
    let refs: Vec<&[i64]> = data.iter().map(|r| r.as_slice()).collect();
    let mut m = GFMatrix::from_rows(p, &refs)?;
    if rows == 0 {
        m = GFMatrix::zero(p, 0, cols);
    }
    Ok(m)
}

pub fn parse_matrix(text: &str) -> Result<GFMatrix, FormatError> {
    let mut lines = Lines::new(text);
    let m = read_matrix(&mut lines)?;
    if let Some((line, _)) = lines.next() {
        return Err(syntax(line, "unexpected trailing content"));
    }
    Ok(m)
}

pub fn write_matrix(m: &GFMatrix) -> String {
    let mut s = format!("matrix {} {} {}\n", m.modulus(), m.rows(), m.cols());
    for r in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|c| m.get(r, c).to_string()).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

pub fn parse_module(text: &str) -> Result<FpModule, FormatError> {
    let mut lines = Lines::new(text);
    let g = read_grp(&mut lines)?;
    let (line, t) = lines.expect("`module p dim ngens`")?;
    let h = header(line, t, "module", 3)?;
    let (p, dim, ngens) = (h[0] as u32, h[1], h[2]);
    if ngens != g.generators().len() {
        return Err(syntax(line, format!("group has {} generators", g.generators().len())));
    }
    let mut action = Vec::with_capacity(ngens);
    for _ in 0..ngens {
        let line = lines.peek().map_or(lines.last_line(), |x| x.0);
        let m = read_matrix(&mut lines)?;
        if m.modulus() != p || m.rows() != dim || m.cols() != dim {
            return Err(syntax(line, format!("expected a {dim}x{dim} matrix over GF({p})")));
        }
        action.push(m);
    }
    if let Some((line, _)) = lines.next() {
        return Err(syntax(line, "unexpected trailing content"));
    }
    Ok(FpModule::new(g, p, action)?)
}

pub fn write_module(m: &FpModule) -> String {
    let mut s = write_grp(m.group());
    let _ = writeln!(s, "module {} {} {}", m.p(), m.dim(), m.action().len());
    for a in m.action() {
        s.push_str(&write_matrix(a));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grp_round_trip() {
        let text = "# S4\ndegree 4\n\ngen (1 2)\ngen (1 2 3 4)  # 4-cycle\n";
        let g = parse_grp(text).unwrap();
        assert_eq!(g.order(), 24);
        let again = parse_grp(&write_grp(&g)).unwrap();
        assert_eq!(again.generators(), g.generators());
    }

    #[test]
    fn grp_errors() {
        assert!(matches!(parse_grp("gen (1 2)"), Err(FormatError::Syntax { line: 1, .. })));
        assert!(matches!(parse_grp("degree 3\ngen (1 4)"), Err(FormatError::Syntax { line: 2, .. })));
        assert!(parse_grp("degree 3\ngen (1 2)\nfoo").is_err());
    }

    #[test]
    fn matrix_round_trip() {
        let m = parse_matrix("matrix 5 2 3\n1 2 3\n4 0 1\n").unwrap();
        assert_eq!(m.get(1, 0), 4);
        assert_eq!(parse_matrix(&write_matrix(&m)).unwrap(), m);
        assert!(parse_matrix("matrix 5 1 2\n1 5\n").is_err());
        assert!(parse_matrix("matrix 4 1 1\n1\n").is_err());
    }

    #[test]
    fn module_round_trip() {
        let text = "degree 2\ngen (1 2)\nmodule 2 2 1\nmatrix 2 2 2\n0 1\n1 0\n";
        let m = parse_module(text).unwrap();
        assert_eq!(m.dim(), 2);
        assert_eq!(write_module(&m), text);
        let bad = "degree 3\ngen (1 2 3)\nmodule 5 2 1\nmatrix 5 2 2\n0 1\n1 0\n";
        assert!(matches!(parse_module(bad), Err(FormatError::Core(_))));
    }
}
