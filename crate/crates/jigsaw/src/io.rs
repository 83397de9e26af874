//! Text file formats.
//!
//! All formats are line based with whitespace separated integers.
//!
//! * Puzzle: `n q`, then `n` lines of `n+1` horizontal-edge colors (rows
//!   `j = 1..n`, `i = 0..n`), then `n+1` lines of `n` vertical-edge colors
//!   (rows `j = 0..n`, `i = 1..n`).
//! * Piece bag: `n q`, then `n²` lines `right up left down`, one per piece id.
//! * Assembly: `n`, then `n` lines (rows `1..n` bottom to top) of `n` piece ids.
//! * Rotation-model puzzle: `n q`, then `n²` lines `right up left down` giving
//!   the jigs at each location, row-major from `(1,1)`.
//! * Window map: `k`, then lines `wx wy -> px py`.
//!
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use jigsaw_core::constraint::{WindowCoord, WindowMap};
use jigsaw_core::variant::{JigInvolution, VariantPuzzle};
use jigsaw_core::{Assembly, Color, GridCoord, Piece, PieceBag, PieceId, Puzzle};

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("unexpected end of input, expected {0}")]
    Truncated(&'static str),
    #[error("trailing content at line {0}")]
    Trailing(usize),
    #[error("invalid content: {0}")]
    Invalid(String),
}

struct Lines<'a> {
    inner: std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, &'a str)>> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.trim()))
                .filter(|(_, l)| !l.is_empty() && !l.starts_with('#')),
        );
        Self { inner: it.peekable() }
    }

    fn next_line(&mut self, what: &'static str) -> Result<(usize, &'a str), ParseError> {
        self.inner.next().ok_or(ParseError::Truncated(what))
    }

    fn numbers<T: std::str::FromStr>(&mut self, what: &'static str, count: usize) -> Result<Vec<T>, ParseError> {
        let (line, text) = self.next_line(what)?;
        let vals = text
            .split_whitespace()
            .map(|t| t.parse::<T>().map_err(|_| ParseError::Syntax { line, msg: format!("bad number {t:?} in {what}") }))
            .collect::<Result<Vec<T>, _>>()?;
        if vals.len() != count {
            return Err(ParseError::Syntax { line, msg: format!("expected {count} values in {what}, found {}", vals.len()) });
        }
        Ok(vals)
    }

    fn finish(mut self) -> Result<(), ParseError> {
        match self.inner.next() {
            Some((line, _)) => Err(ParseError::Trailing(line)),
            None => Ok(()),
        }
    }
}

fn header(lines: &mut Lines<'_>) -> Result<(usize, u32), ParseError> {
    let (line, text) = lines.next_line("header")?;
    let parts: Vec<&str> = text.split_whitespace().collect();
    let bad = || ParseError::Syntax { line, msg: "expected header \"n q\"".into() };
    if parts.len() != 2 {
        return Err(bad());
    }
    Ok((parts[0].parse().map_err(|_| bad())?, parts[1].parse().map_err(|_| bad())?))
}

pub fn parse_puzzle(text: &str) -> Result<Puzzle, ParseError> {
    let mut lines = Lines::new(text);
    let (n, q) = header(&mut lines)?;
    let mut h = Vec::with_capacity(n * (n + 1));
    for _ in 0..n {
        h.extend(lines.numbers::<Color>("horizontal colors", n + 1)?);
    }
    let mut v = Vec::with_capacity(n * (n + 1));
    for _ in 0..=n {
        v.extend(lines.numbers::<Color>("vertical colors", n)?);
    }
    lines.finish()?;
    Puzzle::from_colors(n, q, h, v).map_err(|e| ParseError::Invalid(e.to_string()))
}

pub fn format_puzzle(p: &Puzzle) -> String {
    let n = p.n();
    let mut out = format!("{} {}\n", n, p.q());
    for row in p.hcolors().chunks(n + 1).chain(p.vcolors().chunks(n)) {
        push_row(&mut out, row);
    }
    out
}

fn push_row<T: std::fmt::Display>(out: &mut String, row: &[T]) {
    for (i, c) in row.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        write!(out, "{c}").unwrap();
    }
    out.push('\n');
}

fn parse_quads(lines: &mut Lines<'_>, count: usize, what: &'static str) -> Result<Vec<[Color; 4]>, ParseError> {
    (0..count).map(|_| lines.numbers::<Color>(what, 4).map(|v| [v[0], v[1], v[2], v[3]])).collect()
}

pub fn parse_bag(text: &str) -> Result<PieceBag, ParseError> {
    let mut lines = Lines::new(text);
    let (n, q) = header(&mut lines)?;
    let pieces = parse_quads(&mut lines, n * n, "piece")?.into_iter().map(Piece::from_array).collect();
    lines.finish()?;
    PieceBag::new(n, q, pieces).map_err(|e| ParseError::Invalid(e.to_string()))
}

pub fn format_bag(bag: &PieceBag) -> String {
    let mut out = format!("{} {}\n", bag.n(), bag.q());
    for p in bag.pieces() {
        push_row(&mut out, &p.colors());
    }
    out
}

pub fn parse_assembly(text: &str) -> Result<Assembly, ParseError> {
    let mut lines = Lines::new(text);
    let (line, first) = lines.next_line("size")?;
    let n: usize = first.parse().map_err(|_| ParseError::Syntax { line, msg: "expected side length".into() })?;
    let mut placement = Vec::with_capacity(n * n);
    for _ in 0..n {
        placement.extend(lines.numbers::<u32>("assembly row", n)?.into_iter().map(PieceId));
    }
    lines.finish()?;
    Assembly::new(n, placement).map_err(|e| ParseError::Invalid(e.to_string()))
}

pub fn format_assembly(a: &Assembly) -> String {
    let mut out = format!("{}\n", a.n());
    for row in a.placement().chunks(a.n()) {
        let ids: Vec<u32> = row.iter().map(|id| id.0).collect();
        push_row(&mut out, &ids);
    }
    out
}

pub fn parse_variant(text: &str, iota: JigInvolution) -> Result<VariantPuzzle, ParseError> {
    let mut lines = Lines::new(text);
    let (n, q) = header(&mut lines)?;
    let jigs = parse_quads(&mut lines, n * n, "location")?;
    lines.finish()?;
    VariantPuzzle::new(n, q, iota, jigs).map_err(|e| ParseError::Invalid(e.to_string()))
}

pub fn format_variant(vp: &VariantPuzzle) -> String {
    let mut out = format!("{} {}\n", vp.n(), vp.q());
    for jigs in vp.all_jigs() {
        push_row(&mut out, jigs);
    }
    out
}

pub fn parse_window_map(text: &str) -> Result<WindowMap, ParseError> {
    let mut lines = Lines::new(text);
    let (line, first) = lines.next_line("radius")?;
    let k: i32 = first.parse().map_err(|_| ParseError::Syntax { line, msg: "expected radius k".into() })?;
    let mut pairs = Vec::new();
    while let Some((line, text)) = lines.inner.next() {
        let bad = || ParseError::Syntax { line, msg: "expected \"wx wy -> px py\"".into() };
        let (lhs, rhs) = text.split_once("->").ok_or_else(bad)?;
        let nums = |s: &str| -> Result<Vec<i32>, ParseError> {
            let v = s.split_whitespace().map(|t| t.parse::<i32>()).collect::<Result<Vec<_>, _>>().map_err(|_| bad())?;
            if v.len() == 2 {
                Ok(v)
            } else {
                Err(bad())
            }
        };
        let (w, p) = (nums(lhs)?, nums(rhs)?);
        pairs.push((WindowCoord::new(w[0], w[1]), GridCoord::new(p[0], p[1])));
    }
    WindowMap::new(k, pairs).map_err(|e| ParseError::Invalid(e.to_string()))
}

pub fn format_window_map(wm: &WindowMap) -> String {
    let mut out = format!("{}\n", wm.k());
    for (w, p) in wm.iter() {
        writeln!(out, "{} {} -> {} {}", w.x, w.y, p.col, p.row).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use jigsaw_core::variant::{make_involution, InvolutionKind};
    use jigsaw_core::{disassemble, generate, RngSeed};

    #[test]
    fn puzzle_round_trip() {
        let p = generate(5, 7, RngSeed(1)).unwrap();
        assert_eq!(parse_puzzle(&format_puzzle(&p)).unwrap(), p);
    }

    #[test]
    fn bag_and_assembly_round_trip() {
        let (bag, planted) = disassemble(&generate(4, 9, RngSeed(2)).unwrap(), RngSeed(3));
        assert_eq!(parse_bag(&format_bag(&bag)).unwrap(), bag);
        assert_eq!(parse_assembly(&format_assembly(&planted)).unwrap(), planted);
    }

    #[test]
    fn small_puzzle_layout() {
        let text = "# one piece\n1 3\n1 2\n\n3\n1\n";
        let p = parse_puzzle(text).unwrap();
        assert_eq!(p.piece_at(GridCoord::new(1, 1)).unwrap(), Piece::new(2, 1, 1, 3));
    }

    #[test]
    fn errors_name_lines() {
        assert!(matches!(parse_puzzle("1 3\n1 x\n3\n1\n"), Err(ParseError::Syntax { line: 2, .. })));
        assert!(matches!(parse_puzzle("1 3\n1 2\n3\n"), Err(ParseError::Truncated(_))));
        assert!(matches!(parse_puzzle("1 3\n1 2\n3\n1\n5\n"), Err(ParseError::Trailing(5))));
        assert!(matches!(parse_puzzle("1 3\n1 4\n3\n1\n"), Err(ParseError::Invalid(_))));
        assert!(matches!(parse_assembly("2\n0 1\n2 2\n"), Err(ParseError::Invalid(_))));
    }

    #[test]
    fn variant_round_trip() {
        let iota = make_involution(6, InvolutionKind::Pairing).unwrap();
        let vp = jigsaw_core::gen::generate_variant(3, 6, &iota, RngSeed(4)).unwrap();
        assert_eq!(parse_variant(&format_variant(&vp), iota).unwrap(), vp);
    }

    #[test]
    fn window_map_round_trip() {
        let text = "1\n-1 -1 -> 3 3\n0 0 -> 5 5\n1 0 -> 6 5\n";
        let wm = parse_window_map(text).unwrap();
        assert_eq!(wm.len(), 3);
        assert_eq!(parse_window_map(&format_window_map(&wm)).unwrap(), wm);
        assert!(parse_window_map("1\n0 0 => 1 1\n").is_err());
    }
}
