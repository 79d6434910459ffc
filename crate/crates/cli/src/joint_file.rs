//! Text format for a trivariate joint distribution:
//!
//! ```text
//! alphabet x y t
//! 0 0 00 0.25
//! 0 1 01 0.25
//! ```
//!
//! Symbols are whitespace-free tokens; alphabets are ordered by first appearance.
//! Cells not listed have probability zero. `#` starts a comment.

use anyhow::{anyhow, bail, Context, Result};
use pidnet_core::{Alphabet, Joint3};
use std::collections::HashMap;

struct Symbols {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl Symbols {
    fn new() -> Self {
        Symbols {
            names: Vec::new(),
            index: HashMap::new(),
        }
    }

    fn intern(&mut self, s: &str) -> usize {
        if let Some(&i) = self.index.get(s) {
            return i;
        }
        self.names.push(s.to_string());
        self.index.insert(s.to_string(), self.names.len() - 1);
        self.names.len() - 1
    }
}

pub fn parse_joint(text: &str) -> Result<Joint3> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or_else(|| anyhow!("empty joint file"))?;
    if header.split_whitespace().collect::<Vec<_>>() != ["alphabet", "x", "y", "t"] {
        bail!("line {hline}: expected header `alphabet x y t`, found `{header}`");
    }
    let (mut xs, mut ys, mut ts) = (Symbols::new(), Symbols::new(), Symbols::new());
    let mut cells: Vec<((usize, usize, usize), f64, usize)> = Vec::new();
    for (lineno, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [x, y, t, p] = fields[..] else {
            bail!("line {lineno}: expected `x y t prob`, found {} fields", fields.len());
        };
        let prob: f64 = p.parse().with_context(|| format!("line {lineno}: invalid probability `{p}`"))?;
        if !prob.is_finite() || prob < 0.0 {
            bail!("line {lineno}: probability {prob} must be finite and nonnegative");
        }
        let key = (xs.intern(x), ys.intern(y), ts.intern(t));
        if let Some((_, _, first)) = cells.iter().find(|(k, _, _)| *k == key) {
            bail!("line {lineno}: cell ({x}, {y}, {t}) already given on line {first}");
        }
        cells.push((key, prob, lineno));
    }
    if cells.is_empty() {
        bail!("line {hline}: no cells after the header");
    }
    let (nx, ny, nt) = (xs.names.len(), ys.names.len(), ts.names.len());
    let mut table = vec![0.0; nx * ny * nt];
    for ((a, b, c), p, _) in &cells {
        table[(a * ny + b) * nt + c] = *p;
    }
    let alphabet = |s: Symbols| Alphabet::new(s.names).expect("interned symbols are unique");
    Joint3::new(alphabet(xs), alphabet(ys), alphabet(ts), table)
        .map_err(|e| anyhow!("invalid distribution ({} cells, last on line {}): {e}", cells.len(), cells.last().unwrap().2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use pidnet_core::Axis;

    #[test]
    fn parses_two_bit_copy() {
        let j = parse_joint("# copy\nalphabet x y t\n0 0 00 0.25\n0 1 01 0.25\n1 0 10 .25\n1 1 11 0.25\n").unwrap();
        assert_eq!(j.shape(), (2, 2, 4));
        assert_eq!(j.alphabet(Axis::T).symbols()[2], "10");
        assert_eq!(j.p(1, 0, 2), 0.25);
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_joint("alphabet x y t\n0 0 0 0.5\n0 1 x\n").unwrap_err().to_string();
        assert!(err.contains("line 3"), "{err}");
        let err = parse_joint("alphabet x y t\n0 0 0 0.5\n0 0 0 0.5\n").unwrap_err().to_string();
        assert!(err.contains("line 3") && err.contains("line 2"), "{err}");
        let err = parse_joint("x y t\n").unwrap_err().to_string();
        assert!(err.contains("line 1"), "{err}");
        let err = parse_joint("alphabet x y t\n0 0 0 abc\n").unwrap_err().to_string();
        assert!(err.contains("line 2"), "{err}");
    }

    #[test]
    fn rejects_unnormalized() {
        let err = parse_joint("alphabet x y t\n0 0 0 0.45\n1 1 1 0.45\n").unwrap_err().to_string();
        assert!(err.contains("sum to 0.9"), "{err}");
    }
}
