//! Tree file formats and constructor specs.
//!
//! Edge lists: first line is the vertex count, then one `u v` pair per line
//! with 0-based labels. Blank lines and `#` comments are ignored.
//! graph6 files hold one graph per line, optionally after a `>>graph6<<` header.

use std::fmt::Write as _;
use std::path::Path;

use tree_energy_core::tree::{bn_tree, build_tstar, complete_dary};
use tree_energy_core::Tree;

use crate::error::{CliError, Result};

pub fn parse_edge_list(text: &str) -> Result<Tree> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (first, header) = lines
        .next()
        .ok_or_else(|| CliError::input("edge list is empty; expected a vertex count on the first line"))?;
    let n: usize = header
        .parse()
        .map_err(|_| CliError::input(format!("line {first}: expected a vertex count, found {header:?}")))?;
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for (line, l) in lines {
        let mut parts = l.split_whitespace();
        let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(CliError::input(format!("line {line}: expected two vertex labels, found {l:?}")));
        };
        let parse = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| CliError::input(format!("line {line}: {s:?} is not a vertex label")))
        };
        let (u, v) = (parse(a)?, parse(b)?);
        if u >= n || v >= n {
            return Err(CliError::input(format!(
                "line {line}: edge {u} {v} uses a label outside 0..{n}"
            )));
        }
        edges.push((u, v));
    }
    Ok(Tree::from_edges(n, &edges)?)
}

pub fn write_edge_list(t: &Tree) -> String {
    let mut out = format!("{}\n", t.n());
    for &(u, v) in t.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn parse_graph6(line: &str) -> Result<Tree> {
    let line = line.trim();
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(CliError::input(format!("graph6: byte {b:#04x} outside the printable range")));
    }
    let (n, rest) = match bytes {
        [] => return Err(CliError::input("graph6: empty input")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(CliError::input("graph6: truncated 36-bit vertex count"));
            }
            (six_bit_number(&rest[..6]), &rest[6..])
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(CliError::input("graph6: truncated 18-bit vertex count"));
            }
            (six_bit_number(&rest[..3]), &rest[3..])
        }
        [b, rest @ ..] => ((b - 63) as usize, rest),
    };
    let pairs = n * n.saturating_sub(1) / 2;
    if rest.len() != pairs.div_ceil(6) {
        return Err(CliError::input(format!(
            "graph6: {} data bytes for {n} vertices, expected {}",
            rest.len(),
            pairs.div_ceil(6)
        )));
    }
    let bit = |k: usize| (rest[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Tree::from_edges(n, &edges)?)
}

fn six_bit_number(bytes: &[u8]) -> usize {
    bytes.iter().fold(0, |acc, &b| acc << 6 | (b - 63) as usize)
}

pub fn write_graph6(t: &Tree) -> String {
    let n = t.n();
    let mut out = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258_048 {
        out.push(126);
        out.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    }
    let pairs = n * n.saturating_sub(1) / 2;
    let mut bits = vec![0u8; pairs.div_ceil(6)];
    for &(u, v) in t.edges() {
        let (i, j) = (u.min(v), u.max(v));
        let k = j * (j - 1) / 2 + i;
        bits[k / 6] |= 1 << (5 - k % 6);
    }
    out.extend(bits.into_iter().map(|b| b + 63));
    String::from_utf8(out).expect("graph6 is ASCII")
}

pub fn read_tree_file(path: &Path) -> Result<Tree> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let is_g6 = path.extension().is_some_and(|e| e == "g6") || text.starts_with(">>graph6<<");
    let parsed = if is_g6 {
        let line = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
        parse_graph6(line)
    } else {
        parse_edge_list(&text)
    };
    parsed.map_err(|e| match e {
        CliError::Input(msg) => CliError::Input(format!("{}: {msg}", path.display())),
        other => other,
    })
}

/// A tree named on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeSpec {
    /// `cstar:d,h`, the complete d-ary tree of height h.
    Complete { d: usize, h: usize },
    /// `bn:n`, the apex tree over three complete binary trees.
    Apex(usize),
    /// `tstar:n,d`
    TStar { n: usize, d: usize },
    File(std::path::PathBuf),
}

impl std::str::FromStr for TreeSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        let numbers = |body: &str, want: usize, usage: &str| -> Result<Vec<usize>> {
            let parts: Vec<_> = body.split(',').map(str::trim).collect();
            if parts.len() != want {
                return Err(CliError::input(format!("{s:?}: expected {usage}")));
            }
            parts
                .iter()
                .map(|p| p.parse().map_err(|_| CliError::input(format!("{s:?}: {p:?} is not a count; expected {usage}"))))
                .collect()
        };
        if let Some(body) = s.strip_prefix("cstar:") {
            let v = numbers(body, 2, "cstar:d,h")?;
            Ok(TreeSpec::Complete { d: v[0], h: v[1] })
        } else if let Some(body) = s.strip_prefix("bn:") {
            Ok(TreeSpec::Apex(numbers(body, 1, "bn:n")?[0]))
        } else if let Some(body) = s.strip_prefix("tstar:") {
            let v = numbers(body, 2, "tstar:n,d")?;
            Ok(TreeSpec::TStar { n: v[0], d: v[1] })
        } else {
            Ok(TreeSpec::File(s.into()))
        }
    }
}

impl std::fmt::Display for TreeSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TreeSpec::Complete { d, h } => write!(f, "cstar:{d},{h}"),
            TreeSpec::Apex(n) => write!(f, "bn:{n}"),
            TreeSpec::TStar { n, d } => write!(f, "tstar:{n},{d}"),
            TreeSpec::File(p) => write!(f, "{}", p.display()),
        }
    }
}

impl TreeSpec {
    pub fn build(&self) -> Result<Tree> {
        Ok(match self {
            TreeSpec::Complete { d, h } => complete_dary(*d, *h)?.tree,
            TreeSpec::Apex(n) => bn_tree(*n)?,
            TreeSpec::TStar { n, d } => build_tstar(*n, *d)?,
            TreeSpec::File(p) => read_tree_file(p)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_round_trip() {
        let t = Tree::path(4);
        let text = write_edge_list(&t);
        assert_eq!(text, "4\n0 1\n1 2\n2 3\n");
        assert_eq!(parse_edge_list(&text).unwrap().edges(), t.edges());
    }

    #[test]
    fn edge_list_errors_name_the_line() {
        let err = parse_edge_list("3\n0 1\n1 x\n").unwrap_err().to_string();
        assert!(err.contains("line 3"), "{err}");
        let err = parse_edge_list("3\n0 1\n\n1 5\n").unwrap_err().to_string();
        assert!(err.contains("line 4"), "{err}");
        assert!(parse_edge_list("# nothing\n").is_err());
        assert!(parse_edge_list("4\n0 1\n2 3\n").unwrap_err().to_string().contains("disconnected"));
    }

    #[test]
    fn graph6_known_strings() {
        // P4 as 0-1-2-3 and the star K_{1,3}.
        let p4 = parse_graph6("Ch").unwrap();
        assert_eq!(p4.n(), 4);
        assert_eq!(p4.max_degree(), 2);
        assert_eq!(parse_graph6(">>graph6<<Cs").unwrap().max_degree(), 3);
        assert!(parse_graph6("C").is_err());
    }

    #[test]
    fn graph6_round_trip_large() {
        for t in [Tree::star(70), Tree::path(5), bn_tree(5).unwrap()] {
            let g = write_graph6(&t);
            let back = parse_graph6(&g).unwrap();
            assert_eq!(back.n(), t.n());
            assert_eq!(
                tree_energy_core::tree::canonical_code(&back).unwrap(),
                tree_energy_core::tree::canonical_code(&t).unwrap()
            );
        }
    }

    #[test]
    fn specs() {
        assert_eq!("bn:3".parse::<TreeSpec>().unwrap(), TreeSpec::Apex(3));
        assert_eq!("tstar:10,2".parse::<TreeSpec>().unwrap(), TreeSpec::TStar { n: 10, d: 2 });
        assert_eq!("cstar:2,3".parse::<TreeSpec>().unwrap().build().unwrap().n(), 7);
        assert!("tstar:10".parse::<TreeSpec>().is_err());
        assert!("bn:x".parse::<TreeSpec>().is_err());
    }
}
