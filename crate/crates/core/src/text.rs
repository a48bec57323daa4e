//! Plain-text file formats.
//!
//! All formats are line oriented: `#` starts a comment line and blank lines
//! are ignored. Parse errors carry the 1-based line number.
//!
//! - code file: one `0/1` string per line, all of the same length;
//! - generator file: `n=<int>` header, then one pseudomonomial per line;
//! - pseudomonomial file: optional `n=<int>` header, then one pseudomonomial;
//! - hom file: `n=<int> m=<int>` header, then `x<i> -> <rhs>` for every
//!   `i` in `1..=n`, with `rhs` one of `0`, `1`, `x<j>`, `1-x<j>` (products
//!   are parsed so that they can be rejected by validation);
//! - realization file, point form: `points=<N> sets=<n>` header, then `N`
//!   rows of `n` bits;
//! - realization file, interval form: `intervals sets=<n> universe=[a,b)`
//!   header, then `set <i>: [a1,b1) [a2,b2) ...` per set, endpoints being
//!   integers or `p/q`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::codes::{Code, Codeword};
use crate::error::{Error, Result};
use crate::homs::{NipHom, RawImage, VarImage};
use crate::ideals::GeneratorSet;
use crate::pseudo::Pseudomonomial;
use crate::realize::interval::{fmt_rational, parse_rational};
use crate::realize::{Cover, Interval, IntervalCover, IntervalSet};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Attaches a line number to errors raised by line-agnostic parsers.
fn at_line(line: usize, err: Error) -> Error {
    match err {
        Error::Parse { line: 0, message } => Error::Parse { line, message },
        Error::Parse { .. } => err,
        other => parse_err(line, other.to_string()),
    }
}

/// Non-blank, non-comment lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_key_usize(line: usize, token: &str, key: &str) -> Result<usize> {
    let value = token
        .strip_prefix(key)
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| parse_err(line, format!("expected {key}=<int>, found {token:?}")))?;
    value
        .trim()
        .parse()
        .map_err(|_| parse_err(line, format!("bad value for {key}: {value:?}")))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParsedCode {
    pub code: Code,
    /// Line numbers of repeated codewords, which were dropped.
    pub duplicates: Vec<usize>,
}

/// Parses a code file. `n` must be given when the file has no codewords.
pub fn parse_code(text: &str, n: Option<usize>) -> Result<ParsedCode> {
    let mut words = Vec::new();
    for (line, content) in content_lines(text) {
        let compact: String = content.chars().filter(|c| !c.is_whitespace()).collect();
        let word: Codeword = compact.parse().map_err(|e| at_line(line, e))?;
        words.push((line, word));
    }
    let n = match (n, words.first()) {
        (Some(n), _) => n,
        (None, Some((_, w))) => w.len(),
        (None, None) => {
            return Err(parse_err(
                0,
                "cannot infer the word length of an empty code; pass n explicitly",
            ))
        }
    };
    let mut code = Code::empty(n)?;
    let mut duplicates = Vec::new();
    for (line, word) in words {
        if word.len() != n {
            return Err(parse_err(
                line,
                format!("codeword {word} has length {}, expected {n}", word.len()),
            ));
        }
        if !code.insert(word)? {
            duplicates.push(line);
        }
    }
    Ok(ParsedCode { code, duplicates })
}

pub fn write_code(code: &Code) -> String {
    code.iter().fold(String::new(), |mut out, w| {
        let _ = writeln!(out, "{w}");
        out
    })
}

fn parse_n_header(line: usize, content: &str) -> Result<usize> {
    let n = parse_key_usize(line, content, "n")?;
    if n == 0 {
        return Err(parse_err(line, "n must be positive"));
    }
    Ok(n)
}

/// Parses a generator file. The constant 0 is rejected.
pub fn parse_generators(text: &str) -> Result<GeneratorSet> {
    let mut lines = content_lines(text);
    let (line, header) = lines
        .next()
        .ok_or_else(|| parse_err(0, "missing n=<int> header"))?;
    let n = parse_n_header(line, header)?;
    let gens = lines
        .map(|(line, content)| Pseudomonomial::parse(n, content).map_err(|e| at_line(line, e)))
        .collect::<Result<Vec<_>>>()?;
    GeneratorSet::new(n, gens)
}

pub fn write_generators(gens: &GeneratorSet) -> String {
    let mut out = format!("n={}\n", gens.n());
    for g in gens.gens() {
        let _ = writeln!(out, "{g}");
    }
    out
}

/// Whether the first content line is an `n=` header (generator file) rather
/// than a codeword.
pub fn looks_like_generators(text: &str) -> bool {
    content_lines(text)
        .next()
        .is_some_and(|(_, l)| l.starts_with("n="))
}

/// Parses a single pseudomonomial with an optional `n=` header. Without a
/// header, `n` must be supplied.
pub fn parse_pm_file(text: &str, n: Option<usize>) -> Result<Pseudomonomial> {
    let mut lines = content_lines(text).peekable();
    let mut ambient = n;
    if let Some(&(line, first)) = lines.peek() {
        if first.starts_with("n=") {
            let declared = parse_n_header(line, first)?;
            if let Some(expected) = n {
                if expected != declared {
                    return Err(Error::AmbientMismatch {
                        left: declared,
                        right: expected,
                    });
                }
            }
            ambient = Some(declared);
            lines.next();
        }
    }
    let (line, content) = lines
        .next()
        .ok_or_else(|| parse_err(0, "missing pseudomonomial"))?;
    let n = ambient.ok_or_else(|| parse_err(line, "ambient size unknown; add an n=<int> header"))?;
    let f = Pseudomonomial::parse(n, content).map_err(|e| match e {
        Error::IndexOutOfRange { .. } => e,
        other => at_line(line, other),
    })?;
    if let Some((extra, _)) = lines.next() {
        return Err(parse_err(extra, "expected a single pseudomonomial"));
    }
    Ok(f)
}

/// A parsed but unvalidated hom file.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RawHom {
    pub n: usize,
    pub m: usize,
    pub images: Vec<RawImage>,
}

impl RawHom {
    pub fn validate(&self) -> Result<NipHom> {
        NipHom::validate(self.n, self.m, &self.images)
    }
}

fn take_index(s: &str) -> Option<(usize, &str)> {
    let end = s.find(|c: char| !c.is_ascii_digit()).unwrap_or(s.len());
    if end == 0 {
        return None;
    }
    s[..end].parse().ok().map(|i| (i, &s[end..]))
}

/// Parses a right-hand side as a product of literals `0`, `1`, `x<j>`,
/// `1-x<j>` and `(1-x<j>)`, optionally separated by `*`.
pub fn parse_image(text: &str) -> Result<RawImage> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let err = |msg: String| parse_err(0, msg);
    if compact.is_empty() {
        return Err(err("empty image".into()));
    }
    let mut rest = compact.as_str();
    let mut factors = Vec::new();
    while !rest.is_empty() {
        let (factor, after) = if let Some(r) = rest.strip_prefix("(1-x") {
            let (j, r) = take_index(r).ok_or_else(|| err(format!("bad factor in {compact:?}")))?;
            let r = r
                .strip_prefix(')')
                .ok_or_else(|| err(format!("unbalanced parenthesis in {compact:?}")))?;
            (VarImage::NegVar(j), r)
        } else if let Some(r) = rest.strip_prefix("(x") {
            let (j, r) = take_index(r).ok_or_else(|| err(format!("bad factor in {compact:?}")))?;
            let r = r
                .strip_prefix(')')
                .ok_or_else(|| err(format!("unbalanced parenthesis in {compact:?}")))?;
            (VarImage::Var(j), r)
        } else if let Some(r) = rest.strip_prefix("1-x") {
            let (j, r) = take_index(r).ok_or_else(|| err(format!("bad factor in {compact:?}")))?;
            (VarImage::NegVar(j), r)
        } else if let Some(r) = rest.strip_prefix('x') {
            let (j, r) = take_index(r).ok_or_else(|| err(format!("bad factor in {compact:?}")))?;
            (VarImage::Var(j), r)
        } else if let Some(r) = rest.strip_prefix('0') {
            (VarImage::Zero, r)
        } else if let Some(r) = rest.strip_prefix('1') {
            (VarImage::One, r)
        } else {
            return Err(err(format!("unrecognized image {compact:?}")));
        };
        if let VarImage::Var(0) | VarImage::NegVar(0) = factor {
            return Err(err("variable indices start at 1".into()));
        }
        if after.starts_with(|c: char| c.is_ascii_digit()) {
            return Err(err(format!("unrecognized image {compact:?}")));
        }
        factors.push(factor);
        rest = after.strip_prefix('*').unwrap_or(after);
        if after.starts_with('*') && rest.is_empty() {
            return Err(err(format!("dangling '*' in {compact:?}")));
        }
    }
    Ok(RawImage::new(factors))
}

pub fn parse_hom(text: &str) -> Result<RawHom> {
    let mut lines = content_lines(text);
    let (line, header) = lines
        .next()
        .ok_or_else(|| parse_err(0, "missing n=<int> m=<int> header"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 2 {
        return Err(parse_err(line, "expected header n=<int> m=<int>"));
    }
    let n = parse_key_usize(line, tokens[0], "n")?;
    let m = parse_key_usize(line, tokens[1], "m")?;
    if n == 0 || m == 0 {
        return Err(parse_err(line, "n and m must be positive"));
    }
    let mut images: Vec<Option<RawImage>> = vec![None; n];
    for (line, content) in lines {
        let (lhs, rhs) = content
            .split_once("->")
            .ok_or_else(|| parse_err(line, "expected x<i> -> <image>"))?;
        let i = lhs
            .trim()
            .strip_prefix('x')
            .and_then(|d| d.parse::<usize>().ok())
            .ok_or_else(|| parse_err(line, format!("bad source variable {:?}", lhs.trim())))?;
        if i == 0 || i > n {
            return Err(parse_err(line, format!("source x{i} out of range 1..={n}")));
        }
        if images[i - 1].is_some() {
            return Err(parse_err(line, format!("x{i} is mapped twice")));
        }
        images[i - 1] = Some(parse_image(rhs).map_err(|e| at_line(line, e))?);
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(i, img)| img.ok_or_else(|| parse_err(0, format!("no image given for x{}", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    Ok(RawHom { n, m, images })
}

pub fn write_hom(phi: &NipHom) -> String {
    let mut out = format!("n={} m={}\n", phi.n(), phi.m());
    for (i, img) in phi.images().iter().enumerate() {
        let _ = writeln!(out, "x{} -> {img}", i + 1);
    }
    out
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Realization {
    Points(Cover),
    Intervals(IntervalCover),
}

impl Realization {
    pub fn code(&self) -> Code {
        match self {
            Realization::Points(c) => c.code(),
            Realization::Intervals(c) => c.code(),
        }
    }
}

fn parse_interval_token(line: usize, token: &str) -> Result<Interval> {
    let inner = token
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| parse_err(line, format!("expected [a,b), found {token:?}")))?;
    let (a, b) = inner
        .split_once(',')
        .ok_or_else(|| parse_err(line, format!("expected [a,b), found {token:?}")))?;
    let a = parse_rational(a).map_err(|e| at_line(line, e))?;
    let b = parse_rational(b).map_err(|e| at_line(line, e))?;
    Interval::new(a, b).map_err(|e| at_line(line, e))
}

/// Splits `[a,b) [c, d)` into interval tokens with inner whitespace removed.
fn interval_tokens(text: &str) -> Vec<String> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut tokens = Vec::new();
    let mut current = String::new();
    for c in compact.chars() {
        current.push(c);
        if c == ')' {
            tokens.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        tokens.push(current);
    }
    tokens
}

pub fn parse_realization(text: &str) -> Result<Realization> {
    let mut lines = content_lines(text);
    let (line, header) = lines
        .next()
        .ok_or_else(|| parse_err(0, "missing realization header"))?;
    if let Some(rest) = header.strip_prefix("intervals") {
        let sets_token = rest
            .split_whitespace()
            .find(|t| t.starts_with("sets="))
            .ok_or_else(|| parse_err(line, "missing sets=<int>"))?;
        let n = parse_key_usize(line, sets_token, "sets")?;
        let universe_text = rest
            .split_once("universe=")
            .map(|(_, u)| u)
            .ok_or_else(|| parse_err(line, "missing universe=[a,b)"))?;
        let universe_tokens = interval_tokens(universe_text);
        let universe = match universe_tokens.as_slice() {
            [u] => parse_interval_token(line, u)?,
            _ => return Err(parse_err(line, "universe must be one interval [a,b)")),
        };
        let mut sets: Vec<Option<IntervalSet>> = vec![None; n];
        for (line, content) in lines {
            let (label, body) = content
                .split_once(':')
                .ok_or_else(|| parse_err(line, "expected set <i>: [a,b) ..."))?;
            let i = label
                .trim()
                .strip_prefix("set")
                .and_then(|d| d.trim().parse::<usize>().ok())
                .ok_or_else(|| parse_err(line, format!("bad set label {:?}", label.trim())))?;
            if i == 0 || i > n {
                return Err(parse_err(line, format!("set {i} out of range 1..={n}")));
            }
            if sets[i - 1].is_some() {
                return Err(parse_err(line, format!("set {i} given twice")));
            }
            let parts = interval_tokens(body)
                .iter()
                .map(|t| parse_interval_token(line, t))
                .collect::<Result<Vec<_>>>()?;
            sets[i - 1] = Some(IntervalSet::new(parts));
        }
        let sets = sets
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.ok_or_else(|| parse_err(0, format!("set {} is missing", i + 1))))
            .collect::<Result<Vec<_>>>()?;
        let cover = IntervalCover::new(universe, sets).map_err(|e| at_line(line, e))?;
        return Ok(Realization::Intervals(cover));
    }

    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 2 {
        return Err(parse_err(
            line,
            "expected header points=<N> sets=<n> or intervals sets=<n> universe=[a,b)",
        ));
    }
    let count = parse_key_usize(line, tokens[0], "points")?;
    let n = parse_key_usize(line, tokens[1], "sets")?;
    if n == 0 {
        return Err(parse_err(line, "sets must be positive"));
    }
    let mut rows = Vec::with_capacity(count);
    for (line, content) in lines {
        let compact: String = content.chars().filter(|c| !c.is_whitespace()).collect();
        let row: Codeword = compact.parse().map_err(|e| at_line(line, e))?;
        if row.len() != n {
            return Err(parse_err(
                line,
                format!("row has {} entries, expected {n}", row.len()),
            ));
        }
        rows.push(row);
    }
    if rows.len() != count {
        return Err(parse_err(
            0,
            format!("header declares {count} points, found {}", rows.len()),
        ));
    }
    Ok(Realization::Points(Cover::from_incidence(&rows, n)?))
}

pub fn write_realization(r: &Realization) -> String {
    match r {
        Realization::Points(cover) => {
            let rows = cover.incidence();
            let mut out = format!("points={} sets={}\n", rows.len(), cover.n());
            for (_, row) in rows {
                let _ = writeln!(out, "{row}");
            }
            out
        }
        Realization::Intervals(cover) => {
            let u = cover.universe();
            let mut out = format!(
                "intervals sets={} universe=[{},{})\n",
                cover.n(),
                fmt_rational(u.start()),
                fmt_rational(u.end())
            );
            for (i, s) in cover.sets().iter().enumerate() {
                if s.is_empty() {
                    let _ = writeln!(out, "set {}:", i + 1);
                } else {
                    let _ = writeln!(out, "set {}: {s}", i + 1);
                }
            }
            out
        }
    }
}

/// Distinct line-level values, in first-seen order.
pub fn dedup_in_order<T: Ord + Clone>(items: &[T]) -> Vec<T> {
    let mut seen = BTreeSet::new();
    items
        .iter()
        .filter(|x| seen.insert((*x).clone()))
        .cloned()
        .collect()
}
