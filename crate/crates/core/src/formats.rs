//! ASCII file formats shared by the pipeline stages.
//!
//! Every interval is written as two decimal endpoints `lo hi` that parse back to the
//! same binary endpoints. Blank lines and lines starting with `#` are ignored.
//!
//! `TFH v1`
//! ```text
//! TFH v1
//! <lmax> <K> <R_I>
//! <l> <k1> <k2> <cos lo> <cos hi> <sin lo> <sin hi>     (one line per term)
//! TAIL <l> <lo> <hi>                                     (optional, discarded norms)
//! ```
//!
//! `freq_intervals`
//! ```text
//! <ω lo> <ω hi>
//! <lo> <hi>                                              (the exact [1, 1])
//! noble <n1/d1> <n2/d2>                                  (optional)
//! ```

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::contfrac::{Rational, RationalPair};
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::tfseries::{Coef, HamiltonianState, TFSeries, TailNorms};

pub(crate) fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io { path: path.display().to_string(), source })
}

pub(crate) fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io { path: path.display().to_string(), source })
}

/// Meaningful lines with their 1-based line numbers.
pub(crate) struct Lines<'a> {
    path: &'a str,
    inner: Box<dyn Iterator<Item = (usize, &'a str)> + 'a>,
}

impl<'a> Lines<'a> {
    pub(crate) fn new(path: &'a str, text: &'a str) -> Self {
        let inner = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        Lines { path, inner: Box::new(inner) }
    }

    pub(crate) fn error(&self, line: usize, msg: impl Into<String>) -> Error {
        Error::Format { path: self.path.to_string(), line, msg: msg.into() }
    }

    pub(crate) fn expect(&mut self, what: &str) -> Result<(usize, &'a str)> {
        self.inner.next().ok_or_else(|| Error::Format {
            path: self.path.to_string(),
            line: 0,
            msg: format!("unexpected end of file, expected {what}"),
        })
    }
}

impl<'a> Iterator for Lines<'a> {
    type Item = (usize, &'a str);

    fn next(&mut self) -> Option<Self::Item> {
        self.inner.next()
    }
}

pub(crate) fn parse_num<T: std::str::FromStr>(lines: &Lines, line: usize, tok: Option<&str>, what: &str) -> Result<T> {
    tok.and_then(|t| t.parse().ok())
        .ok_or_else(|| lines.error(line, format!("expected {what}")))
}

/// Reads the interval `lo hi` from two tokens.
pub(crate) fn parse_interval<'t, I: Iterator<Item = &'t str>>(
    lines: &Lines,
    line: usize,
    toks: &mut I,
    what: &str,
) -> Result<Interval> {
    let (Some(lo), Some(hi)) = (toks.next(), toks.next()) else {
        return Err(lines.error(line, format!("expected two endpoints for {what}")));
    };
    format!("{lo} {hi}")
        .parse()
        .map_err(|e| lines.error(line, format!("{what}: {e}")))
}

pub(crate) fn no_more<'t, I: Iterator<Item = &'t str>>(lines: &Lines, line: usize, toks: &mut I) -> Result<()> {
    match toks.next() {
        None => Ok(()),
        Some(t) => Err(lines.error(line, format!("unexpected token `{t}`"))),
    }
}

/// Header of a `TFH v1` file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TfhHeader {
    pub lmax: u32,
    pub k: u32,
    pub r_i: usize,
}

pub fn format_tfh(header: TfhHeader, g: &TFSeries) -> String {
    let mut out = String::from("TFH v1\n");
    let _ = writeln!(out, "{} {} {}", header.lmax, header.k, header.r_i);
    for &(k, c) in g.terms() {
        let _ = writeln!(out, "{} {} {} {} {}", k.l, k.h.k1, k.h.k2, c.cos, c.sin);
    }
    out
}

pub fn parse_tfh(path: &str, text: &str) -> Result<(TfhHeader, TFSeries)> {
    parse_tfh_with_tail(path, text).map(|(h, g, _)| (h, g))
}

fn parse_tfh_with_tail(path: &str, text: &str) -> Result<(TfhHeader, TFSeries, TailNorms)> {
    let mut lines = Lines::new(path, text);
    let (n, magic) = lines.expect("`TFH v1`")?;
    if magic != "TFH v1" {
        return Err(lines.error(n, "missing `TFH v1` header"));
    }
    let (n, head) = lines.expect("`lmax K R_I`")?;
    let mut t = head.split_whitespace();
    let header = TfhHeader {
        lmax: parse_num(&lines, n, t.next(), "lmax")?,
        k: parse_num(&lines, n, t.next(), "K")?,
        r_i: parse_num(&lines, n, t.next(), "R_I")?,
    };
    no_more(&lines, n, &mut t)?;
    let mut terms = Vec::new();
    let mut tail = TailNorms::new(header.lmax);
    while let Some((n, line)) = lines.next() {
        let mut t = line.split_whitespace();
        if line.starts_with("TAIL") {
            t.next();
            let l: u32 = parse_num(&lines, n, t.next(), "l")?;
            if l > header.lmax {
                return Err(lines.error(n, format!("power {l} exceeds lmax {}", header.lmax)));
            }
            let x = parse_interval(&lines, n, &mut t, "tail norm")?;
            no_more(&lines, n, &mut t)?;
            tail.add(l, x);
            continue;
        }
        let l: u32 = parse_num(&lines, n, t.next(), "l")?;
        let k1: i32 = parse_num(&lines, n, t.next(), "k1")?;
        let k2: i32 = parse_num(&lines, n, t.next(), "k2")?;
        let cos = parse_interval(&lines, n, &mut t, "cosine coefficient")?;
        let sin = parse_interval(&lines, n, &mut t, "sine coefficient")?;
        no_more(&lines, n, &mut t)?;
        if l > header.lmax {
            return Err(lines.error(n, format!("power {l} exceeds lmax {}", header.lmax)));
        }
        terms.push((l, k1, k2, Coef { cos, sin }));
    }
    Ok((header, TFSeries::from_terms(terms), tail))
}

/// A Hamiltonian state as `TFH v1`, its tail norms included.
pub fn format_state(h: &HamiltonianState) -> String {
    let header = TfhHeader { lmax: h.lmax, k: h.k, r_i: h.r_i };
    let mut out = format_tfh(header, &h.flatten());
    for (l, x) in h.tail.0.iter().enumerate() {
        if *x != Interval::ZERO {
            let _ = writeln!(out, "TAIL {l} {x}");
        }
    }
    out
}

/// Rebuilds a state written by [`format_state`], sorting terms into orders.
pub fn parse_state(path: &str, text: &str, omega: Interval) -> Result<HamiltonianState> {
    let (hd, g, tail) = parse_tfh_with_tail(path, text)?;
    let mut state = HamiltonianState::from_series(omega, hd.lmax, hd.k, hd.r_i, &g);
    state.tail.merge(&tail);
    Ok(state)
}

pub fn read_state(path: &Path, omega: Interval) -> Result<HamiltonianState> {
    parse_state(&path.display().to_string(), &read_file(path)?, omega)
}

pub fn write_state(path: &Path, h: &HamiltonianState) -> Result<()> {
    write_file(path, &format_state(h))
}

pub fn write_tfh(path: &Path, header: TfhHeader, g: &TFSeries) -> Result<()> {
    write_file(path, &format_tfh(header, g))
}

pub fn read_tfh(path: &Path) -> Result<(TfhHeader, TFSeries)> {
    parse_tfh(&path.display().to_string(), &read_file(path)?)
}

/// Contents of a `freq_intervals` file.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FreqFile {
    pub omega: Interval,
    pub second: Interval,
    pub noble: Option<RationalPair>,
}

pub fn format_freq(f: &FreqFile) -> String {
    let mut out = format!("{}\n{}\n", f.omega, f.second);
    if let Some(p) = f.noble {
        let _ = writeln!(out, "noble {} {}", p.first, p.second);
    }
    out
}

pub fn parse_freq(path: &str, text: &str) -> Result<FreqFile> {
    let mut lines = Lines::new(path, text);
    fn read(lines: &mut Lines, what: &str) -> Result<Interval> {
        let (n, line) = lines.expect(what)?;
        let mut t = line.split_whitespace();
        let x = parse_interval(lines, n, &mut t, what)?;
        no_more(lines, n, &mut t)?;
        Ok(x)
    }
    let omega = read(&mut lines, "frequency interval")?;
    let second = read(&mut lines, "second frequency interval")?;
    let mut noble = None;
    if let Some((n, line)) = lines.next() {
        let mut t = line.split_whitespace();
        if t.next() != Some("noble") {
            return Err(lines.error(n, "expected `noble n1/d1 n2/d2`"));
        }
        let frac = |t: Option<&str>| -> Result<Rational> {
            t.ok_or_else(|| lines.error(n, "missing fraction"))?
                .parse()
                .map_err(|e: Error| lines.error(n, e.to_string()))
        };
        let a = frac(t.next())?;
        let b = frac(t.next())?;
        no_more(&lines, n, &mut t)?;
        noble = Some(RationalPair::new(a, b));
        if let Some((n, _)) = lines.next() {
            return Err(lines.error(n, "trailing content"));
        }
    }
    Ok(FreqFile { omega, second, noble })
}

pub fn write_freq(path: &Path, f: &FreqFile) -> Result<()> {
    write_file(path, &format_freq(f))
}

pub fn read_freq(path: &Path) -> Result<FreqFile> {
    parse_freq(&path.display().to_string(), &read_file(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tfh_round_trip() {
        let third = Interval::ONE.div_int(3);
        let g = TFSeries::from_terms([
            (0, 2, -1, Coef::cos(Interval::point(0.003))),
            (2, 0, 0, Coef::cos(third)),
            (1, 5, -3, Coef { cos: third, sin: -third }),
        ]);
        let h = TfhHeader { lmax: 4, k: 3, r_i: 6 };
        let (h2, g2) = parse_tfh("x", &format_tfh(h, &g)).unwrap();
        assert_eq!(h2, h);
        assert_eq!(g2, g);
    }

    #[test]
    fn state_round_trip_keeps_tail() {
        let g = TFSeries::from_terms([
            (0, 2, -1, Coef::cos(Interval::point(0.003))),
            (2, 0, 0, Coef::cos(Interval::point(-0.4))),
            (1, 7, -4, Coef::sin(Interval::point(1e-5))),
        ]);
        let mut h = HamiltonianState::from_series(Interval::point(0.58), 4, 3, 2, &g);
        assert!(h.tail.0[1] != Interval::ZERO);
        h.tail.add(3, Interval::point(1e-9));
        let text = format_state(&h);
        let back = parse_state("s", &text, h.omega).unwrap();
        assert_eq!(back.blocks, h.blocks);
        for l in 0..=4 {
            assert!(back.tail.0[l].encloses(h.tail.0[l]));
        }
        assert!(parse_state("s", &text.replace("TAIL 3", "TAIL 9"), h.omega).is_err());
    }

    #[test]
    fn tfh_errors_name_the_line() {
        let e = parse_tfh("f.tfh", "TFH v1\n4 3 6\n0 1 0 1 1 0\n").unwrap_err();
        assert!(e.to_string().starts_with("f.tfh:3:"), "{e}");
        assert!(parse_tfh("f", "TFH v2\n").is_err());
        assert!(parse_tfh("f", "TFH v1\n2 3 6\n3 0 0 1 1 0 0\n").is_err());
    }

    #[test]
    fn freq_round_trip() {
        let pair = RationalPair::new("43/74".parse().unwrap(), "18/31".parse().unwrap());
        let f = FreqFile { omega: pair.noble_enclosure(), second: Interval::ONE, noble: Some(pair) };
        let text = format_freq(&f);
        assert_eq!(text.lines().count(), 3);
        assert_eq!(parse_freq("q", &text).unwrap(), f);
        let plain = FreqFile { noble: None, ..f };
        assert_eq!(parse_freq("q", &format_freq(&plain)).unwrap(), plain);
        assert!(parse_freq("q", "0.5 0.6\n1 1\nfoo\n").is_err());
    }
}
