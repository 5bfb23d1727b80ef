//! Norms exported by the explicit normalization and read by the estimator.
//!
//! `LEDGER v1`
//! ```text
//! LEDGER v1
//! RI <R_I> LMAX <lmax> K <K>
//! OMEGA <lo> <hi>
//! G <r> <g11 lo hi> <g12 lo hi> <g21 lo hi> <g22 lo hi>     1 ≤ r ≤ R_I
//! C <r> <lo> <hi>                                           the scalar C^(r)
//! H <r> <l> <s> <lo> <hi>                                   ‖f_l^(r,s)‖, 0 ≤ r ≤ R_I
//! HAT <r> <l> <s> <lo> <hi>                                 ‖f̂_l^(r,s)‖, 1 ≤ r ≤ R_I
//! TAIL <l> <lo> <hi>                                        discarded norms
//! M <lo> <hi>                                               m^(R_I) ≤ |C^(R_I)|
//! END
//! ```
//! `H` and `HAT` records that are exactly zero may be omitted.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::Result;
use crate::formats::{no_more, parse_interval, parse_num, read_file, write_file, Lines};
use crate::interval::Interval;

/// The four generator constants of one step.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct GenBounds {
    /// `‖∂θX‖`
    pub g11: Interval,
    /// `|ξ|`
    pub g12: Interval,
    /// `‖∂θχ₂‖`
    pub g21: Interval,
    /// `‖∂ψχ₂‖`
    pub g22: Interval,
}

/// Dense `[l][s]` table of norms.
pub type NormTable = Vec<Vec<Interval>>;

#[derive(Clone, Debug, PartialEq)]
pub struct ExplicitLedger {
    pub r_i: usize,
    pub lmax: u32,
    pub k: u32,
    pub omega: Interval,
    /// `g[r]` for `r = 1..=R_I`; index 0 is unused.
    pub g: Vec<GenBounds>,
    /// `c[r]` for `r = 1..=R_I`; index 0 is unused.
    pub c: Vec<Interval>,
    /// `h[r][l][s]`, `r = 0..=R_I`.
    pub h: Vec<NormTable>,
    /// `hat[r][l][s]`, `r = 1..=R_I`; index 0 is unused.
    pub hat: Vec<NormTable>,
    pub tail: Vec<Interval>,
    pub m: Interval,
}

pub fn zero_table(lmax: u32, r_i: usize) -> NormTable {
    vec![vec![Interval::ZERO; r_i + 1]; lmax as usize + 1]
}

impl ExplicitLedger {
    pub fn new(r_i: usize, lmax: u32, k: u32, omega: Interval) -> Self {
        ExplicitLedger {
            r_i,
            lmax,
            k,
            omega,
            g: vec![GenBounds::default(); r_i + 1],
            c: vec![Interval::ZERO; r_i + 1],
            h: vec![zero_table(lmax, r_i); r_i + 1],
            hat: vec![zero_table(lmax, r_i); r_i + 1],
            tail: vec![Interval::ZERO; lmax as usize + 1],
            m: Interval::ZERO,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("LEDGER v1\n");
        let _ = writeln!(out, "RI {} LMAX {} K {}", self.r_i, self.lmax, self.k);
        let _ = writeln!(out, "OMEGA {}", self.omega);
        for r in 1..=self.r_i {
            let g = &self.g[r];
            let _ = writeln!(out, "G {r} {} {} {} {}", g.g11, g.g12, g.g21, g.g22);
            let _ = writeln!(out, "C {r} {}", self.c[r]);
        }
        for (tag, tables, first) in [("H", &self.h, 0), ("HAT", &self.hat, 1)] {
            for (r, table) in tables.iter().enumerate().skip(first) {
                for (l, row) in table.iter().enumerate() {
                    for (s, x) in row.iter().enumerate() {
                        if *x != Interval::ZERO {
                            let _ = writeln!(out, "{tag} {r} {l} {s} {x}");
                        }
                    }
                }
            }
        }
        for (l, x) in self.tail.iter().enumerate() {
            let _ = writeln!(out, "TAIL {l} {x}");
        }
        let _ = writeln!(out, "M {}", self.m);
        out.push_str("END\n");
        out
    }

    pub fn parse(path: &str, text: &str) -> Result<Self> {
        let mut lines = Lines::new(path, text);
        let (n, magic) = lines.expect("`LEDGER v1`")?;
        if magic != "LEDGER v1" {
            return Err(lines.error(n, "missing `LEDGER v1` header"));
        }
        let (n, dims) = lines.expect("dimensions")?;
        let mut t = dims.split_whitespace();
        let key = |t: &mut std::str::SplitWhitespace, k: &str| -> Result<()> {
            if t.next() == Some(k) {
                Ok(())
            } else {
                Err(lines.error(n, format!("expected `{k}`")))
            }
        };
        key(&mut t, "RI")?;
        let r_i: usize = parse_num(&lines, n, t.next(), "R_I")?;
        key(&mut t, "LMAX")?;
        let lmax: u32 = parse_num(&lines, n, t.next(), "lmax")?;
        key(&mut t, "K")?;
        let k: u32 = parse_num(&lines, n, t.next(), "K")?;
        no_more(&lines, n, &mut t)?;
        let (n, om) = lines.expect("OMEGA")?;
        let mut t = om.split_whitespace();
        if t.next() != Some("OMEGA") {
            return Err(lines.error(n, "expected `OMEGA`"));
        }
        let omega = parse_interval(&lines, n, &mut t, "omega")?;
        no_more(&lines, n, &mut t)?;
        let mut led = ExplicitLedger::new(r_i, lmax, k, omega);
        let mut seen_m = false;
        loop {
            let (n, line) = lines.expect("`END`")?;
            let mut t = line.split_whitespace();
            let tag = t.next().unwrap_or_default();
            let step = |lines: &Lines, t: &mut std::str::SplitWhitespace, lo: usize| -> Result<usize> {
                let r: usize = parse_num(lines, n, t.next(), "step")?;
                if r < lo || r > r_i {
                    return Err(lines.error(n, format!("step {r} out of range")));
                }
                Ok(r)
            };
            match tag {
                "END" => break,
                "G" => {
                    let r = step(&lines, &mut t, 1)?;
                    led.g[r] = GenBounds {
                        g11: parse_interval(&lines, n, &mut t, "g11")?,
                        g12: parse_interval(&lines, n, &mut t, "g12")?,
                        g21: parse_interval(&lines, n, &mut t, "g21")?,
                        g22: parse_interval(&lines, n, &mut t, "g22")?,
                    };
                }
                "C" => {
                    let r = step(&lines, &mut t, 1)?;
                    led.c[r] = parse_interval(&lines, n, &mut t, "C")?;
                }
                "H" | "HAT" => {
                    let r = step(&lines, &mut t, if tag == "H" { 0 } else { 1 })?;
                    let l: usize = parse_num(&lines, n, t.next(), "l")?;
                    let s: usize = parse_num(&lines, n, t.next(), "s")?;
                    if l > lmax as usize || s > r_i {
                        return Err(lines.error(n, "index out of range"));
                    }
                    let x = parse_interval(&lines, n, &mut t, "norm")?;
                    let table = if tag == "H" { &mut led.h } else { &mut led.hat };
                    table[r][l][s] = x;
                }
                "TAIL" => {
                    let l: usize = parse_num(&lines, n, t.next(), "l")?;
                    if l > lmax as usize {
                        return Err(lines.error(n, "index out of range"));
                    }
                    led.tail[l] = parse_interval(&lines, n, &mut t, "tail")?;
                }
                "M" => {
                    led.m = parse_interval(&lines, n, &mut t, "m")?;
                    seen_m = true;
                }
                other => return Err(lines.error(n, format!("unknown record `{other}`"))),
            }
            no_more(&lines, n, &mut t)?;
        }
        if !seen_m {
            return Err(lines.error(0, "missing `M` record"));
        }
        Ok(led)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_file(path, &self.to_text())
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&path.display().to_string(), &read_file(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ledger_round_trips() {
        let third = Interval::ONE.div_int(3);
        let mut led = ExplicitLedger::new(3, 4, 3, Interval::hull(0.58, 0.59));
        led.g[2] = GenBounds { g11: third, g12: Interval::point(1e-9), g21: third.sqr(), g22: Interval::ZERO };
        led.c[1] = Interval::point(-0.891875);
        led.h[0][2][0] = Interval::point(0.4459375);
        led.hat[3][1][3] = third;
        led.tail[4] = Interval::hull(0.0, 1e-30);
        led.m = third;
        let text = led.to_text();
        let back = ExplicitLedger::parse("l", &text).unwrap();
        assert_eq!(back, led);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn ledger_rejects_bad_records() {
        let led = ExplicitLedger::new(1, 2, 3, Interval::ONE);
        let text = led.to_text();
        assert!(ExplicitLedger::parse("l", &text.replace("END\n", "")).is_err());
        assert!(ExplicitLedger::parse("l", &text.replace("M ", "Q ")).is_err());
        let bad = text.replace("END", "H 5 0 0 1 1\nEND");
        let e = ExplicitLedger::parse("l", &bad).unwrap_err().to_string();
        assert!(e.contains("out of range"), "{e}");
    }
}
