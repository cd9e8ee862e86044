//! Deterministic CSV formatting: every float with 17 significant digits.

use std::io::{self, Write};

pub fn num(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

pub struct Csv<W: Write> {
    out: W,
}

impl<W: Write> Csv<W> {
    pub fn new(out: W, header: &[&str]) -> io::Result<Self> {
        let mut csv = Csv { out };
        csv.row_str(header)?;
        Ok(csv)
    }

    fn row_str(&mut self, cells: &[&str]) -> io::Result<()> {
        writeln!(self.out, "{}", cells.join(","))
    }

    pub fn row(&mut self, cells: &[Cell]) -> io::Result<()> {
        let cells: Vec<String> = cells.iter().map(Cell::render).collect();
        writeln!(self.out, "{}", cells.join(","))
    }
}

pub enum Cell {
    F(f64),
    I(i64),
    S(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::F(x) => num(*x),
            Cell::I(i) => i.to_string(),
            Cell::S(s) => s.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(num(0.1), "1.0000000000000001e-1");
        assert_eq!(num(-2.0), "-2.0000000000000000e0");
        assert_eq!(num(f64::INFINITY), "inf");
    }
}
