//! Plain-text word files.
//!
//! Symbols are written as `ell` comma-separated coordinates. RS words and
//! messages hold one symbol per line; folded words hold one column per line,
//! its `m` symbols concatenated.

use gr_codes::frs::FoldedWord;
use gr_codes::{RingElement, RingParams, RingPoly};

use crate::CliError;

fn parse_line(ring: &RingParams, line: &str, lineno: usize) -> Result<Vec<u64>, CliError> {
    line.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<u64>()
                .map_err(|e| CliError::validation(format!("line {lineno}: bad integer {tok:?}: {e}")))
        })
        .collect::<Result<Vec<_>, _>>()
        .and_then(|v| {
            if v.len() % ring.ell() == 0 && !v.is_empty() {
                Ok(v)
            } else {
                Err(CliError::validation(format!(
                    "line {lineno}: {} coordinates is not a multiple of ell = {}",
                    v.len(),
                    ring.ell()
                )))
            }
        })
}

fn symbols(ring: &RingParams, coords: &[u64], lineno: usize) -> Result<Vec<RingElement>, CliError> {
    coords
        .chunks(ring.ell())
        .map(|c| ring.element(c).map_err(|e| CliError::validation(format!("line {lineno}: {e}"))))
        .collect()
}

fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_symbols(ring: &RingParams, text: &str) -> Result<Vec<RingElement>, CliError> {
    let mut out = Vec::new();
    for (lineno, line) in lines(text) {
        let coords = parse_line(ring, line, lineno)?;
        if coords.len() != ring.ell() {
            return Err(CliError::validation(format!("line {lineno}: expected one symbol of {} coordinates", ring.ell())));
        }
        out.extend(symbols(ring, &coords, lineno)?);
    }
    Ok(out)
}

pub fn parse_folded(ring: &RingParams, text: &str, m: usize) -> Result<FoldedWord, CliError> {
    let mut columns = Vec::new();
    for (lineno, line) in lines(text) {
        let coords = parse_line(ring, line, lineno)?;
        let col = symbols(ring, &coords, lineno)?;
        if col.len() != m {
            return Err(CliError::validation(format!("line {lineno}: expected {m} symbols, found {}", col.len())));
        }
        columns.push(col);
    }
    FoldedWord::from_columns(columns).map_err(CliError::from)
}

pub fn parse_message(ring: &RingParams, text: &str) -> Result<RingPoly, CliError> {
    Ok(ring.poly(parse_symbols(ring, text)?))
}

fn symbol_text(x: &RingElement) -> String {
    x.coeffs().iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

pub fn write_symbols(word: &[RingElement]) -> String {
    word.iter().map(|x| symbol_text(x) + "\n").collect()
}

pub fn write_folded(word: &FoldedWord) -> String {
    word.columns()
        .iter()
        .map(|c| c.iter().map(symbol_text).collect::<Vec<_>>().join(",") + "\n")
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use gr_codes::build_ring;

    #[test]
    fn symbols_round_trip() {
        let r = build_ring(2, 2, 2).unwrap();
        let text = "1,3\n# comment\n\n0,2\n";
        let w = parse_symbols(&r, text).unwrap();
        assert_eq!(write_symbols(&w), "1,3\n0,2\n");
        assert!(parse_symbols(&r, "4,0\n").is_err());
        assert!(parse_symbols(&r, "1\n").is_err());
    }

    #[test]
    fn folded_columns() {
        let r = build_ring(2, 2, 2).unwrap();
        let w = parse_folded(&r, "1,0,2,3,0,1\n3,3,0,0,1,1\n", 3).unwrap();
        assert_eq!(w.num_columns(), 2);
        assert_eq!(w.height(), 3);
        assert_eq!(write_folded(&w), "1,0,2,3,0,1\n3,3,0,0,1,1\n");
        assert!(parse_folded(&r, "1,0,2,3\n", 3).is_err());
    }
}
