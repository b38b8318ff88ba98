//! Text syntax: `<r, s | r^4, s^2, (r*s)^2>`. Generators are single letters
//! or indexed names `g1, g2, ...`; words use `*`, `^k` (k may be negative),
//! parentheses, commutators `[u, v]` and `lhs = rhs` relations.

use super::{invert_word, word_commutator, word_power, Presentation, Word};
use crate::error::{Error, Result};

pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let trimmed = text.trim();
    let offset = text.len() - text.trim_start().len();
    let (body, shift) = match trimmed
        .strip_prefix('<')
        .or_else(|| trimmed.strip_prefix('⟨'))
    {
        Some(rest) => {
            let end = rest
                .rfind(['>', '⟩'])
                .ok_or_else(|| Error::parse(offset + trimmed.len(), "missing closing '>'"))?;
            (&rest[..end], offset + (trimmed.len() - rest.len()))
        }
        None => (trimmed, offset),
    };
    let (gens_text, rels_text) = body.split_once('|').unwrap_or((body, ""));
    let mut names: Vec<String> = Vec::new();
    let mut pos = shift;
    for part in gens_text.split(',') {
        let name = part.trim();
        if !name.is_empty() {
            if !valid_name(name) {
                return Err(Error::parse(pos, format!("bad generator name {name:?}")));
            }
            if names.iter().any(|n| n == name) {
                return Err(Error::parse(pos, format!("duplicate generator {name:?}")));
            }
            names.push(name.to_string());
        }
        pos += part.len() + 1;
    }
    let rel_shift = shift + gens_text.len() + 1;
    let mut rels = Vec::new();
    for (start, piece) in split_top_level(rels_text) {
        if piece.trim().is_empty() {
            continue;
        }
        rels.push(parse_relation(piece, &names, rel_shift + start)?);
    }
    let label = format!("<{}>", names.join(","));
    Presentation::with_names(names, rels, label)
}

/// Parse a single word over the given generator names.
pub fn parse_word(text: &str, names: &[String]) -> Result<Word> {
    let mut p = Parser {
        s: text.as_bytes(),
        i: 0,
        base: 0,
        names,
    };
    p.ws();
    if p.i == p.s.len() {
        return Ok(Vec::new());
    }
    let w = p.expr()?;
    p.ws();
    if p.i != p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(w)
}

fn valid_name(name: &str) -> bool {
    let b = name.as_bytes();
    match b {
        [c] => c.is_ascii_alphabetic(),
        [first, rest @ ..] => {
            first.is_ascii_alphabetic() && rest.iter().all(|c| c.is_ascii_digit())
        }
        [] => false,
    }
}

/// Split on commas not nested in brackets; yields (offset, piece).
fn split_top_level(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out
}

fn parse_relation(text: &str, names: &[String], base: usize) -> Result<Word> {
    match text.split_once('=') {
        Some((l, r)) => {
            let mut w = parse_at(l, names, base)?;
            w.extend(invert_word(&parse_at(r, names, base + l.len() + 1)?));
            Ok(w)
        }
        None => parse_at(text, names, base),
    }
}

fn parse_at(text: &str, names: &[String], base: usize) -> Result<Word> {
    let mut p = Parser {
        s: text.as_bytes(),
        i: 0,
        base,
        names,
    };
    p.ws();
    let w = if text.trim() == "1" {
        Vec::new()
    } else {
        p.expr()?
    };
    p.ws();
    if text.trim() != "1" && p.i != p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(w)
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
    base: usize,
    names: &'a [String],
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.base + self.i, msg)
    }

    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.i).copied()
    }

    fn expr(&mut self) -> Result<Word> {
        let mut w = self.term()?;
        while self.peek() == Some(b'*') {
            self.i += 1;
            w.extend(self.term()?);
        }
        Ok(w)
    }

    fn term(&mut self) -> Result<Word> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.i += 1;
            self.ws();
            let start = self.i;
            if self.i < self.s.len() && (self.s[self.i] == b'-' || self.s[self.i] == b'+') {
                self.i += 1;
            }
            while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
                self.i += 1;
            }
            let text = std::str::from_utf8(&self.s[start..self.i]).unwrap();
            let k: i64 = text
                .parse()
                .map_err(|_| self.err("expected an integer exponent"))?;
            return Ok(word_power(&base, k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Word> {
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let w = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.i += 1;
                Ok(w)
            }
            Some(b'[') => {
                self.i += 1;
                let a = self.expr()?;
                if self.peek() != Some(b',') {
                    return Err(self.err("expected ',' in commutator"));
                }
                self.i += 1;
                let b = self.expr()?;
                if self.peek() != Some(b']') {
                    return Err(self.err("expected ']'"));
                }
                self.i += 1;
                Ok(word_commutator(&a, &b))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.i;
                self.i += 1;
                while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
                    self.i += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.i]).unwrap();
                match self.names.iter().position(|n| n == name) {
                    Some(g) => Ok(vec![g as i32 + 1]),
                    None => {
                        self.i = start;
                        Err(self.err(format!("unknown generator {name:?}")))
                    }
                }
            }
            Some(_) => Err(self.err("expected a generator, '(' or '['")),
            None => Err(self.err("unexpected end of word")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_text() {
        let p = parse_presentation("<r, s | r^4, s^2, (r*s)^2>").unwrap();
        assert_eq!(p.ngens, 2);
        assert_eq!(
            p.relators,
            vec![vec![1, 1, 1, 1], vec![2, 2], vec![1, 2, 1, 2]]
        );
    }

    #[test]
    fn indexed_names_and_inverses() {
        let p = parse_presentation("g1, g2, g3 | g1*g2*g3^-1, [g1, g2], g1^2 = g2^2").unwrap();
        assert_eq!(p.relators[0], vec![1, 2, -3]);
        assert_eq!(p.relators[1], vec![-1, -2, 1, 2]);
        // g1^2 g2^-2
        assert_eq!(p.relators[2], vec![1, 1, -2, -2]);
    }

    #[test]
    fn errors_carry_positions() {
        match parse_presentation("<a, b | a^2, c>") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 13),
            other => panic!("{other:?}"),
        }
        assert!(parse_presentation("<a | a^>").is_err());
        assert!(parse_presentation("<a, a | a>").is_err());
    }

    #[test]
    fn word_round_trip() {
        let names: Vec<String> = vec!["x".into(), "y".into()];
        assert_eq!(parse_word("x*y^-2", &names).unwrap(), vec![1, -2, -2]);
        assert_eq!(parse_word("", &names).unwrap(), Vec::<i32>::new());
    }
}
