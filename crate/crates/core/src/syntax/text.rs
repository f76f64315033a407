//! Concrete syntax for both proposition languages.
//!
//! Unpolarized: `false`, `true`, `/\`, `\/`, `->`, with `/\` binding tighter
//! than `\/`, which binds tighter than `->`. Every binary connective is right
//! associative.
//!
//! Polarized: atoms `p+` and `p-`, `dn A`, `up A`, `0`, `+`, `1`, `*`, `->`,
//! `T`, `&`. The shifts are prefix operators binding tightest, `*` and `&`
//! share the next level, then `+`, then `->`.

use super::prop::{is_atom_name, Neg, Pos, UProp};
use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// A syntax error at a byte offset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<&'static str>,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at byte {}: {}", self.offset, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Signed(String, bool),
    LParen,
    RParen,
    And,
    Or,
    Arrow,
    Plus,
    Star,
    Amp,
    Zero,
    One,
    Tee,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => s.clone(),
            Tok::Signed(s, true) => alloc::format!("{s}+"),
            Tok::Signed(s, false) => alloc::format!("{s}-"),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
            Tok::And => "/\\".into(),
            Tok::Or => "\\/".into(),
            Tok::Arrow => "->".into(),
            Tok::Plus => "+".into(),
            Tok::Star => "*".into(),
            Tok::Amp => "&".into(),
            Tok::Zero => "0".into(),
            Tok::One => "1".into(),
            Tok::Tee => "T".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn err(offset: usize, message: impl Into<String>, expected: Vec<&'static str>) -> ParseError {
    ParseError { offset, expected, message: message.into() }
}

fn lex(text: &str, polarized: bool) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'(' => {
                i += 1;
                Tok::LParen
            }
            b')' => {
                i += 1;
                Tok::RParen
            }
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 2;
                Tok::Arrow
            }
            b'/' if !polarized && bytes.get(i + 1) == Some(&b'\\') => {
                i += 2;
                Tok::And
            }
            b'\\' if !polarized && bytes.get(i + 1) == Some(&b'/') => {
                i += 2;
                Tok::Or
            }
            b'+' if polarized => {
                i += 1;
                Tok::Plus
            }
            b'*' if polarized => {
                i += 1;
                Tok::Star
            }
            b'&' if polarized => {
                i += 1;
                Tok::Amp
            }
            b'0' if polarized => {
                i += 1;
                Tok::Zero
            }
            b'1' if polarized => {
                i += 1;
                Tok::One
            }
            b'T' if polarized => {
                i += 1;
                Tok::Tee
            }
            c if c.is_ascii_lowercase() => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let name = text[start..i].to_string();
                if polarized {
                    match bytes.get(i) {
                        Some(b'+') => {
                            i += 1;
                            Tok::Signed(name, true)
                        }
                        Some(b'-') if bytes.get(i + 1) != Some(&b'>') => {
                            i += 1;
                            Tok::Signed(name, false)
                        }
                        _ => Tok::Ident(name),
                    }
                } else {
                    Tok::Ident(name)
                }
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(err(start, alloc::format!("unexpected character {ch:?}"), vec![]));
            }
        };
        out.push((start, tok));
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }
    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }
    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }
    fn unexpected(&self, expected: Vec<&'static str>) -> ParseError {
        err(self.offset(), alloc::format!("unexpected {}", self.peek().describe()), expected)
    }
    fn expect(&mut self, t: Tok, name: &'static str) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(vec![name]))
        }
    }
    fn finish(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.unexpected(vec!["end of input"]))
        }
    }

    fn uimp(&mut self) -> Result<UProp, ParseError> {
        let a = self.uor()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let b = self.uimp()?;
            return Ok(UProp::imp(a, b));
        }
        Ok(a)
    }
    fn uor(&mut self) -> Result<UProp, ParseError> {
        let a = self.uand()?;
        if *self.peek() == Tok::Or {
            self.bump();
            let b = self.uor()?;
            return Ok(UProp::or(a, b));
        }
        Ok(a)
    }
    fn uand(&mut self) -> Result<UProp, ParseError> {
        let a = self.uatom()?;
        if *self.peek() == Tok::And {
            self.bump();
            let b = self.uand()?;
            return Ok(UProp::and(a, b));
        }
        Ok(a)
    }
    fn uatom(&mut self) -> Result<UProp, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Ok(match name.as_str() {
                    "false" => UProp::Bot,
                    "true" => UProp::Top,
                    _ => UProp::Atom(name),
                })
            }
            Tok::LParen => {
                self.bump();
                let p = self.uimp()?;
                self.expect(Tok::RParen, ")")?;
                Ok(p)
            }
            _ => Err(self.unexpected(vec!["atom", "false", "true", "("])),
        }
    }
}

/// Parse an unpolarized proposition.
pub fn parse_uprop(text: &str) -> Result<UProp, ParseError> {
    let mut p = Parser { toks: lex(text, false)?, pos: 0 };
    let prop = p.uimp()?;
    p.finish()?;
    Ok(prop)
}

pub fn print_uprop(p: &UProp) -> String {
    p.to_string()
}

/// A polarized proposition of either sort.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PProp {
    Pos(Pos),
    Neg(Neg),
}

impl fmt::Display for PProp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PProp::Pos(a) => a.fmt(f),
            PProp::Neg(a) => a.fmt(f),
        }
    }
}

// Polarized text is parsed into an unsorted tree first; sorts are assigned
// afterwards so that clashes can be reported at the offending connective.
enum Raw {
    Atom(String, bool),
    Dn(Box<Raw>),
    Up(Box<Raw>),
    Zero,
    One,
    Tee,
    Bin(usize, Tok, Box<Raw>, Box<Raw>),
}

impl Parser {
    fn parrow(&mut self) -> Result<(usize, Raw), ParseError> {
        let (off, a) = self.psum()?;
        if *self.peek() == Tok::Arrow {
            let at = self.offset();
            self.bump();
            let (_, b) = self.parrow()?;
            return Ok((off, Raw::Bin(at, Tok::Arrow, Box::new(a), Box::new(b))));
        }
        Ok((off, a))
    }
    fn psum(&mut self) -> Result<(usize, Raw), ParseError> {
        let (off, a) = self.pprod()?;
        if *self.peek() == Tok::Plus {
            let at = self.offset();
            self.bump();
            let (_, b) = self.psum()?;
            return Ok((off, Raw::Bin(at, Tok::Plus, Box::new(a), Box::new(b))));
        }
        Ok((off, a))
    }
    fn pprod(&mut self) -> Result<(usize, Raw), ParseError> {
        let (off, a) = self.punary()?;
        if matches!(self.peek(), Tok::Star | Tok::Amp) {
            let at = self.offset();
            let t = self.bump();
            let (_, b) = self.pprod()?;
            return Ok((off, Raw::Bin(at, t, Box::new(a), Box::new(b))));
        }
        Ok((off, a))
    }
    fn punary(&mut self) -> Result<(usize, Raw), ParseError> {
        let off = self.offset();
        let raw = match self.peek().clone() {
            Tok::Ident(name) if name == "dn" || name == "up" => {
                self.bump();
                let (_, a) = self.punary()?;
                if name == "dn" {
                    Raw::Dn(Box::new(a))
                } else {
                    Raw::Up(Box::new(a))
                }
            }
            Tok::Ident(name) => {
                return Err(err(
                    off,
                    alloc::format!("atom {name} needs a polarity mark"),
                    vec!["p+", "p-"],
                ))
            }
            Tok::Signed(name, positive) => {
                self.bump();
                Raw::Atom(name, positive)
            }
            Tok::Zero => {
                self.bump();
                Raw::Zero
            }
            Tok::One => {
                self.bump();
                Raw::One
            }
            Tok::Tee => {
                self.bump();
                Raw::Tee
            }
            Tok::LParen => {
                self.bump();
                let (_, a) = self.parrow()?;
                self.expect(Tok::RParen, ")")?;
                a
            }
            _ => return Err(self.unexpected(vec!["p+", "p-", "dn", "up", "0", "1", "T", "("])),
        };
        Ok((off, raw))
    }
}

fn sort(raw: Raw, off: usize) -> Result<PProp, ParseError> {
    let clash = |at: usize, what: &str| err(at, alloc::format!("sort clash: {what}"), vec![]);
    Ok(match raw {
        Raw::Atom(name, true) => PProp::Pos(Pos::Atom(name)),
        Raw::Atom(name, false) => PProp::Neg(Neg::Atom(name)),
        Raw::Zero => PProp::Pos(Pos::Zero),
        Raw::One => PProp::Pos(Pos::One),
        Raw::Tee => PProp::Neg(Neg::Top),
        Raw::Dn(a) => match sort(*a, off)? {
            PProp::Neg(a) => PProp::Pos(Pos::down(a)),
            PProp::Pos(_) => return Err(clash(off, "dn expects a negative proposition")),
        },
        Raw::Up(a) => match sort(*a, off)? {
            PProp::Pos(a) => PProp::Neg(Neg::up(a)),
            PProp::Neg(_) => return Err(clash(off, "up expects a positive proposition")),
        },
        Raw::Bin(at, op, a, b) => {
            let a = sort(*a, off)?;
            let b = sort(*b, at + 1)?;
            match (op, a, b) {
                (Tok::Plus, PProp::Pos(a), PProp::Pos(b)) => PProp::Pos(Pos::or(a, b)),
                (Tok::Star, PProp::Pos(a), PProp::Pos(b)) => PProp::Pos(Pos::and(a, b)),
                (Tok::Amp, PProp::Neg(a), PProp::Neg(b)) => PProp::Neg(Neg::and(a, b)),
                (Tok::Arrow, PProp::Pos(a), PProp::Neg(b)) => PProp::Neg(Neg::imp(a, b)),
                (Tok::Plus, ..) => return Err(clash(at, "+ joins positive propositions")),
                (Tok::Star, ..) => return Err(clash(at, "* joins positive propositions")),
                (Tok::Amp, ..) => return Err(clash(at, "& joins negative propositions")),
                _ => return Err(clash(at, "-> needs a positive antecedent and a negative consequent")),
            }
        }
    })
}

/// Parse a polarized proposition; its sort follows from the outermost connective.
pub fn parse_pprop(text: &str) -> Result<PProp, ParseError> {
    let mut p = Parser { toks: lex(text, true)?, pos: 0 };
    let (off, raw) = p.parrow()?;
    p.finish()?;
    sort(raw, off)
}

pub fn parse_pos(text: &str) -> Result<Pos, ParseError> {
    match parse_pprop(text)? {
        PProp::Pos(a) => Ok(a),
        PProp::Neg(_) => Err(err(0, "expected a positive proposition", vec![])),
    }
}

pub fn parse_neg(text: &str) -> Result<Neg, ParseError> {
    match parse_pprop(text)? {
        PProp::Neg(a) => Ok(a),
        PProp::Pos(_) => Err(err(0, "expected a negative proposition", vec![])),
    }
}

pub fn print_pprop(a: &PProp) -> String {
    a.to_string()
}

/// True when `s` can be used as an atom name without clashing with keywords.
pub fn is_plain_atom(s: &str) -> bool {
    is_atom_name(s) && s != "false" && s != "true"
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unpolarized_precedence() {
        let p = parse_uprop("p /\\ q \\/ r -> s").unwrap();
        let expect = UProp::imp(
            UProp::or(UProp::and(UProp::atom("p"), UProp::atom("q")), UProp::atom("r")),
            UProp::atom("s"),
        );
        assert_eq!(p, expect);
        assert_eq!(p.to_string(), "((p /\\ q) \\/ r) -> s");
    }

    #[test]
    fn arrows_associate_right() {
        let p = parse_uprop("p -> q -> r").unwrap();
        assert_eq!(p, UProp::imp(UProp::atom("p"), UProp::imp(UProp::atom("q"), UProp::atom("r"))));
        assert_eq!(p.to_string(), "p -> q -> r");
    }

    #[test]
    fn keywords() {
        assert_eq!(parse_uprop("true").unwrap(), UProp::Top);
        assert_eq!(parse_uprop("(false)").unwrap(), UProp::Bot);
    }

    #[test]
    fn errors_carry_offsets() {
        let e = parse_uprop("p /\\ ").unwrap_err();
        assert_eq!(e.offset, 5);
        assert!(e.expected.contains(&"atom"));
        let e = parse_uprop("p q").unwrap_err();
        assert_eq!(e.offset, 2);
    }

    #[test]
    fn shifts_nest() {
        let a = parse_pprop("dn(up p+)").unwrap();
        assert_eq!(a, PProp::Pos(Pos::down(Neg::up(Pos::atom("p")))));
        assert_eq!(a.to_string(), "dn(up(p+))");
    }

    #[test]
    fn sort_clash_is_reported() {
        let e = parse_pprop("p+ & q-").unwrap_err();
        assert_eq!(e.offset, 3);
        assert!(parse_pprop("p").is_err());
        assert!(parse_pprop("up(q-)").is_err());
    }

    #[test]
    fn arrow_after_negative_atom() {
        let a = parse_pprop("p+ -> q-").unwrap();
        assert_eq!(a, PProp::Neg(Neg::imp(Pos::atom("p"), Neg::atom("q"))));
        let b = parse_pprop("dn(p-)-> q-").unwrap();
        assert_eq!(b, PProp::Neg(Neg::imp(Pos::down(Neg::atom("p")), Neg::atom("q"))));
    }
}
