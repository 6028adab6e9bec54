//! Regular bar expressions and their text syntax.
//!
//! ```text
//! expr   := term ('+' term)*
//! term   := factor (('.' | whitespace) factor)*
//! factor := atom '*'*
//! atom   := '0' | '1' | NAME | '|' NAME | '(' expr ')'
//! ```

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::barstring::BarLetter;
use crate::error::{Error, Location};
use crate::nominal::Name;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Rbe {
    Zero,
    One,
    Letter(BarLetter),
    Sum(Box<Rbe>, Box<Rbe>),
    Concat(Box<Rbe>, Box<Rbe>),
    Star(Box<Rbe>),
}

impl Rbe {
    pub fn free(name: Name) -> Rbe {
        Rbe::Letter(BarLetter::Free(name))
    }

    pub fn bound(name: Name) -> Rbe {
        Rbe::Letter(BarLetter::Bound(name))
    }

    pub fn sum(l: Rbe, r: Rbe) -> Rbe {
        Rbe::Sum(Box::new(l), Box::new(r))
    }

    pub fn concat(l: Rbe, r: Rbe) -> Rbe {
        Rbe::Concat(Box::new(l), Box::new(r))
    }

    pub fn star(e: Rbe) -> Rbe {
        Rbe::Star(Box::new(e))
    }

    pub fn parse(text: &str) -> Result<Rbe, Error> {
        let tokens = tokenize(text)?;
        let mut p = Parser { tokens, pos: 0, end: text.len() };
        let e = p.expr()?;
        match p.peek() {
            None => Ok(e),
            Some((tok, at)) => Err(Error::syntax(Location::Offset(at), format!("unexpected {tok}"))),
        }
    }

    /// Names occurring in the expression, free or bound.
    pub fn names(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names(&self, out: &mut BTreeSet<Name>) {
        match self {
            Rbe::Zero | Rbe::One => {}
            Rbe::Letter(l) => {
                out.insert(l.name().clone());
            }
            Rbe::Sum(l, r) | Rbe::Concat(l, r) => {
                l.collect_names(out);
                r.collect_names(out);
            }
            Rbe::Star(e) => e.collect_names(out),
        }
    }

    pub fn degree(&self) -> usize {
        self.names().len()
    }

    /// Number of letter occurrences.
    pub fn letter_count(&self) -> usize {
        match self {
            Rbe::Zero | Rbe::One => 0,
            Rbe::Letter(_) => 1,
            Rbe::Sum(l, r) | Rbe::Concat(l, r) => l.letter_count() + r.letter_count(),
            Rbe::Star(e) => e.letter_count(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Rbe::Zero | Rbe::One | Rbe::Letter(_) => 0,
            Rbe::Sum(l, r) | Rbe::Concat(l, r) => 1 + l.depth().max(r.depth()),
            Rbe::Star(e) => 1 + e.depth(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Rbe::Sum(..) => 0,
            Rbe::Concat(..) => 1,
            Rbe::Star(..) => 2,
            _ => 3,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            f.write_str("(")?;
            self.fmt_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Rbe::Zero => f.write_str("0"),
            Rbe::One => f.write_str("1"),
            Rbe::Letter(l) => write!(f, "{l}"),
            Rbe::Sum(l, r) => {
                l.fmt_at(f, 0)?;
                f.write_str(" + ")?;
                r.fmt_at(f, 1)
            }
            Rbe::Concat(l, r) => {
                l.fmt_at(f, 1)?;
                f.write_str(" ")?;
                r.fmt_at(f, 2)
            }
            Rbe::Star(e) => {
                e.fmt_at(f, 3)?;
                f.write_str("*")
            }
        }
    }
}

impl fmt::Display for Rbe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

impl fmt::Debug for Rbe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rbe::Zero => f.write_str("Zero"),
            Rbe::One => f.write_str("One"),
            Rbe::Letter(l) => write!(f, "{l:?}"),
            Rbe::Sum(l, r) => f.debug_tuple("Sum").field(l).field(r).finish(),
            Rbe::Concat(l, r) => f.debug_tuple("Concat").field(l).field(r).finish(),
            Rbe::Star(e) => f.debug_tuple("Star").field(e).finish(),
        }
    }
}

impl FromStr for Rbe {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Rbe::parse(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Zero,
    One,
    Plus,
    Dot,
    Star,
    Open,
    Close,
    Letter(BarLetter),
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Zero => f.write_str("`0`"),
            Token::One => f.write_str("`1`"),
            Token::Plus => f.write_str("`+`"),
            Token::Dot => f.write_str("`.`"),
            Token::Star => f.write_str("`*`"),
            Token::Open => f.write_str("`(`"),
            Token::Close => f.write_str("`)`"),
            Token::Letter(l) => write!(f, "letter `{l}`"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>, Error> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let ident_end = |start: usize| {
        let mut j = start;
        while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
            j += 1;
        }
        j
    };
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b if b.is_ascii_whitespace() => {
                i += 1;
                continue;
            }
            b'0' => Token::Zero,
            b'1' => Token::One,
            b'+' => Token::Plus,
            b'.' => Token::Dot,
            b'*' => Token::Star,
            b'(' => Token::Open,
            b')' => Token::Close,
            b'|' => {
                if i + 1 >= bytes.len() || !bytes[i + 1].is_ascii_alphabetic() {
                    return Err(Error::syntax(Location::Offset(i), "`|` must be followed by a name"));
                }
                let end = ident_end(i + 1);
                let name = Name::new(&text[i + 1..end]).map_err(|e| Error::syntax(Location::Offset(i), e.to_string()))?;
                i = end;
                out.push((Token::Letter(BarLetter::Bound(name)), start));
                continue;
            }
            b if b.is_ascii_alphabetic() => {
                let end = ident_end(i);
                let name = Name::new(&text[i..end]).map_err(|e| Error::syntax(Location::Offset(i), e.to_string()))?;
                i = end;
                out.push((Token::Letter(BarLetter::Free(name)), start));
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(Error::syntax(Location::Offset(i), format!("unexpected character `{ch}`")));
            }
        };
        out.push((tok, start));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<(Token, usize)> {
        self.tokens.get(self.pos).cloned()
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn expr(&mut self) -> Result<Rbe, Error> {
        let mut e = self.term()?;
        while let Some((Token::Plus, _)) = self.peek() {
            self.bump();
            e = Rbe::sum(e, self.term()?);
        }
        Ok(e)
    }

    fn term(&mut self) -> Result<Rbe, Error> {
        let mut e = self.factor()?;
        loop {
            match self.peek() {
                Some((Token::Dot, _)) => {
                    self.bump();
                    e = Rbe::concat(e, self.factor()?);
                }
                Some((Token::Zero | Token::One | Token::Letter(_) | Token::Open, _)) => {
                    e = Rbe::concat(e, self.factor()?);
                }
                _ => return Ok(e),
            }
        }
    }

    fn factor(&mut self) -> Result<Rbe, Error> {
        let mut e = self.atom()?;
        while let Some((Token::Star, _)) = self.peek() {
            self.bump();
            e = Rbe::star(e);
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<Rbe, Error> {
        let Some((tok, at)) = self.peek() else {
            return Err(Error::syntax(Location::Offset(self.end), "unexpected end of expression"));
        };
        self.bump();
        match tok {
            Token::Zero => Ok(Rbe::Zero),
            Token::One => Ok(Rbe::One),
            Token::Letter(l) => Ok(Rbe::Letter(l)),
            Token::Open => {
                let e = self.expr()?;
                match self.peek() {
                    Some((Token::Close, _)) => {
                        self.bump();
                        Ok(e)
                    }
                    Some((t, at)) => Err(Error::syntax(Location::Offset(at), format!("expected `)`, found {t}"))),
                    None => Err(Error::syntax(Location::Offset(self.end), "unclosed `(`")),
                }
            }
            t => Err(Error::syntax(Location::Offset(at), format!("unexpected {t}"))),
        }
    }
}
