//! Bar strings and their α-equivalence.
//!
//! A bar string is a word over names and bound names `|a`. A bound letter
//! `|a` binds every later occurrence of `a` up to the next `|a`, so binders
//! have dynamic scope and α-equivalence is not a congruence.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Location};
use crate::nominal::{Name, Nominal, Transposition};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BarLetter {
    Free(Name),
    Bound(Name),
}

impl BarLetter {
    pub fn name(&self) -> &Name {
        match self {
            BarLetter::Free(n) | BarLetter::Bound(n) => n,
        }
    }

    pub fn is_bound(&self) -> bool {
        matches!(self, BarLetter::Bound(_))
    }

    pub fn with_name(&self, name: Name) -> BarLetter {
        match self {
            BarLetter::Free(_) => BarLetter::Free(name),
            BarLetter::Bound(_) => BarLetter::Bound(name),
        }
    }

    /// Parses a single token, `a` or `|a`.
    pub fn parse_token(token: &str) -> Result<BarLetter, Error> {
        match token.strip_prefix('|') {
            Some(rest) => Ok(BarLetter::Bound(Name::new(rest)?)),
            None => Ok(BarLetter::Free(Name::new(token)?)),
        }
    }
}

impl Nominal for BarLetter {
    fn swap(&self, t: &Transposition) -> Self {
        self.with_name(t.apply(self.name()))
    }
}

impl fmt::Display for BarLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BarLetter::Free(n) => write!(f, "{n}"),
            BarLetter::Bound(n) => write!(f, "|{n}"),
        }
    }
}

impl fmt::Debug for BarLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite word over free and bound letters.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BarString(pub Vec<BarLetter>);

/// A plain word over names.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DataWord(pub Vec<Name>);

fn parse_tokens<T>(text: &str, parse: impl Fn(&str) -> Result<T, Error>) -> Result<Vec<T>, Error> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in text.split_inclusive(char::is_whitespace) {
        let token = piece.trim_end();
        if !token.is_empty() {
            out.push(parse(token).map_err(|e| Error::syntax(Location::Offset(offset), e.to_string()))?);
        }
        offset += piece.len();
    }
    Ok(out)
}

impl BarString {
    pub fn new(letters: Vec<BarLetter>) -> Self {
        BarString(letters)
    }

    pub fn empty() -> Self {
        BarString(Vec::new())
    }

    /// Parses whitespace-separated tokens, e.g. `a b |c a b`.
    pub fn parse(text: &str) -> Result<Self, Error> {
        parse_tokens(text, BarLetter::parse_token).map(BarString)
    }

    pub fn letters(&self) -> &[BarLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Every name occurring in the string, free or bound.
    pub fn names(&self) -> BTreeSet<Name> {
        names_of(&self.0)
    }

    pub fn free_names(&self) -> BTreeSet<Name> {
        free_names_of(&self.0)
    }

    pub fn is_closed(&self) -> bool {
        self.free_names().is_empty()
    }

    /// Bound letters are pairwise distinct and distinct from all free names.
    pub fn is_clean(&self) -> bool {
        let free = self.free_names();
        let mut binders = BTreeSet::new();
        self.0
            .iter()
            .filter_map(|l| match l {
                BarLetter::Bound(n) => Some(n),
                BarLetter::Free(_) => None,
            })
            .all(|n| !free.contains(n) && binders.insert(n.clone()))
    }

    /// Erases the binding markers.
    pub fn unbind(&self) -> DataWord {
        DataWord(self.0.iter().map(|l| l.name().clone()).collect())
    }

    /// The least representative of the α-class under the greedy rule.
    ///
    /// Each binder `|a v` becomes `|c`, where `c` is the first name of the
    /// canonical enumeration that is either `a` or not free in `v`, and the
    /// rest of the string is rewritten by `(a c)` before continuing.
    pub fn canonical_form(&self) -> BarString {
        let mut rest = self.0.clone();
        let mut out = Vec::with_capacity(rest.len());
        for i in 0..rest.len() {
            match rest[i].clone() {
                BarLetter::Free(a) => out.push(BarLetter::Free(a)),
                BarLetter::Bound(a) => {
                    let suffix = &mut rest[i + 1..];
                    let mut blocked = free_names_of(suffix);
                    blocked.remove(&a);
                    let c = Name::least_such_that(|n| !blocked.contains(n));
                    if c != a {
                        let t = Transposition::new(a, c.clone());
                        for l in suffix.iter_mut() {
                            *l = l.swap(&t);
                        }
                    }
                    out.push(BarLetter::Bound(c));
                }
            }
        }
        BarString(out)
    }

    pub fn alpha_equivalent(&self, other: &BarString) -> bool {
        self.len() == other.len() && self.canonical_form() == other.canonical_form()
    }

    /// An α-equivalent clean bar string.
    ///
    /// Binders are renamed left to right to the least name not used so far
    /// in the output and not occurring in the remaining suffix; a binder
    /// keeps its own name when that name is still unused.
    pub fn clean_form(&self) -> BarString {
        let mut rest = self.0.clone();
        let mut used = BTreeSet::new();
        let mut out = Vec::with_capacity(rest.len());
        for i in 0..rest.len() {
            match rest[i].clone() {
                BarLetter::Free(a) => {
                    used.insert(a.clone());
                    out.push(BarLetter::Free(a));
                }
                BarLetter::Bound(a) => {
                    let suffix = &mut rest[i + 1..];
                    let occurring = names_of(suffix);
                    let c = Name::least_such_that(|n| !used.contains(n) && (*n == a || !occurring.contains(n)));
                    if c != a {
                        let t = Transposition::new(a, c.clone());
                        for l in suffix.iter_mut() {
                            *l = l.swap(&t);
                        }
                    }
                    used.insert(c.clone());
                    out.push(BarLetter::Bound(c));
                }
            }
        }
        BarString(out)
    }

    /// Every α-equivalent bar string whose names all lie in `pool`.
    ///
    /// Works on classes: `|c u` represents the class of `|a v` iff `c` is
    /// `a` or not free in `v`, and `u` represents the class of `(a c) v`.
    pub fn alpha_variants(&self, pool: &[Name]) -> Vec<BarString> {
        let mut out = Vec::new();
        let mut prefix = Vec::with_capacity(self.len());
        variants_rec(&self.0, pool, &mut prefix, &mut out);
        out
    }

    /// Marks the positions of `word` bound exactly where `self` has binders.
    pub fn with_kinds_of(&self, word: &DataWord) -> Option<BarString> {
        if word.len() != self.len() {
            return None;
        }
        Some(BarString(
            self.0.iter().zip(&word.0).map(|(l, n)| l.with_name(n.clone())).collect(),
        ))
    }

    pub fn push(&mut self, letter: BarLetter) {
        self.0.push(letter);
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BarLetter> {
        self.0.iter()
    }
}

fn names_of(letters: &[BarLetter]) -> BTreeSet<Name> {
    letters.iter().map(|l| l.name().clone()).collect()
}

/// Names with a free occurrence not preceded by their own binder.
fn free_names_of(letters: &[BarLetter]) -> BTreeSet<Name> {
    let mut bound = BTreeSet::new();
    let mut free = BTreeSet::new();
    for l in letters {
        match l {
            BarLetter::Bound(n) => {
                bound.insert(n);
            }
            BarLetter::Free(n) => {
                if !bound.contains(n) {
                    free.insert(n.clone());
                }
            }
        }
    }
    free
}

fn variants_rec(rest: &[BarLetter], pool: &[Name], prefix: &mut Vec<BarLetter>, out: &mut Vec<BarString>) {
    let Some((head, tail)) = rest.split_first() else {
        out.push(BarString(prefix.clone()));
        return;
    };
    match head {
        BarLetter::Free(a) => {
            if pool.contains(a) {
                prefix.push(head.clone());
                variants_rec(tail, pool, prefix, out);
                prefix.pop();
            }
        }
        BarLetter::Bound(a) => {
            let free = free_names_of(tail);
            for c in pool {
                if c != a && free.contains(c) {
                    continue;
                }
                let t = Transposition::new(a.clone(), c.clone());
                let renamed: Vec<BarLetter> = tail.iter().map(|l| l.swap(&t)).collect();
                prefix.push(BarLetter::Bound(c.clone()));
                variants_rec(&renamed, pool, prefix, out);
                prefix.pop();
            }
        }
    }
}

impl Nominal for BarString {
    fn swap(&self, t: &Transposition) -> Self {
        BarString(self.0.iter().map(|l| l.swap(t)).collect())
    }
}

impl FromStr for BarString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BarString::parse(s)
    }
}

impl fmt::Display for BarString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BarString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("ε")
        } else {
            write!(f, "\"{self}\"")
        }
    }
}

impl FromIterator<BarLetter> for BarString {
    fn from_iter<I: IntoIterator<Item = BarLetter>>(iter: I) -> Self {
        BarString(iter.into_iter().collect())
    }
}

impl DataWord {
    pub fn new(names: Vec<Name>) -> Self {
        DataWord(names)
    }

    pub fn parse(text: &str) -> Result<Self, Error> {
        parse_tokens(text, Name::new).map(DataWord)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[Name] {
        &self.0
    }
}

impl Nominal for DataWord {
    fn swap(&self, t: &Transposition) -> Self {
        DataWord(self.0.swap(t))
    }
}

impl FromStr for DataWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DataWord::parse(s)
    }
}

impl fmt::Display for DataWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{n}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for DataWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("ε")
        } else {
            write!(f, "\"{self}\"")
        }
    }
}

impl FromIterator<Name> for DataWord {
    fn from_iter<I: IntoIterator<Item = Name>>(iter: I) -> Self {
        DataWord(iter.into_iter().collect())
    }
}
