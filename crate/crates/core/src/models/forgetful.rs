//! Forgetful register automata.
//!
//! Transition constraints are positive combinations of four atoms relating
//! the registers `w` before a step, the input `x` and the registers `v`
//! after it:
//!
//! - `cmp(i)`: `w_i = x`
//! - `store(i)`: `v_i` is `x` or empty
//! - `fresh(i)`: `w_i != x`
//! - `keep(j,i)`: `v_i` is `w_j` or empty
//!
//! ```text
//! registers: 1
//! locations: c0 c1 c2 c3
//! initial: c0
//! final: c3
//! trans:
//! c0 c1 store(1)
//! c1 c2 fresh(1) and keep(1,1)
//! c2 c3 cmp(1)
//! ```

use std::collections::BTreeSet;
use std::fmt;

use super::{check_locations, check_register, extract, parse_header, Header, RegisterModel, Registers};
use crate::barnfa::BarNfa;
use crate::barstring::DataWord;
use crate::error::{Error, Location};
use crate::nominal::Name;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Constraint {
    Cmp(usize),
    Store(usize),
    Fresh(usize),
    Keep(usize, usize),
    And(Box<Constraint>, Box<Constraint>),
    Or(Box<Constraint>, Box<Constraint>),
}

impl Constraint {
    pub fn and(l: Constraint, r: Constraint) -> Constraint {
        Constraint::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Constraint, r: Constraint) -> Constraint {
        Constraint::Or(Box::new(l), Box::new(r))
    }

    pub fn holds(&self, w: &Registers, x: &Name, v: &Registers) -> bool {
        match self {
            Constraint::Cmp(i) => w.get(*i) == Some(x),
            Constraint::Store(i) => v.get(*i).is_none_or(|y| y == x),
            Constraint::Fresh(i) => w.get(*i) != Some(x),
            Constraint::Keep(j, i) => v.get(*i).is_none_or(|y| w.get(*j) == Some(y)),
            Constraint::And(l, r) => l.holds(w, x, v) && r.holds(w, x, v),
            Constraint::Or(l, r) => l.holds(w, x, v) || r.holds(w, x, v),
        }
    }

    fn registers(&self, out: &mut Vec<usize>) {
        match self {
            Constraint::Cmp(i) | Constraint::Store(i) | Constraint::Fresh(i) => out.push(*i),
            Constraint::Keep(j, i) => out.extend([*j, *i]),
            Constraint::And(l, r) | Constraint::Or(l, r) => {
                l.registers(out);
                r.registers(out);
            }
        }
    }

    pub fn parse(text: &str) -> Result<Constraint, Error> {
        let tokens = tokenize(text)?;
        let mut p = ConstraintParser { tokens, pos: 0, end: text.len() };
        let c = p.disjunction()?;
        match p.tokens.get(p.pos) {
            None => Ok(c),
            Some((tok, at)) => Err(Error::syntax(Location::Offset(*at), format!("unexpected `{tok}`"))),
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, in_and: bool) -> fmt::Result {
        match self {
            Constraint::Cmp(i) => write!(f, "cmp({i})"),
            Constraint::Store(i) => write!(f, "store({i})"),
            Constraint::Fresh(i) => write!(f, "fresh({i})"),
            Constraint::Keep(j, i) => write!(f, "keep({j},{i})"),
            Constraint::And(l, r) => {
                l.fmt_prec(f, true)?;
                f.write_str(" and ")?;
                r.fmt_prec(f, true)
            }
            Constraint::Or(l, r) => {
                if in_and {
                    f.write_str("(")?;
                }
                l.fmt_prec(f, false)?;
                f.write_str(" or ")?;
                r.fmt_prec(f, false)?;
                if in_and {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, false)
    }
}

fn tokenize(text: &str) -> Result<Vec<(String, usize)>, Error> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if "(),".contains(c) {
            out.push((c.to_string(), i));
            chars.next();
        } else if c.is_ascii_alphanumeric() || c == '_' {
            let mut word = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if !(d.is_ascii_alphanumeric() || d == '_') {
                    break;
                }
                word.push(d);
                chars.next();
            }
            out.push((word, i));
        } else {
            return Err(Error::syntax(Location::Offset(i), format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct ConstraintParser {
    tokens: Vec<(String, usize)>,
    pos: usize,
    end: usize,
}

impl ConstraintParser {
    fn peek(&self) -> Option<&str> {
        self.tokens.get(self.pos).map(|(t, _)| t.as_str())
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(_, at)| *at)
    }

    fn expect(&mut self, tok: &str) -> Result<(), Error> {
        if self.peek() == Some(tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::syntax(Location::Offset(self.offset()), format!("expected `{tok}`")))
        }
    }

    fn number(&mut self) -> Result<usize, Error> {
        let at = self.offset();
        let n = self.peek().and_then(|t| t.parse().ok());
        match n {
            Some(n) => {
                self.pos += 1;
                Ok(n)
            }
            None => Err(Error::syntax(Location::Offset(at), "expected a register index")),
        }
    }

    fn disjunction(&mut self) -> Result<Constraint, Error> {
        let mut c = self.conjunction()?;
        while self.peek() == Some("or") {
            self.pos += 1;
            c = Constraint::or(c, self.conjunction()?);
        }
        Ok(c)
    }

    fn conjunction(&mut self) -> Result<Constraint, Error> {
        let mut c = self.atom()?;
        while self.peek() == Some("and") {
            self.pos += 1;
            c = Constraint::and(c, self.atom()?);
        }
        Ok(c)
    }

    fn atom(&mut self) -> Result<Constraint, Error> {
        let at = self.offset();
        let Some(head) = self.peek().map(str::to_string) else {
            return Err(Error::syntax(Location::Offset(at), "expected a constraint"));
        };
        self.pos += 1;
        if head == "(" {
            let c = self.disjunction()?;
            self.expect(")")?;
            return Ok(c);
        }
        let unary = |p: &mut Self| -> Result<usize, Error> {
            p.expect("(")?;
            let i = p.number()?;
            p.expect(")")?;
            Ok(i)
        };
        match head.as_str() {
            "cmp" => Ok(Constraint::Cmp(unary(self)?)),
            "store" => Ok(Constraint::Store(unary(self)?)),
            "fresh" => Ok(Constraint::Fresh(unary(self)?)),
            "keep" => {
                self.expect("(")?;
                let j = self.number()?;
                self.expect(",")?;
                let i = self.number()?;
                self.expect(")")?;
                Ok(Constraint::Keep(j, i))
            }
            other => Err(Error::syntax(Location::Offset(at), format!("unknown atom `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RaTransition {
    pub source: usize,
    pub target: usize,
    pub constraint: Constraint,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RaConfig {
    pub location: usize,
    pub registers: Registers,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForgetfulRa {
    locations: Vec<String>,
    registers: usize,
    transitions: Vec<RaTransition>,
    initial: usize,
    finals: Vec<bool>,
}

impl ForgetfulRa {
    pub fn new(
        locations: Vec<String>,
        registers: usize,
        initial: usize,
        finals: impl IntoIterator<Item = usize>,
        transitions: Vec<RaTransition>,
    ) -> Result<ForgetfulRa, Error> {
        check_locations(&locations)?;
        let n = locations.len();
        let in_range = |l: usize| {
            if l < n {
                Ok(())
            } else {
                Err(Error::InvalidModel(format!("location {l} out of range")))
            }
        };
        in_range(initial)?;
        let mut final_flags = vec![false; n];
        for f in finals {
            in_range(f)?;
            final_flags[f] = true;
        }
        for t in &transitions {
            in_range(t.source)?;
            in_range(t.target)?;
            let mut used = Vec::new();
            t.constraint.registers(&mut used);
            for i in used {
                check_register(i, registers)?;
            }
        }
        Ok(ForgetfulRa { locations, registers, transitions, initial, finals: final_flags })
    }

    pub fn parse(text: &str) -> Result<ForgetfulRa, Error> {
        let h = parse_header(text, false)?;
        let registers = h.require_registers()?;
        let locations = h.require_locations()?;
        let mut transitions = Vec::new();
        for (line, body) in &h.body {
            let mut parts = body.splitn(3, char::is_whitespace);
            let (Some(src), Some(dst), Some(rest)) = (parts.next(), parts.next(), parts.next()) else {
                return Err(Error::syntax(Location::Line(*line), "expected `SRC DST CONSTRAINT`"));
            };
            let constraint = Constraint::parse(rest).map_err(|e| match e {
                Error::Syntax { message, .. } => Error::syntax(Location::Line(*line), message),
                other => other,
            })?;
            transitions.push(RaTransition {
                source: Header::location_index(&locations, src, *line)?,
                target: Header::location_index(&locations, dst.trim(), *line)?,
                constraint,
            });
        }
        let initial = h.resolve_initial(&locations)?;
        let finals = h.resolve_finals(&locations)?;
        ForgetfulRa::new(locations, registers, initial, finals, transitions)
    }

    pub fn registers(&self) -> usize {
        self.registers
    }

    pub fn locations(&self) -> &[String] {
        &self.locations
    }

    pub fn transitions(&self) -> &[RaTransition] {
        &self.transitions
    }

    pub fn initial_config(&self) -> RaConfig {
        RaConfig { location: self.initial, registers: Registers::empty(self.registers) }
    }

    pub fn is_final(&self, c: &RaConfig) -> bool {
        self.finals[c.location]
    }

    /// All successors on input `x`; new register contents are drawn from
    /// the old contents and `x`, each cell possibly emptied.
    pub fn successors(&self, c: &RaConfig, x: &Name) -> BTreeSet<RaConfig> {
        let mut values: Vec<Option<Name>> = vec![None, Some(x.clone())];
        for y in c.registers.contents() {
            if &y != x {
                values.push(Some(y));
            }
        }
        let candidates = vectors(&values, self.registers);
        let mut out = BTreeSet::new();
        for t in self.transitions.iter().filter(|t| t.source == c.location) {
            for v in &candidates {
                if t.constraint.holds(&c.registers, x, v) {
                    out.insert(RaConfig { location: t.target, registers: v.clone() });
                }
            }
        }
        debug_assert!(out.iter().all(|s| {
            let mut allowed = c.registers.contents();
            allowed.insert(x.clone());
            s.registers.contents().is_subset(&allowed)
        }));
        debug_assert!(out.iter().all(|s| (1..=self.registers).all(|i| {
            let mut dropped = s.clone();
            dropped.registers.set(i, None);
            out.contains(&dropped)
        })));
        out
    }

    pub fn accepts(&self, u: &DataWord) -> bool {
        let mut current = BTreeSet::from([self.initial_config()]);
        for x in u.names() {
            current = current.iter().flat_map(|c| self.successors(c, x)).collect();
        }
        current.iter().any(|c| self.is_final(c))
    }

    pub fn to_barnfa(&self) -> BarNfa {
        extract(self)
    }
}

fn vectors(values: &[Option<Name>], n: usize) -> Vec<Registers> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<Option<Name>>| {
                values.iter().map(move |x| {
                    let mut v = v.clone();
                    v.push(x.clone());
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(Registers).collect()
}

impl RegisterModel for ForgetfulRa {
    fn register_count(&self) -> usize {
        self.registers
    }

    fn location_name(&self, loc: usize) -> &str {
        &self.locations[loc]
    }

    fn is_final_location(&self, loc: usize) -> bool {
        self.finals[loc]
    }

    fn start(&self) -> (usize, Registers) {
        (self.initial, Registers::empty(self.registers))
    }

    fn initial_names(&self) -> BTreeSet<Name> {
        BTreeSet::new()
    }

    fn free_step(&self, loc: usize, regs: &Registers, x: &Name) -> BTreeSet<(usize, Registers)> {
        self.step_pairs(loc, regs, x)
    }

    fn fresh_step(&self, loc: usize, regs: &Registers, x: &Name) -> BTreeSet<(usize, Registers)> {
        self.step_pairs(loc, regs, x)
    }
}

impl ForgetfulRa {
    fn step_pairs(&self, loc: usize, regs: &Registers, x: &Name) -> BTreeSet<(usize, Registers)> {
        let c = RaConfig { location: loc, registers: regs.clone() };
        self.successors(&c, x).into_iter().map(|c| (c.location, c.registers)).collect()
    }
}

impl fmt::Display for ForgetfulRa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "registers: {}", self.registers)?;
        writeln!(f, "locations: {}", self.locations.join(" "))?;
        writeln!(f, "initial: {}", self.locations[self.initial])?;
        let finals: Vec<&str> =
            (0..self.locations.len()).filter(|&l| self.finals[l]).map(|l| self.locations[l].as_str()).collect();
        writeln!(f, "final: {}", finals.join(" "))?;
        writeln!(f, "trans:")?;
        for t in &self.transitions {
            writeln!(f, "{} {} {}", self.locations[t.source], self.locations[t.target], t.constraint)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rnna::SymbolicRnna;

    pub(crate) const ABA: &str = "registers: 1\nlocations: c0 c1 c2 c3\ninitial: c0\nfinal: c3\ntrans:\n\
                                  c0 c1 store(1)\nc1 c2 fresh(1) and keep(1,1)\nc2 c3 cmp(1)\n";

    fn n(s: &str) -> Name {
        Name::new(s).unwrap()
    }

    fn config(loc: usize, cell: Option<&str>) -> RaConfig {
        RaConfig { location: loc, registers: Registers(vec![cell.map(n)]) }
    }

    fn word(s: &str) -> DataWord {
        DataWord::parse(s).unwrap()
    }

    #[test]
    fn constraint_syntax() {
        let c = Constraint::parse("fresh(1) and keep(1,2) or (cmp(2) or store(1)) and cmp(1)").unwrap();
        assert_eq!(Constraint::parse(&c.to_string()).unwrap(), c);
        assert_eq!(c.to_string(), "fresh(1) and keep(1,2) or (cmp(2) or store(1)) and cmp(1)");
        assert!(matches!(Constraint::parse("cmp(1) and"), Err(Error::Syntax { .. })));
        assert!(matches!(Constraint::parse("swap(1)"), Err(Error::Syntax { .. })));
        assert!(matches!(Constraint::parse("keep(1)"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn successor_examples() {
        let m = ForgetfulRa::parse(ABA).unwrap();
        let s = m.successors(&config(0, None), &n("a"));
        assert!(s.contains(&config(1, Some("a"))));
        assert!(s.contains(&config(1, None)));
        assert!(m.successors(&config(1, Some("a")), &n("a")).iter().all(|c| c.location != 2));
        let s = m.successors(&config(1, Some("a")), &n("b"));
        assert!(s.contains(&config(2, Some("a"))));
        assert!(s.contains(&config(2, None)));
    }

    #[test]
    fn aba_language() {
        let m = ForgetfulRa::parse(ABA).unwrap();
        for (w, expected) in [("a b a", true), ("b c b", true), ("a a a", false), ("a a b", false), ("a b", false)] {
            assert_eq!(m.accepts(&word(w)), expected, "{w}");
        }
        let r = SymbolicRnna::new(m.to_barnfa());
        assert!(r.accepts_local(&word("a b a")));
        assert!(r.accepts_local(&word("b c b")));
        assert!(!r.accepts_local(&word("a a a")));
        assert!(m.to_barnfa().degree() <= 2);
    }

    #[test]
    fn file_round_trip() {
        let m = ForgetfulRa::parse(ABA).unwrap();
        assert_eq!(ForgetfulRa::parse(&m.to_string()).unwrap(), m);
        let bad = "registers: 1\nlocations: p\ninitial: p\ntrans:\np p keep(1,2)\n";
        assert!(matches!(ForgetfulRa::parse(bad), Err(Error::InvalidModel(_))));
        let bad = "registers: 1\nlocations: p\ninitial: p\ntrans:\np p cmp(1) or\n";
        assert!(matches!(ForgetfulRa::parse(bad), Err(Error::Syntax { at: Location::Line(5), .. })));
    }
}
