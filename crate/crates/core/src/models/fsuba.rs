//! Finite-state unification-based automata.
//!
//! A transition `(q, k, S, p)` reads a name into register `k` if that
//! register is empty or already holds the name, then clears the registers
//! in `S`.
//!
//! ```text
//! registers: 1
//! locations: q0 q1 q2
//! initial: q0
//! final: q2
//! trans:
//! q0 1 {} q1
//! q1 1 {} q2
//! ```

use std::collections::BTreeSet;
use std::fmt;

use super::{check_locations, check_register, extract, parse_header, Header, RegisterModel, Registers};
use crate::barnfa::BarNfa;
use crate::barstring::DataWord;
use crate::error::{Error, Location};
use crate::nominal::Name;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FsubaTransition {
    pub source: usize,
    /// Register index, counting from 1.
    pub register: usize,
    pub erase: BTreeSet<usize>,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FsubaConfig {
    pub location: usize,
    /// Contents may repeat names.
    pub assignment: Registers,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fsuba {
    locations: Vec<String>,
    registers: usize,
    transitions: Vec<FsubaTransition>,
    initial: usize,
    finals: Vec<bool>,
    assignment: Registers,
}

impl Fsuba {
    pub fn new(
        locations: Vec<String>,
        registers: usize,
        initial: usize,
        finals: impl IntoIterator<Item = usize>,
        transitions: Vec<FsubaTransition>,
        assignment: impl IntoIterator<Item = (usize, Name)>,
    ) -> Result<Fsuba, Error> {
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
            check_register(t.register, registers)?;
            for &i in &t.erase {
                check_register(i, registers)?;
            }
        }
        let mut regs = Registers::empty(registers);
        for (k, x) in assignment {
            check_register(k, registers)?;
            regs.set(k, Some(x));
        }
        Ok(Fsuba { locations, registers, transitions, initial, finals: final_flags, assignment: regs })
    }

    pub fn parse(text: &str) -> Result<Fsuba, Error> {
        let h = parse_header(text, true)?;
        let registers = h.require_registers()?;
        let locations = h.require_locations()?;
        let mut transitions = Vec::new();
        for (line, body) in &h.body {
            let err = |msg: String| Error::syntax(Location::Line(*line), msg);
            let (open, close) = match (body.find('{'), body.find('}')) {
                (Some(o), Some(c)) if o < c => (o, c),
                _ => return Err(err("expected `SRC k {i,j} DST`".into())),
            };
            let head: Vec<&str> = body[..open].split_whitespace().collect();
            let tail: Vec<&str> = body[close + 1..].split_whitespace().collect();
            let ([src, k], [dst]) = (head.as_slice(), tail.as_slice()) else {
                return Err(err("expected `SRC k {i,j} DST`".into()));
            };
            let register = k.parse().map_err(|_| err(format!("bad register index `{k}`")))?;
            let erase = body[open + 1..close]
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| s.parse().map_err(|_| err(format!("bad register index `{s}`"))))
                .collect::<Result<BTreeSet<usize>, Error>>()?;
            transitions.push(FsubaTransition {
                source: Header::location_index(&locations, src, *line)?,
                register,
                erase,
                target: Header::location_index(&locations, dst, *line)?,
            });
        }
        let initial = h.resolve_initial(&locations)?;
        let finals = h.resolve_finals(&locations)?;
        Fsuba::new(locations, registers, initial, finals, transitions, h.assign)
    }

    pub fn registers(&self) -> usize {
        self.registers
    }

    pub fn locations(&self) -> &[String] {
        &self.locations
    }

    pub fn transitions(&self) -> &[FsubaTransition] {
        &self.transitions
    }

    pub fn initial_config(&self) -> FsubaConfig {
        FsubaConfig { location: self.initial, assignment: self.assignment.clone() }
    }

    pub fn is_final(&self, c: &FsubaConfig) -> bool {
        self.finals[c.location]
    }

    fn fire(t: &FsubaTransition, v: &Registers, x: &Name) -> FsubaConfig {
        let mut w = v.clone();
        w.set(t.register, Some(x.clone()));
        for &i in &t.erase {
            w.set(i, None);
        }
        FsubaConfig { location: t.target, assignment: w }
    }

    fn outgoing(&self, loc: usize) -> impl Iterator<Item = &FsubaTransition> + '_ {
        self.transitions.iter().filter(move |t| t.source == loc)
    }

    pub fn step(&self, c: &FsubaConfig, x: &Name) -> BTreeSet<FsubaConfig> {
        self.outgoing(c.location)
            .filter(|t| c.assignment.get(t.register).is_none_or(|y| y == x))
            .map(|t| Self::fire(t, &c.assignment, x))
            .collect()
    }

    pub fn accepts(&self, u: &DataWord) -> bool {
        let mut current = BTreeSet::from([self.initial_config()]);
        for x in u.names() {
            current = current.iter().flat_map(|c| self.step(c, x)).collect();
        }
        current.iter().any(|c| self.is_final(c))
    }

    /// Free and bound successors of the nominal automaton of `self`.
    ///
    /// Free: read `x` from register `k` holding it, or write `x` into an
    /// empty `k` when `x` is already stored elsewhere. Bound: write `x`
    /// into an empty `k` when no register holds it.
    pub fn rnna_successors(&self, c: &FsubaConfig, x: &Name) -> (BTreeSet<FsubaConfig>, BTreeSet<FsubaConfig>) {
        let v = &c.assignment;
        let stored = v.holds(x);
        let mut free = BTreeSet::new();
        let mut bound = BTreeSet::new();
        for t in self.outgoing(c.location) {
            match v.get(t.register) {
                Some(y) if y == x => {
                    free.insert(Self::fire(t, v, x));
                }
                Some(_) => {}
                None if stored => {
                    free.insert(Self::fire(t, v, x));
                }
                None => {
                    bound.insert(Self::fire(t, v, x));
                }
            }
        }
        (free, bound)
    }

    pub fn to_barnfa(&self) -> BarNfa {
        extract(self)
    }
}

impl RegisterModel for Fsuba {
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
        (self.initial, self.assignment.clone())
    }

    fn initial_names(&self) -> BTreeSet<Name> {
        self.assignment.contents()
    }

    fn free_step(&self, loc: usize, regs: &Registers, x: &Name) -> BTreeSet<(usize, Registers)> {
        let c = FsubaConfig { location: loc, assignment: regs.clone() };
        self.rnna_successors(&c, x).0.into_iter().map(|c| (c.location, c.assignment)).collect()
    }

    fn fresh_step(&self, loc: usize, regs: &Registers, x: &Name) -> BTreeSet<(usize, Registers)> {
        let c = FsubaConfig { location: loc, assignment: regs.clone() };
        self.rnna_successors(&c, x).1.into_iter().map(|c| (c.location, c.assignment)).collect()
    }
}

impl fmt::Display for Fsuba {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "registers: {}", self.registers)?;
        writeln!(f, "locations: {}", self.locations.join(" "))?;
        writeln!(f, "initial: {}", self.locations[self.initial])?;
        let finals: Vec<&str> =
            (0..self.locations.len()).filter(|&l| self.finals[l]).map(|l| self.locations[l].as_str()).collect();
        writeln!(f, "final: {}", finals.join(" "))?;
        let assign: Vec<String> =
            (1..=self.registers).filter_map(|k| self.assignment.get(k).map(|x| format!("{k}={x}"))).collect();
        if !assign.is_empty() {
            writeln!(f, "assign: {}", assign.join(" "))?;
        }
        writeln!(f, "trans:")?;
        for t in &self.transitions {
            let erase: Vec<String> = t.erase.iter().map(usize::to_string).collect();
            writeln!(
                f,
                "{} {} {{{}}} {}",
                self.locations[t.source],
                t.register,
                erase.join(","),
                self.locations[t.target]
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rnna::SymbolicRnna;

    const XX: &str = "registers: 1\nlocations: q0 q1 q2\ninitial: q0\nfinal: q2\ntrans:\nq0 1 {} q1\nq1 1 {} q2\n";

    fn n(s: &str) -> Name {
        Name::new(s).unwrap()
    }

    fn regs(cells: &[Option<&str>]) -> Registers {
        Registers(cells.iter().map(|c| c.map(n)).collect())
    }

    fn config(loc: usize, cells: &[Option<&str>]) -> FsubaConfig {
        FsubaConfig { location: loc, assignment: regs(cells) }
    }

    #[test]
    fn step_examples() {
        let m = Fsuba::parse(XX).unwrap();
        assert_eq!(m.step(&config(0, &[None]), &n("a")), BTreeSet::from([config(1, &[Some("a")])]));
        assert!(m.step(&config(1, &[Some("a")]), &n("b")).is_empty());
        assert!(m.step(&config(2, &[Some("a")]), &n("a")).is_empty());
    }

    #[test]
    fn acceptance_examples() {
        let m = Fsuba::parse(XX).unwrap();
        assert!(m.accepts(&DataWord::parse("a a").unwrap()));
        assert!(!m.accepts(&DataWord::parse("a b").unwrap()));
        let eps = Fsuba::parse("registers: 0\nlocations: q\ninitial: q\nfinal: q\ntrans:\n").unwrap();
        assert!(eps.accepts(&DataWord::default()));
        let dead = Fsuba::parse("registers: 1\nlocations: p q\ninitial: p\nfinal: q\ntrans:\nq 1 {} q\n").unwrap();
        assert!(!dead.accepts(&DataWord::parse("a").unwrap()));
    }

    #[test]
    fn rnna_successor_examples() {
        let m = Fsuba::parse(XX).unwrap();
        let (free, bound) = m.rnna_successors(&config(0, &[None]), &n("a"));
        assert!(free.is_empty());
        assert_eq!(bound, BTreeSet::from([config(1, &[Some("a")])]));
        let (free, bound) = m.rnna_successors(&config(1, &[Some("a")]), &n("a"));
        assert_eq!(free, BTreeSet::from([config(2, &[Some("a")])]));
        assert!(bound.is_empty());
        assert_eq!(m.rnna_successors(&config(2, &[Some("a")]), &n("a")), (BTreeSet::new(), BTreeSet::new()));
    }

    #[test]
    fn erase_and_assignment() {
        let text = "registers: 2\nlocations: p q\ninitial: p\nfinal: q\nassign: 1=c\ntrans:\np 2 {1, 2} q\n";
        let m = Fsuba::parse(text).unwrap();
        assert_eq!(m.initial_config(), config(0, &[Some("c"), None]));
        assert_eq!(m.step(&m.initial_config(), &n("d")), BTreeSet::from([config(1, &[None, None])]));
        assert_eq!(Fsuba::parse(&m.to_string()).unwrap(), m);
    }

    #[test]
    fn translation_of_xx() {
        let m = Fsuba::parse(XX).unwrap();
        let nfa = m.to_barnfa();
        let labels: BTreeSet<String> = nfa.transitions().iter().map(|t| t.label.to_string()).collect();
        assert!(labels.is_subset(&BTreeSet::from(["a".into(), "|a".into(), "|b".into()])));
        assert!(nfa.degree() <= 2);
        let r = SymbolicRnna::new(nfa);
        assert!(r.accepts_local(&DataWord::parse("c c").unwrap()));
        assert!(!r.accepts_local(&DataWord::parse("c d").unwrap()));
    }

    #[test]
    fn no_finals_gives_empty_language() {
        let m = Fsuba::parse("registers: 1\nlocations: p\ninitial: p\ntrans:\np 1 {1} p\n").unwrap();
        assert!(m.to_barnfa().enumerate_literal(4).is_empty());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Fsuba::parse("locations: p\ninitial: p\n"), Err(Error::Syntax { .. })));
        let bad = "registers: 1\nlocations: p\ninitial: p\ntrans:\np 2 {} p\n";
        assert!(matches!(Fsuba::parse(bad), Err(Error::InvalidModel(_))));
        let bad = "registers: 1\nlocations: p\ninitial: p\ntrans:\np 1 p\n";
        assert_eq!(
            Fsuba::parse(bad),
            Err(Error::Syntax { at: Location::Line(5), message: "expected `SRC k {i,j} DST`".into() })
        );
    }
}
