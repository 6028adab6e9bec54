//! Register automata over data words and their translation to bar NFAs.

mod forgetful;
mod fsuba;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

pub use forgetful::{Constraint, ForgetfulRa, RaConfig, RaTransition};
pub use fsuba::{Fsuba, FsubaConfig, FsubaTransition};

use crate::barnfa::{BarNfa, Transition};
use crate::barstring::BarLetter;
use crate::error::{Error, Location};
use crate::nominal::{Name, Nominal, Transposition};

/// Register contents; `None` is an empty register. Index 0 holds register 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Registers(pub Vec<Option<Name>>);

impl Registers {
    pub fn empty(n: usize) -> Self {
        Registers(vec![None; n])
    }

    /// The content of register `i`, counting from 1.
    pub fn get(&self, i: usize) -> Option<&Name> {
        self.0.get(i.wrapping_sub(1)).and_then(Option::as_ref)
    }

    pub fn set(&mut self, i: usize, x: Option<Name>) {
        self.0[i - 1] = x;
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contents(&self) -> BTreeSet<Name> {
        self.0.iter().flatten().cloned().collect()
    }

    pub fn holds(&self, x: &Name) -> bool {
        self.0.iter().any(|c| c.as_ref() == Some(x))
    }
}

impl Nominal for Registers {
    fn swap(&self, t: &Transposition) -> Self {
        Registers(self.0.swap(t))
    }
}

impl fmt::Display for Registers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            match c {
                Some(x) => write!(f, "{x}")?,
                None => f.write_str("-")?,
            }
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Registers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// What the bar NFA extraction needs from a register model.
pub(crate) trait RegisterModel {
    fn register_count(&self) -> usize;
    fn location_name(&self, loc: usize) -> &str;
    fn is_final_location(&self, loc: usize) -> bool;
    fn start(&self) -> (usize, Registers);
    /// Names that must belong to the finite window of the extraction.
    fn initial_names(&self) -> BTreeSet<Name>;
    /// Successors on a name already held in the registers.
    fn free_step(&self, loc: usize, regs: &Registers, x: &Name) -> BTreeSet<(usize, Registers)>;
    /// Successors on a name held in no register.
    fn fresh_step(&self, loc: usize, regs: &Registers, x: &Name) -> BTreeSet<(usize, Registers)>;
}

/// Finite bar NFA over the configurations whose registers hold only names
/// from a window `A0` of size equal to the register count.
///
/// Bound transitions are computed once at a scratch name `b` and then
/// renamed to every `|a` with `a` in `A0` or the extra name `*`, provided
/// `a` is not otherwise mentioned by the target, so that `<a>t' = <b>t`.
pub(crate) fn extract<M: RegisterModel>(m: &M) -> BarNfa {
    let mut window = m.initial_names();
    while window.len() < m.register_count() {
        window.insert(Name::least_fresh(&window));
    }
    let star = Name::least_fresh(&window);
    let mut labels: Vec<Name> = window.iter().cloned().collect();
    labels.push(star.clone());

    let start = m.start();
    let mut index: BTreeMap<(usize, Registers), usize> = BTreeMap::from([(start.clone(), 0)]);
    let mut configs = vec![start];
    let mut transitions = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    let inside = |regs: &Registers| regs.contents().is_subset(&window);

    while let Some(i) = queue.pop_front() {
        let (loc, regs) = configs[i].clone();
        let mut edges: Vec<(BarLetter, (usize, Registers))> = Vec::new();
        for x in regs.contents() {
            for t in m.free_step(loc, &regs, &x) {
                edges.push((BarLetter::Free(x.clone()), t));
            }
        }
        let mut avoid = regs.contents();
        avoid.extend(labels.iter().cloned());
        let scratch = Name::least_fresh(&avoid);
        for (tloc, tregs) in m.fresh_step(loc, &regs, &scratch) {
            for a in &labels {
                if tregs.holds(a) {
                    continue;
                }
                let renamed = tregs.swap(&Transposition::new(a.clone(), scratch.clone()));
                if inside(&renamed) {
                    edges.push((BarLetter::Bound(a.clone()), (tloc, renamed)));
                }
            }
        }
        for (label, target) in edges {
            debug_assert!(inside(&target.1));
            let j = *index.entry(target.clone()).or_insert_with(|| {
                configs.push(target);
                queue.push_back(configs.len() - 1);
                configs.len() - 1
            });
            transitions.push(Transition { source: i, label, target: j });
        }
    }

    let names = configs.iter().map(|(loc, regs)| format!("{}{}", m.location_name(*loc), regs)).collect();
    let finals: Vec<usize> = (0..configs.len()).filter(|&i| m.is_final_location(configs[i].0)).collect();
    BarNfa::new(names, 0, finals, transitions).expect("extracted automaton is well formed")
}

/// Header lines shared by both model file formats.
#[derive(Default)]
pub(crate) struct Header {
    pub registers: Option<usize>,
    pub locations: Option<Vec<String>>,
    pub initial: Option<String>,
    pub finals: Vec<String>,
    pub assign: Vec<(usize, Name)>,
    /// Transition lines with their line numbers.
    pub body: Vec<(usize, String)>,
}

pub(crate) fn parse_header(text: &str, allow_assign: bool) -> Result<Header, Error> {
    let mut h = Header::default();
    let mut in_trans = false;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::syntax(Location::Line(lineno), msg);
        if in_trans {
            h.body.push((lineno, line.to_string()));
            continue;
        }
        let Some((key, value)) = line.split_once(':') else {
            return Err(err(format!("expected `key: value`, found `{line}`")));
        };
        let words: Vec<String> = value.split_whitespace().map(str::to_string).collect();
        match key.trim() {
            "registers" => {
                let n = match words.as_slice() {
                    [one] => one.parse().map_err(|_| err(format!("bad register count `{one}`")))?,
                    _ => return Err(err("`registers:` takes one number".into())),
                };
                h.registers = Some(n);
            }
            "locations" | "states" => h.locations = Some(words),
            "initial" => match words.as_slice() {
                [one] => h.initial = Some(one.clone()),
                _ => return Err(err("`initial:` takes exactly one location".into())),
            },
            "final" | "finals" => h.finals.extend(words),
            "assign" if allow_assign => {
                for w in words {
                    let (k, x) = w.split_once('=').ok_or_else(|| err(format!("expected `k=name`, found `{w}`")))?;
                    let k = k.parse().map_err(|_| err(format!("bad register index `{k}`")))?;
                    let x = Name::new(x).map_err(|e| err(e.to_string()))?;
                    h.assign.push((k, x));
                }
            }
            "trans" => {
                if !words.is_empty() {
                    return Err(err("transitions go on the lines after `trans:`".into()));
                }
                in_trans = true;
            }
            other => return Err(err(format!("unknown key `{other}`"))),
        }
    }
    Ok(h)
}

impl Header {
    pub fn require_registers(&self) -> Result<usize, Error> {
        self.registers.ok_or_else(|| Error::syntax(Location::Line(1), "missing `registers:` line"))
    }

    pub fn require_locations(&self) -> Result<Vec<String>, Error> {
        self.locations.clone().ok_or_else(|| Error::syntax(Location::Line(1), "missing `locations:` line"))
    }

    pub fn location_index(locations: &[String], name: &str, line: usize) -> Result<usize, Error> {
        locations
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| Error::syntax(Location::Line(line), format!("unknown location `{name}`")))
    }

    pub fn resolve_initial(&self, locations: &[String]) -> Result<usize, Error> {
        let name = self.initial.as_deref().ok_or_else(|| Error::syntax(Location::Line(1), "missing `initial:` line"))?;
        locations
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| Error::InvalidModel(format!("unknown initial location `{name}`")))
    }

    pub fn resolve_finals(&self, locations: &[String]) -> Result<Vec<usize>, Error> {
        self.finals
            .iter()
            .map(|f| {
                locations
                    .iter()
                    .position(|l| l == f)
                    .ok_or_else(|| Error::InvalidModel(format!("unknown final location `{f}`")))
            })
            .collect()
    }
}

pub(crate) fn check_locations(locations: &[String]) -> Result<(), Error> {
    let mut seen = BTreeSet::new();
    for l in locations {
        if l.is_empty() || l.contains(|c: char| c.is_whitespace() || c == ':' || c == '#') {
            return Err(Error::InvalidModel(format!("bad location name `{l}`")));
        }
        if !seen.insert(l) {
            return Err(Error::InvalidModel(format!("duplicate location `{l}`")));
        }
    }
    Ok(())
}

pub(crate) fn check_register(i: usize, n: usize) -> Result<(), Error> {
    if i == 0 || i > n {
        Err(Error::InvalidModel(format!("register {i} out of range 1..={n}")))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registers_display_and_swap() {
        let a = Name::new("a").unwrap();
        let b = Name::new("b").unwrap();
        let r = Registers(vec![Some(a.clone()), None]);
        assert_eq!(r.to_string(), "[a,-]");
        assert_eq!(r.get(1), Some(&a));
        assert_eq!(r.get(2), None);
        assert_eq!(r.get(0), None);
        assert_eq!(r.swap(&Transposition::new(a, b.clone())).get(1), Some(&b));
    }
}
