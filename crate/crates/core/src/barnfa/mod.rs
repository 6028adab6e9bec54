//! Bar NFAs: ordinary NFAs over free and bound letters.

mod expr;
mod format;
mod glushkov;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

pub use expr::Rbe;
pub use glushkov::compile;

use crate::barstring::{BarLetter, BarString};
use crate::error::Error;
use crate::nominal::Name;

pub type StateId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition {
    pub source: StateId,
    pub label: BarLetter,
    pub target: StateId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarNfa {
    state_names: Vec<String>,
    initial: StateId,
    finals: Vec<bool>,
    transitions: Vec<Transition>,
    outgoing: Vec<Vec<usize>>,
}

impl BarNfa {
    /// Builds an automaton; transitions are deduplicated.
    pub fn new(
        state_names: Vec<String>,
        initial: StateId,
        finals: impl IntoIterator<Item = StateId>,
        transitions: impl IntoIterator<Item = Transition>,
    ) -> Result<BarNfa, Error> {
        let n = state_names.len();
        if initial >= n {
            return Err(Error::InvalidAutomaton(format!("initial state {initial} out of range")));
        }
        let mut seen = BTreeSet::new();
        for s in &state_names {
            if s.is_empty() || s.contains(char::is_whitespace) {
                return Err(Error::InvalidAutomaton(format!("bad state name `{s}`")));
            }
            if !seen.insert(s.as_str()) {
                return Err(Error::InvalidAutomaton(format!("duplicate state `{s}`")));
            }
        }
        let mut final_flags = vec![false; n];
        for f in finals {
            if f >= n {
                return Err(Error::InvalidAutomaton(format!("final state {f} out of range")));
            }
            final_flags[f] = true;
        }
        let transitions: BTreeSet<Transition> = transitions.into_iter().collect();
        let mut outgoing = vec![Vec::new(); n];
        for (i, t) in transitions.iter().enumerate() {
            if t.source >= n || t.target >= n {
                return Err(Error::InvalidAutomaton(format!("transition {i} has an endpoint out of range")));
            }
            outgoing[t.source].push(i);
        }
        Ok(BarNfa {
            state_names,
            initial,
            finals: final_flags,
            transitions: transitions.into_iter().collect(),
            outgoing,
        })
    }

    pub fn state_count(&self) -> usize {
        self.state_names.len()
    }

    pub fn states(&self) -> std::ops::Range<StateId> {
        0..self.state_names.len()
    }

    pub fn state_name(&self, q: StateId) -> &str {
        &self.state_names[q]
    }

    pub fn state_by_name(&self, name: &str) -> Option<StateId> {
        self.state_names.iter().position(|s| s == name)
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals[q]
    }

    pub fn finals(&self) -> impl Iterator<Item = StateId> + '_ {
        self.states().filter(|&q| self.finals[q])
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn outgoing(&self, q: StateId) -> impl Iterator<Item = &Transition> + '_ {
        self.outgoing[q].iter().map(|&i| &self.transitions[i])
    }

    /// Names occurring in transition labels.
    pub fn names(&self) -> BTreeSet<Name> {
        self.transitions.iter().map(|t| t.label.name().clone()).collect()
    }

    pub fn degree(&self) -> usize {
        self.names().len()
    }

    fn alphabet(&self) -> BTreeSet<BarLetter> {
        self.transitions.iter().map(|t| t.label.clone()).collect()
    }

    fn step(&self, from: &BTreeSet<StateId>, letter: &BarLetter) -> BTreeSet<StateId> {
        from.iter()
            .flat_map(|&q| self.outgoing(q))
            .filter(|t| t.label == *letter)
            .map(|t| t.target)
            .collect()
    }

    /// Plain NFA acceptance over the extended alphabet.
    pub fn literal_accepts(&self, w: &BarString) -> bool {
        self.literal_accepts_from(self.initial, w)
    }

    pub fn literal_accepts_from(&self, q: StateId, w: &BarString) -> bool {
        let mut current = BTreeSet::from([q]);
        for l in w.iter() {
            current = self.step(&current, l);
            if current.is_empty() {
                return false;
            }
        }
        current.iter().any(|&q| self.finals[q])
    }

    /// Every literally accepted bar string of length at most `max_len`.
    pub fn enumerate_literal(&self, max_len: usize) -> BTreeSet<BarString> {
        self.enumerate_literal_from(self.initial, max_len)
    }

    pub fn enumerate_literal_from(&self, q: StateId, max_len: usize) -> BTreeSet<BarString> {
        let alphabet: Vec<BarLetter> = self.alphabet().into_iter().collect();
        let mut out = BTreeSet::new();
        let mut stack = vec![(BarString::empty(), BTreeSet::from([q]))];
        while let Some((word, states)) = stack.pop() {
            if states.iter().any(|&s| self.finals[s]) {
                out.insert(word.clone());
            }
            if word.len() == max_len {
                continue;
            }
            for l in &alphabet {
                let next = self.step(&states, l);
                if !next.is_empty() {
                    let mut longer = word.clone();
                    longer.push(l.clone());
                    stack.push((longer, next));
                }
            }
        }
        out
    }

    /// States from which some final state is reachable.
    pub fn co_reachable(&self) -> Vec<bool> {
        let mut incoming = vec![Vec::new(); self.state_count()];
        for t in &self.transitions {
            incoming[t.target].push(t.source);
        }
        let mut seen = self.finals.clone();
        let mut queue: VecDeque<StateId> = self.finals().collect();
        while let Some(q) = queue.pop_front() {
            for &p in &incoming[q] {
                if !seen[p] {
                    seen[p] = true;
                    queue.push_back(p);
                }
            }
        }
        seen
    }

    /// The free names of the language accepted from each state.
    ///
    /// `a` is in the support of `q` iff some path from `q` reaches an
    /// `a`-transition without crossing a `|a`-transition first, and the
    /// target of that transition can still reach a final state.
    pub fn free_name_support(&self) -> Vec<BTreeSet<Name>> {
        let co = self.co_reachable();
        let mut support = vec![BTreeSet::new(); self.state_count()];
        for a in self.names() {
            for q in self.reaches_free_use(&a, &co) {
                support[q].insert(a.clone());
            }
        }
        support
    }

    /// States with a path to a live `a`-transition avoiding `|a`.
    fn reaches_free_use(&self, a: &Name, co: &[bool]) -> Vec<StateId> {
        let bound = BarLetter::Bound(a.clone());
        let free = BarLetter::Free(a.clone());
        let mut incoming = vec![Vec::new(); self.state_count()];
        for t in &self.transitions {
            if t.label != bound {
                incoming[t.target].push(t.source);
            }
        }
        let mut seen = vec![false; self.state_count()];
        let mut queue = VecDeque::new();
        for t in &self.transitions {
            if t.label == free && co[t.target] && !seen[t.source] {
                seen[t.source] = true;
                queue.push_back(t.source);
            }
        }
        while let Some(q) = queue.pop_front() {
            for &p in &incoming[q] {
                if !seen[p] {
                    seen[p] = true;
                    queue.push_back(p);
                }
            }
        }
        self.states().filter(|&q| seen[q]).collect()
    }

    /// A word accepted from `q` in which `a` occurs free, following the same
    /// path shape as [`BarNfa::free_name_support`]: a `|a`-free prefix, the
    /// `a`-transition, then a shortest completion to a final state.
    pub fn support_witness(&self, q: StateId, a: &Name) -> Option<BarString> {
        let co = self.co_reachable();
        let bound = BarLetter::Bound(a.clone());
        let free = BarLetter::Free(a.clone());
        // BFS over the graph without |a edges until a live a-transition fires.
        let mut parent: BTreeMap<StateId, Option<(StateId, BarLetter)>> = BTreeMap::from([(q, None)]);
        let mut queue = VecDeque::from([q]);
        let mut hit = None;
        while let Some(p) = queue.pop_front() {
            if let Some(t) = self.outgoing(p).find(|t| t.label == free && co[t.target]) {
                hit = Some((p, t.target));
                break;
            }
            for t in self.outgoing(p) {
                if t.label != bound && !parent.contains_key(&t.target) {
                    parent.insert(t.target, Some((p, t.label.clone())));
                    queue.push_back(t.target);
                }
            }
        }
        let (p, after) = hit?;
        let mut prefix = Vec::new();
        let mut cur = p;
        while let Some(Some((prev, l))) = parent.get(&cur) {
            prefix.push(l.clone());
            cur = *prev;
        }
        prefix.reverse();
        prefix.push(free);
        prefix.extend(self.shortest_completion(after)?);
        Some(BarString::new(prefix))
    }

    fn shortest_completion(&self, q: StateId) -> Option<Vec<BarLetter>> {
        let mut parent: BTreeMap<StateId, Option<(StateId, BarLetter)>> = BTreeMap::from([(q, None)]);
        let mut queue = VecDeque::from([q]);
        while let Some(p) = queue.pop_front() {
            if self.finals[p] {
                let mut word = Vec::new();
                let mut cur = p;
                while let Some(Some((prev, l))) = parent.get(&cur) {
                    word.push(l.clone());
                    cur = *prev;
                }
                word.reverse();
                return Some(word);
            }
            for t in self.outgoing(p) {
                if let std::collections::btree_map::Entry::Vacant(e) = parent.entry(t.target) {
                    e.insert(Some((p, t.label.clone())));
                    queue.push_back(t.target);
                }
            }
        }
        None
    }

    /// The states reachable from the initial state.
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.state_count()];
        seen[self.initial] = true;
        let mut queue = VecDeque::from([self.initial]);
        while let Some(q) = queue.pop_front() {
            for t in self.outgoing(q) {
                if !seen[t.target] {
                    seen[t.target] = true;
                    queue.push_back(t.target);
                }
            }
        }
        seen
    }
}
