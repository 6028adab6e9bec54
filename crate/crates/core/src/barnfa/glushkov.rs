//! Position (Glushkov) construction: one state per letter occurrence plus an
//! initial state, no ε-transitions.

use std::collections::BTreeSet;

use super::{BarNfa, Rbe, Transition};
use crate::barstring::BarLetter;

struct Positions {
    letters: Vec<BarLetter>,
    follow: Vec<BTreeSet<usize>>,
}

struct Summary {
    nullable: bool,
    first: BTreeSet<usize>,
    last: BTreeSet<usize>,
}

impl Positions {
    fn linearize(&mut self, e: &Rbe) -> Summary {
        match e {
            Rbe::Zero => Summary { nullable: false, first: BTreeSet::new(), last: BTreeSet::new() },
            Rbe::One => Summary { nullable: true, first: BTreeSet::new(), last: BTreeSet::new() },
            Rbe::Letter(l) => {
                let p = self.letters.len();
                self.letters.push(l.clone());
                self.follow.push(BTreeSet::new());
                Summary { nullable: false, first: BTreeSet::from([p]), last: BTreeSet::from([p]) }
            }
            Rbe::Sum(l, r) => {
                let l = self.linearize(l);
                let r = self.linearize(r);
                Summary {
                    nullable: l.nullable || r.nullable,
                    first: l.first.union(&r.first).copied().collect(),
                    last: l.last.union(&r.last).copied().collect(),
                }
            }
            Rbe::Concat(l, r) => {
                let l = self.linearize(l);
                let r = self.linearize(r);
                for &p in &l.last {
                    self.follow[p].extend(r.first.iter().copied());
                }
                let mut first = l.first;
                if l.nullable {
                    first.extend(r.first.iter().copied());
                }
                let mut last = r.last;
                if r.nullable {
                    last.extend(l.last);
                }
                Summary { nullable: l.nullable && r.nullable, first, last }
            }
            Rbe::Star(inner) => {
                let s = self.linearize(inner);
                for &p in &s.last {
                    self.follow[p].extend(s.first.iter().copied());
                }
                Summary { nullable: true, first: s.first, last: s.last }
            }
        }
    }
}

/// Compiles an expression to an ε-free bar NFA with `letter_count + 1` states.
///
/// State `q0` is initial; state `q{i}` is entered by reading the `i`-th
/// letter occurrence (counting from 1, left to right).
pub fn compile(e: &Rbe) -> BarNfa {
    let mut pos = Positions { letters: Vec::new(), follow: Vec::new() };
    let summary = pos.linearize(e);
    let n = pos.letters.len();
    let state = |p: usize| p + 1;
    let mut transitions = Vec::new();
    for &p in &summary.first {
        transitions.push(Transition { source: 0, label: pos.letters[p].clone(), target: state(p) });
    }
    for (p, follow) in pos.follow.iter().enumerate() {
        for &r in follow {
            transitions.push(Transition { source: state(p), label: pos.letters[r].clone(), target: state(r) });
        }
    }
    let mut finals: Vec<usize> = summary.last.iter().map(|&p| state(p)).collect();
    if summary.nullable {
        finals.push(0);
    }
    let names = (0..=n).map(|i| format!("q{i}")).collect();
    BarNfa::new(names, 0, finals, transitions).expect("position automaton is well formed")
}
