//! The name-dropping nominal automaton generated by a bar NFA.
//!
//! A state is a pair `(q, rho)` of a bar NFA state and an injective renaming
//! whose domain is a subset of `N_q`, the free names of the language of `q`.
//! The renaming stands for the coset of permutations agreeing with it; a
//! domain smaller than `N_q` is a state that has dropped some names. The
//! automaton is infinite, so only successor functions over concrete states
//! are provided and nothing is materialised.

use std::collections::BTreeSet;
use std::fmt;

use crate::barnfa::{BarNfa, StateId};
use crate::barstring::{BarLetter, BarString, DataWord};
use crate::error::Error;
use crate::nominal::{Name, PartialRenaming};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RnnaState {
    pub q: StateId,
    pub renaming: PartialRenaming,
}

impl RnnaState {
    pub fn new(q: StateId, renaming: PartialRenaming) -> Self {
        RnnaState { q, renaming }
    }

    /// The support of the state: the image of its renaming.
    pub fn support(&self) -> BTreeSet<Name> {
        self.renaming.image_set()
    }
}

impl fmt::Debug for RnnaState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {:?})", self.q, self.renaming)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Semantics {
    /// NFA acceptance of the bar string, letters matched exactly.
    Literal,
    /// Acceptance up to α-equivalence.
    Bar,
    /// Data words; bound letters read names never seen before.
    Global,
    /// Data words; bound letters read any name that does not clash with a
    /// name still needed later.
    Local,
}

impl Semantics {
    fn label(self) -> &'static str {
        match self {
            Semantics::Literal => "literal",
            Semantics::Bar => "bar",
            Semantics::Global => "global",
            Semantics::Local => "local",
        }
    }
}

impl std::str::FromStr for Semantics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "literal" => Ok(Semantics::Literal),
            "bar" => Ok(Semantics::Bar),
            "global" => Ok(Semantics::Global),
            "local" => Ok(Semantics::Local),
            other => Err(Error::syntax(crate::error::Location::Offset(0), format!("unknown semantics `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    Bar(BarString),
    Data(DataWord),
}

/// Which transitions a run step may take on input name `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    Free(Name),
    Bound(Name),
    /// Free and bound transitions alike, as when bars are erased.
    Either(Name),
}

#[derive(Clone, Debug)]
pub struct SymbolicRnna {
    nfa: BarNfa,
    support: Vec<BTreeSet<Name>>,
}

impl SymbolicRnna {
    pub fn new(nfa: BarNfa) -> Self {
        let support = nfa.free_name_support();
        SymbolicRnna { nfa, support }
    }

    pub fn nfa(&self) -> &BarNfa {
        &self.nfa
    }

    pub fn support_of(&self, q: StateId) -> &BTreeSet<Name> {
        &self.support[q]
    }

    pub fn initial_state(&self) -> RnnaState {
        let q = self.nfa.initial();
        RnnaState::new(q, PartialRenaming::identity(&self.support[q]))
    }

    pub fn is_final(&self, st: &RnnaState) -> bool {
        self.nfa.is_final(st.q)
    }

    /// Whether `st` is a state of this automaton.
    pub fn is_valid(&self, st: &RnnaState) -> bool {
        st.q < self.nfa.state_count() && st.renaming.domain().all(|n| self.support[st.q].contains(n))
    }

    /// Successors along free transitions reading `x`.
    ///
    /// A transition `q -a-> q'` with `rho(a) = x` leads to `(q', rho|N')` for
    /// every `N'` within `dom(rho) ∩ N_q'`; with `maximal_only` only the
    /// largest such `N'` is produced.
    pub fn free_successors(&self, st: &RnnaState, x: &Name, maximal_only: bool) -> BTreeSet<RnnaState> {
        let mut out = BTreeSet::new();
        let Some(a) = st.renaming.preimage(x) else {
            return out;
        };
        let label = BarLetter::Free(a.clone());
        for t in self.nfa.outgoing(st.q).filter(|t| t.label == label) {
            let widest = st.renaming.restrict(&self.support[t.target]);
            if maximal_only {
                out.insert(RnnaState::new(t.target, widest));
            } else {
                out.extend(widest.restrictions().into_iter().map(|r| RnnaState::new(t.target, r)));
            }
        }
        debug_assert!(out.iter().all(|s| s.renaming.image().all(|n| st.renaming.maps_to(n))));
        out
    }

    /// Successors along bound transitions reading `|x`.
    ///
    /// A transition `q -|b-> q'` leads to `(q', sigma)` where `sigma` sends `b`
    /// to `x` (when `b` is kept) and agrees with `rho` elsewhere on a domain
    /// `N'` within `N_q' ∩ (dom(rho) ∪ {b})`. The name `x` must not already
    /// be the image of a kept name other than `b`, so a stored copy of `x`
    /// is dropped.
    pub fn bound_successors(&self, st: &RnnaState, x: &Name, maximal_only: bool) -> BTreeSet<RnnaState> {
        let mut out = BTreeSet::new();
        let clash = st.renaming.preimage(x);
        for t in self.nfa.outgoing(st.q) {
            let BarLetter::Bound(b) = &t.label else { continue };
            let target_support = &self.support[t.target];
            let mut widest = PartialRenaming::empty();
            for (y, img) in st.renaming.iter() {
                if y != b && Some(y) != clash && target_support.contains(y) {
                    widest.insert_unchecked(y.clone(), img.clone());
                }
            }
            if target_support.contains(b) {
                widest.insert_unchecked(b.clone(), x.clone());
            }
            if maximal_only {
                out.insert(RnnaState::new(t.target, widest));
            } else {
                out.extend(widest.restrictions().into_iter().map(|r| RnnaState::new(t.target, r)));
            }
        }
        debug_assert!(out
            .iter()
            .all(|s| s.renaming.image().all(|n| n == x || st.renaming.maps_to(n))));
        out
    }

    /// All successors of `st` under one step.
    pub fn successors(&self, st: &RnnaState, mv: &Move, maximal_only: bool) -> BTreeSet<RnnaState> {
        match mv {
            Move::Free(x) => self.free_successors(st, x, maximal_only),
            Move::Bound(x) => self.bound_successors(st, x, maximal_only),
            Move::Either(x) => {
                let mut out = self.free_successors(st, x, maximal_only);
                out.extend(self.bound_successors(st, x, maximal_only));
                out
            }
        }
    }

    /// Advances a set of states by one step.
    pub fn step(&self, frontier: &BTreeSet<RnnaState>, mv: &Move, maximal_only: bool) -> BTreeSet<RnnaState> {
        frontier.iter().flat_map(|st| self.successors(st, mv, maximal_only)).collect()
    }

    /// The frontier after each prefix of the move sequence, starting with
    /// the singleton initial frontier.
    pub fn trace(&self, moves: &[Move], maximal_only: bool) -> Vec<BTreeSet<RnnaState>> {
        let mut frontiers = vec![BTreeSet::from([self.initial_state()])];
        for mv in moves {
            let next = self.step(frontiers.last().expect("nonempty"), mv, maximal_only);
            frontiers.push(next);
        }
        frontiers
    }

    /// The moves a word induces under the given semantics.
    pub fn moves(&self, input: &Input, semantics: Semantics) -> Result<Vec<Move>, Error> {
        match (semantics, input) {
            (Semantics::Literal | Semantics::Bar, Input::Bar(w)) => Ok(w
                .iter()
                .map(|l| match l {
                    BarLetter::Free(x) => Move::Free(x.clone()),
                    BarLetter::Bound(x) => Move::Bound(x.clone()),
                })
                .collect()),
            (Semantics::Global, Input::Data(u)) => {
                // binding x is only possible while x has not occurred yet
                let mut seen = BTreeSet::new();
                Ok(u.names()
                    .iter()
                    .map(|x| {
                        if seen.insert(x.clone()) {
                            Move::Either(x.clone())
                        } else {
                            Move::Free(x.clone())
                        }
                    })
                    .collect())
            }
            (Semantics::Local, Input::Data(u)) => Ok(u.names().iter().map(|x| Move::Either(x.clone())).collect()),
            (Semantics::Literal | Semantics::Bar, Input::Data(_)) => {
                Err(Error::InputMismatch { semantics: semantics.label(), expected: "a bar string" })
            }
            (Semantics::Global | Semantics::Local, Input::Bar(_)) => {
                Err(Error::InputMismatch { semantics: semantics.label(), expected: "a data word" })
            }
        }
    }

    pub fn accepts(&self, input: &Input, semantics: Semantics) -> Result<bool, Error> {
        self.accepts_with(input, semantics, true)
    }

    pub fn accepts_with(&self, input: &Input, semantics: Semantics, maximal_only: bool) -> Result<bool, Error> {
        if let (Semantics::Literal, Input::Bar(w)) = (semantics, input) {
            return Ok(self.nfa.literal_accepts(w));
        }
        let moves = self.moves(input, semantics)?;
        let mut frontier = BTreeSet::from([self.initial_state()]);
        for mv in &moves {
            frontier = self.step(&frontier, mv, maximal_only);
            if frontier.is_empty() {
                return Ok(false);
            }
        }
        Ok(frontier.iter().any(|st| self.is_final(st)))
    }

    pub fn accepts_bar(&self, w: &BarString) -> bool {
        self.accepts(&Input::Bar(w.clone()), Semantics::Bar).expect("bar input")
    }

    pub fn accepts_global(&self, u: &DataWord) -> bool {
        self.accepts(&Input::Data(u.clone()), Semantics::Global).expect("data input")
    }

    pub fn accepts_local(&self, u: &DataWord) -> bool {
        self.accepts(&Input::Data(u.clone()), Semantics::Local).expect("data input")
    }
}
