//! Inclusion and equivalence of bar NFAs under bar and local-freshness
//! semantics.
//!
//! The left automaton is run literally while the right one is tracked as a
//! set of states of its name-dropping nominal automaton. Renamings in that
//! set only ever take values among the names occurring in either automaton,
//! so the configuration space is finite and an exhaustive breadth-first
//! search with memoisation decides inclusion and yields a shortest
//! counterexample.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::barnfa::{BarNfa, StateId, Transition};
use crate::barstring::{BarLetter, BarString, DataWord};
use crate::error::Error;
use crate::nominal::Name;
use crate::rnna::{Move, RnnaState, SymbolicRnna};

pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InclusionSemantics {
    /// Inclusion of bar languages; coincides with global freshness on closed
    /// languages.
    Bar,
    /// Inclusion of the local-freshness data languages.
    Local,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InclusionOptions {
    /// Track only the maximal successors of each frontier state.
    pub maximal_only: bool,
    /// Maximum number of product configurations to explore.
    pub budget: usize,
}

impl Default for InclusionOptions {
    fn default() -> Self {
        InclusionOptions { maximal_only: true, budget: DEFAULT_BUDGET }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Witness {
    Bar(BarString),
    Data(DataWord),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Bar(w) => write!(f, "{w}"),
            Witness::Data(u) => write!(f, "{u}"),
        }
    }
}

/// A product configuration: a state of the left automaton and the set of
/// right-hand nominal states reachable along the same word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductConfiguration {
    pub q1: StateId,
    pub frontier: BTreeSet<RnnaState>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InclusionVerdict {
    pub included: bool,
    /// A word in the left language but not in the right one.
    pub witness: Option<Witness>,
    /// The path through the left automaton spelling the counterexample.
    pub trace: Option<Vec<Transition>>,
    /// Number of product configurations visited.
    pub explored: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equivalence {
    pub forward: InclusionVerdict,
    pub backward: InclusionVerdict,
}

impl Equivalence {
    pub fn equal(&self) -> bool {
        self.forward.included && self.backward.included
    }
}

pub fn inclusion_bar(a1: &BarNfa, a2: &BarNfa) -> Result<InclusionVerdict, Error> {
    inclusion(a1, a2, InclusionSemantics::Bar, &InclusionOptions::default())
}

pub fn inclusion_local(a1: &BarNfa, a2: &BarNfa) -> Result<InclusionVerdict, Error> {
    inclusion(a1, a2, InclusionSemantics::Local, &InclusionOptions::default())
}

pub fn equivalence(
    a1: &BarNfa,
    a2: &BarNfa,
    semantics: InclusionSemantics,
    options: &InclusionOptions,
) -> Result<Equivalence, Error> {
    Ok(Equivalence {
        forward: inclusion(a1, a2, semantics, options)?,
        backward: inclusion(a2, a1, semantics, options)?,
    })
}

/// Decides whether the language of `a1` is included in that of `a2`.
pub fn inclusion(
    a1: &BarNfa,
    a2: &BarNfa,
    semantics: InclusionSemantics,
    options: &InclusionOptions,
) -> Result<InclusionVerdict, Error> {
    let right = SymbolicRnna::new(a2.clone());
    let start = ProductConfiguration { q1: a1.initial(), frontier: BTreeSet::from([right.initial_state()]) };

    // nodes[i] = (configuration, parent index, transition of a1 taken)
    let mut nodes: Vec<(ProductConfiguration, Option<(usize, usize)>)> = vec![(start.clone(), None)];
    let mut index: HashMap<ProductConfiguration, usize> = HashMap::from([(start, 0)]);
    let mut queue = VecDeque::from([0usize]);

    while let Some(i) = queue.pop_front() {
        let config = nodes[i].0.clone();
        if a1.is_final(config.q1) && !config.frontier.iter().any(|st| right.is_final(st)) {
            let trace = path_to(&nodes, i, a1);
            let word: BarString = trace.iter().map(|t| t.label.clone()).collect();
            let witness = match semantics {
                InclusionSemantics::Bar => Witness::Bar(word),
                InclusionSemantics::Local => Witness::Data(local_witness(&word, a1, &right)),
            };
            return Ok(InclusionVerdict {
                included: false,
                witness: Some(witness),
                trace: Some(trace),
                explored: nodes.len(),
            });
        }
        for (ti, t) in a1.transitions().iter().enumerate() {
            if t.source != config.q1 {
                continue;
            }
            let mv = match (&t.label, semantics) {
                (BarLetter::Bound(x), _) => Move::Bound(x.clone()),
                (BarLetter::Free(x), InclusionSemantics::Bar) => Move::Free(x.clone()),
                // a free letter on the left may be matched by a binder on the right
                (BarLetter::Free(x), InclusionSemantics::Local) => Move::Either(x.clone()),
            };
            let next = ProductConfiguration {
                q1: t.target,
                frontier: right.step(&config.frontier, &mv, options.maximal_only),
            };
            if index.contains_key(&next) {
                continue;
            }
            if nodes.len() >= options.budget {
                return Err(Error::BudgetExceeded { budget: options.budget });
            }
            index.insert(next.clone(), nodes.len());
            nodes.push((next, Some((i, ti))));
            queue.push_back(nodes.len() - 1);
        }
    }
    Ok(InclusionVerdict { included: true, witness: None, trace: None, explored: nodes.len() })
}

fn path_to(nodes: &[(ProductConfiguration, Option<(usize, usize)>)], mut i: usize, a1: &BarNfa) -> Vec<Transition> {
    let mut path = Vec::new();
    while let Some((parent, ti)) = nodes[i].1 {
        path.push(a1.transitions()[ti].clone());
        i = parent;
    }
    path.reverse();
    path
}

/// Picks an instance of the counterexample bar string outside the right
/// local-freshness language.
///
/// Some instance always exists once the search reports a counterexample,
/// and one can be found with names drawn from both automata plus one fresh
/// name per binder, since the right language is invariant under
/// permutations fixing those names.
fn local_witness(word: &BarString, a1: &BarNfa, right: &SymbolicRnna) -> DataWord {
    let mut pool: BTreeSet<Name> = a1.names();
    pool.extend(right.nfa().names());
    pool.extend(word.names());
    let binders = word.iter().filter(|l| l.is_bound()).count();
    let mut pool: Vec<Name> = pool.into_iter().collect();
    for _ in 0..binders {
        let fresh = Name::least_fresh(&pool);
        pool.push(fresh);
    }
    word.alpha_variants(&pool)
        .into_iter()
        .map(|v| v.unbind())
        .find(|u| !right.accepts_local(u))
        .expect("a counterexample bar string has an instance outside the right language")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barnfa::{compile, Rbe};

    fn nfa(e: &str) -> BarNfa {
        compile(&Rbe::parse(e).unwrap())
    }

    fn example_four() -> BarNfa {
        BarNfa::parse("states: s t u v\ninitial: s\nfinal: s u\ntrans:\ns |b t\nt a u\nu |a v\nv b s\n").unwrap()
    }

    #[test]
    fn bar_inclusion_examples() {
        assert!(inclusion_bar(&nfa("|a*"), &nfa("(a + |a)*")).unwrap().included);
        let v = inclusion_bar(&nfa("(a + |a)*"), &nfa("|a*")).unwrap();
        assert!(!v.included);
        let Some(Witness::Bar(w)) = v.witness else { panic!("bar witness expected") };
        assert!(w.iter().any(|l| !l.is_bound()));
        assert_eq!(w, BarString::parse("a").unwrap());
        assert!(inclusion_bar(&example_four(), &example_four()).unwrap().included);
    }

    #[test]
    fn local_inclusion_examples() {
        assert!(inclusion_local(&nfa("(a + |a)*"), &nfa("|a*")).unwrap().included);
        assert!(inclusion_local(&nfa("|a*"), &nfa("(a + |a)*")).unwrap().included);
        let v = inclusion_local(&nfa("|a |b"), &nfa("|a |b a")).unwrap();
        assert!(!v.included);
        assert_eq!(v.witness, Some(Witness::Data(DataWord::parse("a a").unwrap())));
        assert!(inclusion_local(&nfa("|a |b a"), &nfa("|a |b a")).unwrap().included);
    }

    #[test]
    fn local_witness_is_not_plain_unbinding() {
        // ub(|a |b) = a b is in the right language; a a is not
        let v = inclusion_local(&nfa("|a |b"), &nfa("a b")).unwrap();
        let Some(Witness::Data(u)) = v.witness else { panic!("data witness expected") };
        assert_ne!(u, DataWord::parse("a b").unwrap());
        assert!(!SymbolicRnna::new(nfa("a b")).accepts_local(&u));
    }

    #[test]
    fn equivalence_examples() {
        let opts = InclusionOptions::default();
        let (l, r) = (nfa("(a + |a)*"), nfa("|a*"));
        assert!(equivalence(&l, &r, InclusionSemantics::Local, &opts).unwrap().equal());
        let bar = equivalence(&l, &r, InclusionSemantics::Bar, &opts).unwrap();
        assert!(!bar.equal());
        assert!(bar.backward.included);
        let e = example_four();
        assert!(equivalence(&e, &e, InclusionSemantics::Bar, &opts).unwrap().equal());
    }

    #[test]
    fn budget_is_reported() {
        let opts = InclusionOptions { maximal_only: true, budget: 1 };
        let err = inclusion(&example_four(), &example_four(), InclusionSemantics::Bar, &opts).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { budget: 1 });
    }

    #[test]
    fn trace_spells_witness() {
        let v = inclusion_bar(&nfa("|a a |b"), &nfa("|a b |b")).unwrap();
        assert!(!v.included);
        let trace = v.trace.unwrap();
        let word: BarString = trace.iter().map(|t| t.label.clone()).collect();
        assert_eq!(v.witness, Some(Witness::Bar(word)));
    }

    #[test]
    fn empty_left_language_is_included() {
        assert!(inclusion_bar(&nfa("0"), &nfa("0")).unwrap().included);
        assert!(inclusion_local(&nfa("0"), &nfa("a")).unwrap().included);
        assert!(!inclusion_bar(&nfa("1"), &nfa("0")).unwrap().included);
    }
}
