//! Brute-force reference semantics.
//!
//! Everything here works on explicit finite sets of words and is written
//! directly from the definitions, without the canonical forms or the
//! symbolic automata used by the rest of the crate. Tests compare the two.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use crate::barnfa::{BarNfa, Rbe};
use crate::barstring::{BarLetter, BarString, DataWord};
use crate::error::Error;
use crate::inclusion::{InclusionSemantics, Witness};
use crate::nominal::{Name, Nominal, Transposition};

/// A finite window into the infinite set of names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NamePool {
    names: Vec<Name>,
}

impl NamePool {
    pub fn new(names: impl IntoIterator<Item = Name>) -> Result<Self, Error> {
        let names: BTreeSet<Name> = names.into_iter().collect();
        if names.is_empty() {
            return Err(Error::EmptyPool);
        }
        Ok(NamePool { names: names.into_iter().collect() })
    }

    /// The first `n` names of the canonical enumeration.
    pub fn first(n: usize) -> Result<Self, Error> {
        Self::new(Name::enumeration().take(n))
    }

    /// `names` topped up with the least fresh names until there are `size`.
    pub fn covering<'a>(names: impl IntoIterator<Item = &'a Name>, size: usize) -> Result<Self, Error> {
        let mut set: BTreeSet<Name> = names.into_iter().cloned().collect();
        while set.len() < size {
            set.insert(Name::least_fresh(&set));
        }
        Self::new(set)
    }

    pub fn names(&self) -> &[Name] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn contains(&self, x: &Name) -> bool {
        self.names.binary_search(x).is_ok()
    }

    /// All bar strings of length `len` over the pool.
    pub fn bar_strings(&self, len: usize) -> Vec<BarString> {
        let letters: Vec<BarLetter> = self
            .names
            .iter()
            .flat_map(|n| [BarLetter::Free(n.clone()), BarLetter::Bound(n.clone())])
            .collect();
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w: Vec<BarLetter>| {
                    letters.iter().map(move |l| {
                        let mut w = w.clone();
                        w.push(l.clone());
                        w
                    })
                })
                .collect();
        }
        out.into_iter().map(BarString).collect()
    }

    /// All data words of length `len` over the pool.
    pub fn data_words(&self, len: usize) -> Vec<DataWord> {
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w: Vec<Name>| {
                    self.names.iter().map(move |n| {
                        let mut w = w.clone();
                        w.push(n.clone());
                        w
                    })
                })
                .collect();
        }
        out.into_iter().map(DataWord).collect()
    }
}

fn free_in(letters: &[BarLetter]) -> BTreeSet<Name> {
    let mut bound = BTreeSet::new();
    let mut free = BTreeSet::new();
    for l in letters {
        match l {
            BarLetter::Bound(n) => {
                bound.insert(n.clone());
            }
            BarLetter::Free(n) if !bound.contains(n) => {
                free.insert(n.clone());
            }
            BarLetter::Free(_) => {}
        }
    }
    free
}

fn clean(w: &BarString) -> bool {
    let free = free_in(w.letters());
    let mut seen = BTreeSet::new();
    w.iter().all(|l| match l {
        BarLetter::Bound(n) => !free.contains(n) && seen.insert(n.clone()),
        BarLetter::Free(_) => true,
    })
}

fn in_pool(w: &BarString, pool: &NamePool) -> bool {
    w.iter().all(|l| pool.contains(l.name()))
}

/// Bar strings over `pool` reachable from `w` by renaming single binders.
///
/// A step replaces a suffix `|a v` by `|b (a b)v` where `b` is not free in
/// `v`, and `b` ranges over the pool.
pub fn alpha_closure(w: &BarString, pool: &NamePool) -> BTreeSet<BarString> {
    closure_with_scratch(w, pool, 0)
}

/// As [`alpha_closure`], but intermediate strings may also use `scratch`
/// names outside the pool.
pub(crate) fn closure_with_scratch(w: &BarString, pool: &NamePool, scratch: usize) -> BTreeSet<BarString> {
    let mut names: BTreeSet<Name> = pool.names().iter().cloned().collect();
    names.extend(w.iter().map(|l| l.name().clone()));
    for _ in 0..scratch {
        names.insert(Name::least_fresh(&names));
    }
    let mut seen: HashSet<BarString> = HashSet::from([w.clone()]);
    let mut queue = VecDeque::from([w.clone()]);
    while let Some(v) = queue.pop_front() {
        for (i, l) in v.iter().enumerate() {
            let BarLetter::Bound(a) = l else { continue };
            let suffix = &v.letters()[i + 1..];
            let free = free_in(suffix);
            for b in &names {
                if b == a || free.contains(b) {
                    continue;
                }
                let t = Transposition::new(a.clone(), b.clone());
                let mut letters = v.letters()[..i].to_vec();
                letters.push(BarLetter::Bound(b.clone()));
                letters.extend(suffix.iter().map(|l| l.swap(&t)));
                let next = BarString(letters);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    seen.into_iter().filter(|v| in_pool(v, pool)).collect()
}

/// α-equivalence by structural recursion on abstractions:
/// `|a v ≡ |b u` iff `a = b` and `v ≡ u`, or `b` is not free in `v` and
/// `(a b)v ≡ u`.
pub fn alpha_eq(w: &BarString, u: &BarString) -> bool {
    fn go(w: &[BarLetter], u: &[BarLetter]) -> bool {
        match (w.split_first(), u.split_first()) {
            (None, None) => true,
            (Some((BarLetter::Free(a), v)), Some((BarLetter::Free(b), u))) => a == b && go(v, u),
            (Some((BarLetter::Bound(a), v)), Some((BarLetter::Bound(b), u))) => {
                if a == b {
                    return go(v, u);
                }
                if free_in(v).contains(b) {
                    return false;
                }
                let t = Transposition::new(a.clone(), b.clone());
                let renamed: Vec<BarLetter> = v.iter().map(|l| l.swap(&t)).collect();
                go(&renamed, u)
            }
            _ => false,
        }
    }
    go(w.letters(), u.letters())
}

/// The α-class of `w` restricted to `pool`, generated by the same
/// recursion as [`alpha_eq`]. Agrees with [`alpha_closure`].
pub fn alpha_class(w: &BarString, pool: &NamePool) -> BTreeSet<BarString> {
    fn go(rest: &[BarLetter], pool: &NamePool, prefix: &mut Vec<BarLetter>, out: &mut BTreeSet<BarString>) {
        let Some((head, tail)) = rest.split_first() else {
            out.insert(BarString(prefix.clone()));
            return;
        };
        match head {
            BarLetter::Free(a) => {
                if pool.contains(a) {
                    prefix.push(head.clone());
                    go(tail, pool, prefix, out);
                    prefix.pop();
                }
            }
            BarLetter::Bound(a) => {
                let free = free_in(tail);
                for b in pool.names() {
                    if b != a && free.contains(b) {
                        continue;
                    }
                    let t = Transposition::new(a.clone(), b.clone());
                    let renamed: Vec<BarLetter> = tail.iter().map(|l| l.swap(&t)).collect();
                    prefix.push(BarLetter::Bound(b.clone()));
                    go(&renamed, pool, prefix, out);
                    prefix.pop();
                }
            }
        }
    }
    let mut out = BTreeSet::new();
    go(w.letters(), pool, &mut Vec::new(), &mut out);
    out
}

/// Global-freshness instances: unbindings of clean representatives.
pub fn n_operator<'a>(language: impl IntoIterator<Item = &'a BarString>, pool: &NamePool) -> BTreeSet<DataWord> {
    language
        .into_iter()
        .flat_map(|w| alpha_class(w, pool))
        .filter(clean)
        .map(|w| w.unbind())
        .collect()
}

/// Local-freshness instances: unbindings of all representatives.
pub fn d_operator<'a>(language: impl IntoIterator<Item = &'a BarString>, pool: &NamePool) -> BTreeSet<DataWord> {
    let mut covered = HashSet::new();
    let mut out = BTreeSet::new();
    for w in language {
        if covered.contains(w) {
            continue;
        }
        for v in alpha_class(w, pool) {
            out.insert(v.unbind());
            covered.insert(v);
        }
    }
    out
}

/// `w2` arises from `w` by turning some free letters into binders of the
/// same name.
pub fn bar_refines(w: &BarString, w2: &BarString) -> bool {
    w.len() == w2.len()
        && w.iter().zip(w2.iter()).all(|(l, r)| match (l, r) {
            (BarLetter::Free(a), BarLetter::Bound(b)) => a == b,
            _ => l == r,
        })
}

/// Membership of a bar string in the literal language of an expression,
/// by direct recursion on the expression.
pub fn expression_matches(e: &Rbe, w: &BarString) -> bool {
    fn ends(e: &Rbe, w: &[BarLetter], i: usize) -> BTreeSet<usize> {
        match e {
            Rbe::Zero => BTreeSet::new(),
            Rbe::One => BTreeSet::from([i]),
            Rbe::Letter(l) => {
                if w.get(i) == Some(l) {
                    BTreeSet::from([i + 1])
                } else {
                    BTreeSet::new()
                }
            }
            Rbe::Sum(l, r) => {
                let mut s = ends(l, w, i);
                s.extend(ends(r, w, i));
                s
            }
            Rbe::Concat(l, r) => ends(l, w, i).into_iter().flat_map(|j| ends(r, w, j)).collect(),
            Rbe::Star(inner) => {
                let mut reached = BTreeSet::from([i]);
                let mut todo = vec![i];
                while let Some(j) = todo.pop() {
                    for k in ends(inner, w, j) {
                        if reached.insert(k) {
                            todo.push(k);
                        }
                    }
                }
                reached
            }
        }
    }
    ends(e, w.letters(), 0).contains(&w.len())
}

fn by_length(words: BTreeSet<BarString>) -> Vec<BarString> {
    let mut v: Vec<BarString> = words.into_iter().collect();
    v.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    v
}

/// Searches all words up to `max_len` for a counterexample to inclusion.
///
/// The pool should contain every name of both automata and a few fresh
/// ones; a pool that is too small can only hide counterexamples.
pub fn brute_inclusion(
    a1: &BarNfa,
    a2: &BarNfa,
    semantics: InclusionSemantics,
    max_len: usize,
    pool: &NamePool,
) -> Option<Witness> {
    let left = by_length(a1.enumerate_literal(max_len));
    let right = a2.enumerate_literal(max_len);
    match semantics {
        InclusionSemantics::Bar => {
            let mut by_kinds: BTreeMap<Vec<bool>, Vec<BarString>> = BTreeMap::new();
            for w in right {
                by_kinds.entry(w.iter().map(|l| l.is_bound()).collect()).or_default().push(w);
            }
            left.into_iter()
                .find(|w| {
                    let kinds: Vec<bool> = w.iter().map(|l| l.is_bound()).collect();
                    !by_kinds.get(&kinds).is_some_and(|ws| ws.iter().any(|u| alpha_eq(w, u)))
                })
                .map(Witness::Bar)
        }
        InclusionSemantics::Local => {
            let covered = d_operator(&right, pool);
            let mut seen = HashSet::new();
            for w in &left {
                if seen.contains(w) {
                    continue;
                }
                for v in alpha_class(w, pool) {
                    let u = v.unbind();
                    if !covered.contains(&u) {
                        return Some(Witness::Data(u));
                    }
                    seen.insert(v);
                }
            }
            None
        }
    }
}

/// Every bar string over `pool` α-equivalent to a literal word of `nfa`.
pub fn bar_language(nfa: &BarNfa, max_len: usize, pool: &NamePool) -> BTreeSet<BarString> {
    let mut out = BTreeSet::new();
    for w in nfa.enumerate_literal(max_len) {
        if !out.contains(&w) {
            out.extend(alpha_class(&w, pool));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barnfa::compile;

    fn bs(s: &str) -> BarString {
        BarString::parse(s).unwrap()
    }

    fn dw(s: &str) -> DataWord {
        DataWord::parse(s).unwrap()
    }

    fn pool(n: usize) -> NamePool {
        NamePool::first(n).unwrap()
    }

    fn nfa(e: &str) -> BarNfa {
        compile(&Rbe::parse(e).unwrap())
    }

    #[test]
    fn pool_basics() {
        assert_eq!(NamePool::new(Vec::new()), Err(Error::EmptyPool));
        let p = pool(3);
        assert_eq!(p.bar_strings(2).len(), 36);
        assert_eq!(p.data_words(3).len(), 27);
        let q = NamePool::covering(&[Name::new("x").unwrap()], 3).unwrap();
        assert_eq!(q.len(), 3);
        assert!(q.contains(&Name::new("x").unwrap()));
    }

    #[test]
    fn closure_examples() {
        assert_eq!(alpha_closure(&bs("|a"), &pool(2)), BTreeSet::from([bs("|a"), bs("|b")]));
        assert!(alpha_closure(&bs("a b |a a b"), &pool(3)).contains(&bs("a b |c c b")));
        assert_eq!(alpha_closure(&bs("a b c"), &pool(3)), BTreeSet::from([bs("a b c")]));
    }

    #[test]
    fn closure_reaches_binder_swaps_inside_the_pool() {
        let (w, u) = (bs("|a |b |c a b"), bs("|b |a |c b a"));
        assert!(alpha_eq(&w, &u));
        assert!(alpha_closure(&w, &pool(3)).contains(&u));
    }

    #[test]
    fn scratch_names_add_nothing() {
        for n in [2, 3] {
            let p = pool(n);
            for len in 0..=4 {
                for w in p.bar_strings(len) {
                    let binders = w.iter().filter(|l| l.is_bound()).count();
                    assert_eq!(alpha_closure(&w, &p), closure_with_scratch(&w, &p, binders), "{w:?}");
                }
            }
        }
    }

    #[test]
    fn class_generation_matches_closure() {
        let p = pool(3);
        for len in 0..=4 {
            for w in p.bar_strings(len) {
                assert_eq!(alpha_class(&w, &p), alpha_closure(&w, &p), "{w:?}");
            }
        }
    }

    #[test]
    fn operator_examples() {
        let n = n_operator(&[bs("|a |b")], &pool(3));
        let distinct: BTreeSet<DataWord> =
            pool(3).data_words(2).into_iter().filter(|u| u.names()[0] != u.names()[1]).collect();
        assert_eq!(n, distinct);
        assert_eq!(n_operator(&[bs("a b")], &pool(3)), BTreeSet::from([dw("a b")]));
        assert!(n_operator(&[], &pool(3)).is_empty());

        let all: BTreeSet<DataWord> = pool(2).data_words(2).into_iter().collect();
        assert_eq!(d_operator(&[bs("|a |b")], &pool(2)), all);
        assert_eq!(d_operator(&[bs("|a |b a")], &pool(2)), BTreeSet::from([dw("a b a"), dw("b a b")]));
        assert_eq!(d_operator(&[bs("a b")], &pool(2)), BTreeSet::from([dw("a b")]));
    }

    #[test]
    fn refinement_examples() {
        assert!(bar_refines(&bs("a b"), &bs("a |b")));
        assert!(!bar_refines(&bs("a |b"), &bs("a b")));
        assert!(bar_refines(&bs("a |b c"), &bs("a |b c")));
        assert!(!bar_refines(&bs("a"), &bs("|b")));
    }

    #[test]
    fn brute_inclusion_examples() {
        let (l, r) = (nfa("(a + |a)*"), nfa("|a*"));
        let p = pool(3);
        assert_eq!(brute_inclusion(&l, &r, InclusionSemantics::Bar, 3, &p), Some(Witness::Bar(bs("a"))));
        assert_eq!(brute_inclusion(&l, &r, InclusionSemantics::Local, 4, &p), None);
        assert_eq!(brute_inclusion(&r, &l, InclusionSemantics::Local, 4, &p), None);
        assert_eq!(brute_inclusion(&l, &l, InclusionSemantics::Bar, 4, &p), None);
        assert_eq!(
            brute_inclusion(&nfa("|a |b"), &nfa("|a |b a"), InclusionSemantics::Local, 3, &p),
            Some(Witness::Data(dw("a a")))
        );
    }

    #[test]
    fn expression_matching() {
        let e = Rbe::parse("|a (c + d d)").unwrap();
        assert!(expression_matches(&e, &bs("|a c")));
        assert!(expression_matches(&e, &bs("|a d d")));
        assert!(!expression_matches(&e, &bs("|b c")));
        let s = Rbe::parse("(a b)*").unwrap();
        assert!(expression_matches(&s, &bs("")));
        assert!(expression_matches(&s, &bs("a b a b")));
        assert!(!expression_matches(&s, &bs("a b a")));
    }

    #[test]
    fn bar_language_is_union_of_classes() {
        let lang = bar_language(&nfa("|a a"), 2, &pool(2));
        assert_eq!(lang, BTreeSet::from([bs("|a a"), bs("|b b")]));
    }
}
