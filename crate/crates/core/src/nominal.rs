//! Names, transpositions and injective partial renamings.
//!
//! Permutations are never materialised as whole group elements. Everything
//! downstream only needs single swaps `(a b)` and finite injective renamings
//! `N -> A`, the latter standing for the coset of permutations that agree on
//! `N`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::Error;

/// An atom of the infinite alphabet.
///
/// A name is an identifier: an ASCII letter followed by letters, digits or
/// underscores. Names compare by their byte sequence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Name(Arc<str>);

const FIRST_CHARS: &[u8] = b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
const REST_CHARS: &[u8] = b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_";

impl Name {
    pub fn new(id: &str) -> Result<Name, Error> {
        if Name::is_valid(id) {
            Ok(Name(Arc::from(id)))
        } else {
            Err(Error::InvalidName(id.to_string()))
        }
    }

    pub fn is_valid(id: &str) -> bool {
        let mut bytes = id.bytes();
        match bytes.next() {
            Some(b) if b.is_ascii_alphabetic() => {}
            _ => return false,
        }
        bytes.all(|b| b.is_ascii_alphanumeric() || b == b'_')
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The `index`-th name of the canonical enumeration.
    ///
    /// The enumeration lists every identifier exactly once, shortest first,
    /// starting `a, b, ..., z, A, ..., Z, aa, ab, ...`.
    pub fn canonical(index: usize) -> Name {
        let mut rest = index;
        let mut len = 1;
        let mut block = FIRST_CHARS.len();
        while rest >= block {
            rest -= block;
            len += 1;
            block *= REST_CHARS.len();
        }
        let mut buf = vec![0u8; len];
        for i in (1..len).rev() {
            buf[i] = REST_CHARS[rest % REST_CHARS.len()];
            rest /= REST_CHARS.len();
        }
        buf[0] = FIRST_CHARS[rest];
        // Only characters from the two tables above are written.
        Name(Arc::from(std::str::from_utf8(&buf).expect("ascii")))
    }

    /// Iterates the canonical enumeration from its first element.
    pub fn enumeration() -> impl Iterator<Item = Name> {
        (0..).map(Name::canonical)
    }

    /// The first name of the canonical enumeration accepted by `allowed`.
    pub fn least_such_that(mut allowed: impl FnMut(&Name) -> bool) -> Name {
        Name::enumeration()
            .find(|n| allowed(n))
            .expect("the enumeration is infinite and only finitely many names are excluded")
    }

    /// The first name of the canonical enumeration outside `avoid`.
    pub fn least_fresh<'a>(avoid: impl IntoIterator<Item = &'a Name>) -> Name {
        let avoid: BTreeSet<&Name> = avoid.into_iter().collect();
        Name::least_such_that(|n| !avoid.contains(n))
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for Name {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Name::new(s)
    }
}

impl AsRef<str> for Name {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// The swap `(first second)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Transposition {
    pub first: Name,
    pub second: Name,
}

impl Transposition {
    pub fn new(first: Name, second: Name) -> Self {
        Transposition { first, second }
    }

    pub fn apply(&self, x: &Name) -> Name {
        if *x == self.first {
            self.second.clone()
        } else if *x == self.second {
            self.first.clone()
        } else {
            x.clone()
        }
    }

    pub fn is_identity(&self) -> bool {
        self.first == self.second
    }
}

/// Values carrying an action of name transpositions.
pub trait Nominal: Sized {
    fn swap(&self, t: &Transposition) -> Self;
}

impl Nominal for Name {
    fn swap(&self, t: &Transposition) -> Self {
        t.apply(self)
    }
}

impl<T: Nominal> Nominal for Vec<T> {
    fn swap(&self, t: &Transposition) -> Self {
        self.iter().map(|x| x.swap(t)).collect()
    }
}

impl<T: Nominal> Nominal for Option<T> {
    fn swap(&self, t: &Transposition) -> Self {
        self.as_ref().map(|x| x.swap(t))
    }
}

/// A finite injective map between names.
///
/// A renaming with domain `N` represents the coset of permutations that agree
/// with it on `N`; two cosets are equal iff the renamings are. The group acts
/// by post-composition, so the support of the represented coset is the image.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialRenaming {
    entries: BTreeMap<Name, Name>,
}

impl PartialRenaming {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a renaming, rejecting non-injective or conflicting entries.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Name, Name)>) -> Result<Self, Error> {
        let mut r = PartialRenaming::empty();
        for (k, v) in pairs {
            r.try_insert(k, v)?;
        }
        Ok(r)
    }

    pub fn identity<'a>(names: impl IntoIterator<Item = &'a Name>) -> Self {
        PartialRenaming {
            entries: names.into_iter().map(|n| (n.clone(), n.clone())).collect(),
        }
    }

    pub fn try_insert(&mut self, from: Name, to: Name) -> Result<(), Error> {
        if let Some(prev) = self.entries.get(&from) {
            if *prev == to {
                return Ok(());
            }
            return Err(Error::NotInjective(format!("{from} mapped to both {prev} and {to}")));
        }
        if let Some((other, _)) = self.entries.iter().find(|(_, v)| **v == to) {
            return Err(Error::NotInjective(format!("{other} and {from} both map to {to}")));
        }
        self.entries.insert(from, to);
        Ok(())
    }

    pub fn get(&self, x: &Name) -> Option<&Name> {
        self.entries.get(x)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains_key(&self, x: &Name) -> bool {
        self.entries.contains_key(x)
    }

    pub fn domain(&self) -> impl Iterator<Item = &Name> + '_ {
        self.entries.keys()
    }

    pub fn image(&self) -> impl Iterator<Item = &Name> + '_ {
        self.entries.values()
    }

    pub fn domain_set(&self) -> BTreeSet<Name> {
        self.entries.keys().cloned().collect()
    }

    pub fn image_set(&self) -> BTreeSet<Name> {
        self.entries.values().cloned().collect()
    }

    pub fn maps_to(&self, x: &Name) -> bool {
        self.entries.values().any(|v| v == x)
    }

    /// The domain element sent to `x`, if any.
    pub fn preimage(&self, x: &Name) -> Option<&Name> {
        self.entries.iter().find(|(_, v)| *v == x).map(|(k, _)| k)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Name, &Name)> + '_ {
        self.entries.iter()
    }

    /// Keeps only the entries whose key lies in `keep`.
    pub fn restrict(&self, keep: &BTreeSet<Name>) -> PartialRenaming {
        PartialRenaming {
            entries: self
                .entries
                .iter()
                .filter(|(k, _)| keep.contains(*k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// Every restriction of `self` to a subset of its domain.
    pub fn restrictions(&self) -> Vec<PartialRenaming> {
        let pairs: Vec<(&Name, &Name)> = self.entries.iter().collect();
        let count = 1usize << pairs.len();
        (0..count)
            .map(|mask| PartialRenaming {
                entries: pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, (k, v))| ((*k).clone(), (*v).clone()))
                    .collect(),
            })
            .collect()
    }

    pub(crate) fn insert_unchecked(&mut self, from: Name, to: Name) {
        debug_assert!(!self.maps_to(&to) || self.get(&from) == Some(&to));
        self.entries.insert(from, to);
    }
}

impl Nominal for PartialRenaming {
    fn swap(&self, t: &Transposition) -> Self {
        PartialRenaming {
            entries: self.entries.iter().map(|(k, v)| (k.clone(), t.apply(v))).collect(),
        }
    }
}

impl fmt::Debug for PartialRenaming {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (k, v)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}->{v}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Display for PartialRenaming {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Decides `<a>rho = <b>sigma` in the abstraction set over cosets.
///
/// Either the pairs coincide, or `b != a`, `b` is fresh for `rho` (not in its
/// image) and swapping `a` and `b` in the images of `rho` yields `sigma`.
pub fn abstraction_equal(a: &Name, rho: &PartialRenaming, b: &Name, sigma: &PartialRenaming) -> bool {
    if a == b {
        return rho == sigma;
    }
    if rho.maps_to(b) {
        return false;
    }
    rho.swap(&Transposition::new(a.clone(), b.clone())) == *sigma
}
