//! Automaton families for the inclusion benchmarks.

use barlang::{compile, BarNfa, Rbe};

/// `(|a1 a1 + ... + |an an)*`, a language with `n` binders.
pub fn binder_star(n: usize) -> BarNfa {
    let sum = (1..=n).map(|i| format!("|a{i} a{i}")).collect::<Vec<_>>().join(" + ");
    compile(&Rbe::parse(&format!("({sum})*")).expect("fixture parses"))
}

/// `(|a1 ... |an (a1 + ... + an))*`, where every letter may refer back to
/// any of the last `n` binders.
pub fn recall(n: usize) -> BarNfa {
    let binders = (1..=n).map(|i| format!("|a{i}")).collect::<Vec<_>>().join(" ");
    let sum = (1..=n).map(|i| format!("a{i}")).collect::<Vec<_>>().join(" + ");
    compile(&Rbe::parse(&format!("({binders} ({sum}))*")).expect("fixture parses"))
}
