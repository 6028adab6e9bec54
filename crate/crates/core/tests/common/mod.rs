#![allow(dead_code)]

use barlang::{BarLetter, Name, Rbe};
use rand::Rng;

pub fn name(s: &str) -> Name {
    Name::new(s).unwrap()
}

/// A random expression of depth at most `depth` over the names `a b c`.
///
/// Stars are only placed around letters or products of letters so that
/// literal enumeration stays small.
pub fn random_expr<R: Rng>(rng: &mut R, depth: usize) -> Rbe {
    if depth == 0 || rng.gen_bool(0.25) {
        return random_leaf(rng);
    }
    match rng.gen_range(0..3) {
        0 => Rbe::sum(random_expr(rng, depth - 1), random_expr(rng, depth - 1)),
        1 => Rbe::concat(random_expr(rng, depth - 1), random_expr(rng, depth - 1)),
        _ => Rbe::star(random_expr(rng, depth - 1)),
    }
}

fn random_leaf<R: Rng>(rng: &mut R) -> Rbe {
    match rng.gen_range(0..20) {
        0 => Rbe::One,
        1 => Rbe::Zero,
        k => {
            let n = name(["a", "b", "c"][k % 3]);
            if k % 2 == 0 {
                Rbe::bound(n)
            } else {
                Rbe::free(n)
            }
        }
    }
}

/// Turns some free letters into binders of the same name, which can only
/// enlarge the local-freshness language.
pub fn refine<R: Rng>(rng: &mut R, e: &Rbe) -> Rbe {
    match e {
        Rbe::Letter(BarLetter::Free(x)) if rng.gen_bool(0.5) => Rbe::bound(x.clone()),
        Rbe::Zero | Rbe::One | Rbe::Letter(_) => e.clone(),
        Rbe::Sum(l, r) => Rbe::sum(refine(rng, l), refine(rng, r)),
        Rbe::Concat(l, r) => Rbe::concat(refine(rng, l), refine(rng, r)),
        Rbe::Star(inner) => Rbe::star(refine(rng, inner)),
    }
}
