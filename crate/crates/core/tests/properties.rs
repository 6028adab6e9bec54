mod common;

use std::collections::BTreeSet;

use barlang::barnfa::compile;
use barlang::inclusion::{inclusion, InclusionOptions, InclusionSemantics, Witness};
use barlang::models::{Constraint, FsubaTransition, RaTransition};
use barlang::nominal::{abstraction_equal, Nominal};
use barlang::oracle::{alpha_class, alpha_eq, bar_refines, d_operator, expression_matches, n_operator, NamePool};
use barlang::rnna::{Input, Move};
use barlang::{BarLetter, BarNfa, BarString, DataWord, ForgetfulRa, Fsuba, Name, PartialRenaming, Rbe, Semantics};
use barlang::{SymbolicRnna, Transposition};
use common::name;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn pool(n: usize) -> NamePool {
    NamePool::first(n).unwrap()
}

fn arb_name(n: usize) -> impl Strategy<Value = Name> {
    (0..n).prop_map(Name::canonical)
}

fn arb_letter(n: usize) -> impl Strategy<Value = BarLetter> {
    (arb_name(n), any::<bool>()).prop_map(|(x, b)| if b { BarLetter::Bound(x) } else { BarLetter::Free(x) })
}

fn arb_bar_string(n: usize, max_len: usize) -> impl Strategy<Value = BarString> {
    prop::collection::vec(arb_letter(n), 0..=max_len).prop_map(BarString::new)
}

fn arb_expr() -> impl Strategy<Value = Rbe> {
    let leaf = prop_oneof![
        1 => Just(Rbe::One),
        1 => Just(Rbe::Zero),
        8 => arb_letter(3).prop_map(Rbe::Letter),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Rbe::sum(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Rbe::concat(l, r)),
            inner.prop_map(Rbe::star),
        ]
    })
}

fn words_up_to(p: &NamePool, max_len: usize) -> Vec<DataWord> {
    (0..=max_len).flat_map(|n| p.data_words(n)).collect()
}

fn bar_words_up_to(p: &NamePool, max_len: usize) -> Vec<BarString> {
    (0..=max_len).flat_map(|n| p.bar_strings(n)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn renaming_swap_is_an_involution(pairs in prop::collection::btree_map(arb_name(4), arb_name(4), 0..4),
                                      a in arb_name(5), b in arb_name(5)) {
        if let Ok(rho) = PartialRenaming::from_pairs(pairs) {
            let t = Transposition::new(a, b);
            prop_assert_eq!(rho.swap(&t).swap(&t), rho.clone());
            prop_assert_eq!(rho.swap(&t).len(), rho.len());
        }
    }

    #[test]
    fn abstraction_equality_is_an_equivalence(a in arb_name(3), b in arb_name(3), x in arb_name(3), y in arb_name(3)) {
        let rho = PartialRenaming::from_pairs([(name("a"), x)]).unwrap();
        let sigma = PartialRenaming::from_pairs([(name("a"), y)]).unwrap();
        prop_assert!(abstraction_equal(&a, &rho, &a, &rho));
        prop_assert_eq!(abstraction_equal(&a, &rho, &b, &sigma), abstraction_equal(&b, &sigma, &a, &rho));
    }

    #[test]
    fn canonical_form_is_an_alpha_representative(w in arb_bar_string(4, 6)) {
        let c = w.canonical_form();
        prop_assert!(alpha_eq(&w, &c));
        prop_assert_eq!(c.canonical_form(), c.clone());
        let clean = w.clean_form();
        prop_assert!(clean.is_clean());
        prop_assert!(alpha_eq(&w, &clean));
        prop_assert_eq!(clean.canonical_form(), c);
        prop_assert_eq!(w.unbind().len(), w.len());
    }

    #[test]
    fn alpha_equivalence_matches_the_oracle(w in arb_bar_string(3, 5), u in arb_bar_string(3, 5)) {
        prop_assert_eq!(w.alpha_equivalent(&u), alpha_eq(&w, &u));
    }

    #[test]
    fn variants_match_the_oracle_class(w in arb_bar_string(3, 4)) {
        let p = pool(4);
        let variants: BTreeSet<BarString> = w.alpha_variants(p.names()).into_iter().collect();
        prop_assert_eq!(variants, alpha_class(&w, &p));
    }

    #[test]
    fn swapping_preserves_free_names(w in arb_bar_string(3, 5), a in arb_name(4), b in arb_name(4)) {
        let t = Transposition::new(a, b);
        let swapped: BTreeSet<Name> = w.free_names().iter().map(|x| t.apply(x)).collect();
        prop_assert_eq!(w.swap(&t).free_names(), swapped);
    }

    #[test]
    fn expression_display_round_trips(e in arb_expr()) {
        prop_assert_eq!(Rbe::parse(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn file_format_round_trips(e in arb_expr()) {
        let a = compile(&e);
        let b = BarNfa::parse(&a.to_string()).unwrap();
        prop_assert_eq!(b.enumerate_literal(4), a.enumerate_literal(4));
        prop_assert_eq!(b.state_count(), a.state_count());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn compiled_automaton_matches_the_expression(e in arb_expr()) {
        let a = compile(&e);
        prop_assert_eq!(a.state_count(), e.letter_count() + 1);
        for w in bar_words_up_to(&pool(3), 4) {
            prop_assert_eq!(a.literal_accepts(&w), expression_matches(&e, &w), "{:?}", w);
        }
    }

    #[test]
    fn global_membership_matches_the_n_operator(e in arb_expr()) {
        let a = compile(&e);
        let p = pool(4);
        let expected = n_operator(&a.enumerate_literal(3), &p);
        let r = SymbolicRnna::new(a);
        for u in words_up_to(&p, 3) {
            prop_assert_eq!(r.accepts_global(&u), expected.contains(&u), "{:?}", u);
        }
    }

    #[test]
    fn local_membership_matches_the_d_operator(e in arb_expr()) {
        let a = compile(&e);
        let p = pool(4);
        let expected = d_operator(&a.enumerate_literal(4), &p);
        let r = SymbolicRnna::new(a);
        for u in words_up_to(&p, 4) {
            prop_assert_eq!(r.accepts_local(&u), expected.contains(&u), "{:?}", u);
            prop_assert_eq!(r.accepts_with(&Input::Data(u.clone()), Semantics::Local, false).unwrap(),
                            expected.contains(&u));
        }
    }

    #[test]
    fn frontier_states_stay_valid(e in arb_expr(), w in arb_bar_string(4, 5)) {
        let r = SymbolicRnna::new(compile(&e));
        let moves: Vec<Move> = w.iter().map(|l| match l {
            BarLetter::Free(x) => Move::Either(x.clone()),
            BarLetter::Bound(x) => Move::Bound(x.clone()),
        }).collect();
        for frontier in r.trace(&moves, false) {
            for st in &frontier {
                prop_assert!(r.is_valid(st), "{:?}", st);
            }
        }
    }

    #[test]
    fn inclusion_witnesses_verify(e1 in arb_expr(), e2 in arb_expr()) {
        let (l, r) = (compile(&e1), compile(&e2));
        let (sl, sr) = (SymbolicRnna::new(l.clone()), SymbolicRnna::new(r.clone()));
        for sem in [InclusionSemantics::Bar, InclusionSemantics::Local] {
            let v = inclusion(&l, &r, sem, &InclusionOptions::default()).unwrap();
            let all = inclusion(&l, &r, sem, &InclusionOptions { maximal_only: false, ..Default::default() }).unwrap();
            prop_assert_eq!(v.included, all.included);
            match v.witness {
                None => prop_assert!(v.included),
                Some(Witness::Bar(w)) => {
                    prop_assert!(sl.accepts_bar(&w) && !sr.accepts_bar(&w));
                    prop_assert!(l.literal_accepts(&w));
                }
                Some(Witness::Data(u)) => prop_assert!(sl.accepts_local(&u) && !sr.accepts_local(&u)),
            }
        }
        prop_assert!(inclusion(&l, &l, InclusionSemantics::Bar, &InclusionOptions::default()).unwrap().included);
    }

    #[test]
    fn bar_inclusion_is_global_inclusion_on_closed_languages(e1 in arb_expr(), e2 in arb_expr()) {
        let (l, r) = (SymbolicRnna::new(compile(&e1)), SymbolicRnna::new(compile(&e2)));
        prop_assume!(l.support_of(l.nfa().initial()).is_empty() && r.support_of(r.nfa().initial()).is_empty());
        let v = inclusion(l.nfa(), r.nfa(), InclusionSemantics::Bar, &InclusionOptions::default()).unwrap();
        let p = pool(4);
        if v.included {
            let (nl, nr) = (n_operator(&l.nfa().enumerate_literal(3), &p), n_operator(&r.nfa().enumerate_literal(3), &p));
            prop_assert!(nl.is_subset(&nr));
        } else if let Some(Witness::Bar(w)) = v.witness {
            let u = w.clean_form().unbind();
            prop_assert!(l.accepts_global(&u) && !r.accepts_global(&u), "{:?}", u);
        }
    }

    #[test]
    fn refinement_is_monotone(w in arb_bar_string(3, 4), mask in prop::collection::vec(any::<bool>(), 4)) {
        let refined = BarString::new(w.iter().zip(mask.iter().chain(std::iter::repeat(&false))).map(|(l, m)| match l {
            BarLetter::Free(x) if *m => BarLetter::Bound(x.clone()),
            other => other.clone(),
        }).collect());
        prop_assert!(bar_refines(&w, &refined));
        let p = pool(4);
        prop_assert!(d_operator(&[w], &p).is_subset(&d_operator(&[refined], &p)));
    }

    #[test]
    fn local_inclusion_agrees_with_refinement(e1 in arb_expr(), e2 in arb_expr()) {
        // D(L1) ⊆ D(L2) iff every word of L1 is refined by a word α-equivalent
        // to one of L2; checked on words of equal bounded length
        let (l, r) = (compile(&e1), compile(&e2));
        let p = pool(6);
        let right = r.enumerate_literal(3);
        let refined_in_right = |w: &BarString| {
            let bound_positions: Vec<usize> = (0..w.len()).filter(|&i| !w.letters()[i].is_bound()).collect();
            (0u32..1 << bound_positions.len()).any(|mask| {
                let mut letters = w.letters().to_vec();
                for (k, &i) in bound_positions.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        letters[i] = BarLetter::Bound(letters[i].name().clone());
                    }
                }
                let v = BarString::new(letters);
                right.iter().any(|u| alpha_eq(u, &v))
            })
        };
        let left = l.enumerate_literal(3);
        let by_refinement = left.iter().all(refined_in_right);
        let by_d = d_operator(&left, &p).is_subset(&d_operator(&right, &p));
        prop_assert_eq!(by_refinement, by_d);
    }

    #[test]
    fn n_is_injective_on_closed_languages(e1 in arb_expr(), e2 in arb_expr()) {
        let p = pool(4);
        let closed = |e: &Rbe| -> BTreeSet<BarString> {
            compile(e).enumerate_literal(3).into_iter().filter(|w| w.is_closed()).map(|w| w.canonical_form()).collect()
        };
        let (c1, c2) = (closed(&e1), closed(&e2));
        if c1 != c2 {
            prop_assert_ne!(n_operator(&c1, &p), n_operator(&c2, &p));
        }
    }

    #[test]
    fn fsuba_translation_agrees(seed in any::<u64>()) {
        let m = random_fsuba(seed);
        let a = m.to_barnfa();
        prop_assert!(a.degree() <= m.registers() + 1);
        let r = SymbolicRnna::new(a);
        let mut names: BTreeSet<Name> = m.initial_config().assignment.contents();
        names.extend(Name::enumeration().take(m.registers() + 2));
        let p = NamePool::new(names).unwrap();
        for u in words_up_to(&p, 4) {
            prop_assert_eq!(r.accepts_local(&u), m.accepts(&u), "{}\n{:?}", m, u);
        }
    }

    #[test]
    fn forgetful_translation_agrees(seed in any::<u64>()) {
        let m = random_ra(seed);
        let a = m.to_barnfa();
        prop_assert!(a.degree() <= m.registers() + 1);
        let r = SymbolicRnna::new(a);
        let p = pool(m.registers() + 2);
        for u in words_up_to(&p, 4) {
            prop_assert_eq!(r.accepts_local(&u), m.accepts(&u), "{}\n{:?}", m, u);
        }
    }
}

fn random_fsuba(seed: u64) -> Fsuba {
    let mut rng = StdRng::seed_from_u64(seed);
    let registers = rng.gen_range(1..=2);
    let locations: Vec<String> = (0..3).map(|i| format!("q{i}")).collect();
    let transitions = (0..rng.gen_range(2..=7))
        .map(|_| FsubaTransition {
            source: rng.gen_range(0..3),
            register: rng.gen_range(1..=registers),
            erase: (1..=registers).filter(|_| rng.gen_bool(0.3)).collect(),
            target: rng.gen_range(0..3),
        })
        .collect();
    let finals: Vec<usize> = (0..3).filter(|&l| l == 2 || rng.gen_bool(0.3)).collect();
    let mut assignment = Vec::new();
    for k in 1..=registers {
        if rng.gen_bool(0.3) {
            assignment.push((k, name(["a", "x"][rng.gen_range(0..2)])));
        }
    }
    Fsuba::new(locations, registers, 0, finals, transitions, assignment).unwrap()
}

fn random_atom(rng: &mut StdRng, registers: usize) -> Constraint {
    let i = rng.gen_range(1..=registers);
    match rng.gen_range(0..4) {
        0 => Constraint::Cmp(i),
        1 => Constraint::Store(i),
        2 => Constraint::Fresh(i),
        _ => Constraint::Keep(rng.gen_range(1..=registers), i),
    }
}

/// Mostly a test on the input conjoined with an update of every register,
/// the shape register automata are usually written in.
fn random_constraint(rng: &mut StdRng, registers: usize) -> Constraint {
    if rng.gen_bool(0.2) {
        return Constraint::or(random_atom(rng, registers), random_atom(rng, registers));
    }
    let mut c = match rng.gen_range(0..3) {
        0 => Constraint::Cmp(rng.gen_range(1..=registers)),
        _ => {
            let mut f = Constraint::Fresh(1);
            for i in 2..=registers {
                f = Constraint::and(f, Constraint::Fresh(i));
            }
            f
        }
    };
    for i in 1..=registers {
        let update = if rng.gen_bool(0.5) { Constraint::Store(i) } else { Constraint::Keep(rng.gen_range(1..=registers), i) };
        c = Constraint::and(c, update);
    }
    c
}

fn random_ra(seed: u64) -> ForgetfulRa {
    let mut rng = StdRng::seed_from_u64(seed);
    let registers = rng.gen_range(1..=2);
    let locations: Vec<String> = (0..3).map(|i| format!("c{i}")).collect();
    let transitions = (0..rng.gen_range(2..=7))
        .map(|_| RaTransition {
            source: rng.gen_range(0..3),
            target: rng.gen_range(0..3),
            constraint: random_constraint(&mut rng, registers),
        })
        .collect();
    let finals: Vec<usize> = (0..3).filter(|&l| l == 2 || rng.gen_bool(0.3)).collect();
    ForgetfulRa::new(locations, registers, 0, finals, transitions).unwrap()
}
