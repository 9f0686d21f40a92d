mod common;

use std::collections::BTreeMap;

use common::*;
use mtalc_core::algebra::{Calculus, Rcc8Atom};
use mtalc_core::atemporal::RationalOrderDomain;
use mtalc_core::lang::{parse, Concept, Directive, Sort};
use mtalc_core::temporal::{satisfiable, Outcome, SearchOptions, Witness};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const HEADER: &str = "tfeature f, h; trole R; sfeature g; primitive A, C temporal;\n";

/// A weakly cyclic TBox over `B0..B2`: `Bi` uses itself only under a
/// quantifier and otherwise only `Bj` with `j > i`; defined names occur
/// positively only.
fn random_tbox<R: Rng>(rng: &mut R, eventualities: bool) -> String {
    fn expr<R: Rng>(rng: &mut R, i: usize, depth: usize, guarded: bool) -> String {
        let names: Vec<usize> = (i + usize::from(!guarded)..3).collect();
        let choice = rng.gen_range(0..if depth == 0 { 4 } else { 11 });
        match choice {
            0 => "A".into(),
            1 => "not A".into(),
            2 => "C".into(),
            3 if !names.is_empty() => format!("B{}", names[rng.gen_range(0..names.len())]),
            3 => "not C".into(),
            4 | 5 => {
                let role = ["f", "f", "h", "R"][rng.gen_range(0..4)];
                let q = if rng.gen_bool(0.55) { "some" } else { "all" };
                format!("{q} {role} . ({})", expr(rng, i, depth - 1, true))
            }
            6 | 7 => format!("({}) and ({})", expr(rng, i, depth - 1, guarded), expr(rng, i, depth - 1, guarded)),
            8 if rng.gen_bool(0.4) => {
                format!("({}) or ({})", expr(rng, i, depth - 1, guarded), expr(rng, i, depth - 1, guarded))
            }
            8 | 9 => {
                let rel = ["NTPP", "TPP,NTPP", "DC", "EQ", "PO,EC"][rng.gen_range(0..5)];
                let chain = ["(f g)", "(h g)", "(f f g)"][rng.gen_range(0..3)];
                format!("some (g){chain}.{{{rel}}}")
            }
            _ => format!("some f . (B{i})"),
        }
    }
    let mut out = HEADER.to_string();
    for i in 0..3 {
        let ev = if eventualities { " eventuality" } else { "" };
        out += &format!("define B{i} temporal{ev} := {};\n", expr(rng, i, 3, false));
    }
    out += "check sat B0 and B1;\n";
    out
}

fn verdict(text: &str, options: &SearchOptions) -> Outcome {
    let doc = parse(text, Calculus::Rcc8, &RationalOrderDomain).unwrap_or_else(|e| panic!("{text}\n{e:?}"));
    let Some(Directive::Sat(c)) = doc.directives.first() else { panic!() };
    satisfiable(c, &doc.tbox, Calculus::Rcc8, &RationalOrderDomain, options).unwrap()
}

/// Every triple of variables whose three pairs are all constrained obeys
/// the composition table.
fn scenario_is_closed(w: &Witness) -> bool {
    let atoms: BTreeMap<(usize, usize), Rcc8Atom> = w
        .scenario
        .iter()
        .map(|c| {
            let a = Rcc8Atom::ALL.into_iter().find(|a| a.name() == c.atom).unwrap();
            ((c.vars[0], c.vars[1]), a)
        })
        .collect();
    let get = |i: usize, j: usize| {
        atoms
            .get(&(i, j))
            .copied()
            .or_else(|| atoms.get(&(j, i)).map(|a| a.converse()))
    };
    let vars: Vec<usize> = w.variables.iter().map(|v| v.id).collect();
    for &i in &vars {
        for &j in &vars {
            for &k in &vars {
                if i == j || j == k || i == k {
                    continue;
                }
                if let (Some(ij), Some(jk), Some(ik)) = (get(i, j), get(j, k), get(i, k)) {
                    if !ij.compose(jk).contains(ik) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn online_filtering_never_changes_a_verdict(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let eventual = rng.gen_bool(0.5);
        let text = random_tbox(&mut rng, eventual);
        let on = verdict(&text, &SearchOptions::default());
        let off = verdict(&text, &SearchOptions { online_filtering: false, ..SearchOptions::default() });
        prop_assert_eq!(on.is_sat(), off.is_sat(), "{}", text);
        if let Some(w) = on.witness() {
            prop_assert!(scenario_is_closed(w), "{}", text);
        }
    }

    #[test]
    fn eventualities_only_remove_models(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut twin = rng.clone();
        let plain = random_tbox(&mut rng, false);
        let eventual = random_tbox(&mut twin, true);
        let p = verdict(&plain, &SearchOptions::default());
        let e = verdict(&eventual, &SearchOptions::default());
        prop_assert!(p.is_sat() || !e.is_sat(), "{}", eventual);
        if let Some(w) = e.witness() {
            // every temporal defined name must be fulfilled, so no loop survives
            prop_assert!(w.back_edges.is_empty(), "{}", eventual);
        }
    }

    #[test]
    fn a_name_and_its_definition_agree(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let eventual = rng.gen_bool(0.5);
        let text = random_tbox(&mut rng, eventual);
        let doc = parse(&text, Calculus::Rcc8, &RationalOrderDomain).unwrap();
        let b1 = Concept::name("B1", Sort::Temporal);
        let name = Concept::and([Concept::name("B0", Sort::Temporal), b1.clone()]);
        let body = Concept::and([doc.tbox.get("B0").unwrap().rhs.clone(), b1]);
        let opts = SearchOptions::default();
        let a = satisfiable(&name, &doc.tbox, Calculus::Rcc8, &RationalOrderDomain, &opts).unwrap();
        let b = satisfiable(&body, &doc.tbox, Calculus::Rcc8, &RationalOrderDomain, &opts).unwrap();
        prop_assert_eq!(a.is_sat(), b.is_sat(), "{}", text);
    }
}

#[test]
fn loops_without_eventualities_are_accepted() {
    let text = format!("{HEADER}define B0 temporal := some f . B0 and some h . B0 and some R . B0;\ncheck sat B0;");
    let out = verdict(&text, &SearchOptions::default());
    let w = out.witness().expect("sat");
    assert!(!w.back_edges.is_empty());
}

#[test]
fn sibling_obligations_share_a_feature_successor() {
    let text = format!("{HEADER}check sat some f . A and some f . C and some R . A and some R . C and some h . top;");
    let doc = parse(&text, Calculus::Rcc8, &RationalOrderDomain).unwrap();
    let Some(Directive::Sat(c)) = doc.directives.first() else { panic!() };
    let out = satisfiable(c, &doc.tbox, Calculus::Rcc8, &RationalOrderDomain, &SearchOptions::default()).unwrap();
    let w = out.witness().unwrap();
    let from_root: Vec<&str> = w.edges.iter().filter(|e| e.from == 0).map(|e| e.direction.as_str()).collect();
    assert_eq!(from_root.iter().filter(|d| **d == "f").count(), 1, "{from_root:?}");
    assert_eq!(from_root.iter().filter(|d| d.starts_with("some R")).count(), 2, "{from_root:?}");
}

#[test]
fn regression_corpus_under_larger_unfolding() {
    for unfold in [1, 3] {
        let opts = SearchOptions { unfold, ..SearchOptions::default() };
        for case in REGRESSION {
            assert_eq!(run_case(case, &opts), case.expected, "{} with unfold {unfold}", case.name);
        }
    }
}
