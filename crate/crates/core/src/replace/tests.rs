use std::collections::BTreeSet;

use super::*;
use crate::apply::apply_down_word;
use crate::oracle::{all_words, rewrite, rewrite_obligatory, rewrite_parallel};
use crate::regex::compile_str;
use crate::{SymbolTable, Word};

const MODES: [(Direction, MatchLength); 4] = [
    (Direction::LeftToRight, MatchLength::Longest),
    (Direction::LeftToRight, MatchLength::Shortest),
    (Direction::RightToLeft, MatchLength::Longest),
    (Direction::RightToLeft, MatchLength::Shortest),
];

struct Env {
    table: SymbolTable,
}

impl Env {
    fn new() -> Self {
        let mut table = SymbolTable::new();
        for s in ["a", "b", "x", "y", "z"] {
            table.intern(s).unwrap();
        }
        Env { table }
    }

    fn net(&mut self, src: &str) -> Network {
        compile_str(src, &mut self.table).unwrap().minimize()
    }

    fn id(&self, s: &str) -> SymbolId {
        self.table.lookup(s).unwrap()
    }

    fn word(&self, s: &str) -> Word {
        s.chars().map(|c| self.id(&c.to_string())).collect()
    }

    fn outputs(&self, net: &Network, w: &[SymbolId]) -> BTreeSet<Word> {
        apply_down_word(net, &self.table, w, 50)
    }

    /// Inputs over a, b and one symbol no rule mentions.
    fn inputs(&self, max_len: usize) -> Vec<Word> {
        all_words(&[self.id("a"), self.id("b"), self.id("z")], max_len)
    }
}

#[test]
fn directed_replace_selects_one_factorization() {
    let mut env = Env::new();
    let upper = env.net("a b | b | b a | a b a");
    let lower = env.net("x");
    let t = replace_directed(&ReplaceSpec::longest_l2r(upper, lower)).unwrap();
    let w = env.word("aba");
    assert_eq!(env.outputs(&t, &w), [env.word("x")].into_iter().collect());
}

#[test]
fn all_modes_agree_with_scanning_reference() {
    let mut env = Env::new();
    for upper_src in ["a b | b | b a | a b a", "a+ b", "a | a a", "[a b]+", "b a* b"] {
        let upper = env.net(upper_src);
        for lower_src in ["x", "x y", "[]"] {
            let lower = env.net(lower_src);
            for (dir, len) in MODES {
                let spec = ReplaceSpec::new(upper.clone(), Action::Lower(lower.clone()), dir, len);
                let t = replace_directed(&spec).unwrap();
                for w in env.inputs(5) {
                    let expected = rewrite(&spec, &w, 6).unwrap();
                    assert_eq!(env.outputs(&t, &w), expected, "{upper_src} -> {lower_src} {dir:?} {len:?} on {w:?}");
                }
            }
        }
    }
}

#[test]
fn markup_agrees_with_scanning_reference() {
    let mut env = Env::new();
    let upper = env.net("(b) a* b+");
    for (p, s) in [("x", "y"), ("x", "[]"), ("[]", "y y")] {
        let action = Action::Markup { prefix: env.net(p), suffix: env.net(s) };
        for (dir, len) in MODES {
            let spec = ReplaceSpec::new(upper.clone(), action.clone(), dir, len);
            let t = markup_directed(&spec).unwrap();
            for w in env.inputs(5) {
                assert_eq!(env.outputs(&t, &w), rewrite(&spec, &w, 6).unwrap(), "{p}...{s} {dir:?} {len:?} on {w:?}");
            }
        }
    }
}

#[test]
fn parallel_rules_agree_with_scanning_reference() {
    let mut env = Env::new();
    let a_plus = env.net("a+");
    let b_plus = env.net("b+");
    let x = env.net("x");
    let y = env.net("y");
    for (dir, len) in MODES {
        let rules = vec![
            ReplaceSpec::new(a_plus.clone(), Action::Lower(x.clone()), dir, len),
            ReplaceSpec::new(b_plus.clone(), Action::Lower(y.clone()), dir, len),
        ];
        let t = replace_parallel_directed(&rules).unwrap();
        for w in env.inputs(5) {
            assert_eq!(env.outputs(&t, &w), rewrite_parallel(&rules, &w, 6).unwrap(), "{dir:?} {len:?} on {w:?}");
        }
    }
}

#[test]
fn rule_validation() {
    let mut env = Env::new();
    let a_star = env.net("a*");
    let x = env.net("x");
    assert_eq!(replace_directed(&ReplaceSpec::longest_l2r(a_star, x.clone())).unwrap_err(), Error::EpsilonInUpper);
    assert_eq!(replace_parallel_directed(&[]).unwrap_err(), Error::EmptyRuleSet);
    let a = env.net("a");
    let rules = [
        ReplaceSpec::longest_l2r(a.clone(), x.clone()),
        ReplaceSpec::new(a.clone(), Action::Lower(x.clone()), Direction::RightToLeft, MatchLength::Longest),
    ];
    assert_eq!(replace_parallel_directed(&rules).unwrap_err(), Error::MixedModes);
    let pair = env.net("a:b");
    assert!(matches!(replace_directed(&ReplaceSpec::longest_l2r(pair, x)), Err(Error::NotAnAutomaton(_))));
}

#[test]
fn auxiliary_symbols_never_leak() {
    let mut env = Env::new();
    let t = env.net("a b | b @-> x ... y");
    for aux in AUX {
        assert!(!t.sigma().contains(&aux));
    }
    for s in 0..t.num_states() {
        assert!(t.arcs(s).iter().all(|a| !a.upper.is_auxiliary() && !a.lower.is_auxiliary()));
    }
}

#[test]
fn dropping_the_length_constraint_is_noticed() {
    let mut env = Env::new();
    let upper = env.net("a b | b | b a | a b a");
    let lower = env.net("x");
    let spec = ReplaceSpec::longest_l2r(upper, lower);
    let broken = replace_directed_with(&spec, ReplaceOptions { drop_length_constraint: true }).unwrap();
    let out = env.outputs(&broken, &env.word("aba"));
    assert!(out.contains(&env.word("xa")), "{out:?}");
}

#[test]
fn simple_replace_matches_tiling_reference() {
    let mut env = Env::new();
    for (u, l) in [("a b | b | b a | a b a", "x"), ("a+", "x"), ("a | b", "[] | x")] {
        let upper = env.net(u);
        let lower = env.net(l);
        let t = replace_simple(&upper, &lower).unwrap();
        for w in env.inputs(4) {
            assert_eq!(env.outputs(&t, &w), rewrite_obligatory(&upper, &lower, None, &w, 6).unwrap(), "{u} -> {l} on {w:?}");
        }
    }
}

#[test]
fn conditional_replace_matches_tiling_reference() {
    let mut env = Env::new();
    let cases = [
        ("b", "x", "a", "[]"),
        ("b", "x", "a", "b"),
        ("a", "[]", "[]", "a"),
        ("a+", "x", "b", "b"),
    ];
    for (u, l, left, right) in cases {
        let upper = env.net(u);
        let lower = env.net(l);
        let ctx = ContextSpec { left: env.net(left), right: env.net(right) };
        let t = replace_conditional(&upper, &lower, &ctx).unwrap();
        for w in env.inputs(4) {
            let expected = rewrite_obligatory(&upper, &lower, Some((&ctx.left, &ctx.right)), &w, 6).unwrap();
            assert_eq!(env.outputs(&t, &w), expected, "{u} -> {l} || {left} _ {right} on {w:?}");
        }
    }
}

#[test]
fn conditional_replace_with_boundaries() {
    let mut env = Env::new();
    let t = env.net("a -> x || .#. | b _");
    assert_eq!(env.outputs(&t, &env.word("aab")), [env.word("xab")].into_iter().collect());
    assert_eq!(env.outputs(&t, &env.word("bab")), [env.word("bxb")].into_iter().collect());
    let t = env.net("a -> x || _ .#.");
    assert_eq!(env.outputs(&t, &env.word("aa")), [env.word("ax")].into_iter().collect());
}
