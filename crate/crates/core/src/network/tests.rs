use std::collections::BTreeSet;

use super::*;
use crate::oracle::{enumerate_relation, enumerate_strings};
use crate::{Error, SymbolTable};

struct Fixture {
    table: SymbolTable,
    a: SymbolId,
    b: SymbolId,
    c: SymbolId,
    probe: SymbolId,
}

fn fixture() -> Fixture {
    let mut table = SymbolTable::new();
    let a = table.intern("a").unwrap();
    let b = table.intern("b").unwrap();
    let c = table.intern("c").unwrap();
    let probe = table.intern("z").unwrap();
    Fixture { table, a, b, c, probe }
}

impl Fixture {
    fn alphabet(&self) -> Vec<SymbolId> {
        vec![self.a, self.b, self.c, self.probe]
    }

    fn rel(&self, n: &Network, len: usize) -> BTreeSet<(Vec<SymbolId>, Vec<SymbolId>)> {
        enumerate_relation(n, &self.alphabet(), len)
    }

    fn lang(&self, n: &Network, len: usize) -> BTreeSet<Vec<SymbolId>> {
        enumerate_strings(n, &self.alphabet(), len)
    }
}

#[test]
fn every_result_is_normalized() {
    let f = fixture();
    let x = Network::symbol(f.a).star().concat(&Network::epsilon()).union(&Network::word(&[f.b, f.c]));
    assert_eq!(x.start(), 0);
    for s in 0..x.num_states() {
        assert!(x.arcs(s).iter().all(|arc| arc.label() != (SymbolId::EPSILON, SymbolId::EPSILON)));
        assert!(x.arcs(s).windows(2).all(|w| w[0] <= w[1]));
    }
}

#[test]
fn empty_relation_has_one_nonfinal_state() {
    let f = fixture();
    let e = Network::symbol(f.a).intersect(&Network::symbol(f.b)).unwrap();
    assert!(e.is_empty_relation());
    assert_eq!(e.num_states(), 1);
    assert!(!e.is_final(0));
}

#[test]
fn concatenation_and_star() {
    let f = fixture();
    let ab = Network::word(&[f.a, f.b]);
    let lang = f.lang(&ab.star(), 4);
    let expected: BTreeSet<_> = [vec![], vec![f.a, f.b], vec![f.a, f.b, f.a, f.b]].into_iter().collect();
    assert_eq!(lang, expected);
    assert!(!f.lang(&ab.plus(), 4).contains(&vec![]));
}

#[test]
fn determinize_and_minimize_preserve_relations() {
    let f = fixture();
    let x = Network::atom(f.a, f.b).union(&Network::atom(f.a, f.c)).star().concat(&Network::symbol(f.a).optional());
    let d = x.determinize();
    assert!(d.is_deterministic());
    assert_eq!(f.rel(&x, 4), f.rel(&d, 4));
    let m = x.minimize();
    assert!(m.is_minimized());
    assert_eq!(f.rel(&x, 4), f.rel(&m, 4));
    assert!(m.minimize().is_isomorphic(&m));
}

#[test]
fn equal_languages_minimize_to_isomorphic_networks() {
    let f = fixture();
    let ab = Network::symbol_set(&[f.a, f.b]);
    let star = ab.star().minimize();
    let other = Network::any().difference(&ab).unwrap();
    let no_other = other.contains().unwrap().complement().unwrap().minimize();
    assert!(star.is_isomorphic(&no_other));
}

#[test]
fn complement_is_an_involution_and_refuses_relations() {
    let f = fixture();
    let x = Network::word(&[f.a, f.b]).union(&Network::symbol(f.c).star());
    let cc = x.complement().unwrap().complement().unwrap();
    assert_eq!(f.lang(&x, 4), f.lang(&cc, 4));
    let nx = x.complement().unwrap();
    assert!(nx.contains_word(&[f.probe]));
    assert!(!nx.contains_word(&[f.a, f.b]));
    assert!(matches!(Network::atom(f.a, f.b).complement(), Err(Error::NotAnAutomaton(_))));
}

#[test]
fn composition_chains_pairs() {
    let f = fixture();
    let ab = Network::atom(f.a, f.b);
    let bc = Network::atom(f.b, f.c);
    let ac = ab.compose(&bc);
    assert_eq!(f.rel(&ac, 2), f.rel(&Network::atom(f.a, f.c), 2));
    let id = Network::any_star();
    assert_eq!(f.rel(&ab.compose(&id), 3), f.rel(&ab, 3));
    assert_eq!(f.rel(&id.compose(&ab), 3), f.rel(&ab, 3));
}

#[test]
fn composition_with_epsilon_sides_has_single_paths() {
    let f = fixture();
    let ins = Network::atom(SymbolId::EPSILON, f.b);
    let del = Network::atom(f.b, SymbolId::EPSILON);
    let t = Network::symbol(f.a).concat(&ins).compose(&Network::symbol(f.a).concat(&del));
    assert_eq!(f.rel(&t, 2), f.rel(&Network::symbol(f.a), 2));
    let paths = t.arcs(t.start()).len();
    assert_eq!(paths, 1);
}

#[test]
fn unknown_symbols_survive_composition() {
    let f = fixture();
    let copy_unknown = Network::any();
    let a_to_b = Network::atom(f.a, f.b);
    let t = copy_unknown.union(&a_to_b).star();
    let r = f.rel(&t.compose(&t), 2);
    assert!(r.contains(&(vec![f.probe], vec![f.probe])));
    assert!(r.contains(&(vec![f.a], vec![f.b])));
    assert!(!r.contains(&(vec![f.probe], vec![f.c])));
}

#[test]
fn crossproduct_pairs_all_strings() {
    let f = fixture();
    let x = Network::word(&[f.a, f.b]).crossproduct(&Network::symbol(f.c)).unwrap();
    let r = f.rel(&x, 3);
    let expected: BTreeSet<_> = [(vec![f.a, f.b], vec![f.c])].into_iter().collect();
    assert_eq!(r, expected);
    let any_pair = Network::any().crossproduct(&Network::any()).unwrap();
    let r = f.rel(&any_pair, 1);
    assert!(r.contains(&(vec![f.probe], vec![f.a])));
    assert!(r.contains(&(vec![f.a], vec![f.probe])));
    assert!(r.contains(&(vec![f.probe], vec![f.probe])));
}

#[test]
fn ignore_variants() {
    let f = fixture();
    let ab = Network::word(&[f.a, f.b]);
    let ig = ab.ignore(&[f.c]).unwrap();
    assert!(ig.contains_word(&[f.c, f.a, f.c, f.b, f.c]));
    let nf = ab.ignore_nonfinal(&[f.c]).unwrap();
    assert!(nf.contains_word(&[f.c, f.a, f.c, f.b]));
    assert!(!nf.contains_word(&[f.a, f.b, f.c]));
}

#[test]
fn reverse_inverse_and_projection() {
    let f = fixture();
    let t = Network::atom(f.a, f.b).concat(&Network::atom(f.c, SymbolId::EPSILON));
    assert!(f.rel(&t.reverse(), 2).contains(&(vec![f.c, f.a], vec![f.b])));
    assert!(f.rel(&t.inverse(), 2).contains(&(vec![f.b], vec![f.a, f.c])));
    assert_eq!(f.lang(&t.project(Side::Upper), 2), [vec![f.a, f.c]].into_iter().collect());
    assert_eq!(f.lang(&t.project(Side::Lower), 2), [vec![f.b]].into_iter().collect());
}

#[test]
fn text_round_trip() {
    let mut f = fixture();
    let t = Network::atom(f.a, f.b).union(&Network::any()).star();
    let text = to_text(&t, &f.table);
    let back = from_text(&text, &mut f.table).unwrap();
    assert!(back.is_isomorphic(&t.trim()));
    assert!(from_text("garbage", &mut f.table).is_err());
}

#[test]
fn dot_collapses_parallel_arcs() {
    let f = fixture();
    let n = Network::symbol_set(&[f.a, f.b]);
    let dot = to_dot(&n, &f.table);
    assert!(dot.contains("\"a,b\""), "{dot}");
    assert!(dot.contains("doublecircle"));
    let empty = to_dot(&Network::empty(), &f.table);
    assert!(!empty.contains("doublecircle"));
}

impl Network {
    fn contains_word(&self, w: &[SymbolId]) -> bool {
        crate::oracle::accepts(self, w)
    }
}
