//! Brute-force reference semantics.
//!
//! Nothing in this module uses the network algorithms it is meant to check:
//! networks are only read arc by arc and simulated directly, with `OTHER`
//! interpreted as "any symbol outside the network's sigma".

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::alphabet::{SymbolId, SymbolTable};
use crate::error::{Error, Result};
use crate::network::Network;
use crate::replace::{Action, Direction, MatchLength, ReplaceSpec};
use crate::Word;

/// One factor of a directed scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatchSpan {
    pub start: usize,
    pub end: usize,
    pub matched: bool,
}

/// Concrete symbol pairs an arc stands for, given the probe alphabet.
/// `None` on a side means the empty string.
fn arc_pairs(net: &Network, upper: SymbolId, lower: SymbolId, alphabet: &[SymbolId]) -> Vec<(Option<SymbolId>, Option<SymbolId>)> {
    let outside: Vec<SymbolId> = alphabet.iter().copied().filter(|s| !net.sigma().contains(s)).collect();
    let side = |s: SymbolId| -> Vec<Option<SymbolId>> {
        match s {
            SymbolId::EPSILON => vec![None],
            SymbolId::OTHER | SymbolId::OTHER_PAIR => outside.iter().map(|&x| Some(x)).collect(),
            s => vec![Some(s)],
        }
    };
    match (upper, lower) {
        (SymbolId::OTHER, SymbolId::OTHER) => outside.iter().map(|&x| (Some(x), Some(x))).collect(),
        (SymbolId::OTHER_PAIR, SymbolId::OTHER_PAIR) => {
            let mut v = Vec::new();
            for &x in &outside {
                for &y in &outside {
                    if x != y {
                        v.push((Some(x), Some(y)));
                    }
                }
            }
            v
        }
        (u, l) => {
            let mut v = Vec::new();
            for a in side(u) {
                for b in side(l) {
                    v.push((a, b));
                }
            }
            v
        }
    }
}

/// Does a single arc side read symbol `c`?
fn reads(net: &Network, label: SymbolId, c: SymbolId) -> bool {
    match label {
        SymbolId::OTHER | SymbolId::OTHER_PAIR => !net.sigma().contains(&c),
        s => s == c,
    }
}

fn eps_closure(net: &Network, states: &mut BTreeSet<usize>) {
    let mut stack: Vec<usize> = states.iter().copied().collect();
    while let Some(q) = stack.pop() {
        for a in net.arcs(q) {
            if a.upper == SymbolId::EPSILON && a.lower == SymbolId::EPSILON && states.insert(a.target) {
                stack.push(a.target);
            }
        }
    }
}

/// Membership of `w` in the upper-side language of an automaton.
pub fn accepts(net: &Network, w: &[SymbolId]) -> bool {
    ends_of_matches(net, w, 0).contains(&w.len())
}

/// All `j >= start` such that `w[start..j]` is accepted.
fn ends_of_matches(net: &Network, w: &[SymbolId], start: usize) -> Vec<usize> {
    let mut current = BTreeSet::from([net.start()]);
    eps_closure(net, &mut current);
    let mut ends = Vec::new();
    let mut i = start;
    loop {
        if current.iter().any(|&q| net.is_final(q)) {
            ends.push(i);
        }
        if i == w.len() || current.is_empty() {
            break;
        }
        let mut next = BTreeSet::new();
        for &q in &current {
            for a in net.arcs(q) {
                if a.upper != SymbolId::EPSILON && reads(net, a.upper, w[i]) {
                    next.insert(a.target);
                }
            }
        }
        eps_closure(net, &mut next);
        current = next;
        i += 1;
    }
    ends
}

/// Every `(u, v)` with `|u|, |v| <= max_len` in the relation, over `alphabet`
/// (symbols outside the network's sigma stand in for `OTHER`).
pub fn enumerate_relation(net: &Network, alphabet: &[SymbolId], max_len: usize) -> BTreeSet<(Word, Word)> {
    assert!(max_len <= 12, "enumeration bound too large");
    let mut out = BTreeSet::new();
    let mut seen: HashSet<(usize, Word, Word)> = HashSet::new();
    let mut queue = VecDeque::from([(net.start(), Vec::new(), Vec::new())]);
    while let Some((q, u, v)) = queue.pop_front() {
        if !seen.insert((q, u.clone(), v.clone())) {
            continue;
        }
        if net.is_final(q) {
            out.insert((u.clone(), v.clone()));
        }
        for a in net.arcs(q) {
            for (x, y) in arc_pairs(net, a.upper, a.lower, alphabet) {
                let mut u2 = u.clone();
                let mut v2 = v.clone();
                u2.extend(x);
                v2.extend(y);
                if u2.len() <= max_len && v2.len() <= max_len {
                    queue.push_back((a.target, u2, v2));
                }
            }
        }
    }
    out
}

/// Strings of an automaton up to `max_len` over `alphabet`.
pub fn enumerate_strings(net: &Network, alphabet: &[SymbolId], max_len: usize) -> BTreeSet<Word> {
    enumerate_relation(net, alphabet, max_len)
        .into_iter()
        .filter(|(u, v)| u == v)
        .map(|(u, _)| u)
        .collect()
}

/// `net`'s sigma plus one fresh probe symbol that `OTHER` can bind to.
pub fn default_alphabet(net: &Network, table: &mut SymbolTable) -> Vec<SymbolId> {
    let mut v: Vec<SymbolId> = net.sigma().iter().copied().collect();
    v.push(table.fresh("\u{2022}probe"));
    v
}

/// Outputs for input `w`, read off the enumerated relation.
pub fn image(net: &Network, alphabet: &[SymbolId], w: &[SymbolId], max_out: usize) -> BTreeSet<Word> {
    let max_len = w.len().max(max_out);
    enumerate_relation(net, alphabet, max_len)
        .into_iter()
        .filter(|(u, _)| u == w)
        .map(|(_, v)| v)
        .collect()
}

/// All strings of length at most `max_len` over `alphabet`, shortest first.
pub fn all_words(alphabet: &[SymbolId], max_len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &s in alphabet {
                let mut w2: Word = w.clone();
                w2.push(s);
                next.push(w2);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// The directed factorization of `w` with respect to `upper`.
pub fn match_spans(upper: &Network, w: &[SymbolId], direction: Direction, length: MatchLength) -> Result<Vec<MatchSpan>> {
    match_spans_union(&[upper], w, direction, length)
}

fn match_spans_union(uppers: &[&Network], w: &[SymbolId], direction: Direction, length: MatchLength) -> Result<Vec<MatchSpan>> {
    if uppers.iter().any(|u| accepts(u, &[])) {
        return Err(Error::EpsilonInUpper);
    }
    match direction {
        Direction::LeftToRight => Ok(scan_l2r(uppers, w, length)),
        Direction::RightToLeft => Ok(scan_r2l(uppers, w, length)),
    }
}

/// Mirror image of [`scan_l2r`]: scans end positions from the right.
fn scan_r2l(uppers: &[&Network], w: &[SymbolId], length: MatchLength) -> Vec<MatchSpan> {
    let mut spans = Vec::new();
    let mut j = w.len();
    while j > 0 {
        let starts: Vec<usize> = (0..j).filter(|&i| uppers.iter().any(|u| accepts(u, &w[i..j]))).collect();
        let chosen = match length {
            MatchLength::Longest => starts.iter().min(),
            MatchLength::Shortest => starts.iter().max(),
        };
        match chosen {
            Some(&i) => {
                spans.push(MatchSpan { start: i, end: j, matched: true });
                j = i;
            }
            None => {
                spans.push(MatchSpan { start: j - 1, end: j, matched: false });
                j -= 1;
            }
        }
    }
    spans.reverse();
    spans
}

fn scan_l2r(uppers: &[&Network], w: &[SymbolId], length: MatchLength) -> Vec<MatchSpan> {
    let mut spans = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let ends: Vec<usize> = uppers
            .iter()
            .flat_map(|u| ends_of_matches(u, w, i))
            .filter(|&j| j > i)
            .collect();
        let chosen = match length {
            MatchLength::Longest => ends.iter().max(),
            MatchLength::Shortest => ends.iter().min(),
        };
        match chosen {
            Some(&j) => {
                spans.push(MatchSpan { start: i, end: j, matched: true });
                i = j;
            }
            None => {
                spans.push(MatchSpan { start: i, end: i + 1, matched: false });
                i += 1;
            }
        }
    }
    spans
}

/// Builds a network without running any normalization.
#[cfg(test)]
struct RawBuilder {
    states: usize,
    start: usize,
    arcs: Vec<(usize, usize, SymbolId, SymbolId)>,
    finals: Vec<usize>,
}

#[cfg(test)]
impl RawBuilder {
    fn new(states: usize, start: usize) -> Self {
        RawBuilder { states, start, arcs: Vec::new(), finals: Vec::new() }
    }
    fn build(self, sigma: impl Iterator<Item = SymbolId>) -> Network {
        Network::raw(self.states, self.start, &self.arcs, &self.finals, sigma)
    }
}

/// Strings of an action language, refusing languages that are infinite or
/// have strings longer than `bound`.
fn action_strings(net: &Network, bound: usize) -> Result<Vec<Word>> {
    let has_unknown = (0..net.num_states()).any(|s| net.arcs(s).iter().any(|a| a.upper.is_unknown() || a.lower.is_unknown()));
    if has_unknown {
        return Err(Error::ActionLanguageInfinite(bound));
    }
    let alphabet: Vec<SymbolId> = net.sigma().iter().copied().collect();
    let strings = enumerate_strings(net, &alphabet, bound + 1);
    if strings.iter().any(|s| s.len() > bound) {
        return Err(Error::ActionLanguageInfinite(bound));
    }
    Ok(strings.into_iter().collect())
}

fn product(acc: Vec<Word>, options: &[Word]) -> Vec<Word> {
    let mut out = Vec::with_capacity(acc.len() * options.len());
    for a in &acc {
        for o in options {
            let mut w = a.clone();
            w.extend_from_slice(o);
            out.push(w);
        }
    }
    out
}

fn span_outputs(action: &Action, piece: &[SymbolId], bound: usize) -> Result<Vec<Word>> {
    Ok(match action {
        Action::Lower(lower) => action_strings(lower, bound)?,
        Action::Markup { prefix, suffix } => {
            let p = action_strings(prefix, bound)?;
            let s = action_strings(suffix, bound)?;
            product(product(p, &[piece.to_vec()]), &s)
        }
    })
}

/// Outputs of a directed rule on `w`, by direct string surgery on the span list.
pub fn rewrite(spec: &ReplaceSpec, w: &[SymbolId], bound: usize) -> Result<BTreeSet<Word>> {
    rewrite_parallel(std::slice::from_ref(spec), w, bound)
}

/// Outputs of a set of parallel directed rules on `w`.
pub fn rewrite_parallel(rules: &[ReplaceSpec], w: &[SymbolId], bound: usize) -> Result<BTreeSet<Word>> {
    let first = rules.first().ok_or(Error::EmptyRuleSet)?;
    let uppers: Vec<&Network> = rules.iter().map(|r| &r.upper).collect();
    let spans = match_spans_union(&uppers, w, first.direction, first.length)?;
    let mut acc: Vec<Word> = vec![Vec::new()];
    for span in spans {
        let piece = &w[span.start..span.end];
        if !span.matched {
            acc = product(acc, &[piece.to_vec()]);
            continue;
        }
        let mut options = Vec::new();
        for r in rules.iter().filter(|r| accepts(&r.upper, piece)) {
            options.extend(span_outputs(&r.action, piece, bound)?);
        }
        acc = product(acc, &options);
    }
    Ok(acc.into_iter().collect())
}

/// Outputs of `upper -> lower || left _ right` (empty contexts for plain `->`)
/// by enumerating every tiling of `w` into replaced pieces and gaps.
pub fn rewrite_obligatory(
    upper: &Network,
    lower: &Network,
    context: Option<(&Network, &Network)>,
    w: &[SymbolId],
    bound: usize,
) -> Result<BTreeSet<Word>> {
    let lowers = action_strings(lower, bound)?;
    let n = w.len();
    let mut padded = vec![SymbolId::BOUNDARY];
    padded.extend_from_slice(w);
    padded.push(SymbolId::BOUNDARY);
    // instance [i, j) of w sits in context when the padded prefix ends in LEFT and
    // the padded suffix starts with RIGHT
    let eligible = |i: usize, j: usize| -> bool {
        if i == j || !accepts(upper, &w[i..j]) {
            return false;
        }
        let Some((left, right)) = context else { return true };
        let prefix = &padded[..=i];
        let suffix = &padded[j + 1..];
        let left_ok = (0..=prefix.len()).any(|k| accepts(left, &prefix[k..]));
        let right_ok = (0..=suffix.len()).any(|k| accepts(right, &suffix[..k]));
        left_ok && right_ok
    };
    let mut eligible_table = vec![vec![false; n + 1]; n + 1];
    for i in 0..n {
        for j in i + 1..=n {
            eligible_table[i][j] = eligible(i, j);
        }
    }
    let gap_clean = |a: usize, b: usize| -> bool {
        (a..b).all(|i| (i + 1..=b).all(|j| !eligible_table[i][j]))
    };
    let mut out = BTreeSet::new();
    // tilings as lists of replaced intervals
    fn walk(
        pos: usize,
        gap_start: usize,
        n: usize,
        table: &[Vec<bool>],
        chosen: &mut Vec<(usize, usize)>,
        found: &mut Vec<Vec<(usize, usize)>>,
        gap_clean: &dyn Fn(usize, usize) -> bool,
    ) {
        if pos == n {
            if gap_clean(gap_start, n) {
                found.push(chosen.clone());
            }
            return;
        }
        // a gap that already contains an eligible instance stays dirty
        if gap_clean(gap_start, pos + 1) {
            walk(pos + 1, gap_start, n, table, chosen, found, gap_clean);
        }
        if !gap_clean(gap_start, pos) {
            return;
        }
        for j in pos + 1..=n {
            if table[pos][j] {
                chosen.push((pos, j));
                walk(j, j, n, table, chosen, found, gap_clean);
                chosen.pop();
            }
        }
    }
    let mut tilings = Vec::new();
    walk(0, 0, n, &eligible_table, &mut Vec::new(), &mut tilings, &gap_clean);
    for tiling in tilings {
        let mut acc: Vec<Word> = vec![Vec::new()];
        let mut pos = 0;
        for (i, j) in tiling {
            acc = product(acc, &[w[pos..i].to_vec()]);
            acc = product(acc, &lowers);
            pos = j;
        }
        acc = product(acc, &[w[pos..].to_vec()]);
        out.extend(acc);
    }
    Ok(out)
}

/// Result of comparing two networks by enumeration.
#[derive(Clone, Debug, Default)]
pub struct EquivalenceReport {
    pub only_in_first: Vec<(Word, Word)>,
    pub only_in_second: Vec<(Word, Word)>,
}

impl EquivalenceReport {
    pub fn equivalent(&self) -> bool {
        self.only_in_first.is_empty() && self.only_in_second.is_empty()
    }

    pub fn counterexamples(&self) -> impl Iterator<Item = &(Word, Word)> {
        self.only_in_first.iter().chain(self.only_in_second.iter())
    }
}

/// Compares the relations of `a` and `b` restricted to pairs of length at most
/// `max_len`; keeps up to ten counterexamples per side.
pub fn assert_equivalent(a: &Network, b: &Network, alphabet: &[SymbolId], max_len: usize) -> EquivalenceReport {
    let ra = enumerate_relation(a, alphabet, max_len);
    let rb = enumerate_relation(b, alphabet, max_len);
    EquivalenceReport {
        only_in_first: ra.difference(&rb).take(10).cloned().collect(),
        only_in_second: rb.difference(&ra).take(10).cloned().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table_ab() -> (SymbolTable, SymbolId, SymbolId, SymbolId) {
        let mut t = SymbolTable::new();
        let a = t.intern("a").unwrap();
        let b = t.intern("b").unwrap();
        let x = t.intern("x").unwrap();
        (t, a, b, x)
    }

    fn lang(words: &[&[SymbolId]]) -> Network {
        let mut n = RawBuilder::new(1, 0);
        let mut next = 1;
        let mut arcs = Vec::new();
        let mut finals = Vec::new();
        let mut sigma = BTreeSet::new();
        for w in words {
            let mut prev = 0;
            for &s in *w {
                arcs.push((prev, next, s, s));
                sigma.insert(s);
                prev = next;
                next += 1;
            }
            finals.push(prev);
        }
        n.states = next;
        n.arcs = arcs;
        n.finals = finals;
        n.build(sigma.into_iter())
    }

    #[test]
    fn longest_l2r_takes_whole_aba() {
        let (_, a, b, _) = table_ab();
        let upper = lang(&[&[a, b], &[b], &[b, a], &[a, b, a]]);
        let spans = match_spans(&upper, &[a, b, a], Direction::LeftToRight, MatchLength::Longest).unwrap();
        assert_eq!(spans, vec![MatchSpan { start: 0, end: 3, matched: true }]);
    }

    #[test]
    fn shortest_l2r_takes_ab() {
        let (_, a, b, _) = table_ab();
        let upper = lang(&[&[a, b], &[b], &[b, a], &[a, b, a]]);
        let spans = match_spans(&upper, &[a, b, a], Direction::LeftToRight, MatchLength::Shortest).unwrap();
        assert_eq!(
            spans,
            vec![MatchSpan { start: 0, end: 2, matched: true }, MatchSpan { start: 2, end: 3, matched: false }]
        );
    }

    #[test]
    fn right_to_left_scans_from_the_end() {
        let (_, a, b, _) = table_ab();
        let upper = lang(&[&[a, b], &[b, a]]);
        let spans = match_spans(&upper, &[a, b, a], Direction::RightToLeft, MatchLength::Longest).unwrap();
        assert_eq!(
            spans,
            vec![MatchSpan { start: 0, end: 1, matched: false }, MatchSpan { start: 1, end: 3, matched: true }]
        );
    }

    #[test]
    fn epsilon_upper_is_refused() {
        let (_, a, _, _) = table_ab();
        let upper = lang(&[&[], &[a]]);
        assert_eq!(
            match_spans(&upper, &[a], Direction::LeftToRight, MatchLength::Longest),
            Err(Error::EpsilonInUpper)
        );
    }

    #[test]
    fn rewrite_products_over_spans() {
        let (mut t, a, b, x) = table_ab();
        let y = t.intern("y").unwrap();
        let spec = ReplaceSpec::longest_l2r(lang(&[&[a]]), lang(&[&[x], &[y]]));
        let out = rewrite(&spec, &[a, b, a], 4).unwrap();
        assert_eq!(out.len(), 4);
        assert!(out.contains(&vec![x, b, y]));
    }

    #[test]
    fn parallel_rules_on_aaabba() {
        let (_, a, b, _) = table_ab();
        let a_plus = RawBuilder { states: 2, start: 0, arcs: vec![(0, 1, a, a), (1, 1, a, a)], finals: vec![1] }
            .build([a].into_iter());
        let b_plus = RawBuilder { states: 2, start: 0, arcs: vec![(0, 1, b, b), (1, 1, b, b)], finals: vec![1] }
            .build([b].into_iter());
        let rules = [
            ReplaceSpec::longest_l2r(a_plus.clone(), lang(&[&[b]])),
            ReplaceSpec::longest_l2r(b_plus.clone(), lang(&[&[a]])),
        ];
        let out = rewrite_parallel(&rules, &[a, a, a, b, b, a], 3).unwrap();
        assert_eq!(out, BTreeSet::from([vec![b, a, b]]));
    }

    #[test]
    fn simple_replace_has_four_factorizations() {
        let (_, a, b, x) = table_ab();
        let upper = lang(&[&[a, b], &[b], &[b, a], &[a, b, a]]);
        let out = rewrite_obligatory(&upper, &lang(&[&[x]]), None, &[a, b, a], 3).unwrap();
        let expected: BTreeSet<Word> = [vec![a, x, a], vec![a, x], vec![x, a], vec![x]].into_iter().collect();
        assert_eq!(out, expected);
    }

    #[test]
    fn conditional_checks_each_occurrence() {
        let (_, a, b, x) = table_ab();
        let out = rewrite_obligatory(&lang(&[&[b]]), &lang(&[&[x]]), Some((&lang(&[&[a]]), &lang(&[&[]]))), &[a, b, b], 3)
            .unwrap();
        assert_eq!(out, BTreeSet::from([vec![a, x, b]]));
    }

    #[test]
    fn infinite_action_language_is_reported() {
        let (_, a, _, x) = table_ab();
        let x_plus = RawBuilder { states: 2, start: 0, arcs: vec![(0, 1, x, x), (1, 1, x, x)], finals: vec![1] }
            .build([x].into_iter());
        let spec = ReplaceSpec::longest_l2r(lang(&[&[a]]), x_plus);
        assert_eq!(rewrite(&spec, &[a], 3), Err(Error::ActionLanguageInfinite(3)));
    }

    #[test]
    fn enumeration_of_empty_and_star() {
        let (_, a, _, _) = table_ab();
        assert!(enumerate_relation(&Network::empty(), &[a], 3).is_empty());
        let a_star = RawBuilder { states: 1, start: 0, arcs: vec![(0, 0, a, a)], finals: vec![0] }.build([a].into_iter());
        let got = enumerate_strings(&a_star, &[a], 2);
        assert_eq!(got, BTreeSet::from([vec![], vec![a], vec![a, a]]));
    }
}
