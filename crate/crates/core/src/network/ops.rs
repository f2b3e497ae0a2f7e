//! Rational operations on networks.

use std::collections::HashMap;

use super::{Arc, Network, Side, StateId};
use crate::alphabet::{harmonize, SymbolId};
use crate::error::{Error, Result};

impl Network {
    /// Copies `other`'s states into `self`, returning the offset of the copied start.
    fn append(&mut self, other: &Network) -> StateId {
        let offset = self.num_states();
        for s in 0..other.num_states() {
            let id = self.add_state();
            self.set_final(id, other.is_final(s));
        }
        for s in 0..other.num_states() {
            for a in other.arcs(s) {
                self.push_arc(offset + s, Arc::new(a.upper, a.lower, offset + a.target));
            }
        }
        self.extend_sigma(other.sigma().iter().copied());
        offset + other.start()
    }

    fn eps_arc(target: StateId) -> Arc {
        Arc::new(SymbolId::EPSILON, SymbolId::EPSILON, target)
    }

    /// `?*`: the universal language.
    pub fn any_star() -> Network {
        Network::any().star()
    }

    pub fn union(&self, other: &Network) -> Network {
        let (a, b) = harmonize(self, other);
        let mut n = Network::with_states(1);
        let sa = n.append(&a);
        let sb = n.append(&b);
        n.push_arc(0, Self::eps_arc(sa));
        n.push_arc(0, Self::eps_arc(sb));
        n.finish()
    }

    pub fn union_all<'a>(nets: impl IntoIterator<Item = &'a Network>) -> Network {
        nets.into_iter().fold(Network::empty(), |acc, n| acc.union(n))
    }

    pub fn concat(&self, other: &Network) -> Network {
        let (a, b) = harmonize(self, other);
        let mut n = Network::with_states(0);
        let sa = n.append(&a);
        let offset_a = sa - a.start();
        let sb = n.append(&b);
        n.set_start(sa);
        for s in 0..a.num_states() {
            if a.is_final(s) {
                n.set_final(offset_a + s, false);
                n.push_arc(offset_a + s, Self::eps_arc(sb));
            }
        }
        // the placeholder state 0 from with_states(0) is unreachable and trimmed
        n.finish()
    }

    pub fn concat_all<'a>(nets: impl IntoIterator<Item = &'a Network>) -> Network {
        nets.into_iter().fold(Network::epsilon(), |acc, n| acc.concat(n))
    }

    pub fn star(&self) -> Network {
        let mut n = Network::with_states(1);
        n.set_final(0, true);
        let s = n.append(self);
        let offset = s - self.start();
        n.push_arc(0, Self::eps_arc(s));
        for q in 0..self.num_states() {
            if self.is_final(q) {
                n.push_arc(offset + q, Self::eps_arc(0));
            }
        }
        n.finish()
    }

    pub fn plus(&self) -> Network {
        self.concat(&self.star())
    }

    pub fn optional(&self) -> Network {
        self.union(&Network::epsilon())
    }

    /// Reverses both sides of every string pair.
    pub fn reverse(&self) -> Network {
        let mut n = Network::with_states(self.num_states() + 1);
        let start = self.num_states();
        n.set_start(start);
        n.extend_sigma(self.sigma().iter().copied());
        for s in 0..self.num_states() {
            for a in self.arcs(s) {
                n.push_arc(a.target, Arc::new(a.upper, a.lower, s));
            }
            if self.is_final(s) {
                n.push_arc(start, Self::eps_arc(s));
            }
        }
        n.set_final(self.start(), true);
        n.finish()
    }

    /// Swaps the upper and lower side.
    pub fn inverse(&self) -> Network {
        self.map_arcs(|a| vec![(a.lower, a.upper)])
    }

    /// The identity automaton on one side of the relation.
    pub fn project(&self, side: Side) -> Network {
        self.map_arcs(|a| {
            let s = match side {
                Side::Upper => a.upper,
                Side::Lower => a.lower,
            };
            let s = if s == SymbolId::OTHER_PAIR { SymbolId::OTHER } else { s };
            vec![(s, s)]
        })
    }

    pub(crate) fn map_arcs(&self, f: impl Fn(&Arc) -> Vec<(SymbolId, SymbolId)>) -> Network {
        let mut n = Network::with_states(self.num_states());
        n.set_start(self.start());
        n.extend_sigma(self.sigma().iter().copied());
        for s in 0..self.num_states() {
            n.set_final(s, self.is_final(s));
            for a in self.arcs(s) {
                for (u, l) in f(a) {
                    n.push_arc(s, Arc::new(u, l, a.target));
                }
            }
        }
        n.finish()
    }

    pub(crate) fn require_automaton(&self, op: &'static str) -> Result<()> {
        if self.is_automaton() {
            Ok(())
        } else {
            Err(Error::NotAnAutomaton(op))
        }
    }

    /// All strings over the open alphabet not accepted by `self`.
    pub fn complement(&self) -> Result<Network> {
        self.require_automaton("complement")?;
        let d = self.determinize();
        let mut labels: Vec<SymbolId> = d.sigma().iter().copied().collect();
        labels.push(SymbolId::OTHER);
        let mut n = d.clone();
        let sink = n.add_state();
        for s in 0..n.num_states() {
            let present: Vec<SymbolId> = n.arcs(s).iter().map(|a| a.upper).collect();
            for &l in &labels {
                if !present.contains(&l) {
                    n.push_arc(s, Arc::new(l, l, sink));
                }
            }
            let f = s < d.num_states() && d.is_final(s);
            n.set_final(s, !f);
        }
        Ok(n.finish())
    }

    fn product(&self, other: &Network, op: &'static str, keep: fn(bool, bool) -> bool) -> Result<Network> {
        self.require_automaton(op)?;
        other.require_automaton(op)?;
        let (a, b) = harmonize(self, other);
        // Difference needs a complete right operand, which complement provides.
        let mut n = Network::with_states(0);
        n.extend_sigma(a.sigma().iter().copied());
        let mut index: HashMap<(StateId, StateId), StateId> = HashMap::new();
        let mut stack = vec![(a.start(), b.start())];
        index.insert((a.start(), b.start()), 0);
        n.set_final(0, keep(a.is_final(a.start()), b.is_final(b.start())));
        while let Some((p, q)) = stack.pop() {
            let src = index[&(p, q)];
            for x in a.arcs(p) {
                for y in b.arcs(q) {
                    if x.label() != y.label() {
                        continue;
                    }
                    let key = (x.target, y.target);
                    let dst = *index.entry(key).or_insert_with(|| {
                        stack.push(key);
                        let id = n.add_state();
                        n.set_final(id, keep(a.is_final(key.0), b.is_final(key.1)));
                        id
                    });
                    n.push_arc(src, Arc::new(x.upper, x.lower, dst));
                }
            }
        }
        Ok(n.finish())
    }

    pub fn intersect(&self, other: &Network) -> Result<Network> {
        self.product(other, "intersect", |x, y| x && y)
    }

    pub fn difference(&self, other: &Network) -> Result<Network> {
        other.require_automaton("difference")?;
        let (a, b) = harmonize(self, other);
        a.intersect(&b.complement()?)
    }

    /// `?* A ?*`
    pub fn contains(&self) -> Result<Network> {
        self.require_automaton("contains")?;
        let any = Network::any_star();
        Ok(any.concat(self).concat(&any))
    }

    /// `A/B`: symbols of `syms` may be interleaved anywhere.
    pub fn ignore(&self, syms: &[SymbolId]) -> Result<Network> {
        self.require_automaton("ignore")?;
        let loops: Vec<_> = syms.iter().map(|&s| (s, s)).collect();
        Ok(self.ignore_with(&loops, false))
    }

    /// Like [`Network::ignore`] but the interleaved symbols may not end the string.
    pub fn ignore_nonfinal(&self, syms: &[SymbolId]) -> Result<Network> {
        self.require_automaton("ignore")?;
        let loops: Vec<_> = syms.iter().map(|&s| (s, s)).collect();
        Ok(self.ignore_with(&loops, true))
    }

    /// Inserts loops labelled `loops` at every position. With `nonfinal`, states are
    /// split on whether the last step was an inserted loop, and only the other copy is final.
    pub(crate) fn ignore_with(&self, loops: &[(SymbolId, SymbolId)], nonfinal: bool) -> Network {
        if loops.is_empty() {
            return self.clone();
        }
        let base = self.num_states();
        let copies = if nonfinal { 2 } else { 1 };
        let mut n = Network::with_states(base * copies);
        n.set_start(self.start());
        n.extend_sigma(self.sigma().iter().copied());
        for s in 0..base {
            n.set_final(s, self.is_final(s));
            for c in 0..copies {
                let from = s + c * base;
                for a in self.arcs(s) {
                    n.push_arc(from, Arc::new(a.upper, a.lower, a.target));
                }
                let loop_target = if nonfinal { s + base } else { s };
                for &(u, l) in loops {
                    n.push_arc(from, Arc::new(u, l, loop_target));
                }
            }
        }
        n.finish()
    }

    /// `A .x. B`: every string of `A` paired with every string of `B`.
    ///
    /// Paths align symbols pairwise first; once one side has reached a final state
    /// the other continues alone against the empty string.
    pub fn crossproduct(&self, other: &Network) -> Result<Network> {
        self.require_automaton("crossproduct")?;
        other.require_automaton("crossproduct")?;
        let (a, b) = harmonize(self, other);
        let mut n = Network::with_states(0);
        n.extend_sigma(a.sigma().iter().copied());
        // phase 0: both advance; 1: only upper (lower fixed at a final state);
        // 2: only lower.
        let mut index: HashMap<(StateId, StateId, u8), StateId> = HashMap::new();
        let start = (a.start(), b.start(), 0u8);
        index.insert(start, 0);
        let mut stack = vec![start];
        let is_final = |k: (StateId, StateId, u8)| a.is_final(k.0) && b.is_final(k.1);
        n.set_final(0, is_final(start));
        while let Some(key @ (p, q, phase)) = stack.pop() {
            let src = index[&key];
            let mut moves: Vec<(SymbolId, SymbolId, (StateId, StateId, u8))> = Vec::new();
            if phase == 0 {
                for x in a.arcs(p) {
                    for y in b.arcs(q) {
                        let next = (x.target, y.target, 0);
                        if x.upper == SymbolId::OTHER && y.upper == SymbolId::OTHER {
                            moves.push((SymbolId::OTHER, SymbolId::OTHER, next));
                            moves.push((SymbolId::OTHER_PAIR, SymbolId::OTHER_PAIR, next));
                        } else {
                            moves.push((x.upper, y.upper, next));
                        }
                    }
                }
            }
            if (phase == 0 || phase == 1) && b.is_final(q) {
                for x in a.arcs(p) {
                    moves.push((x.upper, SymbolId::EPSILON, (x.target, q, 1)));
                }
            }
            if (phase == 0 || phase == 2) && a.is_final(p) {
                for y in b.arcs(q) {
                    moves.push((SymbolId::EPSILON, y.upper, (p, y.target, 2)));
                }
            }
            for (u, l, next) in moves {
                let dst = *index.entry(next).or_insert_with(|| {
                    stack.push(next);
                    let id = n.add_state();
                    n.set_final(id, is_final(next));
                    id
                });
                n.push_arc(src, Arc::new(u, l, dst));
            }
        }
        Ok(n.finish())
    }

    /// Replaces sigma by `sigma - remove`; used to hide auxiliary marks once they
    /// can no longer occur on any arc.
    pub(crate) fn without_sigma(&self, remove: &[SymbolId]) -> Network {
        let mut n = self.clone();
        let sigma = self.sigma().iter().copied().filter(|s| !remove.contains(s)).collect();
        n.set_sigma(sigma);
        n
    }
}
