//! Finite-state transducers over symbol pairs.
//!
//! A [`Network`] is immutable from the outside: every operation returns a
//! fresh network. Networks produced by the public operations are always
//! epsilon-free (no `0:0` arcs), trimmed (every state lies on some accepting
//! path, apart from a lone start state) and keep their arcs sorted by
//! `(upper, lower, target)`.

mod compose;
mod determinize;
mod dot;
mod ops;
pub(crate) mod text;

use std::collections::{BTreeSet, VecDeque};

use crate::alphabet::SymbolId;

pub use dot::to_dot;
pub use text::{from_text, to_text};

pub type StateId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    pub upper: SymbolId,
    pub lower: SymbolId,
    pub target: StateId,
}

impl Arc {
    pub fn new(upper: SymbolId, lower: SymbolId, target: StateId) -> Self {
        Arc { upper, lower, target }
    }

    pub fn label(&self) -> (SymbolId, SymbolId) {
        (self.upper, self.lower)
    }

    fn is_epsilon(&self) -> bool {
        self.upper == SymbolId::EPSILON && self.lower == SymbolId::EPSILON
    }

    /// Identity arcs, including `0:0` and `?:?` identity, but not the unknown non-identity pair.
    pub fn is_identity(&self) -> bool {
        self.upper == self.lower && self.upper != SymbolId::OTHER_PAIR
    }
}

/// Which side of a transducer to keep when projecting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Upper,
    Lower,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Network {
    arcs: Vec<Vec<Arc>>,
    finals: Vec<bool>,
    start: StateId,
    sigma: BTreeSet<SymbolId>,
    deterministic: bool,
    minimized: bool,
}

impl Network {
    /// Network with a single non-final state: the empty relation.
    pub fn empty() -> Self {
        Network {
            arcs: vec![Vec::new()],
            finals: vec![false],
            start: 0,
            sigma: BTreeSet::new(),
            deterministic: true,
            minimized: true,
        }
    }

    /// Accepts exactly the empty string.
    pub fn epsilon() -> Self {
        let mut n = Self::empty();
        n.finals[0] = true;
        n
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn num_states(&self) -> usize {
        self.arcs.len()
    }

    pub fn num_arcs(&self) -> usize {
        self.arcs.iter().map(Vec::len).sum()
    }

    pub fn arcs(&self, state: StateId) -> &[Arc] {
        &self.arcs[state]
    }

    pub fn is_final(&self, state: StateId) -> bool {
        self.finals[state]
    }

    pub fn sigma(&self) -> &BTreeSet<SymbolId> {
        &self.sigma
    }

    pub fn is_deterministic(&self) -> bool {
        self.deterministic
    }

    pub fn is_minimized(&self) -> bool {
        self.minimized
    }

    /// True when every arc is an identity pair, i.e. the network denotes a language.
    pub fn is_automaton(&self) -> bool {
        self.arcs.iter().flatten().all(Arc::is_identity)
    }

    /// True when no state is final.
    pub fn is_empty_relation(&self) -> bool {
        !self.finals.iter().any(|&f| f)
    }

    pub(crate) fn with_states(n: usize) -> Self {
        Network {
            arcs: vec![Vec::new(); n.max(1)],
            finals: vec![false; n.max(1)],
            start: 0,
            sigma: BTreeSet::new(),
            deterministic: false,
            minimized: false,
        }
    }

    pub(crate) fn add_state(&mut self) -> StateId {
        self.arcs.push(Vec::new());
        self.finals.push(false);
        self.arcs.len() - 1
    }

    pub(crate) fn set_start(&mut self, s: StateId) {
        self.start = s;
    }

    pub(crate) fn set_final(&mut self, s: StateId, f: bool) {
        self.finals[s] = f;
    }

    /// Adds an arc and records its non-special symbols in sigma.
    pub(crate) fn push_arc(&mut self, from: StateId, arc: Arc) {
        for s in [arc.upper, arc.lower] {
            if !s.is_special() {
                self.sigma.insert(s);
            }
        }
        self.arcs[from].push(arc);
        self.deterministic = false;
        self.minimized = false;
    }

    pub(crate) fn extend_sigma(&mut self, syms: impl IntoIterator<Item = SymbolId>) {
        self.sigma.extend(syms.into_iter().filter(|s| !s.is_special()));
    }

    pub(crate) fn set_sigma(&mut self, sigma: BTreeSet<SymbolId>) {
        self.sigma = sigma;
    }

    pub(crate) fn mark_deterministic(&mut self, minimized: bool) {
        self.deterministic = true;
        self.minimized = minimized;
    }

    pub(crate) fn canonicalize_arcs(&mut self) {
        for list in &mut self.arcs {
            list.sort_unstable();
            list.dedup();
        }
    }

    /// Builds a two-state network for one symbol pair.
    pub fn atom(upper: SymbolId, lower: SymbolId) -> Self {
        if upper == SymbolId::EPSILON && lower == SymbolId::EPSILON {
            return Self::epsilon();
        }
        let mut n = Self::with_states(2);
        n.set_final(1, true);
        n.push_arc(0, Arc::new(upper, lower, 1));
        n.canonicalize_arcs();
        n
    }

    /// Identity on a single symbol.
    pub fn symbol(s: SymbolId) -> Self {
        Self::atom(s, s)
    }

    /// Identity on any single symbol: `?`.
    pub fn any() -> Self {
        Self::atom(SymbolId::OTHER, SymbolId::OTHER)
    }

    /// Identity on the concatenation of `syms`.
    pub fn word(syms: &[SymbolId]) -> Self {
        let mut n = Self::with_states(syms.len() + 1);
        for (i, &s) in syms.iter().enumerate() {
            n.push_arc(i, Arc::new(s, s, i + 1));
        }
        n.set_final(syms.len(), true);
        n.finish()
    }

    /// Identity on any one of `syms`.
    pub fn symbol_set(syms: &[SymbolId]) -> Self {
        let mut n = Self::with_states(2);
        n.set_final(1, true);
        for &s in syms {
            n.push_arc(0, Arc::new(s, s, 1));
        }
        n.finish()
    }

    /// Assembles a network from raw parts without any normalization.
    #[cfg(test)]
    pub(crate) fn raw(
        states: usize,
        start: StateId,
        arcs: &[(StateId, StateId, SymbolId, SymbolId)],
        finals: &[StateId],
        sigma: impl IntoIterator<Item = SymbolId>,
    ) -> Self {
        let mut n = Self::with_states(states);
        n.start = start;
        for &(from, to, u, l) in arcs {
            n.push_arc(from, Arc::new(u, l, to));
        }
        for &f in finals {
            n.finals[f] = true;
        }
        n.extend_sigma(sigma);
        n
    }

    /// Removes `0:0` arcs, trims useless states and sorts arcs.
    pub(crate) fn finish(mut self) -> Self {
        if self.arcs.iter().flatten().any(Arc::is_epsilon) {
            self = self.remove_epsilons();
        }
        self.trim()
    }

    fn epsilon_closure(&self, s: StateId) -> Vec<StateId> {
        let mut seen = vec![false; self.num_states()];
        let mut stack = vec![s];
        let mut out = Vec::new();
        seen[s] = true;
        while let Some(q) = stack.pop() {
            out.push(q);
            for a in &self.arcs[q] {
                if a.is_epsilon() && !seen[a.target] {
                    seen[a.target] = true;
                    stack.push(a.target);
                }
            }
        }
        out
    }

    fn remove_epsilons(&self) -> Self {
        let mut out = self.clone();
        for s in 0..self.num_states() {
            let closure = self.epsilon_closure(s);
            let mut arcs = Vec::new();
            let mut fin = false;
            for &q in &closure {
                fin |= self.finals[q];
                arcs.extend(self.arcs[q].iter().filter(|a| !a.is_epsilon()).copied());
            }
            out.arcs[s] = arcs;
            out.finals[s] = fin;
        }
        out.deterministic = false;
        out.minimized = false;
        out
    }

    /// Drops states that are unreachable or cannot reach a final state and renumbers
    /// the rest in breadth-first order from the start.
    pub(crate) fn trim(&self) -> Self {
        let n = self.num_states();
        let mut reverse: Vec<Vec<StateId>> = vec![Vec::new(); n];
        for (s, list) in self.arcs.iter().enumerate() {
            for a in list {
                reverse[a.target].push(s);
            }
        }
        let mut coreach = vec![false; n];
        let mut stack: Vec<StateId> = (0..n).filter(|&s| self.finals[s]).collect();
        for &s in &stack {
            coreach[s] = true;
        }
        while let Some(q) = stack.pop() {
            for &p in &reverse[q] {
                if !coreach[p] {
                    coreach[p] = true;
                    stack.push(p);
                }
            }
        }
        let mut out = Network {
            arcs: vec![Vec::new()],
            finals: vec![false],
            start: 0,
            sigma: self.sigma.clone(),
            deterministic: self.deterministic,
            minimized: self.minimized,
        };
        if !coreach[self.start] {
            out.deterministic = true;
            out.minimized = true;
            return out;
        }
        let mut map = vec![usize::MAX; n];
        map[self.start] = 0;
        out.finals[0] = self.finals[self.start];
        let mut queue = VecDeque::from([self.start]);
        while let Some(q) = queue.pop_front() {
            let mut list: Vec<Arc> = self.arcs[q].iter().filter(|a| coreach[a.target]).copied().collect();
            list.sort_unstable();
            list.dedup();
            let mut new_list = Vec::with_capacity(list.len());
            for a in list {
                if map[a.target] == usize::MAX {
                    map[a.target] = out.arcs.len();
                    out.arcs.push(Vec::new());
                    out.finals.push(self.finals[a.target]);
                    queue.push_back(a.target);
                }
                new_list.push(Arc::new(a.upper, a.lower, map[a.target]));
            }
            new_list.sort_unstable();
            out.arcs[map[q]] = new_list;
        }
        out
    }

    /// Canonical isomorphism test: both networks renumbered by a breadth-first walk
    /// over sorted arcs. Meaningful for deterministic networks.
    pub fn is_isomorphic(&self, other: &Network) -> bool {
        fn canonical(n: &Network) -> Network {
            let mut c = n.trim();
            c.deterministic = false;
            c.minimized = false;
            c
        }
        self.sigma == other.sigma && canonical(self) == canonical(other)
    }
}

#[cfg(test)]
mod tests;
