//! Composition with an epsilon-sequencing filter.

use std::collections::HashMap;

use super::{Arc, Network, StateId};
use crate::alphabet::{harmonize, SymbolId};

/// How an arc relates unknown symbols on its two sides.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Link {
    Identity,
    Different,
    Unlinked,
}

fn link(a: &Arc) -> Link {
    match (a.upper, a.lower) {
        (SymbolId::OTHER, SymbolId::OTHER) => Link::Identity,
        (SymbolId::OTHER_PAIR, SymbolId::OTHER_PAIR) => Link::Different,
        _ => Link::Unlinked,
    }
}

fn matches(lower: SymbolId, upper: SymbolId) -> bool {
    if lower.is_unknown() {
        upper.is_unknown()
    } else {
        lower == upper
    }
}

/// Labels for the composite of two arcs that agree on the middle symbol.
fn joined(x: &Arc, y: &Arc) -> Vec<(SymbolId, SymbolId)> {
    let upper = x.upper;
    let lower = y.lower;
    if upper.is_unknown() && lower.is_unknown() {
        return match (link(x), link(y)) {
            (Link::Identity, Link::Identity) => vec![(SymbolId::OTHER, SymbolId::OTHER)],
            (Link::Identity, Link::Different) | (Link::Different, Link::Identity) => {
                vec![(SymbolId::OTHER_PAIR, SymbolId::OTHER_PAIR)]
            }
            _ => vec![
                (SymbolId::OTHER, SymbolId::OTHER),
                (SymbolId::OTHER_PAIR, SymbolId::OTHER_PAIR),
            ],
        };
    }
    let norm = |s: SymbolId| if s.is_unknown() { SymbolId::OTHER } else { s };
    vec![(norm(upper), norm(lower))]
}

impl Network {
    /// `A .o. B`: pairs `(u, w)` such that `(u, v)` is in `A` and `(v, w)` in `B`.
    ///
    /// Where the upper network emits nothing and the lower network reads nothing,
    /// the two moves commute; the filter state admits only the order "upper
    /// network first", so each composite path is produced once.
    pub fn compose(&self, other: &Network) -> Network {
        let (a, b) = harmonize(self, other);
        let mut n = Network::with_states(0);
        n.extend_sigma(a.sigma().iter().copied());
        type Key = (StateId, StateId, bool);
        let mut index: HashMap<Key, StateId> = HashMap::new();
        let start: Key = (a.start(), b.start(), false);
        index.insert(start, 0);
        n.set_final(0, a.is_final(start.0) && b.is_final(start.1));
        let mut stack = vec![start];
        while let Some(key @ (p, q, lower_moved)) = stack.pop() {
            let src = index[&key];
            let mut moves: Vec<(SymbolId, SymbolId, Key)> = Vec::new();
            for x in a.arcs(p) {
                if x.lower == SymbolId::EPSILON {
                    if !lower_moved {
                        moves.push((x.upper, SymbolId::EPSILON, (x.target, q, false)));
                    }
                    continue;
                }
                for y in b.arcs(q) {
                    if y.upper != SymbolId::EPSILON && matches(x.lower, y.upper) {
                        for (u, l) in joined(x, y) {
                            moves.push((u, l, (x.target, y.target, false)));
                        }
                    }
                }
            }
            for y in b.arcs(q) {
                if y.upper == SymbolId::EPSILON {
                    moves.push((SymbolId::EPSILON, y.lower, (p, y.target, true)));
                }
            }
            for (u, l, next) in moves {
                let dst = *index.entry(next).or_insert_with(|| {
                    stack.push(next);
                    let id = n.add_state();
                    n.set_final(id, a.is_final(next.0) && b.is_final(next.1));
                    id
                });
                let u = if u == SymbolId::OTHER_PAIR && l != SymbolId::OTHER_PAIR { SymbolId::OTHER } else { u };
                n.push_arc(src, Arc::new(u, l, dst));
            }
        }
        n.finish()
    }
}
