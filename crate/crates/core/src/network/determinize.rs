//! Subset construction and partition-refinement minimization over pair labels.

use std::collections::{BTreeMap, HashMap};

use super::{Arc, Network, StateId};
use crate::alphabet::SymbolId;

type Label = (SymbolId, SymbolId);

impl Network {
    /// Equivalent network with at most one arc per pair label at every state.
    ///
    /// This is determinization of the pair automaton, not input-side
    /// sequentialization: `a:x` and `a:y` leaving one state stay distinct.
    pub fn determinize(&self) -> Network {
        if self.is_deterministic() {
            return self.clone();
        }
        // networks are epsilon-free, so subsets need no closure
        let mut index: HashMap<Vec<StateId>, StateId> = HashMap::new();
        let mut subsets: Vec<Vec<StateId>> = vec![vec![self.start()]];
        index.insert(subsets[0].clone(), 0);
        let mut n = Network::with_states(1);
        n.extend_sigma(self.sigma().iter().copied());
        n.set_final(0, self.is_final(self.start()));
        let mut i = 0;
        while i < subsets.len() {
            let mut moves: BTreeMap<Label, Vec<StateId>> = BTreeMap::new();
            for &q in &subsets[i] {
                for a in self.arcs(q) {
                    moves.entry(a.label()).or_default().push(a.target);
                }
            }
            for (label, mut targets) in moves {
                targets.sort_unstable();
                targets.dedup();
                let dst = match index.get(&targets) {
                    Some(&d) => d,
                    None => {
                        let d = n.add_state();
                        n.set_final(d, targets.iter().any(|&t| self.is_final(t)));
                        index.insert(targets.clone(), d);
                        subsets.push(targets);
                        d
                    }
                };
                n.push_arc(i, Arc::new(label.0, label.1, dst));
            }
            i += 1;
        }
        let mut n = n.trim();
        n.mark_deterministic(false);
        n
    }

    /// Equivalent deterministic network with the fewest states.
    pub fn minimize(&self) -> Network {
        if self.is_minimized() {
            return self.clone();
        }
        let d = self.determinize();
        let count = d.num_states();
        let mut class: Vec<usize> = (0..count).map(|s| usize::from(d.is_final(s))).collect();
        let mut num_classes = 0;
        loop {
            let mut sigs: HashMap<(usize, Vec<(Label, usize)>), usize> = HashMap::new();
            let mut next = vec![0; count];
            for s in 0..count {
                let sig: Vec<(Label, usize)> = d.arcs(s).iter().map(|a| (a.label(), class[a.target])).collect();
                let len = sigs.len();
                next[s] = *sigs.entry((class[s], sig)).or_insert(len);
            }
            let n_new = sigs.len();
            class = next;
            if n_new == num_classes {
                break;
            }
            num_classes = n_new;
        }
        let mut n = Network::with_states(num_classes);
        n.extend_sigma(d.sigma().iter().copied());
        n.set_start(class[d.start()]);
        let mut done = vec![false; num_classes];
        for s in 0..count {
            let c = class[s];
            n.set_final(c, d.is_final(s));
            if done[c] {
                continue;
            }
            done[c] = true;
            for a in d.arcs(s) {
                n.push_arc(c, Arc::new(a.upper, a.lower, class[a.target]));
            }
        }
        let mut n = n.trim();
        n.mark_deterministic(true);
        n
    }
}
