//! Symbol interning and the reserved special symbols.
//!
//! Every network built by this crate labels its arcs with [`SymbolId`]s drawn
//! from one shared [`SymbolTable`]. The first few ids are reserved and can
//! never be produced from user text: their spellings all have the form
//! `@...@`, which [`SymbolTable::intern`] refuses.
//!
//! Unknown symbols are written with two encodings. The pair
//! `(OTHER, OTHER)` is the identity on any symbol outside a network's
//! declared alphabet, while `(OTHER_PAIR, OTHER_PAIR)` maps one unknown
//! symbol to a *different* unknown symbol. Mixed pairs such as `(OTHER, a)`
//! always use `OTHER` on the unknown side.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::network::{Arc, Network};

/// Handle to an interned symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymbolId(pub u32);

impl SymbolId {
    pub const EPSILON: SymbolId = SymbolId(0);
    pub const OTHER: SymbolId = SymbolId(1);
    pub const BOUNDARY: SymbolId = SymbolId(2);
    pub const CARET: SymbolId = SymbolId(3);
    pub const LBRACKET: SymbolId = SymbolId(4);
    pub const RBRACKET: SymbolId = SymbolId(5);
    pub const OTHER_PAIR: SymbolId = SymbolId(6);

    /// Number of reserved ids; user symbols start here.
    pub const RESERVED: u32 = 7;

    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// True for ids that stand for "some symbol not in sigma" or for no symbol at all.
    pub fn is_special(self) -> bool {
        matches!(self, Self::EPSILON | Self::OTHER | Self::OTHER_PAIR)
    }

    /// One of the three marks used inside directed replacement.
    pub fn is_auxiliary(self) -> bool {
        matches!(self, Self::CARET | Self::LBRACKET | Self::RBRACKET)
    }

    pub fn is_unknown(self) -> bool {
        matches!(self, Self::OTHER | Self::OTHER_PAIR)
    }
}

const RESERVED_SPELLINGS: [&str; SymbolId::RESERVED as usize] =
    ["@0@", "@?@", "@#@", "@^@", "@<@", "@>@", "@??@"];

/// Append-only bidirectional map between symbol spellings and ids.
#[derive(Clone, Debug)]
pub struct SymbolTable {
    names: Vec<String>,
    ids: HashMap<String, SymbolId>,
}

impl Default for SymbolTable {
    fn default() -> Self {
        Self::new()
    }
}

impl SymbolTable {
    pub fn new() -> Self {
        let mut ids = HashMap::new();
        for (i, name) in RESERVED_SPELLINGS.iter().enumerate() {
            ids.insert(name.to_string(), SymbolId(i as u32));
        }
        SymbolTable {
            names: RESERVED_SPELLINGS.iter().map(|s| s.to_string()).collect(),
            ids,
        }
    }

    /// Interns `name`, returning the existing id if it was seen before.
    pub fn intern(&mut self, name: &str) -> Result<SymbolId> {
        if name.is_empty() {
            return Err(Error::EmptyName);
        }
        if is_reserved_spelling(name) {
            return Err(Error::ReservedName(name.to_string()));
        }
        if let Some(&id) = self.ids.get(name) {
            return Ok(id);
        }
        let id = SymbolId(self.names.len() as u32);
        self.names.push(name.to_string());
        self.ids.insert(name.to_string(), id);
        Ok(id)
    }

    /// Interns a name that is guaranteed not to be in the table yet, built from `hint`.
    pub fn fresh(&mut self, hint: &str) -> SymbolId {
        let mut n = 0usize;
        loop {
            let candidate = if n == 0 { hint.to_string() } else { format!("{hint}{n}") };
            if !candidate.is_empty()
                && !is_reserved_spelling(&candidate)
                && !self.ids.contains_key(&candidate)
            {
                return self.intern(&candidate).expect("fresh name is valid");
            }
            n += 1;
        }
    }

    pub fn lookup(&self, name: &str) -> Option<SymbolId> {
        self.ids.get(name).copied().filter(|id| id.0 >= SymbolId::RESERVED)
    }

    /// Looks up any spelling, including the reserved `@...@` forms.
    pub(crate) fn lookup_any(&self, name: &str) -> Option<SymbolId> {
        self.ids.get(name).copied()
    }

    pub fn name(&self, id: SymbolId) -> &str {
        &self.names[id.index()]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.len() == SymbolId::RESERVED as usize
    }

    /// User symbols in id order.
    pub fn user_symbols(&self) -> impl Iterator<Item = (SymbolId, &str)> {
        self.names
            .iter()
            .enumerate()
            .skip(SymbolId::RESERVED as usize)
            .map(|(i, n)| (SymbolId(i as u32), n.as_str()))
    }

    pub fn display<'a>(&'a self, symbols: &'a [SymbolId]) -> DisplaySymbols<'a> {
        DisplaySymbols { table: self, symbols }
    }
}

fn is_reserved_spelling(name: &str) -> bool {
    RESERVED_SPELLINGS.contains(&name)
}

/// Renders a symbol sequence by concatenating spellings.
pub struct DisplaySymbols<'a> {
    table: &'a SymbolTable,
    symbols: &'a [SymbolId],
}

impl fmt::Display for DisplaySymbols<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in self.symbols {
            if s != SymbolId::EPSILON {
                f.write_str(self.table.name(s))?;
            }
        }
        Ok(())
    }
}

/// Makes two networks agree on their declared alphabet.
///
/// Arcs on `OTHER` in one network are supplemented with explicit arcs for the
/// symbols that only the other network declares. The relations denoted over
/// the open alphabet do not change.
pub fn harmonize(a: &Network, b: &Network) -> (Network, Network) {
    if a.sigma() == b.sigma() {
        return (a.clone(), b.clone());
    }
    let extra_a: BTreeSet<SymbolId> = b.sigma().difference(a.sigma()).copied().collect();
    let extra_b: BTreeSet<SymbolId> = a.sigma().difference(b.sigma()).copied().collect();
    (expand_other(a, &extra_a), expand_other(b, &extra_b))
}

/// Extends `net`'s sigma by `extra`, spelling out what `OTHER` used to cover.
pub(crate) fn expand_other(net: &Network, extra: &BTreeSet<SymbolId>) -> Network {
    let extra: Vec<SymbolId> = extra.iter().copied().filter(|s| !net.sigma().contains(s)).collect();
    let mut out = net.clone();
    if extra.is_empty() {
        return out;
    }
    for state in 0..out.num_states() {
        let mut added = Vec::new();
        for arc in net.arcs(state) {
            match (arc.upper, arc.lower) {
                (SymbolId::OTHER, SymbolId::OTHER) => {
                    added.extend(extra.iter().map(|&s| Arc::new(s, s, arc.target)));
                }
                (SymbolId::OTHER_PAIR, SymbolId::OTHER_PAIR) => {
                    for &s in &extra {
                        added.push(Arc::new(s, SymbolId::OTHER, arc.target));
                        added.push(Arc::new(SymbolId::OTHER, s, arc.target));
                        for &t in &extra {
                            if s != t {
                                added.push(Arc::new(s, t, arc.target));
                            }
                        }
                    }
                }
                (SymbolId::OTHER, lower) => {
                    added.extend(extra.iter().map(|&s| Arc::new(s, lower, arc.target)));
                }
                (upper, SymbolId::OTHER) => {
                    added.extend(extra.iter().map(|&s| Arc::new(upper, s, arc.target)));
                }
                _ => {}
            }
        }
        for arc in added {
            out.push_arc(state, arc);
        }
    }
    out.extend_sigma(extra.iter().copied());
    out.canonicalize_arcs();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_is_idempotent() {
        let mut t = SymbolTable::new();
        let a = t.intern("a").unwrap();
        assert_eq!(t.intern("a").unwrap(), a);
        assert_eq!(t.name(a), "a");
        assert!(a.0 >= SymbolId::RESERVED);
    }

    #[test]
    fn multicharacter_symbols_get_their_own_id() {
        let mut t = SymbolTable::new();
        let letters: Vec<_> = "END_OF_TOKEN".chars().map(|c| t.intern(&c.to_string()).unwrap()).collect();
        let eot = t.intern("END_OF_TOKEN").unwrap();
        assert!(!letters.contains(&eot));
        let tag = t.intern("<A>").unwrap();
        assert_ne!(tag, eot);
        assert_eq!(t.lookup("<A>"), Some(tag));
    }

    #[test]
    fn reserved_and_empty_names_are_refused() {
        let mut t = SymbolTable::new();
        assert_eq!(t.intern(""), Err(Error::EmptyName));
        for s in RESERVED_SPELLINGS {
            assert_eq!(t.intern(s), Err(Error::ReservedName(s.to_string())));
        }
        assert_eq!(t.lookup("@0@"), None);
    }

    #[test]
    fn fresh_names_never_collide() {
        let mut t = SymbolTable::new();
        let p = t.intern("probe").unwrap();
        let q = t.fresh("probe");
        assert_ne!(p, q);
        assert_eq!(t.name(q), "probe1");
    }
}
