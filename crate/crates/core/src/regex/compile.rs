use crate::alphabet::{SymbolId, SymbolTable};
use crate::error::{Error, Result};
use crate::network::Network;
use crate::replace::{self, Action, ContextSpec, ReplaceOptions, ReplaceSpec};

use super::ast::{Arrow, Regex, Rhs, Rule};
use super::Definitions;

pub(super) struct Compiler<'a> {
    pub table: &'a mut SymbolTable,
    pub defs: &'a Definitions,
    pub opts: ReplaceOptions,
}

/// The symbols of `net` if it denotes a set of single identity symbols.
fn symbol_set(net: &Network) -> Option<Vec<SymbolId>> {
    let m = net.minimize();
    let start = m.start();
    if m.is_final(start) {
        return None;
    }
    let mut syms = Vec::new();
    for a in m.arcs(start) {
        let end = a.target;
        if !a.is_identity() || a.upper.is_unknown() || !m.is_final(end) || !m.arcs(end).is_empty() {
            return None;
        }
        syms.push(a.upper);
    }
    Some(syms)
}

impl Compiler<'_> {
    fn optional(&mut self, r: &Option<Box<Regex>>) -> Result<Network> {
        match r {
            Some(r) => self.compile(r),
            None => Ok(Network::epsilon()),
        }
    }

    pub fn compile(&mut self, r: &Regex) -> Result<Network> {
        Ok(match r {
            Regex::Symbol(name) => Network::symbol(self.table.intern(name)?),
            Regex::Pair(u, l) => self.compile(u)?.crossproduct(&self.compile(l)?)?,
            Regex::Epsilon | Regex::EmptyString => Network::epsilon(),
            Regex::Any => Network::any(),
            Regex::Boundary => Network::symbol(SymbolId::BOUNDARY),
            Regex::NameRef(n) => self.defs.get(n).cloned().ok_or_else(|| Error::UnknownName(n.clone()))?,
            Regex::Union(a, b) => self.compile(a)?.union(&self.compile(b)?),
            Regex::Concat(a, b) => self.compile(a)?.concat(&self.compile(b)?),
            Regex::Intersect(a, b) => self.compile(a)?.intersect(&self.compile(b)?)?,
            Regex::Minus(a, b) => self.compile(a)?.difference(&self.compile(b)?)?,
            Regex::Ignore { body, ignored, nonfinal } => {
                let body = self.compile(body)?;
                let syms = symbol_set(&self.compile(ignored)?).ok_or(Error::NotASymbolSet("ignore"))?;
                if *nonfinal {
                    body.ignore_nonfinal(&syms)?
                } else {
                    body.ignore(&syms)?
                }
            }
            Regex::Contains(a) => self.compile(a)?.contains()?,
            Regex::Complement(a) => self.compile(a)?.complement()?,
            Regex::Star(a) => self.compile(a)?.star(),
            Regex::Plus(a) => self.compile(a)?.plus(),
            Regex::Optional(a) => self.compile(a)?.optional(),
            Regex::Crossproduct(a, b) => self.compile(a)?.crossproduct(&self.compile(b)?)?,
            Regex::Compose(a, b) => self.compile(a)?.compose(&self.compile(b)?),
            Regex::Replace { rules, context } => {
                if let [Rule { upper, arrow: Arrow::Simple, rhs: Rhs::Lower(lower) }] = rules.as_slice() {
                    let upper = self.compile(upper)?.minimize();
                    let lower = self.compile(lower)?.minimize();
                    return match context {
                        None => replace::replace_simple(&upper, &lower),
                        Some(c) => {
                            let ctx = ContextSpec { left: self.optional(&c.left)?, right: self.optional(&c.right)? };
                            replace::replace_conditional(&upper, &lower, &ctx)
                        }
                    };
                }
                let specs = rules.iter().map(|r| self.spec(r)).collect::<Result<Vec<_>>>()?;
                if specs.len() == 1 {
                    replace::replace_directed_with(&specs[0], self.opts)?
                } else {
                    replace::replace_parallel_directed_with(&specs, self.opts)?
                }
            }
        })
    }

    fn spec(&mut self, rule: &Rule) -> Result<ReplaceSpec> {
        let Arrow::Directed(direction, length) = rule.arrow else {
            return Err(Error::MixedModes);
        };
        let upper = self.compile(&rule.upper)?.minimize();
        let action = match &rule.rhs {
            Rhs::Lower(l) => Action::Lower(self.compile(l)?.minimize()),
            Rhs::Markup { prefix, suffix } => Action::Markup {
                prefix: self.optional(prefix)?.minimize(),
                suffix: self.optional(suffix)?.minimize(),
            },
        };
        Ok(ReplaceSpec::new(upper, action, direction, length))
    }
}
