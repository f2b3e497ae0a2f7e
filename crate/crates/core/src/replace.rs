//! Replacement transducers.
//!
//! Directed replacement (`@->`, `@>`, `->@`, `>@`) is built as a cascade of
//! compositions over three internal marks. Writing `^` for [`SymbolId::CARET`]
//! and `<`, `>` for the brackets, the left-to-right pipeline is
//!
//! ```text
//! aux-free input .o. initial match .o. left-to-right .o. length .o. rewrite
//! ```
//!
//! where initial match puts one `^` before every position at which an UPPER
//! string begins, left-to-right turns chosen carets into `<` and closes each
//! region with `>`, the length constraint keeps only longest (or shortest)
//! regions, and the rewrite stage substitutes the bracketed regions.
//! Right-to-left operators reverse the inputs, build the left-to-right
//! transducer and reverse the result.

use crate::alphabet::SymbolId;
use crate::error::{Error, Result};
use crate::network::Network;

const AUX: [SymbolId; 3] = [SymbolId::CARET, SymbolId::LBRACKET, SymbolId::RBRACKET];
const BRACKETS: [SymbolId; 2] = [SymbolId::LBRACKET, SymbolId::RBRACKET];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    LeftToRight,
    RightToLeft,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MatchLength {
    Longest,
    Shortest,
}

impl Direction {
    pub fn reversed(self) -> Self {
        match self {
            Direction::LeftToRight => Direction::RightToLeft,
            Direction::RightToLeft => Direction::LeftToRight,
        }
    }
}

/// What happens to a selected UPPER instance.
#[derive(Clone, Debug)]
pub enum Action {
    /// Replace it by any string of the language.
    Lower(Network),
    /// Keep it and surround it with a prefix and a suffix string.
    Markup { prefix: Network, suffix: Network },
}

/// One directed rule.
#[derive(Clone, Debug)]
pub struct ReplaceSpec {
    pub upper: Network,
    pub action: Action,
    pub direction: Direction,
    pub length: MatchLength,
}

impl ReplaceSpec {
    pub fn new(upper: Network, action: Action, direction: Direction, length: MatchLength) -> Self {
        ReplaceSpec { upper, action, direction, length }
    }

    /// `upper @-> lower`
    pub fn longest_l2r(upper: Network, lower: Network) -> Self {
        Self::new(upper, Action::Lower(lower), Direction::LeftToRight, MatchLength::Longest)
    }

    fn validate(&self) -> Result<()> {
        self.upper.require_automaton("directed replace")?;
        if accepts_epsilon(&self.upper) {
            return Err(Error::EpsilonInUpper);
        }
        match &self.action {
            Action::Lower(l) => l.require_automaton("directed replace"),
            Action::Markup { prefix, suffix } => {
                prefix.require_automaton("markup")?;
                suffix.require_automaton("markup")
            }
        }
    }

    /// The mirror-image rule: matching a reversed string with it and reversing the
    /// output gives the same result as the original rule in the opposite direction.
    fn mirrored(&self) -> Self {
        let action = match &self.action {
            Action::Lower(l) => Action::Lower(l.reverse()),
            Action::Markup { prefix, suffix } => Action::Markup { prefix: suffix.reverse(), suffix: prefix.reverse() },
        };
        ReplaceSpec {
            upper: self.upper.reverse(),
            action,
            direction: self.direction.reversed(),
            length: self.length,
        }
    }
}

/// Contexts of a `||` conditional replacement, both matched on the input side.
/// A [`SymbolId::BOUNDARY`] symbol at the outer edge anchors the context to the
/// start (left) or end (right) of the string.
#[derive(Clone, Debug)]
pub struct ContextSpec {
    pub left: Network,
    pub right: Network,
}

/// Switches for deliberately broken constructions, used to check that the
/// self-test notices a missing constraint.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReplaceOptions {
    pub drop_length_constraint: bool,
}

fn accepts_epsilon(net: &Network) -> bool {
    net.is_final(net.start())
}

fn check_upper(upper: &Network, op: &'static str) -> Result<()> {
    upper.require_automaton(op)?;
    if accepts_epsilon(upper) {
        return Err(Error::EpsilonInUpper);
    }
    Ok(())
}

fn sym(s: SymbolId) -> Network {
    Network::symbol(s)
}

fn pair(u: SymbolId, l: SymbolId) -> Network {
    Network::atom(u, l)
}

/// Identity on one symbol that is not one of `excluded`.
fn any_but(excluded: &[SymbolId]) -> Network {
    Network::any().difference(&Network::symbol_set(excluded)).expect("automata")
}

fn non_aux() -> Network {
    any_but(&AUX)
}

fn cat(parts: &[&Network]) -> Network {
    Network::concat_all(parts.iter().copied())
}

fn not(n: &Network) -> Network {
    n.complement().expect("automaton")
}

fn and(a: &Network, b: &Network) -> Network {
    a.intersect(b).expect("automata")
}

/// Identity on strings without auxiliary marks.
pub fn aux_free_filter() -> Network {
    non_aux().star()
}

/// Inserts one caret before every position where an UPPER string begins.
pub fn insert_single_caret(upper: &Network) -> Result<Network> {
    check_upper(upper, "initial match")?;
    let any_star = Network::any_star();
    let caret = sym(SymbolId::CARET);
    let no_caret = any_but(&[SymbolId::CARET]);
    let insertions = cat(&[&pair(SymbolId::EPSILON, SymbolId::CARET).optional(), &non_aux()]).star();
    // Y: the rest of the string starts with an UPPER string, carets ignored.
    let starts_match = upper.ignore(&[SymbolId::CARET])?.concat(&any_star);
    let caret_without_match = cat(&[&any_star, &caret, &not(&starts_match)]);
    let unmarked_position = Network::epsilon().union(&any_star.concat(&no_caret));
    let missing_caret = unmarked_position.concat(&and(&no_caret.concat(&any_star), &starts_match));
    let valid = and(&not(&caret_without_match), &not(&missing_caret));
    Ok(insertions.compose(&valid).minimize())
}

/// Encloses UPPER strings that begin at a caret in brackets; no caret may remain
/// outside a bracketed region, and carets inside a region are deleted.
pub fn l2r_constraint(upper: &Network) -> Result<Network> {
    check_upper(upper, "left-to-right constraint")?;
    let content = upper.ignore_with(&[(SymbolId::CARET, SymbolId::EPSILON)], true);
    let region = cat(&[
        &pair(SymbolId::CARET, SymbolId::LBRACKET),
        &content,
        &pair(SymbolId::EPSILON, SymbolId::RBRACKET),
    ]);
    Ok(non_aux().union(&region).star().minimize())
}

/// Identity on bracketed strings whose regions have the requested match length.
pub fn length_constraint(upper: &Network, mode: MatchLength) -> Result<Network> {
    check_upper(upper, "length constraint")?;
    let lb = sym(SymbolId::LBRACKET);
    let rb = sym(SymbolId::RBRACKET);
    let bad = match mode {
        MatchLength::Longest => {
            // a region closes while an UPPER string from the same start continues
            let spanning = upper.ignore_nonfinal(&BRACKETS)?;
            cat(&[&lb, &and(&spanning, &rb.contains()?)])
        }
        MatchLength::Shortest => {
            // a region extends past a completed UPPER string
            cat(&[&lb, upper, &non_aux().plus(), &rb])
        }
    };
    Ok(not(&bad.contains()?).minimize())
}

/// `inner` between a deleted left and right bracket, so that replacement
/// symbols align with the replaced ones.
fn deleting_brackets(inner: &Network) -> Network {
    cat(&[&pair(SymbolId::LBRACKET, SymbolId::EPSILON), inner, &pair(SymbolId::RBRACKET, SymbolId::EPSILON)])
}

/// Rewrites bracketed regions according to `action`, copying everything else.
pub fn rewrite_brackets(action: &Action) -> Result<Network> {
    let copy = non_aux();
    let net = match action {
        Action::Lower(lower) => {
            copy.union(&deleting_brackets(&copy.star().crossproduct(lower)?)).star()
        }
        Action::Markup { prefix, suffix } => {
            let open = sym(SymbolId::LBRACKET).crossproduct(prefix)?;
            let close = sym(SymbolId::RBRACKET).crossproduct(suffix)?;
            let first = Network::union_all([&copy, &sym(SymbolId::RBRACKET), &open]).star();
            let second = copy.union(&close).star();
            first.compose(&second)
        }
    };
    Ok(net.minimize())
}

/// Composes the marking stages shared by single and parallel rules.
fn marked_regions(upper: &Network, length: MatchLength, opts: ReplaceOptions) -> Result<Network> {
    let mut t = aux_free_filter().compose(&insert_single_caret(upper)?).minimize();
    t = t.compose(&l2r_constraint(upper)?).minimize();
    if !opts.drop_length_constraint {
        t = t.compose(&length_constraint(upper, length)?).minimize();
    }
    Ok(t)
}

pub fn replace_directed(spec: &ReplaceSpec) -> Result<Network> {
    replace_directed_with(spec, ReplaceOptions::default())
}

pub fn replace_directed_with(spec: &ReplaceSpec, opts: ReplaceOptions) -> Result<Network> {
    spec.validate()?;
    if spec.direction == Direction::RightToLeft {
        return Ok(replace_directed_with(&spec.mirrored(), opts)?.reverse().minimize());
    }
    let marked = marked_regions(&spec.upper, spec.length, opts)?;
    let t = marked.compose(&rewrite_brackets(&spec.action)?).minimize();
    Ok(t.without_sigma(&AUX))
}

/// Directed markup: `UPPER @-> PREFIX ... SUFFIX` and its three siblings.
pub fn markup_directed(spec: &ReplaceSpec) -> Result<Network> {
    match spec.action {
        Action::Markup { .. } => replace_directed(spec),
        Action::Lower(_) => Err(Error::Syntax { offset: 0, message: "markup needs a prefix/suffix action".into() }),
    }
}

pub fn replace_parallel_directed(rules: &[ReplaceSpec]) -> Result<Network> {
    replace_parallel_directed_with(rules, ReplaceOptions::default())
}

/// Several directed rules applied in one pass. Match sites are selected against the
/// union of the UPPER languages; each site is rewritten by every rule whose UPPER
/// contains it.
pub fn replace_parallel_directed_with(rules: &[ReplaceSpec], opts: ReplaceOptions) -> Result<Network> {
    let first = rules.first().ok_or(Error::EmptyRuleSet)?;
    for r in rules {
        r.validate()?;
        if r.direction != first.direction || r.length != first.length {
            return Err(Error::MixedModes);
        }
    }
    if first.direction == Direction::RightToLeft {
        let mirrored: Vec<ReplaceSpec> = rules.iter().map(ReplaceSpec::mirrored).collect();
        return Ok(replace_parallel_directed_with(&mirrored, opts)?.reverse().minimize());
    }
    let union = Network::union_all(rules.iter().map(|r| &r.upper));
    let marked = marked_regions(&union, first.length, opts)?;
    let lb = sym(SymbolId::LBRACKET);
    let rb = sym(SymbolId::RBRACKET);
    let mut rewrite = non_aux();
    for r in rules {
        let region = match &r.action {
            Action::Lower(lower) => deleting_brackets(&r.upper.crossproduct(lower)?),
            Action::Markup { prefix, suffix } => {
                cat(&[&lb.crossproduct(prefix)?, &r.upper, &rb.crossproduct(suffix)?])
            }
        };
        rewrite = rewrite.union(&region);
    }
    let t = marked.compose(&rewrite.star().minimize()).minimize();
    Ok(t.without_sigma(&AUX))
}

/// `UPPER -> LOWER`: obligatory, nondeterministic replacement.
/// Every output corresponds to a factorization of the input into replaced UPPER
/// strings and gaps that contain no UPPER string.
pub fn replace_simple(upper: &Network, lower: &Network) -> Result<Network> {
    upper.require_automaton("replace")?;
    lower.require_automaton("replace")?;
    let nonempty = upper.difference(&Network::epsilon())?;
    let no_upper = nonempty.contains()?.complement()?;
    let replaced = upper.crossproduct(lower)?;
    Ok(no_upper.concat(&replaced).star().concat(&no_upper).minimize())
}

/// `UPPER -> LOWER || LEFT _ RIGHT`.
///
/// The input is padded with boundary symbols so that `.#.` in a context is an
/// ordinary symbol. Candidate regions are bracketed freely, then three identity
/// filters keep bracketings where every region sits in its contexts and no gap
/// contains an UPPER string that sits in its contexts.
pub fn replace_conditional(upper: &Network, lower: &Network, ctx: &ContextSpec) -> Result<Network> {
    upper.require_automaton("replace")?;
    lower.require_automaton("replace")?;
    ctx.left.require_automaton("context")?;
    ctx.right.require_automaton("context")?;
    let b = SymbolId::BOUNDARY;
    let any_star = Network::any_star();
    let lb = sym(SymbolId::LBRACKET);
    let rb = sym(SymbolId::RBRACKET);
    let copy = non_aux();
    let plain = any_but(&[SymbolId::CARET, SymbolId::LBRACKET, SymbolId::RBRACKET, b]);
    let no_aux = copy.star();

    let pad = cat(&[&pair(SymbolId::EPSILON, b), &plain.star(), &pair(SymbolId::EPSILON, b)]);
    let upper = upper.difference(&Network::epsilon())?;
    let mark = copy
        .union(&cat(&[&pair(SymbolId::EPSILON, SymbolId::LBRACKET), &upper, &pair(SymbolId::EPSILON, SymbolId::RBRACKET)]))
        .star();

    let left_ok = any_star.concat(&ctx.left);
    let right_ok = ctx.right.concat(&any_star);
    let bracketed = |n: &Network| n.ignore(&BRACKETS).expect("automaton");
    let bad_left = bracketed(&no_aux.difference(&left_ok)?);
    let bad_right = bracketed(&no_aux.difference(&right_ok)?);
    let good_left = bracketed(&and(&no_aux, &left_ok));
    let good_right = bracketed(&and(&no_aux, &right_ok));

    let left_holds = not(&cat(&[&bad_left, &lb, &any_star]));
    let right_holds = not(&cat(&[&any_star, &rb, &bad_right]));
    let outside_region = not(&cat(&[&any_star, &lb, &not(&rb.contains()?)]));
    let missed = cat(&[&and(&good_left, &outside_region), &upper, &good_right]);
    let obligatory = not(&missed);
    let constraints = and(&and(&left_holds, &right_holds), &obligatory);

    let rewrite = copy.union(&deleting_brackets(&upper.crossproduct(lower)?)).star();
    let unpad = cat(&[&pair(b, SymbolId::EPSILON), &any_but(&[b]).star(), &pair(b, SymbolId::EPSILON)]);

    let mut t = pad.compose(&mark).minimize();
    t = t.compose(&constraints.minimize()).minimize();
    t = t.compose(&rewrite.minimize()).minimize();
    t = t.compose(&unpad).minimize();
    Ok(t.without_sigma(&[SymbolId::CARET, SymbolId::LBRACKET, SymbolId::RBRACKET, b]))
}

#[cfg(test)]
mod tests;
