use std::fmt;

use crate::replace::{Direction, MatchLength};

/// Parsed regular expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Regex {
    Symbol(String),
    /// `u:l` where both sides are single symbols, `0` or `?`.
    Pair(Box<Regex>, Box<Regex>),
    /// `0`
    Epsilon,
    /// `[]`
    EmptyString,
    /// `?`
    Any,
    /// `.#.`, only inside replace contexts.
    Boundary,
    NameRef(String),
    Union(Box<Regex>, Box<Regex>),
    Concat(Box<Regex>, Box<Regex>),
    Intersect(Box<Regex>, Box<Regex>),
    Minus(Box<Regex>, Box<Regex>),
    Ignore { body: Box<Regex>, ignored: Box<Regex>, nonfinal: bool },
    Contains(Box<Regex>),
    Complement(Box<Regex>),
    Star(Box<Regex>),
    Plus(Box<Regex>),
    Optional(Box<Regex>),
    Crossproduct(Box<Regex>, Box<Regex>),
    Compose(Box<Regex>, Box<Regex>),
    /// One or more comma-separated rules with an optional `||` context.
    Replace { rules: Vec<Rule>, context: Option<Context> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arrow {
    /// `->`
    Simple,
    Directed(Direction, MatchLength),
}

impl Arrow {
    pub fn spelling(self) -> &'static str {
        use Direction::*;
        use MatchLength::*;
        match self {
            Arrow::Simple => "->",
            Arrow::Directed(LeftToRight, Longest) => "@->",
            Arrow::Directed(LeftToRight, Shortest) => "@>",
            Arrow::Directed(RightToLeft, Longest) => "->@",
            Arrow::Directed(RightToLeft, Shortest) => ">@",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rhs {
    Lower(Box<Regex>),
    /// `PREFIX ... SUFFIX`; a missing side is the empty string.
    Markup { prefix: Option<Box<Regex>>, suffix: Option<Box<Regex>> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub upper: Regex,
    pub arrow: Arrow,
    pub rhs: Rhs,
}

/// `|| LEFT _ RIGHT`; a missing side is the empty string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Context {
    pub left: Option<Box<Regex>>,
    pub right: Option<Box<Regex>>,
}

fn bare(name: &str) -> bool {
    let mut chars = name.chars();
    matches!((chars.next(), chars.next()), (Some(c), None) if c.is_alphanumeric() && c != '0')
}

fn write_symbol(f: &mut fmt::Formatter<'_>, name: &str) -> fmt::Result {
    if bare(name) {
        return f.write_str(name);
    }
    f.write_str("\"")?;
    for c in name.chars() {
        match c {
            '"' => f.write_str("\\\"")?,
            '\\' => f.write_str("\\\\")?,
            '\n' => f.write_str("\\n")?,
            '\t' => f.write_str("\\t")?,
            c => write!(f, "{c}")?,
        }
    }
    f.write_str("\"")
}

/// Prints fully bracketed source that parses back to the same tree.
impl fmt::Display for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regex::Symbol(s) => write_symbol(f, s),
            Regex::Pair(u, l) => write!(f, "{u}:{l}"),
            Regex::Epsilon => f.write_str("0"),
            Regex::EmptyString => f.write_str("[]"),
            Regex::Any => f.write_str("?"),
            Regex::Boundary => f.write_str(".#."),
            Regex::NameRef(n) => f.write_str(n),
            Regex::Union(a, b) => write!(f, "[{a} | {b}]"),
            Regex::Concat(a, b) => write!(f, "[{a} {b}]"),
            Regex::Intersect(a, b) => write!(f, "[{a} & {b}]"),
            Regex::Minus(a, b) => write!(f, "[{a} - {b}]"),
            Regex::Ignore { body, ignored, nonfinal } => {
                let op = if *nonfinal { "./." } else { "/" };
                write!(f, "[{body} {op} {ignored}]")
            }
            Regex::Contains(a) => write!(f, "[${a}]"),
            Regex::Complement(a) => write!(f, "[~{a}]"),
            Regex::Star(a) => write!(f, "[{a}*]"),
            Regex::Plus(a) => write!(f, "[{a}+]"),
            Regex::Optional(a) => write!(f, "({a})"),
            Regex::Crossproduct(a, b) => write!(f, "[{a} .x. {b}]"),
            Regex::Compose(a, b) => write!(f, "[{a} .o. {b}]"),
            Regex::Replace { rules, context } => {
                f.write_str("[")?;
                for (i, r) in rules.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{} {} ", r.upper, r.arrow.spelling())?;
                    match &r.rhs {
                        Rhs::Lower(l) => write!(f, "{l}")?,
                        Rhs::Markup { prefix, suffix } => {
                            if let Some(p) = prefix {
                                write!(f, "{p} ")?;
                            }
                            f.write_str("...")?;
                            if let Some(s) = suffix {
                                write!(f, " {s}")?;
                            }
                        }
                    }
                }
                if let Some(c) = context {
                    f.write_str(" ||")?;
                    if let Some(l) = &c.left {
                        write!(f, " {l}")?;
                    }
                    f.write_str(" _")?;
                    if let Some(r) = &c.right {
                        write!(f, " {r}")?;
                    }
                }
                f.write_str("]")
            }
        }
    }
}
