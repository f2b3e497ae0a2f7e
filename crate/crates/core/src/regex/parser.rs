use crate::error::{Error, Result};

use super::ast::{Arrow, Context, Regex, Rhs, Rule};
use super::lexer::{Tok, Token};

pub struct Parser<'t> {
    toks: &'t [Token],
    pos: usize,
    end_offset: usize,
    in_context: bool,
}

fn boxed(r: Regex) -> Box<Regex> {
    Box::new(r)
}

impl<'t> Parser<'t> {
    /// `end_offset` is reported for errors at the end of input.
    pub fn new(toks: &'t [Token], end_offset: usize) -> Self {
        Parser { toks, pos: 0, end_offset, in_context: false }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_offset, |t| t.offset)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { offset: self.offset(), message: message.into() })
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &Tok, what: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            self.error(format!("expected {what}"))
        }
    }

    pub fn at_end(&self) -> bool {
        self.pos == self.toks.len()
    }

    /// A whole expression, requiring that all tokens are consumed.
    pub fn parse_all(mut self) -> Result<Regex> {
        let r = self.compose()?;
        self.eat(&Tok::Semicolon);
        if !self.at_end() {
            return self.error("unexpected token");
        }
        Ok(r)
    }

    pub fn compose(&mut self) -> Result<Regex> {
        let mut left = self.replace()?;
        while self.eat(&Tok::Compose) {
            let right = self.replace()?;
            left = Regex::Compose(boxed(left), boxed(right));
        }
        Ok(left)
    }

    fn replace(&mut self) -> Result<Regex> {
        let mut left = self.union()?;
        if let Some(Tok::Arrow(_)) = self.peek() {
            return self.rules(left);
        }
        while self.eat(&Tok::Cross) {
            let right = self.union()?;
            left = Regex::Crossproduct(boxed(left), boxed(right));
        }
        Ok(left)
    }

    fn rules(&mut self, first_upper: Regex) -> Result<Regex> {
        let mut rules = vec![self.rule(first_upper)?];
        while self.eat(&Tok::Comma) {
            let upper = self.union()?;
            rules.push(self.rule(upper)?);
        }
        let simple = rules.iter().any(|r| r.arrow == Arrow::Simple);
        if simple && rules.len() > 1 {
            return self.error("`->` rules cannot be combined in parallel");
        }
        let context = match self.peek() {
            Some(Tok::Context) => {
                if !simple {
                    return self.error("contexts are only supported with `->`");
                }
                self.pos += 1;
                Some(self.context()?)
            }
            Some(Tok::OtherContext) => return Err(Error::UnsupportedContextOrientation),
            _ => None,
        };
        Ok(Regex::Replace { rules, context })
    }

    fn rule(&mut self, upper: Regex) -> Result<Rule> {
        let arrow = match self.peek() {
            Some(Tok::Arrow(a)) => *a,
            _ => return self.error("expected a replacement arrow"),
        };
        self.pos += 1;
        let first = if self.peek() == Some(&Tok::Ellipsis) { None } else { Some(self.union()?) };
        let rhs = if self.eat(&Tok::Ellipsis) {
            if arrow == Arrow::Simple {
                return self.error("`...` is only supported with directed arrows");
            }
            let suffix = if self.starts_term() { Some(boxed(self.union()?)) } else { None };
            Rhs::Markup { prefix: first.map(boxed), suffix }
        } else {
            match first {
                Some(l) => Rhs::Lower(boxed(l)),
                None => return self.error("expected a replacement"),
            }
        };
        Ok(Rule { upper, arrow, rhs })
    }

    fn context(&mut self) -> Result<Context> {
        self.in_context = true;
        let left = if self.peek() == Some(&Tok::Underscore) { None } else { Some(boxed(self.union()?)) };
        self.expect(&Tok::Underscore, "`_` in context")?;
        let right = if self.starts_term() { Some(boxed(self.union()?)) } else { None };
        self.in_context = false;
        if self.peek() == Some(&Tok::Underscore) {
            return self.error("context has more than one `_`");
        }
        Ok(Context { left, right })
    }

    fn union(&mut self) -> Result<Regex> {
        let mut left = self.intersect()?;
        while self.eat(&Tok::Bar) {
            let right = self.intersect()?;
            left = Regex::Union(boxed(left), boxed(right));
        }
        Ok(left)
    }

    fn intersect(&mut self) -> Result<Regex> {
        let mut left = self.concat()?;
        loop {
            if self.eat(&Tok::Amp) {
                left = Regex::Intersect(boxed(left), boxed(self.concat()?));
            } else if self.eat(&Tok::Minus) {
                left = Regex::Minus(boxed(left), boxed(self.concat()?));
            } else {
                return Ok(left);
            }
        }
    }

    fn starts_term(&self) -> bool {
        matches!(
            self.peek(),
            Some(
                Tok::Symbol(_)
                    | Tok::NameRef(_)
                    | Tok::Epsilon
                    | Tok::Any
                    | Tok::Boundary
                    | Tok::LBracket
                    | Tok::LParen
                    | Tok::Tilde
                    | Tok::Dollar
            )
        )
    }

    fn concat(&mut self) -> Result<Regex> {
        let mut left = self.prefix()?;
        while self.starts_term() {
            let right = self.prefix()?;
            left = Regex::Concat(boxed(left), boxed(right));
        }
        Ok(left)
    }

    fn prefix(&mut self) -> Result<Regex> {
        if self.eat(&Tok::Tilde) {
            return Ok(Regex::Complement(boxed(self.prefix()?)));
        }
        if self.eat(&Tok::Dollar) {
            return Ok(Regex::Contains(boxed(self.prefix()?)));
        }
        self.ignore()
    }

    fn ignore(&mut self) -> Result<Regex> {
        let mut body = self.postfix()?;
        loop {
            let nonfinal = match self.peek() {
                Some(Tok::Slash) => false,
                Some(Tok::NonfinalSlash) => true,
                _ => return Ok(body),
            };
            self.pos += 1;
            let ignored = self.postfix()?;
            body = Regex::Ignore { body: boxed(body), ignored: boxed(ignored), nonfinal };
        }
    }

    fn postfix(&mut self) -> Result<Regex> {
        let mut r = self.atom()?;
        if self.eat(&Tok::Colon) {
            let lower = self.atom()?;
            for side in [&r, &lower] {
                if !matches!(side, Regex::Symbol(_) | Regex::Epsilon | Regex::Any) {
                    return self.error("both sides of `:` must be single symbols, `0` or `?`");
                }
            }
            r = Regex::Pair(boxed(r), boxed(lower));
        }
        loop {
            if self.eat(&Tok::Star) {
                r = Regex::Star(boxed(r));
            } else if self.eat(&Tok::Plus) {
                r = Regex::Plus(boxed(r));
            } else {
                return Ok(r);
            }
        }
    }

    fn atom(&mut self) -> Result<Regex> {
        let Some(tok) = self.peek().cloned() else {
            return self.error("unexpected end of expression");
        };
        let r = match tok {
            Tok::Symbol(s) => Regex::Symbol(s),
            Tok::NameRef(n) => Regex::NameRef(n),
            Tok::Epsilon => Regex::Epsilon,
            Tok::Any => Regex::Any,
            Tok::Boundary => {
                if !self.in_context {
                    return self.error("`.#.` is only allowed in replace contexts");
                }
                Regex::Boundary
            }
            Tok::LBracket => {
                self.pos += 1;
                if self.eat(&Tok::RBracket) {
                    return Ok(Regex::EmptyString);
                }
                let inner = self.compose()?;
                self.expect(&Tok::RBracket, "`]`")?;
                return Ok(inner);
            }
            Tok::LParen => {
                self.pos += 1;
                let inner = self.compose()?;
                self.expect(&Tok::RParen, "`)`")?;
                return Ok(Regex::Optional(boxed(inner)));
            }
            Tok::Ellipsis => return self.error("`...` outside the right side of a directed rule"),
            _ => return self.error("expected an expression"),
        };
        self.pos += 1;
        Ok(r)
    }
}
