//! The regular-expression language and rule files.
//!
//! Symbols are single characters (`a`), escaped characters (`%[`, `% `) or
//! quoted names (`"END_OF_TOKEN"`). Bare identifiers of two or more
//! characters refer to earlier `define`s. `0` is the empty string, `?` any
//! symbol, `[]` the empty-string language; `( )` marks an optional part and
//! `[ ]` groups. Operators, from tightest to loosest binding:
//!
//! | operators | meaning |
//! |---|---|
//! | `*` `+` `:` | star, plus, symbol pair |
//! | `/` `./.` | ignore, ignore inside only |
//! | `~` `$` | complement, contains |
//! | juxtaposition | concatenation |
//! | `&` `-` | intersection, difference |
//! | `\|` | union |
//! | `.x.` `->` `@->` `@>` `->@` `>@` | crossproduct and replacement |
//! | `.o.` | composition |
//!
//! Replacement rules may be joined with `,` (directed arrows only), carry a
//! `|| LEFT _ RIGHT` context (`->` only), and mark matches with
//! `PREFIX ... SUFFIX`. `!` comments out the rest of a line.

mod ast;
mod compile;
mod lexer;
mod parser;

use std::collections::HashMap;

pub use ast::{Arrow, Context, Regex, Rhs, Rule};
pub use lexer::{tokenize, Tok, Token};

use crate::alphabet::SymbolTable;
use crate::error::{Error, Result};
use crate::network::Network;
use crate::replace::ReplaceOptions;
use compile::Compiler;
use parser::Parser;

/// Named networks in definition order.
#[derive(Clone, Debug, Default)]
pub struct Definitions {
    entries: Vec<(String, Network)>,
    index: HashMap<String, usize>,
}

impl Definitions {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds or replaces a definition.
    pub fn insert(&mut self, name: impl Into<String>, net: Network) {
        let name = name.into();
        match self.index.get(&name) {
            Some(&i) => self.entries[i].1 = net,
            None => {
                self.index.insert(name.clone(), self.entries.len());
                self.entries.push((name, net));
            }
        }
    }

    pub fn get(&self, name: &str) -> Option<&Network> {
        self.index.get(name).map(|&i| &self.entries[i].1)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Network)> {
        self.entries.iter().map(|(n, net)| (n.as_str(), net))
    }
}

/// Parses one expression; a trailing `;` is allowed.
pub fn parse(src: &str) -> Result<Regex> {
    let toks = tokenize(src)?;
    Parser::new(&toks, src.len()).parse_all()
}

pub fn compile(ast: &Regex, defs: &Definitions, table: &mut SymbolTable) -> Result<Network> {
    compile_with(ast, defs, table, ReplaceOptions::default())
}

pub fn compile_with(ast: &Regex, defs: &Definitions, table: &mut SymbolTable, opts: ReplaceOptions) -> Result<Network> {
    Ok(Compiler { table, defs, opts }.compile(ast)?.minimize())
}

/// Parses and compiles one expression without definitions.
pub fn compile_str(src: &str, table: &mut SymbolTable) -> Result<Network> {
    compile(&parse(src)?, &Definitions::new(), table)
}

/// Line and column (both from 1) of a byte offset.
pub fn line_column(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn at(src: &str, fallback: usize, e: Error) -> Error {
    let offset = match &e {
        Error::Syntax { offset, .. } | Error::UnterminatedQuote { offset } | Error::DanglingEscape { offset } => *offset,
        _ => fallback,
    };
    let (line, column) = line_column(src, offset);
    Error::AtLine { line, column, source: Box::new(e) }
}

pub fn load_program(src: &str, table: &mut SymbolTable) -> Result<(Definitions, Network)> {
    load_program_with(src, table, ReplaceOptions::default())
}

/// Compiles a rule file: `define NAME expr ;` statements followed by one main `expr ;`.
pub fn load_program_with(src: &str, table: &mut SymbolTable, opts: ReplaceOptions) -> Result<(Definitions, Network)> {
    let toks = tokenize(src).map_err(|e| at(src, 0, e))?;
    let mut defs = Definitions::new();
    let mut main = None;
    let statements = toks.split_inclusive(|t| t.tok == Tok::Semicolon);
    for stmt in statements {
        let start = stmt[0].offset;
        let (body, end) = match stmt.split_last() {
            Some((last, body)) if last.tok == Tok::Semicolon => (body, last.offset),
            _ => (stmt, src.len()),
        };
        if body.is_empty() {
            return Err(at(src, start, Error::Syntax { offset: start, message: "empty statement".into() }));
        }
        if main.is_some() {
            return Err(at(src, start, Error::Syntax { offset: start, message: "text after the main expression".into() }));
        }
        let compile_body = |body: &[Token], defs: &Definitions, table: &mut SymbolTable| -> Result<Network> {
            let ast = Parser::new(body, end).parse_all()?;
            compile_with(&ast, defs, table, opts)
        };
        if body[0].tok == Tok::NameRef("define".into()) {
            let name = match body.get(1) {
                Some(Token { tok: Tok::NameRef(n), .. }) => n.clone(),
                other => {
                    let offset = other.map_or(end, |t| t.offset);
                    let message = "definition names are identifiers of two or more characters".into();
                    return Err(at(src, start, Error::Syntax { offset, message }));
                }
            };
            let net = compile_body(&body[2..], &defs, table).map_err(|e| at(src, start, e))?;
            defs.insert(name, net);
        } else {
            main = Some(compile_body(body, &defs, table).map_err(|e| at(src, start, e))?);
        }
    }
    main.map(|m| (defs, m)).ok_or(Error::EmptyProgram)
}

#[cfg(test)]
mod tests;
