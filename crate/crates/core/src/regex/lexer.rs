use crate::error::{Error, Result};
use crate::replace::{Direction, MatchLength};

use super::ast::Arrow;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Symbol(String),
    NameRef(String),
    Epsilon,
    Any,
    Boundary,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Star,
    Plus,
    Tilde,
    Dollar,
    Slash,
    /// `./.`
    NonfinalSlash,
    Bar,
    Amp,
    Minus,
    Cross,
    Compose,
    Arrow(Arrow),
    Comma,
    /// `||`
    Context,
    /// `//`, `\\` or `\/`
    OtherContext,
    Underscore,
    Ellipsis,
    Semicolon,
    Colon,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub offset: usize,
}

const OPERATORS: &[(&str, Tok)] = &[
    ("...", Tok::Ellipsis),
    (".x.", Tok::Cross),
    (".o.", Tok::Compose),
    (".#.", Tok::Boundary),
    ("./.", Tok::NonfinalSlash),
    ("@->", Tok::Arrow(Arrow::Directed(Direction::LeftToRight, MatchLength::Longest))),
    ("->@", Tok::Arrow(Arrow::Directed(Direction::RightToLeft, MatchLength::Longest))),
    ("@>", Tok::Arrow(Arrow::Directed(Direction::LeftToRight, MatchLength::Shortest))),
    (">@", Tok::Arrow(Arrow::Directed(Direction::RightToLeft, MatchLength::Shortest))),
    ("->", Tok::Arrow(Arrow::Simple)),
    ("||", Tok::Context),
    ("//", Tok::OtherContext),
    ("\\\\", Tok::OtherContext),
    ("\\/", Tok::OtherContext),
    ("[", Tok::LBracket),
    ("]", Tok::RBracket),
    ("(", Tok::LParen),
    (")", Tok::RParen),
    ("*", Tok::Star),
    ("+", Tok::Plus),
    ("~", Tok::Tilde),
    ("$", Tok::Dollar),
    ("/", Tok::Slash),
    ("|", Tok::Bar),
    ("&", Tok::Amp),
    ("-", Tok::Minus),
    (",", Tok::Comma),
    (";", Tok::Semicolon),
    (":", Tok::Colon),
    ("?", Tok::Any),
];

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

/// Splits regex source into tokens. `!` starts a comment that runs to the end of the line.
pub fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut i = 0;
    while let Some(c) = src[i..].chars().next() {
        let rest = &src[i..];
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        if c == '!' {
            i += rest.find('\n').unwrap_or(rest.len());
            continue;
        }
        let offset = i;
        if c == '%' {
            let lit = rest[1..].chars().next().ok_or(Error::DanglingEscape { offset })?;
            out.push(Token { tok: Tok::Symbol(lit.to_string()), offset });
            i += 1 + lit.len_utf8();
            continue;
        }
        if c == '"' {
            let (name, len) = quoted(rest, offset)?;
            out.push(Token { tok: Tok::Symbol(name), offset });
            i += len;
            continue;
        }
        if is_word_char(c) {
            let len = rest.find(|c: char| !is_word_char(c)).unwrap_or(rest.len());
            let word = &rest[..len];
            let tok = match word {
                "_" => Tok::Underscore,
                "0" => Tok::Epsilon,
                w if w.chars().count() == 1 => Tok::Symbol(w.to_string()),
                w => Tok::NameRef(w.to_string()),
            };
            out.push(Token { tok, offset });
            i += len;
            continue;
        }
        if let Some((op, tok)) = OPERATORS.iter().find(|(op, _)| rest.starts_with(op)) {
            out.push(Token { tok: tok.clone(), offset });
            i += op.len();
            continue;
        }
        out.push(Token { tok: Tok::Symbol(c.to_string()), offset });
        i += c.len_utf8();
    }
    Ok(out)
}

/// Reads `"..."` at the start of `s`; returns the name and the consumed length.
fn quoted(s: &str, offset: usize) -> Result<(String, usize)> {
    let mut name = String::new();
    let mut chars = s.char_indices().skip(1);
    while let Some((k, c)) = chars.next() {
        match c {
            '"' => return Ok((name, k + 1)),
            '\\' => match chars.next() {
                Some((_, 'n')) => name.push('\n'),
                Some((_, 't')) => name.push('\t'),
                Some((_, e)) => name.push(e),
                None => break,
            },
            c => name.push(c),
        }
    }
    Err(Error::UnterminatedQuote { offset })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(src: &str) -> Vec<Tok> {
        tokenize(src).unwrap().into_iter().map(|t| t.tok).collect()
    }

    fn sym(s: &str) -> Tok {
        Tok::Symbol(s.into())
    }

    #[test]
    fn union_of_concatenations() {
        assert_eq!(toks("a b | b"), vec![sym("a"), sym("b"), Tok::Bar, sym("b")]);
    }

    #[test]
    fn percent_escapes_one_character() {
        assert_eq!(toks("%["), vec![sym("[")]);
        assert_eq!(toks("%0"), vec![sym("0")]);
        assert_eq!(toks("% "), vec![sym(" ")]);
        assert_eq!(tokenize("a %"), Err(Error::DanglingEscape { offset: 2 }));
    }

    #[test]
    fn quotes_make_one_symbol() {
        assert_eq!(toks("\"END_OF_TOKEN\""), vec![sym("END_OF_TOKEN")]);
        assert_eq!(toks("\"a\\\"b\\n\""), vec![sym("a\"b\n")]);
        assert_eq!(tokenize(" \"abc"), Err(Error::UnterminatedQuote { offset: 1 }));
    }

    #[test]
    fn words_specials_and_names() {
        assert_eq!(toks("0 ? .#. _ NP x"), vec![Tok::Epsilon, Tok::Any, Tok::Boundary, Tok::Underscore, Tok::NameRef("NP".into()), sym("x")]);
    }

    #[test]
    fn operators_take_the_longest_spelling() {
        assert_eq!(
            toks("@-> @> ->@ >@ -> - || | ... .x. .o. ./. /"),
            vec![
                Tok::Arrow(Arrow::Directed(Direction::LeftToRight, MatchLength::Longest)),
                Tok::Arrow(Arrow::Directed(Direction::LeftToRight, MatchLength::Shortest)),
                Tok::Arrow(Arrow::Directed(Direction::RightToLeft, MatchLength::Longest)),
                Tok::Arrow(Arrow::Directed(Direction::RightToLeft, MatchLength::Shortest)),
                Tok::Arrow(Arrow::Simple),
                Tok::Minus,
                Tok::Context,
                Tok::Bar,
                Tok::Ellipsis,
                Tok::Cross,
                Tok::Compose,
                Tok::NonfinalSlash,
                Tok::Slash,
            ]
        );
    }

    #[test]
    fn comments_run_to_end_of_line() {
        assert_eq!(toks("a ! b c\nd"), vec![sym("a"), sym("d")]);
    }

    #[test]
    fn other_punctuation_is_a_symbol() {
        assert_eq!(toks("< >"), vec![sym("<"), sym(">")]);
        assert_eq!(toks("é."), vec![sym("é"), sym(".")]);
    }
}
