use super::*;
use crate::apply::apply_down_text;
use crate::replace::{Direction, MatchLength};

fn sym(s: &str) -> Box<Regex> {
    Box::new(Regex::Symbol(s.into()))
}

fn cat(a: Box<Regex>, b: Box<Regex>) -> Box<Regex> {
    Box::new(Regex::Concat(a, b))
}

fn outputs(src: &str, input: &str) -> Vec<String> {
    let mut t = SymbolTable::new();
    let net = compile_str(src, &mut t).unwrap();
    apply_down_text(&net, &t, input, 100)
}

#[test]
fn concatenation_binds_tighter_than_union() {
    let r = parse("a b | b a").unwrap();
    assert_eq!(r, Regex::Union(cat(sym("a"), sym("b")), cat(sym("b"), sym("a"))));
}

#[test]
fn markup_rule_shape() {
    let r = parse("(d) a* n+ @-> %[ ... %]").unwrap();
    let upper = Regex::Concat(
        cat(Box::new(Regex::Optional(sym("d"))), Box::new(Regex::Star(sym("a")))),
        Box::new(Regex::Plus(sym("n"))),
    );
    let rule = Rule {
        upper,
        arrow: Arrow::Directed(Direction::LeftToRight, MatchLength::Longest),
        rhs: Rhs::Markup { prefix: Some(sym("[")), suffix: Some(sym("]")) },
    };
    assert_eq!(r, Regex::Replace { rules: vec![rule], context: None });
}

#[test]
fn comma_joins_parallel_rules() {
    match parse("a+ @-> b, b+ @-> a").unwrap() {
        Regex::Replace { rules, context: None } => assert_eq!(rules.len(), 2),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn prefix_operators_bind_tighter_than_concatenation() {
    let r = parse("~$\"</A>\" \"<A>\"").unwrap();
    assert_eq!(r, Regex::Concat(Box::new(Regex::Complement(Box::new(Regex::Contains(sym("</A>"))))), sym("<A>")));
}

#[test]
fn ignore_binds_tighter_than_complement() {
    let r = parse("~a/b").unwrap();
    let inner = Regex::Ignore { body: sym("a"), ignored: sym("b"), nonfinal: false };
    assert_eq!(r, Regex::Complement(Box::new(inner)));
}

#[test]
fn compose_is_loosest() {
    let r = parse("a -> b .o. b .x. c").unwrap();
    assert!(matches!(r, Regex::Compose(..)));
}

#[test]
fn syntax_errors_carry_offsets() {
    assert!(matches!(parse("a | "), Err(Error::Syntax { offset: 4, .. })));
    assert!(matches!(parse("[a b"), Err(Error::Syntax { .. })));
    assert!(matches!(parse("a ... b"), Err(Error::Syntax { offset: 2, .. })));
    assert!(matches!(parse(".#. a"), Err(Error::Syntax { offset: 0, .. })));
    assert!(matches!(parse("a -> b ... c"), Err(Error::Syntax { .. })));
    assert!(matches!(parse("a @-> b || c _ d"), Err(Error::Syntax { .. })));
    assert!(matches!(parse("a -> b, c -> d"), Err(Error::Syntax { .. })));
    assert!(matches!(parse("a -> b || c _ d _ e"), Err(Error::Syntax { .. })));
    assert!(matches!(parse("[a b]:c"), Err(Error::Syntax { .. })));
}

#[test]
fn other_context_orientations_are_rejected() {
    assert_eq!(parse("a -> b // c _ d"), Err(Error::UnsupportedContextOrientation));
    assert_eq!(parse("a -> b \\\\ c _ d"), Err(Error::UnsupportedContextOrientation));
    assert_eq!(parse("a -> b \\/ c _ d"), Err(Error::UnsupportedContextOrientation));
}

const ROUND_TRIP: &[&str] = &[
    "a",
    "%[",
    "\"END_OF_TOKEN\"",
    "\"a\\\"b\"",
    "0",
    "?",
    "[]",
    "a:b",
    "?:0",
    "0:x",
    "a b c",
    "a | b | c",
    "a & b",
    "a - b",
    "a b & c - d",
    "a / b",
    "a ./. [b | c]",
    "$a",
    "~[a b]",
    "~$[a | b]",
    "a* b+",
    "(a) b",
    "a .x. b c",
    "a .o. b .o. c",
    "a b | b | b a | a b a -> x",
    "a b | b | b a | a b a @-> x",
    "a+ b @> x",
    "a ->@ b",
    "a >@ b",
    "(d) a* n+ @-> %[ ... %]",
    "a @-> ... b",
    "a @-> b ...",
    "a+ @-> b, b+ @-> a",
    "a -> b || c _ d",
    "a -> b || _ d",
    "a -> b || .#. | x _",
    "NP @-> \"[NP\" ... \"]\"",
    "[a -> b] .x. c",
];

#[test]
fn pretty_printing_round_trips() {
    for src in ROUND_TRIP {
        let ast = parse(src).unwrap_or_else(|e| panic!("{src}: {e}"));
        let printed = ast.to_string();
        let again = parse(&printed).unwrap_or_else(|e| panic!("{src} printed as {printed}: {e}"));
        assert_eq!(ast, again, "{src} printed as {printed}");
    }
}

#[test]
fn simple_replace_gives_four_outputs() {
    let mut out = outputs("a b | b | b a | a b a -> x", "aba");
    out.sort();
    assert_eq!(out, vec!["ax", "axa", "x", "xa"]);
}

#[test]
fn directed_replace_gives_one_output() {
    assert_eq!(outputs("a b | b | b a | a b a @-> x", "aba"), vec!["x"]);
}

#[test]
fn empty_string_language() {
    assert_eq!(outputs("[]", ""), vec![""]);
    assert!(outputs("[]", "a").is_empty());
}

#[test]
fn unknown_names_are_reported() {
    let mut t = SymbolTable::new();
    assert_eq!(compile_str("NP a", &mut t), Err(Error::UnknownName("NP".into())));
}

#[test]
fn complement_of_a_relation_is_refused() {
    let mut t = SymbolTable::new();
    assert!(matches!(compile_str("~[a:b]", &mut t), Err(Error::NotAnAutomaton(_))));
}

#[test]
fn ignore_needs_a_symbol_set() {
    let mut t = SymbolTable::new();
    assert_eq!(compile_str("a / [b c]", &mut t), Err(Error::NotASymbolSet("ignore")));
    assert_eq!(outputs("a b / x", "axxb"), vec!["axxb"]);
    assert!(outputs("a ./. x", "ax").is_empty());
    assert_eq!(outputs("a b ./. x", "axb"), vec!["axb"]);
}

#[test]
fn reserved_spellings_cannot_be_quoted() {
    let mut t = SymbolTable::new();
    assert!(matches!(compile_str("\"@^@\"", &mut t), Err(Error::ReservedName(_))));
}

#[test]
fn program_with_definitions() {
    let src = "define NP [(d) a* n+] ;\nNP @-> \"[NP\" ... \"]\" ;\n";
    let mut t = SymbolTable::new();
    let (defs, net) = load_program(src, &mut t).unwrap();
    assert_eq!(defs.len(), 1);
    assert!(defs.get("NP").is_some());
    assert_eq!(apply_down_text(&net, &t, "dann", 5), vec!["[NPdann]"]);
}

#[test]
fn program_errors_have_positions() {
    let mut t = SymbolTable::new();
    assert_eq!(load_program("", &mut t).unwrap_err(), Error::EmptyProgram);
    assert_eq!(load_program("! only a comment\n", &mut t).unwrap_err(), Error::EmptyProgram);
    assert_eq!(load_program("define AB a ;", &mut t).unwrap_err(), Error::EmptyProgram);
    match load_program("define AB a ;\nAB |\n;", &mut t).unwrap_err() {
        Error::AtLine { line, column, .. } => assert_eq!((line, column), (3, 1)),
        e => panic!("unexpected {e}"),
    }
    match load_program("a ;\n  CD ;", &mut t).unwrap_err() {
        Error::AtLine { line, column, .. } => assert_eq!((line, column), (2, 3)),
        e => panic!("unexpected {e}"),
    }
    match load_program("\n  XY b ;", &mut t).unwrap_err() {
        Error::AtLine { line, column, source } => {
            assert_eq!((line, column), (2, 3));
            assert_eq!(*source, Error::UnknownName("XY".into()));
        }
        e => panic!("unexpected {e}"),
    }
}

#[test]
fn compilation_is_deterministic() {
    let src = "[a | b]* a @-> x ... y";
    let mut t1 = SymbolTable::new();
    let mut t2 = SymbolTable::new();
    let n1 = compile_str(src, &mut t1).unwrap();
    let n2 = compile_str(src, &mut t2).unwrap();
    assert!(n1.is_isomorphic(&n2));
}

#[test]
fn line_column_counts_characters() {
    assert_eq!(line_column("ab\ncé d", 7), (2, 4));
    assert_eq!(line_column("abc", 0), (1, 1));
}
