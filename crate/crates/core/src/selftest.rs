//! Built-in checks: the worked examples, the recipes and randomized comparisons
//! against the scanning reference in [`crate::oracle`].

use std::collections::BTreeSet;
use std::fmt::Write;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use crate::alphabet::{SymbolId, SymbolTable};
use crate::apply::{apply_down, apply_down_text, apply_down_word, output_names, tokenize_input, InputItem};
use crate::error::Result;
use crate::network::Network;
use crate::oracle;
use crate::recipes;
use crate::regex::{compile_with, load_program_with, parse, Definitions};
use crate::replace::{Action, Direction, MatchLength, ReplaceOptions, ReplaceSpec};
use crate::Word;

mod random;

/// A deliberately broken construction, to show that the checks can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Compile directed rules without the longest/shortest-match filter.
    DropLengthConstraint,
}

impl Mutation {
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "drop-longest" => Some(Mutation::DropLengthConstraint),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SelftestOptions {
    /// Runs only checks whose name contains this string.
    pub filter: Option<String>,
    pub mutation: Option<Mutation>,
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: &'static str,
    pub description: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

type Outcome = std::result::Result<String, String>;

pub struct Check {
    pub name: &'static str,
    pub description: &'static str,
    run: fn(&Ctx) -> Outcome,
}

struct Ctx {
    opts: ReplaceOptions,
    corpus: OnceLock<random::CorpusOutcome>,
}

impl Ctx {
    fn compile(&self, src: &str, table: &mut SymbolTable) -> Result<Network> {
        compile_with(&parse(src)?, &Definitions::new(), table, self.opts)
    }

    fn program(&self, src: &str, table: &mut SymbolTable) -> Result<(Definitions, Network)> {
        load_program_with(src, table, self.opts)
    }

    fn corpus(&self) -> &random::CorpusOutcome {
        self.corpus.get_or_init(|| random::replace_corpus(self.opts))
    }
}

pub const CHECKS: &[Check] = &[
    Check { name: "simple-replace", description: "`a b|b|b a|a b a -> x` gives four outputs on aba", run: simple_replace },
    Check { name: "directed-replace", description: "`@->` maps aba to x and is functional", run: directed_replace },
    Check { name: "late-decision", description: "`a+ b @-> x` rewrites only when b follows", run: late_decision },
    Check { name: "markup", description: "`(d) a* n+ @-> %[ ... %]` brackets noun phrases", run: markup },
    Check { name: "filters", description: "positive and negative <A> filters", run: filters },
    Check { name: "np-vp", description: "NP and VP spotters composed", run: np_vp },
    Check { name: "parallel", description: "`a+ @-> b, b+ @-> a` in one pass", run: parallel },
    Check { name: "tokenizer", description: "multiword tokenizer, English and French", run: tokenizer },
    Check { name: "oracle", description: "200 random rules x 4 modes agree with the scanning reference", run: oracle_equivalence },
    Check { name: "unambiguity", description: "single-string replacements have exactly one output", run: unambiguity },
    Check { name: "algebra", description: "algebra laws on enumerations", run: random::algebra },
    Check { name: "markup-inverse", description: "removing inserted marks recovers the input", run: random::markup_inverse },
];

pub fn run(opts: &SelftestOptions) -> Vec<CheckResult> {
    let ctx = Ctx {
        opts: ReplaceOptions { drop_length_constraint: opts.mutation == Some(Mutation::DropLengthConstraint) },
        corpus: OnceLock::new(),
    };
    CHECKS
        .iter()
        .filter(|c| opts.filter.as_deref().is_none_or(|f| c.name.contains(f)))
        .map(|c| {
            let start = Instant::now();
            let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| (c.run)(&ctx)))
                .unwrap_or_else(|_| Err("check panicked".into()));
            let (passed, detail) = match outcome {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            CheckResult { name: c.name, description: c.description, passed, detail, elapsed: start.elapsed() }
        })
        .collect()
}

/// One line per check.
pub fn render_table(results: &[CheckResult]) -> String {
    let mut out = String::new();
    for r in results {
        let status = if r.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{status}  {:<16} {:>7.2}s  {}  [{}]", r.name, r.elapsed.as_secs_f64(), r.description, r.detail);
    }
    out
}

fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn expect_outputs(net: &Network, table: &SymbolTable, input: &str, expected: &[&str]) -> std::result::Result<(), String> {
    let got: BTreeSet<String> = apply_down_text(net, table, input, 100).into_iter().collect();
    if got == set(expected) {
        Ok(())
    } else {
        Err(format!("{input:?} gave {got:?}, expected {expected:?}"))
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn simple_replace(ctx: &Ctx) -> Outcome {
    let mut t = SymbolTable::new();
    let net = ctx.compile("a b | b | b a | a b a -> x", &mut t).map_err(err)?;
    expect_outputs(&net, &t, "aba", &["axa", "ax", "xa", "x"])?;
    Ok("aba -> {axa, ax, xa, x}".into())
}

fn directed_replace(ctx: &Ctx) -> Outcome {
    let mut t = SymbolTable::new();
    let net = ctx.compile("a b | b | b a | a b a @-> x", &mut t).map_err(err)?;
    expect_outputs(&net, &t, "aba", &["x"])?;
    let ab = [t.lookup("a").unwrap(), t.lookup("b").unwrap()];
    let words = oracle::all_words(&ab, 8);
    for w in &words {
        let out = apply_down_word(&net, &t, w, 2);
        if out.len() != 1 {
            return Err(format!("{} has {} outputs", t.display(w), out.len()));
        }
    }
    Ok(format!("aba -> x; one output for all {} words up to length 8", words.len()))
}

fn late_decision(ctx: &Ctx) -> Outcome {
    let mut t = SymbolTable::new();
    let net = ctx.compile("a+ b @-> x", &mut t).map_err(err)?;
    for w in ["ab", "aab", "aaab"] {
        expect_outputs(&net, &t, w, &["x"])?;
    }
    for w in ["a", "aa", "aaa"] {
        expect_outputs(&net, &t, w, &[w])?;
    }
    Ok("a+b -> x, a+ unchanged".into())
}

fn markup(ctx: &Ctx) -> Outcome {
    let mut t = SymbolTable::new();
    let net = ctx.compile("(d) a* n+ @-> %[ ... %]", &mut t).map_err(err)?;
    expect_outputs(&net, &t, "dannvaan", &["[dann]v[aan]"])?;
    expect_outputs(&net, &t, "n", &["[n]"])?;
    expect_outputs(&net, &t, "v", &["v"])?;
    Ok("dannvaan -> [dann]v[aan]".into())
}

const FILTER_INPUT: &str = "<B>one</B><A>two</A><C>three</C><A>four</A>";

fn filters(ctx: &Ctx) -> Outcome {
    let mut t = SymbolTable::new();
    let (_, pos) = ctx.program(recipes::FILTER_POS, &mut t).map_err(err)?;
    expect_outputs(&pos, &t, FILTER_INPUT, &["<A>two</A><A>four</A>"])?;
    let (_, neg) = ctx.program(recipes::FILTER_NEG, &mut t).map_err(err)?;
    expect_outputs(&neg, &t, FILTER_INPUT, &["<B>one</B><C>three</C>"])?;
    // the negative filter's golden value, recomputed by scanning
    let region = ctx.compile("\"<A>\" ~$[\"<A>\" | \"</A>\"] \"</A>\"", &mut t).map_err(err)?;
    let spec = ReplaceSpec::longest_l2r(region, Network::epsilon());
    let input = tokenize_input(&neg, &t, FILTER_INPUT);
    let w = bind_unknown(&input, &mut t);
    let expected = oracle::rewrite(&spec, &w, 4).map_err(err)?;
    let got: BTreeSet<String> = expected.iter().map(|o| render_word(o, &t)).collect();
    if got != set(&["<B>one</B><C>three</C>"]) {
        return Err(format!("scanning reference gave {got:?}"));
    }
    Ok("positive keeps <A> regions, negative deletes them".into())
}

/// Symbols for a tokenized input, interning characters that only `?` can read.
fn bind_unknown(input: &crate::apply::InputTokenization, table: &mut SymbolTable) -> Word {
    input
        .items
        .iter()
        .map(|i| match i {
            InputItem::Known(s) => *s,
            InputItem::Other(text) => table.intern(text).expect("single characters are valid names"),
        })
        .collect()
}

fn render_word(w: &[SymbolId], table: &SymbolTable) -> String {
    w.iter().map(|&s| table.name(s)).collect()
}

fn np_vp(ctx: &Ctx) -> Outcome {
    let mut t = SymbolTable::new();
    let (_, net) = ctx.program(recipes::NP_VP, &mut t).map_err(err)?;
    let input = tokenize_input(&net, &t, "dannvaan");
    let out = apply_down(&net, &input, 5);
    let rendered: Vec<String> = out.outputs.iter().map(|o| output_names(o, &input, &t).join(" ")).collect();
    let expected = "[NP d a n n ] [VP v [NP a a n ] ]";
    if rendered != [expected] {
        return Err(format!("dannvaan gave {rendered:?}"));
    }
    Ok(expected.into())
}

fn parallel(ctx: &Ctx) -> Outcome {
    let mut t = SymbolTable::new();
    let (_, net) = ctx.program(recipes::PARALLEL_AB, &mut t).map_err(err)?;
    expect_outputs(&net, &t, "aaa", &["b"])?;
    expect_outputs(&net, &t, "bb", &["a"])?;
    let a_plus = ctx.compile("a+", &mut t).map_err(err)?;
    let b_plus = ctx.compile("b+", &mut t).map_err(err)?;
    let (a, b) = (t.lookup("a").unwrap(), t.lookup("b").unwrap());
    let rules = [
        ReplaceSpec::longest_l2r(a_plus, Network::symbol(b)),
        ReplaceSpec::longest_l2r(b_plus, Network::symbol(a)),
    ];
    let w = [a, a, a, b, b, a];
    let expected = oracle::rewrite_parallel(&rules, &w, 2).map_err(err)?;
    let expected: Vec<String> = expected.iter().map(|o| render_word(o, &t)).collect();
    if expected != ["bab"] {
        return Err(format!("scanning reference gave {expected:?} for aaabba"));
    }
    expect_outputs(&net, &t, "aaabba", &["bab"])?;
    Ok("aaa -> b, bb -> a, aaabba -> bab".into())
}

fn tokens_of(names: &[String]) -> std::result::Result<Vec<String>, String> {
    let mut tokens = Vec::new();
    let mut cur = String::new();
    for n in names {
        if n == "END_OF_TOKEN" {
            tokens.push(std::mem::take(&mut cur));
        } else {
            cur.push_str(n);
        }
    }
    if !cur.is_empty() {
        return Err(format!("unterminated token {cur:?}"));
    }
    Ok(tokens)
}

/// The tokenizer's three stages run by the scanning reference.
fn tokenizer_reference(defs: &Definitions, table: &SymbolTable, w: &[SymbolId]) -> Result<BTreeSet<Word>> {
    let def = |n: &str| defs.get(n).cloned().expect("recipe defines it");
    let space = def("SPACE");
    let end = table.lookup("END_OF_TOKEN").expect("recipe uses it");
    let squeeze = ReplaceSpec::longest_l2r(def("WHITE_SPACE").plus(), space.clone());
    let mark = ReplaceSpec::new(
        def("LETTER").plus().union(&def("MULTIWORD")),
        Action::Markup { prefix: Network::epsilon(), suffix: Network::symbol(end) },
        Direction::LeftToRight,
        MatchLength::Longest,
    );
    let left = Network::symbol(SymbolId::BOUNDARY).union(&Network::symbol(end));
    let mut out = BTreeSet::new();
    for s1 in oracle::rewrite(&squeeze, w, 2)? {
        for s2 in oracle::rewrite(&mark, &s1, 2)? {
            out.extend(oracle::rewrite_obligatory(&space, &Network::epsilon(), Some((&left, &Network::epsilon())), &s2, 2)?);
        }
    }
    Ok(out)
}

fn tokenizer(ctx: &Ctx) -> Outcome {
    let mut t = SymbolTable::new();
    let (defs, net) = ctx.program(recipes::TOKENIZER, &mut t).map_err(err)?;
    type TokenCheck = fn(&[String]) -> bool;
    let cases: [(&str, TokenCheck, &str); 3] = [
        ("we are at  least here", |toks| toks == ["we", "are", "at least", "here"], "we / are / at least / here"),
        ("de plus on y va", |toks| toks.first().map(String::as_str) == Some("de plus"), "first token `de plus`"),
        ("on y va de plus en plus", |toks| toks.last().map(String::as_str) == Some("de plus en plus"), "last token `de plus en plus`"),
    ];
    for (text, ok, want) in cases {
        let input = tokenize_input(&net, &t, text);
        let out = apply_down(&net, &input, 5);
        let [output] = out.outputs.as_slice() else {
            return Err(format!("{text:?} gave {} outputs", out.outputs.len()));
        };
        let names = output_names(output, &input, &t);
        let toks = tokens_of(&names)?;
        if !ok(&toks) || toks.iter().any(|tok| tok.is_empty() || tok.starts_with(' ') || tok.ends_with(' ')) {
            return Err(format!("{text:?} gave tokens {toks:?}, expected {want}"));
        }
        let w = bind_unknown(&input, &mut t);
        let reference = tokenizer_reference(&defs, &t, &w).map_err(err)?;
        let got: Word = names.iter().map(|n| t.lookup(n).expect("output symbols are interned")).collect();
        if reference.len() != 1 || !reference.contains(&got) {
            return Err(format!("{text:?}: scanning reference disagrees"));
        }
    }
    Ok("we / are / at least / here; de plus; de plus en plus".into())
}

fn oracle_equivalence(ctx: &Ctx) -> Outcome {
    let c = ctx.corpus();
    match &c.mismatch {
        None => Ok(format!("{} rules, {} comparisons", c.rules, c.comparisons)),
        Some(m) => Err(m.clone()),
    }
}

fn unambiguity(ctx: &Ctx) -> Outcome {
    let c = ctx.corpus();
    match &c.ambiguous {
        None => Ok(format!("{} inputs, one output each", c.comparisons)),
        Some(m) => Err(m.clone()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filter_selects_by_substring() {
        let results = run(&SelftestOptions { filter: Some("markup".into()), mutation: None });
        let names: Vec<_> = results.iter().map(|r| r.name).collect();
        assert_eq!(names, ["markup", "markup-inverse"]);
        assert!(results.iter().all(|r| r.passed), "{}", render_table(&results));
    }

    #[test]
    fn dropping_the_length_constraint_fails_the_directed_check() {
        let opts = SelftestOptions { filter: Some("directed-replace".into()), mutation: Some(Mutation::DropLengthConstraint) };
        let results = run(&opts);
        assert_eq!(results.len(), 1);
        assert!(!results[0].passed);
        assert!(results[0].detail.contains("xa"), "{}", results[0].detail);
    }

    #[test]
    fn mutation_names() {
        assert_eq!(Mutation::parse("drop-longest"), Some(Mutation::DropLengthConstraint));
        assert_eq!(Mutation::parse("nothing"), None);
    }
}
