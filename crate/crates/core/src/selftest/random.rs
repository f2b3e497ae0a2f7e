//! Randomized checks with fixed seeds.

use std::thread;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{err, Ctx, Outcome};
use crate::alphabet::{SymbolId, SymbolTable};
use crate::apply::apply_down_word;
use crate::network::{Network, Side};
use crate::oracle::{self, all_words, assert_equivalent, enumerate_relation};
use crate::regex::{compile_with, Arrow, Definitions, Regex, Rhs, Rule};
use crate::replace::{Action, Direction, MatchLength, ReplaceOptions, ReplaceSpec};
use crate::Word;

const MODES: [(Direction, MatchLength); 4] = [
    (Direction::LeftToRight, MatchLength::Longest),
    (Direction::LeftToRight, MatchLength::Shortest),
    (Direction::RightToLeft, MatchLength::Longest),
    (Direction::RightToLeft, MatchLength::Shortest),
];

fn sym(s: &str) -> Regex {
    Regex::Symbol(s.into())
}

fn b(r: Regex) -> Box<Regex> {
    Box::new(r)
}

/// Random language over {a, b} of nesting depth at most `depth`.
fn language(rng: &mut ChaCha8Rng, depth: usize) -> Regex {
    if depth == 0 || rng.gen_bool(0.25) {
        return sym(["a", "b"].choose(rng).unwrap());
    }
    let d = depth - 1;
    match rng.gen_range(0..10) {
        0 | 1 => Regex::Union(b(language(rng, d)), b(language(rng, d))),
        2..=4 => Regex::Concat(b(language(rng, d)), b(language(rng, d))),
        5 => Regex::Star(b(language(rng, d))),
        6 => Regex::Plus(b(language(rng, d))),
        7 => Regex::Optional(b(language(rng, d))),
        8 => Regex::Minus(b(language(rng, d)), b(language(rng, d))),
        _ => Regex::Intersect(b(language(rng, d)), b(language(rng, d))),
    }
}

/// Random relation over {a, b}, including deletions, insertions and `?`.
fn relation(rng: &mut ChaCha8Rng, depth: usize) -> Regex {
    if depth == 0 || rng.gen_bool(0.3) {
        let side = |rng: &mut ChaCha8Rng| match rng.gen_range(0..7) {
            0 => Regex::Epsilon,
            1 => Regex::Any,
            2 | 3 => sym("a"),
            _ => sym("b"),
        };
        let (u, l) = (side(rng), side(rng));
        if u == Regex::Epsilon && l == Regex::Epsilon {
            return sym("a");
        }
        return Regex::Pair(b(u), b(l));
    }
    let d = depth - 1;
    match rng.gen_range(0..6) {
        0 | 1 => Regex::Union(b(relation(rng, d)), b(relation(rng, d))),
        2 | 3 => Regex::Concat(b(relation(rng, d)), b(relation(rng, d))),
        4 => Regex::Star(b(relation(rng, d))),
        _ => Regex::Optional(b(relation(rng, d))),
    }
}

fn word_regex(w: &[&str]) -> Regex {
    let mut it = w.iter().map(|s| sym(s));
    match it.next() {
        None => Regex::EmptyString,
        Some(first) => it.fold(first, |acc, s| Regex::Concat(b(acc), b(s))),
    }
}

fn random_word<'a>(rng: &mut ChaCha8Rng, symbols: &[&'a str], max_len: usize) -> Vec<&'a str> {
    let n = rng.gen_range(0..=max_len);
    (0..n).map(|_| *symbols.choose(rng).unwrap()).collect()
}

fn table() -> SymbolTable {
    let mut t = SymbolTable::new();
    for s in ["a", "b", "x", "y"] {
        t.intern(s).unwrap();
    }
    t
}

fn compile(r: &Regex, t: &mut SymbolTable, opts: ReplaceOptions) -> crate::Result<Network> {
    compile_with(r, &Definitions::new(), t, opts)
}

/// Removes the empty string from a language if present.
fn nonempty(r: Regex, t: &mut SymbolTable) -> Regex {
    let net = compile(&r, t, ReplaceOptions::default()).expect("random languages compile");
    if net.is_final(net.start()) {
        Regex::Minus(b(r), b(Regex::EmptyString))
    } else {
        r
    }
}

struct Case {
    upper: Regex,
    lower: Regex,
}

#[derive(Debug, Default)]
pub(super) struct CorpusOutcome {
    pub rules: usize,
    pub comparisons: usize,
    pub mismatch: Option<String>,
    pub ambiguous: Option<String>,
}

fn run_cases(cases: &[Case], opts: ReplaceOptions) -> CorpusOutcome {
    let mut t = table();
    let ab = [t.lookup("a").unwrap(), t.lookup("b").unwrap()];
    let inputs = all_words(&ab, 7);
    let mut out = CorpusOutcome::default();
    for case in cases {
        let upper = compile(&case.upper, &mut t, ReplaceOptions::default()).expect("random languages compile");
        let lower = compile(&case.lower, &mut t, ReplaceOptions::default()).expect("words compile");
        for (dir, len) in MODES {
            let rule = Rule { upper: case.upper.clone(), arrow: Arrow::Directed(dir, len), rhs: Rhs::Lower(b(case.lower.clone())) };
            let ast = Regex::Replace { rules: vec![rule], context: None };
            let net = match compile(&ast, &mut t, opts) {
                Ok(n) => n,
                Err(e) => {
                    out.mismatch.get_or_insert_with(|| format!("{ast}: {e}"));
                    continue;
                }
            };
            out.rules += 1;
            let spec = ReplaceSpec::new(upper.clone(), Action::Lower(lower.clone()), dir, len);
            for w in &inputs {
                let got = apply_down_word(&net, &t, w, 4);
                let expected = oracle::rewrite(&spec, w, 4).expect("singleton lowers");
                out.comparisons += 1;
                if got != expected && out.mismatch.is_none() {
                    let show = |s: &std::collections::BTreeSet<Word>| s.iter().map(|o| t.display(o).to_string()).collect::<Vec<_>>();
                    out.mismatch = Some(format!("{ast} on {:?}: got {:?}, expected {:?}", t.display(w).to_string(), show(&got), show(&expected)));
                }
                if got.len() != 1 && out.ambiguous.is_none() {
                    out.ambiguous = Some(format!("{ast} on {:?}: {} outputs", t.display(w).to_string(), got.len()));
                }
            }
        }
    }
    out
}

pub(super) fn replace_corpus(opts: ReplaceOptions) -> CorpusOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    let mut t = table();
    let cases: Vec<Case> = (0..200)
        .map(|_| {
            let upper = nonempty(language(&mut rng, 4), &mut t);
            let lower = word_regex(&random_word(&mut rng, &["a", "b", "x"], 2));
            Case { upper, lower }
        })
        .collect();
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(16);
    let chunk = cases.len().div_ceil(workers);
    let parts: Vec<CorpusOutcome> = thread::scope(|s| {
        let handles: Vec<_> = cases.chunks(chunk).map(|c| s.spawn(move || run_cases(c, opts))).collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut total = CorpusOutcome::default();
    for p in parts {
        total.rules += p.rules;
        total.comparisons += p.comparisons;
        if total.mismatch.is_none() {
            total.mismatch = p.mismatch;
        }
        if total.ambiguous.is_none() {
            total.ambiguous = p.ambiguous;
        }
    }
    total
}

struct Laws<'a> {
    table: &'a SymbolTable,
    alphabet: Vec<SymbolId>,
    checked: usize,
}

impl Laws<'_> {
    fn same(&mut self, law: &str, x: &Network, y: &Network, max_len: usize) -> Result<(), String> {
        self.checked += 1;
        let report = assert_equivalent(x, y, &self.alphabet, max_len);
        if report.equivalent() {
            return Ok(());
        }
        let (u, l) = report.counterexamples().next().expect("non-equivalent reports carry a counterexample");
        Err(format!("{law}: differs on {}:{}", self.table.display(u), self.table.display(l)))
    }
}

pub(super) fn algebra(_: &Ctx) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0011);
    let mut t = table();
    let probe = t.intern("z").unwrap();
    let (a, b_) = (t.lookup("a").unwrap(), t.lookup("b").unwrap());
    let opts = ReplaceOptions::default();
    let mut langs = Vec::new();
    let mut rels = Vec::new();
    for _ in 0..20 {
        langs.push(compile(&language(&mut rng, 3), &mut t, opts).map_err(err)?);
        rels.push(compile(&relation(&mut rng, 3), &mut t, opts).map_err(err)?);
    }
    let ab_star = compile(&Regex::Star(b(Regex::Union(b(sym("a")), b(sym("b"))))), &mut t, opts).map_err(err)?;
    let no_other = compile(
        &Regex::Complement(b(Regex::Contains(b(Regex::Minus(b(Regex::Any), b(Regex::Union(b(sym("a")), b(sym("b"))))))))),
        &mut t,
        opts,
    )
    .map_err(err)?;
    let mut laws = Laws { table: &t, alphabet: vec![a, b_, probe], checked: 0 };
    let sigma_of = |n: &Network| n.sigma().clone();
    for i in 0..langs.len() {
        let (x, y, z) = (&langs[i], &langs[(i + 1) % langs.len()], &langs[(i + 2) % langs.len()]);
        laws.same("union commutes", &x.union(y), &y.union(x), 5)?;
        laws.same("concatenation associates", &x.concat(y).concat(z), &x.concat(&y.concat(z)), 5)?;
        laws.same("star is idempotent", &x.star().star(), &x.star(), 5)?;
        let not = |n: &Network| n.complement().map_err(err);
        laws.same("complement of union", &not(&x.union(y))?, &not(x)?.intersect(&not(y)?).map_err(err)?, 5)?;
        laws.same("complement of intersection", &not(&x.intersect(y).map_err(err)?)?, &not(x)?.union(&not(y)?), 5)?;
        if !x.union(y).minimize().is_isomorphic(&y.union(x).minimize()) {
            return Err("equal languages minimize to different networks".into());
        }
        let joined: std::collections::BTreeSet<_> = sigma_of(x).union(&sigma_of(y)).copied().collect();
        for (op, n) in [("union", x.union(y)), ("concatenation", x.concat(y)), ("composition", x.compose(y))] {
            if sigma_of(&n) != joined {
                return Err(format!("{op} changed sigma"));
            }
        }
    }
    laws.alphabet = vec![a, b_];
    for i in 0..rels.len() {
        let (x, y, z) = (&rels[i], &rels[(i + 1) % rels.len()], &rels[(i + 2) % rels.len()]);
        laws.same("determinize preserves the relation", x, &x.determinize(), 5)?;
        laws.same("minimize preserves the relation", x, &x.minimize(), 5)?;
        laws.same("composition associates", &x.compose(y).compose(z), &x.compose(&y.compose(z)), 4)?;
        laws.same("inverse is an involution", x, &x.inverse().inverse(), 5)?;
        let upper = x.project(Side::Upper);
        let via_pairs: std::collections::BTreeSet<Word> = enumerate_relation(x, &laws.alphabet, 4).into_iter().map(|(u, _)| u).collect();
        for u in via_pairs {
            if !oracle::accepts(&upper, &u) {
                return Err(format!("upper projection misses {}", t.display(&u)));
            }
        }
    }
    if !ab_star.is_isomorphic(&no_other) {
        return Err("[a|b]* and ~$[? - [a|b]] minimize differently".into());
    }
    Ok(format!("{} law instances", laws.checked))
}

/// Reads `expected` at `out[*cursor..]`, advancing the cursor.
fn strip(out: &[SymbolId], cursor: &mut usize, expected: &[SymbolId]) -> bool {
    if out[*cursor..].starts_with(expected) {
        *cursor += expected.len();
        true
    } else {
        false
    }
}

pub(super) fn markup_inverse(ctx: &Ctx) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0012);
    let mut t = table();
    let opts = ctx.opts;
    let id = |t: &SymbolTable, s: &str| t.lookup(s).unwrap();
    let inputs: Vec<Word> = (0..500)
        .map(|_| random_word(&mut rng, &["a", "b", "x"], 10).iter().map(|s| id(&t, s)).collect())
        .collect();
    for _ in 0..50 {
        let upper = nonempty(language(&mut rng, 3), &mut t);
        let prefix = random_word(&mut rng, &["x", "y"], 2);
        let suffix = random_word(&mut rng, &["x", "y"], 2);
        let (dir, len) = *MODES.choose(&mut rng).unwrap();
        let side = |w: &[&str]| (!w.is_empty()).then(|| b(word_regex(w)));
        let rule = Rule {
            upper: upper.clone(),
            arrow: Arrow::Directed(dir, len),
            rhs: Rhs::Markup { prefix: side(&prefix), suffix: side(&suffix) },
        };
        let ast = Regex::Replace { rules: vec![rule], context: None };
        let net = compile(&ast, &mut t, opts).map_err(|e| format!("{ast}: {e}"))?;
        let upper_net = compile(&upper, &mut t, opts).map_err(err)?;
        let p: Word = prefix.iter().map(|s| id(&t, s)).collect();
        let s: Word = suffix.iter().map(|s| id(&t, s)).collect();
        for w in &inputs {
            let outs = apply_down_word(&net, &t, w, 2);
            let [out] = outs.iter().collect::<Vec<_>>()[..] else {
                return Err(format!("{ast} on {}: {} outputs", t.display(w), outs.len()));
            };
            let spans = oracle::match_spans(&upper_net, w, dir, len).map_err(err)?;
            let mut cursor = 0;
            let mut recovered = Word::new();
            let mut ok = true;
            for span in spans {
                ok &= !span.matched || strip(out, &mut cursor, &p);
                let n = span.end - span.start;
                ok &= cursor + n <= out.len();
                if !ok {
                    break;
                }
                recovered.extend_from_slice(&out[cursor..cursor + n]);
                cursor += n;
                ok &= !span.matched || strip(out, &mut cursor, &s);
            }
            if !ok || cursor != out.len() || &recovered != w {
                return Err(format!("{ast} on {}: output {} does not strip back", t.display(w), t.display(out)));
            }
        }
    }
    Ok("50 rules x 500 inputs".into())
}
