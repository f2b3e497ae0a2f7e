//! Running transducers on strings and line streams.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::io::{BufRead, Write};

use crate::alphabet::{SymbolId, SymbolTable};
use crate::error::{Error, Result};
use crate::network::Network;
use crate::Word;

/// One input position: a symbol of the network's sigma, or raw text that only
/// `OTHER` arcs can read.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InputItem {
    Known(SymbolId),
    Other(String),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InputTokenization {
    pub items: Vec<InputItem>,
}

impl InputTokenization {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// The raw text the tokenization was built from.
    pub fn render(&self, table: &SymbolTable) -> String {
        self.items
            .iter()
            .map(|i| match i {
                InputItem::Known(s) => table.name(*s).to_string(),
                InputItem::Other(t) => t.clone(),
            })
            .collect()
    }

    /// Positions bound to `OTHER`.
    pub fn other_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.items.iter().enumerate().filter(|(_, i)| matches!(i, InputItem::Other(_))).map(|(k, _)| k)
    }
}

/// Greedy longest-match segmentation of `text` into symbols of `net`'s sigma.
/// Characters that start no symbol become single-character `OTHER` items.
pub fn tokenize_input(net: &Network, table: &SymbolTable, text: &str) -> InputTokenization {
    let names: HashMap<&str, SymbolId> = net
        .sigma()
        .iter()
        .filter(|s| s.0 >= SymbolId::RESERVED)
        .map(|&s| (table.name(s), s))
        .collect();
    let max_chars = names.keys().map(|n| n.chars().count()).max().unwrap_or(1);
    let mut items = Vec::new();
    let mut rest = text;
    while !rest.is_empty() {
        let ends: Vec<usize> = rest
            .char_indices()
            .skip(1)
            .map(|(i, _)| i)
            .chain(std::iter::once(rest.len()))
            .take(max_chars)
            .collect();
        let hit = ends.iter().rev().find_map(|&e| names.get(&rest[..e]).map(|&s| (e, s)));
        match hit {
            Some((e, s)) => {
                items.push(InputItem::Known(s));
                rest = &rest[e..];
            }
            None => {
                let e = ends[0];
                items.push(InputItem::Other(rest[..e].to_string()));
                rest = &rest[e..];
            }
        }
    }
    InputTokenization { items }
}

/// Tokenization of an already-symbolized word: ids outside sigma are bound to `OTHER`.
pub fn tokenize_word(net: &Network, table: &SymbolTable, w: &[SymbolId]) -> InputTokenization {
    let items = w
        .iter()
        .map(|&s| {
            if net.sigma().contains(&s) {
                InputItem::Known(s)
            } else {
                InputItem::Other(table.name(s).to_string())
            }
        })
        .collect();
    InputTokenization { items }
}

/// One output position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OutputSymbol {
    Symbol(SymbolId),
    /// Copy of the `OTHER`-bound input at this position.
    Echo(usize),
    /// Some symbol outside sigma, not tied to the input.
    AnyOther,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Applied {
    pub outputs: Vec<Vec<OutputSymbol>>,
    /// More outputs exist: the limit was hit or an output-producing cycle was cut.
    pub truncated: bool,
}

fn reads(item: &InputItem, upper: SymbolId) -> bool {
    match item {
        InputItem::Known(s) => upper == *s,
        InputItem::Other(_) => upper.is_unknown(),
    }
}

/// States from which `items[pos..]` can be read to a final state, per position.
fn viable_states(net: &Network, items: &[InputItem]) -> Vec<Vec<bool>> {
    let n = items.len();
    let states = net.num_states();
    let mut viable = vec![vec![false; states]; n + 1];
    for pos in (0..=n).rev() {
        let mut cur = vec![false; states];
        for (q, flag) in cur.iter_mut().enumerate() {
            *flag = if pos == n {
                net.is_final(q)
            } else {
                net.arcs(q).iter().any(|a| a.upper != SymbolId::EPSILON && reads(&items[pos], a.upper) && viable[pos + 1][a.target])
            };
        }
        loop {
            let mut changed = false;
            for q in 0..states {
                if !cur[q] && net.arcs(q).iter().any(|a| a.upper == SymbolId::EPSILON && cur[a.target]) {
                    cur[q] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        viable[pos] = cur;
    }
    viable
}

struct Walk<'a> {
    net: &'a Network,
    items: &'a [InputItem],
    viable: Vec<Vec<bool>>,
    on_path: HashSet<(usize, usize)>,
    buf: Vec<OutputSymbol>,
    found: BTreeSet<Vec<OutputSymbol>>,
    limit: usize,
    cut_cycle: bool,
}

impl Walk<'_> {
    fn run(&mut self, q: usize, pos: usize) {
        if self.found.len() > self.limit {
            return;
        }
        if pos == self.items.len() && self.net.is_final(q) {
            self.found.insert(self.buf.clone());
        }
        // an epsilon-input cycle would revisit (state, position) without progress
        if !self.on_path.insert((q, pos)) {
            self.cut_cycle = true;
            return;
        }
        for a in self.net.arcs(q) {
            let next_pos = if a.upper == SymbolId::EPSILON {
                pos
            } else if pos < self.items.len() && reads(&self.items[pos], a.upper) {
                pos + 1
            } else {
                continue;
            };
            if !self.viable[next_pos][a.target] {
                continue;
            }
            let out = match (a.upper, a.lower) {
                (_, SymbolId::EPSILON) => None,
                (SymbolId::OTHER, SymbolId::OTHER) => Some(OutputSymbol::Echo(pos)),
                (_, l) if l.is_unknown() => Some(OutputSymbol::AnyOther),
                (_, l) => Some(OutputSymbol::Symbol(l)),
            };
            if let Some(o) = out {
                self.buf.push(o);
            }
            self.run(a.target, next_pos);
            if out.is_some() {
                self.buf.pop();
            }
        }
        self.on_path.remove(&(q, pos));
    }
}

/// All distinct outputs of `net` for `input` matched on the upper side, in sorted
/// order, at most `limit` of them.
pub fn apply_down(net: &Network, input: &InputTokenization, limit: usize) -> Applied {
    let limit = limit.max(1);
    let viable = viable_states(net, &input.items);
    let mut walk = Walk {
        net,
        items: &input.items,
        viable,
        on_path: HashSet::new(),
        buf: Vec::new(),
        found: BTreeSet::new(),
        limit,
        cut_cycle: false,
    };
    if walk.viable[0][net.start()] {
        walk.run(net.start(), 0);
    }
    let truncated = walk.found.len() > limit || walk.cut_cycle;
    Applied { outputs: walk.found.into_iter().take(limit).collect(), truncated }
}

/// Runs the inverse transducer: `input` is matched on the lower side.
pub fn apply_up(net: &Network, input: &InputTokenization, limit: usize) -> Applied {
    apply_down(&net.inverse(), input, limit)
}

/// Spellings used when printing outputs; unmapped symbols print their own name.
#[derive(Clone, Debug, Default)]
pub struct RenderMap {
    map: HashMap<String, String>,
}

impl RenderMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, symbol: impl Into<String>, text: impl Into<String>) {
        self.map.insert(symbol.into(), text.into());
    }

    /// Parses `SYM=text`, with `\n`, `\t` and `\\` escapes in the text.
    pub fn parse_entry(&mut self, entry: &str) -> Option<()> {
        let (sym, text) = entry.split_once('=')?;
        let mut out = String::new();
        let mut chars = text.chars();
        while let Some(c) = chars.next() {
            if c == '\\' {
                match chars.next() {
                    Some('n') => out.push('\n'),
                    Some('t') => out.push('\t'),
                    Some(o) => out.push(o),
                    None => out.push('\\'),
                }
            } else {
                out.push(c);
            }
        }
        self.insert(sym, out);
        Some(())
    }

    fn get(&self, name: &str) -> Option<&str> {
        self.map.get(name).map(String::as_str)
    }
}

pub fn render(output: &[OutputSymbol], input: &InputTokenization, table: &SymbolTable, map: &RenderMap) -> String {
    let mut s = String::new();
    for o in output {
        match o {
            OutputSymbol::Symbol(id) => {
                let name = table.name(*id);
                s.push_str(map.get(name).unwrap_or(name));
            }
            OutputSymbol::Echo(k) => match &input.items[*k] {
                InputItem::Other(t) => s.push_str(t),
                InputItem::Known(id) => s.push_str(table.name(*id)),
            },
            OutputSymbol::AnyOther => s.push('?'),
        }
    }
    s
}

/// Output spellings, one `Vec` entry per output symbol.
pub fn output_names(output: &[OutputSymbol], input: &InputTokenization, table: &SymbolTable) -> Vec<String> {
    output
        .iter()
        .map(|o| render(std::slice::from_ref(o), input, table, &RenderMap::default()))
        .collect()
}

/// Convenience wrapper: tokenizes `text`, applies `net` and renders each output by name.
pub fn apply_down_text(net: &Network, table: &SymbolTable, text: &str, limit: usize) -> Vec<String> {
    let input = tokenize_input(net, table, text);
    apply_down(net, &input, limit)
        .outputs
        .iter()
        .map(|o| render(o, &input, table, &RenderMap::default()))
        .collect()
}

/// Applies `net` to a symbol word. Echoed inputs come back as the input id;
/// unconstrained unknown outputs are reported as [`SymbolId::OTHER`].
pub fn apply_down_word(net: &Network, table: &SymbolTable, w: &[SymbolId], limit: usize) -> BTreeSet<Word> {
    let input = tokenize_word(net, table, w);
    apply_down(net, &input, limit)
        .outputs
        .into_iter()
        .map(|out| {
            out.into_iter()
                .map(|o| match o {
                    OutputSymbol::Symbol(s) => s,
                    OutputSymbol::Echo(k) => w[k],
                    OutputSymbol::AnyOther => SymbolId::OTHER,
                })
                .collect()
        })
        .collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StreamStats {
    pub chunks: usize,
    pub symbols_in: usize,
    pub symbols_out: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StreamMode {
    Down,
    Up,
}

/// Transduces `reader` line by line. Every line must have exactly one output.
pub fn transduce_stream(
    net: &Network,
    table: &SymbolTable,
    reader: impl BufRead,
    writer: impl Write,
    map: &RenderMap,
) -> Result<StreamStats> {
    transduce_stream_with(net, table, reader, writer, map, StreamMode::Down)
}

pub fn transduce_stream_with(
    net: &Network,
    table: &SymbolTable,
    mut reader: impl BufRead,
    mut writer: impl Write,
    map: &RenderMap,
    mode: StreamMode,
) -> Result<StreamStats> {
    let inverse;
    let net = match mode {
        StreamMode::Down => net,
        StreamMode::Up => {
            inverse = net.inverse();
            &inverse
        }
    };
    let mut stats = StreamStats::default();
    let mut line = String::new();
    loop {
        line.clear();
        if reader.read_line(&mut line)? == 0 {
            break;
        }
        let (body, eol) = split_eol(&line);
        let input = tokenize_input(net, table, body);
        let applied = apply_down(net, &input, 2);
        stats.chunks += 1;
        match applied.outputs.len() {
            0 => return Err(Error::NoOutput { chunk: stats.chunks }),
            1 => {}
            count => return Err(Error::AmbiguousOutput { chunk: stats.chunks, count }),
        }
        let out = &applied.outputs[0];
        stats.symbols_in += input.len();
        stats.symbols_out += out.len();
        writer.write_all(render(out, &input, table, map).as_bytes())?;
        writer.write_all(eol.as_bytes())?;
    }
    writer.flush()?;
    Ok(stats)
}

fn split_eol(line: &str) -> (&str, &str) {
    if let Some(body) = line.strip_suffix("\r\n") {
        (body, "\r\n")
    } else if let Some(body) = line.strip_suffix('\n') {
        (body, "\n")
    } else {
        (line, "")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table_with(names: &[&str]) -> (SymbolTable, Vec<SymbolId>) {
        let mut t = SymbolTable::new();
        let ids = names.iter().map(|n| t.intern(n).unwrap()).collect();
        (t, ids)
    }

    #[test]
    fn greedy_tokenization_prefers_longest_symbol() {
        let (t, ids) = table_with(&["ab", "a", "b"]);
        let net = Network::symbol_set(&ids);
        let tok = tokenize_input(&net, &t, "ab");
        assert_eq!(tok.items, vec![InputItem::Known(ids[0])]);
        let tok = tokenize_input(&net, &t, "aba");
        assert_eq!(tok.items, vec![InputItem::Known(ids[0]), InputItem::Known(ids[1])]);
    }

    #[test]
    fn unknown_characters_bind_to_other() {
        let (t, ids) = table_with(&["<A>", "</A>"]);
        let net = Network::symbol_set(&ids);
        let tok = tokenize_input(&net, &t, "<A>x</A>");
        assert_eq!(
            tok.items,
            vec![InputItem::Known(ids[0]), InputItem::Other("x".into()), InputItem::Known(ids[1])]
        );
        assert_eq!(tok.render(&t), "<A>x</A>");
        assert_eq!(tok.other_positions().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn tokenization_handles_multibyte_text() {
        let (t, ids) = table_with(&["é", "de plus"]);
        let net = Network::symbol_set(&ids);
        let tok = tokenize_input(&net, &t, "ü de plusé");
        assert_eq!(tok.render(&t), "ü de plusé");
        assert_eq!(tok.items[2], InputItem::Known(ids[1]));
        assert_eq!(tok.items[3], InputItem::Known(ids[0]));
    }

    #[test]
    fn apply_inverse_of_pair() {
        let (t, ids) = table_with(&["a", "x"]);
        let net = Network::atom(ids[0], ids[1]);
        assert_eq!(apply_down_text(&net, &t, "a", 5), vec!["x"]);
        let up = apply_up(&net, &tokenize_input(&net, &t, "x"), 5);
        assert_eq!(up.outputs, vec![vec![OutputSymbol::Symbol(ids[0])]]);
        assert!(apply_up(&net, &tokenize_input(&net, &t, "a"), 5).outputs.is_empty());
    }

    #[test]
    fn truncation_is_flagged() {
        let (t, ids) = table_with(&["a", "x", "y", "z"]);
        let lower = Network::symbol_set(&ids[1..]);
        let net = Network::symbol(ids[0]).crossproduct(&lower).unwrap();
        let input = tokenize_input(&net, &t, "a");
        let applied = apply_down(&net, &input, 2);
        assert_eq!(applied.outputs.len(), 2);
        assert!(applied.truncated);
    }

    #[test]
    fn epsilon_output_cycles_terminate() {
        let (t, ids) = table_with(&["a", "x"]);
        // 0 --0:x--> 0 loop, plus a:a to final
        let net = Network::raw(2, 0, &[(0, 0, SymbolId::EPSILON, ids[1]), (0, 1, ids[0], ids[0])], &[1], ids.clone());
        let applied = apply_down(&net, &tokenize_input(&net, &t, "a"), 3);
        assert_eq!(applied.outputs.len(), 1);
        assert!(applied.truncated);
    }

    #[test]
    fn empty_stream_has_zero_stats() {
        let (t, ids) = table_with(&["a"]);
        let net = Network::symbol(ids[0]).star();
        let mut out = Vec::new();
        let stats = transduce_stream(&net, &t, &b""[..], &mut out, &RenderMap::new()).unwrap();
        assert_eq!(stats, StreamStats::default());
        assert!(out.is_empty());
    }

    #[test]
    fn ambiguous_stream_chunk_is_an_error() {
        let (t, ids) = table_with(&["a", "x", "y"]);
        let net = Network::symbol(ids[0]).crossproduct(&Network::symbol_set(&ids[1..])).unwrap();
        let err = transduce_stream(&net, &t, &b"a\n"[..], Vec::new(), &RenderMap::new()).unwrap_err();
        assert_eq!(err, Error::AmbiguousOutput { chunk: 1, count: 2 });
    }

    #[test]
    fn render_map_parses_escapes() {
        let mut m = RenderMap::new();
        m.parse_entry("END_OF_TOKEN=\\n").unwrap();
        assert_eq!(m.get("END_OF_TOKEN"), Some("\n"));
        assert!(m.parse_entry("novalue").is_none());
    }
}
