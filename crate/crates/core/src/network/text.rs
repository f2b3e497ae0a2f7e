//! Line-oriented text serialization.
//!
//! ```text
//! #fsc1 sigma=a,b,x
//! 0 1 a x
//! 1
//! ```
//!
//! One arc per line as `src<TAB>dst<TAB>upper<TAB>lower`, one final state per
//! line as `state<TAB>`. State 0 is the start state. Epsilon is spelled `@0@`
//! and the unknown symbol `@?@`. Backslash, tab, newline and comma inside
//! symbol names are backslash-escaped.

use std::collections::BTreeSet;
use std::fmt::Write;

use super::{Arc, Network};
use crate::alphabet::{SymbolId, SymbolTable};
use crate::error::{Error, Result};

pub const HEADER: &str = "#fsc1";

pub(crate) fn escape(name: &str) -> String {
    let mut out = String::with_capacity(name.len());
    for c in name.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\t' => out.push_str("\\t"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            ',' => out.push_str("\\,"),
            c => out.push(c),
        }
    }
    out
}

pub(crate) fn unescape(s: &str, line: usize) -> Result<String> {
    let mut out = String::with_capacity(s.len());
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some('\\') => out.push('\\'),
            Some('t') => out.push('\t'),
            Some('n') => out.push('\n'),
            Some('r') => out.push('\r'),
            Some(',') => out.push(','),
            other => {
                return Err(Error::Format { line, message: format!("bad escape `\\{}`", other.unwrap_or(' ')) })
            }
        }
    }
    Ok(out)
}

/// Splits the sigma list on unescaped commas.
fn split_sigma(list: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let bytes = list.as_bytes();
    let (mut begin, mut i) = (0, 0);
    while i < bytes.len() {
        match bytes[i] {
            b'\\' => i += 2,
            b',' => {
                parts.push(&list[begin..i]);
                i += 1;
                begin = i;
            }
            _ => i += 1,
        }
    }
    if begin < list.len() {
        parts.push(&list[begin..]);
    }
    parts
}

pub fn to_text(net: &Network, table: &SymbolTable) -> String {
    let net = net.trim();
    let sigma: Vec<String> = net.sigma().iter().map(|&s| escape(table.name(s))).collect();
    let mut out = format!("{HEADER} sigma={}\n", sigma.join(","));
    for s in 0..net.num_states() {
        for a in net.arcs(s) {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}",
                s,
                a.target,
                escape(table.name(a.upper)),
                escape(table.name(a.lower))
            );
        }
    }
    for s in 0..net.num_states() {
        if net.is_final(s) {
            let _ = writeln!(out, "{s}\t");
        }
    }
    out
}

fn symbol(table: &mut SymbolTable, raw: &str, line: usize) -> Result<SymbolId> {
    let name = unescape(raw, line)?;
    if let Some(id) = table.lookup_any(&name) {
        return Ok(id);
    }
    table.intern(&name).map_err(|e| Error::Format { line, message: e.to_string() })
}

pub fn from_text(text: &str, table: &mut SymbolTable) -> Result<Network> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(Error::Format { line: 1, message: "empty input".into() })?;
    let rest = header
        .strip_prefix(HEADER)
        .and_then(|r| r.strip_prefix(" sigma="))
        .ok_or(Error::Format { line: 1, message: format!("expected `{HEADER} sigma=...` header") })?;
    let mut sigma = BTreeSet::new();
    for part in split_sigma(rest) {
        sigma.insert(symbol(table, part, 1)?);
    }
    let mut net = Network::with_states(1);
    let parse_state = |s: &str, line: usize| -> Result<usize> {
        s.parse::<usize>().map_err(|_| Error::Format { line, message: format!("bad state `{s}`") })
    };
    for (i, l) in lines {
        let line = i + 1;
        if l.is_empty() {
            continue;
        }
        let fields: Vec<&str> = l.split('\t').collect();
        match fields.as_slice() {
            [state, ""] => {
                let s = parse_state(state, line)?;
                while net.num_states() <= s {
                    net.add_state();
                }
                net.set_final(s, true);
            }
            [src, dst, upper, lower] => {
                let (s, d) = (parse_state(src, line)?, parse_state(dst, line)?);
                while net.num_states() <= s.max(d) {
                    net.add_state();
                }
                let (u, w) = (symbol(table, upper, line)?, symbol(table, lower, line)?);
                net.push_arc(s, Arc::new(u, w, d));
            }
            _ => return Err(Error::Format { line, message: "expected 2 or 4 tab-separated fields".into() }),
        }
    }
    net.extend_sigma(sigma);
    Ok(net.finish())
}
