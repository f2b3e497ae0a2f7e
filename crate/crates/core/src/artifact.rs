//! Compiled rule files on disk.
//!
//! ```text
//! #fsc-artifact 1
//! #source-hash 9f86d0...
//! #symbols 2
//! a
//! END_OF_TOKEN
//! #fsc1 sigma=...
//! ...
//! ```
//!
//! The symbol section lists user symbols in id order; the network section is
//! the plain network text format.

use std::fs;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::alphabet::SymbolTable;
use crate::error::{Error, Result};
use crate::network::text::{escape, unescape};
use crate::network::{from_text, to_text, Network};
use crate::regex::load_program_with;
use crate::replace::ReplaceOptions;

const HEADER: &str = "#fsc-artifact 1";

#[derive(Clone, Debug)]
pub struct CompiledArtifact {
    pub table: SymbolTable,
    pub network: Network,
    /// Hex SHA-256 of the rule file the network was compiled from.
    pub source_hash: String,
}

pub fn source_hash(src: &str) -> String {
    hex::encode(Sha256::digest(src.as_bytes()))
}

impl CompiledArtifact {
    pub fn compile(src: &str) -> Result<Self> {
        Self::compile_with(src, ReplaceOptions::default())
    }

    pub fn compile_with(src: &str, opts: ReplaceOptions) -> Result<Self> {
        let mut table = SymbolTable::new();
        let (_, network) = load_program_with(src, &mut table, opts)?;
        Ok(CompiledArtifact { table, network, source_hash: source_hash(src) })
    }

    pub fn to_text(&self) -> String {
        let symbols: Vec<&str> = self.table.user_symbols().map(|(_, n)| n).collect();
        let mut out = format!("{HEADER}\n#source-hash {}\n#symbols {}\n", self.source_hash, symbols.len());
        for s in symbols {
            out.push_str(&escape(s));
            out.push('\n');
        }
        out.push_str(&to_text(&self.network, &self.table));
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let bad = |line: usize, message: &str| Error::Format { line, message: message.into() };
        let mut lines = text.split_inclusive('\n');
        let mut next = |n: usize| lines.next().map(|l| l.trim_end_matches('\n')).ok_or_else(|| bad(n, "truncated artifact"));
        if next(1)? != HEADER {
            return Err(bad(1, "not an fsc artifact"));
        }
        let source_hash = next(2)?.strip_prefix("#source-hash ").ok_or_else(|| bad(2, "expected `#source-hash`"))?.to_string();
        let count: usize = next(3)?
            .strip_prefix("#symbols ")
            .and_then(|c| c.parse().ok())
            .ok_or_else(|| bad(3, "expected `#symbols N`"))?;
        let mut table = SymbolTable::new();
        for i in 0..count {
            let line = 4 + i;
            let name = unescape(next(line)?, line)?;
            table.intern(&name).map_err(|e| bad(line, &e.to_string()))?;
        }
        let consumed: usize = text.split_inclusive('\n').take(3 + count).map(str::len).sum();
        let network = from_text(&text[consumed..], &mut table).map_err(|e| match e {
            Error::Format { line, message } => Error::Format { line: line + 3 + count, message },
            e => e,
        })?;
        Ok(CompiledArtifact { table, network, source_hash })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_text(&fs::read_to_string(path)?)
    }
}
