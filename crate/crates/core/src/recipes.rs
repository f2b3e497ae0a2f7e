//! Rule files shipped with the crate.

pub const TOKENIZER: &str = include_str!("../../../recipes/tokenizer.fsc");
pub const FILTER_NEG: &str = include_str!("../../../recipes/filter_neg.fsc");
pub const FILTER_POS: &str = include_str!("../../../recipes/filter_pos.fsc");
pub const NP_VP: &str = include_str!("../../../recipes/np_vp.fsc");
pub const PARALLEL_AB: &str = include_str!("../../../recipes/parallel_ab.fsc");

/// `(file name, source)` of every recipe.
pub const ALL: &[(&str, &str)] = &[
    ("tokenizer.fsc", TOKENIZER),
    ("filter_neg.fsc", FILTER_NEG),
    ("filter_pos.fsc", FILTER_POS),
    ("np_vp.fsc", NP_VP),
    ("parallel_ab.fsc", PARALLEL_AB),
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apply::{apply_down, apply_down_text, output_names, tokenize_input};
    use crate::regex::load_program;
    use crate::SymbolTable;

    #[test]
    fn every_recipe_compiles() {
        for (name, src) in ALL {
            let mut t = SymbolTable::new();
            load_program(src, &mut t).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn np_vp_brackets_symbols() {
        let mut t = SymbolTable::new();
        let (_, net) = load_program(NP_VP, &mut t).unwrap();
        let input = tokenize_input(&net, &t, "dannvaan");
        let out = apply_down(&net, &input, 5);
        assert_eq!(out.outputs.len(), 1);
        assert_eq!(output_names(&out.outputs[0], &input, &t).join(" "), "[NP d a n n ] [VP v [NP a a n ] ]");
    }

    #[test]
    fn filters() {
        let line = "<B>one</B><A>two</A><C>three</C><A>four</A>";
        let mut t = SymbolTable::new();
        let (_, pos) = load_program(FILTER_POS, &mut t).unwrap();
        assert_eq!(apply_down_text(&pos, &t, line, 5), vec!["<A>two</A><A>four</A>"]);
        let (_, neg) = load_program(FILTER_NEG, &mut t).unwrap();
        assert_eq!(apply_down_text(&neg, &t, line, 5), vec!["<B>one</B><C>three</C>"]);
    }

    #[test]
    fn tokenizer_keeps_multiwords() {
        let mut t = SymbolTable::new();
        let (_, net) = load_program(TOKENIZER, &mut t).unwrap();
        let out = apply_down_text(&net, &t, "we are at  least here", 5);
        assert_eq!(out, vec!["weEND_OF_TOKENareEND_OF_TOKENat leastEND_OF_TOKENhereEND_OF_TOKEN"]);
    }
}
