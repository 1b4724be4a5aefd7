//! Property tests over the syntax layer: the lexer is lossless and the
//! tolerant parser is total with well-nested spans on arbitrary input.

use proptest::prelude::*;
use smelter_core::syntax::{
    desugar_pipes_tolerant, parse_source, tokenize, Mode, Node, SyntaxTree,
};

fn assert_containment(node: &Node) {
    for child in &node.children {
        assert!(node.span.contains(&child.span));
        assert_containment(child);
    }
}

fn tree_containment(tree: &SyntaxTree) {
    for n in &tree.root {
        assert_containment(n);
    }
}

/// Strings biased towards Elixir-looking fragments.
fn source_strategy() -> impl Strategy<Value = String> {
    let token = prop_oneof![
        Just("defmodule".to_string()),
        Just("def".to_string()),
        Just("do".to_string()),
        Just("end".to_string()),
        Just("fn".to_string()),
        Just("->".to_string()),
        Just("|>".to_string()),
        Just("case".to_string()),
        Just("%{".to_string()),
        Just("}".to_string()),
        Just("(".to_string()),
        Just(")".to_string()),
        Just("[".to_string()),
        Just("]".to_string()),
        Just(",".to_string()),
        Just("\n".to_string()),
        Just(" ".to_string()),
        Just("\"str\"".to_string()),
        Just(":atom".to_string()),
        Just("@attr".to_string()),
        Just("1.5".to_string()),
        Just("x".to_string()),
        Just("Mod".to_string()),
        Just("+".to_string()),
        Just("=".to_string()),
        Just("# note".to_string()),
    ];
    prop::collection::vec(token, 0..60).prop_map(|v| v.join(""))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn lexing_is_lossless_on_any_string(src in "\\PC*") {
        let (tokens, _) = tokenize(&src);
        let mut cursor = 0usize;
        let mut rebuilt = String::new();
        for t in &tokens {
            let gap = &src[cursor..t.byte_start];
            prop_assert!(gap.chars().all(char::is_whitespace));
            rebuilt.push_str(gap);
            rebuilt.push_str(&t.text);
            cursor = t.byte_end;
        }
        rebuilt.push_str(&src[cursor..]);
        prop_assert_eq!(rebuilt, src);
    }

    #[test]
    fn tolerant_parse_is_total_on_any_string(src in "\\PC*") {
        let (tree, _diags) = parse_source(&src, Mode::Tolerant).unwrap();
        tree_containment(&tree);
    }

    #[test]
    fn tolerant_parse_is_total_on_token_soup(src in source_strategy()) {
        let (tree, _diags) = parse_source(&src, Mode::Tolerant).unwrap();
        tree_containment(&tree);
        // Desugaring is idempotent and leaves no pipes behind.
        let (once, _) = desugar_pipes_tolerant(&tree);
        let (twice, _) = desugar_pipes_tolerant(&once);
        prop_assert_eq!(&once, &twice);
        prop_assert_eq!(smelter_core::syntax::count_pipes(&once), 0);
    }
}
