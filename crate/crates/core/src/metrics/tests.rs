use super::*;
use crate::model::tests::project_from;
use crate::model::{build_model, ProjectFile};
use crate::oracle::clone_index_bruteforce;
use crate::syntax::{parse_source, Mode};

const CIRCLE: &str = "defmodule Circle do\n  def area(radius) do\n     3.14 * (radius * radius)\n  end\n  def circumference(radius) do\n     2 * 3.14 * radius\n  end\nend\n";

fn metrics_for(sources: &[(&str, &str)]) -> Vec<FunctionMetrics> {
    let project = project_from(sources);
    let model = build_model(&project);
    function_metrics(&project, &model)
}

#[test]
fn circle_area_has_one_clause_one_param() {
    let ms = metrics_for(&[("circle.ex", CIRCLE)]);
    let area = ms.iter().find(|m| m.target.name == "area").unwrap();
    assert_eq!(area.param_count, 1);
    assert_eq!(area.clause_count, 1);
}

#[test]
fn zero_arity_single_clause() {
    let ms = metrics_for(&[("f.ex", "defmodule F do\n  def f, do: :ok\nend\n")]);
    assert_eq!(ms[0].param_count, 0);
    assert_eq!(ms[0].clause_count, 1);
}

#[test]
fn distinct_error_shapes_counts_case_patterns() {
    let src = "defmodule E do\n  def f(x) do\n    case x do\n      {:ok, v} -> v\n      {:error, :not_found} -> :missing\n      {:error, :timeout} -> :late\n    end\n  end\nend\n";
    let ms = metrics_for(&[("e.ex", src)]);
    assert_eq!(ms[0].distinct_error_shapes_handled, 2);
}

#[test]
fn with_else_clauses_count_as_error_shapes() {
    let src = "defmodule W do\n  def f(x) do\n    with {:ok, v} <- run(x) do\n      v\n    else\n      {:error, :bad} -> :bad\n      {:error, :worse} -> :worse\n    end\n  end\n  defp run(x), do: {:ok, x}\nend\n";
    let ms = metrics_for(&[("w.ex", src)]);
    let f = ms.iter().find(|m| m.target.name == "f").unwrap();
    assert_eq!(f.distinct_error_shapes_handled, 2);
}

#[test]
fn repeated_error_shapes_are_deduplicated() {
    let src = "defmodule D do\n  def f(x) do\n    case x do\n      {:error, _} -> :one\n      {:ok, v} -> v\n    end\n  end\nend\n";
    let ms = metrics_for(&[("d.ex", src)]);
    assert_eq!(ms[0].distinct_error_shapes_handled, 1);
}

#[test]
fn outbound_calls_group_by_module() {
    let src = "defmodule C do\n  def f(x) do\n    a = Other.one(x)\n    b = Other.two(a)\n    local(b)\n  end\n  defp local(x), do: x\nend\n";
    let ms = metrics_for(&[("c.ex", src)]);
    let f = ms.iter().find(|m| m.target.name == "f").unwrap();
    assert_eq!(f.outbound_calls_by_module.get("Other"), Some(&2));
    assert_eq!(f.outbound_calls_by_module.get("C"), Some(&1));
}

// ---------------------------------------------------------------------
// Payload size
// ---------------------------------------------------------------------

fn first_expr(src: &str) -> crate::syntax::Node {
    let (tree, _) = parse_source(src, Mode::Tolerant).unwrap();
    tree.root.into_iter().next().unwrap()
}

#[test]
fn opaque_bodies_still_yield_records_marked_partial() {
    let src = "defmodule Op do\n  def f(x) do\n    x + ???\n  end\n  def g(x), do: x\nend\n";
    let ms = metrics_for(&[("op.ex", src)]);
    assert_eq!(ms.len(), 2);
    let f = ms.iter().find(|m| m.target.name == "f").unwrap();
    assert!(f.partial);
    let g = ms.iter().find(|m| m.target.name == "g").unwrap();
    assert!(!g.partial);
}

#[test]
fn payload_size_of_atom_is_one() {
    assert_eq!(message_payload_size(&first_expr(":ok")), 1);
}

#[test]
fn payload_size_of_variable_is_one() {
    assert_eq!(message_payload_size(&first_expr("state")), 1);
}

#[test]
fn payload_size_of_three_pair_literal_map_is_seven() {
    // map node + 3 pairs of key/value leaves; pair wrappers free.
    assert_eq!(
        message_payload_size(&first_expr("%{a: 1, b: 2, c: 3}")),
        7
    );
}

// ---------------------------------------------------------------------
// Module metrics
// ---------------------------------------------------------------------

#[test]
fn unused_and_ignored_params() {
    let src = "defmodule U do\n  def f(used, unused), do: used\n  def g(_ignored), do: :ok\nend\n";
    let project = project_from(&[("u.ex", src)]);
    let model = build_model(&project);
    let mm = module_metrics(&project, &model, ClumpParams::default());
    let m = &mm[0];
    assert_eq!(m.unused_params.len(), 1);
    assert_eq!(m.unused_params[0].name, "unused");
    assert_eq!(m.unused_params[0].param_index, 1);
}

#[test]
fn guard_reads_count_as_uses() {
    let src = "defmodule G do\n  def f(x) when is_map(x), do: :ok\nend\n";
    let project = project_from(&[("g.ex", src)]);
    let model = build_model(&project);
    let mm = module_metrics(&project, &model, ClumpParams::default());
    assert!(mm[0].unused_params.is_empty());
}

#[test]
fn uncalled_private_functions_are_reported() {
    let src = "defmodule P do\n  def f(x), do: used(x)\n  defp used(x), do: x\n  defp dead(x), do: x\nend\n";
    let project = project_from(&[("p.ex", src)]);
    let model = build_model(&project);
    let mm = module_metrics(&project, &model, ClumpParams::default());
    assert_eq!(
        mm[0]
            .uncalled_private_functions
            .iter()
            .cloned()
            .collect::<Vec<_>>(),
        vec![("dead".to_string(), 1)]
    );
}

#[test]
fn data_clumps_respect_struct_cover() {
    let clumped = "defmodule DC do\n  def magnitude(x, y, z), do: x * x + y * y + z * z\n  def sum3(x, y, z), do: x + y + z\nend\n";
    let project = project_from(&[("dc.ex", clumped)]);
    let model = build_model(&project);
    let mm = module_metrics(&project, &model, ClumpParams::default());
    assert_eq!(mm[0].data_clumps.len(), 1);
    assert_eq!(mm[0].data_clumps[0].names, vec!["x", "y", "z"]);
    assert_eq!(mm[0].data_clumps[0].occurrences, 2);

    let covered = "defmodule DS do\n  defstruct [x: nil, y: nil, z: nil]\n  def magnitude(x, y, z), do: x * x + y * y + z * z\n  def sum3(x, y, z), do: x + y + z\nend\n";
    let project = project_from(&[("ds.ex", covered)]);
    let model = build_model(&project);
    let mm = module_metrics(&project, &model, ClumpParams::default());
    assert!(mm[0].data_clumps.is_empty());

    let pair_only = "defmodule DP do\n  def f(x, y), do: x + y\n  def g(x, y), do: x - y\nend\n";
    let project = project_from(&[("dp.ex", pair_only)]);
    let model = build_model(&project);
    let mm = module_metrics(&project, &model, ClumpParams::default());
    assert!(mm[0].data_clumps.is_empty(), "clump of 2 needs >= 3 names");
}

// ---------------------------------------------------------------------
// Clone detection
// ---------------------------------------------------------------------

fn file(path: &str, source: &str) -> ProjectFile {
    let (tree, diagnostics) = crate::syntax::parse_file(path, source, Mode::Tolerant).unwrap();
    ProjectFile {
        path: path.to_string(),
        tree,
        source: source.to_string(),
        diagnostics,
    }
}

const CLONE_BODY: &str = "defmodule CloneA do\n  def transform(data) do\n    first = Map.get(data, :alpha, 0)\n    second = Map.get(data, :bravo, 1)\n    third = Map.get(data, :charlie, 2)\n    {first + second, second * third, first - third, :done}\n  end\nend\n";

fn renamed_clone() -> String {
    CLONE_BODY
        .replace("CloneA", "CloneB")
        .replace("transform", "convert")
        .replace("data", "input")
        .replace("first", "uno")
        .replace("second", "dos")
        .replace("third", "tres")
}

#[test]
fn identical_bodies_in_two_files_form_one_fragment() {
    let files = vec![file("a.ex", CLONE_BODY), file("b.ex", CLONE_BODY)];
    let got = clone_index(&files, 40, true);
    assert_eq!(got.len(), 1);
    assert!(got[0].token_length >= 40);
    assert_eq!(got[0].a.0, "a.ex");
    assert_eq!(got[0].b.0, "b.ex");
}

#[test]
fn short_streams_yield_nothing() {
    let files = vec![file("a.ex", "x = 1\n")];
    assert!(clone_index(&files, 40, true).is_empty());
}

#[test]
fn renamed_clone_found_only_under_normalization() {
    let renamed = renamed_clone();
    let files = vec![file("a.ex", CLONE_BODY), file("b.ex", &renamed)];
    let normalized = clone_index(&files, 40, true);
    assert_eq!(normalized.len(), 1);
    let exact = clone_index(&files, 40, false);
    assert!(exact.is_empty());

    // Both modes agree with the brute-force oracle.
    assert_eq!(normalized, clone_index_bruteforce(&files, 40, true));
    assert_eq!(exact, clone_index_bruteforce(&files, 40, false));
}

#[test]
fn oracle_equivalence_on_overlapping_repeats() {
    // Repetitive stream: overlapping self-clones stress maximality.
    let src = "defmodule R do\n  def f(a) do\n    a = a + 1\n    a = a + 1\n    a = a + 1\n    a = a + 1\n    a = a + 1\n    a = a + 1\n    a = a + 1\n    a = a + 1\n  end\nend\n";
    let files = vec![file("r.ex", src)];
    for normalize in [true, false] {
        let fast = clone_index(&files, 10, normalize);
        let brute = clone_index_bruteforce(&files, 10, normalize);
        assert_eq!(fast, brute, "normalize = {normalize}");
    }
}

#[test]
fn oracle_equivalence_on_mixed_corpus() {
    let renamed = renamed_clone();
    let files = vec![
        file("a.ex", CLONE_BODY),
        file("b.ex", &renamed),
        file("c.ex", CIRCLE),
        file(
            "d.ex",
            "defmodule D do\n  def pad(x), do: {x, :unrelated, 99}\nend\n",
        ),
    ];
    for window in [10, 20, 40] {
        for normalize in [true, false] {
            let fast = clone_index(&files, window, normalize);
            let brute = clone_index_bruteforce(&files, window, normalize);
            assert_eq!(fast, brute, "window={window} normalize={normalize}");
        }
    }
}

#[test]
fn appending_tokens_preserves_prefix_clones() {
    let renamed = renamed_clone();
    let base = vec![file("a.ex", CLONE_BODY), file("b.ex", &renamed)];
    let before = clone_index(&base, 40, true);
    let extended_source = format!("{}\ndefmodule Extra do\n  def tail, do: :extra\nend\n", renamed);
    let extended = vec![file("a.ex", CLONE_BODY), file("b.ex", &extended_source)];
    let after = clone_index(&extended, 40, true);
    for pair in &before {
        let covered = after.iter().any(|p| {
            p.a.0 == pair.a.0
                && p.b.0 == pair.b.0
                && p.a.1.start() <= pair.a.1.start()
                && p.b.1.start() <= pair.b.1.start()
                && p.token_length >= pair.token_length
        });
        assert!(covered, "pair lost after append: {pair:?}");
    }
}
