use super::*;
use crate::syntax::{desugar_pipes_tolerant, parse_file, Mode, NodeKind};

pub fn project_from(sources: &[(&str, &str)]) -> Project {
    let files = sources
        .iter()
        .map(|(path, src)| {
            let (tree, diagnostics) = parse_file(path, src, Mode::Tolerant).unwrap();
            let (tree, more) = desugar_pipes_tolerant(&tree);
            let mut diagnostics = diagnostics;
            diagnostics.extend(more);
            ProjectFile {
                path: path.to_string(),
                tree,
                source: src.to_string(),
                diagnostics,
            }
        })
        .collect();
    Project::new(files)
}

const POINT: &str = "defmodule Point do\n  defstruct [x: nil, y: nil]\n  def distance(p1, p2) do\n     Float.pow(p2.x - p1.x, 2) + Float.pow(p2.y - p1.y, 2)\n     |> Float.pow(0.5)\n  end\n  def move(p, delta_x, delta_y) do\n     %Point{x: p.x + delta_x, y: p.y + delta_y}\n  end\nend\n";

#[test]
fn point_module_model() {
    let project = project_from(&[("point.ex", POINT)]);
    let model = build_model(&project);
    let point = &model.modules["Point"];
    assert_eq!(
        point.struct_def.as_deref(),
        Some(&["x".to_string(), "y".to_string()][..])
    );
    let fns: Vec<(String, u32)> = point
        .functions
        .iter()
        .map(|f| (f.name.clone(), f.arity))
        .collect();
    assert_eq!(
        fns,
        vec![("distance".to_string(), 2), ("move".to_string(), 3)]
    );
}

#[test]
fn empty_input_yields_empty_model() {
    let project = project_from(&[]);
    let model = build_model(&project);
    assert!(model.modules.is_empty());
    assert!(model.call_sites.is_empty());
}

#[test]
fn duplicate_module_names_are_recorded() {
    let project = project_from(&[
        ("a.ex", "defmodule A do\n  def one, do: 1\nend\n"),
        ("b.ex", "defmodule A do\n  def two, do: 2\nend\n"),
    ]);
    let model = build_model(&project);
    assert_eq!(model.duplicate_module_names.len(), 1);
    let (name, spans) = &model.duplicate_module_names[0];
    assert_eq!(name, "A");
    assert_eq!(spans.len(), 2);
    // First occurrence (path order) is kept in `modules`.
    assert_eq!(model.modules["A"].file_path, "a.ex");
}

#[test]
fn child_specs_follow_local_bindings() {
    let src = "defmodule App do\n  def start do\n    children = [MyWorker]\n    Supervisor.start_link(children, strategy: :one_for_one)\n  end\nend\n";
    let project = project_from(&[("app.ex", src)]);
    let model = build_model(&project);
    assert!(model.supervised_child_specs.contains("MyWorker"));
    assert!(!model.dynamic_children);
}

#[test]
fn no_supervisor_calls_yield_empty_specs() {
    let project = project_from(&[("x.ex", "defmodule X do\n  def f, do: :ok\nend\n")]);
    let model = build_model(&project);
    assert!(model.supervised_child_specs.is_empty());
}

#[test]
fn computed_children_set_dynamic_flag() {
    let src = "defmodule App do\n  def start do\n    children = build_children()\n    Supervisor.start_link(children, strategy: :one_for_one)\n  end\nend\n";
    let project = project_from(&[("app.ex", src)]);
    let model = build_model(&project);
    assert!(model.supervised_child_specs.is_empty());
    assert!(model.dynamic_children);
}

#[test]
fn child_spec_tuple_and_map_forms() {
    let src = "defmodule App do\n  def start do\n    Supervisor.start_link([{TupleWorker, []}, %{id: :w, start: {MapWorker, :start_link, []}}], strategy: :one_for_one)\n  end\nend\n";
    let project = project_from(&[("app.ex", src)]);
    let model = build_model(&project);
    assert!(model.supervised_child_specs.contains("TupleWorker"));
    assert!(model.supervised_child_specs.contains("MapWorker"));
}

#[test]
fn using_macro_summaries() {
    let only_imports = "defmodule H do\n  defmacro __using__(_opts) do\n    quote do\n      import H\n    end\n  end\nend\n";
    let project = project_from(&[("h.ex", only_imports)]);
    let model = build_model(&project);
    assert_eq!(
        using_macro_summary(&model.modules["H"]),
        UsingMacroSummary::OnlyImportsAliases
    );

    let defines = "defmodule G do\n  defmacro __using__(_opts) do\n    quote do\n      def injected, do: 1\n    end\n  end\nend\n";
    let project = project_from(&[("g.ex", defines)]);
    let model = build_model(&project);
    assert_eq!(
        using_macro_summary(&model.modules["G"]),
        UsingMacroSummary::DefinesOtherForms
    );

    let project = project_from(&[("p.ex", "defmodule P do\n  def f, do: :ok\nend\n")]);
    let model = build_model(&project);
    assert_eq!(
        using_macro_summary(&model.modules["P"]),
        UsingMacroSummary::NoUsing
    );
}

/// Call/qualified-call nodes in executable position: definition heads
/// look like calls but are signatures, and the inner node of a named
/// capture is accounted for through its capture.
pub fn count_call_nodes(project: &Project) -> usize {
    use std::collections::HashSet;
    let mut heads: HashSet<usize> = HashSet::new();
    for f in project.files() {
        f.tree.walk(&mut |n| {
            if matches!(n.kind, NodeKind::FunctionDef | NodeKind::MacroDef) {
                if let Some(head) = n.args().next() {
                    let mut peeled = head;
                    while peeled.kind == NodeKind::Call
                        && peeled.value.as_deref() == Some("when")
                        && peeled.children.len() == 2
                    {
                        peeled = &peeled.children[0];
                    }
                    heads.insert(peeled as *const _ as usize);
                }
            }
        });
    }
    let mut call_nodes = 0usize;
    for f in project.files() {
        f.tree.walk(&mut |n| {
            if matches!(n.kind, NodeKind::Call | NodeKind::QualifiedCall)
                && !heads.contains(&(n as *const _ as usize))
            {
                call_nodes += 1;
            }
        });
    }
    call_nodes
}

#[test]
fn call_site_completeness() {
    let sources = [
        ("point.ex", POINT),
        (
            "calls.ex",
            "defmodule C do\n  def f(x) do\n    helper(x) + Other.g(x, 1)\n  end\n  defp helper(x), do: x\nend\n",
        ),
    ];
    let project = project_from(&sources);
    let model = build_model(&project);
    assert_eq!(model.call_sites.len(), count_call_nodes(&project));
}

#[test]
fn unqualified_calls_resolve_to_local_definitions() {
    let src = "defmodule C do\n  def f(x), do: helper(x)\n  defp helper(x), do: missing(x)\nend\n";
    let project = project_from(&[("c.ex", src)]);
    let model = build_model(&project);
    let helper_call = model
        .call_sites
        .iter()
        .find(|c| c.target_name == "helper")
        .unwrap();
    assert_eq!(helper_call.target_module.as_deref(), Some("C"));
    assert_eq!(helper_call.caller.name, "f");
    let missing = model
        .call_sites
        .iter()
        .find(|c| c.target_name == "missing")
        .unwrap();
    assert_eq!(missing.target_module, None);
}

#[test]
fn aliases_expand_in_qualified_calls() {
    let src = "defmodule C do\n  alias Deep.Nested.Helper\n  alias Deep.Other, as: O\n  def f(x), do: Helper.run(x) + O.go(x)\nend\n";
    let project = project_from(&[("c.ex", src)]);
    let model = build_model(&project);
    let run = model
        .call_sites
        .iter()
        .find(|c| c.target_name == "run")
        .unwrap();
    assert_eq!(run.target_module.as_deref(), Some("Deep.Nested.Helper"));
    let go = model
        .call_sites
        .iter()
        .find(|c| c.target_name == "go")
        .unwrap();
    assert_eq!(go.target_module.as_deref(), Some("Deep.Other"));
}

#[test]
fn imports_resolve_with_local_priority() {
    let sources = [
        (
            "lib.ex",
            "defmodule Lib do\n  def shared(x), do: x\n  def only_lib(x), do: x\nend\n",
        ),
        (
            "use.ex",
            "defmodule UseSite do\n  import Lib\n  def shared(x), do: x\n  def f(x), do: shared(x) + only_lib(x)\nend\n",
        ),
    ];
    let project = project_from(&sources);
    let model = build_model(&project);
    let shared = model
        .call_sites
        .iter()
        .find(|c| c.target_name == "shared" && c.caller.name == "f")
        .unwrap();
    assert_eq!(shared.target_module.as_deref(), Some("UseSite"));
    let only = model
        .call_sites
        .iter()
        .find(|c| c.target_name == "only_lib")
        .unwrap();
    assert_eq!(only.target_module.as_deref(), Some("Lib"));
}

#[test]
fn captures_contribute_call_sites_with_arity() {
    let src = "defmodule C do\n  defp double(x), do: x * 2\n  def f(xs), do: Enum.map(xs, &double/1)\nend\n";
    let project = project_from(&[("c.ex", src)]);
    let model = build_model(&project);
    let cap = model.call_sites.iter().find(|c| c.is_capture).unwrap();
    assert_eq!(cap.target_name, "double");
    assert_eq!(cap.target_arity, Some(1));
    assert_eq!(cap.target_module.as_deref(), Some("C"));
}

#[test]
fn model_is_deterministic_under_shuffle() {
    let sources = [
        ("b.ex", "defmodule B do\n  def f, do: A.g()\nend\n"),
        ("a.ex", "defmodule A do\n  def g, do: :ok\nend\n"),
        ("c.ex", "defmodule Ch do\n  def h, do: B.f()\nend\n"),
    ];
    let forward = project_from(&sources);
    let mut reversed_sources = sources;
    reversed_sources.reverse();
    let reversed = project_from(&reversed_sources);
    let m1 = serde_json::to_string(&build_model(&forward)).unwrap();
    let m2 = serde_json::to_string(&build_model(&reversed)).unwrap();
    assert_eq!(m1, m2);
}

#[test]
fn resolution_soundness() {
    let sources = [
        ("a.ex", "defmodule A do\n  def g(x), do: x\nend\n"),
        (
            "b.ex",
            "defmodule B do\n  def f(x) do\n    A.g(x)\n    Enum.map(x, &A.g/1)\n    helper(x)\n  end\n  defp helper(x), do: x\nend\n",
        ),
    ];
    let project = project_from(&sources);
    let model = build_model(&project);
    for site in &model.call_sites {
        if let Some(module) = &site.target_module {
            let project_module = model.is_project_module(module);
            let external = !project_module;
            // Resolved targets are project modules or named externals.
            assert!(project_module || external);
        }
    }
}

#[test]
fn guards_mark_guarded_params() {
    let src = "defmodule G do\n  def f(x, y) when is_map(x) and y > 1, do: {x, y}\n  def g(a, _b), do: a\nend\n";
    let project = project_from(&[("g.ex", src)]);
    let model = build_model(&project);
    let f = &model.modules["G"].functions[0];
    let clause = &f.clauses[0];
    assert_eq!(clause.guard_count, 2);
    assert_eq!(
        clause.guarded_params.iter().copied().collect::<Vec<_>>(),
        vec![0, 1]
    );
    let g = &model.modules["G"].functions[1];
    assert_eq!(
        g.clauses[0].params,
        vec![
            ParamPattern::BareVariable("a".into()),
            ParamPattern::Ignored
        ]
    );
}

#[test]
fn multi_clause_functions_group() {
    let src = "defmodule M do\n  @doc \"classify\"\n  def f(0), do: :zero\n  def f(n) when n > 0, do: :pos\n  def f(_), do: :neg\nend\n";
    let project = project_from(&[("m.ex", src)]);
    let model = build_model(&project);
    let f = &model.modules["M"].functions[0];
    assert_eq!(f.clauses.len(), 3);
    assert_eq!(f.arity, 1);
    assert!(f.doc_present);
    assert_eq!(f.clauses[0].params, vec![ParamPattern::Literal]);
}

#[test]
fn protocols_and_impls_register() {
    let src = "defprotocol Render do\n  def render(value)\nend\n\ndefimpl Render, for: Integer do\n  def render(value), do: value\nend\n";
    let project = project_from(&[("proto.ex", src)]);
    let model = build_model(&project);
    assert!(model.protocols["Render"].contains("render"));
    assert!(model.protocol_impls["Render"].contains("Integer"));
}

#[test]
fn nested_modules_use_dotted_names() {
    let src = "defmodule Outer do\n  defmodule Inner do\n    def f, do: :ok\n  end\nend\n";
    let project = project_from(&[("n.ex", src)]);
    let model = build_model(&project);
    assert!(model.modules.contains_key("Outer"));
    assert!(model.modules.contains_key("Outer.Inner"));
}
