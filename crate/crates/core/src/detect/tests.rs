use super::*;
use crate::metrics::{clone_index, function_metrics, module_metrics, ClumpParams};
use crate::model::tests::project_from;
use crate::model::build_model;
use crate::rules::{AnalysisConfig, Finding};

/// Full in-memory pipeline over the given sources with a config.
fn analyze_with(sources: &[(&str, &str)], config: &AnalysisConfig) -> Vec<Finding> {
    let project = project_from(sources);
    let model = build_model(&project);
    let clumps = ClumpParams {
        min_size: config.int("EX1009", "min_clump_size").max(1) as usize,
        min_occurrences: config.int("EX1009", "min_occurrences").max(1) as usize,
    };
    let fn_metrics = function_metrics(&project, &model);
    let mod_metrics = module_metrics(&project, &model, clumps);
    let clones = if config.is_enabled("EX1005") {
        clone_index(
            project.files(),
            config.int("EX1005", "window").max(10) as usize,
            config.bool("EX1005", "normalize"),
        )
    } else {
        Vec::new()
    };
    let ctx = Ctx::new(&project, &model, &fn_metrics, &mod_metrics, &clones, config);
    run_enabled(&ctx)
}

fn analyze(sources: &[(&str, &str)]) -> Vec<Finding> {
    analyze_with(sources, &AnalysisConfig::default())
}

fn of<'a>(findings: &'a [Finding], rule: &str) -> Vec<&'a Finding> {
    findings.iter().filter(|f| f.rule_id == rule).collect()
}

// ---------------------------------------------------------------------
// EX1001 Comments
// ---------------------------------------------------------------------

#[test]
fn ex1001_flags_comment_heavy_clause() {
    let src = "defmodule C do\n  def f(v) do\n    # one\n    # two\n    # three\n    # four\n    v\n  end\nend\n";
    let found = analyze(&[("lib/c.ex", src)]);
    let hits = of(&found, "EX1001");
    assert_eq!(hits.len(), 1);
    assert_eq!(
        hits[0].evidence["comment_lines"],
        crate::rules::EvidenceValue::Int(4)
    );
}

#[test]
fn ex1001_quiet_documented_clause_passes() {
    let src = "defmodule C do\n  @doc \"doubles\"\n  def f(v), do: v * 2\nend\n";
    assert!(of(&analyze(&[("lib/c.ex", src)]), "EX1001").is_empty());
}

#[test]
fn ex1001_module_level_undocumented_with_many_comments() {
    let src = "defmodule C do\n  # c1\n  def f1, do: :a\n  # c2\n  def f2, do: :b\n  # c3\n  def f3, do: :c\n  # c4\n  def f4, do: :d\n  # c5\n  # c6\n  def f5, do: :e\nend\n";
    let found = analyze(&[("lib/c.ex", src)]);
    let hits = of(&found, "EX1001");
    // 6 module comment lines, 5/5 public functions undocumented.
    assert_eq!(hits.len(), 1);
    assert!(hits[0].message.contains("module C"));
}

// ---------------------------------------------------------------------
// EX1002 Long Parameter List
// ---------------------------------------------------------------------

#[test]
fn ex1002_boundaries() {
    let six = "defmodule P do\n  def f(a, b, c, d, e, g), do: {a, b, c, d, e, g}\nend\n";
    assert_eq!(of(&analyze(&[("lib/p.ex", six)]), "EX1002").len(), 1);

    let three = "defmodule P do\n  def move(p, dx, dy), do: {p, dx, dy}\nend\n";
    assert!(of(&analyze(&[("lib/p.ex", three)]), "EX1002").is_empty());

    let five = "defmodule P do\n  def f(a, b, c, d, e), do: {a, b, c, d, e}\nend\n";
    assert_eq!(of(&analyze(&[("lib/p.ex", five)]), "EX1002").len(), 1);
}

// ---------------------------------------------------------------------
// EX1003 Long Function
// ---------------------------------------------------------------------

fn long_function(lines: usize) -> String {
    let mut body = String::from("defmodule L do\n  def long(input) do\n    x0 = input\n");
    // def..end inclusive: 2 header/footer + statements.
    for i in 1..(lines - 3) {
        body.push_str(&format!("    x{i} = [x{} | [:s{i}]]\n", i - 1));
    }
    body.push_str(&format!("    x{}\n  end\nend\n", lines - 4));
    body
}

#[test]
fn ex1003_boundaries() {
    let long = long_function(31);
    assert_eq!(of(&analyze(&[("lib/l.ex", &long)]), "EX1003").len(), 1);

    let short = "defmodule L do\n  def s(x) do\n    x\n  end\nend\n";
    assert!(of(&analyze(&[("lib/l.ex", short)]), "EX1003").is_empty());

    let exactly = long_function(30);
    assert_eq!(of(&analyze(&[("lib/l.ex", &exactly)]), "EX1003").len(), 1);
}

// ---------------------------------------------------------------------
// EX1004 Large Module
// ---------------------------------------------------------------------

#[test]
fn ex1004_line_count_trigger() {
    let mut src = String::from("defmodule Big do\n");
    for i in 0..150 {
        src.push_str(&format!("  def f{i}(x) do\n    x\n  end\n"));
    }
    src.push_str("end\n");
    // 452 lines and 150 public functions: one finding for the module.
    assert_eq!(of(&analyze(&[("lib/big.ex", &src)]), "EX1004").len(), 1);
}

#[test]
fn ex1004_circle_is_fine() {
    let circle = "defmodule Circle do\n  def area(radius) do\n     3.14 * (radius * radius)\n  end\n  def circumference(radius) do\n     2 * 3.14 * radius\n  end\nend\n";
    assert!(of(&analyze(&[("lib/circle.ex", circle)]), "EX1004").is_empty());
}

#[test]
fn ex1004_exactly_twenty_public_functions() {
    let mut src = String::from("defmodule Twenty do\n");
    for i in 0..20 {
        src.push_str(&format!("  def f{i}, do: :v{i}\n"));
    }
    src.push_str("end\n");
    assert_eq!(of(&analyze(&[("lib/t.ex", &src)]), "EX1004").len(), 1);
}

// ---------------------------------------------------------------------
// EX1005 Duplicated Code
// ---------------------------------------------------------------------

const CLONE_A: &str = "defmodule CloneA do\n  def transform(data) do\n    first = Map.get(data, :alpha, 0)\n    second = Map.get(data, :bravo, 1)\n    third = Map.get(data, :charlie, 2)\n    {first + second, second * third, first - third, :done}\n  end\nend\n";

#[test]
fn ex1005_reports_one_finding_per_fragment() {
    let clone_b = CLONE_A.replace("CloneA", "CloneB").replace("transform", "convert");
    let found = analyze(&[("lib/a.ex", CLONE_A), ("lib/b.ex", &clone_b)]);
    assert_eq!(of(&found, "EX1005").len(), 1);
}

#[test]
fn ex1005_unique_code_is_clean() {
    let found = analyze(&[("lib/a.ex", CLONE_A)]);
    assert!(of(&found, "EX1005").is_empty());
}

#[test]
fn ex1005_exact_mode_misses_renamed_clone() {
    let renamed = CLONE_A
        .replace("CloneA", "CloneB")
        .replace("data", "input")
        .replace("first", "uno")
        .replace("second", "dos")
        .replace("third", "tres");
    let mut config = AnalysisConfig::default();
    config.set_param("EX1005", "normalize", crate::rules::ParamValue::Bool(false));
    let found = analyze_with(&[("lib/a.ex", CLONE_A), ("lib/b.ex", &renamed)], &config);
    assert!(of(&found, "EX1005").is_empty());
}

// ---------------------------------------------------------------------
// EX1006 Feature Envy
// ---------------------------------------------------------------------

const ENVY_HELPER: &str = "defmodule EnvyHelper do\n  def one(x), do: x + 1\n  def two(x), do: x - 2\n  def three(x), do: x * 3\n  def four(x), do: div(x, 4)\n  def five(x), do: rem(x, 5)\nend\n";

#[test]
fn ex1006_five_foreign_one_local() {
    let src = "defmodule Envy do\n  def local_step(x), do: x\n  def aggregate(x) do\n    a = EnvyHelper.one(x)\n    b = EnvyHelper.two(a)\n    c = EnvyHelper.three(b)\n    d = EnvyHelper.four(c)\n    e = EnvyHelper.five(d)\n    local_step(e)\n  end\nend\n";
    let found = analyze(&[("lib/envy.ex", src), ("lib/helper.ex", ENVY_HELPER)]);
    let hits = of(&found, "EX1006");
    assert_eq!(hits.len(), 1);
    assert_eq!(hits[0].primary_target.name, "aggregate");
}

#[test]
fn ex1006_local_only_is_clean() {
    let src = "defmodule Envy do\n  def a(x), do: b(x)\n  def b(x), do: c(x)\n  def c(x), do: d(x)\n  def d(x), do: e(x)\n  def e(x), do: x\nend\n";
    assert!(of(&analyze(&[("lib/envy.ex", src)]), "EX1006").is_empty());
}

#[test]
fn ex1006_tie_is_not_envy() {
    // 5 foreign vs 5 local: strict > comparison keeps it clean.
    let src = "defmodule Envy do\n  def l1(x), do: x\n  def aggregate(x) do\n    a = EnvyHelper.one(x)\n    b = EnvyHelper.two(a)\n    c = EnvyHelper.three(b)\n    d = EnvyHelper.four(c)\n    e = EnvyHelper.five(d)\n    l1(l1(l1(l1(l1(e)))))\n  end\nend\n";
    let found = analyze(&[("lib/envy.ex", src), ("lib/helper.ex", ENVY_HELPER)]);
    assert!(of(&found, "EX1006").is_empty());
}

// ---------------------------------------------------------------------
// EX1007 Inappropriate Intimacy
// ---------------------------------------------------------------------

#[test]
fn ex1007_mutual_traffic() {
    let src = "defmodule IntimA do\n  def a1(x), do: IntimB.b1(x) + 1\n  def a2(x), do: IntimB.b2(x) - 2\n  def a3(x), do: IntimB.b3(x) * 3\n  def a4(x), do: IntimB.b1(x) * 5\n  def entry(x), do: x\nend\n\ndefmodule IntimB do\n  def b1(x), do: IntimA.entry(x) + 1\n  def b2(x), do: IntimA.entry(x) - 2\n  def b3(x), do: IntimA.entry(x) * 3\nend\n";
    let found = analyze(&[("lib/intim.ex", src)]);
    let hits = of(&found, "EX1007");
    assert_eq!(hits.len(), 1);
    assert_eq!(hits[0].primary_target.module, "IntimA");
}

#[test]
fn ex1007_one_directional_is_clean() {
    let src = "defmodule OneWayA do\n  def a1(x), do: OneWayB.b(x)\n  def a2(x), do: OneWayB.b(x)\n  def a3(x), do: OneWayB.b(x)\nend\n\ndefmodule OneWayB do\n  def b(x), do: x\nend\n";
    assert!(of(&analyze(&[("lib/oneway.ex", src)]), "EX1007").is_empty());
}

// ---------------------------------------------------------------------
// EX1008 Speculative Generalization
// ---------------------------------------------------------------------

#[test]
fn ex1008_uncalled_private() {
    let src = "defmodule Spec do\n  def entry(x), do: x + 1\n  defp helper(y), do: y * 2\nend\n";
    let found = analyze(&[("lib/spec.ex", src)]);
    let hits = of(&found, "EX1008");
    assert_eq!(hits.len(), 1);
    assert_eq!(hits[0].primary_target.name, "helper");
}

#[test]
fn ex1008_called_private_is_clean() {
    let src = "defmodule Spec do\n  def entry(x), do: helper(x)\n  defp helper(y), do: y * 2\nend\n";
    assert!(of(&analyze(&[("lib/spec.ex", src)]), "EX1008").is_empty());
}

#[test]
fn ex1008_captured_private_is_clean() {
    let src = "defmodule Spec do\n  def entry(xs), do: Enum.map(xs, &helper/1)\n  defp helper(y), do: y * 2\nend\n";
    assert!(of(&analyze(&[("lib/spec.ex", src)]), "EX1008").is_empty());
}

#[test]
fn ex1008_unused_param_reports_indices() {
    let src = "defmodule Spec do\n  def f(x, opts), do: x\nend\n";
    let found = analyze(&[("lib/spec.ex", src)]);
    let hits = of(&found, "EX1008");
    assert_eq!(hits.len(), 1);
    assert_eq!(
        hits[0].evidence["param_index"],
        crate::rules::EvidenceValue::Int(1)
    );
    assert_eq!(
        hits[0].evidence["clause_index"],
        crate::rules::EvidenceValue::Int(0)
    );
}

// ---------------------------------------------------------------------
// EX1009 Primitive Obsession
// ---------------------------------------------------------------------

#[test]
fn ex1009_clump_without_struct() {
    let src = "defmodule Clump do\n  def magnitude(x, y, z), do: x * x + y * y + z * z\n  def sum3(x, y, z), do: x + y + z\nend\n";
    assert_eq!(of(&analyze(&[("lib/clump.ex", src)]), "EX1009").len(), 1);
}

#[test]
fn ex1009_struct_covers_clump() {
    let src = "defmodule Clump do\n  defstruct [x: nil, y: nil, z: nil]\n  def magnitude(x, y, z), do: x * x + y * y + z * z\n  def sum3(x, y, z), do: x + y + z\nend\n";
    assert!(of(&analyze(&[("lib/clump.ex", src)]), "EX1009").is_empty());
}

#[test]
fn ex1009_pairs_are_not_clumps() {
    let src = "defmodule Clump do\n  def f(x, y), do: x + y\n  def g(x, y), do: x - y\nend\n";
    assert!(of(&analyze(&[("lib/clump.ex", src)]), "EX1009").is_empty());
}

// ---------------------------------------------------------------------
// EX1201 Unsupervised Process
// ---------------------------------------------------------------------

#[test]
fn ex1201_unsupervised_worker() {
    let src = "defmodule W do\n  def run(arg), do: arg\nend\n\ndefmodule Boot do\n  def go do\n    GenServer.start_link(W, [])\n  end\nend\n";
    let found = analyze(&[("lib/w.ex", src)]);
    assert_eq!(of(&found, "EX1201").len(), 1);
}

#[test]
fn ex1201_supervised_worker_is_clean() {
    let src = "defmodule W do\n  def start_link(opts), do: GenServer.start_link(W, opts)\nend\n\ndefmodule Sup do\n  def start do\n    children = [W]\n    Supervisor.start_link(children, strategy: :one_for_one)\n  end\nend\n";
    let found = analyze(&[("lib/w.ex", src)]);
    assert!(of(&found, "EX1201").is_empty());
}

#[test]
fn ex1201_bare_spawn_is_always_flagged() {
    let src = "defmodule S do\n  def go do\n    spawn(fn -> :work end)\n  end\nend\n";
    let found = analyze(&[("lib/s.ex", src)]);
    assert_eq!(of(&found, "EX1201").len(), 1);
}

// ---------------------------------------------------------------------
// EX1202 GenServer Envy
// ---------------------------------------------------------------------

#[test]
fn ex1202_agent_with_callbacks() {
    let src = "defmodule Envy do\n  def init_store do\n    Agent.start_link(fn -> %{} end, name: __MODULE__)\n  end\n  def handle_call(request, _from, state) do\n    {:reply, request, state}\n  end\nend\n\ndefmodule EnvyBoot do\n  def start do\n    children = [Envy]\n    Supervisor.start_link(children, strategy: :one_for_one)\n  end\nend\n";
    let found = analyze(&[("lib/envy.ex", src)]);
    assert_eq!(of(&found, "EX1202").len(), 1);
}

#[test]
fn ex1202_plain_genserver_is_clean() {
    let src = "defmodule Server do\n  use GenServer\n  def init(arg), do: {:ok, arg}\n  def handle_call(:get, _from, state) do\n    {:reply, state, state}\n  end\nend\n";
    assert!(of(&analyze(&[("lib/server.ex", src)]), "EX1202").is_empty());
}

#[test]
fn ex1202_fire_and_forget_task_is_clean() {
    let src = "defmodule Fire do\n  def go(x) do\n    Task.start(fn -> x * 2 end)\n  end\nend\n";
    assert!(of(&analyze(&[("lib/fire.ex", src)]), "EX1202").is_empty());
}

// ---------------------------------------------------------------------
// EX1203 Agent Obsession
// ---------------------------------------------------------------------

const AGENT_STORE: &str = "defmodule Store do\n  def start do\n    Agent.start_link(fn -> 0 end, name: :store)\n  end\n  def read, do: Agent.get(:store, fn n -> n end)\nend\n";

#[test]
fn ex1203_three_client_modules() {
    let clients = "defmodule ClientA do\n  def bump, do: Agent.update(:store, fn n -> n + 1 end)\nend\n\ndefmodule ClientB do\n  def reset, do: Agent.update(:store, fn _n -> 0 end)\nend\n";
    let boot = "defmodule StoreBoot do\n  def start do\n    children = [Store]\n    Supervisor.start_link(children, strategy: :one_for_one)\n  end\nend\n";
    let found = analyze(&[
        ("lib/store.ex", AGENT_STORE),
        ("lib/clients.ex", clients),
        ("lib/boot.ex", boot),
    ]);
    let hits = of(&found, "EX1203");
    assert_eq!(hits.len(), 1);
    assert!(hits[0].message.contains(":store"));
}

#[test]
fn ex1203_single_module_is_clean() {
    let boot = "defmodule StoreBoot do\n  def start do\n    children = [Store]\n    Supervisor.start_link(children, strategy: :one_for_one)\n  end\nend\n";
    let found = analyze(&[("lib/store.ex", AGENT_STORE), ("lib/boot.ex", boot)]);
    assert!(of(&found, "EX1203").is_empty());
}

#[test]
fn ex1203_variable_named_agent_is_not_counted() {
    let src = "defmodule V do\n  def read(agent), do: Agent.get(agent, fn n -> n end)\nend\n\ndefmodule V2 do\n  def read(agent), do: Agent.get(agent, fn n -> n end)\nend\n\ndefmodule V3 do\n  def read(agent), do: Agent.get(agent, fn n -> n end)\nend\n";
    assert!(of(&analyze(&[("lib/v.ex", src)]), "EX1203").is_empty());
}

// ---------------------------------------------------------------------
// EX1204 Large Messages
// ---------------------------------------------------------------------

#[test]
fn ex1204_large_literal_payload() {
    let mut payload = String::from("%{");
    for i in 0..30 {
        payload.push_str(&format!("k{i}: {i}, "));
    }
    payload.push_str("last: 0}");
    let src = format!(
        "defmodule Big do\n  def publish(pid) do\n    send(pid, {payload})\n  end\nend\n"
    );
    let found = analyze(&[("lib/big.ex", &src)]);
    assert_eq!(of(&found, "EX1204").len(), 1);
}

#[test]
fn ex1204_small_and_variable_payloads_are_clean() {
    let src = "defmodule Small do\n  def ping(pid, state) do\n    send(pid, :ping)\n    send(pid, state)\n  end\nend\n";
    assert!(of(&analyze(&[("lib/small.ex", src)]), "EX1204").is_empty());
}

// ---------------------------------------------------------------------
// EX1205 Complex Multi-Clause
// ---------------------------------------------------------------------

#[test]
fn ex1205_many_clauses_many_guards() {
    let src = "defmodule MC do\n  def classify(n) when is_integer(n), do: :int\n  def classify(n) when is_float(n), do: :float\n  def classify(n) when is_atom(n), do: :atom\n  def classify(n) when is_binary(n), do: :binary\n  def classify([_ | _]), do: :list\n  def classify(_), do: :other\nend\n";
    assert_eq!(of(&analyze(&[("lib/mc.ex", src)]), "EX1205").len(), 1);
}

#[test]
fn ex1205_two_clauses_are_fine() {
    let src = "defmodule MC do\n  def f(0), do: :zero\n  def f(n), do: n\nend\n";
    assert!(of(&analyze(&[("lib/mc.ex", src)]), "EX1205").is_empty());
}

#[test]
fn ex1205_bare_variable_clauses_without_guards_are_fine() {
    let src = "defmodule MC do\n  def f(a), do: a\n  def f(a, b), do: {a, b}\n  def f(a, b, c), do: {a, b, c}\n  def f(a, b, c, d), do: {a, b, c, d}\nend\n";
    // Four separate arities, each one clause: nothing to flag.
    assert!(of(&analyze(&[("lib/mc.ex", src)]), "EX1205").is_empty());

    let six_plain = "defmodule MC do\n  def g(a), do: a\n  def g(b), do: b\n  def g(c), do: c\n  def g(d), do: d\n  def g(e), do: e\n  def g(f), do: f\nend\n";
    assert!(of(&analyze(&[("lib/mc2.ex", six_plain)]), "EX1205").is_empty());
}

// ---------------------------------------------------------------------
// EX1206 Complex API Error Handling
// ---------------------------------------------------------------------

#[test]
fn ex1206_five_error_shapes() {
    let src = "defmodule API do\n  def request(api, payload) do\n    case api.call(payload) do\n      {:ok, body} -> body\n      {:error, :timeout} -> :retry\n      {:error, :not_found} -> :missing\n      {:error, :unauthorized} -> :denied\n      {:error, {:http, 500}} -> :server_error\n      {:error, _other} -> :unknown\n    end\n  end\nend\n";
    assert_eq!(of(&analyze(&[("lib/api.ex", src)]), "EX1206").len(), 1);
}

#[test]
fn ex1206_single_error_shape_is_fine() {
    let src = "defmodule API do\n  def request(x) do\n    case run(x) do\n      {:ok, body} -> body\n      {:error, _} -> :failed\n    end\n  end\n  defp run(x), do: {:ok, x}\nend\n";
    assert!(of(&analyze(&[("lib/api.ex", src)]), "EX1206").is_empty());
}

#[test]
fn ex1206_exactly_four_shapes_fires() {
    let src = "defmodule API do\n  def request(x) do\n    case run(x) do\n      {:ok, body} -> body\n      {:error, :a} -> :a\n      {:error, :b} -> :b\n      {:error, :c} -> :c\n      {:error, :d} -> :d\n    end\n  end\n  defp run(x), do: {:ok, x}\nend\n";
    assert_eq!(of(&analyze(&[("lib/api.ex", src)]), "EX1206").len(), 1);
}

// ---------------------------------------------------------------------
// EX1207 Exceptions For Control Flow
// ---------------------------------------------------------------------

#[test]
fn ex1207_branch_raise_without_bang() {
    let src = "defmodule P do\n  def parse(input) do\n    case input do\n      \"\" -> raise \"empty input\"\n      other -> other\n    end\n  end\nend\n";
    let found = analyze(&[("lib/p.ex", src)]);
    assert_eq!(of(&found, "EX1207").len(), 1);
}

#[test]
fn ex1207_bang_convention_is_respected() {
    let src = "defmodule P do\n  def parse!(input) do\n    case input do\n      \"\" -> raise \"empty input\"\n      other -> other\n    end\n  end\nend\n";
    assert!(of(&analyze(&[("lib/p.ex", src)]), "EX1207").is_empty());
}

#[test]
fn ex1207_rescue_around_external_call_is_fine() {
    let src = "defmodule P do\n  def fetch(url) do\n    try do\n      HTTPoison.get(url)\n    rescue\n      e -> {:error, e}\n    end\n  end\nend\n";
    assert!(of(&analyze(&[("lib/p.ex", src)]), "EX1207").is_empty());
}

#[test]
fn ex1207_rescue_around_project_call_is_flagged() {
    let src = "defmodule Own do\n  def risky(x), do: x\nend\n\ndefmodule P do\n  def fetch(x) do\n    try do\n      Own.risky(x)\n    rescue\n      e -> {:error, e}\n    end\n  end\nend\n";
    let found = analyze(&[("lib/p.ex", src)]);
    assert_eq!(of(&found, "EX1207").len(), 1);
}

// ---------------------------------------------------------------------
// EX1208 Untested Polymorphism
// ---------------------------------------------------------------------

#[test]
fn ex1208_unguarded_protocol_dispatch() {
    let src = "defprotocol Render do\n  def render(value)\nend\n\ndefmodule Show do\n  def show(value) do\n    Render.render(value)\n  end\nend\n";
    let found = analyze(&[("lib/render.ex", src)]);
    assert_eq!(of(&found, "EX1208").len(), 1);
}

#[test]
fn ex1208_guard_silences_it() {
    let src = "defprotocol Render do\n  def render(value)\nend\n\ndefmodule Show do\n  def show(value) when is_map(value) do\n    Render.render(value)\n  end\nend\n";
    assert!(of(&analyze(&[("lib/render.ex", src)]), "EX1208").is_empty());
}

#[test]
fn ex1208_non_protocol_calls_are_fine() {
    let src = "defmodule Helper do\n  def run(v), do: v\nend\n\ndefmodule Show do\n  def show(value) do\n    Helper.run(value)\n  end\nend\n";
    assert!(of(&analyze(&[("lib/show.ex", src)]), "EX1208").is_empty());
}

// ---------------------------------------------------------------------
// EX1209 Code Organization By Process
// ---------------------------------------------------------------------

#[test]
fn ex1209_stateless_genserver() {
    let src = "defmodule Calc do\n  use GenServer\n  def init(arg), do: {:ok, arg}\n  def handle_call({:add, a, b}, _from, state) do\n    {:reply, a + b, state}\n  end\n  def handle_call({:mul, a, b}, _from, state) do\n    {:reply, a * b, state}\n  end\nend\n";
    let found = analyze(&[("lib/calc.ex", src)]);
    assert_eq!(of(&found, "EX1209").len(), 1);
}

#[test]
fn ex1209_stateful_counter_is_fine() {
    let src = "defmodule Counter do\n  use GenServer\n  def init(count), do: {:ok, count}\n  def handle_call(:increment, _from, state) do\n    {:reply, state + 1, state + 1}\n  end\nend\n";
    assert!(of(&analyze(&[("lib/counter.ex", src)]), "EX1209").is_empty());
}

#[test]
fn ex1209_no_callbacks_is_fine() {
    let src = "defmodule Plain do\n  use GenServer\n  def init(arg), do: {:ok, arg}\nend\n";
    assert!(of(&analyze(&[("lib/plain.ex", src)]), "EX1209").is_empty());
}

// ---------------------------------------------------------------------
// EX1210 Data Manipulation By Migration
// ---------------------------------------------------------------------

#[test]
fn ex1210_ddl_plus_repo_write() {
    let src = "defmodule Mig do\n  use Ecto.Migration\n  def change do\n    alter table(:users) do\n      add :status, :string\n    end\n    Repo.update_all(\"users\", set: [status: \"active\"])\n  end\nend\n";
    let found = analyze(&[("lib/mig.ex", src)]);
    assert_eq!(of(&found, "EX1210").len(), 1);
}

#[test]
fn ex1210_pure_ddl_is_fine() {
    let src = "defmodule Mig do\n  use Ecto.Migration\n  def change do\n    create table(:accounts) do\n      add :name, :string\n    end\n  end\nend\n";
    assert!(of(&analyze(&[("lib/mig.ex", src)]), "EX1210").is_empty());
}

#[test]
fn ex1210_execute_with_dml_string() {
    let src = "defmodule Mig do\n  use Ecto.Migration\n  def change do\n    create table(:accounts) do\n      add :name, :string\n    end\n    execute(\"UPDATE users SET status = 'x'\")\n  end\nend\n";
    assert_eq!(of(&analyze(&[("lib/mig.ex", src)]), "EX1210").len(), 1);
}

#[test]
fn ex1210_dml_only_is_fine() {
    let src = "defmodule Mig do\n  use Ecto.Migration\n  def change do\n    Repo.update_all(\"users\", set: [status: \"active\"])\n  end\nend\n";
    assert!(of(&analyze(&[("lib/mig.ex", src)]), "EX1210").is_empty());
}

// ---------------------------------------------------------------------
// EX1301 Working With Invalid Data
// ---------------------------------------------------------------------

#[test]
fn ex1301_controller_indexing_params() {
    let src = "defmodule PageController do\n  def show(params) do\n    params[\"count\"] * 2\n  end\nend\n";
    let found = analyze(&[("lib/page_controller.ex", src)]);
    assert_eq!(of(&found, "EX1301").len(), 1);
}

#[test]
fn ex1301_destructured_params_are_validated() {
    let src = "defmodule PageController do\n  def show(%{\"count\" => count}) do\n    count * 2\n  end\nend\n";
    assert!(of(&analyze(&[("lib/page_controller.ex", src)]), "EX1301").is_empty());
}

#[test]
fn ex1301_non_boundary_module_is_exempt() {
    let src = "defmodule Inner do\n  def show(params) do\n    params[\"count\"] * 2\n  end\nend\n";
    assert!(of(&analyze(&[("lib/inner.ex", src)]), "EX1301").is_empty());
}

// ---------------------------------------------------------------------
// EX1302 Map/Struct Dynamic Access
// ---------------------------------------------------------------------

const POINT_STRUCT: &str = "defmodule Pt do\n  defstruct [x: nil, y: nil]\nend\n";

#[test]
fn ex1302_bracket_access_on_struct() {
    let src = "defmodule Use do\n  def fetch(p) do\n    p = %Pt{} = p\n    p[:x]\n  end\nend\n";
    let simple = "defmodule Use do\n  def fetch(%Pt{} = p) do\n    p[:x]\n  end\nend\n";
    for use_src in [src, simple] {
        let found = analyze(&[("lib/pt.ex", POINT_STRUCT), ("lib/use.ex", use_src)]);
        assert_eq!(of(&found, "EX1302").len(), 1, "source: {use_src}");
    }
}

#[test]
fn ex1302_static_known_field_is_fine() {
    let src = "defmodule Use do\n  def fetch(%Pt{} = p) do\n    p.x\n  end\nend\n";
    let found = analyze(&[("lib/pt.ex", POINT_STRUCT), ("lib/use.ex", src)]);
    assert!(of(&found, "EX1302").is_empty());
}

#[test]
fn ex1302_unknown_field_is_flagged() {
    let src = "defmodule Use do\n  def fetch(%Pt{} = p) do\n    p.z\n  end\nend\n";
    let found = analyze(&[("lib/pt.ex", POINT_STRUCT), ("lib/use.ex", src)]);
    let hits = of(&found, "EX1302");
    assert_eq!(hits.len(), 1);
    assert!(hits[0].message.contains("no field"));
}

#[test]
fn ex1302_external_structs_are_unknown() {
    let src = "defmodule Use do\n  def fetch(%External.Thing{} = p) do\n    p.whatever\n  end\nend\n";
    assert!(of(&analyze(&[("lib/use.ex", src)]), "EX1302").is_empty());
}

// ---------------------------------------------------------------------
// EX1303 Unplanned Value Extraction
// ---------------------------------------------------------------------

#[test]
fn ex1303_or_default() {
    let src = "defmodule Q do\n  def read_count(query) do\n    Integer.parse(query) || 0\n  end\nend\n";
    assert_eq!(of(&analyze(&[("lib/q.ex", src)]), "EX1303").len(), 1);
}

#[test]
fn ex1303_crashing_match_is_desired() {
    let src = "defmodule Q do\n  def read_count(query) do\n    {count, _rest} = Integer.parse(query)\n    count\n  end\nend\n";
    assert!(of(&analyze(&[("lib/q.ex", src)]), "EX1303").is_empty());
}

#[test]
fn ex1303_full_case_is_handled() {
    let src = "defmodule Q do\n  def read_count(query) do\n    case Integer.parse(query) do\n      {count, _} -> count\n      :error -> :error\n    end\n  end\nend\n";
    assert!(of(&analyze(&[("lib/q.ex", src)]), "EX1303").is_empty());
}

#[test]
fn ex1303_catch_all_default_is_flagged() {
    let src = "defmodule Q do\n  def read_count(query) do\n    case Integer.parse(query) do\n      {count, _} -> count\n      _ -> 0\n    end\n  end\nend\n";
    assert_eq!(of(&analyze(&[("lib/q.ex", src)]), "EX1303").len(), 1);
}

// ---------------------------------------------------------------------
// EX1304 Modules With Identical Names
// ---------------------------------------------------------------------

#[test]
fn ex1304_across_files() {
    let found = analyze(&[
        ("lib/a.ex", "defmodule Dup do\n  def a, do: :a\nend\n"),
        ("lib/b.ex", "defmodule Dup do\n  def b, do: :b\nend\n"),
    ]);
    let hits = of(&found, "EX1304");
    assert_eq!(hits.len(), 1);
    assert_eq!(hits[0].severity, crate::rules::Severity::Error);
    assert!(hits[0].message.contains("lib/a.ex"));
    assert!(hits[0].message.contains("lib/b.ex"));
}

#[test]
fn ex1304_same_file_twice() {
    let src = "defmodule Dup do\n  def a, do: :a\nend\n\ndefmodule Dup do\n  def b, do: :b\nend\n";
    assert_eq!(of(&analyze(&[("lib/a.ex", src)]), "EX1304").len(), 1);
}

#[test]
fn ex1304_unique_names_are_fine() {
    let found = analyze(&[
        ("lib/a.ex", "defmodule UniA do\n  def a, do: :a\nend\n"),
        ("lib/b.ex", "defmodule UniB do\n  def b, do: :b\nend\n"),
    ]);
    assert!(of(&found, "EX1304").is_empty());
}

// ---------------------------------------------------------------------
// EX1305 Unnecessary Macro
// ---------------------------------------------------------------------

#[test]
fn ex1305_value_only_macro() {
    let src = "defmodule M do\n  defmacro double(x) do\n    quote do\n      2 * unquote(x)\n    end\n  end\nend\n";
    assert_eq!(of(&analyze(&[("lib/m.ex", src)]), "EX1305").len(), 1);
}

#[test]
fn ex1305_def_injecting_macro_is_fine() {
    let src = "defmodule M do\n  defmacro define_getter(name) do\n    quote do\n      def unquote(name)(), do: @value\n    end\n  end\nend\n";
    assert!(of(&analyze(&[("lib/m.ex", src)]), "EX1305").is_empty());
}

#[test]
fn ex1305_using_macro_is_exempt() {
    let src = "defmodule M do\n  defmacro __using__(_opts) do\n    quote do\n      import M\n    end\n  end\n  def helper(x), do: x\nend\n";
    assert!(of(&analyze(&[("lib/m.ex", src)]), "EX1305").is_empty());
}

// ---------------------------------------------------------------------
// EX1306 App Configuration For Code Libs
// ---------------------------------------------------------------------

#[test]
fn ex1306_get_env_in_library_function() {
    let src = "defmodule Lib do\n  def timeout do\n    Application.get_env(:my_app, :timeout)\n  end\nend\n";
    assert_eq!(of(&analyze(&[("lib/lib.ex", src)]), "EX1306").len(), 1);
}

#[test]
fn ex1306_application_callback_module_is_exempt() {
    let src = "defmodule App do\n  use Application\n  def start(_type, _args) do\n    timeout = Application.get_env(:my_app, :timeout)\n    children = []\n    Supervisor.start_link(children, strategy: :one_for_one, timeout: timeout)\n  end\nend\n";
    assert!(of(&analyze(&[("lib/app.ex", src)]), "EX1306").is_empty());
}

#[test]
fn ex1306_outside_lib_glob_is_exempt() {
    let src = "defmodule Script do\n  def timeout do\n    Application.get_env(:my_app, :timeout)\n  end\nend\n";
    assert!(of(&analyze(&[("scripts/s.ex", src)]), "EX1306").is_empty());
}

// ---------------------------------------------------------------------
// EX1307 Compile-Time App Configuration
// ---------------------------------------------------------------------

#[test]
fn ex1307_attribute_from_get_env() {
    let src = "defmodule C do\n  @timeout Application.get_env(:my_app, :timeout)\n  def timeout, do: @timeout\nend\n";
    let found = analyze(&[("lib/c.ex", src)]);
    let hits = of(&found, "EX1307");
    assert_eq!(hits.len(), 1);
    // Module-level reads do not additionally fire the library rule.
    assert!(of(&found, "EX1306").is_empty());
}

#[test]
fn ex1307_plain_literal_attribute_is_fine() {
    let src = "defmodule C do\n  @timeout 5_000\n  def timeout, do: @timeout\nend\n";
    assert!(of(&analyze(&[("lib/c.ex", src)]), "EX1307").is_empty());
}

#[test]
fn ex1307_doc_attributes_never_flagged() {
    let src = "defmodule C do\n  @doc \"Application.get_env(:x, :y) in prose\"\n  def f, do: :ok\nend\n";
    assert!(of(&analyze(&[("lib/c.ex", src)]), "EX1307").is_empty());
}

// ---------------------------------------------------------------------
// EX1308 Use When An Import Is Enough
// ---------------------------------------------------------------------

#[test]
fn ex1308_import_only_using() {
    let src = "defmodule Helpers do\n  defmacro __using__(_opts) do\n    quote do\n      import Helpers\n    end\n  end\n  def helper_fun(x), do: x + 1\nend\n\ndefmodule Client do\n  use Helpers\n  def call_it(x), do: helper_fun(x)\nend\n";
    let found = analyze(&[("lib/h.ex", src)]);
    let hits = of(&found, "EX1308");
    assert_eq!(hits.len(), 1);
    assert_eq!(hits[0].primary_target.module, "Client");
}

#[test]
fn ex1308_external_use_is_fine() {
    let src = "defmodule Client do\n  use GenServer\n  def init(x), do: {:ok, x}\nend\n";
    assert!(of(&analyze(&[("lib/c.ex", src)]), "EX1308").is_empty());
}

#[test]
fn ex1308_using_that_defines_functions_is_fine() {
    let src = "defmodule Macros do\n  defmacro __using__(_opts) do\n    quote do\n      import Macros\n\n      def injected_version, do: 1\n    end\n  end\nend\n\ndefmodule Client do\n  use Macros\nend\n";
    assert!(of(&analyze(&[("lib/m.ex", src)]), "EX1308").is_empty());
}

// ---------------------------------------------------------------------
// Cross-cutting properties
// ---------------------------------------------------------------------

#[test]
fn raising_thresholds_never_increases_findings() {
    let src = "defmodule T do\n  def f(a, b, c, d, e, g), do: {a, b, c, d, e, g}\n  def g(a, b, c, d, e), do: {a, b, c, d, e}\nend\n";
    let mut last = usize::MAX;
    for max_params in [3, 4, 5, 6, 7] {
        let mut config = AnalysisConfig::default();
        config.set_param("EX1002", "max_params", crate::rules::ParamValue::Int(max_params));
        let n = of(&analyze_with(&[("lib/t.ex", src)], &config), "EX1002").len();
        assert!(n <= last, "raising max_params increased findings");
        last = n;
    }
}

#[test]
fn heuristic_rules_emit_heuristic_confidence() {
    let src = "defmodule M do\n  defmacro double(x) do\n    quote do\n      2 * unquote(x)\n    end\n  end\nend\n";
    let found = analyze(&[("lib/m.ex", src)]);
    for f in of(&found, "EX1305") {
        assert_eq!(f.confidence, crate::rules::Confidence::Heuristic);
    }
}

#[test]
fn disabling_a_rule_removes_exactly_its_findings() {
    let src = "defmodule D do\n  def f(a, b, c, d, e, g), do: {a, b, c, d, e, g}\n  defp dead(x), do: x\nend\n";
    let all = analyze(&[("lib/d.ex", src)]);
    let mut config = AnalysisConfig::default();
    config.set_enabled("EX1002", false);
    let without = analyze_with(&[("lib/d.ex", src)], &config);
    assert_eq!(of(&all, "EX1002").len(), 1);
    assert!(of(&without, "EX1002").is_empty());
    assert_eq!(all.len() - 1, without.len());
}
