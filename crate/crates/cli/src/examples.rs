//! Minimal positive example per rule, shown by `smelter explain`.

pub fn positive_example(rule_id: &str) -> &'static str {
    match rule_id {
        "EX1001" => {
            "def compute(v) do\n  # step one: normalize\n  # step two: scale\n  # step three: clamp\n  v * 2\nend"
        }
        "EX1002" => "def build(a, b, c, d, e), do: {a, b, c, d, e}",
        "EX1003" => "def long_one(x) do\n  # ... thirty or more lines ...\nend",
        "EX1004" => "defmodule Huge do\n  # 300+ lines or 20+ public functions\nend",
        "EX1005" => {
            "# the same 40+ token body appears in two modules,\n# even with different variable names"
        }
        "EX1006" => {
            "def aggregate(x) do\n  a = Other.one(x)\n  b = Other.two(a)\n  c = Other.three(b)\n  Other.four(c)\nend"
        }
        "EX1007" => {
            "# A calls B three times and B calls A three times:\n# the pair behaves like one module"
        }
        "EX1008" => "defp helper(x), do: x  # never called anywhere",
        "EX1009" => {
            "def magnitude(x, y, z), do: x * x + y * y + z * z\ndef sum3(x, y, z), do: x + y + z\n# no struct holds x, y, z"
        }
        "EX1101" => {
            "# history: editing lib/schema.ex forces edits in three\n# other files in most commits that touch it"
        }
        "EX1102" => {
            "# history: lib/core.ex changes with {a, b} in some commits\n# and with {c, d} in disjoint commits"
        }
        "EX1201" => "GenServer.start_link(Worker, [])  # Worker is in no child spec",
        "EX1202" => {
            "Agent.start_link(fn -> %{} end, name: __MODULE__)\ndef handle_call(req, _from, state), do: {:reply, req, state}"
        }
        "EX1203" => {
            "# Agent.update(:store, ...) called from three or more\n# different modules"
        }
        "EX1204" => "send(pid, %{fifty_or_more: :nodes, of: :literal, data: :here})",
        "EX1205" => {
            "def classify(n) when is_integer(n), do: :int\ndef classify(n) when is_float(n), do: :float\ndef classify(n) when is_atom(n), do: :atom\ndef classify(n) when is_binary(n), do: :binary\ndef classify([_ | _]), do: :list\ndef classify(_), do: :other"
        }
        "EX1206" => {
            "case api.call(payload) do\n  {:ok, body} -> body\n  {:error, :timeout} -> :retry\n  {:error, :not_found} -> :missing\n  {:error, :unauthorized} -> :denied\n  {:error, _other} -> :unknown\nend"
        }
        "EX1207" => {
            "def parse(input) do\n  case input do\n    \"\" -> raise \"empty input\"\n    other -> other\n  end\nend"
        }
        "EX1208" => "def show(x), do: MyProto.render(x)  # no guard on x",
        "EX1209" => {
            "def handle_call({:add, a, b}, _from, state) do\n  {:reply, a + b, state}  # state never read or updated\nend"
        }
        "EX1210" => {
            "alter table(:users) do\n  add :status, :string\nend\nRepo.update_all(\"users\", set: [status: \"active\"])"
        }
        "EX1301" => "def show(params) do\n  params[\"count\"] * 2  # params never validated\nend",
        "EX1302" => "def f(%Point{} = p), do: p[:x]  # struct access must be static",
        "EX1303" => "Integer.parse(query) || 0",
        "EX1304" => "# defmodule A appears in lib/a.ex and lib/b.ex",
        "EX1305" => "defmacro double(x) do\n  quote do\n    2 * unquote(x)\n  end\nend",
        "EX1306" => "def timeout do\n  Application.get_env(:my_app, :timeout)\nend",
        "EX1307" => "@timeout Application.get_env(:my_app, :timeout)",
        "EX1308" => "use Helpers  # Helpers.__using__ only imports",
        _ => "# no example recorded",
    }
}
