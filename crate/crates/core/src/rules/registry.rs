//! The rule catalog: 11 traditional smells (9 static, 2 history-based)
//! and 18 Elixir-specific smells (10 design-related, 8 low-level).

use super::{Category, ParamValue, RuleDescriptor, Severity};

pub const RULE_IDS: &[&str] = &[
    "EX1001", "EX1002", "EX1003", "EX1004", "EX1005", "EX1006", "EX1007", "EX1008", "EX1009",
    "EX1101", "EX1102", "EX1201", "EX1202", "EX1203", "EX1204", "EX1205", "EX1206", "EX1207",
    "EX1208", "EX1209", "EX1210", "EX1301", "EX1302", "EX1303", "EX1304", "EX1305", "EX1306",
    "EX1307", "EX1308",
];

/// The full registry in stable id order.
pub fn registry() -> Vec<RuleDescriptor> {
    use Category::*;
    use ParamValue::*;
    let strs = |xs: &[&str]| StrList(xs.iter().map(|s| s.to_string()).collect());
    vec![
        RuleDescriptor {
            id: "EX1001",
            name: "Comments",
            category: Traditional,
            source_docs: &["D1", "D10", "D12", "D14"],
            heuristic: false,
            default_severity: Severity::Warning,
            params: vec![
                ("max_body_comment_lines", Int(3)),
                ("undocumented_public_ratio", Float(0.8)),
                ("min_module_comment_lines", Int(5)),
            ],
            summary: "Comments explaining what code does, where doc attributes and doctests \
                      should carry the documentation",
        },
        RuleDescriptor {
            id: "EX1002",
            name: "Long Parameter List",
            category: Traditional,
            source_docs: &["D1", "D16"],
            heuristic: false,
            default_severity: Severity::Warning,
            params: vec![("max_params", Int(5))],
            summary: "Function takes too many parameters; group them in a struct or keyword list",
        },
        RuleDescriptor {
            id: "EX1003",
            name: "Long Function",
            category: Traditional,
            source_docs: &["D1"],
            heuristic: false,
            default_severity: Severity::Warning,
            params: vec![("max_lines", Int(30))],
            summary: "Function clause is too long to read as one unit",
        },
        RuleDescriptor {
            id: "EX1004",
            name: "Large Module",
            category: Traditional,
            source_docs: &["D1"],
            heuristic: false,
            default_severity: Severity::Warning,
            params: vec![
                ("max_module_lines", Int(300)),
                ("max_public_functions", Int(20)),
            ],
            summary: "Module has grown past a readable size in lines or public functions",
        },
        RuleDescriptor {
            id: "EX1005",
            name: "Duplicated Code",
            category: Traditional,
            source_docs: &["D1"],
            heuristic: false,
            default_severity: Severity::Warning,
            params: vec![("window", Int(40)), ("normalize", Bool(true))],
            summary: "Token-identical (or rename-identical) code appears in more than one place",
        },
        RuleDescriptor {
            id: "EX1006",
            name: "Feature Envy",
            category: Traditional,
            source_docs: &["D1", "D6"],
            heuristic: false,
            default_severity: Severity::Warning,
            params: vec![("min_foreign_calls", Int(4))],
            summary: "Function talks to another module more than to its own",
        },
        RuleDescriptor {
            id: "EX1007",
            name: "Inappropriate Intimacy",
            category: Traditional,
            source_docs: &["D1"],
            heuristic: false,
            default_severity: Severity::Warning,
            params: vec![("min_mutual_calls", Int(3))],
            summary: "Two modules call back and forth so much they act like one",
        },
        RuleDescriptor {
            id: "EX1008",
            name: "Speculative Generalization",
            category: Traditional,
            source_docs: &["D1"],
            heuristic: false,
            default_severity: Severity::Warning,
            params: vec![],
            summary: "Private functions nobody calls and parameters nobody reads",
        },
        RuleDescriptor {
            id: "EX1009",
            name: "Primitive Obsession",
            category: Traditional,
            source_docs: &["D3"],
            heuristic: true,
            default_severity: Severity::Info,
            params: vec![
                ("min_clump_size", Int(3)),
                ("min_occurrences", Int(2)),
            ],
            summary: "The same group of primitive parameters travels together instead of a struct",
        },
        RuleDescriptor {
            id: "EX1101",
            name: "Shotgun Surgery",
            category: TraditionalHistory,
            source_docs: &["D1", "D17"],
            heuristic: false,
            default_severity: Severity::Warning,
            params: vec![
                ("min_support", Int(5)),
                ("min_confidence", Float(0.6)),
                ("min_fanout", Int(3)),
            ],
            summary: "Editing this file habitually forces edits in several other files",
        },
        RuleDescriptor {
            id: "EX1102",
            name: "Divergent Change",
            category: TraditionalHistory,
            source_docs: &["D1"],
            heuristic: true,
            default_severity: Severity::Info,
            params: vec![("min_changes", Int(10)), ("min_cluster", Int(2))],
            summary: "One file keeps changing for several unrelated reasons",
        },
        RuleDescriptor {
            id: "EX1201",
            name: "Unsupervised Process",
            category: ElixirDesign,
            source_docs: &["D5"],
            heuristic: false,
            default_severity: Severity::Warning,
            params: vec![(
                "start_functions",
                strs(&[
                    "spawn",
                    "spawn_link",
                    "GenServer.start",
                    "GenServer.start_link",
                    "Task.start",
                    "Task.start_link",
                    "Agent.start",
                    "Agent.start_link",
                ]),
            )],
            summary: "Process started outside any supervision tree, so users cannot control it",
        },
        RuleDescriptor {
            id: "EX1202",
            name: "GenServer Envy",
            category: ElixirDesign,
            source_docs: &["D8"],
            heuristic: true,
            default_severity: Severity::Info,
            params: vec![],
            summary: "Task or Agent handled as if it were a GenServer",
        },
        RuleDescriptor {
            id: "EX1203",
            name: "Agent Obsession",
            category: ElixirDesign,
            source_docs: &["D8"],
            heuristic: false,
            default_severity: Severity::Warning,
            params: vec![("min_client_modules", Int(3))],
            summary: "Responsibility for one Agent is spread across many modules",
        },
        RuleDescriptor {
            id: "EX1204",
            name: "Large Messages Between Processes",
            category: ElixirDesign,
            source_docs: &["D13"],
            heuristic: true,
            default_severity: Severity::Info,
            params: vec![("max_payload_nodes", Int(50))],
            summary: "Processes exchange very large message payloads",
        },
        RuleDescriptor {
            id: "EX1205",
            name: "Complex Multi-Clause Function",
            category: ElixirDesign,
            source_docs: &["D10"],
            heuristic: false,
            default_severity: Severity::Warning,
            params: vec![
                ("max_clauses", Int(5)),
                ("min_guards", Int(3)),
                ("min_pattern_clauses", Int(3)),
            ],
            summary: "Too much business logic squeezed into one multi-clause definition",
        },
        RuleDescriptor {
            id: "EX1206",
            name: "Complex API Error Handling",
            category: ElixirDesign,
            source_docs: &["D2"],
            heuristic: false,
            default_severity: Severity::Warning,
            params: vec![("max_error_shapes", Int(4))],
            summary: "Function handles a large number of distinct error shapes from one endpoint",
        },
        RuleDescriptor {
            id: "EX1207",
            name: "Exceptions For Control Flow",
            category: ElixirDesign,
            source_docs: &["D5", "D11"],
            heuristic: true,
            default_severity: Severity::Info,
            params: vec![],
            summary: "Exceptions used to steer ordinary control flow, forcing clients to rescue",
        },
        RuleDescriptor {
            id: "EX1208",
            name: "Untested Polymorphic Behavior",
            category: ElixirDesign,
            source_docs: &["D7"],
            heuristic: true,
            default_severity: Severity::Info,
            params: vec![],
            summary: "Unguarded parameter dispatched through a protocol without verifying it",
        },
        RuleDescriptor {
            id: "EX1209",
            name: "Code Organization By Process",
            category: ElixirDesign,
            source_docs: &["D5"],
            heuristic: true,
            default_severity: Severity::Info,
            params: vec![],
            summary: "A process wraps what plain modules and functions could do; state unused",
        },
        RuleDescriptor {
            id: "EX1210",
            name: "Data Manipulation By Migration",
            category: ElixirDesign,
            source_docs: &["D9"],
            heuristic: false,
            default_severity: Severity::Warning,
            params: vec![],
            summary: "Migration mixes schema changes with data manipulation",
        },
        RuleDescriptor {
            id: "EX1301",
            name: "Working With Invalid Data",
            category: ElixirLowlevel,
            source_docs: &["D5"],
            heuristic: true,
            default_severity: Severity::Info,
            params: vec![("boundary_globs", strs(&["*Controller", "*_web/**"]))],
            summary: "Boundary function uses parameters without validating them first",
        },
        RuleDescriptor {
            id: "EX1302",
            name: "Map/Struct Dynamic Access",
            category: ElixirLowlevel,
            source_docs: &["D7"],
            heuristic: false,
            default_severity: Severity::Warning,
            params: vec![],
            summary: "Dynamic access on a struct, or access to a field the struct never defines",
        },
        RuleDescriptor {
            id: "EX1303",
            name: "Unplanned Value Extraction",
            category: ElixirLowlevel,
            source_docs: &["D7"],
            heuristic: true,
            default_severity: Severity::Info,
            params: vec![(
                "parse_functions",
                strs(&["Integer.parse", "Float.parse", "Date.from_iso8601"]),
            )],
            summary: "Parse failure silently defaulted instead of crashed or handled explicitly",
        },
        RuleDescriptor {
            id: "EX1304",
            name: "Modules With Identical Names",
            category: ElixirLowlevel,
            source_docs: &["D5"],
            heuristic: false,
            default_severity: Severity::Error,
            params: vec![],
            summary: "Two modules share a name, preventing their simultaneous load",
        },
        RuleDescriptor {
            id: "EX1305",
            name: "Unnecessary Macro",
            category: ElixirLowlevel,
            source_docs: &["D5"],
            heuristic: true,
            default_severity: Severity::Info,
            params: vec![],
            summary: "Macro that only quotes plain values; a function would do",
        },
        RuleDescriptor {
            id: "EX1306",
            name: "App Configuration For Code Libs",
            category: ElixirLowlevel,
            source_docs: &["D5"],
            heuristic: false,
            default_severity: Severity::Warning,
            params: vec![("lib_globs", strs(&["lib/**"]))],
            summary: "Library reads global application config, blocking flexible reuse",
        },
        RuleDescriptor {
            id: "EX1307",
            name: "Compile-Time App Configuration",
            category: ElixirLowlevel,
            source_docs: &["D5"],
            heuristic: false,
            default_severity: Severity::Warning,
            params: vec![],
            summary: "Module attribute frozen from app config at compile time",
        },
        RuleDescriptor {
            id: "EX1308",
            name: "Use When An Import Is Enough",
            category: ElixirLowlevel,
            source_docs: &["D5"],
            heuristic: false,
            default_severity: Severity::Warning,
            params: vec![],
            summary: "`use` of a module whose __using__ only imports; `import` would be clearer",
        },
    ]
}

/// Look up one descriptor by id.
pub fn rule(id: &str) -> Option<RuleDescriptor> {
    registry().into_iter().find(|r| r.id == id)
}
