use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use super::backend::SyntaxTree;
use crate::corpus::Language;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalsteadCounts {
    pub total_operators: usize,
    pub distinct_operators: usize,
    pub total_operands: usize,
    pub distinct_operands: usize,
}

impl HalsteadCounts {
    pub fn length(&self) -> usize {
        self.total_operators + self.total_operands
    }

    pub fn vocabulary(&self) -> usize {
        self.distinct_operators + self.distinct_operands
    }

    /// `N * log2(eta)`; zero when the vocabulary has fewer than two symbols.
    pub fn volume(&self) -> f64 {
        let vocab = self.vocabulary();
        if vocab < 2 {
            0.0
        } else {
            self.length() as f64 * (vocab as f64).log2()
        }
    }
}

/// Structural statistics of one parsed snippet.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct AstSummary {
    /// Named-node counts keyed `<language>/<node kind>`; the root is not
    /// counted.
    pub node_counts: BTreeMap<String, usize>,
    /// Depth of the deepest named node, root at depth 0.
    pub max_depth: usize,
    /// One-based inclusive line spans of function definitions.
    pub function_spans: Vec<(usize, usize)>,
    /// Character length of each loop/branch condition.
    pub decision_condition_lengths: Vec<usize>,
    pub assignment_count: usize,
    /// Lengths of variable identifiers at declarations, parameters and
    /// assignment targets.
    pub identifier_lengths: Vec<usize>,
    /// Non-blank lines.
    pub lines_of_code: usize,
    pub halstead: HalsteadCounts,
    pub cyclomatic_complexity: usize,
}

/// How to find the condition text of a decision node.
#[derive(Debug, Clone, Copy)]
enum Condition {
    Field(&'static str),
    /// From the start of the first field to the end of the second.
    Span(&'static str, &'static str),
    NamedChild(usize),
}

struct Roles {
    functions: &'static [&'static str],
    decisions: &'static [(&'static str, Condition)],
    /// Nodes that add one to cyclomatic complexity.
    branches: &'static [&'static str],
    assignment_parents: &'static [&'static str],
    /// Nodes treated as a single Halstead operand.
    atomic: &'static [&'static str],
    comments: &'static [&'static str],
}

const ASSIGNMENT_OPERATORS: &[&str] = &[
    "=", "+=", "-=", "*=", "/=", "%=", "//=", "**=", "@=", "&=", "|=", "^=", "<<=", ">>=",
    ">>>=", ":=",
];

const LOGICAL_OPERATORS: &[&str] = &["&&", "||", "and", "or"];

const PYTHON: Roles = Roles {
    functions: &["function_definition"],
    decisions: &[
        ("if_statement", Condition::Field("condition")),
        ("elif_clause", Condition::Field("condition")),
        ("while_statement", Condition::Field("condition")),
        ("for_statement", Condition::Span("left", "right")),
        ("conditional_expression", Condition::NamedChild(1)),
    ],
    branches: &[
        "if_statement",
        "elif_clause",
        "for_statement",
        "while_statement",
        "except_clause",
        "conditional_expression",
        "boolean_operator",
        "for_in_clause",
        "if_clause",
        "case_clause",
    ],
    assignment_parents: &["assignment", "augmented_assignment", "named_expression"],
    atomic: &["string", "concatenated_string"],
    comments: &["comment"],
};

const JAVA: Roles = Roles {
    functions: &["method_declaration", "constructor_declaration"],
    decisions: &[
        ("if_statement", Condition::Field("condition")),
        ("while_statement", Condition::Field("condition")),
        ("do_statement", Condition::Field("condition")),
        ("for_statement", Condition::Field("condition")),
        ("enhanced_for_statement", Condition::Span("type", "value")),
        ("ternary_expression", Condition::Field("condition")),
        ("switch_expression", Condition::Field("condition")),
    ],
    branches: &[
        "if_statement",
        "while_statement",
        "do_statement",
        "for_statement",
        "enhanced_for_statement",
        "catch_clause",
        "ternary_expression",
    ],
    assignment_parents: &["assignment_expression", "variable_declarator"],
    atomic: &["string_literal", "text_block", "character_literal"],
    comments: &["line_comment", "block_comment"],
};

const CPP: Roles = Roles {
    functions: &["function_definition"],
    decisions: &[
        ("if_statement", Condition::Field("condition")),
        ("while_statement", Condition::Field("condition")),
        ("do_statement", Condition::Field("condition")),
        ("for_statement", Condition::Field("condition")),
        ("for_range_loop", Condition::Span("type", "right")),
        ("conditional_expression", Condition::Field("condition")),
        ("switch_statement", Condition::Field("condition")),
    ],
    branches: &[
        "if_statement",
        "while_statement",
        "do_statement",
        "for_statement",
        "for_range_loop",
        "catch_clause",
        "conditional_expression",
    ],
    assignment_parents: &["assignment_expression", "init_declarator"],
    atomic: &[
        "string_literal",
        "raw_string_literal",
        "char_literal",
        "concatenated_string",
    ],
    comments: &["comment"],
};

fn roles(language: &Language) -> Option<&'static Roles> {
    match language {
        Language::Python => Some(&PYTHON),
        Language::Java => Some(&JAVA),
        Language::Cpp => Some(&CPP),
        _ => None,
    }
}

pub fn lines_of_code(code: &str) -> usize {
    code.lines().filter(|l| !l.trim().is_empty()).count()
}

/// Strips one pair of enclosing parentheses and surrounding whitespace.
fn condition_text(text: &str) -> &str {
    let t = text.trim();
    match t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        Some(inner) => inner.trim(),
        None => t,
    }
}

fn condition_length(tree: &SyntaxTree, id: usize, rule: Condition, code: &str) -> Option<usize> {
    let text = match rule {
        Condition::Field(field) => tree.text(tree.child_by_field(id, field)?, code),
        Condition::Span(from, to) => {
            let start = tree.node(tree.child_by_field(id, from)?).bytes.start;
            let end = tree.node(tree.child_by_field(id, to)?).bytes.end;
            &code[start..end]
        }
        Condition::NamedChild(n) => tree.text(tree.named_children(id).nth(n)?, code),
    };
    Some(condition_text(text).chars().count())
}

/// Identifier leaves of a binding target, following tuple/list patterns and
/// C++ declarator wrappers but not attribute or subscript targets.
fn binding_identifiers(tree: &SyntaxTree, id: usize, out: &mut Vec<usize>) {
    let node = tree.node(id);
    match node.kind {
        "identifier" | "field_identifier" => out.push(id),
        "pattern_list" | "tuple_pattern" | "list_pattern" | "list_splat_pattern"
        | "dictionary_splat_pattern" | "parenthesized_expression" | "expression_list"
        | "tuple" | "list" => {
            for child in tree.named_children(id) {
                binding_identifiers(tree, child, out);
            }
        }
        "init_declarator" | "pointer_declarator" | "reference_declarator"
        | "array_declarator" => {
            match tree.child_by_field(id, "declarator") {
                Some(inner) => binding_identifiers(tree, inner, out),
                None => {
                    if let Some(inner) = tree.named_children(id).next() {
                        binding_identifiers(tree, inner, out);
                    }
                }
            }
        }
        _ => {}
    }
}

fn variable_identifiers(tree: &SyntaxTree, id: usize, language: &Language, out: &mut Vec<usize>) {
    let node = tree.node(id);
    let field = |name| tree.child_by_field(id, name);
    match (language, node.kind) {
        (Language::Python, "assignment" | "augmented_assignment")
        | (Language::Python, "for_statement" | "for_in_clause") => {
            if let Some(target) = field("left") {
                binding_identifiers(tree, target, out);
            }
        }
        (Language::Python, "named_expression") => {
            if let Some(name) = field("name") {
                binding_identifiers(tree, name, out);
            }
        }
        (Language::Python, "parameters" | "lambda_parameters") => {
            for child in tree.named_children(id) {
                let target = match tree.node(child).kind {
                    "default_parameter" | "typed_default_parameter" => {
                        tree.child_by_field(child, "name")
                    }
                    "typed_parameter" => tree
                        .named_children(child)
                        .find(|&c| tree.node(c).kind != "type"),
                    _ => Some(child),
                };
                if let Some(target) = target {
                    binding_identifiers(tree, target, out);
                }
            }
        }
        (
            Language::Java,
            "variable_declarator" | "formal_parameter" | "catch_formal_parameter"
            | "enhanced_for_statement",
        ) => {
            if let Some(name) = field("name") {
                binding_identifiers(tree, name, out);
            }
        }
        (Language::Java | Language::Cpp, "assignment_expression") => {
            if let Some(target) = field("left") {
                binding_identifiers(tree, target, out);
            }
        }
        (
            Language::Cpp,
            "declaration" | "field_declaration" | "parameter_declaration"
            | "optional_parameter_declaration" | "for_range_loop",
        ) => {
            for child in tree.nodes[id].children.iter().copied() {
                if tree.node(child).field == Some("declarator") {
                    binding_identifiers(tree, child, out);
                }
            }
        }
        _ => {}
    }
}

fn adds_complexity(tree: &SyntaxTree, id: usize, roles: &Roles) -> bool {
    let node = tree.node(id);
    if roles.branches.contains(&node.kind) {
        return true;
    }
    match node.kind {
        "binary_expression" => tree
            .child_by_field(id, "operator")
            .is_some_and(|op| LOGICAL_OPERATORS.contains(&tree.node(op).kind)),
        "switch_label" => tree
            .nodes[id]
            .children
            .first()
            .is_some_and(|&c| tree.node(c).kind == "case"),
        "case_statement" => tree.child_by_field(id, "value").is_some(),
        _ => false,
    }
}

/// Summarizes a parsed snippet. Returns `None` for languages without role
/// tables.
pub fn summarize(tree: &SyntaxTree, code: &str, language: &Language) -> Option<AstSummary> {
    let roles = roles(language)?;
    let prefix = language.as_str();
    let mut summary = AstSummary {
        lines_of_code: lines_of_code(code),
        cyclomatic_complexity: 1,
        ..AstSummary::default()
    };

    // named depth of each node, indexed by id
    let mut depth = vec![0usize; tree.nodes.len()];
    let mut operators: HashSet<&str> = HashSet::new();
    let mut operands: HashSet<&str> = HashSet::new();
    let mut identifiers = Vec::new();

    let mut stack = vec![(SyntaxTree::ROOT, false)];
    while let Some((id, inside_atomic)) = stack.pop() {
        let node = tree.node(id);
        if let Some(parent) = node.parent {
            depth[id] = depth[parent] + usize::from(node.named);
        }
        if node.missing {
            continue;
        }

        if node.named && id != SyntaxTree::ROOT {
            *summary
                .node_counts
                .entry(format!("{prefix}/{}", node.kind))
                .or_insert(0) += 1;
            summary.max_depth = summary.max_depth.max(depth[id]);
        }

        if roles.functions.contains(&node.kind) {
            summary
                .function_spans
                .push((node.start_row + 1, node.end_row + 1));
        }
        if let Some(&(_, rule)) = roles.decisions.iter().find(|(k, _)| *k == node.kind) {
            if let Some(len) = condition_length(tree, id, rule, code) {
                summary.decision_condition_lengths.push(len);
            }
        }
        if adds_complexity(tree, id, roles) {
            summary.cyclomatic_complexity += 1;
        }
        if !node.named
            && ASSIGNMENT_OPERATORS.contains(&node.kind)
            && node
                .parent
                .is_some_and(|p| roles.assignment_parents.contains(&tree.node(p).kind))
        {
            summary.assignment_count += 1;
        }
        variable_identifiers(tree, id, language, &mut identifiers);

        // Halstead: leaves and atomic literals; comments and zero-width
        // tokens are ignored.
        let atomic = roles.atomic.contains(&node.kind);
        if !inside_atomic
            && (atomic || node.children.is_empty())
            && !node.bytes.is_empty()
            && !roles.comments.contains(&node.kind)
        {
            if node.named {
                summary.halstead.total_operands += 1;
                operands.insert(&code[node.bytes.clone()]);
            } else {
                summary.halstead.total_operators += 1;
                operators.insert(node.kind);
            }
        }

        for &child in node.children.iter().rev() {
            stack.push((child, inside_atomic || atomic));
        }
    }

    summary.halstead.distinct_operators = operators.len();
    summary.halstead.distinct_operands = operands.len();
    summary.identifier_lengths = identifiers
        .into_iter()
        .map(|id| tree.text(id, code).chars().count())
        .collect();
    Some(summary)
}
