//! Grammar backends turn source text into a [`SyntaxTree`].
//!
//! The tree is an owned, grammar-neutral copy of whatever concrete syntax
//! tree the backend produced, so summary and feature code never touches the
//! parser library directly.

use std::cell::RefCell;
use std::ops::Range;

use tree_sitter::{Parser, TreeCursor};

use super::StylometryError;
use crate::corpus::Language;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxNode {
    pub kind: &'static str,
    pub named: bool,
    /// Field name under which the parent holds this node.
    pub field: Option<&'static str>,
    pub missing: bool,
    pub bytes: Range<usize>,
    pub start_row: usize,
    pub end_row: usize,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
}

/// Arena of nodes; index 0 is the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxTree {
    pub nodes: Vec<SyntaxNode>,
}

impl SyntaxTree {
    pub const ROOT: usize = 0;

    pub fn root(&self) -> &SyntaxNode {
        &self.nodes[Self::ROOT]
    }

    pub fn node(&self, id: usize) -> &SyntaxNode {
        &self.nodes[id]
    }

    pub fn text<'a>(&self, id: usize, source: &'a str) -> &'a str {
        &source[self.nodes[id].bytes.clone()]
    }

    pub fn child_by_field(&self, id: usize, field: &str) -> Option<usize> {
        self.nodes[id]
            .children
            .iter()
            .copied()
            .find(|&c| self.nodes[c].field == Some(field))
    }

    pub fn named_children(&self, id: usize) -> impl Iterator<Item = usize> + '_ {
        self.nodes[id]
            .children
            .iter()
            .copied()
            .filter(|&c| self.nodes[c].named)
    }

    /// Node ids in depth-first pre-order.
    pub fn preorder(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![Self::ROOT];
        while let Some(id) = stack.pop() {
            order.push(id);
            stack.extend(self.nodes[id].children.iter().rev().copied());
        }
        order
    }
}

pub trait GrammarBackend: Send + Sync {
    fn name(&self) -> &str;

    fn supports(&self, language: &Language) -> bool;

    fn parse(&self, code: &str, language: &Language) -> Result<SyntaxTree, StylometryError>;
}

/// Tree-sitter grammars for Python, Java and C++.
#[derive(Debug, Default, Clone, Copy)]
pub struct TreeSitterBackend;

/// Largest share of a file that may sit under ERROR nodes before the parse
/// is rejected.
const MAX_ERROR_SHARE: f64 = 0.5;

thread_local! {
    static PARSERS: RefCell<Vec<(Language, Parser)>> = const { RefCell::new(Vec::new()) };
}

impl TreeSitterBackend {
    pub fn grammar(language: &Language) -> Option<tree_sitter::Language> {
        match language {
            Language::Python => Some(tree_sitter_python::LANGUAGE.into()),
            Language::Java => Some(tree_sitter_java::LANGUAGE.into()),
            Language::Cpp => Some(tree_sitter_cpp::LANGUAGE.into()),
            _ => None,
        }
    }

    fn with_parser<R>(
        language: &Language,
        f: impl FnOnce(&mut Parser) -> R,
    ) -> Result<R, StylometryError> {
        PARSERS.with(|cell| {
            let mut parsers = cell.borrow_mut();
            let pos = match parsers.iter().position(|(l, _)| l == language) {
                Some(pos) => pos,
                None => {
                    let grammar = Self::grammar(language).ok_or_else(|| {
                        StylometryError::UnsupportedLanguage(language.as_str().to_string())
                    })?;
                    let mut parser = Parser::new();
                    parser
                        .set_language(&grammar)
                        .map_err(|e| StylometryError::Backend(e.to_string()))?;
                    parsers.push((language.clone(), parser));
                    parsers.len() - 1
                }
            };
            Ok(f(&mut parsers[pos].1))
        })
    }
}

fn copy_tree(cursor: &mut TreeCursor<'_>) -> SyntaxTree {
    let mut nodes: Vec<SyntaxNode> = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    loop {
        let node = cursor.node();
        let id = nodes.len();
        let parent = stack.last().copied();
        nodes.push(SyntaxNode {
            kind: node.kind(),
            named: node.is_named(),
            field: cursor.field_name(),
            missing: node.is_missing(),
            bytes: node.byte_range(),
            start_row: node.start_position().row,
            end_row: node.end_position().row,
            parent,
            children: Vec::new(),
        });
        if let Some(p) = parent {
            nodes[p].children.push(id);
        }
        if cursor.goto_first_child() {
            stack.push(id);
            continue;
        }
        loop {
            if cursor.goto_next_sibling() {
                break;
            }
            if !cursor.goto_parent() {
                return SyntaxTree { nodes };
            }
            stack.pop();
        }
    }
}

fn error_share(tree: &SyntaxTree, code: &str) -> f64 {
    let significant = code.bytes().filter(|b| !b.is_ascii_whitespace()).count();
    if significant == 0 {
        return 0.0;
    }
    let mut covered = 0usize;
    let mut stack = vec![SyntaxTree::ROOT];
    while let Some(id) = stack.pop() {
        let node = tree.node(id);
        if node.kind == "ERROR" {
            covered += code.as_bytes()[node.bytes.clone()]
                .iter()
                .filter(|b| !b.is_ascii_whitespace())
                .count();
        } else {
            stack.extend(node.children.iter().copied());
        }
    }
    covered as f64 / significant as f64
}

impl GrammarBackend for TreeSitterBackend {
    fn name(&self) -> &str {
        "tree-sitter"
    }

    fn supports(&self, language: &Language) -> bool {
        Self::grammar(language).is_some()
    }

    fn parse(&self, code: &str, language: &Language) -> Result<SyntaxTree, StylometryError> {
        let parsed = Self::with_parser(language, |parser| parser.parse(code, None))?;
        let ts_tree = parsed.ok_or(StylometryError::Unparsable)?;
        let root = ts_tree.root_node();
        if root.kind() == "ERROR" {
            return Err(StylometryError::Unparsable);
        }
        let tree = copy_tree(&mut root.walk());
        if root.has_error() && error_share(&tree, code) > MAX_ERROR_SHARE {
            return Err(StylometryError::Unparsable);
        }
        Ok(tree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn copies_fields_and_structure() {
        let tree = TreeSitterBackend.parse("x = 1\n", &Language::Python).unwrap();
        assert_eq!(tree.root().kind, "module");
        let assignment = tree
            .preorder()
            .into_iter()
            .find(|&id| tree.node(id).kind == "assignment")
            .unwrap();
        let left = tree.child_by_field(assignment, "left").unwrap();
        assert_eq!(tree.text(left, "x = 1\n"), "x");
    }

    #[test]
    fn garbage_is_unparsable() {
        let err = TreeSitterBackend
            .parse("}}}} ))) class ((( {{{{ ;;; ]]] def", &Language::Python)
            .unwrap_err();
        assert!(matches!(err, StylometryError::Unparsable));
    }

    #[test]
    fn unsupported_language() {
        assert!(!TreeSitterBackend.supports(&Language::Go));
        assert!(TreeSitterBackend.parse("package main", &Language::Go).is_err());
    }
}
