//! Bracketed constituency trees, Penn-Treebank style.
//!
//! Trees arrive as strings like `"(S (NP (DT No) (CD one)) (VP (VBZ cares)))"`.
//! Leaf text is opaque: leaves are assigned token indices positionally,
//! left to right, offset by the sentence start. Rendering writes the leaf
//! index back out, so a round trip through text preserves the structure.

use crate::{NfhError, Result};

/// A phrase node or a leaf holding a token index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstituencyNode {
    Phrase {
        label: String,
        children: Vec<ConstituencyNode>,
    },
    Leaf(usize),
}

impl ConstituencyNode {
    /// Leaf token indices in left-to-right order.
    pub fn leaf_indices(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            ConstituencyNode::Leaf(i) => out.push(*i),
            ConstituencyNode::Phrase { children, .. } => {
                for c in children {
                    c.collect_leaves(out);
                }
            }
        }
    }

    /// Covered token range as (first leaf, last leaf), inclusive.
    pub fn span(&self) -> Option<(usize, usize)> {
        let leaves = self.leaf_indices();
        Some((*leaves.first()?, *leaves.last()?))
    }

    pub fn label(&self) -> Option<&str> {
        match self {
            ConstituencyNode::Phrase { label, .. } => Some(label),
            ConstituencyNode::Leaf(_) => None,
        }
    }

    /// Pre-order traversal over phrase nodes.
    pub fn visit_phrases<'a>(&'a self, f: &mut impl FnMut(&'a ConstituencyNode)) {
        if let ConstituencyNode::Phrase { children, .. } = self {
            f(self);
            for c in children {
                c.visit_phrases(f);
            }
        }
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        self.render_into(&mut s);
        s
    }

    fn render_into(&self, out: &mut String) {
        match self {
            ConstituencyNode::Leaf(i) => out.push_str(&i.to_string()),
            ConstituencyNode::Phrase { label, children } => {
                out.push('(');
                out.push_str(label);
                for c in children {
                    out.push(' ');
                    c.render_into(out);
                }
                out.push(')');
            }
        }
    }
}

/// Parse one bracketed tree; leaves numbered from `first_token`.
pub fn parse_tree(text: &str, first_token: usize) -> Result<ConstituencyNode> {
    let mut parser = Parser {
        chars: text.char_indices().peekable(),
        text,
        next_leaf: first_token,
    };
    parser.skip_ws();
    let node = parser.node()?;
    parser.skip_ws();
    if parser.chars.peek().is_some() {
        return Err(NfhError::format(format!(
            "trailing content after tree: `{text}`"
        )));
    }
    Ok(node)
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    text: &'a str,
    next_leaf: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some((_, c)) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn atom(&mut self) -> &'a str {
        let start = self.chars.peek().map(|&(i, _)| i).unwrap_or(self.text.len());
        let mut end = start;
        while let Some(&(i, c)) = self.chars.peek() {
            if c.is_whitespace() || c == '(' || c == ')' {
                break;
            }
            end = i + c.len_utf8();
            self.chars.next();
        }
        &self.text[start..end]
    }

    fn node(&mut self) -> Result<ConstituencyNode> {
        self.skip_ws();
        match self.chars.peek() {
            Some((_, '(')) => {
                self.chars.next();
                self.skip_ws();
                let label = self.atom();
                if label.is_empty() {
                    return Err(NfhError::format("phrase node without a label"));
                }
                let mut children = Vec::new();
                loop {
                    self.skip_ws();
                    match self.chars.peek() {
                        Some((_, ')')) => {
                            self.chars.next();
                            break;
                        }
                        Some(_) => children.push(self.node()?),
                        None => {
                            return Err(NfhError::format("unbalanced parentheses in tree"))
                        }
                    }
                }
                if children.is_empty() {
                    return Err(NfhError::format(format!(
                        "phrase `{label}` has no children"
                    )));
                }
                Ok(ConstituencyNode::Phrase {
                    label: label.to_string(),
                    children,
                })
            }
            Some(_) => {
                let atom = self.atom();
                if atom.is_empty() {
                    return Err(NfhError::format("empty leaf"));
                }
                let idx = self.next_leaf;
                self.next_leaf += 1;
                Ok(ConstituencyNode::Leaf(idx))
            }
            None => Err(NfhError::format("empty tree")),
        }
    }
}
