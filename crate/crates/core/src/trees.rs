//! Binary and ternary decision trees.
//!
//! Children are ordered by query answer: `0, 1` for binary trees and
//! `0, u, 1` for ternary trees. No root-to-leaf path queries a variable twice.
//!
//! Text format (S-expression): a leaf is `0`, `u` or `1`; an internal node is
//! `(x<INDEX> <child> <child>)` or `(x<INDEX> <child> <child> <child>)`,
//! separated by single spaces.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::functions::{
    hazard_free_extension, lazy_extension, BooleanFunction, TernaryFunction, UCountOrder,
    DEFAULT_TABLE_LIMIT,
};
use crate::kernel::{pow3, Ternary, TernaryWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Arity {
    Binary,
    Ternary,
}

impl Arity {
    pub fn branches(self) -> usize {
        match self {
            Arity::Binary => 2,
            Arity::Ternary => 3,
        }
    }

    /// Child slot for a query answer, `None` for `u` in a binary tree.
    #[inline]
    pub fn slot(self, answer: Ternary) -> Option<usize> {
        match (self, answer) {
            (Arity::Ternary, a) => Some(a.digit()),
            (Arity::Binary, Ternary::Zero) => Some(0),
            (Arity::Binary, Ternary::One) => Some(1),
            (Arity::Binary, Ternary::Unknown) => None,
        }
    }

    /// Query answer labelling a child slot.
    pub fn answer(self, slot: usize) -> Ternary {
        match self {
            Arity::Ternary => Ternary::from_digit(slot),
            Arity::Binary => Ternary::from(slot == 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Node {
    Leaf(Ternary),
    Query { var: usize, children: Box<[Node]> },
}

impl Node {
    pub fn leaf(value: Ternary) -> Node {
        Node::Leaf(value)
    }

    pub fn query(var: usize, children: Vec<Node>) -> Node {
        Node::Query {
            var,
            children: children.into_boxed_slice(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Node::Leaf(_) => 1,
            Node::Query { children, .. } => children.iter().map(Node::size).sum(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Node::Leaf(_) => 0,
            Node::Query { children, .. } => 1 + children.iter().map(Node::depth).max().unwrap_or(0),
        }
    }

    /// Relabels every leaf through `f`.
    pub fn map_leaves(&self, f: &impl Fn(Ternary) -> Ternary) -> Node {
        match self {
            Node::Leaf(v) => Node::Leaf(f(*v)),
            Node::Query { var, children } => Node::Query {
                var: *var,
                children: children.iter().map(|c| c.map_leaves(f)).collect(),
            },
        }
    }

    fn max_var(&self) -> Option<usize> {
        match self {
            Node::Leaf(_) => None,
            Node::Query { var, children } => children
                .iter()
                .filter_map(Node::max_var)
                .chain(std::iter::once(*var))
                .max(),
        }
    }

    fn write_sexpr(&self, out: &mut String) {
        match self {
            Node::Leaf(v) => out.push(v.as_char()),
            Node::Query { var, children } => {
                out.push_str(&format!("(x{var}"));
                for c in children.iter() {
                    out.push(' ');
                    c.write_sexpr(out);
                }
                out.push(')');
            }
        }
    }
}

/// How a tree is required to agree with a Boolean function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Binary tree, correct on every stable input.
    Boolean,
    /// Ternary tree, equal to `f~` on all `3^n` words.
    HazardFree,
    /// Ternary tree, equal to `f~` on words with at most `k` unstable digits.
    KBit(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DecisionTree {
    arity: Arity,
    root: Node,
}

impl DecisionTree {
    pub fn new(arity: Arity, root: Node) -> Result<Self> {
        validate(arity, &root, &mut Vec::new())?;
        Ok(DecisionTree { arity, root })
    }

    pub fn leaf(arity: Arity, value: Ternary) -> Result<Self> {
        Self::new(arity, Node::Leaf(value))
    }

    pub fn arity(&self) -> Arity {
        self.arity
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn into_root(self) -> Node {
        self.root
    }

    /// Number of leaves.
    pub fn size(&self) -> usize {
        self.root.size()
    }

    /// Maximum number of queries on a root-to-leaf path.
    pub fn depth(&self) -> usize {
        self.root.depth()
    }

    /// Smallest input length the tree can be evaluated on.
    pub fn min_vars(&self) -> usize {
        self.root.max_var().map_or(0, |v| v + 1)
    }

    /// Leaves reachable along paths with at most `k` `u`-labelled edges.
    pub fn size_within_budget(&self, k: usize) -> usize {
        fn go(node: &Node, arity: Arity, budget: usize) -> usize {
            match node {
                Node::Leaf(_) => 1,
                Node::Query { children, .. } => children
                    .iter()
                    .enumerate()
                    .map(|(slot, c)| match arity.answer(slot) {
                        Ternary::Unknown if budget == 0 => 0,
                        Ternary::Unknown => go(c, arity, budget - 1),
                        _ => go(c, arity, budget),
                    })
                    .sum(),
            }
        }
        go(&self.root, self.arity, k)
    }

    pub fn evaluate(&self, x: &TernaryWord) -> Result<Ternary> {
        if x.len() < self.min_vars() {
            return Err(Error::LengthMismatch {
                expected: self.min_vars(),
                found: x.len(),
            });
        }
        self.evaluate_digits(x.digits())
    }

    pub(crate) fn evaluate_digits(&self, x: &[Ternary]) -> Result<Ternary> {
        let mut node = &self.root;
        loop {
            match node {
                Node::Leaf(v) => return Ok(*v),
                Node::Query { var, children } => {
                    let slot = self.arity.slot(x[*var]).ok_or(Error::UnstableQuery(*var))?;
                    node = &children[slot];
                }
            }
        }
    }

    // a single leaf reads the same under either arity
    fn has_queries(&self) -> bool {
        matches!(self.root, Node::Query { .. })
    }

    pub fn computes(&self, f: &BooleanFunction, mode: Mode) -> bool {
        self.check(f, mode).is_ok()
    }

    /// Like [`DecisionTree::computes`], reporting the first disagreeing input.
    pub fn check(&self, f: &BooleanFunction, mode: Mode) -> Result<()> {
        let n = f.n();
        if self.min_vars() > n {
            return Err(Error::NotComputing(format!(
                "tree queries x{} but the function has {n} variables",
                self.min_vars() - 1
            )));
        }
        match mode {
            Mode::Boolean => {
                if self.arity != Arity::Binary && self.has_queries() {
                    return Err(Error::NotComputing(
                        "boolean mode needs a binary tree".into(),
                    ));
                }
                for idx in 0..1usize << n {
                    let x = TernaryWord::from_boolean_index(n, idx);
                    let got = self.evaluate_digits(x.digits())?;
                    if got != Ternary::from(f.value(idx)) {
                        return Err(mismatch(&x, got, Ternary::from(f.value(idx))));
                    }
                }
                Ok(())
            }
            Mode::HazardFree | Mode::KBit(_) => {
                let k = match mode {
                    Mode::KBit(k) => Some(k),
                    _ => None,
                };
                let target = if n <= DEFAULT_TABLE_LIMIT {
                    hazard_free_extension(f)?
                } else {
                    lazy_extension(f)
                };
                self.check_ternary(&target, k)
            }
        }
    }

    /// Agreement with an arbitrary ternary function on all words with at most
    /// `max_unstable` `u` digits (all words when `None`).
    pub fn check_ternary(&self, g: &TernaryFunction, max_unstable: Option<usize>) -> Result<()> {
        if self.arity != Arity::Ternary && self.has_queries() {
            return Err(Error::NotComputing(
                "ternary modes need a ternary tree".into(),
            ));
        }
        let n = g.n();
        if self.min_vars() > n {
            return Err(Error::NotComputing(format!(
                "tree queries x{} but the function has {n} variables",
                self.min_vars() - 1
            )));
        }
        let order = UCountOrder::new(n);
        let limit = max_unstable.unwrap_or(n);
        for idx in 0..pow3(n) {
            if order.ucount[idx] as usize > limit {
                continue;
            }
            let x = TernaryWord::from_index(n, idx);
            let got = self.evaluate_digits(x.digits())?;
            let expected = g.eval_digits(x.digits());
            if got != expected {
                return Err(mismatch(&x, got, expected));
            }
        }
        Ok(())
    }

    /// Agreement with `g` on the given words only (spot validation for
    /// functions too large to sweep).
    pub fn check_words<'a>(
        &self,
        g: &TernaryFunction,
        words: impl IntoIterator<Item = &'a TernaryWord>,
    ) -> Result<()> {
        for x in words {
            let got = self.evaluate(x)?;
            let expected = g.eval(x)?;
            if got != expected {
                return Err(mismatch(x, got, expected));
            }
        }
        Ok(())
    }

    /// Deletes every `u`-child. The result is a binary tree; a `u` leaf left
    /// on a stable path (including a `u` root) is rejected.
    pub fn strip_u_subtrees(&self) -> Result<DecisionTree> {
        if self.arity != Arity::Ternary {
            return Err(Error::InvalidTree(
                "strip_u_subtrees needs a ternary tree".into(),
            ));
        }
        fn go(node: &Node) -> Result<Node> {
            match node {
                Node::Leaf(Ternary::Unknown) => Err(Error::InvalidTree(
                    "u leaf reachable by stable answers only".into(),
                )),
                Node::Leaf(v) => Ok(Node::Leaf(*v)),
                Node::Query { var, children } => Ok(Node::query(
                    *var,
                    vec![go(&children[0])?, go(&children[2])?],
                )),
            }
        }
        DecisionTree::new(Arity::Binary, go(&self.root)?)
    }

    /// Binary tree viewed as ternary, with a `u` leaf on every `u` branch.
    pub fn lift(&self) -> DecisionTree {
        fn go(node: &Node) -> Node {
            match node {
                Node::Leaf(v) => Node::Leaf(*v),
                Node::Query { var, children } => Node::query(
                    *var,
                    vec![
                        go(&children[0]),
                        Node::Leaf(Ternary::Unknown),
                        go(&children[1]),
                    ],
                ),
            }
        }
        match self.arity {
            Arity::Ternary => self.clone(),
            Arity::Binary => DecisionTree {
                arity: Arity::Ternary,
                root: go(&self.root),
            },
        }
    }

    pub fn to_sexpr(&self) -> String {
        let mut out = String::new();
        self.root.write_sexpr(&mut out);
        out
    }

    /// Parses the S-expression format. A bare leaf takes the given arity.
    pub fn parse_with_arity(text: &str, arity: Arity) -> Result<Self> {
        let (root, found) = parse_sexpr(text)?;
        if let Some(found) = found {
            if found != arity {
                return Err(Error::Parse(format!(
                    "expected a {arity:?} tree, found {found:?}"
                )));
            }
        }
        DecisionTree::new(arity, root)
    }
}

fn mismatch(x: &TernaryWord, got: Ternary, expected: Ternary) -> Error {
    Error::NotComputing(format!("input {x}: tree gives {got}, expected {expected}"))
}

fn validate(arity: Arity, node: &Node, path: &mut Vec<usize>) -> Result<()> {
    match node {
        Node::Leaf(v) => {
            if arity == Arity::Binary && !v.is_stable() {
                return Err(Error::InvalidTree("binary tree with a u leaf".into()));
            }
            Ok(())
        }
        Node::Query { var, children } => {
            if children.len() != arity.branches() {
                return Err(Error::InvalidTree(format!(
                    "x{var} has {} children, expected {}",
                    children.len(),
                    arity.branches()
                )));
            }
            if path.contains(var) {
                return Err(Error::InvalidTree(format!(
                    "x{var} queried twice on one path"
                )));
            }
            path.push(*var);
            for c in children.iter() {
                validate(arity, c, path)?;
            }
            path.pop();
            Ok(())
        }
    }
}

impl fmt::Display for DecisionTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sexpr())
    }
}

/// Infers the arity from the first internal node; a bare stable leaf parses
/// as binary, a bare `u` as ternary.
impl FromStr for DecisionTree {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let (root, found) = parse_sexpr(text)?;
        let arity = found.unwrap_or(match root {
            Node::Leaf(Ternary::Unknown) => Arity::Ternary,
            _ => Arity::Binary,
        });
        DecisionTree::new(arity, root)
    }
}

fn parse_sexpr(text: &str) -> Result<(Node, Option<Arity>)> {
    let text = text.strip_suffix('\n').unwrap_or(text);
    let mut parser = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        arity: None,
    };
    let root = parser.node()?;
    if parser.pos != parser.bytes.len() {
        return Err(parser.error("trailing input"));
    }
    Ok((root, parser.arity))
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    arity: Option<Arity>,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at byte {}", self.pos))
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected {:?}", b as char)))
        }
    }

    fn node(&mut self) -> Result<Node> {
        match self.peek() {
            Some(b'0') => self.leaf(Ternary::Zero),
            Some(b'u') => self.leaf(Ternary::Unknown),
            Some(b'1') => self.leaf(Ternary::One),
            Some(b'(') => {
                self.pos += 1;
                self.expect(b'x')?;
                let start = self.pos;
                while self.peek().is_some_and(|b| b.is_ascii_digit()) {
                    self.pos += 1;
                }
                let var = std::str::from_utf8(&self.bytes[start..self.pos])
                    .ok()
                    .and_then(|s| s.parse::<usize>().ok())
                    .ok_or_else(|| self.error("expected variable index"))?;
                let mut children = Vec::new();
                while self.peek() == Some(b' ') {
                    self.pos += 1;
                    children.push(self.node()?);
                }
                self.expect(b')')?;
                let arity = match children.len() {
                    2 => Arity::Binary,
                    3 => Arity::Ternary,
                    k => return Err(self.error(&format!("node with {k} children"))),
                };
                match self.arity {
                    None => self.arity = Some(arity),
                    Some(a) if a != arity => {
                        return Err(self.error("mixed binary and ternary nodes"))
                    }
                    _ => {}
                }
                Ok(Node::query(var, children))
            }
            _ => Err(self.error("expected a leaf or '('")),
        }
    }

    fn leaf(&mut self, v: Ternary) -> Result<Node> {
        self.pos += 1;
        Ok(Node::Leaf(v))
    }
}

pub fn evaluate(t: &DecisionTree, x: &TernaryWord) -> Result<Ternary> {
    t.evaluate(x)
}

pub fn computes(t: &DecisionTree, f: &BooleanFunction, mode: Mode) -> bool {
    t.computes(f, mode)
}

pub fn strip_u_subtrees(t: &DecisionTree) -> Result<DecisionTree> {
    t.strip_u_subtrees()
}
