//! Explicit tree constructions: Boolean to hazard-free (full and k-bit), the
//! multiplexer trees, and the low-depth tree for the smalldepth family.

use crate::error::{Error, Result};
use crate::functions::{smalldepth_y_offset, BooleanFunction};
use crate::kernel::Ternary;
use crate::trees::{Arity, DecisionTree, Mode, Node};

/// Ordered `(variable, value)` pairs along a root-to-node path.
pub type PathAssignment = Vec<(usize, Ternary)>;

/// Largest multiplexer parameter for [`mux_trees`].
pub const MAX_MUX_TREE: usize = 4;
/// Largest parameter for [`smalldepth_tree`].
pub const MAX_SMALLDEPTH_TREE: usize = 3;

/// The `u`-subtree for a node whose 0- and 1-subtrees compute `t0` and `t1`:
/// a copy of `t0` whose stable `b` leaves are replaced by `t1`, pruned to the
/// path leading to that leaf, with its `!b` leaves relabelled `u`.
pub fn merge_subtrees(t0: &Node, t1: &Node) -> Node {
    graft(t0, &mut Vec::new(), t1)
}

fn graft(node: &Node, path: &mut PathAssignment, t1: &Node) -> Node {
    match node {
        Node::Leaf(Ternary::Unknown) => Node::Leaf(Ternary::Unknown),
        Node::Leaf(b) => {
            let other = b.negate();
            prune(t1, path).map_leaves(&|v| if v == other { Ternary::Unknown } else { v })
        }
        Node::Query { var, children } => {
            let kids = children
                .iter()
                .enumerate()
                .map(|(slot, c)| {
                    path.push((*var, Ternary::from_digit(slot)));
                    let out = graft(c, path, t1);
                    path.pop();
                    out
                })
                .collect();
            Node::query(*var, kids)
        }
    }
}

/// Splices out every node querying an assigned variable, keeping the child
/// along the assigned value.
fn prune(node: &Node, path: &PathAssignment) -> Node {
    match node {
        Node::Leaf(v) => Node::Leaf(*v),
        Node::Query { var, children } => match path.iter().find(|(v, _)| v == var) {
            Some(&(_, a)) => prune(&children[a.digit()], path),
            None => Node::Query {
                var: *var,
                children: children.iter().map(|c| prune(c, path)).collect(),
            },
        },
    }
}

fn require_boolean_tree(t: &DecisionTree, f: &BooleanFunction) -> Result<()> {
    if t.arity() != Arity::Binary {
        return Err(Error::InvalidTree("expected a binary tree".into()));
    }
    t.check(f, Mode::Boolean)
}

/// Hazard-free tree from a Boolean tree for `f`; size at most `2^size(T) - 1`.
pub fn hazard_free_from_boolean(t: &DecisionTree, f: &BooleanFunction) -> Result<DecisionTree> {
    require_boolean_tree(t, f)?;
    fn go(node: &Node) -> Node {
        match node {
            Node::Leaf(v) => Node::Leaf(*v),
            Node::Query { var, children } => {
                let t0 = go(&children[0]);
                let t1 = go(&children[1]);
                let tu = merge_subtrees(&t0, &t1);
                Node::query(*var, vec![t0, tu, t1])
            }
        }
    }
    DecisionTree::new(Arity::Ternary, go(t.root()))
}

/// Tree correct on inputs with at most `k` unstable digits, built level by
/// level: level 0 is the lifted tree, and level `j+1` takes its `u`-children
/// from level `j` of the two stable children.
pub fn k_hazard_free_from_boolean(
    t: &DecisionTree,
    f: &BooleanFunction,
    k: usize,
) -> Result<DecisionTree> {
    require_boolean_tree(t, f)?;
    fn levels(node: &Node, k: usize) -> Vec<Node> {
        match node {
            Node::Leaf(v) => vec![Node::Leaf(*v); k + 1],
            Node::Query { var, children } => {
                let l0 = levels(&children[0], k);
                let l1 = levels(&children[1], k);
                (0..=k)
                    .map(|j| {
                        let tu = match j {
                            0 => Node::Leaf(Ternary::Unknown),
                            _ => merge_subtrees(&l0[j - 1], &l1[j - 1]),
                        };
                        Node::query(*var, vec![l0[j].clone(), tu, l1[j].clone()])
                    })
                    .collect()
            }
        }
    }
    let root = levels(t.root(), k).pop().expect("k + 1 levels");
    DecisionTree::new(Arity::Ternary, root)
}

/// Boolean and hazard-free trees for the multiplexer with `n` selector bits.
///
/// Both query the selectors first. The hazard-free tree then scans the data
/// bits indexed by the resolutions of the selector outcome, stopping at `u`
/// or at the first disagreement.
pub fn mux_trees(n: usize) -> Result<(DecisionTree, DecisionTree)> {
    if n > MAX_MUX_TREE {
        return Err(Error::OutOfRange {
            what: "mux parameter",
            value: n,
            max: MAX_MUX_TREE,
        });
    }
    fn boolean(n: usize, depth: usize, sel: usize) -> Node {
        if depth == n {
            let x = n + sel;
            return Node::query(x, vec![Node::Leaf(Ternary::Zero), Node::Leaf(Ternary::One)]);
        }
        Node::query(
            depth,
            vec![
                boolean(n, depth + 1, sel << 1),
                boolean(n, depth + 1, sel << 1 | 1),
            ],
        )
    }
    fn ternary(n: usize, outcome: &mut Vec<Ternary>) -> Node {
        let depth = outcome.len();
        if depth == n {
            let data: Vec<usize> = resolutions(outcome).into_iter().map(|b| n + b).collect();
            return scan(&data, None);
        }
        let children = Ternary::ALL
            .iter()
            .map(|&a| {
                outcome.push(a);
                let c = ternary(n, outcome);
                outcome.pop();
                c
            })
            .collect();
        Node::query(depth, children)
    }
    let b = DecisionTree::new(Arity::Binary, boolean(n, 0, 0))?;
    let t = DecisionTree::new(Arity::Ternary, ternary(n, &mut Vec::new()))?;
    Ok((b, t))
}

/// Data indices selected by the resolutions of a selector outcome, ascending.
fn resolutions(outcome: &[Ternary]) -> Vec<usize> {
    outcome.iter().fold(vec![0usize], |acc, a| {
        let bits: &[usize] = match a {
            Ternary::Zero => &[0],
            Ternary::One => &[1],
            Ternary::Unknown => &[0, 1],
        };
        acc.iter()
            .flat_map(|&p| bits.iter().map(move |&b| p << 1 | b))
            .collect()
    })
}

fn scan(data: &[usize], expected: Option<Ternary>) -> Node {
    let Some((&x, rest)) = data.split_first() else {
        return Node::Leaf(expected.expect("at least one data bit"));
    };
    let children = Ternary::ALL
        .iter()
        .map(|&a| match (a, expected) {
            (Ternary::Unknown, _) => Node::Leaf(Ternary::Unknown),
            (_, Some(e)) if e != a => Node::Leaf(Ternary::Unknown),
            _ => scan(rest, Some(a)),
        })
        .collect();
    Node::query(x, children)
}

/// Depth `2n + 1` hazard-free tree for the smalldepth family.
///
/// For a selector prefix `p` of length `j` the tree queries `s_j`, then
/// `y_p`. With `r0`, `r1` the trees for the prefixes `p0`, `p1`:
/// `s_j = 0` gives `[r0, r0 with 0 -> u, 1]`, `s_j = u` gives
/// `[r0 with 1 -> u, u, r1 with 0 -> u]`, and `s_j = 1` gives
/// `[0, r1 with 1 -> u, r1]`. At full length only `y_p` is queried.
pub fn smalldepth_tree(n: usize) -> Result<DecisionTree> {
    if n == 0 || n > MAX_SMALLDEPTH_TREE {
        return Err(Error::OutOfRange {
            what: "smalldepth parameter",
            value: n,
            max: MAX_SMALLDEPTH_TREE,
        });
    }
    use Ternary::{One, Unknown, Zero};
    fn to_u(t: &Node, from: Ternary) -> Node {
        t.map_leaves(&|v| if v == from { Unknown } else { v })
    }
    fn build(n: usize, len: usize, value: usize) -> Node {
        let y = n + smalldepth_y_offset(len, value);
        if len == n {
            return Node::query(
                y,
                vec![Node::Leaf(Zero), Node::Leaf(Unknown), Node::Leaf(One)],
            );
        }
        let r0 = build(n, len + 1, value << 1);
        let r1 = build(n, len + 1, value << 1 | 1);
        let on_zero = Node::query(y, vec![r0.clone(), to_u(&r0, Zero), Node::Leaf(One)]);
        let on_u = Node::query(
            y,
            vec![to_u(&r0, One), Node::Leaf(Unknown), to_u(&r1, Zero)],
        );
        let on_one = Node::query(y, vec![Node::Leaf(Zero), to_u(&r1, One), r1]);
        Node::query(len, vec![on_zero, on_u, on_one])
    }
    DecisionTree::new(Arity::Ternary, build(n, 0, 0))
}
