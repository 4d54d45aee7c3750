//! Binary trees and canonical prefix codes realizing path-length sequences.

use std::collections::BTreeSet;
use std::fmt;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::sequence::{Depth, PathLengthSequence};

/// A codeword over `{0, 1}`; `false` is `0` (go left).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Codeword(pub Vec<bool>);

impl Codeword {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_prefix_of(&self, other: &Codeword) -> bool {
        other.0.starts_with(&self.0)
    }

    /// Binary increment; `None` on overflow (all ones).
    fn increment(&self) -> Option<Codeword> {
        let mut bits = self.0.clone();
        for bit in bits.iter_mut().rev() {
            if *bit {
                *bit = false;
            } else {
                *bit = true;
                return Some(Codeword(bits));
            }
        }
        None
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Codeword {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Parse { token: s.to_string() }),
            })
            .collect::<Result<Vec<_>>>()
            .map(Codeword)
    }
}

/// Canonical code: the first codeword is `l_1` zeros, each next one is the
/// previous plus one, padded with zeros on the right to the next length.
pub fn canonical_code(l: &PathLengthSequence) -> Vec<Codeword> {
    let depths = l.components();
    let mut out: Vec<Codeword> = Vec::with_capacity(depths.len());
    let mut current = Codeword(vec![false; depths[0] as usize]);
    out.push(current.clone());
    for &d in &depths[1..] {
        let mut next = current
            .increment()
            .expect("Kraft equality leaves room for every codeword");
        next.0.resize(d as usize, false);
        out.push(next.clone());
        current = next;
    }
    out
}

/// A full binary tree with ordered children.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Leaf,
    Internal(Box<Node>, Box<Node>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CodeTree {
    root: Node,
}

/// Trie used while assembling a tree from arbitrary codewords.
enum Partial {
    Empty,
    Leaf,
    Branch(Box<Partial>, Box<Partial>),
}

impl Partial {
    fn insert(&mut self, bits: &[bool], word: &Codeword) -> Result<()> {
        match self {
            Partial::Leaf => Err(Error::NotPrefixFree(word.to_string())),
            Partial::Empty if bits.is_empty() => {
                *self = Partial::Leaf;
                Ok(())
            }
            Partial::Branch(..) if bits.is_empty() => Err(Error::NotPrefixFree(word.to_string())),
            Partial::Empty => {
                *self = Partial::Branch(Box::new(Partial::Empty), Box::new(Partial::Empty));
                self.insert(bits, word)
            }
            Partial::Branch(left, right) => {
                let child = if bits[0] { right } else { left };
                child.insert(&bits[1..], word)
            }
        }
    }

    fn finish(self, path: &mut String) -> Result<Node> {
        match self {
            Partial::Leaf => Ok(Node::Leaf),
            Partial::Empty => Err(Error::MalformedTree(format!(
                "node {:?} has exactly one child",
                parent_label(path)
            ))),
            Partial::Branch(left, right) => {
                path.push('0');
                let l = left.finish(path);
                path.pop();
                path.push('1');
                let r = right.finish(path);
                path.pop();
                Ok(Node::Internal(Box::new(l?), Box::new(r?)))
            }
        }
    }
}

fn parent_label(path: &str) -> String {
    let parent = &path[..path.len().saturating_sub(1)];
    if parent.is_empty() {
        "root".to_string()
    } else {
        parent.to_string()
    }
}

impl CodeTree {
    /// Builds the tree whose leaves are exactly `words`. Fails if the words
    /// are not prefix-free or leave some internal node with a single child.
    pub fn from_codewords(words: &[Codeword]) -> Result<CodeTree> {
        if words.is_empty() {
            return Err(Error::MalformedTree("no leaves".to_string()));
        }
        let mut trie = Partial::Empty;
        for w in words {
            trie.insert(&w.0, w)?;
        }
        let root = trie.finish(&mut String::new())?;
        Ok(CodeTree { root })
    }

    pub fn from_node(root: Node) -> CodeTree {
        CodeTree { root }
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    /// Leaf codewords in left-to-right order.
    pub fn codewords(&self) -> Vec<Codeword> {
        fn walk(node: &Node, path: &mut Vec<bool>, out: &mut Vec<Codeword>) {
            match node {
                Node::Leaf => out.push(Codeword(path.clone())),
                Node::Internal(l, r) => {
                    path.push(false);
                    walk(l, path, out);
                    path.pop();
                    path.push(true);
                    walk(r, path, out);
                    path.pop();
                }
            }
        }
        let mut out = Vec::new();
        walk(&self.root, &mut Vec::new(), &mut out);
        out
    }

    pub fn leaf_depths(&self) -> Vec<Depth> {
        self.codewords().iter().map(|w| w.len() as Depth).collect()
    }

    /// Leaf depths are nondecreasing from left to right.
    pub fn is_canonical(&self) -> bool {
        self.leaf_depths().windows(2).all(|w| w[0] <= w[1])
    }

    pub fn node_count(&self) -> usize {
        fn count(node: &Node) -> usize {
            match node {
                Node::Leaf => 1,
                Node::Internal(l, r) => 1 + count(l) + count(r),
            }
        }
        count(&self.root)
    }

    /// Graphviz rendering; internal nodes are unlabeled points, leaves show
    /// their codeword and depth.
    pub fn to_dot(&self) -> String {
        fn walk(node: &Node, path: &mut String, out: &mut String) -> String {
            let id = format!("t{}", if path.is_empty() { "root" } else { path.as_str() });
            match node {
                Node::Leaf => {
                    let word = if path.is_empty() { "ε" } else { path.as_str() };
                    let _ = writeln!(out, "    {id} [shape=box, label=\"{word} ({})\"];", path.len());
                }
                Node::Internal(l, r) => {
                    let _ = writeln!(out, "    {id} [shape=point, label=\"\"];");
                    for (bit, child) in [('0', l), ('1', r)] {
                        path.push(bit);
                        let child_id = walk(child, path, out);
                        path.pop();
                        let _ = writeln!(out, "    {id} -> {child_id} [label=\"{bit}\"];");
                    }
                }
            }
            id
        }
        let mut out = String::from("digraph code_tree {\n");
        walk(&self.root, &mut String::new(), &mut out);
        out.push_str("}\n");
        out
    }

    /// Indented rendering for terminals.
    pub fn to_ascii(&self) -> String {
        fn walk(node: &Node, path: &mut String, prefix: &str, out: &mut String) {
            if let Node::Internal(l, r) = node {
                for (bit, child, last) in [('0', l, false), ('1', r, true)] {
                    path.push(bit);
                    let (branch, cont) = if last { ("└─", "  ") } else { ("├─", "│ ") };
                    match **child {
                        Node::Leaf => {
                            let _ = writeln!(out, "{prefix}{branch}{bit} {path} (depth {})", path.len());
                        }
                        Node::Internal(..) => {
                            let _ = writeln!(out, "{prefix}{branch}{bit}");
                        }
                    }
                    walk(child, path, &format!("{prefix}{cont}"), out);
                    path.pop();
                }
            }
        }
        let mut out = String::new();
        match self.root {
            Node::Leaf => out.push_str("ε (depth 0)\n"),
            Node::Internal(..) => out.push_str("•\n"),
        }
        walk(&self.root, &mut String::new(), "", &mut out);
        out
    }
}

/// The canonical tree realizing `l`.
pub fn tree_from_sequence(l: &PathLengthSequence) -> CodeTree {
    CodeTree::from_codewords(&canonical_code(l)).expect("canonical codes form a full tree")
}

/// Sorted leaf depths of a tree.
pub fn sequence_from_tree(tree: &CodeTree) -> PathLengthSequence {
    let mut depths = tree.leaf_depths();
    depths.sort_unstable();
    PathLengthSequence::from_trusted(depths)
}

/// Number of tree nodes at depth at most `depth`, i.e. the distinct prefixes
/// of length `<= depth` of the codewords (the root is the empty prefix).
/// Never increases when moving up in the imbalance order.
pub fn nodes_within_depth(l: &PathLengthSequence, depth: Depth) -> usize {
    let mut prefixes: BTreeSet<&[bool]> = BTreeSet::new();
    let code = canonical_code(l);
    for w in &code {
        for k in 0..=w.len().min(depth as usize) {
            prefixes.insert(&w.0[..k]);
        }
    }
    prefixes.len()
}

/// Number of nodes on the root paths of leaves at depth at most `depth`.
/// Unlike [`nodes_within_depth`] this count is not monotone in the
/// imbalance order: `(2,2,2,2) ⊴ (1,2,3,3)` gives 0 and 2 at depth 1.
pub fn nodes_on_short_leaf_paths(l: &PathLengthSequence, depth: Depth) -> usize {
    let mut prefixes: BTreeSet<&[bool]> = BTreeSet::new();
    let code = canonical_code(l);
    for w in code.iter().filter(|w| w.len() <= depth as usize) {
        for k in 0..=w.len() {
            prefixes.insert(&w.0[..k]);
        }
    }
    prefixes.len()
}

/// Sum of the components, the external path length of the tree.
pub fn sum_components(l: &PathLengthSequence) -> u64 {
    l.sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> PathLengthSequence {
        s.parse().unwrap()
    }

    fn code(s: &str) -> Vec<String> {
        canonical_code(&seq(s)).iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn canonical_code_examples() {
        assert_eq!(code("1,1"), ["0", "1"]);
        assert_eq!(code("1,2,2"), ["0", "10", "11"]);
        assert_eq!(code("1,2,3,3"), ["0", "10", "110", "111"]);
        assert_eq!(code("0"), [""]);
        assert_eq!(code("2,2,3,3,3,3"), ["00", "01", "100", "101", "110", "111"]);
    }

    #[test]
    fn tree_round_trips() {
        for s in ["0", "2,2,2,2", "1,2,3,4,4"] {
            let l = seq(s);
            let t = tree_from_sequence(&l);
            assert!(t.is_canonical());
            assert_eq!(sequence_from_tree(&t), l);
            assert_eq!(tree_from_sequence(&sequence_from_tree(&t)), t);
        }
        assert_eq!(tree_from_sequence(&seq("2,2,2,2")).node_count(), 7);
        assert_eq!(tree_from_sequence(&seq("0")).node_count(), 1);
    }

    #[test]
    fn non_canonical_tree_maps_to_sorted_depths() {
        let words: Vec<Codeword> = ["00", "01", "1"].iter().map(|w| w.parse().unwrap()).collect();
        let t = CodeTree::from_codewords(&words).unwrap();
        assert!(!t.is_canonical());
        assert_eq!(sequence_from_tree(&t), seq("1,2,2"));
    }

    #[test]
    fn malformed_trees_are_rejected() {
        let words: Vec<Codeword> = ["0", "10"].iter().map(|w| w.parse().unwrap()).collect();
        assert!(matches!(
            CodeTree::from_codewords(&words),
            Err(Error::MalformedTree(_))
        ));
        let words: Vec<Codeword> = ["0", "01", "1"].iter().map(|w| w.parse().unwrap()).collect();
        assert!(matches!(
            CodeTree::from_codewords(&words),
            Err(Error::NotPrefixFree(_))
        ));
        assert!(matches!(
            CodeTree::from_codewords(&[]),
            Err(Error::MalformedTree(_))
        ));
    }

    #[test]
    fn nodes_within_depth_examples() {
        assert_eq!(nodes_within_depth(&seq("2,2,2,2"), 2), 7);
        assert_eq!(nodes_within_depth(&seq("1,2,2"), 1), 3);
        assert_eq!(nodes_within_depth(&seq("1,2,3,3"), 2), 5);
        assert_eq!(nodes_within_depth(&seq("1,2,3,3"), 0), 1);
        assert_eq!(nodes_within_depth(&seq("1,2,3,3"), 9), 7);
        assert_eq!(nodes_within_depth(&seq("0"), 0), 1);
    }

    #[test]
    fn short_leaf_path_count_is_not_monotone() {
        assert_eq!(nodes_on_short_leaf_paths(&seq("2,2,2,2"), 2), 7);
        assert_eq!(nodes_on_short_leaf_paths(&seq("1,2,2"), 1), 2);
        assert_eq!(nodes_on_short_leaf_paths(&seq("1,2,3,3"), 2), 4);
        // the more balanced tree has fewer such nodes at depth 1 ...
        assert_eq!(nodes_on_short_leaf_paths(&seq("2,2,2,2"), 1), 0);
        assert_eq!(nodes_on_short_leaf_paths(&seq("1,2,3,3"), 1), 2);
        // ... while the node count within depth 1 agrees
        assert_eq!(nodes_within_depth(&seq("2,2,2,2"), 1), 3);
        assert_eq!(nodes_within_depth(&seq("1,2,3,3"), 1), 3);
    }

    #[test]
    fn sums_along_the_five_leaf_chain() {
        assert_eq!(sum_components(&seq("0")), 0);
        assert_eq!(sum_components(&seq("1,2,3,3")), 9);
        assert_eq!(sum_components(&seq("2,2,2,3,3")), 12);
        assert_eq!(sum_components(&seq("1,3,3,3,3")), 13);
        assert_eq!(sum_components(&seq("1,2,3,4,4")), 14);
    }

    #[test]
    fn renderings() {
        let t = tree_from_sequence(&seq("1,2,2"));
        let dot = t.to_dot();
        assert!(dot.contains("t0 [shape=box, label=\"0 (1)\"]"));
        assert!(dot.contains("troot -> t1 [label=\"1\"]"));
        let ascii = t.to_ascii();
        assert_eq!(
            ascii,
            "•\n├─0 0 (depth 1)\n└─1\n  ├─0 10 (depth 2)\n  └─1 11 (depth 2)\n"
        );
    }
}
