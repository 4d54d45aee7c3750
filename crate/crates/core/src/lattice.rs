//! The imbalance lattice for a fixed number of leaves.
//!
//! [`enumerate`] builds the universe of all path-length sequences with `n`
//! components; [`meet`] computes greatest lower bounds by recursing on
//! contractions; [`join`] folds `meet` over the enumerated upper bounds.
//! Balancing moves (`bal`) and the cover relation live here as well.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sequence::{precedes, Depth, PathLengthSequence};
use crate::transforms::{contraction, expansion_at, lower_expansion, upper_expansion};

pub const DEFAULT_CEILING: usize = 20;

/// Upper bound on `n` for operations that enumerate a whole universe.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ceiling(pub usize);

impl Default for Ceiling {
    fn default() -> Self {
        Ceiling(DEFAULT_CEILING)
    }
}

impl Ceiling {
    pub fn check(self, n: usize) -> Result<()> {
        if n > self.0 {
            return Err(Error::ResourceLimit { n, ceiling: self.0 });
        }
        Ok(())
    }
}

/// All path-length sequences with `n` components, sorted lexicographically,
/// together with their order and cover structure (computed on first use).
#[derive(Clone, Debug)]
pub struct LatticeUniverse {
    n: usize,
    elements: Vec<PathLengthSequence>,
    index: HashMap<PathLengthSequence, usize>,
    order: OnceLock<Vec<bool>>,
    covers: OnceLock<Vec<(usize, usize)>>,
}

/// Generates the length-`n` universe by expanding every length-`(n-1)`
/// sequence at every position.
pub fn enumerate(n: usize, ceiling: Ceiling) -> Result<LatticeUniverse> {
    if n == 0 {
        return Err(Error::EmptySequence);
    }
    ceiling.check(n)?;
    let mut level: BTreeSet<PathLengthSequence> = BTreeSet::from([PathLengthSequence::root()]);
    for _ in 1..n {
        let mut next = BTreeSet::new();
        for l in &level {
            for position in 1..=l.len() {
                next.insert(expansion_at(l, position)?);
            }
        }
        level = next;
    }
    Ok(LatticeUniverse::from_elements(n, level.into_iter().collect()))
}

/// [`enumerate`] with the cover relation already computed.
pub fn hasse(n: usize, ceiling: Ceiling) -> Result<LatticeUniverse> {
    let universe = enumerate(n, ceiling)?;
    universe.cover_edges();
    Ok(universe)
}

impl LatticeUniverse {
    fn from_elements(n: usize, elements: Vec<PathLengthSequence>) -> Self {
        let index = elements
            .iter()
            .enumerate()
            .map(|(idx, l)| (l.clone(), idx))
            .collect();
        LatticeUniverse {
            n,
            elements,
            index,
            order: OnceLock::new(),
            covers: OnceLock::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[PathLengthSequence] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, l: &PathLengthSequence) -> Option<usize> {
        self.index.get(l).copied()
    }

    pub fn require(&self, l: &PathLengthSequence) -> Result<usize> {
        self.index_of(l)
            .ok_or_else(|| Error::ElementNotInUniverse(l.clone()))
    }

    fn order(&self) -> &[bool] {
        self.order.get_or_init(|| {
            let m = self.elements.len();
            let mut order = vec![false; m * m];
            for a in 0..m {
                for b in 0..m {
                    order[a * m + b] = a == b || precedes(&self.elements[a], &self.elements[b]);
                }
            }
            order
        })
    }

    /// `elements[a] ⊴ elements[b]`
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.order()[a * self.len() + b]
    }

    /// Cover pairs `(a, b)` meaning `elements[a] ⋖ elements[b]`, sorted.
    pub fn cover_edges(&self) -> &[(usize, usize)] {
        self.covers.get_or_init(|| {
            let m = self.len();
            let mut edges = Vec::new();
            for a in 0..m {
                for b in 0..m {
                    if a == b || !self.leq(a, b) {
                        continue;
                    }
                    let between = (0..m).any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b));
                    if !between {
                        edges.push((a, b));
                    }
                }
            }
            edges
        })
    }

    pub fn lower_covers(&self, idx: usize) -> Vec<usize> {
        self.cover_edges()
            .iter()
            .filter(|&&(_, b)| b == idx)
            .map(|&(a, _)| a)
            .collect()
    }

    pub fn upper_covers(&self, idx: usize) -> Vec<usize> {
        self.cover_edges()
            .iter()
            .filter(|&&(a, _)| a == idx)
            .map(|&(_, b)| b)
            .collect()
    }

    /// Cover pairs as sequences, lower element first.
    pub fn covering_pairs(&self) -> Vec<(PathLengthSequence, PathLengthSequence)> {
        self.cover_edges()
            .iter()
            .map(|&(a, b)| (self.elements[a].clone(), self.elements[b].clone()))
            .collect()
    }

    /// Least upper bound, by folding [`meet`] over all common upper bounds.
    pub fn join(&self, s: &PathLengthSequence, t: &PathLengthSequence) -> Result<PathLengthSequence> {
        check_same_length(s, t)?;
        if s.len() != self.n {
            return Err(Error::LengthMismatch {
                left: s.len(),
                right: self.n,
            });
        }
        let mut bounds = self
            .elements
            .iter()
            .filter(|u| precedes(s, u) && precedes(t, u));
        let first = bounds
            .next()
            .expect("the top element bounds every pair")
            .clone();
        bounds.try_fold(first, |acc, u| meet(&acc, u))
    }

    pub fn minimal_balancing_relation(&self) -> Vec<BalancingStep> {
        self.elements
            .iter()
            .flat_map(|l| {
                excess_indices(l).into_iter().map(move |j| BalancingStep {
                    source: l.clone(),
                    excess_index: j,
                    target: bal(l, j).expect("j is an excess index"),
                })
            })
            .collect()
    }

    pub fn to_hasse_json(&self) -> HasseJson {
        HasseJson {
            n: self.n,
            nodes: self
                .elements
                .iter()
                .map(|l| l.components().to_vec())
                .collect(),
            covers: self.cover_edges().iter().map(|&(a, b)| [a, b]).collect(),
        }
    }

    /// Graphviz rendering of the cover relation. Edges run from the less
    /// balanced element to the more balanced one, so the top is drawn first.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph imbalance_lattice_{} {{", self.n);
        let _ = writeln!(out, "    node [shape=box, fontname=\"monospace\"];");
        for (idx, l) in self.elements.iter().enumerate() {
            let _ = writeln!(out, "    n{idx} [label=\"{l}\"];");
        }
        for &(a, b) in self.cover_edges() {
            let _ = writeln!(out, "    n{b} -> n{a};");
        }
        out.push_str("}\n");
        out
    }
}

/// Wire format of a Hasse diagram: `covers` holds index pairs `[a, b]` with
/// `nodes[a] ⋖ nodes[b]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HasseJson {
    pub n: usize,
    pub nodes: Vec<Vec<Depth>>,
    pub covers: Vec<[usize; 2]>,
}

fn check_same_length(s: &PathLengthSequence, t: &PathLengthSequence) -> Result<()> {
    if s.len() != t.len() {
        return Err(Error::LengthMismatch {
            left: s.len(),
            right: t.len(),
        });
    }
    Ok(())
}

/// Greatest lower bound. With `m` the meet of the contractions, the meet is
/// `m⁺` when that lies below both arguments and `m₊` otherwise.
pub fn meet(s: &PathLengthSequence, t: &PathLengthSequence) -> Result<PathLengthSequence> {
    check_same_length(s, t)?;
    let mut memo = HashMap::new();
    Ok(meet_rec(s, t, &mut memo))
}

type MeetMemo = HashMap<(PathLengthSequence, PathLengthSequence), PathLengthSequence>;

fn meet_rec(s: &PathLengthSequence, t: &PathLengthSequence, memo: &mut MeetMemo) -> PathLengthSequence {
    if s.len() == 1 {
        return PathLengthSequence::root();
    }
    let key = (s.clone(), t.clone());
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let cs = contraction(s).expect("n >= 2");
    let ct = contraction(t).expect("n >= 2");
    let m = meet_rec(&cs, &ct, memo);
    let up = upper_expansion(&m);
    let result = if precedes(&up, s) && precedes(&up, t) {
        up
    } else {
        lower_expansion(&m)
    };
    memo.insert(key, result.clone());
    result
}

/// Least upper bound within the length-`n` universe.
pub fn join(
    s: &PathLengthSequence,
    t: &PathLengthSequence,
    ceiling: Ceiling,
) -> Result<PathLengthSequence> {
    check_same_length(s, t)?;
    enumerate(s.len(), ceiling)?.join(s, t)
}

/// 1-based positions `j` with `1 < j < n`, `l_{j-1} < l_j = l_{j+1}` and
/// some component at most `l_j - 2`.
pub fn excess_indices(l: &PathLengthSequence) -> Vec<usize> {
    let d = l.components();
    let n = d.len();
    let min = l.first();
    (2..n)
        .filter(|&j| {
            let (prev, cur, next) = (d[j - 2], d[j - 1], d[j]);
            prev < cur && cur == next && min + 2 <= cur
        })
        .collect()
}

/// One balancing move `bal[l, j]`: the last leaf of depth at most `l_j - 2`
/// is split, and the first two leaves of depth `l_j` are merged.
pub fn bal(l: &PathLengthSequence, j: usize) -> Result<PathLengthSequence> {
    if !excess_indices(l).contains(&j) {
        return Err(Error::NotAnExcessIndex {
            sequence: l.clone(),
            index: j,
        });
    }
    let d = l.components();
    let deep = d[j - 1];
    let i = d
        .iter()
        .rposition(|&x| x + 2 <= deep)
        .expect("excess index implies a shallow leaf");
    let shallow = d[i];
    let mut out = Vec::with_capacity(d.len());
    out.extend_from_slice(&d[..i]);
    out.extend_from_slice(&[shallow + 1, shallow + 1]);
    out.extend_from_slice(&d[i + 1..j - 1]);
    out.push(deep - 1);
    out.extend_from_slice(&d[j + 1..]);
    out.sort_unstable();
    Ok(PathLengthSequence::from_trusted(out))
}

/// One element `(bal[l, j], l)` of the minimal balancing relation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BalancingStep {
    pub source: PathLengthSequence,
    pub excess_index: usize,
    pub target: PathLengthSequence,
}

pub fn minimal_balancing_relation(n: usize, ceiling: Ceiling) -> Result<Vec<BalancingStep>> {
    Ok(enumerate(n, ceiling)?.minimal_balancing_relation())
}

pub fn covering_pairs(
    n: usize,
    ceiling: Ceiling,
) -> Result<Vec<(PathLengthSequence, PathLengthSequence)>> {
    Ok(enumerate(n, ceiling)?.covering_pairs())
}

/// The most balanced sequence: with `n = 2^q + r`, `0 <= r < 2^q`, it has
/// `2^q - r` leaves at depth `q` and `2r` at depth `q + 1`.
pub fn bottom(n: usize) -> Result<PathLengthSequence> {
    if n == 0 {
        return Err(Error::EmptySequence);
    }
    let q = n.ilog2();
    let r = n - (1usize << q);
    let mut depths = vec![q; (1usize << q) - r];
    depths.extend(std::iter::repeat_n(q + 1, 2 * r));
    Ok(PathLengthSequence::from_trusted(depths))
}

/// The caterpillar `(1, 2, ..., n-1, n-1)`.
pub fn top(n: usize) -> Result<PathLengthSequence> {
    if n == 0 {
        return Err(Error::EmptySequence);
    }
    if n == 1 {
        return Ok(PathLengthSequence::root());
    }
    let mut depths: Vec<Depth> = (1..n as Depth).collect();
    depths.push(n as Depth - 1);
    Ok(PathLengthSequence::from_trusted(depths))
}
