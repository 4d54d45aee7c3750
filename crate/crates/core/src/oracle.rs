//! Brute-force reference implementations for verification.
//!
//! Nothing here reuses the comparison, expansion or enumeration code of the
//! main modules: weights are handled as exact rationals, the universe is
//! found by depth-first search over depth assignments, and bounds are found
//! by scanning every element. Only [`PathLengthSequence`] is shared.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{minimal_balancing_relation, Ceiling};
use crate::sequence::{Depth, PathLengthSequence};

fn weight(depth: Depth) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << depth)
}

/// All nondecreasing depth assignments of length `n` whose weights sum to 1.
pub fn enumerate_by_partition(n: usize, ceiling: Ceiling) -> Result<BTreeSet<PathLengthSequence>> {
    if n == 0 {
        return Err(Error::EmptySequence);
    }
    ceiling.check(n)?;
    let mut out = BTreeSet::new();
    let mut current = Vec::with_capacity(n);
    search(n, 0, BigRational::one(), &mut current, &mut out);
    Ok(out)
}

fn search(
    n: usize,
    min_depth: Depth,
    budget: BigRational,
    current: &mut Vec<Depth>,
    out: &mut BTreeSet<PathLengthSequence>,
) {
    let remaining = n - current.len();
    if remaining == 0 {
        if budget.is_zero() {
            out.insert(
                PathLengthSequence::new(current.clone()).expect("search only emits Kraft sequences"),
            );
        }
        return;
    }
    if budget <= BigRational::zero() {
        return;
    }
    // no leaf of a tree with n leaves is deeper than n - 1
    for depth in min_depth..n as Depth {
        let w = weight(depth);
        // the remaining leaves are at least this deep, so they can add at
        // most remaining * w; deeper choices only shrink that
        if BigRational::from_integer(BigInt::from(remaining)) * &w < budget {
            break;
        }
        if w > budget {
            continue;
        }
        current.push(depth);
        search(n, depth, &budget - &w, current, out);
        current.pop();
    }
}

fn partial_sums(l: &PathLengthSequence) -> Vec<BigRational> {
    let mut acc = BigRational::zero();
    l.components()
        .iter()
        .map(|&d| {
            acc += weight(d);
            acc.clone()
        })
        .collect()
}

/// `l ⊴ h` straight from the definition.
pub fn leq_by_definition(l: &PathLengthSequence, h: &PathLengthSequence) -> bool {
    l.len() == h.len()
        && partial_sums(l)
            .iter()
            .zip(partial_sums(h))
            .all(|(a, b)| *a <= b)
}

/// A finite poset over an explicit element list with a precomputed order
/// matrix. Meets and joins are found by exhaustive search.
pub struct OraclePoset {
    elements: Vec<PathLengthSequence>,
    order: Vec<bool>,
}

impl OraclePoset {
    pub fn new(elements: &[PathLengthSequence]) -> Self {
        let m = elements.len();
        let sums: Vec<_> = elements.iter().map(partial_sums).collect();
        let mut order = vec![false; m * m];
        for a in 0..m {
            for b in 0..m {
                order[a * m + b] = elements[a].len() == elements[b].len()
                    && sums[a].iter().zip(&sums[b]).all(|(x, y)| x <= y);
            }
        }
        OraclePoset {
            elements: elements.to_vec(),
            order,
        }
    }

    pub fn elements(&self) -> &[PathLengthSequence] {
        &self.elements
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.order[a * self.elements.len() + b]
    }

    fn position(&self, l: &PathLengthSequence) -> Result<usize> {
        self.elements
            .iter()
            .position(|e| e == l)
            .ok_or_else(|| Error::ElementNotInUniverse(l.clone()))
    }

    fn extreme_bound(
        &self,
        s: &PathLengthSequence,
        t: &PathLengthSequence,
        lower: bool,
    ) -> Result<PathLengthSequence> {
        let (a, b) = (self.position(s)?, self.position(t)?);
        let m = self.elements.len();
        let rel = |x: usize, y: usize| if lower { self.leq(x, y) } else { self.leq(y, x) };
        let bounds: Vec<usize> = (0..m).filter(|&x| rel(x, a) && rel(x, b)).collect();
        let best: Vec<usize> = bounds
            .iter()
            .copied()
            .filter(|&x| bounds.iter().all(|&y| rel(y, x)))
            .collect();
        match best.as_slice() {
            [only] => Ok(self.elements[*only].clone()),
            _ => Err(Error::NotALattice {
                kind: if lower { "greatest lower bound" } else { "least upper bound" },
                s: s.clone(),
                t: t.clone(),
                bounds: bounds.iter().map(|&x| self.elements[x].clone()).collect(),
            }),
        }
    }

    pub fn meet(&self, s: &PathLengthSequence, t: &PathLengthSequence) -> Result<PathLengthSequence> {
        self.extreme_bound(s, t, true)
    }

    pub fn join(&self, s: &PathLengthSequence, t: &PathLengthSequence) -> Result<PathLengthSequence> {
        self.extreme_bound(s, t, false)
    }

    /// Index pairs `(a, b)` with `a ⋖ b`, found by exhaustive search.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let m = self.elements.len();
        let mut out = Vec::new();
        for a in 0..m {
            for b in 0..m {
                if a != b
                    && self.leq(a, b)
                    && !(0..m).any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b))
                {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

pub fn meet_bruteforce(
    s: &PathLengthSequence,
    t: &PathLengthSequence,
    universe: &[PathLengthSequence],
) -> Result<PathLengthSequence> {
    OraclePoset::new(universe).meet(s, t)
}

pub fn join_bruteforce(
    s: &PathLengthSequence,
    t: &PathLengthSequence,
    universe: &[PathLengthSequence],
) -> Result<PathLengthSequence> {
    OraclePoset::new(universe).join(s, t)
}

/// Comparison of the reflexive-transitive closure of the minimal balancing
/// relation with the imbalance order.
#[derive(Clone, Debug, Serialize)]
pub struct ClosureReport {
    pub n: usize,
    pub equal: bool,
    /// `(l, h)` with `l ⊴ h` that the closure misses.
    pub missing: Vec<(PathLengthSequence, PathLengthSequence)>,
    /// `(l, h)` in the closure without `l ⊴ h`.
    pub spurious: Vec<(PathLengthSequence, PathLengthSequence)>,
}

pub fn closure_equals_order(n: usize, ceiling: Ceiling) -> Result<ClosureReport> {
    let elements: Vec<_> = enumerate_by_partition(n, ceiling)?.into_iter().collect();
    let poset = OraclePoset::new(&elements);
    let m = elements.len();
    let mut rel = vec![false; m * m];
    for a in 0..m {
        rel[a * m + a] = true;
    }
    for step in minimal_balancing_relation(n, ceiling)? {
        let a = poset.position(&step.target)?;
        let b = poset.position(&step.source)?;
        rel[a * m + b] = true;
    }
    // square until stable
    loop {
        let mut next = rel.clone();
        for a in 0..m {
            for c in 0..m {
                if rel[a * m + c] {
                    for b in 0..m {
                        if rel[c * m + b] {
                            next[a * m + b] = true;
                        }
                    }
                }
            }
        }
        if next == rel {
            break;
        }
        rel = next;
    }
    let mut missing = Vec::new();
    let mut spurious = Vec::new();
    for a in 0..m {
        for b in 0..m {
            let pair = || (elements[a].clone(), elements[b].clone());
            match (rel[a * m + b], poset.leq(a, b)) {
                (false, true) => missing.push(pair()),
                (true, false) => spurious.push(pair()),
                _ => {}
            }
        }
    }
    Ok(ClosureReport {
        n,
        equal: missing.is_empty() && spurious.is_empty(),
        missing,
        spurious,
    })
}
