//! Join-irreducible path-length sequences.
//!
//! Three independent tests are provided: counting lower covers in an
//! enumerated universe, comparing balancing moves at the excess indices, and
//! the structural `u·v·w` decomposition test.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::lattice::{bal, excess_indices, LatticeUniverse};
use crate::sequence::{compare, Depth, PathLengthSequence};

/// Outcome of [`is_near_constant`]: `values` lists the distinct values
/// present (at most two when the verdict is true).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NearConstancy {
    pub verdict: bool,
    pub values: Vec<Depth>,
}

/// At most two distinct values, differing by exactly one when there are two.
/// The empty segment is near-constant.
pub fn is_near_constant(segment: &[Depth]) -> NearConstancy {
    let mut values: Vec<Depth> = segment.to_vec();
    values.sort_unstable();
    values.dedup();
    let verdict = match values.as_slice() {
        [] | [_] => true,
        [a, b] => a + 1 == *b,
        _ => false,
    };
    NearConstancy { verdict, values }
}

fn strictly_increasing(segment: &[Depth]) -> bool {
    segment.windows(2).all(|w| w[0] < w[1])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UvwDecomposition {
    pub u: Vec<Depth>,
    pub v: Vec<Depth>,
    pub w: Vec<Depth>,
    /// `u`, `w` near-constant and `v` strictly increasing.
    pub cond_segments: bool,
    /// `uv` is nonempty.
    pub cond_uv_nonempty: bool,
    /// If `w` is not constant and its first two entries agree, their value is
    /// at least `last(uv) + 2`.
    pub cond_w_head: bool,
}

impl UvwDecomposition {
    pub fn all_hold(&self) -> bool {
        self.cond_segments && self.cond_uv_nonempty && self.cond_w_head
    }

    pub fn concat(&self) -> Vec<Depth> {
        [self.u.as_slice(), &self.v, &self.w].concat()
    }
}

fn longest_near_constant_prefix(d: &[Depth]) -> usize {
    (0..=d.len())
        .rev()
        .find(|&k| is_near_constant(&d[..k]).verdict)
        .unwrap_or(0)
}

fn longest_near_constant_suffix(d: &[Depth]) -> usize {
    (0..=d.len())
        .rev()
        .find(|&k| is_near_constant(&d[d.len() - k..]).verdict)
        .unwrap_or(0)
}

/// Greedy split: `u` is the longest near-constant prefix of `l`, `w` the
/// longest near-constant suffix of what remains, `v` the middle.
pub fn decompose_uvw(l: &PathLengthSequence) -> UvwDecomposition {
    let d = l.components();
    let u_len = longest_near_constant_prefix(d);
    let (u, z) = d.split_at(u_len);
    let w_len = longest_near_constant_suffix(z);
    let (v, w) = z.split_at(z.len() - w_len);

    let cond_segments = is_near_constant(u).verdict
        && is_near_constant(w).verdict
        && strictly_increasing(v);
    let last_uv = v.last().or(u.last()).copied();
    let cond_uv_nonempty = last_uv.is_some();
    let w_constant = w.first() == w.last();
    let cond_w_head = match (w, last_uv) {
        ([a, b, ..], Some(last)) if !w_constant && a == b => *a >= last + 2,
        // without uv there is no bound to test; (ii) already fails
        _ => true,
    };

    UvwDecomposition {
        u: u.to_vec(),
        v: v.to_vec(),
        w: w.to_vec(),
        cond_segments,
        cond_uv_nonempty,
        cond_w_head,
    }
}

/// True iff `l` has exactly one lower cover in `universe`.
pub fn is_join_irreducible_bruteforce(
    l: &PathLengthSequence,
    universe: &LatticeUniverse,
) -> Result<bool> {
    let idx = universe.require(l)?;
    Ok(universe.lower_covers(idx).len() == 1)
}

/// With `j` the first excess index, `l` is join-irreducible iff
/// `bal[l, j] ⊵ bal[l, k]` for every excess index `k`. The bottom has no
/// excess index and is not join-irreducible.
pub fn is_join_irreducible_prop2(l: &PathLengthSequence) -> bool {
    let excess = excess_indices(l);
    let Some(&first) = excess.first() else {
        return false;
    };
    let lead = bal(l, first).expect("first excess index");
    excess.iter().all(|&k| {
        let other = bal(l, k).expect("excess index");
        compare(&lead, &other).expect("same length").is_ge()
    })
}

/// Structural test on the greedy `u·v·w` decomposition. Near-constant
/// sequences (the bottom) are excluded; they satisfy the conditions
/// vacuously but cover nothing.
pub fn is_join_irreducible_prop3(l: &PathLengthSequence) -> bool {
    if is_near_constant(l.components()).verdict {
        return false;
    }
    let uvw = decompose_uvw(l);
    !uvw.w.is_empty() && uvw.all_hold()
}
