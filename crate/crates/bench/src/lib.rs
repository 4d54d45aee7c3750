//! Shared fixtures for the criterion benches.

use imbalance_lattice::{enumerate, Ceiling, PathLengthSequence};

/// Every ordered pair of the length-`n` universe.
pub fn all_pairs(n: usize) -> Vec<(PathLengthSequence, PathLengthSequence)> {
    let u = enumerate(n, Ceiling::default()).expect("n within the default ceiling");
    let e = u.elements();
    e.iter()
        .flat_map(|a| e.iter().map(move |b| (a.clone(), b.clone())))
        .collect()
}
