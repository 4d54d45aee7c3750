//! Leaf splitting and merging on path-length sequences.
//!
//! Positions are 1-based. Expanding at position `i` splits the leaf of depth
//! `l_i` into two leaves one level deeper; the result is re-sorted, so
//! expanding an interior position of a run behaves like expanding the last
//! leaf of that run.

use crate::error::{Error, Result};
use crate::sequence::PathLengthSequence;

pub fn expansion_at(l: &PathLengthSequence, position: usize) -> Result<PathLengthSequence> {
    let n = l.len();
    if position == 0 || position > n {
        return Err(Error::PositionOutOfRange { position, len: n });
    }
    let mut depths = l.components().to_vec();
    let split = depths.remove(position - 1) + 1;
    // everything after the split point is >= split - 1; find where the two
    // new leaves belong
    let at = depths.partition_point(|&d| d < split);
    depths.splice(at..at, [split, split]);
    Ok(PathLengthSequence::from_trusted(depths))
}

/// `l⁺`: expansion at position `n`.
pub fn upper_expansion(l: &PathLengthSequence) -> PathLengthSequence {
    expansion_at(l, l.len()).expect("position n is always in range")
}

/// Position of the lower expansion, `max(1, n - suf l)`.
pub fn lower_expansion_position(l: &PathLengthSequence) -> usize {
    l.len().saturating_sub(l.suffix_length()).max(1)
}

/// `l₊`: expansion at position `max(1, n - suf l)`. Coincides with `l⁺`
/// exactly when `l` is constant.
pub fn lower_expansion(l: &PathLengthSequence) -> PathLengthSequence {
    expansion_at(l, lower_expansion_position(l)).expect("lower expansion position is in range")
}

/// `l̂`: merges the first two leaves of the deepest run into one leaf a level
/// up. The result has `n - 1` components.
pub fn contraction(l: &PathLengthSequence) -> Result<PathLengthSequence> {
    let n = l.len();
    if n < 2 {
        return Err(Error::SingletonSequence);
    }
    let k = l.suffix_length();
    let depths = l.components();
    let last = l.last();
    let mut out = Vec::with_capacity(n - 1);
    out.extend_from_slice(&depths[..n - k]);
    out.push(last - 1);
    out.extend(std::iter::repeat_n(last, k - 2));
    Ok(PathLengthSequence::from_trusted(out))
}

/// 1-based position in `contraction(l)` of the merged leaf. Expanding there
/// gives back `l`.
pub fn contraction_position(l: &PathLengthSequence) -> usize {
    l.len() - l.suffix_length() + 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> PathLengthSequence {
        s.parse().unwrap()
    }

    #[test]
    fn expansion_examples() {
        let l = seq("1,2,3,4,4");
        assert_eq!(expansion_at(&l, 5).unwrap(), seq("1,2,3,4,5,5"));
        assert_eq!(expansion_at(&l, 3).unwrap(), seq("1,2,4,4,4,4"));
        assert_eq!(expansion_at(&seq("2,2,2,2"), 1).unwrap(), seq("2,2,2,3,3"));
        assert_eq!(
            expansion_at(&l, 0),
            Err(Error::PositionOutOfRange { position: 0, len: 5 })
        );
        assert_eq!(
            expansion_at(&l, 6),
            Err(Error::PositionOutOfRange { position: 6, len: 5 })
        );
    }

    #[test]
    fn upper_expansion_examples() {
        assert_eq!(upper_expansion(&seq("0")), seq("1,1"));
        assert_eq!(upper_expansion(&seq("1,2,3,4,4")), seq("1,2,3,4,5,5"));
        assert_eq!(upper_expansion(&seq("2,2,2,2")), seq("2,2,2,3,3"));
    }

    #[test]
    fn lower_expansion_examples() {
        assert_eq!(lower_expansion(&seq("1,2,3,4,4")), seq("1,2,4,4,4,4"));
        assert_eq!(lower_expansion(&seq("2,2,2,2")), seq("2,2,2,3,3"));
        assert_eq!(lower_expansion(&seq("1,3,3,3,3")), seq("2,2,3,3,3,3"));
        assert_eq!(lower_expansion(&seq("0")), seq("1,1"));
    }

    #[test]
    fn contraction_examples() {
        assert_eq!(contraction(&seq("1,2,3,4,4")).unwrap(), seq("1,2,3,3"));
        assert_eq!(contraction(&seq("1,3,3,3,3")).unwrap(), seq("1,2,3,3"));
        assert_eq!(
            contraction(&seq("2,2,3,3,3,4,4")).unwrap(),
            seq("2,2,3,3,3,3")
        );
        assert_eq!(contraction(&seq("1,1")).unwrap(), seq("0"));
        assert_eq!(contraction(&seq("0")), Err(Error::SingletonSequence));
    }

    #[test]
    fn contraction_position_reexpands() {
        for s in ["1,2,3,4,4", "1,3,3,3,3", "2,2,2,2", "1,1"] {
            let l = seq(s);
            let c = contraction(&l).unwrap();
            assert_eq!(expansion_at(&c, contraction_position(&l)).unwrap(), l);
        }
    }
}
