//! Path-length sequences and the imbalance order.
//!
//! A path-length sequence is the nondecreasing list of leaf depths of a full
//! binary tree, read left to right. Equivalently, its dyadic weights
//! `2^-l_i` sum to exactly one (Kraft equality). Two sequences of the same
//! length are compared through the partial sums of those weights: `l ⊴ h`
//! (`l` is *more balanced* than `h`) when every partial sum of `l` is at most
//! the matching partial sum of `h`.
//!
//! All arithmetic is exact. Weights are scaled by a common power of two so
//! that every partial sum is an integer.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Dyadic, Error, Result};

/// Leaf depth.
pub type Depth = u32;

/// Largest depth accepted by [`validate`]. Any valid sequence of length `n`
/// has depths at most `n - 1`, so this only bounds how much memory an invalid
/// input can make the Kraft check allocate.
pub const MAX_DEPTH: u32 = 1 << 16;

/// Largest scale exponent handled by the `u128` fast path in [`compare`].
/// Valid sequences of length `n <= 128` always qualify, since their depths
/// are at most `n - 1`.
const FAST_SCALE_LIMIT: u32 = 127;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Depth>", into = "Vec<Depth>")]
pub struct PathLengthSequence(Vec<Depth>);

/// Checks a raw integer sequence and returns it as a path-length sequence.
pub fn validate(components: &[i64]) -> Result<PathLengthSequence> {
    if components.is_empty() {
        return Err(Error::EmptySequence);
    }
    let mut depths = Vec::with_capacity(components.len());
    for (idx, &value) in components.iter().enumerate() {
        if value < 0 {
            return Err(Error::NegativeDepth { position: idx + 1, value });
        }
        if value > i64::from(MAX_DEPTH) {
            return Err(Error::DepthOutOfRange {
                position: idx + 1,
                value,
                max: MAX_DEPTH,
            });
        }
        depths.push(value as Depth);
    }
    PathLengthSequence::new(depths)
}

impl PathLengthSequence {
    pub fn new(depths: Vec<Depth>) -> Result<Self> {
        if depths.is_empty() {
            return Err(Error::EmptySequence);
        }
        if let Some((idx, &d)) = depths.iter().enumerate().find(|(_, &d)| d > MAX_DEPTH) {
            return Err(Error::DepthOutOfRange {
                position: idx + 1,
                value: i64::from(d),
                max: MAX_DEPTH,
            });
        }
        if let Some(idx) = depths.windows(2).position(|w| w[0] > w[1]) {
            return Err(Error::NotSorted { position: idx + 2 });
        }
        let scale = *depths.last().unwrap();
        let sum: BigUint = depths.iter().map(|&d| BigUint::one() << (scale - d)).sum();
        let one = BigUint::one() << scale;
        match sum.cmp(&one) {
            Ordering::Equal => Ok(PathLengthSequence(depths)),
            Ordering::Greater => Err(Error::KraftSumNotOne {
                gap: Dyadic::new(&sum - &one, scale),
                sum: Dyadic::new(sum, scale),
                excess: true,
            }),
            Ordering::Less => Err(Error::KraftSumNotOne {
                gap: Dyadic::new(&one - &sum, scale),
                sum: Dyadic::new(sum, scale),
                excess: false,
            }),
        }
    }

    /// Wraps depths that are already known to form a path-length sequence.
    pub(crate) fn from_trusted(depths: Vec<Depth>) -> Self {
        debug_assert!(
            PathLengthSequence::new(depths.clone()).is_ok(),
            "not a path-length sequence: {depths:?}"
        );
        PathLengthSequence(depths)
    }

    /// The single-leaf tree `(0)`.
    pub fn root() -> Self {
        PathLengthSequence(vec![0])
    }

    pub fn components(&self) -> &[Depth] {
        &self.0
    }

    pub fn into_components(self) -> Vec<Depth> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; a path-length sequence has at least one component.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn first(&self) -> Depth {
        self.0[0]
    }

    pub fn last(&self) -> Depth {
        self.0[self.0.len() - 1]
    }

    /// Sum of the components, i.e. the external path length of the tree.
    pub fn sum(&self) -> u64 {
        self.0.iter().map(|&d| u64::from(d)).sum()
    }

    /// Number of equal trailing components.
    pub fn suffix_length(&self) -> usize {
        let last = self.last();
        self.0.iter().rev().take_while(|&&d| d == last).count()
    }

    pub fn is_constant(&self) -> bool {
        self.first() == self.last()
    }
}

pub fn suffix_length(l: &PathLengthSequence) -> usize {
    l.suffix_length()
}

impl fmt::Display for PathLengthSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, d) in self.0.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// Parses the comma syntax `1,2,3,4,4` (no spaces) and validates the result.
impl FromStr for PathLengthSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let values = parse_components(s)?;
        validate(&values)
    }
}

/// Splits the comma syntax into raw integers without validating them.
pub fn parse_components(s: &str) -> Result<Vec<i64>> {
    if s.is_empty() {
        return Err(Error::EmptySequence);
    }
    s.split(',')
        .map(|token| {
            token.parse::<i64>().map_err(|_| Error::Parse {
                token: token.to_string(),
            })
        })
        .collect()
}

impl TryFrom<Vec<Depth>> for PathLengthSequence {
    type Error = Error;

    fn try_from(depths: Vec<Depth>) -> Result<Self> {
        PathLengthSequence::new(depths)
    }
}

impl From<PathLengthSequence> for Vec<Depth> {
    fn from(l: PathLengthSequence) -> Self {
        l.0
    }
}

/// Partial sums of `exp l` multiplied by `2^scale_exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledPartialSums {
    pub scale_exponent: u32,
    pub sums: Vec<BigUint>,
}

pub fn scaled_partial_sums(l: &PathLengthSequence, scale: u32) -> Result<ScaledPartialSums> {
    if scale < l.last() {
        return Err(Error::ScaleTooSmall {
            scale,
            last: l.last(),
        });
    }
    let mut acc = BigUint::zero();
    let sums = l
        .components()
        .iter()
        .map(|&d| {
            acc += BigUint::one() << (scale - d);
            acc.clone()
        })
        .collect();
    Ok(ScaledPartialSums {
        scale_exponent: scale,
        sums,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderVerdict {
    Equal,
    /// The left sequence is strictly more balanced.
    MoreBalanced,
    LessBalanced,
    Incomparable,
}

impl OrderVerdict {
    /// `l ⊴ h`
    pub fn is_le(self) -> bool {
        matches!(self, OrderVerdict::Equal | OrderVerdict::MoreBalanced)
    }

    /// `l ⊵ h`
    pub fn is_ge(self) -> bool {
        matches!(self, OrderVerdict::Equal | OrderVerdict::LessBalanced)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            OrderVerdict::Equal => "equal",
            OrderVerdict::MoreBalanced => "more-balanced",
            OrderVerdict::LessBalanced => "less-balanced",
            OrderVerdict::Incomparable => "incomparable",
        }
    }
}

impl fmt::Display for OrderVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn check_lengths(l: &PathLengthSequence, h: &PathLengthSequence) -> Result<()> {
    if l.len() != h.len() {
        return Err(Error::LengthMismatch {
            left: l.len(),
            right: h.len(),
        });
    }
    Ok(())
}

fn verdict(le: bool, ge: bool) -> OrderVerdict {
    match (le, ge) {
        (true, true) => OrderVerdict::Equal,
        (true, false) => OrderVerdict::MoreBalanced,
        (false, true) => OrderVerdict::LessBalanced,
        (false, false) => OrderVerdict::Incomparable,
    }
}

/// Compares two sequences in the imbalance order.
pub fn compare(l: &PathLengthSequence, h: &PathLengthSequence) -> Result<OrderVerdict> {
    check_lengths(l, h)?;
    let scale = l.last().max(h.last());
    if scale <= FAST_SCALE_LIMIT {
        return Ok(compare_fast(l, h, scale));
    }
    compare_at_scale(l, h, scale)
}

/// Same as [`compare`] but with an explicit common scale, using big integers
/// throughout. The verdict does not depend on `scale`.
pub fn compare_at_scale(
    l: &PathLengthSequence,
    h: &PathLengthSequence,
    scale: u32,
) -> Result<OrderVerdict> {
    check_lengths(l, h)?;
    let ls = scaled_partial_sums(l, scale)?;
    let hs = scaled_partial_sums(h, scale)?;
    let mut le = true;
    let mut ge = true;
    for (a, b) in ls.sums.iter().zip(&hs.sums) {
        match a.cmp(b) {
            Ordering::Less => ge = false,
            Ordering::Greater => le = false,
            Ordering::Equal => {}
        }
        if !le && !ge {
            break;
        }
    }
    Ok(verdict(le, ge))
}

fn compare_fast(l: &PathLengthSequence, h: &PathLengthSequence, scale: u32) -> OrderVerdict {
    let mut a = 0u128;
    let mut b = 0u128;
    let mut le = true;
    let mut ge = true;
    for (&x, &y) in l.components().iter().zip(h.components()) {
        a += 1u128 << (scale - x);
        b += 1u128 << (scale - y);
        match a.cmp(&b) {
            Ordering::Less => ge = false,
            Ordering::Greater => le = false,
            Ordering::Equal => {}
        }
        if !le && !ge {
            break;
        }
    }
    verdict(le, ge)
}

/// `l ⊴ h` for sequences already known to have equal length.
pub(crate) fn precedes(l: &PathLengthSequence, h: &PathLengthSequence) -> bool {
    debug_assert_eq!(l.len(), h.len());
    compare(l, h).map(OrderVerdict::is_le).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> PathLengthSequence {
        s.parse().unwrap()
    }

    fn sums(l: &str, scale: u32) -> Vec<u64> {
        scaled_partial_sums(&seq(l), scale)
            .unwrap()
            .sums
            .iter()
            .map(|s| u64::try_from(s).unwrap())
            .collect()
    }

    #[test]
    fn validate_accepts_kraft_sequences() {
        assert_eq!(validate(&[0]).unwrap(), PathLengthSequence::root());
        assert_eq!(validate(&[1, 2, 3, 4, 4]).unwrap().to_string(), "1,2,3,4,4");
    }

    #[test]
    fn validate_reports_kraft_excess() {
        match validate(&[1, 2, 2, 3]) {
            Err(Error::KraftSumNotOne { sum, gap, excess }) => {
                assert_eq!(sum.to_string(), "9/8");
                assert_eq!(gap.to_string(), "1/8");
                assert!(excess);
            }
            other => panic!("unexpected {other:?}"),
        }
        match validate(&[1, 2]) {
            Err(Error::KraftSumNotOne { sum, gap, excess }) => {
                assert_eq!(sum.to_string(), "3/4");
                assert_eq!(gap.to_string(), "1/4");
                assert!(!excess);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn validate_rejects_malformed_input() {
        assert_eq!(validate(&[2, 1, 1]), Err(Error::NotSorted { position: 2 }));
        assert_eq!(
            validate(&[1, -1]),
            Err(Error::NegativeDepth { position: 2, value: -1 })
        );
        assert_eq!(validate(&[]), Err(Error::EmptySequence));
        assert!(matches!(
            validate(&[1, 1 << 40]),
            Err(Error::DepthOutOfRange { .. })
        ));
        // a single leaf must sit at the root
        assert!(matches!(validate(&[1]), Err(Error::KraftSumNotOne { .. })));
    }

    #[test]
    fn parse_rejects_spaces_and_junk() {
        assert!(matches!(
            "1, 1".parse::<PathLengthSequence>(),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            "1,,1".parse::<PathLengthSequence>(),
            Err(Error::Parse { .. })
        ));
        assert_eq!("".parse::<PathLengthSequence>(), Err(Error::EmptySequence));
    }

    #[test]
    fn suffix_lengths() {
        assert_eq!(seq("1,2,3,4,4").suffix_length(), 2);
        assert_eq!(seq("2,2,2,2").suffix_length(), 4);
        assert_eq!(seq("1,3,3,3,3").suffix_length(), 4);
        assert_eq!(seq("0").suffix_length(), 1);
    }

    #[test]
    fn partial_sums_at_scale() {
        assert_eq!(sums("1,1", 1), vec![1, 2]);
        assert_eq!(sums("2,2,2,3,3", 3), vec![2, 4, 6, 7, 8]);
        assert_eq!(sums("1,2,3,4,4", 4), vec![8, 12, 14, 15, 16]);
        assert_eq!(
            scaled_partial_sums(&seq("1,2,3,4,4"), 3),
            Err(Error::ScaleTooSmall { scale: 3, last: 4 })
        );
    }

    #[test]
    fn compare_examples() {
        let l = seq("1,2,3,4,4");
        assert_eq!(compare(&l, &l).unwrap(), OrderVerdict::Equal);
        assert_eq!(
            compare(&seq("2,2,2,3,3"), &seq("1,3,3,3,3")).unwrap(),
            OrderVerdict::MoreBalanced
        );
        assert_eq!(
            compare(&seq("1,3,3,3,3"), &seq("2,2,2,3,3")).unwrap(),
            OrderVerdict::LessBalanced
        );
        assert_eq!(
            compare(&seq("2,2,2,3,4,5,5"), &seq("1,3,3,4,4,4,4")).unwrap(),
            OrderVerdict::Incomparable
        );
        assert_eq!(
            compare(&seq("1,1"), &seq("1,2,2")),
            Err(Error::LengthMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn fast_path_matches_big_path_on_deep_caterpillars() {
        // caterpillar vs. a balanced tree at n = 200, beyond the u128 path
        let n = 200u32;
        let mut cat: Vec<Depth> = (1..n).collect();
        cat.push(n - 1);
        let cat = PathLengthSequence::new(cat).unwrap();
        let bottom = {
            let mut v = vec![7u32; 128 - (200 - 128)];
            v.extend(std::iter::repeat_n(8, 2 * (200 - 128)));
            PathLengthSequence::new(v).unwrap()
        };
        assert_eq!(bottom.len(), 200);
        assert_eq!(compare(&bottom, &cat).unwrap(), OrderVerdict::MoreBalanced);
        assert_eq!(compare(&cat, &cat).unwrap(), OrderVerdict::Equal);
    }

    #[test]
    fn serde_round_trip_validates() {
        let l = seq("1,2,2");
        let json = serde_json::to_string(&l).unwrap();
        assert_eq!(json, "[1,2,2]");
        assert_eq!(serde_json::from_str::<PathLengthSequence>(&json).unwrap(), l);
        assert!(serde_json::from_str::<PathLengthSequence>("[1,2]").is_err());
    }
}
