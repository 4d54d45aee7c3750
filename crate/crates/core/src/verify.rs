//! Exhaustive property checks over every universe up to a given size.
//!
//! Each [`Property`] has a stable kebab-case name. [`check`] runs one
//! property for `n = 1..=max_n` and stops at the first counterexample,
//! which is reported as the witness.

use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::irreducibility::{
    decompose_uvw, is_join_irreducible_bruteforce, is_join_irreducible_prop2,
    is_join_irreducible_prop3, is_near_constant,
};
use crate::lattice::{bal, bottom, enumerate, excess_indices, meet, top, Ceiling, LatticeUniverse};
use crate::oracle::{closure_equals_order, enumerate_by_partition, leq_by_definition, OraclePoset};
use crate::sequence::{compare, compare_at_scale, OrderVerdict, PathLengthSequence};
use crate::transforms::{
    contraction, contraction_position, expansion_at, lower_expansion, upper_expansion,
};
use crate::trees::{
    canonical_code, nodes_within_depth, sequence_from_tree, sum_components, tree_from_sequence,
};

macro_rules! properties {
    ($($variant:ident => $name:literal,)*) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
        pub enum Property {
            $($variant,)*
        }

        impl Property {
            pub const ALL: &'static [Property] = &[$(Property::$variant,)*];

            pub fn name(self) -> &'static str {
                match self {
                    $(Property::$variant => $name,)*
                }
            }
        }
    };
}

properties! {
    EnumerationEquivalence => "enumeration-equivalence",
    PartialOrderLaws => "partial-order-laws",
    OracleOrderAgreement => "oracle-order-agreement",
    ScaleIndependence => "scale-independence",
    LastMonotone => "last-monotone",
    SuffixMonotone => "suffix-monotone",
    ExpansionMonotone => "expansion-monotone",
    ConstancyLaw => "constancy-law",
    ContractionSandwich => "contraction-sandwich",
    ContractionRoundTrip => "contraction-round-trip",
    LemmaUpperLower => "lemma-upper-lower",
    LatticeExistence => "lattice-existence",
    Prop1MeetOracle => "prop1-meet-oracle",
    Prop1LastLaw => "prop1-last-law",
    MeetLaws => "meet-laws",
    JoinOracle => "join-oracle",
    Absorption => "absorption",
    BottomTop => "bottom-top",
    ClosureEqualsOrder => "closure-equals-order",
    CoversOracle => "covers-oracle",
    CoversInBalancing => "covers-in-balancing",
    ExcessEmptyIffBottom => "excess-empty-iff-bottom",
    BalSumDecrease => "bal-sum-decrease",
    IrreducibilityTripleAgreement => "irreducibility-triple-agreement",
    Prop2CoverConsistency => "prop2-cover-consistency",
    UvwConcatenation => "uvw-concatenation",
    SumMonotone => "sum-monotone",
    DepthCountAntitone => "depth-count-antitone",
    KraftRealization => "kraft-realization",
}

impl Property {
    pub fn from_name(name: &str) -> Option<Property> {
        Property::ALL.iter().copied().find(|p| p.name() == name)
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyResult {
    pub property: String,
    pub n: usize,
    pub status: Status,
    pub witness: Option<String>,
}

impl PropertyResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for PropertyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
        };
        write!(f, "{:<32} n<={:<3} {status}", self.property, self.n)?;
        if let Some(w) = &self.witness {
            write!(f, "  witness: {w}")?;
        }
        Ok(())
    }
}

/// Counterexample description, or `Ok(())`.
type Outcome = std::result::Result<(), String>;

fn ensure(cond: bool, witness: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(witness())
    }
}

fn le(l: &PathLengthSequence, h: &PathLengthSequence) -> bool {
    compare(l, h).map(OrderVerdict::is_le).unwrap_or(false)
}

fn lt(l: &PathLengthSequence, h: &PathLengthSequence) -> bool {
    compare(l, h) == Ok(OrderVerdict::MoreBalanced)
}

/// Runs one property on every `n` in `1..=max_n`.
pub fn check(property: Property, max_n: usize, ceiling: Ceiling) -> Result<PropertyResult> {
    ceiling.check(max_n)?;
    for n in 1..=max_n {
        let universe = enumerate(n, ceiling)?;
        if let Err(witness) = check_one(property, &universe, ceiling)? {
            return Ok(PropertyResult {
                property: property.name().to_string(),
                n,
                status: Status::Fail,
                witness: Some(witness),
            });
        }
    }
    Ok(PropertyResult {
        property: property.name().to_string(),
        n: max_n,
        status: Status::Pass,
        witness: None,
    })
}

/// Runs each property in order; results come back in the same order.
pub fn run(properties: &[Property], max_n: usize, ceiling: Ceiling) -> Result<Vec<PropertyResult>> {
    properties.iter().map(|&p| check(p, max_n, ceiling)).collect()
}

fn pairs(u: &LatticeUniverse) -> impl Iterator<Item = (&PathLengthSequence, &PathLengthSequence)> {
    let e = u.elements();
    e.iter().flat_map(move |a| e.iter().map(move |b| (a, b)))
}

fn comparable_pairs(
    u: &LatticeUniverse,
) -> impl Iterator<Item = (&PathLengthSequence, &PathLengthSequence)> {
    pairs(u).filter(|(a, b)| le(a, b))
}

fn check_one(property: Property, u: &LatticeUniverse, ceiling: Ceiling) -> Result<Outcome> {
    let n = u.n();
    let e = u.elements();
    let outcome = match property {
        Property::EnumerationEquivalence => {
            let oracle = enumerate_by_partition(n, ceiling)?;
            let sorted = e.windows(2).all(|w| w[0] < w[1]);
            ensure(sorted && oracle.iter().eq(e.iter()), || {
                format!(
                    "n={n}: generator has {} elements, partition search has {}",
                    e.len(),
                    oracle.len()
                )
            })
        }
        Property::PartialOrderLaws => (|| {
            for (a, b) in pairs(u) {
                let v = compare(a, b).expect("same length");
                ensure(
                    (v == OrderVerdict::Equal) == (a == b),
                    || format!("{a} vs {b}: verdict {v}"),
                )?;
                let back = compare(b, a).expect("same length");
                let mirrored = match v {
                    OrderVerdict::MoreBalanced => OrderVerdict::LessBalanced,
                    OrderVerdict::LessBalanced => OrderVerdict::MoreBalanced,
                    other => other,
                };
                ensure(back == mirrored, || format!("{a} vs {b}: {v} but reverse {back}"))?;
            }
            let m = u.len();
            for a in 0..m {
                for b in 0..m {
                    if !u.leq(a, b) {
                        continue;
                    }
                    for c in 0..m {
                        ensure(!u.leq(b, c) || u.leq(a, c), || {
                            format!("transitivity fails on {}, {}, {}", e[a], e[b], e[c])
                        })?;
                    }
                }
            }
            Ok(())
        })(),
        Property::OracleOrderAgreement => pairs(u).try_for_each(|(a, b)| {
            ensure(le(a, b) == leq_by_definition(a, b), || {
                format!("{a} vs {b}: scaled integers and rationals disagree")
            })
        }),
        Property::ScaleIndependence => pairs(u).try_for_each(|(a, b)| {
            let base = a.last().max(b.last());
            let v = compare(a, b).expect("same length");
            (base..base + 4).try_for_each(|scale| {
                let w = compare_at_scale(a, b, scale).expect("scale is large enough");
                ensure(v == w, || format!("{a} vs {b}: {v} at default scale, {w} at 2^{scale}"))
            })
        }),
        Property::LastMonotone => comparable_pairs(u).try_for_each(|(l, h)| {
            ensure(l.last() <= h.last(), || format!("{l} ⊴ {h} but last {} > {}", l.last(), h.last()))
        }),
        Property::SuffixMonotone => comparable_pairs(u).try_for_each(|(l, h)| {
            ensure(
                l.last() != h.last() || l.suffix_length() <= h.suffix_length(),
                || format!("{l} ⊴ {h} with equal last but suf {} > {}", l.suffix_length(), h.suffix_length()),
            )
        }),
        Property::ExpansionMonotone => comparable_pairs(u).try_for_each(|(l, h)| {
            ensure(le(&lower_expansion(l), &lower_expansion(h)), || {
                format!("{l} ⊴ {h} but lower expansions are not ordered")
            })?;
            ensure(le(&upper_expansion(l), &upper_expansion(h)), || {
                format!("{l} ⊴ {h} but upper expansions are not ordered")
            })
        }),
        Property::ConstancyLaw => e.iter().try_for_each(|l| {
            ensure(
                l.is_constant() == (lower_expansion(l) == upper_expansion(l)),
                || format!("{l}: constant={} but expansions coincide={}", l.is_constant(), !l.is_constant()),
            )
        }),
        Property::ContractionSandwich => e.iter().filter(|l| l.len() >= 2).try_for_each(|l| {
            let c = contraction(l).expect("n >= 2");
            ensure(le(&lower_expansion(&c), l) && le(l, &upper_expansion(&c)), || {
                format!("{l}: contraction {c} does not sandwich it")
            })
        }),
        Property::ContractionRoundTrip => e.iter().filter(|l| l.len() >= 2).try_for_each(|l| {
            let c = contraction(l).expect("n >= 2");
            let back = expansion_at(&c, contraction_position(l)).expect("position in range");
            ensure(&back == l, || format!("{l}: contraction {c} re-expands to {back}"))
        }),
        Property::LemmaUpperLower => comparable_pairs(u)
            .filter(|(l, h)| l.last() < h.last())
            .try_for_each(|(l, h)| {
                let (up, low) = (upper_expansion(l), lower_expansion(h));
                ensure(le(&up, &low), || format!("{l} ⊴ {h}: {up} not ⊴ {low}"))
            }),
        Property::LatticeExistence => {
            let poset = OraclePoset::new(e);
            pairs(u).try_for_each(|(s, t)| {
                poset
                    .meet(s, t)
                    .and_then(|_| poset.join(s, t))
                    .map(|_| ())
                    .map_err(|err| err.to_string())
            })
        }
        Property::Prop1MeetOracle => {
            let poset = OraclePoset::new(e);
            pairs(u).try_for_each(|(s, t)| {
                let fast = meet(s, t).expect("same length");
                let slow = poset.meet(s, t).map_err(|err| err.to_string())?;
                ensure(fast == slow, || format!("meet({s}, {t}) = {fast}, oracle {slow}"))
            })
        }
        Property::Prop1LastLaw => pairs(u).try_for_each(|(s, t)| {
            let m = meet(s, t).expect("same length");
            ensure(m.last() == s.last().min(t.last()), || {
                format!("last(meet({s}, {t})) = last({m}) != min(last)")
            })
        }),
        Property::MeetLaws => (|| {
            for (s, t) in pairs(u) {
                let m = meet(s, t).expect("same length");
                ensure(meet(s, s).as_ref() == Ok(s), || format!("meet({s}, {s}) != {s}"))?;
                ensure(meet(t, s).as_ref() == Ok(&m), || format!("meet not commutative on {s}, {t}"))?;
                ensure(le(&m, s) && le(&m, t), || format!("{m} is not below {s} and {t}"))?;
                for l in e {
                    ensure(!(le(l, s) && le(l, t)) || le(l, &m), || {
                        format!("{l} is below {s}, {t} but not below their meet {m}")
                    })?;
                }
                // associativity is cubic; keep it to the desk-scale range
                if n <= 7 {
                    for r in e {
                        let left = meet(&m, r).expect("same length");
                        let right = meet(s, &meet(t, r).expect("same length")).expect("same length");
                        ensure(left == right, || format!("meet not associative on {s}, {t}, {r}"))?;
                    }
                }
            }
            Ok(())
        })(),
        Property::JoinOracle => {
            let poset = OraclePoset::new(e);
            pairs(u).try_for_each(|(s, t)| {
                let fold = u.join(s, t).expect("same length");
                let slow = poset.join(s, t).map_err(|err| err.to_string())?;
                ensure(fold == slow, || format!("join({s}, {t}) = {fold}, oracle {slow}"))
            })
        }
        Property::Absorption => pairs(u).try_for_each(|(s, t)| {
            let m = meet(s, t).expect("same length");
            let j = u.join(s, t).expect("same length");
            ensure(u.join(s, &m).as_ref() == Ok(s), || format!("join({s}, meet({s}, {t})) != {s}"))?;
            ensure(meet(s, &j).as_ref() == Ok(s), || format!("meet({s}, join({s}, {t})) != {s}"))
        }),
        Property::BottomTop => {
            let b = bottom(n).expect("n >= 1");
            let t = top(n).expect("n >= 1");
            ensure(
                e.contains(&b) && e.contains(&t) && e.iter().all(|x| le(&b, x) && le(x, &t)),
                || format!("n={n}: bottom {b} or top {t} is not extreme"),
            )
        }
        Property::ClosureEqualsOrder => {
            let report = closure_equals_order(n, ceiling)?;
            ensure(report.equal, || {
                let (l, h) = report
                    .missing
                    .first()
                    .or(report.spurious.first())
                    .expect("a discrepancy exists");
                format!("closure and order differ at ({l}, {h})")
            })
        }
        Property::CoversOracle => {
            let poset = OraclePoset::new(e);
            let oracle = poset.covers();
            ensure(oracle.as_slice() == u.cover_edges(), || {
                format!("n={n}: {} covers vs {} by brute force", u.cover_edges().len(), oracle.len())
            })
        }
        Property::CoversInBalancing => {
            let steps = u.minimal_balancing_relation();
            u.covering_pairs().into_iter().try_for_each(|(lo, hi)| {
                ensure(
                    steps.iter().any(|s| s.target == lo && s.source == hi),
                    || format!("cover {lo} ⋖ {hi} is not a balancing step"),
                )
            })
        }
        Property::ExcessEmptyIffBottom => {
            let b = bottom(n).expect("n >= 1");
            e.iter().try_for_each(|l| {
                let empty = excess_indices(l).is_empty();
                let near = is_near_constant(l.components()).verdict;
                ensure(empty == (l == &b) && near == (l == &b), || {
                    format!("{l}: no excess={empty}, near-constant={near}, bottom={b}")
                })
            })
        }
        Property::BalSumDecrease => e.iter().try_for_each(|l| {
            excess_indices(l).into_iter().try_for_each(|j| {
                let target = bal(l, j).expect("excess index");
                let d = l.components();
                let i = d.iter().rposition(|&x| x + 2 <= d[j - 1]).expect("shallow leaf");
                let expected = u64::from(d[j - 1] - d[i] - 1);
                ensure(
                    lt(&target, l) && l.sum() - target.sum() == expected && expected >= 1,
                    || format!("bal[{l}, {j}] = {target}: sum drop {} expected {expected}", l.sum() - target.sum()),
                )
            })
        }),
        Property::IrreducibilityTripleAgreement => e.iter().try_for_each(|l| {
            let brute = is_join_irreducible_bruteforce(l, u).expect("element of universe");
            let p2 = is_join_irreducible_prop2(l);
            let p3 = is_join_irreducible_prop3(l);
            ensure(brute == p2 && p2 == p3, || {
                format!("{l}: brute force {brute}, excess-index test {p2}, uvw test {p3}")
            })
        }),
        Property::Prop2CoverConsistency => e.iter().enumerate().try_for_each(|(idx, l)| {
            let lower = u.lower_covers(idx);
            if lower.len() != 1 {
                return Ok(());
            }
            let j = excess_indices(l)[0];
            let step = bal(l, j).expect("excess index");
            ensure(step == e[lower[0]], || {
                format!("{l}: unique lower cover {} but bal at {j} is {step}", e[lower[0]])
            })
        }),
        Property::UvwConcatenation => e.iter().try_for_each(|l| {
            let d = decompose_uvw(l);
            ensure(d.concat() == l.components(), || format!("{l}: u·v·w = {:?}", d.concat()))
        }),
        Property::SumMonotone => comparable_pairs(u).filter(|(l, h)| l != h).try_for_each(|(l, h)| {
            ensure(sum_components(l) < sum_components(h), || {
                format!("{l} ⊲ {h} but sums {} >= {}", l.sum(), h.sum())
            })
        }),
        Property::DepthCountAntitone => comparable_pairs(u).try_for_each(|(l, h)| {
            (0..=n as u32).try_for_each(|d| {
                let (a, b) = (nodes_within_depth(l, d), nodes_within_depth(h, d));
                ensure(a >= b, || format!("{l} ⊴ {h} but depth-{d} node counts {a} < {b}"))
            })
        }),
        Property::KraftRealization => e.iter().try_for_each(|l| {
            let code = canonical_code(l);
            let lengths_ok = code.iter().map(|w| w.len() as u32).eq(l.components().iter().copied());
            let prefix_free = code.iter().enumerate().all(|(i, a)| {
                code.iter().enumerate().all(|(j, b)| i == j || !a.is_prefix_of(b))
            });
            let tree = tree_from_sequence(l);
            let round_trip = &sequence_from_tree(&tree) == l
                && tree_from_sequence(&sequence_from_tree(&tree)) == tree
                && tree.codewords() == code;
            ensure(lengths_ok && prefix_free && round_trip, || {
                format!("{l}: lengths {lengths_ok}, prefix-free {prefix_free}, round trip {round_trip}")
            })
        }),
    };
    Ok(outcome)
}
