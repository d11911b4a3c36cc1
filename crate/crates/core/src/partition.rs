//! Interval partitions of a characteristic poset, their independent
//! verifier, and conversion to Stanley decompositions.

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::decomposition::{StanleyDecomposition, StanleySpace};
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poset::CharPoset;

/// `[bottom, top]`: every poset element divisible by `bottom` and dividing `top`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub bottom: Monomial,
    pub top: Monomial,
}

impl Interval {
    pub fn new(bottom: Monomial, top: Monomial) -> Self {
        Self { bottom, top }
    }

    pub fn singleton(u: Monomial) -> Self {
        Self {
            bottom: u.clone(),
            top: u,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntervalPartition {
    pub intervals: Vec<Interval>,
}

impl IntervalPartition {
    pub fn new(intervals: Vec<Interval>) -> Self {
        Self { intervals }
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// `min rho(top)` over the intervals; `None` when empty.
    pub fn min_top_rank(&self, poset: &CharPoset) -> Option<usize> {
        self.intervals
            .iter()
            .map(|iv| poset.rho(&iv.top).unwrap_or(0))
            .min()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PartitionViolation {
    #[error("interval {index}: bottom {bottom} does not divide top {top}")]
    NotAnInterval {
        index: usize,
        bottom: Monomial,
        top: Monomial,
    },
    #[error("interval {index} contains {monomial}, which is not in the poset")]
    OutsidePoset { index: usize, monomial: Monomial },
    #[error("double cover: {monomial} lies in interval {index} and an earlier one")]
    DoubleCover { index: usize, monomial: Monomial },
    #[error("uncovered element {0}")]
    Uncovered(Monomial),
    #[error("interval {index} has top {top} with rho {rho} < {target}")]
    LowRank {
        index: usize,
        top: Monomial,
        rho: usize,
        target: usize,
    },
}

/// Checks containment in the poset, disjointness, exact cover and
/// `rho(top) >= target`, reporting the first violation found.
pub fn verify_partition(
    poset: &CharPoset,
    partition: &IntervalPartition,
    target: usize,
) -> std::result::Result<(), PartitionViolation> {
    let mut covered = FixedBitSet::with_capacity(poset.box_size());
    for (index, iv) in partition.intervals.iter().enumerate() {
        let (lo, hi) = match (poset.encode(&iv.bottom), poset.encode(&iv.top)) {
            (Some(_), Some(_)) if iv.bottom.divides_unchecked(&iv.top) => {
                (iv.bottom.exponents(), iv.top.exponents())
            }
            (None, _) => {
                return Err(PartitionViolation::OutsidePoset {
                    index,
                    monomial: iv.bottom.clone(),
                })
            }
            (_, None) => {
                return Err(PartitionViolation::OutsidePoset {
                    index,
                    monomial: iv.top.clone(),
                })
            }
            _ => {
                return Err(PartitionViolation::NotAnInterval {
                    index,
                    bottom: iv.bottom.clone(),
                    top: iv.top.clone(),
                })
            }
        };
        let mut violation = None;
        poset.for_each_in_box(lo, hi, |code| {
            if !poset.contains_code(code) {
                violation = Some(PartitionViolation::OutsidePoset {
                    index,
                    monomial: poset.decode(code),
                });
                return false;
            }
            if covered.put(code) {
                violation = Some(PartitionViolation::DoubleCover {
                    index,
                    monomial: poset.decode(code),
                });
                return false;
            }
            true
        });
        if let Some(v) = violation {
            return Err(v);
        }
        let rho = poset.rho(&iv.top).expect("top checked to be in the poset");
        if rho < target {
            return Err(PartitionViolation::LowRank {
                index,
                top: iv.top.clone(),
                rho,
                target,
            });
        }
    }
    if let Some(&code) = poset.codes().iter().find(|&&c| !covered.contains(c)) {
        return Err(PartitionViolation::Uncovered(poset.decode(code)));
    }
    Ok(())
}

/// Turns a verified partition into a Stanley decomposition of `I/J`.
///
/// An interval `[u, v]` with `Z = { j : v_j = g_j }` contributes the spaces
/// `x^c K[Z]` for every `c` in `[u, v]` that agrees with `u` on `Z`. When
/// `v` meets the ceiling in every coordinate it raises, that is the single
/// space `u K[Z]`.
pub fn to_stanley_decomposition(
    poset: &CharPoset,
    partition: &IntervalPartition,
) -> Result<StanleyDecomposition> {
    verify_partition(poset, partition, 0).map_err(|v| Error::Unverified(v.to_string()))?;
    let g = poset.ceiling();
    let n = poset.arity();
    let mut spaces = Vec::new();
    for iv in &partition.intervals {
        let vars: Vec<usize> = (0..n).filter(|&j| iv.top.exponent(j) == g.exponent(j)).collect();
        let lo = iv.bottom.exponents();
        let mut hi = iv.top.exponents().to_vec();
        for &j in &vars {
            hi[j] = lo[j];
        }
        poset.for_each_in_box(lo, &hi, |code| {
            spaces.push(StanleySpace::new(poset.decode(code), vars.clone()));
            true
        });
    }
    Ok(StanleyDecomposition::new(n, spaces))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::verify_stanley_decomposition;
    use crate::ideal::MonomialIdeal;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec()).unwrap()
    }

    fn max2() -> CharPoset {
        CharPoset::for_ideal(&MonomialIdeal::maximal(2).unwrap()).unwrap()
    }

    fn standard() -> IntervalPartition {
        IntervalPartition::new(vec![
            Interval::new(m(&[1, 0]), m(&[1, 1])),
            Interval::singleton(m(&[0, 1])),
        ])
    }

    #[test]
    fn accepts_valid_partition() {
        let p = max2();
        assert_eq!(verify_partition(&p, &standard(), 1), Ok(()));
        assert_eq!(standard().min_top_rank(&p), Some(1));
        assert!(matches!(
            verify_partition(&p, &standard(), 2),
            Err(PartitionViolation::LowRank { rho: 1, target: 2, .. })
        ));
    }

    #[test]
    fn reports_violations() {
        let p = max2();
        let missing = IntervalPartition::new(vec![Interval::new(m(&[1, 0]), m(&[1, 1]))]);
        assert_eq!(
            verify_partition(&p, &missing, 0),
            Err(PartitionViolation::Uncovered(m(&[0, 1])))
        );
        let overlapping = IntervalPartition::new(vec![
            Interval::new(m(&[1, 0]), m(&[1, 1])),
            Interval::new(m(&[0, 1]), m(&[1, 1])),
        ]);
        assert!(matches!(
            verify_partition(&p, &overlapping, 0),
            Err(PartitionViolation::DoubleCover { index: 1, .. })
        ));
        let outside = IntervalPartition::new(vec![Interval::new(m(&[0, 0]), m(&[1, 1]))]);
        assert!(matches!(
            verify_partition(&p, &outside, 0),
            Err(PartitionViolation::OutsidePoset { .. })
        ));
        let backwards = IntervalPartition::new(vec![Interval::new(m(&[1, 1]), m(&[1, 0]))]);
        assert!(matches!(
            verify_partition(&p, &backwards, 0),
            Err(PartitionViolation::NotAnInterval { .. })
        ));
    }

    #[test]
    fn interval_with_hole_is_rejected() {
        // S/(x1*x2) in the box (1,1): [1, x1*x2] would contain the excluded x1*x2.
        let i = MonomialIdeal::from_exponents(2, &[&[1, 1]]).unwrap();
        let p = CharPoset::for_quotient_ring(&i).unwrap();
        let bad = IntervalPartition::new(vec![Interval::new(m(&[0, 0]), m(&[1, 1]))]);
        assert!(matches!(
            verify_partition(&p, &bad, 0),
            Err(PartitionViolation::OutsidePoset { .. })
        ));
    }

    #[test]
    fn decomposition_of_maximal_ideal() {
        let p = max2();
        let d = to_stanley_decomposition(&p, &standard()).unwrap();
        assert_eq!(d.to_string(), "x2*K[x2] + x1*K[x1,x2]");
        assert_eq!(d.sdepth(), Some(1));
        let zero = MonomialIdeal::zero(2);
        assert_eq!(
            verify_stanley_decomposition(p.numerator(), &zero, &d, 4),
            Ok(())
        );
        let broken = IntervalPartition::new(vec![Interval::new(m(&[1, 0]), m(&[1, 1]))]);
        assert!(matches!(
            to_stanley_decomposition(&p, &broken),
            Err(Error::Unverified(_))
        ));
    }

    #[test]
    fn singleton_and_partial_tops_expand() {
        // m^2 in two variables, box (2,2): [x1*x2, x1*x2] has rho 0.
        let i = MonomialIdeal::maximal_power(2, 2).unwrap();
        let p = CharPoset::for_ideal(&i).unwrap();
        let single = Interval::singleton(m(&[1, 1]));
        let part = IntervalPartition::new(vec![
            single,
            Interval::new(m(&[2, 0]), m(&[2, 2])),
            Interval::new(m(&[0, 2]), m(&[1, 2])),
        ]);
        verify_partition(&p, &part, 0).unwrap();
        let d = to_stanley_decomposition(&p, &part).unwrap();
        // [x2^2, x1*x2^2] has Z = {x2} and raises x1 without reaching the
        // ceiling, so it splits into x2^2 K[x2] and x1*x2^2 K[x2].
        assert_eq!(
            d.to_string(),
            "x2^2*K[x2] + x1*x2*K[] + x1^2*K[x1,x2] + x1*x2^2*K[x2]"
        );
        verify_stanley_decomposition(&i, &MonomialIdeal::zero(2), &d, 6).unwrap();
    }
}
