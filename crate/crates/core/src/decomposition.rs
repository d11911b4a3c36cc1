//! Stanley decompositions `M = ⊕ m_i K[Z_i]` and a degreewise checker.

use std::fmt;

use thiserror::Error;

use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;

/// The space `generator * K[vars]`; `vars` are sorted 0-based indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StanleySpace {
    pub generator: Monomial,
    pub vars: Vec<usize>,
}

impl StanleySpace {
    pub fn new(generator: Monomial, mut vars: Vec<usize>) -> Self {
        vars.sort_unstable();
        vars.dedup();
        Self { generator, vars }
    }

    /// True iff `w = generator * t` with `t` supported on `vars`.
    pub fn contains(&self, w: &Monomial) -> bool {
        if w.arity() != self.generator.arity() || !self.generator.divides_unchecked(w) {
            return false;
        }
        (0..w.arity())
            .filter(|j| self.vars.binary_search(j).is_err())
            .all(|j| w.exponent(j) == self.generator.exponent(j))
    }

    pub fn dimension(&self) -> usize {
        self.vars.len()
    }
}

impl fmt::Display for StanleySpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*K[", self.generator)?;
        for (i, j) in self.vars.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "x{}", j + 1)?;
        }
        f.write_str("]")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StanleyDecomposition {
    pub arity: usize,
    pub spaces: Vec<StanleySpace>,
}

impl StanleyDecomposition {
    pub fn new(arity: usize, mut spaces: Vec<StanleySpace>) -> Self {
        spaces.sort_by(|a, b| a.generator.cmp(&b.generator).then_with(|| a.vars.cmp(&b.vars)));
        Self { arity, spaces }
    }

    /// `min |Z_i|`, or `None` for the empty decomposition of the zero module.
    pub fn sdepth(&self) -> Option<usize> {
        self.spaces.iter().map(StanleySpace::dimension).min()
    }

    pub fn len(&self) -> usize {
        self.spaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spaces.is_empty()
    }
}

impl fmt::Display for StanleyDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.spaces.is_empty() {
            return f.write_str("0");
        }
        for (i, s) in self.spaces.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DecompositionViolation {
    #[error("space {index} has arity {found}, expected {expected}")]
    Arity {
        index: usize,
        found: usize,
        expected: usize,
    },
    #[error("monomial {0} of the module is not covered")]
    Uncovered(Monomial),
    #[error("monomial {monomial} is covered {count} times")]
    DoubleCount { monomial: Monomial, count: usize },
    #[error("monomial {0} lies outside the module but is covered")]
    Spurious(Monomial),
}

/// Checks that `decomposition` partitions the monomials of `I/J` among all
/// monomials whose every exponent is at most `cap`.
pub fn verify_stanley_decomposition(
    numerator: &MonomialIdeal,
    denominator: &MonomialIdeal,
    decomposition: &StanleyDecomposition,
    cap: u32,
) -> Result<(), DecompositionViolation> {
    let n = numerator.arity();
    for (index, space) in decomposition.spaces.iter().enumerate() {
        if space.generator.arity() != n || space.vars.iter().any(|&j| j >= n) {
            return Err(DecompositionViolation::Arity {
                index,
                found: space.generator.arity(),
                expected: n,
            });
        }
    }
    let mut exps = vec![0u32; n];
    loop {
        let w = Monomial::from_raw(exps.clone());
        let inside = numerator.contains_unchecked(&w) && !denominator.contains_unchecked(&w);
        let count = decomposition.spaces.iter().filter(|s| s.contains(&w)).count();
        match (inside, count) {
            (true, 1) | (false, 0) => {}
            (true, 0) => return Err(DecompositionViolation::Uncovered(w)),
            (true, _) => return Err(DecompositionViolation::DoubleCount { monomial: w, count }),
            (false, _) => return Err(DecompositionViolation::Spurious(w)),
        }
        // odometer over [0, cap]^n
        let mut j = n;
        loop {
            if j == 0 {
                return Ok(());
            }
            j -= 1;
            if exps[j] < cap {
                exps[j] += 1;
                break;
            }
            exps[j] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec()).unwrap()
    }

    #[test]
    fn space_membership() {
        let s = StanleySpace::new(m(&[1, 0]), vec![0]);
        assert!(s.contains(&m(&[3, 0])));
        assert!(!s.contains(&m(&[1, 1])));
        assert!(!s.contains(&m(&[0, 0])));
        assert_eq!(s.to_string(), "x1*K[x1]");
        assert_eq!(StanleySpace::new(m(&[0, 0]), vec![]).to_string(), "1*K[]");
    }

    #[test]
    fn maximal_ideal_in_two_variables() {
        let max = MonomialIdeal::maximal(2).unwrap();
        let zero = MonomialIdeal::zero(2);
        let d = StanleyDecomposition::new(
            2,
            vec![
                StanleySpace::new(m(&[1, 0]), vec![0, 1]),
                StanleySpace::new(m(&[0, 1]), vec![1]),
            ],
        );
        assert_eq!(verify_stanley_decomposition(&max, &zero, &d, 4), Ok(()));
        assert_eq!(d.sdepth(), Some(1));

        let mut missing = d.clone();
        missing.spaces.pop();
        assert!(matches!(
            verify_stanley_decomposition(&max, &zero, &missing, 4),
            Err(DecompositionViolation::Uncovered(_))
        ));

        let mut doubled = d.clone();
        doubled.spaces.push(StanleySpace::new(m(&[1, 1]), vec![]));
        assert!(matches!(
            verify_stanley_decomposition(&max, &zero, &doubled, 4),
            Err(DecompositionViolation::DoubleCount { .. })
        ));

        let mut spurious = d;
        spurious.spaces.push(StanleySpace::new(m(&[0, 0]), vec![]));
        assert!(matches!(
            verify_stanley_decomposition(&max, &zero, &spurious, 4),
            Err(DecompositionViolation::Spurious(_))
        ));
    }
}
