//! Monomials as exponent vectors of a fixed arity.
//!
//! Monomials are ordered by degrevlex: total degree first, ties broken by
//! the last variable where the exponents differ (smaller exponent there is
//! larger). Every sorted collection in this crate uses that order.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Default per-coordinate bound on parsed and constructed exponents.
pub const DEFAULT_EXPONENT_CAP: u32 = (1 << 15) - 1;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    /// Builds a monomial, rejecting exponents above [`DEFAULT_EXPONENT_CAP`].
    pub fn new(exps: Vec<u32>) -> Result<Self> {
        Self::with_cap(exps, DEFAULT_EXPONENT_CAP)
    }

    pub fn with_cap(exps: Vec<u32>, cap: u32) -> Result<Self> {
        if exps.is_empty() {
            return Err(Error::ZeroArity);
        }
        if let Some(&value) = exps.iter().find(|&&e| e > cap) {
            return Err(Error::ExponentTooLarge {
                value: value.into(),
                cap,
            });
        }
        Ok(Self { exps })
    }

    /// Internal constructor for vectors derived from already validated ones.
    pub(crate) fn from_raw(exps: Vec<u32>) -> Self {
        debug_assert!(!exps.is_empty());
        Self { exps }
    }

    pub fn one(arity: usize) -> Self {
        Self::from_raw(vec![0; arity])
    }

    /// The variable `x_{index+1}`.
    pub fn variable(arity: usize, index: usize) -> Result<Self> {
        if index >= arity {
            return Err(Error::VariableOutOfRange { index, arity });
        }
        let mut exps = vec![0; arity];
        exps[index] = 1;
        Ok(Self::from_raw(exps))
    }

    pub fn arity(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.exps[index]
    }

    pub fn total_degree(&self) -> u64 {
        self.exps.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Indices of variables with a positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(j, _)| j)
    }

    fn check_arity(&self, other: &Self) -> Result<()> {
        if self.arity() != other.arity() {
            return Err(Error::ArityMismatch {
                left: self.arity(),
                right: other.arity(),
            });
        }
        Ok(())
    }

    /// True iff `self` divides `other`.
    pub fn divides(&self, other: &Self) -> Result<bool> {
        self.check_arity(other)?;
        Ok(self.divides_unchecked(other))
    }

    pub(crate) fn divides_unchecked(&self, other: &Self) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        Ok(self.zip_with(other, u32::max))
    }

    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        Ok(self.zip_with(other, u32::min))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn checked_div(&self, other: &Self) -> Result<Option<Self>> {
        self.check_arity(other)?;
        if !other.divides_unchecked(self) {
            return Ok(None);
        }
        Ok(Some(self.zip_with(other, |a, b| a - b)))
    }

    pub(crate) fn zip_with(&self, other: &Self, f: impl Fn(u32, u32) -> u32) -> Self {
        Self::from_raw(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        )
    }

    /// Copy with the exponent of `index` replaced.
    pub(crate) fn with_exponent(&self, index: usize, value: u32) -> Self {
        let mut exps = self.exps.clone();
        exps[index] = value;
        Self::from_raw(exps)
    }

    /// Degree-reverse-lexicographic comparison (arity compared first).
    pub fn degrevlex_cmp(&self, other: &Self) -> Ordering {
        self.arity()
            .cmp(&other.arity())
            .then_with(|| self.total_degree().cmp(&other.total_degree()))
            .then_with(|| {
                for (a, b) in self.exps.iter().zip(&other.exps).rev() {
                    match a.cmp(b) {
                        Ordering::Equal => continue,
                        ord => return ord.reverse(),
                    }
                }
                Ordering::Equal
            })
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degrevlex_cmp(other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Renders as `x1^2*x3`, or `1` for the unit monomial.
impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (j, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{}", j + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec()).unwrap()
    }

    #[test]
    fn divisibility() {
        assert!(m(&[1, 2]).divides(&m(&[2, 2])).unwrap());
        assert!(m(&[3, 1]).divides(&m(&[3, 1])).unwrap());
        assert!(!m(&[1, 0]).divides(&m(&[0, 5])).unwrap());
        assert_eq!(
            m(&[1]).divides(&m(&[1, 0])),
            Err(Error::ArityMismatch { left: 1, right: 2 })
        );
    }

    #[test]
    fn lattice_operations() {
        assert_eq!(m(&[1, 0]).lcm(&m(&[0, 2])).unwrap(), m(&[1, 2]));
        assert_eq!(m(&[1, 0]).gcd(&m(&[0, 2])).unwrap(), m(&[0, 0]));
        assert_eq!(m(&[2, 3]).total_degree(), 5);
        assert!(m(&[1, 0]).gcd(&m(&[0, 2, 1])).is_err());
        assert_eq!(m(&[2, 3]).checked_div(&m(&[1, 3])).unwrap(), Some(m(&[1, 0])));
        assert_eq!(m(&[2, 3]).checked_div(&m(&[3, 0])).unwrap(), None);
    }

    #[test]
    fn exponent_cap() {
        assert!(Monomial::new(vec![DEFAULT_EXPONENT_CAP]).is_ok());
        assert!(matches!(
            Monomial::new(vec![0, DEFAULT_EXPONENT_CAP + 1]),
            Err(Error::ExponentTooLarge { .. })
        ));
        assert_eq!(Monomial::new(vec![]), Err(Error::ZeroArity));
    }

    #[test]
    fn degrevlex_order() {
        // x1^2 > x1*x2 > x2^2 > x1*x3 > x2*x3 > x3^2 in degree 2, all above degree 1.
        let mut v = vec![
            m(&[0, 0, 2]),
            m(&[1, 1, 0]),
            m(&[0, 1, 1]),
            m(&[2, 0, 0]),
            m(&[1, 0, 0]),
            m(&[1, 0, 1]),
            m(&[0, 2, 0]),
        ];
        v.sort();
        assert_eq!(
            v,
            vec![
                m(&[1, 0, 0]),
                m(&[0, 0, 2]),
                m(&[0, 1, 1]),
                m(&[1, 0, 1]),
                m(&[0, 2, 0]),
                m(&[1, 1, 0]),
                m(&[2, 0, 0]),
            ]
        );
    }

    #[test]
    fn display() {
        assert_eq!(m(&[2, 0, 1]).to_string(), "x1^2*x3");
        assert_eq!(m(&[0, 0]).to_string(), "1");
    }
}
