//! Monomial ideals stored by their minimal generators.
//!
//! The zero ideal has no generators; the unit ideal has the single generator
//! `1`. Generators are kept as a divisibility antichain in ascending
//! degrevlex order, so two equal ideals always have identical storage.

use std::fmt;

use crate::error::{Error, Result};
use crate::monomial::Monomial;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    arity: usize,
    gens: Vec<Monomial>,
}

/// Reduces `gens` to its minimal elements under divisibility.
pub fn minimalize(arity: usize, gens: impl IntoIterator<Item = Monomial>) -> Result<MonomialIdeal> {
    if arity == 0 {
        return Err(Error::ZeroArity);
    }
    let mut all: Vec<Monomial> = gens.into_iter().collect();
    if let Some(bad) = all.iter().find(|g| g.arity() != arity) {
        return Err(Error::ArityMismatch {
            left: arity,
            right: bad.arity(),
        });
    }
    Ok(MonomialIdeal::from_generators_unchecked(arity, all.drain(..)))
}

impl MonomialIdeal {
    pub(crate) fn from_generators_unchecked(
        arity: usize,
        gens: impl IntoIterator<Item = Monomial>,
    ) -> Self {
        let mut all: Vec<Monomial> = gens.into_iter().collect();
        // Ascending degrevlex puts every divisor before its multiples.
        all.sort();
        all.dedup();
        let mut kept: Vec<Monomial> = Vec::with_capacity(all.len());
        for g in all {
            if !kept.iter().any(|h| h.divides_unchecked(&g)) {
                kept.push(g);
            }
        }
        Self { arity, gens: kept }
    }

    pub fn new(arity: usize, gens: Vec<Monomial>) -> Result<Self> {
        minimalize(arity, gens)
    }

    /// Convenience constructor from raw exponent vectors.
    pub fn from_exponents(arity: usize, gens: &[&[u32]]) -> Result<Self> {
        let gens = gens
            .iter()
            .map(|e| Monomial::new(e.to_vec()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(arity, gens)
    }

    pub fn zero(arity: usize) -> Self {
        Self {
            arity,
            gens: Vec::new(),
        }
    }

    pub fn unit(arity: usize) -> Self {
        Self {
            arity,
            gens: vec![Monomial::one(arity)],
        }
    }

    pub fn principal(u: Monomial) -> Self {
        Self {
            arity: u.arity(),
            gens: vec![u],
        }
    }

    /// The maximal ideal `(x1, ..., xn)`.
    pub fn maximal(arity: usize) -> Result<Self> {
        Self::maximal_power(arity, 1)
    }

    /// `m^k`: all monomials of total degree exactly `k`.
    pub fn maximal_power(arity: usize, k: u32) -> Result<Self> {
        if arity == 0 {
            return Err(Error::ZeroArity);
        }
        if k == 0 {
            return Err(Error::InvalidPower(k));
        }
        let mut gens = Vec::new();
        let mut current = vec![0u32; arity];
        compositions(&mut current, 0, k, &mut gens);
        Ok(Self::from_generators_unchecked(arity, gens))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn num_min_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    fn check_arity(&self, arity: usize) -> Result<()> {
        if self.arity != arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: arity,
            });
        }
        Ok(())
    }

    pub fn contains(&self, u: &Monomial) -> Result<bool> {
        self.check_arity(u.arity())?;
        Ok(self.contains_unchecked(u))
    }

    pub(crate) fn contains_unchecked(&self, u: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides_unchecked(u))
    }

    /// True iff every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &Self) -> Result<bool> {
        self.check_arity(other.arity)?;
        Ok(other.gens.iter().all(|g| self.contains_unchecked(g)))
    }

    /// Componentwise maximum of all generator exponents; `1` for the zero ideal.
    pub fn lcm_of_generators(&self) -> Monomial {
        self.gens
            .iter()
            .fold(Monomial::one(self.arity), |acc, g| acc.zip_with(g, u32::max))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_arity(other.arity)?;
        Ok(Self::from_generators_unchecked(
            self.arity,
            self.gens.iter().chain(&other.gens).cloned(),
        ))
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_arity(other.arity)?;
        Ok(self.pairwise(other, |a, b| a + b))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_arity(other.arity)?;
        Ok(self.pairwise(other, u32::max))
    }

    fn pairwise(&self, other: &Self, f: impl Fn(u32, u32) -> u32 + Copy) -> Self {
        let gens = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| a.zip_with(b, f)));
        Self::from_generators_unchecked(self.arity, gens)
    }

    /// `(I : u) = { w : w*u in I }`.
    pub fn colon(&self, u: &Monomial) -> Result<Self> {
        self.check_arity(u.arity())?;
        let gens = self.gens.iter().map(|g| g.zip_with(u, u32::saturating_sub));
        Ok(Self::from_generators_unchecked(self.arity, gens))
    }

    /// `(I : J) = intersection over G(J) of (I : v)`; the unit ideal when J = 0.
    pub fn colon_ideal(&self, other: &Self) -> Result<Self> {
        self.check_arity(other.arity)?;
        let mut acc = Self::unit(self.arity);
        for v in &other.gens {
            acc = acc.intersect(&self.colon(v)?)?;
        }
        Ok(acc)
    }

    /// `(I : x_j^inf)`, with `var` a 0-based variable index.
    pub fn saturate_variable(&self, var: usize) -> Result<Self> {
        if var >= self.arity {
            return Err(Error::VariableOutOfRange {
                index: var,
                arity: self.arity,
            });
        }
        let gens = self.gens.iter().map(|g| g.with_exponent(var, 0));
        Ok(Self::from_generators_unchecked(self.arity, gens))
    }

    /// `I^sat = (I : m^inf)`, the intersection of all variable saturations.
    pub fn saturate(&self) -> Self {
        if self.is_zero() || self.is_unit() {
            return self.clone();
        }
        let mut acc = Self::unit(self.arity);
        for var in 0..self.arity {
            let sat = self
                .saturate_variable(var)
                .expect("index within arity");
            acc = acc.intersect(&sat).expect("same arity");
        }
        acc
    }

    /// Copy with the generators' `var` exponents dropped to zero, keeping only
    /// generators whose `var` exponent is at most `bound`. This is
    /// `(I : x_var^bound)` restricted to `x_var = 0`.
    pub(crate) fn slice_at(&self, var: usize, bound: u32) -> Self {
        let gens = self
            .gens
            .iter()
            .filter(|g| g.exponent(var) <= bound)
            .map(|g| g.with_exponent(var, 0));
        Self::from_generators_unchecked(self.arity, gens)
    }

    /// Relabels variables: exponent `j` moves to position `perm[j]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        self.check_arity(perm.len())?;
        let gens = self.gens.iter().map(|g| {
            let mut exps = vec![0; self.arity];
            for (j, &e) in g.exponents().iter().enumerate() {
                exps[perm[j]] = e;
            }
            Monomial::from_raw(exps)
        });
        Ok(Self::from_generators_unchecked(self.arity, gens))
    }
}

fn compositions(current: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(Monomial::from_raw(current.clone()));
        return;
    }
    for e in 0..=remaining {
        current[pos] = e;
        compositions(current, pos + 1, remaining - e, out);
    }
    current[pos] = 0;
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("(0)");
        }
        f.write_str("(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonomialIdeal[n={}]{}", self.arity, self)
    }
}
