//! The characteristic poset of a quotient `I/J` of monomial ideals.
//!
//! Elements are the monomials `u` dividing the box corner `x^g` with
//! `u in I` and `u not in J`, ordered by divisibility. Box monomials are
//! addressed by a dense mixed-radix code with `x1` as the most significant
//! digit, so code order coincides with lexicographic order on exponent
//! vectors.

use std::fmt::Write as _;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;

/// Largest box the poset will index.
pub const MAX_BOX_SIZE: usize = 1 << 22;

#[derive(Clone, Debug)]
pub struct CharPoset {
    numerator: MonomialIdeal,
    denominator: MonomialIdeal,
    ceiling: Monomial,
    strides: Vec<usize>,
    box_size: usize,
    members: FixedBitSet,
    elements: Vec<usize>,
    degrees: Vec<u32>,
    ranks: Vec<u8>,
}

impl CharPoset {
    /// Builds the poset of `numerator / denominator` inside the box of `ceiling`.
    ///
    /// Without an explicit ceiling the box corner is the lcm of all
    /// generators of both ideals.
    pub fn build(
        numerator: &MonomialIdeal,
        denominator: &MonomialIdeal,
        ceiling: Option<&Monomial>,
    ) -> Result<Self> {
        let n = numerator.arity();
        if denominator.arity() != n {
            return Err(Error::ArityMismatch {
                left: n,
                right: denominator.arity(),
            });
        }
        if !numerator.contains_ideal(denominator)? {
            return Err(Error::NotContained);
        }
        let ceiling = match ceiling {
            Some(g) => {
                if g.arity() != n {
                    return Err(Error::ArityMismatch {
                        left: n,
                        right: g.arity(),
                    });
                }
                g.clone()
            }
            None => numerator
                .lcm_of_generators()
                .zip_with(&denominator.lcm_of_generators(), u32::max),
        };
        for gen in numerator.generators().iter().chain(denominator.generators()) {
            if !gen.divides_unchecked(&ceiling) {
                return Err(Error::InvalidBox {
                    generator: gen.to_string(),
                    ceiling: ceiling.to_string(),
                });
            }
        }

        let size: u128 = ceiling
            .exponents()
            .iter()
            .map(|&g| u128::from(g) + 1)
            .product();
        if size > MAX_BOX_SIZE as u128 {
            return Err(Error::BoxTooLarge(size));
        }
        let box_size = size as usize;
        let mut strides = vec![1usize; n];
        for j in (0..n.saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * (ceiling.exponent(j + 1) as usize + 1);
        }

        let mut members = FixedBitSet::with_capacity(box_size);
        let mut elements = Vec::new();
        let mut degrees = vec![0u32; box_size];
        let mut ranks = vec![0u8; box_size];
        let mut exps = vec![0u32; n];
        for code in 0..box_size {
            if code > 0 {
                // odometer increment, last variable fastest
                let mut j = n - 1;
                loop {
                    if exps[j] < ceiling.exponent(j) {
                        exps[j] += 1;
                        break;
                    }
                    exps[j] = 0;
                    j -= 1;
                }
            }
            degrees[code] = exps.iter().sum();
            ranks[code] = exps
                .iter()
                .zip(ceiling.exponents())
                .filter(|(a, b)| a == b)
                .count() as u8;
            let u = Monomial::from_raw(exps.clone());
            if numerator.contains_unchecked(&u) && !denominator.contains_unchecked(&u) {
                members.insert(code);
                elements.push(code);
            }
        }

        Ok(Self {
            numerator: numerator.clone(),
            denominator: denominator.clone(),
            ceiling,
            strides,
            box_size,
            members,
            elements,
            degrees,
            ranks,
        })
    }

    /// Poset of the ideal `I` itself (`I/0`).
    pub fn for_ideal(ideal: &MonomialIdeal) -> Result<Self> {
        Self::build(ideal, &MonomialIdeal::zero(ideal.arity()), None)
    }

    /// Poset of the quotient ring `S/I`, encoded as `(1)/I`.
    pub fn for_quotient_ring(ideal: &MonomialIdeal) -> Result<Self> {
        Self::build(&MonomialIdeal::unit(ideal.arity()), ideal, None)
    }

    pub fn arity(&self) -> usize {
        self.ceiling.arity()
    }

    pub fn ceiling(&self) -> &Monomial {
        &self.ceiling
    }

    pub fn numerator(&self) -> &MonomialIdeal {
        &self.numerator
    }

    pub fn denominator(&self) -> &MonomialIdeal {
        &self.denominator
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn box_size(&self) -> usize {
        self.box_size
    }

    /// Element codes in ascending (lexicographic) order.
    pub fn codes(&self) -> &[usize] {
        &self.elements
    }

    pub fn elements(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.elements.iter().map(|&c| self.decode(c))
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn contains_code(&self, code: usize) -> bool {
        code < self.box_size && self.members.contains(code)
    }

    pub fn contains(&self, u: &Monomial) -> bool {
        self.encode(u).is_some_and(|c| self.members.contains(c))
    }

    /// Box code of `u`, or `None` when `u` is outside the box.
    pub fn encode(&self, u: &Monomial) -> Option<usize> {
        if u.arity() != self.arity() || !u.divides_unchecked(&self.ceiling) {
            return None;
        }
        Some(
            u.exponents()
                .iter()
                .zip(&self.strides)
                .map(|(&e, &s)| e as usize * s)
                .sum(),
        )
    }

    pub fn decode(&self, code: usize) -> Monomial {
        Monomial::from_raw(self.decode_exponents(code))
    }

    pub(crate) fn decode_exponents(&self, mut code: usize) -> Vec<u32> {
        let mut exps = vec![0; self.arity()];
        for (j, &s) in self.strides.iter().enumerate() {
            exps[j] = (code / s) as u32;
            code %= s;
        }
        exps
    }

    pub(crate) fn stride(&self, var: usize) -> usize {
        self.strides[var]
    }

    /// Exponent of `var` in the box monomial with the given code.
    pub(crate) fn digit(&self, code: usize, var: usize) -> u32 {
        let radix = self.ceiling.exponent(var) as usize + 1;
        ((code / self.strides[var]) % radix) as u32
    }

    /// Visits the codes of the box `[lo, hi]` in increasing order until `f`
    /// returns false; returns whether the walk completed. Requires
    /// `lo <= hi <= ceiling` componentwise.
    pub(crate) fn for_each_in_box(
        &self,
        lo: &[u32],
        hi: &[u32],
        mut f: impl FnMut(usize) -> bool,
    ) -> bool {
        let n = self.arity();
        let mut cur = lo.to_vec();
        let mut code: usize = lo.iter().zip(&self.strides).map(|(&e, &s)| e as usize * s).sum();
        loop {
            if !f(code) {
                return false;
            }
            let mut j = n;
            loop {
                if j == 0 {
                    return true;
                }
                j -= 1;
                if cur[j] < hi[j] {
                    cur[j] += 1;
                    code += self.strides[j];
                    break;
                }
                code -= (cur[j] - lo[j]) as usize * self.strides[j];
                cur[j] = lo[j];
            }
        }
    }

    pub(crate) fn degree_of_code(&self, code: usize) -> u32 {
        self.degrees[code]
    }

    pub(crate) fn rank_of_code(&self, code: usize) -> usize {
        self.ranks[code] as usize
    }

    /// Number of coordinates where `u` meets the box ceiling.
    pub fn rho(&self, u: &Monomial) -> Result<usize> {
        match self.encode(u) {
            Some(c) if self.members.contains(c) => Ok(self.rank_of_code(c)),
            _ => Err(Error::NotInPoset(u.to_string())),
        }
    }

    pub fn max_rank(&self) -> usize {
        self.elements
            .iter()
            .map(|&c| self.rank_of_code(c))
            .max()
            .unwrap_or(0)
    }

    /// Elements of total degree `degree`, in code order.
    pub fn level(&self, degree: u32) -> Vec<Monomial> {
        self.elements
            .iter()
            .filter(|&&c| self.degrees[c] == degree)
            .map(|&c| self.decode(c))
            .collect()
    }

    pub fn level_counts(&self) -> LevelTable {
        let min_degree = self
            .numerator
            .generators()
            .iter()
            .map(|g| g.total_degree() as u32)
            .min()
            .unwrap_or(0);
        let max_degree = self.ceiling.total_degree() as u32;
        let mut counts = vec![0u64; (max_degree.saturating_sub(min_degree) + 1) as usize];
        for &c in &self.elements {
            counts[(self.degrees[c] - min_degree) as usize] += 1;
        }
        LevelTable { min_degree, counts }
    }

    /// Debug listing: header then one `exponents degree rho` line per element.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "n={} g={:?} |P|={}",
            self.arity(),
            self.ceiling.exponents(),
            self.len()
        );
        for &c in &self.elements {
            let _ = writeln!(
                out,
                "{:?} {} {}",
                self.decode_exponents(c),
                self.degrees[c],
                self.ranks[c]
            );
        }
        out
    }
}

/// Element counts per total degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelTable {
    pub min_degree: u32,
    pub counts: Vec<u64>,
}

impl LevelTable {
    pub fn count(&self, degree: u32) -> u64 {
        degree
            .checked_sub(self.min_degree)
            .and_then(|i| self.counts.get(i as usize))
            .copied()
            .unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &c)| (self.min_degree + i as u32, c))
    }
}

/// `binom(a, b)`, zero when `a < b` or either argument is negative.
pub fn binomial(a: i64, b: i64) -> u128 {
    if a < 0 || b < 0 || a < b {
        return 0;
    }
    let b = b.min(a - b) as u128;
    let a = a as u128;
    let mut acc: u128 = 1;
    for i in 0..b {
        acc = acc * (a - i) / (i + 1);
    }
    acc
}

/// Inclusion-exclusion count of exponent vectors in `[0,k]^n` with sum `d`,
/// valid for every `d >= 0`.
pub(crate) fn alpha_count(n: u32, k: u32, d: u32) -> u64 {
    let (n, k, d) = (i64::from(n), i64::from(k), i64::from(d));
    let mut total: i128 = 0;
    for i in 0..=n {
        let top = n + d - i * (k + 1) - 1;
        let term = binomial(n, i) as i128 * binomial(top, n - 1) as i128;
        if i % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    debug_assert!(total >= 0);
    total as u64
}

/// Number of degree-`d` elements of the `m^k` poset, by the closed
/// inclusion-exclusion formula. Defined for `k <= d <= k*n`.
pub fn alpha_formula(n: u32, k: u32, d: u32) -> Result<u64> {
    check_alpha_domain(n, k, d)?;
    Ok(alpha_count(n, k, d))
}

/// Same count as [`alpha_formula`], by direct enumeration of the box.
pub fn alpha_enumerate(n: u32, k: u32, d: u32) -> Result<u64> {
    check_alpha_domain(n, k, d)?;
    fn go(left: u32, k: u32, remaining: u32) -> u64 {
        if left == 0 {
            return u64::from(remaining == 0);
        }
        (0..=k.min(remaining)).map(|e| go(left - 1, k, remaining - e)).sum()
    }
    Ok(go(n, k, d))
}

fn check_alpha_domain(n: u32, k: u32, d: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroArity);
    }
    if k == 0 {
        return Err(Error::InvalidPower(k));
    }
    if d < k || d > k * n {
        return Err(Error::DegreeOutOfRange {
            degree: d,
            min: k,
            max: k * n,
        });
    }
    Ok(())
}
