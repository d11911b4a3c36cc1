//! Exhaustive families of small monomial ideals.

use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;

/// Every monomial ideal in `n` variables whose minimal generators have all
/// exponents at most `max_exponent`, each exactly once. Includes the zero
/// and unit ideals.
pub fn antichain_ideals(n: usize, max_exponent: u32) -> Vec<MonomialIdeal> {
    let mut monomials = Vec::new();
    let mut exps = vec![0u32; n];
    loop {
        monomials.push(Monomial::from_raw(exps.clone()));
        let mut j = n;
        loop {
            if j == 0 {
                break;
            }
            j -= 1;
            if exps[j] < max_exponent {
                exps[j] += 1;
                break;
            }
            exps[j] = 0;
        }
        if exps.iter().all(|&e| e == 0) {
            break;
        }
    }
    // ascending degree: a later monomial never divides an earlier one
    monomials.sort();

    let mut out = Vec::new();
    let mut chosen: Vec<Monomial> = Vec::new();
    extend(&monomials, 0, &mut chosen, n, &mut out);
    out
}

fn extend(
    pool: &[Monomial],
    from: usize,
    chosen: &mut Vec<Monomial>,
    n: usize,
    out: &mut Vec<MonomialIdeal>,
) {
    if from == pool.len() {
        out.push(MonomialIdeal::from_generators_unchecked(n, chosen.iter().cloned()));
        return;
    }
    let candidate = &pool[from];
    if !chosen.iter().any(|c| c.divides_unchecked(candidate)) {
        chosen.push(candidate.clone());
        extend(pool, from + 1, chosen, n, out);
        chosen.pop();
    }
    extend(pool, from + 1, chosen, n, out);
}
