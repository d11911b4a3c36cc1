//! Brute-force reference computations for differential tests. Nothing here
//! shares code with the search engine.

use std::collections::HashSet;

use crate::poset::CharPoset;

/// Maximum of `min rho(top)` over every interval partition of the finite
/// poset given by `elements` inside the box of `ceiling`, by exhaustive
/// enumeration. `None` for an empty element list.
pub fn brute_force_sdepth(elements: &[Vec<u32>], ceiling: &[u32]) -> Option<usize> {
    if elements.is_empty() {
        return None;
    }
    let mut order: Vec<Vec<u32>> = elements.to_vec();
    order.sort_by_key(|e| (e.iter().sum::<u32>(), e.clone()));
    let members: HashSet<Vec<u32>> = order.iter().cloned().collect();
    let rho = |v: &[u32]| v.iter().zip(ceiling).filter(|(a, b)| a == b).count();
    let mut covered = vec![false; order.len()];
    best_completion(&order, &members, &rho, &mut covered)
}

/// Convenience wrapper reading the element list off a poset.
pub fn brute_force_sdepth_of(poset: &CharPoset) -> Option<usize> {
    let elements: Vec<Vec<u32>> = poset.elements().map(|u| u.exponents().to_vec()).collect();
    brute_force_sdepth(&elements, poset.ceiling().exponents())
}

fn best_completion(
    order: &[Vec<u32>],
    members: &HashSet<Vec<u32>>,
    rho: &dyn Fn(&[u32]) -> usize,
    covered: &mut [bool],
) -> Option<usize> {
    // The first uncovered element in degree order has everything below it
    // covered, so it is the bottom of its interval.
    let Some(first) = covered.iter().position(|c| !c) else {
        return Some(usize::MAX);
    };
    let bottom = &order[first];
    let mut best: Option<usize> = None;
    for (ti, top) in order.iter().enumerate() {
        if covered[ti] || !bottom.iter().zip(top).all(|(a, b)| a <= b) {
            continue;
        }
        let inside: Vec<Vec<u32>> = box_points(bottom, top);
        let idx: Option<Vec<usize>> = inside
            .iter()
            .map(|p| {
                if !members.contains(p) {
                    return None;
                }
                let i = order.iter().position(|q| q == p).unwrap();
                (!covered[i]).then_some(i)
            })
            .collect();
        let Some(idx) = idx else { continue };
        for &i in &idx {
            covered[i] = true;
        }
        if let Some(rest) = best_completion(order, members, rho, covered) {
            let value = rest.min(rho(top));
            best = Some(best.map_or(value, |b| b.max(value)));
        }
        for &i in &idx {
            covered[i] = false;
        }
    }
    best
}

fn box_points(lo: &[u32], hi: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for (a, b) in lo.iter().zip(hi) {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (*a..=*b).map(move |e| {
                    let mut p = prefix.clone();
                    p.push(e);
                    p
                })
            })
            .collect();
    }
    out
}
