//! Exact search for interval partitions of a characteristic poset.
//!
//! For a target `s` the solver repeatedly picks the lexicographically least
//! uncovered element whose rank is below `s` (it is necessarily minimal among
//! the uncovered elements, hence the bottom of its interval) and branches on
//! every admissible top: `rho(top) >= s` and the whole interval uncovered
//! and inside the poset. Elements with `rho >= s` never need a nontrivial
//! interval of their own and are closed off as singletons at the end.
//!
//! Two sound prunes run at every node:
//!
//! * the level-counting rule: each minimal uncovered element `u` of degree
//!   `d` needs at least `s - rho(u)` distinct degree-`d+1` elements above it,
//!   and those cannot be minimal themselves;
//! * the dead-end rule: every uncovered element of rank below `s` must still
//!   reach some admissible top through uncovered elements.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::partition::{Interval, IntervalPartition};
use crate::poset::CharPoset;

#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Wall-clock budget per decision call; `None` means unbounded.
    pub timeout: Option<Duration>,
    /// Worker threads for a decision call. `1` is the sequential reference.
    pub threads: usize,
    pub counting_prune: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            timeout: Some(Duration::from_secs(60)),
            threads: 1,
            counting_prune: true,
        }
    }
}

impl SearchConfig {
    pub fn sequential() -> Self {
        Self::default()
    }

    pub fn with_timeout(mut self, timeout: Option<Duration>) -> Self {
        self.timeout = timeout;
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }

    pub fn with_counting_prune(mut self, enabled: bool) -> Self {
        self.counting_prune = enabled;
        self
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub counting_prunes: u64,
    pub dead_end_prunes: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SearchStats {
    fn absorb(&mut self, other: &SearchStats) {
        self.nodes += other.nodes;
        self.counting_prunes += other.counting_prunes;
        self.dead_end_prunes += other.dead_end_prunes;
    }
}

#[derive(Clone, Debug)]
pub struct Decision {
    pub partition: Option<IntervalPartition>,
    pub stats: SearchStats,
}

#[derive(Clone, Debug)]
pub struct SdepthCertificate {
    /// The witnessed Stanley depth, `min rho(top)` over the partition.
    pub s: usize,
    pub partition: IntervalPartition,
    pub stats: SearchStats,
}

/// Decides whether `poset` has an interval partition with every top of rank
/// at least `target`, returning one if so.
pub fn exists_partition(poset: &CharPoset, target: usize, config: &SearchConfig) -> Result<Decision> {
    let start = Instant::now();
    let deadline = config.timeout.map(|t| start + t);
    let mut decision = if target > poset.arity() {
        Decision {
            partition: None,
            stats: SearchStats::default(),
        }
    } else if config.threads > 1 {
        parallel_decide(poset, target, config, deadline)?
    } else {
        let mut search = Search::new(poset, target, config.counting_prune, deadline);
        let found = search.run(None).map_err(|_| Error::Timeout(start.elapsed()))?;
        Decision {
            partition: found.then(|| search.partition()),
            stats: search.stats,
        }
    };
    decision.stats.elapsed = start.elapsed();
    Ok(decision)
}

/// Largest `s` admitting a partition, with a witnessing partition.
///
/// Targets are scanned downwards from the largest rank present in the
/// poset. For `m^k` the scan starts at `ceil(n/(k+1)) + 1` instead and climbs
/// back up if that start is already feasible, so the value stays exact.
pub fn sdepth_poset(poset: &CharPoset, config: &SearchConfig) -> Result<SdepthCertificate> {
    if poset.is_empty() {
        return Err(Error::EmptyPoset);
    }
    let upper = poset.max_rank();
    let start = match pure_power_exponent(poset) {
        Some(k) => upper.min(poset.arity().div_ceil(k as usize + 1) + 1),
        None => upper,
    };
    let mut stats = SearchStats::default();
    let began = Instant::now();

    let mut best: Option<(usize, IntervalPartition)> = None;
    for s in (0..=start).rev() {
        let d = exists_partition(poset, s, config)?;
        stats.absorb(&d.stats);
        if let Some(p) = d.partition {
            best = Some((s, p));
            break;
        }
    }
    let (mut s, mut partition) = best.expect("target 0 is always feasible");
    if s == start {
        while s < upper {
            let d = exists_partition(poset, s + 1, config)?;
            stats.absorb(&d.stats);
            match d.partition {
                Some(p) => {
                    s += 1;
                    partition = p;
                }
                None => break,
            }
        }
    }
    stats.elapsed = began.elapsed();
    Ok(SdepthCertificate { s, partition, stats })
}

/// `sdepth(I)` through the default-box poset of `I/0`.
pub fn sdepth_ideal(ideal: &MonomialIdeal, config: &SearchConfig) -> Result<SdepthCertificate> {
    sdepth_poset(&CharPoset::for_ideal(ideal)?, config)
}

/// `sdepth(I/J)`; pass the unit ideal as `numerator` for `S/J`.
pub fn sdepth_quotient(
    numerator: &MonomialIdeal,
    denominator: &MonomialIdeal,
    config: &SearchConfig,
) -> Result<SdepthCertificate> {
    sdepth_poset(&CharPoset::build(numerator, denominator, None)?, config)
}

/// `k` when the poset is exactly that of `m^k` in its natural box.
fn pure_power_exponent(poset: &CharPoset) -> Option<u32> {
    if !poset.denominator().is_zero() {
        return None;
    }
    let gens = poset.numerator().generators();
    let k = gens.first()?.total_degree() as u32;
    if k == 0 || poset.ceiling().exponents().iter().any(|&g| g != k) {
        return None;
    }
    let power = MonomialIdeal::maximal_power(poset.arity(), k).ok()?;
    (poset.numerator() == &power).then_some(k)
}

/// Level-counting test on a partial cover: false only when no completion
/// with all tops of rank at least `target` can exist.
pub fn counting_prune(poset: &CharPoset, target: usize, covered: &FixedBitSet) -> bool {
    if target == 0 {
        return true;
    }
    let mut search = Search::new(poset, target, true, None);
    for &c in poset.codes() {
        if covered.contains(c) {
            search.take(c);
        }
    }
    search.counting_ok()
}

enum Abort {
    Timeout,
    Cancelled,
}

enum Step {
    Solved,
    Pruned,
    Branch(usize),
}

struct Search<'p> {
    poset: &'p CharPoset,
    target: usize,
    counting: bool,
    deadline: Option<Instant>,
    /// Uncovered poset elements.
    avail: FixedBitSet,
    /// Uncovered elements of rank below target.
    low_left: usize,
    chosen: Vec<(usize, usize)>,
    stats: SearchStats,
    max_degree: usize,
    scratch: FixedBitSet,
    avail_per_level: Vec<i64>,
    minimal_per_level: Vec<i64>,
    demand_per_level: Vec<i64>,
}

impl<'p> Search<'p> {
    fn new(poset: &'p CharPoset, target: usize, counting: bool, deadline: Option<Instant>) -> Self {
        let avail = poset.members().clone();
        let low_left = poset
            .codes()
            .iter()
            .filter(|&&c| poset.rank_of_code(c) < target)
            .count();
        let max_degree = poset.ceiling().total_degree() as usize;
        Self {
            poset,
            target,
            counting,
            deadline,
            avail,
            low_left,
            chosen: Vec::new(),
            stats: SearchStats::default(),
            max_degree,
            scratch: FixedBitSet::with_capacity(poset.box_size()),
            avail_per_level: vec![0; max_degree + 2],
            minimal_per_level: vec![0; max_degree + 2],
            demand_per_level: vec![0; max_degree + 2],
        }
    }

    fn take(&mut self, code: usize) {
        if self.avail.contains(code) {
            self.avail.set(code, false);
            if self.poset.rank_of_code(code) < self.target {
                self.low_left -= 1;
            }
        }
    }

    fn give(&mut self, code: usize) {
        self.avail.insert(code);
        if self.poset.rank_of_code(code) < self.target {
            self.low_left += 1;
        }
    }

    fn place(&mut self, bottom: usize, top: usize) {
        let lo = self.poset.decode_exponents(bottom);
        let hi = self.poset.decode_exponents(top);
        let poset = self.poset;
        poset.for_each_in_box(&lo, &hi, |c| {
            self.take(c);
            true
        });
        self.chosen.push((bottom, top));
    }

    fn unplace(&mut self) {
        let (bottom, top) = self.chosen.pop().expect("placed interval");
        let lo = self.poset.decode_exponents(bottom);
        let hi = self.poset.decode_exponents(top);
        let poset = self.poset;
        poset.for_each_in_box(&lo, &hi, |c| {
            self.give(c);
            true
        });
    }

    fn is_minimal(&self, code: usize) -> bool {
        (0..self.poset.arity()).all(|j| {
            self.poset.digit(code, j) == 0 || !self.avail.contains(code - self.poset.stride(j))
        })
    }

    fn counting_ok(&mut self) -> bool {
        let levels = self.max_degree + 2;
        self.avail_per_level[..levels].fill(0);
        self.minimal_per_level[..levels].fill(0);
        self.demand_per_level[..levels].fill(0);
        for code in self.avail.ones() {
            let d = self.poset.degree_of_code(code) as usize;
            self.avail_per_level[d] += 1;
            if self.is_minimal(code) {
                self.minimal_per_level[d] += 1;
                let rank = self.poset.rank_of_code(code);
                if rank < self.target {
                    self.demand_per_level[d] += (self.target - rank) as i64;
                }
            }
        }
        (0..=self.max_degree).all(|d| {
            self.demand_per_level[d]
                <= self.avail_per_level[d + 1] - self.minimal_per_level[d + 1]
        })
    }

    /// Whether `code` can still reach a top of rank >= target through an
    /// all-uncovered box.
    fn has_top(&self, code: usize) -> bool {
        let poset = self.poset;
        let rank = poset.rank_of_code(code);
        if rank >= self.target {
            return true;
        }
        let need = self.target - rank;
        let exps = poset.decode_exponents(code);
        let g = poset.ceiling().exponents();
        let mut open: Vec<usize> = Vec::new();
        for j in 0..poset.arity() {
            if exps[j] == g[j] {
                continue;
            }
            let stride = poset.stride(j);
            let clear = (1..=(g[j] - exps[j]) as usize).all(|t| self.avail.contains(code + t * stride));
            if clear {
                open.push(j);
            }
        }
        if open.len() < need {
            return false;
        }
        if need == 1 {
            return true;
        }
        let mut hi = exps.clone();
        let mut pick: Vec<usize> = (0..need).collect();
        loop {
            hi.copy_from_slice(&exps);
            for &i in &pick {
                hi[open[i]] = g[open[i]];
            }
            if poset.for_each_in_box(&exps, &hi, |c| self.avail.contains(c)) {
                return true;
            }
            // next combination of `need` indices out of open.len()
            let mut i = need;
            loop {
                if i == 0 {
                    return false;
                }
                i -= 1;
                if pick[i] < open.len() - need + i {
                    break;
                }
            }
            pick[i] += 1;
            for t in i + 1..need {
                pick[t] = pick[t - 1] + 1;
            }
        }
    }

    fn analyze(&mut self) -> Step {
        if self.low_left == 0 {
            return Step::Solved;
        }
        if self.counting && !self.counting_ok() {
            self.stats.counting_prunes += 1;
            return Step::Pruned;
        }
        let mut bottom = None;
        for code in self.avail.ones() {
            if self.poset.rank_of_code(code) >= self.target {
                continue;
            }
            bottom.get_or_insert(code);
            if !self.has_top(code) {
                self.stats.dead_end_prunes += 1;
                return Step::Pruned;
            }
        }
        Step::Branch(bottom.expect("low_left > 0"))
    }

    /// Admissible tops above `bottom`, largest intervals first.
    fn tops(&mut self, bottom: usize) -> Vec<usize> {
        let poset = self.poset;
        let lo = poset.decode_exponents(bottom);
        let g = poset.ceiling().exponents().to_vec();
        let mut out = Vec::new();
        let mut touched = Vec::new();
        poset.for_each_in_box(&lo, &g, |c| {
            if !self.avail.contains(c) {
                return true;
            }
            let reachable = (0..lo.len()).all(|j| {
                poset.digit(c, j) == lo[j] || self.scratch.contains(c - poset.stride(j))
            });
            if reachable {
                self.scratch.insert(c);
                touched.push(c);
                if poset.rank_of_code(c) >= self.target {
                    out.push(c);
                }
            }
            true
        });
        for c in touched {
            self.scratch.set(c, false);
        }
        out.sort_by(|&a, &b| {
            poset
                .degree_of_code(b)
                .cmp(&poset.degree_of_code(a))
                .then(a.cmp(&b))
        });
        out
    }

    fn tick(&mut self, cancel: Option<(&AtomicUsize, usize)>) -> std::result::Result<(), Abort> {
        self.stats.nodes += 1;
        if self.stats.nodes % 64 == 1 {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    return Err(Abort::Timeout);
                }
            }
        }
        if let Some((best, mine)) = cancel {
            if best.load(Ordering::Relaxed) < mine {
                return Err(Abort::Cancelled);
            }
        }
        Ok(())
    }

    fn run(&mut self, cancel: Option<(&AtomicUsize, usize)>) -> std::result::Result<bool, Abort> {
        self.tick(cancel)?;
        let bottom = match self.analyze() {
            Step::Solved => return Ok(true),
            Step::Pruned => return Ok(false),
            Step::Branch(b) => b,
        };
        for top in self.tops(bottom) {
            self.place(bottom, top);
            if self.run(cancel)? {
                return Ok(true);
            }
            self.unplace();
        }
        Ok(false)
    }

    /// The partition described by the chosen intervals plus singletons for
    /// every remaining element, sorted by bottom.
    fn partition(&self) -> IntervalPartition {
        let mut pairs: Vec<(usize, usize)> = self.chosen.clone();
        pairs.extend(self.avail.ones().map(|c| (c, c)));
        pairs.sort_unstable();
        IntervalPartition::new(
            pairs
                .into_iter()
                .map(|(b, t)| Interval::new(self.poset.decode(b), self.poset.decode(t)))
                .collect(),
        )
    }
}

/// Splits the root's branches over worker threads. The reported partition
/// is the one from the lowest-indexed successful branch, which is the one
/// the sequential search would return when no branch times out.
fn parallel_decide(
    poset: &CharPoset,
    target: usize,
    config: &SearchConfig,
    deadline: Option<Instant>,
) -> Result<Decision> {
    let started = Instant::now();
    let mut root = Search::new(poset, target, config.counting_prune, deadline);
    root.stats.nodes += 1;
    let bottom = match root.analyze() {
        Step::Solved => {
            return Ok(Decision {
                partition: Some(root.partition()),
                stats: root.stats,
            })
        }
        Step::Pruned => {
            return Ok(Decision {
                partition: None,
                stats: root.stats,
            })
        }
        Step::Branch(b) => b,
    };
    let tops = root.tops(bottom);
    let next = AtomicUsize::new(0);
    let best = AtomicUsize::new(usize::MAX);
    let timed_out = AtomicBool::new(false);
    let results: Mutex<Vec<(usize, IntervalPartition)>> = Mutex::new(Vec::new());
    let totals = Mutex::new(root.stats);

    std::thread::scope(|scope| {
        for _ in 0..config.threads.min(tops.len()) {
            scope.spawn(|| {
                let mut local = SearchStats::default();
                loop {
                    let idx = next.fetch_add(1, Ordering::Relaxed);
                    if idx >= tops.len() || idx > best.load(Ordering::Relaxed) {
                        break;
                    }
                    let mut search = Search::new(poset, target, config.counting_prune, deadline);
                    search.place(bottom, tops[idx]);
                    let outcome = search.run(Some((&best, idx)));
                    local.absorb(&search.stats);
                    match outcome {
                        Ok(true) => {
                            best.fetch_min(idx, Ordering::Relaxed);
                            results.lock().unwrap().push((idx, search.partition()));
                        }
                        Ok(false) | Err(Abort::Cancelled) => {}
                        Err(Abort::Timeout) => {
                            timed_out.store(true, Ordering::Relaxed);
                            // the deadline is shared, so every worker stops
                            break;
                        }
                    }
                }
                totals.lock().unwrap().absorb(&local);
            });
        }
    });

    let stats = totals.into_inner().unwrap();
    let found = results.into_inner().unwrap().into_iter().min_by_key(|(i, _)| *i);
    match found {
        Some((_, partition)) => Ok(Decision {
            partition: Some(partition),
            stats,
        }),
        None if timed_out.load(Ordering::Relaxed) => Err(Error::Timeout(started.elapsed())),
        None => Ok(Decision {
            partition: None,
            stats,
        }),
    }
}
