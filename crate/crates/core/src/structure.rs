//! Structural results that need no partition search, and the experiment
//! procedures built on top of the engine.

use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use crate::decomposition::{StanleyDecomposition, StanleySpace};
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;
use crate::poset::{alpha_count, CharPoset};
use crate::search::{sdepth_ideal, sdepth_poset, sdepth_quotient, SearchConfig};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationReport {
    /// The ideal being saturated (`I` for `S/I`, `J` for `I/J`).
    pub ideal: MonomialIdeal,
    /// `I^sat`, or `(J : m^inf) ∩ I` for a general quotient.
    pub saturation: MonomialIdeal,
    pub is_saturated: bool,
    /// A monomial in the saturation but not in the ideal.
    pub witness: Option<Monomial>,
}

/// Whether `sdepth(I/J) = 0`, decided without search: for modules of this
/// shape it holds exactly when `(J : m^inf) ∩ I` is strictly larger than `J`.
pub fn sdepth_zero_quotient(
    numerator: &MonomialIdeal,
    denominator: &MonomialIdeal,
) -> Result<(bool, SaturationReport)> {
    if !numerator.contains_ideal(denominator)? {
        return Err(Error::NotContained);
    }
    let saturation = denominator.saturate().intersect(numerator)?;
    let witness = saturation
        .generators()
        .iter()
        .find(|g| !denominator.contains_unchecked(g))
        .cloned();
    let report = SaturationReport {
        ideal: denominator.clone(),
        is_saturated: witness.is_none(),
        saturation,
        witness,
    };
    Ok((!report.is_saturated, report))
}

/// [`sdepth_zero_quotient`] for `S/I`.
pub fn sdepth_zero_ring(ideal: &MonomialIdeal) -> (bool, SaturationReport) {
    sdepth_zero_quotient(&MonomialIdeal::unit(ideal.arity()), ideal).expect("I is inside S")
}

/// Janet decomposition of `S/I`, splitting on the last variable first.
///
/// With `q` the largest `x_n` exponent among the generators, the layers
/// `x_n^j (S'/I_j)` for `j < q` are emitted as they are and layer `q` gets
/// `x_n` adjoined, where `I_j` is `(I : x_n^j)` restricted to `x_n = 0`.
pub fn janet_decomposition(ideal: &MonomialIdeal) -> Result<StanleyDecomposition> {
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let spaces = janet_layers(ideal, ideal.arity());
    Ok(StanleyDecomposition::new(ideal.arity(), spaces))
}

fn janet_layers(ideal: &MonomialIdeal, active: usize) -> Vec<StanleySpace> {
    if ideal.is_unit() {
        return Vec::new();
    }
    if active == 0 {
        // only the zero ideal is left in zero variables
        return vec![StanleySpace::new(Monomial::one(ideal.arity()), Vec::new())];
    }
    let var = active - 1;
    let q = ideal
        .generators()
        .iter()
        .map(|g| g.exponent(var))
        .max()
        .unwrap_or(0);
    let mut out = Vec::new();
    for j in 0..=q {
        for space in janet_layers(&ideal.slice_at(var, j), var) {
            let mut vars = space.vars;
            if j == q {
                vars.push(var);
            }
            out.push(StanleySpace::new(space.generator.with_exponent(var, j), vars));
        }
    }
    out
}

/// `ceil(n / (k+1))`.
pub fn conjecture_bound(n: usize, k: u32) -> usize {
    n.div_ceil(k as usize + 1)
}

/// True iff `alpha_{k+1} >= n*a + (alpha_k - n)(a+1)` fails, which rules out
/// any partition of the `m^k` poset with all tops of rank at least `a + 1`,
/// i.e. certifies `sdepth(m^k) <= a`.
pub fn check_counting_inequality(n: u32, k: u32, a: u32) -> bool {
    let alpha_k = u128::from(alpha_count(n, k, k));
    let alpha_next = u128::from(alpha_count(n, k, k + 1));
    let (n, a) = (u128::from(n), u128::from(a));
    let required = n * a + (alpha_k - n) * (a + 1);
    alpha_next < required
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellStatus {
    Ok,
    Timeout,
}

impl CellStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CellStatus::Ok => "ok",
            CellStatus::Timeout => "timeout",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepRow {
    pub n: usize,
    pub k: u32,
    pub alpha_k: u64,
    pub sdepth: Option<usize>,
    /// `ceil(n/(k+1))`.
    pub bound: usize,
    /// `sdepth <= bound`.
    pub bound_satisfied: Option<bool>,
    /// `sdepth == bound`; reported, never assumed.
    pub conjecture_match: Option<bool>,
    pub status: CellStatus,
    pub elapsed_ms: u128,
    pub nodes: u64,
}

pub const SWEEP_HEADER: &str = "n,k,alpha_k,sdepth,bound,conjecture_match,status,ms,nodes";

/// Computes `sdepth(m^k)` for every cell of the grid. Cells run on up to
/// `workers` threads; rows come back ordered by `(n, k)`.
pub fn conjecture_sweep(
    ns: RangeInclusive<usize>,
    ks: RangeInclusive<u32>,
    config: &SearchConfig,
    workers: usize,
) -> Result<Vec<SweepRow>> {
    let cells: Vec<(usize, u32)> = ns
        .flat_map(|n| ks.clone().map(move |k| (n, k)))
        .collect();
    run_cells(&cells, workers, |&(n, k)| sweep_cell(n, k, config))
}

fn sweep_cell(n: usize, k: u32, config: &SearchConfig) -> Result<SweepRow> {
    let ideal = MonomialIdeal::maximal_power(n, k)?;
    let bound = conjecture_bound(n, k);
    let started = Instant::now();
    let poset = CharPoset::for_ideal(&ideal)?;
    let mut row = SweepRow {
        n,
        k,
        alpha_k: alpha_count(n as u32, k, k),
        sdepth: None,
        bound,
        bound_satisfied: None,
        conjecture_match: None,
        status: CellStatus::Ok,
        elapsed_ms: 0,
        nodes: 0,
    };
    match sdepth_poset(&poset, config) {
        Ok(cert) => {
            row.sdepth = Some(cert.s);
            row.bound_satisfied = Some(cert.s <= bound);
            row.conjecture_match = Some(cert.s == bound);
            row.nodes = cert.stats.nodes;
        }
        Err(Error::Timeout(_)) => row.status = CellStatus::Timeout,
        Err(e) => return Err(e),
    }
    row.elapsed_ms = started.elapsed().as_millis();
    Ok(row)
}

fn run_cells<C: Sync, R: Send>(
    cells: &[C],
    workers: usize,
    job: impl Fn(&C) -> Result<R> + Sync,
) -> Result<Vec<R>> {
    if workers <= 1 {
        return cells.iter().map(&job).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Result<R>>>> =
        Mutex::new((0..cells.len()).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..workers.min(cells.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= cells.len() {
                    break;
                }
                let r = job(&cells[i]);
                slots.lock().unwrap()[i] = Some(r);
            });
        }
    });
    slots
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.expect("every cell ran"))
        .collect()
}

/// CSV rendering with [`SWEEP_HEADER`]; timed-out cells leave value columns empty.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.n,
            r.k,
            r.alpha_k,
            r.sdepth.map(|s| s.to_string()).unwrap_or_default(),
            r.bound,
            r.conjecture_match.map(|b| b.to_string()).unwrap_or_default(),
            r.status.as_str(),
            r.elapsed_ms,
            r.nodes
        );
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MkiRow {
    pub k: u32,
    /// `|G(m^k I)|`, the Hilbert function of the fiber algebra at `k`.
    pub num_gens: usize,
    pub sdepth: Option<usize>,
    pub status: CellStatus,
    pub elapsed_ms: u128,
    pub nodes: u64,
}

/// `|G(m^k I)|` and `sdepth(m^k I)` for each `k`; `k = 0` is `I` itself.
pub fn mki_sweep(
    ideal: &MonomialIdeal,
    ks: RangeInclusive<u32>,
    config: &SearchConfig,
) -> Result<Vec<MkiRow>> {
    if ideal.is_zero() {
        return Err(Error::EmptyPoset);
    }
    let mut rows = Vec::new();
    for k in ks {
        let started = Instant::now();
        let product = if k == 0 {
            ideal.clone()
        } else {
            MonomialIdeal::maximal_power(ideal.arity(), k)?.product(ideal)?
        };
        let mut row = MkiRow {
            k,
            num_gens: product.num_min_gens(),
            sdepth: None,
            status: CellStatus::Ok,
            elapsed_ms: 0,
            nodes: 0,
        };
        match sdepth_ideal(&product, config) {
            Ok(cert) => {
                row.sdepth = Some(cert.s);
                row.nodes = cert.stats.nodes;
            }
            Err(Error::Timeout(_)) => row.status = CellStatus::Timeout,
            Err(e) => return Err(e),
        }
        row.elapsed_ms = started.elapsed().as_millis();
        rows.push(row);
    }
    Ok(rows)
}

pub const MKI_HEADER: &str = "k,num_gens,sdepth,status,ms,nodes";

pub fn mki_csv(rows: &[MkiRow]) -> String {
    let mut out = String::from(MKI_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.k,
            r.num_gens,
            r.sdepth.map(|s| s.to_string()).unwrap_or_default(),
            r.status.as_str(),
            r.elapsed_ms,
            r.nodes
        );
    }
    out
}

/// Exploratory comparison of `sdepth(I)` with `sdepth(S/I) + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Remark17Row {
    pub sdepth_ideal: usize,
    pub sdepth_quotient: usize,
    /// `sdepth(I) >= sdepth(S/I) + 1` on this instance.
    pub holds: bool,
}

pub fn remark17_report(ideal: &MonomialIdeal, config: &SearchConfig) -> Result<Remark17Row> {
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    if ideal.is_zero() {
        return Err(Error::EmptyPoset);
    }
    let of_ideal = sdepth_ideal(ideal, config)?.s;
    let of_quotient = sdepth_quotient(&MonomialIdeal::unit(ideal.arity()), ideal, config)?.s;
    Ok(Remark17Row {
        sdepth_ideal: of_ideal,
        sdepth_quotient: of_quotient,
        holds: of_ideal > of_quotient,
    })
}
