//! The subcommands as plain functions. Each returns a human summary for the
//! standard output and, where the command has one, a document for `--out`.
//! Both are deterministic for a fixed configuration; wall-clock figures
//! appear only in the `ms` column of sweep tables.

use std::fmt::Write as _;
use std::fs;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::time::Duration;

use sdepth_core::certificate::CertificateDocument;
use sdepth_core::format::parse_ideal;
use sdepth_core::poset::MAX_BOX_SIZE;
use sdepth_core::structure::{
    conjecture_sweep, janet_decomposition, mki_csv, mki_sweep, remark17_report, sdepth_zero_quotient,
    sweep_csv, CellStatus, MkiRow, SweepRow,
};
use sdepth_core::{
    alpha_enumerate, alpha_formula, exists_partition, sdepth_poset, verify_stanley_decomposition,
    CharPoset, Monomial, MonomialIdeal, SdepthCertificate, SearchConfig,
};
use serde_json::json;

use crate::cache::{cache_key, Cache};
use crate::error::LabError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Structured,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub input: Option<PathBuf>,
    pub input_j: Option<PathBuf>,
    /// Box corner override.
    pub g: Option<Vec<u32>>,
    /// Decide a single target instead of computing the maximum.
    pub target: Option<usize>,
    pub timeout: Duration,
    pub threads: usize,
    pub cache: Option<PathBuf>,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            input: None,
            input_j: None,
            g: None,
            target: None,
            timeout: Duration::from_secs(60),
            threads: 1,
            cache: None,
            format: OutputFormat::Text,
        }
    }
}

impl RunConfig {
    pub fn search_config(&self) -> SearchConfig {
        SearchConfig::default()
            .with_timeout(Some(self.timeout))
            .with_threads(self.threads)
    }

    fn validate(&self) -> Result<(), LabError> {
        if self.timeout.is_zero() {
            return Err(LabError::Invalid("timeout must be positive".into()));
        }
        if self.threads == 0 {
            return Err(LabError::Invalid("thread count must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub summary: String,
    pub document: Option<String>,
}

pub fn read_ideal(path: &Path) -> Result<MonomialIdeal, LabError> {
    let text = fs::read_to_string(path).map_err(|e| LabError::io(path, e))?;
    parse_ideal(&text).map_err(|source| LabError::Parse {
        path: path.display().to_string(),
        source,
    })
}

fn required(path: &Option<PathBuf>, flag: &str) -> Result<MonomialIdeal, LabError> {
    match path {
        Some(p) => read_ideal(p),
        None => Err(LabError::Invalid(format!("{flag} is required"))),
    }
}

/// `sdepth(I)` for the ideal in `--input`.
pub fn cmd_sdepth(cfg: &RunConfig) -> Result<Output, LabError> {
    let numerator = required(&cfg.input, "--input")?;
    let denominator = MonomialIdeal::zero(numerator.arity());
    certify("sdepth", &numerator, &denominator, cfg)
}

/// `sdepth(I/J)`; without `--input` the numerator is the whole ring.
pub fn cmd_quotient(cfg: &RunConfig) -> Result<Output, LabError> {
    let denominator = required(&cfg.input_j, "--input-j")?;
    let numerator = match &cfg.input {
        Some(p) => read_ideal(p)?,
        None => MonomialIdeal::unit(denominator.arity()),
    };
    certify("quotient", &numerator, &denominator, cfg)
}

fn certify(
    command: &str,
    numerator: &MonomialIdeal,
    denominator: &MonomialIdeal,
    cfg: &RunConfig,
) -> Result<Output, LabError> {
    cfg.validate()?;
    let g = match &cfg.g {
        Some(v) => Some(Monomial::new(v.clone())?),
        None => None,
    };
    let poset = CharPoset::build(numerator, denominator, g.as_ref())?;
    if poset.is_empty() {
        return Err(LabError::Invalid("the module is zero".into()));
    }
    let cache = cfg.cache.as_ref().map(Cache::open).transpose()?;
    let label = match cfg.target {
        Some(t) => format!("{command}@{t}"),
        None => command.to_string(),
    };
    let key = cache_key(&label, numerator, denominator, poset.ceiling().exponents());

    let cached = cache.as_ref().and_then(|c| {
        c.load(&key, |payload| {
            CertificateDocument::from_json(payload).is_ok_and(|d| d.check().is_ok())
        })
    });
    let document = match cached {
        Some(text) => CertificateDocument::from_json(&text).expect("validated on load"),
        None => {
            let Some(cert) = search(&poset, cfg)? else {
                let t = cfg.target.expect("only a single target can fail");
                return Ok(Output {
                    summary: summary_infeasible(&poset, t, cfg.format),
                    document: None,
                });
            };
            let document = CertificateDocument::new(&poset, &cert);
            document.check().map_err(LabError::Verification)?;
            if let Some(c) = &cache {
                c.store(&key, &document.to_json())?;
            }
            document
        }
    };
    Ok(Output {
        summary: summary_certificate(&document, cfg),
        document: Some(document.to_json()),
    })
}

fn search(poset: &CharPoset, cfg: &RunConfig) -> Result<Option<SdepthCertificate>, LabError> {
    let config = cfg.search_config();
    match cfg.target {
        None => Ok(Some(sdepth_poset(poset, &config)?)),
        Some(t) => {
            let decision = exists_partition(poset, t, &config)?;
            Ok(decision.partition.map(|partition| SdepthCertificate {
                s: partition.min_top_rank(poset).unwrap_or(0),
                partition,
                stats: decision.stats,
            }))
        }
    }
}

fn summary_certificate(doc: &CertificateDocument, cfg: &RunConfig) -> String {
    let relation = if cfg.target.is_some() { ">=" } else { "=" };
    match cfg.format {
        OutputFormat::Text => format!(
            "sdepth {relation} {}\nbox g = {:?}, {} intervals, {} search nodes\n",
            doc.s,
            doc.g,
            doc.intervals.len(),
            doc.stats.nodes
        ),
        OutputFormat::Structured => {
            let value = json!({
                "sdepth": doc.s,
                "exact": cfg.target.is_none(),
                "g": doc.g,
                "intervals": doc.intervals.len(),
                "nodes": doc.stats.nodes,
                "verified": doc.verified,
            });
            format!("{value}\n")
        }
    }
}

fn summary_infeasible(poset: &CharPoset, target: usize, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => format!(
            "no partition with all tops of rank >= {target} (|P| = {})\n",
            poset.len()
        ),
        OutputFormat::Structured => {
            format!("{}\n", json!({ "target": target, "feasible": false }))
        }
    }
}

/// Saturation test for `sdepth = 0`. With `--input-j` the module is `I/J`
/// (numerator `--input`, or the ring); otherwise it is `S/I`.
pub fn cmd_sat(cfg: &RunConfig) -> Result<Output, LabError> {
    let (numerator, denominator) = match &cfg.input_j {
        Some(j) => {
            let j = read_ideal(j)?;
            let i = match &cfg.input {
                Some(p) => read_ideal(p)?,
                None => MonomialIdeal::unit(j.arity()),
            };
            (i, j)
        }
        None => {
            let i = required(&cfg.input, "--input")?;
            (MonomialIdeal::unit(i.arity()), i)
        }
    };
    let (zero, report) = sdepth_zero_quotient(&numerator, &denominator)?;
    let text = match cfg.format {
        OutputFormat::Text => {
            let mut s = format!("sdepth zero: {zero}\n");
            let _ = writeln!(s, "ideal: {}", report.ideal);
            let _ = writeln!(s, "saturation: {}", report.saturation);
            if let Some(w) = &report.witness {
                let _ = writeln!(s, "witness: {w}");
            }
            s
        }
        OutputFormat::Structured => {
            let value = json!({
                "sdepth_zero": zero,
                "ideal": vectors(&report.ideal),
                "saturation": vectors(&report.saturation),
                "is_saturated": report.is_saturated,
                "witness": report.witness.as_ref().map(|w| w.exponents().to_vec()),
            });
            format!("{}\n", serde_json::to_string_pretty(&value).expect("serializable"))
        }
    };
    Ok(Output {
        summary: text.clone(),
        document: Some(text),
    })
}

fn vectors(ideal: &MonomialIdeal) -> Vec<Vec<u32>> {
    ideal
        .generators()
        .iter()
        .map(|g| g.exponents().to_vec())
        .collect()
}

/// Janet decomposition of `S/I`, checked against the module before output.
pub fn cmd_janet(cfg: &RunConfig) -> Result<Output, LabError> {
    let ideal = required(&cfg.input, "--input")?;
    let decomposition = janet_decomposition(&ideal)?;
    let cap = ideal.lcm_of_generators().exponents().iter().max().copied().unwrap_or(0) + 1;
    let points = u128::from(cap + 1).checked_pow(ideal.arity() as u32);
    let checked = points.is_some_and(|p| p <= MAX_BOX_SIZE as u128);
    if checked {
        verify_stanley_decomposition(
            &MonomialIdeal::unit(ideal.arity()),
            &ideal,
            &decomposition,
            cap,
        )
        .map_err(|v| LabError::Verification(v.to_string()))?;
    }
    let min = decomposition.sdepth().unwrap_or(0);
    let text = match cfg.format {
        OutputFormat::Text => {
            let mut s = String::new();
            for space in &decomposition.spaces {
                let _ = writeln!(s, "{space}");
            }
            let _ = writeln!(
                s,
                "spaces: {}, min |Z| = {min}, verified: {checked}",
                decomposition.len()
            );
            s
        }
        OutputFormat::Structured => {
            let spaces: Vec<_> = decomposition
                .spaces
                .iter()
                .map(|sp| {
                    json!({
                        "generator": sp.generator.exponents(),
                        "vars": sp.vars.iter().map(|v| v + 1).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let value = json!({
                "n": ideal.arity(),
                "spaces": spaces,
                "min_dimension": min,
                "verified": checked,
            });
            format!("{}\n", serde_json::to_string_pretty(&value).expect("serializable"))
        }
    };
    Ok(Output {
        summary: text.clone(),
        document: Some(text),
    })
}

/// Level sizes of the `m^k` poset for `d = k..kn`, by the closed formula,
/// cross-checked against direct enumeration.
pub fn cmd_alpha(n: u32, k: u32, format: OutputFormat) -> Result<Output, LabError> {
    if n == 0 || k == 0 {
        return Err(LabError::Invalid("n and k must be positive".into()));
    }
    let mut degrees = Vec::new();
    let mut values = Vec::new();
    for d in k..=k * n {
        let formula = alpha_formula(n, k, d)?;
        let counted = alpha_enumerate(n, k, d)?;
        if formula != counted {
            return Err(LabError::Verification(format!(
                "alpha_{d}: formula {formula} but enumeration {counted}"
            )));
        }
        degrees.push(d);
        values.push(formula);
    }
    let total: u64 = values.iter().sum();
    let text = match format {
        OutputFormat::Text => {
            let join = |v: Vec<String>| v.join(" ");
            format!(
                "n={n} k={k}\nd     {}\nalpha {}\ntotal {total}\n",
                join(degrees.iter().map(u32::to_string).collect()),
                join(values.iter().map(u64::to_string).collect()),
            )
        }
        OutputFormat::Structured => format!(
            "{}\n",
            json!({ "n": n, "k": k, "degrees": degrees, "alpha": values, "total": total })
        ),
    };
    Ok(Output {
        summary: text.clone(),
        document: Some(text),
    })
}

/// `sdepth(m^k)` against `ceil(n/(k+1))` over a grid. Cells are spread over
/// `--threads` workers, each running the sequential engine.
pub fn cmd_conjecture(
    ns: RangeInclusive<u32>,
    ks: RangeInclusive<u32>,
    cfg: &RunConfig,
) -> Result<Output, LabError> {
    cfg.validate()?;
    if *ns.start() == 0 || *ks.start() == 0 {
        return Err(LabError::Invalid("n and k ranges must start at 1 or more".into()));
    }
    let config = cfg.search_config().with_threads(1);
    let ns = (*ns.start() as usize)..=(*ns.end() as usize);
    let rows = conjecture_sweep(ns, ks, &config, cfg.threads)?;
    let document = match cfg.format {
        OutputFormat::Text => sweep_csv(&rows),
        OutputFormat::Structured => sweep_json(&rows),
    };
    let ok = rows.iter().filter(|r| r.status == CellStatus::Ok).count();
    let within = rows.iter().filter(|r| r.bound_satisfied == Some(true)).count();
    let equal = rows.iter().filter(|r| r.conjecture_match == Some(true)).count();
    let mut summary = document.clone();
    let _ = writeln!(
        summary,
        "# cells {}, ok {ok}, timeout {}, within bound {within}, equal to bound {equal}",
        rows.len(),
        rows.len() - ok
    );
    Ok(Output {
        summary,
        document: Some(document),
    })
}

fn sweep_json(rows: &[SweepRow]) -> String {
    let rows: Vec<_> = rows
        .iter()
        .map(|r| {
            json!({
                "n": r.n,
                "k": r.k,
                "alpha_k": r.alpha_k,
                "sdepth": r.sdepth,
                "bound": r.bound,
                "conjecture_match": r.conjecture_match,
                "status": r.status.as_str(),
                "ms": r.elapsed_ms as u64,
                "nodes": r.nodes,
            })
        })
        .collect();
    format!("{}\n", serde_json::to_string_pretty(&rows).expect("serializable"))
}

/// `|G(m^k I)|` and `sdepth(m^k I)` for each `k` in range.
pub fn cmd_mki(ks: RangeInclusive<u32>, cfg: &RunConfig) -> Result<Output, LabError> {
    cfg.validate()?;
    let ideal = required(&cfg.input, "--input")?;
    let rows = mki_sweep(&ideal, ks, &cfg.search_config())?;
    let document = match cfg.format {
        OutputFormat::Text => mki_csv(&rows),
        OutputFormat::Structured => mki_json(&rows),
    };
    Ok(Output {
        summary: document.clone(),
        document: Some(document),
    })
}

fn mki_json(rows: &[MkiRow]) -> String {
    let rows: Vec<_> = rows
        .iter()
        .map(|r| {
            json!({
                "k": r.k,
                "num_gens": r.num_gens,
                "sdepth": r.sdepth,
                "status": r.status.as_str(),
                "ms": r.elapsed_ms as u64,
                "nodes": r.nodes,
            })
        })
        .collect();
    format!("{}\n", serde_json::to_string_pretty(&rows).expect("serializable"))
}

/// Compares `sdepth(I)` with `sdepth(S/I) + 1`. Exploratory: the inequality
/// is reported, never assumed.
pub fn cmd_remark17(cfg: &RunConfig) -> Result<Output, LabError> {
    cfg.validate()?;
    let ideal = required(&cfg.input, "--input")?;
    let row = remark17_report(&ideal, &cfg.search_config())?;
    let text = match cfg.format {
        OutputFormat::Text => format!(
            "sdepth(I) = {}\nsdepth(S/I) = {}\nsdepth(I) >= sdepth(S/I) + 1: {}\n",
            row.sdepth_ideal, row.sdepth_quotient, row.holds
        ),
        OutputFormat::Structured => format!(
            "{}\n",
            json!({
                "sdepth_ideal": row.sdepth_ideal,
                "sdepth_quotient": row.sdepth_quotient,
                "holds": row.holds,
            })
        ),
    };
    Ok(Output {
        summary: text.clone(),
        document: Some(text),
    })
}

/// Re-checks a stored certificate against a freshly built poset.
pub fn cmd_verify(path: &Path) -> Result<Output, LabError> {
    let text = fs::read_to_string(path).map_err(|e| LabError::io(path, e))?;
    let doc = CertificateDocument::from_json(&text).map_err(|e| LabError::Parse {
        path: path.display().to_string(),
        source: sdepth_core::format::ParseError {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        },
    })?;
    doc.check().map_err(LabError::Verification)?;
    Ok(Output {
        summary: format!(
            "certificate ok: sdepth = {}, {} intervals\n",
            doc.s,
            doc.intervals.len()
        ),
        document: None,
    })
}
