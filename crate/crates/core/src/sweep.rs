//! Reproducible sweeps over the family series.
//!
//! Each instance runs through the order-`n` criterion, the class-number
//! pipeline, the zeta consistency check and the ERD classification. Records
//! are written as JSON Lines in enumeration order regardless of the worker
//! count, so a sweep is byte-identical across runs with the same config.

use std::collections::{BTreeMap, HashSet};
use std::fs::{self, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classnum::{self, ClassData};
use crate::contfrac::CfExpansion;
use crate::error::{Error, ErrorKind, Result};
use crate::families::{self, FamilyInstance, FamilyRanges, FamilySpec, InstanceRecord};
use crate::limits::{self, COUNTING_WORK};
use crate::pell::{theorem1_check, Status, VerdictRecord};

/// Records are computed in batches of this many instances and flushed in order.
const BATCH: usize = 64;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepConfig {
    #[serde(flatten)]
    pub ranges: FamilyRanges,
    /// Worker threads; `0` uses all cores.
    #[serde(default)]
    pub workers: usize,
    #[serde(default = "default_max_genus")]
    pub max_genus: usize,
    /// Run the class-number pipeline (requires prime `q`).
    #[serde(default = "default_true")]
    pub classnum: bool,
    /// Output path, used when the CLI gets no `--out`.
    #[serde(default)]
    pub out: Option<String>,
}

fn default_max_genus() -> usize {
    4
}

fn default_true() -> bool {
    true
}

impl SweepConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("sweep config: {e}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
    Skipped,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZetaCheck {
    pub m: usize,
    pub predicted: i128,
    pub direct: i64,
    pub functional_equation: bool,
    pub weil_range: bool,
}

impl ZetaCheck {
    pub fn ok(&self) -> bool {
        self.predicted == self.direct as i128 && self.functional_equation && self.weil_range
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CorollaryRecord {
    pub n: u32,
    #[serde(rename = "n_divides_h_O")]
    pub n_divides_h_o: bool,
    #[serde(rename = "h_O_at_least_n")]
    pub h_o_at_least_n: bool,
    pub class: ClassData,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRecord {
    pub key: String,
    pub instance: InstanceRecord,
    pub verdict: Verdict,
    pub skip_reason: Option<String>,
    pub error: Option<String>,
    pub theorem1: Option<VerdictRecord>,
    pub theorem1_status: Option<Status>,
    pub corollary: Option<CorollaryRecord>,
    pub zeta: Option<ZetaCheck>,
    /// First-series instances should be of ERD type, second-series ones should not.
    pub erd_expected: bool,
    pub erd_ok: bool,
}

impl SweepRecord {
    fn bare(inst: &FamilyInstance) -> Self {
        let erd_expected = inst.spec.theorem() == 2;
        SweepRecord {
            key: inst.spec.key(),
            instance: inst.record(),
            verdict: Verdict::Skipped,
            skip_reason: None,
            error: None,
            theorem1: None,
            theorem1_status: None,
            corollary: None,
            zeta: None,
            erd_expected,
            erd_ok: inst.flags.erd_type == erd_expected,
        }
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

/// Why an instance is left out of the checked set, if it is.
pub fn skip_reason(inst: &FamilyInstance, config: &SweepConfig) -> Option<String> {
    let flags = &inst.flags;
    let q = inst.d.field().order();
    if !flags.real {
        return Some("not real".into());
    }
    if !flags.monic {
        return Some("not monic".into());
    }
    if !flags.squarefree {
        return Some("not square-free".into());
    }
    let g = flags.genus.expect("real instances have a genus");
    if g == 0 {
        return Some("genus 0".into());
    }
    if g > config.max_genus {
        return Some(format!("genus {g} above {}", config.max_genus));
    }
    if config.classnum {
        if !inst.d.field().is_prime_field() {
            return Some("class numbers need a prime base field".into());
        }
        if limits::saturating_pow(q, g as u64) > limits::limit(COUNTING_WORK) {
            return Some(format!("q^g = {q}^{g} above the counting guard"));
        }
    }
    None
}

fn zeta_check(inst: &FamilyInstance, class: &ClassData) -> Result<Option<ZetaCheck>> {
    let m = class.genus + 1;
    let q = class.q;
    if limits::saturating_pow(q, m as u64) > limits::limit(COUNTING_WORK) {
        return Ok(None);
    }
    Ok(Some(ZetaCheck {
        m,
        predicted: class.implied_count(m),
        direct: classnum::count_points(&inst.d, m as u32)?,
        functional_equation: class.functional_equation_holds(),
        weil_range: class.l1_within_weil_range(),
    }))
}

/// Runs every check on one instance. Errors never escape: they become
/// records with verdict `error` (or `fails` for broken verified relations).
pub fn evaluate(inst: &FamilyInstance, config: &SweepConfig) -> SweepRecord {
    let mut rec = SweepRecord::bare(inst);
    if let Some(reason) = skip_reason(inst, config) {
        rec.skip_reason = Some(reason);
        return rec;
    }
    if let Err(e) = fill(&mut rec, inst, config) {
        rec.verdict = if e.kind() == ErrorKind::Verification {
            Verdict::Fails
        } else {
            Verdict::Error
        };
        rec.error = Some(e.to_string());
        return rec;
    }
    let t1 = rec.theorem1_status.expect("filled");
    let corollary_ok = rec.corollary.as_ref().is_none_or(|c| c.n_divides_h_o && c.h_o_at_least_n);
    let zeta_ok = rec.zeta.as_ref().is_none_or(ZetaCheck::ok);
    rec.verdict = if t1 == Status::Fails || !corollary_ok || !zeta_ok {
        Verdict::Fails
    } else if t1 == Status::Inconclusive {
        Verdict::Inconclusive
    } else {
        Verdict::Holds
    };
    rec
}

fn fill(rec: &mut SweepRecord, inst: &FamilyInstance, config: &SweepConfig) -> Result<()> {
    let cf = CfExpansion::new(&inst.d)?;
    let w = &inst.witness;
    let t1 = theorem1_check(&cf, &inst.spec.z, inst.spec.n, Some((&w.x, &w.y)))?;
    rec.theorem1_status = Some(t1.status());
    rec.theorem1 = Some(t1.record());
    if config.classnum {
        let v = classnum::verify_corollary(inst)?;
        rec.zeta = zeta_check(inst, &v.class)?;
        rec.corollary = Some(CorollaryRecord {
            n: v.n,
            n_divides_h_o: v.n_divides_h_o,
            h_o_at_least_n: v.h_o_at_least_n,
            class: v.class,
        });
    }
    Ok(())
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub total: usize,
    /// Instances skipped because they were already in the output file.
    pub resumed: usize,
    pub verdicts: BTreeMap<Verdict, usize>,
    pub skip_reasons: BTreeMap<String, usize>,
    /// Keys of failing instances.
    pub failures: Vec<String>,
    /// Keys of checked instances whose ERD classification differs from the
    /// series expectation. Reported separately: it does not affect the verdict.
    pub erd_mismatches: Vec<String>,
}

impl SweepSummary {
    fn add(&mut self, rec: &SweepRecord) {
        self.total += 1;
        *self.verdicts.entry(rec.verdict).or_default() += 1;
        if let Some(r) = &rec.skip_reason {
            *self.skip_reasons.entry(r.clone()).or_default() += 1;
        }
        if rec.verdict == Verdict::Fails {
            self.failures.push(rec.key.clone());
        }
        if rec.skip_reason.is_none() && !rec.erd_ok {
            self.erd_mismatches.push(rec.key.clone());
        }
    }

    pub fn count(&self, v: Verdict) -> usize {
        self.verdicts.get(&v).copied().unwrap_or(0)
    }
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("worker pool: {e}")))
}

fn build_and_evaluate(spec: &FamilySpec, config: &SweepConfig) -> Result<SweepRecord> {
    Ok(evaluate(&spec.build()?, config))
}

/// Runs the sweep, streaming records to `out` and calling `on_record` for
/// each one in order. Specs whose key is in `done` are skipped.
pub fn run<W: Write>(
    config: &SweepConfig,
    out: &mut W,
    done: &HashSet<String>,
    mut on_record: impl FnMut(&SweepRecord),
) -> Result<SweepSummary> {
    let specs = families::enumerate_specs(&config.ranges)?;
    let pool = pool(config.workers)?;
    let mut summary = SweepSummary::default();
    let todo: Vec<&FamilySpec> = specs
        .iter()
        .filter(|s| {
            let skip = done.contains(&s.key());
            summary.resumed += skip as usize;
            !skip
        })
        .collect();
    for batch in todo.chunks(BATCH) {
        let records: Vec<Result<SweepRecord>> =
            pool.install(|| batch.par_iter().map(|s| build_and_evaluate(s, config)).collect());
        for rec in records {
            let rec = rec?;
            writeln!(out, "{}", rec.to_line()).map_err(io_error)?;
            summary.add(&rec);
            on_record(&rec);
        }
        out.flush().map_err(io_error)?;
    }
    Ok(summary)
}

fn io_error(e: std::io::Error) -> Error {
    Error::InvalidArgument(format!("i/o: {e}"))
}

/// Keys already present in a JSON Lines file. A torn final line is cut off.
pub fn completed_keys(path: &Path) -> Result<HashSet<String>> {
    let mut keys = HashSet::new();
    if !path.exists() {
        return Ok(keys);
    }
    let text = fs::read_to_string(path).map_err(io_error)?;
    let mut good = 0;
    for line in BufReader::new(text.as_bytes()).lines() {
        let line = line.map_err(io_error)?;
        let Ok(value) = serde_json::from_str::<serde_json::Value>(&line) else {
            break;
        };
        let Some(key) = value.get("key").and_then(|k| k.as_str()) else {
            break;
        };
        if good + line.len() + 1 > text.len() {
            break;
        }
        keys.insert(key.to_string());
        good += line.len() + 1;
    }
    if good < text.len() {
        let file = OpenOptions::new().write(true).open(path).map_err(io_error)?;
        file.set_len(good as u64).map_err(io_error)?;
    }
    Ok(keys)
}

/// Sweep into a file, appending after already completed keys when `resume`.
pub fn run_to_path(config: &SweepConfig, path: &Path, resume: bool) -> Result<SweepSummary> {
    let done = if resume { completed_keys(path)? } else { HashSet::new() };
    let file = OpenOptions::new()
        .create(true)
        .append(resume)
        .write(true)
        .truncate(!resume)
        .open(path)
        .map_err(io_error)?;
    let mut out = std::io::BufWriter::new(file);
    run(config, &mut out, &done, |_| {})
}
