//! Monte Carlo trials and parameter sweeps.
//!
//! A trial generates a puzzle, shuffles it into a bag, checks the typicality
//! properties against the planted assembly, runs the solver on the bag alone
//! and compares the result with the planting. Trial `t` of sweep cell `c`
//! uses the seed `RngSeed(master).mix(c, t)`; inside a trial the puzzle is
//! drawn from that seed and the shuffle from `seed.mix(1, 0)`.

use std::io::Write;
use std::time::Instant;

use jigsaw_core::assembler::{check_parameters, solve_from_candidates, StuckReason};
use jigsaw_core::typical::{check_typical_with, default_c_prime};
use jigsaw_core::window::{build_indexes, candidate_neighborhoods_with, WindowError};
use jigsaw_core::{disassemble, generate, RngSeed, SolveOutcome};
use rayon::prelude::*;

pub const CSV_HEADER: [&str; 10] =
    ["n", "q", "k", "seed", "typical", "solved", "planted_match", "multi_candidate_pieces", "windows_explored", "runtime_ms"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialRecord {
    pub n: usize,
    pub q: u32,
    pub k: usize,
    pub seed: u64,
    pub typical: bool,
    pub solved: bool,
    pub planted_match: bool,
    pub multi_candidate_pieces: usize,
    pub windows_explored: u64,
    pub runtime_ms: u64,
}

impl TrialRecord {
    pub fn csv_fields(&self) -> [String; 10] {
        [
            self.n.to_string(),
            self.q.to_string(),
            self.k.to_string(),
            self.seed.to_string(),
            self.typical.to_string(),
            self.solved.to_string(),
            self.planted_match.to_string(),
            self.multi_candidate_pieces.to_string(),
            self.windows_explored.to_string(),
            self.runtime_ms.to_string(),
        ]
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ExperimentError {
    #[error("invalid sweep configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// One puzzle end to end. Failures are recorded, never raised.
pub fn run_trial(n: usize, q: u32, k: usize, seed: u64, budget: u64) -> TrialRecord {
    let start = Instant::now();
    let puzzle = generate(n, q, RngSeed(seed)).expect("validated parameters");
    let (bag, planted) = disassemble(&puzzle, RngSeed(seed).mix(1, 0));
    let idx = build_indexes(&bag);
    let cands = candidate_neighborhoods_with(&bag, &idx, k as i32, budget);
    let (typical, multi, explored) = match &cands {
        Ok(c) => {
            let report = check_typical_with(&puzzle, &bag, &planted, c, k, default_c_prime()).expect("validated radius");
            (report.typical(), c.multiple_count(), c.stats.explored)
        }
        Err(WindowError::BudgetExceeded { .. }) => (false, 0, budget),
        Err(e) => panic!("window enumeration failed on validated input: {e}"),
    };
    let report = solve_from_candidates(&bag, &idx, cands, k).expect("validated parameters");
    if typical {
        // no shell cell can have two matching pieces on a typical puzzle
        assert!(report.attempts.iter().all(|(_, s)| s.is_none_or(|s| s.reason != StuckReason::AmbiguousMatch)));
    }
    let solved = report.outcome.is_solved();
    let planted_match = matches!(&report.outcome, SolveOutcome::Solved(a) if *a == planted);
    TrialRecord {
        n,
        q,
        k,
        seed,
        typical,
        solved,
        planted_match,
        multi_candidate_pieces: multi,
        windows_explored: explored,
        runtime_ms: start.elapsed().as_millis() as u64,
    }
}

/// `⌈n^α⌉`, treating values within `1e-9` relative of an integer as that
/// integer so that e.g. `30^2` is exactly 900.
pub fn ceil_pow(n: usize, alpha: f64) -> u32 {
    let x = (n as f64).powf(alpha);
    let r = x.round();
    if (x - r).abs() <= 1e-9 * r.max(1.0) {
        r as u32
    } else {
        x.ceil() as u32
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum QRule {
    Explicit(Vec<u32>),
    /// `q = ⌈n^α⌉` for each exponent.
    Exponents(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub ns: Vec<usize>,
    pub q_rule: QRule,
    pub k: usize,
    pub trials: usize,
    pub master_seed: u64,
    pub budget: u64,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), ExperimentError> {
        let bad = |m: String| Err(ExperimentError::Config(m));
        if self.ns.is_empty() || self.trials == 0 || self.budget == 0 {
            return bad("need at least one n, one trial and a positive budget".into());
        }
        match &self.q_rule {
            QRule::Explicit(qs) if qs.is_empty() || qs.contains(&0) => return bad("q values must be positive".into()),
            QRule::Exponents(a) if a.is_empty() || a.iter().any(|&x| !(x > 0.0) || !x.is_finite()) => {
                return bad("exponents must be positive".into())
            }
            _ => {}
        }
        for &n in &self.ns {
            if check_parameters(n, self.k).is_err() {
                return bad(format!("n = {n}, k = {} violates 1 <= k and 2(n-2k)^2 >= n^2", self.k));
            }
        }
        Ok(())
    }

    /// `(n, q)` per cell: n outer, q rule entries inner.
    pub fn cells(&self) -> Vec<(usize, u32)> {
        let mut cells = Vec::new();
        for &n in &self.ns {
            match &self.q_rule {
                QRule::Explicit(qs) => cells.extend(qs.iter().map(|&q| (n, q))),
                QRule::Exponents(alphas) => cells.extend(alphas.iter().map(|&a| (n, ceil_pow(n, a)))),
            }
        }
        cells
    }

    pub fn trial_seed(&self, cell: usize, trial: usize) -> u64 {
        RngSeed(self.master_seed).mix(cell as u64, trial as u64).0
    }
}

/// All trials of the sweep, in (cell, trial) order. Trials run in parallel.
pub fn sweep_records(config: &SweepConfig) -> Result<Vec<TrialRecord>, ExperimentError> {
    config.validate()?;
    let jobs: Vec<(usize, u32, u64)> = config
        .cells()
        .into_iter()
        .enumerate()
        .flat_map(|(c, (n, q))| (0..config.trials).map(move |t| (n, q, config.trial_seed(c, t))))
        .collect();
    Ok(jobs.into_par_iter().map(|(n, q, seed)| run_trial(n, q, config.k, seed, config.budget)).collect())
}

pub fn write_csv<W: Write>(records: &[TrialRecord], out: W) -> Result<(), ExperimentError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record(r.csv_fields())?;
    }
    w.flush()?;
    Ok(())
}

/// Runs the sweep and writes the CSV to `out`.
pub fn sweep<W: Write>(config: &SweepConfig, out: W) -> Result<Vec<TrialRecord>, ExperimentError> {
    let records = sweep_records(config)?;
    write_csv(&records, out)?;
    Ok(records)
}

/// Planted-match rate per cell, in cell order.
pub fn success_rates(config: &SweepConfig, records: &[TrialRecord]) -> Vec<((usize, u32), f64)> {
    config
        .cells()
        .into_iter()
        .zip(records.chunks(config.trials))
        .map(|(cell, rs)| (cell, rs.iter().filter(|r| r.planted_match).count() as f64 / rs.len() as f64))
        .collect()
}
