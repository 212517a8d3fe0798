use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Budget, Result};
use crate::raag::{Letter, NormalForm, Raag};

pub const CLF_HEADER: [&str; 7] =
    ["trial", "|a|", "|b|", "min_conj_len", "pipeline_conj_len", "big_maximal", "seed"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClfConfig {
    pub samples: usize,
    pub max_core_len: usize,
    pub max_twist_len: usize,
    pub seed: u64,
    pub budget_elems: usize,
}

/// One trial: `a` a random cyclically reduced element, `b = t a t^-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClfRow {
    pub trial: usize,
    pub a: NormalForm,
    pub b: NormalForm,
    pub twist: NormalForm,
    pub min_conj: NormalForm,
    pub pipeline_conj: NormalForm,
    pub big_maximal: bool,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct ClfTable {
    pub config: ClfConfig,
    pub rows: Vec<ClfRow>,
    /// Trials dropped because a search hit the budget.
    pub skipped: Vec<usize>,
}

/// Uniform letters, redrawing any letter that would cancel the previous one.
pub fn random_reduced_word(group: &Raag, len: usize, rng: &mut impl Rng) -> Vec<Letter> {
    let alphabet = group.alphabet();
    let mut w: Vec<Letter> = Vec::with_capacity(len);
    while w.len() < len {
        let x = alphabet[rng.gen_range(0..alphabet.len())];
        if w.last() != Some(&x.inverse()) {
            w.push(x);
        }
    }
    w
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

impl Raag {
    fn clf_trial(&self, cfg: &ClfConfig, trial: usize, budget: &Budget) -> Result<ClfRow> {
        let mut rng = trial_rng(cfg.seed, trial);
        let a = loop {
            let len = rng.gen_range(1..=cfg.max_core_len.max(1));
            let (_, core) = self.cyclic_reduce(&random_reduced_word(self, len, &mut rng));
            if !core.is_identity() {
                break core;
            }
        };
        let tlen = rng.gen_range(0..=cfg.max_twist_len);
        let twist = self.normal_form(&random_reduced_word(self, tlen, &mut rng));
        let b = self.conjugate(&twist, &a);
        let g0 = self
            .pipeline_conjugator(&a, &b, budget)?
            .expect("b is built as a conjugate of a");
        let pipeline_conj = self.shorten_conjugator(&a, &b, &g0, budget)?;
        let min_conj = self
            .minimal_conjugator(&a, &b, budget)?
            .expect("b is built as a conjugate of a");
        let big_maximal = self.big(&b).maximal;
        Ok(ClfRow { trial, a, b, twist, min_conj, pipeline_conj, big_maximal, seed: cfg.seed })
    }

    /// Run the conjugator length experiment. Trials are independent and run
    /// in parallel; rows come back in trial order.
    pub fn clf_experiment(&self, cfg: &ClfConfig) -> ClfTable {
        let budget = Budget::new(cfg.budget_elems);
        let results: Vec<(usize, Result<ClfRow>)> = (0..cfg.samples)
            .into_par_iter()
            .map(|t| (t, self.clf_trial(cfg, t, &budget)))
            .collect();
        let mut rows = Vec::new();
        let mut skipped = Vec::new();
        for (t, r) in results {
            match r {
                Ok(row) => rows.push(row),
                Err(_) => skipped.push(t),
            }
        }
        ClfTable { config: cfg.clone(), rows, skipped }
    }
}

impl ClfTable {
    /// CSV with `# key=value` metadata lines ahead of the header.
    pub fn to_csv(&self, meta: &[(String, String)]) -> String {
        let mut out = String::new();
        for (k, v) in meta {
            out.push_str(&format!("# {k}={v}\n"));
        }
        let c = &self.config;
        out.push_str(&format!(
            "# samples={} max_core_len={} max_twist_len={} seed={} budget_elems={}\n",
            c.samples, c.max_core_len, c.max_twist_len, c.seed, c.budget_elems
        ));
        out.push_str("# word_model=uniform letters without immediate cancellation, then cyclic reduction\n");
        let skipped: Vec<String> = self.skipped.iter().map(usize::to_string).collect();
        out.push_str(&format!("# skipped={}\n", skipped.join(",")));
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CLF_HEADER).expect("in-memory write");
        for r in &self.rows {
            w.write_record([
                r.trial.to_string(),
                r.a.len().to_string(),
                r.b.len().to_string(),
                r.min_conj.len().to_string(),
                r.pipeline_conj.len().to_string(),
                (r.big_maximal as u8).to_string(),
                r.seed.to_string(),
            ])
            .expect("in-memory write");
        }
        out.push_str(&String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii"));
        out
    }
}

/// Smallest `k` such that every row satisfies `|g| <= k (|a| + |b|) + c` with
/// `c <= c_cap`, and the least such `c`.
#[derive(Copy, Clone, Debug, PartialEq, Serialize)]
pub struct LinearFit {
    pub k: f64,
    pub c: f64,
}

pub fn fit_linear_bound(points: &[(usize, usize)], c_cap: f64) -> LinearFit {
    // points are (|a| + |b|, |g|)
    let k = points
        .iter()
        .filter(|&&(s, _)| s > 0)
        .map(|&(s, g)| (g as f64 - c_cap) / s as f64)
        .fold(0.0f64, f64::max);
    let c = points
        .iter()
        .map(|&(s, g)| g as f64 - k * s as f64)
        .fold(0.0f64, f64::max);
    LinearFit { k, c }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BucketStat {
    pub min_len: usize,
    pub max_len: usize,
    pub count: usize,
    pub mean_ratio: f64,
}

/// Split points `(|a| + |b|, |g|)` into `n` buckets of near-equal size by
/// total length and report the mean of `|g| / (|a| + |b| + 1)` in each.
/// Points with equal total length always share a bucket.
pub fn bucket_ratios(points: &[(usize, usize)], n: usize) -> Vec<BucketStat> {
    let mut sorted = points.to_vec();
    sorted.sort();
    let mut out = Vec::new();
    let mut start = 0;
    for b in 0..n {
        if start >= sorted.len() {
            break;
        }
        let mut end = ((b + 1) * sorted.len() / n).max(start + 1);
        while end < sorted.len() && sorted[end].0 == sorted[end - 1].0 {
            end += 1;
        }
        let slice = &sorted[start..end];
        let mean = slice.iter().map(|&(s, g)| g as f64 / (s + 1) as f64).sum::<f64>()
            / slice.len() as f64;
        out.push(BucketStat {
            min_len: slice[0].0,
            max_len: slice[slice.len() - 1].0,
            count: slice.len(),
            mean_ratio: mean,
        });
        start = end;
    }
    out
}
