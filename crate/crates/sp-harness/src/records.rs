//! Output files: JSON-lines per-trial records, CSV summaries, and a
//! `run.json` with the config echo and pass flags.
//!
//! Records are computed in deterministic index order and appended chunk by
//! chunk with a flush after every chunk, so a crashed run leaves a valid
//! JSONL prefix. On rerun the existing prefix is parsed and only the missing
//! tail is computed, which both resumes cheaply and reproduces the exact
//! same bytes as an uninterrupted run. Timing is reported on stderr only;
//! the files contain nothing nondeterministic.

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::Serialize;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

pub struct OutDir {
    root: PathBuf,
}

impl OutDir {
    pub fn create(path: impl Into<PathBuf>) -> Result<Self> {
        let root = path.into();
        fs::create_dir_all(&root)
            .with_context(|| format!("creating output directory {}", root.display()))?;
        Ok(OutDir { root })
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.root.join(name)
    }

    pub fn write_json<T: Serialize>(&self, name: &str, value: &T) -> Result<()> {
        let text = serde_json::to_string_pretty(value)?;
        fs::write(self.path(name), text + "\n")?;
        Ok(())
    }

    /// Write a CSV summary with the given header.
    pub fn write_csv<T: Serialize>(&self, name: &str, rows: &[T]) -> Result<()> {
        let mut w = csv::Writer::from_path(self.path(name))?;
        for row in rows {
            w.serialize(row)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Parse an existing JSONL file, tolerating a trailing partial line from a
/// crashed writer (the file is truncated back to its last complete record).
pub fn load_jsonl<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    if !path.exists() {
        return Ok(Vec::new());
    }
    let reader = BufReader::new(File::open(path)?);
    let mut records = Vec::new();
    let mut valid_bytes: u64 = 0;
    for line in reader.split(b'\n') {
        let line = line?;
        match serde_json::from_slice::<T>(&line) {
            Ok(r) => {
                records.push(r);
                valid_bytes += line.len() as u64 + 1;
            }
            Err(_) => break,
        }
    }
    let actual = fs::metadata(path)?.len();
    if valid_bytes < actual {
        let f = OpenOptions::new().write(true).open(path)?;
        f.set_len(valid_bytes)?;
    }
    Ok(records)
}

const CHUNK: usize = 256;

/// Compute `total` records with `compute(index)`, in parallel within
/// sequential chunks, appending each chunk to `path` before starting the
/// next. Records already present in the file are reused instead of being
/// recomputed.
pub fn run_trials_chunked<R, F>(path: &Path, total: u64, compute: F) -> Result<Vec<R>>
where
    R: Serialize + DeserializeOwned + Send,
    F: Fn(u64) -> R + Sync,
{
    let mut records: Vec<R> = load_jsonl(path)?;
    if records.len() as u64 > total {
        bail!(
            "{} holds {} records but the run needs only {total}; refusing to mix runs",
            path.display(),
            records.len()
        );
    }
    let start = records.len() as u64;
    let file = OpenOptions::new().create(true).append(true).open(path)?;
    let mut sink = BufWriter::new(file);
    let mut next = start;
    while next < total {
        let end = (next + CHUNK as u64).min(total);
        let mut batch: Vec<R> = (next..end).into_par_iter().map(&compute).collect();
        for r in &batch {
            serde_json::to_writer(&mut sink, r)?;
            sink.write_all(b"\n")?;
        }
        sink.flush()?;
        records.append(&mut batch);
        next = end;
    }
    Ok(records)
}

/// Least-squares slope of `y` against `x`, plus the maximum absolute
/// residual of the fit.
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    assert_eq!(xs.len(), ys.len());
    assert!(xs.len() >= 2);
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let max_resid = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - (slope * x + intercept)).abs())
        .fold(0.0, f64::max);
    (slope, max_resid)
}

/// Three-sigma binomial band around a rate estimated from `trials` draws.
pub fn three_sigma(rate: f64, trials: u64) -> f64 {
    3.0 * (rate * (1.0 - rate) / trials as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde::Deserialize;

    #[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
    struct Rec {
        i: u64,
        v: f64,
    }

    #[test]
    fn chunked_runs_resume_to_identical_bytes() {
        let dir = tempfile::tempdir().unwrap();
        let full = dir.path().join("full.jsonl");
        let partial = dir.path().join("partial.jsonl");
        let compute = |i: u64| Rec {
            i,
            v: (i as f64).sqrt(),
        };
        run_trials_chunked::<Rec, _>(&full, 600, compute).unwrap();
        // simulate a crash: write only a prefix, plus a torn final line
        let all = std::fs::read_to_string(&full).unwrap();
        let cut = all.match_indices('\n').nth(299).unwrap().0 + 1;
        std::fs::write(&partial, format!("{}{{\"i\":300,\"v", &all[..cut])).unwrap();
        let resumed = run_trials_chunked::<Rec, _>(&partial, 600, compute).unwrap();
        assert_eq!(resumed.len(), 600);
        assert_eq!(std::fs::read(&full).unwrap(), std::fs::read(&partial).unwrap());
    }

    #[test]
    fn slope_fit_recovers_known_line() {
        let xs: Vec<f64> = (1..=5).map(|i| i as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 2.0 * x + 1.0).collect();
        let (slope, resid) = fit_slope(&xs, &ys);
        assert!((slope - 2.0).abs() < 1e-12);
        assert!(resid < 1e-12);
    }
}
