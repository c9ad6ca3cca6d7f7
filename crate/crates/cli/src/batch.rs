//! Line-oriented batch processing with a worker pool.

use rayon::prelude::*;

use crate::report::{build_report, error_record, ReportOptions};

#[derive(Clone, Debug, PartialEq)]
pub struct BatchOutcome {
    /// One JSON document per processed line, in input order.
    pub records: Vec<String>,
    pub failures: usize,
}

/// Whether a line carries no input: blank or a `#` comment.
fn skipped(line: &str) -> bool {
    let t = line.trim();
    t.is_empty() || t.starts_with('#')
}

fn process(line_no: usize, line: &str, opts: &ReportOptions) -> (String, bool) {
    match build_report(line, opts) {
        Ok(mut rec) => {
            rec.line = Some(line_no);
            (serde_json::to_string(&rec).expect("serializable"), true)
        }
        Err(e) => {
            let rec = error_record(line.trim(), Some(line_no), &e);
            (serde_json::to_string(&rec).expect("serializable"), false)
        }
    }
}

/// Reports for every non-blank line of `text` using `jobs` worker threads.
/// The output is independent of `jobs`.
pub fn run_batch(text: &str, opts: &ReportOptions, jobs: usize) -> BatchOutcome {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !skipped(l))
        .map(|(i, l)| (i + 1, l))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    // An indexed parallel collect keeps input order.
    let results: Vec<(String, bool)> = pool.install(|| {
        lines
            .par_iter()
            .map(|&(n, l)| process(n, l, opts))
            .collect()
    });
    let failures = results.iter().filter(|(_, ok)| !ok).count();
    BatchOutcome {
        records: results.into_iter().map(|(r, _)| r).collect(),
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_input() {
        let out = run_batch("", &ReportOptions::default(), 2);
        assert_eq!(out, BatchOutcome { records: vec![], failures: 0 });
    }

    #[test]
    fn malformed_line_is_embedded() {
        let out = run_batch("x^6+y^6\n2x^6\n\nx^5*y\n", &ReportOptions::default(), 3);
        assert_eq!(out.records.len(), 3);
        assert_eq!(out.failures, 1);
        assert!(out.records[1].contains("\"error\""));
        assert!(out.records[1].contains("\"line\":2"));
        assert!(out.records[2].contains("\"line\":4"));
    }
}
