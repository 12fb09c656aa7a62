use crate::error::Result;
use crate::permutation::par_fold_sn;
use crate::stats::StatId;

use super::Distribution;

fn add_counts(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

/// Tabulates `stat` over every permutation of `[n]`.
pub fn brute_force(stat: &StatId, n: usize, cap: usize) -> Result<Distribution> {
    let compiled = stat.compile(n);
    let counts = par_fold_sn(
        n,
        cap,
        || vec![0u64; n + 1],
        |acc, sigma| acc[compiled.eval(sigma)] += 1,
        add_counts,
    )?;
    Ok(Distribution::from_counts(n, stat.clone(), &counts))
}

/// Tabulates several statistics in one pass over `S_n`.
pub fn brute_force_many(stats: &[StatId], n: usize, cap: usize) -> Result<Vec<Distribution>> {
    let compiled: Vec<_> = stats.iter().map(|s| s.compile(n)).collect();
    let width = n + 1;
    let flat = par_fold_sn(
        n,
        cap,
        || vec![0u64; width * stats.len()],
        |acc, sigma| {
            for (k, c) in compiled.iter().enumerate() {
                acc[k * width + c.eval(sigma)] += 1;
            }
        },
        add_counts,
    )?;
    Ok(stats
        .iter()
        .enumerate()
        .map(|(k, s)| Distribution::from_counts(n, s.clone(), &flat[k * width..(k + 1) * width]))
        .collect())
}
