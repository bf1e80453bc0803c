//! Mutual information between binarized features and one-hot class labels.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::FeatureMatrix;

/// Rounds a tf-idf value to 0 or 1: values at or above one half become 1.
pub fn binarize(value: f64) -> bool {
    value >= 0.5
}

/// `sum_{x,y} p(x,y) log2(p(x,y) / (p(x) p(y)))` from a 2x2 count table
/// indexed `[x][y]`, with `0 log 0 = 0`.
fn mi_from_counts(table: [[u64; 2]; 2], n: u64) -> f64 {
    let n = n as f64;
    let px = [
        (table[0][0] + table[0][1]) as f64 / n,
        (table[1][0] + table[1][1]) as f64 / n,
    ];
    let py = [
        (table[0][0] + table[1][0]) as f64 / n,
        (table[0][1] + table[1][1]) as f64 / n,
    ];
    let mut mi = 0.0;
    for x in 0..2 {
        for y in 0..2 {
            if table[x][y] == 0 {
                continue;
            }
            let pxy = table[x][y] as f64 / n;
            mi += pxy * (pxy / (px[x] * py[y])).log2();
        }
    }
    mi
}

/// Per-column, per-class mutual information. Returns the sorted distinct
/// classes and, for every matrix column, one score per class.
pub fn mutual_info_per_class<L: Ord + Clone + Sync>(
    matrix: &FeatureMatrix,
    labels: &[L],
) -> Result<(Vec<L>, Vec<Vec<f64>>)> {
    if labels.len() != matrix.n_rows {
        return Err(Error::LabelCountMismatch {
            labels: labels.len(),
            rows: matrix.n_rows,
        });
    }
    let classes: Vec<L> = labels
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if classes.len() < 2 {
        return Err(Error::SingleClass(classes.len()));
    }
    let class_of: Vec<usize> = labels
        .iter()
        .map(|l| classes.binary_search(l).expect("label is a class"))
        .collect();

    let mut ones: Vec<Vec<usize>> = vec![Vec::new(); matrix.n_cols()];
    for &(r, c, v) in &matrix.entries {
        if binarize(v) {
            ones[c].push(r);
        }
    }
    let class_sizes: Vec<u64> = (0..classes.len())
        .map(|k| class_of.iter().filter(|&&c| c == k).count() as u64)
        .collect();
    let n = matrix.n_rows as u64;

    let scores = ones
        .par_iter()
        .map(|rows| {
            let active = rows.len() as u64;
            (0..classes.len())
                .map(|k| {
                    let in_class_active = rows.iter().filter(|&&r| class_of[r] == k).count() as u64;
                    let table = [
                        [
                            n - active - (class_sizes[k] - in_class_active),
                            class_sizes[k] - in_class_active,
                        ],
                        [active - in_class_active, in_class_active],
                    ];
                    mi_from_counts(table, n)
                })
                .collect()
        })
        .collect();
    Ok((classes, scores))
}

/// Mutual information summed over the one-hot class indicators, per column.
pub fn mutual_info_scores<L: Ord + Clone + Sync>(
    matrix: &FeatureMatrix,
    labels: &[L],
) -> Result<Vec<(String, f64)>> {
    let (_, per_class) = mutual_info_per_class(matrix, labels)?;
    Ok(matrix
        .columns
        .iter()
        .cloned()
        .zip(per_class.into_iter().map(|s| s.into_iter().sum()))
        .collect())
}
