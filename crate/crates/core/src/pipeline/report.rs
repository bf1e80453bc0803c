use std::fmt::Write as _;

use super::FittedModel;
use crate::error::Result;
use crate::matrix::FeatureMatrix;
use crate::selection::mutual_info_per_class;

/// Selected terms as TSV: `term_id`, `heuristic`, `score`, in model order.
pub fn inspect_report(model: &FittedModel) -> String {
    let mut out = String::from("term_id\theuristic\tscore\n");
    for t in &model.terms {
        let _ = writeln!(out, "{}\t{}\t{}", t.id, model.config.heuristic, t.score);
    }
    out
}

/// Per-class mutual information of every column of `matrix`: one row per
/// term with the mean over classes followed by `class:score` pairs sorted by
/// descending score.
pub fn class_report(matrix: &FeatureMatrix, labels: &[String]) -> Result<String> {
    let (classes, scores) = mutual_info_per_class(matrix, labels)?;
    let mut out = String::from("term_id\taverage_mi\tclass_scores\n");
    for (term, per_class) in matrix.columns.iter().zip(scores) {
        let mean = per_class.iter().sum::<f64>() / per_class.len() as f64;
        let mut pairs: Vec<(&String, f64)> = classes.iter().zip(per_class).collect();
        pairs.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(b.0)));
        let _ = write!(out, "{term}\t{mean}");
        for (class, score) in pairs {
            let _ = write!(out, "\t{class}:{score}");
        }
        out.push('\n');
    }
    Ok(out)
}
