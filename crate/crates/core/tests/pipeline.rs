mod common;

use taxofeat_core::pipeline::{fit, inspect_report, transform, FitConfig, FittedModel};
use taxofeat_core::selection::Heuristic;
use taxofeat_core::{Error, Taxonomy};

const LN2: f64 = std::f64::consts::LN_2;

fn labels(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

#[test]
fn toy_rarest_single_column() {
    let t = common::animals();
    let fitted = fit(
        &common::TOY_DOCS,
        None,
        &t,
        &FitConfig::new(Heuristic::Rarest, 1),
    )
    .unwrap();
    assert_eq!(fitted.model.term_ids(), vec!["cat.n.01"]);
    assert_eq!(fitted.model.terms[0].n_t, 1);
    assert_eq!(fitted.model.terms[0].score, -1.0);
    let m = &fitted.matrix;
    assert_eq!(
        (m.n_rows, m.columns.clone()),
        (2, vec!["cat.n.01".to_string()])
    );
    assert_eq!(m.get(0, 0), 0.0);
    assert!((m.get(1, 0) - 0.75 * LN2).abs() < 1e-12);
    assert!(fitted.warnings.is_empty());
}

#[test]
fn unseen_document_uses_frozen_idf() {
    let t = common::animals();
    let fitted = fit(
        &common::TOY_DOCS,
        None,
        &t,
        &FitConfig::new(Heuristic::Rarest, 4),
    )
    .unwrap();
    // cat f = 2, f_max = 3 (animal, entity), n_t = 1 of N = 2
    let m = transform(&fitted.model, &["cat cat dog", "rock"], &t, 1).unwrap();
    assert_eq!(m.n_rows, 2);
    let cat = m.columns.iter().position(|c| c == "cat.n.01").unwrap();
    assert!((m.get(0, cat) - (0.5 + 0.5 * 2.0 / 3.0) * LN2).abs() < 1e-12);
    assert_eq!(m.nnz(), 1);
}

#[test]
fn large_d_keeps_every_term() {
    let t = common::animals();
    let fitted = fit(
        &common::TOY_DOCS,
        None,
        &t,
        &FitConfig::new(Heuristic::Closeness, 50),
    )
    .unwrap();
    assert_eq!(fitted.model.terms.len(), 4);
    assert_eq!(fitted.matrix.columns, fitted.model.term_ids());
}

#[test]
fn unmappable_corpus_gives_empty_model() {
    let t = common::animals();
    let fitted = fit(
        &["zebra", "quagga"],
        None,
        &t,
        &FitConfig::new(Heuristic::Rarest, 3),
    )
    .unwrap();
    assert!(fitted.model.terms.is_empty());
    assert_eq!(fitted.matrix.n_cols(), 0);
    assert_eq!(fitted.warnings.len(), 1);
    assert!(matches!(
        transform(&fitted.model, &["dog"], &t, 1),
        Err(Error::EmptyModel)
    ));
}

#[test]
fn fit_precondition_errors() {
    let t = common::animals();
    let empty: [&str; 0] = [];
    assert!(matches!(
        fit(&empty, None, &t, &FitConfig::new(Heuristic::Rarest, 1)),
        Err(Error::EmptyCorpus)
    ));
    assert!(matches!(
        fit(
            &common::TOY_DOCS,
            None,
            &t,
            &FitConfig::new(Heuristic::MutualInfo, 1)
        ),
        Err(Error::LabelsRequired)
    ));
    assert!(matches!(
        fit(
            &common::TOY_DOCS,
            Some(&labels(&["a"])),
            &t,
            &FitConfig::new(Heuristic::MutualInfo, 1)
        ),
        Err(Error::LabelCountMismatch { labels: 1, rows: 2 })
    ));
    let mut config = FitConfig::new(Heuristic::Rarest, 1);
    config.workers = 0;
    assert!(matches!(
        fit(&common::TOY_DOCS, None, &t, &config),
        Err(Error::InvalidConfig(_))
    ));
}

#[test]
fn mutual_info_fit_on_toy() {
    let t = common::animals();
    let fitted = fit(
        &common::TOY_DOCS,
        Some(&labels(&["x", "y"])),
        &t,
        &FitConfig::new(Heuristic::MutualInfo, 2),
    )
    .unwrap();
    // cat is the only nonzero column and separates the two classes.
    assert_eq!(fitted.model.terms[0].id, "cat.n.01");
    assert!((fitted.model.terms[0].score - 2.0).abs() < 1e-12);
}

#[test]
fn transform_rejects_other_taxonomy() {
    let t = common::animals();
    let fitted = fit(
        &common::TOY_DOCS,
        None,
        &t,
        &FitConfig::new(Heuristic::Rarest, 2),
    )
    .unwrap();
    let other = Taxonomy::parse_portable(&format!(
        "{}rock.n.01\tn\trock\tstone\t\t\n",
        common::ANIMALS
    ))
    .unwrap();
    assert!(matches!(
        transform(&fitted.model, &["dog"], &other, 1),
        Err(Error::FingerprintMismatch { .. })
    ));
}

#[test]
fn model_save_load_round_trip() {
    let t = common::animals();
    let mut config = FitConfig::new(Heuristic::Pagerank, 3);
    config.depth_cutoff = Some(2);
    config.wsd.clean_social = true;
    let fitted = fit(&common::TOY_DOCS, None, &t, &config).unwrap();
    let dir = std::env::temp_dir().join(format!("taxofeat-model-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("model.json");
    fitted.model.save(&path).unwrap();
    let loaded = FittedModel::load(&path).unwrap();
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(loaded, fitted.model);
    assert_eq!(loaded.config.depth_cutoff, Some(2));
    assert_eq!(
        transform(&loaded, &common::TOY_DOCS, &t, 1).unwrap(),
        fitted.matrix
    );
}

#[test]
fn inspect_lists_terms() {
    let t = common::animals();
    let fitted = fit(
        &common::TOY_DOCS,
        None,
        &t,
        &FitConfig::new(Heuristic::Rarest, 2),
    )
    .unwrap();
    let report = inspect_report(&fitted.model);
    let lines: Vec<&str> = report.lines().collect();
    assert_eq!(lines[0], "term_id\theuristic\tscore");
    assert_eq!(lines[1], "cat.n.01\trarest\t-1");
    assert_eq!(lines.len(), 3);
}

#[test]
fn synthetic_fit_transform_consistency() {
    for seed in 0..6u64 {
        let mut rng = common::rng(seed);
        let (text, vocab) = common::synthetic_taxonomy(&mut rng, 40);
        let t = Taxonomy::parse_portable(&text).unwrap();
        let (texts, labs) = common::synthetic_corpus(&mut rng, &vocab, 25, 3);
        for h in Heuristic::ALL {
            let mut config = FitConfig::new(h, 8);
            config.workers = 2;
            let fitted = fit(&texts, Some(&labs), &t, &config).unwrap();
            assert!(fitted.model.terms.len() <= 8);
            assert_eq!(fitted.matrix.columns, fitted.model.term_ids());
            let again = transform(&fitted.model, &texts, &t, 3).unwrap();
            assert_eq!(
                again.to_matrix_market(),
                fitted.matrix.to_matrix_market(),
                "seed {seed} heuristic {h}"
            );
            let reloaded = FittedModel::from_json(&fitted.model.to_json()).unwrap();
            assert_eq!(reloaded, fitted.model);
        }
    }
}
