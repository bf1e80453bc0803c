//! `taxofeat` command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 data or format error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::builder::{PossibleValuesParser, TypedValueParser};
use clap::{Args, Parser, Subcommand};

use taxofeat_core::io::{read_corpus, split_paragraphs, Corpus};
use taxofeat_core::matrix::{FeatureMatrix, Sidecar};
use taxofeat_core::pipeline::{
    class_report, concat, corpus_graph, fit, inspect_report, transform, FitConfig, FittedModel,
};
use taxofeat_core::selection::{Heuristic, PprConfig};
use taxofeat_core::stats::{components, components_tsv, frequency_table, frequency_tsv};
use taxofeat_core::taxonomy::wndb::convert_wndb;
use taxofeat_core::wsd::{parse_stopwords, WsdConfig};
use taxofeat_core::{Error, Taxonomy};

#[derive(Parser)]
#[command(
    name = "taxofeat",
    version,
    about = "Interpretable taxonomy-based document features"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the corpus taxonomy, select terms and write the model and matrix.
    Fit(FitArgs),
    /// Project documents onto a fitted model's terms.
    Transform(TransformArgs),
    /// Print a model's selected terms, or per-class scores for a labeled corpus.
    Inspect(InspectArgs),
    /// Hypernym frequency table and connected components of a corpus.
    Stats(StatsArgs),
    /// Convert a WordNet database directory to the portable taxonomy format.
    ConvertWndb(ConvertArgs),
    /// Split text on blank lines into one-document-per-line corpus form.
    SplitParagraphs(SplitArgs),
    /// Append semantic matrix columns to an external feature matrix.
    Concat(ConcatArgs),
}

#[derive(Args)]
struct CorpusArgs {
    /// Corpus TSV, one document per line.
    #[arg(long)]
    corpus: PathBuf,
    /// First column of each corpus line is the class label.
    #[arg(long)]
    labeled: bool,
    /// Taxonomy in portable TSV format.
    #[arg(long)]
    taxonomy: PathBuf,
}

#[derive(Args)]
struct MappingArgs {
    /// Context tokens on each side of a word for disambiguation.
    #[arg(long, default_value_t = 3)]
    window: usize,
    /// Keep only hypernyms at most this many hops above each sense.
    #[arg(long)]
    depth_cutoff: Option<u32>,
    /// Drop URLs, @mentions and #hashtags.
    #[arg(long)]
    clean_social: bool,
    /// Stopword file, one word per line (default: built-in English list).
    #[arg(long)]
    stopwords: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

impl MappingArgs {
    fn wsd(&self) -> Result<WsdConfig, Failure> {
        let mut wsd = WsdConfig {
            window: self.window,
            clean_social: self.clean_social,
            ..WsdConfig::default()
        };
        if let Some(path) = &self.stopwords {
            wsd.stopwords = parse_stopwords(&read_text(path)?);
        }
        Ok(wsd)
    }
}

#[derive(Args)]
struct FitArgs {
    #[command(flatten)]
    input: CorpusArgs,
    /// Term selection heuristic.
    #[arg(long, value_parser = heuristic_parser())]
    heuristic: Heuristic,
    /// Number of terms to keep.
    #[arg(short = 'd')]
    d: usize,
    /// Double-normalization constant.
    #[arg(short = 'k', default_value_t = 0.5)]
    k: f64,
    #[command(flatten)]
    mapping: MappingArgs,
    /// Pagerank continuation probability.
    #[arg(long, default_value_t = PprConfig::default().alpha)]
    ppr_alpha: f64,
    /// Pagerank L1 convergence tolerance.
    #[arg(long, default_value_t = PprConfig::default().tol)]
    ppr_tol: f64,
    /// Pagerank iteration limit.
    #[arg(long, default_value_t = PprConfig::default().max_iter)]
    ppr_max_iter: usize,
    /// Output model JSON.
    #[arg(long)]
    model: PathBuf,
    /// Output Matrix Market file; column ids go to `<matrix>.json`.
    #[arg(long)]
    matrix: PathBuf,
}

#[derive(Args)]
struct TransformArgs {
    #[arg(long)]
    model: PathBuf,
    #[command(flatten)]
    input: CorpusArgs,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Output Matrix Market file; column ids go to `<matrix>.json`.
    #[arg(long)]
    matrix: PathBuf,
}

#[derive(Args)]
struct InspectArgs {
    #[arg(long)]
    model: PathBuf,
    /// Labeled corpus for per-class mutual information of the model's terms.
    #[arg(long, requires_all = ["labeled", "taxonomy"])]
    corpus: Option<PathBuf>,
    #[arg(long, requires = "corpus")]
    labeled: bool,
    #[arg(long, requires = "corpus")]
    taxonomy: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Args)]
struct StatsArgs {
    #[command(flatten)]
    input: CorpusArgs,
    #[command(flatten)]
    mapping: MappingArgs,
    /// Write the frequency table here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Also write the connected components table.
    #[arg(long)]
    components: Option<PathBuf>,
}

#[derive(Args)]
struct ConvertArgs {
    /// Directory holding index.* and data.* files.
    #[arg(long)]
    dict: PathBuf,
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
struct SplitArgs {
    #[arg(long)]
    input: PathBuf,
    /// Prefix every paragraph with this label and a tab.
    #[arg(long)]
    label: Option<String>,
    /// Write here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ConcatArgs {
    /// Semantic matrix; its `<path>.json` sidecar must exist.
    #[arg(long)]
    semantic: PathBuf,
    /// External matrix; columns are named from `<path>.json` when present.
    #[arg(long)]
    external: PathBuf,
    #[arg(long)]
    output: PathBuf,
}

fn heuristic_parser() -> impl TypedValueParser<Value = Heuristic> {
    PossibleValuesParser::new(Heuristic::ALL.map(Heuristic::as_str))
        .map(|s| s.parse::<Heuristic>().expect("listed value"))
}

enum Failure {
    Usage(String),
    Data(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::LabelsRequired | Error::InvalidConfig(_) => Failure::Usage(e.to_string()),
            _ => Failure::Data(e.to_string()),
        }
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

fn sidecar_path(matrix: &Path) -> PathBuf {
    let mut s = matrix.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

fn write_matrix(path: &Path, m: &FeatureMatrix) -> Result<(), Failure> {
    write_text(path, &m.to_matrix_market())?;
    write_text(&sidecar_path(path), &m.sidecar_json())
}

fn read_matrix(path: &Path, sidecar_required: bool) -> Result<FeatureMatrix, Failure> {
    let sidecar = sidecar_path(path);
    let columns = if sidecar.exists() {
        Some(Sidecar::from_json(&read_text(&sidecar)?)?.columns)
    } else if sidecar_required {
        return Err(Failure::Data(format!("{} not found", sidecar.display())));
    } else {
        None
    };
    Ok(FeatureMatrix::from_matrix_market(
        &read_text(path)?,
        columns,
    )?)
}

fn load_inputs(input: &CorpusArgs) -> Result<(Corpus, Taxonomy), Failure> {
    let corpus = read_corpus(&input.corpus, input.labeled)?;
    let taxonomy = Taxonomy::load(&input.taxonomy)?;
    Ok((corpus, taxonomy))
}

fn run_fit(a: FitArgs) -> Result<(), Failure> {
    if a.heuristic.needs_labels() && !a.input.labeled {
        return Err(Failure::Usage(format!(
            "heuristic {} needs class labels: pass a --labeled corpus",
            a.heuristic
        )));
    }
    let mut config = FitConfig::new(a.heuristic, a.d);
    config.wsd = a.mapping.wsd()?;
    config.k = a.k;
    config.depth_cutoff = a.mapping.depth_cutoff;
    config.workers = a.mapping.workers;
    config.selection.ppr = PprConfig {
        alpha: a.ppr_alpha,
        tol: a.ppr_tol,
        max_iter: a.ppr_max_iter,
    };
    config.validate()?;

    let (corpus, taxonomy) = load_inputs(&a.input)?;
    let fitted = fit(&corpus.texts, corpus.labels.as_deref(), &taxonomy, &config)?;
    for w in &fitted.warnings {
        eprintln!("warning: {w}");
    }
    write_text(&a.model, &fitted.model.to_json())?;
    write_matrix(&a.matrix, &fitted.matrix)
}

fn run_transform(a: TransformArgs) -> Result<(), Failure> {
    let model = FittedModel::load(&a.model)?;
    let (corpus, taxonomy) = load_inputs(&a.input)?;
    let matrix = transform(&model, &corpus.texts, &taxonomy, a.workers)?;
    write_matrix(&a.matrix, &matrix)
}

fn run_inspect(a: InspectArgs) -> Result<(), Failure> {
    let model = FittedModel::load(&a.model)?;
    let (Some(corpus), Some(taxonomy)) = (a.corpus, a.taxonomy) else {
        print!("{}", inspect_report(&model));
        return Ok(());
    };
    let corpus = read_corpus(&corpus, true)?;
    let taxonomy = Taxonomy::load(&taxonomy)?;
    let matrix = transform(&model, &corpus.texts, &taxonomy, a.workers)?;
    let labels = corpus.labels.expect("labeled corpus");
    print!("{}", class_report(&matrix, &labels)?);
    Ok(())
}

fn run_stats(a: StatsArgs) -> Result<(), Failure> {
    let wsd = a.mapping.wsd()?;
    let (corpus, taxonomy) = load_inputs(&a.input)?;
    let graph = corpus_graph(
        &corpus.texts,
        &taxonomy,
        &wsd,
        a.mapping.depth_cutoff,
        a.mapping.workers,
    )?;
    let table = frequency_tsv(&frequency_table(&graph));
    match &a.output {
        Some(path) => write_text(path, &table)?,
        None => print!("{table}"),
    }
    if let Some(path) = &a.components {
        write_text(path, &components_tsv(&components(&graph)))?;
    }
    Ok(())
}

fn run_convert(a: ConvertArgs) -> Result<(), Failure> {
    let conv = convert_wndb(&a.dict)?;
    for (child, parent) in &conv.dropped_edges {
        eprintln!("dropped cyclic hypernym edge {child} -> {parent}");
    }
    write_text(&a.output, &conv.to_portable())?;
    eprintln!(
        "wrote {} synsets to {}",
        conv.records.len(),
        a.output.display()
    );
    Ok(())
}

fn run_split(a: SplitArgs) -> Result<(), Failure> {
    if let Some(label) = &a.label {
        if label.is_empty() || label.contains(['\t', '\n']) {
            return Err(Failure::Usage(
                "label must be nonempty without tabs or newlines".into(),
            ));
        }
    }
    let mut out = String::new();
    for p in split_paragraphs(&read_text(&a.input)?) {
        if let Some(label) = &a.label {
            out.push_str(label);
            out.push('\t');
        }
        out.push_str(&p);
        out.push('\n');
    }
    match &a.output {
        Some(path) => write_text(path, &out),
        None => {
            print!("{out}");
            Ok(())
        }
    }
}

fn run_concat(a: ConcatArgs) -> Result<(), Failure> {
    let semantic = read_matrix(&a.semantic, true)?;
    let external = read_matrix(&a.external, false)?;
    write_matrix(&a.output, &concat(&semantic, &external)?)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Fit(a) => run_fit(a),
        Command::Transform(a) => run_transform(a),
        Command::Inspect(a) => run_inspect(a),
        Command::Stats(a) => run_stats(a),
        Command::ConvertWndb(a) => run_convert(a),
        Command::SplitParagraphs(a) => run_split(a),
        Command::Concat(a) => run_concat(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
