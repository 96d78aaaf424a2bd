//! Score the bundled corpus in both grading modes.

use geodeduce::harness::{load_corpus, score_corpus, Mode};
use geodeduce::solver::SolverConfig;

fn main() {
    let records = load_corpus(std::path::Path::new("corpus")).expect("run from the repo root");
    let cfg = SolverConfig::default();
    for mode in [Mode::Completion, Mode::Choice] {
        let summary = score_corpus(&records, mode.clone(), &cfg, None, 1, 4);
        println!(
            "{:?}: accuracy {:.4} ({}/{}), ARR {:.4}",
            mode, summary.accuracy, summary.correct, summary.total, summary.arr
        );
    }
}
