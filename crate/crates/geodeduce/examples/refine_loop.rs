//! Drive the refinement loop with a scripted refiner subprocess.
//!
//! The refiner contract: each round the process reads the draft
//! formalization, a `---FEEDBACK---` line, then the validation feedback on
//! stdin, and prints a revised formalization to stdout.

use geodeduce::harness::{refine_loop, RefineOutcome, RefinerCmd};

fn main() {
    let draft = "\
PointLiesOnLine(B,Line(A,C))
Triangle(A,B,C)
Find(MeasureOf(Angle(A,B,C)))
";
    // This stand-in "model" just deletes the line the feedback complains
    // about; a real deployment would wrap an LLM with the same contract.
    let fixer = RefinerCmd {
        command: "sed '/---FEEDBACK---/,$d' | grep -v '^#' | grep -v PointLiesOnLine".into(),
    };
    match refine_loop(Some("triangle with a bad collinearity"), draft, &fixer, 5).unwrap() {
        RefineOutcome::Consistent { formalization, rounds } => {
            println!("consistent after {} round(s); {} facts", rounds, formalization.facts.len());
        }
        RefineOutcome::GiveUp { rounds, last_feedback } => {
            println!("gave up after {} rounds:\n{}", rounds, last_feedback);
        }
    }

    let echo = RefinerCmd { command: "sed '/---FEEDBACK---/,$d' | grep -v '^#'".into() };
    match refine_loop(None, draft, &echo, 3).unwrap() {
        RefineOutcome::GiveUp { rounds, .. } => {
            println!("echo refiner gave up after {} rounds, as it must", rounds);
        }
        RefineOutcome::Consistent { .. } => unreachable!("echoing cannot fix anything"),
    }
}
