//! The formalizer refinement loop: validate, feed errors back to an
//! external refiner process, accept its revision, repeat.
//!
//! The refiner is any executable. Each round it receives on stdin the draft
//! formalization, a `---FEEDBACK---` separator line, and the validation
//! feedback; it must write a revised formalization to stdout. This keeps
//! model wrappers in any ecosystem attachable without linking.

use std::io::Write;
use std::process::{Command, Stdio};

use crate::formal_lang::{parse_problem, Formalization};
use crate::validation::{build_sketch, format_feedback};

pub const FEEDBACK_SEPARATOR: &str = "---FEEDBACK---";

#[derive(Debug, Clone)]
pub struct RefinerCmd {
    /// Shell command line, run via `sh -c`.
    pub command: String,
}

#[derive(Debug)]
pub enum RefineOutcome {
    /// A consistent formalization, and the rounds it took (0 = the draft
    /// was already consistent).
    Consistent { formalization: Formalization, rounds: usize },
    /// Still inconsistent after the refinement budget; the problem is
    /// marked unsolvable.
    GiveUp { rounds: usize, last_feedback: String },
}

#[derive(Debug)]
pub enum RefineError {
    RefinerUnavailable(String),
}

impl std::fmt::Display for RefineError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RefineError::RefinerUnavailable(e) => write!(f, "refiner unavailable: {}", e),
        }
    }
}

impl std::error::Error for RefineError {}

/// Validation feedback for a draft, or the parsed formalization when clean.
fn check(draft: &str) -> Result<Formalization, String> {
    match parse_problem(draft) {
        Ok(f) => {
            let (_sketch, report) = build_sketch(&f);
            if report.is_consistent() {
                Ok(f)
            } else {
                Err(format_feedback(&report))
            }
        }
        Err(e) => Err(format!("ERROR: {}\n", e)),
    }
}

/// Up to `max_refinements` rounds of validate -> feedback -> refine.
/// `problem_text`, when present, rides along as comment lines so the
/// refiner sees the original wording.
pub fn refine_loop(
    problem_text: Option<&str>,
    draft: &str,
    refiner: &RefinerCmd,
    max_refinements: usize,
) -> Result<RefineOutcome, RefineError> {
    let mut current = draft.to_string();
    let mut feedback = match check(&current) {
        Ok(f) => return Ok(RefineOutcome::Consistent { formalization: f, rounds: 0 }),
        Err(fb) => fb,
    };
    for round in 1..=max_refinements {
        let mut input = String::new();
        if let Some(text) = problem_text {
            for line in text.lines() {
                input.push_str("# ");
                input.push_str(line);
                input.push('\n');
            }
        }
        input.push_str(&current);
        if !input.ends_with('\n') {
            input.push('\n');
        }
        input.push_str(FEEDBACK_SEPARATOR);
        input.push('\n');
        input.push_str(&feedback);

        match run_refiner(refiner, &input) {
            Ok(revised) => {
                // Malformed output counts as a failed round.
                if parse_problem(&revised).is_ok() {
                    current = revised;
                }
            }
            Err(RunError::Spawn(e)) => return Err(RefineError::RefinerUnavailable(e)),
            Err(RunError::Malformed) => {}
        }
        match check(&current) {
            Ok(f) => return Ok(RefineOutcome::Consistent { formalization: f, rounds: round }),
            Err(fb) => feedback = fb,
        }
    }
    Ok(RefineOutcome::GiveUp { rounds: max_refinements, last_feedback: feedback })
}

enum RunError {
    Spawn(String),
    Malformed,
}

fn run_refiner(refiner: &RefinerCmd, input: &str) -> Result<String, RunError> {
    let mut child = Command::new("sh")
        .arg("-c")
        .arg(&refiner.command)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .map_err(|e| RunError::Spawn(e.to_string()))?;
    child
        .stdin
        .as_mut()
        .expect("piped stdin")
        .write_all(input.as_bytes())
        .map_err(|e| RunError::Spawn(e.to_string()))?;
    let out = child.wait_with_output().map_err(|e| RunError::Spawn(e.to_string()))?;
    if !out.status.success() {
        return Err(RunError::Malformed);
    }
    String::from_utf8(out.stdout).map_err(|_| RunError::Malformed)
}
