//! Browser bindings. Every entry point takes and returns strings so the
//! page needs no glue beyond `JSON.parse`; the same functions run natively
//! in tests.

use panachee::certificate::{verify_certificate, Certificate};
use panachee::dsl::{parse_problem, DslError, ProblemSource};
use panachee::linalg::Ring;
use panachee::panachee::{complete_with, obstruction, torsor_with, PanacheeProblem};
use panachee::report::{CompletionReport, ObstructionReport, Report, TorsorReport};
use panachee::sample::{prime_square_problem, random_problem};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Serialize)]
struct Failure {
    error: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    col: Option<usize>,
}

fn failure(error: impl ToString) -> String {
    serde_json::to_string(&Failure {
        error: error.to_string(),
        line: None,
        col: None,
    })
    .expect("serializable")
}

fn dsl_failure(e: &DslError) -> String {
    let pos = e.pos();
    serde_json::to_string(&Failure {
        error: e.to_string(),
        line: Some(pos.line),
        col: Some(pos.col),
    })
    .expect("serializable")
}

#[derive(Serialize)]
struct Analysis {
    report: Report,
    /// Certificate JSON, present when a completion exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<String>,
    verified: Option<bool>,
}

fn analyse_problem(src: &ProblemSource) -> Result<Analysis, String> {
    let problem = src.to_problem();
    let an = obstruction(problem).map_err(|e| e.to_string())?;
    let tor = torsor_with(problem, &an.les, &an.y).map_err(|e| e.to_string())?;
    let mut report = Report::new(&src.ring);
    report.obstruction = Some(ObstructionReport::new(&an));
    report.torsor = Some(TorsorReport::new(&tor));
    let mut out = Analysis {
        report,
        certificate: None,
        verified: None,
    };
    if let Some(c) = complete_with(problem, &an).map_err(|e| e.to_string())? {
        let cert = Certificate::new(
            problem,
            &c,
            ObstructionReport::new(&an),
            Some(TorsorReport::new(&tor)),
        );
        out.verified = Some(verify_certificate(&cert).passed());
        out.certificate = Some(cert.to_json());
        out.report.completion = Some(CompletionReport::new(&c));
    }
    Ok(out)
}

/// Parses a problem, computes the obstruction and torsor, and completes it
/// when possible. Returns the analysis or `{error, line, col}`.
#[wasm_bindgen]
pub fn analyse(text: &str) -> String {
    match parse_problem(text) {
        Err(e) => dsl_failure(&e),
        Ok(src) => match analyse_problem(&src) {
            Ok(a) => serde_json::to_string(&a).expect("serializable"),
            Err(e) => failure(e),
        },
    }
}

fn source_text(p: &PanacheeProblem) -> String {
    ProblemSource::from_problem(p).to_string()
}

/// Problem text over `Z/4` with every corner `Z/2`. Bits 0 to 3 make the
/// top, left, right and bottom sequences nonsplit.
#[wasm_bindgen]
pub fn grid_problem(bits: u8) -> String {
    let nonsplit = [0, 1, 2, 3].map(|k| bits & (1 << k) != 0);
    source_text(&prime_square_problem(2, nonsplit))
}

/// A seeded random problem over `Z/modulus` (0 for the integers) with corner
/// orders at most 8.
#[wasm_bindgen]
pub fn random_problem_text(modulus: u32, seed: u32) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(u64::from(seed));
    match random_problem(&mut rng, &Ring::modulo(u64::from(modulus)), 8) {
        Ok(p) => source_text(&p),
        Err(e) => format!("# {e}\n"),
    }
}

/// Runs the independent checks on a certificate; returns the check list.
#[wasm_bindgen]
pub fn verify(certificate: &str) -> String {
    match Certificate::from_json(certificate) {
        Err(e) => failure(e),
        Ok(c) => serde_json::to_string(&verify_certificate(&c)).expect("serializable"),
    }
}
