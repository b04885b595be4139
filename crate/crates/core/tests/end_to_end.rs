use panachee::certificate::{verify_certificate, Certificate};
use panachee::dsl::parse_problem;
use panachee::panachee::{complete_with, obstruction, torsor};
use panachee::report::{ObstructionReport, TorsorReport};
use panachee::sample::z4_grid;
use serde_json::json;

const SPLIT: &str = "\
ring 4;
module A = sum(2);
module B = sum(2, 2);
mor i : A -> B = [[1] [0]];
mor p : B -> A = [[0, 1]];
ses S = (i, p);
problem { top = S; left = S; right = S; bottom = S; }
";

fn certificate_for(text: &str) -> Option<Certificate> {
    let src = parse_problem(text).unwrap();
    let pr = src.to_problem();
    let an = obstruction(pr).unwrap();
    let c = complete_with(pr, &an).unwrap()?;
    let t = torsor(pr).unwrap();
    Some(Certificate::new(
        pr,
        &c,
        ObstructionReport::new(&an),
        Some(TorsorReport::new(&t)),
    ))
}

#[test]
fn text_to_verified_certificate() {
    let cert = certificate_for(SPLIT).expect("split problems complete");
    let back = Certificate::from_json(&cert.to_json()).unwrap();
    assert!(verify_certificate(&back).passed());
    assert_eq!(back.modules["X"].invariants.len(), 4);
}

#[test]
fn obstructed_text_has_no_certificate() {
    let text = "\
ring 4;
module A = sum(2);
module B = sum(2, 2);
module C = sum(4);
mor i : A -> B = [[1] [0]];
mor p : B -> A = [[0, 1]];
mor j : A -> C = [[2]];
mor q : C -> A = [[1]];
ses S = (i, p);
ses N = (j, q);
problem { top = N; left = S; right = N; bottom = S; }
";
    assert!(certificate_for(text).is_none());
}

fn diag(ds: &[i64]) -> serde_json::Value {
    let n = ds.len();
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|r| (0..n).map(|c| if r == c { ds[r] } else { 0 }).collect())
        .collect();
    json!({ "ngens": n, "relations": rows, "invariants": ds })
}

fn mor(src: &str, tgt: &str, m: serde_json::Value) -> serde_json::Value {
    json!({ "src": src, "tgt": tgt, "matrix": m })
}

/// The all-split problem with `X = P+R+S+Q` and `Y = R+S+Q`, written out by
/// hand.
fn hand_written() -> Certificate {
    let two = diag(&[2, 2]);
    let v = json!({
        "ring": "4",
        "modules": {
            "P": diag(&[2]), "R": diag(&[2]), "S": diag(&[2]), "Q": diag(&[2]),
            "E": two, "H": two, "F": two, "G": two,
            "X": diag(&[2, 2, 2, 2]), "Y": diag(&[2, 2, 2]),
        },
        "morphisms": {
            "iE": mor("P", "E", json!([[1], [0]])), "pE": mor("E", "R", json!([[0, 1]])),
            "iH": mor("P", "H", json!([[1], [0]])), "pH": mor("H", "S", json!([[0, 1]])),
            "iF": mor("R", "F", json!([[1], [0]])), "pF": mor("F", "Q", json!([[0, 1]])),
            "iG": mor("S", "G", json!([[1], [0]])), "pG": mor("G", "Q", json!([[0, 1]])),
            "e": mor("E", "X", json!([[1, 0], [0, 1], [0, 0], [0, 0]])),
            "h": mor("H", "X", json!([[1, 0], [0, 0], [0, 1], [0, 0]])),
            "f": mor("X", "F", json!([[0, 1, 0, 0], [0, 0, 0, 1]])),
            "g": mor("X", "G", json!([[0, 0, 1, 0], [0, 0, 0, 1]])),
            "iP": mor("P", "X", json!([[1], [0], [0], [0]])),
            "pY": mor("X", "Y", json!([[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])),
            "yF": mor("Y", "F", json!([[1, 0, 0], [0, 0, 1]])),
            "yG": mor("Y", "G", json!([[0, 1, 0], [0, 0, 1]])),
        },
        "obstruction": { "group_invariants": [2], "coords": [0], "is_zero": true, "crosscheck_coords": [0] },
        "digest": "",
    });
    let mut cert: Certificate = serde_json::from_value(v).unwrap();
    cert.digest = cert.content_digest();
    cert
}

#[test]
fn hand_written_split_certificate_passes() {
    let rep = verify_certificate(&hand_written());
    assert!(rep.passed(), "{:?}", rep.failures());
}

#[test]
fn zero_e_fails_the_corner_square() {
    let mut cert = hand_written();
    for row in &mut cert.morphisms.get_mut("e").unwrap().matrix {
        for x in row {
            x.0 = 0.into();
        }
    }
    cert.digest = cert.content_digest();
    let rep = verify_certificate(&cert);
    let failed: Vec<&str> = rep.failures().iter().map(|c| c.name.as_str()).collect();
    assert!(failed.contains(&"square P->E->X = P->H->X"), "{failed:?}");
}

#[test]
fn stale_digest_is_reported() {
    let mut cert = hand_written();
    cert.digest = "00".into();
    let rep = verify_certificate(&cert);
    let failed: Vec<&str> = rep.failures().iter().map(|c| c.name.as_str()).collect();
    assert_eq!(failed, ["digest"]);
}

#[test]
fn every_grid_completion_verifies() {
    for (bits, pr) in z4_grid() {
        let an = obstruction(&pr).unwrap();
        if let Some(c) = complete_with(&pr, &an).unwrap() {
            let cert = Certificate::new(&pr, &c, ObstructionReport::new(&an), None);
            assert!(verify_certificate(&cert).passed(), "{bits:?}");
        }
    }
}
