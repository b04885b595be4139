//! Self-contained completion certificates and their verification.
//!
//! Verification only rebuilds modules and morphisms from raw matrices and
//! checks exactness and commutativity; it never touches Ext.

use crate::diagram::{
    check_square, exactness_witness, injectivity_witness, surjectivity_witness, SquareSpec,
};
use crate::linalg::{Int, Mat, Ring};
use crate::module::{compose, FpModule, Morphism};
use crate::panachee::{Completion, PanacheeProblem};
use crate::report::{int_rows, IntJson, ObstructionReport, TorsorReport};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub checks: Vec<CheckItem>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&CheckItem> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    fn push(&mut self, name: impl Into<String>, outcome: Result<(), String>) {
        let (passed, detail) = match outcome {
            Ok(()) => (true, None),
            Err(d) => (false, Some(d)),
        };
        self.checks.push(CheckItem {
            name: name.into(),
            passed,
            detail,
        });
    }
}

fn check_ses(i: &Morphism, p: &Morphism) -> Result<(), String> {
    if i.tgt() != p.src() {
        return Err("maps are not composable".into());
    }
    let err = |e: crate::diagram::DiagramError| e.to_string();
    if let Some(w) = injectivity_witness(i).map_err(err)? {
        return Err(format!("not injective, kernel element {w:?}"));
    }
    if let Some(w) = surjectivity_witness(p).map_err(err)? {
        return Err(format!("not surjective, missed element {w:?}"));
    }
    if let Some(w) = exactness_witness(i, p).map_err(err)? {
        return Err(format!("not exact at {w:?}"));
    }
    Ok(())
}

fn check_sq(name: &str, left: Vec<Morphism>, right: Vec<Morphism>) -> Result<(), String> {
    let r = check_square(&SquareSpec::new(name, left, right)).map_err(|e| e.to_string())?;
    match r.witness {
        None => Ok(()),
        Some(g) => Err(format!("paths differ on generator {g}")),
    }
}

/// The border data a completion is checked against, by edge.
pub struct Border<'a> {
    pub ie: &'a Morphism,
    pub pe: &'a Morphism,
    pub ih: &'a Morphism,
    pub ph: &'a Morphism,
    pub i_f: &'a Morphism,
    pub pf: &'a Morphism,
    pub ig: &'a Morphism,
    pub pg: &'a Morphism,
}

impl<'a> Border<'a> {
    pub fn of(problem: &'a PanacheeProblem) -> Self {
        Border {
            ie: problem.top().i(),
            pe: problem.top().p(),
            ih: problem.left().i(),
            ph: problem.left().p(),
            i_f: problem.right().i(),
            pf: problem.right().p(),
            ig: problem.bottom().i(),
            pg: problem.bottom().p(),
        }
    }
}

/// Both middle sequences exact and the four squares commuting.
pub fn check_completion(
    b: &Border,
    e: &Morphism,
    h: &Morphism,
    f: &Morphism,
    g: &Morphism,
) -> CheckReport {
    let mut rep = CheckReport::default();
    rep.push("middle row 0->H->X->F->0", check_ses(h, f));
    rep.push("middle column 0->E->X->G->0", check_ses(e, g));
    rep.push(
        "square P->E->X = P->H->X",
        check_sq(
            "PX",
            vec![b.ie.clone(), e.clone()],
            vec![b.ih.clone(), h.clone()],
        ),
    );
    rep.push(
        "square E->X->F = E->R->F",
        check_sq(
            "EF",
            vec![e.clone(), f.clone()],
            vec![b.pe.clone(), b.i_f.clone()],
        ),
    );
    rep.push(
        "square H->X->G = H->S->G",
        check_sq(
            "HG",
            vec![h.clone(), g.clone()],
            vec![b.ph.clone(), b.ig.clone()],
        ),
    );
    rep.push(
        "square X->F->Q = X->G->Q",
        check_sq(
            "XQ",
            vec![f.clone(), b.pf.clone()],
            vec![g.clone(), b.pg.clone()],
        ),
    );
    rep
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleRecord {
    pub ngens: usize,
    pub relations: Vec<Vec<IntJson>>,
    pub invariants: Vec<IntJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismRecord {
    pub src: String,
    pub tgt: String,
    pub matrix: Vec<Vec<IntJson>>,
}

/// Everything needed to re-check a completion from raw matrices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub ring: Ring,
    pub modules: BTreeMap<String, ModuleRecord>,
    pub morphisms: BTreeMap<String, MorphismRecord>,
    pub obstruction: ObstructionReport,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub torsor: Option<TorsorReport>,
    /// Guards against edits that happen to describe another valid completion.
    pub digest: String,
}

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Module names and the morphism names with their endpoints.
pub const MODULES: [&str; 10] = ["P", "E", "R", "H", "F", "S", "G", "Q", "X", "Y"];
pub const MORPHISMS: [(&str, &str, &str); 16] = [
    ("iE", "P", "E"),
    ("pE", "E", "R"),
    ("iH", "P", "H"),
    ("pH", "H", "S"),
    ("iF", "R", "F"),
    ("pF", "F", "Q"),
    ("iG", "S", "G"),
    ("pG", "G", "Q"),
    ("e", "E", "X"),
    ("h", "H", "X"),
    ("f", "X", "F"),
    ("g", "X", "G"),
    ("iP", "P", "X"),
    ("pY", "X", "Y"),
    ("yF", "Y", "F"),
    ("yG", "Y", "G"),
];

fn module_record(m: &FpModule) -> ModuleRecord {
    ModuleRecord {
        ngens: m.ngens(),
        relations: int_rows(m.relations()),
        invariants: m.invariants().iter().cloned().map(IntJson).collect(),
    }
}

impl Certificate {
    pub fn new(
        problem: &PanacheeProblem,
        c: &Completion,
        obstruction: ObstructionReport,
        torsor: Option<TorsorReport>,
    ) -> Self {
        let mods: [(&str, &FpModule); 10] = [
            ("P", problem.p()),
            ("E", problem.e()),
            ("R", problem.r()),
            ("H", problem.h()),
            ("F", problem.f()),
            ("S", problem.s()),
            ("G", problem.g()),
            ("Q", problem.q()),
            ("X", &c.x),
            ("Y", c.x_ses.quo()),
        ];
        let b = Border::of(problem);
        let maps: [&Morphism; 16] = [
            b.ie,
            b.pe,
            b.ih,
            b.ph,
            b.i_f,
            b.pf,
            b.ig,
            b.pg,
            &c.e,
            &c.h,
            &c.f,
            &c.g,
            c.x_ses.i(),
            c.x_ses.p(),
            &c.y_f,
            &c.y_g,
        ];
        let modules = mods
            .iter()
            .map(|(n, m)| (n.to_string(), module_record(m)))
            .collect();
        let morphisms = MORPHISMS
            .iter()
            .zip(maps)
            .map(|((n, s, t), m)| {
                (
                    n.to_string(),
                    MorphismRecord {
                        src: s.to_string(),
                        tgt: t.to_string(),
                        matrix: int_rows(m.normalized().matrix()),
                    },
                )
            })
            .collect();
        let mut cert = Certificate {
            ring: problem.p().ring().clone(),
            modules,
            morphisms,
            obstruction,
            torsor,
            digest: String::new(),
        };
        cert.digest = cert.content_digest();
        cert
    }

    /// SHA-256 of the ring, the module records and the morphism records.
    pub fn content_digest(&self) -> String {
        let mut h = Sha256::new();
        let body = serde_json::to_string(&(&self.ring, &self.modules, &self.morphisms))
            .expect("serializable");
        h.update(body.as_bytes());
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self, CertificateError> {
        Ok(serde_json::from_str(s)?)
    }
}

fn rows_to_mat(
    ring: &Ring,
    rows: usize,
    cols: usize,
    data: &[Vec<IntJson>],
) -> Result<Mat, String> {
    let entries: Vec<Vec<Int>> = data
        .iter()
        .map(|r| r.iter().map(|x| x.0.clone()).collect())
        .collect();
    // an empty row list stands for any matrix with no rows
    if rows == 0 && entries.is_empty() {
        return Ok(Mat::zeros(ring, 0, cols));
    }
    Mat::try_from_rows(ring, rows, cols, entries).map_err(|e| e.to_string())
}

/// Re-checks a certificate from its matrices: presentations and recorded
/// invariants, well-definedness and canonical form of every map, the four
/// border sequences, `0->P->X->Y->0`, both middle sequences and the four
/// squares.
pub fn verify_certificate(cert: &Certificate) -> CheckReport {
    let mut rep = CheckReport::default();
    let digest_ok = cert.digest == cert.content_digest();
    rep.push(
        "digest",
        if digest_ok {
            Ok(())
        } else {
            Err("matrices were changed after issue".into())
        },
    );
    let ring = &cert.ring;
    let mut mods: BTreeMap<&str, FpModule> = BTreeMap::new();
    for name in MODULES {
        let outcome = (|| {
            let rec = cert.modules.get(name).ok_or("missing")?;
            let ncols = rec.relations.first().map_or(0, Vec::len);
            let rel = rows_to_mat(ring, rec.ngens, ncols, &rec.relations)?;
            let m = FpModule::present(ring, rec.ngens, rel).map_err(|e| e.to_string())?;
            let inv: Vec<Int> = rec.invariants.iter().map(|x| x.0.clone()).collect();
            if m.invariants() != inv.as_slice() {
                return Err(format!(
                    "recorded invariants {inv:?} but presentation gives {:?}",
                    m.invariants()
                ));
            }
            mods.insert(name, m);
            Ok::<(), String>(())
        })();
        rep.push(format!("module {name}"), outcome.map_err(|e| e.to_string()));
    }
    let mut maps: BTreeMap<&str, Morphism> = BTreeMap::new();
    for (name, s, t) in MORPHISMS {
        let outcome = (|| {
            let rec = cert.morphisms.get(name).ok_or("missing")?;
            if rec.src != s || rec.tgt != t {
                return Err(format!(
                    "expected {s} -> {t}, found {} -> {}",
                    rec.src, rec.tgt
                ));
            }
            let (Some(src), Some(tgt)) = (mods.get(s), mods.get(t)) else {
                return Err("endpoint module is invalid".to_string());
            };
            let m = rows_to_mat(ring, tgt.ngens(), src.ngens(), &rec.matrix)
                .map_err(|e| format!("{e} (expected {}x{})", tgt.ngens(), src.ngens()))?;
            if !raw_is_canonical(&rec.matrix, tgt) {
                return Err("matrix columns are not in canonical form".into());
            }
            let f = Morphism::new(src, tgt, m).map_err(|e| e.to_string())?;
            maps.insert(name, f);
            Ok::<(), String>(())
        })();
        rep.push(format!("morphism {name}"), outcome);
    }
    if maps.len() < MORPHISMS.len() {
        return rep;
    }
    let m = |n: &str| maps[n].clone();
    for (label, i, p) in [
        ("top 0->P->E->R->0", "iE", "pE"),
        ("left 0->P->H->S->0", "iH", "pH"),
        ("right 0->R->F->Q->0", "iF", "pF"),
        ("bottom 0->S->G->Q->0", "iG", "pG"),
        ("0->P->X->Y->0", "iP", "pY"),
    ] {
        rep.push(label, check_ses(&m(i), &m(p)));
    }
    let (ie, pe, ih, ph, i_f, pf, ig, pg) = (
        m("iE"),
        m("pE"),
        m("iH"),
        m("pH"),
        m("iF"),
        m("pF"),
        m("iG"),
        m("pG"),
    );
    let border = Border {
        ie: &ie,
        pe: &pe,
        ih: &ih,
        ph: &ph,
        i_f: &i_f,
        pf: &pf,
        ig: &ig,
        pg: &pg,
    };
    let inner = check_completion(&border, &m("e"), &m("h"), &m("f"), &m("g"));
    rep.checks.extend(inner.checks);
    // P -> X is the common composite through E
    let ip = compose(&m("e"), &ie).map(|c| c == m("iP")).unwrap_or(false);
    rep.push(
        "iP = e.iE",
        if ip {
            Ok(())
        } else {
            Err("P -> X differs from P -> E -> X".into())
        },
    );
    // Y is the fibre product of F and G over Q, and X -> Y is (f, g)
    rep.push(
        "Y -> F+G is injective",
        jointly_injective(&m("yF"), &m("yG")),
    );
    rep.push(
        "square Y->F->Q = Y->G->Q",
        check_sq("YQ", vec![m("yF"), pf.clone()], vec![m("yG"), pg.clone()]),
    );
    rep.push(
        "f = yF.pY",
        check_sq("f", vec![m("pY"), m("yF")], vec![m("f")]),
    );
    rep.push(
        "g = yG.pY",
        check_sq("g", vec![m("pY"), m("yG")], vec![m("g")]),
    );
    rep
}

fn jointly_injective(a: &Morphism, b: &Morphism) -> Result<(), String> {
    let (y, ring) = (a.src(), a.src().ring());
    let both = FpModule::present(
        ring,
        a.tgt().ngens() + b.tgt().ngens(),
        a.tgt()
            .relations()
            .block_diag(b.tgt().relations())
            .map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    let m = Morphism::new(
        y,
        &both,
        a.matrix().vstack(b.matrix()).map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    match injectivity_witness(&m).map_err(|e| e.to_string())? {
        None => Ok(()),
        Some(w) => Err(format!("kernel element {w:?}")),
    }
}

/// Every column of a recorded matrix must be the canonical representative
/// of its element of the target.
fn raw_is_canonical(rows: &[Vec<IntJson>], tgt: &FpModule) -> bool {
    let n = rows.first().map_or(0, Vec::len);
    (0..n).all(|c| {
        let col: Vec<Int> = rows.iter().map(|r| r[c].0.clone()).collect();
        tgt.normalize(&col) == col
    })
}
