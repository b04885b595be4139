//! The problem description language.
//!
//! ```text
//! ring 4;
//! module Z2 = sum(2);
//! module Z4 = fp(1; []);
//! mor i : Z2 -> Z4 = [[2]];
//! mor p : Z4 -> Z2 = [[1]];
//! ses E = (i, p);
//! problem { top = E; left = E; right = E; bottom = E; }
//! ```
//!
//! `fp(n; [r_1, .., r_k])` presents a module on `n` generators with one
//! relation vector per inner list. Morphism matrices have one row per target
//! generator. Integer literals are reduced modulo the ring at parse time,
//! `#` starts a comment running to the end of the line. A row may be empty
//! (`[]`) when the source module has no generators.

use crate::diagram::ShortExactSeq;
use crate::linalg::{Int, Mat, Ring};
use crate::module::{FpModule, Morphism};
use crate::panachee::PanacheeProblem;
use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("{pos}: parse error: {msg}")]
    Parse { pos: Pos, msg: String },
    #[error("{pos}: name error: {msg}")]
    Name { pos: Pos, msg: String },
    #[error("{pos}: ring mismatch: {msg}")]
    RingMismatch { pos: Pos, msg: String },
    /// Syntactically fine but not a valid module, morphism, sequence or problem.
    #[error("{pos}: ill-formed: {msg}")]
    IllFormed { pos: Pos, msg: String },
}

impl DslError {
    pub fn pos(&self) -> Pos {
        match self {
            DslError::Parse { pos, .. }
            | DslError::Name { pos, .. }
            | DslError::RingMismatch { pos, .. }
            | DslError::IllFormed { pos, .. } => *pos,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleDecl {
    Fp {
        ngens: usize,
        relations: Vec<Vec<Int>>,
    },
    Sum(Vec<Int>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorDecl {
    pub src: String,
    pub tgt: String,
    pub rows: Vec<Vec<Int>>,
}

/// A parsed file. Declarations keep their source order.
#[derive(Debug, Clone)]
pub struct ProblemSource {
    pub ring: Ring,
    pub modules: Vec<(String, ModuleDecl)>,
    pub morphisms: Vec<(String, MorDecl)>,
    pub seses: Vec<(String, (String, String))>,
    /// Sequence names for top, left, right and bottom.
    pub problem: [String; 4],
    built: Built,
}

/// Structural equality of the declarations.
impl PartialEq for ProblemSource {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && self.modules == other.modules
            && self.morphisms == other.morphisms
            && self.seses == other.seses
            && self.problem == other.problem
    }
}

#[derive(Debug, Clone, Default)]
struct Built {
    modules: BTreeMap<String, FpModule>,
    morphisms: BTreeMap<String, Morphism>,
    seses: BTreeMap<String, ShortExactSeq>,
    problem: Option<PanacheeProblem>,
}

impl ProblemSource {
    pub fn module(&self, name: &str) -> Option<&FpModule> {
        self.built.modules.get(name)
    }

    pub fn morphism(&self, name: &str) -> Option<&Morphism> {
        self.built.morphisms.get(name)
    }

    pub fn ses(&self, name: &str) -> Option<&ShortExactSeq> {
        self.built.seses.get(name)
    }

    pub fn to_problem(&self) -> &PanacheeProblem {
        self.built.problem.as_ref().expect("built at parse time")
    }

    /// A source describing `problem`, with modules written by their
    /// presentations.
    pub fn from_problem(problem: &PanacheeProblem) -> Self {
        let ring = problem.p().ring().clone();
        let named = [
            ("P", problem.p()),
            ("E", problem.e()),
            ("R", problem.r()),
            ("H", problem.h()),
            ("S", problem.s()),
            ("F", problem.f()),
            ("G", problem.g()),
            ("Q", problem.q()),
        ];
        let modules: Vec<_> = named
            .iter()
            .map(|(n, m)| {
                (
                    n.to_string(),
                    ModuleDecl::Fp {
                        ngens: m.ngens(),
                        relations: m.relations().columns(),
                    },
                )
            })
            .collect();
        let edges = [
            ("top", problem.top(), "P", "E", "R"),
            ("left", problem.left(), "P", "H", "S"),
            ("right", problem.right(), "R", "F", "Q"),
            ("bottom", problem.bottom(), "S", "G", "Q"),
        ];
        let mut morphisms = Vec::new();
        let mut seses = Vec::new();
        for (name, s, a, b, c) in edges {
            let (i, p) = (format!("i_{name}"), format!("p_{name}"));
            morphisms.push((
                i.clone(),
                MorDecl {
                    src: a.into(),
                    tgt: b.into(),
                    rows: s.i().matrix().to_rows(),
                },
            ));
            morphisms.push((
                p.clone(),
                MorDecl {
                    src: b.into(),
                    tgt: c.into(),
                    rows: s.p().matrix().to_rows(),
                },
            ));
            seses.push((name.to_string(), (i, p)));
        }
        let text = print_parts(
            &ring,
            &modules,
            &morphisms,
            &seses,
            &["top", "left", "right", "bottom"].map(String::from),
        );
        parse_problem(&text).expect("printed problems parse")
    }
}

impl fmt::Display for ProblemSource {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(&print_parts(
            &self.ring,
            &self.modules,
            &self.morphisms,
            &self.seses,
            &self.problem,
        ))
    }
}

fn ints(v: &[Int]) -> String {
    v.iter().map(Int::to_string).collect::<Vec<_>>().join(", ")
}

fn matrix(rows: &[Vec<Int>]) -> String {
    let inner: Vec<String> = rows.iter().map(|r| format!("[{}]", ints(r))).collect();
    format!("[{}]", inner.join(" "))
}

fn print_parts(
    ring: &Ring,
    modules: &[(String, ModuleDecl)],
    morphisms: &[(String, MorDecl)],
    seses: &[(String, (String, String))],
    problem: &[String; 4],
) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "ring {};", ring.modulus());
    for (name, m) in modules {
        let _ = match m {
            ModuleDecl::Fp { ngens, relations } => {
                writeln!(s, "module {name} = fp({ngens}; {});", matrix(relations))
            }
            ModuleDecl::Sum(ds) => writeln!(s, "module {name} = sum({});", ints(ds)),
        };
    }
    for (name, m) in morphisms {
        let _ = writeln!(
            s,
            "mor {name} : {} -> {} = {};",
            m.src,
            m.tgt,
            matrix(&m.rows)
        );
    }
    for (name, (i, p)) in seses {
        let _ = writeln!(s, "ses {name} = ({i}, {p});");
    }
    let [t, l, r, b] = problem;
    let _ = writeln!(
        s,
        "problem {{ top = {t}; left = {l}; right = {r}; bottom = {b}; }}"
    );
    s
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Name(String),
    Int(Int),
    Punct(&'static str),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match self {
            Tok::Name(n) => write!(f, "`{n}`"),
            Tok::Int(i) => write!(f, "`{i}`"),
            Tok::Punct(p) => write!(f, "`{p}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, DslError> {
    const PUNCT: [&str; 11] = ["->", ";", "=", "(", ")", ",", "[", "]", "{", "}", ":"];
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let pos = Pos {
                line: ln + 1,
                col: i + 1,
            };
            let c = chars[i];
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
                {
                    i += 1;
                }
                out.push((Tok::Name(chars[start..i].iter().collect()), pos));
                continue;
            }
            let negative = c == '-' && chars.get(i + 1).is_some_and(char::is_ascii_digit);
            if c.is_ascii_digit() || negative {
                let start = i;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let v = s.parse::<Int>().map_err(|_| DslError::Parse {
                    pos,
                    msg: format!("bad integer {s}"),
                })?;
                out.push((Tok::Int(v), pos));
                continue;
            }
            let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
            match PUNCT.iter().find(|p| rest.starts_with(**p)) {
                Some(p) => {
                    out.push((Tok::Punct(p), pos));
                    i += p.len();
                }
                None => {
                    return Err(DslError::Parse {
                        pos,
                        msg: format!("unexpected character {c:?}"),
                    })
                }
            }
        }
    }
    let last = text.lines().count().max(1);
    out.push((
        Tok::Eof,
        Pos {
            line: last + usize::from(text.ends_with('\n')),
            col: 1,
        },
    ));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    ring: Ring,
}

impl Parser {
    fn peek(&self) -> &(Tok, Pos) {
        &self.toks[self.at]
    }

    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, want: &str) -> Result<T, DslError> {
        let (tok, pos) = self.peek();
        Err(DslError::Parse {
            pos: *pos,
            msg: format!("expected {want}, found {tok}"),
        })
    }

    fn punct(&mut self, p: &str) -> Result<Pos, DslError> {
        match self.peek() {
            (Tok::Punct(q), pos) if *q == p => {
                let pos = *pos;
                self.next();
                Ok(pos)
            }
            _ => self.fail(&format!("`{p}`")),
        }
    }

    fn is_punct(&self, p: &str) -> bool {
        matches!(self.peek(), (Tok::Punct(q), _) if *q == p)
    }

    fn keyword(&mut self, k: &str) -> Result<Pos, DslError> {
        match self.peek() {
            (Tok::Name(n), pos) if n == k => {
                let pos = *pos;
                self.next();
                Ok(pos)
            }
            _ => self.fail(&format!("`{k}`")),
        }
    }

    fn name(&mut self) -> Result<(String, Pos), DslError> {
        match self.peek().clone() {
            (Tok::Name(n), pos) => {
                self.next();
                Ok((n, pos))
            }
            _ => self.fail("a name"),
        }
    }

    fn raw_int(&mut self) -> Result<(Int, Pos), DslError> {
        match self.peek().clone() {
            (Tok::Int(v), pos) => {
                self.next();
                Ok((v, pos))
            }
            _ => self.fail("an integer"),
        }
    }

    fn int(&mut self) -> Result<Int, DslError> {
        let (v, _) = self.raw_int()?;
        Ok(self.ring.reduce(v))
    }

    fn count(&mut self) -> Result<usize, DslError> {
        let (v, pos) = self.raw_int()?;
        usize::try_from(&v).map_err(|_| DslError::Parse {
            pos,
            msg: format!("expected a generator count, found {v}"),
        })
    }

    fn ints(&mut self) -> Result<Vec<Int>, DslError> {
        let mut v = vec![self.int()?];
        while self.is_punct(",") {
            self.next();
            v.push(self.int()?);
        }
        Ok(v)
    }

    /// Rows of a matrix. Commas between rows and empty rows are also
    /// accepted, the latter for maps out of a module with no generators.
    fn matrix(&mut self) -> Result<(Vec<Vec<Int>>, Pos), DslError> {
        let pos = self.punct("[")?;
        let mut rows = Vec::new();
        while self.is_punct("[") {
            self.next();
            rows.push(if self.is_punct("]") {
                Vec::new()
            } else {
                self.ints()?
            });
            self.punct("]")?;
            if self.is_punct(",") {
                self.next();
            }
        }
        self.punct("]")?;
        Ok((rows, pos))
    }
}

fn ill(pos: Pos, e: impl fmt::Display) -> DslError {
    DslError::IllFormed {
        pos,
        msg: e.to_string(),
    }
}

fn lookup<'a, T>(
    map: &'a BTreeMap<String, T>,
    name: &str,
    what: &str,
    pos: Pos,
) -> Result<&'a T, DslError> {
    map.get(name).ok_or_else(|| DslError::Name {
        pos,
        msg: format!("undefined {what} `{name}`"),
    })
}

/// Parses a problem file and builds every declared object.
pub fn parse_problem(text: &str) -> Result<ProblemSource, DslError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        ring: Ring::integers(),
    };
    p.keyword("ring")?;
    let (n, npos) = p.raw_int()?;
    p.ring = Ring::new(n.clone()).map_err(|_| DslError::RingMismatch {
        pos: npos,
        msg: format!("ring modulus must be >= 0, got {n}"),
    })?;
    p.punct(";")?;
    let ring = p.ring.clone();
    let mut src = ProblemSource {
        ring: ring.clone(),
        modules: Vec::new(),
        morphisms: Vec::new(),
        seses: Vec::new(),
        problem: Default::default(),
        built: Built::default(),
    };
    let mut names: BTreeMap<String, Pos> = BTreeMap::new();
    let mut declare = |name: &str, pos: Pos| -> Result<(), DslError> {
        if let Some(first) = names.insert(name.to_string(), pos) {
            return Err(DslError::Name {
                pos,
                msg: format!("`{name}` is already defined at {first}"),
            });
        }
        Ok(())
    };
    loop {
        let (tok, pos) = p.peek().clone();
        match tok {
            Tok::Name(k) if k == "ring" => {
                return Err(DslError::RingMismatch {
                    pos,
                    msg: "only one ring declaration is allowed".into(),
                })
            }
            Tok::Name(k) if k == "module" => {
                p.next();
                let (name, npos) = p.name()?;
                declare(&name, npos)?;
                p.punct("=")?;
                let (kind, kpos) = p.name()?;
                p.punct("(")?;
                let decl = match kind.as_str() {
                    "fp" => {
                        let ngens = p.count()?;
                        p.punct(";")?;
                        let (relations, mpos) = p.matrix()?;
                        if let Some(r) = relations.iter().find(|r| r.len() != ngens) {
                            return Err(DslError::Parse {
                                pos: mpos,
                                msg: format!("relation of length {}, expected {ngens} (one entry per generator)", r.len()),
                            });
                        }
                        ModuleDecl::Fp { ngens, relations }
                    }
                    "sum" => {
                        let ds = p.ints()?;
                        if let Some(d) = ds.iter().find(|d| {
                            !ring.is_integers() && !d.is_zero() && !(ring.modulus() % *d).is_zero()
                        }) {
                            return Err(DslError::RingMismatch {
                                pos: kpos,
                                msg: format!(
                                    "factor {d} does not divide the ring modulus {}",
                                    ring.modulus()
                                ),
                            });
                        }
                        ModuleDecl::Sum(ds)
                    }
                    other => {
                        return Err(DslError::Parse {
                            pos: kpos,
                            msg: format!("expected `fp` or `sum`, found `{other}`"),
                        })
                    }
                };
                p.punct(")")?;
                p.punct(";")?;
                let m = match &decl {
                    ModuleDecl::Fp { ngens, relations } => {
                        let rel = Mat::from_columns(&ring, *ngens, relations);
                        FpModule::present(&ring, *ngens, rel).map_err(|e| ill(kpos, e))?
                    }
                    ModuleDecl::Sum(ds) => FpModule::diagonal(&ring, ds),
                };
                src.built.modules.insert(name.clone(), m);
                src.modules.push((name, decl));
            }
            Tok::Name(k) if k == "mor" => {
                p.next();
                let (name, npos) = p.name()?;
                declare(&name, npos)?;
                p.punct(":")?;
                let (a, apos) = p.name()?;
                p.punct("->")?;
                let (b, bpos) = p.name()?;
                p.punct("=")?;
                let (rows, mpos) = p.matrix()?;
                p.punct(";")?;
                let sm = lookup(&src.built.modules, &a, "module", apos)?;
                let tm = lookup(&src.built.modules, &b, "module", bpos)?;
                let shape_ok =
                    rows.len() == tm.ngens() && rows.iter().all(|r| r.len() == sm.ngens());
                if !shape_ok {
                    let got = format!("{}x{}", rows.len(), rows.first().map_or(0, Vec::len));
                    return Err(DslError::Parse {
                        pos: mpos,
                        msg: format!(
                            "matrix of `{name}` is {got}, expected {}x{} (rows = generators of {b}, columns = generators of {a})",
                            tm.ngens(),
                            sm.ngens()
                        ),
                    });
                }
                let mat = if rows.is_empty() {
                    Mat::zeros(&ring, 0, sm.ngens())
                } else {
                    Mat::try_from_rows(&ring, rows.len(), sm.ngens(), rows.clone())
                        .map_err(|e| ill(mpos, e))?
                };
                let f =
                    Morphism::new(sm, tm, mat).map_err(|e| ill(mpos, format!("`{name}`: {e}")))?;
                src.built.morphisms.insert(name.clone(), f);
                src.morphisms.push((
                    name,
                    MorDecl {
                        src: a,
                        tgt: b,
                        rows,
                    },
                ));
            }
            Tok::Name(k) if k == "ses" => {
                p.next();
                let (name, npos) = p.name()?;
                declare(&name, npos)?;
                p.punct("=")?;
                p.punct("(")?;
                let (i, ipos) = p.name()?;
                p.punct(",")?;
                let (q, qpos) = p.name()?;
                p.punct(")")?;
                p.punct(";")?;
                let fi = lookup(&src.built.morphisms, &i, "morphism", ipos)?;
                let fq = lookup(&src.built.morphisms, &q, "morphism", qpos)?;
                let s =
                    ShortExactSeq::new(fi, fq).map_err(|e| ill(npos, format!("`{name}`: {e}")))?;
                src.built.seses.insert(name.clone(), s);
                src.seses.push((name, (i, q)));
            }
            Tok::Name(k) if k == "problem" => {
                p.next();
                p.punct("{")?;
                let mut edges = Vec::new();
                for role in ["top", "left", "right", "bottom"] {
                    p.keyword(role)?;
                    p.punct("=")?;
                    let (n, npos) = p.name()?;
                    p.punct(";")?;
                    edges.push((
                        lookup(&src.built.seses, &n, "sequence", npos)?.clone(),
                        npos,
                    ));
                    src.problem[edges.len() - 1] = n;
                }
                p.punct("}")?;
                if !matches!(p.peek().0, Tok::Eof) {
                    return p.fail("end of input after the problem block");
                }
                let [t, l, r, b]: [(ShortExactSeq, Pos); 4] = edges.try_into().expect("four edges");
                let problem = PanacheeProblem::new(t.0, l.0, r.0, b.0).map_err(|e| ill(pos, e))?;
                src.built.problem = Some(problem);
                return Ok(src);
            }
            _ => return p.fail("`module`, `mor`, `ses` or `problem`"),
        }
    }
}
