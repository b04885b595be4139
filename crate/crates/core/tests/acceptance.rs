//! Acceptance run: one line per criterion. Pass criterion numbers as
//! arguments to run a subset, e.g. `cargo test --test acceptance -- 3 4`.

use panachee::certificate::{verify_certificate, Certificate};
use panachee::ext::{ext_group, les_maps};
use panachee::linalg::{
    determinant, howell_form, is_howell_shaped, smith_normal_form, solve_linear, Int, Mat, Ring,
};
use panachee::module::FpModule;
use panachee::oracle::{brute_complete, enumerate_modules, enumerate_ses, SearchBudget};
use panachee::panachee::{
    act, complete_with, enumerate_with, obstruction, splice_crosscheck_with, torsor, Analysis,
    PanacheeProblem,
};
use panachee::report::{ObstructionReport, TorsorReport};
use panachee::sample::{
    prime_square_problem, random_extension, random_module, random_problem, z4_grid,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// The randomized problems shared by the identity and commutativity runs.
fn random_set() -> Result<Vec<(u64, PanacheeProblem)>, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut out = Vec::new();
    for n in [4u64, 8, 9] {
        for _ in 0..70 {
            out.push((
                n,
                random_problem(&mut rng, &Ring::modulo(n), 8).map_err(err)?,
            ));
        }
    }
    Ok(out)
}

fn certify(problem: &PanacheeProblem, an: &Analysis) -> Result<Option<Certificate>, String> {
    let Some(c) = complete_with(problem, an).map_err(err)? else {
        return Ok(None);
    };
    let t = torsor(problem).map_err(err)?;
    Ok(Some(Certificate::new(
        problem,
        &c,
        ObstructionReport::new(an),
        Some(TorsorReport::new(&t)),
    )))
}

fn grid() -> Outcome {
    let start = Instant::now();
    let budget = SearchBudget::default();
    let mut agree = 0;
    for (bits, pr) in z4_grid() {
        let an = obstruction(&pr).map_err(err)?;
        let completed = complete_with(&pr, &an).map_err(err)?.is_some();
        let found = !brute_complete(&pr, &budget).map_err(err)?.is_empty();
        let zero = !an.is_obstructed();
        ensure(completed == zero && found == zero, || {
            format!("{bits:?}: obstruction zero {zero}, complete {completed}, oracle {found}")
        })?;
        agree += 1;
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(60), || format!("took {took:?}"))?;
    Ok(format!("{agree}/16 agree in {took:.2?}"))
}

fn witness() -> Outcome {
    let obstructed = prime_square_problem(2, [true, false, true, false]);
    let an = obstruction(&obstructed).map_err(err)?;
    let inv = an.ext2().invariants().to_vec();
    ensure(inv == [Int::from(2)], || {
        format!("Ext^2(Q, P) has invariants {inv:?}")
    })?;
    ensure(an.obstruction.coords == [Int::from(1)], || {
        format!("obstruction {:?}", an.obstruction.coords)
    })?;
    let found = brute_complete(&obstructed, &SearchBudget::new(16).map_err(err)?).map_err(err)?;
    ensure(found.is_empty(), || {
        format!("oracle found {} completions", found.len())
    })?;
    let all = prime_square_problem(2, [true; 4]);
    let an = obstruction(&all).map_err(err)?;
    ensure(!an.is_obstructed(), || {
        "all-nonsplit problem is obstructed".into()
    })?;
    let cert = certify(&all, &an)?.ok_or("no completion for the all-nonsplit problem")?;
    ensure(verify_certificate(&cert).passed(), || {
        "all-nonsplit certificate fails".into()
    })?;
    Ok("obstruction = 1 in Z/2, no X of order 16; all-nonsplit completes".into())
}

fn identity() -> Outcome {
    let set = random_set()?;
    let mut obstructed = 0;
    for (k, (n, pr)) in set.iter().enumerate() {
        // obstruction() itself refuses to return when the two sides differ
        let an = obstruction(pr).map_err(|e| format!("problem {k} over Z/{n}: {e}"))?;
        obstructed += usize::from(an.is_obstructed());
    }
    Ok(format!(
        "{} problems, {obstructed} obstructed, zero failures",
        set.len()
    ))
}

fn commutativity() -> Outcome {
    let set = random_set()?;
    for (k, (n, pr)) in set.iter().enumerate() {
        let an = obstruction(pr).map_err(err)?;
        let rep =
            splice_crosscheck_with(pr, &an).map_err(|e| format!("problem {k} over Z/{n}: {e}"))?;
        ensure(rep.agrees(), || format!("problem {k} over Z/{n}: {rep:?}"))?;
        ensure(
            rep.w_to_t.src() == &an.w.module && rep.z_to_y.tgt() == &an.y.module,
            || format!("problem {k}: comparison maps have the wrong endpoints"),
        )?;
    }
    Ok(format!(
        "{} problems, comparison maps exhibited for each",
        set.len()
    ))
}

fn ext_truth() -> Outcome {
    let r = Ring::modulo(4);
    let mods: Vec<FpModule> = [1, 2, 4]
        .iter()
        .flat_map(|&o| enumerate_modules(&r, o).expect("finite ring"))
        .collect();
    let budget = SearchBudget::default();
    let mut pairs = 0;
    for a in &mods {
        for c in &mods {
            let classes = enumerate_ses(a, c, &budget).map_err(err)?.len();
            let ext = ext_group(1, c, a)
                .map_err(err)?
                .order()
                .ok_or("infinite Ext")?;
            ensure(ext == Int::from(classes), || {
                format!("Ext^1({c}, {a}) = {ext} but {classes} classes")
            })?;
            pairs += 1;
        }
    }
    let z2 = FpModule::cyclic(&r, 2);
    for d in [1, 2] {
        let inv = ext_group(d, &z2, &z2).map_err(err)?.invariants().to_vec();
        ensure(inv == [Int::from(2)], || {
            format!("Ext^{d}(Z/2, Z/2) has invariants {inv:?}")
        })?;
    }
    Ok(format!(
        "{pairs} pairs agree; Ext^1 = Ext^2 = Z/2 for Z/2 over Z/4"
    ))
}

fn les() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut runs = 0;
    for ring in [
        Ring::modulo(4),
        Ring::modulo(8),
        Ring::modulo(9),
        Ring::modulo(12),
        Ring::integers(),
    ] {
        for _ in 0..15 {
            let a = random_module(&mut rng, &ring, 8);
            let c = random_module(&mut rng, &ring, 8);
            let p = random_module(&mut rng, &ring, 8);
            let s = random_extension(&mut rng, &a, &c).map_err(err)?;
            let ex = les_maps(&s, &p).map_err(err)?.exactness().map_err(err)?;
            ensure(ex == [true; 3], || {
                format!("{ex:?} for {a} -> {} -> {c} with P = {p}", s.mid())
            })?;
            runs += 1;
        }
    }
    Ok(format!("{runs} sequences exact at all three places"))
}

fn torsor_grid() -> Outcome {
    let mut checked = 0;
    for (bits, pr) in z4_grid() {
        let an = obstruction(&pr).map_err(err)?;
        if an.is_obstructed() {
            continue;
        }
        let t = torsor(&pr).map_err(err)?;
        let size = usize::try_from(&t.size.clone().ok_or("infinite torsor")?).map_err(err)?;
        let sols = enumerate_with(&pr, &an, usize::MAX).map_err(err)?;
        let classes: BTreeSet<Vec<Int>> = sols.iter().map(|c| c.class_x.coords.clone()).collect();
        ensure(classes.len() == size, || {
            format!("{bits:?}: torsor {size}, {} classes", classes.len())
        })?;
        ensure(!t.unique || sols.len() == 1, || {
            format!("{bits:?}: unique but {} solutions", sols.len())
        })?;
        let brute = brute_complete(&pr, &SearchBudget::default())
            .map_err(err)?
            .len();
        ensure(brute == size, || {
            format!("{bits:?}: torsor {size}, oracle {brute} classes")
        })?;
        let base = &sols[0];
        let group = t.ext1_qp.elements().map_err(err)?;
        let same = |x: &Vec<Int>, y: &Vec<Int>| x == y;
        let zero = act(&pr, &an, base, &t.ext1_qp.zero()).map_err(err)?;
        ensure(same(&zero.class_x.coords, &base.class_x.coords), || {
            format!("{bits:?}: zero acts nontrivially")
        })?;
        let mut reached = BTreeSet::new();
        for l in &group {
            let once = act(&pr, &an, base, l).map_err(err)?;
            reached.insert(once.class_x.coords.clone());
            for m in &group {
                let twice = act(&pr, &an, &once, m).map_err(err)?;
                let sum = act(&pr, &an, base, &l.add(m).map_err(err)?).map_err(err)?;
                ensure(same(&twice.class_x.coords, &sum.class_x.coords), || {
                    format!(
                        "{bits:?}: (x.l).m != x.(l+m) for l = {:?}, m = {:?}",
                        l.coords, m.coords
                    )
                })?;
            }
        }
        ensure(reached == classes, || {
            format!("{bits:?}: action does not reach every solution")
        })?;
        checked += 1;
    }
    Ok(format!("{checked} completable problems: sizes match enumeration and oracle, action is associative and transitive"))
}

fn integers() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let z = Ring::integers();
    for k in 0..50 {
        let pr = random_problem(&mut rng, &z, 8).map_err(err)?;
        let an = obstruction(&pr).map_err(err)?;
        ensure(an.ext2().module().is_zero(), || {
            format!("problem {k}: Ext^2 = {}", an.ext2().module())
        })?;
        let cert = certify(&pr, &an)?.ok_or_else(|| format!("problem {k}: no completion"))?;
        ensure(verify_certificate(&cert).passed(), || {
            format!("problem {k}: certificate fails")
        })?;
    }
    Ok("50 problems over Z complete with verified certificates".into())
}

fn certificates() -> Outcome {
    let mut problems: Vec<PanacheeProblem> = z4_grid().into_iter().map(|(_, p)| p).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for n in [8u64, 9, 0] {
        for _ in 0..10 {
            problems.push(random_problem(&mut rng, &Ring::modulo(n), 8).map_err(err)?);
        }
    }
    let (mut certs, mut tampered, mut only_digest) = (0, 0, 0);
    for pr in &problems {
        let an = obstruction(pr).map_err(err)?;
        let Some(cert) = certify(pr, &an)? else {
            continue;
        };
        let back = Certificate::from_json(&cert.to_json()).map_err(err)?;
        ensure(back == cert && verify_certificate(&back).passed(), || {
            "emitted certificate fails".into()
        })?;
        certs += 1;
        let n = u64::try_from(cert.ring.modulus()).map_err(err)?;
        let shifts: Vec<i64> = if n == 0 {
            vec![-1, 1]
        } else {
            (1..n as i64).collect()
        };
        for (name, rec) in &cert.morphisms {
            for r in 0..rec.matrix.len() {
                for c in 0..rec.matrix[r].len() {
                    for &d in &shifts {
                        let mut t = cert.clone();
                        let v = &mut t.morphisms.get_mut(name).expect("present").matrix[r][c].0;
                        *v = &*v + Int::from(d);
                        if n > 0 {
                            *v = &*v % Int::from(n);
                        }
                        let rep = verify_certificate(&t);
                        ensure(!rep.passed(), || {
                            format!("{name}[{r}][{c}] += {d} accepted")
                        })?;
                        tampered += 1;
                        only_digest +=
                            usize::from(rep.failures().iter().all(|f| f.name == "digest"));
                    }
                }
            }
        }
    }
    Ok(format!(
        "{certs} certificates verify; {tampered} tamperings rejected ({only_digest} are other valid completions caught by the digest)"
    ))
}

fn random_mat(rng: &mut ChaCha8Rng, ring: &Ring, rows: usize, cols: usize, bound: i64) -> Mat {
    Mat::from_fn(ring, rows, cols, |_, _| {
        Int::from(rng.gen_range(-bound..=bound))
    })
}

fn divides(a: &Int, b: &Int) -> bool {
    if a.is_zero() {
        b.is_zero()
    } else {
        (b % a).is_zero()
    }
}

/// All vectors of `(Z/n)^len`.
fn all_vectors(n: u64, len: usize) -> Vec<Vec<Int>> {
    (0..n.pow(len as u32))
        .map(|mut i| {
            (0..len)
                .map(|_| {
                    let v = i % n;
                    i /= n;
                    Int::from(v)
                })
                .collect()
        })
        .collect()
}

fn normal_forms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let z = Ring::integers();
    for _ in 0..200 {
        let (m, n) = (rng.gen_range(0..=5), rng.gen_range(0..=5));
        let a = random_mat(&mut rng, &z, m, n, 9);
        let s = smith_normal_form(&a).map_err(err)?;
        let d = s.diagonal();
        ensure(d.windows(2).all(|w| divides(&w[0], &w[1])), || {
            format!("chain broken: {d:?}")
        })?;
        let one = |u: &Mat| {
            let d = determinant(u);
            d == Int::ONE || d == -Int::ONE
        };
        ensure(one(&s.u) && one(&s.v), || {
            "transforms are not unimodular".into()
        })?;
        ensure(
            s.u.mul(&a).and_then(|x| x.mul(&s.v)).map_err(err)? == s.d,
            || "u a v != d".into(),
        )?;
        let again = smith_normal_form(&s.d).map_err(err)?;
        ensure(again.d == s.d, || "Smith form is not idempotent".into())?;
    }
    for _ in 0..200 {
        let ring = Ring::modulo(rng.gen_range(2..=36));
        let (m, n) = (rng.gen_range(0..=5), rng.gen_range(0..=5));
        let a = random_mat(&mut rng, &ring, m, n, 40);
        let h = howell_form(&a).map_err(err)?;
        ensure(is_howell_shaped(&h.h), || {
            format!("not Howell shaped: {}", h.h)
        })?;
        ensure(
            h.u.mul(&a).map_err(err)? == h.h && h.back.mul(&h.h).map_err(err)? == a,
            || "spans differ".into(),
        )?;
        ensure(howell_form(&h.h).map_err(err)?.h == h.h, || {
            "Howell form is not idempotent".into()
        })?;
    }
    let mut systems = 0;
    for n in 2..=9u64 {
        let ring = Ring::modulo(n);
        for _ in 0..12 {
            let (rows, cols) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
            let a = random_mat(&mut rng, &ring, rows, cols, n as i64);
            let b: Vec<Int> = (0..rows).map(|_| Int::from(rng.gen_range(0..n))).collect();
            let space = all_vectors(n, cols);
            let hits: Vec<&Vec<Int>> = space
                .iter()
                .filter(|x| a.mul_vec(x).expect("shapes") == b)
                .collect();
            let sol = solve_linear(&a, &b).map_err(err)?;
            ensure(sol.is_some() == !hits.is_empty(), || {
                format!("solvability differs for {a} x = {b:?}")
            })?;
            if let Some(sol) = sol {
                ensure(a.mul_vec(&sol.x).map_err(err)? == b, || {
                    "particular solution is wrong".into()
                })?;
                // the kernel columns must span every homogeneous solution
                let zero = vec![Int::ZERO; rows];
                let homog: BTreeSet<Vec<Int>> = space
                    .iter()
                    .filter(|x| a.mul_vec(x).expect("shapes") == zero)
                    .cloned()
                    .collect();
                let gens = sol.kernel.columns();
                let mut span: BTreeSet<Vec<Int>> = [vec![Int::ZERO; cols]].into();
                let mut frontier: Vec<Vec<Int>> = span.iter().cloned().collect();
                while let Some(v) = frontier.pop() {
                    for k in &gens {
                        let w: Vec<Int> =
                            v.iter().zip(k).map(|(x, y)| ring.reduce(x + y)).collect();
                        if span.insert(w.clone()) {
                            frontier.push(w);
                        }
                    }
                }
                ensure(span == homog, || {
                    format!(
                        "kernel of {a} spans {} of {} solutions",
                        span.len(),
                        homog.len()
                    )
                })?;
                ensure(hits.len() == homog.len(), || {
                    "solution count differs".into()
                })?;
            }
            systems += 1;
        }
    }
    Ok(format!(
        "400 normal forms, {systems} systems match exhaustive search"
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("Z/4 grid: complete, obstruction and oracle agree", grid),
        ("obstructed witness and all-nonsplit completion", witness),
        ("connecting map of [W] equals the splice sum", identity),
        ("both comparison squares commute", commutativity),
        ("Ext from resolutions matches extension counts", ext_truth),
        ("long exact sequence is exact", les),
        ("solution torsor and its action", torsor_grid),
        ("over Z everything completes", integers),
        ("certificates verify and reject tampering", certificates),
        ("normal forms and linear solving", normal_forms),
    ];
    let wanted: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let id = k + 1;
        if !wanted.is_empty() && !wanted.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {id:>2} PASS  {name}: {detail} [{took:.2?}]"),
            Err(why) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {name}: {why} [{took:.2?}]");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
