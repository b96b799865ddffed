//! Acceptance criteria, one line each. Exits non-zero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use common::*;
use pdt_core::divisor::{
    standard_normal_vector, valuation, DivisorContext, SupportedElement, WeilDivisor,
};
use pdt_core::fan::{projective_fan, Fan};
use pdt_core::ideal::{is_homogeneous, sigma_dimension, toric_ideal_from_points, Binomial};
use pdt_core::linalg::{combine, rank_qx, syzygy_basis, unit_vector, vec_add, vec_scale};
use pdt_core::semimodule::{AffineSemimodule, Face};
use pdt_core::{Lattice, SearchBounds, Verdict, ZxMatrix, ZxPoly, ZxVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn face(indices: &[usize]) -> Face {
    Face {
        indices: indices.to_vec(),
        witness: None,
        rank: 0,
    }
}

fn matrix(s: &AffineSemimodule) -> ZxMatrix {
    ZxMatrix::from_columns(s.generators(), s.ambient()).unwrap()
}

fn context(fan: &Fan) -> DivisorContext {
    DivisorContext::new(fan, bounds()).unwrap()
}

fn projective(n: usize) -> Fan {
    projective_fan(&simplex(n), bounds()).unwrap()
}

fn single_cone_examples() -> Vec<(&'static str, AffineSemimodule)> {
    vec![
        ("line", line()),
        ("planar", planar()),
        ("spatial", spatial()),
        ("unsaturated", unsaturated()),
        ("A1", affine_space(1)),
        ("A2", affine_space(2)),
        ("A3", affine_space(3)),
    ]
}

fn face_counts() -> Outcome {
    let expected: [(&str, AffineSemimodule, Vec<Vec<usize>>); 3] = [
        ("line", line(), vec![vec![], vec![0, 1]]),
        (
            "planar",
            planar(),
            vec![vec![], vec![0], vec![2], vec![0, 1, 2]],
        ),
        (
            "spatial",
            spatial(),
            vec![
                vec![],
                vec![0],
                vec![1],
                vec![2],
                vec![0, 1],
                vec![0, 2],
                vec![1, 2],
                vec![0, 1, 2, 3],
            ],
        ),
    ];
    for (name, s, want) in expected {
        let fl = s
            .enumerate_faces(s.default_bounds())
            .map_err(|e| e.to_string())?;
        ensure!(
            fl.is_complete(),
            "{name}: unresolved subsets {:?}",
            fl.unresolved
        );
        let got: Vec<Vec<usize>> = fl.faces.iter().map(|f| f.indices.clone()).collect();
        ensure!(got == want, "{name}: faces {got:?}");
    }
    Ok(())
}

fn normal_vectors() -> Outcome {
    let s = planar();
    let f1 = standard_normal_vector(&s, &face(&[0])).map_err(|e| e.to_string())?;
    let f2 = standard_normal_vector(&s, &face(&[2])).map_err(|e| e.to_string())?;
    ensure!(
        f1.values == v(&[&[], &[1], &[2]]),
        "planar F1 {:?}",
        f1.values
    );
    ensure!(
        f2.values == v(&[&[2], &[1], &[]]),
        "planar F2 {:?}",
        f2.values
    );
    let s = spatial();
    let expected = [
        (vec![1, 2], v(&[&[2, 1], &[], &[], &[1]])),
        (vec![0, 2], v(&[&[], &[2, 1], &[], &[1]])),
        (vec![0, 1], v(&[&[], &[], &[2, 1], &[1]])),
    ];
    for (ix, want) in expected {
        let nv = standard_normal_vector(&s, &face(&ix)).map_err(|e| e.to_string())?;
        ensure!(nv.values == want, "spatial facet {ix:?}: {:?}", nv.values);
    }
    let ctx = context(&projective(2));
    let e1 = unit_vector(2, 0);
    let e2 = unit_vector(2, 1);
    let table = [(0, [0, 1]), (1, [1, 0]), (2, [-1, -1])];
    for (k, [a, b]) in table {
        let got = (
            ctx.functional(k, &e1).unwrap(),
            ctx.functional(k, &e2).unwrap(),
        );
        ensure!(
            got == (p(&[a]), p(&[b])),
            "P2 functional {}: {got:?}",
            k + 1
        );
    }
    Ok(())
}

fn class_modules() -> Outcome {
    let mut cases: Vec<(String, Fan, &str)> = (1..=3)
        .map(|n| (format!("A{n}"), Fan::single(affine_space(n)), "0"))
        .collect();
    cases.push(("planar".into(), Fan::single(planar()), "Z[x]/(2)"));
    cases.push((
        "spatial".into(),
        Fan::single(spatial()),
        "Z[x]/(x+2) ⊕ Z[x]/(x+2)",
    ));
    cases.push(("P2".into(), projective(2), "free^1"));
    cases.push(("P3".into(), projective(3), "free^1"));
    for (name, fan, want) in cases {
        let m = context(&fan).class_module().map_err(|e| e.to_string())?;
        ensure!(m.shape == want, "{name}: Cl is {}", m.shape);
        ensure!(
            m.replay().map_err(|e| e.to_string())? == m.reduced,
            "{name}: log does not replay"
        );
    }
    Ok(())
}

fn picard() -> Outcome {
    for (name, s) in single_cone_examples() {
        let m = context(&Fan::single(s))
            .pic_module()
            .map_err(|e| e.to_string())?;
        ensure!(m.is_zero_module(), "{name}: Pic is {}", m.shape);
    }
    for n in [1, 2] {
        let m = context(&projective(n))
            .pic_module()
            .map_err(|e| e.to_string())?;
        ensure!(m.shape == "free^1", "P{n}: Pic is {}", m.shape);
    }
    Ok(())
}

fn smoothness() -> Outcome {
    let mut cases: Vec<(String, Fan, Option<bool>)> = Vec::new();
    for n in 1..=3 {
        cases.push((format!("A{n}"), Fan::single(affine_space(n)), Some(true)));
        cases.push((format!("P{n}"), projective(n), Some(true)));
    }
    cases.push(("planar".into(), Fan::single(planar()), Some(false)));
    cases.push(("spatial".into(), Fan::single(spatial()), None));
    cases.push(("line".into(), Fan::single(line()), None));
    for (name, fan, want) in cases {
        let report = context(&fan)
            .is_smooth_variety(bounds())
            .map_err(|e| format!("{name}: {e}"))?;
        let verdict = &report.verdict;
        ensure!(!verdict.is_unknown(), "{name}: smoothness undecided");
        if let Some(w) = want {
            ensure!(
                verdict.is_yes() == w,
                "{name}: smooth is {}",
                verdict.label()
            );
        }
        let (cl, pic) = (report.class_shape.unwrap(), report.pic_shape.unwrap());
        ensure!(
            verdict.is_yes() == (cl == pic),
            "{name}: verdict {} but Cl {cl}, Pic {pic}",
            verdict.label()
        );
    }
    Ok(())
}

fn toric_ideals() -> Outcome {
    let h = toric_ideal_from_points(&matrix(&planar())).map_err(|e| e.to_string())?;
    let want = Lattice::new(3, vec![v(&[&[1], &[-2], &[1]])]).unwrap();
    ensure!(
        h.support.equals(&want).unwrap(),
        "support {:?}",
        h.support.generators()
    );
    ensure!(h.support.is_toric(), "support is not saturated");
    let b = Binomial::from_difference(&v(&[&[1], &[-2], &[1]]));
    let flipped = Binomial::from_difference(&v(&[&[-1], &[2], &[-1]]));
    ensure!(
        b.plus == v(&[&[1], &[], &[1]]) && b.minus == v(&[&[], &[2], &[]]),
        "binomial {b:?}"
    );
    ensure!(
        h.generators.iter().any(|g| *g == b || *g == flipped),
        "generators {:?}",
        h.generators
    );
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..50 {
        let u = random_matrix(&mut rng);
        let syz = syzygy_basis(&u).map_err(|e| e.to_string())?;
        ensure!(syz.is_toric(), "Syz of {u:?} is not toric");
    }
    Ok(())
}

fn random_poly(rng: &mut ChaCha8Rng, deg: usize, range: i64) -> ZxPoly {
    let d = rng.gen_range(0..=deg);
    ZxPoly::from_i64s(
        &(0..=d)
            .map(|_| rng.gen_range(-range..=range))
            .collect::<Vec<_>>(),
    )
}

fn random_matrix(rng: &mut ChaCha8Rng) -> ZxMatrix {
    let (r, c) = (rng.gen_range(1..=3), rng.gen_range(1..=4));
    let rows: Vec<ZxVector> = (0..r)
        .map(|_| (0..c).map(|_| random_poly(rng, 2, 5)).collect())
        .collect();
    ZxMatrix::from_rows(&rows, c).unwrap()
}

fn rank_law() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for t in 0..200 {
        let u = random_matrix(&mut rng);
        let syz = syzygy_basis(&u).map_err(|e| e.to_string())?;
        ensure!(
            syz.rank() + rank_qx(&u) == u.cols(),
            "case {t}: rank law fails on {u:?}"
        );
        for g in syz.generators() {
            let image = u.mul_vec(g).unwrap();
            ensure!(
                image.iter().all(ZxPoly::is_zero),
                "case {t}: {g:?} is not a syzygy"
            );
        }
        let cols = Lattice::new(u.rows(), u.columns()).unwrap();
        let sat = cols.saturate();
        ensure!(
            sat.saturate().equals(&sat).unwrap(),
            "case {t}: saturation is not idempotent"
        );
        ensure!(
            sat.contains_lattice(&cols).unwrap(),
            "case {t}: saturation lost generators"
        );
    }
    Ok(())
}

fn homogeneity() -> Outcome {
    let u = matrix(&planar());
    let h = is_homogeneous(&u).map_err(|e| e.to_string())?;
    ensure!(h.answer, "planar example not homogeneous");
    let w = h.witness.ok_or("no witness")?;
    ensure!(w.v == v(&[&[1], &[]]) && w.g == p(&[0, 1]), "witness {w:?}");
    let tri = ZxMatrix::from_columns(&simplex(2), 2).unwrap();
    ensure!(
        !is_homogeneous(&tri).unwrap().answer,
        "{{0,e1,e2}} reported homogeneous"
    );
    let dims = (
        sigma_dimension(&u, false),
        sigma_dimension(&u, true),
        sigma_dimension(&tri, true),
    );
    ensure!(dims == (2, 1, 2), "sigma dimensions {dims:?}");
    Ok(())
}

fn fan_checks() -> Outcome {
    let fan = projective(2);
    let Verdict::Yes(cert) = fan.check_fan(bounds()).map_err(|e| e.to_string())? else {
        return Err("P2 fan check not Yes".into());
    };
    ensure!(
        cert.pairs == 3 && cert.triples == 1,
        "certified {} pairs, {} triples",
        cert.pairs,
        cert.triples
    );
    let cls = fan.classify_faces(bounds()).map_err(|e| e.to_string())?;
    let primes: Vec<Vec<(usize, Vec<usize>)>> = cls
        .prime_classes()
        .iter()
        .map(|c| {
            c.members
                .iter()
                .map(|m| (m.cone, m.face.indices.clone()))
                .collect()
        })
        .collect();
    let want = vec![
        vec![(0, vec![0]), (1, vec![0])],
        vec![(0, vec![1]), (2, vec![0])],
        vec![(1, vec![1]), (2, vec![1])],
    ];
    ensure!(primes == want, "classes {primes:?}");
    Ok(())
}

fn cartier() -> Outcome {
    let s = planar();
    let ctx = context(&Fan::single(s.clone()));
    let d12 = WeilDivisor {
        coeffs: v(&[&[1], &[1]]),
    };
    let Verdict::Yes(data) = ctx.is_cartier(&d12).map_err(|e| e.to_string())? else {
        return Err("D1+D2 not Cartier".into());
    };
    ensure!(
        data.characters.len() == 1 && data.characters[0].u == s.generators()[1],
        "{data:?}"
    );
    let d1 = WeilDivisor::prime(2, 1);
    ensure!(ctx.is_cartier(&d1).unwrap().is_no(), "D1 reported Cartier");

    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let fans = [Fan::single(planar()), Fan::single(spatial()), projective(2)];
    let ctxs: Vec<DivisorContext> = fans.iter().map(context).collect();
    for t in 0..100 {
        let ctx = &ctxs[t % ctxs.len()];
        let fan = ctx.fan();
        let n = fan.ambient();
        let gens = fan.md().generators();
        let mut pick = || -> ZxVector {
            let cs: Vec<ZxPoly> = gens.iter().map(|_| random_poly(&mut rng, 2, 3)).collect();
            combine(gens, &cs, n)
        };
        let (a, b) = (pick(), pick());
        let g = random_poly(&mut rng, 2, 3);
        let da = ctx.div_character(&a).unwrap();
        let db = ctx.div_character(&b).unwrap();
        ensure!(
            ctx.div_character(&vec_add(&a, &b)).unwrap() == da.add(&db),
            "case {t}: additivity"
        );
        ensure!(
            ctx.div_character(&vec_scale(&a, &g)).unwrap() == da.scale(&g),
            "case {t}: scaling"
        );
        if t % ctxs.len() == 0 {
            let s = &fan.cones()[0];
            for prime in ctx.primes() {
                let nv = &prime.normals[0];
                let va = valuation(s, nv, &SupportedElement::character(a.clone())).unwrap();
                let vb = valuation(s, nv, &SupportedElement::character(b.clone())).unwrap();
                let vab = valuation(s, nv, &SupportedElement::character(vec_add(&a, &b))).unwrap();
                ensure!(vab == &va + &vb, "case {t}: valuation of a product");
            }
        }
    }
    Ok(())
}

fn excision() -> Outcome {
    let ctx = context(&projective(2));
    let omitted = [3, 2, 1];
    for (cone, id) in omitted.into_iter().enumerate() {
        let ex = ctx.excision(cone, bounds()).map_err(|e| e.to_string())?;
        ensure!(
            ex.omitted == vec![id],
            "cone {cone}: omitted {:?}",
            ex.omitted
        );
        ensure!(ex.surjective, "cone {cone}: restriction not onto");
        ensure!(
            ex.chart_shape == "0" && ex.quotient_shape == "0",
            "cone {cone}: {ex:?}"
        );
        ensure!(ex.exact, "cone {cone}: not exact");
    }
    Ok(())
}

fn saturation_counterexample() -> Outcome {
    let s = unsaturated();
    let report = s
        .face_saturation_check(s.default_bounds())
        .map_err(|e| e.to_string())?;
    let flagged: Vec<Vec<usize>> = report
        .iter()
        .filter(|r| r.violation.is_some())
        .map(|r| r.indices.clone())
        .collect();
    ensure!(flagged == vec![vec![0]], "flagged {flagged:?}");
    ensure!(
        s.generators()[0] == v(&[&[2], &[]]),
        "flagged face is not P[x]((2,0))"
    );
    Ok(())
}

fn subsets(m: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << m).map(move |mask| (0..m).filter(|i| mask & (1 << i) != 0).collect())
}

fn honesty() -> Outcome {
    let starved = SearchBounds::starved();
    for (name, s) in single_cone_examples() {
        let b = s.default_bounds();
        for ix in subsets(s.len()) {
            let full = s.is_face(&ix, b).unwrap();
            ensure!(
                !full.is_unknown(),
                "{name} {ix:?}: face test undecided at default bounds"
            );
            let low = s.is_face(&ix, starved).unwrap();
            match &low {
                Verdict::Unknown(_) => {}
                Verdict::Yes(w) => ensure!(
                    full.is_yes() && s.separates(&ix, w).unwrap(),
                    "{name} {ix:?}: starved Yes"
                ),
                Verdict::No(why) => ensure!(
                    full.is_no() && s.refutes_face(&ix, why).unwrap(),
                    "{name} {ix:?}: starved No"
                ),
            }
        }
        let g = s.generators();
        let n = s.ambient();
        let mut queries: Vec<ZxVector> = g.to_vec();
        queries.extend(g.iter().map(|u| vec_scale(u, &p(&[-1]))));
        queries.extend(g.iter().map(|u| vec_scale(u, &p(&[1, 1]))));
        if g.len() > 1 {
            queries.push(vec_add(&g[0], &g[1]));
            queries.push(combine(
                g,
                &(0..g.len()).map(|i| p(&[i as i64 - 1])).collect::<Vec<_>>(),
                n,
            ));
        }
        for w in &queries {
            let full = s.sm_member(w, b).unwrap();
            ensure!(
                !full.is_unknown(),
                "{name}: membership of {w:?} undecided at default bounds"
            );
            match s.sm_member(w, starved).unwrap() {
                Verdict::Unknown(_) => {}
                Verdict::Yes(c) => ensure!(
                    full.is_yes()
                        && combine(g, &c, n) == *w
                        && c.iter().all(ZxPoly::in_positive_cone),
                    "{name}: starved membership Yes for {w:?}"
                ),
                Verdict::No(why) => {
                    ensure!(
                        full.is_no() && s.refutes_member(w, &why).unwrap(),
                        "{name}: starved No for {w:?}"
                    )
                }
            }
        }
        ensure!(
            !s.is_pointed(b).unwrap().is_unknown(),
            "{name}: pointedness undecided"
        );
        ensure!(
            s.enumerate_faces(b).unwrap().is_complete(),
            "{name}: faces incomplete"
        );
        let low = s.enumerate_faces(starved).unwrap();
        let high = s.enumerate_faces(b).unwrap();
        for f in &low.faces {
            ensure!(
                high.faces.iter().any(|h| h.indices == f.indices),
                "{name}: starved face {:?}",
                f.indices
            );
        }
    }
    for n in 1..=3 {
        let fan = projective(n);
        let full = fan.check_fan(bounds()).unwrap();
        ensure!(full.is_yes(), "P{n}: fan check {}", full.label());
        let low = fan.check_fan(starved).unwrap();
        ensure!(
            low.is_unknown() || low.label() == full.label(),
            "P{n}: starved fan check {}",
            low.label()
        );
        let report = context(&fan).is_smooth_variety(bounds()).unwrap();
        ensure!(!report.verdict.is_unknown(), "P{n}: smoothness undecided");
    }
    Ok(())
}

fn main() -> ExitCode {
    std::panic::set_hook(Box::new(|_| {}));
    let criteria: [Criterion; 13] = [
        ("face counts", face_counts),
        ("normal vectors", normal_vectors),
        ("class modules", class_modules),
        ("Picard modules", picard),
        ("smoothness", smoothness),
        ("toric ideals", toric_ideals),
        ("rank law", rank_law),
        ("homogeneity", homogeneity),
        ("fan checks", fan_checks),
        ("Cartier divisors", cartier),
        ("excision", excision),
        ("saturation counterexample", saturation_counterexample),
        ("solver honesty", honesty),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(()) => println!("criterion {:>2} PASS {name} ({ms} ms)", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name} ({ms} ms): {why}", k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
