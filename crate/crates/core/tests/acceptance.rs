//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Every tolerance is exact; runtime budgets are pinned below.

use std::time::{Duration, Instant};

use multibetti::corpus::{minimal_presentations, random_matrix, random_monomial_ideal, PresentationLimits};
use multibetti::degree::box_points;
use multibetti::koszul::{bass_at_prime, bass_in_window, betti_in_box, ext_complex, koszul_complex};
use multibetti::matroid::RankTable;
use multibetti::subset::{sort_canonical, subsets_of_size};
use multibetti::*;
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CORPUS_FIELD: Field = Field::Prime(10007);
const BETTI_CORPUS: usize = 200;
const BETTI_BUDGET: Duration = Duration::from_secs(300);
const SHARPNESS_BUDGET: Duration = Duration::from_secs(60);
const MATROID_SAMPLES: usize = 100;
const BASS_CORPUS: usize = 50;
const DUAL_CORPUS: usize = 50;

type Outcome = std::result::Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn d(v: &[i64]) -> DegreeVector {
    DegreeVector::from(v)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn betti_corpus() -> Vec<Presentation> {
    minimal_presentations(2024, BETTI_CORPUS, &[Field::Rational, CORPUS_FIELD], PresentationLimits::default())
}

fn matroid_corpus() -> Vec<Matroid> {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut out: Vec<Matroid> = (0..MATROID_SAMPLES)
        .map(|_| {
            let n = rng.gen_range(1..=8);
            let rows = rng.gen_range(1..=n.min(5));
            let zero_prob = [0.0, 0.3, 0.6][rng.gen_range(0..3)];
            Matroid::from_matrix(&random_matrix(&mut rng, CORPUS_FIELD, rows, n, zero_prob))
        })
        .collect();
    for n in 1..=8 {
        for r in 0..=n {
            out.push(Matroid::uniform(r, n, CORPUS_FIELD).unwrap());
        }
    }
    out
}

fn c1_betti_bound(corpus: &[Presentation]) -> Outcome {
    let start = Instant::now();
    let mut rational = 0;
    for (idx, p) in corpus.iter().enumerate() {
        ensure(p.vars() <= 3 && p.rows() <= 3 && p.cols() <= 6, || format!("sample {idx} exceeds limits"))?;
        let report = verify_betti(p).map_err(err)?;
        ensure(report.pass, || format!("sample {idx} fails: {:?}", report.checks))?;
        if p.field() == Field::Rational {
            rational += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed <= BETTI_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} presentations ({rational} over Q, {} over F_10007) in {elapsed:.2?}",
        corpus.len(),
        corpus.len() - rational
    ))
}

fn c2_sharpness() -> Outcome {
    let cases: [(usize, usize, &[u64]); 3] = [(1, 3, &[1, 3, 3, 1]), (2, 3, &[2, 3, 1]), (2, 5, &[2, 5, 10, 10, 3])];
    let mut notes = Vec::new();
    for (r, n, expected) in cases {
        let start = Instant::now();
        let p = generic_presentation(&GenexSpec::new(r, n)).map_err(err)?;
        let report = verify_sharpness(&p).map_err(err)?;
        let elapsed = start.elapsed();
        let mut totals = report.totals.clone();
        while totals.len() > expected.len() && totals.last() == Some(&0) {
            totals.pop();
        }
        ensure(totals == expected, || format!("genex({r},{n}) gave {:?}", report.totals))?;
        ensure(report.pass && report.checks.iter().all(|c| c.equal), || format!("genex({r},{n}) not sharp"))?;
        if (r, n) == (2, 5) {
            ensure(elapsed <= SHARPNESS_BUDGET, || format!("genex(2,5) took {elapsed:?}"))?;
        }
        notes.push(format!("({r},{n}) -> {totals:?} in {elapsed:.2?}"));
    }
    Ok(notes.join(", "))
}

fn c3_counting(corpus: &[Matroid]) -> Outcome {
    let mut levels = 0;
    let mut uniform_count = 0;
    for (idx, m) in corpus.iter().enumerate() {
        let (n, r) = (m.ground_size(), m.full_rank());
        let uniform = subsets_of_size(n, r).into_iter().all(|a| m.is_independent(a).unwrap());
        if uniform {
            uniform_count += 1;
        }
        let dual = m.dual();
        for k in 0..n {
            let tflats = m.tflats_of_level(k).map_err(err)?;
            let bound = binomial(n as i64, (r + k + 1) as i64);
            let count = BigUint::from(tflats.len());
            ensure(count <= bound, || format!("matroid {idx}: |T_{k}| = {} > {bound}", tflats.len()))?;
            if uniform {
                ensure(count == bound, || format!("uniform matroid {idx} (r={r}, n={n}): |T_{k}| = {}", tflats.len()))?;
            }
            let rho = n as i64 - r as i64 - k as i64 - 1;
            let mut complements: Vec<SubsetMask> = if rho >= 0 {
                dual.flats_of_rank(rho as usize).map_err(err)?.into_iter().map(|f| f.complement(n)).collect()
            } else {
                Vec::new()
            };
            sort_canonical(&mut complements);
            ensure(complements == tflats, || format!("matroid {idx}: complement bijection fails at k={k}"))?;
            levels += 1;
        }
    }
    Ok(format!("{} matroids ({uniform_count} uniform), {levels} levels", corpus.len()))
}

fn rank_axioms(t: &RankTable) -> std::result::Result<(), String> {
    let n = t.ground_size();
    let all = 1u64 << n;
    ensure(t.rank(SubsetMask(0)) == 0, || "r(empty) != 0".into())?;
    for a in 0..all {
        let a = SubsetMask(a);
        ensure(t.rank(a) <= a.len(), || format!("r({:?}) > |A|", a.indices()))?;
        for x in 0..n {
            let grown = t.rank(a.insert(x));
            ensure(grown == t.rank(a) || grown == t.rank(a) + 1, || format!("unit increase fails at {:?}+{x}", a.indices()))?;
        }
        for b in 0..all {
            let b = SubsetMask(b);
            ensure(t.rank(a.union(b)) + t.rank(a.intersection(b)) <= t.rank(a) + t.rank(b), || {
                format!("submodularity fails at {:?}, {:?}", a.indices(), b.indices())
            })?;
        }
    }
    Ok(())
}

fn c4_axioms(corpus: &[Matroid], betti: &[Presentation]) -> Outcome {
    let mut all: Vec<Matroid> = corpus.to_vec();
    for p in betti {
        all.push(p.coefficient_matroid().map_err(err)?);
    }
    let mut represented = 0;
    for (idx, m) in all.iter().enumerate() {
        let n = m.ground_size();
        let t = m.rank_table().map_err(err)?;
        let dt = m.dual().rank_table().map_err(err)?;
        rank_axioms(&t).map_err(|e| format!("matroid {idx}: {e}"))?;
        rank_axioms(&dt).map_err(|e| format!("dual of matroid {idx}: {e}"))?;
        ensure(m.dual().dual().rank_table().map_err(err)? == t, || format!("matroid {idx}: dual is not an involution"))?;
        for a in 0..1u64 << n {
            let a = SubsetMask(a);
            let formula = a.len() + t.rank(a.complement(n)) - t.full_rank();
            ensure(dt.rank(a) == formula, || format!("matroid {idx}: dual rank formula fails at {:?}", a.indices()))?;
        }
        // Independent oracle: the null space of the matrix represents the dual.
        if let Some(matrix) = m.matrix() {
            let orthogonal = matrix.kernel_basis().transpose();
            if orthogonal.rows() > 0 {
                let rep = Matroid::from_matrix(&orthogonal).rank_table().map_err(err)?;
                ensure(rep == dt, || format!("matroid {idx}: null-space representation disagrees with the dual"))?;
                represented += 1;
            }
        }
    }
    Ok(format!("{} matroids exhaustively, {represented} duals matched against null spaces", all.len()))
}

fn c5_homology(corpus: &[Presentation]) -> Outcome {
    let q = Field::Rational;
    let ideal = |vars: usize, gens: &[&[i64]]| {
        Presentation::from_monomial_ideal(q, vars, &gens.iter().map(|g| d(g)).collect::<Vec<_>>()).unwrap()
    };
    let anchors = [
        ("R/(x,y)", ideal(2, &[&[1, 0], &[0, 1]]), vec![1, 2, 1]),
        ("R/(x^2,xy,y^2)", ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]), vec![1, 3, 2]),
        ("k, m=3", Presentation::residue_field(q, DegreeVector::zeros(3)), vec![1, 3, 3, 1]),
    ];
    for (name, p, expected) in &anchors {
        let totals = betti_table(p).map_err(err)?.totals();
        ensure(&totals == expected, || format!("{name}: {totals:?}"))?;
    }
    let mut complexes = 0;
    for (idx, p) in corpus.iter().enumerate() {
        let m = p.vars();
        let table = betti_table(p).map_err(err)?;
        let rank = p.module_rank().map_err(err)? as i64;
        ensure(table.euler_characteristic() == rank, || format!("sample {idx}: Euler characteristic != rank {rank}"))?;
        let a = p.determining_degree().map_err(err)?;
        let lo = &DegreeVector::zeros(m) - &DegreeVector::ones(m);
        let hi = &a + &DegreeVector::ones(m);
        for b in box_points(&lo, &hi) {
            ensure(koszul_complex(p, &b).map_err(err)?.squares_to_zero(), || {
                format!("sample {idx}: Koszul d^2 != 0 at {}", b.key())
            })?;
            complexes += 1;
        }
        let wide = betti_in_box(p, &lo, &hi).map_err(err)?;
        ensure(wide == table, || format!("sample {idx}: widened Betti box differs"))?;
        if idx % 4 == 0 {
            let wide_lo = &lo - &DegreeVector::ones(m);
            for mask in 0..1u64 << m {
                let prime = SubsetMask(mask);
                for b in box_points(&lo, &a) {
                    ensure(ext_complex(p, prime, &b).map_err(err)?.squares_to_zero(), || {
                        format!("sample {idx}: cochain d^2 != 0 at {}", b.key())
                    })?;
                    complexes += 1;
                }
                let base = bass_at_prime(p, prime).map_err(err)?;
                let widened = bass_in_window(p, prime, &wide_lo, &hi).map_err(err)?;
                ensure(widened == base, || format!("sample {idx}: widened Bass window differs at {:?}", prime.indices()))?;
            }
        }
    }
    Ok(format!("anchors exact, {} Euler checks, {complexes} complexes with d^2 = 0, widening inert", corpus.len()))
}

fn c6_bass() -> Outcome {
    let q = Field::Rational;
    let k3 = Presentation::residue_field(q, DegreeVector::zeros(3));
    let report = verify_bass(&k3).map_err(err)?;
    ensure(report.totals == vec![1, 3, 3, 1], || format!("total_bass(k, m=3) = {:?}", report.totals))?;
    ensure(report.check(2).is_some_and(|c| c.equal) && report.check(3).is_some_and(|c| c.equal), || {
        "bound not attained at i = 2, 3 for k".into()
    })?;
    let free = Presentation::free(q, 1, vec![d(&[0])]).map_err(err)?;
    ensure(total_bass(&free).map_err(err)? == vec![1, 1], || "total_bass(R, m=1) != (1,1)".into())?;
    let square = Presentation::from_monomial_ideal(q, 1, &[d(&[2])]).map_err(err)?;
    ensure(total_bass(&square).map_err(err)? == vec![1, 1], || "total_bass(R/(x^2), m=1) != (1,1)".into())?;

    let mut rng = ChaCha8Rng::seed_from_u64(606);
    for idx in 0..BASS_CORPUS {
        let vars = rng.gen_range(1..=3);
        let ideal = random_monomial_ideal(&mut rng, vars, 5, 3);
        let field = if idx % 2 == 0 { q } else { CORPUS_FIELD };
        let p = ideal.to_presentation(field).map_err(err)?;
        let report = verify_bass(&p).map_err(err)?;
        ensure(report.pass, || format!("ideal {:?}: {:?}", ideal.gens, report.checks))?;
    }
    Ok(format!("anchors exact, {BASS_CORPUS} monomial quotients pass"))
}

fn c7_shift() -> Outcome {
    let mut count = 0;
    for d in 0..=3u64 {
        for i in 2 + d..=8 {
            for mu0 in 0..=3 {
                for mu1 in 0..=6 {
                    let shifted = bass_bound(mu0, mu1, i, d).map_err(err)?;
                    let plain = bass_bound(mu0, mu1, i - d, 0).map_err(err)?;
                    ensure(shifted == plain, || format!("mu=({mu0},{mu1}), i={i}, d={d}"))?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} cases"))
}

fn c8_alexander() -> Outcome {
    let ideal = |vars: usize, gens: &[&[i64]]| MonomialIdeal::new(vars, gens.iter().map(|g| d(g)).collect()).unwrap();
    let anchors = [
        (ideal(3, &[&[1, 1, 0], &[0, 1, 1]]), d(&[1, 1, 1]), ideal(3, &[&[0, 1, 0], &[1, 0, 1]])),
        (ideal(2, &[&[2, 1], &[1, 2]]), d(&[2, 2]), ideal(2, &[&[2, 0], &[1, 1], &[0, 2]])),
    ];
    for (i, a, expected) in &anchors {
        ensure(&alexander_dual(i, a).map_err(err)? == expected, || format!("dual of {:?}", i.gens))?;
        ensure(&alexander_dual_by_intersection(i, a).map_err(err)? == expected, || {
            format!("intersection dual of {:?}", i.gens)
        })?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    for _ in 0..DUAL_CORPUS {
        let vars = rng.gen_range(1..=3);
        let i = random_monomial_ideal(&mut rng, vars, 5, 3);
        let floor = i.gens.iter().fold(DegreeVector::zeros(vars), |acc, g| acc.join(g));
        let a = DegreeVector((0..vars).map(|j| rng.gen_range(floor[j]..=3)).collect());
        let dual = alexander_dual(&i, &a).map_err(err)?;
        ensure(dual == alexander_dual_by_intersection(&i, &a).map_err(err)?, || {
            format!("constructions disagree on {:?}", i.gens)
        })?;
        ensure(alexander_dual(&dual, &a).map_err(err)? == i, || format!("involution fails on {:?} at {}", i.gens, a.key()))?;
    }
    Ok(format!("anchors exact, {DUAL_CORPUS} random ideals"))
}

fn c9_probe() -> Outcome {
    let q = Field::Rational;
    let k2 = Presentation::residue_field(q, d(&[1, 1]));
    let report = miller_relation_probe(&k2, &k2, &d(&[2, 2])).map_err(err)?;
    ensure(report.degreewise_pass, || format!("m=2 mismatches: {:?}", report.mismatches))?;
    let k1 = Presentation::residue_field(q, d(&[1]));
    let report1 = miller_relation_probe(&k1, &k1, &d(&[2])).map_err(err)?;
    ensure(report1.degreewise_pass, || format!("m=1 mismatches: {:?}", report1.mismatches))?;
    let unshifted = Presentation::residue_field(q, d(&[0, 0]));
    let bad = miller_relation_probe(&k2, &unshifted, &d(&[2, 2])).map_err(err)?;
    ensure(!bad.degreewise_pass, || "unshifted candidate was accepted".into())?;
    let socle = bad.mismatches.iter().find(|m| m.i == 0 && m.b == d(&[1, 1]));
    ensure(socle.is_some_and(|m| m.betti == 0 && m.bass == 1), || "expected mismatch at b=(1,1) missing".into())?;
    Ok(format!(
        "{} comparisons match for m=2, {} for m=1; unshifted candidate flags {} mismatches",
        report.matches,
        report1.matches,
        bad.mismatches.len()
    ))
}

fn c10_specialization() -> Outcome {
    for n in 0..=12u64 {
        for i in 2..=12u64 {
            let got = betti_bound(1, n, 0, i).map_err(err)?;
            ensure(got == binomial(n as i64, i as i64), || format!("n={n}, i={i}: {got}"))?;
        }
    }
    Ok("n <= 12, 2 <= i <= 12".into())
}

fn main() {
    let start = Instant::now();
    let betti = betti_corpus();
    let matroids = matroid_corpus();
    let criteria: Vec<Criterion> = vec![
        ("betti bound on random minimal presentations", Box::new(|| c1_betti_bound(&betti))),
        ("sharpness of the generic examples", Box::new(c2_sharpness)),
        ("T-flat counting and complement bijection", Box::new(|| c3_counting(&matroids))),
        ("matroid rank axioms and duality", Box::new(|| c4_axioms(&matroids, &betti))),
        ("homology oracles", Box::new(|| c5_homology(&betti))),
        ("Bass numbers and their bound", Box::new(c6_bass)),
        ("Bass bound shift", Box::new(c7_shift)),
        ("Alexander duality", Box::new(c8_alexander)),
        ("duality probe anchors", Box::new(c9_probe)),
        ("cyclic specialization of the bound", Box::new(c10_specialization)),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS [{}] {name}: {detail}", n + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{}] {name}: {detail}", n + 1);
            }
        }
    }
    println!("{} of {} criteria passed in {:.2?}", criteria.len() - failed, criteria.len(), start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
