//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use itertools::Itertools;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use eqpieri::diagram;
use eqpieri::gkm::{self, Localization};
use eqpieri::pieri::{self, PieriCoefficient, Route};
use eqpieri::polyring::Polynomial;
use eqpieri::restrict_a::{restriction_coefficient, restriction_coefficient_symfn, schur_identity_check, RestrictionInstance};
use eqpieri::schubert::{self, GrassmannianSpace, SchubertSymbol};
use eqpieri::LieType;

struct Outcome {
    pass: bool,
    detail: String,
    /// Failure that is a documented property of the mathematics rather than
    /// of the implementation.
    known: bool,
}

impl Outcome {
    fn check(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into(), known: false }
    }
}

fn sym(v: &[usize]) -> SchubertSymbol {
    SchubertSymbol::from_set(v.iter().copied())
}

fn t(n: usize, i: usize) -> Polynomial {
    Polynomial::var(n, i - 1)
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed())
}

fn criterion_1() -> Outcome {
    let s = GrassmannianSpace::new(LieType::A, 3, 8).unwrap();
    let (c, dt) = timed(|| pieri::pieri_coefficient(&s, &sym(&[1, 4, 8]), &sym(&[1, 3, 6]), 5).unwrap());
    let want = &(&t(8, 2) - &t(8, 1)) * &(&t(8, 5) - &t(8, 1));
    Outcome::check(c.value == want && dt < Duration::from_secs(1), format!("{} in {dt:?}", c.value))
}

fn criterion_2() -> Outcome {
    let s = GrassmannianSpace::new(LieType::C, 3, 4).unwrap();
    let (c, dt) = timed(|| pieri::pieri_coefficient(&s, &sym(&[2, 4, 8]), &sym(&[1, 3, 5]), 5).unwrap());
    let h = |i, j| &t(8, i) - &t(8, j);
    // (I, unspecialized) in the order listed for this example
    let listed = [
        (vec![2, 4], &h(2, 1) * &h(4, 1)),
        (vec![2], &h(2, 1) * &h(5, 1)),
        (vec![4], &h(4, 1) * &h(7, 1)),
        (vec![], &h(5, 1) * &h(7, 1)),
    ];
    let ours: BTreeMap<Vec<usize>, Polynomial> =
        c.terms.iter().map(|x| (x.subset.clone(), x.unspecialized.clone())).collect();
    let terms_ok = c.terms.len() == 4 && listed.iter().all(|(i, p)| ours.get(i) == Some(p));
    let want = (&t(4, 1) * &t(4, 1)).scale_i64(4);
    Outcome::check(
        c.value == want && terms_ok && dt < Duration::from_secs(1),
        format!("{} with {} matching terms in {dt:?}", c.value, c.terms.len()),
    )
}

fn criterion_3() -> Outcome {
    let s = GrassmannianSpace::new(LieType::B, 2, 3).unwrap();
    let (c, dt) = timed(|| pieri::pieri_coefficient(&s, &sym(&[3, 6]), &sym(&[1, 6]), 3).unwrap());
    let want = &(&t(3, 1) * &t(3, 3)) + &(&t(3, 1) * &t(3, 1));
    let route_ok = c.route == Route::Halving && c.terms.len() == 1 && c.terms[0].nu == sym(&[1, 3, 4, 6]);
    Outcome::check(
        c.value == want && route_ok && dt < Duration::from_secs(1),
        format!("{} via {:?} in {dt:?}", c.value, c.route),
    )
}

fn criterion_4() -> Outcome {
    let s = GrassmannianSpace::new(LieType::D, 1, 4).unwrap();
    let (c, dt) = timed(|| pieri::pieri_coefficient(&s, &sym(&[2]), &sym(&[1]), 4).unwrap());
    let n = 4;
    let a = -&(&t(n, 1) + &t(n, 2));
    let b = &(-&(&t(n, 4) + &t(n, 2))) * &(&t(n, 4) - &t(n, 2));
    let d = &(-&(&t(n, 2) + &t(n, 1))) * &(-&(&t(n, 3) + &t(n, 1)));
    let want = &a * &(&b + &d);
    let route_ok = c.route == Route::TypeDRestriction && c.m_prime == Some(2);
    Outcome::check(
        c.value == want && route_ok && dt < Duration::from_secs(10),
        format!("{} via {:?} in {dt:?}", c.value, c.route),
    )
}

struct SweepEntry {
    lambda: SchubertSymbol,
    mu: SchubertSymbol,
    p: usize,
    arrow: bool,
    ours: PieriCoefficient,
    oracle: Polynomial,
}

struct Sweep {
    space: GrassmannianSpace,
    entries: Vec<SweepEntry>,
}

fn sweep_spaces() -> Vec<GrassmannianSpace> {
    vec![
        GrassmannianSpace::new(LieType::A, 2, 5).unwrap(),
        GrassmannianSpace::new(LieType::C, 2, 3).unwrap(),
        GrassmannianSpace::new(LieType::B, 2, 3).unwrap(),
        GrassmannianSpace::new(LieType::D, 2, 4).unwrap(),
    ]
}

fn run_sweep(space: GrassmannianSpace) -> Sweep {
    let loc = Localization::new(&space);
    let mut entries = Vec::new();
    for p in 1..=space.p_max() {
        for lambda in loc.symbols() {
            let kappa = gkm::special_class_for(&space, lambda, p).unwrap();
            let oracle = loc.product(lambda, &kappa).unwrap();
            for mu in loc.symbols() {
                let ours = pieri::pieri_coefficient(&space, lambda, mu, p).unwrap();
                entries.push(SweepEntry {
                    lambda: lambda.clone(),
                    mu: mu.clone(),
                    p,
                    arrow: diagram::arrow(&space, lambda, mu).unwrap(),
                    ours,
                    oracle: oracle.get(mu).cloned().unwrap_or_else(|| Polynomial::zero(space.n)),
                });
            }
        }
    }
    Sweep { space, entries }
}

fn criterion_5(sweeps: &[Sweep], dt: Duration) -> Outcome {
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for s in sweeps {
        for e in &s.entries {
            if e.arrow {
                checked += 1;
            }
            if e.ours.value != e.oracle {
                mismatches.push(format!("{} {}→{} p={}: {} vs {}", s.space, e.lambda, e.mu, e.p, e.ours.value, e.oracle));
            }
        }
    }
    let detail = match mismatches.first() {
        None => format!("{checked} arrow triples (and every other pair) agree with the oracle in {dt:?}"),
        Some(m) => format!("{} mismatches, first {m}", mismatches.len()),
    };
    Outcome::check(mismatches.is_empty() && checked > 0, detail)
}

fn criterion_6(sweeps: &[Sweep]) -> Outcome {
    let mut bad = Vec::new();
    let mut top_c = 0;
    for s in sweeps {
        for e in &s.entries {
            let c0 = e.ours.value.constant_term();
            if c0 != e.oracle.constant_term() {
                bad.push(format!("{} {} {} p={}", s.space, e.lambda, e.mu, e.p));
            }
            if s.space.lie_type == LieType::C && e.arrow {
                let cl = schubert::codim(&s.space, &e.lambda).unwrap();
                let cm = schubert::codim(&s.space, &e.mu).unwrap();
                if cm == cl + e.p {
                    top_c += 1;
                    let q = diagram::build(&s.space, &e.lambda, &e.mu, e.p).unwrap().q.len();
                    if c0 != BigInt::from(1u64 << q) {
                        bad.push(format!("{} {} {} p={}: {c0} ≠ 2^{q}", s.space, e.lambda, e.mu, e.p));
                    }
                }
            }
        }
    }
    let detail = match bad.first() {
        None => format!("{top_c} type C top-degree coefficients equal 2^#Q; all constant terms match the oracle"),
        Some(b) => format!("{} failures, first {b}", bad.len()),
    };
    Outcome::check(bad.is_empty() && top_c > 0, detail)
}

fn criterion_7(sweeps: &[Sweep]) -> Outcome {
    let mut nonzero = 0;
    let mut bad = Vec::new();
    for s in sweeps {
        for e in &s.entries {
            if e.ours.value.is_zero() {
                continue;
            }
            nonzero += 1;
            match &e.ours.certificate {
                Some(cert) if cert.expand_to_weights() == e.ours.value => {}
                _ => bad.push(format!("{} {} {} p={}", s.space, e.lambda, e.mu, e.p)),
            }
        }
    }
    let detail = match bad.first() {
        None => format!("{nonzero} nonzero coefficients certified"),
        Some(b) => format!("{} certificate failures, first {b}", bad.len()),
    };
    Outcome::check(bad.is_empty(), detail)
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut random_ok = 0;
    for _ in 0..1000 {
        let r = rng.gen_range(1..=5);
        let p = rng.gen_range(1..=5);
        let mut x: Vec<i64> = Vec::new();
        while x.len() < r {
            let v = rng.gen_range(-20..=20);
            if !x.contains(&v) {
                x.push(v);
            }
        }
        let y: Vec<i64> = (0..p + r - 1).map(|_| rng.gen_range(-20..=20)).collect();
        if schur_identity_check(&x, &y).unwrap() {
            random_ok += 1;
        }
    }
    let mut exhaustive = 0;
    let mut mismatch = None;
    for big_n in 1..=10usize {
        for m in 1..=big_n {
            for nu in (1..=big_n).combinations(m) {
                for p in 0..=4 {
                    let inst = RestrictionInstance::new(big_n, SchubertSymbol::from_set(nu.clone()), p).unwrap();
                    exhaustive += 1;
                    if restriction_coefficient(&inst) != restriction_coefficient_symfn(&inst) && mismatch.is_none() {
                        mismatch = Some(format!("N={big_n} ν={nu:?} p={p}"));
                    }
                }
            }
        }
    }
    Outcome::check(
        random_ok == 1000 && mismatch.is_none(),
        format!(
            "{random_ok}/1000 random identity checks; {exhaustive} exhaustive instances{}",
            mismatch.map(|m| format!(", mismatch at {m}")).unwrap_or_default()
        ),
    )
}

fn criterion_9() -> Outcome {
    let mut pivots = 0;
    let mut chats = 0;
    let mut bad = Vec::new();
    let sg = GrassmannianSpace::new(LieType::C, 2, 3).unwrap();
    for (l, u) in schubert::enumerate_symbols(&sg).iter().cartesian_product(schubert::enumerate_symbols(&sg).iter()) {
        if !diagram::arrow(&sg, l, u).unwrap() {
            continue;
        }
        for p in 1..=sg.p_max() {
            let base = pieri::pieri_coefficient(&sg, l, u, p).unwrap();
            let data = diagram::build(&sg, l, u, p).unwrap();
            for pv in data.pivot_candidates() {
                pivots += 1;
                let alt = pieri::pieri_coefficient_with_pivot(&sg, l, u, p, &pv).unwrap();
                if alt.value != base.value {
                    bad.push(format!("{sg} {l} {u} p={p} P={pv:?}"));
                }
            }
        }
    }
    for space in [
        GrassmannianSpace::new(LieType::B, 2, 3).unwrap(),
        GrassmannianSpace::new(LieType::D, 2, 4).unwrap(),
        GrassmannianSpace::new(LieType::B, 2, 5).unwrap(),
        GrassmannianSpace::new(LieType::D, 2, 5).unwrap(),
        GrassmannianSpace::new(LieType::D, 3, 6).unwrap(),
    ] {
        let symbols = schubert::enumerate_symbols(&space);
        for (l, u) in symbols.iter().cartesian_product(symbols.iter()) {
            if !diagram::arrow(&space, l, u).unwrap() {
                continue;
            }
            for p in 1..=space.p_max() {
                let data = diagram::build(&space, l, u, p).unwrap();
                if data.q.len() < 2 {
                    continue;
                }
                let base = pieri::pieri_coefficient(&space, l, u, p).unwrap();
                for &c in &data.q {
                    chats += 1;
                    let alt = pieri::pieri_coefficient_with_chat(&space, l, u, p, c).unwrap();
                    if alt.value != base.value {
                        bad.push(format!("{space} {l} {u} p={p} ĉ={c}"));
                    }
                }
            }
        }
    }
    let detail = match bad.first() {
        None => format!("{pivots} pivot sets and {chats} choices of ĉ give identical values"),
        Some(b) => format!("{} disagreements, first {b}", bad.len()),
    };
    Outcome::check(bad.is_empty() && pivots > 0 && chats > 0, detail)
}

fn criterion_10(sweeps: &[Sweep]) -> Outcome {
    let mut total = 0;
    let mut documented = Vec::new();
    let mut other = Vec::new();
    for s in sweeps {
        for e in &s.entries {
            total += 1;
            let expected = pieri::expected_nonzero(&s.space, &e.lambda, &e.mu, e.p).unwrap();
            let nonzero = !e.ours.value.is_zero();
            if expected == nonzero {
                continue;
            }
            let label = format!("{} {}→{} p={}", s.space, e.lambda, e.mu, e.p);
            let degree_zero_maximal = expected
                && e.ours.route == Route::TypeDRestriction
                && e.ours.m_prime == Some(s.space.n)
                && e.ours.p_prime == Some(0);
            if degree_zero_maximal {
                documented.push(label);
            } else {
                other.push(label);
            }
        }
    }
    if documented.is_empty() && other.is_empty() {
        return Outcome::check(true, format!("{total} triples follow the stated support"));
    }
    let mut detail = format!(
        "{} of {total} triples satisfy the stated hypotheses but vanish ({}), all through a degree-zero restriction on OG(n,2n)",
        documented.len(),
        documented.iter().join(", ")
    );
    if !other.is_empty() {
        detail = format!("{} unexplained disagreements, first {}; {detail}", other.len(), other[0]);
    }
    Outcome { pass: false, detail, known: other.is_empty() }
}

fn main() -> ExitCode {
    let mut outcomes: Vec<(usize, Outcome)> =
        vec![(1, criterion_1()), (2, criterion_2()), (3, criterion_3()), (4, criterion_4())];
    let (sweeps, dt) = timed(|| sweep_spaces().into_iter().map(run_sweep).collect::<Vec<_>>());
    outcomes.push((5, criterion_5(&sweeps, dt)));
    outcomes.push((6, criterion_6(&sweeps)));
    outcomes.push((7, criterion_7(&sweeps)));
    outcomes.push((8, criterion_8()));
    outcomes.push((9, criterion_9()));
    outcomes.push((10, criterion_10(&sweeps)));

    let mut unexpected = false;
    for (k, o) in &outcomes {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {k:>2}: {tag}  {}", o.detail);
        if !o.pass && !o.known {
            unexpected = true;
        }
    }
    if unexpected {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
