//! Acceptance suite. Run with `cargo test -p gammaforms-core --test acceptance`.
//! Prints one PASS/FAIL line per criterion and exits non-zero on failure.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use gammaforms_core::classgroup::{class_group, dirichlet_compose, prepare_coprime, verify_iso_with_scaled, FormClassGroup, SearchLimit};
use gammaforms_core::forms::{cm_point, kronecker};
use gammaforms_core::fundomain::{self, elliptic_data, gamma_k, sym_inverse, SymmetricResidues};
use gammaforms_core::genus::{find_representations, genus_table, principal_genus_congruences, PrimeClass};
use gammaforms_core::ideal::{ideal_from_form, ideal_mul};
use gammaforms_core::reduction::{canonical_rep, enumerate_reduced, equivalent_gamma0, is_reduced_gamma0_p_with};
use gammaforms_core::Form;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use rand::Rng;

const TABLES_BUDGET: Duration = Duration::from_secs(1);
const ISO_BUDGET: Duration = Duration::from_secs(60);
const MAX_ORACLE_ORDER: usize = 30;
const SAMPLES_PER_PAIR: usize = 1000;
const PRIME_BOUND: u64 = 2000;
const SECTION4_PRIMES: [i64; 7] = [5, 7, 11, 13, 17, 19, 23];
const SAMPLES_PER_PRIME: usize = 500;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn set(v: &[(i64, i64, i64)]) -> BTreeSet<Form> {
    v.iter().map(|&(a, b, c)| f(a, b, c)).collect()
}

// (D, N) with |DN²| ≤ 2000
fn iso_grid() -> Vec<(i64, u64)> {
    let mut out = Vec::new();
    for d in GRID_D {
        for n in GRID_N {
            if d.unsigned_abs() * n * n <= 2000 {
                out.push((d, n));
            }
        }
    }
    out
}

fn c1_tables() -> Outcome {
    let start = Instant::now();
    let expected = [
        (-3, set(&[(1, 1, 1)])),
        (-4, set(&[(1, 0, 1), (2, 2, 1)])),
        (-7, set(&[(1, 1, 2), (2, 1, 1), (2, -1, 1)])),
        (-8, set(&[(1, 0, 2), (2, 0, 1), (3, 2, 1)])),
    ];
    for (d, want) in &expected {
        let got: BTreeSet<Form> = enumerate_reduced(&disc(*d), lvl(2)).map_err(|e| e.to_string())?.into_iter().collect();
        ensure(got == *want, || format!("D={d}: got {got:?}"))?;
    }
    let t = start.elapsed();
    ensure(t < TABLES_BUDGET, || format!("took {t:?}"))?;
    Ok(format!("4 tables, {t:?}"))
}

fn c2_genus() -> Outcome {
    let t = genus_table(&disc(-28), lvl(2)).map_err(|e| e.to_string())?;
    let big = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    ensure(t.ker_chi == big(&[1, 9, 11, 15, 23, 25]), || format!("ker = {:?}", t.ker_chi))?;
    ensure(t.h == big(&[1, 9, 25]), || format!("H = {:?}", t.h))?;
    ensure(t.cosets.len() == 2 && t.cosets[1] == big(&[11, 15, 23]), || format!("cosets = {:?}", t.cosets))?;
    ensure(t.genus(0) == [&f(1, 0, 7)] && t.genus(1) == [&f(7, 0, 1)], || format!("assignment = {:?}", t.assignment))?;
    Ok("ker, H, cosets and genera match".into())
}

fn c3_iso() -> Outcome {
    let start = Instant::now();
    let grid = iso_grid();
    for &(d, n) in &grid {
        let r = verify_iso_with_scaled(&disc(d), lvl(n)).map_err(|e| format!("D={d} N={n}: {e}"))?;
        let h = brute_class_number(d * (n * n) as i64);
        ensure(r.isomorphic && r.rhs_order == h, || format!("D={d} N={n}: {r:?}, oracle h = {h}"))?;
    }
    let t = start.elapsed();
    ensure(t < ISO_BUDGET, || format!("took {t:?}"))?;
    Ok(format!("{} pairs, {t:?}", grid.len()))
}

fn oracle_check(g: &FormClassGroup, mismatches: &mut Vec<String>) -> Result<usize, String> {
    let level = g.level;
    let n = BigInt::from(level.get());
    let mut pairs = 0;
    for e1 in &g.elements {
        for e2 in &g.elements {
            let q1 = &e1.rep;
            let (q2, _) = prepare_coprime(&e2.rep, &(&q1.a * &n), level, &SearchLimit::Default).map_err(|e| e.to_string())?;
            let c = dirichlet_compose(q1, &q2, level).map_err(|e| e.to_string())?;
            let lhs = ideal_mul(&ideal_from_form(q1).map_err(|e| e.to_string())?, &ideal_from_form(&q2).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            if lhs != ideal_from_form(&c).map_err(|e| e.to_string())? {
                mismatches.push(format!("{} N={}: {q1} * {q2}", g.disc, level.get()));
            }
            // the product class must match the Cayley table too
            if g.index_of(&c).map_err(|e| e.to_string())? != g.mul(g.index_of(q1).unwrap(), g.index_of(&e2.rep).unwrap()) {
                mismatches.push(format!("{} N={}: class of {c}", g.disc, level.get()));
            }
            pairs += 1;
        }
    }
    Ok(pairs)
}

fn c4_oracle() -> Outcome {
    let mut mismatches = Vec::new();
    let (mut groups, mut pairs) = (0, 0);
    for (d, n) in iso_grid() {
        let lhs = class_group(&disc(d), lvl(n)).map_err(|e| e.to_string())?;
        let rhs = class_group(&disc(d * (n * n) as i64), lvl(1)).map_err(|e| e.to_string())?;
        for g in [lhs, rhs] {
            if g.order() <= MAX_ORACLE_ORDER {
                pairs += oracle_check(&g, &mut mismatches)?;
                groups += 1;
            }
        }
    }
    ensure(mismatches.is_empty(), || format!("{} mismatches, first {}", mismatches.len(), mismatches[0]))?;
    Ok(format!("{groups} groups, {pairs} pairs"))
}

fn c5_uniqueness() -> Outcome {
    let mut rng = rng(0x5eed);
    let mut samples = 0;
    for d in GRID_D {
        for n in GRID_N {
            let level = lvl(n);
            let reduced = enumerate_reduced(&disc(d), level).map_err(|e| e.to_string())?;
            for _ in 0..SAMPLES_PER_PAIR {
                let q = random_form(&mut rng, d, 30);
                let mut hits = 0;
                for r in &reduced {
                    if equivalent_gamma0(&q, r, level).map_err(|e| e.to_string())?.is_some() {
                        hits += 1;
                    }
                }
                ensure(hits == 1, || format!("D={d} N={n}: {q} matches {hits} reduced forms"))?;
                let t1 = q.act(&random_gamma0(&mut rng, n, 20));
                let t2 = q.act(&random_gamma0(&mut rng, n, 20));
                let c1 = canonical_rep(&t1, level).map_err(|e| e.to_string())?;
                let c2 = canonical_rep(&t2, level).map_err(|e| e.to_string())?;
                ensure(c1 == c2, || format!("D={d} N={n}: {t1} -> {c1}, {t2} -> {c2}"))?;
                samples += 1;
            }
        }
    }
    Ok(format!("{samples} samples"))
}

fn c6_primes() -> Outcome {
    let primes = odd_primes_below(PRIME_BOUND);
    let (mut checked, mut cosets, mut outside) = (0, 0, 0);
    for (d, n) in iso_grid() {
        let level = lvl(n);
        let reduced = enumerate_reduced(&disc(d), level).map_err(|e| e.to_string())?;
        let table = genus_table(&disc(d), level).map_err(|e| e.to_string())?;
        for &p in &primes {
            let pb = BigInt::from(p);
            if (d % p as i64) == 0 {
                continue;
            }
            let mut witnesses = Vec::new();
            for r in &reduced {
                if find_representations(r, &pb, level).map_err(|e| e.to_string())?.iter().any(|x| x.admissible) {
                    witnesses.push(r);
                }
            }
            let k = kronecker(&BigInt::from(d), &pb);
            ensure((k == 1) == !witnesses.is_empty(), || format!("D={d} N={n} p={p}: kronecker {k}, {} witnesses", witnesses.len()))?;
            checked += 1;
            if k != 1 {
                continue;
            }
            match table.classify(p).map_err(|e| e.to_string())? {
                PrimeClass::Genus { coset, .. } => {
                    for w in &witnesses {
                        let genus = table.assignment.iter().find(|(q, _)| q == *w).map(|(_, c)| *c);
                        ensure(genus == Some(coset), || format!("D={d} N={n} p={p}: witness {w} in genus {genus:?}, [p] in coset {coset}"))?;
                    }
                    cosets += 1;
                }
                PrimeClass::OutsideGenera { .. } => {
                    // p | N: every witness has gcd(a, N) > 1 and so no genus
                    ensure(witnesses.iter().all(|w| !w.a.gcd(&BigInt::from(n)).is_one()), || format!("D={d} N={n} p={p}"))?;
                    outside += 1;
                }
                PrimeClass::NotRepresented { .. } => return Err(format!("D={d} N={n} p={p}: kronecker 1 but not represented")),
            }
        }
    }
    Ok(format!("{checked} (D, N, p) checked, {cosets} coset matches, {outside} with p | N"))
}

fn c7_structure() -> Outcome {
    let mut rng = rng(0x7);
    for p in SECTION4_PRIMES {
        let data = elliptic_data(p).map_err(|e| e.to_string())?;
        let ks = SymmetricResidues::new(p).map_err(|e| e.to_string())?.elements();
        for &k in ks.iter().filter(|&&k| k != 1) {
            let k3 = data.f(data.f(data.f(k).unwrap()).unwrap()).unwrap();
            ensure(k3 == k, || format!("p={p}: f³({k}) = {k3}"))?;
        }
        ensure((data.e2.len() == 2) == (p % 4 == 1), || format!("p={p}: E2 = {:?}", data.e2))?;
        ensure((data.e3.len() == 2) == (p % 3 == 1), || format!("p={p}: E3 = {:?}", data.e3))?;
        for &k in &ks {
            let g = gamma_k(p, k).map_err(|e| e.to_string())?;
            ensure(g.det() == BigInt::one(), || format!("p={p} k={k}: det {}", g.det()))?;
            let kinv = sym_inverse(p, k).unwrap();
            for s in [1, -1] {
                let x = BigRational::new(BigInt::from(-kinv + s), BigInt::from(p));
                let want = BigRational::new(BigInt::from(k - s), BigInt::from(p));
                ensure(g.apply_cusp(&x) == Some(want.clone()), || format!("p={p} k={k}: γ_k({x}) != {want}"))?;
            }
        }
        for _ in 0..SAMPLES_PER_PRIME {
            let d = GRID_D[rng.gen_range(0..GRID_D.len())] * [1, 4, 9, p * p][rng.gen_range(0..4)];
            let q = random_form(&mut rng, d, 6);
            let t = cm_point(&q).map_err(|e| e.to_string())?;
            ensure(is_reduced_gamma0_p_with(&q, &data) == fundomain::contains_with(&data, &t), || format!("p={p}: {q}"))?;
        }
    }
    Ok(format!("{} primes", SECTION4_PRIMES.len()))
}

fn c8_congruences() -> Outcome {
    let (mut minus_4m, mut one_minus_4m) = (0, 0);
    for d in GRID_D {
        for n in GRID_N {
            let t = genus_table(&disc(d), lvl(n)).map_err(|e| e.to_string())?;
            let h: BTreeSet<BigInt> = t.h.iter().cloned().collect();
            let got = principal_genus_congruences(&disc(d), lvl(n));
            ensure(got == h, || format!("D={d} N={n}: {got:?} vs H = {h:?}"))?;
            if d % 4 == 0 {
                minus_4m += 1;
            } else {
                one_minus_4m += 1;
            }
        }
    }
    Ok(format!("{minus_4m} with D = -4m, {one_minus_4m} with D = 1 - 4m"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 gamma0(2) tables", c1_tables),
        ("2 genus table D=-28 N=2", c2_genus),
        ("3 isomorphism grid", c3_iso),
        ("4 composition vs ideal product", c4_oracle),
        ("5 reduction uniqueness", c5_uniqueness),
        ("6 prime representation", c6_primes),
        ("7 gamma0(p) structure", c7_structure),
        ("8 principal genus congruences", c8_congruences),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        match run() {
            Ok(detail) => println!("[PASS] {name}: {detail} ({:.2?})", start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {name}: {why}");
            }
        }
    }
    println!("{}/8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
