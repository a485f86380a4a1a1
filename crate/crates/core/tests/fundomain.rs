mod common;

use common::*;
use gammaforms_core::forms::{cm_point, kronecker, moebius, CmPoint};
use gammaforms_core::fundomain::*;
use gammaforms_core::reduction::{enumerate_reduced, equivalent_gamma0, gamma0_class_reps};
use num_bigint::BigInt;
use num_rational::BigRational;

const PRIMES: [i64; 8] = [5, 7, 11, 13, 17, 19, 23, 29];

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

// rational point on |τ − center| = radius, parametrised by t = u/v
fn on_circle(center: &BigRational, radius: &BigRational, u: i64, v: i64) -> CmPoint {
    let t = rat(u, v);
    let one = rat(1, 1);
    let den = &one + &t * &t;
    let re = center + radius * (&one - &t * &t) / &den;
    let im = radius * rat(2, 1) * &t / &den;
    CmPoint::new(re, &im * &im).unwrap()
}

#[test]
fn f_has_order_three() {
    for p in PRIMES {
        let data = elliptic_data(p).unwrap();
        for k in data.residues().elements() {
            if k == 1 {
                continue;
            }
            let k1 = data.f(k).unwrap();
            let k2 = data.f(k1).unwrap();
            assert_eq!(data.f(k2).unwrap(), k, "p={p} k={k}");
            // fixed points of f are exactly E3
            assert_eq!(k1 == k, data.in_e3(k), "p={p} k={k}");
            // k2 of k2 is itself, and both k and −k⁻¹ give the same k₍₂₎
            let kinv = data.residues().inverse(k).unwrap();
            assert_eq!(data.k2(k).unwrap(), data.k2(-kinv).unwrap());
        }
    }
}

#[test]
fn elliptic_counts_match_kronecker() {
    for p in PRIMES {
        let data = elliptic_data(p).unwrap();
        let pb = BigInt::from(p);
        let e2 = (1 + kronecker(&BigInt::from(-4), &pb)) as usize;
        let e3 = (1 + kronecker(&BigInt::from(-3), &pb)) as usize;
        assert_eq!(data.e2.len(), e2, "p={p}");
        assert_eq!(data.e3.len(), e3, "p={p}");
    }
}

#[test]
fn endpoint_law() {
    for p in PRIMES {
        for k in SymmetricResidues::new(p).unwrap().elements() {
            let g = gamma_k(p, k).unwrap();
            let kinv = sym_inverse(p, k).unwrap();
            for s in [1, -1] {
                let x = rat(-kinv + s, p);
                assert_eq!(g.apply_cusp(&x), Some(rat(k - s, p)), "p={p} k={k}");
            }
        }
    }
}

#[test]
fn arcs_are_glued_in_pairs() {
    for p in PRIMES {
        let boundary = r_gamma0p_boundary(p).unwrap();
        assert_eq!(boundary.arcs.len() as i64, p - 1);
        for arc in &boundary.arcs {
            let k = arc.k;
            let kinv = sym_inverse(p, k).unwrap();
            let src = boundary.arcs.iter().find(|a| a.k == -kinv).unwrap();
            let g = gamma_k(p, k).unwrap();
            for (u, v) in [(1, 3), (2, 5), (1, 1), (7, 4)] {
                let t = on_circle(&src.center, &src.radius, u, v);
                let img = moebius(&g, &t);
                assert_eq!(img.dist_sq_to(&arc.center), &arc.radius * &arc.radius, "p={p} k={k}");
            }
        }
    }
}

#[test]
fn corner_law() {
    for p in PRIMES {
        for k in SymmetricResidues::new(p).unwrap().elements() {
            let kinv = sym_inverse(p, k).unwrap();
            let g = gamma_k(p, k).unwrap();
            assert_eq!(moebius(&g, &corner(p, 1 - kinv)), corner(p, k), "p={p} k={k}");
        }
    }
}

#[test]
fn one_point_per_orbit() {
    for p in [5u64, 7, 11, 13] {
        for d in [-3i64, -4, -7, -8, -11, -15, -20, -23, -24, -35, -52, -75, -3 * 25, -4 * 49] {
            let reduced = enumerate_reduced(&disc(d), lvl(p)).unwrap();
            for r in &reduced {
                assert!(contains(p as i64, &cm_point(r).unwrap()).unwrap());
            }
            for q in gamma0_class_reps(&disc(d), lvl(p)) {
                let hits = reduced.iter().filter(|r| equivalent_gamma0(&q, r, lvl(p)).unwrap().is_some()).count();
                assert_eq!(hits, 1, "p={p} D={d} {q}");
            }
        }
    }
}

#[test]
fn region_contains_no_interior_translate() {
    // points in the open region are moved out of it by every γ_k
    for p in [5i64, 7, 11] {
        for (re, im_sq) in [(rat(0, 1), rat(1, 1)), (rat(-1, 3), rat(1, 4)), (rat(1, 4), rat(1, 2))] {
            let t = CmPoint::new(re, im_sq).unwrap();
            assert!(contains(p, &t).unwrap());
            for k in SymmetricResidues::new(p).unwrap().elements() {
                let img = moebius(&gamma_k(p, k).unwrap(), &t);
                assert!(!contains(p, &img).unwrap(), "p={p} k={k}");
            }
        }
    }
}
