#![allow(dead_code)]

use gammaforms_core::arith::egcd;
use gammaforms_core::reduction::sl2_reduced_forms;
use gammaforms_core::{Discriminant, Form, GammaLevel, GroupElement};
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub const GRID_D: [i64; 10] = [-3, -4, -7, -8, -11, -15, -19, -20, -23, -24];
pub const GRID_N: [u64; 5] = [1, 2, 3, 5, 7];

pub fn f(a: i64, b: i64, c: i64) -> Form {
    Form::new(a, b, c)
}

pub fn lvl(n: u64) -> GammaLevel {
    GammaLevel::new(n).unwrap()
}

pub fn disc(d: i64) -> Discriminant {
    Discriminant::new(d).unwrap()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// `(a b; c d)` with the given bottom row (which must be coprime).
pub fn complete_bottom(c: i64, d: i64) -> GroupElement {
    let (g, u, v) = egcd(&BigInt::from(d), &BigInt::from(c));
    assert!(g == BigInt::from(1));
    // u·d + v·c = 1, so a = u, b = −v
    GroupElement::new(u, -v, c, d).unwrap()
}

/// Random element of Γ₀(N) (of SL₂(ℤ) when N = 1) with entries of size
/// about `size`.
pub fn random_gamma0(rng: &mut StdRng, n: u64, size: i64) -> GroupElement {
    let n = n as i64;
    loop {
        let t = rng.gen_range(-size..=size);
        let d = rng.gen_range(-size * n..=size * n);
        let c = n * t;
        if c.gcd(&d) == 1 {
            let k = rng.gen_range(-size..=size);
            return &complete_bottom(c, d) * &GroupElement::translation(k);
        }
    }
}

pub fn random_sl2(rng: &mut StdRng, size: i64) -> GroupElement {
    loop {
        let c = rng.gen_range(-size..=size);
        let d = rng.gen_range(-size..=size);
        if c.gcd(&d) == 1 {
            let k = rng.gen_range(-size..=size);
            return &complete_bottom(c, d) * &GroupElement::translation(k);
        }
    }
}

/// A random primitive form of discriminant `d`: a random SL₂-reduced form
/// moved by a random matrix.
pub fn random_form(rng: &mut StdRng, d: i64, size: i64) -> Form {
    let reduced = sl2_reduced_forms(&disc(d));
    let r = &reduced[rng.gen_range(0..reduced.len())];
    r.act(&random_sl2(rng, size))
}

/// Primitive positive-definite forms with small coefficients.
pub fn arb_form() -> impl Strategy<Value = Form> {
    (1i64..40, -40i64..40, 1i64..40)
        .prop_map(|(a, b, c)| f(a, b, c))
        .prop_filter("primitive positive-definite", |q| q.is_primitive() && q.is_positive_definite())
}

/// Elements of SL₂(ℤ) with small entries.
pub fn arb_sl2() -> impl Strategy<Value = GroupElement> {
    (-15i64..15, -15i64..15, -6i64..6)
        .prop_filter("coprime bottom row", |(c, d, _)| c.gcd(d) == 1)
        .prop_map(|(c, d, k)| &complete_bottom(c, d) * &GroupElement::translation(k))
}

/// Elements of Γ₀(n).
pub fn arb_gamma0(n: u64) -> impl Strategy<Value = GroupElement> {
    let n = n as i64;
    (-6i64..6, -40i64..40, -6i64..6)
        .prop_filter("coprime bottom row", move |(t, d, _)| (n * t).gcd(d) == 1)
        .prop_map(move |(t, d, k)| &complete_bottom(n * t, d) * &GroupElement::translation(k))
}

/// Naive class number: count `|b| ≤ a ≤ c` with the boundary sign rule,
/// straight from the definition.
pub fn brute_class_number(d: i64) -> usize {
    let mut h = 0;
    let mut a = 1i64;
    while 3 * a * a <= -d {
        for b in -a..=a {
            if (b * b - d) % (4 * a) != 0 {
                continue;
            }
            let c = (b * b - d) / (4 * a);
            if c < a || a.gcd(&b).gcd(&c) != 1 {
                continue;
            }
            if b < 0 && (-b == a || a == c) {
                continue;
            }
            h += 1;
        }
        a += 1;
    }
    h
}

pub fn odd_primes_below(n: u64) -> Vec<u64> {
    (3..n).filter(|&p| gammaforms_core::arith::is_prime_u64(p)).collect()
}
