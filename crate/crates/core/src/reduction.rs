//! Reduction of forms: classical SL₂(ℤ) reduction, reduced-form predicates
//! for Γ₀(2), Γ₀(3) and Γ₀(p) (p ≥ 5), enumeration of reduced forms, and an
//! exact Γ₀(N)-equivalence test.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{divisors, egcd, isqrt, modp};
use crate::forms::{Discriminant, Form, GammaLevel, GroupElement};
use crate::fundomain::{EllipticData, Region};
use crate::{Error, Result};

/// A reduced form together with the matrix that produced it:
/// `input.act(&transform) == reduced`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionResult {
    pub reduced: Form,
    pub transform: GroupElement,
}

/// `|b| ≤ a ≤ c`, and `b ≥ 0` whenever `|b| = a` or `a = c`.
pub fn is_reduced_sl2(q: &Form) -> bool {
    let ab = q.b.abs();
    ab <= q.a && q.a <= q.c && (!(ab == q.a || q.a == q.c) || !q.b.is_negative())
}

/// Gauss reduction.
pub fn reduce_sl2(q: &Form) -> Result<ReductionResult> {
    q.check_primitive_positive()?;
    let mut f = q.clone();
    let mut w = GroupElement::identity();
    let two_a = |f: &Form| BigInt::from(2) * &f.a;
    loop {
        // b into (−a, a]
        let k = (&f.a - &f.b).div_floor(&two_a(&f));
        if !k.is_zero() {
            let t = GroupElement::translation(k);
            f = f.act(&t);
            w = &w * &t;
        }
        if f.a > f.c {
            let s = GroupElement::s();
            f = f.act(&s);
            w = &w * &s;
            continue;
        }
        if f.a == f.c && f.b.is_negative() {
            let s = GroupElement::s();
            f = f.act(&s);
            w = &w * &s;
        }
        break;
    }
    debug_assert!(is_reduced_sl2(&f));
    Ok(ReductionResult { reduced: f, transform: w })
}

/// Proper automorphs of an SL₂-reduced form: `{α ∈ SL₂(ℤ) : R·α = R}`.
///
/// For a reduced form every automorph has entries in `{−1, 0, 1}`.
pub fn automorphs(r: &Form) -> Vec<GroupElement> {
    let mut out = Vec::new();
    let vals = [-1i64, 0, 1];
    for &a in &vals {
        for &b in &vals {
            for &c in &vals {
                for &d in &vals {
                    if a * d - b * c != 1 {
                        continue;
                    }
                    let g = GroupElement::raw(a, b, c, d);
                    if r.act(&g) == *r {
                        out.push(g);
                    }
                }
            }
        }
    }
    out
}

/// `γ ∈ Γ₀(N)` with `q1·γ = q2`, if one exists.
pub fn equivalent_gamma0(q1: &Form, q2: &Form, level: GammaLevel) -> Result<Option<GroupElement>> {
    q1.check_primitive_positive()?;
    q2.check_primitive_positive()?;
    let (d1, d2) = (q1.discriminant(), q2.discriminant());
    if d1 != d2 {
        return Err(Error::DiscriminantMismatch(d1, d2));
    }
    let r1 = reduce_sl2(q1)?;
    let r2 = reduce_sl2(q2)?;
    if r1.reduced != r2.reduced {
        return Ok(None);
    }
    Ok(witness_through(&r1.transform, &automorphs(&r1.reduced), &r2.transform, level))
}

// q1·δ1 = R = q2·δ2, so q1·(δ1 α δ2⁻¹) = q2 for α ∈ Aut(R).
fn witness_through(d1: &GroupElement, aut: &[GroupElement], d2: &GroupElement, level: GammaLevel) -> Option<GroupElement> {
    let d2inv = d2.inverse();
    aut.iter().map(|al| &(d1 * al) * &d2inv).find(|g| level.contains(g))
}

/// `|b| ≤ a`, `|b| ≤ pc`, and `b > 0` whenever `|b| = a` or `|b| = pc`.
pub fn is_reduced_gamma0_small(q: &Form, p: u64) -> Result<bool> {
    if p != 2 && p != 3 {
        return Err(Error::InvalidArgument(format!("small-level predicate needs p = 2 or 3, got {p}")));
    }
    let ab = q.b.abs();
    let pc = BigInt::from(p) * &q.c;
    Ok(ab <= q.a && ab <= pc && (!(ab == q.a || ab == pc) || q.b.is_positive()))
}

/// Conditions (1)–(7) for Γ₀(p), p ≥ 5 prime.
pub fn is_reduced_gamma0_p(q: &Form, p: i64) -> Result<bool> {
    Ok(is_reduced_gamma0_p_with(q, &EllipticData::new(p)?))
}

pub fn is_reduced_gamma0_p_with(q: &Form, data: &EllipticData) -> bool {
    let p = data.p();
    let pb = BigInt::from(p);
    let (a, b, c) = (&q.a, &q.b, &q.c);
    let ab = b.abs();
    let ks = data.residues().elements();
    // p²c + (k² − 1)a
    let x = |k: i64| &pb * &pb * c + BigInt::from(k * k - 1) * a;

    // (1)
    if ab > *a {
        return false;
    }
    // (2)
    if ks.iter().any(|&k| &ab * &pb * BigInt::from(k.abs()) > x(k)) {
        return false;
    }
    // (3)
    if ab == *a && b != a {
        return false;
    }
    // (4)
    if *b == -(&pb * c) {
        return false;
    }
    for &k in &ks {
        // b = −(p²c + (k² − 1)a)/pk
        if b * &pb * BigInt::from(k) != -x(k) {
            continue;
        }
        if data.in_e2(k) {
            // (5)
            if b * &pb < BigInt::from(-2 * k) * a {
                return false;
            }
        } else if k != 1 && k != -1 {
            // (6)
            let k2 = data.k2(k).expect("k in S_p");
            if b * &pb < BigInt::from(-(2 * k2 + 1)) * a {
                return false;
            }
        }
    }
    // (7)
    if &pb * &pb * q.discriminant() == BigInt::from(-3) * a * a {
        for &k in &ks {
            if k == 1 || data.in_e3(k) || data.k3(k).expect("k != 1") == k {
                continue;
            }
            if b * &pb == BigInt::from(1 - 2 * k) * a {
                return false;
            }
        }
    }
    true
}

/// The level-appropriate reduced predicate (levels 1, 2, 3 and primes ≥ 5).
pub fn is_reduced(q: &Form, level: GammaLevel) -> Result<bool> {
    Ok(Predicate::for_level(level)?.test(q))
}

enum Predicate {
    Sl2,
    Small(u64),
    Prime(EllipticData),
}

impl Predicate {
    fn for_level(level: GammaLevel) -> Result<Self> {
        Ok(match Region::for_level(level)? {
            Region::Full => Predicate::Sl2,
            Region::Small(p) => Predicate::Small(p as u64),
            Region::Prime(data) => Predicate::Prime(data),
        })
    }

    fn test(&self, q: &Form) -> bool {
        match self {
            Predicate::Sl2 => is_reduced_sl2(q),
            Predicate::Small(p) => is_reduced_gamma0_small(q, *p).expect("p is 2 or 3"),
            Predicate::Prime(data) => is_reduced_gamma0_p_with(q, data),
        }
    }

    // Upper bound for b² over the reduced forms of discriminant −|D|. For
    // Γ₀(p) the region sits above Im τ = √3/2p away from the cusp at 0, so
    // either a ≤ p√(|D|/3) or |b| ≤ a/p, |b| ≤ pc.
    fn b_sq_bound(&self, abs_d: &BigInt) -> BigInt {
        match self {
            Predicate::Sl2 => abs_d / 3,
            Predicate::Prime(data) => BigInt::from(data.p() * data.p()) * abs_d / 3,
            Predicate::Small(2) => abs_d.clone(),
            Predicate::Small(_) => BigInt::from(3) * abs_d,
        }
    }
}

/// Coset representatives `g_i` with `SL₂(ℤ) = ⨆ g_i Γ₀(N)`.
///
/// The coset `gΓ₀(N)` is determined by the first column `(a : c)` of `g` in
/// `P¹(ℤ/N)`, which is what the right action `R·g` needs: `R·g` and
/// `R·g'` are Γ₀(N)-equivalent whenever `g' ∈ gΓ₀(N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetSystem {
    pub n: u64,
    pub reps: Vec<GroupElement>,
    points: Vec<(u64, u64)>,
    units: Vec<u64>,
}

impl CosetSystem {
    pub fn new(level: GammaLevel) -> Self {
        let n = level.get();
        let units: Vec<u64> = (1..=n).filter(|&u| u.gcd(&n) == 1).map(|u| u % n.max(1)).collect();
        let mut points = Vec::new();
        for a in 0..n {
            for c in 0..n {
                if a.gcd(&c).gcd(&n) != 1 && n != 1 {
                    continue;
                }
                let pt = canonical_point(a, c, n, &units);
                if pt == (a, c) && !points.contains(&pt) {
                    points.push(pt);
                }
            }
        }
        if n == 1 {
            points = alloc::vec![(0, 0)];
        }
        points.sort_unstable_by_key(|&(a, c)| (a != 1 || c != 0, c, a));
        let reps = points.iter().map(|&(a, c)| lift_point(a, c, n)).collect();
        CosetSystem { n, reps, points, units }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Index `i` with `g ∈ g_i Γ₀(N)`.
    pub fn index_of(&self, g: &GroupElement) -> usize {
        if self.n == 1 {
            return 0;
        }
        let nb = BigInt::from(self.n);
        let a = modp(&g.a, &nb).to_u64().expect("residue fits");
        let c = modp(&g.c, &nb).to_u64().expect("residue fits");
        let pt = canonical_point(a, c, self.n, &self.units);
        self.points.iter().position(|&q| q == pt).expect("first column of an SL2 matrix is a point of P1")
    }
}

pub fn coset_reps(level: GammaLevel) -> CosetSystem {
    CosetSystem::new(level)
}

fn canonical_point(a: u64, c: u64, n: u64, units: &[u64]) -> (u64, u64) {
    units
        .iter()
        .map(|&u| ((u as u128 * a as u128 % n as u128) as u64, (u as u128 * c as u128 % n as u128) as u64))
        .min()
        .unwrap_or((0, 0))
}

// A matrix in SL₂(ℤ) whose first column reduces to (a, c) mod n.
fn lift_point(a: u64, c: u64, n: u64) -> GroupElement {
    if n == 1 || (a == 1 && c == 0) {
        return GroupElement::identity();
    }
    let nb = BigInt::from(n);
    let c_l = if c == 0 { nb.clone() } else { BigInt::from(c) };
    let mut a_l = BigInt::from(a);
    while !a_l.gcd(&c_l).is_one() {
        a_l += &nb;
    }
    let (_, u, v) = egcd(&a_l, &c_l);
    GroupElement { a: a_l, b: -v, c: c_l, d: u }
}

/// SL₂(ℤ)-reduced forms of discriminant `D`, sorted.
pub fn sl2_reduced_forms(d: &Discriminant) -> Vec<Form> {
    candidates(d, &Predicate::Sl2)
}

fn candidates(d: &Discriminant, pred: &Predicate) -> Vec<Form> {
    let abs_d = d.abs();
    let bmax = isqrt(&pred.b_sq_bound(&abs_d));
    let mut out = Vec::new();
    let mut b = -bmax.clone();
    while b <= bmax {
        if (&b - d.value()).is_even() {
            let n = (&b * &b - d.value()) / 4;
            for a in divisors(&n) {
                let c = &n / &a;
                let q = Form { a, b: b.clone(), c };
                if q.is_primitive() && pred.test(&q) {
                    out.push(q);
                }
            }
        }
        b += 1u32;
    }
    out.sort();
    out
}

/// The Γ₀(N)-reduced forms of discriminant `D`, one per Γ₀(N)-class, sorted.
///
/// Supported for levels 1, 2, 3 and primes ≥ 5.
pub fn enumerate_reduced(d: &Discriminant, level: GammaLevel) -> Result<Vec<Form>> {
    let pred = Predicate::for_level(level)?;
    Ok(candidates(d, &pred))
}

/// One representative per Γ₀(N)-class for any `N`: the lexicographically
/// smallest coset translate `R·g_i` lying in the class.
pub fn gamma0_class_reps(d: &Discriminant, level: GammaLevel) -> Vec<Form> {
    let cosets = CosetSystem::new(level);
    let mut out = Vec::new();
    for r in sl2_reduced_forms(d) {
        let aut = automorphs(&r);
        // R·g_i ~ R·g_j iff g_j ∈ Aut(R)·g_i·Γ₀(N)
        let mut seen = alloc::vec![false; cosets.len()];
        for i in 0..cosets.len() {
            if seen[i] {
                continue;
            }
            let mut best: Option<Form> = None;
            for al in &aut {
                let j = cosets.index_of(&(al * &cosets.reps[i]));
                if !seen[j] {
                    seen[j] = true;
                    let t = r.act(&cosets.reps[j]);
                    if best.as_ref().map_or(true, |b| t < *b) {
                        best = Some(t);
                    }
                }
            }
            out.extend(best);
        }
    }
    out.sort();
    out
}

/// Reduced forms where a region exists, lexicographic coset representatives
/// otherwise.
pub fn class_reps_any_level(d: &Discriminant, level: GammaLevel) -> Result<Vec<Form>> {
    match enumerate_reduced(d, level) {
        Err(Error::UnsupportedLevel(_)) => Ok(gamma0_class_reps(d, level)),
        r => r,
    }
}

/// A representative that depends only on the Γ₀(N)-class of `q`: the reduced
/// form for supported levels, the lexicographic minimum over coset
/// translates otherwise.
pub fn canonical_rep(q: &Form, level: GammaLevel) -> Result<Form> {
    Ok(reduce_gamma0(q, level)?.reduced)
}

/// The canonical representative of `q` with a witness in Γ₀(N).
// −I acts trivially; prefer c > 0, or c = 0 and d > 0.
fn positive_sign(g: GroupElement) -> GroupElement {
    if g.c.is_negative() || (g.c.is_zero() && g.d.is_negative()) {
        g.neg()
    } else {
        g
    }
}

pub fn reduce_gamma0(q: &Form, level: GammaLevel) -> Result<ReductionResult> {
    let r = reduce_sl2(q)?;
    let aut = automorphs(&r.reduced);
    let cosets = CosetSystem::new(level);
    let d = q.disc()?;
    let pred = Predicate::for_level(level).ok();
    let mut best: Option<ReductionResult> = None;
    for g in &cosets.reps {
        let t = r.reduced.act(g);
        if let Some(pred) = &pred {
            if !pred.test(&t) {
                continue;
            }
        }
        // q·δ = R, so q·(δ α g) = R·g for α ∈ Aut(R)
        let hit = aut.iter().map(|al| &(&r.transform * al) * g).find(|h| level.contains(h));
        if let Some(h) = hit {
            if best.as_ref().map_or(true, |b| t < b.reduced) {
                best = Some(ReductionResult { reduced: t, transform: h });
            }
        }
    }
    if let Some(b) = best {
        return Ok(ReductionResult { transform: positive_sign(b.transform), ..b });
    }
    // Supported level whose reduced form is not a plain coset translate:
    // test the enumerated forms directly.
    for t in enumerate_reduced(&d, level)? {
        if let Some(h) = equivalent_gamma0(q, &t, level)? {
            return Ok(ReductionResult { reduced: t, transform: positive_sign(h) });
        }
    }
    Err(Error::Invariant(format!("no reduced form found for {q} at level {}", level.get())))
}

/// Class lookup against a fixed list of representatives, sharing the
/// SL₂-reduction of each representative.
#[derive(Clone, Debug)]
pub struct Classifier {
    level: GammaLevel,
    disc: BigInt,
    reps: Vec<Form>,
    // SL₂-reduced form → (rep index, δ with rep·δ = R)
    by_reduced: BTreeMap<Form, Vec<(usize, GroupElement)>>,
    auts: BTreeMap<Form, Vec<GroupElement>>,
}

impl Classifier {
    /// `reps` must be pairwise Γ₀(N)-inequivalent forms of one discriminant.
    pub fn new(reps: Vec<Form>, level: GammaLevel) -> Result<Self> {
        let disc = reps.first().map(|q| q.discriminant()).unwrap_or_default();
        let mut by_reduced: BTreeMap<Form, Vec<(usize, GroupElement)>> = BTreeMap::new();
        let mut auts = BTreeMap::new();
        for (i, q) in reps.iter().enumerate() {
            if q.discriminant() != disc {
                return Err(Error::DiscriminantMismatch(disc, q.discriminant()));
            }
            let r = reduce_sl2(q)?;
            auts.entry(r.reduced.clone()).or_insert_with(|| automorphs(&r.reduced));
            by_reduced.entry(r.reduced).or_default().push((i, r.transform));
        }
        Ok(Classifier { level, disc, reps, by_reduced, auts })
    }

    /// Classifier over the reduced forms (or canonical reps) of `D`.
    pub fn for_discriminant(d: &Discriminant, level: GammaLevel) -> Result<Self> {
        let mut c = Classifier::new(class_reps_any_level(d, level)?, level)?;
        c.disc = d.value().clone();
        Ok(c)
    }

    pub fn reps(&self) -> &[Form] {
        &self.reps
    }

    pub fn level(&self) -> GammaLevel {
        self.level
    }

    /// Index of the representative equivalent to `q`, with `γ ∈ Γ₀(N)`
    /// such that `q·γ = reps[i]`.
    pub fn classify(&self, q: &Form) -> Result<(usize, GroupElement)> {
        if q.discriminant() != self.disc {
            return Err(Error::DiscriminantMismatch(self.disc.clone(), q.discriminant()));
        }
        let r = reduce_sl2(q)?;
        if let (Some(cands), Some(aut)) = (self.by_reduced.get(&r.reduced), self.auts.get(&r.reduced)) {
            for (i, d2) in cands {
                if let Some(g) = witness_through(&r.transform, aut, d2, self.level) {
                    return Ok((*i, g));
                }
            }
        }
        Err(Error::Invariant(format!("{q} matches none of the {} representatives", self.reps.len())))
    }
}
