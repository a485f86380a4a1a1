//! The form class group 𝒞(D, Γ₀(N)): classes of forms of discriminant `D`
//! with `gcd(a, N) = 1` under Γ₀(N)-equivalence, composed à la Dirichlet.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{egcd, modp, prime_divisors_u64};
use crate::forms::{Discriminant, Form, GammaLevel, GroupElement};
use crate::reduction::{class_reps_any_level, Classifier};
use crate::{Error, Result};

/// `x² − (D/4)y²` or `x² + xy + ((1 − D)/4)y²`.
pub fn principal_form(d: &Discriminant) -> Form {
    let dv = d.value();
    if d.is_zero_mod_4() {
        Form::new(1, 0, -(dv / BigInt::from(4)))
    } else {
        Form::new(1, 1, (BigInt::one() - dv) / BigInt::from(4))
    }
}

/// Upper bound on `max(|x|, |y|)` in [`prepare_coprime`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum SearchLimit {
    /// `4·M·N·|D|`.
    #[default]
    Default,
    Max(BigInt),
}

impl SearchLimit {
    fn bound(&self, m: &BigInt, n: &BigInt, abs_d: &BigInt) -> BigInt {
        match self {
            SearchLimit::Default => BigInt::from(4) * m.abs() * n * abs_d,
            SearchLimit::Max(b) => b.clone(),
        }
    }
}

/// A Γ₀(N)-equivalent form whose leading coefficient is prime to `m`,
/// together with the `γ ∈ Γ₀(N)` that produces it.
///
/// Fails when `gcd(a, m, N) > 1`, since then no such form exists.
/// Searches first columns `(x, y)` with `gcd(x, y) = 1`, `N | y` by
/// increasing `max(|x|, |y|)` for `gcd(Q(x, y), m) = 1`.
pub fn prepare_coprime(q: &Form, m: &BigInt, level: GammaLevel, limit: &SearchLimit) -> Result<(Form, GroupElement)> {
    q.check_primitive_positive()?;
    if q.a.gcd(m).is_one() {
        return Ok((q.clone(), GroupElement::identity()));
    }
    let n = level.as_bigint();
    // Q(x, y) ≡ ax² mod any prime dividing N, since N | y
    if !q.a.gcd(&m.gcd(&n)).is_one() {
        return Err(Error::InvalidArgument(format!("no value of {q} with N | y is prime to {m}: gcd(a, m, N) != 1")));
    }
    let bound = limit.bound(m, &n, &q.disc()?.abs());
    let mut r = BigInt::one();
    while r <= bound {
        for (x, y) in ring(&r, &n) {
            if x.gcd(&y).is_one() && q.eval(&x, &y).gcd(m).is_one() {
                let (_, u, v) = egcd(&x, &y);
                let g = GroupElement { a: x, b: -v, c: y, d: u };
                return Ok((q.act(&g), g));
            }
        }
        r += 1u32;
    }
    Err(Error::SearchBoundExceeded { what: "coprime leading coefficient", bound })
}

// Pairs with max(|x|, |y|) = r and n | y, small |y| first.
pub(crate) fn ring(r: &BigInt, n: &BigInt) -> Vec<(BigInt, BigInt)> {
    let mut out = Vec::new();
    let mut ay = BigInt::zero();
    while ay <= *r {
        let ys: Vec<BigInt> = if ay.is_zero() { alloc::vec![ay.clone()] } else { alloc::vec![ay.clone(), -&ay] };
        for y in ys {
            if ay == *r {
                let mut x = -r.clone();
                while x <= *r {
                    out.push((x.clone(), y.clone()));
                    x += 1u32;
                }
            } else {
                out.push((r.clone(), y.clone()));
                out.push((-r.clone(), y));
            }
        }
        ay += n;
    }
    out
}

/// Dirichlet composition of two forms of one discriminant.
///
/// Requires `gcd(a, a', (b + b')/2) = 1` and `gcd(aa', N) = 1`. Returns
/// `(aa', B, (B² − D)/4aa')` with `B` the least residue in `[0, 2aa')` such
/// that `B ≡ b (mod 2a)`, `B ≡ b' (mod 2a')` and `B² ≡ D (mod 4aa')`.
pub fn dirichlet_compose(q1: &Form, q2: &Form, level: GammaLevel) -> Result<Form> {
    q1.check_primitive_positive()?;
    q2.check_primitive_positive()?;
    let d = q1.discriminant();
    if d != q2.discriminant() {
        return Err(Error::DiscriminantMismatch(d, q2.discriminant()));
    }
    let (a1, b1, a2, b2) = (&q1.a, &q1.b, &q2.a, &q2.b);
    let aa = a1 * a2;
    if !aa.gcd(&level.as_bigint()).is_one() {
        return Err(Error::CompositionPrecondition(format!("gcd({aa}, {}) != 1", level.get())));
    }
    let h = (b1 + b2) / 2;
    let (g1, x1, y1) = egcd(a1, a2);
    let (g, s, w) = egcd(&g1, &h);
    if !g.is_one() {
        return Err(Error::CompositionPrecondition(format!("gcd({a1}, {a2}, {h}) = {g}")));
    }
    let (u, v) = (&s * x1, &s * y1);
    let two_aa = BigInt::from(2) * &aa;
    let big_b = modp(&(&u * a1 * b2 + &v * a2 * b1 + &w * (b1 * b2 + &d) / 2), &two_aa);
    let c = (&big_b * &big_b - &d) / (BigInt::from(4) * &aa);
    let out = Form { a: aa, b: big_b, c };
    debug_assert_eq!(out.discriminant(), d);
    Ok(out)
}

/// Prepares `q2` so that its leading coefficient is prime to `a₁N`, then
/// composes.
pub fn compose(q1: &Form, q2: &Form, level: GammaLevel, limit: &SearchLimit) -> Result<Form> {
    let m = &q1.a * level.as_bigint();
    let (q2p, _) = prepare_coprime(q2, &m, level, limit)?;
    dirichlet_compose(q1, &q2p, level)
}

/// An element of 𝒞(D, Γ₀(N)).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FormClass {
    pub rep: Form,
    pub level: GammaLevel,
    pub disc: BigInt,
}

/// 𝒞(D, Γ₀(N)) with its Cayley table. The identity is element 0.
#[derive(Clone, Debug)]
pub struct FormClassGroup {
    pub disc: Discriminant,
    pub level: GammaLevel,
    pub elements: Vec<FormClass>,
    pub cayley: Vec<Vec<usize>>,
    pub invariant_factors: Vec<u64>,
    classifier: Classifier,
}

impl FormClassGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.cayley[i][j]
    }

    pub fn inverse(&self, i: usize) -> usize {
        (0..self.order()).find(|&j| self.cayley[i][j] == 0).expect("group has inverses")
    }

    pub fn pow(&self, i: usize, mut e: u64) -> usize {
        let (mut acc, mut base) = (0, i);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, i: usize) -> u64 {
        let mut k = 1;
        let mut x = i;
        while x != 0 {
            x = self.mul(x, i);
            k += 1;
        }
        k
    }

    /// Index of the class of `q`.
    pub fn index_of(&self, q: &Form) -> Result<usize> {
        Ok(self.classifier.classify(q)?.0)
    }

    pub fn reps(&self) -> Vec<Form> {
        self.elements.iter().map(|e| e.rep.clone()).collect()
    }

    /// Identity, inverses, commutativity and associativity on all triples.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.order();
        let fail = |m: &str| Err(Error::Invariant(format!("group axiom failed: {m}")));
        for i in 0..n {
            if self.mul(0, i) != i || self.mul(i, 0) != i {
                return fail("identity");
            }
            if !(0..n).any(|j| self.mul(i, j) == 0) {
                return fail("inverse");
            }
            let mut row = self.cayley[i].clone();
            row.sort_unstable();
            if row != (0..n).collect::<Vec<_>>() {
                return fail("latin square");
            }
            for j in 0..n {
                if self.mul(i, j) != self.mul(j, i) {
                    return fail("commutativity");
                }
                for k in 0..n {
                    if self.mul(self.mul(i, j), k) != self.mul(i, self.mul(j, k)) {
                        return fail("associativity");
                    }
                }
            }
        }
        Ok(())
    }
}

/// Class representatives with `gcd(a, N) = 1`, sorted.
pub fn class_reps(d: &Discriminant, level: GammaLevel) -> Result<Vec<Form>> {
    let all = class_reps_any_level(d, level)?;
    // a' ≡ aα² (mod N), so gcd(a, N) is constant on a class.
    let n = level.as_bigint();
    Ok(all.into_iter().filter(|q| q.a.gcd(&n).is_one()).collect())
}

pub fn class_group(d: &Discriminant, level: GammaLevel) -> Result<FormClassGroup> {
    class_group_with_limit(d, level, &SearchLimit::Default)
}

pub fn class_group_with_limit(d: &Discriminant, level: GammaLevel, limit: &SearchLimit) -> Result<FormClassGroup> {
    let mut reps = class_reps(d, level)?;
    let classifier = Classifier::new(reps.clone(), level)?;
    let id = classifier.classify(&principal_form(d))?.0;
    if id != 0 {
        let p = reps.remove(id);
        reps.insert(0, p);
    }
    let classifier = Classifier::new(reps.clone(), level)?;
    let n = reps.len();
    let mut cayley = alloc::vec![alloc::vec![0usize; n]; n];
    for i in 0..n {
        for j in i..n {
            let k = classifier.classify(&compose(&reps[i], &reps[j], level, limit)?)?.0;
            cayley[i][j] = k;
            cayley[j][i] = k;
        }
    }
    let elements = reps
        .into_iter()
        .map(|rep| FormClass { rep, level, disc: d.value().clone() })
        .collect();
    let mut g = FormClassGroup { disc: d.clone(), level, elements, cayley, invariant_factors: Vec::new(), classifier };
    g.invariant_factors = invariant_factors(&g);
    Ok(g)
}

/// Invariant factors `d₁ | d₂ | …` (all > 1) from the Cayley table.
///
/// For each prime `p`, the number of cyclic factors of order `≥ p^k` is
/// `log_p(#{g : g^{p^k} = 1} / #{g : g^{p^{k−1}} = 1})`.
pub fn invariant_factors(g: &FormClassGroup) -> Vec<u64> {
    let n = g.order() as u64;
    let mut per_prime: Vec<(u64, Vec<u32>)> = Vec::new();
    for p in prime_divisors_u64(n) {
        let mut counts = alloc::vec![1u64];
        let mut pk = 1u64;
        loop {
            pk *= p;
            let c = (0..g.order()).filter(|&i| g.pow(i, pk) == 0).count() as u64;
            counts.push(c);
            if c == *counts.iter().rev().nth(1).expect("two entries") {
                counts.pop();
                break;
            }
        }
        // at_least[k] = number of cyclic factors of order ≥ p^(k+1)
        let at_least: Vec<u32> = counts.windows(2).map(|w| ilog(w[1] / w[0], p)).collect();
        let mut exps = Vec::new();
        for (k, &cnt) in at_least.iter().enumerate() {
            let next = at_least.get(k + 1).copied().unwrap_or(0);
            for _ in 0..(cnt - next) {
                exps.push(k as u32 + 1);
            }
        }
        exps.sort_unstable_by(|a, b| b.cmp(a));
        per_prime.push((p, exps));
    }
    let len = per_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut out: Vec<u64> = (0..len)
        .map(|j| per_prime.iter().map(|(p, e)| e.get(j).map_or(1, |&k| p.pow(k))).product())
        .collect();
    out.reverse();
    out
}

fn ilog(mut x: u64, p: u64) -> u32 {
    let mut k = 0;
    while x > 1 {
        x /= p;
        k += 1;
    }
    k
}

/// Outcome of comparing 𝒞(D, Γ₀(N)) with 𝒞(DN²).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoReport {
    pub disc: BigInt,
    pub level: u64,
    pub scaled_disc: BigInt,
    pub lhs_order: usize,
    pub rhs_order: usize,
    pub lhs_invariants: Vec<u64>,
    pub rhs_invariants: Vec<u64>,
    pub isomorphic: bool,
}

pub fn verify_iso_with_scaled(d: &Discriminant, level: GammaLevel) -> Result<IsoReport> {
    verify_iso_with_limit(d, level, &SearchLimit::Default)
}

pub fn verify_iso_with_limit(d: &Discriminant, level: GammaLevel, limit: &SearchLimit) -> Result<IsoReport> {
    let n = level.as_bigint();
    let scaled = Discriminant::new(d.value() * &n * &n)?;
    let lhs = class_group_with_limit(d, level, limit)?;
    let rhs = class_group_with_limit(&scaled, GammaLevel::new(1)?, limit)?;
    Ok(IsoReport {
        disc: d.value().clone(),
        level: level.get(),
        scaled_disc: scaled.value().clone(),
        lhs_order: lhs.order(),
        rhs_order: rhs.order(),
        isomorphic: lhs.invariant_factors == rhs.invariant_factors,
        lhs_invariants: lhs.invariant_factors,
        rhs_invariants: rhs.invariant_factors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(a: i64, b: i64, c: i64) -> Form {
        Form::new(a, b, c)
    }

    fn lvl(n: u64) -> GammaLevel {
        GammaLevel::new(n).unwrap()
    }

    fn disc(d: i64) -> Discriminant {
        Discriminant::new(d).unwrap()
    }

    #[test]
    fn principal_examples() {
        assert_eq!(principal_form(&disc(-4)), f(1, 0, 1));
        assert_eq!(principal_form(&disc(-7)), f(1, 1, 2));
        assert_eq!(principal_form(&disc(-28)), f(1, 0, 7));
    }

    #[test]
    fn prepare_examples() {
        let lim = SearchLimit::Default;
        let (q, g) = prepare_coprime(&f(1, 0, 1), &BigInt::one(), lvl(3), &lim).unwrap();
        assert_eq!(q, f(1, 0, 1));
        assert_eq!(g, GroupElement::identity());
        let (q, g) = prepare_coprime(&f(2, 2, 1), &BigInt::from(2), lvl(1), &lim).unwrap();
        assert!(q.a.is_odd());
        assert_eq!(f(2, 2, 1).act(&g), q);
        let (q, g) = prepare_coprime(&f(3, 2, 5), &BigInt::from(15), lvl(5), &lim).unwrap();
        assert!(q.a.gcd(&BigInt::from(15)).is_one());
        assert!(lvl(5).contains(&g));
        let tight = SearchLimit::Max(BigInt::zero());
        assert!(matches!(
            prepare_coprime(&f(2, 2, 1), &BigInt::from(2), lvl(1), &tight),
            Err(Error::SearchBoundExceeded { .. })
        ));
    }

    #[test]
    fn compose_examples() {
        let n2 = lvl(2);
        let q = f(3, 2, 1);
        let sq = compose(&q, &q, n2, &SearchLimit::Default).unwrap();
        let g = class_group(&disc(-8), n2).unwrap();
        assert_eq!(g.index_of(&sq).unwrap(), 0);
        assert!(dirichlet_compose(&f(2, 0, 1), &f(1, 0, 2), n2).is_err());
        assert!(matches!(dirichlet_compose(&f(1, 0, 1), &f(1, 1, 1), lvl(1)), Err(Error::DiscriminantMismatch(..))));
        assert_eq!(dirichlet_compose(&f(1, 0, 5), &f(2, 2, 3), lvl(1)).unwrap().a, BigInt::from(2));
    }

    #[test]
    fn group_examples() {
        let g = class_group(&disc(-7), lvl(2)).unwrap();
        assert_eq!(g.reps(), [f(1, 1, 2)]);
        let g = class_group(&disc(-8), lvl(2)).unwrap();
        assert_eq!(g.reps(), [f(1, 0, 2), f(3, 2, 1)]);
        assert_eq!(g.invariant_factors, [2]);
        let g = class_group(&disc(-4), lvl(1)).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.invariant_factors.is_empty());
        assert_eq!(class_group(&disc(-84), lvl(1)).unwrap().invariant_factors, [2, 2]);
        assert_eq!(class_group(&disc(-56), lvl(1)).unwrap().invariant_factors, [4]);
        assert_eq!(class_group(&disc(-23), lvl(1)).unwrap().invariant_factors, [3]);
    }

    #[test]
    fn iso_examples() {
        for (d, n) in [(-4, 2), (-8, 2), (-3, 2), (-4, 6), (-7, 4)] {
            let r = verify_iso_with_scaled(&disc(d), lvl(n)).unwrap();
            assert!(r.isomorphic, "{r:?}");
        }
        assert_eq!(verify_iso_with_scaled(&disc(-8), lvl(2)).unwrap().lhs_invariants, [2]);
    }

    #[test]
    fn axioms() {
        for (d, n) in [(-23, 1), (-20, 3), (-15, 7), (-47, 5), (-24, 4)] {
            class_group(&disc(d), lvl(n)).unwrap().check_axioms().unwrap();
        }
    }
}
