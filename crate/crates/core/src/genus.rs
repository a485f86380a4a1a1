//! N-representation of integers and the N-genus theory of primes.
//!
//! `m` is N-represented by `Q` when `m = Q(x, y)` with `gcd(x, N) = 1` and
//! `N | y`. With `H` the unit residues mod `|D|` N-represented by the
//! principal form, the N-represented unit residues of any form with
//! `gcd(a, N) = 1` make up a single coset of `H` in `ker(χ)`; that coset is
//! the form's N-genus.

use alloc::collections::BTreeMap;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{egcd, exact_sqrt, is_prime_u64, isqrt, modp};
use crate::classgroup::{class_reps, principal_form, ring, SearchLimit};
use crate::forms::{kronecker, representation_values, Discriminant, Form, GammaLevel, GroupElement};
use crate::ideal::{ideal_from_form, OIdeal};
use crate::reduction::class_reps_any_level;
use crate::{Error, Result};

/// `m = Q(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Representation {
    pub x: BigInt,
    pub y: BigInt,
    pub m: BigInt,
    /// `gcd(x, y) = 1`.
    pub proper: bool,
    /// `gcd(x, N) = 1` and `N | y`.
    pub admissible: bool,
}

impl Representation {
    pub fn new(q: &Form, x: BigInt, y: BigInt, level: GammaLevel) -> Self {
        let n = level.as_bigint();
        let m = q.eval(&x, &y);
        let proper = x.gcd(&y).is_one();
        let admissible = x.gcd(&n).is_one() && y.is_multiple_of(&n);
        Representation { x, y, m, proper, admissible }
    }

    fn key(&self) -> (BigInt, BigInt, bool, bool) {
        (self.y.abs(), self.x.abs(), self.x.is_negative(), self.y.is_negative())
    }
}

/// Every `(x, y)` with `Q(x, y) = m`, smallest `|y|` then `|x|` first.
pub fn find_representations(q: &Form, m: &BigInt, level: GammaLevel) -> Result<Vec<Representation>> {
    if !q.is_positive_definite() {
        return Err(Error::NotPrimitivePositiveDefinite(format!("{q}")));
    }
    if m.is_negative() {
        return Err(Error::InvalidArgument(format!("value {m} must be non-negative")));
    }
    let d = q.discriminant();
    let abs_d = -&d;
    // 4aQ(x, y) = (2ax + by)² + |D|y²
    let ymax = isqrt(&(BigInt::from(4) * &q.a * m / &abs_d));
    let two_a = BigInt::from(2) * &q.a;
    let mut out = Vec::new();
    let mut y = -ymax.clone();
    while y <= ymax {
        if let Some(s) = exact_sqrt(&(&d * &y * &y + BigInt::from(4) * &q.a * m)) {
            let mut xs = alloc::vec![-&q.b * &y + &s];
            if !s.is_zero() {
                xs.push(-&q.b * &y - &s);
            }
            for num in xs {
                if num.is_multiple_of(&two_a) {
                    out.push(Representation::new(q, num / &two_a, y.clone(), level));
                }
            }
        }
        y += 1u32;
    }
    out.sort_by_key(Representation::key);
    Ok(out)
}

/// `Q·γ` with `γ = (x, −v; y, u) ∈ Γ₀(N)`, `ux + vy = 1`; its leading
/// coefficient is `m`.
pub fn form_from_representation(q: &Form, r: &Representation, level: GammaLevel) -> Result<(Form, GroupElement)> {
    let checked = Representation::new(q, r.x.clone(), r.y.clone(), level);
    if !checked.proper || !checked.admissible || checked.m != r.m {
        return Err(Error::InadmissibleRepresentation { x: r.x.clone(), y: r.y.clone() });
    }
    let (_, u, v) = egcd(&r.x, &r.y);
    let g = GroupElement { a: r.x.clone(), b: -v, c: r.y.clone(), d: u };
    Ok((q.act(&g), g))
}

/// `mx² + bxy + cy²` of discriminant `D` with the least `b ≥ 0`, if `D` is
/// a square mod `4m`. Needs `m` odd and prime to `D`.
pub fn exists_representing_form(d: &Discriminant, m: &BigInt) -> Result<Option<Form>> {
    if !m.is_positive() || m.is_even() || !m.gcd(d.value()).is_one() {
        return Err(Error::InvalidArgument(format!("m = {m} must be odd, positive and prime to {d}")));
    }
    let four_m = BigInt::from(4) * m;
    let target = modp(d.value(), &four_m);
    let mut b = if d.is_zero_mod_4() { BigInt::zero() } else { BigInt::one() };
    while b < BigInt::from(2) * m {
        if modp(&(&b * &b), &four_m) == target {
            let c = (&b * &b - d.value()) / &four_m;
            return Ok(Some(Form { a: m.clone(), b, c }));
        }
        b += 2u32;
    }
    Ok(None)
}

fn units_mod(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut r = BigInt::one();
    while r < *n {
        if r.gcd(n).is_one() {
            out.push(r.clone());
        }
        r += 1u32;
    }
    if n.is_one() {
        out.push(BigInt::zero());
    }
    out
}

fn unit_values(q: &Form, level: GammaLevel, modulus: &BigInt) -> Result<BTreeSet<BigInt>> {
    Ok(representation_values(q, level, modulus)?
        .into_iter()
        .filter(|v| v.gcd(modulus).is_one())
        .collect())
}

/// `ker(χ)`, `H`, its cosets, and the genus of each reduced form with
/// `gcd(a, N) = 1`. Residues are taken mod `|D|`; coset 0 is `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusTable {
    pub disc: Discriminant,
    pub level: GammaLevel,
    pub modulus: BigInt,
    pub ker_chi: Vec<BigInt>,
    pub h: Vec<BigInt>,
    pub cosets: Vec<Vec<BigInt>>,
    pub assignment: Vec<(Form, usize)>,
}

impl GenusTable {
    /// Coset containing the residue of `m`.
    pub fn coset_of(&self, m: &BigInt) -> Option<usize> {
        let r = modp(m, &self.modulus);
        self.cosets.iter().position(|c| c.binary_search(&r).is_ok())
    }

    /// Forms in the genus of coset `i`, in enumeration order.
    pub fn genus(&self, i: usize) -> Vec<&Form> {
        self.assignment.iter().filter(|(_, c)| *c == i).map(|(f, _)| f).collect()
    }
}

pub fn genus_table(d: &Discriminant, level: GammaLevel) -> Result<GenusTable> {
    let modulus = d.abs();
    let ker_chi: Vec<BigInt> = units_mod(&modulus)
        .into_iter()
        .filter(|r| kronecker(d.value(), r) == 1)
        .collect();
    let h: Vec<BigInt> = unit_values(&principal_form(d), level, &modulus)?.into_iter().collect();
    let mut cosets: Vec<Vec<BigInt>> = Vec::new();
    for k in &ker_chi {
        if cosets.iter().any(|c| c.binary_search(k).is_ok()) {
            continue;
        }
        let mut c: Vec<BigInt> = h.iter().map(|x| modp(&(x * k), &modulus)).collect();
        c.sort();
        c.dedup();
        cosets.push(c);
    }
    let mut assignment = Vec::new();
    for q in class_reps(d, level)? {
        let vals: Vec<BigInt> = unit_values(&q, level, &modulus)?.into_iter().collect();
        let i = cosets.iter().position(|c| *c == vals).ok_or_else(|| {
            Error::Invariant(format!("values of {q} mod {modulus} are not a coset of H"))
        })?;
        assignment.push((q, i));
    }
    Ok(GenusTable { disc: d.clone(), level, modulus, ker_chi, h, cosets, assignment })
}

/// Where an odd prime `p ∤ D` sits in the genus theory of `(D, N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeClass {
    /// `[p] ∈ ker(χ)`, in coset `coset`; `witness` N-represents `p` by `rep`.
    Genus { coset: usize, witness: Form, rep: Representation },
    /// `(D/p) ≠ 1`: no form of discriminant `D` represents `p`.
    NotRepresented { kronecker: i8 },
    /// `p | N`: only forms with `gcd(a, N) > 1` can N-represent `p`, and
    /// those carry no genus.
    OutsideGenera { witness: Option<(Form, Representation)> },
}

pub fn classify_prime(p: u64, d: &Discriminant, level: GammaLevel) -> Result<PrimeClass> {
    check_prime_for(p, d)?;
    if kronecker(d.value(), &BigInt::from(p)) != 1 {
        return Ok(PrimeClass::NotRepresented { kronecker: kronecker(d.value(), &BigInt::from(p)) });
    }
    genus_table(d, level)?.classify(p)
}

fn check_prime_for(p: u64, d: &Discriminant) -> Result<()> {
    if p == 2 || !is_prime_u64(p) {
        return Err(Error::InvalidArgument(format!("{p} is not an odd prime")));
    }
    if d.value().is_multiple_of(&BigInt::from(p)) {
        return Err(Error::InvalidArgument(format!("{p} divides the discriminant {d}")));
    }
    Ok(())
}

impl GenusTable {
    /// [`classify_prime`] against this table.
    pub fn classify(&self, p: u64) -> Result<PrimeClass> {
        check_prime_for(p, &self.disc)?;
        let pb = BigInt::from(p);
        let k = kronecker(self.disc.value(), &pb);
        if k != 1 {
            return Ok(PrimeClass::NotRepresented { kronecker: k });
        }
        let level = self.level;
        if level.get() % p == 0 {
            let reps = class_reps_any_level(&self.disc, level)?;
            return Ok(PrimeClass::OutsideGenera { witness: first_witness(reps.iter(), &pb, level)? });
        }
        let coset = self
            .coset_of(&pb)
            .ok_or_else(|| Error::Invariant(format!("{p} lies in ker(chi) but in no coset of H")))?;
        match first_witness(self.genus(coset).into_iter(), &pb, level)? {
            Some((witness, rep)) => Ok(PrimeClass::Genus { coset, witness, rep }),
            None => Err(Error::Invariant(format!("no form in the genus of [{p}] represents it"))),
        }
    }
}

fn first_witness<'a>(forms: impl Iterator<Item = &'a Form>, m: &BigInt, level: GammaLevel) -> Result<Option<(Form, Representation)>> {
    for q in forms {
        if let Some(r) = find_representations(q, m, level)?.into_iter().find(|r| r.admissible) {
            return Ok(Some((q.clone(), r)));
        }
    }
    Ok(None)
}

/// Unit residues mod `|D|` of the shape
/// `x²` or `x² + m` (`D = −4m`, `N` odd), `x²` (`D = −4m`, `N` even), or
/// `x²` (`D = 1 − 4m`), with `gcd(x, N) = 1`.
pub fn principal_genus_congruences(d: &Discriminant, level: GammaLevel) -> BTreeSet<BigInt> {
    let modulus = d.abs();
    let n = level.as_bigint();
    let shifts = if d.is_zero_mod_4() && n.is_odd() {
        alloc::vec![BigInt::zero(), &modulus / 4]
    } else {
        alloc::vec![BigInt::zero()]
    };
    let period = modulus.lcm(&n);
    let mut out = BTreeSet::new();
    let mut x = BigInt::zero();
    while x < period {
        if x.gcd(&n).is_one() {
            for s in &shifts {
                let v = modp(&(&x * &x + s), &modulus);
                if v.gcd(&modulus).is_one() {
                    out.insert(v);
                }
            }
        }
        x += 1u32;
    }
    out
}

/// The least `m` with `gcd(m, nN) = 1` properly N-represented by `Q`.
pub fn coprime_value(q: &Form, n: &BigInt, level: GammaLevel, limit: &SearchLimit) -> Result<(BigInt, Representation)> {
    q.check_primitive_positive()?;
    let nn = level.as_bigint();
    if !q.a.gcd(&nn).is_one() {
        return Err(Error::InvalidArgument(format!("gcd({}, {}) != 1", q.a, level.get())));
    }
    let modulus = n * &nn;
    let ok = |r: &Representation| r.proper && r.admissible && r.m.gcd(&modulus).is_one();
    let bound = match limit {
        SearchLimit::Default => BigInt::from(4) * modulus.abs() * &nn * q.disc()?.abs(),
        SearchLimit::Max(b) => b.clone(),
    };
    let mut r = BigInt::one();
    let first = loop {
        if r > bound {
            return Err(Error::SearchBoundExceeded { what: "coprime represented value", bound });
        }
        if let Some(rep) = ring(&r, &nn).into_iter().map(|(x, y)| Representation::new(q, x, y, level)).find(ok) {
            break rep.m;
        }
        r += 1u32;
    };
    // every value ≤ first lies in a box fixed by positive-definiteness
    let abs_d = q.disc()?.abs();
    let xmax = isqrt(&(BigInt::from(4) * &q.c * &first / &abs_d));
    let ymax = isqrt(&(BigInt::from(4) * &q.a * &first / &abs_d));
    let mut best: Option<Representation> = None;
    let mut y = -ymax.clone();
    while y <= ymax {
        let mut x = -xmax.clone();
        while x <= xmax {
            let rep = Representation::new(q, x.clone(), y.clone(), level);
            if ok(&rep) && best.as_ref().map_or(true, |b| (&rep.m, rep.key()) < (&b.m, b.key())) {
                best = Some(rep);
            }
            x += 1u32;
        }
        y += 1u32;
    }
    let best = best.expect("the first hit lies in the box");
    Ok((best.m.clone(), best))
}

/// Polynomials in `x, y, z, w` with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Poly(BTreeMap<[u8; 4], BigInt>);

impl Poly {
    fn var(i: usize) -> Self {
        let mut e = [0u8; 4];
        e[i] = 1;
        Poly(BTreeMap::from([(e, BigInt::one())]))
    }

    fn constant(c: &BigInt) -> Self {
        Poly(BTreeMap::from([([0u8; 4], c.clone())]))
    }

    fn add(&self, o: &Poly) -> Poly {
        let mut out = self.0.clone();
        for (e, c) in &o.0 {
            *out.entry(*e).or_default() += c;
        }
        out.retain(|_, c| !c.is_zero());
        Poly(out)
    }

    fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|(e, c)| (*e, -c)).collect())
    }

    fn mul(&self, o: &Poly) -> Poly {
        let mut out: BTreeMap<[u8; 4], BigInt> = BTreeMap::new();
        for (e1, c1) in &self.0 {
            for (e2, c2) in &o.0 {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]];
                *out.entry(e).or_default() += c1 * c2;
            }
        }
        out.retain(|_, c| !c.is_zero());
        Poly(out)
    }
}

/// Checks
/// `(ax² + 2bxy + cy²)(az² + 2bzw + cw²) = (axz + bxw + byz + cyw)² + m(xw − yz)²`
/// with `m = ac − b²`: symbolically, at every sample `(x, y, z, w)`, and,
/// for samples with `gcd(xz, N) = 1`, `N | y`, `N | w` and `gcd(a, N) = 1`,
/// that the right-hand side is an N-representation by `X² + mY²`.
pub fn brahmagupta_check(a: &BigInt, b: &BigInt, c: &BigInt, level: GammaLevel, samples: &[[BigInt; 4]]) -> bool {
    let m = a * c - b * b;
    let two = BigInt::from(2);
    let lhs_at = |x: &BigInt, y: &BigInt| a * x * x + &two * b * x * y + c * y * y;
    let first_at = |s: &[BigInt; 4]| {
        let [x, y, z, w] = s;
        a * x * z + b * x * w + b * y * z + c * y * w
    };
    let second_at = |s: &[BigInt; 4]| {
        let [x, y, z, w] = s;
        x * w - y * z
    };

    let v: Vec<Poly> = (0..4).map(Poly::var).collect();
    let k = |n: &BigInt| Poly::constant(n);
    let form = |p: &Poly, q: &Poly| k(a).mul(p).mul(p).add(&k(&(&two * b)).mul(p).mul(q)).add(&k(c).mul(q).mul(q));
    let lhs = form(&v[0], &v[1]).mul(&form(&v[2], &v[3]));
    let first = k(a).mul(&v[0]).mul(&v[2]).add(&k(b).mul(&v[0]).mul(&v[3])).add(&k(b).mul(&v[1]).mul(&v[2])).add(&k(c).mul(&v[1]).mul(&v[3]));
    let second = v[0].mul(&v[3]).add(&v[1].mul(&v[2]).neg());
    let rhs = first.mul(&first).add(&k(&m).mul(&second).mul(&second));
    if lhs != rhs {
        return false;
    }

    let n = level.as_bigint();
    for s in samples {
        let [x, y, z, w] = s;
        let (f, g) = (first_at(s), second_at(s));
        if lhs_at(x, y) * lhs_at(z, w) != &f * &f + &m * &g * &g {
            return false;
        }
        let hyp = (x * z).gcd(&n).is_one() && y.is_multiple_of(&n) && w.is_multiple_of(&n) && a.gcd(&n).is_one();
        if hyp && !(f.gcd(&n).is_one() && g.is_multiple_of(&n)) {
            return false;
        }
    }
    true
}

/// An ideal of norm `m = Q(x, y)`: with `d = gcd(x, y)`, the proper
/// representation `(x/d, y/d)` of `m/d²` gives a form `(m/d², B, C)` in the
/// class of `Q`, and the result is `d·(ℤ(m/d²) + ℤ(−B + √D)/2)`.
pub fn ideal_of_norm_from_representation(q: &Form, r: &Representation, level: GammaLevel) -> Result<OIdeal> {
    let checked = Representation::new(q, r.x.clone(), r.y.clone(), level);
    if !checked.admissible || checked.m != r.m || !r.m.is_positive() {
        return Err(Error::InadmissibleRepresentation { x: r.x.clone(), y: r.y.clone() });
    }
    let d = r.x.gcd(&r.y);
    let prim = Representation::new(q, &r.x / &d, &r.y / &d, level);
    let (f, _) = form_from_representation(q, &prim, level)?;
    ideal_from_form(&f)?.scaled(&d.into())
}

/// Numeric value of a small residue, for display.
pub fn residues_u64(v: &[BigInt]) -> Vec<u64> {
    v.iter().filter_map(|x| x.to_u64()).collect()
}
