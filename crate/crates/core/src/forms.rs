//! Forms, matrices, CM points and the actions that tie them together.
//!
//! A form `Q = (a, b, c)` stands for `ax² + bxy + cy²`. A matrix
//! `g = (α β; γ δ)` acts on the right by `(Q·g)(x, y) = Q(αx + βy, γx + δy)`,
//! and on the upper half-plane by the Möbius map `τ ↦ (ατ + β)/(γτ + δ)`.
//! The two actions are linked by `τ_{Q·g} = g⁻¹(τ_Q)`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;
use core::ops::Mul;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{gcd3, modp};
use crate::{Error, Result};

/// A negative discriminant `D ≡ 0, 1 (mod 4)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Discriminant(BigInt);

impl Discriminant {
    pub fn new(d: impl Into<BigInt>) -> Result<Self> {
        let d = d.into();
        let r = modp(&d, &BigInt::from(4));
        if d.is_negative() && (r.is_zero() || r.is_one()) {
            Ok(Discriminant(d))
        } else {
            Err(Error::InvalidDiscriminant(d))
        }
    }

    pub fn value(&self) -> &BigInt {
        &self.0
    }

    /// `|D|`.
    pub fn abs(&self) -> BigInt {
        -&self.0
    }

    pub fn is_zero_mod_4(&self) -> bool {
        self.0.is_even()
    }
}

impl fmt::Display for Discriminant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The level `N` of Γ₀(N).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GammaLevel(u64);

impl GammaLevel {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            Err(Error::InvalidLevel(n))
        } else {
            Ok(GammaLevel(n))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn as_bigint(self) -> BigInt {
        BigInt::from(self.0)
    }

    /// Membership of `g` in Γ₀(N): lower-left entry divisible by N.
    pub fn contains(self, g: &GroupElement) -> bool {
        (&g.c % BigInt::from(self.0)).is_zero()
    }

    /// `[SL₂(ℤ) : Γ₀(N)] = N ∏_{p | N} (1 + 1/p)`.
    pub fn index(self) -> u64 {
        let mut idx = self.0;
        for p in crate::arith::prime_divisors_u64(self.0) {
            idx = idx / p * (p + 1);
        }
        idx
    }
}

/// The binary quadratic form `ax² + bxy + cy²`.
///
/// Ordering is lexicographic on `(a, b, c)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Form {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl Form {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Self {
        Form { a: a.into(), b: b.into(), c: c.into() }
    }

    /// Builds a form of `QF(D)`, rejecting anything that is not primitive
    /// positive-definite.
    pub fn primitive_positive(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Result<Self> {
        let f = Form::new(a, b, c);
        f.check_primitive_positive()?;
        Ok(f)
    }

    /// `b² − 4ac`.
    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    pub fn content(&self) -> BigInt {
        gcd3(&self.a, &self.b, &self.c)
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.a.is_positive() && self.discriminant().is_negative()
    }

    pub fn check_primitive_positive(&self) -> Result<()> {
        if self.is_positive_definite() && self.is_primitive() {
            Ok(())
        } else {
            Err(Error::NotPrimitivePositiveDefinite(self.to_string()))
        }
    }

    /// The validated discriminant of a positive-definite form.
    pub fn disc(&self) -> Result<Discriminant> {
        Discriminant::new(self.discriminant())
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.a * x * x + &self.b * x * y + &self.c * y * y
    }

    /// `Q·g`, i.e. `(x, y) ↦ Q(αx + βy, γx + δy)`.
    pub fn act(&self, g: &GroupElement) -> Form {
        let a = self.eval(&g.a, &g.c);
        let c = self.eval(&g.b, &g.d);
        let b = BigInt::from(2) * &self.a * &g.a * &g.b
            + &self.b * (&g.a * &g.d + &g.b * &g.c)
            + BigInt::from(2) * &self.c * &g.c * &g.d;
        Form { a, b, c }
    }

    /// `(a, −b, c)`, the inverse class under composition.
    pub fn opposite(&self) -> Form {
        Form { a: self.a.clone(), b: -&self.b, c: self.c.clone() }
    }

    /// Human-readable polynomial, e.g. `2x^2 - xy + y^2`.
    pub fn polynomial(&self) -> String {
        let mut out = String::new();
        for (coef, mono) in [(&self.a, "x^2"), (&self.b, "xy"), (&self.c, "y^2")] {
            if coef.is_zero() {
                continue;
            }
            let mag = coef.abs();
            let mag_s = if mag.is_one() { String::new() } else { mag.to_string() };
            if out.is_empty() {
                if coef.is_negative() {
                    out.push('-');
                }
            } else if coef.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&mag_s);
            out.push_str(mono);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Serialized as `a,b,c`.
impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.a, self.b, self.c)
    }
}

impl FromStr for Form {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(',').map(|p| p.trim().parse::<BigInt>());
        match (parts.next(), parts.next(), parts.next(), parts.next()) {
            (Some(Ok(a)), Some(Ok(b)), Some(Ok(c)), None) => Ok(Form { a, b, c }),
            _ => Err(Error::InvalidArgument(format!("cannot parse form {s:?}, expected a,b,c"))),
        }
    }
}

/// An element `(a b; c d)` of SL₂(ℤ).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl GroupElement {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self> {
        let g = GroupElement { a: a.into(), b: b.into(), c: c.into(), d: d.into() };
        let det = g.det();
        if det.is_one() {
            Ok(g)
        } else {
            Err(Error::BadDeterminant(det))
        }
    }

    pub fn identity() -> Self {
        Self::raw(1, 0, 0, 1)
    }

    /// `(1 k; 0 1)`.
    pub fn translation(k: impl Into<BigInt>) -> Self {
        GroupElement { a: BigInt::one(), b: k.into(), c: BigInt::zero(), d: BigInt::one() }
    }

    /// `(0 −1; 1 0)`.
    pub fn s() -> Self {
        Self::raw(0, -1, 1, 0)
    }

    pub fn minus_identity() -> Self {
        Self::raw(-1, 0, 0, -1)
    }

    pub(crate) fn raw(a: i64, b: i64, c: i64, d: i64) -> Self {
        GroupElement { a: a.into(), b: b.into(), c: c.into(), d: d.into() }
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn inverse(&self) -> Self {
        GroupElement { a: self.d.clone(), b: -&self.b, c: -&self.c, d: self.a.clone() }
    }

    pub fn neg(&self) -> Self {
        GroupElement { a: -&self.a, b: -&self.b, c: -&self.c, d: -&self.d }
    }

    /// Image of a rational cusp; `None` means the cusp at infinity.
    pub fn apply_cusp(&self, q: &BigRational) -> Option<BigRational> {
        let num = BigRational::from(self.a.clone()) * q + BigRational::from(self.b.clone());
        let den = BigRational::from(self.c.clone()) * q + BigRational::from(self.d.clone());
        if den.is_zero() {
            None
        } else {
            Some(num / den)
        }
    }
}

impl<'a> Mul<&'a GroupElement> for &'a GroupElement {
    type Output = GroupElement;

    fn mul(self, o: &GroupElement) -> GroupElement {
        GroupElement {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }
}

impl Mul for GroupElement {
    type Output = GroupElement;

    fn mul(self, o: GroupElement) -> GroupElement {
        &self * &o
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.b, self.c, self.d)
    }
}

/// A point `τ` of the upper half-plane with rational real part and rational
/// squared imaginary part. Every CM point `τ_Q = (−b + √D)/2a` is of this
/// shape, as are the order-3 corners of the Γ₀(p) region.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CmPoint {
    re: BigRational,
    im_sq: BigRational,
}

impl CmPoint {
    pub fn new(re: BigRational, im_sq: BigRational) -> Result<Self> {
        if im_sq.is_positive() {
            Ok(CmPoint { re, im_sq })
        } else {
            Err(Error::InvalidArgument(format!("Im(τ)² = {im_sq} is not positive")))
        }
    }

    /// `τ = (num_b + √D)/den`.
    pub fn from_parts(num_b: impl Into<BigInt>, den: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self> {
        let (num_b, den, d) = (num_b.into(), den.into(), d.into());
        if !den.is_positive() || !d.is_negative() {
            return Err(Error::InvalidArgument(format!("bad CM point ({num_b} + sqrt({d}))/{den}")));
        }
        let den_sq = &den * &den;
        Ok(CmPoint {
            re: BigRational::new(num_b, den),
            im_sq: BigRational::new(-d, den_sq),
        })
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im_sq(&self) -> &BigRational {
        &self.im_sq
    }

    /// `|τ|²`.
    pub fn abs_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im_sq
    }

    /// `|τ − r|²` for a real rational `r`.
    pub fn dist_sq_to(&self, r: &BigRational) -> BigRational {
        let dx = &self.re - r;
        &dx * &dx + &self.im_sq
    }

    /// The primitive positive-definite form whose CM point is `τ`.
    ///
    /// `τ` is a root of `X² − 2Re(τ)X + |τ|²`; clearing denominators and
    /// removing content gives the form.
    pub fn to_form(&self) -> Form {
        let b = -BigRational::from(BigInt::from(2)) * &self.re;
        let c = self.abs_sq();
        let l = b.denom().lcm(c.denom());
        let a_i = l.clone();
        let b_i = (b * BigRational::from(l.clone())).to_integer();
        let c_i = (c * BigRational::from(l)).to_integer();
        let g = gcd3(&a_i, &b_i, &c_i);
        Form { a: a_i / &g, b: b_i / &g, c: c_i / g }
    }

    /// `(num_b, den, D)` with `τ = (num_b + √D)/den`, taken from [`Self::to_form`].
    pub fn parts(&self) -> (BigInt, BigInt, BigInt) {
        let q = self.to_form();
        let d = q.discriminant();
        (-q.b, BigInt::from(2) * q.a, d)
    }
}

impl fmt::Display for CmPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (nb, den, d) = self.parts();
        write!(f, "({nb} + sqrt({d}))/({den})")
    }
}

/// `τ_Q = (−b + √D)/2a`. Rejects forms that are not positive-definite.
pub fn cm_point(q: &Form) -> Result<CmPoint> {
    if !q.is_positive_definite() {
        return Err(Error::NotPrimitivePositiveDefinite(q.to_string()));
    }
    CmPoint::from_parts(-&q.b, BigInt::from(2) * &q.a, q.discriminant())
}

/// `g(τ) = (aτ + b)/(cτ + d)`, exactly.
pub fn moebius(g: &GroupElement, t: &CmPoint) -> CmPoint {
    let rat = |x: &BigInt| BigRational::from(x.clone());
    let (a, b, c, d) = (rat(&g.a), rat(&g.b), rat(&g.c), rat(&g.d));
    let abs_sq = t.abs_sq();
    // |cτ + d|² never vanishes off the real line.
    let m = &c * &c * &abs_sq + BigRational::from(BigInt::from(2)) * &c * &d * &t.re + &d * &d;
    let num_re = &a * &c * &abs_sq + (&a * &d + &b * &c) * &t.re + &b * &d;
    CmPoint { re: num_re / &m, im_sq: &t.im_sq / (&m * &m) }
}

/// Kronecker symbol `(D/m)`.
pub fn kronecker(d: &BigInt, m: &BigInt) -> i8 {
    let eight = BigInt::from(8);
    // (a/2) for odd a: +1 if a ≡ ±1 (mod 8), −1 if a ≡ ±3.
    let tab2 = |a: &BigInt| -> i8 {
        let r = modp(a, &eight);
        if r == BigInt::from(1) || r == BigInt::from(7) {
            1
        } else {
            -1
        }
    };
    let mut a = d.clone();
    let mut b = m.clone();
    if b.is_zero() {
        return if a.abs().is_one() { 1 } else { 0 };
    }
    if a.is_even() && b.is_even() {
        return 0;
    }
    let mut k: i8 = 1;
    let v = b.trailing_zeros().unwrap_or(0);
    b >>= v;
    if v % 2 == 1 {
        k = tab2(&a);
    }
    if b.is_negative() {
        b = -b;
        if a.is_negative() {
            k = -k;
        }
    }
    // Jacobi symbol (a/b), b odd and positive.
    loop {
        if a.is_zero() {
            return if b.is_one() { k } else { 0 };
        }
        let v = a.trailing_zeros().unwrap_or(0);
        a >>= v;
        if v % 2 == 1 {
            k *= tab2(&b);
        }
        let four = BigInt::from(4);
        if modp(&a, &four) == BigInt::from(3) && modp(&b, &four) == BigInt::from(3) {
            k = -k;
        }
        let r = a.abs();
        a = modp(&b, &r);
        b = r;
    }
}

/// `{Q(x, y) mod M : gcd(x, N) = 1, y ≡ 0 (mod N)}`.
///
/// Values mod `M` depend only on `x, y mod M` and the constraints only on
/// `x, y mod N`, so one period of length `lcm(M, N)` in each variable is
/// enough.
pub fn representation_values(q: &Form, level: GammaLevel, modulus: &BigInt) -> Result<BTreeSet<BigInt>> {
    if !modulus.is_positive() {
        return Err(Error::InvalidArgument(format!("modulus {modulus} must be positive")));
    }
    let n = level.as_bigint();
    let period = modulus.lcm(&n);
    let mut out = BTreeSet::new();
    let mut x = BigInt::zero();
    while x < period {
        if x.gcd(&n).is_one() {
            let mut y = BigInt::zero();
            while y < period {
                out.insert(modp(&q.eval(&x, &y), modulus));
                y += &n;
            }
        }
        x += 1u32;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn f(a: i64, b: i64, c: i64) -> Form {
        Form::new(a, b, c)
    }

    fn g(a: i64, b: i64, c: i64, d: i64) -> GroupElement {
        GroupElement::new(a, b, c, d).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn act_examples() {
        assert_eq!(f(1, 0, 1).act(&GroupElement::identity()), f(1, 0, 1));
        assert_eq!(f(1, 0, 1).act(&g(1, 1, 0, 1)), f(1, 2, 2));
        // Q(x, −x + y) for Q = 2x² + 2xy + y²: 2x² + 2x(y − x) + (y − x)² = x² + y².
        let r = f(2, 2, 1).act(&g(1, 0, -1, 1));
        assert_eq!(r, f(1, 0, 1));
        assert_eq!(r.discriminant(), BigInt::from(-4));
    }

    #[test]
    fn act_is_right_action() {
        let q = f(3, 1, 5);
        let (g1, g2) = (g(2, 1, 1, 1), g(1, -3, 0, 1));
        assert_eq!(q.act(&g1).act(&g2), q.act(&(&g1 * &g2)));
    }

    #[test]
    fn determinant_checked() {
        assert_eq!(GroupElement::new(1, 1, 1, 1), Err(Error::BadDeterminant(BigInt::zero())));
    }

    #[test]
    fn cm_point_examples() {
        let i = cm_point(&f(1, 0, 1)).unwrap();
        assert_eq!(i.re(), &rat(0, 1));
        assert_eq!(i.im_sq(), &rat(1, 1));
        let t = cm_point(&f(2, 2, 1)).unwrap();
        assert_eq!(t, CmPoint::new(rat(-1, 2), rat(1, 4)).unwrap());
        assert!(cm_point(&f(1, 3, 1)).is_err());
        assert_eq!(t.to_form(), f(2, 2, 1));
        assert_eq!(t.to_string(), "(-2 + sqrt(-4))/(4)");
    }

    #[test]
    fn moebius_examples() {
        let i = cm_point(&f(1, 0, 1)).unwrap();
        assert_eq!(moebius(&GroupElement::identity(), &i), i);
        assert_eq!(moebius(&GroupElement::s(), &i), i);
        let t = cm_point(&f(2, 2, 1)).unwrap();
        let shifted = moebius(&g(1, 1, 0, 1), &t);
        assert_eq!(shifted, CmPoint::new(rat(1, 2), rat(1, 4)).unwrap());
    }

    #[test]
    fn kronecker_examples() {
        let k = |d: i64, m: i64| kronecker(&BigInt::from(d), &BigInt::from(m));
        assert_eq!(k(-28, 9), 1);
        assert_eq!(k(-28, 3), -1);
        assert_eq!(k(-28, 1), 1);
        assert_eq!(k(-4, 3), -1);
        assert_eq!(k(-4, 5), 1);
        assert_eq!(k(-3, 2), -1);
        assert_eq!(k(-7, 2), 1);
        assert_eq!(k(-8, 2), 0);
        assert_eq!(k(5, -1), 1);
        assert_eq!(k(-5, -1), -1);
        assert_eq!(k(1, 0), 1);
        assert_eq!(k(2, 0), 0);
    }

    #[test]
    fn representation_values_examples() {
        let units = |s: BTreeSet<BigInt>| -> Vec<i64> {
            s.into_iter()
                .filter(|v| v.gcd(&BigInt::from(28)).is_one())
                .map(|v| i64::try_from(v).unwrap())
                .collect()
        };
        let n2 = GammaLevel::new(2).unwrap();
        let m = BigInt::from(28);
        assert_eq!(units(representation_values(&f(1, 0, 7), n2, &m).unwrap()), [1, 9, 25]);
        assert_eq!(units(representation_values(&f(7, 0, 1), n2, &m).unwrap()), [11, 15, 23]);
        let one = representation_values(&f(1, 0, 1), GammaLevel::new(1).unwrap(), &BigInt::one()).unwrap();
        assert_eq!(one.into_iter().collect::<Vec<_>>(), [BigInt::zero()]);
    }

    #[test]
    fn parse_and_display() {
        let q: Form = " 7, -3 ,2".parse().unwrap();
        assert_eq!(q, f(7, -3, 2));
        assert_eq!(q.to_string(), "7,-3,2");
        assert!("1,2".parse::<Form>().is_err());
        assert!("1,2,3,4".parse::<Form>().is_err());
        assert_eq!(f(2, -1, 1).polynomial(), "2x^2 - xy + y^2");
        assert_eq!(f(1, 0, 7).polynomial(), "x^2 + 7y^2");
    }

    #[test]
    fn level_index() {
        let idx = |n| GammaLevel::new(n).unwrap().index();
        assert_eq!(idx(1), 1);
        assert_eq!(idx(5), 6);
        assert_eq!(idx(6), 12);
        assert_eq!(idx(4), 6);
        assert!(GammaLevel::new(0).is_err());
    }

    #[test]
    fn discriminant_validation() {
        assert!(Discriminant::new(-4).is_ok());
        assert!(Discriminant::new(-7).is_ok());
        assert!(Discriminant::new(-5).is_err());
        assert!(Discriminant::new(5).is_err());
        assert!(Discriminant::new(0).is_err());
    }
}
