//! Lattices in the order `𝒪 = ℤ + ℤδ`, `δ = (D + √D)/2`, of discriminant
//! `D`. Used as an independent check on Dirichlet composition: ideals are
//! multiplied as raw lattices and compared in Hermite normal form.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{egcd, gcd3, modp};
use crate::classgroup::{dirichlet_compose, prepare_coprime, FormClassGroup, SearchLimit};
use crate::forms::{Discriminant, Form};
use crate::{Error, Result};

/// `𝒪 = ℤ[δ]` with `δ² = Dδ − (D² − D)/4`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadOrder {
    disc: Discriminant,
}

impl QuadOrder {
    pub fn new(disc: Discriminant) -> Self {
        QuadOrder { disc }
    }

    pub fn disc(&self) -> &Discriminant {
        &self.disc
    }

    /// `(x₁ + y₁δ)(x₂ + y₂δ)` as `(x, y)`.
    pub fn mul(&self, p: &(BigInt, BigInt), q: &(BigInt, BigInt)) -> (BigInt, BigInt) {
        let d = self.disc.value();
        let n = (d * d - d) / 4;
        let (x1, y1) = p;
        let (x2, y2) = q;
        (x1 * x2 - y1 * y2 * &n, x1 * y2 + x2 * y1 + y1 * y2 * d)
    }

    /// `conj(x + yδ) = (x + yD) − yδ`.
    pub fn conj(&self, p: &(BigInt, BigInt)) -> (BigInt, BigInt) {
        (&p.0 + &p.1 * self.disc.value(), -&p.1)
    }

    /// The whole order as an ideal.
    pub fn unit_ideal(&self) -> OIdeal {
        OIdeal {
            disc: self.disc.clone(),
            a: BigInt::one(),
            b: BigInt::zero(),
            c: BigInt::one(),
            scale: BigRational::one(),
        }
    }
}

/// The lattice `scale · (ℤa + ℤ(b + cδ))` with `a, c > 0`, `0 ≤ b < a` and
/// `gcd(a, b, c) = 1`. Two lattices are equal iff their `OIdeal`s are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OIdeal {
    disc: Discriminant,
    a: BigInt,
    b: BigInt,
    c: BigInt,
    scale: BigRational,
}

impl OIdeal {
    /// HNF of the lattice spanned by `x + yδ` for the given `(x, y)`.
    pub fn from_generators(order: &QuadOrder, gens: &[(BigInt, BigInt)]) -> Result<Self> {
        let mut a = BigInt::zero();
        let mut row: Option<(BigInt, BigInt)> = None; // (δ-coefficient, 1-coefficient)
        for (x, y) in gens {
            if y.is_zero() {
                a = a.gcd(x);
                continue;
            }
            row = Some(match row {
                None => {
                    if y.is_negative() {
                        (-y, -x)
                    } else {
                        (y.clone(), x.clone())
                    }
                }
                Some((c, b)) => {
                    let (g, u, w) = egcd(&c, y);
                    // the combination with zero δ-coefficient lands in ℤ
                    let rest = (y / &g) * &b - (&c / &g) * x;
                    a = a.gcd(&rest);
                    (g, u * b + w * x)
                }
            });
        }
        let (c, b) = row.ok_or_else(|| Error::InvalidArgument(format!("generators {gens:?} span a lattice of rank < 2")))?;
        if a.is_zero() {
            return Err(Error::InvalidArgument(format!("generators {gens:?} span a lattice of rank < 2")));
        }
        Ok(OIdeal::normalized(order.disc.clone(), a, b, c, BigRational::one()))
    }

    fn normalized(disc: Discriminant, a: BigInt, b: BigInt, c: BigInt, scale: BigRational) -> Self {
        let b = modp(&b, &a);
        let g = gcd3(&a, &b, &c);
        OIdeal {
            disc,
            a: &a / &g,
            b: &b / &g,
            c: &c / &g,
            scale: scale * BigRational::from(g),
        }
    }

    pub fn disc(&self) -> &Discriminant {
        &self.disc
    }

    /// `(a, b, c, scale)`: the lattice is `scale·(ℤa + ℤ(b + cδ))`.
    pub fn hnf(&self) -> (&BigInt, &BigInt, &BigInt, &BigRational) {
        (&self.a, &self.b, &self.c, &self.scale)
    }

    /// Basis `{a, b + cδ}` of the unscaled lattice.
    pub fn basis(&self) -> [(BigInt, BigInt); 2] {
        [(self.a.clone(), BigInt::zero()), (self.b.clone(), self.c.clone())]
    }

    pub fn scaled(&self, k: &BigRational) -> Result<Self> {
        if !k.is_positive() {
            return Err(Error::InvalidArgument(format!("scale {k} must be positive")));
        }
        let mut out = self.clone();
        out.scale = &out.scale * k;
        Ok(out)
    }

    /// `x + yδ ∈ I`.
    pub fn contains(&self, x: &BigRational, y: &BigRational) -> bool {
        let (x, y) = (x / &self.scale, y / &self.scale);
        if !x.is_integer() || !y.is_integer() {
            return false;
        }
        let (x, y) = (x.to_integer(), y.to_integer());
        if !(&y % &self.c).is_zero() {
            return false;
        }
        let k = &y / &self.c;
        (x - k * &self.b).is_multiple_of(&self.a)
    }

    /// Stable under multiplication by `δ`, i.e. an 𝒪-module.
    pub fn is_delta_closed(&self) -> bool {
        let order = QuadOrder::new(self.disc.clone());
        let delta = (BigInt::zero(), BigInt::one());
        let unit = OIdeal { scale: BigRational::one(), ..self.clone() };
        self.basis().iter().all(|g| {
            let (x, y) = order.mul(g, &delta);
            unit.contains(&BigRational::from(x), &BigRational::from(y))
        })
    }

    pub fn conjugate(&self) -> Self {
        let order = QuadOrder::new(self.disc.clone());
        let gens: Vec<_> = self.basis().iter().map(|g| order.conj(g)).collect();
        let base = OIdeal::from_generators(&order, &gens).expect("conjugate of a full lattice is full");
        let scale = &base.scale * &self.scale;
        OIdeal { scale, ..base }
    }
}

impl fmt::Display for OIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.scale.is_one() {
            write!(f, "({})*", self.scale)?;
        }
        write!(f, "<{}, {} + {}d>", self.a, self.b, self.c)
    }
}

/// `ℤa + ℤ(−b + √D)/2`; in the `(1, δ)` basis the second generator is
/// `δ − (D + b)/2`.
pub fn ideal_from_form(q: &Form) -> Result<OIdeal> {
    q.check_primitive_positive()?;
    let d = q.disc()?;
    let order = QuadOrder::new(d.clone());
    let shift = -(d.value() + &q.b) / 2;
    OIdeal::from_generators(&order, &[(q.a.clone(), BigInt::zero()), (shift, BigInt::one())])
}

/// Lattice product: the span of the four products of basis elements.
pub fn ideal_mul(i: &OIdeal, j: &OIdeal) -> Result<OIdeal> {
    if i.disc != j.disc {
        return Err(Error::DiscriminantMismatch(i.disc.value().clone(), j.disc.value().clone()));
    }
    let order = QuadOrder::new(i.disc.clone());
    let mut gens = Vec::with_capacity(4);
    for p in i.basis().iter() {
        for q in j.basis().iter() {
            gens.push(order.mul(p, q));
        }
    }
    let base = OIdeal::from_generators(&order, &gens)?;
    let scale = &base.scale * &i.scale * &j.scale;
    Ok(OIdeal { scale, ..base })
}

/// `|𝒪/I|`, extended multiplicatively to scaled lattices.
pub fn ideal_norm(i: &OIdeal) -> BigRational {
    BigRational::from(&i.a * &i.c) * &i.scale * &i.scale
}

/// Result of [`check_composition`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub pairs: usize,
    /// Index pairs `(i, j)` whose Dirichlet composite is not the lattice
    /// product.
    pub mismatches: Vec<(usize, usize)>,
}

/// Compares, for every pair of classes, the Dirichlet composite of `q₁`
/// and `q₂` (prepared so that `gcd(a₂, a₁N) = 1`) with the lattice product
/// of their ideals.
pub fn check_composition(g: &FormClassGroup, limit: &SearchLimit) -> Result<OracleReport> {
    let level = g.level;
    let n = level.as_bigint();
    let ideals: Vec<OIdeal> = g.elements.iter().map(|e| ideal_from_form(&e.rep)).collect::<Result<_>>()?;
    let mut mismatches = Vec::new();
    for (i, e1) in g.elements.iter().enumerate() {
        let q1 = &e1.rep;
        for (j, e2) in g.elements.iter().enumerate() {
            let (q2, _) = prepare_coprime(&e2.rep, &(&q1.a * &n), level, limit)?;
            let c = dirichlet_compose(q1, &q2, level)?;
            if ideal_mul(&ideals[i], &ideal_from_form(&q2)?)? != ideal_from_form(&c)? {
                mismatches.push((i, j));
            }
        }
    }
    Ok(OracleReport { pairs: g.order() * g.order(), mismatches })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(a: i64, b: i64, c: i64) -> Form {
        Form::new(a, b, c)
    }

    fn int(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    #[test]
    fn order_arithmetic() {
        // D = −4: δ = −2 + i, δ² = −4δ − 5
        let o = QuadOrder::new(Discriminant::new(-4).unwrap());
        let delta = (BigInt::zero(), BigInt::one());
        assert_eq!(o.mul(&delta, &delta), (BigInt::from(-5), BigInt::from(-4)));
        // δ·δ̄ = norm(δ) = 5
        assert_eq!(o.mul(&delta, &o.conj(&delta)), (BigInt::from(5), BigInt::zero()));
    }

    #[test]
    fn form_ideals() {
        let i = ideal_from_form(&f(1, 0, 1)).unwrap();
        assert_eq!(i, QuadOrder::new(Discriminant::new(-4).unwrap()).unit_ideal());
        assert_eq!(ideal_norm(&i), int(1));
        let j = ideal_from_form(&f(2, 0, 1)).unwrap();
        assert_eq!(ideal_norm(&j), int(2));
        assert!(j.contains(&int(2), &int(0)));
        // √−8/2 = δ + 4
        assert!(j.contains(&int(4), &int(1)));
        assert!(!j.contains(&int(1), &int(0)));
        assert_eq!(ideal_norm(&ideal_from_form(&f(2, 2, 1)).unwrap()), int(2));
        assert!(ideal_from_form(&f(2, 2, 2)).is_err());
    }

    #[test]
    fn products() {
        let i = ideal_from_form(&f(3, 2, 5)).unwrap();
        let o = QuadOrder::new(i.disc().clone());
        assert_eq!(ideal_mul(&i, &o.unit_ideal()).unwrap(), i);
        let j = ideal_from_form(&f(2, 0, 7)).unwrap();
        assert_eq!(ideal_norm(&ideal_mul(&i, &j).unwrap()), int(6));
        // 𝔟𝔟̄ = N(𝔟)𝒪
        let ii = ideal_mul(&i, &i.conjugate()).unwrap();
        assert_eq!(ii, o.unit_ideal().scaled(&int(3)).unwrap());
        assert_eq!(ideal_from_form(&f(3, -2, 5)).unwrap(), i.conjugate());
        assert!(ii.is_delta_closed() && i.is_delta_closed());
    }

    #[test]
    fn rank_checked() {
        let o = QuadOrder::new(Discriminant::new(-7).unwrap());
        assert!(OIdeal::from_generators(&o, &[(BigInt::from(3), BigInt::zero())]).is_err());
        assert!(OIdeal::from_generators(&o, &[(BigInt::from(1), BigInt::from(2))]).is_err());
    }

    #[test]
    fn composition_check() {
        use crate::classgroup::class_group;
        use crate::forms::GammaLevel;
        let g = class_group(&Discriminant::new(-56).unwrap(), GammaLevel::new(3).unwrap()).unwrap();
        let r = check_composition(&g, &SearchLimit::Default).unwrap();
        assert_eq!(r.pairs, 64);
        assert!(r.mismatches.is_empty());
    }
}
