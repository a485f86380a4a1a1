//! The fundamental region 𝔉 of Γ₀(p), p ≥ 5 prime, and the simpler regions
//! for SL₂(ℤ), Γ₀(2) and Γ₀(3).
//!
//! The open part of the Γ₀(p) region is
//! `{|Re τ| < 1/2} ∩ ⋂_{k ∈ S_p} {|τ − k/p| > 1/p}` with `S_p` the
//! symmetric residues `±1, …, ±(p−1)/2`. Its boundary is a pair of vertical
//! lines and `p − 1` arcs; `γ_k` glues `arc(−k⁻¹)` to `arc(k)`. The closure
//! is cut down to exactly one point per orbit by the seven conditions in
//! [`contains`]:
//!
//! 1. `|Re τ| ≤ 1/2`
//! 2. `|τ − k/p| ≥ 1/p` for every `k ∈ S_p`
//! 3. `|Re τ| = 1/2 ⟹ Re τ = −1/2`
//! 4. `|τ − 1/p| ≠ 1/p`
//! 5. on `arc(k)` with `k ∈ E⁽²⁾`: `Re τ ≤ k/p`
//! 6. on `arc(k)` with `k ∉ {±1} ∪ E⁽²⁾`: `Re τ ≤ (2k₍₂₎ + 1)/2p`
//! 7. `τ` is not a corner `(2k − 1)/2p + i√3/2p` with `k ∉ {1} ∪ E⁽³⁾`,
//!    `k ≠ k₍₃₎`
//!
//! Corners are compared through `Re τ` and `Im(τ)²`, so no square roots are
//! ever formed.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::arith::is_prime_u64;
use crate::forms::{CmPoint, GammaLevel, GroupElement};
use crate::{Error, Result};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn check_prime(p: i64) -> Result<()> {
    if p >= 5 && is_prime_u64(p as u64) {
        Ok(())
    } else {
        Err(Error::NotPrimeAtLeastFive(p))
    }
}

/// `S_p = {±1, ±2, …, ±(p−1)/2}` for a prime `p ≥ 5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymmetricResidues {
    p: i64,
}

impl SymmetricResidues {
    pub fn new(p: i64) -> Result<Self> {
        check_prime(p)?;
        Ok(SymmetricResidues { p })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn half(&self) -> i64 {
        (self.p - 1) / 2
    }

    /// Ascending: `−(p−1)/2, …, −1, 1, …, (p−1)/2`.
    pub fn elements(&self) -> Vec<i64> {
        let h = self.half();
        (-h..=h).filter(|&k| k != 0).collect()
    }

    pub fn contains(&self, k: i64) -> bool {
        k != 0 && k.abs() <= self.half()
    }

    /// `⟨x⟩`: the representative of `x` in `S_p`. `None` when `p | x`.
    pub fn reduce(&self, x: i64) -> Option<i64> {
        let r = x.rem_euclid(self.p);
        if r == 0 {
            None
        } else if r > self.half() {
            Some(r - self.p)
        } else {
            Some(r)
        }
    }

    /// `x⁻¹ ∈ S_p` with `x·x⁻¹ ≡ 1 (mod p)`.
    pub fn inverse(&self, x: i64) -> Result<i64> {
        let r = x.rem_euclid(self.p);
        if r == 0 {
            return Err(Error::InvalidArgument(format!("{x} is not invertible mod {}", self.p)));
        }
        // p is small; Fermat keeps this simple.
        let mut acc = 1i64;
        let mut base = r;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        Ok(self.reduce(acc).expect("inverse of a unit is a unit"))
    }
}

/// `x⁻¹ ∈ S_p`.
pub fn sym_inverse(p: i64, x: i64) -> Result<i64> {
    SymmetricResidues::new(p)?.inverse(x)
}

/// `γ_k = (k, (k·k⁻¹ − 1)/p; p, k⁻¹) ∈ Γ₀(p)`.
pub fn gamma_k(p: i64, k: i64) -> Result<GroupElement> {
    let s = SymmetricResidues::new(p)?;
    if !s.contains(k) {
        return Err(Error::InvalidArgument(format!("{k} is not in S_{p}")));
    }
    let kinv = s.inverse(k)?;
    GroupElement::new(k, (k * kinv - 1) / p, p, kinv)
}

/// Elliptic points of Γ₀(p) and the selectors `k₍₂₎`, `k₍₃₎` that pick one
/// representative on the boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllipticData {
    residues: SymmetricResidues,
    /// `k ∈ S_p` with `k² ≡ −1 (mod p)`.
    pub e2: Vec<i64>,
    /// `k ∈ S_p` with `k² − k + 1 ≡ 0 (mod p)`.
    pub e3: Vec<i64>,
}

impl EllipticData {
    pub fn new(p: i64) -> Result<Self> {
        let residues = SymmetricResidues::new(p)?;
        let ks = residues.elements();
        let e2 = ks.iter().copied().filter(|k| (k * k + 1).rem_euclid(p) == 0).collect();
        let e3 = ks.iter().copied().filter(|k| (k * k - k + 1).rem_euclid(p) == 0).collect();
        Ok(EllipticData { residues, e2, e3 })
    }

    pub fn p(&self) -> i64 {
        self.residues.p
    }

    pub fn residues(&self) -> &SymmetricResidues {
        &self.residues
    }

    pub fn in_e2(&self, k: i64) -> bool {
        self.e2.contains(&k)
    }

    pub fn in_e3(&self, k: i64) -> bool {
        self.e3.contains(&k)
    }

    /// `k₍₂₎ = min{k, −k⁻¹}`.
    pub fn k2(&self, k: i64) -> Result<i64> {
        let kinv = self.residues.inverse(k)?;
        Ok(k.min(-kinv))
    }

    /// `f(k) = ⟨1 − k⁻¹⟩` on `S_p − {1}`.
    pub fn f(&self, k: i64) -> Result<i64> {
        if k == 1 || !self.residues.contains(k) {
            return Err(Error::InvalidArgument(format!("f is defined on S_p - {{1}}, got {k}")));
        }
        let kinv = self.residues.inverse(k)?;
        Ok(self.residues.reduce(1 - kinv).expect("k != 1 so 1 - k^-1 is a unit"))
    }

    /// `(k, f(k), f²(k))`.
    pub fn orbit3(&self, k: i64) -> Result<[i64; 3]> {
        let k1 = self.f(k)?;
        let k2 = self.f(k1)?;
        Ok([k, k1, k2])
    }

    /// `k₍₃₎ = min` of the `f`-orbit of `k`.
    pub fn k3(&self, k: i64) -> Result<i64> {
        let o = self.orbit3(k)?;
        Ok(o[0].min(o[1]).min(o[2]))
    }
}

pub fn elliptic_data(p: i64) -> Result<EllipticData> {
    EllipticData::new(p)
}

pub fn orbit3(p: i64, k: i64) -> Result<[i64; 3]> {
    EllipticData::new(p)?.orbit3(k)
}

/// The corner `(2k − 1)/2p + i√3/2p` where `arc(k − 1)` meets `arc(k)`
/// (or the line `Re τ = −1/2` for `k = −(p−1)/2`).
pub fn corner(p: i64, k: i64) -> CmPoint {
    CmPoint::new(rat(2 * k - 1, 2 * p), rat(3, 4 * p * p)).expect("positive imaginary part")
}

/// Top of `arc(k)`: `k/p + i/p`.
pub fn arc_top(p: i64, k: i64) -> CmPoint {
    CmPoint::new(rat(k, p), rat(1, p * p)).expect("positive imaginary part")
}

/// Membership of `τ` in 𝔉_{Γ₀(p)}.
pub fn contains(p: i64, t: &CmPoint) -> Result<bool> {
    Ok(contains_with(&EllipticData::new(p)?, t))
}

pub fn contains_with(data: &EllipticData, t: &CmPoint) -> bool {
    let p = data.p();
    let half = rat(1, 2);
    let re = t.re();
    let radius_sq = rat(1, p * p);
    let ks = data.residues().elements();
    let dist = |k: i64| t.dist_sq_to(&rat(k, p));

    // (1), (3)
    if re.abs() > half || *re == half {
        return false;
    }
    // (2)
    if ks.iter().any(|&k| dist(k) < radius_sq) {
        return false;
    }
    // (4)
    if dist(1) == radius_sq {
        return false;
    }
    for &k in &ks {
        if dist(k) != radius_sq {
            continue;
        }
        if data.in_e2(k) {
            // (5)
            if *re > rat(k, p) {
                return false;
            }
        } else if k != 1 && k != -1 {
            // (6)
            let k2 = data.k2(k).expect("k in S_p");
            if *re > rat(2 * k2 + 1, 2 * p) {
                return false;
            }
        }
    }
    // (7)
    if *t.im_sq() == rat(3, 4 * p * p) {
        for &k in &ks {
            if k == 1 || data.in_e3(k) {
                continue;
            }
            if data.k3(k).expect("k != 1") != k && *re == rat(2 * k - 1, 2 * p) {
                return false;
            }
        }
    }
    true
}

/// Membership in the classical SL₂(ℤ) region (`Re τ ≤ 0` kept on the
/// boundary).
pub fn contains_sl2(t: &CmPoint) -> bool {
    let half = rat(1, 2);
    let one = rat(1, 1);
    let re = t.re();
    let abs_sq = t.abs_sq();
    if re.abs() > half || abs_sq < one {
        return false;
    }
    if (re.abs() == half || abs_sq == one) && re.is_positive() {
        return false;
    }
    true
}

/// Membership in the Γ₀(2) / Γ₀(3) region (boundary points kept only when
/// `Re τ < 0`).
pub fn contains_small(p: i64, t: &CmPoint) -> Result<bool> {
    if p != 2 && p != 3 {
        return Err(Error::InvalidArgument(format!("small-level region needs p = 2 or 3, got {p}")));
    }
    let half = rat(1, 2);
    let r = rat(1, p * p);
    let re = t.re();
    let (dp, dm) = (t.dist_sq_to(&rat(1, p)), t.dist_sq_to(&rat(-1, p)));
    if re.abs() > half || dp < r || dm < r {
        return Ok(false);
    }
    if (re.abs() == half || dp == r || dm == r) && !re.is_negative() {
        return Ok(false);
    }
    Ok(true)
}

/// The fundamental region attached to a level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Region {
    Full,
    Small(i64),
    Prime(EllipticData),
}

impl Region {
    /// Regions exist for levels 1, 2, 3 and primes ≥ 5.
    pub fn for_level(level: GammaLevel) -> Result<Region> {
        match level.get() {
            1 => Ok(Region::Full),
            2 | 3 => Ok(Region::Small(level.get() as i64)),
            n if n >= 5 && is_prime_u64(n) => Ok(Region::Prime(EllipticData::new(n as i64)?)),
            n => Err(Error::UnsupportedLevel(n)),
        }
    }

    pub fn contains(&self, t: &CmPoint) -> bool {
        match self {
            Region::Full => contains_sl2(t),
            Region::Small(p) => contains_small(*p, t).expect("p is 2 or 3"),
            Region::Prime(data) => contains_with(data, t),
        }
    }
}

/// An arc `|τ − k/p| = 1/p` of the boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryArc {
    pub k: i64,
    pub center: BigRational,
    pub radius: BigRational,
    /// Real parts of the endpoints of the part of the arc that bounds the
    /// region.
    pub from_re: BigRational,
    pub to_re: BigRational,
}

/// Boundary of the open region `R_{Γ₀(p)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionBoundary {
    pub p: i64,
    pub arcs: Vec<BoundaryArc>,
    /// Real parts of the vertical sides, `−1/2` and `1/2`.
    pub lines: Vec<BigRational>,
}

pub fn r_gamma0p_boundary(p: i64) -> Result<RegionBoundary> {
    let s = SymmetricResidues::new(p)?;
    let h = s.half();
    let arcs = s
        .elements()
        .into_iter()
        .map(|k| {
            let from = if k == -h { rat(-1, 2) } else { rat(2 * k - 1, 2 * p) };
            let to = if k == h { rat(1, 2) } else { rat(2 * k + 1, 2 * p) };
            // arcs ±1 are tangent at the cusp 0
            let (from, to) = match k {
                1 => (BigRational::zero(), to),
                -1 => (from, BigRational::zero()),
                _ => (from, to),
            };
            BoundaryArc { k, center: rat(k, p), radius: rat(1, p), from_re: from, to_re: to }
        })
        .collect();
    Ok(RegionBoundary { p, arcs, lines: alloc::vec![rat(-1, 2), rat(1, 2)] })
}
