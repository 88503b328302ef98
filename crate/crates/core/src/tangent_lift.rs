//! Classes in `H₁(UT Σ; ℤ/r)`, written as a base homology class plus a
//! multiple of the fiber class `ζ`.
//!
//! Coordinates are taken relative to a reference splitting in which the lifts
//! of the fixed symplectic basis curves have offset `0`. Everything observable
//! (spin values, orbits, group orders) is independent of that choice; see
//! [`LiftedClass::translate_splitting`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modring::{intersection_unchecked, BaseClass, Modulus};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LiftedClass {
    pub base: BaseClass,
    pub zeta: u32,
}

impl LiftedClass {
    pub fn new(base: BaseClass, zeta: i64) -> Self {
        let zeta = base.modulus().reduce(zeta);
        LiftedClass { base, zeta }
    }

    /// A lift with offset zero in the reference splitting.
    pub fn straight(base: BaseClass) -> Self {
        LiftedClass { base, zeta: 0 }
    }

    #[inline]
    pub fn genus(&self) -> usize {
        self.base.genus()
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.base.modulus()
    }

    pub(crate) fn check_compatible(&self, other: &LiftedClass) -> Result<()> {
        self.base.check_compatible(&other.base)
    }

    /// Plain group addition in `H₁(UTS)` (no surgery correction).
    pub fn add(&self, other: &LiftedClass) -> Result<LiftedClass> {
        let base = self.base.add(&other.base)?;
        let zeta = self.modulus().add(self.zeta, other.zeta);
        Ok(LiftedClass { base, zeta })
    }

    /// `k·(v, w) = (kv, kw)`.
    pub fn scale(&self, k: i64) -> LiftedClass {
        let m = self.modulus();
        LiftedClass {
            base: self.base.scale(k),
            zeta: m.mul(self.zeta, m.reduce(k)),
        }
    }

    /// Orientation reversal `(−v, −w)`.
    pub fn reverse(&self) -> LiftedClass {
        LiftedClass {
            base: self.base.neg(),
            zeta: self.modulus().neg(self.zeta),
        }
    }

    /// Reduction of both coordinates to a divisor `s` of `r`.
    pub fn reduce_to(&self, s: u32) -> Result<LiftedClass> {
        Ok(LiftedClass {
            base: self.base.reduce_to(s)?,
            zeta: self.zeta % s,
        })
    }

    /// Rewrites the class in a splitting whose basis lifts are shifted by
    /// `cocycle[j]·ζ`: `(v, w) ↦ (v, w − Σ vⱼ cocycleⱼ)`.
    ///
    /// Spin structures transform by [`crate::spin::SpinStructure::translate_splitting`]
    /// with the same cocycle, so evaluations are unchanged.
    pub fn translate_splitting(&self, cocycle: &[i64]) -> Result<LiftedClass> {
        if cocycle.len() != self.base.coords().len() {
            return Err(Error::GenusMismatch {
                left: self.genus(),
                right: cocycle.len() / 2,
            });
        }
        let m = self.modulus();
        let shift = self
            .base
            .coords()
            .iter()
            .zip(cocycle)
            .fold(0u32, |acc, (&v, &t)| m.add(acc, m.mul(v, m.reduce(t))));
        Ok(LiftedClass {
            base: self.base.clone(),
            zeta: m.sub(self.zeta, shift),
        })
    }
}

impl fmt::Display for LiftedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} ; ζ·{}]", self.base, self.zeta)
    }
}

/// The oriented fiber of the unit tangent bundle.
pub fn zeta(genus: usize, modulus: Modulus) -> LiftedClass {
    LiftedClass {
        base: BaseClass::zero(genus, modulus),
        zeta: 1,
    }
}

/// Third boundary of the pair of pants spanned by two disjoint curves joined
/// by an arc: `(c.base + d.base, c.zeta + d.zeta + 1)`.
pub fn surgery_sum(c: &LiftedClass, d: &LiftedClass) -> Result<LiftedClass> {
    c.check_compatible(d)?;
    let m = c.modulus();
    Ok(LiftedClass {
        base: c.base.add(&d.base)?,
        zeta: m.add(m.add(c.zeta, d.zeta), 1),
    })
}

pub fn reverse(c: &LiftedClass) -> LiftedClass {
    c.reverse()
}

/// Boundary `C` of a pair of pants with the other two boundaries `c1`, `c2`,
/// all oriented as boundary, so that `φ(C) + φ(c1) + φ(c2) = −1`.
pub fn pants_boundary(c1: &LiftedClass, c2: &LiftedClass) -> Result<LiftedClass> {
    c1.check_compatible(c2)?;
    let m = c1.modulus();
    let base = c1.base.add(&c2.base)?.neg();
    let zeta = m.sub(m.sub(m.neg(1), c1.zeta), c2.zeta);
    Ok(LiftedClass { base, zeta })
}

/// A power of the twist about a nonseparating curve, acting on lifted classes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LiftedTransvection {
    curve: LiftedClass,
    power: i64,
}

impl LiftedTransvection {
    pub fn new(curve: LiftedClass, power: i64) -> Result<Self> {
        if !curve.base.is_primitive() {
            return Err(Error::NotPrimitive(curve.modulus().get()));
        }
        Ok(LiftedTransvection { curve, power })
    }

    pub fn curve(&self) -> &LiftedClass {
        &self.curve
    }

    pub fn power(&self) -> i64 {
        self.power
    }

    pub fn inverse(&self) -> LiftedTransvection {
        LiftedTransvection {
            curve: self.curve.clone(),
            power: -self.power,
        }
    }

    /// `d ↦ d + k·ι(d, c)·c̃`, componentwise including the fiber coordinate.
    pub fn apply(&self, d: &LiftedClass) -> Result<LiftedClass> {
        self.curve.check_compatible(d)?;
        Ok(self.apply_unchecked(d))
    }

    pub(crate) fn apply_unchecked(&self, d: &LiftedClass) -> LiftedClass {
        let m = d.modulus();
        let coeff = m.mul(
            m.reduce(self.power),
            intersection_unchecked(&d.base, &self.curve.base),
        );
        if coeff == 0 {
            return d.clone();
        }
        d.add(&self.curve.scale(coeff as i64)).expect("compatible")
    }
}

pub fn twist_apply(t: &LiftedTransvection, d: &LiftedClass) -> Result<LiftedClass> {
    t.apply(d)
}

/// Parity of the offset of the tangent lift of a simple closed curve with
/// class `v`, relative to a reference splitting given by a geometric
/// symplectic basis: `1 + q₀(v) mod 2`, where `q₀` is the quadratic form that
/// is `1` on every basis vector.
pub fn curve_offset_parity(v: &BaseClass) -> u32 {
    let c = v.coords();
    let mut q0 = 0u32;
    for i in 0..v.genus() {
        let a = c[2 * i] & 1;
        let b = c[2 * i + 1] & 1;
        q0 += a + b + a * b;
    }
    (1 + q0) & 1
}

/// A lift of a simple closed curve of class `v` (primitive) for even `r`.
///
/// For `r = 2` this is exactly the tangent lift. For larger even `r` only the
/// parity of the offset is determined by `v`; the representative in `{0, 1}`
/// is returned. Two lifts that agree mod 2 differ by a translation of the
/// reference splitting by an even cocycle whenever the classes involved are
/// independent, which leaves parities untouched.
pub fn curve_lift(v: &BaseClass) -> LiftedClass {
    LiftedClass {
        base: v.clone(),
        zeta: curve_offset_parity(v) % v.modulus().get(),
    }
}
