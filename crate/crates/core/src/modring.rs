//! Arithmetic over ℤ/rℤ: residues, homology vectors in a fixed symplectic
//! basis, and symplectic matrices.
//!
//! Coordinates are ordered `(a₁, b₁, …, a_g, b_g)` and the form is normalized
//! by `ι(aᵢ, bᵢ) = +1`. Residues are always stored in `[0, r)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The modulus `r ≥ 2` of the coefficient ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Modulus(u32);

impl Modulus {
    pub fn new(r: u32) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidModulus(r));
        }
        Ok(Modulus(r))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_even(self) -> bool {
        self.0 % 2 == 0
    }

    /// Canonical residue of an arbitrary integer.
    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, x: u32, y: u32) -> u32 {
        ((x as u64 + y as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn sub(self, x: u32, y: u32) -> u32 {
        ((x as u64 + self.0 as u64 - y as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn mul(self, x: u32, y: u32) -> u32 {
        ((x as u64 * y as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn neg(self, x: u32) -> u32 {
        if x == 0 {
            0
        } else {
            self.0 - x
        }
    }

    /// Representative in `(-r/2, r/2]`, handy for reporting values like `±1`.
    pub fn signed(self, x: u32) -> i64 {
        let r = self.0 as i64;
        let x = x as i64;
        if 2 * x > r {
            x - r
        } else {
            x
        }
    }

    /// True iff `s ≥ 2` and `s | r`.
    pub fn is_divided_by(self, s: u32) -> bool {
        s >= 2 && self.0 % s == 0
    }
}

impl TryFrom<u32> for Modulus {
    type Error = Error;
    fn try_from(r: u32) -> Result<Self> {
        Modulus::new(r)
    }
}

impl From<Modulus> for u32 {
    fn from(m: Modulus) -> u32 {
        m.0
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// A class in `H₁(Σ_g; ℤ/r)` written in the fixed symplectic basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BaseClass {
    modulus: Modulus,
    coords: Vec<u32>,
}

impl BaseClass {
    /// Builds a class from integer coordinates, reducing them modulo `r`.
    pub fn new(modulus: Modulus, coords: &[i64]) -> Result<Self> {
        if coords.is_empty() || coords.len() % 2 != 0 {
            return Err(Error::OddLength(coords.len()));
        }
        Ok(BaseClass {
            modulus,
            coords: coords.iter().map(|&x| modulus.reduce(x)).collect(),
        })
    }

    pub fn zero(genus: usize, modulus: Modulus) -> Self {
        BaseClass {
            modulus,
            coords: vec![0; 2 * genus],
        }
    }

    /// The `index`-th basis vector, with `2i ↦ a_{i+1}` and `2i+1 ↦ b_{i+1}`.
    pub fn basis(genus: usize, modulus: Modulus, index: usize) -> Self {
        let mut v = Self::zero(genus, modulus);
        v.coords[index] = 1;
        v
    }

    /// `aᵢ` for `i` in `1..=g`.
    pub fn a(genus: usize, modulus: Modulus, i: usize) -> Self {
        Self::basis(genus, modulus, 2 * (i - 1))
    }

    /// `bᵢ` for `i` in `1..=g`.
    pub fn b(genus: usize, modulus: Modulus, i: usize) -> Self {
        Self::basis(genus, modulus, 2 * (i - 1) + 1)
    }

    #[inline]
    pub fn genus(&self) -> usize {
        self.coords.len() / 2
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    #[inline]
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }

    pub(crate) fn check_compatible(&self, other: &BaseClass) -> Result<()> {
        if self.genus() != other.genus() {
            return Err(Error::GenusMismatch {
                left: self.genus(),
                right: other.genus(),
            });
        }
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus.get(),
                right: other.modulus.get(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &BaseClass) -> Result<BaseClass> {
        self.check_compatible(other)?;
        let m = self.modulus;
        Ok(BaseClass {
            modulus: m,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&x, &y)| m.add(x, y))
                .collect(),
        })
    }

    pub fn sub(&self, other: &BaseClass) -> Result<BaseClass> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> BaseClass {
        let m = self.modulus;
        BaseClass {
            modulus: m,
            coords: self.coords.iter().map(|&x| m.neg(x)).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> BaseClass {
        let m = self.modulus;
        let k = m.reduce(k);
        BaseClass {
            modulus: m,
            coords: self.coords.iter().map(|&x| m.mul(x, k)).collect(),
        }
    }

    /// Coordinatewise reduction to a divisor `s` of `r`.
    pub fn reduce_to(&self, s: u32) -> Result<BaseClass> {
        if !self.modulus.is_divided_by(s) {
            return Err(Error::NotDivisor {
                divisor: s,
                modulus: self.modulus.get(),
            });
        }
        let m = Modulus::new(s)?;
        Ok(BaseClass {
            modulus: m,
            coords: self.coords.iter().map(|&x| x % s).collect(),
        })
    }

    /// Nonseparating-curve shadow: `gcd(coords, r) = 1`.
    pub fn is_primitive(&self) -> bool {
        let r = self.modulus.get() as u64;
        self.coords.iter().fold(r, |acc, &x| gcd(acc, x as u64)) == 1
    }
}

impl fmt::Display for BaseClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ") mod {}", self.modulus)
    }
}

/// `ι(x, y) = Σᵢ (x_{aᵢ} y_{bᵢ} − x_{bᵢ} y_{aᵢ}) mod r`.
pub fn intersection_form(x: &BaseClass, y: &BaseClass) -> Result<u32> {
    x.check_compatible(y)?;
    Ok(intersection_unchecked(x, y))
}

pub(crate) fn intersection_unchecked(x: &BaseClass, y: &BaseClass) -> u32 {
    let m = x.modulus;
    let mut acc = 0u32;
    for i in 0..x.genus() {
        let p = m.mul(x.coords[2 * i], y.coords[2 * i + 1]);
        let q = m.mul(x.coords[2 * i + 1], y.coords[2 * i]);
        acc = m.add(acc, m.sub(p, q));
    }
    acc
}

pub fn is_primitive(v: &BaseClass) -> bool {
    v.is_primitive()
}

/// A `2g × 2g` matrix over ℤ/r. Column `j` is the image of basis vector `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpMatrix {
    genus: usize,
    modulus: Modulus,
    entries: Vec<u32>,
}

impl SpMatrix {
    pub fn identity(genus: usize, modulus: Modulus) -> Self {
        let n = 2 * genus;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        SpMatrix {
            genus,
            modulus,
            entries,
        }
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`. The result is not
    /// checked for symplecticity; see [`SpMatrix::is_symplectic`].
    pub fn from_columns(columns: &[BaseClass]) -> Result<Self> {
        let first = columns.first().ok_or(Error::EmptyInput("matrix columns"))?;
        let n = first.coords.len();
        if columns.len() != n {
            return Err(Error::GenusMismatch {
                left: first.genus(),
                right: columns.len() / 2,
            });
        }
        let mut entries = vec![0; n * n];
        for (j, c) in columns.iter().enumerate() {
            first.check_compatible(c)?;
            for i in 0..n {
                entries[i * n + j] = c.coords[i];
            }
        }
        Ok(SpMatrix {
            genus: first.genus(),
            modulus: first.modulus,
            entries,
        })
    }

    #[inline]
    pub fn genus(&self) -> usize {
        self.genus
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    #[inline]
    fn dim(&self) -> usize {
        2 * self.genus
    }

    #[inline]
    pub fn entry(&self, row: usize, col: usize) -> u32 {
        self.entries[row * self.dim() + col]
    }

    pub fn column(&self, j: usize) -> BaseClass {
        let n = self.dim();
        BaseClass {
            modulus: self.modulus,
            coords: (0..n).map(|i| self.entries[i * n + j]).collect(),
        }
    }

    pub fn apply(&self, x: &BaseClass) -> Result<BaseClass> {
        if x.genus() != self.genus {
            return Err(Error::GenusMismatch {
                left: self.genus,
                right: x.genus(),
            });
        }
        if x.modulus != self.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus.get(),
                right: x.modulus.get(),
            });
        }
        let n = self.dim();
        let m = self.modulus;
        let coords = (0..n)
            .map(|i| {
                (0..n).fold(0u32, |acc, j| {
                    m.add(acc, m.mul(self.entries[i * n + j], x.coords[j]))
                })
            })
            .collect();
        Ok(BaseClass { modulus: m, coords })
    }

    /// Matrix product `self · other` (apply `other` first).
    pub fn mul(&self, other: &SpMatrix) -> Result<SpMatrix> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch {
                left: self.genus,
                right: other.genus,
            });
        }
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus.get(),
                right: other.modulus.get(),
            });
        }
        let n = self.dim();
        let r = self.modulus.get() as u64;
        let mut entries = vec![0u32; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k] as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let e = &mut entries[i * n + j];
                    *e = ((*e as u64 + a * other.entries[k * n + j] as u64) % r) as u32;
                }
            }
        }
        Ok(SpMatrix {
            genus: self.genus,
            modulus: self.modulus,
            entries,
        })
    }

    /// Inverse of a symplectic matrix, `M⁻¹ = J⁻¹ Mᵀ J`.
    ///
    /// Only meaningful when `self` is symplectic.
    pub fn symplectic_inverse(&self) -> SpMatrix {
        let n = self.dim();
        let m = self.modulus;
        // J has a single nonzero entry per row: J[i][partner(i)] = ±1.
        let j_of = |i: usize| -> (usize, i64) {
            if i % 2 == 0 {
                (i + 1, 1)
            } else {
                (i - 1, -1)
            }
        };
        let mut entries = vec![0u32; n * n];
        for i in 0..n {
            let (pi, si) = j_of(i);
            for k in 0..n {
                let (pk, _) = j_of(k);
                let (_, spk) = j_of(pk);
                let val = -si * spk * self.entries[pk * n + pi] as i64;
                entries[i * n + k] = m.reduce(val);
            }
        }
        SpMatrix {
            genus: self.genus,
            modulus: self.modulus,
            entries,
        }
    }

    /// `Mᵏ` for any integer `k` (negative powers through the symplectic inverse).
    pub fn pow(&self, k: i64) -> SpMatrix {
        let mut base = if k < 0 {
            self.symplectic_inverse()
        } else {
            self.clone()
        };
        let mut e = k.unsigned_abs();
        let mut acc = SpMatrix::identity(self.genus, self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same shape");
            }
            base = base.mul(&base).expect("same shape");
            e >>= 1;
        }
        acc
    }

    /// `ι(M eᵢ, M eⱼ) = ι(eᵢ, eⱼ)` for all basis pairs.
    pub fn is_symplectic(&self) -> bool {
        let n = self.dim();
        let cols: Vec<BaseClass> = (0..n).map(|j| self.column(j)).collect();
        for i in 0..n {
            for j in 0..n {
                let expected = if j == i + 1 && i % 2 == 0 {
                    1
                } else if i == j + 1 && j % 2 == 0 {
                    self.modulus.get() - 1
                } else {
                    0
                };
                if intersection_unchecked(&cols[i], &cols[j]) != expected {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_identity(&self) -> bool {
        *self == SpMatrix::identity(self.genus, self.modulus)
    }

    /// Reduction of every entry to a divisor `s` of `r`.
    pub fn reduce_to(&self, s: u32) -> Result<SpMatrix> {
        if !self.modulus.is_divided_by(s) {
            return Err(Error::NotDivisor {
                divisor: s,
                modulus: self.modulus.get(),
            });
        }
        Ok(SpMatrix {
            genus: self.genus,
            modulus: Modulus::new(s)?,
            entries: self.entries.iter().map(|&x| x % s).collect(),
        })
    }
}

/// `T_c^k : x ↦ x + k·ι(x, c)·c`.
pub fn base_transvection_power(c: &BaseClass, k: i64) -> SpMatrix {
    let g = c.genus();
    let m = c.modulus();
    let n = 2 * g;
    let cols: Vec<BaseClass> = (0..n)
        .map(|j| {
            let e = BaseClass::basis(g, m, j);
            let t = m.mul(intersection_unchecked(&e, c), m.reduce(k));
            e.add(&c.scale(t as i64)).expect("same shape")
        })
        .collect();
    SpMatrix::from_columns(&cols).expect("square")
}

/// The homology action `x ↦ x + ι(x, c)·c` of the twist about a curve of class `c`.
pub fn base_transvection(c: &BaseClass) -> SpMatrix {
    base_transvection_power(c, 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(r: u32) -> Modulus {
        Modulus::new(r).unwrap()
    }

    #[test]
    fn modulus_rejects_small_values() {
        assert_eq!(Modulus::new(1), Err(Error::InvalidModulus(1)));
        assert_eq!(Modulus::new(0), Err(Error::InvalidModulus(0)));
        assert!(Modulus::new(2).is_ok());
    }

    #[test]
    fn intersection_of_basis_pair() {
        let r = m(5);
        let a1 = BaseClass::a(2, r, 1);
        let b1 = BaseClass::b(2, r, 1);
        assert_eq!(intersection_form(&a1, &b1).unwrap(), 1);
        assert_eq!(intersection_form(&b1, &a1).unwrap(), 4);
        assert_eq!(intersection_form(&a1, &a1).unwrap(), 0);
    }

    #[test]
    fn intersection_direct_arithmetic() {
        let r = m(4);
        let x = BaseClass::new(r, &[1, 2, 0, 0, 0, 0]).unwrap();
        let y = BaseClass::new(r, &[0, 1, 0, 0, 0, 0]).unwrap();
        assert_eq!(intersection_form(&x, &y).unwrap(), 1);
    }

    #[test]
    fn intersection_mismatch_is_an_error() {
        let x = BaseClass::zero(2, m(4));
        let y = BaseClass::zero(3, m(4));
        let z = BaseClass::zero(2, m(3));
        assert!(matches!(
            intersection_form(&x, &y),
            Err(Error::GenusMismatch { .. })
        ));
        assert!(matches!(
            intersection_form(&x, &z),
            Err(Error::ModulusMismatch { .. })
        ));
    }

    #[test]
    fn primitivity() {
        assert!(BaseClass::new(m(2), &[1, 0, 0, 0]).unwrap().is_primitive());
        assert!(!BaseClass::new(m(4), &[2, 0, 2, 0]).unwrap().is_primitive());
        assert!(BaseClass::new(m(4), &[2, 1, 0, 0]).unwrap().is_primitive());
        assert!(!BaseClass::zero(2, m(3)).is_primitive());
    }

    #[test]
    fn transvection_about_a1() {
        let r = m(7);
        let a1 = BaseClass::a(2, r, 1);
        let b1 = BaseClass::b(2, r, 1);
        let t = base_transvection(&a1);
        assert_eq!(t.apply(&b1).unwrap(), b1.sub(&a1).unwrap());
        assert_eq!(t.apply(&a1).unwrap(), a1);
        assert!(t.is_symplectic());
    }

    #[test]
    fn mod_two_transvections_are_involutions() {
        let r = m(2);
        let c = BaseClass::new(r, &[1, 1, 0, 1]).unwrap();
        let t = base_transvection(&c);
        assert!(t.mul(&t).unwrap().is_identity());
    }

    #[test]
    fn inverse_and_powers() {
        let r = m(9);
        let c = BaseClass::new(r, &[1, 2, 3, 4]).unwrap();
        let t = base_transvection(&c);
        assert!(t.mul(&t.symplectic_inverse()).unwrap().is_identity());
        assert_eq!(t.pow(-3), base_transvection_power(&c, -3));
        assert_eq!(t.pow(4), base_transvection_power(&c, 4));
        assert!(t.pow(0).is_identity());
    }

    #[test]
    fn reduction_requires_divisor() {
        let v = BaseClass::new(m(8), &[3, 2, 7, 5]).unwrap();
        assert_eq!(v.reduce_to(2).unwrap().coords(), &[1, 0, 1, 1]);
        assert!(matches!(v.reduce_to(3), Err(Error::NotDivisor { .. })));
        assert!(matches!(v.reduce_to(1), Err(Error::NotDivisor { .. })));
    }
}
