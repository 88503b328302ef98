//! ℤ/r spin structures as functionals on lifted classes.
//!
//! A structure is stored by its values on the reference lifts of the basis
//! curves; it evaluates `(v, w) ↦ Σ vⱼ·φⱼ + w`, so `φ(ζ) = 1` always holds.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intlin::solve_congruences;
use crate::modring::{intersection_unchecked, BaseClass, Modulus, SpMatrix};
use crate::tangent_lift::{LiftedClass, LiftedTransvection};

/// Default cap on `r^{2g}` for exhaustive enumeration.
pub const DEFAULT_ENUMERATION_BOUND: u128 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: u32) -> Parity {
        if b & 1 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

impl std::str::FromStr for Parity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            other => Err(Error::Schema(format!("unknown parity `{other}`"))),
        }
    }
}

/// Number of ℤ/2 spin structures of the given parity on a closed genus-`g`
/// surface: `2^{g−1}(2^g ± 1)`.
pub fn parity_count(genus: usize, parity: Parity) -> u128 {
    let half = 1u128 << (genus - 1);
    let full = 1u128 << genus;
    match parity {
        Parity::Even => half * (full + 1),
        Parity::Odd => half * (full - 1),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpinStructure {
    modulus: Modulus,
    values: Vec<u32>,
}

impl SpinStructure {
    pub fn new(modulus: Modulus, values: &[i64]) -> Result<Self> {
        if values.is_empty() || values.len() % 2 != 0 {
            return Err(Error::OddLength(values.len()));
        }
        Ok(SpinStructure {
            modulus,
            values: values.iter().map(|&x| modulus.reduce(x)).collect(),
        })
    }

    /// A `ℤ/2` structure of the requested parity: all basis values `1`, except
    /// that the first handle gets `0, 0` for odd parity.
    pub fn standard(genus: usize, parity: Parity) -> SpinStructure {
        let r = Modulus::new(2).expect("2 is a valid modulus");
        // all ones contribute 0 to Arf; a handle with both values 0 contributes 1
        let mut values = vec![1u32; 2 * genus];
        if parity == Parity::Odd {
            values[0] = 0;
            values[1] = 0;
        }
        SpinStructure { modulus: r, values }
    }

    #[inline]
    pub fn genus(&self) -> usize {
        self.values.len() / 2
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    /// Values on the reference lifts `σ(a₁), σ(b₁), …`.
    #[inline]
    pub fn values(&self) -> &[u32] {
        &self.values
    }

    fn check(&self, c: &LiftedClass) -> Result<()> {
        if c.genus() != self.genus() {
            return Err(Error::GenusMismatch {
                left: self.genus(),
                right: c.genus(),
            });
        }
        if c.modulus() != self.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus.get(),
                right: c.modulus().get(),
            });
        }
        Ok(())
    }

    pub fn evaluate(&self, c: &LiftedClass) -> Result<u32> {
        self.check(c)?;
        Ok(self.evaluate_unchecked(c))
    }

    pub(crate) fn evaluate_unchecked(&self, c: &LiftedClass) -> u32 {
        let m = self.modulus;
        c.base
            .coords()
            .iter()
            .zip(&self.values)
            .fold(c.zeta, |acc, (&v, &phi)| m.add(acc, m.mul(v, phi)))
    }

    /// Arf invariant of the mod-2 reduction, `Σᵢ (φ(aᵢ)+1)(φ(bᵢ)+1) mod 2`.
    pub fn arf(&self) -> Result<Parity> {
        if !self.modulus.is_even() {
            return Err(Error::OddModulus(self.modulus.get()));
        }
        let mut acc = 0u32;
        for i in 0..self.genus() {
            acc += ((self.values[2 * i] + 1) & 1) * ((self.values[2 * i + 1] + 1) & 1);
        }
        Ok(Parity::from_bit(acc))
    }

    /// Coordinatewise reduction to a divisor `s` of `r`.
    pub fn reduce(&self, s: u32) -> Result<SpinStructure> {
        if !self.modulus.is_divided_by(s) {
            return Err(Error::NotDivisor {
                divisor: s,
                modulus: self.modulus.get(),
            });
        }
        Ok(SpinStructure {
            modulus: Modulus::new(s)?,
            values: self.values.iter().map(|&x| x % s).collect(),
        })
    }

    /// Whether `T_c^k` fixes this structure: `k·φ(c̃) ≡ 0 mod r`.
    pub fn twist_stabilizes(&self, c: &LiftedClass, k: i64) -> Result<bool> {
        self.check(c)?;
        if !c.base.is_primitive() {
            return Err(Error::NotPrimitive(self.modulus.get()));
        }
        let m = self.modulus;
        Ok(m.mul(m.reduce(k), self.evaluate_unchecked(c)) == 0)
    }

    /// Pull-back `φ ∘ T` along a lifted transvection:
    /// `φ'ⱼ = φⱼ + k·ι(eⱼ, c)·φ(c̃)`.
    pub fn pull_back(&self, t: &LiftedTransvection) -> Result<SpinStructure> {
        self.check(t.curve())?;
        Ok(self.pull_back_unchecked(t))
    }

    pub(crate) fn pull_back_unchecked(&self, t: &LiftedTransvection) -> SpinStructure {
        let m = self.modulus;
        let c = t.curve();
        let phi_c = m.mul(self.evaluate_unchecked(c), m.reduce(t.power()));
        if phi_c == 0 {
            return self.clone();
        }
        let g = self.genus();
        let values = (0..2 * g)
            .map(|j| {
                let e = BaseClass::basis(g, m, j);
                let i = intersection_unchecked(&e, &c.base);
                m.add(self.values[j], m.mul(i, phi_c))
            })
            .collect();
        SpinStructure { modulus: m, values }
    }

    /// Values in a splitting translated by `cocycle` (see
    /// [`LiftedClass::translate_splitting`]).
    pub fn translate_splitting(&self, cocycle: &[i64]) -> Result<SpinStructure> {
        if cocycle.len() != self.values.len() {
            return Err(Error::GenusMismatch {
                left: self.genus(),
                right: cocycle.len() / 2,
            });
        }
        let m = self.modulus;
        Ok(SpinStructure {
            modulus: m,
            values: self
                .values
                .iter()
                .zip(cocycle)
                .map(|(&x, &t)| m.add(x, m.reduce(t)))
                .collect(),
        })
    }

    /// Restriction to the complement of handle `i` (0-based): drops the
    /// coordinates of `(a_{i+1}, b_{i+1})`.
    pub fn delete_handle(&self, i: usize) -> Result<SpinStructure> {
        if i >= self.genus() || self.genus() < 2 {
            return Err(Error::GenusMismatch {
                left: self.genus(),
                right: i + 1,
            });
        }
        let mut values = self.values.clone();
        values.drain(2 * i..2 * i + 2);
        Ok(SpinStructure {
            modulus: self.modulus,
            values,
        })
    }

    /// The associated quadratic form on `H₁(Σ; ℤ/2)`, for even `r`.
    pub fn quadratic_form(&self) -> Result<QuadraticForm> {
        if !self.modulus.is_even() {
            return Err(Error::OddModulus(self.modulus.get()));
        }
        Ok(QuadraticForm {
            genus: self.genus(),
            basis_values: self.values.iter().map(|&x| ((x + 1) & 1) as u8).collect(),
        })
    }
}

impl fmt::Display for SpinStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "φ[")?;
        for (i, x) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "] mod {}", self.modulus)
    }
}

/// A quadratic refinement `q` of the mod-2 intersection form,
/// `q(x + y) = q(x) + q(y) + ι(x, y)`.
///
/// For a ℤ/2 spin structure, `q(c) = φ(c) + 1` on simple closed curves.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadraticForm {
    genus: usize,
    basis_values: Vec<u8>,
}

impl QuadraticForm {
    pub fn from_basis_values(values: &[u8]) -> Result<Self> {
        if values.is_empty() || values.len() % 2 != 0 {
            return Err(Error::OddLength(values.len()));
        }
        Ok(QuadraticForm {
            genus: values.len() / 2,
            basis_values: values.iter().map(|&x| x & 1).collect(),
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn basis_values(&self) -> &[u8] {
        &self.basis_values
    }

    /// `q` on a bit-packed vector (bit `j` = coordinate `j`).
    pub fn value_packed(&self, v: u64) -> u8 {
        let mut acc = 0u32;
        for (j, &q) in self.basis_values.iter().enumerate() {
            acc += ((v >> j) & 1) as u32 * q as u32;
        }
        for i in 0..self.genus {
            acc += (((v >> (2 * i)) & (v >> (2 * i + 1))) & 1) as u32;
        }
        (acc & 1) as u8
    }

    /// `q` on a class with any even modulus (reduced mod 2 first).
    pub fn value(&self, v: &BaseClass) -> u8 {
        self.value_packed(pack_mod2(v))
    }

    /// Spin value of a simple closed curve of class `v`: `q(v) + 1 mod 2`.
    pub fn curve_value(&self, v: &BaseClass) -> u8 {
        1 ^ self.value(v)
    }

    pub fn arf(&self) -> Parity {
        let mut acc = 0u32;
        for i in 0..self.genus {
            acc += (self.basis_values[2 * i] & self.basis_values[2 * i + 1]) as u32;
        }
        Parity::from_bit(acc)
    }

    /// `q ∘ M` for a matrix over ℤ/2.
    pub fn compose(&self, m: &SpMatrix) -> QuadraticForm {
        let n = 2 * self.genus;
        let basis_values = (0..n).map(|j| self.value(&m.column(j))).collect();
        QuadraticForm {
            genus: self.genus,
            basis_values,
        }
    }

    /// The ℤ/2 spin structure with this form.
    pub fn to_spin(&self) -> SpinStructure {
        SpinStructure {
            modulus: Modulus::new(2).expect("valid"),
            values: self.basis_values.iter().map(|&q| (q ^ 1) as u32).collect(),
        }
    }
}

/// Packs the mod-2 reduction of a class into a word (bit `j` = coordinate `j`).
pub fn pack_mod2(v: &BaseClass) -> u64 {
    v.coords()
        .iter()
        .enumerate()
        .fold(0u64, |acc, (j, &x)| acc | (((x & 1) as u64) << j))
}

/// Lazily enumerates all `r^{2g}` structures in lexicographic order.
#[derive(Debug, Clone)]
pub struct StructureIter {
    modulus: Modulus,
    next: Option<Vec<u32>>,
}

impl Iterator for StructureIter {
    type Item = SpinStructure;

    fn next(&mut self) -> Option<SpinStructure> {
        let current = self.next.take()?;
        let r = self.modulus.get();
        let mut succ = current.clone();
        let mut carried = true;
        for x in succ.iter_mut().rev() {
            *x += 1;
            if *x < r {
                carried = false;
                break;
            }
            *x = 0;
        }
        if !carried {
            self.next = Some(succ);
        }
        Some(SpinStructure {
            modulus: self.modulus,
            values: current,
        })
    }
}

fn structure_count(genus: usize, modulus: Modulus, bound: u128) -> Result<u128> {
    let total = (modulus.get() as u128).checked_pow(2 * genus as u32);
    match total {
        Some(t) if t <= bound => Ok(t),
        _ => Err(Error::BoundExceeded {
            what: "number of spin structures",
            size: total.unwrap_or(u128::MAX),
            bound,
        }),
    }
}

pub fn enumerate_structures(genus: usize, modulus: Modulus, bound: u128) -> Result<StructureIter> {
    if genus == 0 {
        return Err(Error::EmptyInput("genus"));
    }
    structure_count(genus, modulus, bound)?;
    Ok(StructureIter {
        modulus,
        next: Some(vec![0; 2 * genus]),
    })
}

/// Totals of an exhaustive enumeration, split by parity when `r` is even.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub genus: usize,
    pub modulus: u32,
    pub total: u128,
    pub even: Option<u128>,
    pub odd: Option<u128>,
}

pub fn census(genus: usize, modulus: Modulus, bound: u128) -> Result<Census> {
    let mut total = 0u128;
    let mut even = 0u128;
    for phi in enumerate_structures(genus, modulus, bound)? {
        total += 1;
        if modulus.is_even() && phi.arf()? == Parity::Even {
            even += 1;
        }
    }
    let (even, odd) = if modulus.is_even() {
        (Some(even), Some(total - even))
    } else {
        (None, None)
    };
    Ok(Census {
        genus,
        modulus: modulus.get(),
        total,
        even,
        odd,
    })
}

/// All structures vanishing on a family of lifts, as an affine set
/// `particular + ⟨generators⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionSet {
    pub genus: usize,
    pub modulus: Modulus,
    pub particular: Option<SpinStructure>,
    /// Generators of the group of homogeneous solutions (value vectors).
    pub generators: Vec<Vec<u32>>,
    pub size: u128,
}

impl SolutionSet {
    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn is_unique(&self) -> bool {
        self.size == 1
    }

    pub fn unique(&self) -> Option<&SpinStructure> {
        if self.is_unique() {
            self.particular.as_ref()
        } else {
            None
        }
    }

    /// Every element of the set (bounded by `bound`).
    pub fn elements(&self, bound: u128) -> Result<Vec<SpinStructure>> {
        if self.size > bound {
            return Err(Error::BoundExceeded {
                what: "solution set",
                size: self.size,
                bound,
            });
        }
        let Some(p) = &self.particular else {
            return Ok(Vec::new());
        };
        let m = self.modulus;
        let mut seen = std::collections::BTreeSet::new();
        seen.insert(p.values.clone());
        let mut frontier = vec![p.values.clone()];
        while let Some(v) = frontier.pop() {
            for g in &self.generators {
                let w: Vec<u32> = v.iter().zip(g).map(|(&a, &b)| m.add(a, b)).collect();
                if seen.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
        Ok(seen
            .into_iter()
            .map(|values| SpinStructure { modulus: m, values })
            .collect())
    }
}

/// Solves `φ(c̃ᵢ) = 0` for all given lifts.
pub fn from_vanishing(lifts: &[LiftedClass]) -> Result<SolutionSet> {
    let first = lifts.first().ok_or(Error::EmptyInput("lift family"))?;
    for c in lifts {
        first.check_compatible(c)?;
    }
    let m = first.modulus();
    let g = first.genus();
    let a: Vec<Vec<i64>> = lifts
        .iter()
        .map(|c| c.base.coords().iter().map(|&x| x as i64).collect())
        .collect();
    let b: Vec<i64> = lifts.iter().map(|c| -(c.zeta as i64)).collect();
    let sol = solve_congruences(&a, &b, 2 * g, m.get());
    Ok(SolutionSet {
        genus: g,
        modulus: m,
        particular: sol
            .particular
            .map(|values| SpinStructure { modulus: m, values }),
        generators: sol.generators,
        size: sol.count,
    })
}
