//! Exact arithmetic in Z(d) for odd d, plus phases carried as exponents of ω.

use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An odd dimension `d >= 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Dim(u32);

impl Dim {
    /// Largest supported dimension.
    pub const MAX: u32 = 1 << 15;

    pub fn new(d: u32) -> Result<Self> {
        if d < 3 || d.is_multiple_of(2) || d > Self::MAX {
            return Err(Error::InvalidDim(d));
        }
        Ok(Self(d))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn size(self) -> usize {
        self.0 as usize
    }

    /// `(d - 1) / 2`, the largest centered residue.
    pub fn half(self) -> i64 {
        (self.0 as i64 - 1) / 2
    }

    /// The residue class of an arbitrary integer.
    pub fn elem(self, v: i64) -> ModInt {
        ModInt::new(v, self)
    }

    pub fn zero(self) -> ModInt {
        ModInt { value: 0, dim: self }
    }

    pub fn one(self) -> ModInt {
        ModInt { value: 1, dim: self }
    }

    /// `2⁻¹ = (d + 1) / 2`.
    pub fn inv2(self) -> ModInt {
        ModInt {
            value: self.0.div_ceil(2),
            dim: self,
        }
    }

    /// Residues in canonical order `0, 1, ..., d-1`.
    pub fn residues(self) -> impl Iterator<Item = ModInt> + Clone {
        (0..self.0).map(move |value| ModInt { value, dim: self })
    }

    /// Residues in centered order `-(d-1)/2, ..., (d-1)/2`, which is also storage order.
    pub fn centered_residues(self) -> impl Iterator<Item = ModInt> + Clone {
        (0..self.size()).map(move |i| self.residue_at(i))
    }

    /// Storage index of `j`: `-(d-1)/2 ↦ 0`, ..., `(d-1)/2 ↦ d-1`.
    pub fn index_of(self, j: ModInt) -> usize {
        debug_assert_eq!(j.dim, self);
        (j.centered() + self.half()) as usize
    }

    /// Inverse of [`Dim::index_of`].
    pub fn residue_at(self, index: usize) -> ModInt {
        assert!(index < self.size(), "index {index} out of range for d = {}", self.0);
        self.elem(index as i64 - self.half())
    }

    /// ω(a) = exp(2πi a/d) for an integer exponent.
    pub fn omega(self, a: i64) -> C64 {
        self.elem(a).omega()
    }
}

impl TryFrom<u32> for Dim {
    type Error = Error;
    fn try_from(d: u32) -> Result<Self> {
        Dim::new(d)
    }
}

impl From<Dim> for u32 {
    fn from(d: Dim) -> u32 {
        d.0
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A residue in `[0, d)` tagged with its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModInt {
    value: u32,
    dim: Dim,
}

impl ModInt {
    pub fn new(v: i64, dim: Dim) -> Self {
        let value = v.rem_euclid(dim.0 as i64) as u32;
        Self { value, dim }
    }

    /// Canonical representative in `[0, d)`.
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn dim(self) -> Dim {
        self.dim
    }

    /// Centered representative in `[-(d-1)/2, (d-1)/2]`.
    pub fn centered(self) -> i64 {
        let v = self.value as i64;
        if v > self.dim.half() {
            v - self.dim.0 as i64
        } else {
            v
        }
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn check(self, other: ModInt) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch {
                left: self.dim.0,
                right: other.dim.0,
            });
        }
        Ok(())
    }

    pub fn checked_add(self, other: ModInt) -> Result<ModInt> {
        self.check(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(self, other: ModInt) -> Result<ModInt> {
        self.check(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(self, other: ModInt) -> Result<ModInt> {
        self.check(other)?;
        Ok(self * other)
    }

    /// Multiply by an integer.
    pub fn scale(self, k: i64) -> ModInt {
        let p = (self.value as i64 * k.rem_euclid(self.dim.0 as i64)) % self.dim.0 as i64;
        ModInt::new(p, self.dim)
    }

    /// `(-1)^ν · self`.
    pub fn signed(self, nu: u8) -> ModInt {
        if nu & 1 == 1 {
            -self
        } else {
            self
        }
    }

    /// Multiplicative inverse, or an error naming `gcd(a, d)`.
    pub fn inv(self) -> Result<ModInt> {
        let d = self.dim.0 as i64;
        let (g, x, _) = ext_gcd(self.value as i64, d);
        if g != 1 {
            return Err(Error::NotInvertible {
                value: self.value,
                d: self.dim.0,
                gcd: g as u32,
            });
        }
        Ok(ModInt::new(x, self.dim))
    }

    /// ω(self) computed from the centered representative.
    pub fn omega(self) -> C64 {
        let t = TAU * self.centered() as f64 / self.dim.0 as f64;
        C64::new(t.cos(), t.sin())
    }
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - (a.div_euclid(b)) * y)
    }
}

impl fmt::Display for ModInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.centered())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr for ModInt {
            type Output = ModInt;
            fn $m(self, rhs: ModInt) -> ModInt {
                assert_eq!(self.dim, rhs.dim, "modulus mismatch");
                ModInt::new(self.value as i64 $op rhs.value as i64, self.dim)
            }
        }
    };
}
binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl Neg for ModInt {
    type Output = ModInt;
    fn neg(self) -> ModInt {
        ModInt::new(-(self.value as i64), self.dim)
    }
}

/// ω(exponent), kept exact until materialized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Phase {
    pub exponent: ModInt,
}

impl Phase {
    pub fn new(exponent: ModInt) -> Self {
        Self { exponent }
    }

    pub fn one(d: Dim) -> Self {
        Self { exponent: d.zero() }
    }

    pub fn is_one(self) -> bool {
        self.exponent.is_zero()
    }

    pub fn inv(self) -> Self {
        Self {
            exponent: -self.exponent,
        }
    }

    pub fn to_complex(self) -> C64 {
        self.exponent.omega()
    }
}

impl Mul for Phase {
    type Output = Phase;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Phase) -> Phase {
        Phase {
            exponent: self.exponent + rhs.exponent,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(d: u32) -> Dim {
        Dim::new(d).unwrap()
    }

    #[test]
    fn rejects_bad_dims() {
        for d in [0, 1, 2, 4, 10] {
            assert!(Dim::new(d).is_err());
        }
        assert!(Dim::new(3).is_ok());
    }

    #[test]
    fn arithmetic_examples() {
        let d3 = dim(3);
        assert_eq!((d3.elem(2) + d3.elem(2)).value(), 1);
        let d5 = dim(5);
        assert_eq!((d5.elem(-1) * d5.elem(2)).value(), 3);
        assert_eq!((-dim(7).elem(3)).value(), 4);
        assert!(d3.elem(1).checked_add(d5.elem(1)).is_err());
    }

    #[test]
    fn inverse_of_two() {
        for d in [3, 5, 7, 9, 11] {
            let dd = dim(d);
            assert_eq!(dd.elem(2).inv().unwrap(), dd.inv2());
            assert_eq!(dd.inv2().value(), d / 2 + 1);
        }
        match dim(9).elem(3).inv() {
            Err(Error::NotInvertible { gcd, .. }) => assert_eq!(gcd, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn centered_indexing() {
        let d3 = dim(3);
        assert_eq!(d3.index_of(d3.elem(-1)), 0);
        assert_eq!(d3.index_of(d3.elem(0)), 1);
        assert_eq!(dim(5).index_of(dim(5).elem(2)), 4);
        for d in [3, 5, 7, 9] {
            let dd = dim(d);
            for i in 0..dd.size() {
                assert_eq!(dd.index_of(dd.residue_at(i)), i);
            }
        }
    }

    #[test]
    fn omega_values() {
        let d3 = dim(3);
        let w = d3.omega(1);
        assert!((w - C64::new(-0.5, 3f64.sqrt() / 2.0)).norm() < 1e-15);
        assert_eq!(d3.omega(0), C64::new(1.0, 0.0));
        let s: C64 = d3.residues().map(|a| a.omega()).sum();
        assert!(s.norm() < 1e-15);
    }
}
