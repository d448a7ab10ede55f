//! Hamilton quaternions and the symplectic split `q = z1 + j z2`.
//!
//! All wavefunction values live here. Complex numbers embed as `(re, im, 0, 0)`,
//! and complex amplitudes always multiply quaternions from the right, which
//! keeps the split C-linear: `(z1 + j z2) c = z1 c + j (z2 c)`.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Scalar-first quaternion `w + x i + y j + z k`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// Complex pair `(first, second)` with `q = first + j * second`.
///
/// `first = w + x i` and `second = y - z i`; the sign on `z` follows from
/// `j (y - z i) = y j + z k`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SymplecticPair {
    pub first: Complex64,
    pub second: Complex64,
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    #[inline]
    pub const fn from_scalar(w: f64) -> Self {
        Self::new(w, 0.0, 0.0, 0.0)
    }

    #[inline]
    pub fn components(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    /// Non-commutative Hamilton product `self * rhs`.
    #[inline]
    pub fn hamilton(self, rhs: Self) -> Self {
        let (a, b) = (self, rhs);
        Self {
            w: a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            x: a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            y: a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            z: a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        }
    }

    #[inline]
    pub fn conjugate(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `q̄ / |q|²`; zero-norm input is a domain error.
    pub fn inverse(self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 || !n2.is_finite() {
            return Err(Error::ZeroNorm);
        }
        Ok(self.conjugate().scale(1.0 / n2))
    }

    #[inline]
    pub fn scale(self, s: f64) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    pub fn split(self) -> SymplecticPair {
        SymplecticPair {
            first: Complex64::new(self.w, self.x),
            second: Complex64::new(self.y, -self.z),
        }
    }

    pub fn join(pair: SymplecticPair) -> Self {
        Self::new(
            pair.first.re,
            pair.first.im,
            pair.second.re,
            -pair.second.im,
        )
    }

    /// Largest absolute component difference.
    pub fn max_abs_diff(self, other: Self) -> f64 {
        let (a, b) = (self.components(), other.components());
        a.iter()
            .zip(b.iter())
            .map(|(u, v)| (u - v).abs())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(self) -> bool {
        self.components().iter().all(|c| c.is_finite())
    }
}

impl SymplecticPair {
    pub fn new(first: Complex64, second: Complex64) -> Self {
        Self { first, second }
    }
}

/// Free-function spelling of [`Quaternion::hamilton`].
#[inline]
pub fn hamilton_product(a: Quaternion, b: Quaternion) -> Quaternion {
    a.hamilton(b)
}

#[inline]
pub fn symplectic_split(q: Quaternion) -> SymplecticPair {
    q.split()
}

#[inline]
pub fn symplectic_join(p: SymplecticPair) -> Quaternion {
    Quaternion::join(p)
}

impl From<Complex64> for Quaternion {
    #[inline]
    fn from(c: Complex64) -> Self {
        Self::new(c.re, c.im, 0.0, 0.0)
    }
}

impl From<f64> for Quaternion {
    #[inline]
    fn from(w: f64) -> Self {
        Self::from_scalar(w)
    }
}

impl Mul for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        self.hamilton(rhs)
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: f64) -> Self {
        self.scale(rhs)
    }
}

impl Add for Quaternion {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Self::new(
            self.w + rhs.w,
            self.x + rhs.x,
            self.y + rhs.y,
            self.z + rhs.z,
        )
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for Quaternion {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Self::new(
            self.w - rhs.w,
            self.x - rhs.x,
            self.y - rhs.y,
            self.z - rhs.z,
        )
    }
}

impl Neg for Quaternion {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}
