//! Exact arithmetic in Q(zeta_24).
//!
//! Elements are stored in the power basis 1, z, ..., z^7 of z = exp(2 pi i / 24)
//! modulo the cyclotomic polynomial x^8 - x^4 + 1. Every root of unity of order
//! dividing 24 lives here, as do i = z^6 and sqrt(-3) = 2z^4 - 1.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::json::{rational_from_json, rational_to_json};

/// Order of the ambient root of unity.
pub const AMBIENT_ORDER: u64 = 24;
const DEGREE: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNumber {
    coords: [BigRational; DEGREE],
}

/// Reduces a coefficient vector modulo x^8 - x^4 + 1, using x^8 = x^4 - 1.
fn reduce(mut poly: Vec<BigRational>) -> [BigRational; DEGREE] {
    for d in (DEGREE..poly.len()).rev() {
        let c = std::mem::replace(&mut poly[d], BigRational::zero());
        if !c.is_zero() {
            poly[d - 4] += &c;
            poly[d - 8] -= &c;
        }
    }
    poly.resize(DEGREE, BigRational::zero());
    let mut out: [BigRational; DEGREE] = Default::default();
    for (slot, c) in out.iter_mut().zip(poly) {
        *slot = c;
    }
    out
}

impl CycNumber {
    pub fn zero() -> Self {
        CycNumber { coords: Default::default() }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(r: BigRational) -> Self {
        let mut out = Self::zero();
        out.coords[0] = r;
        out
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_coords(coords: [BigRational; DEGREE]) -> Self {
        CycNumber { coords }
    }

    pub fn coords(&self) -> &[BigRational; DEGREE] {
        &self.coords
    }

    /// z^e for the primitive 24th root of unity z.
    pub fn zeta24(e: i64) -> Self {
        let e = e.rem_euclid(AMBIENT_ORDER as i64) as usize;
        let mut poly = vec![BigRational::zero(); e.max(DEGREE - 1) + 1];
        poly[e] = BigRational::one();
        CycNumber { coords: reduce(poly) }
    }

    pub fn i() -> Self {
        Self::zeta24(6)
    }

    /// The square root i*sqrt(3) = 2 zeta_3 + 1 of -3.
    pub fn sqrt_minus_three() -> Self {
        &Self::zeta24(8).scale(&BigRational::from_integer(2.into())) + &Self::one()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coords[0].clone())
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        let mut out = self.clone();
        for c in out.coords.iter_mut() {
            if !c.is_zero() {
                *c *= r;
            }
        }
        out
    }

    /// Complex conjugation, z -> z^{-1}.
    pub fn conj(&self) -> Self {
        let mut acc = Self::zero();
        for (j, c) in self.coords.iter().enumerate() {
            if !c.is_zero() {
                acc += &Self::zeta24(-(j as i64)).scale(c);
            }
        }
        acc
    }

    /// Multiplicative inverse, found by solving the 8x8 rational system
    /// (multiplication-by-self matrix) * x = 1.
    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.to_rational() {
            return Ok(Self::from_rational(r.recip()));
        }
        // Column j holds the coordinates of self * z^j.
        let columns: Vec<CycNumber> = (0..DEGREE as i64).map(|j| self * &Self::zeta24(j)).collect();
        let matrix: Vec<Vec<BigRational>> =
            (0..DEGREE).map(|row| columns.iter().map(|col| col.coords[row].clone()).collect()).collect();
        let mut rhs = vec![BigRational::zero(); DEGREE];
        rhs[0] = BigRational::one();
        let solution = crate::linalg::solve_unique(&matrix, &rhs).ok_or(Error::DivisionByZero)?;
        let mut out = Self::zero();
        for (slot, v) in out.coords.iter_mut().zip(solution) {
            *slot = v;
        }
        Ok(out)
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.invert()? } else { self.clone() };
        let mut result = Self::one();
        let mut square = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &square;
            }
            square = &square * &square;
            k >>= 1;
        }
        Ok(result)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.coords.iter().map(rational_to_json).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let items = v
            .as_array()
            .filter(|a| a.len() == DEGREE)
            .ok_or_else(|| Error::InvalidInput(format!("expected 8 coordinates, got {v}")))?;
        let mut out = Self::zero();
        for (slot, item) in out.coords.iter_mut().zip(items) {
            *slot = rational_from_json(item)?;
        }
        Ok(out)
    }
}

/// zeta_M^j = z^(24 j / M).
pub fn zeta_power(m: u64, j: i64) -> Result<CycNumber> {
    if m == 0 || AMBIENT_ORDER % m != 0 {
        return Err(Error::UnsupportedRoot(m));
    }
    let step = (AMBIENT_ORDER / m) as i64;
    Ok(CycNumber::zeta24(step * j.rem_euclid(m as i64)))
}

/// The orthogonality sum over j = 0..M-1 of zeta_M^{j(n-m)}, evaluated term by
/// term. It equals M when n = m (mod M) and 0 otherwise.
pub fn roots_of_unity_filter_sum(m: u64, n: i64, r: i64) -> Result<CycNumber> {
    let mut acc = CycNumber::zero();
    for j in 0..m as i64 {
        acc += &zeta_power(m, j * (n - r))?;
    }
    Ok(acc)
}

impl Default for CycNumber {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<BigRational> for CycNumber {
    fn from(r: BigRational) -> Self {
        Self::from_rational(r)
    }
}

impl From<i64> for CycNumber {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl<'a> Add<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn add(self, rhs: &CycNumber) -> CycNumber {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&CycNumber> for CycNumber {
    fn add_assign(&mut self, rhs: &CycNumber) {
        for (a, b) in self.coords.iter_mut().zip(rhs.coords.iter()) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
}

impl<'a> Sub<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn sub(self, rhs: &CycNumber) -> CycNumber {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl SubAssign<&CycNumber> for CycNumber {
    fn sub_assign(&mut self, rhs: &CycNumber) {
        for (a, b) in self.coords.iter_mut().zip(rhs.coords.iter()) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        let mut out = self.clone();
        for c in out.coords.iter_mut() {
            *c = -std::mem::take(c);
        }
        out
    }
}

impl<'a> Mul<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn mul(self, rhs: &CycNumber) -> CycNumber {
        if self.is_rational() {
            return rhs.scale(&self.coords[0]);
        }
        if rhs.is_rational() {
            return self.scale(&rhs.coords[0]);
        }
        let mut poly = vec![BigRational::zero(); 2 * DEGREE - 1];
        for (i, a) in self.coords.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in rhs.coords.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                poly[i + j] += a * b;
            }
        }
        CycNumber { coords: reduce(poly) }
    }
}

macro_rules! forward_owned {
    ($($tr:ident::$method:ident),*) => {$(
        impl $tr<CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $method(self, rhs: CycNumber) -> CycNumber {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $method(self, rhs: &CycNumber) -> CycNumber {
                (&self).$method(rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        -&self
    }
}

impl Zero for CycNumber {
    fn zero() -> Self {
        CycNumber::zero()
    }
    fn is_zero(&self) -> bool {
        CycNumber::is_zero(self)
    }
}

impl One for CycNumber {
    fn one() -> Self {
        CycNumber::one()
    }
}

impl crate::linalg::Field for CycNumber {
    fn try_inverse(&self) -> Option<Self> {
        self.invert().ok()
    }
}

/// Power-basis rendering, e.g. `1/18 + 1/9*z^4` with z = exp(2 pi i/24).
impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            first = false;
            match j {
                0 => write!(f, "{magnitude}")?,
                _ => {
                    if !magnitude.is_one() {
                        write!(f, "{magnitude}*")?;
                    }
                    if j == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{j}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNumber({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational;

    #[test]
    fn zeta_power_examples() {
        assert_eq!(zeta_power(1, 0).unwrap(), CycNumber::one());
        assert_eq!(zeta_power(2, 1).unwrap(), CycNumber::from_integer(-1));
        let s = &zeta_power(3, 1).unwrap() + &zeta_power(3, 2).unwrap();
        assert_eq!(s, CycNumber::from_integer(-1));
        assert_eq!(zeta_power(5, 1), Err(Error::UnsupportedRoot(5)));
        assert_eq!(zeta_power(48, 1), Err(Error::UnsupportedRoot(48)));
    }

    #[test]
    fn reduction_of_z8() {
        let z4 = CycNumber::zeta24(4);
        let expected = &z4 - &CycNumber::one();
        assert_eq!(&z4 * &z4, expected);
        assert_eq!(CycNumber::zeta24(8), expected);
    }

    #[test]
    fn sqrt_minus_three_squares_to_minus_three() {
        let s = CycNumber::sqrt_minus_three();
        assert_eq!(&s * &s, CycNumber::from_integer(-3));
        let i = CycNumber::i();
        assert_eq!(&i * &i, CycNumber::from_integer(-1));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(CycNumber::one().invert().unwrap(), CycNumber::one());
        let m1 = CycNumber::from_integer(-1);
        assert_eq!(m1.invert().unwrap(), m1);
        assert_eq!(CycNumber::zeta24(1).invert().unwrap(), CycNumber::zeta24(23));
        assert_eq!(CycNumber::zero().invert(), Err(Error::DivisionByZero));
        let x = &CycNumber::sqrt_minus_three() + &CycNumber::from_rational(rational(1, 2));
        assert_eq!(&x * &x.invert().unwrap(), CycNumber::one());
    }

    #[test]
    fn filter_sum_examples() {
        assert_eq!(roots_of_unity_filter_sum(3, 4, 1).unwrap(), CycNumber::from_integer(3));
        assert!(roots_of_unity_filter_sum(3, 5, 1).unwrap().is_zero());
        assert_eq!(roots_of_unity_filter_sum(1, 17, -4).unwrap(), CycNumber::one());
    }

    #[test]
    fn filter_sum_exhaustive() {
        for m in [1u64, 2, 3, 4, 6, 8, 12, 24] {
            for diff in -48i64..=48 {
                let expected = if diff.rem_euclid(m as i64) == 0 { m as i64 } else { 0 };
                assert_eq!(
                    roots_of_unity_filter_sum(m, diff, 0).unwrap(),
                    CycNumber::from_integer(expected),
                    "M={m}, n-m={diff}"
                );
            }
        }
    }

    #[test]
    fn zeta_orders() {
        for m in [1u64, 2, 3, 4, 6, 8, 12, 24] {
            for j in 0..m as i64 {
                let z = zeta_power(m, j).unwrap();
                let order = m / crate::arith::gcd_u64(m, j as u64);
                assert_eq!(z.pow(order as i64).unwrap(), CycNumber::one());
                for smaller in 1..order {
                    assert_ne!(z.pow(smaller as i64).unwrap(), CycNumber::one());
                }
                let back = zeta_power(m, m as i64 - j).unwrap();
                assert_eq!(&z * &back, CycNumber::one());
            }
        }
    }

    #[test]
    fn conjugation_matches_inverse_on_roots() {
        for e in 0..24 {
            let z = CycNumber::zeta24(e);
            assert_eq!(z.conj(), z.invert().unwrap());
        }
        assert_eq!(CycNumber::i().conj(), -CycNumber::i());
    }

    #[test]
    fn json_round_trip() {
        let x = &CycNumber::sqrt_minus_three().scale(&rational(-1, 12)) + &CycNumber::from_rational(rational(1, 12));
        let v = x.to_json();
        assert_eq!(v.as_array().unwrap().len(), 8);
        assert_eq!(CycNumber::from_json(&v).unwrap(), x);
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(CycNumber::zero().to_string(), "0");
        assert_eq!(CycNumber::from_rational(rational(-1, 128)).to_string(), "-1/128");
        assert_eq!(CycNumber::i().scale(&rational(-1, 8)).to_string(), "-1/8*z^6");
    }
}
