//! Truncated q-expansions with exact coefficients, the sieving / rescaling /
//! twisting operators, and the standard expansions built on them.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::arith::{factorize, gcd_u64, lcm_u64};
use crate::cyclotomic::{CycNumber, AMBIENT_ORDER};
use crate::error::{Error, Result};
use crate::json::{rational_from_json, rational_to_json};

/// A q-expansion `sum c(e/delta) q^(e/delta)` whose coefficients are known
/// exactly for every exponent below `trunc`.
///
/// The lattice denominator is kept minimal: after every operation `delta` is
/// reduced to the smallest divisor of 24 that still holds all stored exponents.
#[derive(Clone, PartialEq, Eq)]
pub struct FourierSeries {
    delta: u32,
    terms: BTreeMap<i64, CycNumber>,
    trunc: BigRational,
}

fn ceil_to_i64(r: &BigRational) -> i64 {
    r.ceil().to_integer().to_i64().expect("truncation bound fits in i64")
}

fn check_delta(delta: u32) -> Result<()> {
    if delta == 0 || AMBIENT_ORDER % delta as u64 != 0 {
        return Err(Error::LatticeMismatch(format!("exponent denominator {delta} does not divide 24")));
    }
    Ok(())
}

impl FourierSeries {
    /// Builds a series from `(numerator, coefficient)` pairs on the lattice
    /// `(1/delta) Z`. Repeated numerators are summed, terms at or beyond the
    /// truncation are dropped.
    pub fn new(delta: u32, terms: impl IntoIterator<Item = (i64, CycNumber)>, trunc: BigRational) -> Result<Self> {
        check_delta(delta)?;
        if trunc.is_negative() {
            return Err(Error::Domain("truncation must be nonnegative".into()));
        }
        let limit = ceil_to_i64(&(&trunc * BigInt::from(delta)));
        let mut map: BTreeMap<i64, CycNumber> = BTreeMap::new();
        for (e, c) in terms {
            if e < 0 {
                return Err(Error::Domain(format!("negative exponent {e}/{delta}")));
            }
            if e < limit && !c.is_zero() {
                *map.entry(e).or_default() += &c;
            }
        }
        Ok(Self::normalized(delta, map, trunc))
    }

    /// The zero series, exact below `trunc`.
    pub fn zero(trunc: BigRational) -> Self {
        FourierSeries { delta: 1, terms: BTreeMap::new(), trunc }
    }

    /// Integral exponents `0..coeffs.len()`, truncated at `coeffs.len()`.
    pub fn from_integer_coefficients(coeffs: &[BigInt]) -> Self {
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| (n as i64, CycNumber::from_rational(BigRational::from_integer(c.clone()))));
        Self::new(1, terms, BigRational::from_integer(coeffs.len().into())).expect("valid lattice")
    }

    /// Integral exponents `0..coeffs.len()` with rational coefficients.
    pub fn from_rational_coefficients(coeffs: &[BigRational]) -> Self {
        let terms = coeffs.iter().enumerate().map(|(n, c)| (n as i64, CycNumber::from_rational(c.clone())));
        Self::new(1, terms, BigRational::from_integer(coeffs.len().into())).expect("valid lattice")
    }

    fn normalized(delta: u32, terms: BTreeMap<i64, CycNumber>, trunc: BigRational) -> Self {
        let mut terms = terms;
        terms.retain(|_, c| !c.is_zero());
        let mut g = delta as u64;
        for &e in terms.keys() {
            g = gcd_u64(g, e as u64);
            if g == 1 {
                break;
            }
        }
        if g > 1 {
            terms = terms.into_iter().map(|(e, c)| (e / g as i64, c)).collect();
        }
        FourierSeries { delta: delta / g as u32, terms, trunc }
    }

    pub fn delta(&self) -> u32 {
        self.delta
    }

    pub fn trunc(&self) -> &BigRational {
        &self.trunc
    }

    /// Stored `(numerator, coefficient)` pairs in increasing exponent order.
    pub fn raw_terms(&self) -> &BTreeMap<i64, CycNumber> {
        &self.terms
    }

    /// Nonzero terms as `(exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (BigRational, &CycNumber)> + '_ {
        let delta = BigInt::from(self.delta);
        self.terms.iter().map(move |(e, c)| (BigRational::new(BigInt::from(*e), delta.clone()), c))
    }

    /// Coefficient of `q^exponent`, or `None` when the exponent is at or past
    /// the truncation (the coefficient is unknown there).
    pub fn coefficient(&self, exponent: &BigRational) -> Option<CycNumber> {
        if exponent >= &self.trunc || exponent.is_negative() {
            return None;
        }
        let scaled = exponent * BigInt::from(self.delta);
        if !scaled.is_integer() {
            return Some(CycNumber::zero());
        }
        let e = scaled.to_integer().to_i64()?;
        Some(self.terms.get(&e).cloned().unwrap_or_default())
    }

    /// Coefficient of `q^n` for an integral exponent.
    pub fn coeff(&self, n: i64) -> Option<CycNumber> {
        self.coefficient(&BigRational::from_integer(n.into()))
    }

    /// Rational coefficient of `q^n`, `None` if unknown or irrational.
    pub fn rational_coeff(&self, n: i64) -> Option<BigRational> {
        self.coeff(n)?.to_rational()
    }

    /// Lowest exponent with a nonzero coefficient; the truncation if the
    /// series vanishes below it.
    pub fn valuation(&self) -> BigRational {
        match self.terms.keys().next() {
            Some(&e) => BigRational::new(e.into(), self.delta.into()),
            None => self.trunc.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.terms.values().all(CycNumber::is_rational)
    }

    pub fn has_integral_exponents(&self) -> bool {
        self.delta == 1
    }

    /// The same series with truncation `min(self.trunc, t)`.
    pub fn truncated(&self, t: &BigRational) -> Self {
        let trunc = if t < &self.trunc { t.clone() } else { self.trunc.clone() };
        Self::new(self.delta, self.terms.clone(), trunc).expect("valid lattice")
    }

    fn rescaled_terms(&self, delta: u32) -> impl Iterator<Item = (i64, &CycNumber)> {
        let factor = (delta / self.delta) as i64;
        self.terms.iter().map(move |(e, c)| (e * factor, c))
    }

    /// First exponent below the common truncation where the two series
    /// differ, if any.
    pub fn first_difference(&self, other: &Self) -> Option<BigRational> {
        let diff = self - other;
        let first = diff.terms().next().map(|(e, _)| e);
        first
    }

    /// True when both series are known below `bound` and agree there.
    pub fn agrees_with(&self, other: &Self, bound: &BigRational) -> bool {
        if &self.trunc < bound || &other.trunc < bound {
            return false;
        }
        let diff = &self.truncated(bound) - &other.truncated(bound);
        diff.is_zero()
    }

    pub fn scale(&self, c: &CycNumber) -> Self {
        let terms = self.terms.iter().map(|(e, x)| (*e, x * c));
        Self::new(self.delta, terms, self.trunc.clone()).expect("valid lattice")
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        let terms = self.terms.iter().map(|(e, x)| (*e, x.scale(r)));
        Self::new(self.delta, terms, self.trunc.clone()).expect("valid lattice")
    }

    fn combine(&self, other: &Self, subtract: bool) -> Self {
        let delta = lcm_u64(self.delta as u64, other.delta as u64) as u32;
        let trunc = if self.trunc < other.trunc { self.trunc.clone() } else { other.trunc.clone() };
        let mut map: BTreeMap<i64, CycNumber> = BTreeMap::new();
        for (e, c) in self.rescaled_terms(delta) {
            map.insert(e, c.clone());
        }
        for (e, c) in other.rescaled_terms(delta) {
            let slot = map.entry(e).or_default();
            if subtract {
                *slot -= c;
            } else {
                *slot += c;
            }
        }
        Self::new(delta, map, trunc).expect("valid lattice")
    }

    /// Cauchy product. The result is exact below
    /// `min(T_f + val(g), T_g + val(f))`.
    pub fn mul(&self, other: &Self) -> Self {
        let delta = lcm_u64(self.delta as u64, other.delta as u64) as u32;
        let t1 = &self.trunc + other.valuation();
        let t2 = &other.trunc + self.valuation();
        let trunc = if t1 < t2 { t1 } else { t2 };
        let limit = ceil_to_i64(&(&trunc * BigInt::from(delta)));
        let mut map: BTreeMap<i64, CycNumber> = BTreeMap::new();
        let rhs: Vec<(i64, &CycNumber)> = other.rescaled_terms(delta).collect();
        for (e1, c1) in self.rescaled_terms(delta) {
            for &(e2, c2) in &rhs {
                if e1 + e2 >= limit {
                    break;
                }
                *map.entry(e1 + e2).or_default() += &(c1 * c2);
            }
        }
        Self::new(delta, map, trunc).expect("valid lattice")
    }

    /// `self^n`; the zeroth power is `1` with the same truncation.
    pub fn pow(&self, n: u32) -> Self {
        if n == 0 {
            return Self::new(1, [(0, CycNumber::one())], self.trunc.clone()).expect("valid lattice");
        }
        let mut result = self.clone();
        for _ in 1..n {
            result = result.mul(self);
        }
        result
    }

    /// Keeps exactly the coefficients of `q^n` with `n = m (mod modulus)`.
    pub fn sieve(&self, modulus: u64, m: i64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::Domain("sieving modulus must be positive".into()));
        }
        if self.delta != 1 {
            return Err(Error::LatticeMismatch(format!(
                "sieving needs integral exponents, series lives on (1/{}) Z",
                self.delta
            )));
        }
        let modulus = modulus as i64;
        let terms = self.terms.iter().filter(|(e, _)| (*e - m).rem_euclid(modulus) == 0).map(|(e, c)| (*e, c.clone()));
        Self::new(1, terms, self.trunc.clone())
    }

    /// `f(d tau)`: the coefficient of `q^(d n)` becomes `c_f(n)`, and the
    /// truncation is multiplied by `d`.
    pub fn v_operator(&self, d: &BigRational) -> Result<Self> {
        if !d.is_positive() {
            return Err(Error::Domain(format!("V_d needs d > 0, got {d}")));
        }
        let unit = BigRational::new(BigInt::from(AMBIENT_ORDER), BigInt::from(self.delta)) * d;
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let scaled = &unit * BigInt::from(*e);
            if !scaled.is_integer() {
                return Err(Error::LatticeMismatch(format!("exponent {e}/{} times {d} leaves (1/24) Z", self.delta)));
            }
            let n = scaled.to_integer().to_i64().ok_or_else(|| Error::Domain("exponent overflow".into()))?;
            terms.push((n, c.clone()));
        }
        Self::new(AMBIENT_ORDER as u32, terms, &self.trunc * d)
    }

    /// Multiplies the coefficient of `q^n` by `zeta_M^(j n)`.
    pub fn shift_character(&self, j: i64, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::Domain("modulus must be positive".into()));
        }
        let den = modulus as i128 * self.delta as i128;
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let num = AMBIENT_ORDER as i128 * j as i128 * *e as i128;
            if num % den != 0 {
                return Err(Error::LatticeMismatch(format!(
                    "zeta_{modulus}^({j} * {e}/{}) is not a 24th root of unity",
                    self.delta
                )));
            }
            let root = CycNumber::zeta24((num / den).rem_euclid(AMBIENT_ORDER as i128) as i64);
            terms.push((*e, c * &root));
        }
        Self::new(self.delta, terms, self.trunc.clone())
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self.terms.iter().map(|(e, c)| json!([e, c.to_json()])).collect();
        json!({
            "delta": self.delta,
            "trunc": rational_to_json(&self.trunc),
            "terms": terms,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let delta = v
            .get("delta")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::InvalidInput("series JSON needs an integer 'delta'".into()))?;
        let trunc =
            rational_from_json(v.get("trunc").ok_or_else(|| Error::InvalidInput("series JSON needs 'trunc'".into()))?)?;
        let items = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::InvalidInput("series JSON needs a 'terms' array".into()))?;
        let mut terms = Vec::with_capacity(items.len());
        for item in items {
            let pair = item
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| Error::InvalidInput(format!("bad term {item}")))?;
            let e = pair[0].as_i64().ok_or_else(|| Error::InvalidInput(format!("bad exponent {}", pair[0])))?;
            terms.push((e, CycNumber::from_json(&pair[1])?));
        }
        let delta = u32::try_from(delta).map_err(|_| Error::InvalidInput(format!("bad delta {delta}")))?;
        Self::new(delta, terms, trunc)
    }
}

impl std::ops::Add for &FourierSeries {
    type Output = FourierSeries;
    fn add(self, rhs: &FourierSeries) -> FourierSeries {
        self.combine(rhs, false)
    }
}

impl std::ops::Sub for &FourierSeries {
    type Output = FourierSeries;
    fn sub(self, rhs: &FourierSeries) -> FourierSeries {
        self.combine(rhs, true)
    }
}

impl std::ops::Neg for &FourierSeries {
    type Output = FourierSeries;
    fn neg(self) -> FourierSeries {
        self.scale_rational(&-BigRational::one())
    }
}

impl std::ops::Mul for &FourierSeries {
    type Output = FourierSeries;
    fn mul(self, rhs: &FourierSeries) -> FourierSeries {
        FourierSeries::mul(self, rhs)
    }
}

fn write_exponent(f: &mut fmt::Formatter<'_>, e: &BigRational) -> fmt::Result {
    if e.is_zero() {
        Ok(())
    } else if e.is_one() {
        write!(f, "q")
    } else if e.is_integer() {
        write!(f, "q^{e}")
    } else {
        write!(f, "q^({e})")
    }
}

/// Renders `1 - 24q - 72q^2 + ... + O(q^T)`; irrational coefficients are
/// parenthesized.
impl fmt::Display for FourierSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            match c.to_rational() {
                Some(r) => {
                    let negative = r.is_negative();
                    let magnitude = r.abs();
                    if first {
                        if negative {
                            write!(f, "-")?;
                        }
                    } else {
                        write!(f, " {} ", if negative { "-" } else { "+" })?;
                    }
                    if !magnitude.is_one() || e.is_zero() {
                        write!(f, "{magnitude}")?;
                    }
                }
                None => {
                    if !first {
                        write!(f, " + ")?;
                    }
                    write!(f, "({c})")?;
                    if !e.is_zero() {
                        write!(f, "*")?;
                    }
                }
            }
            write_exponent(f, &e)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.trunc)
    }
}

impl fmt::Debug for FourierSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FourierSeries[{self}]")
    }
}

/// sigma_1(n), the sum of the positive divisors of n.
pub fn sigma1(n: i64) -> Result<u128> {
    if n <= 0 {
        return Err(Error::Domain(format!("sigma_1 needs n >= 1, got {n}")));
    }
    Ok(factorize(n as u64)
        .into_iter()
        .map(|(p, e)| {
            let p = p as u128;
            (p.pow(e + 1) - 1) / (p - 1)
        })
        .product())
}

/// Table of sigma_1(n) for 1 <= n <= bound, filled by a divisor sieve.
#[derive(Debug, Clone)]
pub struct SigmaCache {
    table: Vec<u64>,
}

impl SigmaCache {
    pub fn new(bound: usize) -> Self {
        let mut table = vec![0u64; bound + 1];
        for d in 1..=bound {
            for m in (d..=bound).step_by(d) {
                table[m] += d as u64;
            }
        }
        SigmaCache { table }
    }

    pub fn bound(&self) -> usize {
        self.table.len() - 1
    }

    /// sigma_1(n) if 1 <= n <= bound.
    pub fn get(&self, n: usize) -> Option<u64> {
        (n >= 1).then(|| self.table.get(n).copied()).flatten()
    }

    /// A process-wide table covering at least `bound`. It is rebuilt (at
    /// twice the size) only when a larger bound is requested.
    pub fn shared(bound: usize) -> Arc<SigmaCache> {
        static CACHE: OnceLock<Mutex<Arc<SigmaCache>>> = OnceLock::new();
        let cell = CACHE.get_or_init(|| Mutex::new(Arc::new(SigmaCache::new(1024))));
        let mut guard = cell.lock().unwrap_or_else(|e| e.into_inner());
        if guard.bound() < bound {
            *guard = Arc::new(SigmaCache::new(bound.max(2 * guard.bound())));
        }
        Arc::clone(&guard)
    }
}

/// Holomorphic part `1 - 24 sum sigma_1(n) q^n` of the weight-2 Eisenstein
/// series, exact for exponents below `trunc`. The non-holomorphic term
/// `-3/(pi Im tau)` only matters for cusp limits, which are computed in
/// closed form in [`crate::modular`].
pub fn e2_holomorphic(trunc: u64) -> FourierSeries {
    let cache = SigmaCache::shared(trunc as usize);
    let mut terms = Vec::with_capacity(trunc as usize);
    if trunc > 0 {
        terms.push((0, CycNumber::one()));
    }
    for n in 1..trunc {
        let s = cache.get(n as usize).expect("cache covers the bound") as i64;
        terms.push((n as i64, CycNumber::from_integer(-24 * s)));
    }
    FourierSeries::new(1, terms, BigRational::from_integer(trunc.into())).expect("valid lattice")
}

/// The Jacobi thetas `theta_2 = sum q^((2n+1)^2/8)` and
/// `theta_3 = sum q^(n^2/2)` over n in Z, exact below `trunc`.
pub fn jacobi_theta(kind: u8, trunc: u64) -> Result<FourierSeries> {
    let t = BigRational::from_integer(trunc.into());
    match kind {
        2 => {
            let mut terms = Vec::new();
            let mut k = 1i64;
            while (k * k) < 8 * trunc as i64 {
                terms.push((k * k, CycNumber::from_integer(2)));
                k += 2;
            }
            FourierSeries::new(8, terms, t)
        }
        3 => {
            let mut terms = vec![(0, CycNumber::one())];
            let mut n = 1i64;
            while n * n < 2 * trunc as i64 {
                terms.push((n * n, CycNumber::from_integer(2)));
                n += 1;
            }
            FourierSeries::new(2, terms, t)
        }
        other => Err(Error::Unsupported(format!("Jacobi theta of kind {other}"))),
    }
}

/// `q^(a e/24) prod_{n >= 1} (1 - q^(a n))^e`, exact below `trunc`.
pub fn eta_product(scale: u64, exponent: u64, trunc: u64) -> Result<FourierSeries> {
    if scale == 0 || exponent == 0 {
        return Err(Error::Domain("eta product needs positive scale and exponent".into()));
    }
    // Exponents are a e/24 + a k; in units of 1/24 that is a e + 24 a k.
    let limit = 24 * trunc as i64;
    let offset = (scale * exponent) as i64;
    let step = 24 * scale as i64;
    if offset >= limit {
        return FourierSeries::new(24, Vec::new(), BigRational::from_integer(trunc.into()));
    }
    let degree = ((limit - 1 - offset) / step) as usize;
    let mut poly = vec![BigInt::zero(); degree + 1];
    poly[0] = BigInt::one();
    for n in 1..=degree {
        for _ in 0..exponent {
            for i in (n..=degree).rev() {
                let lower = poly[i - n].clone();
                poly[i] -= lower;
            }
        }
    }
    let terms = poly
        .into_iter()
        .enumerate()
        .map(|(k, c)| (offset + step * k as i64, CycNumber::from_rational(BigRational::from_integer(c))));
    FourierSeries::new(24, terms, BigRational::from_integer(trunc.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{integer, rational};

    fn ints(coeffs: &[i64]) -> FourierSeries {
        let big: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
        FourierSeries::from_integer_coefficients(&big)
    }

    fn coeffs_upto(f: &FourierSeries, n: i64) -> Vec<i64> {
        (0..n).map(|k| f.rational_coeff(k).unwrap().to_integer().to_i64().unwrap()).collect()
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma1(1).unwrap(), 1);
        assert_eq!(sigma1(103).unwrap(), 104);
        assert_eq!(sigma1(12).unwrap(), 28);
        assert!(sigma1(0).is_err());
        assert!(sigma1(-3).is_err());
    }

    #[test]
    fn sigma_cache_matches_factorization() {
        let cache = SigmaCache::new(3000);
        for n in 1..=3000 {
            assert_eq!(cache.get(n).unwrap() as u128, sigma1(n as i64).unwrap());
        }
        assert_eq!(cache.get(0), None);
        assert_eq!(cache.get(3001), None);
    }

    #[test]
    fn e2_leading_terms() {
        let e2 = e2_holomorphic(4);
        assert_eq!(coeffs_upto(&e2, 4), vec![1, -24, -72, -96]);
        assert_eq!(e2.coeff(4), None);
    }

    #[test]
    fn sieve_examples() {
        let e2 = e2_holomorphic(12);
        let odd = e2.sieve(2, 1).unwrap();
        assert_eq!(coeffs_upto(&odd, 6), vec![0, -24, 0, -96, 0, -144]);
        assert_eq!(e2.sieve(1, 0).unwrap(), e2);
        let normalized = odd.scale_rational(&rational(-1, 24));
        assert_eq!(coeffs_upto(&normalized, 12), vec![0, 1, 0, 4, 0, 6, 0, 8, 0, 13, 0, 12]);
        let theta3 = jacobi_theta(3, 4).unwrap();
        assert!(matches!(theta3.sieve(2, 0), Err(Error::LatticeMismatch(_))));
    }

    #[test]
    fn v_operator_examples() {
        let f = e2_holomorphic(20);
        assert_eq!(f.v_operator(&integer(1)).unwrap(), f);
        let lhs = f.sieve(2, 1).unwrap().v_operator(&integer(2)).unwrap();
        let rhs = f.sieve(4, 2).unwrap().scale_rational(&rational(1, 3));
        assert!(lhs.agrees_with(&rhs, &integer(20)));
        assert_eq!(lhs.trunc(), &integer(40));
        let halved = ints(&[1, 1, 1]).v_operator(&rational(1, 2)).unwrap();
        assert_eq!(halved.delta(), 2);
        assert!(matches!(ints(&[0, 1]).v_operator(&rational(1, 48)), Err(Error::LatticeMismatch(_))));
        assert!(ints(&[1]).v_operator(&integer(0)).is_err());
    }

    #[test]
    fn shift_character_examples() {
        let f = ints(&[0, 1, 1]);
        assert_eq!(f.shift_character(0, 2).unwrap(), f);
        assert_eq!(f.shift_character(1, 2).unwrap(), ints(&[0, -1, 1]));
    }

    #[test]
    fn arithmetic_examples() {
        let f = ints(&[1, 2, 3]);
        let zero = FourierSeries::zero(integer(3));
        assert_eq!(&f + &zero, f);
        let q = ints(&[0, 1, 0, 0]);
        assert_eq!(coeffs_upto(&q.mul(&q), 4), vec![0, 0, 1, 0]);
        let squares = jacobi_theta(3, 6).unwrap().v_operator(&integer(2)).unwrap();
        let fourth = squares.pow(4);
        assert_eq!(coeffs_upto(&fourth, 5), vec![1, 8, 24, 32, 24]);
    }

    #[test]
    fn product_truncation_uses_valuations() {
        let f = FourierSeries::new(1, [(2, CycNumber::one())], integer(5)).unwrap();
        let g = FourierSeries::new(1, [(3, CycNumber::one())], integer(6)).unwrap();
        let h = f.mul(&g);
        assert_eq!(h.trunc(), &integer(8));
        assert_eq!(h.rational_coeff(5).unwrap(), integer(1));
    }

    #[test]
    fn eta_examples() {
        let eta = eta_product(6, 4, 50).unwrap();
        let expected = [(1, 1), (7, -4), (13, 2), (19, 8), (25, -5), (31, -4), (37, -10), (43, 8), (49, 9)];
        let nonzero: Vec<(i64, i64)> = (0..50)
            .filter_map(|n| {
                let c = eta.rational_coeff(n).unwrap();
                (!c.is_zero()).then(|| (n, c.to_integer().to_i64().unwrap()))
            })
            .collect();
        assert_eq!(nonzero, expected);
        assert_eq!(eta.rational_coeff(2).unwrap(), integer(0));
    }

    #[test]
    fn eta_fractional_lattice() {
        // q^(1/24) prod (1 - q^n): Euler's pentagonal series shifted by 1/24.
        let eta = eta_product(1, 1, 6).unwrap();
        assert_eq!(eta.delta(), 24);
        let c = |num: i64| eta.coefficient(&rational(num, 24)).unwrap().to_rational().unwrap();
        assert_eq!(c(1), integer(1));
        assert_eq!(c(25), integer(-1));
        assert_eq!(c(49), integer(-1));
        assert_eq!(c(121), integer(1));
        assert_eq!(c(73), integer(0));
    }

    #[test]
    fn theta_examples() {
        let t3 = jacobi_theta(3, 5).unwrap();
        assert_eq!(t3.delta(), 2);
        let c = |num: i64, den: i64| t3.coefficient(&rational(num, den)).unwrap().to_rational().unwrap();
        assert_eq!(c(0, 1), integer(1));
        assert_eq!(c(1, 2), integer(2));
        assert_eq!(c(2, 1), integer(2));
        assert_eq!(c(9, 2), integer(2));
        assert_eq!(c(1, 1), integer(0));
        let t2 = jacobi_theta(2, 3).unwrap();
        assert_eq!(t2.delta(), 8);
        assert_eq!(t2.coefficient(&rational(9, 8)).unwrap(), CycNumber::from_integer(2));
        assert!(jacobi_theta(4, 3).is_err());
    }

    #[test]
    fn json_round_trip() {
        let t2 = jacobi_theta(2, 4).unwrap().scale(&CycNumber::sqrt_minus_three());
        let v = t2.to_json();
        assert_eq!(v["delta"], 8);
        assert_eq!(FourierSeries::from_json(&v).unwrap(), t2);
        let text = serde_json::to_string(&v).unwrap();
        let back: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(FourierSeries::from_json(&back).unwrap(), t2);
    }

    #[test]
    fn display_shows_terms() {
        assert_eq!(e2_holomorphic(3).to_string(), "1 - 24q - 72q^2 + O(q^3)");
        assert_eq!(jacobi_theta(3, 1).unwrap().to_string(), "1 + 2q^(1/2) + O(q^1)");
    }
}
