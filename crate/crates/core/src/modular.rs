//! Cusps of Gamma_0(N) and exact cusp values of sieved and rescaled `E_2`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde_json::{json, Value};

use crate::arith::{divisors, euler_phi, gcd, gcd_u64, integer, is_prime};
use crate::cyclotomic::{zeta_power, CycNumber};
use crate::error::{Error, Result};

/// A reduced fraction `h/k` with `k >= 0`; `1/0` is the cusp at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cusp {
    h: i64,
    k: u64,
}

impl Cusp {
    pub fn new(h: i64, k: i64) -> Result<Self> {
        if h == 0 && k == 0 {
            return Err(Error::InvalidInput("0/0 is not a cusp".into()));
        }
        if k == 0 {
            return Ok(Self::infinity());
        }
        let g = gcd(h as i128, k as i128) as i64;
        let sign = if k < 0 { -1 } else { 1 };
        Ok(Cusp { h: sign * h / g, k: (sign * k / g) as u64 })
    }

    pub fn infinity() -> Self {
        Cusp { h: 1, k: 0 }
    }

    pub fn zero() -> Self {
        Cusp { h: 0, k: 1 }
    }

    pub fn h(&self) -> i64 {
        self.h
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn is_infinity(&self) -> bool {
        self.k == 0
    }

    pub fn to_json(&self) -> Value {
        json!([self.h, self.k])
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let pair = v
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| Error::InvalidInput(format!("expected [h, k], got {v}")))?;
        let h = pair[0].as_i64().ok_or_else(|| Error::InvalidInput(format!("bad numerator {}", pair[0])))?;
        let k = pair[1].as_i64().ok_or_else(|| Error::InvalidInput(format!("bad denominator {}", pair[1])))?;
        Cusp::new(h, k)
    }

    /// Image under the matrix `[[a, b], [c, d]]`.
    pub fn transform(&self, a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let (h, k) = (self.h as i128, self.k as i128);
        let num = a as i128 * h + b as i128 * k;
        let den = c as i128 * h + d as i128 * k;
        let g = gcd(num, den).max(1);
        let (num, den) = (num / g, den / g);
        let narrow = |x: i128| i64::try_from(x).map_err(|_| Error::Domain("cusp coordinates overflow".into()));
        Cusp::new(narrow(num)?, narrow(den)?)
    }
}

impl PartialOrd for Cusp {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Smallest denominator first, then smallest numerator, infinity last.
impl Ord for Cusp {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.k == 0, self.k, self.h).cmp(&(other.k == 0, other.k, other.h))
    }
}

impl fmt::Display for Cusp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.k {
            0 => write!(f, "oo"),
            1 => write!(f, "{}", self.h),
            k => write!(f, "{}/{}", self.h, k),
        }
    }
}

impl FromStr for Cusp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if matches!(s, "oo" | "inf" | "infinity" | "∞") {
            return Ok(Cusp::infinity());
        }
        let bad = || Error::InvalidInput(format!("cannot parse cusp {s:?}"));
        match s.split_once('/') {
            Some((h, k)) => Cusp::new(h.trim().parse().map_err(|_| bad())?, k.trim().parse().map_err(|_| bad())?),
            None => Cusp::new(s.parse().map_err(|_| bad())?, 1),
        }
    }
}

/// Number of cusps of Gamma_0(N): the sum over `d | N` of `phi(gcd(d, N/d))`.
pub fn cusp_count(n: u64) -> u64 {
    assert!(n >= 1, "level must be positive");
    divisors(n).into_iter().map(|d| euler_phi(gcd_u64(d, n / d))).sum()
}

/// Dimension of the weight-2 Eisenstein space of Gamma_0(N).
pub fn eisenstein_dim(n: u64) -> u64 {
    cusp_count(n) - 1
}

/// Closed form of `dim E_2(Gamma_0(p^k))` for prime `p`, `k >= 1`.
pub fn prime_power_dimension(p: u64, k: u32) -> Option<u64> {
    if !is_prime(p) || k == 0 {
        return None;
    }
    Some(if k % 2 == 0 { (p + 1) * p.pow(k / 2 - 1) - 1 } else { 2 * p.pow((k - 1) / 2) - 1 })
}

/// Whether `c1` and `c2` lie in the same Gamma_0(N)-orbit: writing
/// `ci = hi/ki`, this holds iff `k2 = y k1 (mod N)` and `h1 = y h2
/// (mod gcd(k1, N))` for some unit `y` mod N.
pub fn cusp_equivalent(n: u64, c1: &Cusp, c2: &Cusp) -> bool {
    let n_i = n as i128;
    let g = gcd(c1.k as i128, n_i);
    if g != gcd(c2.k as i128, n_i) {
        return false;
    }
    (0..n_i).filter(|&y| gcd(y, n_i) == 1).any(|y| {
        (c2.k as i128 - y * c1.k as i128).rem_euclid(n_i) == 0 && (c1.h as i128 - y * c2.h as i128).rem_euclid(g) == 0
    })
}

/// Canonical representatives of the cusps of Gamma_0(N): `a/d` for each
/// divisor `d < N` with `0 <= a < d` coprime to `d`, keeping the first of
/// each class, then infinity.
pub fn enumerate_cusps(n: u64) -> Vec<Cusp> {
    let mut reps: Vec<Cusp> = Vec::new();
    for d in divisors(n).into_iter().filter(|&d| d < n) {
        let start = reps.len();
        for a in 0..d {
            if gcd_u64(a, d) != 1 {
                continue;
            }
            let candidate = Cusp { h: a as i64, k: d };
            if !reps[start..].iter().any(|r| cusp_equivalent(n, r, &candidate)) {
                reps.push(candidate);
            }
        }
    }
    reps.push(Cusp::infinity());
    debug_assert_eq!(reps.len() as u64, cusp_count(n));
    reps
}

/// The canonical representative equivalent to `c`.
pub fn canonical_cusp(n: u64, c: &Cusp) -> Cusp {
    enumerate_cusps(n).into_iter().find(|r| cusp_equivalent(n, r, c)).expect("the representatives are exhaustive")
}

/// Cusp value of `E_2 | S_{M,m} | V_d` for a positive rational `d = u/v`:
///
/// `(1/M) sum_j zeta_M^(-j m) gcd(M u h + j v k, M v k)^2 / (M u)^2`.
///
/// At infinity the value is the constant Fourier coefficient, `[m = 0 mod M]`.
pub fn cusp_value_sieved(modulus: u64, residue: i64, d: &BigRational, cusp: &Cusp) -> Result<CycNumber> {
    if modulus == 0 {
        return Err(Error::Domain("sieving modulus must be positive".into()));
    }
    if !d.is_positive() {
        return Err(Error::Domain(format!("rescaling factor must be positive, got {d}")));
    }
    // Validates M | 24 even when the sum below is trivial.
    zeta_power(modulus, 1)?;
    if cusp.is_infinity() {
        let hit = residue.rem_euclid(modulus as i64) == 0;
        return Ok(if hit { CycNumber::one() } else { CycNumber::zero() });
    }
    let to_i128 = |x: &BigInt| x.to_i128().ok_or_else(|| Error::Domain("rescaling factor too large".into()));
    let (u, v) = (to_i128(d.numer())?, to_i128(d.denom())?);
    let m = modulus as i128;
    let (h, k) = (cusp.h as i128, cusp.k as i128);
    let mut total = CycNumber::zero();
    for j in 0..m {
        let g = gcd(m * u * h + j * v * k, m * v * k);
        let weight = BigRational::from_integer(BigInt::from(g * g));
        let root = zeta_power(modulus, -(j as i64) * residue)?;
        total += &root.scale(&weight);
    }
    let mu = BigInt::from(m * u);
    Ok(total.scale(&BigRational::new(BigInt::one(), BigInt::from(m) * &mu * &mu)))
}

/// Cusp value of `E_2 | S_{M,m}`.
pub fn cusp_value_s(modulus: u64, residue: i64, cusp: &Cusp) -> Result<CycNumber> {
    cusp_value_sieved(modulus, residue, &BigRational::one(), cusp)
}

/// Cusp value of `E_2 | S_{M,m} | V_d`.
pub fn cusp_value_sv(modulus: u64, residue: i64, d: u64, cusp: &Cusp) -> Result<CycNumber> {
    cusp_value_sieved(modulus, residue, &integer(d as i64), cusp)
}

/// Cusp value of `E_2 | V_d`.
pub fn cusp_value_v(d: &BigRational, cusp: &Cusp) -> Result<CycNumber> {
    cusp_value_sieved(1, 0, d, cusp)
}

/// Values of one form at every canonical cusp of Gamma_0(N).
#[derive(Debug, Clone, PartialEq)]
pub struct CuspValueTable {
    level: u64,
    entries: Vec<(Cusp, CycNumber)>,
}

impl CuspValueTable {
    /// Builds a table from values at arbitrary representatives; each must
    /// match exactly one canonical cusp and every canonical cusp must be hit.
    pub fn from_values(level: u64, values: Vec<(Cusp, CycNumber)>) -> Result<Self> {
        let reps = enumerate_cusps(level);
        let mut slots: Vec<Option<CycNumber>> = vec![None; reps.len()];
        for (cusp, value) in values {
            let idx =
                reps.iter().position(|r| cusp_equivalent(level, r, &cusp)).expect("the representatives are exhaustive");
            if slots[idx].replace(value).is_some() {
                return Err(Error::InvalidInput(format!("cusp {cusp} given twice for level {level}")));
            }
        }
        let entries = reps
            .into_iter()
            .zip(slots)
            .map(|(r, v)| v.map(|v| (r, v)).ok_or_else(|| Error::InvalidInput(format!("no value for cusp {r}"))))
            .collect::<Result<_>>()?;
        Ok(CuspValueTable { level, entries })
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn entries(&self) -> &[(Cusp, CycNumber)] {
        &self.entries
    }

    /// Value at the class of `cusp`.
    pub fn get(&self, cusp: &Cusp) -> Option<&CycNumber> {
        self.entries.iter().find(|(r, _)| cusp_equivalent(self.level, r, cusp)).map(|(_, v)| v)
    }

    pub fn to_json(&self) -> Value {
        let values: Vec<Value> =
            self.entries.iter().map(|(c, v)| json!({"cusp": c.to_json(), "value": v.to_json()})).collect();
        json!({"level": self.level, "values": values})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let level = v
            .get("level")
            .and_then(Value::as_u64)
            .filter(|&n| n >= 1)
            .ok_or_else(|| Error::InvalidInput("cusp table needs a positive \"level\"".into()))?;
        let values = v
            .get("values")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::InvalidInput("cusp table needs a \"values\" array".into()))?
            .iter()
            .map(|e| {
                let cusp = Cusp::from_json(e.get("cusp").unwrap_or(&Value::Null))?;
                let value = CycNumber::from_json(e.get("value").unwrap_or(&Value::Null))?;
                Ok((cusp, value))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_values(level, values)
    }
}

impl fmt::Display for CuspValueTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (c, v)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}: {v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational;

    fn cusps(list: &[(i64, i64)]) -> Vec<Cusp> {
        list.iter().map(|&(h, k)| Cusp::new(h, k).unwrap()).collect()
    }

    #[test]
    fn counts_and_dimensions() {
        assert_eq!(cusp_count(1), 1);
        assert_eq!(cusp_count(16), 6);
        assert_eq!(cusp_count(36), 12);
        assert_eq!(eisenstein_dim(36), 11);
        assert_eq!(eisenstein_dim(144), 23);
        assert_eq!(eisenstein_dim(64), 11);
    }

    #[test]
    fn prime_power_closed_form() {
        for p in [2u64, 3, 5, 7] {
            for k in 1..=7u32 {
                assert_eq!(prime_power_dimension(p, k), Some(eisenstein_dim(p.pow(k))), "p={p} k={k}");
            }
        }
        assert_eq!(prime_power_dimension(4, 2), None);
    }

    #[test]
    fn representatives_for_small_levels() {
        assert_eq!(enumerate_cusps(1), vec![Cusp::infinity()]);
        assert_eq!(enumerate_cusps(16), cusps(&[(0, 1), (1, 2), (1, 4), (3, 4), (1, 8), (1, 0)]));
        let printed =
            cusps(&[(0, 1), (1, 18), (1, 12), (1, 9), (1, 6), (1, 4), (1, 3), (5, 12), (1, 2), (2, 3), (5, 6), (1, 0)]);
        let mine = enumerate_cusps(36);
        assert_eq!(mine.len(), 12);
        for c in &printed {
            assert_eq!(mine.iter().filter(|r| cusp_equivalent(36, r, c)).count(), 1, "{c}");
        }
    }

    #[test]
    fn equivalence_examples() {
        let quarter = Cusp::new(1, 4).unwrap();
        assert!(cusp_equivalent(16, &quarter, &quarter));
        assert!(!cusp_equivalent(16, &quarter, &Cusp::new(3, 4).unwrap()));
        assert!(cusp_equivalent(36, &Cusp::new(1, 36).unwrap(), &Cusp::infinity()));
        assert!(cusp_equivalent(36, &Cusp::new(-1, 2).unwrap(), &Cusp::new(1, 2).unwrap()));
    }

    /// Orbits of Gamma_0(N) on cusps, computed independently as orbits of
    /// translation on bottom rows `(c : d)` modulo N.
    fn orbit_classes(n: u64) -> Vec<Vec<Cusp>> {
        let n_i = n as i64;
        let units: Vec<i64> = (0..n_i).filter(|&u| gcd(u as i128, n_i as i128) == 1).collect();
        let key = |c: i64, d: i64| (c.rem_euclid(n_i), d.rem_euclid(n_i));
        let mut seen = std::collections::HashSet::new();
        let mut classes = Vec::new();
        for c0 in 0..n_i {
            for d0 in 0..n_i {
                if gcd(gcd(c0 as i128, d0 as i128), n_i as i128) != 1 || seen.contains(&key(c0, d0)) {
                    continue;
                }
                let mut stack = vec![key(c0, d0)];
                let mut members = Vec::new();
                while let Some((c, d)) = stack.pop() {
                    if !seen.insert((c, d)) {
                        continue;
                    }
                    members.push((c, d));
                    stack.push(key(c, c + d));
                    for &u in &units {
                        stack.push(key(u * c, u * d));
                    }
                }
                let class = members
                    .into_iter()
                    .map(|(c, d)| {
                        let c = if c == 0 { n_i } else { c };
                        let d = (0..).map(|t| d + t * n_i).find(|&d| gcd(c as i128, d as i128) == 1).unwrap();
                        let a = crate::arith::mod_inverse(d, c as u64).unwrap() as i64;
                        Cusp::new(a, c).unwrap()
                    })
                    .collect();
                classes.push(class);
            }
        }
        classes
    }

    #[test]
    fn equivalence_matches_orbit_search() {
        for n in [1u64, 4, 9, 12, 16, 20, 36] {
            let classes = orbit_classes(n);
            assert_eq!(classes.len() as u64, cusp_count(n), "N={n}");
            for (i, a) in classes.iter().enumerate() {
                for (j, b) in classes.iter().enumerate() {
                    for x in a.iter().take(4) {
                        for y in b.iter().take(4) {
                            assert_eq!(cusp_equivalent(n, x, y), i == j, "N={n} {x} {y}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn every_fraction_lands_in_one_class() {
        for n in [16u64, 36] {
            let reps = enumerate_cusps(n);
            for k in 1..=n as i64 {
                for h in 0..k {
                    if gcd(h as i128, k as i128) != 1 {
                        continue;
                    }
                    let c = Cusp::new(h, k).unwrap();
                    assert_eq!(reps.iter().filter(|r| cusp_equivalent(n, r, &c)).count(), 1);
                }
            }
        }
    }

    #[test]
    fn specializations_agree() {
        let c = Cusp::new(1, 6).unwrap();
        assert_eq!(cusp_value_sv(3, 2, 1, &c).unwrap(), cusp_value_s(3, 2, &c).unwrap());
        assert_eq!(cusp_value_v(&integer(1), &Cusp::zero()).unwrap(), CycNumber::one());
        // E_2|V_d at h/k is gcd(d h, k)^2 / d^2.
        let v = cusp_value_v(&integer(18), &Cusp::new(1, 2).unwrap()).unwrap();
        assert_eq!(v.to_rational(), Some(rational(1, 81)));
    }

    #[test]
    fn sixteenth_level_row() {
        // -1/24 E_2|S_{2,1}|V_4 at the cusps of Gamma_0(16).
        let c = rational(-1, 24);
        let expect = [
            (1, 8, rational(1, 16)),
            (1, 4, rational(-1, 64)),
            (3, 4, rational(-1, 64)),
            (1, 2, rational(-1, 256)),
            (0, 1, rational(-1, 1024)),
            (1, 0, rational(0, 1)),
        ];
        for (h, k, want) in expect {
            let value = cusp_value_sv(2, 1, 4, &Cusp::new(h, k).unwrap()).unwrap().scale(&c);
            assert_eq!(value.to_rational(), Some(want), "{h}/{k}");
        }
    }

    #[test]
    fn sieving_partition() {
        for m in [1u64, 2, 3, 4, 6, 8, 12, 24] {
            for cusp in enumerate_cusps(4 * m * m) {
                let mut sum = CycNumber::zero();
                for r in 0..m as i64 {
                    sum += &cusp_value_s(m, r, &cusp).unwrap();
                }
                assert_eq!(sum, cusp_value_s(1, 0, &cusp).unwrap(), "M={m} at {cusp}");
            }
        }
    }

    #[test]
    fn infinity_formula_equals_constant_term() {
        // With gcd(x, 0) = |x| the finite formula at 1/0 gives the same value
        // as the constant-coefficient convention.
        for (m, r, d) in [(2u64, 0i64, rational(1, 2)), (4, 1, integer(2)), (3, 0, integer(9)), (6, 5, integer(1))] {
            let (u, v) = (d.numer().to_i128().unwrap(), d.denom().to_i128().unwrap());
            let mi = m as i128;
            let mut total = CycNumber::zero();
            let (h, k) = (1i128, 0i128);
            for j in 0..mi {
                let g = gcd(mi * u * h + j * v * k, mi * v * k);
                total += &zeta_power(m, -(j as i64) * r).unwrap().scale(&integer((g * g) as i64));
            }
            let formula = total.scale(&BigRational::new(BigInt::one(), BigInt::from(mi * mi * mi * u * u)));
            assert_eq!(formula, cusp_value_sieved(m, r, &d, &Cusp::infinity()).unwrap());
        }
    }

    #[test]
    fn unsupported_modulus() {
        assert_eq!(cusp_value_s(5, 1, &Cusp::zero()), Err(Error::UnsupportedRoot(5)));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("3/4".parse::<Cusp>().unwrap(), Cusp::new(3, 4).unwrap());
        assert_eq!("oo".parse::<Cusp>().unwrap(), Cusp::infinity());
        assert_eq!("2/-4".parse::<Cusp>().unwrap(), Cusp::new(-1, 2).unwrap());
        assert_eq!(Cusp::new(5, 12).unwrap().to_string(), "5/12");
        assert!("1/x".parse::<Cusp>().is_err());
        assert!(Cusp::new(0, 0).is_err());
    }

    #[test]
    fn table_json_round_trip() {
        let values = enumerate_cusps(16)
            .into_iter()
            .enumerate()
            .map(|(i, c)| (c, CycNumber::from_integer(i as i64) + CycNumber::i()))
            .collect();
        let table = CuspValueTable::from_values(16, values).unwrap();
        assert_eq!(CuspValueTable::from_json(&table.to_json()).unwrap(), table);
        assert_eq!(table.get(&Cusp::new(1, 16).unwrap()), Some(&(CycNumber::from_integer(5) + CycNumber::i())));
    }
}
