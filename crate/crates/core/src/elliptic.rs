//! Point counts of Weierstrass curves over finite fields, the trace-of-
//! Frobenius recursions, and the identities tying representation numbers of
//! congruent forms to those counts.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::arith::{factorize, is_prime, primes_up_to};
use crate::error::{Error, Result};
use crate::qseries::sigma1;
use crate::quadform::{representation_count, CongruentForm};

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6` over Q.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Curve {
    pub a1: i64,
    pub a2: i64,
    pub a3: i64,
    pub a4: i64,
    pub a6: i64,
}

impl Curve {
    pub const fn new(a1: i64, a2: i64, a3: i64, a4: i64, a6: i64) -> Self {
        Curve { a1, a2, a3, a4, a6 }
    }

    /// `y^2 = x^3 + 1`.
    pub const fn x3_plus_1() -> Self {
        Curve::new(0, 0, 0, 0, 1)
    }

    pub fn discriminant(&self) -> BigInt {
        let [a1, a2, a3, a4, a6] = [self.a1, self.a2, self.a3, self.a4, self.a6].map(BigInt::from);
        let b2 = &a1 * &a1 + 4 * &a2;
        let b4 = 2 * &a4 + &a1 * &a3;
        let b6 = &a3 * &a3 + 4 * &a6;
        let b8 = &a1 * &a1 * &a6 + 4 * &a2 * &a6 - &a1 * &a3 * &a4 + &a2 * &a3 * &a3 - &a4 * &a4;
        let b2b2b8: BigInt = &b2 * &b2 * &b8;
        let delta: BigInt = -b2b2b8 - 8 * &b4 * &b4 * &b4 - 27 * &b6 * &b6 + 9 * &b2 * &b4 * &b6;
        delta
    }

    pub fn has_good_reduction(&self, p: u64) -> bool {
        !(self.discriminant() % BigInt::from(p)).is_zero()
    }

    pub fn coefficients(&self) -> [i64; 5] {
        [self.a1, self.a2, self.a3, self.a4, self.a6]
    }
}

impl std::str::FromStr for Curve {
    type Err = Error;

    /// Parses `a1,a2,a3,a4,a6`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<i64> = s
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| Error::InvalidInput(format!("bad curve coefficient '{t}'"))))
            .collect::<Result<_>>()?;
        match parts.as_slice() {
            &[a1, a2, a3, a4, a6] => Ok(Curve::new(a1, a2, a3, a4, a6)),
            _ => Err(Error::InvalidInput("a curve needs five coefficients a1,a2,a3,a4,a6".into())),
        }
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn term(out: &mut String, c: i64, mono: &str) {
            if c == 0 {
                return;
            }
            let sign = if c < 0 { " - " } else { " + " };
            let mag = c.unsigned_abs();
            out.push_str(sign);
            if mag != 1 || mono.is_empty() {
                out.push_str(&mag.to_string());
            }
            out.push_str(mono);
        }
        let mut lhs = "y^2".to_string();
        term(&mut lhs, self.a1, "xy");
        term(&mut lhs, self.a3, "y");
        let mut rhs = "x^3".to_string();
        term(&mut rhs, self.a2, "x^2");
        term(&mut rhs, self.a4, "x");
        term(&mut rhs, self.a6, "");
        write!(f, "{lhs} = {rhs}")
    }
}

/// A curve together with a prime of good reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CurveModP {
    curve: Curve,
    p: u64,
}

impl CurveModP {
    pub fn new(curve: Curve, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        if p > u32::MAX as u64 {
            return Err(Error::InvalidInput(format!("p = {p} is too large for exhaustive counting")));
        }
        if !curve.has_good_reduction(p) {
            return Err(Error::BadReduction(p));
        }
        Ok(CurveModP { curve, p })
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    fn reduced(&self) -> [u64; 5] {
        self.curve.coefficients().map(|c| c.rem_euclid(self.p as i64) as u64)
    }
}

/// `chi[v]` is the Legendre symbol of `v` mod an odd prime `p`.
fn character_table(p: u64) -> Vec<i8> {
    let mut chi = vec![-1i8; p as usize];
    chi[0] = 0;
    for y in 1..=p / 2 {
        chi[(y * y % p) as usize] = 1;
    }
    chi
}

/// `N_p(1)`: affine points plus the point at infinity.
pub fn count_points_fp(curve: &CurveModP) -> u64 {
    let p = curve.p;
    let [a1, a2, a3, a4, a6] = curve.reduced();
    if p == 2 {
        let mut n = 1;
        for x in 0..2u64 {
            for y in 0..2u64 {
                let lhs = y * y + a1 * x * y + a3 * y;
                let rhs = x * x * x + a2 * x * x + a4 * x + a6;
                if lhs % 2 == rhs % 2 {
                    n += 1;
                }
            }
        }
        return n;
    }
    // (2y + a1 x + a3)^2 = 4(x^3 + a2 x^2 + a4 x + a6) + (a1 x + a3)^2
    let chi = character_table(p);
    let mut affine: i64 = 0;
    for x in 0..p {
        let f = ((x * x % p + a2 * x % p) % p * x % p + a4 * x % p + a6) % p;
        let l = (a1 * x + a3) % p;
        let d = (4 * f + l * l) % p;
        affine += 1 + chi[d as usize] as i64;
    }
    affine as u64 + 1
}

/// Trace of Frobenius and its powers, through integer recursions only.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrobeniusData {
    pub p: u64,
    pub a_p: i64,
}

impl FrobeniusData {
    pub fn new(p: u64, a_p: i64) -> Self {
        FrobeniusData { p, a_p }
    }

    pub fn from_curve(curve: &CurveModP) -> Self {
        let n = count_points_fp(curve) as i64;
        FrobeniusData { p: curve.p, a_p: curve.p as i64 + 1 - n }
    }

    fn recurrence(&self, k: u32, seed0: BigInt) -> BigInt {
        let (ap, p) = (BigInt::from(self.a_p), BigInt::from(self.p));
        let (mut prev, mut cur) = (seed0, ap.clone());
        if k == 0 {
            return prev;
        }
        for _ in 1..k {
            let next = &ap * &cur - &p * &prev;
            prev = std::mem::replace(&mut cur, next);
        }
        cur
    }

    /// `alpha^k + beta^k`, with `a_0 = 2`, `a_1 = a_p`.
    pub fn trace_power(&self, k: u32) -> BigInt {
        self.recurrence(k, BigInt::from(2))
    }

    /// `N_p(k) = p^k + 1 - (alpha^k + beta^k)`.
    pub fn point_count_pk(&self, k: u32) -> BigInt {
        BigInt::from(self.p).pow(k) + 1 - self.trace_power(k)
    }

    /// The Hecke recursion `a_{p^k} = a_p a_{p^(k-1)} - p a_{p^(k-2)}`,
    /// `a_1 = 1`.
    pub fn a_prime_power(&self, k: u32) -> BigInt {
        self.recurrence(k, BigInt::one())
    }

    pub fn satisfies_hasse(&self) -> bool {
        (self.a_p as i128).pow(2) <= 4 * self.p as i128
    }
}

/// Smallest quadratic non-residue mod an odd prime.
pub fn least_nonresidue(p: u64) -> u64 {
    let chi = character_table(p);
    (2..p).find(|&v| chi[v as usize] == -1).expect("an odd prime has non-residues")
}

/// `N_p(2)` by counting over `F_p[t]/(t^2 - r)` with `r` the least
/// non-residue. A nonzero `D` is a square in `F_{p^2}` iff its norm
/// `D^(p+1)` is a square in `F_p`.
pub fn count_points_fp2(curve: &CurveModP) -> Result<u64> {
    let p = curve.p;
    if p == 2 {
        return Err(Error::Unsupported("F_4 counting needs an odd prime".into()));
    }
    let [a1, a2, a3, a4, a6] = curve.reduced();
    let r = least_nonresidue(p);
    let chi = character_table(p);
    let mul = |(a, b): (u64, u64), (c, d): (u64, u64)| ((a * c + r * (b * d % p)) % p, (a * d + b * c) % p);
    let add = |(a, b): (u64, u64), (c, d): (u64, u64)| ((a + c) % p, (b + d) % p);
    let cst = |c: u64| (c, 0u64);
    let affine: i64 = (0..p)
        .into_par_iter()
        .map(|u| {
            let mut s = 0i64;
            for v in 0..p {
                let x = (u, v);
                let x2 = mul(x, x);
                let f = add(add(add(mul(x2, x), mul(cst(a2), x2)), mul(cst(a4), x)), cst(a6));
                let l = add(mul(cst(a1), x), cst(a3));
                let d = add(mul(cst(4), f), mul(l, l));
                let norm = (d.0 * d.0 % p + p - r * (d.1 * d.1 % p) % p) % p;
                s += 1 + chi[norm as usize] as i64;
            }
            s
        })
        .sum();
    Ok(affine as u64 + 1)
}

/// `F_p[x]/(m)` for a monic irreducible `m` of degree `k`.
struct ExtensionField {
    p: u64,
    /// Low coefficients of the modulus; the leading 1 is implicit.
    modulus: Vec<u64>,
}

impl ExtensionField {
    fn k(&self) -> usize {
        self.modulus.len()
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let (p, k) = (self.p, self.k());
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        for deg in (k..prod.len()).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            // x^k = -sum m_i x^i
            for (i, &m) in self.modulus.iter().enumerate() {
                let idx = deg - k + i;
                prod[idx] = (prod[idx] + (p - m) * c) % p;
            }
        }
        prod.truncate(k);
        prod
    }

    fn pow(&self, a: &[u64], mut e: u128) -> Vec<u64> {
        let mut result = vec![0u64; self.k()];
        result[0] = 1;
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        result
    }
}

fn poly_trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u64, p: u64) -> u64 {
    crate::arith::mod_inverse(a as i64, p).expect("nonzero residue mod a prime")
}

/// Remainder of `a` by `b` over F_p (`b` nonzero, trimmed).
fn poly_rem(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    let lead_inv = inv_mod(*b.last().expect("nonzero divisor"), p);
    while a.len() >= b.len() {
        let c = a.last().copied().unwrap_or(0) * lead_inv % p;
        let shift = a.len() - b.len();
        for (i, &bi) in b.iter().enumerate() {
            a[shift + i] = (a[shift + i] + (p - bi) * c % p) % p;
        }
        a = poly_trim(a);
    }
    a
}

fn poly_gcd_is_one(a: Vec<u64>, b: Vec<u64>, p: u64) -> bool {
    let (mut a, mut b) = (poly_trim(a), poly_trim(b));
    while !b.is_empty() {
        let r = poly_rem(a, &b, p);
        a = b;
        b = r;
    }
    a.len() == 1
}

/// The lexicographically first monic irreducible polynomial of degree `k`
/// over F_p (`k >= 2`), by the test `gcd(m, x^(p^i) - x) = 1` for `i <= k/2`.
fn irreducible_modulus(p: u64, k: usize) -> Vec<u64> {
    let total = p.pow(k as u32);
    for index in 0..total {
        let mut low = Vec::with_capacity(k);
        let mut t = index;
        for _ in 0..k {
            low.push(t % p);
            t /= p;
        }
        if low[0] == 0 {
            continue;
        }
        let field = ExtensionField { p, modulus: low.clone() };
        let mut full = low.clone();
        full.push(1);
        let mut xp = vec![0u64; k];
        xp[1] = 1;
        let irreducible = (1..=k / 2).all(|_| {
            xp = field.pow(&xp, p as u128);
            let mut diff = xp.clone();
            diff[1] = (diff[1] + p - 1) % p;
            poly_gcd_is_one(full.clone(), diff, p)
        });
        if irreducible {
            return low;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// `N_p(k)` by exhaustive counting over `F_{p^k}`. Cost grows like `p^k`.
pub fn count_points_fpk(curve: &CurveModP, k: u32) -> Result<BigInt> {
    let p = curve.p;
    if k == 0 {
        return Err(Error::InvalidInput("extension degree must be positive".into()));
    }
    if k == 1 {
        return Ok(BigInt::from(count_points_fp(curve)));
    }
    if p == 2 {
        return Err(Error::Unsupported("extension counting needs an odd prime".into()));
    }
    let size = (p as u128)
        .checked_pow(k)
        .filter(|&s| s <= 50_000_000)
        .ok_or_else(|| Error::InvalidInput(format!("F_{{{p}^{k}}} is too large for exhaustive counting")))?;
    let k = k as usize;
    let field = ExtensionField { p, modulus: irreducible_modulus(p, k) };
    let [a1, a2, a3, a4, a6] = curve.reduced();
    let chi = character_table(p);
    let norm_exp = (size - 1) / (p as u128 - 1);
    let scalar = |c: u64| {
        let mut v = vec![0u64; k];
        v[0] = c;
        v
    };
    let add = |a: &[u64], b: &[u64]| a.iter().zip(b).map(|(x, y)| (x + y) % p).collect::<Vec<_>>();
    let affine: i64 = (0..size as u64)
        .into_par_iter()
        .map(|index| {
            let mut x = Vec::with_capacity(k);
            let mut t = index;
            for _ in 0..k {
                x.push(t % p);
                t /= p;
            }
            let x2 = field.mul(&x, &x);
            let f = add(
                &add(&add(&field.mul(&x2, &x), &field.mul(&scalar(a2), &x2)), &field.mul(&scalar(a4), &x)),
                &scalar(a6),
            );
            let l = add(&field.mul(&scalar(a1), &x), &scalar(a3));
            let d = add(&field.mul(&scalar(4), &f), &field.mul(&l, &l));
            if d.iter().all(|&c| c == 0) {
                return 1;
            }
            let norm = field.pow(&d, norm_exp);
            1 + chi[norm[0] as usize] as i64
        })
        .sum();
    Ok(BigInt::from(affine) + 1)
}

/// One instance of an identity: `lhs` should equal `rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub case: String,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

impl Check {
    pub fn new(case: impl Into<String>, lhs: impl Into<BigInt>, rhs: impl Into<BigInt>) -> Self {
        Check { case: case.into(), lhs: lhs.into(), rhs: rhs.into() }
    }

    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn to_json(&self) -> Value {
        json!({"case": self.case, "lhs": self.lhs.to_string(), "rhs": self.rhs.to_string(), "pass": self.holds()})
    }
}

fn r13_form() -> CongruentForm {
    CongruentForm::sum_of_four_squares(1, 3).expect("valid form")
}

fn r13(n: u64) -> BigInt {
    BigInt::from(representation_count(&r13_form(), n))
}

fn headline_frobenius(p: u64) -> Result<FrobeniusData> {
    Ok(FrobeniusData::from_curve(&CurveModP::new(Curve::x3_plus_1(), p)?))
}

/// `3 r_{1,3}(p) = N_p(1)` on `y^2 = x^3 + 1`, both sides counted directly.
pub fn verify_r13_prime(p: u64) -> Result<Check> {
    if !is_prime(p) || p % 6 != 1 {
        return Err(Error::InvalidInput(format!("{p} is not a prime = 1 mod 6")));
    }
    let n = count_points_fp(&CurveModP::new(Curve::x3_plus_1(), p)?);
    Ok(Check::new(format!("3 r(p) = N_p(1), p = {p}"), 3 * r13(p), n))
}

/// The three-term relation `3 r(p^k) = N_p(k) + 3p r(p^(k-2))` and its
/// expanded sum `3 r(p^k) = sum_j p^j N_p(k - 2j)` for `k = 1..=k_max`,
/// with `N_p(k)` from the Frobenius recursion. Only even `k` are checked
/// when `p = 5 mod 6`. At `k = 2` the recursion value of `N_p(2)` is also
/// compared with a count over `F_{p^2}`.
pub fn verify_r13_prime_power(p: u64, k_max: u32) -> Result<Vec<Check>> {
    if !is_prime(p) || p <= 3 {
        return Err(Error::InvalidInput(format!("{p} is not a prime > 3")));
    }
    let curve = CurveModP::new(Curve::x3_plus_1(), p)?;
    let frob = FrobeniusData::from_curve(&curve);
    let pb = BigInt::from(p);
    let r_at = |k: u32| -> BigInt { r13(p.pow(k)) };
    let mut checks = Vec::new();
    for k in 1..=k_max {
        if p % 6 == 5 && k % 2 == 1 {
            continue;
        }
        let lhs: BigInt = 3 * r_at(k);
        let lower = if k >= 3 { 3 * &pb * r_at(k - 2) } else { BigInt::zero() };
        checks.push(Check::new(
            format!("3 r(p^k) = N_p(k) + 3p r(p^(k-2)), p = {p}, k = {k}"),
            lhs.clone(),
            frob.point_count_pk(k) + lower,
        ));
        let expanded: BigInt = (0..=(k - 1) / 2).map(|j| pb.pow(j) * frob.point_count_pk(k - 2 * j)).sum();
        checks.push(Check::new(format!("3 r(p^k) = sum_j p^j N_p(k - 2j), p = {p}, k = {k}"), lhs, expanded));
        if k == 2 {
            checks.push(Check::new(
                format!("N_p(2) over F_(p^2), p = {p}"),
                count_points_fp2(&curve)?,
                frob.point_count_pk(2),
            ));
        }
    }
    Ok(checks)
}

/// `r(n) = sum_i (prod_{j>i} sigma_1(p_j^e_j)) (prod_{j<i} a_{p_j^e_j}) r(p_i^e_i)`
/// over the prime factorization of `n = 1 mod 6`, primes in increasing
/// order, with exponents even at primes `5 mod 6`.
pub fn verify_r13_general(n: u64) -> Result<Check> {
    if n % 6 != 1 {
        return Err(Error::InvalidInput(format!("{n} is not 1 mod 6")));
    }
    let factors = factorize(n);
    if let Some((p, e)) = factors.iter().find(|(p, e)| p % 6 == 5 && e % 2 == 1) {
        return Err(Error::InvalidInput(format!("{p}^{e} divides {n} with an odd exponent at a prime 5 mod 6")));
    }
    let mut parts = Vec::with_capacity(factors.len());
    for &(p, e) in &factors {
        let q = p.pow(e);
        parts.push((BigInt::from(sigma1(q as i64)?), headline_frobenius(p)?.a_prime_power(e), r13(q)));
    }
    let mut rhs = BigInt::zero();
    for i in 0..parts.len() {
        let after: BigInt = parts[i + 1..].iter().map(|t| t.0.clone()).product();
        let before: BigInt = parts[..i].iter().map(|t| t.1.clone()).product();
        rhs += after * before * &parts[i].2;
    }
    Ok(Check::new(format!("r({n}) by prime-power decomposition"), r13(n), rhs))
}

/// Which primes a table relation is claimed for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeCondition {
    pub modulus: u64,
    pub residues: &'static [u64],
    /// `(residue, modulus)` classes removed from the allowed set.
    pub excluded: &'static [(u64, u64)],
}

impl PrimeCondition {
    pub fn admits(&self, p: u64) -> bool {
        self.residues.contains(&(p % self.modulus)) && !self.excluded.iter().any(|&(r, m)| p % m == r)
    }
}

/// `r_coeff r(p) = p_coeff p + constant + n_coeff N_p(1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Relation {
    pub r_coeff: i64,
    pub p_coeff: i64,
    pub constant: i64,
    pub n_coeff: i64,
}

impl Relation {
    fn sides(&self, p: u64, r: u64, n: u64) -> (BigInt, BigInt) {
        let lhs = BigInt::from(self.r_coeff) * r;
        let rhs = BigInt::from(self.p_coeff) * p + self.constant + BigInt::from(self.n_coeff) * n;
        (lhs, rhs)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeff = |c: i64| if c == 1 { String::new() } else { c.to_string() };
        write!(f, "{}r(p) =", coeff(self.r_coeff))?;
        let mut first = true;
        for (c, mono) in [(self.p_coeff, "p"), (self.constant, ""), (self.n_coeff, "N_p(1)")] {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs() as i64;
            let body = if mono.is_empty() { mag.to_string() } else { format!("{}{mono}", coeff(mag)) };
            match (first, c < 0) {
                (true, false) => write!(f, " {body}")?,
                (true, true) => write!(f, " -{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// One row of the form/curve relation tables.
#[derive(Debug, Clone)]
pub struct TableRow {
    pub id: &'static str,
    pub form: CongruentForm,
    pub curve: Curve,
    pub relation: Relation,
    pub primes: PrimeCondition,
}

fn form(gram: [[i64; 4]; 4], residues: [i64; 4], m: u64) -> CongruentForm {
    CongruentForm::new(gram, residues, [m; 4]).expect("table forms are positive definite")
}

const DIAG_1122: [[i64; 4]; 4] = [[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 4, 0], [0, 0, 0, 4]];
const HEX: [[i64; 4]; 4] = [[2, 1, 0, 0], [1, 2, 0, 0], [0, 0, 2, 1], [0, 0, 1, 2]];
const HEX_2: [[i64; 4]; 4] = [[2, 1, 0, 0], [1, 4, 0, 0], [0, 0, 2, 1], [0, 0, 1, 4]];
const SQUARES: [[i64; 4]; 4] = [[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2]];

/// The seven rows: three `*-linear` rows (`r(p)` a multiple of `N_p(1)`) and four `*-affine`
/// rows (affine in `p` and `N_p(1)`).
pub fn table_rows() -> Vec<TableRow> {
    let rel = |r_coeff, p_coeff, constant, n_coeff| Relation { r_coeff, p_coeff, constant, n_coeff };
    let cond = |modulus, residues, excluded| PrimeCondition { modulus, residues, excluded };
    let y2_x3_4x = Curve::new(0, 0, 0, 4, 0);
    let y2_y_x3 = Curve::new(0, 0, 1, 0, 0);
    let y2_xy_y = Curve::new(1, 0, 1, -1, 0);
    vec![
        TableRow {
            id: "cm4-linear",
            form: form(DIAG_1122, [1, 0, 1, 1], 2),
            curve: y2_x3_4x,
            relation: rel(1, 0, 0, 1),
            primes: cond(4, &[1], &[]),
        },
        TableRow {
            id: "cm3-linear",
            form: form(HEX, [1, 1, 1, 0], 3),
            curve: y2_y_x3,
            relation: rel(1, 0, 0, 1),
            primes: cond(3, &[1], &[]),
        },
        TableRow {
            id: "c14-linear",
            form: form(HEX_2, [1, 0, 0, 1], 2),
            curve: y2_xy_y,
            relation: rel(1, 0, 0, 2),
            primes: cond(2, &[1], &[(7, 14)]),
        },
        TableRow {
            id: "squares-affine",
            form: form(SQUARES, [1, 0, 0, 0], 3),
            curve: Curve::x3_plus_1(),
            relation: rel(3, 3, 3, -2),
            primes: cond(12, &[1, 7], &[]),
        },
        TableRow {
            id: "cm4-affine",
            form: form(DIAG_1122, [1, 0, 0, 0], 2),
            curve: y2_x3_4x,
            relation: rel(1, 2, 2, -1),
            primes: cond(4, &[1], &[]),
        },
        TableRow {
            id: "cm3-affine",
            form: form(HEX, [1, 0, 0, 0], 3),
            curve: y2_y_x3,
            relation: rel(3, 3, 3, -2),
            primes: cond(3, &[1], &[]),
        },
        TableRow {
            id: "c14-affine",
            form: form(HEX_2, [1, 0, 0, 0], 2),
            curve: y2_xy_y,
            relation: rel(3, 6, 6, -4),
            primes: cond(2, &[1], &[]),
        },
    ]
}

/// Outcome of a table row over the qualifying primes below a bound.
#[derive(Debug, Clone)]
pub struct TableReport {
    pub row: &'static str,
    pub relation: String,
    pub checks: Vec<Check>,
    /// `(p, r(p), N_p(1))` for each checked prime.
    pub data: Vec<(u64, u64, u64)>,
    /// Qualifying primes skipped for bad reduction.
    pub skipped: Vec<u64>,
}

impl TableReport {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(Check::holds)
    }

    /// `r(p) / N_p(1)` when it is the same for every checked prime.
    pub fn constant_ratio(&self) -> Option<BigRational> {
        let mut ratios = self.data.iter().filter(|d| d.2 != 0).map(|&(_, r, n)| BigRational::new(r.into(), n.into()));
        let first = ratios.next()?;
        ratios.all(|q| q == first).then_some(first)
    }
}

pub fn verify_table_relation(row: &TableRow, bound: u64) -> TableReport {
    let primes: Vec<u64> = primes_up_to(bound).into_iter().filter(|&p| row.primes.admits(p)).collect();
    let (good, skipped): (Vec<u64>, Vec<u64>) = primes.into_iter().partition(|&p| row.curve.has_good_reduction(p));
    let data: Vec<(u64, u64, u64)> = good
        .par_iter()
        .map(|&p| {
            let curve = CurveModP::new(row.curve, p).expect("good reduction checked");
            (p, representation_count(&row.form, p), count_points_fp(&curve))
        })
        .collect();
    let checks = data
        .iter()
        .map(|&(p, r, n)| {
            let (lhs, rhs) = row.relation.sides(p, r, n);
            Check::new(format!("{} p = {p}", row.id), lhs, rhs)
        })
        .collect();
    TableReport { row: row.id, relation: row.relation.to_string(), checks, data, skipped }
}
