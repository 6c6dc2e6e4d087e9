//! Congruent quaternary quadratic forms `Q(x) = x^t A x / 2` with
//! coordinate congruences `x_i = a_i (mod S_i)`, their representation
//! numbers and theta series, and the divisor-sum formulas for the
//! sum-of-four-squares family.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::qseries::{eta_product, FourierSeries, SigmaCache};

/// A positive-definite even Gram matrix with one congruence per coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruentForm {
    gram: [[i64; 4]; 4],
    residues: [i64; 4],
    moduli: [u64; 4],
}

/// `count` solutions of `Q(x) = n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RepCount {
    pub n: u64,
    pub count: u64,
}

fn det(m: &[Vec<BigRational>]) -> BigRational {
    let mut a = m.to_vec();
    let n = a.len();
    let mut d = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        let pivot = a[c][c].clone();
        d *= &pivot;
        for r in c + 1..n {
            let f = &a[r][c] / &pivot;
            if f.is_zero() {
                continue;
            }
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    d
}

fn leading_minors_positive(m: &[Vec<BigRational>]) -> bool {
    (1..=m.len()).all(|k| {
        let sub: Vec<Vec<BigRational>> = m[..k].iter().map(|row| row[..k].to_vec()).collect();
        det(&sub).is_positive()
    })
}

fn rational_matrix(gram: &[[i64; 4]; 4]) -> Vec<Vec<BigRational>> {
    gram.iter().map(|row| row.iter().map(|&v| BigRational::from_integer(v.into())).collect()).collect()
}

fn floor_div(a: i128, b: i128) -> i128 {
    a.div_euclid(b)
}

fn ceil_div(a: i128, b: i128) -> i128 {
    -(-a).div_euclid(b)
}

/// Smallest value `>= lo` congruent to `a` mod `s`.
fn first_in_class(lo: i128, a: i128, s: i128) -> i128 {
    lo + (a - lo).rem_euclid(s)
}

impl CongruentForm {
    pub fn new(gram: [[i64; 4]; 4], residues: [i64; 4], moduli: [u64; 4]) -> Result<Self> {
        for i in 0..4 {
            for j in 0..4 {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidInput(format!("Gram matrix is not symmetric at ({}, {})", i + 1, j + 1)));
                }
            }
            if gram[i][i] % 2 != 0 {
                return Err(Error::InvalidInput(format!("Gram diagonal entry {} is odd", i + 1)));
            }
            if moduli[i] == 0 {
                return Err(Error::InvalidInput("moduli must be positive".into()));
            }
        }
        if !leading_minors_positive(&rational_matrix(&gram)) {
            return Err(Error::InvalidInput("Gram matrix is not positive definite".into()));
        }
        let residues = std::array::from_fn(|i| residues[i].rem_euclid(moduli[i] as i64));
        Ok(CongruentForm { gram, residues, moduli })
    }

    /// `x1^2 + x2^2 + x3^2 + x4^2` with every `x_i = s (mod m)`.
    pub fn sum_of_four_squares(s: i64, m: u64) -> Result<Self> {
        let mut gram = [[0i64; 4]; 4];
        for (i, row) in gram.iter_mut().enumerate() {
            row[i] = 2;
        }
        Self::new(gram, [s; 4], [m; 4])
    }

    pub fn gram(&self) -> &[[i64; 4]; 4] {
        &self.gram
    }

    pub fn residues(&self) -> &[i64; 4] {
        &self.residues
    }

    pub fn moduli(&self) -> &[u64; 4] {
        &self.moduli
    }

    pub fn value(&self, x: &[i64; 4]) -> i64 {
        let mut twice = 0i128;
        for i in 0..4 {
            for j in 0..4 {
                twice += self.gram[i][j] as i128 * x[i] as i128 * x[j] as i128;
            }
        }
        (twice / 2) as i64
    }

    pub fn admits(&self, x: &[i64; 4]) -> bool {
        (0..4).all(|i| x[i].rem_euclid(self.moduli[i] as i64) == self.residues[i])
    }

    /// The largest `|x_i|` on the ellipsoid `Q(x) <= n`, per coordinate:
    /// `x_i^2 <= 2 n (A^-1)_ii = 2 n C_ii / det A` with `C_ii` the cofactor.
    pub fn coordinate_bounds(&self, n: u64) -> [i64; 4] {
        let m = rational_matrix(&self.gram);
        let d = det(&m);
        std::array::from_fn(|i| {
            let minor: Vec<Vec<BigRational>> = (0..4)
                .filter(|&r| r != i)
                .map(|r| (0..4).filter(|&c| c != i).map(|c| m[r][c].clone()).collect())
                .collect();
            let limit = (det(&minor) * BigRational::from_integer((2 * n).into()) / &d).floor().to_integer();
            limit.sqrt().to_i64().expect("coordinate bound fits in i64")
        })
    }

    /// Ranges of `x1, x2, x3` (as start, step, end inclusive) for `Q <= n`.
    fn outer_ranges(&self, n: u64) -> [(i128, i128, i128); 3] {
        let b = self.coordinate_bounds(n);
        std::array::from_fn(|i| {
            let s = self.moduli[i] as i128;
            (first_in_class(-(b[i] as i128), self.residues[i] as i128, s), s, b[i] as i128)
        })
    }

    /// Calls `visit(x1, x2, x3, L, R)` for every admissible prefix, where
    /// `2 Q(x) = A44 x4^2 + 2 L x4 + R`.
    fn for_each_prefix<F: FnMut(i128, i128)>(&self, n: u64, x1: i128, mut visit: F) {
        let a = &self.gram;
        let [_, (s2, d2, e2), (s3, d3, e3)] = self.outer_ranges(n);
        let g = |i: usize, j: usize| a[i][j] as i128;
        let mut x2 = s2;
        while x2 <= e2 {
            let r12 = g(0, 0) * x1 * x1 + 2 * g(0, 1) * x1 * x2 + g(1, 1) * x2 * x2;
            let mut x3 = s3;
            while x3 <= e3 {
                let r = r12 + 2 * (g(0, 2) * x1 + g(1, 2) * x2) * x3 + g(2, 2) * x3 * x3;
                let l = g(0, 3) * x1 + g(1, 3) * x2 + g(2, 3) * x3;
                visit(l, r);
                x3 += d3;
            }
            x2 += d2;
        }
    }

    fn x1_values(&self, n: u64) -> Vec<i128> {
        let (s, d, e) = self.outer_ranges(n)[0];
        let mut v = Vec::new();
        let mut x = s;
        while x <= e {
            v.push(x);
            x += d;
        }
        v
    }

    pub fn to_json(&self) -> Value {
        json!({"gram": self.gram, "residues": self.residues, "moduli": self.moduli})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::InvalidInput("form JSON needs gram (4x4), residues (4) and moduli (4)".into());
        let ints = |v: &Value| -> Result<Vec<i64>> {
            v.as_array().ok_or_else(bad)?.iter().map(|x| x.as_i64().ok_or_else(bad)).collect()
        };
        let rows = v.get("gram").and_then(Value::as_array).ok_or_else(bad)?;
        if rows.len() != 4 {
            return Err(bad());
        }
        let mut gram = [[0i64; 4]; 4];
        for (i, row) in rows.iter().enumerate() {
            gram[i] = ints(row)?.try_into().map_err(|_| bad())?;
        }
        let residues: [i64; 4] = ints(v.get("residues").ok_or_else(bad)?)?.try_into().map_err(|_| bad())?;
        let moduli: Vec<i64> = ints(v.get("moduli").ok_or_else(bad)?)?;
        let moduli: [u64; 4] = moduli
            .into_iter()
            .map(|m| u64::try_from(m).map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?
            .try_into()
            .map_err(|_| bad())?;
        Self::new(gram, residues, moduli)
    }
}

impl fmt::Display for CongruentForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for i in 0..4 {
            for j in i..4 {
                let c = if i == j { self.gram[i][i] / 2 } else { self.gram[i][j] };
                if c == 0 {
                    continue;
                }
                let mono = if i == j { format!("x{}^2", i + 1) } else { format!("x{}x{}", i + 1, j + 1) };
                terms.push(if c == 1 { mono } else { format!("{c}{mono}") });
            }
        }
        write!(f, "{}", terms.join(" + "))?;
        let conds: Vec<String> = (0..4)
            .filter(|&i| self.moduli[i] > 1)
            .map(|i| format!("x{} = {} mod {}", i + 1, self.residues[i], self.moduli[i]))
            .collect();
        if !conds.is_empty() {
            write!(f, " with {}", conds.join(", "))?;
        }
        Ok(())
    }
}

/// Number of admissible `x` with `Q(x) = n`.
pub fn representation_count(form: &CongruentForm, n: u64) -> u64 {
    let a44 = form.gram[3][3] as i128;
    let (a4, s4) = (form.residues[3] as i128, form.moduli[3] as i128);
    let target = 2 * n as i128;
    form.x1_values(n)
        .into_par_iter()
        .map(|x1| {
            let mut count = 0u64;
            form.for_each_prefix(n, x1, |l, r| {
                // A44 x^2 + 2 L x + R - 2n = 0
                let disc = l * l - a44 * (r - target);
                if disc < 0 {
                    return;
                }
                let s = disc.sqrt();
                if s * s != disc {
                    return;
                }
                let roots = if s == 0 { vec![-l] } else { vec![-l - s, -l + s] };
                for num in roots {
                    if num % a44 == 0 && (num / a44 - a4).rem_euclid(s4) == 0 {
                        count += 1;
                    }
                }
            });
            count
        })
        .sum()
}

/// `r(0), ..., r(n_max)` from one enumeration of the ellipsoid `Q <= n_max`.
pub fn theta_counts(form: &CongruentForm, n_max: u64) -> Vec<u64> {
    let a44 = form.gram[3][3] as i128;
    let (a4, s4) = (form.residues[3] as i128, form.moduli[3] as i128);
    let bound = 2 * n_max as i128;
    let len = n_max as usize + 1;
    form.x1_values(n_max)
        .into_par_iter()
        .map(|x1| {
            let mut counts = vec![0u64; len];
            form.for_each_prefix(n_max, x1, |l, r| {
                // A44 x^2 + 2 L x + R <= 2 n_max  <=>  |A44 x + L| <= sqrt(disc)
                let disc = l * l - a44 * (r - bound);
                if disc < 0 {
                    return;
                }
                let s = disc.sqrt();
                let lo = first_in_class(ceil_div(-l - s, a44), a4, s4);
                let hi = floor_div(-l + s, a44);
                let mut x4 = lo;
                while x4 <= hi {
                    let twice = a44 * x4 * x4 + 2 * l * x4 + r;
                    counts[(twice / 2) as usize] += 1;
                    x4 += s4;
                }
            });
            counts
        })
        .reduce(
            || vec![0u64; len],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
}

/// `sum r(n) q^n`, exact below `q^trunc`.
pub fn theta_series(form: &CongruentForm, trunc: u64) -> FourierSeries {
    if trunc == 0 {
        return FourierSeries::zero(BigRational::zero());
    }
    let counts: Vec<BigInt> = theta_counts(form, trunc - 1).into_iter().map(BigInt::from).collect();
    FourierSeries::from_integer_coefficients(&counts)
}

/// A rational `L > 0` with `A/2 - L I` positive definite, found by
/// bisection on the Sylvester criterion; `L <= lambda_min(A/2)`.
pub fn min_eigenvalue_lower_bound(gram: &[[i64; 4]; 4], steps: u32) -> BigRational {
    let half: Vec<Vec<BigRational>> =
        rational_matrix(gram).into_iter().map(|row| row.into_iter().map(|v| v / BigInt::from(2)).collect()).collect();
    let shifted_pd = |l: &BigRational| {
        let mut m = half.clone();
        for (i, row) in m.iter_mut().enumerate() {
            row[i] -= l;
        }
        leading_minors_positive(&m)
    };
    let mut lo = BigRational::zero();
    let mut hi = (0..4).map(|i| half[i][i].clone()).min().expect("four diagonal entries");
    for _ in 0..steps {
        let mid = (&lo + &hi) / BigInt::from(2);
        if shifted_pd(&mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Largest `b` with `lambda b^2 <= n`: every coordinate of a solution of
/// `Q(x) <= n` satisfies `|x_i| <= b` when `lambda <= lambda_min`.
pub fn eigenvalue_box_bound(lambda: &BigRational, n: u64) -> u64 {
    let ratio = (BigRational::from_integer(n.into()) / lambda).floor().to_integer();
    ratio.sqrt().to_u64().expect("bound fits in u64")
}

/// The `(s, M)` pairs with a divisor-sum formula for the sum of four squares.
pub const COVERED_CASES: [(u64, u64); 15] = [
    (0, 2),
    (1, 2),
    (0, 4),
    (1, 4),
    (2, 4),
    (3, 4),
    (0, 3),
    (1, 3),
    (2, 3),
    (0, 6),
    (1, 6),
    (2, 6),
    (3, 6),
    (4, 6),
    (5, 6),
];

/// Divisor-sum formulas for `r_{s,M}(n)`, the number of `x` with
/// `x1^2 + x2^2 + x3^2 + x4^2 = n` and every `x_i = s (mod M)`. `a(n)` is the
/// `q^n` coefficient of `eta(6 tau)^4`.
#[derive(Debug, Clone)]
pub struct ClosedForms {
    bound: u64,
    sigma: Arc<SigmaCache>,
    eta: Vec<i64>,
}

impl ClosedForms {
    /// Tables good for `n <= bound`.
    pub fn new(bound: u64) -> Self {
        let series = eta_product(6, 4, bound + 1).expect("positive scale and exponent");
        let eta = (0..=bound as i64)
            .map(|n| {
                let c = series.rational_coeff(n).expect("integral exponent within truncation");
                c.to_integer().to_i64().expect("eta coefficient fits in i64")
            })
            .collect();
        ClosedForms { bound, sigma: SigmaCache::shared(bound as usize), eta }
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    fn s(&self, n: u64) -> i128 {
        self.sigma.get(n as usize).expect("sigma table covers the bound") as i128
    }

    fn a(&self, n: u64) -> i128 {
        self.eta[n as usize] as i128
    }

    /// The formula value, with `r_{0,M}(0) = 1` for the constant term.
    pub fn value(&self, s: i64, m: u64, n: u64) -> Result<u64> {
        self.evaluate(s, m, n, false)
    }

    /// The formula value with the special branch placed at `n = 1` and the
    /// zero-residue branches read literally at `n = 0`.
    pub fn value_as_printed(&self, s: i64, m: u64, n: u64) -> Result<u64> {
        self.evaluate(s, m, n, true)
    }

    fn evaluate(&self, s: i64, m: u64, n: u64, printed: bool) -> Result<u64> {
        if m == 0 {
            return Err(Error::InvalidInput("modulus must be positive".into()));
        }
        let s = s.rem_euclid(m as i64) as u64;
        if !COVERED_CASES.contains(&(s, m)) {
            return Err(Error::Unsupported(format!("no closed form for residue {s} mod {m}")));
        }
        if n > self.bound {
            return Err(Error::Domain(format!("n = {n} exceeds the table bound {}", self.bound)));
        }
        if s == 0 {
            if printed && n == 1 {
                return Ok(1);
            }
            if n == 0 {
                return Ok(if printed { 0 } else { 1 });
            }
        }
        let sg = |k: u64| self.s(k);
        let thirds = |num: i128| -> Result<i128> {
            if num % 3 != 0 {
                return Err(Error::Domain(format!("formula value {num}/3 is not an integer at n = {n}")));
            }
            Ok(num / 3)
        };
        let value: i128 = match (s, m) {
            (0, 2) if n % 8 == 0 => 24 * (sg(n / 4) - 2 * sg(n / 8)),
            (0, 2) if n % 8 == 4 => 8 * sg(n / 4),
            (1, 2) if n % 8 == 4 => 16 * sg(n / 4),
            (1 | 3, 4) if n % 8 == 4 => sg(n / 4),
            (2, 4) if n % 32 == 16 => 16 * sg(n / 16),
            (0, 4) if n % 32 == 0 => 24 * (sg(n / 16) - 2 * sg(n / 32)),
            (0, 4) if n % 32 == 16 => 8 * sg(n / 16),
            (0, 3) if n % 18 == 0 => 24 * (sg(n / 9) - 2 * sg(n / 18)),
            (0, 3) if n % 18 == 9 => 8 * sg(n / 9),
            (1 | 2, 3) if n % 12 == 4 => sg(n / 2) - 2 * sg(n / 4),
            (1 | 2, 3) if n % 12 == 10 => sg(n / 2),
            (1 | 2, 3) if n % 6 == 1 => thirds(sg(n) - self.a(n))?,
            (0, 6) if n % 72 == 0 => 24 * (sg(n / 36) - 2 * sg(n / 72)),
            (0, 6) if n % 72 == 36 => 8 * sg(n / 36),
            (1 | 5, 6) if n % 24 == 4 => thirds(2 * sg(n / 4) + self.a(n / 4))?,
            (2 | 4, 6) if n % 48 == 4 || n % 48 == 28 => thirds(sg(n / 4) - self.a(n / 4))?,
            (2 | 4, 6) if n % 48 == 16 => thirds(sg(n / 4) - 4 * sg(n / 16))?,
            (2 | 4, 6) if n % 48 == 40 => thirds(sg(n / 4))?,
            (3, 6) if n % 72 == 36 => 16 * sg(n / 36),
            _ => 0,
        };
        u64::try_from(value).map_err(|_| Error::Domain(format!("formula value {value} is negative at n = {n}")))
    }
}

/// The divisor-sum value of `r_{s,M}(n)` (constant-term reading at `n = 0`).
pub fn closed_form_r(s: i64, m: u64, n: u64) -> Result<u64> {
    ClosedForms::new(n.max(1)).value(s, m, n)
}

/// The divisor-sum value with the special branch at `n = 1`.
pub fn closed_form_r_as_printed(s: i64, m: u64, n: u64) -> Result<u64> {
    ClosedForms::new(n.max(1)).value_as_printed(s, m, n)
}

/// Result of checking `4 | r_{1,3}(n)` for odd `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisibilityReport {
    pub n_max: u64,
    pub checked: u64,
    pub counterexample: Option<RepCount>,
}

impl DivisibilityReport {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks that `r_{1,3}(n)` is divisible by 4 for every odd `n <= n_max`.
pub fn mod4_divisibility_check(n_max: u64) -> DivisibilityReport {
    let form = CongruentForm::sum_of_four_squares(1, 3).expect("valid form");
    let counts = theta_counts(&form, n_max);
    let counterexample = (1..=n_max)
        .step_by(2)
        .find(|&n| counts[n as usize] % 4 != 0)
        .map(|n| RepCount { n, count: counts[n as usize] });
    DivisibilityReport { n_max, checked: n_max.div_ceil(2), counterexample }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational;

    fn brute(form: &CongruentForm, n: u64, b: i64) -> u64 {
        let mut c = 0;
        for x1 in -b..=b {
            for x2 in -b..=b {
                for x3 in -b..=b {
                    for x4 in -b..=b {
                        let x = [x1, x2, x3, x4];
                        if form.admits(&x) && form.value(&x) == n as i64 {
                            c += 1;
                        }
                    }
                }
            }
        }
        c
    }

    fn hex_form() -> CongruentForm {
        let g = [[2, 1, 0, 0], [1, 2, 0, 0], [0, 0, 2, 1], [0, 0, 1, 2]];
        CongruentForm::new(g, [1, 1, 1, 0], [3, 3, 3, 3]).unwrap()
    }

    #[test]
    fn validation() {
        let mut g = [[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2]];
        assert!(CongruentForm::new(g, [0; 4], [1; 4]).is_ok());
        g[0][1] = 1;
        assert!(CongruentForm::new(g, [0; 4], [1; 4]).is_err());
        g[1][0] = 1;
        assert!(CongruentForm::new(g, [0; 4], [1; 4]).is_ok());
        g[0][1] = 3;
        g[1][0] = 3;
        assert!(CongruentForm::new(g, [0; 4], [1; 4]).is_err());
        assert!(CongruentForm::new([[1, 0, 0, 0], [0, 2, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2]], [0; 4], [1; 4]).is_err());
        assert!(CongruentForm::new([[2, 0, 0, 0]; 4], [0; 4], [0; 4]).is_err());
        assert_eq!(CongruentForm::sum_of_four_squares(-2, 3).unwrap().residues(), &[1; 4]);
    }

    #[test]
    fn counts_from_the_expansion() {
        let f = CongruentForm::sum_of_four_squares(1, 3).unwrap();
        assert_eq!(representation_count(&f, 103), 28);
        assert_eq!(representation_count(&f, 7), 4);
        assert_eq!(representation_count(&f, 0), 0);
        let expected = [(4, 1), (7, 4), (10, 6), (13, 4), (16, 1), (19, 4), (22, 12), (25, 12)];
        let counts = theta_counts(&f, 25);
        for n in 0..=25u64 {
            let want = expected.iter().find(|e| e.0 == n).map_or(0, |e| e.1);
            assert_eq!(counts[n as usize], want, "n={n}");
        }
    }

    #[test]
    fn theta_series_examples() {
        let s12 = theta_series(&CongruentForm::sum_of_four_squares(1, 2).unwrap(), 29);
        assert_eq!(s12.to_string(), "16q^4 + 64q^12 + 96q^20 + 128q^28 + O(q^29)");
        let s16 = theta_series(&CongruentForm::sum_of_four_squares(1, 6).unwrap(), 53);
        assert_eq!(s16.to_string(), "q^4 + 4q^28 + 10q^52 + O(q^53)");
    }

    #[test]
    fn enumeration_matches_a_plain_box() {
        let forms = [
            CongruentForm::sum_of_four_squares(1, 3).unwrap(),
            CongruentForm::sum_of_four_squares(0, 2).unwrap(),
            hex_form(),
            CongruentForm::new([[2, 1, 0, 1], [1, 4, 1, 0], [0, 1, 4, 1], [1, 0, 1, 6]], [1, 0, 0, 1], [2, 2, 2, 2])
                .unwrap(),
        ];
        for f in &forms {
            let lambda = min_eigenvalue_lower_bound(f.gram(), 30);
            let b = eigenvalue_box_bound(&lambda, 40) as i64;
            let counts = theta_counts(f, 40);
            for n in 0..=40u64 {
                let plain = brute(f, n, b);
                assert_eq!(counts[n as usize], plain, "{f} n={n}");
                assert_eq!(representation_count(f, n), plain, "{f} n={n}");
            }
        }
    }

    #[test]
    fn bounds_are_consistent() {
        let f = hex_form();
        let lambda = min_eigenvalue_lower_bound(f.gram(), 40);
        // lambda_min(A/2) is 1/2 for the two hexagonal blocks.
        assert!(lambda <= rational(1, 2) && lambda > rational(49, 100));
        for n in [1u64, 10, 100, 1000] {
            let box_bound = eigenvalue_box_bound(&lambda, n) as i64;
            assert!(f.coordinate_bounds(n).iter().all(|&b| b <= box_bound));
        }
        let squares = CongruentForm::sum_of_four_squares(0, 1).unwrap();
        assert_eq!(squares.coordinate_bounds(50), [7; 4]);
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form_r(1, 2, 12), Ok(64));
        assert_eq!(closed_form_r(1, 3, 25), Ok(12));
        assert_eq!(closed_form_r(0, 3, 9), Ok(8));
        assert_eq!(closed_form_r(0, 3, 0), Ok(1));
        assert!(matches!(closed_form_r(1, 5, 10), Err(Error::Unsupported(_))));
        assert!(closed_form_r(2, 2, 10).is_ok());
    }

    #[test]
    fn printed_special_branch_disagrees_with_counting() {
        let forms = ClosedForms::new(10);
        for m in [2u64, 3, 4, 6] {
            let f = CongruentForm::sum_of_four_squares(0, m).unwrap();
            assert_eq!(forms.value_as_printed(0, m, 1), Ok(1));
            assert_eq!(representation_count(&f, 1), 0);
            assert_eq!(forms.value_as_printed(0, m, 0), Ok(0));
            assert_eq!(representation_count(&f, 0), 1);
            assert_eq!(forms.value(0, m, 0), Ok(1));
            assert_eq!(forms.value(0, m, 1), Ok(0));
        }
    }

    #[test]
    fn closed_forms_match_counting() {
        let forms = ClosedForms::new(1200);
        for (s, m) in COVERED_CASES {
            let counts = theta_counts(&CongruentForm::sum_of_four_squares(s as i64, m).unwrap(), 1200);
            for n in 0..=1200u64 {
                assert_eq!(forms.value(s as i64, m, n), Ok(counts[n as usize]), "r_{{{s},{m}}}({n})");
            }
        }
    }

    #[test]
    fn divisibility_by_four() {
        let r = mod4_divisibility_check(501);
        assert!(r.holds());
        assert_eq!(r.checked, 251);
    }

    #[test]
    fn json_and_display() {
        let f = hex_form();
        assert_eq!(CongruentForm::from_json(&f.to_json()).unwrap(), f);
        assert_eq!(
            f.to_string(),
            "x1^2 + x1x2 + x2^2 + x3^2 + x3x4 + x4^2 with x1 = 1 mod 3, x2 = 1 mod 3, x3 = 1 mod 3, x4 = 0 mod 3"
        );
    }
}
