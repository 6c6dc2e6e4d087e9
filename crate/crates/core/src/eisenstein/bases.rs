use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{q, EisAtom, EisElement};
use crate::arith::{integer, is_prime};
use crate::error::{Error, Result};
use crate::linalg::{IncrementalSolver, RowOutcome};
use crate::modular::{eisenstein_dim, CuspValueTable};
use crate::qseries::{eta_product, FourierSeries};
use crate::reference::{level16_cusps, theta12_cusp_values};

/// Levels whose full basis is reachable with sieving and rescaling alone.
pub const CONSTRUCTIBLE: &str = "2^k with k <= 7, 3^k with k <= 3, and p for every prime p";

/// Depth used when testing candidate elements for independence.
const INDEPENDENCE_DEPTH: u64 = 200;

/// The normalizing constant `c = -1/24`, making `c E_2|S_{M,m}` start with
/// coefficient `sigma_1(n)`.
pub fn normalization() -> BigRational {
    q(-1, 24)
}

fn combo(coeff: BigRational, p: u64, e: BigRational) -> EisElement {
    EisElement::single(coeff, EisAtom::combo(p, e))
}

/// `(c num/den) E_2|S_{M,m}|V_d`.
fn sieved(num: i64, den: i64, modulus: u64, residue: i64, d: u64) -> EisElement {
    EisElement::single(normalization() * q(num, den), EisAtom::sieve_v(modulus, residue, integer(d as i64)))
}

fn is_constructible(p: u64, k: u32) -> bool {
    k >= 1 && (k == 1 || (p == 2 && k <= 7) || (p == 3 && k <= 3))
}

/// The labelled basis of the Eisenstein space of Gamma_0(p^k) with the
/// normalizations of the published lists.
pub fn basis_gamma0_prime_power(p: u64, k: u32) -> Result<Vec<EisElement>> {
    if !is_prime(p) || k == 0 {
        return Err(Error::InvalidInput(format!("{p}^{k} is not a prime power level")));
    }
    if !is_constructible(p, k) {
        return Err(Error::NotConstructible { p, k });
    }
    let n = p.pow(k);
    let elements = if p == 2 {
        power_of_two_basis(k)
    } else {
        let first = combo(q(1, p as i64 - 1), p, integer(p as i64).pow(k as i32 - 2));
        let mut out = vec![first];
        if k >= 2 {
            out.extend([sieved(1, 1, 3, 1, 1), sieved(1, 3, 3, 2, 1)]);
        }
        if k == 3 {
            out.extend([sieved(1, 1, 3, 1, 3), sieved(1, 3, 3, 2, 3)]);
        }
        out
    };
    Ok(elements.into_iter().enumerate().map(|(i, e)| e.with_label(format!("E{n},{}", i + 1))).collect())
}

fn power_of_two_basis(k: u32) -> Vec<EisElement> {
    let first = combo(BigRational::one(), 2, q(1 << k, 4));
    let mut out = vec![first];
    let rest: &[(i64, i64, u64, i64, u64)] = match k {
        1 => &[],
        2 => &[(1, 1, 2, 1, 1)],
        3 => &[(1, 1, 2, 1, 1), (1, 1, 2, 1, 2)],
        4 => &[(1, 1, 4, 1, 1), (1, 4, 4, 3, 1), (1, 1, 2, 1, 2), (1, 1, 2, 1, 4)],
        5 => &[(1, 1, 4, 1, 1), (1, 4, 4, 3, 1), (1, 1, 4, 1, 2), (1, 4, 4, 3, 2), (1, 1, 2, 1, 4), (1, 1, 2, 1, 8)],
        6 => &[
            (1, 1, 8, 1, 1),
            (1, 4, 8, 3, 1),
            (1, 2, 8, 5, 1),
            (1, 8, 8, 7, 1),
            (1, 1, 4, 1, 2),
            (1, 4, 4, 3, 2),
            (1, 1, 4, 1, 4),
            (1, 4, 4, 3, 4),
            (1, 1, 2, 1, 8),
            (1, 1, 2, 1, 16),
        ],
        _ => &[
            (1, 1, 8, 1, 1),
            (1, 4, 8, 3, 1),
            (1, 2, 8, 5, 1),
            (1, 8, 8, 7, 1),
            (1, 1, 8, 1, 2),
            (1, 4, 8, 3, 2),
            (1, 2, 8, 5, 2),
            (1, 8, 8, 7, 2),
            (1, 1, 4, 1, 4),
            (1, 4, 4, 3, 4),
            (1, 1, 4, 1, 8),
            (1, 4, 4, 3, 8),
            (1, 1, 2, 1, 16),
            (1, 1, 2, 1, 32),
        ],
    };
    out.extend(rest.iter().map(|&(num, den, m, r, d)| sieved(num, den, m, r, d)));
    out
}

/// Builds a basis of the Eisenstein space of Gamma_0(p^k) from scratch:
/// start from `E_2|(p V_p - S_{p,0})|V_{p^(k-2)}`, then offer every
/// `c E_2|S_{M,m}|V_d` with `M = p^j` dividing 24 and `M^2 d | p^k`
/// (largest `M` first, then increasing `d` and `m`), keeping those whose
/// expansion is independent of the ones kept so far.
pub fn generate_basis(p: u64, k: u32) -> Result<Vec<EisElement>> {
    if !is_prime(p) || k == 0 {
        return Err(Error::InvalidInput(format!("{p}^{k} is not a prime power level")));
    }
    let n = p.pow(k);
    let target = eisenstein_dim(n) as usize;
    let mut candidates = vec![combo(BigRational::one(), p, integer(p as i64).pow(k as i32 - 2))];
    let moduli: Vec<u64> = (1..=k).map(|j| p.pow(j)).filter(|m| 24 % m == 0 && n % (m * m) == 0).collect();
    for &m in moduli.iter().rev() {
        let mut d = 1;
        while n % (m * m * d) == 0 {
            for r in (1..m).filter(|r| r % p != 0) {
                candidates.push(sieved(1, 1, m, r as i64, d));
            }
            d *= p;
        }
    }
    let mut solver = IncrementalSolver::new(INDEPENDENCE_DEPTH as usize);
    let mut kept = Vec::new();
    for candidate in candidates {
        if kept.len() == target {
            break;
        }
        let row = expansion_row(&candidate, INDEPENDENCE_DEPTH)?;
        if solver.push(row, BigRational::zero()) == RowOutcome::Independent {
            kept.push(candidate);
        }
    }
    if kept.len() < target {
        return Err(Error::NotConstructible { p, k });
    }
    Ok(kept)
}

/// Coefficients of `q^0 .. q^(trunc-1)`; the expansion must be rational with
/// integral exponents.
pub(crate) fn expansion_row(e: &EisElement, trunc: u64) -> Result<Vec<BigRational>> {
    series_row(&e.expansion(trunc)?, trunc)
}

pub(crate) fn series_row(s: &FourierSeries, trunc: u64) -> Result<Vec<BigRational>> {
    (0..trunc as i64)
        .map(|n| {
            s.rational_coeff(n)
                .ok_or_else(|| Error::Domain(format!("coefficient of q^{n} is unknown or not rational in {s}")))
        })
        .collect()
}

/// The labelled spanning lists for levels 36 (`B1..B12`) and 144
/// (`A1..A30`).
pub fn spanning_set_gamma0(n: u64) -> Result<Vec<EisElement>> {
    let c = normalization;
    let sv = |m: u64, r: i64, d: u64| EisElement::single(c(), EisAtom::sieve_v(m, r, integer(d as i64)));
    let (prefix, list) = match n {
        36 => {
            let mut list = vec![combo(BigRational::one(), 2, integer(9)), sv(6, 1, 1), sv(6, 5, 1)];
            for r in [1, 2] {
                list.extend([1, 2, 4].map(|d| sv(3, r, d)));
            }
            list.extend([1, 3, 9].map(|d| sv(2, 1, d)));
            ("B", list)
        }
        144 => {
            let mut list = vec![combo(BigRational::one(), 2, integer(36))];
            list.extend([1, 5, 7, 11].map(|r| sv(12, r, 1)));
            for r in [1, 5] {
                list.extend([1, 2, 4].map(|d| sv(6, r, d)));
            }
            for r in [1, 2] {
                list.extend([1, 2, 4, 8, 16].map(|d| sv(3, r, d)));
            }
            list.extend([1, 2, 3, 4, 6, 9, 12, 18, 36].map(|d| sv(2, 1, d)));
            ("A", list)
        }
        other => return Err(Error::Unsupported(format!("no spanning list for level {other}; use 36 or 144"))),
    };
    Ok(list.into_iter().enumerate().map(|(i, e)| e.with_label(format!("{prefix}{}", i + 1))).collect())
}

/// A basis of Eisenstein elements at one level plus known cusp forms.
#[derive(Debug, Clone)]
pub struct LevelBasis {
    pub level: u64,
    pub elements: Vec<EisElement>,
    pub cuspforms: Vec<(String, FourierSeries)>,
}

/// The basis used for decompositions at level N: the labelled prime-power
/// bases, and at levels 36 and 144 the greedily independent part of the
/// labelled spanning list together with `eta(6 tau)^4` (and its `V_2`, `V_4`
/// images at 144). Cusp forms are expanded below `trunc`.
pub fn level_basis(n: u64, trunc: u64) -> Result<LevelBasis> {
    let eta = |d: u64| -> Result<(String, FourierSeries)> {
        let name = if d == 1 { "eta(6t)^4".to_string() } else { format!("eta(6t)^4|V[{d}]") };
        Ok((name, eta_product(6 * d, 4, trunc)?))
    };
    let (elements, cuspforms) = match n {
        36 => (independent_subset(spanning_set_gamma0(36)?, INDEPENDENCE_DEPTH * 3)?, vec![eta(1)?]),
        144 => {
            (independent_subset(spanning_set_gamma0(144)?, INDEPENDENCE_DEPTH * 3)?, vec![eta(1)?, eta(2)?, eta(4)?])
        }
        _ => {
            let factors = crate::arith::factorize(n);
            match factors.as_slice() {
                [(p, k)] => (basis_gamma0_prime_power(*p, *k)?, Vec::new()),
                _ => return Err(Error::Unsupported(format!("no basis for level {n}; use a prime power, 36 or 144"))),
            }
        }
    };
    Ok(LevelBasis { level: n, elements, cuspforms })
}

/// Keeps each element whose expansion below `q^depth` is independent of the
/// ones kept before it.
pub fn independent_subset(list: Vec<EisElement>, depth: u64) -> Result<Vec<EisElement>> {
    let mut solver = IncrementalSolver::new(depth as usize);
    let mut kept = Vec::new();
    for e in list {
        if solver.push(expansion_row(&e, depth)?, BigRational::zero()) == RowOutcome::Independent {
            kept.push(e);
        }
    }
    Ok(kept)
}

/// The printed cusp values of the residue-1-mod-2 theta series at the cusps
/// of Gamma_0(16).
pub fn theta16_cusp_table() -> CuspValueTable {
    CuspValueTable::from_values(16, level16_cusps().into_iter().zip(theta12_cusp_values()).collect())
        .expect("six distinct cusps of Gamma_0(16)")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rank, rational_rank_fraction_free};
    use crate::modular::Cusp;
    use crate::qseries::SigmaCache;

    fn matrix(elements: &[EisElement], trunc: u64) -> Vec<Vec<BigRational>> {
        elements.iter().map(|e| expansion_row(e, trunc).unwrap()).collect()
    }

    #[test]
    fn lengths_match_dimensions() {
        for (p, k) in
            [(2u64, 1u32), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (2, 7), (3, 1), (3, 2), (3, 3), (5, 1), (13, 1)]
        {
            let basis = basis_gamma0_prime_power(p, k).unwrap();
            assert_eq!(basis.len() as u64, eisenstein_dim(p.pow(k)), "{p}^{k}");
        }
    }

    #[test]
    fn out_of_range_levels() {
        assert_eq!(basis_gamma0_prime_power(5, 2), Err(Error::NotConstructible { p: 5, k: 2 }));
        assert_eq!(basis_gamma0_prime_power(2, 8), Err(Error::NotConstructible { p: 2, k: 8 }));
        assert_eq!(basis_gamma0_prime_power(3, 4), Err(Error::NotConstructible { p: 3, k: 4 }));
        assert!(matches!(basis_gamma0_prime_power(4, 1), Err(Error::InvalidInput(_))));
        assert_eq!(generate_basis(5, 2), Err(Error::NotConstructible { p: 5, k: 2 }));
        assert_eq!(generate_basis(2, 8), Err(Error::NotConstructible { p: 2, k: 8 }));
        assert_eq!(generate_basis(3, 4), Err(Error::NotConstructible { p: 3, k: 4 }));
    }

    #[test]
    fn level_nine_words() {
        let basis = basis_gamma0_prime_power(3, 2).unwrap();
        assert_eq!(basis[0].terms(), &[(q(1, 2), EisAtom::combo(3, integer(1)))]);
        assert_eq!(basis[1].terms(), &[(q(-1, 24), EisAtom::sieve(3, 1))]);
        assert_eq!(basis[2].terms(), &[(q(-1, 72), EisAtom::sieve(3, 2))]);
    }

    #[test]
    fn prime_level_element_is_the_classical_one() {
        // (p E_2(p tau) - E_2(tau)) / (p - 1), from divisor sums directly.
        let sigma = SigmaCache::new(100);
        for p in [2u64, 3, 5, 7, 11] {
            let e = &basis_gamma0_prime_power(p, 1).unwrap()[0];
            let s = e.expansion(100).unwrap();
            for n in 0..100usize {
                let value = if n == 0 {
                    integer(1)
                } else {
                    let big = if n % p as usize == 0 { sigma.get(n / p as usize).unwrap() as i64 } else { 0 };
                    integer(24 * (sigma.get(n).unwrap() as i64 - p as i64 * big)) / integer(p as i64 - 1)
                };
                assert_eq!(s.rational_coeff(n as i64), Some(value), "p={p} n={n}");
            }
        }
    }

    #[test]
    fn bases_are_independent_and_holomorphic() {
        for (p, k) in [(2u64, 5u32), (2, 7), (3, 3), (7, 1)] {
            let basis = basis_gamma0_prime_power(p, k).unwrap();
            let m = matrix(&basis, 200);
            assert_eq!(rank(&m), basis.len());
            assert_eq!(rational_rank_fraction_free(&m), basis.len());
            assert!(basis.iter().all(|e| e.is_holomorphic() && e.sieve_coefficients_invariant()));
            assert!(basis.iter().all(|e| p.pow(k) % e.level().unwrap() == 0));
        }
    }

    #[test]
    fn generated_basis_spans_the_labelled_one() {
        for (p, k) in [(2u64, 4u32), (2, 6), (2, 7), (3, 2), (3, 3), (11, 1)] {
            let labelled = basis_gamma0_prime_power(p, k).unwrap();
            let generated = generate_basis(p, k).unwrap();
            assert_eq!(generated.len(), labelled.len());
            let mut both = matrix(&labelled, 200);
            both.extend(matrix(&generated, 200));
            assert_eq!(rank(&both), labelled.len(), "{p}^{k}");
        }
    }

    #[test]
    fn odd_exponent_levels_reuse_lower_levels() {
        // Each element of level p^k with k odd is f or f|V_p for f of level p^(k-1).
        for (p, k) in [(2u64, 3u32), (2, 5), (2, 7), (3, 3)] {
            let lower = basis_gamma0_prime_power(p, k - 1).unwrap();
            let pv = integer(p as i64);
            let atoms = |h: &EisElement| h.terms().iter().map(|(_, a)| a.clone()).collect::<Vec<_>>();
            for e in basis_gamma0_prime_power(p, k).unwrap() {
                let found = lower.iter().any(|f| atoms(f) == atoms(&e) || atoms(&f.compose_v(&pv)) == atoms(&e));
                assert!(found, "{e}");
            }
        }
    }

    #[test]
    fn spanning_sets() {
        let b = spanning_set_gamma0(36).unwrap();
        assert_eq!(b.len(), 12);
        assert_eq!(b[11].label(), Some("B12"));
        assert_eq!(rank(&matrix(&b, 300)), 9);
        assert_eq!(rational_rank_fraction_free(&matrix(&b, 300)), 9);
        let a = spanning_set_gamma0(144).unwrap();
        assert_eq!(a.len(), 30);
        assert_eq!(a[7].terms(), &[(q(-1, 24), EisAtom::sieve_v(6, 1, integer(4)))]);
        assert_eq!(rank(&matrix(&a, 600)), 19);
        assert!(spanning_set_gamma0(48).is_err());
    }

    fn relation_holds(b: &[EisElement], coeffs: &[(usize, i64)], trunc: u64) -> bool {
        let e = EisElement::linear_combination(coeffs.iter().map(|&(i, c)| (integer(c), &b[i - 1])));
        e.expansion(trunc).unwrap().is_zero()
    }

    #[test]
    fn level_36_relations() {
        let b = spanning_set_gamma0(36).unwrap();
        // sigma(2m) = 3 sigma(m) - 2 sigma(m/2) gives the two sieve relations.
        assert!(relation_holds(&b, &[(4, 1), (2, -1), (8, -3), (6, 2)], 300));
        assert!(relation_holds(&b, &[(7, 1), (3, -1), (5, -3), (9, 2)], 300));
        assert!(relation_holds(&b, &[(10, 1), (2, -1), (3, -1), (11, -4), (12, 3)], 300));
        // With B9 in place of B10 the combination is not zero.
        assert!(!relation_holds(&b, &[(2, 1), (3, 1), (11, 4), (12, -3), (9, -1)], 300));
        let kept = independent_subset(b, 600).unwrap();
        let labels: Vec<_> = kept.iter().map(|e| e.label().unwrap().to_string()).collect();
        assert_eq!(labels, ["B1", "B2", "B3", "B4", "B5", "B6", "B7", "B10", "B11"]);
    }

    #[test]
    fn theta_table_has_equal_quarter_values() {
        let t = theta16_cusp_table();
        assert_eq!(t.get(&Cusp::new(1, 4).unwrap()), t.get(&Cusp::new(3, 4).unwrap()));
        assert_eq!(t.get(&Cusp::new(1, 8).unwrap()).unwrap().to_rational(), Some(integer(1)));
    }
}
