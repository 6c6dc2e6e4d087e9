use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use super::bases::{expansion_row, series_row};
use super::EisElement;
use crate::arith::integer;
use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};
use crate::json::rational_to_json;
use crate::linalg::{IncrementalSolver, RowOutcome};
use crate::modular::CuspValueTable;
use crate::qseries::FourierSeries;

/// `target = sum coeffs_i basis_i + sum cusp_coeffs_j cuspforms_j` below the
/// truncation, with the residual left over (zero on success).
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub coeffs: Vec<BigRational>,
    pub cusp_coeffs: Vec<BigRational>,
    pub residual: FourierSeries,
}

impl Decomposition {
    pub fn to_json(&self, basis: &[EisElement], cusp_names: &[String]) -> Value {
        let named = |label: String, c: &BigRational| json!({"name": label, "coeff": rational_to_json(c)});
        let coeffs: Vec<Value> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                named(basis.get(i).and_then(|e| e.label()).map_or_else(|| format!("#{}", i + 1), str::to_string), c)
            })
            .collect();
        let cusp: Vec<Value> = self
            .cusp_coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| named(cusp_names.get(i).cloned().unwrap_or_else(|| format!("f{}", i + 1)), c))
            .collect();
        json!({"coeffs": coeffs, "cusp_coeffs": cusp, "residual_zero": self.residual.is_zero(), "residual": self.residual.to_json()})
    }
}

fn check_target(target: &FourierSeries, trunc: u64, what: &str) -> Result<()> {
    if target.trunc() < &integer(trunc as i64) {
        return Err(Error::Domain(format!("{what} is only known below q^{}, need q^{trunc}", target.trunc())));
    }
    if !target.has_integral_exponents() {
        return Err(Error::LatticeMismatch(format!("{what} has fractional exponents")));
    }
    Ok(())
}

/// Solves `target = sum l_i B_i + sum m_j f_j` on the coefficients of
/// `q^0 .. q^(trunc-1)`. An inconsistent system is reported at the first
/// exponent that cannot be matched; an underdetermined one as rank
/// deficiency.
pub fn decompose_by_expansion(
    target: &FourierSeries,
    basis: &[EisElement],
    cuspforms: &[FourierSeries],
    trunc: u64,
) -> Result<Decomposition> {
    check_target(target, trunc, "target")?;
    let mut columns = Vec::with_capacity(basis.len() + cuspforms.len());
    for e in basis {
        columns.push(expansion_row(e, trunc)?);
    }
    for f in cuspforms {
        check_target(f, trunc, "cusp form")?;
        columns.push(series_row(f, trunc)?);
    }
    let rhs = series_row(target, trunc)?;
    let mut solver = IncrementalSolver::new(columns.len());
    for (n, value) in rhs.into_iter().enumerate() {
        let row = columns.iter().map(|c| c[n].clone()).collect();
        if solver.push(row, value) == RowOutcome::Inconsistent {
            return Err(Error::NoDecomposition { at: format!("exponent {n}") });
        }
    }
    let solution = solver.solution().ok_or(Error::RankDeficient { rank: solver.rank(), columns: columns.len() })?;
    let mut parts = Vec::with_capacity(columns.len());
    for (e, c) in basis.iter().zip(&solution) {
        parts.push((c.clone(), e.expansion(trunc)?));
    }
    for (f, c) in cuspforms.iter().zip(&solution[basis.len()..]) {
        parts.push((c.clone(), f.clone()));
    }
    let residual = combination_residual(target, &parts, trunc);
    let cusp_coeffs = solution[basis.len()..].to_vec();
    let mut coeffs = solution;
    coeffs.truncate(basis.len());
    Ok(Decomposition { coeffs, cusp_coeffs, residual })
}

/// `target - sum c_i s_i`, truncated below `q^trunc`.
pub fn combination_residual(
    target: &FourierSeries,
    parts: &[(BigRational, FourierSeries)],
    trunc: u64,
) -> FourierSeries {
    let t = integer(trunc as i64);
    let mut residual = target.truncated(&t);
    for (c, s) in parts {
        if !c.is_zero() {
            residual = &residual - &s.truncated(&t).scale_rational(c);
        }
    }
    residual
}

/// Solves `values(target) = sum x_i values(B_i)` over the cusps of the
/// table's level.
pub fn decompose_by_cusp_values(target: &CuspValueTable, basis: &[EisElement]) -> Result<Vec<CycNumber>> {
    let level = target.level();
    let tables = basis.iter().map(|e| e.cusp_values(level)).collect::<Result<Vec<_>>>()?;
    let mut solver = IncrementalSolver::new(basis.len());
    for (i, (cusp, value)) in target.entries().iter().enumerate() {
        let row = tables.iter().map(|t| t.entries()[i].1.clone()).collect();
        if solver.push(row, value.clone()) == RowOutcome::Inconsistent {
            return Err(Error::NoDecomposition { at: format!("cusp {cusp}") });
        }
    }
    solver.solution().ok_or(Error::RankDeficient { rank: solver.rank(), columns: basis.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational;
    use crate::eisenstein::{basis_gamma0_prime_power, spanning_set_gamma0};
    use crate::modular::enumerate_cusps;

    #[test]
    fn recovers_a_known_combination() {
        let basis = basis_gamma0_prime_power(2, 4).unwrap();
        let coeffs = [rational(1, 2), integer(-3), integer(0), rational(7, 5), integer(2)];
        let combo = EisElement::linear_combination(coeffs.iter().cloned().zip(basis.iter()));
        let d = decompose_by_expansion(&combo.expansion(80).unwrap(), &basis, &[], 80).unwrap();
        assert_eq!(d.coeffs, coeffs.to_vec());
        assert!(d.residual.is_zero());
        let table = combo.cusp_values(16).unwrap();
        let by_cusps = decompose_by_cusp_values(&table, &basis).unwrap();
        assert_eq!(by_cusps, coeffs.iter().cloned().map(CycNumber::from_rational).collect::<Vec<_>>());
    }

    #[test]
    fn reports_first_mismatch() {
        let basis = basis_gamma0_prime_power(2, 2).unwrap();
        let mut coeffs = vec![integer(0); 20];
        coeffs[0] = integer(1);
        coeffs[2] = integer(24);
        coeffs[5] = integer(1);
        let target = FourierSeries::from_rational_coefficients(&coeffs);
        // q^0 and q^2 fix the first element, q^1 the second; q^4 disagrees.
        assert_eq!(
            decompose_by_expansion(&target, &basis, &[], 20),
            Err(Error::NoDecomposition { at: "exponent 4".into() })
        );
    }

    #[test]
    fn dependent_columns_are_rank_deficient() {
        let b = spanning_set_gamma0(36).unwrap();
        let target = b[1].expansion(100).unwrap();
        assert_eq!(decompose_by_expansion(&target, &b, &[], 100), Err(Error::RankDeficient { rank: 9, columns: 12 }));
    }

    #[test]
    fn zero_target_at_the_cusps() {
        let basis = basis_gamma0_prime_power(2, 4).unwrap();
        let zero =
            CuspValueTable::from_values(16, enumerate_cusps(16).into_iter().map(|c| (c, CycNumber::zero())).collect())
                .unwrap();
        assert!(decompose_by_cusp_values(&zero, &basis).unwrap().iter().all(CycNumber::is_zero));
    }

    #[test]
    fn short_target_is_rejected() {
        let basis = basis_gamma0_prime_power(2, 1).unwrap();
        let target = basis[0].expansion(10).unwrap();
        assert!(matches!(decompose_by_expansion(&target, &basis, &[], 20), Err(Error::Domain(_))));
    }
}
