//! Eisenstein series of weight 2 written as operator words applied to `E_2`.
//!
//! An element is kept symbolically, as a rational combination of atoms, so
//! that both its q-expansion and its exact cusp values can be produced.

pub(crate) mod bases;
mod decompose;

pub use bases::{
    basis_gamma0_prime_power, generate_basis, independent_subset, level_basis, normalization, spanning_set_gamma0,
    theta16_cusp_table, LevelBasis, CONSTRUCTIBLE,
};
pub use decompose::{combination_residual, decompose_by_cusp_values, decompose_by_expansion, Decomposition};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::arith::{gcd_u64, integer, lcm_u64};
use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};
use crate::json::{rational_from_json, rational_to_json};
use crate::modular::{cusp_value_sieved, enumerate_cusps, Cusp, CuspValueTable};
use crate::qseries::{e2_holomorphic, FourierSeries};

/// One operator word applied to `E_2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EisAtom {
    /// `E_2 | S_{M,m}`
    Sieve { modulus: u64, residue: u64 },
    /// `E_2 | S_{M,m} | V_d`
    SieveThenV { modulus: u64, residue: u64, scale: BigRational },
    /// `E_2 | V_d`
    V { scale: BigRational },
    /// `E_2 | (p V_p - S_{p,0}) | V_e`
    Combo { prime: u64, scale: BigRational },
}

impl EisAtom {
    pub fn sieve(modulus: u64, residue: i64) -> Self {
        EisAtom::Sieve { modulus, residue: residue.rem_euclid(modulus as i64) as u64 }
    }

    /// `E_2 | S_{M,m} | V_d`, collapsing to [`EisAtom::Sieve`] when `d = 1`.
    pub fn sieve_v(modulus: u64, residue: i64, scale: BigRational) -> Self {
        if scale.is_one() {
            return Self::sieve(modulus, residue);
        }
        EisAtom::SieveThenV { modulus, residue: residue.rem_euclid(modulus as i64) as u64, scale }
    }

    pub fn v(scale: BigRational) -> Self {
        EisAtom::V { scale }
    }

    pub fn combo(prime: u64, scale: BigRational) -> Self {
        EisAtom::Combo { prime, scale }
    }

    /// The same word followed by `V_d`.
    pub fn compose_v(&self, d: &BigRational) -> Self {
        match self {
            EisAtom::Sieve { modulus, residue } => Self::sieve_v(*modulus, *residue as i64, d.clone()),
            EisAtom::SieveThenV { modulus, residue, scale } => Self::sieve_v(*modulus, *residue as i64, scale * d),
            EisAtom::V { scale } => Self::v(scale * d),
            EisAtom::Combo { prime, scale } => Self::combo(*prime, scale * d),
        }
    }

    /// `(M, m, d)` for the sieved atoms.
    pub fn sieve_data(&self) -> Option<(u64, u64, BigRational)> {
        match self {
            EisAtom::Sieve { modulus, residue } => Some((*modulus, *residue, BigRational::one())),
            EisAtom::SieveThenV { modulus, residue, scale } => Some((*modulus, *residue, scale.clone())),
            _ => None,
        }
    }

    /// Smallest N with the atom on Gamma_0(N): `M^2 d` for sieves, `d` for
    /// `V_d`, `p^2 e` for the combination. `None` when that is not an integer.
    pub fn level(&self) -> Option<u64> {
        let raw = match self {
            EisAtom::Sieve { modulus, .. } => integer((modulus * modulus) as i64),
            EisAtom::SieveThenV { modulus, scale, .. } => integer((modulus * modulus) as i64) * scale,
            EisAtom::V { scale } => scale.clone(),
            EisAtom::Combo { prime, scale } => integer((prime * prime) as i64) * scale,
        };
        raw.is_integer().then(|| raw.to_integer().to_u64()).flatten()
    }

    /// Coefficient of the non-holomorphic term `-3/(pi Im tau)` carried along
    /// from `E_2`; zero exactly when the atom is holomorphic.
    pub fn non_holomorphic_weight(&self) -> BigRational {
        match self {
            EisAtom::Sieve { residue, .. } => integer((*residue == 0) as i64),
            EisAtom::SieveThenV { residue, scale, .. } => integer((*residue == 0) as i64) / scale,
            EisAtom::V { scale } => scale.recip(),
            EisAtom::Combo { .. } => BigRational::zero(),
        }
    }

    /// q-expansion of the holomorphic part, exact below `trunc`.
    pub fn expansion(&self, trunc: u64) -> Result<FourierSeries> {
        let t = integer(trunc as i64);
        // E_2 must be known below trunc/d before rescaling by d.
        let source = |d: &BigRational| -> Result<FourierSeries> {
            let need =
                (&t / d).ceil().to_integer().to_u64().ok_or_else(|| Error::Domain("truncation overflow".into()))?;
            Ok(e2_holomorphic(need))
        };
        match self {
            EisAtom::Sieve { modulus, residue } => e2_holomorphic(trunc).sieve(*modulus, *residue as i64),
            EisAtom::SieveThenV { modulus, residue, scale } => {
                Ok(source(scale)?.sieve(*modulus, *residue as i64)?.v_operator(scale)?.truncated(&t))
            }
            EisAtom::V { scale } => Ok(source(scale)?.v_operator(scale)?.truncated(&t)),
            EisAtom::Combo { prime, scale } => {
                let p = integer(*prime as i64);
                let lifted = EisAtom::v(&p * scale).expansion(trunc)?;
                let sieved = EisAtom::sieve_v(*prime, 0, scale.clone()).expansion(trunc)?;
                Ok(&lifted.scale_rational(&p) - &sieved)
            }
        }
    }

    /// Exact value at a cusp, normalized so that `E_2` itself has value 1 at
    /// infinity.
    pub fn cusp_value(&self, cusp: &Cusp) -> Result<CycNumber> {
        match self {
            EisAtom::Sieve { modulus, residue } => {
                cusp_value_sieved(*modulus, *residue as i64, &BigRational::one(), cusp)
            }
            EisAtom::SieveThenV { modulus, residue, scale } => {
                cusp_value_sieved(*modulus, *residue as i64, scale, cusp)
            }
            EisAtom::V { scale } => cusp_value_sieved(1, 0, scale, cusp),
            EisAtom::Combo { prime, scale } => {
                let p = integer(*prime as i64);
                let lifted = cusp_value_sieved(1, 0, &(&p * scale), cusp)?;
                let sieved = cusp_value_sieved(*prime, 0, scale, cusp)?;
                Ok(&lifted.scale(&p) - &sieved)
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            EisAtom::Sieve { modulus, residue } => json!({"kind": "sieve", "modulus": modulus, "residue": residue}),
            EisAtom::SieveThenV { modulus, residue, scale } => json!({
                "kind": "sieve-v", "modulus": modulus, "residue": residue, "scale": rational_to_json(scale)
            }),
            EisAtom::V { scale } => json!({"kind": "v", "scale": rational_to_json(scale)}),
            EisAtom::Combo { prime, scale } => {
                json!({"kind": "combo", "prime": prime, "scale": rational_to_json(scale)})
            }
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let field = |name: &str| {
            v.get(name)
                .and_then(Value::as_u64)
                .filter(|&x| x > 0 || name == "residue")
                .ok_or_else(|| Error::InvalidInput(format!("atom needs a valid \"{name}\"")))
        };
        let scale = || {
            let s = rational_from_json(v.get("scale").unwrap_or(&Value::Null))?;
            if s <= BigRational::zero() {
                return Err(Error::InvalidInput("atom scale must be positive".into()));
            }
            Ok(s)
        };
        match v.get("kind").and_then(Value::as_str) {
            Some("sieve") => Ok(Self::sieve(field("modulus")?, field("residue")? as i64)),
            Some("sieve-v") => Ok(Self::sieve_v(field("modulus")?, field("residue")? as i64, scale()?)),
            Some("v") => Ok(Self::v(scale()?)),
            Some("combo") => Ok(Self::combo(field("prime")?, scale()?)),
            _ => Err(Error::InvalidInput(format!("unknown atom {v}"))),
        }
    }
}

fn fmt_scale(f: &mut fmt::Formatter<'_>, d: &BigRational) -> fmt::Result {
    if !d.is_one() {
        write!(f, "|V[{d}]")?;
    }
    Ok(())
}

impl fmt::Display for EisAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EisAtom::Sieve { modulus, residue } => write!(f, "E2|S[{modulus},{residue}]"),
            EisAtom::SieveThenV { modulus, residue, scale } => {
                write!(f, "E2|S[{modulus},{residue}]")?;
                fmt_scale(f, scale)
            }
            EisAtom::V { scale } => write!(f, "E2|V[{scale}]"),
            EisAtom::Combo { prime, scale } => {
                write!(f, "E2|({prime}V[{prime}]-S[{prime},0])")?;
                fmt_scale(f, scale)
            }
        }
    }
}

/// A rational combination of atoms, optionally labelled.
#[derive(Debug, Clone, PartialEq)]
pub struct EisElement {
    label: Option<String>,
    terms: Vec<(BigRational, EisAtom)>,
}

impl EisElement {
    /// Merges repeated atoms, drops zero coefficients and sorts by atom.
    pub fn new(terms: impl IntoIterator<Item = (BigRational, EisAtom)>) -> Self {
        let mut merged: BTreeMap<EisAtom, BigRational> = BTreeMap::new();
        for (c, a) in terms {
            *merged.entry(a).or_insert_with(BigRational::zero) += c;
        }
        let terms = merged.into_iter().filter(|(_, c)| !c.is_zero()).map(|(a, c)| (c, a)).collect();
        EisElement { label: None, terms }
    }

    pub fn single(coeff: BigRational, atom: EisAtom) -> Self {
        Self::new([(coeff, atom)])
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn terms(&self) -> &[(BigRational, EisAtom)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `sum c_i e_i`, unlabelled.
    pub fn linear_combination<'a>(parts: impl IntoIterator<Item = (BigRational, &'a EisElement)>) -> Self {
        Self::new(
            parts
                .into_iter()
                .flat_map(|(c, e)| e.terms.iter().map(move |(t, a)| (&c * t, a.clone())).collect::<Vec<_>>()),
        )
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::new(self.terms.iter().map(|(c, a)| (c * r, a.clone())))
    }

    /// The element followed by `V_d`.
    pub fn compose_v(&self, d: &BigRational) -> Self {
        Self::new(self.terms.iter().map(|(c, a)| (c.clone(), a.compose_v(d))))
    }

    pub fn expansion(&self, trunc: u64) -> Result<FourierSeries> {
        let mut total = FourierSeries::zero(integer(trunc as i64));
        for (c, atom) in &self.terms {
            total = &total + &atom.expansion(trunc)?.scale_rational(c);
        }
        Ok(total)
    }

    pub fn cusp_value(&self, cusp: &Cusp) -> Result<CycNumber> {
        let mut total = CycNumber::zero();
        for (c, atom) in &self.terms {
            total += &atom.cusp_value(cusp)?.scale(c);
        }
        Ok(total)
    }

    /// Least common multiple of the atom levels; `None` if an atom has none.
    pub fn level(&self) -> Option<u64> {
        self.terms.iter().try_fold(1u64, |acc, (_, a)| a.level().map(|l| lcm_u64(acc, l)))
    }

    /// Values at every canonical cusp of Gamma_0(N). Every atom must live on
    /// Gamma_0(N).
    pub fn cusp_values(&self, level: u64) -> Result<CuspValueTable> {
        for (_, atom) in &self.terms {
            match atom.level() {
                Some(l) if level % l == 0 => {}
                _ => return Err(Error::Domain(format!("{atom} does not live on Gamma_0({level})"))),
            }
        }
        let values =
            enumerate_cusps(level).into_iter().map(|c| Ok((c, self.cusp_value(&c)?))).collect::<Result<Vec<_>>>()?;
        CuspValueTable::from_values(level, values)
    }

    pub fn non_holomorphic_weight(&self) -> BigRational {
        self.terms.iter().map(|(c, a)| c * a.non_holomorphic_weight()).sum()
    }

    pub fn is_holomorphic(&self) -> bool {
        self.non_holomorphic_weight().is_zero()
    }

    /// Whether, for each `(M, d)`, the sieve coefficients satisfy
    /// `alpha_{a^2 m} = alpha_m` for every unit `a` mod M.
    pub fn sieve_coefficients_invariant(&self) -> bool {
        let mut groups: BTreeMap<(u64, BigRational), BTreeMap<u64, BigRational>> = BTreeMap::new();
        for (c, atom) in &self.terms {
            if let Some((m, r, d)) = atom.sieve_data() {
                groups.entry((m, d)).or_default().insert(r, c.clone());
            }
        }
        groups.iter().all(|((m, _), alphas)| {
            (1..*m).filter(|&a| gcd_u64(a, *m) == 1).all(|a| {
                alphas.iter().all(|(r, c)| {
                    let moved = (a * a % m * r) % m;
                    alphas.get(&moved).map_or(c.is_zero(), |other| other == c)
                })
            })
        })
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(c, a)| json!({"coeff": rational_to_json(c), "atom": a.to_json(), "word": a.to_string()}))
            .collect();
        json!({"label": self.label, "terms": terms})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::InvalidInput("element needs a \"terms\" array".into()))?
            .iter()
            .map(|t| {
                let c = rational_from_json(t.get("coeff").unwrap_or(&Value::Null))?;
                let a = EisAtom::from_json(t.get("atom").unwrap_or(&Value::Null))?;
                Ok((c, a))
            })
            .collect::<Result<Vec<_>>>()?;
        let element = Self::new(terms);
        Ok(match v.get("label").and_then(Value::as_str) {
            Some(l) => element.with_label(l),
            None => element,
        })
    }
}

impl fmt::Display for EisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(label) = &self.label {
            write!(f, "{label} = ")?;
        }
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, a)) in self.terms.iter().enumerate() {
            let negative = c < &BigRational::zero();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let magnitude = if negative { -c } else { c.clone() };
            if !magnitude.is_one() {
                write!(f, "({magnitude})*")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// Rational `num/den` as a [`BigRational`], for building coefficient lists.
pub(crate) fn q(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational;

    #[test]
    fn combo_at_half_is_the_level_two_form() {
        // 2 E_2(2 tau) - E_2(tau) = 1 + 24 sum_{d | n, d odd} d q^n
        let e = EisElement::single(BigRational::one(), EisAtom::combo(2, rational(1, 2)));
        let s = e.expansion(6).unwrap();
        let want: Vec<i64> = vec![1, 24, 24, 96, 24, 144];
        for (n, w) in want.into_iter().enumerate() {
            assert_eq!(s.rational_coeff(n as i64), Some(integer(w)));
        }
        assert!(e.is_holomorphic());
        assert_eq!(e.level(), Some(2));
    }

    #[test]
    fn merging_and_cancellation() {
        let a = EisAtom::sieve(4, 5);
        assert_eq!(a, EisAtom::sieve(4, 1));
        let e = EisElement::new([(integer(2), a.clone()), (integer(-2), a)]);
        assert!(e.is_zero());
        assert_eq!(EisAtom::sieve_v(2, 1, integer(1)), EisAtom::sieve(2, 1));
    }

    #[test]
    fn compose_v_matches_series_rescaling() {
        let e =
            EisElement::new([(rational(-1, 24), EisAtom::sieve(3, 1)), (integer(2), EisAtom::combo(2, integer(1)))]);
        let direct = e.compose_v(&integer(4)).expansion(80).unwrap();
        let via_series = e.expansion(20).unwrap().v_operator(&integer(4)).unwrap();
        assert_eq!(direct, via_series);
    }

    #[test]
    fn weights_and_levels() {
        assert_eq!(EisAtom::sieve_v(2, 0, integer(3)).non_holomorphic_weight(), rational(1, 3));
        assert_eq!(EisAtom::v(integer(4)).level(), Some(4));
        assert_eq!(EisAtom::combo(3, rational(1, 3)).level(), Some(3));
        assert_eq!(EisAtom::sieve_v(3, 2, integer(4)).level(), Some(36));
        assert_eq!(EisAtom::v(rational(1, 2)).level(), None);
    }

    #[test]
    fn cusp_values_reject_wrong_level() {
        let e = EisElement::single(integer(1), EisAtom::sieve(4, 1));
        assert!(e.cusp_values(8).is_err());
        assert_eq!(e.cusp_values(16).unwrap().entries().len(), 6);
    }

    #[test]
    fn json_round_trip() {
        let e = EisElement::new([
            (rational(-1, 96), EisAtom::sieve_v(4, 3, integer(2))),
            (integer(1), EisAtom::combo(2, rational(9, 2))),
            (integer(3), EisAtom::v(rational(1, 3))),
            (integer(-1), EisAtom::sieve(6, 5)),
        ])
        .with_label("X");
        assert_eq!(EisElement::from_json(&e.to_json()).unwrap(), e);
    }

    #[test]
    fn display_is_readable() {
        let e = EisElement::new([(rational(-1, 24), EisAtom::sieve_v(2, 1, integer(4)))]).with_label("E16,5");
        assert_eq!(e.to_string(), "E16,5 = -(1/24)*E2|S[2,1]|V[4]");
    }
}
