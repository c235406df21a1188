//! Recovering the eventual polynomial of a sampled length function.
//!
//! A function that is eventually polynomial of degree `D` is written in the
//! alternating binomial basis
//!
//! ```text
//! P(n) = sum_{i=0}^{D} (-1)^i c_i C(n + D - i, D - i)
//! ```
//!
//! so that `c_0` is the multiplicity. Fitting is exact integer arithmetic on
//! finite differences; nothing is estimated.

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::module::ModulePresentation;
use crate::monomial::MonomialIdeal;

pub const DEFAULT_WINDOW: usize = 4;
pub const DEFAULT_N_MAX: u32 = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GrowthKind {
    Hilbert,
    Irreducibility,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthTable {
    pub kind: GrowthKind,
    pub values: Vec<u64>,
}

impl GrowthTable {
    pub fn new(kind: GrowthKind, values: Vec<u64>) -> Self {
        Self { kind, values }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomialPolynomial {
    pub degree: u32,
    /// `c_0, ..., c_D` in the alternating convention.
    pub coefficients: Vec<i128>,
    /// First `n` from which the polynomial reproduces every sample.
    pub stabilization_index: usize,
}

impl BinomialPolynomial {
    pub fn leading(&self) -> i128 {
        self.coefficients[0]
    }

    pub fn evaluate(&self, n: u64) -> Result<i128> {
        let d = u64::from(self.degree);
        let mut total = 0i128;
        for (i, &c) in self.coefficients.iter().enumerate() {
            let i = i as u64;
            let b = binomial(n + d - i, d - i)?;
            let term = c.checked_mul(b).ok_or(AlgebraError::Overflow("polynomial evaluation"))?;
            total = if i.is_multiple_of(2) { total.checked_add(term) } else { total.checked_sub(term) }
                .ok_or(AlgebraError::Overflow("polynomial evaluation"))?;
        }
        Ok(total)
    }
}

/// Exact `C(n, k)` for `n >= k >= 0`.
pub fn binomial(n: u64, k: u64) -> Result<i128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for j in 1..=k {
        acc = acc.checked_mul(i128::from(n - k + j)).ok_or(AlgebraError::Overflow("binomial coefficient"))?
            / i128::from(j);
    }
    Ok(acc)
}

fn differences(values: &[i128], order: usize) -> Result<Vec<i128>> {
    let mut current = values.to_vec();
    for _ in 0..order {
        current = current
            .windows(2)
            .map(|w| w[1].checked_sub(w[0]).ok_or(AlgebraError::Overflow("finite difference")))
            .collect::<Result<Vec<_>>>()?;
    }
    Ok(current)
}

fn constant_tail(diffs: &[i128], window: usize) -> Option<i128> {
    if diffs.len() < window || window == 0 {
        return None;
    }
    let tail = &diffs[diffs.len() - window..];
    tail.iter().all(|&d| d == tail[0]).then_some(tail[0])
}

/// Fits a degree-`degree` polynomial to the tail of `table`.
pub fn fit(table: &GrowthTable, degree: u32, window: usize) -> Result<BinomialPolynomial> {
    let d = degree as usize;
    let needed = d + window + 2;
    if window == 0 || table.values.len() < needed {
        return Err(AlgebraError::TableTooShort { len: table.values.len(), needed: needed.max(d + 3) });
    }
    let mut residual: Vec<i128> = table.values.iter().map(|&v| i128::from(v)).collect();
    let mut coefficients = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let order = d - i;
        let diffs = differences(&residual, order)?;
        let Some(constant) = constant_tail(&diffs, window) else {
            return Err(if i == 0 {
                classify_unstable(&residual, d, window)?
            } else {
                AlgebraError::NotStabilized(format!(
                    "{:?} table: order-{order} differences of the residual still moving",
                    table.kind
                ))
            });
        };
        coefficients.push(if i % 2 == 0 { constant } else { -constant });
        for (n, r) in residual.iter_mut().enumerate() {
            let b = binomial(n as u64 + order as u64, order as u64)?;
            let step = constant.checked_mul(b).ok_or(AlgebraError::Overflow("peeling"))?;
            *r = r.checked_sub(step).ok_or(AlgebraError::Overflow("peeling"))?;
        }
    }
    let stabilization_index = residual.iter().rposition(|&r| r != 0).map_or(0, |p| p + 1);
    if residual.len() - stabilization_index < d + window {
        return Err(AlgebraError::NotStabilized(format!(
            "{:?} table agrees with its polynomial only from n = {stabilization_index}",
            table.kind
        )));
    }
    Ok(BinomialPolynomial { degree, coefficients, stabilization_index })
}

/// Distinguishes a table that is still settling from one whose degree is
/// larger than requested (higher differences already constant and nonzero).
fn classify_unstable(values: &[i128], degree: usize, window: usize) -> Result<AlgebraError> {
    for extra in 1..=3 {
        let order = degree + extra;
        if values.len() < order + window {
            break;
        }
        if let Some(c) = constant_tail(&differences(values, order)?, window) {
            if c != 0 {
                return Ok(AlgebraError::DegreeExceeded(format!(
                    "order-{order} differences are constantly {c}, degree exceeds {degree}"
                )));
            }
        }
    }
    Ok(AlgebraError::NotStabilized(format!("order-{degree} differences still moving in the last {window}")))
}

/// Degree of the eventual Hilbert-Samuel polynomial.
pub fn hilbert_degree(dimension: usize) -> u32 {
    dimension as u32
}

/// Degree of the eventual irreducibility polynomial; 0 covers `t <= 1`.
pub fn irreducibility_degree(dimension: usize) -> u32 {
    dimension.saturating_sub(1) as u32
}

pub fn hilbert_coefficients(
    module: &ModulePresentation,
    ideal: &MonomialIdeal,
    n_max: u32,
) -> Result<BinomialPolynomial> {
    if let Some(v) = ideal.missing_pure_power() {
        return Err(AlgebraError::NotPrimary { variable: module.ambient().names()[v].clone() });
    }
    let samples = module.growth_samples(ideal, n_max)?;
    fit(&GrowthTable::new(GrowthKind::Hilbert, samples.hilbert), hilbert_degree(module.dimension()), DEFAULT_WINDOW)
}

pub fn irreducibility_coefficients(
    module: &ModulePresentation,
    ideal: &MonomialIdeal,
    n_max: u32,
) -> Result<BinomialPolynomial> {
    if let Some(v) = ideal.missing_pure_power() {
        return Err(AlgebraError::NotPrimary { variable: module.ambient().names()[v].clone() });
    }
    let samples = module.growth_samples(ideal, n_max)?;
    fit(
        &GrowthTable::new(GrowthKind::Irreducibility, samples.irreducibility),
        irreducibility_degree(module.dimension()),
        DEFAULT_WINDOW,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(values: &[u64]) -> GrowthTable {
        GrowthTable::new(GrowthKind::Hilbert, values.to_vec())
    }

    #[test]
    fn linear_table() {
        let p = fit(&table(&[1, 2, 3, 4, 5, 6, 7]), 1, 4).unwrap();
        assert_eq!(p.coefficients, vec![1, 0]);
        assert_eq!(p.stabilization_index, 0);
    }

    #[test]
    fn shifted_linear_gives_negative_second_coefficient() {
        // n + 1 + l with l = 3.
        let values: Vec<u64> = (0..10).map(|n| n + 1 + 3).collect();
        let p = fit(&table(&values), 1, 4).unwrap();
        assert_eq!(p.coefficients, vec![1, -3]);
    }

    #[test]
    fn constant_table() {
        let p = fit(&table(&[4; 8]), 0, 4).unwrap();
        assert_eq!(p.coefficients, vec![4]);
    }

    #[test]
    fn late_stabilization_is_located() {
        let p = fit(&table(&[0, 7, 1, 2, 3, 4, 5, 6, 7, 8]), 1, 4).unwrap();
        // n - 1 = C(n + 1, 1) - 2 for n >= 2.
        assert_eq!(p.coefficients, vec![1, 2]);
        assert_eq!(p.stabilization_index, 2);
    }

    #[test]
    fn too_short() {
        assert!(matches!(fit(&table(&[1, 2, 3]), 1, 4), Err(AlgebraError::TableTooShort { .. })));
    }

    #[test]
    fn degree_too_small() {
        let values: Vec<u64> = (0..12).map(|n| n * n).collect();
        assert!(matches!(fit(&table(&values), 1, 4), Err(AlgebraError::DegreeExceeded(_))));
    }

    #[test]
    fn still_moving() {
        let values = [1, 1, 1, 1, 1, 1, 1, 2];
        assert!(matches!(fit(&table(&values), 0, 4), Err(AlgebraError::NotStabilized(_))));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2).unwrap(), 10);
        assert_eq!(binomial(4, 0).unwrap(), 1);
        assert_eq!(binomial(2, 3).unwrap(), 0);
        assert_eq!(binomial(60, 30).unwrap(), 118264581564861424);
    }
}
