//! Monomials and monomial ideals in a polynomial ring `K[x_1, ..., x_s]`.
//!
//! The coefficient field never enters any computation: every quantity the
//! crate reports is a count of monomials. Ideals are stored by their minimal
//! generators in graded-lexicographic order, so two ideals are equal exactly
//! when their generator lists are equal.

use std::cmp::{Ordering, Reverse};
use std::collections::HashSet;
use std::fmt;

use crate::error::{AlgebraError, Result};

/// The ambient polynomial ring, identified by its variable names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AmbientRing {
    names: Vec<String>,
}

impl AmbientRing {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(AlgebraError::InvalidRing("at least one variable is required".into()));
        }
        let mut seen = HashSet::new();
        for name in &names {
            if name.is_empty() {
                return Err(AlgebraError::InvalidRing("empty variable name".into()));
            }
            if !seen.insert(name.as_str()) {
                return Err(AlgebraError::InvalidRing(format!("duplicate variable `{name}`")));
            }
        }
        Ok(Self { names })
    }

    /// Ring with variables `x1, ..., xs`.
    pub fn with_arity(arity: usize) -> Result<Self> {
        Self::new((1..=arity).map(|i| format!("x{i}")))
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn variable(&self, index: usize) -> Monomial {
        Monomial::variable(self.arity(), index)
    }

    /// The homogeneous maximal ideal generated by all variables.
    pub fn maximal_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::maximal(self.arity())
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (name, &e) in self.names.iter().zip(m.exponents()) {
            match e {
                0 => {}
                1 => parts.push(name.clone()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        parts.join("*")
    }

    pub fn format_ideal(&self, ideal: &MonomialIdeal) -> String {
        if ideal.is_zero() {
            return "(0)".to_string();
        }
        let gens: Vec<String> = ideal.generators().iter().map(|g| self.format_monomial(g)).collect();
        format!("({})", gens.join(", "))
    }
}

/// An exponent vector. The all-zero vector is the monomial `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self { exponents }
    }

    pub fn one(arity: usize) -> Self {
        Self { exponents: vec![0; arity] }
    }

    pub fn variable(arity: usize, index: usize) -> Self {
        let mut exponents = vec![0; arity];
        exponents[index] = 1;
        Self { exponents }
    }

    pub fn pure_power(arity: usize, index: usize, exponent: u32) -> Self {
        let mut exponents = vec![0; arity];
        exponents[index] = exponent;
        Self { exponents }
    }

    pub fn arity(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn degree(&self) -> u64 {
        self.exponents.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// `Some((i, e))` when the monomial is `x_i^e` with `e > 0`.
    pub fn as_pure_power(&self) -> Option<(usize, u32)> {
        let mut found = None;
        for (i, &e) in self.exponents.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, e));
            }
        }
        found
    }

    fn check_arity(&self, other: &Monomial) -> Result<()> {
        if self.arity() != other.arity() {
            return Err(AlgebraError::ArityMismatch { expected: self.arity(), found: other.arity() });
        }
        Ok(())
    }

    /// Componentwise comparison; callers must have checked arity.
    pub(crate) fn divides_unchecked(&self, other: &Monomial) -> bool {
        self.exponents.iter().zip(&other.exponents).all(|(a, b)| a <= b)
    }

    pub fn divides(&self, other: &Monomial) -> Result<bool> {
        self.check_arity(other)?;
        Ok(self.divides_unchecked(other))
    }

    pub fn try_mul(&self, other: &Monomial) -> Result<Monomial> {
        self.check_arity(other)?;
        let exponents = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .map(|(a, b)| a.checked_add(*b).ok_or(AlgebraError::Overflow("monomial product")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial { exponents })
    }

    pub fn lcm(&self, other: &Monomial) -> Result<Monomial> {
        self.check_arity(other)?;
        let exponents = self.exponents.iter().zip(&other.exponents).map(|(a, b)| *a.max(b)).collect();
        Ok(Monomial { exponents })
    }

    pub fn gcd(&self, other: &Monomial) -> Result<Monomial> {
        self.check_arity(other)?;
        let exponents = self.exponents.iter().zip(&other.exponents).map(|(a, b)| *a.min(b)).collect();
        Ok(Monomial { exponents })
    }

    /// `self / gcd(self, other)`.
    pub fn divide_out(&self, other: &Monomial) -> Result<Monomial> {
        self.check_arity(other)?;
        let exponents = self.exponents.iter().zip(&other.exponents).map(|(a, b)| a.saturating_sub(*b)).collect();
        Ok(Monomial { exponents })
    }

    /// Graded-lexicographic comparison with `x_1 > x_2 > ... > x_s`.
    pub fn grlex_cmp(&self, other: &Monomial) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.exponents.cmp(&other.exponents))
    }
}

/// Sort key for the canonical generator order: by degree, and within a degree
/// the lexicographically larger monomial first (`x^2, x*y, y^2`).
fn canonical_key(m: &Monomial) -> (u64, Reverse<&[u32]>) {
    (m.degree(), Reverse(m.exponents()))
}

/// A monomial ideal, stored by its minimal generators in canonical order.
/// No generators means the zero ideal; the single generator `1` is the unit ideal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    arity: usize,
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn zero(arity: usize) -> Self {
        Self { arity, generators: Vec::new() }
    }

    pub fn unit(arity: usize) -> Self {
        Self { arity, generators: vec![Monomial::one(arity)] }
    }

    pub fn maximal(arity: usize) -> Self {
        Self { arity, generators: (0..arity).map(|i| Monomial::variable(arity, i)).collect() }
    }

    /// The ideal generated by `gens`, reduced to its minimal generators.
    pub fn minimalize(arity: usize, gens: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let mut candidates = Vec::new();
        for g in gens {
            if g.arity() != arity {
                return Err(AlgebraError::ArityMismatch { expected: arity, found: g.arity() });
            }
            candidates.push(g);
        }
        Ok(Self { arity, generators: minimal_elements(candidates) })
    }

    /// Ideal generated by exponent vectors.
    pub fn from_exponents(arity: usize, gens: &[&[u32]]) -> Result<Self> {
        Self::minimalize(arity, gens.iter().map(|e| Monomial::new(e.to_vec())))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(Monomial::is_one)
    }

    pub fn is_proper(&self) -> bool {
        !self.is_unit()
    }

    fn check_arity(&self, other: &MonomialIdeal) -> Result<()> {
        if self.arity != other.arity {
            return Err(AlgebraError::ArityMismatch { expected: self.arity, found: other.arity });
        }
        Ok(())
    }

    pub fn contains(&self, u: &Monomial) -> Result<bool> {
        if u.arity() != self.arity {
            return Err(AlgebraError::ArityMismatch { expected: self.arity, found: u.arity() });
        }
        Ok(self.generators.iter().any(|g| g.divides_unchecked(u)))
    }

    /// True when every generator of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &MonomialIdeal) -> Result<bool> {
        self.check_arity(other)?;
        Ok(self.generators.iter().all(|g| other.generators.iter().any(|h| h.divides_unchecked(g))))
    }

    pub fn equals(&self, other: &MonomialIdeal) -> Result<bool> {
        self.check_arity(other)?;
        Ok(self.generators == other.generators)
    }

    pub fn add(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_arity(other)?;
        Self::minimalize(self.arity, self.generators.iter().chain(&other.generators).cloned())
    }

    pub fn multiply(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_arity(other)?;
        let mut products = Vec::with_capacity(self.generators.len() * other.generators.len());
        for a in &self.generators {
            for b in &other.generators {
                products.push(a.try_mul(b)?);
            }
        }
        Self::minimalize(self.arity, products)
    }

    pub fn power(&self, n: u32) -> Result<MonomialIdeal> {
        let mut result = MonomialIdeal::unit(self.arity);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result.multiply(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.multiply(&base)?;
            }
        }
        Ok(result)
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_arity(other)?;
        let mut lcms = Vec::with_capacity(self.generators.len() * other.generators.len());
        for a in &self.generators {
            for b in &other.generators {
                lcms.push(a.lcm(b)?);
            }
        }
        Self::minimalize(self.arity, lcms)
    }

    /// `(self : u)`, generated by `g / gcd(g, u)`.
    pub fn colon_monomial(&self, u: &Monomial) -> Result<MonomialIdeal> {
        let quotients = self.generators.iter().map(|g| g.divide_out(u)).collect::<Result<Vec<_>>>()?;
        Self::minimalize(self.arity, quotients)
    }

    /// `(self : other) = { r : r * other ⊆ self }`.
    pub fn colon(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_arity(other)?;
        if other.is_zero() {
            return Err(AlgebraError::ColonByZero);
        }
        let mut result: Option<MonomialIdeal> = None;
        for u in &other.generators {
            let part = self.colon_monomial(u)?;
            result = Some(match result {
                None => part,
                Some(acc) => acc.intersect(&part)?,
            });
            if result.as_ref().is_some_and(MonomialIdeal::is_zero) {
                break;
            }
        }
        Ok(result.expect("nonzero ideal has a generator"))
    }

    pub fn radical(&self) -> MonomialIdeal {
        let clamped = self
            .generators
            .iter()
            .map(|g| Monomial::new(g.exponents().iter().map(|&e| e.min(1)).collect()))
            .collect::<Vec<_>>();
        MonomialIdeal { arity: self.arity, generators: minimal_elements(clamped) }
    }

    /// Least `e` with `x_i^e` in the ideal, if any.
    pub fn pure_power_exponent(&self, index: usize) -> Option<u32> {
        self.generators
            .iter()
            .filter_map(|g| {
                if g.is_one() {
                    return Some(0);
                }
                match g.as_pure_power() {
                    Some((i, e)) if i == index => Some(e),
                    _ => None,
                }
            })
            .min()
    }

    /// First variable index with no pure power among the generators.
    pub fn missing_pure_power(&self) -> Option<usize> {
        (0..self.arity).find(|&i| self.pure_power_exponent(i).is_none())
    }

    pub fn is_m_primary(&self) -> bool {
        self.is_proper() && self.missing_pure_power().is_none()
    }

    pub fn max_generator_degree(&self) -> u64 {
        self.generators.iter().map(Monomial::degree).max().unwrap_or(0)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = AmbientRing::with_arity(self.arity.max(1)).map_err(|_| fmt::Error)?;
        f.write_str(&ring.format_ideal(self))
    }
}

/// Divisibility-minimal elements of `candidates`, canonically sorted.
fn minimal_elements(mut candidates: Vec<Monomial>) -> Vec<Monomial> {
    candidates.sort_by(|a, b| canonical_key(a).cmp(&canonical_key(b)));
    candidates.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(candidates.len());
    for c in candidates {
        // Anything dividing `c` has degree <= deg c and so was seen earlier.
        if !kept.iter().any(|k| k.divides_unchecked(&c)) {
            kept.push(c);
        }
    }
    kept
}
