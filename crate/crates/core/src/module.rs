//! Modules presented as finite direct sums of cyclic quotients `P / J_i`.
//!
//! Every submodule that appears below (`I^n M`, colon submodules, socles)
//! splits along the summands, so each quantity is a sum or intersection of
//! per-component ideal computations.

use crate::error::{AlgebraError, Result};
use crate::monomial::{AmbientRing, MonomialIdeal};
use crate::quotient::{krull_dimension, length_artinian, socle_length_general};
use crate::staircase::Staircase;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModulePresentation {
    ambient: AmbientRing,
    components: Vec<MonomialIdeal>,
    dimension: usize,
}

/// Exact samples of the Hilbert-Samuel and irreducibility functions for
/// `n = 0..=n_max`, plus whether `m = I^{n+1}M :_P I^n M` holds at each `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthSamples {
    pub hilbert: Vec<u64>,
    pub irreducibility: Vec<u64>,
    pub criterion: Vec<bool>,
}

/// Staircases of `I^n + J` for `n = 0..=top`, all in the box of `I^top + J`.
struct PowerTower {
    levels: Vec<Staircase>,
}

impl PowerTower {
    fn build(ideal: &MonomialIdeal, component: &MonomialIdeal, index: usize, top: u32) -> Result<Self> {
        let bounds = tower_bounds(ideal, component, index, top)?;
        let mut levels = Vec::with_capacity(top as usize + 1);
        let mut current = Staircase::from_ideal(&bounds, &MonomialIdeal::unit(ideal.arity()))?;
        levels.push(current.clone());
        for _ in 0..top {
            current = current.multiply_ideal(ideal)?.add_ideal(component)?;
            levels.push(current.clone());
        }
        Ok(Self { levels })
    }
}

/// Pure-power exponents of `I^top + J`, not necessarily the least ones: if
/// `x^a` lies in `I + J` then `x^(a*top)` lies in `(I + J)^top`, inside `I^top + J`.
fn tower_bounds(ideal: &MonomialIdeal, component: &MonomialIdeal, index: usize, top: u32) -> Result<Vec<u32>> {
    let sum = ideal.add(component)?;
    (0..ideal.arity())
        .map(|v| {
            let from_sum = sum.pure_power_exponent(v).ok_or(AlgebraError::InfiniteLength { component: index })?;
            let scaled = from_sum.checked_mul(top).ok_or(AlgebraError::Overflow("staircase bounds"))?;
            Ok(match component.pure_power_exponent(v) {
                Some(e) => e.min(scaled),
                None => scaled,
            })
        })
        .collect()
}

fn require_primary(ideal: &MonomialIdeal) -> Result<()> {
    if ideal.is_unit() {
        return Err(AlgebraError::UnitIdeal);
    }
    if let Some(v) = ideal.missing_pure_power() {
        return Err(AlgebraError::NotPrimary { variable: format!("x{}", v + 1) });
    }
    Ok(())
}

impl ModulePresentation {
    pub fn new(ambient: AmbientRing, components: Vec<MonomialIdeal>) -> Result<Self> {
        if components.is_empty() {
            return Err(AlgebraError::NoComponents);
        }
        let mut dimension = 0;
        for c in &components {
            if c.arity() != ambient.arity() {
                return Err(AlgebraError::ArityMismatch { expected: ambient.arity(), found: c.arity() });
            }
            if c.is_unit() {
                return Err(AlgebraError::UnitIdeal);
            }
            dimension = dimension.max(krull_dimension(c)?);
        }
        Ok(Self { ambient, components, dimension })
    }

    /// The free module `P` of rank one.
    pub fn free(ambient: AmbientRing) -> Self {
        let zero = MonomialIdeal::zero(ambient.arity());
        Self::new(ambient, vec![zero]).expect("the zero ideal is a valid component")
    }

    pub fn ambient(&self) -> &AmbientRing {
        &self.ambient
    }

    pub fn arity(&self) -> usize {
        self.ambient.arity()
    }

    pub fn components(&self) -> &[MonomialIdeal] {
        &self.components
    }

    /// Krull dimension `t` of the module.
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    fn check_ideal(&self, ideal: &MonomialIdeal) -> Result<()> {
        if ideal.arity() != self.arity() {
            return Err(AlgebraError::ArityMismatch { expected: self.arity(), found: ideal.arity() });
        }
        Ok(())
    }

    /// The ideal `I^n + J_i`, whose quotient by `J_i` is the i-th summand of `I^n M`.
    pub fn component_at(&self, ideal: &MonomialIdeal, n: u32, index: usize) -> Result<MonomialIdeal> {
        self.check_ideal(ideal)?;
        let component =
            self.components.get(index).ok_or(AlgebraError::IndexOutOfRange { index, len: self.components.len() })?;
        ideal.power(n)?.add(component)
    }

    fn towers(&self, ideal: &MonomialIdeal, top: u32) -> Result<Vec<PowerTower>> {
        self.check_ideal(ideal)?;
        self.components.iter().enumerate().map(|(i, c)| PowerTower::build(ideal, c, i, top)).collect()
    }

    /// `l(M / I^{n+1} M)`.
    pub fn hilbert_value(&self, ideal: &MonomialIdeal, n: u32) -> Result<u64> {
        require_primary(ideal)?;
        let top = n.checked_add(1).ok_or(AlgebraError::Overflow("power index"))?;
        let mut total = 0u64;
        for tower in self.towers(ideal, top)? {
            let len = tower.levels[top as usize].length()?;
            total = total.checked_add(len).ok_or(AlgebraError::Overflow("hilbert value"))?;
        }
        Ok(total)
    }

    /// `l((I^{n+1} M :_M m) / I^{n+1} M)`, the index of reducibility of `I^{n+1} M`.
    pub fn irreducibility_value(&self, ideal: &MonomialIdeal, n: u32) -> Result<u64> {
        require_primary(ideal)?;
        let top = n.checked_add(1).ok_or(AlgebraError::Overflow("power index"))?;
        let mut total = 0u64;
        for tower in self.towers(ideal, top)? {
            total = total
                .checked_add(tower.levels[top as usize].socle_count())
                .ok_or(AlgebraError::Overflow("irreducibility value"))?;
        }
        Ok(total)
    }

    /// Samples both growth functions at `n = 0..=n_max` in one pass over the
    /// powers of `ideal`. Only needs `ideal + J_i` to be m-primary for every
    /// component, so parameter ideals of the module are accepted too.
    pub fn growth_samples(&self, ideal: &MonomialIdeal, n_max: u32) -> Result<GrowthSamples> {
        let top = n_max.checked_add(1).ok_or(AlgebraError::Overflow("power index"))?;
        let towers = self.towers(ideal, top)?;
        let maximal = MonomialIdeal::maximal(self.arity());
        let len = n_max as usize + 1;
        let mut hilbert = vec![0u64; len];
        let mut irreducibility = vec![0u64; len];
        let mut absorbs = vec![true; len];
        let mut proper = vec![false; len];
        for (tower, component) in towers.iter().zip(&self.components) {
            for n in 0..len {
                let (this, next) = (&tower.levels[n], &tower.levels[n + 1]);
                hilbert[n] = hilbert[n].checked_add(next.length()?).ok_or(AlgebraError::Overflow("hilbert value"))?;
                irreducibility[n] = irreducibility[n]
                    .checked_add(next.socle_count())
                    .ok_or(AlgebraError::Overflow("irreducibility value"))?;
                if absorbs[n] {
                    let moved = this.multiply_ideal(&maximal)?.add_ideal(component)?;
                    absorbs[n] = moved.is_subset_of(next)?;
                }
                if this != next {
                    proper[n] = true;
                }
            }
        }
        let criterion = absorbs.iter().zip(&proper).map(|(a, p)| *a && *p).collect();
        Ok(GrowthSamples { hilbert, irreducibility, criterion })
    }

    /// `l((0 :_M m))`.
    pub fn module_socle_length(&self) -> Result<u64> {
        self.components.iter().try_fold(0u64, |acc, c| {
            acc.checked_add(socle_length_general(c)?).ok_or(AlgebraError::Overflow("socle length"))
        })
    }

    /// `I^{n+1} M :_P I^n M`, computed on staircases.
    pub fn colon_ring_ideal(&self, ideal: &MonomialIdeal, n: u32) -> Result<MonomialIdeal> {
        require_primary(ideal)?;
        let top = n.checked_add(1).ok_or(AlgebraError::Overflow("power index"))?;
        let mut result = MonomialIdeal::unit(self.arity());
        for tower in self.towers(ideal, top)? {
            let this = tower.levels[n as usize].to_ideal();
            let part = tower.levels[top as usize].colon_ideal(&this)?.to_ideal();
            result = result.intersect(&part)?;
        }
        Ok(result)
    }

    /// The same colon ideal straight from the definition, on explicit generators.
    pub fn colon_ring_ideal_explicit(&self, ideal: &MonomialIdeal, n: u32) -> Result<MonomialIdeal> {
        require_primary(ideal)?;
        let lower = ideal.power(n)?;
        let upper = ideal.power(n + 1)?;
        let mut result = MonomialIdeal::unit(self.arity());
        for c in &self.components {
            result = result.intersect(&upper.add(c)?.colon(&lower)?)?;
        }
        Ok(result)
    }

    /// `l(M / QM)`; fails when some `Q + J_i` is not m-primary.
    pub fn length_mod(&self, q: &MonomialIdeal) -> Result<u64> {
        self.check_ideal(q)?;
        let mut total = 0u64;
        for (i, c) in self.components.iter().enumerate() {
            let sum = q.add(c)?;
            if sum.missing_pure_power().is_some() {
                return Err(AlgebraError::InfiniteLength { component: i });
            }
            total = total.checked_add(length_artinian(&sum)?).ok_or(AlgebraError::Overflow("length"))?;
        }
        Ok(total)
    }

    /// `mu(M) = l(M / mM)`: one per cyclic summand, since every `J_i` is proper.
    pub fn minimal_generator_count(&self) -> u64 {
        self.components.len() as u64
    }

    /// Checks `I^{n+k} M :_M J = I^n (I^k M :_M J) + (0 :_M J)` summand by
    /// summand on staircases. Requires `I + J_i` m-primary for every summand.
    pub fn artin_rees_identity_holds(&self, ideal: &MonomialIdeal, j: &MonomialIdeal, k: u32, n: u32) -> Result<bool> {
        self.check_ideal(ideal)?;
        self.check_ideal(j)?;
        if j.is_zero() {
            return Err(AlgebraError::ColonByZero);
        }
        let top = n.checked_add(k).ok_or(AlgebraError::Overflow("power index"))?;
        for (i, c) in self.components.iter().enumerate() {
            let tower = PowerTower::build(ideal, c, i, top)?;
            let lhs = tower.levels[top as usize].colon_ideal(j)?;
            let annihilated = c.colon(j)?.add(c)?;
            let mut rhs = tower.levels[k as usize].colon_ideal(j)?;
            for _ in 0..n {
                rhs = rhs.multiply_ideal(ideal)?;
            }
            if rhs.add_ideal(&annihilated)? != lhs {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The same identity on explicit generators, straight from the definition.
    pub fn artin_rees_identity_holds_explicit(
        &self,
        ideal: &MonomialIdeal,
        j: &MonomialIdeal,
        k: u32,
        n: u32,
    ) -> Result<bool> {
        self.check_ideal(ideal)?;
        self.check_ideal(j)?;
        if j.is_zero() {
            return Err(AlgebraError::ColonByZero);
        }
        let i_n = ideal.power(n)?;
        let i_k = ideal.power(k)?;
        let i_nk = ideal.power(n + k)?;
        for c in &self.components {
            let lhs = i_nk.add(c)?.colon(j)?;
            let inner = i_k.add(c)?.colon(j)?;
            let rhs = i_n.multiply(&inner)?.add(&c.colon(j)?)?.add(c)?;
            if !lhs.equals(&rhs)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Least `k <= k_max` for which the Artin-Rees colon identity holds for
    /// every `1 <= n <= n_max`.
    pub fn find_artin_rees_k(&self, ideal: &MonomialIdeal, j: &MonomialIdeal, n_max: u32, k_max: u32) -> Result<u32> {
        require_primary(ideal)?;
        self.check_ideal(j)?;
        if j.is_zero() {
            return Err(AlgebraError::ColonByZero);
        }
        let top = n_max.checked_add(k_max).ok_or(AlgebraError::Overflow("power index"))?;
        // Per summand: colons of every power by J, and the (0 :_M J) part.
        let mut summands = Vec::with_capacity(self.components.len());
        for (i, c) in self.components.iter().enumerate() {
            let tower = PowerTower::build(ideal, c, i, top)?;
            let colons = tower.levels.iter().map(|level| level.colon_ideal(j)).collect::<Result<Vec<_>>>()?;
            let annihilated = c.colon(j)?.add(c)?;
            summands.push((colons, annihilated));
        }
        'search: for k in 0..=k_max {
            for (colons, annihilated) in &summands {
                let mut rhs = colons[k as usize].clone();
                for n in 1..=n_max {
                    rhs = rhs.multiply_ideal(ideal)?;
                    if rhs.add_ideal(annihilated)? != colons[(n + k) as usize] {
                        continue 'search;
                    }
                }
            }
            return Ok(k);
        }
        Err(AlgebraError::NotFoundWithinBound { k_max: k_max as usize })
    }
}
