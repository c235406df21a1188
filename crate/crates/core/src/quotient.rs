//! Lengths, socles and dimension of cyclic quotients `P / A`.

use std::collections::{HashSet, VecDeque};

use crate::error::{AlgebraError, Result};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::staircase::Staircase;

/// The standard monomials of an m-primary ideal, found by sweeping the box
/// cut out by its pure powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardMonomialSet {
    pub ideal: MonomialIdeal,
    pub monomials: Vec<Monomial>,
    pub box_bounds: Vec<u32>,
}

impl StandardMonomialSet {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }
}

/// Least pure-power exponent of every variable, or the first variable lacking one.
pub fn box_bounds(a: &MonomialIdeal) -> Result<Vec<u32>> {
    (0..a.arity()).map(|i| a.pure_power_exponent(i).ok_or_else(|| not_primary(i))).collect()
}

fn not_primary(index: usize) -> AlgebraError {
    AlgebraError::NotPrimary { variable: format!("x{}", index + 1) }
}

/// Visits every exponent vector in `prod [0, b_i)`.
pub(crate) fn for_each_in_box(bounds: &[u32], mut f: impl FnMut(&Monomial)) {
    if bounds.contains(&0) {
        return;
    }
    let mut e = vec![0u32; bounds.len()];
    loop {
        f(&Monomial::new(e.clone()));
        let mut d = bounds.len();
        loop {
            if d == 0 {
                return;
            }
            d -= 1;
            e[d] += 1;
            if e[d] < bounds[d] {
                break;
            }
            e[d] = 0;
        }
    }
}

pub fn standard_monomials(a: &MonomialIdeal) -> Result<StandardMonomialSet> {
    let box_bounds = box_bounds(a)?;
    let mut monomials = Vec::new();
    for_each_in_box(&box_bounds, |u| {
        if !a.generators().iter().any(|g| g.divides_unchecked(u)) {
            monomials.push(u.clone());
        }
    });
    Ok(StandardMonomialSet { ideal: a.clone(), monomials, box_bounds })
}

/// Staircase of an m-primary ideal in its own pure-power box.
pub fn staircase_of(a: &MonomialIdeal) -> Result<Staircase> {
    Staircase::from_ideal(&box_bounds(a)?, a)
}

/// `dim_K P / A` for m-primary `A` (0 for the unit ideal).
pub fn length_artinian(a: &MonomialIdeal) -> Result<u64> {
    staircase_of(a)?.length()
}

/// Socle dimension of `P / A`, counted as staircase corners.
pub fn socle_length_artinian(a: &MonomialIdeal) -> Result<u64> {
    Ok(staircase_of(a)?.socle_count())
}

/// Socle dimension of `P / A` through the colon ideal: the number of box
/// monomials lying in `(A : m)` but not in `A`.
pub fn socle_length_via_colon(a: &MonomialIdeal) -> Result<u64> {
    let bounds = box_bounds(a)?;
    let colon = a.colon(&MonomialIdeal::maximal(a.arity()))?;
    let mut count = 0u64;
    for_each_in_box(&bounds, |u| {
        let in_a = a.generators().iter().any(|g| g.divides_unchecked(u));
        if !in_a && colon.generators().iter().any(|g| g.divides_unchecked(u)) {
            count += 1;
        }
    });
    Ok(count)
}

/// `dim_K (J : m) / J` for any proper monomial ideal, by a breadth-first walk
/// from the generators of `J : m` that are not in `J`.
pub fn socle_length_general(j: &MonomialIdeal) -> Result<u64> {
    if j.is_unit() {
        return Err(AlgebraError::UnitIdeal);
    }
    let s = j.arity();
    let colon = j.colon(&MonomialIdeal::maximal(s))?;
    let outside = |u: &Monomial| !j.generators().iter().any(|g| g.divides_unchecked(u));
    let mut seen: HashSet<Monomial> = HashSet::new();
    let mut queue: VecDeque<Monomial> = VecDeque::new();
    for g in colon.generators() {
        if outside(g) && seen.insert(g.clone()) {
            queue.push_back(g.clone());
        }
    }
    while let Some(u) = queue.pop_front() {
        for i in 0..s {
            let v = u.try_mul(&Monomial::variable(s, i))?;
            if outside(&v) && seen.insert(v.clone()) {
                queue.push_back(v);
            }
        }
    }
    Ok(seen.len() as u64)
}

/// Krull dimension of `P / J`: `s` minus the smallest set of variables meeting
/// the support of every generator of the radical.
pub fn krull_dimension(j: &MonomialIdeal) -> Result<usize> {
    if j.is_unit() {
        return Err(AlgebraError::UnitIdeal);
    }
    let s = j.arity();
    if s > 24 {
        return Err(AlgebraError::InvalidRing(format!("vertex-cover search over {s} variables")));
    }
    let supports: Vec<u32> = j
        .radical()
        .generators()
        .iter()
        .map(|g| g.exponents().iter().enumerate().filter(|(_, &e)| e > 0).fold(0u32, |acc, (i, _)| acc | 1 << i))
        .collect();
    let min_cover = (0u32..1 << s)
        .filter(|&cover| supports.iter().all(|&sup| sup & cover != 0))
        .map(u32::count_ones)
        .min()
        .expect("the full variable set covers every proper generator");
    Ok(s - min_cover as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(arity: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(arity, gens).unwrap()
    }

    #[test]
    fn standard_monomials_of_square() {
        let a = ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]);
        let sm = standard_monomials(&a).unwrap();
        assert_eq!(sm.len(), 3);
        assert_eq!(sm.box_bounds, vec![2, 2]);
        assert_eq!(length_artinian(&a).unwrap(), 3);
        assert_eq!(socle_length_artinian(&a).unwrap(), 2);
        assert_eq!(socle_length_via_colon(&a).unwrap(), 2);
    }

    #[test]
    fn maximal_ideal_and_unit() {
        let mx = MonomialIdeal::maximal(3);
        assert_eq!(length_artinian(&mx).unwrap(), 1);
        assert_eq!(standard_monomials(&mx).unwrap().monomials, vec![Monomial::one(3)]);
        assert_eq!(length_artinian(&MonomialIdeal::unit(2)).unwrap(), 0);
        assert!(standard_monomials(&MonomialIdeal::unit(2)).unwrap().is_empty());
    }

    #[test]
    fn one_variable_powers() {
        assert_eq!(length_artinian(&ideal(1, &[&[3]])).unwrap(), 3);
        for n in 0..6u32 {
            assert_eq!(socle_length_artinian(&ideal(1, &[&[n + 1]])).unwrap(), 1);
        }
    }

    #[test]
    fn non_primary_is_rejected() {
        let a = ideal(2, &[&[1, 0]]);
        assert!(matches!(length_artinian(&a), Err(AlgebraError::NotPrimary { .. })));
        assert!(matches!(socle_length_artinian(&a), Err(AlgebraError::NotPrimary { .. })));
        assert!(matches!(standard_monomials(&a), Err(AlgebraError::NotPrimary { .. })));
    }

    #[test]
    fn general_socle() {
        assert_eq!(socle_length_general(&MonomialIdeal::zero(1)).unwrap(), 0);
        assert_eq!(socle_length_general(&ideal(1, &[&[1]])).unwrap(), 1);
        assert_eq!(socle_length_general(&MonomialIdeal::unit(1)), Err(AlgebraError::UnitIdeal));
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(krull_dimension(&ideal(2, &[&[1, 1]])).unwrap(), 1);
        assert_eq!(krull_dimension(&MonomialIdeal::zero(4)).unwrap(), 4);
        assert_eq!(krull_dimension(&ideal(2, &[&[2, 0], &[0, 5]])).unwrap(), 0);
        assert_eq!(krull_dimension(&MonomialIdeal::unit(2)), Err(AlgebraError::UnitIdeal));
    }
}
