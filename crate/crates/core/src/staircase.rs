//! Dense staircase representation of a monomial ideal inside a bounded box.
//!
//! For bounds `b = (b_1, ..., b_s)` the box ideal is `(x_1^{b_1}, ..., x_s^{b_s})`.
//! A [`Staircase`] stores, for every prefix `p = (e_1, ..., e_{s-1})` with
//! `e_i < b_i`, the height `h(p)`: the least `e_s` such that `x^p * x_s^{e_s}`
//! lies in the ideal. Heights never exceed `b_s` and are non-increasing in `p`.
//!
//! Every staircase stands for an ideal that contains the box ideal. Sums and
//! products are exact modulo the box ideal; colons are exact whenever the
//! represented ideal genuinely contains it, which is how the module layer
//! uses them.

use crate::error::{AlgebraError, Result};
use crate::monomial::{Monomial, MonomialIdeal};

/// Upper bound on the number of prefix cells a staircase may allocate.
pub const MAX_CELLS: u128 = 1 << 26;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Staircase {
    bounds: Vec<u32>,
    strides: Vec<usize>,
    heights: Vec<u32>,
}

impl Staircase {
    /// The box ideal itself: every prefix has the full height `b_s`.
    pub fn box_ideal(bounds: &[u32]) -> Result<Self> {
        if bounds.is_empty() {
            return Err(AlgebraError::InvalidRing("staircase needs at least one variable".into()));
        }
        let prefix = &bounds[..bounds.len() - 1];
        let cells: u128 = prefix.iter().map(|&b| u128::from(b)).product();
        if cells > MAX_CELLS {
            return Err(AlgebraError::BoxTooLarge { cells, limit: MAX_CELLS });
        }
        let mut strides = vec![1usize; prefix.len()];
        for d in (0..prefix.len().saturating_sub(1)).rev() {
            strides[d] = strides[d + 1] * prefix[d + 1] as usize;
        }
        let top = *bounds.last().expect("nonempty");
        Ok(Self { bounds: bounds.to_vec(), strides, heights: vec![top; cells as usize] })
    }

    /// Staircase of `ideal + box ideal`.
    pub fn from_ideal(bounds: &[u32], ideal: &MonomialIdeal) -> Result<Self> {
        let mut s = Self::box_ideal(bounds)?;
        s.check_arity(ideal.arity())?;
        s.seed_generators(ideal.generators());
        Ok(s)
    }

    pub fn arity(&self) -> usize {
        self.bounds.len()
    }

    pub fn bounds(&self) -> &[u32] {
        &self.bounds
    }

    fn top(&self) -> u32 {
        *self.bounds.last().expect("nonempty")
    }

    fn prefix_len(&self) -> usize {
        self.bounds.len() - 1
    }

    fn check_arity(&self, arity: usize) -> Result<()> {
        if arity != self.arity() {
            return Err(AlgebraError::ArityMismatch { expected: self.arity(), found: arity });
        }
        Ok(())
    }

    fn check_same_box(&self, other: &Staircase) -> Result<()> {
        self.check_arity(other.arity())?;
        if self.bounds != other.bounds {
            return Err(AlgebraError::InvalidRing(format!(
                "staircase boxes differ: {:?} vs {:?}",
                self.bounds, other.bounds
            )));
        }
        Ok(())
    }

    /// Cell index of a prefix, or `None` when the prefix leaves the box.
    fn cell_of(&self, prefix: &[u32]) -> Option<usize> {
        let mut idx = 0usize;
        for (d, &e) in prefix.iter().enumerate() {
            if e >= self.bounds[d] {
                return None;
            }
            idx += e as usize * self.strides[d];
        }
        Some(idx)
    }

    /// Calls `f(cell, coords)` for every cell in row-major order.
    fn for_each_cell(&self, mut f: impl FnMut(usize, &[u32])) {
        let k = self.prefix_len();
        let mut coords = vec![0u32; k];
        for cell in 0..self.heights.len() {
            f(cell, &coords);
            for d in (0..k).rev() {
                coords[d] += 1;
                if coords[d] < self.bounds[d] {
                    break;
                }
                coords[d] = 0;
            }
        }
    }

    /// Lowers heights at each generator's prefix cell, then propagates the
    /// minimum upward along every prefix direction.
    fn seed_generators(&mut self, gens: &[Monomial]) {
        let k = self.prefix_len();
        let mut touched = false;
        for g in gens {
            let e = g.exponents();
            if let Some(cell) = self.cell_of(&e[..k]) {
                let h = &mut self.heights[cell];
                if e[k] < *h {
                    *h = e[k];
                    touched = true;
                }
            }
        }
        if touched {
            self.propagate_min();
        }
    }

    fn propagate_min(&mut self) {
        let k = self.prefix_len();
        for d in 0..k {
            let stride = self.strides[d];
            let mut coords = vec![0u32; k];
            for cell in 0..self.heights.len() {
                if coords[d] > 0 {
                    let below = self.heights[cell - stride];
                    if below < self.heights[cell] {
                        self.heights[cell] = below;
                    }
                }
                for dd in (0..k).rev() {
                    coords[dd] += 1;
                    if coords[dd] < self.bounds[dd] {
                        break;
                    }
                    coords[dd] = 0;
                }
            }
        }
    }

    /// Height at a prefix; cells outside the box have height 0.
    fn height_at(&self, prefix: &[u32]) -> u32 {
        self.cell_of(prefix).map_or(0, |c| self.heights[c])
    }

    pub fn contains(&self, u: &Monomial) -> Result<bool> {
        self.check_arity(u.arity())?;
        let e = u.exponents();
        let k = self.prefix_len();
        Ok(e[k] >= self.height_at(&e[..k]))
    }

    pub fn add(&self, other: &Staircase) -> Result<Staircase> {
        self.check_same_box(other)?;
        let heights = self.heights.iter().zip(&other.heights).map(|(a, b)| *a.min(b)).collect();
        Ok(Staircase { bounds: self.bounds.clone(), strides: self.strides.clone(), heights })
    }

    pub fn add_ideal(&self, ideal: &MonomialIdeal) -> Result<Staircase> {
        self.check_arity(ideal.arity())?;
        let mut out = self.clone();
        out.seed_generators(ideal.generators());
        Ok(out)
    }

    /// `self * ideal`, modulo the box ideal.
    pub fn multiply_ideal(&self, ideal: &MonomialIdeal) -> Result<Staircase> {
        self.check_arity(ideal.arity())?;
        let k = self.prefix_len();
        let top = self.top();
        // Generators whose prefix leaves the box contribute nothing inside it.
        let shifts: Vec<(&[u32], usize, u32)> = ideal
            .generators()
            .iter()
            .filter_map(|g| {
                let e = g.exponents();
                self.cell_of(&e[..k]).map(|offset| (&e[..k], offset, e[k]))
            })
            .collect();
        let mut heights = vec![top; self.heights.len()];
        self.for_each_cell(|cell, coords| {
            let mut best = top;
            for &(prefix, offset, last) in &shifts {
                if last >= best || !prefix.iter().zip(coords).all(|(g, p)| g <= p) {
                    continue;
                }
                let candidate = last.saturating_add(self.heights[cell - offset]);
                if candidate < best {
                    best = candidate;
                }
            }
            heights[cell] = best;
        });
        Ok(Staircase { bounds: self.bounds.clone(), strides: self.strides.clone(), heights })
    }

    /// `(self : ideal)`; exact when the represented ideal contains the box ideal.
    pub fn colon_ideal(&self, ideal: &MonomialIdeal) -> Result<Staircase> {
        self.check_arity(ideal.arity())?;
        if ideal.is_zero() {
            return Err(AlgebraError::ColonByZero);
        }
        let k = self.prefix_len();
        let mut heights = vec![0u32; self.heights.len()];
        let mut shifted = vec![0u32; k];
        self.for_each_cell(|cell, coords| {
            let mut need = 0u32;
            for g in ideal.generators() {
                let e = g.exponents();
                for d in 0..k {
                    shifted[d] = coords[d].saturating_add(e[d]);
                }
                let h = self.height_at(&shifted).saturating_sub(e[k]);
                need = need.max(h);
            }
            heights[cell] = need;
        });
        Ok(Staircase { bounds: self.bounds.clone(), strides: self.strides.clone(), heights })
    }

    /// `(self : m)` where `m` is generated by all variables.
    pub fn colon_maximal(&self) -> Staircase {
        self.colon_ideal(&MonomialIdeal::maximal(self.arity())).expect("maximal ideal is nonzero")
    }

    /// Number of standard monomials, i.e. the length of `P / ideal`.
    pub fn length(&self) -> Result<u64> {
        self.heights
            .iter()
            .try_fold(0u64, |acc, &h| acc.checked_add(u64::from(h)))
            .ok_or(AlgebraError::Overflow("quotient length"))
    }

    fn is_corner(&self, cell: usize, coords: &[u32], scratch: &mut Vec<u32>) -> bool {
        let h = self.heights[cell];
        if h == 0 {
            return false;
        }
        scratch.clear();
        scratch.extend_from_slice(coords);
        for d in 0..coords.len() {
            scratch[d] += 1;
            let up = self.height_at(scratch);
            scratch[d] -= 1;
            if up >= h {
                return false;
            }
        }
        true
    }

    /// Counts staircase corners: standard monomials `u` with `x_i * u` in the
    /// ideal for every variable.
    pub fn socle_count(&self) -> u64 {
        let mut count = 0u64;
        let mut scratch = Vec::new();
        self.for_each_cell(|cell, coords| {
            if self.is_corner(cell, coords, &mut scratch) {
                count += 1;
            }
        });
        count
    }

    /// The corner monomials themselves.
    pub fn socle_monomials(&self) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut scratch = Vec::new();
        self.for_each_cell(|cell, coords| {
            if self.is_corner(cell, coords, &mut scratch) {
                let mut e = coords.to_vec();
                e.push(self.heights[cell] - 1);
                out.push(Monomial::new(e));
            }
        });
        out
    }

    /// Every standard monomial, in row-major prefix order.
    pub fn standard_monomials(&self) -> Vec<Monomial> {
        let mut out = Vec::new();
        self.for_each_cell(|cell, coords| {
            for last in 0..self.heights[cell] {
                let mut e = coords.to_vec();
                e.push(last);
                out.push(Monomial::new(e));
            }
        });
        out
    }

    pub fn is_subset_of(&self, other: &Staircase) -> Result<bool> {
        self.check_same_box(other)?;
        Ok(self.heights.iter().zip(&other.heights).all(|(a, b)| a >= b))
    }

    /// Minimal generators of the represented ideal (box ideal included).
    pub fn to_ideal(&self) -> MonomialIdeal {
        let s = self.arity();
        let k = self.prefix_len();
        if self.bounds.contains(&0) {
            return MonomialIdeal::unit(s);
        }
        let mut gens = Vec::new();
        let mut scratch = vec![0u32; k];
        self.for_each_cell(|cell, coords| {
            let h = self.heights[cell];
            let minimal = (0..k).all(|d| {
                if coords[d] == 0 {
                    return true;
                }
                scratch.copy_from_slice(coords);
                scratch[d] -= 1;
                self.height_at(&scratch) > h
            });
            if minimal {
                let mut e = coords.to_vec();
                e.push(h);
                gens.push(Monomial::new(e));
            }
        });
        for d in 0..k {
            let mut below = vec![0u32; k];
            below[d] = self.bounds[d] - 1;
            if self.height_at(&below) > 0 {
                gens.push(Monomial::pure_power(s, d, self.bounds[d]));
            }
        }
        MonomialIdeal::minimalize(s, gens).expect("arity matches")
    }
}
