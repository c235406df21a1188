//! Verdicts on the multiplicity inequality, its m-adic equality case, the
//! Ulrich criterion, the colon-identity chain, and the two worked examples.

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::fitter::{
    binomial, fit, hilbert_degree, irreducibility_degree, BinomialPolynomial, GrowthKind, GrowthTable, DEFAULT_WINDOW,
};
use crate::module::{GrowthSamples, ModulePresentation};
use crate::monomial::{AmbientRing, Monomial, MonomialIdeal};
use crate::report::decimal;

/// Multiplicities of `M` with respect to `I` and the verdict on
/// `f0 <= e0` (`t != 1`) or `f0 <= e0 + l(0 :_M m)` (`t = 1`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiplicityReport {
    pub t: usize,
    #[serde(with = "decimal")]
    pub e0: i128,
    #[serde(with = "decimal")]
    pub f0: i128,
    #[serde(with = "decimal")]
    pub socle0: u64,
    #[serde(with = "decimal")]
    pub bound: i128,
    pub inequality_holds: bool,
    /// Least `n >= 1` from which `m = I^{n+1}M :_P I^n M` holds through `n_max`.
    pub equality_criterion_n: Option<u32>,
    /// Least `n >= 1` at which the colon equals `m`, stable or not.
    pub criterion_first_n: Option<u32>,
    pub equality_holds: bool,
    pub n_max_used: u32,
    pub n0_hilbert: usize,
    pub n0_irred: usize,
    #[serde(with = "decimal::seq")]
    pub hilbert_coefficients: Vec<i128>,
    #[serde(with = "decimal::seq")]
    pub irreducibility_coefficients: Vec<i128>,
}

impl MultiplicityReport {
    /// Both halves of the theorem: the bound, and equality when the colon criterion holds.
    pub fn theorem_holds(&self) -> bool {
        self.inequality_holds && (self.equality_criterion_n.is_none() || self.equality_holds)
    }
}

/// Sampled tables together with their fitted polynomials.
#[derive(Debug, Clone)]
pub struct FittedGrowth {
    pub samples: GrowthSamples,
    pub hilbert: BinomialPolynomial,
    pub irreducibility: BinomialPolynomial,
}

pub fn fitted_growth(
    module: &ModulePresentation,
    ideal: &MonomialIdeal,
    n_max: u32,
    window: usize,
) -> Result<FittedGrowth> {
    let samples = module.growth_samples(ideal, n_max)?;
    let t = module.dimension();
    let hilbert = fit(&GrowthTable::new(GrowthKind::Hilbert, samples.hilbert.clone()), hilbert_degree(t), window)?;
    let irreducibility = fit(
        &GrowthTable::new(GrowthKind::Irreducibility, samples.irreducibility.clone()),
        irreducibility_degree(t),
        window,
    )?;
    Ok(FittedGrowth { samples, hilbert, irreducibility })
}

fn require_primary(module: &ModulePresentation, ideal: &MonomialIdeal) -> Result<()> {
    if ideal.arity() != module.arity() {
        return Err(AlgebraError::ArityMismatch { expected: module.arity(), found: ideal.arity() });
    }
    if ideal.is_unit() {
        return Err(AlgebraError::UnitIdeal);
    }
    if let Some(v) = ideal.missing_pure_power() {
        return Err(AlgebraError::NotPrimary { variable: module.ambient().names()[v].clone() });
    }
    Ok(())
}

pub fn multiplicity_report(
    module: &ModulePresentation,
    ideal: &MonomialIdeal,
    n_max: u32,
) -> Result<MultiplicityReport> {
    multiplicity_report_with_window(module, ideal, n_max, DEFAULT_WINDOW)
}

pub fn multiplicity_report_with_window(
    module: &ModulePresentation,
    ideal: &MonomialIdeal,
    n_max: u32,
    window: usize,
) -> Result<MultiplicityReport> {
    require_primary(module, ideal)?;
    let growth = fitted_growth(module, ideal, n_max, window)?;
    let t = module.dimension();
    let socle0 = module.module_socle_length()?;
    let e0 = growth.hilbert.leading();
    let f0 = growth.irreducibility.leading();
    let bound = if t == 1 { e0 + i128::from(socle0) } else { e0 };
    let criterion = &growth.samples.criterion;
    let criterion_first_n = (1..=n_max).find(|&n| criterion[n as usize]);
    // The criterion is read on the tail: once it holds at n it holds at every
    // later n unless the powers of I kill M, which is exactly when it must not count.
    let equality_criterion_n = if criterion[n_max as usize] && n_max >= 1 {
        let mut start = n_max;
        while start > 1 && criterion[start as usize - 1] {
            start -= 1;
        }
        Some(start)
    } else {
        None
    };
    Ok(MultiplicityReport {
        t,
        e0,
        f0,
        socle0,
        bound,
        inequality_holds: f0 <= bound,
        equality_criterion_n,
        criterion_first_n,
        equality_holds: f0 == bound,
        n_max_used: n_max,
        n0_hilbert: growth.hilbert.stabilization_index,
        n0_irred: growth.irreducibility.stabilization_index,
        hilbert_coefficients: growth.hilbert.coefficients,
        irreducibility_coefficients: growth.irreducibility.coefficients,
    })
}

pub fn verify_theorem(module: &ModulePresentation, ideal: &MonomialIdeal, n_max: u32) -> Result<bool> {
    Ok(multiplicity_report(module, ideal, n_max)?.theorem_holds())
}

/// Outcome of the m-adic equality check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MadicVerdict {
    pub report: MultiplicityReport,
    /// Whether `m = m^{n+1}M :_P m^n M` held at every `1 <= n <= n_max`.
    pub criterion_everywhere: bool,
    /// Least `n` in range where the criterion failed.
    pub criterion_failure_n: Option<u32>,
}

impl MadicVerdict {
    /// The multiplicity equality alone; the criterion is informational.
    pub fn holds(&self) -> bool {
        self.report.equality_holds
    }
}

pub fn madic_check(module: &ModulePresentation, n_max: u32) -> Result<MadicVerdict> {
    let maximal = module.ambient().maximal_ideal();
    let report = multiplicity_report(module, &maximal, n_max)?;
    let samples = module.growth_samples(&maximal, n_max)?;
    let criterion_failure_n = (1..=n_max).find(|&n| !samples.criterion[n as usize]);
    Ok(MadicVerdict { report, criterion_everywhere: criterion_failure_n.is_none(), criterion_failure_n })
}

/// `f0 = e0` (`t != 1`) or `f0 = e0 + l(0 :_M m)` (`t = 1`) with `I = m`.
pub fn verify_madic_corollary(module: &ModulePresentation, n_max: u32) -> Result<bool> {
    Ok(madic_check(module, n_max)?.holds())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UlrichStatus {
    /// `f_Q^0 = l(M/QM)` with `t != 1`: the module is Ulrich.
    Certified,
    /// The equality fails for this `Q`; another parameter ideal might still work.
    NotCertifiedByThisQ,
    /// The criterion does not apply in dimension one.
    DimensionOneExcluded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UlrichReport {
    pub t: usize,
    pub q: String,
    pub is_parameter_ideal: bool,
    #[serde(rename = "fQ0", with = "decimal")]
    pub f_q0: i128,
    #[serde(with = "decimal")]
    pub colength: u64,
    #[serde(rename = "eQ0", with = "decimal")]
    pub e_q0: i128,
    pub cohen_macaulay: bool,
    #[serde(with = "decimal")]
    pub minimal_generators: u64,
    pub certified_ulrich: Option<bool>,
    pub status: UlrichStatus,
}

pub fn ulrich_check(module: &ModulePresentation, q: &MonomialIdeal, n_max: u32) -> Result<UlrichReport> {
    let t = module.dimension();
    if q.generators().len() != t {
        return Err(AlgebraError::NotParameterIdeal(format!(
            "{} minimal generators, dimension is {t}",
            q.generators().len()
        )));
    }
    let colength = match module.length_mod(q) {
        Ok(c) => c,
        Err(AlgebraError::InfiniteLength { component }) => {
            return Err(AlgebraError::NotParameterIdeal(format!("M/QM has infinite length along summand {component}")))
        }
        Err(e) => return Err(e),
    };
    let growth = fitted_growth(module, q, n_max, DEFAULT_WINDOW)?;
    let f_q0 = growth.irreducibility.leading();
    let e_q0 = growth.hilbert.leading();
    let equal = f_q0 == i128::from(colength);
    let (certified_ulrich, status) = if t == 1 {
        (None, UlrichStatus::DimensionOneExcluded)
    } else if equal {
        (Some(true), UlrichStatus::Certified)
    } else {
        (Some(false), UlrichStatus::NotCertifiedByThisQ)
    };
    Ok(UlrichReport {
        t,
        q: module.ambient().format_ideal(q),
        is_parameter_ideal: true,
        f_q0,
        colength,
        e_q0,
        cohen_macaulay: e_q0 == i128::from(colength),
        minimal_generators: module.minimal_generator_count(),
        certified_ulrich,
        status,
    })
}

/// The per-`n` chain `IR(n) <= H(n) - H(n-1) + l(0 :_M m)` from the
/// Artin-Rees threshold onward.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainCheck {
    pub threshold: u32,
    pub first_checked: u32,
    pub last_checked: u32,
    pub first_violation: Option<u32>,
}

impl ChainCheck {
    pub fn holds(&self) -> bool {
        self.first_violation.is_none()
    }
}

pub fn chain_inequality_check(
    module: &ModulePresentation,
    ideal: &MonomialIdeal,
    n_lo: u32,
    n_hi: u32,
    k_max: u32,
) -> Result<ChainCheck> {
    require_primary(module, ideal)?;
    let maximal = module.ambient().maximal_ideal();
    let threshold = module.find_artin_rees_k(ideal, &maximal, n_hi.max(1), k_max)?;
    let samples = module.growth_samples(ideal, n_hi)?;
    let socle0 = module.module_socle_length()?;
    let first_checked = n_lo.max(threshold).max(1);
    let first_violation = (first_checked..=n_hi).find(|&n| {
        let n = n as usize;
        let jump = samples.hilbert[n] - samples.hilbert[n - 1];
        samples.irreducibility[n] > jump + socle0
    });
    Ok(ChainCheck { threshold, first_checked, last_checked: n_hi, first_violation })
}

/// One named assertion of an example reproduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExampleCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExampleReport {
    pub example: String,
    pub checks: Vec<ExampleCheck>,
}

impl ExampleReport {
    fn new(example: impl Into<String>) -> Self {
        Self { example: example.into(), checks: Vec::new() }
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(ExampleCheck { name: name.into(), passed, detail: detail.into() });
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ExampleCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// `K[x_1..x_d, y_1..y_l] / ((x)(y) + (y)^2)` as a module over itself.
pub fn staircase_example_module(d: usize, l: usize) -> Result<ModulePresentation> {
    if d == 0 {
        return Err(AlgebraError::InvalidRing("the staircase example needs d >= 1".into()));
    }
    let names = (1..=d).map(|i| format!("x{i}")).chain((1..=l).map(|j| format!("y{j}")));
    let ring = AmbientRing::new(names)?;
    let s = d + l;
    let mut gens = Vec::new();
    for j in 0..l {
        for i in 0..d {
            let mut e = vec![0u32; s];
            e[i] = 1;
            e[d + j] = 1;
            gens.push(Monomial::new(e));
        }
        for jj in j..l {
            let mut e = vec![0u32; s];
            e[d + j] += 1;
            e[d + jj] += 1;
            gens.push(Monomial::new(e));
        }
    }
    let j = MonomialIdeal::minimalize(s, gens)?;
    ModulePresentation::new(ring, vec![j])
}

/// `(C(n+d, d) + l, C(n+d-1, d-1) + l)`, the staircase values for `n >= 1`.
pub fn staircase_closed_form(d: usize, l: usize, n: u32) -> Result<(i128, i128)> {
    let (n, d, l) = (u64::from(n), d as u64, l as i128);
    Ok((binomial(n + d, d)? + l, binomial(n + d - 1, d - 1)? + l))
}

pub fn reproduce_example_staircase(d: usize, l: usize, n_max: u32) -> Result<ExampleReport> {
    let module = staircase_example_module(d, l)?;
    let maximal = module.ambient().maximal_ideal();
    let mut report = ExampleReport::new(format!("staircase d={d} l={l}"));
    report.check("dimension", module.dimension() == d, format!("t = {}", module.dimension()));
    // Enough samples for the degree-d fit even when n_max itself is small.
    let sample_to = n_max.max(d as u32 + DEFAULT_WINDOW as u32 + 6);
    let growth = fitted_growth(&module, &maximal, sample_to, DEFAULT_WINDOW)?;
    let l128 = l as i128;
    for n in 0..=n_max {
        // R/m is just K, so the closed form only kicks in from n = 1.
        let (want_h, want_ir) = if n == 0 { (1, 1) } else { staircase_closed_form(d, l, n)? };
        let h = i128::from(growth.samples.hilbert[n as usize]);
        report.check(format!("H({n})"), h == want_h, format!("got {h}, expected {want_h}"));
        let ir = i128::from(growth.samples.irreducibility[n as usize]);
        report.check(format!("IR({n})"), ir == want_ir, format!("got {ir}, expected {want_ir}"));
    }
    let e0 = growth.hilbert.leading();
    let f0 = growth.irreducibility.leading();
    let want_f0 = if d == 1 { 1 + l128 } else { 1 };
    report.check("e0", e0 == 1, format!("got {e0}, expected 1"));
    report.check("f0", f0 == want_f0, format!("got {f0}, expected {want_f0}"));
    Ok(report)
}

/// `K[x] (+) K` over `K[x]`.
pub fn direct_sum_example_module() -> Result<ModulePresentation> {
    let ring = AmbientRing::new(["x"])?;
    let k = MonomialIdeal::maximal(1);
    ModulePresentation::new(ring, vec![MonomialIdeal::zero(1), k])
}

pub fn reproduce_example_direct_sum(n_max: u32) -> Result<ExampleReport> {
    let module = direct_sum_example_module()?;
    let x = module.ambient().maximal_ideal();
    let mut report = ExampleReport::new("direct sum R + K");
    let colength = module.length_mod(&x)?;
    report.check("l(M/xM)", colength == 2, format!("got {colength}, expected 2"));
    let sample_to = n_max.max(DEFAULT_WINDOW as u32 + 6);
    let growth = fitted_growth(&module, &x, sample_to, DEFAULT_WINDOW)?;
    for n in 0..=n_max {
        let h = growth.samples.hilbert[n as usize];
        report.check(format!("H({n})"), h == u64::from(n) + 2, format!("got {h}, expected {}", n + 2));
        let ir = growth.samples.irreducibility[n as usize];
        report.check(format!("IR({n})"), ir == 2, format!("got {ir}, expected 2"));
    }
    let e0 = growth.hilbert.leading();
    let f0 = growth.irreducibility.leading();
    report.check("e0", e0 == 1, format!("got {e0}, expected 1"));
    report.check("f0", f0 == 2, format!("got {f0}, expected 2"));
    let ulrich = ulrich_check(&module, &x, sample_to)?;
    report.check(
        "ulrich t=1 exclusion",
        ulrich.certified_ulrich.is_none() && ulrich.status == UlrichStatus::DimensionOneExcluded,
        format!("status {:?}, fQ0 = {}, colength = {}", ulrich.status, ulrich.f_q0, ulrich.colength),
    );
    report.check(
        "fQ0 = l(M/QM) yet not Ulrich",
        ulrich.f_q0 == 2 && ulrich.colength == 2 && ulrich.e_q0 != i128::from(ulrich.minimal_generators),
        format!("e0 = {}, mu = {}", ulrich.e_q0, ulrich.minimal_generators),
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(arity: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(arity, gens).unwrap()
    }

    #[test]
    fn staircase_d2_l2() {
        let module = staircase_example_module(2, 2).unwrap();
        let r = multiplicity_report(&module, &module.ambient().maximal_ideal(), 20).unwrap();
        assert_eq!((r.t, r.e0, r.f0), (2, 1, 1));
        assert!(r.inequality_holds && r.equality_holds);
        assert_eq!(r.equality_criterion_n, Some(1));
    }

    #[test]
    fn staircase_d1_l2() {
        let module = staircase_example_module(1, 2).unwrap();
        let r = multiplicity_report(&module, &module.ambient().maximal_ideal(), 20).unwrap();
        assert_eq!((r.t, r.e0, r.socle0, r.f0, r.bound), (1, 1, 2, 3, 3));
        assert!(r.theorem_holds());
    }

    #[test]
    fn artinian_cyclic() {
        let ring = AmbientRing::with_arity(1).unwrap();
        let module = ModulePresentation::new(ring, vec![ideal(1, &[&[3]])]).unwrap();
        let r = multiplicity_report(&module, &ideal(1, &[&[1]]), 30).unwrap();
        assert_eq!((r.t, r.e0, r.f0), (0, 3, 1));
        assert!(r.inequality_holds);
        // The colon equals m at n = 1, 2, then becomes the unit ideal.
        assert_eq!(r.criterion_first_n, Some(1));
        assert_eq!(r.equality_criterion_n, None);
        assert!(r.theorem_holds());
    }

    #[test]
    fn example_reproductions() {
        assert!(reproduce_example_staircase(2, 1, 3).unwrap().all_passed());
        let r = reproduce_example_staircase(1, 3, 8).unwrap();
        assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
        assert!(reproduce_example_staircase(3, 2, 6).unwrap().all_passed());
        assert!(reproduce_example_direct_sum(10).unwrap().all_passed());
    }

    #[test]
    fn ulrich_on_free_module() {
        let module = ModulePresentation::free(AmbientRing::with_arity(2).unwrap());
        let r = ulrich_check(&module, &MonomialIdeal::maximal(2), 20).unwrap();
        assert_eq!((r.f_q0, r.colength), (1, 1));
        assert_eq!(r.certified_ulrich, Some(true));
        assert!(r.cohen_macaulay);
    }

    #[test]
    fn ulrich_in_dimension_zero() {
        let ring = AmbientRing::with_arity(1).unwrap();
        let x2 = ideal(1, &[&[2]]);
        let module = ModulePresentation::new(ring, vec![x2.clone(), x2]).unwrap();
        let r = ulrich_check(&module, &MonomialIdeal::zero(1), 10).unwrap();
        assert_eq!((r.colength, r.f_q0), (4, 2));
        assert_eq!(r.certified_ulrich, Some(false));
        assert_eq!(r.status, UlrichStatus::NotCertifiedByThisQ);
    }

    #[test]
    fn ulrich_rejects_non_parameter_ideals() {
        let module = ModulePresentation::free(AmbientRing::with_arity(2).unwrap());
        let x = ideal(2, &[&[1, 0]]);
        assert!(matches!(ulrich_check(&module, &x, 10), Err(AlgebraError::NotParameterIdeal(_))));
        let xy = ideal(2, &[&[1, 0], &[1, 1]]);
        assert!(matches!(ulrich_check(&module, &xy, 10), Err(AlgebraError::NotParameterIdeal(_))));
    }

    #[test]
    fn chain_on_staircase_d1_l1() {
        let module = staircase_example_module(1, 1).unwrap();
        let mx = module.ambient().maximal_ideal();
        let chain = chain_inequality_check(&module, &mx, 1, 20, 12).unwrap();
        assert!(chain.holds());
    }
}
