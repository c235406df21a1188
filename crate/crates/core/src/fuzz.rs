//! Seeded random instances and the property campaign run over them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::instance::InstanceDocument;
use crate::module::ModulePresentation;
use crate::monomial::{AmbientRing, Monomial, MonomialIdeal};
use crate::quotient::{length_artinian, socle_length_artinian, socle_length_general};
use crate::report::decimal;
use crate::theorem::{chain_inequality_check, madic_check, multiplicity_report, MultiplicityReport};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FuzzConfig {
    #[serde(with = "decimal")]
    pub seed: u64,
    pub count: usize,
    pub s_max: usize,
    pub comp_max: usize,
    pub exp_max: u32,
    pub n_max: u32,
    /// Artin-Rees search budget and the range of `n` it must cover.
    pub k_max: u32,
    pub ar_n_max: u32,
    /// Replace the generated `I` by the maximal ideal.
    pub madic: bool,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            count: 100,
            s_max: 3,
            comp_max: 2,
            exp_max: 4,
            n_max: 30,
            k_max: 12,
            ar_n_max: 15,
            madic: false,
        }
    }
}

/// Seed of the `index`-th instance of a campaign (SplitMix64 step).
pub fn instance_seed(campaign_seed: u64, index: usize) -> u64 {
    let mut z = campaign_seed.wrapping_add((index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn random_monomial(rng: &mut ChaCha8Rng, s: usize, exp_max: u32) -> Monomial {
    loop {
        let e: Vec<u32> = (0..s).map(|_| rng.gen_range(0..=exp_max)).collect();
        if e.iter().any(|&x| x > 0) {
            return Monomial::new(e);
        }
    }
}

/// A random module and an m-primary ideal, reproducible from `seed`.
pub fn fuzz_instance(seed: u64, s_max: usize, comp_max: usize, exp_max: u32) -> (ModulePresentation, MonomialIdeal) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = rng.gen_range(1..=s_max.max(1));
    let exp_max = exp_max.max(1);
    let ring = AmbientRing::with_arity(s).expect("s >= 1");
    let count = rng.gen_range(1..=comp_max.max(1));
    let components = (0..count)
        .map(|_| {
            if rng.gen_range(0..4) == 0 {
                MonomialIdeal::zero(s)
            } else {
                let g = rng.gen_range(1..=3);
                let gens: Vec<Monomial> = (0..g).map(|_| random_monomial(&mut rng, s, exp_max)).collect();
                MonomialIdeal::minimalize(s, gens).expect("same arity")
            }
        })
        .collect();
    let mut gens: Vec<Monomial> = (0..s).map(|i| Monomial::pure_power(s, i, rng.gen_range(1..=exp_max))).collect();
    for _ in 0..rng.gen_range(0..=2) {
        gens.push(random_monomial(&mut rng, s, exp_max));
    }
    let ideal = MonomialIdeal::minimalize(s, gens).expect("same arity");
    let module = ModulePresentation::new(ring, components).expect("components are proper");
    (module, ideal)
}

/// Per-instance summary kept in campaign reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceRecord {
    pub index: usize,
    #[serde(with = "decimal")]
    pub seed: u64,
    pub instance: String,
    pub t: Option<usize>,
    #[serde(with = "decimal::option")]
    pub e0: Option<i128>,
    #[serde(with = "decimal::option")]
    pub f0: Option<i128>,
    #[serde(with = "decimal::option")]
    pub bound: Option<i128>,
    pub equality_criterion_n: Option<u32>,
    pub artin_rees_k: Option<u32>,
    pub failures: Vec<String>,
}

/// Named properties checked on every instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Theorem,
    Madic,
    ArtinRees,
    Chain,
    DimensionZero,
    SocleRoutes,
}

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::Theorem => "theorem",
            Property::Madic => "madic",
            Property::ArtinRees => "artin_rees",
            Property::Chain => "chain",
            Property::DimensionZero => "dimension_zero",
            Property::SocleRoutes => "socle_routes",
        }
    }
}

/// Outcome of the property checks on one instance.
#[derive(Debug, Clone, Default)]
pub struct InstanceOutcome {
    pub report: Option<MultiplicityReport>,
    pub artin_rees_k: Option<u32>,
    pub failures: Vec<(Property, String)>,
}

fn fail(out: &mut InstanceOutcome, p: Property, msg: impl Into<String>) {
    out.failures.push((p, msg.into()));
}

/// Runs every property on one instance. Budget errors count as failures of
/// the property that hit them.
pub fn check_instance(module: &ModulePresentation, ideal: &MonomialIdeal, cfg: &FuzzConfig) -> InstanceOutcome {
    let mut out = InstanceOutcome::default();
    match multiplicity_report(module, ideal, cfg.n_max) {
        Ok(r) => {
            if !r.inequality_holds {
                fail(&mut out, Property::Theorem, format!("f0 = {} exceeds bound {}", r.f0, r.bound));
            }
            if r.equality_criterion_n.is_some() && !r.equality_holds {
                fail(
                    &mut out,
                    Property::Theorem,
                    format!("criterion holds from n = {:?} but f0 = {} != {}", r.equality_criterion_n, r.f0, r.bound),
                );
            }
            if r.t == 0 {
                let length: Result<u64> =
                    module.components().iter().map(length_artinian).try_fold(0, |a, l| Ok(a + l?));
                match length {
                    Ok(len) if i128::from(len) == r.e0 && i128::from(r.socle0) == r.f0 => {}
                    Ok(len) => fail(
                        &mut out,
                        Property::DimensionZero,
                        format!("e0 = {} vs l(M) = {len}, f0 = {} vs socle = {}", r.e0, r.f0, r.socle0),
                    ),
                    Err(e) => fail(&mut out, Property::DimensionZero, e.to_string()),
                }
            }
            out.report = Some(r);
        }
        Err(e) => fail(&mut out, Property::Theorem, e.to_string()),
    }
    if cfg.madic {
        match madic_check(module, cfg.n_max) {
            Ok(v) if v.holds() => {}
            Ok(v) => fail(
                &mut out,
                Property::Madic,
                format!(
                    "t = {}, e0 = {}, f0 = {}, socle0 = {}, criterion fails at n = {:?}",
                    v.report.t, v.report.e0, v.report.f0, v.report.socle0, v.criterion_failure_n
                ),
            ),
            Err(e) => fail(&mut out, Property::Madic, e.to_string()),
        }
    }
    let maximal = module.ambient().maximal_ideal();
    match module.find_artin_rees_k(ideal, &maximal, cfg.ar_n_max, cfg.k_max) {
        Ok(k) => {
            out.artin_rees_k = Some(k);
            for n in 1..=cfg.ar_n_max {
                match module.artin_rees_identity_holds(ideal, &maximal, k, n) {
                    Ok(true) => {}
                    Ok(false) => fail(&mut out, Property::ArtinRees, format!("k = {k} fails to re-verify at n = {n}")),
                    Err(e) => fail(&mut out, Property::ArtinRees, e.to_string()),
                }
            }
        }
        Err(e) => fail(&mut out, Property::ArtinRees, e.to_string()),
    }
    match chain_inequality_check(module, ideal, 1, cfg.n_max, cfg.k_max) {
        Ok(c) if c.holds() => {}
        Ok(c) => fail(&mut out, Property::Chain, format!("violated at n = {:?}", c.first_violation)),
        Err(e) => fail(&mut out, Property::Chain, e.to_string()),
    }
    for c in module.components().iter().filter(|c| c.is_m_primary()) {
        match (socle_length_general(c), socle_length_artinian(c)) {
            (Ok(a), Ok(b)) if a == b => {}
            (a, b) => fail(&mut out, Property::SocleRoutes, format!("general {a:?} vs corners {b:?}")),
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct CampaignReport {
    pub config: FuzzConfig,
    pub passed: usize,
    pub failed: usize,
    pub records: Vec<InstanceRecord>,
}

impl CampaignReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    /// Plain-text rendering, one line per instance.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "fuzz seed={} count={} s_max={} comp_max={} exp_max={} n_max={} k_max={} madic={}\n",
            self.config.seed,
            self.config.count,
            self.config.s_max,
            self.config.comp_max,
            self.config.exp_max,
            self.config.n_max,
            self.config.k_max,
            self.config.madic
        );
        for r in &self.records {
            let status = if r.failures.is_empty() { "ok".to_string() } else { r.failures.join("; ") };
            let show = |v: Option<i128>| v.map_or("-".to_string(), |x| x.to_string());
            out.push_str(&format!(
                "#{:04} seed={} t={} e0={} f0={} bound={} eq_n={} k={} {}\n",
                r.index,
                r.seed,
                r.t.map_or("-".to_string(), |t| t.to_string()),
                show(r.e0),
                show(r.f0),
                show(r.bound),
                r.equality_criterion_n.map_or("-".to_string(), |n| n.to_string()),
                r.artin_rees_k.map_or("-".to_string(), |k| k.to_string()),
                status
            ));
        }
        out.push_str(&format!("passed {} failed {}\n", self.passed, self.failed));
        out
    }
}

/// The instance a campaign would generate at `index`.
pub fn campaign_instance(cfg: &FuzzConfig, index: usize) -> (u64, ModulePresentation, MonomialIdeal) {
    let seed = instance_seed(cfg.seed, index);
    let (module, mut ideal) = fuzz_instance(seed, cfg.s_max, cfg.comp_max, cfg.exp_max);
    if cfg.madic {
        ideal = module.ambient().maximal_ideal();
    }
    (seed, module, ideal)
}

pub fn run_campaign(cfg: &FuzzConfig) -> CampaignReport {
    let records: Vec<InstanceRecord> = (0..cfg.count)
        .into_par_iter()
        .map(|index| {
            let (seed, module, ideal) = campaign_instance(cfg, index);
            let outcome = check_instance(&module, &ideal, cfg);
            let r = outcome.report.as_ref();
            InstanceRecord {
                index,
                seed,
                instance: InstanceDocument::from_parts(&module, ideal).to_canonical_string(),
                t: r.map(|r| r.t),
                e0: r.map(|r| r.e0),
                f0: r.map(|r| r.f0),
                bound: r.map(|r| r.bound),
                equality_criterion_n: r.and_then(|r| r.equality_criterion_n),
                artin_rees_k: outcome.artin_rees_k,
                failures: outcome.failures.iter().map(|(p, m)| format!("{}: {m}", p.name())).collect(),
            }
        })
        .collect();
    let failed = records.iter().filter(|r| !r.failures.is_empty()).count();
    CampaignReport { config: cfg.clone(), passed: records.len() - failed, failed, records }
}

/// Greedily shrinks a failing instance while `still_fails` keeps returning
/// true: drops summands and generators, then lowers exponents.
pub fn shrink(
    module: &ModulePresentation,
    ideal: &MonomialIdeal,
    still_fails: impl Fn(&ModulePresentation, &MonomialIdeal) -> bool,
) -> (ModulePresentation, MonomialIdeal) {
    let mut best = (module.clone(), ideal.clone());
    loop {
        let candidate = shrink_candidates(&best.0, &best.1).into_iter().find(|(m, i)| still_fails(m, i));
        match candidate {
            Some(c) => best = c,
            None => return best,
        }
    }
}

fn shrink_candidates(module: &ModulePresentation, ideal: &MonomialIdeal) -> Vec<(ModulePresentation, MonomialIdeal)> {
    let s = module.arity();
    let ring = module.ambient().clone();
    let comps = module.components();
    let mut out = Vec::new();
    let rebuild = |components: Vec<MonomialIdeal>| ModulePresentation::new(ring.clone(), components).ok();

    if comps.len() > 1 {
        for i in 0..comps.len() {
            let mut c = comps.to_vec();
            c.remove(i);
            if let Some(m) = rebuild(c) {
                out.push((m, ideal.clone()));
            }
        }
    }
    for (i, comp) in comps.iter().enumerate() {
        let gens = comp.generators();
        for g in 0..gens.len() {
            let mut reduced = gens.to_vec();
            reduced.remove(g);
            let mut c = comps.to_vec();
            c[i] = MonomialIdeal::minimalize(s, reduced).expect("same arity");
            if let Some(m) = rebuild(c) {
                out.push((m, ideal.clone()));
            }
            for v in 0..s {
                if let Some(lower) = lowered(&gens[g], v) {
                    let mut changed = gens.to_vec();
                    changed[g] = lower;
                    let mut c = comps.to_vec();
                    c[i] = MonomialIdeal::minimalize(s, changed).expect("same arity");
                    if let Some(m) = rebuild(c) {
                        out.push((m, ideal.clone()));
                    }
                }
            }
        }
    }
    let gens = ideal.generators();
    for g in 0..gens.len() {
        let mut reduced = gens.to_vec();
        reduced.remove(g);
        let smaller = MonomialIdeal::minimalize(s, reduced).expect("same arity");
        if smaller.is_m_primary() {
            out.push((module.clone(), smaller));
        }
        for v in 0..s {
            if let Some(lower) = lowered(&gens[g], v) {
                let mut changed = gens.to_vec();
                changed[g] = lower;
                let smaller = MonomialIdeal::minimalize(s, changed).expect("same arity");
                if smaller.is_m_primary() {
                    out.push((module.clone(), smaller));
                }
            }
        }
    }
    out
}

/// `g / x_v`, unless that would be the monomial 1.
fn lowered(g: &Monomial, v: usize) -> Option<Monomial> {
    let mut e = g.exponents().to_vec();
    if e[v] == 0 {
        return None;
    }
    e[v] -= 1;
    let m = Monomial::new(e);
    (!m.is_one()).then_some(m)
}

/// Shrinks the first failing instance of a campaign against the property
/// that failed on it.
pub fn minimal_failure(cfg: &FuzzConfig, report: &CampaignReport) -> Option<InstanceDocument> {
    let first = report.records.iter().find(|r| !r.failures.is_empty())?;
    let (_, module, ideal) = campaign_instance(cfg, first.index);
    let failing = check_instance(&module, &ideal, cfg).failures.first().map(|(p, _)| *p)?;
    let (m, i) = shrink(&module, &ideal, |m, i| check_instance(m, i, cfg).failures.iter().any(|(p, _)| *p == failing));
    let mut doc = InstanceDocument::from_parts(&m, i);
    doc.options.n_max = Some(cfg.n_max);
    doc.options.k_max = Some(cfg.k_max);
    Some(doc)
}
