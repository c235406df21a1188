use std::fs;
use std::path::Path;

use irmult::fitter::{binomial, fit, GrowthKind, GrowthTable};
use irmult::fuzz::fuzz_instance;
use irmult::instance::InstanceDocument;
use irmult::quotient::{
    box_bounds, krull_dimension, length_artinian, socle_length_artinian, socle_length_general, socle_length_via_colon,
    standard_monomials,
};
use irmult::{parse_instance, AmbientRing, ModulePresentation, Monomial, MonomialIdeal, Staircase};
use proptest::prelude::*;

fn monomial(arity: usize, max: u32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..=max, arity).prop_filter("not 1", |e| e.iter().any(|&x| x > 0)).prop_map(Monomial::new)
}

fn ideal(arity: usize) -> impl Strategy<Value = MonomialIdeal> {
    prop::collection::vec(monomial(arity, 4), 1..=4).prop_map(move |g| MonomialIdeal::minimalize(arity, g).unwrap())
}

fn primary(arity: usize) -> impl Strategy<Value = MonomialIdeal> {
    (prop::collection::vec(1..=5u32, arity), prop::collection::vec(monomial(arity, 4), 0..=3)).prop_map(
        move |(powers, extra)| {
            let pure = powers.iter().enumerate().map(|(i, &a)| Monomial::pure_power(arity, i, a));
            MonomialIdeal::minimalize(arity, pure.chain(extra)).unwrap()
        },
    )
}

fn with_arity<S: Strategy>(f: impl Fn(usize) -> S) -> impl Strategy<Value = (usize, S::Value)> {
    (1..=3usize).prop_flat_map(move |s| (Just(s), f(s)))
}

fn box_monomials(arity: usize, bound: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(arity)];
    for v in 0..arity {
        out = out
            .into_iter()
            .flat_map(|m| {
                (0..=bound).map(move |e| {
                    let mut x = m.exponents().to_vec();
                    x[v] = e;
                    Monomial::new(x)
                })
            })
            .collect();
    }
    out
}

/// Membership straight from the definition: some generator divides `u`.
fn member(ideal: &MonomialIdeal, u: &Monomial) -> bool {
    ideal.generators().iter().any(|g| g.exponents().iter().zip(u.exponents()).all(|(a, b)| a <= b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn contains_agrees_with_definition((s, i) in with_arity(ideal)) {
        for u in box_monomials(s, 6) {
            prop_assert_eq!(i.contains(&u).unwrap(), member(&i, &u));
        }
    }

    #[test]
    fn sum_and_intersection_are_pointwise((s, (a, b)) in with_arity(|s| (ideal(s), ideal(s)))) {
        let sum = a.add(&b).unwrap();
        let meet = a.intersect(&b).unwrap();
        prop_assert_eq!(&sum, &b.add(&a).unwrap());
        for u in box_monomials(s, 6) {
            prop_assert_eq!(member(&sum, &u), member(&a, &u) || member(&b, &u));
            prop_assert_eq!(member(&meet, &u), member(&a, &u) && member(&b, &u));
        }
    }

    #[test]
    fn powers_add((_s, i) in with_arity(ideal), p in 0..3u32, q in 0..3u32) {
        let lhs = i.power(p).unwrap().multiply(&i.power(q).unwrap()).unwrap();
        prop_assert_eq!(lhs, i.power(p + q).unwrap());
    }

    #[test]
    fn minimalize_is_idempotent((s, i) in with_arity(ideal)) {
        let again = MonomialIdeal::minimalize(s, i.generators().to_vec()).unwrap();
        prop_assert_eq!(&again, &i);
        for (x, g) in i.generators().iter().enumerate() {
            for (y, h) in i.generators().iter().enumerate() {
                prop_assert!(x == y || !g.divides(h).unwrap());
            }
        }
    }

    #[test]
    fn colon_is_pointwise((s, (a, b)) in with_arity(|s| (ideal(s), ideal(s)))) {
        let c = a.colon(&b).unwrap();
        prop_assert!(a.is_subset_of(&a.multiply(&b).unwrap().colon(&b).unwrap()).unwrap());
        for u in box_monomials(s, 5) {
            let want = b.generators().iter().all(|g| member(&a, &u.try_mul(g).unwrap()));
            prop_assert_eq!(member(&c, &u), want);
        }
    }

    #[test]
    fn socle_routes_agree((_s, i) in with_arity(primary)) {
        let corners = socle_length_artinian(&i).unwrap();
        prop_assert_eq!(corners, socle_length_via_colon(&i).unwrap());
        prop_assert_eq!(corners, socle_length_general(&i).unwrap());
    }

    #[test]
    fn box_length_matches_staircase((_s, i) in with_arity(primary)) {
        prop_assert_eq!(length_artinian(&i).unwrap(), standard_monomials(&i).unwrap().len() as u64);
    }

    #[test]
    fn staircase_products_and_colons((_s, (i, j)) in with_arity(|s| (primary(s), ideal(s)))) {
        let bounds: Vec<u32> = box_bounds(&i.power(2).unwrap()).unwrap();
        let st = Staircase::from_ideal(&bounds, &i).unwrap();
        let boxed = MonomialIdeal::minimalize(
            bounds.len(),
            bounds.iter().enumerate().map(|(v, &b)| Monomial::pure_power(bounds.len(), v, b)),
        )
        .unwrap();
        let product = st.multiply_ideal(&j).unwrap().to_ideal();
        prop_assert_eq!(product, i.multiply(&j).unwrap().add(&boxed).unwrap());
        let colon = st.colon_ideal(&j).unwrap().to_ideal();
        prop_assert_eq!(colon, i.add(&boxed).unwrap().colon(&j).unwrap());
    }

    #[test]
    fn dimension_zero_iff_primary((_s, i) in with_arity(ideal)) {
        prop_assert_eq!(krull_dimension(&i).unwrap() == 0, i.is_m_primary());
    }

    #[test]
    fn growth_is_additive_over_summands((s, (a, b, i)) in with_arity(|s| (ideal(s), ideal(s), primary(s)))) {
        let ring = AmbientRing::with_arity(s).unwrap();
        let both = ModulePresentation::new(ring.clone(), vec![a.clone(), b.clone()]).unwrap().growth_samples(&i, 8).unwrap();
        let left = ModulePresentation::new(ring.clone(), vec![a]).unwrap().growth_samples(&i, 8).unwrap();
        let right = ModulePresentation::new(ring, vec![b]).unwrap().growth_samples(&i, 8).unwrap();
        for n in 0..=8 {
            prop_assert_eq!(both.hilbert[n], left.hilbert[n] + right.hilbert[n]);
            prop_assert_eq!(both.irreducibility[n], left.irreducibility[n] + right.irreducibility[n]);
            prop_assert!(both.irreducibility[n] <= both.hilbert[n]);
        }
    }

    #[test]
    fn fit_recovers_binomial_combinations(c in prop::collection::vec(-20i128..20, 1..=4), shift in 0u64..5) {
        let d = c.len() as u64 - 1;
        let values: Vec<i128> = (0..20u64)
            .map(|n| {
                c.iter().enumerate().map(|(i, &ci)| {
                    let i = i as u64;
                    let sign = if i.is_multiple_of(2) { 1 } else { -1 };
                    sign * ci * binomial(n + shift + d - i, d - i).unwrap()
                }).sum()
            })
            .collect();
        prop_assume!(values.iter().all(|&v| v >= 0));
        let table = GrowthTable::new(GrowthKind::Hilbert, values.iter().map(|&v| v as u64).collect());
        let p = fit(&table, d as u32, 4).unwrap();
        prop_assert_eq!(p.leading(), c[0]);
        for (n, &v) in values.iter().enumerate() {
            prop_assert_eq!(p.evaluate(n as u64).unwrap(), v);
        }
    }

    #[test]
    fn canonical_text_round_trips(seed in any::<u64>()) {
        let (module, i) = fuzz_instance(seed, 3, 2, 4);
        let doc = InstanceDocument::from_parts(&module, i);
        let text = doc.to_canonical_string();
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.to_canonical_string(), text);
    }
}

#[test]
fn free_module_hilbert_function_is_binomial() {
    for s in 1..=4usize {
        let ring = AmbientRing::with_arity(s).unwrap();
        let m = ring.maximal_ideal();
        let samples = ModulePresentation::free(ring).growth_samples(&m, 12).unwrap();
        for n in 0..=12u64 {
            let want = binomial(n + s as u64, s as u64).unwrap() as u64;
            assert_eq!(samples.hilbert[n as usize], want);
            let socle = binomial(n + s as u64 - 1, s as u64 - 1).unwrap() as u64;
            assert_eq!(samples.irreducibility[n as usize], socle);
        }
    }
}

#[test]
fn fixtures_round_trip() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut count = 0;
    for entry in fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let text = fs::read_to_string(&path).unwrap();
        let doc = parse_instance(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let canonical = doc.to_canonical_string();
        let again = parse_instance(&canonical).unwrap();
        assert_eq!(again, doc, "{}", path.display());
        assert_eq!(again.to_canonical_string(), canonical);
        count += 1;
    }
    assert!(count >= 20, "only {count} fixtures");
}
