mod common;

use common::{g, hom_profile_by_enumeration, universe};
use emtower::fgab::{extension_candidates, kernel_cokernel, order_profile};
use emtower::{FgAbGroup, GroupMap, IntMatrix};
use num_traits::ToPrimitive;
use proptest::prelude::*;

#[test]
fn tensor_and_tor_are_symmetric() {
    let all = universe(64, 2);
    for a in &all {
        for b in &all {
            assert_eq!(a.tensor(b), b.tensor(a), "{a} ⊗ {b}");
            assert_eq!(a.tor(b), b.tor(a), "Tor({a}, {b})");
        }
    }
}

#[test]
fn functors_distribute_over_direct_sums() {
    let all = universe(64, 2);
    let probes: Vec<FgAbGroup> = ["0", "Z", "Z_2", "Z_3", "Z_4", "Z_2 + Z_2", "Z_6", "Z + Z_8"]
        .into_iter()
        .map(g)
        .collect();
    for a in &all {
        for b in &probes {
            let ab = a.direct_sum(b);
            for c in &probes {
                assert_eq!(ab.tensor(c), a.tensor(c).direct_sum(&b.tensor(c)));
                assert_eq!(ab.tor(c), a.tor(c).direct_sum(&b.tor(c)));
                assert_eq!(ab.hom(c), a.hom(c).direct_sum(&b.hom(c)));
                assert_eq!(ab.ext(c), a.ext(c).direct_sum(&b.ext(c)));
                assert_eq!(c.hom(&ab), c.hom(a).direct_sum(&c.hom(b)));
                assert_eq!(c.ext(&ab), c.ext(a).direct_sum(&c.ext(b)));
            }
        }
    }
}

#[test]
fn hom_and_ext_have_equal_order_on_finite_pairs() {
    let finite = universe(64, 0);
    for a in &finite {
        for b in &finite {
            assert_eq!(a.hom(b).order(), a.ext(b).order(), "{a}, {b}");
        }
    }
}

#[test]
fn generator_enumeration_oracle() {
    // for finite groups Hom, Ext, tensor and Tor are all abstractly isomorphic
    let small = universe(24, 0);
    for a in &small {
        for b in &small {
            let oracle = hom_profile_by_enumeration(a, b);
            assert_eq!(order_profile(&a.hom(b)), oracle, "Hom({a}, {b})");
            assert_eq!(order_profile(&a.ext(b)), oracle, "Ext({a}, {b})");
            assert_eq!(order_profile(&a.tensor(b)), oracle, "{a} ⊗ {b}");
            assert_eq!(order_profile(&a.tor(b)), oracle, "Tor({a}, {b})");
        }
    }
}

#[test]
fn free_factors() {
    assert_eq!(g("Z").hom(&g("Z_5")), g("Z_5"));
    assert_eq!(g("Z_5").hom(&g("Z")), g("0"));
    assert_eq!(g("Z_5").ext(&g("Z")), g("Z_5"));
    assert_eq!(g("Z^2").tensor(&g("Z + Z_3")), g("Z^2 + Z_3 + Z_3"));
}

fn small_group() -> impl Strategy<Value = FgAbGroup> {
    (0usize..=2, 1u64..=64, any::<prop::sample::Index>()).prop_map(|(r, n, i)| {
        let choices = emtower::fgab::groups_of_order(n);
        FgAbGroup::free(r).direct_sum(&choices[i.index(choices.len())])
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn extension_candidates_contain_the_split_extension(
        a in small_group().prop_filter("finite", |a| a.is_finite()),
        b in small_group().prop_filter("finite", |b| b.is_finite()),
    ) {
        prop_assume!(a.order_u64().unwrap() * b.order_u64().unwrap() <= 1024);
        let c = extension_candidates(&a, &b).unwrap();
        prop_assert!(c.contains(&a.direct_sum(&b)));
    }

    #[test]
    fn kernel_times_image_is_domain(
        orders in prop::collection::vec(2u64..=12, 1..=2),
        target in prop::collection::vec(2u64..=12, 1..=2),
        raw in prop::collection::vec(-12i64..=12, 4),
    ) {
        let domain = FgAbGroup::canonicalize(0, &orders).unwrap();
        let codomain = FgAbGroup::canonicalize(0, &target).unwrap();
        let (rows, cols) = (codomain.num_generators(), domain.num_generators());
        prop_assume!(rows > 0 && cols > 0);
        // scale columns so every generator relation maps into the relations
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let (dj, ei) = (domain.generator_orders()[j], codomain.generator_orders()[i]);
                let step = (ei / num_integer::gcd(dj, ei)) as i64;
                data.push(num_bigint::BigInt::from(raw[(i * cols + j) % raw.len()] * step));
            }
        }
        let m = IntMatrix::from_vec(rows, cols, data).unwrap();
        let f = GroupMap::new(domain.clone(), codomain, m).unwrap();
        let (ker, _) = kernel_cokernel(&f);
        let order = |x: &FgAbGroup| x.order().unwrap().to_u64().unwrap();
        prop_assert_eq!(order(&ker) * order(&f.image()), order(&domain));
    }
}
