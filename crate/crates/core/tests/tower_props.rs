mod common;

use common::g;
use emtower::fgab::groups_of_order;
use emtower::replication::{reference_kz3, reference_kz4, FiberVariant};
use emtower::ssengine::{build_e2, turn_page, DiffStatus, DifferentialRecord, EntryState, Page};
use emtower::tower::{circle_cohomology, hurewicz_seed, solve_tower, Status, TowerSolution};
use emtower::towerfile;
use emtower::uct::GradedGroups;
use emtower::FgAbGroup;
use proptest::prelude::*;

fn kz2_fiber() -> GradedGroups {
    solve_tower(2, 14, &circle_cohomology())
        .unwrap()
        .result
        .determined_prefix()
}

/// The fibers used throughout: (n, fiber) pairs the engine is run on.
fn stages() -> Vec<(usize, GradedGroups)> {
    vec![
        (2, circle_cohomology()),
        (3, kz2_fiber()),
        (4, reference_kz3()),
        (5, reference_kz4(FiberVariant::Corollary)),
        (5, reference_kz4(FiberVariant::FiberList)),
    ]
}

#[test]
fn monotone_degradation() {
    for (n, fiber) in stages() {
        let runs: Vec<_> = (n + 2..=12)
            .map(|cap| solve_tower(n, cap, &fiber).unwrap().result)
            .collect();
        for a in &runs {
            for b in &runs {
                let shared = a.reliable_up_to.min(b.reliable_up_to);
                for d in 0..shared {
                    assert_eq!(
                        a.status(d),
                        b.status(d),
                        "K(Z,{n}) degree {d} at caps {} and {}",
                        a.reliable_up_to,
                        b.reliable_up_to
                    );
                }
            }
        }
    }
}

#[test]
fn determined_prefix_above_three() {
    // each stage's prefix is exactly as long as the next stage needs
    let mut fiber = reference_kz3();
    for n in 4..=9 {
        let result = solve_tower(n, n + 2, &fiber).unwrap().result;
        for d in 0..=n + 2 {
            assert!(
                matches!(result.status(d), Some(Status::Determined(_))),
                "K(Z,{n}) degree {d}"
            );
        }
        assert_eq!(result.status(n + 1), Some(&Status::Determined(g("0"))));
        assert_eq!(result.status(n + 2), Some(&Status::Determined(g("0"))));
        assert_eq!(
            result.determined_prefix().truncate(n + 1),
            hurewicz_seed(n).unwrap()
        );
        fiber = result.determined_prefix();
    }
}

#[test]
fn reproducible() {
    for (n, fiber) in stages() {
        let a = solve_tower(n, 12, &fiber).unwrap();
        let b = solve_tower(n, 12, &fiber).unwrap();
        assert_eq!(a.result, b.result);
        assert_eq!(towerfile::to_json(&a.result), towerfile::to_json(&b.result));
        assert_eq!(a.schedule, b.schedule);
    }
}

fn all_solutions() -> Vec<TowerSolution> {
    stages()
        .into_iter()
        .map(|(n, f)| solve_tower(n, 12, &f).unwrap())
        .collect()
}

#[test]
fn ambiguous_candidates_are_distinct_and_equal_order() {
    for s in all_solutions() {
        for r in &s.result.degrees {
            if let Status::Ambiguous(c) = &r.status {
                assert!(c.len() >= 2);
                let order = c[0].order();
                assert!(c.iter().all(|x| x.order() == order));
                for (i, x) in c.iter().enumerate() {
                    assert!(c[i + 1..].iter().all(|y| y != x));
                }
            }
        }
    }
}

#[test]
fn composable_known_differentials_compose_to_zero() {
    for s in all_solutions() {
        for page in &s.pages {
            for (src, rec) in page.differentials() {
                let DiffStatus::KnownMap(f) = &rec.status else {
                    continue;
                };
                let Some(t) = page.target(*src) else { continue };
                if let Some(DiffStatus::KnownMap(h)) = page.differential(t).map(|d| &d.status) {
                    assert!(f.then(h).unwrap().is_zero(), "page {} at {src:?}", page.r());
                }
            }
        }
    }
}

#[test]
fn first_quadrant_stability() {
    for s in all_solutions() {
        for page in &s.pages {
            for (p, q) in page.positions() {
                if page.r() <= p.max(q + 1) {
                    continue;
                }
                for later in s.pages.iter().filter(|l| l.r() > page.r()) {
                    assert_eq!(
                        later.entry((p, q)),
                        page.entry((p, q)),
                        "({p},{q}) after page {}",
                        page.r()
                    );
                }
            }
        }
    }
}

fn group() -> impl Strategy<Value = FgAbGroup> {
    (0usize..=1, 1u64..=12, any::<prop::sample::Index>()).prop_map(|(r, n, i)| {
        let choices = groups_of_order(n);
        FgAbGroup::free(r).direct_sum(&choices[i.index(choices.len())])
    })
}

fn random_e2() -> impl Strategy<Value = Page> {
    (
        prop::collection::vec(group(), 0..7),
        prop::collection::vec(group(), 0..7),
        2usize..=6,
    )
        .prop_map(|(base, fiber, cap)| {
            let mut b = vec![EntryState::known(g("Z"))];
            b.extend(base.into_iter().map(EntryState::known));
            let mut f = vec![g("Z")];
            f.extend(fiber);
            build_e2(&b, &GradedGroups::new(f).unwrap(), cap).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn turning_an_all_zero_page_changes_nothing(mut page in random_e2()) {
        for pos in page.positions() {
            if page.target(pos).is_some() {
                page.set_differential(pos, DifferentialRecord::forced_zero("test")).unwrap();
            }
        }
        let next = turn_page(&page).unwrap();
        prop_assert_eq!(next.r(), page.r() + 1);
        for pos in page.positions() {
            prop_assert_eq!(next.entry(pos), page.entry(pos));
        }
    }

    #[test]
    fn entries_with_zero_neighbours_survive(page in random_e2()) {
        let next = turn_page(&{
            let mut p = page.clone();
            for pos in p.positions() {
                if p.target(pos).is_some() {
                    p.set_differential(pos, DifferentialRecord::forced_zero("test")).unwrap();
                }
            }
            p
        }).unwrap();
        for pos in page.positions() {
            let out_zero = page.target(pos).is_none_or(|t| page.entry(t).is_zero());
            let in_zero = page.source(pos).is_none_or(|s| page.entry(s).is_zero());
            if out_zero && in_zero {
                prop_assert_eq!(next.entry(pos), page.entry(pos));
            }
        }
    }
}
