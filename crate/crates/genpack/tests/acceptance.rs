//! Release gate for the crate, one test per promise.
//!
//! Each test pins down one externally checkable behaviour: the fixture
//! catalogue re-verifies, the closed-form bounds agree with first
//! principles, exhaustive search reproves every hand-checkable optimum,
//! and each construction family hits its known packing number within the
//! stated wall-clock limit.  The limits are asserted, not aspirational,
//! so a regression in speed fails the gate just like a wrong value.

use std::time::{Duration, Instant};

use genpack::blocks::{self, ProviderStatus};
use genpack::model::GeneralizedPacking;
use genpack::search::{self, Decision, SearchConfig, SearchResult, SearchStatus};
use genpack::{bounds, catalogue, construct, views, PackingInstance};

fn instance(v: &[usize], k: &[usize]) -> PackingInstance {
    PackingInstance::new(v.to_vec(), k.to_vec(), 2, 1)
        .unwrap_or_else(|e| panic!("instance v={v:?} k={k:?}: {e}"))
}

fn assert_valid(p: &GeneralizedPacking, what: &str) {
    let report = p.verify().unwrap_or_else(|e| panic!("{what}: {e}"));
    assert!(report.valid, "{what}: {:?}", report.violations.first());
}

fn assert_within(clock: Instant, limit: Duration, what: &str) {
    let elapsed = clock.elapsed();
    assert!(
        elapsed <= limit,
        "{what} took {elapsed:?}, limit is {limit:?}"
    );
}

/// Searches with the per-instance proof budget the gate allows.
fn prove(v: &[usize], k: &[usize]) -> SearchResult {
    let cfg = SearchConfig {
        time_budget: Duration::from_secs(120),
        ..SearchConfig::default()
    };
    search::max_packing_search(&instance(v, k), &cfg)
}

fn construct(v: &[usize], k: &[usize]) -> construct::ConstructionResult {
    construct::construct_max(&instance(v, k))
        .unwrap_or_else(|e| panic!("construct v={v:?} k={k:?}: {e}"))
}

#[test]
fn c01_catalogue_fixtures_verify_and_match_their_published_sizes() {
    let clock = Instant::now();
    let report = catalogue::verify_all();
    assert!(
        report.all_pass(),
        "fixtures failed re-verification: {:?}",
        report.failures()
    );
    assert!(
        report.entries.len() >= 25,
        "only {} fixtures in the catalogue",
        report.entries.len()
    );

    let sizes: &[(&str, usize)] = &[
        ("a1", 17),
        ("a2", 20),
        ("a3", 19),
        ("a4", 26),
        ("a5", 24),
        ("b1", 4),
        ("b2", 5),
        ("b3", 6),
        ("b4", 5),
        ("b5", 6),
        ("b6", 9),
        ("b7", 10),
        ("b8", 4),
        ("b9", 13),
        ("b10", 15),
        ("b11", 15),
        ("b12", 15),
        ("b13", 19),
        ("b14", 20),
    ];
    for &(id, size) in sizes {
        let fixture = catalogue::lookup(id).unwrap_or_else(|| panic!("no fixture {id}"));
        assert_eq!(fixture.expected_size(), size, "stored size of {id}");
        assert_eq!(
            fixture.packing().unwrap().blocks().len(),
            size,
            "block count of {id}"
        );
    }

    // The colouring fixtures also promise their colour types.
    let types: &[(&str, &str)] = &[
        ("a1", "3^5 1^2"),
        ("a2", "3^6 2^1"),
        ("a3", "4^4 3^1"),
        ("a4", "4^4 3^3 1^1"),
        ("a5", "4^6"),
    ];
    for &(id, colour_type) in types {
        let fixture = catalogue::lookup(id).unwrap();
        assert_eq!(
            fixture.expected_colour_type(),
            Some(colour_type),
            "stored colour type of {id}"
        );
        let classes = views::to_colour_classes(&fixture.packing().unwrap()).unwrap();
        assert_eq!(classes.colour_type(), colour_type, "computed type of {id}");
    }

    assert_within(clock, Duration::from_secs(1), "catalogue verification");
}

#[test]
fn c02_triple_and_quadruple_numbers_match_their_closed_forms() {
    let clock = Instant::now();
    for v in 3..=99usize {
        let got = bounds::ordinary_triple_number(v).0;
        let expect = match v % 6 {
            1 | 3 => v * (v - 1) / 6,
            0 | 2 => v * (v - 2) / 6,
            4 => (v * v - 2 * v - 2) / 6,
            _ => (v * v - v - 8) / 6,
        };
        assert_eq!(got, expect, "triple packing number at v={v}");

        // The nested-floor Johnson bound is met except at v = 5 mod 6,
        // where the leave forces one block fewer.
        let johnson = v * ((v - 1) / 2) / 3;
        let expect = if v % 6 == 5 { johnson - 1 } else { johnson };
        assert_eq!(got, expect, "Johnson gap at v={v}");
    }
    for (v, expect) in [(7, 2), (8, 2), (10, 5), (13, 13), (19, 25)] {
        assert_eq!(
            bounds::ordinary_quadruple_number(v),
            expect,
            "quadruple packing number at v={v}"
        );
    }
    assert_within(clock, Duration::from_secs(1), "bound formulas");
}

#[test]
fn c03_exhaustive_search_reproves_the_small_optima() {
    let cases: &[(&[usize], &[usize], usize)] = &[
        (&[6, 2], &[3, 1], 2),
        (&[6, 3], &[3, 1], 3),
        (&[7, 2], &[3, 1], 3),
        (&[7, 3], &[3, 1], 4),
        (&[7, 4], &[3, 1], 5),
        (&[7, 6], &[3, 1], 6),
        (&[4, 2, 2], &[2, 1, 1], 2),
        (&[4, 2, 3], &[2, 1, 1], 3),
        (&[4, 3, 3], &[2, 1, 1], 4),
        (&[4, 3, 5], &[2, 1, 1], 5),
        (&[4, 4, 4], &[2, 1, 1], 5),
        (&[5, 2, 2], &[2, 1, 1], 3),
        (&[5, 5, 5], &[2, 1, 1], 9),
        (&[4, 4], &[2, 2], 2),
        (&[4, 5], &[2, 2], 3),
        (&[4, 6], &[2, 2], 4),
        (&[4, 7], &[2, 2], 4),
        (&[4, 8], &[2, 2], 5),
        (&[2, 2, 2, 2], &[1, 1, 1, 1], 2),
        (&[2, 2, 2, 3], &[1, 1, 1, 1], 3),
    ];
    for &(v, k, expect) in cases {
        let run = prove(v, k);
        assert_eq!(
            run.status,
            SearchStatus::ProvenOptimal,
            "v={v:?} k={k:?} not settled within budget"
        );
        assert_eq!(run.size, expect, "optimum at v={v:?} k={k:?}");
        assert_valid(&run.best, &format!("search witness at v={v:?} k={k:?}"));
    }
}

#[test]
fn c04_search_refutes_sizes_just_above_the_packing_number() {
    let cfg = SearchConfig {
        time_budget: Duration::from_secs(120),
        ..SearchConfig::default()
    };
    let refuted: &[(&[usize], &[usize], usize)] =
        &[(&[5, 5, 5], &[2, 1, 1], 10), (&[4, 3, 5], &[2, 1, 1], 6)];
    for &(v, k, target) in refuted {
        match search::decide_size(&instance(v, k), target, &cfg) {
            Decision::No => {}
            other => panic!("size {target} at v={v:?} k={k:?}: {other:?}"),
        }
    }
}

#[test]
fn c05_pair_point_constructions_meet_the_factorization_bound() {
    let clock = Instant::now();
    for v1 in 2..=20usize {
        for v2 in 1..=20usize {
            let result = construct(&[v1, v2], &[2, 1]);
            let expect = (v1 * (v1 - 1) / 2).min(v2 * (v1 / 2));
            assert_eq!(result.size(), expect, "packing number at ({v1},{v2})");
            assert_valid(result.packing(), &format!("({v1},{v2}) construction"));
            assert_eq!(
                result.optimal(),
                construct::Optimality::Proven,
                "({v1},{v2}) should be settled"
            );
        }
    }
    assert_within(clock, Duration::from_secs(10), "pair-point sweep");
}

#[test]
fn c06_pair_point_point_constructions_use_the_array_tiers() {
    let clock = Instant::now();
    let cases: &[(&[usize], usize, &str)] = &[
        (&[8, 7, 7], 28, "room-square"),
        (&[6, 4, 4], 12, "howell"),
        (&[9, 4, 9], 16, "soma-rows"),
    ];
    for &(v, expect, tier) in cases {
        let result = construct(v, &[2, 1, 1]);
        assert_eq!(result.size(), expect, "packing number at v={v:?}");
        assert_valid(result.packing(), &format!("v={v:?} construction"));
        assert!(
            result.method().contains(tier),
            "v={v:?} built via {}, expected the {tier} tier",
            result.method()
        );
        let known = bounds::known_packing_number(&instance(v, &[2, 1, 1]))
            .unwrap_or_else(|| panic!("no known value at v={v:?}"));
        assert_eq!(known.value, expect, "known value at v={v:?}");
    }
    assert_within(clock, Duration::from_secs(30), "pair-point-point constructions");
}

#[test]
fn c07_triple_point_constructions_match_the_known_numbers() {
    let clock = Instant::now();
    let cases: &[(&[usize], usize)] = &[
        (&[9, 4], 12),
        (&[9, 3], 9),
        (&[13, 6], 24),
        (&[13, 8], 26),
        (&[11, 7], 17),
        (&[12, 7], 20),
    ];
    for &(v, expect) in cases {
        let result = construct(v, &[3, 1]);
        assert_eq!(result.size(), expect, "packing number at v={v:?}");
        assert_valid(result.packing(), &format!("v={v:?} construction"));
        let known = bounds::known_packing_number(&instance(v, &[3, 1]))
            .unwrap_or_else(|| panic!("no known value at v={v:?}"));
        assert_eq!(known.value, expect, "known value at v={v:?}");
    }
    assert_within(clock, Duration::from_secs(10), "triple-point constructions");
}

#[test]
fn c08_all_ones_constructions_match_the_known_numbers() {
    let clock = Instant::now();
    for n in [3usize, 5, 7, 9] {
        let result = construct(&[n, n, n, n], &[1, 1, 1, 1]);
        assert_eq!(result.size(), n * n, "packing number at n={n}");
        assert_valid(result.packing(), &format!("n={n} construction"));
        assert!(
            result.method().contains("cyclic"),
            "n={n} built via {}, expected the cyclic squares",
            result.method()
        );
    }

    let result = construct(&[6, 6, 6, 7], &[1, 1, 1, 1]);
    assert_eq!(result.size(), 36, "packing number at (6,6,6,7)");
    assert_valid(result.packing(), "(6,6,6,7) construction");
    assert!(
        result.method().contains("fixture"),
        "(6,6,6,7) built via {}",
        result.method()
    );

    // Any tail on top of the 5 x 6 pair of rectangles still yields 30.
    for v in [[5, 6, 6, 6], [5, 6, 6, 7], [5, 6, 7, 9]] {
        let result = construct(&v, &[1, 1, 1, 1]);
        assert_eq!(result.size(), 30, "packing number at v={v:?}");
        assert_valid(result.packing(), &format!("v={v:?} construction"));
    }
    assert_within(clock, Duration::from_secs(10), "all-ones constructions");
}

#[test]
fn c09_pair_pair_constructions_match_the_known_numbers() {
    let clock = Instant::now();

    let result = construct(&[5, 5], &[2, 2]);
    assert_eq!(
        result.size(),
        catalogue::lookup("pair-5-5").unwrap().expected_size(),
        "(5,5) matches the stored block list"
    );
    assert_valid(result.packing(), "(5,5) construction");

    let result = construct(&[4, 6], &[2, 2]);
    assert_eq!(result.size(), 4, "packing number at (4,6)");
    assert_valid(result.packing(), "(4,6) construction");
    assert!(
        result.method().contains("pair-merge") && result.method().contains("b1"),
        "(4,6) built via {}, expected the merged (4,3,3) fixture",
        result.method()
    );

    let result = construct(&[5, 10], &[2, 2]);
    assert_eq!(result.size(), 10, "packing number at (5,10)");
    assert_valid(result.packing(), "(5,10) construction");
    assert!(
        result.method().contains("fixture"),
        "(5,10) built via {}",
        result.method()
    );

    // Past v2 >= 2 v1 every part-1 pair fits, so (6,12) reaches C(6,2).
    let result = construct(&[6, 12], &[2, 2]);
    assert_eq!(result.size(), 15, "packing number at (6,12)");
    assert_valid(result.packing(), "(6,12) construction");
    assert!(
        result.method().contains("pair-merge"),
        "(6,12) built via {}",
        result.method()
    );
    let known = bounds::known_packing_number(&instance(&[6, 12], &[2, 2])).unwrap();
    assert_eq!(known.value, 15, "known value at (6,12)");

    assert_within(clock, Duration::from_secs(30), "pair-pair constructions");
}

#[test]
fn c10_fixtures_round_trip_and_the_leave_identity_holds() {
    let clock = Instant::now();
    for fixture in catalogue::all() {
        let packing = fixture.packing().unwrap();
        let id = fixture.id();

        // Each profile family has a natural second representation; going
        // there and back must reproduce the packing exactly.
        let k = packing.instance().k().to_vec();
        let round_trip = if k == [2, 1, 1] {
            let array = views::to_array_form(&packing).unwrap();
            views::from_array_form(&array).unwrap()
        } else if k.len() == 2 && k[1] == 1 {
            let classes = views::to_colour_classes(&packing).unwrap();
            classes.to_packing()
        } else if k.iter().all(|&ki| ki == 1) {
            let rows = views::to_packing_array(&packing).unwrap();
            views::from_array_form(&rows).unwrap()
        } else {
            GeneralizedPacking::parse(&packing.serialize()).unwrap()
        };
        assert_eq!(
            round_trip.normalize().serialize(),
            packing.normalize().serialize(),
            "round trip of {id}"
        );

        // A valid packing covers C(K,2) distinct pairs per block, so the
        // leave size is forced by the block count alone.
        let join = views::join_graph(packing.instance());
        let leave = views::leave_graph(&packing).unwrap();
        let block_size: usize = k.iter().sum();
        let covered = packing.blocks().len() * block_size * (block_size - 1) / 2;
        assert_eq!(
            leave.num_edges(),
            join.num_edges() - covered,
            "leave size of {id}"
        );
    }

    let figure = catalogue::lookup("fig1").unwrap().packing().unwrap();
    assert_eq!(
        views::leave_graph(&figure).unwrap().num_edges(),
        9,
        "the introductory example leaves 9 edges uncovered"
    );

    assert_within(clock, Duration::from_secs(5), "view round trips");
}

/// Orders whose existence is settled on paper but out of constructive
/// reach must say so instead of failing silently.
#[test]
fn out_of_reach_orders_report_exists_no_provider() {
    assert_eq!(blocks::skss(20).status, ProviderStatus::ExistsNoProvider);
    assert_eq!(
        blocks::molr_pair(2, 10).status,
        ProviderStatus::ExistsNoProvider
    );
}
