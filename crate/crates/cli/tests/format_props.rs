use abovelp::frontends::Cnf;
use abovelp_cli::formats::{parse_cnf, parse_graph, write_cnf, write_graph, DimacsGraph};
use abovelp_cli::report::{Payload, RunReport, RunStats, Status};
use proptest::prelude::*;

fn arb_graph() -> impl Strategy<Value = DimacsGraph> {
    (1usize..12).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        (
            proptest::collection::vec(0i64..9, n),
            proptest::sample::subsequence(pairs.clone(), 0..=pairs.len()),
            proptest::sample::subsequence((0..n).collect::<Vec<_>>(), 0..=n.min(4)),
        )
            .prop_map(|(weights, edges, terminals)| DimacsGraph { weights, edges, terminals })
    })
}

fn arb_cnf() -> impl Strategy<Value = Cnf> {
    (1usize..8).prop_flat_map(|vars| {
        let lit = (0..vars, any::<bool>());
        let clauses = proptest::collection::vec(proptest::collection::vec(lit, 2), 0..12);
        clauses.prop_map(move |clauses| Cnf { vars, clauses })
    })
}

fn arb_report() -> impl Strategy<Value = RunReport> {
    let status = prop_oneof![Just(Status::Optimal), Just(Status::NoSolutionWithinK), Just(Status::Error)];
    let payload = prop_oneof![
        proptest::collection::vec(1usize..50, 0..6).prop_map(Payload::Vertices),
        proptest::collection::vec(-9i64..9, 0..6).prop_map(Payload::Assignment),
        proptest::collection::vec(0i64..2, 0..6).prop_map(Payload::Values),
    ];
    let stats = (any::<u32>(), any::<u32>(), any::<u32>(), 0u64..40).prop_map(|(a, b, c, d)| RunStats { nodes: a.into(), leaves: b.into(), augmentations: c.into(), depth: d });
    (status, proptest::option::of(-20i64..20), proptest::option::of(payload), proptest::option::of(stats), proptest::option::of(any::<bool>())).prop_map(
        |(status, objective, solution, stats, verified)| {
            let mut r = RunReport::new("vc", "ab".repeat(32));
            r.status = status;
            r.objective = objective;
            r.k = objective.map(|o| format!("{o}.5"));
            r.solution = solution;
            r.stats = stats;
            r.verified = verified;
            r
        },
    )
}

proptest! {
    #[test]
    fn graphs_round_trip(g in arb_graph()) {
        prop_assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn cnf_round_trips(cnf in arb_cnf()) {
        prop_assert_eq!(parse_cnf(&write_cnf(&cnf), Some(2)).unwrap(), cnf);
    }

    #[test]
    fn reports_round_trip(r in arb_report()) {
        let back: RunReport = serde_json::from_str(&r.to_json()).unwrap();
        prop_assert_eq!(&back, &r);
        prop_assert_eq!(back.to_json(), r.to_json());
    }

    #[test]
    fn garbage_never_panics(text in "[pce0-9 \n-]{0,60}") {
        let _ = parse_graph(&text);
        let _ = parse_cnf(&text, Some(2));
    }
}
