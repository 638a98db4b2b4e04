use greedy_order::dfs::{run_algorithm1_with_policy, EventKind};
use greedy_order::generators::*;
use greedy_order::submodular::gen_random_coverage_problem;
use greedy_order::{
    comm_time, greedy_execute, run_algorithm1, run_ordering_only, verify_prop1_bound, Error, Graph,
    Termination,
};

/// Recursive smallest-first DFS: returns (preorder, counter). Under `stop_at_n`
/// the counter freezes once the last vertex is reached.
fn recursive_dfs(g: &Graph, seed: usize, stop_at_n: bool) -> (Vec<usize>, usize) {
    fn visit(
        g: &Graph,
        v: usize,
        seen: &mut Vec<bool>,
        order: &mut Vec<usize>,
        t: &mut usize,
        stop: bool,
    ) -> bool {
        seen[v] = true;
        order.push(v);
        if stop && order.len() == g.n() {
            return true;
        }
        for &w in g.neighbors(v) {
            if !seen[w] {
                *t += 1;
                if visit(g, w, seen, order, t, stop) {
                    return true;
                }
                *t += 1;
            }
        }
        false
    }
    let mut seen = vec![false; g.n()];
    let mut order = Vec::new();
    let mut t = 0;
    visit(g, seed, &mut seen, &mut order, &mut t, stop_at_n);
    (order, t)
}

#[test]
fn star_always_takes_two_n_minus_two() {
    for n in 3..=15 {
        let g = gen_star(n).unwrap();
        for seed in 0..n {
            assert_eq!(
                run_ordering_only(&g, seed, Termination::Standard)
                    .unwrap()
                    .t,
                2 * n - 2
            );
        }
    }
    assert_eq!(
        run_ordering_only(&gen_star(10).unwrap(), 0, Termination::Standard)
            .unwrap()
            .t,
        18
    );
}

#[test]
fn line_from_endpoint_with_early_stop() {
    let g = gen_line(6).unwrap();
    let trace = run_ordering_only(&g, 0, Termination::OrderEqualsN).unwrap();
    assert_eq!(trace.t, 5);
    assert_eq!(trace.ordering.sequence(), &[0, 1, 2, 3, 4, 5]);
    assert_eq!(trace.backtrack_count(), 0);
}

#[test]
fn single_vertex_and_single_edge() {
    let g = Graph::empty(1, false).unwrap();
    let trace = run_ordering_only(&g, 0, Termination::Standard).unwrap();
    assert_eq!(trace.t, 0);
    assert_eq!(trace.ordering.labels(), &[1]);

    let edge = gen_line(2).unwrap();
    let trace = run_ordering_only(&edge, 0, Termination::Standard).unwrap();
    assert_eq!(trace.t, 2);
    assert_eq!(
        trace.events.iter().map(|e| e.kind).collect::<Vec<_>>(),
        vec![EventKind::InitForward, EventKind::Backtrack]
    );
}

#[test]
fn matches_recursive_oracle() {
    for s in 0..60u64 {
        let n = 4 + (s as usize % 12);
        let g = gen_connected_erdos_renyi(n, 0.3, s).unwrap();
        let seed = (s as usize * 7) % n;
        for (variant, stop) in [
            (Termination::Standard, false),
            (Termination::OrderEqualsN, true),
        ] {
            let trace = run_ordering_only(&g, seed, variant).unwrap();
            let (order, t) = recursive_dfs(&g, seed, stop);
            assert_eq!(trace.ordering.sequence(), order.as_slice());
            assert_eq!(trace.t, t);
            assert_eq!(trace.t, trace.forward_count() + trace.backtrack_count());
            assert_eq!(trace.forward_count(), n - 1);
        }
    }
}

#[test]
fn prop1_bound_on_random_graphs() {
    for s in 0..1000 {
        let g = gen_connected_erdos_renyi(20, 0.2, s).unwrap();
        assert!(verify_prop1_bound(&g, (s % 20) as usize).unwrap());
    }
    let k5 = gen_complete(5).unwrap();
    for seed in 0..5 {
        assert!(
            run_ordering_only(&k5, seed, Termination::Standard)
                .unwrap()
                .t
                <= 8
        );
    }
}

#[test]
fn agent_state_invariants() {
    let g = gen_connected_erdos_renyi(12, 0.25, 4).unwrap();
    let trace = run_ordering_only(&g, 3, Termination::Standard).unwrap();
    for (v, a) in trace.agents.iter().enumerate() {
        assert!(a.done);
        assert_eq!(a.order, Some(trace.ordering.label(v)));
        assert_eq!(a.parent.is_none(), v == 3);
        assert_eq!(a.neighborhood, g.neighbors(v));
    }
    assert!(comm_time(&g, &trace.ordering).unwrap().total() <= trace.t);
}

#[test]
fn greedy_actions_match_centralized_executor() {
    for s in 0..40 {
        let n = 3 + (s as usize % 5);
        let g = gen_connected_erdos_renyi(n, 0.5, s).unwrap();
        let problem = gen_random_coverage_problem(n, 8, 3, s).unwrap();
        let trace = run_algorithm1(&g, 0, Some(&problem), Termination::Standard).unwrap();
        let (joint, _) = greedy_execute(&problem, &trace.ordering).unwrap();
        for (k, rec) in trace.greedy_actions.iter().enumerate() {
            assert_eq!(rec.agent, trace.ordering.sequence()[k]);
            assert_eq!(rec.choice, Some(joint.choice()[rec.agent]));
        }
    }
}

#[test]
fn injected_policy_changes_ordering() {
    let g = gen_star(5).unwrap();
    let mut largest = |_at: usize, c: &[usize]| *c.last().unwrap();
    let trace = run_algorithm1_with_policy::<greedy_order::CoverageObjective, _>(
        &g,
        0,
        None,
        Termination::Standard,
        &mut largest,
    )
    .unwrap();
    assert_eq!(trace.ordering.sequence(), &[0, 4, 3, 2, 1]);
    assert_eq!(trace.t, 8);
}

#[test]
fn trace_exports() {
    let trace = run_ordering_only(&gen_line(3).unwrap(), 1, Termination::Standard).unwrap();
    assert_eq!(
        trace.events_csv(),
        "time,from,to,kind\n1,1,0,init-forward\n2,0,1,backtrack\n3,1,2,init-forward\n4,2,1,backtrack\n"
    );
    let json = serde_json::to_value(trace.summary()).unwrap();
    assert_eq!(json["t"], 4);
    assert_eq!(json["variant"], "standard");
    assert_eq!(json["ordering"], serde_json::json!([2, 1, 3]));
}

#[test]
fn rejected_inputs() {
    let dc = gen_directed_cycle(4).unwrap();
    assert!(matches!(
        run_ordering_only(&dc, 0, Termination::Standard),
        Err(Error::Argument(_))
    ));
    let split = Graph::empty(3, false).unwrap();
    assert!(matches!(
        run_ordering_only(&split, 0, Termination::Standard),
        Err(Error::Domain(_))
    ));
    assert!(run_ordering_only(&gen_line(3).unwrap(), 5, Termination::Standard).is_err());
    assert_eq!(
        "order-n".parse::<Termination>().unwrap(),
        Termination::OrderEqualsN
    );
}
