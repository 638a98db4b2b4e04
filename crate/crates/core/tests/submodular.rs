mod common;

use greedy_order::submodular::*;
use greedy_order::{Error, Ordering};

fn set(e: &[usize]) -> ElementSet {
    ElementSet::from_elements(e).unwrap()
}

fn unit_problem(ground: usize, agents: Vec<Vec<ElementSet>>) -> SubmodularProblem {
    SubmodularProblem::new(ground, agents, CoverageObjective::unit(ground).unwrap()).unwrap()
}

fn two_agent() -> SubmodularProblem {
    unit_problem(
        3,
        vec![
            vec![set(&[]), set(&[0, 1])],
            vec![set(&[]), set(&[1]), set(&[2])],
        ],
    )
}

#[test]
fn evaluate_examples() {
    let p = unit_problem(
        4,
        vec![
            vec![set(&[]), set(&[0, 1])],
            vec![set(&[]), set(&[2, 3]), set(&[0, 1])],
        ],
    );
    assert_eq!(evaluate_w(&p, &p.opt_out()).unwrap(), 0.0);
    assert_eq!(evaluate_w(&p, &p.joint(vec![1, 1]).unwrap()).unwrap(), 4.0);
    assert_eq!(evaluate_w(&p, &p.joint(vec![1, 2]).unwrap()).unwrap(), 2.0);
    assert!(matches!(p.joint(vec![1, 7]), Err(Error::Argument(_))));
    assert!(p.joint_from_sets(&[set(&[0, 1]), set(&[3])]).is_err());
}

#[test]
fn two_agent_greedy_and_optimum() {
    let p = two_agent();
    let (joint, w) = greedy_execute(&p, &Ordering::identity(2).unwrap()).unwrap();
    assert_eq!(joint.choice(), &[1, 2]);
    assert_eq!(joint.sets(&p), vec![set(&[0, 1]), set(&[2])]);
    assert_eq!(w, 3.0);
    assert_eq!(brute_force_opt(&p).unwrap().1, 3.0);
    assert_eq!(common::brute_opt(&p), 3.0);
}

#[test]
fn single_agent_greedy_is_optimal() {
    let p = SubmodularProblem::new(
        3,
        vec![vec![set(&[]), set(&[0]), set(&[1, 2]), set(&[0, 2])]],
        CoverageObjective::new(vec![0.5, 0.2, 0.4]).unwrap(),
    )
    .unwrap();
    let (joint, w) = greedy_execute(&p, &Ordering::identity(1).unwrap()).unwrap();
    assert_eq!(joint.choice(), &[3]);
    assert!((w - 0.9).abs() < 1e-12);
    assert_eq!(brute_force_opt(&p).unwrap().1, w);
}

#[test]
fn all_opt_out_problem() {
    let p = unit_problem(2, vec![vec![set(&[])], vec![set(&[])]]);
    assert_eq!(brute_force_opt(&p).unwrap().1, 0.0);
    assert_eq!(
        greedy_execute(&p, &Ordering::identity(2).unwrap())
            .unwrap()
            .1,
        0.0
    );
}

#[test]
fn half_guarantee_on_small_instances() {
    for seed in 0..200 {
        let n = 1 + (seed as usize % 5);
        let p = gen_random_coverage_problem(n, 8, 3, seed).unwrap();
        let opt = common::brute_opt(&p);
        assert!((brute_force_opt(&p).unwrap().1 - opt).abs() < 1e-12);
        for perm in common::permutations(n) {
            let pi = Ordering::from_sequence(perm).unwrap();
            let (_, w) = greedy_execute(&p, &pi).unwrap();
            assert!(w >= 0.5 * opt - 1e-9, "seed {seed}: {w} < {opt} / 2");
        }
    }
}

#[test]
fn checker_examples() {
    let cov = CoverageObjective::new(vec![0.3, 0.0, 2.0, 1.0, 0.7]).unwrap();
    assert!(check_submodular_monotone(&cov, 5).unwrap());
    let square = |s: ElementSet| (s.len() * s.len()) as f64;
    assert!(!check_submodular_monotone(&square, 4).unwrap());
    // The witness A = {}, B = {0}, x = 1.
    assert!(square(set(&[1])) - square(set(&[])) < square(set(&[0, 1])) - square(set(&[0])));
    let zero = |_: ElementSet| 0.0;
    assert!(check_submodular_monotone(&zero, 6).unwrap());
    assert!(matches!(
        check_submodular_monotone(&zero, 40),
        Err(Error::Budget(_))
    ));
}

#[test]
fn generator_postconditions() {
    let p = gen_random_coverage_problem(5, 8, 4, 17).unwrap();
    for a in 0..p.agent_count() {
        assert!(p.actions(a).contains(&ElementSet::EMPTY));
        assert_eq!(p.actions(a).len(), 5);
    }
    assert!(check_submodular_monotone(p.objective(), p.ground_size()).unwrap());
    assert_eq!(p, gen_random_coverage_problem(5, 8, 4, 17).unwrap());
}

#[test]
fn construction_errors() {
    assert!(matches!(
        SubmodularProblem::new(
            2,
            vec![vec![set(&[0])]],
            CoverageObjective::unit(2).unwrap()
        ),
        Err(Error::Argument(_))
    ));
    assert!(CoverageObjective::new(vec![1.0, -0.5]).is_err());
    assert!(ElementSet::from_elements(&[64]).is_err());
    let p = two_agent();
    assert!(matches!(
        greedy_execute(&p, &Ordering::identity(3).unwrap()),
        Err(Error::Argument(_))
    ));
}

#[test]
fn json_round_trip() {
    let p = gen_random_coverage_problem(3, 6, 2, 5).unwrap();
    assert_eq!(SubmodularProblem::from_json(&p.to_json()).unwrap(), p);
    let text =
        r#"{"ground_size": 3, "weights": [1, 1, 1], "agents": [[[], [0, 1]], [[], [1], [2]]]}"#;
    assert_eq!(SubmodularProblem::from_json(text).unwrap(), two_agent());
    assert!(matches!(
        SubmodularProblem::from_json("{"),
        Err(Error::Parse(_))
    ));
}
