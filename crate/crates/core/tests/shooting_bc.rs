mod common;

use common::{airy_like_series, double_integral, eval_series};
use ifoi_core::cases::{get_case, CaseId, CaseSpec};
use ifoi_core::fracops::MemoryPolicy;
use ifoi_core::ifoi::IfoiSettings;
use ifoi_core::shooting::{
    combine, decompose, solve_bvp, BoundaryCondition, BvpProblem, Rk4Reference, ShootingPair,
};
use ifoi_core::GridFunction;
use proptest::prelude::*;

fn default_settings(case: &CaseSpec) -> IfoiSettings {
    IfoiSettings {
        partition: case.default_partition.clone(),
        n: case.default_n,
        scheme: case.default_scheme,
        policy: MemoryPolicy::Full,
    }
}

#[test]
fn homogeneous_half_of_a_pure_forcing_case_is_x() {
    let case = get_case(CaseId::Case1);
    let d = decompose(
        &case.problem,
        &Rk4Reference {
            n: 100,
            substeps: 10,
        },
    )
    .unwrap();
    for (x, v) in d.pair.u2.nodes().zip(d.pair.u2.values()) {
        assert!((v - x).abs() <= 1e-14);
    }
    assert_eq!(d.pair.u1.first(), -3.0);
    assert_eq!(d.pair.u2.first(), 0.0);
}

#[test]
fn homogeneous_half_of_the_picard_case() {
    let case = get_case(CaseId::Case4);
    let d = decompose(
        &case.problem,
        &Rk4Reference {
            n: 50,
            substeps: 20_000,
        },
    )
    .unwrap();
    let series = airy_like_series(0.0, 1.0, 0.0, 80);
    assert!((d.pair.u2.last() - eval_series(&series, 1.0)).abs() <= 1e-12);
    let particular = airy_like_series(3.0, 0.0, 1.0, 80);
    assert!((d.pair.u1.last() - eval_series(&particular, 1.0)).abs() <= 1e-12);
}

#[test]
fn zero_forcing_zero_left_value() {
    let p = BvpProblem::forced(
        |_| 0.0,
        BoundaryCondition::dirichlet(0.0),
        BoundaryCondition::dirichlet(1.0),
    );
    let case = get_case(CaseId::Case3);
    let d = decompose(&p, &default_settings(&case)).unwrap();
    assert!(d.pair.u1.values().iter().all(|&v| v == 0.0));
}

#[test]
fn boundary_residuals_on_every_case() {
    for id in CaseId::ALL {
        let case = get_case(id);
        let s = solve_bvp(&case.problem, &default_settings(&case)).unwrap();
        assert_eq!(s.solution.first(), case.left_value(), "{id}");
        let residual = case.problem.right_bc.right_residual(&s.solution);
        assert!(residual.abs() <= 1e-9, "{id}: {residual}");
    }
}

#[test]
fn residual_with_exact_halves() {
    // Exact grids: u1 = -3 + x², u2 = x; the matched combination hits b = -2.
    let pair = ShootingPair {
        u1: GridFunction::sample(100, |x| -3.0 + x * x).unwrap(),
        u2: GridFunction::sample(100, |x| x).unwrap(),
    };
    let bc = BoundaryCondition::dirichlet(-2.0);
    let c = ifoi_core::shooting::match_coefficient(&pair, &bc).unwrap();
    let u = combine(&pair, c).unwrap();
    assert!(bc.right_residual(&u).abs() <= 1e-9);
}

proptest! {
    #[test]
    fn combination_is_linear_in_c(c1 in -50.0f64..50.0, c2 in -50.0f64..50.0, k in 1.0f64..9.0) {
        let pair = ShootingPair {
            u1: GridFunction::sample(30, move |x| (k * x).sin()).unwrap(),
            u2: GridFunction::sample(30, move |x| x * (1.0 + k * x)).unwrap(),
        };
        let lhs = combine(&pair, c1 + c2).unwrap();
        let rhs = combine(&pair, c1).unwrap();
        for j in 0..=30 {
            let expected = rhs.values()[j] + c2 * pair.u2.values()[j];
            prop_assert!((lhs.values()[j] - expected).abs() <= 1e-12 * (1.0 + expected.abs()));
        }
    }

    #[test]
    fn robin_match_is_exact(weight in -50.0f64..300.0, value in -10.0f64..10.0) {
        prop_assume!((1.0 + weight).abs() > 1e-3);
        let case = get_case(CaseId::Case1)
            .with_boundary(BoundaryCondition::dirichlet(1.0), BoundaryCondition::robin(weight, value).unwrap())
            .unwrap();
        let s = solve_bvp(&case.problem, &Rk4Reference { n: 40, substeps: 4 }).unwrap();
        let r = case.problem.right_bc.right_residual(&s.solution);
        prop_assert!(r.abs() <= 1e-9 * (1.0 + weight.abs()));
    }
}

/// `(1 + |c|)·max(IVP errors)` bounds the combined error.
fn check_neutrality(case: &CaseSpec, u1_truth: &GridFunction, u2_truth: &GridFunction) {
    let s = solve_bvp(&case.problem, &default_settings(case)).unwrap();
    let e1 = s.decomposition.pair.u1.sup_distance(u1_truth).unwrap();
    let e2 = s.decomposition.pair.u2.sup_distance(u2_truth).unwrap();
    let combined = ifoi_core::cases::sup_error(&s.solution, case).unwrap();
    let bound = (1.0 + s.c.abs()) * e1.max(e2);
    assert!(combined <= bound, "{}: {combined} > {bound}", case.id);
}

#[test]
fn shooting_neutrality() {
    let case1 = get_case(CaseId::Case1);
    let n = case1.default_n;
    let f1 = |x: f64| -20.0 * (-10.0 * (x - 0.7) * (x - 0.7)).exp();
    check_neutrality(
        &case1,
        &GridFunction::sample(n, |x| -3.0 + double_integral(f1, x, 1e-5)).unwrap(),
        &GridFunction::sample(n, |x| x).unwrap(),
    );

    let case3 = get_case(CaseId::Case3);
    let n = case3.default_n;
    let f3 = |x: f64| -x * (100.0 * x).cos().powi(2);
    check_neutrality(
        &case3,
        &GridFunction::sample(n, |x| 5.0 + double_integral(f3, x, 1e-5)).unwrap(),
        &GridFunction::sample(n, |x| x).unwrap(),
    );

    let case4 = get_case(CaseId::Case4);
    let n = case4.default_n;
    let p = airy_like_series(3.0, 0.0, 1.0, 80);
    let h = airy_like_series(0.0, 1.0, 0.0, 80);
    check_neutrality(
        &case4,
        &GridFunction::sample(n, |x| eval_series(&p, x)).unwrap(),
        &GridFunction::sample(n, |x| eval_series(&h, x)).unwrap(),
    );
}

#[test]
fn resonant_problem_is_singular() {
    // u2 = x satisfies u' - u = 0 at x = 1, so no multiple of it can fix the end.
    let p = BvpProblem::forced(
        |x| x,
        BoundaryCondition::dirichlet(0.0),
        BoundaryCondition::robin(-1.0, 2.0).unwrap(),
    );
    let err = solve_bvp(&p, &Rk4Reference { n: 16, substeps: 2 }).unwrap_err();
    assert!(matches!(err, ifoi_core::Error::SingularCombination { .. }));
}

#[test]
fn left_robin_is_rejected() {
    let p = BvpProblem::forced(
        |_| 1.0,
        BoundaryCondition::robin(1.0, 0.0).unwrap(),
        BoundaryCondition::dirichlet(0.0),
    );
    assert!(solve_bvp(&p, &Rk4Reference { n: 16, substeps: 2 }).is_err());
}
