mod common;

use common::{fro, gaussian, planted, rng, uniform};
use lrml::matrix::{spectral_norm, svd};
use lrml::solver::{
    data_loss, fit, gradient, lipschitz_constant, objective, relative_fit_error, ridge_closed_form,
    Regularizer, SolverConfig,
};
use lrml::DenseMatrix;

fn random_problem(seed: u64, n: usize, d: usize, l: usize) -> (DenseMatrix, DenseMatrix) {
    let mut g = rng(seed);
    (gaussian(&mut g, n, d), uniform(&mut g, n, l, 0.0, 1.0))
}

#[test]
fn gradient_matches_central_differences() {
    let mut g = rng(41);
    let h = 1e-5;
    for case in 0..20u64 {
        let (n, d, l) = (
            3 + (case as usize % 5),
            2 + (case as usize % 4),
            1 + (case as usize % 3),
        );
        let x = uniform(&mut g, n, d, -1.0, 1.0);
        let y = uniform(&mut g, n, l, -1.0, 1.0);
        let w = uniform(&mut g, d, l, -1.0, 1.0);
        let grad = gradient(&w, &x, &y).unwrap();
        let mut fd = DenseMatrix::zeros(d, l);
        for i in 0..d {
            for j in 0..l {
                let mut plus = w.clone();
                plus[(i, j)] += h;
                let mut minus = w.clone();
                minus[(i, j)] -= h;
                fd[(i, j)] = (data_loss(&plus, &x, &y).unwrap()
                    - data_loss(&minus, &x, &y).unwrap())
                    / (2.0 * h);
            }
        }
        let rel = fro(&fd.sub(&grad).unwrap()) / fro(&grad).max(1e-12);
        assert!(rel <= 1e-5, "case {case}: relative error {rel}");
    }
}

#[test]
fn convex_objectives_decrease_once_step_exceeds_lipschitz() {
    let (x, y) = random_problem(7, 30, 6, 4);
    let lip = lipschitz_constant(&x).unwrap();
    for reg in [
        Regularizer::Trace,
        Regularizer::Frobenius,
        Regularizer::None,
    ] {
        for c in [0.1, 1.0, 5.0] {
            let mut cfg = SolverConfig::new(reg, c);
            // Start below the Lipschitz constant so the early steps are unsafe.
            cfg.t0 = Some(lip / 8.0);
            cfg.max_iters = 200;
            cfg.rel_tol = 1e-14;
            let (_, trace) = fit(&x, &y, &cfg).unwrap();
            for k in 1..trace.objectives.len() {
                if trace.step_params[k] >= lip {
                    let (prev, cur) = (trace.objectives[k - 1], trace.objectives[k]);
                    assert!(
                        cur <= prev + 1e-12 * prev.abs().max(1.0),
                        "{reg:?} C={c} k={k}: {prev} -> {cur}"
                    );
                }
            }
        }
    }
}

#[test]
fn tail_fit_improves_on_start_and_settles() {
    let (x, y) = random_problem(11, 40, 8, 5);
    let cfg = SolverConfig::new(Regularizer::Tail { theta: 2 }, 0.5);
    let (_, trace) = fit(&x, &y, &cfg).unwrap();
    let obj = &trace.objectives;
    assert!(obj.last().unwrap() <= &obj[0]);
    assert!(obj.len() > 11);
    for w in obj[obj.len() - 11..].windows(2) {
        assert!((w[1] - w[0]).abs() / w[0].max(1e-12) < 10.0 * cfg.rel_tol);
    }
}

#[test]
fn trace_components_add_up() {
    let (x, y) = random_problem(13, 25, 5, 4);
    let cfg = SolverConfig::new(Regularizer::Tail { theta: 1 }, 0.7);
    let (w, trace) = fit(&x, &y, &cfg).unwrap();
    for k in 0..trace.objectives.len() {
        let sum = trace.loss_terms[k] + cfg.c * trace.reg_terms[k];
        assert!((sum - trace.objectives[k]).abs() <= 1e-9 * trace.objectives[k].max(1.0));
    }
    let last = *trace.objectives.last().unwrap();
    assert!((objective(&w, &x, &y, &cfg).unwrap() - last).abs() <= 1e-9 * last.max(1.0));
    assert_eq!(trace.objectives.len(), trace.iterations_run + 1);
}

#[test]
fn frobenius_fit_reaches_ridge_solution() {
    let (x, y) = random_problem(17, 60, 6, 3);
    for c in [0.5, 3.0] {
        let mut cfg = SolverConfig::new(Regularizer::Frobenius, c);
        cfg.rel_tol = 1e-14;
        // Slow step growth keeps the cumulative step length large enough to
        // contract all the way to the optimum.
        cfg.gamma = 1.001;
        cfg.max_iters = 20_000;
        let (w, _) = fit(&x, &y, &cfg).unwrap();
        let ridge = ridge_closed_form(&x, &y, c).unwrap();
        let err = fro(&w.sub(&ridge).unwrap());
        assert!(err <= 1e-6, "C={c}: {err}");
    }
}

#[test]
fn zero_weight_tail_equals_unregularized() {
    let (x, y) = random_problem(19, 20, 5, 4);
    let (a, ta) = fit(
        &x,
        &y,
        &SolverConfig::new(Regularizer::Tail { theta: 1 }, 0.0),
    )
    .unwrap();
    let (b, tb) = fit(&x, &y, &SolverConfig::new(Regularizer::None, 0.0)).unwrap();
    assert_eq!(a, b);
    assert_eq!(ta.objectives, tb.objectives);
}

#[test]
fn full_theta_tail_equals_unregularized() {
    let (x, y) = random_problem(23, 20, 4, 3);
    let (a, _) = fit(
        &x,
        &y,
        &SolverConfig::new(Regularizer::Tail { theta: 3 }, 2.0),
    )
    .unwrap();
    let (b, _) = fit(&x, &y, &SolverConfig::new(Regularizer::None, 2.0)).unwrap();
    assert!(fro(&a.sub(&b).unwrap()) <= 1e-12);
}

#[test]
fn tail_fit_recovers_planted_rank() {
    let (x, y, _) = planted(2024, 200, 20, 8, 3);
    let mut cfg = SolverConfig::new(Regularizer::Tail { theta: 3 }, 1.0);
    cfg.gamma = 1.01;
    let (w, _) = fit(&x, &y, &cfg).unwrap();
    let sigma = svd(&w).unwrap().sigma;
    assert!(sigma[3] < 1e-3 * sigma[0], "{sigma:?}");
    assert!(relative_fit_error(&w, &x, &y).unwrap() < 1e-2);
    assert!(spectral_norm(&w).unwrap() > 0.0);
}
