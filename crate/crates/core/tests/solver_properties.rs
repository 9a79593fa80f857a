mod common;

use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use akhs::domain::{unisolvence_precheck, verify_witness, AverageSample, Domain, HistoProblem, UnisolvenceReport};
use akhs::experiments::{lagrange_table, linspace};
use akhs::kernel::{matern_pair, pair_by_name};
use akhs::solver::{histopolate, AssemblyOptions, HistoMatrix, Assembly, Kernel};
use akhs::Error;

fn random_problem(rng: &mut ChaCha8Rng, n: usize, half: f64) -> HistoProblem {
    let samples = (0..n)
        .map(|i| {
            let c = -1.0 + 2.0 * i as f64 / (n - 1) as f64 + rng.gen_range(-0.02..0.02);
            AverageSample::new(Domain::segment(c, half).unwrap(), rng.gen_range(-1.0..1.0)).unwrap()
        })
        .collect();
    HistoProblem::new(samples).unwrap()
}

#[test]
fn permuting_samples_permutes_coefficients() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let kernel: Kernel = matern_pair(2.0, 0.12).unwrap().into();
    let opts = AssemblyOptions::default();
    let problem = random_problem(&mut rng, 15, 0.06);
    let s = histopolate(&problem, &kernel, &opts).unwrap();
    let mut order: Vec<usize> = (0..15).collect();
    order.shuffle(&mut rng);
    let permuted = HistoProblem::new(order.iter().map(|&i| problem.samples()[i].clone()).collect()).unwrap();
    let t = histopolate(&permuted, &kernel, &opts).unwrap();
    for (k, &i) in order.iter().enumerate() {
        let (u, v) = (t.coefficients()[k], s.coefficients()[i]);
        assert!((u - v).abs() < 1e-12 * (1.0 + v.abs()), "{u} vs {v}");
    }
    for x in linspace(-1.2, 1.2, 49) {
        assert!((s.evaluate(&[x]).unwrap() - t.evaluate(&[x]).unwrap()).abs() < 1e-12);
    }
}

#[test]
fn histopolant_is_the_lagrange_combination_of_the_data() {
    let pair = pair_by_name("inverse-quadratic", 1.0, 0.4).unwrap();
    let centers = linspace(-1.0, 1.0, 5);
    let data = [0.2, -0.4, 1.0, 0.5, 0.3];
    let xs = linspace(-1.5, 1.5, 31);
    let table = lagrange_table(&pair, &centers, &xs).unwrap();
    let problem = HistoProblem::uniform_segments(&centers, 0.4, &data).unwrap();
    let s = histopolate(&problem, &pair.clone().into(), &AssemblyOptions::default()).unwrap();
    for (r, &x) in xs.iter().enumerate() {
        let combo: f64 = table.values[r].iter().zip(&data).map(|(l, d)| l * d).sum();
        assert!((combo - s.evaluate(&[x]).unwrap()).abs() < 1e-10);
        let mean: f64 = table.means[r].iter().zip(&data).map(|(l, d)| l * d).sum();
        let direct = s.evaluate_mean(&Domain::segment(x, 0.2).unwrap()).unwrap();
        assert!((mean - direct).abs() < 1e-10);
    }
    for (i, &c) in centers.iter().enumerate() {
        let r = xs.iter().position(|&x| (x - c).abs() < 1e-12).unwrap();
        for j in 0..5 {
            let expected = if i == j { 1.0 } else { 0.0 };
            assert!((table.means[r][j] - expected).abs() < 1e-8);
        }
    }
}

#[test]
fn positive_transform_bump_gives_an_indefinite_gram_matrix() {
    // α = e^{-x²} has a positive transform, so κ = α * (1/a)χ inherits the
    // sign changes of the sinc and cannot be positive definite.
    let a = 1.0;
    let bump = |t: f64| (-t * t).exp();
    let kappa = |x: f64| common::window_mean(&bump, x, a, &[], 8);
    let xs = linspace(-4.0, 4.0, 81);
    let g = DMatrix::from_fn(xs.len(), xs.len(), |i, j| kappa(xs[i] - xs[j]));
    let eig = g.clone().symmetric_eigen().eigenvalues;
    assert!(eig.min() < -1e-9 * eig.max(), "smallest eigenvalue {:e}", eig.min());
    let mut m = HistoMatrix::new(g, Assembly::ClosedForm);
    assert!(matches!(m.factorize(), Err(Error::NotPositiveDefinite { .. })));
}

#[test]
fn witnesses_verify_geometrically() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..5 {
        let problem = random_problem(&mut rng, 12, 0.15);
        match unisolvence_precheck(&problem, None) {
            UnisolvenceReport::Witness(w) => assert!(verify_witness(&problem, &w)),
            other => panic!("{other:?}"),
        }
    }
    let disks: Vec<Domain> = (0..6)
        .map(|i| Domain::ball(vec![0.3 * i as f64, 0.1 * (i % 2) as f64], 0.25).unwrap())
        .collect();
    let problem = HistoProblem::from_parts(disks, &[0.0; 6]).unwrap();
    match unisolvence_precheck(&problem, None) {
        UnisolvenceReport::Witness(w) => assert!(verify_witness(&problem, &w)),
        other => panic!("{other:?}"),
    }
}
