//! Checks that averaging functionals are independent before solving, and
//! measures how well a set of domains covers a region.
//!
//! The precheck orders the domains so that each one contains a small ball
//! missed by all later ones; such an ordering proves independence.

use akhs::domain::{
    fill_distance, unisolvence_precheck, verify_witness, AverageSample, Domain, HistoProblem, UnisolvenceReport,
};
use akhs::experiments::linspace;

fn describe(label: &str, problem: &HistoProblem) {
    match unisolvence_precheck(problem, None) {
        UnisolvenceReport::Witness(w) => {
            println!("{label}: independent, order {:?}", w.order);
            for (k, b) in w.balls.iter().enumerate().take(3) {
                println!("    position {}: ball at {:?} with radius {:.4}", k + 1, b.center, b.radius);
            }
            println!("    witness verified: {}", verify_witness(problem, &w));
        }
        UnisolvenceReport::Failure(f) => println!(
            "{label}: stuck at position {} (sample {}), {}: {}",
            f.position,
            f.domain + 1,
            if f.conclusive { "dependent" } else { "inconclusive" },
            f.message
        ),
    }
}

fn main() -> akhs::Result<()> {
    let overlapping = HistoProblem::uniform_segments(&linspace(-1.0, 1.0, 9), 0.6, &[0.0; 9])?;
    describe("overlapping segments", &overlapping);

    let disks: Vec<Domain> = (0..5)
        .map(|i| Domain::ball(vec![0.2 * i as f64, 0.05 * (i % 2) as f64], 0.3))
        .collect::<akhs::Result<_>>()?;
    describe("chain of disks", &HistoProblem::from_parts(disks, &[0.0; 5])?);

    let seg = Domain::segment(0.0, 0.5)?;
    let twins = HistoProblem::new_allowing_duplicates(vec![
        AverageSample::new(seg.clone(), 1.0)?,
        AverageSample::new(seg, 1.0)?,
    ])?;
    describe("duplicated segment", &twins);

    let region = Domain::segment(0.0, 1.0)?;
    for n in [5, 9, 17] {
        let p = HistoProblem::uniform_segments(&linspace(-1.0, 1.0, n), 0.2, &vec![0.0; n])?;
        println!("fill distance of {n} segments on [-1, 1]: {:.4}", fill_distance(&p, &region, None)?);
    }
    Ok(())
}
