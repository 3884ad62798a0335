//! Deterministic random-instance generators shared by the integration suites.
#![allow(clippy::needless_range_loop)]

use normlab_core::free::{FiniteMetricSpace, FreeVector};
use normlab_core::num::{rat, rat_int, ComplexRat, Rat};
use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small random rational: numerator in `[-max_num, max_num]`, denominator in
/// `[1, max_den]`.
pub fn rand_rat(r: &mut ChaCha8Rng, max_num: i64, max_den: i64) -> Rat {
    let num = r.gen_range(-max_num..=max_num);
    let den = r.gen_range(1..=max_den);
    rat(num, den)
}

pub fn rand_complex(r: &mut ChaCha8Rng, max_num: i64, max_den: i64) -> ComplexRat {
    ComplexRat::new(rand_rat(r, max_num, max_den), rand_rat(r, max_num, max_den))
}

/// Random metric space: rational points in a small cube under the l1 metric,
/// shifted by a constant and perturbed per pair. The constant leaves triangle
/// slack 1, the perturbations stay below 1/4, so the axioms hold by
/// construction (and are re-verified exactly by the constructor).
pub fn rand_metric_space(r: &mut ChaCha8Rng, min_pts: usize, max_pts: usize) -> FiniteMetricSpace {
    let n = r.gen_range(min_pts..=max_pts);
    let dim = 4;
    let points: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut p: Vec<Rat> = (0..dim).map(|_| rat(r.gen_range(0..=32), 8)).collect();
            // Distinctness: spread the first coordinate by the index.
            p[0] += rat(i as i64, 64);
            p
        })
        .collect();
    let mut d = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let base: Rat = points[i]
                .iter()
                .zip(&points[j])
                .map(|(a, b)| {
                    let diff = a - b;
                    if diff < Rat::zero() {
                        -diff
                    } else {
                        diff
                    }
                })
                .fold(Rat::zero(), |acc, t| acc + t);
            let perturbed = base + rat_int(1) + rat(r.gen_range(0..=16), 64);
            d[i][j] = perturbed.clone();
            d[j][i] = perturbed;
        }
    }
    let labels = (0..n).map(|i| format!("p{i}")).collect();
    let base = r.gen_range(0..n);
    FiniteMetricSpace::new(labels, d, base).expect("construction guarantees the axioms")
}

/// Random free vector over the space, with some zero coefficients.
pub fn rand_free_vector(r: &mut ChaCha8Rng, space: &FiniteMetricSpace) -> FreeVector {
    let coeffs = (0..space.points() - 1)
        .map(|_| {
            if r.gen_range(0..4) == 0 {
                Rat::zero()
            } else {
                rand_rat(r, 6, 4)
            }
        })
        .collect();
    FreeVector { coeffs }
}

/// Random uniformly separated space: all distinct-pair distances inside
/// `[a, b]` with `b <= 2a`, which makes any symmetric assignment a metric.
pub fn rand_separated_space(
    r: &mut ChaCha8Rng,
    min_pts: usize,
    max_pts: usize,
) -> (FiniteMetricSpace, Rat, Rat) {
    let n = r.gen_range(min_pts..=max_pts);
    let a = rat(r.gen_range(1..=8), 2);
    let b = &a + rat(r.gen_range(0..=8), 8).min(a.clone()); // a <= b <= 2a
    let mut d = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let span = &b - &a;
            let t = rat(r.gen_range(0..=12), 12);
            let dist = &a + span * t;
            d[i][j] = dist.clone();
            d[j][i] = dist;
        }
    }
    let labels = (0..n).map(|i| format!("s{i}")).collect();
    let space = FiniteMetricSpace::new(labels, d, 0).expect("band metric");
    (space, a, b)
}
