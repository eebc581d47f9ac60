//! Seeded random instances for property checks and sweeps. Each trial
//! draws from its own stream so results do not depend on scheduling.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::rational::{qf, Q};
use crate::trop::{Exp2, TropPoly2};

pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A rational in `[−5, 5]` with denominator at most 4.
pub fn random_coeff(rng: &mut impl Rng) -> Q {
    let d = rng.gen_range(1..=4i64);
    qf(rng.gen_range(-5 * d..=5 * d), d)
}

/// `1..=max_points` distinct exponents from the box `[0, side]²`.
pub fn random_support(rng: &mut impl Rng, max_points: usize, side: u32) -> Vec<Exp2> {
    let mut all: Vec<Exp2> = (0..=side).flat_map(|i| (0..=side).map(move |j| Exp2::new(i, j))).collect();
    all.shuffle(rng);
    let n = rng.gen_range(1..=max_points.min(all.len()));
    all.truncate(n);
    all.sort();
    all
}

pub fn poly_on(rng: &mut impl Rng, support: &[Exp2]) -> TropPoly2 {
    TropPoly2::new(support.iter().map(|&e| (e, random_coeff(rng)))).expect("distinct nonempty support")
}

/// Every exponent with `i + j ≤ degree`.
pub fn full_support(degree: u32) -> Vec<Exp2> {
    (0..=degree).flat_map(|i| (0..=degree - i).map(move |j| Exp2::new(i, j))).collect()
}

/// A pair with supports of at most eight points in `[0, 3]²`.
pub fn bernstein_pair(seed: u64, index: u64) -> (TropPoly2, TropPoly2) {
    let mut rng = trial_rng(seed, index);
    let sf = random_support(&mut rng, 8, 3);
    let sg = random_support(&mut rng, 8, 3);
    (poly_on(&mut rng, &sf), poly_on(&mut rng, &sg))
}

/// A curve with at least two support points in `[0, 3]²`.
pub fn random_curve(seed: u64, index: u64) -> TropPoly2 {
    let mut rng = trial_rng(seed, index);
    loop {
        let s = random_support(&mut rng, 9, 3);
        if s.len() >= 2 {
            return poly_on(&mut rng, &s);
        }
    }
}

fn spans_both(s: &[Exp2]) -> bool {
    let xs: BTreeSet<u32> = s.iter().map(|e| e.i).collect();
    let ys: BTreeSet<u32> = s.iter().map(|e| e.j).collect();
    xs.len() >= 2 && ys.len() >= 2
}

/// A pair in `[0, 2]²` where both polynomials involve two distinct powers
/// of each variable, so every resultant of the pipeline is defined. The
/// substituted supports stay within the Sylvester size limit for the
/// typical separating exponent; callers skip the rare larger instances.
pub fn pipeline_pair(seed: u64, index: u64) -> (TropPoly2, TropPoly2) {
    let mut rng = trial_rng(seed, index);
    loop {
        let sf = random_support(&mut rng, 6, 2);
        let sg = random_support(&mut rng, 6, 2);
        if spans_both(&sf) && spans_both(&sg) {
            return (poly_on(&mut rng, &sf), poly_on(&mut rng, &sg));
        }
    }
}

/// Two polynomials with full support of the given degree.
pub fn full_support_pair(seed: u64, index: u64, degree: u32) -> (TropPoly2, TropPoly2) {
    let mut rng = trial_rng(seed, index);
    let s = full_support(degree);
    (poly_on(&mut rng, &s), poly_on(&mut rng, &s))
}
