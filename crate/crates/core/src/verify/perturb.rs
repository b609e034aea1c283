use num::{BigInt, One};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::VertexFunction;
use crate::value::Value;

/// Resolution of the random shifts: each shift is `eps * k / SHIFT_STEPS`.
pub const SHIFT_STEPS: i64 = 1024;

/// Independent stream per trial, so trials can run in any order.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// Shifts every vertex value by `eps * k / SHIFT_STEPS` with `|k| < SHIFT_STEPS`
/// drawn uniformly, so the sup distance to `f` is strictly below `eps`
/// (or zero when `eps` is zero).
pub fn perturb_uniform(f: &VertexFunction, eps: &Value, rng: &mut impl Rng) -> VertexFunction {
    let steps = Value::from_integer(BigInt::from(SHIFT_STEPS));
    let values = f
        .values()
        .iter()
        .map(|v| {
            let k: i64 = rng.gen_range(-(SHIFT_STEPS - 1)..SHIFT_STEPS);
            v + eps * Value::from_integer(BigInt::from(k)) / &steps
        })
        .collect();
    VertexFunction::from_values(values)
}

/// Makes all vertex values pairwise distinct without reordering distinct ones.
///
/// Vertex `v` moves up by `(pi(v) + 1) * eta` for a random permutation `pi`
/// and `eta = gap / (2 (n + 1))`, where `gap` is the smallest distance between
/// distinct values (1 if all values agree). Total shift stays below `gap / 2`.
pub fn perturb_distinct(f: &VertexFunction, rng: &mut impl Rng) -> VertexFunction {
    let n = f.len();
    let mut sorted: Vec<&Value> = f.values().iter().collect();
    sorted.sort();
    sorted.dedup();
    let gap = sorted
        .windows(2)
        .map(|w| w[1] - w[0])
        .min()
        .unwrap_or_else(Value::one);
    let eta = gap / Value::from_integer(BigInt::from(2 * (n + 1)));
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let values = f
        .values()
        .iter()
        .zip(&perm)
        .map(|(v, &p)| v + &eta * Value::from_integer(BigInt::from(p + 1)))
        .collect();
    VertexFunction::from_values(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::{int, ratio};
    use std::collections::BTreeSet;

    #[test]
    fn uniform_shift_is_bounded_and_seeded() {
        let f = VertexFunction::from_values(vec![int(0), int(1), int(2)]);
        let eps = ratio(1, 4);
        let g = perturb_uniform(&f, &eps, &mut trial_rng(7, 3));
        assert!(f.sup_distance(&g) < eps);
        assert_eq!(g, perturb_uniform(&f, &eps, &mut trial_rng(7, 3)));
        let zero = perturb_uniform(&f, &int(0), &mut trial_rng(7, 3));
        assert_eq!(zero, f);
    }

    #[test]
    fn distinct_values_keep_order() {
        let f = VertexFunction::from_values(vec![int(0), int(0), int(1), int(1), int(3)]);
        for seed in 0..10 {
            let g = perturb_distinct(&f, &mut trial_rng(seed, 0));
            let set: BTreeSet<_> = g.values().iter().collect();
            assert_eq!(set.len(), 5);
            for u in 0..5 {
                for v in 0..5 {
                    if f.value(u) < f.value(v) {
                        assert!(g.value(u) < g.value(v));
                    }
                }
            }
        }
    }
}
