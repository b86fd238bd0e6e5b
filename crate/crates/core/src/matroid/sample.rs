//! Seeded random matroids for property checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::matroid::{exchange_violation, full_mask, Matroid};

/// A random matroid of rank `r` on `[n]`, obtained from `U_{r,n}` by
/// deleting bases in random order as long as the exchange axiom survives.
/// With `loopless`, deletions that would turn an element into a loop are
/// skipped.
pub fn random_matroid<R: Rng + ?Sized>(rng: &mut R, n: usize, r: usize, loopless: bool) -> Result<Matroid> {
    if r > n || n > 16 {
        return Err(Error::OutOfRange(format!("rank {r} on {n} elements")));
    }
    if loopless && r == 0 && n > 0 {
        return Err(Error::OutOfRange("a rank-zero matroid on a nonempty set has loops".into()));
    }
    let mut bases = Matroid::uniform(r, n)?.basis_masks().to_vec();
    let target = rng.random_range(1..=bases.len());
    let mut order = bases.clone();
    order.shuffle(rng);
    let everything = full_mask(n);
    for b in order {
        if bases.len() <= target {
            break;
        }
        let trial: Vec<u64> = bases.iter().copied().filter(|&x| x != b).collect();
        if loopless && trial.iter().fold(0, |acc, x| acc | x) != everything {
            continue;
        }
        // only pairs whose first basis could have used b in an exchange
        let near: Vec<u64> = trial.iter().copied().filter(|x| (x ^ b).count_ones() == 2).collect();
        if exchange_violation(&trial, &near).is_none() {
            bases = trial;
        }
    }
    Matroid::from_masks(n, bases)
}
