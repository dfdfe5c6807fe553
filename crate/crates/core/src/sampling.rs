//! Seeded randomness and prime sampling.
//!
//! Every randomized check derives its own generator from the master seed
//! and a label, so results do not depend on the order checks run in.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fields::is_prime;

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const DEFAULT_PRIME_RANGE: (u64, u64) = (10_000, 1_000_000);
pub const DEFAULT_SAMPLES: usize = 20;
pub const RESAMPLE_BUDGET: usize = 100;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn derive_seed(master: u64, label: &str) -> u64 {
    label
        .bytes()
        .fold(splitmix(master), |h, b| splitmix(h ^ b as u64))
}

pub fn rng_for(master: u64, label: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(master, label))
}

/// A uniformly chosen prime `p ≡ 1 (mod 3)` in `[lo, hi]`.
pub fn random_prime_1_mod_3<R: Rng + ?Sized>(rng: &mut R, lo: u64, hi: u64) -> u64 {
    let lo = lo.max(7);
    assert!(lo <= hi, "empty prime range");
    // one residue class mod 6 covers all p ≡ 1 mod 3 above 3
    let first = lo + (7 - lo % 6) % 6;
    assert!(first <= hi, "no candidates in range");
    let count = (hi - first) / 6 + 1;
    for _ in 0..100_000 {
        let p = first + 6 * rng.random_range(0..count);
        if is_prime(p) {
            return p;
        }
    }
    // tiny ranges: walk instead
    (0..count)
        .map(|k| first + 6 * k)
        .find(|&p| is_prime(p))
        .expect("no prime ≡ 1 mod 3 in range")
}

/// `count` distinct primes `≡ 1 (mod 3)` from `[lo, hi]`.
pub fn distinct_primes<R: Rng + ?Sized>(rng: &mut R, count: usize, lo: u64, hi: u64) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count {
        let p = random_prime_1_mod_3(rng, lo, hi);
        if !out.contains(&p) {
            out.push(p);
        }
        attempts += 1;
        assert!(attempts < 100 * count + 1000, "prime range too small for {count} distinct primes");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_are_one_mod_three() {
        let mut rng = rng_for(1, "primes");
        let ps = distinct_primes(&mut rng, 20, 10_000, 1_000_000);
        assert_eq!(ps.len(), 20);
        for p in ps {
            assert!(is_prime(p) && p % 3 == 1 && (10_000..=1_000_000).contains(&p));
        }
        assert_eq!(random_prime_1_mod_3(&mut rng, 7, 7), 7);
        assert_eq!(random_prime_1_mod_3(&mut rng, 8, 13), 13);
    }

    #[test]
    fn labels_separate_streams() {
        assert_ne!(derive_seed(5, "a"), derive_seed(5, "b"));
        assert_eq!(derive_seed(5, "a"), derive_seed(5, "a"));
    }
}
