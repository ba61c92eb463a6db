//! Seeded, portable pseudo-random source.
//!
//! The generator is xoshiro256++ seeded through SplitMix64 (the reference
//! `seed_from_u64` expansion). Derived operations are pinned so fixtures
//! can be reproduced in any language:
//!
//! * `below(b)` maps a 64-bit draw `r` to `floor(r * b / 2^64)`.
//! * `unit()` is `(r >> 11) * 2^-53`, a double in `[0, 1)`.
//! * `shuffle` is a descending Fisher-Yates: for `i = len-1 ..= 1`, swap `i`
//!   with `below(i + 1)`.

use rand_core::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

#[derive(Debug, Clone)]
pub struct SeededRng(Xoshiro256PlusPlus);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self(Xoshiro256PlusPlus::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    pub fn below(&mut self, bound: u64) -> u64 {
        ((u128::from(self.next_u64()) * u128::from(bound)) >> 64) as u64
    }

    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }

    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..n).collect();
        self.shuffle(&mut idx);
        idx
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_draw_matches_reference_generator() {
        // Reference value from an independent xoshiro256++/SplitMix64 implementation.
        assert_eq!(SeededRng::new(7).next_u64(), 1021219803524665661);
    }

    #[test]
    fn unit_is_half_open() {
        let mut rng = SeededRng::new(1);
        for _ in 0..10_000 {
            let u = rng.unit();
            assert!((0.0..1.0).contains(&u));
        }
    }

    #[test]
    fn permutation_is_a_permutation() {
        let mut p = SeededRng::new(3).permutation(50);
        p.sort_unstable();
        assert_eq!(p, (0..50).collect::<Vec<_>>());
    }
}
