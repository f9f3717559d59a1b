//! The seeded generator behind every random sample.
//!
//! The state advances as `x ← x · 6364136223846793005 + 1442695040888963407`
//! (mod 2⁶⁴), starting from the seed itself. Each draw advances once and
//! reads the new state.

use forcing_core::Graph;

pub const MULTIPLIER: u64 = 6364136223846793005;
pub const INCREMENT: u64 = 1442695040888963407;

#[derive(Debug, Clone)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Lcg { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_mul(MULTIPLIER).wrapping_add(INCREMENT);
        self.state
    }

    /// The top `k` bits of the next state, `k ≤ 64`.
    pub fn bits(&mut self, k: u32) -> u64 {
        let x = self.next_u64();
        if k == 0 {
            0
        } else {
            x >> (64 - k)
        }
    }

    /// `⌊hi · bound / 2³²⌋` where `hi` is the top 32 bits of the next state.
    pub fn below(&mut self, bound: u32) -> u32 {
        ((self.bits(32) * bound as u64) >> 32) as u32
    }

    /// A uniform graph on `n ≤ 11` vertices: one draw of `n(n−1)/2` bits,
    /// read as a pair code.
    pub fn graph(&mut self, n: usize) -> Graph {
        let pairs = (n * n.saturating_sub(1) / 2) as u32;
        Graph::from_pair_code(n, self.bits(pairs)).expect("order at most 11")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_draws() {
        let mut r = Lcg::new(0);
        assert_eq!(r.next_u64(), INCREMENT);
        assert_eq!(
            r.next_u64(),
            INCREMENT.wrapping_mul(MULTIPLIER).wrapping_add(INCREMENT)
        );
        let mut r = Lcg::new(7);
        for _ in 0..100 {
            assert!(r.below(5) < 5);
        }
        assert_eq!(Lcg::new(3).graph(4), Lcg::new(3).graph(4));
    }
}
