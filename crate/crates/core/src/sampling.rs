//! Seeded rational parameter draws. Every drawn number has denominator at
//! most 1000.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cluster::{default_support_values, perturbed_support_values, SupportValues};
use crate::error::{Error, Result};
use crate::exactlin::{int, rat, Rational};
use crate::minkowski::SimplexWeights;
use crate::secondary::PolygonGeometry;

pub fn rng_for(seed: u64, stream: &str) -> ChaCha8Rng {
    // FNV-1a keeps streams independent of each other and of std's hasher
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in stream.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

/// Points near the parabola: `x_k = k + u_k`, `y_k = x_k^2 + v_k`, with
/// `u_k` in `[0, 1/2]` and `v_k` in `[-1/4, 1/4]`. Redrawn until convex.
pub fn random_geometry(n: usize, rng: &mut impl Rng) -> Result<PolygonGeometry> {
    for _ in 0..256 {
        let coords: Vec<(Rational, Rational)> = (1..=n as i64 + 3)
            .map(|k| {
                let x = int(k) + rat(rng.gen_range(0..=500), 1000);
                let y = &x * &x + rat(rng.gen_range(-250..=250), 1000);
                (x, y)
            })
            .collect();
        let g = PolygonGeometry::new(coords);
        if g.is_valid() {
            return Ok(g);
        }
    }
    Err(Error::InvalidGeometry("no convex draw in 256 attempts".into()))
}

/// Weights `p/q` with `1 <= p <= 2000`, `1 <= q <= 1000`.
pub fn random_weights(n: usize, rng: &mut impl Rng) -> Result<SimplexWeights> {
    let mut a = BTreeMap::new();
    for i in 1..=n + 1 {
        for j in i..=n + 1 {
            a.insert((i, j), rat(rng.gen_range(1..=2000), rng.gen_range(1..=1000)));
        }
    }
    SimplexWeights::new(n, a)
}

/// A polytopal perturbation of the default support values.
pub fn random_support_values(n: usize, rng: &mut impl Rng) -> Result<SupportValues> {
    perturbed_support_values(&default_support_values(n)?, rng)
}
