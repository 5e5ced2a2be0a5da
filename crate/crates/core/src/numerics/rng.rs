//! Splittable random streams.
//!
//! Every replication of a Monte Carlo cell owns one [`RngStream`], addressed
//! by `(base_seed, stream_id)`. The generator is ChaCha8 with the 64-bit
//! stream selector set to `stream_id`, so streams never overlap and a
//! replication's draws do not depend on which worker runs it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct RngStream {
    base_seed: u64,
    stream_id: u64,
    inner: ChaCha8Rng,
}

impl RngStream {
    pub fn new(base_seed: u64, stream_id: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(base_seed);
        inner.set_stream(stream_id);
        Self {
            base_seed,
            stream_id,
            inner,
        }
    }

    pub fn base_seed(&self) -> u64 {
        self.base_seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// One draw from N(0, 1).
    pub fn normal(&mut self) -> f64 {
        self.inner.sample(StandardNormal)
    }

    /// One draw from U[0, 1).
    pub fn uniform(&mut self) -> f64 {
        self.inner.random::<f64>()
    }
}

/// `n` i.i.d. standard normal draws from `rng`.
pub fn standard_normal_draws(rng: &mut RngStream, n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::InvalidInput("requested zero normal draws".into()));
    }
    Ok((0..n).map(|_| rng.normal()).collect())
}

/// Derives a stream id from a textual cell label, a sample size and a
/// replication index. FNV-1a over the label, then splitmix64 finalization.
pub fn stream_id_for(label: &str, sample_size: usize, replication: u64) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.as_bytes() {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h ^= splitmix64(sample_size as u64);
    splitmix64(h.wrapping_add(splitmix64(replication)))
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
