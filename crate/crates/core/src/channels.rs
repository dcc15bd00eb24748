//! Memoryless channel models: the binary erasure channel and BPSK over AWGN.
//!
//! LLRs are `ln P(bit = 0 | y) - ln P(bit = 1 | y)`, so a positive value
//! favours bit 0. Every generator is a pure function of its seed; Gaussian
//! variates come from the Marsaglia polar method on a ChaCha8 stream, which
//! keeps outputs bit-identical across runs and platforms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BecSymbol {
    Zero,
    One,
    Erased,
}

impl BecSymbol {
    pub fn known(bit: u8) -> Self {
        if bit & 1 == 0 {
            BecSymbol::Zero
        } else {
            BecSymbol::One
        }
    }
}

/// Output of the binary erasure channel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BecOutput(pub Vec<BecSymbol>);

impl BecOutput {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[BecSymbol] {
        &self.0
    }

    pub fn erasures(&self) -> usize {
        self.0.iter().filter(|&&s| s == BecSymbol::Erased).count()
    }

    /// Known symbols map to `+clip` / `-clip`, erasures to zero.
    pub fn to_llrs(&self, clip: f64) -> LlrVector {
        LlrVector(
            self.0
                .iter()
                .map(|s| match s {
                    BecSymbol::Zero => clip,
                    BecSymbol::One => -clip,
                    BecSymbol::Erased => 0.0,
                })
                .collect(),
        )
    }
}

/// Per-symbol channel log-likelihood ratios.
#[derive(Clone, Debug, PartialEq)]
pub struct LlrVector(pub Vec<f64>);

impl LlrVector {
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Erases each symbol independently with probability `eps`.
pub fn bec_transmit(bits: &[u8], eps: f64, seed: u64) -> Result<BecOutput> {
    if !(0.0..=1.0).contains(&eps) {
        return Err(Error::InvalidProbability(eps));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(BecOutput(
        bits.iter()
            .map(|&b| {
                if rng.gen::<f64>() < eps {
                    BecSymbol::Erased
                } else {
                    BecSymbol::known(b)
                }
            })
            .collect(),
    ))
}

/// Noise variance per real dimension for BPSK at `ebn0_db` and code rate `rate`.
pub fn noise_variance(ebn0_db: f64, rate: f64) -> f64 {
    1.0 / (2.0 * rate * 10f64.powf(ebn0_db / 10.0))
}

/// Maps bit 0 to +1 and bit 1 to -1, adds Gaussian noise, and returns
/// `2 y / sigma^2`.
pub fn biawgn_transmit(bits: &[u8], ebn0_db: f64, rate: f64, seed: u64) -> Result<LlrVector> {
    if !(rate > 0.0 && rate <= 1.0) {
        return Err(Error::InvalidRate(rate));
    }
    if !ebn0_db.is_finite() {
        return Err(Error::InvalidConfig(format!(
            "Eb/N0 {ebn0_db} dB is not finite"
        )));
    }
    let var = noise_variance(ebn0_db, rate);
    Ok(awgn_llrs(bits, var, seed))
}

/// Channel LLRs for BPSK with a given noise variance.
pub fn awgn_llrs(bits: &[u8], variance: f64, seed: u64) -> LlrVector {
    let sigma = variance.sqrt();
    let mut normal = PolarNormal::new(seed);
    LlrVector(
        bits.iter()
            .map(|&b| {
                let x = if b & 1 == 0 { 1.0 } else { -1.0 };
                let y = x + sigma * normal.sample();
                2.0 * y / variance
            })
            .collect(),
    )
}

/// Standard normal variates by the Marsaglia polar method.
#[derive(Clone, Debug)]
pub struct PolarNormal {
    rng: ChaCha8Rng,
    spare: Option<f64>,
}

impl PolarNormal {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            spare: None,
        }
    }

    pub fn sample(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        loop {
            let u = 2.0 * self.rng.gen::<f64>() - 1.0;
            let v = 2.0 * self.rng.gen::<f64>() - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                let f = (-2.0 * s.ln() / s).sqrt();
                self.spare = Some(v * f);
                return u * f;
            }
        }
    }
}

/// SplitMix64 finaliser.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of an independent substream for `frame` at grid point `point`.
pub fn frame_seed(master: u64, point: u64, frame: u64) -> u64 {
    master ^ mix64(mix64(point) ^ frame.wrapping_mul(0xd6e8_feb8_6659_fd93))
}
