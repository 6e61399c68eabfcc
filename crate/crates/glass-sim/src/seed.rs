use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

fn fnv1a(hash: u64, bytes: &[u8]) -> u64 {
    bytes.iter().fold(hash, |acc, &b| {
        (acc ^ u64::from(b)).wrapping_mul(FNV_PRIME)
    })
}

/// Derives the deterministic generator for one sample stream.
///
/// Every randomized operation draws from its own stream, keyed by a component
/// name, the user-facing root seed, and a sample index. The key is hashed
/// with FNV-1a (fixed constants above, so the mapping never changes between
/// builds) and the digest seeds a ChaCha8 counter generator. Streams with
/// different keys are independent for Monte Carlo purposes, and a given key
/// always reproduces the same draws.
pub fn stream_rng(component: &str, root_seed: u64, index: u64) -> ChaCha8Rng {
    let mut hash = fnv1a(FNV_OFFSET, component.as_bytes());
    hash = fnv1a(hash, &root_seed.to_le_bytes());
    hash = fnv1a(hash, &index.to_le_bytes());
    ChaCha8Rng::seed_from_u64(hash)
}
