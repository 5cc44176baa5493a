//! Seeded random generators for tame reduction data.

use std::collections::BTreeMap;

use motzeta::gring::AbelianClassSymbol;
use motzeta::jumps::{DivisorData, JumpSpectrum, ReductionProfile};
use motzeta::monodromy;
use motzeta::{frac, Frac};
use num_integer::Integer;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Jumps whose eigen-exponent pair `{j, 1 − j}` already forms a full
/// Galois orbit (orders with `φ ≤ 2`).
const SINGLE_PACKS: [(i64, i64); 8] = [
    (0, 1),
    (1, 2),
    (1, 3),
    (2, 3),
    (1, 4),
    (3, 4),
    (1, 6),
    (5, 6),
];

/// Jump pairs whose four eigen-exponents together form one full orbit
/// of an order with `φ = 4`.
const PAIR_PACKS: [[(i64, i64); 2]; 3] = [
    [(1, 8), (3, 8)],
    [(1, 5), (2, 5)],
    [(1, 12), (5, 12)],
];

/// A random tame spectrum with Galois-consistent eigen-exponents and
/// `1 ≤ g ≤ max_g`.
pub fn random_stable_spectrum(rng: &mut ChaCha8Rng, max_g: u32) -> JumpSpectrum {
    loop {
        let g = rng.random_range(1..=max_g);
        let mut jumps: Vec<Frac> = Vec::new();
        let mut budget = g;
        while budget > 0 {
            if budget >= 2 && rng.random_ratio(1, 4) {
                let pack = PAIR_PACKS[rng.random_range(0..PAIR_PACKS.len())];
                jumps.extend(pack.iter().map(|(n, d)| frac(*n, *d)));
                budget -= 2;
            } else {
                let (n, d) = SINGLE_PACKS[rng.random_range(0..SINGLE_PACKS.len())];
                jumps.push(frac(n, d));
                budget -= 1;
            }
        }
        let e = jumps.iter().fold(1u64, |acc, j| acc.lcm(&(*j.denom() as u64)));
        let p = *[1u64, 2, 3, 5, 7].choose(rng).unwrap();
        if e.gcd(&p) != 1 {
            continue;
        }
        return JumpSpectrum::new(g, p, jumps.into_iter().map(|j| (j, 1))).unwrap();
    }
}

/// A random tame spectrum without the Galois-stability constraint, for
/// exercising the staircase functions alone.
pub fn random_raw_spectrum(rng: &mut ChaCha8Rng, max_g: u32) -> JumpSpectrum {
    loop {
        let g = rng.random_range(1..=max_g);
        let jumps: Vec<Frac> = (0..g)
            .map(|_| {
                let den = rng.random_range(1..=12i64);
                let num = rng.random_range(0..den);
                frac(num, den)
            })
            .collect();
        let e = jumps.iter().fold(1u64, |acc, j| acc.lcm(&(*j.denom() as u64)));
        let p = *[1u64, 2, 3, 5, 7].choose(rng).unwrap();
        if e.gcd(&p) != 1 {
            continue;
        }
        return JumpSpectrum::new(g, p, jumps.into_iter().map(|j| (j, 1))).unwrap();
    }
}

/// A random validated reduction profile over a stable spectrum.
pub fn random_profile(rng: &mut ChaCha8Rng, max_g: u32) -> ReductionProfile {
    let s = random_stable_spectrum(rng, max_g);
    let g = s.g();
    let e = s.semiabelian_degree();
    let t_pot = rng.random_range(0..=g);
    let mut supplied = BTreeMap::new();
    for alpha in monodromy::divisors(e) {
        let u = s.unipotent_rank(alpha);
        if u >= g {
            continue; // purely additive: derived from the trace formula
        }
        let avail = g - u;
        let t = if alpha == e {
            t_pot
        } else {
            rng.random_range(0..=t_pot.min(avail))
        };
        let a = avail - t;
        let class = if a == 0 {
            AbelianClassSymbol::point()
        } else {
            AbelianClassSymbol::new(format!("B{alpha}"), a)
        };
        supplied.insert(
            alpha,
            DivisorData {
                toric_rank: t,
                abelian_rank: a,
                components: rng.random_range(1..=6),
                abelian_class: class,
            },
        );
    }
    ReductionProfile::new(s, supplied).unwrap()
}
