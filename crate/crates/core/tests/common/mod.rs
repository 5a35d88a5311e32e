#![allow(dead_code)]

use ibalg::gen::{gen_homogeneous_family, gen_scattered_family};
use ibalg::search::{ell_matrix, Mode};
use ibalg::{Element, Family};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Largest generated family before prefix truncation.
const MAX_MEMBERS: usize = 24;

/// Per-coordinate homogeneous family with κ ≤ 3, every p ≤ 32 and
/// `N ≥ mode.required_members(V)` for the measured V. Even indices use
/// nested chains, odd ones scattered families. Deterministic in
/// `(mode, index, base)`; resamples until the bound holds.
pub fn campaign_family(mode: Mode, index: usize, base: u64) -> Family {
    let kappa = 1 + index % 3;
    for attempt in 0..10_000u64 {
        let seed = base.wrapping_mul(1_000_003) ^ ((index as u64) << 20) ^ attempt;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ps: Vec<usize> = (0..kappa).map(|_| rng.gen_range(16..=32)).collect();
        let ks: Vec<usize> = (0..kappa).map(|_| rng.gen_range(2..=4)).collect();
        let cap = ps
            .iter()
            .zip(&ks)
            .map(|(&p, &k)| if k == 2 { MAX_MEMBERS } else { (p - 1) / (k - 2) })
            .min()
            .unwrap()
            .min(MAX_MEMBERS);
        let full = if index.is_multiple_of(2) {
            gen_homogeneous_family(rng.gen(), &ps, &ks, cap).unwrap()
        } else {
            let n = rng.gen_range(cap.min(6)..=cap);
            match gen_scattered_family(rng.gen(), &ps, &ks, n) {
                Ok(fam) => fam,
                Err(_) => continue,
            }
        };
        let cap = full.len();
        let v = ell_matrix(&full).unwrap().distinct();
        let need = mode.required_members(v);
        if need > cap {
            continue;
        }
        let n = rng.gen_range(need..=cap);
        let prefix: Vec<usize> = (0..n).collect();
        return full.select(&prefix).unwrap().with_seed(Some(seed));
    }
    panic!("no campaign family for index {index}");
}

pub fn campaign(mode: Mode, count: usize, base: u64) -> Vec<Family> {
    (0..count).map(|i| campaign_family(mode, i, base)).collect()
}

/// Point-set model of an element.
pub fn bits(a: &Element) -> u64 {
    a.to_point_set().into_iter().fold(0, |acc, i| acc | 1 << i)
}

pub fn from_bits(p: usize, mask: u64) -> Element {
    Element::from_point_set(p, (0..p).filter(|i| mask >> i & 1 == 1)).unwrap()
}

pub fn full_mask(p: usize) -> u64 {
    if p == 64 {
        u64::MAX
    } else {
        (1u64 << p) - 1
    }
}
