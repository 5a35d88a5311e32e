//! Seeded random families for experiments and tests.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Element, ExtPoint};
use crate::error::{Error, Result};
use crate::homogeneity::gen_homogeneous_with;
use crate::product::Family;

/// Random element with at most `max_intervals` runs: `2r` distinct toggle
/// positions drawn from `0..=p` for `r` uniform in `0..=max_intervals`.
pub fn random_element<R: Rng>(rng: &mut R, p: usize, max_intervals: usize) -> Element {
    let runs = rng.gen_range(0..=max_intervals);
    let mut toggles = sample(rng, p + 1, 2 * runs).into_vec();
    toggles.sort_unstable();
    let endpoints = toggles.into_iter().map(|t| ExtPoint::from_position(t, p)).collect();
    Element::new(p, endpoints).expect("distinct sorted positions are canonical")
}

/// `n` random members of `Π B(order_sizes[ζ])`, seeded and tagged with `seed`.
pub fn gen_random_family(
    seed: u64,
    kappa: usize,
    order_sizes: &[usize],
    n: usize,
    max_intervals: usize,
) -> Result<Family> {
    if order_sizes.len() != kappa {
        return Err(Error::input(format!("{} order sizes given for κ = {kappa}", order_sizes.len())));
    }
    let need = max_intervals * 2 + 2;
    if let Some(&p) = order_sizes.iter().min() {
        if need > p {
            return Err(Error::Capacity { what: "2·max_intervals + 2", got: need, limit: p });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let members = (0..n)
        .map(|_| order_sizes.iter().map(|&p| random_element(&mut rng, p, max_intervals)).collect())
        .collect();
    Ok(Family::new(order_sizes.to_vec(), members)?.with_seed(Some(seed)))
}

/// Per-coordinate homogeneous family: coordinate `ζ` is an independent
/// nested chain with `|σ| = ks[ζ]`, all drawn from one seeded stream.
pub fn gen_homogeneous_family(seed: u64, order_sizes: &[usize], ks: &[usize], n: usize) -> Result<Family> {
    if order_sizes.len() != ks.len() {
        return Err(Error::input("one |σ| per coordinate is required"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let columns = order_sizes
        .iter()
        .zip(ks)
        .map(|(&p, &k)| gen_homogeneous_with(&mut rng, p, n, k))
        .collect::<Result<Vec<_>>>()?;
    let members = (0..n).map(|alpha| columns.iter().map(|c| c[alpha].clone()).collect()).collect();
    Ok(Family::new(order_sizes.to_vec(), members)?.with_seed(Some(seed)))
}

/// Random homogeneous sequence of `n` elements with `|σ| = k` in which each
/// member's finite endpoints fill one run of unused positions between
/// earlier members' endpoints. That run lies inside a single gap of every
/// earlier member, so the result is homogeneous, but unlike
/// [`gen_homogeneous`](crate::homogeneity::gen_homogeneous) the gap of `α`
/// holding `β` can vary with `β`.
pub fn gen_scattered_homogeneous<R: Rng>(rng: &mut R, p: usize, n: usize, k: usize) -> Result<Vec<Element>> {
    if k < 2 {
        return Err(Error::input("|σ| is at least 2"));
    }
    let f = k - 2;
    let (minus, plus) = if f % 2 == 1 {
        if rng.gen_bool(0.5) {
            (true, false)
        } else {
            (false, true)
        }
    } else if p > 0 && rng.gen_bool(0.5) {
        (true, true)
    } else {
        (false, false)
    };
    let mut used = vec![false; p + 1];
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let mut finite = Vec::with_capacity(f);
        if f > 0 {
            // maximal runs of unused legal positions 1..p-1 with room for f endpoints
            let mut runs = Vec::new();
            let mut start = None;
            for (i, &taken) in used.iter().enumerate().skip(1) {
                let free = i < p && !taken;
                match (free, start) {
                    (true, None) => start = Some(i),
                    (false, Some(s)) => {
                        if i - s >= f {
                            runs.push((s, i));
                        }
                        start = None;
                    }
                    _ => {}
                }
            }
            let Some(&(lo, hi)) = runs.get(rng.gen_range(0..runs.len().max(1))) else {
                return Err(Error::Capacity { what: "free run for a scattered member", got: f, limit: 0 });
            };
            finite = sample(rng, hi - lo, f).into_iter().map(|d| lo + d).collect();
            finite.sort_unstable();
            for &i in &finite {
                used[i] = true;
            }
        }
        let mut endpoints = Vec::with_capacity(k);
        if minus {
            endpoints.push(ExtPoint::MinusInf);
        }
        endpoints.extend(finite.into_iter().map(ExtPoint::Pt));
        if plus {
            endpoints.push(ExtPoint::PlusInf);
        }
        out.push(Element::new(p, endpoints)?);
    }
    Ok(out)
}

/// Per-coordinate scattered homogeneous family; see [`gen_scattered_homogeneous`].
pub fn gen_scattered_family(seed: u64, order_sizes: &[usize], ks: &[usize], n: usize) -> Result<Family> {
    if order_sizes.len() != ks.len() {
        return Err(Error::input("one |σ| per coordinate is required"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let columns = order_sizes
        .iter()
        .zip(ks)
        .map(|(&p, &k)| gen_scattered_homogeneous(&mut rng, p, n, k))
        .collect::<Result<Vec<_>>>()?;
    let members = (0..n).map(|alpha| columns.iter().map(|c| c[alpha].clone()).collect()).collect();
    Ok(Family::new(order_sizes.to_vec(), members)?.with_seed(Some(seed)))
}
