//! The cross-equal quadruple pattern: `α0 < α1 < α2 < α3` with
//! `c(α0,α2) = c(α0,α3) = c(α1,α2) = c(α1,α3)`.

use std::collections::HashMap;
use std::hash::Hash;

use rand::Rng;

/// Largest `N` accepted where a caller-facing cap is needed; the colour
/// matrix has `N(N−1)/2` entries.
pub const MAX_RAMSEY_N: usize = 4096;

/// Pair colouring on `0..n` with colours interned as `0..colors`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    n: usize,
    colors: usize,
    ids: Vec<u32>,
}

impl Coloring {
    fn slot(&self, alpha: usize, beta: usize) -> usize {
        debug_assert!(alpha < beta && beta < self.n);
        alpha * (2 * self.n - alpha - 1) / 2 + (beta - alpha - 1)
    }

    /// Interns `f(α, β)` for all `α < β`, numbering colours by first
    /// appearance in lexicographic pair order.
    pub fn from_fn<C, F>(n: usize, f: F) -> Self
    where
        C: Eq + Hash,
        F: Fn(usize, usize) -> C,
    {
        let mut seen: HashMap<C, u32> = HashMap::new();
        let mut ids = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for alpha in 0..n {
            for beta in alpha + 1..n {
                let next = seen.len() as u32;
                ids.push(*seen.entry(f(alpha, beta)).or_insert(next));
            }
        }
        Coloring { n, colors: seen.len(), ids }
    }

    /// Uniform colouring with `k` colours; colour ids are the raw draws.
    pub fn random<R: Rng>(rng: &mut R, n: usize, k: usize) -> Self {
        assert!(k > 0, "at least one colour");
        let ids = (0..n * n.saturating_sub(1) / 2).map(|_| rng.gen_range(0..k) as u32).collect();
        Coloring { n, colors: k, ids }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn colors(&self) -> usize {
        self.colors
    }

    pub fn get(&self, alpha: usize, beta: usize) -> u32 {
        self.ids[self.slot(alpha, beta)]
    }

    /// Least quadruple (lexicographically) with the cross-equal pattern.
    ///
    /// For fixed `(α0, α1)` the candidates are the `β > α1` with
    /// `c(α0,β) = c(α1,β)`; the least `α2` is the first such `β` whose colour
    /// recurs later, and `α3` is that recurrence.
    pub fn find_quad(&self) -> Option<[usize; 4]> {
        let mut first: Vec<Option<usize>> = vec![None; self.colors];
        let mut second: Vec<Option<usize>> = vec![None; self.colors];
        let mut touched: Vec<usize> = Vec::new();
        for a0 in 0..self.n {
            for a1 in a0 + 1..self.n {
                let mut best: Option<[usize; 4]> = None;
                for b in a1 + 1..self.n {
                    let c = self.get(a0, b);
                    if c != self.get(a1, b) {
                        continue;
                    }
                    let c = c as usize;
                    match (first[c], second[c]) {
                        (None, _) => {
                            first[c] = Some(b);
                            touched.push(c);
                        }
                        (Some(f), None) => {
                            second[c] = Some(b);
                            if best.is_none_or(|q| f < q[2]) {
                                best = Some([a0, a1, f, b]);
                            }
                        }
                        _ => {}
                    }
                }
                for c in touched.drain(..) {
                    first[c] = None;
                    second[c] = None;
                }
                if best.is_some() {
                    return best;
                }
            }
        }
        None
    }
}

/// Least cross-equal quadruple for the colouring `colors` on `0..n`.
pub fn ramsey_quad<C, F>(n: usize, colors: F) -> Option<[usize; 4]>
where
    C: Eq + Hash,
    F: Fn(usize, usize) -> C,
{
    Coloring::from_fn(n, colors).find_quad()
}

/// Brute-force reference over all quadruples in lexicographic order.
pub fn ramsey_quad_naive<C, F>(n: usize, colors: F) -> Option<[usize; 4]>
where
    C: Eq,
    F: Fn(usize, usize) -> C,
{
    for a0 in 0..n {
        for a1 in a0 + 1..n {
            for a2 in a1 + 1..n {
                for a3 in a2 + 1..n {
                    let c = colors(a0, a2);
                    if c == colors(a0, a3) && c == colors(a1, a2) && c == colors(a1, a3) {
                        return Some([a0, a1, a2, a3]);
                    }
                }
            }
        }
    }
    None
}
