use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{Cut, LatticeError, LatticeGraph};

/// Largest vertex count accepted by exact enumeration.
pub const EXACT_CUT_LIMIT: usize = 24;

pub const DEFAULT_RESTARTS: usize = 32;
pub const DEFAULT_HEURISTIC_SEED: u64 = 0x5eed_c0de;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutMode {
    /// Enumerate every balanced bipartition (n <= 24).
    Exact,
    /// Kernighan-Lin pair-swap descent from seeded random starts.
    Heuristic { restarts: usize, seed: u64 },
}

impl CutMode {
    pub fn heuristic() -> Self {
        CutMode::Heuristic { restarts: DEFAULT_RESTARTS, seed: DEFAULT_HEURISTIC_SEED }
    }
}

/// A balanced cut minimising the crossing-edge count.
///
/// Ties are broken towards the lexicographically smallest `side_a`. For even
/// `n` the side holding vertex 0 is always `side_a`.
pub fn min_balanced_cut(graph: &LatticeGraph, mode: CutMode) -> Result<Cut, LatticeError> {
    if graph.n() == 0 {
        return Err(LatticeError::Empty);
    }
    match mode {
        CutMode::Exact => {
            let (_, masks) = exact_minimisers(graph)?;
            Ok(mask_to_cut(graph, masks[0]))
        }
        CutMode::Heuristic { restarts, seed } => Ok(kernighan_lin(graph, restarts.max(1), seed)),
    }
}

/// Every balanced cut attaining the minimum, in lexicographic order of `side_a`.
pub fn all_min_balanced_cuts(graph: &LatticeGraph) -> Result<Vec<Cut>, LatticeError> {
    let (_, masks) = exact_minimisers(graph)?;
    Ok(masks.into_iter().map(|m| mask_to_cut(graph, m)).collect())
}

/// Uniformly random balanced cut.
pub fn random_balanced_cut<R: Rng + ?Sized>(graph: &LatticeGraph, rng: &mut R) -> Cut {
    let n = graph.n();
    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(rng);
    let mut side = vec![false; n];
    for &v in &ids[..n.div_ceil(2)] {
        side[v] = true;
    }
    side_to_cut(graph, canonical(side))
}

fn neighbour_masks(graph: &LatticeGraph) -> Vec<u32> {
    let mut nbr = vec![0u32; graph.n()];
    for &(a, b) in graph.edges() {
        nbr[a] |= 1 << b;
        nbr[b] |= 1 << a;
    }
    nbr
}

/// `x` precedes `y` as sorted id lists (both sets have equal size).
fn lex_less(x: u32, y: u32) -> bool {
    let d = x ^ y;
    d != 0 && x & (d & d.wrapping_neg()) != 0
}

fn exact_minimisers(graph: &LatticeGraph) -> Result<(usize, Vec<u32>), LatticeError> {
    let n = graph.n();
    if n == 0 {
        return Err(LatticeError::Empty);
    }
    if n > EXACT_CUT_LIMIT {
        return Err(LatticeError::ExactBudgetExceeded { n, limit: EXACT_CUT_LIMIT });
    }
    let nbr = neighbour_masks(graph);
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let h = n.div_ceil(2) as u32;
    let need_zero = n % 2 == 0;

    let mut best = usize::MAX;
    let mut found: Vec<u32> = Vec::new();
    let mut mask: u32 = (1u32 << h) - 1;
    loop {
        if !need_zero || mask & 1 == 1 {
            let outside = !mask & full;
            let mut f = 0usize;
            let mut bits = mask;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                f += (nbr[v] & outside).count_ones() as usize;
                bits &= bits - 1;
            }
            if f < best {
                best = f;
                found.clear();
                found.push(mask);
            } else if f == best {
                found.push(mask);
            }
        }
        // Gosper's hack: next mask with the same popcount.
        let c = mask & mask.wrapping_neg();
        let r = mask.wrapping_add(c);
        if r == 0 || r > full {
            break;
        }
        mask = (((r ^ mask) >> 2) / c) | r;
        if mask > full {
            break;
        }
    }
    found.sort_by(|&x, &y| {
        if x == y {
            std::cmp::Ordering::Equal
        } else if lex_less(x, y) {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    Ok((best, found))
}

fn mask_to_cut(graph: &LatticeGraph, mask: u32) -> Cut {
    let side: Vec<bool> = (0..graph.n()).map(|v| mask >> v & 1 == 1).collect();
    side_to_cut(graph, side)
}

/// For even `n`, flips the assignment so vertex 0 is in side A.
fn canonical(mut side: Vec<bool>) -> Vec<bool> {
    if side.len() % 2 == 0 && !side.is_empty() && !side[0] {
        side.iter_mut().for_each(|s| *s = !*s);
    }
    side
}

fn side_to_cut(graph: &LatticeGraph, side: Vec<bool>) -> Cut {
    let f = graph.edges().iter().filter(|&&(a, b)| side[a] != side[b]).count();
    let a = (0..graph.n()).filter(|&v| side[v]).collect();
    let b = (0..graph.n()).filter(|&v| !side[v]).collect();
    Cut::from_parts(a, b, f)
}

fn kernighan_lin(graph: &LatticeGraph, restarts: usize, seed: u64) -> Cut {
    let adj = graph.neighbours();
    let n = graph.n();
    let candidates: Vec<(usize, Vec<bool>)> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(r as u64);
            let mut ids: Vec<usize> = (0..n).collect();
            ids.shuffle(&mut rng);
            let mut side = vec![false; n];
            for &v in &ids[..n.div_ceil(2)] {
                side[v] = true;
            }
            refine(&adj, &mut side);
            let side = canonical(side);
            let f = crossing(&adj, &side);
            (f, side)
        })
        .collect();

    let (_, best) = candidates
        .into_iter()
        .min_by(|(fa, sa), (fb, sb)| fa.cmp(fb).then_with(|| lex_cmp(sa, sb)))
        .expect("at least one restart");
    side_to_cut(graph, best)
}

fn lex_cmp(x: &[bool], y: &[bool]) -> std::cmp::Ordering {
    // Sorted id lists of equal length: the first differing vertex decides.
    match x.iter().zip(y).position(|(a, b)| a != b) {
        None => std::cmp::Ordering::Equal,
        Some(v) if x[v] => std::cmp::Ordering::Less,
        Some(_) => std::cmp::Ordering::Greater,
    }
}

fn crossing(adj: &[Vec<usize>], side: &[bool]) -> usize {
    adj.iter()
        .enumerate()
        .map(|(v, nb)| nb.iter().filter(|&&u| u > v && side[u] != side[v]).count())
        .sum()
}

fn external_minus_internal(adj: &[Vec<usize>], side: &[bool], v: usize) -> i64 {
    adj[v].iter().map(|&u| if side[u] != side[v] { 1 } else { -1 }).sum()
}

/// Kernighan-Lin passes until a pass yields no positive cumulative gain.
fn refine(adj: &[Vec<usize>], side: &mut [bool]) {
    let n = side.len();
    loop {
        let mut d: Vec<i64> = (0..n).map(|v| external_minus_internal(adj, side, v)).collect();
        let mut locked = vec![false; n];
        let mut swaps: Vec<(usize, usize)> = Vec::new();
        let mut gains: Vec<i64> = Vec::new();
        let steps = side.iter().filter(|&&s| s).count().min(n - side.iter().filter(|&&s| s).count());

        for _ in 0..steps {
            let mut a_list: Vec<usize> = (0..n).filter(|&v| !locked[v] && side[v]).collect();
            let mut b_list: Vec<usize> = (0..n).filter(|&v| !locked[v] && !side[v]).collect();
            a_list.sort_by_key(|&v| (-d[v], v));
            b_list.sort_by_key(|&v| (-d[v], v));

            let mut best: Option<(i64, usize, usize)> = None;
            for &a in &a_list {
                if let Some((g, _, _)) = best {
                    if d[a] + d[b_list[0]] <= g {
                        break;
                    }
                }
                for &b in &b_list {
                    let bound = d[a] + d[b];
                    if let Some((g, _, _)) = best {
                        if bound <= g {
                            break;
                        }
                    }
                    let w = adj[a].iter().filter(|&&u| u == b).count() as i64;
                    let gain = bound - 2 * w;
                    if best.map_or(true, |(g, _, _)| gain > g) {
                        best = Some((gain, a, b));
                    }
                }
            }
            let Some((gain, a, b)) = best else { break };
            side[a] = false;
            side[b] = true;
            locked[a] = true;
            locked[b] = true;
            for &v in adj[a].iter().chain(&adj[b]).chain([a, b].iter()) {
                d[v] = external_minus_internal(adj, side, v);
            }
            swaps.push((a, b));
            gains.push(gain);
        }

        // Keep the best prefix of tentative swaps, undo the rest.
        let mut acc = 0i64;
        let mut best_total = 0i64;
        let mut keep = 0usize;
        for (i, g) in gains.iter().enumerate() {
            acc += g;
            if acc > best_total {
                best_total = acc;
                keep = i + 1;
            }
        }
        for &(a, b) in swaps[keep..].iter().rev() {
            side[a] = true;
            side[b] = false;
        }
        if best_total <= 0 {
            break;
        }
    }
}
