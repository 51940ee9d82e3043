//! Permutations under the Chebyshev metric and small code searches.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `n` for which balls are listed explicitly.
pub const BALL_MAX_N: usize = 9;
/// Largest `n` for the greedy scan over all of `S_n`.
pub const GREEDY_MAX_N: usize = 8;
/// Largest `n` for the exact maximum-code search (`n!` vertices must fit a
/// 128-bit set).
pub const EXACT_MAX_N: usize = 5;

/// A permutation of `1..=n` stored as its image array `(p_1, ..., p_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn new(image: Vec<u32>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &v in &image {
            let ok = v >= 1 && (v as usize) <= n && !seen[v as usize - 1];
            if !ok {
                return Err(Error::domain(format!(
                    "{image:?} is not a permutation of 1..={n}"
                )));
            }
            seen[v as usize - 1] = true;
        }
        Ok(Permutation(image))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u32).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn image(&self) -> &[u32] {
        &self.0
    }
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;

    fn try_from(image: Vec<u32>) -> Result<Self> {
        Permutation::new(image)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let image = s
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::domain(format!("bad permutation `{s}`: {e}")))?;
        Permutation::new(image)
    }
}

/// `max_j |p_j - q_j|`.
pub fn chebyshev_distance(p: &Permutation, q: &Permutation) -> Result<u32> {
    if p.len() != q.len() {
        return Err(Error::domain(format!(
            "permutations of different lengths ({} vs {})",
            p.len(),
            q.len()
        )));
    }
    Ok(distance(p.image(), q.image()))
}

fn distance(p: &[u32], q: &[u32]) -> u32 {
    p.iter()
        .zip(q)
        .map(|(a, b)| a.abs_diff(*b))
        .max()
        .unwrap_or(0)
}

/// Every `q` in `S_n` with `d(center, q) <= d`, in lexicographic order.
pub fn ball_members(d: u32, center: &Permutation) -> Result<Vec<Permutation>> {
    let n = center.len();
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    if n > BALL_MAX_N {
        return Err(Error::budget(
            format!("ball listing for n = {n}"),
            BALL_MAX_N as u64,
        ));
    }
    fn walk(d: u32, center: &[u32], used: u32, prefix: &mut Vec<u32>, out: &mut Vec<Permutation>) {
        let j = prefix.len();
        if j == center.len() {
            out.push(Permutation(prefix.clone()));
            return;
        }
        let lo = center[j].saturating_sub(d).max(1);
        let hi = (center[j] + d).min(center.len() as u32);
        for v in lo..=hi {
            if used & (1 << v) == 0 {
                prefix.push(v);
                walk(d, center, used | 1 << v, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(d, center.image(), 0, &mut Vec::with_capacity(n), &mut out);
    Ok(out)
}

/// All of `S_n` in lexicographic order.
pub fn all_permutations(n: usize) -> Result<Vec<Permutation>> {
    ball_members(n.saturating_sub(1) as u32, &Permutation::identity(n))
}

/// A set of permutations with a guaranteed minimum pairwise distance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Code {
    pub n: usize,
    pub min_distance: u32,
    pub words: Vec<Permutation>,
}

impl Code {
    pub fn size(&self) -> usize {
        self.words.len()
    }

    /// Checks lengths, distinctness and the pairwise-distance guarantee.
    pub fn is_valid(&self) -> bool {
        self.words.iter().all(|w| w.len() == self.n)
            && self.words.iter().enumerate().all(|(i, a)| {
                self.words[i + 1..]
                    .iter()
                    .all(|b| a != b && distance(a.image(), b.image()) >= self.min_distance)
            })
    }
}

/// Scan order for the greedy construction.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanOrder {
    #[default]
    Lex,
    Revlex,
}

impl FromStr for ScanOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lex" => Ok(ScanOrder::Lex),
            "revlex" => Ok(ScanOrder::Revlex),
            other => Err(Error::domain(format!("unknown order `{other}`"))),
        }
    }
}

fn check_code_args(n: usize, dist: u32, max_n: usize) -> Result<()> {
    if n == 0 || dist == 0 {
        return Err(Error::domain("code search needs n >= 1 and D >= 1"));
    }
    if n > max_n {
        return Err(Error::budget(
            format!("code search over S_{n}"),
            max_n as u64,
        ));
    }
    Ok(())
}

/// Greedy (GV) code: admit each permutation, in scan order, that is at
/// distance at least `dist` from everything admitted so far. The result is
/// maximal, so its size is at least the GV floor.
pub fn greedy_code(n: usize, dist: u32, order: ScanOrder) -> Result<Code> {
    check_code_args(n, dist, GREEDY_MAX_N)?;
    let mut all = all_permutations(n)?;
    if order == ScanOrder::Revlex {
        all.reverse();
    }
    let mut words: Vec<Permutation> = Vec::new();
    for p in all {
        if words.iter().all(|w| distance(w.image(), p.image()) >= dist) {
            words.push(p);
        }
    }
    Ok(Code {
        n,
        min_distance: dist,
        words,
    })
}

/// Maximum clique in a graph of at most 128 vertices given as bit rows.
///
/// Branch and bound with a greedy colouring bound; vertices are relabelled
/// into degeneracy order first so colour classes are built from the
/// sparsest end.
pub fn max_clique(adjacency: &[u128]) -> Vec<usize> {
    let v = adjacency.len();
    assert!(v <= 128, "bitset graph limited to 128 vertices");
    let order = degeneracy_order(adjacency);
    // position in `order` becomes the new label
    let mut relabel = vec![0usize; v];
    for (pos, &old) in order.iter().enumerate() {
        relabel[old] = pos;
    }
    let adj: Vec<u128> = order
        .iter()
        .map(|&old| {
            let mut row = 0u128;
            for (u, &r) in relabel.iter().enumerate() {
                if adjacency[old] >> u & 1 == 1 {
                    row |= 1 << r;
                }
            }
            row
        })
        .collect();

    let all = if v == 128 {
        u128::MAX
    } else {
        (1u128 << v) - 1
    };
    let mut best = Vec::new();
    let mut current = Vec::new();
    expand(&adj, all, &mut current, &mut best);
    let mut found: Vec<usize> = best.into_iter().map(|pos| order[pos]).collect();
    found.sort_unstable();
    found
}

/// Smallest-last ordering: repeatedly remove a minimum-degree vertex, then
/// reverse, so the most constrained vertices come first.
fn degeneracy_order(adjacency: &[u128]) -> Vec<usize> {
    let v = adjacency.len();
    let mut alive: u128 = if v == 128 {
        u128::MAX
    } else {
        (1u128 << v) - 1
    };
    let mut removed = Vec::with_capacity(v);
    while alive != 0 {
        let pick = (0..v)
            .filter(|&u| alive >> u & 1 == 1)
            .min_by_key(|&u| ((adjacency[u] & alive).count_ones(), u))
            .expect("alive vertex");
        alive &= !(1 << pick);
        removed.push(pick);
    }
    removed.reverse();
    removed
}

fn expand(adj: &[u128], candidates: u128, current: &mut Vec<usize>, best: &mut Vec<usize>) {
    let (verts, colors) = color_sort(adj, candidates);
    let mut remaining = candidates;
    for idx in (0..verts.len()).rev() {
        if current.len() + colors[idx] <= best.len() {
            return;
        }
        let u = verts[idx];
        current.push(u);
        let next = remaining & adj[u];
        if next == 0 {
            if current.len() > best.len() {
                best.clone_from(current);
            }
        } else {
            expand(adj, next, current, best);
        }
        current.pop();
        remaining &= !(1 << u);
    }
}

/// Greedy sequential colouring of `candidates`; returns vertices in
/// non-decreasing colour order with their colour numbers (1-based).
fn color_sort(adj: &[u128], candidates: u128) -> (Vec<usize>, Vec<usize>) {
    let mut verts = Vec::with_capacity(candidates.count_ones() as usize);
    let mut colors = Vec::with_capacity(verts.capacity());
    let mut uncolored = candidates;
    let mut color = 0;
    while uncolored != 0 {
        color += 1;
        let mut q = uncolored;
        while q != 0 {
            let u = q.trailing_zeros() as usize;
            q &= !(1 << u);
            q &= !adj[u];
            uncolored &= !(1 << u);
            verts.push(u);
            colors.push(color);
        }
    }
    (verts, colors)
}

/// A maximum code of minimum distance `dist` in `S_n`, by exhaustive
/// clique search on the graph joining permutations at distance `>= dist`.
pub fn exact_max_code(n: usize, dist: u32) -> Result<Code> {
    check_code_args(n, dist, EXACT_MAX_N)?;
    let all = all_permutations(n)?;
    let adjacency: Vec<u128> = all
        .iter()
        .enumerate()
        .map(|(i, p)| {
            all.iter().enumerate().fold(0u128, |row, (j, q)| {
                if i != j && distance(p.image(), q.image()) >= dist {
                    row | 1 << j
                } else {
                    row
                }
            })
        })
        .collect();
    let clique = max_clique(&adjacency);
    Ok(Code {
        n,
        min_distance: dist,
        words: clique.into_iter().map(|i| all[i].clone()).collect(),
    })
}
