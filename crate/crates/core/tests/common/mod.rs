//! Test-side helpers: a seeded generator of braid-closure diagrams and a
//! brute-force homology oracle that shares no code with the library (its own
//! circle tracking, edge maps and dense elimination).

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A signed PD code as plain data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pd {
    pub crossings: Vec<([u32; 4], bool)>,
    pub loops: usize,
}

impl Pd {
    /// Explicitly signed PD text, e.g. `X+(1,2,3,4) X-(...) O`.
    pub fn to_text(&self) -> String {
        let mut parts: Vec<String> = self
            .crossings
            .iter()
            .map(|([a, b, c, d], pos)| {
                format!("X{}({a},{b},{c},{d})", if *pos { '+' } else { '-' })
            })
            .collect();
        parts.extend(std::iter::repeat_n("O".to_string(), self.loops));
        parts.join(" ")
    }

    pub fn n_plus(&self) -> usize {
        self.crossings.iter().filter(|c| c.1).count()
    }

    pub fn n_minus(&self) -> usize {
        self.crossings.len() - self.n_plus()
    }

    /// Parses explicitly signed text (`X+`/`X-` and `O` tokens only).
    pub fn parse_signed(text: &str) -> Pd {
        let mut pd = Pd {
            crossings: Vec::new(),
            loops: 0,
        };
        for tok in text.split_whitespace() {
            if tok == "O" {
                pd.loops += 1;
                continue;
            }
            let pos = match &tok[..2] {
                "X+" => true,
                "X-" => false,
                _ => panic!("oracle needs explicit signs: {tok}"),
            };
            let inner = tok[2..].trim_start_matches('(').trim_end_matches(')');
            let v: Vec<u32> = inner.split(',').map(|s| s.parse().unwrap()).collect();
            pd.crossings.push(([v[0], v[1], v[2], v[3]], pos));
        }
        pd
    }
}

/// Closure of a braid word on `strands` strands. Letters are `(i, positive)`
/// for `sigma_i^{+-1}` with `0 <= i < strands - 1`. Strands that no letter
/// touches become free loops.
pub fn braid_closure(strands: usize, word: &[(usize, bool)]) -> Pd {
    // Arc labels: 0..strands are the bottom arcs; each crossing creates two.
    let mut cur: Vec<u32> = (0..strands as u32).collect();
    let mut next = strands as u32;
    let mut raw = Vec::new();
    let mut succ: BTreeMap<u32, u32> = BTreeMap::new();
    for &(i, positive) in word {
        let (l, r) = (cur[i], cur[i + 1]);
        let (lo, ro) = (next, next + 1);
        next += 2;
        if positive {
            // Under R -> Lo, over L -> Ro.
            raw.push(([r, ro, lo, l], true));
            succ.insert(r, lo);
            succ.insert(l, ro);
        } else {
            // Under L -> Ro, over R -> Lo.
            raw.push(([l, r, ro, lo], false));
            succ.insert(l, ro);
            succ.insert(r, lo);
        }
        cur[i] = lo;
        cur[i + 1] = ro;
    }
    // Close up: the top arc at position p is the bottom arc at position p.
    let mut alias: BTreeMap<u32, u32> = BTreeMap::new();
    for (p, &top) in cur.iter().enumerate() {
        alias.insert(top, p as u32);
    }
    let canon = |a: u32| *alias.get(&a).unwrap_or(&a);
    let succ: BTreeMap<u32, u32> = succ
        .into_iter()
        .map(|(a, b)| (canon(a), canon(b)))
        .collect();
    let used: BTreeSet<u32> = raw
        .iter()
        .flat_map(|(q, _): &([u32; 4], bool)| q.iter().map(|&a| canon(a)))
        .collect();

    // Renumber along components so consecutive arcs get consecutive ids.
    let mut renum: BTreeMap<u32, u32> = BTreeMap::new();
    let mut id = 1;
    for &start in &used {
        if renum.contains_key(&start) {
            continue;
        }
        let mut a = start;
        loop {
            renum.insert(a, id);
            id += 1;
            a = succ[&a];
            if a == start {
                break;
            }
        }
    }
    let crossings = raw
        .into_iter()
        .map(|(q, s)| (q.map(|a| renum[&canon(a)]), s))
        .collect();
    let touched: BTreeSet<usize> = word.iter().flat_map(|&(i, _)| [i, i + 1]).collect();
    Pd {
        crossings,
        loops: strands - touched.len(),
    }
}

/// A random braid closure with at most `max_crossings` crossings.
pub fn random_braid_pd(seed: u64, max_crossings: usize) -> Pd {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let strands = rng.gen_range(2..=4);
    let len = rng.gen_range(1..=max_crossings);
    let word: Vec<(usize, bool)> = (0..len)
        .map(|_| (rng.gen_range(0..strands - 1), rng.gen_bool(0.5)))
        .collect();
    braid_closure(strands, &word)
}

/// Circles of the resolution `alpha` as sets of arcs; free loop `k` is the
/// pseudo-arc `u32::MAX - k`.
fn circles(pd: &Pd, alpha: u32) -> Vec<BTreeSet<u32>> {
    let mut adj: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for (j, ([a, b, c, d], _)) in pd.crossings.iter().enumerate() {
        let pairs = if alpha >> j & 1 == 0 {
            [(a, b), (c, d)]
        } else {
            [(a, d), (b, c)]
        };
        for (x, y) in pairs {
            adj.entry(*x).or_default().push(*y);
            adj.entry(*y).or_default().push(*x);
        }
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &start in adj.keys() {
        if seen.contains(&start) {
            continue;
        }
        let mut comp = BTreeSet::new();
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            if comp.insert(x) {
                seen.insert(x);
                stack.extend(adj[&x].iter().copied());
            }
        }
        out.push(comp);
    }
    for k in 0..pd.loops {
        out.push(BTreeSet::from([u32::MAX - k as u32]));
    }
    out.sort();
    out
}

/// Basis element: vertex and set of circles (by arc set) labelled `x`,
/// stored as the labelling of each circle.
type State = (u32, Vec<(BTreeSet<u32>, bool)>);

fn gradings(pd: &Pd, s: &State) -> (i32, i32) {
    let (np, nm) = (pd.n_plus() as i32, pd.n_minus() as i32);
    let i = s.0.count_ones() as i32 - nm;
    let ones = s.1.iter().filter(|c| !c.1).count() as i32;
    let xs = s.1.len() as i32 - ones;
    (i, ones - xs + i + np - nm)
}

/// Images of a state along every outgoing edge; `h` selects the Bar-Natan
/// perturbation instead of the Khovanov maps.
fn edge_images(pd: &Pd, s: &State, h: bool) -> Vec<State> {
    let n = pd.crossings.len();
    let mut out = Vec::new();
    for j in 0..n {
        if s.0 >> j & 1 == 1 {
            continue;
        }
        let beta = s.0 | 1 << j;
        let target = circles(pd, beta);
        let src: Vec<&(BTreeSet<u32>, bool)> =
            s.1.iter().filter(|(c, _)| !target.contains(c)).collect();
        let new: Vec<&BTreeSet<u32>> = target
            .iter()
            .filter(|c| !s.1.iter().any(|(d, _)| d == *c))
            .collect();
        let kept: Vec<(BTreeSet<u32>, bool)> =
            s.1.iter()
                .filter(|(c, _)| target.contains(c))
                .cloned()
                .collect();
        let with = |extra: Vec<(BTreeSet<u32>, bool)>| {
            let mut v = kept.clone();
            v.extend(extra);
            v.sort();
            (beta, v)
        };
        match (src.len(), new.len()) {
            (2, 1) => {
                let (a, b) = (src[0].1, src[1].1);
                let label = match (h, a, b) {
                    (false, false, false) => Some(false),
                    (false, true, true) => None,
                    (false, _, _) => Some(true),
                    (true, true, true) => Some(true),
                    (true, _, _) => None,
                };
                if let Some(x) = label {
                    out.push(with(vec![(new[0].clone(), x)]));
                }
            }
            (1, 2) => {
                let (t1, t2) = (new[0].clone(), new[1].clone());
                match (h, src[0].1) {
                    (false, false) => {
                        out.push(with(vec![(t1.clone(), false), (t2.clone(), true)]));
                        out.push(with(vec![(t1, true), (t2, false)]));
                    }
                    (false, true) => out.push(with(vec![(t1, true), (t2, true)])),
                    (true, false) => out.push(with(vec![(t1, false), (t2, false)])),
                    (true, true) => {}
                }
            }
            other => panic!("oracle: non-planar surgery {other:?}"),
        }
    }
    out
}

fn all_states(pd: &Pd) -> Vec<State> {
    let n = pd.crossings.len();
    let mut out = Vec::new();
    for alpha in 0..1u32 << n {
        let cs = circles(pd, alpha);
        for mask in 0..1u64 << cs.len() {
            let labelled = cs
                .iter()
                .enumerate()
                .map(|(k, c)| (c.clone(), mask >> k & 1 == 1))
                .collect();
            out.push((alpha, labelled));
        }
    }
    out
}

fn rank(mut rows: Vec<Vec<bool>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&k| rows[k][c]) else {
            continue;
        };
        rows.swap(r, p);
        for k in 0..rows.len() {
            if k != r && rows[k][c] {
                let pivot = rows[r].clone();
                for (x, y) in rows[k].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        r += 1;
    }
    r
}

/// Homology of a complex given by per-group bases and a map, grouped by key.
fn homology_by<K: Ord + Copy>(
    states: &[State],
    key: impl Fn(&State) -> (K, i32),
    image: impl Fn(&State) -> Vec<State>,
) -> BTreeMap<(K, i32), usize> {
    let mut groups: BTreeMap<(K, i32), Vec<&State>> = BTreeMap::new();
    for s in states {
        groups.entry(key(s)).or_default().push(s);
    }
    let index: BTreeMap<&State, usize> = groups
        .values()
        .flat_map(|v| v.iter().enumerate().map(|(k, s)| (*s, k)))
        .collect();
    let matrix_rank = |g: (K, i32)| -> usize {
        let Some(src) = groups.get(&g) else { return 0 };
        let tgt_len = groups.get(&(g.0, g.1 + 1)).map_or(0, Vec::len);
        let mut rows = vec![vec![false; src.len()]; tgt_len];
        for (c, s) in src.iter().enumerate() {
            for t in image(s) {
                rows[index[&t]][c] ^= true;
            }
        }
        rank(rows)
    };
    let mut out = BTreeMap::new();
    for (&g, v) in &groups {
        let d = v.len() - matrix_rank(g) - matrix_rank((g.0, g.1 - 1));
        if d > 0 {
            out.insert(g, d);
        }
    }
    out
}

/// Khovanov homology over `F2`: `(i, q) -> dim`.
pub fn oracle_kh(pd: &Pd) -> BTreeMap<(i32, i32), usize> {
    let states = all_states(pd);
    homology_by(
        &states,
        |s| {
            let (i, q) = gradings(pd, s);
            (q, i)
        },
        |s| edge_images(pd, s, false),
    )
    .into_iter()
    .map(|((q, i), d)| ((i, q), d))
    .collect()
}

/// `F2` homology of `d + h` (the Bar-Natan complex at `H = 1`) per
/// homological degree; equals the free rank of Bar-Natan homology there.
pub fn oracle_bn_at_h1(pd: &Pd) -> BTreeMap<i32, usize> {
    let states = all_states(pd);
    homology_by(
        &states,
        |s| ((), gradings(pd, s).0),
        |s| {
            let mut v = edge_images(pd, s, false);
            v.extend(edge_images(pd, s, true));
            v
        },
    )
    .into_iter()
    .map(|(((), i), d)| (i, d))
    .collect()
}

/// Unreduced Jones polynomial from the oracle's own circle counts, as
/// `exponent -> coefficient`.
pub fn oracle_jones(pd: &Pd) -> BTreeMap<i32, i64> {
    let (np, nm) = (pd.n_plus() as i32, pd.n_minus() as i32);
    let mut out: BTreeMap<i32, i64> = BTreeMap::new();
    for alpha in 0..1u32 << pd.crossings.len() {
        let w = alpha.count_ones() as i32;
        let k = circles(pd, alpha).len() as u32;
        let sign = if (w - nm) % 2 == 0 { 1 } else { -1 };
        // (q + 1/q)^k = sum_j C(k, j) q^(k - 2j).
        let mut binom = 1i64;
        for j in 0..=k {
            *out.entry(w + np - 2 * nm + k as i32 - 2 * j as i32)
                .or_default() += sign * binom;
            binom = binom * (k - j) as i64 / (j + 1) as i64;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}
