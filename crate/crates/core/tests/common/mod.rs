//! Brute-force oracles written independently of the library: they work on
//! raw coordinate tuples and `u32`/`u64` masks and share no code with it.

#![allow(dead_code)]

/// Cell index with coordinate 1 fastest, 0-based coordinates.
pub fn cell(n: usize, coords: &[usize]) -> usize {
    coords.iter().rev().fold(0, |acc, &c| acc * n + c)
}

/// Every corner of `[n]^k` as a sorted list of `k + 1` cells, by direct
/// enumeration of apexes and differences.
pub fn corners_brute(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let cells = n.pow(k as u32);
    for d in 1..n {
        for apex in 0..cells {
            let mut coords = vec![0; k];
            let mut rest = apex;
            for c in coords.iter_mut() {
                *c = rest % n;
                rest /= n;
            }
            if coords.iter().any(|&c| c + d >= n) {
                continue;
            }
            let mut corner = vec![apex];
            for axis in 0..k {
                let mut moved = coords.clone();
                moved[axis] += d;
                corner.push(cell(n, &moved));
            }
            corner.sort_unstable();
            out.push(corner);
        }
    }
    out
}

pub fn corner_masks(n: usize, k: usize) -> Vec<u64> {
    corners_brute(n, k).iter().map(|c| c.iter().fold(0u64, |m, &x| m | 1 << x)).collect()
}

pub fn corner_free(masks: &[u64], set: u64) -> bool {
    masks.iter().all(|&m| m & set != m)
}

pub fn corners_in(masks: &[u64], set: u64) -> usize {
    masks.iter().filter(|&&m| m & set == m).count()
}

/// `c_k(n)` by trying every subset.
pub fn max_corner_free_brute(n: usize, k: usize) -> usize {
    let cells = n.pow(k as u32);
    assert!(cells <= 26);
    let masks = corner_masks(n, k);
    (0u64..1 << cells)
        .filter(|&s| corner_free(&masks, s))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap()
}

/// Number of corner-free subsets by trying every subset.
pub fn census_brute(n: usize, k: usize) -> u64 {
    let cells = n.pow(k as u32);
    assert!(cells <= 26);
    let masks = corner_masks(n, k);
    (0u64..1 << cells).filter(|&s| corner_free(&masks, s)).count() as u64
}

/// `Σ_{d=1}^{n−1} (n−d)^k`.
pub fn corner_total_formula(n: usize, k: usize) -> u128 {
    (1..n).map(|d| ((n - d) as u128).pow(k as u32)).sum()
}

/// First `x < y < z` in `set` with `x + z = 2y`.
pub fn three_ap(set: &[usize]) -> Option<(usize, usize, usize)> {
    let max = set.iter().copied().max()?;
    let mut member = vec![false; max + 1];
    for &x in set {
        member[x] = true;
    }
    for (i, &x) in set.iter().enumerate() {
        for &z in &set[i + 1..] {
            let (lo, hi) = if x < z { (x, z) } else { (z, x) };
            if (lo + hi) % 2 == 0 && lo != hi && member[(lo + hi) / 2] {
                return Some((lo, (lo + hi) / 2, hi));
            }
        }
    }
    None
}

/// Whether a set of 1-based points of `[n]^2` contains `(x,y), (x+d,y), (x,y+d)`.
pub fn has_corner_2d(n: usize, points: &[(usize, usize)]) -> bool {
    let mut member = vec![false; (n + 1) * (n + 1)];
    for &(x, y) in points {
        member[x * (n + 1) + y] = true;
    }
    points.iter().any(|&(x, y)| (1..=n).any(|d| x + d <= n && y + d <= n && member[(x + d) * (n + 1) + y] && member[x * (n + 1) + y + d]))
}

/// Exact rational `p/q` with `u128` parts, kept reduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ratio {
    pub p: u128,
    pub q: u128,
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Ratio {
    pub fn new(p: u128, q: u128) -> Self {
        let g = gcd(p, q).max(1);
        Ratio { p: p / g, q: q / g }
    }

    pub fn add(self, o: Ratio) -> Ratio {
        Ratio::new(self.p * o.q + o.p * self.q, self.q * o.q)
    }

    pub fn mul(self, o: Ratio) -> Ratio {
        Ratio::new(self.p * o.p, self.q * o.q)
    }

    pub fn to_f64(self) -> f64 {
        self.p as f64 / self.q as f64
    }
}

/// `Δ_j`: the most edges sharing one `j`-set, by scanning every `j`-subset
/// of every edge against all edges.
pub fn max_codegree(edges: &[Vec<usize>], j: usize) -> u128 {
    let mut best = 0;
    for e in edges {
        for pick in 0u32..1 << e.len() {
            if pick.count_ones() as usize != j {
                continue;
            }
            let sub: Vec<usize> = (0..e.len()).filter(|&i| pick >> i & 1 == 1).map(|i| e[i]).collect();
            let count = edges.iter().filter(|f| sub.iter().all(|x| f.contains(x))).count() as u128;
            best = best.max(count);
        }
    }
    best
}

/// `Δ(H, τ)` with `τ = 1/t` in exact arithmetic.
pub fn codegree_exact(vertices: usize, r: usize, edges: &[Vec<usize>], t: u128) -> Ratio {
    let c2 = |x: usize| (x * x.saturating_sub(1) / 2) as u32;
    let e = edges.len() as u128;
    // 1/d = |V| / (r e)
    let inv_d = Ratio::new(vertices as u128, r as u128 * e);
    let mut sum = Ratio::new(0, 1);
    for j in 2..=r {
        let term = Ratio::new(max_codegree(edges, j) * t.pow(j as u32 - 1), 1u128 << c2(j - 1)).mul(inv_d);
        sum = sum.add(term);
    }
    Ratio::new(1u128 << (c2(r) - 1), 1).mul(sum)
}

/// All independent sets of a hypergraph on at most 20 vertices, as masks.
pub fn independent_sets(vertices: usize, edges: &[u64]) -> Vec<u64> {
    assert!(vertices <= 20);
    (0u64..1 << vertices).filter(|&s| edges.iter().all(|&e| e & s != e)).collect()
}

pub fn edges_inside(edges: &[u64], set: u64) -> usize {
    edges.iter().filter(|&&e| e & set == e).count()
}
