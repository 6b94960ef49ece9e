//! Brute-force references, written without the library's search code.
#![allow(dead_code)]

use std::collections::BTreeSet;

use resonance_core::{EmbeddedGraph, Face, ResonanceGraph};

/// Perfect matchings as sorted edge-id lists, by trying every edge subset
/// of size n/2 in colex order (Gosper's hack).
pub fn brute_matchings(g: &EmbeddedGraph) -> Vec<Vec<usize>> {
    brute_matchings_in(g, &vec![true; g.n_vertices()])
}

/// Perfect matchings of the subgraph induced by `keep`.
pub fn brute_matchings_in(g: &EmbeddedGraph, keep: &[bool]) -> Vec<Vec<usize>> {
    let verts: Vec<usize> = (0..g.n_vertices()).filter(|&v| keep[v]).collect();
    if verts.len() % 2 == 1 {
        return Vec::new();
    }
    let want = verts.len() / 2;
    let edges: Vec<(usize, u64)> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| keep[e.u] && keep[e.v])
        .map(|(i, e)| (i, (1u64 << e.u) | (1u64 << e.v)))
        .collect();
    assert!(edges.len() < 64 && g.n_vertices() <= 64);
    let full: u64 = verts.iter().map(|&v| 1u64 << v).sum();
    let mut out = Vec::new();
    if want == 0 {
        out.push(Vec::new());
        return out;
    }
    if want > edges.len() {
        return out;
    }
    let m = edges.len();
    let mut set: u64 = (1u64 << want) - 1;
    while set < (1u64 << m) {
        let mut cover = 0u64;
        let mut ok = true;
        let mut bits = set;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if cover & edges[i].1 != 0 {
                ok = false;
                break;
            }
            cover |= edges[i].1;
        }
        if ok && cover == full {
            let mut ids: Vec<usize> = (0..m).filter(|&i| set >> i & 1 == 1).map(|i| edges[i].0).collect();
            ids.sort_unstable();
            out.push(ids);
        }
        let c = set & set.wrapping_neg();
        let r = set + c;
        set = (((r ^ set) >> 2) / c) | r;
    }
    out.sort();
    out
}

/// The two alternating halves of a face boundary.
pub fn halves(f: &Face) -> [BTreeSet<usize>; 2] {
    let mut a = BTreeSet::new();
    let mut b = BTreeSet::new();
    for (i, &(_, e)) in f.boundary.iter().enumerate() {
        if i % 2 == 0 {
            a.insert(e);
        } else {
            b.insert(e);
        }
    }
    [a, b]
}

fn contains_half(m: &[usize], f: &Face) -> bool {
    let m: BTreeSet<usize> = m.iter().copied().collect();
    halves(f).iter().any(|h| h.is_subset(&m))
}

/// ZZ coefficients from the matching list: a cover with face set `S` is
/// counted once for each of the `2^|S|` matchings holding a half of every
/// face of `S`.
pub fn brute_zz(g: &EmbeddedGraph, faces: &[usize], matchings: &[Vec<usize>]) -> Vec<u64> {
    assert!(faces.len() <= 20);
    let mut coeffs = vec![0u64; faces.len() + 1];
    for mask in 0u32..(1 << faces.len()) {
        let chosen: Vec<&Face> = (0..faces.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| &g.faces()[faces[i]])
            .collect();
        let disjoint = chosen
            .iter()
            .enumerate()
            .all(|(i, a)| chosen[i + 1..].iter().all(|b| a.vertices.iter().all(|v| !b.vertices.contains(v))));
        if !disjoint {
            continue;
        }
        let hits = matchings
            .iter()
            .filter(|m| chosen.iter().all(|f| contains_half(m, f)))
            .count() as u64;
        assert_eq!(hits % (1 << chosen.len()), 0);
        coeffs[chosen.len()] += hits >> chosen.len();
    }
    while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
        coeffs.pop();
    }
    coeffs
}

/// Residual count of a cover: perfect matchings of `G - V(S)`.
pub fn brute_residual(g: &EmbeddedGraph, faces: &[&Face]) -> usize {
    let mut keep = vec![true; g.n_vertices()];
    for f in faces {
        for &v in &f.vertices {
            keep[v] = false;
        }
    }
    brute_matchings_in(g, &keep).len()
}

pub fn adjacency(r: &ResonanceGraph) -> Vec<Vec<bool>> {
    let n = r.n_vertices();
    let mut a = vec![vec![false; n]; n];
    for e in r.edges() {
        a[e.a][e.b] = true;
        a[e.b][e.a] = true;
    }
    a
}

/// Whether the graph induced by `vs` is `Q_k`, `|vs| = 2^k`, by trying every
/// assignment of cube coordinates that fixes `vs[0]` at zero.
pub fn induces_cube(adj: &[Vec<bool>], vs: &[usize], k: usize) -> bool {
    let n = vs.len();
    if n != 1 << k {
        return false;
    }
    let mut coord = vec![usize::MAX; n];
    let mut used = vec![false; n];
    coord[0] = 0;
    used[0] = true;
    fn go(adj: &[Vec<bool>], vs: &[usize], coord: &mut [usize], used: &mut [bool], i: usize) -> bool {
        if i == vs.len() {
            return true;
        }
        for c in 0..vs.len() {
            if used[c] {
                continue;
            }
            let ok = (0..i).all(|j| adj[vs[i]][vs[j]] == ((c ^ coord[j]).count_ones() == 1));
            if ok {
                coord[i] = c;
                used[c] = true;
                if go(adj, vs, coord, used, i + 1) {
                    return true;
                }
                used[c] = false;
            }
        }
        coord[i] = usize::MAX;
        false
    }
    go(adj, vs, &mut coord, &mut used, 1)
}

/// Number of vertex sets of size `2^k` inducing `Q_k`, for every `k` with
/// `2^k <= n`; exhaustive over combinations.
pub fn brute_cube_counts(r: &ResonanceGraph, max_k: usize) -> Vec<u64> {
    let adj = adjacency(r);
    let n = r.n_vertices();
    let mut out = Vec::new();
    for k in 0..=max_k {
        let size = 1usize << k;
        if size > n {
            break;
        }
        let mut count = 0u64;
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            // cheap filter: each chosen vertex needs k chosen neighbours
            let regular = combo
                .iter()
                .all(|&a| combo.iter().filter(|&&b| adj[a][b]).count() == k);
            if regular && induces_cube(&adj, &combo, k) {
                count += 1;
            }
            let Some(i) = (0..size).rev().find(|&i| combo[i] < n - size + i) else {
                break;
            };
            combo[i] += 1;
            for j in i + 1..size {
                combo[j] = combo[j - 1] + 1;
            }
        }
        out.push(count);
    }
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    out
}

/// All-pairs BFS distances in the resonance graph.
pub fn distances(r: &ResonanceGraph) -> Vec<Vec<u32>> {
    let adj = adjacency(r);
    let n = r.n_vertices();
    (0..n)
        .map(|s| {
            let mut d = vec![u32::MAX; n];
            d[s] = 0;
            let mut q = std::collections::VecDeque::from([s]);
            while let Some(v) = q.pop_front() {
                for w in 0..n {
                    if adj[v][w] && d[w] == u32::MAX {
                        d[w] = d[v] + 1;
                        q.push_back(w);
                    }
                }
            }
            d
        })
        .collect()
}

/// Graph isomorphism by trying every vertex permutation; tiny graphs only.
pub fn isomorphic(a: &resonance_core::metric::SimpleGraph, b: &resonance_core::metric::SimpleGraph) -> bool {
    let n = a.len();
    if n != b.len() || a.edges().len() != b.edges().len() || n > 9 {
        return false;
    }
    fn go(a: &resonance_core::metric::SimpleGraph, b: &resonance_core::metric::SimpleGraph, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let i = map.len();
        if i == a.len() {
            return true;
        }
        for c in 0..a.len() {
            if used[c] || (0..i).any(|j| a.has_edge(i, j) != b.has_edge(c, map[j])) {
                continue;
            }
            used[c] = true;
            map.push(c);
            if go(a, b, map, used) {
                return true;
            }
            map.pop();
            used[c] = false;
        }
        false
    }
    go(a, b, &mut Vec::new(), &mut vec![false; n])
}
