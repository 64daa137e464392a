use std::collections::{HashMap, VecDeque};

use super::LocalWitness;
use crate::cayley::Arena;
use crate::error::Result;
use crate::group::{Presentation, Word};

/// Region of a factor's Cayley graph around a path, with local ids.
struct Region {
    verts: Vec<u32>,
    adj: Vec<Vec<usize>>,
}

fn build_region(pres: &Presentation, arena: &mut Arena, path: &[u32], rho: u32) -> Result<Region> {
    let mut local: HashMap<u32, usize> = HashMap::new();
    let mut verts = Vec::new();
    let mut depth = Vec::new();
    let mut queue = VecDeque::new();
    for &p in path {
        if let std::collections::hash_map::Entry::Vacant(e) = local.entry(p) {
            e.insert(verts.len());
            verts.push(p);
            depth.push(0u32);
            queue.push_back(verts.len() - 1);
        }
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); verts.len()];
    let slots = arena.letters().len();
    while let Some(v) = queue.pop_front() {
        if depth[v] == rho {
            continue;
        }
        for slot in 0..slots {
            let w = arena.step(pres, verts[v], slot)?;
            let wl = match local.get(&w) {
                Some(&wl) => wl,
                None => {
                    let wl = verts.len();
                    local.insert(w, wl);
                    verts.push(w);
                    depth.push(depth[v] + 1);
                    adj.push(Vec::new());
                    queue.push_back(wl);
                    wl
                }
            };
            if !adj[v].contains(&wl) {
                adj[v].push(wl);
            }
            if !adj[wl].contains(&v) {
                adj[wl].push(v);
            }
        }
    }
    Ok(Region { verts, adj })
}

fn bfs(adj: &[Vec<usize>], source: usize, limit: u32) -> Vec<u32> {
    let mut dist = vec![u32::MAX; adj.len()];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        if dist[v] == limit {
            continue;
        }
        for &w in &adj[v] {
            if dist[w] == u32::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Searches the maximal disjoint balls around every center within `horizon`
/// of the whole segment spelled by `word`, inside the factor that `arena`
/// explores. Coordinates of the result are relative to the segment start.
pub(super) fn scan_segment(
    pres: &Presentation,
    arena: &mut Arena,
    word: &Word,
    d: u32,
    horizon: u32,
) -> Result<Option<LocalWitness>> {
    let path = arena.walk(pres, word)?;
    let rho = 2 * horizon + 1;
    let region = build_region(pres, arena, &path, rho)?;
    let n = region.verts.len();
    let path_local: Vec<usize> = path
        .iter()
        .map(|p| region.verts.iter().position(|v| v == p).unwrap())
        .collect();

    let mut gap = vec![u32::MAX; n];
    let mut lo = vec![0usize; n];
    let mut hi = vec![0usize; n];
    for (k, &src) in path_local.iter().enumerate() {
        let dist = bfs(&region.adj, src, u32::MAX);
        for y in 0..n {
            if dist[y] < gap[y] {
                gap[y] = dist[y];
                lo[y] = k;
                hi[y] = k;
            } else if dist[y] == gap[y] {
                hi[y] = k;
            }
        }
    }

    // lo/hi hold the extreme projection indices over B(x, t) for the current t
    let mut ball_lo = lo.clone();
    let mut ball_hi = hi.clone();
    for t in 0..horizon {
        let violating = (0..n)
            .filter(|&x| gap[x] == t + 1 && ball_hi[x] - ball_lo[x] > d as usize)
            .min_by(|&a, &b| arena.node(region.verts[a]).cmp(arena.node(region.verts[b])));
        if let Some(center) = violating {
            let ball = bfs(&region.adj, center, t);
            let (k1, k2) = (ball_lo[center], ball_hi[center]);
            let pick = |want: &dyn Fn(usize) -> bool| {
                (0..n)
                    .filter(|&y| ball[y] <= t && want(y))
                    .map(|y| arena.node(region.verts[y]).word().clone())
                    .min()
                    .expect("the extreme is attained inside the ball")
            };
            let y1 = pick(&|y| lo[y] == k1);
            let y2 = pick(&|y| hi[y] == k2);
            return Ok(Some(LocalWitness {
                center: arena.node(region.verts[center]).word().clone(),
                radius: t,
                y1,
                y2,
                k1,
                k2,
            }));
        }
        if t + 1 < horizon {
            let (prev_lo, prev_hi) = (ball_lo.clone(), ball_hi.clone());
            for x in 0..n {
                for &w in &region.adj[x] {
                    ball_lo[x] = ball_lo[x].min(prev_lo[w]);
                    ball_hi[x] = ball_hi[x].max(prev_hi[w]);
                }
            }
        }
    }
    Ok(None)
}
